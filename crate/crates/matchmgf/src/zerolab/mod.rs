//! Zero and pole analysis of the exact MGFs: high-precision root finding,
//! two-method zero-free-disk verdicts, the Janson comparison function, an
//! exact disk certificate for triple matchings, and asymptotic cluster
//! prediction for the rescaled zeros.

mod aberth;
mod winding;

pub use aberth::{find_poly_zeros, find_zeros};
pub use winding::winding_number;

use rug::Float;

use crate::exactalg::{Poly, RatFun, Scalar};
use crate::ghostrec::{default_denominator, mgf, ProblemSpec};
use crate::numeric::Cplx;
use crate::{Error, Result};

/// Everything the disk analysis of one MGF produces.
///
/// `zeros` is conjugation-closed and sorted by real part; `zero_free` is set
/// only when two independent methods (root moduli from the finder, winding
/// number along the disk boundary) agree that the open disk of radius
/// `disk_radius = mn/k` contains no zero. Zeros exactly on the boundary
/// count as outside (the disk is open).
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub spec: ProblemSpec,
    pub zeros: Vec<Cplx>,
    pub poles: Vec<(Scalar, u32)>,
    pub disk_radius: Scalar,
    pub min_zero_modulus: Option<Float>,
    pub zero_free: bool,
    pub winding_count: i64,
    pub precision_bits: u32,
    pub real_zero_count: usize,
    pub conjugate_pair_count: usize,
    pub min_real_part: Option<Float>,
}

/// Builds the MGF for `spec` and issues the zero-free-disk verdict at the
/// requested precision, requiring the root finder and the winding number to
/// agree before any verdict is recorded.
pub fn zero_free_disk(spec: &ProblemSpec, precision_bits: u32) -> Result<ZeroReport> {
    let f = mgf(spec);
    zero_free_disk_of(spec, &f, precision_bits)
}

/// Same verdict for an already-built MGF (callers with cached tables).
pub fn zero_free_disk_of(
    spec: &ProblemSpec,
    f: &RatFun,
    precision_bits: u32,
) -> Result<ZeroReport> {
    let disk_radius = &(spec.m() * spec.n()) / &Scalar::from(spec.k());
    let zeros = find_zeros(f, precision_bits)?;
    let winding_count = winding_number(f.numer(), &disk_radius, precision_bits)?;

    let radius_float = disk_radius.to_float(precision_bits + 64);
    let inside = zeros.iter().filter(|z| z.abs() < radius_float).count() as i64;
    if winding_count != inside {
        return Err(Error::WindingAmbiguous(format!(
            "winding number {winding_count} disagrees with {inside} found zeros inside |t| < {disk_radius}"
        )));
    }

    let min_zero_modulus = zeros
        .iter()
        .map(|z| z.abs())
        .min_by(|a, b| a.partial_cmp(b).unwrap());
    let min_real_part = zeros
        .iter()
        .map(|z| z.re.clone())
        .min_by(|a, b| a.partial_cmp(b).unwrap());
    let zero_free = winding_count == 0
        && min_zero_modulus.as_ref().is_none_or(|m| {
            let guard = Float::with_val(m.prec(), &radius_float * (1.0 - 1e-9));
            *m > guard
        });

    let real_zero_count = zeros.iter().filter(|z| z.im.is_zero()).count();
    let conjugate_pair_count = (zeros.len() - real_zero_count) / 2;

    Ok(ZeroReport {
        spec: spec.clone(),
        poles: f
            .denom()
            .iter()
            .map(|l| (l.pole.clone(), l.multiplicity))
            .collect(),
        zeros,
        disk_radius,
        min_zero_modulus,
        zero_free,
        winding_count,
        precision_bits,
        real_zero_count,
        conjugate_pair_count,
        min_real_part,
    })
}

/// A floating value printed with enough decimal digits to round-trip at its
/// own precision.
pub fn float_to_decimal_string(f: &Float) -> String {
    f.to_string_radix(10, None)
}

/// Janson's comparison function `J_{k,m,n}`: the product denominator of the
/// `(k-1)`-matching MGF over the product denominator of the `k`-matching
/// MGF. Agrees with the true MGF for `k <= 2` and stays remarkably close for
/// `k = 3`; all of its zeros are real.
pub fn janson(spec: &ProblemSpec) -> Result<RatFun> {
    let numer = if spec.k() == 1 {
        Poly::one()
    } else {
        let lower = ProblemSpec::new(spec.k() - 1, spec.m().clone(), spec.n().clone())?;
        default_denominator(&lower).expand()
    };
    Ok(RatFun::new(numer, default_denominator(spec)))
}

/// The outcome of comparing the true MGF with Janson's function over their
/// shared product denominator.
#[derive(Clone, Debug)]
pub struct JansonComparison {
    pub spec: ProblemSpec,
    /// Canonical-form equality `J = F`.
    pub equal: bool,
    /// Numerator of `J - F` with both written over the product denominator
    /// in integer-cleared form (each factor scaledto `(m-i)(n-j) - d·t`).
    pub cleared_numer_difference: Poly,
}

/// Compares the MGF with Janson's function. For triple matchings the cleared
/// numerator difference is exactly `t²`, which is the engine-side content of
/// the disk certificate below.
pub fn janson_compare(spec: &ProblemSpec) -> Result<JansonComparison> {
    let f = mgf(spec);
    let j = janson(spec)?;

    let (j_norm, _) = j.normalized();
    let equal = j_norm == f;

    // J - F over the union denominator, which is the full product
    // denominator since both denominators divide it. The integer-cleared
    // scaling multiplies by the (k-1)-product of (m-i)(n-j): that is the
    // normalization in which the two numerators match coefficient by
    // coefficient except for the quadratic term.
    let diff = j.sub(&f);
    let mut multiplier = Scalar::one();
    if spec.k() >= 2 {
        for i in 0..(spec.k() - 1) {
            for jj in 0..(spec.k() - 1 - i) {
                let mi = spec.m() - &Scalar::from(i);
                let nj = spec.n() - &Scalar::from(jj);
                multiplier *= &(&mi * &nj);
            }
        }
    }
    let missing = default_denominator(spec).difference(diff.denom());
    let cleared = diff.numer().mul(&missing.expand()).scale(&multiplier);

    Ok(JansonComparison {
        spec: spec.clone(),
        equal,
        cleared_numer_difference: cleared,
    })
}

/// Exact witness data for the triple-matching zero-free-disk certificate.
///
/// With `R = mn/3` and `P_J(t) = (mn - 2t)((m-1)n - t)(m(n-1) - t)` (the
/// cleared Janson numerator), the certificate verifies the exact chain
/// `P_J(R) >= 3R² > R²` together with all three zeros of `P_J` lying outside
/// the disk; since the cleared numerators of the MGF and the Janson function
/// differ by exactly `t²`, the MGF can have no zero in the closed disk.
#[derive(Clone, Debug)]
pub struct DiskCertificateK3 {
    pub m: Scalar,
    pub n: Scalar,
    pub radius: Scalar,
    pub p_j_at_radius: Scalar,
    pub three_r_squared: Scalar,
    pub r_squared: Scalar,
    pub p_j_zeros: [Scalar; 3],
    pub passes: bool,
}

/// Runs the exact certificate; requires `m, n >= 3`.
pub fn zero_free_k3_certificate(m: &Scalar, n: &Scalar) -> Result<DiskCertificateK3> {
    let three = Scalar::from_int(3);
    if m < &three || n < &three {
        return Err(Error::Domain(format!(
            "certificate needs m, n >= 3, got ({m}, {n})"
        )));
    }
    let mn = m * n;
    let radius = &mn / &three;
    let r_squared = radius.pow_u32(2);
    let three_r_squared = &three * &r_squared;

    let mm1 = m - &Scalar::one();
    let nm1 = n - &Scalar::one();
    let p_j_at_radius = &(&(&mn - &(&Scalar::from_int(2) * &radius)) * &(&(&mm1 * n) - &radius))
        * &(&(m * &nm1) - &radius);
    let p_j_zeros = [&mn / &Scalar::from_int(2), &mm1 * n, m * &nm1];

    let passes = p_j_at_radius >= three_r_squared
        && three_r_squared > r_squared
        && p_j_zeros.iter().all(|z| z > &radius);

    Ok(DiskCertificateK3 {
        m: m.clone(),
        n: n.clone(),
        radius,
        p_j_at_radius,
        three_r_squared,
        r_squared,
        p_j_zeros,
        passes,
    })
}

/// One predicted rescaled zero location `s` (in units of `t·k/(mn)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredictedZero {
    pub s: Scalar,
    /// Number of zeros expected near this location.
    pub count: u32,
    /// The ghost-step parameter `d' = i' - j'` behind this cluster.
    pub gap: u32,
}

/// Predicted cluster structure of the rescaled zeros.
#[derive(Clone, Debug)]
pub struct ClusterPrediction {
    pub k: u32,
    /// `Some(n)`: the regime where the other side grows; `None`: both sides
    /// large.
    pub fixed_n: Option<Scalar>,
    pub predictions: Vec<PredictedZero>,
    /// True when the per-cluster counts come from extrapolating the
    /// enumerated pattern (one zero near k/(k-1), two near k/(k-2), ...)
    /// rather than from an explicit formula.
    pub count_rule_inferred: bool,
}

/// Predicts where the rescaled zeros `s = t·k/(mn)` cluster.
///
/// With `n` given (one side fixed, the other large) each ghost pair
/// `1 <= j' < i' <= k` contributes one zero near
/// `s = k(n - k + i')/(n(i' - j'))`. With no `n` (both sides large) the
/// zeros collapse onto `s = k/d'` with `k - d'` zeros at each, `d' = 1..k-1`.
pub fn asymptotic_clusters(k: u32, n: Option<&Scalar>) -> Result<ClusterPrediction> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "cluster prediction needs k >= 2, got {k}"
        )));
    }
    match n {
        Some(n) => {
            if n < &Scalar::from(k) {
                return Err(Error::Domain(format!(
                    "cluster prediction needs n >= k, got n = {n}, k = {k}"
                )));
            }
            let mut predictions = Vec::new();
            for i in 2..=k {
                for j in 1..i {
                    let gap = i - j;
                    let s = &(&Scalar::from(k) * &(&(n - &Scalar::from(k)) + &Scalar::from(i)))
                        / &(n * &Scalar::from(gap));
                    predictions.push(PredictedZero { s, count: 1, gap });
                }
            }
            predictions.sort_by(|a, b| a.s.cmp(&b.s).then(a.gap.cmp(&b.gap)));
            Ok(ClusterPrediction {
                k,
                fixed_n: Some(n.clone()),
                predictions,
                count_rule_inferred: false,
            })
        }
        None => {
            let mut predictions = Vec::new();
            for gap in (1..k).rev() {
                predictions.push(PredictedZero {
                    s: &Scalar::from(k) / &Scalar::from(gap),
                    count: k - gap,
                    gap,
                });
            }
            Ok(ClusterPrediction {
                k,
                fixed_n: None,
                predictions,
                count_rule_inferred: true,
            })
        }
    }
}

/// One zero matched to its nearest predicted cluster location.
#[derive(Clone, Debug)]
pub struct ClusterAssignment {
    pub zero: Cplx,
    /// `|zero| · k/(mn)`, the modulus of the rescaled zero.
    pub s_modulus: f64,
    pub prediction_s: f64,
    pub gap: u32,
    /// `| |s| - p | / p` against the matched prediction `p`.
    pub deviation: f64,
}

/// Assignment of actual zeros to predicted clusters.
#[derive(Clone, Debug)]
pub struct ClusterMatch {
    pub assignments: Vec<ClusterAssignment>,
    pub max_deviation: f64,
    /// Zeros per ghost-step value, sorted by gap ascending.
    pub counts_by_gap: Vec<(u32, usize)>,
}

/// Matches each found zero (rescaled by `k/(mn)`) to the nearest predicted
/// cluster location by modulus and reports per-cluster counts and the worst
/// relative deviation.
pub fn cluster_deviations(
    zeros: &[Cplx],
    spec: &ProblemSpec,
    prediction: &ClusterPrediction,
) -> Result<ClusterMatch> {
    if prediction.predictions.is_empty() {
        return Err(Error::Domain(
            "no predicted clusters to match against".into(),
        ));
    }
    let scale = (&Scalar::from(spec.k()) / &(spec.m() * spec.n())).to_f64();
    let mut assignments = Vec::with_capacity(zeros.len());
    let mut max_deviation = 0f64;
    let mut counts: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    for zero in zeros {
        let s_modulus = zero.abs().to_f64() * scale;
        let mut best: Option<(f64, u32)> = None;
        for p in &prediction.predictions {
            let ps = p.s.to_f64();
            if best.is_none_or(|(bs, _)| (s_modulus - ps).abs() < (s_modulus - bs).abs()) {
                best = Some((ps, p.gap));
            }
        }
        let (prediction_s, gap) = best.expect("nonempty predictions");
        let deviation = (s_modulus - prediction_s).abs() / prediction_s;
        max_deviation = max_deviation.max(deviation);
        *counts.entry(gap).or_default() += 1;
        assignments.push(ClusterAssignment {
            zero: zero.clone(),
            s_modulus,
            prediction_s,
            gap,
            deviation,
        });
    }
    Ok(ClusterMatch {
        assignments,
        max_deviation,
        counts_by_gap: counts.into_iter().collect(),
    })
}
