//! Simultaneous root finding for the exact numerator polynomials.
//!
//! The zeros this engine cares about can hug a very high-order pole (the
//! perfect-matching MGFs put dozens of zeros within a percent of each other),
//! which is exactly the regime where double precision falls apart. The
//! finder therefore runs an Aberth–Ehrlich iteration in extended precision:
//! coefficients are converted from exact rationals at the working precision,
//! so the iteration itself is the only inexact step. Results are validated
//! against exact coefficient data (Vieta sums and conjugate closure) and the
//! whole computation is retried at doubled precision until the validation
//! passes.

use rug::Float;

use crate::exactalg::{Poly, RatFun, Scalar};
use crate::numeric::{coeffs_to_cplx, horner_with_derivative, two_pow, Cplx};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 400;

/// Zeros of the numerator of `r`, validated to `precision_bits`.
///
/// Output is conjugation-closed (paired zeros are symmetrized exactly),
/// near-real zeros are snapped onto the axis, and the list is sorted by
/// real part, then imaginary part.
pub fn find_zeros(r: &RatFun, precision_bits: u32) -> Result<Vec<Cplx>> {
    find_poly_zeros(r.numer(), precision_bits)
}

/// Same as [`find_zeros`], for a bare polynomial.
pub fn find_poly_zeros(poly: &Poly, precision_bits: u32) -> Result<Vec<Cplx>> {
    let degree = match poly.degree() {
        None => return Err(Error::Domain("zero polynomial has no root set".into())),
        Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };

    let base = precision_bits + 64;
    let cap = precision_bits.saturating_mul(8) + 256;
    let mut wp = base;
    let mut warm: Option<Vec<Cplx>> = None;
    loop {
        match attempt(poly, degree, precision_bits, wp, warm.take()) {
            Ok(zeros) => return Ok(zeros),
            Err(AttemptFailure { message, best }) => {
                if wp == cap {
                    return Err(Error::RootFinding(format!(
                        "no validated roots up to {cap} bits: {message}"
                    )));
                }
                warm = best;
            }
        }
        wp = wp.saturating_mul(2).min(cap);
    }
}

struct AttemptFailure {
    message: String,
    best: Option<Vec<Cplx>>,
}

fn attempt(
    poly: &Poly,
    degree: usize,
    precision_bits: u32,
    wp: u32,
    warm: Option<Vec<Cplx>>,
) -> std::result::Result<Vec<Cplx>, AttemptFailure> {
    let coeffs = coeffs_to_cplx(poly.coeffs(), wp);

    // Degree 1 is solved exactly: z = -a0/a1.
    if degree == 1 {
        let root = coeffs[0].div(&coeffs[1]).neg();
        return Ok(vec![finalize_real_snap(root, precision_bits)]);
    }

    let mut zs = match warm {
        Some(ws) => ws.into_iter().map(|z| z.with_prec(wp)).collect(),
        None => initial_circle(poly, degree, wp),
    };

    let tol = two_pow(wp, 8 - precision_bits as i32);
    let mut converged = false;
    let mut best_correction = Float::with_val(wp, f64::INFINITY);
    for _ in 0..MAX_SWEEPS {
        let max_corr = aberth_sweep(&coeffs, &mut zs, wp);
        if max_corr < best_correction {
            best_correction = max_corr.clone();
        }
        if max_corr <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(AttemptFailure {
            message: format!(
                "iteration stalled at max correction {:e} (target {:e})",
                best_correction.to_f64(),
                tol.to_f64()
            ),
            best: Some(zs),
        });
    }

    // Polish with two sweeps at doubled precision.
    let wp2 = wp.saturating_mul(2);
    let coeffs2 = coeffs_to_cplx(poly.coeffs(), wp2);
    let mut polished: Vec<Cplx> = zs.iter().map(|z| z.with_prec(wp2)).collect();
    for _ in 0..2 {
        aberth_sweep(&coeffs2, &mut polished, wp2);
    }

    if let Err(message) = validate(poly, &polished, precision_bits, wp2) {
        return Err(AttemptFailure {
            message,
            best: Some(zs),
        });
    }

    let mut out = match symmetrize(polished, precision_bits, wp2) {
        Ok(zs) => zs,
        Err(e) => {
            return Err(AttemptFailure {
                message: e.to_string(),
                best: Some(zs),
            })
        }
    };
    sort_zeros(&mut out);
    Ok(out)
}

/// One Gauss–Seidel Aberth sweep; returns the largest correction applied.
fn aberth_sweep(coeffs: &[Cplx], zs: &mut [Cplx], wp: u32) -> Float {
    let mut max_corr = Float::new(wp);
    for j in 0..zs.len() {
        let (p, dp) = horner_with_derivative(coeffs, &zs[j]);
        if p.is_zero() {
            continue; // already an exact root
        }
        let newton = if dp.is_zero() {
            // Derivative vanished (multiple-root pinch): nudge instead.
            Cplx::from_f64(wp, 1e-3, 1e-3)
        } else {
            p.div(&dp)
        };
        let mut repulsion = Cplx::zero(wp);
        for (l, other) in zs.iter().enumerate() {
            if l != j {
                let gap = zs[j].sub(other);
                if !gap.is_zero() {
                    repulsion = repulsion.add(&gap.recip());
                }
            }
        }
        let denom = Cplx::from_f64(wp, 1.0, 0.0).sub(&newton.mul(&repulsion));
        let w = if denom.is_zero() {
            newton
        } else {
            newton.div(&denom)
        };
        let corr = w.abs();
        if corr > max_corr {
            max_corr = corr;
        }
        zs[j] = zs[j].sub(&w);
    }
    max_corr
}

/// Starting points on a circle sized by the Fujiwara coefficient bound
/// `2 · max_i |a_{d-i}/a_d|^{1/i}` (computed through logarithms, since the
/// exact coefficients can span thousands of orders of magnitude).
fn initial_circle(poly: &Poly, degree: usize, wp: u32) -> Vec<Cplx> {
    let log_abs = |s: &Scalar| -> Option<Float> {
        if s.is_zero() {
            None
        } else {
            Some(Float::with_val(64, s.abs().to_float(64).ln()))
        }
    };
    let lead = log_abs(&poly.coeff(degree)).expect("leading coefficient is nonzero");
    let mut best = Float::with_val(64, -f64::INFINITY);
    for i in 1..=degree {
        if let Some(l) = log_abs(&poly.coeff(degree - i)) {
            let r = Float::with_val(64, &l - &lead) / (i as u32);
            if r > best {
                best = r;
            }
        }
    }
    let radius = 2.0 * best.exp().to_f64().max(1e-6);

    let d = degree as f64;
    (0..degree)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 / d) + 0.5 / d + 0.13;
            Cplx::from_f64(wp, radius * angle.cos(), radius * angle.sin())
        })
        .collect()
}

/// Exact-data validation: Vieta's sum and product, then conjugate pairing.
fn validate(
    poly: &Poly,
    zs: &[Cplx],
    precision_bits: u32,
    wp: u32,
) -> std::result::Result<(), String> {
    let degree = zs.len();
    let vtol = two_pow(wp, -((precision_bits / 2) as i32));

    let a_d = poly.coeff(degree);
    let sum_target = (-poly.coeff(degree - 1).checked_div(&a_d).unwrap()).to_float(wp);
    let mut sum = Cplx::zero(wp);
    for z in zs {
        sum = sum.add(z);
    }
    let sum_err = sum.sub(&Cplx::real(wp, sum_target.clone())).abs();
    let sum_scale = Float::with_val(wp, sum_target.abs()).max(&Float::with_val(wp, 1));
    if sum_err > Float::with_val(wp, &sum_scale * &vtol) {
        return Err(format!(
            "Vieta sum residual {:e} exceeds tolerance",
            sum_err.to_f64()
        ));
    }

    let mut prod_target = poly.coeff(0).checked_div(&a_d).unwrap();
    if degree % 2 == 1 {
        prod_target = -prod_target;
    }
    let prod_target = prod_target.to_float(wp);
    let mut prod = Cplx::from_f64(wp, 1.0, 0.0);
    for z in zs {
        prod = prod.mul(z);
    }
    let prod_err = prod.sub(&Cplx::real(wp, prod_target.clone())).abs();
    let prod_scale = Float::with_val(wp, prod_target.abs()).max(&Float::with_val(wp, 1));
    if prod_err > Float::with_val(wp, &prod_scale * &vtol) {
        return Err(format!(
            "Vieta product residual {:e} exceeds tolerance",
            prod_err.to_f64()
        ));
    }
    Ok(())
}

/// Snaps near-real zeros onto the axis and replaces conjugate partners by
/// their exact symmetrization, so the returned multiset is closed under
/// conjugation bit-for-bit.
fn symmetrize(zs: Vec<Cplx>, precision_bits: u32, wp: u32) -> Result<Vec<Cplx>> {
    let mut out: Vec<Cplx> = Vec::with_capacity(zs.len());
    let mut pending: Vec<Cplx> = Vec::new();
    for z in zs {
        let snapped = finalize_real_snap(z, precision_bits);
        if snapped.im.is_zero() {
            out.push(snapped);
        } else {
            pending.push(snapped);
        }
    }

    let ptol = two_pow(wp, -((precision_bits / 2) as i32));
    while let Some(z) = pending.pop() {
        let conj = z.conj();
        let mut best: Option<(usize, Float)> = None;
        for (idx, candidate) in pending.iter().enumerate() {
            let d = candidate.sub(&conj).abs();
            if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
                best = Some((idx, d));
            }
        }
        let scale = Float::with_val(wp, z.abs()).max(&Float::with_val(wp, 1));
        match best {
            Some((idx, d)) if d <= Float::with_val(wp, &scale * &ptol) => {
                let partner = pending.swap_remove(idx);
                let re = Float::with_val(wp, &z.re + &partner.re) / 2u32;
                let hi = Float::with_val(
                    wp,
                    Float::with_val(wp, z.im.clone().abs()) + partner.im.abs(),
                ) / 2u32;
                out.push(Cplx::new(re.clone(), hi.clone()));
                out.push(Cplx::new(re, -hi));
            }
            _ => {
                return Err(Error::RootFinding(format!(
                    "non-real zero near {:?} has no conjugate partner",
                    z
                )))
            }
        }
    }
    Ok(out)
}

fn finalize_real_snap(z: Cplx, precision_bits: u32) -> Cplx {
    let wp = z.prec();
    let itol = two_pow(wp, -((precision_bits / 4) as i32));
    let scale = Float::with_val(wp, z.abs()).max(&Float::with_val(wp, 1));
    if Float::with_val(wp, z.im.clone().abs()) <= scale * itol {
        Cplx::new(z.re, Float::new(wp))
    } else {
        z
    }
}

fn sort_zeros(zs: &mut [Cplx]) {
    zs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FactorSet, LinFactor};
    use crate::ghostrec::{mgf, ProblemSpec};

    fn int(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn poly_with_roots(roots: &[i64]) -> Poly {
        let mut p = Poly::one();
        for r in roots {
            // multiply by (t - r)
            let factor = Poly::new(vec![int(-r), int(1)]);
            p = p.mul(&factor);
        }
        p
    }

    #[test]
    fn recovers_known_integer_roots() {
        let p = poly_with_roots(&[1, 2, 3, 4, 5]);
        let zeros = find_poly_zeros(&p, 128).unwrap();
        assert_eq!(zeros.len(), 5);
        for (z, expected) in zeros.iter().zip([1.0, 2.0, 3.0, 4.0, 5.0]) {
            assert!(z.im.is_zero());
            let err = Float::with_val(z.prec(), &z.re - expected).abs();
            assert!(err < two_pow(z.prec(), -64), "{z:?} vs {expected}");
        }
    }

    #[test]
    fn linear_numerator_is_solved_exactly() {
        let f = mgf(&ProblemSpec::from_ints(2, 3, 3).unwrap());
        let zeros = find_zeros(&f, 128).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!(zeros[0].im.is_zero());
        assert_eq!(zeros[0].re.to_f64(), 9.0);
    }

    #[test]
    fn no_zeros_for_single_factor_mgf() {
        let f = mgf(&ProblemSpec::from_ints(1, 5, 7).unwrap());
        assert!(find_zeros(&f, 128).unwrap().is_empty());
    }

    #[test]
    fn zeros_of_3_3_3_match_reference() {
        let f = mgf(&ProblemSpec::from_ints(3, 3, 3).unwrap());
        let zeros = find_zeros(&f, 128).unwrap();
        assert_eq!(zeros.len(), 3);
        // sorted by real part: 3.509, then the conjugate pair at 6.246
        assert!(zeros[0].im.is_zero());
        assert!((zeros[0].re.to_f64() - 3.509).abs() < 1e-3);
        assert!((zeros[1].re.to_f64() - 6.246).abs() < 1e-3);
        assert!((zeros[1].im.to_f64().abs() - 2.677).abs() < 1e-3);
        // exact conjugate closure
        assert_eq!(zeros[1].re, zeros[2].re);
        assert_eq!(
            Float::with_val(zeros[1].prec(), &zeros[1].im + &zeros[2].im).to_f64(),
            0.0
        );
    }

    #[test]
    fn deterministic_output() {
        let f = mgf(&ProblemSpec::from_ints(4, 4, 5).unwrap());
        let a = find_zeros(&f, 128).unwrap();
        let b = find_zeros(&f, 128).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.re, y.re);
            assert_eq!(x.im, y.im);
        }
    }

    #[test]
    fn doubling_precision_refines_within_previous_tolerance() {
        let f = mgf(&ProblemSpec::from_ints(4, 4, 4).unwrap());
        let coarse = find_zeros(&f, 96).unwrap();
        let fine = find_zeros(&f, 192).unwrap();
        assert_eq!(coarse.len(), fine.len());
        let tol = two_pow(512, -48); // validation tolerance of the coarse run
        for (a, b) in coarse.iter().zip(&fine) {
            let d = a.with_prec(512).sub(&b.with_prec(512)).abs();
            let scale = Float::with_val(512, a.abs()).max(&Float::with_val(512, 1));
            assert!(d <= scale * tol.clone(), "drift {:e}", d.to_f64());
        }
    }

    #[test]
    fn zero_at_origin_is_found() {
        // t(t-2): roots {0, 2}
        let p = Poly::new(vec![int(0), int(-2), int(1)]);
        let zeros = find_poly_zeros(&p, 128).unwrap();
        assert_eq!(zeros.len(), 2);
        assert!(zeros[0].re.clone().abs() < two_pow(128, -56));
        assert!((zeros[1].re.to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_zero_polynomial() {
        assert!(find_poly_zeros(&Poly::zero(), 128).is_err());
        let constant = RatFun::new(
            Poly::one(),
            FactorSet::from_factors(vec![LinFactor::new(int(2), 1)]),
        );
        assert!(find_zeros(&constant, 128).unwrap().is_empty());
    }
}
