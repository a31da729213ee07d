//! Output artifact types.
//!
//! Every command emits exactly one of these as JSON (or a documented CSV
//! projection). Exact rationals are serialized as strings like `"49/36"` so
//! no precision is lost on the wire; arbitrary-precision floats (zero
//! coordinates, moduli) are serialized as decimal strings that parse back to
//! the identical float; plain `f64` appears only in explicitly numeric
//! payloads (grid values, deviations, simulation statistics).

use serde::{Deserialize, Serialize};

use matchmgf::ghostrec::CancellationRecord;
use matchmgf::numeric::Cplx;
use matchmgf::zerolab::{
    float_to_decimal_string, ClusterMatch, ClusterPrediction, DiskCertificateK3, ZeroReport,
};
use matchmgf::{LinFactor, ProblemSpec, RatFun};

/// A problem specification `(k, m, n)`; `m` and `n` are exact rationals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecOut {
    pub k: u32,
    pub m: String,
    pub n: String,
}

impl From<&ProblemSpec> for SpecOut {
    fn from(spec: &ProblemSpec) -> Self {
        SpecOut {
            k: spec.k(),
            m: spec.m().to_string(),
            n: spec.n().to_string(),
        }
    }
}

/// One denominator factor `(1 - t/pole)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorOut {
    pub pole: String,
    pub multiplicity: u32,
}

impl From<&LinFactor> for FactorOut {
    fn from(f: &LinFactor) -> Self {
        FactorOut {
            pole: f.pole.to_string(),
            multiplicity: f.multiplicity,
        }
    }
}

/// A rational function in canonical factored form: exact numerator
/// coefficients (ascending degree) over a product of linear factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFunOut {
    pub numerator: Vec<String>,
    pub denominator_factors: Vec<FactorOut>,
    pub display: String,
}

impl From<&RatFun> for RatFunOut {
    fn from(f: &RatFun) -> Self {
        RatFunOut {
            numerator: f.numer().coeffs().iter().map(|c| c.to_string()).collect(),
            denominator_factors: f.denom().iter().map(FactorOut::from).collect(),
            display: f.display_factored(),
        }
    }
}

/// A factor cancellation observed while normalizing table entry `(i, j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CancellationOut {
    pub i: u32,
    pub j: u32,
    pub factors: Vec<FactorOut>,
}

impl From<&CancellationRecord> for CancellationOut {
    fn from(r: &CancellationRecord) -> Self {
        CancellationOut {
            i: r.i,
            j: r.j,
            factors: r.factors.iter().map(FactorOut::from).collect(),
        }
    }
}

/// `mgf` command output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MgfArtifact {
    pub spec: SpecOut,
    pub mgf: RatFunOut,
    pub cancellations: Vec<CancellationOut>,
}

/// `ghost` command output: the generating function with `d` ghost edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhostArtifact {
    pub spec: SpecOut,
    pub d: u32,
    pub ghost: RatFunOut,
}

/// `density` / `cdf` command output: a uniform evaluation grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridArtifact {
    pub spec: SpecOut,
    /// "density" or "cdf" — also the second CSV column header.
    pub kind: String,
    /// Exact right end of the grid.
    pub x_max: String,
    pub points: usize,
    pub values: Vec<(f64, f64)>,
}

/// `moments` command output: raw moments (index 0 is the 0th moment, 1) and
/// cumulants, all exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentsArtifact {
    pub spec: SpecOut,
    pub order: usize,
    pub raw_moments: Vec<String>,
    pub cumulants: Vec<String>,
}

/// `cumulants` command output, with the scaled log-concavity diagnostic
/// (indices `p` where `(kappa_p/p!)^2 < (kappa_{p-1}/(p-1)!)(kappa_{p+1}/(p+1)!)`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CumulantsArtifact {
    pub spec: SpecOut,
    pub order: usize,
    pub cumulants: Vec<String>,
    pub scaled_log_concavity_violations: Vec<usize>,
}

/// `zeros` command output: all numerator zeros, as decimal strings that
/// parse back to the exact computed floats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZerosArtifact {
    pub spec: SpecOut,
    pub precision_bits: u32,
    pub count: usize,
    pub real_zero_count: usize,
    pub conjugate_pair_count: usize,
    pub zeros: Vec<[String; 2]>,
    pub poles: Vec<FactorOut>,
}

/// `verify-diskfree` command output: the full disk verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskArtifact {
    pub spec: SpecOut,
    pub precision_bits: u32,
    pub disk_radius: String,
    pub zero_free: bool,
    pub winding_count: i64,
    pub min_zero_modulus: Option<String>,
    pub min_real_part: Option<String>,
    pub real_zero_count: usize,
    pub conjugate_pair_count: usize,
    pub zeros: Vec<[String; 2]>,
    pub poles: Vec<FactorOut>,
}

impl From<&ZeroReport> for DiskArtifact {
    fn from(report: &ZeroReport) -> Self {
        DiskArtifact {
            spec: SpecOut::from(&report.spec),
            precision_bits: report.precision_bits,
            disk_radius: report.disk_radius.to_string(),
            zero_free: report.zero_free,
            winding_count: report.winding_count,
            min_zero_modulus: report
                .min_zero_modulus
                .as_ref()
                .map(float_to_decimal_string),
            min_real_part: report.min_real_part.as_ref().map(float_to_decimal_string),
            real_zero_count: report.real_zero_count,
            conjugate_pair_count: report.conjugate_pair_count,
            zeros: report.zeros.iter().map(cplx_pair).collect(),
            poles: report
                .poles
                .iter()
                .map(|(pole, multiplicity)| FactorOut {
                    pole: pole.to_string(),
                    multiplicity: *multiplicity,
                })
                .collect(),
        }
    }
}

/// Exact witness inequalities of the k = 3 zero-free-disk certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateOut {
    pub m: String,
    pub n: String,
    pub radius: String,
    pub p_j_at_radius: String,
    pub three_r_squared: String,
    pub r_squared: String,
    pub p_j_zeros: [String; 3],
    pub passes: bool,
}

impl From<&DiskCertificateK3> for CertificateOut {
    fn from(c: &DiskCertificateK3) -> Self {
        CertificateOut {
            m: c.m.to_string(),
            n: c.n.to_string(),
            radius: c.radius.to_string(),
            p_j_at_radius: c.p_j_at_radius.to_string(),
            three_r_squared: c.three_r_squared.to_string(),
            r_squared: c.r_squared.to_string(),
            p_j_zeros: [
                c.p_j_zeros[0].to_string(),
                c.p_j_zeros[1].to_string(),
                c.p_j_zeros[2].to_string(),
            ],
            passes: c.passes,
        }
    }
}

/// `janson-compare` command output: whether the real-rooted comparison
/// function equals the MGF, the cleared numerator difference, and (for
/// k = 3) the exact disk certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JansonArtifact {
    pub spec: SpecOut,
    pub equal: bool,
    pub cleared_numer_difference: Vec<String>,
    pub certificate: Option<CertificateOut>,
}

/// One predicted zero cluster location in rescaled `s = t k/(mn)` units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionOut {
    pub s: String,
    pub count: u32,
    pub gap: u32,
}

/// One found zero matched to its nearest predicted cluster point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentOut {
    pub zero: [String; 2],
    pub s_modulus: f64,
    pub prediction_s: f64,
    pub gap: u32,
    pub deviation: f64,
}

/// Zero-to-cluster matching summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchOut {
    pub max_deviation: f64,
    pub counts_by_gap: Vec<(u32, usize)>,
    pub assignments: Vec<AssignmentOut>,
}

impl From<&ClusterMatch> for MatchOut {
    fn from(m: &ClusterMatch) -> Self {
        MatchOut {
            max_deviation: m.max_deviation,
            counts_by_gap: m.counts_by_gap.clone(),
            assignments: m
                .assignments
                .iter()
                .map(|a| AssignmentOut {
                    zero: cplx_pair(&a.zero),
                    s_modulus: a.s_modulus,
                    prediction_s: a.prediction_s,
                    gap: a.gap,
                    deviation: a.deviation,
                })
                .collect(),
        }
    }
}

/// `clusters` command output: the asymptotic cluster prediction, plus the
/// actual zeros and their matching when a full spec was given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClustersArtifact {
    pub k: u32,
    pub fixed_n: Option<String>,
    pub count_rule_inferred: bool,
    pub predictions: Vec<PredictionOut>,
    pub spec: Option<SpecOut>,
    pub precision_bits: Option<u32>,
    pub zeros: Option<Vec<[String; 2]>>,
    pub poles: Option<Vec<FactorOut>>,
    pub matched: Option<MatchOut>,
}

impl ClustersArtifact {
    pub fn from_prediction(prediction: &ClusterPrediction) -> Self {
        ClustersArtifact {
            k: prediction.k,
            fixed_n: prediction.fixed_n.as_ref().map(|n| n.to_string()),
            count_rule_inferred: prediction.count_rule_inferred,
            predictions: prediction
                .predictions
                .iter()
                .map(|p| PredictionOut {
                    s: p.s.to_string(),
                    count: p.count,
                    gap: p.gap,
                })
                .collect(),
            spec: None,
            precision_bits: None,
            zeros: None,
            poles: None,
            matched: None,
        }
    }
}

/// One per-spec verdict row of a `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub spec: SpecOut,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// `sweep` command output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepArtifact {
    pub check: String,
    pub max_k: u32,
    pub max_m: i64,
    pub max_n: i64,
    pub order: usize,
    pub precision_bits: u32,
    pub results: Vec<SweepRow>,
    pub checked: usize,
    pub failures: usize,
}

/// One density curve of the square-problem family figure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityCurveOut {
    pub n: u32,
    pub values: Vec<(f64, f64)>,
}

/// `reproduce-figure --id densities` output: the density curves of the
/// square problems n = 1..=max_n on a common grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensitiesFigure {
    pub id: String,
    pub x_max: String,
    pub points: usize,
    pub curves: Vec<DensityCurveOut>,
}

/// A complex number as a pair of full-precision decimal strings.
pub fn cplx_pair(z: &Cplx) -> [String; 2] {
    [
        float_to_decimal_string(&z.re),
        float_to_decimal_string(&z.im),
    ]
}
