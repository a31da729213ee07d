//! Exact distribution engine for minimum-cost bipartite `k`-matchings.
//!
//! A complete bipartite graph with parts of size `m` and `n` carries i.i.d.
//! exponential(1) edge costs. `C_{k,m,n}` is the minimum total cost of a
//! `k`-matching (k disjoint edges). Its moment generating function
//! `F(t) = E[exp(t * C)]` is a rational function of `t`, and this crate
//! computes it *exactly* — along with everything downstream of it — via a
//! two-parameter family of auxiliary "ghost" generating functions that
//! satisfy a closed triangular recursion. The parameters `m`, `n` may be
//! arbitrary positive rationals; only the CLI-facing sampling code requires
//! them to be integers.
//!
//! Module map:
//!
//! * [`exactalg`] — exact rational scalars, dense polynomials, and rational
//!   functions in factored-denominator canonical form.
//! * [`ghostrec`] — the triangular recursion producing the table of ghost
//!   generating functions and the MGF itself.
//! * [`numeric`] — arbitrary-precision complex arithmetic on top of MPFR
//!   floats, plus rational-function evaluation at complex points.
//! * [`distengine`] — partial fractions, exact density/CDF models, and
//!   extended-precision pointwise evaluation with precision doubling.
//! * [`momentlab`] — raw moments, cumulants, closed-form means, and rescaled
//!   large-`n` diagnostics.
//! * [`zerolab`] — simultaneous root finding for the MGF numerator, contour
//!   winding counts, zero-free-disk verdicts, denominator-ratio comparison
//!   functions, an exact zero-free certificate for `k = 3`, and asymptotic
//!   zero-cluster predictors.
//! * [`mcoracle`] — an independent Monte Carlo oracle: exact minimum-cost
//!   matching solvers over sampled cost matrices.

pub mod distengine;
pub mod exactalg;
pub mod ghostrec;
pub mod mcoracle;
pub mod momentlab;
pub mod numeric;
pub mod zerolab;

pub use exactalg::{FactorSet, LinFactor, Poly, RatFun, Scalar};
pub use ghostrec::{GhostTable, ProblemSpec};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Exact division by zero (scalar or polynomial).
    #[error("division by zero")]
    DivisionByZero,
    /// A problem specification violated its domain constraints.
    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),
    /// Rational-function evaluation at (or numerically indistinguishable
    /// from) a pole.
    #[error("evaluation at pole {0}")]
    EvalAtPole(String),
    /// Partial fractions require a strictly proper rational function.
    #[error("rational function is not strictly proper: numerator degree {numer_degree}, denominator multiplicity {denom_multiplicity}")]
    NotStrictlyProper {
        numer_degree: usize,
        denom_multiplicity: usize,
    },
    /// An operation required a normalized (fully cancelled) rational function.
    #[error("rational function is not normalized: numerator vanishes at pole {0}")]
    NotNormalized(String),
    /// A density/CDF model would need a non-positive exponential rate.
    #[error("non-positive rate {0} in exponential mixture")]
    NonPositiveRate(String),
    /// The root finder failed to converge within its precision-escalation
    /// budget.
    #[error("root finding did not converge: {0}")]
    RootFinding(String),
    /// The contour argument tracker could not certify a winding count.
    #[error("winding count ambiguous: {0}")]
    WindingAmbiguous(String),
    /// Parameters outside an operation's documented domain.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
