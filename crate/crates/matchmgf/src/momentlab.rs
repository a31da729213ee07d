//! Exact moments and cumulants of cost MGFs, closed-form means, rescaled
//! diagnostics for the large-`n` Gaussian regime, and the cumulant identity
//! driven by zeros and poles.
//!
//! Everything that feeds a positivity or identity check stays in exact
//! rational arithmetic: the sign of a rational number is decidable, so the
//! cumulant-positivity regression needs no tolerance. Floating point appears
//! only in diagnostics that involve transcendental constants.

use rug::float::Constant;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::exactalg::{RatFun, Scalar};
use crate::ghostrec::{mgf, ProblemSpec};
use crate::numeric::Cplx;
use crate::{Error, Result};

/// Exact cumulants `κ_1 .. κ_P` of a cost distribution.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CumulantSeries {
    kappas: Vec<Scalar>,
}

impl CumulantSeries {
    pub fn from_kappas(kappas: Vec<Scalar>) -> Self {
        CumulantSeries { kappas }
    }

    /// `κ_p`, 1-indexed; panics if `p` is 0 or past the computed order.
    pub fn kappa(&self, p: usize) -> &Scalar {
        assert!(p >= 1, "cumulants are 1-indexed");
        &self.kappas[p - 1]
    }

    /// All cumulants, index 0 holding `κ_1`.
    pub fn kappas(&self) -> &[Scalar] {
        &self.kappas
    }

    pub fn order(&self) -> usize {
        self.kappas.len()
    }
}

/// Raw moments `μ_0 .. μ_P` (index `p` holds `μ_p = p! · [t^p] r`).
pub fn raw_moments(r: &RatFun, p_max: usize) -> Vec<Scalar> {
    let taylor = r.taylor(p_max);
    let mut out = Vec::with_capacity(p_max + 1);
    let mut factorial = Scalar::one();
    for (p, coeff) in taylor.into_iter().enumerate() {
        if p > 0 {
            factorial *= &Scalar::from(p as u32);
        }
        out.push(&factorial * &coeff);
    }
    out
}

/// Pascal's triangle of exact binomial coefficients up to row `rows`.
fn binomial_triangle(rows: usize) -> Vec<Vec<Scalar>> {
    let mut tri: Vec<Vec<Scalar>> = Vec::with_capacity(rows + 1);
    for r in 0..=rows {
        let mut row = vec![Scalar::one(); r + 1];
        for c in 1..r {
            row[c] = &tri[r - 1][c - 1] + &tri[r - 1][c];
        }
        tri.push(row);
    }
    tri
}

/// Exact cumulants via the moment–cumulant recurrence
/// `κ_p = μ_p − Σ_{j=1}^{p−1} C(p−1, j−1) · κ_j · μ_{p−j}`.
///
/// Requires `r(0) = 1` (a genuine MGF), since the recurrence assumes
/// `μ_0 = 1`.
pub fn cumulants(r: &RatFun, p_max: usize) -> Result<CumulantSeries> {
    if !r.value_at_zero().is_one() {
        return Err(Error::NotNormalized(format!(
            "cumulants need an MGF with value 1 at 0, got {}",
            r.value_at_zero()
        )));
    }
    let mu = raw_moments(r, p_max);
    let tri = binomial_triangle(p_max.saturating_sub(1));
    let mut kappas: Vec<Scalar> = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let mut k = mu[p].clone();
        for j in 1..p {
            let term = &(&tri[p - 1][j - 1] * &kappas[j - 1]) * &mu[p - j];
            k -= &term;
        }
        kappas.push(k);
    }
    Ok(CumulantSeries { kappas })
}

/// Exact mean `Σ_{i,j≥0, i+j<k} 1/((m−i)(n−j))` of the minimum `k`-matching
/// cost; errors if any factor in the sum vanishes.
pub fn mean_closed_form(k: u32, m: &Scalar, n: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for i in 0..k {
        for j in 0..(k - i) {
            let den = &(m - &Scalar::from(i)) * &(n - &Scalar::from(j));
            acc += &den.checked_recip()?;
        }
    }
    Ok(acc)
}

/// Exact expected cost of a perfect `n`-matching: `Σ_{i=1}^n 1/i²`.
pub fn parisi_mean(n: u32) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 1..=n {
        acc += &Scalar::from(i).pow_u32(2).checked_recip().expect("i > 0");
    }
    acc
}

/// Floating diagnostics of the rescaled perfect-matching cost
/// `sqrt(n) · (C_n − π²/6)`.
///
/// Index 0 of both sequences holds the `p = 1` entry:
/// `scaled[p-1] = n^{p−1} κ_p` and `tilde[p-1] = κ_p` of the rescaled cost,
/// i.e. `sqrt(n)(κ_1 − π²/6)` for `p = 1` and `n^{p/2} κ_p` for `p ≥ 2`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RescaledDiagnostics {
    pub n: u32,
    pub p_max: usize,
    pub scaled: Vec<f64>,
    pub tilde: Vec<f64>,
}

const DIAG_PREC: u32 = 128;

/// Diagnostics for the `n` by `n` perfect matching, computing the MGF and
/// its cumulants internally.
pub fn rescaled_diagnostics(n: u32, p_max: usize) -> Result<RescaledDiagnostics> {
    let spec = ProblemSpec::from_ints(n, n as i64, n as i64)?;
    let kappas = cumulants(&mgf(&spec), p_max)?;
    Ok(rescaled_diagnostics_from(&kappas, n))
}

/// Same diagnostics from an already-computed cumulant series (lets callers
/// reuse cached MGFs).
pub fn rescaled_diagnostics_from(kappas: &CumulantSeries, n: u32) -> RescaledDiagnostics {
    let p_max = kappas.order();
    let pi = Float::with_val(DIAG_PREC, Constant::Pi);
    let pi2_over_6 = Float::with_val(DIAG_PREC, pi.square_ref()) / 6u32;
    let sqrt_n = Float::with_val(DIAG_PREC, n).sqrt();
    let n_scalar = Scalar::from(n);

    let mut scaled = Vec::with_capacity(p_max);
    let mut tilde = Vec::with_capacity(p_max);
    let mut sqrt_n_pow = Float::with_val(DIAG_PREC, 1);
    for p in 1..=p_max {
        let kappa = kappas.kappa(p);
        scaled.push((&n_scalar.pow_u32(p as u32 - 1) * kappa).to_f64());
        sqrt_n_pow *= &sqrt_n; // now sqrt(n)^p
        let t = if p == 1 {
            Float::with_val(DIAG_PREC, kappa.to_float(DIAG_PREC) - &pi2_over_6) * &sqrt_n_pow
        } else {
            kappa.to_float(DIAG_PREC) * &sqrt_n_pow
        };
        tilde.push(t.to_f64());
    }
    RescaledDiagnostics {
        n,
        p_max,
        scaled,
        tilde,
    }
}

fn cplx_pow(z: &Cplx, e: u32) -> Cplx {
    let mut result = Cplx::from_f64(z.prec(), 1.0, 0.0);
    let mut base = z.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    result
}

/// The cumulant identity driven by the MGF's zeros and poles:
/// `κ_p = (p−1)! · (Σ_poles mult·ξ^{−p} − Σ_zeros ρ^{−p})`.
///
/// The pole sum is exact; the zero sum is complex floating arithmetic at
/// `prec` bits. Returns the real value together with the relative imaginary
/// residual (which measures how well the conjugate zero pairs canceled).
pub fn cumulants_from_zeros_poles(
    zeros: &[Cplx],
    poles: &[(Scalar, u32)],
    p: u32,
    prec: u32,
) -> Result<(Float, Float)> {
    if p == 0 {
        return Err(Error::Domain("cumulants are indexed from p = 1".into()));
    }
    let mut pole_sum = Scalar::zero();
    for (pole, mult) in poles {
        pole_sum += &Scalar::from(*mult).checked_div(&pole.pow_u32(p))?;
    }
    let mut zero_sum = Cplx::zero(prec);
    for zero in zeros {
        zero_sum = zero_sum.add(&cplx_pow(&zero.recip(), p));
    }
    let factorial_part = factorial_scalar(p - 1).to_float(prec);
    let real = Float::with_val(prec, pole_sum.to_float(prec) - &zero_sum.re) * &factorial_part;
    let imag = Float::with_val(prec, zero_sum.im.clone().abs()) * &factorial_part;
    let denom = Float::with_val(prec, real.clone().abs()).max(&Float::with_val(prec, 1e-300));
    let residual = imag / denom;
    Ok((real, residual))
}

fn factorial_scalar(n: u32) -> Scalar {
    crate::distengine::factorial(n)
}

/// Exact log-concavity scan of the sequence `a_p = κ_p / p!`: returns every
/// interior index `p` with `a_p² < a_{p−1} · a_{p+1}`. Purely diagnostic —
/// an empty result means the sequence is log-concave over the computed range.
pub fn kappa_over_factorial_log_concavity(kappas: &CumulantSeries) -> Vec<usize> {
    let order = kappas.order();
    let a: Vec<Scalar> = (1..=order)
        .map(|p| {
            kappas
                .kappa(p)
                .checked_div(&factorial_scalar(p as u32))
                .expect("factorial is nonzero")
        })
        .collect();
    let mut violations = Vec::new();
    for p in 2..order {
        let lhs = a[p - 1].pow_u32(2);
        let rhs = &a[p - 2] * &a[p];
        if lhs < rhs {
            violations.push(p);
        }
    }
    violations
}
