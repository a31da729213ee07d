//! Arbitrary-precision complex arithmetic and complex evaluation of the
//! exact types.
//!
//! The root finder and the contour winding counter work over MPFR floats at
//! a caller-chosen precision. MPFR has no complex type here, so [`Cplx`] is
//! a small rectangular complex built from two [`rug::Float`]s; its exponent
//! range is MPFR's (essentially unbounded for our degrees), so no special
//! overflow-avoiding tricks are needed in the division and norm formulas.

use rug::Float;

use crate::exactalg::{RatFun, Scalar};
use crate::{Error, Result};

/// A complex number with both parts at the same MPFR precision.
#[derive(Clone, PartialEq)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl Cplx {
    pub fn new(re: Float, im: Float) -> Self {
        debug_assert_eq!(re.prec(), im.prec());
        Cplx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cplx::new(Float::new(prec), Float::new(prec))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cplx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_scalar(s: &Scalar, prec: u32) -> Self {
        Cplx::new(s.to_float(prec), Float::new(prec))
    }

    pub fn real(prec: u32, re: Float) -> Self {
        Cplx::new(Float::with_val(prec, re), Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Rounds both parts to a new precision.
    pub fn with_prec(&self, prec: u32) -> Cplx {
        Cplx::new(
            Float::with_val(prec, &self.re),
            Float::with_val(prec, &self.im),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Cplx {
        Cplx::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut acc = Float::with_val(prec, &self.re * &self.re);
        acc += Float::with_val(prec, &self.im * &self.im);
        acc
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn add(&self, rhs: &Cplx) -> Cplx {
        let prec = self.prec().max(rhs.prec());
        Cplx::new(
            Float::with_val(prec, &self.re + &rhs.re),
            Float::with_val(prec, &self.im + &rhs.im),
        )
    }

    pub fn sub(&self, rhs: &Cplx) -> Cplx {
        let prec = self.prec().max(rhs.prec());
        Cplx::new(
            Float::with_val(prec, &self.re - &rhs.re),
            Float::with_val(prec, &self.im - &rhs.im),
        )
    }

    pub fn neg(&self) -> Cplx {
        let prec = self.prec();
        Cplx::new(
            Float::with_val(prec, -&self.re),
            Float::with_val(prec, -&self.im),
        )
    }

    pub fn mul(&self, rhs: &Cplx) -> Cplx {
        let prec = self.prec().max(rhs.prec());
        let re =
            Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im =
            Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        Cplx::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn mul_float(&self, rhs: &Float) -> Cplx {
        let prec = self.prec().max(rhs.prec());
        Cplx::new(
            Float::with_val(prec, &self.re * rhs),
            Float::with_val(prec, &self.im * rhs),
        )
    }

    pub fn div(&self, rhs: &Cplx) -> Cplx {
        let prec = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let re =
            Float::with_val(prec, &self.re * &rhs.re) + Float::with_val(prec, &self.im * &rhs.im);
        let im =
            Float::with_val(prec, &self.im * &rhs.re) - Float::with_val(prec, &self.re * &rhs.im);
        Cplx::new(
            Float::with_val(prec, re / &d),
            Float::with_val(prec, im / &d),
        )
    }

    pub fn recip(&self) -> Cplx {
        let prec = self.prec();
        let d = self.norm_sqr();
        let neg_im = Float::with_val(prec, -&self.im);
        Cplx::new(
            Float::with_val(prec, &self.re / &d),
            Float::with_val(prec, neg_im / &d),
        )
    }
}

impl std::fmt::Debug for Cplx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}i", self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of a polynomial with complex coefficients.
pub fn horner(coeffs: &[Cplx], z: &Cplx) -> Cplx {
    let prec = z.prec();
    let mut acc = Cplx::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// Simultaneous Horner evaluation of a polynomial and its derivative.
pub fn horner_with_derivative(coeffs: &[Cplx], z: &Cplx) -> (Cplx, Cplx) {
    let prec = z.prec();
    let mut p = Cplx::zero(prec);
    let mut dp = Cplx::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

/// Converts exact polynomial coefficients to complex floats at the given
/// precision (low degree first).
pub fn coeffs_to_cplx(coeffs: &[Scalar], prec: u32) -> Vec<Cplx> {
    coeffs.iter().map(|c| Cplx::from_scalar(c, prec)).collect()
}

/// Evaluates a rational function at a complex point in floating point.
///
/// Exact coefficients and poles are converted at the working precision, so
/// the only rounding is in the Horner recurrences and the factor products.
/// Errors with [`Error::EvalAtPole`] when `z` is numerically
/// indistinguishable from a pole at this precision (any denominator factor
/// with `|1 - z/pole| <= 2^(-prec/2)`).
pub fn ratfun_eval_complex(f: &RatFun, z: &Cplx, prec: u32) -> Result<Cplx> {
    let z = z.with_prec(prec);
    let numer = horner(&coeffs_to_cplx(f.numer().coeffs(), prec), &z);
    let one = Cplx::from_f64(prec, 1.0, 0.0);
    let mut denom = one.clone();
    let threshold = two_pow(prec, -(prec as i32) / 2);
    for factor in f.denom().iter() {
        let p = Cplx::from_scalar(&factor.pole, prec);
        let w = one.sub(&z.div(&p));
        if w.abs() <= threshold {
            return Err(Error::EvalAtPole(factor.pole.to_string()));
        }
        for _ in 0..factor.multiplicity {
            denom = denom.mul(&w);
        }
    }
    Ok(numer.div(&denom))
}

/// `2^e` as an exact float — handy for tolerance thresholds.
pub fn two_pow(prec: u32, e: i32) -> Float {
    Float::with_val(prec, Float::i_exp(1, e))
}
