//! Winding numbers of numerator polynomials along circles, by adaptive
//! argument tracking.
//!
//! This is the method-independent half of every disk verdict: the number of
//! zeros strictly inside `|t| = r` equals the winding number of `p(t)` as
//! `t` traverses the circle, and it is computed here without any knowledge
//! of where the root finder thinks the zeros are. Sampling is refined until
//! consecutive arguments differ by less than a quarter turn, which pins the
//! branch of the argument unambiguously.

use rug::{Float, Rational};

use crate::exactalg::{Poly, Scalar};
use crate::numeric::{coeffs_to_cplx, horner, two_pow, Cplx};
use crate::{Error, Result};

const INITIAL_SEGMENTS: u32 = 64;
const MAX_DEPTH: u32 = 40;
const MAX_EVALS: usize = 1 << 18;

/// Winding number of `poly` along the circle `|t| = radius` (positively
/// oriented), i.e. the number of zeros inside the open disk.
///
/// Near-contour zeros make the numerator cancel catastrophically at some
/// sample points, so the working precision is doubled (up to a generous cap)
/// whenever a sample cannot be certified nonzero at the current one.
///
/// Errors if the contour passes through (or numerically grazes even at the
/// highest precision) a zero, or if the argument cannot be pinned down
/// within the refinement budget.
pub fn winding_number(poly: &Poly, radius: &Scalar, precision_bits: u32) -> Result<i64> {
    if poly.degree().is_none() {
        return Err(Error::Domain(
            "winding number of the zero polynomial is undefined".into(),
        ));
    }
    if !radius.is_positive() {
        return Err(Error::Domain(format!(
            "winding circle radius must be positive, got {radius}"
        )));
    }
    let cap = 16 * precision_bits + 256;
    let mut wp = precision_bits + 64;
    loop {
        match winding_attempt(poly, radius, wp) {
            Err(Error::WindingAmbiguous(_)) if wp < cap => {
                wp = wp.saturating_mul(2).min(cap);
            }
            other => return other,
        }
    }
}

/// One fixed-precision pass of adaptive argument tracking.
fn winding_attempt(poly: &Poly, radius: &Scalar, wp: u32) -> Result<i64> {
    let degree = match poly.degree() {
        None => unreachable!("checked by caller"),
        Some(0) => return Ok(0),
        Some(d) => d,
    };
    let coeffs = coeffs_to_cplx(poly.coeffs(), wp);
    let r = radius.to_float(wp);

    // Evaluation scale sum |a_i| r^i: anything at or below `scale * 2^(-wp/2)`
    // is indistinguishable from an on-contour zero.
    let mut scale = Float::new(wp);
    let mut r_pow = Float::with_val(wp, 1);
    for c in poly.coeffs() {
        scale += c.abs().to_float(wp) * &r_pow;
        r_pow *= &r;
    }
    let zero_floor = scale * two_pow(wp, -(wp as i32) / 2);

    let tau = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let half_pi = Float::with_val(wp, rug::float::Constant::Pi) / 2u32;

    let mut evals = 0usize;
    let mut sample = |theta: &Rational| -> Result<Cplx> {
        evals += 1;
        if evals > MAX_EVALS {
            return Err(Error::WindingAmbiguous(format!(
                "argument tracking exceeded {MAX_EVALS} contour samples"
            )));
        }
        let angle = Float::with_val(wp, theta) * &tau;
        let (sin, cos) = angle.sin_cos(Float::new(wp));
        let z = Cplx::new(
            Float::with_val(wp, &cos * &r),
            Float::with_val(wp, &sin * &r),
        );
        let p = horner(&coeffs, &z);
        if p.abs() <= zero_floor {
            return Err(Error::WindingAmbiguous(format!(
                "contour |t| = {radius} passes within resolution of a zero near angle {}",
                theta.to_f64()
            )));
        }
        Ok(p)
    };

    // Initial uniform samples at theta = i/N, i = 0..N (theta in turns).
    let mut points = Vec::with_capacity(INITIAL_SEGMENTS as usize + 1);
    for i in 0..=INITIAL_SEGMENTS {
        let theta = Rational::from((i, INITIAL_SEGMENTS));
        points.push((theta.clone(), sample(&theta)?));
    }

    // Adaptive bisection. A segment is accepted only when the argument turns
    // by less than pi/2 AND the endpoint values are close relative to their
    // magnitudes; the first condition alone can alias away a full hidden
    // loop when a zero sits very close to the contour, while a hidden loop
    // cannot keep the value nearly constant.
    let close_in_value = |p0: &Cplx, p1: &Cplx| -> bool {
        let m0 = p0.abs();
        let m1 = p1.abs();
        let smaller = if m0 < m1 { m0 } else { m1 };
        p1.sub(p0).abs() < smaller / 2u32
    };
    let mut total = Float::new(wp);
    let mut stack: Vec<(Rational, Rational, Cplx, Cplx, u32)> = Vec::new();
    for w in points.windows(2).rev() {
        let (t0, p0) = &w[0];
        let (t1, p1) = &w[1];
        stack.push((t0.clone(), t1.clone(), p0.clone(), p1.clone(), 0));
    }
    while let Some((t0, t1, p0, p1, depth)) = stack.pop() {
        let delta = wrap_to_half_turn(Float::with_val(wp, p1.arg() - p0.arg()), &tau);
        if Float::with_val(wp, delta.clone().abs()) < half_pi && close_in_value(&p0, &p1) {
            total += delta;
            continue;
        }
        if depth >= MAX_DEPTH {
            return Err(Error::WindingAmbiguous(format!(
                "argument jump of {:.3} turns persists after {MAX_DEPTH} bisections near angle {}",
                (delta / &tau).to_f64(),
                t0.to_f64()
            )));
        }
        let mid = Rational::from(&t0 + &t1) / 2u32;
        let pm = sample(&mid)?;
        stack.push((mid.clone(), t1, pm.clone(), p1, depth + 1));
        stack.push((t0, mid, p0, pm, depth + 1));
    }

    let turns = Float::with_val(wp, &total / &tau);
    let nearest = turns.to_f64().round();
    let residual = Float::with_val(wp, turns - nearest).abs();
    if residual.to_f64() > 0.01 {
        return Err(Error::WindingAmbiguous(format!(
            "accumulated turning {:.6} is not near an integer",
            nearest + residual.to_f64()
        )));
    }
    let count = nearest as i64;
    if count < 0 || count > degree as i64 {
        return Err(Error::WindingAmbiguous(format!(
            "accumulated turning {count} is outside 0..={degree}"
        )));
    }
    Ok(count)
}

/// Wraps an angle difference into (-pi, pi].
fn wrap_to_half_turn(mut delta: Float, tau: &Float) -> Float {
    let prec = delta.prec();
    let half = Float::with_val(prec, tau / 2u32);
    while delta > half {
        delta -= tau;
    }
    let neg_half = -half;
    while delta <= neg_half {
        delta += tau;
    }
    delta
}
