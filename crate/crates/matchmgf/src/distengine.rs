//! From exact MGFs to exact distributions: partial fractions, density and
//! CDF models, and extended-precision pointwise evaluation.
//!
//! A strictly proper rational function with denominator
//! `prod (1 - t/a)^B` decomposes exactly as `sum c/(a - t)^b`; when the
//! function is an MGF `E[exp(t C)]` with positive poles, inverting term by
//! term gives the density of `C` as a mixture of gamma-shaped terms
//! `c x^{b-1} e^{-a x}/(b-1)!`. Everything up to the final pointwise
//! evaluation stays in exact rational arithmetic; evaluation converts the
//! exact weights once per working precision and doubles that precision until
//! two successive evaluations agree to the requested relative tolerance
//! (with an absolute floor tied to the term magnitudes, for points where the
//! alternating terms cancel to zero).

use std::collections::BTreeMap;

use rug::{Complete, Float};
use serde::{Deserialize, Serialize};

use crate::exactalg::{RatFun, Scalar};
use crate::numeric::two_pow;
use crate::{Error, Result};

/// One exact partial-fraction term `coeff / (pole - t)^order`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PfTerm {
    pub pole: Scalar,
    pub order: u32,
    pub coeff: Scalar,
}

/// An exact partial-fraction decomposition, poles ascending and orders
/// descending within a pole; zero coefficients are omitted.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartialFractions {
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    /// Exact evaluation of the term sum (used for reconstruction checks).
    pub fn eval(&self, t: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for term in &self.terms {
            let base = &term.pole - t;
            if base.is_zero() {
                return Err(Error::EvalAtPole(term.pole.to_string()));
            }
            acc += &term.coeff.checked_div(&base.pow_u32(term.order))?;
        }
        Ok(acc)
    }
}

/// `n!` as an exact scalar.
pub fn factorial(n: u32) -> Scalar {
    Scalar::from_rational(rug::Rational::from(rug::Integer::factorial(n).complete()))
}

/// Exact partial-fraction decomposition of a strictly proper, normalized
/// rational function.
///
/// For each pole `a` of multiplicity `B`, substituting `t = a - u` turns the
/// function into `u^{-B} G(u)` with `G` analytic at 0; the coefficients
/// `c_b = G_{B-b}` of the local expansion are computed by exact truncated
/// power series (recentered numerator times the inverted series of the
/// remaining denominator factors). The decomposition is verified by exact
/// re-summation at three non-pole rational points before being returned.
pub fn partial_fractions(f: &RatFun) -> Result<PartialFractions> {
    let numer_degree = f.numer().degree().unwrap_or(0);
    let denom_multiplicity = f.denom().total_multiplicity();
    if f.numer().is_zero() {
        return Ok(PartialFractions { terms: Vec::new() });
    }
    if numer_degree >= denom_multiplicity {
        return Err(Error::NotStrictlyProper {
            numer_degree,
            denom_multiplicity,
        });
    }
    for factor in f.denom().iter() {
        if f.numer().eval(&factor.pole).is_zero() {
            return Err(Error::NotNormalized(factor.pole.to_string()));
        }
    }

    let mut terms = Vec::new();
    for factor in f.denom().iter() {
        let a = &factor.pole;
        let big_b = factor.multiplicity as usize;

        // N(a - u), truncated to degree B-1.
        let shifted = f.numer().compose_center_minus(a);

        // D(u) = prod_{q != a} ((1 - a/q) + u/q)^{m_q}, truncated.
        let mut d = vec![Scalar::zero(); big_b];
        d[0] = Scalar::one();
        for other in f.denom().iter() {
            if other.pole == *a {
                continue;
            }
            let c0 = &Scalar::one() - &a.checked_div(&other.pole)?;
            let c1 = other.pole.checked_recip()?;
            for _ in 0..other.multiplicity {
                for i in (0..big_b).rev() {
                    let mut v = &d[i] * &c0;
                    if i > 0 {
                        v += &(&d[i - 1] * &c1);
                    }
                    d[i] = v;
                }
            }
        }

        // Series inverse of D (its constant term is nonzero since poles are
        // distinct), then G = a^B * N(a-u) * D(u)^{-1}.
        let d0_inv = d[0].checked_recip()?;
        let mut inv = vec![Scalar::zero(); big_b];
        inv[0] = d0_inv.clone();
        for i in 1..big_b {
            let mut acc = Scalar::zero();
            for j in 1..=i {
                if !d[j].is_zero() {
                    acc += &(&d[j] * &inv[i - j]);
                }
            }
            inv[i] = -(&acc * &d0_inv);
        }
        let a_pow = a.pow_u32(factor.multiplicity);
        for idx in 0..big_b {
            let mut g = Scalar::zero();
            for j in 0..=idx {
                let n_j = shifted.coeff(j);
                if !n_j.is_zero() {
                    g += &(&n_j * &inv[idx - j]);
                }
            }
            g *= &a_pow;
            let order = (big_b - idx) as u32; // c_b with b = B - idx
            if !g.is_zero() {
                terms.push(PfTerm {
                    pole: a.clone(),
                    order,
                    coeff: g,
                });
            }
        }
    }

    let pf = PartialFractions { terms };

    // Exact reconstruction check at three non-pole points.
    let mut checked = 0;
    let mut t = Scalar::zero();
    while checked < 3 {
        if f.denom().multiplicity_of(&t) == 0 {
            if pf.eval(&t)? != f.eval(&t)? {
                return Err(Error::Domain(
                    "partial-fraction reconstruction mismatch (internal invariant)".into(),
                ));
            }
            checked += 1;
        }
        t = &t - &Scalar::one();
    }
    Ok(pf)
}

/// One density term `weight * x^(degree-1) * exp(-rate * x)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DensityTerm {
    pub rate: Scalar,
    pub degree: u32,
    pub weight: Scalar,
}

/// An exact density model: a signed mixture of gamma-shaped terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DensityModel {
    pub terms: Vec<DensityTerm>,
}

/// Inverts an MGF (normalized: `F(0) = 1`, strictly proper, all poles
/// positive) into the exact density of the underlying cost.
///
/// Each partial-fraction term `c/(a-t)^b` maps to the density term
/// `(c/(b-1)!) x^{b-1} e^{-a x}`; the total mass `sum c/a^b` is checked to
/// be exactly 1.
pub fn density(f: &RatFun) -> Result<DensityModel> {
    if !f.value_at_zero().is_one() {
        return Err(Error::Domain(format!(
            "not a normalized MGF: value at 0 is {}",
            f.value_at_zero()
        )));
    }
    let pf = partial_fractions(f)?;
    let mut mass = Scalar::zero();
    let mut terms = Vec::with_capacity(pf.terms.len());
    for term in &pf.terms {
        if !term.pole.is_positive() {
            return Err(Error::NonPositiveRate(term.pole.to_string()));
        }
        mass += &term.coeff.checked_div(&term.pole.pow_u32(term.order))?;
        terms.push(DensityTerm {
            rate: term.pole.clone(),
            degree: term.order,
            weight: term.coeff.checked_div(&factorial(term.order - 1))?,
        });
    }
    if !mass.is_one() {
        return Err(Error::Domain(format!(
            "density mass is {mass}, not 1 (internal invariant)"
        )));
    }
    Ok(DensityModel { terms })
}

impl DensityModel {
    /// Per-rate exact polynomial coefficients of the density:
    /// `f(x) = sum_a e^{-a x} R_a(x)`.
    fn density_polys(&self) -> BTreeMap<Scalar, Vec<Scalar>> {
        let mut map: BTreeMap<Scalar, Vec<Scalar>> = BTreeMap::new();
        for term in &self.terms {
            let poly = map.entry(term.rate.clone()).or_default();
            let idx = (term.degree - 1) as usize;
            if poly.len() <= idx {
                poly.resize(idx + 1, Scalar::zero());
            }
            poly[idx] += &term.weight;
        }
        map
    }

    /// Per-rate exact polynomial coefficients of the CDF complement:
    /// `P(C > x) = sum_a e^{-a x} W_a(x)` where
    /// `W_a(x) = sum_terms (c/a^b) sum_{i<b} (a x)^i / i!`.
    fn survival_polys(&self) -> BTreeMap<Scalar, Vec<Scalar>> {
        let mut map: BTreeMap<Scalar, Vec<Scalar>> = BTreeMap::new();
        for term in &self.terms {
            let b = term.degree;
            let c = &term.weight * &factorial(b - 1); // original pf coefficient
            let c_over_ab = c.checked_div(&term.rate.pow_u32(b)).expect("positive rate");
            let poly = map.entry(term.rate.clone()).or_default();
            if poly.len() < b as usize {
                poly.resize(b as usize, Scalar::zero());
            }
            let mut a_pow_over_fact = Scalar::one(); // a^i / i!
            for i in 0..b {
                if i > 0 {
                    a_pow_over_fact = (&a_pow_over_fact * &term.rate)
                        .checked_div(&Scalar::from(i))
                        .unwrap();
                }
                poly[i as usize] += &(&c_over_ab * &a_pow_over_fact);
            }
        }
        map
    }
}

/// Precision policy for pointwise evaluation: start at `start_bits`, double
/// until two successive evaluations agree to relative `rel_tol` (or are both
/// zero at the term-magnitude resolution), giving up past `max_bits`.
#[derive(Clone, Copy, Debug)]
pub struct EvalPolicy {
    pub start_bits: u32,
    pub rel_tol: f64,
    pub max_bits: u32,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy {
            start_bits: 128,
            rel_tol: 1e-15,
            max_bits: 1 << 16,
        }
    }
}

/// Evaluates `sum_a e^{-a x} P_a(x)` (exact rational polynomials `P_a`) at
/// an exact `x >= 0` under the doubling policy. Returns the stabilized value
/// together with the scale `sum_a e^{-a x} |P_a(x)|` used for the zero floor.
fn eval_exponential_mixture(
    polys: &BTreeMap<Scalar, Vec<Scalar>>,
    x: &Scalar,
    policy: EvalPolicy,
) -> Result<Float> {
    // Exact per-rate polynomial values; only exp() is inexact below.
    let mut reduced: Vec<(Scalar, Scalar)> = Vec::new(); // (rate, P_a(x))
    for (rate, coeffs) in polys {
        let mut acc = Scalar::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        reduced.push((rate.clone(), acc));
    }

    let mut prec = policy.start_bits;
    let mut prev: Option<Float> = None;
    loop {
        let mut total = Float::new(prec);
        let mut scale = Float::new(prec);
        for (rate, value) in &reduced {
            let e = (-(rate * x)).to_float(prec).exp();
            let v = value.to_float(prec) * &e;
            scale += Float::with_val(prec, v.clone().abs());
            total += v;
        }
        if let Some(p) = prev {
            let diff = Float::with_val(prec, &total - &p).abs();
            let tol = Float::with_val(prec, total.clone().abs()) * policy.rel_tol;
            if diff <= tol {
                return Ok(total);
            }
            // Zero floor: both estimates vanish relative to the term scale.
            let floor = scale * two_pow(prec, -(prec as i32) / 2);
            if Float::with_val(prec, total.clone().abs()) <= floor
                && Float::with_val(prec, p.abs()) <= floor
            {
                return Ok(total);
            }
        }
        prev = Some(total);
        prec = prec.saturating_mul(2);
        if prec > policy.max_bits {
            return Err(Error::Domain(format!(
                "pointwise evaluation did not stabilize within {} bits",
                policy.max_bits
            )));
        }
    }
}

/// Density value at exact `x >= 0`, via precision doubling.
pub fn density_eval(model: &DensityModel, x: &Scalar, policy: EvalPolicy) -> Result<Float> {
    if x.is_negative() {
        return Err(Error::Domain(format!(
            "density evaluated at negative x = {x}"
        )));
    }
    if x.is_zero() {
        // Exact: only degree-1 terms survive at x = 0.
        let mut v = Scalar::zero();
        for term in &model.terms {
            if term.degree == 1 {
                v += &term.weight;
            }
        }
        return Ok(v.to_float(policy.start_bits));
    }
    eval_exponential_mixture(&model.density_polys(), x, policy)
}

/// CDF value at exact `x >= 0`, via precision doubling.
pub fn cdf_eval(model: &DensityModel, x: &Scalar, policy: EvalPolicy) -> Result<Float> {
    if x.is_negative() {
        return Err(Error::Domain(format!("CDF evaluated at negative x = {x}")));
    }
    if x.is_zero() {
        return Ok(Float::new(policy.start_bits)); // exactly zero mass at 0
    }
    let survival = eval_exponential_mixture(&self::survival_map(model), x, policy)?;
    let prec = survival.prec();
    Ok(Float::with_val(prec, 1i32 - survival))
}

fn survival_map(model: &DensityModel) -> BTreeMap<Scalar, Vec<Scalar>> {
    model.survival_polys()
}

/// Uniform evaluation grid on `[0, x_max]` with `points >= 2` samples.
pub fn density_grid(
    model: &DensityModel,
    x_max: &Scalar,
    points: usize,
    policy: EvalPolicy,
) -> Result<Vec<(Scalar, Float)>> {
    grid_of(model, x_max, points, policy, density_eval)
}

/// Uniform CDF grid on `[0, x_max]` with `points >= 2` samples.
pub fn cdf_grid(
    model: &DensityModel,
    x_max: &Scalar,
    points: usize,
    policy: EvalPolicy,
) -> Result<Vec<(Scalar, Float)>> {
    grid_of(model, x_max, points, policy, cdf_eval)
}

fn grid_of(
    model: &DensityModel,
    x_max: &Scalar,
    points: usize,
    policy: EvalPolicy,
    eval: fn(&DensityModel, &Scalar, EvalPolicy) -> Result<Float>,
) -> Result<Vec<(Scalar, Float)>> {
    if points < 2 {
        return Err(Error::Domain(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    if !x_max.is_positive() {
        return Err(Error::Domain(format!(
            "x_max must be positive, got {x_max}"
        )));
    }
    let steps = Scalar::from((points - 1) as u32);
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = &(x_max * &Scalar::from(i as u32)) / &steps;
        let v = eval(model, &x, policy)?;
        out.push((x, v));
    }
    Ok(out)
}

/// Discrete log-concavity report for a positive-valued grid: checks
/// `v_i^2 * (1 + 1e-9) >= v_{i-1} v_{i+1}` over every interior triple whose
/// values are all strictly positive. Purely diagnostic.
pub fn grid_log_concave(values: &[(Scalar, Float)]) -> bool {
    for w in values.windows(3) {
        let (a, b, c) = (&w[0].1, &w[1].1, &w[2].1);
        if a.is_sign_positive()
            && b.is_sign_positive()
            && c.is_sign_positive()
            && !a.is_zero()
            && !b.is_zero()
            && !c.is_zero()
        {
            let prec = b.prec();
            let lhs = Float::with_val(prec, b * b) * (1.0 + 1e-9);
            let rhs = Float::with_val(prec, a * c);
            if lhs < rhs {
                return false;
            }
        }
    }
    true
}

/// Fixed-precision batched CDF evaluator for statistical tests: the exact
/// survival-polynomial coefficients are converted to floats once, then each
/// evaluation costs one exp and one Horner pass per distinct rate.
pub struct CdfEvaluator {
    prec: u32,
    rates: Vec<(Float, Vec<Float>)>,
}

impl CdfEvaluator {
    pub fn new(model: &DensityModel, prec: u32) -> Self {
        let rates = model
            .survival_polys()
            .into_iter()
            .map(|(rate, coeffs)| {
                (
                    rate.to_float(prec),
                    coeffs.iter().map(|c| c.to_float(prec)).collect(),
                )
            })
            .collect();
        CdfEvaluator { prec, rates }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let x = Float::with_val(self.prec, x);
        let mut survival = Float::new(self.prec);
        for (rate, coeffs) in &self.rates {
            let mut acc = Float::new(self.prec);
            for c in coeffs.iter().rev() {
                acc = acc * &x + c;
            }
            let e = Float::with_val(self.prec, rate * &x);
            survival += acc * (-e).exp();
        }
        (Float::with_val(self.prec, 1i32 - survival)).to_f64()
    }
}
