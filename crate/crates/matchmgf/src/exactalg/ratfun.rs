//! Rational functions kept in factored-denominator canonical form.
//!
//! Every denominator this engine ever produces is a product of linear
//! factors `(1 - t/pole)` with known exact poles, so a denominator is stored
//! as a multiset of factors rather than an expanded polynomial:
//! deduplicated, sorted by pole, multiplicities `>= 1`. A [`RatFun`] is a
//! numerator [`Poly`] over such a [`FactorSet`]; with this normalization the
//! value at `t = 0` is simply the numerator's constant coefficient, and two
//! rational functions built by different (re)associations of the same sum
//! compare equal structurally.
//!
//! Cancellation of numerator roots against denominator poles never happens
//! implicitly — [`RatFun::normalized`] performs it explicitly and reports
//! exactly which factors were cancelled.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Poly, Scalar};
use crate::{Error, Result};

/// The factor `(1 - t/pole)^multiplicity` with a nonzero exact pole.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinFactor {
    pub pole: Scalar,
    pub multiplicity: u32,
}

impl LinFactor {
    pub fn new(pole: Scalar, multiplicity: u32) -> Self {
        assert!(!pole.is_zero(), "linear factor pole must be nonzero");
        LinFactor { pole, multiplicity }
    }

    /// The factor expanded once (multiplicity ignored): `1 - t/pole`.
    pub fn poly(&self) -> Poly {
        Poly::new(vec![
            Scalar::one(),
            -self.pole.checked_recip().expect("pole is nonzero"),
        ])
    }
}

/// A multiset of linear factors: sorted by pole, poles distinct,
/// multiplicities positive.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorSet {
    factors: Vec<LinFactor>,
}

impl FactorSet {
    pub fn empty() -> Self {
        FactorSet::default()
    }

    pub fn from_factors(factors: Vec<LinFactor>) -> Self {
        let mut set = FactorSet::empty();
        for f in factors {
            set.insert(f.pole, f.multiplicity);
        }
        set
    }

    /// Adds `multiplicity` copies of the factor with the given pole.
    pub fn insert(&mut self, pole: Scalar, multiplicity: u32) {
        if multiplicity == 0 {
            return;
        }
        assert!(!pole.is_zero(), "linear factor pole must be nonzero");
        match self.factors.binary_search_by(|f| f.pole.cmp(&pole)) {
            Ok(i) => self.factors[i].multiplicity += multiplicity,
            Err(i) => self.factors.insert(i, LinFactor { pole, multiplicity }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinFactor> {
        self.factors.iter()
    }

    pub fn factors(&self) -> &[LinFactor] {
        &self.factors
    }

    /// Multiplicity of the given pole (0 when absent).
    pub fn multiplicity_of(&self, pole: &Scalar) -> u32 {
        self.factors
            .binary_search_by(|f| f.pole.cmp(pole))
            .map(|i| self.factors[i].multiplicity)
            .unwrap_or(0)
    }

    /// Total multiplicity (the degree of the expanded denominator).
    pub fn total_multiplicity(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity as usize).sum()
    }

    /// Pointwise max of multiplicities — the least common multiple of the two
    /// factor products. Associative and commutative.
    pub fn union_max(&self, other: &FactorSet) -> FactorSet {
        let mut out = self.clone();
        for f in &other.factors {
            let have = out.multiplicity_of(&f.pole);
            if f.multiplicity > have {
                out.insert(f.pole.clone(), f.multiplicity - have);
            }
        }
        out
    }

    /// Multiset difference `self - other`, saturating at zero per pole.
    pub fn difference(&self, other: &FactorSet) -> FactorSet {
        let mut out = FactorSet::empty();
        for f in &self.factors {
            let sub = other.multiplicity_of(&f.pole);
            if f.multiplicity > sub {
                out.insert(f.pole.clone(), f.multiplicity - sub);
            }
        }
        out
    }

    /// The expanded product `prod (1 - t/pole)^multiplicity`.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::one();
        for f in &self.factors {
            let lin = f.poly();
            for _ in 0..f.multiplicity {
                acc = acc.mul(&lin);
            }
        }
        acc
    }

    /// First `order + 1` power-series coefficients of the expanded product.
    pub fn expand_series(&self, order: usize) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); order + 1];
        acc[0] = Scalar::one();
        let mut len = 1usize; // number of meaningful coefficients
        for f in &self.factors {
            let neg_inv = -f.pole.checked_recip().expect("pole is nonzero");
            for _ in 0..f.multiplicity {
                // multiply by (1 + neg_inv * t), truncated
                let new_len = (len + 1).min(order + 1);
                for i in (1..new_len).rev() {
                    let add = &acc[i - 1] * &neg_inv;
                    acc[i] += &add;
                }
                len = new_len;
            }
        }
        acc
    }

    /// Exact value of the expanded product at `t`; errors at a pole.
    pub fn eval(&self, t: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for f in &self.factors {
            let lin = &Scalar::one() - &t.checked_div(&f.pole).expect("pole is nonzero");
            if lin.is_zero() {
                return Err(Error::EvalAtPole(f.pole.to_string()));
            }
            acc *= &lin.pow_u32(f.multiplicity);
        }
        Ok(acc)
    }

    /// `prod pole^multiplicity`, the scaling between the factored form and
    /// the "integer polynomial" display form.
    pub fn pole_product(&self) -> Scalar {
        let mut acc = Scalar::one();
        for f in &self.factors {
            acc *= &f.pole.pow_u32(f.multiplicity);
        }
        acc
    }
}

impl fmt::Debug for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^{}", fac.pole, fac.multiplicity)?;
        }
        write!(f, "}}")
    }
}

/// A rational function `numer(t) / prod (1 - t/pole)^multiplicity`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RatFun {
    numer: Poly,
    denom: FactorSet,
}

impl RatFun {
    pub fn new(numer: Poly, denom: FactorSet) -> Self {
        RatFun { numer, denom }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFun::new(Poly::constant(c), FactorSet::empty())
    }

    pub fn one() -> Self {
        RatFun::constant(Scalar::one())
    }

    pub fn zero() -> Self {
        RatFun::new(Poly::zero(), FactorSet::empty())
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &FactorSet {
        &self.denom
    }

    /// Value at `t = 0` — by canonical form, the numerator's constant term.
    pub fn value_at_zero(&self) -> Scalar {
        self.numer.coeff(0)
    }

    /// Numerator degree minus total denominator multiplicity, i.e. the degree
    /// of the function at infinity. `None` for the zero function.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        self.numer
            .degree()
            .map(|d| d as i64 - self.denom.total_multiplicity() as i64)
    }

    /// Sum over the least common denominator: the result's denominator is the
    /// pointwise-max union of the operands' factor multisets (no implicit
    /// cancellation), so sums are canonical regardless of association order.
    pub fn add(&self, other: &RatFun) -> RatFun {
        let denom = self.denom.union_max(&other.denom);
        let self_missing = denom.difference(&self.denom).expand();
        let other_missing = denom.difference(&other.denom).expand();
        let numer = self
            .numer
            .mul(&self_missing)
            .add(&other.numer.mul(&other_missing));
        RatFun { numer, denom }
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> RatFun {
        RatFun {
            numer: self.numer.scale(s),
            denom: if s.is_zero() {
                FactorSet::empty()
            } else {
                self.denom.clone()
            },
        }
    }

    /// Multiplication by `t`.
    pub fn mul_t(&self) -> RatFun {
        RatFun {
            numer: self.numer.mul_t(),
            denom: self.denom.clone(),
        }
    }

    /// Multiplication by `(1 - t/pole)^{-1}` — the resolvent prefactor of the
    /// table recursion.
    pub fn div_factor(&self, pole: Scalar) -> RatFun {
        let mut denom = self.denom.clone();
        denom.insert(pole, 1);
        RatFun {
            numer: self.numer.clone(),
            denom,
        }
    }

    /// Cancels every numerator root that coincides with a denominator pole
    /// (to its exact order) and returns the reduced function together with
    /// the cancelled factors.
    pub fn normalized(&self) -> (RatFun, Vec<LinFactor>) {
        if self.numer.is_zero() {
            let cancelled = self.denom.factors().to_vec();
            return (RatFun::zero(), cancelled);
        }
        let mut numer = self.numer.clone();
        let mut denom = FactorSet::empty();
        let mut cancelled = Vec::new();
        for f in self.denom.iter() {
            let mut remaining = f.multiplicity;
            let mut removed = 0u32;
            while remaining > 0 {
                match numer.divide_exact_by_factor(&f.pole) {
                    Some(q) => {
                        numer = q;
                        remaining -= 1;
                        removed += 1;
                    }
                    None => break,
                }
            }
            if removed > 0 {
                cancelled.push(LinFactor::new(f.pole.clone(), removed));
            }
            if remaining > 0 {
                denom.insert(f.pole.clone(), remaining);
            }
        }
        (RatFun { numer, denom }, cancelled)
    }

    /// True when no denominator pole is a numerator root.
    pub fn is_normalized(&self) -> bool {
        if self.numer.is_zero() {
            return self.denom.is_empty();
        }
        self.denom
            .iter()
            .all(|f| !self.numer.eval(&f.pole).is_zero())
    }

    /// Exact evaluation; errors at denominator poles.
    pub fn eval(&self, t: &Scalar) -> Result<Scalar> {
        let den = self.denom.eval(t)?;
        self.numer.eval(t).checked_div(&den)
    }

    /// First `order + 1` Maclaurin coefficients, exactly.
    ///
    /// The denominator is expanded as a truncated power series and inverted
    /// term by term (its constant coefficient is 1 by construction).
    pub fn taylor(&self, order: usize) -> Vec<Scalar> {
        let den = self.denom.expand_series(order);
        debug_assert!(den[0].is_one());
        // inv[i] with inv[0] = 1, inv[i] = -sum_{j=1..=i} den[j] * inv[i-j]
        let mut inv = vec![Scalar::zero(); order + 1];
        inv[0] = Scalar::one();
        for i in 1..=order {
            let mut acc = Scalar::zero();
            for j in 1..=i {
                if !den[j].is_zero() {
                    acc += &(&den[j] * &inv[i - j]);
                }
            }
            inv[i] = -acc;
        }
        let mut out = vec![Scalar::zero(); order + 1];
        for i in 0..=order {
            let mut acc = Scalar::zero();
            for j in 0..=i {
                let a = self.numer.coeff(j);
                if !a.is_zero() {
                    acc += &(&a * &inv[i - j]);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Display form with integer-content extraction, e.g.
    /// `6 * (162 - 90*t + 16*t^2 - t^3) / ((3 - t)^5 * (4 - t))`.
    ///
    /// Each factor `(1 - t/(a/b))` prints as `(a - b*t)` and the numerator is
    /// rescaled accordingly, so the printed expression equals the function.
    pub fn display_factored(&self) -> String {
        if self.numer.is_zero() {
            return "0".to_string();
        }
        // numer * prod pole^mult, then adjust for rational poles a/b:
        // (1 - t/(a/b))^m = ((a - b t)/a)^m, and pole^mult = (a/b)^m, so the
        // numerator scaling is prod a^m / pole^m * pole^m = prod a^m... i.e.
        // scale by prod a^m where a is the pole's numerator... more directly:
        // F = N / prod ((a - b t)/a)^m = N * prod a^m / prod (a - b t)^m.
        let mut scale = Scalar::one();
        for f in self.denom.iter() {
            scale *=
                &Scalar::from_rational(rug::Rational::from(f.pole.numer())).pow_u32(f.multiplicity);
        }
        let scaled = self.numer.scale(&scale);
        let content = scaled.content();
        let primitive = scaled.scale(&content.checked_recip().expect("nonzero content"));
        let mut out = String::new();
        if !content.is_one() {
            out.push_str(&format!("{content} * "));
        }
        out.push_str(&format!("({primitive})"));
        if !self.denom.is_empty() {
            out.push_str(" / (");
            for (i, f) in self.denom.iter().enumerate() {
                if i > 0 {
                    out.push_str(" * ");
                }
                let a = f.pole.numer();
                let b = f.pole.denom();
                let base = if *b == 1 {
                    format!("({a} - t)")
                } else {
                    format!("({a} - {b}*t)")
                };
                out.push_str(&base);
                if f.multiplicity > 1 {
                    out.push_str(&format!("^{}", f.multiplicity));
                }
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_factored())
    }
}
