//! Dense univariate polynomials over exact rational scalars.
//!
//! Coefficients are stored low degree first with no trailing zeros; the zero
//! polynomial is the empty coefficient vector. That makes equality of
//! canonical forms plain structural equality.

use std::fmt;

use super::Scalar;

/// A polynomial in `t` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial from low-first coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `c * t^deg`.
    pub fn monomial(c: Scalar, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Convenience constructor from small integers, low degree first.
    pub fn from_ints(ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by `t` (degree shift).
    pub fn mul_t(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Schoolbook product (sizes here never justify anything fancier).
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Exact division by the factor `(1 - t/pole)` via synthetic division.
    ///
    /// Returns `None` when the factor does not divide exactly (equivalently
    /// when `pole` is not a root). The zero polynomial divides to zero.
    pub fn divide_exact_by_factor(&self, pole: &Scalar) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return None; // nonzero constant has no roots
        }
        // q * (1 - t/pole) = self  =>  b_i = a_i + b_{i-1} / pole,
        // with the final carry b_{n-1} required to satisfy a_n = -b_{n-1}/pole.
        let mut q = Vec::with_capacity(n);
        let mut carry = Scalar::zero();
        for i in 0..n {
            let b = &self.coeffs[i] + &carry.checked_div(pole).expect("pole is nonzero");
            carry = b.clone();
            q.push(b);
        }
        let expected_last = -carry.checked_div(pole).expect("pole is nonzero");
        if self.coeffs[n] == expected_last {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    /// Coefficients (in `u`) of `self(center - u)` — an exact Taylor
    /// recentering used by the partial-fraction expansion.
    pub fn compose_center_minus(&self, center: &Scalar) -> Poly {
        // Horner in (center - u): acc <- acc*(center - u) + a_i, high first.
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            // acc * (center - u) = acc.scale(center) - acc.mul_t()
            acc = acc.scale(center).sub(&acc.mul_t());
            acc = acc.add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Largest rational `g` such that `self/g` has coprime integer
    /// coefficients, signed to make the lowest-degree nonzero coefficient of
    /// `self/g` positive. Zero polynomial yields 1.
    pub fn content(&self) -> Scalar {
        let mut g = Scalar::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if g.is_zero() {
            return Scalar::one();
        }
        if self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Scalar::is_negative)
        {
            g = -g;
        }
        g
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    /// Human form, e.g. `162 - 90*t + 16*t^2 - t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::new(Vec::<Scalar>::deserialize(de)?))
    }
}
