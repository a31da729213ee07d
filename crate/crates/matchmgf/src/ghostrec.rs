//! The triangular recursion producing the MGF of the minimum-cost
//! `k`-matching and its auxiliary "ghost" generating functions.
//!
//! For a `k`-matching problem on an `m`-by-`n` complete bipartite graph with
//! i.i.d. exponential(1) edge costs, define for `0 <= d <= kappa` the ghost
//! generating functions `F^(d)_{kappa,mu,nu}(t)`: the MGF of the minimum cost
//! of a `kappa`-matching in which `d` of the `kappa` left-side vertices are
//! *ghosts* (their incident edges cost an independent exponential of rate
//! `mu` each, regardless of the right-side endpoint — equivalently, rate-`mu`
//! vertex costs). These satisfy a closed recursion obtained by conditioning
//! on the cheapest relevant edge, and the table
//!
//! ```text
//! L[i][j] = F^(i-j)_{i, m, n-k+i}(t),          0 <= j <= i <= k
//! ```
//!
//! is triangular: row `i` only consults row `i-1` and earlier entries of row
//! `i`. The corner `L[k][k]` is the MGF of the original (ghost-free) problem.
//!
//! All arithmetic is exact; each entry is normalized (numerator roots
//! coinciding with denominator poles are cancelled) as it is produced, and
//! every cancellation is recorded — cancellations are rare and structurally
//! meaningful (they occur when the generic denominator predicts a pole the
//! true function does not have).

use serde::{Deserialize, Serialize};

use crate::exactalg::{FactorSet, LinFactor, Poly, RatFun, Scalar};
use crate::{Error, Result};

/// A `k`-matching problem on a complete bipartite graph with part sizes
/// `m` and `n` (arbitrary positive rationals — the recursion is algebraic
/// in `m` and `n`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProblemSpec {
    k: u32,
    m: Scalar,
    n: Scalar,
}

impl ProblemSpec {
    /// Validates the domain constraints:
    ///
    /// * `k >= 1`;
    /// * `m, n > 0`;
    /// * no recursion denominator vanishes: `m != j` for `0 <= j < k` and
    ///   `n != k - i` for `1 <= i <= k` (i.e. `n` is not an integer in
    ///   `[0, k-1]`).
    pub fn new(k: u32, m: Scalar, n: Scalar) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        if !m.is_positive() || !n.is_positive() {
            return Err(Error::InvalidSpec(format!(
                "part sizes must be positive, got m = {m}, n = {n}"
            )));
        }
        for j in 0..k {
            if m == Scalar::from(j) {
                return Err(Error::InvalidSpec(format!(
                    "m = {m} collides with recursion denominator m - {j}"
                )));
            }
        }
        for i in 1..=k {
            if n == Scalar::from(k - i) {
                return Err(Error::InvalidSpec(format!(
                    "n = {n} collides with recursion denominator n - {}",
                    k - i
                )));
            }
        }
        Ok(ProblemSpec { k, m, n })
    }

    pub fn from_ints(k: u32, m: i64, n: i64) -> Result<Self> {
        ProblemSpec::new(k, Scalar::from_int(m), Scalar::from_int(n))
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> &Scalar {
        &self.m
    }

    pub fn n(&self) -> &Scalar {
        &self.n
    }

    /// The same problem with the two sides exchanged (the MGF is symmetric
    /// in `m` and `n`).
    pub fn swapped(&self) -> ProblemSpec {
        ProblemSpec {
            k: self.k,
            m: self.n.clone(),
            n: self.m.clone(),
        }
    }

    /// `m` and `n` as integers when the spec describes an actual finite
    /// graph with `k <= min(m, n)` (required by the sampling oracle).
    pub fn as_integer_sides(&self) -> Option<(u32, u32)> {
        let (m, n) = (self.m.to_u32()?, self.n.to_u32()?);
        (self.k <= m.min(n)).then_some((m, n))
    }
}

impl std::fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.m, self.n)
    }
}

/// A cancellation observed while normalizing table entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CancellationRecord {
    pub i: u32,
    pub j: u32,
    pub factors: Vec<LinFactor>,
}

/// The full triangular table of ghost generating functions for one problem.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GhostTable {
    spec: ProblemSpec,
    /// `entries[i][j] = F^(i-j)_{i, m, n-k+i}`, row `i` holding `i + 1`
    /// normalized rational functions.
    entries: Vec<Vec<RatFun>>,
    cancellations: Vec<CancellationRecord>,
}

impl GhostTable {
    /// Runs the triangular recursion for the given problem.
    ///
    /// Traversal is `i` ascending and, within a row, `j` ascending, matching
    /// the data dependencies:
    ///
    /// * `L[0][0] = 1`;
    /// * all-ghost column (`j = 0`, `d = i`):
    ///   `L[i][0] = (1 - i t/(m (n-k+i)))^{-1} L[i-1][0] / m`;
    /// * interior (`1 <= j < i`, `d = i - j`):
    ///   `L[i][j] = (1 - d t/((m-j)(n-k+i)))^{-1} *
    ///      ( L[i-1][j]/(m-j) + ((d+1) t/(n-k+i)) L[i][j-1] + L[i-1][j-1] )`;
    /// * ghost-free edge (`j = i`, `d = 0`, no resolvent prefactor and no
    ///   division by `m - i`):
    ///   `L[i][i] = (t/(n-k+i)) L[i][i-1] + L[i-1][i-1]`.
    pub fn build(spec: &ProblemSpec) -> GhostTable {
        let k = spec.k;
        let m = &spec.m;
        let n = &spec.n;
        let mut entries: Vec<Vec<RatFun>> = Vec::with_capacity(k as usize + 1);
        let mut cancellations = Vec::new();
        entries.push(vec![RatFun::one()]);

        let push_normalized = |row: &mut Vec<RatFun>,
                               cancellations: &mut Vec<CancellationRecord>,
                               i: u32,
                               j: u32,
                               raw: RatFun| {
            let (entry, cancelled) = raw.normalized();
            if !cancelled.is_empty() {
                cancellations.push(CancellationRecord {
                    i,
                    j,
                    factors: cancelled,
                });
            }
            row.push(entry);
        };

        for i in 1..=k {
            let ni = &(n - &Scalar::from(k - i)); // n - k + i, nonzero by spec
            let mut row: Vec<RatFun> = Vec::with_capacity(i as usize + 1);

            // j = 0: every left vertex is a ghost.
            {
                let pole = &(&(m * ni) / &Scalar::from(i));
                let raw = entries[(i - 1) as usize][0]
                    .scale(&m.checked_recip().expect("m > 0"))
                    .div_factor(pole.clone());
                push_normalized(&mut row, &mut cancellations, i, 0, raw);
            }

            // 1 <= j < i: mixed real/ghost rows.
            for j in 1..i {
                let d = i - j;
                let mj = &(m - &Scalar::from(j)); // nonzero by spec
                let pole = &(&(mj * ni) / &Scalar::from(d));
                let term_up = entries[(i - 1) as usize][j as usize]
                    .scale(&mj.checked_recip().expect("m - j != 0"));
                let term_left = row[(j - 1) as usize]
                    .mul_t()
                    .scale(&(&Scalar::from(d + 1) / ni));
                let term_diag = &entries[(i - 1) as usize][(j - 1) as usize];
                let raw = term_up
                    .add(&term_left)
                    .add(term_diag)
                    .div_factor(pole.clone());
                push_normalized(&mut row, &mut cancellations, i, j, raw);
            }

            // j = i: no ghosts. No prefactor, no division by m - i.
            if i >= 1 {
                let term_left = row[(i - 1) as usize]
                    .mul_t()
                    .scale(&ni.checked_recip().expect("n - k + i != 0"));
                let term_diag = &entries[(i - 1) as usize][(i - 1) as usize];
                let raw = term_left.add(term_diag);
                push_normalized(&mut row, &mut cancellations, i, i, raw);
            }

            entries.push(row);
        }

        let table = GhostTable {
            spec: spec.clone(),
            entries,
            cancellations,
        };
        debug_assert!(table.mgf().value_at_zero().is_one());
        table
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// Table entry `L[i][j] = F^(i-j)_{i, m, n-k+i}`.
    pub fn entry(&self, i: u32, j: u32) -> Option<&RatFun> {
        self.entries.get(i as usize)?.get(j as usize)
    }

    /// The MGF of the original problem: corner entry `L[k][k]`, with
    /// `F(0) = 1`.
    pub fn mgf(&self) -> &RatFun {
        &self.entries[self.spec.k as usize][self.spec.k as usize]
    }

    /// The ghost generating function with `d` ghosts among the `k` left
    /// vertices: `F^(d)_{k,m,n} = L[k][k-d]`, for `0 <= d <= k`.
    pub fn ghost(&self, d: u32) -> Result<&RatFun> {
        if d > self.spec.k {
            return Err(Error::Domain(format!(
                "ghost count d = {d} exceeds k = {}",
                self.spec.k
            )));
        }
        Ok(&self.entries[self.spec.k as usize][(self.spec.k - d) as usize])
    }

    /// All cancellations recorded while normalizing table entries.
    pub fn cancellations(&self) -> &[CancellationRecord] {
        &self.cancellations
    }
}

/// Builds the table and returns the MGF `F_{k,m,n}(t)`.
pub fn mgf(spec: &ProblemSpec) -> RatFun {
    GhostTable::build(spec).mgf().clone()
}

/// Builds the table and returns the `d`-ghost generating function
/// `F^(d)_{k,m,n}(t)`.
pub fn ghost_mgf(spec: &ProblemSpec, d: u32) -> Result<RatFun> {
    Ok(GhostTable::build(spec).ghost(d)?.clone())
}

/// The generic denominator of `F_{k,m,n}`: the factor multiset
///
/// ```text
/// prod_{i,j >= 0, i+j < k} (1 - (k-i-j) t / ((m-i)(n-j)))
/// ```
///
/// i.e. poles `(m-i)(n-j)/(k-i-j)`. The true MGF's denominator always
/// divides this product (cancellations can only remove factors).
pub fn default_denominator(spec: &ProblemSpec) -> FactorSet {
    let mut set = FactorSet::empty();
    for i in 0..spec.k {
        for j in 0..(spec.k - i) {
            let d = spec.k - i - j;
            let mi = &spec.m - &Scalar::from(i);
            let nj = &spec.n - &Scalar::from(j);
            let pole = &(&mi * &nj) / &Scalar::from(d);
            set.insert(pole, 1);
        }
    }
    set
}

/// Helper shared by tests and downstream modules: a rational function given
/// in "integer polynomial over integer linear factors" display form,
/// `prefactor * ints(t) / prod (pole_i - t)^mult_i`-style, converted to
/// canonical factored form. `poles` are the exact pole locations.
pub fn ratfun_from_reference(
    prefactor: Scalar,
    numer_ints: &[i64],
    poles: &[(Scalar, u32)],
) -> RatFun {
    let mut denom = FactorSet::empty();
    let mut scale = prefactor;
    for (pole, mult) in poles {
        // The display factor for pole a/b (lowest terms) is (a - b*t)
        // = a * (1 - t/pole), so each factor contributes a scaling of a.
        let a = Scalar::from_rational(rug::Rational::from(pole.numer()));
        scale = &scale / &a.pow_u32(*mult);
        denom.insert(pole.clone(), *mult);
    }
    RatFun::new(Poly::from_ints(numer_ints).scale(&scale), denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    fn int(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::from_ints(0, 3, 3).is_err());
        assert!(ProblemSpec::from_ints(3, -3, 3).is_err());
        // m = 2 < k = 3 hits the m - 2 = 0 denominator
        assert!(ProblemSpec::from_ints(3, 2, 5).is_err());
        // n = 2 = k - 1 hits the n - k + 1 = 0 denominator
        assert!(ProblemSpec::from_ints(3, 5, 2).is_err());
        // rational sides straddling the forbidden integers are fine
        assert!(ProblemSpec::new(3, s(10, 3), s(10, 3)).is_ok());
        assert!(ProblemSpec::from_ints(3, 3, 3).is_ok());
    }

    #[test]
    fn single_edge_problem_is_exponential_of_rate_mn() {
        // k = 1: the minimum of mn independent exponential(1) edges is
        // exponential(mn), MGF 1/(1 - t/(mn)).
        for (m, n) in [(int(3), int(3)), (int(2), int(7)), (s(10, 3), int(3))] {
            let spec = ProblemSpec::new(1, m.clone(), n.clone()).unwrap();
            let f = mgf(&spec);
            let expected = RatFun::one().div_factor(&m * &n);
            assert_eq!(f, expected);
        }
    }

    /// The reference table of all seven nontrivial ghost generating
    /// functions for (k, m, n) = (3, 3, 3), frozen from the known closed
    /// forms.
    fn reference_table_333() -> Vec<(u32, u32, RatFun)> {
        let p3 = |mult| (int(3), mult);
        vec![
            (1, 0, ratfun_from_reference(int(1), &[1], &[p3(1)])),
            (1, 1, ratfun_from_reference(int(3), &[1], &[p3(1)])),
            (2, 0, ratfun_from_reference(int(1), &[1], &[p3(2)])),
            (
                2,
                1,
                ratfun_from_reference(int(6), &[5, -1], &[p3(2), (int(4), 1)]),
            ),
            (
                2,
                2,
                ratfun_from_reference(int(6), &[6, -1], &[p3(2), (int(4), 1)]),
            ),
            (3, 0, ratfun_from_reference(int(1), &[1], &[p3(3)])),
            (
                3,
                1,
                ratfun_from_reference(int(9), &[19, -9, 1], &[p3(4), (int(4), 1)]),
            ),
            (
                3,
                2,
                ratfun_from_reference(int(18), &[99, -65, 14, -1], &[p3(5), (int(4), 1)]),
            ),
            (
                3,
                3,
                ratfun_from_reference(int(6), &[162, -90, 16, -1], &[p3(5), (int(4), 1)]),
            ),
        ]
    }

    #[test]
    fn full_table_3_3_3_matches_reference() {
        let spec = ProblemSpec::from_ints(3, 3, 3).unwrap();
        let table = GhostTable::build(&spec);
        assert_eq!(table.entry(0, 0), Some(&RatFun::one()));
        for (i, j, expected) in reference_table_333() {
            assert_eq!(
                table.entry(i, j),
                Some(&expected),
                "entry ({i}, {j}) mismatch"
            );
        }
        assert!(table.cancellations().is_empty());
    }

    #[test]
    fn mgf_3_3_3_closed_form() {
        let spec = ProblemSpec::from_ints(3, 3, 3).unwrap();
        let f = mgf(&spec);
        let expected =
            ratfun_from_reference(int(6), &[162, -90, 16, -1], &[(int(3), 5), (int(4), 1)]);
        assert_eq!(f, expected);
        assert_eq!(
            f.display_factored(),
            "6 * (162 - 90*t + 16*t^2 - t^3) / ((3 - t)^5 * (4 - t))"
        );
        assert!(f.value_at_zero().is_one());
    }

    #[test]
    fn ghost_indexing_matches_table_corner_row() {
        let spec = ProblemSpec::from_ints(3, 3, 3).unwrap();
        let table = GhostTable::build(&spec);
        for d in 0..=3u32 {
            assert_eq!(
                table.ghost(d).unwrap(),
                table.entry(3, 3 - d).unwrap(),
                "d = {d}"
            );
        }
        assert!(table.ghost(4).is_err());
        assert_eq!(table.ghost(0).unwrap(), table.mgf());
    }

    #[test]
    fn mgf_2_3_3_closed_form() {
        // F_{2,3,3} = (1 - t/9) / ((1 - 2t/9)(1 - t/6)^2), equivalently
        // 108 (9 - t) / ((9 - 2t)(6 - t)^2).
        let spec = ProblemSpec::from_ints(2, 3, 3).unwrap();
        let f = mgf(&spec);
        let mut denom = FactorSet::empty();
        denom.insert(s(9, 2), 1);
        denom.insert(int(6), 2);
        let expected = RatFun::new(Poly::new(vec![Scalar::one(), s(-1, 9)]), denom);
        assert_eq!(f, expected);
    }

    #[test]
    fn mgf_is_symmetric_in_m_and_n() {
        for (k, m, n) in [(2u32, 3i64, 4i64), (3, 3, 5), (2, 2, 7)] {
            let spec = ProblemSpec::from_ints(k, m, n).unwrap();
            assert_eq!(mgf(&spec), mgf(&spec.swapped()), "({k},{m},{n})");
        }
        // also with a rational side
        let spec = ProblemSpec::new(2, s(7, 2), int(4)).unwrap();
        assert_eq!(mgf(&spec), mgf(&spec.swapped()));
    }

    #[test]
    fn one_ghost_constant_term_is_inverse_size_sum() {
        // F^(1)_{k,m,n}(0) = 1/m + 1/(m-1) + ... + 1/(m-k+1).
        for (k, m, n) in [(3u32, 3i64, 3i64), (2, 5, 4), (4, 7, 6)] {
            let spec = ProblemSpec::from_ints(k, m, n).unwrap();
            let g1 = ghost_mgf(&spec, 1).unwrap();
            let mut expected = Scalar::zero();
            for j in 0..k {
                expected += &s(1, m - j as i64);
            }
            assert_eq!(g1.value_at_zero(), expected, "({k},{m},{n})");
        }
    }

    #[test]
    fn default_denominator_examples() {
        // (3,3,3): pole 3 with multiplicity 5 and pole 4 with multiplicity 1.
        let spec = ProblemSpec::from_ints(3, 3, 3).unwrap();
        let d = default_denominator(&spec);
        assert_eq!(d.total_multiplicity(), 6);
        assert_eq!(d.multiplicity_of(&int(3)), 5);
        assert_eq!(d.multiplicity_of(&int(4)), 1);

        // (2,3,3): poles 9/2, 6, 6.
        let spec = ProblemSpec::from_ints(2, 3, 3).unwrap();
        let d = default_denominator(&spec);
        assert_eq!(d.multiplicity_of(&s(9, 2)), 1);
        assert_eq!(d.multiplicity_of(&int(6)), 2);

        // (1,m,n): single pole mn.
        let spec = ProblemSpec::from_ints(1, 5, 7).unwrap();
        let d = default_denominator(&spec);
        assert_eq!(d.factors().len(), 1);
        assert_eq!(d.multiplicity_of(&int(35)), 1);
    }

    #[test]
    fn mgf_denominator_divides_default_denominator() {
        for (k, m, n) in [(2u32, 3i64, 3i64), (3, 3, 3), (3, 4, 5), (4, 4, 4)] {
            let spec = ProblemSpec::from_ints(k, m, n).unwrap();
            let f = mgf(&spec);
            let dd = default_denominator(&spec);
            assert!(
                f.denom().difference(&dd).is_empty(),
                "denominator of F({k},{m},{n}) not a sub-multiset of the default"
            );
        }
    }

    #[test]
    fn degree_law_numerator_vs_denominator() {
        // total denominator multiplicity - numerator degree = k
        for (k, m, n) in [
            (1u32, 4i64, 9i64),
            (2, 3, 3),
            (3, 3, 3),
            (4, 5, 6),
            (5, 5, 5),
        ] {
            let spec = ProblemSpec::from_ints(k, m, n).unwrap();
            let f = mgf(&spec);
            assert_eq!(f.degree_at_infinity(), Some(-(k as i64)), "({k},{m},{n})");
        }
    }

    #[test]
    fn rational_size_cancellation_case() {
        // (3, 3, 10/3): the generic denominator contains (1 - t/4) but the
        // true MGF is 280 (350 - 85 t + 6 t^2) / ((7 - 2t)(14 - 3t)(10 - 3t)^3):
        // the pole-4 factor cancels.
        let spec = ProblemSpec::new(3, int(3), s(10, 3)).unwrap();
        let table = GhostTable::build(&spec);
        let f = table.mgf();

        let expected = ratfun_from_reference(
            int(280),
            &[350, -85, 6],
            &[(s(7, 2), 1), (s(14, 3), 1), (s(10, 3), 3)],
        );
        assert_eq!(f, &expected);
        assert!(f.value_at_zero().is_one());

        // exactly one cancellation across the whole table: pole 4, order 1,
        // at the corner entry
        let recs = table.cancellations();
        assert_eq!(recs.len(), 1, "records: {recs:?}");
        assert_eq!((recs[0].i, recs[0].j), (3, 3));
        assert_eq!(recs[0].factors, vec![LinFactor::new(int(4), 1)]);

        // and the default denominator did predict the pole 4
        assert_eq!(default_denominator(&spec).multiplicity_of(&int(4)), 1);
    }

    #[test]
    fn negative_axis_bounds() {
        // For t < 0: (1 - t)^{-k} <= F(t) <= (1 - t/(mn))^{-k}: the cost is
        // between the max of k exponentials at rate 1 ... and stochastically
        // dominated comparisons pin the MGF between these envelopes.
        for (k, m, n) in [(2u32, 3i64, 3i64), (3, 3, 3), (3, 4, 6)] {
            let spec = ProblemSpec::from_ints(k, m, n).unwrap();
            let f = mgf(&spec);
            for t in [-1i64, -10, -100] {
                let t = int(t);
                let val = f.eval(&t).unwrap();
                let lower = (&Scalar::one() - &t).pow_u32(k).checked_recip().unwrap();
                let mn = int(m * n);
                let upper = (&Scalar::one() - &t.checked_div(&mn).unwrap())
                    .pow_u32(k)
                    .checked_recip()
                    .unwrap();
                assert!(lower <= val && val <= upper, "({k},{m},{n}) at t={t}");
            }
        }
    }

    #[test]
    fn all_entries_are_normalized() {
        for spec in [
            ProblemSpec::from_ints(3, 3, 3).unwrap(),
            ProblemSpec::from_ints(4, 5, 7).unwrap(),
            ProblemSpec::new(3, int(3), s(10, 3)).unwrap(),
        ] {
            let table = GhostTable::build(&spec);
            for i in 0..=spec.k() {
                for j in 0..=i {
                    assert!(
                        table.entry(i, j).unwrap().is_normalized(),
                        "entry ({i},{j}) of {spec} not normalized"
                    );
                }
            }
        }
    }

    #[test]
    fn table_serde_round_trip() {
        let spec = ProblemSpec::from_ints(2, 3, 3).unwrap();
        let table = GhostTable::build(&spec);
        let json = serde_json::to_string(&table).unwrap();
        let back: GhostTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
    }
}
