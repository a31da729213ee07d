//! Independent Monte Carlo validation of the exact engine.
//!
//! Nothing here touches the symbolic machinery: instances are sampled with
//! i.i.d. mean-1 exponential edge costs, solved exactly per instance with a
//! successive-shortest-path matching solver (itself validated against a
//! brute-force enumerator), and the resulting statistics are compared
//! against the engine's exact means, variances and CDFs by the callers.
//!
//! Reproducibility contract: results depend only on `(spec, samples, seed)`.
//! The sample space is split into fixed-size chunks, each driven by its own
//! counter-derived RNG stream, and chunks are merged in index order — so the
//! output is bit-identical regardless of how many worker threads ran.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distengine::{CdfEvaluator, DensityModel};
use crate::ghostrec::ProblemSpec;
use crate::{Error, Result};

/// A dense matrix of nonnegative, finite edge costs (row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    /// Builds a matrix from explicit rows; entries must be finite and `>= 0`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Domain("cost matrix must be nonempty".into()));
        }
        let mut data = Vec::with_capacity(m * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::Domain("ragged cost matrix".into()));
            }
            for &c in row {
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::Domain(format!("invalid edge cost {c}")));
                }
                data.push(c);
            }
        }
        Ok(CostMatrix {
            rows: m,
            cols: n,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().copied()
    }
}

/// Draws an `m` by `n` matrix of i.i.d. mean-1 exponential costs as
/// `-ln(U)`, redrawing on the (measure-zero but representable) event `U = 0`
/// so every entry is strictly positive and finite.
pub fn sample_costs<R: Rng>(m: usize, n: usize, rng: &mut R) -> CostMatrix {
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        let u = loop {
            let u: f64 = rng.random();
            if u > 0.0 {
                break u;
            }
        };
        data.push(-u.ln());
    }
    CostMatrix {
        rows: m,
        cols: n,
        data,
    }
}

/// An optimal `k`-matching together with the optimal value of every prefix
/// size (the successive-shortest-path solve yields all of them at once).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingResult {
    /// `prefix_costs[j-1]` is the minimum cost of a `j`-matching.
    pub prefix_costs: Vec<f64>,
    /// The optimal `k`-matching, sorted by row index.
    pub matching: Vec<(usize, usize)>,
}

impl MatchingResult {
    pub fn value(&self) -> f64 {
        *self.prefix_costs.last().expect("k >= 1")
    }
}

/// Exact minimum-cost `k`-matching by `k` successive shortest augmenting
/// paths with vertex potentials (reduced costs stay nonnegative, so plain
/// Dijkstra suffices). After the `j`-th augmentation the matching is an
/// optimal `j`-matching, which is why the whole prefix vector comes out of
/// one solve. The reported cost re-sums the chosen original entries in row
/// order, making values bit-comparable with the brute-force enumerator.
pub fn min_cost_k_matching(c: &CostMatrix, k: usize) -> Result<MatchingResult> {
    let (m, n) = (c.rows(), c.cols());
    if k == 0 || k > m.min(n) {
        return Err(Error::Domain(format!(
            "k = {k} out of range for a {m} by {n} instance"
        )));
    }
    // Vertex layout: 0 = source, 1..=m rows, m+1..=m+n columns, m+n+1 = sink.
    let vcount = m + n + 2;
    let source = 0usize;
    let sink = m + n + 1;
    let mut potential = vec![0f64; vcount];
    let mut row_match: Vec<Option<usize>> = vec![None; m];
    let mut col_match: Vec<Option<usize>> = vec![None; n];
    let mut prefix_costs = Vec::with_capacity(k);

    for _ in 0..k {
        let mut dist = vec![f64::INFINITY; vcount];
        let mut parent = vec![usize::MAX; vcount];
        let mut settled = vec![false; vcount];
        dist[source] = 0.0;
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for v in 0..vcount {
                if !settled[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX || u == sink {
                break;
            }
            settled[u] = true;
            if u == source {
                for (i, assignment) in row_match.iter().enumerate() {
                    if assignment.is_none() {
                        let v = 1 + i;
                        let nd = dist[u] + potential[u] - potential[v];
                        if nd < dist[v] {
                            dist[v] = nd;
                            parent[v] = u;
                        }
                    }
                }
            } else if u <= m {
                let i = u - 1;
                for j in 0..n {
                    if row_match[i] != Some(j) {
                        let v = m + 1 + j;
                        let nd = dist[u] + c.at(i, j) + potential[u] - potential[v];
                        if nd < dist[v] {
                            dist[v] = nd;
                            parent[v] = u;
                        }
                    }
                }
            } else {
                let j = u - m - 1;
                match col_match[j] {
                    Some(i) => {
                        let v = 1 + i;
                        let nd = dist[u] - c.at(i, j) + potential[u] - potential[v];
                        if nd < dist[v] {
                            dist[v] = nd;
                            parent[v] = u;
                        }
                    }
                    None => {
                        let nd = dist[u] + potential[u] - potential[sink];
                        if nd < dist[sink] {
                            dist[sink] = nd;
                            parent[sink] = u;
                        }
                    }
                }
            }
        }
        if !dist[sink].is_finite() {
            return Err(Error::Domain(
                "no augmenting path (matching saturated early)".into(),
            ));
        }
        let cap = dist[sink];
        for v in 0..vcount {
            potential[v] += dist[v].min(cap);
        }
        // Flip the path: parents alternate column <- row <- (source|column).
        let mut v = parent[sink];
        while v != source {
            let j = v - m - 1;
            let row_vertex = parent[v];
            let i = row_vertex - 1;
            row_match[i] = Some(j);
            col_match[j] = Some(i);
            v = parent[row_vertex];
        }
        let mut total = 0.0;
        for (i, jm) in row_match.iter().enumerate() {
            if let Some(j) = jm {
                total += c.at(i, *j);
            }
        }
        prefix_costs.push(total);
    }

    let matching = row_match
        .iter()
        .enumerate()
        .filter_map(|(i, jm)| jm.map(|j| (i, j)))
        .collect();
    Ok(MatchingResult {
        prefix_costs,
        matching,
    })
}

/// Exhaustive minimum over all `k`-matchings (row subsets, column subsets,
/// and permutations), summing each candidate in row order. Refuses instances
/// with more than 10⁷ matchings.
pub fn brute_force_min(c: &CostMatrix, k: usize) -> Result<f64> {
    let (m, n) = (c.rows(), c.cols());
    if k == 0 || k > m.min(n) {
        return Err(Error::Domain(format!(
            "k = {k} out of range for a {m} by {n} instance"
        )));
    }
    let count = matching_count(m, n, k);
    if count > 10_000_000.0 {
        return Err(Error::Domain(format!(
            "instance has ~{count:.0} k-matchings, beyond the enumeration budget"
        )));
    }

    let mut best = f64::INFINITY;
    let mut rows_sel = Vec::with_capacity(k);
    choose_rows(c, k, 0, &mut rows_sel, &mut best);
    Ok(best)
}

fn matching_count(m: usize, n: usize, k: usize) -> f64 {
    let choose = |a: usize, b: usize| -> f64 {
        let mut v = 1f64;
        for i in 0..b {
            v = v * (a - i) as f64 / (i + 1) as f64;
        }
        v
    };
    let mut perms = 1f64;
    for i in 0..k {
        perms *= (k - i) as f64;
    }
    choose(m, k) * choose(n, k) * perms
}

fn choose_rows(c: &CostMatrix, k: usize, start: usize, sel: &mut Vec<usize>, best: &mut f64) {
    if sel.len() == k {
        let mut cols_sel = Vec::with_capacity(k);
        choose_cols_and_permute(c, k, 0, sel, &mut cols_sel, best);
        return;
    }
    for i in start..c.rows() {
        sel.push(i);
        choose_rows(c, k, i + 1, sel, best);
        sel.pop();
    }
}

fn choose_cols_and_permute(
    c: &CostMatrix,
    k: usize,
    start: usize,
    rows: &[usize],
    cols: &mut Vec<usize>,
    best: &mut f64,
) {
    if cols.len() == k {
        let mut used = vec![false; k];
        let mut assigned = vec![0usize; k];
        permute(c, rows, cols, 0, &mut used, &mut assigned, best);
        return;
    }
    for j in start..c.cols() {
        cols.push(j);
        choose_cols_and_permute(c, k, j + 1, rows, cols, best);
        cols.pop();
    }
}

fn permute(
    c: &CostMatrix,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    used: &mut [bool],
    assigned: &mut [usize],
    best: &mut f64,
) {
    if depth == rows.len() {
        // Sum in row order: rows are ascending, so this matches the solver's
        // final summation order bit for bit.
        let mut total = 0.0;
        for (idx, &r) in rows.iter().enumerate() {
            total += c.at(r, cols[assigned[idx]]);
        }
        if total < *best {
            *best = total;
        }
        return;
    }
    for slot in 0..cols.len() {
        if !used[slot] {
            used[slot] = true;
            assigned[depth] = slot;
            permute(c, rows, cols, depth + 1, used, assigned, best);
            used[slot] = false;
        }
    }
}

const CHUNK: usize = 1 << 14;

/// Minimum `k`-matching costs for `samples` independent instances, in a
/// deterministic order fixed by `(spec, samples, seed)` alone.
pub fn simulate_values(spec: &ProblemSpec, samples: usize, seed: u64) -> Result<Vec<f64>> {
    let (m, n) = integer_sides(spec)?;
    let k = spec.k() as usize;
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let mut values = vec![0f64; samples];

    let chunk_count = samples.div_ceil(CHUNK);
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(chunk_count);

    // Hand each worker a disjoint set of chunks (round-robin by index);
    // chunk `id` always uses RNG stream `id`, so the layout of workers is
    // irrelevant to the output.
    let mut per_worker: Vec<Vec<(usize, &mut [f64])>> = Vec::with_capacity(threads);
    per_worker.resize_with(threads, Vec::new);
    for (id, slice) in values.chunks_mut(CHUNK).enumerate() {
        per_worker[id % threads].push((id, slice));
    }

    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::with_capacity(per_worker.len());
        for work in per_worker {
            handles.push(scope.spawn(move || -> Result<()> {
                for (id, slice) in work {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(id as u64);
                    for v in slice.iter_mut() {
                        let instance = sample_costs(m as usize, n as usize, &mut rng);
                        *v = min_cost_k_matching(&instance, k)?.value();
                    }
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join().expect("simulation worker panicked")?;
        }
        Ok(())
    })?;

    Ok(values)
}

fn integer_sides(spec: &ProblemSpec) -> Result<(u32, u32)> {
    spec.as_integer_sides().ok_or_else(|| {
        Error::InvalidSpec(format!(
            "simulation needs integer sides with k <= min(m, n), got {spec}"
        ))
    })
}

/// Summary statistics of a simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// `histogram_edges` has one more entry than `histogram_counts`; values
    /// beyond the last edge land in the last bin.
    pub histogram_edges: Vec<f64>,
    pub histogram_counts: Vec<u64>,
    /// Empirical CDF (fraction of samples `<= x`) at the probe points.
    pub empirical_cdf_at: Vec<(f64, f64)>,
}

const HISTOGRAM_BINS: usize = 64;

/// Runs the simulation and reduces it to summary statistics; reproducible
/// from `(spec, samples, seed)`.
pub fn monte_carlo(
    spec: &ProblemSpec,
    samples: usize,
    seed: u64,
    cdf_probe_points: &[f64],
) -> Result<SimResult> {
    let (m, n) = integer_sides(spec)?;
    let values = simulate_values(spec, samples, seed)?;

    let mut sum = 0.0;
    for &v in &values {
        sum += v;
    }
    let mean = sum / samples as f64;
    let mut sq = 0.0;
    for &v in &values {
        sq += (v - mean) * (v - mean);
    }
    let variance = if samples > 1 {
        sq / (samples - 1) as f64
    } else {
        0.0
    };

    let x_max = 5.0 * mean.max(f64::MIN_POSITIVE);
    let mut histogram_edges = Vec::with_capacity(HISTOGRAM_BINS + 1);
    for i in 0..=HISTOGRAM_BINS {
        histogram_edges.push(x_max * i as f64 / HISTOGRAM_BINS as f64);
    }
    let mut histogram_counts = vec![0u64; HISTOGRAM_BINS];
    for &v in &values {
        let bin = ((v / x_max) * HISTOGRAM_BINS as f64).floor() as usize;
        histogram_counts[bin.min(HISTOGRAM_BINS - 1)] += 1;
    }

    let empirical_cdf_at = cdf_probe_points
        .iter()
        .map(|&x| {
            let count = values.iter().filter(|&&v| v <= x).count();
            (x, count as f64 / samples as f64)
        })
        .collect();

    Ok(SimResult {
        k: spec.k(),
        m,
        n,
        samples,
        seed,
        mean,
        variance,
        histogram_edges,
        histogram_counts,
        empirical_cdf_at,
    })
}

/// Kolmogorov–Smirnov statistic of `values` against an exact density model:
/// `sup_x |F_emp(x) - F(x)|`, with the exact CDF evaluated through the
/// fixed-precision batched evaluator.
pub fn ks_statistic(values: &[f64], model: &DensityModel) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let evaluator = CdfEvaluator::new(model, 128);
    let n = sorted.len() as f64;
    let mut d = 0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = evaluator.eval_f64(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}
