//! Seeded acceptance grid. Each criterion expands into a list of
//! [`VerificationReport`]s; every random draw comes from a ChaCha stream
//! keyed by the seed and the criterion, so runs are reproducible.

use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{format_rational_list, pow, rat, ratio, Rational};
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::{cycle_graph, cycle_rotations, WeightedGraph};
use crate::heat::HeatKernelTable;
use crate::intmat::IntMatrix;
use crate::lattice::{ball_points, enumerate_walks, lattice_pn, LatticeWeights};
use crate::torus::{torus_graph, torus_qn_closed_table, torus_spectrum, TorusSpec};
use crate::verify::{
    eigensolve_sym, rhs_eq1, verify_eq1, verify_eq2, verify_heat_laws, verify_quotient, verify_spectral_expansion,
    verify_trace, VerificationReport,
};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const CRITERIA: u32 = 10;

/// Independent random stream per (seed, purpose).
fn stream(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose);
    rng
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize, max_det: u32) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).expect("square");
        let det = a.det_abs();
        if !det.is_zero() && det <= max_det.into() {
            return a;
        }
    }
}

/// Nonzero rational in `[−4, 4]` with denominator at most 4.
fn random_weight(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.random_range(1..=4i64);
    loop {
        let p = rng.random_range(-4 * q..=4 * q);
        if p != 0 {
            return ratio(p, q);
        }
    }
}

/// The matrix grid with its three weight vectors each: `(a)` for
/// `1 ≤ |a| ≤ 6`, then 25 random `2×2` and 10 random `3×3` matrices with
/// entries in `[−3, 3]` and `1 ≤ |det A| ≤ 40`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub entries: Vec<(IntMatrix, Vec<Vec<Rational>>)>,
}

impl Grid {
    pub fn new(seed: u64) -> Self {
        let mut rng = stream(seed, 1);
        let mut matrices: Vec<IntMatrix> = (1..=6).flat_map(|a| [a, -a]).map(|a| IntMatrix::diagonal(&[a])).collect();
        matrices.extend((0..25).map(|_| random_matrix(&mut rng, 2, 40)));
        matrices.extend((0..10).map(|_| random_matrix(&mut rng, 3, 40)));
        let entries = matrices
            .into_iter()
            .map(|a| {
                let ws = (0..3).map(|_| (0..a.dim()).map(|_| random_weight(&mut rng)).collect()).collect();
                (a, ws)
            })
            .collect();
        Self { entries }
    }

    pub fn matrices(&self) -> impl Iterator<Item = &IntMatrix> {
        self.entries.iter().map(|(a, _)| a)
    }

    /// Entries with `|det A| ≤ bound`.
    pub fn with_det_at_most(&self, bound: u32) -> Vec<&(IntMatrix, Vec<Vec<Rational>>)> {
        self.entries.iter().filter(|(a, _)| a.det_abs() <= bound.into()).collect()
    }
}

fn positive(w: &[Rational]) -> LatticeWeights {
    LatticeWeights::new(w.iter().map(|v| v.abs()).collect()).expect("nonzero weights")
}

/// Random weighted graph: `1..=12` vertices, measures `p/q` with
/// `p ≤ 6, q ≤ 4`, edges with probability 0.35 and occasional self-weights.
pub fn random_graph(rng: &mut ChaCha8Rng) -> WeightedGraph {
    let n = rng.random_range(1..=12usize);
    let measures = (0..n).map(|_| ratio(rng.random_range(1..=6), rng.random_range(1..=4))).collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x..n {
            let p = if x == y { 0.1 } else { 0.35 };
            if rng.random_bool(p) {
                edges.push((x, y, ratio(rng.random_range(1..=5), rng.random_range(1..=4))));
            }
        }
    }
    WeightedGraph::from_edges((0..n).map(|i| i.to_string()).collect(), measures, &edges).expect("valid random graph")
}

pub fn random_graphs(seed: u64, count: usize) -> Vec<WeightedGraph> {
    let mut rng = stream(seed, 6);
    (0..count).map(|_| random_graph(&mut rng)).collect()
}

fn exact_report(identity: &str, params: String, lhs: &Rational, rhs: &Rational, start: Instant) -> VerificationReport {
    let abs_err = crate::arith::to_f64(&(lhs - rhs).abs());
    VerificationReport {
        identity: identity.into(),
        params,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        abs_err,
        rel_err: abs_err / crate::arith::to_f64(&rhs.abs()).max(1e-300),
        tol: 0.0,
        pass: lhs == rhs,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn count_report(
    identity: &str,
    params: String,
    mismatches: usize,
    checked: usize,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        identity: identity.into(),
        params,
        lhs: format!("{} of {checked} agree", checked - mismatches),
        rhs: format!("{checked} of {checked} agree"),
        abs_err: mismatches as f64,
        rel_err: mismatches as f64 / checked.max(1) as f64,
        tol: 0.0,
        pass: mismatches == 0,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn error_report(identity: &str, params: String, err: crate::Error) -> VerificationReport {
    VerificationReport {
        identity: identity.into(),
        params,
        lhs: format!("error: {err}"),
        rhs: String::new(),
        abs_err: f64::MAX,
        rel_err: f64::MAX,
        tol: 0.0,
        pass: false,
        ms: 0.0,
    }
}

fn settle(identity: &str, params: impl FnOnce() -> String, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| error_report(identity, params(), e))
}

fn eq1_grid(grid: &Grid, exec: Exec) -> Vec<VerificationReport> {
    let jobs: Vec<(&IntMatrix, &Vec<Rational>, u32)> =
        grid.entries.iter().flat_map(|(a, ws)| ws.iter().flat_map(move |w| (1..=10).map(move |n| (a, w, n)))).collect();
    exec.map(&jobs, |(a, w, n)| {
        settle("eq1", || format!("A={a} w={}", format_rational_list(w)), verify_eq1(a, w, *n, 1e-9))
    })
}

/// All `m ∈ Z_{≥0}^d` with `|m| ≤ total`.
pub fn exponent_vectors(d: usize, total: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in exponent_vectors(d - 1, total - first) {
            let mut m = vec![first];
            m.extend(rest);
            out.push(m);
        }
    }
    out
}

fn eq2_grid(grid: &Grid, exec: Exec) -> Vec<VerificationReport> {
    let jobs: Vec<(&IntMatrix, Vec<u32>)> = grid
        .matrices()
        .flat_map(|a| {
            let total = if a.dim() <= 2 { 8 } else { 5 };
            exponent_vectors(a.dim(), total).into_iter().map(move |m| (a, m))
        })
        .collect();
    exec.map(&jobs, |(a, m)| settle("eq2", || format!("A={a}"), verify_eq2(a, m, 1e-9)))
}

/// Sizes of runs of values whose consecutive gaps are at most `eps`.
pub fn cluster_multiplicities(sorted: &[f64], eps: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, v) in sorted.iter().enumerate() {
        if i > 0 && v - sorted[i - 1] <= eps {
            *out.last_mut().expect("nonempty") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

fn spectrum_check(a: &IntMatrix, w: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = TorusSpec::new(a.clone())?;
    let lw = positive(w);
    let closed = torus_spectrum(&spec, &lw)?;
    let numeric = eigensolve_sym(&torus_graph(&spec, &lw)?);
    let worst = closed.iter().zip(&numeric).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let same_clusters = cluster_multiplicities(&closed, 1e-8) == cluster_multiplicities(&numeric, 1e-8);
    Ok(VerificationReport {
        identity: "spectrum".into(),
        params: format!("A={a} w={}", format_rational_list(lw.weights())),
        lhs: format!("{:?}", cluster_multiplicities(&closed, 1e-8)),
        rhs: format!("{:?}", cluster_multiplicities(&numeric, 1e-8)),
        abs_err: worst,
        rel_err: worst,
        tol: 1e-8,
        pass: worst <= 1e-8 && same_clusters && closed.len() == numeric.len(),
        ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn spectrum_grid(grid: &Grid, exec: Exec) -> Vec<VerificationReport> {
    let jobs: Vec<(&IntMatrix, &Vec<Rational>)> =
        grid.with_det_at_most(60).into_iter().flat_map(|(a, ws)| ws.iter().map(move |w| (a, w))).collect();
    exec.map(&jobs, |(a, w)| settle("spectrum", || format!("A={a}"), spectrum_check(a, w)))
}

fn closed_form_check(a: &IntMatrix, w: &[Rational], steps: u32, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = TorusSpec::new(a.clone())?;
    let lw = LatticeWeights::new(w.to_vec())?;
    let table = HeatKernelTable::build_with(&torus_graph(&spec, &lw)?, steps, exec);
    let mut mismatches = 0;
    let mut checked = 0;
    for n in 1..=steps {
        let closed = torus_qn_closed_table(&spec, &lw, n, exec)?;
        for (x, row) in closed.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                checked += 1;
                if *v != table.q(n, x, y) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(count_report(
        "closed-form",
        format!("A={a} w={} n<={steps}", format_rational_list(w)),
        mismatches,
        checked,
        start,
    ))
}

fn closed_form_grid(grid: &Grid, seed: u64, exec: Exec) -> Vec<VerificationReport> {
    let mut rng = stream(seed, 4);
    let jobs: Vec<(&IntMatrix, Vec<Rational>)> = grid
        .with_det_at_most(20)
        .into_iter()
        .flat_map(|(a, _)| {
            (0..5).map(|_| (a, (0..a.dim()).map(|_| random_weight(&mut rng).abs()).collect())).collect::<Vec<_>>()
        })
        .collect();
    exec.map(&jobs, |(a, w)| settle("closed-form", || format!("A={a}"), closed_form_check(a, w, 12, Exec::Sequential)))
}

fn lattice_check(lw: &LatticeWeights) -> Result<Vec<VerificationReport>> {
    let d = lw.dim();
    let params = |n: u32| format!("d={d} w={} n={n}", format_rational_list(lw.weights()));
    let mut out = Vec::new();
    for n in 0..=6 {
        let start = Instant::now();
        let walks = enumerate_walks(lw, n);
        let ball = ball_points(&IntMatrix::identity(d), n)?;
        let mut mismatches = 0;
        for v in &ball {
            let expected = walks.get(v).cloned().unwrap_or_else(Rational::zero);
            if lattice_pn(lw, n, v)? != expected {
                mismatches += 1;
            }
        }
        // every walk endpoint must lie in the ball
        mismatches += walks.keys().filter(|v| crate::lattice::l1_norm(v) > n as i64).count();
        out.push(count_report("lattice-walks", params(n), mismatches, ball.len(), start));
    }
    for n in 0..=8 {
        let start = Instant::now();
        let mass = ball_points(&IntMatrix::identity(d), n)?
            .iter()
            .try_fold(Rational::zero(), |acc, v| lattice_pn(lw, n, v).map(|p| acc + p))?;
        out.push(exact_report("lattice-mass", params(n), &mass, &rat(1), start));
    }
    Ok(out)
}

fn lattice_grid(seed: u64, exec: Exec) -> Vec<VerificationReport> {
    let mut rng = stream(seed, 5);
    let weights: Vec<LatticeWeights> = (1..=3)
        .flat_map(|d| {
            let mut v = vec![LatticeWeights::unit(d)];
            v.extend((0..2).map(|_| positive(&(0..d).map(|_| random_weight(&mut rng)).collect::<Vec<_>>())));
            v
        })
        .collect();
    exec.map(&weights, |lw| {
        lattice_check(lw).unwrap_or_else(|e| vec![error_report("lattice-walks", format!("d={}", lw.dim()), e)])
    })
    .into_iter()
    .flatten()
    .collect()
}

fn trace_grid(graphs: &[WeightedGraph], exec: Exec) -> Vec<VerificationReport> {
    let jobs: Vec<(&WeightedGraph, u32)> = graphs.iter().flat_map(|g| (0..=10).map(move |n| (g, n))).collect();
    exec.map(&jobs, |(g, n)| verify_trace(g, *n, 1e-8))
}

fn heat_law_grid(graphs: &[WeightedGraph], exec: Exec) -> Vec<VerificationReport> {
    exec.map(graphs, |g| verify_heat_laws(g, 8))
}

fn quotient_grid(grid: &Grid, seed: u64, exec: Exec) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = Vec::new();
    for k in 1..=6 {
        out.push(settle(
            "quotient",
            || format!("C{}", 2 * k),
            verify_quotient(&cycle_graph(2 * k), &cycle_rotations(2 * k, k), 6),
        ));
    }
    for k in 1..=4 {
        out.push(settle(
            "quotient",
            || format!("C{}", 3 * k),
            verify_quotient(&cycle_graph(3 * k), &cycle_rotations(3 * k, k), 6),
        ));
    }
    let mut rng = stream(seed, 8);
    let mut small: Vec<&IntMatrix> = grid.with_det_at_most(10).into_iter().map(|(a, _)| a).collect();
    small.shuffle(&mut rng);
    small.truncate(10);
    let jobs: Vec<(&IntMatrix, LatticeWeights)> = small
        .into_iter()
        .map(|a| (a, positive(&(0..a.dim()).map(|_| random_weight(&mut rng)).collect::<Vec<_>>())))
        .collect();
    out.extend(exec.map(&jobs, |(a, lw)| settle("quotient", || format!("A={a}"), covering_check(a, lw))));
    out
}

fn covering_check(a: &IntMatrix, lw: &LatticeWeights) -> Result<VerificationReport> {
    let big = TorusSpec::new(a.scaled(2))?;
    let gamma = big.translation_subgroup(a)?;
    let mut r = verify_quotient(&torus_graph(&big, lw)?, &gamma, 6)?;
    r.params = format!("T_2A -> T_A, A={a} w={} n=6", format_rational_list(lw.weights()));
    Ok(r)
}

fn expansion_grid(grid: &Grid, exec: Exec) -> Vec<VerificationReport> {
    let jobs: Vec<(&IntMatrix, &Vec<Rational>, u32)> =
        grid.with_det_at_most(20).into_iter().flat_map(|(a, ws)| (0..=8).map(move |n| (a, &ws[0], n))).collect();
    exec.map(&jobs, |(a, w, n)| {
        let w: Vec<Rational> = w.iter().map(|v| v.abs()).collect();
        settle("expansion", || format!("A={a}"), verify_spectral_expansion(a, &w, *n, 1e-9))
    })
}

/// Number of `n`-step walks with unit steps `±e_i` from the origin that end
/// in `A·Z^d`, by dynamic programming on the torus.
pub fn closed_unit_walks(spec: &TorusSpec, n: u32) -> num_bigint::BigInt {
    let d = spec.dim();
    let size = spec.len();
    let mut counts = vec![num_bigint::BigInt::zero(); size];
    counts[spec.index_of(&vec![0; d])] = 1.into();
    let moves: Vec<Vec<usize>> = spec
        .reps()
        .iter()
        .map(|x| {
            let mut targets = Vec::with_capacity(2 * d);
            for i in 0..d {
                for s in [1, -1] {
                    let mut y = x.clone();
                    y[i] += s;
                    targets.push(spec.index_of(&y));
                }
            }
            targets
        })
        .collect();
    for _ in 0..n {
        let mut next = vec![num_bigint::BigInt::zero(); size];
        for (x, c) in counts.iter().enumerate() {
            if !c.is_zero() {
                for &y in &moves[x] {
                    next[y] += c;
                }
            }
        }
        counts = next;
    }
    counts[spec.index_of(&vec![0; d])].clone()
}

/// Unimodular `A`: the weighted sum collapses to `(Σ w_i)^n`.
pub fn multinomial_cases(grid: &Grid) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for (a, ws) in &grid.entries {
        if a.det_abs() != 1.into() {
            continue;
        }
        for w in ws {
            let total = w.iter().fold(Rational::zero(), |acc, v| acc + v);
            for n in 1..=10 {
                let start = Instant::now();
                let params = format!("A={a} w={} n={n}", format_rational_list(w));
                out.push(match rhs_eq1(a, w, n) {
                    Ok(rhs) => exact_report("multinomial", params, &rhs, &pow(&total, n), start),
                    Err(e) => error_report("multinomial", params, e),
                });
            }
        }
    }
    out
}

/// `w = (1, …, 1)`: the right-hand side equals `|det A|/2^n` times the
/// number of closed unit-step walks on `T_A`.
pub fn unweighted_cases(grid: &Grid) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for a in grid.matrices() {
        let ones = vec![rat(1); a.dim()];
        let Ok(spec) = TorusSpec::new(a.clone()) else { continue };
        for n in 1..=10 {
            let start = Instant::now();
            let params = format!("A={a} n={n}");
            let walks = Rational::from_integer(closed_unit_walks(&spec, n) * a.det_abs()) / pow(&rat(2), n);
            out.push(match rhs_eq1(a, &ones, n) {
                Ok(rhs) => exact_report("unweighted", params, &rhs, &walks, start),
                Err(e) => error_report("unweighted", params, e),
            });
        }
        for n in 1..=10 {
            out.push(settle("unweighted", || format!("A={a}"), verify_eq1(a, &ones, n, 1e-9)));
        }
    }
    out
}

/// Short description of a criterion.
pub fn criterion_name(k: u32) -> &'static str {
    match k {
        1 => "weighted cosine power sums",
        2 => "cosine monomial sums",
        3 => "torus spectrum",
        4 => "closed-form torus heat kernel",
        5 => "lattice closed form and mass",
        6 => "trace formula",
        7 => "heat kernel laws",
        8 => "quotient transfer",
        9 => "spectral expansion",
        10 => "unimodular and unweighted special cases",
        _ => "unknown",
    }
}

/// Runs one criterion. Reports carry wall-clock `ms`; see
/// [`VerificationReport::without_timing`].
pub fn run_criterion(k: u32, seed: u64, exec: Exec) -> Vec<VerificationReport> {
    let grid = || Grid::new(seed);
    match k {
        1 => eq1_grid(&grid(), exec),
        2 => eq2_grid(&grid(), exec),
        3 => spectrum_grid(&grid(), exec),
        4 => closed_form_grid(&grid(), seed, exec),
        5 => lattice_grid(seed, exec),
        6 => trace_grid(&random_graphs(seed, 50), exec),
        7 => heat_law_grid(&random_graphs(seed, 50), exec),
        8 => quotient_grid(&grid(), seed, exec),
        9 => expansion_grid(&grid(), exec),
        10 => {
            let g = grid();
            let mut out = multinomial_cases(&g);
            out.extend(unweighted_cases(&g));
            out
        }
        _ => Vec::new(),
    }
}

pub fn run_all(seed: u64, exec: Exec) -> Vec<(u32, Vec<VerificationReport>)> {
    (1..=CRITERIA).map(|k| (k, run_criterion(k, seed, exec))).collect()
}
