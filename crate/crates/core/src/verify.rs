//! Checks of the weighted trigonometric sum identities, the discrete trace
//! formula, quotient transfer, and the spectral expansion of the torus heat
//! kernel.
//!
//! Cosine sides are evaluated in `f64` with a fixed (sorted) summation
//! order; combinatorial sides are exact rationals, rounded only when the two
//! sides are compared.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{cos2pi, pow, rat, to_f64, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::graph::{GroupAction, WeightedGraph};
use crate::heat::{heat_trace, HeatKernelTable};
use crate::intmat::IntMatrix;
use crate::lattice::{abs_vec, ball_points, compositions, multinomial_vec, HalfInt, LatticeWeights, WalkSum};
use crate::torus::{character, torus_eigenvalue, torus_graph, TorusSpec};

/// Absolute floor applied to every tolerance.
pub const ABS_FLOOR: f64 = 1e-12;

/// Outcome of a single identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub ms: f64,
}

impl VerificationReport {
    /// Float-vs-value comparison: passes when
    /// `abs_err ≤ max(tol·scale, ABS_FLOOR)`.
    #[allow(clippy::too_many_arguments)]
    fn compare(
        identity: &str,
        params: String,
        lhs: String,
        rhs: String,
        abs_err: f64,
        scale: f64,
        tol: f64,
        start: Instant,
    ) -> Self {
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        let pass = abs_err.is_finite() && abs_err <= (tol * scale).max(ABS_FLOOR);
        Self {
            identity: identity.to_string(),
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            pass,
            ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Exact comparison, `tol = 0`.
    fn exact(identity: &str, params: String, lhs: &Rational, rhs: &Rational, start: Instant) -> Self {
        let diff = to_f64(&(lhs - rhs).abs());
        let scale = to_f64(&rhs.abs()).max(ABS_FLOOR);
        Self {
            identity: identity.to_string(),
            params,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            abs_err: diff,
            rel_err: diff / scale,
            tol: 0.0,
            pass: lhs == rhs,
            ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Drops timing so that repeated runs serialize identically.
    pub fn without_timing(mut self) -> Self {
        self.ms = 0.0;
        self
    }
}

fn float(x: f64) -> String {
    format!("{x}")
}

fn params_aw(a: &IntMatrix, w: &[Rational], n: u32) -> String {
    format!("A={a} w={} n={n}", crate::arith::format_rational_list(w))
}

/// Eigenvalues of `−Δ`, ascending.
///
/// `−Δ` is self-adjoint for the measure-weighted inner product, so
/// `S = D^{1/2}·L·D^{−1/2}` is symmetric with `S_xy = −w_xy/√(m_x m_y)` and
/// the same spectrum. `S` is diagonalized by cyclic Jacobi rotations.
pub fn eigensolve_sym(g: &WeightedGraph) -> Vec<f64> {
    let n = g.len();
    let m: Vec<f64> = g.measures().iter().map(to_f64).collect();
    let mut s = vec![vec![0.0; n]; n];
    for x in 0..n {
        let mut diag = 0.0;
        for (y, w) in g.neighbors(x) {
            if *y != x {
                let w = to_f64(w);
                diag += w;
                s[x][*y] = -w / (m[x] * m[*y]).sqrt();
            }
        }
        s[x][x] = diag / m[x];
    }
    let mut eig = jacobi_eigenvalues(s);
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi sweeps, until the
/// off-diagonal Frobenius norm drops below `1e-13·max(1, ‖S‖_F)`.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    let frobenius = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let threshold = 1e-13 * frobenius.max(1.0);
    let off = |a: &Vec<Vec<f64>>| {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p][q] * a[p][q];
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// `Σ_{ξ∈T_A*} ⟨w, cos 2πξ⟩^n`.
pub fn lhs_eq1(a: &IntMatrix, w: &[Rational], n: u32) -> Result<f64> {
    check_dim(a, w.len())?;
    let spec = TorusSpec::new(a.clone())?;
    let wf: Vec<f64> = w.iter().map(to_f64).collect();
    Ok(spec
        .dual()
        .iter()
        .map(|xi| {
            let dot: f64 = wf.iter().zip(&xi.xi).map(|(wi, t)| wi * cos2pi(t)).sum();
            dot.powi(n as i32)
        })
        .sum())
}

fn check_dim(a: &IntMatrix, got: usize) -> Result<()> {
    if a.dim() != got {
        Err(Error::DimensionMismatch { expected: a.dim(), got })
    } else {
        Ok(())
    }
}

fn require_n_positive(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::Precondition("the identity is stated for n >= 1".into()))
    } else {
        Ok(())
    }
}

fn det_rational(a: &IntMatrix) -> Rational {
    Rational::from_integer(a.det_abs())
}

/// `|det A|/2^n · Σ_{x∈A·Z^d} Σ_{y∈P((n−|x|)/2, d)} n!/((abs x + y)!·y!)·w^{abs x + 2y}`,
/// exact for any rational `w`.
pub fn rhs_eq1(a: &IntMatrix, w: &[Rational], n: u32) -> Result<Rational> {
    check_dim(a, w.len())?;
    require_n_positive(n)?;
    let walks = WalkSum::new(w, n);
    let sum = ball_points(a, n)?.iter().fold(Rational::zero(), |acc, x| acc + walks.eval(n, &abs_vec(x)));
    Ok(sum * det_rational(a) / pow(&rat(2), n))
}

/// The right-hand side of the weighted sum identity as a polynomial in `w`.
pub fn rhs_eq1_poly(a: &IntMatrix, n: u32) -> Result<MultiPoly> {
    require_n_positive(n)?;
    let d = a.dim();
    let scale = det_rational(a) / pow(&rat(2), n);
    let mut poly = MultiPoly::zero(d);
    for x in ball_points(a, n)? {
        let ax = abs_vec(&x);
        let len: i64 = ax.iter().map(|&v| v as i64).sum();
        for y in compositions(HalfInt::halve(n as i64 - len), d) {
            let c = Rational::from_integer(multinomial_vec(n, &ax, &y)?) * &scale;
            let e: Vec<u32> = ax.iter().zip(&y).map(|(a, y)| a + 2 * y).collect();
            poly.add_term(&e, c)?;
        }
    }
    Ok(poly)
}

pub fn verify_eq1(a: &IntMatrix, w: &[Rational], n: u32, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let rhs = rhs_eq1(a, w, n)?;
    let lhs = lhs_eq1(a, w, n)?;
    let rhs_f = to_f64(&rhs);
    let abs_sum: f64 = w.iter().map(|v| to_f64(&v.abs())).sum();
    let scale = a.det_abs().to_f64().unwrap_or(f64::INFINITY) * abs_sum.powi(n as i32);
    Ok(VerificationReport::compare(
        "eq1",
        params_aw(a, w, n),
        float(lhs),
        rhs.to_string(),
        (lhs - rhs_f).abs(),
        scale,
        tol,
        start,
    ))
}

/// `Σ_{ξ∈T_A*} Π_i cos(2πξ_i)^{m_i}`.
pub fn lhs_eq2(a: &IntMatrix, m: &[u32]) -> Result<f64> {
    check_dim(a, m.len())?;
    let spec = TorusSpec::new(a.clone())?;
    Ok(spec.dual().iter().map(|xi| xi.xi.iter().zip(m).map(|(t, &k)| cos2pi(t).powi(k as i32)).product::<f64>()).sum())
}

/// `|det A|/2^{|m|} · Σ_{x∈A·Z^d, y≥0, abs x + 2y = m} m!/((abs x + y)!·y!)`.
pub fn rhs_eq2(a: &IntMatrix, m: &[u32]) -> Result<Rational> {
    check_dim(a, m.len())?;
    let total: u32 = m.iter().sum();
    let mut sum = num_bigint::BigInt::zero();
    for x in ball_points(a, total)? {
        let ax = abs_vec(&x);
        // y = (m − abs x)/2 must be a nonnegative integer vector
        let y: Option<Vec<u32>> =
            ax.iter().zip(m).map(|(&a, &mi)| (a <= mi && (mi - a) % 2 == 0).then(|| (mi - a) / 2)).collect();
        let Some(y) = y else { continue };
        let mut term = crate::arith::factorial(0);
        for (i, &mi) in m.iter().enumerate() {
            term *= multinomial_vec(mi, &[ax[i]], &[y[i]])?;
        }
        sum += term;
    }
    Ok(Rational::from_integer(sum) * det_rational(a) / pow(&rat(2), total))
}

pub fn verify_eq2(a: &IntMatrix, m: &[u32], tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let rhs = rhs_eq2(a, m)?;
    let lhs = lhs_eq2(a, m)?;
    let scale = a.det_abs().to_f64().unwrap_or(f64::INFINITY);
    Ok(VerificationReport::compare(
        "eq2",
        format!("A={a} m={}", m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        float(lhs),
        rhs.to_string(),
        (lhs - to_f64(&rhs)).abs(),
        scale,
        tol,
        start,
    ))
}

/// `Σ_i (1 − μ_i)^n` from the numerical spectrum against the exact
/// `Σ_x q_n(x, x)·m_x`.
pub fn verify_trace(g: &WeightedGraph, n: u32, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let eig = eigensolve_sym(g);
    let lhs: f64 = eig.iter().map(|mu| (1.0 - mu).powi(n as i32)).sum();
    let scale: f64 = eig.iter().map(|mu| (1.0 - mu).abs().powi(n as i32)).sum();
    let rhs = heat_trace(g, n);
    VerificationReport::compare(
        "trace",
        format!("|V|={} n={n}", g.len()),
        float(lhs),
        rhs.to_string(),
        (lhs - to_f64(&rhs)).abs(),
        scale,
        tol,
        start,
    )
}

/// Exact check of `p_k^Q([x], [y]) = Σ_g p_k^G(x, g·y)` and the `q_k`
/// analogue for every orbit pair and every `1 ≤ k ≤ n`.
pub fn verify_quotient(g: &WeightedGraph, gamma: &GroupAction, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if !g.is_normalized() && !gamma.is_free() {
        return Err(Error::Hypothesis("graph is not normalized and the action is not free".into()));
    }
    let (q, _) = g.quotient(gamma)?;
    let reps: Vec<usize> = gamma.orbits().iter().map(|o| o[0]).collect();
    let tg = HeatKernelTable::build(g, n);
    let tq = HeatKernelTable::build(&q, n);
    // totals summarize a clean run; the worst pair is shown on failure
    let mut worst: Option<(Rational, Rational)> = None;
    let mut worst_gap = Rational::zero();
    let mut totals = (Rational::zero(), Rational::zero());
    for k in 1..=n {
        for (a, &x) in reps.iter().enumerate() {
            for (b, &y) in reps.iter().enumerate() {
                let pg = gamma.elements().iter().fold(Rational::zero(), |acc, h| acc + tg.p(k, x, h[y]));
                let qg = gamma.elements().iter().fold(Rational::zero(), |acc, h| acc + tg.q(k, x, h[y]));
                for (lhs, rhs) in [(tq.p(k, a, b).clone(), pg), (tq.q(k, a, b), qg)] {
                    let gap = (&lhs - &rhs).abs();
                    totals.0 += &lhs;
                    totals.1 += &rhs;
                    if gap > worst_gap {
                        worst_gap = gap;
                        worst = Some((lhs, rhs));
                    }
                }
            }
        }
    }
    let (lhs, rhs) = worst.unwrap_or(totals);
    let mut report = VerificationReport::exact(
        "quotient",
        format!("|V|={} |Γ|={} n={n}", g.len(), gamma.order()),
        &lhs,
        &rhs,
        start,
    );
    report.pass = worst_gap.is_zero();
    Ok(report)
}

/// Compares the exact torus `q_n` table against
/// `(1/(|det A|·σ))·Σ_ξ (1 − μ_ξ)^n·f_ξ(x)·conj(f_ξ(y))` on all pairs.
pub fn verify_spectral_expansion(a: &IntMatrix, w: &[Rational], n: u32, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    check_dim(a, w.len())?;
    let spec = TorusSpec::new(a.clone())?;
    let lw = LatticeWeights::new(w.to_vec())?;
    let g = torus_graph(&spec, &lw)?;
    let table = HeatKernelTable::build(&g, n);
    let sigma = to_f64(lw.sigma());
    let norm = spec.len() as f64 * sigma;
    let decay = spec
        .dual()
        .iter()
        .map(|xi| torus_eigenvalue(xi, &lw).map(|mu| (1.0 - mu).powi(n as i32)))
        .collect::<Result<Vec<_>>>()?;
    let chars: Vec<Vec<Complex64>> =
        spec.dual().iter().map(|xi| spec.reps().iter().map(|x| character(xi, x)).collect()).collect();
    let mut worst = (0.0f64, Complex64::zero(), Rational::zero());
    for x in 0..spec.len() {
        for y in 0..spec.len() {
            let sum: Complex64 = (0..spec.len()).map(|k| chars[k][x] * chars[k][y].conj() * decay[k]).sum();
            let approx = sum / norm;
            let exact = table.q(n, x, y);
            let err = (approx - Complex64::new(to_f64(&exact), 0.0)).norm();
            if err >= worst.0 {
                worst = (err, approx, exact);
            }
        }
    }
    let (err, approx, exact) = worst;
    Ok(VerificationReport::compare(
        "expansion",
        params_aw(a, w, n),
        float(approx.re),
        exact.to_string(),
        err,
        1.0 / sigma,
        tol,
        start,
    ))
}

/// The `q_n = p_n/m` identity, symmetry and semigroup law, checked exactly on
/// every pair and every split `a + b ≤ n`.
pub fn verify_heat_laws(g: &WeightedGraph, n: u32) -> VerificationReport {
    let start = Instant::now();
    let t = HeatKernelTable::build(g, n);
    let size = g.len();
    let mut failures = 0usize;
    for k in 0..=n {
        for x in 0..size {
            for y in 0..size {
                if t.q(k, x, y) != t.q(k, y, x) || t.q(k, x, y) != t.p(k, x, y) / g.measure(y) {
                    failures += 1;
                }
            }
        }
    }
    for a in 0..=n {
        for b in 0..=n - a {
            let qa = t.q_matrix(a);
            let qb = t.q_matrix(b);
            for x in 0..size {
                for y in 0..size {
                    let conv = (0..size).fold(Rational::zero(), |acc, z| acc + &qa[x][z] * &qb[z][y] * g.measure(z));
                    if conv != t.q(a + b, x, y) {
                        failures += 1;
                    }
                }
            }
        }
    }
    let mut r = VerificationReport::exact(
        "heat-laws",
        format!("|V|={size} n={n}"),
        &rat(failures as i64),
        &Rational::zero(),
        start,
    );
    r.pass = failures == 0;
    r
}

/// Whether a graph's normalization allows the quotient transfer.
pub fn quotient_hypothesis_holds(g: &WeightedGraph, gamma: &GroupAction) -> bool {
    g.is_normalized() || gamma.is_free()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::graph::{cycle_graph, cycle_rotations};

    fn m(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    #[test]
    fn eigensolve_examples() {
        let spec = TorusSpec::new(m("2")).unwrap();
        let g = torus_graph(&spec, &LatticeWeights::unit(1)).unwrap();
        let e = eigensolve_sym(&g);
        assert!((e[0]).abs() < 1e-14 && (e[1] - 2.0).abs() < 1e-14);
        let single = WeightedGraph::from_edges(vec!["v".into()], vec![rat(3)], &[(0, 0, rat(1))]).unwrap();
        assert_eq!(eigensolve_sym(&single), vec![0.0]);
        let c = eigensolve_sym(&cycle_graph(6));
        let expect = [0.0, 0.5, 0.5, 1.5, 1.5, 2.0];
        for (a, b) in c.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn eq1_examples() {
        let a = m("2");
        assert_eq!(lhs_eq1(&a, &[rat(3)], 2).unwrap(), 18.0);
        assert_eq!(rhs_eq1(&a, &[rat(3)], 2).unwrap(), rat(18));
        assert!(lhs_eq1(&a, &[ratio(7, 3)], 5).unwrap().abs() < 1e-12);
        assert_eq!(rhs_eq1(&a, &[rat(1)], 4).unwrap(), rat(2));
        assert_eq!(lhs_eq1(&IntMatrix::identity(2), &[rat(1), rat(1)], 3).unwrap(), 8.0);
        let w = [ratio(2, 3), ratio(-5, 4), rat(3)];
        let sum = w.iter().fold(Rational::zero(), |acc, v| acc + v);
        for n in 1..6 {
            assert_eq!(rhs_eq1(&IntMatrix::identity(3), &w, n).unwrap(), pow(&sum, n));
        }
        assert!(rhs_eq1(&a, &[rat(1)], 0).is_err());
        assert_eq!(rhs_eq1(&m("0,0;0,0"), &[rat(1), rat(1)], 2), Err(Error::SingularMatrix));
    }

    #[test]
    fn eq1_polynomial_matches_direct_sum() {
        let p = rhs_eq1_poly(&m("2"), 2).unwrap();
        assert_eq!(p, MultiPoly::zero(1).with_term(&[2], rat(2)).unwrap());
        assert_eq!(p.eval(&[rat(3)]).unwrap(), rat(18));
        assert_eq!(MultiPoly::constant(2, rat(1)).eval(&[rat(5), rat(6)]).unwrap(), rat(1));
        let a = m("1,1;-1,1");
        let w = [ratio(1, 2), rat(-2)];
        for n in 1..=6 {
            assert_eq!(rhs_eq1_poly(&a, n).unwrap().eval(&w).unwrap(), rhs_eq1(&a, &w, n).unwrap());
        }
    }

    #[test]
    fn verify_eq1_examples() {
        assert!(verify_eq1(&m("2"), &[rat(3)], 2, 1e-9).unwrap().pass);
        assert!(verify_eq1(&IntMatrix::identity(2), &[ratio(5, 3), rat(-1)], 7, 1e-9).unwrap().pass);
        let r = verify_eq1(&m("1,1;-1,1"), &[rat(1), rat(2)], 6, 1e-9).unwrap();
        assert!(r.pass, "{r:?}");
        // n = 6 by hand: dual points 0 and (1/2, 1/2) give 3^6 + 3^6
        assert_eq!(r.rhs, "1458");
    }

    #[test]
    fn eq2_examples() {
        let r = verify_eq2(&m("2"), &[2], 1e-9).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, "2");
        assert_eq!(lhs_eq2(&m("2"), &[2]).unwrap(), 2.0);
        let r = verify_eq2(&m("2"), &[1], 1e-9).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, "0");
        let r = verify_eq2(&IntMatrix::identity(2), &[0, 0], 1e-9).unwrap();
        assert_eq!(r.rhs, "1");
        assert!(r.pass);
    }

    #[test]
    fn trace_examples() {
        let spec = TorusSpec::new(m("2")).unwrap();
        let g = torus_graph(&spec, &LatticeWeights::unit(1)).unwrap();
        let r = verify_trace(&g, 0, 1e-8);
        assert!(r.pass);
        assert_eq!(r.rhs, "2");
        let r = verify_trace(&g, 1, 1e-8);
        assert!(r.pass);
        assert_eq!(r.rhs, "0");
    }

    #[test]
    fn quotient_examples() {
        let r = verify_quotient(&cycle_graph(6), &cycle_rotations(6, 3), 6).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(verify_quotient(&cycle_graph(6), &GroupAction::trivial(6), 4).unwrap().pass);
        let a = m("1,1;-1,1");
        let lw = LatticeWeights::new(vec![ratio(1, 3), rat(2)]).unwrap();
        let big = TorusSpec::new(a.scaled(2)).unwrap();
        let gamma = big.translation_subgroup(&a).unwrap();
        assert!(verify_quotient(&torus_graph(&big, &lw).unwrap(), &gamma, 6).unwrap().pass);
        // non-normalized graph with a non-free action is refused
        let g = WeightedGraph::from_edges(
            (0..3).map(|i| i.to_string()).collect(),
            vec![rat(1); 3],
            &[(0, 1, rat(1)), (1, 2, rat(1))],
        )
        .unwrap();
        let flip = GroupAction::generated_by(3, &[vec![2, 1, 0]]).unwrap();
        assert!(matches!(verify_quotient(&g, &flip, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn non_free_action_on_normalized_graph_breaks_transfer() {
        // path a-b-c with m = (1, 2, 1) is normalized; the reflection fixes b,
        // so Σ_g w(a, g·b) counts the edge twice and Deg_Q([a]) = 2
        let g = WeightedGraph::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            vec![rat(1), rat(2), rat(1)],
            &[(0, 1, rat(1)), (1, 2, rat(1))],
        )
        .unwrap();
        assert!(g.is_normalized());
        let flip = GroupAction::generated_by(3, &[vec![2, 1, 0]]).unwrap();
        let (q, _) = g.quotient(&flip).unwrap();
        assert_eq!(q.degree(0).unwrap(), rat(2));
        let r = verify_quotient(&g, &flip, 1).unwrap();
        assert!(!r.pass);
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("-1", "0"));
    }

    #[test]
    fn expansion_examples() {
        for n in 0..=3 {
            assert!(verify_spectral_expansion(&m("2"), &[rat(1)], n, 1e-9).unwrap().pass);
        }
        let r = verify_spectral_expansion(&IntMatrix::diagonal(&[2, 3]), &[rat(1), rat(2)], 8, 1e-9).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn report_json_round_trip() {
        let r = verify_eq1(&m("2"), &[rat(3)], 2, 1e-9).unwrap();
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["identity", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
