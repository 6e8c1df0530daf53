//! Weighted discrete tori `T_A = Z^d / A·Z^d` and their duals
//! `T_A* = (Aᵀ)⁻¹·Z^d / Z^d`.
//!
//! Coset representatives are the box `0 ≤ x_i < H_ii` where `H` is the
//! column Hermite normal form of `A`, listed in lexicographic order. The torus
//! graph is the weighted quotient of the lattice graph, so it carries
//! self-weights whenever a unit step is itself in `A·Z^d`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{cos2pi, exp2pi_i, format_rational_list, frac, pow, rat, to_f64, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{GroupAction, WeightedGraph};
use crate::intmat::IntMatrix;
use crate::lattice::{abs_vec, l1_norm, sublattice_points_near, LatticeWeights, WalkSum};

/// Column-style Hermite normal form `A·U = H`.
pub fn hnf(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    a.hnf()
}

/// A point of the dual torus, entries in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualPoint {
    pub xi: Vec<Rational>,
}

impl fmt::Display for DualPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational_list(&self.xi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSpec {
    a: IntMatrix,
    det_abs: BigInt,
    h: IntMatrix,
    u: IntMatrix,
    reps: Vec<Vec<i64>>,
    dual: Vec<DualPoint>,
}

impl TorusSpec {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let (h, u) = a.hnf()?;
        let det_abs = a.det_abs();
        let reps = box_points(&h);
        let dual = dual_points(&a)?;
        debug_assert_eq!(BigInt::from(reps.len()), det_abs);
        debug_assert_eq!(reps.len(), dual.len());
        Ok(Self { a, det_abs, h, u, reps, dual })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn det_abs(&self) -> &BigInt {
        &self.det_abs
    }

    pub fn hnf(&self) -> (&IntMatrix, &IntMatrix) {
        (&self.h, &self.u)
    }

    pub fn reps(&self) -> &[Vec<i64>] {
        &self.reps
    }

    pub fn dual(&self) -> &[DualPoint] {
        &self.dual
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// The representative of `z + A·Z^d`.
    ///
    /// `H` is lower triangular, so coordinate `i` can only be changed by
    /// columns `0..=i`; reducing coordinates in increasing order with column
    /// `i` never disturbs the already-reduced ones.
    pub fn canonicalize(&self, z: &[i64]) -> Vec<i64> {
        assert_eq!(z.len(), self.dim(), "vector dimension");
        let mut r = z.to_vec();
        for i in 0..self.dim() {
            let pivot = self.h.get(i, i);
            let q = r[i].div_euclid(pivot);
            if q != 0 {
                for (k, rk) in r.iter_mut().enumerate().skip(i) {
                    *rk -= q * self.h.get(k, i);
                }
            }
        }
        r
    }

    /// Position of the class of `z` in [`TorusSpec::reps`].
    pub fn index_of(&self, z: &[i64]) -> usize {
        let r = self.canonicalize(z);
        r.iter().enumerate().fold(0usize, |acc, (i, &v)| acc * self.h.get(i, i) as usize + v as usize)
    }

    /// Translations by the classes of `sub·Z^d`, acting on the vertices of
    /// this torus. Requires `A·Z^d ⊆ sub·Z^d`; the quotient by this group is
    /// the torus of `sub`.
    pub fn translation_subgroup(&self, sub: &IntMatrix) -> Result<GroupAction> {
        if sub.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: sub.dim() });
        }
        let coarse = TorusSpec::new(sub.clone())?;
        for j in 0..self.dim() {
            if coarse.canonicalize(&self.a.column(j)).iter().any(|&v| v != 0) {
                return Err(Error::Precondition(format!("{} is not a sublattice of {sub}", self.a)));
            }
        }
        let elements = self
            .reps
            .iter()
            .filter(|r| coarse.canonicalize(r).iter().all(|&v| v == 0))
            .map(|t| {
                self.reps
                    .iter()
                    .map(|x| {
                        let moved: Vec<i64> = x.iter().zip(t).map(|(a, b)| a + b).collect();
                        self.index_of(&moved)
                    })
                    .collect()
            })
            .collect();
        GroupAction::new(self.len(), elements)
    }
}

fn box_points(h: &IntMatrix) -> Vec<Vec<i64>> {
    let d = h.dim();
    let mut out = vec![Vec::new()];
    for i in 0..d {
        let next: Vec<Vec<i64>> = out
            .iter()
            .flat_map(|p: &Vec<i64>| {
                (0..h.get(i, i)).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
        out = next;
    }
    out
}

/// Coset representatives of `Z^d / A·Z^d`: the Hermite box, lexicographic.
pub fn coset_reps(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let (h, _) = a.hnf()?;
    Ok(box_points(&h))
}

/// `{(Aᵀ)⁻¹·k mod 1 : k ∈ coset_reps(Aᵀ)}`, sorted lexicographically.
pub fn dual_points(a: &IntMatrix) -> Result<Vec<DualPoint>> {
    let at = a.transpose();
    let inv = at.inverse()?;
    let mut out: Vec<DualPoint> = coset_reps(&at)?
        .into_iter()
        .map(|k| {
            let xi = inv
                .iter()
                .map(|row| frac(&row.iter().zip(&k).fold(Rational::zero(), |acc, (c, &x)| acc + c * rat(x))))
                .collect();
            DualPoint { xi }
        })
        .collect();
    out.sort();
    Ok(out)
}

fn label(x: &[i64]) -> String {
    crate::arith::format_int_list(x)
}

/// The weighted torus graph: vertices are the representatives, `m ≡ σ`, and
/// each of the `2d` unit steps from `x` adds `w_i` to the pair
/// `(x, [x ± e_i])`, landing on the diagonal when the step closes up.
pub fn torus_graph(spec: &TorusSpec, lw: &LatticeWeights) -> Result<WeightedGraph> {
    let d = spec.dim();
    if lw.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: lw.dim() });
    }
    let n = spec.len();
    let mut weights = vec![vec![Rational::zero(); n]; n];
    for (x, rep) in spec.reps().iter().enumerate() {
        for (i, w) in lw.weights().iter().enumerate() {
            for s in [1, -1] {
                let mut z = rep.clone();
                z[i] += s;
                weights[x][spec.index_of(&z)] += w;
            }
        }
    }
    WeightedGraph::from_dense(spec.reps().iter().map(|r| label(r)).collect(), vec![lw.sigma().clone(); n], weights)
}

/// `⟨ξ, x⟩` as an exact rational.
fn pairing(xi: &DualPoint, x: &[i64]) -> Rational {
    xi.xi.iter().zip(x).fold(Rational::zero(), |acc, (a, &b)| acc + a * rat(b))
}

/// `e^{2πi⟨ξ, x⟩}`.
pub fn character(xi: &DualPoint, x: &[i64]) -> Complex64 {
    assert_eq!(xi.xi.len(), x.len(), "dimension mismatch");
    exp2pi_i(&pairing(xi, x))
}

/// Laplacian eigenvalue `1 − (2/σ)·Σ w_i cos(2πξ_i)` of the character `f_ξ`.
pub fn torus_eigenvalue(xi: &DualPoint, lw: &LatticeWeights) -> Result<f64> {
    if xi.xi.len() != lw.dim() {
        return Err(Error::DimensionMismatch { expected: lw.dim(), got: xi.xi.len() });
    }
    let dot: f64 = lw.weights().iter().zip(&xi.xi).map(|(w, t)| to_f64(w) * cos2pi(t)).sum();
    Ok(1.0 - 2.0 * dot / to_f64(lw.sigma()))
}

/// All eigenvalues over the dual torus, ascending.
pub fn torus_spectrum(spec: &TorusSpec, lw: &LatticeWeights) -> Result<Vec<f64>> {
    let mut out = spec.dual().iter().map(|xi| torus_eigenvalue(xi, lw)).collect::<Result<Vec<_>>>()?;
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Sum of lattice walk weights from `0` to `c + g` over `g ∈ A·Z^d` with
/// `|c + g|_1 ≤ n`; the lattice kernel vanishes outside that ball.
fn folded_walk_sum(spec: &TorusSpec, walks: &WalkSum, n: u32, c: &[i64]) -> Rational {
    sublattice_points_near(&spec.h, c, n).iter().fold(Rational::zero(), |acc, g| {
        let v: Vec<i64> = g.iter().zip(c).map(|(a, b)| a + b).collect();
        debug_assert!(l1_norm(&v) <= n as i64);
        acc + walks.eval(n, &abs_vec(&v))
    })
}

/// Closed-form torus heat kernel
/// `q_n([x], [y]) = σ^{−(n+1)}·Σ_{g∈A·Z^d} (lattice walk weight to y + g − x)`.
pub fn torus_qn_closed(spec: &TorusSpec, lw: &LatticeWeights, n: u32, x: &[i64], y: &[i64]) -> Result<Rational> {
    let d = spec.dim();
    if lw.dim() != d || x.len() != d || y.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: lw.dim().max(x.len()).max(y.len()) });
    }
    if n == 0 {
        return Err(Error::Precondition("closed form needs n >= 1".into()));
    }
    let c: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let walks = WalkSum::new(lw.weights(), n);
    Ok(folded_walk_sum(spec, &walks, n, &c) / pow(lw.sigma(), n + 1))
}

/// Closed-form `q_n` on all pairs of representatives. The kernel depends only
/// on the class of `y − x`, so each class is evaluated once.
pub fn torus_qn_closed_table(spec: &TorusSpec, lw: &LatticeWeights, n: u32, exec: Exec) -> Result<Vec<Vec<Rational>>> {
    if lw.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: lw.dim() });
    }
    if n == 0 {
        return Err(Error::Precondition("closed form needs n >= 1".into()));
    }
    let walks = WalkSum::new(lw.weights(), n);
    let scale = pow(lw.sigma(), n + 1);
    let by_class = exec.map(spec.reps(), |c| folded_walk_sum(spec, &walks, n, c) / &scale);
    Ok(spec
        .reps()
        .iter()
        .map(|x| {
            spec.reps()
                .iter()
                .map(|y| {
                    let c: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
                    by_class[spec.index_of(&c)].clone()
                })
                .collect()
        })
        .collect())
}

/// Renders `1 − (2/σ)·(w_1·cos(2π·ξ_1) + …)` with exact inputs.
pub fn eigenvalue_witness(xi: &DualPoint, lw: &LatticeWeights) -> String {
    let terms: Vec<String> = lw.weights().iter().zip(&xi.xi).map(|(w, t)| format!("{w}*cos(2pi*{t})")).collect();
    format!("1 - (2/{})*({})", lw.sigma(), terms.join(" + "))
}

pub fn det_as_usize(spec: &TorusSpec) -> usize {
    spec.det_abs().to_usize().expect("determinant fits in usize")
}
