//! Finite weighted graphs `(G, m, w)` with vertex measures, the graph
//! Laplacian, and weighted quotients by groups of automorphisms.
//!
//! Weights are stored densely and symmetrically. A diagonal entry `w(x, x)`
//! is a self-weight: it counts toward `Deg` and the one-step kernel but the
//! Laplacian never sees it, since `f(x) − f(x) = 0`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    measures: Vec<Rational>,
    weights: Vec<Vec<Rational>>,
    /// `(y, w(x, y))` for every `y` with `w(x, y) > 0`, self included.
    neighbors: Vec<Vec<(usize, Rational)>>,
}

impl WeightedGraph {
    /// Builds a graph from a dense weight matrix.
    pub fn from_dense(labels: Vec<String>, measures: Vec<Rational>, weights: Vec<Vec<Rational>>) -> Result<Self> {
        let n = measures.len();
        if labels.len() != n {
            return Err(Error::InvalidGraph(format!("{} labels for {n} measures", labels.len())));
        }
        if weights.len() != n || weights.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGraph("weight matrix shape does not match vertex count".into()));
        }
        if let Some((x, m)) = measures.iter().enumerate().find(|(_, m)| !m.is_positive()) {
            return Err(Error::InvalidGraph(format!("measure of vertex {x} is {m}, must be positive")));
        }
        for x in 0..n {
            for y in 0..n {
                if weights[x][y].is_negative() {
                    return Err(Error::InvalidGraph(format!("negative weight on ({x}, {y})")));
                }
                if weights[x][y] != weights[y][x] {
                    return Err(Error::InvalidGraph(format!("weights on ({x}, {y}) are not symmetric")));
                }
            }
        }
        let neighbors = weights
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(y, w)| (y, w.clone())).collect())
            .collect();
        Ok(Self { labels, measures, weights, neighbors })
    }

    /// Builds a graph from an edge list; `(i, i, w)` is a self-weight.
    /// Repeated pairs are rejected.
    pub fn from_edges(
        labels: Vec<String>,
        measures: Vec<Rational>,
        edges: &[(usize, usize, Rational)],
    ) -> Result<Self> {
        let n = measures.len();
        let mut weights = vec![vec![Rational::zero(); n]; n];
        let mut seen = HashSet::new();
        for (i, j, w) in edges {
            let (i, j) = (*i.min(j), *i.max(j));
            if j >= n {
                return Err(Error::UnknownVertex(j));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate weight entry for ({i}, {j})")));
            }
            weights[i][j] = w.clone();
            weights[j][i] = w.clone();
        }
        Self::from_dense(labels, measures, weights)
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn measure(&self, x: usize) -> &Rational {
        &self.measures[x]
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn weight(&self, x: usize, y: usize) -> &Rational {
        &self.weights[x][y]
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, Rational)] {
        &self.neighbors[x]
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x))
        }
    }

    /// `Deg(x) = (1/m_x)·Σ_y w(x, y)`, self-weight included.
    pub fn degree(&self, x: usize) -> Result<Rational> {
        self.check_vertex(x)?;
        let total = self.neighbors[x].iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        Ok(total / &self.measures[x])
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.len()).all(|x| self.degree(x).expect("in range").is_one())
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), got })
        }
    }

    /// `(Δf)(x) = (1/m_x)·Σ_y (f(y) − f(x))·w(x, y)`, exact.
    pub fn laplacian_apply(&self, f: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(f.len())?;
        Ok((0..self.len())
            .map(|x| {
                let s = self.neighbors[x].iter().fold(Rational::zero(), |acc, (y, w)| acc + (&f[*y] - &f[x]) * w);
                s / &self.measures[x]
            })
            .collect())
    }

    /// Floating-point Laplacian for complex-valued functions.
    pub fn laplacian_apply_complex(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(f.len())?;
        Ok((0..self.len())
            .map(|x| {
                let s: Complex64 = self.neighbors[x].iter().map(|(y, w)| (f[*y] - f[x]) * to_f64(w)).sum();
                s / to_f64(&self.measures[x])
            })
            .collect())
    }

    /// `⟨f, g⟩ = Σ_x f(x)·g(x)·m_x` for real exact functions.
    pub fn inner_product(&self, f: &[Rational], g: &[Rational]) -> Result<Rational> {
        self.check_len(f.len())?;
        self.check_len(g.len())?;
        Ok((0..self.len()).fold(Rational::zero(), |acc, x| acc + &f[x] * &g[x] * &self.measures[x]))
    }

    /// `⟨f, g⟩ = Σ_x f(x)·conj(g(x))·m_x`.
    pub fn inner_product_complex(&self, f: &[Complex64], g: &[Complex64]) -> Result<Complex64> {
        self.check_len(f.len())?;
        self.check_len(g.len())?;
        Ok((0..self.len()).map(|x| f[x] * g[x].conj() * to_f64(&self.measures[x])).sum())
    }

    /// Whether `perm` preserves both the measure and the weights.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.len()
            && (0..self.len()).all(|x| self.measures[perm[x]] == self.measures[x])
            && (0..self.len()).all(|x| (0..self.len()).all(|y| self.weights[perm[x]][perm[y]] == self.weights[x][y]))
    }

    /// Weighted quotient by `gamma`, with the smallest vertex of each orbit as
    /// its representative. Returns the quotient and the projection map.
    pub fn quotient(&self, gamma: &GroupAction) -> Result<(WeightedGraph, Vec<usize>)> {
        let orbits = gamma.orbits();
        let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        self.quotient_with_representatives(gamma, &reps)
    }

    /// Weighted quotient computed from the given orbit representatives, one
    /// per orbit in the order of [`GroupAction::orbits`].
    ///
    /// `m_Q([x]) = m(x)` and `w_Q([x], [y]) = Σ_{g∈Γ} w(x, g·y)`; the diagonal
    /// of that sum is kept as the quotient self-weight.
    pub fn quotient_with_representatives(
        &self,
        gamma: &GroupAction,
        reps: &[usize],
    ) -> Result<(WeightedGraph, Vec<usize>)> {
        if gamma.degree() != self.len() {
            return Err(Error::InvalidGroup(format!(
                "group acts on {} points, graph has {} vertices",
                gamma.degree(),
                self.len()
            )));
        }
        if let Some(g) = gamma.elements().iter().find(|g| !self.is_automorphism(g)) {
            return Err(Error::InvalidGroup(format!("permutation {g:?} does not preserve m and w")));
        }
        let orbits = gamma.orbits();
        if reps.len() != orbits.len() {
            return Err(Error::InvalidGroup("one representative per orbit required".into()));
        }
        let mut projection = vec![0; self.len()];
        for (k, orbit) in orbits.iter().enumerate() {
            if !orbit.contains(&reps[k]) {
                return Err(Error::InvalidGroup(format!("{} is not in orbit {k}", reps[k])));
            }
            for &x in orbit {
                projection[x] = k;
            }
        }
        let q = orbits.len();
        let mut weights = vec![vec![Rational::zero(); q]; q];
        for a in 0..q {
            for b in 0..q {
                weights[a][b] =
                    gamma.elements().iter().fold(Rational::zero(), |acc, g| acc + &self.weights[reps[a]][g[reps[b]]]);
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.labels[r])).collect();
        let measures = reps.iter().map(|&r| self.measures[r].clone()).collect();
        Ok((WeightedGraph::from_dense(labels, measures, weights)?, projection))
    }

    pub fn to_file(&self) -> GraphFile {
        let mut weights = Vec::new();
        for i in 0..self.len() {
            for j in i..self.len() {
                if !self.weights[i][j].is_zero() {
                    weights.push((i, j, self.weights[i][j].to_string()));
                }
            }
        }
        GraphFile {
            vertices: self.labels.clone(),
            measures: self.measures.iter().map(|m| m.to_string()).collect(),
            weights,
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let measures = file.measures.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::with_capacity(file.weights.len());
        for (i, j, w) in &file.weights {
            if i > j {
                return Err(Error::InvalidGraph(format!("weight entry ({i}, {j}) must have i <= j")));
            }
            edges.push((*i, *j, parse_rational(w)?));
        }
        Self::from_edges(file.vertices.clone(), measures, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// On-disk graph format: `{vertices, measures, weights: [[i, j, "p/q"]]}`
/// with `i ≤ j`; `i = j` is a self-weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub measures: Vec<String>,
    pub weights: Vec<(usize, usize, String)>,
}

/// A finite permutation group acting on `0..degree`, stored by its full
/// element list. The identity is always element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    degree: usize,
    elements: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validates an explicit element list: permutations, identity present,
    /// closed under composition and inverse.
    pub fn new(degree: usize, elements: Vec<Vec<usize>>) -> Result<Self> {
        for p in &elements {
            check_permutation(degree, p)?;
        }
        let set: HashSet<&Vec<usize>> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::InvalidGroup("repeated element".into()));
        }
        let identity: Vec<usize> = (0..degree).collect();
        if !set.contains(&identity) {
            return Err(Error::InvalidGroup("identity missing".into()));
        }
        for a in &elements {
            if !set.contains(&invert(a)) {
                return Err(Error::InvalidGroup(format!("inverse of {a:?} missing")));
            }
            for b in &elements {
                if !set.contains(&compose(a, b)) {
                    return Err(Error::InvalidGroup(format!("{a:?}∘{b:?} not in the group")));
                }
            }
        }
        let mut elements = elements;
        let pos = elements.iter().position(|p| *p == identity).expect("checked");
        elements.swap(0, pos);
        Ok(Self { degree, elements })
    }

    /// The group generated by `generators`.
    pub fn generated_by(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for p in generators {
            check_permutation(degree, p)?;
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut elements = vec![identity.clone()];
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = compose(s, &g);
                if seen.insert(h.clone()) {
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(Self { degree, elements })
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, elements: vec![(0..degree).collect()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// No non-identity element fixes a point.
    pub fn is_free(&self) -> bool {
        self.elements[1..].iter().all(|g| g.iter().enumerate().all(|(x, &gx)| gx != x))
    }

    /// Orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if assigned[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|g| g[x]).collect();
            for &y in &orbit {
                assigned[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

fn check_permutation(degree: usize, p: &[usize]) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidGroup(format!("permutation of length {} on {degree} points", p.len())));
    }
    let mut seen = vec![false; degree];
    for &v in p {
        if v >= degree || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidGroup(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `(a∘b)(x) = a(b(x))`
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Cycle `C_n` with unit edge weights and measure 2, so every vertex has
/// degree 1. For `n = 2` the two edges merge into weight 2; `n = 1` is a
/// single vertex carrying self-weight 2.
pub fn cycle_graph(n: usize) -> WeightedGraph {
    assert!(n >= 1);
    let mut weights = vec![vec![Rational::zero(); n]; n];
    for x in 0..n {
        weights[x][(x + 1) % n] += Rational::one();
        weights[x][(x + n - 1) % n] += Rational::one();
    }
    WeightedGraph::from_dense(
        (0..n).map(|x| x.to_string()).collect(),
        vec![Rational::from_integer(2.into()); n],
        weights,
    )
    .expect("cycle graph is valid")
}

/// Rotation subgroup of `C_n` generated by `x ↦ x + step`.
pub fn cycle_rotations(n: usize, step: usize) -> GroupAction {
    let g: Vec<usize> = (0..n).map(|x| (x + step) % n).collect();
    GroupAction::generated_by(n, &[g]).expect("rotation is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use proptest::prelude::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn degree_examples() {
        let g = WeightedGraph::from_edges(labels(2), vec![rat(3), rat(1)], &[]).unwrap();
        assert_eq!(g.degree(0).unwrap(), rat(0));
        assert_eq!(g.degree(5), Err(Error::UnknownVertex(5)));
        let s = WeightedGraph::from_edges(labels(1), vec![ratio(5, 2)], &[(0, 0, ratio(5, 2))]).unwrap();
        assert_eq!(s.degree(0).unwrap(), rat(1));
        assert!(cycle_graph(6).is_normalized());
    }

    #[test]
    fn laplacian_examples() {
        let g = WeightedGraph::from_edges(labels(2), vec![rat(2), rat(2)], &[(0, 1, rat(2))]).unwrap();
        assert_eq!(g.laplacian_apply(&[rat(1), rat(0)]).unwrap(), vec![rat(-1), rat(1)]);
        let c = cycle_graph(5);
        assert!(c.laplacian_apply(&vec![ratio(7, 3); 5]).unwrap().iter().all(|v| v.is_zero()));
        assert!(g.laplacian_apply(&[rat(1)]).is_err());
    }

    #[test]
    fn inner_product_indicator() {
        let g = WeightedGraph::from_edges(labels(3), vec![rat(1), rat(3), rat(1)], &[(0, 1, rat(1))]).unwrap();
        let e = vec![rat(0), rat(1), rat(0)];
        assert_eq!(g.inner_product(&e, &e).unwrap(), rat(3));
        let f = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert_eq!(g.inner_product_complex(&f, &f).unwrap(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(WeightedGraph::from_edges(labels(2), vec![rat(0), rat(1)], &[]).is_err());
        assert!(WeightedGraph::from_edges(labels(2), vec![rat(1), rat(1)], &[(0, 1, rat(-1))]).is_err());
        assert!(WeightedGraph::from_edges(labels(2), vec![rat(1), rat(1)], &[(0, 1, rat(1)), (1, 0, rat(1))]).is_err());
        assert_eq!(
            WeightedGraph::from_edges(labels(2), vec![rat(1), rat(1)], &[(0, 2, rat(1))]),
            Err(Error::UnknownVertex(2))
        );
    }

    #[test]
    fn quotient_examples() {
        let c4 = cycle_graph(4);
        let (q, proj) = c4.quotient(&GroupAction::trivial(4)).unwrap();
        assert_eq!(q.weights(), c4.weights());
        assert_eq!(q.measures(), c4.measures());
        assert_eq!(proj, vec![0, 1, 2, 3]);

        let (q, proj) = c4.quotient(&cycle_rotations(4, 2)).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        assert_eq!(q.weight(0, 1), &rat(2));
        assert_eq!(q.weight(0, 0), &rat(0));
        assert_eq!(q.measure(0), &rat(2));

        let (q, _) = c4.quotient(&cycle_rotations(4, 1)).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.weight(0, 0), &rat(2));
        assert_eq!(q.degree(0).unwrap(), rat(1));
    }

    #[test]
    fn group_validation() {
        assert!(GroupAction::new(3, vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert!(GroupAction::new(3, vec![vec![1, 2, 0], vec![2, 0, 1]]).is_err());
        assert!(GroupAction::new(2, vec![vec![0, 0]]).is_err());
        let g = GroupAction::new(3, vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 0, 1]]).unwrap();
        assert_eq!(g.elements()[0], vec![0, 1, 2]);
        assert!(g.is_free());
        let refl = GroupAction::generated_by(4, &[vec![0, 3, 2, 1]]).unwrap();
        assert_eq!(refl.order(), 2);
        assert!(!refl.is_free());
        // a reflection that breaks the weights is rejected by the quotient
        let g = WeightedGraph::from_edges(labels(3), vec![rat(1); 3], &[(0, 1, rat(1)), (1, 2, rat(2))]).unwrap();
        let swap = GroupAction::generated_by(3, &[vec![2, 1, 0]]).unwrap();
        assert!(matches!(g.quotient(&swap), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = WeightedGraph::from_edges(
            vec!["a".into(), "b".into()],
            vec![ratio(1, 2), rat(3)],
            &[(0, 1, ratio(2, 3)), (1, 1, rat(1))],
        )
        .unwrap();
        let text = g.to_json();
        assert_eq!(WeightedGraph::from_json(&text).unwrap(), g);
        assert!(WeightedGraph::from_json(r#"{"vertices":["a"],"measures":["1"],"weights":[[1,0,"1"]]}"#).is_err());
    }

    /// Random graph with a dihedral symmetry of a polygon on `n` vertices
    /// built from orbit-constant random weights and measures.
    fn symmetric_graph(n: usize, seed: Vec<(i64, i64)>) -> WeightedGraph {
        let m = ratio(seed[0].0.abs() + 1, seed[0].1.abs() + 1);
        let mut w = vec![vec![Rational::zero(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let k = (y + n - x) % n;
                let k = k.min(n - k);
                let (p, q) = seed[1 + k % (seed.len() - 1)];
                w[x][y] = if k == 0 { Rational::zero() } else { ratio(p.abs() % 4, q.abs() + 1) };
            }
        }
        WeightedGraph::from_dense(labels(n), vec![m; n], w).unwrap()
    }

    proptest! {
        #[test]
        fn quotient_laws(
            n in 3usize..9,
            seed in proptest::collection::vec((-9i64..9, -9i64..9), 5),
            f in proptest::collection::vec((-9i64..9, 1i64..5), 9),
        ) {
            let g = symmetric_graph(n, seed);
            for step in 1..n {
                if n % step != 0 { continue; }
                let gamma = cycle_rotations(n, step);
                let (q, proj) = g.quotient(&gamma).unwrap();
                for x in 0..n {
                    prop_assert_eq!(q.degree(proj[x]).unwrap(), g.degree(x).unwrap());
                }
                let fq: Vec<Rational> = (0..q.len()).map(|i| ratio(f[i].0, f[i].1)).collect();
                let pulled: Vec<Rational> = proj.iter().map(|&k| fq[k].clone()).collect();
                let lhs = g.laplacian_apply(&pulled).unwrap();
                let lq = q.laplacian_apply(&fq).unwrap();
                for x in 0..n {
                    prop_assert_eq!(&lhs[x], &lq[proj[x]]);
                }
                let alt: Vec<usize> = gamma.orbits().iter().map(|o| *o.last().unwrap()).collect();
                let (q2, _) = g.quotient_with_representatives(&gamma, &alt).unwrap();
                prop_assert_eq!(q.weights(), q2.weights());
                prop_assert_eq!(q.measures(), q2.measures());
            }
        }

        #[test]
        fn laplacian_is_self_adjoint(
            n in 1usize..7,
            w in proptest::collection::vec((0i64..5, 1i64..4), 49),
            m in proptest::collection::vec((1i64..7, 1i64..4), 7),
            f in proptest::collection::vec((-9i64..9, 1i64..5), 7),
            h in proptest::collection::vec((-9i64..9, 1i64..5), 7),
        ) {
            let mut dense = vec![vec![Rational::zero(); n]; n];
            for x in 0..n {
                for y in x..n {
                    let (p, q) = w[x * 7 + y];
                    dense[x][y] = ratio(p, q);
                    dense[y][x] = ratio(p, q);
                }
            }
            let g = WeightedGraph::from_dense(labels(n), m[..n].iter().map(|&(p, q)| ratio(p, q)).collect(), dense).unwrap();
            let f: Vec<Rational> = f[..n].iter().map(|&(p, q)| ratio(p, q)).collect();
            let h: Vec<Rational> = h[..n].iter().map(|&(p, q)| ratio(p, q)).collect();
            let lf = g.laplacian_apply(&f).unwrap();
            let lh = g.laplacian_apply(&h).unwrap();
            prop_assert_eq!(g.inner_product(&lf, &h).unwrap(), g.inner_product(&f, &lh).unwrap());
            let fc: Vec<Complex64> = f.iter().map(|v| Complex64::new(to_f64(v), 0.5)).collect();
            let hc: Vec<Complex64> = h.iter().map(|v| Complex64::new(-0.25, to_f64(v))).collect();
            let a = g.inner_product_complex(&fc, &hc).unwrap();
            let b = g.inner_product_complex(&hc, &fc).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}
