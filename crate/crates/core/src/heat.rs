//! Discrete-time heat kernel on finite weighted graphs.
//!
//! The one-step kernel is `p_1(x, y) = (1 − Deg(x))·[x = y] + w(x, y)/m_x`,
//! `p_n` is its `n`-fold convolution and `q_n(x, y) = p_n(x, y)/m_y` solves
//! `q_{n+1} − q_n = Δ_x q_n` with `q_0(x, y) = [x = y]/m_y`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::exec::Exec;
use crate::graph::WeightedGraph;

/// One-step kernel value `p_1(x, y)`. May be negative on graphs with
/// `Deg(x) > 1`.
pub fn p1(g: &WeightedGraph, x: usize, y: usize) -> Rational {
    let mut v = g.weight(x, y) / g.measure(x);
    if x == y {
        v += Rational::one() - g.degree(x).expect("vertex in range");
    }
    v
}

/// Sparse rows of the one-step kernel: `(y, p_1(x, y))` for nonzero values.
fn one_step_rows(g: &WeightedGraph) -> Vec<Vec<(usize, Rational)>> {
    (0..g.len())
        .map(|x| {
            let mut row: Vec<(usize, Rational)> =
                g.neighbors(x).iter().filter(|(y, _)| *y != x).map(|(y, w)| (*y, w / g.measure(x))).collect();
            let stay = p1(g, x, x);
            if !stay.is_zero() {
                row.push((x, stay));
                row.sort_by_key(|(y, _)| *y);
            }
            row
        })
        .collect()
}

/// Exact kernels `p_k` for `k = 0..=n` on a finite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatKernelTable {
    labels: Vec<String>,
    measures: Vec<Rational>,
    p: Vec<Vec<Vec<Rational>>>,
}

impl HeatKernelTable {
    pub fn build(g: &WeightedGraph, n: u32) -> Self {
        Self::build_with(g, n, Exec::default())
    }

    /// Builds by repeated one-step convolution `p_{k+1} = P·p_k`; rows of
    /// each step are independent and are split across `exec`.
    pub fn build_with(g: &WeightedGraph, n: u32, exec: Exec) -> Self {
        let size = g.len();
        let rows = one_step_rows(g);
        let identity: Vec<Vec<Rational>> = (0..size)
            .map(|x| (0..size).map(|y| if x == y { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let mut p = Vec::with_capacity(n as usize + 1);
        p.push(identity);
        for _ in 0..n {
            let prev = p.last().expect("p_0 present");
            let next = exec.map_range(size, |x| {
                let mut out = vec![Rational::zero(); size];
                for (z, pxz) in &rows[x] {
                    for (y, slot) in out.iter_mut().enumerate() {
                        let pzy = &prev[*z][y];
                        if !pzy.is_zero() {
                            *slot += pxz * pzy;
                        }
                    }
                }
                out
            });
            p.push(next);
        }
        Self { labels: g.labels().to_vec(), measures: g.measures().to_vec(), p }
    }

    pub fn steps(&self) -> u32 {
        (self.p.len() - 1) as u32
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn p(&self, k: u32, x: usize, y: usize) -> &Rational {
        &self.p[k as usize][x][y]
    }

    pub fn q(&self, k: u32, x: usize, y: usize) -> Rational {
        &self.p[k as usize][x][y] / &self.measures[y]
    }

    pub fn p_matrix(&self, k: u32) -> &[Vec<Rational>] {
        &self.p[k as usize]
    }

    pub fn q_matrix(&self, k: u32) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|x| (0..self.len()).map(|y| self.q(k, x, y)).collect()).collect()
    }

    /// `Σ_x q_k(x, x)·m_x`.
    pub fn trace(&self, k: u32) -> Rational {
        (0..self.len()).fold(Rational::zero(), |acc, x| acc + &self.p[k as usize][x][x])
    }

    /// CSV dump of every `q_k(x, y)`: `step,x,y,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,x,y,value\n");
        for k in 0..=self.steps() {
            for x in 0..self.len() {
                for y in 0..self.len() {
                    writeln!(out, "{k},{},{},{}", self.labels[x], self.labels[y], self.q(k, x, y))
                        .expect("write to string");
                }
            }
        }
        out
    }
}

/// `p_n(x, y)` by summing `Π p_1(ω_{i−1}, ω_i)` over every generalized walk
/// (steps may stay in place). Exponential in `n`; a reference for tiny graphs.
pub fn pn_walks(g: &WeightedGraph, n: u32, x: usize, y: usize) -> Rational {
    let rows: Vec<Vec<(usize, Rational)>> = (0..g.len())
        .map(|u| {
            let mut r: Vec<(usize, Rational)> =
                g.neighbors(u).iter().filter(|(v, _)| *v != u).map(|(v, _)| (*v, p1(g, u, *v))).collect();
            r.push((u, p1(g, u, u)));
            r
        })
        .collect();
    fn go(rows: &[Vec<(usize, Rational)>], at: usize, left: u32, target: usize, acc: &Rational, out: &mut Rational) {
        if left == 0 {
            if at == target {
                *out += acc;
            }
            return;
        }
        for (v, p) in &rows[at] {
            go(rows, *v, left - 1, target, &(acc * p), out);
        }
    }
    let mut out = Rational::zero();
    go(&rows, x, n, y, &Rational::one(), &mut out);
    out
}

/// `Σ_x q_n(x, x)·m_x`, exact.
pub fn heat_trace(g: &WeightedGraph, n: u32) -> Rational {
    HeatKernelTable::build(g, n).trace(n)
}
