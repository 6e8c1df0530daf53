//! The weighted integer lattice `Z^d`: closed-form transition kernel,
//! compositions, vector multinomials, and enumeration of sublattice points in
//! an L1 ball.
//!
//! The lattice carries edge weight `w_i` on every edge `{x, x + e_i}` and
//! measure `σ = 2·Σ w_i` at every vertex, which makes it normalized.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{pow, rat, Rational};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// A value in `½·Z`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_int(k: i64) -> Self {
        Self { twice: 2 * k }
    }

    /// `twice / 2`.
    pub fn halve(twice: i64) -> Self {
        Self { twice }
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

/// All `x ∈ Z_{≥0}^d` with `|x| = k`, in lexicographic order. Empty when `k`
/// is negative or not an integer.
pub fn compositions(k: HalfInt, d: usize) -> Vec<Vec<u32>> {
    let Some(k) = k.as_integer() else {
        return Vec::new();
    };
    if k < 0 || d == 0 {
        return if k == 0 && d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    fill_compositions(k as u32, 0, &mut cur, &mut out);
    out
}

fn fill_compositions(rem: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(cur.clone());
        return;
    }
    for v in 0..=rem {
        cur[i] = v;
        fill_compositions(rem - v, i + 1, cur, out);
    }
}

const SMALL_FACTORIALS: [u128; 35] = {
    let mut t = [1u128; 35];
    let mut i = 1;
    while i < 35 {
        t[i] = t[i - 1] * i as u128;
        i += 1;
    }
    t
};

/// `n! / ((a+z)!·z!)` with componentwise vector factorials.
///
/// Requires `|a| + 2|z| = n`, which makes the result a positive integer.
pub fn multinomial_vec(n: u32, a: &[u32], z: &[u32]) -> Result<BigInt> {
    if a.len() != z.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: z.len() });
    }
    let total: u64 = a.iter().map(|&v| v as u64).sum::<u64>() + 2 * z.iter().map(|&v| v as u64).sum::<u64>();
    if total != n as u64 {
        return Err(Error::Precondition(format!("|a| + 2|z| = {total} but n = {n}")));
    }
    let parts = a.iter().zip(z).flat_map(|(&ai, &zi)| [ai + zi, zi]);
    if (n as usize) < SMALL_FACTORIALS.len() {
        let mut acc = SMALL_FACTORIALS[n as usize];
        for k in parts {
            acc /= SMALL_FACTORIALS[k as usize];
        }
        return Ok(BigInt::from(acc));
    }
    let mut acc = crate::arith::factorial(n);
    for k in parts {
        acc /= crate::arith::factorial(k);
    }
    Ok(acc)
}

/// Positive lattice weights `w` and the derived measure `σ = 2·Σ w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWeights {
    w: Vec<Rational>,
    sigma: Rational,
}

impl LatticeWeights {
    pub fn new(w: Vec<Rational>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::Precondition("weight vector is empty".into()));
        }
        if let Some(bad) = w.iter().find(|v| !v.is_positive()) {
            return Err(Error::Precondition(format!("lattice weight {bad} is not positive")));
        }
        let sigma = w.iter().fold(Rational::zero(), |acc, v| acc + v) * rat(2);
        Ok(Self { w, sigma })
    }

    pub fn unit(d: usize) -> Self {
        Self::new(vec![Rational::one(); d]).expect("unit weights are positive")
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.w
    }

    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }
}

/// Evaluates the weighted walk count
/// `Σ_{z ∈ P((n−|v|)/2, d)} n!/((abs v + z)!·z!) · w^{abs v + 2z}`
/// with a cached table of powers of `w`. Weights may be any rationals.
#[derive(Debug, Clone)]
pub struct WalkSum {
    powers: Vec<Vec<Rational>>,
}

impl WalkSum {
    pub fn new(w: &[Rational], max_n: u32) -> Self {
        let powers = w
            .iter()
            .map(|wi| {
                let mut row = vec![Rational::one()];
                for k in 1..=max_n as usize {
                    let next = &row[k - 1] * wi;
                    row.push(next);
                }
                row
            })
            .collect();
        Self { powers }
    }

    pub fn dim(&self) -> usize {
        self.powers.len()
    }

    fn max_n(&self) -> u32 {
        self.powers.first().map_or(0, |r| (r.len() - 1) as u32)
    }

    /// The sum for step count `n` and displacement with absolute values `abs_v`.
    pub fn eval(&self, n: u32, abs_v: &[u32]) -> Rational {
        assert_eq!(abs_v.len(), self.dim(), "displacement dimension");
        assert!(n <= self.max_n(), "power table too short for n = {n}");
        let len: i64 = abs_v.iter().map(|&v| v as i64).sum();
        let mut acc = Rational::zero();
        for z in compositions(HalfInt::halve(n as i64 - len), self.dim()) {
            let coeff = multinomial_vec(n, abs_v, &z).expect("composition satisfies the constraint");
            let mut term = Rational::from_integer(coeff);
            for (i, (&a, &zi)) in abs_v.iter().zip(&z).enumerate() {
                let e = (a + 2 * zi) as usize;
                if e > 0 {
                    term *= &self.powers[i][e];
                }
            }
            acc += term;
        }
        acc
    }
}

pub fn l1_norm(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn abs_vec(v: &[i64]) -> Vec<u32> {
    v.iter().map(|x| x.unsigned_abs() as u32).collect()
}

/// `p_n(x, y)` on the weighted lattice, where `v = y − x`.
pub fn lattice_pn(lw: &LatticeWeights, n: u32, v: &[i64]) -> Result<Rational> {
    if v.len() != lw.dim() {
        return Err(Error::DimensionMismatch { expected: lw.dim(), got: v.len() });
    }
    if l1_norm(v) > n as i64 {
        return Ok(Rational::zero());
    }
    let sum = WalkSum::new(lw.weights(), n).eval(n, &abs_vec(v));
    Ok(sum / pow(lw.sigma(), n))
}

/// `q_n(x, y) = p_n(x, y)/σ` on the weighted lattice.
pub fn lattice_qn(lw: &LatticeWeights, n: u32, v: &[i64]) -> Result<Rational> {
    Ok(lattice_pn(lw, n, v)? / lw.sigma())
}

/// All `g ∈ A·Z^d` with `|g|_1 ≤ radius`, sorted lexicographically.
pub fn ball_points(a: &IntMatrix, radius: u32) -> Result<Vec<Vec<i64>>> {
    let (h, _) = a.hnf()?;
    Ok(sublattice_points_near(&h, &vec![0; a.dim()], radius))
}

/// All `g` in the lattice spanned by the columns of the lower-triangular `h`
/// with `|g + center|_1 ≤ radius`, sorted lexicographically.
///
/// Because `h` is lower triangular, coordinate `i` of `g` depends only on the
/// first `i + 1` lattice coordinates, so each coordinate's range can be cut
/// down to the remaining L1 budget before descending.
pub fn sublattice_points_near(h: &IntMatrix, center: &[i64], radius: u32) -> Vec<Vec<i64>> {
    let d = h.dim();
    assert_eq!(center.len(), d);
    let mut out = Vec::new();
    let mut g = vec![0i64; d];
    let mut partial = vec![0i64; d];
    descend(h, center, 0, radius as i64, &mut g, &mut partial, &mut out);
    out.sort();
    out
}

fn descend(
    h: &IntMatrix,
    center: &[i64],
    i: usize,
    budget: i64,
    g: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let d = h.dim();
    if i == d {
        out.push(g.clone());
        return;
    }
    let pivot = h.get(i, i);
    let offset = partial[i] + center[i];
    // need |offset + pivot·u| <= budget
    let lo = div_ceil(-budget - offset, pivot);
    let hi = (budget - offset).div_euclid(pivot);
    for u in lo..=hi {
        let gi = partial[i] + pivot * u;
        let used = (gi + center[i]).abs();
        g[i] = gi;
        for k in i + 1..d {
            partial[k] += h.get(k, i) * u;
        }
        descend(h, center, i + 1, budget - used, g, partial, out);
        for k in i + 1..d {
            partial[k] -= h.get(k, i) * u;
        }
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Reference enumeration of [`ball_points`]: scans the integer box
/// `|v_i| ≤ ceil(max_j |A⁻¹_ij| · radius)` and keeps `A·v` with
/// `|A·v|_1 ≤ radius`. Slow for matrices with large inverse entries.
pub fn ball_points_by_box(a: &IntMatrix, radius: u32) -> Result<Vec<Vec<i64>>> {
    let inv = a.inverse()?;
    let d = a.dim();
    let bounds: Vec<i64> = inv
        .iter()
        .map(|row| {
            let m = row.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
            (m * rat(radius as i64)).ceil().to_integer().to_i64().expect("box bound fits")
        })
        .collect();
    let mut out = Vec::new();
    let mut v: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let g = a.mul_vec(&v);
        if l1_norm(&g) <= radius as i64 {
            out.push(g);
        }
        let mut i = 0;
        loop {
            if i == d {
                out.sort();
                return Ok(out);
            }
            if v[i] < bounds[i] {
                v[i] += 1;
                break;
            }
            v[i] = -bounds[i];
            i += 1;
        }
    }
}

/// Brute-force reference for [`lattice_pn`]: enumerates every `n`-step
/// generalized walk from the origin (stay, or `±e_i`), multiplying one-step
/// kernel values, and accumulates the product at the endpoint.
pub fn enumerate_walks(lw: &LatticeWeights, n: u32) -> BTreeMap<Vec<i64>, Rational> {
    let d = lw.dim();
    let sigma = lw.sigma();
    let degree = lw.weights().iter().fold(Rational::zero(), |acc, w| acc + w * rat(2)) / sigma;
    let mut steps: Vec<(Vec<i64>, Rational)> = vec![(vec![0; d], Rational::one() - degree)];
    for (i, w) in lw.weights().iter().enumerate() {
        for s in [1i64, -1] {
            let mut e = vec![0; d];
            e[i] = s;
            steps.push((e, w / sigma));
        }
    }
    let mut out = BTreeMap::new();
    let mut pos = vec![0i64; d];
    walk(&steps, n, &mut pos, Rational::one(), &mut out);
    out
}

fn walk(
    steps: &[(Vec<i64>, Rational)],
    remaining: u32,
    pos: &mut Vec<i64>,
    weight: Rational,
    out: &mut BTreeMap<Vec<i64>, Rational>,
) {
    if remaining == 0 {
        *out.entry(pos.clone()).or_insert_with(Rational::zero) += weight;
        return;
    }
    for (step, p) in steps {
        for (x, s) in pos.iter_mut().zip(step) {
            *x += s;
        }
        walk(steps, remaining - 1, pos, &weight * p, out);
        for (x, s) in pos.iter_mut().zip(step) {
            *x -= s;
        }
    }
}
