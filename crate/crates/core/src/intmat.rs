//! Small dense integer matrices: parsing, exact determinant and inverse, and
//! the column-style Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::NotSquare { rows: dim, cols: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1; dim])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let dim = diag.len();
        let mut data = vec![0; dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            data[i * dim + i] = v;
        }
        Self { dim, data }
    }

    /// Parses rows separated by `;` and entries by `,`, e.g. `"1,1;-1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s.split(';').map(crate::arith::parse_int_list).collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| v * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self { dim: d, data: vec![0; d * d] };
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, (0..d).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows().into_iter().map(|r| r.into_iter().map(rat).collect()).collect()
    }

    /// Exact determinant by fraction-free rational elimination.
    pub fn det(&self) -> BigInt {
        let d = self.dim;
        let mut m = self.to_rational();
        let mut det = Rational::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| !m[r][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det *= &pivot;
            for r in c + 1..d {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                for k in c..d {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    pub fn det_abs(&self) -> BigInt {
        self.det().abs()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Vec<Vec<Rational>>> {
        let d = self.dim;
        let mut m = self.to_rational();
        let mut inv: Vec<Vec<Rational>> =
            (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !m[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
            m.swap(p, c);
            inv.swap(p, c);
            let pivot = m[c][c].clone();
            for k in 0..d {
                m[c][k] /= &pivot;
                inv[c][k] /= &pivot;
            }
            for r in 0..d {
                if r == c || m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].clone();
                for k in 0..d {
                    let a = &f * &m[c][k];
                    m[r][k] -= a;
                    let b = &f * &inv[c][k];
                    inv[r][k] -= b;
                }
            }
        }
        Ok(inv)
    }

    pub fn ensure_nonsingular(&self) -> Result<()> {
        if self.det().is_zero() {
            Err(Error::SingularMatrix)
        } else {
            Ok(())
        }
    }

    /// Column-style Hermite normal form: returns `(H, U)` with `A·U = H`,
    /// `U` unimodular, `H` lower triangular with positive diagonal.
    ///
    /// Row `i` is cleared to the right of the diagonal by Euclidean column
    /// operations. Entries left of the diagonal are not reduced.
    pub fn hnf(&self) -> Result<(IntMatrix, IntMatrix)> {
        self.ensure_nonsingular()?;
        let d = self.dim;
        let mut h = self.clone();
        let mut u = IntMatrix::identity(d);
        for i in 0..d {
            for j in i + 1..d {
                loop {
                    let b = h.get(i, j);
                    if b == 0 {
                        break;
                    }
                    let a = h.get(i, i);
                    if a == 0 {
                        h.swap_cols(i, j);
                        u.swap_cols(i, j);
                        continue;
                    }
                    let q = b / a;
                    h.axpy_col(j, i, -q);
                    u.axpy_col(j, i, -q);
                    if h.get(i, j) != 0 {
                        h.swap_cols(i, j);
                        u.swap_cols(i, j);
                    }
                }
            }
            if h.get(i, i) < 0 {
                h.negate_col(i);
                u.negate_col(i);
            }
            debug_assert!(h.get(i, i) > 0);
        }
        Ok((h, u))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.dim {
            self.data.swap(r * self.dim + a, r * self.dim + b);
        }
    }

    /// `col[dst] += k·col[src]`
    fn axpy_col(&mut self, dst: usize, src: usize, k: i64) {
        for r in 0..self.dim {
            let v = self.get(r, dst) + k * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.dim {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| crate::arith::format_int_list(r)).collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl std::str::FromStr for IntMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
