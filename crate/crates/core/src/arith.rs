//! Exact scalars, multivariate polynomials with rational coefficients, and
//! cosines evaluated at rational multiples of a full turn.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma-separated list of rational literals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty rational list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

/// Parses a comma-separated list of integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty integer list".into()));
    }
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}")))).collect()
}

/// Parses a comma-separated exponent vector.
pub fn parse_exponents(s: &str) -> Result<Vec<u32>> {
    parse_int_list(s)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Parse(format!("negative exponent {v}"))))
        .collect()
}

pub fn format_rational_list(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

pub fn format_int_list(v: &[i64]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

/// Fractional part, in `[0, 1)`.
pub fn frac(t: &Rational) -> Rational {
    t - t.floor()
}

/// `cos(2πt)`, exact at quarter turns.
///
/// The angle is folded exactly in rational arithmetic into `[0, 1/8]` before
/// any rounding happens, so `t`, `t + k` and `-t` give bit-identical results.
pub fn cos2pi(t: &Rational) -> f64 {
    let half = ratio(1, 2);
    let quarter = ratio(1, 4);
    let mut r = frac(t);
    if r > half {
        r = Rational::one() - r;
    }
    let negate = r > quarter;
    if negate {
        r = &half - r;
    }
    let v = if r.is_zero() {
        1.0
    } else if r == quarter {
        0.0
    } else if r > ratio(1, 8) {
        (std::f64::consts::TAU * to_f64(&(quarter - r))).sin()
    } else {
        (std::f64::consts::TAU * to_f64(&r)).cos()
    };
    if negate {
        -v
    } else {
        v
    }
}

/// `sin(2πt)`, via `cos(2π(t - 1/4))`.
pub fn sin2pi(t: &Rational) -> f64 {
    cos2pi(&(t - ratio(1, 4)))
}

/// `e^{2πit}`.
pub fn exp2pi_i(t: &Rational) -> Complex64 {
    Complex64::new(cos2pi(t), sin2pi(t))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Integer power of a rational; `0^0 = 1`.
pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

/// Sparse multivariate polynomial in a fixed number of variables with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(&vec![0; nvars], c).expect("dimension matches");
        p
    }

    /// The polynomial `w_i` (zero-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(&e, Rational::one()).expect("dimension matches");
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·w^exponent`, pruning the term if it cancels.
    pub fn add_term(&mut self, exponent: &[u32], c: Rational) -> Result<()> {
        if exponent.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: exponent.len() });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(exponent) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(exponent);
                }
            }
            None => {
                self.terms.insert(exponent.to_vec(), c);
            }
        }
        Ok(())
    }

    pub fn with_term(mut self, exponent: &[u32], c: Rational) -> Result<Self> {
        self.add_term(exponent, c)?;
        Ok(self)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, w: &[Rational]) -> Result<Rational> {
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: w.len() });
        }
        let max_exp = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = w
            .iter()
            .map(|wi| {
                let mut row = Vec::with_capacity(max_exp + 1);
                row.push(Rational::one());
                for k in 1..=max_exp {
                    row.push(&row[k - 1] * wi);
                }
                row
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= &powers[i][k as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable counts");
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c.clone()).expect("same dimension");
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&e, ca * cb).expect("same dimension");
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("w{}", i + 1) } else { format!("w{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cos2pi_quarter_turns_are_exact() {
        assert_eq!(cos2pi(&rat(0)), 1.0);
        assert_eq!(cos2pi(&ratio(1, 2)), -1.0);
        assert_eq!(cos2pi(&ratio(1, 4)), 0.0);
        assert_eq!(cos2pi(&ratio(3, 4)), 0.0);
        assert_eq!(cos2pi(&ratio(-7, 4)), 0.0);
        assert_eq!(cos2pi(&rat(5)), 1.0);
        assert_eq!(sin2pi(&ratio(1, 4)), 1.0);
        assert_eq!(sin2pi(&ratio(3, 4)), -1.0);
    }

    #[test]
    fn cos2pi_matches_libm_on_a_grid() {
        for q in 1..=60i64 {
            for p in -q..=2 * q {
                let t = ratio(p, q);
                let reference = (std::f64::consts::TAU * p as f64 / q as f64).cos();
                assert!((cos2pi(&t) - reference).abs() <= 4.0 * f64::EPSILON * 4.0, "{t}");
            }
        }
        assert!((cos2pi(&ratio(1, 3)) + 0.5).abs() <= 4.0 * f64::EPSILON);
        assert!((cos2pi(&ratio(1, 6)) - 0.5).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), rat(-3));
        assert_eq!(parse_rational("1/-2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(ratio(2, 4).to_string(), "1/2");
        assert_eq!(rat(7).to_string(), "7");
        assert_eq!(parse_rational_list("1,2/3").unwrap(), vec![rat(1), ratio(2, 3)]);
        assert_eq!(parse_exponents("2,0,1").unwrap(), vec![2, 0, 1]);
        assert!(parse_exponents("-1").is_err());
    }

    #[test]
    fn poly_eval_examples() {
        let one = MultiPoly::constant(2, rat(1));
        assert_eq!(one.eval(&[ratio(7, 3), rat(-2)]).unwrap(), rat(1));
        let lin = &MultiPoly::var(2, 0) + &MultiPoly::var(2, 1);
        assert_eq!(lin.eval(&[rat(2), rat(3)]).unwrap(), rat(5));
        assert!(lin.eval(&[rat(2)]).is_err());
    }

    #[test]
    fn poly_add_term_examples() {
        let p = MultiPoly::zero(2).with_term(&[1, 1], ratio(1, 3)).unwrap();
        let q = p.clone().with_term(&[0, 4], rat(0)).unwrap();
        assert_eq!(p, q);
        let r = p.clone().with_term(&[3, 0], rat(5)).unwrap().with_term(&[3, 0], rat(-5)).unwrap();
        assert_eq!(p, r);
        let s = MultiPoly::zero(2).with_term(&[2, 0], rat(2)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&[2, 0]), rat(2));
        assert_eq!(s.to_string(), "2*w1^2");
        assert!(MultiPoly::zero(2).with_term(&[1], rat(1)).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        // 10^4! has 35660 decimal digits
        assert_eq!(factorial(10_000).to_string().len(), 35660);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| ratio(p, q))
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, nvars), small_rational()), 0..6).prop_map(
            move |terms| {
                let mut p = MultiPoly::zero(nvars);
                for (e, c) in terms {
                    p.add_term(&e, c).unwrap();
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn cos2pi_symmetries(p in -10_000i64..10_000, q in 1i64..500) {
            let t = ratio(p, q);
            let base = cos2pi(&t);
            prop_assert_eq!(base, cos2pi(&frac(&t)));
            prop_assert_eq!(base, cos2pi(&frac(&(rat(1) - frac(&t)))));
            let reference = (std::f64::consts::TAU * to_f64(&frac(&t))).cos();
            prop_assert!((base - reference).abs() <= 16.0 * f64::EPSILON);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(
            p in small_poly(3),
            q in small_poly(3),
            w in proptest::collection::vec(small_rational(), 3),
        ) {
            let ep = p.eval(&w).unwrap();
            let eq = q.eval(&w).unwrap();
            prop_assert_eq!((&p + &q).eval(&w).unwrap(), &ep + &eq);
            prop_assert_eq!((&p * &q).eval(&w).unwrap(), &ep * &eq);
            prop_assert!((&p - &p).is_zero());
        }
    }
}
