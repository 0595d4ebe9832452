//! Exact truncated power series in `q` with big-integer coefficients.
//!
//! Every series carries a degree cap `D`; products and quotients discard terms above it.
//! Nothing here uses floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(0, BigInt::one(), cap)
    }

    /// `c q^e`, or zero when `e > cap`.
    pub fn monomial(exponent: usize, c: BigInt, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        if exponent <= cap {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Truncates or zero-extends the coefficient list to degree `cap`.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, cap: usize) -> Self {
        coeffs.resize(cap + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; zero above the cap.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// Divides in place by `1 - q^e` for `e >= 1`.
    pub fn div_one_minus_q_pow(&mut self, e: usize) {
        assert!(e >= 1, "division by 1 - q^0 is undefined");
        for n in e..self.coeffs.len() {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] += prev;
        }
    }

    /// Multiplies in place by `1 - q^e`.
    pub fn mul_one_minus_q_pow(&mut self, e: usize) {
        for n in (e..self.coeffs.len()).rev() {
            let prev = self.coeffs[n - e].clone();
            self.coeffs[n] -= prev;
        }
    }

    fn binary(&self, rhs: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let cap = self.cap().min(rhs.cap());
        Self {
            coeffs: (0..=cap).map(|n| f(&self.coeffs[n], &rhs.coeffs[n])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let cap = self.cap().min(rhs.cap());
        let mut out = TruncatedSeries::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(cap + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    /// One `n<TAB>c_n` line per coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}\t{c}")?;
        }
        Ok(())
    }
}

/// The q-binomial coefficient `[M+N over M]` as an exact polynomial of degree `MN`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianPolynomial {
    pub m: usize,
    pub n: usize,
    pub coeffs: Vec<BigInt>,
}

impl GaussianPolynomial {
    pub fn as_series(&self, cap: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs.clone(), cap)
    }
}

/// Builds `[M+N over M]` with the q-Pascal rule `[A,B] = [A-1,B] + q^(A-B) [A-1,B-1]`.
pub fn gaussian(m: usize, n: usize) -> GaussianPolynomial {
    // row[b] holds [a over b] for the current a.
    let total = m + n;
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for a in 1..=total {
        let mut next = Vec::with_capacity(a + 1);
        for b in 0..=a {
            let mut poly = if b < a { row[b].clone() } else { Vec::new() };
            if b >= 1 {
                let shift = a - b;
                let lower = &row[b - 1];
                if poly.len() < lower.len() + shift {
                    poly.resize(lower.len() + shift, BigInt::zero());
                }
                for (i, c) in lower.iter().enumerate() {
                    poly[i + shift] += c;
                }
            }
            next.push(poly);
        }
        row = next;
    }
    GaussianPolynomial {
        m,
        n,
        coeffs: row.swap_remove(m),
    }
}

/// How many factors of the Pochhammer reciprocal to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terms {
    Finite(usize),
    /// Every factor whose exponent does not exceed the cap.
    Infinite,
}

/// `1 / prod_{i < terms} (1 - q^(a + i))`, truncated at `cap`.
pub fn inv_pochhammer(a: usize, terms: Terms, cap: usize) -> TruncatedSeries {
    assert!(a >= 1, "the first exponent must be positive");
    let mut s = TruncatedSeries::one(cap);
    let count = match terms {
        Terms::Finite(t) => t,
        Terms::Infinite => (cap + 1).saturating_sub(a),
    };
    for i in 0..count {
        let e = a + i;
        if e > cap {
            break;
        }
        s.div_one_minus_q_pow(e);
    }
    s
}

/// Garvan's generating function for `N_k(m, n)`:
/// `(1/(q;q)_inf) * sum_{j>=1} (-1)^(j-1) q^(j((2k-1)j-1)/2 + |m|j) (1 - q^j)`.
///
/// For `k = 1` this is the crank series, whose `q^1` coefficient at `m = 0` is the raw value -1.
pub fn nk_series(k: usize, m: i64, cap: usize) -> TruncatedSeries {
    assert!(k >= 1, "k must be positive");
    let a = m.unsigned_abs() as usize;
    let mut numerator = TruncatedSeries::zero(cap);
    for j in 1usize.. {
        let e = j * ((2 * k - 1) * j - 1) / 2 + a * j;
        if e > cap {
            break;
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        numerator.coeffs[e] += sign;
        if e + j <= cap {
            numerator.coeffs[e + j] -= sign;
        }
    }
    let mut s = numerator;
    for e in 1..=cap {
        s.div_one_minus_q_pow(e);
    }
    s
}

/// `N_k(m, n)` read off the series.
pub fn nk_count(k: usize, m: i64, n: usize) -> BigInt {
    nk_series(k, m, n).coeff(n)
}
