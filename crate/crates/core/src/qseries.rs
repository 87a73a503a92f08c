//! Truncated q-expansions with exact rational coefficients.
//!
//! A [`QSeries`] stores `a(0), ..., a(N)` for a fixed truncation `N`. Binary
//! operations between series of different truncation silently truncate to the
//! smaller one; nothing past the reliable range is ever produced.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Build a series from `a(0..=N)`. An empty vector is rejected.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "a q-series needs at least the constant coefficient".into(),
            ));
        }
        Ok(QSeries { coeffs })
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Result<Self> {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(truncation: usize) -> Self {
        QSeries {
            coeffs: vec![BigRational::zero(); truncation + 1],
        }
    }

    pub fn constant(value: BigRational, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = value;
        s
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(BigRational::one(), truncation)
    }

    /// `c * q^n`, truncated at `truncation` (zero if `n` lies beyond it).
    pub fn monomial(c: BigRational, n: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if n <= truncation {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `q^n`; `None` past the truncation.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation());
        QSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `D = q d/dq`: `a(n) -> n a(n)`.
    pub fn derivative(&self) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * BigInt::from(n))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSeries::one(self.truncation());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of `a(n) q^n` in double precision for a complex `q` with `|q| < 1`.
    pub fn eval_f64(&self, q: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            acc = acc * q + rational_to_f64(a);
        }
        acc
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[N={}](", self.truncation())?;
        let mut first = true;
        for (n, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}q^{}", format_rational(a), n)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}))", self.truncation() + 1)
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        QSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        QSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

/// Divisor power sum `sigma_r(n) = sum_{d | n} d^r`.
pub fn sigma(n: u64, r: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("sigma(n, r) needs n >= 1".into()));
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(r);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(r);
            }
        }
        d += 1;
    }
    Ok(total)
}

pub fn rational_to_f64(a: &BigRational) -> f64 {
    a.to_f64().unwrap_or_else(|| {
        if a.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` when `q = 1`.
pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Strict parser for `-?digits(/digits)?` with a nonzero denominator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(bad());
    }
    let mut numer: BigInt = num.parse().map_err(|_| bad())?;
    if neg {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}
