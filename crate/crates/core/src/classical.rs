//! Level-one holomorphic forms: Eisenstein series, the discriminant, the
//! quasimodular `E2`, and echelonized bases of `M_k` and `S_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{sigma, QSeries};

/// A holomorphic q-expansion tagged with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphicForm {
    pub weight: i64,
    pub series: QSeries,
}

impl HolomorphicForm {
    pub fn new(weight: i64, series: QSeries) -> Self {
        HolomorphicForm { weight, series }
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation()
    }

    pub fn is_cuspidal(&self) -> bool {
        self.series.constant_term().is_zero()
    }

    pub fn mul(&self, other: &HolomorphicForm) -> HolomorphicForm {
        HolomorphicForm::new(self.weight + other.weight, &self.series * &other.series)
    }
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * &binom;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein_q(k: i64, truncation: usize) -> Result<HolomorphicForm> {
    if k < 4 || k.is_odd() {
        return Err(Error::Domain(format!(
            "Eisenstein series needs even k >= 4, got {k}"
        )));
    }
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    let mut coeffs = Vec::with_capacity(truncation + 1);
    coeffs.push(BigRational::one());
    for n in 1..=truncation as u64 {
        coeffs.push(&factor * sigma(n, (k - 1) as u32)?);
    }
    Ok(HolomorphicForm::new(k, QSeries::new(coeffs)?))
}

/// Holomorphic `E2 = 1 - 24 sum sigma_1(n) q^n`. Quasimodular, tagged weight 2.
pub fn e2_hol(truncation: usize) -> HolomorphicForm {
    let mut coeffs = vec![BigRational::one()];
    for n in 1..=truncation as u64 {
        coeffs.push(BigRational::from_integer(
            -24 * sigma(n, 1).expect("n >= 1"),
        ));
    }
    HolomorphicForm::new(2, QSeries::new(coeffs).expect("nonempty"))
}

/// `Delta = (E4^3 - E6^2) / 1728`.
pub fn delta_q(truncation: usize) -> HolomorphicForm {
    let e4 = eisenstein_q(4, truncation).expect("weight 4").series;
    let e6 = eisenstein_q(6, truncation).expect("weight 6").series;
    let diff = &e4.pow(3) - &e6.pow(2);
    let scale = BigRational::new(BigInt::one(), BigInt::from(1728));
    HolomorphicForm::new(12, diff.scale(&scale))
}

pub fn dim_m(k: i64) -> usize {
    if k < 0 || k.is_odd() {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

pub fn dim_s(k: i64) -> usize {
    if k >= 4 && k.is_even() {
        dim_m(k) - 1
    } else {
        0
    }
}

/// Exponent pairs `(a, b)` with `4a + 6b = k`.
fn monomial_exponents(k: i64) -> Vec<(u32, u32)> {
    if k < 0 || k.is_odd() {
        return Vec::new();
    }
    (0..=k / 6)
        .filter(|b| (k - 6 * b) % 4 == 0)
        .map(|b| (((k - 6 * b) / 4) as u32, b as u32))
        .collect()
}

fn check_basis_truncation(k: i64, truncation: usize) -> Result<()> {
    let d = dim_m(k);
    if d > 0 && truncation < d + 1 {
        return Err(Error::TruncationTooSmall {
            required: d + 1,
            actual: truncation,
        });
    }
    Ok(())
}

/// Victor–Miller basis of `M_k`: element `i` is `q^i + O(q^dim)`.
pub fn basis_m(k: i64, truncation: usize) -> Result<Vec<HolomorphicForm>> {
    check_basis_truncation(k, truncation)?;
    let dim = dim_m(k);
    if dim == 0 {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(vec![HolomorphicForm::new(0, QSeries::one(truncation))]);
    }
    let e4 = eisenstein_q(4, truncation)?.series;
    let e6 = eisenstein_q(6, truncation)?.series;
    let mut rows: Vec<QSeries> = monomial_exponents(k)
        .into_iter()
        .map(|(a, b)| &e4.pow(a) * &e6.pow(b))
        .collect();
    debug_assert_eq!(rows.len(), dim);

    // Gauss–Jordan on the first `dim` coefficients, applied to whole rows.
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&r| !rows[r].coeffs()[col].is_zero())
            .ok_or_else(|| Error::Structural(format!("monomials of weight {k} are dependent")))?;
        rows.swap(col, pivot);
        let inv = rows[col].coeffs()[col].recip();
        rows[col] = rows[col].scale(&inv);
        for r in 0..dim {
            if r != col && !rows[r].coeffs()[col].is_zero() {
                let f = rows[r].coeffs()[col].clone();
                rows[r] = &rows[r] - &rows[col].scale(&f);
            }
        }
    }
    Ok(rows
        .into_iter()
        .map(|s| HolomorphicForm::new(k, s))
        .collect())
}

/// Cusp-form part of the Victor–Miller basis.
pub fn basis_s(k: i64, truncation: usize) -> Result<Vec<HolomorphicForm>> {
    Ok(basis_m(k, truncation)?
        .into_iter()
        .filter(|f| k > 0 && f.is_cuspidal())
        .collect())
}
