//! Nearly holomorphic forms `F = sum_j c_j X^j` with `X = 1/(4 pi y)`, and the
//! normalized Maass operators acting on them.
//!
//! In `X` coordinates the raising operator `R_k = k/y + 2i d/dtau` and the
//! lowering operator `L_k = -2i y^2 d/dtaubar` become
//!
//! ```text
//! R_k = -4 pi * delta,   L_k = -(1/(4 pi)) * epsilon,
//! delta(sum c_j X^j)   = sum_j D(c_j) X^j - (k - j) c_j X^(j+1)
//! epsilon(sum c_j X^j) = sum_j j c_j X^(j-1)
//! ```
//!
//! where `D = q d/dq`. Both are rational, and so is the Casimir operator
//! `k^2/4 + delta epsilon / 2 + epsilon delta / 2`, since `R L = delta epsilon` and
//! `L R = epsilon delta`. On weight `k`, `epsilon delta - delta epsilon = -k`.

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use log::warn;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classical::{delta_q, e2_hol, eisenstein_q, HolomorphicForm};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// Imaginary parts below this are refused by numeric evaluation.
pub const MIN_IMAG: f64 = 0.1;
/// Imaginary parts below this are evaluated with a warning.
pub const WARN_IMAG: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearlyForm {
    weight: i64,
    truncation: usize,
    // trailing zero coefficients are always trimmed
    coeffs: Vec<QSeries>,
}

impl NearlyForm {
    /// `coeffs[j]` is the coefficient of `X^j`; every entry must have truncation `truncation`.
    pub fn new(weight: i64, truncation: usize, coeffs: Vec<QSeries>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.truncation() != truncation) {
            return Err(Error::Domain(format!(
                "coefficient truncation {} differs from form truncation {truncation}",
                bad.truncation()
            )));
        }
        Ok(Self::from_parts(weight, truncation, coeffs))
    }

    fn from_parts(weight: i64, truncation: usize, mut coeffs: Vec<QSeries>) -> Self {
        while coeffs.last().is_some_and(QSeries::is_zero) {
            coeffs.pop();
        }
        NearlyForm {
            weight,
            truncation,
            coeffs,
        }
    }

    pub fn zero(weight: i64, truncation: usize) -> Self {
        NearlyForm {
            weight,
            truncation,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(value: BigRational, truncation: usize) -> Self {
        Self::from_parts(0, truncation, vec![QSeries::constant(value, truncation)])
    }

    pub fn holomorphic(f: &HolomorphicForm) -> Self {
        Self::from_parts(f.weight, f.truncation(), vec![f.series.clone()])
    }

    /// `E2* = E2 - 3/(pi y) = E2 - 12 X`.
    pub fn e2_star(truncation: usize) -> Self {
        let c1 = QSeries::constant(BigRational::from_integer((-12).into()), truncation);
        Self::from_parts(2, truncation, vec![e2_hol(truncation).series, c1])
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    /// Coefficient of `X^j` (the zero series past the degree).
    pub fn coeff(&self, j: usize) -> QSeries {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.truncation))
    }

    /// Highest power of `X` present; `-1` for the zero form.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_cuspidal(&self) -> bool {
        self.coeffs.iter().all(|c| c.constant_term().is_zero())
    }

    /// The holomorphic form `c_0`, if the degree is at most zero.
    pub fn as_holomorphic(&self) -> Option<HolomorphicForm> {
        (self.degree() <= 0).then(|| HolomorphicForm::new(self.weight, self.coeff(0)))
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation);
        Self::from_parts(
            self.weight,
            n,
            self.coeffs.iter().map(|c| c.truncate(n)).collect(),
        )
    }

    pub fn with_weight(&self, weight: i64) -> Self {
        NearlyForm {
            weight,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_parts(
            self.weight,
            self.truncation,
            self.coeffs.iter().map(|s| s.scale(c)).collect(),
        )
    }

    pub fn mul(&self, other: &NearlyForm) -> NearlyForm {
        let n = self.truncation.min(other.truncation);
        let weight = self.weight + other.weight;
        if self.is_zero() || other.is_zero() {
            return Self::zero(weight, n);
        }
        let mut out = vec![QSeries::zero(n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_parts(weight, n, out)
    }

    /// Normalized raising operator `delta = -(1/(4 pi)) R_k`; weight goes up by 2.
    pub fn raise(&self) -> NearlyForm {
        let n = self.truncation;
        let k = self.weight;
        let mut out = vec![QSeries::zero(n); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j] = &out[j] + &c.derivative();
            let factor = BigRational::from_integer(BigInt::from(k - j as i64));
            out[j + 1] = &out[j + 1] - &c.scale(&factor);
        }
        Self::from_parts(k + 2, n, out)
    }

    /// Normalized lowering operator `epsilon = -4 pi L_k`; weight goes down by 2.
    pub fn lower(&self) -> NearlyForm {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&BigRational::from_integer(BigInt::from(j))))
            .collect();
        Self::from_parts(self.weight - 2, self.truncation, out)
    }

    /// Casimir operator `k^2/4 + (delta epsilon + epsilon delta)/2`.
    pub fn casimir(&self) -> NearlyForm {
        let k = BigInt::from(self.weight);
        let quarter = BigRational::new(&k * &k, BigInt::from(4));
        let half = BigRational::new(1.into(), 2.into());
        let rl = self.lower().raise();
        let lr = self.raise().lower();
        &self.scale(&quarter) + &(&rl + &lr).scale(&half)
    }

    pub fn raise_n(&self, m: usize) -> NearlyForm {
        (0..m).fold(self.clone(), |f, _| f.raise())
    }

    pub fn lower_n(&self, m: usize) -> NearlyForm {
        (0..m).fold(self.clone(), |f, _| f.lower())
    }

    /// Double-precision value `sum_j c_j(q) (4 pi Im tau)^(-j)`.
    pub fn evaluate(&self, tau: Complex64) -> Result<Complex64> {
        check_region(tau)?;
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        let x = 1.0 / (4.0 * PI * tau.im);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_f64(q);
        }
        Ok(acc)
    }

    /// `(F|_k g)(tau) = (c tau + d)^(-k) F(g tau)`.
    pub fn slash_numeric(&self, g: &MoebiusElement, tau: Complex64) -> Result<Complex64> {
        check_region(tau)?;
        let j = g.denominator(tau);
        Ok(j.powi(-(self.weight as i32)) * self.evaluate(g.apply(tau))?)
    }

    /// Value at `g` of the associated function on `SL2(R)`: `(F|_k g)(i)`.
    pub fn lift_value(&self, g: &MoebiusElement) -> Result<Complex64> {
        self.slash_numeric(g, Complex64::new(0.0, 1.0))
    }
}

/// Forms by name: `one`, `e2` (holomorphic, not modular), `e2star`, `delta`,
/// or `e<k>` for even `k >= 4`. Case-insensitive.
pub fn named_form(name: &str, truncation: usize) -> Result<NearlyForm> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "one" => Ok(NearlyForm::constant(BigRational::one(), truncation)),
        "e2" => Ok(NearlyForm::holomorphic(&e2_hol(truncation))),
        "e2star" => Ok(NearlyForm::e2_star(truncation)),
        "delta" => Ok(NearlyForm::holomorphic(&delta_q(truncation))),
        _ => {
            let k: i64 = lower
                .strip_prefix('e')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::Domain(format!("unknown form name {name:?}")))?;
            Ok(NearlyForm::holomorphic(&eisenstein_q(k, truncation)?))
        }
    }
}

fn check_region(tau: Complex64) -> Result<()> {
    if tau.im.is_nan() || tau.im < MIN_IMAG {
        return Err(Error::Domain(format!(
            "evaluation needs Im(tau) >= {MIN_IMAG}, got {}",
            tau.im
        )));
    }
    if tau.im < WARN_IMAG {
        warn!(
            "Im(tau) = {} is below {WARN_IMAG}; truncation tail may be visible",
            tau.im
        );
    }
    Ok(())
}

impl<'a> Add<&'a NearlyForm> for &'a NearlyForm {
    type Output = NearlyForm;
    /// Panics if the weights differ.
    fn add(self, rhs: &NearlyForm) -> NearlyForm {
        assert_eq!(self.weight, rhs.weight, "adding forms of different weight");
        let n = self.truncation.min(rhs.truncation);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..len)
            .map(|j| &self.coeff(j).truncate(n) + &rhs.coeff(j).truncate(n))
            .collect();
        NearlyForm::from_parts(self.weight, n, out)
    }
}

impl<'a> Sub<&'a NearlyForm> for &'a NearlyForm {
    type Output = NearlyForm;
    fn sub(self, rhs: &NearlyForm) -> NearlyForm {
        self + &(-rhs)
    }
}

impl Neg for &NearlyForm {
    type Output = NearlyForm;
    fn neg(self) -> NearlyForm {
        NearlyForm::from_parts(
            self.weight,
            self.truncation,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

/// An integer matrix of determinant one acting by Moebius transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoebiusElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl MoebiusElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!("det of ({a},{b};{c},{d}) is not 1")));
        }
        Ok(MoebiusElement { a, b, c, d })
    }

    pub const IDENTITY: MoebiusElement = MoebiusElement {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const T: MoebiusElement = MoebiusElement {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const S: MoebiusElement = MoebiusElement {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn compose(&self, o: &MoebiusElement) -> MoebiusElement {
        MoebiusElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn denominator(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.denominator(tau)
    }
}
