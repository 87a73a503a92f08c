//! Oracles and a small corpus shared by the integration tests.
//!
//! Everything here is computed from first principles (divisor sums by trial
//! division, the eta product, Gaussian elimination written out by hand) so
//! that the library is checked against something other than itself.

#![allow(dead_code)]

use nhmf::qseries::QSeries;
use nhmf::{BigInt, BigRational, NearlyForm};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

pub fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn series(c: Vec<BigRational>) -> QSeries {
    QSeries::new(c).unwrap()
}

/// `sigma_r(n)` by trial division.
pub fn divisor_sum(n: u64, r: u32) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(r))
        .sum()
}

/// `1 + c * sum sigma_{k-1}(n) q^n` with the normalizing constants written out.
pub fn eisenstein_oracle(k: i64, n: usize) -> QSeries {
    let c = match k {
        2 => r(-24),
        4 => r(240),
        6 => r(-504),
        8 => r(480),
        10 => r(-264),
        12 => frac(65520, 691),
        14 => r(-24),
        _ => panic!("no oracle constant for weight {k}"),
    };
    let mut out = vec![r(1)];
    out.extend(
        (1..=n as u64).map(|m| &c * BigRational::from_integer(divisor_sum(m, (k - 1) as u32))),
    );
    series(out)
}

/// `q * prod (1 - q^m)^24`.
pub fn delta_oracle(n: usize) -> QSeries {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        for _ in 0..24 {
            for i in (m..=n).rev() {
                let prev = p[i - m].clone();
                p[i] -= prev;
            }
        }
    }
    let mut out = vec![r(0)];
    out.extend(p[..n].iter().cloned().map(BigRational::from_integer));
    series(out)
}

pub fn holo(k: i64, s: QSeries) -> NearlyForm {
    let n = s.truncation();
    NearlyForm::new(k, n, vec![s]).unwrap()
}

pub fn e4(n: usize) -> NearlyForm {
    holo(4, eisenstein_oracle(4, n))
}

pub fn e6(n: usize) -> NearlyForm {
    holo(6, eisenstein_oracle(6, n))
}

pub fn delta(n: usize) -> NearlyForm {
    holo(12, delta_oracle(n))
}

/// `E2 - 3/(pi y)`, i.e. `E2 - 12 X`.
pub fn e2_star(n: usize) -> NearlyForm {
    let mut minus12 = vec![r(0); n + 1];
    minus12[0] = r(-12);
    NearlyForm::new(2, n, vec![eisenstein_oracle(2, n), series(minus12)]).unwrap()
}

pub struct Sample {
    pub name: &'static str,
    pub form: NearlyForm,
    /// Exact X-degree.
    pub degree: usize,
}

/// Assorted modular elements of `N_k^p`, all at truncation `n`.
pub fn corpus(n: usize) -> Vec<Sample> {
    let (e4, e6, d, e2s) = (e4(n), e6(n), delta(n), e2_star(n));
    let one = NearlyForm::constant(r(1), n);
    let s = |name, form: NearlyForm, degree| Sample { name, form, degree };
    vec![
        s("1", one, 0),
        s("E4", e4.clone(), 0),
        s("E6", e6.clone(), 0),
        s("Delta", d.clone(), 0),
        s("E4*E6", e4.mul(&e6), 0),
        s("E2*", e2s.clone(), 1),
        s("E2*^2", e2s.mul(&e2s), 2),
        s("E2*^3", e2s.mul(&e2s).mul(&e2s), 3),
        s("E2*^4", e2s.mul(&e2s).mul(&e2s).mul(&e2s), 4),
        s("raise E2*", e2s.raise(), 2),
        s("raise^2 E2*", e2s.raise_n(2), 3),
        s("raise E4", e4.raise(), 1),
        s("raise^2 E4", e4.raise_n(2), 2),
        s("E4*E2*", e4.mul(&e2s), 1),
        s("raise E4 * E2*", e4.raise().mul(&e2s), 2),
        s("raise Delta", d.raise(), 1),
        s("raise^3 Delta", d.raise_n(3), 3),
        s("Delta*E2*^2", d.mul(&e2s).mul(&e2s), 2),
        s("raise^2 (E4*Delta)", e4.mul(&d).raise_n(2), 2),
        s("E6*raise E2*", e6.mul(&e2s.raise()), 2),
        s(
            "E4^2 - 7 raise E6",
            &e4.mul(&e4) - &e6.raise().scale(&r(7)),
            1,
        ),
    ]
}

/// Cuspidal elements: combinations of raised cusp forms.
pub fn cusp_corpus(n: usize) -> Vec<Sample> {
    let (e4, e6, d, e2s) = (e4(n), e6(n), delta(n), e2_star(n));
    let s = |name, form: NearlyForm, degree| Sample { name, form, degree };
    vec![
        s("Delta", d.clone(), 0),
        s("Delta*E2*", d.mul(&e2s), 1),
        s("Delta*E2*^2", d.mul(&e2s).mul(&e2s), 2),
        s("raise^2 Delta", d.raise_n(2), 2),
        s("E4*Delta", e4.mul(&d), 0),
        s(
            "raise (E4*Delta) + 3 raise^3 Delta",
            &e4.mul(&d).raise() + &d.raise_n(3).scale(&r(3)),
            3,
        ),
        s("E6*raise Delta", e6.mul(&d.raise()), 1),
        s("Delta^2 E2*", d.mul(&d).mul(&e2s), 1),
    ]
}

pub fn random_rational(rng: &mut StdRng) -> BigRational {
    frac(rng.gen_range(-50..=50), rng.gen_range(1..=9))
}

/// A formal (not necessarily modular) nearly holomorphic q-expansion.
pub fn random_form(rng: &mut StdRng, weight: i64, degree: usize, n: usize) -> NearlyForm {
    let coeffs = (0..=degree)
        .map(|_| series((0..=n).map(|_| random_rational(rng)).collect()))
        .collect();
    NearlyForm::new(weight, n, coeffs).unwrap()
}

/// Rank by textbook Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Flattened `(j, n)` coefficients, padded to `degree + 1` X-slots.
pub fn flatten(f: &NearlyForm, degree: usize) -> Vec<BigRational> {
    (0..=degree)
        .flat_map(|j| f.coeff(j).coeffs().to_vec())
        .collect()
}

/// `dim M_k` by counting monomials `E4^a E6^b` of weight `k`.
pub fn dim_m_oracle(k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    (0..=k / 4).filter(|a| (k - 4 * a) % 6 == 0).count()
}

/// `dim N_k^p` through the quasimodular picture: `sum_{j <= p} dim M_{k-2j}`.
pub fn dim_n_oracle(k: i64, p: usize) -> usize {
    (0..=p as i64).map(|j| dim_m_oracle(k - 2 * j)).sum()
}

/// Decomposition by peeling: lower to the bottom of the top-degree ladder,
/// read off the holomorphic form there, subtract its raise, repeat.
///
/// Returns `(e2 coefficient, [(ell, holomorphic series)])`.
pub fn peel(f: &NearlyForm) -> Option<(BigRational, Vec<(i64, QSeries)>)> {
    let k = f.weight();
    let n = f.truncation();
    let mut rest = f.clone();
    let mut e2 = r(0);
    let mut parts: Vec<(i64, QSeries)> = Vec::new();
    while !rest.is_zero() {
        let d = rest.degree() as usize;
        let bottom = rest.lower_n(d);
        let w = k - 2 * d as i64;
        let h = bottom.coeff(0);
        if w == 0 && d > 0 {
            // Only the E2* ladder reaches weight 0: lower^d raise^(d-1) E2* is a constant.
            let chain = e2_star(n).raise_n(d - 1);
            let c = h.constant_term() / chain.lower_n(d).coeff(0).constant_term();
            e2 += &c;
            rest = &rest - &chain.scale(&c);
        } else if w >= 0 {
            // lower^d raise^d g = prod_{i=1..d} (-i (w + i - 1)) g
            let mut c = r(1);
            for i in 1..=d as i64 {
                c *= r(-i * (w + i - 1));
            }
            let g = h.scale(&c.recip());
            rest = &rest - &holo(w, g.clone()).raise_n(d);
            match parts.iter_mut().find(|(ell, _)| *ell == w) {
                Some((_, s)) => *s = &*s + &g,
                None => parts.push((w, g)),
            }
        } else {
            return None;
        }
    }
    parts.retain(|(_, s)| !s.is_zero());
    parts.sort_by_key(|(ell, _)| *ell);
    Some((e2, parts))
}

pub fn rational_is_positive(x: &BigRational) -> bool {
    x.is_positive()
}
