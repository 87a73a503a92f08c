//! Truncated weight modules for `sl2` in the basis `H, R, L` with
//! `[H,R] = 2R`, `[H,L] = -2L`, `[R,L] = H`.
//!
//! The root convention makes `L` the positive root vector: a Verma module
//! `N(lambda)` is generated by a vector `v` of weight `lambda` with `Lv = 0`,
//! and its weights are `lambda, lambda + 2, ...`. The analytic lowest-weight
//! modules (the discrete series chains under `R`) have their own constructor
//! so that the identification `D_{l-1,+} = L(l)` can be checked rather than
//! assumed.
//!
//! Matrices act on column vectors: column `j` holds the image of `e_j`.
//! Every module here is truncated after `depth + 1` basis vectors, so `R`
//! sends the last one to zero. Relation checks therefore skip the last column.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::nearly::NearlyForm;
use crate::qseries::format_rational;

/// Half the sum of the positive roots.
pub const RHO: i64 = -1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    weights: Vec<i64>,
    h: QMatrix,
    r: QMatrix,
    l: QMatrix,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl WeightModule {
    /// `H` is taken diagonal with the given weights.
    pub fn new(weights: Vec<i64>, r: QMatrix, l: QMatrix) -> Result<Self> {
        let n = weights.len();
        if [r.rows(), r.cols(), l.rows(), l.cols()]
            .iter()
            .any(|&d| d != n)
        {
            return Err(Error::Domain(format!("action matrices must be {n} x {n}")));
        }
        let h = QMatrix::diagonal(weights.iter().map(|&w| rat(w)));
        Ok(WeightModule { weights, h, r, l })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn act_h(&self) -> &QMatrix {
        &self.h
    }

    pub fn act_r(&self) -> &QMatrix {
        &self.r
    }

    pub fn act_l(&self) -> &QMatrix {
        &self.l
    }

    fn interior(&self) -> std::ops::Range<usize> {
        0..self.dim().saturating_sub(1)
    }

    /// `([H,R] - 2R, [H,L] + 2L, [R,L] - H)`.
    pub fn relation_residuals(&self) -> [QMatrix; 3] {
        let (h, r, l) = (&self.h, &self.r, &self.l);
        let hr = &(h * r) - &(r * h);
        let hl = &(h * l) - &(l * h);
        let rl = &(r * l) - &(l * r);
        [&hr - &r.scale(&rat(2)), &hl + &l.scale(&rat(2)), &rl - h]
    }

    /// All three commutation relations, exactly, on the truncation interior.
    pub fn relations_hold(&self) -> bool {
        self.h.is_diagonal()
            && self
                .relation_residuals()
                .iter()
                .all(|m| m.columns_zero(self.interior()))
    }

    /// `H^2/4 + RL/2 + LR/2`.
    pub fn casimir_matrix(&self) -> QMatrix {
        let quarter = BigRational::new(1.into(), 4.into());
        let half = BigRational::new(1.into(), 2.into());
        let hh = (&self.h * &self.h).scale(&quarter);
        let sym = &(&self.r * &self.l) + &(&self.l * &self.r);
        &hh + &sym.scale(&half)
    }

    /// The scalar by which the Casimir acts on the interior, if it is scalar there.
    pub fn casimir_scalar_on_interior(&self) -> Option<BigRational> {
        let c = self.casimir_matrix();
        let first = c[(0, 0)].clone();
        let shifted = &c - &QMatrix::identity(self.dim()).scale(&first);
        shifted.columns_zero(self.interior()).then_some(first)
    }

    /// Eigenvalue of `L R` on basis vector `e_m` (requires `e_m` in the interior).
    pub fn ladder_eigenvalue(&self, m: usize) -> Result<BigRational> {
        if m + 1 >= self.dim() {
            return Err(Error::Domain(format!(
                "basis vector {m} is at the truncation boundary"
            )));
        }
        let lr = &self.l * &self.r;
        let mut col: Vec<BigRational> = (0..self.dim()).map(|i| lr[(i, m)].clone()).collect();
        let value = std::mem::take(&mut col[m]);
        if col.iter().any(|x| !x.is_zero()) {
            return Err(Error::Structural(format!(
                "e_{m} is not an eigenvector of LR"
            )));
        }
        Ok(value)
    }

    /// True when the span of the given basis vectors is stable under `H`, `R`, `L`.
    pub fn is_submodule(&self, indices: &[usize]) -> bool {
        let inside = |i: usize| indices.contains(&i);
        [&self.h, &self.r, &self.l].iter().all(|m| {
            indices
                .iter()
                .all(|&j| (0..self.dim()).all(|i| inside(i) || m[(i, j)].is_zero()))
        })
    }

    /// Action on the quotient by the span of a basis-aligned submodule.
    pub fn quotient(&self, sub: &[usize]) -> Result<WeightModule> {
        if !self.is_submodule(sub) {
            return Err(Error::Structural(format!(
                "{sub:?} does not span a submodule"
            )));
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|i| !sub.contains(i)).collect();
        let pick = |m: &QMatrix| {
            let mut out = QMatrix::zeros(keep.len(), keep.len());
            for (a, &i) in keep.iter().enumerate() {
                for (b, &j) in keep.iter().enumerate() {
                    out[(a, b)] = m[(i, j)].clone();
                }
            }
            out
        };
        WeightModule::new(
            keep.iter().map(|&i| self.weights[i]).collect(),
            pick(&self.r),
            pick(&self.l),
        )
    }

    /// Weights, other than the generating weight `weights[0]`, carrying a
    /// nonzero vector killed by `L`.
    pub fn singular_weights(&self) -> Vec<i64> {
        let mut seen: Vec<i64> = Vec::new();
        for &w in &self.weights {
            if w == self.weights[0] || seen.contains(&w) {
                continue;
            }
            let cols: Vec<usize> = (0..self.dim()).filter(|&i| self.weights[i] == w).collect();
            if self.l.column_kernel_dim(&cols) > 0 {
                seen.push(w);
            }
        }
        seen
    }

    /// Duality of category O: same weights, `R -> L^T`, `L -> R^T`.
    pub fn dual(&self) -> WeightModule {
        WeightModule {
            weights: self.weights.clone(),
            h: self.h.transpose(),
            r: self.l.transpose(),
            l: self.r.transpose(),
        }
    }

    /// A diagonal change of basis `e_i -> s_i e'_i` intertwining both actions.
    ///
    /// Only meaningful for modules whose basis vectors have distinct weights,
    /// which is the case for every chain module built here.
    pub fn diagonal_isomorphism(&self, other: &WeightModule) -> Option<Vec<BigRational>> {
        if self.weights != other.weights {
            return None;
        }
        let n = self.dim();
        let pairs = [(&self.r, &other.r), (&self.l, &other.l)];
        // edges (i, j, ratio) meaning s_i * a_ij = s_j * b_ij
        let mut adj: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); n];
        for (a, b) in pairs {
            for i in 0..n {
                for j in 0..n {
                    match (a[(i, j)].is_zero(), b[(i, j)].is_zero()) {
                        (true, true) => {}
                        (false, false) => {
                            let ratio = &b[(i, j)] / &a[(i, j)];
                            adj[j].push((i, ratio.clone()));
                            adj[i].push((j, ratio.recip()));
                        }
                        _ => return None,
                    }
                }
            }
        }
        let mut scale: Vec<Option<BigRational>> = vec![None; n];
        for start in 0..n {
            if scale[start].is_some() {
                continue;
            }
            scale[start] = Some(BigRational::one());
            let mut queue = VecDeque::from([start]);
            while let Some(j) = queue.pop_front() {
                let sj = scale[j].clone().unwrap();
                for (i, ratio) in &adj[j] {
                    // s_i = ratio * s_j
                    let si = ratio * &sj;
                    match &scale[*i] {
                        Some(existing) if *existing != si => return None,
                        Some(_) => {}
                        None => {
                            scale[*i] = Some(si);
                            queue.push_back(*i);
                        }
                    }
                }
            }
        }
        let s: Vec<BigRational> = scale.into_iter().map(Option::unwrap).collect();
        for (a, b) in pairs {
            for i in 0..n {
                for j in 0..n {
                    if &a[(i, j)] * &s[i] != &b[(i, j)] * &s[j] {
                        return None;
                    }
                }
            }
        }
        Some(s)
    }
}

/// Chain module `e_0, ..., e_depth` of weights `base, base + 2, ...` with
/// `R e_m = e_{m + 1}` and `L e_{m + 1} = ladder[m] e_m`, `L e_0 = 0`.
fn chain_module(base: i64, ladder: &[BigRational]) -> WeightModule {
    let n = ladder.len() + 1;
    let mut r = QMatrix::zeros(n, n);
    let mut l = QMatrix::zeros(n, n);
    for m in 0..n - 1 {
        r[(m + 1, m)] = BigRational::one();
        l[(m, m + 1)] = ladder[m].clone();
    }
    let weights = (0..n as i64).map(|m| base + 2 * m).collect();
    WeightModule::new(weights, r, l).expect("square matrices")
}

/// Irreducible lowest-weight module of lowest weight `ell` (the discrete
/// series `D_{ell-1,+}`), with `depth + 1` basis vectors.
///
/// The ladder constants come from the Casimir: on the lowest weight vector
/// `Omega = ell^2/4 - ell/2`, and `LR = Omega - H^2/4 - H/2`.
pub fn lowest_weight_module(ell: i64, depth: usize) -> Result<WeightModule> {
    if ell <= 0 {
        return Err(Error::Domain(format!(
            "lowest weight must be positive, got {ell}"
        )));
    }
    let omega = casimir_scalar(ell);
    let ladder: Vec<BigRational> = (0..depth as i64)
        .map(|m| {
            let w = rat(ell + 2 * m);
            &omega - &w * &w / rat(4) - w / rat(2)
        })
        .collect();
    Ok(chain_module(ell, &ladder))
}

/// Verma module `N(lambda)` truncated to `depth + 1` basis vectors `R^m v`.
///
/// The constants `L R^m v = d_m R^{m-1} v` follow from `[R,L] = H` applied
/// to `R^{m-1} v`: `d_m = d_{m-1} - (lambda + 2(m - 1))`, `d_0 = 0`.
pub fn verma(lambda: i64, depth: usize) -> WeightModule {
    let mut ladder = Vec::with_capacity(depth);
    let mut d = BigRational::zero();
    for m in 0..depth as i64 {
        d -= rat(lambda + 2 * m);
        ladder.push(d.clone());
    }
    chain_module(lambda, &ladder)
}

pub fn singular_weights(lambda: i64, depth: usize) -> Vec<i64> {
    verma(lambda, depth).singular_weights()
}

pub fn dual_module(m: &WeightModule) -> WeightModule {
    m.dual()
}

/// Central character of `N(lambda)` evaluated on the Casimir:
/// `((lambda + rho)^2 - 1) / 4 = lambda^2/4 - lambda/2`.
pub fn casimir_scalar(lambda: i64) -> BigRational {
    let shifted = rat(lambda + RHO);
    (&shifted * &shifted - rat(1)) / rat(4)
}

/// Summary of a truncated Verma module, as printed by the command line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VermaReport {
    pub lambda: i64,
    pub depth: usize,
    pub weights: Vec<i64>,
    /// `L R^m v = ladder[m-1] R^{m-1} v`.
    #[serde(serialize_with = "ser_rationals")]
    pub ladder: Vec<BigRational>,
    pub singular_weights: Vec<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub casimir: BigRational,
    pub relations_hold: bool,
}

pub fn verma_report(lambda: i64, depth: usize) -> VermaReport {
    let m = verma(lambda, depth);
    VermaReport {
        lambda,
        depth,
        weights: m.weights().to_vec(),
        ladder: (1..m.dim())
            .map(|j| m.act_l()[(j - 1, j)].clone())
            .collect(),
        singular_weights: m.singular_weights(),
        casimir: casimir_scalar(lambda),
        relations_hold: m.relations_hold(),
    }
}

/// What was found when the module generated by `E2*` was built inside the
/// space of nearly holomorphic forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2ModuleReport {
    pub depth: usize,
    pub weights: Vec<i64>,
    /// `lower(E2*)` as a constant.
    #[serde(serialize_with = "ser_rational")]
    pub lower_e2_star: BigRational,
    /// `L u_{m+1} = ladder[m] u_m` for `u_0 = 1`, `u_{m+1} = raise^m(E2*)`.
    #[serde(serialize_with = "ser_rationals")]
    pub ladder: Vec<BigRational>,
    pub relations_hold: bool,
    pub trivial_submodule: bool,
    pub quotient_weights: Vec<i64>,
    pub quotient_is_lowest_weight_2: bool,
    pub matches_dual_verma: bool,
    pub matches_verma: bool,
    pub non_split: bool,
}

impl E2ModuleReport {
    /// `V = N(0)^dual`, sitting in `0 -> C -> V -> D_{1,+} -> 0` without splitting.
    pub fn is_match(&self) -> bool {
        self.relations_hold
            && self.trivial_submodule
            && self.quotient_is_lowest_weight_2
            && self.matches_dual_verma
            && !self.matches_verma
            && self.non_split
    }
}

fn ser_rational<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

fn ser_rationals<S: serde::Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// `target = c * basis` for a rational `c`, or a structural error.
fn proportionality(target: &NearlyForm, basis: &NearlyForm) -> Result<BigRational> {
    let pivot = basis
        .coeffs()
        .iter()
        .enumerate()
        .find_map(|(j, s)| s.coeffs().iter().position(|a| !a.is_zero()).map(|n| (j, n)));
    let Some((j, n)) = pivot else {
        return Err(Error::Structural(
            "proportionality against the zero form".into(),
        ));
    };
    let c = &target.coeff(j).coeffs()[n] / &basis.coeff(j).coeffs()[n];
    if &basis.scale(&c) != target {
        return Err(Error::Structural(format!(
            "form of weight {} is not a multiple of the previous chain element",
            target.weight()
        )));
    }
    Ok(c)
}

/// Build the module generated by `E2*` concretely from raise/lower on
/// q-expansions and compare it with `N(0)^dual` and with `D_{1,+}`.
pub fn e2_module_structure(depth: usize) -> Result<E2ModuleReport> {
    if depth < 2 {
        return Err(Error::Domain("e2 module check needs depth >= 2".into()));
    }
    const TRUNCATION: usize = 8;
    let constant = NearlyForm::constant(BigRational::one(), TRUNCATION);
    let mut chain = vec![constant.clone(), NearlyForm::e2_star(TRUNCATION)];
    while chain.len() < depth + 1 {
        let next = chain.last().unwrap().raise();
        chain.push(next);
    }
    let n = chain.len();

    let mut r = QMatrix::zeros(n, n);
    let mut l = QMatrix::zeros(n, n);
    if !constant.raise().is_zero() || !constant.lower().is_zero() {
        return Err(Error::Structural(
            "constants are not killed by raise and lower".into(),
        ));
    }
    for m in 1..n - 1 {
        r[(m + 1, m)] = proportionality(&chain[m].raise(), &chain[m + 1])?;
    }
    let mut ladder = Vec::with_capacity(n - 1);
    for m in 1..n {
        let lowered = chain[m].lower();
        let c = proportionality(&lowered, &chain[m - 1])?;
        l[(m - 1, m)] = c.clone();
        ladder.push(c);
    }
    let weights: Vec<i64> = chain.iter().map(NearlyForm::weight).collect();
    let module = WeightModule::new(weights.clone(), r, l)?;

    let trivial_submodule = module.is_submodule(&[0]);
    let quotient = module.quotient(&[0]);
    let quotient_weights = quotient
        .as_ref()
        .map(|q| q.weights().to_vec())
        .unwrap_or_default();
    let quotient_is_lowest_weight_2 = quotient
        .map(|q| {
            q.diagonal_isomorphism(&lowest_weight_module(2, depth - 1).unwrap())
                .is_some()
        })
        .unwrap_or(false);
    let dual_verma = verma(0, depth).dual();

    Ok(E2ModuleReport {
        depth,
        lower_e2_star: chain[1].lower().coeff(0).constant_term().clone(),
        non_split: !ladder[0].is_zero(),
        ladder,
        relations_hold: module.relations_hold(),
        trivial_submodule,
        quotient_weights,
        quotient_is_lowest_weight_2,
        matches_dual_verma: module.diagonal_isomorphism(&dual_verma).is_some(),
        matches_verma: module.diagonal_isomorphism(&verma(0, depth)).is_some(),
        weights,
    })
}
