//! Executable structure theorems at level one.
//!
//! `N_k^p` is spanned by `delta^{(k-l)/2} M_l` for `l = k, k-2, ..., max(1, k-2p)`
//! together with `delta^{(k-2)/2} E2*` when `k` is even and `2 <= k < 2 + 2p`;
//! `N_0^p` is the constants. Decomposition is a global exact linear solve
//! against these generators followed by a residual check on every available
//! coefficient, so a successful decomposition is also a membership proof up to
//! the working truncation.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classical::{basis_m, dim_m, eisenstein_q, HolomorphicForm};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::nearly::NearlyForm;
use crate::qseries::QSeries;
use crate::sl2rep::lowest_weight_module;

/// Extra q-exponents, beyond `dim_N`, that the linear solve may pivot on.
pub const SOLVE_MARGIN: usize = 10;
/// Minimum number of q-exponents past the solve window used only for verification.
pub const VERIFY_MARGIN: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// `delta^{(k-ell)/2}` of the `index`-th Victor–Miller basis element of `M_ell`.
    Form { ell: i64, index: usize },
    /// `delta^{(k-2)/2} E2*`.
    E2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: Label,
    pub form: NearlyForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSet {
    pub weight: i64,
    pub degree_bound: usize,
    pub truncation: usize,
    pub cuspidal: bool,
    pub generators: Vec<Generator>,
}

/// `l` with `l = k (mod 2)` and `max(1, k - 2p) <= l <= k`, ascending.
pub fn admissible_weights(k: i64, p: usize) -> Vec<i64> {
    let low = (k - 2 * p as i64).max(1);
    (low..=k).filter(|l| (k - l).is_even()).collect()
}

/// Whether `delta^{(k-2)/2} E2*` belongs to `N_k^p`.
pub fn has_e2_term(k: i64, p: usize) -> bool {
    k.is_even() && 2 <= k && k < 2 + 2 * p as i64
}

pub fn dim_n(k: i64, p: usize) -> usize {
    if k == 0 {
        return 1;
    }
    admissible_weights(k, p)
        .into_iter()
        .map(dim_m)
        .sum::<usize>()
        + usize::from(has_e2_term(k, p))
}

/// `dim_S` summed over the admissible weights: the dimension of `N_k^p` cusp forms.
pub fn dim_n_cuspidal(k: i64, p: usize) -> usize {
    admissible_weights(k, p)
        .into_iter()
        .map(crate::classical::dim_s)
        .sum()
}

fn build_set(k: i64, p: usize, truncation: usize, cuspidal: bool) -> Result<SpanningSet> {
    let mut generators = Vec::new();
    if k == 0 && !cuspidal {
        generators.push(Generator {
            label: Label::Form { ell: 0, index: 0 },
            form: NearlyForm::constant(BigRational::one(), truncation),
        });
    } else if k != 0 {
        for ell in admissible_weights(k, p) {
            let basis = basis_m(ell, truncation)?;
            let power = ((k - ell) / 2) as usize;
            for (index, f) in basis.iter().enumerate() {
                if cuspidal && !f.is_cuspidal() {
                    continue;
                }
                generators.push(Generator {
                    label: Label::Form { ell, index },
                    form: NearlyForm::holomorphic(f).raise_n(power),
                });
            }
        }
        if !cuspidal && has_e2_term(k, p) {
            generators.push(Generator {
                label: Label::E2,
                form: NearlyForm::e2_star(truncation).raise_n(((k - 2) / 2) as usize),
            });
        }
    }
    Ok(SpanningSet {
        weight: k,
        degree_bound: p,
        truncation,
        cuspidal,
        generators,
    })
}

/// Generators of `N_k^p`, each at truncation `truncation`.
pub fn spanning_set(k: i64, p: usize, truncation: usize) -> Result<SpanningSet> {
    build_set(k, p, truncation, false)
}

/// Generators of the cusp forms in `N_k^p`: raised cuspidal basis elements only.
pub fn cuspidal_spanning_set(k: i64, p: usize, truncation: usize) -> Result<SpanningSet> {
    build_set(k, p, truncation, true)
}

impl SpanningSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.generators.iter().map(|g| g.label).collect()
    }

    /// Rows indexed by `(j, n)` for `j <= p`, `n <= max_exponent` (row `j * (max_exponent + 1) + n`);
    /// one column per generator.
    pub fn coefficient_matrix(&self, max_exponent: usize) -> QMatrix {
        let max_exponent = max_exponent.min(self.truncation);
        let per_degree = max_exponent + 1;
        let rows = (self.degree_bound + 1) * per_degree;
        let mut m = QMatrix::zeros(rows, self.len());
        for (col, g) in self.generators.iter().enumerate() {
            for (j, c) in g
                .form
                .coeffs()
                .iter()
                .enumerate()
                .take(self.degree_bound + 1)
            {
                for (n, a) in c.coeffs().iter().enumerate().take(per_degree) {
                    m[(j * per_degree + n, col)] = a.clone();
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.coefficient_matrix(self.truncation).rank()
    }

    /// `sum_i coords[i] * generator_i`.
    pub fn combine(&self, coords: &[BigRational]) -> NearlyForm {
        assert_eq!(coords.len(), self.len(), "one coordinate per generator");
        self.generators.iter().zip(coords).fold(
            NearlyForm::zero(self.weight, self.truncation),
            |acc, (g, c)| {
                if c.is_zero() {
                    acc
                } else {
                    &acc + &g.form.scale(c)
                }
            },
        )
    }

    /// Number of leading q-exponents the solver may pivot on.
    pub fn solve_window(&self) -> usize {
        let dim = if self.cuspidal {
            dim_n_cuspidal(self.weight, self.degree_bound)
        } else {
            dim_n(self.weight, self.degree_bound)
        };
        dim + SOLVE_MARGIN
    }

    /// Smallest truncation accepted by [`Decomposer::new`].
    pub fn required_truncation(&self) -> usize {
        self.solve_window() + VERIFY_MARGIN - 1
    }
}

/// Exact solver bound to one spanning set.
#[derive(Clone, Debug)]
pub struct Decomposer {
    set: SpanningSet,
    // (X-degree, q-exponent) positions whose submatrix is invertible
    pivots: Vec<(usize, usize)>,
    inverse: QMatrix,
}

impl Decomposer {
    pub fn new(set: SpanningSet) -> Result<Self> {
        let required = set.required_truncation();
        if set.truncation < required {
            return Err(Error::TruncationTooSmall {
                required,
                actual: set.truncation,
            });
        }
        let d = set.len();
        let window = set.solve_window();
        // Incremental echelon over candidate rows until `d` independent ones are found.
        let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut pivots = Vec::new();
        'search: for j in 0..=set.degree_bound {
            for n in 0..window {
                if pivots.len() == d {
                    break 'search;
                }
                let mut row: Vec<BigRational> = set
                    .generators
                    .iter()
                    .map(|g| {
                        g.form
                            .coeffs()
                            .get(j)
                            .map_or_else(BigRational::zero, |c| c.coeffs()[n].clone())
                    })
                    .collect();
                for (col, basis_row) in &echelon {
                    if !row[*col].is_zero() {
                        let f = row[*col].clone();
                        for (x, b) in row.iter_mut().zip(basis_row) {
                            *x -= &f * b;
                        }
                    }
                }
                if let Some(col) = row.iter().position(|x| !x.is_zero()) {
                    let inv = row[col].recip();
                    row.iter_mut().for_each(|x| *x *= &inv);
                    echelon.push((col, row));
                    pivots.push((j, n));
                }
            }
        }
        if pivots.len() < d {
            return Err(Error::Structural(format!(
                "generators of N_{}^{} are dependent on the solve window (rank {} < {d})",
                set.weight,
                set.degree_bound,
                pivots.len()
            )));
        }
        let square = QMatrix::from_rows(
            pivots
                .iter()
                .map(|&(j, n)| {
                    set.generators
                        .iter()
                        .map(|g| position(&g.form, j, n))
                        .collect()
                })
                .collect(),
        );
        let inverse = square
            .inverse()
            .ok_or_else(|| Error::Structural("pivot submatrix is singular".into()))?;
        Ok(Decomposer {
            set,
            pivots,
            inverse,
        })
    }

    pub fn spanning_set(&self) -> &SpanningSet {
        &self.set
    }

    /// Coordinates of `f` in the generator order of the spanning set.
    pub fn coordinates(&self, f: &NearlyForm) -> Result<Vec<BigRational>> {
        let set = &self.set;
        if f.weight() != set.weight {
            return Err(Error::NotInSpace(format!(
                "weight {} does not match spanning set weight {}",
                f.weight(),
                set.weight
            )));
        }
        if f.degree() > set.degree_bound as i64 {
            return Err(Error::NotInSpace(format!(
                "degree {} exceeds the bound {}",
                f.degree(),
                set.degree_bound
            )));
        }
        if f.truncation() < set.truncation {
            return Err(Error::TruncationTooSmall {
                required: set.truncation,
                actual: f.truncation(),
            });
        }
        let f = f.truncate(set.truncation);
        let rhs: Vec<BigRational> = self
            .pivots
            .iter()
            .map(|&(j, n)| position(&f, j, n))
            .collect();
        let coords = self.inverse.mul_vec(&rhs);
        let residual = &f - &set.combine(&coords);
        if !residual.is_zero() {
            let (j, n) = first_nonzero(&residual);
            return Err(Error::NotInSpace(format!(
                "residual coefficient of X^{j} q^{n} is nonzero; the input is not in N_{}^{}{}",
                set.weight,
                set.degree_bound,
                if set.cuspidal { " (cusp forms)" } else { "" }
            )));
        }
        Ok(coords)
    }

    pub fn decompose(&self, f: &NearlyForm) -> Result<Decomposition> {
        let coords = self.coordinates(f)?;
        Ok(Decomposition::from_coordinates(&self.set, &coords))
    }
}

fn position(f: &NearlyForm, j: usize, n: usize) -> BigRational {
    f.coeffs()
        .get(j)
        .map_or_else(BigRational::zero, |c| c.coeffs()[n].clone())
}

fn first_nonzero(f: &NearlyForm) -> (usize, usize) {
    f.coeffs()
        .iter()
        .enumerate()
        .find_map(|(j, c)| c.coeffs().iter().position(|a| !a.is_zero()).map(|n| (j, n)))
        .unwrap_or((0, 0))
}

/// One holomorphic form per admissible weight plus the `E2*` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub weight: i64,
    pub truncation: usize,
    /// Only nonzero parts are stored.
    pub parts: BTreeMap<i64, HolomorphicForm>,
    pub e2_coeff: BigRational,
}

impl Decomposition {
    pub fn zero(weight: i64, truncation: usize) -> Self {
        Decomposition {
            weight,
            truncation,
            parts: BTreeMap::new(),
            e2_coeff: BigRational::zero(),
        }
    }

    fn from_coordinates(set: &SpanningSet, coords: &[BigRational]) -> Self {
        let mut out = Decomposition::zero(set.weight, set.truncation);
        let mut sums: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (g, c) in set.generators.iter().zip(coords) {
            match g.label {
                Label::E2 => out.e2_coeff = c.clone(),
                Label::Form { ell, index } => {
                    let base = basis_m(ell, set.truncation).expect("validated by the spanning set")
                        [index]
                        .series
                        .scale(c);
                    let entry = sums
                        .entry(ell)
                        .or_insert_with(|| QSeries::zero(set.truncation));
                    *entry = &*entry + &base;
                }
            }
        }
        out.parts = sums
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(ell, s)| (ell, HolomorphicForm::new(ell, s)))
            .collect();
        out
    }

    /// `c * delta^{(k-2)/2} E2* + sum_l delta^{(k-l)/2} f_l`.
    pub fn reassemble(&self) -> NearlyForm {
        let mut acc = NearlyForm::zero(self.weight, self.truncation);
        for (ell, f) in &self.parts {
            let raised = NearlyForm::holomorphic(f).raise_n(((self.weight - ell) / 2) as usize);
            acc = &acc + &raised;
        }
        if !self.e2_coeff.is_zero() {
            let chain =
                NearlyForm::e2_star(self.truncation).raise_n(((self.weight - 2) / 2) as usize);
            acc = &acc + &chain.scale(&self.e2_coeff);
        }
        acc
    }

    pub fn is_cuspidal(&self) -> bool {
        self.e2_coeff.is_zero() && self.parts.values().all(HolomorphicForm::is_cuspidal)
    }

    pub fn is_zero(&self) -> bool {
        self.e2_coeff.is_zero() && self.parts.is_empty()
    }
}

fn default_decomposer(f: &NearlyForm, p: usize, cuspidal: bool) -> Result<Decomposer> {
    let set = build_set(f.weight(), p, f.truncation(), cuspidal)?;
    Decomposer::new(set)
}

/// Decompose `f` as an element of `N_k^p`, `k = f.weight()`.
pub fn decompose(f: &NearlyForm, p: usize) -> Result<Decomposition> {
    default_decomposer(f, p, false)?.decompose(f)
}

/// Decompose a cuspidal `f` against raised cusp forms only.
pub fn decompose_cuspidal(f: &NearlyForm, p: usize) -> Result<Decomposition> {
    if !f.is_cuspidal() {
        return Err(Error::Domain(
            "decompose_cuspidal needs a cuspidal input".into(),
        ));
    }
    default_decomposer(f, p, true)?.decompose(f)
}

/// Split every `f_l` into its cuspidal part and its multiple of `E_l`; the
/// `E2*` coefficient and the weight-0 constant belong to the Eisenstein side.
pub fn eisenstein_split(d: &Decomposition) -> (Decomposition, Decomposition) {
    let mut cusp = Decomposition::zero(d.weight, d.truncation);
    let mut eis = Decomposition::zero(d.weight, d.truncation);
    eis.e2_coeff = d.e2_coeff.clone();
    for (&ell, f) in &d.parts {
        let a0 = f.series.constant_term().clone();
        if a0.is_zero() {
            cusp.parts.insert(ell, f.clone());
            continue;
        }
        if ell == 0 {
            eis.parts.insert(ell, f.clone());
            continue;
        }
        let e = eisenstein_q(ell, d.truncation)
            .expect("nonzero constant term forces an even weight >= 4");
        let e_part = e.series.scale(&a0);
        let rest = &f.series - &e_part;
        if !rest.is_zero() {
            cusp.parts.insert(ell, HolomorphicForm::new(ell, rest));
        }
        eis.parts.insert(ell, HolomorphicForm::new(ell, e_part));
    }
    (cusp, eis)
}

/// `<R^v f, R^v f> / <f, f>` for `f` of weight `k` generating a discrete
/// series module, with the invariant form satisfying `<Rx, y> = -<x, Ly>`.
///
/// Each step multiplies by `-(eigenvalue of L R)` on the current basis
/// vector of `lowest_weight_module(k, ·)`. The same constant governs the
/// normalized `delta^v`, up to the factor `(4 pi)^(-2v)`.
pub fn petersson_constant(k: i64, v: usize) -> Result<BigRational> {
    if k <= 0 {
        return Err(Error::Domain(format!(
            "Petersson ladder constants need k >= 1, got {k}"
        )));
    }
    let module = lowest_weight_module(k, v + 1)?;
    let mut c = BigRational::one();
    for m in 0..v {
        c *= -module.ladder_eigenvalue(m)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta_q, e2_hol};

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn spanning_set_examples() {
        let s = spanning_set(12, 1, 30).unwrap();
        assert_eq!(
            s.labels(),
            vec![
                Label::Form { ell: 10, index: 0 },
                Label::Form { ell: 12, index: 0 },
                Label::Form { ell: 12, index: 1 },
            ]
        );
        let s = spanning_set(4, 2, 30).unwrap();
        assert_eq!(
            s.labels(),
            vec![Label::Form { ell: 4, index: 0 }, Label::E2]
        );
        let s = spanning_set(0, 3, 10).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.generators[0].form, NearlyForm::constant(r(1), 10));
        assert!(spanning_set(-4, 3, 10).unwrap().is_empty());
        assert!(matches!(
            spanning_set(24, 0, 2),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn dim_examples() {
        assert_eq!(dim_n(12, 1), 3);
        assert_eq!(dim_n(4, 2), 2);
        assert_eq!(dim_n(0, 7), 1);
        assert_eq!(dim_n(2, 0), 0);
        assert_eq!(dim_n(2, 1), 1);
        assert_eq!(dim_n(-2, 4), 0);
        assert_eq!(dim_n(24, 4), 11);
    }

    #[test]
    fn e2_star_squared() {
        let e = NearlyForm::e2_star(40);
        let d = decompose(&e.mul(&e), 2).unwrap();
        assert_eq!(d.e2_coeff, r(12));
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&4], eisenstein_q(4, 40).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let delta = NearlyForm::holomorphic(&delta_q(40));
        let d = decompose(&delta.raise(), 1).unwrap();
        assert!(d.e2_coeff.is_zero());
        assert_eq!(d.parts.keys().copied().collect::<Vec<_>>(), vec![12]);
        assert_eq!(d.parts[&12], delta_q(40));

        let d = decompose(&NearlyForm::e2_star(40), 1).unwrap();
        assert!(d.parts.is_empty());
        assert_eq!(d.e2_coeff, r(1));

        let e2 = NearlyForm::holomorphic(&e2_hol(40));
        assert!(matches!(decompose(&e2, 0), Err(Error::NotInSpace(_))));
        assert!(matches!(decompose(&e2, 1), Err(Error::NotInSpace(_))));
        assert!(matches!(decompose(&delta, 0).map(|_| ()), Ok(())));
        assert!(matches!(
            decompose(&delta.raise(), 0),
            Err(Error::NotInSpace(_))
        ));
        assert!(matches!(
            decompose(&delta.truncate(15), 0),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn weight_zero_is_constants() {
        let c = NearlyForm::constant(r(7), 30);
        let d = decompose(&c, 3).unwrap();
        assert_eq!(d.parts[&0].series, QSeries::constant(r(7), 30));
        assert_eq!(d.reassemble(), c);
        let (cusp, eis) = eisenstein_split(&d);
        assert!(cusp.is_zero());
        assert_eq!(eis, d);
    }

    #[test]
    fn cuspidal_examples() {
        let delta = NearlyForm::holomorphic(&delta_q(40));
        let d = decompose_cuspidal(&delta.raise_n(2), 2).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&12], delta_q(40));

        let product = delta_q(40).mul(&eisenstein_q(4, 40).unwrap());
        let d = decompose_cuspidal(&NearlyForm::holomorphic(&product), 0).unwrap();
        assert_eq!(d.parts[&16], product);
        assert!(d.is_cuspidal());

        let zero = NearlyForm::zero(1, 30);
        assert!(decompose_cuspidal(&zero, 3).unwrap().is_zero());
        let odd = NearlyForm::new(1, 30, vec![QSeries::monomial(r(1), 1, 30)]).unwrap();
        assert!(matches!(
            decompose_cuspidal(&odd, 3),
            Err(Error::NotInSpace(_))
        ));
        assert!(matches!(
            decompose_cuspidal(&NearlyForm::e2_star(30), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn split_examples() {
        let e = NearlyForm::e2_star(40);
        let (cusp, eis) = eisenstein_split(&decompose(&e.mul(&e), 2).unwrap());
        assert!(cusp.is_zero());
        assert_eq!(eis.e2_coeff, r(12));
        assert_eq!(eis.parts[&4], eisenstein_q(4, 40).unwrap());

        let e16 = eisenstein_q(16, 40).unwrap();
        let mixed =
            &delta_q(40).mul(&eisenstein_q(4, 40).unwrap()).series + &e16.series.scale(&r(3));
        let d = decompose(&NearlyForm::new(16, 40, vec![mixed]).unwrap(), 0).unwrap();
        let (cusp, eis) = eisenstein_split(&d);
        assert_eq!(eis.parts[&16].series, e16.series.scale(&r(3)));
        assert_eq!(
            cusp.parts[&16],
            delta_q(40).mul(&eisenstein_q(4, 40).unwrap())
        );
        assert_eq!(&cusp.reassemble() + &eis.reassemble(), d.reassemble());

        let pure = decompose(&NearlyForm::holomorphic(&delta_q(40)).raise(), 1).unwrap();
        let (cusp, eis) = eisenstein_split(&pure);
        assert_eq!(cusp, pure);
        assert!(eis.is_zero());
    }

    #[test]
    fn petersson_examples() {
        for k in 1..10 {
            assert_eq!(petersson_constant(k, 0).unwrap(), r(1));
            assert_eq!(petersson_constant(k, 1).unwrap(), r(k));
        }
        assert_eq!(petersson_constant(12, 2).unwrap(), r(312));
        assert!(petersson_constant(0, 2).is_err());
    }
}
