//! Exact arithmetic with nearly holomorphic modular forms of level one.
//!
//! The crate is layered bottom-up:
//!
//! - [`qseries`]: truncated q-expansions over the rationals.
//! - [`classical`]: Eisenstein series, `Delta`, `E2`, Victor–Miller bases.
//! - [`nearly`]: nearly holomorphic forms as polynomials in `X = 1/(4 pi y)`,
//!   with the normalized raising, lowering and Casimir operators.
//! - [`sl2rep`]: truncated `sl2` weight modules (lowest-weight and Verma modules,
//!   duals, singular vectors).
//! - [`structure`]: spanning sets, exact decomposition, dimension formulas,
//!   cusp/Eisenstein splitting and ladder constants.
//! - [`json`]: the document formats used by the command line tool.

pub mod classical;
pub mod error;
pub mod json;
pub mod linalg;
pub mod nearly;
pub mod qseries;
pub mod sl2rep;
pub mod structure;

pub use classical::{
    basis_m, basis_s, delta_q, dim_m, dim_s, e2_hol, eisenstein_q, HolomorphicForm,
};
pub use error::{Error, Result};
pub use nearly::{named_form, MoebiusElement, NearlyForm};
pub use qseries::{sigma, QSeries};
pub use sl2rep::{
    casimir_scalar, e2_module_structure, lowest_weight_module, singular_weights, verma,
    verma_report, VermaReport, WeightModule,
};
pub use structure::{
    decompose, decompose_cuspidal, dim_n, eisenstein_split, petersson_constant, spanning_set,
    Decomposer, Decomposition, SpanningSet,
};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
