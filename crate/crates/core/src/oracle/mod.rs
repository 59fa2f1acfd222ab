//! Brute-force ground truth.
//!
//! Everything here counts objects directly in finite truncations (HNF
//! sublattices, ideals of truncated algebras, submodules in Hecke towers,
//! points over `F_q` and `F_(q^2)`) and never calls the closed-form
//! modules, except where a report compares against them explicitly.

pub mod algebra;
pub mod census;
pub mod enumerate;
pub mod field;
pub mod ideals;
pub mod lattice;
pub mod linalg;
pub mod slice;
pub mod tower;

use thiserror::Error;

pub use algebra::{
    build_delta_l, build_symbol, commutative_truncation, product, FiniteAlgebra, SymbolParam, SymbolSpec,
};
pub use census::{count_ideals_integer_poly, subscheme_census_p2};
pub use enumerate::FiniteModule;
pub use ideals::{count_ideals_2d, count_ideals_algebra, grothendieck_class, SubmoduleCensus};
pub use lattice::count_sublattices;
pub use slice::{check_slice, SliceReport};
pub use tower::{verify_tower, Tower, TowerReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("no finite field with {0} elements is supported")]
    FieldUnsupported(u64),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("window {window} too small; at least {needed} is required")]
    WindowTooSmall { window: usize, needed: usize },
    #[error("element {xi} is not a primitive {e}-th root of unity")]
    NotPrimitive { xi: u8, e: u32 },
    #[error("bad symbol parameters: {0}")]
    BadMode(String),
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("{algebra}: F_1 F_{k} differs from F_{}", k + 1)]
    FiltrationNotRadical { algebra: String, k: usize },
    #[error("{0}: weight-0 part is not commutative semisimple")]
    NotSemisimple(String),
    #[error("bad slice element: {0}")]
    BadSlice(String),
    #[error("no slice element declared")]
    NoSlice,
}
