//! Zeta functions of maximal orders on surfaces over finite fields.
//!
//! The formula modules ([`local`], [`global`], [`hecke`], [`weil`]) compute
//! closed-form product expansions with exact arithmetic on top of
//! [`series`]. The [`oracle`] module counts the same objects by brute force
//! in finite truncations of the rings involved, so every formula can be
//! checked against an independent enumeration.

pub mod arith;
pub mod global;
pub mod hecke;
pub mod local;
pub mod oracle;
pub mod series;
pub mod weil;

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] series::SeriesError),
    #[error(transparent)]
    Weil(#[from] weil::WeilError),
    #[error(transparent)]
    Local(#[from] local::LocalError),
    #[error(transparent)]
    Hecke(#[from] hecke::HeckeError),
    #[error(transparent)]
    Global(#[from] global::GlobalError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}
