//! Closed-form local zeta functions.
//!
//! Coefficients are indexed by the `F_q`-dimension of the quotient, so a
//! left ideal of `M_r(O)` cut out by a lattice of `O`-colength `n` sits in
//! degree `r * n`.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::arith::{prime_power, rational_pow};
use crate::series::{infinite_product_rational, QSeries, RationalFunction, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("shape needs r >= 1 and m >= 1, got r = {r}, m = {m}")]
    DegenerateShape { r: usize, m: usize },
    #[error("point degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Residue shape `A / rad A = prod^m M_r(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalOrderShape {
    pub q: u64,
    pub r: usize,
    pub m: usize,
}

impl LocalOrderShape {
    pub fn new(q: u64, r: usize, m: usize) -> Result<Self, LocalError> {
        if prime_power(q).is_none() {
            return Err(LocalError::NotPrimePower(q));
        }
        if r == 0 || m == 0 {
            return Err(LocalError::DegenerateShape { r, m });
        }
        Ok(LocalOrderShape { q, r, m })
    }
}

/// `prod_{j=0}^{r-1} (1 - q^j t^r)^{-m}` over a discrete valuation ring.
pub fn hey_zeta(shape: LocalOrderShape, order: usize) -> QSeries {
    hey_factor(&BigInt::from(shape.q), shape.r, shape.m).expand(order)
}

fn hey_factor(q: &BigInt, r: usize, m: usize) -> RationalFunction {
    let mut acc = RationalFunction::one();
    for j in 0..r {
        acc = acc.mul(&RationalFunction::geometric(rational_pow(q, j as i64), r));
    }
    acc.pow(m as i64).expect("positive power")
}

/// `prod_{n>=1} prod_{j=1}^r (1 - q^{nr-j} t^{nr})^{-m}` for a local order
/// with a homogeneous slice.
pub fn slice_zeta(shape: LocalOrderShape, order: usize) -> Result<QSeries, LocalError> {
    slice_zeta_over(&BigInt::from(shape.q), shape.r, shape.m, order)
}

fn slice_zeta_over(q: &BigInt, r: usize, m: usize, order: usize) -> Result<QSeries, LocalError> {
    Ok(infinite_product_rational(r, order, |n| {
        let mut acc = RationalFunction::one();
        for j in 1..=r {
            acc = acc.mul(&RationalFunction::geometric(rational_pow(q, (n * r - j) as i64), n * r));
        }
        acc.pow(m as i64)
    })?)
}

/// The slice formula rebuilt as `prod_{n>=0} Hey(q^n t^{n+1})`, i.e. the
/// residue-ring zeta evaluated along the substituted variables. Used as an
/// independent route to [`slice_zeta`].
pub fn slice_zeta_via_hey(shape: LocalOrderShape, order: usize) -> Result<QSeries, LocalError> {
    let q = BigInt::from(shape.q);
    let hey = hey_factor(&q, shape.r, shape.m);
    Ok(infinite_product_rational(shape.r, order, |n| hey.substitute(&q, n as i64 - 1, n))?)
}

/// Local factor at a closed point of degree `k` over `F_q`: the slice
/// formula over `F_{q^k}` re-expanded in `t` via `t -> t^k`.
pub fn local_factor(k: usize, q: u64, r: usize, m: usize, order: usize) -> Result<QSeries, LocalError> {
    if k == 0 {
        return Err(LocalError::ZeroDegree);
    }
    let shape = LocalOrderShape::new(q, r, m)?;
    let qk = num_traits::pow(BigInt::from(shape.q), k);
    let local = slice_zeta_over(&qk, r, m, order / k)?;
    let mut coeffs = vec![num_rational::BigRational::from_integer(0.into()); order + 1];
    for (i, c) in local.coeffs().iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    let out = QSeries::new(coeffs, order);
    debug_assert!(out.coeffs()[0].is_one());
    Ok(out)
}
