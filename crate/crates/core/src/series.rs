//! Exact truncated power series in `t`, rational functions of `t`, and
//! Dirichlet series.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `t^0, ..., t^N` exactly. Binary operations on series of different
//! orders truncate to the smaller order. Coefficients live in a
//! [`Coefficient`] ring: exact rationals, or polynomials in a second
//! variable `z` with rational coefficients ([`ZPoly`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{fmt_rational, primes_up_to, rational_pow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not invertible in the coefficient ring")]
    NotInvertible,
    #[error("exp requires a zero constant term")]
    ExpConstantTerm,
    #[error("log requires constant term 1")]
    LogConstantTerm,
    #[error("infinite product gap must be positive")]
    ZeroGap,
    #[error("factor {factor} has a nonzero coefficient at t^{degree}, below its declared start t^{start}")]
    GapViolation { factor: usize, degree: usize, start: usize },
    #[error("Dirichlet index {index} outside 1..={bound}")]
    DirichletBound { index: usize, bound: usize },
    #[error("local Euler factor at {prime} is truncated at {have}, need {need}")]
    EulerFactorTooShort { prime: usize, have: usize, need: usize },
    #[error("denominator has zero constant term")]
    ZeroDenominatorConstant,
    #[error("substitution t -> c t^b needs b >= 1")]
    BadSubstitution,
}

/// Exact coefficient ring for truncated series.
///
/// Method names avoid clashing with `std::ops` so that implementors may
/// also carry operator impls.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Multiplicative inverse, when it exists.
    fn inverse(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Coefficient for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Dense polynomial in `z` with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigRational>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        ZPoly::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    /// `p(z) -> p(c * z^k)`.
    pub fn substitute_monomial(&self, c: &BigRational, k: usize) -> ZPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        let mut scale = BigRational::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a * &scale;
            scale *= c;
        }
        ZPoly::new(out)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        if parts.is_empty() {
            write!(f, "[0]")
        } else {
            write!(f, "[{}]", parts.join(", "))
        }
    }
}

impl Coefficient for ZPoly {
    fn zero_elem() -> Self {
        ZPoly::zero()
    }
    fn one_elem() -> Self {
        ZPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ZPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
    fn negated(&self) -> Self {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn from_rational(r: &BigRational) -> Self {
        ZPoly::constant(r.clone())
    }
    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(ZPoly::constant(c.recip())),
            _ => None,
        }
    }
}

/// Power series in `t` known exactly through `t^order`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    order: usize,
    coeffs: Vec<C>,
}

pub type QSeries = TruncatedSeries<BigRational>;
pub type ZSeries = TruncatedSeries<ZPoly>;

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_elem());
        TruncatedSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one_elem()], order)
    }

    /// `c * t^degree`; zero if `degree > order`.
    pub fn monomial(c: C, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new((0..=order).map(|k| self.coeffs[k].plus(&other.coeffs[k])).collect(), order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new((0..=order).map(|k| self.coeffs[k].minus(&other.coeffs[k])).collect(), order)
    }

    pub fn neg(&self) -> Self {
        self.map(C::negated)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![C::zero_elem(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero_elem() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(out, order)
    }

    pub fn invert(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].inverse().ok_or(SeriesError::NotInvertible)?;
        let neg_inv0 = inv0.negated();
        let mut out: Vec<C> = Vec::with_capacity(self.order + 1);
        out.push(inv0);
        for n in 1..=self.order {
            let mut acc = C::zero_elem();
            for k in 1..=n {
                if !self.coeffs[k].is_zero_elem() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]));
                }
            }
            out.push(acc.times(&neg_inv0));
        }
        Ok(Self::new(out, self.order))
    }

    /// Integer power; negative exponents require an invertible constant term.
    pub fn pow(&self, exp: i64) -> Result<Self, SeriesError> {
        let base = if exp < 0 { self.invert()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero_elem() {
            return Err(SeriesError::ExpConstantTerm);
        }
        // n b_n = sum_{k=1}^n k a_k b_{n-k}
        let mut out: Vec<C> = vec![C::one_elem()];
        for n in 1..=self.order {
            let mut acc = C::zero_elem();
            for k in 1..=n {
                if !self.coeffs[k].is_zero_elem() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]).times(&C::from_int(k as i64)));
                }
            }
            out.push(acc.times(&C::from_rational(&BigRational::new(1.into(), (n as i64).into()))));
        }
        Ok(Self::new(out, self.order))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one_elem() {
            return Err(SeriesError::LogConstantTerm);
        }
        // n a_n = sum_{k=1}^n k l_k a_{n-k}
        let mut out: Vec<C> = vec![C::zero_elem()];
        for n in 1..=self.order {
            let mut acc = C::zero_elem();
            for k in 1..n {
                if !out[k].is_zero_elem() {
                    acc = acc.plus(&out[k].times(&self.coeffs[n - k]).times(&C::from_int(k as i64)));
                }
            }
            let inv_n = C::from_rational(&BigRational::new(1.into(), (n as i64).into()));
            out.push(self.coeffs[n].minus(&acc.times(&inv_n)));
        }
        Ok(Self::new(out, self.order))
    }

    /// Substitutes `t -> c * t^b`, keeping the order.
    pub fn compose_monomial(&self, c: &C, b: usize) -> Result<Self, SeriesError> {
        if b == 0 {
            return Err(SeriesError::BadSubstitution);
        }
        let mut out = vec![C::zero_elem(); self.order + 1];
        let mut scale = C::one_elem();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k * b > self.order {
                break;
            }
            out[k * b] = a.times(&scale);
            scale = scale.times(c);
        }
        Ok(Self::new(out, self.order))
    }
}

impl QSeries {
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    /// The coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(order={}, {:?})", self.order, self.coeffs)
    }
}

impl<C: Coefficient> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> Self::Output {
        TruncatedSeries::add(self, rhs)
    }
}

impl<C: Coefficient> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> Self::Output {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<C: Coefficient> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> Self::Output {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<C: Coefficient> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> Self::Output {
        TruncatedSeries::neg(self)
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Quotient of two polynomials in `t`, with the denominator normalised to
/// constant term 1 so that every expansion is a power series.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Vec<BigRational>,
    denominator: Vec<BigRational>,
}

impl RationalFunction {
    pub fn new(numerator: Vec<BigRational>, denominator: Vec<BigRational>) -> Result<Self, SeriesError> {
        let d0 =
            denominator.first().filter(|c| !Zero::is_zero(*c)).cloned().ok_or(SeriesError::ZeroDenominatorConstant)?;
        let inv = d0.recip();
        Ok(RationalFunction {
            numerator: trim(numerator.into_iter().map(|c| c * &inv).collect()),
            denominator: trim(denominator.into_iter().map(|c| c * &inv).collect()),
        })
    }

    pub fn from_integer_polys(numerator: &[BigInt], denominator: &[BigInt]) -> Result<Self, SeriesError> {
        let lift = |p: &[BigInt]| p.iter().cloned().map(BigRational::from_integer).collect();
        Self::new(lift(numerator), lift(denominator))
    }

    pub fn one() -> Self {
        RationalFunction { numerator: vec![BigRational::one()], denominator: vec![BigRational::one()] }
    }

    /// `1 / (1 - c t^k)`.
    pub fn geometric(c: BigRational, k: usize) -> Self {
        let mut den = vec![BigRational::zero(); k + 1];
        den[0] = BigRational::one();
        den[k] -= c;
        RationalFunction { numerator: vec![BigRational::one()], denominator: trim(den) }
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.denominator
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction {
            numerator: poly_mul(&self.numerator, &other.numerator),
            denominator: poly_mul(&self.denominator, &other.denominator),
        }
    }

    /// Reciprocal; fails when the numerator vanishes at `t = 0`.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn pow(&self, exp: i64) -> Result<Self, SeriesError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Realises `t -> q^a t^b`.
    pub fn substitute(&self, q: &BigInt, a: i64, b: usize) -> Result<Self, SeriesError> {
        if b == 0 {
            return Err(SeriesError::BadSubstitution);
        }
        let subst = |p: &[BigRational]| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); (p.len().saturating_sub(1)) * b + 1];
            for (k, c) in p.iter().enumerate() {
                out[k * b] = c * rational_pow(q, a * k as i64);
            }
            trim(out)
        };
        Self::new(subst(&self.numerator), subst(&self.denominator))
    }

    pub fn expand(&self, order: usize) -> QSeries {
        let num = QSeries::new(self.numerator.clone(), order);
        let den = QSeries::new(self.denominator.clone(), order);
        // denominator(0) = 1 by construction
        num.mul(&den.invert().expect("denominator constant term is 1"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[BigRational]| p.iter().map(fmt_rational).collect::<Vec<_>>().join(", ");
        write!(f, "RationalFunction([{}] / [{}])", show(&self.numerator), show(&self.denominator))
    }
}

/// Truncated product `prod_{n >= 1} factor(n)` where factor `n` is
/// `1 + O(t^{gap * n})`.
///
/// Only factors with `gap * n <= order` are multiplied; the others are 1
/// to this order. Every factor used is checked against its declared gap.
pub fn infinite_product<C, F>(gap: usize, order: usize, mut factor: F) -> Result<TruncatedSeries<C>, SeriesError>
where
    C: Coefficient,
    F: FnMut(usize) -> Result<TruncatedSeries<C>, SeriesError>,
{
    if gap == 0 {
        return Err(SeriesError::ZeroGap);
    }
    let mut acc = TruncatedSeries::one(order);
    let mut n = 1;
    while gap * n <= order {
        let f = factor(n)?.truncate(order);
        let start = gap * n;
        if f.coeffs[0] != C::one_elem() {
            return Err(SeriesError::GapViolation { factor: n, degree: 0, start });
        }
        if let Some(degree) = (1..start.min(f.order + 1)).find(|&k| !f.coeffs[k].is_zero_elem()) {
            return Err(SeriesError::GapViolation { factor: n, degree, start });
        }
        acc = acc.mul(&f);
        n += 1;
    }
    Ok(acc)
}

/// [`infinite_product`] over rational-function factors.
pub fn infinite_product_rational<F>(gap: usize, order: usize, mut factor: F) -> Result<QSeries, SeriesError>
where
    F: FnMut(usize) -> Result<RationalFunction, SeriesError>,
{
    infinite_product(gap, order, |n| Ok(factor(n)?.expand(order)))
}

/// Formal Dirichlet series `sum_{n=1}^{bound} a_n n^{-s}`.
#[derive(Clone, PartialEq, Eq)]
pub struct DirichletSeries {
    bound: usize,
    coeffs: Vec<BigRational>,
}

impl DirichletSeries {
    /// `coeffs[k]` is `a_{k+1}`.
    pub fn new(mut coeffs: Vec<BigRational>, bound: usize) -> Self {
        coeffs.resize(bound, BigRational::zero());
        DirichletSeries { bound, coeffs }
    }

    pub fn one(bound: usize) -> Self {
        Self::new(vec![BigRational::one()], bound)
    }

    /// `zeta(s - shift)`: `a_n = n^shift`.
    pub fn shifted_zeta(bound: usize, shift: u32) -> Self {
        Self::new(
            (1..=bound).map(|n| BigRational::from_integer(num_traits::pow(BigInt::from(n), shift as usize))).collect(),
            bound,
        )
    }

    pub fn riemann_zeta(bound: usize) -> Self {
        Self::shifted_zeta(bound, 0)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeff(&self, n: usize) -> Result<&BigRational, SeriesError> {
        if n == 0 || n > self.bound {
            return Err(SeriesError::DirichletBound { index: n, bound: self.bound });
        }
        Ok(&self.coeffs[n - 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Dirichlet convolution truncated at the smaller bound.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = vec![BigRational::zero(); bound];
        for i in 1..=bound {
            if Zero::is_zero(&self.coeffs[i - 1]) {
                continue;
            }
            let mut j = 1;
            while i * j <= bound {
                out[i * j - 1] += &self.coeffs[i - 1] * &other.coeffs[j - 1];
                j += 1;
            }
        }
        Self::new(out, bound)
    }

    /// Assembles `a_n = prod_{p^k || n} c_p(k)` from per-prime local factors,
    /// each a power series in `x = p^{-s}`.
    pub fn from_euler<F>(bound: usize, mut local: F) -> Result<Self, SeriesError>
    where
        F: FnMut(usize) -> Result<QSeries, SeriesError>,
    {
        let mut coeffs = vec![BigRational::one(); bound];
        for p in primes_up_to(bound) {
            let mut need = 0;
            let mut pk = p;
            while pk <= bound {
                need += 1;
                pk *= p;
            }
            let factor = local(p)?;
            if factor.order() < need {
                return Err(SeriesError::EulerFactorTooShort { prime: p, have: factor.order(), need });
            }
            for n in (p..=bound).step_by(p) {
                let mut k = 0;
                let mut m = n;
                while m % p == 0 {
                    m /= p;
                    k += 1;
                }
                coeffs[n - 1] *= &factor.coeffs()[k];
            }
        }
        Ok(Self::new(coeffs, bound))
    }
}

impl fmt::Debug for DirichletSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "DirichletSeries(bound={}, [{}])", self.bound, shown.join(", "))
    }
}
