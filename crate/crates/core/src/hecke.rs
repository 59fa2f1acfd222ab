//! Symbolic z-adic Hecke calculus.
//!
//! Series live in the completed monoid ring on generators `z^i(t_j)`, where
//! `t_j` stands for the class of the `j`-th simple module of `M / zM` and
//! `z^i(t_j)` for its twist by `z^i`. The character `chi` records the
//! cardinality of each twisted simple. The operator `Xi` shifts every
//! generator one step (`z^i -> z^{i+1}`) and rescales; products of its
//! iterates applied to the residue zeta function give the multi-parameter
//! zeta function of the whole module.
//!
//! Simples are numbered from 0 internally and from 1 when printed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::rational_pow;
use crate::series::QSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("invalid character: {0}")]
    BadChi(String),
    #[error("generator z^{twist}(t_{}) refers to a simple outside 1..={g}", .simple + 1)]
    SimpleOutOfRange { twist: u32, simple: u32, g: usize },
    #[error("residue zeta must only involve untwisted generators t_j")]
    NotUntwisted,
    #[error("residue zeta must have constant term 1")]
    ConstantTerm,
    #[error("series over {0} and {1} simples cannot be combined")]
    SimpleCountMismatch(usize, usize),
}

/// Generator `z^twist(t_simple)`; ordering is lexicographic on
/// `(twist, simple)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub twist: u32,
    pub simple: u32,
}

impl Gen {
    pub fn t(simple: u32) -> Self {
        Gen { twist: 0, simple }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            0 => write!(f, "t{}", self.simple + 1),
            1 => write!(f, "z(t{})", self.simple + 1),
            i => write!(f, "z^{i}(t{})", self.simple + 1),
        }
    }
}

/// Finitely supported exponent map on generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LMonomial(BTreeMap<Gen, u32>);

impl LMonomial {
    pub fn one() -> Self {
        LMonomial::default()
    }

    pub fn generator(g: Gen) -> Self {
        Self::from_exponents([(g, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (g, e) in exps {
            if e > 0 {
                *m.entry(g).or_insert(0) += e;
            }
        }
        LMonomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<Gen, u32> {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_untwisted(&self) -> bool {
        self.0.keys().all(|g| g.twist == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, e) in &other.0 {
            *m.entry(*g).or_insert(0) += e;
        }
        LMonomial(m)
    }

    /// Splits into the untwisted part `m_0` and the rest `m_{>0}`.
    pub fn split(&self) -> (LMonomial, LMonomial) {
        let (zero, pos): (BTreeMap<_, _>, BTreeMap<_, _>) = self.0.iter().partition(|(g, _)| g.twist == 0);
        (LMonomial(zero), LMonomial(pos))
    }

    /// The generator shift `z^i(t_j) -> z^{i+1}(t_j)`.
    pub fn shift(&self) -> LMonomial {
        LMonomial(self.0.iter().map(|(g, e)| (Gen { twist: g.twist + 1, simple: g.simple }, *e)).collect())
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Character data: `g` simples of cardinalities `sizes[j]` and the
/// permutation `sigma` of simples induced by conjugation with `z`.
///
/// Twisting by `z^i` sends the `j`-th simple to the `sigma^i(j)`-th, so
/// `chi(z^i(t_j)) = sizes[sigma^i(j)]`; `chi` is multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiSpec {
    sizes: Vec<BigInt>,
    sigma: Vec<usize>,
}

impl ChiSpec {
    pub fn new(sizes: Vec<BigInt>, sigma: Vec<usize>) -> Result<Self, HeckeError> {
        let g = sizes.len();
        if g == 0 {
            return Err(HeckeError::BadChi("need at least one simple".into()));
        }
        if sigma.len() != g {
            return Err(HeckeError::BadChi(format!("sigma has {} entries for {g} simples", sigma.len())));
        }
        let mut seen = vec![false; g];
        for &s in &sigma {
            if s >= g || std::mem::replace(&mut seen[s], true) {
                return Err(HeckeError::BadChi("sigma is not a permutation".into()));
            }
        }
        if sizes.iter().any(|v| v <= &BigInt::zero()) {
            return Err(HeckeError::BadChi("values must be positive".into()));
        }
        Ok(ChiSpec { sizes, sigma })
    }

    /// Every simple has `value` elements and `sigma` is the identity.
    pub fn uniform(g: usize, value: BigInt) -> Result<Self, HeckeError> {
        Self::new(vec![value; g], (0..g).collect())
    }

    /// Residue ring `prod^m M_r(F_q)`: `m` simples of size `q^r`.
    pub fn matrix(q: u64, r: usize, m: usize) -> Result<Self, HeckeError> {
        Self::uniform(m, num_traits::pow(BigInt::from(q), r))
    }

    pub fn g(&self) -> usize {
        self.sizes.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `sigma^i(j)`.
    pub fn sigma_pow(&self, i: u32, j: usize) -> usize {
        (0..i).fold(j, |acc, _| self.sigma[acc])
    }

    pub fn value(&self, g: Gen) -> BigInt {
        self.sizes[self.sigma_pow(g.twist, g.simple as usize)].clone()
    }

    pub fn eval(&self, m: &LMonomial) -> BigInt {
        m.0.iter().map(|(g, e)| num_traits::pow(self.value(*g), *e as usize)).product()
    }

    fn check(&self, m: &LMonomial) -> Result<(), HeckeError> {
        match m.0.keys().find(|g| g.simple as usize >= self.g()) {
            Some(g) => Err(HeckeError::SimpleOutOfRange { twist: g.twist, simple: g.simple, g: self.g() }),
            None => Ok(()),
        }
    }
}

/// `Xi(m) = chi(z(m)) / chi(m_{>0}) * m_0 * z(m)`.
pub fn xi(m: &LMonomial, chi: &ChiSpec) -> (BigRational, LMonomial) {
    let (m0, pos) = m.split();
    let zm = m.shift();
    let scalar = BigRational::new(chi.eval(&zm), chi.eval(&pos));
    (scalar, m0.mul(&zm))
}

/// Rational combination of monomials of total degree at most `bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct LSeries {
    g: usize,
    bound: u32,
    terms: BTreeMap<LMonomial, BigRational>,
}

impl LSeries {
    pub fn zero(g: usize, bound: u32) -> Self {
        LSeries { g, bound, terms: BTreeMap::new() }
    }

    pub fn one(g: usize, bound: u32) -> Self {
        Self::monomial(g, bound, LMonomial::one(), BigRational::one())
    }

    pub fn monomial(g: usize, bound: u32, m: LMonomial, c: BigRational) -> Self {
        let mut s = Self::zero(g, bound);
        s.add_term(m, c);
        s
    }

    /// `1 / (1 - c * gen)` truncated at `bound`.
    pub fn geometric(g: usize, bound: u32, gen: Gen, c: BigRational) -> Self {
        let mut s = Self::zero(g, bound);
        let mut coeff = BigRational::one();
        for k in 0..=bound {
            s.add_term(LMonomial::from_exponents([(gen, k)]), coeff.clone());
            coeff *= &c;
        }
        s
    }

    /// `prod_{j<g} prod_{l<r} 1 / (1 - q^l t_j)`: the residue zeta of
    /// `prod^g M_r(F_q)` with one variable per simple.
    pub fn hey(q: u64, r: usize, g: usize, bound: u32) -> Self {
        let q = BigInt::from(q);
        let mut acc = Self::one(g, bound);
        for j in 0..g {
            for l in 0..r {
                acc = acc.mul(&Self::geometric(g, bound, Gen::t(j as u32), rational_pow(&q, l as i64)));
            }
        }
        acc
    }

    fn add_term(&mut self, m: LMonomial, c: BigRational) {
        if m.degree() > self.bound || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<LMonomial, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &LMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, bound: u32) -> Self {
        let bound = bound.min(self.bound);
        LSeries {
            g: self.g,
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = Self::zero(self.g.max(other.g), bound);
        for (a, ca) in &self.terms {
            let da = a.degree();
            if da > bound {
                continue;
            }
            for (b, cb) in &other.terms {
                if da + b.degree() <= bound {
                    out.add_term(a.mul(b), ca * cb);
                }
            }
        }
        out
    }

    /// Applies `Xi` termwise; it is a ring endomorphism that never lowers
    /// degree, so truncation is preserved.
    pub fn xi(&self, chi: &ChiSpec) -> Self {
        let mut out = Self::zero(self.g, self.bound);
        for (m, c) in &self.terms {
            let (s, xm) = xi(m, chi);
            out.add_term(xm, c * s);
        }
        out
    }

    pub fn xi_pow(&self, chi: &ChiSpec, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.xi(chi))
    }

    /// `rho: z^i(t_j) -> t_{sigma^i(j)}`.
    pub fn rho(&self, chi: &ChiSpec) -> Self {
        let mut out = Self::zero(self.g, self.bound);
        for (m, c) in &self.terms {
            let image = LMonomial::from_exponents(
                m.0.iter().map(|(g, e)| (Gen::t(chi.sigma_pow(g.twist, g.simple as usize) as u32), *e)),
            );
            out.add_term(image, c.clone());
        }
        out
    }

    /// `rho': t_j -> t^r` on any series; the result has order `r * bound`.
    pub fn rho_prime(&self, r: usize) -> QSeries {
        let order = r * self.bound as usize;
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (m, c) in &self.terms {
            coeffs[r * m.degree() as usize] += c;
        }
        QSeries::new(coeffs, order)
    }
}

impl fmt::Debug for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LSeries(g={}, bound={}, {{", self.g, self.bound)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}: {c}")?;
        }
        write!(f, "}})")
    }
}

fn check_residue(zbar: &LSeries, chi: &ChiSpec) -> Result<(), HeckeError> {
    if zbar.g != chi.g() {
        return Err(HeckeError::SimpleCountMismatch(zbar.g, chi.g()));
    }
    for m in zbar.terms.keys() {
        chi.check(m)?;
        if !m.is_untwisted() {
            return Err(HeckeError::NotUntwisted);
        }
    }
    if !zbar.coeff(&LMonomial::one()).is_one() {
        return Err(HeckeError::ConstantTerm);
    }
    Ok(())
}

/// `prod_{k=0}^{n-1} Xi^k(Zbar)` truncated at total degree `bound`.
pub fn partial_product(zbar: &LSeries, chi: &ChiSpec, n: usize, bound: u32) -> Result<LSeries, HeckeError> {
    check_residue(zbar, chi)?;
    let mut factor = zbar.truncate(bound);
    let mut acc = LSeries::one(zbar.g, factor.bound);
    for _ in 0..n {
        acc = acc.mul(&factor);
        factor = factor.xi(chi);
    }
    Ok(acc)
}

/// `rho` of the stabilised partial product: `Xi^k` raises degree by at
/// least `k`, so factors past `bound` are 1 to this order.
pub fn multi_param_zeta(zbar: &LSeries, chi: &ChiSpec, bound: u32) -> Result<LSeries, HeckeError> {
    Ok(partial_product(zbar, chi, bound as usize + 1, bound)?.rho(chi))
}

/// `q^{rn} t_j z(t_j) ... z^n(t_j)`, the closed form of `Xi^n(t_j)` when
/// every simple has `q^r` elements.
pub fn xi_power_closed_form(simple: u32, n: u32, chi_value: &BigInt) -> (BigRational, LMonomial) {
    let scalar = BigRational::from_integer(num_traits::pow(chi_value.clone(), n as usize));
    let m = LMonomial::from_exponents((0..=n).map(|i| (Gen { twist: i, simple }, 1)));
    (scalar, m)
}

/// Degree of the Hecke operator `T_N` applied to `x`: `a * nu(N) * Xi(x)`,
/// with `nu(N)` an untwisted monomial and `a` the count of isomorphic
/// lifts.
pub fn hecke_degree(a: &BigInt, nu: &LMonomial, chi: &ChiSpec, x: &LSeries) -> LSeries {
    x.xi(chi).mul(&LSeries::monomial(x.g, x.bound, nu.clone(), BigRational::from_integer(a.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::{slice_zeta, LocalOrderShape};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn gen(i: u32, j: u32) -> Gen {
        Gen { twist: i, simple: j }
    }

    #[test]
    fn xi_examples() {
        let chi = ChiSpec::uniform(1, 5.into()).unwrap();
        let (s, m) = xi(&LMonomial::generator(Gen::t(0)), &chi);
        assert_eq!(s, q(5));
        assert_eq!(m, LMonomial::from_exponents([(gen(0, 0), 1), (gen(1, 0), 1)]));
        assert_eq!(xi(&LMonomial::one(), &chi), (q(1), LMonomial::one()));
        let chi2 = ChiSpec::uniform(1, 9.into()).unwrap();
        let s = LSeries::monomial(1, 5, LMonomial::generator(Gen::t(0)), q(1)).xi_pow(&chi2, 2);
        let (c, m) = xi_power_closed_form(0, 2, &BigInt::from(9));
        assert_eq!(c, q(81));
        assert_eq!(s, LSeries::monomial(1, 5, m, c));
    }

    #[test]
    fn closed_form_up_to_five() {
        for (qq, r) in [(2u64, 1usize), (3, 2)] {
            let chi = ChiSpec::matrix(qq, r, 2).unwrap();
            let v = num_traits::pow(BigInt::from(qq), r);
            for j in 0..2 {
                for n in 0..=5u32 {
                    let got = LSeries::monomial(2, 6, LMonomial::generator(Gen::t(j)), q(1)).xi_pow(&chi, n as usize);
                    let (c, m) = xi_power_closed_form(j, n, &v);
                    assert_eq!(got, LSeries::monomial(2, 6, m, c));
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        let trivial = ChiSpec::uniform(1, 2.into()).unwrap();
        let s = LSeries::monomial(1, 3, LMonomial::generator(gen(2, 0)), q(1));
        assert_eq!(s.rho(&trivial), LSeries::monomial(1, 3, LMonomial::generator(Gen::t(0)), q(1)));
        let swap = ChiSpec::new(vec![2.into(), 2.into()], vec![1, 0]).unwrap();
        let s = LSeries::monomial(2, 3, LMonomial::generator(gen(1, 0)), q(1));
        assert_eq!(s.rho(&swap), LSeries::monomial(2, 3, LMonomial::generator(Gen::t(1)), q(1)));
        // rho' rho Xi^n(t_1) = q^{rn} t^{r(n+1)}
        let chi = ChiSpec::matrix(3, 2, 1).unwrap();
        let x = LSeries::monomial(1, 4, LMonomial::generator(Gen::t(0)), q(1)).xi_pow(&chi, 3);
        let t = x.rho(&chi).rho_prime(2);
        assert_eq!(t, QSeries::monomial(rational_pow(&BigInt::from(3), 6), 8, 8));
    }

    #[test]
    fn partial_products() {
        let chi = ChiSpec::matrix(2, 1, 1).unwrap();
        let zbar = LSeries::hey(2, 1, 1, 6);
        assert_eq!(partial_product(&zbar, &chi, 0, 6).unwrap(), LSeries::one(1, 6));
        for n in 0..7 {
            let a = partial_product(&zbar, &chi, n, 6).unwrap();
            let b = partial_product(&zbar, &chi, n + 1, 6).unwrap();
            assert!(b.sub(&a).terms().keys().all(|m| m.degree() as usize > n));
        }
    }

    #[test]
    fn slice_theorem_symbolically() {
        for qq in [2u64, 3] {
            for (r, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
                let bound = (8 / r) as u32;
                let chi = ChiSpec::matrix(qq, r, m).unwrap();
                let zbar = LSeries::hey(qq, r, m, bound);
                let z = multi_param_zeta(&zbar, &chi, bound).unwrap().rho_prime(r);
                let want = slice_zeta(LocalOrderShape::new(qq, r, m).unwrap(), 8).unwrap();
                assert_eq!(z, want, "q={qq} r={r} m={m}");
            }
        }
    }

    #[test]
    fn swapped_simples_give_symmetric_zeta() {
        let chi = ChiSpec::new(vec![3.into(), 3.into()], vec![1, 0]).unwrap();
        let zbar = LSeries::hey(3, 1, 2, 6);
        let z = multi_param_zeta(&zbar, &chi, 6).unwrap();
        for (mono, c) in z.terms() {
            let swapped = LMonomial::from_exponents(mono.exponents().iter().map(|(g, e)| (Gen::t(1 - g.simple), *e)));
            assert_eq!(&z.coeff(&swapped), c);
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(ChiSpec::new(vec![2.into(), 2.into()], vec![0, 0]).is_err());
        assert!(ChiSpec::new(vec![0.into()], vec![0]).is_err());
        let chi = ChiSpec::uniform(1, 2.into()).unwrap();
        let twisted = LSeries::one(1, 3).add(&LSeries::monomial(1, 3, LMonomial::generator(gen(1, 0)), q(1)));
        assert_eq!(partial_product(&twisted, &chi, 2, 3), Err(HeckeError::NotUntwisted));
        assert_eq!(partial_product(&LSeries::zero(1, 3), &chi, 2, 3), Err(HeckeError::ConstantTerm));
        let far = LSeries::one(1, 3).add(&LSeries::monomial(1, 3, LMonomial::generator(Gen::t(4)), q(1)));
        assert!(matches!(partial_product(&far, &chi, 1, 3), Err(HeckeError::SimpleOutOfRange { .. })));
    }
}
