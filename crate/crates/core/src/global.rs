//! Zeta functions of maximal orders on surfaces, assembled from strata.
//!
//! A global order is described by its degree `d`, the L-data of its
//! Azumaya locus `U`, and one [`RamificationStratum`] per ramification
//! curve, each carrying the L-data of its cover and its ramification index
//! `e` (so the local residue shape there is `M_r` with `r = d / e`).
//!
//! Point-count series come from substituting `t -> q^a t^b` into Serre zeta
//! functions; Poincare series carry a second variable `z` and are built
//! from Weil-Betti numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{gcd, prime_power, rational_pow};
use crate::local::{local_factor, LocalError};
use crate::series::{
    infinite_product, infinite_product_rational, Coefficient, DirichletSeries, QSeries, RationalFunction, SeriesError,
    ZPoly, ZSeries,
};
use crate::weil::{Catalog, LData, WeilError, WeilPoincare};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlobalError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("ramification index {e} must be at least 2")]
    IndexTooSmall { e: usize },
    #[error("ramification index {e} does not divide the degree {d}")]
    IndexNotDividing { d: usize, e: usize },
    #[error("q = {q} is not coprime to the degree {d}")]
    NotCoprime { q: u64, d: usize },
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("strata are defined over different fields (q = {0} and q = {1})")]
    FieldMismatch(u64, u64),
    #[error("Poincare forms differ at t^{degree}: exp form {exp_form}, product form {product_form}")]
    PoincareMismatch { degree: usize, exp_form: String, product_form: String },
    #[error("coefficient of t^{degree} has an odd power of z, so it cannot be evaluated at z^2 = q")]
    OddPower { degree: usize },
    #[error("closed-point census at degree {degree} is too large to use as an exponent")]
    CensusTooLarge { degree: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationStratum {
    /// L-data of the ramification cover, not of the base curve.
    pub cover: LData,
    pub e: usize,
}

/// Hypotheses that the formulas assume but this crate does not enforce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecNotes {
    /// All strata share one ramification index.
    pub equal_indices: bool,
    /// `d | q - 1`, so `F_q` has primitive `d`-th roots of unity.
    pub roots_of_unity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    q: u64,
    d: usize,
    azumaya_locus: LData,
    strata: Vec<RamificationStratum>,
    notes: SpecNotes,
}

impl OrderSpec {
    pub fn new(d: usize, azumaya_locus: LData, strata: Vec<RamificationStratum>) -> Result<Self, GlobalError> {
        let q = azumaya_locus.q();
        if d == 0 {
            return Err(GlobalError::ZeroDegree);
        }
        if gcd(q, d as u64) != 1 {
            return Err(GlobalError::NotCoprime { q, d });
        }
        for s in &strata {
            if s.cover.q() != q {
                return Err(GlobalError::FieldMismatch(q, s.cover.q()));
            }
            check_index(d, s.e)?;
        }
        let notes = SpecNotes {
            equal_indices: strata.windows(2).all(|w| w[0].e == w[1].e),
            roots_of_unity: (q - 1).is_multiple_of(d as u64),
        };
        Ok(OrderSpec { q, d, azumaya_locus, strata, notes })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn azumaya_locus(&self) -> &LData {
        &self.azumaya_locus
    }

    pub fn strata(&self) -> &[RamificationStratum] {
        &self.strata
    }

    pub fn notes(&self) -> SpecNotes {
        self.notes
    }
}

fn check_index(d: usize, e: usize) -> Result<usize, GlobalError> {
    if e < 2 {
        return Err(GlobalError::IndexTooSmall { e });
    }
    if !d.is_multiple_of(e) {
        return Err(GlobalError::IndexNotDividing { d, e });
    }
    Ok(d / e)
}

/// `prod_{n>=1} prod_{j=1}^b Z_X(q^{nb-j} t^{nb})`.
fn stratum_product(x: &LData, b: usize, order: usize) -> Result<QSeries, GlobalError> {
    let zx = x.serre_zeta();
    let q = BigInt::from(x.q());
    Ok(infinite_product_rational(b, order, |n| {
        let mut acc = RationalFunction::one();
        for j in 1..=b {
            acc = acc.mul(&zx.substitute(&q, (n * b - j) as i64, n * b)?);
        }
        Ok(acc)
    })?)
}

/// Zeta function of a degree-`d` Azumaya algebra on `X`.
pub fn azumaya_zeta(x: &LData, d: usize, order: usize) -> Result<QSeries, GlobalError> {
    if d == 0 {
        return Err(GlobalError::ZeroDegree);
    }
    stratum_product(x, d, order)
}

/// The same zeta function built from the Brauer-Severi scheme
/// `B = P^{d-1}_X`: `Z_B(t) = prod_{j=1}^d Z_X(q^{d-j} t)` and
/// `Z = prod_{n>=1} Z_B(q^{nd-d} t^{nd})`.
pub fn brauer_severi_zeta(x: &LData, d: usize, order: usize) -> Result<QSeries, GlobalError> {
    if d == 0 {
        return Err(GlobalError::ZeroDegree);
    }
    let q = BigInt::from(x.q());
    let zx = x.serre_zeta();
    let mut zb = RationalFunction::one();
    for j in 1..=d {
        zb = zb.mul(&zx.substitute(&q, (d - j) as i64, 1)?);
    }
    Ok(infinite_product_rational(d, order, |n| zb.substitute(&q, (n * d - d) as i64, n * d))?)
}

/// Contribution of one ramification stratum.
pub fn strata_zeta(stratum: &RamificationStratum, d: usize, order: usize) -> Result<QSeries, GlobalError> {
    let r = check_index(d, stratum.e)?;
    stratum_product(&stratum.cover, r, order)
}

pub fn order_zeta(spec: &OrderSpec, order: usize) -> Result<QSeries, GlobalError> {
    let mut acc = azumaya_zeta(&spec.azumaya_locus, spec.d, order)?;
    for s in &spec.strata {
        acc = acc.mul(&strata_zeta(s, spec.d, order)?);
    }
    Ok(acc)
}

/// `prod_k local_factor(k, q, r, 1)^{a_k}` over closed points of a stratum.
fn euler_over_points(x: &LData, r: usize, order: usize) -> Result<QSeries, GlobalError> {
    let depth = order / r;
    let census = x.closed_point_census(depth.max(1))?;
    let factors: Vec<QSeries> = census
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let k = i + 1;
            let exp = a.to_i64().ok_or(GlobalError::CensusTooLarge { degree: k })?;
            Ok(local_factor(k, x.q(), r, 1, order)?.pow(exp)?)
        })
        .collect::<Result<_, GlobalError>>()?;
    Ok(factors.iter().fold(QSeries::one(order), |acc, f| acc.mul(f)))
}

/// The zeta function as a product of local factors over closed points,
/// using the closed-point censuses of `U` and of every cover.
pub fn euler_product_zeta(spec: &OrderSpec, order: usize) -> Result<QSeries, GlobalError> {
    let mut acc = euler_over_points(&spec.azumaya_locus, spec.d, order)?;
    for s in &spec.strata {
        acc = acc.mul(&euler_over_points(&s.cover, spec.d / s.e, order)?);
    }
    Ok(acc)
}

/// Ratio `Z_A / Z_{M_d(O_X)}` computed from the base ramification curves
/// and their covers alone: `prod strata_zeta / azumaya_zeta(Y, d)`.
pub fn ramified_ratio(
    base: &LData,
    strata: &[RamificationStratum],
    d: usize,
    order: usize,
) -> Result<QSeries, GlobalError> {
    let mut acc = azumaya_zeta(base, d, order)?.invert()?;
    for s in strata {
        acc = acc.mul(&strata_zeta(s, d, order)?);
    }
    Ok(acc)
}

/// Dirichlet series of the affine line over the integers: at each prime
/// the local factor is `prod_{n>=1} (1 - p^n x^n)^{-1}` with `x = p^{-s}`.
pub fn segal_dirichlet(bound: usize) -> Result<DirichletSeries, GlobalError> {
    Ok(DirichletSeries::from_euler(bound, |p| {
        let mut depth = 0;
        let mut pk = p;
        while pk <= bound {
            depth += 1;
            pk *= p;
        }
        segal_product(p, depth)
    })?)
}

fn segal_product(p: usize, order: usize) -> Result<QSeries, SeriesError> {
    let p = BigInt::from(p);
    infinite_product_rational(1, order, |n| Ok(RationalFunction::geometric(rational_pow(&p, n as i64), n)))
}

/// Local factor at `p` truncated at `x^order`.
pub fn segal_local_series(p: usize, order: usize) -> Result<QSeries, GlobalError> {
    Ok(segal_product(p, order)?)
}

/// Exponential form of the Poincare series of one stratum with local
/// shape `M_b`, returned in the variable `z`:
/// `Z(-w, t) = exp(sum_k P(-w^k)/k * t^{kb} (w^{2bk} - 1) / ((1 - (w^2 t)^{kb}) (w^{2k} - 1)))`
/// evaluated at `w = -z`.
pub fn poincare_exp_form(p: &WeilPoincare, b: usize, order: usize) -> Result<ZSeries, GlobalError> {
    let poly = p.polynomial();
    let mut log = ZSeries::zero(order);
    let mut k = 1;
    while k * b <= order {
        // P(-w^k)
        let pk = poly.substitute_monomial(&-BigRational::one(), k);
        let ratio = div_exact(
            &ZPoly::monomial(BigRational::one(), 2 * b * k).minus(&ZPoly::one()),
            &ZPoly::monomial(BigRational::one(), 2 * k).minus(&ZPoly::one()),
        );
        let mut den = vec![ZPoly::one(); 1];
        den.resize(k * b + 1, ZPoly::zero());
        den[k * b] = ZPoly::monomial(-BigRational::one(), 2 * k * b);
        let geo = ZSeries::new(den, order).invert()?;
        let head = ZSeries::monomial(
            pk.times(&ratio).times(&ZPoly::constant(BigRational::new(1.into(), (k as i64).into()))),
            k * b,
            order,
        );
        log = log.add(&head.mul(&geo));
        k += 1;
    }
    let in_w = log.exp()?;
    Ok(in_w.map(|c| c.substitute_monomial(&-BigRational::one(), 1)))
}

/// Betti-number product form of the same series:
/// `prod_{i=0}^4 prod_{j>=0} prod_{l<b} (1 - (-z)^{2jb+2l+i} t^{jb+b})^{-(-1)^i b_i}`.
pub fn poincare_product_form(p: &WeilPoincare, b: usize, order: usize) -> Result<ZSeries, GlobalError> {
    Ok(infinite_product(b, order, |n| {
        let j = n - 1;
        let mut acc = ZSeries::one(order);
        for (i, &bi) in p.betti.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            for l in 0..b {
                let e = 2 * j * b + 2 * l + i;
                let sign = if e.is_multiple_of(2) { 1 } else { -1 };
                let mut f = vec![ZPoly::one()];
                f.resize(n * b + 1, ZPoly::zero());
                f[n * b] = ZPoly::monomial(BigRational::from_integer((-sign).into()), e);
                let exp = if i % 2 == 0 { -bi } else { bi };
                acc = acc.mul(&ZSeries::new(f, order).pow(exp)?);
            }
        }
        Ok(acc)
    })?)
}

fn div_exact(num: &ZPoly, den: &ZPoly) -> ZPoly {
    let dd = den.degree().expect("nonzero divisor");
    let lead = den.coeff(dd);
    let mut rem: Vec<BigRational> = num.coeffs().to_vec();
    let Some(nd) = num.degree() else { return ZPoly::zero() };
    if nd < dd {
        return ZPoly::zero();
    }
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = &rem[i + dd] / &lead;
        for (k, dc) in den.coeffs().iter().enumerate() {
            rem[i + k] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division is exact");
    ZPoly::new(quot)
}

fn compare_forms(exp_form: &ZSeries, product_form: &ZSeries) -> Result<(), GlobalError> {
    for (degree, (a, b)) in exp_form.coeffs().iter().zip(product_form.coeffs()).enumerate() {
        if a != b {
            return Err(GlobalError::PoincareMismatch { degree, exp_form: a.to_string(), product_form: b.to_string() });
        }
    }
    Ok(())
}

/// Poincare series of one stratum with local shape `M_b`, computed by both
/// the exponential and the product form and checked equal.
pub fn stratum_poincare(p: &WeilPoincare, b: usize, order: usize) -> Result<ZSeries, GlobalError> {
    let exp_form = poincare_exp_form(p, b, order)?;
    let product_form = poincare_product_form(p, b, order)?;
    compare_forms(&exp_form, &product_form)?;
    Ok(product_form)
}

/// `Z^Poin(z, t)` of an order: the Azumaya-locus series with `b = d` times
/// one series per stratum with `b = d / e`.
pub fn poincare_zeta(spec: &OrderSpec, order: usize) -> Result<ZSeries, GlobalError> {
    let mut acc = stratum_poincare(&spec.azumaya_locus.weil_poincare(), spec.d, order)?;
    for s in &spec.strata {
        acc = acc.mul(&stratum_poincare(&s.cover.weil_poincare(), spec.d / s.e, order)?);
    }
    Ok(acc)
}

/// Poincare series of `M_d(O_X)`.
pub fn azumaya_poincare(x: &LData, d: usize, order: usize) -> Result<ZSeries, GlobalError> {
    if d == 0 {
        return Err(GlobalError::ZeroDegree);
    }
    stratum_poincare(&x.weil_poincare(), d, order)
}

/// Substitutes `z = -1`.
pub fn euler_specialize(p: &ZSeries) -> QSeries {
    let minus_one = -BigRational::one();
    p.map(|c| c.eval(&minus_one))
}

/// Substitutes `z^2 = q`; fails if an odd power of `z` occurs.
pub fn evaluate_at_root_q(p: &ZSeries, q: u64) -> Result<QSeries, GlobalError> {
    let qb = BigInt::from(q);
    let mut out = Vec::with_capacity(p.order() + 1);
    for (degree, c) in p.coeffs().iter().enumerate() {
        let mut acc = BigRational::zero();
        for (i, a) in c.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if i % 2 == 1 {
                return Err(GlobalError::OddPower { degree });
            }
            acc += a * rational_pow(&qb, (i / 2) as i64);
        }
        out.push(acc);
    }
    Ok(QSeries::new(out, p.order()))
}

/// `prod_j (1 - t^{dj+d})^{-e d}` for Euler characteristic `e`.
pub fn euler_closed_form(euler_characteristic: i64, d: usize, order: usize) -> Result<QSeries, GlobalError> {
    Ok(infinite_product(d, order, |n| {
        let mut f = QSeries::one(order);
        f = f.sub(&QSeries::monomial(BigRational::one(), n * d, order));
        f.pow(-euler_characteristic * d as i64)
    })?)
}

/// Ratio of Poincare series of a singular-cubic order to the matrix
/// algebra of the same degree:
/// `prod_j prod_{l<r} (1 - z^{2jr+2l+2} t^{jr+r})^{-h} / prod_{l<d} (1 - z^{2jd+2l+2} t^{jd+d})^{-h}`.
pub fn singular_cubic_poincare_ratio(h: i64, d: usize, r: usize, order: usize) -> Result<ZSeries, GlobalError> {
    let block = |b: usize| -> Result<ZSeries, GlobalError> {
        Ok(infinite_product(b, order, |n| {
            let j = n - 1;
            let mut acc = ZSeries::one(order);
            for l in 0..b {
                let f = ZSeries::one(order).sub(&ZSeries::monomial(
                    ZPoly::monomial(BigRational::one(), 2 * j * b + 2 * l + 2),
                    n * b,
                    order,
                ));
                acc = acc.mul(&f.pow(-h)?);
            }
            Ok(acc)
        })?)
    };
    Ok(block(r)?.mul(&block(d)?.invert()?))
}

/// Ratio of Poincare series `prod covers / Azumaya(Y)` from Betti numbers
/// of the base curve and of the covers.
pub fn poincare_ratio(
    base: &WeilPoincare,
    strata: &[(WeilPoincare, usize)],
    d: usize,
    order: usize,
) -> Result<ZSeries, GlobalError> {
    let mut acc = stratum_poincare(base, d, order)?.invert()?;
    for (p, r) in strata {
        acc = acc.mul(&stratum_poincare(p, *r, order)?);
    }
    Ok(acc)
}

/// Noncommutative projective planes: maximal orders on `P^2` ramified on a
/// cubic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    ThreeLines,
    ConicLine,
    NodalCubic,
    /// Smooth elliptic ramification curve with Frobenius trace `a` and an
    /// etale cyclic cover with the same L-polynomial.
    Sklyanin {
        trace: i64,
    },
}

impl PlaneKind {
    pub fn from_name(name: &str, trace: Option<i64>) -> Option<Self> {
        Some(match name {
            "three_lines" => PlaneKind::ThreeLines,
            "conic_line" => PlaneKind::ConicLine,
            "nodal_cubic" => PlaneKind::NodalCubic,
            "sklyanin" => PlaneKind::Sklyanin { trace: trace.unwrap_or(0) },
            _ => return None,
        })
    }

    /// Number of rational components `h` for the singular kinds.
    pub fn components(&self) -> Option<i64> {
        match self {
            PlaneKind::ThreeLines => Some(3),
            PlaneKind::ConicLine => Some(2),
            PlaneKind::NodalCubic => Some(1),
            PlaneKind::Sklyanin { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePreset {
    pub kind: PlaneKind,
    pub spec: OrderSpec,
    /// The ramification curve itself.
    pub base: LData,
    pub plane: LData,
    pub e: usize,
}

impl PlanePreset {
    pub fn r(&self) -> usize {
        self.spec.d / self.e
    }
}

/// Builds the order spec of a maximal order of degree `d` on `P^2_{F_q}`
/// ramified on a cubic of the given kind with index `e`.
///
/// For the singular kinds the cover is totally ramified at the singular
/// points, so it has the same point counts as the base curve; it is built
/// from rational pieces (for three lines: a line, an affine line and a
/// punctured affine line).
pub fn nc_plane_preset(kind: PlaneKind, d: usize, e: usize, q: u64) -> Result<PlanePreset, GlobalError> {
    if prime_power(q).is_none() {
        return Err(GlobalError::NotPrimePower(q));
    }
    check_index(d, e)?;
    let cat = |c: Catalog| LData::catalog(&c, q);
    let (base, cover) = match kind {
        PlaneKind::ThreeLines => {
            let cover = cat(Catalog::P1)?
                .disjoint_union(&cat(Catalog::AffineLine)?)?
                .disjoint_union(&cat(Catalog::PuncturedAffineLine)?)?;
            (cat(Catalog::ThreeLines)?, cover)
        }
        PlaneKind::ConicLine => {
            let two_points = cat(Catalog::Point)?.disjoint_union(&cat(Catalog::Point)?)?;
            let cover = cat(Catalog::P1)?.disjoint_union(&cat(Catalog::P1)?.complement(&two_points)?)?;
            (cat(Catalog::ConicLine)?, cover)
        }
        PlaneKind::NodalCubic => {
            let cover = cat(Catalog::P1)?.complement(&cat(Catalog::Point)?)?;
            (cat(Catalog::NodalCubic)?, cover)
        }
        PlaneKind::Sklyanin { trace } => {
            let curve = cat(Catalog::Elliptic { trace })?;
            (curve.clone(), curve)
        }
    };
    let plane = cat(Catalog::P2)?;
    let u = plane.complement(&base)?;
    let spec = OrderSpec::new(d, u, vec![RamificationStratum { cover, e }])?;
    Ok(PlanePreset { kind, spec, base, plane, e })
}

/// `true` when every coefficient is a nonnegative integer.
pub fn is_counting_series(s: &QSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}
