//! Strata of varieties over finite fields as weight-graded L-data.
//!
//! An [`LData`] stores the Serre zeta function of a stratum as a product
//! `prod_w P_w(t)^{mult * (-1)^{w+1}}` of integer polynomials with constant
//! term 1. Point counts come from Newton power sums of each factor, so no
//! Frobenius eigenvalue is ever represented explicitly. A negative
//! multiplicity lets complements (differences of varieties) live in the same
//! type; such data is flagged virtual unless its closed-point census is
//! nonnegative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{divisors, int_pow, mobius, prime_power};
use crate::series::{QSeries, RationalFunction, ZPoly};

/// Depth to which censuses are checked when deciding whether a difference of
/// varieties is still an honest variety.
pub const VIRTUAL_CHECK_DEPTH: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("weight {0} outside 0..=4")]
    BadWeight(u8),
    #[error("factor of weight {weight} has constant term {constant}, expected 1")]
    ConstantTerm { weight: u8, constant: BigInt },
    #[error("L-data over different fields (q = {0} and q = {1})")]
    FieldMismatch(u64, u64),
    #[error("census at degree {degree} is {value}, so the data is not a variety")]
    NegativeCensus { degree: usize, value: BigInt },
    #[error("census at degree {degree} is not an integer")]
    NonIntegerCensus { degree: usize },
    #[error("census requested on virtual L-data")]
    Virtual,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("invalid curve numerator: {0}")]
    InvalidNumerator(String),
    #[error("trace {trace} violates the Hasse bound for q = {q}")]
    HasseBound { trace: i64, q: u64 },
    #[error("product has weight {0} > 4")]
    WeightOverflow(u8),
}

/// One factor `P(t)^{multiplicity}` of weight `weight`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LFactor {
    pub weight: u8,
    /// Coefficients of `P`, lowest degree first, `P(0) = 1`.
    pub poly: Vec<BigInt>,
    pub multiplicity: i32,
}

impl LFactor {
    pub fn new(weight: u8, poly: Vec<BigInt>, multiplicity: i32) -> Result<Self, WeilError> {
        if weight > 4 {
            return Err(WeilError::BadWeight(weight));
        }
        let mut poly = poly;
        while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        let constant = poly.first().cloned().unwrap_or_default();
        if !constant.is_one() {
            return Err(WeilError::ConstantTerm { weight, constant });
        }
        Ok(LFactor { weight, poly, multiplicity })
    }

    /// `1 - c t`.
    fn linear(weight: u8, c: BigInt, multiplicity: i32) -> Self {
        LFactor { weight, poly: vec![BigInt::one(), -c], multiplicity }
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Power sums `s_1..s_k` of the inverse roots.
    pub fn power_sums(&self, k: usize) -> Vec<BigInt> {
        newton_power_sums(&self.poly, k)
    }
}

/// `s_k` for `P(t) = prod (1 - alpha t)`, from `t P'/P = -sum s_k t^k`.
fn newton_power_sums(poly: &[BigInt], k: usize) -> Vec<BigInt> {
    let c = |i: usize| poly.get(i).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(k);
    for n in 1..=k {
        let mut acc = -c(n) * BigInt::from(n);
        for i in 1..n {
            acc -= c(i) * &s[n - i - 1];
        }
        s.push(acc);
    }
    s
}

/// Inverse of [`newton_power_sums`] for a polynomial of known degree.
fn poly_from_power_sums(s: &[BigInt], degree: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 1..=degree {
        let mut acc = s[n - 1].clone();
        for i in 1..n {
            acc += &c[i] * &s[n - i - 1];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero(), "power sums of an integer polynomial");
        c.push(-quot);
    }
    c
}

/// Weil-Betti numbers `b_0..b_4`; negative entries occur for virtual data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct WeilPoincare {
    pub betti: [i64; 5],
}

impl WeilPoincare {
    /// `P(z) = sum b_w z^w`.
    pub fn polynomial(&self) -> ZPoly {
        ZPoly::from_ints(&self.betti)
    }

    /// `e = sum (-1)^w b_w`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(w, b)| if w % 2 == 0 { *b } else { -b }).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut betti = self.betti;
        for (b, o) in betti.iter_mut().zip(other.betti) {
            *b += o;
        }
        WeilPoincare { betti }
    }
}

impl fmt::Display for WeilPoincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .betti
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0)
            .map(|(w, b)| match w {
                0 => format!("{b}"),
                1 => format!("{b}z"),
                _ => format!("{b}z^{w}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Named strata with known L-data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Catalog {
    Point,
    AffineLine,
    PuncturedAffineLine,
    P1,
    P2,
    A2,
    P1xP1,
    /// Elliptic curve with Frobenius trace `a`.
    Elliptic {
        trace: i64,
    },
    /// Smooth projective curve with the given L-polynomial numerator
    /// `1 + c_1 t + ... + c_{2g} t^{2g}`.
    GenusCurve {
        numerator: Vec<i64>,
    },
    /// Three non-concurrent lines.
    ThreeLines,
    /// A conic and a transversal line.
    ConicLine,
    NodalCubic,
}

impl Catalog {
    pub const NAMES: [&'static str; 12] = [
        "point",
        "affine_line",
        "punctured_affine_line",
        "P1",
        "P2",
        "A2",
        "P1xP1",
        "elliptic",
        "genus_g_curve",
        "three_lines",
        "conic_line",
        "nodal_cubic",
    ];

    /// Looks up an entry by name; `params` carries the trace for
    /// `elliptic` and the numerator for `genus_g_curve`.
    pub fn from_name(name: &str, params: &[i64]) -> Result<Self, WeilError> {
        let missing = || WeilError::InvalidNumerator(format!("`{name}` needs parameters"));
        Ok(match name {
            "point" => Catalog::Point,
            "affine_line" => Catalog::AffineLine,
            "punctured_affine_line" => Catalog::PuncturedAffineLine,
            "P1" => Catalog::P1,
            "P2" => Catalog::P2,
            "A2" => Catalog::A2,
            "P1xP1" => Catalog::P1xP1,
            "elliptic" => Catalog::Elliptic { trace: *params.first().ok_or_else(missing)? },
            "genus_g_curve" => {
                if params.is_empty() {
                    return Err(missing());
                }
                Catalog::GenusCurve { numerator: params.to_vec() }
            }
            "three_lines" => Catalog::ThreeLines,
            "conic_line" => Catalog::ConicLine,
            "nodal_cubic" => Catalog::NodalCubic,
            other => return Err(WeilError::UnknownCatalog(other.to_string())),
        })
    }
}

/// Serre zeta function of a stratum over `F_q` as weight-graded factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LData {
    q: u64,
    factors: Vec<LFactor>,
    is_virtual: bool,
}

impl LData {
    /// Builds L-data from explicit factors. Repeated `(weight, poly)` pairs
    /// are merged and the virtual flag is set from the census at
    /// [`VIRTUAL_CHECK_DEPTH`].
    pub fn new(q: u64, factors: Vec<LFactor>) -> Result<Self, WeilError> {
        if prime_power(q).is_none() {
            return Err(WeilError::NotPrimePower(q));
        }
        for f in &factors {
            LFactor::new(f.weight, f.poly.clone(), f.multiplicity)?;
        }
        let mut merged: BTreeMap<(u8, Vec<BigInt>), i32> = BTreeMap::new();
        for f in factors {
            *merged.entry((f.weight, f.poly)).or_default() += f.multiplicity;
        }
        let factors: Vec<LFactor> = merged
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|((weight, poly), multiplicity)| LFactor { weight, poly, multiplicity })
            .collect();
        let mut data = LData { q, factors, is_virtual: false };
        data.is_virtual = data.census_unchecked(VIRTUAL_CHECK_DEPTH).is_err();
        Ok(data)
    }

    pub fn catalog(entry: &Catalog, q: u64) -> Result<Self, WeilError> {
        let qb = BigInt::from(q);
        let one = BigInt::one;
        let pt = |m| LFactor::linear(0, one(), m);
        let line = |m| LFactor::linear(2, qb.clone(), m);
        let plane = |m| LFactor::linear(4, &qb * &qb, m);
        let factors = match entry {
            Catalog::Point => vec![pt(1)],
            Catalog::AffineLine => vec![line(1)],
            Catalog::PuncturedAffineLine => vec![line(1), pt(-1)],
            Catalog::P1 => vec![pt(1), line(1)],
            Catalog::P2 => vec![pt(1), line(1), plane(1)],
            Catalog::A2 => vec![plane(1)],
            Catalog::P1xP1 => vec![pt(1), line(2), plane(1)],
            Catalog::Elliptic { trace } => {
                if (*trace as i128).pow(2) > 4 * q as i128 {
                    return Err(WeilError::HasseBound { trace: *trace, q });
                }
                vec![
                    pt(1),
                    LFactor { weight: 1, poly: vec![one(), BigInt::from(-trace), qb.clone()], multiplicity: 1 },
                    line(1),
                ]
            }
            Catalog::GenusCurve { numerator } => {
                let numerator: Vec<BigInt> = numerator.iter().map(|&c| BigInt::from(c)).collect();
                validate_numerator(&numerator, q)?;
                let mut fs = vec![pt(1), line(1)];
                if numerator.len() > 1 {
                    fs.push(LFactor { weight: 1, poly: numerator, multiplicity: 1 });
                }
                let data = LData::new(q, fs)?;
                if data.is_virtual {
                    return Err(WeilError::InvalidNumerator("negative closed-point census".into()));
                }
                return Ok(data);
            }
            Catalog::ThreeLines => vec![line(3)],
            Catalog::ConicLine => vec![line(2)],
            Catalog::NodalCubic => vec![line(1)],
        };
        LData::new(q, factors)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn factors(&self) -> &[LFactor] {
        &self.factors
    }

    pub fn is_virtual(&self) -> bool {
        self.is_virtual
    }

    fn same_field(&self, other: &Self) -> Result<(), WeilError> {
        if self.q != other.q {
            return Err(WeilError::FieldMismatch(self.q, other.q));
        }
        Ok(())
    }

    /// Multiplies Serre zetas, so point counts add.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, WeilError> {
        self.same_field(other)?;
        LData::new(self.q, self.factors.iter().chain(&other.factors).cloned().collect())
    }

    /// `self` minus a closed subvariety `other`: divides Serre zetas.
    pub fn complement(&self, other: &Self) -> Result<Self, WeilError> {
        self.same_field(other)?;
        let negated = other.factors.iter().map(|f| LFactor { multiplicity: -f.multiplicity, ..f.clone() });
        LData::new(self.q, self.factors.iter().cloned().chain(negated).collect())
    }

    /// Cartesian product: inverse roots multiply and weights add.
    pub fn product(&self, other: &Self) -> Result<Self, WeilError> {
        self.same_field(other)?;
        let mut factors = Vec::new();
        for a in &self.factors {
            for b in &other.factors {
                let weight = a.weight + b.weight;
                if weight > 4 {
                    return Err(WeilError::WeightOverflow(weight));
                }
                let degree = a.degree() * b.degree();
                let sa = a.power_sums(degree);
                let sb = b.power_sums(degree);
                let s: Vec<BigInt> = sa.iter().zip(&sb).map(|(x, y)| x * y).collect();
                factors.push(LFactor {
                    weight,
                    poly: poly_from_power_sums(&s, degree),
                    multiplicity: a.multiplicity * b.multiplicity,
                });
            }
        }
        LData::new(self.q, factors)
    }

    /// `|Y(F_{q^k})|` for `k = 1..=depth`, index `k - 1`.
    pub fn point_counts(&self, depth: usize) -> Vec<BigInt> {
        let mut counts = vec![BigInt::zero(); depth];
        for f in &self.factors {
            let sign = if f.weight % 2 == 0 { f.multiplicity } else { -f.multiplicity };
            for (c, s) in counts.iter_mut().zip(f.power_sums(depth)) {
                *c += s * BigInt::from(sign);
            }
        }
        counts
    }

    /// `prod_w P_w^{mult * (-1)^{w+1}}`.
    pub fn serre_zeta(&self) -> RationalFunction {
        let mut acc = RationalFunction::one();
        for f in &self.factors {
            let p = RationalFunction::from_integer_polys(&f.poly, &[BigInt::one()]).expect("constant term 1");
            let exp = if f.weight % 2 == 0 { -f.multiplicity } else { f.multiplicity };
            acc = acc.mul(&p.pow(exp as i64).expect("P(0) = 1 is invertible"));
        }
        acc
    }

    /// `exp(sum_k N_k t^k / k)` to order `depth`, an independent route to
    /// the Serre zeta expansion.
    pub fn serre_zeta_from_counts(&self, depth: usize) -> QSeries {
        let mut log = vec![BigRational::zero()];
        for (k, n) in self.point_counts(depth).into_iter().enumerate() {
            log.push(BigRational::new(n, BigInt::from(k + 1)));
        }
        QSeries::new(log, depth).exp().expect("zero constant term")
    }

    fn census_unchecked(&self, depth: usize) -> Result<Vec<BigInt>, WeilError> {
        let counts = self.point_counts(depth);
        let mut census = Vec::with_capacity(depth);
        for k in 1..=depth {
            let mut acc = BigInt::zero();
            for d in divisors(k as u64) {
                acc += &counts[d as usize - 1] * BigInt::from(mobius(k as u64 / d));
            }
            let (a, rem) = acc.div_rem(&BigInt::from(k));
            if !rem.is_zero() {
                return Err(WeilError::NonIntegerCensus { degree: k });
            }
            if a.is_negative() {
                return Err(WeilError::NegativeCensus { degree: k, value: a });
            }
            census.push(a);
        }
        Ok(census)
    }

    /// Number of closed points of each degree `1..=depth`, index `k - 1`.
    ///
    /// Refuses virtual data whose census at [`VIRTUAL_CHECK_DEPTH`] already
    /// went negative, and any data whose census goes negative by `depth`.
    pub fn closed_point_census(&self, depth: usize) -> Result<Vec<BigInt>, WeilError> {
        if self.is_virtual {
            return Err(WeilError::Virtual);
        }
        self.census_unchecked(depth)
    }

    /// `b_w = sum of mult * deg P_w` over factors of weight `w`.
    pub fn weil_poincare(&self) -> WeilPoincare {
        let mut betti = [0i64; 5];
        for f in &self.factors {
            betti[f.weight as usize] += f.multiplicity as i64 * f.degree() as i64;
        }
        WeilPoincare { betti }
    }

    /// Dimension-free count used by the global formulas: `|Y(F_{q^k})|` at
    /// a single `k`.
    pub fn count(&self, k: usize) -> BigInt {
        self.point_counts(k).pop().unwrap_or_default()
    }
}

/// Functional equation `c_{2g-i} = q^{g-i} c_i` and `c_0 = 1`.
fn validate_numerator(c: &[BigInt], q: u64) -> Result<(), WeilError> {
    if c.len().is_multiple_of(2) {
        return Err(WeilError::InvalidNumerator(format!("degree {} is odd", c.len() - 1)));
    }
    if !c[0].is_one() {
        return Err(WeilError::InvalidNumerator("constant term must be 1".into()));
    }
    let g = (c.len() - 1) / 2;
    for i in 0..=g {
        if c[2 * g - i] != &c[i] * int_pow(q, (g - i) as u32) {
            return Err(WeilError::InvalidNumerator(format!(
                "coefficient {} is not q^{} times coefficient {i}",
                2 * g - i,
                g - i
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn cat(entry: Catalog, q: u64) -> LData {
        LData::catalog(&entry, q).unwrap()
    }

    #[test]
    fn plane_counts_and_census() {
        let p2 = cat(Catalog::P2, 2);
        assert_eq!(ints(&p2.point_counts(3)), vec![7, 21, 73]);
        assert_eq!(ints(&p2.closed_point_census(3).unwrap()), vec![7, 7, 22]);
        let a1 = cat(Catalog::AffineLine, 2);
        assert_eq!(ints(&a1.closed_point_census(3).unwrap()), vec![2, 1, 2]);
        let pt = cat(Catalog::Point, 5);
        assert_eq!(ints(&pt.closed_point_census(4).unwrap()), vec![1, 0, 0, 0]);
    }

    #[test]
    fn three_lines_counts() {
        let y = cat(Catalog::ThreeLines, 2);
        assert_eq!(ints(&y.point_counts(3)), vec![6, 12, 24]);
        assert_eq!(y.weil_poincare().betti, [0, 0, 3, 0, 0]);
        let pieces = cat(Catalog::P1, 2)
            .disjoint_union(&cat(Catalog::AffineLine, 2))
            .unwrap()
            .disjoint_union(&cat(Catalog::PuncturedAffineLine, 2))
            .unwrap();
        assert_eq!(pieces, y);
    }

    #[test]
    fn elliptic_data() {
        let e = cat(Catalog::Elliptic { trace: 1 }, 5);
        assert_eq!(ints(&e.point_counts(1)), vec![5]);
        assert_eq!(e.weil_poincare().betti, [1, 2, 1, 0, 0]);
        assert_eq!(e.weil_poincare().euler_characteristic(), 0);
        assert!(LData::catalog(&Catalog::Elliptic { trace: 5 }, 5).is_err());
    }

    #[test]
    fn serre_zeta_closed_forms() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let p1 = cat(Catalog::P1, 3).serre_zeta();
        let want = RationalFunction::geometric(q(1), 1).mul(&RationalFunction::geometric(q(3), 1));
        assert_eq!(p1, want);
        let nodal = cat(Catalog::NodalCubic, 3).serre_zeta();
        assert_eq!(nodal, RationalFunction::geometric(q(3), 1));
        assert_eq!(cat(Catalog::Point, 3).serre_zeta(), RationalFunction::geometric(q(1), 1));
    }

    #[test]
    fn serre_zeta_matches_counts() {
        for entry in [
            Catalog::P2,
            Catalog::P1xP1,
            Catalog::Elliptic { trace: -2 },
            Catalog::GenusCurve { numerator: vec![1, 0, 0, 0, 9] },
            Catalog::PuncturedAffineLine,
        ] {
            let l = cat(entry, 3);
            assert_eq!(l.serre_zeta().expand(8), l.serre_zeta_from_counts(8));
        }
    }

    #[test]
    fn complement_of_three_lines() {
        let u = cat(Catalog::P2, 3).complement(&cat(Catalog::ThreeLines, 3)).unwrap();
        let want: Vec<i64> = (1..=4u32).map(|k| 9i64.pow(k) - 2 * 3i64.pow(k) + 1).collect();
        assert_eq!(ints(&u.point_counts(4)), want);
        assert!(!u.is_virtual());
        let neg = cat(Catalog::Point, 3).complement(&cat(Catalog::P1, 3)).unwrap();
        assert!(neg.is_virtual());
        assert_eq!(neg.closed_point_census(2), Err(WeilError::Virtual));
    }

    #[test]
    fn union_adds_counts_and_betti() {
        let p1 = cat(Catalog::P1, 4);
        let pt = cat(Catalog::Point, 4);
        let u = p1.disjoint_union(&pt).unwrap();
        assert_eq!(ints(&u.point_counts(3)), vec![6, 18, 66]);
        assert_eq!(u.weil_poincare(), p1.weil_poincare().add(&pt.weil_poincare()));
    }

    #[test]
    fn product_of_lines() {
        let p1 = cat(Catalog::P1, 2);
        assert_eq!(p1.product(&p1).unwrap(), cat(Catalog::P1xP1, 2));
        let e = cat(Catalog::Elliptic { trace: 1 }, 2);
        let ee = e.product(&e).unwrap();
        let c = e.point_counts(3);
        let want: Vec<BigInt> = c.iter().map(|x| x * x).collect();
        assert_eq!(ee.point_counts(3), want);
        assert_eq!(ee.weil_poincare().betti, [1, 4, 6, 4, 1]);
    }

    #[test]
    fn numerator_validation() {
        assert!(LData::catalog(&Catalog::GenusCurve { numerator: vec![1, 1, 2] }, 2).is_ok());
        assert!(LData::catalog(&Catalog::GenusCurve { numerator: vec![1, 1, 3] }, 2).is_err());
        assert!(LData::catalog(&Catalog::GenusCurve { numerator: vec![1, 1] }, 2).is_err());
        // functional equation holds but the curve would have -6 rational points
        assert!(LData::catalog(&Catalog::GenusCurve { numerator: vec![1, -9, 39, -18, 4] }, 2).is_err());
        assert!(matches!(Catalog::from_name("torus", &[]), Err(WeilError::UnknownCatalog(_))));
        assert_eq!(Catalog::from_name("elliptic", &[2]).unwrap(), Catalog::Elliptic { trace: 2 });
    }

    #[test]
    fn bad_factors_rejected() {
        assert!(LFactor::new(5, vec![BigInt::one()], 1).is_err());
        assert!(LFactor::new(0, vec![BigInt::from(2)], 1).is_err());
        assert_eq!(LData::new(6, vec![]), Err(WeilError::NotPrimePower(6)));
    }
}
