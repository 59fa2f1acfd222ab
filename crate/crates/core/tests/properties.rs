use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ozeta::hecke::{ChiSpec, Gen, LMonomial, LSeries};
use ozeta::series::{infinite_product, QSeries, RationalFunction};

const ORDER: usize = 6;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-5i64..=5, 1..=ORDER + 1).prop_map(|c| QSeries::from_ints(&c, ORDER))
}

/// Series with constant term 1.
fn unit_series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-4i64..=4, 0..=ORDER).prop_map(|tail| {
        let mut c = vec![1];
        c.extend(tail);
        QSeries::from_ints(&c, ORDER)
    })
}

fn polynomial(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(-3i64..=3, 0..=len).prop_map(|tail| std::iter::once(1).chain(tail).map(rat).collect())
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (polynomial(3), polynomial(3)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

const G: usize = 2;
const BOUND: u32 = 5;

fn lseries() -> impl Strategy<Value = LSeries> {
    let term = (0u32..2, 0u32..2, 0u32..2, 1u32..3, -3i64..=3);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let mut s = LSeries::zero(G, BOUND);
        for (twist, simple, other, exp, c) in terms {
            let m = LMonomial::from_exponents([(Gen { twist, simple }, exp), (Gen::t(other), 1)]);
            s = s.add(&LSeries::monomial(G, BOUND, m, rat(c)));
        }
        s
    })
}

fn chi() -> impl Strategy<Value = ChiSpec> {
    (2i64..6, 2i64..6, any::<bool>()).prop_map(|(a, b, swap)| {
        let sigma = if swap { vec![1, 0] } else { vec![0, 1] };
        let sizes = if swap { vec![BigInt::from(a), BigInt::from(a)] } else { vec![BigInt::from(a), BigInt::from(b)] };
        ChiSpec::new(sizes, sigma).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&QSeries::one(ORDER)), a);
    }

    #[test]
    fn inverse_exp_and_log(u in unit_series(), v in unit_series()) {
        prop_assert_eq!(u.mul(&u.invert().unwrap()), QSeries::one(ORDER));
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u.clone());
        prop_assert_eq!(u.mul(&v).log().unwrap(), u.log().unwrap().add(&v.log().unwrap()));
        prop_assert_eq!(u.pow(-2).unwrap().mul(&u.pow(3).unwrap()), u);
    }

    #[test]
    fn substitution_is_multiplicative(f in rational_function(), g in rational_function(), a in -2i64..=2, b in 1usize..=3) {
        let q = BigInt::from(3);
        let lhs = f.mul(&g).substitute(&q, a, b).unwrap();
        let rhs = f.substitute(&q, a, b).unwrap().mul(&g.substitute(&q, a, b).unwrap());
        prop_assert_eq!(lhs.expand(ORDER), rhs.expand(ORDER));
        let scale = if a >= 0 { rat(3).pow(a as i32) } else { BigRational::new(1.into(), BigInt::from(3).pow((-a) as u32)) };
        prop_assert_eq!(f.substitute(&q, a, b).unwrap().expand(ORDER), f.expand(ORDER).compose_monomial(&scale, b).unwrap());
    }

    #[test]
    fn xi_is_a_ring_endomorphism(a in lseries(), b in lseries(), chi in chi()) {
        prop_assert_eq!(a.mul(&b).xi(&chi), a.xi(&chi).mul(&b.xi(&chi)));
        prop_assert_eq!(a.add(&b).xi(&chi), a.xi(&chi).add(&b.xi(&chi)));
        prop_assert_eq!(LSeries::one(G, BOUND).xi(&chi), LSeries::one(G, BOUND));
    }

    #[test]
    fn product_is_exp_of_log_sum(factors in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=3), 1..=4)) {
        // factor n is 1 + c_1 t^n + c_2 t^(n+1) + ...
        let make = |n: usize| {
            let mut c = vec![0i64; n + factors[n - 1].len()];
            c[0] = 1;
            for (k, &x) in factors[n - 1].iter().enumerate() {
                c[n + k] = x;
            }
            QSeries::from_ints(&c, ORDER)
        };
        let product = infinite_product(1, ORDER, |n| Ok(if n <= factors.len() { make(n) } else { QSeries::one(ORDER) })).unwrap();
        let mut log = QSeries::zero(ORDER);
        for n in 1..=factors.len() {
            log = log.add(&make(n).log().unwrap());
        }
        prop_assert_eq!(product, log.exp().unwrap());
    }
}
