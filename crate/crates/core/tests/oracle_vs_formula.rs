//! Brute-force censuses against the closed-form series, beyond the
//! acceptance set.

use num_bigint::BigInt;
use num_rational::BigRational;

use ozeta::global::{azumaya_zeta, segal_dirichlet};
use ozeta::hecke::{multi_param_zeta, ChiSpec, Gen, LMonomial, LSeries};
use ozeta::local::{local_factor, slice_zeta, LocalOrderShape};
use ozeta::oracle::field::Field;
use ozeta::oracle::{
    build_delta_l, build_symbol, check_slice, count_ideals_algebra, count_ideals_integer_poly, count_sublattices,
    subscheme_census_p2, verify_tower, SymbolParam, SymbolSpec,
};
use ozeta::series::QSeries;
use ozeta::weil::{Catalog, LData};

fn ints(s: &QSeries) -> Vec<u64> {
    s.to_integers().unwrap().iter().map(|c| u64::try_from(c).unwrap()).collect()
}

fn symbol(q: u64, e: u32, a: SymbolParam, b: SymbolParam) -> SymbolSpec {
    let f = Field::new(q).unwrap();
    SymbolSpec { q, e, xi: f.primitive_root_of_unity(e.into()).unwrap(), a, b }
}

fn as_lseries(by_class: &std::collections::BTreeMap<Vec<usize>, u64>, g: usize, bound: u32) -> LSeries {
    let mut s = LSeries::zero(g, bound);
    for (class, &n) in by_class {
        let m = LMonomial::from_exponents(
            class.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, &k)| (Gen::t(j as u32), k as u32)),
        );
        s = s.add(&LSeries::monomial(g, bound, m, BigRational::from_integer(n.into())));
    }
    s
}

#[test]
fn rank_three_sublattices() {
    let formula = ozeta::local::hey_zeta(LocalOrderShape::new(2, 3, 1).unwrap(), 6);
    for (colength, n) in count_sublattices(2, 3, 2).unwrap() {
        assert_eq!(formula.coeff(colength).unwrap(), &BigRational::from_integer(n.into()));
    }
}

#[test]
fn split_symbol_is_two_simples() {
    // x^2 = u, y^2 = 1: y splits the algebra into two simples swapped by x.
    let alg = build_symbol(symbol(3, 2, SymbolParam::U, SymbolParam::Unit(1)), 4).unwrap();
    assert!(check_slice(&alg, 3).unwrap().passed());
    let census = count_ideals_algebra(&alg, 3).unwrap();
    let formula = slice_zeta(LocalOrderShape::new(3, 1, 2).unwrap(), 3).unwrap();
    assert_eq!(census.counts(3), ints(&formula));
    assert_eq!(census.counts(3), vec![1, 2, 9, 34]);
    let chi = ChiSpec::new(vec![3.into(), 3.into()], vec![1, 0]).unwrap();
    let z = multi_param_zeta(&LSeries::hey(3, 1, 2, 3), &chi, 3).unwrap();
    assert_eq!(as_lseries(&census.by_class, 2, 3), z);
}

#[test]
fn inert_symbol_is_unramified_degree_two() {
    // y^2 = 2 is a non-square in F_3, so the residue algebra is F_9.
    let alg = build_symbol(symbol(3, 2, SymbolParam::U, SymbolParam::Unit(2)), 4).unwrap();
    assert!(check_slice(&alg, 3).unwrap().passed());
    let census = count_ideals_algebra(&alg, 4).unwrap();
    assert_eq!(census.counts(4), ints(&local_factor(2, 3, 1, 1, 4).unwrap()));
    assert_eq!(census.counts(4), vec![1, 0, 1, 0, 10]);
}

#[test]
fn second_delta_matches_twisted_multi_parameter_zeta() {
    let alg = build_delta_l(symbol(3, 2, SymbolParam::U, SymbolParam::V), 2, 4).unwrap();
    assert!(check_slice(&alg, 3).unwrap().passed());
    let census = count_ideals_algebra(&alg, 3).unwrap();
    let chi = ChiSpec::new(vec![3.into(), 3.into()], vec![1, 0]).unwrap();
    let zbar = LSeries::hey(3, 1, 2, 3);
    let z = multi_param_zeta(&zbar, &chi, 3).unwrap();
    assert_eq!(as_lseries(&census.by_class, 2, 3), z);
}

#[test]
fn towers_on_noncommutative_algebras() {
    let quaternion = build_symbol(symbol(3, 2, SymbolParam::U, SymbolParam::V), 5).unwrap();
    let report = verify_tower(&quaternion, 3, 3).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    let delta = build_delta_l(symbol(3, 2, SymbolParam::U, SymbolParam::V), 2, 5).unwrap();
    let report = verify_tower(&delta, 3, 3).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.powers.iter().all(|p| p.degree_matches == Some(true)));
}

#[test]
fn segal_composite_indices() {
    let s = segal_dirichlet(7).unwrap();
    for n in 1..=7usize {
        let brute = count_ideals_integer_poly(n as u64).unwrap();
        assert_eq!(s.coeff(n).unwrap(), &BigRational::from_integer(BigInt::from(brute)), "n = {n}");
    }
}

#[test]
fn plane_length_two_at_several_fields() {
    for q in [2u64, 3, 4, 5] {
        let z = azumaya_zeta(&LData::catalog(&Catalog::P2, q).unwrap(), 1, 2).unwrap();
        let census: Vec<u64> = (0..=2).map(|n| subscheme_census_p2(q, n).unwrap()).collect();
        assert_eq!(ints(&z), census, "q = {q}");
    }
}
