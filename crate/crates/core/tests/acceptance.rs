//! Acceptance run: every criterion prints one PASS or FAIL line, and the
//! process exits nonzero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use ozeta::global::{
    azumaya_poincare, azumaya_zeta, brauer_severi_zeta, euler_closed_form, euler_product_zeta, euler_specialize,
    nc_plane_preset, order_zeta, poincare_exp_form, poincare_product_form, poincare_ratio, poincare_zeta,
    ramified_ratio, segal_dirichlet, singular_cubic_poincare_ratio, OrderSpec, PlaneKind,
};
use ozeta::hecke::{partial_product, xi_power_closed_form, ChiSpec, Gen, LMonomial, LSeries};
use ozeta::local::{hey_zeta, slice_zeta, LocalOrderShape};
use ozeta::oracle::census::{length_two_polynomial, plane_census};
use ozeta::oracle::field::Field;
use ozeta::oracle::{
    build_symbol, check_slice, commutative_truncation, count_ideals_2d, count_ideals_algebra,
    count_ideals_integer_poly, count_sublattices, subscheme_census_p2, verify_tower, SymbolParam, SymbolSpec,
};
use ozeta::series::{infinite_product, QSeries, ZPoly, ZSeries};
use ozeta::weil::{Catalog, LData};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(c: &BigRational) -> Option<u64> {
    c.is_integer().then(|| u64::try_from(c.to_integer()).ok()).flatten()
}

fn first_difference<C: PartialEq + std::fmt::Display>(a: &[C], b: &[C]) -> Option<String> {
    if a.len() != b.len() {
        return Some(format!("lengths {} and {}", a.len(), b.len()));
    }
    a.iter().zip(b).position(|(x, y)| x != y).map(|k| format!("degree {k}: {} vs {}", a[k], b[k]))
}

fn same_q(a: &QSeries, b: &QSeries, what: &str) -> Result<(), String> {
    match first_difference(a.coeffs(), b.coeffs()) {
        None => Ok(()),
        Some(d) => Err(format!("{what}: {d}")),
    }
}

fn same_z(a: &ZSeries, b: &ZSeries, what: &str) -> Result<(), String> {
    match first_difference(a.coeffs(), b.coeffs()) {
        None => Ok(()),
        Some(d) => Err(format!("{what}: {d}")),
    }
}

fn plane(q: u64) -> Result<LData, String> {
    LData::catalog(&Catalog::P2, q).map_err(fail)
}

fn hey_vs_sublattices() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3] {
        for r in [1usize, 2] {
            let n_max = 6 / r;
            let formula = hey_zeta(LocalOrderShape::new(q, r, 1).map_err(fail)?, 6);
            let oracle = count_sublattices(q, r, n_max).map_err(fail)?;
            for k in 0..=6 {
                let want = oracle.iter().find(|(c, _)| *c == k).map_or(0, |(_, n)| *n);
                let got = formula.coeff(k).and_then(int);
                ensure(got == Some(want), || format!("q={q} r={r} colength {k}: formula {got:?}, oracle {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients"))
}

fn plane_ideals() -> Outcome {
    let mut detail = Vec::new();
    for q in [2u64, 3] {
        let formula = slice_zeta(LocalOrderShape::new(q, 1, 1).map_err(fail)?, 4).map_err(fail)?;
        let oracle = count_ideals_2d(q, 4).map_err(fail)?;
        let got: Vec<Option<u64>> = formula.coeffs().iter().map(int).collect();
        let want: Vec<Option<u64>> = oracle.iter().map(|&n| Some(n)).collect();
        ensure(got == want, || format!("q={q}: formula {got:?}, oracle {oracle:?}"))?;
        detail.push(format!("q={q} {oracle:?}"));
    }
    Ok(detail.join(", "))
}

fn quaternion_slice() -> Outcome {
    let f3 = Field::new(3).map_err(fail)?;
    let spec = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::V };
    let alg = build_symbol(spec, 3).map_err(fail)?;
    let report = check_slice(&alg, 2).map_err(fail)?;
    ensure(report.passed(), || format!("slice check failed: {:?}", report.entries))?;
    let census = count_ideals_algebra(&alg, 2).map_err(fail)?;
    let formula = slice_zeta(LocalOrderShape::new(3, 1, 1).map_err(fail)?, 2).map_err(fail)?;
    for k in 1..=2 {
        let got = formula.coeff(k).and_then(int);
        ensure(got == Some(census.count(k)), || format!("colength {k}: formula {got:?}, oracle {}", census.count(k)))?;
    }
    Ok(format!("ideal counts {:?}", census.counts(2)))
}

fn hecke_tower() -> Outcome {
    let alg = commutative_truncation(2, 5).map_err(fail)?;
    let report = verify_tower(&alg, 3, 3).map_err(fail)?;
    ensure(report.passed(), || format!("{:?}", report.failures))?;
    ensure(report.lift_checks > 0 && report.powers.iter().all(|p| p.degree_matches == Some(true)), || {
        "degree or lift comparison did not run".into()
    })?;
    let sizes: Vec<usize> = report.powers.iter().map(|p| p.summands).collect();
    Ok(format!("{} ideals, T^n M sizes {sizes:?}, {} lift counts", report.census_size, report.lift_checks))
}

fn symbolic_slice() -> Outcome {
    for q in [2u64, 3] {
        for (r, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let bound = (8 / r) as u32;
            let chi = ChiSpec::matrix(q, r, m).map_err(fail)?;
            let zbar = LSeries::hey(q, r, m, bound);
            let product = partial_product(&zbar, &chi, bound as usize + 1, bound).map_err(fail)?;
            let symbolic = product.rho(&chi).rho_prime(r).truncate(8);
            let direct = slice_zeta(LocalOrderShape::new(q, r, m).map_err(fail)?, 8).map_err(fail)?;
            same_q(&symbolic, &direct, &format!("q={q} r={r} m={m}"))?;
        }
    }
    for q in [2u64, 3] {
        for r in [1usize, 2] {
            let chi = ChiSpec::matrix(q, r, 2).map_err(fail)?;
            let size = num_traits::pow(BigInt::from(q), r);
            for j in 0..2u32 {
                let t = LSeries::monomial(2, 6, LMonomial::generator(Gen::t(j)), BigRational::one());
                for n in 0..=5u32 {
                    let (c, mono) = xi_power_closed_form(j, n, &size);
                    ensure(t.xi_pow(&chi, n as usize) == LSeries::monomial(2, 6, mono, c), || {
                        format!("Xi^{n}(t_{j}) closed form fails for q={q} r={r}")
                    })?;
                }
            }
        }
    }
    Ok("8 shapes to degree 8, Xi^n closed form for n <= 5".into())
}

fn euler_product_plane() -> Outcome {
    let p2 = plane(2)?;
    let spec = OrderSpec::new(1, p2.clone(), vec![]).map_err(fail)?;
    let census = p2.closed_point_census(3).map_err(fail)?;
    let points = plane_census(2).map_err(fail)?;
    ensure(census[0] == BigInt::from(points.rational) && census[1] == BigInt::from(points.degree_two), || {
        format!("closed points {census:?} vs brute force {points:?}")
    })?;
    let euler = euler_product_zeta(&spec, 6).map_err(fail)?;
    same_q(&euler, &azumaya_zeta(&p2, 1, 6).map_err(fail)?, "euler product vs closed form")?;
    let t2 = euler.coeff(2).and_then(int);
    let oracle = subscheme_census_p2(2, 2).map_err(fail)?;
    ensure(t2 == Some(oracle), || format!("t^2 coefficient {t2:?}, census {oracle}"))?;
    Ok(format!("closed points {census:?}, t^2 = {oracle}"))
}

fn brauer_severi() -> Outcome {
    for q in [2u64, 3, 5] {
        let p2 = plane(q)?;
        for d in [2usize, 3] {
            same_q(
                &brauer_severi_zeta(&p2, d, 8).map_err(fail)?,
                &azumaya_zeta(&p2, d, 8).map_err(fail)?,
                &format!("q={q} d={d}"),
            )?;
        }
    }
    Ok("q in {2,3,5}, d in {2,3}, to t^8".into())
}

fn poincare_consistency() -> Outcome {
    let p2 = plane(3)?;
    for b in [1usize, 2] {
        let w = p2.weil_poincare();
        same_z(
            &poincare_exp_form(&w, b, 6).map_err(fail)?,
            &poincare_product_form(&w, b, 6).map_err(fail)?,
            &format!("P^2 d={b}"),
        )?;
    }
    let three = nc_plane_preset(PlaneKind::ThreeLines, 2, 2, 3).map_err(fail)?;
    let mut pieces = vec![(three.spec.azumaya_locus().weil_poincare(), 2)];
    pieces.extend(three.spec.strata().iter().map(|s| (s.cover.weil_poincare(), 2 / s.e)));
    for (w, b) in &pieces {
        same_z(
            &poincare_exp_form(w, *b, 6).map_err(fail)?,
            &poincare_product_form(w, *b, 6).map_err(fail)?,
            &format!("three lines b={b}"),
        )?;
    }
    poincare_zeta(&three.spec, 6).map_err(fail)?;

    let spec = OrderSpec::new(1, p2, vec![]).map_err(fail)?;
    let p = poincare_zeta(&spec, 6).map_err(fail)?;
    let interpolated = length_two_polynomial().map_err(fail)?;
    let mut in_z = vec![BigRational::zero(); 2 * interpolated.len() - 1];
    for (k, c) in interpolated.iter().enumerate() {
        in_z[2 * k] = c.clone();
    }
    let t2 = p.coeff(2).cloned().unwrap_or_else(ZPoly::zero);
    ensure(t2 == ZPoly::new(in_z), || format!("t^2 coefficient {t2} differs from census polynomial {interpolated:?}"))?;

    let euler = euler_specialize(&p);
    let three_lines = infinite_product(1, 6, |j| {
        let mut den = vec![BigRational::zero(); j + 1];
        den[0] = BigRational::one();
        den[j] = -BigRational::one();
        QSeries::new(den, 6).pow(-3)
    })
    .map_err(fail)?;
    same_q(&euler, &three_lines, "euler specialisation vs prod (1 - t^j)^-3")?;
    same_q(&euler, &euler_closed_form(3, 1, 6).map_err(fail)?, "euler closed form")?;
    let head: Vec<Option<u64>> = euler.coeffs()[..4].iter().map(int).collect();
    ensure(head == [Some(1), Some(3), Some(9), Some(22)], || format!("euler head {head:?}"))?;
    Ok(format!(
        "t^2 = {t2}, census at q=2,3 is {}, {}",
        subscheme_census_p2(2, 2).map_err(fail)?,
        subscheme_census_p2(3, 2).map_err(fail)?
    ))
}

fn plane_presets() -> Outcome {
    let kinds = [
        (PlaneKind::ThreeLines, Some(3)),
        (PlaneKind::ConicLine, Some(2)),
        (PlaneKind::NodalCubic, Some(1)),
        (PlaneKind::Sklyanin { trace: 1 }, None),
    ];
    for (d, e, q) in [(2usize, 2usize, 3u64), (2, 2, 5), (3, 3, 7)] {
        for (kind, h) in kinds {
            let preset = nc_plane_preset(kind, d, e, q).map_err(fail)?;
            let what = format!("{kind:?} d={d} e={e} q={q}");
            let matrix = azumaya_zeta(&preset.plane, d, 6).map_err(fail)?;
            let lhs = order_zeta(&preset.spec, 6).map_err(fail)?.mul(&matrix.invert().map_err(fail)?);
            let rhs = ramified_ratio(&preset.base, preset.spec.strata(), d, 6).map_err(fail)?;
            same_q(&lhs, &rhs, &what)?;

            let poin = poincare_zeta(&preset.spec, 6).map_err(fail)?;
            let matrix_poin = azumaya_poincare(&preset.plane, d, 6).map_err(fail)?;
            match h {
                Some(h) => {
                    let strata: Vec<_> =
                        preset.spec.strata().iter().map(|s| (s.cover.weil_poincare(), preset.r())).collect();
                    let general = poincare_ratio(&preset.base.weil_poincare(), &strata, d, 6).map_err(fail)?;
                    let closed = singular_cubic_poincare_ratio(h, d, preset.r(), 6).map_err(fail)?;
                    same_z(&general, &closed, &format!("{what} Poincare ratio"))?;
                    same_z(
                        &poin.mul(&matrix_poin.invert().map_err(fail)?),
                        &general,
                        &format!("{what} Poincare quotient"),
                    )?;
                }
                None => same_q(
                    &euler_specialize(&poin),
                    &euler_specialize(&matrix_poin),
                    &format!("{what} euler specialisation"),
                )?,
            }
        }
    }
    Ok("4 kinds at (d,e,q) in {(2,2,3),(2,2,5),(3,3,7)}".into())
}

fn segal() -> Outcome {
    let s = segal_dirichlet(7).map_err(fail)?;
    let a = |n: usize| s.coeff(n).map(int).map_err(fail);
    ensure(a(1)? == Some(1), || "a_1 != 1".into())?;
    for p in [2usize, 3, 5, 7] {
        let oracle = count_ideals_integer_poly(p as u64).map_err(fail)?;
        ensure(a(p)? == Some(p as u64) && oracle == p as u64, || {
            format!("a_{p}: formula {:?}, brute force {oracle}", a(p))
        })?;
    }
    Ok("a_1 = 1, a_p = p for p <= 7".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hey series vs sublattice census", hey_vs_sublattices),
        ("plane slice series vs 2-d ideal census", plane_ideals),
        ("quaternion symbol slice and ideal census", quaternion_slice),
        ("Hecke tower on F_2[[x,y]]", hecke_tower),
        ("symbolic slice theorem and Xi^n closed form", symbolic_slice),
        ("Euler product on P^2 vs closed form and census", euler_product_plane),
        ("Brauer-Severi identity", brauer_severi),
        ("Poincare forms and specialisations", poincare_consistency),
        ("noncommutative plane presets", plane_presets),
        ("Segal Dirichlet series", segal),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
