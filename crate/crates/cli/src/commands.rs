//! Dispatch from a resolved [`JobConfig`] to the library.

use anyhow::{anyhow, bail, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use ozeta::global::{
    azumaya_zeta, brauer_severi_zeta, euler_product_zeta, euler_specialize, nc_plane_preset, order_zeta, poincare_zeta,
    ramified_ratio, segal_dirichlet, OrderSpec, PlaneKind, RamificationStratum,
};
use ozeta::hecke::{partial_product, xi_power_closed_form, ChiSpec, Gen, LMonomial, LSeries};
use ozeta::local::{hey_zeta, local_factor, slice_zeta, slice_zeta_via_hey, LocalOrderShape};
use ozeta::oracle::field::Field;
use ozeta::oracle::{
    build_symbol, check_slice, commutative_truncation, count_ideals_2d, count_ideals_algebra,
    count_ideals_integer_poly, count_sublattices, subscheme_census_p2, verify_tower, SymbolParam, SymbolSpec,
};
use ozeta::weil::{Catalog, LData};

use crate::config::{CommandName, JobConfig};
use crate::report::{Report, SeriesOut};

pub fn run(job: &JobConfig) -> Result<Report> {
    let command = job.command.ok_or_else(|| anyhow!("no command given"))?;
    match command {
        CommandName::Local => local(job),
        CommandName::Global => global(job),
        CommandName::Poincare => poincare(job),
        CommandName::Euler => euler(job),
        CommandName::HeckeVerify => hecke_verify(job),
        CommandName::OracleVerify => oracle_verify(job),
        CommandName::Census => census(job),
    }
}

fn local(job: &JobConfig) -> Result<Report> {
    let n = job.truncation()?;
    let shape = LocalOrderShape::new(job.q()?, job.r(), job.m())?;
    let mut report = Report::new("local", job);
    let hey = SeriesOut::rational("hey", &hey_zeta(shape, n));
    let slice = SeriesOut::rational("slice", &slice_zeta(shape, n)?);
    let via_hey = SeriesOut::rational("slice_via_hey", &slice_zeta_via_hey(shape, n)?);
    report.push(hey);
    report.push(slice.clone());
    if let Some(k) = job.k {
        report.push(SeriesOut::rational("local_factor", &local_factor(k.0, job.q()?, job.r(), job.m(), n)?));
    }
    report.compare("slice series by both routes", &slice, &via_hey);
    Ok(report)
}

fn plane_kind(job: &JobConfig, name: &str) -> Result<PlaneKind> {
    PlaneKind::from_name(name, job.trace.map(|t| t.0)).ok_or_else(|| anyhow!("unknown preset `{name}`"))
}

/// The order described by the job: a preset plane, or a surface with
/// explicit strata.
struct Order {
    spec: OrderSpec,
    /// Matrix algebra over the whole surface and the ramification curve,
    /// known for presets.
    plane: Option<(LData, LData)>,
}

fn order(job: &JobConfig) -> Result<Order> {
    let (q, d) = (job.q()?, job.d()?);
    match (&job.preset, &job.surface) {
        (Some(name), None) => {
            let e = job.e.map_or(d, |e| e.0);
            let preset = nc_plane_preset(plane_kind(job, name)?, d, e, q)?;
            Ok(Order { spec: preset.spec, plane: Some((preset.plane, preset.base)) })
        }
        (None, Some(surface)) => {
            let strata = job
                .strata
                .iter()
                .flatten()
                .map(|s| Ok(RamificationStratum { cover: s.cover.build(q)?, e: s.e.0 }))
                .collect::<Result<Vec<_>>>()?;
            Ok(Order { spec: OrderSpec::new(d, surface.build(q)?, strata)?, plane: None })
        }
        (Some(_), Some(_)) => bail!("give either `preset` or `surface`, not both"),
        (None, None) => bail!("missing `preset` or `surface`"),
    }
}

fn global(job: &JobConfig) -> Result<Report> {
    let n = job.truncation()?;
    let d = job.d()?;
    let o = order(job)?;
    let mut report = Report::new("global", job);
    let z = order_zeta(&o.spec, n)?;
    report.push(SeriesOut::rational("order_zeta", &z));
    if let Some((plane, base)) = &o.plane {
        let ratio = z.mul(&azumaya_zeta(plane, d, n)?.invert()?);
        let ratio = SeriesOut::rational("ratio", &ratio);
        let closed = SeriesOut::rational("ramified_ratio", &ramified_ratio(base, o.spec.strata(), d, n)?);
        report.push(ratio.clone());
        report.push(closed.clone());
        report.compare("ratio to the matrix algebra", &ratio, &closed);
    } else if o.spec.strata().is_empty() {
        let bs = SeriesOut::rational("brauer_severi", &brauer_severi_zeta(o.spec.azumaya_locus(), d, n)?);
        report.push(bs.clone());
        report.compare("Brauer-Severi identity", &SeriesOut::rational("order_zeta", &z), &bs);
    }
    report.push(SeriesOut::rational("euler_specialization", &euler_specialize(&poincare_zeta(&o.spec, n)?)));
    let notes = o.spec.notes();
    if !notes.equal_indices || !notes.roots_of_unity {
        report.check(
            "hypotheses",
            true,
            format!("unenforced: equal indices {}, d | q - 1 {}", notes.equal_indices, notes.roots_of_unity),
        );
    }
    Ok(report)
}

fn poincare(job: &JobConfig) -> Result<Report> {
    let n = job.truncation()?;
    let o = order(job)?;
    let mut report = Report::new("poincare", job);
    let p = poincare_zeta(&o.spec, n)?;
    report.push(SeriesOut::poly("poincare", &p));
    report.push(SeriesOut::rational("euler_specialization", &euler_specialize(&p)));
    Ok(report)
}

fn euler(job: &JobConfig) -> Result<Report> {
    let n = job.truncation()?;
    let o = order(job)?;
    let mut report = Report::new("euler", job);
    let census = o.spec.azumaya_locus().closed_point_census(n.max(1))?;
    let census: Vec<BigRational> = census.into_iter().map(BigRational::from_integer).collect();
    report.push(SeriesOut::from_rationals("closed_points", 1, &census));
    let product = SeriesOut::rational("euler_product", &euler_product_zeta(&o.spec, n)?);
    let closed = SeriesOut::rational("order_zeta", &order_zeta(&o.spec, n)?);
    report.push(product.clone());
    report.push(closed.clone());
    report.compare("Euler product against closed form", &product, &closed);
    Ok(report)
}

fn hecke_verify(job: &JobConfig) -> Result<Report> {
    let n = job.truncation()?;
    let (q, r, m) = (job.q()?, job.r(), job.m());
    let shape = LocalOrderShape::new(q, r, m)?;
    let mut report = Report::new("hecke-verify", job);
    let bound = (n / r) as u32;
    let chi = ChiSpec::matrix(q, r, m)?;
    let zbar = LSeries::hey(q, r, m, bound);
    let product = partial_product(&zbar, &chi, bound as usize + 1, bound)?;
    let symbolic = SeriesOut::rational("symbolic", &product.rho(&chi).rho_prime(r).truncate(n));
    let direct = SeriesOut::rational("slice", &slice_zeta(shape, n)?);
    report.push(symbolic.clone());
    report.push(direct.clone());
    report.compare("slice theorem", &symbolic, &direct);

    let size = num_traits::pow(BigInt::from(q), r);
    let mut bad = Vec::new();
    for j in 0..m as u32 {
        let t = LSeries::monomial(m, 6, LMonomial::generator(Gen::t(j)), BigRational::one());
        for k in 0..=5u32 {
            let (c, mono) = xi_power_closed_form(j, k, &size);
            if t.xi_pow(&chi, k as usize) != LSeries::monomial(m, 6, mono, c) {
                bad.push(format!("Xi^{k}(t_{j})"));
            }
        }
    }
    let detail = if bad.is_empty() { "n <= 5".to_string() } else { format!("fails for {}", bad.join(", ")) };
    report.check("Xi^n closed form", bad.is_empty(), detail);
    Ok(report)
}

fn against(report: &mut Report, name: &str, formula: SeriesOut, oracle: SeriesOut) {
    report.push(formula.clone());
    report.push(oracle.clone());
    report.compare(name, &formula, &oracle);
}

fn quaternion(q: u64, window: usize) -> Result<ozeta::oracle::FiniteAlgebra> {
    let f = Field::new(q)?;
    let xi = f.primitive_root_of_unity(2).ok_or_else(|| anyhow!("F_{q} has no primitive square root of unity"))?;
    Ok(build_symbol(SymbolSpec { q, e: 2, xi, a: SymbolParam::U, b: SymbolParam::V }, window)?)
}

fn oracle_verify(job: &JobConfig) -> Result<Report> {
    let suite = job.suite.clone().ok_or_else(|| anyhow!("missing `suite`"))?;
    let n = job.n()?;
    let mut report = Report::new("oracle-verify", job);
    match suite.as_str() {
        "hey" => {
            let (q, r) = (job.q()?, job.r());
            let counts = count_sublattices(q, r, n / r)?;
            let mut dense = vec![0u64; n + 1];
            for &(c, k) in &counts {
                dense[c] = k;
            }
            let formula = SeriesOut::rational("hey", &hey_zeta(LocalOrderShape::new(q, r, 1)?, n));
            against(&mut report, "hey series vs sublattices", formula, SeriesOut::counts("sublattices", 0, dense));
            let matched: Vec<String> = counts.iter().skip(1).map(|(_, k)| k.to_string()).collect();
            if let Some(c) = report.checks.last_mut().filter(|c| c.passed) {
                c.detail = format!("matched counts {}", matched.join(", "));
            }
        }
        "plane" => {
            let q = job.q()?;
            let formula = SeriesOut::rational("slice", &slice_zeta(LocalOrderShape::new(q, 1, 1)?, n)?);
            against(
                &mut report,
                "slice series vs ideals",
                formula,
                SeriesOut::counts("ideals", 0, count_ideals_2d(q, n)?),
            );
        }
        "symbol" => {
            let q = job.q()?;
            let alg = quaternion(q, n + 1)?;
            let slice = check_slice(&alg, n)?;
            report.check("slice element", slice.passed(), format!("cyclic counts {:?}", slice.counts()));
            let census = count_ideals_algebra(&alg, n)?;
            let formula = SeriesOut::rational("slice", &slice_zeta(LocalOrderShape::new(q, 1, 1)?, n)?);
            against(&mut report, "slice series vs ideals", formula, SeriesOut::counts("ideals", 0, census.counts(n)));
        }
        "tower" => {
            let q = job.q()?;
            let window = (2 * n).saturating_sub(1).max(n + 1);
            let tower = verify_tower(&commutative_truncation(q, window)?, 3, n)?;
            report.push(SeriesOut::counts("T^n M summands", 1, tower.powers.iter().map(|p| p.summands as u64)));
            let detail = if tower.failures.is_empty() {
                format!("{} ideals, {} lift counts", tower.census_size, tower.lift_checks)
            } else {
                tower.failures.join("; ")
            };
            report.check("Hecke tower", tower.passed(), detail);
        }
        "segal" => {
            if n == 0 {
                bail!("segal suite needs n >= 1");
            }
            let s = segal_dirichlet(n)?;
            let brute = (1..=n as u64).map(count_ideals_integer_poly).collect::<Result<Vec<_>, _>>()?;
            let formula = SeriesOut::from_rationals("segal", 1, &s.coeffs()[..n]);
            against(&mut report, "Dirichlet series vs ideals", formula, SeriesOut::counts("ideals", 1, brute));
        }
        "p2" => {
            let q = job.q()?;
            let z = azumaya_zeta(&LData::catalog(&Catalog::P2, q)?, 1, n)?;
            let census = (0..=n).map(|k| subscheme_census_p2(q, k)).collect::<Result<Vec<_>, _>>()?;
            against(
                &mut report,
                "zeta vs subschemes",
                SeriesOut::rational("zeta", &z),
                SeriesOut::counts("subschemes", 0, census),
            );
        }
        other => bail!("unknown suite `{other}` (hey, plane, symbol, tower, segal, p2)"),
    }
    Ok(report)
}

fn census(job: &JobConfig) -> Result<Report> {
    let kind = job.census.clone().ok_or_else(|| anyhow!("missing census `kind`"))?;
    let n = job.n()?;
    let mut report = Report::new("census", job);
    let series = match kind.as_str() {
        "sublattices" => {
            let r = job.r();
            let counts = count_sublattices(job.q()?, r, n / r)?;
            let mut dense = vec![0u64; n + 1];
            for (c, k) in counts {
                dense[c] = k;
            }
            SeriesOut::counts("sublattices", 0, dense)
        }
        "ideals-2d" => SeriesOut::counts("ideals", 0, count_ideals_2d(job.q()?, n)?),
        "symbol" => SeriesOut::counts("ideals", 0, count_ideals_algebra(&quaternion(job.q()?, n + 1)?, n)?.counts(n)),
        "p2" => {
            let q = job.q()?;
            SeriesOut::counts(
                "subschemes",
                0,
                (0..=n).map(|k| subscheme_census_p2(q, k)).collect::<Result<Vec<_>, _>>()?,
            )
        }
        "integer-poly" => SeriesOut::counts(
            "ideals",
            1,
            (1..=n as u64).map(count_ideals_integer_poly).collect::<Result<Vec<_>, _>>()?,
        ),
        other => bail!("unknown census `{other}` (sublattices, ideals-2d, symbol, p2, integer-poly)"),
    };
    report.push(series);
    Ok(report)
}
