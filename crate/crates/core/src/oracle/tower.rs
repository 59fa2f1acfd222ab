//! Concrete z-adic Hecke towers on the regular module `M = A` of a
//! truncated algebra with a declared slice element `z`.
//!
//! All submodules live inside `A / F_W`. Two independent routes are used on
//! purpose: `T^-` is computed as a preimage under left multiplication by
//! `z`, while the graded pieces `Xbar_i` are computed from intersections
//! with `z^i A`, and the Hecke summands are selected by the literal
//! conditions `Y <= X`, `Y cap zA = zX`.
//!
//! Summands include `Y = X`. This only happens for `X = M`, and it is the
//! term that makes `T^n M` contain `M` and `deg T` have constant term 1.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::algebra::FiniteAlgebra;
use super::enumerate::{submodules, FiniteModule};
use super::ideals::left_ideals;
use super::linalg::{preimage, Matrix, Subspace, Vector};
use super::OracleError;
use crate::hecke::{partial_product, ChiSpec, Gen, LMonomial, LSeries};

/// Proxy for the isomorphism class of a finite-length module: its
/// composition multiplicities and radical-layer dimensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleClass {
    pub factors: Vec<usize>,
    pub layers: Vec<usize>,
}

impl ModuleClass {
    pub fn dim(&self) -> usize {
        self.layers.iter().sum()
    }
}

pub struct Tower<'a> {
    alg: &'a FiniteAlgebra,
    module: FiniteModule<'a>,
    bound: usize,
    /// `z^i A` for `i = 0..=bound + 1`.
    z_powers: Vec<Subspace>,
    /// Left multiplication by `z^i`.
    z_maps: Vec<Matrix>,
    slice_ideal: Subspace,
    census: Vec<(usize, Subspace)>,
}

impl<'a> Tower<'a> {
    /// Enumerates every left ideal of colength at most `bound`.
    ///
    /// Graded pieces are read modulo `F_W`, which only stays faithful when
    /// `W >= bound + (bound - 1) * weight(z)`.
    pub fn new(alg: &'a FiniteAlgebra, bound: usize) -> Result<Self, OracleError> {
        let f = alg.field();
        let z = alg.slice().ok_or(OracleError::NoSlice)?.clone();
        let wz = alg.weight_of(&z).unwrap_or(1);
        let needed = bound + bound.saturating_sub(1) * wz;
        if alg.window() < needed {
            return Err(OracleError::WindowTooSmall { window: alg.window(), needed });
        }
        let mut z_maps = Vec::new();
        let mut power: Vector = alg.unit().clone();
        for _ in 0..=bound + 1 {
            z_maps.push(alg.left_mul(&power));
            power = alg.mul(&z, &power);
        }
        let z_powers = z_maps.iter().map(|m| Subspace::full(alg.dim()).image(f, m, alg.dim())).collect();
        let census = left_ideals(alg, bound)?
            .into_iter()
            .flat_map(|(c, ideals)| ideals.into_iter().map(move |x| (c, x)))
            .collect();
        Ok(Tower {
            alg,
            module: FiniteModule::regular(alg),
            bound,
            z_powers,
            z_maps,
            slice_ideal: alg.left_ideal(&z),
            census,
        })
    }

    pub fn census(&self) -> &[(usize, Subspace)] {
        &self.census
    }

    pub fn top(&self) -> Subspace {
        Subspace::full(self.alg.dim())
    }

    /// `T^- Y = z^-1 (Y cap z M)`.
    pub fn t_minus(&self, y: &Subspace) -> Subspace {
        preimage(self.alg.field(), &self.z_maps[1], y)
    }

    /// `Xbar_i` as a submodule of `A` containing `A z`: the elements `m`
    /// with `z^i m` in `(X cap z^i A) + z^(i+1) A`.
    pub fn graded_piece(&self, x: &Subspace, i: usize) -> Subspace {
        let f = self.alg.field();
        let i = i.min(self.z_powers.len() - 2);
        let target = x.intersect(f, &self.z_powers[i]).sum(f, &self.z_powers[i + 1]);
        preimage(f, &self.z_maps[i], &target).sum(f, &self.slice_ideal)
    }

    /// `Xbar_0 <= Xbar_1 <= ...` up to the first piece equal to `Mbar`.
    pub fn graded_pieces(&self, x: &Subspace) -> Vec<Subspace> {
        let top = self.top();
        let mut out = Vec::new();
        for i in 0..=self.bound {
            let piece = self.graded_piece(x, i);
            let done = piece == top;
            out.push(piece);
            if done {
                break;
            }
        }
        out
    }

    pub fn class_of(&self, top: &Subspace, sub: &Subspace) -> ModuleClass {
        ModuleClass { factors: self.module.class_of_quotient(top, sub), layers: self.module.radical_layers(top, sub) }
    }

    /// Whether `Y` is a summand of `T X` (of any class).
    fn is_summand(&self, x: &Subspace, y: &Subspace) -> bool {
        let f = self.alg.field();
        x.contains_space(f, y) && y.intersect(f, &self.z_powers[1]) == x.image(f, &self.z_maps[1], self.alg.dim())
    }

    /// `gr(X / Y)_0 = X / (Y + (X cap z A))`.
    fn summand_class(&self, x: &Subspace, y: &Subspace) -> ModuleClass {
        let f = self.alg.field();
        self.class_of(x, &y.sum(f, &x.intersect(f, &self.z_powers[1])))
    }

    /// Summands of `T_N X` within the colength bound.
    pub fn hecke_apply(&self, x: &Subspace, class: &ModuleClass) -> Vec<Subspace> {
        self.census
            .iter()
            .filter(|(_, y)| self.is_summand(x, y) && &self.summand_class(x, y) == class)
            .map(|(_, y)| y.clone())
            .collect()
    }

    /// Every summand of `T X` with its class.
    pub fn hecke_all(&self, x: &Subspace) -> Vec<(ModuleClass, Subspace)> {
        self.census
            .iter()
            .filter(|(_, y)| self.is_summand(x, y))
            .map(|(_, y)| (self.summand_class(x, y), y.clone()))
            .collect()
    }

    /// `nu^dagger(X) = prod_i z^i(nu(Mbar / Xbar_i))`.
    pub fn nu_dagger(&self, x: &Subspace) -> LMonomial {
        let top = self.top();
        let mut exps = Vec::new();
        for (i, piece) in self.graded_pieces(x).iter().enumerate() {
            for (j, m) in self.module.class_of_quotient(&top, piece).into_iter().enumerate() {
                exps.push((Gen { twist: i as u32, simple: j as u32 }, m as u32));
            }
        }
        LMonomial::from_exponents(exps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCheck {
    pub n: usize,
    /// Number of summands of `T^n M` within the bound.
    pub summands: usize,
    /// Number of ideals with `T^-n X = M` within the bound.
    pub expected: usize,
    pub same_set: bool,
    pub multiplicity_one: bool,
    /// `nu^dagger(T^n M)` equals the symbolic partial product; `None` when
    /// the simples have unequal dimensions.
    pub degree_matches: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerReport {
    pub census_size: usize,
    /// `Y <= T^- Y` for every `Y`.
    pub contained_in_parent: bool,
    /// `gr T^- Y` is `gr Y` shifted down one degree.
    pub graded_shift: bool,
    /// `T^-n X = M` once `gr(M/X)_n = 0`.
    pub stabilises: bool,
    /// Every `Y` is a summand of exactly one `T_N X`, namely for
    /// `X = T^- Y`.
    pub unique_parent: bool,
    pub powers: Vec<PowerCheck>,
    /// Summand counts equal `a_N prod chi(...)`.
    pub lift_counts: bool,
    pub lift_checks: usize,
    pub failures: Vec<String>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.contained_in_parent
            && self.graded_shift
            && self.stabilises
            && self.unique_parent
            && self.lift_counts
            && self.failures.is_empty()
            && self.powers.iter().all(|p| p.same_set && p.multiplicity_one && p.degree_matches != Some(false))
    }
}

pub fn verify_tower(alg: &FiniteAlgebra, n: usize, colength_bound: usize) -> Result<TowerReport, OracleError> {
    let tower = Tower::new(alg, colength_bound)?;
    let f = alg.field();
    let top = tower.top();
    let mut report = TowerReport {
        census_size: tower.census.len(),
        contained_in_parent: true,
        graded_shift: true,
        stabilises: true,
        unique_parent: true,
        lift_counts: true,
        ..Default::default()
    };
    let index: BTreeMap<&Subspace, usize> = tower.census.iter().enumerate().map(|(k, (_, s))| (s, k)).collect();

    for (colength, y) in &tower.census {
        let x = tower.t_minus(y);
        if !x.contains_space(f, y) {
            report.contained_in_parent = false;
            report.failures.push(format!("T^- Y does not contain Y (colength {colength})"));
        }
        let (gy, gx) = (tower.graded_pieces(y), tower.graded_pieces(&x));
        let shifted_ok = (0..=colength_bound).all(|i| tower.graded_piece(&x, i) == tower.graded_piece(y, i + 1));
        if !shifted_ok || gy.len() < gx.len() {
            report.graded_shift = false;
            report.failures.push(format!("gr T^- Y is not the shift of gr Y (colength {colength})"));
        }
        let depth = gy.len() - 1;
        let mut back = y.clone();
        for _ in 0..depth {
            back = tower.t_minus(&back);
        }
        if back != top {
            report.stabilises = false;
            report.failures.push(format!("T^-{depth} Y != M although gr(M/Y)_{depth} = 0"));
        }
        let parents: Vec<(usize, ModuleClass)> = tower
            .census
            .iter()
            .enumerate()
            .filter(|(_, (_, xp))| tower.is_summand(xp, y))
            .map(|(k, (_, xp))| (k, tower.summand_class(xp, y)))
            .collect();
        let expected_parent = index.get(&x).copied();
        if parents.len() != 1 || Some(parents[0].0) != expected_parent {
            report.unique_parent = false;
            report.failures.push(format!("Y of colength {colength} is a summand of {} operators", parents.len()));
        }
    }

    let q = BigInt::from(f.order() as u64);
    let simple_dims: BTreeSet<usize> = alg.simples().iter().map(|s| s.dim).collect();
    let uniform = (simple_dims.len() == 1).then(|| *simple_dims.iter().next().unwrap());
    let g = alg.simples().len();
    let degree_bound = (colength_bound / uniform.unwrap_or(1)) as u32;
    let zbar = uniform.map(|_| residue_zeta(&tower, degree_bound));
    let mut current: Vec<Subspace> = vec![top.clone()];
    for step in 1..=n {
        let next: Vec<Subspace> = current.iter().flat_map(|x| tower.hecke_all(x).into_iter().map(|(_, y)| y)).collect();
        let keys: BTreeSet<&Subspace> = next.iter().collect();
        let expected: BTreeSet<&Subspace> = tower
            .census
            .iter()
            .map(|(_, x)| x)
            .filter(|x| {
                let mut back = (*x).clone();
                for _ in 0..step {
                    back = tower.t_minus(&back);
                }
                back == top
            })
            .collect();
        let degree_matches = match (uniform, &zbar) {
            (Some(d), Some(zbar)) => {
                let chi = ChiSpec::uniform(g, num_traits::pow(q.clone(), d))
                    .map_err(|e| OracleError::Malformed(e.to_string()))?;
                let formula = partial_product(zbar, &chi, step, degree_bound)
                    .map_err(|e| OracleError::Malformed(e.to_string()))?;
                let mut observed = LSeries::zero(g, degree_bound);
                for x in &next {
                    let m = tower.nu_dagger(x);
                    observed = observed.add(&LSeries::monomial(g, degree_bound, m, BigRational::one()));
                }
                Some(observed == formula)
            }
            _ => None,
        };
        report.powers.push(PowerCheck {
            n: step,
            summands: next.len(),
            expected: expected.len(),
            same_set: keys == expected,
            multiplicity_one: keys.len() == next.len(),
            degree_matches,
        });
        current = next;
    }

    for (colength, x) in &tower.census {
        let pieces = tower.graded_pieces(x);
        let xbar0 = &pieces[0];
        let lifted_dim = xbar0.codim();
        // chi(z^i (x) N) = q^dim N for M = A, so the product over the
        // graded quotients is q^dim(Mbar / Xbar_0).
        let chi_product = num_traits::pow(q.clone(), lifted_dim);
        let room = colength_bound.saturating_sub(colength + lifted_dim);
        if colength + lifted_dim > colength_bound {
            continue;
        }
        let quotients = submodules(&tower.module, xbar0, &tower.slice_ideal, room)?;
        let mut a_counts: BTreeMap<ModuleClass, u64> = BTreeMap::new();
        for subs in quotients.values() {
            for ybar in subs {
                *a_counts.entry(tower.class_of(xbar0, ybar)).or_insert(0) += 1;
            }
        }
        for (class, a) in a_counts {
            let found = tower.hecke_apply(x, &class).len();
            report.lift_checks += 1;
            if BigInt::from(found) != BigInt::from(a) * &chi_product {
                report.lift_counts = false;
                report.failures.push(format!(
                    "colength {colength}: {found} summands for a class of dimension {}, expected {a} * {chi_product}",
                    class.dim()
                ));
            }
        }
    }
    Ok(report)
}

/// Multi-parameter zeta of `Mbar` from its enumerated submodules.
fn residue_zeta(tower: &Tower, degree_bound: u32) -> LSeries {
    let g = tower.alg.simples().len();
    let top = tower.top();
    let levels = submodules(&tower.module, &top, &tower.slice_ideal, tower.bound).expect("bounds are submodules");
    let mut out = LSeries::zero(g, degree_bound);
    for subs in levels.values() {
        for s in subs {
            let exps = tower
                .module
                .class_of_quotient(&top, s)
                .into_iter()
                .enumerate()
                .map(|(j, m)| (Gen::t(j as u32), m as u32));
            out = out.add(&LSeries::monomial(g, degree_bound, LMonomial::from_exponents(exps), BigRational::one()));
        }
    }
    out
}
