//! Exhaustive enumeration of submodules of finite modules.
//!
//! The fast path walks down from the top module one composition step at a
//! time: every proper submodule of `X` lies in a maximal one, and every
//! maximal submodule contains `J X`, so the children of `X` are the
//! invariant subspaces between `J X` and `X` of codimension equal to a
//! simple dimension. The raw scan tests every subspace instead and exists
//! to validate the fast path on small cases.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::algebra::FiniteAlgebra;
use super::field::Field;
use super::linalg::{apply, subspaces_of_codim, Matrix, Subspace, Vector};
use super::OracleError;

/// Ambient dimension above which the raw scan refuses to run.
pub const RAW_SCAN_MAX_DIM: usize = 12;

/// A left module over a [`FiniteAlgebra`] given by one action matrix per
/// basis element of the algebra.
#[derive(Clone, Debug)]
pub struct FiniteModule<'a> {
    alg: &'a FiniteAlgebra,
    dim: usize,
    actions: Vec<Matrix>,
    generator_actions: Vec<Matrix>,
    radical_actions: Vec<Matrix>,
}

impl<'a> FiniteModule<'a> {
    /// Checks that `actions` respects the structure constants: the action
    /// of `b_i b_j` is the composite of the actions of `b_j` then `b_i`.
    pub fn new(alg: &'a FiniteAlgebra, dim: usize, actions: Vec<Matrix>) -> Result<Self, OracleError> {
        let f = alg.field();
        if actions.len() != alg.dim() || actions.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(OracleError::Malformed("one square action matrix per basis element is required".into()));
        }
        let combine = |a: &[u8]| -> Matrix {
            let mut out = vec![vec![0u8; dim]; dim];
            for (c, m) in a.iter().zip(&actions) {
                if *c == 0 {
                    continue;
                }
                for (row, mrow) in out.iter_mut().zip(m) {
                    super::linalg::axpy(f, row, *c, mrow);
                }
            }
            out
        };
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg.mul(&alg.basis(i), &alg.basis(j));
                let composite = super::linalg::compose(f, &actions[j], &actions[i], dim);
                if combine(&prod) != composite {
                    return Err(OracleError::Malformed(format!("action does not respect b_{i} b_{j}")));
                }
            }
        }
        if combine(alg.unit()) != Subspace::full(dim).rows().to_vec() {
            return Err(OracleError::Malformed("unit does not act as the identity".into()));
        }
        let generator_actions = alg.generators().iter().map(|g| combine(g)).collect();
        let radical_actions = (0..alg.dim()).filter(|&i| alg.weights()[i] == 1).map(|i| actions[i].clone()).collect();
        Ok(FiniteModule { alg, dim, actions, generator_actions, radical_actions })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(alg: &'a FiniteAlgebra) -> Self {
        let actions = super::algebra::basis_actions(alg);
        let generator_actions = alg.generators().iter().map(|g| alg.left_mul(g)).collect();
        let radical_actions = (0..alg.dim()).filter(|&i| alg.weights()[i] == 1).map(|i| actions[i].clone()).collect();
        FiniteModule { alg, dim: alg.dim(), actions, generator_actions, radical_actions }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[u8], v: &[u8]) -> Vector {
        let f = self.field();
        let mut out = vec![0u8; self.dim];
        for (c, m) in a.iter().zip(&self.actions) {
            if *c != 0 {
                super::linalg::axpy(f, &mut out, *c, &apply(f, m, v, self.dim));
            }
        }
        out
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let f = self.field();
        self.generator_actions.iter().all(|m| s.is_invariant(f, m))
    }

    /// Smallest submodule containing `s`.
    pub fn closure(&self, s: &Subspace) -> Subspace {
        let f = self.field();
        let mut out = s.clone();
        let mut frontier: Vec<Vector> = s.rows().to_vec();
        while let Some(v) = frontier.pop() {
            for m in &self.generator_actions {
                let w = apply(f, m, &v, self.dim);
                if out.insert(f, w.clone()) {
                    frontier.push(w);
                }
            }
        }
        out
    }

    /// `J X` for the radical `J = F_1`, which is generated as a left ideal
    /// by the weight-1 basis elements.
    pub fn radical_times(&self, x: &Subspace) -> Subspace {
        let f = self.field();
        let seeds = self.radical_actions.iter().flat_map(|m| x.rows().iter().map(move |r| apply(f, m, r, self.dim)));
        self.closure(&Subspace::span(f, self.dim, seeds.collect::<Vec<_>>()))
    }

    /// Composition-factor multiplicities of `top / sub`, one entry per
    /// simple class of the algebra. Idempotent ranks are additive on short
    /// exact sequences, so they can be read off the whole quotient.
    pub fn class_of_quotient(&self, top: &Subspace, sub: &Subspace) -> Vec<usize> {
        let f = self.field();
        self.alg
            .simples()
            .iter()
            .map(|s| {
                let image = Subspace::span(f, self.dim, top.rows().iter().map(|r| self.act(&s.idempotent, r)));
                (image.sum(f, sub).dim() - sub.dim()) / s.rank
            })
            .collect()
    }

    /// `F_q`-dimensions of the radical layers of `top / sub`.
    pub fn radical_layers(&self, top: &Subspace, sub: &Subspace) -> Vec<usize> {
        let f = self.field();
        let mut layers = Vec::new();
        let mut cur = top.sum(f, sub);
        while cur.dim() > sub.dim() {
            let next = self.radical_times(&cur).sum(f, sub);
            layers.push(cur.dim() - next.dim());
            cur = next;
        }
        layers
    }
}

fn complement_basis(f: &Field, top: &Subspace, sub: &Subspace) -> Vec<Vector> {
    let mut acc = sub.clone();
    top.rows().iter().filter(|r| acc.insert(f, (*r).clone())).cloned().collect()
}

fn lift(f: &Field, base: &Subspace, comp: &[Vector], inner: &Subspace) -> Subspace {
    let ambient = base.ambient();
    let mut out = base.clone();
    for coords in inner.rows() {
        let mut v = vec![0u8; ambient];
        for (c, b) in coords.iter().zip(comp) {
            super::linalg::axpy(f, &mut v, *c, b);
        }
        out.insert(f, v);
    }
    out
}

/// Submodules `S` with `bottom <= S <= top`, grouped by `dim(top / S)` up
/// to `max_codim`. `top` and `bottom` must be submodules.
pub fn submodules(
    module: &FiniteModule,
    top: &Subspace,
    bottom: &Subspace,
    max_codim: usize,
) -> Result<BTreeMap<usize, BTreeSet<Subspace>>, OracleError> {
    let f = module.field();
    check_bounds(module, top, bottom)?;
    let mut dims: Vec<usize> = module.algebra().simples().iter().map(|s| s.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    let mut levels: BTreeMap<usize, BTreeSet<Subspace>> = BTreeMap::new();
    levels.entry(0).or_default().insert(top.clone());
    for level in 0..max_codim {
        let Some(parents) = levels.get(&level) else {
            continue;
        };
        let parents: Vec<&Subspace> = parents.iter().collect();
        let children: Vec<Vec<(usize, Subspace)>> = parents
            .par_iter()
            .map(|x| {
                let base = module.radical_times(x).sum(f, bottom);
                let comp = complement_basis(f, x, &base);
                let mut out = Vec::new();
                for &d in dims.iter().filter(|&&d| level + d <= max_codim && d <= comp.len()) {
                    for inner in subspaces_of_codim(f, comp.len(), d) {
                        let h = lift(f, &base, &comp, &inner);
                        if module.is_submodule(&h) {
                            out.push((level + d, h));
                        }
                    }
                }
                out
            })
            .collect();
        for (lvl, h) in children.into_iter().flatten() {
            levels.entry(lvl).or_default().insert(h);
        }
    }
    Ok(levels)
}

/// The same set as [`submodules`] by testing every intermediate subspace.
pub fn submodules_raw(
    module: &FiniteModule,
    top: &Subspace,
    bottom: &Subspace,
    max_codim: usize,
) -> Result<BTreeMap<usize, BTreeSet<Subspace>>, OracleError> {
    let f = module.field();
    check_bounds(module, top, bottom)?;
    let comp = complement_basis(f, top, bottom);
    if comp.len() > RAW_SCAN_MAX_DIM {
        return Err(OracleError::BoundsExceeded(format!(
            "raw scan over a {}-dimensional quotient (limit {RAW_SCAN_MAX_DIM})",
            comp.len()
        )));
    }
    let mut levels: BTreeMap<usize, BTreeSet<Subspace>> = BTreeMap::new();
    for c in 0..=max_codim.min(comp.len()) {
        let found: Vec<Subspace> = subspaces_of_codim(f, comp.len(), c)
            .into_par_iter()
            .map(|inner| lift(f, bottom, &comp, &inner))
            .filter(|h| module.is_submodule(h))
            .collect();
        if !found.is_empty() {
            levels.entry(c).or_default().extend(found);
        }
    }
    Ok(levels)
}

fn check_bounds(module: &FiniteModule, top: &Subspace, bottom: &Subspace) -> Result<(), OracleError> {
    let f = module.field();
    if top.ambient() != module.dim() || bottom.ambient() != module.dim() {
        return Err(OracleError::Malformed("subspaces live in a different ambient space".into()));
    }
    if !top.contains_space(f, bottom) || !module.is_submodule(top) || !module.is_submodule(bottom) {
        return Err(OracleError::Malformed("bounds must be nested submodules".into()));
    }
    Ok(())
}
