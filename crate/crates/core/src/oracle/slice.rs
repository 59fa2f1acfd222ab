//! Finite check of the homogeneous-slice condition.
//!
//! With `Z = A z`, every submodule `N` of `Mbar = A / Z` of colength `k`
//! should be isomorphic to `Mbar`. In the truncation this is tested by
//! finding a generator `g` of `N` whose annihilator modulo `Z` is no larger
//! than the window forces: `{a : a g in Z}` must lie in `Z + F_(W-k)`.

use super::algebra::FiniteAlgebra;
use super::enumerate::{submodules, FiniteModule};
use super::linalg::{all_vectors, axpy, preimage, Subspace, Vector};
use super::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceEntry {
    pub colength: usize,
    pub cyclic: bool,
    pub regular_generator: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub entries: Vec<SliceEntry>,
}

impl SliceReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.cyclic && e.regular_generator)
    }

    /// Number of submodules checked per colength.
    pub fn counts(&self) -> Vec<usize> {
        let max = self.entries.iter().map(|e| e.colength).max().unwrap_or(0);
        (0..=max).map(|c| self.entries.iter().filter(|e| e.colength == c).count()).collect()
    }
}

/// `A z` together with the window ideal, as a subspace of `A`.
pub fn slice_ideal(alg: &FiniteAlgebra) -> Result<Subspace, OracleError> {
    let z = alg.slice().ok_or(OracleError::NoSlice)?;
    Ok(alg.left_ideal(z))
}

pub fn check_slice(alg: &FiniteAlgebra, colength_bound: usize) -> Result<SliceReport, OracleError> {
    let f = alg.field();
    let zideal = slice_ideal(alg)?;
    let needed = colength_bound + 1;
    if alg.window() < needed {
        return Err(OracleError::WindowTooSmall { window: alg.window(), needed });
    }
    let module = FiniteModule::regular(alg);
    let full = Subspace::full(alg.dim());
    let top_simple_dim: usize = alg.simples().iter().map(|s| s.dim).sum();
    let levels = submodules(&module, &full, &zideal, colength_bound)?;
    let mut entries = Vec::new();
    for (colength, subs) in levels {
        let allowed = zideal.sum(f, &alg.filtration(alg.window() - colength));
        for n in subs {
            let base = module.radical_times(&n).sum(f, &zideal);
            let mut acc = base.clone();
            let comp: Vec<Vector> = n.rows().iter().filter(|r| acc.insert(f, (*r).clone())).cloned().collect();
            let mut cyclic = false;
            let mut regular = false;
            if comp.len() <= top_simple_dim {
                for coords in all_vectors(f, comp.len()).skip(1) {
                    let mut g = vec![0u8; alg.dim()];
                    for (c, b) in coords.iter().zip(&comp) {
                        axpy(f, &mut g, *c, b);
                    }
                    if alg.left_ideal(&g).sum(f, &zideal) != n {
                        continue;
                    }
                    cyclic = true;
                    let annihilator = preimage(f, &alg.right_mul(&g), &zideal);
                    if allowed.contains_space(f, &annihilator) {
                        regular = true;
                        break;
                    }
                }
            }
            entries.push(SliceEntry { colength, cyclic, regular_generator: regular });
        }
    }
    Ok(SliceReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::algebra::{build_symbol, commutative_truncation, product, SymbolParam, SymbolSpec};
    use crate::oracle::field::Field;

    #[test]
    fn plane_slice_passes() {
        let a = commutative_truncation(2, 5).unwrap();
        let report = check_slice(&a, 4).unwrap();
        assert!(report.passed());
        // Ideals of F_2[[x]] of colength k: exactly (x^k).
        assert_eq!(report.counts(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn quaternion_and_product_slices_pass() {
        let f3 = Field::new(3).unwrap();
        let spec = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::V };
        let a = build_symbol(spec, 4).unwrap();
        assert!(check_slice(&a, 2).unwrap().passed());
        let p = commutative_truncation(2, 3).unwrap();
        let pp = product(&p, &p).unwrap();
        let report = check_slice(&pp, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.counts(), vec![1, 2, 3]);
    }

    #[test]
    fn slice_failure_is_detected() {
        // z = x y is regular and normal, but F_2[[x, y]] / (x y) is not a
        // discrete valuation ring: (x, y) / (x y) needs two generators.
        let p = commutative_truncation(2, 5).unwrap();
        let gens = p.generators().to_vec();
        let xy = p.mul(&gens[0], &gens[1]);
        let p = p.with_slice(xy).unwrap();
        let report = check_slice(&p, 2).unwrap();
        assert!(!report.passed());
        assert!(report.entries.iter().any(|e| e.colength == 1 && !e.cyclic));
    }
}
