//! Left-ideal censuses of truncated complete algebras.
//!
//! Window validity: if `I` is a left ideal of the complete algebra with
//! `dim A/I = n`, then `A/I` has length at most `L = floor(n / s)` where
//! `s` is the smallest simple dimension, so `J^L (A/I) = 0` and `J^L` lies
//! in `I`. Algebra construction checks `F_k = J^k` inside the window, so
//! ideals of colength at most `n` correspond exactly to left ideals of the
//! truncation `A / F_W` as soon as `W >= L`.

use std::collections::BTreeMap;

use super::algebra::{commutative_truncation, FiniteAlgebra};
use super::enumerate::{submodules, FiniteModule};
use super::linalg::Subspace;
use super::OracleError;

/// Counts of left ideals per colength, refined by composition factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubmoduleCensus {
    pub by_colength: BTreeMap<usize, u64>,
    /// Keyed by the multiplicity of each simple class in the quotient.
    pub by_class: BTreeMap<Vec<usize>, u64>,
}

impl SubmoduleCensus {
    pub fn count(&self, colength: usize) -> u64 {
        self.by_colength.get(&colength).copied().unwrap_or(0)
    }

    /// Counts for colengths `0..=n_max`, zeros included.
    pub fn counts(&self, n_max: usize) -> Vec<u64> {
        (0..=n_max).map(|n| self.count(n)).collect()
    }

    pub fn class_total(&self) -> u64 {
        self.by_class.values().sum()
    }
}

/// Fails unless left ideals of colength up to `n_max` all contain the
/// window ideal `F_W`.
pub fn check_window(alg: &FiniteAlgebra, n_max: usize) -> Result<(), OracleError> {
    let needed = n_max / alg.min_simple_dim();
    if alg.window() < needed {
        return Err(OracleError::WindowTooSmall { window: alg.window(), needed });
    }
    Ok(())
}

/// Composition-factor multiplicities of `A / ideal`.
pub fn grothendieck_class(alg: &FiniteAlgebra, ideal: &Subspace) -> Vec<usize> {
    FiniteModule::regular(alg).class_of_quotient(&Subspace::full(alg.dim()), ideal)
}

/// Every left ideal of colength at most `n_max`, grouped by colength.
pub fn left_ideals(alg: &FiniteAlgebra, n_max: usize) -> Result<BTreeMap<usize, Vec<Subspace>>, OracleError> {
    check_window(alg, n_max)?;
    let module = FiniteModule::regular(alg);
    let levels = submodules(&module, &Subspace::full(alg.dim()), &Subspace::zero(alg.dim()), n_max)?;
    Ok(levels.into_iter().map(|(c, set)| (c, set.into_iter().collect())).collect())
}

pub fn count_ideals_algebra(alg: &FiniteAlgebra, n_max: usize) -> Result<SubmoduleCensus, OracleError> {
    let module = FiniteModule::regular(alg);
    let full = Subspace::full(alg.dim());
    let mut census = SubmoduleCensus::default();
    for (colength, ideals) in left_ideals(alg, n_max)? {
        census.by_colength.insert(colength, ideals.len() as u64);
        for ideal in &ideals {
            *census.by_class.entry(module.class_of_quotient(&full, ideal)).or_insert(0) += 1;
        }
    }
    Ok(census)
}

/// Ideals of `F_q[[x, y]]` per colength `0..=n_max`, counted in
/// `F_q[x, y] / m^(n_max + 1)`; a colength-`n` ideal contains `m^n`.
pub fn count_ideals_2d(q: u64, n_max: usize) -> Result<Vec<u64>, OracleError> {
    if !(2..=4).contains(&q) || n_max > 4 {
        return Err(OracleError::BoundsExceeded(format!(
            "count_ideals_2d needs q in 2..=4 and n <= 4, got q={q}, n={n_max}"
        )));
    }
    let alg = commutative_truncation(q, n_max + 1)?;
    Ok(count_ideals_algebra(&alg, n_max)?.counts(n_max))
}
