//! Full sublattices of `O^r` for `O = F_q[[t]]`, by Hermite normal forms.
//!
//! A sublattice of `F_q`-codimension `n` contains `t^n O^r`, so it is seen
//! faithfully in `O / t^N` for any `N >= n`. Each HNF column
//! `t^(d_j) e_j + sum_(i<j) h_ij e_i` with `deg h_ij < d_i` is expanded to
//! its `F_q`-span in `(F_q[t]/t^N)^r`; spans are deduplicated, so the count
//! does not rely on HNF uniqueness.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::field::Field;
use super::linalg::{all_vectors, Subspace, Vector};
use super::OracleError;

pub const MAX_RANK: usize = 3;
pub const MAX_CODIM: usize = 6;

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// The sublattices of codimension exactly `n`, as spans in
/// `(F_q[t]/t^trunc)^r`.
pub fn sublattices(f: &Field, r: usize, n: usize, trunc: usize) -> Vec<Subspace> {
    let ambient = r * trunc;
    let coord = |component: usize, power: usize| component * trunc + power;
    let shapes = compositions(n, r);
    let spans: Vec<Vec<Subspace>> = shapes
        .par_iter()
        .map(|d| {
            // Free coefficients: h_ij for i < j has d_i coefficients.
            let slots: Vec<(usize, usize, usize)> =
                (0..r).flat_map(|j| (0..j).flat_map(move |i| (0..d[i]).map(move |k| (i, j, k)))).collect();
            all_vectors(f, slots.len())
                .map(|fill| {
                    let mut columns: Vec<Vector> = (0..r)
                        .map(|j| {
                            let mut v = vec![0u8; ambient];
                            if d[j] < trunc {
                                v[coord(j, d[j])] = 1;
                            }
                            v
                        })
                        .collect();
                    for (&(i, j, k), &c) in slots.iter().zip(&fill) {
                        columns[j][coord(i, k)] = c;
                    }
                    let shifted = columns.iter().flat_map(|col| {
                        (0..trunc).map(move |s| {
                            let mut w = vec![0u8; ambient];
                            for comp in 0..r {
                                for p in 0..trunc - s {
                                    w[coord(comp, p + s)] = col[coord(comp, p)];
                                }
                            }
                            w
                        })
                    });
                    Subspace::span(f, ambient, shifted.collect::<Vec<_>>())
                })
                .collect()
        })
        .collect();
    spans.into_iter().flatten().filter(|s| s.codim() == n).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Number of sublattices of `O^r` of codimension `n` for `n = 0..=n_max`,
/// reported as `(algebra colength r n, count)`: under Morita equivalence
/// these are the left ideals of `M_r(O)` of colength `r n`.
pub fn count_sublattices(q: u64, r: usize, n_max: usize) -> Result<Vec<(usize, u64)>, OracleError> {
    if r == 0 || r > MAX_RANK || n_max > MAX_CODIM {
        return Err(OracleError::BoundsExceeded(format!(
            "count_sublattices needs 1 <= r <= {MAX_RANK} and n <= {MAX_CODIM}, got r={r}, n={n_max}"
        )));
    }
    let f = Field::new(q)?;
    let trunc = n_max.max(1);
    Ok((0..=n_max).map(|n| (r * n, sublattices(&f, r, n, trunc).len() as u64)).collect())
}
