//! Dense linear algebra over a small [`Field`].
//!
//! Vectors are `Vec<u8>`. A linear map is stored by rows: row `i` is the
//! image of the `i`-th basis vector, so `apply(map, v) = sum v_i row_i`.
//! Subspaces are kept in reduced row echelon form, which makes the row list
//! a canonical key.

use super::field::Field;

pub type Vector = Vec<u8>;
pub type Matrix = Vec<Vector>;

pub fn zero_vector(n: usize) -> Vector {
    vec![0; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `acc += c * v`.
pub fn axpy(f: &Field, acc: &mut [u8], c: u8, v: &[u8]) {
    if c == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        if x != 0 {
            *a = f.add(*a, f.mul(c, x));
        }
    }
}

pub fn scale(f: &Field, c: u8, v: &[u8]) -> Vector {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn add(f: &Field, a: &[u8], b: &[u8]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// Image of `v` under the map with the given rows; `cols` is the target
/// dimension (needed when the map has no rows).
pub fn apply(f: &Field, map: &Matrix, v: &[u8], cols: usize) -> Vector {
    let mut out = zero_vector(cols);
    for (c, row) in v.iter().zip(map) {
        axpy(f, &mut out, *c, row);
    }
    out
}

/// Composition `v -> second(first(v))`.
pub fn compose(f: &Field, first: &Matrix, second: &Matrix, cols: usize) -> Matrix {
    first.iter().map(|row| apply(f, second, row, cols)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row-reduced span of `vectors`.
    pub fn span(f: &Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical flat encoding, equal for equal subspaces.
    pub fn key(&self) -> Vec<u8> {
        self.rows.concat()
    }

    /// Normal form of `v` modulo the subspace; linear in `v`.
    pub fn reduce(&self, f: &Field, v: &[u8]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c != 0 {
                axpy(f, &mut out, f.neg(c), row);
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[u8]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    pub fn contains_space(&self, f: &Field, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }

    /// Adds `v` to the span, keeping reduced echelon form. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, f: &Field, v: Vector) -> bool {
        let mut r = self.reduce(f, &v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[p]);
        r = scale(f, inv, &r);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                axpy(f, row, f.neg(c), &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(f, r.clone());
        }
        s
    }

    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        // Solve sum a_i s_i = sum b_j o_j through the left kernel of the
        // stacked rows.
        let stacked: Matrix = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        let kernel = left_kernel(f, &stacked, self.ambient);
        Subspace::span(
            f,
            self.ambient,
            kernel.into_iter().map(|c| apply(f, &self.rows, &c[..self.rows.len()], self.ambient)),
        )
    }

    /// `{map(v) : v in self}`.
    pub fn image(&self, f: &Field, map: &Matrix, cols: usize) -> Subspace {
        Subspace::span(f, cols, self.rows.iter().map(|r| apply(f, map, r, cols)))
    }

    /// Coordinates of the non-pivot positions; together with the pivots
    /// they give a complement basis of unit vectors.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    pub fn is_invariant(&self, f: &Field, map: &Matrix) -> bool {
        self.rows.iter().all(|r| self.contains(f, &apply(f, map, r, self.ambient)))
    }
}

/// Basis of `{c : sum c_i rows_i = 0}`.
pub fn left_kernel(f: &Field, rows: &Matrix, cols: usize) -> Vec<Vector> {
    let m = rows.len();
    // Row-reduce [rows | I] and read off the identity part of zero rows.
    let mut aug: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.resize(cols, 0);
            v.extend(unit_vector(m, i));
            v
        })
        .collect();
    let mut lead = 0;
    for col in 0..cols {
        let Some(pr) = (lead..m).find(|&i| aug[i][col] != 0) else {
            continue;
        };
        aug.swap(lead, pr);
        let inv = f.inv(aug[lead][col]);
        aug[lead] = scale(f, inv, &aug[lead]);
        let pivot_row = aug[lead].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != lead && row[col] != 0 {
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
        }
        lead += 1;
    }
    aug[lead..].iter().map(|r| r[cols..].to_vec()).collect()
}

/// `{v : map(v) in target}` where `map` has `map.len()` rows mapping into
/// `target.ambient()`.
pub fn preimage(f: &Field, map: &Matrix, target: &Subspace) -> Subspace {
    let reduced: Matrix = map.iter().map(|r| target.reduce(f, r)).collect();
    let kernel = left_kernel(f, &reduced, target.ambient());
    Subspace::span(f, map.len(), kernel)
}

/// Every vector of `F_q^n`, in lexicographic order of codes.
pub fn all_vectors(f: &Field, n: usize) -> impl Iterator<Item = Vector> + '_ {
    let q = f.order();
    let total = q.checked_pow(n as u32).expect("vector space too large to list");
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for x in v.iter_mut() {
            *x = (code % q) as u8;
            code /= q;
        }
        v
    })
}

/// Every subspace of `F_q^n` of codimension `c`, each exactly once, as
/// kernels of `c x n` matrices in reduced row echelon form.
pub fn subspaces_of_codim(f: &Field, n: usize, c: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if c > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(c);
    pivot_sets(n, c, 0, &mut pivots, &mut |piv| {
        // Free positions: (row i, column j) with j > piv[i] and j not a pivot.
        let free: Vec<(usize, usize)> =
            (0..c).flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j))).collect();
        for fill in all_vectors(f, free.len()) {
            let mut phi = vec![vec![0u8; n]; c];
            for (i, &p) in piv.iter().enumerate() {
                phi[i][p] = 1;
            }
            for (&(i, j), &x) in free.iter().zip(&fill) {
                phi[i][j] = x;
            }
            out.push(right_kernel(f, &phi, piv, n));
        }
    });
    out
}

fn pivot_sets(n: usize, c: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == c {
        visit(cur);
        return;
    }
    for p in start..n {
        if n - p < c - cur.len() {
            break;
        }
        cur.push(p);
        pivot_sets(n, c, p + 1, cur, visit);
        cur.pop();
    }
}

/// Kernel of a matrix already in reduced row echelon form with the given
/// pivots.
fn right_kernel(f: &Field, phi: &Matrix, piv: &[usize], n: usize) -> Subspace {
    let vectors = (0..n).filter(|j| !piv.contains(j)).map(|j| {
        let mut v = unit_vector(n, j);
        for (i, &p) in piv.iter().enumerate() {
            v[p] = f.neg(phi[i][j]);
        }
        v
    });
    Subspace::span(f, n, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(q: u64, n: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for q in [2u64, 3, 4] {
            let f = Field::new(q).unwrap();
            for n in 0..=4usize {
                for c in 0..=n {
                    let subs = subspaces_of_codim(&f, n, c);
                    assert_eq!(subs.len() as u64, gaussian_binomial(q, n as u32, c as u32));
                    let keys: std::collections::BTreeSet<_> = subs.iter().map(|s| s.key()).collect();
                    assert_eq!(keys.len(), subs.len());
                    assert!(subs.iter().all(|s| s.codim() == c));
                }
            }
        }
    }

    #[test]
    fn intersection_and_preimage() {
        let f = Field::new(3).unwrap();
        let a = Subspace::span(&f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(&f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let i = a.intersect(&f, &b);
        assert_eq!(i.rows(), &[vec![0, 1, 0]]);
        assert_eq!(a.sum(&f, &b).dim(), 3);
        // Shift map e0 -> e1 -> e2 -> 0.
        let shift = vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
        let pre = preimage(&f, &shift, &Subspace::span(&f, 3, [vec![0, 0, 1]]));
        assert_eq!(pre, Subspace::span(&f, 3, [vec![0, 1, 0], vec![0, 0, 1]]));
        let kernel = left_kernel(&f, &vec![vec![1, 1], vec![2, 2], vec![0, 1]], 2);
        assert_eq!(kernel.len(), 1);
    }
}
