//! Finite truncations of complete local algebras, given by structure
//! constants on a weighted monomial basis.
//!
//! Every algebra here carries a weight per basis element. `F_k` is the span
//! of basis elements of weight at least `k`, and the truncation keeps only
//! weights below the window `W`, so `F_W = 0`. Construction verifies that
//! weights add under multiplication, that `F_1 F_k = F_{k+1}` below the
//! window and that the weight-0 part is a commutative semisimple algebra.
//! Together these say `F_k` is the `k`-th power of the radical, which is
//! what the window-validity arguments in [`super::ideals`] rely on.

use std::collections::BTreeMap;

use super::field::Field;
use super::linalg::{apply, is_zero, unit_vector, Matrix, Subspace, Vector};
use super::OracleError;

/// One isomorphism class of simple modules, located by a primitive
/// idempotent of the weight-0 part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleClass {
    pub idempotent: Vector,
    /// `F_q`-dimension of the simple module.
    pub dim: usize,
    /// `F_q`-dimension of `e S`, the rank of the idempotent on one copy
    /// of the simple.
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    name: String,
    dim: usize,
    table: Vec<Vec<(usize, u8)>>,
    weights: Vec<usize>,
    window: usize,
    unit: Vector,
    generators: Vec<Vector>,
    simples: Vec<SimpleClass>,
    slice: Option<Vector>,
}

/// Everything needed to assemble a [`FiniteAlgebra`]; validated by
/// [`FiniteAlgebra::new`].
pub struct AlgebraData {
    pub name: String,
    pub weights: Vec<usize>,
    pub window: usize,
    /// `table[i * dim + j]` is the sparse expansion of `b_i b_j`.
    pub table: Vec<Vec<(usize, u8)>>,
    pub unit: Vector,
    pub generators: Vec<Vector>,
    pub slice: Option<Vector>,
}

/// Weight-0 parts with more elements than this are not searched for
/// idempotents.
const MAX_SEMISIMPLE_ELEMENTS: usize = 200_000;

impl FiniteAlgebra {
    pub fn new(field: Field, data: AlgebraData) -> Result<Self, OracleError> {
        let dim = data.weights.len();
        if data.table.len() != dim * dim || data.unit.len() != dim {
            return Err(OracleError::Malformed(format!("{}: table size does not match the basis", data.name)));
        }
        if data.weights.iter().any(|&w| w >= data.window) {
            return Err(OracleError::Malformed(format!("{}: basis weight outside the window", data.name)));
        }
        let mut alg = FiniteAlgebra {
            field,
            name: data.name,
            dim,
            table: data.table,
            weights: data.weights,
            window: data.window,
            unit: data.unit,
            generators: data.generators,
            simples: Vec::new(),
            slice: None,
        };
        alg.check_associative()?;
        alg.check_unit()?;
        alg.check_filtration()?;
        alg.check_generators()?;
        alg.simples = alg.find_simples()?;
        if let Some(z) = data.slice {
            alg.check_slice_element(&z)?;
            alg.slice = Some(z);
        }
        Ok(alg)
    }

    /// Replaces the declared slice element after checking it.
    pub fn with_slice(mut self, z: Vector) -> Result<Self, OracleError> {
        self.check_slice_element(&z)?;
        self.slice = Some(z);
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn simples(&self) -> &[SimpleClass] {
        &self.simples
    }

    pub fn slice(&self) -> Option<&Vector> {
        self.slice.as_ref()
    }

    /// Smallest `F_q`-dimension of a simple module.
    pub fn min_simple_dim(&self) -> usize {
        self.simples.iter().map(|s| s.dim).min().unwrap_or(1)
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vector {
        let f = &self.field;
        let mut out = vec![0u8; self.dim];
        let support: Vec<(usize, u8)> = b.iter().copied().enumerate().filter(|&(_, y)| y != 0).collect();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(j, y) in &support {
                let c = f.mul(x, y);
                for &(k, s) in &self.table[i * self.dim + j] {
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    /// `v -> a v`.
    pub fn left_mul(&self, a: &[u8]) -> Matrix {
        (0..self.dim).map(|i| self.mul(a, &self.basis(i))).collect()
    }

    /// `v -> v a`.
    pub fn right_mul(&self, a: &[u8]) -> Matrix {
        (0..self.dim).map(|i| self.mul(&self.basis(i), a)).collect()
    }

    /// `F_k`, the span of basis elements of weight at least `k`.
    pub fn filtration(&self, k: usize) -> Subspace {
        Subspace::span(&self.field, self.dim, (0..self.dim).filter(|&i| self.weights[i] >= k).map(|i| self.basis(i)))
    }

    /// Lowest weight occurring in the support of `a`.
    pub fn weight_of(&self, a: &[u8]) -> Option<usize> {
        a.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| self.weights[i]).min()
    }

    /// The left ideal `A a`.
    pub fn left_ideal(&self, a: &[u8]) -> Subspace {
        Subspace::span(&self.field, self.dim, (0..self.dim).map(|i| self.mul(&self.basis(i), a)))
    }

    fn check_associative(&self) -> Result<(), OracleError> {
        for i in 0..self.dim {
            let bi = self.basis(i);
            for j in 0..self.dim {
                let bij = self.mul(&bi, &self.basis(j));
                for k in 0..self.dim {
                    let bk = self.basis(k);
                    let left = self.mul(&bij, &bk);
                    let right = self.mul(&bi, &self.mul(&self.basis(j), &bk));
                    if left != right {
                        return Err(OracleError::Malformed(format!(
                            "{}: associativity fails on basis triple ({i}, {j}, {k})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), OracleError> {
        for i in 0..self.dim {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(OracleError::Malformed(format!("{}: unit law fails on basis element {i}", self.name)));
            }
        }
        Ok(())
    }

    fn check_filtration(&self) -> Result<(), OracleError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let w = self.weights[i] + self.weights[j];
                if self.table[i * self.dim + j].iter().any(|&(k, _)| self.weights[k] < w) {
                    return Err(OracleError::Malformed(format!(
                        "{}: product of basis elements {i} and {j} drops weight",
                        self.name
                    )));
                }
            }
        }
        for k in 1..self.window.saturating_sub(1) {
            let prod = Subspace::span(
                &self.field,
                self.dim,
                (0..self.dim)
                    .filter(|&i| self.weights[i] >= 1)
                    .flat_map(|i| {
                        (0..self.dim)
                            .filter(move |&j| self.weights[j] >= k)
                            .map(move |j| self.mul(&self.basis(i), &self.basis(j)))
                    })
                    .collect::<Vec<_>>(),
            );
            if prod != self.filtration(k + 1) {
                return Err(OracleError::FiltrationNotRadical { algebra: self.name.clone(), k });
            }
        }
        Ok(())
    }

    fn check_generators(&self) -> Result<(), OracleError> {
        let f = &self.field;
        let mut span = Subspace::span(f, self.dim, [self.unit.clone()]);
        let mut frontier = vec![self.unit.clone()];
        while let Some(v) = frontier.pop() {
            for g in &self.generators {
                let w = self.mul(g, &v);
                if span.insert(f, w.clone()) {
                    frontier.push(w);
                }
            }
        }
        if span.dim() != self.dim {
            return Err(OracleError::Malformed(format!(
                "{}: declared generators span only {} of {} dimensions",
                self.name,
                span.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Primitive idempotents of the weight-0 part by exhaustive search.
    fn find_simples(&self) -> Result<Vec<SimpleClass>, OracleError> {
        let f = &self.field;
        let zero_idx: Vec<usize> = (0..self.dim).filter(|&i| self.weights[i] == 0).collect();
        let n0 = zero_idx.len();
        let total = f.order().checked_pow(n0 as u32).filter(|&t| t <= MAX_SEMISIMPLE_ELEMENTS);
        let Some(total) = total else {
            return Err(OracleError::BoundsExceeded(format!("{}: weight-0 part too large to search", self.name)));
        };
        let embed = |code: usize| -> Vector {
            let mut v = vec![0u8; self.dim];
            let mut c = code;
            for &i in &zero_idx {
                v[i] = (c % f.order()) as u8;
                c /= f.order();
            }
            v
        };
        for &i in &zero_idx {
            for &j in &zero_idx {
                let (bi, bj) = (self.basis(i), self.basis(j));
                if self.mul(&bi, &bj) != self.mul(&bj, &bi) {
                    return Err(OracleError::NotSemisimple(self.name.clone()));
                }
            }
        }
        let mut idempotents = Vec::new();
        for code in 1..total {
            let v = embed(code);
            let sq = self.mul(&v, &v);
            if is_zero(&sq) {
                return Err(OracleError::NotSemisimple(self.name.clone()));
            }
            if sq == v {
                idempotents.push(v);
            }
        }
        // e is primitive when no other nonzero idempotent f has e f = f.
        let primitive: Vec<Vector> = idempotents
            .iter()
            .filter(|e| idempotents.iter().all(|g| g == *e || self.mul(e, g) != *g))
            .cloned()
            .collect();
        Ok(primitive
            .into_iter()
            .map(|e| {
                let span = Subspace::span(f, self.dim, zero_idx.iter().map(|&i| self.mul(&e, &self.basis(i))));
                SimpleClass { idempotent: e, dim: span.dim(), rank: span.dim() }
            })
            .collect())
    }

    fn check_slice_element(&self, z: &[u8]) -> Result<(), OracleError> {
        let f = &self.field;
        let name = &self.name;
        let w = self.weight_of(z).ok_or_else(|| OracleError::BadSlice(format!("{name}: slice element is zero")))?;
        if w == 0 {
            return Err(OracleError::BadSlice(format!("{name}: slice element is not in the radical")));
        }
        let tail = self.filtration(self.window.saturating_sub(w));
        let zero = Subspace::zero(self.dim);
        for (side, map) in [("left", self.left_mul(z)), ("right", self.right_mul(z))] {
            let kernel = super::linalg::preimage(f, &map, &zero);
            if !tail.contains_space(f, &kernel) {
                return Err(OracleError::BadSlice(format!(
                    "{name}: {side} multiplication by the slice element has a kernel below the window"
                )));
            }
        }
        let za = Subspace::span(f, self.dim, (0..self.dim).map(|i| self.mul(z, &self.basis(i))));
        let az = self.left_ideal(z);
        if za != az {
            return Err(OracleError::BadSlice(format!("{name}: slice element is not normal")));
        }
        Ok(())
    }
}

/// Generator choice for `x^e` and `y^e` in a symbol algebra over
/// `F_q[[u, v]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolParam {
    U,
    V,
    /// A nonzero constant, given as a field element code.
    Unit(u8),
}

impl SymbolParam {
    fn is_param(self) -> bool {
        !matches!(self, SymbolParam::Unit(_))
    }

    pub fn from_name(name: &str, unit: Option<u8>) -> Option<Self> {
        match (name, unit) {
            ("param_u", _) => Some(SymbolParam::U),
            ("param_v", _) => Some(SymbolParam::V),
            ("unit", Some(c)) => Some(SymbolParam::Unit(c)),
            _ => None,
        }
    }
}

/// `(a, b)_xi` over `F_q[[u, v]]`: `x^e = a`, `y^e = b`, `y x = xi x y`.
#[derive(Clone, Copy, Debug)]
pub struct SymbolSpec {
    pub q: u64,
    pub e: u32,
    /// Field element code of a primitive `e`-th root of unity.
    pub xi: u8,
    pub a: SymbolParam,
    pub b: SymbolParam,
}

/// `u^alpha v^beta x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SymbolMonomial {
    alpha: usize,
    beta: usize,
    i: u32,
    j: u32,
}

impl SymbolSpec {
    fn validate(&self, field: &Field) -> Result<(), OracleError> {
        if self.e < 2 || field.p().is_multiple_of(self.e as u64) || self.q.is_multiple_of(self.e as u64) {
            return Err(OracleError::BadMode(format!("e = {} must be at least 2 and prime to q = {}", self.e, self.q)));
        }
        if (self.xi as usize) >= field.order() || field.mult_order(self.xi) != Some(self.e as u64) {
            return Err(OracleError::NotPrimitive { xi: self.xi, e: self.e });
        }
        for p in [self.a, self.b] {
            if let SymbolParam::Unit(c) = p {
                if c == 0 || c as usize >= field.order() {
                    return Err(OracleError::BadMode(format!("unit {c} is not a nonzero field element")));
                }
            }
        }
        match (self.a, self.b) {
            (SymbolParam::Unit(_), SymbolParam::Unit(_)) => {
                Err(OracleError::BadMode("a and b cannot both be units".into()))
            }
            (a, b) if a == b => Err(OracleError::BadMode("a and b must be distinct parameters".into())),
            _ => Ok(()),
        }
    }

    /// Weight of `m` split as (x-adic valuation, everything else).
    fn weight_parts(&self, m: &SymbolMonomial) -> (usize, usize) {
        let e = self.e as usize;
        let mut val_x = 0;
        let mut other = 0;
        if self.a.is_param() {
            val_x += m.i as usize;
        }
        if self.b.is_param() {
            other += m.j as usize;
        }
        for (param, power) in [(SymbolParam::U, m.alpha), (SymbolParam::V, m.beta)] {
            if self.a == param {
                val_x += e * power;
            } else if self.b == param {
                other += e * power;
            } else {
                other += power;
            }
        }
        (val_x, other)
    }

    fn mul(&self, f: &Field, m: &SymbolMonomial, n: &SymbolMonomial) -> (u8, SymbolMonomial) {
        let e = self.e;
        let mut coeff = f.pow(self.xi, (m.j * n.i) as u64);
        let mut out = SymbolMonomial { alpha: m.alpha + n.alpha, beta: m.beta + n.beta, i: m.i + n.i, j: m.j + n.j };
        let mut reduce = |power: &mut u32, param: SymbolParam, out_alpha: &mut usize, out_beta: &mut usize| {
            if *power >= e {
                *power -= e;
                match param {
                    SymbolParam::U => *out_alpha += 1,
                    SymbolParam::V => *out_beta += 1,
                    SymbolParam::Unit(c) => coeff = f.mul(coeff, c),
                }
            }
        };
        let (mut alpha, mut beta) = (out.alpha, out.beta);
        reduce(&mut out.i, self.a, &mut alpha, &mut beta);
        reduce(&mut out.j, self.b, &mut alpha, &mut beta);
        out.alpha = alpha;
        out.beta = beta;
        (coeff, out)
    }
}

/// The truncation of `(a, b)_xi` keeping weights below `window`, with
/// slice element `x`.
pub fn build_symbol(spec: SymbolSpec, window: usize) -> Result<FiniteAlgebra, OracleError> {
    build_delta_l(spec, 1, window)
}

/// The truncation of `Delta_l(x)` for `Delta = (a, b)_xi`: `l x l`
/// matrices over `Delta` whose strictly lower entries lie in `x Delta`.
///
/// `E_rc m` gets weight `(c - r) + l * val_x(m) + other(m)`, so the slice
/// element `x~ = sum E_{r,r+1} + E_{l-1,0} x` has weight 1 and
/// `x~^l = x`.
pub fn build_delta_l(spec: SymbolSpec, l: usize, window: usize) -> Result<FiniteAlgebra, OracleError> {
    let field = Field::new(spec.q)?;
    spec.validate(&field)?;
    if l == 0 {
        return Err(OracleError::BadMode("l must be positive".into()));
    }
    if l > 1 && !spec.a.is_param() {
        return Err(OracleError::BadMode("Delta_l(x) needs x in the radical".into()));
    }
    let e = spec.e;
    let weight_of = |r: usize, c: usize, m: &SymbolMonomial| -> Option<usize> {
        let (val_x, other) = spec.weight_parts(m);
        if r > c && val_x == 0 {
            return None;
        }
        Some(c + l * val_x + other - r)
    };
    let mut basis: Vec<(usize, usize, SymbolMonomial)> = Vec::new();
    for r in 0..l {
        for c in 0..l {
            for alpha in 0..window {
                for beta in 0..window {
                    for i in 0..e {
                        for j in 0..e {
                            let m = SymbolMonomial { alpha, beta, i, j };
                            if let Some(w) = weight_of(r, c, &m) {
                                if w < window {
                                    basis.push((r, c, m));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    basis.sort_by_key(|&(r, c, m)| (weight_of(r, c, &m), r, c, m));
    let index: BTreeMap<(usize, usize, SymbolMonomial), usize> =
        basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let weights: Vec<usize> = basis.iter().map(|(r, c, m)| weight_of(*r, *c, m).unwrap()).collect();
    let dim = basis.len();
    let mut table = vec![Vec::new(); dim * dim];
    for (s, &(r, c, m)) in basis.iter().enumerate() {
        for (t, &(r2, c2, m2)) in basis.iter().enumerate() {
            if c != r2 {
                continue;
            }
            let (coeff, prod) = spec.mul(&field, &m, &m2);
            if let Some(&k) = index.get(&(r, c2, prod)) {
                table[s * dim + t].push((k, coeff));
            }
        }
    }
    let one = SymbolMonomial { alpha: 0, beta: 0, i: 0, j: 0 };
    let vec_of = |terms: &[(usize, usize, SymbolMonomial)]| -> Option<Vector> {
        let mut v = vec![0u8; dim];
        for t in terms {
            v[*index.get(t)?] = 1;
        }
        Some(v)
    };
    let unit = vec_of(&(0..l).map(|r| (r, r, one)).collect::<Vec<_>>()).unwrap();
    let x = SymbolMonomial { i: 1, ..one };
    let atoms =
        [x, SymbolMonomial { j: 1, ..one }, SymbolMonomial { alpha: 1, ..one }, SymbolMonomial { beta: 1, ..one }];
    let mut generators = Vec::new();
    for r in 0..l {
        for c in 0..l {
            let mut cands = vec![if r > c { (r, c, x) } else { (r, c, one) }];
            if r == c {
                cands.extend(atoms.iter().map(|&m| (r, r, m)));
            }
            generators.extend(cands.into_iter().filter_map(|t| vec_of(&[t])));
        }
    }
    let mut slice_terms: Vec<_> = (0..l.saturating_sub(1)).map(|r| (r, r + 1, one)).collect();
    slice_terms.push((l - 1, 0, x));
    let slice = vec_of(&slice_terms);
    let name = format!("Delta_{l}(({:?},{:?})_{}) over F_{}", spec.a, spec.b, spec.xi, spec.q);
    FiniteAlgebra::new(field, AlgebraData { name, weights, window, table, unit, generators, slice })
}

/// `F_q[x, y] / m^window` with slice element `y`.
pub fn commutative_truncation(q: u64, window: usize) -> Result<FiniteAlgebra, OracleError> {
    let field = Field::new(q)?;
    let mut basis: Vec<(usize, usize)> = (0..window).flat_map(|d| (0..=d).map(move |j| (d - j, j))).collect();
    basis.sort_by_key(|&(i, j)| (i + j, j));
    let index: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let dim = basis.len();
    let mut table = vec![Vec::new(); dim * dim];
    for (s, &(i, j)) in basis.iter().enumerate() {
        for (t, &(i2, j2)) in basis.iter().enumerate() {
            if let Some(&k) = index.get(&(i + i2, j + j2)) {
                table[s * dim + t].push((k, 1));
            }
        }
    }
    let pick = |m: (usize, usize)| index.get(&m).map(|&k| unit_vector(dim, k));
    let unit = pick((0, 0)).expect("window is at least 1");
    let generators = [(1, 0), (0, 1)].into_iter().filter_map(pick).collect();
    let slice = pick((0, 1));
    FiniteAlgebra::new(
        field,
        AlgebraData {
            name: format!("F_{q}[x,y]/m^{window}"),
            weights: basis.iter().map(|&(i, j)| i + j).collect(),
            window,
            table,
            unit,
            generators,
            slice,
        },
    )
}

/// Direct product `A x B` of two algebras over the same field with the same
/// window; the slice element is the pair of slice elements when both exist.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, OracleError> {
    if a.field.order() != b.field.order() || a.window != b.window {
        return Err(OracleError::Malformed("product factors need the same field and window".into()));
    }
    let (da, db) = (a.dim, b.dim);
    let dim = da + db;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            table[i * dim + j] = a.table[i * da + j].clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[(da + i) * dim + da + j] = b.table[i * db + j].iter().map(|&(k, c)| (da + k, c)).collect();
        }
    }
    let left = |v: &Vector| -> Vector { v.iter().copied().chain(std::iter::repeat_n(0, db)).collect() };
    let right = |v: &Vector| -> Vector { std::iter::repeat_n(0, da).chain(v.iter().copied()).collect() };
    let unit: Vector = a.unit.iter().chain(&b.unit).copied().collect();
    let mut generators: Vec<Vector> = vec![left(&a.unit), right(&b.unit)];
    generators.extend(a.generators.iter().map(left));
    generators.extend(b.generators.iter().map(right));
    let slice = match (&a.slice, &b.slice) {
        (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
        _ => None,
    };
    FiniteAlgebra::new(
        a.field.clone(),
        AlgebraData {
            name: format!("{} x {}", a.name, b.name),
            weights: a.weights.iter().chain(&b.weights).copied().collect(),
            window: a.window,
            table,
            unit,
            generators,
            slice,
        },
    )
}

/// `a v` for every basis element `a`, as maps on the regular module.
pub fn basis_actions(alg: &FiniteAlgebra) -> Vec<Matrix> {
    (0..alg.dim()).map(|i| alg.left_mul(&alg.basis(i))).collect()
}

/// Convenience: `map(v)` on the regular module.
pub fn act(alg: &FiniteAlgebra, map: &Matrix, v: &[u8]) -> Vector {
    apply(alg.field(), map, v, alg.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternion(window: usize) -> FiniteAlgebra {
        let f3 = Field::new(3).unwrap();
        let spec = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::V };
        build_symbol(spec, window).unwrap()
    }

    #[test]
    fn commutative_truncation_shape() {
        let a = commutative_truncation(2, 4).unwrap();
        assert_eq!(a.dim(), 10);
        assert_eq!(a.simples().len(), 1);
        assert_eq!(a.simples()[0].dim, 1);
        assert!(a.slice().is_some());
    }

    #[test]
    fn quaternion_relations() {
        let a = quaternion(5);
        let f = a.field();
        let gens = a.generators();
        let x = a.slice().unwrap().clone();
        let weight1: Vec<&Vector> = gens.iter().filter(|g| a.weight_of(g) == Some(1)).collect();
        let y = weight1.iter().find(|g| ***g != x).map(|g| (*g).clone()).unwrap();
        let u = a.mul(&x, &x);
        let v = a.mul(&y, &y);
        assert_eq!(a.weight_of(&u), Some(2));
        assert_eq!(a.weight_of(&v), Some(2));
        let yx = a.mul(&y, &x);
        let xy = a.mul(&x, &y);
        let minus_xy: Vector = xy.iter().map(|&c| f.neg(c)).collect();
        assert_eq!(yx, minus_xy);
        // u and v are central.
        for g in [&x, &y] {
            assert_eq!(a.mul(&u, g), a.mul(g, &u));
            assert_eq!(a.mul(&v, g), a.mul(g, &v));
        }
        assert_eq!(a.simples().len(), 1);
    }

    #[test]
    fn delta_two_slice_power_is_x() {
        let f3 = Field::new(3).unwrap();
        let spec = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::V };
        let d2 = build_delta_l(spec, 2, 5).unwrap();
        let d1 = build_symbol(spec, 5).unwrap();
        let xt = d2.slice().unwrap().clone();
        let sq = d2.mul(&xt, &xt);
        // x~^2 = diag(x, x): weight 2 with one entry per diagonal position.
        assert_eq!(d2.weight_of(&sq), Some(2));
        assert_eq!(sq.iter().filter(|&&c| c != 0).count(), 2);
        assert_eq!(d2.simples().len(), 2);
        assert_eq!(d1.simples().len(), 1);
        // x~ E_00 = E_10 x~ style permutation: x~ conjugates the diagonal
        // idempotents into each other.
        let e0 = d2.simples()[0].idempotent.clone();
        let e1 = d2.simples()[1].idempotent.clone();
        assert_eq!(d2.mul(&xt, &e0), d2.mul(&e1, &xt));
    }

    #[test]
    fn unit_b_splits_residue_ring() {
        let f3 = Field::new(3).unwrap();
        let split = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::Unit(1) };
        let a = build_symbol(split, 3).unwrap();
        assert_eq!(a.simples().len(), 2);
        assert!(a.simples().iter().all(|s| s.dim == 1));
        let inert = SymbolSpec { b: SymbolParam::Unit(2), ..split };
        let b = build_symbol(inert, 3).unwrap();
        assert_eq!(b.simples().len(), 1);
        assert_eq!(b.simples()[0].dim, 2);
    }

    #[test]
    fn rejects_bad_symbols() {
        let f3 = Field::new(3).unwrap();
        let good = SymbolSpec { q: 3, e: 2, xi: f3.from_int(-1), a: SymbolParam::U, b: SymbolParam::V };
        assert!(matches!(build_symbol(SymbolSpec { xi: 1, ..good }, 3), Err(OracleError::NotPrimitive { .. })));
        assert!(matches!(build_symbol(SymbolSpec { b: SymbolParam::U, ..good }, 3), Err(OracleError::BadMode(_))));
        assert!(build_symbol(SymbolSpec { q: 2, xi: 1, ..good }, 3).is_err());
    }

    #[test]
    fn product_of_planes() {
        let a = commutative_truncation(2, 3).unwrap();
        let p = product(&a, &a).unwrap();
        assert_eq!(p.dim(), 12);
        assert_eq!(p.simples().len(), 2);
        assert!(p.slice().is_some());
    }
}
