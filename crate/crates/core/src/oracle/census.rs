//! Point-level censuses: length-`n` subschemes of the projective plane
//! and finite-index ideals of `Z[x]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::commutative_truncation;
use super::field::Field;
use super::ideals::count_ideals_algebra;
use super::OracleError;

type Point = [u8; 3];

/// Points of `P^2(F)` with the first nonzero coordinate scaled to 1.
fn projective_points(f: &Field) -> Vec<Point> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            out.push([1, a, b]);
        }
    }
    for b in f.elements() {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

fn normalise(f: &Field, p: Point) -> Point {
    let lead = p.iter().copied().find(|&c| c != 0).expect("projective point");
    let inv = f.inv(lead);
    p.map(|c| f.mul(inv, c))
}

/// Counts of `P^2(F_q)` points, degree-2 closed points, and length-2
/// schemes supported at one rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneCensus {
    pub rational: u64,
    pub degree_two: u64,
    pub tangent: u64,
}

impl PlaneCensus {
    /// Length-2 subschemes: pairs of rational points, degree-2 points and
    /// tangent data at rational points.
    pub fn length_two(&self) -> u64 {
        self.rational * (self.rational - 1) / 2 + self.degree_two + self.rational * self.tangent
    }
}

pub fn plane_census(q: u64) -> Result<PlaneCensus, OracleError> {
    let fq = Field::new(q)?;
    let fq2 = Field::new(q * q)?;
    let rational = projective_points(&fq).len() as u64;
    // Frobenius orbits of P^2(F_{q^2}) points not defined over F_q.
    let mut seen = BTreeSet::new();
    let mut degree_two = 0;
    for p in projective_points(&fq2) {
        if p.iter().all(|&c| fq2.in_subfield(c, fq.k())) || seen.contains(&p) {
            continue;
        }
        let mut orbit = p;
        loop {
            seen.insert(orbit);
            orbit = normalise(&fq2, orbit.map(|c| fq2.pow(c, q)));
            if orbit == p {
                break;
            }
        }
        degree_two += 1;
    }
    // Length-2 schemes at a point: colength-2 ideals of F_q[[x, y]].
    let local = commutative_truncation(q, 3)?;
    let tangent = count_ideals_algebra(&local, 2)?.count(2);
    Ok(PlaneCensus { rational, degree_two, tangent })
}

/// Number of length-`n` closed subschemes of `P^2` over `F_q`, `n <= 2`.
pub fn subscheme_census_p2(q: u64, n: usize) -> Result<u64, OracleError> {
    if q > 7 {
        return Err(OracleError::BoundsExceeded(format!("q = {q} needs F_(q^2) beyond the table limit")));
    }
    let c = plane_census(q)?;
    match n {
        0 => Ok(1),
        1 => Ok(c.rational),
        2 => Ok(c.length_two()),
        _ => Err(OracleError::BoundsExceeded(format!("subscheme census needs n <= 2, got {n}"))),
    }
}

/// Coefficients (constant first) of the unique polynomial of degree below
/// `points.len()` through the given values.
pub fn interpolate(points: &[(i64, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (k, c) in basis.into_iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// The length-2 count as a polynomial in `q`, interpolated from the census
/// at `q = 2, 3, 4, 5, 7`.
pub fn length_two_polynomial() -> Result<Vec<BigRational>, OracleError> {
    let points = [2u64, 3, 4, 5, 7]
        .iter()
        .map(|&q| Ok((q as i64, BigInt::from(subscheme_census_p2(q, 2)?))))
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(interpolate(&points))
}

/// Ideals of `Z[x]` of index `n`, `n <= 7`.
///
/// `Z[x]/I` is spanned by `1, x, ..., x^(D-1)` with `D = floor(log2 n)`,
/// since each new power at least doubles the order. So `I` contains `n` and
/// a monic `f` of degree `D`, and `I / (n, f)` is an index-`n` subgroup of
/// `(Z/n)^D` stable under multiplication by `x`. Ideals are identified by
/// their elements of degree at most `D`, which determine them.
pub fn count_ideals_integer_poly(n: u64) -> Result<u64, OracleError> {
    if n == 0 || n > 7 {
        return Err(OracleError::BoundsExceeded(format!("integer polynomial census needs 1 <= n <= 7, got {n}")));
    }
    if n == 1 {
        return Ok(1);
    }
    let d = (63 - n.leading_zeros()) as usize;
    let elements: Vec<Vec<u64>> = (0..n.pow(d as u32))
        .map(|mut c| {
            (0..d)
                .map(|_| {
                    let r = c % n;
                    c /= n;
                    r
                })
                .collect()
        })
        .collect();
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| (x + y) % n).collect() };
    let generated = |gens: &[&Vec<u64>]| -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::from([vec![0; d]]);
        let mut frontier = vec![vec![0; d]];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = add(&v, g);
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        set
    };
    let target = n.pow(d as u32 - 1) as usize;
    let mut ideals: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::new();
    for f in &elements {
        // x * (a_0, ..., a_{d-1}) modulo x^d + f_{d-1} x^{d-1} + ... + f_0
        let times_x = |a: &[u64]| -> Vec<u64> {
            let top = a[d - 1];
            (0..d)
                .map(|i| {
                    let shifted = if i == 0 { 0 } else { a[i - 1] };
                    (shifted + (n - top) * f[i] % n) % n
                })
                .collect()
        };
        let mut subgroups: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::new();
        for g1 in &elements {
            for g2 in &elements {
                let h = generated(&[g1, g2]);
                if h.len() == target && h.iter().all(|v| h.contains(&times_x(v))) {
                    subgroups.insert(h);
                }
            }
        }
        for h in subgroups {
            // Degree <= d elements: k f + h with f monic of degree d.
            let key: BTreeSet<Vec<u64>> = (0..n)
                .flat_map(|k| {
                    h.iter().map(move |v| {
                        let mut poly: Vec<u64> = v.iter().zip(f).map(|(a, c)| (a + k * c) % n).collect();
                        poly.push(k);
                        poly
                    })
                })
                .collect();
            ideals.insert(key);
        }
    }
    Ok(ideals.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_counts() {
        assert_eq!(subscheme_census_p2(2, 1).unwrap(), 7);
        let c2 = plane_census(2).unwrap();
        assert_eq!(c2, PlaneCensus { rational: 7, degree_two: 7, tangent: 3 });
        assert_eq!(c2.length_two(), 49);
        let c3 = plane_census(3).unwrap();
        assert_eq!((c3.rational, c3.degree_two, c3.tangent), (13, 39, 4));
        assert_eq!(c3.length_two(), 169);
        assert!(subscheme_census_p2(2, 3).is_err());
    }

    #[test]
    fn interpolated_polynomial() {
        let poly = length_two_polynomial().unwrap();
        let expect: Vec<BigRational> = [1, 2, 3, 2, 1].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        assert_eq!(poly, expect);
    }

    #[test]
    fn integer_polynomial_ideals() {
        let counts: Vec<u64> = (1..=7).map(|n| count_ideals_integer_poly(n).unwrap()).collect();
        assert_eq!(counts[0], 1);
        for p in [2u64, 3, 5, 7] {
            assert_eq!(counts[p as usize - 1], p);
        }
        assert!(count_ideals_integer_poly(8).is_err());
    }
}
