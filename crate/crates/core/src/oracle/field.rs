//! Small finite fields `F_{p^k}` as lookup tables.
//!
//! Elements are encoded as integers `0..q` in base `p` (the digits are the
//! coefficients of a polynomial in the generator). `0` and `1` are the
//! additive and multiplicative identities.

use super::OracleError;
use crate::arith::is_prime;

/// Largest field order supported by the table representation.
pub const MAX_ORDER: usize = 49;

#[derive(Clone, Debug)]
pub struct Field {
    p: u8,
    k: u8,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplies two residues modulo the monic polynomial with low
/// coefficients `modulus` (degree `modulus.len()`).
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len();
    let mut prod = vec![0; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        // t^k = -modulus(t)
        for (i, &m) in modulus.iter().enumerate() {
            prod[deg - k + i] = (prod[deg - k + i] + c * (p - m)) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl Field {
    /// The field with `q` elements; `q` must be a prime power at most
    /// [`MAX_ORDER`].
    pub fn new(q: u64) -> Result<Self, OracleError> {
        if q < 2 || q as usize > MAX_ORDER {
            return Err(OracleError::FieldUnsupported(q));
        }
        let (p, k) = (2..=q)
            .filter(|&p| is_prime(p) && q.is_multiple_of(p))
            .map(|p| {
                let mut k = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    k += 1;
                }
                (p, k, r)
            })
            .find(|&(_, _, r)| r == 1)
            .map(|(p, k, _)| (p as usize, k as usize))
            .ok_or(OracleError::FieldUnsupported(q))?;
        let q = q as usize;
        // Search monic polynomials of degree k for one whose residue ring
        // has no zero divisors.
        for code in 0..q {
            let modulus = digits(code, p, k);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            let mut mul = vec![0u8; q * q];
            let mut field = true;
            'outer: for a in 0..q {
                let da = digits(a, p, k);
                for b in 0..q {
                    let c = undigits(&poly_mul_mod(&da, &digits(b, p, k), &modulus, p), p);
                    if a != 0 && b != 0 && c == 0 {
                        field = false;
                        break 'outer;
                    }
                    mul[a * q + b] = c as u8;
                }
            }
            if !field {
                continue;
            }
            let mut add = vec![0u8; q * q];
            for a in 0..q {
                let da = digits(a, p, k);
                for b in 0..q {
                    let db = digits(b, p, k);
                    let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[a * q + b] = undigits(&s, p) as u8;
                }
            }
            let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
            let inv =
                (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 }).collect();
            return Ok(Field { p: p as u8, k: k as u8, q, add, mul, neg, inv });
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k as u32
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: u64) -> u8 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u8 {
        let r = n.rem_euclid(self.p as i64) as u8;
        let mut acc = 0;
        for _ in 0..r {
            acc = self.add(acc, 1);
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u8) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p as u64)
    }

    /// Whether `a` lies in the subfield with `p^j` elements.
    pub fn in_subfield(&self, a: u8, j: u32) -> bool {
        self.pow(a, (self.p as u64).pow(j)) == a
    }

    /// The smallest-coded primitive `e`-th root of unity, if any.
    pub fn primitive_root_of_unity(&self, e: u64) -> Option<u8> {
        (1..self.q as u8).find(|&a| self.mult_order(a) == Some(e))
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u8) -> bool {
        a != 0 && (1..self.q as u8).any(|b| self.mul(b, b) == a)
    }
}
