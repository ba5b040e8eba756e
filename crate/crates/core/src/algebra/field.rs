use super::poly;
use crate::{Error, Limits, Result};

/// Arithmetic context for GF(q), q = p^e.
///
/// A field element is a `u32` whose base-p digits are its coefficient vector
/// over GF(p) in the polynomial basis (digit i is the coefficient of x^i).
/// The encoding is canonical, so equality of elements is equality of codes.
#[derive(Clone)]
pub struct FieldContext {
    q: u32,
    p: u32,
    e: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

/// Builds GF(q) with default limits.
pub fn field_context(q: u64) -> Result<FieldContext> {
    FieldContext::new(q, &Limits::default())
}

pub fn is_prime_power(q: u64) -> bool {
    factor_prime_power(q).is_some()
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FieldContext {
    pub fn new(q: u64, limits: &Limits) -> Result<Self> {
        let (p, e) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > limits.max_field_order {
            return Err(Error::FieldTooLarge {
                q,
                limit: limits.max_field_order,
            });
        }
        let prime = Self::prime(p as u32);
        if e == 1 {
            return Ok(prime);
        }
        let modulus = poly::smallest_irreducible(&prime, e as usize);
        Ok(Self::extension_of_prime(&prime, modulus))
    }

    fn prime(p: u32) -> Self {
        let n = p as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..p {
            for b in 0..p {
                add[(a * p + b) as usize] = (a + b) % p;
                mul[(a * p + b) as usize] = ((a as u64 * b as u64) % p as u64) as u32;
            }
        }
        Self::from_tables(p, p, 1, None, add, mul)
    }

    fn extension_of_prime(prime: &FieldContext, modulus: Vec<u32>) -> Self {
        let p = prime.q;
        let e = (modulus.len() - 1) as u32;
        let q = p.pow(e);
        let n = q as usize;
        let digits = |mut x: u32| {
            let mut d = Vec::with_capacity(e as usize);
            for _ in 0..e {
                d.push(x % p);
                x /= p;
            }
            d
        };
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
                let mut prod = poly::mul_mod(&da, &db, &modulus, prime);
                prod.resize(e as usize, 0);
                mul[(a * q + b) as usize] = encode(&prod);
            }
        }
        Self::from_tables(q, p, e, Some(modulus), add, mul)
    }

    fn from_tables(q: u32, p: u32, e: u32, modulus: Option<Vec<u32>>, add: Vec<u32>, mul: Vec<u32>) -> Self {
        let n = q as usize;
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        FieldContext {
            q,
            p,
            e,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn is_prime(&self) -> bool {
        self.e == 1
    }

    /// Defining polynomial over GF(p), lowest degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Coefficient vector over GF(p), lowest power first.
    pub fn coefficients(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Option<u32> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }
}
