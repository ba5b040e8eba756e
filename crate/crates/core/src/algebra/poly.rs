//! Dense univariate polynomials over a [`FieldContext`], coefficients stored
//! lowest degree first.

use super::FieldContext;

pub fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn mul(a: &[u32], b: &[u32], f: &FieldContext) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(a: &[u32], m: &[u32], f: &FieldContext) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = f.inv(m[dm]);
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mc) in m[..=dm].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
        }
        trim(&mut r);
    }
    r
}

pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], f: &FieldContext) -> Vec<u32> {
    rem(&mul(a, b, f), m, f)
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-q digits of `index` (digit i is the coefficient of x^i).
pub fn monic_from_index(mut index: u64, degree: usize, q: u64) -> Vec<u32> {
    let mut p = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        p.push((index % q) as u32);
        index /= q;
    }
    p.push(1);
    p
}

/// Irreducibility by trial division through every monic polynomial of degree
/// at most half the degree of `p`.
pub fn is_irreducible(p: &[u32], f: &FieldContext) -> bool {
    let Some(d) = degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let q = f.order();
    for dd in 1..=d / 2 {
        let count = q.pow(dd as u32);
        for idx in 0..count {
            let divisor = monic_from_index(idx, dd, q);
            if rem(p, &divisor, f).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of the given degree in the order of
/// [`monic_from_index`].
pub fn smallest_irreducible(f: &FieldContext, degree: usize) -> Vec<u32> {
    let q = f.order();
    (0..q.pow(degree as u32))
        .map(|idx| monic_from_index(idx, degree, q))
        .find(|p| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}
