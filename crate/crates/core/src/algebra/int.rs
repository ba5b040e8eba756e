use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// `base^exp` as an exact integer.
pub fn pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// The number of points of GF(q)^v, `(q^v - 1) / (q - 1)`.
pub fn gauss_number(q: u64, v: u32) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::Parameter(format!("field order q = {q} must be at least 2")));
    }
    // 1 + q + ... + q^{v-1}
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    let mut term = BigInt::one();
    for _ in 0..v {
        acc += &term;
        term *= &qb;
    }
    Ok(acc)
}

/// `[m;1]_q` for a possibly negative argument; `None` when `m < 0`.
pub fn gauss_signed(q: u64, m: i64) -> Option<BigInt> {
    if m < 0 {
        return None;
    }
    gauss_number(q, m as u32).ok()
}

pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}
