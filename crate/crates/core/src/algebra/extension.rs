use std::sync::Arc;

use super::{poly, FieldContext, GfMatrix};
use crate::{Error, Limits, Result};

/// GF(q^n) as an n-dimensional GF(q)-space with the polynomial basis
/// 1, x, ..., x^{n-1} modulo a fixed monic irreducible of degree n.
///
/// Elements are coefficient vectors of length n, lowest power first.
#[derive(Debug, Clone)]
pub struct ExtensionRep {
    base: Arc<FieldContext>,
    degree: usize,
    modulus: Vec<u32>,
}

impl ExtensionRep {
    pub fn new(base: Arc<FieldContext>, degree: usize, limits: &Limits) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parameter("extension degree must be positive".into()));
        }
        let size = (base.order() as u128).checked_pow(degree as u32);
        if size.is_none_or(|s| s > limits.max_extension_size as u128) {
            return Err(Error::TooLarge {
                what: "extension field",
                size: format!("{}^{}", base.order(), degree),
                limit: limits.max_extension_size.to_string(),
            });
        }
        let modulus = poly::smallest_irreducible(&base, degree);
        Ok(ExtensionRep { base, degree, modulus })
    }

    pub fn base(&self) -> &Arc<FieldContext> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.base.order().pow(self.degree as u32)
    }

    pub fn one(&self) -> Vec<u32> {
        let mut e = vec![0; self.degree];
        e[0] = 1;
        e
    }

    /// The element whose coordinates are the base-q digits of `index`.
    pub fn element(&self, mut index: u64) -> Vec<u32> {
        let q = self.base.order();
        (0..self.degree)
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut prod = poly::mul_mod(a, b, &self.modulus, &self.base);
        prod.resize(self.degree, 0);
        prod
    }

    /// Matrix of `y -> alpha * y` acting on row vectors: row i holds the
    /// coordinates of `alpha * x^i`, so `coords(y) * M = coords(alpha * y)`.
    pub fn mult_matrix(&self, alpha: &[u32]) -> GfMatrix {
        assert_eq!(alpha.len(), self.degree, "element has wrong length");
        let mut data = Vec::with_capacity(self.degree * self.degree);
        let mut power = self.one();
        let mut x = vec![0; self.degree];
        if self.degree > 1 {
            x[1] = 1;
        } else {
            // in GF(q)/GF(q) the basis is {1} and the loop below runs once
            x[0] = 1;
        }
        for _ in 0..self.degree {
            data.extend(self.mul(alpha, &power));
            power = self.mul(&power, &x);
        }
        GfMatrix::new(self.degree, self.degree, data)
    }
}
