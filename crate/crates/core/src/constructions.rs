//! Explicit q^r-divisible sets: Desarguesian spreads, lifted punctured MRD
//! codes and direct sums of those.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{gauss_number, pow, ExtensionRep, FieldContext, GfMatrix};
use crate::subspace::{Subspace, SubspaceSet};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionRecipe {
    Spread {
        q: u64,
        k: usize,
        s: usize,
    },
    LiftedMrd {
        q: u64,
        k: usize,
        r: usize,
    },
    DirectSum {
        left: Box<ConstructionRecipe>,
        right: Box<ConstructionRecipe>,
    },
}

impl ConstructionRecipe {
    pub fn build(&self, limits: &Limits) -> Result<SubspaceSet> {
        match *self {
            ConstructionRecipe::Spread { q, k, s } => spread(q, k, s, limits),
            ConstructionRecipe::LiftedMrd { q, k, r } => lifted_mrd(q, k, r, limits),
            ConstructionRecipe::DirectSum { ref left, ref right } => {
                direct_sum(&left.build(limits)?, &right.build(limits)?)
            }
        }
    }

    /// Number of members of the built set.
    pub fn cardinality(&self) -> BigInt {
        match *self {
            ConstructionRecipe::Spread { q, k, s } => {
                gauss_number(q, (s * k) as u32).unwrap() / gauss_number(q, k as u32).unwrap()
            }
            ConstructionRecipe::LiftedMrd { q, k, r } => pow(q, (k + r) as u32),
            ConstructionRecipe::DirectSum { ref left, ref right } => left.cardinality() + right.cardinality(),
        }
    }

    /// `copies` of `part` joined by direct sums, or `None` for zero copies.
    pub fn repeated(part: ConstructionRecipe, copies: usize) -> Option<ConstructionRecipe> {
        (0..copies).fold(None, |acc, _| {
            Some(match acc {
                None => part.clone(),
                Some(prev) => ConstructionRecipe::DirectSum {
                    left: Box::new(prev),
                    right: Box::new(part.clone()),
                },
            })
        })
    }
}

impl fmt::Display for ConstructionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionRecipe::Spread { q, k, s } => write!(f, "spread(q={q},k={k},s={s})"),
            ConstructionRecipe::LiftedMrd { q, k, r } => write!(f, "lifted_mrd(q={q},k={k},r={r})"),
            ConstructionRecipe::DirectSum { left, right } => write!(f, "{left} + {right}"),
        }
    }
}

fn base_field(q: u64, limits: &Limits) -> Result<Arc<FieldContext>> {
    Ok(Arc::new(FieldContext::new(q, limits)?))
}

fn check_points(q: u64, v: usize, limits: &Limits) -> Result<()> {
    let points = gauss_number(q, v as u32)?;
    if points > BigInt::from(limits.max_hyperplanes) {
        return Err(Error::TooLarge {
            what: "ambient space",
            size: format!("GF({q})^{v} with {points} points"),
            limit: limits.max_hyperplanes.to_string(),
        });
    }
    Ok(())
}

/// The k-spread of GF(q)^{sk} obtained from the points of the projective
/// space of dimension s-1 over GF(q^k).
pub fn spread(q: u64, k: usize, s: usize, limits: &Limits) -> Result<SubspaceSet> {
    if k < 1 || s < 2 {
        return Err(Error::Parameter(format!(
            "spread needs k >= 1 and s >= 2, got k = {k}, s = {s}"
        )));
    }
    let f = base_field(q, limits)?;
    check_points(q, s * k, limits)?;
    let ext = ExtensionRep::new(f.clone(), k, limits)?;
    let blocks: Vec<GfMatrix> = ext.elements().map(|b| ext.mult_matrix(&b)).collect();
    let size = blocks.len();
    let mut members = Vec::new();
    // homogeneous coordinates (beta_1, ..., beta_s) over GF(q^k) with the
    // first nonzero coordinate equal to 1 (element index 1)
    for lead in 0..s {
        let tails = size.pow((s - lead - 1) as u32);
        for t in 0..tails {
            let mut gen = GfMatrix::zeros(k, 0);
            for _ in 0..lead {
                gen = gen.hstack(&blocks[0]);
            }
            gen = gen.hstack(&blocks[1]);
            let mut x = t;
            for _ in lead + 1..s {
                gen = gen.hstack(&blocks[x % size]);
                x /= size;
            }
            members.push(Subspace::canonicalize(&gen, &f)?);
        }
    }
    SubspaceSet::new(f, s * k, k, members)
}

/// The q^{k+r} k-subspaces `rowspace(I_k | B(alpha))` of GF(q)^{2k+r}, where
/// `B(alpha)` is the top k rows of the multiplication matrix of alpha in
/// GF(q^{k+r}). They cover every point outside `x_1 = ... = x_k = 0` once.
pub fn lifted_mrd(q: u64, k: usize, r: usize, limits: &Limits) -> Result<SubspaceSet> {
    if k < 1 || r < 1 {
        return Err(Error::Parameter(format!(
            "lifted MRD needs k, r >= 1, got k = {k}, r = {r}"
        )));
    }
    let f = base_field(q, limits)?;
    let n = k + r;
    check_points(q, k + n, limits)?;
    let ext = ExtensionRep::new(f.clone(), n, limits)?;
    let id = GfMatrix::identity(k);
    let members = ext
        .elements()
        .map(|alpha| Subspace::canonicalize(&id.hstack(&ext.mult_matrix(&alpha).top_rows(k)), &f))
        .collect::<Result<Vec<_>>>()?;
    SubspaceSet::new(f, k + n, k, members)
}

/// Members of `s1` in the leading coordinates, members of `s2` in the
/// trailing ones. Both inputs are first restricted to their spans.
pub fn direct_sum(s1: &SubspaceSet, s2: &SubspaceSet) -> Result<SubspaceSet> {
    if s1.field() != s2.field() {
        return Err(Error::Incompatible(format!("field orders {} and {}", s1.q(), s2.q())));
    }
    if s1.member_dim() != s2.member_dim() {
        return Err(Error::Incompatible(format!(
            "member dimensions {} and {}",
            s1.member_dim(),
            s2.member_dim()
        )));
    }
    let (a, va) = s1.span_and_restrict();
    let (b, vb) = s2.span_and_restrict();
    let left = a.embed(0, vb);
    let right = b.embed(va, 0);
    let members = left.members().iter().chain(right.members()).cloned().collect();
    SubspaceSet::new(s1.field().clone(), va + vb, s1.member_dim(), members)
}
