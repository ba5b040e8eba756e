//! Canonical subspaces of GF(q)^v and equidimensional sets of them.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::algebra::{FieldContext, GfMatrix};
use crate::{Error, Result};

/// A k-subspace of GF(q)^v, stored by its k x v generator in reduced row
/// echelon form. Two subspaces are equal iff their generators are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    generator: GfMatrix,
}

impl Subspace {
    /// Row space of `rows`, which must be linearly independent.
    pub fn canonicalize(rows: &GfMatrix, f: &FieldContext) -> Result<Subspace> {
        let (r, rank) = rows.rref(f);
        if rank != rows.rows() {
            return Err(Error::RankDeficient {
                expected: rows.rows(),
                rank,
            });
        }
        Ok(Subspace { generator: r })
    }

    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generator.cols()
    }

    /// True iff the functional `h` vanishes on every generator row.
    pub fn annihilated_by(&self, h: &[u32], f: &FieldContext) -> bool {
        self.generator
            .row_iter()
            .all(|row| crate::algebra::matrix_dot(row, h, f) == 0)
    }

    /// All points of the subspace, each as its normalized vector (first
    /// nonzero coordinate 1).
    pub fn points(&self, f: &FieldContext) -> Vec<Vec<u32>> {
        let k = self.dim();
        let v = self.ambient_dim();
        let q = f.order();
        let mut out = Vec::new();
        // coefficient vectors whose first nonzero entry is 1
        for lead in 0..k {
            let tail = q.pow((k - lead - 1) as u32);
            for t in 0..tail {
                let mut coeffs = vec![0u32; k];
                coeffs[lead] = 1;
                let mut x = t;
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = (x % q) as u32;
                    x /= q;
                }
                let mut point = vec![0u32; v];
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, &g) in self.generator.row(i).iter().enumerate() {
                        point[j] = f.add(point[j], f.mul(c, g));
                    }
                }
                // RREF with a leading coefficient 1 gives a normalized point
                out.push(point);
            }
        }
        out
    }
}

/// A set of distinct k-subspaces of GF(q)^v sharing q, v and k.
#[derive(Debug, Clone)]
pub struct SubspaceSet {
    field: Arc<FieldContext>,
    v: usize,
    k: usize,
    members: Vec<Subspace>,
}

impl PartialEq for SubspaceSet {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.v == other.v && self.k == other.k && self.members == other.members
    }
}

impl SubspaceSet {
    pub fn new(field: Arc<FieldContext>, v: usize, k: usize, members: Vec<Subspace>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            if m.ambient_dim() != v || m.dim() != k {
                return Err(Error::Dimension(format!(
                    "member {i} is a {}-subspace of a {}-space, expected {k} in {v}",
                    m.dim(),
                    m.ambient_dim()
                )));
            }
            if !seen.insert(m) {
                return Err(Error::Duplicate(i));
            }
        }
        Ok(SubspaceSet { field, v, k, members })
    }

    /// Canonicalizes each generator block and collects them.
    pub fn from_generators(field: Arc<FieldContext>, v: usize, k: usize, gens: &[GfMatrix]) -> Result<Self> {
        let members = gens
            .iter()
            .map(|g| {
                if g.rows() != k || g.cols() != v {
                    return Err(Error::Dimension(format!(
                        "generator is {}x{}, expected {k}x{v}",
                        g.rows(),
                        g.cols()
                    )));
                }
                Subspace::canonicalize(g, &field)
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceSet::new(field, v, k, members)
    }

    pub fn empty(field: Arc<FieldContext>, v: usize, k: usize) -> Self {
        SubspaceSet {
            field,
            v,
            k,
            members: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn ambient_dim(&self) -> usize {
        self.v
    }

    pub fn member_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    /// Indices of the first pair of members with nontrivial intersection.
    pub fn first_intersecting_pair(&self) -> Option<(usize, usize)> {
        let f = &self.field;
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                let stacked = self.members[i].generator.vstack(&self.members[j].generator);
                if stacked.rank(f) < 2 * self.k {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.first_intersecting_pair().is_none()
    }

    /// Errors with the offending pair unless the members are pairwise disjoint.
    pub fn require_disjoint(&self) -> Result<()> {
        match self.first_intersecting_pair() {
            Some((i, j)) => Err(Error::NotDisjoint(i, j)),
            None => Ok(()),
        }
    }

    /// Basis of the joint span of all members, in RREF.
    pub fn span_basis(&self) -> GfMatrix {
        let all = self
            .members
            .iter()
            .fold(GfMatrix::zeros(0, self.v), |acc, m| acc.vstack(&m.generator));
        let (r, rank) = all.rref(&self.field);
        r.top_rows(rank)
    }

    /// Re-expresses every member in coordinates of the joint span and returns
    /// the restricted set with its dimension.
    pub fn span_and_restrict(&self) -> (SubspaceSet, usize) {
        let basis = self.span_basis();
        let pivots = basis.pivot_columns();
        let dim = pivots.len();
        // for a vector in the row space of an RREF basis, its coordinates are
        // its entries at the pivot columns
        let members = self
            .members
            .iter()
            .map(|m| {
                Subspace::canonicalize(&m.generator.select_columns(&pivots), &self.field)
                    .expect("restriction of an independent generator stays independent")
            })
            .collect();
        let restricted = SubspaceSet {
            field: self.field.clone(),
            v: dim,
            k: self.k,
            members,
        };
        (restricted, dim)
    }

    /// Pads every member with `left` zero coordinates in front and `right`
    /// behind, embedding the set into GF(q)^{left+v+right}.
    pub fn embed(&self, left: usize, right: usize) -> SubspaceSet {
        let members = self
            .members
            .iter()
            .map(|m| Subspace {
                generator: m.generator.pad_columns(left, right),
            })
            .collect();
        SubspaceSet {
            field: self.field.clone(),
            v: left + self.v + right,
            k: self.k,
            members,
        }
    }

    /// How often each point is covered by the members.
    pub fn point_multiplicities(&self) -> HashMap<Vec<u32>, usize> {
        let mut cover = HashMap::new();
        for m in &self.members {
            for p in m.points(&self.field) {
                *cover.entry(p).or_insert(0) += 1;
            }
        }
        cover
    }
}
