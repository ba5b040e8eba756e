use super::FieldContext;

/// Dense row-major matrix over GF(q). Entries use the encoding of
/// [`FieldContext`]; operations take the context explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GfMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data has wrong length");
        GfMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GfMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from equally long rows. `cols` is only consulted when
    /// `rows` is empty.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        GfMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn vstack(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        GfMatrix::new(self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        GfMatrix::new(self.rows, self.cols + other.cols, data)
    }

    /// First `n` rows.
    pub fn top_rows(&self, n: usize) -> GfMatrix {
        GfMatrix::new(n, self.cols, self.data[..n * self.cols].to_vec())
    }

    /// Keeps the listed columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        GfMatrix::new(self.rows, cols.len(), data)
    }

    /// Inserts `left` zero columns before and `right` after.
    pub fn pad_columns(&self, left: usize, right: usize) -> GfMatrix {
        let cols = left + self.cols + right;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(std::iter::repeat_n(0, left));
            data.extend_from_slice(self.row(r));
            data.extend(std::iter::repeat_n(0, right));
        }
        GfMatrix::new(self.rows, cols, data)
    }

    pub fn mul(&self, other: &GfMatrix, f: &FieldContext) -> GfMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = GfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &GfMatrix, f: &FieldContext) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        GfMatrix::new(self.rows, self.cols, data)
    }

    pub fn add(&self, other: &GfMatrix, f: &FieldContext) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        GfMatrix::new(self.rows, self.cols, data)
    }

    /// Product of the matrix with a column vector.
    pub fn apply(&self, x: &[u32], f: &FieldContext) -> Vec<u32> {
        self.row_iter().map(|row| dot(row, x, f)).collect()
    }

    /// Reduced row echelon form and rank. Pivots are taken in the leftmost
    /// available column from the topmost candidate row; zero rows end up last.
    pub fn rref(&self, f: &FieldContext) -> (GfMatrix, usize) {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = f.inv(m.get(rank, col));
            for c in col..m.cols {
                let x = m.get(rank, c);
                m.set(rank, c, f.mul(x, inv));
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == rank || factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let x = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                    m.set(r, c, x);
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self, f: &FieldContext) -> usize {
        self.rref(f).1
    }

    /// Column indices of the leading ones of a matrix already in RREF.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.row_iter()
            .filter_map(|row| row.iter().position(|&x| x != 0))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[inline]
pub(crate) fn dot(a: &[u32], b: &[u32], f: &FieldContext) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_context;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let f = field_context(2).unwrap();
        let id = GfMatrix::identity(4);
        assert_eq!(id.rref(&f), (id.clone(), 4));

        let m = GfMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let (r, rank) = m.rref(&f);
        assert_eq!(r, GfMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]], 3));
        assert_eq!(rank, 2);

        let z = GfMatrix::zeros(3, 5);
        assert_eq!(z.rref(&f), (z.clone(), 0));
    }

    #[test]
    fn rref_over_gf3_normalizes_pivots() {
        let f = field_context(3).unwrap();
        let m = GfMatrix::from_rows(&[vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]], 3);
        let (r, rank) = m.rref(&f);
        assert_eq!(rank, 2);
        assert_eq!(
            r,
            GfMatrix::from_rows(&[vec![1, 2, 0], vec![0, 0, 1], vec![0, 0, 0]], 3)
        );
        assert_eq!(r.pivot_columns(), vec![0, 2]);
    }

    fn arb_matrix(q: u32) -> impl Strategy<Value = GfMatrix> {
        (1usize..6, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q, r * c).prop_map(move |d| GfMatrix::new(r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_counts_rows(m in arb_matrix(3)) {
            let f = field_context(3).unwrap();
            let (r, rank) = m.rref(&f);
            prop_assert_eq!(r.rref(&f), (r.clone(), rank));
            let nonzero = r.row_iter().filter(|row| row.iter().any(|&x| x != 0)).count();
            prop_assert_eq!(nonzero, rank);
        }

        #[test]
        fn rref_preserves_row_space(m in arb_matrix(4)) {
            let f = field_context(4).unwrap();
            let (r, rank) = m.rref(&f);
            prop_assert_eq!(m.vstack(&r).rank(&f), rank);
        }
    }
}
