use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{MatrixQ, Rational};

/// Sparse vector: `(column, value)` pairs sorted by column, no explicit zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Incremental row echelon basis over Q.
///
/// Rows are kept with a leading 1 at their pivot column and no entries to the
/// left of it. Insertion reduces a new row against the stored pivots in
/// column order, so the rank is known after every insert; [`Self::into_rref`]
/// back-substitutes to the unique reduced form.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns `true` when it raised the rank.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.last().is_none_or(|(c, _)| *c < self.cols));
        self.reduce(&mut row, None);
        let Some((lead_col, lead)) = row.first().cloned() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
        }
        self.pivot_row.insert(lead_col, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Eliminates every entry of `row` that sits on a stored pivot column
    /// (other than `skip`).
    fn reduce(&self, row: &mut SparseVec, skip: Option<usize>) {
        let mut i = 0;
        while i < row.len() {
            let c = row[i].0;
            let hit = if Some(c) == skip {
                None
            } else {
                self.pivot_row.get(&c)
            };
            match hit {
                Some(&p) => {
                    let factor = row[i].1.clone();
                    *row = axpy(row, &self.rows[p], &factor);
                }
                None => i += 1,
            }
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref(mut self) -> (Vec<SparseVec>, Vec<usize>) {
        let pivots = self.pivots();
        for &c in pivots.iter().rev() {
            let idx = self.pivot_row[&c];
            let mut row = std::mem::take(&mut self.rows[idx]);
            self.reduce(&mut row, Some(c));
            self.rows[idx] = row;
        }
        let rows = pivots
            .iter()
            .map(|c| std::mem::take(&mut self.rows[self.pivot_row[c]]))
            .collect();
        (rows, pivots)
    }

    /// Basis of the null space of the inserted rows, in reduced row echelon
    /// form.
    pub fn kernel(self) -> Vec<SparseVec> {
        let cols = self.cols;
        let (rows, pivots) = self.into_rref();
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // Column f of the rref, gathered once per free column.
        let mut by_col: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
        for (k, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().skip(1) {
                by_col.entry(*c).or_default().push((pivots[k], v.clone()));
            }
        }
        let mut kernel = SparseEchelon::new(cols);
        for f in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v: SparseVec = by_col
                .remove(&f)
                .unwrap_or_default()
                .into_iter()
                .map(|(p, x)| (p, -x))
                .collect();
            v.push((f, Rational::one()));
            v.sort_by_key(|(c, _)| *c);
            kernel.insert(v);
        }
        kernel.into_rref().0
    }
}

/// `a - factor * b` for sorted sparse vectors.
fn axpy(a: &SparseVec, b: &SparseVec, factor: &Rational) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_dense(row: &[Rational]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

pub fn dense_from_sparse(rows: &[SparseVec], cols: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (c, v) in row {
            m.set(i, *c, v.clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{kernel_basis, q, rref};

    fn dense(rows: &[&[i64]], cols: usize) -> MatrixQ {
        MatrixQ::from_i64(rows, cols).unwrap()
    }

    fn sparse_rref(m: &MatrixQ) -> (MatrixQ, Vec<usize>) {
        let mut e = SparseEchelon::new(m.cols());
        for i in 0..m.rows() {
            e.insert(sparse_from_dense(m.row(i)));
        }
        let (rows, piv) = e.into_rref();
        (dense_from_sparse(&rows, m.cols()), piv)
    }

    #[test]
    fn matches_dense_rref() {
        let m = dense(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[1, 1, 1, 1], &[1, 3, 5, 2]], 4);
        assert_eq!(sparse_rref(&m), rref(&m));
    }

    #[test]
    fn insert_reports_rank_changes() {
        let mut e = SparseEchelon::new(3);
        assert!(e.insert(vec![(0, q(1)), (2, q(1))]));
        assert!(!e.insert(vec![(0, q(2)), (2, q(2))]));
        assert!(!e.insert(vec![]));
        assert!(e.insert(vec![(1, q(-3))]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_matches_dense() {
        let m = dense(&[&[1, 1, 0, 0], &[0, 0, 1, -1]], 4);
        let mut e = SparseEchelon::new(4);
        for i in 0..m.rows() {
            e.insert(sparse_from_dense(m.row(i)));
        }
        assert_eq!(dense_from_sparse(&e.kernel(), 4), kernel_basis(&m));
    }
}
