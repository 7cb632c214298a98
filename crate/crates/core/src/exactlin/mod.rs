//! Exact linear algebra over the rationals.
//!
//! Dense matrices are row-reduced with fraction-free (Bareiss style)
//! Gauss-Jordan elimination on integer rows; the large, sparse constraint
//! systems assembled by [`crate::gkm`] go through [`SparseEchelon`].
//! Either way the reduced row echelon form is unique, so every result here is
//! identical to what plain Gauss-Jordan over Q would produce.

mod sparse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{shape, Result};

pub use sparse::{dense_from_sparse, sparse_from_dense, SparseEchelon, SparseVec};

pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix with rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from explicit rows; `cols` fixes the width when there
    /// are no rows at all.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(MatrixQ {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]], cols: usize) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixQ{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales a rational row by the lcm of its denominators, giving integers.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Reduced row echelon form with its pivot columns; zero rows are dropped.
///
/// Elimination is fraction-free: rows are cleared to integers and every
/// update `(p * a_ij - a_ic * a_rj) / p_prev` divides exactly.
pub fn rref(m: &MatrixQ) -> (MatrixQ, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| integer_row(m.row(i))).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c].clone();
            for j in 0..cols {
                let num = &piv * &row[j] - &f * &pivot_row[j];
                debug_assert!(num.is_multiple_of(&prev), "inexact fraction-free step");
                row[j] = num / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let mut data = Vec::with_capacity(r * cols);
    for (k, &c) in pivots.iter().enumerate() {
        let lead = a[k][c].clone();
        data.extend(
            a[k].iter()
                .map(|x| Rational::new(x.clone(), lead.clone())),
        );
    }
    (
        MatrixQ {
            rows: r,
            cols,
            data,
        },
        pivots,
    )
}

/// Basis of the right null space in reduced row echelon form.
pub fn kernel_basis(m: &MatrixQ) -> MatrixQ {
    let (red, pivots) = rref(m);
    kernel_from_rref(&red, &pivots)
}

pub(crate) fn kernel_from_rref(red: &MatrixQ, pivots: &[usize]) -> MatrixQ {
    let cols = red.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(k, f);
        }
        vecs.push(v);
    }
    let basis = MatrixQ::from_rows(vecs, cols).expect("uniform row length");
    rref(&basis).0
}

/// A rational subspace of Q^n, stored as the rref of a spanning set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceQ {
    ambient_dim: usize,
    basis: MatrixQ,
    pivots: Vec<usize>,
}

impl SubspaceQ {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceQ {
            ambient_dim,
            basis: MatrixQ::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceQ {
            ambient_dim,
            basis: MatrixQ::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Canonical basis rows (reduced row echelon form).
    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        // In rref the coordinate along basis row k is the entry at its pivot.
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rational::zero(); self.ambient_dim];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    recon[j] += c * b;
                }
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &SubspaceQ) -> Result<bool> {
        check_ambient(self, other)?;
        Ok((0..other.dim()).all(|k| self.contains_vector(other.basis.row(k))))
    }
}

fn check_ambient(a: &SubspaceQ, b: &SubspaceQ) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(shape(format!(
            "ambient dimensions differ: {} vs {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(())
}

pub fn canonical_subspace(vectors: &[Vec<Rational>], ambient_dim: usize) -> Result<SubspaceQ> {
    if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
        return Err(shape(format!(
            "vector of length {} in ambient dimension {ambient_dim}",
            v.len()
        )));
    }
    let m = MatrixQ::from_rows(vectors.to_vec(), ambient_dim)?;
    let (basis, pivots) = rref(&m);
    Ok(SubspaceQ {
        ambient_dim,
        basis,
        pivots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceRelations {
    pub a_contains_b: bool,
    pub b_contains_a: bool,
    pub equal: bool,
    pub dim_a: usize,
    pub dim_b: usize,
}

pub fn subspace_relations(a: &SubspaceQ, b: &SubspaceQ) -> Result<SubspaceRelations> {
    check_ambient(a, b)?;
    let a_contains_b = a.contains(b)?;
    let b_contains_a = b.contains(a)?;
    Ok(SubspaceRelations {
        a_contains_b,
        b_contains_a,
        equal: a == b,
        dim_a: a.dim(),
        dim_b: b.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]], cols: usize) -> MatrixQ {
        MatrixQ::from_i64(rows, cols).unwrap()
    }

    #[test]
    fn rref_scales_rows() {
        let (r, p) = rref(&m(&[&[2, 0], &[0, 3]], 2));
        assert_eq!(r, MatrixQ::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let (r, p) = rref(&m(&[&[1, 1], &[2, 2]], 2));
        assert_eq!(r, m(&[&[1, 1]], 2));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_of_empty() {
        let (r, p) = rref(&MatrixQ::zeros(0, 0));
        assert!(r.is_empty());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_with_skipped_column() {
        let (r, p) = rref(&m(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[1, 1, 1, 1]], 4));
        assert_eq!(p, vec![0, 1, 3]);
        assert_eq!(r, m(&[&[1, 0, -1, 0], &[0, 1, 2, 0], &[0, 0, 0, 1]], 4));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&MatrixQ::zeros(1, 2)), MatrixQ::identity(2));
        assert_eq!(kernel_basis(&MatrixQ::identity(2)).rows(), 0);
        assert_eq!(kernel_basis(&m(&[&[1, 1]], 2)), m(&[&[1, -1]], 2));
    }

    #[test]
    fn canonical_subspace_examples() {
        let s = canonical_subspace(&[vec![q(2), q(0)], vec![q(0), q(3)]], 2).unwrap();
        assert_eq!(s.basis(), &MatrixQ::identity(2));
        let s = canonical_subspace(&[vec![q(1), q(1)], vec![q(2), q(2)]], 2).unwrap();
        assert_eq!(s.basis(), &m(&[&[1, 1]], 2));
        let s = canonical_subspace(&[], 3).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 3);
        assert!(canonical_subspace(&[vec![q(1)]], 2).is_err());
    }

    #[test]
    fn relations_examples() {
        let line = canonical_subspace(&[vec![q(1), q(0)]], 2).unwrap();
        let plane = SubspaceQ::full(2);
        let r = subspace_relations(&line, &plane).unwrap();
        assert!(r.b_contains_a && !r.a_contains_b && !r.equal);

        let a = canonical_subspace(&[vec![q(1), q(1)]], 2).unwrap();
        let b = canonical_subspace(&[vec![q(2), q(2)]], 2).unwrap();
        assert!(subspace_relations(&a, &b).unwrap().equal);

        let y = canonical_subspace(&[vec![q(0), q(1)]], 2).unwrap();
        let r = subspace_relations(&line, &y).unwrap();
        assert!(!r.a_contains_b && !r.b_contains_a);

        assert!(subspace_relations(&line, &SubspaceQ::full(3)).is_err());
    }

    #[test]
    fn coordinates_in_canonical_basis() {
        let s = canonical_subspace(&[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(0)]], 3).unwrap();
        assert_eq!(s.coordinates(&[q(2), q(3), q(2)]), Some(vec![q(2), q(3)]));
        assert_eq!(s.coordinates(&[q(1), q(0), q(0)]), None);
    }

    #[test]
    fn rational_entries_survive_integer_clearing() {
        let a = MatrixQ::new(
            2,
            2,
            vec![q_frac(1, 2), q_frac(1, 3), q_frac(2, 5), q_frac(-7, 4)],
        )
        .unwrap();
        let (r, p) = rref(&a);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, MatrixQ::identity(2));
    }
}
