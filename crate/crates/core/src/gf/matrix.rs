use std::fmt;

use super::field::{Fe, FiniteField};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
    field: FiniteField,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl FieldMatrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &FiniteField, rows: &[Vec<Fe>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| x % field.q()));
        }
        FieldMatrix { rows: r, cols: c, data, field: field.clone() }
    }

    /// Builds a `rows × cols` matrix whose columns are the given vectors.
    pub fn from_columns(field: &FiniteField, rows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn from_fn(field: &FiniteField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldMatrix {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: Fe) -> FieldMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FieldMatrix {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() }
    }

    /// 2×2 block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &FieldMatrix, b: &FieldMatrix, c: &FieldMatrix, d: &FieldMatrix) -> FieldMatrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
        let f = &a.field;
        Self::block2(a, &Self::zeros(f, a.rows, b.cols), &Self::zeros(f, b.rows, a.cols), b)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(x, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..m.cols {
                    let x = f.add(m.get(i, j), f.mul(nf, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve_right(&self, b: &[Fe]) -> Result<Option<Vec<Fe>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&FieldMatrix::from_columns(&self.field, self.rows, &[b.to_vec()]));
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Indices of a maximal set of linearly independent columns, chosen greedily from the left.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space, taken from the columns themselves.
    pub fn column_space_basis(&self) -> Vec<Vec<Fe>> {
        self.pivot_columns().into_iter().map(|j| self.column(j)).collect()
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let (m, pivots) = self.hstack(&Self::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(m.submatrix(&rows, &cols))
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(field: &FiniteField, len: usize, vecs: &[Vec<Fe>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    FieldMatrix::from_columns(field, len, vecs).rank()
}

/// Extends an independent list `base` by vectors from `candidates` until `candidates` is spanned;
/// returns only the added vectors.
pub fn extend_to_span(field: &FiniteField, len: usize, base: &[Vec<Fe>], candidates: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut current: Vec<Vec<Fe>> = base.to_vec();
    let mut rank = rank_of_vectors(field, len, &current);
    let mut added = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = rank_of_vectors(field, len, &current);
        if r > rank {
            rank = r;
            added.push(c.clone());
        } else {
            current.pop();
        }
    }
    added
}

/// Iterator over all linear combinations of a basis, in lexicographic order of coefficient tuples.
pub struct SpanIter {
    field: FiniteField,
    basis: Vec<Vec<Fe>>,
    len: usize,
    coeffs: Vec<Fe>,
    done: bool,
}

impl Iterator for SpanIter {
    type Item = Vec<Fe>;

    fn next(&mut self) -> Option<Vec<Fe>> {
        if self.done {
            return None;
        }
        let f = &self.field;
        let mut v = vec![0; self.len];
        for (c, b) in self.coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(*c, y));
                }
            }
        }
        // advance the last coordinate fastest
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < f.q() {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(v)
    }
}

/// All `q^d` linear combinations of `basis` (vectors of length `len`), each exactly once.
pub fn enumerate_subspace(field: &FiniteField, len: usize, basis: &[Vec<Fe>]) -> SpanIter {
    SpanIter { field: field.clone(), basis: basis.to_vec(), len, coeffs: vec![0; basis.len()], done: false }
}

/// Number of `d`-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(q: u64, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every `d`-dimensional subspace of F_q^n, given as a `d × n` matrix in reduced row echelon form.
pub fn all_subspaces(field: &FiniteField, n: usize, d: usize) -> Vec<FieldMatrix> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // free positions: (row r, column c) with c > pivots[r] and c not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut vals = vec![0 as Fe; free.len()];
        loop {
            let mut m = FieldMatrix::zeros(field, d, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            for (&(r, c), &x) in free.iter().zip(&vals) {
                m.set(r, c, x);
            }
            out.push(m);
            let mut i = vals.len();
            let mut carry = true;
            while carry && i > 0 {
                i -= 1;
                vals[i] += 1;
                if vals[i] < field.q() {
                    carry = false;
                } else {
                    vals[i] = 0;
                }
            }
            if carry {
                break;
            }
        }
        // next pivot combination
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - d + i {
                pivots[i] += 1;
                for j in i + 1..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
