//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<F::Row>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, nrows: usize, ncols: usize) -> Self {
        let rows = (0..nrows).map(|_| field.row_zeros(ncols)).collect();
        Matrix { field: field.clone(), ncols, rows }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let rows = (0..n).map(|i| field.row_unit(n, i)).collect();
        Matrix { field: field.clone(), ncols: n, rows }
    }

    pub fn from_rows(field: &F, ncols: usize, rows: Vec<F::Row>) -> Self {
        debug_assert!(rows.iter().all(|r| field.row_len(r) == ncols));
        Matrix { field: field.clone(), ncols, rows }
    }

    pub fn from_elems(field: &F, ncols: usize, entries: &[Vec<F::Elem>]) -> Self {
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                field.row_from_elems(r)
            })
            .collect();
        Matrix { field: field.clone(), ncols, rows }
    }

    /// Small-integer entries, reduced into the field.
    pub fn from_i64(field: &F, entries: &[&[i64]]) -> Self {
        let ncols = entries.first().map_or(0, |r| r.len());
        let e: Vec<Vec<F::Elem>> = entries.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_elems(field, ncols, &e)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, nrows: usize, cols: &[F::Row]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in field.row_nonzeros(c) {
                field.row_set(&mut m.rows[i], j, v);
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rows(&self) -> &[F::Row] {
        &self.rows
    }
    pub fn into_rows(self) -> Vec<F::Row> {
        self.rows
    }
    pub fn row(&self, i: usize) -> &F::Row {
        &self.rows[i]
    }
    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.field.row_get(&self.rows[i], j)
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.field.row_set(&mut self.rows[i], j, v)
    }
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| self.field.row_is_zero(r))
    }
    pub fn to_elems(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|r| self.field.row_to_elems(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(&self.field, self.ncols, &self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch");
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = f.row_zeros(other.ncols);
                for (k, a) in f.row_nonzeros(r) {
                    f.row_axpy(&mut out, &a, &other.rows[k]);
                }
                out
            })
            .collect();
        Matrix { field: f.clone(), ncols: other.ncols, rows }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &F::Row) -> F::Row {
        let f = &self.field;
        let mut out = f.row_zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            let d = f.row_dot(r, v);
            if !f.is_zero(&d) {
                f.row_set(&mut out, i, d);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form; pivot search takes the leftmost column and the
/// first nonzero row at or below the current one.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let f = m.field.clone();
    let mut rows = m.rows.clone();
    let pivots = rref_in_place(&f, &mut rows, m.ncols);
    let rank = pivots.len();
    Rref { matrix: Matrix { field: f, ncols: m.ncols, rows }, pivots, rank }
}

pub(crate) fn rref_in_place<F: Field>(f: &F, rows: &mut [F::Row], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut col = 0;
    while r < rows.len() && col < ncols {
        // leftmost column with a nonzero entry among rows r..
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if let Some(c) = f.row_first_nonzero(row, col) {
                if best.map_or(true, |(bc, _)| c < bc) {
                    best = Some((c, i));
                    if c == col {
                        break;
                    }
                }
            }
        }
        let Some((c, i)) = best else { break };
        rows.swap(r, i);
        let inv = f.inv(&f.row_get(&rows[r], c));
        f.row_scale(&mut rows[r], &inv);
        let (before, rest) = rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().unwrap();
        for other in before.iter_mut().chain(after.iter_mut()) {
            let a = f.row_get(other, c);
            if !f.is_zero(&a) {
                f.row_axpy_from(other, &f.neg(&a), prow, c);
            }
        }
        pivots.push(c);
        r += 1;
        col = c + 1;
    }
    pivots
}

/// Kernel vector attached to free column `free` of a reduced matrix.
pub(crate) fn kernel_vector<F: Field>(f: &F, rref_rows: &[F::Row], pivots: &[usize], ncols: usize, free: usize) -> F::Row {
    let mut v = f.row_unit(ncols, free);
    for (row, &p) in rref_rows.iter().zip(pivots) {
        let a = f.row_get(row, free);
        if !f.is_zero(&a) {
            f.row_set(&mut v, p, f.neg(&a));
        }
    }
    v
}

pub(crate) fn free_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols).filter(|&c| !is_pivot[c]).collect()
}

/// Rows form a basis of the right null space.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let r = rref(m);
    let f = &m.field;
    let rows = free_columns(&r.pivots, m.ncols).into_iter().map(|c| kernel_vector(f, &r.matrix.rows[..r.rank], &r.pivots, m.ncols, c)).collect();
    Matrix { field: f.clone(), ncols: m.ncols, rows }
}

/// Some x with a·x = b, or `None`.
pub fn solve<F: Field>(a: &Matrix<F>, b: &F::Row) -> Option<F::Row> {
    let f = &a.field;
    assert_eq!(f.row_len(b), a.nrows(), "right-hand side length");
    let n = a.ncols;
    let rows: Vec<F::Row> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut tail = f.row_zeros(1);
            f.row_set(&mut tail, 0, f.row_get(b, i));
            f.row_concat(r, &tail)
        })
        .collect();
    let aug = Matrix { field: f.clone(), ncols: n + 1, rows };
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = f.row_zeros(n);
    for (row, &p) in r.matrix.rows.iter().zip(&r.pivots) {
        f.row_set(&mut x, p, f.row_get(row, n));
    }
    Some(x)
}

/// A subspace basis kept in semi-echelon form: rows sorted by pivot, each
/// monic at its pivot and zero to the left of it. One ascending sweep
/// reduces any vector.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    len: usize,
    rows: Vec<F::Row>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, len: usize) -> Self {
        Echelon { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient(&self) -> usize {
        self.len
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[F::Row] {
        &self.rows
    }

    pub fn reduce(&self, v: &mut F::Row) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = f.row_get(v, p);
            if !f.is_zero(&a) {
                f.row_axpy_from(v, &f.neg(&a), row, p);
            }
        }
    }

    pub fn contains(&self, v: &F::Row) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        self.field.row_is_zero(&w)
    }

    /// Returns true when `v` was independent of the current span.
    pub fn insert(&mut self, mut v: F::Row) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// `v` must already be reduced against this echelon.
    pub fn insert_reduced(&mut self, mut v: F::Row) -> bool {
        let f = &self.field;
        let Some(p) = f.row_first_nonzero(&v, 0) else { return false };
        let inv = f.inv(&f.row_get(&v, p));
        f.row_scale(&mut v, &inv);
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

/// Coordinates with respect to a fixed independent family.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    field: F,
    count: usize,
    // fully reduced rows of [vectors | identity]
    rows: Vec<F::Row>,
    pivots: Vec<usize>,
    len: usize,
}

impl<F: Field> Coordinates<F> {
    /// `vectors` must be linearly independent.
    pub fn new(field: &F, len: usize, vectors: &[F::Row]) -> Self {
        let n = vectors.len();
        let mut rows: Vec<F::Row> = vectors.iter().enumerate().map(|(i, v)| field.row_concat(v, &field.row_unit(n, i))).collect();
        let pivots = rref_in_place(field, &mut rows, len);
        assert_eq!(pivots.len(), n, "family is not independent");
        Coordinates { field: field.clone(), count: n, rows, pivots, len }
    }

    /// Coordinates of `w`, assumed to lie in the span.
    pub fn coords(&self, w: &F::Row) -> F::Row {
        let f = &self.field;
        let mut out = f.row_zeros(self.count);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = f.row_get(w, p);
            if !f.is_zero(&a) {
                let tail = f.row_slice(row, self.len, self.count);
                f.row_axpy(&mut out, &a, &tail);
            }
        }
        out
    }
}
