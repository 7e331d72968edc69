//! Dense matrices over a [`Field`] and exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of [`eliminate`].
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    /// Pivot columns of the reduced row echelon form, in increasing order.
    pub pivots: Vec<usize>,
    pub kernel_basis: Vec<Vec<Scalar>>,
    /// The pivot columns of the input matrix.
    pub image_basis: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols,
            entries,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows, cols).expect("ragged matrix literal")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &Scalar) {
        let e = &mut self.entries[r * self.cols + c];
        *e += x;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    let a = self.get(r, c);
                    if !a.is_zero() {
                        *o += &(a * x);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self.clone()).1.len()
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = row_reduce(aug);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form and pivot columns.
pub fn row_reduce(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().unwrap();
        for j in c..cols {
            let x = m.get(r, j);
            if !x.is_zero() {
                let y = x * &inv;
                m.set(r, j, y);
            }
        }
        let pivot_row: Vec<(usize, Scalar)> = (c..cols)
            .filter_map(|j| {
                let x = m.get(r, j);
                (!x.is_zero()).then(|| (j, x.clone()))
            })
            .collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in &pivot_row {
                let y = &f * x;
                let e = &mut m.entries[i * cols + j];
                *e -= &y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank, kernel basis and image basis of `m`. Empty matrices are allowed.
pub fn eliminate(m: &Matrix) -> Elimination {
    let field = m.field;
    let (red, pivots) = row_reduce(m.clone());
    let rank = pivots.len();
    let mut kernel_basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            let x = red.get(i, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        kernel_basis.push(v);
    }
    let image_basis = pivots.iter().map(|&p| m.column(p)).collect();
    Elimination {
        rank,
        pivots,
        kernel_basis,
        image_basis,
    }
}

/// Some `x` with `m x = b`, or `None` if `b` is not in the image.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let field = m.field;
    let mut aug = Matrix::zeros(field, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let (red, pivots) = row_reduce(aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// Solves `m X = B` for several right-hand sides at once (columns of `rhs`),
/// `None` if any column is not in the image.
pub fn solve_many(m: &Matrix, rhs: &[Vec<Scalar>]) -> Result<Option<Vec<Vec<Scalar>>>> {
    let field = m.field;
    let k = rhs.len();
    let mut aug = Matrix::zeros(field, m.rows, m.cols + k);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
    }
    for (j, b) in rhs.iter().enumerate() {
        if b.len() != m.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        for (r, x) in b.iter().enumerate() {
            aug.set(r, m.cols + j, x.clone());
        }
    }
    let (red, pivots) = row_reduce(aug);
    if pivots.iter().any(|&p| p >= m.cols) {
        return Ok(None);
    }
    let sols = (0..k)
        .map(|j| {
            let mut x = vec![field.zero(); m.cols];
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = red.get(i, m.cols + j).clone();
            }
            x
        })
        .collect();
    Ok(Some(sols))
}
