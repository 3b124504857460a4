//! Dense exact matrices and the row-reduction machinery everything else is
//! built on.
//!
//! Matrices act on column vectors. A linear map `V -> W` is stored as a
//! `dim W x dim V` matrix whose `j`-th column is the image of the `j`-th basis
//! vector of `V`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`, skipping zero entries of `x`.
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

pub fn scale_vector(a: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|xi| a * xi).collect()
}

pub fn add_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(field: Field, len: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = zero_vector(field, len);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.label(),
                found: bad.field().label(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds the matrix whose columns are `cols`; `height` is needed when
    /// there are no columns.
    pub fn from_columns(field: Field, height: usize, cols: &[Vector]) -> Result<Matrix> {
        if cols.iter().any(|c| c.len() != height) {
            return Err(Error::DimensionMismatch("columns of unequal height".into()));
        }
        let mut m = Matrix::zeros(field, height, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Row-major reshaping of a flat vector.
    pub fn from_flat(field: Field, rows: usize, cols: usize, flat: &[Scalar]) -> Matrix {
        assert_eq!(flat.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: flat.to_vec(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let (row_out, row_rhs) = (i * rhs.cols, k * rhs.cols);
                for j in 0..rhs.cols {
                    let b = &rhs.data[row_rhs + j];
                    if !b.is_zero() {
                        out.data[row_out + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = zero_vector(self.field, self.rows);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * vj);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(a, &self.data),
        }
    }

    /// `self += a * rhs`.
    pub fn add_scaled(&mut self, a: &Scalar, rhs: &Matrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        axpy(&mut self.data, a, &rhs.data);
    }

    /// Kronecker product, matching the row-major pairing `(i, j) -> i * n + j`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Matrix::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        self.transpose().vstack(&rhs.transpose()).transpose()
    }

    pub fn rank(&self) -> usize {
        let mut b = RowEchelon::new(self.field, self.cols);
        for i in 0..self.rows {
            b.insert(self.row(i).to_vec());
        }
        b.rank()
    }

    /// Two-sided inverse, when it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Incrementally maintained reduced row-echelon basis of a row space.
///
/// After every insertion the stored rows are exactly the RREF of the span of
/// everything inserted so far, so the final state is canonical.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: Field, width: usize) -> RowEchelon {
        RowEchelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_parts(self) -> (Vec<Vector>, Vec<usize>) {
        (self.rows, self.pivots)
    }

    /// Reduces `v` against the current rows; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(v, &c, row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(lead) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let c = -&row[lead];
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.rows.insert(at, v);
        self.pivots.insert(at, lead);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// The unique reduced row-echelon form of `m` (same shape, zero rows last) and
/// its strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut b = RowEchelon::new(m.field(), m.cols());
    for i in 0..m.rows() {
        b.insert(m.row(i).to_vec());
    }
    let (rows, pivots) = b.into_parts();
    let mut out = Matrix::zeros(m.field(), m.rows(), m.cols());
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            out.set(i, j, v.clone());
        }
    }
    (out, pivots)
}

/// A particular solution together with a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Solves `a x = b`. The particular solution sets every free variable to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Solution>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut ech = RowEchelon::new(a.field(), n + 1);
    for (i, bi) in b.iter().enumerate() {
        let mut row = a.row(i).to_vec();
        row.push(bi.clone());
        ech.insert(row);
    }
    if ech.pivots().last() == Some(&n) {
        return Ok(None);
    }
    let field = a.field();
    let mut particular = zero_vector(field, n);
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        particular[p] = row[n].clone();
    }
    let kernel = kernel_from_echelon(&ech, n);
    Ok(Some(Solution { particular, kernel }))
}

pub(crate) fn kernel_from_echelon(ech: &RowEchelon, n: usize) -> Vec<Vector> {
    let field = ech.field();
    let pivots = ech.pivots();
    (0..n)
        .filter(|c| pivots.binary_search(c).is_err())
        .map(|free| {
            let mut k = zero_vector(field, n);
            k[free] = field.one();
            for (row, &p) in ech.rows().iter().zip(pivots) {
                if !row[free].is_zero() {
                    k[p] = -&row[free];
                }
            }
            k
        })
        .collect()
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn kernel(a: &Matrix) -> Vec<Vector> {
    let mut ech = RowEchelon::new(a.field(), a.cols());
    for i in 0..a.rows() {
        ech.insert(a.row(i).to_vec());
    }
    kernel_from_echelon(&ech, a.cols())
}

/// Kernel of the map `c -> sum_k c_k images[k]`, where every image has length `len`.
pub fn kernel_of_combination(field: Field, len: usize, images: &[Vector]) -> Vec<Vector> {
    let k = images.len();
    let mut ech = RowEchelon::new(field, k);
    for i in 0..len {
        let row: Vector = images.iter().map(|v| v[i].clone()).collect();
        if !is_zero_vector(&row) {
            ech.insert(row);
        }
    }
    kernel_from_echelon(&ech, k)
}

/// Decides whether `target` lies in the span of `generators`, returning
/// coefficients that recombine to it exactly.
pub fn span_decide(field: Field, generators: &[Vector], target: &[Scalar]) -> Result<Option<Vector>> {
    let len = target.len();
    if let Some(g) = generators.iter().find(|g| g.len() != len) {
        return Err(Error::DimensionMismatch(format!(
            "generator of length {} against target of length {len}",
            g.len()
        )));
    }
    let a = Matrix::from_columns(field, len, generators)?;
    Ok(solve(&a, target)?.map(|s| s.particular))
}
