use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, Scalar};

use super::SubspaceRREF;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl Hash for MatrixGF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixGF {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// `dst += c * src`, elementwise.
#[inline]
pub(crate) fn axpy(field: &FieldSpec, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add(*d, field.mul(c, s));
    }
}

pub(crate) fn dot(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

impl MatrixGF {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> MatrixGF {
        MatrixGF { rows, cols, data: vec![Scalar::ZERO; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    /// Builds a matrix from rows, all of length `cols`.
    pub fn from_rows<R: AsRef<[Scalar]>>(field: &FieldSpec, cols: usize, rows: &[R]) -> Result<MatrixGF> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            for &s in r {
                field.elem(s.rep())?;
            }
            data.extend_from_slice(r);
        }
        Ok(MatrixGF { rows: rows.len(), cols, data, field: field.clone() })
    }

    /// Builds a matrix from a row-major list of integer encodings.
    pub fn from_reps(field: &FieldSpec, rows: usize, cols: usize, reps: &[u32]) -> Result<MatrixGF> {
        if reps.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                reps.len()
            )));
        }
        let data = reps.iter().map(|&r| field.elem(r)).collect::<Result<Vec<_>>>()?;
        Ok(MatrixGF { rows, cols, data, field: field.clone() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    fn check_field(&self, other: &MatrixGF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixGF::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                axpy(&self.field, out.row_mut(r), a, src);
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok(self.row_iter().map(|row| dot(&self.field, row, v)).collect())
    }

    /// `v^T * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} rows", v.len(), self.rows)));
        }
        let mut out = vec![Scalar::ZERO; self.cols];
        for (r, &c) in v.iter().enumerate() {
            axpy(&self.field, &mut out, c, self.row(r));
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixGF { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("{} vs {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(MatrixGF { rows: self.rows, cols, data, field: self.field.clone() })
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixGF {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        MatrixGF { rows: idx.len(), cols: self.cols, data, field: self.field.clone() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for x in m.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            let (head, tail) = m.data.split_at_mut(r * cols);
            let (prow, after) = tail.split_at_mut(cols);
            for other in head.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
                let factor = other[c];
                if !factor.is_zero() {
                    axpy(f, other, f.neg(factor), prow);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> SubspaceRREF {
        let red = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Scalar::ZERO; self.cols];
            x[free] = Scalar::ONE;
            for (i, &p) in red.pivots.iter().enumerate() {
                x[p] = f.neg(red.matrix.get(i, free));
            }
            basis.push(x);
        }
        SubspaceRREF::span(f, self.cols, &basis).expect("kernel vectors have ambient length")
    }

    /// The row space as a canonical subspace.
    pub fn row_space(&self) -> SubspaceRREF {
        SubspaceRREF::from_rref(self.rref())
    }
}

/// True iff every row of `inner` lies in the row space of `outer`.
pub fn row_space_contains(outer: &MatrixGF, inner: &MatrixGF) -> Result<bool> {
    if outer.cols() != inner.cols() {
        return Err(Error::DimensionMismatch(format!("{} vs {} columns", outer.cols(), inner.cols())));
    }
    outer.check_field(inner)?;
    let base = outer.rank();
    Ok(outer.vstack(inner)?.rank() == base)
}

/// The scalar multiple of `v` whose first nonzero coordinate is 1.
pub fn canonical_point(field: &FieldSpec, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let lead = v.iter().copied().find(|s| !s.is_zero()).ok_or(Error::ZeroVector)?;
    let inv = field.inv(lead)?;
    Ok(v.iter().map(|&s| field.mul(s, inv)).collect())
}

/// Determinant of a square matrix.
pub fn determinant(m: &MatrixGF) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let f = m.field().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Scalar::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(Scalar::ZERO);
        };
        if p != c {
            for j in 0..n {
                let t = a.get(p, j);
                a.set(p, j, a.get(c, j));
                a.set(c, j, t);
            }
            det = f.neg(det);
        }
        let pv = a.get(c, c);
        det = f.mul(det, pv);
        let inv = f.inv(pv)?;
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}
