use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::{CoeffRing, Elem};
use super::FgError;

/// Dense row-major matrix of ring elements.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<Elem>>", try_from = "Vec<Vec<Elem>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    /// Build from nested rows; `cols` is needed to type the empty case.
    pub fn from_nested(rows: &[Vec<Elem>], cols: usize) -> Result<Self, FgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(FgError::DimensionMismatch(format!(
                    "ragged matrix row of length {} (expected {cols})",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_columns(height: usize, columns: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(height, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), height, "column has wrong height");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
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

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn to_nested(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, ring: &CoeffRing) -> Result<Matrix, FgError> {
        if self.cols != other.rows {
            return Err(FgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        let prod = ring.mul(a, b)?;
                        out[(i, j)] = ring.add(out[(i, j)], prod)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Elem], ring: &CoeffRing) -> Result<Vec<Elem>, FgError> {
        if v.len() != self.cols {
            return Err(FgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0, |acc, (&a, &b)| {
                    let prod = ring.mul(a, b)?;
                    ring.add(acc, prod)
                })
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hcat(blocks: &[&Matrix], rows: usize) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hcat row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)];
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vcat column mismatch");
            data.extend_from_slice(&b.data);
        }
        Matrix { rows, cols, data }
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)];
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(a.rows + i, a.cols + j)] = b[(i, j)];
            }
        }
        out
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        Matrix { rows: range.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, c: Elem, ring: &CoeffRing) -> Result<Matrix, FgError> {
        let data = self.data.iter().map(|&v| ring.mul(v, c)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn map_entries(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, c: Elem, ring: &CoeffRing) -> Result<(), FgError> {
        if c == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = ring.mul(c, self[(src, j)])?;
            self[(dst, j)] = ring.add(self[(dst, j)], v)?;
        }
        Ok(())
    }

    /// col[dst] += c * col[src]
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, c: Elem, ring: &CoeffRing) -> Result<(), FgError> {
        if c == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = ring.mul(c, self[(i, src)])?;
            self[(i, dst)] = ring.add(self[(i, dst)], v)?;
        }
        Ok(())
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: Elem, ring: &CoeffRing) -> Result<(), FgError> {
        for j in 0..self.cols {
            self[(i, j)] = ring.mul(self[(i, j)], c)?;
        }
        Ok(())
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: Elem, ring: &CoeffRing) -> Result<(), FgError> {
        for i in 0..self.rows {
            self[(i, j)] = ring.mul(self[(i, j)], c)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_nested())
    }
}

impl From<Matrix> for Vec<Vec<Elem>> {
    fn from(m: Matrix) -> Self {
        m.to_nested()
    }
}

impl TryFrom<Vec<Vec<Elem>>> for Matrix {
    type Error = FgError;
    fn try_from(rows: Vec<Vec<Elem>>) -> Result<Self, FgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_nested(&rows, cols)
    }
}
