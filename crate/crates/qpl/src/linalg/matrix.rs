use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::field::PrimeField;

/// Dense matrix over a prime field, stored row-major with reduced entries.
///
/// A 0×m (or r×0) matrix is legal and has rank 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix(q={}, {}x{})", self.field.order(), self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " [")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row slices; entries are reduced mod q.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().map(|&e| field.reduce(e as u64)));
        }
        Ok(FqMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_entries(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        let entries = entries.into_iter().map(|e| field.reduce(e as u64)).collect();
        Ok(FqMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = self.field.reduce(v as u64);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FqMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.field != other.field {
            return Err(Error::AmbientMismatch("matrix product over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let q = f.order() as u64;
        let mut out = FqMatrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    let v = out.entries[idx] as u64 + a * other.get(t, j) as u64;
                    out.entries[idx] = (v % q) as u32;
                }
            }
        }
        Ok(out)
    }

    /// Matrix power by repeated squaring; requires a square matrix.
    pub fn pow(&self, mut e: u64) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "power of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = FqMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FqMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn check_same_shape(&self, other: &FqMatrix) -> Result<()> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form and rank. The RREF keeps the original shape
    /// (zero rows at the bottom); it is unique, hence idempotent.
    pub fn rref(&self) -> (FqMatrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place()
    }

    pub(crate) fn rref_in_place(&mut self) -> usize {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            let inv = f.inv(self.get(pivot_row, col));
            if inv != 1 {
                for j in col..cols {
                    let v = f.mul(self.get(pivot_row, j), inv);
                    self.set(pivot_row, j, v);
                }
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(pivot_row, j)));
                    self.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Drops all-zero rows; used to canonicalize RREF bases.
    pub(crate) fn drop_zero_rows(&self) -> FqMatrix {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            if self.row(i).iter().any(|&e| e != 0) {
                rows.push(self.row(i).to_vec());
            }
        }
        let mut m = FqMatrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            entries: rows.concat(),
        };
        if m.cols == 0 {
            m.entries.clear();
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        // Row reduce [self | I].
        let mut aug = FqMatrix::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rank_left = {
            let (r, _) = aug.rref();
            aug = r;
            (0..n).filter(|&i| (0..n).any(|j| aug.get(i, j) != 0)).count()
        };
        if rank_left != n {
            return Err(Error::InvalidInput("matrix is singular".into()));
        }
        let mut inv = FqMatrix::zero(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Serializes in the matrix text format:
    /// `q <q> rows <r> cols <c>` followed by `r` lines of `c` digits.
    pub fn to_text(&self) -> Result<String> {
        if self.field.order() > 9 {
            return Err(Error::UnsupportedTextField(self.field.order() as u64));
        }
        let mut out = format!("q {} rows {} cols {}\n", self.field.order(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(char::from_digit(self.get(i, j), 10).unwrap());
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse_text(input: &str) -> Result<FqMatrix> {
        let mut lines = crate::linalg::text::meaningful_lines(input);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
        let fields = crate::linalg::text::header_fields(lineno, header, &["q", "rows", "cols"])?;
        let q = fields[0];
        let field = PrimeField::new(u32::try_from(q).map_err(|_| Error::NotPrime(q))?)?;
        if q > 9 {
            return Err(Error::UnsupportedTextField(q));
        }
        let rows = fields[1] as usize;
        let cols = fields[2] as usize;
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| Error::parse(lineno, 1, format!("expected {rows} digit rows")))?;
            entries.extend(crate::linalg::text::digit_row(ln, row, cols, field)?);
        }
        FqMatrix::from_entries(field, rows, cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = FqMatrix::identity(f2(), 3);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_zero_is_fixed() {
        let z = FqMatrix::zero(f3(), 2, 4);
        let (r, rank) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_dependent_rows_over_f2() {
        // rows 110, 011, 101: third is the sum of the first two.
        let m = FqMatrix::from_rows(f2(), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r.row(0), &[1, 0, 1]);
        assert_eq!(r.row(1), &[0, 1, 1]);
        assert_eq!(r.row(2), &[0, 0, 0]);
        // idempotent
        let (r2, rank2) = r.rref();
        assert_eq!(r2, r);
        assert_eq!(rank2, rank);
    }

    #[test]
    fn rref_pivot_normalization_over_f3() {
        let m = FqMatrix::from_rows(f3(), &[vec![2, 1], vec![1, 2]]).unwrap();
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, FqMatrix::identity(f3(), 2));
    }

    #[test]
    fn zero_row_matrix_is_legal() {
        let m = FqMatrix::zero(f2(), 0, 4);
        assert_eq!(m.rank(), 0);
        let (r, _) = m.rref();
        assert_eq!(r.rows(), 0);
    }

    #[test]
    fn product_and_power() {
        let f = f2();
        let a = FqMatrix::from_rows(f, &[vec![0, 1], vec![1, 1]]).unwrap();
        // a has order 3 in GL_2(F_2)
        assert_eq!(a.pow(3).unwrap(), FqMatrix::identity(f, 2));
        assert_eq!(a.pow(0).unwrap(), FqMatrix::identity(f, 2));
        let sq = a.mul(&a).unwrap();
        assert_eq!(a.pow(2).unwrap(), sq);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f3();
        let a = FqMatrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FqMatrix::identity(f, 3));
        let singular = FqMatrix::from_rows(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(singular.is_invertible());
        let singular = FqMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(!singular.is_invertible());
    }

    #[test]
    fn text_roundtrip() {
        let m = FqMatrix::from_rows(f3(), &[vec![0, 1, 2], vec![2, 2, 0]]).unwrap();
        let text = m.to_text().unwrap();
        assert_eq!(text, "q 3 rows 2 cols 3\n012\n220\n");
        assert_eq!(FqMatrix::parse_text(&text).unwrap(), m);
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(FqMatrix::parse_text("").is_err());
        assert!(FqMatrix::parse_text("q 4 rows 1 cols 1\n0\n").is_err());
        assert!(FqMatrix::parse_text("q 2 rows 2 cols 2\n01\n").is_err());
        assert!(FqMatrix::parse_text("q 2 rows 1 cols 2\n07\n").is_err());
    }
}
