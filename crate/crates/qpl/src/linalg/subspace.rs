use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::field::PrimeField;
use crate::linalg::matrix::FqMatrix;

/// A subspace of F_q^n in canonical form: the basis is the unique RREF
/// with no zero rows, so two `Subspace` values are equal exactly when they
/// are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
    ambient: usize,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({})", self.key())
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FqMatrix::zero(field, 0, ambient),
            ambient,
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FqMatrix::identity(field, ambient),
            ambient,
        }
    }

    /// Canonical span of arbitrary generators; duplicates and zero vectors
    /// are allowed. Generators of the wrong length are an input error.
    pub fn span(field: PrimeField, ambient: usize, generators: &[Vec<u32>]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient {
                return Err(Error::AmbientMismatch(format!(
                    "generator of length {} in ambient dimension {}",
                    g.len(),
                    ambient
                )));
            }
        }
        let m = FqMatrix::from_rows(field, generators)?;
        Ok(Self::row_space(&m, ambient))
    }

    /// Row space of a matrix, canonicalized.
    pub fn row_space(m: &FqMatrix, ambient: usize) -> Self {
        debug_assert_eq!(m.cols(), ambient);
        let (r, _) = m.rref();
        Subspace {
            basis: r.drop_zero_rows(),
            ambient,
        }
    }

    /// Wraps a matrix already known to be an RREF basis without zero rows.
    pub(crate) fn from_rref_unchecked(basis: FqMatrix) -> Self {
        let ambient = basis.cols();
        Subspace { basis, ambient }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() || self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field().order(),
                self.ambient,
                other.field().order(),
                other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let stacked = self.basis.vstack(&FqMatrix::from_rows(self.field(), &[v.to_vec()])?)?;
        Ok(stacked.rank() == self.dim())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(stacked.rank() == self.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::row_space(&stacked, self.ambient))
    }

    /// Intersection via the double orthogonal with respect to the standard
    /// dot product: a ∩ b = (a⊥ + b⊥)⊥.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let pa = self.orthogonal_std();
        let pb = other.orthogonal_std();
        Ok(pa.sum(&pb)?.orthogonal_std())
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn orthogonal_std(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Orthogonal complement with respect to the bilinear form given by
    /// `gram`, which must be symmetric and invertible.
    pub fn orthogonal(&self, gram: &FqMatrix) -> Result<Subspace> {
        if gram.field() != self.field() || gram.rows() != self.ambient || gram.cols() != self.ambient {
            return Err(Error::BadGram(format!(
                "expected a {}x{} matrix over F_{}",
                self.ambient,
                self.ambient,
                self.field().order()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::BadGram("matrix is not symmetric".into()));
        }
        if !gram.is_invertible() {
            return Err(Error::BadGram("matrix is singular".into()));
        }
        Ok(kernel(&self.basis.mul(gram)?))
    }

    /// Canonical key: RREF rows as digit strings joined by `;`, `-` for the
    /// zero space.
    pub fn key(&self) -> String {
        if self.dim() == 0 {
            return "-".to_string();
        }
        let mut out = String::with_capacity(self.dim() * (self.ambient + 1));
        for i in 0..self.dim() {
            if i > 0 {
                out.push(';');
            }
            for j in 0..self.ambient {
                let d = self.basis.get(i, j);
                debug_assert!(d < 10, "key digits require q <= 7");
                out.push(char::from_digit(d, 10).unwrap());
            }
        }
        out
    }

    /// Parses a canonical key back into a subspace, validating RREF form.
    pub fn parse_key(field: PrimeField, ambient: usize, key: &str) -> Result<Subspace> {
        if key == "-" {
            return Ok(Subspace::zero(field, ambient));
        }
        let mut rows = Vec::new();
        for part in key.split(';') {
            rows.push(crate::linalg::text::digit_row(0, part, ambient, field)?);
        }
        let m = FqMatrix::from_rows(field, &rows)?;
        let s = Subspace::row_space(&m, ambient);
        if s.basis != m {
            return Err(Error::InvalidInput(format!("key `{key}` is not a canonical RREF basis")));
        }
        Ok(s)
    }
}

/// Kernel of a matrix: the canonical subspace `{x : m · xᵀ = 0}` of F_q^cols.
pub fn kernel(m: &FqMatrix) -> Subspace {
    let field = m.field();
    let cols = m.cols();
    let (r, rank) = m.rref();
    // pivot column of each nonzero row
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let p = (0..cols).find(|&j| r.get(i, j) != 0).expect("nonzero row");
        pivots.push(p);
    }
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis_rows = Vec::with_capacity(cols - rank);
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            // x_p = -r[i, free] when x_free = 1
            v[p] = field.neg(r.get(i, free));
        }
        basis_rows.push(v);
    }
    let m = FqMatrix::from_rows(field, &basis_rows).expect("uniform rows");
    // Free columns increase, so the construction is already an RREF basis,
    // but reducing once more keeps this independent of that argument.
    Subspace::row_space(&m, cols)
}

/// Canonical order: by dimension first, then lexicographically by the
/// concatenated basis digits (equivalently by the key string).
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.field().order().cmp(&other.field().order()))
            .then_with(|| self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
