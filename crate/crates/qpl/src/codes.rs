//! Rank-metric codes in F_q^{n×m} and the q-polymatroids they induce:
//! invariants, trace-duals, the subcodes C(V,c), the column polymatroid,
//! and right F_{q^s}-linearity checks via the companion matrix.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::LatticeIndex;
use crate::linalg::{FqMatrix, PrimeField, Subspace};
use crate::qpm::QPolymatroid;

/// Default guard on the number of codewords enumerated for rank distances.
pub const DEFAULT_CODEWORD_BUDGET: u64 = 1 << 24;

/// An F_q-linear subspace of the matrix space F_q^{n×m}, canonicalized by
/// flattening the basis matrices row-major into a k×(nm) RREF. Equal codes
/// therefore compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankMetricCode {
    n: usize,
    m: usize,
    flat: FqMatrix,
}

impl std::fmt::Debug for RankMetricCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RankMetricCode(q={}, {}x{}, dim={})",
            self.field().order(),
            self.n,
            self.m,
            self.dim()
        )
    }
}

/// Invariants of a nonzero code. `dual_distance` is absent exactly when the
/// dual is the zero code (i.e. the code is the full matrix space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeReport {
    pub dim: usize,
    pub distance: u32,
    pub dual_distance: Option<u32>,
    pub singleton_rhs: usize,
    pub is_mrd: bool,
}

impl RankMetricCode {
    /// The code spanned by the given n×m generator matrices. Dependent or
    /// zero generators are allowed; the stored basis is canonical.
    pub fn from_generators(
        field: PrimeField,
        n: usize,
        m: usize,
        generators: &[FqMatrix],
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            if g.field() != field || g.rows() != n || g.cols() != m {
                return Err(Error::ShapeMismatch(format!(
                    "generator is {}x{} over F_{}, expected {}x{} over F_{}",
                    g.rows(),
                    g.cols(),
                    g.field().order(),
                    n,
                    m,
                    field.order()
                )));
            }
            rows.push(g.entries().to_vec());
        }
        let stacked = FqMatrix::from_rows(field, &rows)?;
        let (rref, _) = stacked.rref();
        Ok(RankMetricCode {
            n,
            m,
            flat: rref.drop_zero_rows(),
        })
    }

    /// The zero code in F_q^{n×m}.
    pub fn zero(field: PrimeField, n: usize, m: usize) -> Self {
        RankMetricCode {
            n,
            m,
            flat: FqMatrix::zero(field, 0, n * m),
        }
    }

    /// The full matrix space F_q^{n×m}.
    pub fn full(field: PrimeField, n: usize, m: usize) -> Self {
        RankMetricCode {
            n,
            m,
            flat: FqMatrix::identity(field, n * m),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.flat.field()
    }

    pub fn nrows(&self) -> usize {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.flat.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical basis as n×m matrices (unflattened RREF rows).
    pub fn basis_matrices(&self) -> Vec<FqMatrix> {
        (0..self.dim())
            .map(|i| self.unflatten(self.flat.row(i)))
            .collect()
    }

    fn unflatten(&self, row: &[u32]) -> FqMatrix {
        FqMatrix::from_entries(self.field(), self.n, self.m, row.to_vec())
            .expect("row length is n*m")
    }

    pub fn contains(&self, word: &FqMatrix) -> Result<bool> {
        if word.field() != self.field() || word.rows() != self.n || word.cols() != self.m {
            return Err(Error::ShapeMismatch("codeword has the wrong shape".into()));
        }
        let candidate = FqMatrix::from_rows(self.field(), &[word.entries().to_vec()])?;
        Ok(self.flat.vstack(&candidate)?.rank() == self.dim())
    }

    /// Minimum rank over all nonzero codewords, by exhaustive enumeration.
    pub fn rank_distance(&self) -> Result<u32> {
        self.rank_distance_with_budget(DEFAULT_CODEWORD_BUDGET)
    }

    pub fn rank_distance_with_budget(&self, budget: u64) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::UndefinedDistance);
        }
        let q = self.field().order() as u128;
        let k = self.dim();
        let count = q
            .checked_pow(k as u32)
            .ok_or(Error::Overflow("codeword count"))?;
        if count > budget as u128 {
            return Err(Error::Capacity {
                what: "codeword count",
                count,
                budget: budget as u128,
            });
        }
        let field = self.field();
        let mut best = self.n.min(self.m) as u32;
        let mut word = vec![0u32; self.n * self.m];
        for c in 1..count {
            word.iter_mut().for_each(|e| *e = 0);
            let mut digits = c;
            for i in 0..k {
                let coeff = (digits % q) as u32;
                digits /= q;
                if coeff == 0 {
                    continue;
                }
                for (w, &e) in word.iter_mut().zip(self.flat.row(i)) {
                    *w = field.add(*w, field.mul(coeff, e));
                }
            }
            let rank = self.unflatten(&word).rank() as u32;
            if rank < best {
                best = rank;
                if best == 1 {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// The trace-dual code: orthogonal complement under the pairing
    /// (M, N) ↦ tr(MNᵀ), which is the entrywise dot product of the
    /// flattened matrices.
    pub fn dual(&self) -> RankMetricCode {
        let kernel = crate::linalg::kernel(&self.flat);
        RankMetricCode {
            n: self.n,
            m: self.m,
            flat: kernel.basis().clone(),
        }
    }

    /// The subcode C(V, c) of all codewords whose column space lies in `v`,
    /// computed as the kernel of M ↦ P·M with P a check matrix of v.
    pub fn subcode_colspace(&self, v: &Subspace) -> Result<RankMetricCode> {
        if v.field() != self.field() || v.ambient_dim() != self.n {
            return Err(Error::AmbientMismatch(format!(
                "column-space constraint lives in F_{}^{}, code rows are F_{}^{}",
                v.field().order(),
                v.ambient_dim(),
                self.field().order(),
                self.n
            )));
        }
        let check = v.orthogonal_std();
        let p = check.basis();
        // coefficient vectors c with P * (sum c_i B_i) = 0
        let mut constraint_rows: Vec<Vec<u32>> = vec![Vec::with_capacity(self.dim()); p.rows() * self.m];
        for i in 0..self.dim() {
            let image = p.mul(&self.unflatten(self.flat.row(i)))?;
            for (slot, &e) in constraint_rows.iter_mut().zip(image.entries()) {
                slot.push(e);
            }
        }
        let constraint = FqMatrix::from_rows(self.field(), &constraint_rows)?;
        let coeff_space = crate::linalg::kernel(&constraint);
        let mut generators = Vec::with_capacity(coeff_space.dim());
        for i in 0..coeff_space.dim() {
            let word = FqMatrix::from_rows(self.field(), &[coeff_space.basis().row(i).to_vec()])?
                .mul(&self.flat)?;
            generators.push(self.unflatten(word.row(0)));
        }
        RankMetricCode::from_generators(self.field(), self.n, self.m, &generators)
    }

    /// The (column) polymatroid of the code on F_q^n:
    /// ρ_c(V) = (dim C − dim C(V⊥, c)) / m, stored as τ(V) with D = m.
    ///
    /// Since (V⊥)⊥ = V, the check matrix of V⊥ is a basis matrix B_V of V,
    /// so τ(V) is the rank of the stacked map M ↦ B_V·M on the code basis.
    pub fn column_polymatroid(&self, index: &Arc<LatticeIndex>) -> Result<QPolymatroid> {
        if index.field() != self.field() || index.ambient_dim() != self.n {
            return Err(Error::AmbientMismatch(
                "lattice index does not match the code's row space".into(),
            ));
        }
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "the column polymatroid is defined for nonzero codes".into(),
            ));
        }
        let basis = self.basis_matrices();
        let mut tau = Vec::with_capacity(index.count());
        for id in index.all_ids() {
            tau.push(self.tau_of_subspace(index.subspace(id), &basis)? as u64);
        }
        QPolymatroid::from_table(Arc::clone(index), self.m as u64, tau)
    }

    fn tau_of_subspace(&self, v: &Subspace, basis: &[FqMatrix]) -> Result<usize> {
        if v.dim() == 0 {
            return Ok(0);
        }
        let bv = v.basis();
        let mut rows = Vec::with_capacity(basis.len());
        for b in basis {
            rows.push(bv.mul(b)?.entries().to_vec());
        }
        Ok(FqMatrix::from_rows(self.field(), &rows)?.rank())
    }

    /// The equivalent code X·C·Y (or X·Cᵀ·Y with `transpose_first`, which
    /// requires n = m).
    pub fn transform(&self, x: &FqMatrix, y: &FqMatrix, transpose_first: bool) -> Result<RankMetricCode> {
        let (rows, cols) = if transpose_first {
            if self.n != self.m {
                return Err(Error::ShapeMismatch(
                    "transposition-equivalence requires square codewords".into(),
                ));
            }
            (self.m, self.n)
        } else {
            (self.n, self.m)
        };
        if x.rows() != rows || x.cols() != rows || !x.is_invertible() {
            return Err(Error::InvalidInput(format!("X must be in GL_{rows}")));
        }
        if y.rows() != cols || y.cols() != cols || !y.is_invertible() {
            return Err(Error::InvalidInput(format!("Y must be in GL_{cols}")));
        }
        let generators: Vec<FqMatrix> = self
            .basis_matrices()
            .iter()
            .map(|b| {
                let b = if transpose_first { b.transpose() } else { b.clone() };
                x.mul(&b)?.mul(y)
            })
            .collect::<Result<_>>()?;
        RankMetricCode::from_generators(self.field(), rows, cols, &generators)
    }

    /// Invariants of a nonzero code: rank distance, dual distance, the
    /// Singleton bound max{m,n}(min{m,n} − d + 1), and the MRD flag.
    pub fn report(&self, budget: u64) -> Result<CodeReport> {
        let distance = self.rank_distance_with_budget(budget)?;
        let dual = self.dual();
        let dual_distance = if dual.is_zero() {
            None
        } else {
            Some(dual.rank_distance_with_budget(budget)?)
        };
        let singleton_rhs =
            self.n.max(self.m) * (self.n.min(self.m) - distance as usize + 1);
        Ok(CodeReport {
            dim: self.dim(),
            distance,
            dual_distance,
            singleton_rhs,
            is_mrd: self.dim() == singleton_rhs,
        })
    }

    /// Serializes in the code text format: `q <q> n <n> m <m> k <k>`, then
    /// k blocks of n digit rows separated by blank lines.
    pub fn to_text(&self) -> Result<String> {
        if self.field().order() > 9 {
            return Err(Error::UnsupportedTextField(self.field().order() as u64));
        }
        let mut out = format!(
            "q {} n {} m {} k {}\n",
            self.field().order(),
            self.n,
            self.m,
            self.dim()
        );
        for (i, b) in self.basis_matrices().iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for r in 0..self.n {
                for c in 0..self.m {
                    out.push(char::from_digit(b.get(r, c), 10).unwrap());
                }
                out.push('\n');
            }
        }
        Ok(out)
    }

    pub fn parse_text(input: &str) -> Result<RankMetricCode> {
        let mut lines = crate::linalg::text::meaningful_lines(input);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty code file"))?;
        let fields = crate::linalg::text::header_fields(lineno, header, &["q", "n", "m", "k"])?;
        let q = fields[0];
        if q > 9 {
            return Err(Error::UnsupportedTextField(q));
        }
        let field = PrimeField::new(u32::try_from(q).map_err(|_| Error::NotPrime(q))?)?;
        let (n, m, k) = (fields[1] as usize, fields[2] as usize, fields[3] as usize);
        let mut generators = Vec::with_capacity(k);
        let mut last_line = lineno;
        for _ in 0..k {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, line) = lines.next().ok_or_else(|| {
                    Error::parse(last_line, 1, format!("expected {k} blocks of {n} rows"))
                })?;
                last_line = ln;
                rows.push(crate::linalg::text::digit_row(ln, line, m, field)?);
            }
            generators.push(FqMatrix::from_rows(field, &rows)?);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, 1, "trailing content after the last block"));
        }
        let code = RankMetricCode::from_generators(field, n, m, &generators)?;
        if code.dim() != k {
            return Err(Error::InvalidInput(format!(
                "header claims k = {k} but the generators span dimension {}",
                code.dim()
            )));
        }
        Ok(code)
    }
}

/// The companion matrix Δ_f of a monic polynomial f = x^m − Σ f_i x^i,
/// given by the coefficients (f_0, ..., f_{m−1}): superdiagonal ones and
/// last row (f_0, ..., f_{m−1}). Invertible exactly when f_0 ≠ 0.
pub fn companion_matrix(field: PrimeField, f_coeffs: &[u32]) -> Result<FqMatrix> {
    let m = f_coeffs.len();
    if m == 0 {
        return Err(Error::InvalidInput(
            "companion matrix needs a polynomial of degree at least 1".into(),
        ));
    }
    let mut delta = FqMatrix::zero(field, m, m);
    for i in 0..m - 1 {
        delta.set(i, i + 1, 1);
    }
    for (j, &f) in f_coeffs.iter().enumerate() {
        delta.set(m - 1, j, f);
    }
    Ok(delta)
}

/// Checks right F_{q^s}-linearity of the code at a supplied change of basis
/// X ∈ GL_m: true iff C·X is invariant under right multiplication by
/// Δ_f^M with M = (q^m − 1)/(q^s − 1).
pub fn is_right_linear(
    code: &RankMetricCode,
    f_coeffs: &[u32],
    s: usize,
    x: &FqMatrix,
) -> Result<bool> {
    let m = code.ncols();
    if f_coeffs.len() != m {
        return Err(Error::InvalidInput(format!(
            "f must be monic of degree m = {m}"
        )));
    }
    if s == 0 || m % s != 0 {
        return Err(Error::InvalidInput(format!("s = {s} must divide m = {m}")));
    }
    let delta = companion_matrix(code.field(), f_coeffs)?;
    if !delta.is_invertible() {
        return Err(Error::InvalidInput(
            "companion matrix is singular (f_0 = 0)".into(),
        ));
    }
    if x.rows() != m || x.cols() != m || !x.is_invertible() {
        return Err(Error::InvalidInput(format!("X must be in GL_{m}")));
    }
    let q = code.field().order() as u64;
    let power = (q.pow(m as u32) - 1) / (q.pow(s as u32) - 1);
    let multiplier = delta.pow(power)?;
    let transformed = code.transform(&FqMatrix::identity(code.field(), code.nrows()), x, false)?;
    for b in transformed.basis_matrices() {
        if !transformed.contains(&b.mul(&multiplier)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive search for a witness X ∈ GL_m(F_q) of right F_{q^s}-linearity.
/// The definition is existential; this search is only feasible for q = 2 and
/// m ≤ 4 (|GL_4(F_2)| = 20160) and is rejected otherwise.
pub fn find_right_linear_witness(
    code: &RankMetricCode,
    f_coeffs: &[u32],
    s: usize,
) -> Result<Option<FqMatrix>> {
    let m = code.ncols();
    let q = code.field().order();
    if q != 2 || m > 4 {
        return Err(Error::Capacity {
            what: "GL_m search space",
            count: (q as u128).pow((m * m) as u32),
            budget: 1 << 16,
        });
    }
    for bits in 0..(1u32 << (m * m)) {
        let entries: Vec<u32> = (0..m * m).map(|i| (bits >> i) & 1).collect();
        let x = FqMatrix::from_entries(code.field(), m, m, entries)?;
        if !x.is_invertible() {
            continue;
        }
        if is_right_linear(code, f_coeffs, s, &x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// The subspace map V ↦ (Xᵀ)⁻¹·V relating the polymatroids of C and X·C·Y.
/// On row-vector spans this is right multiplication of the basis by X⁻¹.
pub fn equivalence_image(v: &Subspace, x: &FqMatrix) -> Result<Subspace> {
    let rows = v.basis().mul(&x.inverse()?)?;
    Ok(Subspace::row_space(&rows, v.ambient_dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeIndex;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn mat(rows: &[&[u32]]) -> FqMatrix {
        FqMatrix::from_rows(f2(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn rank_one_code() -> RankMetricCode {
        let g = mat(&[&[1, 0], &[0, 0], &[0, 0]]);
        RankMetricCode::from_generators(f2(), 3, 2, &[g]).unwrap()
    }

    #[test]
    fn distance_of_rank_one_code() {
        assert_eq!(rank_one_code().rank_distance().unwrap(), 1);
    }

    #[test]
    fn zero_code_has_no_distance() {
        let zero = RankMetricCode::zero(f2(), 2, 2);
        assert!(matches!(zero.rank_distance(), Err(Error::UndefinedDistance)));
    }

    #[test]
    fn distance_budget_guard() {
        let full = RankMetricCode::full(f2(), 2, 2);
        assert!(matches!(
            full.rank_distance_with_budget(8),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn dual_dimension_and_involution() {
        let full = RankMetricCode::full(f2(), 2, 2);
        assert!(full.dual().is_zero());
        let zero = RankMetricCode::zero(f2(), 3, 2);
        assert_eq!(zero.dual().dim(), 6);

        let c = rank_one_code();
        let dual = c.dual();
        assert_eq!(dual.dim(), 6 - c.dim());
        assert_eq!(dual.dual(), c);
        // pairing vanishes on all basis pairs
        for a in c.basis_matrices() {
            for b in dual.basis_matrices() {
                let dot: u32 = a
                    .entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(&x, &y)| x * y)
                    .sum::<u32>()
                    % 2;
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn subcode_edge_cases() {
        let c = rank_one_code();
        let full = Subspace::full(f2(), 3);
        assert_eq!(c.subcode_colspace(&full).unwrap(), c);
        let zero = Subspace::zero(f2(), 3);
        assert!(c.subcode_colspace(&zero).unwrap().is_zero());
        let wrong = Subspace::zero(f2(), 4);
        assert!(c.subcode_colspace(&wrong).is_err());
    }

    #[test]
    fn companion_matrix_shape() {
        // f = x^4 + x + 1 over F_2: coefficients of x^4 - (f_0 + f_1 x + ...)
        let delta = companion_matrix(f2(), &[1, 1, 0, 0]).unwrap();
        assert_eq!(delta.row(0), &[0, 1, 0, 0]);
        assert_eq!(delta.row(1), &[0, 0, 1, 0]);
        assert_eq!(delta.row(2), &[0, 0, 0, 1]);
        assert_eq!(delta.row(3), &[1, 1, 0, 0]);
        assert!(delta.is_invertible());
        // f is primitive of degree 4, so Delta_f has order 15
        assert_eq!(delta.pow(15).unwrap(), FqMatrix::identity(f2(), 4));
        for e in 1..15 {
            assert_ne!(delta.pow(e).unwrap(), FqMatrix::identity(f2(), 4));
        }

        let one_by_one = companion_matrix(f2(), &[1]).unwrap();
        assert_eq!(one_by_one, FqMatrix::identity(f2(), 1));

        let singular = companion_matrix(f2(), &[0, 1, 0]).unwrap();
        assert!(!singular.is_invertible());
    }

    #[test]
    fn full_space_is_right_linear() {
        let full = RankMetricCode::full(f2(), 2, 2);
        // f = x^2 + x + 1, s = 1 and s = 2
        for s in [1, 2] {
            assert!(is_right_linear(&full, &[1, 1], s, &FqMatrix::identity(f2(), 2)).unwrap());
        }
    }

    #[test]
    fn invariant_code_is_right_linear_at_s_equals_m() {
        // C = <I, Delta> for f = x^2 + x + 1 is Delta-invariant (a field!)
        let delta = companion_matrix(f2(), &[1, 1]).unwrap();
        let c = RankMetricCode::from_generators(
            f2(),
            2,
            2,
            &[FqMatrix::identity(f2(), 2), delta.clone()],
        )
        .unwrap();
        assert!(is_right_linear(&c, &[1, 1], 2, &FqMatrix::identity(f2(), 2)).unwrap());
        let witness = find_right_linear_witness(&c, &[1, 1], 2).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn transform_preserves_invariants() {
        let c = rank_one_code();
        let id3 = FqMatrix::identity(f2(), 3);
        let id2 = FqMatrix::identity(f2(), 2);
        assert_eq!(c.transform(&id3, &id2, false).unwrap(), c);

        // permutation of rows
        let p = mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let t = c.transform(&p, &id2, false).unwrap();
        assert_eq!(t.dim(), c.dim());
        assert_eq!(t.rank_distance().unwrap(), c.rank_distance().unwrap());

        // singular X rejected; transpose with n != m rejected
        let singular = FqMatrix::zero(f2(), 3, 3);
        assert!(c.transform(&singular, &id2, false).is_err());
        assert!(c.transform(&id3, &id2, true).is_err());
    }

    #[test]
    fn column_polymatroid_of_full_code_is_free() {
        let idx = Arc::new(LatticeIndex::build(f2(), 2).unwrap());
        let full = RankMetricCode::full(f2(), 2, 2);
        let m = full.column_polymatroid(&idx).unwrap();
        for id in idx.all_ids() {
            assert_eq!(m.tau(id), 2 * idx.dim_of(id) as u64);
        }
        let zero = RankMetricCode::zero(f2(), 2, 2);
        assert!(zero.column_polymatroid(&idx).is_err());
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let c = rank_one_code();
        let text = c.to_text().unwrap();
        assert_eq!(RankMetricCode::parse_text(&text).unwrap(), c);

        assert!(RankMetricCode::parse_text("").is_err());
        assert!(RankMetricCode::parse_text("q 2 n 2 m 2 k 1\n10\n").is_err());
        // header/dimension mismatch: two dependent generators
        let bad = "q 2 n 1 m 2 k 2\n10\n\n10\n";
        assert!(RankMetricCode::parse_text(bad).is_err());
    }
}
