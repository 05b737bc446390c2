//! The q-polymatroid abstraction: exact integer rank tables with an explicit
//! common denominator, axiom verification, duality, uniform q-matroids, and
//! (scaling-)equivalence testing.
//!
//! A rank function ρ is stored as the integer table τ = D·ρ over the whole
//! subspace lattice. All comparisons are integer comparisons; no rounding can
//! occur anywhere.

use std::sync::Arc;

use num_integer::gcd;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::{LatticeIndex, SubspaceId};
use crate::linalg::{FqMatrix, PrimeField, Subspace};

/// Default cap on reported violations per verification pass.
pub const DEFAULT_VIOLATION_LIMIT: usize = 10;

/// Default node budget for the equivalence search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// One failed check, with enough data to reproduce it by hand.
#[derive(Debug, Clone)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
    pub lhs: i128,
    pub rhs: i128,
}

/// Outcome of a verification pass. Violations are data, not errors.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub checks_run: u64,
    pub truncated: bool,
    limit: usize,
}

impl AxiomReport {
    pub fn new(limit: usize) -> Self {
        AxiomReport {
            violations: Vec::new(),
            checks_run: 0,
            truncated: false,
            limit,
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records a violation unless the report is already full.
    pub fn record(&mut self, axiom: &str, witness: String, lhs: i128, rhs: i128) {
        if self.violations.len() >= self.limit {
            self.truncated = true;
            return;
        }
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
            lhs,
            rhs,
        });
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checks_run += other.checks_run;
        for v in other.violations {
            if self.violations.len() >= self.limit {
                self.truncated = true;
                break;
            }
            self.violations.push(v);
        }
        self.truncated |= other.truncated;
    }
}

/// A q-polymatroid on F_q^n, represented by ground parameters plus the exact
/// integer rank table τ with stored denominator D (so ρ = τ/D).
#[derive(Clone)]
pub struct QPolymatroid {
    index: Arc<LatticeIndex>,
    denom: u64,
    tau: Vec<u64>,
}

impl PartialEq for QPolymatroid {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field()
            && self.ground_dim() == other.ground_dim()
            && self.denom == other.denom
            && self.tau == other.tau
    }
}

impl Eq for QPolymatroid {}

impl std::fmt::Debug for QPolymatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QPolymatroid(q={}, n={}, D={}, rank={})",
            self.field().order(),
            self.ground_dim(),
            self.denom,
            self.rank_ratio()
        )
    }
}

impl QPolymatroid {
    /// Wraps a total rank table. Only totality and denominator positivity are
    /// validated here; the q-rank axioms are checked by [`verify_axioms`],
    /// which treats violations as data.
    ///
    /// [`verify_axioms`]: QPolymatroid::verify_axioms
    pub fn from_table(index: Arc<LatticeIndex>, denom: u64, tau: Vec<u64>) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        if tau.len() != index.count() {
            return Err(Error::InvalidInput(format!(
                "rank table has {} entries for a lattice of {} subspaces",
                tau.len(),
                index.count()
            )));
        }
        Ok(QPolymatroid { index, denom, tau })
    }

    /// The uniform q-matroid of rank k: ρ(V) = min{k, dim V}, D = 1.
    pub fn uniform(index: Arc<LatticeIndex>, k: usize) -> Result<Self> {
        if k > index.ambient_dim() {
            return Err(Error::InvalidInput(format!(
                "uniform rank {} exceeds ground dimension {}",
                k,
                index.ambient_dim()
            )));
        }
        let tau = index
            .all_ids()
            .map(|id| index.dim_of(id).min(k) as u64)
            .collect();
        Ok(QPolymatroid {
            index,
            denom: 1,
            tau,
        })
    }

    /// The trivial q-polymatroid (ρ identically zero).
    pub fn trivial(index: Arc<LatticeIndex>) -> Self {
        let tau = vec![0; index.count()];
        QPolymatroid {
            index,
            denom: 1,
            tau,
        }
    }

    pub fn index(&self) -> &Arc<LatticeIndex> {
        &self.index
    }

    pub fn field(&self) -> PrimeField {
        self.index.field()
    }

    pub fn ground_dim(&self) -> usize {
        self.index.ambient_dim()
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    #[inline]
    pub fn tau(&self, id: SubspaceId) -> u64 {
        self.tau[id as usize]
    }

    pub fn tau_table(&self) -> &[u64] {
        &self.tau
    }

    pub fn rho_ratio(&self, id: SubspaceId) -> Ratio<u64> {
        Ratio::new(self.tau(id), self.denom)
    }

    /// τ of a subspace given by value; errors if it lives elsewhere.
    pub fn tau_of(&self, v: &Subspace) -> Result<u64> {
        let id = self
            .index
            .id_of(v)
            .ok_or_else(|| Error::AmbientMismatch("subspace not in the ground lattice".into()))?;
        Ok(self.tau(id))
    }

    /// The rank ρ(E) of the whole ground space.
    pub fn rank_ratio(&self) -> Ratio<u64> {
        self.rho_ratio(self.index.full_id())
    }

    /// Checks (R1) on every subspace, (R2) on all cover pairs (sufficient by
    /// transitivity), and (R3) on all unordered pairs.
    pub fn verify_axioms(&self) -> AxiomReport {
        self.verify_axioms_with_limit(DEFAULT_VIOLATION_LIMIT)
    }

    pub fn verify_axioms_with_limit(&self, limit: usize) -> AxiomReport {
        let idx = &self.index;
        let mut report = AxiomReport::new(limit);
        for id in idx.all_ids() {
            report.checks_run += 1;
            let bound = self.denom * idx.dim_of(id) as u64;
            if self.tau(id) > bound {
                report.record(
                    "R1",
                    idx.subspace(id).key(),
                    self.tau(id) as i128,
                    bound as i128,
                );
            }
        }
        for id in idx.all_ids() {
            for &cover in idx.cover_ids(id) {
                report.checks_run += 1;
                if self.tau(id) > self.tau(cover) {
                    report.record(
                        "R2",
                        format!("{} <= {}", idx.subspace(id).key(), idx.subspace(cover).key()),
                        self.tau(id) as i128,
                        self.tau(cover) as i128,
                    );
                }
            }
        }
        let count = idx.count() as u32;
        'outer: for a in 0..count {
            for b in a..count {
                report.checks_run += 1;
                let join = idx.join_id(a, b);
                let meet = idx.meet_id(a, b);
                let lhs = self.tau(join) + self.tau(meet);
                let rhs = self.tau(a) + self.tau(b);
                if lhs > rhs {
                    report.record(
                        "R3",
                        format!("{}, {}", idx.subspace(a).key(), idx.subspace(b).key()),
                        lhs as i128,
                        rhs as i128,
                    );
                    if report.truncated {
                        break 'outer;
                    }
                }
            }
        }
        report
    }

    /// The smallest μ with μρ integer-valued, as a reduced positive rational.
    /// The trivial q-polymatroid has principal denominator 1.
    pub fn principal_denominator(&self) -> Ratio<u64> {
        let g = self.tau.iter().fold(0u64, |acc, &t| gcd(acc, t));
        if g == 0 {
            return Ratio::new(1, 1);
        }
        Ratio::new(self.denom, g)
    }

    /// The induced integer ρ-function w.r.t. the principal denominator:
    /// the table μ_principal · ρ, which has entrywise gcd 1 (or is zero).
    pub fn normalized_tau(&self) -> Vec<u64> {
        let mu = self.principal_denominator();
        self.tau
            .iter()
            .map(|&t| t * mu.numer() / (mu.denom() * self.denom))
            .collect()
    }

    /// Checks that μ is a denominator of ρ, i.e. μ ∈ μ_principal·N.
    pub fn check_denominator(&self, mu: Ratio<u64>) -> Result<()> {
        let principal = self.principal_denominator();
        let quotient = mu / principal;
        if !quotient.is_integer() || quotient.numer() == &0 {
            return Err(Error::NotADenominator {
                mu_num: *mu.numer(),
                mu_den: *mu.denom(),
                principal_num: *principal.numer(),
                principal_den: *principal.denom(),
            });
        }
        Ok(())
    }

    /// The table μρ for a denominator μ of ρ.
    pub fn tau_mu(&self, mu: Ratio<u64>) -> Result<Vec<u64>> {
        self.check_denominator(mu)?;
        Ok(self
            .tau
            .iter()
            .map(|&t| t * mu.numer() / (mu.denom() * self.denom))
            .collect())
    }

    /// The dual q-polymatroid w.r.t. the bilinear form given by `gram`
    /// (default: the standard dot product): ρ*(V) = dim V + ρ(V⊥) − ρ(E).
    pub fn dual(&self, gram: Option<&FqMatrix>) -> Result<QPolymatroid> {
        let idx = &self.index;
        let perp: Vec<SubspaceId> = match gram {
            None => idx.all_ids().map(|id| idx.perp_std_id(id)).collect(),
            Some(g) => {
                let mut table = Vec::with_capacity(idx.count());
                for id in idx.all_ids() {
                    let p = idx.subspace(id).orthogonal(g)?;
                    table.push(idx.id_of(&p).expect("orthogonal stays in the lattice"));
                }
                table
            }
        };
        let tau_full = self.tau(idx.full_id()) as i128;
        let mut tau = Vec::with_capacity(idx.count());
        for id in idx.all_ids() {
            let value = self.denom as i128 * idx.dim_of(id) as i128
                + self.tau(perp[id as usize]) as i128
                - tau_full;
            if value < 0 {
                return Err(Error::InvalidInput(
                    "dual rank is negative; the input table is not a q-polymatroid".into(),
                ));
            }
            tau.push(value as u64);
        }
        Ok(QPolymatroid {
            index: Arc::clone(idx),
            denom: self.denom,
            tau,
        })
    }

    /// For each dimension, the sorted multiset of τ values on that stratum.
    /// Invariant under equivalence.
    pub fn fingerprint(&self) -> Vec<Vec<u64>> {
        let idx = &self.index;
        (0..=idx.ambient_dim())
            .map(|k| {
                let mut values: Vec<u64> =
                    idx.stratum_ids(k).map(|id| self.tau(id)).collect();
                values.sort_unstable();
                values
            })
            .collect()
    }

    fn check_comparable(&self, other: &QPolymatroid) -> Result<()> {
        if self.field() != other.field() || self.ground_dim() != other.ground_dim() {
            return Err(Error::AmbientMismatch(format!(
                "comparing q-polymatroids on F_{}^{} and F_{}^{}",
                self.field().order(),
                self.ground_dim(),
                other.field().order(),
                other.ground_dim()
            )));
        }
        Ok(())
    }

    /// Equivalence test per the definition ρ₂(α(V)) = ρ₁(V): both operands
    /// are first rescaled to their principal denominators, then a
    /// backtracking search constructs α column by column.
    pub fn is_equivalent(&self, other: &QPolymatroid, budget: u64) -> Result<Equivalence> {
        self.check_comparable(other)?;
        let mu_a = self.principal_denominator();
        let mu_b = other.principal_denominator();
        if mu_a != mu_b {
            return Ok(Equivalence::NotEquivalent(
                EquivalenceCertificate::PrincipalDenominator {
                    left: (*mu_a.numer(), *mu_a.denom()),
                    right: (*mu_b.numer(), *mu_b.denom()),
                },
            ));
        }
        search_table_isomorphism(
            &self.index,
            &self.normalized_tau(),
            &other.normalized_tau(),
            budget,
        )
    }

    /// Scaling-equivalence test: the only admissible scalar is μ₁/μ₂, so the
    /// rescaled integer tables must be equivalent as tables.
    pub fn is_scaling_equivalent(&self, other: &QPolymatroid, budget: u64) -> Result<Equivalence> {
        self.check_comparable(other)?;
        search_table_isomorphism(
            &self.index,
            &self.normalized_tau(),
            &other.normalized_tau(),
            budget,
        )
    }

    /// Serializes in the QPM text format: header `q <q> n <n> D <D>`, then
    /// one `<key> <tau>` line per subspace in canonical order.
    pub fn to_text(&self) -> Result<String> {
        if self.field().order() > 9 {
            return Err(Error::UnsupportedTextField(self.field().order() as u64));
        }
        let mut out = format!(
            "q {} n {} D {}\n",
            self.field().order(),
            self.ground_dim(),
            self.denom
        );
        for id in self.index.all_ids() {
            out.push_str(&self.index.subspace(id).key());
            out.push(' ');
            out.push_str(&self.tau(id).to_string());
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse_text(input: &str) -> Result<QPolymatroid> {
        Self::parse_text_with_budget(input, crate::lattice::DEFAULT_LATTICE_BUDGET)
    }

    /// Loads a QPM file, validating totality of the table over the lattice.
    pub fn parse_text_with_budget(input: &str, budget: u64) -> Result<QPolymatroid> {
        let mut lines = crate::linalg::text::meaningful_lines(input);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty qpm file"))?;
        let fields = crate::linalg::text::header_fields(lineno, header, &["q", "n", "D"])?;
        let field = PrimeField::new(
            u32::try_from(fields[0]).map_err(|_| Error::NotPrime(fields[0]))?,
        )?;
        let n = fields[1] as usize;
        let denom = fields[2];
        let index = Arc::new(LatticeIndex::build_with_budget(field, n, budget)?);
        let mut tau: Vec<Option<u64>> = vec![None; index.count()];
        for (ln, line) in lines {
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| Error::parse(ln, 1, "expected `<key> <tau>`"))?;
            let sub = Subspace::parse_key(field, n, key.trim())
                .map_err(|e| Error::parse(ln, 1, format!("bad subspace key: {e}")))?;
            let id = index
                .id_of(&sub)
                .ok_or_else(|| Error::parse(ln, 1, "subspace outside the lattice"))?;
            if tau[id as usize].is_some() {
                return Err(Error::parse(ln, 1, format!("duplicate key `{key}`")));
            }
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, 1, format!("bad tau value `{value}`")))?;
            tau[id as usize] = Some(value);
        }
        let mut table = Vec::with_capacity(index.count());
        for (i, t) in tau.into_iter().enumerate() {
            match t {
                Some(v) => table.push(v),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "rank table is not total: missing key `{}`",
                        index.subspace(i as SubspaceId).key()
                    )))
                }
            }
        }
        QPolymatroid::from_table(index, denom, table)
    }
}

/// Outcome of an equivalence test.
#[derive(Debug, Clone)]
pub enum Equivalence {
    /// Equivalent; `iso` maps row vectors by x ↦ x·M.
    Equivalent { iso: FqMatrix },
    NotEquivalent(EquivalenceCertificate),
    /// The node budget ran out before the search finished.
    Unknown,
}

impl Equivalence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Equivalence::NotEquivalent(_))
    }
}

#[derive(Debug, Clone)]
pub enum EquivalenceCertificate {
    /// Principal denominators differ, so the rank value sets already differ.
    PrincipalDenominator { left: (u64, u64), right: (u64, u64) },
    /// The multisets of rank values on this stratum differ.
    Fingerprint { dim: usize },
    /// The backtracking search exhausted all candidate isomorphisms.
    SearchExhausted,
}

/// Backtracking search for a lattice isomorphism carrying the integer table
/// `ta` to `tb`, built by choosing images of e_1, ..., e_n. A partial choice
/// is pruned as soon as any subspace of the partial span violates τ-equality.
fn search_table_isomorphism(
    index: &Arc<LatticeIndex>,
    ta: &[u64],
    tb: &[u64],
    budget: u64,
) -> Result<Equivalence> {
    let n = index.ambient_dim();
    let field = index.field();
    // per-dimension fingerprints decide most negatives instantly
    for k in 0..=n {
        let mut fa: Vec<u64> = index.stratum_ids(k).map(|id| ta[id as usize]).collect();
        let mut fb: Vec<u64> = index.stratum_ids(k).map(|id| tb[id as usize]).collect();
        fa.sort_unstable();
        fb.sort_unstable();
        if fa != fb {
            return Ok(Equivalence::NotEquivalent(
                EquivalenceCertificate::Fingerprint { dim: k },
            ));
        }
    }

    // For depth k (after choosing images of e_1..e_k): the subspaces of
    // <e_1..e_k> not contained in <e_1..e_{k-1}>, as (domain id, coefficient
    // basis) pairs. Checking only these per level covers the whole sublattice.
    let mut new_at_depth: Vec<Vec<(SubspaceId, FqMatrix)>> = Vec::with_capacity(n + 1);
    new_at_depth.push(Vec::new());
    for k in 1..=n {
        let mut list = Vec::new();
        for r in 1..=k {
            for coeffs in crate::lattice::enumerate_rref_bases(field, k, r) {
                // contained in <e_1..e_{k-1}> iff the last coordinate vanishes
                if (0..coeffs.rows()).all(|i| coeffs.get(i, k - 1) == 0) {
                    continue;
                }
                let mut padded_rows = Vec::with_capacity(coeffs.rows());
                for i in 0..coeffs.rows() {
                    let mut row = coeffs.row(i).to_vec();
                    row.resize(n, 0);
                    padded_rows.push(row);
                }
                let domain = Subspace::from_rref_unchecked(
                    FqMatrix::from_rows(field, &padded_rows).expect("uniform rows"),
                );
                let id = index.id_of(&domain).expect("padded RREF is canonical");
                list.push((id, coeffs));
            }
        }
        new_at_depth.push(list);
    }

    let q = field.order() as u64;
    let total_vectors = (q as u128).pow(n as u32);
    let mut nodes_left = budget;
    let mut images: Vec<Vec<u32>> = Vec::with_capacity(n);

    fn decode_vector(field: PrimeField, mut c: u128, n: usize) -> Vec<u32> {
        let q = field.order() as u128;
        let mut v = vec![0u32; n];
        for slot in v.iter_mut() {
            *slot = (c % q) as u32;
            c /= q;
        }
        v
    }

    // depth-first over candidate image vectors, in counting order
    fn descend(
        index: &LatticeIndex,
        field: PrimeField,
        ta: &[u64],
        tb: &[u64],
        new_at_depth: &[Vec<(SubspaceId, FqMatrix)>],
        images: &mut Vec<Vec<u32>>,
        total_vectors: u128,
        nodes_left: &mut u64,
    ) -> Result<Option<FqMatrix>> {
        let n = index.ambient_dim();
        let k = images.len();
        if k == n {
            return Ok(Some(FqMatrix::from_rows(field, images)?));
        }
        'candidates: for c in 1..total_vectors {
            let v = decode_vector(field, c, n);
            if *nodes_left == 0 {
                return Err(Error::Capacity {
                    what: "equivalence search nodes",
                    count: 0,
                    budget: 0,
                });
            }
            *nodes_left -= 1;
            // candidate must extend the partial basis
            images.push(v);
            let partial = FqMatrix::from_rows(field, images)?;
            if partial.rank() != k + 1 {
                images.pop();
                continue;
            }
            for (domain_id, coeffs) in &new_at_depth[k + 1] {
                let image_rows = coeffs.mul(&partial)?;
                let image = Subspace::row_space(&image_rows, n);
                let image_id = index.id_of(&image).expect("image stays in the lattice");
                if tb[image_id as usize] != ta[*domain_id as usize] {
                    images.pop();
                    continue 'candidates;
                }
            }
            if let Some(found) = descend(
                index,
                field,
                ta,
                tb,
                new_at_depth,
                images,
                total_vectors,
                nodes_left,
            )? {
                return Ok(Some(found));
            }
            images.pop();
        }
        Ok(None)
    }

    match descend(
        index,
        field,
        ta,
        tb,
        &new_at_depth,
        &mut images,
        total_vectors,
        &mut nodes_left,
    ) {
        Ok(Some(iso)) => Ok(Equivalence::Equivalent { iso }),
        Ok(None) => Ok(Equivalence::NotEquivalent(
            EquivalenceCertificate::SearchExhausted,
        )),
        Err(Error::Capacity { .. }) => Ok(Equivalence::Unknown),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(n: usize) -> Arc<LatticeIndex> {
        Arc::new(LatticeIndex::build(PrimeField::new(2).unwrap(), n).unwrap())
    }

    #[test]
    fn uniform_passes_axioms() {
        let m = QPolymatroid::uniform(index(4), 2).unwrap();
        let report = m.verify_axioms();
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(m.rank_ratio(), Ratio::new(2, 1));
        assert!(QPolymatroid::uniform(index(3), 4).is_err());
    }

    #[test]
    fn uniform_edge_cases() {
        let trivial = QPolymatroid::uniform(index(3), 0).unwrap();
        assert_eq!(trivial, QPolymatroid::trivial(index(3)));
        assert_eq!(trivial.principal_denominator(), Ratio::new(1, 1));

        let free = QPolymatroid::uniform(index(3), 3).unwrap();
        for id in free.index().all_ids() {
            assert_eq!(free.tau(id), free.index().dim_of(id) as u64);
        }
    }

    #[test]
    fn raised_line_breaks_r1() {
        let idx = index(4);
        let m = QPolymatroid::uniform(Arc::clone(&idx), 2).unwrap();
        let mut tau = m.tau_table().to_vec();
        let line = idx.stratum_ids(1).next().unwrap();
        tau[line as usize] = 2; // above D * dim = 1
        let bad = QPolymatroid::from_table(idx, 1, tau).unwrap();
        let report = bad.verify_axioms();
        assert!(!report.ok());
        assert_eq!(report.violations[0].axiom, "R1");
        assert_eq!(report.violations[0].witness, bad.index().subspace(line).key());
    }

    #[test]
    fn principal_denominator_examples() {
        // integer-valued tables have principal denominator 1
        let m = QPolymatroid::uniform(index(3), 2).unwrap();
        assert_eq!(m.principal_denominator(), Ratio::new(1, 1));

        // doubling tau and D leaves rho unchanged
        let idx = index(3);
        let tau: Vec<u64> = m.tau_table().iter().map(|&t| 2 * t).collect();
        let doubled = QPolymatroid::from_table(idx, 2, tau).unwrap();
        assert_eq!(doubled.principal_denominator(), Ratio::new(1, 1));
        assert_eq!(doubled.normalized_tau(), m.normalized_tau());

        // a genuinely rational principal denominator: tau = 2*min(dim,1), D = 3
        let idx = index(2);
        let tau: Vec<u64> = idx
            .all_ids()
            .map(|id| 2 * idx.dim_of(id).min(1) as u64)
            .collect();
        let m = QPolymatroid::from_table(idx, 3, tau).unwrap();
        assert_eq!(m.principal_denominator(), Ratio::new(3, 2));
    }

    #[test]
    fn dual_of_uniform() {
        for n in 0..=5 {
            let idx = index(n);
            for k in 0..=n {
                let u = QPolymatroid::uniform(Arc::clone(&idx), k).unwrap();
                let dual = u.dual(None).unwrap();
                let expected = QPolymatroid::uniform(Arc::clone(&idx), n - k).unwrap();
                assert_eq!(dual, expected, "uniform({k},{n})");
                assert_eq!(dual.dual(None).unwrap(), u);
            }
        }
    }

    #[test]
    fn dual_of_trivial_is_free() {
        let m = QPolymatroid::trivial(index(3));
        let dual = m.dual(None).unwrap();
        for id in dual.index().all_ids() {
            assert_eq!(dual.tau(id), dual.index().dim_of(id) as u64);
        }
        assert!(dual.verify_axioms().ok());
    }

    #[test]
    fn denominator_checks() {
        let m = QPolymatroid::uniform(index(3), 2).unwrap();
        assert!(m.check_denominator(Ratio::new(1, 1)).is_ok());
        assert!(m.check_denominator(Ratio::new(5, 1)).is_ok());
        let err = m.check_denominator(Ratio::new(1, 2)).unwrap_err();
        assert!(matches!(err, Error::NotADenominator { .. }));
    }

    #[test]
    fn fingerprint_of_uniform() {
        let m = QPolymatroid::uniform(index(4), 2).unwrap();
        let fp = m.fingerprint();
        assert_eq!(fp[1], vec![1; 15]);
        assert_eq!(fp[2], vec![2; 35]);
    }

    #[test]
    fn self_equivalence_finds_identity() {
        let m = QPolymatroid::uniform(index(3), 2).unwrap();
        match m.is_equivalent(&m, DEFAULT_SEARCH_BUDGET).unwrap() {
            Equivalence::Equivalent { iso } => assert!(iso.is_invertible()),
            other => panic!("expected equivalence, got {other:?}"),
        }
    }

    #[test]
    fn relabeled_table_is_equivalent() {
        // permute coordinates of a non-uniform table and check the search finds it
        let idx = index(3);
        let special = Subspace::span(idx.field(), 3, &[vec![1, 0, 0]]).unwrap();
        let special_id = idx.id_of(&special).unwrap();
        let tau: Vec<u64> = idx
            .all_ids()
            .map(|id| {
                if id == special_id {
                    0
                } else {
                    idx.dim_of(id).min(2) as u64
                }
            })
            .collect();
        // not monotone-correct in general, but fine as a table for the search;
        // relabel e1 <-> e3 via the permuted table
        let m1 = QPolymatroid::from_table(Arc::clone(&idx), 1, tau.clone()).unwrap();
        let other = Subspace::span(idx.field(), 3, &[vec![0, 0, 1]]).unwrap();
        let other_id = idx.id_of(&other).unwrap();
        let mut tau2 = tau.clone();
        tau2.swap(special_id as usize, other_id as usize);
        let m2 = QPolymatroid::from_table(Arc::clone(&idx), 1, tau2).unwrap();
        assert!(m1.is_equivalent(&m2, DEFAULT_SEARCH_BUDGET).unwrap().is_yes());
    }

    #[test]
    fn scaling_equivalence_after_normalization() {
        // uniform(1,2) vs tau = 2*min(dim,1) with D = 2: identical rho
        let idx = index(2);
        let u = QPolymatroid::uniform(Arc::clone(&idx), 1).unwrap();
        let tau: Vec<u64> = idx
            .all_ids()
            .map(|id| 2 * idx.dim_of(id).min(1) as u64)
            .collect();
        let m = QPolymatroid::from_table(Arc::clone(&idx), 2, tau).unwrap();
        assert!(u.is_equivalent(&m, DEFAULT_SEARCH_BUDGET).unwrap().is_yes());
        assert!(u
            .is_scaling_equivalent(&m, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .is_yes());

        // uniform(1,2) vs uniform(2,2): scaling-equivalent only if some scalar
        // works; mu1 = mu2 = 1 forces a = 1, and the tables differ
        let u2 = QPolymatroid::uniform(Arc::clone(&idx), 2).unwrap();
        assert!(u
            .is_scaling_equivalent(&u2, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .is_no());
    }

    #[test]
    fn mismatched_ground_spaces_are_an_error() {
        let a = QPolymatroid::uniform(index(3), 1).unwrap();
        let b = QPolymatroid::uniform(index(4), 1).unwrap();
        assert!(a.is_equivalent(&b, 1000).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let m = QPolymatroid::uniform(index(3), 2).unwrap();
        let text = m.to_text().unwrap();
        let back = QPolymatroid::parse_text(&text).unwrap();
        assert_eq!(back, m);
        assert!(text.starts_with("q 2 n 3 D 1\n- 0\n"));
    }

    #[test]
    fn text_totality_validated() {
        let m = QPolymatroid::uniform(index(2), 1).unwrap();
        let text = m.to_text().unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines.remove(2);
        let broken = lines.join("\n");
        assert!(QPolymatroid::parse_text(&broken).is_err());
    }
}
