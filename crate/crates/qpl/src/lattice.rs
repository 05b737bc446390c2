//! Exhaustive, canonical enumeration of the subspace lattice of F_q^n and of
//! relative sublattices (subspaces of a given space, hyperplanes, covers).
//!
//! [`LatticeIndex`] materializes every subspace once, in canonical order
//! (dimension first, then digit-lexicographic on the RREF basis), and hands
//! out dense integer ids. The verification passes in the rest of the crate
//! are loops over those ids; the index lazily caches the Hasse diagram, the
//! standard-dot orthogonal permutation, and (for small lattices) the full
//! join table so that sums and intersections become table lookups.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{FqMatrix, PrimeField, Subspace};

pub type SubspaceId = u32;

/// Default guard on the total number of subspaces enumerated per lattice.
pub const DEFAULT_LATTICE_BUDGET: u64 = 10_000_000;

/// Lattices up to this many subspaces get a dense join table (u16 ids).
const JOIN_TABLE_MAX: usize = 4096;

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// F_q^n, computed by the exact product formula. Returns 0 when k > n.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Multiply by (q^(n-k+i) - 1) / (q^i - 1); the partial products are
        // themselves Gaussian binomials, so the division is exact.
        let num = q
            .checked_pow(
                u32::try_from(n - k + i).map_err(|_| Error::Overflow("gaussian binomial"))?,
            )
            .ok_or(Error::Overflow("gaussian binomial"))?
            - 1;
        let den = q.pow(u32::try_from(i).unwrap()) - 1;
        acc = acc
            .checked_mul(num)
            .ok_or(Error::Overflow("gaussian binomial"))?
            / den;
    }
    Ok(acc)
}

/// Enumerates all RREF bases of k-dimensional subspaces of F_q^d by pivot
/// pattern: choose the pivot columns, then run through the free entries.
/// Every matrix produced is canonical, so no deduplication is needed.
pub(crate) fn enumerate_rref_bases(field: PrimeField, d: usize, k: usize) -> Vec<FqMatrix> {
    if k > d {
        return Vec::new();
    }
    if k == 0 {
        return vec![FqMatrix::zero(field, 0, d)];
    }
    let q = field.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let mut is_pivot = vec![false; d];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..d {
                if !is_pivot[j] {
                    free.push((i, j));
                }
            }
        }
        let mut base = FqMatrix::zero(field, k, d);
        for (i, &p) in pivots.iter().enumerate() {
            base.set(i, p, 1);
        }
        let mut counters = vec![0u32; free.len()];
        loop {
            let mut m = base.clone();
            for (t, &(i, j)) in free.iter().enumerate() {
                m.set(i, j, counters[t]);
            }
            out.push(m);
            // increment the mixed-radix counter
            let mut t = 0;
            loop {
                if t == counters.len() {
                    break;
                }
                counters[t] += 1;
                if counters[t] < q {
                    break;
                }
                counters[t] = 0;
                t += 1;
            }
            if t == counters.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] != i + d - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        pivots[i] += 1;
        for t in i + 1..k {
            pivots[t] = pivots[t - 1] + 1;
        }
    }
}

/// All k-dimensional subspaces of `v`, in canonical order. The count equals
/// the Gaussian binomial `[dim v choose k]_q`. Enumeration runs in the
/// coordinates of v's basis and maps back into the ambient space.
pub fn subspaces_of(v: &Subspace, k: usize) -> Vec<Subspace> {
    let d = v.dim();
    if k > d {
        return Vec::new();
    }
    let n = v.ambient_dim();
    let field = v.field();
    let mut out: Vec<Subspace> = enumerate_rref_bases(field, d, k)
        .into_iter()
        .map(|coeffs| {
            let rows = coeffs.mul(v.basis()).expect("shape agreement");
            Subspace::row_space(&rows, n)
        })
        .collect();
    out.sort();
    out
}

/// The hyperplanes (codimension-1 subspaces) of `v`.
pub fn hyperplanes_of(v: &Subspace) -> Vec<Subspace> {
    if v.dim() == 0 {
        return Vec::new();
    }
    subspaces_of(v, v.dim() - 1)
}

/// All w with v ≤ w ≤ within and dim w = dim v + 1, in canonical order.
pub fn covers_of(v: &Subspace, within: &Subspace) -> Result<Vec<Subspace>> {
    if !within.contains(v)? {
        return Err(Error::AmbientMismatch(
            "covers_of requires v to be contained in the enclosing space".into(),
        ));
    }
    let mut out = Vec::new();
    for line in subspaces_of(within, 1) {
        if !v.contains(&line)? {
            out.push(v.sum(&line)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The complete subspace lattice of F_q^n with canonical ids.
pub struct LatticeIndex {
    field: PrimeField,
    n: usize,
    subspaces: Vec<Subspace>,
    dims: Vec<u8>,
    offsets: Vec<usize>,
    ids: HashMap<Subspace, SubspaceId>,
    hyperplanes: OnceLock<Vec<Vec<SubspaceId>>>,
    covers: OnceLock<Vec<Vec<SubspaceId>>>,
    lines_within: OnceLock<Vec<Vec<SubspaceId>>>,
    perp_std: OnceLock<Vec<SubspaceId>>,
    join_table: OnceLock<Option<Vec<u16>>>,
}

impl LatticeIndex {
    pub fn build(field: PrimeField, n: usize) -> Result<Self> {
        Self::build_with_budget(field, n, DEFAULT_LATTICE_BUDGET)
    }

    pub fn build_with_budget(field: PrimeField, n: usize, budget: u64) -> Result<Self> {
        let q = field.order() as u64;
        let mut total: u128 = 0;
        for k in 0..=n {
            total += gaussian_binomial(n as u64, k as u64, q)?;
        }
        if total > budget as u128 {
            return Err(Error::Capacity {
                what: "subspace count",
                count: total,
                budget: budget as u128,
            });
        }
        let mut subspaces = Vec::with_capacity(total as usize);
        let mut offsets = Vec::with_capacity(n + 2);
        for k in 0..=n {
            offsets.push(subspaces.len());
            let mut stratum: Vec<Subspace> = enumerate_rref_bases(field, n, k)
                .into_iter()
                .map(Subspace::from_rref_unchecked)
                .collect();
            stratum.sort();
            debug_assert_eq!(
                stratum.len() as u128,
                gaussian_binomial(n as u64, k as u64, q)?
            );
            subspaces.extend(stratum);
        }
        offsets.push(subspaces.len());
        let dims = subspaces.iter().map(|s| s.dim() as u8).collect();
        let ids = subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as SubspaceId))
            .collect();
        Ok(LatticeIndex {
            field,
            n,
            subspaces,
            dims,
            offsets,
            ids,
            hyperplanes: OnceLock::new(),
            covers: OnceLock::new(),
            lines_within: OnceLock::new(),
            perp_std: OnceLock::new(),
            join_table: OnceLock::new(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspace(&self, id: SubspaceId) -> &Subspace {
        &self.subspaces[id as usize]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn id_of(&self, s: &Subspace) -> Option<SubspaceId> {
        self.ids.get(s).copied()
    }

    #[inline]
    pub fn dim_of(&self, id: SubspaceId) -> usize {
        self.dims[id as usize] as usize
    }

    pub fn zero_id(&self) -> SubspaceId {
        0
    }

    pub fn full_id(&self) -> SubspaceId {
        (self.count() - 1) as SubspaceId
    }

    /// Ids of the dimension-k stratum: a contiguous canonical range.
    pub fn stratum_ids(&self, k: usize) -> std::ops::Range<SubspaceId> {
        self.offsets[k] as SubspaceId..self.offsets[k + 1] as SubspaceId
    }

    pub fn stratum(&self, k: usize) -> &[Subspace] {
        &self.subspaces[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn all_ids(&self) -> std::ops::Range<SubspaceId> {
        0..self.count() as SubspaceId
    }

    /// Hyperplane ids (down-edges of the Hasse diagram), cached on first use.
    pub fn hyperplane_ids(&self, id: SubspaceId) -> &[SubspaceId] {
        let table = self.hyperplanes.get_or_init(|| {
            self.subspaces
                .iter()
                .map(|s| {
                    hyperplanes_of(s)
                        .iter()
                        .map(|h| self.ids[h])
                        .collect::<Vec<_>>()
                })
                .collect()
        });
        &table[id as usize]
    }

    /// Cover ids within the full space (up-edges of the Hasse diagram).
    pub fn cover_ids(&self, id: SubspaceId) -> &[SubspaceId] {
        let table = self.covers.get_or_init(|| {
            let mut up: Vec<Vec<SubspaceId>> = vec![Vec::new(); self.count()];
            for w in self.all_ids() {
                for &h in self.hyperplane_ids(w) {
                    up[h as usize].push(w);
                }
            }
            up
        });
        &table[id as usize]
    }

    /// Ids of the lines (1-dimensional subspaces) contained in each subspace.
    pub fn line_ids_within(&self, id: SubspaceId) -> &[SubspaceId] {
        let table = self.lines_within.get_or_init(|| {
            self.subspaces
                .iter()
                .map(|s| {
                    subspaces_of(s, 1)
                        .iter()
                        .map(|l| self.ids[l])
                        .collect::<Vec<_>>()
                })
                .collect()
        });
        &table[id as usize]
    }

    /// Orthogonal complement w.r.t. the standard dot product, as a lattice
    /// permutation.
    pub fn perp_std_id(&self, id: SubspaceId) -> SubspaceId {
        let table = self.perp_std.get_or_init(|| {
            self.subspaces
                .iter()
                .map(|s| self.ids[&s.orthogonal_std()])
                .collect()
        });
        table[id as usize]
    }

    fn join_lookup(&self) -> Option<&Vec<u16>> {
        self.join_table
            .get_or_init(|| {
                let count = self.count();
                if count > JOIN_TABLE_MAX {
                    return None;
                }
                let mut table = vec![0u16; count * count];
                // joins with the zero space and with lines, by linear algebra
                for v in 0..count {
                    table[v * count] = v as u16;
                    table[v] = v as u16;
                }
                for l in self.stratum_ids(1) {
                    for v in self.all_ids() {
                        let s = self.subspaces[v as usize]
                            .sum(&self.subspaces[l as usize])
                            .expect("same lattice");
                        let id = self.ids[&s];
                        table[v as usize * count + l as usize] = id as u16;
                    }
                }
                // higher strata: W = prefix ⊕ <last basis row>, so
                // join(V, W) = join(join(V, prefix), last line)
                for w in self.all_ids() {
                    let d = self.dim_of(w);
                    if d < 2 {
                        continue;
                    }
                    let sub = &self.subspaces[w as usize];
                    let basis = sub.basis();
                    let prefix_rows: Vec<Vec<u32>> =
                        (0..d - 1).map(|i| basis.row(i).to_vec()).collect();
                    let prefix = Subspace::from_rref_unchecked(
                        FqMatrix::from_rows(self.field, &prefix_rows).expect("uniform rows"),
                    );
                    let last_line = Subspace::from_rref_unchecked(
                        FqMatrix::from_rows(self.field, &[basis.row(d - 1).to_vec()])
                            .expect("uniform rows"),
                    );
                    let h = self.ids[&prefix] as usize;
                    let l = self.ids[&last_line] as usize;
                    for v in 0..count {
                        let vh = table[v * count + h] as usize;
                        table[v * count + w as usize] = table[vh * count + l];
                    }
                }
                Some(table)
            })
            .as_ref()
    }

    /// The id of a + b. Falls back to linear algebra for lattices too large
    /// for the dense join table.
    #[inline]
    pub fn join_id(&self, a: SubspaceId, b: SubspaceId) -> SubspaceId {
        match self.join_lookup() {
            Some(table) => table[a as usize * self.count() + b as usize] as SubspaceId,
            None => {
                let s = self.subspaces[a as usize]
                    .sum(&self.subspaces[b as usize])
                    .expect("same lattice");
                self.ids[&s]
            }
        }
    }

    /// The id of a ∩ b, via the double orthogonal: (a⊥ + b⊥)⊥.
    #[inline]
    pub fn meet_id(&self, a: SubspaceId, b: SubspaceId) -> SubspaceId {
        self.perp_std_id(self.join_id(self.perp_std_id(a), self.perp_std_id(b)))
    }

    /// Containment test a ≤ b through the join.
    #[inline]
    pub fn leq(&self, a: SubspaceId, b: SubspaceId) -> bool {
        self.join_id(a, b) == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 2, 2).unwrap(), 155);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(3, 2, 2).unwrap(), 7);
        assert_eq!(gaussian_binomial(7, 0, 3).unwrap(), 1);
        assert_eq!(gaussian_binomial(2, 5, 2).unwrap(), 0);
        assert_eq!(gaussian_binomial(4, 2, 3).unwrap(), 130);
    }

    #[test]
    fn build_small_lattices() {
        let idx = LatticeIndex::build(f2(), 3).unwrap();
        assert_eq!(idx.count(), 16);
        let sizes: Vec<usize> = (0..=3).map(|k| idx.stratum(k).len()).collect();
        assert_eq!(sizes, vec![1, 7, 7, 1]);

        let idx5 = LatticeIndex::build(f2(), 5).unwrap();
        assert_eq!(idx5.count(), 374);

        let idx0 = LatticeIndex::build(f2(), 0).unwrap();
        assert_eq!(idx0.count(), 1);
        assert_eq!(idx0.subspace(0), &Subspace::zero(f2(), 0));
    }

    #[test]
    fn stratum_sizes_match_gaussian_binomials() {
        let f3 = PrimeField::new(3).unwrap();
        let idx = LatticeIndex::build(f3, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(
                idx.stratum(k).len() as u128,
                gaussian_binomial(3, k as u64, 3).unwrap()
            );
        }
    }

    #[test]
    fn budget_guard() {
        let err = LatticeIndex::build_with_budget(f2(), 5, 100).unwrap_err();
        match err {
            Error::Capacity { count, budget, .. } => {
                assert_eq!(count, 374);
                assert_eq!(budget, 100);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn deterministic_build() {
        let a = LatticeIndex::build(f2(), 4).unwrap();
        let b = LatticeIndex::build(f2(), 4).unwrap();
        assert_eq!(a.subspaces(), b.subspaces());
    }

    #[test]
    fn relative_enumeration() {
        let full = Subspace::full(f2(), 3);
        assert_eq!(hyperplanes_of(&full).len(), 7);

        let v = Subspace::span(f2(), 5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]]).unwrap();
        assert_eq!(subspaces_of(&v, v.dim()), vec![v.clone()]);
        assert_eq!(subspaces_of(&v, 2).len(), 7);
        for w in subspaces_of(&v, 2) {
            assert!(v.contains(&w).unwrap());
        }

        let zero = Subspace::zero(f2(), 5);
        let covers = covers_of(&zero, &Subspace::full(f2(), 5)).unwrap();
        assert_eq!(covers.len(), 31);
        assert!(covers.iter().all(|w| w.dim() == 1));

        // containment violation
        let outside = Subspace::span(f2(), 5, &[vec![0, 0, 0, 1, 0]]).unwrap();
        assert!(covers_of(&outside, &v).is_err());
    }

    #[test]
    fn hyperplane_counts_per_stratum() {
        let idx = LatticeIndex::build(f2(), 4).unwrap();
        for k in 1..=4 {
            let expected = gaussian_binomial(k as u64, k as u64 - 1, 2).unwrap() as usize;
            for id in idx.stratum_ids(k) {
                let hs = idx.hyperplane_ids(id);
                assert_eq!(hs.len(), expected);
                for &h in hs {
                    assert_eq!(idx.dim_of(h), k - 1);
                }
            }
        }
    }

    #[test]
    fn join_meet_tables_agree_with_linalg() {
        let idx = LatticeIndex::build(f2(), 4).unwrap();
        for a in idx.all_ids() {
            for b in idx.all_ids() {
                let sum = idx.subspace(a).sum(idx.subspace(b)).unwrap();
                assert_eq!(idx.join_id(a, b), idx.id_of(&sum).unwrap());
                let meet = idx.subspace(a).intersect(idx.subspace(b)).unwrap();
                assert_eq!(idx.meet_id(a, b), idx.id_of(&meet).unwrap());
                // modular identity
                assert_eq!(
                    idx.dim_of(idx.join_id(a, b)) + idx.dim_of(idx.meet_id(a, b)),
                    idx.dim_of(a) + idx.dim_of(b)
                );
            }
        }
    }

    #[test]
    fn perp_is_an_involution() {
        let idx = LatticeIndex::build(f2(), 4).unwrap();
        for id in idx.all_ids() {
            let p = idx.perp_std_id(id);
            assert_eq!(idx.perp_std_id(p), id);
            assert_eq!(idx.dim_of(id) + idx.dim_of(p), 4);
        }
    }
}
