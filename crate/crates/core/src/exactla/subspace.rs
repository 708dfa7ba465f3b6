use std::cmp::Ordering;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, Scalar};

use super::matrix::{axpy, MatrixGF, Rref};

/// A subspace held through its reduced row echelon basis.
///
/// The RREF basis is unique, so two values are equal as subspaces exactly
/// when their basis matrices are entrywise equal. Ordering is by ambient
/// dimension, then dimension, then row-major lexicographic order of the basis
/// encodings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceRREF {
    basis: MatrixGF,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for SubspaceRREF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .basis
            .row_iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "<{}>", rows.join("; "))
    }
}

impl Ord for SubspaceRREF {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient()
            .cmp(&other.ambient())
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl PartialOrd for SubspaceRREF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SubspaceRREF {
    pub(crate) fn from_rref(r: Rref) -> SubspaceRREF {
        let keep: Vec<usize> = (0..r.rank).collect();
        SubspaceRREF { basis: r.matrix.select_rows(&keep), pivots: r.pivots }
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    pub(crate) fn from_rref_unchecked(basis: MatrixGF, pivots: Vec<usize>) -> SubspaceRREF {
        SubspaceRREF { basis, pivots }
    }

    /// Span of the given vectors.
    pub fn span<V: AsRef<[Scalar]>>(field: &FieldSpec, ambient: usize, vectors: &[V]) -> Result<SubspaceRREF> {
        let m = MatrixGF::from_rows(field, ambient, vectors)?;
        Ok(SubspaceRREF::from_rref(m.rref()))
    }

    pub fn zero(field: &FieldSpec, ambient: usize) -> SubspaceRREF {
        SubspaceRREF { basis: MatrixGF::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> SubspaceRREF {
        SubspaceRREF { basis: MatrixGF::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// Columns that are not pivots; these coordinates parametrize the
    /// chosen complement used for quotients.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in ambient {}", v.len(), self.ambient())));
        }
        Ok(())
    }

    /// Reduces `v` modulo the subspace: the unique representative of
    /// `v + self` vanishing on every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v)?;
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if !c.is_zero() {
                axpy(f, &mut out, f.neg(c), self.basis.row(i));
            }
        }
        Ok(out)
    }

    /// Coordinates of `v + self` in the quotient, read off the non-pivot
    /// positions of the reduced representative.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let r = self.reduce(v)?;
        Ok(self.non_pivots().into_iter().map(|c| r[c]).collect())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|s| s.is_zero()))
    }

    pub fn contains_subspace(&self, other: &SubspaceRREF) -> Result<bool> {
        for r in other.basis.row_iter() {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The vector `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![Scalar::ZERO; self.ambient()];
        for (i, &c) in coeffs.iter().enumerate() {
            axpy(f, &mut out, c, self.basis.row(i));
        }
        out
    }

    /// Coefficients of `v` over the basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p]).collect()))
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &SubspaceRREF) -> Result<SubspaceRREF> {
        let m = self.basis.vstack(&other.basis)?;
        Ok(SubspaceRREF::from_rref(m.rref()))
    }

    /// Intersection of two subspaces.
    pub fn intersect(&self, other: &SubspaceRREF) -> Result<SubspaceRREF> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch("subspaces in different ambients".into()));
        }
        // c . B lies in `other` iff the reduced rows combine to zero.
        let f = self.field();
        let reduced: Vec<Vec<Scalar>> = self.basis.row_iter().map(|r| other.reduce(r)).collect::<Result<_>>()?;
        let red = MatrixGF::from_rows(f, self.ambient(), &reduced)?;
        let coeffs = red.transpose().kernel();
        self.image_of_coefficients(&coeffs)
    }

    /// Maps a subspace of coefficient space `F^dim` into the ambient space.
    pub fn image_of_coefficients(&self, coeffs: &SubspaceRREF) -> Result<SubspaceRREF> {
        if coeffs.ambient() != self.dim() {
            return Err(Error::DimensionMismatch("coefficient space has wrong dimension".into()));
        }
        let vecs: Vec<Vec<Scalar>> = coeffs.basis.row_iter().map(|c| self.combine(c)).collect();
        SubspaceRREF::span(self.field(), self.ambient(), &vecs)
    }

    /// All nonzero vectors, in lexicographic order of coefficient tuples.
    pub fn vectors(&self) -> SubspaceVectors<'_> {
        SubspaceVectors { space: self, counter: vec![0; self.dim()], done: self.dim() == 0, canonical: false }
    }

    /// One canonical representative per projective point: the vectors whose
    /// first nonzero basis coefficient is 1.
    pub fn canonical_points(&self) -> SubspaceVectors<'_> {
        SubspaceVectors { space: self, counter: vec![0; self.dim()], done: self.dim() == 0, canonical: true }
    }
}

/// Iterator over nonzero vectors of a subspace.
pub struct SubspaceVectors<'a> {
    space: &'a SubspaceRREF,
    counter: Vec<u32>,
    done: bool,
    canonical: bool,
}

impl SubspaceVectors<'_> {
    fn advance(&mut self) -> bool {
        let q = self.space.field().q();
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn accept(&self) -> bool {
        match self.counter.iter().find(|&&c| c != 0) {
            None => false,
            Some(&lead) => !self.canonical || lead == 1,
        }
    }
}

impl Iterator for SubspaceVectors<'_> {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                return None;
            }
            if self.accept() {
                let coeffs: Vec<Scalar> = self.counter.iter().map(|&c| Scalar::from_rep(c)).collect();
                return Some(self.space.combine(&coeffs));
            }
        }
        None
    }
}

/// Visits every `k`-subspace of `F^m` in increasing [`SubspaceRREF`] order,
/// stopping early when the visitor breaks.
pub fn for_each_subspace<B>(
    field: &FieldSpec,
    m: usize,
    k: usize,
    mut visit: impl FnMut(&SubspaceRREF) -> ControlFlow<B>,
) -> Option<B> {
    if k > m {
        return None;
    }
    if k == 0 {
        return match visit(&SubspaceRREF::zero(field, m)) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        };
    }
    let mut state = SubspaceDfs {
        field: field.clone(),
        m,
        k,
        entries: vec![0u32; k * m],
        pivots: vec![usize::MAX; k],
    };
    match state.fill(0, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

struct SubspaceDfs {
    field: FieldSpec,
    m: usize,
    k: usize,
    entries: Vec<u32>,
    pivots: Vec<usize>,
}

impl SubspaceDfs {
    // Row-major depth-first fill with values tried in increasing order, so
    // emitted matrices come out lexicographically sorted.
    fn fill<B>(&mut self, pos: usize, visit: &mut impl FnMut(&SubspaceRREF) -> ControlFlow<B>) -> ControlFlow<B> {
        let (m, k) = (self.m, self.k);
        if pos == k * m {
            let basis = MatrixGF::from_reps(&self.field, k, m, &self.entries).expect("valid entries");
            let s = SubspaceRREF::from_rref_unchecked(basis, self.pivots.clone());
            return visit(&s);
        }
        let (r, c) = (pos / m, pos % m);
        if self.pivots[r] == usize::MAX {
            let last_col = m - (k - r);
            let prev = if r == 0 { None } else { Some(self.pivots[r - 1]) };
            if c < last_col {
                self.entries[pos] = 0;
                self.fill(pos + 1, visit)?;
            }
            let after_prev = prev.is_none_or(|p| c > p);
            let clear_above = (0..r).all(|i| self.entries[i * m + c] == 0);
            if c <= last_col && after_prev && clear_above {
                self.entries[pos] = 1;
                self.pivots[r] = c;
                self.fill(pos + 1, visit)?;
                self.pivots[r] = usize::MAX;
            }
            self.entries[pos] = 0;
            ControlFlow::Continue(())
        } else {
            for v in 0..self.field.q() {
                self.entries[pos] = v;
                self.fill(pos + 1, visit)?;
            }
            self.entries[pos] = 0;
            ControlFlow::Continue(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn reps(v: &[u32]) -> Vec<Scalar> {
        v.iter().map(|&r| Scalar::from_rep(r)).collect()
    }

    fn gaussian_binomial(q: u64, m: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(m - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn vector_stream_sizes() {
        let f2 = gf(2);
        assert_eq!(SubspaceRREF::zero(&f2, 3).vectors().count(), 0);
        let line = SubspaceRREF::span(&f2, 3, &[reps(&[1, 0, 1])]).unwrap();
        assert_eq!(line.vectors().count(), 1);
        let f4 = gf(4);
        let plane = SubspaceRREF::span(&f4, 4, &[reps(&[1, 2, 0, 0]), reps(&[0, 0, 1, 3])]).unwrap();
        let vs: Vec<_> = plane.vectors().collect();
        assert_eq!(vs.len(), 15);
        let mut dedup = vs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 15);
        assert_eq!(plane.canonical_points().count(), 5);
    }

    #[test]
    fn canonical_points_are_canonical() {
        let f = gf(3);
        let s = SubspaceRREF::span(&f, 4, &[reps(&[1, 2, 0, 1]), reps(&[0, 1, 1, 2]), reps(&[0, 0, 0, 1])]).unwrap();
        let pts: Vec<_> = s.canonical_points().collect();
        assert_eq!(pts.len(), 13);
        for p in &pts {
            assert_eq!(&super::super::canonical_point(&f, p).unwrap(), p);
        }
    }

    #[test]
    fn reduce_and_quotient() {
        let f = gf(5);
        let u = SubspaceRREF::span(&f, 3, &[reps(&[0, 2, 4])]).unwrap();
        assert_eq!(u.basis().row(0), reps(&[0, 1, 2]).as_slice());
        assert_eq!(u.non_pivots(), vec![0, 2]);
        let v = reps(&[3, 1, 1]);
        // v - 1*(0,1,2) = (3,0,4)
        assert_eq!(u.reduce(&v).unwrap(), reps(&[3, 0, 4]));
        assert_eq!(u.quotient_coords(&v).unwrap(), reps(&[3, 4]));
        assert!(u.contains(&reps(&[0, 3, 1])).unwrap());
    }

    #[test]
    fn intersection_and_join() {
        let f = gf(2);
        let a = SubspaceRREF::span(&f, 4, &[reps(&[1, 0, 0, 0]), reps(&[0, 1, 0, 0])]).unwrap();
        let b = SubspaceRREF::span(&f, 4, &[reps(&[1, 1, 0, 0]), reps(&[0, 0, 1, 0])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, SubspaceRREF::span(&f, 4, &[reps(&[1, 1, 0, 0])]).unwrap());
        assert_eq!(a.join(&b).unwrap().dim(), 3);
    }

    #[test]
    fn subspace_dfs_counts_and_order() {
        for (q, m, k) in [(2, 4, 2), (2, 5, 3), (3, 4, 2), (4, 3, 1), (2, 6, 2), (3, 3, 3)] {
            let f = gf(q);
            let mut seen: Vec<SubspaceRREF> = Vec::new();
            for_each_subspace::<()>(&f, m, k, |s| {
                assert_eq!(s, &SubspaceRREF::from_rref(s.basis().rref()));
                seen.push(s.clone());
                ControlFlow::Continue(())
            });
            assert_eq!(seen.len() as u64, gaussian_binomial(q as u64, m as u32, k as u32), "q={q} m={m} k={k}");
            assert!(seen.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn subspace_dfs_stops_early() {
        let f = gf(2);
        let mut n = 0;
        let out = for_each_subspace(&f, 5, 2, |_| {
            n += 1;
            if n == 7 {
                ControlFlow::Break(n)
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(out, Some(7));
    }
}
