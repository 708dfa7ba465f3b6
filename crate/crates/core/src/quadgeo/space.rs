use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{MatrixGF, SubspaceRREF};
use crate::ffield::{FieldSpec, Scalar};

/// Deliberate corruptions of the quadratic form, used only to check that the
/// verification suite notices a broken implementation.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EtaMutation {
    #[default]
    None,
    /// Drops the `x_{2n+1}^2` term.
    DropSquare,
}

struct Shared {
    beta_terms: Vec<(usize, usize, Scalar)>,
    points: OnceLock<Vec<Vec<Scalar>>>,
}

/// `V = GF(q)^{2n+1}` with the parabolic form
/// `eta(x) = x1 x2 + x3 x4 + ... + x_{2n-1} x_{2n} + x_{2n+1}^2`.
///
/// Coordinates are 0-based in code: the pairs are `(0,1), (2,3), ...` and the
/// last coordinate is index `2n`.
#[derive(Clone)]
pub struct QuadraticSpace {
    n: usize,
    field: FieldSpec,
    mutation: EtaMutation,
    shared: Arc<Shared>,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field && self.mutation == other.mutation
    }
}

impl Eq for QuadraticSpace {}

impl std::fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuadraticSpace(n={}, {})", self.n, self.field)?;
        if self.mutation != EtaMutation::None {
            write!(f, " [{:?}]", self.mutation)?;
        }
        Ok(())
    }
}

impl QuadraticSpace {
    pub fn new(field: &FieldSpec, n: usize) -> Result<QuadraticSpace> {
        QuadraticSpace::with_mutation(field, n, EtaMutation::None)
    }

    #[doc(hidden)]
    pub fn with_mutation(field: &FieldSpec, n: usize, mutation: EtaMutation) -> Result<QuadraticSpace> {
        if n == 0 {
            return Err(Error::DimensionMismatch("rank parameter n must be at least 1".into()));
        }
        let mut space = QuadraticSpace {
            n,
            field: field.clone(),
            mutation,
            shared: Arc::new(Shared { beta_terms: Vec::new(), points: OnceLock::new() }),
        };
        // Polarize eta on basis vectors; only nonzero entries are kept.
        let m = space.dim();
        let mut terms = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let v = space.polarize_basis(i, j);
                if !v.is_zero() {
                    terms.push((i, j, v));
                }
            }
        }
        space.shared = Arc::new(Shared { beta_terms: terms, points: OnceLock::new() });
        Ok(space)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2n + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[doc(hidden)]
    pub fn mutation(&self) -> EtaMutation {
        self.mutation
    }

    fn check(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", x.len(), self.dim())));
        }
        Ok(())
    }

    #[inline]
    fn eta_unchecked(&self, x: &[Scalar]) -> Scalar {
        let f = &self.field;
        let mut acc = Scalar::ZERO;
        for i in 0..self.n {
            acc = f.add(acc, f.mul(x[2 * i], x[2 * i + 1]));
        }
        if self.mutation != EtaMutation::DropSquare {
            let last = x[2 * self.n];
            acc = f.add(acc, f.mul(last, last));
        }
        acc
    }

    fn polarize_basis(&self, i: usize, j: usize) -> Scalar {
        let f = &self.field;
        let m = self.dim();
        let mut ei = vec![Scalar::ZERO; m];
        ei[i] = Scalar::ONE;
        let mut ej = vec![Scalar::ZERO; m];
        ej[j] = Scalar::ONE;
        let sum: Vec<Scalar> = ei.iter().zip(&ej).map(|(&a, &b)| f.add(a, b)).collect();
        f.sub(f.sub(self.eta_unchecked(&sum), self.eta_unchecked(&ei)), self.eta_unchecked(&ej))
    }

    pub fn eta(&self, x: &[Scalar]) -> Result<Scalar> {
        self.check(x)?;
        Ok(self.eta_unchecked(x))
    }

    #[inline]
    pub(crate) fn beta_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = &self.field;
        self.shared
            .beta_terms
            .iter()
            .fold(Scalar::ZERO, |acc, &(i, j, c)| f.add(acc, f.mul(c, f.mul(x[i], y[j]))))
    }

    /// `beta(x, y) = eta(x + y) - eta(x) - eta(y)`.
    pub fn beta(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.beta_unchecked(x, y))
    }

    /// Gram matrix of `beta` in the standard basis.
    pub fn beta_matrix(&self) -> MatrixGF {
        let mut m = MatrixGF::zeros(&self.field, self.dim(), self.dim());
        for &(i, j, c) in &self.shared.beta_terms {
            m.set(i, j, c);
        }
        m
    }

    /// The radical of `beta` in even characteristic, i.e. `<e_{2n+1}>`.
    pub fn nucleus(&self) -> Result<SubspaceRREF> {
        if !self.field.is_char2() {
            return Err(Error::WrongCharacteristic(self.field.p()));
        }
        Ok(self.beta_matrix().kernel())
    }

    #[inline]
    pub fn is_singular(&self, x: &[Scalar]) -> bool {
        x.len() == self.dim() && self.eta_unchecked(x).is_zero()
    }

    /// Canonical singular points in lexicographic order.
    pub fn quadric_points(&self) -> &[Vec<Scalar>] {
        self.shared.points.get_or_init(|| {
            if self.field.is_char2() && self.mutation == EtaMutation::None {
                self.quadric_points_by_sqrt()
            } else {
                self.quadric_points_brute_force()
            }
        })
    }

    /// Filters every canonical point of `PG(2n, q)`.
    pub fn quadric_points_brute_force(&self) -> Vec<Vec<Scalar>> {
        let full = SubspaceRREF::full(&self.field, self.dim());
        let mut pts: Vec<Vec<Scalar>> = full.canonical_points().filter(|x| self.is_singular(x)).collect();
        pts.sort();
        pts
    }

    /// Even characteristic: each `x` in `GF(q)^{2n}` lifts to exactly one
    /// singular vector by `x_{2n+1} = sqrt(x1 x2 + ... + x_{2n-1} x_{2n})`.
    fn quadric_points_by_sqrt(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let head = SubspaceRREF::full(f, 2 * self.n);
        let mut pts: Vec<Vec<Scalar>> = head
            .canonical_points()
            .map(|mut x| {
                let mut s = Scalar::ZERO;
                for i in 0..self.n {
                    s = f.add(s, f.mul(x[2 * i], x[2 * i + 1]));
                }
                x.push(f.sqrt_char2(s).expect("characteristic 2"));
                x
            })
            .collect();
        pts.sort();
        pts
    }

    /// `{x : beta(u, x) = 0}` for a singular point `u`.
    pub fn tangent_hyperplane(&self, u: &[Scalar]) -> Result<SubspaceRREF> {
        self.check(u)?;
        if u.iter().all(|s| s.is_zero()) || !self.is_singular(u) {
            return Err(Error::NonSingularPoint);
        }
        let row = self.beta_matrix().transpose().mul_vec(u)?;
        let m = MatrixGF::from_rows(&self.field, self.dim(), &[row])?;
        Ok(m.kernel())
    }

    /// True iff `eta` vanishes on the whole subspace.
    pub fn is_totally_singular(&self, s: &SubspaceRREF) -> bool {
        let b = s.basis();
        (0..b.rows()).all(|i| {
            self.is_singular(b.row(i)) && (i + 1..b.rows()).all(|j| self.beta_unchecked(b.row(i), b.row(j)).is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: u32, n: usize) -> QuadraticSpace {
        QuadraticSpace::new(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    fn unit(m: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; m];
        v[i] = Scalar::ONE;
        v
    }

    #[test]
    fn eta_examples() {
        let s = space(2, 3);
        assert_eq!(s.eta(&unit(7, 0)).unwrap(), Scalar::ZERO);
        assert_eq!(s.eta(&unit(7, 6)).unwrap(), Scalar::ONE);
        let mut v = unit(7, 0);
        v[1] = Scalar::ONE;
        assert_eq!(s.eta(&v).unwrap(), Scalar::ONE);
        assert!(matches!(s.eta(&[Scalar::ONE]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn beta_matrix_pattern_even_q() {
        for (q, n) in [(2, 2), (4, 3)] {
            let s = space(q, n);
            let m = s.beta_matrix();
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    let expect = i < 2 * n && (i ^ 1) == j;
                    assert_eq!(m.get(i, j) == Scalar::ONE, expect);
                    assert_eq!(m.get(i, j).is_zero(), !expect);
                }
            }
            assert_eq!(s.beta(&unit(s.dim(), 0), &unit(s.dim(), 1)).unwrap(), Scalar::ONE);
        }
    }

    #[test]
    fn beta_is_alternating_in_char2_and_kills_last_basis_vector() {
        let s = space(4, 2);
        let full = SubspaceRREF::full(s.field(), 5);
        let e5 = unit(5, 4);
        for x in full.vectors() {
            assert!(s.beta(&x, &x).unwrap().is_zero());
            assert!(s.beta(&e5, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn beta_many_polarization_identity() {
        let s = space(3, 2);
        let f = s.field().clone();
        let full = SubspaceRREF::full(&f, 5);
        let vs: Vec<_> = full.vectors().step_by(7).collect();
        for x in &vs {
            for y in vs.iter().step_by(5) {
                let sum: Vec<Scalar> = x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect();
                let pol = f.sub(f.sub(s.eta(&sum).unwrap(), s.eta(x).unwrap()), s.eta(y).unwrap());
                assert_eq!(s.beta(x, y).unwrap(), pol);
            }
        }
    }

    #[test]
    fn nucleus_is_last_basis_vector() {
        let s = space(2, 2);
        let nuc = s.nucleus().unwrap();
        assert_eq!(nuc, SubspaceRREF::span(s.field(), 5, &[unit(5, 4)]).unwrap());
        assert_eq!(space(8, 3).nucleus().unwrap().dim(), 1);
        assert_eq!(space(3, 2).nucleus(), Err(Error::WrongCharacteristic(3)));
    }

    #[test]
    fn quadric_point_counts_against_brute_force() {
        for (q, n, count) in [(2, 2, 15), (4, 2, 85), (2, 3, 63), (8, 2, 585), (3, 2, 40), (4, 3, 1365)] {
            let s = space(q, n);
            let pts = s.quadric_points();
            assert_eq!(pts.len(), count, "q={q} n={n}");
            let qq = q as usize;
            assert_eq!(pts.len(), (qq.pow(2 * n as u32) - 1) / (qq - 1));
            assert_eq!(pts, s.quadric_points_brute_force().as_slice());
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tangent_hyperplane_properties() {
        let s = space(2, 2);
        let e1 = unit(5, 0);
        let t = s.tangent_hyperplane(&e1).unwrap();
        assert_eq!(t.dim(), 4);
        // kernel of x -> x2
        let expect = MatrixGF::from_rows(s.field(), 5, &[unit(5, 1)]).unwrap().kernel();
        assert_eq!(t, expect);
        let nuc = s.nucleus().unwrap();
        for u in s.quadric_points() {
            let t = s.tangent_hyperplane(u).unwrap();
            assert!(t.contains(u).unwrap());
            assert!(t.contains_subspace(&nuc).unwrap());
        }
        assert_eq!(s.tangent_hyperplane(&unit(5, 4)), Err(Error::NonSingularPoint));
        assert_eq!(s.tangent_hyperplane(&[Scalar::ZERO; 5]), Err(Error::NonSingularPoint));
    }

    #[test]
    fn lines_through_nucleus_are_tangent() {
        let s = space(4, 2);
        let f = s.field().clone();
        let nuc = unit(5, 4);
        for u in s.quadric_points().iter().step_by(3) {
            let line = SubspaceRREF::span(&f, 5, &[u.clone(), nuc.clone()]).unwrap();
            let singular = line.canonical_points().filter(|p| s.is_singular(p)).count();
            assert_eq!(singular, 1);
        }
    }

    #[test]
    fn tangent_hyperplane_collects_collinear_points() {
        let s = space(2, 3);
        let f = s.field().clone();
        let pts = s.quadric_points();
        for u in pts.iter().step_by(5) {
            let t = s.tangent_hyperplane(u).unwrap();
            for p in pts {
                if p == u {
                    continue;
                }
                let line = SubspaceRREF::span(&f, 7, &[u.clone(), p.clone()]).unwrap();
                assert_eq!(t.contains(p).unwrap(), s.is_totally_singular(&line));
            }
        }
    }
}
