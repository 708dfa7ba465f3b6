use crate::error::{Error, Result};
use crate::exactla::{MatrixGF, SubspaceRREF};
use crate::ffield::Scalar;

use super::QuadraticSpace;

/// Index pairs `(i, j)` with `i < j < m` in lexicographic order.
pub fn index_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// An alternating bilinear form on `V`, stored as its Gram matrix `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    s: MatrixGF,
    space: QuadraticSpace,
}

impl AlternatingForm {
    /// Validates `S^T = -S` and a zero diagonal.
    pub fn new(space: &QuadraticSpace, s: MatrixGF) -> Result<AlternatingForm> {
        let m = space.dim();
        if s.rows() != m || s.cols() != m {
            return Err(Error::DimensionMismatch(format!("form is {}x{}, space has dimension {m}", s.rows(), s.cols())));
        }
        if s.field() != space.field() {
            return Err(Error::DimensionMismatch("form and space over different fields".into()));
        }
        let f = space.field();
        for i in 0..m {
            if !s.get(i, i).is_zero() {
                return Err(Error::NotAlternating(format!("diagonal entry ({i},{i}) is nonzero")));
            }
            for j in i + 1..m {
                if s.get(j, i) != f.neg(s.get(i, j)) {
                    return Err(Error::NotAlternating(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        Ok(AlternatingForm { s, space: space.clone() })
    }

    pub fn zero(space: &QuadraticSpace) -> AlternatingForm {
        let m = space.dim();
        AlternatingForm { s: MatrixGF::zeros(space.field(), m, m), space: space.clone() }
    }

    /// The form `e_i^* ∧ e_j^*` (0-based, `i != j`).
    pub fn elementary(space: &QuadraticSpace, i: usize, j: usize) -> Result<AlternatingForm> {
        let m = space.dim();
        if i >= m || j >= m || i == j {
            return Err(Error::DimensionMismatch(format!("bad elementary index pair ({i},{j}) in dimension {m}")));
        }
        let mut coeffs = vec![Scalar::ZERO; m];
        coeffs[i] = Scalar::ONE;
        let mut other = vec![Scalar::ZERO; m];
        other[j] = Scalar::ONE;
        AlternatingForm::wedge(space, &coeffs, &other)
    }

    /// The polar form `beta` itself. Alternating only in even characteristic.
    pub fn beta(space: &QuadraticSpace) -> Result<AlternatingForm> {
        AlternatingForm::new(space, space.beta_matrix())
    }

    /// `phi(x, y) = (a.x)(b.y) - (a.y)(b.x)`.
    pub fn wedge(space: &QuadraticSpace, a: &[Scalar], b: &[Scalar]) -> Result<AlternatingForm> {
        let m = space.dim();
        if a.len() != m || b.len() != m {
            return Err(Error::DimensionMismatch("dual vectors must have length 2n+1".into()));
        }
        let f = space.field();
        let mut s = MatrixGF::zeros(f, m, m);
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    s.set(i, j, f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])));
                }
            }
        }
        Ok(AlternatingForm { s, space: space.clone() })
    }

    /// Builds `S` from its upper-triangle entries listed in `index_pairs` order.
    pub fn from_coefficients(space: &QuadraticSpace, coeffs: &[Scalar]) -> Result<AlternatingForm> {
        let m = space.dim();
        let pairs = index_pairs(m);
        if coeffs.len() != pairs.len() {
            return Err(Error::DimensionMismatch(format!("expected {} coefficients, got {}", pairs.len(), coeffs.len())));
        }
        let f = space.field();
        let mut s = MatrixGF::zeros(f, m, m);
        for (&(i, j), &c) in pairs.iter().zip(coeffs) {
            s.set(i, j, c);
            s.set(j, i, f.neg(c));
        }
        Ok(AlternatingForm { s, space: space.clone() })
    }

    /// Upper-triangle entries in `index_pairs` order.
    pub fn coefficients(&self) -> Vec<Scalar> {
        index_pairs(self.space.dim()).into_iter().map(|(i, j)| self.s.get(i, j)).collect()
    }

    #[inline]
    pub fn matrix(&self) -> &MatrixGF {
        &self.s
    }

    #[inline]
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// `x^T S y`.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let m = self.space.dim();
        if x.len() != m || y.len() != m {
            return Err(Error::DimensionMismatch("vectors must have length 2n+1".into()));
        }
        Ok(self.eval_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = self.space.field();
        let mut acc = Scalar::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let row = self.s.row(i);
            let mut inner = Scalar::ZERO;
            for (&sij, &yj) in row.iter().zip(y) {
                inner = f.add(inner, f.mul(sij, yj));
            }
            acc = f.add(acc, f.mul(xi, inner));
        }
        acc
    }

    /// `{x : phi(x, y) = 0 for all y}`.
    pub fn radical(&self) -> SubspaceRREF {
        self.s.kernel()
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero()
    }

    pub fn add(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch("forms over different spaces".into()));
        }
        let f = self.space.field();
        let m = self.space.dim();
        let mut s = self.s.clone();
        for i in 0..m {
            for j in 0..m {
                s.set(i, j, f.add(s.get(i, j), other.s.get(i, j)));
            }
        }
        Ok(AlternatingForm { s, space: self.space.clone() })
    }

    pub fn scale(&self, c: Scalar) -> AlternatingForm {
        let f = self.space.field();
        let m = self.space.dim();
        let mut s = self.s.clone();
        for i in 0..m {
            for j in 0..m {
                s.set(i, j, f.mul(c, s.get(i, j)));
            }
        }
        AlternatingForm { s, space: self.space.clone() }
    }

    /// True iff the form lies in `<beta>` (q even) or is zero (q odd).
    pub fn in_beta_span(&self) -> bool {
        if !self.space.field().is_char2() {
            return self.is_zero();
        }
        // beta has entry 1 at (0,1), so the only candidate multiple is S[0][1].
        let c = self.s.get(0, 1);
        let m = self.space.beta_matrix();
        let f = self.space.field();
        let d = self.space.dim();
        (0..d).all(|i| (0..d).all(|j| self.s.get(i, j) == f.mul(c, m.get(i, j))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;
    use proptest::prelude::*;

    fn space(q: u32, n: usize) -> QuadraticSpace {
        QuadraticSpace::new(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn validation() {
        let sp = space(3, 2);
        let f = sp.field().clone();
        let mut s = MatrixGF::zeros(&f, 5, 5);
        s.set(0, 1, Scalar::ONE);
        assert!(matches!(AlternatingForm::new(&sp, s.clone()), Err(Error::NotAlternating(_))));
        s.set(1, 0, f.neg(Scalar::ONE));
        assert!(AlternatingForm::new(&sp, s.clone()).is_ok());
        s.set(2, 2, Scalar::ONE);
        assert!(matches!(AlternatingForm::new(&sp, s), Err(Error::NotAlternating(_))));
        // odd q: the polar form has 2 on the diagonal
        assert!(matches!(AlternatingForm::beta(&sp), Err(Error::NotAlternating(_))));
        // char 2 symmetric matrix with nonzero diagonal is rejected
        let sp2 = space(2, 2);
        let mut s2 = MatrixGF::zeros(sp2.field(), 5, 5);
        s2.set(4, 4, Scalar::ONE);
        assert!(matches!(AlternatingForm::new(&sp2, s2), Err(Error::NotAlternating(_))));
    }

    #[test]
    fn radical_examples() {
        for (q, n) in [(2, 2), (4, 2), (2, 3)] {
            let sp = space(q, n);
            assert_eq!(AlternatingForm::zero(&sp).radical().dim(), 2 * n + 1);
            assert_eq!(AlternatingForm::beta(&sp).unwrap().radical(), sp.nucleus().unwrap());
            assert_eq!(AlternatingForm::elementary(&sp, 0, 1).unwrap().radical().dim(), 2 * n - 1);
        }
    }

    #[test]
    fn coefficient_roundtrip_and_beta_span() {
        let sp = space(4, 2);
        let f = sp.field().clone();
        let b = AlternatingForm::beta(&sp).unwrap();
        assert_eq!(AlternatingForm::from_coefficients(&sp, &b.coefficients()).unwrap(), b);
        for a in f.elements() {
            assert!(b.scale(a).in_beta_span());
        }
        let e = AlternatingForm::elementary(&sp, 0, 2).unwrap();
        assert!(!e.in_beta_span());
        assert!(!e.add(&b).unwrap().in_beta_span());
        assert!(AlternatingForm::zero(&space(3, 2)).in_beta_span());
    }

    #[test]
    fn eval_matches_matrix_product() {
        let sp = space(3, 2);
        let f = sp.field().clone();
        let coeffs: Vec<Scalar> = (0..10).map(|i| Scalar::from_rep((i * 7 + 1) % 3)).collect();
        let form = AlternatingForm::from_coefficients(&sp, &coeffs).unwrap();
        let x: Vec<Scalar> = [1, 2, 0, 1, 2].map(Scalar::from_rep).to_vec();
        let y: Vec<Scalar> = [0, 1, 1, 2, 1].map(Scalar::from_rep).to_vec();
        let sy = form.matrix().mul_vec(&y).unwrap();
        let direct = x.iter().zip(&sy).fold(Scalar::ZERO, |a, (&u, &v)| f.add(a, f.mul(u, v)));
        assert_eq!(form.eval(&x, &y).unwrap(), direct);
        assert_eq!(form.eval(&x, &x).unwrap(), Scalar::ZERO);
        assert_eq!(form.eval(&y, &x).unwrap(), f.neg(direct));
    }

    proptest! {
        #[test]
        fn radical_has_odd_dimension(q in prop::sample::select(vec![2u32, 3, 4, 5]), seed in any::<u64>()) {
            let sp = space(q, 2);
            let mut state = seed;
            let coeffs: Vec<Scalar> = (0..10).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Scalar::from_rep(((state >> 33) % q as u64) as u32)
            }).collect();
            let form = AlternatingForm::from_coefficients(&sp, &coeffs).unwrap();
            prop_assert_eq!(form.radical().dim() % 2, 1);
            let r = form.radical();
            for v in r.vectors().take(20) {
                for i in 0..5 {
                    let mut e = vec![Scalar::ZERO; 5];
                    e[i] = Scalar::ONE;
                    prop_assert!(form.eval(&v, &e).unwrap().is_zero());
                }
            }
        }
    }
}
