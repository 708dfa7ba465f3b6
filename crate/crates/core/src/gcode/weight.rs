use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{MatrixGF, SubspaceRREF};
use crate::ffield::Scalar;
use crate::quadgeo::{radical_profile, AlternatingForm, RadicalProfile};

use super::GrassCode;

/// A codeword with its cached Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    values: Vec<Scalar>,
    weight: usize,
}

impl Codeword {
    pub fn new(values: Vec<Scalar>) -> Codeword {
        let weight = values.iter().filter(|x| !x.is_zero()).count();
        Codeword { values, weight }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

fn check_form(code: &GrassCode, f: &AlternatingForm) -> Result<()> {
    if code.k() != 2 {
        return Err(Error::GradeMismatch(code.k()));
    }
    if f.space() != code.space() {
        return Err(Error::DimensionMismatch("form and code over different spaces".into()));
    }
    Ok(())
}

/// Entry `i` is `b1^T S b2` for the RREF basis `(b1, b2)` of line `i`.
pub fn codeword_of_form(code: &GrassCode, f: &AlternatingForm) -> Result<Codeword> {
    check_form(code, f)?;
    let values = code
        .eval_labels()
        .iter()
        .map(|l| {
            let b = l.basis();
            f.eval_unchecked(b.row(0), b.row(1))
        })
        .collect();
    Ok(Codeword::new(values))
}

pub fn weight_direct(code: &GrassCode, f: &AlternatingForm) -> Result<u64> {
    Ok(codeword_of_form(code, f)?.weight() as u64)
}

/// Complement of `<u>` in `u^⊥`: the vectors of the tangent hyperplane with a
/// zero in the pivot coordinate of `u`.
fn residual_complement(code: &GrassCode, u: &[Scalar]) -> Result<SubspaceRREF> {
    let space = code.space();
    let field = space.field();
    let t = space.tangent_hyperplane(u)?;
    let p = u.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let mut ep = vec![Scalar::ZERO; space.dim()];
    ep[p] = Scalar::ONE;
    let functional = space.beta_matrix().transpose().mul_vec(u)?;
    let w = MatrixGF::from_rows(field, space.dim(), &[functional, ep])?.kernel();
    debug_assert!(t.contains_subspace(&w).unwrap_or(false));
    Ok(w)
}

/// Number of points of the residual quadric at `u` on which `phi(u, .)` is nonzero.
pub fn residual_weight(code: &GrassCode, f: &AlternatingForm, u: &[Scalar]) -> Result<u64> {
    check_form(code, f)?;
    let space = code.space();
    let w = residual_complement(code, u)?;
    let fu = f.matrix().vec_mul(u)?;
    let field = space.field();
    let mut count = 0;
    for x in w.canonical_points() {
        if space.is_singular(&x) {
            let v = fu.iter().zip(&x).fold(Scalar::ZERO, |a, (&s, &t)| field.add(a, field.mul(s, t)));
            if !v.is_zero() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `u^⊥ ⊆ u^{⊥φ}`, tested on a basis of the tangent hyperplane.
pub fn residual_is_zero_by_tangent(code: &GrassCode, f: &AlternatingForm, u: &[Scalar]) -> Result<bool> {
    check_form(code, f)?;
    let t = code.space().tangent_hyperplane(u)?;
    let zero = t.basis().row_iter().all(|x| f.eval_unchecked(u, x).is_zero());
    Ok(zero)
}

/// Sum of residual weights over all nonzero singular vectors, divided by `q^2 - 1`.
pub fn weight_recursive(code: &GrassCode, f: &AlternatingForm) -> Result<u64> {
    check_form(code, f)?;
    let q = code.space().q() as u64;
    let mut sum = 0u64;
    for u in code.space().quadric_points() {
        sum += residual_weight(code, f, u)?;
    }
    let sum = sum * (q - 1);
    let divisor = q * q - 1;
    if sum % divisor != 0 {
        return Err(Error::InconsistentRecursion { sum, divisor });
    }
    Ok(sum / divisor)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodAgreement {
    pub direct: u64,
    pub recursive: u64,
    /// Weight rebuilt from the census counts under vector counting.
    pub census_formula: Option<i128>,
    pub agree: bool,
}

/// Census of singular points by residual weight.
///
/// `a_prime`, `b`, `c`, `s_count` and `a` count nonzero vectors (each point
/// contributes `q - 1`); the `*_points` fields count projective points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub q: u32,
    pub n: usize,
    pub weight: u64,
    pub a_prime: i64,
    pub b: i64,
    pub c: i64,
    pub s_count: i64,
    pub a: i64,
    pub low: i64,
    pub a_prime_points: i64,
    pub b_points: i64,
    pub c_points: i64,
    pub s_points: i64,
    pub low_points: i64,
    pub counting_convention: &'static str,
    pub vector_convention_holds: bool,
    pub point_convention_holds: bool,
    pub profile: RadicalProfile,
    pub method_agreement: MethodAgreement,
}

/// `(q^{4n-5} - q^{3n-4}) + q^{n-2} ((q^{n-1} - 1) A + B + 2C) / (q^2 - 1)`,
/// or `None` when the division is not exact.
pub fn census_weight(q: u64, n: usize, a: i64, b: i64, c: i64) -> Option<i128> {
    let q = q as i128;
    let n = n as u32;
    let lead = q.pow(4 * n - 5) - q.pow(3 * n - 4);
    let num = q.pow(n - 2) * ((q.pow(n - 1) - 1) * a as i128 + b as i128 + 2 * c as i128);
    let den = q * q - 1;
    (num % den == 0).then(|| lead + num / den)
}

pub fn abc_census(code: &GrassCode, f: &AlternatingForm) -> Result<WeightReport> {
    check_form(code, f)?;
    let space = code.space();
    let field = space.field();
    if !field.is_char2() {
        return Err(Error::WrongCharacteristic(field.p()));
    }
    let n = space.n();
    if n < 2 {
        return Err(Error::DimensionMismatch("census requires n >= 2".into()));
    }
    if f.in_beta_span() {
        return Err(Error::FormInAnnihilator);
    }
    let q = field.q() as u64;
    let base = q.pow(2 * n as u32 - 3);
    let step = q.pow(n as u32 - 2);
    let (mut zero, mut low, mut mid, mut high) = (0i64, 0i64, 0i64, 0i64);
    let mut sum = 0u64;
    for u in space.quadric_points() {
        let r = residual_weight(code, f, u)?;
        sum += r;
        match r {
            0 => zero += 1,
            r if r == base => mid += 1,
            r if r == base + step => high += 1,
            r if r + step == base => low += 1,
            r => return Err(Error::Inconsistent(format!("residual weight {r} outside the admissible set"))),
        }
    }
    let direct = weight_direct(code, f)?;
    let divisor = q * q - 1;
    let sv = sum * (q - 1);
    if sv % divisor != 0 {
        return Err(Error::InconsistentRecursion { sum: sv, divisor });
    }
    let recursive = sv / divisor;

    let qi = q as i64;
    let scale = qi - 1;
    let s_count = zero * scale;
    let a_prime = (qi.pow(2 * n as u32) - 1) - s_count;
    let a = (qi.pow(2 * n as u32 - 2) - 1) - s_count;
    let (b, c) = (mid * scale, high * scale);
    let vector_formula = census_weight(q, n, a, b, c);
    let a_points = (qi.pow(2 * n as u32 - 2) - 1) - zero;
    let point_formula = census_weight(q, n, a_points, mid, high);

    let vector_ok = vector_formula == Some(direct as i128);
    Ok(WeightReport {
        q: field.q(),
        n,
        weight: direct,
        a_prime,
        b,
        c,
        s_count,
        a,
        low: low * scale,
        a_prime_points: mid + high + low,
        b_points: mid,
        c_points: high,
        s_points: zero,
        low_points: low,
        counting_convention: "vector",
        vector_convention_holds: vector_ok,
        point_convention_holds: point_formula == Some(direct as i128),
        profile: radical_profile(f)?,
        method_agreement: MethodAgreement {
            direct,
            recursive,
            census_formula: vector_formula,
            agree: vector_ok && recursive == direct,
        },
    })
}

/// Weight of the form induced on `V/N` by `f`, evaluated on the symplectic
/// lines of `code` (which must be the symplectic code). Requires `N ⊆ Rad(f)`.
pub fn weight_via_symplectic_quotient(code: &GrassCode, f: &AlternatingForm) -> Result<u64> {
    check_form(code, f)?;
    let nuc = code.space().nucleus()?;
    if !f.radical().contains_subspace(&nuc)? {
        return Err(Error::Inconsistent("nucleus is not in the radical".into()));
    }
    let h = 2 * code.space().n();
    let field = code.space().field();
    let s = f.matrix();
    let mut w = 0;
    for col in code.system().columns() {
        let b = col.label.basis();
        if b.cols() != h {
            return Err(Error::DimensionMismatch("not a symplectic code".into()));
        }
        let (x, y) = (b.row(0), b.row(1));
        let mut acc = Scalar::ZERO;
        for i in 0..h {
            for j in 0..h {
                acc = field.add(acc, field.mul(x[i], field.mul(s.get(i, j), y[j])));
            }
        }
        if !acc.is_zero() {
            w += 1;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;
    use crate::gcode::orthogonal_code;
    use crate::quadgeo::QuadraticSpace;

    fn code(q: u32, n: usize) -> GrassCode {
        orthogonal_code(&QuadraticSpace::new(&FieldSpec::with_order(q).unwrap(), n).unwrap(), 2).unwrap()
    }

    /// Independent count of lines `<u, v>` with `u1 v2 + u2 v1 != 0`, straight
    /// from pairs of singular points.
    fn e12_weight_by_pairs(c: &GrassCode) -> u64 {
        let sp = c.space();
        let f = sp.field();
        let pts = sp.quadric_points();
        let mut lines = std::collections::HashSet::new();
        for (i, u) in pts.iter().enumerate() {
            for v in &pts[i + 1..] {
                if sp.beta(u, v).unwrap().is_zero() {
                    let val = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
                    if !val.is_zero() {
                        lines.insert(SubspaceRREF::span(f, sp.dim(), &[u, v]).unwrap());
                    }
                }
            }
        }
        lines.len() as u64
    }

    #[test]
    fn beta_and_zero_give_zero_codeword() {
        for (q, n) in [(2, 2), (4, 2), (2, 3)] {
            let c = code(q, n);
            let b = AlternatingForm::beta(c.space()).unwrap();
            assert_eq!(weight_direct(&c, &b).unwrap(), 0);
            assert_eq!(weight_recursive(&c, &b).unwrap(), 0);
            assert_eq!(weight_direct(&c, &AlternatingForm::zero(c.space())).unwrap(), 0);
            for u in c.space().quadric_points() {
                assert_eq!(residual_weight(&c, &b, u).unwrap(), 0);
            }
            assert_eq!(abc_census(&c, &b), Err(Error::FormInAnnihilator));
        }
    }

    #[test]
    fn elementary_weight_two_ways() {
        for (q, n) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
            let c = code(q, n);
            let e = AlternatingForm::elementary(c.space(), 0, 1).unwrap();
            let w = weight_direct(&c, &e).unwrap();
            assert_eq!(w, e12_weight_by_pairs(&c), "q={q} n={n}");
            assert_eq!(weight_recursive(&c, &e).unwrap(), w);
        }
    }

    #[test]
    fn census_on_elementary_form() {
        let c = code(2, 3);
        let e = AlternatingForm::elementary(c.space(), 0, 2).unwrap();
        let r = abc_census(&c, &e).unwrap();
        assert!(r.vector_convention_holds);
        assert!(r.method_agreement.agree);
        assert_eq!(r.a_prime + r.s_count, 63);
        assert_eq!(r.a, 15 - r.s_count);
    }

    #[test]
    fn point_convention_fails_beyond_binary() {
        let c = code(4, 2);
        let e = AlternatingForm::elementary(c.space(), 0, 2).unwrap();
        let r = abc_census(&c, &e).unwrap();
        assert!(r.vector_convention_holds);
        assert!(!r.point_convention_holds);
    }

    #[test]
    fn residual_rejects_nonsingular_point() {
        let c = code(2, 2);
        let e = AlternatingForm::elementary(c.space(), 0, 1).unwrap();
        let mut u = vec![Scalar::ZERO; 5];
        u[4] = Scalar::ONE;
        assert_eq!(residual_weight(&c, &e, &u), Err(Error::NonSingularPoint));
    }

    #[test]
    fn grade_mismatch() {
        let sp = QuadraticSpace::new(&FieldSpec::with_order(2).unwrap(), 3).unwrap();
        let c3 = orthogonal_code(&sp, 3).unwrap();
        let e = AlternatingForm::elementary(&sp, 0, 1).unwrap();
        assert_eq!(codeword_of_form(&c3, &e), Err(Error::GradeMismatch(3)));
    }

    #[test]
    fn census_formula_arithmetic() {
        // hyperbolic cone: the bracket vanishes and the leading term remains
        assert_eq!(census_weight(2, 3, 0, 0, 0), Some(96));
        assert_eq!(census_weight(8, 2, 0, 0, 0), Some(448));
        assert_eq!(census_weight(2, 2, 1, 0, 0), None);
    }
}
