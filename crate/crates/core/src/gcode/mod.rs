//! Polar Grassmann codes and their weights.

mod minweight;
mod scan;
mod weight;

pub use minweight::{min_weight_form, min_weight_structural_scan, StructuralReport, WitnessCheck};
pub use scan::{
    min_distance_exhaustive, spectrum, ScanOptions, ScanResult, DEFAULT_BUDGET,
};
pub use weight::{
    abc_census, codeword_of_form, residual_is_zero_by_tangent, residual_weight, weight_direct, weight_recursive,
    weight_via_symplectic_quotient, Codeword, MethodAgreement, WeightReport,
};

use crate::error::{Error, Result};
use crate::exactla::{MatrixGF, SubspaceRREF};
use crate::ffield::Scalar;
use crate::grassmann::{enumerate_delta_k, enumerate_symplectic_lines, k_subsets, ProjectiveSystem};
use crate::quadgeo::{AlternatingForm, QuadraticSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Orthogonal,
    Symplectic,
}

/// A code together with the bookkeeping that maps codewords back to forms.
#[derive(Clone, Debug)]
pub struct GrassCode {
    space: QuadraticSpace,
    kind: CodeKind,
    system: ProjectiveSystem,
    /// Lines of `V` the codeword entries are evaluated on. For the symplectic
    /// code these are the `Δ_2` lines aligned with `system`.
    eval_labels: Vec<SubspaceRREF>,
    /// Index tuple (coordinates of `V`) of each row of `gen_full`.
    row_tuples: Vec<Vec<usize>>,
    gen_full: MatrixGF,
    gen_reduced: MatrixGF,
    /// `gen_reduced = transform * gen_full`.
    transform: MatrixGF,
    /// Left kernel of `gen_full`.
    dependencies: SubspaceRREF,
    pivot_rows: Vec<usize>,
}

fn beta_coefficients(space: &QuadraticSpace, row_tuples: &[Vec<usize>]) -> Vec<Scalar> {
    let m = space.beta_matrix();
    row_tuples.iter().map(|t| m.get(t[0], t[1])).collect()
}

/// Builds the code of `Δ_k` (`system` must come from [`enumerate_delta_k`]).
pub fn build_code(space: &QuadraticSpace, system: ProjectiveSystem) -> Result<GrassCode> {
    if system.is_empty() {
        return Err(Error::DimensionMismatch("empty projective system".into()));
    }
    let k = system.k();
    let row_tuples = k_subsets(space.dim(), k);
    if system.ambient_dim() != row_tuples.len() {
        return Err(Error::DimensionMismatch("system is not embedded in the grade-k coordinates of V".into()));
    }
    let field = space.field();
    let mut gen_full = MatrixGF::zeros(field, row_tuples.len(), system.len());
    for (c, col) in system.columns().iter().enumerate() {
        for (r, &x) in col.plucker.coords().iter().enumerate() {
            gen_full.set(r, c, x);
        }
    }
    let eval_labels = system.columns().iter().map(|c| c.label.clone()).collect();
    let code = assemble(space, CodeKind::Orthogonal, system, eval_labels, row_tuples, gen_full)?;
    if k == 2 && field.is_char2() {
        let beta = beta_coefficients(space, &code.row_tuples);
        if !code.dependencies.contains(&beta)? {
            return Err(Error::Inconsistent("beta does not annihilate the projective system".into()));
        }
    }
    Ok(code)
}

/// Convenience: enumerate `Δ_k` and build its code.
pub fn orthogonal_code(space: &QuadraticSpace, k: usize) -> Result<GrassCode> {
    build_code(space, enumerate_delta_k(space, k)?)
}

/// The symplectic line code of `V/N`, realized through pulled-back forms so
/// that its columns line up with those of the orthogonal line code.
pub fn build_symplectic_code(space: &QuadraticSpace) -> Result<GrassCode> {
    let field = space.field();
    if !field.is_char2() {
        return Err(Error::WrongCharacteristic(field.p()));
    }
    let delta = enumerate_delta_k(space, 2)?;
    let symp = enumerate_symplectic_lines(space)?;
    let h = 2 * space.n();
    let row_tuples = k_subsets(h, 2);
    let mut gen_full = MatrixGF::zeros(field, row_tuples.len(), delta.len());
    for (c, (dcol, scol)) in delta.columns().iter().zip(symp.columns()).enumerate() {
        let b = dcol.label.basis();
        let (u, v) = (b.row(0), b.row(1));
        let pulled: Vec<Scalar> = row_tuples
            .iter()
            .map(|t| field.sub(field.mul(u[t[0]], v[t[1]]), field.mul(u[t[1]], v[t[0]])))
            .collect();
        let canon = crate::exactla::canonical_point(field, &pulled)
            .map_err(|_| Error::ColumnMisalignment(format!("column {c} projects to a degenerate line")))?;
        if canon != scol.plucker.coords() {
            return Err(Error::ColumnMisalignment(format!("column {c} does not match its quotient line")));
        }
        for (r, &x) in pulled.iter().enumerate() {
            gen_full.set(r, c, x);
        }
    }
    let eval_labels = delta.columns().iter().map(|c| c.label.clone()).collect();
    assemble(space, CodeKind::Symplectic, symp, eval_labels, row_tuples, gen_full)
}

fn assemble(
    space: &QuadraticSpace,
    kind: CodeKind,
    system: ProjectiveSystem,
    eval_labels: Vec<SubspaceRREF>,
    row_tuples: Vec<Vec<usize>>,
    gen_full: MatrixGF,
) -> Result<GrassCode> {
    let field = space.field();
    let r = gen_full.rows();
    let nn = gen_full.cols();
    let aug = gen_full.hstack(&MatrixGF::identity(field, r))?.rref();
    let rank = aug.pivots.iter().take_while(|&&p| p < nn).count();
    let rows_k: Vec<usize> = (0..rank).collect();
    let rows_dep: Vec<usize> = (rank..r).collect();
    let cols_g: Vec<usize> = (0..nn).collect();
    let cols_t: Vec<usize> = (nn..nn + r).collect();
    let gen_reduced = aug.matrix.select_rows(&rows_k).select_cols(&cols_g);
    let transform = aug.matrix.select_rows(&rows_k).select_cols(&cols_t);
    let dependencies = aug.matrix.select_rows(&rows_dep).select_cols(&cols_t).row_space();
    let pivot_rows = gen_full.transpose().rref().pivots;
    if pivot_rows.len() != rank || dependencies.dim() != r - rank {
        return Err(Error::Inconsistent("rank bookkeeping disagrees".into()));
    }
    Ok(GrassCode {
        space: space.clone(),
        kind,
        system,
        eval_labels,
        row_tuples,
        gen_full,
        gen_reduced,
        transform,
        dependencies,
        pivot_rows,
    })
}

impl GrassCode {
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn system(&self) -> &ProjectiveSystem {
        &self.system
    }

    pub fn k(&self) -> usize {
        self.system.k()
    }

    /// Length.
    pub fn n_len(&self) -> usize {
        self.gen_full.cols()
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.gen_reduced.rows()
    }

    pub fn gen_full(&self) -> &MatrixGF {
        &self.gen_full
    }

    pub fn gen_reduced(&self) -> &MatrixGF {
        &self.gen_reduced
    }

    pub fn transform(&self) -> &MatrixGF {
        &self.transform
    }

    pub fn row_tuples(&self) -> &[Vec<usize>] {
        &self.row_tuples
    }

    /// Rows of `gen_full` that form a basis of its row space.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Coefficient vectors `c` with `c * gen_full = 0`.
    pub fn dependencies(&self) -> &SubspaceRREF {
        &self.dependencies
    }

    pub(crate) fn eval_labels(&self) -> &[SubspaceRREF] {
        &self.eval_labels
    }

    /// `m * gen_reduced`.
    pub fn encode(&self, message: &[Scalar]) -> Result<Vec<Scalar>> {
        self.gen_reduced.vec_mul(message)
    }

    /// A form whose codeword is `m * gen_reduced`. For even `q` on line codes
    /// the representative is normalized to have a zero `(1,2)` entry.
    pub fn form_of_message(&self, message: &[Scalar]) -> Result<AlternatingForm> {
        if self.k() != 2 {
            return Err(Error::GradeMismatch(self.k()));
        }
        let coeffs = self.transform.vec_mul(message)?;
        let f = self.space.field();
        let m = self.space.dim();
        let mut s = MatrixGF::zeros(f, m, m);
        for (t, &c) in self.row_tuples.iter().zip(&coeffs) {
            s.set(t[0], t[1], c);
            s.set(t[1], t[0], f.neg(c));
        }
        let form = AlternatingForm::new(&self.space, s)?;
        if f.is_char2() {
            let c = form.matrix().get(0, 1);
            return form.add(&AlternatingForm::beta(&self.space)?.scale(c));
        }
        Ok(form)
    }

    /// Generator matrix in the plain text matrix format.
    pub fn gen_matrix_text(&self, reduced: bool) -> String {
        crate::exactla::text::write_matrix(if reduced { &self.gen_reduced } else { &self.gen_full })
    }
}

/// `(is_subcode, codimension)`: whether `symp` lies in `orth` as row spaces.
pub fn subcode_check(orth: &GrassCode, symp: &GrassCode) -> Result<(bool, usize)> {
    if orth.n_len() != symp.n_len() {
        return Err(Error::ColumnMisalignment("codes have different lengths".into()));
    }
    let inside = crate::exactla::row_space_contains(&orth.gen_reduced, &symp.gen_reduced)?;
    Ok((inside, orth.dim().saturating_sub(symp.dim())))
}

#[cfg(test)]
pub(crate) fn projective_line_count(q: u64, n: u32) -> u64 {
    (q.pow(2 * n) - 1) * (q.pow(2 * n - 2) - 1) / ((q - 1) * (q * q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::row_space_contains;
    use crate::ffield::FieldSpec;

    fn space(q: u32, n: usize) -> QuadraticSpace {
        QuadraticSpace::new(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    #[test]
    fn parameters() {
        for (q, n, k, nn, kk) in [(2, 2, 2, 15, 9), (2, 3, 2, 315, 20), (4, 2, 2, 85, 9), (3, 2, 2, 40, 10), (2, 3, 3, 135, 28)] {
            let code = orthogonal_code(&space(q, n), k).unwrap();
            assert_eq!((code.n_len(), code.dim()), (nn, kk), "q={q} n={n} k={k}");
            assert_eq!(code.pivot_rows().len(), kk);
            assert_eq!(code.gen_full().rank(), kk);
        }
    }

    #[test]
    fn transform_reproduces_reduced_generator() {
        for (q, n) in [(2, 2), (3, 2), (4, 2)] {
            let code = orthogonal_code(&space(q, n), 2).unwrap();
            assert_eq!(code.transform().mul(code.gen_full()).unwrap(), *code.gen_reduced());
            let dep = code.dependencies();
            if q % 2 == 0 {
                assert_eq!(dep.dim(), 1);
                assert!(dep.contains(&beta_coefficients(code.space(), code.row_tuples())).unwrap());
            } else {
                assert_eq!(dep.dim(), 0);
            }
        }
    }

    #[test]
    fn symplectic_parameters_and_subcode() {
        for (n, ks, codim) in [(2, 5, 4), (3, 14, 6)] {
            let sp = space(2, n);
            let orth = orthogonal_code(&sp, 2).unwrap();
            let symp = build_symplectic_code(&sp).unwrap();
            assert_eq!(symp.dim(), ks);
            assert_eq!(subcode_check(&orth, &symp).unwrap(), (true, codim));
            assert!(!row_space_contains(symp.gen_reduced(), orth.gen_reduced()).unwrap());
        }
        assert!(matches!(build_symplectic_code(&space(3, 2)), Err(Error::WrongCharacteristic(3))));
    }

    #[test]
    fn message_forms_encode_back() {
        for (q, n) in [(2, 2), (3, 2), (4, 2)] {
            let code = orthogonal_code(&space(q, n), 2).unwrap();
            let f = code.space().field().clone();
            for seed in 0..20u32 {
                let msg: Vec<Scalar> = (0..code.dim()).map(|i| Scalar::from_rep((seed * 31 + i as u32 * 7) % q)).collect();
                let form = code.form_of_message(&msg).unwrap();
                assert_eq!(codeword_of_form(&code, &form).unwrap().values(), code.encode(&msg).unwrap().as_slice());
                if f.is_char2() {
                    assert!(form.matrix().get(0, 1).is_zero());
                }
            }
        }
    }

    #[test]
    fn line_count_formula() {
        assert_eq!(projective_line_count(2, 2), 15);
        assert_eq!(projective_line_count(8, 2), 585);
    }
}
