//! Polar Grassmannians and their Plücker images.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactla::{canonical_point, determinant, SubspaceRREF};
use crate::ffield::{FieldSpec, Scalar};
use crate::quadgeo::QuadraticSpace;

/// Strictly increasing `k`-subsets of `0..m` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1usize, |acc, i| acc * (m - i) / (i + 1))
}

/// Wedge coordinates of a subspace, indexed by `k_subsets(ambient, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerVector {
    coords: Vec<Scalar>,
    k: usize,
}

impl PluckerVector {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

pub fn plucker_embed(s: &SubspaceRREF) -> Result<PluckerVector> {
    let k = s.dim();
    if k == 0 {
        return Err(Error::ZeroVector);
    }
    let b = s.basis();
    let coords: Vec<Scalar> = if k == 2 {
        let f = s.field();
        let (r0, r1) = (b.row(0), b.row(1));
        k_subsets(s.ambient(), 2)
            .iter()
            .map(|ij| f.sub(f.mul(r0[ij[0]], r1[ij[1]]), f.mul(r0[ij[1]], r1[ij[0]])))
            .collect()
    } else {
        k_subsets(s.ambient(), k).iter().map(|cols| determinant(&b.select_cols(cols))).collect::<Result<_>>()?
    };
    Ok(PluckerVector { coords: canonical_point(s.field(), &coords)?, k })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub label: SubspaceRREF,
    pub plucker: PluckerVector,
}

/// An ordered set of projective points given by their subspace labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSystem {
    columns: Vec<Column>,
    ambient_dim: usize,
    k: usize,
    field: FieldSpec,
}

impl ProjectiveSystem {
    pub fn from_labels(field: &FieldSpec, ambient_dim: usize, k: usize, labels: Vec<SubspaceRREF>) -> Result<Self> {
        let columns = labels
            .into_iter()
            .map(|label| {
                if label.dim() != k {
                    return Err(Error::BadGrade { k: label.dim(), max: k });
                }
                let plucker = plucker_embed(&label)?;
                Ok(Column { label, plucker })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = columns.first() {
            if c.plucker.coords.len() != ambient_dim {
                return Err(Error::DimensionMismatch("ambient dimension does not match Plücker length".into()));
            }
        }
        Ok(ProjectiveSystem { columns, ambient_dim, k, field: field.clone() })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Length of each Plücker vector.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// One line per column: `label rows separated by ';' | plucker coords`.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for c in &self.columns {
            let label: Vec<String> = c
                .label
                .basis()
                .row_iter()
                .map(|r| r.iter().map(|x| x.rep().to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let coords: Vec<String> = c.plucker.coords.iter().map(|x| x.rep().to_string()).collect();
            out.push_str(&label.join("; "));
            out.push_str(" | ");
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Totally singular `k`-subspaces of `V`, lexicographic on the RREF basis.
pub fn enumerate_delta_k(space: &QuadraticSpace, k: usize) -> Result<ProjectiveSystem> {
    if k == 0 || k > space.n() {
        return Err(Error::BadGrade { k, max: space.n() });
    }
    let field = space.field();
    let m = space.dim();
    let points = space.quadric_points();
    let mut level: BTreeSet<SubspaceRREF> = points
        .iter()
        .map(|p| SubspaceRREF::span(field, m, std::slice::from_ref(p)))
        .collect::<Result<_>>()?;
    for _ in 1..k {
        let mut next = BTreeSet::new();
        for u in &level {
            let basis = u.basis();
            for p in points {
                if basis.row_iter().all(|b| space.beta_unchecked(b, p).is_zero()) && !u.contains(p)? {
                    let mut rows: Vec<&[Scalar]> = basis.row_iter().collect();
                    rows.push(p);
                    next.insert(SubspaceRREF::span(field, m, &rows)?);
                }
            }
        }
        level = next;
    }
    ProjectiveSystem::from_labels(field, binomial(m, k), k, level.into_iter().collect())
}

/// `⟨ℓ, N⟩ / N`, written in the first `2n` coordinates.
pub fn iota_bar(space: &QuadraticSpace, line: &SubspaceRREF) -> Result<SubspaceRREF> {
    if !space.field().is_char2() {
        return Err(Error::WrongCharacteristic(space.field().p()));
    }
    let h = 2 * space.n();
    let rows: Vec<&[Scalar]> = line.basis().row_iter().map(|r| &r[..h]).collect();
    SubspaceRREF::span(space.field(), h, &rows)
}

/// The symplectic form induced by `beta` on `V/N`.
pub fn beta_sp(space: &QuadraticSpace, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let f = space.field();
    (0..space.n()).fold(Scalar::ZERO, |acc, i| {
        f.add(acc, f.add(f.mul(x[2 * i], y[2 * i + 1]), f.mul(x[2 * i + 1], y[2 * i])))
    })
}

/// Totally isotropic lines of `V/N`, in the column order of `Δ_2` via [`iota_bar`].
pub fn enumerate_symplectic_lines(space: &QuadraticSpace) -> Result<ProjectiveSystem> {
    if !space.field().is_char2() {
        return Err(Error::WrongCharacteristic(space.field().p()));
    }
    let delta = enumerate_delta_k(space, 2)?;
    let labels = delta
        .columns()
        .iter()
        .map(|c| {
            let img = iota_bar(space, &c.label)?;
            if img.dim() != 2 {
                return Err(Error::ColumnMisalignment("a singular line passes through the nucleus".into()));
            }
            Ok(img)
        })
        .collect::<Result<Vec<_>>>()?;
    let h = 2 * space.n();
    ProjectiveSystem::from_labels(space.field(), binomial(h, 2), 2, labels)
}
