use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{MatrixGF, SubspaceRREF};

use super::{AlternatingForm, QuadraticSpace};

/// Projective type of `Q ∩ s` for a subspace `s` of dimension `2n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SectionClass {
    Parabolic,
    HyperbolicCone,
    EllipticCone,
    LineVertexParabolic,
    Other,
}

impl SectionClass {
    pub const ALL: [SectionClass; 5] = [
        SectionClass::Parabolic,
        SectionClass::HyperbolicCone,
        SectionClass::EllipticCone,
        SectionClass::LineVertexParabolic,
        SectionClass::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SectionClass::Parabolic => "PARABOLIC",
            SectionClass::HyperbolicCone => "HYPERBOLIC_CONE",
            SectionClass::EllipticCone => "ELLIPTIC_CONE",
            SectionClass::LineVertexParabolic => "LINE_VERTEX_PARABOLIC",
            SectionClass::Other => "OTHER",
        }
    }

    pub fn parse(s: &str) -> Option<SectionClass> {
        SectionClass::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for SectionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCensus {
    pub point_count: u64,
    pub sigma: u64,
    pub vertex: SubspaceRREF,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalProfile {
    #[serde(serialize_with = "serialize_subspace")]
    pub radical: SubspaceRREF,
    pub rad_dim: usize,
    pub contains_nucleus: bool,
    pub section_class: SectionClass,
    pub point_count: u64,
    pub sigma: u64,
    pub vertex_dim: usize,
}

pub fn serialize_subspace<S: Serializer>(s: &SubspaceRREF, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<u32>> = s.basis().row_iter().map(|r| r.iter().map(|x| x.rep()).collect()).collect();
    rows.serialize(ser)
}

pub(crate) fn ipow(q: u64, e: u32) -> u64 {
    q.pow(e)
}

/// Number of points of `Q(2n-2, q)`, shared by the two parabolic classes.
pub fn parabolic_section_points(q: u64, n: usize) -> u64 {
    (ipow(q, 2 * n as u32 - 2) - 1) / (q - 1)
}

/// Cone over `Q^+(2n-3, q)` (`sign = 1`) or `Q^-(2n-3, q)` (`sign = -1`).
pub fn cone_section_points(q: u64, n: usize, sign: i64) -> u64 {
    let a = ipow(q, n as u32 - 1) as i64;
    let b = ipow(q, n as u32 - 2) as i64;
    let q = q as i64;
    (q * (a - sign) * (b + sign) / (q - 1) + 1) as u64
}

/// Point count, `sigma` and vertex of `Q ∩ s`, all by enumeration.
pub fn section_census(space: &QuadraticSpace, s: &SubspaceRREF) -> Result<SectionCensus> {
    if s.ambient() != space.dim() || s.field() != space.field() {
        return Err(Error::DimensionMismatch("subspace does not live in the quadratic space".into()));
    }
    let field = space.field();
    let points: Vec<Vec<_>> = s.canonical_points().filter(|x| space.is_singular(x)).collect();

    let mut lines = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        for r in &points[i + 1..] {
            if space.beta_unchecked(p, r).is_zero() {
                lines.insert(SubspaceRREF::span(field, space.dim(), &[p, r])?);
            }
        }
    }

    // Radical of beta restricted to s, then its singular part.
    let b = s.basis();
    let k = b.rows();
    let mut gram = MatrixGF::zeros(field, k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(j, i, space.beta_unchecked(b.row(i), b.row(j)));
        }
    }
    let coeffs = gram.kernel();
    let rad = s.image_of_coefficients(&coeffs)?;
    let singular: Vec<Vec<_>> = rad.canonical_points().filter(|x| space.is_singular(x)).collect();
    let vertex = SubspaceRREF::span(field, space.dim(), &singular)?;
    let q = field.q() as u64;
    if (ipow(q, vertex.dim() as u32) - 1) / (q - 1) != singular.len() as u64 {
        return Err(Error::VertexNotSubspace);
    }

    Ok(SectionCensus { point_count: points.len() as u64, sigma: lines.len() as u64, vertex })
}

fn class_of(space: &QuadraticSpace, s: &SubspaceRREF, census: &SectionCensus) -> SectionClass {
    let n = space.n();
    if n < 2 || s.dim() != 2 * n - 1 {
        return SectionClass::Other;
    }
    let q = space.q() as u64;
    let pts = census.point_count;
    match census.vertex.dim() {
        0 if pts == parabolic_section_points(q, n) => SectionClass::Parabolic,
        1 if pts == cone_section_points(q, n, 1) => SectionClass::HyperbolicCone,
        1 if pts == cone_section_points(q, n, -1) => SectionClass::EllipticCone,
        2 if pts == parabolic_section_points(q, n) => SectionClass::LineVertexParabolic,
        _ => SectionClass::Other,
    }
}

fn contains_nucleus(space: &QuadraticSpace, s: &SubspaceRREF) -> bool {
    space.nucleus().ok().is_some_and(|nuc| s.contains_subspace(&nuc).unwrap_or(false))
}

/// Classifies `Q ∩ s` for `dim s = 2n - 1`.
pub fn classify_section(space: &QuadraticSpace, s: &SubspaceRREF) -> Result<RadicalProfile> {
    if space.n() < 2 || s.dim() != 2 * space.n() - 1 {
        return Err(Error::DimensionMismatch(format!(
            "section of dimension {} (expected {})",
            s.dim(),
            (2 * space.n()).saturating_sub(1)
        )));
    }
    profile_of(space, s)
}

fn profile_of(space: &QuadraticSpace, s: &SubspaceRREF) -> Result<RadicalProfile> {
    let census = section_census(space, s)?;
    Ok(RadicalProfile {
        radical: s.clone(),
        rad_dim: s.dim(),
        contains_nucleus: contains_nucleus(space, s),
        section_class: class_of(space, s, &census),
        point_count: census.point_count,
        sigma: census.sigma,
        vertex_dim: census.vertex.dim(),
    })
}

/// Profile of the radical of `form`; radicals of other dimensions get class `OTHER`.
pub fn radical_profile(form: &AlternatingForm) -> Result<RadicalProfile> {
    profile_of(form.space(), &form.radical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::for_each_subspace;
    use crate::ffield::{FieldSpec, Scalar};
    use std::collections::BTreeMap;
    use std::ops::ControlFlow;

    fn space(q: u32, n: usize) -> QuadraticSpace {
        QuadraticSpace::new(&FieldSpec::with_order(q).unwrap(), n).unwrap()
    }

    fn unit(m: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; m];
        v[i] = Scalar::ONE;
        v
    }

    /// Closed-form (points, sigma) for each class; the `n = 2` terms with
    /// negative exponents carry a vanishing factor and are dropped.
    fn closed_form(class: SectionClass, q: u64, n: u32) -> (u64, u64) {
        let p = |e: u32| q.pow(e);
        let par_pts = (p(2 * n - 2) - 1) / (q - 1);
        match class {
            SectionClass::Parabolic => (par_pts, (p(2 * n - 4) - 1) * (p(2 * n - 2) - 1) / ((q * q - 1) * (q - 1))),
            SectionClass::HyperbolicCone => {
                let tail = if n >= 3 {
                    q * q * (p(2 * n - 4) - 1) * (p(n - 1) - 1) * (p(n - 3) + 1) / ((q * q - 1) * (q - 1))
                } else {
                    0
                };
                (
                    q * (p(n - 1) - 1) * (p(n - 2) + 1) / (q - 1) + 1,
                    (p(n - 1) - 1) * (p(n - 2) + 1) / (q - 1) + tail,
                )
            }
            SectionClass::EllipticCone => {
                let tail = if n >= 3 {
                    q * q * (p(2 * n - 4) - 1) * (p(n - 1) + 1) * (p(n - 3) - 1) / ((q * q - 1) * (q - 1))
                } else {
                    0
                };
                (
                    q * (p(n - 1) + 1) * (p(n - 2) - 1) / (q - 1) + 1,
                    (p(n - 1) + 1) * (p(n - 2) - 1) / (q - 1) + tail,
                )
            }
            SectionClass::LineVertexParabolic => {
                let inner = if n >= 3 { q * q * (p(2 * n - 6) - 1) * (p(2 * n - 4) - 1) / ((q * q - 1) * (q - 1)) } else { 0 };
                (par_pts, 1 + q * (p(2 * n - 4) - 1) / (q - 1) + q * q * (inner + (p(2 * n - 4) - 1) / (q - 1)))
            }
            SectionClass::Other => unreachable!(),
        }
    }

    #[test]
    fn whole_space_census() {
        let sp = space(2, 2);
        let full = SubspaceRREF::full(sp.field(), 5);
        let c = section_census(&sp, &full).unwrap();
        assert_eq!((c.point_count, c.sigma), (15, 15));
        assert_eq!(c.vertex.dim(), 0);
        let c = section_census(&space(2, 3), &SubspaceRREF::full(&FieldSpec::with_order(2).unwrap(), 7)).unwrap();
        // generalized quadrangle count for Q(6,2): 63 points, 315 lines
        assert_eq!((c.point_count, c.sigma), (63, 315));
    }

    #[test]
    fn singular_line_census() {
        let sp = space(4, 2);
        let line = SubspaceRREF::span(sp.field(), 5, &[unit(5, 0), unit(5, 2)]).unwrap();
        let c = section_census(&sp, &line).unwrap();
        assert_eq!((c.point_count, c.sigma), (5, 1));
        assert_eq!(c.vertex, line);
    }

    #[test]
    fn small_conic_is_parabolic() {
        // <e1, e2, e5>: eta = x1 x2 + x5^2 restricted, a conic with 3 points
        let sp = space(2, 2);
        let s = SubspaceRREF::span(sp.field(), 5, &[unit(5, 0), unit(5, 1), unit(5, 4)]).unwrap();
        let brute = s.canonical_points().filter(|x| sp.eta(x).unwrap().is_zero()).count();
        let p = classify_section(&sp, &s).unwrap();
        assert_eq!(p.point_count as usize, brute);
        assert_eq!(p.point_count, 3);
        assert_eq!(p.section_class, SectionClass::Parabolic);
        assert!(p.contains_nucleus);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let sp = space(2, 2);
        let full = SubspaceRREF::full(sp.field(), 5);
        assert!(matches!(classify_section(&sp, &full), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn odd_dimension_sections_without_points_are_other() {
        // elliptic-type plane with no singular points cannot occur in PG(2,q)
        // for dimension 3, so use a degenerate hyperbolic pair in (3,2)
        let sp = space(3, 2);
        let s = SubspaceRREF::span(sp.field(), 5, &[unit(5, 0), unit(5, 2), unit(5, 3)]).unwrap();
        let p = classify_section(&sp, &s).unwrap();
        // eta = x3 x4 on <e1,e3,e4>: two lines through e1, vertex e1
        assert_eq!(p.point_count, 2 * 3 + 1);
        assert_eq!(p.vertex_dim, 1);
        assert_eq!(p.section_class, SectionClass::HyperbolicCone);
    }

    /// Every radical-type section that occurs matches its closed form, and all
    /// four classes occur.
    fn census_all_sections(q: u32, n: usize) {
        let sp = space(q, n);
        let mut seen: BTreeMap<SectionClass, (u64, u64, usize)> = BTreeMap::new();
        let _ = for_each_subspace(sp.field(), 2 * n + 1, 2 * n - 1, |s| {
            let p = classify_section(&sp, s).unwrap();
            let entry = seen.entry(p.section_class).or_insert((p.point_count, p.sigma, 0));
            if p.section_class != SectionClass::Other {
                assert_eq!((entry.0, entry.1), (p.point_count, p.sigma));
            }
            entry.2 += 1;
            ControlFlow::<()>::Continue(())
        });
        for class in [
            SectionClass::Parabolic,
            SectionClass::HyperbolicCone,
            SectionClass::EllipticCone,
            SectionClass::LineVertexParabolic,
        ] {
            let (pts, sigma, _) = seen.get(&class).copied().unwrap_or_else(|| panic!("{class} missing for q={q} n={n}"));
            assert_eq!((pts, sigma), closed_form(class, q as u64, n as u32), "{class} q={q} n={n}");
        }
        assert!(!seen.contains_key(&SectionClass::Other) || q % 2 == 1);
    }

    #[test]
    fn section_classes_match_closed_forms_2_2() {
        census_all_sections(2, 2);
    }

    #[test]
    fn section_classes_match_closed_forms_4_2() {
        census_all_sections(4, 2);
    }

    #[test]
    fn section_classes_match_closed_forms_2_3() {
        census_all_sections(2, 3);
    }

    #[test]
    fn golden_n3_sigma_values() {
        assert_eq!(closed_form(SectionClass::Parabolic, 2, 3), (15, 15));
        assert_eq!(closed_form(SectionClass::HyperbolicCone, 2, 3), (19, 33));
        assert_eq!(closed_form(SectionClass::EllipticCone, 2, 3), (11, 5));
        assert_eq!(closed_form(SectionClass::LineVertexParabolic, 2, 3), (15, 19));
    }

    #[test]
    fn profile_of_elementary_form() {
        let sp = space(2, 3);
        let f = AlternatingForm::elementary(&sp, 0, 1).unwrap();
        let p = radical_profile(&f).unwrap();
        assert_eq!(p.rad_dim, 5);
        assert!(p.contains_nucleus);
        // <e3..e7>: eta = x3x4 + x5x6 + x7^2 is a parabolic Q(4,2)
        assert_eq!(p.section_class, SectionClass::Parabolic);
        let z = radical_profile(&AlternatingForm::zero(&sp)).unwrap();
        assert_eq!(z.section_class, SectionClass::Other);
        assert_eq!(z.point_count, 63);
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["section_class"], "PARABOLIC");
        assert_eq!(json["radical"].as_array().unwrap().len(), 5);
    }
}
