use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::for_each_subspace;
use crate::quadgeo::{classify_section, radical_profile, AlternatingForm, QuadraticSpace, RadicalProfile, SectionClass};

use super::{GrassCode, ScanResult};

/// First rank-2 form, in lexicographic order of its 2-dimensional annihilator
/// in `V*`, whose radical section has class `class`. In even characteristic the
/// radical is also required to miss the nucleus, except for the line-vertex
/// class whose radical always contains it.
pub fn min_weight_form(space: &QuadraticSpace, class: SectionClass) -> Result<AlternatingForm> {
    let m = space.dim();
    let even = space.field().is_char2() && class != SectionClass::LineVertexParabolic;
    let found = for_each_subspace(space.field(), m, 2, |ann| {
        let radical = ann.basis().kernel();
        match classify_section(space, &radical) {
            Ok(p) if p.section_class == class && !(even && p.contains_nucleus) => ControlFlow::Break(
                AlternatingForm::wedge(space, ann.basis().row(0), ann.basis().row(1)),
            ),
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => ControlFlow::Break(Err(e)),
        }
    });
    found.unwrap_or_else(|| Err(Error::ClassNotFound(class.name().to_string())))
}

fn signature(p: &RadicalProfile) -> String {
    format!(
        "rad_dim={} class={} points={} sigma={} vertex_dim={} nucleus={}",
        p.rad_dim, p.section_class, p.point_count, p.sigma, p.vertex_dim, p.contains_nucleus
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub message: Vec<u32>,
    pub signature: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub total: usize,
    pub passing: usize,
    /// Only meaningful for even `q`; odd `q` has no expected profile.
    pub expected_profile_checked: bool,
    pub violations: Vec<String>,
    /// Profile signature counts over the minimum-weight words.
    pub signatures: BTreeMap<String, u64>,
    pub all_identical: bool,
}

/// Checks every minimum-weight word found by an exhaustive scan.
///
/// For even `q` a word passes when some coset representative `f + a beta` has
/// a radical of dimension `2n - 1` avoiding the nucleus and meeting the quadric
/// in a hyperbolic cone. For odd `q` the profiles are only tallied.
pub fn min_weight_structural_scan(code: &GrassCode, scan: &ScanResult) -> Result<StructuralReport> {
    let space = code.space();
    if scan.witness_messages.len() as u64 != scan.min_weight_count {
        return Err(Error::Inconsistent("scan did not keep every minimum-weight message".into()));
    }
    let even = space.field().is_char2();
    let n = space.n();
    let beta = if even { Some(AlternatingForm::beta(space)?) } else { None };
    let mut signatures = BTreeMap::new();
    let mut violations = Vec::new();
    let mut passing = 0;
    for msg in &scan.witness_messages {
        let f = code.form_of_message(msg)?;
        let check = match &beta {
            Some(b) => {
                let mut chosen = None;
                let mut first = None;
                for a in space.field().elements() {
                    let p = radical_profile(&f.add(&b.scale(a))?)?;
                    let ok = p.rad_dim == 2 * n - 1 && !p.contains_nucleus && p.section_class == SectionClass::HyperbolicCone;
                    if ok && chosen.is_none() {
                        chosen = Some(p.clone());
                    }
                    first.get_or_insert(p);
                }
                let pass = chosen.is_some();
                let p = chosen.or(first).expect("field is nonempty");
                WitnessCheck { message: msg.iter().map(|x| x.rep()).collect(), signature: signature(&p), pass }
            }
            None => {
                let p = radical_profile(&f)?;
                WitnessCheck { message: msg.iter().map(|x| x.rep()).collect(), signature: signature(&p), pass: true }
            }
        };
        if check.pass {
            passing += 1;
        } else {
            violations.push(format!("message {:?}: {}", check.message, check.signature));
        }
        *signatures.entry(check.signature).or_insert(0) += 1;
    }
    Ok(StructuralReport {
        total: scan.witness_messages.len(),
        passing,
        expected_profile_checked: even,
        violations,
        all_identical: signatures.len() <= 1,
        signatures,
    })
}
