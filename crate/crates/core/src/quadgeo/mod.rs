//! The parabolic quadric `Q(2n, q)` and everything hanging off it.

mod form;
mod section;
mod space;

pub use form::{index_pairs, AlternatingForm};
pub use section::{
    classify_section, cone_section_points, parabolic_section_points, radical_profile, section_census, serialize_subspace,
    RadicalProfile,
    SectionCensus, SectionClass,
};
pub use space::{EtaMutation, QuadraticSpace};
