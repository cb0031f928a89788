//! Isomorphism, autotopism and isotopy classification of semifields.
//!
//! Principal isotopes `D_{x,y}` are the backbone: autotopisms of `D`
//! correspond to isomorphisms `D → D_{x,y}`, the census partitions the
//! `D_{x,y}` into isomorphism classes, and `D'` is isotopic to `D` iff it is
//! isomorphic to some `D_{x,y}`.

mod autotopy;
pub mod group;
mod iso;
mod isotopy;
mod record;
mod scan;
mod tables;

pub use autotopy::{
    autotopism_group, is_autotopism, triangle_orbits, AutotopismGroup, OrbitStructure,
    TriangleOrbits, DEFAULT_CAP,
};
pub use iso::{
    aut_order, is_homomorphism, is_isomorphic, isomorphisms, isomorphisms_with, IsoPlan,
};
pub use isotopy::{
    classify_collection, is_isotopic, s3_orbit, s3_transform, Classification, IsotopyClasses,
    IsotopyInvariant,
};
pub use record::{format_census, parse_census, sa_sum, PlaneRecord, Stages};
pub use scan::{at_count, at_order, census, AtCount, Census, PrincipalScan, SelfIsotope};
pub use tables::{image_table, Isotope, IsotopeScanner, Tables};

use crate::algebra::Semifield;
use crate::cube::Isotopy;
use crate::error::Result;

/// Structure of `At(D)` when it has at most
/// [`group::STRUCTURE_LIMIT`] elements.
pub fn autotopism_structure(
    d: &Semifield,
    group: &AutotopismGroup,
) -> Result<Option<group::GroupStructure>> {
    let Some(elements) = &group.elements else {
        return Ok(None);
    };
    let id = Isotopy::identity(d.field(), d.basis().dim())?;
    Ok(group::structure(id, elements))
}
