//! Bundled surfaces and plane curves. Every surface `name` also exists as
//! `name_random`, the same surface in seeded random coordinates.

use crate::error::{Error, Result};
use crate::plane::{load_plane_curve, PlaneCurve};
use crate::surface::{load_surface, SurfaceModel, RANDOM_VARIANT_SEED};

const SURFACES: &[(&str, &str)] = &[
    ("fermat_quartic", include_str!("../fixtures/surfaces/fermat_quartic.json")),
    ("smooth_quadric", include_str!("../fixtures/surfaces/smooth_quadric.json")),
    ("smooth_cubic", include_str!("../fixtures/surfaces/smooth_cubic.json")),
    ("steiner_roman", include_str!("../fixtures/surfaces/steiner_roman.json")),
    ("cone_cubic", include_str!("../fixtures/surfaces/cone_cubic.json")),
    ("cone_quartic", include_str!("../fixtures/surfaces/cone_quartic.json")),
];

const CURVES: &[(&str, &str)] = &[
    ("nodal_cubic", include_str!("../fixtures/curves/nodal_cubic.json")),
    ("nodal_quartic", include_str!("../fixtures/curves/nodal_quartic.json")),
    ("smooth_conic", include_str!("../fixtures/curves/smooth_conic.json")),
    ("smooth_cubic_curve", include_str!("../fixtures/curves/smooth_cubic_curve.json")),
    ("smooth_quartic_curve", include_str!("../fixtures/curves/smooth_quartic_curve.json")),
];

const RANDOM_SUFFIX: &str = "_random";

/// Base surface names; each also has a `_random` variant.
pub fn surface_names() -> Vec<&'static str> {
    SURFACES.iter().map(|(n, _)| *n).collect()
}

/// Every loadable surface name, originals first.
pub fn all_surface_names() -> Vec<String> {
    let base = surface_names();
    base.iter()
        .map(|n| n.to_string())
        .chain(base.iter().map(|n| format!("{n}{RANDOM_SUFFIX}")))
        .collect()
}

pub fn curve_names() -> Vec<&'static str> {
    CURVES.iter().map(|(n, _)| *n).collect()
}

/// The JSON text of a bundled original surface.
pub fn surface_source(name: &str) -> Option<&'static str> {
    SURFACES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn curve_source(name: &str) -> Option<&'static str> {
    CURVES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn is_surface(name: &str) -> bool {
    surface_source(name.strip_suffix(RANDOM_SUFFIX).unwrap_or(name)).is_some()
}

pub fn surface(name: &str) -> Result<SurfaceModel> {
    if let Some(text) = surface_source(name) {
        return load_surface(text);
    }
    let Some(base) = name.strip_suffix(RANDOM_SUFFIX) else { return Err(Error::UnknownFixture(name.to_string())) };
    let text = surface_source(base).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let mut s = load_surface(text)?.randomized(RANDOM_VARIANT_SEED)?;
    s.name = name.to_string();
    Ok(s)
}

pub fn curve(name: &str) -> Result<PlaneCurve> {
    load_plane_curve(curve_source(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for name in all_surface_names() {
            let s = surface(&name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(s.name, name);
            assert_eq!(s.generic_coordinates, name.ends_with(RANDOM_SUFFIX));
        }
        for name in curve_names() {
            assert_eq!(curve(name).unwrap().name, name);
        }
        assert!(matches!(surface("klein_quartic"), Err(Error::UnknownFixture(_))));
    }
}
