//! Passing to the Levi section of a parabolic localization.
//!
//! The section's ambient root system is the Levi restriction of the parent:
//! same weight grid, same simple-root labels, fewer simple roots. Colors keep
//! their ids, spherical roots keep their coordinates and doubling flags.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::datum::{fmt_vec, validate_datum, SphericalDatum};
use crate::error::{invalid, Result};
use crate::monoid::{is_unit, monoid_contains, WeightMonoid};
use crate::rootsys::ParabolicSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationResult {
    /// Labels of the simple roots of the section's Levi subgroup.
    pub levi: ParabolicSet,
    pub section_datum: SphericalDatum,
    /// Ids of the colors that do not survive, sorted.
    pub dropped_colors: Vec<String>,
    pub notes: Vec<String>,
}

/// Localization at a non-unit element `mu` of the weight monoid.
pub fn localize_at_weight(d: &SphericalDatum, mu: &[i64]) -> Result<LocalizationResult> {
    let mu: Vec<_> = mu.iter().map(|&x| x.into()).collect();
    localize_at_weight_int(d, &mu)
}

pub fn localize_at_weight_int(d: &SphericalDatum, mu: &[crate::Int]) -> Result<LocalizationResult> {
    let m = checked_monoid(d, mu)?;
    if is_unit(m, mu)? {
        return invalid(format!("{} is a unit of the weight monoid", fmt_vec(mu)));
    }
    at_element(d, mu)
}

/// Localization at any element of the weight monoid, units included.
/// Localizing a section again at the same weight returns the section.
pub fn localize_at_monoid_element(d: &SphericalDatum, mu: &[crate::Int]) -> Result<LocalizationResult> {
    checked_monoid(d, mu)?;
    at_element(d, mu)
}

fn checked_monoid<'a>(d: &'a SphericalDatum, mu: &[crate::Int]) -> Result<&'a WeightMonoid> {
    let report = validate_datum(d);
    if !report.is_valid() {
        return invalid(format!("datum fails validation: {}", report.failure_summary()));
    }
    let Some(m) = d.weight_monoid() else {
        return invalid("localizing at a weight needs the weight monoid");
    };
    if mu.len() != m.dim() {
        return invalid(format!("weight has {} coordinates, ambient rank is {}", mu.len(), m.dim()));
    }
    if monoid_contains(m, mu)?.is_none() {
        return invalid(format!("{} is not in the weight monoid", fmt_vec(mu)));
    }
    Ok(m)
}

fn at_element(d: &SphericalDatum, mu: &[crate::Int]) -> Result<LocalizationResult> {
    let levi = d.ambient().stabilizer_levi_of_weight(mu)?;
    let mut dropped = BTreeSet::new();
    for c in d.colors() {
        if !d.pair(&c.phi, mu)?.is_zero() {
            dropped.insert(c.id.clone());
        }
    }
    let mut res = transfer(d, &dropped, &levi)?;
    let m = d.weight_monoid().expect("checked above");
    let neg: Vec<_> = mu.iter().map(|x| -x).collect();
    let local = m.with_generator(neg)?;
    res.section_datum = res.section_datum.with_weight_monoid(Some(local))?;
    res.notes.push(format!("weight monoid localized: -{} adjoined", fmt_vec(mu)));
    Ok(res)
}

/// Localization given directly by the set of colors that do not survive and
/// the section's Levi labels.
pub fn localize_at_divisors(d: &SphericalDatum, dropped: &BTreeSet<String>, levi: &ParabolicSet) -> Result<LocalizationResult> {
    for id in dropped {
        if d.color(id).is_none() {
            return invalid(format!("{id:?} is not a color of the datum"));
        }
    }
    d.ambient().check_labels(levi)?;
    let mut res = transfer(d, dropped, levi)?;
    if d.weight_monoid().is_some() {
        res.notes.push("weight monoid carried over unchanged: no weight was given to invert".into());
    }
    Ok(res)
}

fn transfer(d: &SphericalDatum, dropped: &BTreeSet<String>, levi: &ParabolicSet) -> Result<LocalizationResult> {
    let ambient = d.ambient().restrict(levi)?;
    let colors = d
        .colors()
        .iter()
        .filter(|c| !dropped.contains(&c.id))
        .map(|c| {
            let mut c = c.clone();
            c.moved_roots = c.moved_roots.intersection(levi);
            c
        })
        .collect();
    let roots: Vec<_> = d.spherical_roots().iter().filter(|a| ambient.in_root_span(&a.coords)).cloned().collect();
    let kept_roots = roots.len();
    let section = SphericalDatum::new(ambient, d.weight_lattice().clone(), roots, colors, d.weight_monoid().cloned())?;
    let mut notes = Vec::new();
    if kept_roots > 0 {
        notes.push("doubling flags and coroots of surviving spherical roots carried over unchanged".into());
    }
    Ok(LocalizationResult { levi: levi.clone(), section_datum: section, dropped_colors: dropped.iter().cloned().collect(), notes })
}
