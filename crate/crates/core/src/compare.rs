//! Equality tests between invariants, the spherical root lattice and the
//! equivariant automorphism group.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::datum::{validate_datum, valuation_cone, ColorRecord, SphericalDatum};
use crate::error::{invalid, Error, Result};
use crate::lattice::{cone_equal, quotient, AbelianGroupStructure, Cone, Lattice, Quotient};
use crate::monoid::monoid_equal;
use crate::rootsys::ParabolicSet;
use crate::{Int, Rat};

/// Cap on the number of color bijections enumerated.
pub const MAX_BIJECTIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Difference {
    WeightMonoids,
    WeightLattices,
    ValuationCones,
    Colors,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Difference::WeightMonoids => "weight monoids differ",
            Difference::WeightLattices => "weight lattices differ",
            Difference::ValuationCones => "valuation cones differ",
            Difference::Colors => "no bijection of colors preserves (phi, moved roots)",
        })
    }
}

/// Outcome of one of the comparison tests: the hypothesis holds exactly when
/// no difference was found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub differences: Vec<Difference>,
}

impl HypothesisCheck {
    pub fn holds(&self) -> bool {
        self.differences.is_empty()
    }
}

fn same_ambient(d1: &SphericalDatum, d2: &SphericalDatum) -> Result<()> {
    for d in [d1, d2] {
        let rep = validate_datum(d);
        if !rep.is_valid() {
            return invalid(format!("datum fails validation: {}", rep.failure_summary()));
        }
    }
    if d1.ambient() != d2.ambient() {
        return invalid(format!("ambient groups differ: {} vs {}", d1.ambient(), d2.ambient()));
    }
    Ok(())
}

/// Equal weight monoids: the test that decides isomorphism of smooth affine
/// spherical varieties.
pub fn check_weight_monoid_hypothesis(d1: &SphericalDatum, d2: &SphericalDatum) -> Result<HypothesisCheck> {
    same_ambient(d1, d2)?;
    let (Some(m1), Some(m2)) = (d1.weight_monoid(), d2.weight_monoid()) else {
        return invalid("both data need a weight monoid");
    };
    let mut out = HypothesisCheck::default();
    if !monoid_equal(m1, m2)? {
        out.differences.push(Difference::WeightMonoids);
    }
    Ok(out)
}

/// Equal weight monoids and equal valuation cones.
pub fn check_affine_hypothesis(d1: &SphericalDatum, d2: &SphericalDatum) -> Result<HypothesisCheck> {
    let mut out = check_weight_monoid_hypothesis(d1, d2)?;
    lattice_and_cone(d1, d2, &mut out)?;
    Ok(out)
}

fn lattice_and_cone(d1: &SphericalDatum, d2: &SphericalDatum, out: &mut HypothesisCheck) -> Result<()> {
    if d1.weight_lattice() != d2.weight_lattice() {
        out.differences.push(Difference::WeightLattices);
    } else if !cone_equal(&valuation_cone(d1)?, &valuation_cone(d2)?)? {
        out.differences.push(Difference::ValuationCones);
    }
    Ok(())
}

/// A bijection between the colors of two data, by id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorBijection {
    pub pairs: BTreeMap<String, String>,
}

impl ColorBijection {
    pub fn inverse(&self) -> ColorBijection {
        ColorBijection { pairs: self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }
}

impl fmt::Display for ColorBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Equal weight lattices and valuation cones, and every color bijection
/// preserving `phi` and the moved simple roots. The list is empty when the
/// lattice or cone differ or when no such bijection exists.
pub fn check_homogeneous_hypothesis(d1: &SphericalDatum, d2: &SphericalDatum) -> Result<Vec<ColorBijection>> {
    Ok(compare_homogeneous(d1, d2)?.1)
}

pub fn compare_homogeneous(d1: &SphericalDatum, d2: &SphericalDatum) -> Result<(HypothesisCheck, Vec<ColorBijection>)> {
    same_ambient(d1, d2)?;
    let mut out = HypothesisCheck::default();
    lattice_and_cone(d1, d2, &mut out)?;
    if !out.holds() {
        return Ok((out, vec![]));
    }
    let bij = color_bijections(d1.colors(), d2.colors(), MAX_BIJECTIONS)?;
    if bij.is_empty() {
        out.differences.push(Difference::Colors);
    }
    Ok((out, bij))
}

type Signature = (Vec<Int>, ParabolicSet);

fn classes(colors: &[ColorRecord]) -> BTreeMap<Signature, Vec<String>> {
    let mut m: BTreeMap<Signature, Vec<String>> = BTreeMap::new();
    for c in colors {
        m.entry((c.phi.clone(), c.moved_roots.clone())).or_default().push(c.id.clone());
    }
    m
}

/// All signature-preserving bijections `c1 -> c2`, in lexicographic order.
pub fn color_bijections(c1: &[ColorRecord], c2: &[ColorRecord], cap: usize) -> Result<Vec<ColorBijection>> {
    let k1 = classes(c1);
    let k2 = classes(c2);
    let shape = |k: &BTreeMap<Signature, Vec<String>>| k.iter().map(|(s, v)| (s.clone(), v.len())).collect::<Vec<_>>();
    if c1.len() != c2.len() || shape(&k1) != shape(&k2) {
        return Ok(vec![]);
    }
    let mut count: u128 = 1;
    for v in k1.values() {
        for i in 2..=v.len() as u128 {
            count = count.saturating_mul(i);
        }
    }
    if count > cap as u128 {
        return Err(Error::CapExceeded(format!("{count} color bijections exceed the cap of {cap}")));
    }
    let slots: Vec<(&[String], &[String])> = k1.iter().map(|(s, v)| (v.as_slice(), k2[s].as_slice())).collect();
    let mut used: Vec<Vec<bool>> = slots.iter().map(|s| vec![false; s.1.len()]).collect();
    let mut out = Vec::new();
    extend(&slots, 0, 0, &mut used, &mut BTreeMap::new(), &mut out);
    out.sort();
    Ok(out)
}

fn extend(
    slots: &[(&[String], &[String])],
    class: usize,
    pos: usize,
    used: &mut [Vec<bool>],
    current: &mut BTreeMap<String, String>,
    out: &mut Vec<ColorBijection>,
) {
    let Some(&(from, to)) = slots.get(class) else {
        out.push(ColorBijection { pairs: current.clone() });
        return;
    };
    if pos == from.len() {
        extend(slots, class + 1, 0, used, current, out);
        return;
    }
    for j in 0..to.len() {
        if !used[class][j] {
            used[class][j] = true;
            current.insert(from[pos].clone(), to[j].clone());
            extend(slots, class, pos + 1, used, current, out);
            current.remove(&from[pos]);
            used[class][j] = false;
        }
    }
}

/// Lattice spanned by the spherical roots, each multiplied by its doubling.
pub fn root_lattice(d: &SphericalDatum) -> Result<Lattice> {
    let rep = validate_datum(d);
    if !rep.is_valid() {
        return invalid(format!("datum fails validation: {}", rep.failure_summary()));
    }
    let gens: Vec<Vec<Int>> = d
        .spherical_roots()
        .iter()
        .map(|a| a.coords.iter().map(|x| x * Int::from(a.doubling)).collect())
        .collect();
    Lattice::new(d.ambient().ambient_rank(), &gens)
}

/// The automorphism group, dual to the quotient of the weight lattice by the
/// spherical root lattice: a torus of the free rank times the same finite
/// cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub structure: AbelianGroupStructure,
    /// Classes generating the quotient, one per invariant factor and then
    /// one per free direction, in ambient coordinates.
    pub character_basis: Vec<Vec<Int>>,
}

impl AutGroup {
    pub fn torus_rank(&self) -> usize {
        self.structure.free_rank
    }

    pub fn finite_factors(&self) -> &[Int] {
        &self.structure.invariant_factors
    }

    /// `None` when the group has a torus part.
    pub fn order(&self) -> Option<Int> {
        self.structure.order()
    }
}

impl fmt::Display for AutGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.torus_rank() > 0 {
            parts.push(format!("T^{}", self.torus_rank()));
        }
        for d in self.finite_factors() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub fn aut_group(d: &SphericalDatum) -> Result<AutGroup> {
    let q: Quotient = quotient(d.weight_lattice(), &root_lattice(d)?)?;
    let mut character_basis: Vec<Vec<Int>> = q
        .divisors
        .iter()
        .zip(&q.adapted_basis)
        .filter(|(div, _)| !div.is_one())
        .map(|(_, b)| b.clone())
        .collect();
    character_basis.extend(q.adapted_basis[q.divisors.len()..].iter().cloned());
    Ok(AutGroup { structure: q.structure, character_basis })
}

/// Momentum polytope with an isotropy label, for the multiplicity-free
/// compact case. Vertices are stored canonically (extreme points only,
/// sorted) so equality is plain comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantData {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    isotropy_label: String,
}

impl DelzantData {
    pub fn new(vertices: &[Vec<Rat>], isotropy_label: impl Into<String>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return invalid("a polytope needs at least one vertex");
        };
        let dim = first.len();
        if vertices.iter().any(|v| v.len() != dim) {
            return invalid("vertices have different dimensions");
        }
        let lifted: Vec<Vec<Rat>> = vertices
            .iter()
            .map(|v| v.iter().cloned().chain(std::iter::once(Rat::one())).collect())
            .collect();
        let cone = Cone::from_generators(dim + 1, &lifted)?;
        let mut out: Vec<Vec<Rat>> = cone
            .generators()
            .iter()
            .map(|g| {
                let t = Rat::from_integer(g[dim].clone());
                g[..dim].iter().map(|x| Rat::from_integer(x.clone()) / &t).collect()
            })
            .collect();
        out.sort();
        Ok(Self { dim, vertices: out, isotropy_label: isotropy_label.into() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn isotropy_label(&self) -> &str {
        &self.isotropy_label
    }
}

pub fn compare_delzant(m1: &DelzantData, m2: &DelzantData) -> Result<bool> {
    if m1.dim != m2.dim {
        return invalid(format!("polytopes live in dimensions {} and {}", m1.dim, m2.dim));
    }
    Ok(m1 == m2)
}
