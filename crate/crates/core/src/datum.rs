//! The basic combinatorial invariants of a spherical homogeneous space.
//!
//! Coordinates: the weight lattice, spherical roots and weight-monoid
//! generators are vectors in the ambient weight grid of the root system.
//! Color vectors `phi`, explicit coroots and the valuation cone live in the
//! dual of the weight lattice, written in the dual basis of the lattice's
//! canonical (Hermite) basis.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::lattice::linalg::{self, dot_int, dot_mixed, to_rat};
use crate::lattice::{is_primitive, Cone, Lattice};
use crate::monoid::WeightMonoid;
use crate::rootsys::{generate_group, ParabolicSet, Reflection, ReflectionGroup, RootSystem, DEFAULT_GROUP_CAP};
use crate::{Int, Rat};

/// A `B`-stable prime divisor: its vector `phi` on the weight lattice and
/// the simple roots moving it (those not in its stabilizer parabolic).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorRecord {
    pub id: String,
    pub phi: Vec<Int>,
    pub moved_roots: ParabolicSet,
}

impl ColorRecord {
    pub fn new(id: impl Into<String>, phi: Vec<Int>, moved_roots: ParabolicSet) -> Self {
        Self { id: id.into(), phi, moved_roots }
    }

    /// What a color bijection must preserve.
    pub fn signature(&self) -> (&[Int], &ParabolicSet) {
        (&self.phi, &self.moved_roots)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphericalRoot {
    /// Ambient weight coordinates.
    pub coords: Vec<Int>,
    /// Coefficient (1 or 2) turning the root into a root-lattice basis vector.
    pub doubling: u8,
    /// Dual vector with `<root, coroot> = 2`, in lattice-dual coordinates.
    pub coroot: Option<Vec<Rat>>,
}

impl SphericalRoot {
    pub fn new(coords: Vec<Int>, doubling: u8) -> Self {
        Self { coords, doubling, coroot: None }
    }

    pub fn with_coroot(mut self, coroot: Vec<Rat>) -> Self {
        self.coroot = Some(coroot);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalDatum {
    ambient: RootSystem,
    weight_lattice: Lattice,
    spherical_roots: Vec<SphericalRoot>,
    colors: Vec<ColorRecord>,
    weight_monoid: Option<WeightMonoid>,
}

impl SphericalDatum {
    /// Stores the invariants in canonical order. Only grid dimensions are
    /// checked here; everything else is left to [`validate_datum`].
    pub fn new(
        ambient: RootSystem,
        weight_lattice: Lattice,
        mut spherical_roots: Vec<SphericalRoot>,
        mut colors: Vec<ColorRecord>,
        weight_monoid: Option<WeightMonoid>,
    ) -> Result<Self> {
        let n = ambient.ambient_rank();
        if weight_lattice.ambient_rank() != n {
            return invalid(format!(
                "weight lattice lives in rank {}, ambient rank is {n}",
                weight_lattice.ambient_rank()
            ));
        }
        if let Some(m) = &weight_monoid {
            if m.dim() != n {
                return invalid(format!("weight monoid lives in rank {}, ambient rank is {n}", m.dim()));
            }
        }
        spherical_roots.sort();
        colors.sort_by(|a, b| (&a.phi, &a.id, &a.moved_roots).cmp(&(&b.phi, &b.id, &b.moved_roots)));
        Ok(Self { ambient, weight_lattice, spherical_roots, colors, weight_monoid })
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    pub fn weight_lattice(&self) -> &Lattice {
        &self.weight_lattice
    }

    pub fn rank(&self) -> usize {
        self.weight_lattice.rank()
    }

    pub fn spherical_roots(&self) -> &[SphericalRoot] {
        &self.spherical_roots
    }

    pub fn colors(&self) -> &[ColorRecord] {
        &self.colors
    }

    pub fn color(&self, id: &str) -> Option<&ColorRecord> {
        self.colors.iter().find(|c| c.id == id)
    }

    pub fn weight_monoid(&self) -> Option<&WeightMonoid> {
        self.weight_monoid.as_ref()
    }

    pub fn with_spherical_roots(&self, roots: Vec<SphericalRoot>) -> Result<Self> {
        Self::new(self.ambient.clone(), self.weight_lattice.clone(), roots, self.colors.clone(), self.weight_monoid.clone())
    }

    pub fn with_colors(&self, colors: Vec<ColorRecord>) -> Result<Self> {
        Self::new(self.ambient.clone(), self.weight_lattice.clone(), self.spherical_roots.clone(), colors, self.weight_monoid.clone())
    }

    pub fn with_weight_monoid(&self, m: Option<WeightMonoid>) -> Result<Self> {
        Self::new(self.ambient.clone(), self.weight_lattice.clone(), self.spherical_roots.clone(), self.colors.clone(), m)
    }

    /// Coordinates of an ambient weight in the lattice's canonical basis.
    pub fn lattice_coords(&self, v: &[Int]) -> Result<Vec<Int>> {
        match self.weight_lattice.coords(v)? {
            Some(c) => Ok(c),
            None => invalid("weight is not in the weight lattice"),
        }
    }

    /// `<phi, v>` for an ambient weight `v` of the lattice.
    pub fn pair(&self, phi: &[Int], v: &[Int]) -> Result<Int> {
        if phi.len() != self.rank() {
            return invalid(format!("dual vector has {} entries, lattice rank is {}", phi.len(), self.rank()));
        }
        Ok(dot_int(phi, &self.lattice_coords(v)?))
    }

    /// The weight monoid rewritten in lattice coordinates.
    pub fn monoid_in_lattice_coords(&self) -> Result<Option<WeightMonoid>> {
        let Some(m) = &self.weight_monoid else { return Ok(None) };
        let gens = m.generators().iter().map(|g| self.lattice_coords(g)).collect::<Result<Vec<_>>>()?;
        Ok(Some(WeightMonoid::new(self.rank(), &gens)?))
    }

    fn require_valid(&self) -> Result<()> {
        let report = validate_datum(self);
        if report.is_valid() {
            Ok(())
        } else {
            invalid(format!("datum fails validation: {}", report.failure_summary()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    VectorLength,
    RootInLattice,
    RootPrimitive,
    RootsIndependent,
    PhiLength,
    Doubling,
    Coroot,
    ColorIds,
    MovedRoots,
    MonoidInLattice,
    SubspaceIndependent,
    ColorResolves,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::VectorLength => "vector length",
            Check::RootInLattice => "spherical root in weight lattice",
            Check::RootPrimitive => "spherical root primitive",
            Check::RootsIndependent => "spherical roots linearly independent",
            Check::PhiLength => "color vector length",
            Check::Doubling => "doubling in {1,2}",
            Check::Coroot => "coroot pairing",
            Check::ColorIds => "color ids unique",
            Check::MovedRoots => "moved roots are simple-root labels",
            Check::MonoidInLattice => "monoid generators in weight lattice",
            Check::SubspaceIndependent => "subspace basis independent",
            Check::ColorResolves => "color id resolves",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Issue>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, check: Check) -> bool {
        self.failures.iter().any(|i| i.check == check)
    }

    fn fail(&mut self, check: Check, detail: impl Into<String>) {
        self.failures.push(Issue { check, detail: detail.into() });
    }

    pub fn failure_summary(&self) -> String {
        self.failures.iter().map(|i| format!("{}: {}", i.check, i.detail)).collect::<Vec<_>>().join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")?;
        } else {
            writeln!(f, "invalid")?;
            for i in &self.failures {
                writeln!(f, "  FAIL {}: {}", i.check, i.detail)?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

pub fn validate_datum(d: &SphericalDatum) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = d.ambient.ambient_rank();
    let r = d.rank();

    let mut lattice_roots: Vec<Vec<Rat>> = Vec::new();
    for (k, root) in d.spherical_roots.iter().enumerate() {
        let tag = format!("spherical root #{k} {}", fmt_vec(&root.coords));
        if root.coords.len() != n {
            rep.fail(Check::VectorLength, format!("{tag} has {} coordinates, expected {n}", root.coords.len()));
            continue;
        }
        if !matches!(root.doubling, 1 | 2) {
            rep.fail(Check::Doubling, format!("{tag} has doubling {}", root.doubling));
        }
        match d.weight_lattice.coords(&root.coords) {
            Ok(Some(c)) => {
                if !is_primitive(&d.weight_lattice, &root.coords).unwrap_or(false) {
                    rep.fail(Check::RootPrimitive, format!("{tag} is a proper multiple in the lattice"));
                }
                if let Some(cr) = &root.coroot {
                    if cr.len() != r {
                        rep.fail(Check::Coroot, format!("{tag}: coroot has {} entries, lattice rank is {r}", cr.len()));
                    } else if dot_mixed(&c, cr) != Rat::from_integer(2.into()) {
                        rep.fail(Check::Coroot, format!("{tag}: <root, coroot> = {} != 2", dot_mixed(&c, cr)));
                    }
                } else if default_coroot(d, &root.coords).is_some() {
                    rep.notes.push(format!("{tag}: coroot taken from the invariant form of the ambient root system"));
                } else {
                    rep.notes.push(format!("{tag}: no coroot given and none derivable; little Weyl group unavailable"));
                }
                lattice_roots.push(to_rat(&c));
            }
            _ => rep.fail(Check::RootInLattice, format!("{tag} is not in the weight lattice")),
        }
    }
    if linalg::rank(&lattice_roots) < lattice_roots.len() {
        rep.fail(Check::RootsIndependent, "spherical roots are linearly dependent");
    }

    let mut ids = BTreeSet::new();
    for c in &d.colors {
        if !ids.insert(c.id.as_str()) {
            rep.fail(Check::ColorIds, format!("color id {:?} repeats", c.id));
        }
        if c.phi.len() != r {
            rep.fail(Check::PhiLength, format!("color {:?}: phi has {} entries, lattice rank is {r}", c.id, c.phi.len()));
        }
        if d.ambient.check_labels(&c.moved_roots).is_err() {
            rep.fail(Check::MovedRoots, format!("color {:?}: moved roots {} not all valid", c.id, c.moved_roots));
        }
    }

    if let Some(m) = &d.weight_monoid {
        for g in m.generators() {
            if !d.weight_lattice.contains(g).unwrap_or(false) {
                rep.fail(Check::MonoidInLattice, format!("generator {} is not in the weight lattice", fmt_vec(g)));
            }
        }
    }
    rep
}

/// `2 (alpha, .) / (alpha, alpha)` restricted to the weight lattice, when
/// `alpha` is in the ambient root lattice.
pub fn default_coroot(d: &SphericalDatum, alpha: &[Int]) -> Option<Vec<Rat>> {
    if !d.ambient.in_root_lattice(alpha) || alpha.iter().all(Zero::is_zero) {
        return None;
    }
    let norm = d.ambient.inner_product(alpha, alpha).ok()?;
    if norm.is_zero() {
        return None;
    }
    let two = Rat::from_integer(2.into());
    d.weight_lattice
        .basis_rows()
        .iter()
        .map(|b| d.ambient.inner_product(alpha, b).ok().map(|ip| &two * ip / &norm))
        .collect()
}

/// The coroot actually used for `root`: explicit if given, else the default.
pub fn coroot_of(d: &SphericalDatum, root: &SphericalRoot) -> Result<Vec<Rat>> {
    if let Some(c) = &root.coroot {
        return Ok(c.clone());
    }
    default_coroot(d, &root.coords).ok_or_else(|| {
        Error::InvalidInput(format!(
            "spherical root {} needs an explicit coroot (not in the ambient root lattice)",
            fmt_vec(&root.coords)
        ))
    })
}

/// `{ v : <alpha, v> <= 0 for every spherical root alpha }` in the dual of
/// the weight lattice.
pub fn valuation_cone(d: &SphericalDatum) -> Result<Cone> {
    d.require_valid()?;
    let ineqs = d
        .spherical_roots
        .iter()
        .map(|a| Ok(d.lattice_coords(&a.coords)?.iter().map(|x| -x).collect()))
        .collect::<Result<Vec<Vec<Int>>>>()?;
    Cone::from_int_inequalities(d.rank(), &ineqs)
}

/// The primitive lattice vectors whose nonpositivity halfspaces cut out `v`,
/// in ambient coordinates and canonical order.
pub fn spherical_roots_from_cone(x: &Lattice, v: &Cone) -> Result<Vec<Vec<Int>>> {
    if v.ambient_rank() != x.rank() {
        return invalid(format!("cone lives in rank {}, lattice rank is {}", v.ambient_rank(), x.rank()));
    }
    if !v.is_full_dimensional() {
        return Err(Error::NotApplicable("cone is not full-dimensional, so it is not a chamber".into()));
    }
    if linalg::rank_int(v.inequalities()) != v.inequalities().len() {
        return Err(Error::NotApplicable("facet normals are linearly dependent, so the cone is not a chamber".into()));
    }
    let mut roots: Vec<Vec<Int>> = v
        .inequalities()
        .iter()
        .map(|f| x.point(&f.iter().map(|a| -a).collect::<Vec<_>>()))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Group generated by the reflections of the spherical roots, acting on the
/// dual of the weight lattice.
pub fn little_weyl_group(d: &SphericalDatum, cap: usize) -> Result<ReflectionGroup> {
    d.require_valid()?;
    let mut gens = Vec::with_capacity(d.spherical_roots.len());
    for root in &d.spherical_roots {
        let alpha = to_rat(&d.lattice_coords(&root.coords)?);
        let refl = Reflection::new(alpha, coroot_of(d, root)?)?;
        gens.push(refl.dual_matrix());
    }
    generate_group(d.rank(), &gens, cap)
}

/// Randomized check that the valuation cone is a fundamental chamber: for
/// `samples` seeded random rational vectors off every reflecting hyperplane,
/// exactly one group element moves the vector into the cone.
pub fn check_chamber(d: &SphericalDatum, samples: usize, seed: u64) -> Result<bool> {
    Ok(chamber_counterexample(d, samples, seed)?.is_none())
}

/// Like [`check_chamber`], returning the first sample whose orbit meets the
/// cone a number of times other than one, together with that count.
pub fn chamber_counterexample(d: &SphericalDatum, samples: usize, seed: u64) -> Result<Option<(Vec<Rat>, usize)>> {
    let group = little_weyl_group(d, DEFAULT_GROUP_CAP)?;
    let cone = valuation_cone(d)?;
    let nontrivial: Vec<_> = group.elements().iter().filter(|w| !w.is_identity()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v = loop {
            let v: Vec<Rat> = (0..d.rank())
                .map(|_| Rat::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=97).into()))
                .collect();
            if nontrivial.iter().all(|w| w.apply(&v) != v) {
                break v;
            }
        };
        let mut hits = 0;
        for w in group.elements() {
            if cone.contains(&w.apply(&v))? {
                hits += 1;
            }
        }
        if hits != 1 {
            return Ok(Some((v, hits)));
        }
    }
    Ok(None)
}

/// A pair (subspace of the dual of the weight lattice, set of colors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSubspace {
    pub subspace: Vec<Vec<Rat>>,
    pub colors: BTreeSet<String>,
}

/// Structural checks only: the basis is independent and of the right length,
/// and every color id exists.
pub fn validate_colored_subspace(d: &SphericalDatum, cs: &ColoredSubspace) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let r = d.rank();
    if let Some(v) = cs.subspace.iter().find(|v| v.len() != r) {
        rep.fail(Check::VectorLength, format!("subspace vector has {} entries, lattice rank is {r}", v.len()));
    } else if linalg::rank(&cs.subspace) < cs.subspace.len() {
        rep.fail(Check::SubspaceIndependent, "subspace basis is linearly dependent");
    }
    for id in &cs.colors {
        if d.color(id).is_none() {
            rep.fail(Check::ColorResolves, format!("color {id:?} is not a color of the datum"));
        }
    }
    rep.notes.push("only structure is checked; the further conditions for (a, D) to come from an overgroup are not".into());
    rep
}

pub(crate) fn fmt_vec<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
