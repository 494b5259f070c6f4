//! Built-in worked examples.

use crate::compare::DelzantData;
use crate::datum::{ColorRecord, SphericalDatum, SphericalRoot};
use crate::error::{invalid, Result};
use crate::lattice::Lattice;
use crate::monoid::WeightMonoid;
use crate::rootsys::{ParabolicSet, RootSystem};
use crate::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub datum: SphericalDatum,
    pub provenance: Vec<String>,
    pub delzant: Option<DelzantData>,
}

pub const EXAMPLE_NAMES: &[&str] = &[
    "sl2_mod_torus",
    "sl3_mod_gl2",
    "sl4_mod_gl3",
    "so3_smooth_quadric",
    "so3_nilcone",
    "group_case_sl2",
    "group_case_sl3",
    "group_case_pgl2",
];

pub fn example_names() -> &'static [&'static str] {
    EXAMPLE_NAMES
}

pub fn all_examples() -> Vec<CatalogEntry> {
    EXAMPLE_NAMES.iter().map(|n| get_example(n).expect("catalog names resolve")).collect()
}

fn z(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn color(id: &str, phi: &[i64], moved: &[usize]) -> ColorRecord {
    ColorRecord::new(id, z(phi), ParabolicSet::new(moved.iter().copied()))
}

struct Shape {
    ambient: &'static str,
    lattice: Vec<Vec<Int>>,
    roots: Vec<SphericalRoot>,
    colors: Vec<ColorRecord>,
    monoid: Vec<Vec<Int>>,
}

fn build(s: Shape) -> SphericalDatum {
    let rs = RootSystem::parse(s.ambient).expect("catalog ambient");
    let n = rs.ambient_rank();
    let lattice = Lattice::new(n, &s.lattice).expect("catalog lattice");
    let m = WeightMonoid::new(n, &s.monoid).expect("catalog monoid");
    SphericalDatum::new(rs, lattice, s.roots, s.colors, Some(m)).expect("catalog datum")
}

/// `SL(n)/GL(n-1)` for n = 3, 4: weight lattice and monoid generated by
/// `omega_1 + omega_{n-1}`, which is also the spherical root.
fn sl_mod_gl(n: usize) -> SphericalDatum {
    let mut w = vec![0; n - 1];
    w[0] = 1;
    w[n - 2] = 1;
    let ambient = if n == 3 { "A2" } else { "A3" };
    build(Shape {
        ambient,
        lattice: vec![z(&w)],
        roots: vec![SphericalRoot::new(z(&w), 1)],
        colors: vec![color("D1", &[1], &[1]), color(&format!("D{}", n - 1), &[1], &[n - 1])],
        monoid: vec![z(&w)],
    })
}

pub fn get_example(name: &str) -> Result<CatalogEntry> {
    let (summary, datum, provenance): (&'static str, SphericalDatum, Vec<&str>) = match name {
        "sl2_mod_torus" => (
            "SL(2)/GL(1): rank one, two colors, both hidden",
            build(Shape {
                ambient: "A1",
                lattice: vec![z(&[2])],
                roots: vec![SphericalRoot::new(z(&[2]), 2)],
                colors: vec![color("D+", &[1], &[1]), color("D-", &[1], &[1])],
                monoid: vec![z(&[2])],
            }),
            vec![
                "n = 2 member of the SL(n)/GL(n-1) family; weight lattice Z alpha, spherical root alpha",
                "two colors, each with vector 1 on alpha, read off from the embedding into P^1 x P^1",
                "doubling 2: the normalizer of the torus acts on the quotient by the swap, so Aut is Z/2",
                "coroot derived from the invariant form of A1",
            ],
        ),
        "sl3_mod_gl2" => (
            "SL(3)/GL(2): rank one, two colors, both hidden",
            sl_mod_gl(3),
            vec![
                "weight lattice Z(omega_1 + omega_2) = Z(alpha_1 + alpha_2), spherical root alpha_1 + alpha_2",
                "color vectors derived from the embedding into P(K^3) x P(K^3*): each color is 1 on the generator",
                "values derived, not tabulated",
            ],
        ),
        "sl4_mod_gl3" => (
            "SL(4)/GL(3): rank one, two colors, both hidden",
            sl_mod_gl(4),
            vec![
                "weight lattice Z(omega_1 + omega_3) = Z(alpha_1 + alpha_2 + alpha_3)",
                "color vectors derived from the embedding into P(K^4) x P(K^4*): each color is 1 on the generator",
                "values derived, not tabulated",
            ],
        ),
        "so3_smooth_quadric" => (
            "SO(3)/SO(2): open orbit of the smooth affine quadric x^2 + y^2 + z^2 = 1",
            build(Shape {
                ambient: "A1",
                lattice: vec![z(&[2])],
                roots: vec![SphericalRoot::new(z(&[2]), 2)],
                colors: vec![color("D+", &[1], &[1]), color("D-", &[1], &[1])],
                monoid: vec![z(&[2])],
            }),
            vec![
                "SO(3) = PGL(2); the quadric is PGL(2)/T with weight lattice Z alpha",
                "coordinate ring is the sum of the odd-dimensional simple modules, each once: monoid N alpha",
                "same weight monoid as the nilpotent cone; the two differ in the valuation cone",
            ],
        ),
        "so3_nilcone" => (
            "SO(3)/U: open orbit of the nilpotent cone x^2 + y^2 + z^2 = 0",
            build(Shape {
                ambient: "A1",
                lattice: vec![z(&[2])],
                roots: vec![],
                colors: vec![color("D", &[2], &[1])],
                monoid: vec![z(&[2])],
            }),
            vec![
                "the open orbit is PGL(2)/U, which is horospherical: no spherical roots, valuation cone the whole line",
                "coordinate ring of the normal cone has the same module structure as the quadric: monoid N alpha",
                "one color, the closure of the B-orbit of codimension one; its vector is alpha^vee = 2 on alpha",
                "the cone is singular at 0, so equal weight monoids do not force isomorphism here",
            ],
        ),
        "group_case_sl2" => (
            "SL(2) as (SL(2) x SL(2))/diag: group case",
            build(Shape {
                ambient: "A1xA1",
                lattice: vec![z(&[1, 1])],
                roots: vec![SphericalRoot::new(z(&[1, 1]), 2).with_coroot(vec![Rat::from_integer(2.into())])],
                colors: vec![color("D1", &[1], &[1, 2])],
                monoid: vec![z(&[1, 1])],
            }),
            vec![
                "weight lattice = weight lattice of H = SL(2), embedded as lambda -> (lambda, lambda*)",
                "doubled spherical roots are the simple roots of H, so the spherical root lattice is the root lattice of H",
                "Aut = center of SL(2) = Z/2; coroot given explicitly since (1,1) is not in the root lattice of A1xA1",
            ],
        ),
        "group_case_sl3" => (
            "SL(3) as (SL(3) x SL(3))/diag: group case",
            build(Shape {
                ambient: "A2xA2",
                lattice: vec![z(&[1, 0, 0, 1]), z(&[0, 1, 1, 0])],
                roots: vec![SphericalRoot::new(z(&[2, -1, -1, 2]), 1), SphericalRoot::new(z(&[-1, 2, 2, -1]), 1)],
                colors: vec![color("D1", &[1, 0], &[1, 4]), color("D2", &[0, 1], &[2, 3])],
                monoid: vec![z(&[1, 0, 0, 1]), z(&[0, 1, 1, 0])],
            }),
            vec![
                "weight lattice = weight lattice of H = SL(3), embedded as lambda -> (lambda, -w0 lambda)",
                "spherical roots are the simple roots of H; Aut = center of SL(3) = Z/3",
                "color D_i has vector alpha_i^vee of H",
            ],
        ),
        "group_case_pgl2" => (
            "PGL(2) as (PGL(2) x PGL(2))/diag: group case",
            build(Shape {
                ambient: "A1xA1",
                lattice: vec![z(&[2, 2])],
                roots: vec![SphericalRoot::new(z(&[2, 2]), 1)],
                colors: vec![color("D1", &[2], &[1, 2])],
                monoid: vec![z(&[2, 2])],
            }),
            vec![
                "weight lattice of H = PGL(2) is its root lattice, so Aut is trivial",
                "the color vector is alpha^vee of H, equal to 2 on alpha",
            ],
        ),
        _ => return invalid(format!("unknown catalog entry {name:?}; try `catalog list`")),
    };
    let name = EXAMPLE_NAMES.iter().find(|n| **n == name).expect("matched above");
    Ok(CatalogEntry { name, summary, datum, provenance: provenance.into_iter().map(String::from).collect(), delzant: None })
}
