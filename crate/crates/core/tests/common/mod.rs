//! Seeded random data shared by the integration suites.
#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spherical::datum::{validate_datum, ColorRecord, SphericalDatum, SphericalRoot};
use spherical::lattice::linalg;
use spherical::lattice::{IntMatrix, Lattice};
use spherical::monoid::WeightMonoid;
use spherical::rootsys::{ParabolicSet, RootSystem};
use spherical::{Int, Rat};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn z(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn q(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

pub fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut Rng8, n: usize, bound: i64) -> Vec<Int> {
    (0..n).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect()
}

/// Ambient groups of rank at most 4.
pub const AMBIENTS: &[&str] = &["T2", "A1", "A2", "A1xA1", "B2", "G2", "A3", "A1+T1", "A2+T1", "A1xA1xA1", "B3", "C3", "A1xA2", "A4"];

fn gcd_of(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// A random datum passing validation, with a weight monoid.
pub fn random_datum(rng: &mut Rng8) -> SphericalDatum {
    loop {
        if let Some(d) = try_random_datum(rng) {
            return d;
        }
    }
}

fn try_random_datum(rng: &mut Rng8) -> Option<SphericalDatum> {
    let ambient = RootSystem::parse(AMBIENTS.choose(rng).unwrap()).unwrap();
    let n = ambient.ambient_rank();
    if n == 0 {
        return None;
    }
    let r = rng.gen_range(1..=n);
    let rows: Vec<Vec<Int>> = (0..r).map(|_| random_vec(rng, n, 2)).collect();
    if linalg::rank_int(&rows) < r {
        return None;
    }
    let lattice = Lattice::new(n, &rows).unwrap();

    let k = rng.gen_range(0..=r);
    let mut root_coords: Vec<Vec<Int>> = Vec::new();
    for _ in 0..k {
        let c = random_vec(rng, r, 2);
        let g = gcd_of(&c);
        if g.is_zero() {
            continue;
        }
        let c: Vec<Int> = c.iter().map(|x| x / &g).collect();
        let mut trial = root_coords.clone();
        trial.push(c.clone());
        if linalg::rank_int(&trial) == trial.len() {
            root_coords.push(c);
        }
    }
    let roots = root_coords
        .iter()
        .map(|c| SphericalRoot::new(lattice.point(c), rng.gen_range(1..=2)))
        .collect();

    let labels: Vec<usize> = ambient.labels().to_vec();
    let colors = (0..rng.gen_range(0..=4))
        .map(|i| {
            let moved: Vec<usize> = labels.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            ColorRecord::new(format!("C{i}"), random_vec(rng, r, 2), ParabolicSet::new(moved))
        })
        .collect();

    let gens: Vec<Vec<Int>> = (0..rng.gen_range(1..=4)).map(|_| lattice.point(&random_vec(rng, r, 2))).collect();
    let m = WeightMonoid::new(n, &gens).unwrap();
    if m.generators().is_empty() {
        return None;
    }
    let d = SphericalDatum::new(ambient, lattice, roots, colors, Some(m)).unwrap();
    validate_datum(&d).is_valid().then_some(d)
}

/// A random nonzero nonnegative combination of the monoid generators.
pub fn random_member(rng: &mut Rng8, m: &WeightMonoid) -> Vec<Int> {
    loop {
        let mut v = vec![Int::zero(); m.dim()];
        for g in m.generators() {
            let c = Int::from(rng.gen_range(0..=2));
            for (a, b) in v.iter_mut().zip(g) {
                *a += &c * b;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn negate(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn combine(gens: &[Vec<Int>], coeffs: &[Int]) -> Vec<Int> {
    let n = gens.first().map_or(0, Vec::len);
    let mut out = vec![Int::zero(); n];
    for (g, c) in gens.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(g) {
            *o += c * x;
        }
    }
    out
}

pub fn all_nonnegative(v: &[Int]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// A random valid datum built around a chosen set `S` of simple roots: the
/// lattice contains those simple roots, several spherical roots lie in their
/// span, and the monoid generators vanish on the coroots in `S`, so that
/// localizing at a monoid element usually keeps a nonempty Levi.
pub fn random_datum_around_levi(rng: &mut Rng8) -> SphericalDatum {
    loop {
        if let Some(d) = try_around_levi(rng) {
            return d;
        }
    }
}

fn try_around_levi(rng: &mut Rng8) -> Option<SphericalDatum> {
    let ambient = RootSystem::parse(AMBIENTS.choose(rng).unwrap()).unwrap();
    let n = ambient.ambient_rank();
    let labels: Vec<usize> = ambient.labels().to_vec();
    if labels.is_empty() {
        return None;
    }
    let s: Vec<usize> = labels.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if s.is_empty() || s.len() == n {
        return None;
    }
    let simple: Vec<Vec<Int>> = s.iter().map(|&l| ambient.simple_root(l).unwrap().to_vec()).collect();
    let off_s = |rng: &mut Rng8| -> Vec<Int> {
        let mut v = random_vec(rng, n, 2);
        for &l in &s {
            v[l - 1] = Int::zero();
        }
        v
    };
    let free: Vec<Vec<Int>> = (0..rng.gen_range(1..=2)).map(|_| off_s(rng)).collect();
    let mut rows = simple.clone();
    rows.extend(free.iter().cloned());
    let lattice = Lattice::new(n, &rows).unwrap();

    let mut root_coords: Vec<Vec<Int>> = Vec::new();
    for attempt in 0..3 {
        let v: Vec<Int> = if attempt < 2 {
            let c = random_vec(rng, simple.len(), 2);
            combine(&simple, &c)
        } else {
            lattice.point(&random_vec(rng, lattice.rank(), 1))
        };
        let c = lattice.coords(&v).unwrap().unwrap();
        let g = gcd_of(&c);
        if g.is_zero() {
            continue;
        }
        let c: Vec<Int> = c.iter().map(|x| x / &g).collect();
        let mut trial = root_coords.clone();
        trial.push(c.clone());
        if linalg::rank_int(&trial) == trial.len() {
            root_coords.push(c);
        }
    }
    let roots = root_coords
        .iter()
        .map(|c| SphericalRoot::new(lattice.point(c), rng.gen_range(1..=2)))
        .collect();
    let r = lattice.rank();
    let colors = (0..rng.gen_range(1..=4))
        .map(|i| {
            let moved: Vec<usize> = labels.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            ColorRecord::new(format!("C{i}"), random_vec(rng, r, 2), ParabolicSet::new(moved))
        })
        .collect();
    let gens: Vec<Vec<Int>> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let c = random_vec(rng, free.len(), 2);
            combine(&free, &c)
        })
        .collect();
    let m = WeightMonoid::new(n, &gens).unwrap();
    if m.generators().is_empty() {
        return None;
    }
    let d = SphericalDatum::new(ambient, lattice, roots, colors, Some(m)).unwrap();
    validate_datum(&d).is_valid().then_some(d)
}

/// gcd of all `k x k` minors.
pub fn minors_gcd(a: &IntMatrix, k: usize) -> Int {
    let (m, n) = (a.nrows(), a.ncols());
    let rows: Vec<Vec<usize>> = subsets(m, k);
    let cols: Vec<Vec<usize>> = subsets(n, k);
    let mut g = Int::zero();
    for r in &rows {
        for c in &cols {
            let sub: Vec<Vec<Int>> = r.iter().map(|&i| c.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
            let det = IntMatrix::from_rows(k, &sub).unwrap().det();
            g = g.gcd(&det);
        }
    }
    g
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Row echelon, positive pivots, entries above each pivot in `[0, pivot)`.
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.nrows() {
        let p = (0..h.ncols()).find(|&j| !h[(i, j)].is_zero());
        match p {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|l| p <= l) || !h[(i, p)].is_positive() {
                    return false;
                }
                for r in 0..i {
                    let x = &h[(r, p)];
                    if x.is_negative() || x >= &h[(i, p)] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}
