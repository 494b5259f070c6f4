//! Finitely generated submonoids of an integer lattice.
//!
//! Membership `v = sum c_i g_i` with `c_i >= 0` is decided by a complete
//! frontier search in the style of Contejean and Devie, run in coordinates
//! of the group generated by the monoid.
//!
//! A generator is a unit exactly when it lies in the lineality space `L` of
//! the rational cone spanned by the generators, and the unit generators
//! generate the unit group `U` as a group. So `v` lies in the monoid iff some
//! nonnegative combination of the non-unit generators is congruent to `v`
//! modulo `U`. The search state is the class of the residual
//! `r = sum c_i g_i - v` modulo `U`; from `r` the search may add a non-unit
//! generator `g` only when `<r', g> < 0`, where `r'` is the projection of `r`
//! orthogonal to `L`. If a solution exists, then at every intermediate state
//! with `r' != 0` the remaining generators `d` satisfy
//! `<r', sum d_i g_i> = -|r'|^2 < 0`, so some remaining generator is an
//! admissible step. The sum `h` of the dual cone's generators is positive on
//! non-unit generators and zero on `L`, and `h(r) <= 0` along any path to a
//! solution, so the state space is finite. The unit part of a witness is
//! made nonnegative with a strictly positive relation among unit generators.
//!
//! The unit group is generated by the generators whose negatives lie in the
//! monoid: if `sum c_i g_i` is invertible then each `g_i` with `c_i > 0` is,
//! because `-g_i = (c_i - 1) g_i + sum_{j != i} c_j g_j - (sum c_j g_j)`.
//!
//! A dual vector `phi` is *hidden* for the monoid when `phi(mu) > 0` for
//! every non-invertible `mu`. Quantifying over that infinite set reduces to
//! the generators: `phi` is hidden iff it vanishes on the units and is
//! strictly positive on every non-unit generator. A non-invertible `mu`
//! contains some non-unit generator `g` with positive coefficient, and
//! adding units to `g` keeps it non-invertible, so if `phi` is nonzero on a
//! unit `u` the elements `g + k (+-u)` eventually become nonpositive.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::linalg::{dot_int, dot_mixed, project_off, to_rat};
use crate::lattice::{hnf, Cone, IntMatrix, Lattice};
use crate::{Int, Rat};

/// Default limit on residual states visited by one membership query.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMonoid {
    dim: usize,
    generators: Vec<Vec<Int>>,
}

impl WeightMonoid {
    /// Zero vectors and duplicates are dropped, and generators are sorted.
    pub fn new(dim: usize, generators: &[Vec<Int>]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return invalid(format!("monoid generator has {} coordinates, expected {dim}", g.len()));
        }
        let mut gens: Vec<Vec<Int>> = generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        gens.sort();
        gens.dedup();
        Ok(Self { dim, generators: gens })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Monoid generated by these generators together with `extra`.
    pub fn with_generator(&self, extra: Vec<Int>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(extra);
        Self::new(self.dim, &gens)
    }

    fn check_dim(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.dim {
            return invalid(format!("vector has {} coordinates, monoid lives in rank {}", v.len(), self.dim));
        }
        Ok(())
    }
}

/// Membership with a witness: `Some(c)` with `v = sum c_i g_i` over
/// [`WeightMonoid::generators`], or `None`.
pub fn monoid_contains(m: &WeightMonoid, v: &[Int]) -> Result<Option<Vec<Int>>> {
    monoid_contains_capped(m, v, DEFAULT_NODE_CAP)
}

pub fn monoid_contains_capped(m: &WeightMonoid, v: &[Int], node_cap: usize) -> Result<Option<Vec<Int>>> {
    m.check_dim(v)?;
    let zero = vec![Int::zero(); m.generators.len()];
    if v.iter().all(Zero::is_zero) {
        return Ok(Some(zero));
    }
    let span = Lattice::new(m.dim, &m.generators)?;
    let Some(target) = span.coords(v)? else { return Ok(None) };
    let gens: Vec<Vec<Int>> = m.generators.iter().map(|g| span.coords(g).map(|c| c.expect("generator lies in its span"))).collect::<Result<_>>()?;
    let split = Split::new(span.rank(), &gens)?;
    if !split.cone.contains_int(&target)? {
        return Ok(None);
    }

    let level = |r: &[Int]| dot_int(&split.height, r);
    let start = split.units.reduce(&target.iter().map(|x| -x).collect::<Vec<_>>())?;
    // class of residual -> (parent class, generator index)
    let mut parent: HashMap<Vec<Int>, Option<(Vec<Int>, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    'search: while let Some(r) = queue.pop_front() {
        if r.iter().all(Zero::is_zero) {
            found = Some(r);
            break;
        }
        let proj = project_off(&split.unit_space, &to_rat(&r));
        for &i in &split.non_unit_idx {
            let g = &gens[i];
            if !dot_mixed(g, &proj).is_negative() {
                continue;
            }
            let next: Vec<Int> = r.iter().zip(g).map(|(a, b)| a + b).collect();
            if level(&next).is_positive() {
                continue;
            }
            let next = split.units.reduce(&next)?;
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((r.clone(), i)));
            if parent.len() > node_cap {
                return Err(Error::CapExceeded(format!("monoid membership search visited more than {node_cap} states")));
            }
            if next.iter().all(Zero::is_zero) {
                found = Some(next);
                break 'search;
            }
            queue.push_back(next);
        }
    }
    let Some(mut r) = found else { return Ok(None) };
    let mut coeffs = zero;
    while let Some(Some((prev, i))) = parent.get(&r) {
        coeffs[*i] += 1;
        r = prev.clone();
    }

    // What is left is a unit; write it over the unit generators.
    let mut rest = target;
    for (c, g) in coeffs.iter().zip(&gens) {
        for (x, y) in rest.iter_mut().zip(g) {
            *x -= c * y;
        }
    }
    if rest.iter().any(|x| !x.is_zero()) {
        let unit_gens: Vec<Vec<Int>> = split.unit_idx.iter().map(|&i| gens[i].clone()).collect();
        let mut z = integer_combination(span.rank(), &unit_gens, &rest).expect("remainder lies in the unit group");
        if z.iter().any(Signed::is_negative) {
            let p = positive_relation(span.rank(), &unit_gens)?;
            let t = z
                .iter()
                .zip(&p)
                .filter(|(a, _)| a.is_negative())
                .map(|(a, b)| (-a).div_ceil(b))
                .max()
                .expect("some entry is negative");
            for (a, b) in z.iter_mut().zip(&p) {
                *a += &t * b;
            }
        }
        for (&i, c) in split.unit_idx.iter().zip(z) {
            coeffs[i] += c;
        }
    }
    Ok(Some(coeffs))
}

/// The generators sorted into units and non-units, with the cone they span.
struct Split {
    cone: Cone,
    /// Positive on non-unit generators, zero on units.
    height: Vec<Int>,
    unit_idx: Vec<usize>,
    non_unit_idx: Vec<usize>,
    units: Lattice,
    /// Independent rational basis of the unit span.
    unit_space: Vec<Vec<Rat>>,
}

impl Split {
    fn new(dim: usize, gens: &[Vec<Int>]) -> Result<Self> {
        let cone = Cone::from_int_generators(dim, gens)?;
        let mut height = vec![Int::zero(); dim];
        for f in cone.inequalities() {
            for (h, x) in height.iter_mut().zip(f) {
                *h += x;
            }
        }
        let (unit_idx, non_unit_idx): (Vec<usize>, Vec<usize>) =
            (0..gens.len()).partition(|&i| dot_int(&height, &gens[i]).is_zero());
        let unit_gens: Vec<Vec<Int>> = unit_idx.iter().map(|&i| gens[i].clone()).collect();
        let units = Lattice::new(dim, &unit_gens)?;
        let unit_space = units.basis_rows().iter().map(|b| to_rat(b)).collect();
        Ok(Self { cone, height, unit_idx, non_unit_idx, units, unit_space })
    }
}

/// Integer `z` with `sum z_j rows_j = v`, if one exists.
fn integer_combination(dim: usize, rows: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let a = IntMatrix::from_rows(dim, rows)?;
    let (h, t) = hnf(&a);
    let mut rest = v.to_vec();
    let mut z = vec![Int::zero(); rows.len()];
    for i in 0..h.nrows() {
        let row = h.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { break };
        if !(&rest[p] % &row[p]).is_zero() {
            return None;
        }
        let c = &rest[p] / &row[p];
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &c * b;
        }
        for (zj, tj) in z.iter_mut().zip(t.row(i)) {
            *zj += &c * tj;
        }
    }
    rest.iter().all(Zero::is_zero).then_some(z)
}

/// Integer `p` with every `p_j >= 1` and `sum p_j rows_j = 0`, for rows that
/// positively span a linear space.
fn positive_relation(dim: usize, rows: &[Vec<Int>]) -> Result<Vec<Int>> {
    let k = rows.len();
    let mut ineqs: Vec<Vec<Int>> = (0..k)
        .map(|j| {
            let mut e = vec![Int::zero(); k];
            e[j] = Int::one();
            e
        })
        .collect();
    for t in 0..dim {
        let col: Vec<Int> = rows.iter().map(|r| r[t].clone()).collect();
        ineqs.push(col.iter().map(|x| -x).collect());
        ineqs.push(col);
    }
    let kernel = Cone::from_int_inequalities(k, &ineqs)?;
    let mut p = vec![Int::zero(); k];
    for g in kernel.generators() {
        for (a, b) in p.iter_mut().zip(g) {
            *a += b;
        }
    }
    debug_assert!(p.iter().all(Signed::is_positive));
    Ok(p)
}

/// Indices of the generators whose negatives lie in the monoid, with the
/// expression of each negative.
pub fn unit_generators(m: &WeightMonoid) -> Result<Vec<(usize, Vec<Int>)>> {
    let mut out = Vec::new();
    for (i, g) in m.generators.iter().enumerate() {
        let neg: Vec<Int> = g.iter().map(|x| -x).collect();
        if let Some(w) = monoid_contains(m, &neg)? {
            out.push((i, w));
        }
    }
    Ok(out)
}

/// The group of invertible elements.
pub fn units(m: &WeightMonoid) -> Result<Lattice> {
    let gens: Vec<Vec<Int>> = unit_generators(m)?.into_iter().map(|(i, _)| m.generators[i].clone()).collect();
    Lattice::new(m.dim, &gens)
}

pub fn is_unit(m: &WeightMonoid, v: &[Int]) -> Result<bool> {
    let neg: Vec<Int> = v.iter().map(|x| -x).collect();
    Ok(monoid_contains(m, v)?.is_some() && monoid_contains(m, &neg)?.is_some())
}

/// Equality as sets, by mutual containment of generators.
pub fn monoid_equal(m1: &WeightMonoid, m2: &WeightMonoid) -> Result<bool> {
    if m1.dim != m2.dim {
        return invalid("monoids live in lattices of different rank");
    }
    Ok(monoid_includes(m1, m2)? && monoid_includes(m2, m1)?)
}

/// Whether every generator of `inner` lies in `outer`.
pub fn monoid_includes(outer: &WeightMonoid, inner: &WeightMonoid) -> Result<bool> {
    for g in &inner.generators {
        if monoid_contains(outer, g)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HiddenVerdict {
    Hidden,
    /// A non-invertible monoid element with `phi(mu) <= 0`.
    NotHidden { mu: Vec<Int>, coefficients: Vec<Int>, value: Int },
}

impl HiddenVerdict {
    pub fn is_hidden(&self) -> bool {
        matches!(self, HiddenVerdict::Hidden)
    }
}

pub fn is_hidden(phi: &[Int], m: &WeightMonoid) -> Result<HiddenVerdict> {
    m.check_dim(phi)?;
    let units = unit_generators(m)?;
    let is_unit_gen = |i: usize| units.iter().any(|(j, _)| *j == i);
    let non_units: Vec<usize> = (0..m.generators.len()).filter(|&i| !is_unit_gen(i)).collect();
    let Some(&first) = non_units.first() else {
        // Every element is invertible: the condition is vacuous.
        return Ok(HiddenVerdict::Hidden);
    };

    if let Some(&g) = non_units.iter().find(|&&i| !dot_int(phi, &m.generators[i]).is_positive()) {
        return witness(phi, m, m.generators[g].clone());
    }
    let Some((u, _)) = units.iter().find(|(i, _)| !dot_int(phi, &m.generators[*i]).is_zero()) else {
        return Ok(HiddenVerdict::Hidden);
    };
    // phi(g) > 0 for the non-unit g; push it below zero along a unit direction.
    let g = &m.generators[first];
    let u_vec = &m.generators[*u];
    let pu = dot_int(phi, u_vec);
    let dir: Vec<Int> = if pu.is_negative() { u_vec.clone() } else { u_vec.iter().map(|x| -x).collect() };
    let k = dot_int(phi, g).div_floor(&pu.abs()) + Int::one();
    let mu: Vec<Int> = g.iter().zip(&dir).map(|(a, b)| a + &k * b).collect();
    witness(phi, m, mu)
}

fn witness(phi: &[Int], m: &WeightMonoid, mu: Vec<Int>) -> Result<HiddenVerdict> {
    let Some(coefficients) = monoid_contains(m, &mu)? else {
        unreachable!("constructed witness is a monoid element");
    };
    let value = dot_int(phi, &mu);
    debug_assert!(!value.is_positive());
    Ok(HiddenVerdict::NotHidden { mu, coefficients, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn mon(dim: usize, gens: &[&[i64]]) -> WeightMonoid {
        WeightMonoid::new(dim, &gens.iter().map(|g| z(g)).collect::<Vec<_>>()).unwrap()
    }

    fn combine(m: &WeightMonoid, c: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); m.dim()];
        for (g, k) in m.generators().iter().zip(c) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += k * x;
            }
        }
        out
    }

    #[test]
    fn membership() {
        let m = mon(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(monoid_contains(&m, &z(&[3, 2])).unwrap(), Some(z(&[2, 3])));
        let even = mon(2, &[&[2, 0]]);
        assert_eq!(monoid_contains(&even, &z(&[3, 0])).unwrap(), None);
        let m = mon(2, &[&[1, 1], &[1, -1], &[-1, 0]]);
        let w = monoid_contains(&m, &z(&[0, 1])).unwrap().unwrap();
        assert_eq!(combine(&m, &w), z(&[0, 1]));
        // generators are sorted: (-1,0), (1,-1), (1,1)
        assert_eq!(w, z(&[1, 0, 1]));
        assert!(monoid_contains(&m, &z(&[0])).is_err());
    }

    #[test]
    fn oscillating_search_terminates() {
        let m = mon(1, &[&[2], &[-2]]);
        assert_eq!(monoid_contains(&m, &z(&[1])).unwrap(), None);
        assert!(monoid_contains(&m, &z(&[-6])).unwrap().is_some());
    }

    #[test]
    fn node_cap() {
        let m = mon(2, &[&[1, 0], &[0, 1]]);
        let err = monoid_contains_capped(&m, &z(&[40, 40]), 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn unit_groups() {
        assert_eq!(units(&mon(2, &[&[1, 0], &[0, 1]])).unwrap(), Lattice::zero(2));
        let l = units(&mon(2, &[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(l, Lattice::new(2, &[z(&[1, 0])]).unwrap());
        assert_eq!(units(&mon(2, &[&[1, 1], &[1, -1], &[-1, 0]])).unwrap(), Lattice::full(2));
    }

    #[test]
    fn equality() {
        assert!(monoid_equal(&mon(1, &[&[1]]), &mon(1, &[&[1], &[2]])).unwrap());
        assert!(!monoid_equal(&mon(1, &[&[1]]), &mon(1, &[&[2]])).unwrap());
        assert!(monoid_equal(&mon(2, &[&[1, 0], &[0, 1]]), &mon(2, &[&[0, 1], &[1, 0]])).unwrap());
    }

    #[test]
    fn hidden_closed_form() {
        assert!(is_hidden(&z(&[1, 0]), &mon(2, &[&[1, 0]])).unwrap().is_hidden());
        let m = mon(2, &[&[1, 0], &[0, 1], &[0, -1]]);
        match is_hidden(&z(&[1, -1]), &m).unwrap() {
            HiddenVerdict::NotHidden { mu, coefficients, value } => {
                assert_eq!(mu, z(&[1, 2]));
                assert_eq!(value, Int::from(-1));
                assert_eq!(combine(&m, &coefficients), mu);
            }
            HiddenVerdict::Hidden => panic!("phi is negative on a unit"),
        }
        // Vacuous: every element invertible.
        assert!(is_hidden(&z(&[5]), &mon(1, &[&[1], &[-1]])).unwrap().is_hidden());
        // Non-positive on a non-unit generator.
        let v = is_hidden(&z(&[0, 1]), &mon(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert!(matches!(v, HiddenVerdict::NotHidden { ref mu, .. } if *mu == z(&[1, 0])));
    }
}
