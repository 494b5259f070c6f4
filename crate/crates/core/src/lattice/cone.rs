//! Rational polyhedral cones with both descriptions, converted by the
//! double description method.
//!
//! A cone is stored canonically: its lineality space contributes `+l` and
//! `-l` for each row `l` of the (primitive-scaled) reduced echelon basis, and
//! its pointed part contributes the extreme rays projected onto the
//! orthogonal complement of the lineality space, each scaled to a primitive
//! integer vector. The inequality list is the canonical generator list of the
//! dual cone. Both lists are sorted.

use num_traits::{Signed, Zero};

use super::linalg::{self, dot_mixed, dot_rat, to_rat};
use crate::error::{invalid, Error, Result};
use crate::{Int, Rat};

/// Largest ambient rank accepted by the conversion.
pub const MAX_CONE_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<Vec<Int>>,
    inequalities: Vec<Vec<Int>>,
}

/// Either presentation accepted by [`cone_convert`].
#[derive(Debug, Clone)]
pub enum ConeInput {
    Generators(Vec<Vec<Rat>>),
    /// Linear forms `f`, read as `f(v) >= 0`.
    Inequalities(Vec<Vec<Rat>>),
}

pub fn cone_convert(ambient_rank: usize, input: &ConeInput) -> Result<Cone> {
    match input {
        ConeInput::Generators(g) => Cone::from_generators(ambient_rank, g),
        ConeInput::Inequalities(h) => Cone::from_inequalities(ambient_rank, h),
    }
}

impl Cone {
    pub fn from_generators(ambient_rank: usize, generators: &[Vec<Rat>]) -> Result<Self> {
        check_input(ambient_rank, generators)?;
        let ineqs = canonical(ambient_rank, dual_generators(ambient_rank, generators));
        let dual_of_dual: Vec<Vec<Rat>> = ineqs.iter().map(|v| to_rat(v)).collect();
        let gens = canonical(ambient_rank, dual_generators(ambient_rank, &dual_of_dual));
        Ok(Self { ambient_rank, generators: gens, inequalities: ineqs })
    }

    pub fn from_inequalities(ambient_rank: usize, inequalities: &[Vec<Rat>]) -> Result<Self> {
        check_input(ambient_rank, inequalities)?;
        let gens = canonical(ambient_rank, dual_generators(ambient_rank, inequalities));
        let g: Vec<Vec<Rat>> = gens.iter().map(|v| to_rat(v)).collect();
        let ineqs = canonical(ambient_rank, dual_generators(ambient_rank, &g));
        Ok(Self { ambient_rank, generators: gens, inequalities: ineqs })
    }

    pub fn from_int_generators(ambient_rank: usize, generators: &[Vec<Int>]) -> Result<Self> {
        let g: Vec<Vec<Rat>> = generators.iter().map(|v| to_rat(v)).collect();
        Self::from_generators(ambient_rank, &g)
    }

    pub fn from_int_inequalities(ambient_rank: usize, inequalities: &[Vec<Int>]) -> Result<Self> {
        let h: Vec<Vec<Rat>> = inequalities.iter().map(|v| to_rat(v)).collect();
        Self::from_inequalities(ambient_rank, &h)
    }

    pub fn full(ambient_rank: usize) -> Result<Self> {
        Self::from_inequalities(ambient_rank, &[])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.inequalities
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient_rank {
            return invalid(format!("vector has {} coordinates, cone lives in rank {}", v.len(), self.ambient_rank));
        }
        Ok(self.inequalities.iter().all(|f| !dot_mixed(f, v).is_negative()))
    }

    pub fn contains_int(&self, v: &[Int]) -> Result<bool> {
        self.contains(&to_rat(v))
    }

    /// Set equality, decided by mutual containment of generators.
    pub fn set_eq(&self, other: &Cone) -> Result<bool> {
        if self.ambient_rank != other.ambient_rank {
            return invalid("cones live in spaces of different rank");
        }
        let within = |a: &Cone, b: &Cone| -> Result<bool> {
            for g in &a.generators {
                if !b.contains_int(g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(within(self, other)? && within(other, self)?)
    }

    /// Basis of the lineality space (the `+l` halves of the generator pairs).
    pub fn lineality(&self) -> Vec<Vec<Int>> {
        let neg = |v: &Vec<Int>| v.iter().map(|x| -x).collect::<Vec<_>>();
        self.generators
            .iter()
            .filter(|g| self.generators.contains(&neg(g)) && first_nonzero_positive(g))
            .cloned()
            .collect()
    }

    /// Whether the inequality description has no opposite pairs, i.e. the
    /// cone is full-dimensional.
    pub fn is_full_dimensional(&self) -> bool {
        let neg = |v: &Vec<Int>| v.iter().map(|x| -x).collect::<Vec<_>>();
        !self.inequalities.iter().any(|f| self.inequalities.contains(&neg(f)))
    }
}

pub fn cone_contains(c: &Cone, v: &[Rat]) -> Result<bool> {
    c.contains(v)
}

pub fn cone_equal(c1: &Cone, c2: &Cone) -> Result<bool> {
    c1.set_eq(c2)
}

fn first_nonzero_positive(v: &[Int]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

fn check_input(ambient_rank: usize, vs: &[Vec<Rat>]) -> Result<()> {
    if ambient_rank > MAX_CONE_RANK {
        return Err(Error::CapExceeded(format!(
            "cone conversion supports ambient rank <= {MAX_CONE_RANK}, got {ambient_rank}"
        )));
    }
    if let Some(v) = vs.iter().find(|v| v.len() != ambient_rank) {
        return invalid(format!("vector has {} coordinates, expected {ambient_rank}", v.len()));
    }
    Ok(())
}

/// Output of one double description run: a lineality basis and extreme
/// rays of the pointed quotient.
struct Frame {
    lineality: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
}

/// Generators of `{ f : <f, g> >= 0 for all g in gens }`, built by
/// intersecting the full space with one halfspace at a time.
fn dual_generators(n: usize, gens: &[Vec<Rat>]) -> Frame {
    let mut lineality: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
        .collect();
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    let mut processed: Vec<Vec<Rat>> = Vec::new();

    for a in gens.iter().filter(|g| !linalg::is_zero_vec(g)) {
        if let Some(k) = lineality.iter().position(|l| !dot_rat(a, l).is_zero()) {
            // The halfspace cuts the lineality space: l0 becomes a ray and
            // everything else is made orthogonal to `a` along l0.
            let mut l0 = lineality.swap_remove(k);
            let mut s0 = dot_rat(a, &l0);
            if s0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                s0 = -s0;
            }
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let s = dot_rat(a, v);
                if !s.is_zero() {
                    let f = &s / &s0;
                    for (x, y) in v.iter_mut().zip(&l0) {
                        *x -= &f * y;
                    }
                }
            }
            rays.push(l0);
            processed.push(a.clone());
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| dot_rat(a, r)).collect();
        if vals.iter().all(|s| !s.is_negative()) {
            processed.push(a.clone());
            continue;
        }
        let pointed_dim = n - lineality.len();
        let tight = |r: &[Rat]| -> Vec<usize> {
            processed.iter().enumerate().filter(|(_, h)| dot_rat(h, r).is_zero()).map(|(i, _)| i).collect()
        };
        let tight_sets: Vec<Vec<usize>> = rays.iter().map(|r| tight(r)).collect();
        let mut next: Vec<Vec<Rat>> = Vec::new();
        for (r, s) in rays.iter().zip(&vals) {
            if !s.is_negative() {
                next.push(r.clone());
            }
        }
        for (i, si) in vals.iter().enumerate().filter(|(_, s)| s.is_positive()) {
            for (j, sj) in vals.iter().enumerate().filter(|(_, s)| s.is_negative()) {
                // Algebraic adjacency: the common tight constraints have rank d - 2.
                let common: Vec<Vec<Rat>> = tight_sets[i]
                    .iter()
                    .filter(|k| tight_sets[j].contains(k))
                    .map(|&k| processed[k].clone())
                    .collect();
                if pointed_dim < 2 || linalg::rank(&common) != pointed_dim - 2 {
                    continue;
                }
                let new: Vec<Rat> = rays[j].iter().zip(&rays[i]).map(|(rn, rp)| si * rn - sj * rp).collect();
                next.push(new);
            }
        }
        rays = next;
        processed.push(a.clone());
    }
    Frame { lineality, rays }
}

fn canonical(n: usize, frame: Frame) -> Vec<Vec<Int>> {
    let (lin, _) = linalg::rref(&frame.lineality);
    let mut out: Vec<Vec<Int>> = Vec::new();
    for l in &lin {
        let p = linalg::primitive(l);
        out.push(p.iter().map(|x| -x).collect());
        out.push(p);
    }
    for r in &frame.rays {
        let projected = linalg::project_off(&lin, r);
        if linalg::is_zero_vec(&projected) {
            continue;
        }
        out.push(linalg::primitive(&projected));
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|v| v.len() == n));
    out
}
