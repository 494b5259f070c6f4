//! Exact integer lattices, their normal forms and quotients, and rational
//! polyhedral cones.

pub mod cone;
pub mod linalg;
pub mod matrix;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::Int;

pub use cone::{cone_contains, cone_convert, cone_equal, Cone, ConeInput};
pub use matrix::{hnf, snf, IntMatrix};

/// A finitely generated subgroup of `Z^ambient_rank`, stored by the nonzero
/// rows of the Hermite normal form of its generators. Two lattices are equal
/// exactly when their canonical bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn new(ambient_rank: usize, generators: &[Vec<Int>]) -> Result<Self> {
        let Some(m) = IntMatrix::from_rows(ambient_rank, generators) else {
            return invalid(format!("lattice generators must have {ambient_rank} coordinates"));
        };
        let (h, _) = hnf(&m);
        let rows: Vec<Vec<Int>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let basis = IntMatrix::from_rows(ambient_rank, &rows).expect("rows have ambient length");
        Ok(Self { ambient_rank, basis })
    }

    /// The full grid `Z^n`.
    pub fn full(n: usize) -> Self {
        Self { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Self { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.to_rows()
    }

    /// Integer coordinates of `v` in the canonical basis, or `None` when `v`
    /// is not in the lattice.
    pub fn coords(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        self.check_dim(v)?;
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if !(&rest[p] % &row[p]).is_zero() {
                return Ok(None);
            }
            let c = &rest[p] / &row[p];
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= &c * b;
            }
            coeffs.push(c);
        }
        Ok(if rest.iter().all(Zero::is_zero) { Some(coeffs) } else { None })
    }

    /// Canonical representative of the coset `v + self`: the entry of `v` at
    /// each pivot column of the Hermite basis is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Result<Vec<Int>> {
        self.check_dim(v)?;
        let mut out = v.to_vec();
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                for (o, b) in out.iter_mut().zip(row) {
                    *o -= &q * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    /// Point of the ambient grid with the given lattice coordinates.
    pub fn point(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.rank(), "coordinate length must equal the lattice rank");
        let mut out = vec![Int::zero(); self.ambient_rank];
        for (i, c) in coords.iter().enumerate() {
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o += c * b;
            }
        }
        out
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        if other.ambient_rank != self.ambient_rank {
            return invalid("lattices live in grids of different rank");
        }
        for i in 0..other.rank() {
            if !self.contains(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_dim(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.ambient_rank {
            return invalid(format!(
                "vector has {} coordinates, lattice ambient rank is {}",
                v.len(),
                self.ambient_rank
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

/// `v` is primitive in `l` when it is not `k * w` for any `w` in `l` and
/// integer `k >= 2`, i.e. it extends to a basis of `l`.
pub fn is_primitive(l: &Lattice, v: &[Int]) -> Result<bool> {
    match l.coords(v)? {
        None => invalid("vector is not in the lattice"),
        Some(c) => Ok(linalg::gcd_all(&c).is_one()),
    }
}

/// Isomorphism type `Z^free_rank x Z/d_1 x ... x Z/d_k` with `d_i | d_{i+1}`
/// and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub invariant_factors: Vec<Int>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Quotient `x / sub` together with a basis of `x` adapted to `sub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub structure: AbelianGroupStructure,
    /// Basis `e_1..e_r` of `x` (ambient coordinates) such that `sub` is
    /// spanned by `d_1 e_1, .., d_s e_s`.
    pub adapted_basis: Vec<Vec<Int>>,
    /// The elementary divisors `d_1..d_s`, including ones.
    pub divisors: Vec<Int>,
    change: IntMatrix,
}

impl Quotient {
    /// Class of `v` in `prod Z/d_i x Z^free`: one residue per invariant
    /// factor, then the free coordinates.
    pub fn class_of(&self, x: &Lattice, v: &[Int]) -> Result<Vec<Int>> {
        let Some(c) = x.coords(v)? else {
            return invalid("vector is not in the ambient lattice of the quotient");
        };
        // Adapted coordinates y satisfy c = y * V^{-1}, so y = c * V.
        let row = IntMatrix::from_rows(c.len(), &[c]).expect("row vector");
        let y = row.mul(&self.change).to_rows().remove(0);
        let mut out = Vec::new();
        for (k, d) in self.divisors.iter().enumerate() {
            if !d.is_one() {
                out.push(y[k].mod_floor(d));
            }
        }
        out.extend(y[self.divisors.len()..].iter().cloned());
        Ok(out)
    }
}

/// Invariant-factor decomposition of `x / sub`.
pub fn quotient_structure(x: &Lattice, sub: &Lattice) -> Result<AbelianGroupStructure> {
    Ok(quotient(x, sub)?.structure)
}

/// Like [`quotient_structure`], also returning the adapted basis.
pub fn quotient(x: &Lattice, sub: &Lattice) -> Result<Quotient> {
    if x.ambient_rank != sub.ambient_rank {
        return invalid("lattices live in grids of different rank");
    }
    let mut rows = Vec::with_capacity(sub.rank());
    for i in 0..sub.rank() {
        match x.coords(sub.basis.row(i))? {
            Some(c) => rows.push(c),
            None => return invalid("sublattice is not contained in the lattice"),
        }
    }
    let s = IntMatrix::from_rows(x.rank(), &rows).expect("coordinates have lattice rank");
    let (diag, _u, v) = snf(&s);
    // u * S * v = D, so the rows of v^{-1} (in x-coordinates) form the adapted basis.
    let vinv = unimodular_inverse(&v);
    let adapted_basis = (0..x.rank()).map(|k| x.point(vinv.row(k))).collect();
    let free_rank = x.rank() - diag.len();
    let invariant_factors = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    debug_assert!(diag.iter().all(|d| d.is_positive()));
    Ok(Quotient {
        structure: AbelianGroupStructure { free_rank, invariant_factors },
        adapted_basis,
        divisors: diag,
        change: v,
    })
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    let rows: Vec<Vec<crate::Rat>> = m.to_rows().iter().map(|r| linalg::to_rat(r)).collect();
    // Solve e_k = y * m for each k.
    let inv_rows: Vec<Vec<Int>> = (0..n)
        .map(|k| {
            let mut e = vec![crate::Rat::zero(); n];
            e[k] = crate::Rat::one();
            linalg::solve_combination(&rows, &e)
                .expect("unimodular matrix is invertible")
                .into_iter()
                .map(|q| q.to_integer())
                .collect()
        })
        .collect();
    IntMatrix::from_rows(n, &inv_rows).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    fn lat(n: usize, rows: &[&[i64]]) -> Lattice {
        Lattice::new(n, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn containment() {
        let l = lat(2, &[&[2, 0], &[0, 1]]);
        assert!(l.contains(&v(&[4, 3])).unwrap());
        assert!(!l.contains(&v(&[1, 0])).unwrap());
        let l2 = lat(2, &[&[2, 4], &[6, 8]]);
        assert!(l2.contains(&v(&[2, 0])).unwrap());
        assert!(matches!(l.contains(&v(&[1])), Err(crate::Error::InvalidInput(_))));
    }

    #[test]
    fn primitivity() {
        let z2 = Lattice::full(2);
        assert!(is_primitive(&z2, &v(&[1, 2])).unwrap());
        assert!(!is_primitive(&z2, &v(&[2, 4])).unwrap());
        let l = lat(2, &[&[2, 0], &[0, 1]]);
        assert!(is_primitive(&l, &v(&[2, 0])).unwrap());
        assert!(is_primitive(&l, &v(&[1, 0])).is_err());
    }

    #[test]
    fn quotients() {
        let z2 = Lattice::full(2);
        let q = quotient_structure(&z2, &lat(2, &[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(q, AbelianGroupStructure { free_rank: 0, invariant_factors: v(&[2]) });
        let q = quotient_structure(&z2, &lat(2, &[&[2, 0]])).unwrap();
        assert_eq!(q, AbelianGroupStructure { free_rank: 1, invariant_factors: v(&[2]) });
        assert!(quotient_structure(&z2, &z2).unwrap().is_trivial());
        assert!(quotient_structure(&lat(2, &[&[2, 0]]), &z2).is_err());
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(lat(2, &[&[1, 1], &[1, -1]]), lat(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_ne!(lat(2, &[&[1, 1]]), lat(2, &[&[1, -1]]));
    }

    #[test]
    fn quotient_classes() {
        let z2 = Lattice::full(2);
        let sub = lat(2, &[&[2, 0]]);
        let q = quotient(&z2, &sub).unwrap();
        assert_eq!(q.class_of(&z2, &v(&[2, 0])).unwrap()[0], Int::zero());
        assert_ne!(q.class_of(&z2, &v(&[1, 0])).unwrap()[0], Int::zero());
    }
}
