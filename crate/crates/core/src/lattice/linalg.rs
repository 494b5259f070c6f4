//! Exact rational linear algebra on small dense matrices.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `<v, f>` for an integer vector against a rational form.
pub fn dot_mixed(v: &[Int], f: &[Rat]) -> Rat {
    v.iter()
        .zip(f)
        .map(|(x, y)| y * Rat::from_integer(x.clone()))
        .sum()
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).0.len()
}

pub fn rank_int(rows: &[Vec<Int>]) -> usize {
    let r: Vec<Vec<Rat>> = rows.iter().map(|v| to_rat(v)).collect();
    rank(&r)
}

/// Coefficients `c` with `sum c_i rows_i = v`, if `v` lies in the row span.
/// When the rows are dependent one particular solution is returned.
pub fn solve_combination(rows: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = rows.len();
    let n = v.len();
    // Augmented system with one equation per coordinate: [rows^T | v].
    let aug: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut eq: Vec<Rat> = rows.iter().map(|r| r[j].clone()).collect();
            eq.push(v[j].clone());
            eq
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

pub fn in_span(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    solve_combination(rows, v).is_some()
}

/// Smallest positive integer multiple of `v` with coprime integer entries.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x)).abs()
}

/// Orthogonal projection of `v` onto the complement of the span of `basis`
/// (standard dot product). `basis` must be linearly independent.
pub fn project_off(basis: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    // Gram system (B B^T) x = B v.
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rat> = (0..k).map(|j| dot_rat(&basis[i], &basis[j])).collect();
            row.push(dot_rat(&basis[i], v));
            row
        })
        .collect();
    let (red, pivots) = rref(&gram);
    debug_assert_eq!(pivots.len(), k, "projection basis must be independent");
    let mut out = v.to_vec();
    for (row, &p) in red.iter().zip(&pivots) {
        let x = &row[k];
        for (o, b) in out.iter_mut().zip(&basis[p]) {
            *o -= x * b;
        }
    }
    out
}

/// Dense square rational matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: Vec<Vec<Rat>>,
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Self { rows }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows.iter().map(|r| dot_rat(r, v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.dim())
    }
}
