//! Root data of the ambient reductive group.
//!
//! Weights are written in the basis of fundamental weights of each simple
//! factor (concatenated in factor order) followed by the coordinates of the
//! central torus. In this model the `i`-th simple coroot pairs with a weight
//! by reading off one coordinate, and the simple roots are the rows of the
//! Cartan matrix `a_ij = <alpha_i, alpha_j^vee>`, so everything stays
//! integral. Simple roots carry 1-based labels; a Levi subsystem keeps the
//! labels of its parent.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::linalg::{self, dot_int, dot_rat, to_rat, RatMatrix};
use crate::{Int, Rat};

/// Default element cap for reflection group enumeration.
pub const DEFAULT_GROUP_CAP: usize = 10_080;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            invalid(format!("unknown Cartan type {self}"))
        }
    }

    /// Inner products `(alpha_i, alpha_j)` of the simple roots, Bourbaki
    /// numbering, long roots of squared length 2.
    fn gram(self) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let q = |a: i64, b: i64| Rat::new(a.into(), b.into());
        let mut g = vec![vec![Rat::zero(); n]; n];
        let mut set = |i: usize, j: usize, v: Rat| {
            g[i][j] = v.clone();
            g[j][i] = v;
        };
        match self {
            CartanType::A(_) => {
                for i in 0..n {
                    set(i, i, q(2, 1));
                }
                for i in 0..n - 1 {
                    set(i, i + 1, q(-1, 1));
                }
            }
            CartanType::B(_) => {
                for i in 0..n - 1 {
                    set(i, i, q(2, 1));
                    set(i, i + 1, q(-1, 1));
                }
                set(n - 1, n - 1, q(1, 1));
            }
            CartanType::C(_) => {
                for i in 0..n - 1 {
                    set(i, i, q(1, 1));
                }
                for i in 0..n.saturating_sub(2) {
                    set(i, i + 1, q(-1, 2));
                }
                set(n - 1, n - 1, q(2, 1));
                set(n - 2, n - 1, q(-1, 1));
            }
            CartanType::D(_) => {
                for i in 0..n {
                    set(i, i, q(2, 1));
                }
                for i in 0..n - 2 {
                    set(i, i + 1, q(-1, 1));
                }
                set(n - 3, n - 1, q(-1, 1));
            }
            CartanType::E(_) => {
                for i in 0..n {
                    set(i, i, q(2, 1));
                }
                set(0, 2, q(-1, 1));
                set(1, 3, q(-1, 1));
                for i in 2..n - 1 {
                    set(i, i + 1, q(-1, 1));
                }
            }
            CartanType::F4 => {
                set(0, 0, q(2, 1));
                set(1, 1, q(2, 1));
                set(2, 2, q(1, 1));
                set(3, 3, q(1, 1));
                set(0, 1, q(-1, 1));
                set(1, 2, q(-1, 1));
                set(2, 3, q(-1, 2));
            }
            CartanType::G2 => {
                set(0, 0, q(2, 3));
                set(1, 1, q(2, 1));
                set(0, 1, q(-1, 1));
            }
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unknown Cartan type {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) => CartanType::A(n),
            ('B', n) => CartanType::B(n),
            ('C', n) => CartanType::C(n),
            ('D', n) => CartanType::D(n),
            ('E', n) => CartanType::E(n),
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// A parabolic subgroup containing `B`, or a Levi subgroup, encoded by its
/// set of simple-root labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSet(BTreeSet<usize>);

impl ParabolicSet {
    pub fn new(labels: impl IntoIterator<Item = usize>) -> Self {
        Self(labels.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.contains(&label)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &ParabolicSet) -> ParabolicSet {
        Self(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &ParabolicSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for ParabolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Simple roots and coroots of a reductive group (or of a Levi subgroup of
/// one) in the fixed integral coordinate model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystem {
    factors: Vec<CartanType>,
    torus_rank: usize,
    levi: Option<ParabolicSet>,
    ambient_rank: usize,
    labels: Vec<usize>,
    simple_roots: Vec<Vec<Int>>,
    simple_coroots: Vec<Vec<Int>>,
    gram: Vec<Vec<Rat>>,
}

pub fn build_root_system(factors: &[CartanType], torus_rank: usize) -> Result<RootSystem> {
    RootSystem::new(factors, torus_rank)
}

impl RootSystem {
    pub fn new(factors: &[CartanType], torus_rank: usize) -> Result<Self> {
        for f in factors {
            f.validate()?;
        }
        let ss: usize = factors.iter().map(|f| f.rank()).sum();
        let ambient_rank = ss + torus_rank;
        let mut gram = vec![vec![Rat::zero(); ss]; ss];
        let mut offset = 0;
        for f in factors {
            let g = f.gram();
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    gram[offset + i][offset + j] = x.clone();
                }
            }
            offset += f.rank();
        }
        let two = Rat::from_integer(2.into());
        let mut simple_roots = Vec::with_capacity(ss);
        let mut simple_coroots = Vec::with_capacity(ss);
        for i in 0..ss {
            let mut root = vec![Int::zero(); ambient_rank];
            for j in 0..ss {
                let a = &two * &gram[i][j] / &gram[j][j];
                debug_assert!(a.is_integer());
                root[j] = a.to_integer();
            }
            let mut coroot = vec![Int::zero(); ambient_rank];
            coroot[i] = Int::one();
            simple_roots.push(root);
            simple_coroots.push(coroot);
        }
        Ok(Self {
            factors: factors.to_vec(),
            torus_rank,
            levi: None,
            ambient_rank,
            labels: (1..=ss).collect(),
            simple_roots,
            simple_coroots,
            gram,
        })
    }

    /// Parses `"A2"`, `"A1xA1+T1"`, `"B2 x G2 + T3"`, `"T2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut torus = 0;
        for part in text.split(['x', '×', '*', '+']).map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(t) = part.strip_prefix(['T', 't']) {
                torus += t.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad torus rank in {part:?}")))?;
            } else {
                factors.push(part.parse()?);
            }
        }
        Self::new(&factors, torus)
    }

    /// The Levi subsystem on the given labels, in the same coordinates.
    pub fn restrict(&self, levi: &ParabolicSet) -> Result<Self> {
        self.check_labels(levi)?;
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&k| levi.contains(self.labels[k])).collect();
        let full: usize = self.factors.iter().map(|f| f.rank()).sum();
        Ok(Self {
            factors: self.factors.clone(),
            torus_rank: self.torus_rank,
            levi: (levi.len() < full).then(|| levi.clone()),
            ambient_rank: self.ambient_rank,
            labels: keep.iter().map(|&k| self.labels[k]).collect(),
            simple_roots: keep.iter().map(|&k| self.simple_roots[k].clone()).collect(),
            simple_coroots: keep.iter().map(|&k| self.simple_coroots[k].clone()).collect(),
            gram: keep.iter().map(|&i| keep.iter().map(|&j| self.gram[i][j].clone()).collect()).collect(),
        })
    }

    pub fn factors(&self) -> &[CartanType] {
        &self.factors
    }

    /// Torus rank of the group the factor list was built from.
    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// The Levi label set when this system is a restriction.
    pub fn levi(&self) -> Option<&ParabolicSet> {
        self.levi.as_ref()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.labels.len()
    }

    /// Rank of the connected center.
    pub fn central_torus_rank(&self) -> usize {
        self.ambient_rank - self.semisimple_rank()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn all_labels(&self) -> ParabolicSet {
        ParabolicSet::new(self.labels.iter().copied())
    }

    pub fn simple_roots(&self) -> &[Vec<Int>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<Int>] {
        &self.simple_coroots
    }

    pub fn simple_root(&self, label: usize) -> Result<&[Int]> {
        Ok(&self.simple_roots[self.position(label)?])
    }

    pub fn is_valid_label(&self, label: usize) -> bool {
        self.labels.contains(&label)
    }

    pub fn check_labels(&self, p: &ParabolicSet) -> Result<()> {
        match p.iter().find(|&l| !self.is_valid_label(l)) {
            Some(l) => invalid(format!("simple root label {l} is not in {:?}", self.labels)),
            None => Ok(()),
        }
    }

    fn position(&self, label: usize) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::InvalidInput(format!("simple root label {label} out of range {:?}", self.labels)))
    }

    /// `<weight, alpha_label^vee>`.
    pub fn pairing(&self, weight: &[Int], label: usize) -> Result<Int> {
        self.check_weight(weight)?;
        Ok(dot_int(weight, &self.simple_coroots[self.position(label)?]))
    }

    /// Matrix `<alpha_i, alpha_j^vee>` over the simple roots of this system.
    pub fn cartan_matrix(&self) -> Vec<Vec<Int>> {
        self.simple_roots
            .iter()
            .map(|a| self.simple_coroots.iter().map(|c| dot_int(a, c)).collect())
            .collect()
    }

    /// Simple reflection `s_label` on weights.
    pub fn simple_reflection(&self, label: usize) -> Result<Reflection> {
        let k = self.position(label)?;
        Reflection::new(to_rat(&self.simple_roots[k]), to_rat(&self.simple_coroots[k]))
    }

    pub fn simple_reflections(&self) -> Vec<Reflection> {
        self.labels.iter().map(|&l| self.simple_reflection(l).expect("own label")).collect()
    }

    /// All roots of the subsystem spanned by the simple roots in `p`, sorted.
    pub fn levi_roots(&self, p: &ParabolicSet) -> Result<Vec<Vec<Int>>> {
        self.check_labels(p)?;
        let ks: Vec<usize> = p.iter().map(|l| self.position(l).expect("checked")).collect();
        let mut seen: HashSet<Vec<Int>> = HashSet::new();
        let mut queue: VecDeque<Vec<Int>> = VecDeque::new();
        for &k in &ks {
            if seen.insert(self.simple_roots[k].clone()) {
                queue.push_back(self.simple_roots[k].clone());
            }
        }
        while let Some(r) = queue.pop_front() {
            for &k in &ks {
                let c = dot_int(&r, &self.simple_coroots[k]);
                if c.is_zero() {
                    continue;
                }
                let s: Vec<Int> = r.iter().zip(&self.simple_roots[k]).map(|(x, a)| x - &c * a).collect();
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<Vec<Int>> = seen.into_iter().collect();
        roots.sort();
        Ok(roots)
    }

    pub fn roots(&self) -> Vec<Vec<Int>> {
        self.levi_roots(&self.all_labels()).expect("own labels")
    }

    /// `{ i : <mu, alpha_i^vee> = 0 }`.
    pub fn stabilizer_levi_of_weight(&self, mu: &[Int]) -> Result<ParabolicSet> {
        self.check_weight(mu)?;
        Ok(ParabolicSet::new(
            self.labels
                .iter()
                .zip(&self.simple_coroots)
                .filter(|(_, c)| dot_int(mu, c).is_zero())
                .map(|(&l, _)| l),
        ))
    }

    /// Coefficients of `v` in the simple roots of this system, when `v` lies
    /// in their rational span.
    pub fn simple_root_coefficients(&self, v: &[Int]) -> Option<Vec<Rat>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let rows: Vec<Vec<Rat>> = self.simple_roots.iter().map(|r| to_rat(r)).collect();
        if linalg::is_zero_vec(v) {
            return Some(vec![Rat::zero(); rows.len()]);
        }
        linalg::solve_combination(&rows, &to_rat(v))
    }

    pub fn in_root_span(&self, v: &[Int]) -> bool {
        self.simple_root_coefficients(v).is_some()
    }

    /// Whether `v` is an integral combination of the simple roots.
    pub fn in_root_lattice(&self, v: &[Int]) -> bool {
        self.simple_root_coefficients(v).is_some_and(|c| c.iter().all(Rat::is_integer))
    }

    /// W-invariant inner product `(alpha, lambda)` of an element `alpha` of
    /// the rational root span with an arbitrary weight `lambda`.
    pub fn inner_product(&self, alpha: &[Int], lambda: &[Int]) -> Result<Rat> {
        self.check_weight(lambda)?;
        let Some(c) = self.simple_root_coefficients(alpha) else {
            return invalid("vector is not in the span of the simple roots");
        };
        let two = Rat::from_integer(2.into());
        Ok(c.iter()
            .enumerate()
            .map(|(i, ci)| ci * (&self.gram[i][i] / &two) * Rat::from_integer(dot_int(lambda, &self.simple_coroots[i])))
            .sum())
    }

    fn check_weight(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.ambient_rank {
            return invalid(format!("weight has {} coordinates, ambient rank is {}", v.len(), self.ambient_rank));
        }
        Ok(())
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if self.torus_rank > 0 || parts.is_empty() {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("x"))?;
        if let Some(l) = &self.levi {
            write!(f, " (Levi {l})")?;
        }
        Ok(())
    }
}

/// A reflection `v -> v - <v, coroot> root` with `<root, coroot> = 2`.
/// On the dual space it acts contragrediently: `f -> f - <root, f> coroot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    root: Vec<Rat>,
    coroot: Vec<Rat>,
}

impl Reflection {
    pub fn new(root: Vec<Rat>, coroot: Vec<Rat>) -> Result<Self> {
        if root.len() != coroot.len() {
            return invalid("root and coroot have different lengths");
        }
        let p = dot_rat(&root, &coroot);
        if p != Rat::from_integer(2.into()) {
            return invalid(format!("reflection needs <root, coroot> = 2, got {p}"));
        }
        Ok(Self { root, coroot })
    }

    pub fn root(&self) -> &[Rat] {
        &self.root
    }

    pub fn coroot(&self) -> &[Rat] {
        &self.coroot
    }

    pub fn dim(&self) -> usize {
        self.root.len()
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let c = dot_rat(v, &self.coroot);
        v.iter().zip(&self.root).map(|(x, a)| x - &c * a).collect()
    }

    pub fn apply_dual(&self, f: &[Rat]) -> Vec<Rat> {
        let c = dot_rat(&self.root, f);
        f.iter().zip(&self.coroot).map(|(x, s)| x - &c * s).collect()
    }

    /// Matrix of the weight-side action on column vectors: `I - root coroot^T`.
    pub fn matrix(&self) -> RatMatrix {
        outer_update(&self.root, &self.coroot)
    }

    /// Matrix of the dual action: `I - coroot root^T`.
    pub fn dual_matrix(&self) -> RatMatrix {
        outer_update(&self.coroot, &self.root)
    }
}

fn outer_update(col: &[Rat], row: &[Rat]) -> RatMatrix {
    let n = col.len();
    let mut m = RatMatrix::identity(n).rows().to_vec();
    for i in 0..n {
        for j in 0..n {
            m[i][j] -= &col[i] * &row[j];
        }
    }
    RatMatrix::from_rows(m)
}

/// `generator` applied to `v` on the weight side.
pub fn reflect(generator: (&[Int], &[Rat]), v: &[Rat]) -> Result<Vec<Rat>> {
    let r = Reflection::new(to_rat(generator.0), generator.1.to_vec())?;
    if v.len() != r.dim() {
        return invalid("vector length does not match the reflection");
    }
    Ok(r.apply(v))
}

/// A finite group of exact linear maps, enumerated element by element.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    dim: usize,
    generators: Vec<RatMatrix>,
    elements: Vec<RatMatrix>,
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[RatMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        self.elements.contains(m)
    }
}

/// Breadth-first closure of `generators` (matrices on `Q^dim`). Every
/// generator must be an involution. Fails with `CapExceeded` once more than
/// `cap` elements have been found.
pub fn generate_group(dim: usize, generators: &[RatMatrix], cap: usize) -> Result<ReflectionGroup> {
    if cap == 0 {
        return invalid("group cap must be at least 1");
    }
    for g in generators {
        if g.dim() != dim {
            return invalid("generator dimension mismatch");
        }
        if !g.mul(g).is_identity() {
            return invalid("generator is not an involution");
        }
    }
    let id = RatMatrix::identity(dim);
    let mut seen: HashSet<RatMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let p = g.mul(&e);
            if seen.insert(p.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(format!(
                        "group closure exceeded {cap} elements (group may be infinite)"
                    )));
                }
                elements.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(ReflectionGroup { dim, generators: generators.to_vec(), elements })
}

/// Weight-side group generated by reflections.
pub fn generate_reflection_group(dim: usize, reflections: &[Reflection], cap: usize) -> Result<ReflectionGroup> {
    let mats: Vec<RatMatrix> = reflections.iter().map(Reflection::matrix).collect();
    generate_group(dim, &mats, cap)
}
