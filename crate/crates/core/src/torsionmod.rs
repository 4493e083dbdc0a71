//! The 2-torsion of a hyperelliptic jacobian as a permutation module over GF(2).
//!
//! Vectors are functions `B -> GF(2)` on at most 64 letters, packed into a
//! `u64` with bit `b` holding the value at letter `b`. A permutation `s` acts
//! by moving the value at `b` to `s(b)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const MAX_LETTERS: usize = 64;

fn mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// A permutation of `{0, .., m-1}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return domain(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation of `m` letters from disjoint cycles.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= m || used[a] {
                    return domain(format!("bad or repeated letter {a} in cycle {cycle:?}"));
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// The cycle `(start start+1 .. end-1)`.
    pub fn cycle_range(m: usize, start: usize, end: usize) -> Self {
        Self::from_cycles(m, &[(start..end).collect()]).expect("range cycle")
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` or `"()"` on `m` letters.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return domain(format!("expected '(' in {s:?}"));
            };
            let Some(close) = body.find(')') else {
                return domain(format!("unclosed cycle in {s:?}"));
            };
            let cycle = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<usize>().map_err(|e| Error::Domain(format!("{w:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(m, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.images[i];
            }
            out.push(c);
        }
        out
    }

    /// Action on a packed vector.
    pub fn act(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            out |= 1 << self.images[b];
            bits &= bits - 1;
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let words: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", words.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of `GF(2)^m` held as a reduced row-echelon basis. Rows are sorted
/// by decreasing pivot, the pivot of a row being its highest set bit, and every
/// pivot column is zero in all other rows, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace2 {
    m: usize,
    basis: Vec<u64>,
}

impl Subspace2 {
    pub fn zero(m: usize) -> Self {
        Self { m, basis: Vec::new() }
    }

    pub fn full(m: usize) -> Self {
        Self { m, basis: (0..m).rev().map(|i| 1u64 << i).collect() }
    }

    pub fn span(m: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::zero(m);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn letters(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.basis {
            let pivot = 63 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v & mask(self.m)) == 0 && v & !mask(self.m) == 0
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v & mask(self.m));
        if v == 0 {
            return false;
        }
        let pivot = 63 - v.leading_zeros();
        for r in self.basis.iter_mut() {
            if *r >> pivot & 1 == 1 {
                *r ^= v;
            }
        }
        let at = self.basis.partition_point(|r| r.leading_zeros() < v.leading_zeros());
        self.basis.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for &v in &other.basis {
            s.insert(v);
        }
        s
    }

    /// Orthogonal complement under `u.v = popcount(u & v) mod 2`.
    pub fn perp(&self) -> Self {
        let pivots: u64 = self.basis.iter().map(|r| 1u64 << (63 - r.leading_zeros())).fold(0, |a, b| a | b);
        let mut out = Self::zero(self.m);
        for j in (0..self.m).filter(|&j| pivots >> j & 1 == 0) {
            let mut x = 1u64 << j;
            for &r in &self.basis {
                if r >> j & 1 == 1 {
                    x |= 1 << (63 - r.leading_zeros());
                }
            }
            out.insert(x);
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.perp().sum(&other.perp()).perp()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|&v| other.contains(v))
    }
}

/// `u.v` for the standard symmetric form.
pub fn dot(u: u64, v: u64) -> bool {
    (u & v).count_ones() % 2 == 1
}

/// `GF(2)^m` with a permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2PermModule {
    m: usize,
    generators: Vec<Perm>,
}

impl F2PermModule {
    pub fn new(m: usize, generators: Vec<Perm>) -> Result<Self> {
        if m == 0 || m > MAX_LETTERS {
            return domain(format!("{m} letters is outside 1..={MAX_LETTERS}"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != m) {
            return domain(format!("generator {g} does not act on {m} letters"));
        }
        Ok(Self { m, generators })
    }

    /// `Alt(m)`: the 3-cycle `(0 1 2)` with `(0 .. m-1)` for odd `m` or
    /// `(1 .. m-1)` for even `m`.
    pub fn alternating(m: usize) -> Result<Self> {
        if m < 3 {
            return Self::new(m, Vec::new());
        }
        let long = if m % 2 == 1 { Perm::cycle_range(m, 0, m) } else { Perm::cycle_range(m, 1, m) };
        Self::new(m, vec![Perm::cycle_range(m, 0, 3), long])
    }

    /// `Sym(m)`: `(0 1)` with `(0 .. m-1)`.
    pub fn symmetric(m: usize) -> Result<Self> {
        if m < 2 {
            return Self::new(m, Vec::new());
        }
        Self::new(m, vec![Perm::cycle_range(m, 0, 2), Perm::cycle_range(m, 0, m)])
    }

    pub fn trivial(m: usize) -> Result<Self> {
        Self::new(m, Vec::new())
    }

    pub fn letters(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Permutations preserve the standard form, checked on all pairs of basis vectors.
    pub fn form_is_invariant(&self) -> bool {
        self.generators.iter().all(|g| {
            (0..self.m).all(|i| {
                (0..self.m).all(|j| dot(1 << i, 1 << j) == dot(g.act(1 << i), g.act(1 << j)))
            })
        })
    }

    pub fn is_invariant(&self, w: &Subspace2) -> bool {
        w.basis.iter().all(|&v| self.generators.iter().all(|g| w.contains(g.act(v))))
    }

    fn check(&self, v: u64) -> Result<()> {
        if v & !mask(self.m) != 0 {
            return domain(format!("vector {v:#x} is longer than {} letters", self.m));
        }
        Ok(())
    }

    /// Smallest invariant subspace containing `v`.
    pub fn spin(&self, v: u64) -> Result<Subspace2> {
        self.check(v)?;
        Ok(self.spin_unchecked(v))
    }

    fn spin_unchecked(&self, v: u64) -> Subspace2 {
        let mut w = Subspace2::zero(self.m);
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            if w.insert(u) {
                queue.extend(self.generators.iter().map(|g| g.act(u)));
            }
        }
        w
    }

    /// Every invariant subspace: spins of all `2^m` vectors closed under sum and
    /// intersection. Feasible up to about 20 letters.
    pub fn submodule_lattice(&self) -> Result<BTreeSet<Subspace2>> {
        if self.m > 24 {
            return domain(format!("lattice enumeration over {} letters is infeasible", self.m));
        }
        let cyclic: HashSet<Subspace2> =
            (0..1u64 << self.m).into_par_iter().map(|v| self.spin_unchecked(v)).collect();
        let mut all: BTreeSet<Subspace2> = cyclic.into_iter().collect();
        loop {
            let current: Vec<Subspace2> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    grew |= all.insert(a.sum(b));
                    grew |= all.insert(a.intersection(b));
                }
            }
            if !grew {
                return Ok(all);
            }
        }
    }

    /// Dimensions of all invariant subspaces. Defined for an even number of letters.
    pub fn submodule_dims(&self) -> Result<BTreeSet<usize>> {
        if self.m % 2 == 1 {
            return domain(format!("submodule dimensions are checked on an even number of letters, got {}", self.m));
        }
        Ok(self.submodule_lattice()?.iter().map(Subspace2::dim).collect())
    }

    /// Dimension of the algebra of matrices commuting with every generator.
    ///
    /// With `P e_b = e_{s(b)}` the condition `AP = PA` reads
    /// `A[i][s(j)] = A[s^-1(i)][j]`; the system is solved by elimination over
    /// `m^2` unknowns.
    pub fn centralizer_dim(&self) -> usize {
        let m = self.m;
        let mut rows = BitMatrix::new(m * m);
        for g in &self.generators {
            let inv = g.inverse();
            for i in 0..m {
                for j in 0..m {
                    let a = i * m + g.image(j);
                    let b = inv.image(i) * m + j;
                    if a != b {
                        rows.push_pair(a, b);
                    }
                }
            }
        }
        m * m - rows.rank()
    }
}

/// Dense GF(2) matrix with multiword rows, used for the commutant system.
struct BitMatrix {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    fn new(cols: usize) -> Self {
        Self { words: cols.div_ceil(64), rows: Vec::new() }
    }

    fn push_pair(&mut self, a: usize, b: usize) {
        let mut row = vec![0u64; self.words];
        row[a / 64] ^= 1 << (a % 64);
        row[b / 64] ^= 1 << (b % 64);
        self.rows.push(row);
    }

    fn rank(mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.words * 64 {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows.len()).find(|&r| self.rows[r][w] & bit != 0) else {
                continue;
            };
            self.rows.swap(rank, p);
            let pivot = self.rows[rank].clone();
            for r in 0..self.rows.len() {
                if r != rank && self.rows[r][w] & bit != 0 {
                    for (x, y) in self.rows[r].iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A linear map `GF(2)^n -> GF(2)^k` given by the images of the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Map {
    columns: Vec<u64>,
}

impl F2Map {
    pub fn new(columns: Vec<u64>) -> Self {
        Self { columns }
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            out ^= self.columns[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        out
    }

    /// Restriction of functions on `n` letters to the letters other than `t`,
    /// which are renumbered in increasing order.
    pub fn restriction(n: usize, t: usize) -> Self {
        Self::new(
            (0..n)
                .map(|b| match b.cmp(&t) {
                    std::cmp::Ordering::Less => 1 << b,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1 << (b - 1),
                })
                .collect(),
        )
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Self) -> Self {
        Self::new(self.columns.iter().map(|&c| other.apply(c)).collect())
    }
}

/// Zero-sum hyperplane of `GF(2)^n`.
pub fn zero_sum_hyperplane(n: usize) -> Subspace2 {
    Subspace2::span(n, (1..n).map(|i| 1u64 | 1 << i))
}

/// Letters other than `t`, renumbered, with the induced action.
pub fn restrict_perm(g: &Perm, t: usize) -> Result<Perm> {
    if !g.fixes(t) {
        return domain(format!("generator {g} moves the rational root label {t}"));
    }
    let squeeze = |i: usize| if i > t { i - 1 } else { i };
    Perm::from_images((0..g.degree()).filter(|&i| i != t).map(|i| squeeze(g.image(i))).collect())
}

/// Whether `map` restricted to `domain` is a bijection onto `GF(2)^k` that
/// intertwines `dom_gens` with `cod_gens`.
pub fn is_equivariant_iso(
    domain_space: &Subspace2,
    k: usize,
    map: &F2Map,
    dom_gens: &[Perm],
    cod_gens: &[Perm],
) -> bool {
    if domain_space.dim() != k {
        return false;
    }
    let image = Subspace2::span(k, domain_space.basis().iter().map(|&v| map.apply(v)));
    if image.dim() != k {
        return false;
    }
    dom_gens.iter().zip(cod_gens).all(|(g, gh)| {
        domain_space.basis().iter().all(|&v| map.apply(g.act(v)) == gh.act(map.apply(v)))
    })
}

/// Whether restriction from the zero-sum functions on the roots of
/// `f = (x - t) h` to all functions on the roots of `h` is an isomorphism of
/// modules, for a group fixing the label `t`.
pub fn heart_restriction_iso(letters: usize, t: usize, gens: &[Perm]) -> Result<bool> {
    heart_map_iso(letters, t, gens, &F2Map::restriction(letters, t))
}

/// As [`heart_restriction_iso`] but for an arbitrary candidate map.
pub fn heart_map_iso(letters: usize, t: usize, gens: &[Perm], map: &F2Map) -> Result<bool> {
    if letters < 2 || letters > MAX_LETTERS || t >= letters {
        return domain(format!("label {t} on {letters} letters"));
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != letters) {
        return domain(format!("generator {g} does not act on {letters} letters"));
    }
    let restricted = gens.iter().map(|g| restrict_perm(g, t)).collect::<Result<Vec<_>>>()?;
    Ok(is_equivariant_iso(&zero_sum_hyperplane(letters), letters - 1, map, gens, &restricted))
}

/// `r! < m!/2` for every `1 < r < m`.
pub fn index_bound_holds(m: u32) -> bool {
    let fact = |k: u32| (1..=k as u128).product::<u128>();
    (2..m).all(|r| 2 * fact(r) < fact(m))
}

impl FromStr for Perm {
    type Err = Error;

    /// Reads `"n: (cycles)"`, the fixture format.
    fn from_str(s: &str) -> Result<Self> {
        let (n, cycles) = s.split_once(':').ok_or_else(|| Error::Domain(format!("missing degree in {s:?}")))?;
        let n = n.trim().parse().map_err(|e| Error::Domain(format!("{n:?}: {e}")))?;
        Perm::parse(n, cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbital_count(module: &F2PermModule) -> usize {
        // number of orbits of the group on ordered pairs, by union-find
        let m = module.letters();
        let mut parent: Vec<usize> = (0..m * m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in module.generators() {
            for i in 0..m {
                for j in 0..m {
                    let a = find(&mut parent, i * m + j);
                    let b = find(&mut parent, g.image(i) * m + g.image(j));
                    parent[a] = b;
                }
            }
        }
        (0..m * m).filter(|&x| find(&mut parent, x) == x).count()
    }

    #[test]
    fn perm_parsing_and_display() {
        let p = Perm::parse(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Perm::parse(3, "()").unwrap(), Perm::identity(3));
        assert_eq!("4: (0,3)".parse::<Perm>().unwrap().images(), &[3, 1, 2, 0]);
        assert!(Perm::parse(3, "(0 3)").is_err());
        assert!(Perm::parse(3, "(0 1)(1 2)").is_err());
        assert_eq!(p.compose(&p.inverse()), Perm::identity(5));
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace2::span(4, [0b0011, 0b0110]);
        let b = Subspace2::span(4, [0b0101, 0b0011, 0b0110]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(0b0101));
        assert!(!a.contains(0b1000));
    }

    #[test]
    fn perp_and_intersection() {
        let ones = Subspace2::span(6, [0b111111]);
        assert_eq!(ones.perp(), zero_sum_hyperplane(6));
        assert_eq!(zero_sum_hyperplane(6).perp(), ones);
        let a = Subspace2::span(4, [0b0001, 0b0010]);
        let b = Subspace2::span(4, [0b0010, 0b0100]);
        assert_eq!(a.intersection(&b), Subspace2::span(4, [0b0010]));
        assert_eq!(Subspace2::full(5).perp(), Subspace2::zero(5));
    }

    #[test]
    fn spins_for_alt6() {
        let a6 = F2PermModule::alternating(6).unwrap();
        assert_eq!(a6.spin(0b111111).unwrap().dim(), 1);
        assert_eq!(a6.spin(0b1).unwrap().dim(), 6);
        assert_eq!(a6.spin(0b11).unwrap().dim(), 5);
        assert!(a6.spin(1 << 6).is_err());
        assert!(a6.form_is_invariant());
    }

    #[test]
    fn lattice_dimensions() {
        let want = |g: usize| BTreeSet::from([0, 1, 2 * g - 1, 2 * g]);
        assert_eq!(F2PermModule::alternating(6).unwrap().submodule_dims().unwrap(), want(3));
        assert_eq!(F2PermModule::trivial(2).unwrap().submodule_lattice().unwrap().len(), 5);
        assert_eq!(
            F2PermModule::trivial(2).unwrap().submodule_dims().unwrap(),
            BTreeSet::from([0, 1, 2])
        );
        assert!(F2PermModule::alternating(5).unwrap().submodule_dims().is_err());
    }

    #[test]
    fn centralizer_matches_orbital_count() {
        for m in 3..9 {
            for module in [
                F2PermModule::alternating(m).unwrap(),
                F2PermModule::symmetric(m).unwrap(),
                F2PermModule::trivial(m).unwrap(),
                F2PermModule::new(m, vec![Perm::cycle_range(m, 0, m)]).unwrap(),
            ] {
                assert_eq!(module.centralizer_dim(), orbital_count(&module), "{module:?}");
            }
        }
        assert_eq!(F2PermModule::symmetric(6).unwrap().centralizer_dim(), 2);
        assert_eq!(F2PermModule::alternating(8).unwrap().centralizer_dim(), 2);
        assert_eq!(F2PermModule::trivial(4).unwrap().centralizer_dim(), 16);
    }

    #[test]
    fn restriction_is_an_isomorphism() {
        let a6 = F2PermModule::alternating(6).unwrap();
        let lift = |g: &Perm| {
            let mut im = g.images().to_vec();
            im.push(6);
            Perm::from_images(im).unwrap()
        };
        let gens: Vec<Perm> = a6.generators().iter().map(lift).collect();
        assert!(heart_restriction_iso(7, 6, &gens).unwrap());
        let swap = F2Map::new((0..6).map(|i| 1u64 << [1, 0, 2, 3, 4, 5][i]).collect());
        let broken = F2Map::restriction(7, 6).then(&swap);
        assert!(!heart_map_iso(7, 6, &gens, &broken).unwrap());
        let moving = vec![Perm::cycle_range(7, 5, 7)];
        assert!(heart_restriction_iso(7, 6, &moving).is_err());
    }

    #[test]
    fn restricted_perm_renumbers() {
        let g = Perm::parse(5, "(0 3)(1 4)").unwrap();
        assert_eq!(restrict_perm(&g, 2).unwrap().images(), &[2, 3, 0, 1]);
    }

    #[test]
    fn factorial_bound() {
        assert!((3..=16).all(index_bound_holds));
    }
}
