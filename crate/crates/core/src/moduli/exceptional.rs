//! The maps `J1(h)` between root triples and the exceptional parameter set
//! `B(h) = B1 ∪ B2 ∪ B3`.
//!
//! * `J1`: every map sending an ordered triple of distinct roots of `h` to
//!   another one, other than the identity.
//! * `B1`: rational values `T(a)` for `T` in `J1` and `a` a root.
//! * `B3`: rational values `T(infinity)`.
//! * `B2`: rational fixed points of `s(T) T^-1` for `T` in `J1` and `s` a
//!   permutation of the roots with `s(T) != T`. Letting `s` run over all
//!   permutations rather than the Galois group gives a superset.

use std::collections::BTreeMap;

use dashu_base::Abs;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::float::{real_rational, real_to_f64, reconstruct_complex, Complex, Real};
use super::mobius::{branch_match, permutes, MobiusMap, ProjPoint};
use super::roots::{roots_numeric, CertifiedRoot, RootReport};
use super::{next_precision, DEFAULT_PRECISION};
use crate::error::{domain, Error, Result};
use crate::exactalg::RationalPoly;
use crate::galois::{certify_sym_or_alt, DEFAULT_BUDGET};

/// Maps within this projective distance are identified.
pub const DEDUP_TOLERANCE: f64 = 1e-20;
const KEY_WINDOW: f64 = 1e-9;

/// A member of `J1` together with the root triples defining it.
#[derive(Clone, Debug)]
pub struct J1Entry {
    pub map: MobiusMap,
    pub from: [usize; 3],
    pub to: [usize; 3],
    key: f64,
}

/// The deduplicated set `J1`, sorted by a scalar key for lookup.
#[derive(Clone, Debug)]
pub struct J1 {
    entries: Vec<J1Entry>,
}

fn sphere_key(m: &[Complex64; 4]) -> f64 {
    let z0 = Complex64::new(0.318_309_886, 0.707_106_781);
    let (x, y) = (m[0] * z0 + m[1], m[2] * z0 + m[3]);
    // first coordinate of the image on the Riemann sphere
    2.0 * (x * y.conj()).re / (x.norm_sqr() + y.norm_sqr())
}

fn pt(z: &Complex) -> ProjPoint {
    ProjPoint::Finite(z.clone())
}

fn map_between(roots: &[Complex], from: [usize; 3], to: [usize; 3]) -> Result<MobiusMap> {
    let a = from.map(|i| pt(&roots[i]));
    let b = to.map(|i| pt(&roots[i]));
    MobiusMap::from_triples([&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]])
}

fn ordered_triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            for k in (0..m).filter(|&k| k != i && k != j) {
                out.push([i, j, k]);
            }
        }
    }
    out
}

impl J1 {
    /// Builds `J1` from numerically known roots. Each map arises from the
    /// simultaneous reorderings of its defining pair, so only increasing source
    /// triples are enumerated; anything else coinciding is removed by the
    /// deduplication.
    pub fn build(roots: &[Complex]) -> Result<Self> {
        let m = roots.len();
        let targets = ordered_triples(m);
        let sources: Vec<[usize; 3]> = targets.iter().copied().filter(|t| t[0] < t[1] && t[1] < t[2]).collect();
        let pairs: Vec<([usize; 3], [usize; 3])> = sources
            .iter()
            .flat_map(|&a| targets.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
            .collect();
        let mut entries = pairs
            .par_iter()
            .map(|&(from, to)| {
                let map = map_between(roots, from, to)?;
                let key = sphere_key(&map.to_c64());
                Ok(J1Entry { map, from, to, key })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.sort_by(|a, b| a.key.total_cmp(&b.key).then(a.from.cmp(&b.from)).then(a.to.cmp(&b.to)));
        let mut kept: Vec<J1Entry> = Vec::with_capacity(entries.len());
        for e in entries {
            let dup = kept
                .iter()
                .rev()
                .take_while(|k| e.key - k.key <= KEY_WINDOW)
                .any(|k| real_to_f64(&k.map.distance(&e.map)) < DEDUP_TOLERANCE);
            if !dup {
                kept.push(e);
            }
        }
        Ok(Self { entries: kept })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[J1Entry] {
        &self.entries
    }

    /// Index of a member equal to `t` within [`DEDUP_TOLERANCE`].
    pub fn find(&self, t: &MobiusMap) -> Option<usize> {
        let key = sphere_key(&t.to_c64());
        let start = self.entries.partition_point(|e| e.key < key - KEY_WINDOW);
        (start..self.entries.len())
            .take_while(|&i| self.entries[i].key <= key + KEY_WINDOW)
            .find(|&i| real_to_f64(&self.entries[i].map.distance(t)) < DEDUP_TOLERANCE)
    }
}

/// How an element of `B` arises, in terms of root indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSource {
    /// `T(root)` with `T = T(from -> to)`.
    RootImage { from: [usize; 3], to: [usize; 3], root: usize },
    /// `T(infinity)`.
    ImageOfInfinity { from: [usize; 3], to: [usize; 3] },
    /// A fixed point of `S T^-1` with `T = T(from -> to)` and
    /// `S = T(conj_from -> conj_to)`.
    FixedPoint { from: [usize; 3], to: [usize; 3], conj_from: [usize; 3], conj_to: [usize; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalWitness {
    #[serde(with = "crate::exactalg::serde_rational")]
    pub value: BigRational,
    pub source: WitnessSource,
}

/// `B(h)` with provenance for each element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalSet {
    #[serde(with = "crate::exactalg::serde_rational::vec")]
    pub b1: Vec<BigRational>,
    #[serde(with = "crate::exactalg::serde_rational::vec")]
    pub b2: Vec<BigRational>,
    #[serde(with = "crate::exactalg::serde_rational::vec")]
    pub b3: Vec<BigRational>,
    pub precision_used: usize,
    pub superset_flag: bool,
    /// Whether `B2` was computed over orbit representatives, which needs a
    /// certified 3-transitive Galois group.
    pub orbit_reduced: bool,
    pub j1_size: usize,
    pub denom_bound: String,
    pub roots: Vec<RootReport>,
    pub witnesses: Vec<ExceptionalWitness>,
    /// Real candidate values, reconstructed or not, sorted.
    #[serde(skip)]
    candidates: Vec<(f64, Real)>,
}

impl ExceptionalSet {
    pub fn all(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.b1.iter().chain(&self.b2).chain(&self.b3).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, t: &BigRational) -> bool {
        self.b1.contains(t) || self.b2.contains(t) || self.b3.contains(t)
    }

    /// Conservative membership: `t` is in `B`, or lies within `2^-(prec/4)` of
    /// a real candidate value whose rational reconstruction failed (for example
    /// because its denominator exceeds the bound).
    pub fn may_contain(&self, t: &BigRational) -> bool {
        if self.contains(t) {
            return true;
        }
        let prec = self.precision_used;
        let x = real_rational(t, prec);
        let xf = real_to_f64(&x);
        let tol = super::float::real_pow2(-((prec / 4) as isize), prec);
        let start = self.candidates.partition_point(|(f, _)| *f < xf - 1e-9 * (1.0 + xf.abs()));
        self.candidates[start..]
            .iter()
            .take_while(|(f, _)| *f <= xf + 1e-9 * (1.0 + xf.abs()))
            .any(|(_, c)| (c - &x).abs() < tol)
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn c64_from_triples(roots: &[Complex64], a: [usize; 3], b: [usize; 3]) -> [Complex64; 4] {
    let nf = |p: [usize; 3]| {
        let (p1, p2, p3) = (roots[p[0]], roots[p[1]], roots[p[2]]);
        let (k1, k2) = (p2 - p3, p2 - p1);
        [k1, -k1 * p1, k2, -k2 * p3]
    };
    let [p, q, r, s] = nf(a);
    let [e, f, g, h] = nf(b);
    let (ie, i_f, ig, ih) = (h, -f, -g, e);
    [ie * p + i_f * r, ie * q + i_f * s, ig * p + ih * r, ig * q + ih * s]
}

fn c64_compose(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Double precision screen for `S T^-1`: `None` if the map looks like the
/// identity, otherwise whether a fixed point could be real.
fn screen_fixed_points(u: &[Complex64; 4]) -> Option<bool> {
    let norm = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let [a, b, c, d] = u.map(|z| z / norm);
    if b.norm() < 1e-8 && c.norm() < 1e-8 && (a - d).norm() < 1e-8 {
        return None;
    }
    if c.norm() < 1e-6 {
        return Some(true);
    }
    let disc = (d - a) * (d - a) + 4.0 * b * c;
    let root = disc.sqrt();
    let real = |w: Complex64| w.im.abs() <= 1e-6 * (1.0 + w.norm());
    Some(real((a - d + root) / (2.0 * c)) || real((a - d - root) / (2.0 * c)))
}

/// All injective maps from `support` into `0..m`, as image tables indexed like `support`.
fn injections(support: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(k, m, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(support.len(), m, &mut vec![false; m], &mut Vec::new(), &mut out);
    out
}

struct Candidate {
    value: Complex,
    source: WitnessSource,
}

fn conjugates(from: [usize; 3], to: [usize; 3], m: usize) -> Vec<([usize; 3], [usize; 3])> {
    let mut support: Vec<usize> = from.iter().chain(&to).copied().collect();
    support.sort_unstable();
    support.dedup();
    let at = |i: usize| support.binary_search(&i).unwrap();
    injections(&support, m)
        .into_iter()
        .map(|img| (from.map(|i| img[at(i)]), to.map(|i| img[at(i)])))
        .filter(|pair| *pair != (from, to))
        .collect()
}

fn fixed_point_candidates(
    roots: &[Complex],
    roots64: &[Complex64],
    reps: &[([usize; 3], [usize; 3])],
) -> Result<Vec<Candidate>> {
    let m = roots.len();
    let per_rep = reps
        .par_iter()
        .map(|&(from, to)| {
            let t_inv64 = c64_from_triples(roots64, to, from);
            let mut t_inv: Option<MobiusMap> = None;
            let mut out = Vec::new();
            for (cf, ct) in conjugates(from, to, m) {
                let u64 = c64_compose(&c64_from_triples(roots64, cf, ct), &t_inv64);
                let screen = screen_fixed_points(&u64);
                if screen == Some(false) {
                    continue;
                }
                if t_inv.is_none() {
                    t_inv = Some(map_between(roots, to, from)?);
                }
                let u = map_between(roots, cf, ct)?.compose(t_inv.as_ref().unwrap());
                if u.is_identity(DEDUP_TOLERANCE) {
                    continue;
                }
                for p in u.fixed_points() {
                    if let ProjPoint::Finite(z) = p {
                        let source = WitnessSource::FixedPoint { from, to, conj_from: cf, conj_to: ct };
                        out.push(Candidate { value: z, source });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_rep.into_iter().flatten().collect())
}

struct Classified {
    sets: BTreeMap<BigRational, WitnessSource>,
}

fn classify_candidates(
    cands: Vec<Candidate>,
    denom_bound: &BigInt,
    accept_bits: usize,
    reals: &mut Vec<(f64, Real)>,
) -> Classified {
    let prec = cands.first().map(|c| c.value.precision()).unwrap_or(64);
    let tol = super::float::real_pow2(-(accept_bits as isize), prec);
    let results: Vec<(Option<BigRational>, Option<Real>, WitnessSource)> = cands
        .into_par_iter()
        .map(|c| {
            let real_valued = c.value.im.clone().abs() < tol;
            let r = if real_valued { reconstruct_complex(&c.value, denom_bound, accept_bits) } else { None };
            (r, real_valued.then_some(c.value.re), c.source)
        })
        .collect();
    let mut sets = BTreeMap::new();
    for (r, re, source) in results {
        if let Some(re) = re {
            reals.push((real_to_f64(&re), re));
        }
        if let Some(r) = r {
            sets.entry(r).or_insert(source);
        }
    }
    Classified { sets }
}

/// Computes `B(h)` at `precision` bits, doubling up to 1024 bits (or the
/// requested precision, if larger) when root certification fails.
pub fn exceptional_set(h: &RationalPoly, precision: usize, denom_bound: &BigInt) -> Result<ExceptionalSet> {
    let m = match h.deg() {
        Some(m) if m >= 6 => m,
        _ => return domain(format!("exceptional set needs degree >= 6, got {}", h.degree())),
    };
    if !h.is_squarefree() {
        return domain("exceptional set needs a squarefree polynomial");
    }
    let orbit_reduced = certify_sym_or_alt(h, DEFAULT_BUDGET, 0)?.certificate().is_some();
    let mut prec = precision;
    loop {
        match exceptional_at(h, m, prec, denom_bound, orbit_reduced) {
            Err(Error::Precision(msg)) => match next_precision(prec, precision) {
                Some(p) => prec = p,
                None => return Err(Error::Precision(msg)),
            },
            other => return other,
        }
    }
}

fn exceptional_at(
    h: &RationalPoly,
    m: usize,
    prec: usize,
    denom_bound: &BigInt,
    orbit_reduced: bool,
) -> Result<ExceptionalSet> {
    let certified = roots_numeric(h, prec)?;
    let roots: Vec<Complex> = certified.iter().map(|r| r.z.clone()).collect();
    let roots64: Vec<Complex64> = roots.iter().map(Complex::to_c64).collect();
    let j1 = J1::build(&roots)?;
    let accept_bits = prec / 4;
    let mut reals = Vec::new();

    let roots_ref = &roots;
    let b1_cands: Vec<Candidate> = j1
        .entries()
        .par_iter()
        .flat_map_iter(|e| {
            let roots = roots_ref;
            (0..m).filter_map(move |r| match e.map.apply(&pt(&roots[r])) {
                ProjPoint::Finite(z) => Some(Candidate {
                    value: z,
                    source: WitnessSource::RootImage { from: e.from, to: e.to, root: r },
                }),
                ProjPoint::Infinity => None,
            })
        })
        .collect();
    let b3_cands: Vec<Candidate> = j1
        .entries()
        .iter()
        .filter_map(|e| match e.map.apply(&ProjPoint::Infinity) {
            ProjPoint::Finite(z) => Some(Candidate {
                value: z,
                source: WitnessSource::ImageOfInfinity { from: e.from, to: e.to },
            }),
            ProjPoint::Infinity => None,
        })
        .collect();
    let reps: Vec<([usize; 3], [usize; 3])> = if orbit_reduced {
        ordered_triples(m).into_iter().filter(|t| *t != [0, 1, 2]).map(|t| ([0, 1, 2], t)).collect()
    } else {
        j1.entries().iter().map(|e| (e.from, e.to)).collect()
    };
    let b2_cands = fixed_point_candidates(&roots, &roots64, &reps)?;

    let b1 = classify_candidates(b1_cands, denom_bound, accept_bits, &mut reals);
    let b2 = classify_candidates(b2_cands, denom_bound, accept_bits, &mut reals);
    let b3 = classify_candidates(b3_cands, denom_bound, accept_bits, &mut reals);
    reals.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut witnesses = Vec::new();
    for set in [&b1, &b2, &b3] {
        for (value, source) in &set.sets {
            witnesses.push(ExceptionalWitness { value: value.clone(), source: source.clone() });
        }
    }
    Ok(ExceptionalSet {
        b1: b1.sets.keys().cloned().collect(),
        b2: b2.sets.keys().cloned().collect(),
        b3: b3.sets.keys().cloned().collect(),
        precision_used: prec,
        superset_flag: true,
        orbit_reduced,
        j1_size: j1.len(),
        denom_bound: denom_bound.to_string(),
        roots: certified.iter().map(CertifiedRoot::report).collect(),
        witnesses,
        candidates: reals,
    })
}

/// Recomputes every witness of `set` at `prec` bits and checks that it lies
/// within `tol` of its rational value. Roots are matched to the ones recorded
/// in `set` by proximity.
pub fn recertify(h: &RationalPoly, set: &ExceptionalSet, prec: usize, tol: f64) -> Result<bool> {
    let fresh = roots_numeric(h, prec)?;
    let old: Vec<Complex64> = set.roots.iter().map(|r| Complex64::new(r.re, r.im)).collect();
    let mut by_old = vec![None; old.len()];
    for r in &fresh {
        let z = r.z.to_c64();
        let i = (0..old.len())
            .min_by(|&a, &b| (old[a] - z).norm().total_cmp(&(old[b] - z).norm()))
            .ok_or_else(|| Error::Internal("no recorded roots".into()))?;
        by_old[i] = Some(r.z.clone());
    }
    let roots: Vec<Complex> = by_old
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("roots did not match one to one".into()))?;
    let close = |p: &ProjPoint, v: &BigRational| match p {
        ProjPoint::Finite(z) => {
            let d = &Complex::from_rational(v, prec) - z;
            real_to_f64(&d.abs()) < tol
        }
        ProjPoint::Infinity => false,
    };
    for w in &set.witnesses {
        let ok = match &w.source {
            WitnessSource::RootImage { from, to, root } => {
                close(&map_between(&roots, *from, *to)?.apply(&pt(&roots[*root])), &w.value)
            }
            WitnessSource::ImageOfInfinity { from, to } => {
                close(&map_between(&roots, *from, *to)?.apply(&ProjPoint::Infinity), &w.value)
            }
            WitnessSource::FixedPoint { from, to, conj_from, conj_to } => {
                let u = map_between(&roots, *conj_from, *conj_to)?.compose(&map_between(&roots, *to, *from)?);
                u.fixed_points().iter().any(|p| close(p, &w.value))
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Branch points of `y^2 = f`: the roots, and infinity for odd degree.
pub fn branch_points(f: &RationalPoly, prec: usize) -> Result<Vec<ProjPoint>> {
    let mut pts: Vec<ProjPoint> = roots_numeric(f, prec)?.into_iter().map(|r| ProjPoint::Finite(r.z)).collect();
    if f.deg().unwrap_or(0) % 2 == 1 {
        pts.push(ProjPoint::Infinity);
    }
    Ok(pts)
}

/// Whether `y^2 = f1` and `y^2 = f2` have projectively equivalent branch loci.
pub fn curves_isomorphic(f1: &RationalPoly, f2: &RationalPoly, tol: f64) -> Result<bool> {
    curves_isomorphic_at(f1, f2, tol, DEFAULT_PRECISION)
}

pub fn curves_isomorphic_at(f1: &RationalPoly, f2: &RationalPoly, tol: f64, prec: usize) -> Result<bool> {
    for f in [f1, f2] {
        if f.deg().unwrap_or(0) < 1 || !f.is_squarefree() {
            return domain(format!("{f} is not a squarefree polynomial of positive degree"));
        }
    }
    let genus = |f: &RationalPoly| crate::curvemap::genus(f.deg().unwrap());
    if genus(f1) != genus(f2) {
        return Ok(false);
    }
    let s1 = branch_points(f1, prec)?;
    let s2 = branch_points(f2, prec)?;
    if s1.len() != s2.len() || s1.len() < 4 {
        return Ok(s1.len() == s2.len() && s1.len() < 4);
    }
    Ok(branch_match(&s1, &s2, tol)?.is_some())
}

/// Members of `J1` that permute the roots of `h`.
pub fn root_preserving_maps(j1: &J1, roots: &[Complex], tol: f64) -> Vec<usize> {
    let pts: Vec<ProjPoint> = roots.iter().map(pt).collect();
    (0..j1.len()).filter(|&i| permutes(&j1.entries()[i].map, &pts, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn injection_counts() {
        assert_eq!(injections(&[0, 1, 2], 5).len(), 60);
        assert_eq!(conjugates([0, 1, 2], [1, 2, 0], 4).len(), 23);
    }

    #[test]
    fn j1_for_a_quartic() {
        let h = parse_poly("x^4 - x - 1").unwrap();
        let roots: Vec<Complex> = roots_numeric(&h, 128).unwrap().into_iter().map(|r| r.z).collect();
        let j1 = J1::build(&roots).unwrap();
        let n = 4 * 3 * 2;
        assert!(j1.len() <= n * (n - 1));
        for e in j1.entries() {
            assert!(!e.map.is_identity(1e-20));
            assert!(j1.find(&e.map.inverse()).is_some());
        }
    }

    #[test]
    fn translations_are_isomorphisms() {
        let f = parse_poly("x^5 - x - 1").unwrap();
        let g = f.shift(&crate::exactalg::q(3, 2));
        assert!(curves_isomorphic(&f, &g, 1e-20).unwrap());
        let scaled = f.scale(&crate::exactalg::q(4, 1));
        assert!(curves_isomorphic(&f, &scaled, 1e-20).unwrap());
        let other = parse_poly("x^5 - 2*x - 1").unwrap();
        assert!(!curves_isomorphic(&f, &other, 1e-10).unwrap());
        let genus3 = parse_poly("x^7 - x - 1").unwrap();
        assert!(!curves_isomorphic(&f, &genus3, 1e-10).unwrap());
    }
}
