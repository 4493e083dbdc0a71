//! Points of the projective line and fractional-linear transformations.
//!
//! Points are handled in homogeneous coordinates `[x : y]` and compared by the
//! chordal metric, so infinity never appears as a large float.

use std::cmp::Ordering;

use num_complex::Complex64;
use dashu_base::Abs;
use serde::Serialize;

use super::float::{is_zero, real_pow2, real_to_f64, Complex, Real};
use crate::error::{domain, Result};

/// A point of the complex projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint {
    Finite(Complex),
    Infinity,
}

impl ProjPoint {
    pub fn homogeneous(&self, prec: usize) -> (Complex, Complex) {
        match self {
            ProjPoint::Finite(z) => (z.clone(), Complex::one(prec)),
            ProjPoint::Infinity => (Complex::one(prec), Complex::zero(prec)),
        }
    }

    /// `[x : y]`, treating `y` as zero when it is below working precision
    /// relative to `x`.
    pub fn from_homogeneous(x: &Complex, y: &Complex) -> Self {
        let prec = x.precision().max(y.precision());
        if y.is_zero() || y.max_abs() <= x.max_abs() * real_pow2(-(prec as isize) + 8, prec) {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(x.div(y))
        }
    }

    pub fn finite(&self) -> Option<&Complex> {
        match self {
            ProjPoint::Finite(z) => Some(z),
            ProjPoint::Infinity => None,
        }
    }

    pub fn precision(&self) -> usize {
        match self {
            ProjPoint::Finite(z) => z.precision(),
            ProjPoint::Infinity => 0,
        }
    }

    pub fn to_c64(&self) -> Option<Complex64> {
        self.finite().map(Complex::to_c64)
    }

    /// Real part, then imaginary part, with infinity last.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.lex_cmp(b),
            (ProjPoint::Finite(_), ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Infinity, ProjPoint::Finite(_)) => Ordering::Greater,
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
        }
    }
}

fn det(p: &(Complex, Complex), q: &(Complex, Complex)) -> Complex {
    &(&p.0 * &q.1) - &(&q.0 * &p.1)
}

fn hnorm(p: &(Complex, Complex)) -> Real {
    (p.0.norm_sqr() + p.1.norm_sqr()).sqrt()
}

fn chordal_h(p: &(Complex, Complex), q: &(Complex, Complex)) -> Real {
    det(p, q).abs() / (hnorm(p) * hnorm(q))
}

/// Chordal distance `|x1 y2 - x2 y1| / (|(x1, y1)| |(x2, y2)|)`, at most 1.
pub fn chordal(a: &ProjPoint, b: &ProjPoint) -> Real {
    let prec = a.precision().max(b.precision()).max(64);
    chordal_h(&a.homogeneous(prec), &b.homogeneous(prec))
}

fn chordal_c64(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let d = (a.0 * b.1 - b.0 * a.1).norm();
    d / ((a.0.norm_sqr() + a.1.norm_sqr()).sqrt() * (b.0.norm_sqr() + b.1.norm_sqr()).sqrt())
}

/// Cross-ratio `(z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))`.
pub fn cross_ratio(z: [&ProjPoint; 4]) -> ProjPoint {
    let prec = z.iter().map(|p| p.precision()).max().unwrap().max(64);
    let h: Vec<_> = z.iter().map(|p| p.homogeneous(prec)).collect();
    let num = &det(&h[0], &h[2]) * &det(&h[1], &h[3]);
    let den = &det(&h[0], &h[3]) * &det(&h[1], &h[2]);
    ProjPoint::from_homogeneous(&num, &den)
}

/// `z -> (a z + b) / (c z + d)`, scaled so that its largest entry is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusMap {
    m: [Complex; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    /// `a, b, c, d` as `[re, im]` decimal strings.
    pub entries: Vec<[String; 2]>,
    pub digits: usize,
}

impl MobiusMap {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let prec = [&a, &b, &c, &d].iter().map(|z| z.precision()).max().unwrap();
        let m = [a, b, c, d];
        let big = m.iter().map(Complex::max_abs).fold(Real::ZERO, |x, y| if y > x { y } else { x });
        if is_zero(&big) {
            return domain("zero matrix");
        }
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        if det.max_abs() <= &big * &big * real_pow2(-(prec as isize) / 2, prec) {
            return domain("singular fractional-linear transformation");
        }
        let pivot = m.iter().position(|z| z.max_abs() == big).unwrap();
        let p = m[pivot].clone();
        let mut m = m.map(|z| z.div(&p));
        m[pivot] = Complex::one(prec);
        Ok(Self { m })
    }

    pub fn identity(prec: usize) -> Self {
        Self { m: [Complex::one(prec), Complex::zero(prec), Complex::zero(prec), Complex::one(prec)] }
    }

    pub fn entries(&self) -> &[Complex; 4] {
        &self.m
    }

    pub fn precision(&self) -> usize {
        self.m.iter().map(Complex::precision).max().unwrap()
    }

    fn apply_h(&self, p: &(Complex, Complex)) -> (Complex, Complex) {
        let [a, b, c, d] = &self.m;
        (&(a * &p.0) + &(b * &p.1), &(c * &p.0) + &(d * &p.1))
    }

    pub fn apply(&self, z: &ProjPoint) -> ProjPoint {
        let (x, y) = self.apply_h(&z.homogeneous(self.precision()));
        ProjPoint::from_homogeneous(&x, &y)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = &self.m;
        Self::new(d.clone(), -b, -c, a.clone()).expect("inverse of an invertible map")
    }

    /// The map sending `p1 -> 0`, `p2 -> 1`, `p3 -> infinity`.
    fn normal_form(p: [&ProjPoint; 3], prec: usize) -> Result<[Complex; 4]> {
        let h: Vec<_> = p.iter().map(|q| q.homogeneous(prec)).collect();
        let eps = real_pow2(-(prec as isize) / 2, prec);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if chordal_h(&h[i], &h[j]) <= eps {
                return domain("coincident points in a triple");
            }
        }
        let k1 = det(&h[1], &h[2]);
        let k2 = det(&h[1], &h[0]);
        Ok([&k1 * &h[0].1, -&(&k1 * &h[0].0), &k2 * &h[2].1, -&(&k2 * &h[2].0)])
    }

    /// The unique map with `T(a_i) = b_i`.
    pub fn from_triples(a: [&ProjPoint; 3], b: [&ProjPoint; 3]) -> Result<Self> {
        let prec = a.iter().chain(b.iter()).map(|p| p.precision()).max().unwrap().max(64);
        let [p, q, r, s] = Self::normal_form(a, prec)?;
        let [e, f, g, h] = Self::normal_form(b, prec)?;
        // (normal form of b)^-1 = adj = [h, -f; -g, e]
        let (ie, i_f, ig, ih) = (h, -&f, -&g, e);
        Self::new(
            &(&ie * &p) + &(&i_f * &r),
            &(&ie * &q) + &(&i_f * &s),
            &(&ig * &p) + &(&ih * &r),
            &(&ig * &q) + &(&ih * &s),
        )
    }

    /// Distance between the classes in `PGL_2`: the largest 2x2 minor of the
    /// two entry vectors, relative to their norms.
    pub fn distance(&self, other: &Self) -> Real {
        let n1 = self.m.iter().map(Complex::norm_sqr).fold(Real::ZERO, |x, y| x + y).sqrt();
        let n2 = other.m.iter().map(Complex::norm_sqr).fold(Real::ZERO, |x, y| x + y).sqrt();
        let mut worst = Real::ZERO;
        for i in 0..4 {
            for j in i + 1..4 {
                let minor = (&(&self.m[i] * &other.m[j]) - &(&self.m[j] * &other.m[i])).abs();
                if minor > worst {
                    worst = minor;
                }
            }
        }
        worst / (n1 * n2)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        real_to_f64(&self.distance(&Self::identity(self.precision()))) < tol
    }

    /// Solutions of `c z^2 + (d - a) z - b = 0`, with infinity when `c = 0`.
    pub fn fixed_points(&self) -> Vec<ProjPoint> {
        let prec = self.precision();
        let [a, b, c, d] = &self.m;
        let eps = real_pow2(-(prec as isize) + 16, prec);
        let dma = d - a;
        if c.max_abs() <= eps {
            let mut out = vec![ProjPoint::Infinity];
            if dma.max_abs() > eps {
                out.push(ProjPoint::Finite(b.div(&dma)));
            }
            return out;
        }
        let four = Complex::from_real(super::float::real_int(4, prec), prec);
        let disc = &(&dma * &dma) + &(&four * &(b * c));
        let root = disc.sqrt();
        let two_c = c + c;
        let amd = -&dma;
        vec![
            ProjPoint::Finite((&amd + &root).div(&two_c)),
            ProjPoint::Finite((&amd - &root).div(&two_c)),
        ]
    }

    pub fn to_c64(&self) -> [Complex64; 4] {
        [self.m[0].to_c64(), self.m[1].to_c64(), self.m[2].to_c64(), self.m[3].to_c64()]
    }

    /// Entries as decimal strings; parts below `2^-(prec/2)` (the entries are
    /// scaled so the largest is 1) are printed as `0`.
    pub fn report(&self, digits: usize) -> MatrixReport {
        let prec = self.precision();
        let noise = real_pow2(-((prec / 2) as isize), prec);
        let dec = |x: &Real| {
            if x.clone().abs() < noise {
                return "0".to_string();
            }
            let d = x.to_decimal().value();
            format!("{}", d.with_precision(digits).value())
        };
        MatrixReport {
            entries: self.m.iter().map(|z| [dec(&z.re), dec(&z.im)]).collect(),
            digits,
        }
    }
}

/// Searches for a map sending the point set `s1` onto `s2` within chordal
/// tolerance `tol`. The lexicographically first triple of `s1` is sent to every
/// ordered triple of `s2` in turn; the first map matching the whole sets wins.
pub fn branch_match(s1: &[ProjPoint], s2: &[ProjPoint], tol: f64) -> Result<Option<MobiusMap>> {
    if s1.len() != s2.len() {
        return domain(format!("branch sets of sizes {} and {}", s1.len(), s2.len()));
    }
    if s1.len() < 4 {
        return domain("branch matching needs at least 4 points");
    }
    let mut sorted: Vec<&ProjPoint> = s1.iter().collect();
    sorted.sort_by(|a, b| a.lex_cmp(b));
    let prec = s1.iter().chain(s2).map(ProjPoint::precision).max().unwrap().max(64);
    let hom2: Vec<_> = s2.iter().map(|p| p.homogeneous(prec)).collect();
    let c64 = |p: &(Complex, Complex)| (p.0.to_c64(), p.1.to_c64());
    let hom2_c64: Vec<_> = hom2.iter().map(c64).collect();
    let coarse = tol + 1e-12;
    let n = s2.len();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for k in (0..n).filter(|&k| k != i && k != j) {
                let Ok(t) = MobiusMap::from_triples([sorted[0], sorted[1], sorted[2]], [&s2[i], &s2[j], &s2[k]])
                else {
                    continue;
                };
                if maps_onto(&t, &sorted, &hom2, &hom2_c64, coarse, tol) {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

/// Greedy matching of `t(src)` against `dst`: a double precision screen, then
/// confirmation at full precision.
fn maps_onto(
    t: &MobiusMap,
    src: &[&ProjPoint],
    dst: &[(Complex, Complex)],
    dst_c64: &[(Complex64, Complex64)],
    coarse: f64,
    tol: f64,
) -> bool {
    let prec = t.precision();
    let mut used = vec![false; dst.len()];
    for p in src {
        let img = t.apply_h(&p.homogeneous(prec));
        let img_c64 = (img.0.to_c64(), img.1.to_c64());
        let hit = (0..dst.len()).find(|&q| {
            !used[q] && chordal_c64(img_c64, dst_c64[q]) < coarse && real_to_f64(&chordal_h(&img, &dst[q])) < tol
        });
        match hit {
            Some(q) => used[q] = true,
            None => return false,
        }
    }
    true
}

/// Whether `t` permutes the given finite points, within chordal tolerance.
pub fn permutes(t: &MobiusMap, points: &[ProjPoint], tol: f64) -> bool {
    let prec = t.precision();
    let hom: Vec<_> = points.iter().map(|p| p.homogeneous(prec)).collect();
    let hom_c64: Vec<_> = hom.iter().map(|p| (p.0.to_c64(), p.1.to_c64())).collect();
    let src: Vec<&ProjPoint> = points.iter().collect();
    maps_onto(t, &src, &hom, &hom_c64, tol + 1e-12, tol)
}
