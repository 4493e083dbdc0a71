//! Simultaneous root finding (Aberth-Ehrlich) with a posteriori inclusion disks.
//!
//! Roots are located in double precision, polished at the working precision,
//! and then enclosed using Weierstrass corrections
//! `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`: every root of `p` lies in
//! the union of the disks `|z - z_i| <= n |W_i|`, and a disk disjoint from all
//! others contains exactly one root.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::float::{real_bigint, real_pow2, real_to_f64, Complex, Real};
use crate::error::{domain, Error, Result};
use crate::exactalg::RationalPoly;

const F64_ITERATIONS: usize = 2000;
const POLISH_ITERATIONS: usize = 60;

/// A root approximation and a radius guaranteed to contain exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedRoot {
    pub z: Complex,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootReport {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl CertifiedRoot {
    pub fn report(&self) -> RootReport {
        let c = self.z.to_c64();
        RootReport { re: c.re, im: c.im, radius: self.radius }
    }
}

fn horner_c64(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn horner(coeffs: &[Real], z: &Complex) -> (Complex, Complex) {
    let prec = z.precision();
    let mut p = Complex::zero(prec);
    let mut dp = Complex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &p * z;
        p.re = &p.re + c;
    }
    (p, dp)
}

fn aberth_f64(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let radius = (0..n)
        .map(|i| (coeffs[i] / lead).abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        * 2.0
        + 1e-3;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..F64_ITERATIONS {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner_c64(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let corr = w / (1.0 - w * s);
            if !corr.is_finite() {
                return Err(Error::Precision("double precision root iteration diverged".into()));
            }
            z[i] -= corr;
            if corr.norm() > 1e-14 * z[i].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            return Ok(z);
        }
    }
    // The double precision stage only seeds the polish; a stalled iterate is
    // usually still close enough.
    Ok(z)
}

/// All roots of a squarefree polynomial, each enclosed in a disk of radius at
/// most `2^-(prec/2)` that contains exactly one root.
///
/// Polishing runs with guard bits and is repeated at doubled working precision
/// while the disks fail to certify, so clustered roots are still separated; the
/// results are rounded back to `prec` bits.
pub fn roots_numeric(p: &RationalPoly, prec: usize) -> Result<Vec<CertifiedRoot>> {
    if p.deg().unwrap_or(0) < 1 {
        return domain("roots_numeric needs degree >= 1");
    }
    if !p.is_squarefree() {
        return domain("roots_numeric needs a squarefree polynomial");
    }
    let (ints, _) = p.primitive_integer();
    let seeds = aberth_f64(&ints.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>())?;
    let mut work = prec + GUARD_BITS;
    let mut z: Vec<Complex> = seeds.into_iter().map(|s| Complex::from_c64(s, work)).collect();
    let mut last = Error::Precision(format!("root polish did not converge at {prec} bits"));
    while work <= prec * MAX_WORK_FACTOR + GUARD_BITS {
        let coeffs: Vec<Real> = ints.iter().map(|c| real_bigint(c, work)).collect();
        z = z.iter().map(|w| w.with_precision(work)).collect();
        polish(&coeffs, &mut z, work);
        match certify(&coeffs, &z, prec) {
            Ok(out) => return Ok(out),
            Err(e) => last = e,
        }
        work *= 2;
    }
    Err(last)
}

const GUARD_BITS: usize = 64;
const MAX_WORK_FACTOR: usize = 8;

/// Aberth-Ehrlich sweeps until the corrections reach the working precision or
/// the iteration budget runs out; certification decides what is good enough.
fn polish(coeffs: &[Real], z: &mut [Complex], work: usize) {
    let n = z.len();
    let stop = real_pow2(-(work as isize) + 12, work);
    for _ in 0..POLISH_ITERATIONS {
        let mut done = true;
        for i in 0..n {
            let (pv, dpv) = horner(coeffs, &z[i]);
            if pv.is_zero() {
                continue;
            }
            let w = pv.div(&dpv);
            let mut s = Complex::zero(work);
            for j in (0..n).filter(|&j| j != i) {
                s = &s + &(&z[i] - &z[j]).recip();
            }
            let denom = &Complex::one(work) - &(&w * &s);
            let corr = w.div(&denom);
            let scale = if z[i].max_abs() > Real::ONE { z[i].max_abs() } else { Real::ONE };
            if corr.max_abs() > &stop * &scale {
                done = false;
            }
            z[i] = &z[i] - &corr;
        }
        if done {
            return;
        }
    }
}

/// Weierstrass inclusion disks around `z`, rounded to `prec` bits.
fn certify(coeffs: &[Real], z: &[Complex], prec: usize) -> Result<Vec<CertifiedRoot>> {
    let n = z.len();
    let work = z[0].precision();
    let lead = &coeffs[n];
    let slack = real_pow2(-(work as isize) + 8, work);
    let rounding = 2f64.powi(-(prec as i32) + 2);
    let rounded: Vec<Complex> = z.iter().map(|w| w.with_precision(prec)).collect();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (pv, _) = horner(coeffs, &z[i]);
        let mut prod = Complex::from_real(lead.clone(), work);
        for j in (0..n).filter(|&j| j != i) {
            prod = &prod * &(&z[i] - &z[j]);
        }
        let w = pv.div(&prod).abs();
        let magnitude = z[i].max_abs() + Real::ONE;
        let r = real_bigint(&(n as i64).into(), work) * w + &slack * &magnitude;
        let r = real_to_f64(&r) + rounding * real_to_f64(&magnitude);
        radii.push(r * (1.0 + 1e-9));
    }
    let cap = 2f64.powi(-(prec as i32) / 2);
    if let Some(r) = radii.iter().find(|&&r| !(r <= cap)) {
        return Err(Error::Precision(format!("inclusion radius {r:e} exceeds {cap:e} at {prec} bits")));
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = real_to_f64(&(&rounded[i] - &rounded[j]).abs());
            if gap <= radii[i] + radii[j] {
                return Err(Error::Precision(format!("inclusion disks {i} and {j} overlap at {prec} bits")));
            }
        }
    }
    let mut out: Vec<CertifiedRoot> =
        rounded.into_iter().zip(radii).map(|(z, radius)| CertifiedRoot { z, radius }).collect();
    out.sort_by(|a, b| a.z.lex_cmp(&b.z));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::float::real_int;
    use crate::parse::parse_poly;

    #[test]
    fn square_root_of_minus_one() {
        let r = roots_numeric(&parse_poly("x^2 + 1").unwrap(), 256).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|c| c.radius < 1e-30));
        let a = r[0].z.to_c64();
        let b = r[1].z.to_c64();
        assert!((a - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((b - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn fifth_roots_of_unity() {
        let r = roots_numeric(&parse_poly("x^5 - 1").unwrap(), 256).unwrap();
        for c in &r {
            let z = c.z.to_c64();
            let k = (z.arg() / (std::f64::consts::TAU / 5.0)).round();
            let expected = Complex64::from_polar(1.0, k * std::f64::consts::TAU / 5.0);
            assert!((z - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn cube_root_of_two_to_full_precision() {
        // binary search for the real cube root at 256 bits
        let prec = 256;
        let two = real_int(2, prec);
        let (mut lo, mut hi) = (real_int(1, prec), two.clone());
        for _ in 0..260 {
            let mid = (&lo + &hi) / real_int(2, prec);
            if &(&mid * &mid) * &mid < two {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = roots_numeric(&parse_poly("x^3 - 2").unwrap(), prec).unwrap();
        let real = r.iter().find(|c| real_to_f64(&c.z.im).abs() < 1e-40).unwrap();
        let err = real_to_f64(&(&real.z.re - &lo));
        assert!(err.abs() < 1e-70, "{err}");
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let c = 2f64.cbrt();
        for expected in [c * omega, c * omega * omega] {
            assert!(r.iter().any(|x| (x.z.to_c64() - expected).norm() < 1e-14));
        }
    }

    #[test]
    fn tight_cluster() {
        let p = parse_poly(
            "29747551607/486*x^8 + 253352241251/2916*x^7 + 104814949765/1944*x^6 + 4126819889/216*x^5 \
             + 913286113/216*x^4 + 21542441/36*x^3 + 423115/8*x^2 + 2669*x + 471/8",
        )
        .unwrap();
        let r = roots_numeric(&p, 256).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|c| c.z.precision() == 256 && c.radius < 1e-38));
    }

    #[test]
    fn rejects_repeated_roots() {
        assert!(roots_numeric(&parse_poly("(x - 1)^2*(x + 1)").unwrap(), 128).is_err());
    }
}
