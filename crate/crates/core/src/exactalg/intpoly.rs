//! Dense integer polynomials, used only as the fraction-free substrate of the
//! subresultant resultant. Coefficient `i` is the coefficient of `x^i`; vectors
//! are kept without trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn deg(v: &[BigInt]) -> usize {
    v.len() - 1
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials by the subresultant pseudo-remainder
/// sequence. Either argument being zero gives zero.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    if a.len() < b.len() {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return sign * b[0].clone().pow(deg(&a) as u32);
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = ca.clone().pow(deg(&b) as u32) * cb.clone().pow(deg(&a) as u32);
    for c in a.iter_mut() {
        *c = &*c / &ca;
    }
    for c in b.iter_mut() {
        *c = &*c / &cb;
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        a = b;
        let divisor = &g * h.clone().pow(delta);
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.clone().pow(delta) / h.pow(delta - 1)
        };
        if b.is_empty() {
            return BigInt::zero();
        }
        if b.len() == 1 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let h = b[0].clone().pow(da) / h.pow(da - 1);
    sign * t * h
}

/// Discriminant of an integer polynomial of degree at least 1:
/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn integer_discriminant(p: &[BigInt]) -> BigInt {
    let d = deg(p);
    let dp: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let res = resultant(p, &dp);
    let disc = res / &p[d];
    if (d * (d - 1) / 2) % 2 == 1 {
        -disc
    } else {
        disc
    }
}
