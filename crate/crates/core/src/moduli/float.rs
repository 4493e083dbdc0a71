//! Binary floating point reals and complex numbers at a chosen precision, and
//! the exact conversions to and from rationals.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_base::Abs;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use dashu_base::UnsignedAbs;
use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Real = FBig<HalfEven, 2>;

pub(crate) fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let u = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -u
    } else {
        u
    }
}

pub(crate) fn from_ibig(n: &IBig) -> BigInt {
    let bytes = n.unsigned_abs().to_le_bytes();
    let sign = if *n < IBig::ZERO { Sign::Minus } else { Sign::Plus };
    BigInt::from_bytes_le(sign, &bytes)
}

pub fn real_zero(prec: usize) -> Real {
    Real::ZERO.with_precision(prec).value()
}

pub fn real_int(n: i64, prec: usize) -> Real {
    Real::from_parts(IBig::from(n), 0).with_precision(prec).value()
}

pub fn real_bigint(n: &BigInt, prec: usize) -> Real {
    Real::from_parts(to_ibig(n), 0).with_precision(prec).value()
}

pub fn real_rational(r: &BigRational, prec: usize) -> Real {
    let num = real_bigint(r.numer(), prec);
    if r.denom().is_one() {
        num
    } else {
        num / real_bigint(r.denom(), prec)
    }
}

pub fn real_f64(x: f64, prec: usize) -> Real {
    Real::try_from(x).expect("finite f64").with_precision(prec).value()
}

/// `2^k` at the given precision.
pub fn real_pow2(k: isize, prec: usize) -> Real {
    Real::from_parts(IBig::ONE, k).with_precision(prec).value()
}

/// The exact value of a finite float.
pub fn real_to_rational(x: &Real) -> BigRational {
    let sig = from_ibig(x.repr().significand());
    let exp = x.repr().exponent();
    if exp >= 0 {
        BigRational::from_integer(sig << exp as usize)
    } else {
        BigRational::new(sig, BigInt::one() << (-exp) as usize)
    }
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn is_zero(x: &Real) -> bool {
    *x.repr().significand() == IBig::ZERO
}

/// A complex number with both parts at the same working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(real_zero(prec), real_zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::new(real_int(1, prec), real_zero(prec))
    }

    pub fn from_real(re: Real, prec: usize) -> Self {
        Self::new(re, real_zero(prec))
    }

    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        Self::from_real(real_rational(r, prec), prec)
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Self::new(real_f64(z.re, prec), real_f64(z.im, prec))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(real_to_f64(&self.re), real_to_f64(&self.im))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        Self::new(
            self.re.clone().with_precision(prec).value(),
            self.im.clone().with_precision(prec).value(),
        )
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        if self.is_zero() {
            return real_zero(self.precision());
        }
        self.norm_sqr().sqrt()
    }

    /// Cheap magnitude for ordering: `max(|re|, |im|)`.
    pub fn max_abs(&self) -> Real {
        let (a, b) = (self.re.clone().abs(), self.im.clone().abs());
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn div(&self, other: &Self) -> Self {
        let n = other.norm_sqr();
        let re = &self.re * &other.re + &self.im * &other.im;
        let im = &self.im * &other.re - &self.re * &other.im;
        Self::new(re / &n, im / n)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.precision();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let r = self.abs();
        let two = real_int(2, prec);
        // |z| -/+ re can round slightly below zero when z is nearly real
        let half_sqrt = |x: Real| if x > real_zero(prec) { (x / &two).sqrt() } else { real_zero(prec) };
        let a = half_sqrt(&r + &self.re);
        let b = half_sqrt(&r - &self.re);
        if self.im < real_zero(prec) {
            Self::new(a, -b)
        } else {
            Self::new(a, b)
        }
    }

    /// Lexicographic comparison by real then imaginary part.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re
            .partial_cmp(&other.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&other.im).unwrap_or(Ordering::Equal))
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

/// Best rational approximation with denominator at most `denom_bound`, from the
/// continued-fraction convergents of the exact value of `x`, accepted only if
/// it lies within `2^-accept_bits` of `x`.
pub fn reconstruct_rational(x: &Real, denom_bound: &BigInt, accept_bits: usize) -> Option<BigRational> {
    let exact = real_to_rational(x);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << accept_bits);
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (exact.numer().clone(), exact.denom().clone());
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > denom_bound {
            break;
        }
        let candidate = BigRational::new(p2.clone(), q2.clone());
        if (&candidate - &exact).abs() < tol {
            return Some(candidate);
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        (num, den) = (den, r);
    }
    None
}

/// A complex value that is real to within `2^-accept_bits` and close to a
/// rational with bounded denominator.
pub fn reconstruct_complex(z: &Complex, denom_bound: &BigInt, accept_bits: usize) -> Option<BigRational> {
    let tol = real_pow2(-(accept_bits as isize), z.precision());
    if z.im.clone().abs() >= tol {
        return None;
    }
    reconstruct_rational(&z.re, denom_bound, accept_bits)
}
