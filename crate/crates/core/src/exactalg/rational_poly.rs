use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::integer_discriminant;
use crate::error::{domain, Result};

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial with exact rational coefficients.
///
/// Coefficient `i` multiplies `x^i`. The coefficient vector never has trailing
/// zeros, so the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

/// Rational roots with multiplicities, plus what is left after dividing them out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(BigRational, usize)>,
    pub cofactor: RationalPoly,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::from_coeffs(vec![-r.clone(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds from machine integers, lowest degree first.
    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a number, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.deg() else {
            return domain("division by the zero polynomial");
        };
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(r)))
    }

    /// Quotient of a division that is required to be exact.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(crate::Error::Internal(format!("inexact division of {self} by {d}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &BigRational) -> Self {
        let xt = Self::from_coeffs(vec![t.clone(), BigRational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &xt) + &Self::constant(c.clone()))
    }

    /// `x^d p(1/x)`; requires `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Result<Self> {
        if let Some(n) = self.deg() {
            if d < n {
                return domain(format!("reverse: target degree {d} below polynomial degree {n}"));
            }
        }
        let mut v = vec![BigRational::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Ok(Self::from_coeffs(v))
    }

    /// Integer polynomial `P` and positive rational `s` with `self = s * P`,
    /// where `P` is primitive with positive leading coefficient.
    pub fn primitive_integer(&self) -> (Vec<BigInt>, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::one());
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        (ints, BigRational::new(g, l))
    }

    /// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`, computed fraction-free.
    pub fn discriminant(&self) -> Result<BigRational> {
        let d = match self.deg() {
            Some(d) if d >= 1 => d,
            _ => return domain("discriminant needs degree >= 1"),
        };
        let (ints, s) = self.primitive_integer();
        // disc(s P) = s^(2d - 2) disc(P)
        let disc = BigRational::from_integer(integer_discriminant(&ints));
        Ok(disc * num_traits::pow(s, 2 * d - 2))
    }

    pub fn is_squarefree(&self) -> bool {
        matches!(self.discriminant(), Ok(d) if !d.is_zero())
    }

    /// All rational roots with multiplicity and the remaining cofactor, so that
    /// `self = cofactor * prod (x - r)^k`.
    pub fn rational_roots(&self) -> Result<RationalRoots> {
        if self.is_zero() {
            return domain("rational_roots of the zero polynomial");
        }
        let mut rest = self.clone();
        let mut roots = Vec::new();
        let zero = BigRational::zero();
        let mut k = 0;
        while rest.coeffs[0].is_zero() {
            rest = Self::from_coeffs(rest.coeffs[1..].to_vec());
            k += 1;
        }
        if k > 0 {
            roots.push((zero, k));
        }
        if rest.deg().unwrap_or(0) >= 1 {
            let (ints, _) = rest.primitive_integer();
            let lead = ints.last().unwrap().abs();
            let cst = ints[0].abs();
            let bound = cauchy_bound(&ints);
            let mut candidates = BTreeSet::new();
            let dens = divisors(&lead);
            for a in divisors(&cst) {
                for b in &dens {
                    let r = BigRational::new(a.clone(), b.clone());
                    if r <= bound {
                        candidates.insert(r.clone());
                        candidates.insert(-r);
                    }
                }
            }
            for r in candidates {
                let lin = Self::linear_root(&r);
                let mut mult = 0;
                loop {
                    let (qt, rm) = rest.div_rem(&lin)?;
                    if !rm.is_zero() {
                        break;
                    }
                    rest = qt;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
                if rest.deg() == Some(0) {
                    break;
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(RationalRoots { roots, cofactor: rest })
    }
}

impl RationalRoots {
    /// Whether the polynomial splits into linear factors over the rationals.
    pub fn splits_completely(&self) -> bool {
        self.cofactor.deg() == Some(0)
    }

    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, k)| k).sum()
    }
}

/// `1 + max |a_i / a_n|`, an upper bound on the modulus of every root.
fn cauchy_bound(ints: &[BigInt]) -> BigRational {
    let lead = ints.last().unwrap().abs();
    let m = ints[..ints.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(m, lead)
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let current = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(current.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(v)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalPoly {
    /// Prints in the grammar accepted by [`crate::parse::parse_poly`], e.g.
    /// `3/2*x^2 - x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coeff = super::rational_to_string(&mag);
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coeff}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::parse::parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(c)
    }

    #[test]
    fn zero_degree_is_neg_infinity() {
        assert_eq!(RationalPoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(p(&[0, 0, 0]).degree(), Degree::NegInfinity);
        assert_eq!(p(&[1, 0, 3, 0]).degree(), Degree::Finite(2));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[-1, 0, 1]).discriminant().unwrap(), q(4, 1));
        assert_eq!(p(&[0, 0, 1]).discriminant().unwrap(), q(0, 1));
        assert_eq!(p(&[-1, -3, 0, 1]).discriminant().unwrap(), q(81, 1));
    }

    #[test]
    fn discriminant_rejects_constants() {
        assert!(p(&[5]).discriminant().is_err());
        assert!(RationalPoly::zero().discriminant().is_err());
    }

    #[test]
    fn discriminant_scales_with_rational_coefficients() {
        // (1/2) x^2 - 1/2: b^2 - 4ac = 0 + 4 * 1/4 = 1
        let f = RationalPoly::from_coeffs(vec![q(-1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(f.discriminant().unwrap(), q(1, 1));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(&q(1, 1)), p(&[1, 2, 1]));
        let f = p(&[3, -1, 4, 1]);
        assert_eq!(f.shift(&q(0, 1)), f);
        // (x - 1)^3 - (x - 1) = x^3 - 3x^2 + 2x
        assert_eq!(p(&[0, -1, 0, 1]).shift(&q(-1, 1)), p(&[0, 2, -3, 1]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[3, 2, 1]).reverse(2).unwrap(), p(&[1, 2, 3]));
        assert_eq!(p(&[1, 1]).reverse(2).unwrap(), p(&[0, 1, 1]));
        assert!(p(&[1, 1, 1]).reverse(1).is_err());
        let f = p(&[2, 0, 5, 7]);
        assert_eq!(f.reverse(3).unwrap().reverse(3).unwrap(), f);
    }

    #[test]
    fn rational_root_examples() {
        let r = p(&[-1, 0, 1]).rational_roots().unwrap();
        assert_eq!(r.roots, vec![(q(-1, 1), 1), (q(1, 1), 1)]);
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().roots.is_empty());
        let r = p(&[1, -3, 2]).rational_roots().unwrap();
        assert_eq!(r.roots, vec![(q(1, 2), 1), (q(1, 1), 1)]);
        assert_eq!(r.cofactor, p(&[2]));
    }

    #[test]
    fn rational_roots_with_multiplicity_and_zero() {
        // x^2 (x - 3)^2 (x^2 + 1)
        let f = &(&p(&[0, 0, 1]) * &p(&[9, -6, 1])) * &p(&[1, 0, 1]);
        let r = f.rational_roots().unwrap();
        assert_eq!(r.roots, vec![(q(0, 1), 2), (q(3, 1), 2)]);
        assert_eq!(r.cofactor, p(&[1, 0, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (qt, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(qt, p(&[2, 0, 1]));
        assert!(a.div_rem(&RationalPoly::zero()).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = RationalPoly::from_coeffs(vec![q(1, 1), q(-1, 1), q(0, 1), q(3, 2)]);
        assert_eq!(f.to_string(), "3/2*x^3 - x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }

    #[test]
    fn divisors_of_small_numbers() {
        let d: Vec<i64> = divisors(&BigInt::from(12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::from(1)).len(), 1);
    }
}
