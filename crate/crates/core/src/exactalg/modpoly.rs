use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::RationalPoly;
use crate::error::{domain, Result};

/// Polynomial over the prime field `F_p`, coefficients in `[0, p)`, lowest
/// degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with a base set
/// that is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Increasing primes starting at the first prime `>= start`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime(n))
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Self::from_raw(p, coeffs.into_iter().map(|c| c % p).collect()))
    }

    fn from_raw(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    /// Reduction of a rational polynomial; fails when a denominator vanishes mod p.
    pub fn reduce(f: &RationalPoly, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        let pb = BigInt::from(p);
        let mut v = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let num = c.numer().mod_floor(&pb).to_u64().unwrap();
            let den = c.denom().mod_floor(&pb).to_u64().unwrap();
            if den == 0 {
                return domain(format!("denominator divisible by {p}"));
            }
            v.push(mulmod(num, invmod(den, p), p));
        }
        Ok(Self::from_raw(p, v))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn lift(&self, coeffs: Vec<u64>) -> Self {
        Self::from_raw(self.p, coeffs)
    }

    pub fn x(p: u64) -> Self {
        Self::from_raw(p, vec![0, 1])
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = invmod(lc, self.p);
                self.lift(self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let g = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.lift((0..n).map(|i| (g(&self.coeffs, i) + g(&o.coeffs, i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let g = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        self.lift(
            (0..n)
                .map(|i| (g(&self.coeffs, i) + self.p - g(&o.coeffs, i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.lift(Vec::new());
        }
        let p = self.p;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, p)) % p;
            }
        }
        self.lift(v)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.deg().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (self.lift(Vec::new()), self.clone());
        }
        let inv = invmod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        let mut quot = vec![0u64; r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mulmod(r[k + dd], inv, p);
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mulmod(c, dc, p)) % p;
                }
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (self.lift(quot), self.lift(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = self.lift(vec![1]).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// `x^(p^k) mod m`.
    pub fn frobenius_power(m: &Self, k: usize) -> Self {
        let p = BigUint::from(m.p);
        let mut h = Self::x(m.p).rem(m);
        for _ in 0..k {
            h = h.pow_mod(&p, m);
        }
        h
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, g_d)` where `g_d` is the product of all monic irreducible factors of
    /// degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let pb = BigUint::from(self.p);
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.deg().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pb, &f);
            let g = h.sub(&x).gcd(&f);
            if g.deg().unwrap_or(0) > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if let Some(df) = f.deg() {
            if df > 0 {
                out.push((df, f));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles
    /// all of degree `d`. Uses the trace map in characteristic two.
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.deg().unwrap_or(0);
        if n <= d {
            return vec![self.monic()];
        }
        let p = self.p;
        let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = self.lift((0..n).map(|_| rng.random_range(0..p)).collect());
            if a.deg().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                a.pow_mod(&exp, self).sub(&self.lift(vec![1]))
            };
            let g = b.gcd(self);
            if let Some(dg) = g.deg() {
                if dg > 0 && dg < n {
                    let other = self.div_rem(&g).0;
                    let mut v = g.equal_degree(d, rng);
                    v.extend(other.equal_degree(d, rng));
                    return v;
                }
            }
        }
    }

    /// Complete factorization of a squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<Self> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree() {
            out.extend(g.equal_degree(d, rng));
        }
        out
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.deg() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::x(self.p).rem(&f);
        if Self::frobenius_power(&f, n) != x {
            return false;
        }
        let mut m = n;
        let mut q = 2;
        let mut prime_divisors = Vec::new();
        while m > 1 {
            if m % q == 0 {
                prime_divisors.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        prime_divisors.into_iter().all(|q| {
            let h = Self::frobenius_power(&f, n / q);
            h.sub(&x).gcd(&f).deg() == Some(0)
        })
    }
}
