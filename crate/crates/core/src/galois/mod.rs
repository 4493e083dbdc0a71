//! Certification that the Galois group of an integer polynomial is the full
//! symmetric or alternating group, from Frobenius cycle types.
//!
//! For a prime `p` not dividing `lc(h) * disc(h)`, the degrees of the
//! irreducible factors of `h mod p` form the cycle type of a permutation in
//! `Gal(h)` (Dedekind). Collecting such cycle types for increasing primes gives
//! three independent facts about the group:
//!
//! * transitivity: some reduction is irreducible, or the possible degrees of a
//!   rational factor, intersected over all primes, are only `0` and `m`;
//! * primitivity: `m` is prime, or a prime cycle of length in `(m/2, m)`, or an
//!   `(m-1)`-cycle (which makes the group 2-transitive);
//! * containment of `A_m`: a primitive group with a transposition is `S_m`;
//!   with a 3-cycle or with a `q`-cycle for a prime `q <= m - 3` it contains
//!   `A_m` (Jordan).
//!
//! Single cycles are isolated from a cycle type by raising to a power, see
//! [`power_extract`]. The final split between `S_m` and `A_m` is decided by the
//! squareness of the discriminant.

mod replay;

pub use replay::{replay, ReplayError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exactalg::{exact_isqrt, integer_discriminant, primes_from, ModPoly, RationalPoly};

/// Default number of usable primes examined before giving up.
pub const DEFAULT_BUDGET: usize = 200;

/// Degrees of the irreducible factors of `h mod p`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub p: u64,
    pub parts: Vec<usize>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// A single cycle of `length` obtained as `sigma^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivedCycle {
    pub length: usize,
    pub power: u64,
}

/// Reduction data for one polynomial, reused across primes.
#[derive(Clone, Debug)]
pub struct Reducer {
    primitive: Vec<BigInt>,
    bad: BigInt,
    poly: RationalPoly,
}

impl Reducer {
    pub fn new(h: &RationalPoly) -> Result<Self> {
        match h.deg() {
            Some(d) if d >= 1 => {}
            _ => return domain("cycle types need a polynomial of degree >= 1"),
        }
        let (primitive, _) = h.primitive_integer();
        let disc = integer_discriminant(&primitive);
        let bad = disc * primitive.last().unwrap();
        let poly = RationalPoly::from_coeffs(
            primitive.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        );
        Ok(Self { primitive, bad, poly })
    }

    pub fn degree(&self) -> usize {
        self.primitive.len() - 1
    }

    /// Whether `p` divides `lc * disc` of the primitive integer model.
    pub fn is_bad(&self, p: u64) -> bool {
        (&self.bad % BigInt::from(p)).is_zero()
    }

    /// `h mod p` for the primitive integer model (defined for every prime).
    pub fn reduce(&self, p: u64) -> Result<ModPoly> {
        ModPoly::reduce(&self.poly, p)
    }

    /// Cycle type at `p`, or `None` when `p` is a bad prime.
    pub fn cycle_type(&self, p: u64) -> Result<Option<CycleType>> {
        let red = self.reduce(p)?;
        if self.is_bad(p) {
            return Ok(None);
        }
        let mut parts = Vec::new();
        for (d, g) in red.distinct_degree() {
            let count = g.deg().unwrap() / d;
            parts.extend(std::iter::repeat_n(d, count));
        }
        parts.sort_unstable();
        Ok(Some(CycleType { p, parts }))
    }
}

/// Frobenius cycle type of `h` at `p`; `Ok(None)` is the "Rejected" outcome for
/// primes dividing `lc(h) * disc(h)`.
pub fn factor_cycle_type(h: &RationalPoly, p: u64) -> Result<Option<CycleType>> {
    Reducer::new(h)?.cycle_type(p)
}

/// All single cycles obtainable as a power of a permutation with cycle type
/// `parts`: a part `c > 1` survives alone in `sigma^L` with `L` the lcm of the
/// other parts exactly when `gcd(c, L) = 1`.
pub fn power_extract(parts: &[usize]) -> Vec<DerivedCycle> {
    let mut out: Vec<DerivedCycle> = Vec::new();
    for (i, &c) in parts.iter().enumerate() {
        if c <= 1 || out.iter().any(|d| d.length == c) {
            continue;
        }
        let others = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1u64, |acc, (_, &x)| acc.lcm(&(x as u64)));
        if others.gcd(&(c as u64)) == 1 {
            out.push(DerivedCycle { length: c, power: others });
        }
    }
    out
}

/// Whether a nonzero rational is the square of a rational.
pub fn is_square(q: &BigRational) -> Result<bool> {
    if q.is_zero() {
        return domain("is_square of zero");
    }
    if q.is_negative() {
        return Ok(false);
    }
    Ok(exact_isqrt(q.numer()).is_some() && exact_isqrt(q.denom()).is_some())
}

pub(crate) fn is_small_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransitivityWitness {
    /// `h mod p` is irreducible.
    IrreducibleModP { p: u64 },
    /// Sub-multiset sums of the cited cycle types intersect to `{0, m}`.
    DegreeSieve { primes: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimitivityWitness {
    /// Prime-length cycle with `m/2 < length < m`.
    LongPrimeCycle { p: u64, cycle: usize, power: u64 },
    /// An `(m-1)`-cycle fixing one letter: the group is 2-transitive.
    TwoTransitive { p: u64, cycle: usize, power: u64 },
    /// A transitive group of prime degree is primitive.
    PrimeDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BignessWitness {
    Transposition { p: u64, cycle: usize, power: u64 },
    ThreeCycle { p: u64, cycle: usize, power: u64 },
    /// Prime cycle of length at most `m - 3`.
    JordanPrimeCycle { p: u64, cycle: usize, power: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub transitivity: TransitivityWitness,
    pub primitivity: PrimitivityWitness,
    pub bigness: BignessWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GroupConclusion {
    Symmetric,
    Alternating,
}

/// Standalone proof that `Gal(h)` is `S_m` or `A_m`; checked by [`replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub degree: usize,
    pub primes: Vec<CycleType>,
    pub witnesses: Witnesses,
    pub disc_square: bool,
    pub conclusion: GroupConclusion,
    pub seed: u64,
}

impl GaloisCertificate {
    pub fn cycle_type_at(&self, p: u64) -> Option<&CycleType> {
        self.primes.iter().find(|c| c.p == p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Evidence gathered when no certificate could be assembled within budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconclusive {
    pub degree: usize,
    pub primes: Vec<CycleType>,
    pub transitive: bool,
    pub primitive: bool,
    pub contains_alternating: bool,
    pub disc_square: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GaloisOutcome {
    Certified(GaloisCertificate),
    Inconclusive(Inconclusive),
}

impl GaloisOutcome {
    pub fn certificate(&self) -> Option<&GaloisCertificate> {
        match self {
            GaloisOutcome::Certified(c) => Some(c),
            GaloisOutcome::Inconclusive(_) => None,
        }
    }
}

/// Bit `k` set iff some sub-multiset of `parts` sums to `k`.
pub(crate) fn subset_sums(parts: &[usize]) -> u128 {
    parts.iter().fold(1u128, |acc, &c| acc | (acc << c))
}

struct Legs {
    transitivity: Option<TransitivityWitness>,
    primitivity: Option<PrimitivityWitness>,
    bigness: Option<BignessWitness>,
}

fn assemble(evidence: &[CycleType], m: usize) -> Legs {
    let transitivity = evidence
        .iter()
        .find(|c| c.parts == [m])
        .map(|c| TransitivityWitness::IrreducibleModP { p: c.p })
        .or_else(|| {
            let full = (1u128 << m) | 1;
            let mut acc = u128::MAX >> (127 - m);
            let mut primes = Vec::new();
            for c in evidence {
                let next = acc & subset_sums(&c.parts);
                if next != acc {
                    acc = next;
                    primes.push(c.p);
                    if acc == full {
                        return Some(TransitivityWitness::DegreeSieve { primes });
                    }
                }
            }
            None
        });

    let primitivity = if is_small_prime(m) {
        Some(PrimitivityWitness::PrimeDegree)
    } else {
        evidence.iter().find_map(|c| {
            power_extract(&c.parts).into_iter().find_map(|d| {
                if is_small_prime(d.length) && 2 * d.length > m && d.length < m {
                    Some(PrimitivityWitness::LongPrimeCycle { p: c.p, cycle: d.length, power: d.power })
                } else if d.length + 1 == m {
                    Some(PrimitivityWitness::TwoTransitive { p: c.p, cycle: d.length, power: d.power })
                } else {
                    None
                }
            })
        })
    };

    let bigness = evidence.iter().find_map(|c| {
        let derived = power_extract(&c.parts);
        let pick = |len: usize| derived.iter().find(|d| d.length == len).copied();
        if let Some(d) = pick(2) {
            return Some(BignessWitness::Transposition { p: c.p, cycle: 2, power: d.power });
        }
        if let Some(d) = pick(3) {
            return Some(BignessWitness::ThreeCycle { p: c.p, cycle: 3, power: d.power });
        }
        derived
            .iter()
            .find(|d| is_small_prime(d.length) && d.length + 3 <= m)
            .map(|d| BignessWitness::JordanPrimeCycle { p: c.p, cycle: d.length, power: d.power })
    });

    Legs { transitivity, primitivity, bigness }
}

/// Samples increasing primes, skipping bad ones, until the three legs of the
/// certificate are in hand or `budget` usable primes have been examined.
pub fn certify_sym_or_alt(h: &RationalPoly, budget: usize, seed: u64) -> Result<GaloisOutcome> {
    let m = match h.deg() {
        Some(m) if m >= 4 => m,
        _ => return domain("Galois certification needs degree >= 4"),
    };
    if m > 127 {
        return domain("Galois certification supports degree <= 127");
    }
    let disc = h.discriminant()?;
    if disc.is_zero() {
        return domain("polynomial has a multiple root");
    }
    let disc_square = is_square(&disc)?;
    let reducer = Reducer::new(h)?;
    let mut evidence = Vec::new();
    let mut legs = assemble(&evidence, m);
    for p in primes_from(2) {
        if evidence.len() >= budget {
            break;
        }
        let Some(ct) = reducer.cycle_type(p)? else { continue };
        evidence.push(ct);
        legs = assemble(&evidence, m);
        if let Legs { transitivity: Some(t), primitivity: Some(pr), bigness: Some(b) } = legs {
            let conclusion = match (&b, disc_square) {
                (BignessWitness::Transposition { .. }, true) => {
                    return Err(crate::Error::Internal(
                        "odd permutation found but discriminant is a square".into(),
                    ))
                }
                (BignessWitness::Transposition { .. }, false) | (_, false) => GroupConclusion::Symmetric,
                (_, true) => GroupConclusion::Alternating,
            };
            return Ok(GaloisOutcome::Certified(GaloisCertificate {
                degree: m,
                primes: evidence,
                witnesses: Witnesses { transitivity: t, primitivity: pr, bigness: b },
                disc_square,
                conclusion,
                seed,
            }));
        }
    }
    // each leg only means something once the previous one holds
    let transitive = legs.transitivity.is_some();
    let primitive = transitive && legs.primitivity.is_some();
    Ok(GaloisOutcome::Inconclusive(Inconclusive {
        degree: m,
        primes: evidence,
        transitive,
        primitive,
        contains_alternating: primitive && legs.bigness.is_some(),
        disc_square,
        seed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(c)
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(factor_cycle_type(&p(&[1, 0, 1]), 3).unwrap().unwrap().parts, vec![2]);
        assert_eq!(factor_cycle_type(&p(&[0, -1, 0, 1]), 5).unwrap().unwrap().parts, vec![1, 1, 1]);
        assert_eq!(
            factor_cycle_type(&p(&[-1, -1, 0, 0, 0, 1]), 2).unwrap().unwrap().parts,
            vec![2, 3]
        );
    }

    #[test]
    fn bad_primes_are_rejected() {
        // disc(x^2 + 1) = -4
        assert_eq!(factor_cycle_type(&p(&[1, 0, 1]), 2).unwrap(), None);
        // leading coefficient 3
        assert_eq!(factor_cycle_type(&p(&[1, 1, 3]), 3).unwrap(), None);
        assert!(factor_cycle_type(&p(&[1, 0, 1]), 4).is_err());
    }

    #[test]
    fn power_extract_examples() {
        assert_eq!(power_extract(&[2, 3]), vec![
            DerivedCycle { length: 2, power: 3 },
            DerivedCycle { length: 3, power: 2 }
        ]);
        let m = 9;
        assert!(power_extract(&[1, m - 1]).contains(&DerivedCycle { length: m - 1, power: 1 }));
        let d = power_extract(&[3, 4, 5]);
        assert!(d.iter().all(|c| c.length != 2));
        assert!(d.contains(&DerivedCycle { length: 3, power: 20 }));
        assert!(power_extract(&[2, 2, 3]).iter().all(|c| c.length != 2));
    }

    #[test]
    fn is_square_examples() {
        assert!(is_square(&q(81, 1)).unwrap());
        assert!(!is_square(&q(-3, 1)).unwrap());
        assert!(is_square(&q(49, 4)).unwrap());
        assert!(!is_square(&q(2, 1)).unwrap());
        assert!(is_square(&q(0, 1)).is_err());
    }

    #[test]
    fn quintic_is_symmetric() {
        let out = certify_sym_or_alt(&p(&[-1, -1, 0, 0, 0, 1]), DEFAULT_BUDGET, 0).unwrap();
        let cert = out.certificate().expect("certified");
        assert_eq!(cert.conclusion, GroupConclusion::Symmetric);
        assert_eq!(cert.witnesses.primitivity, PrimitivityWitness::PrimeDegree);
        assert!(matches!(cert.witnesses.bigness, BignessWitness::Transposition { p: 2, .. }));
        replay(&p(&[-1, -1, 0, 0, 0, 1]), cert).unwrap();
    }

    #[test]
    fn reducible_input_is_not_transitive() {
        // (x^2 + 1)(x^3 + 2)
        let h = &p(&[1, 0, 1]) * &p(&[2, 0, 0, 1]);
        match certify_sym_or_alt(&h, DEFAULT_BUDGET, 0).unwrap() {
            GaloisOutcome::Inconclusive(inc) => {
                assert!(!inc.transitive);
                assert_eq!(inc.primes.len(), DEFAULT_BUDGET);
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn alternating_example() {
        // x^4 + 8x + 12 has Galois group A_4
        let h = p(&[12, 8, 0, 0, 1]);
        let cert = certify_sym_or_alt(&h, DEFAULT_BUDGET, 3).unwrap();
        let cert = cert.certificate().expect("certified");
        assert_eq!(cert.conclusion, GroupConclusion::Alternating);
        assert!(cert.disc_square);
        replay(&h, cert).unwrap();
    }

    #[test]
    fn preconditions() {
        assert!(certify_sym_or_alt(&p(&[1, 0, 1]), 10, 0).is_err());
        let repeated = &p(&[-1, 1]) * &p(&[-1, 1, 0, 0, 1]);
        let repeated = &repeated * &p(&[-1, 1]);
        assert!(certify_sym_or_alt(&repeated, 10, 0).is_err());
    }
}
