//! Independent checker for [`GaloisCertificate`]s.
//!
//! Nothing here reuses the distinct-degree cycle-type path or the gcd rule of
//! `power_extract`: cycle types are recomputed from a complete Cantor-Zassenhaus
//! factorization whose factors are multiplied back and tested for
//! irreducibility, and derived cycles are reproduced by composing an explicit
//! permutation with itself.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{
    is_small_prime, BignessWitness, GaloisCertificate, GroupConclusion, PrimitivityWitness,
    TransitivityWitness,
};
use crate::exactalg::{is_prime, ModPoly, RationalPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("certificate degree {cert} does not match polynomial degree {poly}")]
    Degree { cert: usize, poly: usize },
    #[error("prime {0} is cited but not listed")]
    MissingPrime(u64),
    #[error("prime {0} is bad for this polynomial or not prime")]
    BadPrime(u64),
    #[error("cycle type at {p} is {found:?}, certificate says {claimed:?}")]
    CycleType { p: u64, claimed: Vec<usize>, found: Vec<usize> },
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("discriminant squareness mismatch")]
    DiscSquare,
    #[error("conclusion does not follow from the witnesses")]
    Conclusion,
}

/// Factors `h mod p` completely and returns the sorted factor degrees, after
/// checking the factors multiply back and are each irreducible.
fn recount(h: &RationalPoly, p: u64, seed: u64) -> Result<Vec<usize>, ReplayError> {
    if !is_prime(p) {
        return Err(ReplayError::BadPrime(p));
    }
    let (ints, _) = h.primitive_integer();
    let prim = RationalPoly::from_coeffs(
        ints.iter().map(|c| num_rational::BigRational::from_integer(c.clone())).collect(),
    );
    let red = ModPoly::reduce(&prim, p).map_err(|_| ReplayError::BadPrime(p))?;
    if red.deg() != prim.deg() {
        return Err(ReplayError::BadPrime(p));
    }
    let dred = {
        // formal derivative, to reject non-squarefree reductions
        let c: Vec<u64> = red
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| ((i as u128 * a as u128) % p as u128) as u64)
            .collect();
        ModPoly::new(p, c).unwrap()
    };
    if dred.is_zero() || red.gcd(&dred).deg() != Some(0) {
        return Err(ReplayError::BadPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17));
    let factors = red.factor_squarefree(&mut rng);
    let product = factors.iter().fold(ModPoly::new(p, vec![1]).unwrap(), |a, b| a.mul(b));
    if product != red.monic() || !factors.iter().all(ModPoly::is_irreducible) {
        return Err(ReplayError::Witness(format!("factorization mod {p} failed to verify")));
    }
    let mut degs: Vec<usize> = factors.iter().map(|f| f.deg().unwrap()).collect();
    degs.sort_unstable();
    Ok(degs)
}

/// Cycle lengths of `sigma^power` where `sigma` is the explicit permutation
/// with cycles of the given lengths on consecutive letters.
fn powered_cycle_lengths(parts: &[usize], power: u64) -> Vec<usize> {
    let n: usize = parts.iter().sum();
    let mut sigma = vec![0usize; n];
    let mut start = 0;
    for &c in parts {
        for i in 0..c {
            sigma[start + i] = start + (i + 1) % c;
        }
        start += c;
    }
    let mut result: Vec<usize> = (0..n).collect();
    let mut base = sigma;
    let mut e = power;
    while e > 0 {
        if e & 1 == 1 {
            result = result.iter().map(|&i| base[i]).collect();
        }
        base = base.iter().map(|&i| base[i]).collect();
        e >>= 1;
    }
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = result[i];
            len += 1;
        }
        if len > 1 {
            lengths.push(len);
        }
    }
    lengths
}

/// Whether some sub-multiset of `parts` sums to `target`, by enumeration.
fn has_subsum(parts: &[usize], target: usize) -> bool {
    fn go(parts: &[usize], target: usize) -> bool {
        match parts.split_first() {
            None => target == 0,
            Some((&c, rest)) => go(rest, target) || (c <= target && go(rest, target - c)),
        }
    }
    go(parts, target)
}

/// Re-derives every claim in `cert` from `h`.
pub fn replay(h: &RationalPoly, cert: &GaloisCertificate) -> Result<(), ReplayError> {
    let m = h.deg().unwrap_or(0);
    if cert.degree != m {
        return Err(ReplayError::Degree { cert: cert.degree, poly: m });
    }
    for ct in &cert.primes {
        let found = recount(h, ct.p, cert.seed)?;
        if found != ct.parts {
            return Err(ReplayError::CycleType { p: ct.p, claimed: ct.parts.clone(), found });
        }
    }
    let parts_at = |p: u64| {
        cert.cycle_type_at(p)
            .map(|c| c.parts.clone())
            .ok_or(ReplayError::MissingPrime(p))
    };
    let single_cycle = |p: u64, cycle: usize, power: u64| -> Result<(), ReplayError> {
        let lengths = powered_cycle_lengths(&parts_at(p)?, power);
        if lengths == [cycle] {
            Ok(())
        } else {
            Err(ReplayError::Witness(format!(
                "power {power} of cycle type at {p} has cycles {lengths:?}, not a single {cycle}-cycle"
            )))
        }
    };

    match &cert.witnesses.transitivity {
        TransitivityWitness::IrreducibleModP { p } => {
            if parts_at(*p)? != [m] {
                return Err(ReplayError::Witness(format!("h is not irreducible mod {p}")));
            }
        }
        TransitivityWitness::DegreeSieve { primes } => {
            let tables = primes.iter().map(|&p| parts_at(p)).collect::<Result<Vec<_>, _>>()?;
            for k in 1..m {
                if tables.iter().all(|parts| has_subsum(parts, k)) {
                    return Err(ReplayError::Witness(format!("degree {k} survives the sieve")));
                }
            }
        }
    }

    match &cert.witnesses.primitivity {
        PrimitivityWitness::PrimeDegree => {
            if !is_small_prime(m) {
                return Err(ReplayError::Witness(format!("degree {m} is not prime")));
            }
        }
        PrimitivityWitness::LongPrimeCycle { p, cycle, power } => {
            if !(is_small_prime(*cycle) && 2 * cycle > m && *cycle < m) {
                return Err(ReplayError::Witness(format!("{cycle} is not a prime in (m/2, m)")));
            }
            single_cycle(*p, *cycle, *power)?;
        }
        PrimitivityWitness::TwoTransitive { p, cycle, power } => {
            if cycle + 1 != m {
                return Err(ReplayError::Witness(format!("{cycle} is not m - 1")));
            }
            single_cycle(*p, *cycle, *power)?;
        }
    }

    let transposition = match &cert.witnesses.bigness {
        BignessWitness::Transposition { p, cycle, power } => {
            if *cycle != 2 {
                return Err(ReplayError::Witness("transposition witness with cycle != 2".into()));
            }
            single_cycle(*p, 2, *power)?;
            true
        }
        BignessWitness::ThreeCycle { p, cycle, power } => {
            if *cycle != 3 {
                return Err(ReplayError::Witness("3-cycle witness with cycle != 3".into()));
            }
            single_cycle(*p, 3, *power)?;
            false
        }
        BignessWitness::JordanPrimeCycle { p, cycle, power } => {
            if !(is_small_prime(*cycle) && cycle + 3 <= m) {
                return Err(ReplayError::Witness(format!("{cycle} is not a prime <= m - 3")));
            }
            single_cycle(*p, *cycle, *power)?;
            false
        }
    };

    let disc = h.discriminant().map_err(|_| ReplayError::DiscSquare)?;
    let perfect = |n: &num_bigint::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    let square = disc.numer().sign() == num_bigint::Sign::Plus
        && perfect(disc.numer())
        && perfect(disc.denom());
    if square != cert.disc_square {
        return Err(ReplayError::DiscSquare);
    }
    let expected = if transposition {
        if square {
            return Err(ReplayError::Conclusion);
        }
        GroupConclusion::Symmetric
    } else if square {
        GroupConclusion::Alternating
    } else {
        GroupConclusion::Symmetric
    };
    if expected != cert.conclusion {
        return Err(ReplayError::Conclusion);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_powers() {
        assert_eq!(powered_cycle_lengths(&[2, 3], 3), vec![2]);
        assert_eq!(powered_cycle_lengths(&[3, 4, 5], 20), vec![3]);
        assert_eq!(powered_cycle_lengths(&[4, 3], 3), vec![4]);
        assert_eq!(powered_cycle_lengths(&[4, 3], 6), vec![2, 2]);
    }

    #[test]
    fn subsums() {
        assert!(has_subsum(&[2, 3], 5));
        assert!(!has_subsum(&[2, 3], 4));
        assert!(has_subsum(&[1, 1], 0));
    }
}
