//! Changes of hyperelliptic model that move a rational Weierstrass point to
//! infinity.
//!
//! For `f = (x - t) h` of even degree `n`, the substitution `x1 = 1/(x - t)`
//! turns `y^2 = f(x)` into `y1^2 = h2(x1)` with `h2(x) = x^(n-1) h(t + 1/x)`,
//! a model of odd degree `n - 1` and the same genus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exactalg::RationalPoly;

/// A squarefree model `y^2 = f(x)` with `deg f >= 5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    f: RationalPoly,
}

impl CurveModel {
    pub fn new(f: RationalPoly) -> Result<Self> {
        match f.deg() {
            Some(n) if n >= 5 => {}
            _ => return domain(format!("curve model needs degree >= 5, got {}", f.degree())),
        }
        if !f.is_squarefree() {
            return domain("curve model has a repeated root");
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> &RationalPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.deg().unwrap()
    }

    pub fn genus(&self) -> usize {
        genus(self.degree())
    }
}

/// Genus of `y^2 = f` for `deg f = n`.
pub fn genus(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

fn check_even_with_root(f: &RationalPoly, roots: &[&BigRational]) -> Result<usize> {
    let n = match f.deg() {
        Some(n) if n >= 6 && n % 2 == 0 => n,
        _ => return domain(format!("need even degree >= 6, got {}", f.degree())),
    };
    if !f.is_squarefree() {
        return domain("f has a repeated root");
    }
    for t in roots {
        if !f.eval(t).is_zero() {
            return domain(format!("{t} is not a root of f"));
        }
    }
    Ok(n)
}

/// `h2 = reverse(shift(f / (x - t), t), n - 1)` for even `n = deg f`.
pub fn odd_to_even_model(f: &RationalPoly, t: &BigRational) -> Result<RationalPoly> {
    let n = check_even_with_root(f, &[t])?;
    let h = f.div_exact(&RationalPoly::linear_root(t))?;
    let h2 = h.shift(t).reverse(n - 1)?;
    if h2.deg() != Some(n - 1) {
        return Err(Error::Internal(format!("h2 = {h2} lost degree")));
    }
    Ok(h2)
}

/// Output of [`two_root_reduction`]: `h2 = (x - root) v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRootReduction {
    pub h2: RationalPoly,
    pub v: RationalPoly,
    #[serde(with = "crate::exactalg::serde_rational")]
    pub root: BigRational,
}

/// For `f = (x - t1)(x - t2) u`, moves `t1` to infinity and splits off the
/// image `1/(t2 - t1)` of the second rational root.
pub fn two_root_reduction(f: &RationalPoly, t1: &BigRational, t2: &BigRational) -> Result<TwoRootReduction> {
    if t1 == t2 {
        return domain("the two rational roots coincide");
    }
    let n = check_even_with_root(f, &[t1, t2])?;
    let h = f.div_exact(&RationalPoly::linear_root(t1))?;
    let h2 = h.shift(t1).reverse(n - 1)?;
    let root = (t2 - t1).recip();
    let (v, r) = h2.div_rem(&RationalPoly::linear_root(&root))?;
    if !r.is_zero() {
        return Err(Error::Internal(format!("h2 = {h2} is not divisible by x - {root}")));
    }
    debug_assert_eq!(v.deg(), Some(n - 2));
    Ok(TwoRootReduction { h2, v, root })
}

/// Checks `(s - t)^(2(g+1)) h2(1/(s - t)) = f(s)` exactly at `s = t+1, t+2, ..`.
/// At least `deg f + 2` points are always used, which makes agreement a proof
/// of the polynomial identity.
pub fn verify_birational_identity(f: &RationalPoly, t: &BigRational, h2: &RationalPoly, samples: usize) -> bool {
    let n = f.deg().unwrap_or(0);
    let e = 2 * (genus(n) + 1);
    let count = samples.max(n + 2);
    (1..=count).all(|k| {
        let d = BigRational::from_integer(BigInt::from(k));
        let s = t + &d;
        num_traits::pow(d.clone(), e) * h2.eval(&d.recip()) == f.eval(&s)
    })
}

/// `1/(a - t)`, the image of a root under the model change.
pub fn image_of_root(alpha: &BigRational, t: &BigRational) -> Option<BigRational> {
    let d = alpha - t;
    (!d.is_zero()).then(|| BigRational::one() / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::parse::parse_poly;

    #[test]
    fn self_reciprocal_example() {
        let f = parse_poly("x*(x^5 + 1)").unwrap();
        let h2 = odd_to_even_model(&f, &q(0, 1)).unwrap();
        assert_eq!(h2, parse_poly("x^5 + 1").unwrap());
        assert!(verify_birational_identity(&f, &q(0, 1), &h2, 8));
        // 2^6 h2(1/2) = 66 = f(2)
        assert_eq!(num_traits::pow(q(2, 1), 6) * h2.eval(&q(1, 2)), f.eval(&q(2, 1)));
        let bumped = &h2 + &RationalPoly::one();
        assert!(!verify_birational_identity(&f, &q(0, 1), &bumped, 8));
    }

    #[test]
    fn shifted_example() {
        let f = parse_poly("(x - 1)*(x^5 + x)").unwrap();
        let h2 = odd_to_even_model(&f, &q(1, 1)).unwrap();
        assert_eq!(h2, parse_poly("2*x^5 + 6*x^4 + 10*x^3 + 10*x^2 + 5*x + 1").unwrap());
        assert!(verify_birational_identity(&f, &q(1, 1), &h2, 8));
    }

    #[test]
    fn preconditions() {
        let f = parse_poly("x*(x^5 + 1)").unwrap();
        assert!(odd_to_even_model(&f, &q(1, 1)).is_err());
        assert!(odd_to_even_model(&parse_poly("x*(x^4 + 1)").unwrap(), &q(0, 1)).is_err());
        assert!(odd_to_even_model(&parse_poly("x^2*(x^4 + 1)").unwrap(), &q(0, 1)).is_err());
    }

    #[test]
    fn two_roots() {
        let f = parse_poly("x*(x - 1)*(x^4 + 2)").unwrap();
        let r = two_root_reduction(&f, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.root, q(1, 1));
        assert_eq!(&r.v * &RationalPoly::linear_root(&r.root), r.h2);
        assert_eq!(r.v.deg(), Some(4));
        // h = (x - 1)(x^4 + 2), h2 = x^5 h(1/x) = (1 - x)(1 + 2 x^4)
        assert_eq!(r.h2, parse_poly("(1 - x)*(1 + 2*x^4)").unwrap());
        assert!(two_root_reduction(&f, &q(1, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn genus_bookkeeping() {
        for n in [6usize, 8, 10] {
            assert_eq!(genus(n), genus(n - 1));
            assert_eq!(genus(n), n / 2 - 1);
        }
        assert!(CurveModel::new(parse_poly("x^4 + 1").unwrap()).is_err());
        assert_eq!(CurveModel::new(parse_poly("x^5 - x - 1").unwrap()).unwrap().genus(), 2);
    }
}
