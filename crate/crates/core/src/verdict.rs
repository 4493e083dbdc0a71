//! Rule engine combining the shape of `f`, Galois certificates and degree
//! thresholds into conclusions about the endomorphism ring of `J(C_f)`.
//!
//! Rules, in priority order:
//!
//! | id | shape                         | certified group      | degree          | conclusion          |
//! |----|-------------------------------|----------------------|-----------------|---------------------|
//! | R0 | `f` irreducible               | `Gal(f)`             | `n >= 5`        | `END_Z`             |
//! | R1 | `(x - t) h`                   | `Gal(h)`             | `n >= 6` even   | `END_Z`             |
//! | R2 | `(x - t) h`                   | `Gal(h)`             | `n >= 11` odd   | `END_Z`             |
//! | R3 | `(x - t) h`                   | `Gal(h)`             | `n >= 9` odd    | `END_Q_OR_QUADRATIC`|
//! | R4 | `(x - t1)(x - t2) u`          | `Gal(u)`             | `n >= 10` even  | quadratic, `END_Z` from 12 |
//!
//! The ground field is always the rationals, so characteristic side
//! conditions hold trivially.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::curvemap::{genus, two_root_reduction, TwoRootReduction};
use crate::error::{domain, Result};
use crate::exactalg::RationalPoly;
use crate::galois::{certify_sym_or_alt, GaloisCertificate, GaloisOutcome, Inconclusive};
use crate::moduli::{exceptional_set, ExceptionalSet};
use crate::SCHEMA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    EndZ,
    EndQOrQuadratic,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Corollary {
    AbsolutelySimple,
    GspOpenImage,
    TateDivisorGenerated,
    HodgeDivisorGenerated,
    MumfordTate,
}

/// A corollary together with the rule that licenses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryClaim {
    pub corollary: Corollary,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedRule {
    pub id: String,
    pub theorem: String,
    pub quote: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// How `f` factors over the rationals: `f = prod (x - r) * cofactor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveShape {
    pub n: usize,
    pub g: usize,
    pub parity: Parity,
    #[serde(with = "crate::exactalg::serde_rational::vec")]
    pub rational_roots: Vec<BigRational>,
    pub cofactor: RationalPoly,
}

impl CurveShape {
    pub fn of(f: &RationalPoly) -> Result<Self> {
        let n = match f.deg() {
            Some(n) if n >= 5 => n,
            _ => return domain(format!("degree of {f} is below 5")),
        };
        if !f.is_squarefree() {
            return domain(format!("{f} has a multiple root"));
        }
        let rr = f.rational_roots()?;
        let rational_roots = rr.roots.into_iter().map(|(r, _)| r).collect();
        let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(Self { n, g: genus(n), parity, rational_roots, cofactor: rr.cofactor })
    }

    /// Rebuilds `f` from the roots and the cofactor.
    pub fn expand(&self) -> RationalPoly {
        self.rational_roots
            .iter()
            .fold(self.cofactor.clone(), |acc, r| &acc * &RationalPoly::linear_root(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub shape: CurveShape,
    /// The polynomial whose Galois group was examined, if any.
    pub examined: Option<RationalPoly>,
    pub certificate: Option<GaloisCertificate>,
    pub partial: Option<Inconclusive>,
    /// Model `y^2 = h2(x)` used for the two-root rule.
    pub model: Option<TwoRootReduction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: String,
    pub conclusion: Conclusion,
    pub corollaries: Vec<CorollaryClaim>,
    pub applied_rules: Vec<AppliedRule>,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn corollary_set(&self) -> Vec<Corollary> {
        self.corollaries.iter().map(|c| c.corollary).collect()
    }

    pub fn rule_ids(&self) -> Vec<&str> {
        self.applied_rules.iter().map(|r| r.id.as_str()).collect()
    }

    pub fn is_definitive(&self) -> bool {
        self.conclusion != Conclusion::Inconclusive
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

fn rule(id: &str) -> AppliedRule {
    let (theorem, quote) = match id {
        "R0" => (
            "symmetric or alternating Galois group of f",
            "n >= 5 and Gal(f) is S_n or A_n; then End(J) = Z and J is absolutely simple",
        ),
        "R1" => (
            "even degree with one rational root",
            "n >= 6 even, f = (x - t) h with Gal(h) S_{n-1} or A_{n-1}; then End(J) = Z and J is absolutely simple",
        ),
        "R2" => (
            "odd degree at least 11 with one rational root",
            "n >= 11 odd, f = (x - t) h with Gal(h) S_{n-1} or A_{n-1}; then End(J) = Z",
        ),
        "R3" => (
            "odd degree at least 9 with one rational root",
            "n >= 9 odd, f = (x - t) h with Gal(h) S_{n-1} or A_{n-1}; in characteristic zero End^0(J) is Q or a quadratic field, so J is absolutely simple",
        ),
        "R4" => (
            "even degree with two rational roots",
            "n >= 10 even, f = (x - t1)(x - t2) u with Gal(u) S_{n-2} or A_{n-2}; End^0(J) is Q or a quadratic field and J is absolutely simple; End(J) = Z once n >= 12",
        ),
        "C1" => (
            "open image of the l-adic representation",
            "n >= 10, f = (x - t) h with Gal(h) S_{n-1} or A_{n-1}, K finitely generated over Q; the image of Galois is open in Gp(V_l, e)",
        ),
        "C2" => (
            "Tate classes on self-products",
            "same hypotheses as C1; every l-adic Tate class on J^m is a combination of products of divisor classes",
        ),
        "C3" => (
            "Hodge classes and the Mumford-Tate group",
            "same hypotheses as C1 over a subfield of C; Hodge classes on J^m are generated by divisor classes and the Mumford-Tate conjecture holds",
        ),
        _ => unreachable!("unknown rule {id}"),
    };
    AppliedRule { id: id.to_string(), theorem: theorem.to_string(), quote: quote.to_string() }
}

/// Rules for the transcendental corollaries. They need the shape `(x - t) h`
/// with certified `Gal(h)` and `n >= 10` for the model in hand.
const HIGHER_RULES: [(&str, &[Corollary]); 3] = [
    ("C1", &[Corollary::GspOpenImage]),
    ("C2", &[Corollary::TateDivisorGenerated]),
    ("C3", &[Corollary::HodgeDivisorGenerated, Corollary::MumfordTate]),
];

/// Degree threshold shared by the open image, Tate and Hodge statements.
pub const HIGHER_COROLLARY_MIN_DEGREE: usize = 10;

struct Decision {
    conclusion: Conclusion,
    rule: Option<&'static str>,
    /// Degree of a model `y^2 = (x - t) h(x)` with certified `Gal(h)`.
    one_root_model_degree: Option<usize>,
}

fn decide_one_root(n: usize) -> Decision {
    let (conclusion, rule) = if n % 2 == 0 {
        (Conclusion::EndZ, Some("R1"))
    } else if n >= 11 {
        (Conclusion::EndZ, Some("R2"))
    } else if n == 9 {
        (Conclusion::EndQOrQuadratic, Some("R3"))
    } else {
        (Conclusion::Inconclusive, None)
    };
    Decision { conclusion, rule, one_root_model_degree: rule.map(|_| n) }
}

fn decide_two_roots(n: usize) -> Decision {
    if n % 2 == 1 || n < 10 {
        return Decision { conclusion: Conclusion::Inconclusive, rule: None, one_root_model_degree: None };
    }
    let conclusion = if n >= 12 { Conclusion::EndZ } else { Conclusion::EndQOrQuadratic };
    // C_f is isomorphic over Q to y^2 = h2 with h2 = (x - c) v of degree n - 1
    Decision { conclusion, rule: Some("R4"), one_root_model_degree: Some(n - 1) }
}

fn corollaries(decision: &Decision) -> (Vec<CorollaryClaim>, Vec<&'static str>) {
    let mut claims = Vec::new();
    let mut rules = Vec::new();
    let Some(main) = decision.rule else {
        return (claims, rules);
    };
    claims.push(CorollaryClaim { corollary: Corollary::AbsolutelySimple, rule: main.to_string() });
    if decision.one_root_model_degree.is_some_and(|d| d >= HIGHER_COROLLARY_MIN_DEGREE) {
        for (id, cors) in HIGHER_RULES {
            rules.push(id);
            claims.extend(cors.iter().map(|&c| CorollaryClaim { corollary: c, rule: id.to_string() }));
        }
    }
    (claims, rules)
}

/// Applies the rule table to `f`, certifying whichever Galois group the shape
/// of `f` calls for with at most `budget` primes.
pub fn classify(f: &RationalPoly, budget: usize, seed: u64) -> Result<Verdict> {
    let shape = CurveShape::of(f)?;
    let n = shape.n;
    let mut evidence = Evidence { shape, examined: None, certificate: None, partial: None, model: None };
    let roots = evidence.shape.rational_roots.clone();

    let pending = match roots.len() {
        0 => Some(Decision { conclusion: Conclusion::EndZ, rule: Some("R0"), one_root_model_degree: None }),
        1 => Some(decide_one_root(n)),
        2 => Some(decide_two_roots(n)),
        _ => None,
    };
    // A group is examined whenever the cofactor has degree >= 4, so that the
    // partial evidence is reported even where no rule has the right degree.
    let examined = evidence.shape.cofactor.clone();
    let mut decision = Decision { conclusion: Conclusion::Inconclusive, rule: None, one_root_model_degree: None };
    if roots.len() <= 2 && examined.deg().unwrap_or(0) >= 4 {
        let outcome = certify_sym_or_alt(&examined, budget, seed)?;
        evidence.examined = Some(examined);
        match outcome {
            GaloisOutcome::Certified(cert) => {
                evidence.certificate = Some(cert);
                if let Some(d) = pending {
                    decision = d;
                }
            }
            GaloisOutcome::Inconclusive(partial) => evidence.partial = Some(partial),
        }
    }
    if decision.rule == Some("R4") {
        evidence.model = Some(two_root_reduction(f, &roots[0], &roots[1])?);
    }

    let (claims, extra) = corollaries(&decision);
    let applied_rules = decision.rule.into_iter().chain(extra).map(rule).collect();
    Ok(Verdict {
        schema: SCHEMA.to_string(),
        conclusion: decision.conclusion,
        corollaries: claims,
        applied_rules,
        evidence,
    })
}

/// Outcome of a one-sided test: either the claim is proved or nothing is said.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decided {
    True,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonIsogenyReport {
    pub schema: String,
    pub result: Decided,
    /// Which disjunct of the non-isogeny criterion applied.
    pub case: Option<String>,
    #[serde(with = "crate::exactalg::serde_rational")]
    pub t: BigRational,
    pub certificate: Option<GaloisCertificate>,
    pub partial: Option<Inconclusive>,
    pub f1_shape: CurveShape,
}

/// `J(C_f)` and `J(C_f1)` are not isogenous over an algebraic closure when
/// `f = (x - t) h` has odd degree `n >= 9`, `Gal(h)` is `S_{n-1}` or `A_{n-1}`,
/// and `f1` splits into linear factors. Linear disjointness of splitting fields
/// is not tested, so every other situation is inconclusive.
pub fn non_isogenous(f: &RationalPoly, f1: &RationalPoly, budget: usize, seed: u64) -> Result<NonIsogenyReport> {
    let shape = CurveShape::of(f)?;
    let f1_shape = CurveShape::of(f1)?;
    let n = shape.n;
    if n % 2 == 0 || n < 9 {
        return domain(format!("non-isogeny needs odd degree >= 9, got {n}"));
    }
    if f1_shape.n != n {
        return domain(format!("degrees differ: {n} and {}", f1_shape.n));
    }
    if shape.rational_roots.len() != 1 {
        return domain(format!(
            "f must be (x - t) h with h irreducible; found {} rational roots",
            shape.rational_roots.len()
        ));
    }
    let t = shape.rational_roots[0].clone();
    let outcome = certify_sym_or_alt(&shape.cofactor, budget, seed)?;
    let (certificate, partial) = match outcome {
        GaloisOutcome::Certified(c) => (Some(c), None),
        GaloisOutcome::Inconclusive(p) => (None, Some(p)),
    };
    let splits = f1_shape.rational_roots.len() == n;
    let (result, case) = if certificate.is_some() && splits {
        (Decided::True, Some("f1 splits into linear factors".to_string()))
    } else {
        (Decided::Inconclusive, None)
    };
    Ok(NonIsogenyReport { schema: SCHEMA.to_string(), result, case, t, certificate, partial, f1_shape })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidityReport {
    pub schema: String,
    pub result: Decided,
    #[serde(with = "crate::exactalg::serde_rational")]
    pub t1: BigRational,
    #[serde(with = "crate::exactalg::serde_rational")]
    pub t2: BigRational,
    pub t1_outside: bool,
    pub t2_outside: bool,
    pub certificate: Option<GaloisCertificate>,
    pub partial: Option<Inconclusive>,
    pub exceptional: Option<ExceptionalSet>,
}

/// Decides that `y^2 = (x - t1) h` and `y^2 = (x - t2) h` have non-isomorphic
/// jacobians when one of `t1, t2` lies outside the exceptional set `B(h)`.
pub fn moduli_rigidity(
    h: &RationalPoly,
    t1: &BigRational,
    t2: &BigRational,
    budget: usize,
    seed: u64,
    precision: usize,
    denom_bound: &num_bigint::BigInt,
) -> Result<RigidityReport> {
    let n = match h.deg() {
        Some(d) => d + 1,
        None => return domain("h is zero"),
    };
    if n < 8 || n == 9 {
        return domain(format!("moduli rigidity needs n = deg h + 1 >= 8 and n != 9, got {n}"));
    }
    if t1 == t2 {
        return domain("t1 and t2 must differ");
    }
    if h.eval(t1) == BigRational::from_integer(0.into()) || h.eval(t2) == BigRational::from_integer(0.into()) {
        return domain("t1 and t2 must not be roots of h");
    }
    if !h.is_squarefree() {
        return domain(format!("{h} has a multiple root"));
    }
    let outcome = certify_sym_or_alt(h, budget, seed)?;
    let mut report = RigidityReport {
        schema: SCHEMA.to_string(),
        result: Decided::Inconclusive,
        t1: t1.clone(),
        t2: t2.clone(),
        t1_outside: false,
        t2_outside: false,
        certificate: None,
        partial: None,
        exceptional: None,
    };
    match outcome {
        GaloisOutcome::Certified(c) => report.certificate = Some(c),
        GaloisOutcome::Inconclusive(p) => {
            report.partial = Some(p);
            return Ok(report);
        }
    }
    let set = exceptional_set(h, precision, denom_bound)?;
    report.t1_outside = !set.may_contain(t1);
    report.t2_outside = !set.may_contain(t2);
    if report.t1_outside || report.t2_outside {
        report.result = Decided::True;
    }
    report.exceptional = Some(set);
    Ok(report)
}
