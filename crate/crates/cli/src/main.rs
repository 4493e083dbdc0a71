use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use rigidity_core::curvemap::{genus, odd_to_even_model, two_root_reduction, verify_birational_identity};
use rigidity_core::exactalg::{parse_rational, rational_to_string};
use rigidity_core::galois::{certify_sym_or_alt, replay, GaloisOutcome};
use rigidity_core::moduli::{
    branch_match, branch_points, exceptional_set, mobius::MatrixReport, DEFAULT_DENOM_BOUND, DEFAULT_PRECISION,
};
use rigidity_core::parse::parse_poly;
use rigidity_core::torsionmod::{heart_restriction_iso, F2PermModule, Perm};
use rigidity_core::verdict::{classify, moduli_rigidity, non_isogenous, Decided};
use rigidity_core::{Error, RationalPoly, SCHEMA};

const EXIT_DEFINITIVE: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;

/// Chordal tolerance for matching branch points.
const ISO_TOLERANCE: f64 = 1e-30;

#[derive(Parser, Debug)]
#[command(name = "jacobian-rigidity", version, about = "Endomorphism-ring verdicts for y^2 = (x - t) h(x) over Q")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Opts {
    /// Number of usable primes sampled for Galois certificates.
    #[arg(long, global = true, default_value_t = rigidity_core::galois::DEFAULT_BUDGET)]
    budget: usize,
    /// Working precision in bits for numerical steps.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    /// Largest denominator accepted when recognising rationals.
    #[arg(long, global = true, default_value_t = DEFAULT_DENOM_BOUND)]
    denom_bound: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable report instead of JSON.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply the rule table to f.
    Classify { poly: String },
    /// Certify that Gal(h) is symmetric or alternating.
    CertifyGalois { poly: String },
    /// Exceptional parameter set B(h).
    ExceptionalSet { poly: String },
    /// Whether y^2 = f1 and y^2 = f2 are isomorphic over C.
    Iso { poly1: String, poly2: String },
    /// Non-isogeny of J(C_f) and J(C_f1).
    NonIsogenous { poly1: String, poly2: String },
    /// Move the rational root t to infinity.
    Transform {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// A second rational root, split off after the change of model.
        #[arg(long, allow_hyphen_values = true)]
        second_root: Option<String>,
    },
    /// GF(2) permutation module of Alt(2g).
    TorsionCheck {
        #[arg(long)]
        letters: usize,
    },
    /// Non-isomorphy of the jacobians for y^2 = (x - t1) h and y^2 = (x - t2) h.
    Rigidity {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
    },
}

struct Report {
    json: String,
    text: String,
    definitive: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report serializes")
}

/// Serialized name of a unit enum variant, such as `END_Z`.
fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn poly(s: &str) -> Result<RationalPoly, Error> {
    parse_poly(s)
}

fn rational(s: &str) -> Result<num_rational::BigRational, Error> {
    parse_rational(s.trim()).ok_or_else(|| Error::Domain(format!("not a rational number: {s:?}")))
}

#[derive(Serialize)]
struct GaloisReport<'a> {
    schema: &'a str,
    polynomial: &'a RationalPoly,
    replayed: bool,
    outcome: &'a GaloisOutcome,
}

#[derive(Serialize)]
struct ExceptionalReport<'a> {
    schema: &'a str,
    polynomial: &'a RationalPoly,
    #[serde(flatten)]
    set: &'a rigidity_core::moduli::ExceptionalSet,
}

#[derive(Serialize)]
struct IsoReport<'a> {
    schema: &'a str,
    f1: &'a RationalPoly,
    f2: &'a RationalPoly,
    isomorphic: bool,
    precision: usize,
    map: Option<MatrixReport>,
}

#[derive(Serialize)]
struct TransformReport<'a> {
    schema: &'a str,
    f: &'a RationalPoly,
    t: String,
    genus: usize,
    h2: &'a RationalPoly,
    identity_verified: bool,
    second_root_image: Option<String>,
    v: Option<RationalPoly>,
}

#[derive(Serialize)]
struct TorsionReport<'a> {
    schema: &'a str,
    letters: usize,
    group: &'a str,
    submodule_dims: Vec<usize>,
    centralizer_dim: usize,
    heart_restriction_iso: bool,
}

fn run(cmd: &Command, o: &Opts) -> Result<Report, Error> {
    let denom_bound = BigInt::from(o.denom_bound);
    match cmd {
        Command::Classify { poly: s } => {
            let f = poly(s)?;
            let v = classify(&f, o.budget, o.seed)?;
            let mut text = format!("f = {f}\nconclusion: {}\n", tag(&v.conclusion));
            for r in &v.applied_rules {
                let _ = writeln!(text, "rule {}: {}", r.id, r.theorem);
            }
            for c in &v.corollaries {
                let _ = writeln!(text, "corollary {} (by {})", tag(&c.corollary), c.rule);
            }
            Ok(Report { json: v.to_json(), text, definitive: v.is_definitive() })
        }
        Command::CertifyGalois { poly: s } => {
            let h = poly(s)?;
            let outcome = certify_sym_or_alt(&h, o.budget, o.seed)?;
            let replayed = outcome.certificate().is_some_and(|c| replay(&h, c).is_ok());
            let text = match &outcome {
                GaloisOutcome::Certified(c) => format!(
                    "Gal({h}) is {} on {} letters; {} primes cited; replay {}\n",
                    tag(&c.conclusion),
                    c.degree,
                    c.primes.len(),
                    if replayed { "accepted" } else { "REJECTED" }
                ),
                GaloisOutcome::Inconclusive(p) => format!(
                    "inconclusive after {} primes: transitive {}, primitive {}, contains A_m {}\n",
                    p.primes.len(),
                    p.transitive,
                    p.primitive,
                    p.contains_alternating
                ),
            };
            let json = to_json(&GaloisReport { schema: SCHEMA, polynomial: &h, replayed, outcome: &outcome });
            Ok(Report { json, text, definitive: replayed })
        }
        Command::ExceptionalSet { poly: s } => {
            let h = poly(s)?;
            let set = exceptional_set(&h, o.precision, &denom_bound)?;
            let list = |v: &[num_rational::BigRational]| v.iter().map(rational_to_string).collect::<Vec<_>>().join(", ");
            let text = format!(
                "B1 = {{{}}}\nB2 = {{{}}}\nB3 = {{{}}}\n|J1| = {}, precision {} bits, superset {}\n",
                list(&set.b1),
                list(&set.b2),
                list(&set.b3),
                set.j1_size,
                set.precision_used,
                set.superset_flag
            );
            let json = to_json(&ExceptionalReport { schema: SCHEMA, polynomial: &h, set: &set });
            Ok(Report { json, text, definitive: true })
        }
        Command::Iso { poly1, poly2 } => {
            let (f1, f2) = (poly(poly1)?, poly(poly2)?);
            for f in [&f1, &f2] {
                if f.deg().unwrap_or(0) < 5 || !f.is_squarefree() {
                    return Err(Error::Domain(format!("{f} is not squarefree of degree >= 5")));
                }
            }
            let (n1, n2) = (f1.deg().unwrap(), f2.deg().unwrap());
            let map = if genus(n1) != genus(n2) {
                None
            } else {
                let s1 = branch_points(&f1, o.precision)?;
                let s2 = branch_points(&f2, o.precision)?;
                if s1.len() == s2.len() {
                    branch_match(&s1, &s2, ISO_TOLERANCE)?
                } else {
                    None
                }
            };
            let isomorphic = map.is_some();
            let map = map.map(|m| m.report(30));
            let text = format!("y^2 = {f1} and y^2 = {f2} are {}isomorphic\n", if isomorphic { "" } else { "not " });
            let json =
                to_json(&IsoReport { schema: SCHEMA, f1: &f1, f2: &f2, isomorphic, precision: o.precision, map });
            Ok(Report { json, text, definitive: true })
        }
        Command::NonIsogenous { poly1, poly2 } => {
            let r = non_isogenous(&poly(poly1)?, &poly(poly2)?, o.budget, o.seed)?;
            let text = match &r.case {
                Some(c) => format!("not isogenous: {c}\n"),
                None => "inconclusive\n".to_string(),
            };
            Ok(Report { json: to_json(&r), text, definitive: r.result == Decided::True })
        }
        Command::Transform { poly: s, root, second_root } => {
            let f = poly(s)?;
            let t = rational(root)?;
            let (h2, image, v) = match second_root {
                Some(s2) => {
                    let red = two_root_reduction(&f, &t, &rational(s2)?)?;
                    (red.h2, Some(rational_to_string(&red.root)), Some(red.v))
                }
                None => (odd_to_even_model(&f, &t)?, None, None),
            };
            let n = f.deg().unwrap();
            let identity_verified = verify_birational_identity(&f, &t, &h2, n + 2);
            let mut text = format!(
                "y^2 = {f} is isomorphic to y1^2 = {h2}\nvia x1 = 1/(x - {}), y1 = y/(x - {})^{}\n",
                rational_to_string(&t),
                rational_to_string(&t),
                genus(n) + 1
            );
            if let (Some(c), Some(v)) = (&image, &v) {
                let _ = writeln!(text, "h2 = (x - {c}) * ({v})");
            }
            let json = to_json(&TransformReport {
                schema: SCHEMA,
                f: &f,
                t: rational_to_string(&t),
                genus: genus(n),
                h2: &h2,
                identity_verified,
                second_root_image: image,
                v,
            });
            Ok(Report { json, text, definitive: identity_verified })
        }
        Command::TorsionCheck { letters } => {
            let letters = *letters;
            if letters % 2 == 1 || letters < 6 {
                return Err(Error::Domain(format!("--letters must be an even number >= 6, got {letters}")));
            }
            let module = F2PermModule::alternating(letters)?;
            let submodule_dims: Vec<usize> = module.submodule_dims()?.into_iter().collect();
            let centralizer_dim = module.centralizer_dim();
            // Alt on the letters other than the last, acting on letters + 1 points
            let big = letters + 1;
            let gens: Vec<Perm> = module
                .generators()
                .iter()
                .map(|g| Perm::from_images(g.images().iter().copied().chain([letters]).collect()))
                .collect::<Result<_, _>>()?;
            let heart = heart_restriction_iso(big, letters, &gens)?;
            let text = format!(
                "Alt({letters}) on GF(2)^{letters}: submodule dimensions {submodule_dims:?}, centralizer dimension {centralizer_dim}\nrestriction from the zero-sum functions on {big} letters: {}\n",
                if heart { "isomorphism" } else { "not an isomorphism" }
            );
            let json = to_json(&TorsionReport {
                schema: SCHEMA,
                letters,
                group: "alternating",
                submodule_dims,
                centralizer_dim,
                heart_restriction_iso: heart,
            });
            Ok(Report { json, text, definitive: true })
        }
        Command::Rigidity { poly: s, t1, t2 } => {
            let h = poly(s)?;
            let r = moduli_rigidity(&h, &rational(t1)?, &rational(t2)?, o.budget, o.seed, o.precision, &denom_bound)?;
            let text = format!(
                "t1 outside B(h): {}, t2 outside B(h): {}\n{}\n",
                r.t1_outside,
                r.t2_outside,
                if r.result == Decided::True { "jacobians not isomorphic" } else { "inconclusive" }
            );
            Ok(Report { json: to_json(&r), text, definitive: r.result == Decided::True })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command, &cli.opts) {
        Ok(report) => {
            if cli.opts.text {
                print!("{}", report.text);
            } else {
                println!("{}", report.json);
            }
            ExitCode::from(if report.definitive { EXIT_DEFINITIVE } else { EXIT_INCONCLUSIVE })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
