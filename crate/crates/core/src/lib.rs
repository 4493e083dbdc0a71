//! Exact certification of endomorphism-ring rigidity for hyperelliptic
//! jacobians of curves `y^2 = (x - t) h(x)` over the rationals.
//!
//! The crate is organised by the mathematical ingredient each module supplies:
//!
//! * [`exactalg`]: rational and modular polynomial arithmetic.
//! * [`galois`]: Dedekind cycle-type sampling and replayable certificates that a
//!   Galois group is symmetric or alternating.
//! * [`torsionmod`]: the 2-torsion permutation module over GF(2).
//! * [`curvemap`]: explicit changes of hyperelliptic model.
//! * [`moduli`]: branch points, Möbius maps and exceptional parameter sets.
//! * [`verdict`]: the rule engine turning certificates into conclusions.
//! * [`parse`]: the polynomial expression grammar used by the CLI.

pub mod curvemap;
pub mod error;
pub mod exactalg;
pub mod galois;
pub mod moduli;
pub mod parse;
pub mod torsionmod;
pub mod verdict;

pub use error::{Error, Result};
pub use exactalg::{Degree, ModPoly, RationalPoly};

/// Version tag written at the top of every JSON document.
pub const SCHEMA: &str = "jacobian-rigidity/1";
