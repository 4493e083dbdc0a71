//! Branch points, fractional-linear transformations and the exceptional
//! parameter set `B(h)` outside which the curves `y^2 = (x - t) h(x)` have
//! pairwise non-isomorphic jacobians.

pub mod exceptional;
pub mod float;
pub mod mobius;
pub mod roots;

pub use exceptional::{
    branch_points, curves_isomorphic, curves_isomorphic_at, exceptional_set, recertify, ExceptionalSet,
    ExceptionalWitness, WitnessSource, J1,
};
pub use float::{Complex, Real};
pub use mobius::{branch_match, chordal, cross_ratio, MobiusMap, ProjPoint};
pub use roots::{roots_numeric, CertifiedRoot};

pub const DEFAULT_PRECISION: usize = 256;
pub const MAX_PRECISION: usize = 1024;
pub const DEFAULT_DENOM_BOUND: u64 = 1_000_000;

/// Next rung of the precision ladder (doubling, capped at [`MAX_PRECISION`]
/// unless the caller started above it).
pub fn next_precision(current: usize, requested: usize) -> Option<usize> {
    let cap = MAX_PRECISION.max(requested);
    (current * 2 <= cap).then_some(current * 2)
}
