//! Exact scalars: big rationals, cyclotomic fields `Q(ζ_n)`, and polynomials
//! in the coupling constants `ν`.

mod cyclotomic;
mod nupoly;
pub mod rational;

pub use cyclotomic::{euler_phi, lcm, Cyclotomic};
pub use nupoly::NuPoly;
pub use rational::{format_rational, parse_rational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    NotDivisible { from: u32, to: u32 },
    #[error("variable mismatch: {left} vs {right} coupling constants")]
    VariableMismatch { left: usize, right: usize },
    #[error("square root of negative number {0}")]
    NegativeSqrt(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}
