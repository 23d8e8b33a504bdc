//! Return-map coefficients of polynomial Liénard systems
//!
//! ```text
//! x' = y
//! y' = -x + (λ1 x + λ2 x^2 + ... + λd x^d) y
//! ```
//!
//! The crate computes the coefficients `v_k(θ)` of the expansion
//! `r0 = r + v_2(θ) r^2 + v_3(θ) r^3 + ...` exactly (rational arithmetic with
//! π kept symbolic), certifies the structure of the ideal they generate,
//! evaluates the explicit convergence and zero-count radii, and checks all of
//! it against a numerical integration of the flow.
//!
//! Module map:
//!
//! * [`exact`] rationals, polynomials in π, high-precision decimals
//! * [`trig`] exact generalized trigonometric polynomials `Σ q θ^m cos/sin(jθ)`
//! * [`param`] polynomials in `λ1..λd` over any of the coefficient rings
//! * [`recurrence`] the coefficient table and its structural checks
//! * [`oracle`] an independent floating point series solver
//! * [`bautin`] ideal membership, decompositions and the triangular matrix relation
//! * [`bounds`] envelopes, majorants, series inversion and radii
//! * [`numeric`] ODE integration, return maps, cycle and zero counting
//! * [`cli`] the command-line front end

pub mod bautin;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod oracle;
pub mod param;
pub mod recurrence;
pub mod ring;
pub mod trig;

pub use error::{Error, Result};
pub use exact::{Decimal, PiFraction, PiPoly, Rational};
pub use param::{LambdaPoly, Monomial, ParamPoly, ParamTrigSeries};
pub use recurrence::CoefficientTable;
pub use ring::Ring;
pub use trig::{TrigKind, TrigPoly, TrigTerm};

/// Decimal digits used for norm comparisons unless overridden.
pub const DEFAULT_PRECISION: u32 = 30;
