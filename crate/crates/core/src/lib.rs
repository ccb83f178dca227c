//! Exact and interval-certified computations around univalence of
//! analytic functions on the unit disk.
//!
//! * [`ratseries`]: exact truncated power series, including the extremal
//!   family `F_a` with `z F_a'/F_a = exp(2a arctan z)`.
//! * [`grunsky`]: Grunsky coefficient tables, Grunsky matrices, exact
//!   quadratic forms and a PSD test with witnesses.
//! * [`certificate`]: discovery and exact verification of rational vectors
//!   proving that some `F_a` is not univalent.
//! * [`bounds`]: interval arithmetic and the certified lower bounds for
//!   `delta_0`, `delta_1`.

pub mod bounds;
pub mod certificate;
pub mod grunsky;
pub mod rational;
pub mod ratseries;

pub use rational::{format_rational, parse_rational, BigRational};
