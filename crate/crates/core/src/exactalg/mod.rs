//! Exact arithmetic: rationals, polynomials, rational functions, quadratic
//! extensions and truncated series.

pub mod ext;
pub mod gcd;
pub(crate) mod modp;
pub mod mpoly;
pub mod museries;
pub mod numfield;
pub mod ratfun;
pub mod rational;
pub mod upoly;

pub use ext::{eval_ratfun_at, eval_ratfun_at_ext, ExtElem, QuadExt};
pub use mpoly::{MPoly, Var};
pub use museries::MuSeries;
pub use numfield::{CPoly, NumElem, QuadField};
pub use ratfun::{RatFun, URatFun};
pub use rational::{fmt_q, parse_q, q, qf, Q};
pub use upoly::UPoly;
