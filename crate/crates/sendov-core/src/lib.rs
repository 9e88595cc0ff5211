//! Numerical machinery for extremum problems on the root space of complex
//! polynomials: the bottleneck metric on monic polynomials, the Sendov
//! objective `d`, constructors and classifiers for 0-maximal families,
//! LP-certified linear inextensibility, and second-order deformation
//! families around `z^4 + z` and `z^5 + z`.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `sendov-lab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod inext;
pub mod jet;
pub mod lp;
pub mod matching;
pub mod maximal;
pub mod metrics;
pub mod poly;
pub mod rng;
pub mod tol;
pub mod variation;

pub use num_complex::Complex64;

pub use inext::{classify_inextensible, InextReport, InextVerdict, VarMatrix};
pub use lp::{is_positively_singular, CertKind, PosSingCertificate};
pub use maximal::{classify_zero_maximal, make_zero_maximal, Classification, ZeroMaximalSpec};
pub use metrics::{crit_dist, delta, sendov_d, MatchResult};
pub use poly::{MonicPoly, Poly};
pub use tol::Tols;
