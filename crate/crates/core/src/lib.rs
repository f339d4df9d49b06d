//! Numerical core for generalized partial-slice monogenic functions.
//!
//! A point of `R^{p+q+1}` is split as `x = x_p + x_q` with `x_p` in the
//! paravector span of `1, e_1, .., e_p` and `x_q = r·ω` along the remaining
//! `q` generators. Functions that are "slice" are determined by their values
//! on a single half-plane `x_p + r·ω`, which is what makes everything here
//! computable with low-dimensional quadrature.
//!
//! The crate is `no_std` (it needs `alloc`). Modules build on one another:
//!
//! * [`clifford`]: the algebra `R_{p+q}`, multivectors, split points.
//! * [`stem`]: stem functions, induced slice functions, the slice Dirac and
//!   global operators, the representation formula.
//! * [`domain`]: the axially symmetric test domain and every quadrature rule.
//! * [`kernels`]: slice and global Cauchy kernels.
//! * [`ops`]: Cauchy, Teodorescu, Plemelj and Hodge machinery.
//! * [`catalogue`]: closed-form stems used as test data.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod catalogue;
pub mod clifford;
pub mod domain;
mod error;
pub mod kernels;
pub mod ops;
pub mod stem;

pub use clifford::{Direction, Multivector, Signature, SplitPoint};
pub use domain::MirroredBallDomain;
pub use error::{Error, Result};
