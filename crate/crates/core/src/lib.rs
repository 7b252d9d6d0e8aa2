//! Promotion dynamics on standard Young tableaux.
//!
//! The crate computes promotion orbits exactly and checks them against
//! structural predictions: run and track decompositions of two-row tableaux,
//! cyclic sieving polynomials, divisor polynomials for orbit lengths, the
//! generic case, and near-hook shapes.
//!
//! Tableau entries are `u32`. Polynomials are generic over their coefficient
//! type; [`QPoly`] (in `q`) and [`NPoly`] (in `n`) use big integers.

pub mod divisor;
pub mod enumeration;
pub mod error;
pub mod fitter;
pub mod near_hook;
pub mod poly;
pub mod promotion;
pub mod qseries;
pub mod runs;
pub mod tableau;
pub mod tracks;
pub mod verify;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive};

pub use error::{Error, Result};
pub use poly::Poly;
pub use promotion::{demote, orbit, orbit_partition, period, promote, OrbitReport, Spectrum};
pub use tableau::{Partition, Tableau};

/// Exact ring used for polynomial coefficients.
pub trait Coeff: Clone + Num + PartialOrd + ToPrimitive + Display + Debug {}

impl<T: Clone + Num + PartialOrd + ToPrimitive + Display + Debug> Coeff for T {}

/// Polynomial in `q` with big-integer coefficients.
pub type QPoly = Poly<BigInt>;

/// Polynomial in `n` with big-integer coefficients.
pub type NPoly = Poly<BigInt>;

/// Polynomial with machine-integer coefficients, for small fixed-size work.
pub type Poly64 = Poly<i64>;
