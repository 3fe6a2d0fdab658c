//! Combinatorial models of semistable degenerations of surfaces and
//! Calabi–Yau threefolds, with exact spectral-sequence dimension counts.

pub mod cohss;
pub mod covers;
pub mod cy3;
pub mod dcomplex;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod io;
pub mod neron;
pub mod sncl;
pub mod wss;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use exactla::Matrix;

/// Rational matrices, the default for every dimension count.
pub type QMatrix = Matrix<BigRational>;
/// Integer matrices, used where torsion matters.
pub type IntMatrix = Matrix<BigInt>;
