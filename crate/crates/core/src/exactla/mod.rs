//! Exact linear algebra over the rationals and integers.

pub mod complex;
pub mod matrix;
pub mod nilpotent;
pub mod scalar;
pub mod snf;

pub use complex::{homology_dims, rationalize, AbelianGroup, ChainComplex};
pub use matrix::{integer_rank, rank, rank_in_char, rank_mod_p, Matrix};
pub use nilpotent::{nilpotency_index, wedge_square, NilpotentOperator};
pub use scalar::{is_prime, rational_mod_p, EuclideanRing, Field, Scalar, ToRational};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
