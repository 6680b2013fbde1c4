//! Scalars of `Q_p`, the additive character, and exact character values.

mod context;
mod cube;
mod cyclo;
mod scalar;

pub use context::PrimeContext;
pub use cube::ResidueCube;
pub use cyclo::CyclotomicValue;
pub use scalar::{unit_inverse_mod, PAdicScalar, Valuation};

pub(crate) use scalar::{inv_mod, mul_mod, pow_mod, reduce_p_integral, residue_valuation};
