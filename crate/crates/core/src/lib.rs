//! Exact Fourier transforms of algebraic measures over `Q_p`, explicit
//! wave-front bounds built from resolution-chart data, and a verification
//! harness that probes smoothness at finite level.
//!
//! ```
//! use padic_wavefront::char_sums::{direct_ft, FrequencyPoint, PolynomialScene};
//! use padic_wavefront::poly::MultiPoly;
//! use padic_wavefront::rational::ratio;
//! use padic_wavefront::{PAdicScalar, PrimeContext, ResidueCube};
//!
//! # fn main() -> padic_wavefront::Result<()> {
//! let ctx = PrimeContext::new(5, 6)?;
//! let y = MultiPoly::var(1, 0);
//! let scene = PolynomialScene::new(1, vec![y.pow(2)], vec![0], None)?;
//! let xi = FrequencyPoint::scalar(PAdicScalar::from_parts(&ctx, 1, 1)); // 1/5
//! let g = direct_ft(&ctx, &scene, &ResidueCube::full(1), &xi)?;
//! assert_eq!(g.norm_sq().as_rational(), Some(ratio(1, 5)));
//! # Ok(())
//! # }
//! ```

pub mod bound;
pub mod char_sums;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use exec::ExecMode;
pub use padic::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube, Valuation};
