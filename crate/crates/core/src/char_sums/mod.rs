//! Localized Fourier transforms of algebraic measures as exact character sums.

mod brute;
mod direct;
mod inverse;
mod scaled;
mod scene;
mod weight;

pub use brute::{brute_force_ft, oracle_level, truncated_stratum_oracle, ORACLE_POINT_LIMIT};
pub use direct::direct_ft;
pub use inverse::inverse_ft;
pub use scaled::{homogeneity_factor, scaled_eval};
pub use scene::{FrequencyPoint, MonomialScene, PolynomialScene, Scene};
pub use weight::weight_cube_integral;

pub(crate) use inverse::vanishing_threshold;
