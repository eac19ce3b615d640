//! Non-semi-simple quantum invariants `N_r` and `N_r^0` of closed oriented
//! 3-manifolds presented by surgery, at the root of unity `q = exp(i pi / r)`.
//!
//! Everything is generic over the floating-point type through [`Real`]; the
//! `*64` aliases below fix it to `f64`.

pub mod error;
pub mod families;
pub mod limit;
pub mod qarith;
pub mod scalar;
pub mod skein;
pub mod surgery;

pub use error::{Error, Result};
pub use limit::LimitPolicy;
pub use qarith::{lobachevsky, Color, HrSet, QParams, Sign};
pub use scalar::Real;

pub type C64 = num_complex::Complex<f64>;
pub type QParams64 = QParams<f64>;
pub type Color64 = Color<f64>;
pub type LimitPolicy64 = LimitPolicy<f64>;
pub type ChainSpec64 = families::ChainSpec<f64>;
pub type CohomologyClass64 = surgery::CohomologyClass<f64>;
pub type SkeinExpr64 = skein::SkeinExpr<f64>;
