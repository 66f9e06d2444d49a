//! Numerics for the real projective line and the moduli of marked points on it:
//! cross-ratios and the anharmonic group, the three-fold cover `κ : P¹(ℝ) → ℝ/ℤ`,
//! the tangent-addition group law, the averaged metric on configuration space,
//! and Poincaré-disk figure data.

pub mod cover;
pub mod error;
pub mod fmt;
pub mod moduli;
pub mod plots;
pub mod projline;
pub mod tangent;

pub use cover::{
    circle_winding, devadoss_gamma, interval_classify, kappa, kappa_prime, kappa_winding, varkappa, CirclePoint,
    IntervalTag,
};
pub use error::{Error, Result};
pub use moduli::{ChartPoint, Configuration, MetricMatrix, ScanReport, TripleIndex};
pub use projline::{cross_ratio, parse_point, MobiusMap, ProjPoint, S3Element};
pub use tangent::{cayley, group_add, group_mul_int, group_neg, stereo_param, su11_conjugate, SU11Matrix, UnitComplex};
