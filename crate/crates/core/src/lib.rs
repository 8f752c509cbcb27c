//! Dunkl-Appell positive linear operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`dunkl`] holds the scalar primitives: the parity indicator, the
//!   generalised factorials `γ_μ(i)` and the Dunkl exponential `e_μ`.
//! * [`series`] is truncated power-series arithmetic with the Dunkl operator
//!   `Λ_μ` realised as a coefficient transform.
//! * [`appell`] builds Dunkl-Appell families from a generating series `Q`
//!   and produces the operator weights.
//! * [`operator`] evaluates `K_n^μ(f; x)` and the closed-form raw and central
//!   moments.
//! * [`bounds`] estimates moduli of continuity and checks operator error
//!   against the first-modulus, Hölder and second-modulus estimates.
//! * [`catalog`] is the registry of test functions with analytic metadata.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`, which is what the CLI uses.

pub mod appell;
pub mod bounds;
pub mod catalog;
pub mod dunkl;
mod error;
pub mod operator;
mod scalar;
pub mod series;

pub use appell::{AppellFamily, Positivity, WeightSequence};
pub use bounds::{
    modulus1, modulus2, theorem2_bound, theorem3_bound, theorem4_bound, verify, BoundInputs,
    BoundRecord, BoundReport, ModulusEstimate, ModulusKind, ModulusSource, Theorem,
    Theorem4Bound, VerifyParams,
};
pub use catalog::FunctionEntry;
pub use dunkl::{theta, DunklContext, ExpEvaluation};
pub use error::{Error, Result};
pub use operator::{CentralMoments, MomentSource, OperatorSpec, QFunctionals, RawMoments};
pub use scalar::Scalar;
pub use series::PowerSeries;

pub type DunklContext64 = DunklContext<f64>;
pub type PowerSeries64 = PowerSeries<f64>;
pub type AppellFamily64 = AppellFamily<f64>;
pub type WeightSequence64 = WeightSequence<f64>;
pub type OperatorSpec64 = OperatorSpec<f64>;
pub type QFunctionals64 = QFunctionals<f64>;
pub type CentralMoments64 = CentralMoments<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type FunctionEntry64 = FunctionEntry<f64>;

pub type DunklContext32 = DunklContext<f32>;
pub type PowerSeries32 = PowerSeries<f32>;
pub type AppellFamily32 = AppellFamily<f32>;
pub type OperatorSpec32 = OperatorSpec<f32>;
