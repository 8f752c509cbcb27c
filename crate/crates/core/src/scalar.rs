use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical core is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    fn from_usize_lossy(i: usize) -> Self {
        Self::from_usize(i).expect("index representable in scalar type")
    }

    /// A tolerance quoted for double precision, widened in proportion to the
    /// machine epsilon when the scalar is coarser than `f64`.
    fn tol(v: f64) -> Self {
        let widened = v / f64::EPSILON * Self::epsilon().to_f64().unwrap_or(f64::EPSILON);
        Self::lit(v.max(widened))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
