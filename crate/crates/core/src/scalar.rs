//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the walk machinery is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal (tolerances, physical constants) into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }

    /// Reduces an angle into `[0, 2π)`.
    fn wrap_angle(self) -> Self {
        let tau = Self::TAU();
        let r = self % tau;
        let r = if r < Self::zero() { r + tau } else { r };
        // `-tiny + 2π` rounds to exactly 2π
        if r >= tau {
            Self::zero()
        } else {
            r
        }
    }

    /// Machine epsilon scaled into a usable convergence floor.
    #[inline]
    fn tolerance_floor(requested: f64) -> Self {
        Self::lit(requested).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}
