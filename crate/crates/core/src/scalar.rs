//! Scalar abstraction shared by the simulator, colour codec and brushes.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating point type the numerical code is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Every `f64` is representable (possibly rounded) in
    /// the supported types, so this never fails.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Maps into `[0, 1)`. Guards the case where `rem_euclid` of a tiny negative number
    /// rounds up to exactly one.
    #[inline]
    fn wrap_unit(self) -> Self {
        let w = self.rem_euclid(&Self::one());
        if w >= Self::one() {
            Self::zero()
        } else {
            w
        }
    }
}

// `rem_euclid` lives on the inherent float types, not on `Float`; route through it here.
trait RemEuclid {
    fn rem_euclid(&self, rhs: &Self) -> Self;
}

impl<T: Float> RemEuclid for T {
    #[inline]
    fn rem_euclid(&self, rhs: &Self) -> Self {
        let r = *self % *rhs;
        if r < T::zero() {
            r + rhs.abs()
        } else {
            r
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
