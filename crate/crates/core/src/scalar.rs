//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All matrices carry `Complex<T>` entries where `T: Real`. `f64` is the
//! working precision for analysis; `f32` is supported for bulk simulation
//! where the default tolerances are floored to what single precision can
//! actually resolve.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar usable as the component type of [`Complex`] entries.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if the target cannot represent
    /// finite `f64` values, which never happens for `f32`/`f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// A tolerance `tol` expressed in this precision, never tighter than a
    /// small multiple of machine epsilon.
    fn tol(tol: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(tol).max(floor)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("real scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub(crate) fn is_finite<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
