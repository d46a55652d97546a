//! Coordinate scalars.
//!
//! All incidence and genericity predicates in this crate are written against
//! [`Scalar`]. The exact instantiation, [`Rational`](crate::Rational), makes
//! every crossing count and classification exact; `f64` is supported for
//! quick experiments and rendering, with the usual caveats about ties.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A coordinate field usable by the geometry layer.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Signed + Send + Sync + 'static {
    /// `true` when comparisons and signs are computed without rounding.
    const EXACT: bool;

    fn from_rational(value: &BigRational) -> Self;

    fn to_rational(&self) -> BigRational;

    fn to_f64(&self) -> f64;

    fn from_i64(value: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(value)))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Sign of the cross product `(b - a) x (c - a)`.
    fn orient(ax: &Self, ay: &Self, bx: &Self, by: &Self, cx: &Self, cy: &Self) -> Ordering {
        let det = (bx.clone() - ax.clone()) * (cy.clone() - ay.clone())
            - (by.clone() - ay.clone()) * (cx.clone() - ax.clone());
        sign_of(&det)
    }
}

/// Sign as an ordering against zero. (`Signed::is_positive` on floats
/// reports `0.0` as positive, so compare instead.)
pub(crate) fn sign_of<T: Scalar>(value: &T) -> Ordering {
    value.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn orient(ax: &Self, ay: &Self, bx: &Self, by: &Self, cx: &Self, cy: &Self) -> Ordering {
        // Integer grids (the random generator's output) take the i128 path.
        if let (Some(ax), Some(ay), Some(bx), Some(by), Some(cx), Some(cy)) = (
            small_int(ax),
            small_int(ay),
            small_int(bx),
            small_int(by),
            small_int(cx),
            small_int(cy),
        ) {
            let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
            return det.cmp(&0);
        }
        let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        sign_of(&det)
    }
}

fn small_int(value: &BigRational) -> Option<i128> {
    const LIMIT: i64 = 1 << 61;
    if !value.denom().is_one() {
        return None;
    }
    let n = value.numer().to_i64()?;
    (-LIMIT..=LIMIT).contains(&n).then_some(n as i128)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(value: &BigRational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).unwrap_or_else(BigRational::zero)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}
