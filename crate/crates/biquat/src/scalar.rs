//! Real scalar backends: `f64` for transcendental work, `BigRational` for exact identities.

use core::fmt::Debug;
use core::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Real field underlying the complex components of a biquaternion.
pub trait Scalar: Num + Clone + Debug + PartialEq + Neg<Output = Self> + Send + Sync + 'static {
    /// True for backends where equality is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Best representable approximation of a float. Exact backends take the
    /// binary expansion of `x` verbatim.
    fn from_f64(x: f64) -> Self;

    fn abs_f64(&self) -> f64 {
        let x = self.to_f64();
        if x < 0.0 {
            -x
        } else {
            x
        }
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // Scale down huge numerators/denominators before converting.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
                let n = (self.numer() >> shift as usize).to_f64().unwrap_or(0.0);
                let d = (self.denom() >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(BigRational::zero)
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&Signed::abs(self))
    }
}

/// Complex number over a scalar backend.
pub type C<T> = Complex<T>;

pub(crate) fn c_re<T: Scalar>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

pub(crate) fn c_i<T: Scalar>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

pub(crate) fn c_abs_f64<T: Scalar>(z: &C<T>) -> f64 {
    let (a, b) = (z.re.to_f64(), z.im.to_f64());
    num_traits::Float::sqrt(a * a + b * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_roundtrip() {
        let r = Rational::from_ratio(3, -6);
        assert_eq!(Scalar::to_f64(&r), -0.5);
        assert_eq!(Rational::from_f64(0.25), Rational::from_ratio(1, 4));
        assert!(Rational::EXACT && !f64::EXACT);
    }
}
