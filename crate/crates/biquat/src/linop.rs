//! Real-linear operators on B as 8×8 real matrices.

use core::array;


use crate::biquaternion::Biquaternion;
use crate::scalar::{Scalar, C};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Conjugation applied to the slot of a monomial `left · flavor(x) · right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Id,
    Star,
    Bar,
    Plus,
}

impl Flavor {
    pub fn apply<T: Scalar>(self, x: &Biquaternion<T>) -> Biquaternion<T> {
        match self {
            Flavor::Id => x.clone(),
            Flavor::Star => x.star(),
            Flavor::Bar => x.bar(),
            Flavor::Plus => x.plus(),
        }
    }
}

/// Real-linear map on the eight real coordinates of a biquaternion.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLinearOp<T: Scalar> {
    pub m: [[T; 8]; 8],
}

impl<T: Scalar> RealLinearOp<T> {
    pub fn zero() -> Self {
        RealLinearOp { m: array::from_fn(|_| array::from_fn(|_| T::zero())) }
    }

    pub fn identity() -> Self {
        RealLinearOp { m: array::from_fn(|r| array::from_fn(|c| if r == c { T::one() } else { T::zero() })) }
    }

    /// Matrix of an arbitrary real-linear map, read off from its action on the basis.
    pub fn from_map(f: impl Fn(&Biquaternion<T>) -> Biquaternion<T>) -> Self {
        let mut m: [[T; 8]; 8] = array::from_fn(|_| array::from_fn(|_| T::zero()));
        for c in 0..8 {
            let col = f(&Biquaternion::basis(c)).to_real8();
            for (r, x) in col.into_iter().enumerate() {
                m[r][c] = x;
            }
        }
        RealLinearOp { m }
    }

    /// `x ↦ left · flavor(x) · right`.
    pub fn monomial(left: &Biquaternion<T>, right: &Biquaternion<T>, flavor: Flavor) -> Self {
        Self::from_map(|x| left * flavor.apply(x) * right)
    }

    /// Multiplication by the imaginary unit.
    pub fn i_op() -> Self {
        Self::monomial(&Biquaternion::i(), &Biquaternion::one(), Flavor::Id)
    }

    pub fn apply(&self, x: &Biquaternion<T>) -> Biquaternion<T> {
        let v = x.to_real8();
        let out: [T; 8] = array::from_fn(|r| {
            let mut acc = T::zero();
            for (c, vc) in v.iter().enumerate() {
                if !self.m[r][c].is_zero() {
                    acc = acc + self.m[r][c].clone() * vc.clone();
                }
            }
            acc
        });
        Biquaternion::from_real8(&out)
    }

    /// `self ⊙ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = array::from_fn(|r| {
            array::from_fn(|c| {
                let mut acc = T::zero();
                for k in 0..8 {
                    if !self.m[r][k].is_zero() && !other.m[k][c].is_zero() {
                        acc = acc + self.m[r][k].clone() * other.m[k][c].clone();
                    }
                }
                acc
            })
        });
        RealLinearOp { m }
    }

    pub fn add(&self, other: &Self) -> Self {
        RealLinearOp { m: array::from_fn(|r| array::from_fn(|c| self.m[r][c].clone() + other.m[r][c].clone())) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RealLinearOp { m: array::from_fn(|r| array::from_fn(|c| self.m[r][c].clone() - other.m[r][c].clone())) }
    }

    pub fn scale(&self, k: &T) -> Self {
        RealLinearOp { m: array::from_fn(|r| array::from_fn(|c| self.m[r][c].clone() * k.clone())) }
    }

    /// Composition with multiplication by the complex scalar `z`.
    pub fn scale_complex(&self, z: &C<T>) -> Self {
        Self::monomial(&Biquaternion::scalar(z.clone()), &Biquaternion::one(), Flavor::Id).compose(self)
    }

    /// `[self, other] = self⊙other − other⊙self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for r in 0..8 {
            for c in 0..8 {
                d = d.max((self.m[r][c].clone() - other.m[r][c].clone()).abs_f64());
            }
        }
        d
    }

    /// Equality up to `tol` in max-abs entry; bit equality on exact backends.
    pub fn op_equal(&self, other: &Self, tol: f64) -> bool {
        if T::EXACT {
            self == other
        } else {
            self.max_abs_diff(other) <= tol
        }
    }

    pub fn is_complex_linear(&self, tol: f64) -> bool {
        let i = Self::i_op();
        self.compose(&i).op_equal(&i.compose(self), tol)
    }

    pub fn is_antilinear(&self, tol: f64) -> bool {
        let i = Self::i_op();
        self.compose(&i).op_equal(&i.compose(self).scale(&-T::one()), tol)
    }

    pub fn to_f64(&self) -> RealLinearOp<f64> {
        RealLinearOp { m: array::from_fn(|r| array::from_fn(|c| self.m[r][c].to_f64())) }
    }

    /// Images of the eight basis vectors.
    pub fn columns(&self) -> [[T; 8]; 8] {
        array::from_fn(|c| array::from_fn(|r| self.m[r][c].clone()))
    }
}

impl RealLinearOp<f64> {
    /// Infinity norm.
    pub fn norm_inf(&self) -> f64 {
        self.m.iter().map(|row| row.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let n = self.norm_inf();
        let squarings = if n > 0.5 { (n / 0.5).log2().ceil() as u32 } else { 0 };
        let a = self.scale(&(0.5f64).powi(squarings as i32));
        let mut sum = Self::identity();
        let mut term = Self::identity();
        for k in 1..30 {
            term = term.compose(&a).scale(&(1.0 / k as f64));
            sum = sum.add(&term);
            if term.norm_inf() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.compose(&sum);
        }
        sum
    }
}

impl<T: Scalar> Default for RealLinearOp<T> {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::scalar::Rational;

    type Q = Biquaternion<Rational>;
    type Op = RealLinearOp<Rational>;

    #[test]
    fn monomial_basics() {
        assert_eq!(Op::monomial(&Q::one(), &Q::one(), Flavor::Id), Op::identity());
        let f = Frame::<Rational>::standard();
        let op = Op::monomial(&f.sigma, &f.sigma_bar, Flavor::Id);
        assert_eq!(op.apply(&f.tau), &f.sigma * &f.tau * &f.sigma_bar);
        let star = Op::monomial(&Q::one(), &Q::one(), Flavor::Star);
        assert!(star.is_antilinear(0.0));
        assert!(!star.is_complex_linear(0.0));
        assert_eq!(star.compose(&star), Op::identity());
    }

    #[test]
    fn monomial_fusion() {
        let a = Q::from_ints([1, 0, 2, -1, 0, 1, 0, 3]);
        let c = Q::from_ints([0, 1, 1, 0, 2, 0, -1, 1]);
        let left = Op::monomial(&a, &Q::one(), Flavor::Id);
        let right = Op::monomial(&Q::one(), &c, Flavor::Id);
        assert_eq!(left.compose(&right), Op::monomial(&a, &c, Flavor::Id));
        assert_eq!(left.compose(&Op::identity()), left);
    }

    #[test]
    fn exp_inverse() {
        let q = Biquaternion::<f64>::from_ints([0, 1, 2, 3, 1, 0, -1, 2]);
        let f = RealLinearOp::monomial(&q, &q.bar(), Flavor::Star).scale(&0.05);
        let prod = f.exp().compose(&f.scale(&-1.0).exp());
        assert!(prod.op_equal(&RealLinearOp::identity(), 1e-12));
        assert!(RealLinearOp::<f64>::zero().exp().op_equal(&RealLinearOp::identity(), 0.0));
    }
}
