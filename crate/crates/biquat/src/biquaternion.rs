//! The algebra B of biquaternions `[s; v]` with complex scalar `s` and complex vector `v`.

use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{c_abs_f64, c_i, c_re, Scalar, C};

/// Biquaternion with components over the scalar backend `T`.
///
/// The product is Hamilton's: `[a; u][b; w] = [ab - u·w; a w + b u + u×w]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Biquaternion<T: Scalar> {
    pub s: C<T>,
    pub v: [C<T>; 3],
}

/// Classification of a biquaternion by its norm `q q̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<T: Scalar> {
    pub norm: C<T>,
    pub singular: bool,
}

impl<T: Scalar> Biquaternion<T> {
    pub fn new(s: C<T>, v: [C<T>; 3]) -> Self {
        Biquaternion { s, v }
    }

    /// Quaternion with real components.
    pub fn real(s: T, v1: T, v2: T, v3: T) -> Self {
        Biquaternion { s: c_re(s), v: [c_re(v1), c_re(v2), c_re(v3)] }
    }

    /// Builds from eight integers in the order `1, e1, e2, e3, i, ie1, ie2, ie3`.
    pub fn from_ints(c: [i64; 8]) -> Self {
        let z = |a: i64, b: i64| Complex::new(T::from_i64(a), T::from_i64(b));
        Biquaternion { s: z(c[0], c[4]), v: [z(c[1], c[5]), z(c[2], c[6]), z(c[3], c[7])] }
    }

    pub fn zero() -> Self {
        Biquaternion { s: C::zero(), v: [C::zero(), C::zero(), C::zero()] }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    /// The imaginary unit `i` as a biquaternion.
    pub fn i() -> Self {
        Self::scalar(c_i())
    }

    pub fn scalar(s: C<T>) -> Self {
        Biquaternion { s, v: [C::zero(), C::zero(), C::zero()] }
    }

    pub fn vector(v: [C<T>; 3]) -> Self {
        Biquaternion { s: C::zero(), v }
    }

    /// Hamilton unit `e_n`, `n ∈ {1, 2, 3}`.
    pub fn e(n: usize) -> Self {
        assert!((1..=3).contains(&n), "unit index out of range");
        let mut q = Self::zero();
        q.v[n - 1] = C::one();
        q
    }

    /// Real vector `x e1 + y e2 + z e3`.
    pub fn real_vector(x: [T; 3]) -> Self {
        let [a, b, c] = x;
        Self::real(T::zero(), a, b, c)
    }

    pub fn scalar_part(&self) -> C<T> {
        self.s.clone()
    }

    pub fn vector_part(&self) -> Self {
        Self::vector(self.v.clone())
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        Biquaternion {
            s: &self.s * c,
            v: [&self.v[0] * c, &self.v[1] * c, &self.v[2] * c],
        }
    }

    pub fn scale_real(&self, r: &T) -> Self {
        self.scale(&c_re(r.clone()))
    }

    pub fn mul_i(&self) -> Self {
        self.scale(&c_i())
    }

    /// Quaternion conjugation `[s; -v]`.
    pub fn bar(&self) -> Self {
        Biquaternion {
            s: self.s.clone(),
            v: [-self.v[0].clone(), -self.v[1].clone(), -self.v[2].clone()],
        }
    }

    /// Imaginary conjugation `[s*; v*]`.
    pub fn star(&self) -> Self {
        Biquaternion { s: self.s.conj(), v: [self.v[0].conj(), self.v[1].conj(), self.v[2].conj()] }
    }

    /// Bi-conjugation `[s*; -v*]`.
    pub fn plus(&self) -> Self {
        Biquaternion {
            s: self.s.conj(),
            v: [-self.v[0].conj(), -self.v[1].conj(), -self.v[2].conj()],
        }
    }

    /// Order reversal.
    ///
    /// Realized as the anti-automorphism fixing real scalars and the bireal
    /// units `i e_n` while negating `e_n = e_j e_k`, which flips the sign of
    /// every vector-product contribution. It coincides with bi-conjugation.
    pub fn reverse(&self) -> Self {
        self.plus()
    }

    /// `q q̄`, always a complex scalar.
    pub fn norm(&self) -> C<T> {
        let [a, b, c] = &self.v;
        &self.s * &self.s + a * a + b * b + c * c
    }

    pub fn classify(&self, tol: f64) -> Classification<T> {
        let norm = self.norm();
        let singular = if T::EXACT { norm.is_zero() } else { c_abs_f64(&norm) <= tol };
        Classification { norm, singular }
    }

    /// Two-sided inverse `q̄ / (q q̄)`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() || (!T::EXACT && c_abs_f64(&n) <= 1e-300) {
            return Err(Error::SingularOperand);
        }
        let inv = C::<T>::one() / n;
        Ok(self.bar().scale(&inv))
    }

    /// Real coordinates in the basis `{1, e1, e2, e3, i, ie1, ie2, ie3}`.
    pub fn to_real8(&self) -> [T; 8] {
        [
            self.s.re.clone(),
            self.v[0].re.clone(),
            self.v[1].re.clone(),
            self.v[2].re.clone(),
            self.s.im.clone(),
            self.v[0].im.clone(),
            self.v[1].im.clone(),
            self.v[2].im.clone(),
        ]
    }

    pub fn from_real8(x: &[T; 8]) -> Self {
        let z = |a: &T, b: &T| Complex::new(a.clone(), b.clone());
        Biquaternion { s: z(&x[0], &x[4]), v: [z(&x[1], &x[5]), z(&x[2], &x[6]), z(&x[3], &x[7])] }
    }

    /// Basis element `k` of the real basis used by [`to_real8`](Self::to_real8).
    pub fn basis(k: usize) -> Self {
        let mut x: [T; 8] = core::array::from_fn(|_| T::zero());
        x[k] = T::one();
        Self::from_real8(&x)
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.v.iter().all(Zero::is_zero)
    }

    /// Largest absolute value among the eight real coordinates.
    pub fn max_abs(&self) -> f64 {
        self.to_real8().iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn is_bireal(&self) -> bool {
        self.plus() == *self
    }

    pub fn to_f64(&self) -> Biquaternion<f64> {
        let c = |z: &C<T>| Complex::new(z.re.to_f64(), z.im.to_f64());
        Biquaternion { s: c(&self.s), v: [c(&self.v[0]), c(&self.v[1]), c(&self.v[2])] }
    }

    pub fn from_f64(q: &Biquaternion<f64>) -> Self {
        let c = |z: &Complex<f64>| Complex::new(T::from_f64(z.re), T::from_f64(z.im));
        Biquaternion { s: c(&q.s), v: [c(&q.v[0]), c(&q.v[1]), c(&q.v[2])] }
    }

    /// Sesquilinear pairing `⟨x⁺ y⟩`.
    pub fn unitary_product(&self, y: &Self) -> C<T> {
        (self.plus() * y).s
    }

    /// Bilinear pairing `⟨x̄ y⟩`.
    pub fn minkowski_product(&self, y: &Self) -> C<T> {
        (self.bar() * y).s
    }
}

impl Biquaternion<f64> {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).max_abs() <= tol
    }

    /// Exponential via `exp(s) (cos r + v sin(r)/r)` where `r² = v·v` (complex).
    pub fn exp(&self) -> Self {
        let [a, b, c] = &self.v;
        let w = a * a + b * b + c * c; // v² = -w
        let es = self.s.exp();
        let r = w.sqrt();
        let (cos_r, sinc_r) = if r.norm() < 1e-4 {
            let w2 = w * w;
            (
                Complex::new(1.0, 0.0) - w / 2.0 + w2 / 24.0 - w2 * w / 720.0,
                Complex::new(1.0, 0.0) - w / 6.0 + w2 / 120.0 - w2 * w / 5040.0,
            )
        } else {
            (r.cos(), r.sin() / r)
        };
        Biquaternion { s: es * cos_r, v: [es * sinc_r * a, es * sinc_r * b, es * sinc_r * c] }
    }
}

impl<T: Scalar> Add for &Biquaternion<T> {
    type Output = Biquaternion<T>;
    fn add(self, o: Self) -> Biquaternion<T> {
        Biquaternion {
            s: &self.s + &o.s,
            v: [&self.v[0] + &o.v[0], &self.v[1] + &o.v[1], &self.v[2] + &o.v[2]],
        }
    }
}

impl<T: Scalar> Sub for &Biquaternion<T> {
    type Output = Biquaternion<T>;
    fn sub(self, o: Self) -> Biquaternion<T> {
        Biquaternion {
            s: &self.s - &o.s,
            v: [&self.v[0] - &o.v[0], &self.v[1] - &o.v[1], &self.v[2] - &o.v[2]],
        }
    }
}

impl<T: Scalar> Mul for &Biquaternion<T> {
    type Output = Biquaternion<T>;
    fn mul(self, o: Self) -> Biquaternion<T> {
        let (a, u) = (&self.s, &self.v);
        let (b, w) = (&o.s, &o.v);
        let s = a * b - (&u[0] * &w[0] + &u[1] * &w[1] + &u[2] * &w[2]);
        let v = [
            a * &w[0] + b * &u[0] + (&u[1] * &w[2] - &u[2] * &w[1]),
            a * &w[1] + b * &u[1] + (&u[2] * &w[0] - &u[0] * &w[2]),
            a * &w[2] + b * &u[2] + (&u[0] * &w[1] - &u[1] * &w[0]),
        ];
        Biquaternion { s, v }
    }
}

impl<T: Scalar> Neg for &Biquaternion<T> {
    type Output = Biquaternion<T>;
    fn neg(self) -> Biquaternion<T> {
        Biquaternion {
            s: -self.s.clone(),
            v: [-self.v[0].clone(), -self.v[1].clone(), -self.v[2].clone()],
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Biquaternion<T> {
            type Output = Biquaternion<T>;
            fn $m(self, o: Self) -> Biquaternion<T> {
                (&self).$m(&o)
            }
        }
        impl<T: Scalar> $tr<&Biquaternion<T>> for Biquaternion<T> {
            type Output = Biquaternion<T>;
            fn $m(self, o: &Self) -> Biquaternion<T> {
                (&self).$m(o)
            }
        }
        impl<T: Scalar> $tr<Biquaternion<T>> for &Biquaternion<T> {
            type Output = Biquaternion<T>;
            fn $m(self, o: Biquaternion<T>) -> Biquaternion<T> {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Biquaternion<T> {
    type Output = Biquaternion<T>;
    fn neg(self) -> Biquaternion<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Biquaternion<T>> for Biquaternion<T> {
    fn add_assign(&mut self, o: &Self) {
        self.s = &self.s + &o.s;
        for k in 0..3 {
            self.v[k] = &self.v[k] + &o.v[k];
        }
    }
}

impl<T: Scalar> SubAssign<&Biquaternion<T>> for Biquaternion<T> {
    fn sub_assign(&mut self, o: &Self) {
        self.s = &self.s - &o.s;
        for k in 0..3 {
            self.v[k] = &self.v[k] - &o.v[k];
        }
    }
}

/// Product of a sequence of biquaternions, left to right.
pub fn product<T: Scalar>(factors: &[&Biquaternion<T>]) -> Biquaternion<T> {
    factors.iter().fold(Biquaternion::one(), |acc, q| &acc * *q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Biquaternion<Rational>;

    #[test]
    fn hamilton_table() {
        let e = |n| Q::e(n);
        assert_eq!(&e(1) * &e(2), e(3));
        assert_eq!(&e(2) * &e(3), e(1));
        assert_eq!(&e(3) * &e(1), e(2));
        assert_eq!(&e(2) * &e(1), -e(3));
        for n in 1..=3 {
            assert_eq!(&e(n) * &e(n), -Q::one());
        }
    }

    #[test]
    fn conjugations_on_units() {
        let ie1 = Q::e(1).mul_i();
        assert_eq!(ie1.plus(), ie1);
        assert_eq!(Q::e(1).plus(), -Q::e(1));
        assert_eq!(Q::i().star(), -Q::i());
        assert_eq!(Q::e(2).bar(), -Q::e(2));
    }

    #[test]
    fn inverse_basics() {
        assert_eq!(Q::one().inverse().unwrap(), Q::one());
        assert_eq!(Q::e(1).inverse().unwrap(), -Q::e(1));
        let half = Rational::half();
        let sigma = (&Q::one() + &Q::e(3).mul_i()).scale_real(&half);
        assert_eq!(sigma.inverse(), Err(Error::SingularOperand));
        let q = Q::one() + Q::e(1);
        assert_eq!(q.classify(0.0).norm, c_re(Rational::from_i64(2)));
        assert!(!q.classify(0.0).singular);
    }

    #[test]
    fn float_exp_matches_series() {
        let q = Biquaternion::<f64>::from_ints([1, 2, -1, 0, 0, 1, 1, -2]).scale_real(&0.3);
        let mut term = Biquaternion::<f64>::one();
        let mut sum = Biquaternion::<f64>::one();
        for k in 1..40 {
            term = (&term * &q).scale_real(&(1.0 / k as f64));
            sum += &term;
        }
        assert!(q.exp().approx_eq(&sum, 1e-12));
    }
}
