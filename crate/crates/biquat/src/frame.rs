//! Spin frames `(ν, τ)` and the Peirce decomposition `ξ = x1 σ + x2 τσ + x3 σ̄ + x4 τσ̄`.

use num_traits::{One, Zero};

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::scalar::{c_re, Scalar, C};

/// Orthonormal pair of real unit vectors with the derived idempotent basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<T: Scalar> {
    pub nu: Biquaternion<T>,
    pub tau: Biquaternion<T>,
    pub sigma: Biquaternion<T>,
    pub sigma_bar: Biquaternion<T>,
    pub tau_sigma: Biquaternion<T>,
    pub tau_sigma_bar: Biquaternion<T>,
}

/// Complex coordinates in the basis `{σ, τσ, σ̄, τσ̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeirceCoords<T: Scalar> {
    pub x1: C<T>,
    pub x2: C<T>,
    pub x3: C<T>,
    pub x4: C<T>,
}

fn dot<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn near<T: Scalar>(x: T, target: i64, tol: f64) -> bool {
    let d = x - T::from_i64(target);
    if T::EXACT {
        d.is_zero()
    } else {
        d.abs_f64() <= tol
    }
}

/// Builds a frame from the quantization axis `nu` and a perpendicular unit vector `tau`.
pub fn make_frame<T: Scalar>(nu: [T; 3], tau: [T; 3]) -> Result<Frame<T>> {
    let tol = 1e-12;
    if !near(dot(&nu, &nu), 1, tol) || !near(dot(&tau, &tau), 1, tol) || !near(dot(&nu, &tau), 0, tol) {
        return Err(Error::InvalidFrame);
    }
    let nu = Biquaternion::real_vector(nu);
    let tau = Biquaternion::real_vector(tau);
    let half = T::half();
    let sigma = (&Biquaternion::one() + &nu.mul_i()).scale_real(&half);
    let sigma_bar = sigma.bar();
    let tau_sigma = &tau * &sigma;
    let tau_sigma_bar = &tau * &sigma_bar;
    Ok(Frame { nu, tau, sigma, sigma_bar, tau_sigma, tau_sigma_bar })
}

impl<T: Scalar> Frame<T> {
    /// `(ν, τ) = (e3, e1)`.
    pub fn standard() -> Self {
        let (o, z) = (T::one(), T::zero);
        make_frame([z(), z(), o.clone()], [o, z(), z()]).expect("standard frame is orthonormal")
    }

    /// Ordered triad `(τν, τ, ν)` against which rotation axes are projected.
    pub fn triad(&self) -> [Biquaternion<T>; 3] {
        [&self.tau * &self.nu, self.tau.clone(), self.nu.clone()]
    }

    pub fn to_f64(&self) -> Frame<f64> {
        let v = |q: &Biquaternion<T>| [q.v[0].re.to_f64(), q.v[1].re.to_f64(), q.v[2].re.to_f64()];
        make_frame(v(&self.nu), v(&self.tau)).expect("frame conversion preserves orthonormality")
    }

    pub fn peirce_decompose(&self, q: &Biquaternion<T>) -> PeirceCoords<T> {
        let two = c_re(T::from_i64(2));
        let qs = q * &self.sigma;
        let qsb = q * &self.sigma_bar;
        PeirceCoords {
            x1: &two * qs.s.clone(),
            x2: -(&two * (&self.tau * &qs).s),
            x3: &two * qsb.s.clone(),
            x4: -(&two * (&self.tau * &qsb).s),
        }
    }

    pub fn peirce_compose(&self, c: &PeirceCoords<T>) -> Biquaternion<T> {
        let mut q = self.sigma.scale(&c.x1);
        q += &self.tau_sigma.scale(&c.x2);
        q += &self.sigma_bar.scale(&c.x3);
        q += &self.tau_sigma_bar.scale(&c.x4);
        q
    }

    /// Peirce basis in the order `σ, τσ, σ̄, τσ̄`.
    pub fn peirce_basis(&self) -> [Biquaternion<T>; 4] {
        [self.sigma.clone(), self.tau_sigma.clone(), self.sigma_bar.clone(), self.tau_sigma_bar.clone()]
    }
}

impl<T: Scalar> PeirceCoords<T> {
    pub fn new(x1: C<T>, x2: C<T>, x3: C<T>, x4: C<T>) -> Self {
        PeirceCoords { x1, x2, x3, x4 }
    }

    pub fn as_array(&self) -> [C<T>; 4] {
        [self.x1.clone(), self.x2.clone(), self.x3.clone(), self.x4.clone()]
    }

    pub fn unit(k: usize) -> Self {
        let mut x: [C<T>; 4] = core::array::from_fn(|_| C::zero());
        x[k] = C::one();
        let [x1, x2, x3, x4] = x;
        PeirceCoords { x1, x2, x3, x4 }
    }
}

/// Rotation matrix of the integer quaternion `q` (Cayley form), exact over the rationals.
/// Returns `None` for the zero quaternion.
pub fn rational_rotation<T: Scalar>(q: [i64; 4]) -> Option<[[T; 3]; 3]> {
    let [a, b, c, d] = q;
    let n = a * a + b * b + c * c + d * d;
    if n == 0 {
        return None;
    }
    let r = |x: i64| T::from_ratio(x, n);
    Some([
        [r(a * a + b * b - c * c - d * d), r(2 * (b * c - a * d)), r(2 * (b * d + a * c))],
        [r(2 * (b * c + a * d)), r(a * a - b * b + c * c - d * d), r(2 * (c * d - a * b))],
        [r(2 * (b * d - a * c)), r(2 * (c * d + a * b)), r(a * a - b * b - c * c + d * d)],
    ])
}

/// Frame obtained by rotating the standard frame with [`rational_rotation`].
pub fn rotated_frame<T: Scalar>(q: [i64; 4]) -> Option<Frame<T>> {
    let m = rational_rotation::<T>(q)?;
    let col = |j: usize| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()];
    make_frame(col(2), col(0)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Biquaternion<Rational>;

    #[test]
    fn standard_frame_relations() {
        let f = Frame::<Rational>::standard();
        assert_eq!(&f.sigma * &f.sigma, f.sigma);
        assert!((&f.sigma * &f.sigma_bar).is_zero());
        let n = &f.sigma_bar * &f.tau;
        assert!((&n * &n).is_zero());
        assert_eq!(&f.nu * &f.sigma, (&f.sigma * &f.nu));
        assert_eq!(&f.nu * &f.sigma, -f.sigma.mul_i());
        assert_eq!(f.triad()[0], -Q::e(2));
    }

    #[test]
    fn invalid_frames() {
        let z = || Rational::from_i64(0);
        let o = || Rational::from_i64(1);
        assert_eq!(make_frame([z(), z(), o()], [z(), z(), o()]), Err(Error::InvalidFrame));
        assert_eq!(make_frame([z(), z(), o() + o()], [o(), z(), z()]), Err(Error::InvalidFrame));
    }

    #[test]
    fn peirce_examples() {
        let f = Frame::<Rational>::standard();
        assert_eq!(f.peirce_decompose(&f.sigma), PeirceCoords::unit(0));
        let one = f.peirce_decompose(&Q::one());
        assert_eq!(one.as_array(), [C::one(), C::zero(), C::one(), C::zero()]);
    }

    #[test]
    fn rotated_frames_are_exact() {
        let f = rotated_frame::<Rational>([1, 2, -3, 1]).unwrap();
        assert_eq!(&f.nu * &f.nu, -Q::one());
        assert_eq!(&f.sigma * &f.sigma, f.sigma);
        assert!(rotated_frame::<Rational>([0, 0, 0, 0]).is_none());
    }
}
