//! Suite bodies, grouped by subject.

use biquat::equations::{ExternalField, Momentum};
use biquat::field::Field;
use biquat::lorentz::LorentzElement;
use biquat::{Biquaternion, Frame, Scalar, C};
use rand::Rng;
use serde_json::{json, Value};

use crate::registry::Suite;

pub mod algebra;
pub mod covariants;
pub mod fields;
pub mod lorentz;
pub mod rs;
pub mod spin;

/// Every registered suite, in report order.
pub fn all() -> Vec<Suite> {
    let mut v = Vec::new();
    v.extend(algebra::suites());
    v.extend(spin::suites());
    v.extend(fields::suites());
    v.extend(lorentz::suites());
    v.extend(rs::suites());
    v.extend(covariants::suites());
    v
}

pub(crate) fn q<T: Scalar>(n: i64, d: i64) -> T {
    T::from_ratio(n, d)
}

pub(crate) fn cplx<T: Scalar>(re: i64, im: i64) -> C<T> {
    C::new(T::from_i64(re), T::from_i64(im))
}

/// Standard frame and two rotated frames with rational entries.
pub(crate) fn frames<T: Scalar>() -> Vec<Frame<T>> {
    let mut v = vec![Frame::standard()];
    for r in [[1, 2, 2, 4], [2, -1, 2, 0]] {
        v.push(biquat::frame::rotated_frame(r).expect("nonzero quaternion"));
    }
    v
}

pub(crate) fn bq_json<T: Scalar>(b: &Biquaternion<T>) -> Value {
    json!(b.to_real8().iter().map(Scalar::to_f64).collect::<Vec<_>>())
}

pub(crate) fn c_json<T: Scalar>(z: &C<T>) -> Value {
    json!([z.re.to_f64(), z.im.to_f64()])
}

pub(crate) fn c_abs<T: Scalar>(z: &C<T>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

pub(crate) fn mom<T: Scalar>(p0: (i64, i64), p: [(i64, i64); 3], m: i64) -> Momentum<T> {
    Momentum::new(q(p0.0, p0.1), p.map(|(n, d)| q(n, d)), T::from_i64(m))
}

/// On-shell momenta with rational components and unit mass.
pub(crate) fn momenta<T: Scalar>() -> Vec<Momentum<T>> {
    vec![
        mom((1, 1), [(0, 1), (0, 1), (0, 1)], 1),
        mom((2, 1), [(1, 1), (1, 1), (1, 1)], 1),
        mom((5, 4), [(3, 4), (0, 1), (0, 1)], 1),
        mom((3, 1), [(2, 1), (2, 1), (0, 1)], 1),
    ]
}

/// Exact Lorentz transformations: a pure boost and two boost-rotation products.
pub(crate) fn lorentz_samples<T: Scalar>() -> Vec<LorentzElement<T>> {
    let r = T::from_ratio;
    let z = || T::zero();
    let boost = |c: T, s: T, b: [T; 3]| Biquaternion::new(C::new(c, z()), b.map(|x| C::new(z(), x * s.clone())));
    let rot = |v: [i64; 4], n: i64| Biquaternion::real(r(v[0], n), r(v[1], n), r(v[2], n), r(v[3], n));
    vec![
        LorentzElement::from_parts(boost(r(5, 4), r(3, 4), [r(1, 1), z(), z()]), Biquaternion::one()),
        LorentzElement::from_parts(boost(r(13, 12), r(5, 12), [z(), r(3, 5), r(4, 5)]), rot([1, 2, 2, 4], 5)),
        LorentzElement::from_parts(boost(r(17, 8), r(15, 8), [r(2, 3), r(2, 3), r(1, 3)]), rot([2, -1, 2, 0], 3)),
    ]
}

/// The base momenta pushed through every sample transformation.
pub(crate) fn boosted_momenta<T: Scalar>() -> Vec<Momentum<T>> {
    let mut v = Vec::new();
    for lt in lorentz_samples::<T>() {
        for p in momenta::<T>() {
            let pq = &(&lt.l * &p.quaternion()) * &lt.l.plus();
            v.push(Momentum::from_quaternion(&pq, p.m.clone()));
        }
    }
    v
}

pub(crate) fn random_ext<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize, e: i64) -> ExternalField<T> {
    let comps: [Field<T>; 4] = core::array::from_fn(|_| biquat::sample::real_scalar_poly(rng, degree, 2));
    ExternalField::new(comps, T::from_i64(e))
}
