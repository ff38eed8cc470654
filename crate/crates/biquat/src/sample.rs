//! Random integer-coefficient biquaternions and fields for identity checks.

use rand::Rng;

use crate::biquaternion::Biquaternion;
use crate::field::{Field, Monomial, Poly};
use crate::scalar::{Scalar, C};

pub fn monomials(degree: usize) -> impl Iterator<Item = Monomial> {
    let d = degree as u8;
    (0..=d).flat_map(move |a| {
        (0..=d - a).flat_map(move |b| (0..=d - a - b).flat_map(move |c| (0..=d - a - b - c).map(move |e| [a, b, c, e])))
    })
}

pub fn int_bq<T: Scalar, R: Rng + ?Sized>(rng: &mut R, range: i64) -> Biquaternion<T> {
    Biquaternion::from_ints(core::array::from_fn(|_| rng.gen_range(-range..=range)))
}

/// Polynomial field with every monomial up to `degree` present with probability `density`.
pub fn poly_field<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize, range: i64, density: f64) -> Field<T> {
    let mut p = Poly::zero();
    for m in monomials(degree) {
        if rng.gen_bool(density) {
            p.add_term(m, int_bq(rng, range));
        }
    }
    Field::from_poly(p)
}

/// Real scalar polynomial.
pub fn real_scalar_poly<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize, range: i64) -> Field<T> {
    let mut p = Poly::zero();
    for m in monomials(degree) {
        let c = rng.gen_range(-range..=range);
        p.add_term(m, Biquaternion::scalar(C::new(T::from_i64(c), T::zero())));
    }
    Field::from_poly(p)
}

/// Real scalar polynomial whose monomials all have exactly `degree`.
pub fn homogeneous_real_poly<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize, range: i64) -> Field<T> {
    let mut p = Poly::zero();
    for m in monomials(degree).filter(|m| m.iter().map(|&x| x as usize).sum::<usize>() == degree) {
        let c = rng.gen_range(-range..=range);
        p.add_term(m, Biquaternion::scalar(C::new(T::from_i64(c), T::zero())));
    }
    Field::from_poly(p)
}

/// Deterministic dense polynomial field touching every monomial and all eight directions.
pub fn fixed_poly_field<T: Scalar>(degree: usize) -> Field<T> {
    let mut p = Poly::zero();
    for (i, m) in monomials(degree).enumerate() {
        let c: [i64; 8] = core::array::from_fn(|k| ((i * 7 + k * 3) % 5) as i64 - 2);
        p.add_term(m, Biquaternion::from_ints(c));
    }
    Field::from_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(4).count(), 70);
        assert_eq!(monomials(0).count(), 1);
    }
}
