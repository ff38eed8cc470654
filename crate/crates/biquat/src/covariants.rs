//! Bilinear covariants of a pair `(A, B)`, their divergences and the Lagrangian
//! density of the A/B system.

use rand::Rng;

use crate::biquaternion::Biquaternion;
use crate::conventions::nabla_bar;
use crate::equations::{lanczos_residual, ExternalField};
use crate::field::Field;
use crate::frame::Frame;
use crate::lorentz::{act, ActionRow, FieldRole, LorentzElement};
use crate::scalar::{Scalar, C};

#[derive(Clone, Debug, PartialEq)]
pub struct CovariantSet<T: Scalar> {
    /// `AA⁺ + (BB⁺)‾`.
    pub c: Field<T>,
    /// `AA⁺ − (BB⁺)‾`.
    pub sigma: Field<T>,
    /// `AB⁺ − (AB⁺)‾`.
    pub six: Field<T>,
    /// `⟨A⁺B⟩`.
    pub inv: Field<T>,
    /// `AĀ + BB̄`.
    pub s_p: Field<T>,
    /// `AĀ − BB̄`.
    pub s_a: Field<T>,
    /// `AB̄ + (AB̄)⁺`.
    pub v_p: Field<T>,
    /// `AB̄ − (AB̄)⁺`.
    pub v_a: Field<T>,
}

pub fn covariants<T: Scalar>(a: &Field<T>, b: &Field<T>) -> CovariantSet<T> {
    let aa = a * &a.plus();
    let bb = (b * &b.plus()).bar();
    let ab = a * &b.plus();
    let abb = a * &b.bar();
    let s1 = a * &a.bar();
    let s2 = b * &b.bar();
    CovariantSet {
        c: &aa + &bb,
        sigma: &aa - &bb,
        six: &ab - &ab.bar(),
        inv: (&a.plus() * b).scalar_part(),
        s_p: &s1 + &s2,
        s_a: &s1 - &s2,
        v_p: &abb + &abb.plus(),
        v_a: &abb - &abb.plus(),
    }
}

/// Pointwise covariants of constant amplitudes.
pub fn covariants_at<T: Scalar>(a: &Biquaternion<T>, b: &Biquaternion<T>) -> CovariantSet<T> {
    covariants(&Field::constant(a.clone()), &Field::constant(b.clone()))
}

/// `T₁₂ = ⟨A₁B₂⁺⟩`.
pub fn amplitude<T: Scalar>(a1: &Biquaternion<T>, b2: &Biquaternion<T>) -> C<T> {
    (a1 * &b2.plus()).scalar_part()
}

fn re<T: Scalar>(s: &Field<T>) -> Field<T> {
    (s + &s.star()).scale_real(&T::from_ratio(1, 2))
}

/// `½⟨A⁺(∇̄ − eφ̄)A − mA⁺B + B⁺(∇ − eφ)B − mB⁺A + (…)⁺⟩`, a real scalar field.
pub fn lagrangian_density<T: Scalar>(a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>, m: &T) -> Field<T> {
    let e = &ext.e;
    let da = &nabla_bar(a) - &(&ext.phi_bar() * a).scale_real(e);
    let db = &crate::conventions::nabla(b) - &(&ext.phi * b).scale_real(e);
    let bulk = &(&(&a.plus() * &da) - &(&a.plus() * b).scale_real(m)) + &(&(&b.plus() * &db) - &(&b.plus() * a).scale_real(m));
    re(&bulk.scalar_part())
}

/// Both sides of the divergence laws of `V_P` and `V_A`.
///
/// With `r_A, r_B` the residuals of the A/B system and `c = ⟨r_A B̄ + A r̄_B⟩`:
/// `⟨∇̄V_P⟩ = m(S_P − S_P*) + 2e⟨φ̄V_A⟩ + (c − c*)` and
/// `⟨∇̄V_A⟩ = m(S_P + S_P*) + 2e⟨φ̄V_P⟩ + (c + c*)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceIdentities<T: Scalar> {
    pub vp_lhs: Field<T>,
    pub va_lhs: Field<T>,
    /// Right-hand sides without the residual terms.
    pub vp_rhs: Field<T>,
    pub va_rhs: Field<T>,
    /// `(c − c*, c + c*)`, zero on solutions.
    pub correction_terms: (Field<T>, Field<T>),
    /// `lhs − rhs − correction`, identically zero.
    pub vp_residual: Field<T>,
    pub va_residual: Field<T>,
}

pub fn divergence_identities<T: Scalar>(a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>, m: &T) -> DivergenceIdentities<T> {
    let cov = covariants(a, b);
    let (ra, rb) = lanczos_residual(a, b, ext, m);
    let c = (&(&ra * &b.bar()) + &(a * &rb.bar())).scalar_part();
    let two_e = ext.e.clone() + ext.e.clone();
    let phb = ext.phi_bar();
    let vp_lhs = nabla_bar(&cov.v_p).scalar_part();
    let va_lhs = nabla_bar(&cov.v_a).scalar_part();
    let vp_rhs = &(&cov.s_p - &cov.s_p.star()).scale_real(m) + &(&phb * &cov.v_a).scalar_part().scale_real(&two_e);
    let va_rhs = &(&cov.s_p + &cov.s_p.star()).scale_real(m) + &(&phb * &cov.v_p).scalar_part().scale_real(&two_e);
    let corr = (&c - &c.star(), &c + &c.star());
    let vp_residual = &(&vp_lhs - &vp_rhs) - &corr.0;
    let va_residual = &(&va_lhs - &va_rhs) - &corr.1;
    DivergenceIdentities { vp_lhs, va_lhs, vp_rhs, va_rhs, correction_terms: corr, vp_residual, va_residual }
}

/// The divergence laws in the stated form,
/// `(2 Im S_P − 2e⟨φV_P⟩, 2 Re S_P − 2e⟨φV_A⟩)`.
pub fn literal_divergence_rhs<T: Scalar>(a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>) -> (Field<T>, Field<T>) {
    let cov = covariants(a, b);
    let two_e = ext.e.clone() + ext.e.clone();
    // 2 Im s = −i(s − s*)
    let im2 = (&cov.s_p - &cov.s_p.star()).scale(&C::new(T::zero(), -T::one()));
    let re2 = &cov.s_p + &cov.s_p.star();
    (
        &im2 - &(&ext.phi * &cov.v_p).scalar_part().scale_real(&two_e),
        &re2 - &(&ext.phi * &cov.v_a).scalar_part().scale_real(&two_e),
    )
}

/// `⟨∇̄C⟩ = 2i Im(⟨r_A A⁺⟩ + ⟨r_B B⁺⟩)`; returns `(lhs, rhs)`.
pub fn current_divergence<T: Scalar>(a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>, m: &T) -> (Field<T>, Field<T>) {
    let cov = covariants(a, b);
    let (ra, rb) = lanczos_residual(a, b, ext, m);
    let w = (&(&ra * &a.plus()) + &(&rb * &b.plus())).scalar_part();
    (nabla_bar(&cov.c).scalar_part(), &w - &w.star())
}

/// Largest deviation from the expected transformation character of each covariant.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CovarianceCharacters {
    /// Spin-3/2^L action: `S_P`, `S_A` invariant.
    pub s_invariance: f64,
    /// Spin-3/2^L action: `V_P`, `V_A` map to `LVL⁺`.
    pub v_four_vector: f64,
    /// Spin-3/2^L action: `T₁₂` invariant.
    pub amplitude_invariance: f64,
    /// Spin-½ rows: `C`, `Σ` map to `LCL⁺`.
    pub c_four_vector: f64,
    /// Spin-½ rows: the six-vector maps to `LXL̄`.
    pub six_vector: f64,
    /// Spin-½ rows: `⟨A⁺B⟩` invariant.
    pub inv_invariance: f64,
}

impl CovarianceCharacters {
    pub fn max(&self) -> f64 {
        [self.s_invariance, self.v_four_vector, self.amplitude_invariance, self.c_four_vector, self.six_vector, self.inv_invariance]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn rand_bq<R: Rng + ?Sized>(rng: &mut R) -> Biquaternion<f64> {
    Biquaternion::from_real8(&core::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

fn at(f: &Field<f64>) -> Biquaternion<f64> {
    f.eval(&[0.0; 4])
}

fn dev(a: &Biquaternion<f64>, b: &Biquaternion<f64>) -> f64 {
    (a - b).max_abs() / (1.0 + b.max_abs())
}

/// Checks the transformation character of every covariant on random amplitudes.
pub fn covariance_characters<R: Rng + ?Sized>(lt: &LorentzElement<f64>, f: &Frame<f64>, rng: &mut R, samples: usize) -> CovarianceCharacters {
    let l = &lt.l;
    let lp = l.plus();
    let lb = l.bar();
    let mut out = CovarianceCharacters::default();
    let up = |x: &mut f64, v: f64| *x = x.max(v);
    for _ in 0..samples {
        let (a, b) = (rand_bq(rng), rand_bq(rng));
        let row = ActionRow::ThreeHalfL;
        let (a2, b2) = (act(row, FieldRole::A, lt, &a, f), act(row, FieldRole::B, lt, &b, f));
        let (k0, k1) = (covariants_at(&a, &b), covariants_at(&a2, &b2));
        up(&mut out.s_invariance, dev(&at(&k1.s_p), &at(&k0.s_p)).max(dev(&at(&k1.s_a), &at(&k0.s_a))));
        let tv = |x: &Field<f64>| &(l * &at(x)) * &lp;
        up(&mut out.v_four_vector, dev(&at(&k1.v_p), &tv(&k0.v_p)).max(dev(&at(&k1.v_a), &tv(&k0.v_a))));
        let t0 = amplitude(&a, &b);
        let t1 = amplitude(&a2, &b2);
        up(&mut out.amplitude_invariance, (t1 - t0).norm() / (1.0 + t0.norm()));
        for row in [ActionRow::HalfPlus, ActionRow::HalfMinus] {
            let proj = if row == ActionRow::HalfPlus { &f.sigma } else { &f.sigma_bar };
            let (a, b) = (&a * proj, &b * proj);
            let (a2, b2) = (act(row, FieldRole::A, lt, &a, f), act(row, FieldRole::B, lt, &b, f));
            let (k0, k1) = (covariants_at(&a, &b), covariants_at(&a2, &b2));
            up(&mut out.c_four_vector, dev(&at(&k1.c), &tv(&k0.c)).max(dev(&at(&k1.sigma), &tv(&k0.sigma))));
            up(&mut out.six_vector, dev(&at(&k1.six), &(&(l * &at(&k0.six)) * &lb)));
            up(&mut out.inv_invariance, dev(&at(&k1.inv), &at(&k0.inv)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};

    #[test]
    fn unit_pair() {
        let one = Field::<Rational>::constant(Biquaternion::one());
        let k = covariants(&one, &one);
        assert_eq!(k.c, Field::constant(Biquaternion::real(Rational::from_i64(2), Rational::zero(), Rational::zero(), Rational::zero())));
        assert!(k.sigma.is_zero());
        assert_eq!(k.s_p, k.c);
        assert_eq!(amplitude(&Biquaternion::<Rational>::one(), &Biquaternion::one()), C::new(Rational::one(), Rational::zero()));
    }
}
