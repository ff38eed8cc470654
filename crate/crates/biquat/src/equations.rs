//! External potentials, plane waves, and the first-order wave equations:
//! the coupled A/B system, the single-field equation `Π̄Ψ = mΨ*`, its isospin
//! doublet, the probability current, and the massive vector potential system.

use alloc::vec::Vec;

use crate::biquaternion::Biquaternion;
use crate::conventions::NablaSpec;
use crate::error::{Error, Result};
use crate::field::{Field, Poly};
use crate::frame::Frame;
use crate::linalg::nullspace;
use crate::lorentz::{act, action_factors, subspace_map, ActionRow, FieldRole, LorentzElement};
use crate::scalar::{Scalar, C};

/// Potential `φ = φ0 − iφ⃗` with coupling `e`; `comps` holds the real scalar
/// fields `(φ0, φ1, φ2, φ3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExternalField<T: Scalar> {
    pub comps: [Field<T>; 4],
    pub phi: Field<T>,
    pub e: T,
}

impl<T: Scalar> ExternalField<T> {
    pub fn zero() -> Self {
        Self::new(core::array::from_fn(|_| Field::zero()), T::zero())
    }

    pub fn new(comps: [Field<T>; 4], e: T) -> Self {
        let mut phi = comps[0].scalar_part();
        for n in 1..4 {
            let unit = Biquaternion::e(n).scale(&C::new(T::zero(), -T::one()));
            phi = &phi + &comps[n].scalar_part().rmul(&unit);
        }
        ExternalField { comps, phi, e }
    }

    pub fn is_free(&self) -> bool {
        self.e.is_zero() || self.phi.is_zero()
    }

    pub fn phi_bar(&self) -> Field<T> {
        self.phi.bar()
    }
}

/// Energy-momentum `(p0, p⃗)` and mass.
#[derive(Clone, Debug, PartialEq)]
pub struct Momentum<T: Scalar> {
    pub p0: T,
    pub p: [T; 3],
    pub m: T,
}

impl<T: Scalar> Momentum<T> {
    pub fn new(p0: T, p: [T; 3], m: T) -> Self {
        Momentum { p0, p, m }
    }

    pub fn shell_defect(&self) -> T {
        let p2 = self.p.iter().fold(T::zero(), |a, x| a + x.clone() * x.clone());
        self.p0.clone() * self.p0.clone() - p2 - self.m.clone() * self.m.clone()
    }

    pub fn on_shell(&self) -> bool {
        let d = self.shell_defect();
        if T::EXACT {
            d.is_zero()
        } else {
            d.abs_f64() <= 1e-12
        }
    }

    /// Phase coefficients `k` with `θ = Σ k_j x_j = p0 t − p⃗·x⃗`.
    pub fn wave_vector(&self) -> [T; 4] {
        [self.p0.clone(), -self.p[0].clone(), -self.p[1].clone(), -self.p[2].clone()]
    }

    /// Bireal four-momentum `p0 − i p⃗`.
    pub fn quaternion(&self) -> Biquaternion<T> {
        crate::conventions::coordinate_quaternion(&[self.p0.clone(), self.p[0].clone(), self.p[1].clone(), self.p[2].clone()])
    }

    pub fn from_quaternion(q: &Biquaternion<T>, m: T) -> Self {
        let c = crate::conventions::coordinate_components(q);
        Momentum { p0: c[0].clone(), p: [c[1].clone(), c[2].clone(), c[3].clone()], m }
    }
}

/// `Z e^{−νθ} = Z cos θ − Zν sin θ` with `θ = k·x`.
pub fn plane_wave<T: Scalar>(k: &[T; 4], z: &Biquaternion<T>, f: &Frame<T>) -> Field<T> {
    Field::wave(k.clone(), Poly::constant(z.clone()), Poly::constant(-(z * &f.nu)))
}

/// Amplitude `Z` if `field` equals `Z e^{−νθ}` exactly (or within `tol` on floats).
pub fn plane_wave_amplitude<T: Scalar>(field: &Field<T>, k: &[T; 4], f: &Frame<T>, tol: f64) -> Option<Biquaternion<T>> {
    if field.is_zero() {
        return Some(Biquaternion::zero());
    }
    let probe = plane_wave(k, &Biquaternion::one(), f);
    let canon = &probe.modes()[0].k;
    let mode = field.modes().iter().find(|m| &m.k == canon)?;
    let z = mode.cos.terms().find(|(m, _)| **m == [0; 4]).map(|(_, q)| q.clone()).unwrap_or_else(Biquaternion::zero);
    (field - &plane_wave(k, &z, f)).is_zero_within(tol).then_some(z)
}

/// `(∇̄A − eφ̄A − mB, ∇B − eφB − mA)`.
pub fn lanczos_residual<T: Scalar>(a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>, m: &T) -> (Field<T>, Field<T>) {
    lanczos_residual_with(&NablaSpec::SELECTED, a, b, ext, m)
}

pub fn lanczos_residual_with<T: Scalar>(candidate: &NablaSpec, a: &Field<T>, b: &Field<T>, ext: &ExternalField<T>, m: &T) -> (Field<T>, Field<T>) {
    let e = &ext.e;
    let ra = &(&candidate.apply_bar(a) - &(&ext.phi_bar() * a).scale_real(e)) - &b.scale_real(m);
    let rb = &(&candidate.apply(b) - &(&ext.phi * b).scale_real(e)) - &a.scale_real(m);
    (ra, rb)
}

/// `Π̄(X) = ∇̄X iν − eφ̄X`.
pub fn pi_bar<T: Scalar>(x: &Field<T>, ext: &ExternalField<T>, f: &Frame<T>) -> Field<T> {
    pi_bar_with(&NablaSpec::SELECTED, x, ext, f)
}

pub fn pi_bar_with<T: Scalar>(candidate: &NablaSpec, x: &Field<T>, ext: &ExternalField<T>, f: &Frame<T>) -> Field<T> {
    &candidate.apply_bar(x).rmul(&f.nu.mul_i()) - &(&ext.phi_bar() * x).scale_real(&ext.e)
}

/// `Π(X) = ∇X iν − eφX`.
pub fn pi<T: Scalar>(x: &Field<T>, ext: &ExternalField<T>, f: &Frame<T>) -> Field<T> {
    &NablaSpec::SELECTED.apply(x).rmul(&f.nu.mul_i()) - &(&ext.phi * x).scale_real(&ext.e)
}

/// `Π̄Ψ − mΨ*`.
pub fn dirac_lanczos_residual<T: Scalar>(psi: &Field<T>, ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> Field<T> {
    &pi_bar(psi, ext, f) - &psi.star().scale_real(m)
}

/// `∇∇̄Ψ − m²Ψ`.
pub fn kg_residual<T: Scalar>(psi: &Field<T>, m: &T) -> Field<T> {
    let s = NablaSpec::SELECTED;
    &s.apply(&s.apply_bar(psi)) - &psi.scale_real(&(m.clone() * m.clone()))
}

/// Real 8×8 matrix of `Z ↦ amplitude of (Π̄ − m(·)*)(Z e^{−νθ})` at `e = 0`, built by
/// applying the field operator to plane waves.
pub fn dirac_symbol<T: Scalar>(candidate: &NablaSpec, k: &[T; 4], m: &T, f: &Frame<T>) -> Vec<Vec<T>> {
    let free = ExternalField::zero();
    let mut cols = Vec::with_capacity(8);
    for b in 0..8 {
        let psi = plane_wave(k, &Biquaternion::basis(b), f);
        let r = &pi_bar_with(candidate, &psi, &free, f) - &psi.star().scale_real(m);
        let z = plane_wave_amplitude(&r, k, f, 1e-12).expect("symbol keeps the plane-wave form");
        cols.push(z.to_real8());
    }
    (0..8).map(|r| (0..8).map(|c| cols[c][r].clone()).collect()).collect()
}

pub fn dirac_symbol_nullspace<T: Scalar>(candidate: &NablaSpec, k: &[T; 4], m: &T, f: &Frame<T>) -> Vec<Biquaternion<T>> {
    nullspace(&dirac_symbol(candidate, k, m, f), 8, 1e-10)
        .into_iter()
        .map(|v| Biquaternion::from_real8(&core::array::from_fn(|i| v[i].clone())))
        .collect()
}

/// Amplitudes `Z` such that `Z e^{−νθ}` solves the free single-field equation.
pub fn plane_wave_solutions<T: Scalar>(p: &Momentum<T>, f: &Frame<T>) -> Result<Vec<Biquaternion<T>>> {
    if p.m.abs_f64() == 0.0 {
        return Err(Error::DegenerateMass);
    }
    if !p.on_shell() {
        return Err(Error::OffShell);
    }
    Ok(dirac_symbol_nullspace(&NablaSpec::SELECTED, &p.wave_vector(), &p.m, f))
}

/// `(A0 e^{−νθ}, B0 e^{−νθ})` with `B0 = −N̄A0ν/m`, `N̄ = Σ n̄_j k_j`; solves the free
/// A/B system for every `A0` when `p` is on shell.
pub fn lanczos_plane_wave<T: Scalar>(p: &Momentum<T>, a0: &Biquaternion<T>, f: &Frame<T>) -> Result<(Field<T>, Field<T>)> {
    if p.m.is_zero() {
        return Err(Error::DegenerateMass);
    }
    if !p.on_shell() {
        return Err(Error::OffShell);
    }
    let k = p.wave_vector();
    let nb = NablaSpec::SELECTED.symbol(&k).bar();
    let b0 = (&(&nb * a0) * &f.nu).scale_real(&(-T::one() / p.m.clone()));
    Ok((plane_wave(&k, a0, f), plane_wave(&k, &b0, f)))
}

/// `(Aσ + B*σ̄, (Aσ̄ − B*σ) iτν)`.
pub fn build_doublet<T: Scalar>(a: &Field<T>, b: &Field<T>, f: &Frame<T>) -> (Field<T>, Field<T>) {
    let bs = b.star();
    let plus = &a.rmul(&f.sigma) + &bs.rmul(&f.sigma_bar);
    let itn = (&f.tau * &f.nu).mul_i();
    let minus = (&a.rmul(&f.sigma_bar) - &bs.rmul(&f.sigma)).rmul(&itn);
    (plus, minus)
}

/// Conserved current `ΨΨ⁺`.
pub fn current<T: Scalar>(psi: &Field<T>) -> Field<T> {
    psi * &psi.plus()
}

/// The reversed product `Ψ⁺Ψ`, kept for comparison.
pub fn current_reversed<T: Scalar>(psi: &Field<T>) -> Field<T> {
    &psi.plus() * psi
}

/// `⟨∇̄c⟩`.
pub fn divergence_scalar<T: Scalar>(c: &Field<T>) -> Field<T> {
    NablaSpec::SELECTED.apply_bar(c).scalar_part()
}

/// Six-vector `B = ∇̄∧A`, the vector part of `∇̄A`.
pub fn proca_bivector<T: Scalar>(a: &Field<T>) -> Field<T> {
    NablaSpec::SELECTED.apply_bar(a).vector_part()
}

/// Residuals `(B − ∇̄∧A, ½(∇B + B~∇) − m²A)` with `B~ = B*`, the reversal of a six-vector
/// up to sign.
pub fn proca_residual<T: Scalar>(a: &Field<T>, b: &Field<T>, m: &T) -> (Field<T>, Field<T>) {
    let s = NablaSpec::SELECTED;
    let first = b - &proca_bivector(a);
    let half = T::half();
    let second = &(&s.apply(b) + &s.apply_right(&b.star())).scale_real(&half) - &a.scale_real(&(m.clone() * m.clone()));
    (first, second)
}

/// Proca residual with `B` computed from the potential.
pub fn proca_potential_residual<T: Scalar>(a: &Field<T>, m: &T) -> Field<T> {
    proca_residual(a, &proca_bivector(a), m).1
}

/// Symbol of the free A/B system on `(A, B) e^{−iθ}`: `(P̄A − mB, PB − mA)` for a
/// bireal momentum quaternion `P`.
pub fn lanczos_symbol<T: Scalar>(p: &Biquaternion<T>, a: &Biquaternion<T>, b: &Biquaternion<T>, m: &T) -> (Biquaternion<T>, Biquaternion<T>) {
    (&(&p.bar() * a) - &b.scale_real(m), &(p * b) - &a.scale_real(m))
}

/// Deviation of the transformed symbol from `(L* r_A R, L r_B R)`, where the pair is
/// moved by a row's action, `P ↦ LPL⁺` and `R` is the right factor of the A-law.
pub fn symbol_equivariance_defect<T: Scalar>(
    row: ActionRow,
    lt: &LorentzElement<T>,
    p: &Biquaternion<T>,
    a: &Biquaternion<T>,
    b: &Biquaternion<T>,
    m: &T,
    f: &Frame<T>,
) -> f64 {
    let l = &lt.l;
    let a = subspace_map(row, FieldRole::A, f)(a);
    let b = subspace_map(row, FieldRole::B, f)(b);
    let (ra, rb) = lanczos_symbol(p, &a, &b, m);
    let p2 = &(l * p) * &l.plus();
    let (ra2, rb2) = lanczos_symbol(&p2, &act(row, FieldRole::A, lt, &a, f), &act(row, FieldRole::B, lt, &b, f), m);
    let (_, right) = action_factors(row, FieldRole::A, lt, f);
    let ea = &ra2 - &(&(&l.star() * &ra) * &right);
    let eb = &rb2 - &(&(l * &rb) * &right);
    ea.max_abs().max(eb.max_abs())
}

/// Gauge transformation with `χ = Σ c_j x_j`: `Ψ ↦ Ψ exp(eχν)`,
/// `φ0 ↦ φ0 − ∂0χ`, `φn ↦ φn + ∂nχ`.
pub fn gauge_transform<T: Scalar>(psi: &Field<T>, ext: &ExternalField<T>, c: &[T; 4], f: &Frame<T>) -> (Field<T>, ExternalField<T>) {
    let k: [T; 4] = core::array::from_fn(|j| ext.e.clone() * c[j].clone());
    let phase = Field::wave(k, Poly::constant(Biquaternion::one()), Poly::constant(f.nu.clone()));
    let shift = |j: usize, s: i64| &ext.comps[j] + &Field::constant(Biquaternion::one().scale_real(&(c[j].clone() * T::from_i64(s))));
    let comps = [shift(0, -1), shift(1, 1), shift(2, 1), shift(3, 1)];
    (psi * &phase, ExternalField::new(comps, ext.e.clone()))
}
