//! The vector-spinor system `Ψ_μ`: index operators, the free system with its
//! constraints, the coupled equation with parameter `g` and the reduction of its
//! contractions.
//!
//! Shorthand used throughout, for an arbitrary four-tuple `Ψ_λ`:
//! `Z = ε̄^λΨ_λ`, `D = π^λΨ_λ`, `T = Φ̃(ε̄^λ)Ψ_λ iν`, `W(Y) = −e(∇̄φ)Y iν`,
//! `E'_μ = Π̄Ψ_μ − mΨ_μ*` and `E_μ` the coupled-equation row. Every relation
//! below is an identity of differential operators checked in normal form.

use alloc::vec::Vec;

use crate::biquaternion::Biquaternion;
use crate::conventions::{eps_lo, eps_up, eps_up_bar, NablaSpec, D_LO, D_UP, PHI_LO, PHI_UP};
use crate::diffop::{apply_row, contract, rows_distance, DiffOp, RsOp, RsRow};
use crate::equations::{plane_wave, plane_wave_amplitude, ExternalField, Momentum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::frame::Frame;
use crate::linalg;
use crate::lorentz::LorentzElement;
use crate::scalar::Scalar;

/// Four-tuple `Ψ_μ`, `μ = 0..3`.
pub type RsField<T> = [Field<T>; 4];

/// The units `ε_μ`, `ε^μ` and `ε̄^μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsUnits<T: Scalar> {
    pub lo: [Biquaternion<T>; 4],
    pub up: [Biquaternion<T>; 4],
    pub up_bar: [Biquaternion<T>; 4],
}

impl<T: Scalar> EpsUnits<T> {
    pub fn new() -> Self {
        EpsUnits {
            lo: core::array::from_fn(eps_lo),
            up: core::array::from_fn(eps_up),
            up_bar: core::array::from_fn(eps_up_bar),
        }
    }

    /// `Σ_μ ε̄^μ ε_μ`.
    pub fn trace(&self) -> Biquaternion<T> {
        (0..4).fold(Biquaternion::zero(), |acc, mu| &acc + &(&self.up_bar[mu] * &self.lo[mu]))
    }
}

impl<T: Scalar> Default for EpsUnits<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn t_i64<T: Scalar>(n: i64) -> T {
    T::from_i64(n)
}

fn nu_i<T: Scalar>(f: &Frame<T>) -> Biquaternion<T> {
    f.nu.mul_i()
}

fn phi_term<T: Scalar>(ext: &ExternalField<T>, coeff: &Field<T>) -> DiffOp<T> {
    DiffOp::left_field(&coeff.scale_real(&-ext.e.clone()))
}

fn index_op<T: Scalar>(mu: usize, d: i64, p: i64, ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    let mut deriv = [0u8; 4];
    deriv[mu] = 1;
    let k = DiffOp::term(Field::constant(Biquaternion::one().scale_real(&t_i64(d))), deriv, false, f.nu.clone());
    k.add(&phi_term(ext, &ext.comps[mu].scale_real(&t_i64(p))))
}

/// `π_μ(·) = ∂_μ[·]ν − eφ_μ`.
pub fn pi_lo<T: Scalar>(mu: usize, ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    index_op(mu, D_LO[mu], PHI_LO[mu], ext, f)
}

/// `π^μ(·) = ∂^μ[·]ν − eφ^μ`.
pub fn pi_up<T: Scalar>(mu: usize, ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    index_op(mu, D_UP[mu], PHI_UP[mu], ext, f)
}

/// `Π̄(·) = ∇̄[·]iν − eφ̄[·]`.
pub fn pi_bar_op<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    let n = NablaSpec::SELECTED.coeffs::<T>();
    let mut op = phi_term(ext, &ext.phi_bar());
    for (j, nj) in n.iter().enumerate() {
        let mut deriv = [0u8; 4];
        deriv[j] = 1;
        op = op.add(&DiffOp::term(Field::constant(nj.bar()), deriv, false, nu_i(f)));
    }
    op
}

/// `Π(·) = ∇[·]iν − eφ[·]`.
pub fn pi_op<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    let n = NablaSpec::SELECTED.coeffs::<T>();
    let mut op = phi_term(ext, &ext.phi);
    for (j, nj) in n.iter().enumerate() {
        let mut deriv = [0u8; 4];
        deriv[j] = 1;
        op = op.add(&DiffOp::term(Field::constant(nj.clone()), deriv, false, nu_i(f)));
    }
    op
}

/// `(·)* ⊙ op ⊙ (·)*`.
pub fn conjugate_op<T: Scalar>(op: &DiffOp<T>) -> DiffOp<T> {
    let mut out = op.clone();
    for t in &mut out.terms {
        t.left = t.left.star();
        t.right = t.right.star();
    }
    out
}

/// `Π̄*(·)`.
pub fn pi_bar_star_op<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    conjugate_op(&pi_bar_op(ext, f))
}

/// `m(·)*`.
pub fn mass_conj<T: Scalar>(m: &T) -> DiffOp<T> {
    DiffOp::star().scale_real(m)
}

/// `Π̄(·) − m(·)*`.
pub fn dirac_op<T: Scalar>(ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> DiffOp<T> {
    pi_bar_op(ext, f).sub(&mass_conj(m))
}

/// Residual groups of the free system.
#[derive(Clone, Debug, PartialEq)]
pub struct RsResiduals<T: Scalar> {
    /// `Π̄Ψ_μ − mΨ_μ*`.
    pub eq_residuals: RsField<T>,
    /// `ε̄^μΨ_μ`.
    pub algebraic_constraint: Field<T>,
    /// `π^μΨ_μ`.
    pub differential_constraint: Field<T>,
}

impl<T: Scalar> RsResiduals<T> {
    pub fn is_zero(&self) -> bool {
        self.eq_residuals.iter().all(Field::is_zero) && self.algebraic_constraint.is_zero() && self.differential_constraint.is_zero()
    }

    pub fn max_abs(&self) -> f64 {
        self.eq_residuals
            .iter()
            .chain([&self.algebraic_constraint, &self.differential_constraint])
            .map(Field::max_abs)
            .fold(0.0, f64::max)
    }
}

pub fn rs_free_system<T: Scalar>(psi: &RsField<T>, ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> RsResiduals<T> {
    let d = dirac_op(ext, m, f);
    RsResiduals {
        eq_residuals: core::array::from_fn(|mu| d.apply(&psi[mu])),
        algebraic_constraint: apply_row(&z_row(), psi),
        differential_constraint: apply_row(&d_row(ext, f), psi),
    }
}

/// `Σ_μ Ψ_μΨ_μ⁺`.
pub fn rs_current<T: Scalar>(psi: &RsField<T>) -> Field<T> {
    psi.iter().fold(Field::zero(), |acc, p| &acc + &(p * &p.plus()))
}

/// `Φ̃(Y) = ½((∇̄φ)Y + Y(φ∇̄))`, stored through its two field factors.
#[derive(Clone, Debug, PartialEq)]
pub struct DualTensor<T: Scalar> {
    /// `∇̄φ`.
    pub left: Field<T>,
    /// `φ∇̄ = Σ_j ∂_jφ n̄_j`.
    pub right: Field<T>,
}

pub fn dual_tensor<T: Scalar>(ext: &ExternalField<T>) -> DualTensor<T> {
    DualTensor { left: NablaSpec::SELECTED.apply_bar(&ext.phi), right: NablaSpec::SELECTED.apply_right_bar(&ext.phi) }
}

impl<T: Scalar> DualTensor<T> {
    pub fn apply(&self, y: &Field<T>) -> Field<T> {
        (&(&self.left * y) + &(y * &self.right)).scale_real(&T::half())
    }

    pub fn apply_const(&self, y: &Biquaternion<T>) -> Field<T> {
        (&self.left.rmul(y) + &self.right.lmul(y)).scale_real(&T::half())
    }

    /// `⟨∇̄φ⟩`, zero in Lorenz gauge.
    pub fn trace(&self) -> Field<T> {
        self.left.scalar_part()
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }
}

/// `Y ↦ F·Y·iν` for a field `F`.
fn left_iv<T: Scalar>(fld: &Field<T>, f: &Frame<T>) -> DiffOp<T> {
    DiffOp::term(fld.clone(), [0; 4], false, nu_i(f))
}

/// `W(Y) = −e(∇̄φ)Y iν`.
pub fn w_op<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    left_iv(&dual_tensor(ext).left.scale_real(&-ext.e.clone()), f)
}

/// `X(Y) = −e vec(∇̄φ) Y iν`, the remainder in `Π̄ ⊙ Π̄* = Σ_μ π^μ ⊙ π_μ + X`.
pub fn x_op<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    left_iv(&dual_tensor(ext).left.vector_part().scale_real(&-ext.e.clone()), f)
}

/// Row of `Z = ε̄^λΨ_λ`.
pub fn z_row<T: Scalar>() -> RsRow<T> {
    core::array::from_fn(|la| DiffOp::left(&eps_up_bar(la)))
}

/// Row of `D = π^λΨ_λ`.
pub fn d_row<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> RsRow<T> {
    core::array::from_fn(|la| pi_up(la, ext, f))
}

/// Row of `T = Φ̃(ε̄^λ)Ψ_λ iν`.
pub fn t_row<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> RsRow<T> {
    let dual = dual_tensor(ext);
    core::array::from_fn(|la| left_iv(&dual.apply_const(&eps_up_bar(la)), f))
}

/// `op ⊙ row`.
pub fn after<T: Scalar>(op: &DiffOp<T>, row: &RsRow<T>) -> RsRow<T> {
    core::array::from_fn(|la| op.compose(&row[la]))
}

pub fn row_add<T: Scalar>(a: &RsRow<T>, b: &RsRow<T>) -> RsRow<T> {
    core::array::from_fn(|la| a[la].add(&b[la]))
}

pub fn row_sub<T: Scalar>(a: &RsRow<T>, b: &RsRow<T>) -> RsRow<T> {
    core::array::from_fn(|la| a[la].sub(&b[la]))
}

pub fn row_scale<T: Scalar>(a: &RsRow<T>, r: &T) -> RsRow<T> {
    core::array::from_fn(|la| a[la].scale_real(r))
}

fn zero_row<T: Scalar>() -> RsRow<T> {
    core::array::from_fn(|_| DiffOp::zero())
}

/// Extra constraint field `Φ̃(ε̄^μ)Ψ_μ iν`.
pub fn extra_constraint<T: Scalar>(psi: &RsField<T>, ext: &ExternalField<T>, f: &Frame<T>) -> Field<T> {
    apply_row(&t_row(ext, f), psi)
}

/// Commutator `[π^μ, Π̄]` against `eΦ̃(ε̄^μ)[·]iν` and against the gauge-general form
/// `e(Φ̃(ε̄^μ) − ⟨∇̄φ⟩ε̄^μ)[·]iν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorReport {
    /// Max over `μ` of the normal-form distance to the stated right-hand side.
    pub literal_residual: f64,
    /// Same against the gauge-general right-hand side.
    pub general_residual: f64,
    /// Largest pointwise residual of the general form applied to the probes.
    pub probe_residual: f64,
    /// `⟨∇̄φ⟩ = 0`.
    pub lorenz_gauge: bool,
}

pub fn commutator_lhs<T: Scalar>(mu: usize, ext: &ExternalField<T>, f: &Frame<T>) -> DiffOp<T> {
    let p = pi_up(mu, ext, f);
    let pb = pi_bar_op(ext, f);
    p.compose(&pb).sub(&pb.compose(&p))
}

pub fn commutator_rhs<T: Scalar>(mu: usize, ext: &ExternalField<T>, f: &Frame<T>, general: bool) -> DiffOp<T> {
    let dual = dual_tensor(ext);
    let mut fld = dual.apply_const(&eps_up_bar(mu));
    if general {
        fld = &fld - &dual.trace().rmul(&eps_up_bar(mu));
    }
    left_iv(&fld.scale_real(&ext.e), f)
}

pub fn commutator_identity<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>, probes: &[Field<T>]) -> CommutatorReport {
    let mut rep = CommutatorReport { literal_residual: 0.0, general_residual: 0.0, probe_residual: 0.0, lorenz_gauge: dual_tensor(ext).trace().is_zero() };
    for mu in 0..4 {
        let lhs = commutator_lhs(mu, ext, f);
        let gen = commutator_rhs(mu, ext, f, true);
        rep.literal_residual = rep.literal_residual.max(lhs.distance(&commutator_rhs(mu, ext, f, false)));
        rep.general_residual = rep.general_residual.max(lhs.distance(&gen));
        for x in probes {
            rep.probe_residual = rep.probe_residual.max((&lhs.apply(x) - &gen.apply(x)).max_abs());
        }
    }
    rep
}

/// Normal-form distances of the index identities
/// `ε^μπ_μ = Π̄*`, `Σ_μ⟨ε̄^λε^μ⟩π_μ = π^λ`, `Σ_μ⟨ε^λε^μ⟩π_μ = π^λ` (as stated),
/// `m(·)*ε̄^λ = ε^λm(·)*` and `Π̄ ⊙ Π̄* = Σ_μ π^μ ⊙ π_μ + X`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexIdentities {
    pub eps_pi: f64,
    pub scalar_projection: f64,
    pub scalar_projection_stated: f64,
    pub conj_swap: f64,
    pub pi_pi_lemma: f64,
    /// `Π̄ ⊙ Π̄* = Σ_μ π^μ ⊙ π_μ` without the remainder.
    pub pi_pi_without_remainder: f64,
}

pub fn index_identities<T: Scalar>(ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> IndexIdentities {
    let pis: [DiffOp<T>; 4] = core::array::from_fn(|mu| pi_lo(mu, ext, f));
    let pbs = pi_bar_star_op(ext, f);
    let eps_pi = (0..4).fold(DiffOp::zero(), |acc, mu| acc.add(&DiffOp::left(&eps_up::<T>(mu)).compose(&pis[mu])));
    let proj = |w: &dyn Fn(usize) -> Biquaternion<T>| {
        (0..4)
            .map(|la| {
                let s = (0..4).fold(DiffOp::zero(), |acc, mu| acc.add(&DiffOp::left(&Biquaternion::scalar((&w(la) * &eps_up::<T>(mu)).scalar_part())).compose(&pis[mu])));
                s.distance(&pi_up(la, ext, f))
            })
            .fold(0.0, f64::max)
    };
    let k = mass_conj(m);
    let conj_swap = (0..4)
        .map(|la| k.compose(&DiffOp::left(&eps_up_bar(la))).distance(&DiffOp::left(&eps_up::<T>(la)).compose(&k)))
        .fold(0.0, f64::max);
    let pp = (0..4).fold(DiffOp::zero(), |acc, mu| acc.add(&pi_up(mu, ext, f).compose(&pis[mu])));
    let lhs = pi_bar_op(ext, f).compose(&pbs);
    IndexIdentities {
        eps_pi: eps_pi.distance(&pbs),
        scalar_projection: proj(&|la| eps_up_bar(la)),
        scalar_projection_stated: proj(&|la| eps_up(la)),
        conj_swap,
        pi_pi_lemma: lhs.distance(&pp.add(&x_op(ext, f))),
        pi_pi_without_remainder: lhs.distance(&pp),
    }
}

/// The coupled operator
/// `(Π̄ − m(·)*)δ_μ^λ − g(ε̄_μπ^λ + π_μ ⊙ ε̄^λ) + gε̄_μ(Π̄* + m(·)*) ⊙ ε̄^λ`.
pub fn coupled_equation<T: Scalar>(g: &T, ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> RsOp<T> {
    let d = dirac_op(ext, m, f);
    let pbs_m = pi_bar_star_op(ext, f).add(&mass_conj(m));
    RsOp::from_fn(|mu, la| {
        let eb_mu = DiffOp::left(&eps_lo::<T>(mu).bar());
        let eb_la = DiffOp::left(&eps_up_bar::<T>(la));
        let mut op = eb_mu.compose(&pi_up(la, ext, f)).add(&pi_lo(mu, ext, f).compose(&eb_la)).scale_real(&-g.clone());
        op = op.add(&eb_mu.compose(&pbs_m).compose(&eb_la).scale_real(g));
        if mu == la {
            op = op.add(&d);
        }
        op
    })
}

/// The diagonal operator `E'_μ = (Π̄ − m(·)*)Ψ_μ`.
pub fn free_equation<T: Scalar>(ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> RsOp<T> {
    let d = dirac_op(ext, m, f);
    RsOp::from_fn(|mu, la| if mu == la { d.clone() } else { DiffOp::zero() })
}

fn eps_contract<T: Scalar>(op: &RsOp<T>) -> RsRow<T> {
    contract(&core::array::from_fn(|mu| DiffOp::left(&eps_up::<T>(mu))), op)
}

fn pi_contract<T: Scalar>(op: &RsOp<T>, ext: &ExternalField<T>, f: &Frame<T>) -> RsRow<T> {
    contract(&core::array::from_fn(|mu| pi_up(mu, ext, f)), op)
}

/// Distances of the two contractions of the coupled equation to their reduced forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionReport {
    /// `ε^μE_μ = [(4g−1)ε^λm(·)* − 2(2g−1)π^λ + (3g−1)Π̄* ⊙ ε̄^λ]Ψ_λ`.
    pub eps_residual: f64,
    /// `π^μE_μ = [m(gΠ̄ ⊙ ε^λ − π^λ) ⊙ (·)* + π^λ ⊙ Π̄ − gΠ̄ ⊙ π^λ + gX ⊙ ε̄^λ]Ψ_λ`.
    pub pi_residual: f64,
    /// Same without the `gX` term, as stated.
    pub pi_residual_stated: f64,
}

pub fn eps_contraction_form<T: Scalar>(g: &T, ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> RsRow<T> {
    let c1 = g.clone() * t_i64(4) - T::one();
    let c2 = (g.clone() * t_i64(2) - T::one()) * t_i64(-2);
    let c3 = g.clone() * t_i64(3) - T::one();
    let k = mass_conj(m);
    let pbs = pi_bar_star_op(ext, f);
    core::array::from_fn(|la| {
        DiffOp::left(&eps_up::<T>(la))
            .compose(&k)
            .scale_real(&c1)
            .add(&pi_up(la, ext, f).scale_real(&c2))
            .add(&pbs.compose(&DiffOp::left(&eps_up_bar(la))).scale_real(&c3))
    })
}

pub fn pi_contraction_form<T: Scalar>(g: &T, ext: &ExternalField<T>, m: &T, f: &Frame<T>, with_remainder: bool) -> RsRow<T> {
    let pb = pi_bar_op(ext, f);
    let k = DiffOp::star();
    let x = x_op(ext, f);
    core::array::from_fn(|la| {
        let p = pi_up(la, ext, f);
        let a = pb.compose(&DiffOp::left(&eps_up::<T>(la))).scale_real(g).sub(&p).compose(&k).scale_real(m);
        let mut op = a.add(&p.compose(&pb)).sub(&pb.compose(&p).scale_real(g));
        if with_remainder {
            op = op.add(&x.compose(&DiffOp::left(&eps_up_bar(la))).scale_real(g));
        }
        op
    })
}

pub fn contraction_chain<T: Scalar>(g: &T, ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> ContractionReport {
    let e = coupled_equation(g, ext, m, f);
    let ec = eps_contract(&e);
    let pc = pi_contract(&e, ext, f);
    ContractionReport {
        eps_residual: rows_distance(&ec, &eps_contraction_form(g, ext, m, f)),
        pi_residual: rows_distance(&pc, &pi_contraction_form(g, ext, m, f, true)),
        pi_residual_stated: rows_distance(&pc, &pi_contraction_form(g, ext, m, f, false)),
    }
}

/// Distances of each reduction step at `g = 1`. Fields named `*_stated` compare
/// against the stated forms; the others against the exact forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct G1ChainReport {
    /// `ε^μE_μ = [3ε^λm(·)* + 2(Π̄* ⊙ ε̄^λ − π^λ)]Ψ_λ`.
    pub eps_contraction: f64,
    /// `π^μE_μ = [(Π̄ ⊙ ε^λ − π^λ) ⊙ m(·)* + [π^λ, Π̄] + X ⊙ ε̄^λ]Ψ_λ`.
    pub pi_contraction: f64,
    /// `(π^μE_μ)* = m(Π̄*Z − D) − eΦ̃*(ε^λ)Ψ_λ* iν + (W(Z))*`.
    pub conjugate_contraction: f64,
    pub conjugate_contraction_stated: f64,
    /// `m(ε^μE_μ)* − 2π^μE_μ = 3m²Z − 2eT − 2W(Z)`.
    pub mass_combination: f64,
    pub mass_combination_stated: f64,
    /// `D = (Π̄* + (3/2)m(·)*)Z − ½ε^μE_μ`.
    pub d_elimination: f64,
    /// `(Π̄ − m(·)*)Ψ_μ − E_μ = π_μZ + ½mε̄_μZ* − ½ε̄_μ ε^νE_ν`.
    pub reduced_equation: f64,
    /// Same with `ε_μ` in place of `ε̄_μ`.
    pub reduced_equation_stated: f64,
    /// Largest normal-form coefficient of `T` and `W` at the given coupling.
    pub source_size: f64,
}

impl G1ChainReport {
    pub fn max_exact(&self) -> f64 {
        [self.eps_contraction, self.pi_contraction, self.conjugate_contraction, self.mass_combination, self.d_elimination, self.reduced_equation].into_iter().fold(0.0, f64::max)
    }
}

fn row_size<T: Scalar>(r: &RsRow<T>) -> f64 {
    rows_distance(r, &zero_row())
}

pub fn g1_chain<T: Scalar>(ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> Result<G1ChainReport> {
    if m.is_zero() {
        return Err(Error::DegenerateMass);
    }
    let one = T::one();
    let e_op = coupled_equation(&one, ext, m, f);
    let ec = eps_contract(&e_op);
    let pc = pi_contract(&e_op, ext, f);
    let k = DiffOp::star();
    let km = mass_conj(m);
    let pb = pi_bar_op(ext, f);
    let pbs = pi_bar_star_op(ext, f);
    let z = z_row::<T>();
    let d = d_row(ext, f);
    let t = t_row(ext, f);
    let w = after(&w_op(ext, f), &z);
    let x = after(&x_op(ext, f), &z);

    let eps_form: RsRow<T> = core::array::from_fn(|la| {
        DiffOp::left(&eps_up::<T>(la)).compose(&km).scale_real(&t_i64(3)).add(&pbs.compose(&z[la]).sub(&d[la]).scale_real(&t_i64(2)))
    });
    let pi_form: RsRow<T> = core::array::from_fn(|la| {
        let comm = d[la].compose(&pb).sub(&pb.compose(&d[la]));
        pb.compose(&DiffOp::left(&eps_up::<T>(la))).sub(&d[la]).compose(&km).add(&comm).add(&x[la])
    });
    let conj_pc = after(&k, &pc);
    let dual = dual_tensor(ext);
    let stated_conj: RsRow<T> = core::array::from_fn(|la| {
        let src = dual.left.star().rmul(&eps_up::<T>(la)).scale_real(&ext.e);
        let src = (&src + &dual.right.star().lmul(&eps_up::<T>(la)).scale_real(&ext.e)).scale_real(&T::half());
        pbs.compose(&z[la]).sub(&d[la]).scale_real(m).sub(&left_iv(&src, f).compose(&k))
    });
    let exact_conj = row_add(&stated_conj, &after(&k, &w));

    // m(ε^μE_μ)* − 2π^μE_μ
    let combo = row_sub(&row_scale(&after(&k, &ec), m), &row_scale(&pc, &t_i64(2)));
    let m2 = m.clone() * m.clone();
    let stated_combo = row_sub(&row_scale(&z, &(m2 * t_i64(3))), &row_scale(&t, &(ext.e.clone() * t_i64(2))));
    let exact_combo = row_sub(&stated_combo, &row_scale(&w, &t_i64(2)));

    let d_form = row_sub(&after(&pbs.add(&km.scale_real(&T::from_ratio(3, 2))), &z), &row_scale(&ec, &T::half()));

    let dirac = free_equation(ext, m, f);
    let mut reduced_equation: f64 = 0.0;
    let mut reduced_equation_stated: f64 = 0.0;
    for mu in 0..4 {
        let lhs = row_sub(dirac.row(mu), e_op.row(mu));
        let rhs_with = |eb: Biquaternion<T>| -> RsRow<T> {
            let a = after(&pi_lo(mu, ext, f), &z);
            let b = after(&DiffOp::left(&eb).compose(&km).scale_real(&T::half()), &z);
            let c = after(&DiffOp::left(&eb).scale_real(&T::half()), &ec);
            row_sub(&row_add(&a, &b), &c)
        };
        reduced_equation = reduced_equation.max(rows_distance(&lhs, &rhs_with(eps_lo::<T>(mu).bar())));
        reduced_equation_stated = reduced_equation_stated.max(rows_distance(&lhs, &rhs_with(eps_lo::<T>(mu))));
    }

    Ok(G1ChainReport {
        eps_contraction: rows_distance(&ec, &eps_form),
        pi_contraction: rows_distance(&pc, &pi_form),
        conjugate_contraction: rows_distance(&conj_pc, &exact_conj),
        conjugate_contraction_stated: rows_distance(&conj_pc, &stated_conj),
        mass_combination: rows_distance(&combo, &exact_combo),
        mass_combination_stated: rows_distance(&combo, &stated_combo),
        d_elimination: rows_distance(&d, &d_form),
        reduced_equation,
        reduced_equation_stated,
        source_size: row_size(&row_scale(&t, &ext.e)).max(row_size(&w)),
    })
}

/// Normal-form distance of
/// `eT = π^μE'_μ − (Π̄ − m(·)*)D + e⟨∇̄φ⟩Z iν` with `2D = ΠZ + ε^μΠ̄Ψ_μ`, which forces
/// the extra constraint on every solution of the free system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtraConstraintDerivation {
    pub derivation: f64,
    pub d_split: f64,
}

pub fn extra_constraint_derivation<T: Scalar>(ext: &ExternalField<T>, m: &T, f: &Frame<T>) -> ExtraConstraintDerivation {
    let free = free_equation(ext, m, f);
    let z = z_row::<T>();
    let d = d_row(ext, f);
    let two_d = row_add(&after(&pi_op(ext, f), &z), &eps_contract(&RsOp::from_fn(|mu, la| if mu == la { pi_bar_op(ext, f) } else { DiffOp::zero() })));
    let dual = dual_tensor(ext);
    let trace_term = after(&left_iv(&dual.trace().scale_real(&ext.e), f), &z);
    let rhs = row_add(&row_sub(&pi_contract(&free, ext, f), &after(&dirac_op(ext, m, f), &d)), &trace_term);
    ExtraConstraintDerivation {
        derivation: rows_distance(&row_scale(&t_row(ext, f), &ext.e), &rhs),
        d_split: rows_distance(&row_scale(&d, &t_i64(2)), &two_d),
    }
}

/// A constant four-tuple satisfying both free constraints for a potential linear in
/// `x`, chosen to maximise the extra-constraint field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraConstraintWitness<T: Scalar> {
    pub ext: ExternalField<T>,
    pub psi: RsField<T>,
    /// Dimension of the constant solutions of both constraints.
    pub kernel_dim: usize,
    pub norm: f64,
}

fn linear_coeffs<T: Scalar>(x: &Field<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(40);
    for mono in [[0u8, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] {
        let q = x
            .modes()
            .first()
            .and_then(|m| m.cos.terms().find(|(k, _)| **k == mono).map(|(_, q)| q.clone()))
            .unwrap_or_else(Biquaternion::zero);
        out.extend(q.to_real8());
    }
    out
}

pub fn extra_constraint_witness<T: Scalar>(ext: &ExternalField<T>, f: &Frame<T>) -> Option<ExtraConstraintWitness<T>> {
    if ext.phi.degree() > 1 {
        return None;
    }
    let one = T::one();
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(32);
    for la in 0..4 {
        for c in 0..8 {
            let mut psi: RsField<T> = core::array::from_fn(|_| Field::zero());
            psi[la] = Field::constant(Biquaternion::basis(c));
            let r = rs_free_system(&psi, ext, &one, f);
            let mut col = linear_coeffs(&r.algebraic_constraint);
            col.extend(linear_coeffs(&r.differential_constraint));
            cols.push(col);
        }
    }
    let rows: Vec<Vec<T>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let tol = if T::EXACT { 0.0 } else { 1e-9 };
    let kernel = linalg::nullspace(&rows, 32, tol);
    let kernel_dim = kernel.len();
    kernel
        .into_iter()
        .map(|v| {
            let psi: RsField<T> = core::array::from_fn(|la| Field::constant(Biquaternion::from_real8(&core::array::from_fn(|c| v[8 * la + c].clone()))));
            let norm = extra_constraint(&psi, ext, f).max_abs();
            ExtraConstraintWitness { ext: ext.clone(), psi, kernel_dim, norm }
        })
        .max_by(|a, b| a.norm.total_cmp(&b.norm))
}

/// Momentum-space dimension count for plane waves `Ψ_μ = Z_μ e^{−νθ}` (real dimensions).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstraintCount {
    pub total_real_dim: usize,
    pub algebraic_rank: usize,
    pub differential_rank: usize,
    /// `total − rank(both constraints)`.
    pub after_constraints: usize,
    /// Solutions of the four single-field equations.
    pub equation_solutions: usize,
    /// Solutions of the full free system.
    pub solution_dim: usize,
}

/// Real matrices `(equations, algebraic, differential)` of the free system on plane
/// waves with momentum `p`, columns indexed by `(λ, real component)`.
#[allow(clippy::type_complexity)]
pub fn rs_symbol<T: Scalar>(p: &Momentum<T>, f: &Frame<T>) -> Result<(Vec<Vec<T>>, Vec<Vec<T>>, Vec<Vec<T>>)> {
    let k = p.wave_vector();
    let ext = ExternalField::zero();
    let mut cols: Vec<(Vec<T>, Vec<T>, Vec<T>)> = Vec::with_capacity(32);
    for la in 0..4 {
        for c in 0..8 {
            let mut psi: RsField<T> = core::array::from_fn(|_| Field::zero());
            psi[la] = plane_wave(&k, &Biquaternion::basis(c), f);
            let r = rs_free_system(&psi, &ext, &p.m, f);
            let amp = |x: &Field<T>| -> Vec<T> {
                let z = if x.is_zero() { Biquaternion::zero() } else { plane_wave_amplitude(x, &k, f, 1e-12).expect("plane-wave symbol") };
                z.to_real8().to_vec()
            };
            let eqs: Vec<T> = r.eq_residuals.iter().flat_map(|x| amp(x)).collect();
            cols.push((eqs, amp(&r.algebraic_constraint), amp(&r.differential_constraint)));
        }
    }
    let rows = |sel: &dyn Fn(&(Vec<T>, Vec<T>, Vec<T>)) -> &Vec<T>| -> Vec<Vec<T>> {
        let n = sel(&cols[0]).len();
        (0..n).map(|r| cols.iter().map(|c| sel(c)[r].clone()).collect()).collect()
    };
    Ok((rows(&|c| &c.0), rows(&|c| &c.1), rows(&|c| &c.2)))
}

pub fn constraint_counting<T: Scalar>(p: &Momentum<T>, f: &Frame<T>) -> Result<ConstraintCount> {
    if p.m.is_zero() {
        return Err(Error::DegenerateMass);
    }
    if !p.on_shell() {
        return Err(Error::OffShell);
    }
    let (eqs, alg, dif) = rs_symbol(p, f)?;
    let tol = if T::EXACT { 0.0 } else { 1e-9 };
    let both: Vec<Vec<T>> = alg.iter().chain(dif.iter()).cloned().collect();
    let all: Vec<Vec<T>> = both.iter().chain(eqs.iter()).cloned().collect();
    Ok(ConstraintCount {
        total_real_dim: 32,
        algebraic_rank: linalg::rank(&alg, 32, tol),
        differential_rank: linalg::rank(&dif, 32, tol),
        after_constraints: 32 - linalg::rank(&both, 32, tol),
        equation_solutions: 32 - linalg::rank(&eqs, 32, tol),
        solution_dim: 32 - linalg::rank(&all, 32, tol),
    })
}

/// Amplitude tuples `Z_λ` such that `Z_λ e^{−νθ}` solves the full free system.
pub fn rs_plane_wave_solutions<T: Scalar>(p: &Momentum<T>, f: &Frame<T>) -> Result<Vec<[Biquaternion<T>; 4]>> {
    if !p.on_shell() {
        return Err(Error::OffShell);
    }
    let (eqs, alg, dif) = rs_symbol(p, f)?;
    let all: Vec<Vec<T>> = alg.into_iter().chain(dif).chain(eqs).collect();
    let tol = if T::EXACT { 0.0 } else { 1e-9 };
    Ok(linalg::nullspace(&all, 32, tol)
        .into_iter()
        .map(|v| core::array::from_fn(|la| Biquaternion::from_real8(&core::array::from_fn(|c| v[8 * la + c].clone()))))
        .collect())
}

/// Coefficients `a_μ^λ` with `Σ_μ ε̄^μ a_μ^λ = L* ε̄^λ L̄`.
pub fn vector_matrix<T: Scalar>(lt: &LorentzElement<T>) -> [[T; 4]; 4] {
    let l = &lt.l;
    let mut a: [[T; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| T::zero()));
    for la in 0..4 {
        let y = &(&l.star() * &eps_up_bar::<T>(la)) * &l.bar();
        a[0][la] = y.s.re.clone();
        for n in 0..3 {
            a[n + 1][la] = y.v[n].im.clone();
        }
    }
    a
}

/// Pointwise law `Ψ'_μ = a_μ^λ L Ψ_λ`.
pub fn transform_amplitudes<T: Scalar>(z: &[Biquaternion<T>; 4], lt: &LorentzElement<T>) -> [Biquaternion<T>; 4] {
    let a = vector_matrix(lt);
    core::array::from_fn(|mu| (0..4).fold(Biquaternion::zero(), |acc, la| &acc + &(&lt.l * &z[la]).scale_real(&a[mu][la])))
}

/// `ε̄^λZ_λ` for constant amplitudes.
pub fn contract_amplitudes<T: Scalar>(z: &[Biquaternion<T>; 4]) -> Biquaternion<T> {
    (0..4).fold(Biquaternion::zero(), |acc, la| &acc + &(&eps_up_bar::<T>(la) * &z[la]))
}

/// Residual of `ε̄^μ(a_μ^λ L Ψ_λ) = L*(ε̄^λΨ_λ)`.
pub fn vector_law_residual<T: Scalar>(z: &[Biquaternion<T>; 4], lt: &LorentzElement<T>) -> Biquaternion<T> {
    &contract_amplitudes(&transform_amplitudes(z, lt)) - &(&lt.l.star() * &contract_amplitudes(z))
}
