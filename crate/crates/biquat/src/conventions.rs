//! The four-gradient and the tensor index conventions shared by the field
//! equations and the vector-spinor system.
//!
//! Four-vectors are bireal, `V = V0 − iV⃗`; coordinates `x = (t, x1, x2, x3)`.
//! Lower and upper index tables:
//!
//! | μ      | 0   | n       |
//! |--------|-----|---------|
//! | ∂_μ    | ∂0  | −∂n     |
//! | ∂^μ    | ∂0  | ∂n      |
//! | φ_μ    | φ0  | φn      |
//! | φ^μ    | φ0  | −φn     |
//! | ε_μ    | 1   | ie_n    |
//! | ε^μ    | 1   | −ie_n   |

use alloc::vec::Vec;

use crate::biquaternion::Biquaternion;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::frame::Frame;
use crate::lorentz::LorentzElement;
use crate::scalar::{Rational, Scalar, C};

/// `∇ = (time·i) ∂0 + space Σ e_n ∂n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NablaSpec {
    pub time: i8,
    pub space: i8,
}

pub const D_LO: [i64; 4] = [1, -1, -1, -1];
pub const D_UP: [i64; 4] = [1, 1, 1, 1];
pub const PHI_LO: [i64; 4] = [1, 1, 1, 1];
pub const PHI_UP: [i64; 4] = [1, -1, -1, -1];

/// `ε_μ`.
pub fn eps_lo<T: Scalar>(mu: usize) -> Biquaternion<T> {
    if mu == 0 {
        Biquaternion::one()
    } else {
        Biquaternion::e(mu).mul_i()
    }
}

/// `ε^μ`.
pub fn eps_up<T: Scalar>(mu: usize) -> Biquaternion<T> {
    if mu == 0 {
        Biquaternion::one()
    } else {
        -Biquaternion::e(mu).mul_i()
    }
}

/// `ε̄^μ` (equal to `ε_μ`).
pub fn eps_up_bar<T: Scalar>(mu: usize) -> Biquaternion<T> {
    eps_up::<T>(mu).bar()
}

impl NablaSpec {
    pub const SELECTED: NablaSpec = NablaSpec { time: -1, space: 1 };

    pub const CANDIDATES: [NablaSpec; 4] = [
        NablaSpec { time: -1, space: 1 },
        NablaSpec { time: -1, space: -1 },
        NablaSpec { time: 1, space: 1 },
        NablaSpec { time: 1, space: -1 },
    ];

    pub fn label(&self) -> &'static str {
        match (self.time, self.space) {
            (-1, 1) => "-i d_t + e_n d_n",
            (-1, _) => "-i d_t - e_n d_n",
            (_, 1) => "+i d_t + e_n d_n",
            _ => "+i d_t - e_n d_n",
        }
    }

    /// Coefficients `n_j` of `∇ = Σ n_j ∂_j`.
    pub fn coeffs<T: Scalar>(&self) -> [Biquaternion<T>; 4] {
        let t = T::from_i64(self.time as i64);
        let s = T::from_i64(self.space as i64);
        [
            Biquaternion::scalar(C::new(T::zero(), t)),
            Biquaternion::e(1).scale_real(&s),
            Biquaternion::e(2).scale_real(&s),
            Biquaternion::e(3).scale_real(&s),
        ]
    }

    pub fn apply<T: Scalar>(&self, f: &Field<T>) -> Field<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(Field::zero(), |acc, j| &acc + &f.deriv(j).lmul(&n[j]))
    }

    pub fn apply_bar<T: Scalar>(&self, f: &Field<T>) -> Field<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(Field::zero(), |acc, j| &acc + &f.deriv(j).lmul(&n[j].bar()))
    }

    /// `f∇ = Σ ∂_j f n_j`.
    pub fn apply_right<T: Scalar>(&self, f: &Field<T>) -> Field<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(Field::zero(), |acc, j| &acc + &f.deriv(j).rmul(&n[j]))
    }

    /// `f∇̄ = Σ ∂_j f n̄_j`.
    pub fn apply_right_bar<T: Scalar>(&self, f: &Field<T>) -> Field<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(Field::zero(), |acc, j| &acc + &f.deriv(j).rmul(&n[j].bar()))
    }

    pub fn op<T: Scalar>(&self) -> DiffOp<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(DiffOp::zero(), |acc, j| acc.add(&DiffOp::left(&n[j]).compose(&DiffOp::deriv(j))))
    }

    pub fn op_bar<T: Scalar>(&self) -> DiffOp<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(DiffOp::zero(), |acc, j| acc.add(&DiffOp::left(&n[j].bar()).compose(&DiffOp::deriv(j))))
    }

    /// `Σ n_j k_j`.
    pub fn symbol<T: Scalar>(&self, k: &[T; 4]) -> Biquaternion<T> {
        let n = self.coeffs::<T>();
        (0..4).fold(Biquaternion::zero(), |acc, j| &acc + &n[j].scale_real(&k[j]))
    }
}

pub fn nabla<T: Scalar>(f: &Field<T>) -> Field<T> {
    NablaSpec::SELECTED.apply(f)
}

pub fn nabla_bar<T: Scalar>(f: &Field<T>) -> Field<T> {
    NablaSpec::SELECTED.apply_bar(f)
}

/// Bireal embedding of coordinates, `x ↦ x0 − i x⃗`.
pub fn coordinate_quaternion<T: Scalar>(x: &[T; 4]) -> Biquaternion<T> {
    let mi = |r: &T| C::new(T::zero(), -r.clone());
    Biquaternion::new(C::new(x[0].clone(), T::zero()), [mi(&x[1]), mi(&x[2]), mi(&x[3])])
}

/// Inverse of [`coordinate_quaternion`] on bireal input.
pub fn coordinate_components<T: Scalar>(q: &Biquaternion<T>) -> [T; 4] {
    [q.s.re.clone(), -q.v[0].im.clone(), -q.v[1].im.clone(), -q.v[2].im.clone()]
}

/// Real 4×4 matrix `Λ` with `Λx` the components of `L X L⁺`.
pub fn lorentz_matrix<T: Scalar>(lt: &LorentzElement<T>) -> [[T; 4]; 4] {
    let mut m: [[T; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| T::zero()));
    for j in 0..4 {
        let mut e: [T; 4] = core::array::from_fn(|_| T::zero());
        e[j] = T::one();
        let y = &(&lt.l * &coordinate_quaternion(&e)) * &lt.l.plus();
        let c = coordinate_components(&y);
        for (mu, v) in c.into_iter().enumerate() {
            m[mu][j] = v;
        }
    }
    m
}

/// A few exact Lorentz transformations with rational entries.
pub fn rational_lorentz_samples() -> Vec<LorentzElement<Rational>> {
    type Q = Biquaternion<Rational>;
    let r = Rational::from_ratio;
    let boost = |c: Rational, s: Rational, b: [Rational; 3]| {
        Q::new(C::new(c, Rational::from_i64(0)), b.map(|x| C::new(Rational::from_i64(0), x * s.clone())))
    };
    let rot = |q: [i64; 4], n: i64| Q::real(r(q[0], n), r(q[1], n), r(q[2], n), r(q[3], n));
    alloc::vec![
        LorentzElement::from_parts(boost(r(5, 4), r(3, 4), [r(1, 1), r(0, 1), r(0, 1)]), Q::one()),
        LorentzElement::from_parts(boost(r(13, 12), r(5, 12), [r(0, 1), r(3, 5), r(4, 5)]), rot([1, 2, 2, 4], 5)),
        LorentzElement::from_parts(boost(r(17, 8), r(15, 8), [r(2, 3), r(2, 3), r(1, 3)]), rot([2, -1, 2, 0], 3)),
    ]
}

/// Outcome of each selection criterion for one candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionRow {
    pub candidate: NablaSpec,
    /// `n_μ = Σ_j Λ^μ_j L n_j L⁺` for the coordinate law `X' = L X L⁺`.
    pub equivariant: bool,
    /// `∇∇̄ = −∂t² + Σ∂n²` on a random polynomial field.
    pub klein_gordon: bool,
    /// `⟨∇̄(ΨΨ⁺)⟩ = 0` on superposed plane-wave solutions of `∇̄Ψ = mΨ*iν`.
    pub conserved: bool,
    /// `∇̄[·]iν = ε̄^μ ∂_μ [·] ν`.
    pub tensor_consistent: bool,
}

impl SelectionRow {
    pub fn passes(&self) -> bool {
        self.equivariant && self.klein_gordon && self.conserved && self.tensor_consistent
    }
}

fn equivariant(candidate: &NablaSpec) -> bool {
    let n = candidate.coeffs::<Rational>();
    rational_lorentz_samples().iter().all(|lt| {
        let lam = lorentz_matrix(lt);
        (0..4).all(|mu| {
            let rhs = (0..4).fold(Biquaternion::zero(), |acc, j| &acc + &(&(&lt.l * &n[j]) * &lt.l.plus()).scale_real(&lam[mu][j]));
            rhs == n[mu]
        })
    })
}

fn klein_gordon(candidate: &NablaSpec) -> bool {
    let f = crate::sample::fixed_poly_field(3);
    let lhs = candidate.apply(&candidate.apply_bar(&f));
    let mut box_f = f.deriv(0).deriv(0).scale_real(&Rational::from_i64(-1));
    for j in 1..4 {
        box_f = &box_f + &f.deriv(j).deriv(j);
    }
    (&lhs - &box_f).is_zero()
}

fn conserved(candidate: &NablaSpec) -> bool {
    let f = Frame::<Rational>::standard();
    let m = Rational::from_i64(1);
    let ks = [
        [Rational::from_i64(2), Rational::from_i64(1), Rational::from_i64(1), Rational::from_i64(1)],
        [Rational::from_ratio(5, 4), Rational::from_ratio(-3, 4), Rational::from_i64(0), Rational::from_i64(0)],
    ];
    let mut psi = Field::zero();
    for (i, k) in ks.iter().enumerate() {
        let sols = crate::equations::dirac_symbol_nullspace(candidate, k, &m, &f);
        if sols.len() != 4 {
            return false;
        }
        psi = &psi + &crate::equations::plane_wave(k, &sols[i % 4], &f);
        psi = &psi + &crate::equations::plane_wave(k, &sols[(i + 1) % 4].scale_real(&Rational::from_i64(2)), &f);
    }
    let c = crate::equations::current(&psi);
    candidate.apply_bar(&c).scalar_part().is_zero()
}

fn tensor_consistent(candidate: &NablaSpec) -> bool {
    let f = Frame::<Rational>::standard();
    let lhs = candidate.op_bar::<Rational>().compose(&DiffOp::right(&f.nu.mul_i()));
    let rhs = (0..4).fold(DiffOp::zero(), |acc, mu| {
        let d = DiffOp::deriv(mu).scale_real(&Rational::from_i64(D_LO[mu]));
        acc.add(&DiffOp::left(&eps_up_bar(mu)).compose(&d).compose(&DiffOp::right(&f.nu)))
    });
    lhs.equals(&rhs)
}

pub fn selection_table() -> Vec<SelectionRow> {
    NablaSpec::CANDIDATES
        .iter()
        .map(|candidate| SelectionRow {
            candidate: *candidate,
            equivariant: equivariant(candidate),
            klein_gordon: klein_gordon(candidate),
            conserved: conserved(candidate),
            tensor_consistent: tensor_consistent(candidate),
        })
        .collect()
}

/// Enumerates the candidates and returns the single one meeting every criterion.
pub fn select_nabla_convention() -> Result<NablaSpec> {
    let passing: Vec<NablaSpec> = selection_table().into_iter().filter(SelectionRow::passes).map(|r| r.candidate).collect();
    match passing.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::NoConsistentConvention(passing.len())),
    }
}
