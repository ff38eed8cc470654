//! Spin generators for the four columns, their J3 eigenstates, and the rotation
//! and boost exponentials built from them.

use alloc::vec::Vec;

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linop::{Flavor, RealLinearOp};
use crate::scalar::C;
#[cfg(not(feature = "std"))]
use num_traits::Float;

type Bq = Biquaternion<f64>;
type Op = RealLinearOp<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinLabel {
    HalfPlus,
    HalfMinus,
    One,
    ThreeHalf,
}

impl SpinLabel {
    pub const ALL: [SpinLabel; 4] = [SpinLabel::HalfPlus, SpinLabel::HalfMinus, SpinLabel::One, SpinLabel::ThreeHalf];

    pub fn spin(self) -> f64 {
        match self {
            SpinLabel::HalfPlus | SpinLabel::HalfMinus => 0.5,
            SpinLabel::One => 1.0,
            SpinLabel::ThreeHalf => 1.5,
        }
    }

    /// Short tag used in suite identifiers.
    pub fn tag(self) -> &'static str {
        match self {
            SpinLabel::HalfPlus => "1_2p",
            SpinLabel::HalfMinus => "1_2m",
            SpinLabel::One => "1",
            SpinLabel::ThreeHalf => "3_2",
        }
    }

    pub fn is_half_integer(self) -> bool {
        self != SpinLabel::One
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorTriple {
    pub j: [Op; 3],
}

fn mono(l: &Bq, r: &Bq) -> Op {
    Op::monomial(l, r, Flavor::Id)
}

fn half_i() -> C<f64> {
    C::new(0.0, 0.5)
}

pub fn generators(s: SpinLabel, f: &Frame<f64>) -> GeneratorTriple {
    let one = Bq::one();
    let [tn, tau, nu] = f.triad();
    let j = match s {
        SpinLabel::HalfPlus | SpinLabel::HalfMinus => {
            let right = if s == SpinLabel::HalfPlus { &f.sigma } else { &f.sigma_bar };
            [&tn, &tau, &nu].map(|l| mono(l, right).scale_complex(&half_i()))
        }
        SpinLabel::One => [&tn, &tau, &nu].map(|u| mono(u, &one).sub(&mono(&one, u)).scale_complex(&half_i())),
        SpinLabel::ThreeHalf => {
            let r3 = 3f64.sqrt();
            let nt = &nu * &tau;
            // -1/2 tau ( [.]tau + sqrt3 nu[.]nu + nu[.]nu tau )
            let j1 = mono(&one, &tau).add(&mono(&nu, &nu).scale(&r3)).add(&mono(&nu, &nt));
            // -1/2 tau ( nu[.]tau + sqrt3 [.]nu - [.]nu tau )
            let j2 = mono(&nu, &tau).add(&mono(&one, &nu).scale(&r3)).sub(&mono(&one, &nt));
            let lt = mono(&tau, &one).scale(&-0.5);
            let j3 = mono(&nu, &one).add(&mono(&one, &nu).scale(&2.0)).scale_complex(&half_i());
            [lt.compose(&j1), lt.compose(&j2), j3]
        }
    };
    GeneratorTriple { j }
}

impl GeneratorTriple {
    /// Σ a_n J_n.
    pub fn along(&self, a: [f64; 3]) -> Op {
        self.j[0].scale(&a[0]).add(&self.j[1].scale(&a[1])).add(&self.j[2].scale(&a[2]))
    }

    pub fn casimir(&self) -> Op {
        self.j.iter().fold(Op::zero(), |acc, j| acc.add(&j.compose(j)))
    }

    /// Largest entry of [J_a, J_b] - i J_c over the three cyclic pairs.
    pub fn su2_residual(&self) -> f64 {
        let i = Op::i_op();
        (0..3)
            .map(|a| {
                let (b, c) = ((a + 1) % 3, (a + 2) % 3);
                self.j[a].commutator(&self.j[b]).max_abs_diff(&i.compose(&self.j[c]))
            })
            .fold(0.0, f64::max)
    }
}

/// Table eigenstates as (m, state), highest m first.
pub fn eigenstates(s: SpinLabel, f: &Frame<f64>) -> Vec<(f64, Bq)> {
    let r2 = 2f64.sqrt();
    let sig = f.sigma.scale_real(&r2);
    let sigb = f.sigma_bar.scale_real(&r2);
    let sig_tau = (&f.sigma * &f.tau).scale_real(&r2);
    let sigb_tau = (&f.sigma_bar * &f.tau).scale_real(&r2);
    match s {
        SpinLabel::HalfPlus => alloc::vec![(0.5, sig), (-0.5, sigb_tau)],
        SpinLabel::HalfMinus => alloc::vec![(0.5, sig_tau), (-0.5, sigb)],
        SpinLabel::One => alloc::vec![(1.0, sig_tau), (0.0, f.nu.clone()), (-1.0, sigb_tau)],
        SpinLabel::ThreeHalf => alloc::vec![(1.5, sig), (0.5, sigb_tau), (-0.5, sig_tau), (-1.5, sigb)],
    }
}

/// Real spanning set of the subspace on which a column's generators act as
/// an irreducible spin-s representation (complex span of the eigenstates).
pub fn designated_span(s: SpinLabel, f: &Frame<f64>) -> Vec<Bq> {
    eigenstates(s, f).into_iter().flat_map(|(_, x)| [x.clone(), x.mul_i()]).collect()
}

/// Projections of `axis` on the triad (τν, τ, ν).
pub fn axis_components(axis: [f64; 3], f: &Frame<f64>) -> Result<[f64; 3]> {
    let n2: f64 = axis.iter().map(|x| x * x).sum();
    if (n2.sqrt() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidAxis);
    }
    let a = Bq::real_vector(axis);
    Ok(f.triad().map(|t| -(&a * &t).s.re))
}

/// exp(-iθ Σ a_n J_n).
pub fn rotate(s: SpinLabel, axis: [f64; 3], theta: f64, f: &Frame<f64>) -> Result<Op> {
    let a = axis_components(axis, f)?;
    let g = generators(s, f).along(a);
    Ok(Op::i_op().compose(&g).scale(&-theta).exp())
}

/// The rotation with θ → iρ, i.e. exp(ρ Σ a_n J_n).
pub fn boost(s: SpinLabel, axis: [f64; 3], rapidity: f64, f: &Frame<f64>) -> Result<Op> {
    let a = axis_components(axis, f)?;
    Ok(generators(s, f).along(a).scale(&rapidity).exp())
}

/// exp(½θa) as a rotor.
pub fn rotor(axis: [f64; 3], theta: f64) -> Bq {
    Bq::real_vector(axis).scale_real(&(0.5 * theta)).exp()
}

/// exp(½ρ i b) as a boost factor.
pub fn boost_factor(axis: [f64; 3], rapidity: f64) -> Bq {
    Bq::real_vector(axis).mul_i().scale_real(&(0.5 * rapidity)).exp()
}
