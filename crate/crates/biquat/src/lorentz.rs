//! SL(2,C) elements, their actions on the A and B fields of each spin row, the
//! two scalar products, and the `L[·]R²` action for four-component fields.

use alloc::vec::Vec;

use rand::Rng;

use crate::biquaternion::Biquaternion;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg::span_rank;
use crate::linop::{Flavor, RealLinearOp};
use crate::scalar::Scalar;
use crate::spin::{self, boost_factor, rotor, SpinLabel};
#[cfg(not(feature = "std"))]
use num_traits::Float;

type Bq = Biquaternion<f64>;
type Op = RealLinearOp<f64>;

/// `L = B R` with `R` a real rotor and `B` a bireal boost.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzElement<T: Scalar> {
    pub l: Biquaternion<T>,
    pub r: Biquaternion<T>,
    pub b: Biquaternion<T>,
}

impl<T: Scalar> LorentzElement<T> {
    pub fn identity() -> Self {
        LorentzElement { l: Biquaternion::one(), r: Biquaternion::one(), b: Biquaternion::one() }
    }

    /// Assemble from a boost and a rotation without checks.
    pub fn from_parts(b: Biquaternion<T>, r: Biquaternion<T>) -> Self {
        LorentzElement { l: &b * &r, r, b }
    }

    /// Largest deviation from `LL̄ = 1`, `R* = R`, `RR̄ = 1`, `B⁺ = B`, `L = BR`.
    pub fn invariant_defect(&self) -> f64 {
        let one = Biquaternion::<T>::one();
        [
            (&self.l * &self.l.bar() - &one).max_abs(),
            (&self.r.star() - &self.r).max_abs(),
            (&self.r * &self.r.bar() - &one).max_abs(),
            (&self.b.plus() - &self.b).max_abs(),
            (&(&self.b * &self.r) - &self.l).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> LorentzElement<f64> {
        LorentzElement { l: self.l.to_f64(), r: self.r.to_f64(), b: self.b.to_f64() }
    }
}

fn unit(axis: [f64; 3]) -> Result<[f64; 3]> {
    let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidAxis);
    }
    Ok(axis)
}

pub fn make_lorentz(rot_axis: [f64; 3], rot_angle: f64, boost_axis: [f64; 3], rapidity: f64) -> Result<LorentzElement<f64>> {
    let r = rotor(unit(rot_axis)?, rot_angle);
    let b = boost_factor(unit(boost_axis)?, rapidity);
    Ok(LorentzElement::from_parts(b, r))
}

impl LorentzElement<f64> {
    /// Polar split of an SL(2,C) element: `B = (1 + LL⁺)/√(2(1 + ⟨LL⁺⟩))`,
    /// `R = B̄L`, with the overall sign fixed so that `⟨R⟩ ≥ 0`.
    pub fn from_l(l: Bq) -> Self {
        let h = &l * &l.plus();
        let h0 = h.s.re;
        let mut b = (&Bq::one() + &h).scale_real(&(1.0 / (2.0 * (1.0 + h0)).sqrt()));
        let mut r = &b.bar() * &l;
        if r.s.re < 0.0 {
            b = -b;
            r = -r;
        }
        LorentzElement { l, r, b }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::from_l(&self.l * &other.l)
    }

    /// Rotation vector `θa` and boost vector `ρb` of the two factors.
    pub fn params(&self) -> [f64; 6] {
        let rv = [self.r.v[0].re, self.r.v[1].re, self.r.v[2].re];
        let sr = rv.iter().map(|x| x * x).sum::<f64>().sqrt();
        let half_angle = sr.atan2(self.r.s.re);
        let bv = [self.b.v[0].im, self.b.v[1].im, self.b.v[2].im];
        let sb = bv.iter().map(|x| x * x).sum::<f64>().sqrt();
        let half_rap = sb.asinh();
        let k_r = if sr > 0.0 { 2.0 * half_angle / sr } else { 2.0 };
        let k_b = if sb > 0.0 { 2.0 * half_rap / sb } else { 2.0 };
        [rv[0] * k_r, rv[1] * k_r, rv[2] * k_r, bv[0] * k_b, bv[1] * k_b, bv[2] * k_b]
    }

    /// Inverse of [`params`](Self::params).
    pub fn from_params(p: &[f64; 6]) -> Self {
        let r = Bq::real_vector([p[0], p[1], p[2]]).scale_real(&0.5).exp();
        let b = Bq::real_vector([p[3], p[4], p[5]]).mul_i().scale_real(&0.5).exp();
        LorentzElement::from_parts(b, r)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> Self {
        let a = random_axis(rng);
        let b = random_axis(rng);
        let theta = rng.gen_range(0.0..core::f64::consts::TAU);
        let rho = rng.gen_range(0.0..max_rapidity);
        make_lorentz(a, theta, b, rho).expect("unit axes")
    }
}

pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0f64)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Rows of the Lorentz action table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionRow {
    Zero,
    HalfPlus,
    HalfMinus,
    One,
    ThreeHalfL,
}

impl ActionRow {
    pub const ALL: [ActionRow; 5] = [ActionRow::Zero, ActionRow::HalfPlus, ActionRow::HalfMinus, ActionRow::One, ActionRow::ThreeHalfL];

    pub fn tag(self) -> &'static str {
        match self {
            ActionRow::Zero => "0",
            ActionRow::HalfPlus => "1_2p",
            ActionRow::HalfMinus => "1_2m",
            ActionRow::One => "1",
            ActionRow::ThreeHalfL => "3_2L",
        }
    }

    /// Real component counts `(N_A, N_B)` listed for the row.
    pub fn listed_dims(self) -> (usize, usize) {
        match self {
            ActionRow::Zero => (4, 2),
            ActionRow::HalfPlus | ActionRow::HalfMinus => (4, 4),
            ActionRow::One => (4, 6),
            ActionRow::ThreeHalfL => (8, 8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldRole {
    A,
    B,
}

/// Left and right factors of the row's monomial `left [·] right`.
pub fn action_factors<T: Scalar>(row: ActionRow, role: FieldRole, lt: &LorentzElement<T>, f: &Frame<T>) -> (Biquaternion<T>, Biquaternion<T>) {
    let l = &lt.l;
    let left = match role {
        FieldRole::A => l.clone(),
        FieldRole::B => l.star(),
    };
    match (row, role) {
        (ActionRow::Zero, FieldRole::A) => (left, l.plus()),
        (ActionRow::Zero, FieldRole::B) => (Biquaternion::one(), Biquaternion::one()),
        (ActionRow::HalfPlus, _) => (left, f.sigma.clone()),
        (ActionRow::HalfMinus, _) => (left, f.sigma_bar.clone()),
        (ActionRow::One, _) => (left, l.plus()),
        (ActionRow::ThreeHalfL, _) => (left, &lt.r * &lt.r),
    }
}

pub fn act<T: Scalar>(row: ActionRow, role: FieldRole, lt: &LorentzElement<T>, x: &Biquaternion<T>, f: &Frame<T>) -> Biquaternion<T> {
    let (a, b) = action_factors(row, role, lt, f);
    &(&a * x) * &b
}

pub fn act_op<T: Scalar>(row: ActionRow, role: FieldRole, lt: &LorentzElement<T>, f: &Frame<T>) -> RealLinearOp<T> {
    let (a, b) = action_factors(row, role, lt, f);
    RealLinearOp::monomial(&a, &b, Flavor::Id)
}

/// `x ↦ L x R²`, the A-field action of the four-component row.
pub fn l32_action<T: Scalar>(lt: &LorentzElement<T>) -> RealLinearOp<T> {
    RealLinearOp::monomial(&lt.l, &(&lt.r * &lt.r), Flavor::Id)
}

/// Projection-like map whose image is the designated field subspace of a row.
pub fn subspace_map<T: Scalar>(row: ActionRow, role: FieldRole, f: &Frame<T>) -> impl Fn(&Biquaternion<T>) -> Biquaternion<T> + '_ {
    move |x: &Biquaternion<T>| match (row, role) {
        (ActionRow::Zero, FieldRole::A) | (ActionRow::One, FieldRole::A) => (x + &x.plus()).scale_real(&T::half()),
        (ActionRow::Zero, FieldRole::B) => Biquaternion::scalar(x.s.clone()),
        (ActionRow::HalfPlus, _) => x * &f.sigma,
        (ActionRow::HalfMinus, _) => x * &f.sigma_bar,
        (ActionRow::One, FieldRole::B) => x.vector_part(),
        (ActionRow::ThreeHalfL, _) => x.clone(),
    }
}

/// Real spanning set of the designated subspace.
pub fn subspace_span<T: Scalar>(row: ActionRow, role: FieldRole, f: &Frame<T>) -> Vec<Biquaternion<T>> {
    let p = subspace_map(row, role, f);
    (0..8).map(|k| p(&Biquaternion::basis(k))).collect()
}

fn rows_of(xs: &[Bq]) -> Vec<Vec<f64>> {
    xs.iter().map(|x| x.to_real8().to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceClosure {
    pub closed: bool,
    pub real_dim_a: usize,
    pub real_dim_b: usize,
}

/// Checks that random transformations keep each designated subspace inside itself.
pub fn subspace_closure<R: Rng + ?Sized>(row: ActionRow, f: &Frame<f64>, rng: &mut R, samples: usize) -> SubspaceClosure {
    let tol = 1e-10;
    let mut dims = [0usize; 2];
    let mut closed = true;
    for (k, role) in [FieldRole::A, FieldRole::B].into_iter().enumerate() {
        let span = subspace_span(row, role, f);
        let dim = span_rank(&rows_of(&span), tol);
        dims[k] = dim;
        for _ in 0..samples {
            let lt = LorentzElement::random(rng, 1.5);
            let mut all = span.clone();
            all.extend(span.iter().map(|x| act(row, role, &lt, x, f)));
            if span_rank(&rows_of(&all), tol) != dim {
                closed = false;
            }
        }
    }
    SubspaceClosure { closed, real_dim_a: dims[0], real_dim_b: dims[1] }
}

/// Representation whose scalar-product behavior is examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Exponential of the column generators.
    Exponential(SpinLabel),
    /// `L[·]R²`.
    FourComponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Rotation,
    Boost,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub minkowski_invariant: bool,
    pub unitary_invariant: bool,
    pub minkowski_violation: f64,
    pub unitary_violation: f64,
}

impl InvarianceReport {
    pub fn max_violation(&self) -> f64 {
        self.minkowski_violation.max(self.unitary_violation)
    }
}

pub const INVARIANCE_TOL: f64 = 1e-10;

fn random_combination<R: Rng + ?Sized>(rng: &mut R, span: &[Bq]) -> Bq {
    span.iter().fold(Bq::zero(), |acc, x| &acc + &x.scale_real(&rng.gen_range(-1.0..1.0)))
}

/// The two products compared by the report. On the spin-½ columns the scalar part
/// of `X̄Y` vanishes identically, so the whole product is compared there.
fn products(rep: Representation, x: &Bq, y: &Bq) -> (Bq, Bq) {
    let full = matches!(rep, Representation::Exponential(SpinLabel::HalfPlus | SpinLabel::HalfMinus));
    let mk = &x.bar() * y;
    let un = &x.plus() * y;
    if full {
        (mk, un)
    } else {
        (Bq::scalar(mk.s), Bq::scalar(un.s))
    }
}

pub fn invariance_report<R: Rng + ?Sized>(rep: Representation, kind: TransformKind, f: &Frame<f64>, rng: &mut R, samples: usize) -> InvarianceReport {
    let span: Vec<Bq> = match rep {
        Representation::Exponential(s) => spin::designated_span(s, f),
        Representation::FourComponent => (0..8).map(Bq::basis).collect(),
    };
    let (mut mk_v, mut un_v) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let axis = random_axis(rng);
        let op = match (rep, kind) {
            (Representation::Exponential(s), TransformKind::Rotation) => {
                spin::rotate(s, axis, rng.gen_range(0.0..core::f64::consts::TAU), f).expect("unit axis")
            }
            (Representation::Exponential(s), TransformKind::Boost) => spin::boost(s, axis, rng.gen_range(0.2..1.5), f).expect("unit axis"),
            (Representation::FourComponent, TransformKind::Rotation) => {
                l32_action(&LorentzElement::from_parts(Bq::one(), rotor(axis, rng.gen_range(0.0..core::f64::consts::TAU))))
            }
            (Representation::FourComponent, TransformKind::Boost) => {
                l32_action(&LorentzElement::from_parts(boost_factor(axis, rng.gen_range(0.2..1.5)), Bq::one()))
            }
        };
        let x = random_combination(rng, &span);
        let y = random_combination(rng, &span);
        let (m0, u0) = products(rep, &x, &y);
        let (m1, u1) = products(rep, &op.apply(&x), &op.apply(&y));
        mk_v = mk_v.max((&m1 - &m0).max_abs());
        un_v = un_v.max((&u1 - &u0).max_abs());
    }
    InvarianceReport {
        minkowski_invariant: mk_v <= INVARIANCE_TOL,
        unitary_invariant: un_v <= INVARIANCE_TOL,
        minkowski_violation: mk_v,
        unitary_violation: un_v,
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub nu_rotation_residual: f64,
    pub rotations_about_nu_close: bool,
    pub l1: LorentzElement<f64>,
    pub l2: LorentzElement<f64>,
    /// Best-fit Frobenius residual of the composed action against `L[·]R'²`.
    pub defect: f64,
    pub best_fit: LorentzElement<f64>,
}

fn frobenius(a: &Op, b: &Op) -> f64 {
    let mut s = 0.0;
    for r in 0..8 {
        for c in 0..8 {
            let d = a.m[r][c] - b.m[r][c];
            s += d * d;
        }
    }
    s.sqrt()
}

/// Smallest Frobenius distance from `target` to an action `L[·]R²`, by multi-start
/// Nelder–Mead over the six group parameters.
pub fn best_l32_fit(target: &Op, seeds: &[LorentzElement<f64>]) -> (f64, LorentzElement<f64>) {
    let cost = |p: &[f64; 6]| frobenius(&l32_action(&LorentzElement::from_params(p)), target);
    let mut starts: Vec<[f64; 6]> = seeds.iter().map(LorentzElement::params).collect();
    starts.push([0.0; 6]);
    for k in 0..6 {
        for s in [-0.7, 0.7] {
            let mut p = [0.0; 6];
            p[k] = s;
            starts.push(p);
        }
    }
    let mut best = (f64::INFINITY, [0.0; 6]);
    for x0 in starts {
        let (_, x) = nelder_mead(&cost, x0, 0.3, 4000);
        let (v, x) = nelder_mead(&cost, x, 0.01, 4000);
        if v < best.0 {
            best = (v, x);
        }
    }
    (best.0, LorentzElement::from_params(&best.1))
}

fn nelder_mead<const N: usize>(f: &impl Fn(&[f64; N]) -> f64, x0: [f64; N], step: f64, iters: usize) -> (f64, [f64; N]) {
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }
    let lerp = |a: &[f64; N], b: &[f64; N], t: f64| -> [f64; N] { core::array::from_fn(|i| a[i] + t * (b[i] - a[i])) };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[N].1 - simplex[0].1 < 1e-15 {
            break;
        }
        let centroid: [f64; N] = core::array::from_fn(|i| simplex[..N].iter().map(|(x, _)| x[i]).sum::<f64>() / N as f64);
        let worst = simplex[N];
        let xr = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
        } else {
            let xc = if fr < worst.1 { lerp(&centroid, &xr, 0.5) } else { lerp(&centroid, &worst.0, 0.5) };
            let fc = f(&xc);
            if fc < worst.1.min(fr) {
                simplex[N] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &entry.0, 0.5);
                    *entry = (x, f(&x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].1, simplex[0].0)
}

/// ν-rotation closure and a two-boost counterexample.
pub fn closure_test(f: &Frame<f64>) -> ClosureReport {
    let nu = [f.nu.v[0].re, f.nu.v[1].re, f.nu.v[2].re];
    let mut residual = 0.0f64;
    for (t1, t2) in [(0.3, 1.1), (2.0, -0.7), (3.5, 4.0), (-1.2, 5.9)] {
        let rot = |t: f64| LorentzElement::from_parts(Bq::one(), rotor(nu, t));
        let lhs = l32_action(&rot(t1)).compose(&l32_action(&rot(t2)));
        residual = residual.max(lhs.max_abs_diff(&l32_action(&rot(t1 + t2))));
    }
    let l1 = make_lorentz([1.0, 0.0, 0.0], 0.0, [1.0, 0.0, 0.0], 0.9).expect("unit axes");
    let l2 = make_lorentz([1.0, 0.0, 0.0], 0.0, [0.0, 0.6, 0.8], 1.1).expect("unit axes");
    let target = l32_action(&l1).compose(&l32_action(&l2));
    let natural = l1.compose(&l2);
    let (defect, best_fit) = best_l32_fit(&target, &[natural]);
    ClosureReport { nu_rotation_residual: residual, rotations_about_nu_close: residual <= 1e-12, l1, l2, defect, best_fit }
}
