//! Bilinear covariants: algebraic type, transformation character, the current laws,
//! the divergence laws of the extra four-vectors and the Lagrangian density.

use biquat::covariants::*;
use biquat::equations::{gauge_transform, lanczos_plane_wave, lanczos_residual, ExternalField, Momentum};
use biquat::field::{Field, Poly};
use biquat::lorentz::{act, ActionRow, FieldRole, LorentzElement};
use biquat::sample;
use biquat::{Biquaternion, Frame, Rational, Scalar, C};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::spin::random_frame;
use super::{c_abs, c_json, frames, lorentz_samples, q};
use crate::registry::{Ctx, Outcome, Suite};

type F<T> = Field<T>;

const CHARACTER_TOL: f64 = 1e-12;
const STATED_MARGIN: f64 = 1e-3;
const FLOAT_TRANSFORMS: usize = 50;
const MAX_RAPIDITY: f64 = 1.5;

fn dev<T: Scalar>(x: &F<T>, y: &F<T>) -> f64 {
    (x - y).max_abs() / (1.0 + y.max_abs())
}

/// Deviation of each covariant from its expected transformation law.
#[derive(Clone, Copy, Default)]
struct Chars {
    s: f64,
    v: f64,
    t: f64,
    c: f64,
    six: f64,
    inv: f64,
}

impl Chars {
    fn merge(&mut self, o: Chars) {
        self.s = self.s.max(o.s);
        self.v = self.v.max(o.v);
        self.t = self.t.max(o.t);
        self.c = self.c.max(o.c);
        self.six = self.six.max(o.six);
        self.inv = self.inv.max(o.inv);
    }
}

fn chars_at<T: Scalar>(lt: &LorentzElement<T>, f: &Frame<T>, a: &Biquaternion<T>, b: &Biquaternion<T>) -> Chars {
    let l = &lt.l;
    let four = |x: &F<T>| x.lmul(l).rmul(&l.plus());
    let mut out = Chars::default();
    let row = ActionRow::ThreeHalfL;
    let (a2, b2) = (act(row, FieldRole::A, lt, a, f), act(row, FieldRole::B, lt, b, f));
    let (k0, k1) = (covariants_at(a, b), covariants_at(&a2, &b2));
    out.s = dev(&k1.s_p, &k0.s_p).max(dev(&k1.s_a, &k0.s_a));
    out.v = dev(&k1.v_p, &four(&k0.v_p)).max(dev(&k1.v_a, &four(&k0.v_a)));
    let (t0, t1) = (amplitude(a, b), amplitude(&a2, &b2));
    out.t = c_abs(&(t1 - t0.clone())) / (1.0 + c_abs(&t0));
    for (row, proj) in [(ActionRow::HalfPlus, &f.sigma), (ActionRow::HalfMinus, &f.sigma_bar)] {
        let (a, b) = (a * proj, b * proj);
        let (a2, b2) = (act(row, FieldRole::A, lt, &a, f), act(row, FieldRole::B, lt, &b, f));
        let (k0, k1) = (covariants_at(&a, &b), covariants_at(&a2, &b2));
        out.c = out.c.max(dev(&k1.c, &four(&k0.c))).max(dev(&k1.sigma, &four(&k0.sigma)));
        out.six = out.six.max(dev(&k1.six, &k0.six.lmul(l).rmul(&l.bar())));
        out.inv = out.inv.max(dev(&k1.inv, &k0.inv));
    }
    out
}

fn chars_over<T: Scalar>(cases: &[(LorentzElement<T>, Frame<T>)], rng: &mut ChaCha8Rng, pairs: usize) -> Chars {
    let mut out = Chars::default();
    for (lt, f) in cases {
        for _ in 0..pairs {
            let (a, b) = (sample::int_bq(rng, 3), sample::int_bq(rng, 3));
            out.merge(chars_at(lt, f, &a, &b));
        }
    }
    out
}

fn exact_chars(ctx: &Ctx) -> Chars {
    let mut cases = Vec::new();
    for f in frames::<Rational>() {
        for lt in lorentz_samples::<Rational>() {
            cases.push((lt, f.clone()));
        }
    }
    chars_over(&cases, &mut ctx.stream(1), 2)
}

fn float_chars(ctx: &Ctx) -> Chars {
    let mut rng = ctx.stream(2);
    let cases: Vec<_> = (0..FLOAT_TRANSFORMS)
        .map(|i| {
            let lt = LorentzElement::random(&mut rng, MAX_RAPIDITY);
            let f = if i % 2 == 0 { Frame::standard() } else { random_frame(&mut rng) };
            (lt, f)
        })
        .collect();
    chars_over(&cases, &mut rng, 2)
}

fn bireal_defect<T: Scalar>(x: &F<T>) -> f64 {
    (&x.plus() - x).max_abs()
}

fn random_pairs<T: Scalar>(ctx: &Ctx, n: usize) -> Vec<(F<T>, F<T>)> {
    let mut rng = ctx.stream(3);
    (0..n).map(|_| (sample::poly_field(&mut rng, 2, 3, 0.5), sample::poly_field(&mut rng, 2, 3, 0.5))).collect()
}

/// Builds a suite whose body combines an algebraic-type residual on random fields with
/// the transformation character selected by `pick`.
fn character_suite(
    id: &str,
    anchor: &'static str,
    pick: fn(&Chars) -> f64,
    shape: fn(&CovariantSet<Rational>) -> f64,
    shape_f: fn(&CovariantSet<f64>) -> f64,
) -> Suite {
    Suite::identity(id, anchor, 11)
        .exact(move |ctx| {
            let mut o = Outcome::new();
            for (a, b) in random_pairs::<Rational>(ctx, 6) {
                o.residual(shape(&covariants(&a, &b)));
            }
            o.residual(pick(&exact_chars(ctx)));
            o
        })
        .float(move |ctx| {
            let mut o = Outcome::new();
            for (a, b) in random_pairs::<f64>(ctx, 6) {
                o.residual(shape_f(&covariants(&a, &b)));
            }
            o.residual(pick(&float_chars(ctx)));
            o
        })
        .tol(CHARACTER_TOL)
}

fn current_shape<T: Scalar>(k: &CovariantSet<T>) -> f64 {
    bireal_defect(&k.c).max(bireal_defect(&k.sigma))
}

fn six_shape<T: Scalar>(k: &CovariantSet<T>) -> f64 {
    k.six.scalar_part().max_abs()
}

fn inv_shape<T: Scalar>(k: &CovariantSet<T>) -> f64 {
    k.inv.vector_part().max_abs()
}

fn s_shape<T: Scalar>(k: &CovariantSet<T>) -> f64 {
    k.s_p.vector_part().max_abs().max(k.s_a.vector_part().max_abs())
}

fn v_shape<T: Scalar>(k: &CovariantSet<T>) -> f64 {
    bireal_defect(&k.v_p).max(bireal_defect(&k.v_a.mul_i()))
}

fn singular_pairs<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in frames::<T>() {
        for _ in 0..8 {
            let l: Biquaternion<T> = sample::int_bq(&mut rng, 4);
            let r: Biquaternion<T> = sample::int_bq(&mut rng, 4);
            for proj in [&f.sigma, &f.sigma_bar] {
                let k = covariants_at(&(&l * proj), &(&r * proj));
                o.residual(k.s_p.max_abs()).residual(k.s_a.max_abs()).residual(k.v_p.max_abs()).residual(k.v_a.max_abs());
            }
        }
    }
    let k = covariants_at(&Biquaternion::<T>::one(), &frames::<T>()[0].nu);
    o.check("general pair has nonzero extra bilinears", !k.s_p.is_zero() && !k.v_a.is_zero());
    o
}

fn density<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let mut positive = true;
    for _ in 0..20 {
        let a: Biquaternion<T> = sample::int_bq(&mut rng, 4);
        let b: Biquaternion<T> = sample::int_bq(&mut rng, 4);
        let c = covariants_at(&a, &b).c;
        // ⟨C⟩ = |A|² + |B|² over the eight real components
        let norm2 = a.to_real8().iter().chain(b.to_real8().iter()).fold(T::zero(), |s, x| s + x.clone() * x.clone());
        let expect = F::constant(Biquaternion::real(norm2.clone(), T::zero(), T::zero(), T::zero()));
        o.residual((&c.scalar_part() - &expect).max_abs());
        positive &= a.max_abs() + b.max_abs() == 0.0 || norm2.to_f64() > 0.0;
    }
    o.check("density positive for nonzero pairs", positive);
    o.check("density of the zero pair vanishes", covariants_at(&Biquaternion::<T>::zero(), &Biquaternion::zero()).c.is_zero());
    o
}

fn amplitude_fixtures<T: Scalar>(o: &mut Outcome) {
    for f in frames::<T>() {
        o.residual(c_abs(&amplitude(&f.sigma, &f.sigma_bar)));
        o.residual(c_abs(&(amplitude(&f.sigma, &f.sigma) - C::new(q(1, 2), T::zero()))));
        o.residual(c_abs(&(amplitude(&Biquaternion::<T>::one(), &Biquaternion::one()) - C::new(T::one(), T::zero()))));
    }
}

fn amplitude_suite() -> Suite {
    Suite::identity("eq40.amplitude", "Eq. (40)", 11)
        .exact(|ctx| {
            let mut o = Outcome::new();
            amplitude_fixtures::<Rational>(&mut o);
            let f = Frame::<Rational>::standard();
            o.info("sigma_sigma", c_json(&amplitude(&f.sigma, &f.sigma)));
            o.residual(exact_chars(ctx).t);
            o
        })
        .float(|ctx| {
            let mut o = Outcome::new();
            amplitude_fixtures::<f64>(&mut o);
            o.residual(float_chars(ctx).t);
            o
        })
        .tol(CHARACTER_TOL)
}

/// An exact solution of the A/B system together with its external field.
struct Solution<T: Scalar> {
    label: &'static str,
    a: F<T>,
    b: F<T>,
    ext: ExternalField<T>,
    m: T,
}

fn free_waves<T: Scalar>(f: &Frame<T>) -> (F<T>, F<T>) {
    let ps = [
        Momentum::new(q(5, 4), [q(3, 4), T::zero(), T::zero()], T::one()),
        Momentum::new(q(2, 1), [T::one(), T::one(), T::one()], T::one()),
    ];
    let (mut a, mut b) = (F::zero(), F::zero());
    for (i, p) in ps.iter().enumerate() {
        let a0 = Biquaternion::from_ints([1, 0, i as i64, 2, 0, -1, 0, 1]);
        let (ai, bi) = lanczos_plane_wave(p, &a0, f).expect("on shell");
        a = &a + &ai;
        b = &b + &bi;
    }
    (a, b)
}

/// Free plane waves, their pure-gauge coupled image `Ψ e^{−ieχ}` and the constant
/// solution `B = −eφ̄A/m` for constant `φ` with `φφ̄ = m²/e²`.
fn solutions<T: Scalar>() -> Vec<Solution<T>> {
    let f = Frame::<T>::standard();
    let (a, b) = free_waves(&f);
    let e = q::<T>(2, 1);
    let c: [T; 4] = [q(1, 2), q(1, 3), q(-1, 1), q(2, 1)];
    let k: [T; 4] = core::array::from_fn(|j| e.clone() * c[j].clone());
    let phase = F::wave(k, Poly::constant(Biquaternion::one()), Poly::constant(Biquaternion::one().scale(&C::new(T::zero(), -T::one()))));
    let (_, gauged) = gauge_transform(&a, &ExternalField::new(ExternalField::zero().comps, e), &c, &f);
    let cst = |x: T| F::constant(Biquaternion::real(x, T::zero(), T::zero(), T::zero()));
    let ext = ExternalField::new([cst(q(5, 4)), cst(q(3, 4)), F::zero(), F::zero()], T::one());
    let a0 = F::constant(Biquaternion::from_ints([1, 2, 0, -1, 3, 0, 1, 0]));
    let b0 = (&ext.phi_bar() * &a0).scale_real(&-T::one());
    vec![
        Solution { label: "free plane waves", a: a.clone(), b: b.clone(), ext: ExternalField::zero(), m: T::one() },
        Solution { label: "pure gauge", a: &a * &phase, b: &b * &phase, ext: gauged, m: T::one() },
        Solution { label: "constant field", a: a0, b: b0, ext, m: T::one() },
    ]
}

fn solution_residual<T: Scalar>(s: &Solution<T>) -> f64 {
    let (ra, rb) = lanczos_residual(&s.a, &s.b, &s.ext, &s.m);
    ra.max_abs().max(rb.max_abs())
}

fn coupled_pairs<T: Scalar>(ctx: &Ctx) -> Vec<(F<T>, F<T>, ExternalField<T>)> {
    let mut rng = ctx.stream(5);
    (0..3)
        .map(|_| {
            let comps: [F<T>; 4] = core::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 2, 2));
            let a = sample::poly_field(&mut rng, 2, 3, 0.3);
            let b = sample::poly_field(&mut rng, 2, 3, 0.3);
            (a, b, ExternalField::new(comps, q(2, 1)))
        })
        .collect()
}

fn current_divergence_suite<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for (a, b, ext) in coupled_pairs::<T>(ctx) {
        let (l, r) = current_divergence(&a, &b, &ext, &q(3, 2));
        o.residual((&l - &r).max_abs());
    }
    for s in solutions::<T>() {
        o.residual(solution_residual(&s));
        let (l, _) = current_divergence(&s.a, &s.b, &s.ext, &s.m);
        o.residual(l.max_abs());
    }
    o
}

fn vector_divergence<T: Scalar>(ctx: &Ctx, polar: bool) -> Outcome {
    let mut o = Outcome::new();
    let pick = |d: &DivergenceIdentities<T>| if polar { (d.vp_residual.clone(), d.vp_lhs.clone(), d.vp_rhs.clone()) } else { (d.va_residual.clone(), d.va_lhs.clone(), d.va_rhs.clone()) };
    let mut corrections = true;
    for (a, b, ext) in coupled_pairs::<T>(ctx) {
        let d = divergence_identities(&a, &b, &ext, &q(3, 2));
        o.residual(pick(&d).0.max_abs());
        corrections &= !d.correction_terms.0.is_zero();
    }
    o.check("random fields carry residual corrections", corrections);
    for s in solutions::<T>() {
        o.residual(solution_residual(&s));
        let d = divergence_identities(&s.a, &s.b, &s.ext, &s.m);
        let (_, lhs, rhs) = pick(&d);
        o.residual((&lhs - &rhs).max_abs());
        o.residual(d.correction_terms.0.max_abs().max(d.correction_terms.1.max_abs()));
    }
    o
}

fn stated_divergence(polar: bool) -> impl Fn(&Ctx) -> Outcome {
    move |_| {
        let mut o = Outcome::new();
        let s = solutions::<Rational>().pop().expect("constant solution");
        o.residual(solution_residual(&s));
        let d = divergence_identities(&s.a, &s.b, &s.ext, &s.m);
        let (p_vp, p_va) = literal_divergence_rhs(&s.a, &s.b, &s.ext);
        let (lhs, rhs, stated) = if polar { (&d.vp_lhs, &d.vp_rhs, &p_vp) } else { (&d.va_lhs, &d.va_rhs, &p_va) };
        o.residual((lhs - rhs).max_abs());
        let defect = (lhs - stated).max_abs();
        let scal = |x: &F<Rational>| {
            let z = x.eval(&[0.0; 4]).s;
            json!([z.re, z.im])
        };
        o.witness_above(
            defect,
            STATED_MARGIN,
            json!({
                "solution": s.label,
                "divergence": scal(lhs),
                "corrected_rhs": scal(rhs),
                "stated_rhs": scal(stated),
                "stated_defect": defect,
            }),
        );
        o
    }
}

fn lagrangian<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for s in solutions::<T>() {
        o.residual(solution_residual(&s));
        o.residual(lagrangian_density(&s.a, &s.b, &s.ext, &s.m).max_abs());
    }
    let mut nonzero = false;
    for (a, b, ext) in coupled_pairs::<T>(ctx) {
        let m = q::<T>(3, 2);
        let l = lagrangian_density(&a, &b, &ext, &m);
        let (ra, rb) = lanczos_residual(&a, &b, &ext, &m);
        let w = (&(&a.plus() * &ra) + &(&b.plus() * &rb)).scalar_part();
        o.residual((&l - &(&w + &w.star()).scale_real(&q(1, 2))).max_abs());
        o.residual(l.vector_part().max_abs()).residual((&l - &l.star()).max_abs());
        nonzero |= !l.is_zero_within(1e-9);
    }
    o.check("density is nonzero off shell", nonzero);
    o
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite::identity("eq41.singular_pairs", "Eq. (41)", 11).exact(singular_pairs::<Rational>).float(singular_pairs::<f64>),
        character_suite("eq41.s_invariance", "Eq. (41)", |c| c.s, s_shape, s_shape),
        character_suite("eq43.v_four_vector", "Eq. (43)", |c| c.v, v_shape, v_shape),
        character_suite("eq34.current_law", "Eq. (34)", |c| c.c, current_shape, current_shape),
        character_suite("eq38.six_vector", "Eq. (38)", |c| c.six, six_shape, six_shape),
        character_suite("eq39.invariant_scalar", "Eq. (39)", |c| c.inv, inv_shape, inv_shape),
        amplitude_suite(),
        Suite::identity("eq35.current_divergence", "Eq. (35)", 11).exact(current_divergence_suite::<Rational>).float(current_divergence_suite::<f64>),
        Suite::identity("eq36.density", "Eq. (36)", 11).exact(density::<Rational>).float(density::<f64>),
        Suite::identity("eq45.divergence", "Eq. (45)", 11).exact(|c| vector_divergence::<Rational>(c, true)).float(|c| vector_divergence::<f64>(c, true)),
        Suite::identity("eq46.divergence", "Eq. (46)", 11).exact(|c| vector_divergence::<Rational>(c, false)).float(|c| vector_divergence::<f64>(c, false)),
        Suite::witness("eq45.stated", "Eq. (45)", 11).exact(stated_divergence(true)),
        Suite::witness("eq46.stated", "Eq. (46)", 11).exact(stated_divergence(false)),
        Suite::identity("eq39.lagrangian", "Eq. (39)", 11).exact(lagrangian::<Rational>).float(lagrangian::<f64>),
    ]
}
