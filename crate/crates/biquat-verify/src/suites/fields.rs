//! Gradient convention, the A/B system, the Dirac-Lanczos equation and its doublet,
//! current conservation, gauge covariance and the massive vector potential.

use biquat::conventions::{nabla, nabla_bar, select_nabla_convention, selection_table, NablaSpec};
use biquat::equations::*;
use biquat::field::Field;
use biquat::linalg::{rank, span_rank};
use biquat::rarita_schwinger::pi_bar_op;
use biquat::sample;
use biquat::{Biquaternion, Error, Frame, Rational, Scalar, C};
use rand::Rng;
use serde_json::json;

use super::{boosted_momenta, frames, momenta, q, random_ext};
use crate::registry::{Ctx, Outcome, Suite};

type F<T> = Field<T>;

fn zero_tol<T: Scalar>() -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-10
    }
}

fn all_momenta<T: Scalar>() -> Vec<Momentum<T>> {
    let mut v = momenta::<T>();
    v.extend(boosted_momenta::<T>());
    v
}

fn off_shell<T: Scalar>(p: &Momentum<T>) -> Momentum<T> {
    Momentum::new(p.p0.clone() + q::<T>(1, 3), p.p.clone(), p.m.clone())
}

fn selection(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let table = selection_table();
    let rows: Vec<_> = table
        .iter()
        .map(|r| {
            json!({
                "candidate": r.candidate.label(),
                "equivariant": r.equivariant,
                "klein_gordon": r.klein_gordon,
                "conserved": r.conserved,
                "tensor_consistent": r.tensor_consistent,
            })
        })
        .collect();
    o.info("candidates", rows);
    o.check("exactly one candidate passes", table.iter().filter(|r| r.passes()).count() == 1);
    o.check("selected convention is the frozen one", select_nabla_convention() == Ok(NablaSpec::SELECTED));
    o
}

fn ab_plane_waves<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let free = ExternalField::zero();
    for f in frames::<T>() {
        let (mut a, mut b) = (F::zero(), F::zero());
        for p in all_momenta::<T>() {
            let a0: Biquaternion<T> = sample::int_bq(&mut rng, 3);
            let (ai, bi) = lanczos_plane_wave(&p, &a0, &f).expect("on shell");
            let (ra, rb) = lanczos_residual(&ai, &bi, &free, &p.m);
            o.residual(ra.max_abs()).residual(rb.max_abs());
            a = &a + &ai;
            b = &b + &bi;
        }
        let (ra, rb) = lanczos_residual(&a, &b, &free, &T::one());
        o.residual(ra.max_abs()).residual(rb.max_abs());
    }
    let f = Frame::<T>::standard();
    let p = &momenta::<T>()[1];
    o.check("off shell rejected", lanczos_plane_wave(&off_shell(p), &Biquaternion::one(), &f).unwrap_err() == Error::OffShell);
    let massless = Momentum::new(T::one(), [T::one(), T::zero(), T::zero()], T::zero());
    o.check("zero mass rejected", lanczos_plane_wave(&massless, &Biquaternion::one(), &f).unwrap_err() == Error::DegenerateMass);
    o
}

fn nullspace<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let free = ExternalField::zero();
    for f in frames::<T>() {
        for p in all_momenta::<T>() {
            let sols = plane_wave_solutions(&p, &f).expect("on shell");
            o.check("four solutions on shell", sols.len() == 4);
            let rows: Vec<Vec<T>> = sols.iter().map(|z| z.to_real8().to_vec()).collect();
            o.check("solutions independent", span_rank(&rows, zero_tol::<T>()) == 4);
            for z in &sols {
                let psi = plane_wave(&p.wave_vector(), z, &f);
                o.residual(dirac_lanczos_residual(&psi, &free, &p.m, &f).max_abs());
            }
            let off = off_shell(&p);
            o.check("off shell rejected", plane_wave_solutions(&off, &f).unwrap_err() == Error::OffShell);
            let sym = dirac_symbol(&NablaSpec::SELECTED, &off.wave_vector(), &off.m, &f);
            o.check("symbol invertible off shell", rank(&sym, 8, zero_tol::<T>()) == 8);
            o.check("empty nullspace off shell", dirac_symbol_nullspace(&NablaSpec::SELECTED, &off.wave_vector(), &off.m, &f).is_empty());
        }
    }
    o
}

fn klein_gordon<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let free = ExternalField::zero();
    let f = Frame::<T>::standard();
    for p in all_momenta::<T>() {
        for z in plane_wave_solutions(&p, &f).expect("on shell") {
            o.residual(kg_residual(&plane_wave(&p.wave_vector(), &z, &f), &p.m).max_abs());
        }
    }
    let m = q::<T>(3, 2);
    let m2 = m.clone() * m.clone();
    for _ in 0..5 {
        let a: F<T> = sample::poly_field(&mut rng, 4, 3, 0.4);
        let b: F<T> = sample::poly_field(&mut rng, 4, 3, 0.4);
        let (ra, rb) = lanczos_residual(&a, &b, &free, &m);
        let lhs_a = &nabla(&nabla_bar(&a)) - &a.scale_real(&m2);
        let lhs_b = &nabla_bar(&nabla(&b)) - &b.scale_real(&m2);
        o.residual((&lhs_a - &(&nabla(&ra) + &rb.scale_real(&m))).max_abs());
        o.residual((&lhs_b - &(&nabla_bar(&rb) + &ra.scale_real(&m))).max_abs());
        // ∇∇̄ is minus the d'Alembertian
        let dal = &a.deriv(0).deriv(0) - &(1..4).fold(F::zero(), |acc, j| &acc + &a.deriv(j).deriv(j));
        o.residual((&nabla(&nabla_bar(&a)) + &dal).max_abs());
    }
    o
}

fn superposed_ab<T: Scalar>(f: &Frame<T>, rng: &mut impl Rng) -> (F<T>, F<T>) {
    let (mut a, mut b) = (F::zero(), F::zero());
    for p in momenta::<T>() {
        let a0: Biquaternion<T> = sample::int_bq(rng, 3);
        let (ai, bi) = lanczos_plane_wave(&p, &a0, f).expect("on shell");
        a = &a + &ai;
        b = &b + &bi;
    }
    (a, b)
}

fn doublet<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let free = ExternalField::zero();
    let m = T::one();
    for f in frames::<T>() {
        let (a, b) = superposed_ab(&f, &mut rng);
        let (pp, pm) = build_doublet(&a, &b, &f);
        for psi in [&pp, &pm] {
            o.residual(dirac_lanczos_residual(psi, &free, &m, &f).max_abs());
            o.residual(kg_residual(psi, &m).max_abs());
        }
        o.check("doublet members differ", (&pp - &pm).max_abs() > 1e-6);
        // the projections recover the pair
        o.residual((&pp.rmul(&f.sigma) - &a.rmul(&f.sigma)).max_abs());
        o.residual((&pp.rmul(&f.sigma_bar) - &b.star().rmul(&f.sigma_bar)).max_abs());
    }
    o
}

/// Projecting `(A, B)` on `σ` or `σ̄` gives the two singular pairs of the spin-½ system.
fn two_component<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let free = ExternalField::zero();
    let m = T::one();
    for f in frames::<T>() {
        let (a, b) = superposed_ab(&f, &mut rng);
        for (proj, other) in [(&f.sigma, &f.sigma_bar), (&f.sigma_bar, &f.sigma)] {
            let (l, r) = (a.rmul(proj), b.rmul(proj));
            let (rl, rr) = lanczos_residual(&l, &r, &free, &m);
            o.residual(rl.max_abs()).residual(rr.max_abs());
            o.residual(l.rmul(other).max_abs()).residual(r.rmul(other).max_abs());
            o.residual((&l * &r.bar()).max_abs());
            o.check("projection nonzero", l.max_abs() > 1e-6);
        }
        o.residual((&(&a.rmul(&f.sigma) + &a.rmul(&f.sigma_bar)) - &a).max_abs());
    }
    o
}

fn superposed_single<T: Scalar>(f: &Frame<T>) -> F<T> {
    let mut psi = F::zero();
    for (i, p) in momenta::<T>().into_iter().enumerate().skip(1) {
        let sols = plane_wave_solutions(&p, f).expect("on shell");
        let z = &sols[i % 4] + &sols[(i + 2) % 4].scale_real(&q(-3, 2));
        psi = &psi + &plane_wave(&p.wave_vector(), &z, f);
    }
    psi
}

fn current_conservation<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in frames::<T>() {
        let psi = superposed_single(&f);
        o.residual(divergence_scalar(&current(&psi)).max_abs());
        o.check("reversed ordering not conserved", divergence_scalar(&current_reversed(&psi)).max_abs() > 1e-6);
        for _ in 0..20 {
            let x: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            let c = current(&psi).eval(&x);
            o.check("density non-negative", c.s.re >= -1e-9);
        }
    }
    for _ in 0..200 {
        let z: Biquaternion<T> = sample::int_bq(&mut rng, 5);
        let c = (&z * &z.plus()).s;
        o.residual(c.im.abs_f64());
        let sq = z.to_real8().iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
        o.residual((c.re - sq).abs_f64());
    }
    o
}

fn gauge<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let f = Frame::<T>::standard();
    let m = T::one();
    for _ in 0..3 {
        let ext = random_ext::<T, _>(&mut rng, 1, 2);
        let psi: F<T> = sample::poly_field(&mut rng, 2, 3, 0.4);
        let c: [T; 4] = core::array::from_fn(|_| q(rng.gen_range(-4..=4), 2));
        let (psi2, ext2) = gauge_transform(&psi, &ext, &c, &f);
        let (phase, _) = gauge_transform(&F::constant(Biquaternion::one()), &ext, &c, &f);
        let r1 = dirac_lanczos_residual(&psi, &ext, &m, &f);
        let r2 = dirac_lanczos_residual(&psi2, &ext2, &m, &f);
        o.residual((&r2 - &(&r1 * &phase)).max_abs());
        o.residual((&current(&psi2) - &current(&psi)).max_abs());
    }
    o
}

fn pi_bar_form<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let m = q::<T>(3, 2);
    for f in frames::<T>() {
        let ext = random_ext::<T, _>(&mut rng, 1, 1);
        let x: F<T> = sample::poly_field(&mut rng, 3, 3, 0.3);
        let direct = &nabla_bar(&x).rmul(&f.nu.mul_i()) - &(&ext.phi_bar() * &x).scale_real(&ext.e);
        o.residual((&pi_bar(&x, &ext, &f) - &direct).max_abs());
        o.residual((&pi_bar_op(&ext, &f).apply(&x) - &direct).max_abs());
        o.residual((&(&direct - &x.star().scale_real(&m)) - &dirac_lanczos_residual(&x, &ext, &m, &f)).max_abs());
    }
    o
}

/// Component view of a bireal potential `A = A0 − iA⃗`.
fn four_components<T: Scalar>(a: &F<T>) -> [F<T>; 4] {
    core::array::from_fn(|n| {
        a.map(|x| {
            let c = if n == 0 { x.s.re.clone() } else { -x.v[n - 1].im.clone() };
            Biquaternion::scalar(C::new(c, T::zero()))
        })
    })
}

fn on_vector<T: Scalar>(v: &[F<T>; 3]) -> F<T> {
    (0..3).fold(F::zero(), |acc, n| &acc + &v[n].rmul(&Biquaternion::e(n + 1)))
}

/// `F^{μν} = ∂^μA^ν − ∂^νA^μ`, `E_n = F^{n0}`, `H_n = −F^{jk}` for cyclic `(n, j, k)`.
fn tensor_oracle<T: Scalar>(c: &[F<T>; 4]) -> (impl Fn(usize, usize) -> F<T> + '_, [F<T>; 3], [F<T>; 3]) {
    let up = |mu: usize, f: &F<T>| if mu == 0 { f.deriv(0) } else { -f.deriv(mu) };
    let ften = move |mu: usize, nu: usize| &up(mu, &c[nu]) - &up(nu, &c[mu]);
    let e: [F<T>; 3] = core::array::from_fn(|n| ften(n + 1, 0));
    let h: [F<T>; 3] = core::array::from_fn(|n| -ften((n + 1) % 3 + 1, (n + 2) % 3 + 1));
    (ften, e, h)
}

fn proca_potentials<T: Scalar>(ctx: &Ctx) -> Vec<([F<T>; 4], F<T>)> {
    let mut rng = ctx.rng();
    (0..4)
        .map(|_| {
            let comps: [F<T>; 4] = core::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
            let a = ExternalField::new(comps.clone(), T::one()).phi;
            (comps, a)
        })
        .collect()
}

fn proca_bivector_suite<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for (comps, a) in proca_potentials::<T>(ctx) {
        let c = four_components(&a);
        for n in 0..4 {
            o.residual((&c[n] - &comps[n]).max_abs());
        }
        let (_, e, h) = tensor_oracle(&c);
        o.residual((&proca_bivector(&a) - &(&on_vector(&e) + &on_vector(&h).mul_i())).max_abs());
        o.residual(proca_bivector(&a).scalar_part().max_abs());
    }
    o
}

fn proca_second<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let m = q::<T>(2, 1);
    for (_, a) in proca_potentials::<T>(ctx) {
        let c = four_components(&a);
        let (ften, _, _) = tensor_oracle(&c);
        // ∂_μ F^{μν} + m² A^ν
        let res: [F<T>; 4] = core::array::from_fn(|nu| {
            let div = (0..4).fold(F::zero(), |acc, mu| &acc + &ften(mu, nu).deriv(mu));
            &div + &c[nu].scale_real(&(m.clone() * m.clone()))
        });
        let expect = &(-&res[0]) + &on_vector(&[res[1].clone(), res[2].clone(), res[3].clone()]).mul_i();
        o.residual((&proca_potential_residual(&a, &m) - &expect).max_abs());
    }
    o.residual(proca_potential_residual(&F::<T>::zero(), &m).max_abs());
    o
}

fn maxwell<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for _ in 0..3 {
        let e: [F<T>; 3] = core::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
        let h: [F<T>; 3] = core::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
        let b = &on_vector(&e) + &on_vector(&h).mul_i();
        let div = |v: &[F<T>; 3]| (0..3).fold(F::zero(), |acc, n| &acc + &v[n].deriv(n + 1));
        let curl = |v: &[F<T>; 3]| -> [F<T>; 3] {
            core::array::from_fn(|n| {
                let (a1, a2) = ((n + 1) % 3, (n + 2) % 3);
                &v[a2].deriv(a1 + 1) - &v[a1].deriv(a2 + 1)
            })
        };
        let dt = |v: &[F<T>; 3]| -> [F<T>; 3] { core::array::from_fn(|n| v[n].deriv(0)) };
        let comb = |x: &[F<T>; 3], y: &[F<T>; 3], s: i64| -> [F<T>; 3] { core::array::from_fn(|n| &x[n] + &y[n].scale_real(&T::from_i64(s))) };
        // real scalar −div E, imaginary scalar −div H, real vector ∂tH + curl E, imaginary vector curl H − ∂tE
        let scalar = &(-&div(&e)) + &(-&div(&h)).mul_i();
        let vector = &on_vector(&comb(&dt(&h), &curl(&e), 1)) + &on_vector(&comb(&curl(&h), &dt(&e), -1)).mul_i();
        o.residual((&nabla(&b) - &(&scalar + &vector)).max_abs());
        // with m = 0 and A = 0 the system reduces to ∇B = 0
        let (r1, r2) = lanczos_residual(&F::zero(), &b, &ExternalField::zero(), &T::zero());
        o.residual(r1.max_abs());
        o.residual((&r2 - &nabla(&b)).max_abs());
    }
    let b = F::constant(Biquaternion::<T>::from_ints([0, 1, -2, 3, 0, 4, 0, -1]));
    let (r1, r2) = lanczos_residual(&F::zero(), &b, &ExternalField::zero(), &T::zero());
    o.residual(r1.max_abs()).residual(r2.max_abs());
    o
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite::identity("eq10.nabla_selection", "Eq. (10)", 6).exact(selection),
        Suite::identity("eq10.lanczos_plane_waves", "Eq. (10)", 6).exact(ab_plane_waves::<Rational>).float(ab_plane_waves::<f64>),
        Suite::identity("eq9.two_component", "Eq. (9')", 6).exact(two_component::<Rational>).float(two_component::<f64>),
        Suite::identity("eq11.doublet", "Eq. (11)", 6).exact(doublet::<Rational>).float(doublet::<f64>),
        Suite::identity("eq12.nullspace", "Eq. (12)", 6).exact(nullspace::<Rational>).float(nullspace::<f64>),
        Suite::identity("eq12.klein_gordon", "Eq. (12)", 6).exact(klein_gordon::<Rational>).float(klein_gordon::<f64>).tol(1e-8),
        Suite::identity("eq14.pi_bar", "Eq. (14)", 6).exact(pi_bar_form::<Rational>).float(pi_bar_form::<f64>),
        Suite::identity("eq15.gauge_covariance", "Eq. (15)", 6).exact(gauge::<Rational>).float(gauge::<f64>),
        Suite::identity("eq16.current_conservation", "Eq. (16)", 6).exact(current_conservation::<Rational>).float(current_conservation::<f64>),
        Suite::identity("a8.proca_bivector", "Eq. (A.8')", 13).exact(proca_bivector_suite::<Rational>).float(proca_bivector_suite::<f64>),
        Suite::identity("a8.proca_tensor", "Eq. (A.8'')", 13).exact(proca_second::<Rational>).float(proca_second::<f64>).tol(1e-8),
        Suite::identity("a8.maxwell", "Footnote 13", 13).exact(maxwell::<Rational>).float(maxwell::<f64>).tol(1e-8),
    ]
}
