//! The vector-spinor system: index lemmas, the free system and its counting,
//! the commutator and dual tensor, the extra constraint, and the coupled equation
//! with its reduction chain.

use biquat::conventions::{eps_lo, eps_up, eps_up_bar};
use biquat::diffop::apply_row;
use biquat::equations::{current as single_current, divergence_scalar, plane_wave, plane_wave_solutions, ExternalField, Momentum};
use biquat::field::Field;
use biquat::rarita_schwinger::*;
use biquat::{sample, Biquaternion, Error, Frame, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use serde_json::json;

use super::{bq_json, frames, mom, q, random_ext};
use crate::registry::{Ctx, Outcome, Suite};

type F<T> = Field<T>;

/// Real dimension of the free plane-wave solution space at fixed momentum, from a
/// dense singular-value computation on the 48 × 32 symbol.
pub const ORACLE_SOLUTION_DIM: usize = 8;

const STATED_MARGIN: f64 = 1e-3;
const COUPLINGS: [(i64, i64); 2] = [(1, 3), (1, 1)];

fn rs_momenta<T: Scalar>() -> Vec<Momentum<T>> {
    vec![
        mom((1, 1), [(0, 1), (0, 1), (0, 1)], 1),
        mom((5, 4), [(3, 4), (0, 1), (0, 1)], 1),
        mom((2, 1), [(1, 1), (1, 1), (1, 1)], 1),
    ]
}

fn random_psi<T: Scalar>(rng: &mut impl Rng, degree: usize) -> RsField<T> {
    core::array::from_fn(|_| sample::poly_field(rng, degree, 2, 0.3))
}

fn exts<T: Scalar>(ctx: &Ctx, degrees: &[usize]) -> Vec<ExternalField<T>> {
    let mut rng = ctx.stream(7);
    degrees.iter().map(|&d| random_ext(&mut rng, d, 1)).collect()
}

/// `φ0 = x1`, `φ1 = x0`, `φ2 = x3`, `φ3 = 2x2`: `⟨∇̄φ⟩ = 0`.
fn lorenz_ext<T: Scalar>() -> ExternalField<T> {
    let x = |j| F::<T>::coordinate(j);
    ExternalField::new([x(1), x(0), x(3), x(2).scale_real(&q(2, 1))], T::one())
}

fn index_lemmas<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let u = EpsUnits::<T>::new();
    o.residual((&u.trace() - &Biquaternion::scalar(super::cplx(4, 0))).max_abs());
    for mu in 0..4 {
        let lo = if mu == 0 { Biquaternion::one() } else { Biquaternion::<T>::e(mu).mul_i() };
        o.residual((&eps_lo::<T>(mu) - &lo).max_abs());
        o.residual((&u.lo[mu].plus() - &u.lo[mu]).max_abs());
        o.residual((&u.up[mu].plus() - &u.up[mu]).max_abs());
        o.residual((&u.up_bar[mu] - &u.lo[mu]).max_abs());
        o.residual((&eps_up_bar::<T>(mu) - &u.up[mu].bar()).max_abs());
    }
    for f in frames::<T>() {
        for ext in exts::<T>(ctx, &[1, 2]) {
            let r = index_identities(&ext, &q(3, 2), &f);
            o.residual(r.eps_pi).residual(r.scalar_projection).residual(r.conj_swap).residual(r.pi_pi_lemma);
            // π_μ(X) = ∂_μX ν − eφ_μX with ∂_μ = (∂0, −∂n) and φ_μ the stored components
            let x: F<T> = sample::poly_field(&mut rng, 3, 3, 0.3);
            for mu in 0..4 {
                let s = T::from_i64(if mu == 0 { 1 } else { -1 });
                let direct = &x.deriv(mu).rmul(&f.nu).scale_real(&s) - &(&ext.comps[mu] * &x).scale_real(&ext.e);
                o.residual((&pi_lo(mu, &ext, &f).apply(&x) - &direct).max_abs());
            }
        }
        o.residual(index_identities(&ExternalField::zero(), &T::one(), &f).pi_pi_without_remainder);
    }
    o
}

fn stated_projection<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let f = Frame::<T>::standard();
    let ext = exts::<T>(ctx, &[1]).remove(0);
    let r = index_identities(&ext, &T::one(), &f);
    o.residual(r.scalar_projection);
    o.witness_above(r.scalar_projection_stated, STATED_MARGIN, json!({ "corrected_residual": r.scalar_projection, "stated_defect": r.scalar_projection_stated }));
    o
}

fn counting<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for f in frames::<T>() {
        for p in rs_momenta::<T>() {
            let c = constraint_counting(&p, &f).expect("on shell");
            o.check("32 real components", c.total_real_dim == 32);
            o.check("algebraic constraint rank 8", c.algebraic_rank == 8);
            o.check("differential constraint rank 8", c.differential_rank == 8);
            o.check("16 complex components reduce to 8", c.after_constraints == 16);
            o.check("single-field equations leave 16", c.equation_solutions == 16);
            o.check("solution dimension matches dense oracle", c.solution_dim == ORACLE_SOLUTION_DIM);
        }
        let off = mom::<T>((2, 1), [(1, 1), (0, 1), (0, 1)], 1);
        o.check("off shell rejected", constraint_counting(&off, &f).unwrap_err() == Error::OffShell);
    }
    let c = constraint_counting(&rs_momenta::<T>()[0], &Frame::standard()).expect("on shell");
    o.info("counts", json!({ "total": c.total_real_dim, "after_constraints": c.after_constraints, "solution_dim": c.solution_dim }));
    o
}

fn free_system<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let free = ExternalField::zero();
    for f in frames::<T>() {
        for p in rs_momenta::<T>() {
            let sols = rs_plane_wave_solutions(&p, &f).expect("on shell");
            o.check("eight real solutions", sols.len() == ORACLE_SOLUTION_DIM);
            for z in &sols {
                let psi: RsField<T> = core::array::from_fn(|mu| plane_wave(&p.wave_vector(), &z[mu], &f));
                o.residual(rs_free_system(&psi, &free, &p.m, &f).max_abs());
            }
        }
    }
    // single Dirac-Lanczos components satisfy the equations but not the constraints
    let f = Frame::<T>::standard();
    let p = &rs_momenta::<T>()[1];
    let single = plane_wave_solutions(p, &f).expect("on shell");
    let only: RsField<T> = [plane_wave(&p.wave_vector(), &single[0], &f), F::zero(), F::zero(), F::zero()];
    let r = rs_free_system(&only, &free, &p.m, &f);
    o.residual(r.eq_residuals.iter().map(F::max_abs).fold(0.0, f64::max));
    o.check("constraints are independent of the equations", r.algebraic_constraint.max_abs() > 1e-6);
    o
}

fn rs_current_suite<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for f in frames::<T>() {
        let mut sum: RsField<T> = core::array::from_fn(|_| F::zero());
        for p in rs_momenta::<T>().into_iter().skip(1) {
            for (i, z) in rs_plane_wave_solutions(&p, &f).expect("on shell").iter().enumerate().take(3) {
                for mu in 0..4 {
                    sum[mu] = &sum[mu] + &plane_wave(&p.wave_vector(), &z[mu], &f).scale_real(&T::from_i64(i as i64 + 1));
                }
            }
        }
        let c = rs_current(&sum);
        o.residual(divergence_scalar(&c).max_abs());
        o.check("current not constant", c.modes().len() > 1);
        let parts = sum.iter().fold(F::zero(), |acc, p| &acc + &single_current(p));
        o.residual((&c - &parts).max_abs());
    }
    o
}

fn probes<T: Scalar>(ctx: &Ctx) -> Vec<F<T>> {
    let mut rng = ctx.stream(3);
    (0..2).map(|_| sample::poly_field(&mut rng, 3, 2, 0.4)).collect()
}

fn commutator<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let pr = probes::<T>(ctx);
    for (k, f) in frames::<T>().into_iter().enumerate() {
        // linear and quadratic potentials in the standard frame, linear ones elsewhere
        let degrees: &[usize] = if k == 0 { &[1, 2] } else { &[1] };
        for ext in exts::<T>(ctx, degrees) {
            let r = commutator_identity(&ext, &f, &pr);
            o.residual(r.general_residual).residual(r.probe_residual);
            o.check("literal form exact iff Lorenz gauge", r.lorenz_gauge == (r.literal_residual == 0.0) || !T::EXACT);
        }
        let r = commutator_identity(&lorenz_ext::<T>(), &f, &pr);
        o.check("Lorenz-gauge sample", r.lorenz_gauge);
        o.residual(r.literal_residual);
        o.residual(commutator_identity(&ExternalField::zero(), &f, &pr).literal_residual);
    }
    o
}

fn stated_commutator<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let f = Frame::<T>::standard();
    let pr = probes::<T>(ctx);
    let ext = exts::<T>(ctx, &[1]).remove(0);
    let r = commutator_identity(&ext, &f, &pr);
    o.residual(r.general_residual);
    o.check("sample is outside Lorenz gauge", !r.lorenz_gauge);
    o.witness_above(r.literal_residual, STATED_MARGIN, json!({ "general_residual": r.general_residual, "stated_defect": r.literal_residual }));
    o
}

/// `∇̄φ` has scalar `−i(∂0φ0 + div φ⃗)` and vector `E + iH`; `φ∇̄` the same scalar
/// and vector `E − iH`, with `E = −∇φ0 − ∂0φ⃗` and `H = ∇×φ⃗`.
fn dual_oracle<T: Scalar>(ext: &ExternalField<T>) -> (F<T>, F<T>) {
    let c = &ext.comps;
    let div = &c[0].deriv(0) + &(1..4).fold(F::zero(), |acc, n| &acc + &c[n].deriv(n));
    let scalar = div.mul_i().scale_real(&-T::one());
    let e: [F<T>; 3] = core::array::from_fn(|n| -&(&c[0].deriv(n + 1) + &c[n + 1].deriv(0)));
    let h: [F<T>; 3] = core::array::from_fn(|n| {
        let (a, b) = ((n + 1) % 3, (n + 2) % 3);
        &c[b + 1].deriv(a + 1) - &c[a + 1].deriv(b + 1)
    });
    let vec = |s: i64| (0..3).fold(F::zero(), |acc, n| &acc + &(&e[n] + &h[n].mul_i().scale_real(&T::from_i64(s))).rmul(&Biquaternion::e(n + 1)));
    (&scalar + &vec(1), &scalar + &vec(-1))
}

fn dual<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for ext in exts::<T>(ctx, &[1, 2, 3]).into_iter().chain([lorenz_ext::<T>()]) {
        let d = dual_tensor(&ext);
        let (left, right) = dual_oracle(&ext);
        o.residual((&d.left - &left).max_abs()).residual((&d.right - &right).max_abs());
        let y: F<T> = sample::poly_field(&mut rng, 2, 3, 0.4);
        let half = (&(&left * &y) + &(&y * &right)).scale_real(&T::half());
        o.residual((&d.apply(&y) - &half).max_abs());
    }
    let constant = ExternalField::new([F::constant(Biquaternion::one()), F::zero(), F::zero(), F::zero()], T::one());
    o.check("constant potential has no field", dual_tensor(&constant).is_zero());
    o
}

/// `eT = π^μE'_μ − (Π̄ − m(·)*)D + e⟨∇̄φ⟩Z iν`, in normal form and on sample fields.
fn derivation<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let m = q::<T>(2, 1);
    for (k, f) in frames::<T>().into_iter().enumerate() {
        // quartic spinors in the standard frame, quadratic ones elsewhere
        let degrees: &[usize] = if k == 0 { &[2, 4] } else { &[2] };
        for ext in exts::<T>(ctx, &[1, 2]) {
            let r = extra_constraint_derivation(&ext, &m, &f);
            o.residual(r.derivation).residual(r.d_split);
            let dirac = dirac_op(&ext, &m, &f);
            for &degree in degrees {
                let psi = random_psi::<T>(&mut rng, degree);
                let lhs = extra_constraint(&psi, &ext, &f).scale_real(&ext.e);
                let pe = (0..4).fold(F::zero(), |acc, mu| &acc + &pi_up(mu, &ext, &f).apply(&dirac.apply(&psi[mu])));
                let dd = dirac.apply(&apply_row(&d_row(&ext, &f), &psi));
                let z = apply_row(&z_row(), &psi);
                let tr = (&dual_tensor(&ext).trace() * &z).rmul(&f.nu.mul_i()).scale_real(&ext.e);
                o.residual((&lhs - &(&(&pe - &dd) + &tr)).max_abs());
            }
        }
        let psi = random_psi::<T>(&mut rng, 4);
        o.residual(extra_constraint(&psi, &ExternalField::zero(), &f).max_abs());
    }
    o
}

/// Rank-two linear potential built from the seed.
fn witness_ext<T: Scalar>(ctx: &Ctx) -> ExternalField<T> {
    let mut rng = ctx.rng();
    loop {
        let l1: F<T> = sample::homogeneous_real_poly(&mut rng, 1, 3);
        let l2: F<T> = sample::homogeneous_real_poly(&mut rng, 1, 3);
        let c: [[i64; 2]; 4] = core::array::from_fn(|_| [rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let comps: [F<T>; 4] = core::array::from_fn(|mu| &l1.scale_real(&T::from_i64(c[mu][0])) + &l2.scale_real(&T::from_i64(c[mu][1])));
        let ext = ExternalField::new(comps, T::one());
        if !dual_tensor(&ext).is_zero() {
            return ext;
        }
    }
}

fn extra_constraint_witness_suite<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let f = Frame::<T>::standard();
    let ext = witness_ext::<T>(ctx);
    let Some(w) = extra_constraint_witness(&ext, &f) else {
        o.check("linear potential", false);
        return o;
    };
    let r = rs_free_system(&w.psi, &w.ext, &T::one(), &f);
    o.residual(r.algebraic_constraint.max_abs()).residual(r.differential_constraint.max_abs());
    let phi: Vec<_> = (0..5)
        .map(|k| {
            let mut x = [0.0; 4];
            if k > 0 {
                x[k - 1] = 1.0;
            }
            super::bq_json(&w.ext.phi.eval(&x))
        })
        .collect();
    let psi: Vec<_> = w.psi.iter().map(|p| bq_json(&p.eval(&[0.0; 4]))).collect();
    o.witness_above(
        w.norm,
        STATED_MARGIN,
        json!({ "kernel_dim": w.kernel_dim, "norm": w.norm, "phi_at_origin_and_unit_points": phi, "psi": psi }),
    );
    o
}

fn free_reduction<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let free = ExternalField::zero();
    let f = Frame::<T>::standard();
    for p in rs_momenta::<T>() {
        for z in rs_plane_wave_solutions(&p, &f).expect("on shell") {
            let psi: RsField<T> = core::array::from_fn(|mu| plane_wave(&p.wave_vector(), &z[mu], &f));
            for (n, d) in COUPLINGS {
                let e = coupled_equation(&q(n, d), &free, &p.m, &f).apply(&psi);
                o.residual(e.iter().map(F::max_abs).fold(0.0, f64::max));
            }
        }
    }
    let r = g1_chain(&free, &q(3, 2), &f).expect("nonzero mass");
    o.residual(r.source_size).residual(r.conjugate_contraction_stated).residual(r.mass_combination_stated);
    o.residual(r.max_exact());
    o.check("zero mass rejected", g1_chain(&free, &T::zero(), &f).unwrap_err() == Error::DegenerateMass);
    // the coupled operator at zero field differs from the free one only off shell
    let mut rng = ctx.rng();
    let psi = random_psi::<T>(&mut rng, 2);
    o.check("coupling terms act off shell", coupled_equation(&T::one(), &free, &T::one(), &f).apply(&psi) != free_equation(&free, &T::one(), &f).apply(&psi));
    o
}

fn contraction<T: Scalar>(pi: bool) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        let mut rng = ctx.rng();
        let f = Frame::<T>::standard();
        let m = q::<T>(3, 2);
        for ext in exts::<T>(ctx, &[1, 1]) {
            for (n, d) in COUPLINGS {
                let g = q::<T>(n, d);
                let r = contraction_chain(&g, &ext, &m, &f);
                o.residual(if pi { r.pi_residual } else { r.eps_residual });
                let e = coupled_equation(&g, &ext, &m, &f);
                let psi = random_psi::<T>(&mut rng, 3);
                let rows = e.apply(&psi);
                let (lhs, form) = if pi {
                    let lhs = (0..4).fold(F::zero(), |acc, mu| &acc + &pi_up(mu, &ext, &f).apply(&rows[mu]));
                    (lhs, pi_contraction_form(&g, &ext, &m, &f, true))
                } else {
                    let lhs = (0..4).fold(F::zero(), |acc, mu| &acc + &rows[mu].lmul(&eps_up(mu)));
                    (lhs, eps_contraction_form(&g, &ext, &m, &f))
                };
                o.residual((&lhs - &apply_row(&form, &psi)).max_abs());
            }
        }
        o
    }
}

fn stated_pi_contraction<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let f = Frame::<T>::standard();
    let ext = exts::<T>(ctx, &[1]).remove(0);
    let mut defects = Vec::new();
    for (n, d) in COUPLINGS {
        let r = contraction_chain(&q::<T>(n, d), &ext, &q(3, 2), &f);
        o.residual(r.pi_residual);
        defects.push(r.pi_residual_stated);
    }
    let min = defects.iter().copied().fold(f64::INFINITY, f64::min);
    o.witness_above(min, STATED_MARGIN, json!({ "couplings": ["1/3", "1"], "stated_defects": defects }));
    o
}

type ChainCache = Mutex<HashMap<(u64, bool), Arc<Vec<G1ChainReport>>>>;

/// The reduction chain for two linear potentials drawn from the run seed. Every
/// step suite reads the same reports, so they are computed once per seed and backend.
fn g1_reports<T: Scalar>(ctx: &Ctx) -> Arc<Vec<G1ChainReport>> {
    static CACHE: OnceLock<ChainCache> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry((ctx.seed, T::EXACT))
        .or_insert_with(|| {
            let f = Frame::<T>::standard();
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x6731_6368_6169_6e00);
            let exts: Vec<ExternalField<T>> = (0..2).map(|_| random_ext(&mut rng, 1, 1)).collect();
            Arc::new(exts.iter().map(|ext| g1_chain(ext, &q(3, 2), &f).expect("nonzero mass")).collect())
        })
        .clone()
}

fn g1_step<T: Scalar>(pick: fn(&G1ChainReport) -> f64) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        for r in g1_reports::<T>(ctx).iter() {
            o.residual(pick(r));
            o.check("nonzero source", r.source_size > 0.0);
        }
        o
    }
}

fn g1_stated<T: Scalar>(exact: fn(&G1ChainReport) -> f64, stated: fn(&G1ChainReport) -> f64) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        let reports = g1_reports::<T>(ctx);
        let mut defects = Vec::new();
        for r in reports.iter() {
            o.residual(exact(r));
            defects.push(stated(r));
        }
        let min = defects.iter().copied().fold(f64::INFINITY, f64::min);
        let corrected = o.residual;
        o.witness_above(min, STATED_MARGIN, json!({ "corrected_residual": corrected, "stated_defects": defects }));
        o
    }
}

macro_rules! both {
    ($s:expr, $f:ident) => {
        $s.exact($f::<Rational>).float($f::<f64>)
    };
}

pub fn suites() -> Vec<Suite> {
    vec![
        both!(Suite::identity("eq17.index_lemmas", "Eq. (17)", 8), index_lemmas),
        both!(Suite::witness("eq25.stated_projection", "Eq. (25)", 8), stated_projection),
        both!(Suite::identity("eq18.free_system", "Eq. (18')", 10), free_system),
        both!(Suite::identity("eq18.constraint_counting", "Eq. (18'')", 10), counting),
        both!(Suite::identity("eq20.rs_current", "Eq. (20)", 10), rs_current_suite),
        both!(Suite::identity("eq21.commutator", "Eq. (21)", 8), commutator),
        both!(Suite::witness("eq21.stated_commutator", "Eq. (21)", 8), stated_commutator),
        both!(Suite::identity("eq22.dual_tensor", "Eq. (22)", 8), dual),
        both!(Suite::identity("eq23.derivation", "Eq. (23)", 8), derivation),
        Suite::witness("rs.extra_constraint", "Eq. (23)", 8).exact(extra_constraint_witness_suite::<Rational>).float(extra_constraint_witness_suite::<f64>),
        both!(Suite::identity("eq24.free_reduction", "Eq. (24)", 9), free_reduction),
        Suite::identity("eq25.contraction", "Eq. (25)", 9).exact(contraction::<Rational>(false)).float(contraction::<f64>(false)),
        Suite::identity("eq26.contraction", "Eq. (26)", 9).exact(contraction::<Rational>(true)).float(contraction::<f64>(true)),
        both!(Suite::witness("eq26.stated", "Eq. (26)", 9), stated_pi_contraction),
        Suite::identity("eq27.g1", "Eq. (27)", 9).exact(g1_step::<Rational>(|r| r.eps_contraction)).float(g1_step::<f64>(|r| r.eps_contraction)),
        Suite::identity("eq28.g1", "Eq. (28)", 9).exact(g1_step::<Rational>(|r| r.pi_contraction)).float(g1_step::<f64>(|r| r.pi_contraction)),
        Suite::identity("eq29.g1", "Eq. (29)", 9).exact(g1_step::<Rational>(|r| r.conjugate_contraction)).float(g1_step::<f64>(|r| r.conjugate_contraction)),
        Suite::witness("eq29.stated", "Eq. (29)", 9)
            .exact(g1_stated::<Rational>(|r| r.conjugate_contraction, |r| r.conjugate_contraction_stated))
            .float(g1_stated::<f64>(|r| r.conjugate_contraction, |r| r.conjugate_contraction_stated)),
        Suite::identity("eq30.g1", "Eq. (30)", 9).exact(g1_step::<Rational>(|r| r.mass_combination)).float(g1_step::<f64>(|r| r.mass_combination)),
        Suite::witness("eq30.stated", "Eq. (30)", 9)
            .exact(g1_stated::<Rational>(|r| r.mass_combination, |r| r.mass_combination_stated))
            .float(g1_stated::<f64>(|r| r.mass_combination, |r| r.mass_combination_stated)),
        Suite::identity("eq31.g1", "Eq. (31)", 9).exact(g1_step::<Rational>(|r| r.d_elimination)).float(g1_step::<f64>(|r| r.d_elimination)),
        Suite::identity("eq32.g1", "Eq. (32)", 9).exact(g1_step::<Rational>(|r| r.reduced_equation)).float(g1_step::<f64>(|r| r.reduced_equation)),
        Suite::witness("eq32.stated", "Eq. (32)", 9)
            .exact(g1_stated::<Rational>(|r| r.reduced_equation, |r| r.reduced_equation_stated))
            .float(g1_stated::<f64>(|r| r.reduced_equation, |r| r.reduced_equation_stated)),
    ]
}
