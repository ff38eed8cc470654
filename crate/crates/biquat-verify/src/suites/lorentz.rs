//! Lorentz actions on the A and B fields, the standard four- and six-vector laws,
//! the vector-spinor law and the non-group action on four-component solutions.

use biquat::conventions::{coordinate_quaternion, lorentz_matrix};
use biquat::equations::{dirac_lanczos_residual, plane_wave, plane_wave_solutions, symbol_equivariance_defect, ExternalField, Momentum};
use biquat::lorentz::*;
use biquat::rarita_schwinger::{rs_free_system, rs_plane_wave_solutions, transform_amplitudes, vector_law_residual, vector_matrix, RsField};
use biquat::spin::{self, rotor, SpinLabel};
use biquat::{sample, Biquaternion, Bq, Frame, Rational, Scalar};
use rand::Rng;
use serde_json::json;

use super::spin::random_frame;
use super::{bq_json, c_abs, frames, lorentz_samples, mom, momenta};
use crate::registry::{Ctx, Outcome, Suite};

const EQUIVARIANCE_TOL: f64 = 1e-10;
const CLOSURE_TOL: f64 = 1e-12;
const TWO_BOOST_MARGIN: f64 = 1e-3;
const UNITARY_BOOST_MARGIN: f64 = 0.1;

fn equivariance_float(row: ActionRow) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        let mut rng = ctx.rng();
        let f = Frame::<f64>::standard();
        let rf = random_frame(&mut ctx.stream(1));
        for i in 0..50 {
            let fr = if i % 2 == 0 { &f } else { &rf };
            let lt = LorentzElement::random(&mut rng, 1.2);
            let p = Bq::from_real8(&[rng.gen_range(0.5..2.0), 0.0, 0.0, 0.0, 0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let a: Bq = sample::int_bq(&mut rng, 3);
            let b: Bq = sample::int_bq(&mut rng, 3);
            o.residual(symbol_equivariance_defect(row, &lt, &p, &a, &b, &1.0, fr));
        }
        o
    }
}

fn equivariance_exact(row: ActionRow) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        let mut rng = ctx.rng();
        for f in frames::<Rational>() {
            for lt in lorentz_samples::<Rational>() {
                for p in momenta::<Rational>() {
                    let pq = -p.quaternion();
                    let a = sample::int_bq(&mut rng, 3);
                    let b = sample::int_bq(&mut rng, 3);
                    o.residual(symbol_equivariance_defect(row, &lt, &pq, &a, &b, &p.m, &f));
                }
            }
        }
        o
    }
}

fn subspaces(row: ActionRow) -> impl Fn(&Ctx) -> Outcome {
    move |ctx| {
        let mut o = Outcome::new();
        let mut rng = ctx.rng();
        for f in [Frame::<f64>::standard(), random_frame(&mut ctx.stream(1))] {
            let c = subspace_closure(row, &f, &mut rng, 10);
            o.check("subspaces closed", c.closed);
            o.check("listed component counts", (c.real_dim_a, c.real_dim_b) == row.listed_dims());
            o.info("counts", json!([c.real_dim_a, c.real_dim_b]));
        }
        o
    }
}

fn group_rows(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let f = Frame::<f64>::standard();
    for _ in 0..20 {
        let a = LorentzElement::random(&mut rng, 1.2);
        let b = LorentzElement::random(&mut rng, 1.2);
        let ab = a.compose(&b);
        o.residual(ab.invariant_defect());
        for row in [ActionRow::Zero, ActionRow::HalfPlus, ActionRow::HalfMinus, ActionRow::One] {
            for role in [FieldRole::A, FieldRole::B] {
                let lhs = act_op(row, role, &a, &f).compose(&act_op(row, role, &b, &f));
                o.residual(lhs.max_abs_diff(&act_op(row, role, &ab, &f)));
            }
        }
    }
    o
}

/// Solutions pushed through `Ψ ↦ LΨ` solve the equation at the boosted momentum.
fn spinor_law<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let free = ExternalField::zero();
    for f in frames::<T>() {
        for lt in lorentz_samples::<T>() {
            o.residual(lt.invariant_defect());
            for p in momenta::<T>() {
                let p2 = Momentum::from_quaternion(&(&(&lt.l * &p.quaternion()) * &lt.l.plus()), p.m.clone());
                o.check("boosted momentum on shell", p2.on_shell());
                for z in plane_wave_solutions(&p, &f).expect("on shell") {
                    let psi = plane_wave(&p2.wave_vector(), &(&lt.l * &z), &f);
                    o.residual(dirac_lanczos_residual(&psi, &free, &p.m, &f).max_abs());
                }
            }
        }
    }
    o
}

fn minkowski_preserved<T: Scalar>(m: &[[T; 4]; 4]) -> f64 {
    let eta = [1, -1, -1, -1];
    let mut d = 0.0f64;
    for r in 0..4 {
        for c in 0..4 {
            let s = (0..4).fold(T::zero(), |acc, k| acc + m[k][r].clone() * m[k][c].clone() * T::from_i64(eta[k]));
            let expect = T::from_i64(if r == c { eta[r] } else { 0 });
            d = d.max((s - expect).abs_f64());
        }
    }
    d
}

fn four_vector<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for lt in lorentz_samples::<T>() {
        let m = lorentz_matrix(&lt);
        o.residual(minkowski_preserved(&m));
        for _ in 0..20 {
            let x: [T; 4] = core::array::from_fn(|_| T::from_i64(rng.gen_range(-5..=5)));
            let xq = coordinate_quaternion(&x);
            let y = &(&lt.l * &xq) * &lt.l.plus();
            let regrouped = &(&(&(&lt.b * &lt.r) * &xq) * &lt.r.bar()) * &lt.b;
            let scale = 1.0 + y.max_abs();
            o.residual((&y - &regrouped).max_abs() / scale);
            o.residual((&y.plus() - &y).max_abs() / scale);
            let n0 = xq.minkowski_product(&xq);
            o.residual(c_abs(&(y.minkowski_product(&y) - n0.clone())) / (1.0 + c_abs(&n0)));
            let mx: [T; 4] = core::array::from_fn(|r| (0..4).fold(T::zero(), |acc, c| acc + m[r][c].clone() * x[c].clone()));
            o.residual((&y - &coordinate_quaternion(&mx)).max_abs() / scale);
        }
    }
    o
}

fn six_vector<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for lt in lorentz_samples::<T>() {
        for _ in 0..20 {
            let x = sample::int_bq::<T, _>(&mut rng, 5).vector_part();
            let y = &(&lt.l.star() * &x) * &lt.l.plus();
            let regrouped = &(&(&(&lt.b.star() * &lt.r) * &x) * &lt.r.bar()) * &lt.b;
            let scale = 1.0 + y.max_abs();
            o.residual((&y - &regrouped).max_abs() / scale);
            o.residual(c_abs(&y.scalar_part()) / scale);
            let n0 = (&x * &x).s;
            o.residual(c_abs(&((&y * &y).s - n0.clone())) / (1.0 + c_abs(&n0)));
        }
    }
    o
}

fn vector_law<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let free = ExternalField::zero();
    let f = Frame::<T>::standard();
    let p = mom::<T>((5, 4), [(3, 4), (0, 1), (0, 1)], 1);
    let sols = rs_plane_wave_solutions(&p, &f).expect("on shell");
    for lt in lorentz_samples::<T>() {
        let z: [Biquaternion<T>; 4] = core::array::from_fn(|_| sample::int_bq(&mut rng, 3));
        o.residual(vector_law_residual(&z, &lt).max_abs());
        o.residual(minkowski_preserved(&vector_matrix(&lt)));
        let p2 = Momentum::from_quaternion(&(&(&lt.l * &p.quaternion()) * &lt.l.plus()), p.m.clone());
        for z in &sols {
            let z2 = transform_amplitudes(z, &lt);
            let psi: RsField<T> = core::array::from_fn(|mu| plane_wave(&p2.wave_vector(), &z2[mu], &f));
            o.residual(rs_free_system(&psi, &free, &p.m, &f).max_abs());
        }
    }
    o
}

fn nu_closure(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for f in [Frame::<f64>::standard(), random_frame(&mut ctx.stream(1))] {
        let c = closure_test(&f);
        o.residual(c.nu_rotation_residual);
        o.check("rotations about the quantization axis close", c.rotations_about_nu_close);
        // a single transformation is always representable
        o.check("trivial fit", best_l32_fit(&l32_action(&c.l1), &[c.l1.clone()]).0 < 1e-9);
    }
    o
}

fn two_boost(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let f = Frame::<f64>::standard();
    let c = closure_test(&f);
    let natural = c.l1.compose(&c.l2);
    let natural_defect = l32_action(&natural).max_abs_diff(&l32_action(&c.l1).compose(&l32_action(&c.l2)));
    o.residual(c.l1.invariant_defect().max(c.l2.invariant_defect()));
    o.witness_above(
        c.defect,
        TWO_BOOST_MARGIN,
        json!({
            "l1": bq_json(&c.l1.l),
            "l2": bq_json(&c.l2.l),
            "natural_params": c.l1.compose(&c.l2).params().to_vec(),
            "natural_max_defect": natural_defect,
            "best_fit_params": c.best_fit.params().to_vec(),
            "best_fit_frobenius": c.defect,
        }),
    );
    o
}

fn l32_eigenstates(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in [Frame::<f64>::standard(), random_frame(&mut ctx.stream(1))] {
        let ax = [f.nu.v[0].re, f.nu.v[1].re, f.nu.v[2].re];
        for _ in 0..10 {
            let theta = rng.gen_range(-6.0..6.0);
            let op = l32_action(&LorentzElement::from_parts(Bq::one(), rotor(ax, theta)));
            let exp = spin::rotate(SpinLabel::ThreeHalf, ax, theta, &f).expect("unit axis");
            for (m, x) in spin::eigenstates(SpinLabel::ThreeHalf, &f) {
                let phased = x.scale(&num_complex::Complex::new(0.0, -m * theta).exp());
                o.residual((&op.apply(&x) - &phased).max_abs());
                o.residual((&exp.apply(&x) - &phased).max_abs());
            }
        }
    }
    o
}

fn l32_products(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in [Frame::<f64>::standard(), random_frame(&mut ctx.stream(1))] {
        let rot = invariance_report(Representation::FourComponent, TransformKind::Rotation, &f, &mut rng, 100);
        let bst = invariance_report(Representation::FourComponent, TransformKind::Boost, &f, &mut rng, 100);
        o.residual(rot.max_violation()).residual(bst.minkowski_violation);
        o.info("boost_unitary_violation", bst.unitary_violation);
        o.check("unitary product not boost invariant", bst.unitary_violation >= UNITARY_BOOST_MARGIN);
    }
    o
}

pub fn suites() -> Vec<Suite> {
    let mut v = Vec::new();
    for row in ActionRow::ALL {
        let tag = row.tag();
        v.push(
            Suite::identity(format!("table2.equivariance.{tag}"), "Table 2", 7)
                .exact(equivariance_exact(row))
                .float(equivariance_float(row))
                .prefer_float()
                .tol(EQUIVARIANCE_TOL),
        );
        v.push(Suite::identity(format!("table2.subspaces.{tag}"), "Table 2", 7).float(subspaces(row)));
    }
    v.push(Suite::identity("table2.group_rows", "Table 2", 7).float(group_rows).tol(1e-11));
    v.push(Suite::identity("a5.spinor_law", "Eq. (A.5)", 7).exact(spinor_law::<Rational>).float(spinor_law::<f64>));
    v.push(Suite::identity("a6.four_vector", "Eq. (A.6)", 7).exact(four_vector::<Rational>).float(four_vector::<f64>).tol(1e-12));
    v.push(Suite::identity("a7.six_vector", "Eq. (A.7)", 7).exact(six_vector::<Rational>).float(six_vector::<f64>).tol(1e-12));
    v.push(Suite::identity("eq13.vector_law", "Eq. (13)", 7).exact(vector_law::<Rational>).float(vector_law::<f64>));
    v.push(Suite::identity("eq48.nu_rotation_closure", "Eq. (48)", 12).float(nu_closure).tol(CLOSURE_TOL));
    v.push(Suite::witness("eq48.two_boost", "Eq. (48)", 12).float(two_boost).tol(1e-12));
    v.push(Suite::identity("eq48.eigenstates", "Eq. (48)", 12).float(l32_eigenstates).tol(1e-12));
    v.push(Suite::identity("eq48.scalar_products", "Eq. (48)", 12).float(l32_products).tol(1e-10));
    v
}
