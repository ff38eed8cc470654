//! Spin generators and eigenstates, rotation and boost exponentials, and the
//! two scalar products on the column spaces.

use std::f64::consts::{PI, TAU};

use biquat::linalg::span_rank;
use biquat::lorentz::random_axis;
use biquat::spin::{boost, boost_factor, designated_span, eigenstates, generators, rotate, rotor, SpinLabel};
use biquat::{make_frame, Bq, Flavor, Frame, RealLinearOp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::bq_json;
use crate::registry::{Ctx, Outcome, Suite};

type Op = RealLinearOp<f64>;

const TABLE_TOL: f64 = 1e-12;
const EXP_TOL: f64 = 1e-10;
const PRODUCT_TOL: f64 = 1e-10;
const SAMPLES: usize = 100;

/// Expected `m` labels and designated real dimension for each column.
fn table_fixture(s: SpinLabel) -> (&'static [f64], usize) {
    match s {
        SpinLabel::HalfPlus | SpinLabel::HalfMinus => (&[0.5, -0.5], 4),
        SpinLabel::One => (&[1.0, 0.0, -1.0], 6),
        SpinLabel::ThreeHalf => (&[1.5, 0.5, -0.5, -1.5], 8),
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// A frame with random ν and τ drawn from the suite's stream.
pub(crate) fn random_frame(rng: &mut ChaCha8Rng) -> Frame<f64> {
    let nu = random_axis(rng);
    loop {
        let t = cross(random_axis(rng), nu);
        let n = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return make_frame(nu, t.map(|x| x / n)).expect("orthonormal by construction");
        }
    }
}

fn test_frames(ctx: &Ctx) -> Vec<Frame<f64>> {
    vec![Frame::standard(), random_frame(&mut ctx.stream(99))]
}

fn frobenius(a: &Op) -> f64 {
    a.m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn on_span(a: &Op, b: &dyn Fn(&Bq) -> Bq, span: &[Bq]) -> f64 {
    span.iter().map(|x| (&a.apply(x) - &b(x)).max_abs()).fold(0.0, f64::max)
}

fn rows(xs: &[Bq]) -> Vec<Vec<f64>> {
    xs.iter().map(|x| x.to_real8().to_vec()).collect()
}

fn su2(s: SpinLabel, ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let i = Op::i_op();
    for f in test_frames(ctx) {
        let g = generators(s, &f);
        for a in 0..3 {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            o.residual(frobenius(&g.j[a].commutator(&g.j[b]).sub(&i.compose(&g.j[c]))));
        }
        for j in &g.j {
            o.check("generators are complex-linear", j.is_complex_linear(1e-12));
        }
    }
    o
}

fn casimir(s: SpinLabel, ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let k = s.spin() * (s.spin() + 1.0);
    let (_, dim) = table_fixture(s);
    for f in test_frames(ctx) {
        let c = generators(s, &f).casimir();
        let span = designated_span(s, &f);
        o.residual(on_span(&c, &|x| x.scale_real(&k), &span));
        o.check(format!("designated span has real dimension {dim}"), span_rank(&rows(&span), 1e-10) == dim);
    }
    o
}

fn eigen(s: SpinLabel, ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let (labels, _) = table_fixture(s);
    for f in test_frames(ctx) {
        let j3 = &generators(s, &f).j[2];
        let states = eigenstates(s, &f);
        let got: Vec<f64> = states.iter().map(|p| p.0).collect();
        o.check("labels match the table", got == labels);
        for (m, x) in &states {
            o.residual((&j3.apply(x) - &x.scale_real(m)).max_abs());
            o.residual((x.unitary_product(x).re - 1.0).abs());
        }
        for (a, (_, x)) in states.iter().enumerate() {
            for (_, y) in states.iter().skip(a + 1) {
                o.residual(x.unitary_product(y).norm());
            }
        }
    }
    o
}

/// `J3` of the spin-3/2 column against `½i(ν[·] + 2[·]ν)` built from the product.
fn j3_column(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for f in test_frames(ctx) {
        let nu = f.nu.clone();
        let half_i = num_complex::Complex::new(0.0, 0.5);
        let oracle = Op::from_map(|x| (&(&nu * x) + &(x * &nu).scale_real(&2.0)).scale(&half_i));
        let lib = &generators(SpinLabel::ThreeHalf, &f).j[2];
        o.residual(lib.max_abs_diff(&oracle));
        let mono = Op::monomial(&nu, &Bq::one(), Flavor::Id).add(&Op::monomial(&Bq::one(), &nu, Flavor::Id).scale(&2.0)).scale_complex(&half_i);
        o.residual(mono.max_abs_diff(&oracle));
    }
    o
}

fn random_theta(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-2.0 * TAU..2.0 * TAU)
}

fn half_rotation(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let fs = test_frames(ctx);
    for _ in 0..SAMPLES {
        let (ax, theta) = (random_axis(&mut rng), random_theta(&mut rng));
        let r = rotor(ax, theta);
        for f in &fs {
            for s in [SpinLabel::HalfPlus, SpinLabel::HalfMinus] {
                let op = rotate(s, ax, theta, f).expect("unit axis");
                o.residual(on_span(&op, &|x| &r * x, &designated_span(s, f)));
            }
        }
    }
    o
}

fn rodrigues(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let fs = test_frames(ctx);
    let basis: Vec<Bq> = (0..8).map(Bq::basis).collect();
    for _ in 0..SAMPLES {
        let (ax, theta) = (random_axis(&mut rng), random_theta(&mut rng));
        let r = rotor(ax, theta);
        let rb = r.bar();
        for f in &fs {
            let op = rotate(SpinLabel::One, ax, theta, f).expect("unit axis");
            o.residual(on_span(&op, &|x| &(&r * x) * &rb, &basis));
        }
        // the vector part rotates by the angle θ about the axis
        let v = Bq::real_vector(random_axis(&mut rng));
        let w = &(&r * &v) * &rb;
        let a = Bq::real_vector(ax);
        let along = -(&a * &v).s.re;
        let c = cross(ax, [v.v[0].re, v.v[1].re, v.v[2].re]);
        let expect: [f64; 3] = core::array::from_fn(|k| {
            let vk = v.v[k].re;
            vk * theta.cos() + c[k] * theta.sin() + ax[k] * along * (1.0 - theta.cos())
        });
        o.residual((&w - &Bq::real_vector(expect)).max_abs());
    }
    o
}

fn periodicity(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in test_frames(ctx) {
        for _ in 0..5 {
            let ax = random_axis(&mut rng);
            for s in SpinLabel::ALL {
                let span = designated_span(s, &f);
                let sign = if s.is_half_integer() { -1.0 } else { 1.0 };
                let two = rotate(s, ax, 2.0 * PI, &f).expect("unit axis");
                o.residual(on_span(&two, &|x| x.scale_real(&sign), &span));
                let four = rotate(s, ax, 4.0 * PI, &f).expect("unit axis");
                o.residual(on_span(&four, &|x| x.clone(), &span));
                let x = &span[0];
                let seen = two.apply(x).unitary_product(x).re / x.unitary_product(x).re;
                o.check(format!("2π sign of {}", s.tag()), (seen - sign).abs() < 1e-6);
                let (t1, t2) = (random_theta(&mut rng), random_theta(&mut rng));
                let lhs = rotate(s, ax, t1, &f).expect("unit axis").compose(&rotate(s, ax, t2, &f).expect("unit axis"));
                o.residual(on_span(&lhs, &|x| rotate(s, ax, t1 + t2, &f).expect("unit axis").apply(x), &span));
            }
        }
    }
    o
}

fn boosts(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let fs = test_frames(ctx);
    for _ in 0..50 {
        let ax = random_axis(&mut rng);
        let rho = rng.gen_range(-2.0..2.0);
        let b = boost_factor(ax, rho);
        o.residual((&b.plus() - &b).max_abs());
        for f in &fs {
            for s in [SpinLabel::HalfPlus, SpinLabel::HalfMinus] {
                let op = boost(s, ax, rho, f).expect("unit axis");
                o.residual(on_span(&op, &|x| &b * x, &designated_span(s, f)));
                let back = boost(s, ax, -rho, f).expect("unit axis");
                o.residual(on_span(&op.compose(&back), &|x| x.clone(), &designated_span(s, f)));
            }
        }
    }
    o
}

/// Compared products: the whole of `X̄Y` and `X⁺Y` on the spin-½ columns, where the
/// scalar part of `X̄Y` vanishes identically, and their scalar parts otherwise.
fn products(s: SpinLabel, x: &Bq, y: &Bq) -> (Bq, Bq) {
    let mk = &x.bar() * y;
    let un = &x.plus() * y;
    match s {
        SpinLabel::HalfPlus | SpinLabel::HalfMinus => (mk, un),
        _ => (Bq::scalar(mk.s), Bq::scalar(un.s)),
    }
}

#[derive(Default)]
struct Sample {
    violation: f64,
    payload: serde_json::Value,
}

#[derive(Default)]
struct ProductScan {
    minkowski: Sample,
    unitary: Sample,
}

fn combination(rng: &mut ChaCha8Rng, span: &[Bq]) -> Bq {
    span.iter().fold(Bq::zero(), |acc, x| &acc + &x.scale_real(&rng.gen_range(-1.0..1.0)))
}

/// Largest change of either product under random rotations (`boost = false`) or
/// boosts, with the worst sample recorded.
fn scan(s: SpinLabel, is_boost: bool, f: &Frame<f64>, rng: &mut ChaCha8Rng) -> ProductScan {
    let span = designated_span(s, f);
    let mut out = ProductScan::default();
    for _ in 0..SAMPLES {
        let ax = random_axis(rng);
        let (op, param) = if is_boost {
            let rho = rng.gen_range(0.2..1.5);
            (boost(s, ax, rho, f).expect("unit axis"), rho)
        } else {
            let theta = rng.gen_range(0.0..TAU);
            (rotate(s, ax, theta, f).expect("unit axis"), theta)
        };
        let (x, y) = (combination(rng, &span), combination(rng, &span));
        let (xt, yt) = (op.apply(&x), op.apply(&y));
        let (m0, u0) = products(s, &x, &y);
        let (m1, u1) = products(s, &xt, &yt);
        let record = |slot: &mut Sample, before: &Bq, after: &Bq| {
            let v = (after - before).max_abs();
            if v > slot.violation {
                slot.violation = v;
                let key = if is_boost { "rapidity" } else { "angle" };
                slot.payload = json!({
                    "axis": ax,
                    (key): param,
                    "x": bq_json(&x),
                    "y": bq_json(&y),
                    "product_before": bq_json(before),
                    "product_after": bq_json(after),
                });
            }
        };
        record(&mut out.minkowski, &m0, &m1);
        record(&mut out.unitary, &u0, &u1);
    }
    out
}

fn minkowski(s: SpinLabel, ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in test_frames(ctx) {
        let rot = scan(s, false, &f, &mut rng);
        let bst = scan(s, true, &f, &mut rng);
        o.residual(rot.minkowski.violation);
        o.residual(rot.unitary.violation);
        o.residual(bst.minkowski.violation);
    }
    o
}

fn unitary_boost(s: SpinLabel, ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let f = Frame::standard();
    let rot = scan(s, false, &f, &mut rng);
    o.residual(rot.unitary.violation);
    let bst = scan(s, true, &f, &mut rng);
    o.witness_at_least(bst.unitary.violation, 0.1, bst.unitary.payload);
    o
}

fn unitary_three_half(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in test_frames(ctx) {
        o.residual(scan(SpinLabel::ThreeHalf, false, &f, &mut rng).unitary.violation);
    }
    o
}

fn minkowski_three_half(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let r = scan(SpinLabel::ThreeHalf, false, &Frame::standard(), &mut rng);
    o.residual(r.unitary.violation);
    o.witness_at_least(r.minkowski.violation, 1e-3, r.minkowski.payload);
    o
}

pub fn suites() -> Vec<Suite> {
    let mut v = Vec::new();
    for s in SpinLabel::ALL {
        let t = s.tag();
        v.push(Suite::identity(format!("table1.su2.{t}"), "Table 1", 3).float(move |c| su2(s, c)).tol(TABLE_TOL));
        v.push(Suite::identity(format!("table1.casimir.{t}"), "Table 1", 3).float(move |c| casimir(s, c)).tol(TABLE_TOL));
        v.push(Suite::identity(format!("table1.eigenstates.{t}"), "Table 1", 3).float(move |c| eigen(s, c)).tol(TABLE_TOL));
    }
    v.push(Suite::identity("eq47.j3", "Eq. (47)", 3).float(j3_column).tol(TABLE_TOL));
    v.push(Suite::identity("eq4.half_rotation", "Eq. (4)", 4).float(half_rotation).tol(EXP_TOL));
    v.push(Suite::identity("eq5.rodrigues", "Eq. (5)", 4).float(rodrigues).tol(EXP_TOL));
    v.push(Suite::identity("eq6.periodicity", "Eq. (6)", 4).float(periodicity).tol(EXP_TOL));
    v.push(Suite::identity("fn8.boosts", "Footnote 8", 4).float(boosts).tol(EXP_TOL));
    for s in [SpinLabel::HalfPlus, SpinLabel::HalfMinus, SpinLabel::One] {
        let t = s.tag();
        v.push(Suite::identity(format!("eq1.minkowski.{t}"), "Eq. (1)", 5).float(move |c| minkowski(s, c)).tol(PRODUCT_TOL));
        v.push(Suite::witness(format!("eq2.unitary_boost.{t}"), "Eq. (2)", 5).float(move |c| unitary_boost(s, c)).tol(PRODUCT_TOL));
    }
    v.push(Suite::identity("eq3.unitary.3_2", "Eq. (3)", 5).float(unitary_three_half).tol(PRODUCT_TOL));
    v.push(Suite::witness("eq3.minkowski_violation.3_2", "Eq. (3)", 5).float(minkowski_three_half).tol(PRODUCT_TOL));
    v
}
