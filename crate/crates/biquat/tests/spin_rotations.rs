use std::f64::consts::PI;

use biquat::linalg::span_rank;
use biquat::spin::*;
use biquat::{Bq, Error, Frame, RealLinearOp};
use proptest::prelude::*;

type Op = RealLinearOp<f64>;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    proptest::array::uniform3(-1.0f64..1.0).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 0.01).prop_map(unit)
}

fn frames() -> Vec<Frame<f64>> {
    vec![Frame::standard(), biquat::make_frame(unit([1.0, 2.0, 2.0]), unit([2.0, -2.0, 1.0])).unwrap()]
}

/// Largest deviation of `a` from `b` on a real spanning set.
fn on_span(a: &Op, b: &dyn Fn(&Bq) -> Bq, span: &[Bq]) -> f64 {
    span.iter().map(|x| (&a.apply(x) - &b(x)).max_abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn half_rotation_is_left_rotor(ax in axis(), theta in -7.0f64..7.0) {
        for f in frames() {
            let r = rotor(ax, theta);
            let op = rotate(SpinLabel::HalfPlus, ax, theta, &f).unwrap();
            prop_assert!(on_span(&op, &|x| &r * x, &designated_span(SpinLabel::HalfPlus, &f)) <= 1e-10);
            let op = rotate(SpinLabel::HalfMinus, ax, theta, &f).unwrap();
            prop_assert!(on_span(&op, &|x| &r * x, &designated_span(SpinLabel::HalfMinus, &f)) <= 1e-10);
        }
    }

    #[test]
    fn spin_one_is_rodrigues(ax in axis(), theta in -7.0f64..7.0) {
        let f = Frame::standard();
        let r = rotor(ax, theta);
        let rb = r.bar();
        let op = rotate(SpinLabel::One, ax, theta, &f).unwrap();
        let basis: Vec<Bq> = (0..8).map(Bq::basis).collect();
        prop_assert!(on_span(&op, &|x| &(&r * x) * &rb, &basis) <= 1e-10);
    }

    #[test]
    fn rotation_composition(ax in axis(), t1 in -4.0f64..4.0, t2 in -4.0f64..4.0) {
        let f = Frame::standard();
        for s in SpinLabel::ALL {
            let a = rotate(s, ax, t1, &f).unwrap().compose(&rotate(s, ax, t2, &f).unwrap());
            prop_assert!(a.op_equal(&rotate(s, ax, t1 + t2, &f).unwrap(), 1e-10));
        }
    }

    #[test]
    fn half_boost_is_bireal_factor(ax in axis(), rho in -2.0f64..2.0) {
        let f = Frame::standard();
        let b = boost_factor(ax, rho);
        prop_assert!((&b.plus() - &b).max_abs() <= 1e-14);
        let op = boost(SpinLabel::HalfPlus, ax, rho, &f).unwrap();
        prop_assert!(on_span(&op, &|x| &b * x, &designated_span(SpinLabel::HalfPlus, &f)) <= 1e-10);
        let back = boost(SpinLabel::HalfPlus, ax, -rho, &f).unwrap();
        prop_assert!(op.compose(&back).op_equal(&Op::identity(), 1e-12));
    }
}

#[test]
fn su2_and_casimir_in_two_frames() {
    for f in frames() {
        for s in SpinLabel::ALL {
            let g = generators(s, &f);
            assert!(g.su2_residual() <= 1e-12, "{s:?}");
            let c = g.casimir();
            let k = s.spin() * (s.spin() + 1.0);
            let span = designated_span(s, &f);
            assert!(on_span(&c, &|x| x.scale_real(&k), &span) <= 1e-12, "{s:?}");
            for (m, x) in eigenstates(s, &f) {
                assert!(g.j[2].apply(&x).approx_eq(&x.scale_real(&m), 1e-12));
                assert!((x.unitary_product(&x).re - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn designated_span_dimensions() {
    let f = Frame::standard();
    let dims: Vec<usize> = SpinLabel::ALL.iter().map(|&s| span_rank(&designated_span(s, &f).iter().map(|x| x.to_real8().to_vec()).collect::<Vec<_>>(), 1e-12)).collect();
    assert_eq!(dims, vec![4, 4, 6, 8]);
    assert!(!generators(SpinLabel::ThreeHalf, &f).casimir().op_equal(&Op::identity().scale(&2.0), 1e-6));
}

#[test]
fn periodicity() {
    let f = Frame::standard();
    let ax = unit([0.3, -0.5, 0.8]);
    for s in SpinLabel::ALL {
        let span = designated_span(s, &f);
        let sign = if s.is_half_integer() { -1.0 } else { 1.0 };
        let two = rotate(s, ax, 2.0 * PI, &f).unwrap();
        assert!(on_span(&two, &|x| x.scale_real(&sign), &span) <= 1e-10, "{s:?}");
        let four = rotate(s, ax, 4.0 * PI, &f).unwrap();
        assert!(on_span(&four, &|x| x.clone(), &span) <= 1e-10);
    }
    let full = rotate(SpinLabel::ThreeHalf, ax, 2.0 * PI, &f).unwrap();
    assert!(full.op_equal(&Op::identity().scale(&-1.0), 1e-10));
}

#[test]
fn table_examples() {
    let f = Frame::standard();
    let r2 = 2f64.sqrt();
    let s2 = f.sigma.scale_real(&r2);
    let j3 = &generators(SpinLabel::ThreeHalf, &f).j[2];
    assert!(j3.apply(&s2).approx_eq(&s2.scale_real(&1.5), 1e-14));
    assert!(generators(SpinLabel::One, &f).j[2].apply(&f.nu).max_abs() < 1e-15);
    assert!(generators(SpinLabel::HalfPlus, &f).j[2].apply(&s2).approx_eq(&s2.scale_real(&0.5), 1e-14));
    let labels: Vec<f64> = eigenstates(SpinLabel::ThreeHalf, &f).iter().map(|p| p.0).collect();
    assert_eq!(labels, vec![1.5, 0.5, -0.5, -1.5]);
    assert!(boost(SpinLabel::One, [1.0, 0.0, 0.0], 0.0, &f).unwrap().op_equal(&Op::identity(), 0.0));
    assert_eq!(boost(SpinLabel::One, [1.0, 1.0, 0.0], 0.3, &f).unwrap_err(), Error::InvalidAxis);
}
