use biquat::lorentz::*;
use biquat::spin::{self, rotor, SpinLabel};
use biquat::{Bq, BqQ, Frame, RealLinearOp, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn scalar_product_matrix() {
    let f = Frame::standard();
    let mut r = rng(11);
    for s in [SpinLabel::HalfPlus, SpinLabel::HalfMinus, SpinLabel::One] {
        let rot = invariance_report(Representation::Exponential(s), TransformKind::Rotation, &f, &mut r, 100);
        assert!(rot.minkowski_invariant && rot.unitary_invariant, "{s:?} {rot:?}");
        let bst = invariance_report(Representation::Exponential(s), TransformKind::Boost, &f, &mut r, 100);
        assert!(bst.minkowski_invariant, "{s:?} {bst:?}");
        assert!(bst.unitary_violation >= 0.1, "{s:?} {bst:?}");
    }
    let rot = invariance_report(Representation::Exponential(SpinLabel::ThreeHalf), TransformKind::Rotation, &f, &mut r, 100);
    assert!(rot.unitary_invariant, "{rot:?}");
    assert!(rot.minkowski_violation >= 1e-3, "{rot:?}");
    let four = invariance_report(Representation::FourComponent, TransformKind::Rotation, &f, &mut r, 100);
    assert!(four.unitary_invariant && four.minkowski_invariant, "{four:?}");
    let four_b = invariance_report(Representation::FourComponent, TransformKind::Boost, &f, &mut r, 100);
    assert!(four_b.minkowski_invariant && four_b.unitary_violation > 0.1, "{four_b:?}");
}

#[test]
fn minkowski_and_unitary_examples() {
    let f = Frame::<Rational>::standard();
    let one = BqQ::one();
    assert_eq!(one.minkowski_product(&one), num_complex::Complex::new(Rational::from_integer(1.into()), Rational::from_integer(0.into())));
    let ie3 = BqQ::e(3).mul_i();
    assert_eq!(ie3.unitary_product(&ie3).re, Rational::from_integer(1.into()));
    assert!(f.sigma.minkowski_product(&f.sigma).re == Rational::from_integer(0.into()));
    let s2 = f.sigma.scale_real(&Rational::from_integer(2.into()));
    assert_eq!(f.sigma.unitary_product(&s2).re, Rational::from_integer(1.into()));
}

#[test]
fn table_subspaces() {
    let f = Frame::standard();
    let mut r = rng(5);
    for row in ActionRow::ALL {
        let c = subspace_closure(row, &f, &mut r, 10);
        assert!(c.closed, "{row:?}");
        assert_eq!((c.real_dim_a, c.real_dim_b), row.listed_dims(), "{row:?}");
    }
}

#[test]
fn group_action_rows() {
    let f = Frame::standard();
    let mut r = rng(9);
    for _ in 0..20 {
        let a = LorentzElement::random(&mut r, 1.2);
        let b = LorentzElement::random(&mut r, 1.2);
        let ab = a.compose(&b);
        assert!(ab.invariant_defect() < 1e-12);
        for row in [ActionRow::Zero, ActionRow::HalfPlus, ActionRow::HalfMinus, ActionRow::One] {
            for role in [FieldRole::A, FieldRole::B] {
                let lhs = act_op(row, role, &a, &f).compose(&act_op(row, role, &b, &f));
                assert!(lhs.op_equal(&act_op(row, role, &ab, &f), 1e-11), "{row:?} {role:?}");
            }
        }
    }
}

#[test]
fn half_rows_match_exponential_on_subspace() {
    let f = Frame::standard();
    let mut r = rng(21);
    for _ in 0..20 {
        let axis = random_axis(&mut r);
        let theta = 1.3;
        let lt = LorentzElement::from_parts(Bq::one(), rotor(axis, theta));
        let op = spin::rotate(SpinLabel::HalfPlus, axis, theta, &f).unwrap();
        for x in subspace_span(ActionRow::HalfPlus, FieldRole::A, &f) {
            assert!(op.apply(&x).approx_eq(&act(ActionRow::HalfPlus, FieldRole::A, &lt, &x, &f), 1e-12));
        }
    }
}

#[test]
fn four_component_action() {
    let f = Frame::standard();
    assert!(l32_action(&LorentzElement::<f64>::identity()).op_equal(&RealLinearOp::identity(), 0.0));
    // About ν the J3 eigenstates pick up the same phases as the exponential rotation.
    let theta = 0.9;
    let ax = [0.0, 0.0, 1.0];
    let op = l32_action(&LorentzElement::from_parts(Bq::one(), rotor(ax, theta)));
    let exp = spin::rotate(SpinLabel::ThreeHalf, ax, theta, &f).unwrap();
    for (m, x) in spin::eigenstates(SpinLabel::ThreeHalf, &f) {
        let phase = num_complex::Complex::new(0.0, -m * theta).exp();
        assert!(op.apply(&x).approx_eq(&x.scale(&phase), 1e-12), "{m}");
        assert!(exp.apply(&x).approx_eq(&x.scale(&phase), 1e-12), "{m}");
    }
}

#[test]
fn closure_structure() {
    let f = Frame::standard();
    let c = closure_test(&f);
    println!("nu residual {:e} defect {}", c.nu_rotation_residual, c.defect);
    assert!(c.rotations_about_nu_close);
    assert!(c.defect > 1e-3);
    let trivial = best_l32_fit(&l32_action(&c.l1), &[c.l1.clone()]).0;
    assert!(trivial < 1e-9);
}

#[test]
fn make_lorentz_examples() {
    let lt = make_lorentz([1.0, 0.0, 0.0], 0.0, [0.0, 1.0, 0.0], 0.0).unwrap();
    assert!(lt.l.approx_eq(&Bq::one(), 0.0));
    let rot = make_lorentz([0.0, 0.0, 1.0], 0.8, [1.0, 0.0, 0.0], 0.0).unwrap();
    assert!(rot.l.star().approx_eq(&rot.l, 0.0));
    let bst = make_lorentz([0.0, 0.0, 1.0], 0.0, [0.0, 0.6, 0.8], 1.3).unwrap();
    assert!(bst.l.plus().approx_eq(&bst.l, 1e-15));
    assert!(make_lorentz([1.0, 1.0, 0.0], 0.1, [1.0, 0.0, 0.0], 0.0).is_err());
}
