use biquat::frame::rotated_frame;
use biquat::{make_frame, product, Bq, BqQ, Error, Flavor, Frame, PeirceCoords, Rational, RealLinearOp, C};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn q_of(c: [i64; 8]) -> BqQ {
    BqQ::from_ints(c)
}

fn ints() -> impl Strategy<Value = [i64; 8]> {
    proptest::array::uniform8(-9i64..=9)
}

fn floats() -> impl Strategy<Value = [f64; 8]> {
    proptest::array::uniform8(-1.0f64..1.0)
}

/// Hamilton product written out on complex components `[s, v1, v2, v3]`.
fn oracle_mul(a: [Complex64; 4], b: [Complex64; 4]) -> [Complex64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] + a[2] * b[0] + a[3] * b[1] - a[1] * b[3],
        a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1],
    ]
}

fn comps(x: &Bq) -> [Complex64; 4] {
    [x.s, x.v[0], x.v[1], x.v[2]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn associative_exact(a in ints(), b in ints(), c in ints()) {
        let (a, b, c) = (q_of(a), q_of(b), q_of(c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn associative_float(a in floats(), b in floats(), c in floats()) {
        let (a, b, c) = (Bq::from_real8(&a), Bq::from_real8(&b), Bq::from_real8(&c));
        prop_assert!((&(&(&a * &b) * &c) - &(&a * &(&b * &c))).max_abs() <= 1e-13);
    }

    #[test]
    fn product_matches_component_oracle(a in floats(), b in floats()) {
        let (x, y) = (Bq::from_real8(&a), Bq::from_real8(&b));
        let p = comps(&(&x * &y));
        let o = oracle_mul(comps(&x), comps(&y));
        for k in 0..4 {
            prop_assert!((p[k] - o[k]).norm() <= 1e-14);
        }
    }

    #[test]
    fn conjugation_laws(a in ints(), b in ints()) {
        let (a, b) = (q_of(a), q_of(b));
        let ab = &a * &b;
        prop_assert_eq!(ab.bar(), &b.bar() * &a.bar());
        prop_assert_eq!(ab.plus(), &b.plus() * &a.plus());
        prop_assert_eq!(ab.star(), &a.star() * &b.star());
        prop_assert_eq!(ab.reverse(), &b.reverse() * &a.reverse());
        prop_assert_eq!(a.plus(), a.bar().star());
        prop_assert_eq!(a.bar().bar(), a.clone());
    }

    #[test]
    fn norm_is_scalar_and_multiplicative(a in ints(), b in ints()) {
        let (a, b) = (q_of(a), q_of(b));
        prop_assert!((&a * &a.bar()).vector_part().is_zero());
        let ab = &a * &b;
        prop_assert_eq!(ab.norm(), a.norm() * b.norm());
        prop_assert_eq!(&ab * &ab.bar(), product(&[&a, &(&b * &b.bar()), &a.bar()]));
    }

    #[test]
    fn quaternion_times_idempotent_is_singular(l in proptest::array::uniform4(-9i64..=9), r in proptest::array::uniform4(-9i64..=9)) {
        let f: Frame<Rational> = Frame::standard();
        let lq = q_of([l[0], l[1], l[2], l[3], 0, 0, 0, 0]);
        let rq = q_of([r[0], r[1], r[2], r[3], 0, 0, 0, 0]);
        prop_assert!((&lq * &f.sigma).classify(0.0).singular);
        prop_assert!((&rq * &f.sigma_bar).classify(0.0).singular);
    }

    #[test]
    fn inverse_two_sided(a in ints()) {
        let a = q_of(a);
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(&a * &inv, BqQ::one());
                prop_assert_eq!(&inv * &a, BqQ::one());
            }
            Err(e) => {
                prop_assert_eq!(e, Error::SingularOperand);
                prop_assert!(a.classify(0.0).singular);
            }
        }
    }

    #[test]
    fn peirce_round_trip(a in ints()) {
        let q = q_of(a);
        for f in [Frame::<Rational>::standard(), rotated_frame([1, 2, 2, 4]).unwrap()] {
            prop_assert_eq!(f.peirce_compose(&f.peirce_decompose(&q)), q.clone());
            let iq = f.peirce_decompose(&q.mul_i());
            let qi = f.peirce_decompose(&q);
            for (x, y) in iq.as_array().iter().zip(qi.as_array().iter()) {
                prop_assert_eq!(x.clone(), y * C::new(Rational::from_integer(0.into()), Rational::from_integer(1.into())));
            }
        }
    }

    #[test]
    fn monomials_are_faithful(l in floats(), r in floats(), x in floats()) {
        let (l, r, x) = (Bq::from_real8(&l), Bq::from_real8(&r), Bq::from_real8(&x));
        for fl in [Flavor::Id, Flavor::Star, Flavor::Bar, Flavor::Plus] {
            let op = RealLinearOp::monomial(&l, &r, fl);
            prop_assert!(op.apply(&x).approx_eq(&(&(&l * &fl.apply(&x)) * &r), 1e-13));
            let antilinear = matches!(fl, Flavor::Star | Flavor::Plus);
            prop_assert_eq!(op.is_antilinear(1e-13), antilinear);
            prop_assert_eq!(op.is_complex_linear(1e-13), !antilinear || op.norm_inf() < 1e-13);
        }
    }
}

#[test]
fn hamilton_examples() {
    let e = |n| BqQ::e(n);
    assert_eq!(&e(1) * &e(2), e(3));
    assert_eq!(&e(1) * &e(1), -BqQ::one());
    let f: Frame<Rational> = Frame::standard();
    assert!((&f.sigma * &f.sigma_bar).is_zero());
    assert_eq!(f.sigma, q_of([1, 0, 0, 0, 0, 0, 0, 1]).scale_real(&Rational::new(1.into(), 2.into())));
    let ie1 = e(1).mul_i();
    assert_eq!(ie1.plus(), ie1);
    assert_eq!(q_of([1, 1, 0, 0, 0, 0, 0, 0]).norm(), C::new(Rational::from_integer(2.into()), Rational::from_integer(0.into())));
    assert_eq!(e(1).inverse().unwrap(), -e(1));
    assert_eq!(f.sigma.inverse().unwrap_err(), Error::SingularOperand);
}

/// `(i, j) ↦ (k, sign)` with basis order `{σ, τσ, σ̄, τσ̄}`; `None` for zero products.
const PEIRCE_TABLE: [[Option<(usize, i64)>; 4]; 4] = [
    [Some((0, 1)), None, None, Some((3, 1))],
    [Some((1, 1)), None, None, Some((2, -1))],
    [None, Some((1, 1)), Some((2, 1)), None],
    [None, Some((0, -1)), Some((3, 1)), None],
];

#[test]
fn peirce_multiplication_table() {
    let frames = [Frame::<Rational>::standard(), rotated_frame([1, 2, 2, 4]).unwrap(), rotated_frame([2, -1, 2, 0]).unwrap()];
    for f in frames {
        let b = f.peirce_basis();
        for i in 0..4 {
            for j in 0..4 {
                let p = &b[i] * &b[j];
                match PEIRCE_TABLE[i][j] {
                    None => assert!(p.is_zero(), "{i}{j}"),
                    Some((k, s)) => assert_eq!(p, b[k].scale_real(&Rational::from_integer(s.into())), "{i}{j}"),
                }
            }
        }
        assert_eq!(&f.sigma * &f.sigma, f.sigma);
        assert!((&f.tau_sigma_bar * &f.tau_sigma_bar).is_zero());
    }
}

#[test]
fn peirce_against_linear_solve() {
    let f = Frame::<f64>::standard();
    let basis = f.peirce_basis();
    let x = Bq::from_real8(&[0.3, -1.2, 0.5, 2.0, 0.7, 0.0, -0.4, 1.1]);
    let m = DMatrix::from_fn(4, 4, |r, c| comps(&basis[c])[r]);
    let rhs = DVector::from_iterator(4, comps(&x));
    let sol = m.lu().solve(&rhs).unwrap();
    let got = f.peirce_decompose(&x).as_array();
    for k in 0..4 {
        assert!((sol[k] - got[k]).norm() < 1e-13);
    }
    let one = f.peirce_decompose(&Bq::one()).as_array();
    assert_eq!(one.map(|z| z.re), [1.0, 0.0, 1.0, 0.0]);
    assert_eq!(f.peirce_decompose(&f.sigma), PeirceCoords::unit(0));
}

#[test]
fn frame_validation() {
    assert_eq!(make_frame([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).unwrap_err(), Error::InvalidFrame);
    assert_eq!(make_frame([0.0, 0.0, 2.0], [1.0, 0.0, 0.0]).unwrap_err(), Error::InvalidFrame);
    let f = make_frame([0.0, 0.6, 0.8], [1.0, 0.0, 0.0]).unwrap();
    assert!((&f.sigma * &f.sigma).approx_eq(&f.sigma, 1e-15));
    assert!((&(&f.nu * &f.nu) + &Bq::one()).max_abs() < 1e-15);
    assert!((&f.sigma_bar * &f.tau).classify(1e-12).singular);
}

#[test]
fn operator_algebra() {
    let f = Frame::<f64>::standard();
    let id = RealLinearOp::<f64>::identity();
    assert!(RealLinearOp::monomial(&Bq::one(), &Bq::one(), Flavor::Id).op_equal(&id, 0.0));
    let st = RealLinearOp::monomial(&Bq::one(), &Bq::one(), Flavor::Star);
    assert!(st.compose(&st).op_equal(&id, 0.0));
    let i = RealLinearOp::<f64>::i_op();
    assert!(st.compose(&i).op_equal(&i.compose(&st).scale(&-1.0), 0.0));
    let m = RealLinearOp::monomial(&f.sigma, &f.sigma_bar, Flavor::Id);
    assert!(m.apply(&f.tau).approx_eq(&product(&[&f.sigma, &f.tau, &f.sigma_bar]), 1e-15));
    let a = Bq::from_real8(&[0.1, 0.2, -0.3, 0.0, 0.5, 0.0, 0.1, 0.2]);
    let c = Bq::from_real8(&[1.0, 0.0, 0.3, -0.2, 0.0, 0.4, 0.0, 0.0]);
    let fused = RealLinearOp::monomial(&a, &Bq::one(), Flavor::Id).compose(&RealLinearOp::monomial(&Bq::one(), &c, Flavor::Id));
    assert!(fused.op_equal(&RealLinearOp::monomial(&a, &c, Flavor::Id), 1e-15));
    assert!(RealLinearOp::<f64>::zero().exp().op_equal(&id, 0.0));
}

/// Matrix of `X ↦ ½i(e3 X + 2 X e3)` from the component oracle, columns on the
/// real basis `{1, e1, e2, e3, i, ie1, ie2, ie3}`.
fn j3_fixture() -> DMatrix<f64> {
    let e3 = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    DMatrix::from_fn(8, 8, |r, c| {
        let mut x = [Complex64::new(0.0, 0.0); 4];
        if c < 4 {
            x[c] = Complex64::new(1.0, 0.0);
        } else {
            x[c - 4] = Complex64::new(0.0, 1.0);
        }
        let a = oracle_mul(e3, x);
        let b = oracle_mul(x, e3);
        let y: Vec<Complex64> = (0..4).map(|k| Complex64::new(0.0, 0.5) * (a[k] + b[k] * 2.0)).collect();
        if r < 4 {
            y[r].re
        } else {
            y[r - 4].im
        }
    })
}

#[test]
fn three_half_j3_matches_fixture() {
    let f = Frame::<f64>::standard();
    let g = biquat::spin::generators(biquat::spin::SpinLabel::ThreeHalf, &f);
    let cols = g.j[2].columns();
    let fx = j3_fixture();
    for c in 0..8 {
        for r in 0..8 {
            assert!((cols[c][r] - fx[(r, c)]).abs() < 1e-15);
        }
    }
    assert!(!g.j[0].op_equal(&g.j[1], 1e-6));
}
