use biquat::conventions::{nabla, nabla_bar, select_nabla_convention, selection_table, NablaSpec};
use biquat::equations::*;
use biquat::field::{Field, Poly};
use biquat::sample;
use biquat::{BqQ, Frame, Rational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type F = Field<Rational>;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn mom(p0: Rational, p: [i64; 3], m: i64) -> Momentum<Rational> {
    Momentum::new(p0, p.map(Rational::from_i64), Rational::from_i64(m))
}

fn momenta() -> Vec<Momentum<Rational>> {
    vec![
        mom(q(1, 1), [0, 0, 0], 1),
        mom(q(2, 1), [1, 1, 1], 1),
        Momentum::new(q(5, 4), [q(3, 4), q(0, 1), q(0, 1)], q(1, 1)),
        Momentum::new(q(3, 1), [q(2, 1), q(2, 1), q(0, 1)], q(1, 1)),
    ]
}

#[test]
fn selection_is_unique_and_frozen() {
    let table = selection_table();
    for row in &table {
        println!("{:<18} equivariant={} kg={} conserved={} tensor={}", row.candidate.label(), row.equivariant, row.klein_gordon, row.conserved, row.tensor_consistent);
    }
    assert_eq!(table.iter().filter(|r| r.passes()).count(), 1);
    assert_eq!(select_nabla_convention().unwrap(), NablaSpec::SELECTED);
}

#[test]
fn gradient_examples() {
    assert!(nabla(&F::constant(BqQ::from_ints([1, 2, 3, 4, 5, 6, 7, 8]))).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f: F = sample::poly_field(&mut rng, 4, 3, 0.5);
    let dal = &f.deriv(0).deriv(0) - &(1..4).fold(F::zero(), |a, j| &a + &f.deriv(j).deriv(j));
    assert_eq!(nabla(&nabla_bar(&f)), -dal);
    let fr = Frame::standard();
    let w = plane_wave(&[q(1, 2), q(1, 3), q(0, 1), q(-1, 1)], &BqQ::e(2), &fr);
    assert_eq!(nabla(&w).modes().len(), 1);
    assert_eq!(nabla(&w).modes()[0].k, w.modes()[0].k);
}

#[test]
fn symbol_nullspace_dimensions() {
    let f: Frame<Rational> = Frame::standard();
    for p in momenta() {
        let sols = plane_wave_solutions(&p, &f).unwrap();
        assert_eq!(sols.len(), 4, "{p:?}");
        let free = ExternalField::zero();
        for z in &sols {
            let psi = plane_wave(&p.wave_vector(), z, &f);
            assert!(dirac_lanczos_residual(&psi, &free, &p.m, &f).is_zero());
            assert!(kg_residual(&psi, &p.m).is_zero());
        }
    }
    let off = mom(q(2, 1), [1, 0, 0], 1);
    assert_eq!(plane_wave_solutions(&off, &f).unwrap_err(), biquat::Error::OffShell);
    let m = dirac_symbol(&NablaSpec::SELECTED, &off.wave_vector(), &off.m, &f);
    assert_eq!(biquat::linalg::rank(&m, 8, 0.0), 8);
    // KG residual is proportional to the shell defect
    let z = BqQ::from_ints([1, 0, 2, 0, 0, 1, 0, 0]);
    let psi = plane_wave(&off.wave_vector(), &z, &f);
    assert_eq!(kg_residual(&psi, &off.m), psi.scale_real(&off.shell_defect()));
}

#[test]
fn nullspace_matches_dense_float_oracle() {
    let f: Frame<Rational> = Frame::standard();
    for p in momenta() {
        let m = dirac_symbol(&NablaSpec::SELECTED, &p.wave_vector(), &p.m, &f);
        let dm = nalgebra::DMatrix::from_fn(8, 8, |r, c| m[r][c].to_f64());
        let sv = dm.svd(false, false).singular_values;
        let zero = sv.iter().filter(|s| **s < 1e-9).count();
        assert_eq!(zero, 4);
    }
}

fn superposed_solution(f: &Frame<Rational>) -> F {
    let mut psi = F::zero();
    for (i, p) in momenta().into_iter().enumerate().skip(1) {
        let sols = plane_wave_solutions(&p, f).unwrap();
        let z = &sols[i % 4] + &sols[(i + 2) % 4].scale_real(&q(-3, 2));
        psi = &psi + &plane_wave(&p.wave_vector(), &z, f);
    }
    psi
}

#[test]
fn current_conservation_on_solutions() {
    let f: Frame<Rational> = Frame::standard();
    let psi = superposed_solution(&f);
    assert!(divergence_scalar(&current(&psi)).is_zero());
    // the reversed ordering is not conserved
    assert!(!divergence_scalar(&current_reversed(&psi)).is_zero());
    for x in [[0.1, 0.2, -0.3, 0.4], [1.0, -2.0, 0.5, 0.0]] {
        assert!(current(&psi).eval(&x).s.re >= 0.0);
    }
}

#[test]
fn current_positivity_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f: Field<f64> = sample::poly_field(&mut rng, 3, 4, 0.6);
    for i in 0..50 {
        let x = [i as f64 * 0.1 - 2.0, 0.3 * i as f64, -1.0 + 0.05 * i as f64, 0.7];
        let c = current(&f).eval(&x);
        assert!(c.s.re >= -1e-9 && c.s.im.abs() < 1e-6 * (1.0 + c.s.re));
    }
}

#[test]
fn lanczos_plane_waves_and_doublet() {
    let f: Frame<Rational> = Frame::standard();
    let free = ExternalField::zero();
    let mut a = F::zero();
    let mut b = F::zero();
    for (i, p) in momenta().into_iter().enumerate() {
        let a0 = BqQ::from_ints([1, i as i64, -2, 0, 1, 0, 3, -1]);
        let (ai, bi) = lanczos_plane_wave(&p, &a0, &f).unwrap();
        let (ra, rb) = lanczos_residual(&ai, &bi, &free, &p.m);
        assert!(ra.is_zero() && rb.is_zero());
        a = &a + &ai;
        b = &b + &bi;
    }
    let m = q(1, 1);
    let (ra, rb) = lanczos_residual(&a, &b, &free, &m);
    assert!(ra.is_zero() && rb.is_zero());
    let (pp, pm) = build_doublet(&a, &b, &f);
    for psi in [&pp, &pm] {
        assert!(dirac_lanczos_residual(psi, &free, &m, &f).is_zero());
        assert!(kg_residual(psi, &m).is_zero());
    }
    assert_ne!(pp, pm);
    let (z1, z2) = build_doublet(&F::zero(), &F::zero(), &f);
    assert!(z1.is_zero() && z2.is_zero());
    let (c1, c2) = build_doublet(&F::constant(f.sigma.clone()), &F::constant(f.sigma.clone()), &f);
    assert_eq!(c1, F::constant(&f.sigma + &(&f.sigma_bar * &f.sigma_bar)));
    let itn = (&f.tau * &f.nu).mul_i();
    assert_eq!(c2, F::constant(&(&(&f.sigma * &f.sigma_bar) - &(&f.sigma_bar * &f.sigma)) * &itn));
}

#[test]
fn klein_gordon_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let free = ExternalField::zero();
    let m = q(3, 2);
    for _ in 0..5 {
        let a: F = sample::poly_field(&mut rng, 4, 3, 0.4);
        let b: F = sample::poly_field(&mut rng, 4, 3, 0.4);
        let (ra, rb) = lanczos_residual(&a, &b, &free, &m);
        let m2 = m.clone() * m.clone();
        assert_eq!(&nabla(&nabla_bar(&a)) - &a.scale_real(&m2), &nabla(&ra) + &rb.scale_real(&m));
        assert_eq!(&nabla_bar(&nabla(&b)) - &b.scale_real(&m2), &nabla_bar(&rb) + &ra.scale_real(&m));
    }
}

#[test]
fn maxwell_limit() {
    let free = ExternalField::zero();
    let zero = Rational::from_i64(0);
    let b = F::constant(BqQ::from_ints([0, 1, -2, 3, 0, 4, 0, -1]));
    let (r1, r2) = lanczos_residual(&F::zero(), &b, &free, &zero);
    assert!(r1.is_zero() && r2.is_zero());
    // a circularly polarized vacuum wave
    let k = [q(1, 1), q(0, 1), q(0, 1), q(-1, 1)];
    let f: Frame<Rational> = Frame::standard();
    let wave = plane_wave(&k, &(&BqQ::e(1) + &BqQ::e(2).mul_i()), &f);
    let (_, r2) = lanczos_residual(&F::zero(), &wave, &free, &zero);
    println!("maxwell wave residual zero: {}", r2.is_zero());
}

/// Component view of a bireal potential `A = A0 − iA⃗`.
fn four_components(a: &F) -> [F; 4] {
    let comp = |n: usize| a.map(|x| {
        let c = if n == 0 { x.s.clone() } else { num_complex::Complex::new(-x.v[n - 1].im.clone(), Rational::from_i64(0)) };
        let c = if n == 0 { num_complex::Complex::new(c.re, Rational::from_i64(0)) } else { c };
        BqQ::scalar(c)
    });
    [comp(0), comp(1), comp(2), comp(3)]
}

fn on_vector(v: &[F; 3]) -> F {
    (0..3).fold(F::zero(), |acc, n| &acc + &v[n].rmul(&BqQ::e(n + 1)))
}

#[test]
fn proca_against_tensor_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = q(2, 1);
    for _ in 0..4 {
        let comps: [F; 4] = std::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
        let a = ExternalField::new(comps.clone(), Rational::from_i64(1)).phi;
        let c = four_components(&a);
        for n in 0..4 {
            assert_eq!(c[n], comps[n]);
        }
        // F^{μν} = ∂^μ A^ν − ∂^ν A^μ with ∂^μ = (∂t, −∂n) on contravariant A^μ = (A0, A⃗)
        let up = |mu: usize, f: &F| if mu == 0 { f.deriv(0) } else { -f.deriv(mu) };
        let ften = |mu: usize, nu: usize| &up(mu, &c[nu]) - &up(nu, &c[mu]);
        let e: [F; 3] = std::array::from_fn(|n| ften(n + 1, 0));
        let h: [F; 3] = std::array::from_fn(|n| {
            let (a1, a2) = ((n + 1) % 3 + 1, (n + 2) % 3 + 1);
            -ften(a1, a2)
        });
        let b = proca_bivector(&a);
        assert_eq!(b, &on_vector(&e) + &on_vector(&h).mul_i());
        // ∂_μ F^{μν} + m² A^ν with ∂_μ = (∂t, ∂n)
        let res: [F; 4] = std::array::from_fn(|nu| {
            let div = (0..4).fold(F::zero(), |acc, mu| &acc + &ften(mu, nu).deriv(mu));
            &div + &c[nu].scale_real(&(m.clone() * m.clone()))
        });
        let expect = &(-&res[0]) + &on_vector(&[res[1].clone(), res[2].clone(), res[3].clone()]).mul_i();
        assert_eq!(proca_potential_residual(&a, &m), expect);
    }
    assert!(proca_potential_residual(&F::zero(), &m).is_zero());
}

#[test]
fn massless_equation_in_div_curl_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e: [F; 3] = std::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
    let h: [F; 3] = std::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 3, 3));
    let b = &on_vector(&e) + &on_vector(&h).mul_i();
    let div = |v: &[F; 3]| (0..3).fold(F::zero(), |acc, n| &acc + &v[n].deriv(n + 1));
    let curl = |v: &[F; 3]| -> [F; 3] { std::array::from_fn(|n| {
        let (a1, a2) = ((n + 1) % 3, (n + 2) % 3);
        &v[a2].deriv(a1 + 1) - &v[a1].deriv(a2 + 1)
    }) };
    let dt = |v: &[F; 3]| -> [F; 3] { std::array::from_fn(|n| v[n].deriv(0)) };
    let add = |x: &[F; 3], y: &[F; 3], s: i64| -> [F; 3] { std::array::from_fn(|n| &x[n] + &y[n].scale_real(&Rational::from_i64(s))) };
    let scalar = &(-&div(&e)) + &(-&div(&h)).mul_i();
    let vector = &on_vector(&add(&dt(&h), &curl(&e), 1)) + &on_vector(&add(&curl(&h), &dt(&e), -1)).mul_i();
    assert_eq!(nabla(&b), &scalar + &vector);
}

#[test]
fn lanczos_symbol_from_fields() {
    let free = ExternalField::zero();
    let p = mom(q(3, 1), [2, 2, 0], 1);
    let k = p.wave_vector();
    let a0 = BqQ::from_ints([1, 2, 0, -1, 0, 1, 3, 0]);
    let b0 = BqQ::from_ints([0, 1, 1, 0, 2, 0, -1, 1]);
    let im = |z: &BqQ| z.scale(&num_complex::Complex::new(Rational::from_i64(0), Rational::from_i64(-1)));
    let wave = |z: &BqQ| Field::wave(k.clone(), Poly::constant(z.clone()), Poly::constant(im(z)));
    let pq = NablaSpec::SELECTED.symbol(&k).mul_i().scale_real(&Rational::from_i64(-1));
    assert!(pq.is_bireal());
    let (ra, rb) = lanczos_residual(&wave(&a0), &wave(&b0), &free, &p.m);
    assert_eq!(ra, wave(&(&(&pq.bar() * &a0) - &b0.scale_real(&p.m))));
    assert_eq!(rb, wave(&(&(&pq * &b0) - &a0.scale_real(&p.m))));
    assert_eq!(pq, -p.quaternion());
}

#[test]
fn symbol_equivariance_all_rows() {
    use biquat::lorentz::{ActionRow, LorentzElement};
    let f = Frame::<f64>::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let lt = LorentzElement::random(&mut rng, 1.2);
        let p = biquat::Bq::from_real8(&[1.3, 0.0, 0.0, 0.0, 0.0, 0.2, -0.4, 0.7]);
        assert!(p.is_bireal());
        let a = sample::int_bq::<f64, _>(&mut rng, 3);
        let b = sample::int_bq::<f64, _>(&mut rng, 3);
        for row in ActionRow::ALL {
            let d = symbol_equivariance_defect(row, &lt, &p, &a, &b, &1.0, &f);
            assert!(d < 1e-10, "{row:?} {d}");
        }
    }
    let fq: Frame<Rational> = Frame::standard();
    for lt in biquat::conventions::rational_lorentz_samples() {
        let p = -mom(q(2, 1), [1, 1, 1], 1).quaternion();
        let a = BqQ::from_ints([1, 2, 0, -1, 0, 3, 1, 0]);
        let b = BqQ::from_ints([0, 1, 1, 0, 2, 0, -1, 1]);
        for row in ActionRow::ALL {
            assert_eq!(symbol_equivariance_defect(row, &lt, &p, &a, &b, &q(1, 1), &fq), 0.0, "{row:?}");
        }
    }
}

#[test]
fn boosted_solutions_follow_the_spinor_law() {
    let f: Frame<Rational> = Frame::standard();
    let free = ExternalField::zero();
    for lt in biquat::conventions::rational_lorentz_samples() {
        for p in momenta() {
            let pq = p.quaternion();
            let p2 = Momentum::from_quaternion(&(&(&lt.l * &pq) * &lt.l.plus()), p.m.clone());
            assert!(p2.on_shell());
            assert_eq!(plane_wave_solutions(&p2, &f).unwrap().len(), 4);
            for z in plane_wave_solutions(&p, &f).unwrap() {
                let psi = plane_wave(&p2.wave_vector(), &(&lt.l * &z), &f);
                assert!(dirac_lanczos_residual(&psi, &free, &p.m, &f).is_zero());
            }
        }
    }
}

#[test]
fn gauge_covariance() {
    let f: Frame<Rational> = Frame::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = q(1, 1);
    for _ in 0..3 {
        let comps: [F; 4] = std::array::from_fn(|_| sample::real_scalar_poly(&mut rng, 1, 2));
        let ext = ExternalField::new(comps, q(2, 1));
        let psi: F = sample::poly_field(&mut rng, 2, 3, 0.4);
        let c = [q(1, 1), q(-1, 2), q(0, 1), q(3, 1)];
        let (psi2, ext2) = gauge_transform(&psi, &ext, &c, &f);
        let (phase, _) = gauge_transform(&F::constant(BqQ::one()), &ext, &c, &f);
        let r1 = dirac_lanczos_residual(&psi, &ext, &m, &f);
        let r2 = dirac_lanczos_residual(&psi2, &ext2, &m, &f);
        assert_eq!(r2, &r1 * &phase);
        assert_eq!(current(&psi2), current(&psi));
    }
}
