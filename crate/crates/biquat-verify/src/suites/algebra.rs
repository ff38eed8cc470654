//! Product, conjugations, norm, idempotents and the Peirce decomposition.

use biquat::{Biquaternion, Frame, PeirceCoords, Rational, Scalar, C};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{c_abs, cplx, frames};
use crate::registry::{Ctx, Outcome, Suite};

type Q<T> = Biquaternion<T>;

const PAIRS: usize = 10_000;

fn rnd<T: Scalar>(rng: &mut ChaCha8Rng) -> Q<T> {
    if T::EXACT {
        biquat::sample::int_bq(rng, 9)
    } else {
        Q::from_real8(&core::array::from_fn(|_| T::from_f64(rng.gen_range(-1.0..1.0))))
    }
}

/// Two-constant product `[ab + p a⃗·b⃗; a b⃗ + a⃗ b + q a⃗×b⃗]` written out on components.
fn pq_product<T: Scalar>(p: &C<T>, q: &C<T>, a: &Q<T>, b: &Q<T>) -> Q<T> {
    let (x, y) = (&a.v, &b.v);
    let dot = &x[0] * &y[0] + &x[1] * &y[1] + &x[2] * &y[2];
    let cross = [&x[1] * &y[2] - &x[2] * &y[1], &x[2] * &y[0] - &x[0] * &y[2], &x[0] * &y[1] - &x[1] * &y[0]];
    let s = &a.s * &b.s + p * dot;
    let v = core::array::from_fn(|k| &a.s * &y[k] + &x[k] * &b.s + q * &cross[k]);
    Q::new(s, v)
}

fn hamilton_table<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let (p, qc) = (cplx::<T>(-1, 0), cplx::<T>(1, 0));
    for n in 0..4 {
        for m in 0..4 {
            let (a, b) = (unit::<T>(n), unit::<T>(m));
            o.residual((&(&a * &b) - &pq_product(&p, &qc, &a, &b)).max_abs());
        }
    }
    let e = |n| Q::<T>::e(n);
    o.check("e1e2=e3", &e(1) * &e(2) == e(3));
    o.check("e2e3=e1", &e(2) * &e(3) == e(1));
    o.check("e3e1=e2", &e(3) * &e(1) == e(2));
    o.check("e1e1=-1", &e(1) * &e(1) == -Q::one());
    let mut rng = ctx.rng();
    for _ in 0..1000 {
        let (a, b) = (rnd::<T>(&mut rng), rnd::<T>(&mut rng));
        o.residual((&(&a * &b) - &pq_product(&p, &qc, &a, &b)).max_abs());
    }
    o
}

fn unit<T: Scalar>(n: usize) -> Q<T> {
    if n == 0 {
        Q::one()
    } else {
        Q::e(n)
    }
}

fn associator<T: Scalar>(p: &C<T>, q: &C<T>, a: &Q<T>, b: &Q<T>, c: &Q<T>) -> f64 {
    let m = |x: &Q<T>, y: &Q<T>| pq_product(p, q, x, y);
    (&m(&m(a, b), c) - &m(a, &m(b, c))).max_abs()
}

/// Associativity of the two-constant product on and off the curve `q² + p³ = 0`.
fn structure_constants(ctx: &Ctx) -> Outcome {
    type T = Rational;
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let on_curve = [(cplx::<T>(-1, 0), cplx::<T>(1, 0)), (cplx(-1, 0), cplx(-1, 0)), (cplx(1, 0), cplx(0, 1)), (cplx(1, 0), cplx(0, -1))];
    let off_curve = [(cplx::<T>(-1, 0), cplx::<T>(2, 0)), (cplx(1, 0), cplx(1, 0))];
    for (p, qc) in &on_curve {
        let c = qc * qc + p * p * p;
        o.check(format!("curve p={},{} q={},{}", p.re, p.im, qc.re, qc.im), c.is_zero());
        for _ in 0..200 {
            let (a, b, c) = (rnd::<T>(&mut rng), rnd(&mut rng), rnd(&mut rng));
            o.residual(associator(p, qc, &a, &b, &c));
        }
    }
    let mut worst = 0.0f64;
    for (p, qc) in &off_curve {
        let (a, b, c) = (Q::<T>::e(1), Q::e(1), Q::e(2));
        let d = associator(p, qc, &a, &b, &c);
        o.check(format!("nonassociative p={} q={}", p.re, qc.re), d > 0.0);
        worst = worst.max(d);
    }
    // flipping the sign of q reverses the order of the factors
    let (p, qp, qm) = (cplx::<T>(-1, 0), cplx::<T>(1, 0), cplx::<T>(-1, 0));
    for _ in 0..200 {
        let (a, b) = (rnd::<T>(&mut rng), rnd(&mut rng));
        o.residual((&pq_product(&p, &qm, &a, &b) - &pq_product(&p, &qp, &b, &a)).max_abs());
        o.residual((&pq_product(&p, &qm, &a, &b) - &(&b * &a)).max_abs());
    }
    o.info("off_curve_associator", worst);
    o
}

fn conjugations<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for _ in 0..1000 {
        let a = rnd::<T>(&mut rng);
        let neg = |v: &[C<T>; 3]| v.clone().map(|z| -z);
        let cj = |v: &[C<T>; 3]| v.clone().map(|z| z.conj());
        o.residual((&a.bar() - &Q::new(a.s.clone(), neg(&a.v))).max_abs());
        o.residual((&a.star() - &Q::new(a.s.conj(), cj(&a.v))).max_abs());
        o.residual((&a.plus() - &Q::new(a.s.conj(), neg(&cj(&a.v)))).max_abs());
        o.residual((&a.bar().bar() - &a).max_abs());
        o.residual((&a.star().star() - &a).max_abs());
        o.residual((&a.plus() - &a.bar().star()).max_abs());
    }
    o
}

fn anti_automorphism<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for _ in 0..PAIRS {
        let (a, b) = (rnd::<T>(&mut rng), rnd::<T>(&mut rng));
        let ab = &a * &b;
        o.residual((&ab.star() - &(&a.star() * &b.star())).max_abs());
        o.residual((&ab.bar() - &(&b.bar() * &a.bar())).max_abs());
        o.residual((&ab.plus() - &(&b.plus() * &a.plus())).max_abs());
    }
    o
}

fn associativity<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for _ in 0..PAIRS {
        let (a, b, c) = (rnd::<T>(&mut rng), rnd::<T>(&mut rng), rnd::<T>(&mut rng));
        o.residual((&(&(&a * &b) * &c) - &(&a * &(&b * &c))).max_abs());
        o.residual((&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c))).max_abs());
    }
    o
}

/// `QQ̄` is a scalar, multiplicative, and decides invertibility.
fn norm<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for _ in 0..PAIRS {
        let (a, b) = (rnd::<T>(&mut rng), rnd::<T>(&mut rng));
        let n = &a * &a.bar();
        o.residual(n.vector_part().max_abs());
        o.residual(c_abs(&((&a * &b).norm() - a.norm() * b.norm())));
    }
    let mut failed = 0usize;
    for _ in 0..200 {
        let a = rnd::<T>(&mut rng);
        if c_abs(&a.norm()) < 1e-9 {
            continue;
        }
        match a.inverse() {
            Ok(inv) => {
                o.residual((&(&a * &inv) - &Q::one()).max_abs());
                o.residual((&(&inv * &a) - &Q::one()).max_abs());
            }
            Err(_) => failed += 1,
        }
    }
    o.check("regular samples invertible", failed == 0);
    let f = Frame::<T>::standard();
    for s in [f.sigma.clone(), f.sigma_bar.clone(), (&Q::e(1) + &Q::e(2).mul_i())] {
        o.check("null element has zero norm", s.norm().is_zero() || (!T::EXACT && c_abs(&s.norm()) < 1e-15));
        o.check("null element has no inverse", s.inverse().is_err());
    }
    o
}

fn idempotents<T: Scalar>(_: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    for f in frames::<T>() {
        let (s, sb) = (&f.sigma, &f.sigma_bar);
        o.residual((&(s * s) - s).max_abs());
        o.residual((s * sb).max_abs());
        o.residual((sb * s).max_abs());
        let n = sb * &f.tau;
        o.residual((&n * &n).max_abs());
        o.residual((&(s + sb) - &Q::one()).max_abs());
        o.check("nilpotent is nonzero", n.max_abs() > 0.1);
    }
    o
}

fn peirce_round_trip<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    for f in frames::<T>() {
        for _ in 0..1000 {
            let a = rnd::<T>(&mut rng);
            let c = f.peirce_decompose(&a);
            o.residual((&f.peirce_compose(&c) - &a).max_abs());
        }
        for (k, b) in f.peirce_basis().iter().enumerate() {
            let c = f.peirce_decompose(b).as_array();
            let unit = PeirceCoords::<T>::unit(k).as_array();
            for j in 0..4 {
                o.residual(c_abs(&(c[j].clone() - unit[j].clone())));
            }
        }
    }
    o
}

/// `S₁ = (c₁ + c₂τ)σ` and `S₂ = (c₃τ + c₄)σ̄` occupy disjoint Peirce slots.
fn spinor_embedding<T: Scalar>(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ctx.rng();
    let z = || C::<T>::zero();
    for f in frames::<T>() {
        for _ in 0..200 {
            let c: [C<T>; 4] = core::array::from_fn(|_| {
                let r = rnd::<T>(&mut rng);
                r.s
            });
            let s1 = &(&Q::scalar(c[0].clone()) + &f.tau.scale(&c[1])) * &f.sigma;
            let s2 = &(&f.tau.scale(&c[2]) + &Q::scalar(c[3].clone())) * &f.sigma_bar;
            let want1 = [c[0].clone(), c[1].clone(), z(), z()];
            let want2 = [z(), z(), c[3].clone(), c[2].clone()];
            for (s, w) in [(&s1, want1), (&s2, want2)] {
                let got = f.peirce_decompose(s).as_array();
                for j in 0..4 {
                    o.residual(c_abs(&(got[j].clone() - w[j].clone())));
                }
            }
            o.residual((&s1 * &f.sigma_bar).max_abs());
            o.residual((&s2 * &f.sigma).max_abs());
            o.residual((&(&s1 + &s2) - &f.peirce_compose(&PeirceCoords::new(c[0].clone(), c[1].clone(), c[3].clone(), c[2].clone()))).max_abs());
        }
    }
    o
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite::identity("a1.hamilton_table", "Eq. (A.1)", 1).exact(hamilton_table::<Rational>).float(hamilton_table::<f64>).tol(1e-14),
        Suite::identity("a2.structure_constants", "Eq. (A.2)", 1).exact(structure_constants),
        Suite::identity("a3.conjugations", "Eq. (A.3)", 1).exact(conjugations::<Rational>).float(conjugations::<f64>).tol(1e-15),
        Suite::identity("a4.conjugation_laws", "Eq. (A.4)", 1).exact(anti_automorphism::<Rational>).float(anti_automorphism::<f64>).tol(1e-14),
        Suite::identity("alg.associativity", "Eq. (A.1)", 1).exact(associativity::<Rational>).float(associativity::<f64>).tol(1e-13),
        Suite::identity("fn6.norm", "Footnote 6", 1).exact(norm::<Rational>).float(norm::<f64>).tol(1e-12),
        Suite::identity("fn7.idempotents", "Footnote 7", 2).exact(idempotents::<Rational>).float(idempotents::<f64>).tol(1e-15),
        Suite::identity("eq8.peirce_round_trip", "Eq. (8')", 2).exact(peirce_round_trip::<Rational>).float(peirce_round_trip::<f64>).tol(1e-14),
        Suite::identity("eq8.spinor_embedding", "Eq. (8'')", 2).exact(spinor_embedding::<Rational>).float(spinor_embedding::<f64>).tol(1e-14),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_product_pauli_choice() {
        // p = 1, q = i: e1 e2 = i e3
        let (p, q) = (cplx::<Rational>(1, 0), cplx::<Rational>(0, 1));
        let r = pq_product(&p, &q, &Q::e(1), &Q::e(2));
        assert_eq!(r, Q::e(3).mul_i());
    }
}
