//! Biquaternion-valued fields on spacetime: sums of polynomial × cos/sin terms,
//! closed under products, conjugations and exact differentiation.
//!
//! Coordinates are `x = (x0, x1, x2, x3)` with `x0 = t`; a mode with wave vector
//! `k` carries the phase `θ = Σ k_j x_j`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::biquaternion::Biquaternion;
use crate::linop::Flavor;
use crate::scalar::{Scalar, C};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Exponents `(a, b, c, d)` of `t^a x1^b x2^c x3^d`.
pub type Monomial = [u8; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Scalar> {
    terms: BTreeMap<Monomial, Biquaternion<T>>,
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Biquaternion<T>) -> Self {
        Self::term([0; 4], q)
    }

    pub fn term(m: Monomial, q: Biquaternion<T>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, q);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Biquaternion<T>)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, q: Biquaternion<T>) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += &q;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, q);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    pub fn map(&self, f: impl Fn(&Biquaternion<T>) -> Biquaternion<T>) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            out.add_term(*m, f(q));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(*m, q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(*m, -q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, a * b);
            }
        }
        out
    }

    pub fn deriv(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            if m[j] > 0 {
                let mut m2 = *m;
                m2[j] -= 1;
                out.add_term(m2, q.scale_real(&T::from_i64(m[j] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64; 4]) -> Biquaternion<f64> {
        let mut out = Biquaternion::zero();
        for (m, q) in &self.terms {
            let w: f64 = (0..4).map(|j| x[j].powi(m[j] as i32)).product();
            out += &q.to_f64().scale_real(&w);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Biquaternion::max_abs).fold(0.0, f64::max)
    }
}

/// One term `P(x) cos θ + Q(x) sin θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mode<T: Scalar> {
    pub k: [T; 4],
    pub cos: Poly<T>,
    pub sin: Poly<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Field<T: Scalar> {
    modes: Vec<Mode<T>>,
}

impl<T: Scalar> Default for Field<T> {
    fn default() -> Self {
        Field { modes: Vec::new() }
    }
}

fn is_static<T: Scalar>(k: &[T; 4]) -> bool {
    k.iter().all(|x| x.is_zero())
}

impl<T: Scalar> Field<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Biquaternion<T>) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        let mut f = Self::zero();
        f.push_mode(core::array::from_fn(|_| T::zero()), p, Poly::zero());
        f
    }

    pub fn monomial(m: Monomial, q: Biquaternion<T>) -> Self {
        Self::from_poly(Poly::term(m, q))
    }

    /// The real coordinate `x_j`.
    pub fn coordinate(j: usize) -> Self {
        let mut m = [0; 4];
        m[j] = 1;
        Self::monomial(m, Biquaternion::one())
    }

    /// `P cos(k·x) + Q sin(k·x)`.
    pub fn wave(k: [T; 4], p: Poly<T>, q: Poly<T>) -> Self {
        let mut f = Self::zero();
        f.push_mode(k, p, q);
        f
    }

    pub fn modes(&self) -> &[Mode<T>] {
        &self.modes
    }

    /// Adds a term, normalizing `k` so its first nonzero entry is positive.
    fn push_mode(&mut self, mut k: [T; 4], cos: Poly<T>, mut sin: Poly<T>) {
        if is_static(&k) {
            sin = Poly::zero();
        } else if k.iter().find(|x| !x.is_zero()).is_some_and(|x| x.abs_f64() > 0.0 && x.to_f64() < 0.0) {
            k = k.map(|x| -x);
            sin = sin.map(|q| -q);
        }
        if cos.is_zero() && sin.is_zero() {
            return;
        }
        if let Some(i) = self.modes.iter().position(|m| m.k == k) {
            let m = &mut self.modes[i];
            m.cos = m.cos.add(&cos);
            m.sin = m.sin.add(&sin);
            if m.cos.is_zero() && m.sin.is_zero() {
                self.modes.remove(i);
            }
        } else {
            self.modes.push(Mode { k, cos, sin });
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.modes.iter().map(|m| m.cos.degree().max(m.sin.degree())).max().unwrap_or(0)
    }

    /// Largest coefficient magnitude; zero exactly when the field vanishes.
    pub fn max_abs(&self) -> f64 {
        self.modes.iter().map(|m| m.cos.max_abs().max(m.sin.max_abs())).fold(0.0, f64::max)
    }

    /// Applies a real-linear coefficient map; real trigonometric factors commute with it.
    pub fn map(&self, f: impl Fn(&Biquaternion<T>) -> Biquaternion<T>) -> Self {
        let mut out = Self::zero();
        for m in &self.modes {
            out.push_mode(m.k.clone(), m.cos.map(&f), m.sin.map(&f));
        }
        out
    }

    pub fn lmul(&self, q: &Biquaternion<T>) -> Self {
        self.map(|x| q * x)
    }

    pub fn rmul(&self, q: &Biquaternion<T>) -> Self {
        self.map(|x| x * q)
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_real(&self, r: &T) -> Self {
        self.map(|x| x.scale_real(r))
    }

    pub fn mul_i(&self) -> Self {
        self.map(Biquaternion::mul_i)
    }

    pub fn conj(&self, flavor: Flavor) -> Self {
        self.map(|x| flavor.apply(x))
    }

    pub fn bar(&self) -> Self {
        self.map(Biquaternion::bar)
    }

    pub fn star(&self) -> Self {
        self.map(Biquaternion::star)
    }

    pub fn plus(&self) -> Self {
        self.map(Biquaternion::plus)
    }

    pub fn scalar_part(&self) -> Self {
        self.map(|x| Biquaternion::scalar(x.s.clone()))
    }

    pub fn vector_part(&self) -> Self {
        self.map(Biquaternion::vector_part)
    }

    pub fn deriv(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for m in &self.modes {
            let kj = &m.k[j];
            let cos = m.cos.deriv(j).add(&m.sin.map(|q| q.scale_real(kj)));
            let sin = m.sin.deriv(j).sub(&m.cos.map(|q| q.scale_real(kj)));
            out.push_mode(m.k.clone(), cos, sin);
        }
        out
    }

    /// `∂^a` for a multi-index.
    pub fn deriv_multi(&self, a: &Monomial) -> Self {
        let mut out = self.clone();
        for j in 0..4 {
            for _ in 0..a[j] {
                out = out.deriv(j);
            }
        }
        out
    }

    pub fn product(&self, other: &Self) -> Self {
        let half = T::half();
        let mut out = Self::zero();
        for a in &self.modes {
            for b in &other.modes {
                let pp = a.cos.mul(&b.cos);
                let qq = a.sin.mul(&b.sin);
                let qp = a.sin.mul(&b.cos);
                let pq = a.cos.mul(&b.sin);
                let h = |p: Poly<T>| p.map(|q| q.scale_real(&half));
                let ks: [T; 4] = core::array::from_fn(|i| a.k[i].clone() + b.k[i].clone());
                let kd: [T; 4] = core::array::from_fn(|i| a.k[i].clone() - b.k[i].clone());
                out.push_mode(ks, h(pp.sub(&qq)), h(qp.add(&pq)));
                out.push_mode(kd, h(pp.add(&qq)), h(qp.sub(&pq)));
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64; 4]) -> Biquaternion<f64> {
        let mut out = Biquaternion::zero();
        for m in &self.modes {
            let theta: f64 = (0..4).map(|j| m.k[j].to_f64() * x[j]).sum();
            out += &m.cos.eval(x).scale_real(&theta.cos());
            out += &m.sin.eval(x).scale_real(&theta.sin());
        }
        out
    }

    pub fn to_f64(&self) -> Field<f64> {
        let mut out = Field::zero();
        for m in &self.modes {
            out.push_mode(m.k.clone().map(|x| x.to_f64()), m.cos.map_into(), m.sin.map_into());
        }
        out
    }

    /// True when every coefficient is bireal.
    pub fn is_bireal(&self) -> bool {
        (&self.plus() - self).is_zero_within(0.0)
    }

    /// Zero test: exact on exact backends, `max_abs ≤ tol` otherwise.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        if T::EXACT {
            self.is_zero()
        } else {
            self.max_abs() <= tol
        }
    }
}

impl<T: Scalar> Poly<T> {
    fn map_into(&self) -> Poly<f64> {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.add_term(*m, q.to_f64());
        }
        out
    }
}

impl<T: Scalar> Add for &Field<T> {
    type Output = Field<T>;
    fn add(self, rhs: &Field<T>) -> Field<T> {
        let mut out = self.clone();
        for m in &rhs.modes {
            out.push_mode(m.k.clone(), m.cos.clone(), m.sin.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Field<T> {
    type Output = Field<T>;
    fn sub(self, rhs: &Field<T>) -> Field<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &Field<T> {
    type Output = Field<T>;
    fn neg(self) -> Field<T> {
        self.map(|q| -q)
    }
}

impl<T: Scalar> Mul for &Field<T> {
    type Output = Field<T>;
    fn mul(self, rhs: &Field<T>) -> Field<T> {
        self.product(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Field<T> {
            type Output = Field<T>;
            fn $m(self, rhs: Field<T>) -> Field<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Field<T>> for Field<T> {
            type Output = Field<T>;
            fn $m(self, rhs: &Field<T>) -> Field<T> {
                (&self).$m(rhs)
            }
        }
        impl<T: Scalar> $tr<Field<T>> for &Field<T> {
            type Output = Field<T>;
            fn $m(self, rhs: Field<T>) -> Field<T> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Field<T> {
    type Output = Field<T>;
    fn neg(self) -> Field<T> {
        -&self
    }
}

/// Sum of fields.
pub fn sum<T: Scalar>(fields: impl IntoIterator<Item = Field<T>>) -> Field<T> {
    fields.into_iter().fold(Field::zero(), |acc, f| &acc + &f)
}
