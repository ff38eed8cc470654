//! Differential operators `X ↦ Σ L(x) · c(∂^α X) · R` with field coefficients `L`,
//! constant right factors `R` and an optional complex conjugation `c`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::biquaternion::Biquaternion;
use crate::field::{Field, Monomial};
use crate::scalar::{Scalar, C};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<T: Scalar> {
    pub left: Field<T>,
    pub deriv: Monomial,
    pub conj: bool,
    pub right: Biquaternion<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<T: Scalar> {
    pub terms: Vec<Term<T>>,
}

impl<T: Scalar> Default for DiffOp<T> {
    fn default() -> Self {
        DiffOp { terms: Vec::new() }
    }
}

fn binom(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

fn cj<T: Scalar>(c: bool, q: &Biquaternion<T>) -> Biquaternion<T> {
    if c {
        q.star()
    } else {
        q.clone()
    }
}

impl<T: Scalar> DiffOp<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(left: Field<T>, deriv: Monomial, conj: bool, right: Biquaternion<T>) -> Self {
        DiffOp { terms: alloc::vec![Term { left, deriv, conj, right }] }
    }

    pub fn identity() -> Self {
        Self::left(&Biquaternion::one())
    }

    /// `q[·]`.
    pub fn left(q: &Biquaternion<T>) -> Self {
        Self::term(Field::constant(q.clone()), [0; 4], false, Biquaternion::one())
    }

    /// `F(x)[·]`.
    pub fn left_field(f: &Field<T>) -> Self {
        Self::term(f.clone(), [0; 4], false, Biquaternion::one())
    }

    /// `[·]q`.
    pub fn right(q: &Biquaternion<T>) -> Self {
        Self::term(Field::constant(Biquaternion::one()), [0; 4], false, q.clone())
    }

    /// `[·]*`.
    pub fn star() -> Self {
        Self::term(Field::constant(Biquaternion::one()), [0; 4], true, Biquaternion::one())
    }

    /// `∂_j`.
    pub fn deriv(j: usize) -> Self {
        let mut m = [0; 4];
        m[j] = 1;
        Self::term(Field::constant(Biquaternion::one()), m, false, Biquaternion::one())
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.deriv.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn apply(&self, x: &Field<T>) -> Field<T> {
        let mut cache: BTreeMap<(Monomial, bool), Field<T>> = BTreeMap::new();
        let mut out = Field::zero();
        for t in &self.terms {
            let y = cache
                .entry((t.deriv, t.conj))
                .or_insert_with(|| {
                    let d = x.deriv_multi(&t.deriv);
                    if t.conj {
                        d.star()
                    } else {
                        d
                    }
                })
                .rmul(&t.right);
            out = &out + &(&t.left * &y);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DiffOp { terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::new(-T::one(), T::zero()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C<T>) -> Self {
        DiffOp { terms: self.terms.iter().map(|t| Term { left: t.left.scale(c), ..t.clone() }).collect() }
    }

    pub fn scale_real(&self, r: &T) -> Self {
        self.scale(&C::new(r.clone(), T::zero()))
    }

    /// `self ⊙ other`, i.e. `X ↦ self(other(X))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let al = a.deriv;
                for g0 in 0..=al[0] {
                    for g1 in 0..=al[1] {
                        for g2 in 0..=al[2] {
                            for g3 in 0..=al[3] {
                                let g = [g0, g1, g2, g3];
                                let c: i64 = (0..4).map(|j| binom(al[j], g[j])).product();
                                let dl = b.left.deriv_multi(&g);
                                if dl.is_zero() {
                                    continue;
                                }
                                let dl = if a.conj { dl.star() } else { dl };
                                let left = (&a.left * &dl).scale_real(&T::from_i64(c));
                                let deriv = core::array::from_fn(|j| al[j] - g[j] + b.deriv[j]);
                                let right = &cj(a.conj, &b.right) * &a.right;
                                terms.push(Term { left, deriv, conj: a.conj ^ b.conj, right });
                            }
                        }
                    }
                }
            }
        }
        DiffOp { terms }
    }

    /// Unique normal form: right factors expanded on `{1, e1, e2, e3}` with their
    /// complex coefficients moved into the left field.
    pub fn canonical(&self) -> BTreeMap<(Monomial, bool, usize), Field<T>> {
        let mut map: BTreeMap<(Monomial, bool, usize), Field<T>> = BTreeMap::new();
        for t in &self.terms {
            let coeffs = [&t.right.s, &t.right.v[0], &t.right.v[1], &t.right.v[2]];
            for (b, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let f = t.left.scale(c);
                let e = map.entry((t.deriv, t.conj, b)).or_default();
                *e = &*e + &f;
            }
        }
        map.retain(|_, f| !f.is_zero());
        map
    }

    /// Operator equality via the normal form; exact on exact backends.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).canonical().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_empty()
    }

    /// Largest coefficient of the normal form of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).canonical().values().map(Field::max_abs).fold(0.0, f64::max)
    }
}

/// Operators on four-tuples of fields, `out_μ = Σ_λ op[μ][λ](Ψ_λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RsOp<T: Scalar> {
    pub entries: [[DiffOp<T>; 4]; 4],
}

/// Row of operators mapping a four-tuple to a single field, `Σ_λ op[λ](Ψ_λ)`.
pub type RsRow<T> = [DiffOp<T>; 4];

impl<T: Scalar> RsOp<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> DiffOp<T>) -> Self {
        RsOp { entries: core::array::from_fn(|mu| core::array::from_fn(|la| f(mu, la))) }
    }

    pub fn apply(&self, psi: &[Field<T>; 4]) -> [Field<T>; 4] {
        core::array::from_fn(|mu| apply_row(&self.entries[mu], psi))
    }

    pub fn row(&self, mu: usize) -> &RsRow<T> {
        &self.entries[mu]
    }
}

pub fn apply_row<T: Scalar>(row: &RsRow<T>, psi: &[Field<T>; 4]) -> Field<T> {
    (0..4).fold(Field::zero(), |acc, la| &acc + &row[la].apply(&psi[la]))
}

/// `Σ_μ ops[μ] ⊙ op[μ][·]`: contracts the output index with a list of operators.
pub fn contract<T: Scalar>(ops: &[DiffOp<T>; 4], op: &RsOp<T>) -> RsRow<T> {
    core::array::from_fn(|la| (0..4).fold(DiffOp::zero(), |acc, mu| acc.add(&ops[mu].compose(&op.entries[mu][la]))))
}

pub fn rows_equal<T: Scalar>(a: &RsRow<T>, b: &RsRow<T>) -> bool {
    (0..4).all(|la| a[la].equals(&b[la]))
}

pub fn rows_distance<T: Scalar>(a: &RsRow<T>, b: &RsRow<T>) -> f64 {
    (0..4).map(|la| a[la].distance(&b[la])).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Poly;
    use crate::scalar::Rational;

    type Q = Biquaternion<Rational>;

    fn sample() -> Field<Rational> {
        let mut p = Poly::zero();
        p.add_term([2, 1, 0, 0], Q::from_ints([1, 2, 0, -1, 0, 1, 1, 0]));
        p.add_term([0, 0, 1, 2], Q::from_ints([0, 1, -2, 0, 3, 0, 0, 1]));
        p.add_term([1, 0, 0, 1], Q::from_ints([2, 0, 0, 0, 0, 0, -1, 1]));
        Field::from_poly(p)
    }

    #[test]
    fn compose_matches_nested_application() {
        let x0 = Field::coordinate(0);
        let c = Q::from_ints([0, 1, 0, 2, 1, 0, 0, 0]);
        let a = DiffOp::left_field(&x0.lmul(&c)).compose(&DiffOp::deriv(1)).add(&DiffOp::star().compose(&DiffOp::right(&Q::e(2))));
        let b = DiffOp::deriv(0).compose(&DiffOp::left_field(&(&x0 * &x0))).add(&DiffOp::left(&Q::e(3)).compose(&DiffOp::star()));
        let f = sample();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)));
        assert!(ab.equals(&ab.add(&DiffOp::zero())));
        assert!(!ab.equals(&b.compose(&a)));
    }

    #[test]
    fn canonical_form_sees_through_factorization() {
        let i = Q::i();
        let e1 = Q::e(1);
        // i·X·e1 written two ways.
        let a = DiffOp::left(&i).compose(&DiffOp::right(&e1));
        let b = DiffOp::right(&e1.mul_i());
        assert!(a.equals(&b));
        // ∂0∂1 = ∂1∂0
        assert!(DiffOp::<Rational>::deriv(0).compose(&DiffOp::deriv(1)).equals(&DiffOp::deriv(1).compose(&DiffOp::deriv(0))));
    }
}
