//! Multivariate polynomials over a ground [`Field`], monomial orders,
//! Gröbner bases of ideals and submodules of free modules, and syzygies.
//!
//! Variables are indexed `0..nvars`; names only exist in [`parse`].

mod groebner;
pub mod parse;
pub mod syzygy;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Field, Scalar};

pub use groebner::{buchberger, ideal_member, tracked_groebner, GroebnerBasis, Membership, TrackedBasis};
pub use syzygy::{syzygies_modulo, syzygy_basis, SyzygyMatrix};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GradedReverseLex,
    Lex,
}

/// A monomial order: a kind plus a variable priority permutation
/// (`priority[0]` is the most significant variable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::GradedReverseLex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    /// Sort key: larger keys are larger monomials.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        match self.kind {
            OrderKind::GradedReverseLex => {
                let mut k = Vec::with_capacity(e.len() + 1);
                k.push(m.degree() as i64);
                k.extend(self.priority.iter().rev().map(|&i| -(e[i] as i64)));
                k
            }
            OrderKind::Lex => self.priority.iter().map(|&i| e[i] as i64).collect(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::GradedReverseLex => a.degree().cmp(&b.degree()).then_with(|| {
                for &i in self.priority.iter().rev() {
                    let (x, y) = (a.exponents()[i], b.exponents()[i]);
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }),
            OrderKind::Lex => {
                for &i in &self.priority {
                    let (x, y) = (a.exponents()[i], b.exponents()[i]);
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Position-over-term ties: a lower component index is larger.
    pub fn cmp_terms(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        self.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }
}

/// A polynomial as a sparse map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Polynomial {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Polynomial {
        Polynomial::term(field, c, Monomial::one(nvars))
    }

    pub fn one(field: Field, nvars: usize) -> Polynomial {
        Polynomial::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Polynomial {
        Polynomial::term(field, field.one(), Monomial::var(nvars, i))
    }

    pub fn term(field: Field, c: Scalar, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(field, m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial(ex), c * &self.field.from_i64(e as i64));
        }
        out
    }

    /// Whether any term involves variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[i] > 0)
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map_or(0, Polynomial::nvars);
        let mut out = Polynomial::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field, target_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Reinterprets the polynomial in a ring with more variables, mapping
    /// variable `i` to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[positions[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Evaluates the polynomial in any commutative structure given closures
    /// for the ring operations.
    pub fn evaluate<T: Clone>(
        &self,
        images: &[T],
        one: T,
        zero: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &Scalar) -> T,
    ) -> T {
        let mut powers: Vec<Vec<T>> = images.iter().map(|x| vec![one.clone(), x.clone()]).collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                t = mul(&t, &powers[i][e as usize]);
            }
            acc = add(&acc, &scale(&t, c));
        }
        acc
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", parse::format_polynomial(self, &names))
    }
}

/// Vectors of polynomials: elements of a free module of finite rank.
pub type PolyVector = Vec<Polynomial>;

pub fn zero_vector(field: Field, nvars: usize, rank: usize) -> PolyVector {
    vec![Polynomial::zero(field, nvars); rank]
}

pub fn unit_vector(field: Field, nvars: usize, rank: usize, i: usize) -> PolyVector {
    let mut v = zero_vector(field, nvars, rank);
    v[i] = Polynomial::one(field, nvars);
    v
}

pub fn vector_is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

pub fn vector_add(a: &[Polynomial], b: &[Polynomial]) -> PolyVector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vector_sub(a: &[Polynomial], b: &[Polynomial]) -> PolyVector {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vector_mul(a: &[Polynomial], p: &Polynomial) -> PolyVector {
    a.iter().map(|x| x.mul(p)).collect()
}

pub fn vector_mul_term(a: &[Polynomial], c: &Scalar, m: &Monomial) -> PolyVector {
    a.iter().map(|x| x.mul_term(c, m)).collect()
}

/// `Σ coefficients[i] * vectors[i]`.
pub fn combine(coefficients: &[Polynomial], vectors: &[PolyVector], field: Field, nvars: usize, rank: usize) -> PolyVector {
    let mut acc = zero_vector(field, nvars, rank);
    for (c, v) in coefficients.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        acc = vector_add(&acc, &vector_mul(v, c));
    }
    acc
}

/// `Σ coefficients[i] * polys[i]`.
pub fn dot(coefficients: &[Polynomial], polys: &[Polynomial]) -> Polynomial {
    let field = coefficients.first().or(polys.first()).map(Polynomial::field).expect("nonempty");
    let nvars = coefficients.first().or(polys.first()).map(Polynomial::nvars).unwrap();
    let mut acc = Polynomial::zero(field, nvars);
    for (c, p) in coefficients.iter().zip(polys) {
        acc = acc.add(&c.mul(p));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(Monomial::from_exponents)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::grevlex(3)),
            Just(MonomialOrder::lex(3)),
            Just(MonomialOrder { kind: OrderKind::GradedReverseLex, priority: vec![2, 0, 1] }),
            Just(MonomialOrder { kind: OrderKind::Lex, priority: vec![1, 2, 0] }),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_admissible(o in order(), a in mono(), b in mono(), c in mono()) {
            let one = Monomial::one(3);
            prop_assert_ne!(o.cmp(&one, &a), Ordering::Greater);
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(o.cmp(&a, &b), o.key(&a).cmp(&o.key(&b)));
        }
    }

    #[test]
    fn cancellation_leaves_no_terms() {
        let f = Field::Rational;
        let x = Polynomial::var(f, 2, 0);
        let y = Polynomial::var(f, 2, 1);
        let p = x.mul(&y).add(&x);
        assert!(p.add(&p.neg()).is_zero());
        assert_eq!(p.add(&p.neg()).len(), 0);
    }

    #[test]
    fn derivative_in_characteristic_two() {
        let f = Field::Prime(2);
        let x = Polynomial::var(f, 1, 0);
        assert!(x.pow(2).derivative(0).is_zero());
        assert_eq!(x.pow(3).derivative(0), x.pow(2));
    }

    #[test]
    fn grevlex_prefers_fewer_high_priority_tail() {
        let o = MonomialOrder::grevlex(3);
        let xz = Monomial::from_exponents(vec![1, 0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2, 0]);
        assert_eq!(o.cmp(&y2, &xz), Ordering::Greater);
        let lex = MonomialOrder::lex(3);
        assert_eq!(lex.cmp(&y2, &xz), Ordering::Less);
    }
}
