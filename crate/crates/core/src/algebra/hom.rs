use super::presented::PresentedAlgebra;
use super::structure::{all_vectors, count_vectors, StructureAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Matrix};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Either representation of a commutative algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Algebra {
    Presented(PresentedAlgebra),
    Structure(StructureAlgebra),
}

/// An element of an [`Algebra`]: a polynomial for presentations, a
/// coordinate vector for structure algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Poly(Polynomial),
    Vector(Vec<Scalar>),
}

impl Algebra {
    pub fn generator_count(&self) -> usize {
        match self {
            Algebra::Presented(b) => b.nvars(),
            Algebra::Structure(s) => s.dim(),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Algebra::Presented(b) => Element::Poly(b.one()),
            Algebra::Structure(s) => Element::Vector(s.one()),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Algebra::Presented(b) => Element::Poly(b.zero()),
            Algebra::Structure(s) => Element::Vector(s.zero()),
        }
    }

    pub fn generator(&self, i: usize) -> Element {
        match self {
            Algebra::Presented(b) => Element::Poly(b.var(i)),
            Algebra::Structure(s) => Element::Vector(s.basis(i)),
        }
    }

    fn fits(&self, e: &Element) -> bool {
        match (self, e) {
            (Algebra::Presented(b), Element::Poly(p)) => p.nvars() == b.nvars() && p.field() == b.field(),
            (Algebra::Structure(s), Element::Vector(v)) => v.len() == s.dim() && v.iter().all(|c| s.field().contains(c)),
            _ => false,
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Poly(p), Element::Poly(q)) => Element::Poly(p.add(q)),
            (Element::Vector(u), Element::Vector(v)) => Element::Vector(crate::matrix::vec_add(u, v)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Algebra::Presented(alg), Element::Poly(p), Element::Poly(q)) => Element::Poly(alg.normal_form(&p.mul(q))),
            (Algebra::Structure(s), Element::Vector(u), Element::Vector(v)) => Element::Vector(s.mul(u, v)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn scale(&self, a: &Element, c: &Scalar) -> Element {
        match a {
            Element::Poly(p) => Element::Poly(p.scale(c)),
            Element::Vector(v) => Element::Vector(crate::matrix::vec_scale(v, c)),
        }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        match (self, a) {
            (Algebra::Presented(b), Element::Poly(p)) => b.is_zero(p),
            (Algebra::Structure(_), Element::Vector(v)) => is_zero_vec(v),
            _ => false,
        }
    }

    pub fn equal(&self, a: &Element, b: &Element) -> bool {
        match (a, b) {
            (Element::Poly(p), Element::Poly(q)) => self.is_zero(&Element::Poly(p.sub(q))),
            (Element::Vector(u), Element::Vector(v)) => u == v,
            _ => false,
        }
    }

    /// Evaluates a polynomial on the given images.
    pub fn evaluate(&self, p: &Polynomial, images: &[Element]) -> Element {
        p.evaluate(images, self.one(), self.zero(), |a, b| self.add(a, b), |a, b| self.mul(a, b), |a, c| self.scale(a, c))
    }

    pub fn violations(&self) -> Vec<String> {
        match self {
            Algebra::Presented(b) => b.violations(),
            Algebra::Structure(s) => s.violations(),
        }
    }
}

/// A unital algebra homomorphism, given by the images of the source
/// generators (flattened variables, or basis vectors for structure algebras).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraHom {
    pub source: Algebra,
    pub target: Algebra,
    pub images: Vec<Element>,
}

impl AlgebraHom {
    pub fn new(source: Algebra, target: Algebra, images: Vec<Element>) -> Result<AlgebraHom> {
        let h = AlgebraHom { source, target, images };
        let v = h.violations();
        if v.is_empty() {
            Ok(h)
        } else {
            Err(Error::invalid(v.join("; ")))
        }
    }

    pub fn identity(a: &Algebra) -> AlgebraHom {
        let images = (0..a.generator_count()).map(|i| a.generator(i)).collect();
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    /// Image of an element of the source.
    pub fn apply(&self, e: &Element) -> Element {
        match e {
            Element::Poly(p) => self.target.evaluate(p, &self.images),
            Element::Vector(v) => {
                let mut acc = self.target.zero();
                for (c, img) in v.iter().zip(&self.images) {
                    if !c.is_zero() {
                        acc = self.target.add(&acc, &self.target.scale(img, c));
                    }
                }
                acc
            }
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.images.len() != self.source.generator_count() {
            return vec![format!("expected {} generator images, found {}", self.source.generator_count(), self.images.len())];
        }
        if let Some(i) = self.images.iter().position(|e| !self.target.fits(e)) {
            return vec![format!("image {i} is not an element of the target")];
        }
        match &self.source {
            Algebra::Presented(b) => {
                for (k, rel) in b.all_relations().iter().enumerate() {
                    if !self.target.is_zero(&self.target.evaluate(rel, &self.images)) {
                        out.push(format!("relation {k} ({}) does not map to zero", b.format(rel)));
                    }
                }
                if let Algebra::Presented(c) = &self.target {
                    if c.n_base() == b.n_base() && c.base_vars() == b.base_vars() {
                        for i in 0..b.n_base() {
                            if !self.target.equal(&self.images[i], &Element::Poly(c.var(i))) {
                                out.push(format!("base generator {} is not fixed", b.base_vars()[i]));
                            }
                        }
                    }
                }
            }
            Algebra::Structure(s) => {
                if !self.target.equal(&self.images[0], &self.target.one()) {
                    out.push("unit does not map to the unit".into());
                }
                for i in 0..s.dim() {
                    for j in i..s.dim() {
                        let lhs = self.apply(&Element::Vector(s.constant(i, j).to_vec()));
                        let rhs = self.target.mul(&self.images[i], &self.images[j]);
                        if !self.target.equal(&lhs, &rhs) {
                            out.push(format!("not multiplicative on (e{i}, e{j})"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `f ∘ g`: first `g`, then `f`.
pub fn compose(f: &AlgebraHom, g: &AlgebraHom) -> Result<AlgebraHom> {
    if g.target != f.source {
        return Err(Error::invalid("target of the first map is not the source of the second"));
    }
    let images = g.images.iter().map(|e| f.apply(e)).collect();
    AlgebraHom::new(g.source.clone(), f.target.clone(), images)
}

/// Greedy algebra generators of `b` with a word basis: returns generator
/// indices and, for each basis word, its exponent vector over those
/// generators, plus the inverse of the word matrix.
fn word_basis(b: &StructureAlgebra) -> (Vec<usize>, Vec<Vec<u32>>, Matrix) {
    let f = b.field();
    let n = b.dim();
    let mut gens: Vec<usize> = Vec::new();
    loop {
        let (words, vecs) = closure(b, &gens);
        let span = Matrix::from_columns(f, n, &vecs);
        if vecs.len() == n {
            let inv = span.inverse().expect("words form a basis");
            return (gens, words, inv);
        }
        let next = (1..n).find(|&i| span.solve_affine(&b.basis(i)).is_none()).expect("span is proper");
        gens.push(next);
    }
}

/// Independent words in the generators, found breadth first.
fn closure(b: &StructureAlgebra, gens: &[usize]) -> (Vec<Vec<u32>>, Vec<Vec<Scalar>>) {
    let f = b.field();
    let n = b.dim();
    let mut words = vec![vec![0u32; gens.len()]];
    let mut vecs = vec![b.one()];
    let mut frontier = 0;
    while frontier < words.len() {
        for (g, &gi) in gens.iter().enumerate() {
            let v = b.mul(&vecs[frontier], &b.basis(gi));
            let span = Matrix::from_columns(f, n, &vecs);
            if span.solve_affine(&v).is_none() {
                let mut w = words[frontier].clone();
                w[g] += 1;
                words.push(w);
                vecs.push(v);
            }
        }
        frontier += 1;
    }
    (words, vecs)
}

/// All unital homomorphisms `B → C` between finite structure algebras over
/// a prime field, in candidate order.
pub fn hom_enumerate(b: &StructureAlgebra, c: &StructureAlgebra, budget: u64) -> Result<Vec<AlgebraHom>> {
    let f = c.field();
    if f.order().is_none() || b.field() != f {
        return Err(Error::invalid("enumeration needs both algebras over the same prime field"));
    }
    let (gens, words, inv) = word_basis(b);
    let needed = count_vectors(f, c.dim()).saturating_pow(gens.len() as u32);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let candidates: Vec<Vec<Scalar>> = all_vectors(f, c.dim()).collect();
    let mut out = Vec::new();
    let k = gens.len();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<&Vec<Scalar>> = idx.iter().map(|&i| &candidates[i]).collect();
        let word_images: Vec<Vec<Scalar>> = words
            .iter()
            .map(|w| {
                let mut acc = c.one();
                for (g, &e) in w.iter().enumerate() {
                    acc = c.mul(&acc, &c.pow(images[g], e));
                }
                acc
            })
            .collect();
        // linear map L = (word images) * inv, column i is L(e_i)
        let wim = Matrix::from_columns(f, c.dim(), &word_images);
        let l = wim.mul(&inv);
        let hom = AlgebraHom {
            source: Algebra::Structure(b.clone()),
            target: Algebra::Structure(c.clone()),
            images: l.columns().into_iter().map(Element::Vector).collect(),
        };
        if hom.violations().is_empty() {
            out.push(hom);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < candidates.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The structure map of a truncation as a homomorphism from the presentation.
pub fn truncation_map(b: &PresentedAlgebra, t: &super::Truncation) -> AlgebraHom {
    let images = (0..b.nvars()).map(|i| Element::Vector(t.coordinates(&b.var(i)))).collect();
    AlgebraHom {
        source: Algebra::Presented(b.clone()),
        target: Algebra::Structure(t.algebra.clone()),
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{finite_structure, truncate};
    use crate::scalar::Field;

    fn structure(f: Field, vars: &[&str], rels: &[&str]) -> StructureAlgebra {
        finite_structure(&PresentedAlgebra::over_field(f, vars, rels).unwrap()).unwrap().algebra
    }

    #[test]
    fn homs_from_dual_numbers() {
        let f = Field::Prime(2);
        let b = structure(f, &["x"], &["x^2"]);
        assert_eq!(hom_enumerate(&b, &StructureAlgebra::ground(f), 1 << 20).unwrap().len(), 1);
        let c = structure(f, &["t"], &["t^2"]);
        let homs = hom_enumerate(&b, &c, 1 << 20).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(hom_enumerate(&StructureAlgebra::ground(f), &c, 1 << 20).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::Prime(3);
        let b = structure(f, &["x", "y"], &["x^2", "y^2"]);
        let c = structure(f, &["t"], &["t^5"]);
        assert!(matches!(hom_enumerate(&b, &c, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn composition_by_substitution() {
        let f = Field::Rational;
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^3"]).unwrap();
        let c = PresentedAlgebra::over_field(f, &["t"], &["t^6"]).unwrap();
        let d = PresentedAlgebra::over_field(f, &["u"], &["u^12"]).unwrap();
        let g = AlgebraHom::new(Algebra::Presented(b.clone()), Algebra::Presented(c.clone()), vec![Element::Poly(c.parse_element("t^2").unwrap())]).unwrap();
        let h = AlgebraHom::new(Algebra::Presented(c.clone()), Algebra::Presented(d.clone()), vec![Element::Poly(d.parse_element("u").unwrap())]);
        assert!(h.is_err());
        let d2 = PresentedAlgebra::over_field(f, &["u"], &["u^6"]).unwrap();
        let h = AlgebraHom::new(Algebra::Presented(c.clone()), Algebra::Presented(d2.clone()), vec![Element::Poly(d2.parse_element("u").unwrap())]).unwrap();
        let hg = compose(&h, &g).unwrap();
        assert!(hg.target.equal(&hg.images[0], &Element::Poly(d2.parse_element("u^2").unwrap())));
        let id = AlgebraHom::identity(&Algebra::Presented(c));
        assert_eq!(compose(&id, &g).unwrap().images.len(), 1);
        assert!(compose(&g, &h).is_err());
    }

    #[test]
    fn truncation_map_is_valid_and_surjective() {
        let b = PresentedAlgebra::over_field(Field::Prime(3), &["x", "y"], &["x*y", "x^3 - y^2"]).unwrap();
        let t = truncate(&b, 3).unwrap();
        let h = truncation_map(&b, &t);
        assert!(h.violations().is_empty());
        for (i, m) in t.monomials.iter().enumerate() {
            let p = Polynomial::term(b.field(), b.field().one(), m.clone());
            assert_eq!(h.apply(&Element::Poly(p)), Element::Vector(t.algebra.basis(i)));
        }
    }
}
