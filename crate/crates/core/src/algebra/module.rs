use super::presented::PresentedAlgebra;
use super::structure::StructureAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

/// A module that is finite-dimensional over the ground field, given by one
/// action matrix per algebra generator.
///
/// Over a [`PresentedAlgebra`] the generators are the flattened variables
/// (base first); over a [`StructureAlgebra`] they are the basis vectors
/// `e_0 .. e_{n-1}`, with `e_0` acting as the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    field: Field,
    labels: Vec<String>,
    actions: Vec<Matrix>,
}

impl FiniteModule {
    pub fn new(field: Field, labels: Vec<String>, actions: Vec<Matrix>) -> Result<FiniteModule> {
        let d = labels.len();
        if actions.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != field) {
            return Err(Error::invalid("action matrices must be square of the module dimension"));
        }
        Ok(FiniteModule { field, labels, actions })
    }

    /// The residue field `k = B/(all generators)`: every generator acts as zero.
    pub fn residue_field(b: &PresentedAlgebra) -> FiniteModule {
        FiniteModule {
            field: b.field(),
            labels: vec!["1".into()],
            actions: vec![Matrix::zeros(b.field(), 1, 1); b.nvars()],
        }
    }

    /// The zero module.
    pub fn zero(field: Field, generators: usize) -> FiniteModule {
        FiniteModule {
            field,
            labels: vec![],
            actions: vec![Matrix::zeros(field, 0, 0); generators],
        }
    }

    /// `B/(x)^d` as a module over `B`, through its truncation.
    pub fn regular(b: &PresentedAlgebra, trunc: &super::Truncation) -> FiniteModule {
        let actions = (0..b.nvars())
            .map(|i| trunc.algebra.mult_matrix(&trunc.coordinates(&b.var(i))))
            .collect();
        FiniteModule {
            field: b.field(),
            labels: trunc.algebra.labels().to_vec(),
            actions,
        }
    }

    /// A structure algebra as a module over itself.
    pub fn regular_structure(s: &StructureAlgebra) -> FiniteModule {
        let actions = (0..s.dim()).map(|i| s.mult_matrix(&s.basis(i))).collect();
        FiniteModule {
            field: s.field(),
            labels: s.labels().to_vec(),
            actions,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    /// Action matrix of a polynomial in the generators.
    pub fn act(&self, p: &Polynomial) -> Matrix {
        let d = self.dim();
        let f = self.field;
        p.evaluate(
            &self.actions,
            Matrix::identity(f, d),
            Matrix::zeros(f, d, d),
            |a, b| a.add(b),
            |a, b| a.mul(b),
            |a, c| a.scale(c),
        )
    }

    pub fn act_on(&self, p: &Polynomial, v: &[Scalar]) -> Vec<Scalar> {
        self.act(p).mul_vec(v)
    }

    /// Action of a structure-algebra element `Σ a_i e_i`.
    pub fn act_element(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for (c, act) in a.iter().zip(&self.actions) {
            if !c.is_zero() {
                m = m.add(&act.scale(c));
            }
        }
        m
    }

    fn commuting_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.actions.len() {
            for j in i + 1..self.actions.len() {
                if self.actions[i].mul(&self.actions[j]) != self.actions[j].mul(&self.actions[i]) {
                    out.push(format!("action matrices {i} and {j} do not commute"));
                }
            }
        }
        out
    }

    pub fn violations_over(&self, b: &PresentedAlgebra) -> Vec<String> {
        if self.actions.len() != b.nvars() {
            return vec![format!("expected {} action matrices, found {}", b.nvars(), self.actions.len())];
        }
        let mut out = self.commuting_violations();
        let names = b.all_vars();
        for (k, rel) in b.all_relations().iter().enumerate() {
            if !self.act(rel).is_zero() {
                out.push(format!(
                    "relation {} ({}) does not act as zero",
                    k,
                    crate::poly::parse::format_polynomial(rel, &names)
                ));
            }
        }
        out
    }

    pub fn violations_over_structure(&self, s: &StructureAlgebra) -> Vec<String> {
        if self.actions.len() != s.dim() {
            return vec![format!("expected {} action matrices, found {}", s.dim(), self.actions.len())];
        }
        let mut out = self.commuting_violations();
        if self.actions[0] != Matrix::identity(self.field, self.dim()) {
            out.push("the unit does not act as the identity".into());
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                if self.actions[i].mul(&self.actions[j]) != self.act_element(s.constant(i, j)) {
                    out.push(format!("action is not multiplicative on (e{i}, e{j})"));
                }
            }
        }
        out
    }

    /// Restriction of scalars along an algebra map: generator `i` of the new
    /// algebra acts through `images[i]`.
    pub fn pulled_back(&self, actions: Vec<Matrix>) -> FiniteModule {
        FiniteModule {
            field: self.field,
            labels: self.labels.clone(),
            actions,
        }
    }

    /// The same module with its basis permuted (`perm[i]` is the new position of basis vector `i`).
    pub fn permuted(&self, perm: &[usize]) -> FiniteModule {
        let d = self.dim();
        let mut p = Matrix::zeros(self.field, d, d);
        for (i, &j) in perm.iter().enumerate() {
            p.set(j, i, self.field.one());
        }
        let pt = p.transpose();
        let actions = self.actions.iter().map(|a| p.mul(a).mul(&pt)).collect();
        let mut labels = vec![String::new(); d];
        for (i, &j) in perm.iter().enumerate() {
            labels[j] = self.labels[i].clone();
        }
        FiniteModule {
            field: self.field,
            labels,
            actions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncate;

    #[test]
    fn residue_field_of_dual_numbers_is_valid() {
        let b = PresentedAlgebra::over_field(Field::Prime(2), &["x"], &["x^2"]).unwrap();
        assert!(FiniteModule::residue_field(&b).violations_over(&b).is_empty());
    }

    #[test]
    fn non_square_zero_action_is_reported() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let x = Matrix::from_i64(f, &[vec![1, 0], vec![0, 0]]);
        let j = FiniteModule::new(f, vec!["a".into(), "b".into()], vec![x]).unwrap();
        let v = j.violations_over(&b);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("relation"));
    }

    #[test]
    fn regular_module_of_truncation_is_valid() {
        let f = Field::Rational;
        let b = PresentedAlgebra::over_field(f, &["x", "y"], &["x*y"]).unwrap();
        let t = truncate(&b, 3).unwrap();
        let j = FiniteModule::regular(&b, &t);
        assert_eq!(j.dim(), 5);
        assert!(j.violations_over(&b).is_empty());
        assert!(FiniteModule::regular_structure(&t.algebra).violations_over_structure(&t.algebra).is_empty());
    }

    #[test]
    fn representative_independence_of_action() {
        // x^3 and x^3 + (x^2 + y)*x - x*(x^2+y) represent the same element
        let f = Field::Prime(3);
        let b = PresentedAlgebra::over_field(f, &["x", "y"], &["x^2 + y", "y^2"]).unwrap();
        let t = truncate(&b, 6).unwrap();
        let j = FiniteModule::regular(&b, &t);
        let p1 = b.parse_element("x^3").unwrap();
        let p2 = b.parse_element("-x*y + (x^2 + y)*y").unwrap();
        assert_eq!(b.normal_form(&p1), b.normal_form(&p2));
        assert_eq!(j.act(&p1), j.act(&p2));
    }
}
