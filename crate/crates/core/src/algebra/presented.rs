use std::fmt;

use crate::error::{Error, Result};
use crate::poly::parse::{format_polynomial, parse_with_names};
use crate::poly::{GroebnerBasis, Monomial, MonomialOrder, Polynomial};
use crate::scalar::Field;

/// `B = A[x_1..x_n]/(f_1..f_m)` with `A = k[y_1..y_r]/(g_1..g_s)`.
///
/// Everything lives in the flattened ring `k[y, x]`: base variables come
/// first, relative generators after them.
#[derive(Clone)]
pub struct PresentedAlgebra {
    field: Field,
    base_vars: Vec<String>,
    base_relations: Vec<Polynomial>,
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    order: MonomialOrder,
    gb: GroebnerBasis,
    base_gb: GroebnerBasis,
}

impl PresentedAlgebra {
    pub fn new(
        field: Field,
        base_vars: Vec<String>,
        base_relations: Vec<Polynomial>,
        vars: Vec<String>,
        relations: Vec<Polynomial>,
    ) -> Result<PresentedAlgebra> {
        let n = base_vars.len() + vars.len();
        let mut names: Vec<&String> = base_vars.iter().chain(&vars).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("variable names must be distinct"));
        }
        for p in base_relations.iter().chain(&relations) {
            if p.nvars() != n || p.field() != field {
                return Err(Error::invalid("relation lives in the wrong ring"));
            }
        }
        let order = MonomialOrder::grevlex(n);
        let mut all = base_relations.clone();
        all.extend(relations.iter().cloned());
        let gb = GroebnerBasis::ideal(field, n, &all, &order);
        let base_gb = GroebnerBasis::ideal(field, n, &base_relations, &order);
        Ok(PresentedAlgebra {
            field,
            base_vars,
            base_relations,
            vars,
            relations,
            order,
            gb,
            base_gb,
        })
    }

    /// Parses relation strings; base relations may only use base variables.
    pub fn parse(field: Field, base_vars: &[&str], base_relations: &[&str], vars: &[&str], relations: &[&str]) -> Result<PresentedAlgebra> {
        let bv: Vec<String> = base_vars.iter().map(|s| s.to_string()).collect();
        let rv: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let all: Vec<String> = bv.iter().chain(&rv).cloned().collect();
        let br = base_relations.iter().map(|s| parse_with_names(s, field, &bv).map(|p| p.embed(all.len(), &(0..bv.len()).collect::<Vec<_>>()))).collect::<Result<Vec<_>>>()?;
        let rr = relations.iter().map(|s| parse_with_names(s, field, &all)).collect::<Result<Vec<_>>>()?;
        PresentedAlgebra::new(field, bv, br, rv, rr)
    }

    /// `k[x_1..x_n]/(relations)` over the ground field.
    pub fn over_field(field: Field, vars: &[&str], relations: &[&str]) -> Result<PresentedAlgebra> {
        PresentedAlgebra::parse(field, &[], &[], vars, relations)
    }

    /// The free algebra `A[x_1..x_n]` over the ground field.
    pub fn free(field: Field, n: usize) -> PresentedAlgebra {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        PresentedAlgebra::new(field, vec![], vec![], names, vec![]).expect("free algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Names of all flattened variables, base first.
    pub fn all_vars(&self) -> Vec<String> {
        self.base_vars.iter().chain(&self.vars).cloned().collect()
    }

    pub fn base_relations(&self) -> &[Polynomial] {
        &self.base_relations
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Base relations followed by relative relations.
    pub fn all_relations(&self) -> Vec<Polynomial> {
        self.base_relations.iter().chain(&self.relations).cloned().collect()
    }

    pub fn nvars(&self) -> usize {
        self.base_vars.len() + self.vars.len()
    }

    pub fn n_base(&self) -> usize {
        self.base_vars.len()
    }

    pub fn n_relative(&self) -> usize {
        self.vars.len()
    }

    /// Flattened index of relative generator `i`.
    pub fn relative_index(&self, i: usize) -> usize {
        self.base_vars.len() + i
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn base_groebner(&self) -> &GroebnerBasis {
        &self.base_gb
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.gb.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.gb.contains(p)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit_ideal()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn relative_var(&self, i: usize) -> Polynomial {
        self.var(self.relative_index(i))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field, self.nvars())
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        parse_with_names(text, self.field, &self.all_vars())
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.all_vars())
    }

    /// The base algebra `A` alone, as an algebra over the ground field.
    pub fn base_algebra(&self) -> PresentedAlgebra {
        let nb = self.n_base();
        let keep: Vec<usize> = (0..nb).collect();
        let rel = self.base_relations.iter().map(|p| restrict(p, nb, &keep)).collect();
        PresentedAlgebra::new(self.field, vec![], vec![], self.base_vars.clone(), rel).expect("base algebra")
    }

    /// Standard monomials of the flattened quotient, when finitely many.
    pub fn standard_monomials(&self, limit: usize) -> Result<Vec<Monomial>> {
        self.gb.standard_monomials(limit)
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(Polynomial::total_degree).max().unwrap_or(1)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_zero_ring() {
            out.push("flattened ideal is the unit ideal (zero ring)".to_string());
        }
        let nb = self.n_base();
        for (j, g) in self.base_relations.iter().enumerate() {
            if (nb..self.nvars()).any(|i| g.involves(i)) {
                out.push(format!("base relation {j} involves a relative generator"));
            }
        }
        for (j, f) in self.relations.iter().enumerate() {
            if !self.is_zero(f) {
                out.push(format!("relation {j} does not reduce to zero"));
            }
        }
        out
    }

    /// A presentation with the variables and relations permuted; the algebra
    /// is unchanged.
    pub fn permuted(&self, var_perm: &[usize], rel_perm: &[usize]) -> PresentedAlgebra {
        let nb = self.n_base();
        let n = self.nvars();
        let mut positions: Vec<usize> = (0..nb).collect();
        positions.extend(var_perm.iter().map(|&p| nb + p));
        let mut vars = vec![String::new(); self.vars.len()];
        for (i, &p) in var_perm.iter().enumerate() {
            vars[p] = self.vars[i].clone();
        }
        let relations = rel_perm.iter().map(|&r| self.relations[r].embed(n, &positions)).collect();
        let base_relations = self.base_relations.iter().map(|p| p.embed(n, &positions)).collect();
        PresentedAlgebra::new(self.field, self.base_vars.clone(), base_relations, vars, relations).expect("permutation")
    }
}

/// Drops variables not listed in `keep` (which must not occur in `p`).
fn restrict(p: &Polynomial, nvars: usize, keep: &[usize]) -> Polynomial {
    Polynomial::from_terms(
        p.field(),
        nvars,
        p.terms().map(|(m, c)| (Monomial::from_exponents(keep.iter().map(|&i| m.exponents()[i]).collect()), c.clone())),
    )
}

impl PartialEq for PresentedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.base_vars == other.base_vars && self.vars == other.vars && self.gb == other.gb && self.base_gb == other.base_gb
    }
}

impl fmt::Debug for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.all_vars();
        let fmt_list = |ps: &[Polynomial]| ps.iter().map(|p| format_polynomial(p, &names)).collect::<Vec<_>>().join(", ");
        let base = if self.base_vars.is_empty() {
            self.field.to_string()
        } else {
            format!("{}[{}]/({})", self.field, self.base_vars.join(","), fmt_list(&self.base_relations))
        };
        write!(f, "{}[{}]/({})", base, self.vars.join(","), fmt_list(&self.relations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_are_valid() {
        let b = PresentedAlgebra::over_field(Field::Prime(2), &["x"], &["x^2"]).unwrap();
        assert!(b.violations().is_empty());
        assert_eq!(b.standard_monomials(10).unwrap().len(), 2);
    }

    #[test]
    fn unit_ideal_is_reported() {
        let b = PresentedAlgebra::over_field(Field::Rational, &["x"], &["x", "x - 1"]).unwrap();
        assert!(!b.violations().is_empty());
    }

    #[test]
    fn base_relations_stay_in_base_variables() {
        let b = PresentedAlgebra::parse(Field::Prime(3), &["t"], &["t^2"], &["x"], &["x^2 - t"]).unwrap();
        assert!(b.violations().is_empty());
        assert_eq!(b.standard_monomials(20).unwrap().len(), 4);
        assert_eq!(b.base_algebra().standard_monomials(5).unwrap().len(), 2);
        assert!(PresentedAlgebra::parse(Field::Prime(3), &["t"], &["t*x"], &["x"], &[]).is_err());
    }

    #[test]
    fn permuted_presentations_define_the_same_quotient_size() {
        let b = PresentedAlgebra::over_field(Field::Prime(2), &["x", "y"], &["x^2", "x*y", "y^3"]).unwrap();
        let p = b.permuted(&[1, 0], &[2, 0, 1]);
        assert_eq!(b.standard_monomials(50).unwrap().len(), p.standard_monomials(50).unwrap().len());
        assert_eq!(p.vars(), &["y".to_string(), "x".to_string()]);
    }
}
