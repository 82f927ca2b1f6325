use super::presented::PresentedAlgebra;
use super::structure::StructureAlgebra;
use crate::error::Result;
use crate::poly::{GroebnerBasis, Monomial, Polynomial};
use crate::scalar::Scalar;

const MONOMIAL_LIMIT: usize = 4096;

/// A finite-dimensional quotient `B/(x)^d` (or `B` itself) with its
/// standard-monomial basis.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub algebra: StructureAlgebra,
    pub monomials: Vec<Monomial>,
    pub gb: GroebnerBasis,
    /// `None` when no truncation ideal was added.
    pub degree: Option<u32>,
}

impl Truncation {
    /// Coordinates of a polynomial of the flattened ring in the monomial basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Scalar> {
        let nf = self.gb.normal_form(p);
        self.monomials.iter().map(|m| nf.coefficient(m)).collect()
    }

    /// Polynomial representative of a coordinate vector.
    pub fn representative(&self, v: &[Scalar]) -> Polynomial {
        let f = self.gb.field();
        Polynomial::from_terms(f, self.gb.nvars(), self.monomials.iter().cloned().zip(v.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// Monomials of degree exactly `d` in the given variables.
pub fn monomials_of_degree(nvars: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial::from_exponents(exps.clone()));
                }
            }
            Some((&v, rest)) => {
                for e in (0..=left).rev() {
                    exps[v] = e;
                    rec(rest, left - e, exps, out);
                }
                exps[v] = 0;
            }
        }
    }
    rec(vars, d, &mut exps, &mut out);
    out
}

fn build(b: &PresentedAlgebra, extra: Vec<Polynomial>, degree: Option<u32>) -> Result<Truncation> {
    let f = b.field();
    let n = b.nvars();
    let mut gens = b.all_relations();
    gens.extend(extra);
    let gb = GroebnerBasis::ideal(f, n, &gens, b.order());
    let monomials = gb.standard_monomials(MONOMIAL_LIMIT)?;
    let names = b.all_vars();
    let labels: Vec<String> = monomials
        .iter()
        .map(|m| crate::poly::parse::format_polynomial(&Polynomial::term(f, f.one(), m.clone()), &names))
        .collect();
    let dim = monomials.len();
    let mut table = vec![vec![vec![f.zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let prod = gb.normal_form(&Polynomial::term(f, f.one(), monomials[i].mul(&monomials[j])));
            let v: Vec<Scalar> = monomials.iter().map(|m| prod.coefficient(m)).collect();
            table[j][i] = v.clone();
            table[i][j] = v;
        }
    }
    let algebra = if dim == 0 {
        StructureAlgebra::ground(f)
    } else {
        StructureAlgebra::new(f, labels, table)?
    };
    Ok(Truncation {
        algebra,
        monomials,
        gb,
        degree,
    })
}

/// `B/(x_1..x_n)^d` with `x` the relative generators.
pub fn truncate(b: &PresentedAlgebra, d: u32) -> Result<Truncation> {
    let rel: Vec<usize> = (b.n_base()..b.nvars()).collect();
    let extra = monomials_of_degree(b.nvars(), &rel, d)
        .into_iter()
        .map(|m| Polynomial::term(b.field(), b.field().one(), m))
        .collect();
    build(b, extra, Some(d))
}

/// `B` itself as a structure algebra, when it is finite-dimensional.
pub fn finite_structure(b: &PresentedAlgebra) -> Result<Truncation> {
    build(b, Vec::new(), None)
}

/// Whether `(x)^d` already vanishes in `B`, so that truncation changes nothing.
pub fn truncation_is_exact(b: &PresentedAlgebra, d: u32) -> bool {
    let rel: Vec<usize> = (b.n_base()..b.nvars()).collect();
    monomials_of_degree(b.nvars(), &rel, d)
        .into_iter()
        .all(|m| b.is_zero(&Polynomial::term(b.field(), b.field().one(), m)))
}

/// The default truncation degree: two more than the largest relation degree.
pub fn default_degree(b: &PresentedAlgebra) -> u32 {
    b.max_relation_degree() + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn dual_numbers_truncated_at_three() {
        let b = PresentedAlgebra::over_field(Field::Prime(2), &["x"], &["x^2"]).unwrap();
        let t = truncate(&b, 3).unwrap();
        assert_eq!(t.algebra.labels(), &["1".to_string(), "x".to_string()]);
        assert!(t.algebra.constant(1, 1).iter().all(Scalar::is_zero));
        assert!(truncation_is_exact(&b, 3));
    }

    #[test]
    fn node_truncated_at_two() {
        let b = PresentedAlgebra::over_field(Field::Prime(2), &["x", "y"], &["x*y"]).unwrap();
        let t = truncate(&b, 2).unwrap();
        assert_eq!(t.dim(), 3);
        for i in 1..3 {
            for j in 1..3 {
                assert!(t.algebra.constant(i, j).iter().all(Scalar::is_zero));
            }
        }
        assert!(t.algebra.violations().is_empty());
        assert!(!truncation_is_exact(&b, 2));
    }

    #[test]
    fn polynomial_ring_truncated_at_three() {
        let b = PresentedAlgebra::over_field(Field::Rational, &["x"], &[]).unwrap();
        let t = truncate(&b, 3).unwrap();
        assert_eq!(t.dim(), 3);
        assert!(t.algebra.mul(&t.algebra.basis(1), &t.algebra.basis(2)).iter().all(Scalar::is_zero));
        assert_eq!(t.algebra.mul(&t.algebra.basis(1), &t.algebra.basis(1)), t.algebra.basis(2));
    }

    #[test]
    fn infinite_base_is_rejected() {
        let b = PresentedAlgebra::parse(Field::Rational, &["t"], &[], &["x"], &["x^2"]).unwrap();
        assert!(finite_structure(&b).is_err());
    }
}
