use super::groebner::{tracked_groebner, GroebnerBasis};
use super::{unit_vector, vector_is_zero, vector_sub, Monomial, MonomialOrder, PolyVector, Polynomial};
use crate::scalar::Field;

/// Generators of the syzygy module of a list of ideal generators: each column
/// `s` satisfies `Σ s_i f_i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyMatrix {
    pub generators: Vec<Polynomial>,
    pub columns: Vec<PolyVector>,
}

impl SyzygyMatrix {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Whether every column annihilates the generators identically.
    pub fn verify(&self) -> bool {
        self.columns.iter().all(|c| super::dot(c, &self.generators).is_zero())
    }
}

/// Syzygies of ideal generators under the default graded reverse lexicographic order.
pub fn syzygy_basis(gens: &[Polynomial]) -> SyzygyMatrix {
    let f = gens.first().expect("at least one generator");
    let vecs: Vec<PolyVector> = gens.iter().map(|g| vec![g.clone()]).collect();
    let columns = module_syzygies(f.field(), f.nvars(), 1, &vecs, &MonomialOrder::grevlex(f.nvars()));
    SyzygyMatrix {
        generators: gens.to_vec(),
        columns,
    }
}

/// Syzygies of vectors in `P^rank` via Schreyer's construction on a tracked
/// Gröbner basis, converted back to the original generators and pruned of
/// redundant columns.
pub fn module_syzygies(field: Field, nvars: usize, rank: usize, gens: &[PolyVector], order: &MonomialOrder) -> Vec<PolyVector> {
    let s = gens.len();
    let t = tracked_groebner(field, nvars, rank, gens, order, false);
    let r = t.basis.len();
    let leads = t.leading_terms();
    let zero = Polynomial::zero(field, nvars);
    let one = field.one();
    let to_inputs = |sigma: &[Polynomial]| -> PolyVector {
        let mut out = vec![zero.clone(); s];
        for (sk, cof) in sigma.iter().zip(&t.cofactors) {
            if sk.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(cof) {
                *o = o.add(&sk.mul(c));
            }
        }
        out
    };

    let mut columns: Vec<PolyVector> = Vec::new();
    for k in 0..r {
        for l in k + 1..r {
            if leads[k].1 != leads[l].1 {
                continue;
            }
            let lcm = leads[k].0.lcm(&leads[l].0);
            let tk = leads[k].0.quotient_of(&lcm);
            let tl = leads[l].0.quotient_of(&lcm);
            let sv: PolyVector = t.basis[k]
                .iter()
                .zip(&t.basis[l])
                .map(|(a, b)| a.mul_term(&one, &tk).sub(&b.mul_term(&one, &tl)))
                .collect();
            let (q, rem) = t.divide(&sv);
            debug_assert!(vector_is_zero(&rem), "S-vector of a Gröbner basis must reduce to zero");
            let mut sigma: PolyVector = q.iter().map(Polynomial::neg).collect();
            sigma[k] = sigma[k].add(&Polynomial::term(field, one.clone(), tk));
            sigma[l] = sigma[l].sub(&Polynomial::term(field, one.clone(), tl));
            columns.push(to_inputs(&sigma));
        }
    }
    for (i, g) in gens.iter().enumerate() {
        let (q, rem) = t.divide(g);
        debug_assert!(vector_is_zero(&rem));
        columns.push(vector_sub(&unit_vector(field, nvars, s, i), &to_inputs(&q)));
    }
    columns.retain(|c| !vector_is_zero(c));
    dedup(&mut columns);
    prune(field, nvars, s, columns, &[], order)
}

fn dedup(columns: &mut Vec<PolyVector>) {
    let mut seen: Vec<PolyVector> = Vec::new();
    columns.retain(|c| {
        if seen.contains(c) {
            false
        } else {
            seen.push(c.clone());
            true
        }
    });
}

/// Drops columns lying in the submodule generated by the remaining columns
/// together with `extra` (a fixed set of vectors that is never dropped).
fn prune(field: Field, nvars: usize, rank: usize, mut columns: Vec<PolyVector>, extra: &[PolyVector], order: &MonomialOrder) -> Vec<PolyVector> {
    let mut i = 0;
    while i < columns.len() {
        let mut others: Vec<PolyVector> = columns.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, c)| c.clone()).collect();
        others.extend(extra.iter().cloned());
        let redundant = if others.is_empty() {
            false
        } else {
            GroebnerBasis::module(field, nvars, rank, &others, order).contains_vector(&columns[i])
        };
        if redundant {
            columns.remove(i);
        } else {
            i += 1;
        }
    }
    columns
}

/// Syzygies of `gens` over the quotient ring `P/(modulus)`: vectors `s` with
/// `Σ s_i gens[i] ∈ modulus · P^rank`, with entries taken as representatives.
pub fn syzygies_modulo(
    field: Field,
    nvars: usize,
    rank: usize,
    gens: &[PolyVector],
    modulus: &[Polynomial],
    order: &MonomialOrder,
) -> Vec<PolyVector> {
    let s = gens.len();
    let mut all = gens.to_vec();
    for g in modulus {
        for c in 0..rank {
            let mut v = vec![Polynomial::zero(field, nvars); rank];
            v[c] = g.clone();
            all.push(v);
        }
    }
    let full = module_syzygies(field, nvars, rank, &all, order);
    let mut cols: Vec<PolyVector> = full.into_iter().map(|c| c[..s].to_vec()).filter(|c| !vector_is_zero(c)).collect();
    dedup(&mut cols);
    if modulus.is_empty() {
        return cols;
    }
    let mut extra = Vec::new();
    for g in modulus {
        for i in 0..s {
            let mut v = vec![Polynomial::zero(field, nvars); s];
            v[i] = g.clone();
            extra.push(v);
        }
    }
    // reduce entries modulo the quotient ideal
    let gb = GroebnerBasis::ideal(field, nvars, modulus, order);
    let mut cols: Vec<PolyVector> = cols
        .into_iter()
        .map(|c| c.iter().map(|p| gb.normal_form(p)).collect::<PolyVector>())
        .filter(|c| !vector_is_zero(c))
        .collect();
    dedup(&mut cols);
    prune(field, nvars, s, cols, &extra, order)
}

/// All monomials in `nvars` variables of total degree at most `d`.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..nvars {
                next.push(m.mul(&Monomial::var(nvars, i)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::poly::parse::parse_polynomial;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn p(field: Field, vars: &[&str], s: &str) -> Polynomial {
        parse_polynomial(s, field, vars).unwrap()
    }

    /// Brute-force oracle: every syzygy with entries of degree ≤ d, found by
    /// linear algebra on coefficient vectors, must lie in the module spanned
    /// by `columns`.
    fn degree_bounded_complete(gens: &[Polynomial], columns: &[PolyVector], d: u32) -> bool {
        let field = gens[0].field();
        let nvars = gens[0].nvars();
        let monos = monomials_up_to(nvars, d);
        let s = gens.len();
        let mut images: Vec<Polynomial> = Vec::new();
        for g in gens {
            for m in &monos {
                images.push(g.mul_term(&field.one(), m));
            }
        }
        let mut support: Vec<Monomial> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        support.sort();
        support.dedup();
        let mut mat = Matrix::zeros(field, support.len(), images.len());
        for (j, im) in images.iter().enumerate() {
            for (m, c) in im.terms() {
                let i = support.binary_search(m).unwrap();
                mat.set(i, j, c.clone());
            }
        }
        let kernel = mat.kernel_basis();
        let gb = if columns.is_empty() {
            None
        } else {
            Some(GroebnerBasis::module(field, nvars, s, columns, &MonomialOrder::grevlex(nvars)))
        };
        kernel.columns().iter().all(|k| {
            let v: PolyVector = (0..s)
                .map(|i| {
                    Polynomial::from_terms(
                        field,
                        nvars,
                        monos.iter().enumerate().map(|(t, m)| (m.clone(), k[i * monos.len() + t].clone())),
                    )
                })
                .collect();
            match &gb {
                None => vector_is_zero(&v),
                Some(gb) => gb.contains_vector(&v),
            }
        })
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let f = Field::Rational;
        let s = syzygy_basis(&[p(f, &["x"], "x^2")]);
        assert!(s.is_empty());
    }

    #[test]
    fn determinantal_syzygies() {
        let f = Field::Rational;
        let v = ["x", "y"];
        let gens = vec![p(f, &v, "x^2"), p(f, &v, "x*y"), p(f, &v, "y^2")];
        let s = syzygy_basis(&gens);
        assert!(s.verify());
        let expected = vec![
            vec![p(f, &v, "y"), p(f, &v, "-x"), p(f, &v, "0")],
            vec![p(f, &v, "0"), p(f, &v, "y"), p(f, &v, "-x")],
        ];
        let ours = GroebnerBasis::module(f, 2, 3, &s.columns, &MonomialOrder::grevlex(2));
        let theirs = GroebnerBasis::module(f, 2, 3, &expected, &MonomialOrder::grevlex(2));
        assert_eq!(ours, theirs);
        assert_eq!(s.len(), 2);
        assert!(degree_bounded_complete(&gens, &s.columns, 4));
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let f = Field::Prime(2);
        let v = ["x", "y"];
        let gens = vec![p(f, &v, "x"), p(f, &v, "y")];
        let s = syzygy_basis(&gens);
        assert_eq!(s.columns, vec![vec![p(f, &v, "y"), p(f, &v, "x")]]);
        assert!(degree_bounded_complete(&gens, &s.columns, 4));
    }

    #[test]
    fn zero_generator_gives_unit_syzygy() {
        let f = Field::Prime(3);
        let gens = vec![p(f, &["x"], "x"), p(f, &["x"], "0")];
        let s = syzygy_basis(&gens);
        assert!(s.verify());
        assert!(s.columns.contains(&vec![p(f, &["x"], "0"), p(f, &["x"], "1")]));
    }

    #[test]
    fn syzygies_over_quotient_ring() {
        // over k[t]/(t^2), the element t*x has syzygy t
        let f = Field::Prime(2);
        let v = ["t", "x"];
        let cols = syzygies_modulo(f, 2, 1, &[vec![p(f, &v, "t*x")]], &[p(f, &v, "t^2")], &MonomialOrder::grevlex(2));
        assert_eq!(cols, vec![vec![p(f, &v, "t")]]);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        let field = Field::Prime(2);
        proptest::collection::vec((0u32..3, 0u32..2, 0u32..2), 1..3).prop_map(move |ts| {
            Polynomial::from_terms(field, 3, ts.into_iter().map(|(a, b, c)| (Monomial::from_exponents(vec![a, b, c]), Scalar::Mod { value: 1, modulus: 2 })))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn syzygies_annihilate_and_are_degree_complete(gens in proptest::collection::vec(small_poly(), 1..4)) {
            let s = syzygy_basis(&gens);
            prop_assert!(s.verify());
            prop_assert!(degree_bounded_complete(&gens, &s.columns, 2));
        }
    }
}
