//! Exhaustive enumeration over finite fields.
//!
//! Everything here works from multiplication tables and action matrices
//! alone: extensions are structure tensors on the fixed space `B ⊕ J`,
//! lifts and derivations are searched among all linear data, and
//! isomorphism classes are found by trying every change of splitting.

use std::collections::BTreeMap;

use crate::algebra::{all_vectors, count_vectors, monomials_of_degree, FiniteModule, PresentedAlgebra, StructureAlgebra, Truncation};
use crate::deformation::{BaseDeformationProblem, LiftProblem, RealizedExtension};
use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub candidates: u64,
    pub isomorphisms: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            candidates: 1 << 20,
            isomorphisms: 1 << 16,
        }
    }
}

impl EnumerationBudget {
    pub fn new(candidates: u64, isomorphisms: u64) -> Result<EnumerationBudget> {
        if candidates == 0 || isomorphisms == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        Ok(EnumerationBudget { candidates, isomorphisms })
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.candidates as u128 {
            Err(Error::BudgetExceeded {
                budget: self.candidates,
                needed,
            })
        } else {
            Ok(())
        }
    }
}

/// Result of a search, with the amount of work it took.
#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub explored: u64,
    pub budget: u64,
}

impl<T> Enumeration<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn finite(field: Field) -> Result<u64> {
    field.order().ok_or_else(|| Error::invalid("oracles run over finite fields only"))
}

/// The space `B ⊕ J` on which extensions are enumerated.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    pub algebra: StructureAlgebra,
    /// `J`, with one action matrix per basis element of `B`.
    pub module: FiniteModule,
    /// Lists of elements of `B` whose lifted products must vanish.
    pub vanishing: Vec<Vec<Vec<Scalar>>>,
}

impl ExtensionSpace {
    pub fn new(algebra: StructureAlgebra, module: FiniteModule) -> Result<ExtensionSpace> {
        finite(algebra.field())?;
        if algebra.one() != algebra.basis(0) {
            return Err(Error::invalid("the first basis vector must be the unit"));
        }
        let v = module.violations_over_structure(&algebra);
        if !v.is_empty() {
            return Err(Error::invalid(v.join("; ")));
        }
        Ok(ExtensionSpace {
            algebra,
            module,
            vanishing: Vec::new(),
        })
    }

    /// The finite model of a presented algebra. For a truncation `B/(x)^d`
    /// the extensions searched are those in which every product of `d`
    /// lifted generators vanishes, which requires `(x)^{d-1} J = 0`.
    pub fn from_presented(b: &PresentedAlgebra, j: &FiniteModule, model: &Truncation) -> Result<ExtensionSpace> {
        let actions = (0..model.dim()).map(|a| j.act(&model.representative(&model.algebra.basis(a)))).collect();
        let module = FiniteModule::new(j.field(), j.labels().to_vec(), actions)?;
        let mut space = ExtensionSpace::new(model.algebra.clone(), module)?;
        if let Some(d) = model.degree {
            let rel: Vec<usize> = (0..b.n_relative()).map(|i| b.relative_index(i)).collect();
            for m in monomials_of_degree(b.nvars(), &rel, d - 1) {
                if !j.act(&Polynomial::term(b.field(), b.field().one(), m)).is_zero() {
                    return Err(Error::invalid("the truncation degree is too small for the module"));
                }
            }
            for m in monomials_of_degree(b.nvars(), &rel, d) {
                let factors = rel
                    .iter()
                    .flat_map(|&i| {
                        let x = model.coordinates(&b.var(i));
                        std::iter::repeat(x).take(m.exponents()[i] as usize)
                    })
                    .collect();
                space.vanishing.push(factors);
            }
        }
        Ok(space)
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    fn n(&self) -> usize {
        self.algebra.dim()
    }

    fn d(&self) -> usize {
        self.module.dim()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..n).flat_map(|a| (a..n).map(move |c| (a, c))).collect()
    }
}

/// Normalized symmetric 2-cochain `β(e_a, e_c)` for `1 ≤ a ≤ c`, with
/// `β(1, −) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub values: Vec<Vec<Scalar>>,
}

/// Multiplication on `B ⊕ J` given by `(b, j)(b′, j′) = (bb′, b j′ + b′ j + β(b, b′))`.
pub struct ExtensionTable<'a> {
    space: &'a ExtensionSpace,
    index: Vec<Vec<usize>>,
    beta: &'a Cochain2,
}

impl<'a> ExtensionTable<'a> {
    pub fn new(space: &'a ExtensionSpace, beta: &'a Cochain2) -> ExtensionTable<'a> {
        ExtensionTable {
            space,
            index: pair_index(space.n()),
            beta,
        }
    }

    fn beta_basis(&self, a: usize, c: usize) -> Option<&[Scalar]> {
        if a == 0 || c == 0 {
            None
        } else {
            Some(&self.beta.values[self.index[a][c]])
        }
    }

    fn beta(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.space.module.zero_vector();
        for (a, ca) in x.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (c, cc) in y.iter().enumerate() {
                if cc.is_zero() {
                    continue;
                }
                if let Some(v) = self.beta_basis(a, c) {
                    out = vec_add(&out, &vec_scale(v, &(ca.clone() * cc.clone())));
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.space.n();
        let (xb, xj) = x.split_at(n);
        let (yb, yj) = y.split_at(n);
        let m = &self.space.module;
        let mut j = vec_add(&m.act_element(xb).mul_vec(yj), &m.act_element(yb).mul_vec(xj));
        j = vec_add(&j, &self.beta(xb, yb));
        let mut out = self.space.algebra.mul(xb, yb);
        out.extend(j);
        out
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.space.algebra.one();
        v.extend(self.space.module.zero_vector());
        v
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.space.field().zero(); self.space.n() + self.space.d()]
    }

    pub fn lift(&self, b: &[Scalar], j: &[Scalar]) -> Vec<Scalar> {
        let mut v = b.to_vec();
        v.extend_from_slice(j);
        v
    }

    pub fn evaluate(&self, p: &Polynomial, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        p.evaluate(images, self.one(), self.zero(), |a, b| vec_add(a, b), |a, b| self.mul(a, b), |a, c| vec_scale(a, c))
    }

    /// The multiplication as a structure algebra on `B ⊕ J`.
    pub fn structure(&self) -> Result<StructureAlgebra> {
        let total = self.space.n() + self.space.d();
        let f = self.space.field();
        let basis: Vec<Vec<Scalar>> = (0..total)
            .map(|i| {
                let mut v = vec![f.zero(); total];
                v[i] = f.one();
                v
            })
            .collect();
        let table = basis.iter().map(|x| basis.iter().map(|y| self.mul(x, y)).collect()).collect();
        let mut labels: Vec<String> = self.space.algebra.labels().to_vec();
        labels.extend(self.space.module.labels().iter().cloned());
        StructureAlgebra::new(f, labels, table)
    }
}

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for a in 1..n {
        for c in a..n {
            index[a][c] = k;
            index[c][a] = k;
            k += 1;
        }
    }
    index
}

struct Constraint {
    a: usize,
    b: usize,
    c: usize,
}

/// Every normalized symmetric 2-cocycle: the associative extensions on `B ⊕ J`
/// that pass the vanishing filter.
pub fn enumerate_cocycles(space: &ExtensionSpace, budget: &EnumerationBudget) -> Result<Enumeration<Cochain2>> {
    let f = space.field();
    finite(f)?;
    let n = space.n();
    let pairs = space.pairs();
    let index = pair_index(n);
    let support = |v: &[Scalar]| -> Vec<usize> { (1..n).filter(|&k| !v[k].is_zero()).collect() };
    // each associativity constraint is checked once all of its entries are assigned
    let mut ready: Vec<Vec<Constraint>> = (0..pairs.len()).map(|_| Vec::new()).collect();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let mut deps = vec![index[a][b], index[b][c]];
                deps.extend(support(space.algebra.constant(a, b)).into_iter().map(|k| index[k][c]));
                deps.extend(support(space.algebra.constant(b, c)).into_iter().map(|k| index[a][k]));
                let at = deps.into_iter().max().unwrap();
                ready[at].push(Constraint { a, b, c });
            }
        }
    }
    let values: Vec<Vec<Scalar>> = all_vectors(f, space.d()).collect();
    let mut state = Cochain2 {
        values: vec![space.module.zero_vector(); pairs.len()],
    };
    let mut found = Vec::new();
    let mut explored = 0u64;
    if pairs.is_empty() {
        if passes_filter(space, &state) {
            found.push(state);
        }
        return Ok(Enumeration {
            items: found,
            explored,
            budget: budget.candidates,
        });
    }
    let mut choice = vec![0usize; pairs.len()];
    let mut depth = 0usize;
    loop {
        if choice[depth] == values.len() {
            choice[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        explored += 1;
        if explored > budget.candidates {
            return Err(Error::BudgetExceeded {
                budget: budget.candidates,
                needed: explored as u128,
            });
        }
        state.values[depth] = values[choice[depth]].clone();
        let table = ExtensionTable::new(space, &state);
        let ok = ready[depth].iter().all(|t| associative(&table, t));
        if !ok {
            choice[depth] += 1;
        } else if depth + 1 == pairs.len() {
            if passes_filter(space, &state) {
                found.push(state.clone());
            }
            choice[depth] += 1;
        } else {
            depth += 1;
        }
    }
    Ok(Enumeration {
        items: found,
        explored,
        budget: budget.candidates,
    })
}

fn associative(table: &ExtensionTable, t: &Constraint) -> bool {
    let alg = &table.space.algebra;
    let (ea, eb, ec) = (alg.basis(t.a), alg.basis(t.b), alg.basis(t.c));
    let m = &table.space.module;
    // β(ab, c) + c·β(a, b) = β(a, bc) + a·β(b, c)
    let left = vec_add(&table.beta(&alg.mul(&ea, &eb), &ec), &m.action(t.c).mul_vec(&table.beta(&ea, &eb)));
    let right = vec_add(&table.beta(&ea, &alg.mul(&eb, &ec)), &m.action(t.a).mul_vec(&table.beta(&eb, &ec)));
    left == right
}

fn passes_filter(space: &ExtensionSpace, beta: &Cochain2) -> bool {
    let table = ExtensionTable::new(space, beta);
    let zero = space.module.zero_vector();
    space.vanishing.iter().all(|factors| {
        let mut acc = table.one();
        for x in factors {
            acc = table.mul(&acc, &table.lift(x, &zero));
        }
        is_zero_vec(&acc)
    })
}

/// An extension together with the images of the base generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub beta: Cochain2,
    pub base: Vec<Vec<Scalar>>,
}

/// `β + δh` and `u + h(ȳ)` for a linear `h: B → J` with `h(1) = 0`.
fn twist(space: &ExtensionSpace, cand: &ExtensionCandidate, h: &[Vec<Scalar>], base_images: &[Vec<Scalar>]) -> ExtensionCandidate {
    let alg = &space.algebra;
    let m = &space.module;
    let apply = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = m.zero_vector();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = vec_add(&out, &vec_scale(&h[k], c));
            }
        }
        out
    };
    let beta = space
        .pairs()
        .iter()
        .zip(&cand.beta.values)
        .map(|(&(a, c), v)| {
            let delta = vec_sub(&vec_add(&m.action(a).mul_vec(&h[c]), &m.action(c).mul_vec(&h[a])), &apply(alg.constant(a, c)));
            vec_add(v, &delta)
        })
        .collect();
    let base = cand.base.iter().zip(base_images).map(|(u, y)| vec_add(u, &apply(y))).collect();
    ExtensionCandidate {
        beta: Cochain2 { values: beta },
        base,
    }
}

fn key(c: &ExtensionCandidate) -> Vec<u64> {
    c.beta.values.iter().chain(&c.base).flatten().map(Scalar::index).collect()
}

/// Splits candidates into classes under all changes of splitting; returns
/// one representative per class, in order of first appearance.
pub fn classify(
    space: &ExtensionSpace,
    candidates: &[ExtensionCandidate],
    base_images: &[Vec<Scalar>],
    budget: &EnumerationBudget,
) -> Result<Vec<ExtensionCandidate>> {
    let f = space.field();
    let (n, d) = (space.n(), space.d());
    let needed = count_vectors(f, (n - 1) * d);
    if needed > budget.isomorphisms as u128 {
        return Err(Error::BudgetExceeded {
            budget: budget.isomorphisms,
            needed,
        });
    }
    let maps: Vec<Vec<Vec<Scalar>>> = all_vectors(f, (n - 1) * d)
        .map(|v| {
            let mut h = vec![space.module.zero_vector()];
            h.extend(v.chunks(d.max(1)).take(n - 1).map(|c| c.to_vec()));
            h.resize(n, space.module.zero_vector());
            h
        })
        .collect();
    let mut classes: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut reps = Vec::new();
    for c in candidates {
        let canonical = maps.iter().map(|h| key(&twist(space, c, h, base_images))).min().unwrap();
        classes.entry(canonical).or_insert_with(|| {
            reps.push(c.clone());
            reps.len() - 1
        });
    }
    Ok(reps)
}

/// All extensions of `B` by `J` over the ground field, up to isomorphism.
pub fn enumerate_extensions(space: &ExtensionSpace, budget: &EnumerationBudget) -> Result<Enumeration<ExtensionCandidate>> {
    let cocycles = enumerate_cocycles(space, budget)?;
    let all: Vec<ExtensionCandidate> = cocycles
        .items
        .into_iter()
        .map(|beta| ExtensionCandidate { beta, base: Vec::new() })
        .collect();
    Ok(Enumeration {
        items: classify(space, &all, &[], budget)?,
        explored: cocycles.explored,
        budget: budget.candidates,
    })
}

/// All solutions of a deformation problem on the model `B_t ⊕ J`, up to
/// isomorphism of extensions compatible with the structure maps.
pub fn enumerate_deformations(p: &BaseDeformationProblem, model: &Truncation, budget: &EnumerationBudget) -> Result<Enumeration<ExtensionCandidate>> {
    let b = &p.algebra;
    let space = ExtensionSpace::from_presented(b, &p.module, model)?;
    let f = space.field();
    let nb = b.n_base();
    let d = space.d();
    let cocycles = enumerate_cocycles(&space, budget)?;
    let per = count_vectors(f, nb * d);
    budget.check(per.saturating_mul(cocycles.items.len() as u128).saturating_add(cocycles.explored as u128))?;
    let base_images: Vec<Vec<Scalar>> = (0..nb).map(|y| model.coordinates(&b.var(y))).collect();
    let relative: Vec<Vec<Scalar>> = (nb..b.nvars()).map(|x| model.coordinates(&b.var(x))).collect();
    let mut solutions = Vec::new();
    let mut explored = cocycles.explored;
    for beta in &cocycles.items {
        let table = ExtensionTable::new(&space, beta);
        for u in all_vectors(f, nb * d) {
            explored += 1;
            let base: Vec<Vec<Scalar>> = u.chunks(d.max(1)).take(nb).map(|c| c.to_vec()).collect();
            let base = if d == 0 { vec![Vec::new(); nb] } else { base };
            let mut images: Vec<Vec<Scalar>> = base_images.iter().zip(&base).map(|(y, v)| table.lift(y, v)).collect();
            images.extend(relative.iter().map(|x| table.lift(x, &space.module.zero_vector())));
            let kills = p.extended_base.iter().all(|g| is_zero_vec(&table.evaluate(g, &images)));
            let phi_ok = kills
                && p.ideal_generators.iter().zip(&p.phi).all(|(iota, val)| {
                    let v = table.evaluate(iota, &images);
                    is_zero_vec(&v[..space.n()]) && v[space.n()..] == val[..]
                });
            if phi_ok {
                solutions.push(ExtensionCandidate { beta: beta.clone(), base });
            }
        }
    }
    Ok(Enumeration {
        items: classify(&space, &solutions, &base_images, budget)?,
        explored,
        budget: budget.candidates,
    })
}

/// All algebra maps `B → C′` over the given map `B → C`.
pub fn enumerate_lifts(p: &LiftProblem, budget: &EnumerationBudget) -> Result<Enumeration<Vec<Vec<Scalar>>>> {
    let c = &p.cover;
    let f = c.field();
    finite(f)?;
    let k = p.source.nvars();
    let needed = count_vectors(f, c.dim() * k);
    budget.check(needed)?;
    let mut out = Vec::new();
    for flat in all_vectors(f, c.dim() * k) {
        let images: Vec<Vec<Scalar>> = flat.chunks(c.dim()).map(|x| x.to_vec()).collect();
        if images.iter().zip(&p.images).any(|(x, u)| p.quotient.projection.mul_vec(x) != *u) {
            continue;
        }
        let ok = p
            .source
            .relations()
            .iter()
            .all(|r| is_zero_vec(&r.evaluate(&images, c.one(), c.zero(), |a, b| vec_add(a, b), |a, b| c.mul(a, b), |a, s| vec_scale(a, s))));
        if ok {
            out.push(images);
        }
    }
    Ok(Enumeration {
        items: out,
        explored: needed as u64,
        budget: budget.candidates,
    })
}

/// All derivations `B → J` vanishing on `killed`, as the images of the basis.
pub fn enumerate_derivations(
    b: &StructureAlgebra,
    j: &FiniteModule,
    killed: &[Vec<Scalar>],
    budget: &EnumerationBudget,
) -> Result<Enumeration<Vec<Vec<Scalar>>>> {
    let f = b.field();
    finite(f)?;
    let (n, d) = (b.dim(), j.dim());
    let needed = count_vectors(f, n * d);
    budget.check(needed)?;
    let mut out = Vec::new();
    for flat in all_vectors(f, n * d) {
        let images: Vec<Vec<Scalar>> = if d == 0 { vec![Vec::new(); n] } else { flat.chunks(d).map(|x| x.to_vec()).collect() };
        let map = Matrix::from_columns(f, d, &images);
        let leibniz = (0..n).all(|a| {
            (0..n).all(|c| {
                let lhs = map.mul_vec(b.constant(a, c));
                let rhs = vec_add(&j.action(a).mul_vec(&images[c]), &j.action(c).mul_vec(&images[a]));
                lhs == rhs
            })
        });
        if leibniz && killed.iter().all(|v| is_zero_vec(&map.mul_vec(v))) {
            out.push(images);
        }
    }
    Ok(Enumeration {
        items: out,
        explored: needed as u64,
        budget: budget.candidates,
    })
}

/// Whether two realized extensions on the same space are isomorphic by a
/// map `(b, j) ↦ (b, j + h(b))`, found by trying every `h`.
pub fn isomorphic_extensions(e1: &RealizedExtension, e2: &RealizedExtension, budget: &EnumerationBudget) -> Result<bool> {
    let (n, d) = (e1.quotient_dim(), e1.ideal_dim());
    if n != e2.quotient_dim() || d != e2.ideal_dim() {
        return Ok(false);
    }
    let f = e1.algebra.field();
    finite(f)?;
    let needed = count_vectors(f, (n - 1) * d);
    if needed > budget.isomorphisms as u128 {
        return Err(Error::BudgetExceeded {
            budget: budget.isomorphisms,
            needed,
        });
    }
    let total = n + d;
    for flat in all_vectors(f, (n - 1) * d) {
        // map sends basis vector a < n to (e_a, h(e_a)) and fixes J
        let mut columns = Vec::with_capacity(total);
        for a in 0..total {
            let mut v = vec![f.zero(); total];
            v[a] = f.one();
            if a >= 1 && a < n {
                for t in 0..d {
                    v[n + t] = flat[(a - 1) * d + t].clone();
                }
            }
            columns.push(v);
        }
        let phi = Matrix::from_columns(f, total, &columns);
        let respects_product = (0..total).all(|a| {
            (0..total).all(|c| phi.mul_vec(e1.algebra.constant(a, c)) == e2.algebra.mul(&columns[a], &columns[c]))
        });
        let respects_base = e1.base_lifts.iter().zip(&e2.base_lifts).all(|(u1, u2)| phi.mul_vec(u1) == *u2);
        if respects_product && respects_base {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Monomials of degree `d` in the relative generators, as polynomials.
pub fn truncation_monomials(b: &PresentedAlgebra, d: u32) -> Vec<Polynomial> {
    let rel: Vec<usize> = (0..b.n_relative()).map(|i| b.relative_index(i)).collect();
    monomials_of_degree(b.nvars(), &rel, d)
        .into_iter()
        .map(|m: Monomial| Polynomial::term(b.field(), b.field().one(), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite_structure;
    use crate::deformation::quotient_model;

    fn space(f: Field, vars: &[&str], rels: &[&str], degree: Option<u32>) -> ExtensionSpace {
        let b = PresentedAlgebra::over_field(f, vars, rels).unwrap();
        let model = quotient_model(&b, degree).unwrap();
        ExtensionSpace::from_presented(&b, &FiniteModule::residue_field(&b), &model).unwrap()
    }

    fn count(f: Field, vars: &[&str], rels: &[&str], degree: Option<u32>) -> usize {
        enumerate_extensions(&space(f, vars, rels, degree), &EnumerationBudget::default()).unwrap().len()
    }

    #[test]
    fn extension_counts() {
        let f = Field::Prime(2);
        assert_eq!(count(f, &[], &[], None), 1);
        assert_eq!(count(f, &["x"], &["x^2"], None), 2);
        assert_eq!(count(f, &["x"], &["x^3"], None), 2);
        assert_eq!(count(f, &["x", "y"], &["x^2", "x*y", "y^2"], None), 8);
        assert_eq!(count(f, &["x", "y"], &["x*y"], Some(4)), 2);
        assert_eq!(count(Field::Prime(3), &["x"], &["x^2"], None), 3);
    }

    #[test]
    fn every_cocycle_is_an_algebra() {
        let s = space(Field::Prime(2), &["x"], &["x^3"], None);
        let all = enumerate_cocycles(&s, &EnumerationBudget::default()).unwrap();
        assert!(!all.is_empty());
        for beta in &all.items {
            let table = ExtensionTable::new(&s, beta);
            assert!(table.structure().unwrap().violations().is_empty());
        }
    }

    #[test]
    fn derivations_of_dual_numbers_into_themselves() {
        let f = Field::Prime(2);
        let b = finite_structure(&PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap()).unwrap().algebra;
        let j = FiniteModule::regular_structure(&b);
        let all = enumerate_derivations(&b, &j, &[], &EnumerationBudget::default()).unwrap();
        assert_eq!(all.len(), 4);
        let ground = StructureAlgebra::ground(f);
        let jg = FiniteModule::regular_structure(&ground);
        assert_eq!(enumerate_derivations(&ground, &jg, &[], &EnumerationBudget::default()).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let s = space(Field::Prime(2), &["x", "y"], &["x^2", "x*y", "y^2"], None);
        let tiny = EnumerationBudget::new(3, 4).unwrap();
        assert!(matches!(enumerate_extensions(&s, &tiny), Err(Error::BudgetExceeded { .. })));
        assert!(EnumerationBudget::new(0, 1).is_err());
    }

    #[test]
    fn basis_order_does_not_matter() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x", "y"], &["x^2", "y^3", "x*y"]).unwrap();
        let p = b.permuted(&[1, 0], &[2, 1, 0]);
        let budget = EnumerationBudget::default();
        let run = |b: &PresentedAlgebra| {
            let model = quotient_model(b, None).unwrap();
            let s = ExtensionSpace::from_presented(b, &FiniteModule::residue_field(b), &model).unwrap();
            enumerate_extensions(&s, &budget).unwrap().len()
        };
        assert_eq!(run(&b), run(&p));
    }

    #[test]
    fn deformation_oracle_matches_obstruction() {
        let f = Field::Prime(2);
        let budget = EnumerationBudget::default();
        let b = PresentedAlgebra::parse(f, &["t"], &["t^3", "t^2"], &["x"], &["t", "x^2"]).unwrap();
        let j = FiniteModule::residue_field(&b);
        for (phi, solvable) in [(f.one(), false), (f.zero(), true)] {
            let p = BaseDeformationProblem::parse(&["t"], &["t^3"], &["t^2"], &["x"], &["t", "x^2"], j.clone(), vec![vec![phi]]).unwrap();
            let model = quotient_model(&p.algebra, None).unwrap();
            let found = enumerate_deformations(&p, &model, &budget).unwrap();
            assert_eq!(!found.is_empty(), solvable);
            assert_eq!(p.obstruction_class(0).unwrap().is_zero(), solvable);
        }
    }

    #[test]
    fn zero_ideal_deformations_are_extensions() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let p = BaseDeformationProblem::parse(&[], &[], &[], &["x"], &["x^2"], FiniteModule::residue_field(&b), vec![]).unwrap();
        let model = quotient_model(&p.algebra, None).unwrap();
        assert_eq!(enumerate_deformations(&p, &model, &EnumerationBudget::default()).unwrap().len(), 2);
    }

    #[test]
    fn lift_oracle_counts() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let cover = finite_structure(&PresentedAlgebra::over_field(f, &["u"], &["u^4"]).unwrap()).unwrap().algebra;
        let p = LiftProblem::new(b, cover.clone(), vec![cover.basis(2), cover.basis(3)], vec![vec![f.zero(), f.one()]]).unwrap();
        let all = enumerate_lifts(&p, &EnumerationBudget::default()).unwrap();
        assert!(all.is_empty());
        assert_eq!(all.explored, 16);
    }
}
