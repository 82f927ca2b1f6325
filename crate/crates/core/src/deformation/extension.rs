use std::sync::Arc;

use crate::algebra::{default_degree, finite_structure, truncate, FiniteModule, PresentedAlgebra, StructureAlgebra, Truncation};
use crate::error::{Error, Result};
use crate::ls::{build_ls, Cochains, CohomologyClass};
use crate::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, Matrix};
use crate::poly::{tracked_groebner, PolyVector, Polynomial};
use crate::scalar::Scalar;

/// The finite model of `B` used for realized extensions: `B` itself when it
/// is finite-dimensional, otherwise `B/(x)^d`.
pub fn quotient_model(b: &PresentedAlgebra, degree: Option<u32>) -> Result<Truncation> {
    match finite_structure(b) {
        Ok(t) => Ok(t),
        Err(Error::NotFiniteDimensional { .. }) => truncate(b, degree.unwrap_or_else(|| default_degree(b))),
        Err(e) => Err(e),
    }
}

/// A square-zero extension `0 → J → E → B_t → 0` on the space `B_t ⊕ J`,
/// where `B_t` is the finite model of `B`. The first `quotient.dim()`
/// coordinates are the `B_t` part.
#[derive(Clone, Debug)]
pub struct RealizedExtension {
    pub algebra: StructureAlgebra,
    pub presentation: PresentedAlgebra,
    pub quotient: Truncation,
    pub module: FiniteModule,
    /// Images of the base variables: the structure map from the base.
    pub base_lifts: Vec<Vec<Scalar>>,
}

/// Either description of a square-zero extension.
#[derive(Clone, Debug)]
pub enum SquareZeroExtension {
    Cocycle(CohomologyClass),
    Realized(RealizedExtension),
}

impl SquareZeroExtension {
    pub fn realized(&self, model: &Truncation) -> Result<RealizedExtension> {
        match self {
            SquareZeroExtension::Cocycle(c) => extension_from_cocycle(c, model),
            SquareZeroExtension::Realized(e) => Ok(e.clone()),
        }
    }

    pub fn cocycle(&self, cochains: &Arc<Cochains>) -> Result<CohomologyClass> {
        match self {
            SquareZeroExtension::Cocycle(c) => Ok(c.clone()),
            SquareZeroExtension::Realized(e) => cocycle_from_extension(e, cochains, None),
        }
    }
}

impl RealizedExtension {
    pub fn quotient_dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ideal_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn split(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let n = self.quotient_dim();
        (v[..n].to_vec(), v[n..].to_vec())
    }

    pub fn join(&self, b: &[Scalar], j: &[Scalar]) -> Vec<Scalar> {
        let mut v = b.to_vec();
        v.extend_from_slice(j);
        v
    }

    /// Lifts of all flattened variables: the base structure map for base
    /// variables and `(x_i, offset_i)` for relative generators.
    pub fn section(&self, offsets: Option<&[Vec<Scalar>]>) -> Vec<Vec<Scalar>> {
        let b = &self.presentation;
        let mut out = self.base_lifts.clone();
        for i in 0..b.n_relative() {
            let coords = self.quotient.coordinates(&b.relative_var(i));
            let j = offsets.map(|o| o[i].clone()).unwrap_or_else(|| self.module.zero_vector());
            out.push(self.join(&coords, &j));
        }
        out
    }

    pub fn evaluate(&self, p: &Polynomial, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        let s = &self.algebra;
        p.evaluate(images, s.one(), s.zero(), |a, b| vec_add(a, b), |a, b| s.mul(a, b), |a, c| vec_scale(a, c))
    }

    /// `f_j(section)`, which lies in `J` for every relation.
    pub fn relation_values(&self, offsets: Option<&[Vec<Scalar>]>) -> Result<Vec<Vec<Scalar>>> {
        let images = self.section(offsets);
        self.presentation
            .relations()
            .iter()
            .map(|f| {
                let (bpart, j) = self.split(&self.evaluate(f, &images));
                if is_zero_vec(&bpart) {
                    Ok(j)
                } else {
                    Err(Error::invalid("relation does not map into the ideal"))
                }
            })
            .collect()
    }

    /// Structure invariants: a valid algebra, `J² = 0`, the `B`-action on
    /// `J` equals the module's, and the quotient is `B_t`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = self.algebra.violations();
        let n = self.quotient_dim();
        let d = self.ideal_dim();
        let s = &self.algebra;
        for a in 0..d {
            for b in 0..d {
                if !is_zero_vec(s.constant(n + a, n + b)) {
                    out.push(format!("ideal does not square to zero at ({a}, {b})"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (bp, _) = self.split(s.constant(a, b));
                if bp != self.quotient.algebra.constant(a, b) {
                    out.push(format!("quotient multiplication differs at ({a}, {b})"));
                }
            }
        }
        let images = self.section(None);
        for (v, img) in images.iter().enumerate() {
            let act = self.module.action(v);
            for t in 0..d {
                let mut e = s.zero();
                e[n + t] = s.field().one();
                let (bp, jp) = self.split(&s.mul(img, &e));
                if !is_zero_vec(&bp) || jp != act.column(t) {
                    out.push(format!("generator {v} does not act on the ideal as in J"));
                    break;
                }
            }
        }
        out
    }
}

fn model_acts_on(model: &Truncation, j: &FiniteModule) -> Vec<Matrix> {
    let f = model.gb.field();
    model
        .monomials
        .iter()
        .map(|m| j.act(&Polynomial::term(f, f.one(), m.clone())))
        .collect()
}

/// Realizes `E = P ⊕ J / (base relations ↦ base_values, f_j ↦ psi_j)` on the model.
///
/// `base_values` has one entry in `J` per base relation of `b`.
pub fn realize(
    b: &PresentedAlgebra,
    j: &FiniteModule,
    base_values: &[Vec<Scalar>],
    psi: &[Vec<Scalar>],
    model: &Truncation,
) -> Result<RealizedExtension> {
    let f = b.field();
    let n = b.nvars();
    let v = j.violations_over(b);
    if !v.is_empty() {
        return Err(Error::invalid(v.join("; ")));
    }
    let dj = j.dim();
    let mut inputs: Vec<Polynomial> = b.all_relations();
    let mut values: Vec<Vec<Scalar>> = base_values.to_vec();
    values.extend(psi.iter().cloned());
    if values.len() != inputs.len() || values.iter().any(|v| v.len() != dj) {
        return Err(Error::invalid("one value in J is needed per relation"));
    }
    if let Some(d) = model.degree {
        let rel: Vec<usize> = (b.n_base()..n).collect();
        for m in crate::algebra::monomials_of_degree(n, &rel, d) {
            let t = Polynomial::term(f, f.one(), m);
            if !j.act(&t).is_zero() {
                return Err(Error::invalid(format!("J is not a module over the truncation at degree {d}")));
            }
            inputs.push(t);
            values.push(j.zero_vector());
        }
    }
    let vecs: Vec<PolyVector> = inputs.iter().map(|p| vec![p.clone()]).collect();
    let tb = tracked_groebner(f, n, 1, &vecs, b.order(), false);
    let eval = |p: &Polynomial| -> Vec<Scalar> {
        let (h, r) = tb.express(std::slice::from_ref(p));
        let mut out: Vec<Scalar> = model.monomials.iter().map(|m| r[0].coefficient(m)).collect();
        let mut jv = j.zero_vector();
        for (hl, val) in h.iter().zip(&values) {
            if !hl.is_zero() && !is_zero_vec(val) {
                jv = vec_add(&jv, &j.act_on(hl, val));
            }
        }
        out.extend(jv);
        out
    };
    let nq = model.dim();
    let total = nq + dj;
    let acts = model_acts_on(model, j);
    let mut table = vec![vec![vec![f.zero(); total]; total]; total];
    for a in 0..nq {
        for c in a..nq {
            let prod = eval(&Polynomial::term(f, f.one(), model.monomials[a].mul(&model.monomials[c])));
            table[a][c] = prod.clone();
            table[c][a] = prod;
        }
        for t in 0..dj {
            let mut v = vec![f.zero(); nq];
            v.extend(acts[a].column(t));
            table[a][nq + t] = v.clone();
            table[nq + t][a] = v;
        }
    }
    let mut labels = model.algebra.labels().to_vec();
    labels.extend(j.labels().iter().map(|l| format!("j:{l}")));
    let algebra = StructureAlgebra::new(f, labels, table)?;
    let base_lifts = (0..b.n_base()).map(|i| eval(&b.var(i))).collect();
    let e = RealizedExtension {
        algebra,
        presentation: b.clone(),
        quotient: model.clone(),
        module: j.clone(),
        base_lifts,
    };
    let mut v = e.violations();
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| eval(&b.var(i))).collect();
    for (k, (p, val)) in inputs.iter().zip(&values).enumerate() {
        let got = e.evaluate(p, &images);
        if got[..nq].iter().any(|c| !c.is_zero()) || got[nq..] != val[..] {
            v.push(format!("relation {k} does not take its prescribed value"));
        }
    }
    if v.is_empty() {
        Ok(e)
    } else {
        Err(Error::invalid(format!("inconsistent extension data: {}", v.join("; "))))
    }
}

/// Splits a cochain of `C¹ = J^m` into one vector per relation.
pub fn split_cochain(v: &[Scalar], d: usize, count: usize) -> Vec<Vec<Scalar>> {
    (0..count).map(|i| v[i * d..(i + 1) * d].to_vec()).collect()
}

pub fn extension_from_cocycle(c: &CohomologyClass, model: &Truncation) -> Result<RealizedExtension> {
    if c.degree != 1 {
        return Err(Error::invalid("extensions come from degree-one cocycles"));
    }
    let k = &c.cochains;
    let b = &k.complex.algebra;
    let j = &k.module;
    let psi = split_cochain(&c.representative, j.dim(), b.relations().len());
    let zeros = vec![j.zero_vector(); b.base_relations().len()];
    realize(b, j, &zeros, &psi, model)
}

/// The cocycle of `E` with respect to the section `x_i ↦ (x_i, offset_i)`.
pub fn cocycle_from_extension(e: &RealizedExtension, cochains: &Arc<Cochains>, offsets: Option<&[Vec<Scalar>]>) -> Result<CohomologyClass> {
    let vals = e.relation_values(offsets)?;
    CohomologyClass::new(cochains.clone(), 1, vals.concat())
}

/// Builds the cochain complex of `(B, J)`.
pub fn cochains_for(b: &PresentedAlgebra, j: &FiniteModule) -> Result<Arc<Cochains>> {
    Ok(Arc::new(Cochains::new(build_ls(b)?, j.clone())?))
}

/// An isomorphism of extensions `(b, j) ↦ (b, j + h(b))` from `e1` to `e2`
/// that is the identity on `B_t` and on `J` and respects the base
/// structure maps. Returns `h(e_a)` for every basis vector of `B_t`.
pub fn extension_isomorphism(e1: &RealizedExtension, e2: &RealizedExtension) -> Option<Vec<Vec<Scalar>>> {
    let n = e1.quotient_dim();
    let d = e1.ideal_dim();
    if n != e2.quotient_dim() || d != e2.ideal_dim() || e1.base_lifts.len() != e2.base_lifts.len() {
        return None;
    }
    let f = e1.algebra.field();
    let s1 = &e1.algebra;
    let s2 = &e2.algebra;
    for a in 0..n + d {
        for c in 0..n + d {
            if a >= n && c >= n {
                continue;
            }
            let (b1, j1) = e1.split(s1.constant(a, c));
            let (b2, j2) = e2.split(s2.constant(a, c));
            if b1 != b2 || (a >= n || c >= n) && j1 != j2 {
                return None;
            }
        }
    }
    // unknowns h_1..h_{n-1} in J, stacked; h_0 = 0
    let unknowns = (n - 1) * d;
    let act = |a: usize| -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..d).map(|t| e1.split(s1.constant(a, n + t)).1).collect();
        Matrix::from_columns(f, d, &cols)
    };
    let acts: Vec<Matrix> = (0..n).map(act).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let add_block = |row: &mut Vec<Vec<Scalar>>, idx: usize, m: &Matrix, sign: &Scalar| {
        if idx == 0 {
            return;
        }
        for (t, r) in row.iter_mut().enumerate() {
            for u in 0..d {
                let c = m.get(t, u);
                if !c.is_zero() {
                    let pos = (idx - 1) * d + u;
                    r[pos] = &r[pos] + &(c * sign);
                }
            }
        }
    };
    let one = f.one();
    let minus = -f.one();
    let ident = Matrix::identity(f, d);
    for a in 0..n {
        for c in a..n {
            let (prod, j1) = e1.split(s1.constant(a, c));
            let (_, j2) = e2.split(s2.constant(a, c));
            // j2 - j1 = m_a h(m_c) + m_c h(m_a) - h(m_a m_c)
            let mut block = vec![vec![f.zero(); unknowns]; d];
            add_block(&mut block, c, &acts[a], &one);
            add_block(&mut block, a, &acts[c], &one);
            for (k, coef) in prod.iter().enumerate() {
                if !coef.is_zero() {
                    add_block(&mut block, k, &ident.scale(coef), &minus);
                }
            }
            rows.extend(block);
            rhs.extend(vec_sub(&j2, &j1));
        }
    }
    for (l1, l2) in e1.base_lifts.iter().zip(&e2.base_lifts) {
        let (b1, u1) = e1.split(l1);
        let (b2, u2) = e2.split(l2);
        if b1 != b2 {
            return None;
        }
        let mut block = vec![vec![f.zero(); unknowns]; d];
        for (k, coef) in b1.iter().enumerate() {
            if !coef.is_zero() {
                add_block(&mut block, k, &ident.scale(coef), &one);
            }
        }
        rows.extend(block);
        rhs.extend(vec_sub(&u2, &u1));
    }
    if unknowns == 0 {
        return is_zero_vec(&rhs).then(|| vec![vec![f.zero(); d]; n]);
    }
    if rows.is_empty() {
        return Some(vec![vec![f.zero(); d]; n]);
    }
    let m = Matrix::from_rows_with_cols(f, unknowns, rows).unwrap();
    let h = m.solve_affine(&rhs)?;
    let mut out = vec![vec![f.zero(); d]];
    out.extend(h.chunks(d).map(|c| c.to_vec()));
    Some(out)
}

/// Fibered product `E1 ×_B E2` on `B_t ⊕ J ⊕ J`.
pub fn fibered_product(e1: &RealizedExtension, e2: &RealizedExtension) -> Result<(StructureAlgebra, Vec<Vec<Scalar>>)> {
    let n = e1.quotient_dim();
    let d = e1.ideal_dim();
    if n != e2.quotient_dim() || d != e2.ideal_dim() || e1.module != e2.module {
        return Err(Error::invalid("extensions of different (B, J)"));
    }
    let f = e1.algebra.field();
    let total = n + 2 * d;
    let embed = |v: &[Scalar], which: usize| -> Vec<Scalar> {
        let mut out = vec![f.zero(); total];
        out[..n].clone_from_slice(&v[..n]);
        let off = n + which * d;
        out[off..off + d].clone_from_slice(&v[n..]);
        out
    };
    let mut table = vec![vec![vec![f.zero(); total]; total]; total];
    for a in 0..total {
        for c in 0..total {
            let (ia, wa) = if a < n { (a, 2) } else { (n + (a - n) % d, (a - n) / d) };
            let (ic, wc) = if c < n { (c, 2) } else { (n + (c - n) % d, (c - n) / d) };
            if wa != 2 && wc != 2 {
                continue;
            }
            let which = if wa != 2 { wa } else { wc };
            if wa == 2 && wc == 2 {
                let p1 = e1.algebra.constant(ia, ic);
                let p2 = e2.algebra.constant(ia, ic);
                if p1[..n] != p2[..n] {
                    return Err(Error::invalid("quotient multiplications differ"));
                }
                let mut v = embed(p1, 0);
                v[n + d..].clone_from_slice(&p2[n..]);
                table[a][c] = v;
            } else {
                let e = if which == 0 { e1 } else { e2 };
                table[a][c] = embed(e.algebra.constant(ia, ic), which);
            }
        }
    }
    let mut labels = e1.quotient.algebra.labels().to_vec();
    for w in 1..=2 {
        labels.extend(e1.module.labels().iter().map(|l| format!("j{w}:{l}")));
    }
    let algebra = StructureAlgebra::new(f, labels, table)?;
    let mut lifts = Vec::new();
    for (l1, l2) in e1.base_lifts.iter().zip(&e2.base_lifts) {
        if l1[..n] != l2[..n] {
            return Err(Error::invalid("base structure maps differ on the quotient"));
        }
        let mut v = embed(l1, 0);
        v[n + d..].clone_from_slice(&l2[n..]);
        lifts.push(v);
    }
    Ok((algebra, lifts))
}

/// Sum (`sign = +1`) or difference (`sign = -1`) of two extensions through
/// the fibered product and the pushout along `J × J → J`.
pub fn geometric_combination(e1: &RealizedExtension, e2: &RealizedExtension, subtract: bool) -> Result<RealizedExtension> {
    let (prod, lifts) = fibered_product(e1, e2)?;
    let n = e1.quotient_dim();
    let d = e1.ideal_dim();
    let f = prod.field();
    // kernel of (j1, j2) ↦ j1 ± j2
    let second = if subtract { f.one() } else { -f.one() };
    let ideal: Vec<Vec<Scalar>> = (0..d)
        .map(|t| {
            let mut v = prod.zero();
            v[n + t] = f.one();
            v[n + d + t] = second.clone();
            v
        })
        .collect();
    let q = prod.quotient(&ideal)?;
    if q.algebra.dim() != n + d {
        return Err(Error::invalid("pushout has the wrong dimension"));
    }
    let base_lifts = lifts.iter().map(|l| q.projection.mul_vec(l)).collect();
    let mut labels = e1.quotient.algebra.labels().to_vec();
    labels.extend(e1.module.labels().iter().map(|l| format!("j:{l}")));
    let algebra = StructureAlgebra::new(f, labels, q.algebra.table().to_vec())?;
    Ok(RealizedExtension {
        algebra,
        presentation: e1.presentation.clone(),
        quotient: e1.quotient.clone(),
        module: e1.module.clone(),
        base_lifts,
    })
}

pub fn baer_sum(e1: &RealizedExtension, e2: &RealizedExtension) -> Result<RealizedExtension> {
    geometric_combination(e1, e2, false)
}

pub fn difference_extension(e1: &RealizedExtension, e2: &RealizedExtension) -> Result<RealizedExtension> {
    geometric_combination(e1, e2, true)
}

/// The cocycle route: realize `ψ1 ± ψ2`.
pub fn cocycle_combination(c1: &CohomologyClass, c2: &CohomologyClass, subtract: bool) -> Result<CohomologyClass> {
    if !Arc::ptr_eq(&c1.cochains, &c2.cochains) && c1.cochains.module != c2.cochains.module {
        return Err(Error::invalid("classes of different (B, J)"));
    }
    let v = if subtract {
        vec_sub(&c1.representative, &c2.representative)
    } else {
        vec_add(&c1.representative, &c2.representative)
    };
    CohomologyClass::new(c1.cochains.clone(), c1.degree, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ls::is_coboundary;
    use crate::scalar::Field;

    fn dual(f: Field) -> PresentedAlgebra {
        PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap()
    }

    #[test]
    fn trivial_extension_multiplication() {
        let f = Field::Prime(2);
        let b = dual(f);
        let j = FiniteModule::residue_field(&b);
        let k = cochains_for(&b, &j).unwrap();
        let model = quotient_model(&b, None).unwrap();
        let e = extension_from_cocycle(&CohomologyClass::new(k, 1, vec![f.zero()]).unwrap(), &model).unwrap();
        assert!(e.violations().is_empty());
        // x * x = 0 in the trivial extension
        assert!(is_zero_vec(e.algebra.constant(1, 1)));
    }

    #[test]
    fn nonzero_class_gives_the_cube() {
        let f = Field::Prime(2);
        let b = dual(f);
        let j = FiniteModule::residue_field(&b);
        let k = cochains_for(&b, &j).unwrap();
        let model = quotient_model(&b, None).unwrap();
        let e = extension_from_cocycle(&CohomologyClass::new(k.clone(), 1, vec![f.one()]).unwrap(), &model).unwrap();
        // the map x ↦ x identifies E with F2[x]/(x^3): x*x is the generator of J
        assert_eq!(e.algebra.constant(1, 1), &[f.zero(), f.zero(), f.one()]);
        let c = cocycle_from_extension(&e, &k, None).unwrap();
        assert!(is_coboundary(&c).is_none());
        let twice = cocycle_combination(&c, &c, false).unwrap();
        assert!(is_coboundary(&twice).is_some());
    }

    #[test]
    fn geometric_and_cocycle_baer_sums_agree() {
        let f = Field::Prime(3);
        let b = dual(f);
        let j = FiniteModule::residue_field(&b);
        let k = cochains_for(&b, &j).unwrap();
        let model = quotient_model(&b, None).unwrap();
        let class = |v: i64| CohomologyClass::new(k.clone(), 1, vec![f.from_i64(v)]).unwrap();
        for a in 0..3 {
            for c in 0..3 {
                let e1 = extension_from_cocycle(&class(a), &model).unwrap();
                let e2 = extension_from_cocycle(&class(c), &model).unwrap();
                let geo = baer_sum(&e1, &e2).unwrap();
                assert!(geo.violations().is_empty());
                let alg = extension_from_cocycle(&cocycle_combination(&class(a), &class(c), false).unwrap(), &model).unwrap();
                assert!(extension_isomorphism(&geo, &alg).is_some());
                let diff = difference_extension(&e1, &e2).unwrap();
                let alg = extension_from_cocycle(&class(a - c), &model).unwrap();
                assert!(extension_isomorphism(&diff, &alg).is_some());
                assert_eq!(extension_isomorphism(&e1, &e2).is_some(), a == c);
            }
        }
    }

    #[test]
    fn section_choice_changes_cocycle_by_a_coboundary() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let model = quotient_model(&b, None).unwrap();
        let j = FiniteModule::regular(&b, &model);
        let k = cochains_for(&b, &j).unwrap();
        let z1 = crate::ls::t_module_from(&k, 1);
        let rep = z1.representatives.column(0);
        let e = extension_from_cocycle(&CohomologyClass::new(k.clone(), 1, rep).unwrap(), &model).unwrap();
        let c0 = cocycle_from_extension(&e, &k, None).unwrap();
        let offsets = vec![j.basis_vector(0), j.basis_vector(2)];
        let c1 = cocycle_from_extension(&e, &k, Some(&offsets)).unwrap();
        assert_ne!(c0.representative, c1.representative);
        let diff = cocycle_combination(&c0, &c1, true).unwrap();
        assert!(is_coboundary(&diff).is_some());
    }

    #[test]
    fn node_realized_on_truncation() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x", "y"], &["x*y"]).unwrap();
        let model = quotient_model(&b, Some(4)).unwrap();
        assert_eq!(model.dim(), 7);
        let j = FiniteModule::residue_field(&b);
        let k = cochains_for(&b, &j).unwrap();
        let e = extension_from_cocycle(&CohomologyClass::new(k.clone(), 1, vec![f.one()]).unwrap(), &model).unwrap();
        assert!(e.violations().is_empty());
        assert_eq!(cocycle_from_extension(&e, &k, None).unwrap().representative, vec![f.one()]);
    }
}
