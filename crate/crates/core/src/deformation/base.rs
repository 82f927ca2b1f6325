use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::extension::{realize, split_cochain, RealizedExtension};
use crate::algebra::{FiniteModule, PresentedAlgebra, Truncation};
use crate::error::{Error, Result};
use crate::ls::{build_ls, Cochains, CohomologyClass, TModule};
use crate::matrix::{is_zero_vec, vec_add, vec_sub};
use crate::poly::parse::parse_with_names;
use crate::poly::{dot, syzygies_modulo, tracked_groebner, GroebnerBasis, PolyVector, Polynomial};
use crate::scalar::Scalar;

/// Deforming `B` over `A = A′/I` to `A′`, with `I² = 0`, along `φ: I → J`.
///
/// `A′ = k[y]/(g′)` and `I` is generated by `ι_1..ι_r`; the stored
/// presentation of `B` has base relations `g′` followed by `ι`.
#[derive(Clone, Debug)]
pub struct BaseDeformationProblem {
    pub extended_base: Vec<Polynomial>,
    pub ideal_generators: Vec<Polynomial>,
    pub algebra: PresentedAlgebra,
    pub module: FiniteModule,
    /// `φ(ι_l)`.
    pub phi: Vec<Vec<Scalar>>,
}

/// Choice of lifts of the relations and of the relation syzygies to `A′[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationLift {
    /// The stored representatives themselves.
    Deterministic,
    /// Stored representatives plus random multiples of the `ι`.
    Random(u64),
}

impl BaseDeformationProblem {
    /// Builds the problem; `g′` is enlarged by the products `ι_a ι_b` so that `I² = 0`.
    pub fn new(
        base_vars: Vec<String>,
        extended_base: Vec<Polynomial>,
        ideal_generators: Vec<Polynomial>,
        vars: Vec<String>,
        relations: Vec<Polynomial>,
        module: FiniteModule,
        phi: Vec<Vec<Scalar>>,
    ) -> Result<BaseDeformationProblem> {
        let field = module.field();
        let n = base_vars.len() + vars.len();
        let order = crate::poly::MonomialOrder::grevlex(n);
        let mut g = extended_base;
        let gb = GroebnerBasis::ideal(field, n, &g, &order);
        let mut squares = Vec::new();
        for (a, i) in ideal_generators.iter().enumerate() {
            for k in &ideal_generators[a..] {
                let p = i.mul(k);
                if !gb.contains(&p) {
                    squares.push(p);
                }
            }
        }
        g.extend(squares);
        let mut base = g.clone();
        base.extend(ideal_generators.iter().cloned());
        let algebra = PresentedAlgebra::new(field, base_vars, base, vars, relations)?;
        let p = BaseDeformationProblem {
            extended_base: g,
            ideal_generators,
            algebra,
            module,
            phi,
        };
        let v = p.violations();
        if v.is_empty() {
            Ok(p)
        } else {
            Err(Error::invalid(v.join("; ")))
        }
    }

    /// Parses the problem from relation strings over the given names.
    #[allow(clippy::too_many_arguments)]
    pub fn parse(
        base_vars: &[&str],
        extended_base: &[&str],
        ideal: &[&str],
        vars: &[&str],
        relations: &[&str],
        module: FiniteModule,
        phi: Vec<Vec<Scalar>>,
    ) -> Result<BaseDeformationProblem> {
        let f = module.field();
        let names: Vec<String> = base_vars.iter().chain(vars).map(|s| s.to_string()).collect();
        let base_names: Vec<String> = base_vars.iter().map(|s| s.to_string()).collect();
        let positions: Vec<usize> = (0..base_vars.len()).collect();
        let base_poly = |s: &&str| parse_with_names(s, f, &base_names).map(|p| p.embed(names.len(), &positions));
        let g = extended_base.iter().map(base_poly).collect::<Result<Vec<_>>>()?;
        let iota = ideal.iter().map(base_poly).collect::<Result<Vec<_>>>()?;
        let rels = relations.iter().map(|s| parse_with_names(s, f, &names)).collect::<Result<Vec<_>>>()?;
        BaseDeformationProblem::new(base_names, g, iota, vars.iter().map(|s| s.to_string()).collect(), rels, module, phi)
    }

    pub fn field(&self) -> crate::scalar::Field {
        self.algebra.field()
    }

    /// Values of the base relations `g′, ι` in `J`: zero on `g′`, `φ` on `ι`.
    pub fn base_values(&self) -> Vec<Vec<Scalar>> {
        let mut v = vec![self.module.zero_vector(); self.extended_base.len()];
        v.extend(self.phi.iter().cloned());
        v
    }

    pub fn violations(&self) -> Vec<String> {
        let b = &self.algebra;
        let mut out = b.violations();
        out.extend(self.module.violations_over(b));
        if self.phi.len() != self.ideal_generators.len() || self.phi.iter().any(|v| v.len() != self.module.dim()) {
            out.push("phi needs one value in J per generator of I".into());
            return out;
        }
        if !out.is_empty() {
            return out;
        }
        // φ is well defined and A-linear: every relation Σ b_l ι_l ∈ (g′) maps to zero
        let f = b.field();
        let n = b.nvars();
        if !self.ideal_generators.is_empty() {
            let vecs: Vec<PolyVector> = self.ideal_generators.iter().map(|p| vec![p.clone()]).collect();
            for s in syzygies_modulo(f, n, 1, &vecs, &self.extended_base, b.order()) {
                let mut acc = self.module.zero_vector();
                for (c, val) in s.iter().zip(&self.phi) {
                    acc = vec_add(&acc, &self.module.act_on(c, val));
                }
                if !is_zero_vec(&acc) {
                    out.push("phi is not A-linear on I".into());
                    break;
                }
            }
        }
        out
    }

    pub fn cochains(&self) -> Result<Arc<Cochains>> {
        Ok(Arc::new(Cochains::new(build_ls(&self.algebra)?, self.module.clone())?))
    }

    /// Lifts `F_j` of the relations and the lifted relation syzygies.
    fn lifts(&self, complex: &crate::ls::LSComplex, choice: RelationLift) -> (Vec<Polynomial>, Vec<PolyVector>) {
        let rels = self.algebra.relations().to_vec();
        let syz = complex.syzygies.clone();
        let RelationLift::Random(seed) = choice else {
            return (rels, syz);
        };
        if self.ideal_generators.is_empty() {
            return (rels, syz);
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let f = self.field();
        let n = self.algebra.nvars();
        let random_multiple = |rng: &mut StdRng| -> Polynomial {
            let mut acc = Polynomial::zero(f, n);
            for iota in &self.ideal_generators {
                let mut r = Polynomial::zero(f, n);
                for m in crate::poly::syzygy::monomials_up_to(n, 1) {
                    let c = f.from_i64(rng.gen_range(-3..=3));
                    r.add_term(m, c);
                }
                acc = acc.add(&r.mul(iota));
            }
            acc
        };
        let rels = rels.iter().map(|r| r.add(&random_multiple(&mut rng))).collect();
        let syz = syz
            .iter()
            .map(|s| s.iter().map(|e| e.add(&random_multiple(&mut rng))).collect())
            .collect();
        (rels, syz)
    }

    /// The obstruction cochain `o ∈ C²`: for each generator `s` of `L₂`,
    /// `Σ s̃_j F_j` lies in `I·A′[x]` and is pushed to `J` through `φ`.
    pub fn obstruction_cochain(&self, cochains: &Cochains, choice: RelationLift) -> Result<Vec<Scalar>> {
        let complex = &cochains.complex;
        let b = &self.algebra;
        let f = b.field();
        let n = b.nvars();
        let (rels, syz) = self.lifts(complex, choice);
        let base = b.base_relations().to_vec();
        let vecs: Vec<PolyVector> = base.iter().map(|p| vec![p.clone()]).collect();
        let tb = tracked_groebner(f, n, 1, &vecs, b.order(), false);
        let values = self.base_values();
        let mut out = Vec::new();
        for (k, s) in syz.iter().enumerate() {
            let w = dot(s, &rels);
            let Some(h) = tb.lift(std::slice::from_ref(&w)) else {
                return Err(Error::invalid(format!("relation syzygy {k} does not lift into I")));
            };
            let mut acc = self.module.zero_vector();
            for (hl, val) in h.iter().zip(&values) {
                if !hl.is_zero() && !is_zero_vec(val) {
                    acc = vec_add(&acc, &self.module.act_on(hl, val));
                }
            }
            if k < complex.koszul_count && !is_zero_vec(&acc) {
                return Err(Error::invalid("obstruction does not vanish on a Koszul relation"));
            }
            out.extend(acc);
        }
        if !cochains.is_cocycle(2, &out) {
            return Err(Error::invalid("obstruction cochain violates the second syzygies"));
        }
        Ok(out)
    }

    /// Shift between the cocycle conventions of two relation lifts: with
    /// `F_j = f_j + Σ r_jl ι_l`, a solution for `f` has `ψ_F = ψ_f + r·φ`.
    pub fn obstruction_class(&self, seed: u64) -> Result<ObstructionReport> {
        let cochains = self.cochains()?;
        let o = self.obstruction_cochain(&cochains, RelationLift::Deterministic)?;
        let o2 = self.obstruction_cochain(&cochains, RelationLift::Random(seed))?;
        let diff = vec_sub(&o, &o2);
        let lifts_agree = cochains.d1.solve_affine(&diff).is_some();
        let class = CohomologyClass::new(cochains.clone(), 2, o.clone())?;
        let witness = cochains.d1.solve_affine(&o);
        Ok(ObstructionReport {
            class,
            witness,
            lifts_agree,
        })
    }

    /// Solutions `B′` exist iff the obstruction vanishes; a solution is
    /// realized on the finite model of `B`.
    pub fn realize(&self, model: &Truncation, seed: u64) -> Result<DeformationOutcome> {
        let report = self.obstruction_class(seed)?;
        let Some(psi) = report.witness.clone() else {
            return Ok(DeformationOutcome::Obstructed { report });
        };
        let extension = self.realize_with(&psi, model)?;
        Ok(DeformationOutcome::Solved { report, psi, extension })
    }

    /// Realizes the solution whose relation values are `psi` (requires `d¹ψ = o`).
    pub fn realize_with(&self, psi: &[Scalar], model: &Truncation) -> Result<RealizedExtension> {
        let d = self.module.dim();
        let m = self.algebra.relations().len();
        let e = realize(&self.algebra, &self.module, &self.base_values(), &split_cochain(psi, d, m), model)?;
        let v = self.solution_violations(&e);
        if v.is_empty() {
            Ok(e)
        } else {
            Err(Error::invalid(v.join("; ")))
        }
    }

    /// Checks that `e` completes the diagram: `A′ → B′` is a ring map over
    /// `A → B`, and `I → J` is `φ`.
    pub fn solution_violations(&self, e: &RealizedExtension) -> Vec<String> {
        let mut out = e.violations();
        let nb = self.algebra.n_base();
        if e.base_lifts.len() != nb {
            out.push("wrong number of base images".into());
            return out;
        }
        let n = e.quotient_dim();
        let mut images = e.base_lifts.clone();
        images.extend(e.section(None).into_iter().skip(nb));
        for (i, l) in e.base_lifts.iter().enumerate() {
            if l[..n] != e.quotient.coordinates(&self.algebra.var(i))[..] {
                out.push(format!("base generator {i} does not lie over its image in B"));
            }
        }
        for (k, g) in self.extended_base.iter().enumerate() {
            if !is_zero_vec(&e.evaluate(g, &images)) {
                out.push(format!("relation {k} of the extended base does not hold"));
            }
        }
        for (l, (iota, val)) in self.ideal_generators.iter().zip(&self.phi).enumerate() {
            let v = e.evaluate(iota, &images);
            if !is_zero_vec(&v[..n]) || v[n..] != val[..] {
                out.push(format!("generator {l} of I does not map to phi"));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub class: CohomologyClass,
    /// `ψ` with `d¹ψ = o`, when the class vanishes.
    pub witness: Option<Vec<Scalar>>,
    /// Whether a second, randomized choice of lifts gave the same class.
    pub lifts_agree: bool,
}

impl ObstructionReport {
    pub fn is_zero(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug)]
pub enum DeformationOutcome {
    Obstructed { report: ObstructionReport },
    Solved { report: ObstructionReport, psi: Vec<Scalar>, extension: RealizedExtension },
}

/// Relation values of a solution with respect to the standard section; two
/// solutions differ by a degree-one cocycle.
pub fn solution_cochain(e: &RealizedExtension) -> Result<Vec<Scalar>> {
    Ok(e.relation_values(None)?.concat())
}

/// Translates `psi` by each class of `T¹`, giving one solution per class.
pub fn twisted_solutions(p: &BaseDeformationProblem, psi: &[Scalar], t1: &TModule, model: &Truncation) -> Result<Vec<(Vec<Scalar>, RealizedExtension)>> {
    let f = p.field();
    if f.order().is_none() {
        return Err(Error::invalid("twisting enumerates classes only over a finite field"));
    }
    let mut out = Vec::new();
    for coeffs in crate::algebra::all_vectors(f, t1.dim) {
        let shift = t1.representatives.mul_vec(&coeffs);
        let v = vec_add(psi, &shift);
        out.push((coeffs, p.realize_with(&v, model)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::quotient_model;
    use crate::scalar::Field;

    fn residue(p: &PresentedAlgebra) -> FiniteModule {
        FiniteModule::residue_field(p)
    }

    #[test]
    fn zero_ideal_is_exal() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let p = BaseDeformationProblem::parse(&[], &[], &[], &["x"], &["x^2"], residue(&b), vec![]).unwrap();
        let r = p.obstruction_class(1).unwrap();
        assert!(r.is_zero() && r.lifts_agree);
        let model = quotient_model(&p.algebra, None).unwrap();
        let DeformationOutcome::Solved { psi, .. } = p.realize(&model, 1).unwrap() else { panic!() };
        let t1 = crate::ls::t_module_from(&p.cochains().unwrap(), 1);
        assert_eq!(twisted_solutions(&p, &psi, &t1, &model).unwrap().len(), 2);
    }

    #[test]
    fn free_algebra_over_dual_numbers_deforms() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::parse(f, &["e"], &["e"], &["x"], &[]).unwrap();
        let model = quotient_model(&b, Some(2)).unwrap();
        let j = FiniteModule::regular(&b, &model);
        let phi = vec![j.basis_vector(0)];
        let p = BaseDeformationProblem::parse(&["e"], &["e^2"], &["e"], &["x"], &[], j, phi).unwrap();
        let DeformationOutcome::Solved { extension, .. } = p.realize(&model, 3).unwrap() else { panic!("free algebras deform") };
        assert!(p.solution_violations(&extension).is_empty());
    }

    #[test]
    fn phi_must_be_linear() {
        let f = Field::Prime(2);
        // I = (t) in k[t]/(t^3) with I^2 = 0 forced; J = k with t acting as zero
        let b = PresentedAlgebra::parse(f, &["t"], &["t^2", "t"], &["x"], &["x^2"]).unwrap();
        let j = residue(&b);
        assert!(BaseDeformationProblem::parse(&["t"], &["t^3"], &["t"], &["x"], &["x^2"], j, vec![vec![f.one()]]).is_ok());
    }

    #[test]
    fn torsion_relation_is_obstructed() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::parse(f, &["t"], &["t^3", "t^2"], &["x"], &["t*x - t"]).unwrap();
        let j = residue(&b);
        let p = BaseDeformationProblem::parse(&["t"], &["t^3"], &["t^2"], &["x"], &["t*x - t"], j, vec![vec![f.one()]]).unwrap();
        for seed in 0..4 {
            let r = p.obstruction_class(seed).unwrap();
            assert!(!r.is_zero());
            assert!(r.lifts_agree);
        }
        let model = quotient_model(&p.algebra, None).unwrap();
        assert!(matches!(p.realize(&model, 0).unwrap(), DeformationOutcome::Obstructed { .. }));
    }

    #[test]
    fn killing_the_parameter_is_obstructed() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::parse(f, &["t"], &["t^3", "t^2"], &["x"], &["t", "x^2"]).unwrap();
        let p = BaseDeformationProblem::parse(&["t"], &["t^3"], &["t^2"], &["x"], &["t", "x^2"], residue(&b), vec![vec![f.one()]]).unwrap();
        let r = p.obstruction_class(7).unwrap();
        assert!(!r.is_zero() && r.lifts_agree);
        let q = BaseDeformationProblem::parse(&["t"], &["t^3"], &["t^2"], &["x"], &["t", "x^2"], residue(&b), vec![vec![f.zero()]]).unwrap();
        assert!(q.obstruction_class(7).unwrap().is_zero());
    }
}
