use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraHom, Element, FiniteModule, PresentedAlgebra, Quotient, StructureAlgebra};
use crate::differential::{derivation_space, jacobian_map, Derivation};
use crate::error::{Error, Result};
use crate::ls::{build_ls, Cochains, CohomologyClass};
use crate::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, Matrix};
use crate::scalar::Scalar;

/// Lifting `u: B → C` along a square-zero extension `C′ → C = C′/J`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub source: PresentedAlgebra,
    pub cover: StructureAlgebra,
    /// Basis of the ideal `J ⊂ C′`.
    pub ideal: Vec<Vec<Scalar>>,
    pub quotient: Quotient,
    /// `u(x_i) ∈ C`.
    pub images: Vec<Vec<Scalar>>,
    ideal_matrix: Matrix,
}

impl LiftProblem {
    pub fn new(source: PresentedAlgebra, cover: StructureAlgebra, ideal: Vec<Vec<Scalar>>, images: Vec<Vec<Scalar>>) -> Result<LiftProblem> {
        if source.n_base() > 0 {
            return Err(Error::invalid("lift problems take algebras presented over the ground field"));
        }
        let v = cover.violations();
        if !v.is_empty() {
            return Err(Error::invalid(v.join("; ")));
        }
        let f = cover.field();
        let ideal_matrix = Matrix::from_columns(f, cover.dim(), &ideal);
        if ideal_matrix.rank() != ideal.len() {
            return Err(Error::invalid("ideal basis is not linearly independent"));
        }
        for a in &ideal {
            for b in &ideal {
                if !is_zero_vec(&cover.mul(a, b)) {
                    return Err(Error::invalid("ideal does not square to zero"));
                }
            }
        }
        let quotient = cover.quotient(&ideal)?;
        let p = LiftProblem {
            source,
            cover,
            ideal,
            quotient,
            images,
            ideal_matrix,
        };
        p.base_hom()?;
        Ok(p)
    }

    /// The given map `u: B → C`.
    pub fn base_hom(&self) -> Result<AlgebraHom> {
        AlgebraHom::new(
            Algebra::Presented(self.source.clone()),
            Algebra::Structure(self.quotient.algebra.clone()),
            self.images.iter().cloned().map(Element::Vector).collect(),
        )
    }

    /// `c̃_i`: the images lifted through the linear section of `C′ → C`.
    pub fn section_lifts(&self) -> Vec<Vec<Scalar>> {
        self.images.iter().map(|c| self.quotient.section.mul_vec(c)).collect()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.len()
    }

    /// Coordinates of an element of `J` in the ideal basis.
    pub fn ideal_coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.ideal_matrix.solve_affine(v)
    }

    pub fn embed(&self, j: &[Scalar]) -> Vec<Scalar> {
        self.ideal_matrix.mul_vec(j)
    }

    /// `J` as a `B`-module through `u`.
    pub fn module(&self) -> FiniteModule {
        let f = self.cover.field();
        let d = self.ideal_dim();
        let actions = self
            .section_lifts()
            .iter()
            .map(|c| {
                let cols: Vec<Vec<Scalar>> = self
                    .ideal
                    .iter()
                    .map(|e| self.ideal_coordinates(&self.cover.mul(c, e)).expect("J is an ideal"))
                    .collect();
                Matrix::from_columns(f, d, &cols)
            })
            .collect();
        let labels = (0..d).map(|t| format!("j{t}")).collect();
        FiniteModule::new(f, labels, actions).expect("square action matrices")
    }

    pub fn cochains(&self) -> Result<Arc<Cochains>> {
        Ok(Arc::new(Cochains::new(build_ls(&self.source)?, self.module())?))
    }

    fn evaluate(&self, p: &crate::poly::Polynomial, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        let s = &self.cover;
        p.evaluate(images, s.one(), s.zero(), |a, b| vec_add(a, b), |a, b| s.mul(a, b), |a, c| vec_scale(a, c))
    }

    /// `φ_j = f_j(c̃) ∈ J`, flattened relation-major.
    pub fn obstruction_cocycle(&self) -> Vec<Scalar> {
        let lifts = self.section_lifts();
        self.source
            .relations()
            .iter()
            .flat_map(|f| self.ideal_coordinates(&self.evaluate(f, &lifts)).expect("relation defect lies in J"))
            .collect()
    }

    /// Whether a map `x_i ↦ images[i]` into `C′` is an algebra map lifting `u`.
    pub fn is_lift(&self, images: &[Vec<Scalar>]) -> bool {
        let h = AlgebraHom {
            source: Algebra::Presented(self.source.clone()),
            target: Algebra::Structure(self.cover.clone()),
            images: images.iter().cloned().map(Element::Vector).collect(),
        };
        h.violations().is_empty() && images.iter().zip(&self.images).all(|(c, u)| self.quotient.projection.mul_vec(c) == *u)
    }

    /// The derivation `ℓ1 − ℓ2` between two lifts.
    pub fn difference(&self, l1: &[Vec<Scalar>], l2: &[Vec<Scalar>]) -> Option<Derivation> {
        let images = l1
            .iter()
            .zip(l2)
            .map(|(a, b)| self.ideal_coordinates(&vec_sub(a, b)))
            .collect::<Option<Vec<_>>>()?;
        Some(Derivation {
            algebra: self.source.clone(),
            module: self.module(),
            images,
        })
    }

    /// `ℓ + d`.
    pub fn translate(&self, lift: &[Vec<Scalar>], d: &Derivation) -> Vec<Vec<Scalar>> {
        lift.iter().zip(&d.images).map(|(c, j)| vec_add(c, &self.embed(j))).collect()
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Obstructed { class: CohomologyClass },
    Lifts { particular: AlgebraHom, freedom: Vec<Derivation> },
}

impl LiftOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, LiftOutcome::Lifts { .. })
    }
}

pub fn lift_homomorphism(p: &LiftProblem) -> Result<LiftOutcome> {
    let cochains = p.cochains()?;
    let phi = p.obstruction_cocycle();
    let j = &cochains.module;
    let d0 = jacobian_map(&p.source, j);
    let class = CohomologyClass::new(cochains.clone(), 1, phi.clone())?;
    let Some(v) = d0.solve_affine(&phi) else {
        return Ok(LiftOutcome::Obstructed { class });
    };
    let d = j.dim();
    let images: Vec<Vec<Scalar>> = p
        .section_lifts()
        .iter()
        .enumerate()
        .map(|(i, c)| vec_sub(c, &p.embed(&v[i * d..(i + 1) * d])))
        .collect();
    if !p.is_lift(&images) {
        return Err(Error::invalid("computed lift failed verification"));
    }
    let particular = AlgebraHom {
        source: Algebra::Presented(p.source.clone()),
        target: Algebra::Structure(p.cover.clone()),
        images: images.into_iter().map(Element::Vector).collect(),
    };
    Ok(LiftOutcome::Lifts {
        particular,
        freedom: derivation_space(&p.source, j),
    })
}

/// All lifts over a finite field, as `particular + Σ c_k d_k`.
pub fn all_lifts(p: &LiftProblem, outcome: &LiftOutcome) -> Vec<Vec<Vec<Scalar>>> {
    let LiftOutcome::Lifts { particular, freedom } = outcome else {
        return Vec::new();
    };
    let f = p.cover.field();
    let base: Vec<Vec<Scalar>> = particular
        .images
        .iter()
        .map(|e| match e {
            Element::Vector(v) => v.clone(),
            Element::Poly(_) => unreachable!("structure target"),
        })
        .collect();
    crate::algebra::all_vectors(f, freedom.len())
        .map(|coeffs| {
            let mut lift = base.clone();
            for (c, d) in coeffs.iter().zip(freedom) {
                let scaled = Derivation {
                    images: d.images.iter().map(|v| vec_scale(v, c)).collect(),
                    ..d.clone()
                };
                lift = p.translate(&lift, &scaled);
            }
            lift
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite_structure;
    use crate::scalar::Field;

    fn structure(f: Field, vars: &[&str], rels: &[&str]) -> StructureAlgebra {
        finite_structure(&PresentedAlgebra::over_field(f, vars, rels).unwrap()).unwrap().algebra
    }

    #[test]
    fn dual_numbers_into_dual_numbers_over_the_field() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let cover = structure(f, &["t"], &["t^2"]);
        let p = LiftProblem::new(b, cover.clone(), vec![cover.basis(1)], vec![vec![f.zero()]]).unwrap();
        let out = lift_homomorphism(&p).unwrap();
        let lifts = all_lifts(&p, &out);
        assert_eq!(lifts.len(), 2);
        assert!(lifts.iter().all(|l| p.is_lift(l)));
        assert!(p.difference(&lifts[0], &lifts[1]).unwrap().violations().is_empty());
    }

    #[test]
    fn squaring_obstruction_in_characteristic_two() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let cover = structure(f, &["u"], &["u^4"]);
        // basis 1, u, u^2, u^3; ideal (u^2)
        let p = LiftProblem::new(b, cover.clone(), vec![cover.basis(2), cover.basis(3)], vec![vec![f.zero(), f.one()]]).unwrap();
        let out = lift_homomorphism(&p).unwrap();
        assert!(!out.is_solvable());
        if let LiftOutcome::Obstructed { class } = out {
            assert!(crate::ls::is_coboundary(&class).is_none());
        }
    }

    #[test]
    fn free_source_always_lifts() {
        let f = Field::Prime(3);
        let b = PresentedAlgebra::over_field(f, &["x"], &[]).unwrap();
        let cover = structure(f, &["u"], &["u^3"]);
        let p = LiftProblem::new(b, cover.clone(), vec![cover.basis(2)], vec![vec![f.zero(), f.one()]]).unwrap();
        let out = lift_homomorphism(&p).unwrap();
        assert_eq!(all_lifts(&p, &out).len(), 3);
    }
}
