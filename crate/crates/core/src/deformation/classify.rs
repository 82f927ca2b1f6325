use std::sync::Arc;

use super::extension::{extension_from_cocycle, extension_isomorphism, RealizedExtension};
use crate::algebra::{all_vectors, FiniteModule, PresentedAlgebra, Truncation};
use crate::error::Result;
use crate::ls::{build_ls, t_module_from, Cochains, CohomologyClass, TModule};
use crate::scalar::Scalar;

/// Isomorphism classes of `Exal(B, J)`, indexed by coordinates in `T¹`.
#[derive(Clone, Debug)]
pub struct ExalClassification {
    pub cochains: Arc<Cochains>,
    pub t1: TModule,
    /// One extension per class over a finite field; `None` over `Q`.
    pub representatives: Option<Vec<(Vec<Scalar>, RealizedExtension)>>,
}

impl ExalClassification {
    pub fn class_count(&self) -> Option<u128> {
        let q = self.cochains.module.field().order()? as u128;
        Some(q.pow(self.t1.dim as u32))
    }

    /// The cocycle `Σ c_k r_k` for coordinates `c` in `T¹`.
    pub fn class(&self, coeffs: &[Scalar]) -> Result<CohomologyClass> {
        CohomologyClass::new(self.cochains.clone(), 1, self.t1.representatives.mul_vec(coeffs))
    }

    /// Coordinates in `T¹` of a degree-one cocycle.
    pub fn coordinates(&self, c: &CohomologyClass) -> Option<Vec<Scalar>> {
        let r = &self.t1.representatives;
        let m = if self.t1.coboundaries.cols() == 0 { r.clone() } else { r.hstack(&self.t1.coboundaries) };
        let sol = m.solve_affine(&c.representative)?;
        Some(sol[..self.t1.dim].to_vec())
    }
}

pub fn exal_classify(b: &PresentedAlgebra, j: &FiniteModule, model: &Truncation) -> Result<ExalClassification> {
    let cochains = Arc::new(Cochains::new(build_ls(b)?, j.clone())?);
    let t1 = t_module_from(&cochains, 1);
    let f = j.field();
    let representatives = if f.order().is_some() {
        let mut reps = Vec::new();
        for coeffs in all_vectors(f, t1.dim) {
            let c = CohomologyClass::new(cochains.clone(), 1, t1.representatives.mul_vec(&coeffs))?;
            reps.push((coeffs, extension_from_cocycle(&c, model)?));
        }
        Some(reps)
    } else {
        None
    };
    Ok(ExalClassification {
        cochains,
        t1,
        representatives,
    })
}

/// Whether the representatives are pairwise non-isomorphic as extensions.
pub fn pairwise_distinct(reps: &[(Vec<Scalar>, RealizedExtension)]) -> bool {
    reps.iter()
        .enumerate()
        .all(|(i, (_, a))| reps[i + 1..].iter().all(|(_, b)| extension_isomorphism(a, b).is_none()))
}

/// Outcome of checking that `G × F → F × F, (g, x) ↦ (g·x, x)` is bijective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsorReport {
    Torsor { group: usize, set: usize },
    PseudoTorsorEmpty { group: usize },
    /// The action leaves the set.
    NotClosed,
    /// Two group elements act identically on some point.
    NotFree,
    /// Some pair of points is not related by any group element.
    NotTransitive,
}

impl TorsorReport {
    pub fn is_torsor(&self) -> bool {
        matches!(self, TorsorReport::Torsor { .. })
    }
}

pub fn check_torsor_action<G, X: PartialEq>(group: &[G], set: &[X], act: impl Fn(&G, &X) -> X) -> TorsorReport {
    if set.is_empty() {
        return TorsorReport::PseudoTorsorEmpty { group: group.len() };
    }
    for x in set {
        let mut hit = vec![false; set.len()];
        for g in group {
            let y = act(g, x);
            let Some(i) = set.iter().position(|z| *z == y) else {
                return TorsorReport::NotClosed;
            };
            if hit[i] {
                return TorsorReport::NotFree;
            }
            hit[i] = true;
        }
        if hit.contains(&false) {
            return TorsorReport::NotTransitive;
        }
    }
    TorsorReport::Torsor {
        group: group.len(),
        set: set.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::quotient_model;
    use crate::scalar::Field;

    #[test]
    fn cyclic_group_acting_on_itself() {
        let g: Vec<u32> = (0..5).collect();
        assert!(check_torsor_action(&g, &g, |a, b| (a + b) % 5).is_torsor());
        assert_eq!(check_torsor_action(&g, &[0u32; 0], |a, b| a + b), TorsorReport::PseudoTorsorEmpty { group: 5 });
        assert_eq!(check_torsor_action(&g, &g, |_, b| *b), TorsorReport::NotFree);
        assert_eq!(check_torsor_action(&[0u32], &g, |_, b| *b), TorsorReport::NotTransitive);
        assert_eq!(check_torsor_action(&g, &g, |a, b| a + b), TorsorReport::NotClosed);
    }

    #[test]
    fn dual_numbers_have_two_classes() {
        let f = Field::Prime(2);
        let b = PresentedAlgebra::over_field(f, &["x"], &["x^2"]).unwrap();
        let j = FiniteModule::residue_field(&b);
        let c = exal_classify(&b, &j, &quotient_model(&b, None).unwrap()).unwrap();
        assert_eq!(c.class_count(), Some(2));
        let reps = c.representatives.as_ref().unwrap();
        assert!(pairwise_distinct(reps));
        for (coeffs, _) in reps {
            assert_eq!(&c.coordinates(&c.class(coeffs).unwrap()).unwrap(), coeffs);
        }
    }

    #[test]
    fn rational_classification_is_a_vector_space() {
        let b = PresentedAlgebra::over_field(Field::Rational, &["x", "y"], &["x*y"]).unwrap();
        let j = FiniteModule::residue_field(&b);
        let c = exal_classify(&b, &j, &quotient_model(&b, Some(3)).unwrap()).unwrap();
        assert_eq!(c.t1.dim, 1);
        assert!(c.representatives.is_none() && c.class_count().is_none());
    }
}
