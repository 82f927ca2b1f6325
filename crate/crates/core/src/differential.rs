//! Relative derivations, Kähler differentials and the conormal module of a
//! presented algebra.

use crate::algebra::{FiniteModule, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, vec_add, Matrix};
use crate::poly::{syzygies_modulo, GroebnerBasis, PolyVector, Polynomial};
use crate::scalar::Scalar;

/// An `A`-derivation `B → J`, stored by the images of the relative generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub algebra: PresentedAlgebra,
    pub module: FiniteModule,
    pub images: Vec<Vec<Scalar>>,
}

impl Derivation {
    pub fn new(algebra: PresentedAlgebra, module: FiniteModule, images: Vec<Vec<Scalar>>) -> Result<Derivation> {
        let d = Derivation { algebra, module, images };
        let v = d.violations();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(Error::invalid(v.join("; ")))
        }
    }

    pub fn zero(algebra: &PresentedAlgebra, module: &FiniteModule) -> Derivation {
        Derivation {
            algebra: algebra.clone(),
            module: module.clone(),
            images: vec![module.zero_vector(); algebra.n_relative()],
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let b = &self.algebra;
        if self.images.len() != b.n_relative() || self.images.iter().any(|v| v.len() != self.module.dim()) {
            return vec!["derivation needs one image in J per relative generator".into()];
        }
        let mut out = self.module.violations_over(b);
        for (j, f) in b.relations().iter().enumerate() {
            if !is_zero_vec(&self.apply(f)) {
                out.push(format!("Jacobian condition fails for relation {j} ({})", b.format(f)));
            }
        }
        out
    }

    /// `d(p) = Σ_i (∂p/∂x_i) · d(x_i)`.
    pub fn apply(&self, p: &Polynomial) -> Vec<Scalar> {
        let b = &self.algebra;
        let mut acc = self.module.zero_vector();
        for (i, img) in self.images.iter().enumerate() {
            let dp = p.derivative(b.relative_index(i));
            if !dp.is_zero() {
                acc = vec_add(&acc, &self.module.act_on(&dp, img));
            }
        }
        acc
    }

    /// Flattened image vector (generator-major).
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.images.concat()
    }

    pub fn from_vector(algebra: &PresentedAlgebra, module: &FiniteModule, v: &[Scalar]) -> Derivation {
        let d = module.dim();
        let images = (0..algebra.n_relative()).map(|i| v[i * d..(i + 1) * d].to_vec()).collect();
        Derivation {
            algebra: algebra.clone(),
            module: module.clone(),
            images,
        }
    }
}

/// The map `J^n → J^m`, `v ↦ (Σ_i ∂f_j/∂x_i · v_i)_j`, whose kernel is `Der_A(B, J)`.
pub fn jacobian_map(b: &PresentedAlgebra, j: &FiniteModule) -> Matrix {
    let d = j.dim();
    let n = b.n_relative();
    let m = b.relations().len();
    let mut out = Matrix::zeros(b.field(), m * d, n * d);
    for (r, f) in b.relations().iter().enumerate() {
        for i in 0..n {
            let block = j.act(&f.derivative(b.relative_index(i)));
            for a in 0..d {
                for c in 0..d {
                    out.set(r * d + a, i * d + c, block.get(a, c).clone());
                }
            }
        }
    }
    out
}

/// A basis of `Der_A(B, J)`.
pub fn derivation_space(b: &PresentedAlgebra, j: &FiniteModule) -> Vec<Derivation> {
    let k = jacobian_map(b, j).kernel_basis();
    k.columns().iter().map(|c| Derivation::from_vector(b, j, c)).collect()
}

/// `Ω_{B/A}` as the cokernel of the Jacobian `B^m → B^n`.
#[derive(Clone, Debug)]
pub struct KaehlerPresentation {
    pub algebra: PresentedAlgebra,
    /// `jacobian[j][i] = ∂f_j/∂x_i` in normal form: row `j` is the relation `Σ_i jacobian[j][i] dx_i = 0`.
    pub jacobian: Vec<PolyVector>,
}

impl KaehlerPresentation {
    pub fn rank(&self) -> usize {
        self.algebra.n_relative()
    }

    /// Relations that survive in `B`, i.e. nonzero rows.
    pub fn relations(&self) -> Vec<&PolyVector> {
        self.jacobian.iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect()
    }

    /// `Hom_B(Ω, J)`: vectors `v ∈ J^n` killed by every relation.
    pub fn hom_into(&self, j: &FiniteModule) -> Matrix {
        let d = j.dim();
        let n = self.rank();
        let rels = self.relations();
        let mut m = Matrix::zeros(self.algebra.field(), rels.len() * d, n * d);
        for (r, row) in rels.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                let block = j.act(p);
                for a in 0..d {
                    for c in 0..d {
                        m.set(r * d + a, i * d + c, block.get(a, c).clone());
                    }
                }
            }
        }
        m.kernel_basis()
    }
}

pub fn kaehler(b: &PresentedAlgebra) -> KaehlerPresentation {
    let jacobian = b
        .relations()
        .iter()
        .map(|f| (0..b.n_relative()).map(|i| b.normal_form(&f.derivative(b.relative_index(i)))).collect())
        .collect();
    KaehlerPresentation {
        algebra: b.clone(),
        jacobian,
    }
}

/// `I/I²` presented by the classes of the relations and their syzygies.
#[derive(Clone, Debug)]
pub struct ConormalPresentation {
    pub algebra: PresentedAlgebra,
    pub generators: Vec<Polynomial>,
    pub relations: Vec<PolyVector>,
}

impl ConormalPresentation {
    pub fn violations(&self) -> Vec<String> {
        let b = &self.algebra;
        let mut gens = b.base_relations().to_vec();
        for (a, f) in self.generators.iter().enumerate() {
            for g in &self.generators[a..] {
                gens.push(f.mul(g));
            }
        }
        let square = GroebnerBasis::ideal(b.field(), b.nvars(), &gens, b.order());
        let mut out = Vec::new();
        for (k, r) in self.relations.iter().enumerate() {
            let s = crate::poly::dot(r, &self.generators);
            if !square.contains(&s) {
                out.push(format!("relation {k} does not vanish in I/I^2"));
            }
        }
        out
    }
}

pub fn conormal(b: &PresentedAlgebra) -> ConormalPresentation {
    let f = b.field();
    let n = b.nvars();
    let generators = b.relations().to_vec();
    let relations = if generators.is_empty() {
        Vec::new()
    } else {
        let vecs: Vec<PolyVector> = generators.iter().map(|g| vec![g.clone()]).collect();
        let mut out: Vec<PolyVector> = Vec::new();
        for s in syzygies_modulo(f, n, 1, &vecs, b.base_relations(), b.order()) {
            let r: PolyVector = s.iter().map(|p| b.normal_form(p)).collect();
            if r.iter().any(|p| !p.is_zero()) && !out.contains(&r) {
                out.push(r);
            }
        }
        out
    };
    ConormalPresentation {
        algebra: b.clone(),
        generators,
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{finite_structure, truncate, FiniteModule};
    use crate::algebra::{all_vectors, StructureAlgebra};
    use crate::scalar::Field;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> PresentedAlgebra {
        PresentedAlgebra::over_field(f, vars, rels).unwrap()
    }

    /// Counts linear maps `D: B → B` on a finite structure algebra with
    /// `D(1) = 0` and the Leibniz rule on all basis pairs.
    fn brute_force_self_derivations(s: &StructureAlgebra) -> usize {
        let n = s.dim();
        let f = s.field();
        let mut count = 0;
        for flat in all_vectors(f, (n - 1) * n) {
            let img = |i: usize| if i == 0 { s.zero() } else { flat[(i - 1) * n..i * n].to_vec() };
            let lin = |v: &[Scalar]| {
                let mut acc = s.zero();
                for (i, c) in v.iter().enumerate() {
                    acc = vec_add(&acc, &crate::matrix::vec_scale(&img(i), c));
                }
                acc
            };
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let lhs = lin(s.constant(a, b));
                    let rhs = vec_add(&s.mul(&s.basis(a), &img(b)), &s.mul(&img(a), &s.basis(b)));
                    lhs == rhs
                })
            });
            count += ok as usize;
        }
        count
    }

    #[test]
    fn free_algebra_into_residue_field() {
        let b = alg(Field::Prime(5), &["x"], &[]);
        assert_eq!(derivation_space(&b, &FiniteModule::residue_field(&b)).len(), 1);
        assert!(kaehler(&b).relations().is_empty());
    }

    #[test]
    fn dual_numbers_char_two_into_themselves() {
        let f = Field::Prime(2);
        let b = alg(f, &["x"], &["x^2"]);
        let t = finite_structure(&b).unwrap();
        let j = FiniteModule::regular(&b, &t);
        let dim = derivation_space(&b, &j).len();
        assert_eq!(dim, 2);
        assert_eq!(2usize.pow(dim as u32), brute_force_self_derivations(&t.algebra));
    }

    #[test]
    fn dual_numbers_over_rationals_into_themselves() {
        let f = Field::Rational;
        let b = alg(f, &["x"], &["x^2"]);
        let t = finite_structure(&b).unwrap();
        let j = FiniteModule::regular(&b, &t);
        let basis = derivation_space(&b, &j);
        assert_eq!(basis.len(), 1);
        // the constraint 2x * d(x) = 0 as a 2x2 system solved independently
        let two_x = Matrix::from_i64(f, &[vec![0, 0], vec![2, 0]]);
        assert_eq!(two_x.kernel_basis().cols(), 1);
        assert!(two_x.solve_affine(&[f.zero(), f.one()]).is_some());
        assert!(is_zero_vec(&two_x.mul_vec(&basis[0].images[0])));
    }

    #[test]
    fn kaehler_hom_matches_derivations() {
        for (f, rels) in [(Field::Prime(2), vec!["x^2"]), (Field::Rational, vec!["x^2"]), (Field::Prime(3), vec!["x^2", "x*y", "y^2"])] {
            let vars: &[&str] = if rels.len() == 1 { &["x"] } else { &["x", "y"] };
            let b = alg(f, vars, &rels);
            let t = finite_structure(&b).unwrap();
            for j in [FiniteModule::residue_field(&b), FiniteModule::regular(&b, &t)] {
                assert_eq!(kaehler(&b).hom_into(&j).cols(), derivation_space(&b, &j).len());
            }
        }
    }

    #[test]
    fn kaehler_of_the_node() {
        let f = Field::Rational;
        let b = alg(f, &["x", "y"], &["x*y"]);
        let k = kaehler(&b);
        assert_eq!(k.jacobian, vec![vec![b.parse_element("y").unwrap(), b.parse_element("x").unwrap()]]);
        assert!(kaehler(&alg(Field::Prime(2), &["x"], &["x^2"])).relations().is_empty());
        assert_eq!(kaehler(&alg(f, &["x"], &["x^2"])).relations().len(), 1);
    }

    #[test]
    fn conormal_examples() {
        let f = Field::Rational;
        assert!(conormal(&alg(f, &["x"], &["x^2"])).relations.is_empty());
        assert!(conormal(&alg(f, &["x", "y"], &["x*y"])).relations.is_empty());
        let c = conormal(&alg(f, &["x", "y"], &["x^2", "x*y", "y^2"]));
        assert_eq!(c.generators.len(), 3);
        assert_eq!(c.relations.len(), 2);
        assert!(c.violations().is_empty());
    }

    #[test]
    fn apply_derivation_examples() {
        let f = Field::Prime(2);
        let b = alg(f, &["x"], &["x^2"]);
        let j = FiniteModule::residue_field(&b);
        let d = Derivation::new(b.clone(), j, vec![vec![f.one()]]).unwrap();
        assert!(is_zero_vec(&d.apply(&b.one())));
        assert_eq!(d.apply(&b.parse_element("x + x*x").unwrap()), vec![f.one()]);
        let c = alg(Field::Prime(3), &["x"], &["x^2"]);
        let bad = Derivation::new(c.clone(), FiniteModule::regular(&c, &truncate(&c, 2).unwrap()), vec![vec![Field::Prime(3).one(), Field::Prime(3).zero()]]);
        assert!(bad.is_err());
    }

    #[test]
    fn base_constants_are_killed() {
        let f = Field::Prime(3);
        let b = PresentedAlgebra::parse(f, &["t"], &["t^2"], &["x"], &["x^2 - t"]).unwrap();
        let t = finite_structure(&b).unwrap();
        let j = FiniteModule::regular(&b, &t);
        for d in derivation_space(&b, &j) {
            assert!(is_zero_vec(&d.apply(&b.parse_element("t + 1").unwrap())));
        }
    }
}
