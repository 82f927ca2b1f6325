//! The three-term cotangent complex `L₂ → L₁ → L₀` of a presentation and
//! the cohomology `T⁰, T¹, T²` of `Hom(L, J)`.

use std::sync::Arc;

use crate::algebra::{FiniteModule, PresentedAlgebra};
use crate::differential::jacobian_map;
use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Matrix};
use crate::poly::{syzygies_modulo, vector_is_zero, GroebnerBasis, PolyVector, Polynomial};
use crate::scalar::Scalar;

/// `L₀ = ⊕ B dx_i`, `L₁ = ⊕ B e_j`, and `L₂` presented by relations among
/// the relations of `B`, with the Koszul relations listed first.
#[derive(Clone, Debug)]
pub struct LSComplex {
    pub algebra: PresentedAlgebra,
    /// `jacobian[j][i] = ∂f_j/∂x_i`: the map `e_j ↦ df_j`.
    pub jacobian: Vec<PolyVector>,
    /// Generators of the relation module in `P^m`; the first `koszul_count` are Koszul.
    pub syzygies: Vec<PolyVector>,
    pub koszul_count: usize,
    /// Relations among `syzygies` over `P`: `Σ_k c_k s_k = 0`.
    pub second_syzygies: Vec<PolyVector>,
}

fn koszul(relations: &[Polynomial]) -> Vec<PolyVector> {
    let m = relations.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let f = relations[i].field();
            let n = relations[i].nvars();
            let mut v = vec![Polynomial::zero(f, n); m];
            v[i] = relations[j].clone();
            v[j] = relations[i].neg();
            out.push(v);
        }
    }
    out
}

pub fn build_ls(b: &PresentedAlgebra) -> Result<LSComplex> {
    let f = b.field();
    let n = b.nvars();
    let rels = b.relations().to_vec();
    let m = rels.len();
    let g = b.base_relations();
    let order = b.order();
    let jacobian: Vec<PolyVector> = rels
        .iter()
        .map(|r| (0..b.n_relative()).map(|i| r.derivative(b.relative_index(i))).collect())
        .collect();
    let mut syzygies = koszul(&rels);
    let koszul_count = syzygies.len();
    if m > 0 {
        let vecs: Vec<PolyVector> = rels.iter().map(|r| vec![r.clone()]).collect();
        let found = syzygies_modulo(f, n, 1, &vecs, g, order);
        // keep only syzygies outside the span of those already present (and of g·P^m)
        let mut span: Vec<PolyVector> = syzygies.clone();
        for gl in g {
            for c in 0..m {
                let mut v = vec![Polynomial::zero(f, n); m];
                v[c] = gl.clone();
                span.push(v);
            }
        }
        for s in found {
            let current = GroebnerBasis::module(f, n, m, &span, order);
            if !current.contains_vector(&s) {
                span.push(s.clone());
                syzygies.push(s);
            }
        }
    }
    let second_syzygies = if syzygies.is_empty() {
        Vec::new()
    } else {
        syzygies_modulo(f, n, m, &syzygies, g, order)
    };
    let c = LSComplex {
        algebra: b.clone(),
        jacobian,
        syzygies,
        koszul_count,
        second_syzygies,
    };
    let v = c.violations();
    if v.is_empty() {
        Ok(c)
    } else {
        Err(Error::invalid(v.join("; ")))
    }
}

impl LSComplex {
    pub fn relations(&self) -> &[Polynomial] {
        self.algebra.relations()
    }

    pub fn rank0(&self) -> usize {
        self.algebra.n_relative()
    }

    pub fn rank1(&self) -> usize {
        self.relations().len()
    }

    /// Number of non-Koszul generators of `L₂`.
    pub fn rank2(&self) -> usize {
        self.syzygies.len() - self.koszul_count
    }

    pub fn violations(&self) -> Vec<String> {
        let b = &self.algebra;
        let base = GroebnerBasis::ideal(b.field(), b.nvars(), b.base_relations(), b.order());
        let mut out = Vec::new();
        for (k, s) in self.syzygies.iter().enumerate() {
            if !base.contains(&crate::poly::dot(s, self.relations())) {
                out.push(format!("generator {k} of L2 is not a relation among the relations"));
            }
            for i in 0..self.rank0() {
                let col: PolyVector = self.jacobian.iter().map(|row| row[i].clone()).collect();
                if !b.is_zero(&crate::poly::dot(s, &col)) {
                    out.push(format!("composite L2 -> L0 is nonzero on generator {k}"));
                }
            }
        }
        for (k, c) in self.second_syzygies.iter().enumerate() {
            let m = self.rank1();
            let f = b.field();
            let n = b.nvars();
            let mut total = vec![Polynomial::zero(f, n); m];
            for (ck, s) in c.iter().zip(&self.syzygies) {
                for (t, e) in total.iter_mut().zip(s) {
                    *t = t.add(&ck.mul(e));
                }
            }
            if !vector_is_zero(&total.iter().map(|p| base.normal_form(p)).collect::<Vec<_>>()) {
                out.push(format!("second syzygy {k} is not a relation"));
            }
        }
        out
    }

    /// Whether the relation module is generated by Koszul relations alone.
    pub fn is_complete_intersection(&self) -> bool {
        self.rank2() == 0
    }
}

/// Explicit cochain complex `C⁰ → C¹ → C²` for `Hom(L, J)`.
#[derive(Clone, Debug)]
pub struct Cochains {
    pub complex: LSComplex,
    pub module: FiniteModule,
    /// `J^n → J^m`.
    pub d0: Matrix,
    /// `J^m → J^R`.
    pub d1: Matrix,
    /// Columns spanning `C² ⊂ J^R`.
    pub c2: Matrix,
}

impl Cochains {
    pub fn new(complex: LSComplex, module: FiniteModule) -> Result<Cochains> {
        let b = &complex.algebra;
        let v = module.violations_over(b);
        if !v.is_empty() {
            return Err(Error::invalid(v.join("; ")));
        }
        let f = b.field();
        let d = module.dim();
        let m = complex.rank1();
        let r = complex.syzygies.len();
        let d0 = jacobian_map(b, &module);
        let mut d1 = Matrix::zeros(f, r * d, m * d);
        for (k, s) in complex.syzygies.iter().enumerate() {
            for (j, p) in s.iter().enumerate() {
                set_block(&mut d1, k * d, j * d, &module.act(p));
            }
        }
        // constraints cutting C² out of J^R
        let nc = complex.koszul_count + complex.second_syzygies.len();
        let mut cons = Matrix::zeros(f, nc * d, r * d);
        for k in 0..complex.koszul_count {
            set_block(&mut cons, k * d, k * d, &Matrix::identity(f, d));
        }
        for (q, c) in complex.second_syzygies.iter().enumerate() {
            let row = (complex.koszul_count + q) * d;
            for (k, p) in c.iter().enumerate() {
                set_block(&mut cons, row, k * d, &module.act(p));
            }
        }
        let c2 = cons.kernel_basis();
        Ok(Cochains {
            complex,
            module,
            d0,
            d1,
            c2,
        })
    }

    pub fn dim(&self, i: usize) -> usize {
        let d = self.module.dim();
        match i {
            0 => self.complex.rank0() * d,
            1 => self.complex.rank1() * d,
            _ => self.complex.syzygies.len() * d,
        }
    }

    fn differential(&self, i: usize) -> Option<&Matrix> {
        match i {
            0 => Some(&self.d0),
            1 => Some(&self.d1),
            _ => None,
        }
    }

    /// Columns spanning the cocycles of degree `i`.
    pub fn cocycles(&self, i: usize) -> Matrix {
        match self.differential(i) {
            Some(d) => d.kernel_basis(),
            None => self.c2.clone(),
        }
    }

    /// Columns spanning the coboundaries of degree `i`.
    pub fn coboundaries(&self, i: usize) -> Matrix {
        let f = self.module.field();
        match i {
            0 => Matrix::zeros(f, self.dim(0), 0),
            _ => column_basis(self.differential(i - 1).unwrap()),
        }
    }

    pub fn is_cocycle(&self, i: usize, v: &[Scalar]) -> bool {
        match self.differential(i) {
            Some(d) => is_zero_vec(&d.mul_vec(v)),
            None => self.c2.solve_affine(v).is_some(),
        }
    }

    /// `d¹ ∘ d⁰`, which must vanish.
    pub fn composite(&self) -> Matrix {
        self.d1.mul(&self.d0)
    }
}

fn set_block(m: &mut Matrix, r0: usize, c0: usize, block: &Matrix) {
    for a in 0..block.rows() {
        for c in 0..block.cols() {
            m.set(r0 + a, c0 + c, block.get(a, c).clone());
        }
    }
}

/// Independent columns spanning the column space.
pub fn column_basis(m: &Matrix) -> Matrix {
    let rs = m.transpose().row_space();
    rs.transpose()
}

/// `T^i(B/A, J)` with representative cocycles.
#[derive(Clone, Debug)]
pub struct TModule {
    pub degree: usize,
    pub dim: usize,
    /// Columns: cocycles whose classes form a basis of `T^i`.
    pub representatives: Matrix,
    pub cocycles: Matrix,
    pub coboundaries: Matrix,
    pub ambient: usize,
}

pub fn t_module_from(cochains: &Cochains, i: usize) -> TModule {
    let z = cochains.cocycles(i);
    let bnd = cochains.coboundaries(i);
    let f = cochains.module.field();
    let mut acc = bnd.clone();
    let mut reps = Vec::new();
    for c in z.columns() {
        if acc.cols() == 0 || acc.solve_affine(&c).is_none() {
            reps.push(c.clone());
            acc = if acc.cols() == 0 {
                Matrix::from_columns(f, c.len(), &[c])
            } else {
                acc.hstack(&Matrix::from_columns(f, c.len(), &[c]))
            };
        }
    }
    let ambient = cochains.dim(i);
    TModule {
        degree: i,
        dim: reps.len(),
        representatives: Matrix::from_columns(f, ambient, &reps),
        cocycles: z,
        coboundaries: bnd,
        ambient,
    }
}

pub fn t_module(b: &PresentedAlgebra, j: &FiniteModule, i: usize) -> Result<TModule> {
    if i > 2 {
        return Err(Error::invalid("only T^0, T^1 and T^2 are computed"));
    }
    let c = Cochains::new(build_ls(b)?, j.clone())?;
    Ok(t_module_from(&c, i))
}

/// Dimensions of `T⁰, T¹, T²`.
pub fn t_dimensions(b: &PresentedAlgebra, j: &FiniteModule) -> Result<[usize; 3]> {
    let c = Cochains::new(build_ls(b)?, j.clone())?;
    Ok([0, 1, 2].map(|i| t_module_from(&c, i).dim))
}

/// A cocycle of `Hom(L, J)` in a fixed degree.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub cochains: Arc<Cochains>,
    pub degree: usize,
    pub representative: Vec<Scalar>,
}

impl CohomologyClass {
    pub fn new(cochains: Arc<Cochains>, degree: usize, representative: Vec<Scalar>) -> Result<CohomologyClass> {
        if degree > 2 || representative.len() != cochains.dim(degree) {
            return Err(Error::invalid("representative has the wrong shape"));
        }
        if !cochains.is_cocycle(degree, &representative) {
            return Err(Error::invalid("representative is not a cocycle"));
        }
        Ok(CohomologyClass {
            cochains,
            degree,
            representative,
        })
    }
}

/// Solves `c = d(w)`; the witness is verified before it is returned.
pub fn is_coboundary(c: &CohomologyClass) -> Option<Vec<Scalar>> {
    let k = &c.cochains;
    if c.degree == 0 {
        return is_zero_vec(&c.representative).then(Vec::new);
    }
    let d = k.differential(c.degree - 1).unwrap();
    let w = d.solve_affine(&c.representative)?;
    assert_eq!(d.mul_vec(&w), c.representative, "coboundary witness failed verification");
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{finite_structure, truncate};
    use crate::differential::derivation_space;
    use crate::scalar::Field;

    fn alg(f: Field, vars: &[&str], rels: &[&str]) -> PresentedAlgebra {
        PresentedAlgebra::over_field(f, vars, rels).unwrap()
    }

    fn dims(b: &PresentedAlgebra, j: &FiniteModule) -> [usize; 3] {
        t_dimensions(b, j).unwrap()
    }

    #[test]
    fn free_algebra_complex_is_trivial() {
        let b = alg(Field::Prime(3), &["x", "y"], &[]);
        let c = build_ls(&b).unwrap();
        assert_eq!((c.rank1(), c.syzygies.len()), (0, 0));
        let t = truncate(&b, 2).unwrap();
        let [_, t1, t2] = dims(&b, &FiniteModule::regular(&b, &t));
        assert_eq!((t1, t2), (0, 0));
    }

    #[test]
    fn dual_numbers() {
        let b = alg(Field::Prime(2), &["x"], &["x^2"]);
        let c = build_ls(&b).unwrap();
        assert_eq!((c.rank1(), c.rank2()), (1, 0));
        assert_eq!(c.jacobian[0][0], b.parse_element("2*x").unwrap());
        assert_eq!(dims(&b, &FiniteModule::residue_field(&b)), [1, 1, 0]);
    }

    #[test]
    fn fat_point_hand_computation() {
        let b = alg(Field::Prime(2), &["x", "y"], &["x^2", "x*y", "y^2"]);
        let c = build_ls(&b).unwrap();
        assert_eq!((c.koszul_count, c.rank2()), (3, 2));
        assert_eq!(dims(&b, &FiniteModule::residue_field(&b)), [2, 3, 2]);
    }

    #[test]
    fn hypersurfaces_have_one_dimensional_t1() {
        assert_eq!(dims(&alg(Field::Rational, &["x"], &["x^2"]), &FiniteModule::residue_field(&alg(Field::Rational, &["x"], &["x^2"])))[1], 1);
        let node = alg(Field::Rational, &["x", "y"], &["x*y"]);
        assert_eq!(dims(&node, &FiniteModule::residue_field(&node))[1], 1);
        let cube = alg(Field::Prime(2), &["x"], &["x^3"]);
        assert_eq!(dims(&cube, &FiniteModule::residue_field(&cube))[1], 1);
    }

    #[test]
    fn cochain_condition_and_t0_agree_with_derivations() {
        let b = alg(Field::Prime(3), &["x", "y"], &["x^2", "x*y", "y^3"]);
        let t = finite_structure(&b).unwrap();
        for j in [FiniteModule::residue_field(&b), FiniteModule::regular(&b, &t)] {
            let c = Cochains::new(build_ls(&b).unwrap(), j.clone()).unwrap();
            assert!(c.composite().is_zero());
            assert_eq!(t_module_from(&c, 0).dim, derivation_space(&b, &j).len());
        }
    }

    #[test]
    fn presentation_independence() {
        let f = Field::Prime(2);
        let b1 = alg(f, &["x"], &["x^2"]);
        let b2 = alg(f, &["x", "z"], &["x^2", "z"]);
        assert_eq!(dims(&b1, &FiniteModule::residue_field(&b1)), dims(&b2, &FiniteModule::residue_field(&b2)));
    }

    #[test]
    fn non_split_cube_class_is_not_a_coboundary() {
        let f = Field::Prime(2);
        let b = alg(f, &["x"], &["x^2"]);
        let c = Arc::new(Cochains::new(build_ls(&b).unwrap(), FiniteModule::residue_field(&b)).unwrap());
        // the extension k[x]/(x^3) sends the relation x^2 to the generator of J
        let class = CohomologyClass::new(c.clone(), 1, vec![f.one()]).unwrap();
        assert!(is_coboundary(&class).is_none());
        let zero = CohomologyClass::new(c, 1, vec![f.zero()]).unwrap();
        assert_eq!(is_coboundary(&zero), Some(vec![f.zero()]));
    }
}
