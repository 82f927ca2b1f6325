use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, Matrix};
use crate::scalar::{Field, Scalar};

/// A finite-dimensional commutative algebra given by structure constants
/// `e_i * e_j = Σ_k table[i][j][k] e_k`, with `e_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl StructureAlgebra {
    pub fn new(field: Field, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<StructureAlgebra> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("structure algebra needs at least the unit"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::invalid("structure tensor has the wrong shape"));
        }
        Ok(StructureAlgebra { field, labels, table })
    }

    /// The field itself, as a one-dimensional algebra.
    pub fn ground(field: Field) -> StructureAlgebra {
        StructureAlgebra {
            field,
            labels: vec!["1".into()],
            table: vec![vec![vec![field.one()]]],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn constant(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.basis(0)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        vec_add(a, b)
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        vec_sub(a, b)
    }

    pub fn scale(&self, a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
        vec_scale(a, c)
    }

    pub fn pow(&self, a: &[Scalar], e: u32) -> Vec<Scalar> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn violations(&self) -> Vec<String> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    out.push(format!("commutativity fails for e{i}*e{j}"));
                }
            }
        }
        for i in 0..n {
            if self.table[0][i] != self.basis(i) {
                out.push(format!("unit law fails for e{i}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(&self.table[i][j], &self.basis(k));
                    let r = self.mul(&self.basis(i), &self.table[j][k]);
                    if l != r {
                        out.push(format!("associativity fails for (e{i},e{j},e{k})"));
                    }
                }
            }
        }
        out
    }

    /// Whether the span of `vectors` is closed under multiplication by the algebra.
    pub fn is_ideal(&self, vectors: &[Vec<Scalar>]) -> bool {
        if vectors.is_empty() {
            return true;
        }
        let span = Matrix::from_columns(self.field, self.dim(), vectors);
        vectors.iter().all(|v| (0..self.dim()).all(|i| span.solve_affine(&self.mul(&self.basis(i), v)).is_some()))
    }

    /// Quotient by the ideal spanned by `ideal`. The quotient basis consists
    /// of the images of the basis vectors that are not pivots of the ideal's
    /// echelon form, keeping the unit first.
    pub fn quotient(&self, ideal: &[Vec<Scalar>]) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::invalid("subspace is not an ideal"));
        }
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = ideal.to_vec();
        let span = Matrix::from_rows_with_cols(self.field, n, rows).unwrap().row_space();
        // eliminate from the right
        let mut reversed = Matrix::zeros(self.field, span.rows(), n);
        for i in 0..span.rows() {
            for j in 0..n {
                reversed.set(i, j, span.get(i, n - 1 - j).clone());
            }
        }
        let r = reversed.rref();
        let pivots: Vec<usize> = r.pivots.iter().map(|&c| n - 1 - c).collect();
        if pivots.contains(&0) {
            return Err(Error::invalid("ideal contains the unit"));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let m = keep.len();
        // projection: each basis vector e_p for a pivot p is rewritten as
        // a combination of kept vectors modulo the ideal
        let mut projection = Matrix::zeros(self.field, m, n);
        for (a, &k) in keep.iter().enumerate() {
            projection.set(a, k, self.field.one());
        }
        for (row, &p) in pivots.iter().enumerate() {
            // reduced row: e_p + Σ_{kept c} coeff * e_c lies in the ideal
            for (a, &k) in keep.iter().enumerate() {
                let c = r.reduced.get(row, n - 1 - k);
                if !c.is_zero() {
                    projection.set(a, p, -c);
                }
            }
        }
        let section = Matrix::from_columns(self.field, n, &keep.iter().map(|&k| self.basis(k)).collect::<Vec<_>>());
        let mut table = vec![vec![vec![self.field.zero(); m]; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = projection.mul_vec(&self.mul(&self.basis(keep[a]), &self.basis(keep[b])));
            }
        }
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        Ok(Quotient {
            algebra: StructureAlgebra::new(self.field, labels, table)?,
            projection,
            section,
        })
    }

    /// Number of elements over a finite field (saturating).
    pub fn cardinality(&self) -> Option<u128> {
        let p = self.field.order()? as u128;
        Some(p.checked_pow(self.dim() as u32).unwrap_or(u128::MAX))
    }

    pub fn is_nilpotent(&self, a: &[Scalar]) -> bool {
        is_zero_vec(&self.pow(a, self.dim() as u32 + 1))
    }
}

/// A quotient algebra with its projection and the linear section given by
/// the kept basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    pub projection: Matrix,
    pub section: Matrix,
}

/// All vectors of length `dim` over a finite field, in index order.
pub fn all_vectors(field: Field, dim: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let p = field.order().expect("finite field");
    let total = (p as u128).pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push(field.element((idx % p as u128) as u64));
            idx /= p as u128;
        }
        v
    })
}

/// Index of a vector in [`all_vectors`] order.
pub fn vector_index(v: &[Scalar]) -> u128 {
    let mut idx = 0u128;
    for s in v.iter().rev() {
        let p = s.field().order().expect("finite field") as u128;
        idx = idx * p + s.index() as u128;
    }
    idx
}

pub fn count_vectors(field: Field, dim: usize) -> u128 {
    let p = field.order().expect("finite field") as u128;
    p.checked_pow(dim as u32).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(f: Field) -> StructureAlgebra {
        let z = f.zero();
        let o = f.one();
        StructureAlgebra::new(
            f,
            vec!["1".into(), "x".into()],
            vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]]],
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_validate() {
        assert!(dual_numbers(Field::Prime(2)).violations().is_empty());
    }

    #[test]
    fn noncommutative_tensor_is_reported() {
        let f = Field::Prime(2);
        let three = |v: [i64; 3]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut bigger = vec![vec![three([0, 0, 0]); 3]; 3];
        for i in 0..3 {
            bigger[0][i] = three([(i == 0) as i64, (i == 1) as i64, (i == 2) as i64]);
            bigger[i][0] = bigger[0][i].clone();
        }
        bigger[1][2] = three([0, 1, 0]);
        let s = StructureAlgebra::new(f, vec!["1".into(), "a".into(), "b".into()], bigger).unwrap();
        assert!(s.violations().iter().any(|v| v.contains("commutativity fails for e1*e2")));
    }

    #[test]
    fn quotient_of_dual_numbers_by_x_is_the_field() {
        let a = dual_numbers(Field::Rational);
        let q = a.quotient(&[a.basis(1)]).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert!(q.algebra.violations().is_empty());
        assert!(a.quotient(&[a.basis(0)]).is_err());
    }

    #[test]
    fn vector_enumeration_round_trips() {
        let f = Field::Prime(3);
        for (i, v) in all_vectors(f, 3).enumerate() {
            assert_eq!(vector_index(&v), i as u128);
        }
        assert_eq!(count_vectors(f, 3), 27);
    }
}
