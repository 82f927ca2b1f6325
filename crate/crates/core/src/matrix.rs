//! Dense matrices over a [`Field`] and the exact linear algebra built on them.
//!
//! Elimination is deterministic: the pivot of each column is the first row
//! (from the top of the unreduced part) with a nonzero entry. Over `F_p` this
//! is plain Gauss-Jordan; over `Q` rows are cleared to integers and reduced
//! fraction-free, dividing out row contents as they appear, and only the
//! final normalization introduces fractions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, c, rows).expect("ragged rows")
    }

    /// Like [`Matrix::from_rows`], but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Option<Matrix> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return None;
            }
            data.extend(row);
        }
        Some(Matrix {
            field,
            rows: r,
            cols,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| field.from_i64(v)).collect::<Vec<_>>()
            })
            .collect();
        Matrix::from_rows(field, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Prime(_) => self.rref_gauss(),
            Field::Rational => self.rref_fraction_free(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    fn rref_gauss(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * rj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn rref_fraction_free(&self) -> Rref {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            let pv = pivot_row[c].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &pv * &*x - &a * y;
                }
                remove_content(row);
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::zeros(Field::Rational, self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            let lead = pivots.get(i).map(|&c| row[c].clone());
            for (j, x) in row.iter().enumerate() {
                let q = match &lead {
                    Some(l) => BigRational::new(x.clone(), l.clone()),
                    None => BigRational::from_integer(x.clone()),
                };
                out.set(i, j, Scalar::Rational(q));
            }
        }
        Rref { reduced: out, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Matrix whose columns form a basis of the right kernel.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (r, &p) in pivots.iter().enumerate() {
                k.set(p, col, -reduced.get(r, f));
            }
        }
        k
    }

    /// One solution of `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let Rref { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when it is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let Rref { reduced, pivots } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis (as rows) of the row space, in reduced form.
    pub fn row_space(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let rows = (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect();
        Matrix::from_rows_with_cols(self.field, self.cols, rows).unwrap()
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = row.iter().map(|s| s.as_rational().expect("rational entry")).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Coordinates of `v` in the span of the columns of `basis`, if it lies there.
pub fn coordinates(basis: &Matrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    basis.solve_affine(v)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = a.first().or(b.first()).map(Scalar::field);
    let mut acc = match f {
        Some(f) => f.zero(),
        None => return Field::Prime(2).zero(),
    };
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F2: Field = Field::Prime(2);
    const Q: Field = Field::Rational;

    #[test]
    fn rref_of_zero_matrix() {
        let r = Matrix::zeros(F2, 2, 2).rref();
        assert_eq!(r.rank(), 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_of_identity() {
        let r = Matrix::identity(Q, 3).rref();
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.reduced, Matrix::identity(Q, 3));
    }

    #[test]
    fn equal_rows_over_f2() {
        assert_eq!(Matrix::from_i64(F2, &[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(F2, 4).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(F2, 1, 2).kernel_basis().cols(), 2);
        let k = Matrix::from_i64(Q, &[vec![1, 2]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Q.from_i64(-2), Q.from_i64(1)]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q.from_i64(3), Q.from_i64(-1)];
        assert_eq!(Matrix::identity(Q, 2).solve_affine(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(Q, 2, 2).solve_affine(&b), None);
        let m = Matrix::from_i64(F2, &[vec![1, 1]]);
        let x = m.solve_affine(&[F2.one()]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![F2.one()]);
    }

    #[test]
    fn fraction_free_rref_matches_expected() {
        let m = Matrix::from_i64(Q, &[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced.row(0), &[Q.from_i64(1), Q.from_i64(0), Q.from_i64(-1)]);
        assert_eq!(r.reduced.row(1), &[Q.from_i64(0), Q.from_i64(1), Q.from_i64(2)]);
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                Matrix::from_i64(field, &rows)
            })
        })
    }

    fn any_field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7)), Just(Field::Rational)]
    }

    proptest! {
        #[test]
        fn rank_nullity_and_idempotence(m in any_field().prop_flat_map(small_matrix)) {
            let r = m.rref();
            let k = m.kernel_basis();
            prop_assert_eq!(r.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(&r.reduced.rref().reduced, &r.reduced);
        }

        #[test]
        fn solutions_satisfy_system(m in any_field().prop_flat_map(small_matrix), seed in proptest::collection::vec(-3i64..4, 6)) {
            let f = m.field();
            let x0: Vec<Scalar> = (0..m.cols()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x0);
            let x = m.solve_affine(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x), b);
        }

        #[test]
        fn inconsistent_verdicts_are_confirmed_by_brute_force(
            r in 1usize..4, c in 1usize..5, bits in proptest::collection::vec(0i64..2, 20)
        ) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..c).map(|j| bits[i * c + j]).collect()).collect();
            let m = Matrix::from_i64(F2, &rows);
            let b: Vec<Scalar> = (0..r).map(|i| F2.from_i64(bits[19 - i])).collect();
            let brute = (0u32..(1 << c)).any(|mask| {
                let x: Vec<Scalar> = (0..c).map(|j| F2.from_i64(((mask >> j) & 1) as i64)).collect();
                m.mul_vec(&x) == b
            });
            match m.solve_affine(&b) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => prop_assert!(!brute),
            }
        }
    }
}
