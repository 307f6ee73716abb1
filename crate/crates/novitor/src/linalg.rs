//! Field-generic exact dense linear algebra.
//!
//! Rank, kernel and cokernel data, column-space membership, characteristic
//! polynomials and exterior powers. Over `Q` the forward elimination is
//! fraction-free Bareiss on an integer lift of the matrix; over number
//! fields it is division-free cross-multiplication elimination, so a split
//! in an uncertified field can only surface in the final back-substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec;
use crate::numfield::FieldElement;
use crate::poly::Poly;
use crate::rat::Rat;

/// Exact field scalars the matrix machinery is generic over.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl Field for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn from_rat(r: &Rat) -> Self {
        FieldElement::from_rat(r.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        FieldElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElement::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElement::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FieldElement::inv(self)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
}

/// A dense row-major matrix over a declared ground field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_cols(ambient: usize, cols: &[Vec<F>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != ambient) {
            return Err(Error::ShapeMismatch("column length mismatch".into()));
        }
        let mut data = Vec::with_capacity(ambient * cols.len());
        for i in 0..ambient {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Ok(Matrix {
            rows: ambient,
            cols: cols.len(),
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).add(&a.mul(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect())
    }

    /// `self - mu * I` for a square matrix.
    pub fn sub_scalar_identity(&self, mu: &F) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i).sub(mu);
            out.set(i, i, v);
        }
        Ok(out)
    }

    /// Appends `v` as an extra column.
    pub fn augment(&self, v: &[F]) -> Result<Matrix<F>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "augmenting {} rows with a vector of length {}",
                self.rows,
                v.len()
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.push(v[i].clone());
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols + 1,
            data,
        })
    }
}

impl Matrix<Rat> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn has_integer_entries(&self) -> bool {
        self.data.iter().all(Rat::is_integer)
    }

    /// Lifts the entries into a number field (or leaves them rational).
    pub fn lift(&self) -> Matrix<FieldElement> {
        self.map(|r| FieldElement::from_rat(r.clone()))
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rat::one());
        }
        let (mut lifted, scale, _) = integer_lift(self);
        let ech = bareiss(&mut lifted);
        if ech.rank < self.rows {
            return Ok(Rat::zero());
        }
        let last = ech.pivot_rows.last().expect("full rank");
        let pivot_col = ech.pivot_cols.last().expect("full rank");
        let det_int = Rat::from_bigint(lifted[*last][*pivot_col].clone());
        let sign = if ech.swaps % 2 == 0 { Rat::one() } else { -Rat::one() };
        Ok(&(&det_int * &sign) / &scale)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix<Rat> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq((0..self.rows).map(|i| self.row(i).to_vec()))
    }
}

impl<'de> Deserialize<'de> for Matrix<Rat> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// A list of linearly independent column vectors spanning a subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis<F> {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<F>>,
}

impl<F: LinAlgField> SubspaceBasis<F> {
    /// Validates independence by a rank computation.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::ShapeMismatch("basis vector length".into()));
        }
        if !vectors.is_empty() {
            let m = Matrix::from_cols(ambient_dim, &vectors)?;
            if rank(&m)? != vectors.len() {
                return Err(Error::DependentVectors);
            }
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Row echelon data shared by the Bareiss and the generic eliminations.
struct Echelon<F> {
    rows: Vec<Vec<F>>,
    pivot_cols: Vec<usize>,
}

/// Division-free elimination over an arbitrary field: rows are combined by
/// cross multiplication, so no inverses are taken during the forward pass.
fn generic_echelon<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    let mut rows: Vec<Vec<F>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let head = rows[i][c].clone();
            for j in c..cols {
                let v = rows[i][j].mul(&pivot).sub(&head.mul(&rows[r][j]));
                rows[i][j] = v;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivot_cols }
}

/// Fields with an overridable elimination strategy. `Q` overrides the
/// defaults with the fraction-free integer path.
pub trait LinAlgField: Field {
    fn echelon(m: &Matrix<Self>) -> Result<(Vec<Vec<Self>>, Vec<usize>)> {
        let ech = generic_echelon(m);
        Ok((ech.rows, ech.pivot_cols))
    }
}

impl LinAlgField for FieldElement {}

impl LinAlgField for Rat {
    fn echelon(m: &Matrix<Rat>) -> Result<(Vec<Vec<Rat>>, Vec<usize>)> {
        let (mut lifted, _, _) = integer_lift(m);
        let ech = bareiss(&mut lifted);
        let rows = ech
            .pivot_rows
            .iter()
            .map(|&r| lifted[r].iter().map(|v| Rat::from_bigint(v.clone())).collect())
            .collect();
        Ok((rows, ech.pivot_cols))
    }
}

/// Row rank (= column rank) of a matrix over any exact field.
pub fn rank<F: LinAlgField>(m: &Matrix<F>) -> Result<usize> {
    Ok(F::echelon(m)?.1.len())
}

/// Dimension of the cokernel, `rows - rank`.
pub fn coker_dim<F: LinAlgField>(m: &Matrix<F>) -> Result<usize> {
    Ok(m.rows() - rank(m)?)
}

/// A basis of the right null space; its dimension is `cols - rank`.
/// Vectors are the standard free-column kernel basis of the echelon form:
/// each has a 1 in one free column and zeros in the others.
pub fn kernel_basis<F: LinAlgField>(m: &Matrix<F>) -> Result<SubspaceBasis<F>> {
    let (rows, pivot_cols) = F::echelon(m)?;
    let n = m.cols();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut vectors = Vec::new();
    for free in (0..n).filter(|j| !is_pivot[*j]) {
        let mut x = vec![F::zero(); n];
        x[free] = F::one();
        for (i, &pc) in pivot_cols.iter().enumerate().rev() {
            let row = &rows[i];
            let mut acc = F::zero();
            for j in pc + 1..n {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc = acc.add(&row[j].mul(&x[j]));
                }
            }
            x[pc] = acc.neg().mul(&row[pc].inv()?);
        }
        vectors.push(x);
    }
    SubspaceBasis::new(n, vectors)
}

/// True when `v` lies in the column space of `m`.
pub fn membership<F: LinAlgField>(m: &Matrix<F>, v: &[F]) -> Result<bool> {
    let augmented = m.augment(v)?;
    Ok(rank(&augmented)? == rank(m)?)
}

/// Solves `m x = b` over `Q`; `None` when the system is inconsistent. For an
/// underdetermined consistent system the free variables are set to zero.
pub fn solve(m: &Matrix<Rat>, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let augmented = m.augment(b)?;
    let (rows, pivot_cols) = Rat::echelon(&augmented)?;
    if pivot_cols.contains(&m.cols()) {
        return Ok(None);
    }
    let n = m.cols();
    let mut x = vec![Rat::zero(); n];
    for (i, &pc) in pivot_cols.iter().enumerate().rev() {
        let row = &rows[i];
        let mut acc = row[n].clone();
        for j in pc + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc = &acc - &(&row[j] * &x[j]);
            }
        }
        x[pc] = &acc / &row[pc];
    }
    Ok(Some(x))
}

/// Monic characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recurrence; all divisions are by the integers `1..=n`.
pub fn charpoly(m: &Matrix<Rat>) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux = Matrix::<Rat>::identity(n);
    for k in 1..=n {
        aux = m.matmul(&aux)?;
        let mut trace = Rat::zero();
        for i in 0..n {
            trace = &trace + aux.get(i, i);
        }
        let c = -&(&trace / &Rat::from_int(k as i64));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            let v = aux.get(i, i) + &c;
            aux.set(i, i, v);
        }
    }
    Ok(Poly::new(coeffs))
}

/// Lexicographically ordered k-element subsets of `0..n`.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

/// The k-th compound matrix: entry `(I, J)` is the minor on rows `I` and
/// columns `J`, subsets in lexicographic order. Multiplicative in `A`.
pub fn exterior_power(a: &Matrix<Rat>, k: usize) -> Result<Matrix<Rat>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if k > n {
        return Err(Error::ExteriorOutOfRange { k, n });
    }
    let subsets = lex_subsets(n, k);
    let size = subsets.len();
    let entries = exec::map_indexed(size * size, |idx| {
        let (si, sj) = (idx / size, idx % size);
        let rows = &subsets[si];
        let cols = &subsets[sj];
        let sub: Vec<Vec<Rat>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(sub).expect("square minor").det().expect("square")
    });
    Matrix::new(size, size, entries)
}

/// Per-row integer lift: returns the integer matrix, the product of all row
/// scalings (for determinants) and the individual row scalings.
fn integer_lift(m: &Matrix<Rat>) -> (Vec<Vec<BigInt>>, Rat, Vec<BigInt>) {
    let mut scalings = Vec::with_capacity(m.rows());
    let mut total = Rat::one();
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut lcm = BigInt::one();
        for v in m.row(i) {
            lcm = lcm.lcm(v.denom());
        }
        rows.push(
            m.row(i)
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect(),
        );
        total = &total * &Rat::from_bigint(lcm.clone());
        scalings.push(lcm);
    }
    (rows, total, scalings)
}

struct BareissEchelon {
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    rank: usize,
    swaps: usize,
}

/// One-step fraction-free Bareiss elimination, in place. Pivots are chosen
/// with the smallest non-zero magnitude to limit entry growth.
fn bareiss(m: &mut [Vec<BigInt>]) -> BareissEchelon {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs());
        let Some(p) = pivot else { continue };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        // Every row below is rescaled, even with a zero head entry; the
        // exact division by `prev` relies on the full Sylvester identity.
        for i in r + 1..rows {
            let head = std::mem::replace(&mut m[i][c], BigInt::zero());
            for j in c + 1..cols {
                let num = &m[i][j] * &m[r][c] - &head * &m[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                m[i][j] = num / &prev;
            }
        }
        prev = m[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    BareissEchelon {
        pivot_rows: (0..r).collect(),
        pivot_cols,
        rank: r,
        swaps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{field_make, FieldMake};
    use std::sync::Arc;

    fn golden_field() -> Arc<crate::numfield::NumberField> {
        match field_make(Poly::parse("x^2-3x+1").unwrap()).unwrap() {
            FieldMake::Field(f) => f,
            _ => unreachable!(),
        }
    }

    fn cat_map() -> Matrix<Rat> {
        Matrix::from_i64_rows(&[&[2, 1], &[1, 1]])
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&Matrix::<Rat>::identity(3)).unwrap(), 3);
        assert_eq!(rank(&Matrix::<Rat>::zeros(2, 4)).unwrap(), 0);
    }

    #[test]
    fn rank_of_eigen_shift_over_number_field() {
        // A^T - mu I has nullity one when mu is a simple eigenvalue.
        let f = golden_field();
        let mu = f.generator();
        let shifted = cat_map().transpose().lift().sub_scalar_identity(&mu).unwrap();
        assert_eq!(rank(&shifted).unwrap(), 1);
        assert_eq!(coker_dim(&shifted).unwrap(), 1);
    }

    #[test]
    fn kernel_basics() {
        assert_eq!(kernel_basis(&Matrix::<Rat>::identity(2)).unwrap().dim(), 0);
        let z = kernel_basis(&Matrix::<Rat>::zeros(2, 2)).unwrap();
        assert_eq!(z.dim(), 2);
        assert_eq!(z.vectors[0], vec![Rat::one(), Rat::zero()]);
        assert_eq!(z.vectors[1], vec![Rat::zero(), Rat::one()]);
    }

    #[test]
    fn kernel_vector_is_an_eigenvector() {
        let f = golden_field();
        let mu = f.generator();
        let shifted = cat_map().transpose().lift().sub_scalar_identity(&mu).unwrap();
        let basis = kernel_basis(&shifted).unwrap();
        assert_eq!(basis.dim(), 1);
        // Verify by substitution.
        let image = shifted.mul_vec(&basis.vectors[0]).unwrap();
        assert!(image.iter().all(FieldElement::is_zero));
        // The kernel vector is proportional to (1, mu - 2).
        let v = &basis.vectors[0];
        let expected = f.element(Poly::parse("x-2").unwrap());
        let scaled = v[0].mul(&expected);
        assert_eq!(v[1], scaled);
    }

    #[test]
    fn coker_of_unit_shift_in_degree_zero() {
        // [1 - mu] is invertible for mu != 1, so the cokernel vanishes.
        let f = golden_field();
        let one_minus_mu = FieldElement::one().sub(&f.generator());
        let m = Matrix::new(1, 1, vec![one_minus_mu]).unwrap();
        assert_eq!(coker_dim(&m).unwrap(), 0);
        assert_eq!(coker_dim(&Matrix::<Rat>::identity(4)).unwrap(), 0);
    }

    #[test]
    fn membership_basics() {
        let id = Matrix::<Rat>::identity(2);
        assert!(membership(&id, &[Rat::from_int(3), Rat::of(1, 2)]).unwrap());
        let zero = Matrix::<Rat>::zeros(2, 2);
        assert!(!membership(&zero, &[Rat::one(), Rat::zero()]).unwrap());
        assert!(membership(&zero, &[Rat::zero(), Rat::zero()]).unwrap());
    }

    #[test]
    fn eigenvector_not_in_image_of_semisimple_shift() {
        let f = golden_field();
        let mu = f.generator();
        let shifted = cat_map().transpose().lift().sub_scalar_identity(&mu).unwrap();
        let eig = kernel_basis(&shifted).unwrap().vectors[0].clone();
        assert!(!membership(&shifted, &eig).unwrap());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(
            charpoly(&Matrix::<Rat>::identity(2)).unwrap(),
            Poly::parse("x^2-2x+1").unwrap()
        );
        assert_eq!(charpoly(&cat_map()).unwrap(), Poly::parse("x^2-3x+1").unwrap());
        let block = sl4_block();
        let q = Poly::parse("x^2-3x+1").unwrap();
        assert_eq!(charpoly(&block).unwrap(), q.mul(&q));
    }

    pub(crate) fn sl4_block() -> Matrix<Rat> {
        Matrix::from_i64_rows(&[
            &[1, 1, 0, 0],
            &[1, 2, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 1, 2],
        ])
    }

    #[test]
    fn exterior_power_edges() {
        let a = sl4_block();
        assert_eq!(exterior_power(&a, 1).unwrap(), a);
        let top = exterior_power(&a, 4).unwrap();
        assert_eq!(top.get(0, 0), &a.det().unwrap());
        assert_eq!(exterior_power(&a, 0).unwrap(), Matrix::<Rat>::identity(1));
        assert!(matches!(
            exterior_power(&a, 5),
            Err(Error::ExteriorOutOfRange { k: 5, n: 4 })
        ));
    }

    #[test]
    fn exterior_square_multiplicativity() {
        let a = sl4_block();
        let a2 = exterior_power(&a, 2).unwrap();
        assert_eq!(a2.rows(), 6);
        // wedge^2(A) * wedge^2(A^{-1}) = I via multiplicativity.
        let det = a.det().unwrap();
        assert!(det.is_one());
        let inv = adjugate_inverse(&a);
        let prod = a2.matmul(&exterior_power(&inv, 2).unwrap()).unwrap();
        assert_eq!(prod, Matrix::<Rat>::identity(6));
    }

    fn adjugate_inverse(a: &Matrix<Rat>) -> Matrix<Rat> {
        // Inverse through the kernel of [A | -I] style solves, small and exact.
        let n = a.rows();
        let mut cols = Vec::new();
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            cols.push(solve(a, &e).unwrap().unwrap());
        }
        Matrix::from_cols(n, &cols).unwrap()
    }

    #[test]
    fn det_and_solve() {
        let a = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.det().unwrap(), Rat::from_int(6));
        let sol = solve(&a, &[Rat::from_int(4), Rat::from_int(9)]).unwrap().unwrap();
        assert_eq!(sol, vec![Rat::from_int(2), Rat::from_int(3)]);
        let singular = Matrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(singular.det().unwrap(), Rat::zero());
        assert!(solve(&singular, &[Rat::zero(), Rat::one()]).unwrap().is_none());
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::<Rat>::zeros(0, 3);
        assert_eq!(rank(&m).unwrap(), 0);
        assert_eq!(kernel_basis(&m).unwrap().dim(), 3);
        let sq = Matrix::<Rat>::zeros(0, 0);
        assert_eq!(rank(&sq).unwrap(), 0);
        assert_eq!(sq.det().unwrap(), Rat::one());
    }
}
