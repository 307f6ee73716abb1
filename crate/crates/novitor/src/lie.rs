//! Chevalley-Eilenberg cohomology of a finite-dimensional Lie algebra and
//! the induced cohomology model of a nilmanifold with automorphism.
//!
//! The differential acts on generators by `d theta^k = -sum_{i<j} K^k_{ij}
//! theta^i wedge theta^j` and extends as a degree-one derivation. For a
//! nilpotent algebra with rational structure constants this computes the de
//! Rham cohomology of the associated nilmanifold together with the action
//! of an algebra automorphism on it. Lattice existence is assumed, not
//! verified (rational structure constants suffice for one to exist).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::models::{CohomologyModel, Provenance};
use crate::rat::Rat;

/// Structure constants of a Lie algebra in a fixed basis `e_1..e_m`.
/// Brackets are stored for `i < j` only; indices are 1-based at the API.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<Rat>>,
}

/// One bracket relation `[e_i, e_j] = sum_k coeffs[k] e_k`, 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, Rat)>,
}

impl LieAlgebraData {
    pub fn new(dim: usize, brackets: Vec<Bracket>) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
        for b in brackets {
            if b.i == 0 || b.j == 0 || b.i >= b.j || b.j > dim {
                return Err(Error::BracketIndex { i: b.i, j: b.j, k: 0 });
            }
            let entry = table
                .entry((b.i - 1, b.j - 1))
                .or_insert_with(|| vec![Rat::zero(); dim]);
            for (k, c) in b.coeffs {
                if k == 0 || k > dim {
                    return Err(Error::BracketIndex { i: b.i, j: b.j, k });
                }
                entry[k - 1] = &entry[k - 1] + &c;
            }
        }
        table.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(LieAlgebraData { dim, brackets: table })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    /// `[e_1, e_2] = e_3`, the 3-dimensional Heisenberg algebra.
    pub fn heisenberg() -> Self {
        LieAlgebraData::new(
            3,
            vec![Bracket {
                i: 1,
                j: 2,
                coeffs: vec![(3, Rat::one())],
            }],
        )
        .expect("valid indices")
    }

    /// `[e_1, e_2] = e_1`, the 2-dimensional non-abelian algebra.
    pub fn aff1() -> Self {
        LieAlgebraData::new(
            2,
            vec![Bracket {
                i: 1,
                j: 2,
                coeffs: vec![(1, Rat::one())],
            }],
        )
        .expect("valid indices")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_i, e_j]`, 0-based, antisymmetric in `i, j`.
    fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        if i == j {
            return vec![Rat::zero(); self.dim];
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.brackets.get(&(a, b)) {
            None => vec![Rat::zero(); self.dim],
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.iter().map(|c| -c).collect(),
        }
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for ((i, j), coeffs) in &self.brackets {
            let scale = &(&x[*i] * &y[*j]) - &(&x[*j] * &y[*i]);
            if scale.is_zero() {
                continue;
            }
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(c * &scale);
                }
            }
        }
        out
    }

    /// Verifies the Jacobi identity on all basis triples, reporting the
    /// first failing triple and component.
    pub fn check_jacobi(&self) -> Result<()> {
        let m = self.dim;
        let basis: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                let mut e = vec![Rat::zero(); m];
                e[i] = Rat::one();
                e
            })
            .collect();
        for i in 0..m {
            for j in i + 1..m {
                for r in j + 1..m {
                    let mut acc = self.bracket(&self.bracket_basis(i, j), &basis[r]);
                    for (t, v) in self.bracket(&self.bracket_basis(j, r), &basis[i]).iter().enumerate() {
                        acc[t] = &acc[t] + v;
                    }
                    for (t, v) in self.bracket(&self.bracket_basis(r, i), &basis[j]).iter().enumerate() {
                        acc[t] = &acc[t] + v;
                    }
                    if let Some(k) = acc.iter().position(|c| !c.is_zero()) {
                        return Err(Error::JacobiViolation {
                            i: i + 1,
                            j: j + 1,
                            r: r + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension of the derived subalgebra `[g, g]`.
    pub fn derived_dim(&self) -> usize {
        let vectors: Vec<Vec<Rat>> = self.brackets.values().cloned().collect();
        span_basis(self.dim, vectors).len()
    }

    /// Lower-central-series test: nilpotent iff the series reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let m = self.dim;
        let basis: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                let mut e = vec![Rat::zero(); m];
                e[i] = Rat::one();
                e
            })
            .collect();
        let mut current: Vec<Vec<Rat>> = self.brackets.values().cloned().collect();
        current = span_basis(m, current);
        loop {
            if current.is_empty() {
                return true;
            }
            let mut next = Vec::new();
            for e in &basis {
                for v in &current {
                    next.push(self.bracket(e, v));
                }
            }
            let next = span_basis(m, next);
            if next.len() >= current.len() {
                return false;
            }
            current = next;
        }
    }
}

/// Echelon basis of the span of a list of vectors.
fn span_basis(ambient: usize, vectors: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let nonzero: Vec<Vec<Rat>> = vectors
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(nonzero).expect("uniform length");
    debug_assert_eq!(m.cols(), ambient);
    let (rows, _) = <Rat as linalg::LinAlgField>::echelon(&m).expect("exact");
    rows
}

/// The Chevalley-Eilenberg complex: `diffs[k]` maps k-forms to (k+1)-forms
/// in the lexicographic wedge basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CEComplex {
    dim: usize,
    diffs: Vec<Matrix<Rat>>,
}

impl CEComplex {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d_k : Lambda^k -> Lambda^{k+1}`, for `k = 0..=dim`.
    pub fn diff(&self, k: usize) -> &Matrix<Rat> {
        &self.diffs[k]
    }
}

/// Sorts a wedge index list, returning the permutation sign; `None` for a
/// repeated index.
fn wedge_normalize(indices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // Insertion sort, counting transpositions.
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in indices.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

/// Builds the full complex; fails with the offending triple when the Jacobi
/// identity does not hold.
pub fn ce_complex(g: &LieAlgebraData) -> Result<CEComplex> {
    g.check_jacobi()?;
    let m = g.dim();
    let mut diffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let domain = linalg::lex_subsets(m, k);
        let codomain = linalg::lex_subsets(m, k + 1);
        let index_of: BTreeMap<&[usize], usize> = codomain
            .iter()
            .enumerate()
            .map(|(idx, s)| (s.as_slice(), idx))
            .collect();
        let mut d = Matrix::<Rat>::zeros(codomain.len(), domain.len());
        for (col, subset) in domain.iter().enumerate() {
            for (t, &gen) in subset.iter().enumerate() {
                let slot_sign = if t % 2 == 0 { 1 } else { -1 };
                for ((bi, bj), coeffs) in &g.brackets {
                    let kappa = &coeffs[gen];
                    if kappa.is_zero() {
                        continue;
                    }
                    // d theta^gen picks up -kappa on theta^bi wedge theta^bj.
                    let mut word: Vec<usize> = Vec::with_capacity(subset.len() + 1);
                    word.extend_from_slice(&subset[..t]);
                    word.push(*bi);
                    word.push(*bj);
                    word.extend_from_slice(&subset[t + 1..]);
                    let Some(perm_sign) = wedge_normalize(&mut word) else {
                        continue;
                    };
                    let row = index_of[word.as_slice()];
                    let total = Rat::from_int((slot_sign * perm_sign) as i64);
                    let contrib = &(-kappa) * &total;
                    let v = d.get(row, col) + &contrib;
                    d.set(row, col, v);
                }
            }
        }
        diffs.push(d);
    }
    let complex = CEComplex { dim: m, diffs };
    debug_assert!(d_squared_vanishes(&complex));
    Ok(complex)
}

fn d_squared_vanishes(c: &CEComplex) -> bool {
    for k in 0..c.dim {
        let prod = c.diffs[k + 1].matmul(&c.diffs[k]).expect("chain shapes");
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if !prod.get(i, j).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Betti numbers with representative cocycle bases, one per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CeCohomology {
    pub betti: Vec<usize>,
    /// Per degree, the selected cocycle representatives (coordinates in the
    /// lexicographic wedge basis).
    pub representatives: Vec<Vec<Vec<Rat>>>,
}

pub fn ce_cohomology(g: &LieAlgebraData) -> Result<CeCohomology> {
    let complex = ce_complex(g)?;
    let m = g.dim();
    let mut betti = Vec::with_capacity(m + 1);
    let mut representatives = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let kernel = linalg::kernel_basis(complex.diff(k))?;
        let image_rows = if k == 0 {
            Vec::new()
        } else {
            column_space_basis(complex.diff(k - 1))
        };
        let mut echelon = image_rows;
        let mut reps = Vec::new();
        for z in kernel.vectors {
            if insert_if_independent(&mut echelon, z.clone()) {
                reps.push(z);
            }
        }
        betti.push(reps.len());
        representatives.push(reps);
    }
    Ok(CeCohomology {
        betti,
        representatives,
    })
}

fn column_space_basis(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let t = m.transpose();
    let (rows, _) = <Rat as linalg::LinAlgField>::echelon(&t).expect("exact");
    rows
}

/// Reduces `v` against an echelon list; inserts the reduced vector and
/// returns true when it is independent.
fn insert_if_independent(echelon: &mut Vec<Vec<Rat>>, mut v: Vec<Rat>) -> bool {
    for row in echelon.iter() {
        let pivot = row.iter().position(|c| !c.is_zero()).expect("non-zero row");
        if !v[pivot].is_zero() {
            let factor = &v[pivot] / &row[pivot];
            for (t, c) in row.iter().enumerate() {
                v[t] = &v[t] - &(&factor * c);
            }
        }
    }
    if v.iter().all(Rat::is_zero) {
        return false;
    }
    let pivot = v.iter().position(|c| !c.is_zero()).expect("non-zero");
    let pos = echelon
        .iter()
        .position(|row| {
            row.iter().position(|c| !c.is_zero()).expect("non-zero row") > pivot
        })
        .unwrap_or(echelon.len());
    echelon.insert(pos, v);
    true
}

/// Cohomology model of the nilmanifold for `g` with the pullback action of
/// the automorphism `phi` (columns are the images of the basis vectors).
pub fn nilmanifold_model(g: &LieAlgebraData, phi: &Matrix<Rat>) -> Result<CohomologyModel> {
    let m = g.dim();
    if phi.rows() != m || phi.cols() != m {
        return Err(Error::ShapeMismatch(format!(
            "automorphism must be {m}x{m}, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    if phi.det()?.is_zero() {
        return Err(Error::SingularAutomorphism);
    }
    for i in 0..m {
        for j in i + 1..m {
            let lhs = g.bracket(&phi.col(i), &phi.col(j));
            let rhs = phi.mul_vec(&g.bracket_basis(i, j))?;
            if lhs != rhs {
                return Err(Error::NotAutomorphism { i: i + 1, j: j + 1 });
            }
        }
    }
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }

    let complex = ce_complex(g)?;
    let coh = ce_cohomology(g)?;
    let phi_t = phi.transpose();
    let mut maps = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let reps = &coh.representatives[k];
        let b = reps.len();
        let compound = linalg::exterior_power(&phi_t, k)?;
        let image_basis = if k == 0 {
            Vec::new()
        } else {
            column_space_basis(complex.diff(k - 1))
        };
        let ambient = compound.rows();
        let mut columns: Vec<Vec<Rat>> = reps.clone();
        columns.extend(image_basis.iter().cloned());
        let system = Matrix::from_cols(ambient, &columns)?;
        let mut induced = Matrix::<Rat>::zeros(b, b);
        for (col, z) in reps.iter().enumerate() {
            let w = compound.mul_vec(z)?;
            // The pullback of a cocycle stays a cocycle, so the solve is
            // always consistent for a genuine automorphism.
            let x = linalg::solve(&system, &w)?.ok_or_else(|| {
                Error::ShapeMismatch("pullback left the cocycle space".into())
            })?;
            for row in 0..b {
                induced.set(row, col, x[row].clone());
            }
        }
        maps.push(induced);
    }
    CohomologyModel::from_parts(coh.betti, maps, Provenance::Nilmanifold)
}
