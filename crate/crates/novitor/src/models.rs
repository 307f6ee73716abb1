//! Finite models of the fiber cohomology with its monodromy action.
//!
//! A [`CohomologyModel`] stores the Betti numbers `b_0..b_n` of the fiber
//! together with an invertible matrix per degree representing the pullback
//! of the monodromy on cohomology. Torus models are built from a unimodular
//! integer matrix, nilmanifold models come from [`crate::lie`], and generic
//! models are validated user input.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Torus,
    Nilmanifold,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyModel {
    betti: Vec<usize>,
    maps: Vec<Matrix<Rat>>,
    provenance: Provenance,
}

impl CohomologyModel {
    /// Torus model for a unimodular integer matrix `A`: Betti numbers are
    /// binomials and the action on degree `k` is the k-th compound of `A^T`.
    pub fn torus(a: &Matrix<Rat>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !a.has_integer_entries() {
            return Err(Error::NonIntegerMatrix);
        }
        let det = a.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        let n = a.rows();
        let at = a.transpose();
        let maps = crate::exec::try_map_indexed(n + 1, |k| linalg::exterior_power(&at, k))?;
        let betti = maps.iter().map(Matrix::rows).collect();
        Self::from_parts(betti, maps, Provenance::Torus)
    }

    /// Validated direct input of Betti numbers and pullback matrices.
    pub fn generic(betti: Vec<usize>, maps: Vec<Matrix<Rat>>) -> Result<Self> {
        Self::from_parts(betti, maps, Provenance::Generic)
    }

    pub(crate) fn from_parts(
        betti: Vec<usize>,
        maps: Vec<Matrix<Rat>>,
        provenance: Provenance,
    ) -> Result<Self> {
        if betti.is_empty() {
            return Err(Error::BadBetti("empty Betti list".into()));
        }
        if betti[0] != 1 {
            return Err(Error::BadBetti(format!("b_0 must be 1, got {}", betti[0])));
        }
        if maps.len() != betti.len() {
            return Err(Error::BadBetti(format!(
                "{} Betti numbers but {} maps",
                betti.len(),
                maps.len()
            )));
        }
        for (k, (b, m)) in betti.iter().zip(&maps).enumerate() {
            if m.rows() != *b || m.cols() != *b {
                return Err(Error::BadBetti(format!(
                    "map in degree {k} is {}x{}, expected {b}x{b}",
                    m.rows(),
                    m.cols()
                )));
            }
            if *b > 0 && m.det()?.is_zero() {
                return Err(Error::SingularMap { degree: k });
            }
        }
        if maps[0].get(0, 0) != &Rat::one() {
            return Err(Error::BadBetti("the degree-0 map must be [1]".into()));
        }
        Ok(CohomologyModel {
            betti,
            maps,
            provenance,
        })
    }

    /// Dimension of the fiber model, i.e. the top cohomological degree.
    pub fn top_degree(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn map(&self, k: usize) -> &Matrix<Rat> {
        &self.maps[k]
    }

    pub fn maps(&self) -> &[Matrix<Rat>] {
        &self.maps
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}
