//! Exact twisted-cohomology dimensions of mapping tori.
//!
//! For a twist scalar `mu` and a cohomology model of the fiber, degree `k`
//! contributes the kernel and cokernel of `M_k - mu I`. The mapping-torus
//! cohomology assembles from the short exact sequence
//! `0 -> C^{k-1} -> H^k -> K^k -> 0`; for `mu != 1` this is Morse-Novikov
//! cohomology, while `mu = 1` reproduces the ordinary Betti numbers via the
//! Wang sequence and is reachable only through [`betti_mapping_torus`].

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{self, LinAlgField, Matrix};
use crate::models::CohomologyModel;
use crate::numfield::{factor_squarefree, NumberField};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::sturm::{self, Interval, Sign};

/// The twist scalar `mu = e^{-c}`: a non-zero rational, or the generator of
/// a number field pinned to one real root by an isolating interval.
#[derive(Debug, Clone, PartialEq)]
pub enum TwistScalar {
    Rational(Rat),
    Algebraic {
        field: Arc<NumberField>,
        pin: Interval,
    },
}

impl TwistScalar {
    pub fn rational(r: Rat) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroTwist);
        }
        Ok(TwistScalar::Rational(r))
    }

    /// Pins the root of `field`'s modulus isolated by `pin`. A degree-one
    /// field collapses to its rational root.
    pub fn algebraic(field: Arc<NumberField>, pin: Interval) -> Result<Self> {
        let modulus = field.modulus();
        if sturm::count_roots(modulus, &pin)? != 1 {
            return Err(Error::NotIsolating);
        }
        if field.degree() == 1 {
            // x - a pins the rational a.
            return TwistScalar::rational(-&modulus.coeff(0));
        }
        if modulus.coeff(0).is_zero() && pin.contains(&Rat::zero()) {
            return Err(Error::ZeroTwist);
        }
        Ok(TwistScalar::Algebraic { field, pin })
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, TwistScalar::Rational(r) if r.is_one())
    }

    /// Sign of the pinned real number.
    pub fn sign(&self) -> Result<Sign> {
        match self {
            TwistScalar::Rational(r) => Ok(match r.signum() {
                0 => Sign::Zero,
                s if s > 0 => Sign::Positive,
                _ => Sign::Negative,
            }),
            TwistScalar::Algebraic { field, pin } => sturm::embed_sign(&field.generator(), pin),
        }
    }

    /// Double-precision approximation, certified to 10^-12 by refinement.
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            TwistScalar::Rational(r) => Ok(r.to_f64()),
            TwistScalar::Algebraic { field, pin } => sturm::root_to_f64(field.modulus(), pin),
        }
    }
}

impl Serialize for TwistScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TwistScalar::Rational(r) => {
                let mut s = serializer.serialize_struct("TwistScalar", 2)?;
                s.serialize_field("type", "rational")?;
                s.serialize_field("value", r)?;
                s.end()
            }
            TwistScalar::Algebraic { field, pin } => {
                let mut s = serializer.serialize_struct("TwistScalar", 3)?;
                s.serialize_field("type", "algebraic")?;
                s.serialize_field("modulus", field.modulus())?;
                s.serialize_field("interval", &(pin.lo(), pin.hi()))?;
                s.end()
            }
        }
    }
}

/// Per-degree dimensions of the twisted cohomology of the mapping torus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NovikovResult {
    pub mu: TwistScalar,
    #[serde(rename = "dim_K")]
    pub dim_k: Vec<usize>,
    #[serde(rename = "dim_C")]
    pub dim_c: Vec<usize>,
    #[serde(rename = "dim_H")]
    pub dim_h: Vec<usize>,
}

impl NovikovResult {
    /// The bookkeeping identities of the short exact sequence.
    pub fn check_invariants(&self) -> bool {
        let n = self.dim_k.len();
        if self.dim_c.len() != n || self.dim_h.len() != n + 1 {
            return false;
        }
        if self.dim_k != self.dim_c {
            return false;
        }
        if self.dim_h[0] != self.dim_k[0] || self.dim_h[n] != self.dim_c[n - 1] {
            return false;
        }
        for k in 1..n {
            if self.dim_h[k] != self.dim_c[k - 1] + self.dim_k[k] {
                return false;
            }
        }
        let euler: i64 = self
            .dim_h
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        euler == 0
    }
}

fn kc_dims_generic<F: LinAlgField>(
    model: &CohomologyModel,
    mu: &F,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let degrees = model.top_degree() + 1;
    let ranks = exec::try_map_indexed(degrees, |k| -> Result<usize> {
        let lifted: Matrix<F> = model.map(k).map(|r| F::from_rat(r));
        let shifted = lifted.sub_scalar_identity(mu)?;
        linalg::rank(&shifted)
    })?;
    let dim_k: Vec<usize> = model
        .betti()
        .iter()
        .zip(&ranks)
        .map(|(b, r)| b - r)
        .collect();
    // The shifted maps are square, so kernel and cokernel dimensions agree.
    let dim_c = dim_k.clone();
    Ok((dim_k, dim_c))
}

/// Kernel/cokernel dimensions per degree, for any non-zero twist.
pub(crate) fn kc_dims(model: &CohomologyModel, t: &TwistScalar) -> Result<(Vec<usize>, Vec<usize>)> {
    match t {
        TwistScalar::Rational(r) => kc_dims_generic::<Rat>(model, r),
        TwistScalar::Algebraic { field, .. } => {
            kc_dims_generic(model, &field.generator())
        }
    }
}

fn assemble(mu: TwistScalar, dim_k: Vec<usize>, dim_c: Vec<usize>) -> NovikovResult {
    let n = dim_k.len();
    let mut dim_h = Vec::with_capacity(n + 1);
    dim_h.push(dim_k[0]);
    for k in 1..n {
        dim_h.push(dim_c[k - 1] + dim_k[k]);
    }
    dim_h.push(dim_c[n - 1]);
    let result = NovikovResult {
        mu,
        dim_k,
        dim_c,
        dim_h,
    };
    debug_assert!(result.check_invariants());
    result
}

/// Morse-Novikov dimensions `dim H^k_{cdt}` for `mu = e^{-c}`, `mu != 1`.
/// The unit twist is rejected; mapping-torus Betti numbers are available
/// through [`betti_mapping_torus`] instead.
pub fn novikov_dims(model: &CohomologyModel, t: &TwistScalar) -> Result<NovikovResult> {
    if t.is_unit() {
        return Err(Error::UnitTwist);
    }
    let (dim_k, dim_c) = kc_dims(model, t)?;
    Ok(assemble(t.clone(), dim_k, dim_c))
}

/// Betti numbers of the mapping torus by the Wang sequence: the same
/// kernel/cokernel assembly evaluated at `mu = 1`.
pub fn betti_mapping_torus(model: &CohomologyModel) -> Vec<usize> {
    let one = TwistScalar::Rational(Rat::one());
    let (dim_k, dim_c) = kc_dims(model, &one).expect("rational elimination is total");
    assemble(one, dim_k, dim_c).dim_h
}

/// An irreducible factor of the characteristic polynomial of `M_k`, with
/// its isolated real roots and their signs. Positive roots are exactly the
/// admissible twist scalars with `dim K^k > 0` at this degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenFactor {
    pub poly: Poly,
    pub roots: Vec<(Interval, Sign)>,
}

/// Certified factorization of `charpoly(M_k)` into irreducible factors with
/// isolated, sign-flagged real roots.
pub fn eigenvalue_candidates(model: &CohomologyModel, k: usize) -> Result<Vec<EigenFactor>> {
    if k > model.top_degree() {
        return Err(Error::DegreeOutOfRange {
            k,
            top: model.top_degree(),
        });
    }
    let cp = linalg::charpoly(model.map(k))?;
    if cp.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let squarefree = cp.squarefree_part()?;
    let factors = factor_squarefree(&squarefree)?;
    factors
        .into_iter()
        .map(|poly| {
            let roots = sturm::isolate_all(&poly)?
                .into_iter()
                .map(|iv| {
                    let sign = root_sign(&poly, &iv)?;
                    Ok((iv, sign))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EigenFactor { poly, roots })
        })
        .collect()
}

/// Sign of the single root isolated by `iv`, decided by refinement. The
/// only irreducible monic polynomial with root zero is `x` itself.
fn root_sign(poly: &Poly, iv: &Interval) -> Result<Sign> {
    if poly.coeff(0).is_zero() {
        return Ok(Sign::Zero);
    }
    let mut iv = iv.clone();
    loop {
        if let Some(sign) = iv.sign() {
            return Ok(sign);
        }
        let half = &iv.width() * &Rat::of(1, 2);
        iv = sturm::refine(poly, &iv, &half)?;
    }
}
