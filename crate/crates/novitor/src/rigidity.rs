//! The rigidity criterion for model Lie affine foliations.
//!
//! The input is the monodromy action `M` on degree-one fiber cohomology, a
//! non-zero eigenvector `alpha` for a real positive twist `mu != 1`, and the
//! fiber's first Betti number. The criterion is one-dimensionality of
//! `ker((M - mu I)^2)`; equivalently the deformation cohomology dimension
//! `(dim ker(M - mu I) - 1) + [alpha in im(M - mu I)]` vanishes. A failed
//! criterion is reported as "rigidity not established", never as a proof of
//! non-rigidity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, LinAlgField, Matrix};
use crate::models::CohomologyModel;
use crate::novikov::TwistScalar;
use crate::numfield::FieldElement;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::sturm::Sign;

/// Validated data of a model Lie affine foliation on a mapping torus.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFoliationSpec {
    h1_map: Matrix<Rat>,
    alpha: Vec<Poly>,
    mu: TwistScalar,
    fiber_b1: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "RIGID")]
    Rigid,
    #[serde(rename = "CRITERION_FAILS")]
    CriterionFails,
}

impl Verdict {
    pub fn describe(&self) -> &'static str {
        match self {
            Verdict::Rigid => "RIGID: the squared-kernel criterion holds",
            Verdict::CriterionFails => {
                "CRITERION_FAILS: H^1(A) != 0; rigidity not established"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    /// `dim ker(M - mu I)`.
    pub dim_eig: usize,
    /// `dim ker((M - mu I)^2)`.
    pub dim_gen2: usize,
    /// Whether `alpha` lies in the image of `M - mu I`.
    pub alpha_in_image: bool,
    /// `dim H^1(A) = (dim_eig - 1) + [alpha_in_image]`.
    pub dim_h1a: usize,
    pub verdict: Verdict,
}

impl ModelFoliationSpec {
    /// Validates every defining invariant: square map of size `fiber_b1 >= 2`,
    /// `mu` real positive and not 1, `alpha` a non-zero `mu`-eigenvector
    /// living in the twist's ground field.
    pub fn new(
        h1_map: Matrix<Rat>,
        alpha: Vec<Poly>,
        mu: TwistScalar,
        fiber_b1: usize,
    ) -> Result<Self> {
        if !h1_map.is_square() || h1_map.rows() != fiber_b1 {
            return Err(Error::ShapeMismatch(format!(
                "H^1 map must be {fiber_b1}x{fiber_b1}, got {}x{}",
                h1_map.rows(),
                h1_map.cols()
            )));
        }
        if fiber_b1 < 2 {
            return Err(Error::FiberTooSmall { b1: fiber_b1 });
        }
        if alpha.len() != fiber_b1 {
            return Err(Error::ShapeMismatch(format!(
                "alpha must have {fiber_b1} entries, got {}",
                alpha.len()
            )));
        }
        if alpha.iter().all(Poly::is_zero) {
            return Err(Error::AlphaZero);
        }
        if mu.is_unit() {
            return Err(Error::UnitTwist);
        }
        if mu.sign()? != Sign::Positive {
            return Err(Error::MuNotPositive);
        }
        let spec = ModelFoliationSpec {
            h1_map,
            alpha,
            mu,
            fiber_b1,
        };
        if !spec.alpha_is_eigenvector()? {
            return Err(Error::AlphaNotEigenvector);
        }
        Ok(spec)
    }

    /// Projects a full cohomology model to its degree-one data.
    pub fn from_model(
        model: &CohomologyModel,
        alpha: Vec<Poly>,
        mu: TwistScalar,
    ) -> Result<Self> {
        ModelFoliationSpec::new(model.map(1).clone(), alpha, mu, model.betti()[1])
    }

    pub fn h1_map(&self) -> &Matrix<Rat> {
        &self.h1_map
    }

    pub fn mu(&self) -> &TwistScalar {
        &self.mu
    }

    pub fn fiber_b1(&self) -> usize {
        self.fiber_b1
    }

    fn alpha_is_eigenvector(&self) -> Result<bool> {
        match &self.mu {
            TwistScalar::Rational(r) => {
                let alpha = self.alpha_rational()?;
                let shifted = self.h1_map.sub_scalar_identity(r)?;
                Ok(shifted.mul_vec(&alpha)?.iter().all(Rat::is_zero))
            }
            TwistScalar::Algebraic { field, .. } => {
                let alpha = self.alpha_algebraic();
                let shifted = self
                    .h1_map
                    .lift()
                    .sub_scalar_identity(&field.generator())?;
                Ok(shifted.mul_vec(&alpha)?.iter().all(FieldElement::is_zero))
            }
        }
    }

    fn alpha_rational(&self) -> Result<Vec<Rat>> {
        self.alpha
            .iter()
            .map(|p| {
                if p.degree().map_or(true, |d| d == 0) {
                    Ok(p.coeff(0))
                } else {
                    Err(Error::AlphaFieldMismatch)
                }
            })
            .collect()
    }

    fn alpha_algebraic(&self) -> Vec<FieldElement> {
        let TwistScalar::Algebraic { field, .. } = &self.mu else {
            unreachable!("caller matched the twist")
        };
        self.alpha.iter().map(|p| field.element(p.clone())).collect()
    }
}

struct Analysis {
    dim_eig: usize,
    dim_gen2: usize,
    alpha_in_image: bool,
}

fn analyze<F: LinAlgField>(m: &Matrix<F>, mu: &F, alpha: &[F]) -> Result<Analysis> {
    let shifted = m.sub_scalar_identity(mu)?;
    let n = shifted.cols();
    let dim_eig = n - linalg::rank(&shifted)?;
    let squared = shifted.matmul(&shifted)?;
    let dim_gen2 = n - linalg::rank(&squared)?;
    let alpha_in_image = linalg::membership(&shifted, alpha)?;
    Ok(Analysis {
        dim_eig,
        dim_gen2,
        alpha_in_image,
    })
}

fn run_analysis(spec: &ModelFoliationSpec) -> Result<Analysis> {
    match &spec.mu {
        TwistScalar::Rational(r) => {
            analyze(&spec.h1_map, r, &spec.alpha_rational()?)
        }
        TwistScalar::Algebraic { field, .. } => analyze(
            &spec.h1_map.lift(),
            &field.generator(),
            &spec.alpha_algebraic(),
        ),
    }
}

/// Decides the criterion: RIGID exactly when `ker((M - mu I)^2)` is a line
/// (it is then automatically spanned by `alpha`).
pub fn check_rigidity(spec: &ModelFoliationSpec) -> Result<RigidityReport> {
    let a = run_analysis(spec)?;
    let dim_h1a = a.dim_eig - 1 + usize::from(a.alpha_in_image);
    let verdict = if a.dim_gen2 == 1 {
        Verdict::Rigid
    } else {
        Verdict::CriterionFails
    };
    let report = RigidityReport {
        dim_eig: a.dim_eig,
        dim_gen2: a.dim_gen2,
        alpha_in_image: a.alpha_in_image,
        dim_h1a,
        verdict,
    };
    // The two formulations agree on every valid spec.
    debug_assert_eq!(report.verdict == Verdict::Rigid, report.dim_h1a == 0);
    Ok(report)
}

/// `dim H^1(A)` from the long exact sequence: the twisted degree-one
/// contribution beyond the line of `alpha`, plus the wedge-injectivity
/// obstruction measured by the membership test.
pub fn deformation_h1_dim(spec: &ModelFoliationSpec) -> Result<usize> {
    fn kernel_dim_route<F: LinAlgField>(m: &Matrix<F>, mu: &F, alpha: &[F]) -> Result<usize> {
        let shifted = m.sub_scalar_identity(mu)?;
        let kernel = linalg::kernel_basis(&shifted)?;
        let member = linalg::membership(&shifted, alpha)?;
        Ok(kernel.dim() - 1 + usize::from(member))
    }
    match &spec.mu {
        TwistScalar::Rational(r) => {
            kernel_dim_route(&spec.h1_map, r, &spec.alpha_rational()?)
        }
        TwistScalar::Algebraic { field, .. } => kernel_dim_route(
            &spec.h1_map.lift(),
            &field.generator(),
            &spec.alpha_algebraic(),
        ),
    }
}

/// Structural self-test: the eigenline formulation
/// `dim ker = 1 and alpha not in image` must agree with the squared-kernel
/// formulation `dim ker^2 = 1` on every valid spec.
pub fn criterion_crosscheck(spec: &ModelFoliationSpec) -> Result<bool> {
    let a = run_analysis(spec)?;
    let eigen_route = a.dim_eig == 1 && !a.alpha_in_image;
    let squared_route = a.dim_gen2 == 1;
    Ok(eigen_route == squared_route)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{field_make, FieldMake, NumberField};
    use crate::sturm::Interval;
    use std::sync::Arc;

    fn golden_field() -> Arc<NumberField> {
        match field_make(Poly::parse("x^2-3x+1").unwrap()).unwrap() {
            FieldMake::Field(f) => f,
            _ => unreachable!(),
        }
    }

    fn golden_twist() -> TwistScalar {
        TwistScalar::algebraic(golden_field(), Interval::of(2, 3)).unwrap()
    }

    fn cat_spec() -> ModelFoliationSpec {
        // alpha = (1, mu - 2) spans the eigenline of A^T = [[2,1],[1,1]].
        ModelFoliationSpec::new(
            Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
            vec![Poly::one(), Poly::parse("x-2").unwrap()],
            golden_twist(),
            2,
        )
        .unwrap()
    }

    fn sl4_spec() -> ModelFoliationSpec {
        // Block-diagonal symmetric matrix; alpha = (1, mu-1, 0, 0).
        ModelFoliationSpec::new(
            Matrix::from_i64_rows(&[
                &[1, 1, 0, 0],
                &[1, 2, 0, 0],
                &[0, 0, 1, 1],
                &[0, 0, 1, 2],
            ]),
            vec![
                Poly::one(),
                Poly::parse("x-1").unwrap(),
                Poly::zero(),
                Poly::zero(),
            ],
            golden_twist(),
            4,
        )
        .unwrap()
    }

    #[test]
    fn cat_map_is_rigid() {
        let report = check_rigidity(&cat_spec()).unwrap();
        assert_eq!(report.verdict, Verdict::Rigid);
        assert_eq!(report.dim_eig, 1);
        assert_eq!(report.dim_gen2, 1);
        assert!(!report.alpha_in_image);
        assert_eq!(report.dim_h1a, 0);
        assert_eq!(deformation_h1_dim(&cat_spec()).unwrap(), 0);
    }

    #[test]
    fn sl4_block_fails_the_criterion() {
        let report = check_rigidity(&sl4_spec()).unwrap();
        assert_eq!(report.verdict, Verdict::CriterionFails);
        assert_eq!(report.dim_gen2, 2);
        assert_eq!(report.dim_eig, 2);
        assert!(!report.alpha_in_image);
        assert_eq!(report.dim_h1a, 1);
        assert_eq!(deformation_h1_dim(&sl4_spec()).unwrap(), 1);
    }

    #[test]
    fn jordan_block_puts_alpha_in_the_image() {
        // M = [[2,1],[0,2]] over Q with mu = 2: alpha = (1,0) = (M-2I)e_2.
        let spec = ModelFoliationSpec::new(
            Matrix::from_i64_rows(&[&[2, 1], &[0, 2]]),
            vec![Poly::one(), Poly::zero()],
            TwistScalar::rational(Rat::from_int(2)).unwrap(),
            2,
        )
        .unwrap();
        let report = check_rigidity(&spec).unwrap();
        assert_eq!(report.dim_eig, 1);
        assert!(report.alpha_in_image);
        assert_eq!(report.dim_h1a, 1);
        assert_eq!(report.dim_gen2, 2);
        assert_eq!(report.verdict, Verdict::CriterionFails);
        assert!(criterion_crosscheck(&spec).unwrap());
    }

    #[test]
    fn crosscheck_on_the_named_specs() {
        assert!(criterion_crosscheck(&cat_spec()).unwrap());
        assert!(criterion_crosscheck(&sl4_spec()).unwrap());
    }

    #[test]
    fn validation_errors() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        // Zero alpha.
        assert_eq!(
            ModelFoliationSpec::new(
                m.clone(),
                vec![Poly::zero(), Poly::zero()],
                golden_twist(),
                2
            ),
            Err(Error::AlphaZero)
        );
        // Not an eigenvector.
        assert_eq!(
            ModelFoliationSpec::new(
                m.clone(),
                vec![Poly::one(), Poly::one()],
                golden_twist(),
                2
            ),
            Err(Error::AlphaNotEigenvector)
        );
        // mu = 1 is excluded (lambda != 0).
        assert_eq!(
            ModelFoliationSpec::new(
                m.clone(),
                vec![Poly::one(), Poly::zero()],
                TwistScalar::rational(Rat::one()).unwrap(),
                2
            ),
            Err(Error::UnitTwist)
        );
        // Negative rational twist.
        assert_eq!(
            ModelFoliationSpec::new(
                Matrix::from_i64_rows(&[&[-2, 0], &[0, 1]]),
                vec![Poly::one(), Poly::zero()],
                TwistScalar::rational(Rat::from_int(-2)).unwrap(),
                2
            ),
            Err(Error::MuNotPositive)
        );
        // Fiber b1 too small.
        assert_eq!(
            ModelFoliationSpec::new(
                Matrix::from_i64_rows(&[&[2]]),
                vec![Poly::one()],
                TwistScalar::rational(Rat::from_int(2)).unwrap(),
                1
            ),
            Err(Error::FiberTooSmall { b1: 1 })
        );
    }

    #[test]
    fn scale_invariance_of_alpha() {
        let base = check_rigidity(&cat_spec()).unwrap();
        for q in [Rat::of(3, 7), Rat::from_int(-2), Rat::from_int(5)] {
            let spec = ModelFoliationSpec::new(
                Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
                vec![
                    Poly::constant(q.clone()),
                    Poly::parse("x-2").unwrap().scale(&q),
                ],
                golden_twist(),
                2,
            )
            .unwrap();
            assert_eq!(check_rigidity(&spec).unwrap(), base);
        }
    }
}
