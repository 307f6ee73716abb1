//! Independent floating-point verification of the exact dimension counts.
//!
//! Twisted flat sections over the circle are discretized by forward
//! differences on a uniform grid with the monodromy folded into the wrap:
//! the operator acts on grid samples by `N (s_{j+1} - s_j) - chat s_j` with
//! `s_N := M^{-1} s_0`, where `chat = N (e^{c/N} - 1)` is the discrete rate
//! matching the continuous twist `c = -ln(mu)`. With the discrete rate the
//! kernel of the continuum problem is sampled exactly (up to rounding), so
//! the numerical rank drop reproduces the exact kernel/cokernel dimensions
//! at machine precision instead of drifting at O(1/N).
//!
//! The module also carries the explicit solution of the inhomogeneous
//! first-order ODE on the line and its periodic counterpart on the circle,
//! evaluated by trapezoidal quadrature.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::models::CohomologyModel;
use crate::novikov::{self, TwistScalar};

/// Grid size, relative singular-value threshold and the certified float
/// approximation of the twist scalar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub grid: usize,
    pub tol: f64,
    pub mu_float: f64,
}

pub const DEFAULT_GRID: usize = 128;
pub const DEFAULT_TOL: f64 = 1e-8;

/// Classification needs the zero and non-zero singular-value clusters to be
/// separated by at least this ratio; anything closer is AMBIGUOUS.
const GAP_FLOOR: f64 = 1e3;

impl OracleConfig {
    pub fn new(grid: usize, tol: f64, mu_float: f64) -> Result<Self> {
        if grid < 8 {
            return Err(Error::GridTooSmall { grid });
        }
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::BadTolerance { tol });
        }
        Ok(OracleConfig { grid, tol, mu_float })
    }

    /// Pins `mu_float` from the twist scalar, within 10^-12 by refinement.
    pub fn for_twist(t: &TwistScalar, grid: usize, tol: f64) -> Result<Self> {
        OracleConfig::new(grid, tol, t.to_f64()?)
    }
}

/// Numerically estimated dimensions for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub degree: usize,
    pub est_dim_k: usize,
    pub est_dim_c: usize,
    /// Smallest "non-zero" singular value over the largest "zero" one
    /// (floored at `tol^2 * sigma_max` to stay finite).
    pub singular_value_gap: f64,
    pub ambiguous: bool,
}

fn operator(model: &CohomologyModel, k: usize, cfg: &OracleConfig) -> Result<Option<DMatrix<f64>>> {
    if cfg.mu_float <= 0.0 {
        return Err(Error::NonPositiveMu { mu: cfg.mu_float });
    }
    let b = model.betti()[k];
    if b == 0 {
        return Ok(None);
    }
    let n = cfg.grid;
    let c = -cfg.mu_float.ln();
    let chat = n as f64 * ((c / n as f64).exp() - 1.0);

    let m_exact = model.map(k);
    let m_float = DMatrix::from_fn(b, b, |i, j| m_exact.get(i, j).to_f64());
    let m_inv = m_float
        .clone()
        .try_inverse()
        .ok_or(Error::SingularMap { degree: k })?;

    let size = n * b;
    let mut d = DMatrix::<f64>::zeros(size, size);
    let nf = n as f64;
    for j in 0..n {
        for t in 0..b {
            d[(j * b + t, j * b + t)] = -(nf + chat);
        }
        if j + 1 < n {
            for t in 0..b {
                d[(j * b + t, (j + 1) * b + t)] = nf;
            }
        } else {
            // Twisted wrap: s_N = M^{-1} s_0.
            for r in 0..b {
                for t in 0..b {
                    d[(j * b + r, t)] = nf * m_inv[(r, t)];
                }
            }
        }
    }
    Ok(Some(d))
}

fn classify(degree: usize, singular_values: &[f64], tol: f64) -> OracleReport {
    let sigma_max = singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * sigma_max;
    let zeros: Vec<f64> = singular_values
        .iter()
        .cloned()
        .filter(|s| *s < threshold)
        .collect();
    let nonzeros: Vec<f64> = singular_values
        .iter()
        .cloned()
        .filter(|s| *s >= threshold)
        .collect();
    let largest_zero = zeros.iter().cloned().fold(0.0, f64::max);
    let smallest_nonzero = nonzeros.iter().cloned().fold(f64::INFINITY, f64::min);
    let floor = (tol * tol * sigma_max).max(f64::MIN_POSITIVE);
    let gap = smallest_nonzero / largest_zero.max(floor);
    OracleReport {
        degree,
        est_dim_k: zeros.len(),
        est_dim_c: zeros.len(),
        singular_value_gap: gap,
        ambiguous: !(gap >= GAP_FLOOR),
    }
}

/// Estimates `dim K^k` and `dim C^k` for the twist pinned in `cfg` from the
/// singular values of the discretized operator.
pub fn discretized_novikov(
    model: &CohomologyModel,
    k: usize,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    if k > model.top_degree() {
        return Err(Error::DegreeOutOfRange {
            k,
            top: model.top_degree(),
        });
    }
    match operator(model, k, cfg)? {
        None => Ok(OracleReport {
            degree: k,
            est_dim_k: 0,
            est_dim_c: 0,
            singular_value_gap: f64::INFINITY,
            ambiguous: false,
        }),
        Some(d) => {
            let sv = d.singular_values();
            Ok(classify(k, sv.as_slice(), cfg.tol))
        }
    }
}

/// The sample at `t = 0` of the numerical null vector, when the estimated
/// kernel is non-trivial. Used to compare against the exact eigenvector.
pub fn discretized_kernel_sample(
    model: &CohomologyModel,
    k: usize,
    cfg: &OracleConfig,
) -> Result<Option<Vec<f64>>> {
    let Some(d) = operator(model, k, cfg)? else {
        return Ok(None);
    };
    let b = model.betti()[k];
    let svd = d.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv = &svd.singular_values;
    let mut min_idx = 0;
    for i in 0..sv.len() {
        if sv[i] < sv[min_idx] {
            min_idx = i;
        }
    }
    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    if sv[min_idx] >= cfg.tol * sigma_max {
        return Ok(None);
    }
    Ok(Some((0..b).map(|t| v_t[(min_idx, t)]).collect()))
}

/// Trapezoidal evaluation of `f(t) = e^{ct} (int_0^t g e^{-cs} ds + K)`,
/// the solution of `f' - c f = g`, on the same grid as the samples of `g`
/// over `[0, t_end]`.
pub fn ode_particular(c: f64, g: &[f64], t_end: f64, constant: f64) -> Vec<f64> {
    assert!(g.len() >= 2, "need at least two samples");
    let n = g.len() - 1;
    let h = t_end / n as f64;
    let mut integral = 0.0;
    let mut out = Vec::with_capacity(g.len());
    let weight = |i: usize| g[i] * (-c * (i as f64) * h).exp();
    out.push(constant);
    for i in 1..=n {
        integral += 0.5 * h * (weight(i - 1) + weight(i));
        let t = i as f64 * h;
        out.push((c * t).exp() * (integral + constant));
    }
    out
}

/// The unique periodic solution of `g' + lambda g = l` on the circle:
/// `g(t) = e^{-lambda t} (int_0^t l e^{lambda s} ds + C)` with the wrap
/// constant `C = e^{-lambda} / (1 - e^{-lambda}) * int_0^1 l e^{lambda s} ds`.
/// `l` is sampled on the closed grid `0, h, .., 1` with `l[0] = l[N]`.
pub fn ode2_periodic_solve(lambda: f64, l: &[f64]) -> Result<Vec<f64>> {
    if lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    assert!(l.len() >= 2, "need at least two samples");
    let n = l.len() - 1;
    let h = 1.0 / n as f64;
    let max_l = l.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if (l[0] - l[n]).abs() > 10.0 * h * h * max_l.max(1.0) {
        return Err(Error::NotPeriodic);
    }

    let weight = |i: usize| l[i] * (lambda * i as f64 * h).exp();
    let mut cumulative = Vec::with_capacity(l.len());
    let mut acc = 0.0;
    cumulative.push(0.0);
    for i in 1..=n {
        acc += 0.5 * h * (weight(i - 1) + weight(i));
        cumulative.push(acc);
    }
    let e = (-lambda).exp();
    let constant = e / (1.0 - e) * cumulative[n];
    Ok((0..=n)
        .map(|i| (-lambda * i as f64 * h).exp() * (cumulative[i] + constant))
        .collect())
}

/// One row of the exact-versus-oracle table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossRow {
    pub degree: usize,
    pub exact_dim_k: usize,
    pub exact_dim_c: usize,
    pub est_dim_k: usize,
    pub est_dim_c: usize,
    pub singular_value_gap: f64,
    pub ambiguous: bool,
}

impl CrossRow {
    pub fn matches(&self) -> bool {
        self.exact_dim_k == self.est_dim_k && self.exact_dim_c == self.est_dim_c && !self.ambiguous
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub rows: Vec<CrossRow>,
    pub pass: bool,
}

impl std::fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "degree  exact(K,C)  oracle(K,C)  gap        status")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<7} ({},{})       ({},{})        {:<10.3e} {}",
                r.degree,
                r.exact_dim_k,
                r.exact_dim_c,
                r.est_dim_k,
                r.est_dim_c,
                r.singular_value_gap,
                if r.ambiguous {
                    "AMBIGUOUS"
                } else if r.matches() {
                    "ok"
                } else {
                    "MISMATCH"
                }
            )?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Runs the exact engine and the oracle on every degree and compares.
/// PASS requires every integer to match with no ambiguous gaps.
pub fn crosscheck(
    model: &CohomologyModel,
    t: &TwistScalar,
    grid: usize,
    tol: f64,
) -> Result<CrosscheckReport> {
    let cfg = OracleConfig::for_twist(t, grid, tol)?;
    let (exact_k, exact_c) = novikov::kc_dims(model, t)?;
    let degrees = model.top_degree() + 1;
    let rows = exec::try_map_indexed(degrees, |k| -> Result<CrossRow> {
        let est = discretized_novikov(model, k, &cfg)?;
        Ok(CrossRow {
            degree: k,
            exact_dim_k: exact_k[k],
            exact_dim_c: exact_c[k],
            est_dim_k: est.est_dim_k,
            est_dim_c: est.est_dim_c,
            singular_value_gap: est.singular_value_gap,
            ambiguous: est.ambiguous,
        })
    })?;
    let pass = rows.iter().all(CrossRow::matches);
    Ok(CrosscheckReport { rows, pass })
}
