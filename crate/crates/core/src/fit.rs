//! Rank-k exponential-family PCA fitted by majorization-minimization.
//!
//! The model projects the saturated natural parameters `Θ̃` onto an affine
//! rank-k subspace, `θᵢ = μ + UUᵀ(θ̃ᵢ - μ)`, and minimizes the summed per-cell
//! loss over observed cells. Missing cells contribute nothing to the loss and
//! enter the projection with a zero centered coordinate (`θ̃ᵢⱼ := μⱼ`).
//!
//! Each sweep replaces the loss by the quadratic majorizer implied by the
//! curvature bound of `b` (1/4 for Bernoulli, 1 for Gaussian) and minimizes it
//! exactly, first in `μ` (a least-squares solve) and then in `U` (top-k
//! eigenvectors), so the objective never increases.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::ResponseMatrix;
use crate::error::{LpcaError, Result};
use crate::expfam::{self, Family};
use crate::linalg;

/// Fitted (or hand-built) model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub family: Family,
    pub k: usize,
    /// Saturation scale for the Bernoulli saturated parameters.
    pub m: f64,
    /// Offset, one coordinate per column.
    pub mu: DVector<f64>,
    /// `d × k` loadings with orthonormal columns.
    pub u: DMatrix<f64>,
}

impl ModelParams {
    pub fn new(family: Family, m: f64, mu: DVector<f64>, u: DMatrix<f64>) -> Result<Self> {
        let params = Self {
            family,
            k: u.ncols(),
            m,
            mu,
            u,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn d(&self) -> usize {
        self.mu.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.d();
        if self.u.nrows() != d {
            return Err(LpcaError::DimensionMismatch {
                expected: d,
                got: self.u.nrows(),
            });
        }
        if self.u.ncols() != self.k {
            return Err(LpcaError::DimensionMismatch {
                expected: self.k,
                got: self.u.ncols(),
            });
        }
        if self.k == 0 || self.k >= d {
            return Err(LpcaError::Config(format!("need 1 <= k < d, got k={} d={d}", self.k)));
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(LpcaError::Config(format!("m must be positive, got {}", self.m)));
        }
        let err = linalg::orthonormality_error(&self.u);
        if err > 1e-8 {
            return Err(LpcaError::Config(format!(
                "loadings are not orthonormal (max |UᵀU - I| = {err:e})"
            )));
        }
        Ok(())
    }

    fn check_data(&self, data: &ResponseMatrix) -> Result<()> {
        if data.ncols() != self.d() {
            return Err(LpcaError::DimensionMismatch {
                expected: self.d(),
                got: data.ncols(),
            });
        }
        if self.u.nrows() != self.d() {
            return Err(LpcaError::DimensionMismatch {
                expected: self.d(),
                got: self.u.nrows(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Init {
    /// Column means of `Θ̃` and the leading right singular vectors of its
    /// centered version.
    SvdOfSaturated,
    /// Orthonormalized Gaussian draws from the seed.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub k: usize,
    pub m: f64,
    pub max_iter: usize,
    /// Stop once `|Δ objective| / |objective|` drops below this.
    pub rel_tol: f64,
    pub seed: u64,
    pub init: Init,
}

impl FitConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            m: 4.0,
            max_iter: 500,
            rel_tol: 1e-6,
            seed: 0,
            init: Init::SvdOfSaturated,
        }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.k == 0 || self.k >= d {
            return Err(LpcaError::Config(format!("need 1 <= k < d, got k={} d={d}", self.k)));
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(LpcaError::Config(format!("m must be positive, got {}", self.m)));
        }
        if !(self.rel_tol > 0.0) {
            return Err(LpcaError::Config(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(LpcaError::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FitDiagnostics {
    /// Columns whose observed saturated values are all equal.
    pub constant_columns: Vec<usize>,
    pub iterations: usize,
    /// Set when a sweep failed to decrease the objective at round-off level
    /// and was rolled back.
    pub stalled: bool,
}

#[derive(Debug, Clone)]
pub struct FitResult {
    pub params: ModelParams,
    /// `n × k` scores, row `i` is `Uᵀ(θ̃ᵢ - μ)`.
    pub scores: DMatrix<f64>,
    /// Objective at the initial point followed by one value per sweep.
    pub objective_trace: Vec<f64>,
    pub true_deviance: f64,
    pub converged: bool,
    pub diagnostics: FitDiagnostics,
}

impl FitResult {
    pub fn final_objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace is never empty")
    }
}

/// Saturated natural parameters cell by cell. Missing cells hold `NaN`.
pub fn saturated_matrix(data: &ResponseMatrix, family: Family, m: f64) -> Result<DMatrix<f64>> {
    let (n, d) = (data.nrows(), data.ncols());
    let mut out = DMatrix::from_element(n, d, f64::NAN);
    for j in 0..d {
        for i in 0..n {
            if let Some(x) = data.get(i, j) {
                out[(i, j)] = expfam::saturated_natural_param(family, x, m)?;
            }
        }
    }
    Ok(out)
}

/// `μ + UUᵀ(θ̃ᵢ - μ)` for one fully observed row.
pub fn project_natural_params(params: &ModelParams, theta_tilde_row: &DVector<f64>) -> Result<DVector<f64>> {
    if theta_tilde_row.len() != params.d() || params.u.nrows() != params.d() {
        return Err(LpcaError::DimensionMismatch {
            expected: params.d(),
            got: theta_tilde_row.len(),
        });
    }
    let centered = theta_tilde_row - &params.mu;
    let coords = params.u.transpose() * centered;
    Ok(&params.mu + &params.u * coords)
}

/// Fixed per-dataset quantities shared by every sweep.
struct Problem<'a> {
    data: &'a ResponseMatrix,
    family: Family,
    /// Saturated parameters with missing cells set to zero.
    sat: DMatrix<f64>,
    /// Mask as 0/1.
    mask: DMatrix<f64>,
}

impl<'a> Problem<'a> {
    fn new(data: &'a ResponseMatrix, family: Family, m: f64) -> Result<Self> {
        data.validate_for(family)?;
        let mut sat = saturated_matrix(data, family, m)?;
        let mask = data.mask().map(|o| if o { 1.0 } else { 0.0 });
        sat.iter_mut().for_each(|v| {
            if v.is_nan() {
                *v = 0.0
            }
        });
        Ok(Self {
            data,
            family,
            sat,
            mask,
        })
    }

    /// `M ∘ (Θ̃ - 1μᵀ)`.
    fn centered(&self, mu: &DVector<f64>) -> DMatrix<f64> {
        let mut c = self.sat.clone();
        for (j, mut col) in c.column_iter_mut().enumerate() {
            let mcol = self.mask.column(j);
            for (v, &w) in col.iter_mut().zip(mcol.iter()) {
                *v = (*v - mu[j]) * w;
            }
        }
        c
    }

    /// Observed-cell column means of `Θ̃`.
    fn saturated_means(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.sat.ncols(),
            self.sat.column_iter().zip(self.mask.column_iter()).map(|(s, w)| {
                let cnt: f64 = w.sum();
                s.dot(&w) / cnt
            }),
        )
    }

    /// `Θ = 1μᵀ + ΨUᵀ` with `Ψ = M ∘ (Θ̃ - 1μᵀ) U`.
    fn natural(&self, mu: &DVector<f64>, u: &DMatrix<f64>) -> DMatrix<f64> {
        natural_from_scores(mu, u, &(self.centered(mu) * u))
    }

    fn loss(&self, theta: &DMatrix<f64>) -> f64 {
        let family = self.family;
        let per_col: Vec<f64> = (0..theta.ncols())
            .into_par_iter()
            .map(|j| {
                let mut acc = 0.0;
                for i in 0..theta.nrows() {
                    if let Some(x) = self.data.get(i, j) {
                        acc += expfam::loss_unchecked(family, x, theta[(i, j)]);
                    }
                }
                acc
            })
            .collect();
        per_col.iter().sum()
    }

    fn deviance(&self, theta: &DMatrix<f64>) -> f64 {
        let family = self.family;
        let per_col: Vec<f64> = (0..theta.ncols())
            .into_par_iter()
            .map(|j| {
                let mut acc = 0.0;
                for i in 0..theta.nrows() {
                    if let Some(x) = self.data.get(i, j) {
                        acc += expfam::deviance_unchecked(family, x, theta[(i, j)]);
                    }
                }
                acc
            })
            .collect();
        per_col.iter().sum()
    }

    /// Working response of the quadratic majorizer at `theta`.
    fn working(&self, theta: &DMatrix<f64>) -> DMatrix<f64> {
        let family = self.family;
        let inv_l = 1.0 / family.curvature_bound();
        let (n, d) = theta.shape();
        let cols: Vec<Vec<f64>> = (0..d)
            .into_par_iter()
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let t = theta[(i, j)];
                        match self.data.get(i, j) {
                            Some(x) => t + inv_l * (x - expfam::mean_unchecked(family, t)),
                            None => t,
                        }
                    })
                    .collect()
            })
            .collect();
        DMatrix::from_fn(n, d, |i, j| cols[j][i])
    }

    /// Exact minimizer in `μ` of the majorizer `‖Θ(μ) - Z‖²` with `U` fixed.
    ///
    /// Among minimizers (the objective ignores `UUᵀμ` when nothing is
    /// missing) the one closest to `Pμ + UUᵀθ̄` is chosen, which keeps the
    /// scores centered.
    fn mu_step(&self, mu: &DVector<f64>, u: &DMatrix<f64>, z: &DMatrix<f64>, cooccur: &DMatrix<f64>) -> DVector<f64> {
        let d = mu.len();
        let n = z.nrows() as f64;
        let uut = u * u.transpose();
        let counts = DVector::from_iterator(d, self.mask.column_iter().map(|c| c.sum()));
        let dmat = DMatrix::from_diagonal(&counts);
        let s = DMatrix::<f64>::identity(d, d) * n - &dmat * &uut - &uut * &dmat
            + uut.component_mul(cooccur);
        let r = z - &self.sat * &uut;
        let ru = (&r * &uut).component_mul(&self.mask);
        let b = DVector::from_iterator(
            d,
            r.column_iter().zip(ru.column_iter()).map(|(a, c)| a.sum() - c.sum()),
        );
        let sat_means = self.saturated_means();
        let mu_ref = mu - &uut * mu + &uut * sat_means;
        let rhs = b - &s * &mu_ref;
        mu_ref + linalg::psd_pinv_solve(&s, &rhs, 1e-12)
    }

    /// Exact minimizer in orthonormal `U` of the majorizer with `μ` fixed.
    fn u_step(&self, mu: &DVector<f64>, z: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
        let c = self.centered(mu);
        let mut w = z.clone();
        for (j, mut col) in w.column_iter_mut().enumerate() {
            col.add_scalar_mut(-mu[j]);
        }
        let ctw = c.transpose() * &w;
        let ctc = c.transpose() * &c;
        let target = &ctw + ctw.transpose() - ctc;
        linalg::top_k_eigenvectors(&target, k)
    }
}

fn natural_from_scores(mu: &DVector<f64>, u: &DMatrix<f64>, scores: &DMatrix<f64>) -> DMatrix<f64> {
    let n = scores.nrows();
    let d = mu.len();
    DMatrix::from_fn(n, d, |i, j| {
        mu[j] + crate::irt::dot_rows(u.row(j).iter(), scores.row(i).iter())
    })
}

/// Scores `Ψ`, row `i` equal to `Uᵀ(θ̃ᵢ - μ)` with missing cells contributing
/// zero.
pub fn scores(params: &ModelParams, data: &ResponseMatrix) -> Result<DMatrix<f64>> {
    params.check_data(data)?;
    let problem = Problem::new(data, params.family, params.m)?;
    Ok(problem.centered(&params.mu) * &params.u)
}

/// Projected natural parameters `Θ` for every cell, missing ones included.
pub fn natural_params(params: &ModelParams, data: &ResponseMatrix) -> Result<DMatrix<f64>> {
    let psi = scores(params, data)?;
    Ok(natural_from_scores(&params.mu, &params.u, &psi))
}

/// Fitted means for every cell: probabilities for Bernoulli, `Θ` itself for
/// Gaussian. Cells that were missing get imputed values.
pub fn fitted_probabilities(params: &ModelParams, data: &ResponseMatrix) -> Result<DMatrix<f64>> {
    let theta = natural_params(params, data)?;
    Ok(theta.map(|t| expfam::mean_unchecked(params.family, t)))
}

/// Summed per-cell loss over observed cells at the projected `Θ`:
/// `2(-xθ + b(θ))` for Bernoulli, `(x - θ)²` for Gaussian.
pub fn objective(data: &ResponseMatrix, params: &ModelParams) -> Result<f64> {
    params.check_data(data)?;
    let problem = Problem::new(data, params.family, params.m)?;
    Ok(problem.loss(&problem.natural(&params.mu, &params.u)))
}

/// Scaled deviance `Σ deviance_cell` over observed cells at the projected `Θ`.
pub fn true_deviance(data: &ResponseMatrix, params: &ModelParams) -> Result<f64> {
    params.check_data(data)?;
    let problem = Problem::new(data, params.family, params.m)?;
    Ok(problem.deviance(&problem.natural(&params.mu, &params.u)))
}

/// Gradient of [`objective`] with respect to `μ`, holding `U` fixed.
pub fn objective_gradient_mu(data: &ResponseMatrix, params: &ModelParams) -> Result<DVector<f64>> {
    params.check_data(data)?;
    let problem = Problem::new(data, params.family, params.m)?;
    let theta = problem.natural(&params.mu, &params.u);
    let family = params.family;
    let g = DMatrix::from_fn(theta.nrows(), theta.ncols(), |i, j| match data.get(i, j) {
        Some(x) => 2.0 * (expfam::mean_unchecked(family, theta[(i, j)]) - x),
        None => 0.0,
    });
    let uut = &params.u * params.u.transpose();
    let back = (&g * &uut).component_mul(&problem.mask);
    Ok(DVector::from_iterator(
        params.d(),
        g.column_iter().zip(back.column_iter()).map(|(a, b)| a.sum() - b.sum()),
    ))
}

fn relative_change(prev: f64, cur: f64) -> f64 {
    let scale = prev.abs().max(cur.abs());
    if scale == 0.0 {
        0.0
    } else {
        (prev - cur).abs() / scale
    }
}

/// Fits the rank-`k` model to `data`.
pub fn fit(data: &ResponseMatrix, family: Family, config: &FitConfig) -> Result<FitResult> {
    let d = data.ncols();
    config.validate(d)?;
    let problem = Problem::new(data, family, config.m)?;
    let k = config.k;

    let mut mu = problem.saturated_means();
    let centered0 = problem.centered(&mu);
    let constant_columns: Vec<usize> = (0..d)
        .filter(|&j| centered0.column(j).iter().all(|v| v.abs() <= 1e-12 * (1.0 + mu[j].abs())))
        .collect();
    let mut u = match config.init {
        Init::SvdOfSaturated => {
            linalg::top_k_eigenvectors(&(centered0.transpose() * &centered0), k)
        }
        Init::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let draws = DMatrix::from_fn(d, k, |_, _| StandardNormal.sample(&mut rng));
            linalg::orthonormalize(&draws)
        }
    };
    let cooccur = problem.mask.transpose() * &problem.mask;

    let mut theta = problem.natural(&mu, &u);
    let mut trace = vec![problem.loss(&theta)];
    let mut converged = false;
    let mut stalled = false;
    let mut iterations = 0;

    while iterations < config.max_iter {
        iterations += 1;
        let z = problem.working(&theta);
        let new_mu = problem.mu_step(&mu, &u, &z, &cooccur);
        let mid = problem.natural(&new_mu, &u);
        let z = problem.working(&mid);
        let new_u = problem.u_step(&new_mu, &z, k);
        let new_theta = problem.natural(&new_mu, &new_u);
        let value = problem.loss(&new_theta);
        let prev = *trace.last().expect("non-empty");
        if value > prev {
            // descent is exact in real arithmetic; an increase is round-off
            stalled = true;
            converged = value - prev <= 1e-10 * prev.abs().max(1.0);
            break;
        }
        mu = new_mu;
        u = new_u;
        theta = new_theta;
        trace.push(value);
        if relative_change(prev, value) < config.rel_tol {
            converged = true;
            break;
        }
    }

    linalg::canonicalize_column_signs(&mut u);
    let params = ModelParams {
        family,
        k,
        m: config.m,
        mu,
        u,
    };
    let scores = problem.centered(&params.mu) * &params.u;
    let theta = natural_from_scores(&params.mu, &params.u, &scores);
    let true_deviance = problem.deviance(&theta);
    Ok(FitResult {
        params,
        scores,
        objective_trace: trace,
        true_deviance,
        converged,
        diagnostics: FitDiagnostics {
            constant_columns,
            iterations,
            stalled,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_2d(mu: [f64; 2], u: [f64; 2]) -> ModelParams {
        ModelParams {
            family: Family::Bernoulli,
            k: 1,
            m: 4.0,
            mu: DVector::from_row_slice(&mu),
            u: DMatrix::from_column_slice(2, 1, &u),
        }
    }

    #[test]
    fn saturated_examples() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(1, 2, &[1.0, 0.0])).unwrap();
        let s = saturated_matrix(&x, Family::Bernoulli, 4.0).unwrap();
        assert_eq!(s.as_slice(), &[4.0, -4.0]);

        let x = ResponseMatrix::from_rows(&[vec![Some(0.5), None], vec![Some(1.0), Some(0.0)]]).unwrap();
        let s = saturated_matrix(&x, Family::Bernoulli, 4.0).unwrap();
        assert_eq!(s[(0, 0)], 0.0);
        assert!(s[(0, 1)].is_nan());

        let x = ResponseMatrix::dense(DMatrix::from_row_slice(1, 1, &[2.5])).unwrap();
        let s = saturated_matrix(&x, Family::Gaussian, 4.0).unwrap();
        assert_eq!(s[(0, 0)], 2.5);
    }

    #[test]
    fn projection_examples() {
        let full = ModelParams {
            family: Family::Gaussian,
            k: 2,
            m: 4.0,
            mu: DVector::from_row_slice(&[0.3, -0.2]),
            u: DMatrix::identity(2, 2),
        };
        let row = DVector::from_row_slice(&[1.5, -7.0]);
        let out = project_natural_params(&full, &row).unwrap();
        assert!((out - &row).abs().max() < 1e-15);

        let p = params_2d([0.0, 0.0], [1.0, 0.0]);
        let out = project_natural_params(&p, &DVector::from_row_slice(&[3.0, 5.0])).unwrap();
        assert_eq!(out.as_slice(), &[3.0, 0.0]);

        let p = params_2d([1.0, -2.0], [0.6, 0.8]);
        let out = project_natural_params(&p, &p.mu).unwrap();
        assert_eq!(out, p.mu);

        assert!(project_natural_params(&p, &DVector::from_row_slice(&[1.0])).is_err());
    }

    #[test]
    fn objective_single_observed_cell() {
        let x = ResponseMatrix::from_rows(&[vec![Some(1.0), None], vec![None, Some(1.0)]]).unwrap();
        // θ₁₁ = 0 needs μ₁ = 0 and a zero centered contribution: use U = e₂,
        // and make the second cell's loss known too.
        let p = params_2d([0.0, 0.0], [0.0, 1.0]);
        let v = objective(&x, &p).unwrap();
        // cell (0,0): θ = 0 -> 2 log 2; cell (1,1): θ = 4 -> 2(-4 + log(1+e⁴))
        let expected = 2.0 * std::f64::consts::LN_2 + 2.0 * (-4.0 + (1.0 + 4f64.exp()).ln());
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn scores_examples() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(1, 2, &[1.0, 0.0])).unwrap();
        let p = params_2d([0.0, 0.0], [1.0, 0.0]);
        let s = scores(&p, &x).unwrap();
        assert_eq!(s[(0, 0)], 4.0);

        // θ̃ᵢ = μ -> zero scores
        let p = params_2d([4.0, -4.0], [0.6, 0.8]);
        let s = scores(&p, &x).unwrap();
        assert_eq!(s[(0, 0)], 0.0);
    }

    #[test]
    fn missing_cells_get_mu_in_scores() {
        let x = ResponseMatrix::from_rows(&[vec![Some(1.0), None], vec![Some(0.0), Some(1.0)]]).unwrap();
        let p = params_2d([0.5, 1.5], [0.6, 0.8]);
        let s = scores(&p, &x).unwrap();
        assert!((s[(0, 0)] - 0.6 * (4.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn fitted_probability_at_zero() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(1, 2, &[0.5, 0.5])).unwrap();
        let p = params_2d([0.0, 0.0], [1.0, 0.0]);
        let probs = fitted_probabilities(&p, &x).unwrap();
        assert_eq!(probs[(0, 0)], 0.5);
        assert_eq!(probs[(0, 1)], 0.5);
    }

    #[test]
    fn config_validation() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(matches!(fit(&x, Family::Bernoulli, &FitConfig::new(0)), Err(LpcaError::Config(_))));
        assert!(fit(&x, Family::Bernoulli, &FitConfig::new(2)).is_err());
        let mut c = FitConfig::new(1);
        c.m = 0.0;
        assert!(fit(&x, Family::Bernoulli, &c).is_err());
        let mut c = FitConfig::new(1);
        c.rel_tol = 0.0;
        assert!(fit(&x, Family::Bernoulli, &c).is_err());
        let mut c = FitConfig::new(1);
        c.max_iter = 0;
        assert!(fit(&x, Family::Bernoulli, &c).is_err());
    }

    #[test]
    fn bernoulli_rejects_out_of_range_data() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0])).unwrap();
        assert!(fit(&x, Family::Bernoulli, &FitConfig::new(1)).is_err());
    }

    #[test]
    fn constant_column_is_flagged() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(
            3,
            3,
            &[1.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0],
        ))
        .unwrap();
        let r = fit(&x, Family::Bernoulli, &FitConfig::new(1)).unwrap();
        assert_eq!(r.diagnostics.constant_columns, vec![0]);
        assert!(r.final_objective().is_finite());
    }

    #[test]
    fn dimension_mismatch_reported() {
        let x = ResponseMatrix::dense(DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 1.0])).unwrap();
        let p = params_2d([0.0, 0.0], [1.0, 0.0]);
        assert!(matches!(scores(&p, &x), Err(LpcaError::DimensionMismatch { .. })));
        assert!(objective(&x, &p).is_err());
    }

    #[test]
    fn params_validation() {
        let bad = ModelParams::new(
            Family::Bernoulli,
            4.0,
            DVector::zeros(2),
            DMatrix::from_column_slice(2, 1, &[1.0, 1.0]),
        );
        assert!(bad.is_err());
        let ok = ModelParams::new(
            Family::Bernoulli,
            4.0,
            DVector::zeros(2),
            DMatrix::from_column_slice(2, 1, &[0.6, 0.8]),
        );
        assert!(ok.is_ok());
    }
}
