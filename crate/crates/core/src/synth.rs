//! Synthetic M2PL response data with known ground truth, and recovery
//! metrics comparing a fit against that truth.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::data::ResponseMatrix;
use crate::error::{LpcaError, Result};
use crate::fit::FitResult;
use crate::ingest::ResponseTable;
use crate::irt::{self, ItemParams};
use crate::linalg;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    /// Range of discrimination magnitudes; directions are uniform on the
    /// unit sphere.
    pub discrimination_range: (f64, f64),
    pub intercept_range: (f64, f64),
    /// Probability that a cell is masked.
    pub na_rate: f64,
}

impl GeneratorSpec {
    pub fn new(n: usize, d: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            d,
            k,
            seed,
            discrimination_range: (0.5, 2.0),
            intercept_range: (-2.0, 2.0),
            na_rate: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.d < 2 {
            return Err(LpcaError::Config(format!(
                "need n >= 2 and d >= 2, got n={} d={}",
                self.n, self.d
            )));
        }
        if self.k == 0 || self.k >= self.d {
            return Err(LpcaError::Config(format!("need 1 <= k < d, got k={}", self.k)));
        }
        if !(0.0..=0.9).contains(&self.na_rate) {
            return Err(LpcaError::Config(format!(
                "na_rate {} outside [0, 0.9]",
                self.na_rate
            )));
        }
        for (name, (lo, hi)) in [
            ("discrimination_range", self.discrimination_range),
            ("intercept_range", self.intercept_range),
        ] {
            if !(lo <= hi && lo.is_finite() && hi.is_finite()) {
                return Err(LpcaError::Config(format!("invalid {name} ({lo}, {hi})")));
            }
        }
        if self.discrimination_range.0 < 0.0 {
            return Err(LpcaError::Config("discrimination magnitudes must be >= 0".into()));
        }
        Ok(())
    }
}

/// True abilities (`n × k`) and item parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub abilities: DMatrix<f64>,
    pub items: Vec<ItemParams>,
}

impl GroundTruth {
    /// Treats a fit as its own ground truth.
    pub fn from_fit(fit: &FitResult) -> Self {
        Self {
            abilities: fit.scores.clone(),
            items: irt::to_item_params(&fit.params),
        }
    }

    /// M2PL probabilities for every cell.
    pub fn probabilities(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.abilities.nrows(), self.items.len(), |i, j| {
            let a: Vec<f64> = self.abilities.row(i).iter().copied().collect();
            irt::m2pl_probability(&self.items[j], &a)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticData {
    pub responses: ResponseMatrix,
    pub truth: GroundTruth,
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Draws abilities, items, Bernoulli responses and a missingness mask from a
/// single seeded stream.
pub fn generate(spec: &GeneratorSpec) -> Result<SyntheticData> {
    spec.validate()?;
    let GeneratorSpec { n, d, k, .. } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let items: Vec<ItemParams> = (0..d)
        .map(|_| {
            let mut dir: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            let magnitude = uniform(&mut rng, spec.discrimination_range);
            dir.iter_mut().for_each(|v| *v *= magnitude / norm);
            let intercept = uniform(&mut rng, spec.intercept_range);
            ItemParams::new(dir, intercept)
        })
        .collect();

    let mut abilities = DMatrix::zeros(n, k);
    for i in 0..n {
        for l in 0..k {
            abilities[(i, l)] = StandardNormal.sample(&mut rng);
        }
    }
    let truth = GroundTruth { abilities, items };
    let probs = truth.probabilities();

    let mut values = DMatrix::zeros(n, d);
    let mut observed = DMatrix::from_element(n, d, true);
    for i in 0..n {
        for j in 0..d {
            let u: f64 = rng.random();
            values[(i, j)] = if u < probs[(i, j)] { 1.0 } else { 0.0 };
            if spec.na_rate > 0.0 {
                observed[(i, j)] = rng.random::<f64>() >= spec.na_rate;
            }
        }
    }
    // every row and column keeps at least one observed cell
    for i in 0..n {
        if !observed.row(i).iter().any(|&o| o) {
            let j = rng.random_range(0..d);
            observed[(i, j)] = true;
        }
    }
    for j in 0..d {
        if !observed.column(j).iter().any(|&o| o) {
            let i = rng.random_range(0..n);
            observed[(i, j)] = true;
        }
    }
    Ok(SyntheticData {
        responses: ResponseMatrix::new(values, observed)?,
        truth,
    })
}

/// Proficiency proxy on the 0-500 reporting scale from the first ability
/// coordinate.
pub fn proficiency_proxy(ability: f64) -> f64 {
    (250.0 + 50.0 * ability).clamp(0.0, 500.0)
}

/// Packs generated data as an ingest table with ids `S1..`, descriptors
/// `D1..`, a `proficiency` proxy and a two-level `shift` category.
pub fn to_table(data: &SyntheticData, seed: u64) -> Result<ResponseTable> {
    let (n, d) = (data.responses.nrows(), data.responses.ncols());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let ids = (1..=n).map(|i| format!("S{i}")).collect();
    let names = (1..=d).map(|j| format!("D{j}")).collect();
    let cells = (0..n)
        .map(|i| (0..d).map(|j| data.responses.get(i, j)).collect())
        .collect();
    let proficiency = (0..n)
        .map(|i| Some(format!("{:.2}", proficiency_proxy(data.truth.abilities[(i, 0)]))))
        .collect();
    let shift = (0..n)
        .map(|_| Some(if rng.random::<bool>() { "morning" } else { "afternoon" }.to_string()))
        .collect();
    let table = ResponseTable {
        examinee_ids: ids,
        descriptor_names: names,
        cells,
        metadata: vec![
            ("proficiency".to_string(), proficiency),
            ("shift".to_string(), shift),
        ],
    };
    table.validate()?;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryReport {
    /// Pearson correlation per true ability dimension after alignment.
    pub ability_correlations: Vec<f64>,
    /// Same, comparing score column `l` with ability column `l` directly.
    pub unaligned_correlations: Vec<f64>,
    /// Spearman correlation between true and aligned fitted discrimination
    /// magnitudes.
    pub discrimination_spearman: f64,
    /// Share of cells where fitted and true probabilities fall on the same
    /// side of 0.5.
    pub sign_agreement: f64,
    /// `k_fit × k_true` rotation applied to the scores.
    pub rotation: DMatrix<f64>,
}

impl RecoveryReport {
    pub fn mean_ability_correlation(&self) -> f64 {
        mean(&self.ability_correlations)
    }

    pub fn mean_unaligned_correlation(&self) -> f64 {
        mean(&self.unaligned_correlations)
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn column_correlations(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>> {
    (0..b.ncols())
        .map(|l| {
            let x: Vec<f64> = a.column(l).iter().copied().collect();
            let y: Vec<f64> = b.column(l).iter().copied().collect();
            irt::pearson_correlation(&x, &y)
        })
        .collect()
}

/// Orthogonal alignment of centered scores (`n × k_fit`) onto centered
/// abilities (`n × k_true`, `k_true ≤ k_fit`). Returns the aligned scores and
/// the rotation.
pub fn align_scores(scores: &DMatrix<f64>, abilities: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if scores.nrows() != abilities.nrows() {
        return Err(LpcaError::DimensionMismatch {
            expected: abilities.nrows(),
            got: scores.nrows(),
        });
    }
    if scores.ncols() < abilities.ncols() {
        return Err(LpcaError::DimensionMismatch {
            expected: abilities.ncols(),
            got: scores.ncols(),
        });
    }
    let sc = linalg::center_columns(scores);
    let ac = linalg::center_columns(abilities);
    let q = linalg::procrustes_rotation(&sc, &ac);
    Ok((sc * &q, q))
}

/// Per-dimension correlations of aligned scores against abilities.
pub fn aligned_correlations(scores: &DMatrix<f64>, abilities: &DMatrix<f64>) -> Result<Vec<f64>> {
    let (aligned, _) = align_scores(scores, abilities)?;
    column_correlations(&aligned, abilities)
}

/// Compares a fit with the truth that generated its data. The fit may use
/// more dimensions than the truth.
pub fn recovery_report(truth: &GroundTruth, fit: &FitResult) -> Result<RecoveryReport> {
    let n = truth.abilities.nrows();
    let d = truth.items.len();
    if fit.scores.nrows() != n {
        return Err(LpcaError::DimensionMismatch {
            expected: n,
            got: fit.scores.nrows(),
        });
    }
    if fit.params.d() != d {
        return Err(LpcaError::DimensionMismatch {
            expected: d,
            got: fit.params.d(),
        });
    }
    let (aligned, q) = align_scores(&fit.scores, &truth.abilities)?;
    let ability_correlations = column_correlations(&aligned, &truth.abilities)?;
    let unaligned_correlations = column_correlations(&fit.scores, &truth.abilities)?;

    let fitted_disc: Vec<f64> = (0..d)
        .map(|j| (q.transpose() * fit.params.u.row(j).transpose()).norm())
        .collect();
    let true_disc: Vec<f64> = truth.items.iter().map(ItemParams::discrimination_norm).collect();
    let discrimination_spearman = irt::spearman_correlation(&true_disc, &fitted_disc)?;

    let true_p = truth.probabilities();
    let fitted = GroundTruth::from_fit(fit).probabilities();
    let agree = true_p
        .iter()
        .zip(fitted.iter())
        .filter(|(a, b)| (**a > 0.5) == (**b > 0.5))
        .count();
    Ok(RecoveryReport {
        ability_correlations,
        unaligned_correlations,
        discrimination_spearman,
        sign_agreement: agree as f64 / (n * d) as f64,
        rotation: q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GeneratorSpec::new(1, 5, 1, 0).validate().is_err());
        assert!(GeneratorSpec::new(5, 5, 5, 0).validate().is_err());
        let mut s = GeneratorSpec::new(5, 5, 1, 0);
        s.na_rate = 0.95;
        assert!(s.validate().is_err());
        s.na_rate = 0.9;
        assert!(s.validate().is_ok());
    }

    #[test]
    fn saturated_intercepts_give_all_ones() {
        let mut s = GeneratorSpec::new(200, 6, 2, 3);
        s.intercept_range = (50.0, 50.0);
        s.na_rate = 0.3;
        let data = generate(&s).unwrap();
        for i in 0..200 {
            for j in 0..6 {
                if let Some(v) = data.responses.get(i, j) {
                    assert_eq!(v, 1.0);
                }
            }
        }
    }

    #[test]
    fn zero_discrimination_columns_are_fair_coins() {
        // mean of 10000 fair Bernoulli draws: sd = 0.005, so [0.45, 0.55]
        // is a 10-sigma band
        let mut s = GeneratorSpec::new(10_000, 4, 1, 11);
        s.discrimination_range = (0.0, 0.0);
        s.intercept_range = (0.0, 0.0);
        let data = generate(&s).unwrap();
        for j in 0..4 {
            let mean = data.responses.values().column(j).sum() / 10_000.0;
            assert!((0.45..=0.55).contains(&mean), "column {j}: {mean}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let mut s = GeneratorSpec::new(50, 8, 2, 42);
        s.na_rate = 0.2;
        let a = generate(&s).unwrap();
        let b = generate(&s).unwrap();
        assert_eq!(a, b);
        s.seed = 43;
        assert_ne!(generate(&s).unwrap().responses, a.responses);
    }

    #[test]
    fn heavy_missingness_keeps_rows_and_columns() {
        let mut s = GeneratorSpec::new(40, 3, 1, 5);
        s.na_rate = 0.9;
        assert!(generate(&s).is_ok());
    }

    #[test]
    fn probabilities_use_m2pl() {
        let s = GeneratorSpec::new(5, 3, 2, 1);
        let data = generate(&s).unwrap();
        let p = data.truth.probabilities();
        let a: Vec<f64> = data.truth.abilities.row(2).iter().copied().collect();
        assert_eq!(p[(2, 1)], irt::m2pl_probability(&data.truth.items[1], &a));
    }

    #[test]
    fn item_directions_have_requested_magnitudes() {
        let s = GeneratorSpec::new(5, 30, 3, 9);
        let data = generate(&s).unwrap();
        for it in &data.truth.items {
            let m = it.discrimination_norm();
            assert!((0.5..=2.0).contains(&m));
            assert!((-2.0..=2.0).contains(&it.d_intercept));
        }
    }

    #[test]
    fn random_scores_do_not_correlate() {
        // null correlation of n = 10000 independent normals has sd 0.01
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let n = 10_000;
        let abilities = DMatrix::from_fn(n, 1, |_, _| StandardNormal.sample(&mut rng));
        let scores = DMatrix::from_fn(n, 1, |_, _| StandardNormal.sample(&mut rng));
        let c = aligned_correlations(&scores, &abilities).unwrap();
        assert!(c[0].abs() < 0.05, "{}", c[0]);
    }

    #[test]
    fn alignment_undoes_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 300;
        let abilities = DMatrix::from_fn(n, 2, |_, _| StandardNormal.sample(&mut rng));
        let t = 1.1f64;
        let rot = DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        let scores = &abilities * rot;
        let c = aligned_correlations(&scores, &abilities).unwrap();
        assert!(c.iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert!(aligned_correlations(&scores.columns(0, 1).into_owned(), &abilities).is_err());
    }
}
