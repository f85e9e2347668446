//! Reading a fitted model as a multidimensional two-parameter logistic item
//! response model, and as an inner-product representation (points and
//! hyperplanes).
//!
//! | model        | item slope       | item intercept | examinee          |
//! |--------------|------------------|----------------|-------------------|
//! | LPCA         | row `uⱼ` of `U`  | `μⱼ`           | score `ψᵢ`        |
//! | M2PL         | `δⱼ`             | `dⱼ`           | ability `αᵢ`      |
//! | hyperplanes  | `bⱼ`             | `cⱼ = -dⱼ`     | point `aᵢ`        |

use std::io::Write;

use nalgebra::DMatrix;

use crate::error::{LpcaError, Result};
use crate::expfam::sigmoid;
use crate::fit::ModelParams;

/// Half-width of the band treated as lying on a hyperplane.
pub const ON_BOUNDARY_TOL: f64 = 1e-12;

/// Below this magnitude a discrimination coordinate is treated as zero and
/// the relative difficulty along that axis is undefined.
pub const ZERO_DISCRIMINATION_TOL: f64 = 1e-12;

/// Left-to-right sum of products. Every inner product that feeds a
/// probability or a side test goes through here so the two agree exactly.
#[inline]
pub(crate) fn dot_rows<'a>(
    a: impl Iterator<Item = &'a f64>,
    b: impl Iterator<Item = &'a f64>,
) -> f64 {
    a.zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ItemParams {
    /// Relative discriminations, one per ability axis.
    pub delta: Vec<f64>,
    pub d_intercept: f64,
    /// `-d / δₗ` where `δₗ` is non-zero.
    pub relative_difficulty: Vec<Option<f64>>,
}

impl ItemParams {
    pub fn new(delta: Vec<f64>, d_intercept: f64) -> Self {
        let relative_difficulty = delta
            .iter()
            .map(|&dl| (dl.abs() > ZERO_DISCRIMINATION_TOL).then(|| -d_intercept / dl + 0.0))
            .collect();
        Self {
            delta,
            d_intercept,
            relative_difficulty,
        }
    }

    /// Unidimensional 2PL item from discrimination and difficulty
    /// (`d = -δβ`).
    pub fn from_difficulty(discrimination: f64, difficulty: f64) -> Self {
        Self::new(vec![discrimination], -discrimination * difficulty)
    }

    pub fn linear_predictor(&self, ability: &[f64]) -> f64 {
        dot_rows(self.delta.iter(), ability.iter()) + self.d_intercept
    }

    pub fn discrimination_norm(&self) -> f64 {
        self.delta.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Item parameters read off the model: `δⱼ = uⱼ`, `dⱼ = μⱼ`.
pub fn to_item_params(params: &ModelParams) -> Vec<ItemParams> {
    (0..params.d())
        .map(|j| ItemParams::new(params.u.row(j).iter().copied().collect(), params.mu[j]))
        .collect()
}

/// Rebuilds `θᵢⱼ = δⱼᵀαᵢ + dⱼ` from item parameters and ability rows.
pub fn natural_params_from_items(items: &[ItemParams], abilities: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(abilities.nrows(), items.len(), |i, j| {
        items[j].d_intercept + dot_rows(items[j].delta.iter(), abilities.row(i).iter())
    })
}

/// M2PL response probability `σ(δᵀα + d)`.
pub fn m2pl_probability(item: &ItemParams, ability: &[f64]) -> f64 {
    sigmoid(item.linear_predictor(ability))
}

/// Hyperplane `{a : bᵀa = c}` in score space.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub b: Vec<f64>,
    pub c: f64,
}

impl Hyperplane {
    /// The 0.5 level set of an item's response probability.
    pub fn from_item(item: &ItemParams) -> Self {
        Self {
            b: item.delta.clone(),
            c: -item.d_intercept,
        }
    }
}

pub fn to_hyperplanes(params: &ModelParams) -> Vec<Hyperplane> {
    (0..params.d())
        .map(|j| Hyperplane {
            b: params.u.row(j).iter().copied().collect(),
            c: -params.mu[j],
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `bᵀa > c`: the side predicting a correct response.
    Positive,
    On,
    Negative,
}

pub fn classify_side(h: &Hyperplane, point: &[f64]) -> Side {
    let v = dot_rows(h.b.iter(), point.iter()) - h.c;
    if v.abs() <= ON_BOUNDARY_TOL {
        Side::On
    } else if v > 0.0 {
        Side::Positive
    } else {
        Side::Negative
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelativeLoadings {
    /// `100 u²ⱼₗ` per column, in column order.
    pub percentages: Vec<f64>,
    /// Reference level `100 / d`.
    pub mean: f64,
}

/// Squared-loading shares of one component, in percent. `component` is
/// 1-based.
pub fn relative_loadings(params: &ModelParams, component: usize) -> Result<RelativeLoadings> {
    if component == 0 || component > params.u.ncols() {
        return Err(LpcaError::Config(format!(
            "component {component} outside 1..={}",
            params.u.ncols()
        )));
    }
    let col = params.u.column(component - 1);
    Ok(RelativeLoadings {
        percentages: col.iter().map(|v| 100.0 * v * v).collect(),
        mean: 100.0 / params.d() as f64,
    })
}

/// Pearson product-moment correlation.
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(LpcaError::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(LpcaError::UndefinedCorrelation("need at least two observations".into()));
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(LpcaError::UndefinedCorrelation("constant vector".into()));
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

/// Average ranks (1-based), ties sharing their mean rank.
fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut out = vec![0.0; v.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && v[idx[end]] == v[idx[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            out[i] = rank;
        }
        start = end;
    }
    out
}

/// Spearman rank correlation (Pearson on average ranks).
pub fn spearman_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    pearson_correlation(&ranks(a), &ranks(b))
}

/// Writes item parameters as CSV with header
/// `item,delta_1..delta_k,d,reldiff_1..reldiff_k`; undefined relative
/// difficulties are left empty.
pub fn write_item_params_csv<W: Write>(
    out: W,
    names: &[String],
    items: &[ItemParams],
) -> Result<()> {
    if names.len() != items.len() {
        return Err(LpcaError::DimensionMismatch {
            expected: items.len(),
            got: names.len(),
        });
    }
    let k = items.first().map_or(0, |it| it.delta.len());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["item".to_string()];
    header.extend((1..=k).map(|l| format!("delta_{l}")));
    header.push("d".into());
    header.extend((1..=k).map(|l| format!("reldiff_{l}")));
    w.write_record(&header)?;
    for (name, item) in names.iter().zip(items) {
        let mut rec = vec![name.clone()];
        rec.extend(item.delta.iter().map(|v| v.to_string()));
        rec.push(item.d_intercept.to_string());
        rec.extend(
            item.relative_difficulty
                .iter()
                .map(|r| r.map(|v| v.to_string()).unwrap_or_default()),
        );
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
