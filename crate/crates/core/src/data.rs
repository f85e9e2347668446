use nalgebra::DMatrix;

use crate::error::{LpcaError, Result};
use crate::expfam::Family;

/// An `n × d` response matrix with a missing-value mask.
///
/// Rows are examinee-tests, columns are descriptors (or items). Values under
/// masked cells are never read by any computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix {
    values: DMatrix<f64>,
    observed: DMatrix<bool>,
}

impl ResponseMatrix {
    /// Builds a matrix from values and mask. Every row and every column must
    /// contain at least one observed cell.
    pub fn new(values: DMatrix<f64>, observed: DMatrix<bool>) -> Result<Self> {
        if values.shape() != observed.shape() {
            return Err(LpcaError::DimensionMismatch {
                expected: values.nrows() * values.ncols(),
                got: observed.nrows() * observed.ncols(),
            });
        }
        if values.nrows() == 0 || values.ncols() == 0 {
            return Err(LpcaError::Data("response matrix is empty".into()));
        }
        for (i, row) in observed.row_iter().enumerate() {
            if !row.iter().any(|&o| o) {
                return Err(LpcaError::Data(format!("row {i} has no observed cells")));
            }
        }
        for (j, col) in observed.column_iter().enumerate() {
            if !col.iter().any(|&o| o) {
                return Err(LpcaError::Data(format!("column {j} has no observed cells")));
            }
        }
        for i in 0..values.nrows() {
            for j in 0..values.ncols() {
                if observed[(i, j)] && !values[(i, j)].is_finite() {
                    return Err(LpcaError::Data(format!(
                        "observed cell ({i}, {j}) is not finite"
                    )));
                }
            }
        }
        Ok(Self { values, observed })
    }

    /// Fully observed matrix.
    pub fn dense(values: DMatrix<f64>) -> Result<Self> {
        let observed = DMatrix::from_element(values.nrows(), values.ncols(), true);
        Self::new(values, observed)
    }

    /// Row-major construction with `None` for missing cells.
    pub fn from_rows(rows: &[Vec<Option<f64>>]) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(LpcaError::DimensionMismatch {
                expected: d,
                got: bad.len(),
            });
        }
        let values = DMatrix::from_fn(n, d, |i, j| rows[i][j].unwrap_or(f64::NAN));
        let observed = DMatrix::from_fn(n, d, |i, j| rows[i][j].is_some());
        Self::new(values, observed)
    }

    pub fn nrows(&self) -> usize {
        self.values.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.values.ncols()
    }

    #[inline]
    pub fn is_observed(&self, i: usize, j: usize) -> bool {
        self.observed[(i, j)]
    }

    /// Value of cell `(i, j)`, `None` when masked.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.observed[(i, j)].then(|| self.values[(i, j)])
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn mask(&self) -> &DMatrix<bool> {
        &self.observed
    }

    pub fn observed_count(&self) -> usize {
        self.observed.iter().filter(|&&o| o).count()
    }

    pub fn has_missing(&self) -> bool {
        self.observed.iter().any(|&o| !o)
    }

    /// Checks that observed values are admissible for `family`.
    pub fn validate_for(&self, family: Family) -> Result<()> {
        if family == Family::Bernoulli {
            for i in 0..self.nrows() {
                for j in 0..self.ncols() {
                    if let Some(v) = self.get(i, j) {
                        if !(0.0..=1.0).contains(&v) {
                            return Err(LpcaError::Data(format!(
                                "cell ({i}, {j}) = {v} outside [0, 1]"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with rows reordered so that output row `r` is input row `perm[r]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        let d = self.ncols();
        let values = DMatrix::from_fn(perm.len(), d, |r, j| self.values[(perm[r], j)]);
        let observed = DMatrix::from_fn(perm.len(), d, |r, j| self.observed[(perm[r], j)]);
        Self::new(values, observed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_all_missing_row_and_column() {
        let rows = vec![vec![Some(1.0), None], vec![None, None]];
        assert!(matches!(ResponseMatrix::from_rows(&rows), Err(LpcaError::Data(_))));
        let rows = vec![vec![Some(1.0), None], vec![Some(0.0), None]];
        assert!(ResponseMatrix::from_rows(&rows).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Some(1.0), None], vec![Some(0.0)]];
        assert!(matches!(
            ResponseMatrix::from_rows(&rows),
            Err(LpcaError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn masked_values_are_hidden() {
        let rows = vec![vec![Some(1.0), None], vec![Some(0.0), Some(0.5)]];
        let m = ResponseMatrix::from_rows(&rows).unwrap();
        assert_eq!(m.get(0, 1), None);
        assert_eq!(m.get(1, 1), Some(0.5));
        assert_eq!(m.observed_count(), 3);
        assert!(m.has_missing());
    }

    #[test]
    fn bernoulli_range_checked() {
        let m = ResponseMatrix::dense(DMatrix::from_row_slice(1, 2, &[1.0, 2.0])).unwrap();
        assert!(m.validate_for(Family::Bernoulli).is_err());
        assert!(m.validate_for(Family::Gaussian).is_ok());
    }
}
