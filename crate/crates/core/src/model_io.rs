//! JSON persistence for fitted models.
//!
//! Layout: `{"family", "k", "m", "mu": [..], "U": [[..], ..], "column_names": [..]}`
//! with `U` stored row-major (one inner array per column of the data).
//! Floats are written in shortest round-trip form, so reading back yields
//! bit-identical parameters.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{LpcaError, Result};
use crate::expfam::Family;
use crate::fit::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub family: Family,
    pub k: usize,
    pub m: f64,
    pub mu: Vec<f64>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<f64>>,
    pub column_names: Vec<String>,
}

impl ModelFile {
    pub fn from_params(params: &ModelParams, column_names: &[String]) -> Result<Self> {
        if column_names.len() != params.d() {
            return Err(LpcaError::DimensionMismatch {
                expected: params.d(),
                got: column_names.len(),
            });
        }
        Ok(Self {
            family: params.family,
            k: params.k,
            m: params.m,
            mu: params.mu.iter().copied().collect(),
            u: params
                .u
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
            column_names: column_names.to_vec(),
        })
    }

    pub fn to_params(&self) -> Result<ModelParams> {
        let d = self.mu.len();
        if self.u.len() != d || self.column_names.len() != d {
            return Err(LpcaError::DimensionMismatch {
                expected: d,
                got: self.u.len(),
            });
        }
        if let Some(bad) = self.u.iter().find(|r| r.len() != self.k) {
            return Err(LpcaError::DimensionMismatch {
                expected: self.k,
                got: bad.len(),
            });
        }
        let u = DMatrix::from_fn(d, self.k, |j, l| self.u[j][l]);
        ModelParams::new(self.family, self.m, DVector::from_vec(self.mu.clone()), u)
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_layout() {
        let params = ModelParams::new(
            Family::Bernoulli,
            4.0,
            DVector::from_row_slice(&[0.1, -0.2, 0.3]),
            DMatrix::from_row_slice(3, 1, &[0.6, 0.8, 0.0]),
        )
        .unwrap();
        let names: Vec<String> = ["D16", "D19", "D20"].iter().map(|s| s.to_string()).collect();
        let mut buf = Vec::new();
        ModelFile::from_params(&params, &names).unwrap().write(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["family"], "bernoulli");
        assert_eq!(v["k"], 1);
        assert_eq!(v["U"][1][0], 0.8);
        assert_eq!(v["column_names"][2], "D20");
    }

    #[test]
    fn rejects_inconsistent_file() {
        let f = ModelFile {
            family: Family::Gaussian,
            k: 1,
            m: 4.0,
            mu: vec![0.0, 0.0],
            u: vec![vec![1.0]],
            column_names: vec!["a".into(), "b".into()],
        };
        assert!(f.to_params().is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_is_bitwise(
            angle in 0.0f64..std::f64::consts::PI,
            mu in prop::collection::vec(-1e3f64..1e3, 2),
            m in 0.01f64..100.0,
        ) {
            let u = DMatrix::from_row_slice(2, 1, &[angle.cos(), angle.sin()]);
            let params = ModelParams::new(Family::Bernoulli, m, DVector::from_vec(mu), u).unwrap();
            let file = ModelFile::from_params(&params, &["a".into(), "b".into()]).unwrap();
            let mut buf = Vec::new();
            file.write(&mut buf).unwrap();
            let back = ModelFile::read(buf.as_slice()).unwrap().to_params().unwrap();
            prop_assert_eq!(back, params);
        }
    }
}
