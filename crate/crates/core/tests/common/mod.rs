#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use lpca::synth::{self, GeneratorSpec};
use lpca::ResponseMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// log(1 + e^t) written out directly.
pub fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

pub fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

pub fn bernoulli_cell(x: f64, theta: f64) -> f64 {
    2.0 * (-x * theta + softplus(theta))
}

/// Cellwise objective over observed cells for a given natural-parameter matrix.
pub fn bernoulli_objective(data: &ResponseMatrix, theta: &DMatrix<f64>) -> f64 {
    let mut total = 0.0;
    for i in 0..data.nrows() {
        for j in 0..data.ncols() {
            if let Some(x) = data.get(i, j) {
                total += bernoulli_cell(x, theta[(i, j)]);
            }
        }
    }
    total
}

pub fn gaussian_matrix(n: usize, d: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(n, d, |_, _| rng.sample(StandardNormal))
}

pub fn random_orthonormal(d: usize, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    gaussian_matrix(d, k, rng).qr().q().columns(0, k).into_owned()
}

/// Leading right singular vectors of the column-centered matrix, via SVD.
pub fn classical_pca_basis(x: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let (n, d) = x.shape();
    let mut c = x.clone();
    for j in 0..d {
        let mean = (0..n).map(|i| x[(i, j)]).sum::<f64>() / n as f64;
        for i in 0..n {
            c[(i, j)] -= mean;
        }
    }
    let svd = c.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    DMatrix::from_fn(d, k, |j, l| v_t[(order[l], j)])
}

/// Largest principal angle between two column spaces from the SVD of AᵀB.
pub fn max_principal_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    // sines of the angles are the singular values of (I - AAᵀ)B
    let resid = b - a * (a.transpose() * b);
    resid
        .singular_values()
        .iter()
        .fold(0.0_f64, |m, s| m.max(s.min(1.0).asin()))
}

pub fn synthetic(n: usize, d: usize, k: usize, seed: u64, na_rate: f64) -> synth::SyntheticData {
    let spec = GeneratorSpec {
        na_rate,
        ..GeneratorSpec::new(n, d, k, seed)
    };
    synth::generate(&spec).expect("valid generator spec")
}

/// Exhaustive minimum of the k=1, m=4 objective on a 2x2 binary matrix over
/// μ ∈ [-5,5]² (step 0.1) and U = (cos a, sin a), a ∈ [0, π) (step 0.01).
pub fn grid_oracle_2x2(x: &[[f64; 2]; 2]) -> f64 {
    let m = 4.0;
    let sat = |v: f64| m * (2.0 * v - 1.0);
    let grid: Vec<f64> = (0..=100).map(|s| -5.0 + 0.1 * s as f64).collect();
    let mut best = f64::INFINITY;
    let mut a = 0.0;
    while a < std::f64::consts::PI {
        let (u0, u1) = (a.cos(), a.sin());
        for &m0 in &grid {
            for &m1 in &grid {
                let mut total = 0.0;
                for row in x {
                    let c0 = sat(row[0]) - m0;
                    let c1 = sat(row[1]) - m1;
                    let s = u0 * c0 + u1 * c1;
                    total += bernoulli_cell(row[0], m0 + u0 * s);
                    total += bernoulli_cell(row[1], m1 + u1 * s);
                }
                best = best.min(total);
            }
        }
        a += 0.01;
    }
    best
}
