//! Small dense linear-algebra helpers on top of nalgebra: sorted symmetric
//! eigenpairs, orthonormalization, principal angles and orthogonal
//! Procrustes alignment.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Eigenpairs of a symmetric matrix, eigenvalues sorted descending.
///
/// Ties (exactly equal eigenvalues) are ordered by the first coordinate at
/// which the eigenvectors differ, larger first.
pub fn sorted_symmetric_eigen(mat: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = mat.nrows();
    // symmetrize so round-off asymmetry never leaks into the decomposition
    let sym = (mat + mat.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| {
                let va = eig.eigenvectors.column(a);
                let vb = eig.eigenvectors.column(b);
                va.iter()
                    .zip(vb.iter())
                    .find(|(x, y)| x != y)
                    .map(|(x, y)| y.partial_cmp(x).unwrap_or(Ordering::Equal))
                    .unwrap_or(Ordering::Equal)
            })
    });
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Leading `k` eigenvectors (as columns) of a symmetric matrix.
pub fn top_k_eigenvectors(mat: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let (_, vectors) = sorted_symmetric_eigen(mat);
    vectors.columns(0, k).into_owned()
}

/// Moore-Penrose pseudo-inverse of a symmetric positive semi-definite
/// matrix applied to `rhs`. Eigenvalues below `rel_tol * max` are dropped.
pub fn psd_pinv_solve(mat: &DMatrix<f64>, rhs: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
    let (values, vectors) = sorted_symmetric_eigen(mat);
    let cutoff = values.iter().cloned().fold(0.0f64, f64::max) * rel_tol;
    let mut out = DVector::zeros(rhs.len());
    for (l, &lambda) in values.iter().enumerate() {
        if lambda > cutoff && lambda > 0.0 {
            let v = vectors.column(l);
            let coef = v.dot(rhs) / lambda;
            out.axpy(coef, &v, 1.0);
        }
    }
    out
}

/// Orthonormal basis of the column space via thin QR.
pub fn orthonormalize(mat: &DMatrix<f64>) -> DMatrix<f64> {
    mat.clone().qr().q()
}

/// Flip each column so its largest-magnitude entry is positive (first one on
/// ties). Returns the applied signs.
pub fn canonicalize_column_signs(mat: &mut DMatrix<f64>) -> Vec<f64> {
    let mut signs = Vec::with_capacity(mat.ncols());
    for mut col in mat.column_iter_mut() {
        let mut best = 0.0f64;
        let mut sign = 1.0;
        for &v in col.iter() {
            if v.abs() > best {
                best = v.abs();
                sign = if v < 0.0 { -1.0 } else { 1.0 };
            }
        }
        if sign < 0.0 {
            col.neg_mut();
        }
        signs.push(sign);
    }
    signs
}

/// `max |AᵀA - I|` over all entries.
pub fn orthonormality_error(mat: &DMatrix<f64>) -> f64 {
    let gram = mat.transpose() * mat;
    let k = gram.nrows();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).abs());
        }
    }
    worst
}

/// Principal angles (radians, ascending) between the column spans of two
/// matrices with orthonormal columns.
///
/// Uses both cosines (`AᵀB`) and sines (`(I - AAᵀ)B`) so that small angles are
/// resolved to full precision rather than through `acos` near 1.
pub fn principal_angles(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Vec<f64> {
    assert_eq!(a.nrows(), b.nrows(), "ambient dimensions differ");
    let cross = a.transpose() * b;
    let residual = b - a * &cross;
    let mut cosines: Vec<f64> = cross.singular_values().iter().cloned().collect();
    let mut sines: Vec<f64> = residual.singular_values().iter().cloned().collect();
    cosines.sort_by(|x, y| y.partial_cmp(x).unwrap_or(Ordering::Equal));
    sines.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    let r = a.ncols().min(b.ncols());
    (0..r)
        .map(|i| {
            let c = cosines.get(i).copied().unwrap_or(0.0);
            let s = sines.get(i).copied().unwrap_or(0.0);
            s.atan2(c)
        })
        .collect()
}

/// Largest principal angle between two orthonormal bases.
pub fn subspace_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    principal_angles(a, b).into_iter().fold(0.0, f64::max)
}

/// Orthogonal Procrustes: the `p × q` matrix `Q` with orthonormal columns
/// (`p ≥ q`) minimizing `‖source Q - target‖_F`.
pub fn procrustes_rotation(source: &DMatrix<f64>, target: &DMatrix<f64>) -> DMatrix<f64> {
    let m = source.transpose() * target;
    let svd = m.svd(true, true);
    let u = svd.u.expect("svd u requested");
    let v_t = svd.v_t.expect("svd v_t requested");
    u * v_t
}

/// Column means of a dense matrix.
pub fn column_means(mat: &DMatrix<f64>) -> DVector<f64> {
    let n = mat.nrows().max(1) as f64;
    DVector::from_iterator(mat.ncols(), mat.column_iter().map(|c| c.sum() / n))
}

/// Subtract each column's mean.
pub fn center_columns(mat: &DMatrix<f64>) -> DMatrix<f64> {
    let means = column_means(mat);
    let mut out = mat.clone();
    for (j, mut col) in out.column_iter_mut().enumerate() {
        col.add_scalar_mut(-means[j]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(t: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()])
    }

    #[test]
    fn eigen_sorted_descending() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 3.0]);
        let (vals, vecs) = sorted_symmetric_eigen(&m);
        assert_eq!(vals.as_slice(), &[5.0, 3.0, 1.0]);
        assert!((vecs[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_ties_are_deterministic() {
        let m = DMatrix::<f64>::identity(3, 3);
        let (_, a) = sorted_symmetric_eigen(&m);
        let (_, b) = sorted_symmetric_eigen(&m);
        assert_eq!(a, b);
    }

    #[test]
    fn principal_angle_of_rotated_line() {
        let a = DMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let b = rotation(0.3) * &a;
        let angles = principal_angles(&a, &b);
        assert!((angles[0] - 0.3).abs() < 1e-14);
        assert!(subspace_distance(&a, &a) == 0.0);
        let tiny = rotation(1e-12) * &a;
        assert!((subspace_distance(&a, &tiny) - 1e-12).abs() < 1e-20);
    }

    #[test]
    fn procrustes_recovers_rotation() {
        let src = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 2.0, -1.0, 1.0, 3.0, -2.0]);
        let r = rotation(0.7);
        let target = &src * &r;
        let q = procrustes_rotation(&src, &target);
        assert!((q - r).abs().max() < 1e-12);
    }

    #[test]
    fn procrustes_rectangular_has_orthonormal_columns() {
        let src = DMatrix::from_row_slice(4, 2, &[1.0, 0.5, 0.0, 2.0, -1.0, 1.0, 3.0, -2.0]);
        let target = DMatrix::from_column_slice(4, 1, &[1.0, 2.0, 0.0, -1.0]);
        let q = procrustes_rotation(&src, &target);
        assert_eq!(q.shape(), (2, 1));
        assert!(orthonormality_error(&q) < 1e-12);
    }

    #[test]
    fn canonical_signs() {
        let mut m = DMatrix::from_row_slice(2, 2, &[0.1, 0.9, -0.9, -0.1]);
        let s = canonicalize_column_signs(&mut m);
        assert_eq!(s, vec![-1.0, 1.0]);
        assert_eq!(m[(1, 0)], 0.9);
    }

    #[test]
    fn pinv_solves_singular_system() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let rhs = DVector::from_vec(vec![3.0, 0.0]);
        let x = psd_pinv_solve(&m, &rhs, 1e-12);
        assert_eq!(x.as_slice(), &[3.0, 0.0]);
    }
}
