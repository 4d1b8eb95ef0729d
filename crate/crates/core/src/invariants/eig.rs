//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};

const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues in [−PSD_CLAMP, 0) are treated as zero by `psd_sqrt`.
pub const PSD_CLAMP: f64 = 1e-12;

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Returns eigenvalues in descending order and the matching orthonormal
/// eigenvectors.
pub fn hermitian_eig(m: &CMatrix) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    let herm = m.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    let tol = OFF_DIAG_TOL * m.frobenius().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < f64::MIN_POSITIVE {
                    continue;
                }
                // J = diag(1, e^{-iα}) · real rotation, α = arg(a_pq)
                let phase = C64::from_polar(1.0, -apq.arg());
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * phase * s;
                    a[(k, q)] = akp * s + akq * phase * c;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * phase * s;
                    v[(k, q)] = vkp * s + vkq * phase * c;
                }
                let pc = phase.conj();
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * pc * s;
                    a[(q, k)] = apk * s + aqk * pc * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|k| v[(k, j)]).collect())
        .collect();
    Ok((values, vectors))
}

/// Principal square root of a PSD Hermitian matrix.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (vals, vecs) = hermitian_eig(m)?;
    let n = m.dim();
    let mut out = CMatrix::zeros(n);
    for (lam, vec) in vals.iter().zip(&vecs) {
        if *lam < -PSD_CLAMP {
            return Err(Error::NotPsd(*lam));
        }
        let root = lam.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        let proj = CMatrix::outer(vec, vec).scale(root);
        out = &out + &proj;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE};
    use proptest::prelude::*;

    fn check_decomposition(m: &CMatrix, tol: f64) {
        let (vals, vecs) = hermitian_eig(m).unwrap();
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        for (lam, v) in vals.iter().zip(&vecs) {
            let av = m.apply(v);
            for (x, y) in av.iter().zip(v) {
                assert!((x - y * *lam).norm() < tol, "A v != λ v");
            }
        }
        for (i, a) in vecs.iter().enumerate() {
            for (j, b) in vecs.iter().enumerate() {
                let ip: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(e, 0.0)).norm() < tol);
            }
        }
    }

    #[test]
    fn small_examples() {
        let (vals, _) = hermitian_eig(&CMatrix::from_diag(&[1.0, 3.0])).unwrap();
        assert_eq!(vals, vec![3.0, 1.0]);

        let sx = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        let (vals, _) = hermitian_eig(&sx).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
        check_decomposition(&sx, 1e-12);

        let half = C64::new(0.5, 0.0);
        let mut bell = CMatrix::zeros(4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(i, j)] = half;
        }
        let (vals, _) = hermitian_eig(&bell).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!(vals[1..].iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn complex_offdiagonal() {
        let sy = CMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]);
        check_decomposition(&sy, 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn sqrt_squares_back() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(0.6, 0.0), C64::new(0.1, 0.2)],
            vec![C64::new(0.1, -0.2), C64::new(0.4, 0.0)],
        ]);
        let r = psd_sqrt(&m).unwrap();
        assert!((&r * &r).max_abs_diff(&m) < 1e-13);
        assert!(matches!(psd_sqrt(&CMatrix::from_diag(&[1.0, -0.1])), Err(Error::NotPsd(_))));
        assert!(psd_sqrt(&CMatrix::from_diag(&[1.0, -1e-13])).is_ok());
    }

    proptest! {
        #[test]
        fn random_hermitian(dim_pow in 1usize..5, seed in proptest::collection::vec(-1.0f64..1.0, 512)) {
            let n = 1 << dim_pow;
            let mut m = CMatrix::zeros(n);
            let mut k = 0;
            for i in 0..n {
                m[(i, i)] = C64::new(seed[k], 0.0);
                k += 1;
                for j in (i + 1)..n {
                    let z = C64::new(seed[k], seed[k + 1]);
                    k += 2;
                    m[(i, j)] = z;
                    m[(j, i)] = z.conj();
                }
            }
            check_decomposition(&m, 1e-10);
        }
    }
}
