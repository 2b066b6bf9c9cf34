//! Small dense linear-algebra kernels used by the spectral adapter:
//! Householder thin QR, one-sided Jacobi singular values, and a cyclic
//! Jacobi eigensolver for symmetric matrices. Matrices here are at most a
//! few tens of rows/columns, so simplicity and accuracy win over speed.

use ndarray::{Array1, Array2};

/// Thin QR of a tall matrix `a` (m >= n) by Householder reflections.
/// Returns `(q, r)` with `q` m×n (orthonormal columns) and `r` n×n upper
/// triangular such that `q · r == a` up to rounding.
pub fn qr_thin(a: &Array2<f64>) -> (Array2<f64>, Array2<f64>) {
    let (m, n) = a.dim();
    assert!(m >= n, "qr_thin expects a tall matrix, got {m}x{n}");
    let mut r = a.clone();
    // Householder vectors, one per column, stored dense for clarity.
    let mut reflectors: Vec<Array1<f64>> = Vec::with_capacity(n);

    for j in 0..n {
        let mut v = Array1::zeros(m - j);
        for i in j..m {
            v[i - j] = r[[i, j]];
        }
        let norm = v.dot(&v).sqrt();
        if norm > 0.0 {
            // v <- x + sign(x0) ||x|| e1 avoids cancellation.
            v[0] += norm * if v[0] >= 0.0 { 1.0 } else { -1.0 };
        }
        let vtv = v.dot(&v);
        if vtv > 0.0 {
            let beta = 2.0 / vtv;
            for col in j..n {
                let mut dot = 0.0;
                for i in j..m {
                    dot += v[i - j] * r[[i, col]];
                }
                let scale = beta * dot;
                for i in j..m {
                    r[[i, col]] -= scale * v[i - j];
                }
            }
        }
        reflectors.push(v);
    }

    // Accumulate Q by applying the reflectors in reverse to the first n
    // columns of the identity.
    let mut q = Array2::zeros((m, n));
    for j in 0..n {
        q[[j, j]] = 1.0;
    }
    for j in (0..n).rev() {
        let v = &reflectors[j];
        let vtv = v.dot(v);
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        for col in 0..n {
            let mut dot = 0.0;
            for i in j..m {
                dot += v[i - j] * q[[i, col]];
            }
            let scale = beta * dot;
            for i in j..m {
                q[[i, col]] -= scale * v[i - j];
            }
        }
    }

    // Zero the strictly lower part of R left behind by rounding.
    let mut r_out = Array2::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            r_out[[i, j]] = r[[i, j]];
        }
    }
    (q, r_out)
}

/// Singular values of `a` in descending order, by one-sided Jacobi on the
/// tall orientation. Accurate for small singular values, unlike going
/// through the Gram matrix.
pub fn singular_values(a: &Array2<f64>) -> Vec<f64> {
    let (m, n) = a.dim();
    let mut b = if m >= n { a.clone() } else { a.t().to_owned() };
    let (rows, cols) = b.dim();
    let eps = 1e-15;

    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..rows {
                    let bp = b[[i, p]];
                    let bq = b[[i, q]];
                    app += bp * bp;
                    aqq += bq * bq;
                    apq += bp * bq;
                }
                if apq.abs() <= eps * (app * aqq).sqrt() || apq == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let bp = b[[i, p]];
                    let bq = b[[i, q]];
                    b[[i, p]] = c * bp - s * bq;
                    b[[i, q]] = s * bp + c * bq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|j| {
            let mut s = 0.0;
            for i in 0..rows {
                s += b[[i, j]] * b[[i, j]];
            }
            s.sqrt()
        })
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    sv
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order and the matching eigenvectors
/// as columns.
pub fn eigh(s: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = s.nrows();
    assert_eq!(n, s.ncols(), "eigh expects a square matrix");
    let mut a = s.clone();
    let mut v: Array2<f64> = Array2::eye(n);
    let eps = 1e-14;

    let off = |a: &Array2<f64>| -> f64 {
        let mut t = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    t += a[[i, j]] * a[[i, j]];
                }
            }
        }
        t.sqrt()
    };
    let scale = {
        let mut t = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                t += a[[i, j]] * a[[i, j]];
            }
        }
        t.sqrt().max(f64::MIN_POSITIVE)
    };

    for _sweep in 0..100 {
        if off(&a) <= eps * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq.abs() <= eps * scale / (n as f64) {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = c * t;
                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = c * akp - sn * akq;
                    a[[k, q]] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = c * apk - sn * aqk;
                    a[[q, k]] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - sn * vkq;
                    v[[k, q]] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[j, j]].partial_cmp(&a[[i, i]]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| a[[i, i]]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[[i, new_col]] = v[[i, old_col]];
        }
    }
    (values, vectors)
}
