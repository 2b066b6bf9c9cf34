//! Spatial smoothing kernels: truncated normalized Gaussians and separable
//! circular convolution. Shared by the kernel denoiser, the phantom
//! generator, and the degradation operators.

use ndarray::{Array2, ArrayView2};

/// Truncated 1-D Gaussian of standard deviation `std` with radius
/// `ceil(3 * std)`, normalized to sum 1. A non-positive or tiny `std`
/// degenerates to the identity kernel `[1]`.
pub fn gaussian_kernel_1d(std: f64) -> Vec<f64> {
    if !(std > 1e-12) {
        return vec![1.0];
    }
    let radius = (3.0 * std).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|d| (-(d as f64).powi(2) / (2.0 * std * std)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    for v in &mut k {
        *v /= sum;
    }
    k
}

/// 2-D Gaussian on an odd `support`×`support` grid, normalized to sum 1.
pub fn gaussian_kernel_2d(std: f64, support: usize) -> Array2<f64> {
    assert!(support % 2 == 1 && support >= 1, "support must be odd");
    let radius = (support / 2) as i64;
    let mut k = Array2::zeros((support, support));
    for (u, du) in (-radius..=radius).enumerate() {
        for (v, dv) in (-radius..=radius).enumerate() {
            let d2 = (du * du + dv * dv) as f64;
            k[[u, v]] = if std > 1e-12 {
                (-d2 / (2.0 * std * std)).exp()
            } else if du == 0 && dv == 0 {
                1.0
            } else {
                0.0
            };
        }
    }
    let sum = k.sum();
    k.mapv_inplace(|v| v / sum);
    k
}

/// Separable circular convolution of a 2-D field with a 1-D kernel applied
/// along rows then columns.
pub fn conv_circ_separable(field: &ArrayView2<'_, f64>, kernel: &[f64]) -> Array2<f64> {
    let (h, w) = field.dim();
    let radius = (kernel.len() / 2) as isize;

    let mut tmp = Array2::zeros((h, w));
    for i in 0..h {
        for j in 0..w {
            let mut acc = 0.0;
            for (t, &kv) in kernel.iter().enumerate() {
                let d = t as isize - radius;
                let jj = (j as isize - d).rem_euclid(w as isize) as usize;
                acc += kv * field[[i, jj]];
            }
            tmp[[i, j]] = acc;
        }
    }
    let mut out = Array2::zeros((h, w));
    for i in 0..h {
        for j in 0..w {
            let mut acc = 0.0;
            for (t, &kv) in kernel.iter().enumerate() {
                let d = t as isize - radius;
                let ii = (i as isize - d).rem_euclid(h as isize) as usize;
                acc += kv * tmp[[ii, j]];
            }
            out[[i, j]] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    #[test]
    fn kernel_normalized() {
        for &std in &[0.05, 0.5, 1.0, 2.0, 10.0] {
            let k = gaussian_kernel_1d(std);
            let sum: f64 = k.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "std {std}: sum {sum}");
            assert!(k.iter().all(|&v| v >= 0.0));
        }
        assert_eq!(gaussian_kernel_1d(0.0), vec![1.0]);
    }

    #[test]
    fn kernel_2d_normalized() {
        let k = gaussian_kernel_2d(2.0, 9);
        assert!((k.sum() - 1.0).abs() < 1e-12);
        // symmetric about the center
        assert!((k[[0, 4]] - k[[8, 4]]).abs() < 1e-15);
        assert!((k[[4, 0]] - k[[4, 8]]).abs() < 1e-15);
    }

    #[test]
    fn convolution_preserves_constants() {
        let field = Array2::from_elem((6, 5), 0.7);
        let out = conv_circ_separable(&field.view(), &gaussian_kernel_1d(1.5));
        for v in out.iter() {
            assert!((v - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_kernel_is_noop() {
        let field = Array2::from_shape_fn((4, 4), |(i, j)| (i * 4 + j) as f64);
        let out = conv_circ_separable(&field.view(), &[1.0]);
        assert_eq!(out, field);
    }
}
