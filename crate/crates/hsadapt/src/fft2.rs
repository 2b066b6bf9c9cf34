//! Two-dimensional FFT helpers on top of `rustfft`, used for circular
//! convolution operators and the closed-form deblurring data step.

use ndarray::Array2;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Forward/inverse 2-D FFT plans for one spatial size, reusable across bands.
pub struct FftPlan2d {
    height: usize,
    width: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

impl FftPlan2d {
    pub fn new(height: usize, width: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            height,
            width,
            row_fwd: planner.plan_fft_forward(width),
            row_inv: planner.plan_fft_inverse(width),
            col_fwd: planner.plan_fft_forward(height),
            col_inv: planner.plan_fft_inverse(height),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    fn transform(&self, data: &mut Array2<Complex64>, forward: bool) {
        let (h, w) = (self.height, self.width);
        assert_eq!(data.dim(), (h, w));
        let row_plan = if forward { &self.row_fwd } else { &self.row_inv };
        let col_plan = if forward { &self.col_fwd } else { &self.col_inv };

        for mut row in data.rows_mut() {
            let slice = row.as_slice_mut().expect("contiguous row");
            row_plan.process(slice);
        }
        let mut col_buf = vec![Complex64::default(); h];
        for j in 0..w {
            for i in 0..h {
                col_buf[i] = data[[i, j]];
            }
            col_plan.process(&mut col_buf);
            for i in 0..h {
                data[[i, j]] = col_buf[i];
            }
        }
    }

    /// FFT of a real band.
    pub fn forward_real(&self, band: &ndarray::ArrayView2<'_, f64>) -> Array2<Complex64> {
        let mut out = band.mapv(|v| Complex64::new(v, 0.0));
        self.transform(&mut out, true);
        out
    }

    /// Inverse FFT, returning the real part (imaginary parts are rounding
    /// noise for conjugate-symmetric spectra).
    pub fn inverse_to_real(&self, mut spectrum: Array2<Complex64>) -> Array2<f64> {
        self.transform(&mut spectrum, false);
        let scale = 1.0 / (self.height * self.width) as f64;
        spectrum.mapv(|v| v.re * scale)
    }

    /// Spectrum of a small odd-sized kernel embedded with its center at the
    /// origin and circular wrap-around. Kernels larger than the grid alias
    /// by summation, which is the consistent circular interpretation.
    pub fn kernel_spectrum(&self, kernel: &Array2<f64>) -> Array2<Complex64> {
        let (kh, kw) = kernel.dim();
        assert!(kh % 2 == 1 && kw % 2 == 1, "kernel support must be odd");
        let (h, w) = (self.height, self.width);
        let mut grid = Array2::<f64>::zeros((h, w));
        let (ch, cw) = (kh as isize / 2, kw as isize / 2);
        for u in 0..kh {
            for v in 0..kw {
                let di = u as isize - ch;
                let dj = v as isize - cw;
                let i = di.rem_euclid(h as isize) as usize;
                let j = dj.rem_euclid(w as isize) as usize;
                grid[[i, j]] += kernel[[u, v]];
            }
        }
        self.forward_real(&grid.view())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn roundtrip_is_identity() {
        let x = arr2(&[
            [1.0, 2.0, 3.0, 4.0],
            [0.5, -1.0, 0.0, 2.5],
            [3.0, 3.0, 3.0, 3.0],
        ]);
        let plan = FftPlan2d::new(3, 4);
        let back = plan.inverse_to_real(plan.forward_real(&x.view()));
        for (a, b) in x.iter().zip(back.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_kernel_spectrum_is_flat() {
        let plan = FftPlan2d::new(4, 4);
        let k = arr2(&[[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        let spec = plan.kernel_spectrum(&k);
        for v in spec.iter() {
            assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn convolution_matches_direct_sum() {
        // circular convolution with an asymmetric kernel, checked against
        // a direct spatial sum
        let x = arr2(&[
            [1.0, 0.0, 2.0, 0.0],
            [0.0, 3.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [4.0, 0.0, 0.0, 0.0],
        ]);
        let k = arr2(&[[0.1, 0.2, 0.0], [0.0, 0.4, 0.1], [0.0, 0.2, 0.0]]);
        let plan = FftPlan2d::new(4, 4);
        let spec = plan.forward_real(&x.view());
        let kspec = plan.kernel_spectrum(&k);
        let out = plan.inverse_to_real(&spec * &kspec);

        let (h, w) = (4isize, 4isize);
        for i in 0..4 {
            for j in 0..4 {
                let mut direct = 0.0;
                for u in -1..=1isize {
                    for v in -1..=1isize {
                        let kij = k[[(u + 1) as usize, (v + 1) as usize]];
                        let si = (i as isize - u).rem_euclid(h) as usize;
                        let sj = (j as isize - v).rem_euclid(w) as usize;
                        direct += kij * x[[si, sj]];
                    }
                }
                assert!((out[[i, j]] - direct).abs() < 1e-12);
            }
        }
    }
}
