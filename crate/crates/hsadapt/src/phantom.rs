//! Synthetic low-rank hyperspectral phantoms: desk-scale stand-ins for real
//! scenes, built as a sum of `rank` abundance-map ⊗ signature outer products
//! so the pixels×bands matrix has rank at most `rank` exactly.

use ndarray::{Array1, Array2, Array3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::HSImage;
use crate::error::{Error, Result};
use crate::kernels::{conv_circ_separable, gaussian_kernel_1d};

/// Affine rescale of a field into [lo, hi]; constant fields map to the
/// midpoint.
fn normalize_into(values: &mut [f64], lo: f64, hi: f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values.iter() {
        min = min.min(v);
        max = max.max(v);
    }
    if max - min < 1e-15 {
        let mid = 0.5 * (lo + hi);
        for v in values.iter_mut() {
            *v = mid;
        }
        return;
    }
    let scale = (hi - lo) / (max - min);
    for v in values.iter_mut() {
        *v = lo + (*v - min) * scale;
    }
}

fn abundance_map(height: usize, width: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    let field = Array2::from_shape_fn((height, width), |_| rng.random::<f64>());
    let std = (height.min(width) as f64 / 10.0).max(0.8);
    let mut smoothed = conv_circ_separable(&field.view(), &gaussian_kernel_1d(std));
    normalize_into(smoothed.as_slice_mut().expect("standard layout"), 0.25, 1.0);
    smoothed
}

fn signature(channels: usize, rng: &mut ChaCha8Rng) -> Array1<f64> {
    let bumps = 2 + (rng.random::<f64>() < 0.5) as usize;
    let mut s = Array1::zeros(channels);
    for _ in 0..bumps {
        let amp = 0.5 + 0.5 * rng.random::<f64>();
        let center = rng.random::<f64>() * (channels.max(2) - 1) as f64;
        let width = (channels as f64 / 8.0).max(0.75)
            + rng.random::<f64>() * (channels as f64 / 8.0).max(0.5);
        for b in 0..channels {
            let d = b as f64 - center;
            s[b] += amp * (-d * d / (2.0 * width * width)).exp();
        }
    }
    normalize_into(s.as_slice_mut().expect("contiguous"), 0.25, 1.0);
    s
}

/// Deterministic rank-`rank` phantom of the requested size, with smooth
/// abundance maps and smooth positive spectral signatures, rescaled to peak
/// at 0.95 (sample range stays inside [0.05, 0.95]).
pub fn make_phantom(
    height: usize,
    width: usize,
    channels: usize,
    rank: usize,
    seed: u64,
) -> Result<HSImage> {
    if rank < 1 || rank > channels {
        return Err(Error::Parameter(format!(
            "rank must lie in [1, channels={channels}], got {rank}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cube = Array3::<f64>::zeros((channels, height, width));
    for _ in 0..rank {
        let a = abundance_map(height, width, &mut rng);
        let s = signature(channels, &mut rng);
        for b in 0..channels {
            let sv = s[b];
            let mut plane = cube.index_axis_mut(ndarray::Axis(0), b);
            plane.scaled_add(sv, &a);
        }
    }
    // multiplicative rescale only: an affine shift would add a rank-one
    // term and break the exact low-rank structure
    let max = cube.iter().fold(0.0f64, |m, &v| m.max(v));
    cube.mapv_inplace(|v| v * (0.95 / max));
    HSImage::from_array(cube)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::singular_values;
    use crate::metrics::sam;

    #[test]
    fn rank_out_of_range_errors() {
        assert!(matches!(
            make_phantom(8, 8, 4, 0, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            make_phantom(8, 8, 4, 5, 1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn values_stay_in_declared_range() {
        let x = make_phantom(20, 18, 7, 3, 99).unwrap();
        for &v in x.samples() {
            assert!((0.05..=0.95).contains(&v), "sample {v} out of range");
        }
    }

    #[test]
    fn rank_one_spectra_are_collinear() {
        let x = make_phantom(9, 9, 12, 1, 7).unwrap();
        // every pixel spectrum is a positive multiple of one signature
        let angle = sam(&x, &x).unwrap();
        assert!(angle < 1e-6);
        let s0 = x.spectrum(0, 0);
        for i in 0..9 {
            for j in 0..9 {
                let s = x.spectrum(i, j);
                let dot = s0.dot(&s);
                let cos = dot / (s0.dot(&s0).sqrt() * s.dot(&s).sqrt());
                assert!(cos > 1.0 - 1e-12, "pixel ({i},{j}) not collinear");
            }
        }
    }

    #[test]
    fn rank_three_matches_svd_oracle() {
        let x = make_phantom(16, 16, 31, 3, 123).unwrap();
        // oracle: singular values of the pixels×bands matrix
        let (h, w, c) = x.shape();
        let mut flat = Array2::zeros((h * w, c));
        for i in 0..h {
            for j in 0..w {
                for b in 0..c {
                    flat[[i * w + j, b]] = x.as_array()[[b, i, j]];
                }
            }
        }
        let sv = singular_values(&flat);
        assert!(sv[0] > 0.0);
        for (idx, &s) in sv.iter().enumerate().skip(3) {
            assert!(
                s < 1e-8 * sv[0],
                "singular value {idx} = {s:.3e} exceeds 1e-8 * {:.3e}",
                sv[0]
            );
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = make_phantom(12, 10, 6, 2, 5).unwrap();
        let b = make_phantom(12, 10, 6, 2, 5).unwrap();
        assert_eq!(a.samples(), b.samples());
        let c = make_phantom(12, 10, 6, 2, 6).unwrap();
        assert_ne!(a.samples(), c.samples());
    }

    #[test]
    fn single_band_phantom_is_valid() {
        let x = make_phantom(8, 8, 1, 1, 3).unwrap();
        assert_eq!(x.channels(), 1);
        assert!(x.all_finite());
    }
}
