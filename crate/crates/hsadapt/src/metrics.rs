//! Reconstruction-quality metrics: PSNR (numerical accuracy), the spectral
//! angle mapper (spectral consistency), and single-scale SSIM (perceptual
//! quality), plus the report struct bundling them with per-patch timing.

use crate::cube::HSImage;
use crate::error::{Error, Result};

/// PSNR cap reported for exact matches, in decibels.
pub const PSNR_CAP_DB: f64 = 99.0;

/// SAM skips pixels whose reference or estimate spectrum has a norm below
/// this threshold.
pub const SAM_NORM_FLOOR: f64 = 1e-12;

/// Quality summary for one restored patch. `wall_time` is seconds per patch
/// and is filled in by the caller that did the timing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    /// Peak signal-to-noise ratio in decibels (peak value 1).
    pub psnr: f64,
    /// Mean spectral angle in radians.
    pub sam: f64,
    /// Mean single-scale SSIM over bands.
    pub ssim: f64,
    /// Seconds per patch.
    pub wall_time: f64,
}

impl MetricReport {
    pub fn compute(reference: &HSImage, estimate: &HSImage, wall_time: f64) -> Result<Self> {
        Ok(Self {
            psnr: psnr(reference, estimate)?,
            sam: sam(reference, estimate)?,
            ssim: ssim(reference, estimate)?,
            wall_time,
        })
    }
}

impl std::fmt::Display for MetricReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "psnr={:.4}\tsam={:.6}\tssim={:.6}\twall_time={:.4}",
            self.psnr, self.sam, self.ssim, self.wall_time
        )
    }
}

fn check_same_shape(reference: &HSImage, estimate: &HSImage) -> Result<()> {
    if !reference.same_shape(estimate) {
        return Err(Error::Dimension(format!(
            "reference {:?} vs estimate {:?}",
            reference.shape(),
            estimate.shape()
        )));
    }
    Ok(())
}

/// PSNR with peak 1.0 over all samples; `cap` is returned when the MSE is
/// below 1e-12 (exact or near-exact match).
pub fn psnr_with_cap(reference: &HSImage, estimate: &HSImage, cap: f64) -> Result<f64> {
    check_same_shape(reference, estimate)?;
    let n = reference.samples().len() as f64;
    let mse = reference
        .samples()
        .iter()
        .zip(estimate.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    if mse < 1e-12 {
        return Ok(cap);
    }
    Ok(10.0 * (1.0 / mse).log10())
}

/// PSNR with the default 99 dB cap.
pub fn psnr(reference: &HSImage, estimate: &HSImage) -> Result<f64> {
    psnr_with_cap(reference, estimate, PSNR_CAP_DB)
}

/// Mean per-pixel spectral angle in radians. Pixels where either spectrum
/// has norm below [`SAM_NORM_FLOOR`] are excluded from the mean.
pub fn sam(reference: &HSImage, estimate: &HSImage) -> Result<f64> {
    check_same_shape(reference, estimate)?;
    if reference.channels() < 2 {
        return Err(Error::Dimension(
            "sam requires at least 2 channels".into(),
        ));
    }
    let (h, w, c) = reference.shape();
    let floor2 = SAM_NORM_FLOOR * SAM_NORM_FLOOR;
    let mut total = 0.0;
    let mut count = 0usize;
    let a = reference.as_array();
    let b = estimate.as_array();
    for i in 0..h {
        for j in 0..w {
            let mut dot = 0.0;
            let mut na = 0.0;
            let mut nb = 0.0;
            for band in 0..c {
                let x = a[[band, i, j]];
                let y = b[[band, i, j]];
                dot += x * y;
                na += x * x;
                nb += y * y;
            }
            if na < floor2 || nb < floor2 {
                continue;
            }
            let ratio = (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0);
            total += ratio.acos();
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::Degenerate(
            "all pixel spectra are below the SAM norm floor".into(),
        ));
    }
    Ok(total / count as f64)
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;
const SSIM_DYNAMIC_RANGE: f64 = 1.0;

fn ssim_window() -> [f64; SSIM_WINDOW] {
    let mut w = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (i, v) in w.iter_mut().enumerate() {
        let d = i as f64 - c;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
        sum += *v;
    }
    for v in &mut w {
        *v /= sum;
    }
    w
}

/// Valid-mode separable filtering of a band with the SSIM window.
fn filter_valid(band: &ndarray::ArrayView2<'_, f64>, win: &[f64; SSIM_WINDOW]) -> ndarray::Array2<f64> {
    let (h, w) = band.dim();
    let oh = h - SSIM_WINDOW + 1;
    let ow = w - SSIM_WINDOW + 1;
    let mut rows = ndarray::Array2::zeros((h, ow));
    for i in 0..h {
        for j in 0..ow {
            let mut acc = 0.0;
            for (t, &kv) in win.iter().enumerate() {
                acc += kv * band[[i, j + t]];
            }
            rows[[i, j]] = acc;
        }
    }
    let mut out = ndarray::Array2::zeros((oh, ow));
    for i in 0..oh {
        for j in 0..ow {
            let mut acc = 0.0;
            for (t, &kv) in win.iter().enumerate() {
                acc += kv * rows[[i + t, j]];
            }
            out[[i, j]] = acc;
        }
    }
    out
}

/// Single-scale SSIM per band (11×11 Gaussian window, std 1.5, K1=0.01,
/// K2=0.03, dynamic range 1), averaged over bands. Local statistics use
/// valid window positions only.
pub fn ssim(reference: &HSImage, estimate: &HSImage) -> Result<f64> {
    check_same_shape(reference, estimate)?;
    let (h, w, c) = reference.shape();
    if h < SSIM_WINDOW || w < SSIM_WINDOW {
        return Err(Error::Dimension(format!(
            "ssim requires height and width >= {SSIM_WINDOW}, got {h}x{w}"
        )));
    }
    let win = ssim_window();
    let c1 = (SSIM_K1 * SSIM_DYNAMIC_RANGE).powi(2);
    let c2 = (SSIM_K2 * SSIM_DYNAMIC_RANGE).powi(2);

    let mut band_mean = 0.0;
    for band in 0..c {
        let x = reference.band(band);
        let y = estimate.band(band);
        let x2 = x.mapv(|v| v * v);
        let y2 = y.mapv(|v| v * v);
        let xy = &x.to_owned() * &y;

        let mu_x = filter_valid(&x, &win);
        let mu_y = filter_valid(&y, &win);
        let e_x2 = filter_valid(&x2.view(), &win);
        let e_y2 = filter_valid(&y2.view(), &win);
        let e_xy = filter_valid(&xy.view(), &win);

        let mut acc = 0.0;
        let mut n = 0usize;
        for (idx, &mx) in mu_x.indexed_iter() {
            let my = mu_y[idx];
            let vx = e_x2[idx] - mx * mx;
            let vy = e_y2[idx] - my * my;
            let cov = e_xy[idx] - mx * my;
            let val = ((2.0 * mx * my + c1) * (2.0 * cov + c2))
                / ((mx * mx + my * my + c1) * (vx + vy + c2));
            acc += val;
            n += 1;
        }
        band_mean += acc / n as f64;
    }
    Ok(band_mean / c as f64)
}
