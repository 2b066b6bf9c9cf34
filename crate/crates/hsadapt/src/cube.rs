//! Hyperspectral cube and latent-image types.
//!
//! An [`HSImage`] is a real-valued cube of shape height × width × C stored
//! band-major planar (band 0 row-major, then band 1, ...), which is the
//! memory layout of an `Array3` indexed `(band, row, col)`. A [`LatentImage`]
//! is the low-dimensional (1- or 3-channel) cube fed to a frozen denoiser.

use ndarray::{Array1, Array3, ArrayView2, ArrayViewMut2, Axis, s};

use crate::error::{Error, Result};

fn validate_dims(height: usize, width: usize, channels: usize) -> Result<()> {
    if height == 0 || width == 0 || channels == 0 {
        return Err(Error::Dimension(format!(
            "all dimensions must be >= 1, got {height}x{width}x{channels}"
        )));
    }
    Ok(())
}

fn validate_finite(data: &[f64]) -> Result<()> {
    if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical {
            iteration: 0,
            message: format!("non-finite sample at flat index {pos}"),
        });
    }
    Ok(())
}

/// A hyperspectral cube. Values are dimensionless reflectance, nominally in
/// (0,1) after normalization. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct HSImage {
    data: Array3<f64>, // (channels, height, width)
}

impl HSImage {
    /// Builds a cube from band-major planar samples
    /// (length must be `height * width * channels`).
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        validate_dims(height, width, channels)?;
        if data.len() != height * width * channels {
            return Err(Error::Dimension(format!(
                "data length {} does not match {height}x{width}x{channels}",
                data.len()
            )));
        }
        validate_finite(&data)?;
        let data = Array3::from_shape_vec((channels, height, width), data)
            .expect("shape already validated");
        Ok(Self { data })
    }

    /// Wraps an existing `(channels, height, width)` array.
    pub fn from_array(data: Array3<f64>) -> Result<Self> {
        let (c, h, w) = data.dim();
        validate_dims(h, w, c)?;
        let data = data.as_standard_layout().into_owned();
        validate_finite(data.as_slice().expect("standard layout"))?;
        Ok(Self { data })
    }

    pub fn zeros(height: usize, width: usize, channels: usize) -> Self {
        Self {
            data: Array3::zeros((channels, height, width)),
        }
    }

    pub fn height(&self) -> usize {
        self.data.dim().1
    }

    pub fn width(&self) -> usize {
        self.data.dim().2
    }

    pub fn channels(&self) -> usize {
        self.data.dim().0
    }

    /// `(height, width, channels)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        let (c, h, w) = self.data.dim();
        (h, w, c)
    }

    pub fn same_shape(&self, other: &HSImage) -> bool {
        self.data.dim() == other.data.dim()
    }

    pub fn band(&self, index: usize) -> ArrayView2<'_, f64> {
        self.data.index_axis(Axis(0), index)
    }

    /// Spectrum at pixel `(row, col)` as an owned vector of length C.
    pub fn spectrum(&self, row: usize, col: usize) -> Array1<f64> {
        self.data.slice(s![.., row, col]).to_owned()
    }

    pub fn as_array(&self) -> &Array3<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array3<f64> {
        self.data
    }

    /// Band-major planar samples.
    pub fn samples(&self) -> &[f64] {
        self.data.as_slice().expect("standard layout")
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.samples().iter()
    }

    /// Frobenius norm over all samples.
    pub fn norm(&self) -> f64 {
        self.samples().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn all_finite(&self) -> bool {
        self.samples().iter().all(|v| v.is_finite())
    }
}

/// A low-dimensional cube compatible with a frozen 1- or 3-channel denoiser.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentImage {
    data: Array3<f64>, // (channels, height, width), channels in {1, 3}
}

impl LatentImage {
    pub fn from_array(data: Array3<f64>) -> Result<Self> {
        let (c, h, w) = data.dim();
        validate_dims(h, w, c)?;
        if c != 1 && c != 3 {
            return Err(Error::Dimension(format!(
                "latent channel arity must be 1 or 3, got {c}"
            )));
        }
        let data = data.as_standard_layout().into_owned();
        validate_finite(data.as_slice().expect("standard layout"))?;
        Ok(Self { data })
    }

    pub fn zeros(height: usize, width: usize, channels: usize) -> Result<Self> {
        Self::from_array(Array3::zeros((channels, height, width)))
    }

    pub fn height(&self) -> usize {
        self.data.dim().1
    }

    pub fn width(&self) -> usize {
        self.data.dim().2
    }

    pub fn channels(&self) -> usize {
        self.data.dim().0
    }

    pub fn plane(&self, index: usize) -> ArrayView2<'_, f64> {
        self.data.index_axis(Axis(0), index)
    }

    pub fn plane_mut(&mut self, index: usize) -> ArrayViewMut2<'_, f64> {
        self.data.index_axis_mut(Axis(0), index)
    }

    pub fn as_array(&self) -> &Array3<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array3<f64> {
        self.data
    }

    pub fn samples(&self) -> &[f64] {
        self.data.as_slice().expect("standard layout")
    }

    pub fn same_shape(&self, other: &LatentImage) -> bool {
        self.data.dim() == other.data.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_validates_length() {
        let err = HSImage::new(2, 2, 3, vec![0.0; 11]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
        assert!(HSImage::new(2, 2, 3, vec![0.0; 12]).is_ok());
    }

    #[test]
    fn new_rejects_zero_dims() {
        assert!(HSImage::new(0, 2, 3, vec![]).is_err());
        assert!(HSImage::new(2, 0, 3, vec![]).is_err());
        assert!(HSImage::new(2, 2, 0, vec![]).is_err());
    }

    #[test]
    fn new_rejects_non_finite() {
        let err = HSImage::new(1, 2, 1, vec![0.5, f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::Numerical { .. }));
    }

    #[test]
    fn band_major_layout() {
        // band 0 = [1,2,3,4], band 1 = [5,6,7,8]
        let x = HSImage::new(2, 2, 2, (1..=8).map(f64::from).collect()).unwrap();
        assert_eq!(x.band(0)[[0, 1]], 2.0);
        assert_eq!(x.band(1)[[1, 0]], 7.0);
        assert_eq!(x.spectrum(0, 0).to_vec(), vec![1.0, 5.0]);
    }

    #[test]
    fn latent_arity_restricted() {
        assert!(LatentImage::zeros(4, 4, 1).is_ok());
        assert!(LatentImage::zeros(4, 4, 3).is_ok());
        assert!(LatentImage::zeros(4, 4, 2).is_err());
    }
}
