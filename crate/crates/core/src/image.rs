use crate::error::{Error, Result};

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        match rows.checked_mul(cols) {
            Some(n) if n == pixels.len() => Ok(Self { rows, cols, pixels }),
            _ => Err(Error::InvalidImage(format!(
                "{rows}x{cols} image needs {} pixels, got {}",
                rows.saturating_mul(cols),
                pixels.len()
            ))),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Result<Self> {
        let n = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::InvalidImage(format!("{rows}x{cols} is too large")))?;
        Self::new(rows, cols, vec![value; n])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows.saturating_mul(cols));
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(f(r, c));
            }
        }
        Self::new(rows, cols, pixels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.cols + col]
    }
}

/// Deterministic 256x256 test texture used for the reference cipher runs.
///
/// A smooth photographic-like scene: overlapping radial gradients, a few
/// soft-edged discs and low-amplitude sinusoidal shading. Neighbouring
/// pixels are strongly correlated, like a natural image.
pub fn reference_image() -> GrayImage {
    const N: usize = 256;
    let discs: [(f64, f64, f64, f64); 4] = [
        (80.0, 90.0, 40.0, 70.0),
        (170.0, 60.0, 30.0, -60.0),
        (150.0, 180.0, 55.0, 45.0),
        (60.0, 200.0, 25.0, -40.0),
    ];
    GrayImage::from_fn(N, N, |r, c| {
        let (y, x) = (r as f64, c as f64);
        let mut v = 40.0 + 0.45 * x + 0.25 * y;
        v += 18.0 * (x / 23.0).sin() * (y / 31.0).cos();
        for (cy, cx, radius, amp) in discs {
            let d = ((y - cy).powi(2) + (x - cx).powi(2)).sqrt();
            // logistic edge over ~4 pixels
            v += amp / (1.0 + ((d - radius) / 4.0).exp());
        }
        v.round().clamp(0.0, 255.0) as u8
    })
    .expect("256x256 is a valid size")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checks() {
        assert!(GrayImage::new(2, 2, vec![0; 4]).is_ok());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(GrayImage::new(0, 2, vec![]).is_err());
        assert!(GrayImage::filled(usize::MAX, 2, 0).is_err());
    }

    #[test]
    fn row_major_access() {
        let img = GrayImage::from_fn(2, 3, |r, c| (r * 10 + c) as u8).unwrap();
        assert_eq!(img.pixels(), &[0, 1, 2, 10, 11, 12]);
        assert_eq!(img.get(1, 2), 12);
    }

    #[test]
    fn reference_is_stable() {
        let a = reference_image();
        assert_eq!((a.rows(), a.cols()), (256, 256));
        assert_eq!(a, reference_image());
    }
}
