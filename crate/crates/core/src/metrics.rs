//! Cipher quality measures: adjacent-pixel correlation, Shannon entropy,
//! intensity histogram and the cross-work efficiency index.
//!
//! Every reduction runs in a fixed, sequential order so results are
//! bit-stable across runs and platforms with IEEE-754 binary64.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    /// Row and column step to the neighbour.
    pub fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horizontal" | "h" => Ok(Direction::Horizontal),
            "vertical" | "v" => Ok(Direction::Vertical),
            "diagonal" | "d" => Ok(Direction::Diagonal),
            _ => Err(Error::Domain(format!("unknown direction {s:?}"))),
        }
    }
}

/// Pearson correlation with population moments. Fails on a constant series.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    assert_eq!(xs.len(), ys.len(), "series must have equal length");
    if xs.is_empty() {
        return Err(Error::Domain("correlation needs at least one pair".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::UndefinedCorrelation("pixel"));
    }
    if syy == 0.0 {
        return Err(Error::UndefinedCorrelation("neighbour"));
    }
    let cov = sxy / n;
    let r = cov / ((sxx / n).sqrt() * (syy / n).sqrt());
    Ok(r.clamp(-1.0, 1.0))
}

/// All `(pixel, neighbour)` pairs of `image` in `dir`, scanned row-major.
pub fn adjacent_pairs(image: &GrayImage, dir: Direction) -> (Vec<f64>, Vec<f64>) {
    let (dr, dc) = dir.offset();
    let rows = image.rows().saturating_sub(dr);
    let cols = image.cols().saturating_sub(dc);
    let mut xs = Vec::with_capacity(rows * cols);
    let mut ys = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            xs.push(image.get(r, c) as f64);
            ys.push(image.get(r + dr, c + dc) as f64);
        }
    }
    (xs, ys)
}

/// Correlation coefficient between each pixel and its neighbour in `dir`,
/// over every adjacent pair in the image.
pub fn adjacent_correlation(image: &GrayImage, dir: Direction) -> Result<f64> {
    let (xs, ys) = adjacent_pairs(image, dir);
    if xs.len() < 2 {
        return Err(Error::Domain(format!(
            "{}x{} image has fewer than two {dir} pairs",
            image.rows(),
            image.cols()
        )));
    }
    pearson(&xs, &ys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; 256],
}

impl Histogram {
    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn min(&self) -> u64 {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    /// Ratio of the fullest to the emptiest bin; infinite when a level is missing.
    pub fn max_min_ratio(&self) -> f64 {
        match self.min() {
            0 => f64::INFINITY,
            m => self.max() as f64 / m as f64,
        }
    }
}

pub fn histogram(image: &GrayImage) -> Histogram {
    let mut counts = [0u64; 256];
    for &p in image.pixels() {
        counts[p as usize] += 1;
    }
    Histogram { counts }
}

/// Shannon entropy in bits per pixel, `sum P_i log2(1/P_i)`.
pub fn shannon_entropy(image: &GrayImage) -> f64 {
    let hist = histogram(image);
    let n = image.len() as f64;
    hist.counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * (1.0 / p).log2()
        })
        .sum()
}

/// Correlation and entropy results for one cipher, as listed in a comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkScores {
    pub label: String,
    pub corr_h: f64,
    pub corr_v: f64,
    pub corr_d: f64,
    pub entropy: f64,
}

impl WorkScores {
    pub fn measure(label: impl Into<String>, image: &GrayImage) -> Result<Self> {
        Ok(Self {
            label: label.into(),
            corr_h: adjacent_correlation(image, Direction::Horizontal)?,
            corr_v: adjacent_correlation(image, Direction::Vertical)?,
            corr_d: adjacent_correlation(image, Direction::Diagonal)?,
            entropy: shannon_entropy(image),
        })
    }

    fn correlations(&self) -> [(&'static str, f64); 3] {
        [
            ("horizontal correlation", self.corr_h),
            ("vertical correlation", self.corr_v),
            ("diagonal correlation", self.corr_d),
        ]
    }
}

/// Efficiency index of each work relative to the best value in every category.
///
/// Correlations: ratio `min|V| / |V|` (closer to zero is better).
/// Entropy: ratio `V / max V`. The index is the mean of the four ratios.
pub fn efficiency_index(scores: &[WorkScores]) -> Result<Vec<f64>> {
    if scores.is_empty() {
        return Err(Error::Domain(
            "efficiency index needs at least one work".into(),
        ));
    }
    for w in scores {
        for (category, v) in w.correlations() {
            if !v.is_finite() || v == 0.0 {
                return Err(Error::ZeroScore {
                    label: w.label.clone(),
                    category,
                });
            }
        }
        if !w.entropy.is_finite() || w.entropy <= 0.0 {
            return Err(Error::ZeroScore {
                label: w.label.clone(),
                category: "entropy",
            });
        }
    }
    let mut best_corr = [f64::INFINITY; 3];
    let mut best_entropy = 0.0f64;
    for w in scores {
        for (best, (_, v)) in best_corr.iter_mut().zip(w.correlations()) {
            *best = best.min(v.abs());
        }
        best_entropy = best_entropy.max(w.entropy);
    }
    Ok(scores
        .iter()
        .map(|w| {
            let [h, v, d] = w.correlations().map(|(_, v)| v.abs());
            let ratios = [
                best_corr[0] / h,
                best_corr[1] / v,
                best_corr[2] / d,
                w.entropy / best_entropy,
            ];
            ratios.iter().sum::<f64>() / 4.0
        })
        .collect())
}
