//! Keystream generation from the lower bound error between two pseudo-orbits.
//!
//! The pipeline is: integrate both extensions for `transient + rows*cols`
//! samples, take `delta[n] = |a[n] - b[n]| / 2` on one state component, drop
//! the first `transient` entries and map each remaining delta to a byte.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorenz::{integrate_pair, LorenzParams, LorenzState, OrbitPair};

/// Samples discarded before key material is taken.
pub const DEFAULT_TRANSIENT: usize = 2000;

/// Upper 0.1% point of the chi-square distribution with 255 degrees of freedom.
pub const CHI_SQUARE_CRITICAL_255: f64 = 330.52;

/// Zero-byte fraction above which a keystream is flagged.
pub const ZERO_FRACTION_WARNING: f64 = 0.02;

/// Highest zero-based iteration index for an image of `rows x cols` pixels:
/// `2000 + rows*cols - 1`. The sample count is one more than this.
pub fn required_iterations(rows: usize, cols: usize) -> Result<usize> {
    if rows == 0 || cols == 0 {
        return Err(Error::Domain(format!(
            "image dimensions must be positive, got {rows}x{cols}"
        )));
    }
    rows.checked_mul(cols)
        .and_then(|n| n.checked_add(DEFAULT_TRANSIENT - 1))
        .ok_or(Error::Overflow { rows, cols })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    X,
    #[default]
    Y,
    Z,
}

impl Component {
    fn of(self, s: &LorenzState) -> f64 {
        match self {
            Component::X => s.x,
            Component::Y => s.y,
            Component::Z => s.z,
        }
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Component::X),
            "y" => Ok(Component::Y),
            "z" => Ok(Component::Z),
            _ => Err(Error::Domain(format!(
                "unknown component {s:?}, expected x, y or z"
            ))),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::X => "x",
            Component::Y => "y",
            Component::Z => "z",
        })
    }
}

/// How a lower-bound-error value is mapped to a byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Low 8 bits of the binary64 significand field.
    #[default]
    MantissaLsb,
    /// `floor((d - min) / (max - min) * 255)` over the retained window.
    MinmaxScale,
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mantissa-lsb" => Ok(Normalization::MantissaLsb),
            "minmax-scale" => Ok(Normalization::MinmaxScale),
            _ => Err(Error::Domain(format!(
                "unknown normalization {s:?}, expected mantissa-lsb or minmax-scale"
            ))),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::MantissaLsb => "mantissa-lsb",
            Normalization::MinmaxScale => "minmax-scale",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeystreamConfig {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "default_transient")]
    pub transient: usize,
    #[serde(default)]
    pub strategy: Normalization,
    #[serde(default)]
    pub component: Component,
}

fn default_transient() -> usize {
    DEFAULT_TRANSIENT
}

impl KeystreamConfig {
    /// Defaults for everything except the dimensions.
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            transient: DEFAULT_TRANSIENT,
            strategy: Normalization::default(),
            component: Component::default(),
        }
    }

    pub fn key_len(&self) -> Result<usize> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Domain(format!(
                "key dimensions must be positive, got {}x{}",
                self.rows, self.cols
            )));
        }
        self.rows.checked_mul(self.cols).ok_or(Error::Overflow {
            rows: self.rows,
            cols: self.cols,
        })
    }

    /// Total number of orbit samples needed: transient plus one per pixel.
    pub fn required_samples(&self) -> Result<usize> {
        self.key_len()?
            .checked_add(self.transient)
            .ok_or(Error::Overflow {
                rows: self.rows,
                cols: self.cols,
            })
    }
}

/// `|a[n] - b[n]| / 2` on the chosen component, for every sample.
pub fn lower_bound_error(pair: &OrbitPair, component: Component) -> Result<Vec<f64>> {
    if pair.is_empty() {
        return Err(Error::Domain("orbit pair is empty".into()));
    }
    pair.samples_a()
        .iter()
        .zip(pair.samples_b())
        .enumerate()
        .map(|(n, (a, b))| {
            let delta = (component.of(a) - component.of(b)).abs() / 2.0;
            if delta.is_finite() {
                Ok(delta)
            } else {
                Err(Error::Domain(format!(
                    "non-finite lower bound error at sample {n}"
                )))
            }
        })
        .collect()
}

const SIGNIFICAND_MASK: u64 = (1 << 52) - 1;

#[inline]
fn mantissa_lsb(delta: f64) -> u8 {
    (delta.to_bits() & SIGNIFICAND_MASK & 0xff) as u8
}

/// Drop the transient, then map `rows*cols` deltas to bytes.
pub fn extract_bytes(delta: &[f64], config: &KeystreamConfig) -> Result<Vec<u8>> {
    let required = config.required_samples()?;
    if delta.len() < required {
        return Err(Error::Length {
            required,
            available: delta.len(),
        });
    }
    let window = &delta[config.transient..required];
    let bytes = match config.strategy {
        Normalization::MantissaLsb => window.iter().map(|&d| mantissa_lsb(d)).collect(),
        Normalization::MinmaxScale => {
            let min = window.iter().copied().fold(f64::INFINITY, f64::min);
            let max = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let span = max - min;
            if span == 0.0 {
                vec![0; window.len()]
            } else {
                window
                    .iter()
                    .map(|&d| ((d - min) / span * 255.0).floor().clamp(0.0, 255.0) as u8)
                    .collect()
            }
        }
    };
    Ok(bytes)
}

/// A generated key together with everything needed to regenerate it.
#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    bytes: Vec<u8>,
    config: KeystreamConfig,
    params: LorenzParams,
    initial: LorenzState,
}

impl Keystream {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn config(&self) -> &KeystreamConfig {
        &self.config
    }

    pub fn params(&self) -> &LorenzParams {
        &self.params
    }

    pub fn initial(&self) -> LorenzState {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// Lowercase hex, row-major, no separators.
    pub fn to_hex(&self) -> String {
        use fmt::Write;
        let mut out = String::with_capacity(self.bytes.len() * 2);
        for b in &self.bytes {
            let _ = write!(out, "{b:02x}");
        }
        out
    }

    pub fn quality(&self) -> KeystreamQuality {
        KeystreamQuality::measure(&self.bytes)
    }
}

/// Cheap byte-level sanity statistics for a keystream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeystreamQuality {
    pub zero_fraction: f64,
    /// Pearson chi-square against a uniform 256-bin histogram.
    pub chi_square: f64,
}

impl KeystreamQuality {
    pub fn measure(bytes: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in bytes {
            counts[b as usize] += 1;
        }
        let n = bytes.len() as f64;
        let expected = n / 256.0;
        let chi_square = if bytes.is_empty() {
            0.0
        } else {
            counts
                .iter()
                .map(|&c| {
                    let d = c as f64 - expected;
                    d * d / expected
                })
                .sum()
        };
        let zero_fraction = if bytes.is_empty() {
            0.0
        } else {
            counts[0] as f64 / n
        };
        Self {
            zero_fraction,
            chi_square,
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.zero_fraction > ZERO_FRACTION_WARNING {
            out.push(format!(
                "{:.2}% of key bytes are zero (lower bound error vanished); the cipher leaks plaintext there",
                self.zero_fraction * 100.0
            ));
        }
        if self.chi_square > CHI_SQUARE_CRITICAL_255 {
            out.push(format!(
                "byte histogram is not uniform: chi-square {:.1} > {CHI_SQUARE_CRITICAL_255}",
                self.chi_square
            ));
        }
        out
    }
}

/// Integrate, take the lower bound error and extract `rows*cols` key bytes.
pub fn generate_keystream(
    params: &LorenzParams,
    initial: LorenzState,
    config: &KeystreamConfig,
) -> Result<Keystream> {
    params.validate()?;
    let samples = config.required_samples()?;
    let pair = integrate_pair(initial, params, samples)?;
    let delta = lower_bound_error(&pair, config.component)?;
    let bytes = extract_bytes(&delta, config)?;
    Ok(Keystream {
        bytes,
        config: *config,
        params: *params,
        initial,
    })
}
