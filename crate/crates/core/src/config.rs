//! Key material and run configuration.
//!
//! A key file is TOML; every field is optional and falls back to the
//! defaults below:
//!
//! ```toml
//! transient = 2000
//! strategy = "mantissa-lsb"   # or "minmax-scale"
//! component = "y"
//!
//! [params]
//! sigma = 16.0
//! rho = 45.92
//! beta = 4.0
//! h = 1e-6
//!
//! [initial]
//! x = 1.0
//! y = 0.5
//! z = 0.9
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::keystream::{Component, KeystreamConfig, Normalization, DEFAULT_TRANSIENT};
use crate::lorenz::{LorenzParams, LorenzState};

/// Everything that determines a keystream except the image dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KeySpec {
    pub transient: usize,
    pub strategy: Normalization,
    pub component: Component,
    pub params: LorenzParams,
    pub initial: LorenzState,
}

impl Default for KeySpec {
    fn default() -> Self {
        Self {
            params: LorenzParams::default(),
            initial: LorenzState::default(),
            transient: DEFAULT_TRANSIENT,
            strategy: Normalization::default(),
            component: Component::default(),
        }
    }
}

impl KeySpec {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        let spec: KeySpec = toml::from_str(text).map_err(|e| e.to_string())?;
        spec.params.validate().map_err(|e| e.to_string())?;
        if !spec.initial.is_finite() {
            return Err(format!(
                "initial state must be finite, got {:?}",
                spec.initial
            ));
        }
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|message| Error::Parse {
            path: path.to_owned(),
            message,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("key spec serializes")
    }

    pub fn keystream_config(&self, rows: usize, cols: usize) -> KeystreamConfig {
        KeystreamConfig {
            rows,
            cols,
            transient: self.transient,
            strategy: self.strategy,
            component: self.component,
        }
    }
}

/// A fully resolved encrypt/decrypt run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: LorenzParams,
    pub initial: LorenzState,
    pub keystream: KeystreamConfig,
    pub input_path: PathBuf,
    pub output_path: PathBuf,
    pub report_path: Option<PathBuf>,
}

impl RunConfig {
    /// Resolve against an image of `rows x cols`. Explicit key dimensions
    /// must match the image.
    pub fn resolve(
        key: &KeySpec,
        dims: Option<(usize, usize)>,
        image_dims: (usize, usize),
        input_path: PathBuf,
        output_path: PathBuf,
        report_path: Option<PathBuf>,
    ) -> Result<Self> {
        let (rows, cols) = dims.unwrap_or(image_dims);
        if (rows, cols) != image_dims {
            return Err(Error::DimensionMismatch {
                image_rows: image_dims.0,
                image_cols: image_dims.1,
                key_rows: rows,
                key_cols: cols,
            });
        }
        Ok(Self {
            params: key.params,
            initial: key.initial,
            keystream: key.keystream_config(rows, cols),
            input_path,
            output_path,
            report_path,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_uses_defaults() {
        let spec = KeySpec::from_toml(
            "transient = 10\n[params]\nsigma = 16.0\nrho = 45.92\nbeta = 4.0\nh = 0.01\n",
        )
        .unwrap();
        assert_eq!(spec.transient, 10);
        assert_eq!(spec.params.h, 0.01);
        assert_eq!(spec.initial, LorenzState::default());
        assert_eq!(spec.strategy, Normalization::MantissaLsb);
    }

    #[test]
    fn round_trip_and_rejects() {
        let spec = KeySpec {
            strategy: Normalization::MinmaxScale,
            component: Component::Z,
            ..Default::default()
        };
        assert_eq!(KeySpec::from_toml(&spec.to_toml()).unwrap(), spec);
        assert!(KeySpec::from_toml("bogus = 1").is_err());
        assert!(KeySpec::from_toml("[params]\nsigma=1.0\nrho=1.0\nbeta=1.0\nh=-1.0").is_err());
    }

    #[test]
    fn explicit_dims_must_match() {
        let key = KeySpec::default();
        let ok = RunConfig::resolve(&key, None, (4, 5), "a".into(), "b".into(), None).unwrap();
        assert_eq!((ok.keystream.rows, ok.keystream.cols), (4, 5));
        assert!(
            RunConfig::resolve(&key, Some((5, 4)), (4, 5), "a".into(), "b".into(), None).is_err()
        );
    }
}
