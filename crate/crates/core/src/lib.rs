//! Image stream cipher keyed by the lower bound error between two
//! floating-point pseudo-orbits of the Lorenz system.
//!
//! Two RK4 integrations of the same system differ only in how the
//! y-derivative is parenthesised. Half their absolute difference is the
//! lower bound error; after dropping a transient, each value is turned into
//! a key byte and XORed onto an 8-bit grayscale image.
//!
//! ```
//! use lbe_cipher::{encrypt, GrayImage, KeystreamConfig, LorenzParams, LorenzState};
//!
//! let image = GrayImage::from_fn(4, 4, |r, c| (r * 16 + c) as u8).unwrap();
//! let params = LorenzParams::new(16.0, 45.92, 4.0, 0.01).unwrap();
//! let config = KeystreamConfig::new(4, 4);
//! let cipher = encrypt(&image, &params, LorenzState::default(), &config).unwrap();
//! let plain = encrypt(&cipher, &params, LorenzState::default(), &config).unwrap();
//! assert_eq!(plain, image);
//! ```

pub mod cipher;
pub mod cli;
pub mod config;
pub mod error;
pub mod image;
pub mod keystream;
pub mod lorenz;
pub mod metrics;
pub mod pgm;

pub use cipher::{decrypt, encrypt, xor_apply};
pub use config::{KeySpec, RunConfig};
pub use error::{Error, PgmError, Result};
pub use image::{reference_image, GrayImage};
pub use keystream::{
    extract_bytes, generate_keystream, lower_bound_error, required_iterations, Component,
    Keystream, KeystreamConfig, KeystreamQuality, Normalization,
};
pub use lorenz::{
    derivative, integrate_pair, rk4_step, rk4_step_with, LorenzParams, LorenzState, OrbitPair,
    Variant,
};
pub use metrics::{
    adjacent_correlation, efficiency_index, histogram, shannon_entropy, Direction, Histogram,
    WorkScores,
};
pub use pgm::{read_pgm, write_pgm};
