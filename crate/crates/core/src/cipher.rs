//! XOR stream cipher. Encryption and decryption are the same operation.
//!
//! Anyone holding a plaintext/ciphertext pair recovers the keystream as
//! `plain XOR cipher`, so a key tuple must never be reused across images.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::keystream::{generate_keystream, Keystream, KeystreamConfig};
use crate::lorenz::{LorenzParams, LorenzState};

/// `pixel[i] ^ key[i]` in row-major order.
pub fn xor_apply(image: &GrayImage, key: &Keystream) -> Result<GrayImage> {
    let cfg = key.config();
    if cfg.rows != image.rows() || cfg.cols != image.cols() || key.len() != image.len() {
        return Err(Error::DimensionMismatch {
            image_rows: image.rows(),
            image_cols: image.cols(),
            key_rows: cfg.rows,
            key_cols: cfg.cols,
        });
    }
    let pixels = image
        .pixels()
        .iter()
        .zip(key.bytes())
        .map(|(p, k)| p ^ k)
        .collect();
    GrayImage::new(image.rows(), image.cols(), pixels)
}

/// Generate the keystream for `config` and XOR it onto `image`.
pub fn encrypt(
    image: &GrayImage,
    params: &LorenzParams,
    initial: LorenzState,
    config: &KeystreamConfig,
) -> Result<GrayImage> {
    if config.rows != image.rows() || config.cols != image.cols() {
        return Err(Error::DimensionMismatch {
            image_rows: image.rows(),
            image_cols: image.cols(),
            key_rows: config.rows,
            key_cols: config.cols,
        });
    }
    let key = generate_keystream(params, initial, config)?;
    xor_apply(image, &key)
}

/// Identical to [`encrypt`].
pub fn decrypt(
    image: &GrayImage,
    params: &LorenzParams,
    initial: LorenzState,
    config: &KeystreamConfig,
) -> Result<GrayImage> {
    encrypt(image, params, initial, config)
}
