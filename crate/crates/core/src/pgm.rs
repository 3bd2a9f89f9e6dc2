//! Binary PGM (`P5`) codec, 8-bit only.
//! <https://netpbm.sourceforge.net/doc/pgm.html>

use std::path::Path;

use crate::error::{Error, PgmError, Result};
use crate::image::GrayImage;

struct Header {
    width: usize,
    height: usize,
    maxval: u32,
    data_offset: usize,
}

fn skip_whitespace_and_comments(buf: &[u8], mut pos: usize) -> usize {
    while pos < buf.len() {
        match buf[pos] {
            b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c => pos += 1,
            b'#' => {
                while pos < buf.len() && buf[pos] != b'\n' && buf[pos] != b'\r' {
                    pos += 1;
                }
            }
            _ => break,
        }
    }
    pos
}

fn read_number(buf: &[u8], pos: usize, what: &str) -> Result<(u32, usize), PgmError> {
    let start = skip_whitespace_and_comments(buf, pos);
    let mut end = start;
    while end < buf.len() && buf[end].is_ascii_digit() {
        end += 1;
    }
    if start == end {
        return Err(PgmError::MalformedHeader(format!("expected {what}")));
    }
    // the token must be delimited by whitespace or a comment
    if end < buf.len() && !buf[end].is_ascii_whitespace() && buf[end] != b'#' {
        return Err(PgmError::MalformedHeader(format!(
            "{what} is not a decimal integer"
        )));
    }
    let text = std::str::from_utf8(&buf[start..end]).expect("ascii digits");
    let value = text
        .parse::<u32>()
        .map_err(|_| PgmError::MalformedHeader(format!("{what} {text} is out of range")))?;
    Ok((value, end))
}

fn parse_header(buf: &[u8]) -> Result<Header, PgmError> {
    match buf.get(..2) {
        Some(b"P5") => {}
        Some([b'P', d]) if d.is_ascii_digit() => {
            return Err(PgmError::UnsupportedFormat(format!("P{}", *d as char)));
        }
        _ => return Err(PgmError::BadMagic),
    }
    let (width, pos) = read_number(buf, 2, "width")?;
    let (height, pos) = read_number(buf, pos, "height")?;
    let (maxval, pos) = read_number(buf, pos, "maxval")?;
    if width == 0 || height == 0 {
        return Err(PgmError::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval == 0 {
        return Err(PgmError::MalformedHeader("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(PgmError::MaxvalTooLarge(maxval));
    }
    // exactly one whitespace byte separates maxval from the raster
    match buf.get(pos) {
        Some(b) if b.is_ascii_whitespace() => {}
        _ => {
            return Err(PgmError::MalformedHeader(
                "missing whitespace after maxval".into(),
            ))
        }
    }
    Ok(Header {
        width: width as usize,
        height: height as usize,
        maxval,
        data_offset: pos + 1,
    })
}

/// Decode a binary PGM held in memory. Bytes after the first image are ignored.
pub fn decode(buf: &[u8]) -> Result<GrayImage, PgmError> {
    let header = parse_header(buf)?;
    let expected = header
        .width
        .checked_mul(header.height)
        .ok_or_else(|| PgmError::MalformedHeader("image too large".into()))?;
    let raster = &buf[header.data_offset..];
    if raster.len() < expected {
        return Err(PgmError::Truncated {
            expected,
            found: raster.len(),
        });
    }
    let pixels = raster[..expected].to_vec();
    if let Some(&p) = pixels.iter().find(|&&p| u32::from(p) > header.maxval) {
        return Err(PgmError::MalformedHeader(format!(
            "pixel {p} exceeds maxval {}",
            header.maxval
        )));
    }
    Ok(GrayImage::new(header.height, header.width, pixels).expect("dimensions checked"))
}

/// Encode as `P5` with maxval 255.
pub fn encode(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.cols(), image.rows());
    let mut out = Vec::with_capacity(header.len() + image.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let buf = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&buf).map_err(|kind| Error::Pgm {
        path: path.to_owned(),
        kind,
    })
}

pub fn write_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if image.rows() == 0 || image.cols() == 0 {
        return Err(Error::InvalidImage(
            "cannot write an image with a zero dimension".into(),
        ));
    }
    std::fs::write(path, encode(image)).map_err(|e| Error::io(path, e))
}
