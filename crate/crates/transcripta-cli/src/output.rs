//! Deterministic numeric formatting and exit-code-aware file IO.

use crate::Failure;
use std::io::ErrorKind;
use std::path::Path;

/// Formats with 12 significant digits, plain notation for moderate
/// magnitudes and scientific otherwise, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent: i32 = format!("{x:e}")
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .expect("float scientific form has an exponent");
    if (-4..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.')
        } else {
            &fixed
        };
        if trimmed == "-0" {
            "0".to_string()
        } else {
            trimmed.to_string()
        }
    } else {
        format!("{x:.11e}")
    }
}

/// Rounds to the 12-significant-digit value that [`sig12`] prints, so JSON
/// numbers and CSV cells agree.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().expect("sig12 output is a float literal")
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|err| classify_read(path, err))
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|err| classify_read(path, err))
}

fn classify_read(path: &Path, err: std::io::Error) -> Failure {
    let message = format!("cannot read {}: {err}", path.display());
    if err.kind() == ErrorKind::NotFound {
        Failure::missing(message)
    } else {
        Failure::data(message)
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|err| Failure::data(format!("cannot write {}: {err}", path.display())))
}
