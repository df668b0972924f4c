//! Plain-text spectrum files.
//!
//! ```text
//! # kind=cross_section_m2
//! 700,1.25e-24
//! 700.5,1.19e-24
//! ```
//!
//! Wavelengths are in nanometers and must be strictly increasing. Blank lines and
//! further `#` comment lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::{Spectrum, SpectrumKind};

pub fn parse_spectrum(text: &str, source_name: &str) -> Result<Spectrum> {
    let mut kind = None;
    let mut wavelengths = Vec::new();
    let mut values = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if kind.is_none() {
                let tag = comment.trim().strip_prefix("kind=").ok_or_else(|| {
                    Error::parse(
                        source_name,
                        line_no,
                        "expected header '# kind=<cross_section_m2|intensity_arb>'",
                    )
                })?;
                kind = Some(SpectrumKind::from_tag(tag.trim()).ok_or_else(|| {
                    Error::parse(source_name, line_no, format!("unknown spectrum kind '{}'", tag.trim()))
                })?);
            }
            continue;
        }
        if kind.is_none() {
            return Err(Error::parse(source_name, line_no, "data before the '# kind=' header"));
        }

        let (w, v) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(source_name, line_no, "expected '<wavelength_nm>,<value>'"))?;
        let w: f64 = w
            .trim()
            .parse()
            .map_err(|_| Error::parse(source_name, line_no, format!("bad wavelength '{}'", w.trim())))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::parse(source_name, line_no, format!("bad value '{}'", v.trim())))?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::parse(source_name, line_no, "wavelength must be positive"));
        }
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::parse(
                source_name,
                line_no,
                "value must be finite and non-negative",
            ));
        }
        let w = w / 1e9;
        if let Some(&prev) = wavelengths.last() {
            if w <= prev {
                return Err(Error::parse(
                    source_name,
                    line_no,
                    "wavelengths must be strictly increasing",
                ));
            }
        }
        wavelengths.push(w);
        values.push(v);
    }

    let kind = kind.ok_or_else(|| Error::parse(source_name, last_line.max(1), "missing '# kind=' header"))?;
    if wavelengths.len() < 2 {
        return Err(Error::parse(
            source_name,
            last_line.max(1),
            "a spectrum needs at least two samples",
        ));
    }
    Spectrum::new(wavelengths, values, kind)
}

pub fn read_spectrum(path: impl AsRef<Path>) -> Result<Spectrum> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
    parse_spectrum(&text, &path.display().to_string())
}

pub fn render_spectrum(s: &Spectrum) -> String {
    let mut out = format!("# kind={}\n", s.kind().tag());
    for (w, v) in s.wavelengths().iter().zip(s.values()) {
        let _ = writeln!(out, "{},{:e}", w * 1e9, v);
    }
    out
}

pub fn write_spectrum(path: impl AsRef<Path>, s: &Spectrum) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_spectrum(s)).map_err(|e| Error::io(path.display(), e))
}
