//! Field snapshots.
//!
//! Binary layout (all little-endian):
//!
//! ```text
//! magic   b"VNLWFLD1"
//! u32     dimension d
//! u32     cutoff M
//! u64     coefficient count (2M+1)^d
//! f64,f64 re, im per coefficient, row-major over (ξ₁, …, ξ_d), ξᵢ from −M to M
//! ```
//!
//! The JSON layout carries the same data:
//! `{"d": .., "M": .., "order": "row-major", "coeffs": [[re, im], ..]}`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FrequencyLattice, SpectralField};
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"VNLWFLD1";

pub fn write_binary<W: Write>(f: &SpectralField, mut w: W) -> Result<()> {
    let lat = f.lattice();
    w.write_all(MAGIC)?;
    w.write_all(&(lat.dim() as u32).to_le_bytes())?;
    w.write_all(&(lat.cutoff() as u32).to_le_bytes())?;
    w.write_all(&(lat.len() as u64).to_le_bytes())?;
    for c in f.coeffs() {
        w.write_all(&c.re.to_le_bytes())?;
        w.write_all(&c.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<SpectralField> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Parse("not a field snapshot".into()));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    let d = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b4)?;
    let m = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    let lat = FrequencyLattice::new(d, m)?;
    if n != lat.len() {
        return Err(Error::Parse(format!("count {n} does not match lattice size {}", lat.len())));
    }
    let mut coeffs = Vec::with_capacity(n);
    for _ in 0..n {
        r.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        coeffs.push(Complex64::new(re, f64::from_le_bytes(b8)));
    }
    SpectralField::from_coeffs(lat, coeffs)
}

#[derive(Serialize, Deserialize)]
struct JsonSnapshot {
    d: usize,
    #[serde(rename = "M")]
    m: usize,
    order: String,
    coeffs: Vec<[f64; 2]>,
}

pub fn to_json(f: &SpectralField) -> Result<String> {
    let snap = JsonSnapshot {
        d: f.lattice().dim(),
        m: f.lattice().cutoff(),
        order: "row-major".into(),
        coeffs: f.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    Ok(serde_json::to_string(&snap)?)
}

pub fn from_json(s: &str) -> Result<SpectralField> {
    let snap: JsonSnapshot = serde_json::from_str(s)?;
    let lat = FrequencyLattice::new(snap.d, snap.m)?;
    SpectralField::from_coeffs(lat, snap.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}
