//! Golden fixtures: recorded network outputs for fixed inputs, used to check
//! that weights exported elsewhere produce the same numbers here.
//!
//! Text format, one record per line:
//!
//! ```text
//! # comment
//! seed 20240601
//! weights_sha256 <64 hex chars>
//! <hex of a tensor dump> <G> <B>
//! ```

use sha2::{Digest, Sha256};

use super::{forward_raw, NetworkWeights, NnError};
use crate::encoding::MoveTensor;

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenCase {
    pub input: Vec<f32>,
    pub good: f64,
    pub bad: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenFixture {
    pub seed: Option<u64>,
    pub weights_sha256: Option<String>,
    pub cases: Vec<GoldenCase>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GoldenError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Network(#[from] NnError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenReport {
    pub cases: usize,
    pub max_abs_diff: f64,
    pub failures: Vec<usize>,
    /// `None` when the fixture carries no checksum.
    pub checksum_ok: Option<bool>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checksum_ok != Some(false)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl GoldenFixture {
    pub fn parse(text: &str) -> Result<GoldenFixture, GoldenError> {
        let mut fixture = GoldenFixture::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |reason: String| GoldenError::Parse { line: i + 1, reason };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["seed", v] => fixture.seed = Some(v.parse().map_err(|_| err(format!("bad seed {v:?}")))?),
                ["weights_sha256", v] => fixture.weights_sha256 = Some(v.to_ascii_lowercase()),
                [dump, g, b] => {
                    let bytes = hex::decode(dump).map_err(|e| err(format!("bad hex: {e}")))?;
                    let input = MoveTensor::dump_to_floats(&bytes).map_err(|e| err(e.to_string()))?;
                    let good = g.parse().map_err(|_| err(format!("bad G {g:?}")))?;
                    let bad = b.parse().map_err(|_| err(format!("bad B {b:?}")))?;
                    fixture.cases.push(GoldenCase { input, good, bad });
                }
                _ => return Err(err("unrecognised record".into())),
            }
        }
        Ok(fixture)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# golden fixture: tensor-dump-hex G B\n");
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        if let Some(sum) = &self.weights_sha256 {
            out.push_str(&format!("weights_sha256 {sum}\n"));
        }
        for case in &self.cases {
            let mut dump = Vec::with_capacity(7 + case.input.len() * 4);
            dump.extend_from_slice(crate::encoding::DUMP_HEADER);
            for v in &case.input {
                dump.extend_from_slice(&v.to_le_bytes());
            }
            out.push_str(&format!("{} {:.12e} {:.12e}\n", hex::encode(dump), case.good, case.bad));
        }
        out
    }

    /// Runs every case through `weights`. `weights_bytes` is the serialized file
    /// the weights came from, used for the checksum comparison.
    pub fn check(&self, weights: &NetworkWeights, weights_bytes: Option<&[u8]>, tolerance: f64) -> Result<GoldenReport, NnError> {
        let mut max_abs_diff = 0.0f64;
        let mut failures = Vec::new();
        for (i, case) in self.cases.iter().enumerate() {
            let out = forward_raw(weights, &case.input)?;
            let diff = (out.good - case.good).abs().max((out.bad - case.bad).abs());
            max_abs_diff = max_abs_diff.max(diff);
            if diff > tolerance || diff.is_nan() {
                failures.push(i);
            }
        }
        let checksum_ok = match (&self.weights_sha256, weights_bytes) {
            (Some(expected), Some(bytes)) => Some(*expected == sha256_hex(bytes)),
            _ => None,
        };
        Ok(GoldenReport { cases: self.cases.len(), max_abs_diff, failures, checksum_ok })
    }
}
