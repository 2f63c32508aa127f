//! JSON instance documents.
//!
//! ```json
//! { "name": "kC2", "dim": 2,
//!   "irr_h": [{"label": "1", "degree": 1}, ...], "irr_hstar": [...],
//!   "dual_h": [0, 1], "dual_hstar": [0, 1],
//!   "fusion_h": [[i, j, k, n], ...], "fusion_hstar": [...],
//!   "eval": [[[re, im], ...], ...],
//!   "partition_hint": [[0], [1]] }
//! ```
//!
//! Indices are 0-based and index 0 is the unit on both sides. `partition_hint`
//! is optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fusion::FusionRing;
use crate::pair::HopfPair;
use crate::tolerance::Tolerance;
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrEntry {
    pub label: String,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub dim: u64,
    pub irr_h: Vec<IrrEntry>,
    pub irr_hstar: Vec<IrrEntry>,
    pub dual_h: Vec<usize>,
    pub dual_hstar: Vec<usize>,
    pub fusion_h: Vec<[u64; 4]>,
    pub fusion_hstar: Vec<[u64; 4]>,
    pub eval: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition_hint: Option<Vec<Vec<usize>>>,
}

fn ring(irr: &[IrrEntry], dual: &[usize], fusion: &[[u64; 4]]) -> Result<FusionRing> {
    let entries: Vec<_> = fusion
        .iter()
        .map(|q| (q[0] as usize, q[1] as usize, q[2] as usize, q[3]))
        .collect();
    FusionRing::new(
        irr.iter().map(|e| e.label.clone()).collect(),
        irr.iter().map(|e| e.degree).collect(),
        dual.to_vec(),
        &entries,
    )
}

fn irr_entries(ring: &FusionRing) -> Vec<IrrEntry> {
    (0..ring.len())
        .map(|i| IrrEntry {
            label: ring.label(i).to_string(),
            degree: ring.degree(i),
        })
        .collect()
}

fn fusion_entries(ring: &FusionRing) -> Vec<[u64; 4]> {
    ring.entries()
        .map(|(i, j, k, n)| [i as u64, j as u64, k as u64, n])
        .collect()
}

impl InstanceFile {
    pub fn from_pair(pair: &HopfPair) -> Self {
        InstanceFile {
            name: pair.name().to_string(),
            dim: pair.dim(),
            irr_h: irr_entries(pair.ring_h()),
            irr_hstar: irr_entries(pair.ring_hstar()),
            dual_h: pair.ring_h().duals().to_vec(),
            dual_hstar: pair.ring_hstar().duals().to_vec(),
            fusion_h: fusion_entries(pair.ring_h()),
            fusion_hstar: fusion_entries(pair.ring_hstar()),
            eval: pair
                .eval_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|c| [c.re, c.im]).collect())
                .collect(),
            partition_hint: pair.partition_hint().map(|h| h.to_vec()),
        }
    }

    /// Builds and validates the pair described by this document.
    pub fn into_pair(self, tol: Tolerance) -> Result<HopfPair> {
        let ring_h = ring(&self.irr_h, &self.dual_h, &self.fusion_h)?;
        let ring_hstar = ring(&self.irr_hstar, &self.dual_hstar, &self.fusion_hstar)?;
        let eval = self
            .eval
            .iter()
            .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        let pair = HopfPair::validate(self.name, self.dim, ring_h, ring_hstar, eval, tol)?;
        match self.partition_hint {
            Some(hint) => pair.with_partition_hint(hint),
            None => Ok(pair),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}

pub fn parse_pair(text: &str, tol: Tolerance) -> Result<HopfPair> {
    let doc: InstanceFile = serde_json::from_str(text)?;
    doc.into_pair(tol)
}

pub fn load_pair(path: impl AsRef<Path>, tol: Tolerance) -> Result<HopfPair> {
    parse_pair(&fs::read_to_string(path)?, tol)
}

pub fn save_pair(pair: &HopfPair, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, InstanceFile::from_pair(pair).to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const KC2: &str = r#"{
        "name": "kC2", "dim": 2,
        "irr_h": [{"label": "1", "degree": 1}, {"label": "sgn", "degree": 1}],
        "irr_hstar": [{"label": "e", "degree": 1}, {"label": "g", "degree": 1}],
        "dual_h": [0, 1], "dual_hstar": [0, 1],
        "fusion_h": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]],
        "fusion_hstar": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]],
        "eval": [[[1,0],[1,0]],[[1,0],[-1,0]]]
    }"#;

    #[test]
    fn parses_kc2() {
        let p = parse_pair(KC2, Tolerance::default()).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.ring_hstar().label(1), "g");
    }

    #[test]
    fn round_trips_through_json() {
        let p = parse_pair(KC2, Tolerance::default()).unwrap();
        let text = InstanceFile::from_pair(&p).to_json();
        assert_eq!(parse_pair(&text, Tolerance::default()).unwrap(), p);
    }

    #[test]
    fn out_of_range_is_structural() {
        let bad = KC2.replace("[1,1,0,1]]", "[1,1,7,1]]");
        assert!(matches!(
            parse_pair(&bad, Tolerance::default()),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn garbage_is_parse_error() {
        assert!(matches!(
            parse_pair("{\"name\": 3}", Tolerance::default()),
            Err(Error::Parse(_))
        ));
    }
}
