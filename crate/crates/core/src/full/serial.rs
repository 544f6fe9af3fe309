//! JSON form of a full target. The orientation is packed one bit per
//! cross-class pair `u < v` (row-major, least significant bit first, set
//! for `u -> v`) and base64-encoded.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::{Deserialize, Serialize};

use super::{FullError, FullTarget};

pub const VERIFIER_VERSION: &str = concat!("orichrome-verify/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verified: bool,
    pub verifier_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFile {
    pub k: usize,
    pub d: usize,
    #[serde(rename = "N")]
    pub class_size: usize,
    pub seed: Option<u64>,
    pub arcs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

fn cross_pairs(k: usize, class_size: usize) -> impl Iterator<Item = (usize, usize)> {
    let total = k * class_size;
    (0..total).flat_map(move |u| {
        (u + 1..total).filter(move |&v| u / class_size != v / class_size).map(move |v| (u, v))
    })
}

impl TargetFile {
    pub fn from_target(h: &FullTarget) -> Self {
        let pairs: Vec<(usize, usize)> = cross_pairs(h.k(), h.class_size()).collect();
        let mut bytes = vec![0u8; pairs.len().div_ceil(8)];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if h.has_arc(u, v) {
                bytes[i / 8] |= 1 << (i % 8);
            }
        }
        TargetFile {
            k: h.k(),
            d: h.d(),
            class_size: h.class_size(),
            seed: h.seed(),
            arcs: STANDARD.encode(bytes),
            certificate: h
                .is_certified()
                .then(|| Certificate { verified: true, verifier_version: VERIFIER_VERSION.to_string() }),
        }
    }

    /// Decodes the orientation. The result is never marked certified; a
    /// stored certificate must be re-earned by verifying again.
    pub fn to_target(&self) -> Result<FullTarget, FullError> {
        if self.class_size == 0 || self.k == 0 {
            return Err(FullError::InvalidParameters("empty target".into()));
        }
        let bytes = STANDARD
            .decode(&self.arcs)
            .map_err(|e| FullError::InvalidParameters(format!("arcs are not base64: {e}")))?;
        let count = cross_pairs(self.k, self.class_size).count();
        if bytes.len() != count.div_ceil(8) {
            return Err(FullError::InvalidParameters(format!(
                "{} bytes of arcs for {count} cross-class pairs",
                bytes.len()
            )));
        }
        let mut i = 0;
        let h = FullTarget::from_fn(self.k, self.d, self.class_size, |_, _| {
            let b = bytes[i / 8] >> (i % 8) & 1 == 1;
            i += 1;
            b
        });
        Ok(match self.seed {
            Some(s) => h.with_seed(s),
            None => h,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full::{full_orientation_of_size, random_full_candidate, DEFAULT_SEARCH_NODES};

    #[test]
    fn round_trip() {
        let h = random_full_candidate(3, 2, 5, 11);
        let file = TargetFile::from_target(&h);
        assert!(file.certificate.is_none());
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"N\":5"));
        let back: TargetFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_target().unwrap(), h);
    }

    #[test]
    fn certificate_is_written_but_not_trusted() {
        let h = full_orientation_of_size(2, 1, 2, DEFAULT_SEARCH_NODES).unwrap().unwrap();
        let file = TargetFile::from_target(&h);
        assert_eq!(file.certificate.as_ref().map(|c| c.verified), Some(true));
        assert!(!file.to_target().unwrap().is_certified());
    }

    #[test]
    fn rejects_wrong_length() {
        let mut file = TargetFile::from_target(&random_full_candidate(2, 1, 2, 0));
        file.arcs = STANDARD.encode([0u8, 0]);
        assert!(file.to_target().is_err());
    }
}
