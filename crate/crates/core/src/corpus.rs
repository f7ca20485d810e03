//! Deterministic lists of ring descriptors for sweeps.

use std::collections::HashSet;
use std::str::FromStr;

use crate::descriptor::RingDescriptor;
use crate::dsl::parse_ring_expr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Orders up to 256.
    Small,
    /// Orders up to 2500.
    Medium,
    /// `Z(m)` for `2 ≤ m ≤ 30`.
    AllCyclic,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Profile::Small),
            "medium" => Ok(Profile::Medium),
            "all-cyclic" => Ok(Profile::AllCyclic),
            _ => Err(Error::InvalidDescriptor(format!("unknown corpus profile {s:?}"))),
        }
    }
}

const SMALL_EXTRA: &[&str] = &[
    "sub(Z(4); 2)",
    "sub(Z(9); 3)",
    "sub(Z(8); 4)",
    "sub(Z(16); 4)",
    "sub(Z(12); 4)",
    "sub(M(2, Z(3)); [[0,1],[0,0]])",
    "sub(M(2, Z(2)); [[1,0],[0,0]])",
    "prod(Z(2), Z(3))",
    "prod(Z(2), Z(2))",
    "prod(Z(3), Z(4))",
    "prod(Z(2), sub(Z(4); 2))",
    "M(2, Z(2))",
    "M(2, Z(3))",
    "M(2, Z(4))",
    "prod(Z(2), M(2, Z(2)))",
];

const MEDIUM_EXTRA: &[&str] = &[
    "M(2, Z(5))",
    "M(2, Z(6))",
    "M(2, Z(7))",
    "prod(Z(3), M(2, Z(3)))",
    "prod(Z(5), Z(7))",
    "prod(Z(6), Z(10))",
    "sub(M(2, Z(3)); [[1,0],[0,0]])",
    "sub(M(2, Z(5)); [[1,0],[0,0]], [[0,0],[0,1]])",
];

fn parse_all(texts: impl IntoIterator<Item = String>) -> Vec<RingDescriptor> {
    texts
        .into_iter()
        .map(|t| parse_ring_expr(&t).expect("corpus entries parse"))
        .collect()
}

/// The descriptors of a profile, duplicate-free by descriptor hash.
pub fn generate_corpus(profile: Profile) -> Vec<RingDescriptor> {
    let cyclic = |hi: u64| (2..=hi).map(|m| format!("Z({m})"));
    let texts: Vec<String> = match profile {
        Profile::AllCyclic => cyclic(30).collect(),
        Profile::Small => cyclic(16).chain(SMALL_EXTRA.iter().map(|s| s.to_string())).collect(),
        Profile::Medium => cyclic(16)
            .chain(SMALL_EXTRA.iter().map(|s| s.to_string()))
            .chain(MEDIUM_EXTRA.iter().map(|s| s.to_string()))
            .collect(),
    };
    let mut seen = HashSet::new();
    parse_all(texts)
        .into_iter()
        .filter(|d| seen.insert(d.hash_hex()))
        .collect()
}
