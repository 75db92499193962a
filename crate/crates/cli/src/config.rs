//! Optional JSON config. Command-line flags take precedence.
//!
//! ```json
//! {
//!   "generators": { "field": {"kind": "rational"}, "vars": [], "generators": [[["1","1"],["0","1"]], [["1","0"],["1","1"]]] },
//!   "ring": { "kind": "fp_t", "p": 2 },
//!   "budget": 128,
//!   "n_max": 8,
//!   "samples": 1000,
//!   "cap": 1000000,
//!   "seed": 7
//! }
//! ```

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use resfin::detect::GeneratorFile;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    Integers,
    FpT { p: u64 },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub generators: Option<GeneratorFile>,
    pub ring: Option<RingDescriptor>,
    pub budget: Option<u64>,
    pub n_max: Option<usize>,
    pub samples: Option<usize>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}
