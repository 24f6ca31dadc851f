//! Acceptance bands, read from `acceptance.toml`.

use serde::Deserialize;

pub const DEFAULT_CONFIG: &str = include_str!("../acceptance.toml");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub expected_failures: Vec<u32>,
    pub exactness: Exactness,
    pub load_bound: LoadBound,
    pub weight: Weight,
    pub density: Density,
    pub identity: Identity,
    pub queries: Queries,
    pub densest: Densest,
    pub finder: Finder,
    pub representation: Representation,
    pub runtime: Runtime,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Exactness {
    pub graph_sizes: Vec<usize>,
    pub large_n: usize,
    pub digraph_sizes: Vec<usize>,
    pub hyper_sizes: Vec<usize>,
    pub hyper_edges: f64,
    pub min_instances: usize,
    pub max_seconds: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadBound {
    pub sizes: Vec<usize>,
    pub part_sizes: Vec<usize>,
    pub densities: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weight {
    pub sizes: Vec<usize>,
    pub band: [f64; 2],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Density {
    pub n: usize,
    pub gammas: Vec<f64>,
    pub band: [f64; 2],
    pub beat_gammas: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identity {
    pub max_d: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Queries {
    pub max_exhaustive_n: usize,
    pub samples: usize,
    pub max_n: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Densest {
    pub max_n: usize,
    pub per_size: usize,
    pub alphas: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Finder {
    pub runs: usize,
    pub max_run_n: usize,
    pub n: usize,
    pub gamma: f64,
    pub floor: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Representation {
    pub graphs: usize,
    pub max_n: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Runtime {
    pub ep_n: usize,
    pub ep_band: [f64; 2],
    pub density_n: usize,
    pub density_gamma: f64,
    pub density_tolerance: f64,
    pub densest_n: usize,
    pub densest_alpha: f64,
    pub densest_tolerance: f64,
    pub repeats: usize,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

impl Default for Config {
    fn default() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("checked-in acceptance.toml parses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_in_config_parses() {
        let c = Config::default();
        assert_eq!(c.weight.band, [0.50, 0.85]);
        assert_eq!(c.density.band, [0.35, 0.80]);
        assert!(Config::parse("seed = 1").is_err());
    }
}
