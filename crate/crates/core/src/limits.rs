//! Size guards for the exponential searches.
//!
//! Every exact search refuses inputs above its guard with
//! [`GuardExceeded`], naming the guard. Guards are plain configuration and
//! can be overridden by name (`set("max_colouring_vertices", 60)`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "{guard} = {limit} refuses input of size {actual} (override with --guard-override {guard}=N)"
)]
pub struct GuardExceeded {
    pub guard: &'static str,
    pub limit: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Exact chromatic number.
    pub max_colouring_vertices: usize,
    /// Clique / independent-set / Ramsey searches.
    pub max_clique_vertices: usize,
    /// Pattern side of induced-subgraph embedding.
    pub max_embedding_pattern: usize,
    /// Pattern side of subdivision detection.
    pub max_subdivision_pattern: usize,
    /// Host side of generic subdivision detection.
    pub max_subdivision_host: usize,
    /// Host side of the role-quotiented `P(a,b)` detection.
    pub max_pattern_host: usize,
    /// `K(s,s)` search and template search.
    pub max_biclique_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_colouring_vertices: 40,
            max_clique_vertices: 4096,
            max_embedding_pattern: 12,
            max_subdivision_pattern: 10,
            max_subdivision_host: 24,
            max_pattern_host: 40,
            max_biclique_vertices: 64,
        }
    }
}

impl Limits {
    pub fn check(guard: &'static str, limit: usize, actual: usize) -> Result<(), GuardExceeded> {
        if actual > limit {
            Err(GuardExceeded {
                guard,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }

    /// Overrides one guard by its field name.
    pub fn set(&mut self, name: &str, value: usize) -> Result<(), String> {
        let slot = match name {
            "max_colouring_vertices" => &mut self.max_colouring_vertices,
            "max_clique_vertices" => &mut self.max_clique_vertices,
            "max_embedding_pattern" => &mut self.max_embedding_pattern,
            "max_subdivision_pattern" => &mut self.max_subdivision_pattern,
            "max_subdivision_host" => &mut self.max_subdivision_host,
            "max_pattern_host" => &mut self.max_pattern_host,
            "max_biclique_vertices" => &mut self.max_biclique_vertices,
            other => return Err(format!("unknown guard `{other}`")),
        };
        *slot = value;
        Ok(())
    }

    /// Parses `name=value`.
    pub fn apply_override(&mut self, spec: &str) -> Result<(), String> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got `{spec}`"))?;
        let value = value
            .trim()
            .parse()
            .map_err(|_| format!("`{value}` is not a count"))?;
        self.set(name.trim(), value)
    }
}
