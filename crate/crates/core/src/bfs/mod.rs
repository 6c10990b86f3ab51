//! Layered breadth-first growth computation.
//!
//! Two engines produce the same [`GrowthResult`]: a hash-set engine that works on
//! any state space, and a ranked-bitset engine that needs a [`Codec`] but spends
//! only three bits per state.

mod bitmask;
mod bitset;
mod packed;
mod hash;

pub use bitmask::{growth_bitmask, BitmaskMode};
pub use bitset::AtomicBitset;
pub use hash::growth_hash;

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::graph::GraphDef;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

pub const DEFAULT_ANTIPODE_CAP: usize = 16;
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;
pub const DEFAULT_NODE_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthResult {
    pub layer_sizes: Vec<u64>,
    pub diameter: usize,
    pub reachable: u64,
    /// Up to the configured cap of final-layer states, in rank (lexicographic) order.
    pub antipodes: Vec<Vec<u8>>,
    /// Exact size of the final layer.
    pub antipode_count: u64,
    pub truncated: bool,
}

impl GrowthResult {
    pub fn from_layers(layer_sizes: Vec<u64>, antipodes: Vec<Vec<u8>>, truncated: bool) -> Self {
        let reachable = layer_sizes.iter().sum();
        let antipode_count = *layer_sizes.last().unwrap_or(&0);
        GrowthResult { diameter: layer_sizes.len().saturating_sub(1), reachable, antipodes, antipode_count, layer_sizes, truncated }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOptions {
    pub max_depth: Option<usize>,
    pub memory_budget: u64,
    pub antipode_cap: usize,
    pub bitmask_mode: BitmaskMode,
}

impl Default for BfsOptions {
    fn default() -> Self {
        BfsOptions { max_depth: None, memory_budget: DEFAULT_MEMORY_BUDGET, antipode_cap: DEFAULT_ANTIPODE_CAP, bitmask_mode: BitmaskMode::Auto }
    }
}

impl BfsOptions {
    pub fn max_depth(mut self, d: usize) -> Self {
        self.max_depth = Some(d);
        self
    }

    pub fn antipode_cap(mut self, cap: usize) -> Self {
        self.antipode_cap = cap;
        self
    }

    pub fn mode(mut self, mode: BitmaskMode) -> Self {
        self.bitmask_mode = mode;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Hash,
    Bitmask,
}

/// Bytes the bitmask engine allocates for its three bitsets.
pub fn bitmask_bytes(capacity: u64) -> u64 {
    3 * capacity.div_ceil(64) * 8
}

/// Picks the bitmask engine when a codec exists and its bitsets fit the budget.
pub fn choose_engine(def: &GraphDef, budget: u64) -> (Engine, Option<Codec>) {
    match def.codec() {
        Ok(codec) if bitmask_bytes(codec.capacity()) <= budget => (Engine::Bitmask, Some(codec)),
        _ => (Engine::Hash, None),
    }
}

/// Growth with automatic engine choice.
pub fn growth(def: &GraphDef, opts: &BfsOptions) -> Result<(GrowthResult, Engine)> {
    match choose_engine(def, opts.memory_budget) {
        (Engine::Bitmask, Some(codec)) => Ok((growth_bitmask(def, &codec, opts)?, Engine::Bitmask)),
        _ => Ok((growth_hash(def, opts)?, Engine::Hash)),
    }
}

/// Up to `cap` final-layer states, plus the exact final-layer count.
pub fn antipodes(def: &GraphDef, codec: Option<&Codec>, cap: usize) -> Result<(Vec<Vec<u8>>, u64)> {
    let opts = BfsOptions::default().antipode_cap(cap);
    let g = match codec {
        Some(c) => growth_bitmask(def, c, &opts)?,
        None => growth_hash(def, &opts)?,
    };
    Ok((g.antipodes, g.antipode_count))
}

/// BFS distance from `def.start` to `target`.
pub fn distance(def: &GraphDef, codec: Option<&Codec>, target: &[u8], opts: &BfsOptions) -> Result<usize> {
    def.space.validate(target)?;
    match codec {
        Some(c) => bitmask::distance(def, c, target, opts),
        None => hash::distance(def, target, opts),
    }
}

/// 0/1 adjacency over the reachable states, indexed in lexicographic state order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub states: Vec<Vec<u8>>,
    /// Sorted, deduplicated `(row, column)` pairs with a 1 entry.
    pub entries: Vec<(usize, usize)>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries.binary_search(&(i, j)).is_ok()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.size()]; self.size()];
        for &(i, j) in &self.entries {
            m[i][j] = 1;
        }
        m
    }

    pub fn row_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.size()];
        for &(i, _) in &self.entries {
            sums[i] += 1;
        }
        sums
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|&(i, j)| self.get(j, i))
    }

    /// Matrix Market coordinate pattern format, 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate pattern general\n");
        writeln!(out, "{} {} {}", self.size(), self.size(), self.entries.len()).unwrap();
        for &(i, j) in &self.entries {
            writeln!(out, "{} {}", i + 1, j + 1).unwrap();
        }
        out
    }
}

pub fn adjacency_matrix(def: &GraphDef, node_cap: usize) -> Result<AdjacencyMatrix> {
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut queue = vec![def.start.clone()];
    seen.insert(def.start.clone(), ());
    while let Some(s) = queue.pop() {
        for (_, nb) in def.neighbors(&s) {
            if !seen.contains_key(&nb) {
                if seen.len() >= node_cap {
                    return Err(Error::CapExceeded { count: seen.len() as u64 + 1, cap: node_cap as u64 });
                }
                seen.insert(nb.clone(), ());
                queue.push(nb);
            }
        }
    }
    let mut states: Vec<Vec<u8>> = seen.into_keys().collect();
    states.sort();
    let index: HashMap<&[u8], usize> = states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut entries = Vec::new();
    for (i, s) in states.iter().enumerate() {
        for (_, nb) in def.neighbors(s) {
            entries.push((i, index[nb.as_slice()]));
        }
    }
    entries.sort_unstable();
    entries.dedup();
    Ok(AdjacencyMatrix { states, entries })
}

/// `layer,count` CSV.
pub fn growth_csv(g: &GrowthResult) -> String {
    let mut out = String::from("layer,count\n");
    for (i, c) in g.layer_sizes.iter().enumerate() {
        writeln!(out, "{i},{c}").unwrap();
    }
    out
}
