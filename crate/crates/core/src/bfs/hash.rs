//! Hash-set BFS over explicit state vectors.
//!
//! Undirected graphs keep only the previous and current layers for dedup: a
//! neighbor of layer k lies in layer k-1, k or k+1. Directed graphs keep the full
//! visited set.

use super::{BfsOptions, GrowthResult};
use crate::error::{Error, Result};
use crate::graph::GraphDef;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

type StateSet = FxHashSet<Box<[u8]>>;

const CHUNK: usize = 1024;

/// Rough heap cost of one stored state: the boxed bytes, the box pointer and
/// hash-table slack.
fn bytes_per_state(len: usize) -> u64 {
    (len.max(8) + 16 + 16) as u64
}

struct Layers<'a> {
    def: &'a GraphDef,
    /// Undirected: previous layer. Directed: every visited state.
    seen: StateSet,
    current: StateSet,
}

impl Layers<'_> {
    fn is_known(&self, s: &[u8]) -> bool {
        self.current.contains(s) || self.seen.contains(s)
    }

    fn expand(&self) -> StateSet {
        let frontier: Vec<&Box<[u8]>> = self.current.iter().collect();
        let len = self.def.state_len();
        frontier
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut local = StateSet::default();
                let mut buf = vec![0u8; len];
                for s in chunk {
                    for mv in &self.def.moves {
                        mv.action.apply_into(s, &mut buf);
                        if !self.is_known(&buf) && !local.contains(buf.as_slice()) {
                            local.insert(buf.clone().into_boxed_slice());
                        }
                    }
                }
                local
            })
            .reduce(StateSet::default, |mut a, b| {
                if a.len() < b.len() {
                    return merge(b, a);
                }
                a.extend(b);
                a
            })
    }

    fn has_successor(&self) -> bool {
        let frontier: Vec<&Box<[u8]>> = self.current.iter().collect();
        let len = self.def.state_len();
        frontier.par_chunks(CHUNK).any(|chunk| {
            let mut buf = vec![0u8; len];
            chunk.iter().any(|s| {
                self.def.moves.iter().any(|mv| {
                    mv.action.apply_into(s, &mut buf);
                    !self.is_known(&buf)
                })
            })
        })
    }

    fn advance(&mut self, next: StateSet) {
        let old = std::mem::replace(&mut self.current, next);
        if self.def.directed {
            self.seen.extend(old);
        } else {
            self.seen = old;
        }
    }
}

fn merge(mut big: StateSet, small: StateSet) -> StateSet {
    big.extend(small);
    big
}

fn run(def: &GraphDef, opts: &BfsOptions, target: Option<&[u8]>) -> Result<(GrowthResult, Option<usize>)> {
    let mut layers = Layers { def, seen: StateSet::default(), current: StateSet::default() };
    layers.current.insert(def.start.clone().into_boxed_slice());
    let mut sizes = vec![1u64];
    let mut found = target.filter(|t| *t == def.start.as_slice()).map(|_| 0);
    let per_state = bytes_per_state(def.state_len());
    let mut truncated = false;

    while found.is_none() {
        let depth = sizes.len() - 1;
        if opts.max_depth.is_some_and(|m| depth >= m) {
            truncated = layers.has_successor();
            break;
        }
        let next = layers.expand();
        if next.is_empty() {
            break;
        }
        let held = (layers.seen.len() + layers.current.len() + next.len()) as u64 * per_state;
        if held > opts.memory_budget {
            return Err(Error::BudgetExceeded { budget: opts.memory_budget, depth: depth + 1 });
        }
        sizes.push(next.len() as u64);
        if let Some(t) = target {
            if next.contains(t) {
                found = Some(depth + 1);
            }
        }
        layers.advance(next);
    }

    let mut last: Vec<&Box<[u8]>> = layers.current.iter().collect();
    last.sort_unstable();
    let antipodes = last.iter().take(opts.antipode_cap).map(|s| s.to_vec()).collect();
    Ok((GrowthResult::from_layers(sizes, antipodes, truncated), found))
}

/// Exact growth from `def.start` using hash-set layers.
pub fn growth_hash(def: &GraphDef, opts: &BfsOptions) -> Result<GrowthResult> {
    run(def, opts, None).map(|(g, _)| g)
}

pub(super) fn distance(def: &GraphDef, target: &[u8], opts: &BfsOptions) -> Result<usize> {
    let (g, found) = run(def, opts, Some(target))?;
    found.ok_or(Error::Unreachable { depth: g.diameter })
}
