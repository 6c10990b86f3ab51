//! Random walks, beam search with pluggable scoring, and path verification.

use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::graph::GraphDef;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Estimated distance from a state to a fixed target; 0 at the target, never negative.
pub trait Scorer: Sync {
    fn score(&self, state: &[u8]) -> f64;
}

/// Number of positions where the state differs from the target.
pub struct Hamming {
    target: Vec<u8>,
}

impl Hamming {
    pub fn new(target: &[u8]) -> Self {
        Hamming { target: target.to_vec() }
    }
}

impl Scorer for Hamming {
    fn score(&self, state: &[u8]) -> f64 {
        state.iter().zip(&self.target).filter(|(a, b)| a != b).count() as f64
    }
}

/// Exact distance to the target, tabulated by a backward BFS over the whole
/// rank space. States that cannot reach the target score infinity.
pub struct BfsTable {
    codec: Codec,
    dist: Vec<u32>,
}

impl BfsTable {
    pub const MAX_STATES: u64 = 1 << 24;

    pub fn new(def: &GraphDef, target: &[u8]) -> Result<Self> {
        let codec = def.codec()?;
        let cap = codec.capacity();
        if cap > Self::MAX_STATES {
            return Err(Error::CapExceeded { count: cap, cap: Self::MAX_STATES });
        }
        let t = codec.rank(target)?;
        // reverse adjacency: predecessors of r are the states s with move(s) = r
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); cap as usize];
        let mut s = vec![0u8; codec.state_len()];
        let mut next = vec![0u8; codec.state_len()];
        for r in 0..cap {
            codec.unrank_into(r, &mut s);
            if def.space.validate(&s).is_err() {
                continue;
            }
            for m in &def.moves {
                m.action.apply_into(&s, &mut next);
                preds[codec.rank_unchecked(&next) as usize].push(r as u32);
            }
        }
        let mut dist = vec![u32::MAX; cap as usize];
        dist[t as usize] = 0;
        let mut queue = VecDeque::from([t as u32]);
        while let Some(r) = queue.pop_front() {
            let d = dist[r as usize] + 1;
            for &p in &preds[r as usize] {
                if dist[p as usize] == u32::MAX {
                    dist[p as usize] = d;
                    queue.push_back(p);
                }
            }
        }
        Ok(BfsTable { codec, dist })
    }

    pub fn distance(&self, state: &[u8]) -> Option<u32> {
        let d = self.dist[self.codec.rank(state).ok()? as usize];
        (d != u32::MAX).then_some(d)
    }
}

impl Scorer for BfsTable {
    fn score(&self, state: &[u8]) -> f64 {
        self.distance(state).map_or(f64::INFINITY, f64::from)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub start: Vec<u8>,
    pub moves: Vec<String>,
    pub end: Vec<u8>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn to_json(&self, def: &GraphDef) -> PathJson {
        PathJson {
            start: self.start.clone(),
            moves: self.moves.clone(),
            length: self.moves.len(),
            verified: verify_path(def, self).unwrap_or(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub start: Vec<u8>,
    pub moves: Vec<String>,
    pub length: usize,
    pub verified: bool,
}

/// True iff applying the moves in order takes `start` to `end`.
/// An unknown label is an error rather than `false`.
pub fn verify_path(def: &GraphDef, path: &Path) -> Result<bool> {
    def.space.validate(&path.start)?;
    let mut state = path.start.clone();
    for label in &path.moves {
        let i = def.move_index(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        state = def.apply_move(i, &state);
    }
    Ok(state == path.end)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkRecord {
    pub state: Vec<u8>,
    pub step: usize,
}

/// `n_walks` walks of `length` steps from `def.start`; every visited state is
/// recorded with its step index, so each walk yields `length + 1` records.
pub fn random_walks(def: &GraphDef, n_walks: usize, length: usize, seed: u64, non_backtracking: bool) -> Vec<WalkRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves = def.moves.len();
    let mut out = Vec::with_capacity(n_walks * (length + 1));
    for _ in 0..n_walks {
        let mut state = def.start.clone();
        let mut prev: Option<usize> = None;
        out.push(WalkRecord { state: state.clone(), step: 0 });
        for step in 1..=length {
            let banned = if non_backtracking { prev.and_then(|p| def.inverse_of(p)) } else { None };
            let m = match banned {
                Some(b) if moves > 1 => {
                    let pick = rng.gen_range(0..moves - 1);
                    if pick >= b { pick + 1 } else { pick }
                }
                _ => rng.gen_range(0..moves),
            };
            state = def.apply_move(m, &state);
            prev = Some(m);
            out.push(WalkRecord { state: state.clone(), step });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeamOptions {
    pub width: usize,
    pub max_steps: usize,
}

impl BeamOptions {
    pub fn new(width: usize, max_steps: usize) -> Self {
        BeamOptions { width, max_steps }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Key {
    Rank(u64),
    Bytes(Vec<u8>),
}

struct Node {
    parent: usize,
    mv: usize,
}

/// Beam search from `start` towards `target`, keeping the shortest path over
/// passes of width `width`, `width / 2`, ..., 1.
///
/// A single pass is not monotone in its width: a wider beam marks more states
/// as seen and can cut off the route a narrower beam found. Because the widths
/// tried for `2w` include those tried for `w`, success at `w` implies success
/// at `2w` with a path no longer. The halved passes at most double the work.
/// Failure says nothing about reachability.
pub fn beam_search(def: &GraphDef, start: &[u8], target: &[u8], opts: &BeamOptions, scorer: &dyn Scorer) -> Result<Path> {
    if opts.width == 0 {
        return Err(Error::InvalidParameter("beam width must be at least 1".into()));
    }
    def.space.validate(start)?;
    def.space.validate(target)?;
    let mut best: Option<Path> = None;
    let mut width = opts.width;
    while width > 0 {
        // a shorter path cannot come from more than best.len() - 1 layers
        let steps = best.as_ref().map_or(opts.max_steps, |b| b.len().saturating_sub(1));
        if let Some(p) = beam_pass(def, start, target, width, steps, scorer) {
            best = Some(p);
        }
        width /= 2;
    }
    best.ok_or(Error::SearchBudget)
}

/// One pass: each layer expands every beam entry by every move, drops states
/// seen in an earlier layer, removes duplicates, and keeps the `width` best
/// candidates ordered by (score, rank).
fn beam_pass(def: &GraphDef, start: &[u8], target: &[u8], width: usize, max_steps: usize, scorer: &dyn Scorer) -> Option<Path> {
    let codec = def.codec().ok();
    let key = |s: &[u8]| match &codec {
        Some(c) => Key::Rank(c.rank_unchecked(s)),
        None => Key::Bytes(s.to_vec()),
    };
    let mut nodes = vec![Node { parent: usize::MAX, mv: usize::MAX }];
    let mut beam: Vec<(usize, Vec<u8>)> = vec![(0, start.to_vec())];
    let mut seen: FxHashSet<Key> = FxHashSet::default();
    seen.insert(key(start));
    let mut hit = (start == target).then_some(0);

    let mut steps = 0;
    while hit.is_none() && steps < max_steps && !beam.is_empty() {
        steps += 1;
        let mut cands: Vec<(f64, Key, usize, usize, Vec<u8>)> = beam
            .par_iter()
            .flat_map_iter(|(node, s)| {
                (0..def.moves.len()).map(move |m| {
                    let t = def.apply_move(m, s);
                    (scorer.score(&t), key(&t), *node, m, t)
                })
            })
            .collect();
        cands.retain(|c| !seen.contains(&c.1));
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)).then(a.2.cmp(&b.2)).then(a.3.cmp(&b.3)));
        cands.dedup_by(|a, b| a.1 == b.1);
        if let Some(c) = cands.iter().find(|c| c.4 == target) {
            nodes.push(Node { parent: c.2, mv: c.3 });
            hit = Some(nodes.len() - 1);
            break;
        }
        cands.truncate(width);
        beam.clear();
        for (_, k, parent, mv, t) in cands {
            seen.insert(k);
            nodes.push(Node { parent, mv });
            beam.push((nodes.len() - 1, t));
        }
    }
    let mut at = hit?;
    let mut moves = Vec::new();
    while at != 0 {
        moves.push(def.moves[nodes[at].mv].label.clone());
        at = nodes[at].parent;
    }
    moves.reverse();
    Some(Path { start: start.to_vec(), moves, end: target.to_vec() })
}

/// Exact BFS distances from `def.start` for every reachable state, keyed by state bytes.
pub fn distance_table(def: &GraphDef, cap: usize) -> Result<FxHashMap<Vec<u8>, usize>> {
    let mut dist = FxHashMap::default();
    dist.insert(def.start.clone(), 0);
    let mut queue = VecDeque::from([def.start.clone()]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        for i in 0..def.moves.len() {
            let t = def.apply_move(i, &s);
            if !dist.contains_key(&t) {
                if dist.len() >= cap {
                    return Err(Error::CapExceeded { count: dist.len() as u64 + 1, cap: cap as u64 });
                }
                dist.insert(t.clone(), d + 1);
                queue.push_back(t);
            }
        }
    }
    Ok(dist)
}
