//! Ranked-bitset BFS: three bits per state of the codec's range.
//!
//! `Rotating` keeps the previous, current and next layers and rotates them; it
//! relies on every neighbor of layer k lying in layers k-1..k+1, so it is only
//! valid for undirected graphs. `DirectionOptimizing` keeps a visited set, the
//! frontier and the next layer, and switches between pushing from the frontier
//! and pulling into unvisited states when the frontier is large.

use super::bitset::AtomicBitset;
use super::packed::Packed;
use super::{bitmask_bytes, BfsOptions, GrowthResult};
use crate::codec::Codec;
use crate::error::{Error, Result};
use crate::graph::{Action, AffineTerm, GraphDef};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicBool, Ordering};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BitmaskMode {
    /// Direction-optimizing; pulling pays off on dense generator sets either way.
    #[default]
    Auto,
    Rotating,
    DirectionOptimizing,
}

/// Chooses pull over push for the next layer.
///
/// Pushing costs `f * d` move applications for a frontier of `f` states and `d`
/// moves. Pulling costs `d` tries for every unvisited state that is not in the
/// next layer, and about `next / f` tries for one that is. The next layer size
/// is projected from the last two growth ratios, assuming growth does not
/// speed up.
fn prefer_pull(sizes: &[u64], unvisited: u64, moves: usize) -> bool {
    let [a, b, c] = match sizes {
        [.., a, b, c] => [*a as f64, *b as f64, *c as f64],
        _ => return false,
    };
    let (u, d) = (unvisited as f64, moves as f64);
    let ratio = c / b;
    let projected = ratio * (ratio / (b / a)).min(1.0);
    let next = (c * projected).min(u);
    let pull = (u - next) * d + next * (next / c).clamp(1.0, d);
    pull < c * d
}

/// Words handed to a worker at a time.
const MIN_WORDS: usize = 64;

struct Ctx<'a> {
    codec: &'a Codec,
    forward: Vec<Action>,
    /// Inverse actions, when every move has a computable inverse.
    backward: Option<Vec<Action>>,
    len: usize,
    capacity: u64,
    packed: Option<Packed>,
}

fn invert(action: &Action) -> Option<Action> {
    match action {
        Action::Positions(g) => Some(Action::Positions(g.inverse())),
        Action::Affine { modulus, terms } => {
            // negating is exact only when no term reads a coordinate the move writes
            let writes_source = terms.iter().any(|t| t.source.is_some_and(|s| terms.iter().any(|u| u.target == s)));
            if writes_source {
                return None;
            }
            let terms = terms.iter().map(|t| AffineTerm { coef: (modulus - t.coef % modulus) % modulus, ..t.clone() }).collect();
            Some(Action::Affine { modulus: *modulus, terms })
        }
    }
}

impl<'a> Ctx<'a> {
    fn new(def: &GraphDef, codec: &'a Codec) -> Result<Self> {
        if codec.state_len() != def.state_len() {
            return Err(Error::InvalidParameter("codec does not match the state space".into()));
        }
        let forward: Vec<Action> = def.moves.iter().map(|m| m.action.clone()).collect();
        let backward: Option<Vec<Action>> = forward.iter().map(invert).collect();
        let packed = Packed::new(codec, &forward, backward.as_deref());
        Ok(Ctx { codec, forward, backward, len: def.state_len(), capacity: codec.capacity(), packed })
    }

    fn valid_mask(&self, w: usize) -> u64 {
        let start = w as u64 * 64;
        let remaining = self.capacity - start;
        if remaining >= 64 {
            u64::MAX
        } else {
            (1u64 << remaining) - 1
        }
    }

    fn words(&self) -> usize {
        self.capacity.div_ceil(64) as usize
    }

    /// Calls `f` on the rank of each neighbor of `r` (through the inverse moves
    /// when `backward`) until it returns true.
    #[inline]
    fn neighbors(&self, r: u64, backward: bool, (s, t): &mut (Vec<u8>, Vec<u8>), mut f: impl FnMut(u64) -> bool) {
        self.codec.unrank_into(r, s);
        if let Some(p) = &self.packed {
            let moves = if backward { p.backward.as_ref().expect("pull needs inverses") } else { &p.forward };
            let w = Packed::pack(s);
            for m in moves {
                if f(p.neighbor(m, w)) {
                    return;
                }
            }
            return;
        }
        let actions = if backward { self.backward.as_ref().expect("pull needs inverses") } else { &self.forward };
        for a in actions {
            a.apply_into(s, t);
            if f(self.codec.rank_unchecked(t)) {
                return;
            }
        }
    }

    /// For every state in `frontier`, sets each neighbor `r` with `is_new(r)` in `next`.
    fn push(&self, frontier: &AtomicBitset, next: &AtomicBitset, is_new: impl Fn(u64) -> bool + Sync) {
        (0..self.words()).into_par_iter().with_min_len(MIN_WORDS).for_each_init(
            || (vec![0u8; self.len], vec![0u8; self.len]),
            |scratch, w| {
                let mut bits = frontier.word(w);
                while bits != 0 {
                    let r = w as u64 * 64 + bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    self.neighbors(r, false, scratch, |nr| {
                        if is_new(nr) && !next.get(nr) {
                            next.set(nr);
                        }
                        false
                    });
                }
            },
        );
    }

    /// Sets in `next` every unvisited state with a predecessor in `frontier`.
    fn pull(&self, visited: &AtomicBitset, frontier: &AtomicBitset, next: &AtomicBitset) {
        (0..self.words()).into_par_iter().with_min_len(MIN_WORDS).for_each_init(
            || (vec![0u8; self.len], vec![0u8; self.len]),
            |scratch, w| {
                let mut bits = !visited.word(w) & self.valid_mask(w);
                let mut out = 0u64;
                while bits != 0 {
                    let bit = bits.trailing_zeros();
                    bits &= bits - 1;
                    self.neighbors(w as u64 * 64 + bit as u64, true, scratch, |pr| {
                        let hit = frontier.get(pr);
                        if hit {
                            out |= 1 << bit;
                        }
                        hit
                    });
                }
                next.store_word(w, out);
            },
        );
    }

    /// True if some state in `frontier` has a neighbor with `is_new`.
    fn any_new(&self, frontier: &AtomicBitset, is_new: impl Fn(u64) -> bool + Sync) -> bool {
        let hit = AtomicBool::new(false);
        (0..self.words()).into_par_iter().with_min_len(MIN_WORDS).for_each_init(
            || (vec![0u8; self.len], vec![0u8; self.len]),
            |scratch, w| {
                if hit.load(Ordering::Relaxed) {
                    return;
                }
                let mut bits = frontier.word(w);
                while bits != 0 {
                    let r = w as u64 * 64 + bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    self.neighbors(r, false, scratch, |nr| {
                        let found = is_new(nr);
                        if found {
                            hit.store(true, Ordering::Relaxed);
                        }
                        found
                    });
                    if hit.load(Ordering::Relaxed) {
                        return;
                    }
                }
            },
        );
        hit.into_inner()
    }
}

struct Outcome {
    sizes: Vec<u64>,
    last: AtomicBitset,
    truncated: bool,
    found: Option<usize>,
}

fn run(def: &GraphDef, codec: &Codec, opts: &BfsOptions, target: Option<u64>) -> Result<Outcome> {
    let ctx = Ctx::new(def, codec)?;
    if bitmask_bytes(ctx.capacity) > opts.memory_budget {
        return Err(Error::BudgetExceeded { budget: opts.memory_budget, depth: 0 });
    }
    let mode = match opts.bitmask_mode {
        BitmaskMode::Auto => BitmaskMode::DirectionOptimizing,
        BitmaskMode::Rotating if def.directed => {
            return Err(Error::InvalidParameter("rotating bitsets need an undirected graph".into()));
        }
        m => m,
    };
    let start = codec.rank(&def.start)?;
    let depth_limit = opts.max_depth.unwrap_or(usize::MAX);
    let mut sizes = vec![1u64];
    let mut found = (target == Some(start)).then_some(0);
    let mut truncated = false;

    match mode {
        BitmaskMode::Rotating => {
            let mut prev = AtomicBitset::new(ctx.capacity);
            let mut cur = AtomicBitset::new(ctx.capacity);
            let mut next = AtomicBitset::new(ctx.capacity);
            cur.set(start);
            while found.is_none() {
                let depth = sizes.len() - 1;
                let is_new = |r: u64| !prev.get(r) && !cur.get(r);
                if depth >= depth_limit {
                    truncated = ctx.any_new(&cur, is_new);
                    break;
                }
                ctx.push(&cur, &next, is_new);
                let count = next.count();
                if count == 0 {
                    break;
                }
                sizes.push(count);
                if target.is_some_and(|t| next.get(t)) {
                    found = Some(depth + 1);
                }
                // prev <- cur <- next <- (cleared) prev
                std::mem::swap(&mut prev, &mut cur);
                std::mem::swap(&mut cur, &mut next);
                next.clear();
            }
            Ok(Outcome { sizes, last: cur, truncated, found })
        }
        _ => {
            let visited = AtomicBitset::new(ctx.capacity);
            let mut frontier = AtomicBitset::new(ctx.capacity);
            let mut next = AtomicBitset::new(ctx.capacity);
            visited.set(start);
            frontier.set(start);
            let mut unvisited = ctx.capacity - 1;
            while found.is_none() {
                let depth = sizes.len() - 1;
                let is_new = |r: u64| !visited.get(r);
                if depth >= depth_limit {
                    truncated = ctx.any_new(&frontier, is_new);
                    break;
                }
                if ctx.backward.is_some() && prefer_pull(&sizes, unvisited, ctx.forward.len()) {
                    ctx.pull(&visited, &frontier, &next);
                } else {
                    ctx.push(&frontier, &next, is_new);
                }
                let count = next.count();
                if count == 0 {
                    break;
                }
                sizes.push(count);
                unvisited -= count;
                if target.is_some_and(|t| next.get(t)) {
                    found = Some(depth + 1);
                }
                visited.or_assign(&next);
                std::mem::swap(&mut frontier, &mut next);
                next.clear();
            }
            Ok(Outcome { sizes, last: frontier, truncated, found })
        }
    }
}

/// Exact growth from `def.start` over the codec's rank space.
pub fn growth_bitmask(def: &GraphDef, codec: &Codec, opts: &BfsOptions) -> Result<GrowthResult> {
    let out = run(def, codec, opts, None)?;
    let antipodes = out.last.first_ones(opts.antipode_cap).into_iter().map(|r| codec.unrank(r)).collect::<Result<Vec<_>>>()?;
    Ok(GrowthResult::from_layers(out.sizes, antipodes, out.truncated))
}

pub(super) fn distance(def: &GraphDef, codec: &Codec, target: &[u8], opts: &BfsOptions) -> Result<usize> {
    let t = codec.rank(target)?;
    let out = run(def, codec, opts, Some(t))?;
    out.found.ok_or(Error::Unreachable { depth: out.sizes.len() - 1 })
}
