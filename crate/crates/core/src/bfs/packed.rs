//! Binary coset states packed into a `u64`, bit `i` holding `state[i]`.
//!
//! A permutation move becomes a few masked shifts of the word or of its bit
//! reversal, and the combinadic rank walks the set bits only.

use crate::codec::{binomial, Codec, CodecKind};
use crate::graph::Action;
use rustc_hash::FxHashMap;

#[derive(Clone, Copy, Debug)]
struct Part {
    mask: u64,
    /// Right shift when positive, left shift when negative.
    shift: i32,
    reversed: bool,
}

#[derive(Clone, Debug)]
pub(super) struct PackedMove {
    parts: Vec<Part>,
}

impl PackedMove {
    fn new(images: &[u8]) -> Self {
        // t[i] = s[g[i]] is bit i of s >> (g[i] - i), or of rev(s) >> (63 - g[i] - i)
        let direct = |i: usize| images[i] as i32 - i as i32;
        let reversed = |i: usize| 63 - images[i] as i32 - i as i32;
        let mut direct_count: FxHashMap<i32, usize> = FxHashMap::default();
        let mut reversed_count: FxHashMap<i32, usize> = FxHashMap::default();
        for i in 0..images.len() {
            *direct_count.entry(direct(i)).or_default() += 1;
            *reversed_count.entry(reversed(i)).or_default() += 1;
        }
        let mut parts: Vec<Part> = Vec::new();
        for i in 0..images.len() {
            let use_rev = reversed_count[&reversed(i)] > direct_count[&direct(i)];
            let shift = if use_rev { reversed(i) } else { direct(i) };
            match parts.iter_mut().find(|p| p.reversed == use_rev && p.shift == shift) {
                Some(p) => p.mask |= 1 << i,
                None => parts.push(Part { mask: 1 << i, shift, reversed: use_rev }),
            }
        }
        PackedMove { parts }
    }

    #[inline]
    fn apply(&self, s: u64, rev: u64) -> u64 {
        let mut t = 0;
        for p in &self.parts {
            let src = if p.reversed { rev } else { s };
            let moved = if p.shift >= 0 { src >> p.shift } else { src << -p.shift };
            t |= moved & p.mask;
        }
        t
    }
}

pub(super) struct Packed {
    n: usize,
    k: usize,
    /// `binom[(n - 1 - i) * (k + 1) + left]`
    binom: Vec<u64>,
    pub forward: Vec<PackedMove>,
    pub backward: Option<Vec<PackedMove>>,
}

impl Packed {
    /// Available for two-symbol coset codecs on at most 64 positions with pure
    /// position moves.
    pub fn new(codec: &Codec, forward: &[Action], backward: Option<&[Action]>) -> Option<Self> {
        let CodecKind::Combinadic { n, k } = *codec.kind() else { return None };
        if n > 64 {
            return None;
        }
        let pack = |actions: &[Action]| -> Option<Vec<PackedMove>> {
            actions
                .iter()
                .map(|a| match a {
                    Action::Positions(g) => Some(PackedMove::new(g.images())),
                    Action::Affine { .. } => None,
                })
                .collect()
        };
        let forward = pack(forward)?;
        let backward = backward.and_then(pack);
        let binom = (0..n).flat_map(|rest| (0..=k).map(move |left| binomial(rest, left))).collect();
        Some(Packed { n, k, binom, forward, backward })
    }

    pub fn pack(state: &[u8]) -> u64 {
        state.iter().enumerate().fold(0, |w, (i, &v)| w | (v as u64) << i)
    }

    #[inline]
    pub fn rank(&self, mut w: u64) -> u64 {
        let mut left = self.k;
        let mut r = 0;
        while w != 0 {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            r += self.binom[(self.n - 1 - i) * (self.k + 1) + left];
            left -= 1;
        }
        r
    }

    #[inline]
    pub fn neighbor(&self, m: &PackedMove, s: u64) -> u64 {
        self.rank(m.apply(s, s.reverse_bits()))
    }
}
