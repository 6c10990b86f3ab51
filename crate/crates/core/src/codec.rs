//! Ranking codecs: bijections between states and `0..capacity`.
//!
//! All three codecs rank in lexicographic order of the state vector, so the
//! smallest state (identity, sorted vector, zero vector) has rank 0.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Largest degree for the Lehmer codec: 20! < 2^63.
pub const LEHMER_MAX: usize = 20;
/// Largest length for the combinadic codec.
pub const COMBINADIC_MAX: usize = 66;

const FACTORIALS: [u64; 21] = {
    let mut f = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

fn binomials() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let size = COMBINADIC_MAX + 1;
        let mut t = vec![vec![0u64; size]; size];
        for n in 0..size {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 66`; saturates above `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        binomials()[n][k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodecKind {
    Lehmer { n: usize },
    Combinadic { n: usize, k: usize },
    MixedRadix { radices: Vec<u32>, weights: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codec {
    kind: CodecKind,
    capacity: u64,
}

impl Codec {
    pub fn lehmer(n: usize) -> Result<Self> {
        if n == 0 || n > LEHMER_MAX {
            return Err(Error::CapacityOverflow(format!("Lehmer codec supports 1 <= n <= {LEHMER_MAX}, got {n}")));
        }
        Ok(Codec { kind: CodecKind::Lehmer { n }, capacity: FACTORIALS[n] })
    }

    /// Binary vectors of length `n` with exactly `k` ones.
    pub fn combinadic(n: usize, k: usize) -> Result<Self> {
        if n > COMBINADIC_MAX || k > n {
            return Err(Error::CapacityOverflow(format!("combinadic codec needs k <= n <= {COMBINADIC_MAX}")));
        }
        let capacity = binomial(n, k);
        if capacity > i64::MAX as u64 {
            return Err(Error::CapacityOverflow(format!("C({n},{k}) exceeds 2^63")));
        }
        Ok(Codec { kind: CodecKind::Combinadic { n, k }, capacity })
    }

    /// Big-endian positional code: the last coordinate varies fastest.
    pub fn mixed_radix(radices: &[u32]) -> Result<Self> {
        if radices.iter().any(|&r| !(2..=256).contains(&r)) {
            return Err(Error::InvalidParameter("radices must lie in 2..=256".into()));
        }
        let mut weights = vec![1u64; radices.len()];
        let mut acc: u64 = 1;
        for i in (0..radices.len()).rev() {
            weights[i] = acc;
            acc = acc
                .checked_mul(radices[i] as u64)
                .filter(|&c| c <= i64::MAX as u64)
                .ok_or_else(|| Error::CapacityOverflow("mixed-radix capacity exceeds 2^63".into()))?;
        }
        Ok(Codec { kind: CodecKind::MixedRadix { radices: radices.to_vec(), weights }, capacity: acc })
    }

    pub fn kind(&self) -> &CodecKind {
        &self.kind
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn state_len(&self) -> usize {
        match &self.kind {
            CodecKind::Lehmer { n } | CodecKind::Combinadic { n, .. } => *n,
            CodecKind::MixedRadix { radices, .. } => radices.len(),
        }
    }

    /// Validating rank.
    pub fn rank(&self, state: &[u8]) -> Result<u64> {
        self.check(state)?;
        Ok(self.rank_unchecked(state))
    }

    /// Validating unrank.
    pub fn unrank(&self, r: u64) -> Result<Vec<u8>> {
        if r >= self.capacity {
            return Err(Error::RankOutOfRange { rank: r, capacity: self.capacity });
        }
        let mut out = vec![0u8; self.state_len()];
        self.unrank_into(r, &mut out);
        Ok(out)
    }

    fn check(&self, state: &[u8]) -> Result<()> {
        if state.len() != self.state_len() {
            return Err(Error::InvalidState(format!("length {} but codec needs {}", state.len(), self.state_len())));
        }
        match &self.kind {
            CodecKind::Lehmer { n } => {
                let mut seen = 0u32;
                for &v in state {
                    if v as usize >= *n || seen & (1 << v) != 0 {
                        return Err(Error::InvalidState(format!("{state:?} is not a permutation")));
                    }
                    seen |= 1 << v;
                }
            }
            CodecKind::Combinadic { k, .. } => {
                if state.iter().any(|&v| v > 1) || state.iter().filter(|&&v| v == 1).count() != *k {
                    return Err(Error::InvalidState(format!("{state:?} is not a binary vector with {k} ones")));
                }
            }
            CodecKind::MixedRadix { radices, .. } => {
                if state.iter().zip(radices).any(|(&v, &r)| v as u32 >= r) {
                    return Err(Error::InvalidState(format!("{state:?} has a coordinate out of range")));
                }
            }
        }
        Ok(())
    }

    /// Rank of a state already known to be valid.
    #[inline]
    pub fn rank_unchecked(&self, state: &[u8]) -> u64 {
        match &self.kind {
            CodecKind::Lehmer { n } => {
                let mut seen = 0u32;
                let mut r = 0u64;
                for (i, &v) in state.iter().enumerate() {
                    let below = (1u32 << v) - 1;
                    let smaller_unused = v as u32 - (seen & below).count_ones();
                    r += smaller_unused as u64 * FACTORIALS[n - 1 - i];
                    seen |= 1 << v;
                }
                r
            }
            CodecKind::Combinadic { n, k } => {
                let table = binomials();
                let mut ones_left = *k;
                let mut r = 0u64;
                for (i, &v) in state.iter().enumerate() {
                    if ones_left == 0 {
                        break;
                    }
                    if v == 1 {
                        // every vector with a 0 here (same prefix) sorts first
                        r += table[n - 1 - i][ones_left];
                        ones_left -= 1;
                    }
                }
                r
            }
            CodecKind::MixedRadix { weights, .. } => state.iter().zip(weights).map(|(&v, &w)| v as u64 * w).sum(),
        }
    }

    /// Writes the state of rank `r < capacity` into `out`.
    #[inline]
    pub fn unrank_into(&self, mut r: u64, out: &mut [u8]) {
        match &self.kind {
            CodecKind::Lehmer { n } => {
                let n = *n;
                if n <= 16 {
                    // unused values packed as nibbles, ascending
                    let mut list: u64 = 0xFEDC_BA98_7654_3210;
                    for (i, o) in out.iter_mut().enumerate() {
                        let f = FACTORIALS[n - 1 - i];
                        let d = (r / f) as u32;
                        r %= f;
                        let shift = 4 * d;
                        *o = ((list >> shift) & 0xF) as u8;
                        let low = list & ((1u64 << shift) - 1);
                        let high = if shift + 4 >= 64 { 0 } else { (list >> (shift + 4)) << shift };
                        list = low | high;
                    }
                } else {
                    let mut unused: u32 = (1u32 << n) - 1;
                    for (i, o) in out.iter_mut().enumerate() {
                        let f = FACTORIALS[n - 1 - i];
                        let d = r / f;
                        r %= f;
                        let mut m = unused;
                        for _ in 0..d {
                            m &= m - 1;
                        }
                        let v = m.trailing_zeros();
                        *o = v as u8;
                        unused &= !(1 << v);
                    }
                }
            }
            CodecKind::Combinadic { n, k } => {
                let table = binomials();
                let mut ones_left = *k;
                for (i, o) in out.iter_mut().enumerate() {
                    if ones_left == 0 {
                        *o = 0;
                        continue;
                    }
                    let zero_here = table[n - 1 - i][ones_left];
                    if r < zero_here && n - 1 - i >= ones_left {
                        *o = 0;
                    } else {
                        if n - 1 - i >= ones_left {
                            r -= zero_here;
                        }
                        *o = 1;
                        ones_left -= 1;
                    }
                }
            }
            CodecKind::MixedRadix { radices, weights } => {
                for ((o, &w), &rad) in out.iter_mut().zip(weights).zip(radices) {
                    *o = ((r / w) % rad as u64) as u8;
                }
            }
        }
    }
}
