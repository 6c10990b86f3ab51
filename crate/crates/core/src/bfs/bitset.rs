use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

/// Fixed-size bitset that many threads may set concurrently.
pub struct AtomicBitset {
    words: Vec<AtomicU64>,
    len: u64,
}

impl AtomicBitset {
    pub fn new(len: u64) -> Self {
        let n_words = len.div_ceil(64) as usize;
        let mut words = Vec::with_capacity(n_words);
        words.resize_with(n_words, || AtomicU64::new(0));
        AtomicBitset { words, len }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bytes(&self) -> usize {
        self.words.len() * 8
    }

    pub fn words(&self) -> &[AtomicU64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize].load(Ordering::Relaxed) & (1 << (i & 63)) != 0
    }

    /// Sets bit `i`; returns true if it was clear.
    #[inline]
    pub fn set(&self, i: u64) -> bool {
        let mask = 1u64 << (i & 63);
        self.words[(i >> 6) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    #[inline]
    pub fn word(&self, w: usize) -> u64 {
        self.words[w].load(Ordering::Relaxed)
    }

    #[inline]
    pub fn store_word(&self, w: usize, v: u64) {
        self.words[w].store(v, Ordering::Relaxed);
    }

    pub fn clear(&self) {
        self.words.par_iter().for_each(|w| w.store(0, Ordering::Relaxed));
    }

    pub fn count(&self) -> u64 {
        self.words.par_iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u64).sum()
    }

    /// `self |= other`.
    pub fn or_assign(&self, other: &AtomicBitset) {
        self.words.par_iter().zip(other.words.par_iter()).for_each(|(a, b)| {
            a.fetch_or(b.load(Ordering::Relaxed), Ordering::Relaxed);
        });
    }

    /// Ascending indices of set bits, at most `cap`.
    pub fn first_ones(&self, cap: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for (w, word) in self.words.iter().enumerate() {
            let mut bits = word.load(Ordering::Relaxed);
            while bits != 0 && out.len() < cap {
                out.push(w as u64 * 64 + bits.trailing_zeros() as u64);
                bits &= bits - 1;
            }
            if out.len() >= cap {
                break;
            }
        }
        out
    }
}
