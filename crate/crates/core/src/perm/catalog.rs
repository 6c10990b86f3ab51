//! Named generator families.
//!
//! Every generator is given in one-line form `g` acting on states by
//! `result[i] = state[g[i]]`. Shifts are therefore written so that `L` moves the
//! entry at position 1 to position 0.

use super::{Generator, GeneratorSet, Permutation};
use crate::error::{Error, Result};

/// Family names understood by [`catalog`].
pub const FAMILIES: &[&str] = &[
    "coxeter",
    "cyclic_coxeter",
    "lx",
    "lrx",
    "larx",
    "lsl",
    "pancake",
    "full_reversals",
    "signed_reversals",
    "transposons",
    "consecutive_k_cycles",
    "wrapped_k_cycles",
    "prefix_cycles",
    "down_cycles",
    "increasing_k_cycles",
    "three_cycles",
    "three_cycles_0ij",
    "star",
    "all_transpositions",
    "koltsov3",
    "sheveleva2",
    "rapaport_m1",
    "rapaport_m2",
    "cubic_pancake",
];

/// Optional family parameters. Unused fields are ignored by families that do not
/// take them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    /// Cycle length for the k-cycle families (default 3); `k` for the pattern constructors.
    pub k: Option<usize>,
    /// Transposition span for `koltsov3` type 1.
    pub d: Option<usize>,
    /// `koltsov3` type (1 or 2).
    pub variant: Option<usize>,
    /// Close the set under inverses after construction.
    pub with_inverses: bool,
}

impl FamilyParams {
    pub fn with_k(k: usize) -> Self {
        FamilyParams { k: Some(k), ..Default::default() }
    }

    pub fn inverses(mut self) -> Self {
        self.with_inverses = true;
        self
    }
}

pub fn catalog(name: &str, n: usize, params: &FamilyParams) -> Result<GeneratorSet> {
    let need = |min: usize| -> Result<()> {
        if n < min {
            Err(Error::DegreeTooSmall { family: name.to_string(), n, min })
        } else {
            Ok(())
        }
    };
    let k = params.k.unwrap_or(3);
    let cyc = |c: &[usize]| Permutation::cycle(n, c).expect("in range");
    let labelled = |perms: Vec<Permutation>| GeneratorSet::from_perms(name, perms);

    if n > super::MAX_DEGREE {
        return Err(Error::InvalidParameter(format!("degree {n} exceeds {}", super::MAX_DEGREE)));
    }

    let gs = match name {
        "coxeter" => {
            need(2)?;
            labelled((0..n - 1).map(|i| cyc(&[i, i + 1])).collect())?
        }
        "cyclic_coxeter" => {
            need(3)?;
            let mut perms: Vec<_> = (0..n - 1).map(|i| cyc(&[i, i + 1])).collect();
            perms.push(cyc(&[0, n - 1]));
            labelled(perms)?
        }
        "lx" => {
            need(2)?;
            named(name, n, vec![("L", left_shift(n, 0)), ("X", cyc(&[0, 1]))])?
        }
        "lrx" => {
            need(2)?;
            let l = left_shift(n, 0);
            let r = l.inverse();
            named(name, n, vec![("L", l), ("R", r), ("X", cyc(&[0, 1]))])?
        }
        "larx" => {
            need(3)?;
            named(name, n, vec![("A", left_shift(n, 1)), ("X", cyc(&[0, 1]))])?
        }
        "lsl" => {
            need(3)?;
            named(name, n, vec![("L", left_shift(n, 0)), ("S", left_shift(n, 1))])?
        }
        "pancake" => {
            need(2)?;
            let gens = (2..=n).map(|len| (format!("P{len}"), reversal(n, 0, len - 1))).collect();
            named(name, n, gens)?
        }
        "full_reversals" => {
            need(2)?;
            let mut gens = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    gens.push((format!("R{i}-{j}"), reversal(n, i, j)));
                }
            }
            named(name, n, gens)?
        }
        "signed_reversals" => {
            need(1)?;
            signed_reversals(n)?
        }
        "transposons" => {
            need(2)?;
            let mut gens = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for kk in j + 1..=n {
                        gens.push((format!("T{i}-{j}-{kk}"), block_swap(n, i, j, kk)));
                    }
                }
            }
            named(name, n, gens)?
        }
        "consecutive_k_cycles" => {
            check_k(name, k)?;
            need(k)?;
            labelled((0..=n - k).map(|i| cyc(&(i..i + k).collect::<Vec<_>>())).collect())?
        }
        "wrapped_k_cycles" => {
            check_k(name, k)?;
            need(k + 1)?;
            labelled((0..n).map(|i| cyc(&(0..k).map(|t| (i + t) % n).collect::<Vec<_>>())).collect())?
        }
        "prefix_cycles" => {
            need(2)?;
            labelled((2..=n).map(|len| cyc(&(0..len).collect::<Vec<_>>())).collect())?
        }
        "down_cycles" => {
            need(2)?;
            let mut perms = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    perms.push(cyc(&(i..=j).collect::<Vec<_>>()));
                }
            }
            labelled(perms)?
        }
        "increasing_k_cycles" => {
            check_k(name, k)?;
            need(k)?;
            labelled(combinations(n, k).iter().map(|c| cyc(c)).collect())?
        }
        "three_cycles" => {
            need(3)?;
            let mut perms = Vec::new();
            for c in combinations(n, 3) {
                perms.push(cyc(&c));
                perms.push(cyc(&[c[0], c[2], c[1]]));
            }
            labelled(perms)?
        }
        "three_cycles_0ij" => {
            need(3)?;
            let mut perms = Vec::new();
            for i in 1..n {
                for j in 1..n {
                    if i != j {
                        perms.push(cyc(&[0, i, j]));
                    }
                }
            }
            labelled(perms)?
        }
        "star" => {
            need(2)?;
            labelled((1..n).map(|i| cyc(&[0, i])).collect())?
        }
        "all_transpositions" => {
            need(2)?;
            labelled(combinations(n, 2).iter().map(|c| cyc(c)).collect())?
        }
        "koltsov3" => {
            let variant = params.variant.unwrap_or(2);
            let k = params.k.unwrap_or(0);
            crate::search::koltsov3(n, variant, k, params.d)?
        }
        "sheveleva2" => crate::search::sheveleva2(n, params.k.unwrap_or(1))?,
        "rapaport_m1" | "rapaport_m2" | "cubic_pancake" => return Err(Error::DefinitionPending(name.to_string())),
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };
    Ok(if params.with_inverses { gs.inverse_closure() } else { gs })
}

fn check_k(name: &str, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("{name}: k must be at least 2, got {k}")));
    }
    Ok(())
}

fn named(name: &str, n: usize, gens: Vec<(impl Into<String>, Permutation)>) -> Result<GeneratorSet> {
    let generators = gens.into_iter().map(|(label, perm)| Generator { label: label.into(), perm }).collect();
    GeneratorSet::new(name, n, generators)
}

/// Left cyclic shift of positions `from..n`; positions below `from` stay put.
fn left_shift(n: usize, from: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (p, img) in images.iter_mut().enumerate().skip(from) {
        *img = if p + 1 < n { p + 1 } else { from };
    }
    Permutation::from_images(&images).expect("shift is a bijection")
}

/// Reversal of the segment `[i, j]`.
fn reversal(n: usize, i: usize, j: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for p in i..=j {
        images[p] = i + j - p;
    }
    Permutation::from_images(&images).expect("reversal is a bijection")
}

/// Exchanges the adjacent blocks `[i, j)` and `[j, k)`.
fn block_swap(n: usize, i: usize, j: usize, k: usize) -> Permutation {
    let images: Vec<usize> = (0..i).chain(j..k).chain(i..j).chain(k..n).collect();
    Permutation::from_images(&images).expect("block swap is a bijection")
}

/// Signed reversals on `n` signed elements, encoded on a vector of length `2n`.
///
/// Element at position `p` occupies slots `2p, 2p + 1`; its orientation is the
/// order of the two symbols. Reversing `[i, j]` (with `i == j` allowed, a pure
/// sign flip) moves the pair at `p` to `i + j - p` and swaps it.
fn signed_reversals(n: usize) -> Result<GeneratorSet> {
    let deg = 2 * n;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut images: Vec<usize> = (0..deg).collect();
            for p in i..=j {
                let q = i + j - p;
                images[2 * p] = 2 * q + 1;
                images[2 * p + 1] = 2 * q;
            }
            gens.push((format!("S{i}-{j}"), Permutation::from_images(&images)?));
        }
    }
    named("signed_reversals", deg, gens)
}

/// All increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for t in i + 1..k {
            c[t] = c[t - 1] + 1;
        }
    }
}

/// The Gollan permutation: for the reversal graph it sits at distance n − 1.
pub fn gollan(n: usize) -> Permutation {
    assert!(n >= 2, "gollan needs n >= 2");
    if n == 2 {
        return Permutation::from_images(&[1, 0]).unwrap();
    }
    if n == 3 {
        return Permutation::from_images(&[2, 0, 1]).unwrap();
    }
    // built 1-based, shifted down at the end
    let mut one_based = vec![3, 1];
    if n % 2 == 0 {
        let mut o = 5;
        while o < n {
            one_based.extend([o, o - 3]);
            o += 2;
        }
        one_based.extend([n, n - 2]);
    } else {
        let mut o = 5;
        while o < n - 1 {
            one_based.extend([o, o - 3]);
            o += 2;
        }
        one_based.extend([n, n - 3, n - 1]);
    }
    let images: Vec<usize> = one_based.iter().map(|v| v - 1).collect();
    Permutation::from_images(&images).expect("gollan permutation is a bijection")
}
