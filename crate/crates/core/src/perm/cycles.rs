use super::Permutation;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// A partition of the degree, parts sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Canonical representative: cycles laid out left to right on `0..n`, longest first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut at = 0;
        for &len in &self.parts {
            for i in 0..len {
                images[at + i] = at + (i + 1) % len;
            }
            at += len;
        }
        Permutation::from_images(&images).expect("valid layout")
    }

    /// Number of permutations with this cycle type: n! / ∏ (k^{m_k} m_k!).
    pub fn class_size(&self) -> u128 {
        let n = self.degree();
        let mut size: u128 = (1..=n as u128).product();
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mut m = 0u128;
            while i < self.parts.len() && self.parts[i] == k {
                m += 1;
                i += 1;
            }
            size /= (k as u128).pow(m as u32);
            size /= (1..=m).product::<u128>();
        }
        size
    }
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first, `[1; n]` last).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One canonical representative per conjugacy class of `S_n`.
pub fn conjugacy_class_reps(n: usize) -> Vec<Permutation> {
    assert!((1..=20).contains(&n), "class enumeration supports 1 <= n <= 20");
    partitions(n).into_iter().map(|p| CycleType::new(p).representative()).collect()
}

/// Parses cycle notation such as `(01)(23)`, `(9,10)` or `(0 1 2)`.
///
/// Cycles are applied left to right, so `(01)(12)` first swaps 0 and 1.
/// A cycle with no comma or whitespace is read one digit per entry.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let mut result = Permutation::identity(n);
    let trimmed = text.trim();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` in `{trimmed}`")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{trimmed}`")))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();

        let entries = parse_cycle_body(body)?;
        if entries.len() <= 1 {
            if let Some(&e) = entries.first() {
                if e >= n {
                    return Err(Error::OutOfRange { entry: e, degree: n });
                }
            }
            continue;
        }
        let cycle = Permutation::cycle(n, &entries)?;
        // left-to-right: the new cycle acts after everything parsed so far
        result = cycle.compose(&result)?;
    }
    Ok(result)
}

fn parse_cycle_body(body: &str) -> Result<Vec<usize>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let separated = body.contains(',') || body.contains(char::is_whitespace);
    if separated {
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
            .collect()
    } else {
        body.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit `{c}`"))))
            .collect()
    }
}

/// Canonical disjoint-cycle form. Cycles whose entries are all single digits are
/// written compactly (`(01)`); others use commas (`(9,10)`). The identity is `()`.
pub fn format_cycles(p: &Permutation) -> String {
    let mut out = String::new();
    for cyc in p.cycles().into_iter().filter(|c| c.len() > 1) {
        out.push('(');
        if cyc.iter().all(|&e| e < 10) {
            for e in &cyc {
                write!(out, "{e}").unwrap();
            }
        } else {
            let parts: Vec<String> = cyc.iter().map(ToString::to_string).collect();
            out.push_str(&parts.join(","));
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
