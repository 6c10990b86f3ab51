//! Matrix groups over `Z/m`: unitriangular, Heisenberg and abelian.
//!
//! States are residue vectors in a mixed-radix space. Generators act by left
//! multiplication with elementary matrices `I ± E_ij`, specialised to the
//! coordinates they touch.

use crate::bfs::GrowthResult;
use crate::error::{Error, Result};
use crate::graph::{Action, AffineTerm, GraphDef, Move, SpaceJson, StateSpace};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Roots {
    /// Superdiagonal entries `(i, i+1)` only.
    Fundamental,
    /// Every entry above the diagonal.
    Positive,
}

fn check_modulus(m: u32) -> Result<()> {
    if !(2..=256).contains(&m) {
        return Err(Error::InvalidParameter(format!("modulus must lie in 2..=256, got {m}")));
    }
    Ok(())
}

/// Coordinate of entry `(i, j)`, `i < j`, in the row-major above-diagonal layout.
pub fn entry_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Left multiplication by `I + c E_ij`: row `i` gains `c` times row `j`.
fn elementary(n: usize, m: u32, i: usize, j: usize, c: u32) -> Action {
    let mut terms = vec![AffineTerm { target: entry_index(n, i, j), source: None, coef: c }];
    for k in j + 1..n {
        terms.push(AffineTerm { target: entry_index(n, i, k), source: Some(entry_index(n, j, k)), coef: c });
    }
    Action::Affine { modulus: m, terms }
}

/// `U(n, Z/m)` generated by `I ± E_ij` over the chosen roots; `oriented` keeps
/// only the `+` generators.
pub fn unitriangular(n: usize, m: u32, roots: Roots, oriented: bool) -> Result<GraphDef> {
    check_modulus(m)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("unitriangular needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = match roots {
        Roots::Fundamental => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Roots::Positive => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    };
    let mut moves = Vec::new();
    for &(i, j) in &pairs {
        moves.push(Move { label: format!("E{i},{j}"), action: elementary(n, m, i, j, 1) });
        if !oriented {
            moves.push(Move { label: format!("E{i},{j}'"), action: elementary(n, m, i, j, m - 1) });
        }
    }
    let space = StateSpace::MixedRadix { radices: vec![m; n * (n - 1) / 2] };
    let mut def = GraphDef::new(format!("unitriangular_{n}_{m}"), None, space, moves, None, oriented)?;
    def.descriptor = Some(SpaceJson::Unitriangular { n, m, roots, oriented });
    Ok(def)
}

/// `H_{2d+1}(Z/m)` inside `U(d+2, Z/m)`: state `[a_0..a_d-1, b_0..b_d-1, c]` with
/// `a` the top row, `b` the last column and `c` the corner.
pub fn heisenberg(d: usize, m: u32) -> Result<GraphDef> {
    check_modulus(m)?;
    if d < 1 {
        return Err(Error::InvalidParameter("heisenberg needs d >= 1".into()));
    }
    let corner = 2 * d;
    let mut moves = Vec::new();
    for i in 0..d {
        for (suffix, c) in [("", 1), ("'", m - 1)] {
            // I + cE_{0,i+1}: row 0 gains c times row i+1 = (e_{i+1}, b_i)
            let terms = vec![
                AffineTerm { target: i, source: None, coef: c },
                AffineTerm { target: corner, source: Some(d + i), coef: c },
            ];
            moves.push(Move { label: format!("x{i}{suffix}"), action: Action::Affine { modulus: m, terms } });
        }
    }
    for i in 0..d {
        for (suffix, c) in [("", 1), ("'", m - 1)] {
            let terms = vec![AffineTerm { target: d + i, source: None, coef: c }];
            moves.push(Move { label: format!("y{i}{suffix}"), action: Action::Affine { modulus: m, terms } });
        }
    }
    let space = StateSpace::MixedRadix { radices: vec![m; 2 * d + 1] };
    let mut def = GraphDef::new(format!("heisenberg_{d}_{m}"), None, space, moves, None, false)?;
    def.descriptor = Some(SpaceJson::Heisenberg { d, m });
    Ok(def)
}

/// `(Z/m)^n` generated by `±e_i`.
pub fn abelian(n: usize, m: u32) -> Result<GraphDef> {
    check_modulus(m)?;
    if n < 1 {
        return Err(Error::InvalidParameter("abelian needs n >= 1".into()));
    }
    let mut moves = Vec::new();
    for i in 0..n {
        for (suffix, c) in [("", 1), ("'", m - 1)] {
            let terms = vec![AffineTerm { target: i, source: None, coef: c }];
            moves.push(Move { label: format!("e{i}{suffix}"), action: Action::Affine { modulus: m, terms } });
        }
    }
    let space = StateSpace::MixedRadix { radices: vec![m; n] };
    let mut def = GraphDef::new(format!("abelian_{n}_{m}"), None, space, moves, None, false)?;
    def.descriptor = Some(SpaceJson::Abelian { n, m });
    Ok(def)
}

/// Growth of `(Z/m)^n` under `±e_i`, by convolving the one-coordinate profile.
pub fn abelian_growth(n: usize, m: u64) -> Result<GrowthResult> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParameter("abelian_growth needs n, m >= 1".into()));
    }
    let half = (m / 2) as usize;
    let single: Vec<u64> = (0..=half)
        .map(|d| match d {
            0 => 1,
            d if m % 2 == 0 && d == half => 1,
            _ => 2,
        })
        .collect();
    let mut layers = vec![1u64];
    for _ in 0..n {
        let mut next = vec![0u64; layers.len() + single.len() - 1];
        for (i, &a) in layers.iter().enumerate() {
            for (j, &b) in single.iter().enumerate() {
                next[i + j] = next[i + j]
                    .checked_add(a.checked_mul(b).ok_or_else(|| Error::CapacityOverflow("layer count exceeds u64".into()))?)
                    .ok_or_else(|| Error::CapacityOverflow("layer count exceeds u64".into()))?;
            }
        }
        layers = next;
    }
    Ok(GrowthResult::from_layers(layers, Vec::new(), false))
}
