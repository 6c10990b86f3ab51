//! Structured generator families with large diameters.

use crate::error::{Error, Result};
use crate::perm::{Generator, GeneratorSet, Permutation};

fn product_of_transpositions(n: usize, pairs: &[(usize, usize)]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for &(a, b) in pairs {
        images.swap(a, b);
    }
    Permutation::from_images(&images).expect("disjoint transpositions")
}

fn labelled(name: String, n: usize, gens: Vec<(&str, Permutation)>) -> Result<GeneratorSet> {
    let generators = gens.into_iter().map(|(l, perm)| Generator { label: l.into(), perm }).collect();
    GeneratorSet::new(name, n, generators)
}

/// Three involutions: `I = (0,1)(2,3)…`, `K = (1,2)(3,4)…` and a third one,
/// `S = (k,k+d)` (variant 1, `d` defaults to 1) or `S = (k,k+3)(k+1,k+2)` (variant 2).
pub fn koltsov3(n: usize, variant: usize, k: usize, d: Option<usize>) -> Result<GeneratorSet> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { family: "koltsov3".into(), n, min: 3 });
    }
    let i: Vec<_> = (0..n - 1).step_by(2).map(|a| (a, a + 1)).collect();
    let kk: Vec<_> = (1..n - 1).step_by(2).map(|a| (a, a + 1)).collect();
    let s = match variant {
        1 => {
            let d = d.unwrap_or(1);
            if d == 0 || k + d >= n {
                return Err(Error::InvalidParameter(format!("koltsov3 type 1 needs 0 < d and k + d < n, got k={k} d={d} n={n}")));
            }
            vec![(k, k + d)]
        }
        2 => {
            if d.is_some() {
                return Err(Error::InvalidParameter("koltsov3 type 2 takes no d".into()));
            }
            if k + 3 >= n {
                return Err(Error::InvalidParameter(format!("koltsov3 type 2 needs k + 3 < n, got k={k} n={n}")));
            }
            vec![(k, k + 3), (k + 1, k + 2)]
        }
        v => return Err(Error::InvalidParameter(format!("koltsov3 type must be 1 or 2, got {v}"))),
    };
    let name = match variant {
        1 => format!("koltsov3_t1_n{n}_k{k}_d{}", d.unwrap_or(1)),
        _ => format!("koltsov3_t2_n{n}_k{k}"),
    };
    labelled(
        name,
        n,
        vec![
            ("I", product_of_transpositions(n, &i)),
            ("K", product_of_transpositions(n, &kk)),
            ("S", product_of_transpositions(n, &s)),
        ],
    )
}

/// Two generators: an involution `A` and a permutation `S` holding one 4-cycle.
///
/// Adjacent transpositions `(i,i+1)` are handed out A, S, A, S, … by ascending
/// `i`. The 4-cycle always takes a turn of `S`: it goes at the first corner
/// `c >= k-1` reached on S's turn (so `c = k-1` for even `k`, `c = k` for odd
/// `k`), is oriented `(c, c+1, c+3, c+2)` so that the path enters and leaves
/// at opposite corners, and the alternation resumes with A at `(c+3, c+4)`.
/// The orientation and corner rule are the ones that reproduce the directed
/// diameters 44 at (8, 2) and 61 at (9, 3).
pub fn sheveleva2(n: usize, k: usize) -> Result<GeneratorSet> {
    if n < 4 {
        return Err(Error::DegreeTooSmall { family: "sheveleva2".into(), n, min: 4 });
    }
    let corner = if k % 2 == 0 { k.wrapping_sub(1) } else { k };
    if k == 0 || k + 3 > n || corner + 3 >= n {
        return Err(Error::InvalidParameter(format!("sheveleva2 needs 1 <= k <= n-3 with room for the square, got k={k} n={n}")));
    }
    let mut a = Vec::new();
    let mut s = Vec::new();
    for i in (0..corner).chain(corner + 3..n - 1) {
        // A owns the even edges before the square and the even offsets after it
        let to_a = if i < corner { i % 2 == 0 } else { (i - corner - 3) % 2 == 0 };
        if to_a { a.push((i, i + 1)) } else { s.push((i, i + 1)) }
    }
    let a = product_of_transpositions(n, &a);
    let square = Permutation::cycle(n, &[corner, corner + 1, corner + 3, corner + 2])?;
    let s = square.compose(&product_of_transpositions(n, &s))?;
    labelled(format!("sheveleva2_n{n}_k{k}"), n, vec![("A", a), ("S", s)])
}
