//! Exact quasi-polynomial fitting: `f(n) = p_{n mod s}(n)`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub s: usize,
    /// Coefficients per residue class, ascending powers of `n`.
    pub constituents: Vec<Vec<BigRational>>,
    pub domain_min: i64,
    /// Points checked beyond those used for interpolation.
    pub verified_points: usize,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Coefficients (ascending) of the polynomial through `points`, by solving the
/// Vandermonde system with exact Gaussian elimination.
pub fn interpolate(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let k = points.len();
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|(x, y)| {
            let mut row: Vec<BigRational> = Vec::with_capacity(k + 1);
            let mut p = BigRational::one();
            for _ in 0..k {
                row.push(p.clone());
                p *= rat(*x);
            }
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !rows[r][col].is_zero()).expect("distinct abscissae");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..k {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=k {
                    let sub = &factor * &rows[col][c];
                    rows[r][c] -= sub;
                }
            }
        }
    }
    rows.into_iter().map(|mut r| r.pop().unwrap()).collect()
}

pub fn poly_eval(coeffs: &[BigRational], n: i64) -> BigRational {
    let x = rat(n);
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Smallest `s <= s_max`, then smallest degree `<= deg_max`, such that each residue
/// class has at least `degree + 2` points and one polynomial per class fits all of
/// them exactly. Returns `None` when no pair qualifies.
pub fn quasipoly_fit(points: &[(i64, i64)], s_max: usize, deg_max: usize) -> Option<QuasiPolynomial> {
    let points: Vec<(i64, BigRational)> = points.iter().map(|&(n, v)| (n, rat(v))).collect();
    fit_rational(&points, s_max, deg_max)
}

pub fn fit_rational(points: &[(i64, BigRational)], s_max: usize, deg_max: usize) -> Option<QuasiPolynomial> {
    let domain_min = points.iter().map(|p| p.0).min()?;
    for s in 1..=s_max {
        let mut classes: Vec<Vec<(i64, BigRational)>> = vec![Vec::new(); s];
        for (n, v) in points {
            classes[n.rem_euclid(s as i64) as usize].push((*n, v.clone()));
        }
        for deg in 0..=deg_max {
            if classes.iter().any(|c| c.len() < deg + 2) {
                break;
            }
            let constituents: Vec<Vec<BigRational>> = classes.iter().map(|c| interpolate(&c[..=deg])).collect();
            let fits = classes.iter().zip(&constituents).all(|(c, p)| c[deg + 1..].iter().all(|(n, v)| poly_eval(p, *n) == *v));
            if fits {
                return Some(QuasiPolynomial { s, constituents, domain_min, verified_points: points.len() - s * (deg + 1) });
            }
        }
    }
    None
}

/// Fixed period `s`: each residue class gets the lowest-degree polynomial
/// (at most `deg_max`) through all of its points, with no held-out point
/// required. `verified_points` counts the points beyond each interpolation.
/// `None` when a class is empty or needs a higher degree.
pub fn fit_classes(points: &[(i64, i64)], s: usize, deg_max: usize) -> Option<QuasiPolynomial> {
    let domain_min = points.iter().map(|p| p.0).min()?;
    let mut classes: Vec<Vec<(i64, BigRational)>> = vec![Vec::new(); s];
    for &(n, v) in points {
        classes[n.rem_euclid(s as i64) as usize].push((n, rat(v)));
    }
    let mut constituents = Vec::with_capacity(s);
    let mut verified_points = 0;
    for class in &classes {
        let deg = (0..=deg_max.min(class.len().checked_sub(1)?)).find(|&d| {
            let p = interpolate(&class[..=d]);
            class[d + 1..].iter().all(|(n, v)| poly_eval(&p, *n) == *v)
        })?;
        verified_points += class.len() - deg - 1;
        constituents.push(interpolate(&class[..=deg]));
    }
    Some(QuasiPolynomial { s, constituents, domain_min, verified_points })
}

impl QuasiPolynomial {
    pub fn eval(&self, n: i64) -> Result<BigRational> {
        if n < self.domain_min {
            return Err(Error::InvalidParameter(format!("n = {n} below fitted domain {}", self.domain_min)));
        }
        Ok(poly_eval(&self.constituents[n.rem_euclid(self.s as i64) as usize], n))
    }

    pub fn degree(&self) -> usize {
        self.constituents
            .iter()
            .map(|c| c.iter().rposition(|x| !x.is_zero()).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Human-readable constituent, e.g. `3/4 n^2 - 2 n + 3`.
    pub fn constituent_string(&self, residue: usize) -> String {
        let c = &self.constituents[residue];
        let mut terms = Vec::new();
        for (p, coef) in c.iter().enumerate().rev() {
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { "-" } else { "+" };
            let mag = coef.abs();
            let num = if mag.is_one() && p > 0 { String::new() } else { format!("{mag} ") };
            let var = match p {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{p}"),
            };
            terms.push((sign, format!("{num}{var}").trim().to_string()));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (sign, t)) in terms.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(t);
        }
        out
    }

    pub fn to_report(&self) -> Result<FitReport> {
        let as_pair = |x: &BigRational| -> Result<[i64; 2]> {
            let num = x.numer().to_i64().ok_or_else(|| Error::CapacityOverflow("coefficient numerator".into()))?;
            let den = x.denom().to_i64().ok_or_else(|| Error::CapacityOverflow("coefficient denominator".into()))?;
            Ok([num, den])
        };
        let constituents = self.constituents.iter().map(|c| c.iter().map(as_pair).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(FitReport { s: self.s, constituents, domain_min: self.domain_min, verified_points: self.verified_points })
    }
}

/// Serialized fit: each constituent is a list of `[numerator, denominator]`
/// coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub s: usize,
    pub constituents: Vec<Vec<[i64; 2]>>,
    pub domain_min: i64,
    pub verified_points: usize,
}

impl FitReport {
    pub fn to_quasipoly(&self) -> QuasiPolynomial {
        let constituents = self
            .constituents
            .iter()
            .map(|c| c.iter().map(|[n, d]| BigRational::new(BigInt::from(*n), BigInt::from(*d))).collect())
            .collect();
        QuasiPolynomial { s: self.s, constituents, domain_min: self.domain_min, verified_points: self.verified_points }
    }
}

/// Least-squares polynomial fit in floating point; coefficients ascending.
pub fn least_squares(points: &[(f64, f64)], degree: usize) -> Vec<f64> {
    let k = degree + 1;
    let mut a = vec![vec![0.0f64; k + 1]; k];
    for &(x, y) in points {
        let powers: Vec<f64> = (0..k).map(|p| x.powi(p as i32)).collect();
        for r in 0..k {
            for c in 0..k {
                a[r][c] += powers[r] * powers[c];
            }
            a[r][k] += powers[r] * y;
        }
    }
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        for r in 0..k {
            if r != col {
                let factor = a[r][col] / a[col][col];
                for c in col..=k {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
    }
    (0..k).map(|r| a[r][k] / a[r][r]).collect()
}
