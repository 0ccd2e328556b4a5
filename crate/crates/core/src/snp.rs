//! Saturated Newton polytope check.
//!
//! `f` has SNP when every lattice point in the convex hull of its support is
//! itself in the support. Candidates are lattice points of the bounding box
//! (cut down to the degree hyperplane for homogeneous `f`); hull membership
//! is an exact Phase-I simplex over the rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::composition::WeakComposition;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnpReport {
    pub saturated: bool,
    /// A hull lattice point missing from the support.
    pub witness: Option<WeakComposition>,
    pub candidates: usize,
}

pub fn snp_check(f: &Polynomial) -> Result<SnpReport> {
    snp_check_limited(f, Limits::default().box_limit)
}

pub fn snp_check_limited(f: &Polynomial, box_limit: usize) -> Result<SnpReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support = f.support();
    let n = f.num_vars();
    let points: Vec<Vec<u32>> = support.iter().map(|e| e.padded(n)).collect();
    let lo: Vec<u32> = (0..n).map(|k| points.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<u32> = (0..n).map(|k| points.iter().map(|p| p[k]).max().unwrap()).collect();
    let degree = f.homogeneous_degree();

    // With a fixed degree the last coordinate is determined by the others.
    let free = if degree.is_some() { n.saturating_sub(1) } else { n };
    let mut size: usize = 1;
    for k in 0..free {
        size = size.saturating_mul((hi[k] - lo[k] + 1) as usize);
    }
    if size > box_limit {
        return Err(Error::resource(
            "box_limit",
            box_limit,
            format!("SNP candidate box has {size} points"),
        ));
    }

    let in_support: std::collections::HashSet<&[u32]> = points.iter().map(Vec::as_slice).collect();
    let mut candidates = 0;
    let mut cur = lo.clone();
    loop {
        let mut point = cur.clone();
        let viable = match degree {
            Some(d) if n > 0 => {
                let partial: u64 = cur[..n - 1].iter().map(|&x| x as u64).sum();
                match d.checked_sub(partial) {
                    Some(last) if last >= lo[n - 1] as u64 && last <= hi[n - 1] as u64 => {
                        point[n - 1] = last as u32;
                        true
                    }
                    _ => false,
                }
            }
            _ => true,
        };
        if viable {
            candidates += 1;
            if !in_support.contains(point.as_slice()) && in_hull(&points, &point) {
                return Ok(SnpReport {
                    saturated: false,
                    witness: Some(WeakComposition::new(point)),
                    candidates,
                });
            }
        }
        // Odometer over the free coordinates.
        let mut k = 0;
        loop {
            if k == free {
                return Ok(SnpReport {
                    saturated: true,
                    witness: None,
                    candidates,
                });
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

/// Whether `p` is a convex combination of `points`: feasibility of
/// `λ ≥ 0, Σ λ = 1, Σ λ_j points_j = p`.
pub fn in_hull(points: &[Vec<u32>], p: &[u32]) -> bool {
    let s = points.len();
    let dim = p.len();
    let rows = dim + 1;
    let q = |x: u32| BigRational::from_integer(x.into());
    // Columns: λ_1..λ_s, artificials a_1..a_rows, right-hand side.
    let width = s + rows + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = vec![BigRational::zero(); width];
        for (j, pt) in points.iter().enumerate() {
            row[j] = if i < dim { q(pt[i]) } else { BigRational::one() };
        }
        row[s + i] = BigRational::one();
        row[width - 1] = if i < dim { q(p[i]) } else { BigRational::one() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (s..s + rows).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..s {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    // Bland's rule: smallest entering index with negative reduced cost.
    while let Some(enter) = (0..width - 1).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // The Phase-I objective is bounded below by 0.
            unreachable!("phase-one simplex cannot be unbounded");
        };
        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        basis[pr] = enter;
    }
    obj[width - 1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_missing() {
        let f = Polynomial::from_int_terms([(vec![2], 1), (vec![0, 2], 1)]);
        let r = snp_check(&f).unwrap();
        assert!(!r.saturated);
        assert_eq!(r.witness, Some(WeakComposition::from(vec![1, 1])));
    }

    #[test]
    fn linear_is_saturated() {
        let f = Polynomial::from_int_terms([(vec![1], 1), (vec![0, 1], 1)]);
        assert!(snp_check(&f).unwrap().saturated);
        assert!(snp_check(&Polynomial::one()).unwrap().saturated);
    }

    #[test]
    fn inhomogeneous() {
        // 1 + x1^2: x1 lies on the segment.
        let f = Polynomial::from_int_terms([(vec![], 1), (vec![2], 1)]);
        let r = snp_check(&f).unwrap();
        assert_eq!(r.witness, Some(WeakComposition::from(vec![1])));
        let g = Polynomial::from_int_terms([(vec![], 1), (vec![1], 1), (vec![2], 3)]);
        assert!(snp_check(&g).unwrap().saturated);
    }

    #[test]
    fn hull_membership() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2]];
        assert!(in_hull(&pts, &[1, 1]));
        assert!(in_hull(&pts, &[0, 0]));
        assert!(!in_hull(&pts, &[2, 1]));
        // Degenerate: repeated and collinear points.
        let line = vec![vec![0, 0], vec![1, 1], vec![1, 1], vec![3, 3]];
        assert!(in_hull(&line, &[2, 2]));
        assert!(!in_hull(&line, &[2, 1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(snp_check(&Polynomial::zero()), Err(Error::ZeroPolynomial)));
        let f = Polynomial::from_int_terms([(vec![9, 0, 0], 1), (vec![0, 0, 9], 1)]);
        assert!(snp_check_limited(&f, 5).unwrap_err().is_resource_limit());
    }
}
