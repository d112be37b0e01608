//! Generated polytope families used by the verification harness.

use rayon::prelude::*;

use crate::ehrhart::classify;
use crate::error::Result;
use crate::lattice::{lattice_isomorphic, Point, Polytope};
use crate::linalg;

fn grid(d: usize, values: &[i64]) -> Vec<Point> {
    let mut out: Vec<Point> = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every lattice simplex (of any dimension `0..=d`) with vertices in
/// `{0,1,2}^d`, for `d = 1..=max_d`.
pub fn grid_simplices(max_d: usize) -> Vec<Polytope> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let pts = grid(d, &[0, 1, 2]);
        for k in 1..=d + 1 {
            let found: Vec<Polytope> = combinations(pts.len(), k)
                .into_par_iter()
                .filter_map(|ids| {
                    let vs: Vec<Point> = ids.iter().map(|&i| pts[i].clone()).collect();
                    let diffs: Vec<Point> = vs[1..]
                        .iter()
                        .map(|v| v.iter().zip(&vs[0]).map(|(a, b)| a - b).collect())
                        .collect();
                    (linalg::rank_i64(&diffs) == k - 1).then(|| Polytope::from_points(d, vs).ok())?
                })
                .collect();
            out.extend(found);
        }
    }
    out
}

/// Representatives of the lattice-isomorphism classes of reflexive polygons,
/// found among polygons whose vertices are primitive points of `[-2,2]^2`.
pub fn reflexive_polygons() -> Result<Vec<Polytope>> {
    let pts: Vec<Point> = grid(2, &[-2, -1, 0, 1, 2])
        .into_iter()
        .filter(|p| linalg::gcd_i64(p) == 1)
        .collect();
    let mut hits: Vec<Polytope> = (3..=6)
        .flat_map(|k| combinations(pts.len(), k))
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|ids| {
            let vs: Vec<Point> = ids.iter().map(|&i| pts[i].clone()).collect();
            let p = Polytope::from_points(2, vs).ok()?;
            (p.vertices().len() == ids.len() && p.dim() == 2).then_some(p)
        })
        .filter_map(|p| match classify(&p) {
            Ok(c) if c.reflexive => Some(Ok(p)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    hits.sort_by_key(|p| {
        let mut v = p.vertices().to_vec();
        v.sort();
        (p.vertices().len(), v)
    });
    let mut classes: Vec<Polytope> = Vec::new();
    for p in hits {
        let mut known = false;
        for c in &classes {
            if c.vertices().len() == p.vertices().len() && lattice_isomorphic(c, &p)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            classes.push(p);
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_counts() {
        // {0,1,2}: 3 points and 3 segments
        assert_eq!(grid_simplices(1).len(), 6);
        assert_eq!(combinations(5, 2).len(), 10);
    }
}
