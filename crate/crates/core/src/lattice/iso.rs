//! Affine-unimodular isomorphism by frame matching.
//!
//! An affinely independent frame of vertices of `P` is fixed; every ordered
//! choice of matching vertices of `Q` determines at most one affine map, which
//! is then checked on all vertices. Exponential in the dimension, so only for
//! small polytopes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Point, Polytope};
use crate::error::Result;
use crate::linalg::{self, big_matrix, gcd_i64};

/// `x ↦ matrix · x + translation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            translation: vec![0; n],
        }
    }

    pub fn apply(&self, x: &[i64]) -> Point {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| linalg::dot_i64(row, x) + t)
            .collect()
    }
}

/// Searches for an affine lattice isomorphism from `p` onto `q`.
///
/// Both polytopes are first rewritten in the lattice of their affine span, and
/// the witness acts on those coordinates. For full-dimensional polytopes the
/// coordinates are the given ones.
pub fn lattice_isomorphic(p: &Polytope, q: &Polytope) -> Result<Option<AffineMap>> {
    if p.dim() != q.dim() || p.vertices().len() != q.vertices().len() {
        return Ok(None);
    }
    if p.is_empty() {
        return Ok(Some(AffineMap::identity(0)));
    }
    let (lp, _) = p.to_local()?;
    let (lq, _) = q.to_local()?;
    let e = lp.ambient_dim();
    if e == 0 {
        return Ok(Some(AffineMap::identity(0)));
    }
    let sp = signatures(&lp)?;
    let sq = signatures(&lq)?;
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }

    let pv = lp.vertices();
    let qv = lq.vertices();
    let frame = frame_of(pv);
    let diffs: Vec<Vec<i64>> = frame[1..].iter().map(|&i| sub(&pv[i], &pv[frame[0]])).collect();
    // columns of V are the frame differences
    let v = linalg::transpose(&big_matrix(&diffs));
    let det_v = linalg::det(&v).abs();
    let v_inv = inverse(&v);
    let targets: HashSet<&Point> = qv.iter().collect();

    let mut search = Search {
        pv,
        qv,
        sp: &sp,
        sq: &sq,
        frame: &frame,
        det_v: &det_v,
        v_inv: &v_inv,
        targets: &targets,
        chosen: Vec::with_capacity(e + 1),
    };
    Ok(search.run())
}

struct Search<'a> {
    pv: &'a [Point],
    qv: &'a [Point],
    sp: &'a [Signature],
    sq: &'a [Signature],
    frame: &'a [usize],
    det_v: &'a BigInt,
    v_inv: &'a [Vec<BigRational>],
    targets: &'a HashSet<&'a Point>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<AffineMap> {
        let depth = self.chosen.len();
        if depth == self.frame.len() {
            return self.try_map();
        }
        let src = self.frame[depth];
        for cand in 0..self.qv.len() {
            if self.chosen.contains(&cand) || self.sp[src] != self.sq[cand] {
                continue;
            }
            // lattice lengths of frame edges are invariant
            let ok = self.chosen.iter().enumerate().all(|(k, &c)| {
                let a = self.frame[k];
                gcd_i64(&sub(&self.pv[src], &self.pv[a])) == gcd_i64(&sub(&self.qv[cand], &self.qv[c]))
            });
            if !ok {
                continue;
            }
            self.chosen.push(cand);
            if let Some(m) = self.run() {
                return Some(m);
            }
            self.chosen.pop();
        }
        None
    }

    fn try_map(&self) -> Option<AffineMap> {
        let w0 = &self.qv[self.chosen[0]];
        let diffs: Vec<Vec<i64>> = self.chosen[1..].iter().map(|&c| sub(&self.qv[c], w0)).collect();
        let w = linalg::transpose(&big_matrix(&diffs));
        if &linalg::det(&w).abs() != self.det_v {
            return None;
        }
        let e = w.len();
        let mut matrix = vec![vec![0i64; e]; e];
        for i in 0..e {
            for j in 0..e {
                let s: BigRational = (0..e)
                    .map(|k| BigRational::from_integer(w[i][k].clone()) * &self.v_inv[k][j])
                    .sum();
                if !s.is_integer() {
                    return None;
                }
                matrix[i][j] = linalg::small(&s.to_integer()).ok()?;
            }
        }
        let v0 = &self.pv[self.frame[0]];
        let image0: Vec<i64> = matrix.iter().map(|row| linalg::dot_i64(row, v0)).collect();
        let translation = sub(w0, &image0);
        let map = AffineMap { matrix, translation };
        self.pv
            .iter()
            .all(|x| self.targets.contains(&map.apply(x)))
            .then_some(map)
    }
}

/// Per-vertex invariant: number of incident facets and the sorted lattice
/// lengths of incident edges.
type Signature = (usize, Vec<i64>);

fn signatures(p: &Polytope) -> Result<Vec<Signature>> {
    let form = p.local_form()?;
    let fl = p.face_lattice()?;
    let verts = p.vertices();
    let edges = fl.faces_of_dim(1);
    Ok((0..verts.len())
        .map(|i| {
            let facets = form.facets.iter().filter(|f| f.incident.contains(i)).count();
            let mut lengths: Vec<i64> = edges
                .iter()
                .map(|&id| &fl.face(id).vertices)
                .filter(|vs| vs.contains(&i))
                .map(|vs| gcd_i64(&sub(&verts[vs[0]], &verts[vs[1]])))
                .collect();
            lengths.sort_unstable();
            (facets, lengths)
        })
        .collect())
}

fn frame_of(points: &[Point]) -> Vec<usize> {
    let mut frame = vec![0];
    let mut diffs: Vec<Vec<i64>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        diffs.push(sub(p, &points[0]));
        if linalg::rank_i64(&diffs) == diffs.len() {
            frame.push(i);
        } else {
            diffs.pop();
        }
    }
    frame
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn inverse(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let cols: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let rhs: Vec<BigRational> = (0..n)
                .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect();
            linalg::solve_unique(&a, &rhs).expect("frame differences are independent")
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: usize, pts: Vec<Vec<i64>>) -> Polytope {
        Polytope::from_points(d, pts).unwrap()
    }

    #[test]
    fn reflexive_on_identity() {
        let p = poly(2, vec![vec![0, 0], vec![2, 0], vec![0, 1], vec![1, 1]]);
        let m = lattice_isomorphic(&p, &p).unwrap().unwrap();
        for v in p.vertices() {
            assert!(p.vertices().contains(&m.apply(v)));
        }
    }

    #[test]
    fn segments_of_different_length() {
        let a = poly(1, vec![vec![0], vec![1]]);
        let b = poly(1, vec![vec![0], vec![2]]);
        assert!(lattice_isomorphic(&a, &b).unwrap().is_none());
    }

    #[test]
    fn shear_and_shift_is_found() {
        let p = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 2]]);
        let image: Vec<Vec<i64>> = p
            .vertices()
            .iter()
            .map(|v| vec![v[0] + 3 * v[1] - 4, -v[1] + 7])
            .collect();
        let q = poly(2, image);
        let m = lattice_isomorphic(&p, &q).unwrap().unwrap();
        let mut got: Vec<Point> = p.vertices().iter().map(|v| m.apply(v)).collect();
        let mut want = q.vertices().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn non_unimodular_image_rejected() {
        let p = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let q = poly(2, vec![vec![0, 0], vec![2, 0], vec![0, 1]]);
        assert!(lattice_isomorphic(&p, &q).unwrap().is_none());
    }

    #[test]
    fn lower_dimensional_faces_compare_in_their_span() {
        let a = poly(3, vec![vec![0, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        let b = poly(2, vec![vec![5, 5], vec![6, 5], vec![5, 6]]);
        assert!(lattice_isomorphic(&a, &b).unwrap().is_some());
    }
}
