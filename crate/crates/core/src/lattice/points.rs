//! Lattice points of dilates `kP`.
//!
//! Coordinates are fixed one at a time. The bounds for coordinate `j` come
//! from the facets of the projection of `P` onto the first `j+1` coordinates,
//! so every partial point visited extends to a real point of `kP`.

use num_integer::Integer;

use super::{hull, Point, Polytope};
use crate::error::Result;

#[derive(Debug, Clone)]
pub(crate) struct PointEnumerator {
    dim: usize,
    /// `levels[j]`: facets of the projection to coordinates `0..=j` that
    /// involve coordinate `j`.
    levels: Vec<Vec<(Vec<i64>, i64)>>,
}

impl PointEnumerator {
    /// `points` must affinely span `Z^e` (or be a single point of `Z^0`).
    pub fn new(points: &[Point]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        let mut levels = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut proj: Vec<Point> = points.iter().map(|p| p[..=j].to_vec()).collect();
            proj.sort();
            proj.dedup();
            let facets = hull::full_dim_facets(&proj)?;
            levels.push(
                facets
                    .into_iter()
                    .filter(|f| f.normal[j] != 0)
                    .map(|f| (f.normal, f.offset))
                    .collect(),
            );
        }
        Ok(PointEnumerator { dim, levels })
    }

    /// Calls `visit` on every lattice point of `kP` (of its interior when
    /// `interior` is set), in local coordinates.
    pub fn for_each(&self, k: i64, interior: bool, mut visit: impl FnMut(&[i64])) {
        if self.dim == 0 {
            visit(&[]);
            return;
        }
        let mut x = vec![0i64; self.dim];
        self.descend(0, k, interior, &mut x, &mut visit);
    }

    pub fn count(&self, k: i64, interior: bool) -> u64 {
        let mut n = 0u64;
        self.for_each(k, interior, |_| n += 1);
        n
    }

    fn descend(&self, j: usize, k: i64, interior: bool, x: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
        let slack = i64::from(interior);
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for (a, b) in &self.levels[j] {
            let rest: i64 = a[..j].iter().zip(x.iter()).map(|(ai, xi)| ai * xi).sum::<i64>() + k * b;
            let need = slack - rest;
            let aj = a[j];
            if aj > 0 {
                lo = lo.max(Integer::div_ceil(&need, &aj));
            } else {
                hi = hi.min(Integer::div_floor(&-need, &-aj));
            }
        }
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            x[j] = v;
            if j + 1 == self.dim {
                visit(x);
            } else {
                self.descend(j + 1, k, interior, x, visit);
            }
        }
    }
}

/// Lattice points of `kP`, or of its relative interior, in ambient
/// coordinates. `k = 0` yields the single point `0` for nonempty `P` (its
/// interior is empty unless `P` is a point).
pub fn lattice_points(p: &Polytope, k: u32, interior_only: bool) -> Result<Vec<Point>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    if k == 0 {
        if interior_only && p.dim() > 0 {
            return Ok(Vec::new());
        }
        return Ok(vec![vec![0; p.ambient_dim()]]);
    }
    let form = p.local_form()?;
    let en = PointEnumerator::new(&form.points)?;
    let mut out = Vec::new();
    en.for_each(i64::from(k), interior_only, |c| {
        out.push(form.chart.from_local_scaled(c, i64::from(k)))
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(p: &Polytope, k: i64, interior: bool) -> usize {
        let f = p.facets().unwrap();
        let d = p.ambient_dim();
        let lo: Vec<i64> = (0..d).map(|j| p.vertices().iter().map(|v| v[j]).min().unwrap() * k).collect();
        let hi: Vec<i64> = (0..d).map(|j| p.vertices().iter().map(|v| v[j]).max().unwrap() * k).collect();
        let mut count = 0;
        let mut x = lo.clone();
        loop {
            let s = i64::from(interior);
            if f.iter().all(|h| crate::linalg::dot_i64(&h.normal, &x) + k * h.offset >= s) {
                count += 1;
            }
            let mut j = 0;
            while j < d {
                x[j] += 1;
                if x[j] <= hi[j] {
                    break;
                }
                x[j] = lo[j];
                j += 1;
            }
            if j == d {
                break;
            }
        }
        count
    }

    #[test]
    fn triangle_dilate() {
        let p = Polytope::from_points(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(lattice_points(&p, 3, false).unwrap().len(), 10);
    }

    #[test]
    fn cube_interior() {
        let mut pts = Vec::new();
        for m in 0..8 {
            pts.push(vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]);
        }
        let p = Polytope::from_points(3, pts).unwrap();
        assert_eq!(lattice_points(&p, 2, true).unwrap(), vec![vec![1, 1, 1]]);
        assert_eq!(brute_force(&p, 2, true), 1);
    }

    #[test]
    fn empty_polytope_has_no_points() {
        assert!(lattice_points(&Polytope::empty(3), 4, false).unwrap().is_empty());
    }

    #[test]
    fn agrees_with_box_scan() {
        let polys = vec![
            vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 2, 0]],
            vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 3, 0]],
            vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1], vec![-1, -1, -1], vec![1, 1, 1]],
        ];
        for verts in polys {
            let p = Polytope::from_points(3, verts).unwrap();
            for k in 1..=4 {
                for interior in [false, true] {
                    assert_eq!(
                        lattice_points(&p, k, interior).unwrap().len(),
                        brute_force(&p, k as i64, interior),
                        "k={k} interior={interior}"
                    );
                }
            }
        }
    }

    #[test]
    fn lower_dimensional_points_lie_in_ambient() {
        let p = Polytope::from_points(3, vec![vec![1, 1, 1], vec![3, 5, 1]]).unwrap();
        let pts = lattice_points(&p, 2, false).unwrap();
        assert_eq!(pts, vec![vec![2, 2, 2], vec![3, 4, 2], vec![4, 6, 2], vec![5, 8, 2], vec![6, 10, 2]]);
        assert_eq!(lattice_points(&p, 1, true).unwrap(), vec![vec![2, 3, 1]]);
    }
}
