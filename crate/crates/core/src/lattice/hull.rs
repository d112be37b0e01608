//! Incremental double description for full-dimensional point sets.
//!
//! Facets of `conv(X) ⊂ R^e` are the extreme rays of the cone
//! `{ y ∈ R^{e+1} : ⟨y, (x, 1)⟩ ≥ 0 for x ∈ X }`. The cone is pointed because
//! `X` affinely spans `R^e`.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{big_vec, make_primitive, rank, small_vec, solve_unique};

/// A facet in halfspace form `⟨normal, x⟩ + offset ≥ 0` with the set of input
/// points lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub incident: FixedBitSet,
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

/// Facets of the convex hull of `points`, which must affinely span `R^e`
/// with `e = points[0].len() ≥ 1`. Duplicate points are allowed.
pub(crate) fn full_dim_facets(points: &[Vec<i64>]) -> Result<Vec<RawFacet>> {
    let n = points.len();
    let e = points.first().map_or(0, |p| p.len());
    if e == 0 {
        return Err(Error::DegeneratePolytope { dim: 0 });
    }
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut r = big_vec(p);
            r.push(BigInt::one());
            r
        })
        .collect();

    // greedy choice of e+1 independent rows
    let mut basis_rows: Vec<usize> = Vec::with_capacity(e + 1);
    let mut chosen: Vec<Vec<BigInt>> = Vec::with_capacity(e + 1);
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            basis_rows.push(i);
            if basis_rows.len() == e + 1 {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if basis_rows.len() != e + 1 {
        return Err(Error::inconsistency(
            "lattice-core",
            format!("point set spans dimension {} < {}", basis_rows.len() as isize - 1, e),
        ));
    }

    // initial simplicial cone: rays solve A_0 r = unit vectors
    let a0: Vec<Vec<BigRational>> = basis_rows
        .iter()
        .map(|&i| rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(e + 1);
    for j in 0..=e {
        let rhs: Vec<BigRational> = (0..=e)
            .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
            .collect();
        let sol = solve_unique(&a0, &rhs)
            .ok_or_else(|| Error::inconsistency("lattice-core", "singular initial basis"))?;
        let lcm = sol.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let mut coords: Vec<BigInt> = sol.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        make_primitive(&mut coords);
        rays.push(Ray {
            coords,
            zeros: FixedBitSet::with_capacity(n),
        });
    }
    let mut processed = FixedBitSet::with_capacity(n);
    for &i in &basis_rows {
        mark_row(&mut rays, &rows[i], i);
        processed.insert(i);
    }

    for i in 0..n {
        if processed.contains(i) {
            continue;
        }
        let row = &rows[i];
        let values: Vec<BigInt> = rays.iter().map(|r| crate::linalg::dot(&r.coords, row)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 1 < e {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&w| w != p && w != q)
                    .all(|w| !common.is_subset(&rays[w].zeros));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let mut coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(a, b)| b * vp + a * &vq)
                    .collect();
                make_primitive(&mut coords);
                common.insert(i);
                fresh.push(Ray { coords, zeros: common });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
        processed.insert(i);
    }

    let mut facets = Vec::with_capacity(rays.len());
    for r in rays {
        let v = small_vec(&r.coords)?;
        let mut incident = FixedBitSet::with_capacity(n);
        for (k, row) in rows.iter().enumerate() {
            if crate::linalg::dot(&r.coords, row).is_zero() {
                incident.insert(k);
            }
        }
        facets.push(RawFacet {
            normal: v[..e].to_vec(),
            offset: v[e],
            incident,
        });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
    Ok(facets)
}

fn mark_row(rays: &mut [Ray], row: &[BigInt], i: usize) {
    for r in rays.iter_mut() {
        if crate::linalg::dot(&r.coords, row).is_zero() {
            r.zeros.insert(i);
        }
    }
}
