//! Nef-partitions of reflexive polytopes and their Cayley polytopes.
//!
//! The Cayley polytope of `P_1, .., P_r ⊂ R^d` lives in `Z^{d+r-1}`: part
//! `i < r` sits at `(v, e_i)` and the last part at `(v, 0)`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{dual_gorenstein, DualPair};
use crate::ehrhart::{classify, hstar_profile};
use crate::error::{Error, Result};
use crate::joins::is_irreducible;
use crate::lattice::{face_sublattice, lattice_points, sublattice_index, Point, Polytope};
use crate::linalg::{self, big_matrix, PivotRule};
use crate::poly::{BiPoly, UniPoly};
use crate::stringy::stringy_e;

/// Largest number of parts accepted by the subset searches.
pub const MAX_PARTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefPartition {
    pub reflexive: Polytope,
    pub parts: Vec<Polytope>,
}

impl NefPartition {
    /// Builds the partition with `P = P_1 + .. + P_r`; nothing is validated.
    pub fn from_parts(parts: Vec<Polytope>) -> Result<Self> {
        Ok(NefPartition {
            reflexive: minkowski_sum(&parts)?,
            parts,
        })
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSimplex {
    pub points: Vec<Point>,
}

fn common_dim(parts: &[Polytope]) -> Result<usize> {
    let d = parts
        .first()
        .ok_or_else(|| Error::Validation("no parts".into()))?
        .ambient_dim();
    if parts.iter().any(|p| p.ambient_dim() != d) {
        return Err(Error::MixedLattices);
    }
    Ok(d)
}

fn sorted_vertices(p: &Polytope) -> Vec<Point> {
    let mut v = p.vertices().to_vec();
    v.sort();
    v
}

pub fn minkowski_sum(parts: &[Polytope]) -> Result<Polytope> {
    let d = common_dim(parts)?;
    let mut acc = Polytope::from_points(d, vec![vec![0; d]])?;
    for p in parts {
        if p.is_empty() {
            return Ok(Polytope::empty(d));
        }
        let pts = acc
            .vertices()
            .iter()
            .flat_map(|a| p.vertices().iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        acc = Polytope::from_points(d, pts)?;
    }
    Ok(acc)
}

/// `P_1 * .. * P_r` over `M ⊕ Z^{r-1}`.
pub fn cayley_polytope(parts: &[Polytope]) -> Result<Polytope> {
    let d = common_dim(parts)?;
    let r = parts.len();
    let pts = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.vertices().iter().map(move |v| {
                let mut x = v.clone();
                x.extend((0..r - 1).map(|j| i64::from(i == j)));
                x
            })
        })
        .collect();
    Polytope::from_points(d + r - 1, pts)
}

/// The part a point of a Cayley polytope with `r` parts and base dimension
/// `d` belongs to.
fn cayley_level(x: &[i64], d: usize, r: usize) -> Option<usize> {
    let tail = &x[d..];
    let ones: Vec<usize> = (0..tail.len()).filter(|&j| tail[j] != 0).collect();
    match ones.as_slice() {
        [] => Some(r - 1),
        [j] if tail[*j] == 1 => Some(*j),
        _ => None,
    }
}

/// Points `0 × e_i` of the Cayley polytope.
fn cayley_simplex_points(d: usize, r: usize) -> Vec<Point> {
    (0..r)
        .map(|i| {
            let mut x = vec![0; d];
            x.extend((0..r - 1).map(|j| i64::from(i == j)));
            x
        })
        .collect()
}

/// Each facet of `p` contains exactly `|points| - 1` of the points, which are
/// affinely independent lattice points of `p`.
pub fn is_special_simplex(p: &Polytope, points: &[Point]) -> Result<bool> {
    if p.is_empty() || points.is_empty() {
        return Ok(false);
    }
    for x in points {
        if !p.contains_scaled(x, 1, false)? {
            return Ok(false);
        }
    }
    let base = &points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if linalg::rank_i64(&diffs) != points.len() - 1 {
        return Ok(false);
    }
    if p.dim() <= 0 {
        return Ok(points.len() == 1);
    }
    let form = p.local_form()?;
    let local: Vec<Point> = points.iter().map(|x| form.chart.to_local(x)).collect();
    Ok(form.hyperplanes().iter().all(|h| {
        local.iter().filter(|c| h.eval(c) == 0).count() == points.len() - 1
    }))
}

/// All special `(r-1)`-simplices of `p`: `r`-sets of lattice points whose sets
/// of non-incident facets partition the facets.
pub fn special_simplices(p: &Polytope, r: usize) -> Result<Vec<SpecialSimplex>> {
    if p.is_empty() || r == 0 {
        return Ok(Vec::new());
    }
    let points = lattice_points(p, 1, false)?;
    if p.dim() <= 0 {
        return Ok(if r == 1 {
            vec![SpecialSimplex { points }]
        } else {
            Vec::new()
        });
    }
    let form = p.local_form()?;
    let planes = form.hyperplanes();
    let m = planes.len();
    let off: Vec<FixedBitSet> = points
        .iter()
        .map(|x| {
            let c = form.chart.to_local(x);
            let mut s = FixedBitSet::with_capacity(m);
            for (j, h) in planes.iter().enumerate() {
                if h.eval(&c) > 0 {
                    s.insert(j);
                }
            }
            s
        })
        .collect();

    fn search(
        off: &[FixedBitSet],
        r: usize,
        covered: &FixedBitSet,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(j) = (0..covered.len()).find(|&j| !covered.contains(j)) else {
            if chosen.len() == r {
                out.push(chosen.clone());
            }
            return;
        };
        if chosen.len() == r {
            return;
        }
        for (i, s) in off.iter().enumerate() {
            if s.contains(j) && s.is_disjoint(covered) {
                let mut next = covered.clone();
                next.union_with(s);
                chosen.push(i);
                search(off, r, &next, chosen, out);
                chosen.pop();
            }
        }
    }

    let mut found = Vec::new();
    search(&off, r, &FixedBitSet::with_capacity(m), &mut Vec::new(), &mut found);
    let mut out = Vec::new();
    for mut ids in found {
        ids.sort_unstable();
        let pts: Vec<Point> = ids.iter().map(|&i| points[i].clone()).collect();
        if is_special_simplex(p, &pts)? {
            out.push(SpecialSimplex { points: pts });
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    if !out.is_empty() {
        let codeg = hstar_profile(p)?.codegree;
        if codeg > r {
            return Err(Error::violation(
                "nef",
                format!("special {}-simplex in a polytope of codegree {codeg}", r - 1),
            ));
        }
    }
    Ok(out)
}

/// Why a candidate failed [`nef_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum NefInvalid {
    NoParts,
    MixedLattices,
    EmptyPart { part: usize },
    OriginMissing { part: usize },
    SumMismatch,
    NotReflexive,
    CayleyNotGorenstein,
    WrongIndex { index: usize },
    WrongDimension { dim: isize },
    NoSpecialSimplex,
    NoDualSpecialSimplex,
}

/// `Ok(None)` when the candidate is a nef-partition whose Cayley polytope has
/// the expected index and both special simplices.
pub fn nef_validate(candidate: &NefPartition) -> Result<Option<NefInvalid>> {
    let parts = &candidate.parts;
    let r = parts.len();
    if r == 0 {
        return Ok(Some(NefInvalid::NoParts));
    }
    let d = candidate.reflexive.ambient_dim();
    if parts.iter().any(|p| p.ambient_dim() != d) {
        return Ok(Some(NefInvalid::MixedLattices));
    }
    let origin = vec![0; d];
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Ok(Some(NefInvalid::EmptyPart { part: i }));
        }
        if !p.contains_scaled(&origin, 1, false)? {
            return Ok(Some(NefInvalid::OriginMissing { part: i }));
        }
    }
    if sorted_vertices(&minkowski_sum(parts)?) != sorted_vertices(&candidate.reflexive) {
        return Ok(Some(NefInvalid::SumMismatch));
    }
    if !classify(&candidate.reflexive)?.reflexive {
        return Ok(Some(NefInvalid::NotReflexive));
    }
    let cayley = cayley_polytope(parts)?;
    let expected_dim = candidate.reflexive.dim() + r as isize - 1;
    if cayley.dim() != expected_dim {
        return Ok(Some(NefInvalid::WrongDimension { dim: cayley.dim() }));
    }
    let pair = match dual_gorenstein(&cayley) {
        Ok(pair) => pair,
        Err(Error::NotGorenstein) => return Ok(Some(NefInvalid::CayleyNotGorenstein)),
        Err(e) => return Err(e),
    };
    if pair.index() != r {
        return Ok(Some(NefInvalid::WrongIndex { index: pair.index() }));
    }
    if !is_special_simplex(&cayley, &cayley_simplex_points(d, r))? {
        return Ok(Some(NefInvalid::NoSpecialSimplex));
    }
    if !is_special_simplex(&pair.dual().polytope, &dual_simplex_points(&pair, d, r)?)? {
        return Ok(Some(NefInvalid::NoDualSpecialSimplex));
    }
    Ok(None)
}

/// The functionals `e_i^*` (the level indicators of the parts) written in the
/// coordinates of the dual side of the Cayley pair.
fn dual_simplex_points(pair: &DualPair, d: usize, r: usize) -> Result<Vec<Point>> {
    let chart = pair.primal().polytope.chart()?;
    let n = d + r - 1;
    (0..r)
        .map(|i| {
            let (a, b): (Vec<i64>, i64) = if i + 1 < r {
                ((0..n).map(|k| i64::from(k == d + i)).collect(), 0)
            } else {
                ((0..n).map(|k| if k >= d { -1 } else { 0 }).collect(), 1)
            };
            let mut y: Vec<i64> = chart.basis().iter().map(|bk| linalg::dot_i64(&a, bk)).collect();
            y.push(linalg::dot_i64(&a, chart.origin()) + b);
            Ok(y)
        })
        .collect()
}

/// Recovers `{P_i - p_i}` from a Cayley polytope with `r` parts and a special
/// simplex with one point on each part.
pub fn nef_from_simplex(cayley: &Polytope, r: usize, s: &SpecialSimplex) -> Result<NefPartition> {
    if r == 0 || cayley.ambient_dim() + 1 < r {
        return Err(Error::NotCayleyPolytope(0));
    }
    let d = cayley.ambient_dim() + 1 - r;
    let mut buckets: Vec<Vec<Point>> = vec![Vec::new(); r];
    for (i, v) in cayley.vertices().iter().enumerate() {
        let level = cayley_level(v, d, r).ok_or(Error::NotCayleyPolytope(i))?;
        buckets[level].push(v[..d].to_vec());
    }
    if buckets.iter().any(|b| b.is_empty()) {
        return Err(Error::NotCayleyPolytope(cayley.vertices().len()));
    }
    if classify(cayley)?.gorenstein_index != Some(r) {
        return Err(Error::NotGorenstein);
    }
    let mut anchors: Vec<Option<Point>> = vec![None; r];
    for x in &s.points {
        if x.len() != cayley.ambient_dim() {
            return Err(Error::SimplexNotCayleyAligned);
        }
        let level = cayley_level(x, d, r).ok_or(Error::SimplexNotCayleyAligned)?;
        if anchors[level].replace(x[..d].to_vec()).is_some() {
            return Err(Error::SimplexNotCayleyAligned);
        }
    }
    if s.points.len() != r || !is_special_simplex(cayley, &s.points)? {
        return Err(Error::SimplexNotCayleyAligned);
    }
    let parts = buckets
        .into_iter()
        .zip(anchors)
        .map(|(pts, p)| {
            let p = p.expect("every level has an anchor");
            let shifted = pts
                .iter()
                .map(|v| v.iter().zip(&p).map(|(a, b)| a - b).collect())
                .collect();
            Polytope::from_points(d, shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    let nef = NefPartition::from_parts(parts)?;
    if let Some(reason) = nef_validate(&nef)? {
        return Err(Error::violation("nef", format!("recovered partition is invalid: {reason:?}")));
    }
    Ok(nef)
}

fn check_parts(r: usize) -> Result<()> {
    if r > MAX_PARTS {
        return Err(Error::TooManyParts { got: r, limit: MAX_PARTS });
    }
    Ok(())
}

fn subset_parts(parts: &[Polytope], mask: usize) -> Vec<Polytope> {
    (0..parts.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| parts[i].clone())
        .collect()
}

/// Minkowski sums of every nonempty subset of parts, indexed by bitmask.
fn subset_sums(parts: &[Polytope]) -> Result<Vec<Option<Polytope>>> {
    let r = parts.len();
    let mut sums: Vec<Option<Polytope>> = (0..1usize << r)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 {
                Ok(None)
            } else {
                minkowski_sum(&subset_parts(parts, mask)).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    sums[0] = None;
    Ok(sums)
}

fn origin_in_relint(p: &Polytope) -> Result<bool> {
    p.contains_scaled(&vec![0; p.ambient_dim()], 1, true)
}

/// No proper nonempty subset of parts sums to a polytope with `0` in its
/// relative interior. Cross-checked against irreducibility of the Cayley
/// polytope.
pub fn nef_irreducible(nef: &NefPartition) -> Result<bool> {
    let r = nef.r();
    check_parts(r)?;
    let sums = subset_sums(&nef.parts)?;
    let full = (1usize << r) - 1;
    let mut irreducible = true;
    for (mask, sum) in sums.iter().enumerate() {
        if mask == 0 || mask == full {
            continue;
        }
        if origin_in_relint(sum.as_ref().expect("nonempty subset"))? {
            irreducible = false;
            break;
        }
    }
    let pair = dual_gorenstein(&cayley_polytope(&nef.parts)?)?;
    let via_cayley = is_irreducible(&pair)?;
    if via_cayley != irreducible {
        return Err(Error::violation(
            "nef",
            format!("partition irreducible = {irreducible} but Cayley polytope irreducible = {via_cayley}"),
        ));
    }
    Ok(irreducible)
}

/// A decomposition of the index set into groups, each a nef-partition of a
/// reflexive polytope in its own span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectSumSplit {
    pub groups: Vec<Vec<usize>>,
    /// `M = M_1 ⊕ .. ⊕ M_k`.
    pub over_z: bool,
}

/// Every direct-sum split into at least two groups, coarsest first.
pub fn direct_sum_splits(nef: &NefPartition) -> Result<Vec<DirectSumSplit>> {
    let r = nef.r();
    check_parts(r)?;
    let sums = subset_sums(&nef.parts)?;
    let valid: Vec<bool> = sums
        .iter()
        .map(|s| match s {
            None => Ok(false),
            Some(p) => Ok(origin_in_relint(p)? && classify(p)?.reflexive),
        })
        .collect::<Result<_>>()?;

    fn partitions(rest: usize, valid: &[bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // subsets of the remaining indices that contain the lowest one
        let mut sub = others;
        loop {
            let group = sub | low;
            if valid[group] {
                current.push(group);
                partitions(rest & !group, valid, current, out);
                current.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }

    let mut found = Vec::new();
    partitions((1usize << r) - 1, &valid, &mut Vec::new(), &mut found);
    let d = nef.reflexive.dim();
    let mut out = Vec::new();
    for masks in found.into_iter().filter(|m| m.len() >= 2) {
        let dims: isize = masks.iter().map(|&m| sums[m].as_ref().expect("group").dim()).sum();
        if dims != d {
            continue;
        }
        let rows: Vec<Point> = masks
            .iter()
            .flat_map(|&m| {
                let vs = sums[m].as_ref().expect("group").vertices().to_vec();
                linalg::saturated_basis(&big_matrix(&vs))
            })
            .map(|row| linalg::small_vec(&row))
            .collect::<Result<_>>()?;
        let over_z = rows.len() == nef.reflexive.ambient_dim()
            && linalg::index_in_ambient(&big_matrix(&rows), PivotRule::MinAbs).is_some_and(|i| i == 1.into());
        let mut groups: Vec<Vec<usize>> = masks
            .iter()
            .map(|&m| (0..r).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        groups.sort();
        out.push(DirectSumSplit { groups, over_z });
    }
    out.sort_by(|a, b| a.groups.len().cmp(&b.groups.len()).then_with(|| a.groups.cmp(&b.groups)));
    Ok(out)
}

/// Ids of the Cayley vertices belonging to the given parts.
fn cayley_face(cayley: &Polytope, d: usize, r: usize, group: &[usize]) -> Vec<usize> {
    (0..cayley.vertices().len())
        .filter(|&i| cayley_level(&cayley.vertices()[i], d, r).is_some_and(|l| group.contains(&l)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZSplit {
    pub groups: Vec<Vec<usize>>,
    /// `h*` of the free sum of the parts equals the product of the parts'
    /// `h*`; present when the split into single parts is over `Z`.
    pub free_sum_hstar: Option<UniPoly>,
}

/// The coarsest split over `Z`, verified against the ℤ-join property of the
/// Cayley faces.
pub fn split_over_z(nef: &NefPartition) -> Result<Option<ZSplit>> {
    let splits = direct_sum_splits(nef)?;
    let r = nef.r();
    let d = nef.reflexive.ambient_dim();
    let cayley = cayley_polytope(&nef.parts)?;
    for s in &splits {
        let faces = s
            .groups
            .iter()
            .map(|g| face_sublattice(&cayley, &cayley_face(&cayley, d, r, g)))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<_> = faces.iter().collect();
        let z_join = sublattice_index(&refs, PivotRule::MinAbs).is_some_and(|i| i == 1.into());
        if z_join != s.over_z {
            return Err(Error::violation(
                "nef",
                format!("split {:?}: over ℤ = {} but Cayley ℤ-join = {z_join}", s.groups, s.over_z),
            ));
        }
    }
    let singletons = splits.iter().any(|s| s.over_z && s.groups.iter().all(|g| g.len() == 1));
    let Some(best) = splits.into_iter().find(|s| s.over_z) else {
        return Ok(None);
    };
    let free_sum_hstar = if singletons {
        let hull = Polytope::from_points(d, nef.parts.iter().flat_map(|p| p.vertices().to_vec()).collect())?;
        let h = hstar_profile(&hull)?.hstar;
        let product = nef
            .parts
            .iter()
            .map(|p| Ok(hstar_profile(p)?.hstar))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(UniPoly::one(), |acc, x| &acc * &x);
        if h != product {
            return Err(Error::violation("nef", format!("free sum h* = {h}, product {product}")));
        }
        Some(h)
    } else {
        None
    };
    Ok(Some(ZSplit {
        groups: best.groups,
        free_sum_hstar,
    }))
}

/// `E_st` of the whole Cayley polytope against the product over the groups
/// of a direct-sum split. Reported, never asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitStringy {
    pub groups: Vec<Vec<usize>>,
    pub over_z: bool,
    pub whole: String,
    pub product: String,
    pub holds: bool,
    pub constant_holds: bool,
}

pub fn split_stringy_experiment(nef: &NefPartition) -> Result<Vec<SplitStringy>> {
    let whole = stringy_e(&dual_gorenstein(&cayley_polytope(&nef.parts)?)?)?.e_st;
    direct_sum_splits(nef)?
        .into_iter()
        .map(|s| {
            let product = s
                .groups
                .iter()
                .map(|g| {
                    let parts: Vec<Polytope> = g.iter().map(|&i| nef.parts[i].clone()).collect();
                    Ok(stringy_e(&dual_gorenstein(&cayley_polytope(&parts)?)?)?.e_st)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(BiPoly::constant(1), |acc, x| &acc * &x);
            Ok(SplitStringy {
                groups: s.groups,
                over_z: s.over_z,
                holds: whole == product,
                constant_holds: whole.coeff(0, 0) == product.coeff(0, 0),
                whole: whole.to_string(),
                product: product.to_string(),
            })
        })
        .collect()
}

/// Outcome of Cayley polytope → special simplex `{0 × e_i}` → partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub simplex_found: bool,
    pub reproduced: bool,
}

fn normalized_translate(p: &Polytope) -> Vec<Point> {
    let v = sorted_vertices(p);
    let base = v[0].clone();
    v.iter().map(|x| x.iter().zip(&base).map(|(a, b)| a - b).collect()).collect()
}

pub fn cayley_round_trip(nef: &NefPartition) -> Result<RoundTrip> {
    let r = nef.r();
    check_parts(r)?;
    let cayley = cayley_polytope(&nef.parts)?;
    let d = nef.reflexive.ambient_dim();
    let mut points = cayley_simplex_points(d, r);
    points.sort();
    let simplex = SpecialSimplex { points };
    let simplex_found = special_simplices(&cayley, r)?.contains(&simplex);
    let back = nef_from_simplex(&cayley, r, &simplex)?;
    let reproduced = back.parts.len() == r
        && back
            .parts
            .iter()
            .zip(&nef.parts)
            .all(|(a, b)| normalized_translate(a) == normalized_translate(b));
    Ok(RoundTrip { simplex_found, reproduced })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: usize, pts: Vec<Vec<i64>>) -> Polytope {
        Polytope::from_points(d, pts).unwrap()
    }

    fn square_parts() -> Vec<Polytope> {
        vec![poly(2, vec![vec![-1, 0], vec![1, 0]]), poly(2, vec![vec![0, -1], vec![0, 1]])]
    }

    #[test]
    fn minkowski_basics() {
        let sq = minkowski_sum(&[poly(2, vec![vec![0, 0], vec![1, 0]]), poly(2, vec![vec![0, 0], vec![0, 1]])]).unwrap();
        assert_eq!(sorted_vertices(&sq), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let tri = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let moved = minkowski_sum(&[tri.clone(), poly(2, vec![vec![3, 4]])]).unwrap();
        assert_eq!(sorted_vertices(&moved), sorted_vertices(&tri.translate(&[3, 4])));
        assert!(matches!(
            minkowski_sum(&[tri, poly(1, vec![vec![0]])]),
            Err(Error::MixedLattices)
        ));
    }

    #[test]
    fn cayley_of_two_segments() {
        let f = poly(2, vec![vec![0, 0], vec![1, 0]]);
        let g = poly(2, vec![vec![0, 0], vec![-1, 2]]);
        let c = cayley_polytope(&[f.clone(), g]).unwrap();
        assert_eq!(
            sorted_vertices(&c),
            vec![vec![-1, 2, 0], vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]
        );
        assert_eq!(cayley_polytope(&[f.clone()]).unwrap(), f);
    }

    #[test]
    fn special_simplex_examples() {
        let seg = poly(1, vec![vec![0], vec![1]]);
        let s = special_simplices(&seg, 2).unwrap();
        assert_eq!(s, vec![SpecialSimplex { points: vec![vec![0], vec![1]] }]);
        let tri = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let s = special_simplices(&tri, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].points.len(), 3);
    }

    #[test]
    fn square_partition_round_trip() {
        let nef = NefPartition::from_parts(square_parts()).unwrap();
        assert_eq!(nef_validate(&nef).unwrap(), None);
        let cayley = cayley_polytope(&nef.parts).unwrap();
        let mut points = cayley_simplex_points(2, 2);
        points.sort();
        let simplex = SpecialSimplex { points };
        assert!(special_simplices(&cayley, 2).unwrap().contains(&simplex));
        let back = nef_from_simplex(&cayley, 2, &simplex).unwrap();
        assert_eq!(back.parts.len(), 2);
        for (a, b) in back.parts.iter().zip(&nef.parts) {
            assert_eq!(sorted_vertices(a), sorted_vertices(b));
        }
        assert!(!nef_irreducible(&nef).unwrap());
        let z = split_over_z(&nef).unwrap().unwrap();
        assert_eq!(z.groups, vec![vec![0], vec![1]]);
        // diamond h* = (1 + t)^2
        assert_eq!(z.free_sum_hstar, Some(UniPoly::new(vec![1, 2, 1])));
        for e in split_stringy_experiment(&nef).unwrap() {
            assert!(e.holds);
        }
    }

    #[test]
    fn trivial_partition_is_irreducible() {
        let hexagon = poly(2, vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]]);
        let nef = NefPartition::from_parts(vec![hexagon.clone()]).unwrap();
        assert_eq!(nef_validate(&nef).unwrap(), None);
        assert!(nef_irreducible(&nef).unwrap());
        assert!(split_over_z(&nef).unwrap().is_none());
        assert_eq!(cayley_polytope(&nef.parts).unwrap(), hexagon);
    }

    #[test]
    fn invalid_candidates_are_reported() {
        let bad = NefPartition::from_parts(vec![poly(2, vec![vec![1, 0], vec![2, 0]])]).unwrap();
        assert_eq!(nef_validate(&bad).unwrap(), Some(NefInvalid::OriginMissing { part: 0 }));
        let mut wrong = NefPartition::from_parts(square_parts()).unwrap();
        wrong.reflexive = poly(2, vec![vec![-1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(nef_validate(&wrong).unwrap(), Some(NefInvalid::SumMismatch));
    }
}
