use num_bigint::BigInt;

use super::{Point, Polytope};
use crate::error::{Error, Result};
use crate::linalg::{self, big_matrix, small_vec, PivotRule};

/// `M(F) = lin(F × {1}) ∩ (M ⊕ Z)` for a nonempty face `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSublattice {
    pub face: Vec<usize>,
    pub basis: Vec<Point>,
}

impl FaceSublattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Integral basis of `M(F)` where `F` is the face of `p` with the given
/// vertex indices.
pub fn face_sublattice(p: &Polytope, face: &[usize]) -> Result<FaceSublattice> {
    if face.is_empty() {
        return Err(Error::EmptyFace);
    }
    if let Some(&bad) = face.iter().find(|&&i| i >= p.vertices().len()) {
        return Err(Error::UnknownFace(vec![bad]));
    }
    let lifted: Vec<Vec<i64>> = face
        .iter()
        .map(|&i| {
            let mut v = p.vertices()[i].clone();
            v.push(1);
            v
        })
        .collect();
    let basis = linalg::saturated_basis(&big_matrix(&lifted))
        .iter()
        .map(|r| small_vec(r))
        .collect::<Result<Vec<_>>>()?;
    let mut face = face.to_vec();
    face.sort_unstable();
    Ok(FaceSublattice { face, basis })
}

/// Index of `M(F_1) ⊕ .. ⊕ M(F_k)` in `M ⊕ Z` under the natural map, or
/// `None` when the map is not injective with full-rank image.
pub fn sublattice_index(parts: &[&FaceSublattice], rule: PivotRule) -> Option<BigInt> {
    let rows: Vec<Point> = parts.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    let n = rows.first()?.len();
    if rows.len() != n {
        return None;
    }
    linalg::index_in_ambient(&big_matrix(&rows), rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every row of `b` is an integer combination of the independent rows of
    /// `a`, and vice versa.
    fn same_lattice(a: &[Point], b: &[Point]) -> bool {
        fn inside(x: &[i64], basis: &[Point]) -> bool {
            let cols: Vec<Vec<num_rational::BigRational>> = (0..x.len())
                .map(|j| basis.iter().map(|r| num_rational::BigRational::from_integer(r[j].into())).collect())
                .collect();
            let rhs: Vec<_> = x.iter().map(|&v| num_rational::BigRational::from_integer(v.into())).collect();
            linalg::solve_unique(&cols, &rhs).is_some_and(|c| c.iter().all(|q| q.is_integer()))
        }
        a.len() == b.len() && b.iter().all(|x| inside(x, a)) && a.iter().all(|x| inside(x, b))
    }

    #[test]
    fn vertex_face() {
        let p = Polytope::from_points(2, vec![vec![0, 0], vec![2, 1], vec![0, 3]]).unwrap();
        let s = face_sublattice(&p, &[1]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.basis[0] == vec![2, 1, 1] || s.basis[0] == vec![-2, -1, -1]);
    }

    #[test]
    fn horizontal_segment() {
        let p = Polytope::from_points(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let s = face_sublattice(&p, &[0, 1]).unwrap();
        assert!(same_lattice(&s.basis, &[vec![0, 0, 1], vec![1, 0, 0]]));
    }

    #[test]
    fn cayley_segments_have_index_two() {
        let p = Polytope::from_points(3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 2, 0]]).unwrap();
        let f = face_sublattice(&p, &[0, 1]).unwrap();
        let g = face_sublattice(&p, &[2, 3]).unwrap();
        assert!(same_lattice(&g.basis, &[vec![0, 0, 0, 1], vec![-1, 2, 0, 0]]));
        for rule in [PivotRule::MinAbs, PivotRule::FirstNonzero] {
            assert_eq!(sublattice_index(&[&f, &g], rule), Some(BigInt::from(2)));
        }
    }

    #[test]
    fn empty_face_rejected() {
        let p = Polytope::from_points(1, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(face_sublattice(&p, &[]), Err(Error::EmptyFace));
    }
}
