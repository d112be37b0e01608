//! Joins, Cayley joins and ℤ-joins of faces, the faces realizing equality in
//! the codegree inequality, and irreducibility.
//!
//! Polytopes are first rewritten in the lattice of their affine span, so all
//! certificates are expressed in those local coordinates.

use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{dual_gorenstein, DualPair, Side};
use crate::ehrhart::{classify_with, hstar_profile, HStarProfile};
use crate::error::{Error, Result};
use crate::lattice::{face_sublattice, lattice_isomorphic, sublattice_index, FaceLattice, Point, Polytope};
use crate::linalg::{self, big_matrix, rational, small_vec, PivotRule};
use crate::poly::BiPoly;
use crate::stringy::{s_tilde, stringy_e};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JoinKind {
    None,
    Join,
    CayleyJoin,
    ZJoin,
}

/// `⟨u, F⟩ = δ` and `⟨u, G⟩ = δ - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingFunctional {
    pub u: Point,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinCertificate {
    pub kind: JoinKind,
    pub separating_functional: Option<SeparatingFunctional>,
    /// Index of `M(F) ⊕ M(G)` in `M ⊕ Z`; computed whenever the dimensions
    /// are complementary.
    pub sublattice_index: Option<u64>,
}

impl JoinCertificate {
    fn none() -> Self {
        JoinCertificate {
            kind: JoinKind::None,
            separating_functional: None,
            sublattice_index: None,
        }
    }
}

fn face_id(fl: &FaceLattice, vertices: &[usize]) -> Result<usize> {
    fl.id_of(vertices)
        .ok_or_else(|| Error::FacePairInvalid(format!("{vertices:?} is not a face")))
}

/// Classifies the pair of faces `F`, `G` (given by vertex indices of `p`).
pub fn join_kind(p: &Polytope, f: &[usize], g: &[usize]) -> Result<JoinCertificate> {
    if p.is_empty() {
        return Err(Error::FacePairInvalid("empty polytope".into()));
    }
    let fl = p.face_lattice()?;
    let (fid, gid) = (face_id(&fl, f)?, face_id(&fl, g)?);
    let (local, _) = p.to_local()?;
    join_certificate(&local, &fl, fid, gid)
}

/// `local` must be full-dimensional with the vertex order of `fl`.
fn join_certificate(local: &Polytope, fl: &FaceLattice, fid: usize, gid: usize) -> Result<JoinCertificate> {
    let e = local.dim();
    let mut union = fl.vertex_set(fid).clone();
    union.union_with(fl.vertex_set(gid));
    if fl.dim(fid) + fl.dim(gid) != e - 1 || union.count_ones(..) != fl.num_vertices() {
        return Ok(JoinCertificate::none());
    }
    let fv = &fl.face(fid).vertices;
    let gv = &fl.face(gid).vertices;
    let separating = separating_functional(local, fv, gv)?;
    let index = {
        let parts = [fv, gv]
            .into_iter()
            .filter(|v| !v.is_empty())
            .map(|v| face_sublattice(local, v))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<_> = parts.iter().collect();
        let idx = sublattice_index(&refs, PivotRule::MinAbs)
            .ok_or_else(|| Error::inconsistency("joins", "join sublattices do not have full rank"))?;
        Some(u64::try_from(idx).map_err(|_| Error::Overflow("sublattice index"))?)
    };
    let kind = match (index, &separating) {
        (Some(1), Some(_)) => JoinKind::ZJoin,
        (Some(1), None) => {
            return Err(Error::inconsistency("joins", "ℤ-join without an integral separating functional"));
        }
        (_, Some(_)) => JoinKind::CayleyJoin,
        _ => JoinKind::Join,
    };
    Ok(JoinCertificate {
        kind,
        separating_functional: separating,
        sublattice_index: index,
    })
}

/// The unique rational `(u, δ)` with `⟨u, F⟩ = δ`, `⟨u, G⟩ = δ - 1`, when
/// it is integral.
fn separating_functional(local: &Polytope, fv: &[usize], gv: &[usize]) -> Result<Option<SeparatingFunctional>> {
    let verts = local.vertices();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (ids, level) in [(fv, 0i64), (gv, -1)] {
        for &i in ids {
            let mut row: Vec<_> = verts[i].iter().map(|&x| rational(&x.into())).collect();
            row.push(rational(&(-1).into()));
            rows.push(row);
            rhs.push(rational(&level.into()));
        }
    }
    let sol = linalg::solve_unique(&rows, &rhs)
        .ok_or_else(|| Error::inconsistency("joins", "separating functional is not unique"))?;
    if !sol.iter().all(|q| q.is_integer()) {
        return Ok(None);
    }
    let ints = small_vec(&sol.iter().map(|q| q.to_integer()).collect::<Vec<_>>())?;
    let (u, delta) = ints.split_at(local.dim() as usize);
    Ok(Some(SeparatingFunctional {
        u: u.to_vec(),
        delta: delta[0],
    }))
}

/// A face `F` with `codeg F + codeg F* = r`, its partner `G`, and the two
/// Cayley-join certificates (for `P` and for `P^×`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityPair {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub f_star: Vec<usize>,
    pub g_star: Vec<usize>,
    pub codeg_f: usize,
    pub codeg_g: usize,
    pub primal: JoinCertificate,
    pub dual: JoinCertificate,
}

fn side_profiles(side: &Side) -> Result<Vec<HStarProfile>> {
    (0..side.faces.len())
        .into_par_iter()
        .map(|f| hstar_profile(&side.polytope.face(&side.faces.face(f).vertices)))
        .collect()
}

fn equality_ids(pair: &DualPair, primal: &[HStarProfile], dual: &[HStarProfile]) -> Vec<usize> {
    let fl = &pair.primal().faces;
    (1..fl.top())
        .filter(|&f| primal[f].codegree + dual[pair.dual_face(f)].codegree == pair.index())
        .collect()
}

fn cy(p: &HStarProfile) -> i64 {
    p.degree as i64 - p.codegree as i64
}

/// Every nonempty proper face `F` with `codeg F + codeg F* = r`, with its
/// partner face and verified certificates. Each unordered pair appears twice.
pub fn equality_faces(pair: &DualPair) -> Result<Vec<EqualityPair>> {
    let (pp, dp) = rayon::join(|| side_profiles(pair.primal()), || side_profiles(pair.dual()));
    let (pp, dp) = (pp?, dp?);
    let fl = &pair.primal().faces;
    let dfl = &pair.dual().faces;
    let (local, _) = pair.primal().polytope.to_local()?;
    let (dual_local, _) = pair.dual().polytope.to_local()?;
    let top = fl.top();
    let violation = |detail: String| Error::violation("joins", detail);

    equality_ids(pair, &pp, &dp)
        .into_iter()
        .map(|f| {
            let fv = &fl.face(f).vertices;
            let rest: Vec<usize> = (0..fl.num_vertices()).filter(|v| !fv.contains(v)).collect();
            let g = fl
                .id_of(&rest)
                .ok_or_else(|| violation(format!("complement of {fv:?} is not a face")))?;
            let (fs, gs) = (pair.dual_face(f), pair.dual_face(g));
            let primal = join_certificate(&local, fl, f, g)?;
            let dual = join_certificate(&dual_local, dfl, fs, gs)?;
            if primal.kind < JoinKind::CayleyJoin || dual.kind < JoinKind::CayleyJoin {
                return Err(violation(format!(
                    "{fv:?} attains equality but the joins are {:?} and {:?}",
                    primal.kind, dual.kind
                )));
            }
            if pp[f].codegree + pp[g].codegree != pp[top].codegree
                || pp[f].degree + pp[g].degree != pp[top].degree
                || cy(&pp[f]) + cy(&pp[g]) != cy(&pp[top])
            {
                return Err(violation(format!("codegree/degree additivity fails for {fv:?}")));
            }
            for (side, id, prof) in [
                (pair.primal(), f, &pp[f]),
                (pair.primal(), g, &pp[g]),
                (pair.dual(), fs, &dp[fs]),
                (pair.dual(), gs, &dp[gs]),
            ] {
                let face = side.polytope.face(&side.faces.face(id).vertices);
                if classify_with(&face, prof)?.gorenstein_index.is_none() {
                    return Err(violation(format!("{:?} is not Gorenstein", side.faces.face(id).vertices)));
                }
            }
            Ok(EqualityPair {
                f: fv.clone(),
                g: rest,
                f_star: dfl.face(fs).vertices.clone(),
                g_star: dfl.face(gs).vertices.clone(),
                codeg_f: pp[f].codegree,
                codeg_g: pp[g].codegree,
                primal,
                dual,
            })
        })
        .collect()
}

/// No nonempty proper face `F` has `codeg F + codeg F* = r`.
pub fn is_irreducible(pair: &DualPair) -> Result<bool> {
    let (pp, dp) = rayon::join(|| side_profiles(pair.primal()), || side_profiles(pair.dual()));
    Ok(equality_ids(pair, &pp?, &dp?).is_empty())
}

/// Outcome of checking the face duality of a Cayley join. Every field other
/// than the ℤ-join ones is guaranteed; a failure is reported as an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceDuality {
    pub kind: JoinKind,
    pub g_star_index: usize,
    pub f_star_index: usize,
    /// `(G*)^×` is lattice-isomorphic to `π_G(F)`.
    pub g_star_dual_is_projection: bool,
    pub f_star_dual_is_projection: bool,
    /// `(G*)^×` is lattice-isomorphic to `F` itself.
    pub g_star_dual_is_f: bool,
    pub f_star_dual_is_g: bool,
}

/// `π_G(F)`: the lifted vertices of `F` in coordinates of `(M ⊕ Z)/M(G)`.
pub fn quotient_projection(pair: &DualPair, f: &[usize], g: &[usize]) -> Result<Polytope> {
    let cone = &pair.primal().cone;
    let n = cone.first().map_or(0, |c| c.len());
    let lifted_g: Vec<Point> = g.iter().map(|&i| cone[i].clone()).collect();
    let sat = linalg::saturated_basis(&big_matrix(&lifted_g));
    let annihilator = linalg::integer_kernel(&sat, n)
        .iter()
        .map(|r| small_vec(r))
        .collect::<Result<Vec<_>>>()?;
    let image = f
        .iter()
        .map(|&i| annihilator.iter().map(|a| linalg::dot_i64(a, &cone[i])).collect())
        .collect();
    Polytope::from_points(annihilator.len(), image)
}

fn star_side(pair: &DualPair, x: &[usize], y: &[usize]) -> Result<(usize, bool, bool)> {
    let ystar = pair.dual_face_polytope(pair.dual_face_of(y)?);
    let ystar_pair = match dual_gorenstein(&ystar) {
        Ok(p) => p,
        Err(Error::NotGorenstein) => {
            return Err(Error::violation("joins", format!("dual face of {y:?} is not Gorenstein")));
        }
        Err(e) => return Err(e),
    };
    let projection = quotient_projection(pair, x, y)?;
    let dual = &ystar_pair.dual().polytope;
    let matches_projection = lattice_isomorphic(dual, &projection)?.is_some();
    let matches_face = lattice_isomorphic(dual, &pair.primal().polytope.face(x))?.is_some();
    Ok((ystar_pair.index(), matches_projection, matches_face))
}

/// Checks that `G*` and `π_G(F)` (and symmetrically `F*` and `π_F(G)`) are
/// dual Gorenstein polytopes, and in the ℤ-join case that `G*` and `F` are.
pub fn cayley_face_duality(pair: &DualPair, f: &[usize], g: &[usize]) -> Result<FaceDuality> {
    let cert = join_kind(&pair.primal().polytope, f, g)?;
    if cert.kind < JoinKind::CayleyJoin {
        return Err(Error::NotCayleyJoin);
    }
    let (gi, g_proj, g_face) = star_side(pair, f, g)?;
    let (fi, f_proj, f_face) = star_side(pair, g, f)?;
    if !g_proj || !f_proj {
        return Err(Error::violation("joins", "dual of a star face is not the quotient projection"));
    }
    if cert.kind == JoinKind::ZJoin && (!g_face || !f_face) {
        return Err(Error::violation("joins", "ℤ-join faces are not dual to the opposite stars"));
    }
    Ok(FaceDuality {
        kind: cert.kind,
        g_star_index: gi,
        f_star_index: fi,
        g_star_dual_is_projection: g_proj,
        f_star_dual_is_projection: f_proj,
        g_star_dual_is_f: g_face,
        f_star_dual_is_g: f_face,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplicativity {
    pub kind: JoinKind,
    pub hstar: bool,
    pub s_tilde: bool,
    /// `None` when `F` or `G` is not Gorenstein.
    pub e_st: Option<bool>,
}

fn e_of(p: &Polytope) -> Result<Option<BiPoly>> {
    match dual_gorenstein(p) {
        Ok(pair) => Ok(Some(stringy_e(&pair)?.e_st)),
        Err(Error::NotGorenstein) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compares `h*`, `S̃` and `E_st` of `P` with the products over `F` and `G`.
/// For ℤ-joins all three must factor; otherwise the outcome is only reported.
pub fn multiplicativity_check(pair: &DualPair, f: &[usize], g: &[usize]) -> Result<Multiplicativity> {
    let p = &pair.primal().polytope;
    let cert = join_kind(p, f, g)?;
    let (pf, pg) = (p.face(f), p.face(g));
    let hstar = hstar_profile(p)?.hstar == &hstar_profile(&pf)?.hstar * &hstar_profile(&pg)?.hstar;
    let s = s_tilde(p)? == &s_tilde(&pf)? * &s_tilde(&pg)?;
    let e_p = stringy_e(pair)?.e_st;
    let e_st = match (e_of(&pf)?, e_of(&pg)?) {
        (Some(a), Some(b)) => Some(e_p == &a * &b),
        _ => None,
    };
    if cert.kind == JoinKind::ZJoin && !(hstar && s && e_st == Some(true)) {
        return Err(Error::violation(
            "joins",
            format!("ℤ-join of {f:?} and {g:?} is not multiplicative (h* {hstar}, S̃ {s}, E_st {e_st:?})"),
        ));
    }
    Ok(Multiplicativity {
        kind: cert.kind,
        hstar,
        s_tilde: s,
        e_st,
    })
}

/// The constant-coefficient product comparison on one equality pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantProduct {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `E_st(P;0,0) E_st(P^×;0,0)` against the product of the four face values,
/// for each unordered equality pair. Reported, never asserted.
pub fn constant_product_experiment(pair: &DualPair) -> Result<Vec<ConstantProduct>> {
    let pairs = equality_faces(pair)?;
    let lhs = stringy_e(pair)?.e_st.coeff(0, 0) * stringy_e(&pair.swapped())?.e_st.coeff(0, 0);
    let constant = |p: Polytope| -> Result<i64> {
        Ok(e_of(&p)?
            .ok_or_else(|| Error::violation("joins", "equality face is not Gorenstein"))?
            .coeff(0, 0))
    };
    pairs
        .into_iter()
        .filter(|ep| ep.f < ep.g)
        .map(|ep| {
            let primal = &pair.primal().polytope;
            let dual = &pair.dual().polytope;
            let rhs = constant(primal.face(&ep.f))?
                * constant(primal.face(&ep.g))?
                * constant(dual.face(&ep.f_star))?
                * constant(dual.face(&ep.g_star))?;
            Ok(ConstantProduct {
                f: ep.f,
                g: ep.g,
                lhs,
                rhs,
                holds: lhs == rhs,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: usize, pts: Vec<Vec<i64>>) -> Polytope {
        Polytope::from_points(d, pts).unwrap()
    }

    fn ids(p: &Polytope, pts: &[&[i64]]) -> Vec<usize> {
        pts.iter()
            .map(|x| p.vertices().iter().position(|v| v == x).unwrap())
            .collect()
    }

    #[test]
    fn segment_is_only_a_join() {
        let p = poly(1, vec![vec![0], vec![2]]);
        let c = join_kind(&p, &[0], &[1]).unwrap();
        assert_eq!(c.kind, JoinKind::Join);
        assert!(c.separating_functional.is_none());
    }

    #[test]
    fn triangle_is_z_join_of_vertex_and_edge() {
        let p = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let f = ids(&p, &[&[0, 0]]);
        let g = ids(&p, &[&[1, 0], &[0, 1]]);
        let c = join_kind(&p, &f, &g).unwrap();
        assert_eq!(c.kind, JoinKind::ZJoin);
        assert_eq!(c.sublattice_index, Some(1));
        let s = c.separating_functional.unwrap();
        for &i in &f {
            assert_eq!(linalg::dot_i64(&s.u, &p.vertices()[i]), s.delta);
        }
        for &i in &g {
            assert_eq!(linalg::dot_i64(&s.u, &p.vertices()[i]), s.delta - 1);
        }
        // opposite edges of the square have too large a dimension sum
        let sq = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let c = join_kind(&sq, &ids(&sq, &[&[0, 0], &[1, 0]]), &ids(&sq, &[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(c.kind, JoinKind::None);
        assert!(matches!(join_kind(&sq, &[0, 3], &[1]), Err(Error::FacePairInvalid(_))));
    }

    #[test]
    fn index_two_cayley_join() {
        let p = poly(3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 2, 0]]);
        let c = join_kind(&p, &ids(&p, &[&[0, 0, 1], &[1, 0, 1]]), &ids(&p, &[&[0, 0, 0], &[-1, 2, 0]])).unwrap();
        assert_eq!(c.kind, JoinKind::CayleyJoin);
        assert_eq!(c.sublattice_index, Some(2));
    }

    #[test]
    fn reflexive_polytopes_are_irreducible() {
        let sq = poly(2, vec![vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]]);
        let pair = dual_gorenstein(&sq).unwrap();
        assert!(is_irreducible(&pair).unwrap());
        assert!(equality_faces(&pair).unwrap().is_empty());
    }

    #[test]
    fn triangle_equality_faces_and_duality() {
        let p = poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let pair = dual_gorenstein(&p).unwrap();
        assert_eq!(pair.index(), 3);
        let eq = equality_faces(&pair).unwrap();
        // each vertex with its opposite edge, in both orders
        assert_eq!(eq.len(), 6);
        assert!(!is_irreducible(&pair).unwrap());
        for e in &eq {
            assert_eq!(e.f.len() + e.g.len(), 3);
            assert_eq!(e.primal.kind, JoinKind::ZJoin);
            assert_eq!(e.codeg_f + e.codeg_g, 3);
        }
        let d = cayley_face_duality(&pair, &eq[0].f, &eq[0].g).unwrap();
        assert!(d.g_star_dual_is_f && d.f_star_dual_is_g);
        let m = multiplicativity_check(&pair, &eq[0].f, &eq[0].g).unwrap();
        assert!(m.hstar && m.s_tilde && m.e_st == Some(true));
        for c in constant_product_experiment(&pair).unwrap() {
            assert!(c.holds);
        }
    }
}
