//! Dual Gorenstein polytopes and the face correspondence `F ↦ F*`.
//!
//! Both sides live in cone coordinates. The primal cone is generated by the
//! lifted vertices `(q, 1)` of `P` (with `q` in the coordinates of the affine
//! span lattice); the dual cone by the primitive facet normals `(a, b)`. The
//! dual polytope `P^×` is the convex hull of those normals.

use crate::ehrhart::{hstar_profile, local_gorenstein};
use crate::error::{Error, Result};
use crate::lattice::{FaceLattice, Point, Polytope};
use crate::linalg::dot_i64;

/// One side of a dual pair.
#[derive(Debug, Clone)]
pub struct Side {
    /// The polytope as given (primal) or as the hull of the cone generators
    /// (dual).
    pub polytope: Polytope,
    /// Generators of the side's Gorenstein cone, aligned with the polytope's
    /// vertex order.
    pub cone: Vec<Point>,
    /// The functional that is 1 on every generator.
    pub height: Point,
    pub faces: FaceLattice,
}

#[derive(Debug, Clone)]
pub struct DualPair {
    primal: Side,
    dual: Side,
    index: usize,
    face_map: Vec<usize>,
    inverse: Vec<usize>,
}

impl DualPair {
    pub fn primal(&self) -> &Side {
        &self.primal
    }

    pub fn dual(&self) -> &Side {
        &self.dual
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn dim(&self) -> isize {
        self.primal.polytope.dim()
    }

    /// `dim P + 1 - 2r`
    pub fn cy_dim(&self) -> i64 {
        self.dim() as i64 + 1 - 2 * self.index as i64
    }

    /// `n_C`, the height functional of the primal cone.
    pub fn n(&self) -> &[i64] {
        &self.primal.height
    }

    /// `m_{C^∨}`, the lifted interior point of `rP`.
    pub fn m(&self) -> &[i64] {
        &self.dual.height
    }

    /// `F*` for a primal face id.
    pub fn dual_face(&self, f: usize) -> usize {
        self.face_map[f]
    }

    /// `F*` for a face given by primal vertex indices.
    pub fn dual_face_of(&self, vertices: &[usize]) -> Result<usize> {
        let id = self
            .primal
            .faces
            .id_of(vertices)
            .ok_or_else(|| Error::UnknownFace(vertices.to_vec()))?;
        Ok(self.face_map[id])
    }

    /// The primal face `G` with `G* = g` for a dual face id.
    pub fn primal_face(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// The same pair seen from the dual side.
    pub fn swapped(&self) -> DualPair {
        DualPair {
            primal: self.dual.clone(),
            dual: self.primal.clone(),
            index: self.index,
            face_map: self.inverse.clone(),
            inverse: self.face_map.clone(),
        }
    }

    pub fn primal_face_polytope(&self, f: usize) -> Polytope {
        self.primal.polytope.face(&self.primal.faces.face(f).vertices)
    }

    pub fn dual_face_polytope(&self, g: usize) -> Polytope {
        self.dual.polytope.face(&self.dual.faces.face(g).vertices)
    }
}

/// Builds `P^×` and the face correspondence for a Gorenstein polytope.
pub fn dual_gorenstein(p: &Polytope) -> Result<DualPair> {
    if p.is_empty() {
        return Err(Error::NotGorenstein);
    }
    let profile = hstar_profile(p)?;
    let g = local_gorenstein(p, &profile)?.ok_or(Error::NotGorenstein)?;
    let r = g.index;
    let form = p.local_form()?;
    let e = form.dim();

    let primal_cone: Vec<Point> = form
        .points
        .iter()
        .map(|q| {
            let mut v = q.clone();
            v.push(1);
            v
        })
        .collect();
    let mut n = vec![0; e + 1];
    n[e] = 1;
    let mut m = g.interior_local.clone();
    m.push(r as i64);

    let dual_cone: Vec<Point> = if e == 0 {
        vec![vec![1]]
    } else {
        form.facets
            .iter()
            .map(|f| {
                let mut v = f.normal.clone();
                v.push(f.offset);
                v
            })
            .collect()
    };
    for (facet, y) in dual_cone.iter().enumerate() {
        let value = dot_i64(y, &m);
        if value != 1 {
            return Err(Error::GorensteinHeightViolation { facet, value });
        }
    }
    let dual_poly = Polytope::from_points(e + 1, dual_cone.clone())?;
    if dual_poly.vertices() != dual_cone.as_slice() {
        return Err(Error::inconsistency("duality", "a facet normal is not a vertex of the dual"));
    }

    let primal = Side {
        polytope: p.clone(),
        cone: primal_cone,
        height: n,
        faces: p.face_lattice()?,
    };
    let dual = Side {
        faces: dual_poly.face_lattice()?,
        polytope: dual_poly,
        cone: dual_cone,
        height: m,
    };
    let face_map = correspondence(&primal, &dual)?;
    let inverse = correspondence(&dual, &primal)?;
    for (f, &g) in face_map.iter().enumerate() {
        if inverse[g] != f {
            return Err(Error::inconsistency("duality", "face map is not a bijection"));
        }
        if primal.faces.dim(f) + dual.faces.dim(g) != e as isize - 1 {
            return Err(Error::inconsistency(
                "duality",
                format!("dim F + dim F* != {} for face {f}", e as isize - 1),
            ));
        }
    }
    let index = dot_i64(&primal.height, &dual.height);
    if index != r as i64 {
        return Err(Error::inconsistency("duality", format!("<n, m> = {index}, codegree {r}")));
    }
    Ok(DualPair {
        primal,
        dual,
        index: r,
        face_map,
        inverse,
    })
}

/// `F ↦ {y : ⟨y, x⟩ = 0 for x ∈ F}` as face ids.
fn correspondence(from: &Side, to: &Side) -> Result<Vec<usize>> {
    (0..from.faces.len())
        .map(|f| {
            let verts = &from.faces.face(f).vertices;
            let zeros: Vec<usize> = (0..to.cone.len())
                .filter(|&j| verts.iter().all(|&i| dot_i64(&to.cone[j], &from.cone[i]) == 0))
                .collect();
            to.faces
                .id_of(&zeros)
                .ok_or_else(|| Error::inconsistency("duality", format!("{zeros:?} is not a face")))
        })
        .collect()
}
