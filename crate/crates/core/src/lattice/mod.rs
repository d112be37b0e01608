//! Lattice polytopes in exact integer coordinates.
//!
//! A [`Polytope`] stores its vertices in coordinates of a fixed lattice basis
//! (so the lattice is always `Z^d`). Polytopes that are not full-dimensional
//! are handled through an [`AffineChart`]: a unimodular identification of the
//! lattice points of the affine span with `Z^dim`.

mod faces;
pub(crate) mod hull;
mod iso;
mod points;
mod sublattice;

pub use faces::{Face, FaceLattice};
pub use iso::{lattice_isomorphic, AffineMap};
pub use points::lattice_points;
pub(crate) use points::PointEnumerator;
pub use sublattice::{face_sublattice, sublattice_index, FaceSublattice};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, big_matrix, small_vec, PivotRule};
use hull::RawFacet;

pub type Point = Vec<i64>;

/// A lattice polytope given by its irredundant vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Point>,
    dim: isize,
}

/// Halfspace `⟨normal, x⟩ + offset ≥ 0` with a primitive integral normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Hyperplane {
    pub fn eval(&self, x: &[i64]) -> i64 {
        linalg::dot_i64(&self.normal, x) + self.offset
    }
}

impl Polytope {
    pub fn empty(ambient_dim: usize) -> Self {
        Polytope {
            ambient_dim,
            vertices: Vec::new(),
            dim: -1,
        }
    }

    /// Convex hull of integral points. Duplicates and non-vertices are dropped;
    /// surviving vertices keep their first-occurrence order.
    pub fn from_points(ambient_dim: usize, points: Vec<Point>) -> Result<Self> {
        let mut unique: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        if unique.is_empty() {
            return Ok(Polytope::empty(ambient_dim));
        }
        let chart = AffineChart::of_points(&unique)?;
        let dim = chart.dim();
        if dim == 0 {
            return Ok(Polytope {
                ambient_dim,
                vertices: unique,
                dim: 0,
            });
        }
        let local: Vec<Point> = unique.iter().map(|p| chart.to_local(p)).collect();
        let facets = hull::full_dim_facets(&local)?;
        let vertices = unique
            .into_iter()
            .enumerate()
            .filter(|(i, _)| {
                let normals: Vec<Vec<i64>> = facets
                    .iter()
                    .filter(|f| f.incident.contains(*i))
                    .map(|f| f.normal.clone())
                    .collect();
                linalg::rank_i64(&normals) == dim
            })
            .map(|(_, p)| p)
            .collect();
        Ok(Polytope {
            ambient_dim,
            vertices,
            dim: dim as isize,
        })
    }

    /// Builds a polytope from points known to be its vertices (e.g. the
    /// vertex subset of a face). Only the dimension is computed.
    pub(crate) fn from_vertices_unchecked(ambient_dim: usize, vertices: Vec<Point>) -> Self {
        let dim = if vertices.is_empty() {
            -1
        } else {
            affine_rank(&vertices) as isize
        };
        Polytope {
            ambient_dim,
            vertices,
            dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim as isize
    }

    /// The sub-polytope spanned by the given vertices (assumed to be a face).
    pub fn face(&self, vertex_ids: &[usize]) -> Polytope {
        Polytope::from_vertices_unchecked(
            self.ambient_dim,
            vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect(),
        )
    }

    pub fn translate(&self, t: &[i64]) -> Polytope {
        Polytope {
            ambient_dim: self.ambient_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
                .collect(),
            dim: self.dim,
        }
    }

    pub fn chart(&self) -> Result<AffineChart> {
        if self.is_empty() {
            return Err(Error::EmptyFace);
        }
        if self.is_full_dimensional() {
            return Ok(AffineChart::identity(self.ambient_dim));
        }
        AffineChart::of_points(&self.vertices)
    }

    /// Full-dimensional representation inside the lattice of the affine span.
    pub fn local_form(&self) -> Result<LocalForm> {
        let chart = self.chart()?;
        let points: Vec<Point> = self.vertices.iter().map(|v| chart.to_local(v)).collect();
        let facets = if self.dim >= 1 {
            hull::full_dim_facets(&points)?
        } else {
            Vec::new()
        };
        Ok(LocalForm {
            chart,
            points,
            facets,
        })
    }

    /// The polytope rewritten in the coordinates of its affine-span lattice.
    pub fn to_local(&self) -> Result<(Polytope, AffineChart)> {
        let chart = self.chart()?;
        let verts = self.vertices.iter().map(|v| chart.to_local(v)).collect();
        let dim = chart.dim();
        Ok((
            Polytope {
                ambient_dim: dim,
                vertices: verts,
                dim: dim as isize,
            },
            chart,
        ))
    }

    /// Facet halfspaces in canonical order. For a polytope that is not
    /// full-dimensional they are expressed in the coordinates of
    /// [`Polytope::chart`].
    pub fn facets(&self) -> Result<Vec<Hyperplane>> {
        if self.dim <= 0 {
            return Err(Error::DegeneratePolytope { dim: self.dim });
        }
        Ok(self
            .local_form()?
            .facets
            .into_iter()
            .map(|f| Hyperplane {
                normal: f.normal,
                offset: f.offset,
            })
            .collect())
    }

    /// Membership of a lattice point in `k·P` (closed or relative interior).
    pub fn contains_scaled(&self, x: &[i64], k: i64, interior: bool) -> Result<bool> {
        if self.is_empty() {
            return Ok(false);
        }
        let form = self.local_form()?;
        form.contains_scaled(x, k, interior)
    }

    pub fn face_lattice(&self) -> Result<FaceLattice> {
        FaceLattice::new(self)
    }
}

/// Full-dimensional representation of a nonempty polytope.
#[derive(Debug, Clone)]
pub struct LocalForm {
    pub chart: AffineChart,
    pub points: Vec<Point>,
    pub(crate) facets: Vec<RawFacet>,
}

impl LocalForm {
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        self.facets
            .iter()
            .map(|f| Hyperplane {
                normal: f.normal.clone(),
                offset: f.offset,
            })
            .collect()
    }

    pub fn contains_scaled(&self, x: &[i64], k: i64, interior: bool) -> Result<bool> {
        let Some(local) = self.chart.try_to_local_scaled(x, k) else {
            return Ok(false);
        };
        if self.dim() == 0 {
            return Ok(true);
        }
        let slack = if interior { 1 } else { 0 };
        Ok(self
            .facets
            .iter()
            .all(|f| linalg::dot_i64(&f.normal, &local) + k * f.offset >= slack))
    }
}

fn affine_rank(points: &[Point]) -> usize {
    let base = &points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank_i64(&diffs)
}

/// Unimodular coordinates on the lattice points of an affine subspace.
///
/// `to_local(x)` gives the first `dim` entries of `U (x - origin)`, where `U`
/// is unimodular and the remaining entries vanish exactly on the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineChart {
    origin: Point,
    transform: Vec<Vec<i64>>,
    basis: Vec<Point>,
    dim: usize,
}

impl AffineChart {
    pub fn identity(n: usize) -> Self {
        let eye: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        AffineChart {
            origin: vec![0; n],
            transform: eye.clone(),
            basis: eye,
            dim: n,
        }
    }

    pub fn of_points(points: &[Point]) -> Result<Self> {
        let origin = points[0].clone();
        let n = origin.len();
        let diffs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect())
            .collect();
        if diffs.is_empty() || diffs.iter().all(|d| d.iter().all(|&x| x == 0)) {
            return Ok(AffineChart {
                origin,
                transform: AffineChart::identity(n).transform,
                basis: Vec::new(),
                dim: 0,
            });
        }
        // columns of D are the difference vectors
        let d = linalg::transpose(&big_matrix(&diffs));
        let snf = linalg::smith(&d, PivotRule::MinAbs);
        let r = snf.rank();
        let transform = snf
            .left
            .iter()
            .map(|row| small_vec(row))
            .collect::<Result<Vec<_>>>()?;
        let basis = (0..r)
            .map(|j| small_vec(&snf.left_inv.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineChart {
            origin,
            transform,
            basis,
            dim: r,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    /// Lattice basis of the linear part of the span.
    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    fn full_coords(&self, x: &[i64], k: i64) -> Vec<i64> {
        let diff: Vec<i64> = x.iter().zip(&self.origin).map(|(a, b)| a - k * b).collect();
        self.transform.iter().map(|row| linalg::dot_i64(row, &diff)).collect()
    }

    /// Local coordinates of a lattice point of the span.
    pub fn to_local(&self, x: &[i64]) -> Point {
        self.full_coords(x, 1)[..self.dim].to_vec()
    }

    /// Local coordinates of `x` regarded as a point of the `k`-th dilate of the
    /// span, or `None` when `x` is off that affine subspace.
    pub fn try_to_local_scaled(&self, x: &[i64], k: i64) -> Option<Point> {
        let full = self.full_coords(x, k);
        full[self.dim..].iter().all(|&v| v == 0).then(|| full[..self.dim].to_vec())
    }

    pub fn from_local(&self, c: &[i64]) -> Point {
        self.from_local_scaled(c, 1)
    }

    /// The point `k·origin + Σ c_i b_i`.
    pub fn from_local_scaled(&self, c: &[i64], k: i64) -> Point {
        let mut x: Vec<i64> = self.origin.iter().map(|o| k * o).collect();
        for (ci, b) in c.iter().zip(&self.basis) {
            for (xj, bj) in x.iter_mut().zip(b) {
                *xj += ci * bj;
            }
        }
        x
    }
}

/// Rational literal reader shared by the file formats.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Rewrites rational vertices in coordinates of a basis of the lattice
/// generated by `lattice_generators` (the standard lattice when absent) and
/// returns the resulting lattice polytope.
pub fn normalize_polytope(
    ambient_dim: usize,
    lattice_generators: Option<&[Vec<BigRational>]>,
    raw_vertices: &[Vec<BigRational>],
) -> Result<Polytope> {
    let points = lattice_coordinates(ambient_dim, lattice_generators, raw_vertices)?;
    Polytope::from_points(ambient_dim, points)
}

/// Integer coordinates of rational points with respect to a basis of the
/// lattice generated by `lattice_generators`. The basis depends only on the
/// generators, so separate calls with the same generators agree.
pub fn lattice_coordinates(
    ambient_dim: usize,
    lattice_generators: Option<&[Vec<BigRational>]>,
    raw_vertices: &[Vec<BigRational>],
) -> Result<Vec<Point>> {
    for v in raw_vertices.iter().chain(lattice_generators.unwrap_or(&[]).iter()) {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
    }
    let points = match lattice_generators {
        None => raw_vertices
            .iter()
            .enumerate()
            .map(|(index, v)| {
                v.iter()
                    .map(|q| {
                        if q.is_integer() {
                            linalg::small(&q.to_integer())
                        } else {
                            Err(Error::NonLatticeVertex { index })
                        }
                    })
                    .collect::<Result<Point>>()
            })
            .collect::<Result<Vec<_>>>()?,
        Some(gens) => {
            let den = gens
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let scaled: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|g| g.iter().map(|q| q.numer() * (&den / q.denom())).collect())
                .collect();
            let basis = linalg::lattice_basis(&scaled);
            if basis.len() != ambient_dim {
                return Err(Error::RankDeficientLattice {
                    rank: basis.len(),
                    expected: ambient_dim,
                });
            }
            // vertex x = Σ c_i (b_i / den): solve B^T c = den·x
            let bt: Vec<Vec<BigRational>> = (0..ambient_dim)
                .map(|j| basis.iter().map(|b| linalg::rational(&b[j])).collect())
                .collect();
            let den_q = linalg::rational(&den);
            raw_vertices
                .iter()
                .enumerate()
                .map(|(index, v)| {
                    let rhs: Vec<BigRational> = v.iter().map(|q| q * &den_q).collect();
                    let c = linalg::solve_unique(&bt, &rhs).ok_or(Error::NonLatticeVertex { index })?;
                    c.iter()
                        .map(|q| {
                            if q.is_integer() {
                                linalg::small(&q.to_integer())
                            } else {
                                Err(Error::NonLatticeVertex { index })
                            }
                        })
                        .collect::<Result<Point>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(points)
}
