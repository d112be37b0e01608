#![allow(dead_code)]

use gorenstein::lattice::{lattice_coordinates, parse_rational};
use gorenstein::nef::cayley_polytope;
use gorenstein::Polytope;
use num_rational::BigRational;

pub fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

pub fn rows(v: &[&[&str]]) -> Vec<Vec<BigRational>> {
    v.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()
}

fn int_rows(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
    v.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Standard generators plus one extra rational generator.
pub fn extended_lattice(extra: &[&str]) -> Vec<Vec<BigRational>> {
    let d = extra.len();
    let mut gens = vec![extra.iter().map(|s| q(s)).collect::<Vec<_>>()];
    for i in 0..d {
        gens.push((0..d).map(|j| q(if i == j { "1" } else { "0" })).collect());
    }
    gens
}

pub fn poly(d: usize, pts: &[&[i64]]) -> Polytope {
    Polytope::from_points(d, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

/// A part given in standard coordinates, rewritten in the coordinates of the
/// lattice generated by `gens`.
pub fn part(d: usize, gens: Option<&[Vec<BigRational>]>, pts: &[&[i64]]) -> Polytope {
    let coords = lattice_coordinates(d, gens, &int_rows(pts)).unwrap();
    Polytope::from_points(d, coords).unwrap()
}

pub fn index_of(p: &Polytope, x: &[i64]) -> usize {
    p.vertices().iter().position(|v| v == x).unwrap()
}

/// Two segments in the plane and their Cayley polytope.
pub fn segments(last: [i64; 2]) -> (Polytope, Polytope, Polytope) {
    let f = poly(2, &[&[0, 0], &[1, 0]]);
    let g = poly(2, &[&[0, 0], &last]);
    let p = cayley_polytope(&[f.clone(), g.clone()]).unwrap();
    (f, g, p)
}

/// A segment and a rectangle in space, joined.
pub fn segment_and_rectangle() -> (Polytope, Polytope, Polytope) {
    let f = poly(3, &[&[0, 0, 0], &[1, 0, 0]]);
    let g = poly(3, &[&[0, 0, 0], &[-1, 2, 0], &[0, 0, 2], &[-1, 2, 2]]);
    let p = cayley_polytope(&[f.clone(), g.clone()]).unwrap();
    (f, g, p)
}

/// Two diamonds in complementary planes over the lattice `(1/2,..,1/2) + Z^4`.
pub fn half_lattice_diamonds() -> (Polytope, Polytope, Polytope) {
    let gens = extended_lattice(&["1/2", "1/2", "1/2", "1/2"]);
    let f = part(4, Some(&gens), &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    let g = part(4, Some(&gens), &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
    let p = cayley_polytope(&[f.clone(), g.clone()]).unwrap();
    (f, g, p)
}

pub const TETRA_F: [[i64; 6]; 4] = [[0, 0, 1, 0, 0, 0], [1, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0], [-1, 2, 0, 0, 0, 0]];
pub const TETRA_G: [[i64; 6]; 4] = [[0, 0, 0, 0, 0, 1], [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 0, 0], [0, 0, 0, -1, 2, 0]];

fn tetra_lattice() -> Vec<Vec<BigRational>> {
    extended_lattice(&["0", "0", "1/2", "0", "0", "1/2"])
}

/// Coordinates of a point of `R^6` in the lattice `(0,0,1/2,0,0,1/2) + Z^6`.
pub fn tetra_coords(x: &[i64; 6]) -> Vec<i64> {
    lattice_coordinates(6, Some(&tetra_lattice()), &int_rows(&[x])).unwrap().remove(0)
}

/// Two tetrahedra over the lattice `(0,0,1/2,0,0,1/2) + Z^6` and their Cayley
/// polytope; the first sits at height one.
pub fn half_lattice_tetrahedra() -> (Polytope, Polytope, Polytope) {
    let gens = tetra_lattice();
    let f_pts: Vec<&[i64]> = TETRA_F.iter().map(|x| x.as_slice()).collect();
    let g_pts: Vec<&[i64]> = TETRA_G.iter().map(|x| x.as_slice()).collect();
    let f = part(6, Some(&gens), &f_pts);
    let g = part(6, Some(&gens), &g_pts);
    let p = cayley_polytope(&[f.clone(), g.clone()]).unwrap();
    (f, g, p)
}

/// Vertex ids of `p` for points `(x, 1)` with `x` from the first list and
/// `(y, 0)` from the second, both in tetrahedron lattice coordinates.
pub fn tetra_face(p: &Polytope, upper: &[usize], lower: &[usize]) -> Vec<usize> {
    let mut ids = Vec::new();
    for &i in upper {
        let mut x = tetra_coords(&TETRA_F[i]);
        x.push(1);
        ids.push(index_of(p, &x));
    }
    for &i in lower {
        let mut x = tetra_coords(&TETRA_G[i]);
        x.push(0);
        ids.push(index_of(p, &x));
    }
    ids.sort_unstable();
    ids
}
