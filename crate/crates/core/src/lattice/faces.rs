use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::Polytope;
use crate::error::{Error, Result};

/// A face given by the indices of the polytope vertices it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: isize,
}

impl Face {
    pub fn rank(&self) -> usize {
        (self.dim + 1) as usize
    }
}

/// All faces of a nonempty polytope, `∅` and `P` included, sorted by
/// `(dim, vertex indices)`. Face ids are positions in that order, so `∅` has
/// id `0` and `P` has the last id.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    faces: Vec<Face>,
    sets: Vec<FixedBitSet>,
    lookup: HashMap<Vec<usize>, usize>,
    above: Vec<FixedBitSet>,
    num_vertices: usize,
}

impl FaceLattice {
    pub fn new(p: &Polytope) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptyFace);
        }
        let n = p.vertices().len();
        let facet_sets = if p.dim() >= 1 {
            let form = p.local_form()?;
            form.facets.iter().map(|f| f.incident.clone()).collect()
        } else {
            Vec::new()
        };
        Ok(Self::from_facet_sets(n, &facet_sets, p.dim()))
    }

    /// Closure of the facet vertex sets under intersection.
    pub(crate) fn from_facet_sets(n: usize, facet_sets: &[FixedBitSet], dim: isize) -> Self {
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut all = vec![full.clone()];
        seen.insert(full, ());
        let mut cursor = 0;
        while cursor < all.len() {
            let current = all[cursor].clone();
            cursor += 1;
            for f in facet_sets {
                let mut s = current.clone();
                s.intersect_with(f);
                if !seen.contains_key(&s) {
                    seen.insert(s.clone(), ());
                    all.push(s);
                }
            }
        }
        let empty = FixedBitSet::with_capacity(n);
        if !seen.contains_key(&empty) {
            all.push(empty);
        }
        // dimensions from the grading: dim S = 1 + max dim of proper subfaces
        all.sort_by_key(|s| s.count_ones(..));
        let mut dims: Vec<isize> = vec![-1; all.len()];
        for i in 1..all.len() {
            let mut best = -1isize;
            for j in 0..i {
                if dims[j] + 1 > best && all[j] != all[i] && all[j].is_subset(&all[i]) {
                    best = dims[j] + 1;
                }
            }
            dims[i] = best;
        }
        debug_assert_eq!(dims[all.len() - 1], dim);
        let mut order: Vec<(isize, Vec<usize>, FixedBitSet)> = all
            .into_iter()
            .zip(dims)
            .map(|(s, d)| (d, s.ones().collect(), s))
            .collect();
        order.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let faces: Vec<Face> = order
            .iter()
            .map(|(d, v, _)| Face {
                vertices: v.clone(),
                dim: *d,
            })
            .collect();
        let sets: Vec<FixedBitSet> = order.into_iter().map(|(_, _, s)| s).collect();
        let lookup = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        let m = faces.len();
        let above = (0..m)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(m);
                for j in 0..m {
                    if faces[j].dim >= faces[i].dim && sets[i].is_subset(&sets[j]) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        FaceLattice {
            faces,
            sets,
            lookup,
            above,
            num_vertices: n,
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn dim(&self, id: usize) -> isize {
        self.faces[id].dim
    }

    pub fn rank(&self, id: usize) -> usize {
        self.faces[id].rank()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn vertex_set(&self, id: usize) -> &FixedBitSet {
        &self.sets[id]
    }

    /// Id of the face with exactly these vertex indices.
    pub fn id_of(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        v.dedup();
        self.lookup.get(&v).copied()
    }

    /// Smallest face containing the given vertices.
    pub fn closure(&self, vertices: &[usize]) -> usize {
        let mut s = FixedBitSet::with_capacity(self.num_vertices);
        for &v in vertices {
            s.insert(v);
        }
        (0..self.faces.len())
            .find(|&i| s.is_subset(&self.sets[i]))
            .expect("the top face contains every vertex")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    /// Faces `c` with `a ≤ c`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Faces in the interval `[a, b]`, in canonical order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        if !self.leq(a, b) {
            return Vec::new();
        }
        self.above[a].ones().filter(|&c| self.leq(c, b)).collect()
    }

    /// Number of faces of each dimension `-1..=dim P`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces[self.top()].dim;
        let mut f = vec![0; (top + 2) as usize];
        for face in &self.faces {
            f[(face.dim + 1) as usize] += 1;
        }
        f
    }

    /// Ids of the faces of a given dimension.
    pub fn faces_of_dim(&self, dim: isize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == dim).collect()
    }

    /// Every interval of rank at least one has as many elements of even as of
    /// odd rank.
    pub fn is_eulerian(&self) -> bool {
        let n = self.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, s) in self.above.iter().enumerate() {
            for b in s.ones() {
                down[b].insert(a);
            }
        }
        let mut even = FixedBitSet::with_capacity(n);
        for a in 0..n {
            if self.rank(a) % 2 == 0 {
                even.insert(a);
            }
        }
        (0..n).all(|a| {
            self.above[a].ones().filter(|&b| b != a).all(|b| {
                let mut members = self.above[a].clone();
                members.intersect_with(&down[b]);
                2 * members.intersection(&even).count() == members.count_ones(..)
            })
        })
    }
}
