//! g- and h-polynomials of Eulerian posets.
//!
//! For an Eulerian poset of rank `e > 0`,
//! `h = Σ_{0̂ < x ≤ 1̂} (t-1)^{ρ(x)-1} g([x, 1̂])` and `g = τ_{<e/2}((1-t) h)`,
//! with `g = h = 1` in rank 0.

use dashmap::DashMap;
use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::FaceLattice;
use crate::poly::UniPoly;

/// A finite graded poset with `0̂` and `1̂`. Elements are `0..len()`.
#[derive(Debug, Clone)]
pub struct EulerianPoset {
    rank: Vec<usize>,
    /// `up[a]` holds every `b` with `a ≤ b`.
    up: Vec<FixedBitSet>,
    bottom: usize,
    top: usize,
}

impl EulerianPoset {
    /// Validates gradedness, the bounds and the Eulerian property.
    pub fn new(rank: Vec<usize>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = rank.len();
        if n == 0 || up.len() != n {
            return Err(Error::NotEulerian("empty poset".into()));
        }
        let bottom = (0..n)
            .find(|&a| up[a].count_ones(..) == n)
            .ok_or_else(|| Error::NotEulerian("no minimum".into()))?;
        let top = (0..n)
            .find(|&b| (0..n).all(|a| up[a].contains(b)))
            .ok_or_else(|| Error::NotEulerian("no maximum".into()))?;
        let p = EulerianPoset { rank, up, bottom, top };
        p.check()?;
        Ok(p)
    }

    pub(crate) fn from_face_lattice_unchecked(fl: &FaceLattice) -> Self {
        EulerianPoset {
            rank: (0..fl.len()).map(|i| fl.rank(i)).collect(),
            up: (0..fl.len()).map(|i| fl.up_set(i).clone()).collect(),
            bottom: fl.bottom(),
            top: fl.top(),
        }
    }

    pub fn from_face_lattice(fl: &FaceLattice) -> Result<Self> {
        let p = Self::from_face_lattice_unchecked(fl);
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        let down = down_sets(&self.up);
        let mut even = FixedBitSet::with_capacity(n);
        for a in 0..n {
            if self.rank[a] % 2 == 0 {
                even.insert(a);
            }
        }
        for a in 0..n {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                if self.rank[b] <= self.rank[a] {
                    return Err(Error::NotEulerian(format!("rank does not increase from {a} to {b}")));
                }
                let mut members = self.up[a].clone();
                members.intersect_with(&down[b]);
                let total = members.count_ones(..);
                // a cover must raise the rank by exactly one
                if total == 2 && self.rank[b] != self.rank[a] + 1 {
                    return Err(Error::NotEulerian(format!("{b} covers {a} but skips a rank")));
                }
                let evens = members.intersection(&even).count();
                if 2 * evens != total {
                    return Err(Error::NotEulerian(format!("interval [{a}, {b}] is unbalanced")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank_of(&self, a: usize) -> usize {
        self.rank[a]
    }

    /// `ρ(1̂) - ρ(0̂)`
    pub fn rank(&self) -> usize {
        self.rank[self.top] - self.rank[self.bottom]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    fn interval_members(&self, a: usize, b: usize) -> Vec<usize> {
        self.up[a].ones().filter(|&c| self.leq(c, b)).collect()
    }

    /// The interval `[a, b]`, order-reversed when `dualize` is set, with
    /// ranks shifted to start at 0.
    pub fn interval(&self, a: usize, b: usize, dualize: bool) -> Result<EulerianPoset> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable);
        }
        let members = self.interval_members(a, b);
        let pos = |x: usize| members.iter().position(|&m| m == x).expect("member");
        let n = members.len();
        let base = self.rank[a];
        let top_rank = self.rank[b] - base;
        let rank: Vec<usize> = members
            .iter()
            .map(|&x| {
                let r = self.rank[x] - base;
                if dualize {
                    top_rank - r
                } else {
                    r
                }
            })
            .collect();
        let up: Vec<FixedBitSet> = members
            .iter()
            .map(|&x| {
                let mut s = FixedBitSet::with_capacity(n);
                for &y in &members {
                    let rel = if dualize { self.leq(y, x) } else { self.leq(x, y) };
                    if rel {
                        s.insert(pos(y));
                    }
                }
                s
            })
            .collect();
        let (bottom, top) = if dualize { (pos(b), pos(a)) } else { (pos(a), pos(b)) };
        Ok(EulerianPoset { rank, up, bottom, top })
    }

    pub fn dual(&self) -> EulerianPoset {
        self.interval(self.bottom, self.top, true).expect("bottom ≤ top")
    }

    /// Product poset `P × Q` with the componentwise order.
    pub fn product(&self, other: &EulerianPoset) -> EulerianPoset {
        let m = other.len();
        let n = self.len() * m;
        let idx = |a: usize, b: usize| a * m + b;
        let mut rank = vec![0; n];
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..self.len() {
            for b in 0..m {
                rank[idx(a, b)] = self.rank[a] - self.rank[self.bottom] + other.rank[b] - other.rank[other.bottom];
                for c in self.up[a].ones() {
                    for d in other.up[b].ones() {
                        up[idx(a, b)].insert(idx(c, d));
                    }
                }
            }
        }
        EulerianPoset {
            rank,
            up,
            bottom: idx(self.bottom, other.bottom),
            top: idx(self.top, other.top),
        }
    }

    /// Boolean lattice of subsets of a `k`-set.
    pub fn boolean(k: usize) -> EulerianPoset {
        let n = 1usize << k;
        let rank = (0..n).map(|s| s.count_ones() as usize).collect();
        let up = (0..n)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if a & b == a {
                        s.insert(b);
                    }
                }
                s
            })
            .collect();
        EulerianPoset {
            rank,
            up,
            bottom: 0,
            top: n - 1,
        }
    }
}

pub(crate) fn down_sets(up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = up.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (a, s) in up.iter().enumerate() {
        for b in s.ones() {
            down[b].insert(a);
        }
    }
    down
}

/// `(h, g)` of an Eulerian poset.
pub fn gh_poly(poset: &EulerianPoset) -> (UniPoly, UniPoly) {
    let table = GTable::new(poset.clone());
    let (a, b) = (poset.bottom(), poset.top());
    (table.h(a, b, false), table.g(a, b, false))
}

/// Memoized `g([a, b])` and `g([a, b]^*)` over one poset, shared by every
/// computation on that poset. Concurrent inserts are idempotent.
#[derive(Debug)]
pub struct GTable {
    poset: EulerianPoset,
    memo: DashMap<(usize, usize, bool), UniPoly>,
}

impl GTable {
    pub fn new(poset: EulerianPoset) -> Self {
        GTable {
            poset,
            memo: DashMap::new(),
        }
    }

    pub fn for_face_lattice(fl: &FaceLattice) -> Self {
        Self::new(EulerianPoset::from_face_lattice_unchecked(fl))
    }

    pub fn poset(&self) -> &EulerianPoset {
        &self.poset
    }

    /// `h([a, b])`, or of the dual interval when `dual` is set.
    pub fn h(&self, a: usize, b: usize, dual: bool) -> UniPoly {
        let p = &self.poset;
        debug_assert!(p.leq(a, b));
        if a == b {
            return UniPoly::one();
        }
        let mut h = UniPoly::zero();
        for z in p.up[a].ones().filter(|&z| p.leq(z, b)) {
            if dual {
                // chains run down from b: a ≤ z < b
                if z == b {
                    continue;
                }
                let k = p.rank[b] - p.rank[z] - 1;
                h = &h + &(&UniPoly::t_minus_one_pow(k) * &self.g(a, z, true));
            } else {
                if z == a {
                    continue;
                }
                let k = p.rank[z] - p.rank[a] - 1;
                h = &h + &(&UniPoly::t_minus_one_pow(k) * &self.g(z, b, false));
            }
        }
        h
    }

    /// `g([a, b])`, or of the dual interval when `dual` is set.
    pub fn g(&self, a: usize, b: usize, dual: bool) -> UniPoly {
        if a == b {
            return UniPoly::one();
        }
        if let Some(v) = self.memo.get(&(a, b, dual)) {
            return v.clone();
        }
        let e = self.poset.rank[b] - self.poset.rank[a];
        let h = self.h(a, b, dual);
        debug_assert_eq!(h.degree(), Some(e - 1), "deg h of a rank {e} interval");
        // τ_{<e/2} keeps degrees i with 2i < e
        let g = (&UniPoly::one_minus_t_pow(1) * &h).truncate_below(e.div_ceil(2));
        self.memo.insert((a, b, dual), g.clone());
        g
    }

    /// Degree bounds `deg h = e - 1`, `deg g ≤ (e - 1)/2` on one interval.
    pub fn check_degrees(&self, a: usize, b: usize, dual: bool) -> bool {
        if a == b {
            return true;
        }
        let e = self.poset.rank[b] - self.poset.rank[a];
        let h = self.h(a, b, dual);
        let g = self.g(a, b, dual);
        h.degree() == Some(e - 1) && g.degree().is_some_and(|d| 2 * d < e)
    }

    /// `Σ_{a ≤ x ≤ b} (-1)^{ρ(b)-ρ(x)} g([a,x]) g([x,b]^*)`, and the mirrored
    /// sum with the roles of the interval and its dual exchanged. Both vanish
    /// for `a < b`.
    pub fn convolutions(&self, a: usize, b: usize) -> (UniPoly, UniPoly) {
        let p = &self.poset;
        let mut s1 = UniPoly::zero();
        let mut s2 = UniPoly::zero();
        for x in p.up[a].ones().filter(|&x| p.leq(x, b)) {
            let sign = if (p.rank[b] - p.rank[x]) % 2 == 0 { 1 } else { -1 };
            s1 = &s1 + &(&self.g(a, x, false) * &self.g(x, b, true)).scale(sign);
            let sign2 = if (p.rank[x] - p.rank[a]) % 2 == 0 { 1 } else { -1 };
            s2 = &s2 + &(&self.g(a, x, true) * &self.g(x, b, false)).scale(sign2);
        }
        (s1, s2)
    }
}

/// The interval `[f, g]` of a face lattice as a poset.
pub fn interval_poset(fl: &FaceLattice, f: usize, g: usize, dualize: bool) -> Result<EulerianPoset> {
    if !fl.leq(f, g) {
        return Err(Error::NotComparable);
    }
    EulerianPoset::from_face_lattice_unchecked(fl).interval(f, g, dualize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Polytope;

    fn square() -> Polytope {
        Polytope::from_points(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    fn ngon_g(n: i64) -> UniPoly {
        UniPoly::new(vec![1, n - 3])
    }

    #[test]
    fn rank_zero() {
        let p = EulerianPoset::boolean(0);
        assert_eq!(gh_poly(&p), (UniPoly::one(), UniPoly::one()));
    }

    #[test]
    fn square_face_lattice() {
        let fl = square().face_lattice().unwrap();
        let p = EulerianPoset::from_face_lattice(&fl).unwrap();
        let (h, g) = gh_poly(&p);
        assert_eq!(h.coeffs(), &[1, 2, 1]);
        assert_eq!(g, ngon_g(4));
    }

    #[test]
    fn hexagon_g() {
        let p = Polytope::from_points(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]],
        )
        .unwrap();
        let fl = p.face_lattice().unwrap();
        let (_, g) = gh_poly(&EulerianPoset::from_face_lattice(&fl).unwrap());
        assert_eq!(g, ngon_g(6));
    }

    /// Direct evaluation of the defining recursion on subsets, independent of
    /// the memo table.
    fn boolean_g_brute(k: usize) -> UniPoly {
        fn g_of_rank(e: usize) -> UniPoly {
            if e == 0 {
                return UniPoly::one();
            }
            let mut h = UniPoly::zero();
            for r in 1..=e {
                let binom = (0..r).fold(1i64, |acc, i| acc * (e - i) as i64 / (i as i64 + 1));
                h = &h + &(&UniPoly::t_minus_one_pow(r - 1) * &g_of_rank(e - r)).scale(binom);
            }
            (&UniPoly::one_minus_t_pow(1) * &h).truncate_below(e.div_ceil(2))
        }
        g_of_rank(k)
    }

    #[test]
    fn boolean_lattices_have_g_one() {
        for k in 0..=5 {
            let (_, g) = gh_poly(&EulerianPoset::boolean(k));
            assert_eq!(g, UniPoly::one());
            assert_eq!(boolean_g_brute(k), UniPoly::one());
        }
    }

    #[test]
    fn intervals() {
        let fl = square().face_lattice().unwrap();
        let v = fl.id_of(&[0]).unwrap();
        let single = interval_poset(&fl, v, v, false).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.rank(), 0);
        let diamond = interval_poset(&fl, v, fl.top(), false).unwrap();
        assert_eq!(diamond.len(), 4);
        assert_eq!(gh_poly(&diamond).1, UniPoly::one());
        let other = fl.id_of(&[3]).unwrap();
        assert!(matches!(interval_poset(&fl, v, other, false), Err(Error::NotComparable)));
        let dual = interval_poset(&fl, fl.bottom(), fl.top(), true).unwrap();
        assert_eq!(gh_poly(&dual).1, ngon_g(4));
    }

    #[test]
    fn product_is_multiplicative() {
        let fl = square().face_lattice().unwrap();
        let p = EulerianPoset::from_face_lattice(&fl).unwrap();
        let q = EulerianPoset::boolean(2);
        let pq = p.product(&q);
        let pp = p.product(&p);
        assert_eq!(gh_poly(&pq).1, &gh_poly(&p).1 * &gh_poly(&q).1);
        assert_eq!(gh_poly(&pp).1, &gh_poly(&p).1 * &gh_poly(&p).1);
    }

    #[test]
    fn convolution_vanishes_on_cube() {
        let pts = (0..8).map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1]).collect();
        let fl = Polytope::from_points(3, pts).unwrap().face_lattice().unwrap();
        let t = GTable::for_face_lattice(&fl);
        for a in 0..fl.len() {
            for b in fl.up_set(a).ones().filter(|&b| b != a) {
                assert!(t.check_degrees(a, b, false) && t.check_degrees(a, b, true));
                let (s1, s2) = t.convolutions(a, b);
                assert!(s1.is_zero() && s2.is_zero(), "[{a},{b}]");
            }
        }
    }

    #[test]
    fn non_eulerian_rejected() {
        // a chain of length 2 is graded but not Eulerian
        let up = (0..3)
            .map(|a| {
                let mut s = FixedBitSet::with_capacity(3);
                s.insert_range(a..3);
                s
            })
            .collect();
        assert!(matches!(EulerianPoset::new(vec![0, 1, 2], up), Err(Error::NotEulerian(_))));
    }
}
