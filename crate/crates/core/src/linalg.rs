//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`. Callers store lattice
//! coordinates as `i64`; conversion back is checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn big_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| big_vec(r)).collect()
}

pub fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("lattice coordinate"))
}

pub fn small_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides `v` by the gcd of its entries. Sign is preserved.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// Rank of an integer matrix (given by rows).
pub fn rank(rows: &IntMatrix) -> usize {
    let mut m: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            make_primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(&big_matrix(rows))
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `a x = b` over the rationals. Returns `None` unless the system is
/// consistent with a unique solution.
pub fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            return None;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // remaining rows must read 0 = 0
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Pivot selection for [`smith`]. Different rules reach the same invariant
/// factors through different elimination sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    MinAbs,
    FirstNonzero,
}

/// Smith normal form `U A V = diag(d_1, .., d_r, 0, ..)` with the left
/// transform `U` and its inverse tracked.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Index of the column lattice in its saturation.
    pub fn torsion_index(&self) -> BigInt {
        self.diagonal.iter().product()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct RowTracker {
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl RowTracker {
    fn swap(&mut self, a: &mut IntMatrix, i: usize, j: usize) {
        a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add(&mut self, a: &mut IntMatrix, i: usize, j: usize, c: &BigInt) {
        for k in 0..a[i].len() {
            let v = &a[j][k] * c;
            a[i][k] += v;
        }
        for k in 0..self.u[i].len() {
            let v = &self.u[j][k] * c;
            self.u[i][k] += v;
        }
        for row in self.u_inv.iter_mut() {
            let v = &row[i] * c;
            row[j] -= v;
        }
    }

    fn negate(&mut self, a: &mut IntMatrix, i: usize) {
        for x in a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn add_col(a: &mut IntMatrix, i: usize, j: usize, c: &BigInt) {
    for row in a.iter_mut() {
        let v = &row[j] * c;
        row[i] += v;
    }
}

/// Smith normal form of an `m x n` integer matrix given by rows.
pub fn smith(matrix: &IntMatrix, rule: PivotRule) -> SmithForm {
    let m = matrix.len();
    let n = matrix.first().map_or(0, |r| r.len());
    let mut a = matrix.clone();
    let mut tr = RowTracker {
        u: identity(m),
        u_inv: identity(m),
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let pivot = match rule {
            PivotRule::MinAbs => (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs())),
            PivotRule::FirstNonzero => (t..n)
                .flat_map(|j| (t..m).map(move |i| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero()),
        };
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            tr.swap(&mut a, t, pi);
        }
        if pj != t {
            swap_cols(&mut a, t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                tr.add(&mut a, i, t, &-q);
                if !a[i][t].is_zero() {
                    tr.swap(&mut a, t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, j, t, &-q);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition on the remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => tr.add(&mut a, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            tr.negate(&mut a, t);
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm {
        diagonal,
        left: tr.u,
        left_inv: tr.u_inv,
    }
}

/// A basis (as rows) of the lattice generated by the given integer rows.
pub fn lattice_basis(rows: &IntMatrix) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let transposed = transpose(rows);
    let snf = smith(&transposed, PivotRule::MinAbs);
    (0..snf.rank())
        .map(|i| snf.left_inv.iter().map(|row| &row[i] * &snf.diagonal[i]).collect())
        .collect()
}

/// A basis (as rows) of the saturation `span_R(rows) ∩ Z^n`.
pub fn saturated_basis(rows: &IntMatrix) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let transposed = transpose(rows);
    let snf = smith(&transposed, PivotRule::MinAbs);
    (0..snf.rank())
        .map(|i| snf.left_inv.iter().map(|row| row[i].clone()).collect())
        .collect()
}

/// A basis (as rows) of `{y ∈ Z^n : ⟨r, y⟩ = 0 for every row r}`.
pub fn integer_kernel(rows: &IntMatrix, n: usize) -> IntMatrix {
    if rows.is_empty() {
        return identity(n);
    }
    let snf = smith(&transpose(rows), PivotRule::MinAbs);
    snf.left[snf.rank()..].to_vec()
}

pub fn transpose(rows: &IntMatrix) -> IntMatrix {
    let n = rows.first().map_or(0, |r| r.len());
    (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Index of the lattice spanned by `rows` inside `Z^n`, or `None` when the
/// rows do not span a full-rank lattice.
pub fn index_in_ambient(rows: &IntMatrix, rule: PivotRule) -> Option<BigInt> {
    let n = rows.first().map_or(0, |r| r.len());
    let snf = smith(rows, rule);
    (snf.rank() == n).then(|| snf.torsion_index())
}

pub fn rational(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| big_vec(r)).collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn kernel_of_a_plane() {
        let k = integer_kernel(&m(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for y in &k {
            assert!(dot(y, &big_vec(&[1, 2, 3])).is_zero());
        }
        // saturated: together with a vector of pairing 1 they span Z^3
        let mut all = k.clone();
        all.push(big_vec(&[1, 0, 0]));
        assert_eq!(det(&all).abs(), BigInt::one());
    }

    #[test]
    fn smith_diagonal_and_transforms() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        for rule in [PivotRule::MinAbs, PivotRule::FirstNonzero] {
            let s = smith(&a, rule);
            assert_eq!(s.diagonal, big_vec(&[2, 6, 12]));
            assert_eq!(mul(&s.left, &s.left_inv), identity(3));
        }
    }

    #[test]
    fn saturation_of_even_vector() {
        let b = saturated_basis(&m(&[&[2, 4, 0]]));
        assert_eq!(b.len(), 1);
        let v = &b[0];
        assert!(v == &big_vec(&[1, 2, 0]) || v == &big_vec(&[-1, -2, 0]));
    }

    #[test]
    fn lattice_basis_with_half_vector() {
        // Z^2 + (1/2,1/2) scaled by 2: generated by (2,0),(0,2),(1,1)
        let b = lattice_basis(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(b.len(), 2);
        assert_eq!(det(&b).abs(), BigInt::from(2));
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[0, 0, 1, 1], &[1, 0, 0, 0], &[0, 0, 0, 1], &[-1, 2, 0, 0]]);
        assert_eq!(det(&a).abs(), BigInt::from(2));
        assert_eq!(rank(&a), 4);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn unique_solution() {
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(2), q(0)]];
        let x = solve_unique(&a, &[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(solve_unique(&a, &[q(3), q(1), q(5)]).is_none());
        assert!(solve_unique(&[vec![q(1), q(1)]], &[q(1)]).is_none());
    }
}
