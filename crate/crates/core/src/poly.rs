//! Exact integer polynomials in one variable `t` and Laurent polynomials in
//! `u, v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer polynomial; `coeffs[i]` is the coefficient of `t^i`, with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<i64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `(t - 1)^k`
    pub fn t_minus_one_pow(k: usize) -> Self {
        Self::new(vec![-1, 1]).pow(k)
    }

    /// `(1 - t)^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        Self::new(vec![1, -1]).pow(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn subdegree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        UniPoly { coeffs: v }
    }

    /// Keeps the terms of degree `< bound`.
    pub fn truncate_below(&self, bound: usize) -> Self {
        Self::new(self.coeffs.iter().take(bound).copied().collect())
    }

    /// Keeps the terms of degree `≤ deg`.
    pub fn truncate_to(&self, deg: usize) -> Self {
        self.truncate_below(deg + 1)
    }

    /// `t^n p(1/t)`; `n` must be at least the degree.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.degree().map_or(true, |d| d <= n), "reverse below degree");
        Self::new((0..=n).map(|i| self.coeff(n - i)).collect())
    }

    /// `t^n p(1/t) = p`.
    pub fn is_palindromic_of(&self, n: usize) -> bool {
        self.degree().map_or(true, |d| d <= n) && self.reverse(n) == *self
    }

    /// Palindromic with respect to its own degree and subdegree.
    pub fn is_palindromic(&self) -> bool {
        match (self.degree(), self.subdegree()) {
            (Some(d), Some(s)) => self.is_palindromic_of(d + s),
            _ => true,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Coefficientwise `self ≤ other`.
    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        (0..self.coeffs.len().max(other.coeffs.len())).all(|i| self.coeff(i) <= other.coeff(i))
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i64)
                .collect(),
        )
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(UniPoly, Add, add);
forward_owned!(UniPoly, Sub, sub);
forward_owned!(UniPoly, Mul, mul);

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> Self {
        iter.fold(UniPoly::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                (c, mono)
            })
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(i64, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (c, mono)) in terms.iter().enumerate() {
        let abs = c.unsigned_abs();
        match (k, *c < 0) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs == 1 {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}{mono}")?;
        }
    }
    Ok(())
}

/// Laurent polynomial in `u, v`; `(i, j) ↦ c` stands for `c·u^i v^j`. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(i64, i64), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: i64, i: i64, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), i64)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, i: i64, j: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    /// `p(u^a v^b)` for a polynomial `p(t)`.
    pub fn substitute(p: &UniPoly, a: i64, b: i64) -> Self {
        let mut out = Self::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            let k = k as i64;
            out.add_term(c, a * k, b * k);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, i: i64, j: i64) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All exponents nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i >= 0 && j >= 0)
    }

    /// Largest `i + j` over the stored monomials.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Multiplication by `u^a v^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((i + a, j + b), c)))
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    /// `p(v, u)`
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((j, i), c)))
    }

    /// `p(u^{su}, v^{sv})` for signs `su, sv ∈ {1, -1}`; `u ↦ -u` is not
    /// covered, see [`BiPoly::negate_u`].
    pub fn invert(&self, su: i64, sv: i64) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((su * i, sv * j), c)))
    }

    /// `p(-u, v)`
    pub fn negate_u(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|((i, j), c)| ((i, j), if i.rem_euclid(2) == 1 { -c } else { c })),
        )
    }

    /// `p(u, 0)` as a polynomial in `u` (exponents of `u` must be
    /// nonnegative in the surviving terms).
    pub fn at_v_zero(&self) -> UniPoly {
        self.restrict(|i, j| (j == 0).then_some(i))
    }

    /// `p(u, 1)` as a polynomial in `u`.
    pub fn at_v_one(&self) -> UniPoly {
        self.restrict(|i, _| Some(i))
    }

    fn restrict(&self, pick: impl Fn(i64, i64) -> Option<i64>) -> UniPoly {
        let mut v: Vec<i64> = Vec::new();
        for ((i, j), c) in self.terms() {
            if let Some(k) = pick(i, j) {
                let k = usize::try_from(k).expect("negative exponent in restriction");
                if v.len() <= k {
                    v.resize(k + 1, 0);
                }
                v[k] += c;
            }
        }
        UniPoly::new(v)
    }

    pub fn eval(&self, u: i64, v: i64) -> i64 {
        self.terms()
            .map(|((i, j), c)| {
                assert!(i >= 0 && j >= 0, "evaluation of a Laurent term");
                c * u.pow(i as u32) * v.pow(j as u32)
            })
            .sum()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in o.terms() {
            out.add_term(c, i, j);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in o.terms() {
            out.add_term(-c, i, j);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i, j), c) in self.terms() {
            for ((k, l), d) in o.terms() {
                out.add_term(c * d, i + k, j + l);
            }
        }
        out
    }
}

forward_owned!(BiPoly, Add, add);
forward_owned!(BiPoly, Sub, sub);
forward_owned!(BiPoly, Mul, mul);

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> Self {
        iter.fold(BiPoly::zero(), |a, b| &a + &b)
    }
}

/// Serialized as `[[i, j, c], ..]`, sorted by `(i, j)`.
impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(&(i, j), &c)| [i, j, c]))
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Terms sorted by total degree, then by the exponent of `u`, both
/// descending.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let terms: Vec<(i64, String)> = keys
            .into_iter()
            .map(|(i, j)| (self.terms[&(i, j)], format!("{}{}", power("u", i), power("v", j))))
            .collect();
        write_terms(f, &terms)
    }
}
