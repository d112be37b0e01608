//! Ehrhart counts, h*-polynomials and Gorenstein classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Point, PointEnumerator, Polytope};
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStarProfile {
    pub dim: isize,
    pub hstar: UniPoly,
    pub degree: usize,
    pub codegree: usize,
    /// `f_P(k)` for `k = 0..=dim P`.
    pub ehrhart_counts: Vec<u64>,
}

impl HStarProfile {
    fn of_empty() -> Self {
        HStarProfile {
            dim: -1,
            hstar: UniPoly::one(),
            degree: 0,
            codegree: 0,
            ehrhart_counts: Vec::new(),
        }
    }

    /// `deg P - codeg P`
    pub fn cy_dim(&self) -> i64 {
        self.degree as i64 - self.codegree as i64
    }
}

pub fn hstar_profile(p: &Polytope) -> Result<HStarProfile> {
    if p.is_empty() {
        return Ok(HStarProfile::of_empty());
    }
    let e = p.dim() as usize;
    let form = p.local_form()?;
    let en = PointEnumerator::new(&form.points)?;
    let counts: Vec<u64> = (0..=e as i64)
        .map(|k| if k == 0 { 1 } else { en.count(k, false) })
        .collect();
    let series = UniPoly::new(counts.iter().map(|&c| i64::try_from(c).expect("count fits")).collect());
    let hstar = (&series * &UniPoly::one_minus_t_pow(e + 1)).truncate_to(e);
    let degree = hstar.degree().ok_or_else(|| Error::inconsistency("ehrhart", "h* vanished"))?;
    if hstar.coeff(0) != 1 {
        return Err(Error::inconsistency("ehrhart", format!("h*(0) = {}", hstar.coeff(0))));
    }
    if !hstar.is_nonnegative() {
        return Err(Error::NegativeCoefficient {
            module: "ehrhart",
            what: format!("h* = {hstar}"),
        });
    }
    let codegree = e + 1 - degree;
    // the codegree is also the first dilate with interior points, and the
    // leading coefficient counts them
    for k in 1..codegree {
        if en.count(k as i64, true) != 0 {
            return Err(Error::inconsistency(
                "ehrhart",
                format!("{k}P has interior points below codegree {codegree}"),
            ));
        }
    }
    let interior = en.count(codegree as i64, true);
    if interior != hstar.leading() as u64 {
        return Err(Error::inconsistency(
            "ehrhart",
            format!("leading coefficient {} but {interior} interior points", hstar.leading()),
        ));
    }
    Ok(HStarProfile {
        dim: p.dim(),
        hstar,
        degree,
        codegree,
        ehrhart_counts: counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Gorenstein of index 1 with the interior point at the origin.
    pub reflexive: bool,
    pub gorenstein_index: Option<usize>,
    /// The unique interior lattice point of `rP` (ambient coordinates) when
    /// `P` is Gorenstein of index `r`.
    pub interior_point: Option<Point>,
}

/// Gorenstein data computed inside the lattice of the affine span, in local
/// coordinates.
#[derive(Debug, Clone)]
pub(crate) struct LocalGorenstein {
    pub index: usize,
    pub interior_local: Point,
}

pub(crate) fn local_gorenstein(p: &Polytope, profile: &HStarProfile) -> Result<Option<LocalGorenstein>> {
    if p.is_empty() {
        return Err(Error::EmptyFace);
    }
    let form = p.local_form()?;
    let r = profile.codegree;
    let en = PointEnumerator::new(&form.points)?;
    let mut interior = Vec::new();
    en.for_each(r as i64, true, |x| {
        if interior.len() < 2 {
            interior.push(x.to_vec())
        }
    });
    let direct = if interior.len() == 1 {
        let m = &interior[0];
        form.facets
            .iter()
            .all(|f| crate::linalg::dot_i64(&f.normal, m) + r as i64 * f.offset == 1)
            .then(|| LocalGorenstein {
                index: r,
                interior_local: m.clone(),
            })
    } else {
        None
    };
    let palindromic = profile.hstar.is_palindromic_of(profile.degree);
    if direct.is_some() != palindromic {
        return Err(Error::inconsistency(
            "ehrhart",
            format!(
                "Gorenstein test gives {} but h* = {} is {}palindromic",
                direct.is_some(),
                profile.hstar,
                if palindromic { "" } else { "not " }
            ),
        ));
    }
    Ok(direct)
}

pub fn classify(p: &Polytope) -> Result<Classification> {
    let profile = hstar_profile(p)?;
    classify_with(p, &profile)
}

pub fn classify_with(p: &Polytope, profile: &HStarProfile) -> Result<Classification> {
    let local = local_gorenstein(p, profile)?;
    Ok(match local {
        None => Classification {
            reflexive: false,
            gorenstein_index: None,
            interior_point: None,
        },
        Some(g) => {
            let chart = p.chart()?;
            let m = chart.from_local_scaled(&g.interior_local, g.index as i64);
            Classification {
                reflexive: g.index == 1 && m.iter().all(|&x| x == 0),
                gorenstein_index: Some(g.index),
                interior_point: Some(m),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: usize, pts: Vec<Vec<i64>>) -> Polytope {
        Polytope::from_points(d, pts).unwrap()
    }

    fn simplex(d: usize) -> Polytope {
        let mut pts = vec![vec![0; d]];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            pts.push(e);
        }
        poly(d, pts)
    }

    fn cube(d: usize) -> Polytope {
        let pts = (0..1u32 << d)
            .map(|m| (0..d).map(|i| i64::from((m >> i) & 1)).collect())
            .collect();
        poly(d, pts)
    }

    #[test]
    fn simplex_profile() {
        for d in 1..=4 {
            let pr = hstar_profile(&simplex(d)).unwrap();
            assert_eq!(pr.hstar, UniPoly::one());
            assert_eq!(pr.codegree, d + 1);
            assert_eq!(classify(&simplex(d)).unwrap().gorenstein_index, Some(d + 1));
        }
    }

    #[test]
    fn segment_of_length_two() {
        let p = poly(1, vec![vec![0], vec![2]]);
        let pr = hstar_profile(&p).unwrap();
        assert_eq!(pr.hstar.coeffs(), &[1, 1]);
        assert_eq!(pr.ehrhart_counts, vec![1, 3]);
        let c = classify(&p).unwrap();
        assert_eq!(c.gorenstein_index, Some(1));
        assert_eq!(c.interior_point, Some(vec![1]));
        assert!(!c.reflexive);
    }

    #[test]
    fn empty_and_point() {
        let pr = hstar_profile(&Polytope::empty(2)).unwrap();
        assert_eq!((pr.hstar.clone(), pr.degree, pr.codegree), (UniPoly::one(), 0, 0));
        let pt = hstar_profile(&poly(2, vec![vec![3, 4]])).unwrap();
        assert_eq!((pt.hstar, pt.degree, pt.codegree), (UniPoly::one(), 0, 1));
    }

    #[test]
    fn unit_cubes_have_index_two() {
        for d in 1..=4 {
            assert_eq!(classify(&cube(d)).unwrap().gorenstein_index, Some(2), "d={d}");
        }
        assert_eq!(hstar_profile(&cube(3)).unwrap().hstar.coeffs(), &[1, 4, 1]);
    }

    #[test]
    fn cayley_of_two_segments() {
        let p = poly(3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 2, 0]]);
        assert_eq!(hstar_profile(&p).unwrap().hstar.coeffs(), &[1, 0, 1]);
        let q = poly(3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 0, 0], vec![-1, 3, 0]]);
        assert_eq!(hstar_profile(&q).unwrap().hstar.coeffs(), &[1, 0, 2]);
        assert_eq!(classify(&q).unwrap().gorenstein_index, None);
    }

    #[test]
    fn reflexive_square() {
        let p = poly(2, vec![vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]]);
        let c = classify(&p).unwrap();
        assert!(c.reflexive);
        assert_eq!(c.interior_point, Some(vec![0, 0]));
    }

    #[test]
    fn lower_dimensional_uses_induced_lattice() {
        // the segment from (0,0,0) to (2,2,2) has lattice length 2
        let p = poly(3, vec![vec![0, 0, 0], vec![2, 2, 2]]);
        assert_eq!(hstar_profile(&p).unwrap().hstar.coeffs(), &[1, 1]);
    }
}
