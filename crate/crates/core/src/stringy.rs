//! S̃-polynomials and the stringy E-function of a Gorenstein polytope.
//!
//! `S̃(P, t) = Σ_{∅ ≤ F ≤ P} (-1)^{dim P - dim F} h*_F(t) g([F, P], t)` and
//! `E_st(P; u, v) = (uv)^{-r} Σ_F (-u)^{dim F + 1} S̃(F, u^{-1} v) S̃(F*, uv)`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::duality::{DualPair, Side};
use crate::ehrhart::{hstar_profile, HStarProfile};
use crate::error::{Error, Result};
use crate::lattice::{FaceLattice, Polytope};
use crate::poly::{BiPoly, UniPoly};
use crate::poset::GTable;

/// Per-face h*-profiles and S̃-polynomials over one face lattice.
#[derive(Debug)]
pub struct FaceTables {
    pub profiles: Vec<HStarProfile>,
    pub s_tilde: Vec<UniPoly>,
    pub g: GTable,
}

impl FaceTables {
    pub fn new(p: &Polytope, faces: &FaceLattice) -> Result<Self> {
        let profiles = (0..faces.len())
            .into_par_iter()
            .map(|f| hstar_profile(&p.face(&faces.face(f).vertices)))
            .collect::<Result<Vec<_>>>()?;
        let g = GTable::for_face_lattice(faces);
        let s_tilde = (0..faces.len())
            .into_par_iter()
            .map(|f| {
                let s = s_tilde_at(faces, &profiles, &g, f);
                if !s.is_nonnegative() {
                    return Err(Error::NegativeCoefficient {
                        module: "stringy",
                        what: format!("S̃ of face {:?} is {s}", faces.face(f).vertices),
                    });
                }
                if faces.dim(f) >= 0 && s.coeff(0) != 0 {
                    return Err(Error::inconsistency(
                        "stringy",
                        format!("S̃ of face {:?} has constant term", faces.face(f).vertices),
                    ));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FaceTables { profiles, s_tilde, g })
    }

    pub fn for_side(side: &Side) -> Result<Self> {
        Self::new(&side.polytope, &side.faces)
    }
}

fn s_tilde_at(faces: &FaceLattice, profiles: &[HStarProfile], g: &GTable, f: usize) -> UniPoly {
    (0..faces.len())
        .filter(|&h| faces.leq(h, f))
        .map(|h| {
            let term = &profiles[h].hstar * &g.g(h, f, false);
            if (faces.dim(f) - faces.dim(h)) % 2 == 0 {
                term
            } else {
                -&term
            }
        })
        .sum()
}

/// `S̃(P, t)`; `S̃(∅) = 1`.
pub fn s_tilde(p: &Polytope) -> Result<UniPoly> {
    if p.is_empty() {
        return Ok(UniPoly::one());
    }
    let faces = p.face_lattice()?;
    let tables = FaceTables::new(p, &faces)?;
    Ok(tables.s_tilde[faces.top()].clone())
}

/// Whether `h*_P = S̃(P) + Σ_{∅ ≤ F < P} S̃(F) g([F, P]^*)` holds exactly.
pub fn hstar_decomposition_check(p: &Polytope) -> Result<bool> {
    if p.is_empty() {
        return Ok(true);
    }
    let faces = p.face_lattice()?;
    let tables = FaceTables::new(p, &faces)?;
    Ok(decomposition_holds(&faces, &tables))
}

pub(crate) fn decomposition_holds(faces: &FaceLattice, tables: &FaceTables) -> bool {
    let top = faces.top();
    let rhs: UniPoly = (0..faces.len())
        .map(|f| {
            if f == top {
                tables.s_tilde[f].clone()
            } else {
                &tables.s_tilde[f] * &tables.g.g(f, top, true)
            }
        })
        .sum();
    rhs == tables.profiles[top].hstar
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContributingFace {
    pub face: Vec<usize>,
    pub s_tilde: UniPoly,
    pub s_tilde_dual: UniPoly,
}

/// Outcome of one conjectural identity with its exact residual
/// (`lhs - rhs`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub part: u8,
    pub pass: bool,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub checks: Vec<ConjectureCheck>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<u8> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.part).collect()
    }
}

/// The two open questions about leading coefficients, per polytope. `None`
/// when the hypothesis of the question does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingQuestions {
    /// Hypothesis `E_st ≠ 0`; asks `S̃(P^×) ≠ 0`.
    pub dual_s_tilde_nonzero: Option<bool>,
    /// Hypothesis `S̃(P) ≠ 0`; asks `deg S̃(P) = deg P`.
    pub s_tilde_degree_is_degree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringyReport {
    pub e_st: BiPoly,
    pub cy_dim: i64,
    pub contributing_faces: Vec<ContributingFace>,
    pub census: Vec<Vec<usize>>,
    pub conjecture: ConjectureReport,
    pub questions: LeadingQuestions,
}

/// Face tables of both sides of a dual pair, computed once and reused for the
/// pair and its swap.
#[derive(Debug)]
pub struct StringyContext<'a> {
    pub pair: &'a DualPair,
    pub primal: FaceTables,
    pub dual: FaceTables,
}

impl<'a> StringyContext<'a> {
    pub fn new(pair: &'a DualPair) -> Result<Self> {
        let (primal, dual) = rayon::join(
            || FaceTables::for_side(pair.primal()),
            || FaceTables::for_side(pair.dual()),
        );
        Ok(StringyContext {
            pair,
            primal: primal?,
            dual: dual?,
        })
    }

    fn sides(&self, mirrored: bool) -> (&Side, &FaceTables, &FaceTables, Box<dyn Fn(usize) -> usize + '_>) {
        if mirrored {
            (self.pair.dual(), &self.dual, &self.primal, Box::new(|g| self.pair.primal_face(g)))
        } else {
            (self.pair.primal(), &self.primal, &self.dual, Box::new(|f| self.pair.dual_face(f)))
        }
    }

    /// The defining Laurent sum, for `P` or (when `mirrored`) for `P^×`.
    pub fn e_laurent(&self, mirrored: bool) -> BiPoly {
        let (side, mine, other, star) = self.sides(mirrored);
        let r = self.pair.index() as i64;
        let terms: Vec<BiPoly> = (0..side.faces.len())
            .map(|f| {
                let a = &mine.s_tilde[f];
                let b = &other.s_tilde[star(f)];
                if a.is_zero() || b.is_zero() {
                    return BiPoly::zero();
                }
                let k = side.faces.dim(f) + 1;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let prefix = BiPoly::monomial(sign, k as i64, 0);
                &(&prefix * &BiPoly::substitute(a, -1, 1)) * &BiPoly::substitute(b, 1, 1)
            })
            .collect();
        terms.into_iter().sum::<BiPoly>().shift(-r, -r)
    }

    fn contributing(&self) -> Vec<ContributingFace> {
        let faces = &self.pair.primal().faces;
        (0..faces.len())
            .filter_map(|f| {
                let a = &self.primal.s_tilde[f];
                let b = &self.dual.s_tilde[self.pair.dual_face(f)];
                (!a.is_zero() && !b.is_zero()).then(|| ContributingFace {
                    face: faces.face(f).vertices.clone(),
                    s_tilde: a.clone(),
                    s_tilde_dual: b.clone(),
                })
            })
            .collect()
    }

    /// Faces satisfying the three conditions that characterize contributions
    /// to the constant coefficient.
    pub fn constant_coeff_faces(&self) -> Vec<usize> {
        let r = self.pair.index();
        let faces = &self.pair.primal().faces;
        (0..faces.len())
            .filter(|&f| {
                let g = self.pair.dual_face(f);
                let (pf, pg) = (&self.primal.profiles[f], &self.dual.profiles[g]);
                let (sf, sg) = (&self.primal.s_tilde[f], &self.dual.s_tilde[g]);
                sf.degree() == Some(pf.degree)
                    && sg.degree() == Some(pg.degree)
                    && pf.codegree + pg.codegree == r
                    && faces.rank(f) + 2 * pg.codegree == 2 * r
            })
            .collect()
    }

    /// `r ≤ codeg F + codeg F*` on every face.
    pub fn check_codegree_inequality(&self) -> Result<()> {
        let r = self.pair.index();
        let faces = &self.pair.primal().faces;
        for f in 0..faces.len() {
            let c = self.primal.profiles[f].codegree + self.dual.profiles[self.pair.dual_face(f)].codegree;
            if c < r {
                return Err(Error::violation(
                    "stringy",
                    format!("codeg F + codeg F* = {c} < {r} for F = {:?}", faces.face(f).vertices),
                ));
            }
        }
        Ok(())
    }

    /// Computes `E_st` and checks every proven property, failing with a
    /// theorem-violation error when one does not hold.
    pub fn report(&self) -> Result<StringyReport> {
        let e = self.e_laurent(false);
        let n = self.pair.cy_dim();
        let contributing = self.contributing();
        if !e.is_polynomial() {
            return Err(Error::NonPolynomialResult {
                faces: contributing
                    .iter()
                    .filter_map(|c| self.pair.primal().faces.id_of(&c.face))
                    .collect(),
            });
        }
        if n < 0 && !e.is_zero() {
            return Err(Error::violation("stringy", format!("E_st = {e} with negative n = {n}")));
        }
        if e.swap() != e {
            return Err(Error::violation("stringy", format!("E_st = {e} is not symmetric")));
        }
        if n >= 0 && e.invert(-1, -1).shift(n, n) != e {
            return Err(Error::violation("stringy", format!("Poincaré duality fails for E_st = {e}")));
        }
        let mirror = self.e_laurent(true);
        let expected = if n >= 0 {
            mirror.invert(-1, 1).shift(n, 0).scale(if n % 2 == 0 { 1 } else { -1 })
        } else {
            mirror.clone()
        };
        if expected != e {
            return Err(Error::violation(
                "stringy",
                format!("mirror law fails: E_st(P) = {e}, E_st(P^×) = {mirror}"),
            ));
        }
        self.check_codegree_inequality()?;
        let census = self.constant_coeff_faces();
        let constant = e.coeff(0, 0);
        if census.len() as i64 != constant {
            return Err(Error::violation(
                "stringy",
                format!("{} census faces but E_st(0,0) = {constant}", census.len()),
            ));
        }
        let faces = &self.pair.primal().faces;
        let top = faces.top();
        let s_p = &self.primal.s_tilde[top];
        let s_dual = &self.dual.s_tilde[self.pair.dual().faces.top()];
        let questions = LeadingQuestions {
            dual_s_tilde_nonzero: (!e.is_zero()).then(|| !s_dual.is_zero()),
            s_tilde_degree_is_degree: (!s_p.is_zero()).then(|| s_p.degree() == Some(self.primal.profiles[top].degree)),
        };
        Ok(StringyReport {
            conjecture: conjecture_checks(&e, n),
            e_st: e,
            cy_dim: n,
            contributing_faces: contributing,
            census: census.iter().map(|&f| faces.face(f).vertices.clone()).collect(),
            questions,
        })
    }
}

pub fn stringy_e(pair: &DualPair) -> Result<StringyReport> {
    StringyContext::new(pair)?.report()
}

pub fn constant_coeff_faces(pair: &DualPair) -> Result<Vec<Vec<usize>>> {
    let ctx = StringyContext::new(pair)?;
    let faces = &pair.primal().faces;
    Ok(ctx
        .constant_coeff_faces()
        .into_iter()
        .map(|f| faces.face(f).vertices.clone())
        .collect())
}

pub fn conjecture_report(pair: &DualPair) -> Result<ConjectureReport> {
    Ok(stringy_e(pair)?.conjecture)
}

fn rational_string(q: Ratio<i64>) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parts (2)-(5) of the conjecture on an exact polynomial `E` with
/// Calabi-Yau dimension `n`.
pub fn conjecture_checks(e: &BiPoly, n: i64) -> ConjectureReport {
    let mut checks = Vec::new();

    // (2) degree 2n or zero
    let deg = e.total_degree();
    let pass2 = e.is_zero() || (n >= 0 && deg == Some(2 * n));
    checks.push(ConjectureCheck {
        part: 2,
        pass: pass2,
        residual: match deg {
            None => "0".into(),
            Some(d) => (d - 2 * n).to_string(),
        },
    });

    // (3) E(u,0) = (-u)^n E(u^{-1},0) for n ≥ 1
    let at0 = BiPoly::from_terms(e.terms().filter(|((_, j), _)| *j == 0));
    let residual3 = if n >= 1 {
        let rhs = at0.invert(-1, 1).shift(n, 0).scale(if n % 2 == 0 { 1 } else { -1 });
        &at0 - &rhs
    } else {
        BiPoly::zero()
    };
    checks.push(ConjectureCheck {
        part: 3,
        pass: residual3.is_zero(),
        residual: residual3.to_string(),
    });

    // (4) and (5) on p(u) = E(u,1)
    let p = e.at_v_one();
    let e11 = Ratio::from_integer(p.eval(1));
    let d1 = Ratio::from_integer(p.derivative().eval(1));
    let d2 = Ratio::from_integer(p.derivative().derivative().eval(1));
    let r4 = d1 - Ratio::new(n, 2) * e11;
    let r5 = d2 - Ratio::new(n * (3 * n - 5), 12) * e11;
    checks.push(ConjectureCheck {
        part: 4,
        pass: r4 == Ratio::from_integer(0),
        residual: rational_string(r4),
    });
    checks.push(ConjectureCheck {
        part: 5,
        pass: r5 == Ratio::from_integer(0),
        residual: rational_string(r5),
    });
    ConjectureReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_gorenstein;

    fn poly(d: usize, pts: Vec<Vec<i64>>) -> Polytope {
        Polytope::from_points(d, pts).unwrap()
    }

    #[test]
    fn small_s_tilde_values() {
        assert_eq!(s_tilde(&Polytope::empty(2)).unwrap(), UniPoly::one());
        assert_eq!(s_tilde(&poly(2, vec![vec![1, 2]])).unwrap(), UniPoly::zero());
        let seg = poly(1, vec![vec![0], vec![2]]);
        assert_eq!(s_tilde(&seg).unwrap(), UniPoly::monomial(1, 1));
        assert!(hstar_decomposition_check(&seg).unwrap());
        assert!(hstar_decomposition_check(&poly(2, vec![vec![1, 2]])).unwrap());
    }

    #[test]
    fn pyramid_has_zero_s_tilde() {
        // pyramid over the segment [0,2]
        let p = poly(2, vec![vec![0, 0], vec![2, 0], vec![0, 1]]);
        assert_eq!(s_tilde(&p).unwrap(), UniPoly::zero());
        assert_eq!(hstar_profile(&p).unwrap().hstar.coeffs(), &[1, 1]);
    }

    #[test]
    fn reflexive_square_e_function() {
        let sq = poly(2, vec![vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]]);
        let pair = dual_gorenstein(&sq).unwrap();
        let rep = stringy_e(&pair).unwrap();
        assert_eq!(rep.cy_dim, 1);
        // Hodge-type data of an elliptic curve: 1 - u - v + uv
        assert_eq!(rep.e_st, BiPoly::from_terms([((0, 0), 1), ((1, 0), -1), ((0, 1), -1), ((1, 1), 1)]));
        assert_eq!(rep.census.len(), 1);
        assert!(rep.conjecture.all_pass());
    }

    #[test]
    fn simplices_vanish() {
        for d in 1..=3 {
            let mut pts = vec![vec![0; d]];
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 1;
                pts.push(e);
            }
            let pair = dual_gorenstein(&poly(d, pts)).unwrap();
            let rep = stringy_e(&pair).unwrap();
            assert!(rep.cy_dim < 0);
            assert!(rep.e_st.is_zero());
            assert!(rep.conjecture.all_pass());
        }
    }

    #[test]
    fn conjecture_residuals_are_exact() {
        let e = BiPoly::from_terms([((0, 0), 1), ((1, 0), -1), ((0, 1), -1), ((1, 1), 1)]);
        let rep = conjecture_checks(&e, 1);
        assert!(rep.all_pass());
        let bad = conjecture_checks(&BiPoly::from_terms([((1, 0), 1)]), 1);
        assert!(!bad.all_pass());
        assert_eq!(bad.checks[2].residual, "1/2");
    }
}
