//! The verification harness: every proven identity is asserted (a failure is a
//! theorem violation), the conjectural parts are only reported.

use rayon::prelude::*;
use serde::Serialize;

use crate::duality::dual_gorenstein;
use crate::ehrhart::{classify_with, hstar_profile};
use crate::error::{Error, Result};
use crate::lattice::{FaceLattice, Polytope};
use crate::poly::UniPoly;
use crate::stringy::{ConjectureCheck, FaceTables, LeadingQuestions, StringyContext, StringyReport};

/// Counts of what was checked for one polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub faces: usize,
    pub intervals: usize,
    pub gorenstein: bool,
    pub reflexive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub properties: PropertySummary,
    /// Conjecture checks for the requested parts; empty when not Gorenstein.
    pub conjecture: Vec<ConjectureCheck>,
    pub questions: Option<LeadingQuestions>,
}

impl VerifyOutcome {
    pub fn failed_parts(&self) -> Vec<u8> {
        self.conjecture.iter().filter(|c| !c.pass).map(|c| c.part).collect()
    }
}

fn fail(detail: String) -> Error {
    Error::violation("verify", detail)
}

/// S̃ and h*-decomposition laws on every face of one side.
fn check_face_tables(faces: &FaceLattice, t: &FaceTables) -> Result<()> {
    (0..faces.len()).into_par_iter().try_for_each(|f| {
        let s = &t.s_tilde[f];
        let prof = &t.profiles[f];
        let dim = faces.dim(f);
        let name = || format!("{:?}", faces.face(f).vertices);
        if !prof.hstar.is_nonnegative() {
            return Err(Error::NegativeCoefficient {
                module: "ehrhart",
                what: format!("h* of face {}", name()),
            });
        }
        if !s.is_nonnegative() {
            return Err(Error::NegativeCoefficient {
                module: "stringy",
                what: format!("S̃ of face {}", name()),
            });
        }
        if dim < 0 {
            return if *s == UniPoly::one() { Ok(()) } else { Err(fail("S̃(∅) ≠ 1".into())) };
        }
        let top = (dim + 1) as usize;
        if !s.is_zero() && !s.is_palindromic_of(top) {
            return Err(fail(format!("S̃ = {s} of face {} violates reciprocity", name())));
        }
        if !s.le_coefficientwise(&prof.hstar) {
            return Err(fail(format!("S̃ = {s} exceeds h* = {} on face {}", prof.hstar, name())));
        }
        if let (Some(d), Some(sd)) = (s.degree(), s.subdegree()) {
            if d > prof.degree || sd < prof.codegree || sd != top - d {
                return Err(fail(format!("degree bounds fail for S̃ = {s} on face {}", name())));
            }
        }
        if prof.degree < prof.codegree && !s.is_zero() {
            return Err(fail(format!("deg < codeg but S̃ ≠ 0 on face {}", name())));
        }
        let rhs: UniPoly = (0..faces.len())
            .filter(|&h| faces.leq(h, f))
            .map(|h| if h == f { s.clone() } else { &t.s_tilde[h] * &t.g.g(h, f, true) })
            .sum();
        if rhs != prof.hstar {
            return Err(fail(format!("h*-decomposition fails on face {}", name())));
        }
        Ok(())
    })
}

/// Eulerian check, `g ≥ 0`, degree bounds and both convolution identities on
/// every interval. Returns the number of intervals.
fn check_intervals(faces: &FaceLattice, t: &FaceTables) -> Result<usize> {
    if !faces.is_eulerian() {
        return Err(Error::violation("poset", "face lattice is not Eulerian"));
    }
    let counts = (0..faces.len())
        .into_par_iter()
        .map(|a| {
            let mut n = 0;
            for b in faces.up_set(a).ones() {
                n += 1;
                for dual in [false, true] {
                    let g = t.g.g(a, b, dual);
                    if !g.is_nonnegative() {
                        return Err(Error::NegativeCoefficient {
                            module: "poset",
                            what: format!("g of interval ({a}, {b})"),
                        });
                    }
                    if !t.g.check_degrees(a, b, dual) {
                        return Err(Error::violation("poset", format!("degree bounds fail on ({a}, {b})")));
                    }
                }
                if a != b {
                    let (s1, s2) = t.g.convolutions(a, b);
                    if !s1.is_zero() || !s2.is_zero() {
                        return Err(Error::violation("poset", format!("convolution ≠ 0 on ({a}, {b})")));
                    }
                }
            }
            Ok(n)
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(counts.into_iter().sum())
}

/// Runs every proven check on `p` (and on `P^×` when `P` is Gorenstein) and
/// evaluates the requested conjecture parts.
pub fn verify_polytope(p: &Polytope, parts: &[u8]) -> Result<(VerifyOutcome, Option<StringyReport>)> {
    let profile = hstar_profile(p)?;
    let class = classify_with(p, &profile)?;
    let gorenstein = class.gorenstein_index.is_some();
    if gorenstein != profile.hstar.is_palindromic_of(profile.degree) {
        return Err(Error::inconsistency("ehrhart", "Gorenstein test disagrees with palindromicity"));
    }
    let faces = p.face_lattice()?;
    if !gorenstein {
        let tables = FaceTables::new(p, &faces)?;
        check_face_tables(&faces, &tables)?;
        let intervals = check_intervals(&faces, &tables)?;
        let outcome = VerifyOutcome {
            properties: PropertySummary {
                faces: faces.len(),
                intervals,
                gorenstein,
                reflexive: class.reflexive,
            },
            conjecture: Vec::new(),
            questions: None,
        };
        return Ok((outcome, None));
    }
    let pair = dual_gorenstein(p)?;
    let ctx = StringyContext::new(&pair)?;
    check_face_tables(&pair.primal().faces, &ctx.primal)?;
    check_face_tables(&pair.dual().faces, &ctx.dual)?;
    let intervals = check_intervals(&pair.primal().faces, &ctx.primal)?;
    check_intervals(&pair.dual().faces, &ctx.dual)?;
    let report = ctx.report()?;
    let outcome = VerifyOutcome {
        properties: PropertySummary {
            faces: pair.primal().faces.len(),
            intervals,
            gorenstein,
            reflexive: class.reflexive,
        },
        conjecture: report
            .conjecture
            .checks
            .iter()
            .filter(|c| parts.contains(&c.part))
            .cloned()
            .collect(),
        questions: Some(report.questions.clone()),
    };
    Ok((outcome, Some(report)))
}
