//! Polytope and nef-partition input files (JSON).
//!
//! ```json
//! {"name": "diamonds", "ambient_dim": 2,
//!  "lattice_generators": [["1/2", "1/2"], [1, 0]],
//!  "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}
//! ```
//!
//! Rationals are JSON integers or strings `"a/b"`. A nef-partition file has
//! `parts` (a list of vertex lists) instead of `vertices`, and optionally a
//! `host` polytope, inline or as a path relative to the file.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{lattice_coordinates, parse_rational, Polytope};
use crate::nef::NefPartition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.to_integer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"a/b\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                parse_rational(v)
                    .map(Rational)
                    .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn to_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_generators: Option<Vec<Vec<Rational>>>,
    pub vertices: Vec<Vec<Rational>>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn check_rows(what: &str, rows: &[Vec<Rational>], d: usize) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != d {
            return Err(Error::Validation(format!(
                "{what} {i} has {} coordinates, ambient_dim is {d}",
                r.len()
            )));
        }
    }
    Ok(())
}

pub fn parse_polytope_file(text: &str) -> Result<PolytopeFile> {
    let file: PolytopeFile = serde_json::from_str(text).map_err(parse_error)?;
    file.validate()?;
    Ok(file)
}

impl PolytopeFile {
    pub fn validate(&self) -> Result<()> {
        check_rows("vertex", &self.vertices, self.ambient_dim)?;
        if let Some(g) = &self.lattice_generators {
            check_rows("lattice generator", g, self.ambient_dim)?;
        }
        Ok(())
    }

    pub fn polytope(&self) -> Result<Polytope> {
        let gens = self.lattice_generators.as_ref().map(|g| to_rows(g));
        let pts = lattice_coordinates(self.ambient_dim, gens.as_deref(), &to_rows(&self.vertices))?;
        Polytope::from_points(self.ambient_dim, pts)
    }

    /// The polytope written with integer vertices in lattice coordinates.
    pub fn normalized(&self) -> Result<PolytopeFile> {
        Ok(PolytopeFile::from_polytope(self.name.clone(), &self.polytope()?))
    }

    pub fn from_polytope(name: Option<String>, p: &Polytope) -> PolytopeFile {
        PolytopeFile {
            name,
            ambient_dim: p.ambient_dim(),
            lattice_generators: None,
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(|&x| Rational(BigRational::from_integer(x.into()))).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polytope files serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HostRef {
    Inline(PolytopeFile),
    Path(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NefFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_generators: Option<Vec<Vec<Rational>>>,
    pub parts: Vec<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<HostRef>,
}

pub fn parse_nef_file(text: &str) -> Result<NefFile> {
    let file: NefFile = serde_json::from_str(text).map_err(parse_error)?;
    for p in &file.parts {
        check_rows("part vertex", p, file.ambient_dim)?;
    }
    if let Some(g) = &file.lattice_generators {
        check_rows("lattice generator", g, file.ambient_dim)?;
    }
    Ok(file)
}

impl NefFile {
    /// The partition; `base` resolves a host given as a relative path. A host
    /// without its own generators uses the partition's lattice.
    pub fn partition(&self, base: Option<&Path>) -> Result<NefPartition> {
        let gens = self.lattice_generators.as_ref().map(|g| to_rows(g));
        let parts = self
            .parts
            .iter()
            .map(|rows| {
                let pts = lattice_coordinates(self.ambient_dim, gens.as_deref(), &to_rows(rows))?;
                Polytope::from_points(self.ambient_dim, pts)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut nef = NefPartition::from_parts(parts)?;
        if let Some(host) = &self.host {
            let mut file = match host {
                HostRef::Inline(f) => f.clone(),
                HostRef::Path(p) => {
                    let path = base.map_or_else(|| p.clone(), |b| b.join(p));
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    parse_polytope_file(&text)?
                }
            };
            if file.lattice_generators.is_none() {
                file.lattice_generators = self.lattice_generators.clone();
            }
            nef.reflexive = file.polytope()?;
        }
        Ok(nef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_is_a_triangle() {
        let f = parse_polytope_file(r#"{"ambient_dim": 2, "vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        let p = f.polytope().unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn half_lattice_normalizes() {
        let text = r#"{"name": "d", "ambient_dim": 4,
            "lattice_generators": [["1/2","1/2","1/2","1/2"],[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
            "vertices": [[1,0,0,0],[0,1,0,0],[-1,0,0,0],[0,-1,0,0]]}"#;
        let f = parse_polytope_file(text).unwrap();
        let n = f.normalized().unwrap();
        assert!(n.lattice_generators.is_none());
        assert_eq!(n.polytope().unwrap().dim(), 2);
        let again = parse_polytope_file(&f.to_json()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_polytope_file("{\"ambient_dim\": 2,\n \"vertices\": [[0, \"x\"]]}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let f = parse_polytope_file(r#"{"ambient_dim": 2, "vertices": [["1/3", 0]]}"#).unwrap();
        assert!(matches!(f.polytope(), Err(Error::NonLatticeVertex { index: 0 })));
        assert!(matches!(
            parse_polytope_file(r#"{"ambient_dim": 2, "vertices": [[1, 0, 0]]}"#),
            Err(Error::Validation(_))
        ));
    }
}
