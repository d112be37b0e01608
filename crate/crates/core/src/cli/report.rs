//! Report records: one JSON line per input in the machine format, a
//! key/value table in the text format.

use serde::Serialize;

use crate::ehrhart::{Classification, HStarProfile};
use crate::error::Error;
use crate::joins::{ConstantProduct, EqualityPair, FaceDuality, JoinCertificate, Multiplicativity};
use crate::lattice::Point;
use crate::nef::{DirectSumSplit, NefInvalid, RoundTrip, SplitStringy, ZSplit};
use crate::poly::{BiPoly, UniPoly};
use crate::stringy::{ConjectureCheck, ContributingFace, LeadingQuestions, StringyReport};
use crate::verify::PropertySummary;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InputError,
    TheoremViolation,
    ConjectureFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => super::EXIT_OK,
            Status::InputError => super::EXIT_INPUT,
            Status::TheoremViolation => super::EXIT_VIOLATION,
            Status::ConjectureFailure => super::EXIT_CONJECTURE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub stage: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub message: String,
}

fn module_of(e: &Error) -> Option<String> {
    match e {
        Error::InternalInconsistency { module, .. }
        | Error::NegativeCoefficient { module, .. }
        | Error::TheoremViolation { module, .. } => Some(module.to_string()),
        Error::NonPolynomialResult { .. } => Some("stringy".into()),
        Error::GorensteinHeightViolation { .. } => Some("duality".into()),
        _ => None,
    }
}

macro_rules! report {
    ($($(#[$m:meta])* $field:ident : $ty:ty),* $(,)?) => {
        /// One record per input file. Absent fields were not computed by the
        /// command.
        #[derive(Debug, Clone, PartialEq, Eq, Serialize)]
        pub struct Report {
            pub schema_version: u32,
            pub command: String,
            pub name: String,
            pub status: Status,
            $(
                $(#[$m])*
                #[serde(skip_serializing_if = "Option::is_none")]
                pub $field: Option<$ty>,
            )*
        }

        impl Report {
            pub fn new(command: &str, name: String) -> Self {
                Report {
                    schema_version: SCHEMA_VERSION,
                    command: command.to_string(),
                    name,
                    status: Status::Ok,
                    $($field: None,)*
                }
            }
        }
    };
}

report! {
    error: ErrorRecord,
    dim: isize,
    ambient_dim: usize,
    num_vertices: usize,
    f_vector: Vec<usize>,
    faces: Vec<Vec<usize>>,
    hstar: UniPoly,
    hstar_text: String,
    degree: usize,
    codegree: usize,
    ehrhart_counts: Vec<u64>,
    gorenstein: bool,
    gorenstein_index: usize,
    reflexive: bool,
    interior_point: Point,
    cy_dim: i64,
    dual_vertices: Vec<Point>,
    dual_hstar: UniPoly,
    self_dual: bool,
    s_tilde: UniPoly,
    s_tilde_dual: UniPoly,
    /// Sparse monomials `[i, j, c]` for `c·u^i v^j`.
    e_st: BiPoly,
    e_st_text: String,
    census_count: usize,
    census: Vec<Vec<usize>>,
    contributing_faces: Vec<ContributingFace>,
    irreducible: bool,
    equality_faces: Vec<EqualityPair>,
    constant_products: Vec<ConstantProduct>,
    join: JoinCertificate,
    multiplicativity: Multiplicativity,
    face_duality: FaceDuality,
    properties: PropertySummary,
    conjecture: Vec<ConjectureCheck>,
    questions: LeadingQuestions,
    reproducer: String,
    parts: usize,
    nef_valid: bool,
    nef_invalid: NefInvalid,
    cayley_vertices: Vec<Point>,
    round_trip: RoundTrip,
    splits: Vec<DirectSumSplit>,
    z_split: Option<ZSplit>,
    split_stringy: Vec<SplitStringy>,
}

impl Report {
    pub fn fail(&mut self, stage: &str, e: &Error) {
        self.status = if e.is_theorem_violation() {
            Status::TheoremViolation
        } else {
            Status::InputError
        };
        self.error = Some(ErrorRecord {
            stage: stage.to_string(),
            module: module_of(e),
            message: e.to_string(),
        });
    }

    pub fn set_profile(&mut self, p: &HStarProfile) {
        self.hstar_text = Some(p.hstar.to_string());
        self.hstar = Some(p.hstar.clone());
        self.degree = Some(p.degree);
        self.codegree = Some(p.codegree);
    }

    pub fn set_class(&mut self, c: &Classification) {
        self.gorenstein = Some(c.gorenstein_index.is_some());
        self.gorenstein_index = c.gorenstein_index;
        self.reflexive = Some(c.reflexive);
        self.interior_point = c.interior_point.clone();
    }

    pub fn set_stringy(&mut self, st: &StringyReport) {
        self.cy_dim = Some(st.cy_dim);
        self.e_st_text = Some(st.e_st.to_string());
        self.e_st = Some(st.e_st.clone());
        self.census_count = Some(st.census.len());
        self.census = Some(st.census.clone());
        self.contributing_faces = Some(st.contributing_faces.clone());
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// A two-column table; strings are shown raw, everything else as compact
    /// JSON.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let map = value.as_object().expect("reports are objects");
        let mut out = format!("== {} [{}] {:?}\n", self.name, self.command, self.status);
        let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in map {
            if matches!(k.as_str(), "name" | "command" | "status" | "schema_version") {
                continue;
            }
            let shown = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k:<width$}  {shown}\n"));
        }
        out.pop();
        out
    }
}
