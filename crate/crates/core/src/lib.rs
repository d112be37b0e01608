pub mod error;
pub mod lattice;
pub mod linalg;

pub use error::{Error, Result};
pub use lattice::{Point, Polytope};
pub mod ehrhart;
pub mod poly;
pub mod poset;
pub mod duality;
pub mod stringy;
pub mod joins;
pub mod nef;
pub mod corpus;
pub mod verify;
pub mod cli;
