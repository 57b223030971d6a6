//! Finite union-closed set families over ground sets of at most 64 elements:
//! the known constructions with few abundant elements, dual-family analysis,
//! conjecture predicates and exhaustive search for small ground sets.

pub mod abundance;
pub mod cli;
pub mod conjectures;
pub mod constructions;
pub mod dual_analysis;
pub mod error;
pub mod family;
pub mod inequality;
pub mod io;
pub mod search;
pub mod twins;

pub use abundance::{analyze, AbundanceReport};
pub use error::{Error, Result};
pub use family::{
    canonicalize, dual, dual_within, is_union_closed, union_closure, GroundSize, MemberSet,
    SetFamily,
};
pub use io::{emit_family, parse_family, AnalysisDocument, ParseError};
