//! Identification, disambiguation and evaluation of adposition and
//! possessive supersenses, plus interannotator-agreement analysis.

pub mod agreement;
pub mod corpus;
pub mod disambig;
pub mod eval;
pub mod hierarchy;
pub mod lexres;
pub mod pipeline;
pub mod targetid;

pub use hierarchy::{Construal, Dimension, Hierarchy, HierarchyError, RoleOnly};
