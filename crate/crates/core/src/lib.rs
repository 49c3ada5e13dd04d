//! Hearts, simple tilts and exchange graphs for Dynkin quivers, together with the
//! cluster-category and Calabi-Yau pictures they control.

pub mod cluster;
pub mod cy;
pub mod derived;
pub mod error;
pub mod exchange;
pub mod farey;
pub mod garside;
pub mod ginzburg;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod roots;
pub mod suite;

pub use error::{Error, Result};
pub use quiver::{DimVector, Quiver};
