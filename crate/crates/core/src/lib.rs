//! Root-system and component-cluster computations for acyclic quivers.

pub mod affine;
pub mod catalog;
pub mod cc;
pub mod clusters;
pub mod error;
pub mod homext;
pub mod laurent;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod vector;

pub use clusters::{ComponentCluster, SearchBound};
pub use error::{Error, Result};
pub use homext::{GenSchurRoot, GenericDecomposition, HomExt, RootKind};
pub use laurent::LaurentPoly;
pub use quiver::{ComponentClass, Quiver, QuiverClass, RootType};
pub use vector::DimVector;
