pub mod ball;
pub mod chains;
pub mod config;
pub mod conjugacy;
pub mod error;
pub mod geometry;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod norms;
pub mod report;
pub mod resolutions;
pub mod scans;
pub mod tree;
pub mod verify;

pub use ball::CayleyBall;
pub use chains::Chain;
pub use error::{Error, Result};
pub use group::{Elem, GroupElement, GroupModel, Letter, ModelKind};

/// Exact rational scalars used for every coefficient and constant.
pub type Q = num_rational::BigRational;
