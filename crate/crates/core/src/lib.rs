//! Exact computations for the general linear supergroup GL(m|n).

pub mod arith;
pub mod bidet;
pub mod dist;
pub mod error;
pub mod linalg;
pub mod superpoly;
pub mod tableaux;
pub mod weights;

pub use arith::{FieldConfig, Scalar};
pub use error::{Error, Result};
pub use tableaux::{Partition, ShapeData, Tableau};
pub use weights::{Weight, WeightIdeal};
