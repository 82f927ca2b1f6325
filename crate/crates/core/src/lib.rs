pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod deformation;
pub mod differential;
pub mod error;
pub mod ls;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
