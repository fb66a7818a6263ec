//! Upper bounds on the proportion of holomorphic cusp newforms whose
//! L-functions vanish to at least a given order at the central point.

pub mod bounds;
pub mod error;
pub mod group;
pub mod moments;
pub mod quadrature;
pub mod report;
pub mod test_functions;

pub use error::{Error, Result};
pub use group::SymmetryGroup;
pub use quadrature::QuadratureSpec;
pub use test_functions::{TestFunction, TfChoice, TfKind};
