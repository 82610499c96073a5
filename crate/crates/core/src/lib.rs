//! GF(2) linear algebra, CSS code construction, transversality deciders for
//! CNOT and CZ between pairs of CSS codes, exact state-vector oracles, and a
//! simulator for Bell-pair swapping between two repeater stations.

pub mod codes;
pub mod corpus;
pub mod error;
pub mod format;
pub mod gf2;
pub mod repeater;
pub mod statevec;
pub mod transversality;

pub use codes::{make_classical, make_css, ClassicalCode, CssCode};
pub use error::{Error, ParseError, Result};
pub use gf2::BitMatrix;
