//! Exact computations for vertex-weighted graphs and their Z_p^d-towers:
//! matrix-tree theorems, voltage covers, h-functions, Q-series and
//! Iwasawa invariants.

pub mod error;
pub mod field;
pub mod graph;
pub mod io;
pub mod iwasawa;
pub mod lfunc;
pub mod linalg;
pub mod matrix_tree;
pub mod ring;
pub mod voltage;

pub use error::{Error, Result};
pub use ring::{Field, Ring};
