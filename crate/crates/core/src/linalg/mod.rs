pub mod laurent;
pub mod matrix;
pub mod poly;

pub use laurent::{poly_divides, LaurentPoly};
pub use matrix::LabeledMatrix;
pub use poly::UniPoly;
