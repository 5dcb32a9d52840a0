pub mod cyclo;
pub mod pi;
pub mod radical;
pub mod rational;

pub use cyclo::{galois_orbit_product, CycloElem, CycloRing};
pub use pi::{PAdicValue, PiElem, PiField};
pub use radical::{RadicalElem, RadicalExt};
pub use rational::Rational;
