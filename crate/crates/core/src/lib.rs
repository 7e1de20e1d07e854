//! Exact invariants of pretzel knots and a machine check of the obstructions
//! ruling out purely cosmetic surgeries on them.

pub mod alexander;
pub mod conway;
pub mod genus;
pub mod jones;
pub mod laurent;
pub mod pcsc;
pub mod pretzel;

pub use conway::ConwayPoly;
pub use laurent::{LaurentPoly, Rational};
pub use pretzel::{ParityClass, PretzelParams};
