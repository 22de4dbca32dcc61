//! Exact computation with algebraic solutions of the sixth Painleve equation.
//!
//! Solutions live in function fields `Q(s)(sqrt f1, sqrt f2)`. The crate
//! verifies them against the equation, generates new ones by quadratic
//! transformations, and certifies the geometry of the underlying curves.

pub mod arith;
pub mod catalog;
pub mod checks;
pub mod curve;
pub mod field;
pub mod pipeline;
pub mod pvi;
pub mod transforms;
