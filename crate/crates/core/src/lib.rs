//! Computational core for the correspondence between elliptic curves and
//! noncommutative tori.
//!
//! * [`exactnum`]: exact rationals and quadratic surds
//! * [`cfrac`]: continued fractions of quadratic irrationals, SL2/GL2 equivalence
//! * [`curves`]: moduli, lattice numerics, curve models and the group law
//! * [`nctori`]: real multiplication, Morita equivalence, complexity and ranks
//! * [`starrew`]: relation DSL and rewriting for the torus / Sklyanin presentations

pub mod error;
pub mod cfrac;
pub mod curves;
pub mod exactnum;
pub mod nctori;
pub mod starrew;

pub use error::{Error, Result};
pub use exactnum::{Number, QuadraticSurd, Rational};
