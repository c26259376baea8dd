//! Elliptic curves over C: moduli and their reduction, lattice numerics,
//! Weierstrass/Legendre/Jacobi models and the chord-tangent group law.

mod forms;
mod group;
mod lattice;
mod modulus;
pub mod numeric;

pub use forms::{
    j_invariant, legendre_to_weierstrass, sklyanin_to_jacobi, JacobiIntersection, LegendreCurve,
    WeierstrassCurve, SKLYANIN_EPS,
};
pub use group::{
    lattice_coordinates, point_add, point_order, torus_add, transport, AffinePoint, Cubic, CurveField,
};
pub use lattice::{eisenstein_g2_g3, wp, wp_prime, Eisenstein, Lattice, MIN_SHELLS, POLE_RADIUS};
pub use modulus::{act, cm_discriminant, isomorphic, parse_complex, reduce_modulus, Isomorphism, Modulus};
pub use numeric::CQuad;

/// Shell count used when callers do not choose one.
pub const DEFAULT_SHELLS: u32 = 60;
