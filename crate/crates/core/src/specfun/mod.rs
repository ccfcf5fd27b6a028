//! Special functions: half-integer Bessel functions and their first extrema,
//! the modulus function, exact Clebsch-Gordan coefficients, and the unitary
//! change between complex and real spherical-harmonic order parameters.

mod basis;
mod bessel;
mod clebsch;

pub use basis::{basis_change, BasisDirection};
pub use bessel::{
    bessel_j_half, bessel_j_half_deriv, bessel_y_half, first_extremum, max_amplitude,
    mod_bessel_ik_product, modulus_m, sph_j, sph_trig_coeffs, sph_y, ExtremumKind, HalfOrder,
};
pub use clebsch::{clebsch_gordan, clebsch_gordan_exact, sqrt_reduce, CgExact, CgIndex, SurdSum};
