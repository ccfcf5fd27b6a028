//! The special-function layer: half-integer Bessel functions, the modulus
//! function, first zeros and maxima, exact Clebsch-Gordan coefficients and
//! the five-component basis change.
//!
//! Run with: cargo run --release --example special_functions

use bcsgl::glenergy::{Basis, OrderParameter};
use bcsgl::specfun::{
    basis_change, bessel_j_half, clebsch_gordan, first_extremum, modulus_m, BasisDirection,
    CgIndex, ExtremumKind, HalfOrder,
};
use num::complex::Complex64;
use std::f64::consts::PI;

fn main() -> bcsgl::Result<()> {
    println!("J_(l+1/2)(x):");
    for (l, x) in [(0u32, PI / 2.0), (1, 2.0), (7, 3.5), (12, 20.0)] {
        println!("  l = {l:>2}, x = {x:<6}: {:.15}", bessel_j_half(HalfOrder(l), x)?);
    }

    println!("\nmodulus M_(l+1/2)(x) = sqrt(J^2 + Y^2):");
    for (l, x) in [(0u32, 2.0), (2, 5.0), (5, 9.0)] {
        println!("  l = {l}, x = {x}: {:.15}", modulus_m(HalfOrder(l), x)?);
    }

    println!("\nfirst zeros and maxima:");
    for l in 0..=4u32 {
        let z = first_extremum(HalfOrder(l), ExtremumKind::Zero)?;
        let m = first_extremum(HalfOrder(l), ExtremumKind::Max)?;
        println!("  l = {l}: j'_(l+1/2),1 = {m:.12}, j_(l+1/2),1 = {z:.12}");
    }

    println!("\nClebsch-Gordan coefficients <2,2;m1,m2|L;M>:");
    for (m1, m2, ll) in [(0, 0, 0), (0, 0, 2), (0, 0, 4), (1, -1, 2), (2, 2, 4)] {
        let v = clebsch_gordan(CgIndex::new(2, 2, m1, m2, ll, m1 + m2)?)?;
        println!("  <2,2;{m1},{m2}|{ll};{}> = {v:.15}", m1 + m2);
    }

    // the unitary map between complex and real spherical-harmonic coordinates
    let psi = OrderParameter::new(
        vec![
            Complex64::new(0.3, -0.2),
            Complex64::new(0.0, 0.5),
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.4, 0.1),
            Complex64::new(0.2, 0.2),
        ],
        Basis::RealSh,
    )?;
    let complex = basis_change(&psi, BasisDirection::RealToComplex)?;
    let back = basis_change(&complex, BasisDirection::ComplexToReal)?;
    let round_trip: f64 = psi
        .components
        .iter()
        .zip(&back.components)
        .map(|(a, b)| (a - b).norm())
        .sum();
    println!("\nbasis change: norm preserved to {:.2e}, round trip to {round_trip:.2e}",
        (complex.norm_sqr() - psi.norm_sqr()).abs());
    Ok(())
}
