//! Minimize the derived GL energies and inspect the minimizer structure:
//! the five-component d-wave energy has an O(5)-orbit of minimizers, the
//! two-component 2D energy a double cover, and the mixed six-component
//! energy couples the channels according to two closed-form inequalities.
//!
//! Run with: cargo run --release --example minimize_energy

use bcsgl::glcoeff::{GlCoefficients, TensorMode};
use bcsgl::glenergy::Regime;
use bcsgl::glmin::{check_dwave_minimizer, lambda_min, minimize_gl, stability_criteria};
use bcsgl::specfun::{basis_change, BasisDirection};
use std::f64::consts::PI;

fn main() -> bcsgl::Result<()> {
    let (c, d) = (0.8, 0.3);
    let tau = 7.0 * PI * d / (5.0 * c);

    // five-component d-wave energy
    let gl5 = GlCoefficients::single(c, d).with_tensor(TensorMode::Dwave3d)?;
    let res = minimize_gl(&gl5, 5, 64, Regime::BelowTc, 42)?;
    println!("GL5: minimum = {:.12}", res.minimum);
    println!("     closed form -5c tau^2/(14 pi) = {:.12}", -5.0 * c / (14.0 * PI) * tau * tau);
    let real = basis_change(&res.argmin, BasisDirection::ComplexToReal)?;
    let (r1, r2) = check_dwave_minimizer(&real, c, d)?;
    println!("     membership residuals (|sum|psi|^2 - tau|, |sum psi^2|) = ({r1:.2e}, {r2:.2e})");
    println!("     restarts used: {}, gradient norm: {:.2e}", res.restarts_used, res.residuals[0]);

    // two-component 2D energy: (psi, +/- i psi) double cover
    let gl2 = GlCoefficients::single(c, d).with_tensor(TensorMode::Dwave2d)?;
    let res2 = minimize_gl(&gl2, 2, 32, Regime::BelowTc, 42)?;
    let v = &res2.argmin.components;
    println!("\nGL2 (2D): minimum = {:.12} (closed form {:.12})", res2.minimum, -PI * d * d / (2.0 * c));
    println!("     argmin = ({:.6} {:+.6}i, {:.6} {:+.6}i)", v[0].re, v[0].im, v[1].re, v[1].im);
    let ratio = v[1] / v[0];
    println!("     psi_xy / psi_x2y2 = {:.6} {:+.6}i  (expect +/- i)", ratio.re, ratio.im);

    // mixed six-component energy with synthetic profile ratios
    for g in [0.6, 1.2] {
        let mixed = GlCoefficients::synthetic_mixed(c, d, g);
        let rep = stability_criteria(&mixed)?;
        println!(
            "\nGL6 synthetic g = {g}: d-unstable-under-s = {}, s-unstable-under-d = {}, coupled = {}",
            rep.d_unstable_under_s, rep.s_unstable_under_d, rep.nontrivial_coupling
        );
        let tensor = mixed.with_tensor(TensorMode::Mixed3d)?;
        let res6 = minimize_gl(&tensor, 6, 64, Regime::BelowTc, 42)?;
        println!("     empirical minimum = {:.10}", res6.minimum);
        println!("     quadratic-form floor lambda_min = {:.10}", lambda_min(&tensor)?);
    }

    // above the critical temperature the minimum sits at zero
    let above = minimize_gl(&gl5, 5, 8, Regime::AboveTc, 42)?;
    println!("\nabove T_c: minimum = {} at |psi| = {}", above.minimum, above.argmin.norm_sqr());
    Ok(())
}
