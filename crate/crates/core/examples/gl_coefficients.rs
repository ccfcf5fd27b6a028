//! Compute the Ginzburg-Landau coefficients of the sector eigenfunctions:
//! the scalar radial integrals and the full quartic tensor over the
//! spherical-harmonic basis, exported as JSON.
//!
//! Run with: cargo run --release --example gl_coefficients

use bcsgl::gapspec::{find_sd_degeneracy, lambda_l, rho_profile, ProfileSpace};
use bcsgl::glcoeff::{c_tensor, radial_coeffs, TensorMode};
use bcsgl::kernel::{f_weights, Dimension, ModelParams};

fn main() -> bcsgl::Result<()> {
    // pure d-wave profile at (mu, Tc, R)
    let (mu, tc, radius) = (2.0, 0.1, 1.0);
    let lam2 = lambda_l(&ModelParams::new(Dimension::Three, mu, tc, 1.0, radius)?, 2)?;
    let params = ModelParams::new(Dimension::Three, mu, tc, lam2, radius)?;
    let rho = rho_profile(&params, 2, ProfileSpace::Momentum)?;

    let (f2, f4) = f_weights(&params, &rho, 1.4);
    println!("radial weights at p = 1.4: f2 = {f2:.12}, f4 = {f4:.12}");

    let coeffs = radial_coeffs(&params, &rho, None)?;
    println!("pure d-wave scalars: c = {:.12}, d = {:.12}", coeffs.c, coeffs.d);
    let tensor = c_tensor(TensorMode::Dwave3d, &coeffs)?;
    // a few table entries at the 28 pi scale
    let idx = |m: i8| (m + 2) as usize;
    let scale = 28.0 * std::f64::consts::PI;
    println!("tensor entries (x 28 pi, in units of c):");
    for (i, j, k, m) in [(2i8, 2i8, 2i8, 2i8), (0, 0, 0, 0), (0, 0, 1, -1)] {
        let v = tensor.c_entry(idx(i), idx(j), idx(k), idx(m)).re * scale / coeffs.c;
        println!("  c[{i},{j},{k},{m}] * 28 pi = {v:.12} c");
    }

    // mixed (s+d) coefficients at the degeneracy point
    let t = 0.02;
    let (mu_t, lambda) = find_sd_degeneracy(t, radius)?;
    let p_sd = ModelParams::new(Dimension::Three, mu_t, t, lambda, radius)?;
    let rho_d = rho_profile(&p_sd, 2, ProfileSpace::Momentum)?;
    let rho_s = rho_profile(&p_sd, 0, ProfileSpace::Momentum)?;
    let mixed = radial_coeffs(&p_sd, &rho_d, Some(&rho_s))?;
    println!("\nmixed scalars at the (s+d) point (mu_T = {mu_t:.8}):");
    println!("  c    = {:.10}   d    = {:.10}", mixed.c, mixed.d);
    println!("  c1s  = {:.10}   c2s  = {:.10}", mixed.c1s.unwrap(), mixed.c2s.unwrap());
    println!("  c4s  = {:.10}   d2s  = {:.10}", mixed.c4s.unwrap(), mixed.d2s.unwrap());

    let full = c_tensor(TensorMode::Mixed3d, &mixed)?;
    let path = std::env::temp_dir().join("gl_tensor.json");
    bcsgl::report::write_json(&path, &full.export_json())?;
    println!("\nfull 6x6x6x6 tensor exported to {}", path.display());
    Ok(())
}
