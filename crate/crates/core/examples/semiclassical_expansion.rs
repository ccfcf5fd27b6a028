//! Verify the free-energy expansion of the trial BCS states: the h^2 terms
//! cancel through the eigenvalue equation, the h^4 coefficient is the GL
//! energy of the kernel element, and the remainder scales like h^6.
//!
//! Run with: cargo run --release --example semiclassical_expansion

use bcsgl::bcsverify::{scaling_scan, trial_state, KernelElement};
use bcsgl::gapspec::lambda_l;
use bcsgl::kernel::{Dimension, ModelParams};
use num::complex::Complex64;

fn main() -> bcsgl::Result<()> {
    let (mu, tc, radius) = (2.0, 0.1, 1.0);
    let lambda = lambda_l(&ModelParams::new(Dimension::Three, mu, tc, 1.0, radius)?, 0)?;
    let params = ModelParams::new(Dimension::Three, mu, tc, lambda, radius)?;
    let element = KernelElement::s_wave(Complex64::new(1.0, 0.0));

    let st = trial_state(&params, &element, 0.1)?;
    let (e1, e2, cancellation) = st.semiclassical_coeffs()?;
    println!("s-wave trial state at (mu = {mu}, Tc = {tc}, lambda = {lambda:.10}):");
    println!("  E1 = {e1:.12}");
    println!("  E2 = {e2:.12}");
    println!("  h^2-cancellation residual (quadrature vs shell formula): {cancellation:.2e}\n");

    let scan = scaling_scan(&params, &element, &[0.2, 0.1, 0.05, 0.025])?;
    println!(
        "{:>7} {:>16} {:>16} {:>13} {:>13}",
        "h", "deltaF", "h^4 E2", "remainder", "H1 remainder"
    );
    for row in &scan.rows {
        println!(
            "{:>7} {:>16.9e} {:>16.9e} {:>13.4e} {:>13.4e}",
            row.h, row.delta_f, row.h4_e2, row.remainder, row.h1_remainder
        );
    }
    println!("\nfitted remainder order:      {:.3} (expect 6)", scan.free_energy_slope);
    println!("fitted H^1 remainder order:  {:.3} (expect 6)", scan.h1_slope);

    let path = std::env::temp_dir().join("semiclassical_scan.csv");
    let rows: Vec<Vec<f64>> = scan
        .rows
        .iter()
        .map(|r| vec![r.h, r.delta_f, r.h4_e2, r.remainder, r.h1_remainder])
        .collect();
    bcsgl::report::write_csv(&path, "h,delta_f,h4_e2,remainder,h1_remainder", &rows)?;
    println!("scan written to {}", path.display());
    Ok(())
}
