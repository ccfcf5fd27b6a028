//! Scan the per-sector coupling thresholds and report which angular
//! momentum wins the ground state, including degeneracy detection.
//!
//! Run with: cargo run --release --example sector_scan

use bcsgl::gapspec::{find_sd_degeneracy, scan_degeneracy, scan_degeneracy_ln, LnTemp};
use bcsgl::kernel::{Dimension, ModelParams};

fn main() -> bcsgl::Result<()> {
    // a chemical potential near the first maximum of J_{5/2} favors l = 2
    let params = ModelParams::new(Dimension::Three, 13.2, 0.05, 1.0, 1.0)?;
    let spec = scan_degeneracy(&params, 8)?;
    println!("mu = {}, T = {}:", params.mu, params.temperature);
    for (l, lam) in &spec.lambdas {
        let marker = if *l == spec.l0 { "  <- minimum" } else { "" };
        println!("  lambda_{l} = {lam:.10}{marker}");
    }
    println!("ground-state sector l0 = {}, kernel dimension = {}", spec.l0, spec.kernel_dim);

    // at the s/d balance point the scan flags a degenerate pair
    let t = 0.02;
    let (mu_t, lambda) = find_sd_degeneracy(t, 1.0)?;
    println!("\n(s+d) degeneracy at T = {t}: mu_T = {mu_t:.12}, lambda = {lambda:.12}");
    let spec = scan_degeneracy_ln(mu_t, 1.0, LnTemp::from_t(t)?, 8, true)?;
    for (l, lam) in &spec.lambdas {
        println!("  lambda_{l} = {lam:.12}");
    }
    println!("degenerate pairs: {:?}", spec.degenerate_pairs);
    println!("kernel dimension: {} (1 s-channel + 5 d-channels)", spec.kernel_dim);
    Ok(())
}
