//! Sweep the (s+d) degeneracy point over temperature: at mu_T the l = 0 and
//! l = 2 coupling thresholds coincide, producing a six-dimensional kernel,
//! and sqrt(mu_T) approaches the first maximum position of J_{3/2} as the
//! temperature drops.
//!
//! Run with: cargo run --release --example sd_degeneracy

use bcsgl::besseldom::intersection_z;
use bcsgl::gapspec::{find_sd_degeneracy, scan_degeneracy_ln, sd_balance_ln, LnTemp};

fn main() -> bcsgl::Result<()> {
    let radius = 1.0;
    let z_half = intersection_z(1)?; // = j'_{3/2,1}
    println!("target: z_1/2 = j'_(3/2),1 = {z_half:.12}\n");
    println!(
        "{:>8} {:>16} {:>16} {:>14} {:>12}",
        "T", "mu_T", "lambda", "sqrt(mu_T)", "|sqrt-z|"
    );
    for &t in &[0.1, 0.05, 0.025, 0.0125] {
        let (mu_t, lambda) = find_sd_degeneracy(t, radius)?;
        println!(
            "{:>8} {:>16.10} {:>16.10} {:>14.10} {:>12.6}",
            t,
            mu_t,
            lambda,
            mu_t.sqrt(),
            (mu_t.sqrt() - z_half).abs()
        );
    }

    // at the solved point the even-sector scan shows the degenerate pair
    let t = 0.025;
    let (mu_t, _) = find_sd_degeneracy(t, radius)?;
    let temp = LnTemp::from_t(t)?;
    println!("\nbalance residual at the root: {:.2e}", sd_balance_ln(mu_t, radius, temp)?);
    let spec = scan_degeneracy_ln(mu_t, radius, temp, 8, true)?;
    println!("even-sector couplings at (T = {t}, mu_T = {mu_t:.8}):");
    for (l, lam) in &spec.lambdas {
        println!("  lambda_{l} = {lam:.12}");
    }
    println!("degenerate pairs: {:?}, kernel dimension {}", spec.degenerate_pairs, spec.kernel_dim);
    Ok(())
}
