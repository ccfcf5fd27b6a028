//! Solve the critical temperature of a delta-shell sector.
//!
//! The sector coupling lambda_l(T, mu) is the coupling strength at which the
//! effective gap operator reaches zero energy in sector l; the critical
//! temperature inverts that relation at fixed coupling.
//!
//! Run with: cargo run --release --example critical_temperature

use bcsgl::gapspec::{ev_condition_rhs, lambda_l, solve_tc};
use bcsgl::kernel::{Dimension, ModelParams};

fn main() -> bcsgl::Result<()> {
    let (mu, radius) = (2.0, 1.0);

    // forward: coupling thresholds at a reference temperature
    let t_ref = 0.1;
    let params = ModelParams::new(Dimension::Three, mu, t_ref, 1.0, radius)?;
    println!("sector couplings at T = {t_ref}, mu = {mu}, R = {radius}:");
    for l in 0..=4 {
        println!("  lambda_{l} = {:.12}", lambda_l(&params, l)?);
    }

    // inverse: pick the l = 0 coupling and recover the temperature
    let lambda = lambda_l(&params, 0)?;
    let tc = solve_tc(lambda, mu, radius, 0)?;
    println!("\nsolve_tc(lambda = {lambda:.12}) = {tc:.12}  (round trip of T = {t_ref})");

    // the eigenvalue condition holds at the solution
    let solved = ModelParams::new(Dimension::Three, mu, tc, lambda, radius)?;
    let residual = (1.0 - lambda * ev_condition_rhs(&solved, 0, 0.0)?).abs();
    println!("eigenvalue-condition residual: {residual:.3e}");

    // T_c grows with coupling
    println!("\ncoupling sweep:");
    for frac in [0.5, 0.75, 1.0, 1.5] {
        let t = solve_tc(lambda * frac, mu, radius, 0)?;
        println!("  lambda x {frac:<4} -> T_c = {t:.8}");
    }
    Ok(())
}
