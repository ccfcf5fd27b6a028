//! From a dominance certificate to explicit parameter boxes: an open
//! chemical-potential interval, a temperature ceiling T_* and a coupling
//! ceiling lambda_* inside which the chosen sector wins the ground state.
//!
//! T_* is a rigorous but extremely conservative bound; it is carried in log
//! scale because it routinely underflows f64.
//!
//! Run with: cargo run --release --example derive_parameters

use bcsgl::besseldom::verify_first_max_dominance;
use bcsgl::gapspec::{params_from_dominance, scan_degeneracy_ln, solve_tc_ln};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bcsgl::Result<()> {
    let radius = 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l0 in 0..=3u32 {
        let cert = verify_first_max_dominance(l0, l0 + 2)?;
        let derived = params_from_dominance(l0, radius, &cert, None)?;
        println!("l0 = {l0}:");
        println!("  mu interval  ({:.6}, {:.6})", derived.interval.0, derived.interval.1);
        println!("  ln T_*       {:.3}  (T_* = {:.3e})", derived.ln_t_star, derived.t_star);
        println!("  lambda_*     {:.8}", derived.lambda_star);

        // spot-check: a random point in the box selects sector l0
        let mu = rng.gen_range(derived.interval.0..derived.interval.1);
        let lambda = 0.8 * derived.lambda_star;
        let tc = solve_tc_ln(lambda, mu, radius, l0)?;
        let spec = scan_degeneracy_ln(mu, radius, tc, 12, false)?;
        println!(
            "  spot check: mu = {mu:.4}, lambda = {lambda:.6} -> ln T_c = {:.2}, argmin sector = {}\n",
            tc.ln(),
            spec.l0
        );
        assert_eq!(spec.l0, l0);
    }
    Ok(())
}
