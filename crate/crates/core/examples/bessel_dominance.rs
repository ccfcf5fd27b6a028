//! Certify that each squared half-integer Bessel function dominates the
//! whole family near its first maximum, and export the family plot data.
//!
//! Run with: cargo run --release --example bessel_dominance

use bcsgl::besseldom::{
    check_certificate, figure_data, intersection_z, verify_first_max_dominance,
    verify_neighbor_dominance,
};
use bcsgl::specfun::{first_extremum, ExtremumKind, HalfOrder};

fn main() -> bcsgl::Result<()> {
    println!("first-maximum dominance certificates:");
    println!("{:>4} {:>10} {:>22} {:>12} {:>12}", "l0", "x0", "interval", "epsilon", "tail bound");
    for l0 in 0..=12 {
        let cert = verify_first_max_dominance(l0, l0 + 2)?;
        assert!(check_certificate(&cert, 4001));
        println!(
            "{:>4} {:>10.6} ({:>9.6}, {:>9.6}) {:>12.4e} {:>12.4e}",
            l0, cert.x0, cert.interval.0, cert.interval.1, cert.epsilon, cert.tail_bound
        );
    }

    println!("\nneighbor equality J_(l0-1/2) = J_(l0+3/2) at the first maximum:");
    for l0 in 1..=6 {
        let (residual, cert) = verify_neighbor_dominance(l0, l0 + 7)?;
        println!(
            "  l0 = {l0}: residual {residual:.2e}, odd-family margin {:.4e} on ({:.4}, {:.4})",
            cert.epsilon, cert.interval.0, cert.interval.1
        );
    }

    println!("\nfirst intersection of J^2_(l-1/2) and J^2_(l+3/2) vs first maximum:");
    for l in 1..=6 {
        let z = intersection_z(l)?;
        let x0 = first_extremum(HalfOrder(l), ExtremumKind::Max)?;
        println!("  l = {l}: z = {z:.12}, j'_(l+1/2),1 = {x0:.12}, diff {:.1e}", (z - x0).abs());
    }

    // plot data for the squared family over [0, 25]
    let rows = figure_data(11, 25.0, 1000);
    let path = std::env::temp_dir().join("bessel_family.csv");
    let data: Vec<Vec<f64>> = rows.into_iter().map(|(x, l, j2)| vec![x, l as f64, j2]).collect();
    bcsgl::report::write_csv(&path, "x,l,j_squared", &data)?;
    println!("\nfamily plot data written to {}", path.display());
    Ok(())
}
