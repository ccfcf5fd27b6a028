//! Report envelopes and the verification suite backing the command-line
//! interface: deterministic JSON reports that embed their configuration and
//! CSV emitters for plot data.

use crate::error::{Error, Result};
use crate::{bcsverify, besseldom, gapspec, glcoeff, glenergy, glmin, kernel, specfun};
use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

/// Numeric knobs shared by the pipelines.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    /// relative quadrature target
    pub quad_rel: f64,
    /// root-finding relative tolerance
    pub root_rel: f64,
    /// envelope constant used in the dominance temperature formula
    pub c_f: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { quad_rel: 1e-12, root_rel: 1e-12, c_f: gapspec::DEFAULT_C_F }
    }
}

/// Flat run configuration mirrored by the CLI flags; a JSON config file with
/// the same fields overrides flag values.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct RunConfig {
    pub mu: Option<f64>,
    pub temp: Option<f64>,
    pub lambda: Option<f64>,
    pub radius: Option<f64>,
    pub l: Option<u32>,
    pub lmax: Option<u32>,
    pub restarts: Option<u32>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub c_f: Option<f64>,
}

impl RunConfig {
    /// Overlay non-null fields of `over` onto `self`.
    pub fn overlay(&mut self, over: RunConfig) {
        macro_rules! take {
            ($f:ident) => {
                if over.$f.is_some() {
                    self.$f = over.$f;
                }
            };
        }
        take!(mu);
        take!(temp);
        take!(lambda);
        take!(radius);
        take!(l);
        take!(lmax);
        take!(restarts);
        take!(seed);
        take!(tol);
        take!(c_f);
    }
}

/// Deterministic report envelope: configuration, tolerances and library
/// version accompany every result.
pub fn envelope(
    command: &str,
    config: &RunConfig,
    tolerances: &Tolerances,
    results: serde_json::Value,
) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "tolerances": tolerances,
        "results": results,
    })
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)
        .map_err(|e| Error::InvalidConfig(format!("json write failed: {e}")))?;
    f.write_all(b"\n")?;
    Ok(())
}

/// CSV with '.' decimal separator and full round-trip float precision.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}

/// One verification check outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of the full invariant suite.
#[derive(Debug, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool, detail: String) {
    checks.push(Check { name: name.into(), passed, detail });
}

/// Run the library's invariant suite; `quick` skips the slower sweeps.
pub fn run_verification(quick: bool) -> Verification {
    use glcoeff::{GlCoefficients, TensorMode};
    use glenergy::{Basis, OrderParameter, Regime};
    use specfun::{ExtremumKind, HalfOrder};
    let mut checks = Vec::new();

    // Table reproduction through the exact tensor against the quadrature oracle
    let tensor = GlCoefficients::synthetic_mixed(1.0, 1.0, 1.0).with_tensor(TensorMode::Mixed3d);
    match tensor {
        Ok(t) => {
            let mut worst = 0.0f64;
            let n = t.n();
            'outer: for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for m in 0..n {
                            let exact = t.exact_entry(i, j, k, m).0.to_f64()
                                / (4.0 * std::f64::consts::PI);
                            let oracle = match glcoeff::angular_oracle(
                                t.labels[i], t.labels[j], t.labels[k], t.labels[m],
                            ) {
                                Ok(v) => v,
                                Err(e) => {
                                    check(&mut checks, "angular-oracle", false, format!("{e}"));
                                    break 'outer;
                                }
                            };
                            worst = worst.max((exact - oracle).abs());
                        }
                    }
                }
            }
            check(
                &mut checks,
                "angular-factors-vs-oracle",
                worst < 1e-9,
                format!("worst |exact - oracle| = {worst:.3e} over all 6^4 tuples"),
            );
        }
        Err(e) => check(&mut checks, "tensor-build", false, format!("{e}")),
    }

    // spot table values at the 28 pi scale
    let pure = GlCoefficients::single(1.0, 1.0).with_tensor(TensorMode::Dwave3d).unwrap();
    let v = pure.c_entry(4, 4, 4, 4).re * 28.0 * std::f64::consts::PI;
    check(&mut checks, "table-2222-is-10c", (v - 10.0).abs() < 1e-12, format!("got {v:.15}"));

    // Clebsch-Gordan orthogonality
    let mut worst = 0.0f64;
    for l1 in 0..=4i32 {
        for l2 in 0..=4i32 {
            for ll in (l1 - l2).abs()..=(l1 + l2) {
                for llp in (l1 - l2).abs()..=(l1 + l2) {
                    let mm = 0;
                    let mut s = 0.0;
                    for m1 in -l1..=l1 {
                        let m2 = mm - m1;
                        if m2.abs() > l2 {
                            continue;
                        }
                        let a = specfun::clebsch_gordan(
                            specfun::CgIndex::new(l1, l2, m1, m2, ll, mm).unwrap(),
                        )
                        .unwrap();
                        let b = specfun::clebsch_gordan(
                            specfun::CgIndex::new(l1, l2, m1, m2, llp, mm).unwrap(),
                        )
                        .unwrap();
                        s += a * b;
                    }
                    let expect = if ll == llp { 1.0 } else { 0.0 };
                    worst = worst.max((s - expect).abs());
                }
            }
        }
    }
    check(&mut checks, "cg-orthogonality", worst < 1e-12, format!("worst residual {worst:.3e}"));

    // Bessel closed forms and recurrence
    let mut worst = 0.0f64;
    let mut x = 0.37;
    while x < 100.0 {
        let j0 = specfun::bessel_j_half(HalfOrder(0), x).unwrap();
        let exact = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        worst = worst.max((j0 - exact).abs() / exact.abs().max(1e-8));
        x += 0.83;
    }
    check(&mut checks, "bessel-closed-form-l0", worst < 1e-12, format!("worst rel {worst:.3e}"));

    // O(5) invariance of the d-wave energy
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    let (c, d) = (0.8, 0.3);
    let rounds = if quick { 20 } else { 100 };
    for _ in 0..rounds {
        let psi: Vec<Complex64> =
            (0..5).map(|_| Complex64::new(gauss(&mut rng), gauss(&mut rng))).collect();
        let op = OrderParameter::new(psi.clone(), Basis::RealSh).unwrap();
        let e0 = glenergy::eval_dwave5(c, d, &op).unwrap();
        let r = random_orthogonal(&mut rng, 5);
        let phase = Complex64::new(0.0, 2.0 * std::f64::consts::PI * gauss(&mut rng)).exp();
        let rotated: Vec<Complex64> = (0..5)
            .map(|i| phase * (0..5).map(|j| r[i * 5 + j] * psi[j]).sum::<Complex64>())
            .collect();
        let op2 = OrderParameter::new(rotated, Basis::RealSh).unwrap();
        let e1 = glenergy::eval_dwave5(c, d, &op2).unwrap();
        worst = worst.max((e0 - e1).abs() / e0.abs().max(1e-6));
    }
    check(&mut checks, "o5-invariance", worst < 1e-10, format!("worst rel {worst:.3e}"));

    // dominance certificates
    let l_top = if quick { 6 } else { 12 };
    let mut all_ok = true;
    let mut detail = String::new();
    for l0 in 0..=l_top {
        match besseldom::verify_first_max_dominance(l0, l0 + 2) {
            Ok(cert) => {
                if !(cert.epsilon > 0.0 && besseldom::check_certificate(&cert, 4001)) {
                    all_ok = false;
                    detail = format!("l0 = {l0}: certificate failed re-check");
                    break;
                }
            }
            Err(e) => {
                all_ok = false;
                detail = format!("l0 = {l0}: {e}");
                break;
            }
        }
    }
    check(
        &mut checks,
        "first-max-dominance",
        all_ok,
        if all_ok { format!("positive margins for l0 <= {l_top}") } else { detail },
    );

    // neighbor identity and intersection
    let mut worst = 0.0f64;
    for l0 in 1..=6u32 {
        let (res, cert) = match besseldom::verify_neighbor_dominance(l0, l0 + 7) {
            Ok(v) => v,
            Err(e) => {
                check(&mut checks, "neighbor-dominance", false, format!("l0={l0}: {e}"));
                worst = f64::INFINITY;
                break;
            }
        };
        worst = worst.max(res);
        if !(cert.epsilon > 0.0) {
            worst = f64::INFINITY;
        }
    }
    check(&mut checks, "neighbor-dominance", worst < 1e-11, format!("worst residual {worst:.3e}"));

    let mut worst = 0.0f64;
    for l in 1..=10u32 {
        let z = besseldom::intersection_z(l).unwrap_or(f64::NAN);
        let x0 = specfun::first_extremum(HalfOrder(l), ExtremumKind::Max).unwrap_or(f64::NAN);
        worst = worst.max((z - x0).abs());
    }
    check(&mut checks, "intersection-at-first-max", worst < 1e-10, format!("worst |dz| {worst:.3e}"));

    // GL minimization closed forms
    let coeffs = GlCoefficients::single(0.8, 0.3).with_tensor(TensorMode::Dwave3d).unwrap();
    let res = glmin::minimize_gl(&coeffs, 5, if quick { 12 } else { 32 }, Regime::BelowTc, 42);
    match res {
        Ok(r) => {
            let tau = 7.0 * std::f64::consts::PI * 0.3 / (5.0 * 0.8);
            let expect = -5.0 * 0.8 / (14.0 * std::f64::consts::PI) * tau * tau;
            let rel = (r.minimum - expect).abs() / expect.abs();
            check(&mut checks, "gl5-minimum", rel < 1e-8, format!("rel err {rel:.3e}"));
        }
        Err(e) => check(&mut checks, "gl5-minimum", false, format!("{e}")),
    }

    // gradient versus central differences on the mixed tensor
    let t6 = GlCoefficients::synthetic_mixed(1.1, 0.4, 0.8)
        .with_tensor(TensorMode::Mixed3d)
        .unwrap();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let psi: Vec<Complex64> =
            (0..6).map(|_| Complex64::new(gauss(&mut rng), gauss(&mut rng))).collect();
        let op = OrderParameter::new(psi, Basis::ComplexSh).unwrap();
        let g = glenergy::gradient(&t6, &op, Regime::BelowTc).unwrap();
        for idx in 0..12 {
            let fd = central_difference(&t6, &op, idx, 1e-6);
            worst = worst.max((g[idx] - fd).abs());
        }
    }
    check(&mut checks, "gradient-vs-fd", worst < 1e-5, format!("worst abs {worst:.3e}"));

    // kernel function sanity
    let cont = (kernel::g1(1e-3 * (1.0 - 1e-12)) - kernel::g1(1e-3 * (1.0 + 1e-12))).abs();
    check(&mut checks, "g-series-crossover", cont < 1e-13, format!("jump {cont:.3e}"));

    // rescaling covariance of the sector coupling
    let p1 = kernel::ModelParams::new(kernel::Dimension::Three, 2.0, 0.1, 1.0, 1.0).unwrap();
    let p2 = kernel::ModelParams::new(kernel::Dimension::Three, 0.5, 0.025, 1.0, 2.0).unwrap();
    let lam1 = gapspec::lambda_l(&p1, 2).unwrap_or(f64::NAN);
    let lam2 = gapspec::lambda_l(&p2, 2).unwrap_or(f64::NAN);
    let rel = (lam1 - 2.0 * lam2).abs() / lam1.abs();
    check(&mut checks, "rescaling-covariance", rel < 1e-8, format!("rel err {rel:.3e}"));

    // semiclassical cancellation at a solved s-wave point (slow-ish)
    if !quick {
        let run = || -> Result<(f64, f64)> {
            let lam = gapspec::lambda_l(
                &kernel::ModelParams::new(kernel::Dimension::Three, 2.0, 0.1, 1.0, 1.0)?,
                0,
            )?;
            let params = kernel::ModelParams::new(kernel::Dimension::Three, 2.0, 0.1, lam, 1.0)?;
            let st = bcsverify::trial_state(
                &params,
                &bcsverify::KernelElement::s_wave(Complex64::new(1.0, 0.0)),
                0.1,
            )?;
            let (e1, _e2, canc) = st.semiclassical_coeffs()?;
            Ok((e1, canc))
        };
        match run() {
            Ok((e1, canc)) => {
                let rel = canc / (e1.abs() * 0.01);
                check(&mut checks, "h2-cancellation", rel < 1e-7, format!("rel {rel:.3e}"));
            }
            Err(e) => check(&mut checks, "h2-cancellation", false, format!("{e}")),
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Verification { checks, passed }
}

fn gauss<R: rand::Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(1e-16..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Haar-ish random orthogonal matrix via Gram-Schmidt on a Gaussian matrix.
pub fn random_orthogonal<R: rand::Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut m: Vec<f64> = (0..n * n).map(|_| gauss(rng)).collect();
    for col in 0..n {
        for prev in 0..col {
            let dot: f64 = (0..n).map(|r| m[r * n + col] * m[r * n + prev]).sum();
            for r in 0..n {
                m[r * n + col] -= dot * m[r * n + prev];
            }
        }
        let norm: f64 = (0..n).map(|r| m[r * n + col] * m[r * n + col]).sum::<f64>().sqrt();
        for r in 0..n {
            m[r * n + col] /= norm;
        }
    }
    m
}

/// Central finite difference of the generic energy along real coordinate idx.
pub fn central_difference(
    coeffs: &glcoeff::GlCoefficients,
    psi: &glenergy::OrderParameter,
    idx: usize,
    step: f64,
) -> f64 {
    let mut plus = psi.clone();
    let mut minus = psi.clone();
    let (comp, part) = (idx / 2, idx % 2);
    if part == 0 {
        plus.components[comp] += Complex64::new(step, 0.0);
        minus.components[comp] -= Complex64::new(step, 0.0);
    } else {
        plus.components[comp] += Complex64::new(0.0, step);
        minus.components[comp] -= Complex64::new(0.0, step);
    }
    let ep = glenergy::eval_generic(coeffs, &plus, glenergy::Regime::BelowTc).unwrap();
    let em = glenergy::eval_generic(coeffs, &minus, glenergy::Regime::BelowTc).unwrap();
    (ep - em) / (2.0 * step)
}
