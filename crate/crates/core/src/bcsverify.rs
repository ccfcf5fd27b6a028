//! Trial BCS states built from sector eigenfunctions, the free-energy
//! difference against the normal state, and verification of the h^2/h^4/h^6
//! structure of its expansion near the critical temperature.
//!
//! The difference is evaluated in a rearranged, exponentially convergent
//! form: the trace term is combined with the quadratic kernel energy whose
//! exact counterpart cancels against the shell potential term, so no
//! slowly-decaying oscillatory integrals remain.

use crate::error::{Error, Result};
use crate::gapspec::{
    eigencondition_residual, norm_integral, sector_coupling_integral as sector_integral,
    shell_position_value, LnTemp,
};
use crate::glcoeff::{y_lm, Label};
use crate::kernel::{g1_over_z, k_t_raw, sech2_half, Dimension, ModelParams};
use crate::quad::{adaptive, gauss_legendre};
use crate::specfun::sph_j;
use num::complex::Complex64;
use std::f64::consts::PI;

/// A kernel element: sector index and coefficient vector over m = -l0..l0
/// (complex spherical-harmonic basis).
#[derive(Debug, Clone)]
pub struct KernelElement {
    pub l0: u32,
    pub coeffs: Vec<Complex64>,
}

impl KernelElement {
    pub fn s_wave(psi: Complex64) -> Self {
        Self { l0: 0, coeffs: vec![psi] }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Trial BCS state Gamma_Delta with gap function Delta = 2h (V a)-hat built
/// on a kernel element a of the sector problem at (T_c, mu, lambda, R).
#[derive(Debug, Clone)]
pub struct TrialState {
    pub params: ModelParams,
    pub element: KernelElement,
    pub h: f64,
    /// L^2(p^2 dp) normalization of the radial eigenfunction
    norm: f64,
}

/// Build a trial state; the parameters must satisfy the sector eigenvalue
/// condition to 1e-8 and 0 < h < 1.
pub fn trial_state(params: &ModelParams, a: &KernelElement, h: f64) -> Result<TrialState> {
    params.validate()?;
    if params.dimension != Dimension::Three {
        return Err(Error::Domain("trial states are implemented for D = 3".into()));
    }
    if !(h >= 0.0 && h < 1.0) {
        return Err(Error::Domain(format!("h must lie in [0, 1), got {h}")));
    }
    if a.l0 != 0 && a.l0 != 2 {
        return Err(Error::Domain("trial states support sectors l0 = 0 and l0 = 2".into()));
    }
    if a.coeffs.len() != (2 * a.l0 + 1) as usize {
        return Err(Error::DimensionMismatch {
            expected: (2 * a.l0 + 1) as usize,
            got: a.coeffs.len(),
        });
    }
    let residual = eigencondition_residual(params, a.l0)?;
    if residual > 1e-8 {
        return Err(Error::ConditionNotSatisfied(residual));
    }
    let temp = LnTemp::from_t(params.temperature)?;
    let q = norm_integral(a.l0, params.radius, params.mu, temp)?;
    Ok(TrialState { params: *params, element: a.clone(), h, norm: 1.0 / q.sqrt() })
}

impl TrialState {
    /// temperature of the trial free energy, T = T_c (1 - h^2)
    pub fn t_actual(&self) -> f64 {
        self.params.temperature * (1.0 - self.h * self.h)
    }

    /// radial factor of |t|^2: |t(p, w)|^2 = t2_radial(p) |Y(w)|^2
    fn t2_radial(&self, p: f64) -> f64 {
        let x = p * self.params.radius;
        let j = (2.0 * x / PI).sqrt() * sph_j(self.element.l0, x);
        4.0 * self.norm * self.norm * j * j / p
    }

    /// |Y(w)|^2 on the angular grid (l0 = 0 gives the constant 1/(4 pi)).
    fn angular_weights(&self) -> Vec<(f64, f64)> {
        // (quadrature weight, |Y|^2) pairs; weights sum to 4 pi
        if self.element.l0 == 0 {
            let y2 = self.element.coeffs[0].norm_sqr() / (4.0 * PI);
            return vec![(4.0 * PI, y2)];
        }
        let (nodes, weights) = gauss_legendre(32);
        let n_phi = 64usize;
        let dphi = 2.0 * PI / n_phi as f64;
        let mut out = Vec::with_capacity(nodes.len() * n_phi);
        for (&u, &w) in nodes.iter().zip(&weights) {
            for q in 0..n_phi {
                let phi = q as f64 * dphi;
                let mut y = Complex64::new(0.0, 0.0);
                for (mi, &psi) in self.element.coeffs.iter().enumerate() {
                    let m = mi as i8 - 2;
                    y += psi * y_lm(Label::M(m), u, phi);
                }
                out.push((w * dphi, y.norm_sqr()));
            }
        }
        out
    }

    /// Quasiparticle data at momentum p and angular weight y2 = |Y(w)|^2.
    pub fn quasiparticle(&self, p: f64, y2: f64) -> Quasiparticle {
        let hh = p * p - self.params.mu;
        let delta2 = self.h * self.h * self.t2_radial(p) * y2;
        let e = (hh * hh + delta2).sqrt();
        let t = self.t_actual();
        let th = |x: f64| if x.abs() < 1e-30 { 1.0 } else { x.tanh() / x };
        let gamma = 0.5 * (1.0 - hh * th(e / (2.0 * t)) / (2.0 * t));
        let alpha_abs = 0.5 * delta2.sqrt() * th(e / (2.0 * t)) / (2.0 * t);
        Quasiparticle { energy: e, delta_abs: delta2.sqrt(), gamma, alpha_abs }
    }

    /// Combined integrand of the trace term plus the quadratic kernel-energy
    /// counterterm, free of catastrophic cancellation and exponentially
    /// convergent beyond the Fermi region.
    fn combined_radial(&self, p: f64, y2: f64) -> f64 {
        let t = self.t_actual();
        let tc = self.params.temperature;
        let hh_abs = (p * p - self.params.mu).abs();
        let d2 = self.h * self.h * self.t2_radial(p) * y2;
        let e = (hh_abs * hh_abs + d2).sqrt();
        let k = k_t_raw(self.params.mu, tc, p);
        // 2 |h| (coth(x) - 1) with x = |h|/(2 Tc), stable at x -> 0
        let x = hh_abs / (2.0 * tc);
        let two_h_q = if x < 1e-10 { 4.0 * tc * (1.0 - x) } else { 8.0 * tc * x / (2.0 * x).exp_m1() };
        let ncal = d2 / (e + hh_abs) - two_h_q;
        let poly = d2 * ncal / (4.0 * k * (e + hh_abs));
        let logs = -t * ((-e / t).exp().ln_1p() - (-hh_abs / t).exp().ln_1p());
        poly + logs
    }

    /// F(Gamma_Delta) - F(Gamma_0).
    pub fn free_energy_diff(&self) -> Result<f64> {
        if self.h == 0.0 {
            return Ok(0.0);
        }
        let mu = self.params.mu;
        let tc = self.params.temperature;
        let radius = self.params.radius;
        let lambda = self.params.lambda;
        let angles = self.angular_weights();

        // trace term + quadratic kernel energy, exponentially convergent
        let f = |p: f64| -> f64 {
            if p <= 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            for &(w, y2) in &angles {
                acc += w * self.combined_radial(p, y2);
            }
            acc * p * p
        };
        let p_max = (60.0f64).max((mu.abs() + 60.0 * tc).sqrt() + 2.0);
        let piece1 = integrate_radial(&f, mu, tc, p_max)?;

        // exact-cancellation residual: h^2 (<a, K a> + <a, V a>)
        let temp = LnTemp::from_t(tc)?;
        let i_lam = sector_integral(self.element.l0, radius, mu, temp)?;
        let i_fb = shell_position_value(self.element.l0, radius, mu, tc, radius) * radius.sqrt();
        let n2 = self.norm * self.norm;
        let norm_psi = self.element.norm_sqr();
        let piece2 =
            self.h * self.h * norm_psi * n2 * (i_lam - lambda * radius * i_fb * i_fb);

        let piece3 = self.shell_term_of_difference()?;
        Ok(piece1 + piece2 + piece3)
    }

    /// integral V |alpha_Delta - h a|^2 dx via the shell formula
    /// -lambda R^2 int_{S^2} |w(R omega)|^2 dsigma.
    fn shell_term_of_difference(&self) -> Result<f64> {
        let mu = self.params.mu;
        let tc = self.params.temperature;
        let t = self.t_actual();
        let radius = self.params.radius;
        let lambda = self.params.lambda;
        let th = |x: f64| if x.abs() < 1e-30 { 1.0 } else { x.tanh() / x };

        if self.element.l0 == 0 {
            // w_rad(R) = psi h N / sqrt(R) * int p J^2(pR) B(p) dp
            let psi2 = self.element.coeffs[0].norm_sqr();
            let f = |p: f64| -> f64 {
                if p <= 0.0 {
                    return 0.0;
                }
                let x = p * radius;
                let j = (2.0 * x / PI).sqrt() * sph_j(0, x);
                let hh = p * p - mu;
                let y2 = self.element.coeffs[0].norm_sqr() / (4.0 * PI);
                let d2 = self.h * self.h * self.t2_radial(p) * y2;
                let e = (hh * hh + d2).sqrt();
                let b = th(e / (2.0 * t)) / (2.0 * t) - th(hh / (2.0 * tc)) / (2.0 * tc);
                p * j * j * b
            };
            let p_max = (60.0f64).max((mu.abs() + 60.0 * tc).sqrt() + 2.0);
            let w_int = integrate_radial(&f, mu, tc, p_max)?;
            let w2 = psi2 * self.h * self.h * self.norm * self.norm / radius * w_int * w_int;
            return Ok(-lambda * radius * radius * w2);
        }

        // general sector: project w-hat onto even harmonics l <= 8, invert
        // each radial part at r = R by the Fourier-Bessel quadrature
        let (nodes, weights) = gauss_legendre(32);
        let n_phi = 64usize;
        let dphi = 2.0 * PI / n_phi as f64;
        let mut total = 0.0;
        for l_out in (0..=8u32).step_by(2) {
            for m_out in -(l_out as i32)..=(l_out as i32) {
                // w_{lm}(R) = int p^{3/2} R^{-1/2} J_{l+1/2}(pR) what_{lm}(p) dp
                let f = |p: f64| -> Complex64 {
                    if p <= 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let x = p * radius;
                    let j_l0 = (2.0 * x / PI).sqrt() * sph_j(self.element.l0, x);
                    let hh = p * p - mu;
                    let mut proj = Complex64::new(0.0, 0.0);
                    for (&u, &wgt) in nodes.iter().zip(&weights) {
                        for q in 0..n_phi {
                            let phi = q as f64 * dphi;
                            let mut y = Complex64::new(0.0, 0.0);
                            for (mi, &psi) in self.element.coeffs.iter().enumerate() {
                                y += psi * y_lm(Label::M(mi as i8 - 2), u, phi);
                            }
                            let d2 = self.h * self.h * self.t2_radial(p) * y.norm_sqr();
                            let e = (hh * hh + d2).sqrt();
                            let b =
                                th(e / (2.0 * t)) / (2.0 * t) - th(hh / (2.0 * tc)) / (2.0 * tc);
                            let y_out = y_out_lm(l_out, m_out, u, phi);
                            proj += wgt * dphi * y_out.conj() * y * b;
                        }
                    }
                    let j_out = (2.0 * x / PI).sqrt() * sph_j(l_out, x);
                    self.h * self.norm * p * j_l0 * j_out / radius.sqrt() * proj
                };
                let re = |p: f64| f(p).re;
                let im = |p: f64| f(p).im;
                let p_max = (50.0f64).max((mu.abs() + 50.0 * tc).sqrt() + 2.0);
                let wr = integrate_radial(&re, mu, tc, p_max)?;
                let wi = integrate_radial(&im, mu, tc, p_max)?;
                total += wr * wr + wi * wi;
            }
        }
        Ok(-lambda * radius * radius * total)
    }

    /// Semiclassical coefficients (E1, E2) and the h^2-cancellation residual
    /// |E1 h^2 - h^2 int V |a|^2| evaluated through independent routes.
    pub fn semiclassical_coeffs(&self) -> Result<(f64, f64, f64)> {
        let mu = self.params.mu;
        let tc = self.params.temperature;
        let radius = self.params.radius;
        let temp = LnTemp::from_t(tc)?;
        let n2 = self.norm * self.norm;
        let norm_psi = self.element.norm_sqr();

        let i_lam = sector_integral(self.element.l0, radius, mu, temp)?;
        let e1 = -norm_psi * n2 * i_lam;

        // E2 term 2: -(1/(8Tc)) integral sech^2 |t|^2 = -|psi|^2 d_scalar
        let d_f = |p: f64| -> f64 {
            if p <= 0.0 {
                return 0.0;
            }
            let x = p * radius;
            let j = (2.0 * x / PI).sqrt() * sph_j(self.element.l0, x);
            let z = (p * p - mu) / tc;
            p * j * j * sech2_half(z)
        };
        let p_d = (mu.abs() + 170.0 * tc).sqrt().max(3.0);
        let d_scalar = n2 / (2.0 * tc) * integrate_radial(&d_f, mu, tc, p_d)?;

        // E2 term 1: (1/(16Tc^2)) integral (g1/h) |t|^4 with the angular
        // factor evaluated on the quadrature grid
        let angles = self.angular_weights();
        let y4: f64 = angles.iter().map(|&(w, y2)| w * y2 * y2).sum();
        let c_f = |p: f64| -> f64 {
            if p <= 0.0 {
                return 0.0;
            }
            let x = p * radius;
            let j = (2.0 * x / PI).sqrt() * sph_j(self.element.l0, x);
            let z = (p * p - mu) / tc;
            g1_over_z(z) * j.powi(4)
        };
        let p_c = (60.0f64).max((mu.abs() + 90.0 * tc).sqrt() + 1.0);
        let c_radial = n2 * n2 / (tc * tc * tc) * integrate_radial(&c_f, mu, tc, p_c)?;
        let e2 = c_radial * y4 - norm_psi * d_scalar;

        // cancellation: E1 vs the shell-formula potential energy
        let i_fb = shell_position_value(self.element.l0, radius, mu, tc, radius) * radius.sqrt();
        let v_shell = -self.params.lambda * radius * norm_psi * n2 * i_fb * i_fb;
        let cancellation = self.h * self.h * (e1 - v_shell).abs();
        Ok((e1, e2, cancellation))
    }

    /// Squared H^1 distance between alpha_Delta and its linearization:
    /// integral (1 + p^2) |alpha_Delta - h a|^2 dp.
    pub fn h1_remainder(&self) -> Result<f64> {
        let mu = self.params.mu;
        let tc = self.params.temperature;
        let t = self.t_actual();
        let radius = self.params.radius;
        let th = |x: f64| if x.abs() < 1e-30 { 1.0 } else { x.tanh() / x };
        let angles = self.angular_weights();
        let f = |p: f64| -> f64 {
            if p <= 0.0 {
                return 0.0;
            }
            let x = p * radius;
            let j = (2.0 * x / PI).sqrt() * sph_j(self.element.l0, x);
            let hh = p * p - mu;
            let mut acc = 0.0;
            for &(w, y2) in &angles {
                let d2 = self.h * self.h * self.t2_radial(p) * y2;
                let e = (hh * hh + d2).sqrt();
                let b = th(e / (2.0 * t)) / (2.0 * t) - th(hh / (2.0 * tc)) / (2.0 * tc);
                acc += w * y2 * b * b;
            }
            (1.0 + p * p) * p * j * j * acc
        };
        let p_max = (60.0f64).max((mu.abs() + 60.0 * tc).sqrt() + 2.0);
        let v = integrate_radial(&f, mu, tc, p_max)?;
        Ok(self.h * self.h * self.norm * self.norm * v)
    }
}

/// Spherical harmonic for the projection basis (l <= 8 even, numeric
/// associated Legendre recurrence).
fn y_out_lm(l: u32, m: i32, u: f64, phi: f64) -> Complex64 {
    let m_abs = m.unsigned_abs();
    // P_l^{m}(u) with Condon-Shortley phase via upward recurrence in l
    let somx2 = (1.0 - u * u).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m_abs {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    let plm = if l == m_abs {
        pmm
    } else {
        let mut pmmp1 = u * (2.0 * m_abs as f64 + 1.0) * pmm;
        if l == m_abs + 1 {
            pmmp1
        } else {
            let mut pll = 0.0;
            for ll in (m_abs + 2)..=l {
                pll = ((2.0 * ll as f64 - 1.0) * u * pmmp1
                    - (ll as f64 + m_abs as f64 - 1.0) * pmm)
                    / (ll as f64 - m_abs as f64);
                pmm = pmmp1;
                pmmp1 = pll;
            }
            pll
        }
    };
    let mut lnfac = 0.0;
    for k in (l as i64 - m_abs as i64 + 1)..=(l as i64 + m_abs as i64) {
        lnfac += (k as f64).ln();
    }
    let norm = ((2.0 * l as f64 + 1.0) / (4.0 * PI) * (-lnfac).exp()).sqrt();
    let base = norm * plm;
    let phase = Complex64::new(0.0, m_abs as f64 * phi).exp();
    if m >= 0 {
        base * phase
    } else {
        // Y_l^{-m} = (-1)^m conj(Y_l^m)
        let sign = if m_abs % 2 == 0 { 1.0 } else { -1.0 };
        sign * (base * phase).conj()
    }
}

/// Adaptive radial integration over [0, p_max] with Fermi-aware split points
/// and doubling blocks until the remainder is negligible.
fn integrate_radial(f: &dyn Fn(f64) -> f64, mu: f64, t: f64, p_max: f64) -> Result<f64> {
    let mut pts = vec![0.0];
    if mu > 0.0 {
        for fac in [0.5, 1.0, 1.5] {
            let q = (mu * fac).sqrt();
            if q < p_max {
                pts.push(q);
            }
        }
        let edge = (mu + 40.0 * t).sqrt();
        if edge < p_max {
            pts.push(edge);
        }
    }
    pts.push(p_max);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut total = 0.0;
    for w in pts.windows(2) {
        total += adaptive(&|p| f(p), w[0], w[1], 1e-12, 0.0, 6000)?;
    }
    let mut lo = p_max;
    for _ in 0..18 {
        let hi = 2.0 * lo;
        let block = adaptive(&|p| f(p), lo, hi, 1e-12, 1e-17 * total.abs(), 6000)?;
        total += block;
        if block.abs() <= 1e-14 * total.abs() {
            return Ok(total);
        }
        lo = hi;
    }
    Ok(total)
}

/// One row of the semiclassical scaling scan.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanRow {
    pub h: f64,
    pub delta_f: f64,
    pub h4_e2: f64,
    pub remainder: f64,
    pub h1_remainder: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalingScan {
    pub rows: Vec<ScanRow>,
    pub e1: f64,
    pub e2: f64,
    /// least-squares slope of log |remainder| against log h
    pub free_energy_slope: f64,
    /// least-squares slope of log (H^1 remainder) against log h
    pub h1_slope: f64,
}

/// Evaluate the free-energy remainder and H^1 remainder across decreasing h
/// and fit their scaling orders.
pub fn scaling_scan(params: &ModelParams, a: &KernelElement, h_list: &[f64]) -> Result<ScalingScan> {
    if h_list.len() < 4 {
        return Err(Error::Domain("scaling scan needs at least 4 h values".into()));
    }
    if h_list.iter().any(|&h| !(h > 0.0 && h <= 0.3)) {
        return Err(Error::Domain("h values must lie in (0, 0.3]".into()));
    }
    let probe = trial_state(params, a, h_list[0])?;
    let (e1, e2, _) = probe.semiclassical_coeffs()?;
    let mut rows = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let state = trial_state(params, a, h)?;
        let df = state.free_energy_diff()?;
        let h1 = state.h1_remainder()?;
        rows.push(ScanRow {
            h,
            delta_f: df,
            h4_e2: h.powi(4) * e2,
            remainder: df - h.powi(4) * e2,
            h1_remainder: h1,
        });
    }
    let slope = |ys: Vec<f64>| -> f64 {
        let xs: Vec<f64> = h_list.iter().map(|h| h.ln()).collect();
        let lys: Vec<f64> = ys.iter().map(|y| y.abs().max(1e-300).ln()).collect();
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = lys.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(&lys).map(|(x, y)| x * y).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    let free_energy_slope = slope(rows.iter().map(|r| r.remainder).collect());
    let h1_slope = slope(rows.iter().map(|r| r.h1_remainder).collect());
    Ok(ScalingScan { rows, e1, e2, free_energy_slope, h1_slope })
}

/// Quasiparticle data of the trial state at one grid point.
#[derive(Debug, Clone, Copy)]
pub struct Quasiparticle {
    pub energy: f64,
    pub delta_abs: f64,
    pub gamma: f64,
    pub alpha_abs: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapspec::solve_tc;
    use approx::assert_relative_eq;

    const MU: f64 = 2.0;
    const TC: f64 = 0.1;
    const R: f64 = 1.0;
    // corrected high-precision oracle values (mean/oscillation split)
    const LAM0: f64 = 0.6811228870374097483256;

    fn s_params() -> ModelParams {
        ModelParams::new(Dimension::Three, MU, TC, LAM0, R).unwrap()
    }

    #[test]
    fn h_zero_is_normal_state() {
        let st = trial_state(&s_params(), &KernelElement::s_wave(Complex64::new(1.0, 0.0)), 0.0)
            .unwrap();
        assert_eq!(st.free_energy_diff().unwrap(), 0.0);
        // gamma reduces to the Fermi-Dirac distribution
        for &p in &[0.3, 1.2, 1.4142, 2.5] {
            let q = st.quasiparticle(p, 1.0 / (4.0 * PI));
            let fd = 1.0 / (1.0 + ((p * p - MU) / TC).exp());
            assert_relative_eq!(q.gamma, fd, max_relative = 1e-12, epsilon = 1e-15);
            assert_eq!(q.alpha_abs, 0.0);
        }
    }

    #[test]
    fn state_validity_grid() {
        let st = trial_state(&s_params(), &KernelElement::s_wave(Complex64::new(1.0, 0.0)), 0.2)
            .unwrap();
        let mut p = 0.02;
        while p < 8.0 {
            let q = st.quasiparticle(p, 1.0 / (4.0 * PI));
            assert!(q.gamma >= -1e-12 && q.gamma <= 1.0 + 1e-12, "p={p}");
            assert!(
                q.alpha_abs * q.alpha_abs <= q.gamma * (1.0 - q.gamma) + 1e-12,
                "p={p}: {} vs {}",
                q.alpha_abs * q.alpha_abs,
                q.gamma * (1.0 - q.gamma)
            );
            assert!(q.energy >= q.delta_abs);
            p += 0.02;
        }
    }

    #[test]
    fn solve_tc_consistency() {
        let t = solve_tc(LAM0, MU, R, 0).unwrap();
        assert_relative_eq!(t, TC, max_relative = 1e-9);
    }

    #[test]
    fn semiclassical_coefficients_golden() {
        let st = trial_state(&s_params(), &KernelElement::s_wave(Complex64::new(1.0, 0.0)), 0.1)
            .unwrap();
        let (e1, e2, canc) = st.semiclassical_coeffs().unwrap();
        assert_relative_eq!(e1, -0.4212052811052709301211, max_relative = 1e-10);
        assert_relative_eq!(e2, -0.1067505869624773261446, max_relative = 1e-9);
        assert!(e1 < 0.0);
        assert!(canc < 1e-7 * e1.abs() * 0.01, "cancellation {canc:e}");
    }

    #[test]
    fn free_energy_diff_golden_and_negative() {
        let element = KernelElement::s_wave(Complex64::new(1.0, 0.0));
        let st = trial_state(&s_params(), &element, 0.1).unwrap();
        let df = st.free_energy_diff().unwrap();
        assert_relative_eq!(df, -1.072095372863159487103e-5, max_relative = 1e-7);
        assert!(df < 0.0);
        let h1 = st.h1_remainder().unwrap();
        assert_relative_eq!(h1, 7.062575675689361934853e-7, max_relative = 1e-8);
    }

    #[test]
    fn e2_matches_gl_energy_both_sectors() {
        use crate::glcoeff::{c_tensor, radial_coeffs, TensorMode};
        use crate::glenergy::{eval_generic, Basis, OrderParameter, Regime};
        // s-wave sector: GL1 with coefficients from the profile quadrature
        let p = s_params();
        let psi = Complex64::new(0.83, -0.41);
        let st = trial_state(&p, &KernelElement::s_wave(psi), 0.1).unwrap();
        let (_, e2, _) = st.semiclassical_coeffs().unwrap();
        let rho = crate::gapspec::rho_profile(&p, 0, crate::gapspec::ProfileSpace::Momentum)
            .unwrap();
        let co = radial_coeffs(&p, &rho, None).unwrap();
        let gl1 = co.c / (4.0 * PI) * psi.norm_sqr() * psi.norm_sqr() - co.d * psi.norm_sqr();
        assert_relative_eq!(e2, gl1, max_relative = 1e-8);

        // d-wave sector: GL5 tensor energy with a random coefficient vector
        let lam2 = crate::gapspec::lambda_l(
            &ModelParams::new(Dimension::Three, MU, TC, 1.0, R).unwrap(),
            2,
        )
        .unwrap();
        let p2 = ModelParams::new(Dimension::Three, MU, TC, lam2, R).unwrap();
        let coeffs = vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.2, 0.4),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.1, -0.3),
            Complex64::new(-0.4, 0.2),
        ];
        let st2 = trial_state(&p2, &KernelElement { l0: 2, coeffs: coeffs.clone() }, 0.1).unwrap();
        let (_, e2d, _) = st2.semiclassical_coeffs().unwrap();
        let rho2 =
            crate::gapspec::rho_profile(&p2, 2, crate::gapspec::ProfileSpace::Momentum).unwrap();
        let tensor = c_tensor(TensorMode::Dwave3d, &radial_coeffs(&p2, &rho2, None).unwrap())
            .unwrap();
        let op = OrderParameter::new(coeffs, Basis::ComplexSh).unwrap();
        let gl5 = eval_generic(&tensor, &op, Regime::BelowTc).unwrap();
        assert_relative_eq!(e2d, gl5, max_relative = 1e-8);
    }

    #[test]
    fn scaling_scan_orders() {
        let element = KernelElement::s_wave(Complex64::new(1.0, 0.0));
        let scan = scaling_scan(&s_params(), &element, &[0.2, 0.1, 0.05, 0.025]).unwrap();
        assert!(scan.free_energy_slope >= 5.5, "slope {}", scan.free_energy_slope);
        assert!(scan.h1_slope >= 5.5, "H1 slope {}", scan.h1_slope);
        // remainders decrease monotonically along decreasing h
        for w in scan.rows.windows(2) {
            assert!(w[1].remainder.abs() < w[0].remainder.abs());
            assert!(w[1].h1_remainder < w[0].h1_remainder);
        }
    }
}
