//! Spectral theory of K_T + V per angular momentum sector for the
//! delta-shell potential: the eigenvalue condition, coupling thresholds
//! lambda_l, critical temperatures, radial eigenfunctions, degeneracy
//! detection and the parameter-search procedures built on top of them.
//!
//! Temperatures are carried in log scale internally: the rigorous
//! temperature ceilings produced by the dominance construction can lie far
//! below the f64 underflow threshold while every integral stays perfectly
//! conditioned.

use crate::besseldom::DominanceCertificate;
use crate::error::{Error, Result};
use crate::kernel::{k_t_raw, Dimension, ModelParams, NormWeight, RadialProfile};
use crate::quad::{adaptive, find_root, golden_min, oscillatory_tail};
use crate::specfun::{
    first_extremum, mod_bessel_ik_product, sph_j, sph_trig_coeffs, ExtremumKind, HalfOrder,
};
use std::f64::consts::{LN_2, PI};

/// Below this log-temperature only E = 0 integrals are supported.
pub const LOG_T_DIRECT: f64 = -600.0;

const REL_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 6000;

/// Temperature in log scale; `t()` may underflow to 0 while `ln()` stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnTemp {
    ln: f64,
}

impl LnTemp {
    pub fn from_t(t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("temperature must be positive, got {t}")));
        }
        Ok(Self { ln: t.ln() })
    }

    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn t(&self) -> f64 {
        self.ln.exp()
    }
}

/// Weight selecting which power of (K_T - E) divides the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KPow {
    One,
    Two,
}

/// integral_0^inf p * jj(pR) / (K_T(p) - E)^pow dp, where jj(x) is a signed
/// combination of squared half-integer Bessel functions given by `orders`.
fn sector_integral_core(
    orders: &[(u32, f64)],
    radius: f64,
    mu: f64,
    temp: LnTemp,
    e_shift: f64,
    pow: KPow,
) -> Result<f64> {
    if !(radius > 0.0) || !mu.is_finite() {
        return Err(Error::Domain("sector integral needs radius > 0 and finite mu".into()));
    }
    if temp.ln() < LOG_T_DIRECT && e_shift != 0.0 {
        return Err(Error::Domain(
            "shifted integrals (E != 0) are not supported at extreme log-temperatures".into(),
        ));
    }
    if pow == KPow::Two && temp.ln() < LOG_T_DIRECT {
        return Err(Error::Domain(
            "normalization integrals are not supported at extreme log-temperatures".into(),
        ));
    }
    let t = temp.t();
    let jj = |x: f64| -> f64 {
        let mut acc = 0.0;
        for &(l, sign) in orders {
            let j = sph_j(l, x);
            acc += sign * j * j;
        }
        2.0 * x / PI * acc
    };
    let l_top = orders.iter().map(|&(l, _)| l).max().unwrap_or(0);

    // tail start: K must equal p^2 - mu to machine precision and the
    // asymptotic trig representation must converge fast
    let p_tail = (2.0 * (mu + e_shift).abs().sqrt() + 1.0)
        .max((mu + 80.0 * t + 1.0).max(1.0).sqrt())
        .max(50.0 / radius)
        .max((l_top as f64 + 8.0) * 1.2 / radius)
        .max(if mu > 0.0 { (1.5 * mu).sqrt() * 1.01 } else { 0.0 });

    let pw = match pow {
        KPow::One => 1,
        KPow::Two => 2,
    };
    let p_zone = |a: f64, b: f64| -> Result<f64> {
        let f = |p: f64| {
            let denom = k_t_raw(mu, t, p) - e_shift;
            p * jj(p * radius) / denom.powi(pw)
        };
        adaptive(&f, a, b, REL_TOL, 0.0, MAX_PANELS)
    };

    let ln_wb = if mu > 0.0 { (mu / 4.0).ln() - temp.ln() } else { f64::NEG_INFINITY };
    let sharp = mu > 0.0 && ln_wb > 1.4;

    let mut total = 0.0;
    if sharp {
        let p_lo = (mu / 2.0).sqrt();
        let p_hi = (1.5 * mu).sqrt();
        total += p_zone(0.0, p_lo)?;
        total += fermi_window(&jj, radius, mu, temp, e_shift, pow, ln_wb)?;
        total += p_zone(p_hi, p_tail)?;
    } else {
        total += p_zone(0.0, p_tail)?;
    }

    let x_tail = p_tail * radius;
    let s = (mu + e_shift) * radius * radius;
    for &(l, sign) in orders {
        total += sign * analytic_tail(l, x_tail, s, radius, pow);
    }
    if !total.is_finite() {
        return Err(Error::Quadrature("sector integral produced a non-finite value".into()));
    }
    Ok(total)
}

/// The Fermi-surface window |p^2 - mu| <= mu/2 in the variable
/// w = (p^2 - mu)/(2T): a linear core |w| <= 1 plus log-stretched flanks.
fn fermi_window(
    jj: &dyn Fn(f64) -> f64,
    radius: f64,
    mu: f64,
    temp: LnTemp,
    e_shift: f64,
    pow: KPow,
    ln_wb: f64,
) -> Result<f64> {
    let t = temp.t();
    let ln_2t = temp.ln() + LN_2;
    let e2t = if e_shift == 0.0 { 0.0 } else { e_shift / (2.0 * t) };
    let th = |w: f64| -> f64 {
        if w.abs() < 1e-5 {
            1.0 - w * w / 3.0
        } else {
            w.tanh() / w
        }
    };

    // core |w| <= 1: dp = T dw / p
    let core = |w: f64| -> f64 {
        let p = (mu + 2.0 * t * w).sqrt();
        let thw = th(w);
        let frac = thw / (1.0 - e2t * thw);
        match pow {
            KPow::One => 0.5 * jj(p * radius) * frac,
            KPow::Two => jj(p * radius) * frac * frac / (4.0 * t),
        }
    };
    let mut total = adaptive(&core, -1.0, 1.0, REL_TOL, 0.0, MAX_PANELS)?;

    // flanks w = sigma * e^v, v in [0, ln_wb]
    for sigma in [1.0f64, -1.0] {
        let flank = |v: f64| -> f64 {
            let p = (mu + sigma * (ln_2t + v).exp()).sqrt();
            let (tanh_w, th_w) = if v > 20.0 {
                (1.0, (-v).exp())
            } else {
                let w = v.exp();
                (w.tanh(), w.tanh() / w)
            };
            let denom = 1.0 - e2t * th_w;
            match pow {
                KPow::One => 0.5 * jj(p * radius) * tanh_w / denom,
                KPow::Two => {
                    jj(p * radius) * tanh_w * tanh_w * (-v).exp() / (4.0 * t * denom * denom)
                }
            }
        };
        total += adaptive(&flank, 0.0, ln_wb, REL_TOL, 0.0, MAX_PANELS)?;
    }
    Ok(total)
}

/// Closed-form tail integral_{X}^inf x^2 j_l(x)^2 / (x^2 - s)^pow dx times
/// (2 R^{2 pow - 2} / pi), using the exact trigonometric representation of
/// j_l: a rational mean part (computed by a downward-stable recursion) plus
/// an Euler-accelerated oscillatory part.
fn analytic_tail(l: u32, x: f64, s: f64, radius: f64, pow: KPow) -> f64 {
    let (a, b) = sph_trig_coeffs(l);
    let conv = |p: &[f64], q: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; p.len() + q.len() - 1];
        for (i, &pi) in p.iter().enumerate() {
            for (j, &qj) in q.iter().enumerate() {
                out[i + j] += pi * qj;
            }
        }
        out
    };
    let aa = conv(&a, &a);
    let bb = conv(&b, &b);
    let mut mean = vec![0.0; aa.len().max(bb.len())]; // A^2 + B^2
    let mut osc_c = vec![0.0; mean.len()]; // (B^2 - A^2)/2 multiplies cos 2x
    for i in 0..mean.len() {
        let va = aa.get(i).copied().unwrap_or(0.0);
        let vb = bb.get(i).copied().unwrap_or(0.0);
        mean[i] = va + vb;
        osc_c[i] = 0.5 * (vb - va);
    }
    let osc_s = conv(&a, &b); // A B multiplies sin 2x

    let m_max = mean.len() / 2;
    let (ints_i, ints_j) = tail_power_integrals(x, s, m_max);
    let ints = match pow {
        KPow::One => &ints_i,
        KPow::Two => &ints_j,
    };
    let mut smooth = 0.0;
    for m in 0..=m_max {
        if let Some(&c) = mean.get(2 * m) {
            smooth += 0.5 * c * ints[m];
        }
    }

    let pw = match pow {
        KPow::One => 1,
        KPow::Two => 2,
    };
    let osc_f = |xx: f64| -> f64 {
        let u = 1.0 / xx;
        let ec: f64 = osc_c.iter().rev().fold(0.0, |acc, &c| acc * u + c);
        let es: f64 = osc_s.iter().rev().fold(0.0, |acc, &c| acc * u + c);
        (ec * (2.0 * xx).cos() + es * (2.0 * xx).sin()) / (xx * xx - s).powi(pw)
    };
    let osc = oscillatory_tail(&osc_f, x, PI / 2.0, 48);

    let pref = 2.0 * radius.powi(2 * pw - 2) / PI;
    pref * (smooth + osc)
}

/// I_m = integral_X^inf x^{-2m} / (x^2 - s) dx and the squared-denominator
/// analogue J_m, for m = 0..=m_max, via series seed at high m and the
/// downward recursions I_{m-1} = s I_m + X^{1-2m}/(2m-1),
/// J_{m-1} = I_m + s J_m (stable for |s| < X^2).
fn tail_power_integrals(x: f64, s: f64, m_max: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(s.abs() < 0.3 * x * x, "tail start too close to sqrt(s)");
    let top = m_max + 6;
    let x2 = x * x;
    let series = |m: usize, squared: bool| -> f64 {
        let mut acc = 0.0;
        let mut sj = 1.0;
        for j in 0..60 {
            let n = 2 * m + 2 * j + if squared { 3 } else { 1 };
            let coef = if squared { (j + 1) as f64 } else { 1.0 };
            let term = coef * sj / (n as f64 * x.powi(n as i32));
            acc += term;
            if term.abs() < 1e-300 || term.abs() < 1e-20 * acc.abs() {
                break;
            }
            sj *= s / x2;
        }
        acc
    };
    let mut ints_i = vec![0.0; top + 1];
    let mut ints_j = vec![0.0; top + 1];
    ints_i[top] = series(top, false);
    ints_j[top] = series(top, true);
    for m in (1..=top).rev() {
        ints_i[m - 1] = s * ints_i[m] + x.powi(-(2 * m as i32 - 1)) / (2.0 * m as f64 - 1.0);
        ints_j[m - 1] = ints_i[m] + s * ints_j[m];
    }
    ints_i.truncate(m_max + 1);
    ints_j.truncate(m_max + 1);
    (ints_i, ints_j)
}

fn check_e_precondition(mu: f64, temp: LnTemp, e: f64) -> Result<()> {
    if e == 0.0 {
        return Ok(());
    }
    let t = temp.t();
    let cap = if mu >= 0.0 { 2.0 * t } else { k_t_raw(mu, t, 0.0) };
    if e >= cap {
        return Err(Error::Domain(format!(
            "energy shift E = {e} not below the admissible cap {cap}"
        )));
    }
    Ok(())
}

/// Right-hand side of the eigenvalue condition:
/// integral_0^inf pR J_{l+1/2}(pR)^2 / (K_T(p) - E) dp.
pub fn ev_condition_rhs(params: &ModelParams, l: u32, e_shift: f64) -> Result<f64> {
    params.validate()?;
    if params.dimension != Dimension::Three {
        return Err(Error::Domain("sector spectral theory is implemented for D = 3".into()));
    }
    let temp = LnTemp::from_t(params.temperature)?;
    check_e_precondition(params.mu, temp, e_shift)?;
    let i = sector_integral_core(
        &[(l, 1.0)],
        params.radius,
        params.mu,
        temp,
        e_shift,
        KPow::One,
    )?;
    Ok(params.radius * i)
}

/// integral_0^inf p J_{l+1/2}(pR)^2 / K_T(p) dp (the sector coupling
/// integral; the eigenvalue condition reads 1 = lambda R times this).
pub fn sector_coupling_integral(l: u32, radius: f64, mu: f64, temp: LnTemp) -> Result<f64> {
    sector_integral_core(&[(l, 1.0)], radius, mu, temp, 0.0, KPow::One)
}

/// lambda_l(T, mu) = 1 / ev_condition_rhs(.., E = 0) at log-temperature.
pub fn lambda_l_ln(l: u32, radius: f64, mu: f64, temp: LnTemp) -> Result<f64> {
    let i = sector_integral_core(&[(l, 1.0)], radius, mu, temp, 0.0, KPow::One)?;
    Ok(1.0 / (radius * i))
}

/// lambda_l(T, mu): the coupling at which sector l reaches zero energy.
pub fn lambda_l(params: &ModelParams, l: u32) -> Result<f64> {
    params.validate()?;
    lambda_l_ln(l, params.radius, params.mu, LnTemp::from_t(params.temperature)?)
}

/// Normalization integral Q_l = integral p J^2 / K_T^2 dp of the sector
/// eigenfunction (momentum space, L^2(p^2 dp)).
pub fn norm_integral(l: u32, radius: f64, mu: f64, temp: LnTemp) -> Result<f64> {
    sector_integral_core(&[(l, 1.0)], radius, mu, temp, 0.0, KPow::Two)
}

/// Critical temperature in log scale for a coupling below the sector's
/// divergence threshold.
pub fn solve_tc_ln(lambda: f64, mu: f64, radius: f64, l: u32) -> Result<LnTemp> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let scale = (mu.abs().max(1.0)) / (radius * radius);
    let g = |ln_t: f64| -> f64 {
        match lambda_l_ln(l, radius, mu, LnTemp::from_ln(ln_t)) {
            Ok(v) => (v / lambda).ln(),
            Err(_) => f64::NAN,
        }
    };
    let mut hi = scale.ln();
    let mut ghi = g(hi);
    let mut grow = 0;
    while ghi < 0.0 {
        hi += 2.0 * LN_2;
        ghi = g(hi);
        grow += 1;
        if grow > 60 || !ghi.is_finite() {
            return Err(Error::NoRoot(format!(
                "lambda = {lambda} exceeds lambda_l at the search ceiling"
            )));
        }
    }
    let mut lo = hi - 4.0;
    let mut glo = g(lo);
    let mut shrink = 0;
    while glo > 0.0 {
        lo -= (hi - lo) * 1.6;
        glo = g(lo);
        shrink += 1;
        if shrink > 60 || !glo.is_finite() {
            return Err(Error::NoRoot(format!(
                "no T > 0 with lambda_l = {lambda}; sector threshold not bracketed"
            )));
        }
    }
    let root = find_root(&g, lo, hi, 1e-14, 200)?;
    Ok(LnTemp::from_ln(root))
}

/// Critical temperature as f64 (may underflow for extreme couplings; use
/// [`solve_tc_ln`] when working near the rigorous dominance ceilings).
pub fn solve_tc(lambda: f64, mu: f64, radius: f64, l: u32) -> Result<f64> {
    Ok(solve_tc_ln(lambda, mu, radius, l)?.t())
}

/// Residual |1 - lambda R I_l(T, mu)| of the eigenvalue condition.
pub fn eigencondition_residual(params: &ModelParams, l: u32) -> Result<f64> {
    let rhs = ev_condition_rhs(params, l, 0.0)?;
    Ok((1.0 - params.lambda * rhs).abs())
}

/// Which representation of the sector eigenfunction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileSpace {
    Momentum,
    Position,
}

/// Normalized radial eigenfunction of sector l at parameters satisfying the
/// eigenvalue condition (residual below 1e-8).
pub fn rho_profile(params: &ModelParams, l: u32, space: ProfileSpace) -> Result<RadialProfile> {
    params.validate()?;
    let residual = eigencondition_residual(params, l)?;
    if residual > 1e-8 {
        return Err(Error::ConditionNotSatisfied(residual));
    }
    let temp = LnTemp::from_t(params.temperature)?;
    let q = norm_integral(l, params.radius, params.mu, temp)?;
    let norm = 1.0 / q.sqrt();
    match space {
        ProfileSpace::Momentum => {
            Ok(RadialProfile::shell(l, params.radius, params.mu, params.temperature, norm))
        }
        ProfileSpace::Position => {
            let (radius, mu, t) = (params.radius, params.mu, params.temperature);
            Ok(RadialProfile::custom(NormWeight::PSquared, move |r: f64| {
                norm * shell_position_value(l, radius, mu, t, r)
            }))
        }
    }
}

/// r^{-1/2} integral_0^inf p J_{l+1/2}(pr) J_{l+1/2}(pR) / K_T(p) dp,
/// evaluated by subtracting the closed-form reference kernel
/// 1/(p^2 + kappa^2) whose Bessel moment is I_{l+1/2} K_{l+1/2}.
pub fn shell_position_value(l: u32, radius: f64, mu: f64, t: f64, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let kappa2 = mu.abs().max(1.0);
    let kappa = kappa2.sqrt();
    let f = |p: f64| -> f64 {
        if p == 0.0 {
            return 0.0;
        }
        let xr = p * r;
        let xr_big = p * radius;
        let jr = (2.0 * xr / PI).sqrt() * sph_j(l, xr);
        let jbig = (2.0 * xr_big / PI).sqrt() * sph_j(l, xr_big);
        let bracket = 1.0 / k_t_raw(mu, t, p) - 1.0 / (p * p + kappa2);
        p * jr * jbig * bracket
    };
    let p_cut = 1500.0_f64.max(3.0 * (mu.abs() + 1.0).sqrt()) / radius.min(r).min(1.0);
    let mut pts = vec![0.0];
    if mu > 0.0 {
        let s = mu.sqrt();
        for w in [-30.0, 0.0, 30.0] {
            let q = mu + 2.0 * t * w;
            if q > 0.0 && q.sqrt() < p_cut {
                pts.push(q.sqrt());
            }
        }
        let _ = s;
    }
    pts.push(p_cut);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut head = 0.0;
    for win in pts.windows(2) {
        head += adaptive(&f, win[0], win[1], 1e-11, 1e-13, MAX_PANELS).unwrap_or(f64::NAN);
    }
    let (lo, hi) = (r.min(radius), r.max(radius));
    let reference = mod_bessel_ik_product(l, kappa * lo, kappa * hi);
    (head + reference) / r.sqrt()
}

/// Per-sector coupling table with the minimizing sector and kernel dimension.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SectorSpectrum {
    /// (l, lambda_l) pairs in scan order
    pub lambdas: Vec<(u32, f64)>,
    /// minimizing sector
    pub l0: u32,
    /// dim ker(K_Tc + V) = sum of 2l+1 over degenerate minimizing sectors
    pub kernel_dim: u32,
    /// pairs flagged as degenerate: |lambda_l - lambda_l'| < 1e-9 lambda_l
    pub degenerate_pairs: Vec<(u32, u32)>,
    /// true if the scan was restricted to the reflection-symmetric subspace
    pub even_only: bool,
}

/// Scan lambda_l over l = 0..=l_max; optionally restrict to even l
/// (the reflection-symmetric subspace).
pub fn scan_degeneracy_ln(
    mu: f64,
    radius: f64,
    temp: LnTemp,
    l_max: u32,
    even_only: bool,
) -> Result<SectorSpectrum> {
    if l_max < 4 {
        return Err(Error::Domain("scan requires l_max >= 4".into()));
    }
    let mut lambdas = Vec::new();
    for l in 0..=l_max {
        if even_only && l % 2 == 1 {
            continue;
        }
        lambdas.push((l, lambda_l_ln(l, radius, mu, temp)?));
    }
    let (&(l0, lam0), _) = lambdas
        .iter()
        .map(|e| (e, e.1))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty scan");
    let mut degenerate_pairs = Vec::new();
    for (i, &(li, vi)) in lambdas.iter().enumerate() {
        for &(lj, vj) in lambdas.iter().skip(i + 1) {
            if (vi - vj).abs() < 1e-9 * vi.abs() {
                degenerate_pairs.push((li, lj));
            }
        }
    }
    let kernel_dim: u32 = lambdas
        .iter()
        .filter(|&&(_, v)| (v - lam0).abs() < 1e-9 * lam0.abs())
        .map(|&(l, _)| 2 * l + 1)
        .sum();
    Ok(SectorSpectrum { lambdas, l0, kernel_dim, degenerate_pairs, even_only })
}

/// Scan at the parameters' own temperature over all l <= l_max.
pub fn scan_degeneracy(params: &ModelParams, l_max: u32) -> Result<SectorSpectrum> {
    params.validate()?;
    scan_degeneracy_ln(params.mu, params.radius, LnTemp::from_t(params.temperature)?, l_max, false)
}

/// integral p (J_{1/2}^2 - J_{5/2}^2)(pR) / K_T(p) dp as a single quadrature.
pub fn sd_balance_ln(mu: f64, radius: f64, temp: LnTemp) -> Result<f64> {
    sector_integral_core(&[(0, 1.0), (2, -1.0)], radius, mu, temp, 0.0, KPow::One)
}

/// Temperature ceiling (times R^2) under which the s/d balance root search
/// is attempted.
pub const SD_T_CEILING: f64 = 0.15;

/// Locate the chemical potential mu_T at which the l = 0 and l = 2 sector
/// couplings coincide, together with the common coupling.
pub fn find_sd_degeneracy(temperature: f64, radius: f64) -> Result<(f64, f64)> {
    if !(temperature > 0.0 && radius > 0.0) {
        return Err(Error::Domain("find_sd_degeneracy needs T, R > 0".into()));
    }
    if temperature * radius * radius > SD_T_CEILING {
        return Err(Error::Domain(format!(
            "T R^2 = {} above the configured ceiling {SD_T_CEILING}",
            temperature * radius * radius
        )));
    }
    let temp = LnTemp::from_t(temperature)?;
    let x0 = first_extremum(HalfOrder(0), ExtremumKind::Max)?;
    let x2 = first_extremum(HalfOrder(2), ExtremumKind::Max)?;
    let a = x0 * x0 / (radius * radius);
    let b = x2 * x2 / (radius * radius);
    let f = |mu: f64| sd_balance_ln(mu, radius, temp).unwrap_or(f64::NAN);
    let (fa, fb) = (f(a), f(b));
    if !(fa > 0.0 && fb < 0.0) {
        return Err(Error::NoRoot(format!(
            "s/d balance does not change sign on the bracket: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    let mu_t = find_root(&f, a, b, 1e-14, 200)?;
    let lambda = lambda_l_ln(0, radius, mu_t, temp)?;
    Ok((mu_t, lambda))
}

/// Derived (interval, T_*, lambda_*) guaranteeing that sector l0 minimizes
/// the coupling for all mu in the interval and T below T_*.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DominanceParams {
    /// open mu-interval (a^2 + delta, b^2 - delta) / R^2
    pub interval: (f64, f64),
    /// temperature ceiling (may underflow to 0; see `ln_t_star`)
    pub t_star: f64,
    /// log of the temperature ceiling, always finite
    pub ln_t_star: f64,
    /// coupling ceiling min_mu lambda_l0(T_*, mu)
    pub lambda_star: f64,
    /// envelope constant used in the T_* formula
    pub c_f: f64,
}

/// Default envelope constant |f| <= C_f (1+p^2)^{-1/2} for differences of
/// squared half-integer Bessel functions.
pub const DEFAULT_C_F: f64 = std::f64::consts::SQRT_2;

pub fn params_from_dominance(
    l0: u32,
    radius: f64,
    cert: &DominanceCertificate,
    c_f: Option<f64>,
) -> Result<DominanceParams> {
    let (a, b) = cert.interval;
    if !(b > a && a > 0.0) {
        return Err(Error::Certificate(format!("degenerate certificate interval ({a}, {b})")));
    }
    if cert.l0 != l0 {
        return Err(Error::Certificate(format!(
            "certificate is for l0 = {}, requested {l0}",
            cert.l0
        )));
    }
    let c_f = c_f.unwrap_or(DEFAULT_C_F);
    let eps = cert.epsilon;
    let delta = (b * b - a * a) / 4.0;
    let r2 = radius * radius;
    let interval = ((a * a + delta) / r2, (b * b - delta) / r2);
    let ln_t_star =
        (delta / 2.0).ln() - 2.0 * c_f * ((1.0 + 2.0 * b * b).sqrt() + 1.0 / (2.0 * b)) / (eps * delta)
            - r2.ln();
    let temp = LnTemp::from_ln(ln_t_star);
    let lam = |mu: f64| lambda_l_ln(l0, radius, mu, temp).unwrap_or(f64::INFINITY);
    let (mu_min, lam_min) = golden_min(&lam, interval.0, interval.1, 1e-9);
    let lambda_star = lam_min.min(lam(interval.0)).min(lam(interval.1));
    let _ = mu_min;
    if !(lambda_star > 0.0 && lambda_star.is_finite()) {
        return Err(Error::Convergence("lambda_* evaluation failed".into()));
    }
    Ok(DominanceParams {
        interval,
        t_star: ln_t_star.exp(),
        ln_t_star,
        lambda_star,
        c_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const MU: f64 = 2.0;
    const TC: f64 = 0.1;
    const R: f64 = 1.0;

    fn params(t: f64) -> ModelParams {
        ModelParams::new(Dimension::Three, MU, t, 1.0, R).unwrap()
    }

    // 30-digit quadrature references (mpmath, split head + oscillatory tail)
    const I_L0: f64 = 1.468163849771027235911;
    const LAM0: f64 = 0.6811228870374097483256;
    const LAM1: f64 = 1.451422386748695371996;
    const LAM2: f64 = 3.719597389343620596589;
    const Q0: f64 = 3.485625455403756445701;
    const Q2: f64 = 0.1276257628564399268107;

    #[test]
    fn rhs_golden() {
        let v = ev_condition_rhs(&params(TC), 0, 0.0).unwrap();
        assert_relative_eq!(v, I_L0, max_relative = 1e-11);
    }

    #[test]
    fn lambda_triple_golden() {
        let p = params(TC);
        assert_relative_eq!(lambda_l(&p, 0).unwrap(), LAM0, max_relative = 1e-11);
        assert_relative_eq!(lambda_l(&p, 1).unwrap(), LAM1, max_relative = 1e-11);
        assert_relative_eq!(lambda_l(&p, 2).unwrap(), LAM2, max_relative = 1e-11);
    }

    #[test]
    fn norm_integrals_golden() {
        let t = LnTemp::from_t(TC).unwrap();
        assert_relative_eq!(norm_integral(0, R, MU, t).unwrap(), Q0, max_relative = 1e-10);
        assert_relative_eq!(norm_integral(2, R, MU, t).unwrap(), Q2, max_relative = 1e-10);
    }

    #[test]
    fn rhs_monotone_in_e() {
        let p = params(TC);
        let mut prev = ev_condition_rhs(&p, 0, -1.0).unwrap();
        for e in [-0.5, -0.1, 0.0, 0.05, 0.1, 0.15] {
            let v = ev_condition_rhs(&p, 0, e).unwrap();
            assert!(v > prev, "E={e}: {v} <= {prev}");
            prev = v;
        }
        // precondition violations
        assert!(ev_condition_rhs(&p, 0, 2.0 * TC).is_err());
    }

    #[test]
    fn rescaling_covariance() {
        // lambda_l(T, mu, R) = lambda_l(T/s^2, mu/s^2, sR) * s; equivalently
        // the eigenvalue-condition rhs picks up a factor s
        for s in [0.5f64, 2.0] {
            let base = ev_condition_rhs(&params(TC), 0, 0.0).unwrap();
            let scaled =
                ModelParams::new(Dimension::Three, MU / (s * s), TC / (s * s), 1.0, s * R).unwrap();
            let v = ev_condition_rhs(&scaled, 0, 0.0).unwrap();
            assert_relative_eq!(s * base, v, max_relative = 1e-8);
            let lam_base = lambda_l(&params(TC), 2).unwrap();
            let lam_scaled = lambda_l(&scaled, 2).unwrap();
            assert_relative_eq!(lam_base, s * lam_scaled, max_relative = 1e-8);
        }
    }

    #[test]
    fn lambda_monotone_in_t_and_positive() {
        let mut prev = 0.0;
        for t in [0.02, 0.05, 0.1, 0.2, 0.5] {
            let v = lambda_l(&params(t), 0).unwrap();
            assert!(v > prev);
            prev = v;
        }
        for l in 0..=12 {
            for &(mu, t) in &[(2.0, 0.1), (0.5, 0.03), (-1.0, 0.2)] {
                let p = ModelParams::new(Dimension::Three, mu, t, 1.0, R).unwrap();
                assert!(lambda_l(&p, l).unwrap() > 0.0, "l={l} mu={mu} t={t}");
            }
        }
    }

    #[test]
    fn solve_tc_round_trip() {
        let t = solve_tc(LAM0, MU, R, 0).unwrap();
        assert_relative_eq!(t, TC, max_relative = 1e-9);
        // random-ish round trips
        for &(t0, mu, r, l) in &[(0.07, 1.3, 1.0, 0u32), (0.2, 3.0, 0.7, 2), (0.04, 2.4, 1.5, 1)] {
            let p = ModelParams::new(Dimension::Three, mu, t0, 1.0, r).unwrap();
            let lam = lambda_l(&p, l).unwrap();
            let t = solve_tc(lam, mu, r, l).unwrap();
            assert_relative_eq!(t, t0, max_relative = 1e-9);
        }
    }

    #[test]
    fn solve_tc_monotone_in_lambda() {
        let mut prev = 0.0;
        for lam in [0.3, 0.5, 0.7, 0.9] {
            let t = solve_tc(lam, MU, R, 0).unwrap();
            assert!(t > prev);
            prev = t;
        }
    }

    #[test]
    fn eigencondition_residual_after_solve() {
        let lam = 0.55;
        let t = solve_tc(lam, MU, R, 0).unwrap();
        let p = ModelParams::new(Dimension::Three, MU, t, lam, R).unwrap();
        assert!(eigencondition_residual(&p, 0).unwrap() < 1e-9);
    }

    #[test]
    fn e_root_bisection_converges() {
        // monotone RHS in E implies a unique E-root of 1 = lambda * rhs(E);
        // couplings above lambda_l put the root at negative energy
        let p = params(TC);
        for (l, lam_fac) in [(0u32, 1.1), (1, 1.05), (2, 1.2)] {
            let lam_zero = lambda_l(&p, l).unwrap();
            let lam = lam_zero * lam_fac;
            let f = |e: f64| lam * ev_condition_rhs(&p, l, e).unwrap() - 1.0;
            let root = find_root(&f, -4.0, 0.0, 1e-12, 200).unwrap();
            assert!(root < 0.0);
            assert!(f(root).abs() < 1e-9, "l={l}: residual {}", f(root));
        }
    }

    #[test]
    fn log_temperature_extreme() {
        // lambda_l stays computable and ordered at T = e^{-800}
        let temp = LnTemp::from_ln(-800.0);
        let lam2 = lambda_l_ln(2, R, 13.0, temp).unwrap();
        // J_{5/2}^2 is the largest squared Bessel at its first maximum
        // (x ~ 3.632 -> mu = 13.19...), so l0 = 2 should win by a margin
        for l in [0u32, 1, 3, 4, 6] {
            let lam = lambda_l_ln(l, R, 13.0, temp).unwrap();
            assert!(lam > lam2, "l={l}: {lam} vs {lam2}");
        }
        // and the value is sane: lambda ~ 2/(J^2(sqrt(mu) R) |ln T|)
        assert!(lam2 > 0.0 && lam2 < 0.1, "{lam2}");
    }

    #[test]
    fn momentum_profile_normalized_and_signed() {
        let lam = LAM2;
        let p = ModelParams::new(Dimension::Three, MU, TC, lam, R).unwrap();
        let rho = rho_profile(&p, 2, ProfileSpace::Momentum).unwrap();
        // norm check by direct quadrature of rho^2 p^2
        let f = |q: f64| {
            let v = rho.eval(q);
            v * v * q * q
        };
        let mut total = 0.0;
        for win in [0.0, 1.0, (MU).sqrt(), 2.0, 5.0, 40.0, 200.0].windows(2) {
            total += adaptive(&f, win[0], win[1], 1e-10, 1e-13, MAX_PANELS).unwrap();
        }
        assert_relative_eq!(total, 1.0, max_relative = 1e-6);
        // positive below the first zero of J_{5/2}(Rp)
        let z1 = first_extremum(HalfOrder(2), ExtremumKind::Zero).unwrap();
        let mut q = 0.05;
        while q < z1 / R {
            assert!(rho.eval(q) > 0.0, "q={q}");
            q += 0.1;
        }
    }

    #[test]
    fn fourier_bessel_round_trip() {
        // position profile = Fourier-Bessel transform of the momentum
        // profile; 25-digit reference values for the transform
        let lam = LAM2;
        let p = ModelParams::new(Dimension::Three, MU, TC, lam, R).unwrap();
        let pos = rho_profile(&p, 2, ProfileSpace::Position).unwrap();
        let golden = [
            (R / 2.0, 0.20955411817863600306),
            (R, 0.75254918586343072865),
            (2.0 * R, 0.29052308152626484926),
        ];
        for &(r, want) in &golden {
            assert_relative_eq!(pos.eval(r), want, max_relative = 1e-6);
        }
    }

    #[test]
    fn dominance_params_formula_hand_check() {
        // direct evaluation of the temperature-ceiling formula for l0 = 2
        let cert = crate::besseldom::verify_first_max_dominance(2, 4).unwrap();
        let derived = params_from_dominance(2, R, &cert, None).unwrap();
        let (a, b) = cert.interval;
        let eps = cert.epsilon;
        let delta = (b * b - a * a) / 4.0;
        let expect_interval = (a * a + delta, b * b - delta);
        let expect_ln_t = (delta / 2.0).ln()
            - 2.0 * 2f64.sqrt() * ((1.0 + 2.0 * b * b).sqrt() + 1.0 / (2.0 * b)) / (eps * delta);
        assert_relative_eq!(derived.interval.0, expect_interval.0, max_relative = 1e-14);
        assert_relative_eq!(derived.interval.1, expect_interval.1, max_relative = 1e-14);
        assert_relative_eq!(derived.ln_t_star, expect_ln_t, max_relative = 1e-14);
        assert!(derived.interval.0 > a * a && derived.interval.1 < b * b);
        assert!(derived.lambda_star > 0.0);
    }

    #[test]
    fn sd_degeneracy_signs_and_root() {
        let x0 = first_extremum(HalfOrder(0), ExtremumKind::Max).unwrap();
        let x2 = first_extremum(HalfOrder(2), ExtremumKind::Max).unwrap();
        let temp = LnTemp::from_t(0.02).unwrap();
        assert!(sd_balance_ln(x0 * x0, R, temp).unwrap() > 0.0);
        assert!(sd_balance_ln(x2 * x2, R, temp).unwrap() < 0.0);

        let (mu_t, lam) = find_sd_degeneracy(0.02, R).unwrap();
        // 30-digit oracle values
        assert_relative_eq!(mu_t, 6.245038732298544312786, max_relative = 1e-10);
        assert_relative_eq!(lam, 1.282916417022787204575, max_relative = 1e-10);
        assert!(sd_balance_ln(mu_t, R, temp).unwrap().abs() < 1e-10);
    }

    #[test]
    fn sd_degeneracy_scan_flags_pair() {
        let (mu_t, lam) = find_sd_degeneracy(0.02, R).unwrap();
        let temp = LnTemp::from_t(0.02).unwrap();
        let spec = scan_degeneracy_ln(mu_t, R, temp, 8, true).unwrap();
        let lam0 = spec.lambdas.iter().find(|e| e.0 == 0).unwrap().1;
        let lam2 = spec.lambdas.iter().find(|e| e.0 == 2).unwrap().1;
        assert!((lam0 - lam2).abs() < 1e-8 * lam0);
        assert!(spec.degenerate_pairs.contains(&(0, 2)));
        assert_eq!(spec.kernel_dim, 6);
        for l in [4u32, 6, 8] {
            let v = spec.lambdas.iter().find(|e| e.0 == l).unwrap().1;
            assert!(v > lam0);
        }
        let _ = lam;
    }
}
