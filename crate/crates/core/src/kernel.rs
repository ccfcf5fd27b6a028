//! The effective-gap kernel K_T, the auxiliary g-functions and the radial
//! weight functions f2, f4, g_s built from a momentum-space profile.
//!
//! Momentum integrals carry no 2 pi normalization anywhere: the measure is
//! literally d^3p (matching the self-inverse Fourier-Bessel convention), so
//! absolute energy scales are convention-dependent while ratios, scaling
//! orders and minimizer structure are not.

use crate::error::{Error, Result};
use crate::specfun::sph_j;
use std::f64::consts::PI;
use std::sync::Arc;

/// Spatial dimension of the model (1D systems are not supported).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Dimension {
    Two,
    Three,
}

/// Physical parameters of the delta-shell BCS model.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct ModelParams {
    pub dimension: Dimension,
    /// chemical potential
    pub mu: f64,
    /// temperature, > 0
    pub temperature: f64,
    /// shell coupling strength, > 0
    pub lambda: f64,
    /// shell radius, > 0
    pub radius: f64,
}

impl ModelParams {
    pub fn new(dimension: Dimension, mu: f64, temperature: f64, lambda: f64, radius: f64) -> Result<Self> {
        let p = Self { dimension, mu, temperature, lambda, radius };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) {
            return Err(Error::Domain(format!("temperature must be > 0, got {}", self.temperature)));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {}", self.lambda)));
        }
        if !(self.radius > 0.0) {
            return Err(Error::Domain(format!("radius must be > 0, got {}", self.radius)));
        }
        if !self.mu.is_finite() {
            return Err(Error::Domain("mu must be finite".into()));
        }
        Ok(())
    }
}

/// sech^2(z/2), overflow-safe for any z.
pub fn sech2_half(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

const G_SERIES_CUT: f64 = 1e-3;

/// tanh(z/2)/z, continuous at z = 0.
pub fn g0(z: f64) -> f64 {
    if z.abs() < G_SERIES_CUT {
        let z2 = z * z;
        return 0.5 - z2 / 24.0 + z2 * z2 / 240.0 - 17.0 * z2 * z2 * z2 / 40320.0;
    }
    (z / 2.0).tanh() / z
}

/// g1(z) = -g0'(z).
pub fn g1(z: f64) -> f64 {
    if z.abs() < G_SERIES_CUT {
        let z2 = z * z;
        return z * (1.0 / 12.0 - z2 / 60.0 + 17.0 * z2 * z2 / 6720.0);
    }
    g0(z) / z - sech2_half(z) / (2.0 * z)
}

/// g1(z)/z, continuous and positive on the real line.
pub fn g1_over_z(z: f64) -> f64 {
    if z.abs() < G_SERIES_CUT {
        let z2 = z * z;
        return 1.0 / 12.0 - z2 / 60.0 + 17.0 * z2 * z2 / 6720.0;
    }
    g1(z) / z
}

/// g2(z) = g1'(z) + (2/z) g1(z) = tanh(z/2) sech^2(z/2) / (2z).
pub fn g2(z: f64) -> f64 {
    if z.abs() < G_SERIES_CUT {
        let z2 = z * z;
        return 0.25 - z2 / 12.0 + 17.0 * z2 * z2 / 960.0 - 31.0 * z2 * z2 * z2 / 10080.0;
    }
    (z / 2.0).tanh() * sech2_half(z) / (2.0 * z)
}

/// Auxiliary function g_k for k in {0, 1, 2}.
pub fn aux_g(k: u8, z: f64) -> f64 {
    match k {
        0 => g0(z),
        1 => g1(z),
        2 => g2(z),
        _ => panic!("aux_g index must be 0, 1 or 2"),
    }
}

/// K_T(p) = (p^2 - mu) / tanh((p^2 - mu)/(2T)) for given (mu, T).
pub fn k_t_raw(mu: f64, temperature: f64, p: f64) -> f64 {
    let z = p * p - mu;
    if z.abs() < 1e-8 * temperature {
        return 2.0 * temperature + z * z / (6.0 * temperature);
    }
    z / (z / (2.0 * temperature)).tanh()
}

/// K_T(p) for the given model parameters.
pub fn k_t(params: &ModelParams, p: f64) -> f64 {
    k_t_raw(params.mu, params.temperature, p)
}

/// Normalization measure for radial profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormWeight {
    /// L^2(R_+; p^2 dp), three dimensions
    PSquared,
    /// L^2(R_+; p dp), two dimensions
    PLinear,
}

#[derive(Clone)]
enum ProfileFn {
    /// Normalized momentum profile of the delta-shell sector problem:
    /// rho(p) = norm * p^{-1/2} J_{l+1/2}(pR) / K_T(p).
    Shell { l: u32, radius: f64, mu: f64, temperature: f64, norm: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A momentum-space radial function with an evaluation contract.
#[derive(Clone)]
pub struct RadialProfile {
    f: ProfileFn,
    weight: NormWeight,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.f {
            ProfileFn::Shell { l, radius, mu, temperature, norm } => write!(
                f,
                "RadialProfile::shell(l={l}, R={radius}, mu={mu}, T={temperature}, N={norm})"
            ),
            ProfileFn::Custom(_) => write!(f, "RadialProfile::custom"),
        }
    }
}

impl RadialProfile {
    pub fn shell(l: u32, radius: f64, mu: f64, temperature: f64, norm: f64) -> Self {
        Self {
            f: ProfileFn::Shell { l, radius, mu, temperature, norm },
            weight: NormWeight::PSquared,
        }
    }

    pub fn custom(weight: NormWeight, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: ProfileFn::Custom(Arc::new(f)), weight }
    }

    pub fn weight(&self) -> NormWeight {
        self.weight
    }

    /// rho(p)
    pub fn eval(&self, p: f64) -> f64 {
        match &self.f {
            ProfileFn::Shell { l, radius, mu, temperature, norm } => {
                if p <= 0.0 {
                    return 0.0;
                }
                let x = p * radius;
                let j = (2.0 * x / PI).sqrt() * sph_j(*l, x);
                norm * j / (p.sqrt() * k_t_raw(*mu, *temperature, p))
            }
            ProfileFn::Custom(f) => f(p),
        }
    }

    /// K_T(p) * rho(p), formed without the 1/K_T factor for shell profiles.
    pub fn k_rho(&self, mu: f64, temperature: f64, p: f64) -> f64 {
        match &self.f {
            ProfileFn::Shell { l, radius, norm, .. } => {
                if p <= 0.0 {
                    return 0.0;
                }
                let x = p * radius;
                let j = (2.0 * x / PI).sqrt() * sph_j(*l, x);
                norm * j / p.sqrt()
            }
            ProfileFn::Custom(f) => k_t_raw(mu, temperature, p) * f(p),
        }
    }

    /// J_{l+1/2}(pR)-bare numerator for shell profiles (used by fused
    /// coefficient integrands); None for custom profiles.
    pub fn shell_parts(&self) -> Option<(u32, f64, f64)> {
        match &self.f {
            ProfileFn::Shell { l, radius, norm, .. } => Some((*l, *radius, *norm)),
            ProfileFn::Custom(_) => None,
        }
    }
}

/// The positive radial weights (f2, f4) entering the quadratic and quartic
/// GL coefficients. In two dimensions both are divided by p.
pub fn f_weights(params: &ModelParams, rho: &RadialProfile, p: f64) -> (f64, f64) {
    let t = params.temperature;
    let z = (p * p - params.mu) / t;
    let krho = rho.k_rho(params.mu, t, p);
    let krho2 = krho * krho;
    let mut f2 = p * p / (2.0 * t) * sech2_half(z) * krho2;
    let mut f4 = p * p / (t * t * t) * g1_over_z(z) * krho2 * krho2;
    if params.dimension == Dimension::Two {
        f2 /= p;
        f4 /= p;
    }
    (f2, f4)
}

/// |rho_s(p) / rho(p)|; an error signals an (isolated) zero of rho.
pub fn gs_ratio(rho_s: &RadialProfile, rho: &RadialProfile, p: f64) -> Result<f64> {
    let denom = rho.eval(p);
    if denom.abs() < 1e-300 {
        return Err(Error::ProfileZero(p));
    }
    Ok((rho_s.eval(p) / denom).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn g0_at_zero_and_two() {
        assert_relative_eq!(g0(0.0), 0.5);
        assert_relative_eq!(g0(2.0), 1f64.tanh() / 2.0, max_relative = 1e-15);
        assert_eq!(g1(0.0), 0.0);
    }

    #[test]
    fn series_direct_crossover_continuity() {
        for f in [g0, g1, g2] {
            let below = f(G_SERIES_CUT * (1.0 - 1e-12));
            let above = f(G_SERIES_CUT * (1.0 + 1e-12));
            assert!((below - above).abs() < 1e-13, "{below} vs {above}");
        }
    }

    #[test]
    fn g1_over_z_positive() {
        let mut z = -50.0;
        while z <= 50.0 {
            if z != 0.0 {
                assert!(g1(z) / z > 0.0, "z = {z}");
            }
            assert!(g1_over_z(z) > 0.0, "z = {z}");
            z += 0.37;
        }
    }

    #[test]
    fn g_identity_low_order() {
        // 3 g1(z)/z - g2(z) = O(z^2) near zero
        let mut max_c = 0f64;
        let mut z = 1e-4;
        while z <= 1e-1 {
            let v = (3.0 * g1_over_z(z) - g2(z)).abs();
            max_c = max_c.max(v / (z * z));
            z *= 1.3;
        }
        // the exact z^2 coefficient is 3/60 - (-1/12) = 1/20 + 1/12 = 2/15
        assert!(max_c < 0.2, "fitted C = {max_c}");
    }

    #[test]
    fn k_t_floor_and_monotonicity() {
        let params =
            ModelParams::new(Dimension::Three, 2.0, 0.1, 1.0, 1.0).unwrap();
        // K_T >= 2T with equality at p^2 = mu
        let mut p = 0.0;
        while p < 4.0 {
            assert!(k_t(&params, p) >= 2.0 * params.temperature - 1e-15);
            p += 0.01;
        }
        assert_relative_eq!(k_t(&params, 2f64.sqrt()), 0.2, epsilon = 1e-12);
        // strictly increasing in T pointwise (probe where tanh is not
        // saturated at f64 resolution)
        for &p in &[0.8, 1.2, 1.41, 1.7] {
            let mut prev = k_t_raw(2.0, 0.05, p);
            for &t in &[0.1, 0.2, 0.5, 1.0] {
                let v = k_t_raw(2.0, t, p);
                assert!(v > prev, "p={p} t={t}");
                prev = v;
            }
        }
    }

    #[test]
    fn f_weights_vanish_with_profile() {
        let params = ModelParams::new(Dimension::Three, 2.0, 0.1, 1.0, 1.0).unwrap();
        let rho = RadialProfile::custom(NormWeight::PSquared, |_| 0.0);
        let (f2, f4) = f_weights(&params, &rho, 1.3);
        assert_eq!((f2, f4), (0.0, 0.0));
    }

    #[test]
    fn f_weights_positive_on_grid() {
        let params = ModelParams::new(Dimension::Three, 2.0, 0.1, 1.0, 1.0).unwrap();
        let rho = RadialProfile::shell(2, 1.0, 2.0, 0.1, 1.0);
        let mut p = 0.05;
        while p < 6.0 {
            let (f2, f4) = f_weights(&params, &rho, p);
            assert!(f2 >= 0.0 && f4 >= 0.0, "p={p}: {f2} {f4}");
            p += 0.05;
        }
    }

    #[test]
    fn f_weights_golden() {
        // 30-digit reference at (mu=2, Tc=0.1, R=1), l=2 shell profile,
        // p = 1.4, with the sector normalization 1/sqrt(Q2)
        let params = ModelParams::new(Dimension::Three, 2.0, 0.1, 1.0, 1.0).unwrap();
        let n2 = 1.0 / 0.1276257628564399268107f64.sqrt();
        let rho = RadialProfile::shell(2, 1.0, 2.0, 0.1, n2);
        let (f2, f4) = f_weights(&params, &rho, 1.4);
        assert_relative_eq!(f4, 0.6496986222847214863429, max_relative = 1e-11);
        assert_relative_eq!(f2, 0.603502670401604063413, max_relative = 1e-11);
    }

    #[test]
    fn gs_ratio_delta_shell_golden() {
        // profile ratio at the (s+d) degeneracy point, T = 0.02, R = 1
        let mu_t = 6.245038732298544312786;
        let n0 = 0.5039602319089004232835;
        let n2 = 0.4675703715532827596861;
        let rho_s = RadialProfile::shell(0, 1.0, mu_t, 0.02, n0);
        let rho = RadialProfile::shell(2, 1.0, mu_t, 0.02, n2);
        for (p, want) in [
            (0.8, 23.71705769385158033258),
            (1.3, 8.013800086767378929902),
            (2.1, 2.089748724923519147704),
        ] {
            assert_relative_eq!(gs_ratio(&rho_s, &rho, p).unwrap(), want, max_relative = 1e-10);
        }
    }

    #[test]
    fn gs_ratio_scaling() {
        let rho = RadialProfile::custom(NormWeight::PSquared, |p: f64| (-p * p).exp());
        let rho2 = RadialProfile::custom(NormWeight::PSquared, |p: f64| 2.0 * (-p * p).exp());
        assert_relative_eq!(gs_ratio(&rho, &rho, 0.7).unwrap(), 1.0);
        assert_relative_eq!(gs_ratio(&rho2, &rho, 0.7).unwrap(), 2.0, max_relative = 1e-15);
        let zero = RadialProfile::custom(NormWeight::PSquared, |_| 0.0);
        assert!(gs_ratio(&rho, &zero, 1.0).is_err());
    }
}
