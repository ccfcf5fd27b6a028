//! Evaluation of the GL energy functionals: the generic quartic-minus-
//! quadratic tensor form and the closed forms for the pure d-wave, mixed
//! (s+d)-wave and two-dimensional cases, plus the real-coordinate gradient.

use crate::error::{Error, Result};
use crate::glcoeff::GlCoefficients;
use num::complex::Complex64;
use std::f64::consts::PI;

/// Basis tag for an order-parameter vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// ordinary (complex) spherical harmonics, m = -2..2, optionally with a
    /// leading s component in the mixed case
    ComplexSh,
    /// real spherical harmonics, m = -2..2
    RealSh,
    /// (psi_s, psi_{-2}, .., psi_2) with the d-block in the real basis
    LabeledMixed,
}

/// A complex order-parameter vector with its basis tag.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderParameter {
    pub components: Vec<Complex64>,
    pub basis: Basis,
}

impl OrderParameter {
    pub fn new(components: Vec<Complex64>, basis: Basis) -> Result<Self> {
        if !matches!(components.len(), 1 | 2 | 3 | 5 | 6) {
            return Err(Error::DimensionMismatch { expected: 5, got: components.len() });
        }
        if components.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("order parameter has non-finite entries".into()));
        }
        Ok(Self { components, basis })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Sign convention of the quadratic term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// quartic - quadratic (ordered phase competes)
    BelowTc,
    /// quartic + quadratic (normal phase is the minimizer)
    AboveTc,
}

/// Generic tensor energy
/// sum c_{ijkm} conj(psi_i psi_j) psi_k psi_m -/+ sum d_{ij} conj(psi_i) psi_j.
pub fn eval_generic(coeffs: &GlCoefficients, psi: &OrderParameter, regime: Regime) -> Result<f64> {
    let n = coeffs.n();
    if psi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: psi.len() });
    }
    let v = &psi.components;
    let mut quartic = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let cc = v[i].conj() * v[j].conj();
            if cc == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                for m in 0..n {
                    let c = coeffs.c_entry(i, j, k, m);
                    if c != Complex64::new(0.0, 0.0) {
                        quartic += c * cc * v[k] * v[m];
                    }
                }
            }
        }
    }
    let mut quad = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let d = coeffs.d_entry(i, j);
            if d != Complex64::new(0.0, 0.0) {
                quad += d * v[i].conj() * v[j];
            }
        }
    }
    let total = match regime {
        Regime::BelowTc => quartic - quad,
        Regime::AboveTc => quartic + quad,
    };
    let scale = quartic.norm().max(quad.norm()).max(1.0);
    if total.im.abs() > 1e-12 * scale {
        return Err(Error::Domain(format!(
            "energy has a non-negligible imaginary part: {:e}",
            total.im
        )));
    }
    Ok(total.re)
}

/// Closed-form five-component d-wave energy in the real basis:
/// (5c/14pi) ((sum |psi_m|^2 - tau)^2 - tau^2 + |sum psi_m^2|^2 / 2),
/// tau = 7 pi d / (5 c).
pub fn eval_dwave5(c: f64, d: f64, psi: &OrderParameter) -> Result<f64> {
    if psi.basis != Basis::RealSh {
        return Err(Error::BasisMismatch { expected: "real_sh".into(), got: format!("{:?}", psi.basis) });
    }
    if psi.len() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, got: psi.len() });
    }
    let tau = 7.0 * PI * d / (5.0 * c);
    let norm2 = psi.norm_sqr();
    let sum_sq: Complex64 = psi.components.iter().map(|z| z * z).sum();
    Ok(5.0 * c / (14.0 * PI) * ((norm2 - tau).powi(2) - tau * tau + 0.5 * sum_sq.norm_sqr()))
}

/// Closed-form one-component s-wave energy:
/// (c4s/4pi) ((|psi_s|^2 - tau_s)^2 - tau_s^2), tau_s = 2 pi d2s / c4s.
pub fn eval_swave(c4s: f64, d2s: f64, psi_s: Complex64) -> f64 {
    let tau_s = 2.0 * PI * d2s / c4s;
    c4s / (4.0 * PI) * ((psi_s.norm_sqr() - tau_s).powi(2) - tau_s * tau_s)
}

/// Closed-form six-component mixed (s+d) energy in the labeled basis
/// (psi_s, psi_{-2}, .., psi_2) with the d-block in real harmonics.
pub fn eval_mixed6(coeffs: &GlCoefficients, psi: &OrderParameter) -> Result<f64> {
    if psi.basis != Basis::LabeledMixed {
        return Err(Error::BasisMismatch {
            expected: "labeled_mixed".into(),
            got: format!("{:?}", psi.basis),
        });
    }
    if psi.len() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, got: psi.len() });
    }
    let (c, d) = (coeffs.c, coeffs.d);
    let c1s = coeffs.c1s.ok_or_else(|| Error::MissingCoefficients("c1s".into()))?;
    let c2s = coeffs.c2s.ok_or_else(|| Error::MissingCoefficients("c2s".into()))?;
    let c4s = coeffs.c4s.ok_or_else(|| Error::MissingCoefficients("c4s".into()))?;
    let d2s = coeffs.d2s.ok_or_else(|| Error::MissingCoefficients("d2s".into()))?;

    let s = psi.components[0];
    let dm = |m: i32| psi.components[(m + 2) as usize + 1];
    let (m_2, m_1, m0, p1, p2) = (dm(-2), dm(-1), dm(0), dm(1), dm(2));

    let d_part = eval_dwave5(
        c,
        d,
        &OrderParameter::new(vec![m_2, m_1, m0, p1, p2], Basis::RealSh)?,
    )?;
    let s_part = eval_swave(c4s, d2s, s);

    let norm_d: f64 = [m_2, m_1, m0, p1, p2].iter().map(|z| z.norm_sqr()).sum();
    let sum_sq: Complex64 = [m_2, m_1, m0, p1, p2].iter().map(|z| z * z).sum();
    let quad_coupling =
        c2s / (2.0 * PI) * (2.0 * s.norm_sqr() * norm_d + (s.conj() * s.conj() * sum_sq).re);

    // cubic-in-d coupling, linear in conj(psi_s)
    let mut inner = 2.0 * m0 * m0.norm_sqr();
    for (m, z) in [(-1i32, m_1), (1, p1), (-2, m_2), (2, p2)] {
        let w = m.abs() as f64 * if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
        inner += w * (2.0 * m0 * z.norm_sqr() + m0.conj() * z * z);
    }
    let mut term1 = (s.conj() * inner).re;
    let mut sum3 = Complex64::new(0.0, 0.0);
    for (m, z) in [(-1.0, m_1), (1.0, p1)] {
        sum3 += m * (2.0 * p2 * z.norm_sqr() + p2.conj() * z * z);
    }
    term1 += 3f64.sqrt() * (s.conj() * sum3).re;
    term1 += 2.0 * 3f64.sqrt()
        * (s.conj() * (m_2.conj() * p1 * m_1 + 2.0 * m_2 * (p1.conj() * m_1).re)).re;
    let cubic_coupling = 5f64.sqrt() * c1s / (7.0 * PI) * term1;

    Ok(s_part + d_part + quad_coupling + cubic_coupling)
}

/// Two-dimensional closed forms. The quartic cross term of the mixed
/// three-component energy carries the coefficient 8 c^(2s), consistent with
/// the |psi_s|^2-coupling structure of the full tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoDForm {
    /// (psi_{x^2-y^2}, psi_{xy})
    Dwave2,
    /// (psi_s, psi_{x^2-y^2}, psi_{xy})
    Mixed3,
}

pub fn eval_2d(variant: TwoDForm, coeffs: &GlCoefficients, psi: &OrderParameter) -> Result<f64> {
    match variant {
        TwoDForm::Dwave2 => {
            if psi.len() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, got: psi.len() });
            }
            let (c, d) = (coeffs.c, coeffs.d);
            let tau = PI * d / c;
            let norm2 = psi.norm_sqr();
            let sum_sq: Complex64 = psi.components.iter().map(|z| z * z).sum();
            Ok(c / (2.0 * PI) * ((norm2 - tau).powi(2) - tau * tau + 0.5 * sum_sq.norm_sqr()))
        }
        TwoDForm::Mixed3 => {
            if psi.len() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, got: psi.len() });
            }
            let (c, d) = (coeffs.c, coeffs.d);
            let c2s = coeffs.c2s.ok_or_else(|| Error::MissingCoefficients("c2s".into()))?;
            let c4s = coeffs.c4s.ok_or_else(|| Error::MissingCoefficients("c4s".into()))?;
            let d2s = coeffs.d2s.ok_or_else(|| Error::MissingCoefficients("d2s".into()))?;
            let s = psi.components[0];
            let a = psi.components[1];
            let b = psi.components[2];
            let v = 3.0 * c * (a.norm_sqr().powi(2) + b.norm_sqr().powi(2))
                + 2.0 * c4s * s.norm_sqr().powi(2)
                + 2.0 * c * (a.conj() * a.conj() * b * b).re
                + 4.0 * c * a.norm_sqr() * b.norm_sqr()
                + 4.0 * c2s * (s.conj() * s.conj() * (a * a + b * b)).re
                + 8.0 * c2s * s.norm_sqr() * (a.norm_sqr() + b.norm_sqr())
                - 4.0 * PI * d * (a.norm_sqr() + b.norm_sqr())
                - 4.0 * PI * d2s * s.norm_sqr();
            Ok(v / (4.0 * PI))
        }
    }
}

/// Gradient of the generic tensor energy with respect to the interleaved
/// real coordinates (Re psi_0, Im psi_0, Re psi_1, ...).
pub fn gradient(coeffs: &GlCoefficients, psi: &OrderParameter, regime: Regime) -> Result<Vec<f64>> {
    let n = coeffs.n();
    if psi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: psi.len() });
    }
    let wirtinger = wirtinger_gradient(coeffs, &psi.components, regime);
    let mut out = Vec::with_capacity(2 * n);
    for g in wirtinger {
        out.push(2.0 * g.re);
        out.push(2.0 * g.im);
    }
    Ok(out)
}

/// dE/d(conj psi_a) for the generic tensor energy.
pub(crate) fn wirtinger_gradient(
    coeffs: &GlCoefficients,
    v: &[Complex64],
    regime: Regime,
) -> Vec<Complex64> {
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for a in 0..n {
        let mut g = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let c1 = coeffs.c_entry(a, j, k, m);
                    if c1 != Complex64::new(0.0, 0.0) {
                        g += c1 * v[j].conj() * v[k] * v[m];
                    }
                    let c2 = coeffs.c_entry(j, a, k, m);
                    if c2 != Complex64::new(0.0, 0.0) {
                        g += c2 * v[j].conj() * v[k] * v[m];
                    }
                }
            }
        }
        let mut quad = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let d = coeffs.d_entry(a, j);
            if d != Complex64::new(0.0, 0.0) {
                quad += d * v[j];
            }
        }
        out[a] = match regime {
            Regime::BelowTc => g - quad,
            Regime::AboveTc => g + quad,
        };
    }
    out
}
