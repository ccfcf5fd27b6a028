//! All Ginzburg-Landau coefficients: the scalar radial integrals (c, d and
//! their s-weighted variants) by quadrature, and the full quartic tensor via
//! exact Clebsch-Gordan algebra, with an independent angular-quadrature
//! oracle over the sphere.

use crate::error::{Error, Result};
use crate::kernel::{sech2_half, g1_over_z, Dimension, ModelParams, RadialProfile};
use crate::quad::{adaptive, gauss_legendre};
use crate::specfun::{clebsch_gordan_exact, sqrt_reduce, CgIndex, SurdSum};
use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Zero};
use std::f64::consts::PI;

/// Tensor index label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Label {
    /// s-wave component (Y_0^0 in 3D, the constant mode in 2D)
    S,
    /// d-wave component Y_2^m, m in -2..=2
    M(i8),
    /// 2D cos(2 phi)/sqrt(pi) component
    Cos2,
    /// 2D sin(2 phi)/sqrt(pi) component
    Sin2,
}

/// Which closed tensor to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TensorMode {
    Dwave3d,
    Mixed3d,
    Dwave2d,
    Mixed2d,
}

/// Which radial scalar multiplies an angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ScalarKind {
    C,
    C1s,
    C2s,
    C4s,
}

/// Scalar GL coefficients plus (optionally) the quartic tensor and quadratic
/// matrix over a labeled basis.
#[derive(Debug, Clone)]
pub struct GlCoefficients {
    pub c: f64,
    pub d: f64,
    /// first s-weighted quartic scalar (written c^(s) in some displays;
    /// both names denote the same m = 1 integral)
    pub c1s: Option<f64>,
    pub c2s: Option<f64>,
    pub c4s: Option<f64>,
    pub d2s: Option<f64>,
    pub mode: Option<TensorMode>,
    pub labels: Vec<Label>,
    c_tensor: Vec<Complex64>,
    d_matrix: Vec<Complex64>,
    /// exact angular factors scaled by 4 pi, with the scalar each multiplies
    exact: Vec<(SurdSum, ScalarKind)>,
}

impl GlCoefficients {
    /// Scalar-only container (no tensor built yet).
    pub fn scalars(c: f64, d: f64) -> Self {
        Self {
            c,
            d,
            c1s: None,
            c2s: None,
            c4s: None,
            d2s: None,
            mode: None,
            labels: vec![],
            c_tensor: vec![],
            d_matrix: vec![],
            exact: vec![],
        }
    }

    /// One-component tensor: E = c |psi|^4 - d |psi|^2.
    pub fn single(c: f64, d: f64) -> Self {
        let mut g = Self::scalars(c, d);
        g.labels = vec![Label::S];
        g.c_tensor = vec![Complex64::new(c, 0.0)];
        g.d_matrix = vec![Complex64::new(d, 0.0)];
        g
    }

    /// Synthetic mixed scalars with a constant profile ratio g:
    /// c^{(ms)} = c g^m, d^{(2s)} = d g^2.
    pub fn synthetic_mixed(c: f64, d: f64, g: f64) -> Self {
        let mut out = Self::scalars(c, d);
        out.c1s = Some(c * g);
        out.c2s = Some(c * g * g);
        out.c4s = Some(c * g.powi(4));
        out.d2s = Some(d * g * g);
        out
    }

    pub fn with_tensor(self, mode: TensorMode) -> Result<Self> {
        c_tensor(mode, &self)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn c_entry(&self, i: usize, j: usize, k: usize, m: usize) -> Complex64 {
        let n = self.n();
        self.c_tensor[((i * n + j) * n + k) * n + m]
    }

    pub fn d_entry(&self, i: usize, j: usize) -> Complex64 {
        self.d_matrix[i * self.n() + j]
    }

    pub fn d_matrix(&self) -> &[Complex64] {
        &self.d_matrix
    }

    /// Exact angular factor (times 4 pi) and scalar kind of a tensor entry.
    pub fn exact_entry(&self, i: usize, j: usize, k: usize, m: usize) -> &(SurdSum, ScalarKind) {
        let n = self.n();
        &self.exact[((i * n + j) * n + k) * n + m]
    }

    fn scalar_value(&self, kind: ScalarKind) -> Result<f64> {
        match kind {
            ScalarKind::C => Ok(self.c),
            ScalarKind::C1s => self.c1s.ok_or_else(|| Error::MissingCoefficients("c1s".into())),
            ScalarKind::C2s => self.c2s.ok_or_else(|| Error::MissingCoefficients("c2s".into())),
            ScalarKind::C4s => self.c4s.ok_or_else(|| Error::MissingCoefficients("c4s".into())),
        }
    }

    #[cfg(test)]
    pub(crate) fn set_matrices(&mut self, c_tensor: Vec<Complex64>, d_matrix: Vec<Complex64>) {
        self.c_tensor = c_tensor;
        self.d_matrix = d_matrix;
    }

    /// JSON export: labels, scalars, tensor and matrix as nested arrays.
    pub fn export_json(&self) -> serde_json::Value {
        let n = self.n();
        let c: Vec<Vec<Vec<Vec<[f64; 2]>>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                (0..n)
                                    .map(|m| {
                                        let z = self.c_entry(i, j, k, m);
                                        [z.re, z.im]
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let d: Vec<Vec<[f64; 2]>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = self.d_entry(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({
            "labels": self.labels,
            "index_legend": "c_tensor[i][j][k][m] multiplies conj(psi_i psi_j) psi_k psi_m; entries are [re, im]",
            "scalars": {
                "c": self.c, "d": self.d,
                "c1s": self.c1s, "c2s": self.c2s, "c4s": self.c4s, "d2s": self.d2s,
            },
            "mode": self.mode,
            "c_tensor": c,
            "d_matrix": d,
        })
    }
}

/// Integrate f over [0, P], then keep doubling the upper limit until the
/// newest block is negligible.
fn integrate_decaying(f: &dyn Fn(f64) -> f64, points: &[f64], rel_tol: f64) -> Result<f64> {
    let mut total = 0.0;
    for w in points.windows(2) {
        total += adaptive(&|p| f(p), w[0], w[1], rel_tol, 0.0, 6000)?;
    }
    let mut lo = *points.last().unwrap();
    for _ in 0..24 {
        let hi = 2.0 * lo;
        let block = adaptive(&|p| f(p), lo, hi, rel_tol, 1e-16 * total.abs(), 6000)?;
        total += block;
        if block.abs() <= 1e-13 * total.abs() {
            return Ok(total);
        }
        lo = hi;
    }
    Err(Error::Quadrature("radial coefficient integrand decays too slowly".into()))
}

fn split_points(mu: f64, t: f64, p_max: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    if mu > 0.0 {
        for f in [0.5, 1.0, 1.5] {
            let q = (mu * f).sqrt();
            if q < p_max {
                pts.push(q);
            }
        }
    }
    let fermi_edge = (mu + 40.0 * t).max(0.0).sqrt();
    if fermi_edge > 0.0 && fermi_edge < p_max {
        pts.push(fermi_edge);
    }
    pts.push(p_max);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Scalar radial coefficients c, d (always) and c^{(1s)}, c^{(2s)}, c^{(4s)},
/// d^{(2s)} when a second profile is supplied. The mixed integrands are
/// assembled as |K rho|^{4-m} |K rho_s|^m products so that zeros of rho never
/// enter a denominator.
pub fn radial_coeffs(
    params: &ModelParams,
    rho: &RadialProfile,
    rho_s: Option<&RadialProfile>,
) -> Result<GlCoefficients> {
    params.validate()?;
    let t = params.temperature;
    let mu = params.mu;
    let dim2 = params.dimension == Dimension::Two;
    let p_head = (60.0f64).max((mu.abs() + 90.0 * t).sqrt() + 1.0).max(2.0 * mu.abs().sqrt() + 1.0);
    let pts = split_points(mu, t, p_head);

    let quartic = |m_s: u32| -> Box<dyn Fn(f64) -> f64 + '_> {
        Box::new(move |p: f64| {
            if p <= 0.0 {
                return 0.0;
            }
            let z = (p * p - mu) / t;
            let kr = rho.k_rho(mu, t, p);
            let krs = rho_s.map_or(0.0, |r| r.k_rho(mu, t, p));
            let prod = kr.powi(4 - m_s as i32) * krs.powi(m_s as i32);
            let mut v = p * p / (t * t * t) * g1_over_z(z) * prod;
            if dim2 {
                v /= p;
            }
            v
        })
    };
    let quadratic = |m_s: u32| -> Box<dyn Fn(f64) -> f64 + '_> {
        Box::new(move |p: f64| {
            if p <= 0.0 {
                return 0.0;
            }
            let z = (p * p - mu) / t;
            let kr = rho.k_rho(mu, t, p);
            let krs = rho_s.map_or(0.0, |r| r.k_rho(mu, t, p));
            let prod = kr.powi(2 - m_s as i32) * krs.powi(m_s as i32);
            let mut v = p * p / (2.0 * t) * sech2_half(z) * prod;
            if dim2 {
                v /= p;
            }
            v
        })
    };

    let c = integrate_decaying(&*quartic(0), &pts, 1e-12)?;
    let d = integrate_decaying(&*quadratic(0), &pts, 1e-12)?;
    let mut out = GlCoefficients::scalars(c, d);
    if rho_s.is_some() {
        out.c1s = Some(integrate_decaying(&*quartic(1), &pts, 1e-12)?);
        out.c2s = Some(integrate_decaying(&*quartic(2), &pts, 1e-12)?);
        out.c4s = Some(integrate_decaying(&*quartic(4), &pts, 1e-12)?);
        out.d2s = Some(integrate_decaying(&*quadratic(2), &pts, 1e-12)?);
    }
    Ok(out)
}

fn label_lm(label: Label) -> Result<(i32, i32)> {
    match label {
        Label::S => Ok((0, 0)),
        Label::M(m) => Ok((2, m as i32)),
        _ => Err(Error::Domain("2D labels have no spherical-harmonic indices".into())),
    }
}

/// Exact angular factor (times 4 pi) of a 3D tensor entry via the
/// Clebsch-Gordan product expansion.
fn angular_factor_3d(labels: [Label; 4]) -> Result<SurdSum> {
    let (li, mi) = label_lm(labels[0])?;
    let (lj, mj) = label_lm(labels[1])?;
    let (lk, mk) = label_lm(labels[2])?;
    let (lm, mm) = label_lm(labels[3])?;
    let mut out = SurdSum::zero();
    let big_m = mi + mj;
    if big_m != mk + mm {
        return Ok(out);
    }
    let lo = (li - lj).abs().max((lk - lm).abs()).max(big_m.abs());
    let hi = (li + lj).min(lk + lm);
    let dims = BigRational::from_integer(BigInt::from(
        (2 * li + 1) * (2 * lj + 1) * (2 * lk + 1) * (2 * lm + 1),
    ));
    for big_l in lo..=hi {
        let cg = [
            clebsch_gordan_exact(CgIndex::new(li, lj, 0, 0, big_l, 0)?)?,
            clebsch_gordan_exact(CgIndex::new(lk, lm, 0, 0, big_l, 0)?)?,
            clebsch_gordan_exact(CgIndex::new(li, lj, mi, mj, big_l, big_m)?)?,
            clebsch_gordan_exact(CgIndex::new(lk, lm, mk, mm, big_l, big_m)?)?,
        ];
        if cg.iter().any(|c| c.is_zero()) {
            continue;
        }
        let sign: i32 = cg.iter().map(|c| c.sign as i32).product();
        let mut sq = dims.clone();
        for c in &cg {
            sq *= &c.square;
        }
        let (mut coef, rad) = sqrt_reduce(&sq);
        coef /= BigRational::from_integer(BigInt::from(2 * big_l + 1));
        if sign < 0 {
            coef = -coef;
        }
        out.add_term(coef, rad);
    }
    Ok(out)
}

/// Exact angular factor (times 4 pi) of a 2D tensor entry: moments of
/// cos(2 phi), sin(2 phi) against the constant mode.
fn angular_factor_2d(labels: [Label; 4]) -> Result<SurdSum> {
    let mut n_s = 0u32;
    let mut a = 0u32;
    let mut b = 0u32;
    for l in labels {
        match l {
            Label::S => n_s += 1,
            Label::Cos2 => a += 1,
            Label::Sin2 => b += 1,
            Label::M(_) => {
                return Err(Error::Domain("3D labels in a 2D tensor".into()));
            }
        }
    }
    let mut out = SurdSum::zero();
    if n_s % 2 == 1 || a % 2 == 1 || b % 2 == 1 {
        return Ok(out);
    }
    // W(a, b) = (a-1)!! (b-1)!! / (a+b)!!
    let dfact = |n: i64| -> BigInt {
        let mut acc = BigInt::one();
        let mut k = n;
        while k > 1 {
            acc *= k;
            k -= 2;
        }
        acc
    };
    let w = BigRational::new(
        dfact(a as i64 - 1) * dfact(b as i64 - 1),
        dfact((a + b) as i64),
    );
    // A * 4 pi = 2^{3 - n_s/2} W
    let pow = 3i32 - (n_s / 2) as i32;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut coef = w;
    if pow >= 0 {
        for _ in 0..pow {
            coef *= &two;
        }
    } else {
        for _ in 0..(-pow) {
            coef /= &two;
        }
    }
    if !coef.is_zero() {
        out.add_term(coef, 1);
    }
    Ok(out)
}

fn mode_labels(mode: TensorMode) -> Vec<Label> {
    match mode {
        TensorMode::Dwave3d => (-2..=2).map(Label::M).collect(),
        TensorMode::Mixed3d => {
            let mut v = vec![Label::S];
            v.extend((-2..=2).map(Label::M));
            v
        }
        TensorMode::Dwave2d => vec![Label::Cos2, Label::Sin2],
        TensorMode::Mixed2d => vec![Label::S, Label::Cos2, Label::Sin2],
    }
}

fn s_count(labels: [Label; 4]) -> u32 {
    labels.iter().filter(|l| matches!(l, Label::S)).count() as u32
}

/// Build the quartic tensor and quadratic matrix for the requested mode from
/// the scalar coefficients.
pub fn c_tensor(mode: TensorMode, scalars: &GlCoefficients) -> Result<GlCoefficients> {
    let labels = mode_labels(mode);
    let n = labels.len();
    let three_d = matches!(mode, TensorMode::Dwave3d | TensorMode::Mixed3d);
    let mut out = scalars.clone();
    out.mode = Some(mode);
    out.labels = labels.clone();
    out.c_tensor = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    out.d_matrix = vec![Complex64::new(0.0, 0.0); n * n];
    out.exact = Vec::with_capacity(n * n * n * n);

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let tuple = [labels[i], labels[j], labels[k], labels[m]];
                    let ang = if three_d {
                        angular_factor_3d(tuple)?
                    } else {
                        angular_factor_2d(tuple)?
                    };
                    let kind = match s_count(tuple) {
                        0 => ScalarKind::C,
                        1 => ScalarKind::C1s,
                        2 => ScalarKind::C2s,
                        4 => ScalarKind::C4s,
                        3 => {
                            if !ang.is_zero() {
                                return Err(Error::Domain(
                                    "three-s angular factor unexpectedly non-zero".into(),
                                ));
                            }
                            ScalarKind::C // multiplies an exactly-zero factor
                        }
                        _ => unreachable!(),
                    };
                    let value = if ang.is_zero() {
                        0.0
                    } else {
                        ang.to_f64() / (4.0 * PI) * out.scalar_value(kind)?
                    };
                    out.c_tensor[((i * n + j) * n + k) * n + m] = Complex64::new(value, 0.0);
                    out.exact.push((ang, kind));
                }
            }
        }
    }
    for (i, &li) in labels.iter().enumerate() {
        let dv = if matches!(li, Label::S) {
            out.d2s.ok_or_else(|| Error::MissingCoefficients("d2s".into()))?
        } else {
            out.d
        };
        out.d_matrix[i * n + i] = Complex64::new(dv, 0.0);
    }
    Ok(out)
}

/// Numeric spherical harmonic Y_2^m / Y_0^0 at (u = cos theta, phi).
pub(crate) fn y_lm(label: Label, u: f64, phi: f64) -> Complex64 {
    let s2 = (1.0 - u * u).max(0.0);
    let s = s2.sqrt();
    match label {
        Label::S => Complex64::new(1.0 / (4.0 * PI).sqrt(), 0.0),
        Label::M(0) => Complex64::new((5.0 / (16.0 * PI)).sqrt() * (3.0 * u * u - 1.0), 0.0),
        Label::M(m @ (1 | -1)) => {
            let amp = (15.0 / (8.0 * PI)).sqrt() * s * u;
            let sign = if m == 1 { -1.0 } else { 1.0 };
            sign * amp * Complex64::new(0.0, m as f64 * phi).exp()
        }
        Label::M(m @ (2 | -2)) => {
            let amp = (15.0 / (32.0 * PI)).sqrt() * s2;
            amp * Complex64::new(0.0, m as f64 * phi).exp()
        }
        _ => unreachable!("angular oracle is 3D-only"),
    }
}

/// Direct numerical evaluation of the angular integral
/// int conj(Y_i Y_j) Y_k Y_m dOmega by 64-node Gauss-Legendre in cos(theta)
/// times a 128-node trapezoid in phi.
pub fn angular_oracle(i: Label, j: Label, k: Label, m: Label) -> Result<f64> {
    for l in [i, j, k, m] {
        match l {
            Label::S => {}
            Label::M(v) if (-2..=2).contains(&v) => {}
            _ => return Err(Error::Domain("labels must be s or m in -2..=2".into())),
        }
    }
    let (nodes, weights) = gauss_legendre(64);
    let n_phi = 128usize;
    let dphi = 2.0 * PI / n_phi as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&u, &w) in nodes.iter().zip(&weights) {
        for q in 0..n_phi {
            let phi = q as f64 * dphi;
            let v = (y_lm(i, u, phi) * y_lm(j, u, phi)).conj() * y_lm(k, u, phi) * y_lm(m, u, phi);
            acc += w * dphi * v;
        }
    }
    if acc.im.abs() > 1e-13 {
        return Err(Error::Domain(format!("angular oracle produced imaginary part {:e}", acc.im)));
    }
    Ok(acc.re)
}
