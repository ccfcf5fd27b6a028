//! Shared numerical machinery: adaptive Gauss-Kronrod quadrature, bracketed
//! root finding, golden-section minimization and an alternating-series
//! accelerator for oscillatory tails.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

// 15-point Gauss-Kronrod pair (QUADPACK dqk15 abscissae/weights).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 15-point Gauss-Kronrod panel; returns (integral, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let value = kronrod * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

#[derive(PartialEq)]
struct Seg {
    err: f64,
    a: f64,
    b: f64,
    val: f64,
}

impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Seg {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Gauss-Kronrod integration over [a, b].
///
/// Splits the worst panel until the summed error estimate satisfies
/// `err < max(abs_tol, rel_tol * |integral|)`.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(f, a, b);
    if !v.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    let mut total = v;
    let mut total_err = e;
    heap.push(Seg { err: e, a, b, val: v });
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= max_panels {
            // accept what we have if the error is merely slack, else fail
            if total_err < 1e6 * abs_tol.max(rel_tol * total.abs()) {
                break;
            }
            return Err(Error::Quadrature(format!(
                "panel budget exhausted on [{a}, {b}]: err {total_err:e} vs value {total:e}"
            )));
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating-point resolution; error cannot shrink further
            total_err -= worst.err;
            total_err += worst.err.min(f64::EPSILON * worst.val.abs());
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(Error::Quadrature(format!(
                "non-finite integrand near [{}, {}]",
                worst.a, worst.b
            )));
        }
        total += v1 + v2 - worst.val;
        total_err += e1 + e2 - worst.err;
        heap.push(Seg { err: e1, a: worst.a, b: mid, val: v1 });
        heap.push(Seg { err: e2, a: mid, b: worst.b, val: v2 });
    }
    Ok(total)
}

/// Adaptive integration over an ordered list of breakpoints.
pub fn adaptive_split<F: Fn(f64) -> f64>(
    f: &F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    let mut total = 0.0;
    let scale = abs_tol.max(1e-4 * rel_tol); // placeholder absolute floor per segment
    for w in points.windows(2) {
        total += adaptive(f, w[0], w[1], rel_tol, scale, max_panels)?;
    }
    // one refinement pass with an absolute tolerance informed by the total
    let abs = abs_tol.max(0.1 * rel_tol * total.abs());
    let mut refined = 0.0;
    for w in points.windows(2) {
        refined += adaptive(f, w[0], w[1], rel_tol, abs / points.len() as f64, max_panels)?;
    }
    Ok(refined)
}

/// Tail of an oscillatory integral: integrates `f` over `[x0, inf)` assuming
/// consecutive half-period panel integrals asymptotically alternate in sign.
/// Uses repeated averaging of the partial sums (Euler transformation).
pub fn oscillatory_tail<F: Fn(f64) -> f64>(f: &F, x0: f64, half_period: f64, n_half: usize) -> f64 {
    let n = n_half.max(8);
    let mut partial = Vec::with_capacity(n);
    let mut acc = 0.0;
    for m in 0..n {
        let a = x0 + m as f64 * half_period;
        let b = a + half_period;
        let (v, _) = gk15(f, a, b);
        acc += v;
        partial.push(acc);
    }
    let mut s = partial;
    let mut len = s.len();
    while len > 1 {
        for i in 0..len - 1 {
            s[i] = 0.5 * (s[i] + s[i + 1]);
        }
        len -= 1;
    }
    s[0]
}

/// Bracketed root finding (Illinois variant of regula falsi).
pub fn find_root<F: Fn(f64) -> f64>(
    f: &F,
    mut a: f64,
    mut b: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!("f({a}) = {fa:e}, f({b}) = {fb:e} have equal sign")));
    }
    let mut side = 0i8;
    for _ in 0..max_iter {
        let mut m = (a * fb - b * fa) / (fb - fa);
        if !m.is_finite() || m <= a.min(b) || m >= a.max(b) {
            m = 0.5 * (a + b);
        }
        let fm = f(m);
        if fm == 0.0 || (b - a).abs() <= rel_tol * m.abs().max(1e-300) {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        } else {
            b = m;
            fb = fm;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }
    }
    Ok(0.5 * (a + b))
}

/// Plain bisection, for use when f is cheap and monotonicity near the root is
/// not guaranteed to cooperate with secant steps.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, abs_tol: f64) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!("bisect: f({a}), f({b}) have equal sign")));
    }
    let neg_left = fa < 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= abs_tol || m <= a || m >= b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == neg_left {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section minimization of a unimodal function on [a, b].
pub fn golden_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol * (a.abs() + b.abs()).max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            // evaluate P_n(x) and P_n'(x) by recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                let w = 2.0 / ((1.0 - x * x) * dp * dp);
                nodes[i] = -x;
                nodes[n - 1 - i] = x;
                weights[i] = w;
                weights[n - 1 - i] = w;
                break;
            }
        }
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gk15_polynomial_exact() {
        let (v, _) = gk15(&|x: f64| x.powi(6) - 2.0 * x + 1.0, -1.0, 3.0);
        // integral of x^6 - 2x + 1 on [-1, 3] = (3^7+1)/7 - (9-1) + 4
        assert_relative_eq!(v, 2188.0 / 7.0 - 8.0 + 4.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_peaked() {
        let f = |x: f64| 1.0 / ((x - 0.5).powi(2) + 1e-6);
        let v = adaptive(&f, 0.0, 1.0, 1e-12, 0.0, 4000).unwrap();
        let exact = 1e3 * 2.0 * (0.5e3f64).atan();
        assert_relative_eq!(v, exact, max_relative = 1e-11);
    }

    #[test]
    fn oscillatory_tail_sinx_over_x() {
        // integral_X^inf sin(x)/x dx = pi/2 - Si(X)
        let x0 = 20.0;
        let v = oscillatory_tail(&|x: f64| x.sin() / x, x0, std::f64::consts::PI, 40);
        // Si(20) = 1.5482417010434398... => tail = pi/2 - Si(20)
        let exact = std::f64::consts::FRAC_PI_2 - 1.548_241_701_043_439_8;
        assert!((v - exact).abs() < 1e-13, "{v} vs {exact}");
    }

    #[test]
    fn root_and_golden() {
        let r = find_root(&|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert_relative_eq!(r, 2f64.sqrt(), max_relative = 1e-12);
        let (x, _) = golden_min(&|x: f64| (x - 0.3).powi(2) + 1.0, -4.0, 5.0, 1e-10);
        assert_relative_eq!(x, 0.3, epsilon = 1e-7);
    }

    #[test]
    fn gauss_legendre_integrates_high_degree() {
        let (x, w) = gauss_legendre(64);
        let v: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.powi(20)).sum();
        assert_relative_eq!(v, 2.0 / 21.0, max_relative = 1e-13);
    }
}
