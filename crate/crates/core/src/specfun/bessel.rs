//! Bessel functions of half-integer order: J, Y, the modulus function,
//! first zeros and maxima, and the exact trigonometric representation used
//! for analytic tail integration.

use crate::error::{Error, Result};
use crate::quad::bisect;
use std::f64::consts::PI;

/// Bessel order l + 1/2 with non-negative integer l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfOrder(pub u32);

impl HalfOrder {
    pub fn nu(self) -> f64 {
        self.0 as f64 + 0.5
    }
}

/// Which first extremum of J_{l+1/2} to locate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    /// first positive zero j_{l+1/2,1}
    Zero,
    /// position j'_{l+1/2,1} of the first maximum
    Max,
}

const MAX_ORDER: u32 = 60;

/// Spherical Bessel j_l(x) for x >= 0.
///
/// Downward (Miller) recurrence normalized against the l = 0 / l = 1 closed
/// forms when x <= l + 1/2; stable upward recurrence otherwise.
pub fn sph_j(l: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let l = l as usize;
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < 1e-8 {
        // leading power series term; double factorial in f64
        let mut df = 1.0;
        for k in 0..l {
            df *= (2 * k + 3) as f64;
        }
        let v = x.powi(l as i32) / df;
        return if l == 0 { 1.0 - x * x / 6.0 } else { v * (1.0 - x * x / (2.0 * (2 * l + 3) as f64)) };
    }
    let s0 = x.sin() / x;
    if l == 0 {
        return s0;
    }
    let s1 = s0 / x - x.cos() / x;
    if l == 1 {
        return s1;
    }
    if x > l as f64 + 0.5 {
        // upward recurrence
        let (mut jm, mut j) = (s0, s1);
        for k in 1..l {
            let jp = (2 * k + 1) as f64 / x * j - jm;
            jm = j;
            j = jp;
        }
        return j;
    }
    // Miller downward recurrence from a start order above the turning point
    let start = l + 15 + x.ceil() as usize;
    let mut fp = 0.0f64;
    let mut f = 1e-30f64;
    let mut f_l = 0.0;
    let mut f1 = 0.0;
    let mut f0 = 0.0;
    for k in (0..=start).rev() {
        let fm = (2 * k + 3) as f64 / x * f - fp;
        fp = f;
        f = fm;
        // after this step f = f_k
        if k == l {
            f_l = f;
        }
        if k == 1 {
            f1 = f;
        }
        if k == 0 {
            f0 = f;
        }
        if f.abs() > 1e250 {
            let inv = 1e-250;
            f *= inv;
            fp *= inv;
            f_l *= inv;
            f1 *= inv;
            f0 *= inv;
        }
    }
    let scale = if s0.abs() >= s1.abs() { s0 / f0 } else { s1 / f1 };
    f_l * scale
}

/// Spherical Bessel y_l(x) by stable upward recurrence.
pub fn sph_y(l: u32, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let y0 = -x.cos() / x;
    if l == 0 {
        return y0;
    }
    let y1 = y0 / x - x.sin() / x;
    let (mut ym, mut y) = (y0, y1);
    for k in 1..l {
        let yp = (2 * k + 1) as f64 / x * y - ym;
        ym = y;
        y = yp;
    }
    y
}

/// J_{l+1/2}(x), relative accuracy ~1e-13 for l <= 40, x <= 200.
pub fn bessel_j_half(order: HalfOrder, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_j_half requires x > 0, got {x}")));
    }
    if order.0 > MAX_ORDER {
        return Err(Error::Domain(format!("order l = {} exceeds supported {MAX_ORDER}", order.0)));
    }
    Ok((2.0 * x / PI).sqrt() * sph_j(order.0, x))
}

/// Y_{l+1/2}(x).
pub fn bessel_y_half(order: HalfOrder, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_y_half requires x > 0, got {x}")));
    }
    if order.0 > MAX_ORDER {
        return Err(Error::Domain(format!("order l = {} exceeds supported {MAX_ORDER}", order.0)));
    }
    Ok((2.0 * x / PI).sqrt() * sph_y(order.0, x))
}

/// Modulus function M_{l+1/2}(x) = sqrt(J^2 + Y^2).
pub fn modulus_m(order: HalfOrder, x: f64) -> Result<f64> {
    let j = bessel_j_half(order, x)?;
    let y = bessel_y_half(order, x)?;
    Ok(j.hypot(y))
}

/// Derivative J'_{l+1/2}(x) = (J_{l-1/2}(x) - J_{l+3/2}(x)) / 2.
pub fn bessel_j_half_deriv(order: HalfOrder, x: f64) -> Result<f64> {
    let lower = if order.0 == 0 {
        // J_{-1/2}
        (2.0 / (PI * x)).sqrt() * x.cos()
    } else {
        bessel_j_half(HalfOrder(order.0 - 1), x)?
    };
    let upper = bessel_j_half(HalfOrder(order.0 + 1), x)?;
    Ok(0.5 * (lower - upper))
}

/// First positive zero or first maximum position of J_{l+1/2}.
///
/// Brackets on a fixed grid seeded below the turning point, then bisects to
/// an absolute tolerance of 1e-13.
pub fn first_extremum(order: HalfOrder, kind: ExtremumKind) -> Result<f64> {
    let nu = order.nu();
    let step = 0.1;
    let limit = nu + 4.0 * nu.cbrt() + 8.0;
    let max_pos = {
        let f = |x: f64| bessel_j_half_deriv(order, x).unwrap_or(f64::NAN);
        let mut a = (nu * 0.8).max(1e-3);
        // J' > 0 on (0, j'_{nu,1}); walk until the sign flips
        let mut fa = f(a);
        while fa <= 0.0 {
            // started past the max (cannot happen for the seeded a, but be safe)
            a *= 0.5;
            fa = f(a);
            if a < 1e-12 {
                return Err(Error::Convergence(format!("no bracket for max of J_{nu}")));
            }
        }
        let mut b = a + step;
        while f(b) > 0.0 {
            a = b;
            b += step;
            if b > limit {
                return Err(Error::Convergence(format!("first max of J_{nu} not bracketed below {limit}")));
            }
        }
        bisect(&f, a, b, 1e-13)?
    };
    match kind {
        ExtremumKind::Max => Ok(max_pos),
        ExtremumKind::Zero => {
            let f = |x: f64| bessel_j_half(order, x).unwrap_or(f64::NAN);
            let mut a = max_pos;
            let mut b = a + step;
            while f(b) > 0.0 {
                a = b;
                b += step;
                if b > limit + 4.0 {
                    return Err(Error::Convergence(format!("first zero of J_{nu} not bracketed")));
                }
            }
            bisect(&f, a, b, 1e-13)
        }
    }
}

/// Global maximum of |J_{l+1/2}| (attained at the first maximum).
pub fn max_amplitude(order: HalfOrder) -> Result<f64> {
    let x = first_extremum(order, ExtremumKind::Max)?;
    bessel_j_half(order, x)
}

/// Coefficients of the exact trigonometric representation
/// `j_l(x) = (A_l(1/x) sin x + B_l(1/x) cos x) / x`
/// as polynomials in u = 1/x (index = power of u).
pub fn sph_trig_coeffs(l: u32) -> (Vec<f64>, Vec<f64>) {
    let l = l as usize;
    let mut a_prev = vec![1.0]; // A_0
    let mut b_prev = vec![0.0]; // B_0
    if l == 0 {
        return (a_prev, b_prev);
    }
    let mut a = vec![0.0, 1.0]; // A_1 = u
    let mut b = vec![-1.0]; // B_1 = -1
    for k in 1..l {
        // A_{k+1}(u) = (2k+1) u A_k(u) - A_{k-1}(u)
        let mut a_next = vec![0.0; a.len() + 1];
        for (i, &c) in a.iter().enumerate() {
            a_next[i + 1] += (2 * k + 1) as f64 * c;
        }
        for (i, &c) in a_prev.iter().enumerate() {
            a_next[i] -= c;
        }
        let mut b_next = vec![0.0; b.len() + 1];
        for (i, &c) in b.iter().enumerate() {
            b_next[i + 1] += (2 * k + 1) as f64 * c;
        }
        for (i, &c) in b_prev.iter().enumerate() {
            b_next[i] -= c;
        }
        a_prev = std::mem::replace(&mut a, a_next);
        b_prev = std::mem::replace(&mut b, b_next);
    }
    (a, b)
}

/// Modified spherical Bessel product I_{l+1/2}(x) K_{l+1/2}(y) for 0 < x <= y.
/// Exponentials are combined so the product never overflows.
pub fn mod_bessel_ik_product(l: u32, x: f64, y: f64) -> f64 {
    debug_assert!(x > 0.0 && y >= x);
    let l = l as usize;
    // c_k = (l+k)! / (k! (l-k)!)
    let mut c = vec![1.0f64; l + 1];
    for k in 1..=l {
        c[k] = c[k - 1] * ((l + k) as f64 * (l - k + 1) as f64) / k as f64;
    }
    let poly = |t: f64| -> f64 {
        // sum_k c_k / (2t)^k
        let u = 1.0 / (2.0 * t);
        c.iter().rev().fold(0.0, |s, &ck| s * u + ck)
    };
    // i_l(x) = (e^x A_l(x) + (-1)^{l+1} e^{-x} A_l(-x)) / (2x) with
    // A_l(x) = sum (-1)^k c_k / (2x)^k = poly(-x)
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{l+1}
    let term1 = (x - y).exp() * poly(-x) * poly(y);
    let term2 = sign * (-(x + y)).exp() * poly(x) * poly(y);
    (x * y).sqrt() / (2.0 * x * y) * (term1 + term2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_l0() {
        // J_{1/2}(pi/2) = sqrt(2/(pi * (pi/2))) * sin(pi/2) = 2/pi
        let x = PI / 2.0;
        let v = bessel_j_half(HalfOrder(0), x).unwrap();
        assert_relative_eq!(v, 2.0 / PI, max_relative = 1e-14);
    }

    #[test]
    fn closed_form_l1() {
        for &x in &[1.0, 2.0, 5.0] {
            let v = bessel_j_half(HalfOrder(1), x).unwrap();
            let exact = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert_relative_eq!(v, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn closed_form_agreement_random_sweep() {
        // 10^4 points in (0, 100) for l = 0 and l = 1
        let mut state = 0x853c49e6748fea9bu64;
        let mut uniform = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let x = 1e-6 + 100.0 * uniform();
            // the sin/cos reference forms carry their own rounding floor
            // (cancellation of order-1 terms at small x)
            let floor = (2.0 / (PI * x)).sqrt() * 2e-15 * (1.0 + 1.0 / x);
            let j0 = bessel_j_half(HalfOrder(0), x).unwrap();
            let e0 = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((j0 - e0).abs() <= (1e-12 * e0.abs()).max(floor), "l=0 x={x}");
            let j1 = bessel_j_half(HalfOrder(1), x).unwrap();
            let e1 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert!((j1 - e1).abs() <= (1e-12 * e1.abs()).max(floor), "l=1 x={x}");
        }
    }

    #[test]
    fn recurrence_residual() {
        for l in 1..=20u32 {
            let nu = l as f64 + 0.5;
            for &x in &[0.7, 3.3, 11.0, 47.0] {
                let jm = bessel_j_half(HalfOrder(l - 1), x).unwrap();
                let j = bessel_j_half(HalfOrder(l), x).unwrap();
                let jp = bessel_j_half(HalfOrder(l + 1), x).unwrap();
                let res = jm + jp - 2.0 * nu / x * j;
                let scale = jm.abs().max(j.abs()).max(jp.abs());
                assert!(res.abs() <= 1e-10 * scale, "l={l} x={x}: residual {res:e}");
            }
        }
    }

    #[test]
    fn modulus_l0_closed_form() {
        // M_{1/2}(x)^2 = 2/(pi x)
        let v = modulus_m(HalfOrder(0), 2.0).unwrap();
        assert_relative_eq!(v, (1.0 / PI).sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn modulus_upper_bound() {
        // M_nu(x)^2 < (2/pi) / sqrt(x^2 - nu^2) for x > nu
        let nu: f64 = 3.5;
        let v = modulus_m(HalfOrder(3), 10.0).unwrap();
        assert!(v * v < (2.0 / PI) / (100.0f64 - nu * nu).sqrt());
    }

    #[test]
    fn first_zero_l0_is_pi() {
        let z = first_extremum(HalfOrder(0), ExtremumKind::Zero).unwrap();
        assert_relative_eq!(z, PI, epsilon = 1e-12);
    }

    #[test]
    fn first_max_l0_solves_tan_eq() {
        // maximum of sin(x)/sqrt(x): tan x = 2x; independent bisection oracle
        let f = |x: f64| x.tan() - 2.0 * x;
        let oracle = bisect(&f, 1.0, 1.5, 1e-14).unwrap();
        let v = first_extremum(HalfOrder(0), ExtremumKind::Max).unwrap();
        assert_relative_eq!(v, oracle, epsilon = 1e-12);
    }

    #[test]
    fn extremum_interlacing() {
        // j'_{l+1/2,1} < j_{l+1/2,1}; both sequences strictly increase in l
        let mut prev_max = 0.0;
        let mut prev_zero = 0.0;
        for l in 0..=20u32 {
            let m = first_extremum(HalfOrder(l), ExtremumKind::Max).unwrap();
            let z = first_extremum(HalfOrder(l), ExtremumKind::Zero).unwrap();
            assert!(m < z, "l={l}: {m} {z}");
            assert!(m > prev_max && z > prev_zero, "l={l}");
            prev_max = m;
            prev_zero = z;
        }
    }

    #[test]
    fn modulus_increasing_in_order() {
        for &x in &[0.5, 1.5, 5.0, 20.0, 50.0] {
            let mut prev = modulus_m(HalfOrder(0), x).unwrap();
            for l in 1..=10u32 {
                let m = modulus_m(HalfOrder(l), x).unwrap();
                assert!(m > prev, "x={x} l={l}");
                prev = m;
            }
        }
    }

    #[test]
    fn trig_representation_matches() {
        for l in 0..=14u32 {
            let (a, b) = sph_trig_coeffs(l);
            for &x in &[18.0, 55.0, 140.0] {
                let u = 1.0 / x;
                let pa: f64 = a.iter().rev().fold(0.0, |s, &c| s * u + c);
                let pb: f64 = b.iter().rev().fold(0.0, |s, &c| s * u + c);
                let v = (pa * x.sin() + pb * x.cos()) / x;
                assert_relative_eq!(v, sph_j(l, x), max_relative = 1e-11, epsilon = 1e-16);
            }
        }
    }

    #[test]
    fn ik_product_l0() {
        // I_{1/2}(x) K_{1/2}(y) = sinh(x) e^{-y} / sqrt(x y)
        let (x, y) = (0.8, 2.3);
        let v = mod_bessel_ik_product(0, x, y);
        let exact = x.sinh() * (-y).exp() / (x * y).sqrt();
        assert_relative_eq!(v, exact, max_relative = 1e-13);
    }

    #[test]
    fn ik_product_l2() {
        // i_2(x) = (1 + 3/x^2) sinh(x)/x - 3 cosh(x)/x^2
        // k_2(x) = (pi/(2x)) e^{-x} (1 + 3/x + 3/x^2)
        let (x, y): (f64, f64) = (1.1, 4.0);
        let i2 = (1.0 + 3.0 / (x * x)) * x.sinh() / x - 3.0 * x.cosh() / (x * x);
        let k2 = PI / (2.0 * y) * (-y).exp() * (1.0 + 3.0 / y + 3.0 / (y * y));
        let exact = (2.0 * x / PI).sqrt() * i2 * (2.0 * y / PI).sqrt() * k2;
        let v = mod_bessel_ik_product(2, x, y);
        assert_relative_eq!(v, exact, max_relative = 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j_half(HalfOrder(0), 0.0).is_err());
        assert!(bessel_j_half(HalfOrder(0), -1.0).is_err());
        assert!(modulus_m(HalfOrder(2), -0.5).is_err());
    }
}
