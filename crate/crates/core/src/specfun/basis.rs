//! Unitary change of order-parameter coordinates between the ordinary
//! (complex) spherical-harmonic basis and the real spherical-harmonic basis.

use crate::error::{Error, Result};
use crate::glenergy::{Basis, OrderParameter};
use num::complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisDirection {
    ComplexToReal,
    RealToComplex,
}

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn real_to_complex_block(d: &[Complex64]) -> [Complex64; 5] {
    let i = Complex64::new(0.0, 1.0);
    let (m_2, m_1, m0, p1, p2) = (d[0], d[1], d[2], d[3], d[4]);
    [
        (p2 - i * m_2) * INV_SQRT2,  // tilde psi_{-2}
        (-p1 + i * m_1) * INV_SQRT2, // tilde psi_{-1}
        m0,
        (p1 + i * m_1) * INV_SQRT2, // tilde psi_{+1}
        (p2 + i * m_2) * INV_SQRT2, // tilde psi_{+2}
    ]
}

fn complex_to_real_block(t: &[Complex64]) -> [Complex64; 5] {
    let i = Complex64::new(0.0, 1.0);
    let (tm2, tm1, t0, tp1, tp2) = (t[0], t[1], t[2], t[3], t[4]);
    [
        -i * (tp2 - tm2) * INV_SQRT2, // psi_{-2}
        -i * (tp1 + tm1) * INV_SQRT2, // psi_{-1}
        t0,
        (tp1 - tm1) * INV_SQRT2, // psi_{+1}
        (tp2 + tm2) * INV_SQRT2, // psi_{+2}
    ]
}

/// Apply the five-component unitary map (and its inverse) relating complex
/// and real spherical-harmonic order parameters; six-component vectors keep
/// their leading s entry fixed.
pub fn basis_change(psi: &OrderParameter, direction: BasisDirection) -> Result<OrderParameter> {
    let n = psi.len();
    if n != 5 && n != 6 {
        return Err(Error::DimensionMismatch { expected: 5, got: n });
    }
    match direction {
        BasisDirection::ComplexToReal => {
            if psi.basis != Basis::ComplexSh {
                return Err(Error::BasisMismatch {
                    expected: "complex_sh".into(),
                    got: format!("{:?}", psi.basis),
                });
            }
            let (s, block) = if n == 6 {
                (Some(psi.components[0]), &psi.components[1..])
            } else {
                (None, &psi.components[..])
            };
            let d = complex_to_real_block(block);
            let mut out = Vec::with_capacity(n);
            if let Some(s) = s {
                out.push(s);
            }
            out.extend_from_slice(&d);
            OrderParameter::new(out, if n == 6 { Basis::LabeledMixed } else { Basis::RealSh })
        }
        BasisDirection::RealToComplex => {
            let expected = if n == 6 { Basis::LabeledMixed } else { Basis::RealSh };
            if psi.basis != expected {
                return Err(Error::BasisMismatch {
                    expected: format!("{expected:?}"),
                    got: format!("{:?}", psi.basis),
                });
            }
            let (s, block) = if n == 6 {
                (Some(psi.components[0]), &psi.components[1..])
            } else {
                (None, &psi.components[..])
            };
            let t = real_to_complex_block(block);
            let mut out = Vec::with_capacity(n);
            if let Some(s) = s {
                out.push(s);
            }
            out.extend_from_slice(&t);
            OrderParameter::new(out, Basis::ComplexSh)
        }
    }
}
