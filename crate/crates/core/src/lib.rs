//! Numerical library for the microscopic route from a delta-shell BCS model
//! to multi-component Ginzburg-Landau theory: sector spectral theory of the
//! effective gap operator, GL coefficients by quadrature and exact angular
//! algebra, GL energy minimization, free-energy expansion checks, and
//! dominance certificates for half-integer Bessel functions.

pub mod bcsverify;
pub mod besseldom;
pub mod error;
pub mod gapspec;
pub mod glcoeff;
pub mod glmin;
pub mod glenergy;
pub mod kernel;
pub mod quad;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
