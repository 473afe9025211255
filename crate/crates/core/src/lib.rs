//! Exact calculus and numerical verification for the two families of
//! normalized Clifford distributions `T*_lambda`, `U*_lambda` and the four
//! pseudodifferential convolution operators built from complex powers of the
//! Dirac and Laplace operators and their Hilbert companions.
//!
//! Layers:
//!
//! * [`coeff`] — exact monomial scalars `(rational) * pi^{h/2}` and complex
//!   doubles with pole flags;
//! * [`clifford`] — dense multivector arithmetic over `R_{0,m+1}`;
//! * [`dist`] — the canonical atom algebra with the operator actions and the
//!   convolution table;
//! * [`kernels`] — the four operator families, fundamental solutions
//!   (including the logarithmic extensions), boundary values, and the
//!   identity catalog;
//! * [`oracle`] — independent numerical verification: closed-form Gaussian
//!   pairings, finite-part radial quadrature, finite-difference delta
//!   derivatives, and a brute-force convolution integral;
//! * [`halfspace`] — pointwise evaluation of the conjugate harmonic and
//!   monogenic potentials in upper half-space with finite-difference
//!   monogenicity checks and boundary-limit extrapolation;
//! * [`json`] — the wire format for expressions.

pub mod clifford;
pub mod coeff;
pub mod dist;
pub mod halfspace;
pub mod json;
pub mod kernels;
pub mod oracle;
pub mod quad;

pub use coeff::{ExactScalar, NumericScalar, Scalar};
pub use dist::{Atom, AtomKind, Degree, DistError, DistExpr};
pub use kernels::{
    boundary_value, fundamental_solution, kernel, BoundarySide, BoundaryValueId, HalfInt,
    KernelError, OperatorFamily, OperatorId, Param,
};
