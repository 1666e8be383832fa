//! Numerical machinery for harmonic analysis on complex hyperbolic space.
//!
//! The crate is organized in layers, each tested against the one below:
//!
//! - [`quad`], [`specfun`]: adaptive quadrature and the special functions
//!   (gamma, Bessel K, Gauss/Appell hypergeometric, Whittaker, Ramanujan
//!   sums) everything else is built from.
//! - [`geometry`]: the Siegel domain and unit-ball models, the Cayley map
//!   between them, the discrete group action, and invariant point-pair
//!   coordinates.
//! - [`operator`]: the invariant Laplacian in each coordinate chart,
//!   applied by finite differences to arbitrary scalar fields, plus the
//!   radial operator for point-pair kernels.
//! - [`series`]: truncated Eisenstein/Poincaré sums, their Fourier
//!   coefficients in closed form, boundary (scattering) sums, and the
//!   integral identities connecting them.
//! - [`modular`]: weighted Eisenstein series on the deformed slash action,
//!   the discriminant combination, and the associated j-function family.
//! - [`spectral`], [`report`], [`suites`]: the spectral parameter
//!   bookkeeping, verification-report plumbing, and the named check suites
//!   shared by the CLI and the acceptance tests.

pub mod error;
pub mod geometry;
pub mod modular;
pub mod operator;
pub mod quad;
pub mod report;
pub mod series;
pub mod specfun;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use geometry::{BallPoint, GroupElement, Permutation, SiegelPoint};
pub use modular::WeightIndex;
pub use operator::{Chart, FdOrder, ScalarField, StencilSpec};
pub use quad::QuadratureSpec;
pub use report::VerificationReport;
pub use series::kernel::RadialKernel;
pub use series::Truncation;
pub use specfun::SeriesSpec;
pub use spectral::SpectralParam;
