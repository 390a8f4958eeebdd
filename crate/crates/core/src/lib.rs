//! Spectral computations on manifolds with conic ends.
//!
//! Everything starts from a [`CrossSection`](spectral_data::CrossSection):
//! the Hodge-decomposed form spectrum of the cross-section `N` of the cone.
//! From there:
//!
//! * [`indicial`] builds the indicial roots of the Hodge Laplacian on
//!   `q`-forms and the smallest nonnegative root `ν₀`;
//! * [`riesz`] turns them into `L^p` intervals for the Riesz transform;
//! * [`cone_kernels`] evaluates the Bessel mode kernels of the model
//!   resolvent at the cone tip and checks their defining identities;
//! * [`torsion`] assembles the determinant and torsion expansion of a
//!   conically degenerating family, with a radial eigenvalue demonstrator.
//!
//! The `conic` binary exposes the same functionality from the command line
//! through [`cli`].

pub mod bessel;
pub mod cli;
pub mod cone_kernels;
pub mod error;
pub mod indicial;
pub mod quad;
pub mod riesz;
pub mod spectral_data;
pub mod surd;
pub mod torsion;

pub use error::{Error, Result};
pub use spectral_data::{circle_preset, load_cross_section, sphere_preset, CrossSection};
pub use surd::Surd;
