//! Exponentiated Hencky-logarithmic strain energies and their laboratory.
//!
//! The crate implements the idealized isotropic energy family
//!
//! ```text
//! W(F) = (mu/k) e^{k ||dev_n log U||^2} + (kappa/(2 khat)) e^{khat (tr log U)^2}
//! ```
//!
//! together with its exact stress laws and their inversion, the quadratic
//! Hencky model and a set of comparison energies, rank-one-convexity and
//! constitutive-inequality checkers (Knowles-Sternberg, Dacorogna, Zubov,
//! Buliga, Baker-Ericksen, tension-extension, TSTS/KSTS monotonicity,
//! Schur convexity), a scale-invariant stretch-space domain scanner, and
//! least-squares calibration against shear and pressure-volume data.

pub mod calib;
pub mod criteria;
pub mod energy;
pub mod error;
pub mod fd;
pub mod inversion;
pub mod params;
pub mod principal;
pub mod sampling;
pub mod scan;
pub mod stress;
pub mod tensor;

pub use error::{HenckyError, Result};
pub use params::{EnergySpec, MaterialParams, Model};
pub use tensor::{Mat, PrincipalState, SymTensor};
