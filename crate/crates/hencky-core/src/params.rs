//! Material parameters and energy-model tags.

use crate::error::{HenckyError, Result};
use serde::{Deserialize, Serialize};

/// Parameter state of the exponentiated Hencky family: shear modulus `mu`
/// [Pa], bulk modulus `kappa` [Pa], distortional stiffening `k` and
/// volumetric stiffening `khat` (both dimensionless).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    pub mu: f64,
    pub kappa: f64,
    pub k: f64,
    pub khat: f64,
}

impl MaterialParams {
    pub fn new(mu: f64, kappa: f64, k: f64, khat: f64) -> Result<Self> {
        if !(mu > 0.0 && kappa > 0.0 && k > 0.0 && khat > 0.0) {
            return Err(HenckyError::InvalidInput(format!(
                "material parameters must be positive: mu={mu}, kappa={kappa}, k={k}, khat={khat}"
            )));
        }
        Ok(MaterialParams { mu, kappa, k, khat })
    }

    /// Builds from Young's modulus and Poisson's ratio,
    /// mu = E/(2(1+nu)), kappa = E/(3(1-2nu)).
    pub fn from_young_poisson(e: f64, nu: f64, k: f64, khat: f64) -> Result<Self> {
        if !(e > 0.0) || !(nu > -1.0 && nu < 0.5) {
            return Err(HenckyError::InvalidInput(format!(
                "need E > 0 and nu in (-1, 1/2); got E={e}, nu={nu}"
            )));
        }
        let mu = e / (2.0 * (1.0 + nu));
        let kappa = e / (3.0 * (1.0 - 2.0 * nu));
        MaterialParams::new(mu, kappa, k, khat)
    }

    /// Young's modulus E = 9 kappa mu / (3 kappa + mu).
    pub fn young_modulus(&self) -> f64 {
        9.0 * self.kappa * self.mu / (3.0 * self.kappa + self.mu)
    }

    /// Poisson's ratio nu = (3 kappa - 2 mu) / (2 (3 kappa + mu)), in (-1, 1/2).
    pub fn poisson_ratio(&self) -> f64 {
        (3.0 * self.kappa - 2.0 * self.mu) / (2.0 * (3.0 * self.kappa + self.mu))
    }

    /// Second Lame constant lambda = kappa - 2 mu / 3.
    pub fn lame_lambda(&self) -> f64 {
        self.kappa - 2.0 * self.mu / 3.0
    }

    /// Three-parameter variant: forces khat = 2k/3 (no lateral contraction at
    /// nu = 0).
    pub fn sharp(mut self) -> Self {
        self.khat = 2.0 * self.k / 3.0;
        self
    }
}

/// Energy model tags. `ExpHencky` is the main family; the rest are the
/// comparison energies the checkers run against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Model {
    /// (mu/k) e^{k ||dev_n log U||^2} + (kappa/(2 khat)) e^{khat (tr log U)^2}
    ExpHencky,
    /// ExpHencky with khat = 2k/3: volumetric prefactor 3 kappa/(4k).
    ExpHenckySharp,
    /// Quadratic: mu ||dev_n log U||^2 + (kappa/2) (tr log U)^2.
    Hencky,
    /// e^{k ||dev_n log U||^2} alone (unit prefactor).
    IsochoricExp,
    /// e^{k ||log U||^2} (unit prefactor; k = 1 gives the plain exponential).
    FullLogExp,
    /// Volumetric family e^{khat (log det U)^m}.
    VolExp { m: u32 },
    /// Uni-constant compressible Neo-Hooke (mu/2)(||F||^2 - 2 log det F - 3).
    NeoHookeCG,
    /// Coupled exponential mu e^{a ||dev3 log V||^2 + (ahat/2)(tr log V)^2}.
    CoupledExp { a: f64, a_hat: f64 },
    /// Maximum-entropy form 2 mu <U, log U - I> (hyperelastic at nu = 0).
    Becker,
}

impl Model {
    pub fn parse(tag: &str) -> Result<Model> {
        Ok(match tag {
            "eh" | "exp-hencky" => Model::ExpHencky,
            "eh-sharp" | "eh_sharp" => Model::ExpHenckySharp,
            "h" | "hencky" => Model::Hencky,
            "dev3exp" | "devexp" | "iso-exp" => Model::IsochoricExp,
            "logfullexp" | "full-log-exp" => Model::FullLogExp,
            "volexp2" => Model::VolExp { m: 2 },
            "volexp3" => Model::VolExp { m: 3 },
            "neohooke-cg" | "cg" => Model::NeoHookeCG,
            "coupled" => Model::CoupledExp { a: 1.0, a_hat: 1.0 },
            "becker" => Model::Becker,
            other => return Err(HenckyError::UnknownModel(other.to_string())),
        })
    }
}

/// A model bound to parameters and a spatial dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergySpec {
    pub model: Model,
    pub params: MaterialParams,
    pub dim: usize,
}

impl EnergySpec {
    pub fn new(model: Model, params: MaterialParams, dim: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(HenckyError::UnsupportedDimension(dim, 3));
        }
        let params = match model {
            Model::ExpHenckySharp => {
                if dim != 3 {
                    return Err(HenckyError::UnsupportedDimension(dim, 3));
                }
                params.sharp()
            }
            Model::CoupledExp { .. } | Model::Becker => {
                if dim != 3 {
                    return Err(HenckyError::UnsupportedDimension(dim, 3));
                }
                params
            }
            Model::VolExp { m } if m < 2 => {
                return Err(HenckyError::InvalidInput(
                    "volumetric exponent m must be >= 2".into(),
                ))
            }
            _ => params,
        };
        Ok(EnergySpec { model, params, dim })
    }
}
