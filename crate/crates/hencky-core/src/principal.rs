//! Principal-stretch representation g(lambda_1..lambda_n) of each energy,
//! with analytic first and second partials.
//!
//! Every model here is a smooth function G of the log-stretches
//! y_i = log(lambda_i). Differentiating through the substitution gives
//!
//! ```text
//! lambda_i dg/dlambda_i              = G_i
//! lambda_i lambda_j d2g/dl_i dl_j    = G_ij - delta_ij G_i
//! ```
//!
//! so gradients and Hessians are evaluated in log space where the
//! exponential models are polynomial-times-exponential and free of
//! cancellation. Criteria work with the scaled quantities
//! `a_i = lambda_i g_i / e^s` and `b_ij = lambda_i lambda_j g_ij / e^s`
//! (with `e^s` a positive model-chosen scale), which keeps margins within
//! double range at stretches as extreme as e^11.

use crate::error::{HenckyError, Result};
use crate::params::{EnergySpec, Model};

/// Scaled value and derivatives of g at one stretch point. The true
/// quantities are recovered by multiplying with `e^{log_scale}`:
/// g = e^s v, lambda_i g_i = e^s a[i], lambda_i lambda_j g_ij = e^s b[i][j].
#[derive(Debug, Clone)]
pub struct ScaledEval {
    pub dim: usize,
    pub log_scale: f64,
    pub value: f64,
    pub a: [f64; 3],
    pub b: [[f64; 3]; 3],
}

impl ScaledEval {
    /// e^{log_scale}, which may overflow to +inf at extreme arguments.
    pub fn scale(&self) -> f64 {
        self.log_scale.exp()
    }
}

/// An energy in principal-stretch form.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalFn {
    pub spec: EnergySpec,
}

/// Log-space gradient/Hessian accumulator for G(y).
struct LogDerivs {
    log_scale: f64,
    v: f64,
    g1: [f64; 3],
    g2: [[f64; 3]; 3],
}

impl PrincipalFn {
    pub fn new(spec: EnergySpec) -> Self {
        PrincipalFn { spec }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    fn check_point(&self, lambda: &[f64]) -> Result<()> {
        if lambda.len() != self.spec.dim {
            return Err(HenckyError::UnsupportedDimension(
                lambda.len(),
                self.spec.dim,
            ));
        }
        if lambda.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(HenckyError::InvalidInput(
                "principal stretches must be positive and finite".into(),
            ));
        }
        Ok(())
    }

    /// g(lambda).
    pub fn value(&self, lambda: &[f64]) -> Result<f64> {
        let se = self.eval_scaled(lambda)?;
        Ok(se.scale() * se.value)
    }

    /// dg/dlambda_i.
    pub fn grad(&self, lambda: &[f64]) -> Result<Vec<f64>> {
        let se = self.eval_scaled(lambda)?;
        let s = se.scale();
        Ok((0..self.dim())
            .map(|i| s * se.a[i] / lambda[i])
            .collect())
    }

    /// d2g/dlambda_i dlambda_j.
    pub fn hess(&self, lambda: &[f64]) -> Result<Vec<Vec<f64>>> {
        let se = self.eval_scaled(lambda)?;
        let s = se.scale();
        Ok((0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| s * se.b[i][j] / (lambda[i] * lambda[j]))
                    .collect()
            })
            .collect())
    }

    /// Scaled derivatives at `lambda`; see the module docs for the scaling.
    pub fn eval_scaled(&self, lambda: &[f64]) -> Result<ScaledEval> {
        self.check_point(lambda)?;
        let n = self.spec.dim;
        let mut y = [0.0_f64; 3];
        for i in 0..n {
            y[i] = lambda[i].ln();
        }
        let ld = self.log_derivs(&y, n);
        let mut a = [0.0; 3];
        let mut b = [[0.0; 3]; 3];
        for i in 0..n {
            a[i] = ld.g1[i];
            for j in 0..n {
                b[i][j] = ld.g2[i][j] - if i == j { ld.g1[i] } else { 0.0 };
            }
        }
        Ok(ScaledEval {
            dim: n,
            log_scale: ld.log_scale,
            value: ld.v,
            a,
            b,
        })
    }

    /// G(y), grad and Hessian in log-stretch space, scaled by e^{log_scale}.
    fn log_derivs(&self, y: &[f64; 3], n: usize) -> LogDerivs {
        let nf = n as f64;
        let p = &self.spec.params;
        let t: f64 = y[..n].iter().sum();
        // q = ||dev_n diag(y)||^2 and its derivatives.
        let q: f64 = y[..n].iter().map(|v| v * v).sum::<f64>() - t * t / nf;
        let mut q1 = [0.0; 3];
        for i in 0..n {
            q1[i] = 2.0 * (y[i] - t / nf);
        }
        let q2 = |i: usize, j: usize| -> f64 {
            if i == j {
                2.0 * (1.0 - 1.0 / nf)
            } else {
                -2.0 / nf
            }
        };

        let mut out = LogDerivs {
            log_scale: 0.0,
            v: 0.0,
            g1: [0.0; 3],
            g2: [[0.0; 3]; 3],
        };

        match self.spec.model {
            Model::ExpHencky | Model::ExpHenckySharp => {
                let c1 = p.mu / p.k;
                let c2 = p.kappa / (2.0 * p.khat);
                let e1 = p.k * q;
                let e2 = p.khat * t * t;
                let s = e1.max(e2);
                let w1 = (e1 - s).exp();
                let w2 = (e2 - s).exp();
                out.log_scale = s;
                out.v = c1 * w1 + c2 * w2;
                for i in 0..n {
                    let d1 = p.k * q1[i];
                    let d2 = 2.0 * p.khat * t;
                    out.g1[i] = c1 * w1 * d1 + c2 * w2 * d2;
                    for j in 0..n {
                        let d1j = p.k * q1[j];
                        let d2j = 2.0 * p.khat * t;
                        out.g2[i][j] = c1 * w1 * (d1 * d1j + p.k * q2(i, j))
                            + c2 * w2 * (d2 * d2j + 2.0 * p.khat);
                    }
                }
            }
            Model::Hencky => {
                out.v = p.mu * q + 0.5 * p.kappa * t * t;
                for i in 0..n {
                    out.g1[i] = p.mu * q1[i] + p.kappa * t;
                    for j in 0..n {
                        out.g2[i][j] = p.mu * q2(i, j) + p.kappa;
                    }
                }
            }
            Model::IsochoricExp => {
                out.log_scale = p.k * q;
                out.v = 1.0;
                for i in 0..n {
                    out.g1[i] = p.k * q1[i];
                    for j in 0..n {
                        out.g2[i][j] = p.k * p.k * q1[i] * q1[j] + p.k * q2(i, j);
                    }
                }
            }
            Model::FullLogExp => {
                let phi: f64 = p.k * y[..n].iter().map(|v| v * v).sum::<f64>();
                out.log_scale = phi;
                out.v = 1.0;
                for i in 0..n {
                    out.g1[i] = 2.0 * p.k * y[i];
                    for j in 0..n {
                        out.g2[i][j] = 4.0 * p.k * p.k * y[i] * y[j]
                            + if i == j { 2.0 * p.k } else { 0.0 };
                    }
                }
            }
            Model::VolExp { m } => {
                let m = m as i32;
                out.log_scale = p.khat * t.powi(m);
                out.v = 1.0;
                let d = p.khat * m as f64 * t.powi(m - 1);
                let dd = p.khat * (m * (m - 1)) as f64 * t.powi(m - 2);
                for i in 0..n {
                    out.g1[i] = d;
                    for j in 0..n {
                        out.g2[i][j] = d * d + dd;
                    }
                }
            }
            Model::NeoHookeCG => {
                let sum_e2: f64 = y[..n].iter().map(|v| (2.0 * v).exp()).sum();
                out.v = 0.5 * p.mu * (sum_e2 - 2.0 * t - nf);
                for i in 0..n {
                    out.g1[i] = p.mu * ((2.0 * y[i]).exp() - 1.0);
                    for j in 0..n {
                        out.g2[i][j] = if i == j {
                            2.0 * p.mu * (2.0 * y[i]).exp()
                        } else {
                            0.0
                        };
                    }
                }
            }
            Model::CoupledExp { a, a_hat } => {
                out.log_scale = a * q + 0.5 * a_hat * t * t;
                out.v = p.mu;
                for i in 0..n {
                    let d_i = a * q1[i] + a_hat * t;
                    out.g1[i] = p.mu * d_i;
                    for j in 0..n {
                        let d_j = a * q1[j] + a_hat * t;
                        out.g2[i][j] = p.mu * (d_i * d_j + a * q2(i, j) + a_hat);
                    }
                }
            }
            Model::Becker => {
                out.v = 2.0 * p.mu * y[..n].iter().map(|v| v.exp() * (v - 1.0)).sum::<f64>();
                for i in 0..n {
                    out.g1[i] = 2.0 * p.mu * y[i].exp() * y[i];
                    for j in 0..n {
                        out.g2[i][j] = if i == j {
                            2.0 * p.mu * y[i].exp() * (y[i] + 1.0)
                        } else {
                            0.0
                        };
                    }
                }
            }
        }
        out
    }
}
