//! Scalar strain energies as functions of the deformation state.
//!
//! The family of interest is the volumetric-isochoric split
//!
//! ```text
//! W(F) = (mu/k) e^{k ||dev_n log U||^2} + (kappa/(2 khat)) e^{khat (tr log U)^2}
//! ```
//!
//! extended by +infinity when det F <= 0. The comparison energies used by the
//! inequality checkers live behind the same [`EnergySpec`] front door.

use crate::error::{HenckyError, Result};
use crate::params::{EnergySpec, MaterialParams, Model};
use crate::tensor::{deviatoric, matrix_log_spd, spectral_decompose, Mat, SymTensor};

/// Exponent arguments beyond this are treated as overflow and the energy
/// reports the +infinity sentinel.
pub const EXP_OVERFLOW_LIMIT: f64 = 700.0;

fn guarded_exp(arg: f64) -> f64 {
    if arg > EXP_OVERFLOW_LIMIT {
        f64::INFINITY
    } else {
        arg.exp()
    }
}

/// Exponentiated Hencky energy from the logarithmic strain tensor.
pub fn energy_eh_from_log(x: &SymTensor, p: &MaterialParams) -> f64 {
    let dev_sq = deviatoric(x).norm_sq();
    let tr = x.trace();
    p.mu / p.k * guarded_exp(p.k * dev_sq)
        + p.kappa / (2.0 * p.khat) * guarded_exp(p.khat * tr * tr)
}

/// Exponentiated Hencky energy from the stretch tensor U (or V).
pub fn energy_eh(u: &SymTensor, p: &MaterialParams) -> Result<f64> {
    Ok(energy_eh_from_log(&matrix_log_spd(u)?, p))
}

/// Exponentiated Hencky energy from a deformation gradient; returns the
/// +infinity sentinel when det F <= 0 (extended-real codomain, not an error).
pub fn energy_eh_from_f(f: &Mat, p: &MaterialParams) -> f64 {
    if !(f.det() > 0.0) {
        return f64::INFINITY;
    }
    let c = SymTensor::from_mat_symmetrize(&f.transpose().mul(f));
    // log U = (1/2) log C
    match matrix_log_spd(&c) {
        Ok(log_c) => energy_eh_from_log(&log_c.scale(0.5), p),
        Err(_) => f64::INFINITY,
    }
}

/// Quadratic Hencky energy mu ||dev_n log U||^2 + (kappa/2) (tr log U)^2.
pub fn energy_h_from_log(x: &SymTensor, p: &MaterialParams) -> f64 {
    p.mu * deviatoric(x).norm_sq() + 0.5 * p.kappa * x.trace().powi(2)
}

/// Quadratic Hencky energy from the stretch tensor.
pub fn energy_h(u: &SymTensor, p: &MaterialParams) -> Result<f64> {
    Ok(energy_h_from_log(&matrix_log_spd(u)?, p))
}

/// Three-parameter exponentiated energy: khat is tied to 2k/3, so the
/// volumetric prefactor becomes 3 kappa / (4k). Defined for dim 3 only.
pub fn energy_eh_sharp(v: &SymTensor, p: &MaterialParams) -> Result<f64> {
    if v.dim() != 3 {
        return Err(HenckyError::UnsupportedDimension(v.dim(), 3));
    }
    energy_eh(v, &p.sharp())
}

/// Volumetric family J |-> e^{khat (log J)^m}.
pub fn energy_vol_exp(j: f64, khat: f64, m: u32) -> Result<f64> {
    if !(j > 0.0) {
        return Err(HenckyError::InvalidInput(format!(
            "volume ratio must be positive, got {j}"
        )));
    }
    if m < 2 {
        return Err(HenckyError::InvalidInput(
            "volumetric exponent m must be >= 2".into(),
        ));
    }
    Ok(guarded_exp(khat * j.ln().powi(m as i32)))
}

/// Evaluates any model from its logarithmic strain tensor X = log U.
///
/// All models here are isotropic, so the value only depends on the
/// eigenvalues of X; the two non-log-polynomial comparison energies
/// (Neo-Hooke and the Becker form) are routed through the spectrum.
pub fn energy_from_log(spec: &EnergySpec, x: &SymTensor) -> Result<f64> {
    if x.dim() != spec.dim {
        return Err(HenckyError::UnsupportedDimension(x.dim(), spec.dim));
    }
    let p = &spec.params;
    Ok(match spec.model {
        Model::ExpHencky | Model::ExpHenckySharp => energy_eh_from_log(x, p),
        Model::Hencky => energy_h_from_log(x, p),
        Model::IsochoricExp => guarded_exp(p.k * deviatoric(x).norm_sq()),
        Model::FullLogExp => guarded_exp(p.k * x.norm_sq()),
        Model::VolExp { m } => guarded_exp(p.khat * x.trace().powi(m as i32)),
        Model::NeoHookeCG => {
            let dec = spectral_decompose(x)?;
            let sum_sq: f64 = dec.eigenvalues.iter().map(|y| guarded_exp(2.0 * y)).sum();
            0.5 * p.mu * (sum_sq - 2.0 * x.trace() - spec.dim as f64)
        }
        Model::CoupledExp { a, a_hat } => {
            let dev_sq = deviatoric(x).norm_sq();
            let tr = x.trace();
            p.mu * guarded_exp(a * dev_sq + 0.5 * a_hat * tr * tr)
        }
        Model::Becker => {
            let dec = spectral_decompose(x)?;
            2.0 * p.mu
                * dec
                    .eigenvalues
                    .iter()
                    .map(|y| guarded_exp(*y) * (y - 1.0))
                    .sum::<f64>()
        }
    })
}

/// Evaluates any model from the stretch tensor U (or V).
pub fn energy_from_stretch(spec: &EnergySpec, u: &SymTensor) -> Result<f64> {
    energy_from_log(spec, &matrix_log_spd(u)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::matrix_exp_sym;
    use approx::assert_relative_eq;
    use rand::prelude::*;

    fn e() -> f64 {
        std::f64::consts::E
    }

    fn random_rotation(rng: &mut impl Rng, dim: usize) -> Mat {
        // Orthonormalize a random Gaussian-ish matrix by Gram-Schmidt.
        loop {
            let mut cols: Vec<Vec<f64>> = (0..dim)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let mut ok = true;
            for i in 0..dim {
                for j in 0..i {
                    let d: f64 = (0..dim).map(|r| cols[i][r] * cols[j][r]).sum();
                    for r in 0..dim {
                        cols[i][r] -= d * cols[j][r];
                    }
                }
                let n: f64 = (0..dim).map(|r| cols[i][r] * cols[i][r]).sum::<f64>().sqrt();
                if n < 1e-6 {
                    ok = false;
                    break;
                }
                for r in 0..dim {
                    cols[i][r] /= n;
                }
            }
            if !ok {
                continue;
            }
            let mut m = Mat::zeros(dim);
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    m.set(i, j, *v);
                }
            }
            if m.det() < 0.0 {
                for i in 0..dim {
                    let v = m.get(i, 0);
                    m.set(i, 0, -v);
                }
            }
            return m;
        }
    }

    fn random_sym(rng: &mut impl Rng, dim: usize, scale: f64) -> SymTensor {
        let mut t = SymTensor::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                t.set(i, j, rng.gen_range(-scale..scale));
            }
        }
        t
    }

    #[test]
    fn eh_reference_values() {
        let p = MaterialParams::new(1.0, 2.0, 1.0, 0.125).unwrap();
        // Zero strain: mu/k + kappa/(2 khat).
        let w0 = energy_eh(&SymTensor::identity(3), &p).unwrap();
        assert_relative_eq!(w0, 1.0 + 8.0, max_relative = 1e-14);
        // diag(e, 1, 1/e): dev-norm^2 = 2, trace 0 -> e^2 + 8.
        let u = SymTensor::diag(&[e(), 1.0, 1.0 / e()]);
        assert_relative_eq!(
            energy_eh(&u, &p).unwrap(),
            e() * e() + 8.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn eh_sentinel_on_flipped_gradient() {
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let f = Mat::from_rows(3, &[&[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(energy_eh_from_f(&f, &p).is_infinite());
        assert!(energy_eh_from_f(&Mat::identity(3), &p).is_finite());
    }

    #[test]
    fn eh_overflow_policy() {
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let x = SymTensor::diag(&[40.0, 0.0, -40.0]);
        // dev norm^2 = 3200 > 700: sentinel, no panic.
        assert!(energy_eh_from_log(&x, &p).is_infinite());
    }

    #[test]
    fn hencky_reference_values() {
        let p = MaterialParams::new(1.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(energy_h(&SymTensor::identity(3), &p).unwrap(), 0.0);
        let u = SymTensor::diag(&[e(), 1.0, 1.0 / e()]);
        assert_relative_eq!(energy_h(&u, &p).unwrap(), 2.0, max_relative = 1e-13);
    }

    #[test]
    fn tension_compression_symmetry() {
        let p = MaterialParams::new(1.3, 2.7, 0.8, 0.4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_sym(&mut rng, 3, 1.2);
            let u = matrix_exp_sym(&x).unwrap();
            let u_inv = matrix_exp_sym(&x.scale(-1.0)).unwrap();
            let weh = energy_eh(&u, &p).unwrap();
            let weh_inv = energy_eh(&u_inv, &p).unwrap();
            assert_relative_eq!(weh, weh_inv, max_relative = 1e-12);
            let wh = energy_h(&u, &p).unwrap();
            let wh_inv = energy_h(&u_inv, &p).unwrap();
            assert_relative_eq!(wh, wh_inv, max_relative = 1e-11, epsilon = 1e-13);
        }
    }

    #[test]
    fn sharp_matches_family_member() {
        let p = MaterialParams::new(1.0, 1.0, 1.5, 99.0).unwrap();
        // k = 3/2, mu = kappa = 1, V = diag(e, 1, 1):
        // dev-norm^2 = 2/3, tr = 1 -> (2/3) e + (1/2) e.
        let v = SymTensor::diag(&[e(), 1.0, 1.0]);
        let w = energy_eh_sharp(&v, &p).unwrap();
        assert_relative_eq!(w, (2.0 / 3.0) * e() + 0.5 * e(), max_relative = 1e-13);

        // Definitional identity against the full family with khat = 2k/3.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = random_sym(&mut rng, 3, 1.0);
            let v = matrix_exp_sym(&x).unwrap();
            let lhs = energy_eh_sharp(&v, &p).unwrap();
            let rhs = energy_eh(&v, &p.sharp()).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        }
    }

    #[test]
    fn vol_exp_values() {
        assert_relative_eq!(energy_vol_exp(1.0, 0.3, 2).unwrap(), 1.0);
        assert_relative_eq!(
            energy_vol_exp(e(), 0.125, 2).unwrap(),
            (0.125_f64).exp(),
            max_relative = 1e-14
        );
        assert!(energy_vol_exp(-1.0, 0.125, 2).is_err());
        assert!(energy_vol_exp(1.0, 0.125, 1).is_err());
    }

    #[test]
    fn comparison_energies() {
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        // Neo-Hooke CG at F = I is zero.
        let spec = EnergySpec::new(Model::NeoHookeCG, p, 3).unwrap();
        let w = energy_from_log(&spec, &SymTensor::zeros(3)).unwrap();
        assert!(w.abs() < 1e-14);

        // e^{||log U||^2} at diag(e^2, e^11) = e^125.
        let spec = EnergySpec::new(Model::FullLogExp, p, 2).unwrap();
        let x = SymTensor::diag(&[2.0, 11.0]);
        assert_relative_eq!(
            energy_from_log(&spec, &x).unwrap(),
            (125.0_f64).exp(),
            max_relative = 1e-12
        );

        // Coupled exponential at V = I equals mu.
        let spec = EnergySpec::new(
            Model::CoupledExp { a: 1.0, a_hat: 2.0 },
            p,
            3,
        )
        .unwrap();
        assert_relative_eq!(
            energy_from_log(&spec, &SymTensor::zeros(3)).unwrap(),
            1.0
        );
    }

    #[test]
    fn isotropy_under_rotations() {
        let p = MaterialParams::new(1.1, 2.2, 0.7, 0.5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let models = [
            Model::ExpHencky,
            Model::Hencky,
            Model::IsochoricExp,
            Model::FullLogExp,
            Model::NeoHookeCG,
            Model::Becker,
        ];
        for model in models {
            let spec = EnergySpec::new(model, p, 3).unwrap();
            let x = random_sym(&mut rng, 3, 0.9);
            let u = matrix_exp_sym(&x).unwrap();
            let w = energy_from_stretch(&spec, &u).unwrap();
            for _ in 0..100 {
                let q = random_rotation(&mut rng, 3);
                let rotated = q.congruence(&u);
                let w_rot = energy_from_stretch(&spec, &rotated).unwrap();
                assert_relative_eq!(w, w_rot, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn isochoric_scaling_invariance() {
        // e^{k ||dev_n log U||^2} is invariant under U -> a U.
        let p = MaterialParams::new(1.0, 1.0, 0.25, 1.0).unwrap();
        let spec = EnergySpec::new(Model::IsochoricExp, p, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = random_sym(&mut rng, 3, 1.0);
            let u = matrix_exp_sym(&x).unwrap();
            let w = energy_from_stretch(&spec, &u).unwrap();
            for a in [0.1, 10.0] {
                let w_scaled = energy_from_stretch(&spec, &u.scale(a)).unwrap();
                assert_relative_eq!(w, w_scaled, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn quadratic_limit_slope() {
        // |W_eH - const - W_H| should scale like h^4: log-log slope >= 3.9.
        let p = MaterialParams::new(1.0, 2.0, 1.0, 0.25).unwrap();
        let w0 = p.mu / p.k + p.kappa / (2.0 * p.khat);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let dir = {
            let d = random_sym(&mut rng, 3, 1.0);
            d.scale(1.0 / d.norm())
        };
        let mut pts = Vec::new();
        let mut h = 1e-1;
        while h >= 1e-3 {
            let x = dir.scale(h);
            let diff = (energy_eh_from_log(&x, &p) - w0 - energy_h_from_log(&x, &p)).abs();
            pts.push((h.ln(), diff.ln()));
            h /= 2.0;
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(slope >= 3.9, "quadratic-limit slope too small: {slope}");
    }
}
