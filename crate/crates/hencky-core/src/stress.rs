//! Closed-form stress tensors and special-loading response curves.
//!
//! Stresses are parameterized by the logarithmic strain X = log V. The
//! Kirchhoff stress of the exponentiated family is
//!
//! ```text
//! tau = 2 mu e^{k ||dev3 X||^2} dev3 X + kappa e^{khat (tr X)^2} (tr X) I
//! ```
//!
//! and the Cauchy stress is sigma = e^{-tr X} tau. Helpers accept V or
//! B = V^2 directly (log B = 2 log V, no polar decomposition needed).

use crate::energy::energy_from_log;
use crate::error::{HenckyError, Result};
use crate::fd;
use crate::params::{EnergySpec, MaterialParams};
use crate::tensor::{deviatoric, matrix_log_spd, Mat, SymTensor};

/// Cauchy/Kirchhoff pair at one state, with the optional referential
/// stresses when a full deformation gradient is known.
#[derive(Debug, Clone)]
pub struct StressState {
    pub cauchy: SymTensor,
    pub kirchhoff: SymTensor,
    pub jacobian: f64,
    pub biot: Option<SymTensor>,
    pub first_pk: Option<Mat>,
}

/// Kirchhoff stress of the exponentiated Hencky energy at X = log V.
pub fn kirchhoff_eh(log_v: &SymTensor, p: &MaterialParams) -> SymTensor {
    let dev = deviatoric(log_v);
    let tr = log_v.trace();
    let dev_part = dev.scale(2.0 * p.mu * (p.k * dev.norm_sq()).exp());
    let vol_scale = p.kappa * (p.khat * tr * tr).exp() * tr;
    let vol_part = SymTensor::identity(log_v.dim()).scale(vol_scale);
    dev_part.add(&vol_part)
}

/// Cauchy stress of the exponentiated Hencky energy: sigma = e^{-tr X} tau.
pub fn cauchy_eh(log_v: &SymTensor, p: &MaterialParams) -> SymTensor {
    kirchhoff_eh(log_v, p).scale((-log_v.trace()).exp())
}

/// Cauchy stress from the left stretch V.
pub fn cauchy_eh_from_v(v: &SymTensor, p: &MaterialParams) -> Result<SymTensor> {
    Ok(cauchy_eh(&matrix_log_spd(v)?, p))
}

/// Cauchy stress from B = F F^T, using log V = (1/2) log B.
pub fn cauchy_eh_from_b(b: &SymTensor, p: &MaterialParams) -> Result<SymTensor> {
    Ok(cauchy_eh(&matrix_log_spd(b)?.scale(0.5), p))
}

/// Quadratic-Hencky stresses at X = log V:
/// tau_H = 2 mu dev3 X + kappa (tr X) I, sigma_H = e^{-tr X} tau_H.
pub fn stresses_h(log_v: &SymTensor, p: &MaterialParams) -> StressState {
    let tr = log_v.trace();
    let kirchhoff = deviatoric(log_v)
        .scale(2.0 * p.mu)
        .add(&SymTensor::identity(log_v.dim()).scale(p.kappa * tr));
    let jacobian = tr.exp();
    StressState {
        cauchy: kirchhoff.scale(1.0 / jacobian),
        kirchhoff,
        jacobian,
        biot: None,
        first_pk: None,
    }
}

/// Full stress state of the exponentiated family at X = log V.
pub fn stress_state_eh(log_v: &SymTensor, p: &MaterialParams) -> StressState {
    let kirchhoff = kirchhoff_eh(log_v, p);
    let jacobian = log_v.trace().exp();
    StressState {
        cauchy: kirchhoff.scale(1.0 / jacobian),
        kirchhoff,
        jacobian,
        biot: None,
        first_pk: None,
    }
}

/// Becker's law T_Biot = 2 mu dev3 log U + kappa tr(log U) I.
pub fn biot_becker(u: &SymTensor, mu: f64, kappa: f64) -> Result<SymTensor> {
    let log_u = matrix_log_spd(u)?;
    Ok(deviatoric(&log_u)
        .scale(2.0 * mu)
        .add(&SymTensor::identity(u.dim()).scale(kappa * log_u.trace())))
}

/// Infinitesimal law sigma_lin = 2 mu dev3 eps + kappa tr(eps) I.
pub fn linear_cauchy(eps: &SymTensor, mu: f64, kappa: f64) -> SymTensor {
    deviatoric(eps)
        .scale(2.0 * mu)
        .add(&SymTensor::identity(eps.dim()).scale(kappa * eps.trace()))
}

/// Shear-response models compared in the simple-glide figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearModel {
    ExpHencky,
    Hencky,
    Linear,
    NeoHooke,
    MooneyRivlin,
}

impl ShearModel {
    pub fn parse(tag: &str) -> Result<Self> {
        Ok(match tag {
            "eh" => ShearModel::ExpHencky,
            "h" | "hencky" => ShearModel::Hencky,
            "linear" | "lin" => ShearModel::Linear,
            "neohooke" | "nh" => ShearModel::NeoHooke,
            "mooneyrivlin" | "mr" => ShearModel::MooneyRivlin,
            other => return Err(HenckyError::UnknownModel(other.to_string())),
        })
    }
}

/// Largest principal stretch of the simple glide with amount of shear gamma.
pub fn shear_principal_stretch(gamma: f64) -> f64 {
    ((gamma * gamma + 4.0).sqrt() + gamma) / 2.0
}

/// Closed-form kinematics of the simple glide F = [[1, g, 0], [0, 1, 0],
/// [0, 0, 1]]: right stretch U, rotation R, log V and the largest principal
/// stretch.
pub fn simple_shear_kinematics(gamma: f64) -> (SymTensor, Mat, SymTensor, f64) {
    let s = (gamma * gamma + 4.0).sqrt();
    let l1 = shear_principal_stretch(gamma);
    let mut u = SymTensor::zeros(3);
    u.set(0, 0, 2.0 / s);
    u.set(1, 1, (gamma * gamma + 2.0) / s);
    u.set(2, 2, 1.0);
    u.set(0, 1, gamma / s);
    let mut r = Mat::identity(3);
    r.set(0, 0, 2.0 / s);
    r.set(0, 1, gamma / s);
    r.set(1, 0, -gamma / s);
    r.set(1, 1, 2.0 / s);
    let c = l1.ln() / s;
    let mut log_v = SymTensor::zeros(3);
    log_v.set(0, 0, c * gamma);
    log_v.set(1, 1, -c * gamma);
    log_v.set(0, 1, 2.0 * c);
    (u, r, log_v, l1)
}

/// Simple-shear Cauchy stress component sigma_12 as a function of gamma.
///
/// The Neo-Hooke, Mooney-Rivlin and infinitesimal responses all reduce to
/// mu gamma in simple shear; the Hencky models carry the log stretch.
pub fn simple_shear_sigma12(gamma: f64, p: &MaterialParams, model: ShearModel) -> f64 {
    let s = (gamma * gamma + 4.0).sqrt();
    let l1 = shear_principal_stretch(gamma);
    match model {
        ShearModel::ExpHencky => {
            4.0 * p.mu * (2.0 * p.k * l1.ln().powi(2)).exp() * l1.ln() / s
        }
        ShearModel::Hencky => 4.0 * p.mu * l1.ln() / s,
        ShearModel::Linear | ShearModel::NeoHooke | ShearModel::MooneyRivlin => p.mu * gamma,
    }
}

/// Models with a closed-form pressure-volume relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EosModel {
    ExpHencky,
    Hencky,
}

impl EosModel {
    pub fn parse(tag: &str) -> Result<Self> {
        Ok(match tag {
            "eh" => EosModel::ExpHencky,
            "h" | "hencky" => EosModel::Hencky,
            other => return Err(HenckyError::UnknownModel(other.to_string())),
        })
    }
}

/// Mean Cauchy stress (pressure) as a function of the volume ratio J:
/// eH: kappa e^{khat log^2 J} log(J)/J; H: kappa log(J)/J.
pub fn eos_pressure(j: f64, p: &MaterialParams, model: EosModel) -> Result<f64> {
    if !(j > 0.0) {
        return Err(HenckyError::InvalidInput(format!(
            "volume ratio must be positive, got {j}"
        )));
    }
    let lj = j.ln();
    Ok(match model {
        EosModel::ExpHencky => p.kappa * (p.khat * lj * lj).exp() * lj / j,
        EosModel::Hencky => p.kappa * lj / j,
    })
}

/// Nominal (Biot) stress of the one-dimensional isochoric response:
/// d/dlambda [(mu/k) e^{k log^2 lambda}] = 2 mu e^{k log^2 lambda} log(lambda)/lambda.
pub fn nominal_stress_uniaxial_1d(lambda: f64, mu: f64, k: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(HenckyError::InvalidInput(format!(
            "stretch must be positive, got {lambda}"
        )));
    }
    let u = lambda.ln();
    Ok(2.0 * mu * (k * u * u).exp() * u / lambda)
}

/// Chain-rule residual for W(S) := Psi(exp S) at S = log C:
/// || D_S W(S) - exp(S) . D Psi(exp S) ||, both sides by central finite
/// differences. Small residuals certify the log-strain stress formulas.
pub fn vallee_check(spec: &EnergySpec, c: &SymTensor) -> Result<f64> {
    let s = matrix_log_spd(c)?;
    let spec = *spec;
    // W as a function of S (energy of the stretch exp S).
    let w = |x: &SymTensor| energy_from_log(&spec, x).unwrap_or(f64::INFINITY);
    let grad_s = fd::gradient(w, &s, fd::FD_STEP_GRAD);
    // Psi as a function of the stretch tensor itself.
    let psi = |u: &SymTensor| {
        matrix_log_spd(u)
            .and_then(|x| energy_from_log(&spec, &x))
            .unwrap_or(f64::INFINITY)
    };
    let grad_psi = fd::gradient(psi, c, fd::FD_STEP_GRAD);
    let product = SymTensor::from_mat_symmetrize(&c.to_mat().mul(&grad_psi.to_mat()));
    let residual = grad_s.sub(&product).norm();
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Model;
    use crate::sampling;
    use crate::tensor::{matrix_exp_sym, polar_decompose};
    use approx::assert_relative_eq;
    use rand::Rng;

    fn p_unit() -> MaterialParams {
        MaterialParams::new(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn stress_free_reference() {
        let p = p_unit();
        assert!(kirchhoff_eh(&SymTensor::zeros(3), &p).norm() < 1e-15);
        assert!(cauchy_eh(&SymTensor::zeros(3), &p).norm() < 1e-15);
        let st = stresses_h(&SymTensor::zeros(3), &p);
        assert!(st.kirchhoff.norm() < 1e-15);
    }

    #[test]
    fn kirchhoff_uniaxial_deviatoric_closed_form() {
        // X = diag(a, -a/2, -a/2): ||dev3 X||^2 = (3/2) a^2 and the
        // deviatoric part of tau is 2 mu e^{(3/2) k a^2} X.
        let p = MaterialParams::new(1.3, 2.0, 0.7, 0.3).unwrap();
        let a = 0.8;
        let x = SymTensor::diag(&[a, -a / 2.0, -a / 2.0]);
        let tau = kirchhoff_eh(&x, &p);
        let dev_tau = deviatoric(&tau);
        let scale = 2.0 * p.mu * (1.5 * p.k * a * a).exp();
        assert_relative_eq!(dev_tau.get(0, 0), scale * a, max_relative = 1e-13);
        assert_relative_eq!(dev_tau.get(1, 1), -scale * a / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn kirchhoff_is_odd() {
        let p = MaterialParams::new(1.1, 0.9, 0.6, 0.4).unwrap();
        let mut rng = sampling::rng(17);
        for _ in 0..50 {
            let x = sampling::random_sym(&mut rng, 3, 1.5);
            let t1 = kirchhoff_eh(&x, &p);
            let t2 = kirchhoff_eh(&x.scale(-1.0), &p);
            assert!(t1.add(&t2).norm() <= 1e-13 * (1.0 + t1.norm()));
        }
    }

    #[test]
    fn cauchy_kirchhoff_consistency() {
        let p = MaterialParams::new(2.0, 3.0, 0.5, 0.25).unwrap();
        let mut rng = sampling::rng(23);
        for _ in 0..100 {
            let x = sampling::random_sym(&mut rng, 3, 1.0);
            let tau = kirchhoff_eh(&x, &p);
            let sigma = cauchy_eh(&x, &p);
            let back = sigma.scale(x.trace().exp());
            assert!(back.sub(&tau).norm() <= 1e-13 * (1.0 + tau.norm()));
        }
    }

    #[test]
    fn pure_dilatation_trace_law() {
        let p = MaterialParams::new(1.0, 2.5, 1.0, 0.2).unwrap();
        let x_tr = 0.9;
        let x = SymTensor::identity(3).scale(x_tr / 3.0);
        let sigma = cauchy_eh(&x, &p);
        let expected = p.kappa * (p.khat * x_tr * x_tr - x_tr).exp() * x_tr;
        for i in 0..3 {
            assert_relative_eq!(sigma.get(i, i), expected, max_relative = 1e-13);
        }
        assert_relative_eq!(
            sigma.trace(),
            3.0 * expected,
            max_relative = 1e-13
        );
    }

    #[test]
    fn cauchy_grows_unbounded_along_ray() {
        let p = p_unit();
        let mut last = 0.0;
        for t in [1.0, 2.0, 4.0, 8.0] {
            let x = SymTensor::diag(&[t, 0.5 * t, 0.25 * t]);
            let s = cauchy_eh(&x, &p);
            let m = s.get(0, 0);
            assert!(m > last);
            last = m;
        }
        assert!(last > 1e10);
    }

    #[test]
    fn gradient_consistency_kirchhoff_vs_energy() {
        // tau = D_{log V} W for the exponentiated family.
        let p = MaterialParams::new(1.7, 0.8, 0.45, 0.35).unwrap();
        let spec = EnergySpec::new(Model::ExpHencky, p, 3).unwrap();
        let mut rng = sampling::rng(31);
        for _ in 0..100 {
            let x = sampling::random_sym(&mut rng, 3, 2.0 / 3.0_f64.sqrt());
            let tau = kirchhoff_eh(&x, &p);
            let g = fd::gradient(
                |t| energy_from_log(&spec, t).unwrap(),
                &x,
                fd::FD_STEP_GRAD,
            );
            assert!(
                g.sub(&tau).norm() <= 1e-6 * (1.0 + tau.norm()),
                "finite-difference gradient deviates"
            );
        }
    }

    #[test]
    fn hencky_limit_of_exponentiated_stresses() {
        // k, khat -> 0 recovers the quadratic-Hencky Kirchhoff stress.
        let p_small = MaterialParams::new(1.0, 2.0, 1e-8, 1e-8).unwrap();
        let x = SymTensor::from_upper(3, &[0.4, -0.1, 0.3, 0.2, -0.3, 0.1]).unwrap();
        let tau_eh = kirchhoff_eh(&x, &p_small);
        let tau_h = stresses_h(&x, &p_small).kirchhoff;
        assert!(tau_eh.sub(&tau_h).norm() <= 1e-6 * (1.0 + tau_h.norm()));
    }

    #[test]
    fn becker_examples_and_bound() {
        assert!(biot_becker(&SymTensor::identity(3), 1.0, 1.0)
            .unwrap()
            .norm()
            < 1e-15);
        let e = std::f64::consts::E;
        let t = biot_becker(&SymTensor::diag(&[e, 1.0, 1.0 / e]), 1.0, 1.0).unwrap();
        assert_relative_eq!(t.get(0, 0), 2.0, max_relative = 1e-12);
        assert_relative_eq!(t.get(1, 1), 0.0, epsilon = 1e-13);
        assert_relative_eq!(t.get(2, 2), -2.0, max_relative = 1e-12);

        // Uniaxial specification <T e1, e1> = E log(lambda) at the nu = 0
        // scaling (kappa = 2 mu / 3 makes E = 2 mu).
        let mu = 1.0;
        let kappa = 2.0 * mu / 3.0;
        let p = MaterialParams::new(mu, kappa, 1.0, 1.0).unwrap();
        let young = p.young_modulus();
        assert_relative_eq!(young, 2.0 * mu, max_relative = 1e-14);
        let lam = 1.7_f64;
        let u = SymTensor::diag(&[lam, 1.0, 1.0]);
        let t = biot_becker(&u, mu, kappa).unwrap();
        assert_relative_eq!(t.get(0, 0), young * lam.ln(), max_relative = 1e-12);

        // ||tau_Becker - tau_H|| <= ||V - I|| ||tau_H|| for ||V - I|| < 1,
        // where tau_Becker = V tau_H.
        let mut rng = sampling::rng(5);
        for _ in 0..50 {
            let x = sampling::random_sym(&mut rng, 3, 0.18);
            let v = matrix_exp_sym(&x).unwrap();
            let v_minus_i = v.sub(&SymTensor::identity(3));
            if v_minus_i.norm() >= 1.0 {
                continue;
            }
            let tau_h = stresses_h(&x, &p_unit()).kirchhoff;
            let tau_becker =
                SymTensor::from_mat_symmetrize(&v.to_mat().mul(&tau_h.to_mat()));
            assert!(
                tau_becker.sub(&tau_h).norm() <= v_minus_i.norm() * tau_h.norm() + 1e-12
            );
        }
    }

    #[test]
    fn linear_cauchy_examples() {
        assert!(linear_cauchy(&SymTensor::zeros(3), 1.0, 1.0).norm() < 1e-15);
        let gamma = 0.7;
        let mut eps = SymTensor::zeros(3);
        eps.set(0, 1, gamma / 2.0);
        let s = linear_cauchy(&eps, 1.3, 0.9);
        assert_relative_eq!(s.get(0, 1), 1.3 * gamma, max_relative = 1e-14);
        let c = 0.2;
        let s = linear_cauchy(&SymTensor::identity(3).scale(c), 1.3, 0.9);
        for i in 0..3 {
            assert_relative_eq!(s.get(i, i), 0.9 * 3.0 * c, epsilon = 1e-12);
        }
    }

    #[test]
    fn shear_kinematics_examples() {
        let (u, r, log_v, l1) = simple_shear_kinematics(0.0);
        assert!(u.sub(&SymTensor::identity(3)).norm() < 1e-15);
        assert!(r.orthogonality_defect() < 1e-15);
        assert!(log_v.norm() < 1e-15);
        assert_eq!(l1, 1.0);

        let (_, _, _, l1) = simple_shear_kinematics(1.5);
        assert_relative_eq!(l1, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn shear_kinematics_match_polar_oracle() {
        let mut rng = sampling::rng(41);
        for _ in 0..50 {
            let gamma: f64 = rng.gen_range(-4.0..4.0);
            let (u, r, log_v, _) = simple_shear_kinematics(gamma);
            let f = Mat::from_rows(
                3,
                &[&[1.0, gamma, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            );
            let (r_o, u_o) = polar_decompose(&f).unwrap();
            assert!(u.sub(&u_o).norm() < 1e-12 * (1.0 + u_o.norm()));
            let mut r_diff = 0.0_f64;
            for i in 0..3 {
                for j in 0..3 {
                    r_diff = r_diff.max((r.get(i, j) - r_o.get(i, j)).abs());
                }
            }
            assert!(r_diff < 1e-12);
            // log V from the full-tensor route.
            let log_v_o = crate::tensor::log_left_stretch(&f).unwrap();
            assert!(log_v.sub(&log_v_o).norm() < 1e-12 * (1.0 + log_v_o.norm()));
            // Incompressibility of the glide.
            assert!(log_v.trace().abs() < 1e-12);
        }
    }

    #[test]
    fn shear_stress_values() {
        let p = MaterialParams::new(0.39, 1.0, 0.243, 1.0).unwrap();
        for model in [
            ShearModel::ExpHencky,
            ShearModel::Hencky,
            ShearModel::Linear,
            ShearModel::NeoHooke,
            ShearModel::MooneyRivlin,
        ] {
            assert_eq!(simple_shear_sigma12(0.0, &p, model), 0.0);
            // Sign follows the shear direction.
            assert!(simple_shear_sigma12(0.5, &p, model) > 0.0);
            assert!(simple_shear_sigma12(-0.5, &p, model) < 0.0);
            // Slope mu at the origin.
            let g = 1e-7;
            let slope = simple_shear_sigma12(g, &p, model) / g;
            assert_relative_eq!(slope, p.mu, max_relative = 1e-5);
        }
        // Treloar-type infinitesimal value.
        assert_relative_eq!(
            simple_shear_sigma12(1.0, &p, ShearModel::Linear),
            0.39,
            max_relative = 1e-14
        );
        // eH closed form at gamma = 1.5 with mu = 0.39, k = 0.243.
        let expected =
            4.0 * 0.39 * (2.0 * 0.243 * 2.0_f64.ln().powi(2)).exp() * 2.0_f64.ln() / 2.5;
        assert_relative_eq!(
            simple_shear_sigma12(1.5, &p, ShearModel::ExpHencky),
            expected,
            max_relative = 1e-14
        );
        // Hencky closed form at gamma = 1.5: (8/5) mu ln 2.
        assert_relative_eq!(
            simple_shear_sigma12(1.5, &p, ShearModel::Hencky),
            1.6 * 0.39 * 2.0_f64.ln(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn eos_pressure_curves() {
        let p = MaterialParams::new(1.0, 2.5e9, 1.0, 22.0).unwrap();
        assert_eq!(eos_pressure(1.0, &p, EosModel::ExpHencky).unwrap(), 0.0);
        assert_eq!(eos_pressure(1.0, &p, EosModel::Hencky).unwrap(), 0.0);
        assert!(eos_pressure(0.0, &p, EosModel::Hencky).is_err());

        // Quadratic-Hencky pressure has zero slope at J = e.
        let e = std::f64::consts::E;
        let h = 1e-7;
        let dp = (eos_pressure(e + h, &p, EosModel::Hencky).unwrap()
            - eos_pressure(e - h, &p, EosModel::Hencky).unwrap())
            / (2.0 * h);
        assert!(dp.abs() < 1e-4 * p.kappa / e);

        // eH pressure strictly increasing for khat >= 1/8 on a wide grid.
        let p_lo = MaterialParams::new(1.0, 1.0, 1.0, 0.125).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..10_000 {
            let j = 10f64.powf(-3.0 + 6.0 * i as f64 / 9_999.0);
            let v = eos_pressure(j, &p_lo, EosModel::ExpHencky).unwrap();
            assert!(v > prev, "pressure not increasing at J = {j}");
            prev = v;
        }

        // H model derivative changes sign across J = e.
        let lo = eos_pressure(e - 1e-6, &p, EosModel::Hencky).unwrap();
        let mid = eos_pressure(e, &p, EosModel::Hencky).unwrap();
        let hi = eos_pressure(e + 1e-6, &p, EosModel::Hencky).unwrap();
        assert!(lo < mid && hi < mid);
    }

    #[test]
    fn nominal_stress_monotonicity_threshold() {
        assert_eq!(nominal_stress_uniaxial_1d(1.0, 1.0, 0.05).unwrap(), 0.0);
        // k = 0.05: somewhere on (1, 20) the nominal stress decreases.
        let scan = |k: f64| -> bool {
            let mut prev = f64::NEG_INFINITY;
            let mut monotone = true;
            for i in 0..10_000 {
                let l = 1.0 + 19.0 * i as f64 / 9_999.0;
                let v = nominal_stress_uniaxial_1d(l, 1.0, k).unwrap();
                if v < prev {
                    monotone = false;
                    break;
                }
                prev = v;
            }
            monotone
        };
        assert!(!scan(0.05));
        assert!(scan(0.125));
    }

    #[test]
    fn vallee_residual_small() {
        let p = MaterialParams::new(1.2, 0.9, 0.5, 0.4).unwrap();
        let mut rng = sampling::rng(51);
        // Identity.
        let spec = EnergySpec::new(Model::ExpHencky, p, 3).unwrap();
        assert!(vallee_check(&spec, &SymTensor::identity(3)).unwrap() < 1e-6);
        // Random C near I for the exponentiated model.
        for _ in 0..20 {
            let s = sampling::random_sym(&mut rng, 3, 0.5 / 3.0_f64.sqrt());
            let c = matrix_exp_sym(&s).unwrap();
            let r = vallee_check(&spec, &c).unwrap();
            assert!(r <= 1e-5 * (1.0 + 1.0), "residual {r} too large");
        }
        // Larger strains for the quadratic model.
        let spec_h = EnergySpec::new(Model::Hencky, p, 3).unwrap();
        for _ in 0..20 {
            let s = sampling::random_sym(&mut rng, 3, 2.0 / 3.0_f64.sqrt());
            let c = matrix_exp_sym(&s).unwrap();
            let r = vallee_check(&spec_h, &c).unwrap();
            assert!(r <= 1e-5 * 10.0, "residual {r} too large");
        }
    }
}
