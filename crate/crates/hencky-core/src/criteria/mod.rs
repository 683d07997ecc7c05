//! Constitutive-inequality and rank-one-convexity checkers.
//!
//! Each checker evaluates a family of inequalities at one stretch point (or
//! over a sample set) and reports named margins: positive means satisfied.
//! Margins are computed from the scaled derivatives of
//! [`crate::principal::PrincipalFn`], i.e. with the common positive
//! exponential prefactor factored out, so they stay within double range at
//! stretches as extreme as e^11. Coincident stretches are detected with the
//! shared tolerance and routed to the removable-singularity limit branches.

pub mod monotonicity;
pub mod rank_one;
pub mod scalar_convexity;

pub use monotonicity::*;
pub use rank_one::*;
pub use scalar_convexity::*;

use crate::error::Result;
use crate::principal::{PrincipalFn, ScaledEval};
use crate::tensor::{nearly_equal_eigs, PrincipalState};
use serde::{Deserialize, Serialize};

/// Relative tolerance of the pass/fail/boundary decision.
pub const VERDICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Boundary,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Boundary => write!(f, "boundary"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// Per-inequality margins and verdict for one criterion at one point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: String,
    /// Stretch point the criterion was evaluated at (empty for sampled
    /// checks over random states).
    pub point: Vec<f64>,
    /// Named inequality margins; positive = satisfied.
    pub margins: Vec<(String, f64)>,
    /// Intermediate quantities worth reporting (criterion-specific).
    pub detail: Vec<(String, f64)>,
    pub verdict: Verdict,
    /// True when a pass is sampling-limited rather than exhaustive.
    pub sampled: bool,
}

impl CriterionReport {
    pub fn new(criterion: &str, point: Vec<f64>, margins: Vec<(String, f64)>) -> Self {
        let verdict = verdict_from_margins(&margins);
        CriterionReport {
            criterion: criterion.to_string(),
            point,
            margins,
            detail: Vec::new(),
            verdict,
            sampled: false,
        }
    }

    pub fn with_detail(mut self, detail: Vec<(String, f64)>) -> Self {
        self.detail = detail;
        self
    }

    pub fn sampled(mut self) -> Self {
        self.sampled = true;
        self
    }

    pub fn min_margin(&self) -> f64 {
        self.margins
            .iter()
            .map(|(_, m)| *m)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn detail_value(&self, name: &str) -> Option<f64> {
        self.detail
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

/// fail iff some margin < -tol; boundary iff the minimum lies in [-tol, tol];
/// tol = 1e-9 * max(1, largest margin magnitude).
pub fn verdict_from_margins(margins: &[(String, f64)]) -> Verdict {
    let scale = margins
        .iter()
        .map(|(_, m)| m.abs())
        .fold(1.0_f64, f64::max);
    let tol = VERDICT_TOL * scale;
    let min = margins
        .iter()
        .map(|(_, m)| *m)
        .fold(f64::INFINITY, f64::min);
    if min < -tol {
        Verdict::Fail
    } else if min <= tol {
        Verdict::Boundary
    } else {
        Verdict::Pass
    }
}

/// Scaled pairwise quantities shared by the rank-one criteria. All values
/// carry the common factor lambda_i lambda_j / e^s relative to the raw
/// derivative expressions.
pub(crate) struct PairCtx<'a> {
    pub se: &'a ScaledEval,
    pub lambda: &'a [f64],
}

impl<'a> PairCtx<'a> {
    pub fn coincident(&self, i: usize, j: usize) -> bool {
        nearly_equal_eigs(self.lambda[i], self.lambda[j])
    }

    /// Baker-Ericksen quotient (lambda_i g_i - lambda_j g_j)/(lambda_i - lambda_j),
    /// scaled by lambda_i lambda_j; coincident limit b_ii - b_ij + a_i.
    pub fn be(&self, i: usize, j: usize) -> f64 {
        if self.coincident(i, j) {
            self.se.b[i][i] - self.se.b[i][j] + self.se.a[i]
        } else {
            self.lambda[i] * self.lambda[j] * (self.se.a[i] - self.se.a[j])
                / (self.lambda[i] - self.lambda[j])
        }
    }

    /// (g_i - g_j)/(lambda_i - lambda_j) scaled by lambda_i lambda_j;
    /// coincident limit b_ii - b_ij.
    pub fn grad_diff(&self, i: usize, j: usize) -> f64 {
        if self.coincident(i, j) {
            self.se.b[i][i] - self.se.b[i][j]
        } else {
            (self.lambda[j] * self.se.a[i] - self.lambda[i] * self.se.a[j])
                / (self.lambda[i] - self.lambda[j])
        }
    }

    /// (g_i + g_j)/(lambda_i + lambda_j) scaled by lambda_i lambda_j.
    pub fn grad_sum(&self, i: usize, j: usize) -> f64 {
        (self.lambda[j] * self.se.a[i] + self.lambda[i] * self.se.a[j])
            / (self.lambda[i] + self.lambda[j])
    }
}

fn eval_at<'a>(
    g: &PrincipalFn,
    p: &'a PrincipalState,
) -> Result<(ScaledEval, &'a [f64])> {
    let se = g.eval_scaled(&p.stretches)?;
    Ok((se, p.stretches.as_slice()))
}

/// Baker-Ericksen inequalities: the greater principal Cauchy stress occurs
/// in the direction of the greater principal stretch. Margins are the
/// pairwise quotients; coincident pairs use the limit branch.
pub fn check_be(g: &PrincipalFn, p: &PrincipalState) -> Result<CriterionReport> {
    let (se, lambda) = eval_at(g, p)?;
    let ctx = PairCtx { se: &se, lambda };
    let n = p.dim();
    let mut margins = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            margins.push((format!("be_{}{}", i + 1, j + 1), ctx.be(i, j)));
        }
    }
    Ok(CriterionReport::new("BE", p.stretches.clone(), margins))
}

/// Tension-extension inequalities (separate convexity): each margin is the
/// scaled second partial lambda_i^2 d2g/dlambda_i^2.
pub fn check_te(g: &PrincipalFn, p: &PrincipalState) -> Result<CriterionReport> {
    let (se, _) = eval_at(g, p)?;
    let margins = (0..p.dim())
        .map(|i| (format!("sc_{}", i + 1), se.b[i][i]))
        .collect();
    Ok(CriterionReport::new("SC/TE", p.stretches.clone(), margins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{EnergySpec, MaterialParams, Model};
    use crate::sampling;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn pfn(model: Model, k: f64, dim: usize) -> PrincipalFn {
        let p = MaterialParams::new(1.0, 1.0, k, 1.0).unwrap();
        PrincipalFn::new(EnergySpec::new(model, p, dim).unwrap())
    }

    #[test]
    fn verdicts_from_margins() {
        let m = |v: f64| vec![("m".to_string(), v)];
        assert_eq!(verdict_from_margins(&m(1.0)), Verdict::Pass);
        assert_eq!(verdict_from_margins(&m(0.0)), Verdict::Boundary);
        assert_eq!(verdict_from_margins(&m(-1.0)), Verdict::Fail);
        assert_eq!(verdict_from_margins(&m(1e-12)), Verdict::Boundary);
    }

    #[test]
    fn be_holds_for_isochoric_exponential() {
        // Convex isotropic functions of log U always satisfy BE.
        let g = pfn(Model::IsochoricExp, 0.7, 3);
        let mut rng = sampling::rng(9);
        for _ in 0..200 {
            let l: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0_f64).exp()).collect();
            let p = PrincipalState::new(&l).unwrap();
            let rep = check_be(&g, &p).unwrap();
            assert_ne!(rep.verdict, Verdict::Fail, "BE failed at {l:?}");
        }
        // Isotropic point passes through the limit branch.
        let p = PrincipalState::new(&[1.3, 1.3, 1.3]).unwrap();
        let rep = check_be(&g, &p).unwrap();
        assert_ne!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn be_fails_for_becker_model() {
        let g = pfn(Model::Becker, 1.0, 3);
        let p = PrincipalState::new(&[0.05, 0.2, 1.0]).unwrap();
        let rep = check_be(&g, &p).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn te_quadratic_deviatoric_threshold() {
        // ||dev3 log U||^2 is separately convex only while
        // lambda_1^2 <= e^2 lambda_2 lambda_3 (and permutations).
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let spec = EnergySpec::new(Model::Hencky, p, 3).unwrap();
        let g = PrincipalFn::new(spec);
        // Inside the domain.
        let inside = PrincipalState::new(&[1.5, 1.0, 0.8]).unwrap();
        assert_eq!(check_te(&g, &inside).unwrap().verdict, Verdict::Pass);
        // Violating the first inequality: lambda_1 = e^2, lambda_2 lambda_3 = 1
        // gives lambda_1^2 = e^4 > e^2.
        let e = std::f64::consts::E;
        let outside = PrincipalState::new(&[e * e, 1.0, 1.0]).unwrap();
        assert_eq!(check_te(&g, &outside).unwrap().verdict, Verdict::Fail);
        // Exact boundary lambda_1^2 = e^2 lambda_2 lambda_3.
        let boundary = PrincipalState::new(&[e, 1.0, 1.0]).unwrap();
        assert_eq!(check_te(&g, &boundary).unwrap().verdict, Verdict::Boundary);
    }

    #[test]
    fn te_exponentiated_at_extreme_point() {
        // At (e^11, e^7, e^-1) with k = 3/16 the first margin is
        // proportional to 2 (256 k / 3 - 7) = 18 > 0.
        let k = 3.0 / 16.0;
        let g = pfn(Model::IsochoricExp, k, 3);
        let l: Vec<f64> = [11.0_f64, 7.0, -1.0].iter().map(|v| v.exp()).collect();
        let p = PrincipalState::new(&l).unwrap();
        let rep = check_te(&g, &p).unwrap();
        let se = g.eval_scaled(&l).unwrap();
        let factored = rep.margins[0].1 / (2.0 * k / 3.0 * se.value);
        assert_relative_eq!(factored, 18.0, max_relative = 1e-11);
    }

    #[test]
    fn te_planar_boundary_at_quarter() {
        // 2D e^{(k/2) log^2 ratio} with k = 1/4 at ratio e^2: margin exactly 0.
        let g = pfn(Model::IsochoricExp, 0.25, 2);
        let e = std::f64::consts::E;
        let p = PrincipalState::new(&[e, 1.0 / e]).unwrap();
        let rep = check_te(&g, &p).unwrap();
        assert!(rep.margins[0].1.abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::Boundary);
    }
}
