//! Dense symmetric-tensor algebra in dimensions 2 and 3.
//!
//! Everything the constitutive laws need: spectral decomposition (cyclic
//! Jacobi in 3D, closed form in 2D), principal matrix logarithm and
//! exponential on positive-definite tensors, deviatoric projection, polar
//! decomposition of a deformation gradient and the plane-strain lift that
//! embeds a 2x2 stretch into 3x3 while preserving the deviatoric log norm.

use crate::error::{HenckyError, Result};

/// Off-diagonal convergence threshold for the Jacobi eigensolver.
const JACOBI_TOL: f64 = 1e-14;

/// Two eigenvalues closer than this (relative) are treated as coincident.
/// Criteria modules use the flag to switch to their removable-singularity
/// branch formulas.
pub const EIGEN_COINCIDENCE_TOL: f64 = 1e-9;

/// Eigenvalue floor below which a tensor is rejected as not positive
/// definite. The energies diverge as det F -> 0, so no regularization is
/// applied.
const SPD_FLOOR: f64 = 1e-300;

/// Returns true when `a` and `b` should be treated as one repeated
/// eigenvalue or stretch.
pub fn nearly_equal_eigs(a: f64, b: f64) -> bool {
    (a - b).abs() <= EIGEN_COINCIDENCE_TOL * f64::max(1.0, a.abs() + b.abs())
}

/// Dense square matrix of dimension 2 or 3, row-major. Used for frames,
/// rotations and deformation gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub dim: usize,
    m: [f64; 9],
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3);
        Mat { dim, m: [0.0; 9] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(dim: usize, rows: &[&[f64]]) -> Self {
        let mut m = Mat::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[3 * i + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.m[3 * i + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim);
        let mut p = Mat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut s = 0.0;
                for k in 0..self.dim {
                    s += self.get(i, k) * other.get(k, j);
                }
                p.set(i, j, s);
            }
        }
        p
    }

    pub fn det(&self) -> f64 {
        match self.dim {
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            3 => {
                self.get(0, 0) * (self.get(1, 1) * self.get(2, 2) - self.get(1, 2) * self.get(2, 1))
                    - self.get(0, 1)
                        * (self.get(1, 0) * self.get(2, 2) - self.get(1, 2) * self.get(2, 0))
                    + self.get(0, 2)
                        * (self.get(1, 0) * self.get(2, 1) - self.get(1, 1) * self.get(2, 0))
            }
            _ => unreachable!(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.get(i, j) * self.get(i, j);
            }
        }
        s.sqrt()
    }

    /// Frobenius distance of `self^T self` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut g = self.transpose().mul(self);
        for i in 0..self.dim {
            g.set(i, i, g.get(i, i) - 1.0);
        }
        g.frobenius_norm()
    }

    /// A^T S A for symmetric S; result is symmetric.
    pub fn congruence(&self, s: &SymTensor) -> SymTensor {
        let sm = s.to_mat();
        let p = self.transpose().mul(&sm).mul(self);
        SymTensor::from_mat_symmetrize(&p)
    }
}

/// Symmetric tensor stored as its upper triangle. Dimension 2 or 3.
///
/// Entry layout: `[a11, a22, a33, a12, a13, a23]`; in 2D the slots for the
/// third row/column are unused and kept at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    dim: usize,
    e: [f64; 6],
}

impl SymTensor {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dimension must be 2 or 3");
        SymTensor { dim, e: [0.0; 6] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = SymTensor::zeros(dim);
        for i in 0..dim {
            t.set(i, i, 1.0);
        }
        t
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut t = SymTensor::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            t.set(i, i, *v);
        }
        t
    }

    /// Builds from the upper-triangle entries `[a11, a22, a33, a12, a13, a23]`
    /// (3D) or `[a11, a22, a12]` (2D).
    pub fn from_upper(dim: usize, entries: &[f64]) -> Result<Self> {
        let expected = if dim == 2 { 3 } else { 6 };
        if entries.len() != expected {
            return Err(HenckyError::InvalidInput(format!(
                "expected {expected} entries for dim {dim}, got {}",
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(HenckyError::InvalidInput(
                "tensor entries must be finite".into(),
            ));
        }
        let mut t = SymTensor::zeros(dim);
        if dim == 2 {
            t.set(0, 0, entries[0]);
            t.set(1, 1, entries[1]);
            t.set(0, 1, entries[2]);
        } else {
            t.e.copy_from_slice(entries);
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim);
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, 0) => 0,
            (1, 1) => 1,
            (2, 2) => 2,
            (0, 1) => 3,
            (0, 2) => 4,
            (1, 2) => 5,
            _ => unreachable!(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.e[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.e[k] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|v| v.is_finite())
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, a: f64) -> SymTensor {
        let mut t = self.clone();
        for v in t.e.iter_mut() {
            *v *= a;
        }
        t
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        assert_eq!(self.dim, other.dim);
        let mut t = self.clone();
        for (a, b) in t.e.iter_mut().zip(other.e.iter()) {
            *a += *b;
        }
        t
    }

    pub fn sub(&self, other: &SymTensor) -> SymTensor {
        self.add(&other.scale(-1.0))
    }

    /// Frobenius inner product <A, B> = tr(A B^T).
    pub fn inner(&self, other: &SymTensor) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.get(i, j) * other.get(i, j);
            }
        }
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Symmetrizes (M + M^T)/2; used after products that are symmetric up to
    /// rounding.
    pub fn from_mat_symmetrize(m: &Mat) -> SymTensor {
        let mut t = SymTensor::zeros(m.dim);
        for i in 0..m.dim {
            for j in i..m.dim {
                t.set(i, j, 0.5 * (m.get(i, j) + m.get(j, i)));
            }
        }
        t
    }

    pub fn det(&self) -> f64 {
        self.to_mat().det()
    }
}

/// Eigendecomposition of a symmetric tensor: ascending eigenvalues and the
/// orthonormal frame whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    pub eigenvalues: Vec<f64>,
    pub frame: Mat,
}

impl SpectralDecomp {
    /// Applies `f` to each eigenvalue and reassembles Q f(Λ) Q^T.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> SymTensor {
        let dim = self.frame.dim;
        let mut d = SymTensor::zeros(dim);
        for i in 0..dim {
            d.set(i, i, f(self.eigenvalues[i]));
        }
        // Q D Q^T = (Q^T)^T D (Q^T)
        self.frame.transpose().congruence(&d)
    }
}

/// Ordered positive principal stretches with an optional orthonormal frame.
/// Input order is preserved; nothing is sorted behind the caller's back.
#[derive(Debug, Clone)]
pub struct PrincipalState {
    pub stretches: Vec<f64>,
    pub frame: Option<Mat>,
}

impl PrincipalState {
    pub fn new(stretches: &[f64]) -> Result<Self> {
        if stretches.len() != 2 && stretches.len() != 3 {
            return Err(HenckyError::InvalidInput(
                "principal state needs 2 or 3 stretches".into(),
            ));
        }
        if stretches.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(HenckyError::InvalidInput(
                "principal stretches must be positive and finite".into(),
            ));
        }
        Ok(PrincipalState {
            stretches: stretches.to_vec(),
            frame: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.stretches.len()
    }

    pub fn log_stretches(&self) -> Vec<f64> {
        self.stretches.iter().map(|l| l.ln()).collect()
    }
}

/// Criscione-type invariants of a 3D stretch: signed dilatation
/// `K1 = tr log U`, distortion magnitude `K2 = ||dev3 log U||` and the
/// distortion mode `K3 = 3 sqrt(6) det(dev3 log U / ||dev3 log U||)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicInvariants {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

/// Eigendecomposition with ascending eigenvalues. 2D is closed form, 3D uses
/// cyclic Jacobi sweeps with threshold 1e-14 on the off-diagonal norm, which
/// stays robust for repeated eigenvalues.
pub fn spectral_decompose(s: &SymTensor) -> Result<SpectralDecomp> {
    if !s.is_finite() {
        return Err(HenckyError::InvalidInput(
            "tensor entries must be finite".into(),
        ));
    }
    match s.dim {
        2 => spectral_2d(s),
        3 => spectral_jacobi_3d(s),
        _ => unreachable!(),
    }
}

fn spectral_2d(s: &SymTensor) -> Result<SpectralDecomp> {
    let a = s.get(0, 0);
    let b = s.get(0, 1);
    let c = s.get(1, 1);
    if b == 0.0 {
        let (lo, hi, swap) = if a <= c { (a, c, false) } else { (c, a, true) };
        let frame = if swap {
            Mat::from_rows(2, &[&[0.0, 1.0], &[1.0, 0.0]])
        } else {
            Mat::identity(2)
        };
        return Ok(SpectralDecomp {
            eigenvalues: vec![lo, hi],
            frame,
        });
    }
    let mean = 0.5 * (a + c);
    let half_diff = 0.5 * (a - c);
    let r = half_diff.hypot(b);
    let l1 = mean - r;
    let l2 = mean + r;
    // Eigenvector for l2 along (b, l2 - a); stable because b != 0.
    let (vx, vy) = (b, l2 - a);
    let n = vx.hypot(vy);
    let (vx, vy) = (vx / n, vy / n);
    // Columns: first eigenvector (for l1) orthogonal to second.
    let frame = Mat::from_rows(2, &[&[-vy, vx], &[vx, vy]]);
    Ok(SpectralDecomp {
        eigenvalues: vec![l1, l2],
        frame,
    })
}

fn spectral_jacobi_3d(s: &SymTensor) -> Result<SpectralDecomp> {
    let mut a = s.to_mat();
    let mut q = Mat::identity(3);
    let scale = s.norm().max(1.0);
    for _sweep in 0..64 {
        let off = (a.get(0, 1).powi(2) + a.get(0, 2).powi(2) + a.get(1, 2).powi(2)).sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for &(p, r) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apr = a.get(p, r);
            if apr == 0.0 {
                continue;
            }
            let app = a.get(p, p);
            let arr = a.get(r, r);
            let theta = 0.5 * (arr - app) / apr;
            // Stable tangent of the rotation angle.
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let sn = t * c;
            // A <- J^T A J with J the Givens rotation in the (p, r) plane.
            for k in 0..3 {
                let akp = a.get(k, p);
                let akr = a.get(k, r);
                a.set(k, p, c * akp - sn * akr);
                a.set(k, r, sn * akp + c * akr);
            }
            for k in 0..3 {
                let apk = a.get(p, k);
                let ark = a.get(r, k);
                a.set(p, k, c * apk - sn * ark);
                a.set(r, k, sn * apk + c * ark);
            }
            for k in 0..3 {
                let qkp = q.get(k, p);
                let qkr = q.get(k, r);
                q.set(k, p, c * qkp - sn * qkr);
                q.set(k, r, sn * qkp + c * qkr);
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..3).map(|i| (a.get(i, i), i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut frame = Mat::zeros(3);
    for (col, &(_, src)) in pairs.iter().enumerate() {
        for row in 0..3 {
            frame.set(row, col, q.get(row, src));
        }
    }
    Ok(SpectralDecomp {
        eigenvalues,
        frame,
    })
}

/// Principal matrix logarithm of a symmetric positive-definite tensor:
/// log S = sum_i log(lambda_i) N_i (x) N_i.
pub fn matrix_log_spd(s: &SymTensor) -> Result<SymTensor> {
    let dec = spectral_decompose(s)?;
    for &l in &dec.eigenvalues {
        if !(l > SPD_FLOOR) {
            return Err(HenckyError::NotPositiveDefinite(l));
        }
    }
    Ok(dec.map_eigenvalues(f64::ln))
}

/// Matrix exponential of a symmetric tensor; the result is symmetric
/// positive definite.
pub fn matrix_exp_sym(s: &SymTensor) -> Result<SymTensor> {
    let dec = spectral_decompose(s)?;
    Ok(dec.map_eigenvalues(f64::exp))
}

/// Deviatoric (trace-free) part dev_n X = X - tr(X)/n * I.
pub fn deviatoric(s: &SymTensor) -> SymTensor {
    let mean = s.trace() / s.dim as f64;
    let mut d = s.clone();
    for i in 0..s.dim {
        d.set(i, i, d.get(i, i) - mean);
    }
    d
}

/// ||dev_n diag(log lambda)||^2 = (1/n) sum_{i<j} (log lambda_i - log lambda_j)^2,
/// evaluated directly from the stretches without assembling a tensor.
pub fn dev_norm_sq_from_stretches(p: &PrincipalState) -> Result<f64> {
    if p.stretches.iter().any(|l| !(*l > 0.0)) {
        return Err(HenckyError::InvalidInput(
            "stretches must be positive".into(),
        ));
    }
    let y = p.log_stretches();
    Ok(dev_norm_sq_from_logs(&y))
}

/// Same as [`dev_norm_sq_from_stretches`] but on already-taken logarithms.
pub fn dev_norm_sq_from_logs(y: &[f64]) -> f64 {
    let n = y.len() as f64;
    let mut s = 0.0;
    for i in 0..y.len() {
        for j in (i + 1)..y.len() {
            s += (y[i] - y[j]) * (y[i] - y[j]);
        }
    }
    s / n
}

/// Dilatation/distortion invariants of a positive-definite 3D stretch.
/// K3 is defined as 0 at K2 = 0, where the ratio degenerates.
pub fn geodesic_invariants(u: &SymTensor) -> Result<GeodesicInvariants> {
    if u.dim != 3 {
        return Err(HenckyError::UnsupportedDimension(u.dim, 3));
    }
    let log_u = matrix_log_spd(u)?;
    let k1 = log_u.trace();
    let dev = deviatoric(&log_u);
    let k2 = dev.norm();
    let k3 = if k2 > 0.0 {
        3.0 * 6.0_f64.sqrt() * dev.scale(1.0 / k2).det()
    } else {
        0.0
    };
    Ok(GeodesicInvariants { k1, k2, k3 })
}

/// Right polar decomposition F = R U with R in SO(n) and U = sqrt(F^T F)
/// positive definite. Requires det F > 0.
pub fn polar_decompose(f: &Mat) -> Result<(Mat, SymTensor)> {
    let det = f.det();
    if !(det > 0.0) {
        return Err(HenckyError::Orientation(det));
    }
    let c = SymTensor::from_mat_symmetrize(&f.transpose().mul(f));
    let dec = spectral_decompose(&c)?;
    for &l in &dec.eigenvalues {
        if !(l > SPD_FLOOR) {
            return Err(HenckyError::NotPositiveDefinite(l));
        }
    }
    let u = dec.map_eigenvalues(f64::sqrt);
    let u_inv = dec.map_eigenvalues(|l| 1.0 / l.sqrt());
    let r = f.mul(&u_inv.to_mat());
    Ok((r, u))
}

/// Left stretch V = sqrt(F F^T) and its logarithm, computed without a polar
/// decomposition via log B = 2 log V.
pub fn log_left_stretch(f: &Mat) -> Result<SymTensor> {
    let det = f.det();
    if !(det > 0.0) {
        return Err(HenckyError::Orientation(det));
    }
    let b = SymTensor::from_mat_symmetrize(&f.mul(&f.transpose()));
    Ok(matrix_log_spd(&b)?.scale(0.5))
}

/// Embeds a 2x2 positive-definite stretch into 3x3 with `(det U2)^(1/2)` in
/// the 33 slot. The lift preserves the deviatoric log norm:
/// ||dev3 log lift(U2)||^2 = ||dev2 log U2||^2.
pub fn lift_2d_to_3d(u2: &SymTensor) -> Result<SymTensor> {
    if u2.dim != 2 {
        return Err(HenckyError::UnsupportedDimension(u2.dim, 2));
    }
    let dec = spectral_decompose(u2)?;
    for &l in &dec.eigenvalues {
        if !(l > SPD_FLOOR) {
            return Err(HenckyError::NotPositiveDefinite(l));
        }
    }
    let mut t = SymTensor::zeros(3);
    for i in 0..2 {
        for j in i..2 {
            t.set(i, j, u2.get(i, j));
        }
    }
    t.set(2, 2, u2.det().sqrt());
    Ok(t)
}
