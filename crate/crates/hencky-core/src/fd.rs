//! Central finite differences on symmetric-tensor arguments.
//!
//! Used by the chain-rule and monotonicity checkers to cross-validate the
//! analytic stress expressions. Gradients follow the Frechet convention on
//! Sym(n): the returned tensor G satisfies d/dt W(X + tH)|_0 = <G, H> for
//! every symmetric H.

use crate::tensor::SymTensor;

/// Relative step for first derivatives.
pub const FD_STEP_GRAD: f64 = 1e-6;
/// Relative step for second derivatives.
pub const FD_STEP_HESS: f64 = 1e-4;

/// Directional derivative d/dt f(X + tH) at t = 0 by central differences.
pub fn directional<F: Fn(&SymTensor) -> f64>(f: F, x: &SymTensor, h: &SymTensor, step: f64) -> f64 {
    let xp = x.add(&h.scale(step));
    let xm = x.sub(&h.scale(step));
    (f(&xp) - f(&xm)) / (2.0 * step)
}

/// Second directional derivative d2/dt2 f(X + tH) at t = 0.
pub fn second_directional<F: Fn(&SymTensor) -> f64>(
    f: F,
    x: &SymTensor,
    h: &SymTensor,
    step: f64,
) -> f64 {
    let xp = x.add(&h.scale(step));
    let xm = x.sub(&h.scale(step));
    (f(&xp) - 2.0 * f(x) + f(&xm)) / (step * step)
}

/// Frechet gradient of a scalar function of a symmetric tensor.
///
/// Components are recovered from directional derivatives along the canonical
/// symmetric directions: for off-diagonal directions E_ij (ones in both
/// mirror slots) the pairing gives <G, E_ij> = 2 G_ij.
pub fn gradient<F: Fn(&SymTensor) -> f64>(f: F, x: &SymTensor, rel_step: f64) -> SymTensor {
    let dim = x.dim();
    let scale = 1.0 + x.norm();
    let step = rel_step * scale;
    let mut g = SymTensor::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let mut dir = SymTensor::zeros(dim);
            dir.set(i, j, 1.0);
            let d = directional(&f, x, &dir, step);
            if i == j {
                g.set(i, j, d);
            } else {
                // dir has two unit entries, so <G, dir> = 2 G_ij.
                g.set(i, j, d / 2.0);
            }
        }
    }
    g
}
