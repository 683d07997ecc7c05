//! Seeded random tensors and deterministic direction sequences for the
//! sampled inequality checks.

use crate::tensor::{Mat, SymTensor};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Default seed used across the library and CLI.
pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric tensor with entries uniform in [-scale, scale].
pub fn random_sym(rng: &mut impl Rng, dim: usize, scale: f64) -> SymTensor {
    let mut t = SymTensor::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            t.set(i, j, rng.gen_range(-scale..scale));
        }
    }
    t
}

/// Random symmetric tensor rescaled to unit Frobenius norm.
pub fn random_sym_unit(rng: &mut impl Rng, dim: usize) -> SymTensor {
    loop {
        let t = random_sym(rng, dim, 1.0);
        let n = t.norm();
        if n > 1e-8 {
            return t.scale(1.0 / n);
        }
    }
}

/// Random log-strain with bounded deviatoric and trace parts.
pub fn random_log_strain(
    rng: &mut impl Rng,
    dim: usize,
    dev_bound: f64,
    tr_bound: f64,
) -> SymTensor {
    let raw = random_sym(rng, dim, 1.0);
    let dev = crate::tensor::deviatoric(&raw);
    let dn = dev.norm();
    let dev_scaled = if dn > 1e-12 {
        dev.scale(rng.gen_range(0.0..dev_bound) / dn)
    } else {
        dev
    };
    let tr_target = rng.gen_range(-tr_bound..tr_bound);
    let mut out = dev_scaled;
    for i in 0..dim {
        out.set(i, i, out.get(i, i) + tr_target / dim as f64);
    }
    out
}

/// Random rotation via Gram-Schmidt on random columns.
pub fn random_rotation(rng: &mut impl Rng, dim: usize) -> Mat {
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

/// Deterministic low-discrepancy directions on the unit sphere: golden-angle
/// spiral in 3D, uniform angles in 2D.
pub fn sphere_directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    match dim {
        2 => (0..count)
            .map(|i| {
                let th = std::f64::consts::PI * (i as f64 + 0.5) / count as f64;
                vec![th.cos(), th.sin()]
            })
            .collect(),
        3 => {
            let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let th = golden * i as f64;
                    vec![r * th.cos(), r * th.sin(), z]
                })
                .collect()
        }
        _ => panic!("dimension must be 2 or 3"),
    }
}
