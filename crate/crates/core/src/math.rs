//! Numerically stable scalar kernels shared by the trainers.

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Logistic function evaluated without exponentiating a positive argument.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)`.
#[inline]
pub fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// `ln σ(z)`.
#[inline]
pub fn log_sigmoid(z: f64) -> f64 {
    -softplus(-z)
}

/// Log-probability of indicator `u` under a Bernoulli with logit `z`:
/// `u·ln σ(z) + (1−u)·ln(1−σ(z))`.
#[inline]
pub fn log_bernoulli(u: bool, z: f64) -> f64 {
    if u {
        log_sigmoid(z)
    } else {
        log_sigmoid(-z)
    }
}

/// `out = W·a` for a row-major `d×d` matrix.
#[inline]
pub fn mat_vec(w: &[f64], a: &[f64], out: &mut [f64]) {
    let d = a.len();
    for (i, o) in out.iter_mut().enumerate() {
        let row = &w[i * d..(i + 1) * d];
        let mut s = 0.0;
        for (wij, aj) in row.iter().zip(a) {
            s += wij * aj;
        }
        *o = s;
    }
}

/// `out = Wᵀ·a` for a row-major `d×d` matrix, accumulated in the same
/// column-sum order as [`mat_vec`] on the transpose.
#[inline]
pub fn mat_t_vec(w: &[f64], a: &[f64], out: &mut [f64]) {
    let d = a.len();
    for (j, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..d {
            s += w[i * d + j] * a[i];
        }
        *o = s;
    }
}
