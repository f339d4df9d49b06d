//! Cauchy kernels.
//!
//! On a slice `C_ω` the kernel is the Euclidean Cauchy kernel of
//! `R^{p+2}`, `E(x) = conj(x) / (σ_{p+1} |x|^{p+2})`. The global kernel
//! `𝓔_y(x)` glues slice kernels with the coefficients of the representation
//! formula, and `K_y(x)` divides by the `q - 1` sphere measure of `y`.

use core::f64::consts::PI;

// Unused when a dependency links std and its inherent float methods win.
#[allow(unused_imports)]
use num_traits::Float;

use crate::clifford::{slice_paravector, Direction, Multivector, SplitPoint};
use crate::error::{Error, Result};

/// `Γ(k/2)` for `k >= 1`, exact up to rounding.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1, "gamma_half needs k >= 1");
    let (mut g, mut x) = if k.is_multiple_of(2) { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while 2.0 * x < k as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface area `σ_m` of the unit sphere `S^m ⊂ R^{m+1}`.
pub fn sphere_area(m: usize) -> f64 {
    let k = m as u32 + 1;
    let pi_pow = PI.powi((k / 2) as i32) * if k % 2 == 1 { PI.sqrt() } else { 1.0 };
    2.0 * pi_pow / gamma_half(k)
}

/// Measure of the open hemisphere of `S^{q-1}` over which directions are
/// integrated, `σ_{q-1} / 2`.
pub fn hemisphere_measure(q: usize) -> f64 {
    sphere_area(q - 1) / 2.0
}

/// The coefficients `α = ½(1 - ηω)` and `β = ½(1 + ηω)` gluing the two slice
/// kernels, for a target direction `η` and a source direction `ω`.
#[derive(Clone, Debug)]
pub struct KernelCoefficients {
    pub alpha: Multivector,
    pub beta: Multivector,
}

impl KernelCoefficients {
    pub fn new(eta: &Direction, omega: &Direction) -> Self {
        let sig = eta.signature();
        let eo = eta.vector() * omega.vector();
        let one = Multivector::scalar(sig, 1.0);
        KernelCoefficients { alpha: (&one - &eo) * 0.5, beta: (&one + &eo) * 0.5 }
    }
}

/// `E(d)` for a difference `d` given in slice coordinates on the slice of `ω`.
/// No singularity check; see [`slice_cauchy_kernel`].
#[inline]
pub fn slice_kernel(d: &[f64], omega: &Direction) -> Multivector {
    let sig = omega.signature();
    let m = sig.slice_dim();
    let r2: f64 = d.iter().map(|c| c * c).sum();
    let scale = 1.0 / (sphere_area(m - 1) * r2.powi(m as i32 / 2) * if m % 2 == 1 { r2.sqrt() } else { 1.0 });
    slice_paravector(d, omega).conj() * scale
}

/// `E(d)`, rejecting `d = 0`.
pub fn slice_cauchy_kernel(d: &[f64], omega: &Direction) -> Result<Multivector> {
    if d.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    if d.iter().all(|&c| c == 0.0) {
        return Err(Error::Singular);
    }
    Ok(slice_kernel(d, omega))
}

/// Slice vector `v` with `(∂_k E)(d) = conj(v) / (σ_{p+1} |d|^{p+2})`:
/// `v = ê_k - m d_k d / |d|^2`.
pub fn kernel_gradient_vector(d: &[f64], k: usize, out: &mut [f64]) {
    let m = d.len();
    let r2: f64 = d.iter().map(|c| c * c).sum();
    for (i, o) in out.iter_mut().enumerate() {
        *o = -(m as f64) * d[k] * d[i] / r2;
    }
    out[k] += 1.0;
}

/// `(∂_k E)(d)`, the partial of `E` along slice axis `k` (`k = p + 1` is `ω`).
pub fn slice_kernel_gradient(d: &[f64], omega: &Direction, k: usize) -> Multivector {
    let m = d.len();
    let mut v = [0.0; 16];
    kernel_gradient_vector(d, k, &mut v[..m]);
    let r2: f64 = d.iter().map(|c| c * c).sum();
    let scale = 1.0 / (sphere_area(m - 1) * r2.powf(m as f64 / 2.0));
    slice_paravector(&v[..m], omega).conj() * scale
}

/// The slice coordinates of `a - b` when both points lie on the line spanned
/// by `ω` in the `x_q` factor.
fn slice_difference(a: &SplitPoint, b: &SplitPoint, omega: &Direction) -> Result<[f64; 16]> {
    let sig = omega.signature();
    if a.signature() != sig || b.signature() != sig {
        return Err(Error::SignatureMismatch);
    }
    let mut d = [0.0; 16];
    for (i, (x, y)) in a.xp().iter().zip(b.xp()).enumerate() {
        d[i] = x - y;
    }
    let p = sig.p();
    let dq: smallvec::SmallVec<[f64; 4]> = a.xq().iter().zip(b.xq()).map(|(x, y)| x - y).collect();
    let along: f64 = dq.iter().zip(omega.coords()).map(|(x, w)| x * w).sum();
    let off: f64 = dq.iter().zip(omega.coords()).map(|(x, w)| (x - along * w).powi(2)).sum::<f64>().sqrt();
    let scale = 1.0 + dq.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if off > 1e-12 * scale {
        return Err(Error::InvalidParameter("points do not share the slice of ω"));
    }
    d[p + 1] = along;
    Ok(d)
}

/// `E(y - x)` for two points on the slice of `ω`.
pub fn cauchy_kernel_e(y: &SplitPoint, x: &SplitPoint, omega: &Direction) -> Result<Multivector> {
    let d = slice_difference(y, x, omega)?;
    slice_cauchy_kernel(&d[..omega.signature().slice_dim()], omega)
}

/// `𝓔_y(x) = α E(y - x_ω) + β E(y - x_{-ω})` with source `y = y_p + ρ_y ω`
/// given by its slice coordinates `(y_p, ρ_y)` and direction `ω`.
///
/// `x_{±ω} = x_p ± r ω`. On the real axis (`r = 0`) any `η` gives the same
/// value; `ω` is used.
pub fn gps_kernel_slice(y: &[f64], omega: &Direction, x: &SplitPoint) -> Multivector {
    let m = y.len();
    let p = m - 2;
    let eta = x.direction().unwrap_or(omega);
    let c = KernelCoefficients::new(eta, omega);
    let mut d = [0.0; 16];
    for i in 0..=p {
        d[i] = y[i] - x.xp()[i];
    }
    d[p + 1] = y[p + 1] - x.r();
    let near = slice_kernel(&d[..m], omega);
    d[p + 1] = y[p + 1] + x.r();
    let far = slice_kernel(&d[..m], omega);
    &c.alpha * &near + &c.beta * &far
}

/// The global Cauchy kernel `𝓔_y(x)`. Needs `y_q ≠ 0` and `x` off `[y]`.
pub fn gps_cauchy_kernel(y: &SplitPoint, x: &SplitPoint) -> Result<Multivector> {
    if y.signature() != x.signature() {
        return Err(Error::SignatureMismatch);
    }
    let omega = y.direction()?;
    let sy = y.slice_coords();
    let dist2: f64 = sy
        .iter()
        .zip(x.xp().iter().chain(core::iter::once(&x.r())))
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    if dist2 == 0.0 {
        return Err(Error::Singular);
    }
    Ok(gps_kernel_slice(&sy, omega, x))
}

/// `K_y(x) = 𝓔_y(x) / (½ σ_{q-1} |y_q|^{q-1})`.
pub fn weighted_kernel_k(y: &SplitPoint, x: &SplitPoint) -> Result<Multivector> {
    let e = gps_cauchy_kernel(y, x)?;
    let q = y.signature().q();
    Ok(e / (hemisphere_measure(q) * y.r().powi(q as i32 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_half_integers() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(8), 6.0);
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_area(4) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }
}
