//! Closed-form stems used as test data, all with analytic partials.

use alloc::vec::Vec;

// Unused when a dependency links std and its inherent float methods win.
#[allow(unused_imports)]
use num_traits::Float;

use crate::clifford::{Coords, Direction, Multivector, Signature, SplitPoint};
use crate::domain::MirroredBallDomain;
use crate::error::{Error, Result};
use crate::kernels::{slice_kernel, slice_kernel_gradient};
use crate::stem::{SlicePair, StemFunction, StemJet};

fn zero_partials(sig: Signature) -> Vec<SlicePair> {
    (0..sig.slice_dim()).map(|_| SlicePair::zero(sig)).collect()
}

/// The constant `c` (monogenic).
#[derive(Clone, Debug)]
pub struct Constant(pub Multivector);

impl StemFunction for Constant {
    fn signature(&self) -> Signature {
        self.0.signature()
    }
    fn eval(&self, _s: &[f64]) -> SlicePair {
        SlicePair::new(self.0.clone(), Multivector::zero(self.signature()))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        Some(StemJet { value: self.eval(s), partials: zero_partials(self.signature()) })
    }
}

/// `(x_0 + x_q) c`, stem `(x_0 c, r c)` (monogenic).
#[derive(Clone, Debug)]
pub struct LinearMonogenic(pub Multivector);

impl StemFunction for LinearMonogenic {
    fn signature(&self) -> Signature {
        self.0.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        SlicePair::new(&self.0 * s[0], &self.0 * s[s.len() - 1])
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let sig = self.signature();
        let mut partials = zero_partials(sig);
        partials[0].a = self.0.clone();
        partials[sig.p() + 1].b = self.0.clone();
        Some(StemJet { value: self.eval(s), partials })
    }
}

/// `x_0^2` (not monogenic: `ϑ̄ f = 2 x_0`).
#[derive(Clone, Debug)]
pub struct X0Squared(pub Signature);

impl StemFunction for X0Squared {
    fn signature(&self) -> Signature {
        self.0
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        SlicePair::new(Multivector::scalar(self.0, s[0] * s[0]), Multivector::zero(self.0))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let mut partials = zero_partials(self.0);
        partials[0].a = Multivector::scalar(self.0, 2.0 * s[0]);
        Some(StemJet { value: self.eval(s), partials })
    }
}

/// `|x_q|^2` (not monogenic: `ϑ̄ f = 2 x_q`).
#[derive(Clone, Debug)]
pub struct RSquared(pub Signature);

impl StemFunction for RSquared {
    fn signature(&self) -> Signature {
        self.0
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        let r = s[s.len() - 1];
        SlicePair::new(Multivector::scalar(self.0, r * r), Multivector::zero(self.0))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let mut partials = zero_partials(self.0);
        partials[self.0.p() + 1].a = Multivector::scalar(self.0, 2.0 * s[s.len() - 1]);
        Some(StemJet { value: self.eval(s), partials })
    }
}

/// Stem `(x_0 x_1 a + r^2 b, r x_0 c)`, a non-monogenic quadratic with
/// Clifford-valued coefficients.
#[derive(Clone, Debug)]
pub struct Quadratic {
    pub a: Multivector,
    pub b: Multivector,
    pub c: Multivector,
}

impl StemFunction for Quadratic {
    fn signature(&self) -> Signature {
        self.a.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        let r = s[s.len() - 1];
        let mut f1 = &self.a * (s[0] * s[1]);
        f1.add_scaled(r * r, &self.b);
        SlicePair::new(f1, &self.c * (r * s[0]))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let sig = self.signature();
        let rk = sig.p() + 1;
        let r = s[rk];
        let mut partials = zero_partials(sig);
        partials[0].a = &self.a * s[1];
        partials[0].b = &self.c * r;
        partials[1].a = &self.a * s[0];
        partials[rk].a = &self.b * (2.0 * r);
        partials[rk].b = &self.c * s[0];
        Some(StemJet { value: self.eval(s), partials })
    }
}

/// The section `x ↦ 𝓔_{y*}(x)` of the global Cauchy kernel for a fixed
/// source `y* = y_p + ρ_y ω_y`, monogenic away from `[y*]`.
///
/// With `u±(x) = E(y* - x_p ∓ r ω_y)` the stem is
/// `((u+ + u-)/2, ω_y (u- - u+)/2)`.
#[derive(Clone, Debug)]
pub struct KernelSection {
    source: Coords,
    omega: Direction,
}

impl KernelSection {
    pub fn new(source: &SplitPoint) -> Result<Self> {
        let omega = source.direction()?.clone();
        Ok(KernelSection { source: source.slice_coords(), omega })
    }

    fn difference(&self, s: &[f64], sign: f64) -> [f64; 16] {
        let m = s.len();
        let mut d = [0.0; 16];
        for i in 0..m - 1 {
            d[i] = self.source[i] - s[i];
        }
        d[m - 1] = self.source[m - 1] - sign * s[m - 1];
        d
    }

    fn from_u(&self, plus: &Multivector, minus: &Multivector) -> SlicePair {
        let a = (plus + minus) * 0.5;
        let b = self.omega.vector() * &((minus - plus) * 0.5);
        SlicePair::new(a, b)
    }
}

impl StemFunction for KernelSection {
    fn signature(&self) -> Signature {
        self.omega.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        let m = s.len();
        let up = slice_kernel(&self.difference(s, 1.0)[..m], &self.omega);
        let um = slice_kernel(&self.difference(s, -1.0)[..m], &self.omega);
        self.from_u(&up, &um)
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let m = s.len();
        let dp = self.difference(s, 1.0);
        let dm = self.difference(s, -1.0);
        let partials = (0..m)
            .map(|k| {
                // d± depends on x_k with slope -1, and on r with slope ∓1.
                let gp = slice_kernel_gradient(&dp[..m], &self.omega, k) * -1.0;
                let gm = slice_kernel_gradient(&dm[..m], &self.omega, k) * if k == m - 1 { 1.0 } else { -1.0 };
                self.from_u(&gp, &gm)
            })
            .collect();
        Some(StemJet { value: self.eval(s), partials })
    }
}

/// `b^k · F` with the bump `b = (ρ^2 - |s_p - c_p|^2 - (|r| - r0)^2)_+`,
/// vanishing to order `k` on the domain boundary.
#[derive(Clone, Debug)]
pub struct Bumped<S> {
    inner: S,
    center: Coords,
    rho: f64,
    power: i32,
}

impl<S: StemFunction> Bumped<S> {
    pub fn new(inner: S, domain: &MirroredBallDomain, power: u32) -> Result<Self> {
        if power < 2 {
            return Err(Error::InvalidParameter("bump power must be at least 2"));
        }
        Ok(Bumped { inner, center: domain.slice_center(), rho: domain.rho(), power: power as i32 })
    }

    fn base(&self, s: &[f64]) -> f64 {
        let m = s.len();
        let mut d2 = (s[m - 1].abs() - self.center[m - 1]).powi(2);
        for i in 0..m - 1 {
            d2 += (s[i] - self.center[i]).powi(2);
        }
        (self.rho * self.rho - d2).max(0.0)
    }
}

impl<S: StemFunction> StemFunction for Bumped<S> {
    fn signature(&self) -> Signature {
        self.inner.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        self.inner.eval(s).scaled(self.base(s).powi(self.power))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let m = s.len();
        let inner = self.inner.jet(s)?;
        let base = self.base(s);
        let b = base.powi(self.power);
        let db = if base > 0.0 { self.power as f64 * base.powi(self.power - 1) } else { 0.0 };
        let partials = (0..m)
            .map(|k| {
                let grad = if k == m - 1 {
                    -2.0 * (s[k].abs() - self.center[k]) * s[k].signum()
                } else {
                    -2.0 * (s[k] - self.center[k])
                };
                let mut d = inner.partials[k].scaled(b);
                d.add_scaled(db * grad, &inner.value);
                d
            })
            .collect();
        Some(StemJet { value: inner.value.scaled(b), partials })
    }
}

/// `|r|^t · F`, a radial weight applied to both stem components.
#[derive(Clone, Debug)]
pub struct RadialWeight<S> {
    pub inner: S,
    pub exponent: f64,
}

impl<S: StemFunction> StemFunction for RadialWeight<S> {
    fn signature(&self) -> Signature {
        self.inner.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        self.inner.eval(s).scaled(s[s.len() - 1].abs().powf(self.exponent))
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        let m = s.len();
        let inner = self.inner.jet(s)?;
        let r = s[m - 1];
        let w = r.abs().powf(self.exponent);
        let dw = self.exponent * r.abs().powf(self.exponent - 1.0) * r.signum();
        let mut partials: Vec<SlicePair> = inner.partials.iter().map(|d| d.scaled(w)).collect();
        partials[m - 1].add_scaled(dw, &inner.value);
        Some(StemJet { value: inner.value.scaled(w), partials })
    }
}
