//! Stem functions, slice functions and the differential operators acting on them.
//!
//! A stem is a pair `(F1, F2)` of `R_{p+q}`-valued functions of the slice
//! coordinates `(x_0, .., x_p, r)` with `F1` even and `F2` odd in `r`. It
//! induces the slice function `f(x_p + r ω) = F1 + ω F2`.
//!
//! Functions are evaluated through slice coordinates `s = (x_0, .., x_p, t)`
//! and a direction `ω`, meaning the point `x_p + t ω`; `t` may be negative.

use alloc::sync::Arc;
use alloc::vec::Vec;


use crate::clifford::{Coords, Direction, Multivector, Signature, SplitPoint};
use crate::error::{Error, Result};

/// The value `a + ω b` with the direction `ω` left symbolic.
///
/// Integrals over one half-plane of a slice function are pairs: the
/// direction only enters at the end, through [`SlicePair::at`].
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePair {
    pub a: Multivector,
    pub b: Multivector,
}

impl SlicePair {
    pub fn new(a: Multivector, b: Multivector) -> Self {
        SlicePair { a, b }
    }

    pub fn zero(sig: Signature) -> Self {
        SlicePair { a: Multivector::zero(sig), b: Multivector::zero(sig) }
    }

    /// `a + ω b`.
    pub fn at(&self, omega: &Direction) -> Multivector {
        let mut out = self.a.clone();
        out.add_product(1.0, omega.vector(), &self.b);
        out
    }

    pub fn add_scaled(&mut self, s: f64, other: &SlicePair) {
        self.a.add_scaled(s, &other.a);
        self.b.add_scaled(s, &other.b);
    }

    pub fn scaled(&self, s: f64) -> SlicePair {
        SlicePair { a: &self.a * s, b: &self.b * s }
    }

    /// Left product with the slice paravector `v_0 + Σ v_i e_i + v_r ω`.
    pub fn left_mul(&self, v: &[f64]) -> SlicePair {
        let sig = self.a.signature();
        let vr = v[v.len() - 1];
        let (pp, pm) = p_parts(sig, v);
        let mut a = &pp * &self.a;
        a.add_scaled(-vr, &self.b);
        let mut b = &pm * &self.b;
        b.add_scaled(vr, &self.a);
        SlicePair { a, b }
    }

    /// Left product with the conjugate of the slice paravector `v`.
    pub fn left_mul_conj(&self, v: &[f64]) -> SlicePair {
        let sig = self.a.signature();
        let vr = v[v.len() - 1];
        let (pp, pm) = p_parts(sig, v);
        let mut a = &pm * &self.a;
        a.add_scaled(vr, &self.b);
        let mut b = &pp * &self.b;
        b.add_scaled(-vr, &self.a);
        SlicePair { a, b }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.max_abs().max(self.b.max_abs())
    }
}

/// `v_0 + Σ v_i e_i` and `v_0 - Σ v_i e_i` for the p-part of a slice vector.
fn p_parts(sig: Signature, v: &[f64]) -> (Multivector, Multivector) {
    let mut pp = Multivector::scalar(sig, v[0]);
    let mut pm = pp.clone();
    for i in 1..=sig.p() {
        let e = Multivector::generator(sig, i).expect("generator in range");
        pp.add_scaled(v[i], &e);
        pm.add_scaled(-v[i], &e);
    }
    (pp, pm)
}

/// A function on `R^{p+q+1}`, evaluated at `x_p + t ω`.
pub trait Field: Send + Sync {
    fn signature(&self) -> Signature;

    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector;

    fn eval(&self, x: &SplitPoint) -> Multivector {
        let s = x.slice_coords();
        match x.direction() {
            Ok(w) => self.eval_at(&s, w),
            Err(_) => {
                let axis = Direction::axis(self.signature(), 0).expect("q >= 1");
                self.eval_at(&s, &axis)
            }
        }
    }
}

/// A [`Field`] that is a slice function, so its stem is recoverable.
pub trait SliceFunction: Field {
    /// `(F1, F2)` at slice coordinates `s`. The default recovers the stem
    /// from the values at `x_p ± t e_{p+1}`.
    fn stem_at(&self, s: &[f64]) -> SlicePair {
        let axis = Direction::axis(self.signature(), 0).expect("q >= 1");
        let plus = self.eval_at(s, &axis);
        let minus = self.eval_at(s, &axis.neg());
        let a = (&plus + &minus) * 0.5;
        let mut b = Multivector::zero(self.signature());
        b.add_product(-0.5, axis.vector(), &(&plus - &minus));
        SlicePair { a, b }
    }
}

/// Stem value with its first partials along every slice axis
/// (`partials[k]`, `k = 0..=p` for `x_k`, `k = p + 1` for `r`).
#[derive(Clone, Debug)]
pub struct StemJet {
    pub value: SlicePair,
    pub partials: Vec<SlicePair>,
}

/// A stem `(F1, F2)`, even and odd in `r` respectively.
pub trait StemFunction: Send + Sync {
    fn signature(&self) -> Signature;

    fn eval(&self, s: &[f64]) -> SlicePair;

    /// Analytic first partials, when known.
    fn jet(&self, _s: &[f64]) -> Option<StemJet> {
        None
    }
}

impl<S: StemFunction + ?Sized> StemFunction for Arc<S> {
    fn signature(&self) -> Signature {
        (**self).signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        (**self).eval(s)
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        (**self).jet(s)
    }
}

impl<S: StemFunction + ?Sized> StemFunction for &S {
    fn signature(&self) -> Signature {
        (**self).signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        (**self).eval(s)
    }
    fn jet(&self, s: &[f64]) -> Option<StemJet> {
        (**self).jet(s)
    }
}

/// Stem partials by central differences of step `h`.
pub fn stem_jet_fd<S: StemFunction + ?Sized>(stem: &S, s: &[f64], h: f64) -> StemJet {
    let mut pt: Coords = s.iter().copied().collect();
    let partials = (0..s.len())
        .map(|k| {
            pt[k] = s[k] + h;
            let up = stem.eval(&pt);
            pt[k] = s[k] - h;
            let down = stem.eval(&pt);
            pt[k] = s[k];
            let mut d = up;
            d.add_scaled(-1.0, &down);
            d.scaled(0.5 / h)
        })
        .collect();
    StemJet { value: stem.eval(s), partials }
}

/// The slice function induced by a stem.
#[derive(Clone, Debug)]
pub struct Induced<S>(pub S);

impl<S: StemFunction> Field for Induced<S> {
    fn signature(&self) -> Signature {
        self.0.signature()
    }
    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector {
        self.0.eval(s).at(omega)
    }
}

impl<S: StemFunction> SliceFunction for Induced<S> {
    fn stem_at(&self, s: &[f64]) -> SlicePair {
        self.0.eval(s)
    }
}

/// Largest parity defect `|F1(s_p,-r) - F1| + |F2(s_p,-r) + F2|` at `s`.
pub fn stem_parity_defect<S: StemFunction + ?Sized>(stem: &S, s: &[f64]) -> f64 {
    let v = stem.eval(s);
    let mut m: Coords = s.iter().copied().collect();
    let last = m.len() - 1;
    m[last] = -m[last];
    let w = stem.eval(&m);
    (&v.a - &w.a).max_abs().max((&v.b + &w.b).max_abs())
}

/// Induces the slice function of `stem` after checking the parity of the stem
/// at a few probe points. Probes where the stem is not finite are skipped.
pub fn induce<S: StemFunction>(stem: S) -> Result<Induced<S>> {
    let p = stem.signature().p();
    for probe in [[0.3, -0.2, 0.7], [1.1, 0.4, 1.9], [-0.6, 0.9, 2.4]] {
        let mut s: Coords = (0..=p).map(|i| probe[i % 2] * (1.0 + 0.1 * i as f64)).collect();
        s.push(probe[2]);
        let v = stem.eval(&s);
        if !(v.a.is_finite() && v.b.is_finite()) {
            continue;
        }
        let scale = 1.0 + v.max_abs();
        if stem_parity_defect(&stem, &s) > 1e-12 * scale {
            return Err(Error::InvalidParameter("stem is not even/odd in r"));
        }
    }
    Ok(Induced(stem))
}

/// A slice function given directly by a closure over `(s, ω)`.
pub struct RawSlice<F> {
    sig: Signature,
    f: F,
}

impl<F> RawSlice<F>
where
    F: Fn(&[f64], &Direction) -> Multivector + Send + Sync,
{
    pub fn new(sig: Signature, f: F) -> Self {
        RawSlice { sig, f }
    }
}

impl<F> Field for RawSlice<F>
where
    F: Fn(&[f64], &Direction) -> Multivector + Send + Sync,
{
    fn signature(&self) -> Signature {
        self.sig
    }
    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector {
        (self.f)(s, omega)
    }
}

impl<F> SliceFunction for RawSlice<F> where F: Fn(&[f64], &Direction) -> Multivector + Send + Sync {}

/// A general field given by a closure over `(s, ω)`.
pub struct FnField<F> {
    sig: Signature,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&[f64], &Direction) -> Multivector + Send + Sync,
{
    pub fn new(sig: Signature, f: F) -> Self {
        FnField { sig, f }
    }
}

impl<F> Field for FnField<F>
where
    F: Fn(&[f64], &Direction) -> Multivector + Send + Sync,
{
    fn signature(&self) -> Signature {
        self.sig
    }
    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector {
        (self.f)(s, omega)
    }
}

/// A general field given by a closure over split points.
pub struct PointField<F> {
    sig: Signature,
    f: F,
}

impl<F> PointField<F>
where
    F: Fn(&SplitPoint) -> Multivector + Send + Sync,
{
    pub fn new(sig: Signature, f: F) -> Self {
        PointField { sig, f }
    }
}

impl<F> Field for PointField<F>
where
    F: Fn(&SplitPoint) -> Multivector + Send + Sync,
{
    fn signature(&self) -> Signature {
        self.sig
    }
    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector {
        let p = self.sig.p();
        let x = SplitPoint::on_slice(&s[..=p], s[p + 1], omega).expect("finite slice point");
        (self.f)(&x)
    }
    fn eval(&self, x: &SplitPoint) -> Multivector {
        (self.f)(x)
    }
}

/// The stem of `ϑ̄ f`: `(D_p F1 - ∂_r F2, conj(D_p) F2 + ∂_r F1)`.
///
/// `D_p = Σ_{i<=p} e_i ∂_{x_i}` with `e_0 = 1`. Analytic partials are used
/// when the stem provides them, central differences of step `h` otherwise.
pub struct DiracStem<S> {
    stem: S,
    h: f64,
}

impl<S: StemFunction> DiracStem<S> {
    pub fn new(stem: S, h: f64) -> Self {
        DiracStem { stem, h }
    }
}

impl<S: StemFunction> StemFunction for DiracStem<S> {
    fn signature(&self) -> Signature {
        self.stem.signature()
    }
    fn eval(&self, s: &[f64]) -> SlicePair {
        let jet = self.stem.jet(s).unwrap_or_else(|| stem_jet_fd(&self.stem, s, self.h));
        dirac_from_jet(self.signature(), &jet)
    }
}

fn dirac_from_jet(sig: Signature, jet: &StemJet) -> SlicePair {
    let p = sig.p();
    let dr = &jet.partials[p + 1];
    let mut a = jet.partials[0].a.clone() - dr.b.clone();
    let mut b = jet.partials[0].b.clone() + dr.a.clone();
    for i in 1..=p {
        let e = Multivector::generator(sig, i).expect("generator in range");
        a.add_product(1.0, &e, &jet.partials[i].a);
        b.add_product(-1.0, &e, &jet.partials[i].b);
    }
    SlicePair { a, b }
}

/// Cauchy–Riemann residual of a stem at `s`: the stem of `ϑ̄ f`, which
/// vanishes exactly when the induced function is monogenic there.
pub fn cr_residual<S: StemFunction>(stem: &S, s: &[f64], h: f64) -> SlicePair {
    let jet = stem.jet(s).unwrap_or_else(|| stem_jet_fd(stem, s, h));
    dirac_from_jet(stem.signature(), &jet)
}

fn check_step(x: &SplitPoint, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter("finite-difference step must be positive"));
    }
    if x.r() == 0.0 {
        return Err(Error::OnRealAxis);
    }
    if x.r() <= 2.0 * h {
        return Err(Error::InvalidParameter("point closer than two steps to the real axis"));
    }
    Ok(())
}

/// `ϑ̄ g(x) = D_{x_p} g + (x_q / |x_q|^2) E_{x_q} g` by central differences
/// in every coordinate, for an arbitrary fallible map `g`.
pub fn vartheta_of<G>(g: G, x: &SplitPoint, h: f64) -> Result<Multivector>
where
    G: Fn(&SplitPoint) -> Result<Multivector>,
{
    check_step(x, h)?;
    let sig = x.signature();
    let p = sig.p();
    let mut out = Multivector::zero(sig);
    let mut euler = Multivector::zero(sig);
    for k in 0..=sig.n() {
        let d = (g(&x.shifted(k, h)?)? - g(&x.shifted(k, -h)?)?) * (0.5 / h);
        if k <= p {
            if k == 0 {
                out += &d;
            } else {
                out.add_product(1.0, &Multivector::generator(sig, k)?, &d);
            }
        } else {
            euler.add_scaled(x.xq()[k - p - 1], &d);
        }
    }
    let eta = x.direction()?;
    out.add_product(1.0 / x.r(), eta.vector(), &euler);
    Ok(out)
}

/// `ϑ̄ f(x)` by central differences of step `h`. Requires `|x_q| > 2h`.
pub fn apply_vartheta(f: &dyn Field, x: &SplitPoint, h: f64) -> Result<Multivector> {
    vartheta_of(|y| Ok(f.eval(y)), x, h)
}

/// The slice Dirac operator `D_ω = D_{x_p} + ω ∂_r` on the slice of `x`,
/// by central differences of step `h`. Requires `|x_q| > 2h`.
pub fn apply_slice_dirac(f: &dyn Field, x: &SplitPoint, h: f64) -> Result<Multivector> {
    check_step(x, h)?;
    let sig = x.signature();
    let omega = x.direction()?;
    let mut s = x.slice_coords();
    let mut out = Multivector::zero(sig);
    for k in 0..s.len() {
        let s0 = s[k];
        s[k] = s0 + h;
        let up = f.eval_at(&s, omega);
        s[k] = s0 - h;
        let down = f.eval_at(&s, omega);
        s[k] = s0;
        let d = (up - down) * (0.5 / h);
        match k {
            0 => out += &d,
            k if k <= sig.p() => out.add_product(1.0, &Multivector::generator(sig, k)?, &d),
            _ => out.add_product(1.0, omega.vector(), &d),
        }
    }
    Ok(out)
}

/// Two-direction representation formula:
/// `f(x) = (η - ω2)(ω1 - ω2)^{-1} f(x_p + r ω1) - (η - ω1)(ω1 - ω2)^{-1} f(x_p + r ω2)`.
pub fn representation_eval(
    f: &dyn Field,
    x: &SplitPoint,
    omega1: &Direction,
    omega2: &Direction,
) -> Result<Multivector> {
    let diff = omega1.vector() - omega2.vector();
    let inv = diff.paravector_inverse()?;
    let eta = match x.direction() {
        Ok(e) => e.clone(),
        Err(_) => omega1.clone(),
    };
    let s = x.slice_coords();
    let a = &(eta.vector() - omega2.vector()) * &inv;
    let b = &(eta.vector() - omega1.vector()) * &inv;
    Ok(&a * &f.eval_at(&s, omega1) - &b * &f.eval_at(&s, omega2))
}

/// `|f(x) - ½(1 - ωη) f(x_p + rη) - ½(1 + ωη) f(x_p - rη)|`, where `ω` is the
/// direction of `x`.
pub fn representation_residual(f: &dyn Field, x: &SplitPoint, eta: &Direction) -> Result<f64> {
    let sig = x.signature();
    let s = x.slice_coords();
    let omega = match x.direction() {
        Ok(w) => w.clone(),
        Err(_) => eta.clone(),
    };
    let we = omega.vector() * eta.vector();
    let one = Multivector::scalar(sig, 1.0);
    let a = (&one - &we) * 0.5;
    let b = (&one + &we) * 0.5;
    let rhs = &a * &f.eval_at(&s, eta) + &b * &f.eval_at(&s, &eta.neg());
    Ok(f.eval(x).distance(&rhs))
}
