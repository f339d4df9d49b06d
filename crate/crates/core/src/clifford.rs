//! The real Clifford algebra `R_{p+q}` and split points of `R^{p+q+1}`.
//!
//! Generators satisfy `e_i e_j + e_j e_i = -2 δ_ij`. A multivector is a dense
//! array of `2^n` coefficients indexed by blade bitmask: bit `k - 1` set means
//! `e_k` is a factor, factors kept in increasing order. So index `0b101` is
//! `e_1 e_3` and index `0` is the scalar.
//!
//! Generators `e_1..e_p` span the "p-part" and `e_{p+1}..e_{p+q}` the
//! "q-part". Paravectors `x_0 + Σ x_k e_k` are identified with `R^{n+1}`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

// Unused when a dependency links std and its inherent float methods win.
#[allow(unused_imports)]
use num_traits::Float;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported `n = p + q`.
pub const MAX_GENERATORS: usize = 12;

pub(crate) type Coords = SmallVec<[f64; 4]>;
type Coeffs = SmallVec<[f64; 16]>;

/// Sign table for blade pairs below `2^8`; larger blades are computed on the fly.
static SIGN_TABLE: [[i8; 256]; 256] = build_sign_table();

const fn reorder_swaps(a: usize, b: usize) -> u32 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps
}

const fn blade_sign_slow(a: usize, b: usize) -> i8 {
    // Each repeated generator contributes e_k^2 = -1.
    if (reorder_swaps(a, b) + (a & b).count_ones()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

const fn build_sign_table() -> [[i8; 256]; 256] {
    let mut table = [[0i8; 256]; 256];
    let mut a = 0;
    while a < 256 {
        let mut b = 0;
        while b < 256 {
            table[a][b] = blade_sign_slow(a, b);
            b += 1;
        }
        a += 1;
    }
    table
}

/// Sign of the product of canonical blades `a` and `b`, so that
/// `e_a e_b = blade_sign(a, b) · e_{a ^ b}`.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> f64 {
    if (a | b) < 256 {
        SIGN_TABLE[a][b] as f64
    } else {
        blade_sign_slow(a, b) as f64
    }
}

/// Grade of a blade.
#[inline]
pub fn grade(blade: usize) -> u32 {
    blade.count_ones()
}

#[inline]
fn conj_sign(blade: usize) -> f64 {
    match grade(blade) % 4 {
        0 | 3 => 1.0,
        _ => -1.0,
    }
}

#[inline]
fn rev_sign(blade: usize) -> f64 {
    match grade(blade) % 4 {
        0 | 1 => 1.0,
        _ => -1.0,
    }
}

/// The pair `(p, q)` fixing the algebra `R_{p+q}` and the split of `R^{p+q+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 1 || q < 2 || p + q > MAX_GENERATORS {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub const fn p(self) -> usize {
        self.p
    }

    pub const fn q(self) -> usize {
        self.q
    }

    /// Number of generators.
    pub const fn n(self) -> usize {
        self.p + self.q
    }

    /// Number of blades, `2^n`.
    pub const fn dim(self) -> usize {
        1 << (self.p + self.q)
    }

    /// Real dimension of a slice half-space, `p + 2`.
    pub const fn slice_dim(self) -> usize {
        self.p + 2
    }

    /// Blade mask of the generator `e_k`, `1 <= k <= n`.
    pub const fn generator_mask(self, k: usize) -> usize {
        1 << (k - 1)
    }
}

/// An element of `R_{p+q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Coeffs,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: SmallVec::from_elem(0.0, sig.dim()) }
    }

    pub fn scalar(sig: Signature, s: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = s;
        m
    }

    /// The blade `e_A` for a bitmask `A`.
    pub fn blade(sig: Signature, mask: usize) -> Result<Self> {
        if mask >= sig.dim() {
            return Err(Error::InvalidParameter("blade mask exceeds algebra dimension"));
        }
        let mut m = Self::zero(sig);
        m.coeffs[mask] = 1.0;
        Ok(m)
    }

    /// The generator `e_k`, `1 <= k <= n`.
    pub fn generator(sig: Signature, k: usize) -> Result<Self> {
        if k == 0 || k > sig.n() {
            return Err(Error::InvalidParameter("generator index out of range"));
        }
        Self::blade(sig, sig.generator_mask(k))
    }

    pub fn from_coeffs(sig: Signature, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), found: coeffs.len() });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Multivector { sig, coeffs: SmallVec::from_slice(coeffs) })
    }

    /// The paravector `x_0 + Σ_{k=1}^{n} x_k e_k`.
    pub fn paravector(sig: Signature, x: &[f64]) -> Result<Self> {
        if x.len() != sig.n() + 1 {
            return Err(Error::DimensionMismatch { expected: sig.n() + 1, found: x.len() });
        }
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut m = Self::zero(sig);
        m.coeffs[0] = x[0];
        for (k, &v) in x.iter().enumerate().skip(1) {
            m.coeffs[sig.generator_mask(k)] = v;
        }
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs.get(mask).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut m = self.clone();
        for (i, c) in m.coeffs.iter_mut().enumerate() {
            if grade(i) != k {
                *c = 0.0;
            }
        }
        m
    }

    pub fn is_paravector(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &c)| grade(i) <= 1 || c == 0.0)
    }

    /// Paravector coordinates `(x_0, .., x_n)`.
    pub fn paravector_coords(&self) -> Result<SmallVec<[f64; 8]>> {
        if !self.is_paravector() {
            return Err(Error::NotParavector);
        }
        let n = self.sig.n();
        let mut out = SmallVec::with_capacity(n + 1);
        out.push(self.coeffs[0]);
        for k in 1..=n {
            out.push(self.coeffs[self.sig.generator_mask(k)]);
        }
        Ok(out)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Clifford conjugation: the anti-automorphism with `conj(e_k) = -e_k`.
    pub fn conj(&self) -> Self {
        self.map_blades(conj_sign)
    }

    /// Reversion: the anti-automorphism fixing every generator.
    pub fn rev(&self) -> Self {
        self.map_blades(rev_sign)
    }

    /// Grade involution.
    pub fn involute(&self) -> Self {
        self.map_blades(|b| if grade(b).is_multiple_of(2) { 1.0 } else { -1.0 })
    }

    fn map_blades(&self, sign: impl Fn(usize) -> f64) -> Self {
        let mut m = self.clone();
        for (i, c) in m.coeffs.iter_mut().enumerate() {
            *c *= sign(i);
        }
        m
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Inverse of a nonzero paravector, `conj(x) / |x|^2`.
    pub fn paravector_inverse(&self) -> Result<Self> {
        if !self.is_paravector() {
            return Err(Error::NotParavector);
        }
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() / n2)
    }

    /// Geometric product, rejecting operands from different algebras.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.sig);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                out.coeffs[i ^ j] += blade_sign(i, j) * a * b;
            }
        }
        out
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, s: f64, other: &Self) {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    /// `self += s · a · b`.
    pub fn add_product(&mut self, s: f64, a: &Self, b: &Self) {
        assert!(self.sig == a.sig && a.sig == b.sig, "signature mismatch");
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0.0 {
                    continue;
                }
                self.coeffs[i ^ j] += s * blade_sign(i, j) * x * y;
            }
        }
    }

    /// Norm of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += &rhs;
        self
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        self.add_scaled(1.0, rhs);
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= &rhs;
        self
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        self.add_scaled(-1.0, rhs);
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.clone() * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        for c in self.coeffs.iter_mut() {
            *c *= s;
        }
        self
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.clone() * s
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        self * (1.0 / s)
    }
}

/// Geometric product. Panics on a signature mismatch; use
/// [`Multivector::geometric_product`] for a fallible version.
impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

/// A unit vector `ω` of `R^q`, together with its image `Σ ω_j e_{p+1+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    coords: Coords,
    vector: Multivector,
}

impl Direction {
    /// Normalizes `coords`; errors on a zero or non-finite vector.
    pub fn new(sig: Signature, coords: &[f64]) -> Result<Self> {
        if coords.len() != sig.q() {
            return Err(Error::DimensionMismatch { expected: sig.q(), found: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let len = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        let coords: Coords = coords.iter().map(|c| c / len).collect();
        let mut vector = Multivector::zero(sig);
        for (j, &w) in coords.iter().enumerate() {
            vector.coeffs[sig.generator_mask(sig.p() + 1 + j)] = w;
        }
        Ok(Direction { coords, vector })
    }

    /// The coordinate axis `e_{p+1+j}`.
    pub fn axis(sig: Signature, j: usize) -> Result<Self> {
        let mut c: Coords = SmallVec::from_elem(0.0, sig.q());
        *c.get_mut(j).ok_or(Error::InvalidParameter("axis index out of range"))? = 1.0;
        Self::new(sig, &c)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `ω` as a grade-one multivector.
    pub fn vector(&self) -> &Multivector {
        &self.vector
    }

    pub fn signature(&self) -> Signature {
        self.vector.sig
    }

    pub fn neg(&self) -> Self {
        Direction {
            coords: self.coords.iter().map(|c| -c).collect(),
            vector: -&self.vector,
        }
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

/// A point `x = x_p + x_q` of `R^{p+q+1}` with its polar data `x_q = r·ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPoint {
    sig: Signature,
    xp: Coords,
    xq: Coords,
    r: f64,
    omega: Option<Direction>,
}

impl SplitPoint {
    /// `xp = (x_0, .., x_p)` and `xq = (x_{p+1}, .., x_{p+q})`.
    pub fn new(sig: Signature, xp: &[f64], xq: &[f64]) -> Result<Self> {
        if xp.len() != sig.p() + 1 {
            return Err(Error::DimensionMismatch { expected: sig.p() + 1, found: xp.len() });
        }
        if xq.len() != sig.q() {
            return Err(Error::DimensionMismatch { expected: sig.q(), found: xq.len() });
        }
        if xp.iter().chain(xq).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let r = xq.iter().map(|c| c * c).sum::<f64>().sqrt();
        let omega = if r > 0.0 { Some(Direction::new(sig, xq)?) } else { None };
        Ok(SplitPoint { sig, xp: SmallVec::from_slice(xp), xq: SmallVec::from_slice(xq), r, omega })
    }

    /// Point from its full coordinates `(x_0, .., x_n)`.
    pub fn from_coords(sig: Signature, x: &[f64]) -> Result<Self> {
        if x.len() != sig.n() + 1 {
            return Err(Error::DimensionMismatch { expected: sig.n() + 1, found: x.len() });
        }
        Self::new(sig, &x[..=sig.p()], &x[sig.p() + 1..])
    }

    /// The point `x_p + t·ω`. A negative `t` lands on the slice of `-ω`.
    pub fn on_slice(xp: &[f64], t: f64, omega: &Direction) -> Result<Self> {
        let xq: Coords = omega.coords().iter().map(|w| t * w).collect();
        Self::new(omega.signature(), xp, &xq)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn xp(&self) -> &[f64] {
        &self.xp
    }

    pub fn xq(&self) -> &[f64] {
        &self.xq
    }

    /// `|x_q|`.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// `x_q / |x_q|`, undefined on the real axis `x_q = 0`.
    pub fn direction(&self) -> Result<&Direction> {
        self.omega.as_ref().ok_or(Error::OnRealAxis)
    }

    /// Slice coordinates `(x_0, .., x_p, r)`.
    pub fn slice_coords(&self) -> Coords {
        let mut c = self.xp.clone();
        c.push(self.r);
        c
    }

    /// Full coordinates `(x_0, .., x_n)`.
    pub fn coords(&self) -> SmallVec<[f64; 8]> {
        self.xp.iter().chain(&self.xq).copied().collect()
    }

    /// The paravector `x_0 + Σ x_k e_k`.
    pub fn embed(&self) -> Multivector {
        let mut m = Multivector::zero(self.sig);
        for (k, &v) in self.xp.iter().chain(&self.xq).enumerate() {
            m.coeffs[if k == 0 { 0 } else { self.sig.generator_mask(k) }] = v;
        }
        m
    }

    /// A copy with coordinate `k` (of `x_0..x_n`) shifted by `h`.
    pub fn shifted(&self, k: usize, h: f64) -> Result<Self> {
        let mut x = self.coords();
        x[k] += h;
        Self::from_coords(self.sig, &x)
    }
}

/// Embeds a split point as a paravector of the given algebra.
pub fn embed_point(x: &SplitPoint, sig: Signature) -> Result<Multivector> {
    if x.sig != sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(x.embed())
}

/// The paravector `Σ_{i<=p} v_i e_i + v_r ω` for slice coordinates
/// `v = (v_0, .., v_p, v_r)`.
pub(crate) fn slice_paravector(v: &[f64], omega: &Direction) -> Multivector {
    let sig = omega.signature();
    let p = sig.p();
    let mut m = omega.vector() * v[p + 1];
    m.coeffs[0] = v[0];
    for i in 1..=p {
        m.coeffs[sig.generator_mask(i)] = v[i];
    }
    m
}

/// `conj(e_i)` for a slice axis `i` in `0..=p+1`, where axis `p + 1` is `ω`.
pub(crate) fn slice_axis_conj(i: usize, omega: &Direction) -> Multivector {
    let sig = omega.signature();
    if i == 0 {
        Multivector::scalar(sig, 1.0)
    } else if i <= sig.p() {
        let mut m = Multivector::zero(sig);
        m.coeffs[sig.generator_mask(i)] = -1.0;
        m
    } else {
        -omega.vector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn table_matches_scratch_computation() {
        for a in 0..256 {
            for b in 0..256 {
                assert_eq!(SIGN_TABLE[a][b], blade_sign_slow(a, b));
            }
        }
    }

    #[test]
    fn known_products() {
        let s = sig(1, 2);
        let e = |k| Multivector::generator(s, k).unwrap();
        let e12 = &e(1) * &e(2);
        let e23 = &e(2) * &e(3);
        let e13 = &e(1) * &e(3);
        assert_eq!(&e12 * &e23, -&e13);
        assert_eq!(&e(1) * &e(1), Multivector::scalar(s, -1.0));
        assert_eq!(&e12 * &e12, Multivector::scalar(s, -1.0));
        let e123 = &e12 * &e(3);
        assert_eq!(&e123 * &e123, Multivector::scalar(s, 1.0));
    }

    #[test]
    fn involutions_on_blades() {
        let s = sig(1, 2);
        let e12 = Multivector::blade(s, 0b011).unwrap();
        assert_eq!(e12.conj(), -&e12);
        assert_eq!(e12.rev(), -&e12);
        let e1 = Multivector::blade(s, 0b001).unwrap();
        assert_eq!(e1.conj(), -&e1);
        assert_eq!(e1.rev(), e1);
        let e123 = Multivector::blade(s, 0b111).unwrap();
        assert_eq!(e123.conj(), e123);
        assert_eq!(e123.rev(), -&e123);
    }

    #[test]
    fn paravector_inverse_of_vector() {
        let s = sig(1, 2);
        let x = Multivector::paravector(s, &[0.0, 0.0, 3.0, 4.0]).unwrap();
        let inv = x.paravector_inverse().unwrap();
        let expected = Multivector::paravector(s, &[0.0, 0.0, -0.12, -0.16]).unwrap();
        assert!(inv.distance(&expected) < 1e-15);
    }

    #[test]
    fn inverse_errors() {
        let s = sig(1, 2);
        assert_eq!(Multivector::zero(s).paravector_inverse(), Err(Error::ZeroDivisor));
        let b = Multivector::blade(s, 0b011).unwrap();
        assert_eq!(b.paravector_inverse(), Err(Error::NotParavector));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Multivector::scalar(sig(1, 2), 1.0);
        let b = Multivector::scalar(sig(2, 2), 1.0);
        assert_eq!(a.geometric_product(&b), Err(Error::SignatureMismatch));
    }

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(0, 2).is_err());
        assert!(Signature::new(1, 1).is_err());
        assert!(Signature::new(6, 7).is_err());
        assert!(Signature::new(6, 6).is_ok());
    }

    #[test]
    fn split_point_polar_data() {
        let s = sig(1, 2);
        let x = SplitPoint::new(s, &[1.0, 2.0], &[0.0, 3.0]).unwrap();
        assert_eq!(x.r(), 3.0);
        assert_eq!(x.direction().unwrap().coords(), &[0.0, 1.0]);
        let e = x.embed();
        assert_eq!(e.coeffs()[..8], [1.0, 2.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]);
        let axis = SplitPoint::new(s, &[1.0, 2.0], &[0.0, 0.0]).unwrap();
        assert_eq!(axis.direction(), Err(Error::OnRealAxis));
    }

    #[test]
    fn unit_direction_squares_to_minus_one() {
        let s = sig(2, 3);
        let w = Direction::new(s, &[1.0, -2.0, 2.0]).unwrap();
        let sq = w.vector() * w.vector();
        assert!(sq.distance(&Multivector::scalar(s, -1.0)) < 1e-15);
    }
}
