//! The mirrored-ball test domain and its quadrature rules.
//!
//! In slice coordinates `(x_0, .., x_p, t)` the domain meets every slice in
//! two balls of radius `ρ` centred at `(c_p, ±r0)`. In full space this is the
//! solid torus-like set `{(x_p, |x_q|) ∈ B((c_p, r0), ρ)}`, which stays away
//! from the real axis because `r0 > ρ`.
//!
//! Every full-space integral is written as a sum over directions `ω` in an
//! open hemisphere of `S^{q-1}`, over both signs `±ω`, of an integral over the
//! upper ball `B+` placed on the slice of `±ω`. The upper ball is therefore the
//! only slice region that needs nodes.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Unused when a dependency links std and its inherent float methods win.
#[allow(unused_imports)]
use num_traits::Float;
use smallvec::SmallVec;

use crate::clifford::{Coords, Direction, Signature, SplitPoint};
use crate::error::{Error, Result};

/// `{x : (x_p, |x_q|) ∈ B((c_p, r0), ρ)}` with `r0 > ρ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MirroredBallDomain {
    center_p: Coords,
    r0: f64,
    rho: f64,
}

impl MirroredBallDomain {
    pub fn new(center_p: &[f64], r0: f64, rho: f64) -> Result<Self> {
        if center_p.is_empty() {
            return Err(Error::InvalidParameter("center_p needs p + 1 coordinates"));
        }
        if center_p.iter().chain([&r0, &rho]).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if rho <= 0.0 {
            return Err(Error::InvalidParameter("rho must be positive"));
        }
        if r0 <= rho {
            return Err(Error::InvalidParameter("r0 > rho is required to keep the domain off the real axis"));
        }
        Ok(MirroredBallDomain { center_p: SmallVec::from_slice(center_p), r0, rho })
    }

    pub fn center_p(&self) -> &[f64] {
        &self.center_p
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `p` as implied by the centre.
    pub fn p(&self) -> usize {
        self.center_p.len() - 1
    }

    /// Dimension `p + 2` of the slice balls.
    pub fn slice_dim(&self) -> usize {
        self.center_p.len() + 1
    }

    pub fn check_signature(&self, sig: Signature) -> Result<()> {
        if sig.p() != self.p() {
            return Err(Error::InvalidParameter("domain centre does not have p + 1 coordinates"));
        }
        Ok(())
    }

    /// Centre `(c_p, r0)` of the upper ball.
    pub fn slice_center(&self) -> Coords {
        let mut c = self.center_p.clone();
        c.push(self.r0);
        c
    }

    /// `ρ - |(s_p, |t|) - (c_p, r0)|`: positive inside, zero on the boundary.
    pub fn depth(&self, s: &[f64]) -> f64 {
        let m = s.len();
        let mut d2 = (s[m - 1].abs() - self.r0).powi(2);
        for (a, c) in s[..m - 1].iter().zip(&self.center_p) {
            d2 += (a - c) * (a - c);
        }
        self.rho - d2.sqrt()
    }

    pub fn contains_slice(&self, s: &[f64]) -> bool {
        self.depth(s) > 0.0
    }

    /// Open-set membership.
    pub fn contains(&self, x: &SplitPoint) -> bool {
        self.contains_slice(&x.slice_coords())
    }

    /// The boundary point of the upper ball with outward slice normal `ν`.
    pub fn boundary_slice_point(&self, nu: &[f64]) -> Result<Coords> {
        let len = nu.iter().map(|c| c * c).sum::<f64>().sqrt();
        if nu.len() != self.slice_dim() {
            return Err(Error::DimensionMismatch { expected: self.slice_dim(), found: nu.len() });
        }
        if len == 0.0 || !len.is_finite() {
            return Err(Error::InvalidParameter("normal must be a nonzero finite vector"));
        }
        Ok(self.slice_center().iter().zip(nu).map(|(c, n)| c + self.rho * n / len).collect())
    }

    /// The boundary point with slice normal `ν` on the slice of `η`.
    pub fn boundary_point(&self, nu: &[f64], eta: &Direction) -> Result<SplitPoint> {
        let s = self.boundary_slice_point(nu)?;
        let p = self.p();
        SplitPoint::on_slice(&s[..=p], s[p + 1], eta)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Legendre rule with `n >= 1` nodes, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> GaussLegendre {
    assert!(n >= 1, "gauss_legendre needs n >= 1");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(-x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    GaussLegendre { nodes, weights }
}

/// A rule on the unit sphere `S^{dim-1} ⊂ R^dim`.
#[derive(Clone, Debug)]
pub struct SphereRule {
    dim: usize,
    nodes: Vec<Coords>,
    weights: Vec<f64>,
    degree: usize,
}

impl SphereRule {
    /// Product rule in hyperspherical coordinates: `n` Gauss nodes in the cosine
    /// of every polar angle and `2n` equispaced azimuths. Symmetric under
    /// `ν ↦ -ν`.
    pub fn product(dim: usize, n: usize) -> Self {
        assert!(dim >= 2 && n >= 1, "sphere rule needs dim >= 2, n >= 1");
        let (nodes, weights, degree) = hyperspherical(dim, n, 2 * n, false);
        SphereRule { dim, nodes, weights, degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Coords] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest total degree of polynomials integrated exactly.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Nodes on `S^{dim-1}` as `(t, sqrt(1 - t^2) ν')`, recursing down to a circle
/// with `count` azimuths (or a half circle with midpoints when `half`).
fn hyperspherical(dim: usize, n: usize, count: usize, half: bool) -> (Vec<Coords>, Vec<f64>, usize) {
    if dim == 2 {
        let span = if half { PI } else { 2.0 * PI };
        let w = span / count as f64;
        let nodes = (0..count)
            .map(|k| {
                let phi = if half { w * (k as f64 + 0.5) } else { w * k as f64 };
                SmallVec::from_slice(&[phi.cos(), phi.sin()])
            })
            .collect();
        return (nodes, alloc::vec![w; count], count - 1);
    }
    let j = dim - 3;
    let (ts, wt, deg_t) = polar_rule(n, j);
    let (sub, sub_w, sub_deg) = hyperspherical(dim - 1, n, count, half);
    let mut nodes = Vec::with_capacity(ts.len() * sub.len());
    let mut weights = Vec::with_capacity(ts.len() * sub.len());
    for (t, w) in ts.iter().zip(&wt) {
        let c = (1.0 - t * t).sqrt();
        for (v, vw) in sub.iter().zip(&sub_w) {
            let mut node: Coords = SmallVec::with_capacity(dim);
            node.push(*t);
            node.extend(v.iter().map(|x| c * x));
            nodes.push(node);
            weights.push(w * vw);
        }
    }
    (nodes, weights, deg_t.min(sub_deg))
}

/// Rule for `∫ g(t) (1 - t^2)^{j/2} dt` on `[-1, 1]`, exact for `g` of degree
/// `2n - 1`. The weight factor costs `j/2` extra nodes.
fn polar_rule(n: usize, j: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let count = n + j / 2;
    if j.is_multiple_of(2) {
        let gl = gauss_legendre(count);
        let w = gl.nodes.iter().zip(&gl.weights).map(|(t, w)| w * (1.0 - t * t).powi(j as i32 / 2)).collect();
        (gl.nodes, w, 2 * n - 1)
    } else {
        // Gauss–Chebyshev of the second kind absorbs the odd half power.
        let h = PI / (count as f64 + 1.0);
        let mut ts = Vec::with_capacity(count);
        let mut ws = Vec::with_capacity(count);
        for i in 1..=count {
            let t = (i as f64 * h).cos();
            ts.push(t);
            ws.push(h * (i as f64 * h).sin().powi(2) * (1.0 - t * t).powi((j as i32 - 1) / 2));
        }
        (ts, ws, 2 * n - 1)
    }
}

/// Directions `ω` over the open hemisphere `{ω_q > 0}` of `S^{q-1}`.
///
/// Together with their antipodes the nodes form a symmetric rule on the
/// whole sphere. For `q = 2` it is the midpoint rule on `θ ∈ [0, π)`.
#[derive(Clone, Debug)]
pub struct HemisphereRule {
    directions: Vec<Direction>,
    weights: Vec<f64>,
}

impl HemisphereRule {
    pub fn new(sig: Signature, level: usize) -> Result<Self> {
        let count = 1usize << level;
        let polar = (count / 2).max(1);
        let (nodes, weights, _) = hyperspherical(sig.q(), polar, count, true);
        let directions = nodes.iter().map(|c| Direction::new(sig, c)).collect::<Result<Vec<_>>>()?;
        Ok(HemisphereRule { directions, weights })
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Direction, f64)> {
        self.directions.iter().zip(self.weights.iter().copied())
    }
}

/// A node of a rule on the upper sphere `∂B+`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryNode {
    pub point: Coords,
    /// Outward unit normal in slice coordinates.
    pub normal: Coords,
    pub weight: f64,
}

/// A node of a rule on the upper ball `B+`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeNode {
    pub point: Coords,
    pub weight: f64,
}

/// Anything with a location in slice coordinates.
pub trait QuadNode: Clone {
    fn point(&self) -> &[f64];
}

impl QuadNode for BoundaryNode {
    fn point(&self) -> &[f64] {
        &self.point
    }
}

impl QuadNode for VolumeNode {
    fn point(&self) -> &[f64] {
        &self.point
    }
}

/// Polar-angle node count at a refinement level.
pub fn nodes_per_angle(level: usize) -> usize {
    1 << level.saturating_sub(1)
}

/// Boundary and volume rules for the upper ball at one refinement level.
#[derive(Clone, Debug)]
pub struct SliceQuadrature {
    level: usize,
    boundary: Vec<BoundaryNode>,
    volume: Vec<VolumeNode>,
    spacing: f64,
    boundary_degree: usize,
}

impl SliceQuadrature {
    /// Both rules.
    pub fn new(domain: &MirroredBallDomain, level: usize) -> Self {
        let mut rule = build_boundary_rule(domain, level);
        rule.volume = build_volume_rule(domain, level).volume;
        rule
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn boundary(&self) -> &[BoundaryNode] {
        &self.boundary
    }

    pub fn volume(&self) -> &[VolumeNode] {
        &self.volume
    }

    /// Largest distance between neighbouring boundary nodes along the equator.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Exactness degree of the boundary rule.
    pub fn boundary_degree(&self) -> usize {
        self.boundary_degree
    }
}

/// Product rule on `∂B+`: the sphere rule scaled by `ρ`.
pub fn build_boundary_rule(domain: &MirroredBallDomain, level: usize) -> SliceQuadrature {
    let n = nodes_per_angle(level);
    let m = domain.slice_dim();
    let sphere = SphereRule::product(m, n);
    let c = domain.slice_center();
    let rho = domain.rho();
    let scale = rho.powi(m as i32 - 1);
    let boundary = sphere
        .nodes()
        .iter()
        .zip(sphere.weights())
        .map(|(nu, w)| BoundaryNode {
            point: c.iter().zip(nu).map(|(c, v)| c + rho * v).collect(),
            normal: nu.clone(),
            weight: w * scale,
        })
        .collect();
    SliceQuadrature {
        level,
        boundary,
        volume: Vec::new(),
        spacing: PI * rho / n as f64,
        boundary_degree: sphere.degree(),
    }
}

/// Gauss radial nodes times the sphere rule on `B+`.
pub fn build_volume_rule(domain: &MirroredBallDomain, level: usize) -> SliceQuadrature {
    let n = nodes_per_angle(level);
    let m = domain.slice_dim();
    let sphere = SphereRule::product(m, n);
    // Extra nodes absorb the Jacobian s^{m-1}.
    let radial = gauss_legendre(n + m / 2);
    let c = domain.slice_center();
    let rho = domain.rho();
    let mut volume = Vec::with_capacity(n * sphere.len());
    for (t, wt) in radial.nodes.iter().zip(&radial.weights) {
        let s = 0.5 * rho * (1.0 + t);
        let ws = 0.5 * rho * wt * s.powi(m as i32 - 1);
        for (nu, w) in sphere.nodes().iter().zip(sphere.weights()) {
            volume.push(VolumeNode { point: c.iter().zip(nu).map(|(c, v)| c + s * v).collect(), weight: ws * w });
        }
    }
    SliceQuadrature {
        level,
        boundary: Vec::new(),
        volume,
        spacing: PI * rho / n as f64,
        boundary_degree: sphere.degree(),
    }
}

/// A ray of a polar rule: unit direction, angular weight, length to `∂B+`.
#[derive(Clone, Debug)]
pub struct Ray {
    pub dir: Coords,
    pub weight: f64,
    pub reach: f64,
}

/// Polar coordinates about an interior point `z` of `B+`:
/// `∫_{B+} g = Σ_rays w_ν ∫_0^{R(ν)} g(z + sν) s^{m-1} ds`.
///
/// The factor `s^{m-1}` cancels the singularity of the Cauchy kernel at `z`,
/// and the radial integrals use Gauss nodes on `[0, R(ν)]`.
#[derive(Clone, Debug)]
pub struct BallPolarRule {
    center: Coords,
    rays: Vec<Ray>,
    /// Gauss nodes and weights on `[0, 1]`.
    radial: Vec<(f64, f64)>,
}

impl BallPolarRule {
    pub fn new(domain: &MirroredBallDomain, center: &[f64], level: usize) -> Result<Self> {
        if center.len() != domain.slice_dim() {
            return Err(Error::DimensionMismatch { expected: domain.slice_dim(), found: center.len() });
        }
        if !(center[center.len() - 1] > 0.0 && domain.depth(center) > 0.0) {
            return Err(Error::OutsideDomain("polar rule centre must lie inside the upper ball"));
        }
        let n = nodes_per_angle(level);
        let m = domain.slice_dim();
        let sphere = SphereRule::product(m, n);
        let c = domain.slice_center();
        let w: Coords = center.iter().zip(&c).map(|(a, b)| a - b).collect();
        let w2: f64 = w.iter().map(|x| x * x).sum();
        let rho2 = domain.rho() * domain.rho();
        let rays = sphere
            .nodes()
            .iter()
            .zip(sphere.weights())
            .map(|(nu, &weight)| {
                let b: f64 = nu.iter().zip(&w).map(|(a, b)| a * b).sum();
                let reach = -b + (b * b + rho2 - w2).sqrt();
                Ray { dir: nu.clone(), weight, reach }
            })
            .collect();
        let gl = gauss_legendre(n + 2);
        let radial = gl.nodes.iter().zip(&gl.weights).map(|(t, w)| (0.5 * (1.0 + t), 0.5 * w)).collect();
        Ok(BallPolarRule { center: SmallVec::from_slice(center), rays, radial })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// Gauss nodes and weights on `[0, 1]`, scaled by the reach of each ray.
    pub fn radial(&self) -> &[(f64, f64)] {
        &self.radial
    }

    /// Flattened nodes, weights including the Jacobian `s^{m-1}`. Ray-major:
    /// node `k` of ray `i` sits at index `i * radial().len() + k`.
    pub fn nodes(&self) -> Vec<VolumeNode> {
        let m = self.center.len() as i32;
        let mut out = Vec::with_capacity(self.rays.len() * self.radial.len());
        for ray in &self.rays {
            for &(t, w) in &self.radial {
                let s = t * ray.reach;
                out.push(VolumeNode {
                    point: self.center.iter().zip(&ray.dir).map(|(c, v)| c + s * v).collect(),
                    weight: ray.weight * w * ray.reach * s.powi(m - 1),
                });
            }
        }
        out
    }
}

/// A rule on `∂B+` in polar coordinates about a boundary point (the pole).
///
/// The polar angle `θ ∈ (0, π)` uses Gauss nodes, optionally graded towards
/// the pole by `θ = π u^g`, and every circle of latitude carries the same
/// antipodally symmetric rule. Odd terms of a kernel singular at the pole
/// therefore cancel node by node, so the plain sum is the principal value.
#[derive(Clone, Debug)]
pub struct SurfacePolarRule {
    pole: Coords,
    nodes: Vec<BoundaryNode>,
}

impl SurfacePolarRule {
    pub fn new(domain: &MirroredBallDomain, pole: &[f64], level: usize, grading: u32) -> Result<Self> {
        let m = domain.slice_dim();
        if pole.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: pole.len() });
        }
        if grading == 0 {
            return Err(Error::InvalidParameter("grading exponent must be at least 1"));
        }
        let c = domain.slice_center();
        let rho = domain.rho();
        let axis: Coords = pole.iter().zip(&c).map(|(a, b)| a - b).collect();
        let len = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (len - rho).abs() > 1e-9 * rho {
            return Err(Error::OutsideDomain("pole must lie on the boundary sphere"));
        }
        let frame = orthonormal_frame(&axis);
        let n = nodes_per_angle(level);
        let gl = gauss_legendre(2 * n);
        let inner = SphereRule::product(m - 1, n);
        let g = grading as f64;
        let mut nodes = Vec::with_capacity(gl.nodes.len() * inner.len());
        for (t, wt) in gl.nodes.iter().zip(&gl.weights) {
            let u = 0.5 * (1.0 + t);
            let theta = PI * u.powf(g);
            let w_theta = 0.5 * wt * g * PI * u.powf(g - 1.0) * theta.sin().powi(m as i32 - 2);
            let (st, ct) = (theta.sin(), theta.cos());
            for (psi, wp) in inner.nodes().iter().zip(inner.weights()) {
                let mut normal: Coords = frame[0].iter().map(|a| ct * a).collect();
                for (k, comp) in psi.iter().enumerate() {
                    for (nv, a) in normal.iter_mut().zip(&frame[k + 1]) {
                        *nv += st * comp * a;
                    }
                }
                nodes.push(BoundaryNode {
                    point: c.iter().zip(&normal).map(|(c, v)| c + rho * v).collect(),
                    normal,
                    weight: w_theta * wp * rho.powi(m as i32 - 1),
                });
            }
        }
        let pole = c.iter().zip(&frame[0]).map(|(c, v)| c + rho * v).collect();
        Ok(SurfacePolarRule { pole, nodes })
    }

    pub fn pole(&self) -> &[f64] {
        &self.pole
    }

    pub fn nodes(&self) -> &[BoundaryNode] {
        &self.nodes
    }
}

/// Orthonormal basis whose first vector is `axis / |axis|`.
fn orthonormal_frame(axis: &[f64]) -> Vec<Coords> {
    let m = axis.len();
    let len = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut frame: Vec<Coords> = alloc::vec![axis.iter().map(|x| x / len).collect()];
    for k in 0..m {
        if frame.len() == m {
            break;
        }
        let mut v: Coords = SmallVec::from_elem(0.0, m);
        v[k] = 1.0;
        for b in &frame {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= d * y;
            }
        }
        let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if l > 1e-8 {
            frame.push(v.iter().map(|x| x / l).collect());
        }
    }
    frame
}

/// Drops every node within `eps` of `x_plus` or `x_minus` (slice coordinates),
/// leaving the weights of the remaining nodes untouched.
pub fn pv_excise<N: QuadNode>(nodes: &[N], x_plus: &[f64], x_minus: &[f64], eps: f64) -> Vec<N> {
    let far = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() >= eps * eps;
    nodes.iter().filter(|n| far(n.point(), x_plus) && far(n.point(), x_minus)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_cases() {
        let g = gauss_legendre(1);
        assert_eq!(g.nodes, [0.0]);
        assert_eq!(g.weights, [2.0]);
        let g = gauss_legendre(2);
        let x = 1.0 / 3f64.sqrt();
        assert!((g.nodes[0] + x).abs() < 1e-15 && (g.nodes[1] - x).abs() < 1e-15);
        assert!((g.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..40 {
            let g = gauss_legendre(n);
            for k in 0..2 * n {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                let sum: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
                assert!((sum - exact).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn domain_validation_names_the_invariant() {
        let err = MirroredBallDomain::new(&[0.0, 0.0], 1.0, 1.0).unwrap_err();
        assert!(alloc::format!("{err}").contains("r0 > rho"));
    }

    #[test]
    fn hemisphere_q2_is_midpoint_rule() {
        let sig = Signature::new(1, 2).unwrap();
        let h = HemisphereRule::new(sig, 2).unwrap();
        assert_eq!(h.directions().len(), 4);
        let theta = PI / 8.0;
        assert!((h.directions()[0].coords()[0] - theta.cos()).abs() < 1e-15);
        assert!((h.weights().iter().sum::<f64>() - PI).abs() < 1e-14);
    }

    #[test]
    fn frame_is_orthonormal() {
        let f = orthonormal_frame(&[0.0, 0.0, 2.0]);
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = f[i].iter().zip(&f[j]).map(|(a, b)| a * b).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }
}
