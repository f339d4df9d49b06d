//! Integral operators on the mirrored-ball domain.
//!
//! Full-space integrals over `Ω_D` and `∂Ω_D` are computed as averages over
//! source directions `ω` of slice integrals over the two balls of `Ω_ω`.
//! Within one half-plane the data enter as [`SlicePair`]s, so each slice
//! integral is evaluated once per target point and only the gluing
//! coefficients `α`, `β` depend on `ω`.
//!
//! Normalization: `K_y(x) = 𝓔_y(x) / (½ σ_{q-1} |y_q|^{q-1})`, so the full
//! Teodorescu transform is the plain hemisphere average of the slice ones and
//! the Cauchy integral reproduces monogenic functions.
//!
//! Singular integrals use polar rules centred at the singular point. Volume
//! integrals of the weakly singular kernel are then smooth; strongly singular
//! volume integrals subtract the value at the centre and use the zero mean of
//! the kernel on spheres; boundary principal values rely on the symmetric
//! surface rule. Node excision is available as an alternative for principal
//! values.

use alloc::vec::Vec;

// Unused when a dependency links std and its inherent float methods win.
#[allow(unused_imports)]
use num_traits::Float;

use crate::clifford::{slice_axis_conj, Coords, Direction, Multivector, Signature, SplitPoint};
use crate::domain::{
    BallPolarRule, BoundaryNode, HemisphereRule, MirroredBallDomain, SliceQuadrature, SurfacePolarRule, VolumeNode,
    pv_excise,
};
use crate::error::{Error, Result};
use crate::kernels::{
    gps_kernel_slice, hemisphere_measure, kernel_gradient_vector, slice_kernel, sphere_area, KernelCoefficients,
};
use crate::stem::{vartheta_of, DiracStem, Field, SliceFunction, SlicePair, StemFunction};

/// How principal-value integrals are computed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PvMethod {
    /// Polar rules centred at the singular point; the excision radius is
    /// taken to zero analytically.
    Polar,
    /// Drop standard nodes within `epsilon` of the singular points.
    Excision { epsilon: f64 },
}

/// Everything an operator needs: geometry, rules and numerical parameters.
#[derive(Clone, Debug)]
pub struct OperatorContext {
    sig: Signature,
    domain: MirroredBallDomain,
    level: usize,
    quad: SliceQuadrature,
    hemisphere: HemisphereRule,
    pv: PvMethod,
    fd_step: f64,
    sigma: f64,
    c_q: f64,
}

impl OperatorContext {
    pub fn new(sig: Signature, domain: MirroredBallDomain, level: usize) -> Result<Self> {
        domain.check_signature(sig)?;
        if level > 10 {
            return Err(Error::InvalidParameter("refinement level above 10"));
        }
        let quad = SliceQuadrature::new(&domain, level);
        let hemisphere = HemisphereRule::new(sig, level)?;
        Ok(OperatorContext {
            sig,
            domain,
            level,
            quad,
            hemisphere,
            pv: PvMethod::Polar,
            fd_step: 1e-3,
            sigma: sphere_area(sig.p() + 1),
            c_q: hemisphere_measure(sig.q()),
        })
    }

    /// Selects the principal-value method. Excision radii must be at least
    /// twice the boundary mesh spacing.
    pub fn with_pv_method(mut self, pv: PvMethod) -> Result<Self> {
        if let PvMethod::Excision { epsilon } = pv {
            if !(epsilon.is_finite() && epsilon >= 2.0 * self.quad.spacing()) {
                return Err(Error::InvalidParameter("pv epsilon must be at least twice the mesh spacing"));
            }
        }
        self.pv = pv;
        Ok(self)
    }

    /// Step for finite differences of transforms.
    pub fn with_fd_step(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter("fd step must be positive"));
        }
        self.fd_step = h;
        Ok(self)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn domain(&self) -> &MirroredBallDomain {
        &self.domain
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn quadrature(&self) -> &SliceQuadrature {
        &self.quad
    }

    pub fn hemisphere(&self) -> &HemisphereRule {
        &self.hemisphere
    }

    pub fn pv_method(&self) -> PvMethod {
        self.pv
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    fn check(&self, x: &SplitPoint) -> Result<()> {
        if x.signature() != self.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    fn eta_of(&self, x: &SplitPoint) -> Direction {
        match x.direction() {
            Ok(e) => e.clone(),
            Err(_) => Direction::axis(self.sig, 0).expect("q >= 2"),
        }
    }

    /// `(1/|𝕊⁺|) Σ_ω w_ω g(ω)` over the hemisphere rule.
    fn average(&self, mut g: impl FnMut(&Direction) -> Multivector) -> Multivector {
        let mut acc = Multivector::zero(self.sig);
        for (omega, w) in self.hemisphere.iter() {
            acc.add_scaled(w, &g(omega));
        }
        acc / self.c_q
    }

    /// `E(d) X` for a slice difference `d`, with `X` a pair.
    #[inline]
    fn kernel_apply(&self, d: &[f64], x: &SlicePair, weight: f64) -> SlicePair {
        let r2: f64 = d.iter().map(|c| c * c).sum();
        let m = d.len() as f64;
        x.left_mul_conj(d).scaled(weight / (self.sigma * r2.powf(0.5 * m)))
    }

    /// `(∂_k E)(d) X`.
    #[inline]
    fn kernel_gradient_apply(&self, d: &[f64], k: usize, x: &SlicePair, weight: f64) -> SlicePair {
        let m = d.len();
        let mut v = [0.0; 16];
        kernel_gradient_vector(d, k, &mut v[..m]);
        let r2: f64 = d.iter().map(|c| c * c).sum();
        x.left_mul_conj(&v[..m]).scaled(weight / (self.sigma * r2.powf(0.5 * m as f64)))
    }
}

/// `Σ_{ω' = ±ω} [α(η, ω') a(ω') + β(η, ω') b(ω')]`: the contribution of
/// the slice `Ω_ω` once the two half-plane integrals `a` (singular target
/// `x_{ω'}`) and `b` (mirrored target `x_{-ω'}`) are known.
pub fn glue(eta: &Direction, omega: &Direction, a: &SlicePair, b: &SlicePair) -> Multivector {
    let mut out = Multivector::zero(eta.signature());
    for w in [omega.clone(), omega.neg()] {
        let c = KernelCoefficients::new(eta, &w);
        out.add_product(1.0, &c.alpha, &a.at(&w));
        out.add_product(1.0, &c.beta, &b.at(&w));
    }
    out
}

fn diff(a: &[f64], b: &[f64]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn targets(x: &SplitPoint) -> (Coords, Coords) {
    let z = x.slice_coords();
    let mut zbar = z.clone();
    let last = zbar.len() - 1;
    zbar[last] = -zbar[last];
    (z, zbar)
}

fn sample<'a>(f: &dyn SliceFunction, points: impl Iterator<Item = &'a [f64]>) -> Vec<SlicePair> {
    points.map(|s| f.stem_at(s)).collect()
}

/// Half-plane boundary integrals `Σ w E(y - z) n f` and `Σ w E(y - z̄) n f`.
fn boundary_pairs(
    ctx: &OperatorContext,
    nodes: &[BoundaryNode],
    f: &dyn SliceFunction,
    z: &[f64],
    zbar: &[f64],
) -> (SlicePair, SlicePair) {
    let mut a = SlicePair::zero(ctx.sig);
    let mut b = SlicePair::zero(ctx.sig);
    for node in nodes {
        let nf = f.stem_at(&node.point).left_mul(&node.normal);
        a.add_scaled(1.0, &ctx.kernel_apply(&diff(&node.point, z), &nf, node.weight));
        b.add_scaled(1.0, &ctx.kernel_apply(&diff(&node.point, zbar), &nf, node.weight));
    }
    (a, b)
}

/// The Cauchy integral `F f(x) = ∫_{∂Ω_D} K_y(x) n(y) f(y) dS(y)` for `x` off
/// the boundary.
///
/// The boundary rule is polar about the foot point of the target, graded
/// towards it, so the near-singular integrand is resolved at any distance.
/// A target at the ball centre has no foot point and uses the product rule.
pub fn cauchy_boundary_f(ctx: &OperatorContext, f: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    ctx.check(x)?;
    let (z, zbar) = targets(x);
    let rho = ctx.domain.rho();
    if ctx.domain.depth(&z).abs() <= 1e-12 * rho {
        return Err(Error::OutsideDomain("Cauchy integral target lies on the boundary"));
    }
    let offset = diff(&z, &ctx.domain.slice_center());
    let (a, b) = if offset.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-6 * rho {
        boundary_pairs(ctx, ctx.quad.boundary(), f, &z, &zbar)
    } else {
        let foot = ctx.domain.boundary_slice_point(&offset)?;
        let rule = SurfacePolarRule::new(&ctx.domain, &foot, ctx.level + 1, 2)?;
        boundary_pairs(ctx, rule.nodes(), f, &z, &zbar)
    };
    let eta = ctx.eta_of(x);
    Ok(ctx.average(|w| glue(&eta, w, &a, &b)))
}

/// Half-plane volume integrals about one target point.
///
/// `u_z = ∫_{B+} E(y - z) f`, `u_zbar = ∫_{B+} E(y - z̄) f` and, when
/// requested, `pv[k] = PV ∫ (∂_k E)(y - z) f`, `reg[k] = ∫ (∂_k E)(y - z̄) f`
/// for every slice axis `k`, together with the stem of `f` at `z`.
#[derive(Clone, Debug)]
pub struct VolumeIntegrals {
    pub inside: bool,
    pub u_z: SlicePair,
    pub u_zbar: SlicePair,
    pub f_z: SlicePair,
    pub pv: Vec<SlicePair>,
    pub reg: Vec<SlicePair>,
}

/// Computes [`VolumeIntegrals`] for `f` at the target `x`.
pub fn volume_integrals(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    x: &SplitPoint,
    derivatives: bool,
) -> Result<VolumeIntegrals> {
    ctx.check(x)?;
    let sig = ctx.sig;
    let m = sig.slice_dim();
    let (z, zbar) = targets(x);
    let inside = z[m - 1] > 0.0 && ctx.domain.depth(&z) > 0.0;
    let f_z = f.stem_at(&z);
    let zero = || SlicePair::zero(sig);
    let mut out = VolumeIntegrals {
        inside,
        u_z: zero(),
        u_zbar: zero(),
        f_z,
        pv: (0..if derivatives { m } else { 0 }).map(|_| zero()).collect(),
        reg: (0..if derivatives { m } else { 0 }).map(|_| zero()).collect(),
    };

    let regular = |nodes: &[VolumeNode], vals: &[SlicePair], target: &[f64], out_u: &mut SlicePair, out_d: &mut [SlicePair]| {
        for (node, v) in nodes.iter().zip(vals) {
            let d = diff(&node.point, target);
            out_u.add_scaled(1.0, &ctx.kernel_apply(&d, v, node.weight));
            for (k, acc) in out_d.iter_mut().enumerate() {
                acc.add_scaled(1.0, &ctx.kernel_gradient_apply(&d, k, v, node.weight));
            }
        }
    };

    if !inside {
        let nodes = ctx.quad.volume();
        let vals = sample(f, nodes.iter().map(|n| &n.point[..]));
        regular(nodes, &vals, &z, &mut out.u_z, &mut out.pv);
        regular(nodes, &vals, &zbar, &mut out.u_zbar, &mut out.reg);
        return Ok(out);
    }

    let rule = BallPolarRule::new(&ctx.domain, &z, ctx.level)?;
    let nodes = rule.nodes();
    let vals = sample(f, nodes.iter().map(|n| &n.point[..]));
    regular(&nodes, &vals, &zbar, &mut out.u_zbar, &mut out.reg);

    // The kernel at the centre: E(sν) s^{m-1} = conj(ν) / σ along each ray.
    let nr = rule.radial().len();
    for (i, ray) in rule.rays().iter().enumerate() {
        let ray_vals = &vals[i * nr..(i + 1) * nr];
        let mut line = zero();
        for (v, &(_, w)) in ray_vals.iter().zip(rule.radial()) {
            line.add_scaled(w * ray.reach, v);
        }
        out.u_z.add_scaled(ray.weight / ctx.sigma, &line.left_mul_conj(&ray.dir));

        if derivatives && ctx.pv == PvMethod::Polar {
            // ∫_0^R (f(z + sν) - f(z)) / s ds + ln R · f(z)
            let mut line = out.f_z.scaled(ray.reach.ln());
            for (v, &(t, w)) in ray_vals.iter().zip(rule.radial()) {
                let mut dv = v.clone();
                dv.add_scaled(-1.0, &out.f_z);
                line.add_scaled(w / t, &dv);
            }
            for k in 0..m {
                let mut vk = [0.0; 16];
                kernel_gradient_vector(&ray.dir, k, &mut vk[..m]);
                out.pv[k].add_scaled(ray.weight / ctx.sigma, &line.left_mul_conj(&vk[..m]));
            }
        }
    }

    if derivatives {
        if let PvMethod::Excision { epsilon } = ctx.pv {
            let kept = pv_excise(ctx.quad.volume(), &z, &zbar, epsilon);
            let vals = sample(f, kept.iter().map(|n| &n.point[..]));
            let mut scratch = zero();
            regular(&kept, &vals, &z, &mut scratch, &mut out.pv);
        }
    }
    Ok(out)
}

/// The slice Teodorescu transform `T_ω f(x) = -∫_{Ω_ω} 𝓔_y(x) f(y) dσ_ω(y)`.
pub fn teodorescu_slice(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    omega: &Direction,
    x: &SplitPoint,
) -> Result<Multivector> {
    let vi = volume_integrals(ctx, f, x, false)?;
    Ok(-glue(&ctx.eta_of(x), omega, &vi.u_z, &vi.u_zbar))
}

/// The full Teodorescu transform `T_D f(x) = -∫_{Ω_D} K_y(x) f(y) dy`, as the
/// hemisphere average of the slice transforms.
pub fn teodorescu_full(ctx: &OperatorContext, f: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    let vi = volume_integrals(ctx, f, x, false)?;
    let eta = ctx.eta_of(x);
    Ok(-ctx.average(|w| glue(&eta, w, &vi.u_z, &vi.u_zbar)))
}

/// `T_D f(x)` by direct summation of `-K_y(x) f(y) |y_q|^{q-1}` over the
/// full-space nodes (same nodes as [`teodorescu_full`]).
pub fn teodorescu_full_direct(ctx: &OperatorContext, f: &dyn Field, x: &SplitPoint) -> Result<Multivector> {
    ctx.check(x)?;
    let (z, _) = targets(x);
    let inside = z[z.len() - 1] > 0.0 && ctx.domain.depth(&z) > 0.0;
    let polar;
    let nodes: &[VolumeNode] = if inside {
        polar = BallPolarRule::new(&ctx.domain, &z, ctx.level)?.nodes();
        &polar
    } else {
        ctx.quad.volume()
    };
    let q = ctx.sig.q() as i32;
    let mut acc = Multivector::zero(ctx.sig);
    for (omega, w) in ctx.hemisphere.iter() {
        for side in [omega.clone(), omega.neg()] {
            for node in nodes {
                let rq = node.point[node.point.len() - 1].powi(q - 1);
                let k = gps_kernel_slice(&node.point, &side, x) / (ctx.c_q * rq);
                acc.add_product(-w * node.weight * rq, &k, &f.eval_at(&node.point, &side));
            }
        }
    }
    Ok(acc)
}

/// The three parts of a closed-form partial derivative of a Teodorescu
/// transform: principal-value integral, local jump term and (for `x_q`
/// coordinates) the term from the dependence of `α`, `β` on the direction of
/// `x`.
#[derive(Clone, Debug)]
pub struct DerivativeSplit {
    pub principal: Multivector,
    pub jump: Multivector,
    pub angular: Multivector,
}

impl DerivativeSplit {
    pub fn total(&self) -> Multivector {
        &(&self.principal + &self.jump) + &self.angular
    }

    fn add_scaled(&mut self, s: f64, other: &DerivativeSplit) {
        self.principal.add_scaled(s, &other.principal);
        self.jump.add_scaled(s, &other.jump);
        self.angular.add_scaled(s, &other.angular);
    }
}

/// Closed form of `∂_{x_k} T_ω f(x)` from precomputed integrals. `k` indexes
/// the full coordinates `x_0, .., x_{p+q}`.
pub fn slice_derivative_split(
    ctx: &OperatorContext,
    vi: &VolumeIntegrals,
    x: &SplitPoint,
    omega: &Direction,
    k: usize,
) -> Result<DerivativeSplit> {
    let sig = ctx.sig;
    let p = sig.p();
    let m = sig.slice_dim() as f64;
    if k > sig.n() {
        return Err(Error::InvalidParameter("coordinate index out of range"));
    }
    if vi.pv.is_empty() {
        return Err(Error::InvalidParameter("volume integrals computed without derivatives"));
    }
    let mut out = DerivativeSplit {
        principal: Multivector::zero(sig),
        jump: Multivector::zero(sig),
        angular: Multivector::zero(sig),
    };
    let jump_on = if vi.inside { 1.0 } else { 0.0 };
    if k <= p {
        let eta = ctx.eta_of(x);
        out.principal = glue(&eta, omega, &vi.pv[k], &vi.reg[k]);
        for w in [omega.clone(), omega.neg()] {
            let c = KernelCoefficients::new(&eta, &w);
            let jump = &slice_axis_conj(k, &w) * &vi.f_z.at(&w);
            out.jump.add_product(jump_on / m, &c.alpha, &jump);
        }
        return Ok(out);
    }
    let eta = x.direction()?.clone();
    let j = k - p - 1;
    let r = x.r();
    let rk = p + 1;
    let mut radial = Multivector::zero(sig);
    let mut jump = Multivector::zero(sig);
    let mut spread = Multivector::zero(sig);
    for w in [omega.clone(), omega.neg()] {
        let c = KernelCoefficients::new(&eta, &w);
        radial.add_product(1.0, &c.alpha, &vi.pv[rk].at(&w));
        radial.add_product(-1.0, &c.beta, &vi.reg[rk].at(&w));
        jump.add_product(-jump_on / m, &c.alpha, &(w.vector() * &vi.f_z.at(&w)));
        spread.add_product(1.0, w.vector(), &(&vi.u_z.at(&w) - &vi.u_zbar.at(&w)));
    }
    let eta_j = eta.coords()[j];
    let d_eta = (Multivector::generator(sig, p + 1 + j)? - eta.vector() * eta_j) / r;
    out.principal = radial * eta_j;
    out.jump = jump * eta_j;
    out.angular = (&d_eta * &spread) * 0.5;
    Ok(out)
}

/// Closed form of `∂_{x_k} T_ω f(x)`.
pub fn teodorescu_slice_derivative(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    omega: &Direction,
    x: &SplitPoint,
    k: usize,
) -> Result<DerivativeSplit> {
    let vi = volume_integrals(ctx, f, x, true)?;
    slice_derivative_split(ctx, &vi, x, omega, k)
}

/// Closed form of `∂_{x_k} T_D f(x)`: the hemisphere average of the slice
/// forms. The averaged jump is `conj(e_k) f(x) / (p + 2)` for `k <= p` and
/// `-x_{q,j} x_q f(x) / ((p + 2) |x_q|^2)` for the `x_q` coordinates.
pub fn teodorescu_full_derivative(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    x: &SplitPoint,
    k: usize,
) -> Result<DerivativeSplit> {
    let vi = volume_integrals(ctx, f, x, true)?;
    let sig = ctx.sig;
    let mut acc = DerivativeSplit {
        principal: Multivector::zero(sig),
        jump: Multivector::zero(sig),
        angular: Multivector::zero(sig),
    };
    for (omega, w) in ctx.hemisphere.iter() {
        acc.add_scaled(w / ctx.c_q, &slice_derivative_split(ctx, &vi, x, omega, k)?);
    }
    Ok(acc)
}

/// `ϑ̄ T_ω f(x)` by central differences of the context step.
pub fn vartheta_teodorescu_slice(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    omega: &Direction,
    x: &SplitPoint,
) -> Result<Multivector> {
    vartheta_of(|y| teodorescu_slice(ctx, f, omega, y), x, ctx.fd_step)
}

/// `ϑ̄ T_D f(x)` by central differences of the context step.
pub fn vartheta_teodorescu_full(ctx: &OperatorContext, f: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    vartheta_of(|y| teodorescu_full(ctx, f, y), x, ctx.fd_step)
}

/// `|F f(x) + T_D(ϑ̄ f)(x) - f(x)|` for an interior point.
pub fn cauchy_pompeiu_residual(
    ctx: &OperatorContext,
    f: &dyn SliceFunction,
    dbar_f: &dyn SliceFunction,
    x: &SplitPoint,
) -> Result<f64> {
    if !ctx.domain.contains(x) {
        return Err(Error::OutsideDomain("Cauchy–Pompeiu needs an interior point"));
    }
    let lhs = cauchy_boundary_f(ctx, f, x)? + teodorescu_full(ctx, dbar_f, x)?;
    Ok(lhs.distance(&f.eval(x)))
}

fn boundary_target(ctx: &OperatorContext, x: &SplitPoint) -> Result<(Coords, Coords)> {
    ctx.check(x)?;
    let (z, _) = targets(x);
    if ctx.domain.depth(&z).abs() > 1e-9 * ctx.domain.rho() {
        return Err(Error::OutsideDomain("singular integral needs a boundary point"));
    }
    let c = ctx.domain.slice_center();
    let z = ctx.domain.boundary_slice_point(&diff(&z, &c))?;
    let mut zbar = z.clone();
    let last = zbar.len() - 1;
    zbar[last] = -zbar[last];
    Ok((z, zbar))
}

/// The singular integral `S u(x) = 2 PV ∫_{∂Ω_D} K_y(x) n(y) u(y) dS(y)` at a
/// boundary point.
pub fn plemelj_s(ctx: &OperatorContext, u: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    let (z, zbar) = boundary_target(ctx, x)?;
    let (a, b) = match ctx.pv {
        PvMethod::Polar => {
            let rule = SurfacePolarRule::new(&ctx.domain, &z, ctx.level, 1)?;
            boundary_pairs(ctx, rule.nodes(), u, &z, &zbar)
        }
        PvMethod::Excision { epsilon } => {
            let kept = pv_excise(ctx.quad.boundary(), &z, &zbar, epsilon);
            boundary_pairs(ctx, &kept, u, &z, &zbar)
        }
    };
    let eta = ctx.eta_of(x);
    Ok(ctx.average(|w| glue(&eta, w, &a, &b)) * 2.0)
}

/// `P u = ½ (u + S u)`.
pub fn plemelj_p(ctx: &OperatorContext, u: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    Ok((u.eval(x) + plemelj_s(ctx, u, x)?) * 0.5)
}

/// `Q u = ½ (u - S u)`.
pub fn plemelj_q(ctx: &OperatorContext, u: &dyn SliceFunction, x: &SplitPoint) -> Result<Multivector> {
    Ok((u.eval(x) - plemelj_s(ctx, u, x)?) * 0.5)
}

/// Which boundary operator a [`PlemeljImage`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlemeljKind {
    S,
    P,
    Q,
}

/// `S u`, `P u` or `Q u` as a boundary slice function, so operators can be
/// composed. Evaluation points are projected radially onto `∂Ω_D`; a failed
/// evaluation yields NaN coefficients.
pub struct PlemeljImage<'a> {
    ctx: &'a OperatorContext,
    u: &'a dyn SliceFunction,
    kind: PlemeljKind,
}

impl<'a> PlemeljImage<'a> {
    pub fn new(ctx: &'a OperatorContext, u: &'a dyn SliceFunction, kind: PlemeljKind) -> Self {
        PlemeljImage { ctx, u, kind }
    }
}

impl Field for PlemeljImage<'_> {
    fn signature(&self) -> Signature {
        self.ctx.sig
    }

    fn eval_at(&self, s: &[f64], omega: &Direction) -> Multivector {
        let p = self.ctx.sig.p();
        let run = || -> Result<Multivector> {
            let x = SplitPoint::on_slice(&s[..=p], s[p + 1], omega)?;
            let z = x.slice_coords();
            let c = self.ctx.domain.slice_center();
            let zb = self.ctx.domain.boundary_slice_point(&diff(&z, &c))?;
            let eta = self.ctx.eta_of(&x);
            let xb = SplitPoint::on_slice(&zb[..=p], zb[p + 1], &eta)?;
            match self.kind {
                PlemeljKind::S => plemelj_s(self.ctx, self.u, &xb),
                PlemeljKind::P => plemelj_p(self.ctx, self.u, &xb),
                PlemeljKind::Q => plemelj_q(self.ctx, self.u, &xb),
            }
        };
        run().unwrap_or_else(|_| {
            let nan = alloc::vec![f64::NAN; self.ctx.sig.dim()];
            Multivector::from_coeffs(self.ctx.sig, &nan).unwrap_or_else(|_| Multivector::zero(self.ctx.sig) * f64::NAN)
        })
    }
}

impl SliceFunction for PlemeljImage<'_> {}

/// One-sided boundary limits of the Cauchy integral at a boundary point.
#[derive(Clone, Debug)]
pub struct PlemeljLimits {
    /// Limit of `F u` from inside.
    pub interior: Multivector,
    /// Limit of `F u` from outside.
    pub exterior: Multivector,
    /// `PV ∫ K n u = ½ S u`.
    pub principal: Multivector,
    /// `u(x)`.
    pub value: Multivector,
}

impl PlemeljLimits {
    /// `|interior - (principal + value/2)|` and `|exterior - (principal - value/2)|`.
    pub fn defects(&self) -> (f64, f64) {
        let half = &self.value * 0.5;
        (
            self.interior.distance(&(&self.principal + &half)),
            self.exterior.distance(&(&self.principal - &half)),
        )
    }
}

/// Polynomial extrapolation of `(t_i, v_i)` to `t = 0` (Neville).
pub fn extrapolate_to_zero(ts: &[f64], vs: &[Multivector]) -> Multivector {
    let mut table: Vec<Multivector> = vs.to_vec();
    let n = ts.len();
    for level in 1..n {
        for i in 0..n - level {
            let (t0, t1) = (ts[i], ts[i + level]);
            table[i] = (&table[i] * t1 - &table[i + 1] * t0) / (t1 - t0);
        }
    }
    table.swap_remove(0)
}

/// Path steps `ρ/16, ρ/32, ρ/64, ρ/128` for [`plemelj_jump`]. The exterior
/// limit needs four points: its higher-order terms are larger than inside.
pub fn default_path_steps(rho: f64) -> [f64; 4] {
    [rho / 16.0, rho / 32.0, rho / 64.0, rho / 128.0]
}

/// Plemelj limits at the boundary point `x`: `F u` is evaluated at
/// `x ∓ t ν` along the slice normal for every `t` in `steps`, then
/// extrapolated to `t = 0`.
pub fn plemelj_jump(
    ctx: &OperatorContext,
    u: &dyn SliceFunction,
    x: &SplitPoint,
    steps: &[f64],
) -> Result<PlemeljLimits> {
    let (z, _) = boundary_target(ctx, x)?;
    let rho = ctx.domain.rho();
    if steps.is_empty() || steps.iter().any(|&t| !(t > 0.0 && t < 0.5 * rho)) {
        return Err(Error::InvalidParameter("path steps must lie in (0, rho/2)"));
    }
    let c = ctx.domain.slice_center();
    let nu: Coords = diff(&z, &c).iter().map(|v| v / rho).collect();
    let eta = ctx.eta_of(x);
    let p = ctx.sig.p();
    let at = |t: f64| -> Result<Multivector> {
        let s: Coords = z.iter().zip(&nu).map(|(a, n)| a + t * n).collect();
        cauchy_boundary_f(ctx, u, &SplitPoint::on_slice(&s[..=p], s[p + 1], &eta)?)
    };
    let inner = steps.iter().map(|&t| at(-t)).collect::<Result<Vec<_>>>()?;
    let outer = steps.iter().map(|&t| at(t)).collect::<Result<Vec<_>>>()?;
    let xb = SplitPoint::on_slice(&z[..=p], z[p + 1], &eta)?;
    Ok(PlemeljLimits {
        interior: extrapolate_to_zero(steps, &inner),
        exterior: extrapolate_to_zero(steps, &outer),
        principal: plemelj_s(ctx, u, &xb)? * 0.5,
        value: u.eval(&xb),
    })
}

/// `⟨f, g⟩ = ∫_{Ω_D} conj(f) g dy`.
pub fn inner_product(ctx: &OperatorContext, f: &dyn Field, g: &dyn Field) -> Multivector {
    let q = ctx.sig.q() as i32;
    let mut acc = Multivector::zero(ctx.sig);
    for (omega, w) in ctx.hemisphere.iter() {
        for side in [omega.clone(), omega.neg()] {
            for node in ctx.quad.volume() {
                let rq = node.point[node.point.len() - 1].powi(q - 1);
                let fv = f.eval_at(&node.point, &side).conj();
                acc.add_product(w * node.weight * rq, &fv, &g.eval_at(&node.point, &side));
            }
        }
    }
    acc
}

/// `(∫_{Ω_D} |f|^t dy)^{1/t}` for `t >= 1`.
pub fn lt_norm(ctx: &OperatorContext, f: &dyn Field, t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::InvalidParameter("norm exponent must be finite and at least 1"));
    }
    let q = ctx.sig.q() as i32;
    let mut acc = 0.0;
    for (omega, w) in ctx.hemisphere.iter() {
        for side in [omega.clone(), omega.neg()] {
            for node in ctx.quad.volume() {
                let rq = node.point[node.point.len() - 1].powi(q - 1);
                acc += w * node.weight * rq * f.eval_at(&node.point, &side).norm().powf(t);
            }
        }
    }
    Ok(acc.powf(1.0 / t))
}

/// `|⟨φ, h⟩| / (‖φ‖₂ ‖h‖₂)` with `φ(y) = conj(𝓔_y(x_l)) / σ_{q-1}` and
/// `h = |y_q|^{1-q} ϑ̄ g`. For `x_l` outside `Ω̄_D` and `g` vanishing on the
/// boundary this is zero up to quadrature error. With `negative_control` the
/// probe must instead lie inside `Ω_D`, where the residual is not small.
pub fn hodge_orthogonality_residual<S: StemFunction>(
    ctx: &OperatorContext,
    x_l: &SplitPoint,
    g: &S,
    negative_control: bool,
) -> Result<f64> {
    ctx.check(x_l)?;
    let depth = ctx.domain.depth(&x_l.slice_coords());
    if negative_control && depth <= 0.0 {
        return Err(Error::OutsideDomain("negative control needs an interior probe"));
    }
    if !negative_control && depth >= 0.0 {
        return Err(Error::OutsideDomain("probe must lie outside the closed domain"));
    }
    let sig = ctx.sig;
    let m = sig.slice_dim();
    let q = sig.q() as i32;
    let sq = sphere_area(sig.q() - 1);
    let (z, zbar) = targets(x_l);
    let eta = ctx.eta_of(x_l);
    let dbar = DiracStem::new(g, ctx.fd_step);
    let nodes = ctx.quad.volume();
    let hs: Vec<SlicePair> = nodes
        .iter()
        .map(|n| dbar.eval(&n.point).scaled(n.point[m - 1].abs().powi(1 - q)))
        .collect();
    let mut inner = Multivector::zero(sig);
    let (mut phi2, mut h2) = (0.0, 0.0);
    for (omega, w) in ctx.hemisphere.iter() {
        for side in [omega.clone(), omega.neg()] {
            let c = KernelCoefficients::new(&eta, &side);
            for (node, h) in nodes.iter().zip(&hs) {
                let wt = w * node.weight * node.point[m - 1].powi(q - 1);
                // conj(φ) = 𝓔_y(x_l) / σ_{q-1}
                let mut e = Multivector::zero(sig);
                e.add_product(1.0 / sq, &c.alpha, &slice_kernel(&diff(&node.point, &z), &side));
                e.add_product(1.0 / sq, &c.beta, &slice_kernel(&diff(&node.point, &zbar), &side));
                let hv = h.at(&side);
                inner.add_product(wt, &e, &hv);
                phi2 += wt * e.norm_sq();
                h2 += wt * hv.norm_sq();
            }
        }
    }
    let num = inner.norm();
    let den = (phi2 * h2).sqrt();
    if den == 0.0 {
        return Err(Error::ZeroDivisor);
    }
    Ok(num / den)
}
