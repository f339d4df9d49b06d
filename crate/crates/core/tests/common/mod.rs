#![allow(dead_code)]

use gps_core::catalogue::*;
use gps_core::stem::{Induced, StemFunction};
use gps_core::{Direction, MirroredBallDomain, Multivector, Signature, SplitPoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn sig() -> Signature {
    Signature::new(1, 2).unwrap()
}

pub fn domain() -> MirroredBallDomain {
    MirroredBallDomain::new(&[0.0, 0.0], 2.0, 1.0).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_mv(sig: Signature, rng: &mut ChaCha8Rng) -> Multivector {
    let c: Vec<f64> = (0..sig.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Multivector::from_coeffs(sig, &c).unwrap()
}

pub fn random_direction(sig: Signature, rng: &mut ChaCha8Rng) -> Direction {
    loop {
        let v: Vec<f64> = (0..sig.q()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n: f64 = v.iter().map(|c| c * c).sum();
        if n > 0.05 && n <= 1.0 {
            return Direction::new(sig, &v).unwrap();
        }
    }
}

/// A point of `Ω_D` at depth at least `margin·ρ`.
pub fn interior_point(domain: &MirroredBallDomain, sig: Signature, margin: f64, rng: &mut ChaCha8Rng) -> SplitPoint {
    let c = domain.slice_center();
    let m = c.len();
    loop {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1.0 - margin || n < 1e-3 {
            continue;
        }
        let s: Vec<f64> = c.iter().zip(&v).map(|(a, b)| a + domain.rho() * b).collect();
        let eta = random_direction(sig, rng);
        return SplitPoint::on_slice(&s[..m - 1], s[m - 1], &eta).unwrap();
    }
}

/// A point outside `Ω̄_D` at slice distance `dist` from the boundary.
pub fn exterior_point(domain: &MirroredBallDomain, sig: Signature, dist: f64, rng: &mut ChaCha8Rng) -> SplitPoint {
    let c = domain.slice_center();
    let m = c.len();
    let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let s: Vec<f64> = c.iter().zip(&v).map(|(a, b)| a + (domain.rho() + dist) * b / n).collect();
    let eta = random_direction(sig, rng);
    SplitPoint::on_slice(&s[..m - 1], s[m - 1], &eta).unwrap()
}

pub fn random_boundary_point(domain: &MirroredBallDomain, sig: Signature, rng: &mut ChaCha8Rng) -> SplitPoint {
    let nu: Vec<f64> = (0..domain.slice_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    domain.boundary_point(&nu, &random_direction(sig, rng)).unwrap()
}

/// Every closed-form stem, with whether it is monogenic.
pub fn catalogue(sig: Signature, seed: u64) -> Vec<(&'static str, Arc<dyn StemFunction>, bool)> {
    let mut r = rng(seed);
    let c = random_mv(sig, &mut r);
    let source = SplitPoint::new(sig, &[1.75, 0.1], &[0.0, 2.0]).unwrap();
    let quad = Quadratic { a: random_mv(sig, &mut r), b: random_mv(sig, &mut r), c: random_mv(sig, &mut r) };
    vec![
        ("constant", Arc::new(Constant(c.clone())), true),
        ("linear", Arc::new(LinearMonogenic(c.clone())), true),
        ("kernel_section", Arc::new(KernelSection::new(&source).unwrap()), true),
        ("x0_squared", Arc::new(X0Squared(sig)), false),
        ("r_squared", Arc::new(RSquared(sig)), false),
        ("quadratic", Arc::new(quad), false),
        ("bumped_linear", Arc::new(Bumped::new(LinearMonogenic(c), &domain(), 3).unwrap()), false),
    ]
}

pub fn induced(stem: &Arc<dyn StemFunction>) -> Induced<Arc<dyn StemFunction>> {
    Induced(stem.clone())
}

pub fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(1e-300)
}
