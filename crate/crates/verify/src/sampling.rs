//! Seeded sample points, directions and test functions.

use std::sync::Arc;

use gps_core::catalogue::{Bumped, Constant, KernelSection, LinearMonogenic, Quadratic, X0Squared};
use gps_core::stem::StemFunction;
use gps_core::{Direction, MirroredBallDomain, Multivector, Signature, SplitPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
    sig: Signature,
    domain: MirroredBallDomain,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64, sig: Signature, domain: MirroredBallDomain) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, sig, domain }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn multivector(&mut self) -> Multivector {
        let c: Vec<f64> = (0..self.sig.dim()).map(|_| self.rng.gen_range(-1.0..1.0)).collect();
        Multivector::from_coeffs(self.sig, &c).expect("finite coefficients")
    }

    fn unit(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.rng.gen_range(-1.0..1.0)).collect();
            let n2: f64 = v.iter().map(|c| c * c).sum();
            if n2 > 0.01 && n2 <= 1.0 {
                let n = n2.sqrt();
                return v.iter().map(|c| c / n).collect();
            }
        }
    }

    pub fn direction(&mut self) -> Direction {
        let v = self.unit(self.sig.q());
        Direction::new(self.sig, &v).expect("unit vector")
    }

    fn on_slice(&self, s: &[f64], eta: &Direction) -> SplitPoint {
        let m = s.len();
        SplitPoint::on_slice(&s[..m - 1], s[m - 1], eta).expect("finite point")
    }

    /// A point of `Ω_D` at depth at least `margin·ρ`.
    pub fn interior(&mut self, margin: f64) -> SplitPoint {
        let c = self.domain.slice_center();
        let rho = self.domain.rho();
        let u = self.unit(c.len());
        let t = self.rng.gen_range(0.0..1.0 - margin);
        let s: Vec<f64> = c.iter().zip(&u).map(|(a, b)| a + rho * t * b).collect();
        let eta = self.direction();
        self.on_slice(&s, &eta)
    }

    /// A point outside `Ω̄_D` at slice distance in `[lo, hi]·ρ` from the boundary.
    pub fn exterior(&mut self, lo: f64, hi: f64) -> SplitPoint {
        let c = self.domain.slice_center();
        let rho = self.domain.rho();
        let u = self.unit(c.len());
        let t = 1.0 + self.rng.gen_range(lo..hi);
        let s: Vec<f64> = c.iter().zip(&u).map(|(a, b)| a + rho * t * b).collect();
        let eta = self.direction();
        self.on_slice(&s, &eta)
    }

    pub fn boundary(&mut self) -> SplitPoint {
        let nu = self.unit(self.domain.slice_dim());
        let eta = self.direction();
        self.domain.boundary_point(&nu, &eta).expect("unit normal")
    }

    /// A point with `x_p` in the unit box and `|x_q|` in `[0.5, 3]`.
    pub fn generic(&mut self) -> SplitPoint {
        let xp: Vec<f64> = (0..=self.sig.p()).map(|_| self.rng.gen_range(-1.0..1.0)).collect();
        let r = self.rng.gen_range(0.5..3.0);
        let eta = self.direction();
        SplitPoint::on_slice(&xp, r, &eta).expect("finite point")
    }
}

pub struct Entry {
    pub name: &'static str,
    pub stem: Arc<dyn StemFunction>,
    pub monogenic: bool,
}

/// The closed-form test functions, with coefficients drawn from `sampler`.
pub fn catalogue(sampler: &mut Sampler) -> Vec<Entry> {
    let sig = sampler.sig;
    let domain = sampler.domain.clone();
    let c = sampler.multivector();
    let quad = Quadratic { a: sampler.multivector(), b: sampler.multivector(), c: sampler.multivector() };
    let mut xp = domain.center_p().to_vec();
    xp[0] += 1.75 * domain.rho();
    let mut xq = vec![0.0; sig.q()];
    xq[sig.q() - 1] = domain.r0();
    let source = SplitPoint::new(sig, &xp, &xq).expect("finite source");
    let bump_c = sampler.multivector();
    vec![
        Entry { name: "constant", stem: Arc::new(Constant(c.clone())), monogenic: true },
        Entry { name: "linear", stem: Arc::new(LinearMonogenic(c)), monogenic: true },
        Entry {
            name: "kernel_section",
            stem: Arc::new(KernelSection::new(&source).expect("source off the real axis")),
            monogenic: true,
        },
        Entry { name: "x0_squared", stem: Arc::new(X0Squared(sig)), monogenic: false },
        Entry { name: "quadratic", stem: Arc::new(quad), monogenic: false },
        Entry {
            name: "bumped_linear",
            stem: Arc::new(Bumped::new(LinearMonogenic(bump_c), &domain, 2).expect("power 2")),
            monogenic: false,
        },
    ]
}

pub fn find<'a>(entries: &'a [Entry], name: &str) -> &'a Entry {
    entries.iter().find(|e| e.name == name).expect("catalogue entry")
}
