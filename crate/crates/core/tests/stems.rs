mod common;

use common::*;
use gps_core::catalogue::*;
use gps_core::stem::*;
use gps_core::{Direction, Error, Multivector, SplitPoint};
use rand::Rng;

#[test]
fn representation_formula_holds_for_every_stem() {
    let sig = sig();
    let mut r = rng(7);
    for (name, stem, _) in catalogue(sig, 3) {
        let f = induced(&stem);
        for _ in 0..200 {
            let xp = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
            let x = SplitPoint::on_slice(&xp, r.gen_range(1.2..2.8), &random_direction(sig, &mut r)).unwrap();
            let eta = random_direction(sig, &mut r);
            let scale = 1.0 + f.eval(&x).max_abs();
            let res = representation_residual(&f, &x, &eta).unwrap();
            assert!(res < 1e-12 * scale, "{name}: residual {res:e}");

            let (w1, w2) = (random_direction(sig, &mut r), random_direction(sig, &mut r));
            if (w1.vector() - w2.vector()).norm() < 1e-2 {
                continue;
            }
            let two = representation_eval(&f, &x, &w1, &w2).unwrap();
            assert!(two.distance(&f.eval(&x)) < 1e-11 * scale, "{name}: two-direction form");
        }
    }
}

#[test]
fn representation_needs_distinct_directions() {
    let sig = sig();
    let f = Induced(X0Squared(sig));
    let w = Direction::new(sig, &[0.0, 1.0]).unwrap();
    let x = SplitPoint::new(sig, &[0.2, 0.1], &[1.0, 1.0]).unwrap();
    assert!(matches!(representation_eval(&f, &x, &w, &w), Err(Error::ZeroDivisor)));
}

#[test]
fn monogenic_catalogue_solves_the_cauchy_riemann_system() {
    let sig = sig();
    let mut r = rng(11);
    for (name, stem, monogenic) in catalogue(sig, 5) {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let s = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(1.2..2.8)];
            worst = worst.max(cr_residual(&stem, &s, 1e-5).max_abs() / (1.0 + stem.eval(&s).max_abs()));
        }
        if monogenic {
            assert!(worst < 1e-12, "{name}: {worst:e}");
        } else {
            assert!(worst > 1e-3, "{name} should not be monogenic");
        }
    }
}

#[test]
fn analytic_jets_match_finite_differences() {
    let sig = sig();
    let mut r = rng(13);
    for (name, stem, _) in catalogue(sig, 9) {
        for _ in 0..20 {
            let s = [r.gen_range(-0.8..0.8), r.gen_range(-0.8..0.8), r.gen_range(1.3..2.7)];
            let jet = stem.jet(&s).expect("catalogue stems carry jets");
            let fd = stem_jet_fd(&stem, &s, 1e-5);
            for (k, (a, b)) in jet.partials.iter().zip(&fd.partials).enumerate() {
                let err = (&a.a - &b.a).max_abs().max((&a.b - &b.b).max_abs());
                assert!(err < 1e-6 * (1.0 + a.max_abs()), "{name} partial {k}: {err:e}");
            }
        }
    }
}

#[test]
fn dirac_stem_agrees_with_global_operator() {
    let sig = sig();
    let mut r = rng(17);
    for (name, stem, _) in catalogue(sig, 21) {
        let f = induced(&stem);
        let df = Induced(DiracStem::new(stem.clone(), 1e-5));
        for _ in 0..10 {
            let x = SplitPoint::on_slice(
                &[r.gen_range(-0.8..0.8), r.gen_range(-0.8..0.8)],
                r.gen_range(1.3..2.7),
                &random_direction(sig, &mut r),
            )
            .unwrap();
            let want = df.eval(&x);
            let global = apply_vartheta(&f, &x, 1e-4).unwrap();
            let slice = apply_slice_dirac(&f, &x, 1e-4).unwrap();
            let scale = 1.0 + want.max_abs() + f.eval(&x).max_abs();
            assert!(global.distance(&want) < 1e-6 * scale, "{name}: global {:e}", global.distance(&want));
            assert!(slice.distance(&want) < 1e-6 * scale, "{name}: slice {:e}", slice.distance(&want));
        }
    }
}

#[test]
fn vartheta_of_known_functions() {
    let sig = sig();
    let x = SplitPoint::new(sig, &[0.4, -0.3], &[1.2, 1.6]).unwrap();
    let got = apply_vartheta(&Induced(X0Squared(sig)), &x, 1e-4).unwrap();
    assert!(got.distance(&Multivector::scalar(sig, 0.8)) < 1e-8);
    // ϑ̄ |x_q|^2 = 2 x_q.
    let got = apply_vartheta(&Induced(RSquared(sig)), &x, 1e-4).unwrap();
    let want = Multivector::paravector(sig, &[0.0, 0.0, 2.4, 3.2]).unwrap();
    assert!(got.distance(&want) < 1e-8);
}

#[test]
fn parity_is_checked_on_induction() {
    let sig = sig();
    assert!(induce(LinearMonogenic(Multivector::scalar(sig, 1.0))).is_ok());
    struct Odd(gps_core::Signature);
    impl StemFunction for Odd {
        fn signature(&self) -> gps_core::Signature {
            self.0
        }
        fn eval(&self, s: &[f64]) -> SlicePair {
            SlicePair::new(Multivector::scalar(self.0, s[2]), Multivector::zero(self.0))
        }
    }
    assert!(matches!(induce(Odd(sig)), Err(Error::InvalidParameter(_))));
}

#[test]
fn slice_pair_products_follow_the_algebra() {
    let sig = sig();
    let mut r = rng(23);
    let pair = SlicePair::new(random_mv(sig, &mut r), random_mv(sig, &mut r));
    let w = random_direction(sig, &mut r);
    let v = [0.3, -0.7, 1.1];
    let pv = Multivector::paravector(sig, &[v[0], v[1], v[2] * w.coords()[0], v[2] * w.coords()[1]]).unwrap();
    assert!(pair.left_mul(&v).at(&w).distance(&(&pv * &pair.at(&w))) < 1e-14);
    assert!(pair.left_mul_conj(&v).at(&w).distance(&(&pv.conj() * &pair.at(&w))) < 1e-14);
}

#[test]
fn fd_operators_reject_bad_points() {
    let sig = sig();
    let f = Induced(X0Squared(sig));
    let axis = SplitPoint::new(sig, &[0.1, 0.2], &[0.0, 0.0]).unwrap();
    assert!(matches!(apply_vartheta(&f, &axis, 1e-4), Err(Error::OnRealAxis)));
    let near = SplitPoint::new(sig, &[0.1, 0.2], &[1e-4, 0.0]).unwrap();
    assert!(apply_vartheta(&f, &near, 1e-4).is_err());
    let x = SplitPoint::new(sig, &[0.1, 0.2], &[1.0, 0.0]).unwrap();
    assert!(apply_vartheta(&f, &x, 0.0).is_err());
}

#[test]
fn non_slice_functions_have_a_residual() {
    let sig = sig();
    // x_1 · x_{p+1}, a product of coordinates.
    let f = PointField::new(sig, |x: &SplitPoint| Multivector::scalar(x.signature(), x.xp()[1] * x.xq()[0]));
    let x = SplitPoint::new(sig, &[0.3, 0.7], &[0.8, 1.1]).unwrap();
    let eta = Direction::new(sig, &[-0.3, 0.9]).unwrap();
    assert!(representation_residual(&f, &x, &eta).unwrap() > 1e-2);
}

#[test]
fn representation_is_continuous_towards_the_real_axis() {
    let sig = sig();
    let f = Induced(LinearMonogenic(random_mv(sig, &mut rng(3))));
    let w = Direction::new(sig, &[0.6, 0.8]).unwrap();
    let eta = Direction::new(sig, &[-0.8, 0.6]).unwrap();
    for r in [1e-3, 1e-6, 1e-9] {
        let x = SplitPoint::on_slice(&[0.4, -0.2], r, &w).unwrap();
        assert!(representation_residual(&f, &x, &eta).unwrap() < 1e-8);
    }
    let axis = SplitPoint::new(sig, &[0.4, -0.2], &[0.0, 0.0]).unwrap();
    assert!(representation_residual(&f, &axis, &eta).unwrap() < 1e-8);
}
