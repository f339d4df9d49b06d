mod common;

use common::*;
use gps_core::catalogue::*;
use gps_core::ops::*;
use gps_core::stem::*;
use gps_core::{Direction, Multivector, Signature, SplitPoint};
use proptest::prelude::*;

fn mv() -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-1.0f64..1.0, 8).prop_map(|c| Multivector::from_coeffs(sig(), &c).unwrap())
}

fn direction() -> impl Strategy<Value = Direction> {
    (0.0f64..std::f64::consts::TAU).prop_map(|t| Direction::new(sig(), &[t.cos(), t.sin()]).unwrap())
}

fn quadratic() -> impl Strategy<Value = Quadratic> {
    (mv(), mv(), mv()).prop_map(|(a, b, c)| Quadratic { a, b, c })
}

/// Slice offset from the ball centre, as (unit direction, relative radius).
fn offset() -> impl Strategy<Value = ([f64; 3], f64)> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU, 0.0f64..0.9).prop_map(|(th, ph, t)| {
        ([th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()], t)
    })
}

fn point(off: &([f64; 3], f64), eta: &Direction) -> SplitPoint {
    let (v, t) = off;
    SplitPoint::on_slice(&[t * v[0], t * v[1]], 2.0 + t * v[2], eta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn representation_formula(q in quadratic(), off in offset(), eta in direction(), omega in direction()) {
        let f = Induced(q);
        let x = point(&off, &omega);
        let res = representation_residual(&f, &x, &eta).unwrap();
        prop_assert!(res < 1e-12 * (1.0 + f.eval(&x).max_abs()));
    }

    #[test]
    fn projections_sum_to_identity(q in quadratic(), nu in offset(), eta in direction()) {
        let ctx = OperatorContext::new(sig(), domain(), 2).unwrap();
        let f = Induced(q);
        let x = ctx.domain().boundary_point(&nu.0, &eta).unwrap();
        let sum = plemelj_p(&ctx, &f, &x).unwrap() + plemelj_q(&ctx, &f, &x).unwrap();
        let u = f.eval(&x);
        prop_assert!(sum.distance(&u) <= 4.0 * f64::EPSILON * (1.0 + u.max_abs()));
    }

    #[test]
    fn cauchy_integral_reproduces_linear_monogenic(c in mv(), off in offset(), eta in direction()) {
        let ctx = OperatorContext::new(sig(), domain(), 4).unwrap();
        let f = Induced(LinearMonogenic(c));
        let x = point(&off, &eta);
        let want = f.eval(&x);
        prop_assert!(cauchy_boundary_f(&ctx, &f, &x).unwrap().distance(&want) < 1e-7 * (1.0 + want.max_abs()));
    }

    #[test]
    fn teodorescu_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0, q in quadratic(), off in offset(), eta in direction()) {
        let ctx = OperatorContext::new(sig(), domain(), 2).unwrap();
        let f = Induced(q);
        let g = Induced(X0Squared(sig()));
        let x = point(&off, &eta);
        let combo = RawSlice::new(sig(), |s: &[f64], w: &Direction| &f.eval_at(s, w) * a + &g.eval_at(s, w) * b);
        let lhs = teodorescu_full(&ctx, &combo, &x).unwrap();
        let rhs = &teodorescu_full(&ctx, &f, &x).unwrap() * a + &teodorescu_full(&ctx, &g, &x).unwrap() * b;
        prop_assert!(lhs.distance(&rhs) < 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn inner_product_is_hermitian(p in quadratic(), q in quadratic()) {
        let ctx = OperatorContext::new(sig(), domain(), 2).unwrap();
        let (f, g) = (Induced(p), Induced(q));
        let fg = inner_product(&ctx, &f, &g);
        let gf = inner_product(&ctx, &g, &f);
        prop_assert!(fg.distance(&gf.conj()) < 1e-12 * (1.0 + fg.max_abs()));
        prop_assert!(inner_product(&ctx, &f, &f).scalar_part() >= 0.0);
    }

    #[test]
    fn kernel_is_monogenic_for_other_signatures(p in 1usize..=2, q in 2usize..=3, t in 0.5f64..1.5) {
        let sig = Signature::new(p, q).unwrap();
        let mut yq = vec![0.0; q];
        yq[0] = 1.5;
        let y = SplitPoint::new(sig, &vec![0.1; p + 1], &yq).unwrap();
        let mut xq = vec![0.3; q];
        xq[q - 1] = 1.0 + t;
        let x = SplitPoint::new(sig, &vec![-0.2; p + 1], &xq).unwrap();
        let res = vartheta_of(|z| gps_core::kernels::gps_cauchy_kernel(&y, z), &x, 1e-4).unwrap();
        let scale = gps_core::kernels::gps_cauchy_kernel(&y, &x).unwrap().max_abs();
        prop_assert!(res.max_abs() < 1e-6 * scale);
    }
}
