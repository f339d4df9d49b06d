use gps_core::clifford::grade;
use gps_core::{Error, Multivector, Signature};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=3, 2usize..=3).prop_map(|(p, q)| Signature::new(p, q).unwrap())
}

fn element(sig: Signature) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-2.0f64..2.0, sig.dim()).prop_map(move |c| Multivector::from_coeffs(sig, &c).unwrap())
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    signature().prop_flat_map(|sig| (element(sig), element(sig), element(sig)))
}

fn paravector() -> impl Strategy<Value = Multivector> {
    signature().prop_flat_map(|sig| {
        prop::collection::vec(-2.0f64..2.0, sig.n() + 1)
            .prop_filter("nonzero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-3)
            .prop_map(move |v| Multivector::paravector(sig, &v).unwrap())
    })
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    a.distance(b) <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}

proptest! {
    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12));
    }

    #[test]
    fn product_distributes((a, b, c) in triple()) {
        prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), 1e-12));
        prop_assert!(close(&(&(&a + &b) * &c), &(&(&a * &c) + &(&b * &c)), 1e-12));
    }

    #[test]
    fn conjugation_and_reversion_are_anti_automorphisms((a, b, _) in triple()) {
        let ab = &a * &b;
        prop_assert!(close(&ab.conj(), &(&b.conj() * &a.conj()), 1e-12));
        prop_assert!(close(&ab.rev(), &(&b.rev() * &a.rev()), 1e-12));
        prop_assert!(close(&ab.involute(), &(&a.involute() * &b.involute()), 1e-12));
    }

    #[test]
    fn involutions_square_to_identity((a, _, _) in triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.rev().rev(), a.clone());
        prop_assert!(close(&a.conj(), &a.rev().involute(), 0.0));
    }

    #[test]
    fn scalar_part_of_a_times_conj_is_norm((a, _, _) in triple()) {
        let s: f64 = a.coeffs().iter().map(|c| c * c).sum();
        prop_assert!(((&a * &a.conj()).scalar_part() - s).abs() <= 1e-12 * (1.0 + s));
        prop_assert!((a.norm_sq() - s).abs() <= 1e-12 * (1.0 + s));
    }

    #[test]
    fn paravector_inverse_is_two_sided(x in paravector()) {
        let inv = x.paravector_inverse().unwrap();
        let one = Multivector::scalar(x.signature(), 1.0);
        prop_assert!(close(&(&x * &inv), &one, 1e-12));
        prop_assert!(close(&(&inv * &x), &one, 1e-12));
    }

    #[test]
    fn paravector_norm_is_multiplicative(x in paravector(), seed in 0u64..1000) {
        let sig = x.signature();
        let v: Vec<f64> = (0..=sig.n()).map(|i| ((seed + 7 * i as u64) % 13) as f64 / 6.0 - 1.0).collect();
        let y = Multivector::paravector(sig, &v).unwrap();
        let xy = &x * &y;
        prop_assert!((xy.norm() - x.norm() * y.norm()).abs() <= 1e-12 * (1.0 + xy.norm()));
    }
}

#[test]
fn generators_anticommute_exactly() {
    for (p, q) in [(1, 2), (2, 3), (3, 5), (1, 11)] {
        let sig = Signature::new(p, q).unwrap();
        let n = sig.n();
        for i in 1..=n {
            for j in 1..=n {
                let ei = Multivector::generator(sig, i).unwrap();
                let ej = Multivector::generator(sig, j).unwrap();
                let s = &(&ei * &ej) + &(&ej * &ei);
                let want = Multivector::scalar(sig, if i == j { -2.0 } else { 0.0 });
                assert_eq!(s, want, "e{i} e{j} in R_{n}");
            }
        }
    }
}

#[test]
fn conjugation_signs_follow_grade() {
    let sig = Signature::new(2, 2).unwrap();
    for mask in 0..sig.dim() {
        let b = Multivector::blade(sig, mask).unwrap();
        let k = grade(mask);
        let conj = if matches!(k % 4, 0 | 3) { 1.0 } else { -1.0 };
        let rev = if matches!(k % 4, 0 | 1) { 1.0 } else { -1.0 };
        assert_eq!(b.conj(), &b * conj);
        assert_eq!(b.rev(), &b * rev);
    }
}

#[test]
fn large_algebra_uses_the_same_signs() {
    // n = 12 exceeds the sign table; products still satisfy the relations.
    let sig = Signature::new(2, 10).unwrap();
    let a = Multivector::blade(sig, 0b1010_0110_0101).unwrap();
    let b = Multivector::blade(sig, 0b0110_1001_1100).unwrap();
    let c = Multivector::blade(sig, 0b1111_0000_1111).unwrap();
    assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    assert!(((&a * &a.conj()).scalar_part() - 1.0).abs() < 1e-15);
}

#[test]
fn invalid_inputs_are_errors() {
    assert!(matches!(Signature::new(0, 2), Err(Error::InvalidSignature { .. })));
    assert!(matches!(Signature::new(1, 1), Err(Error::InvalidSignature { .. })));
    assert!(matches!(Signature::new(6, 7), Err(Error::InvalidSignature { .. })));
    let sig = Signature::new(1, 2).unwrap();
    assert!(Multivector::from_coeffs(sig, &[1.0; 5]).is_err());
    assert!(matches!(Multivector::from_coeffs(sig, &[f64::NAN; 8]), Err(Error::NonFinite)));
    assert!(matches!(Multivector::paravector(sig, &[0.0; 4]).unwrap().paravector_inverse(), Err(Error::ZeroDivisor)));
    let bivector = Multivector::blade(sig, 0b011).unwrap();
    assert!(matches!(bivector.paravector_inverse(), Err(Error::NotParavector)));
    let other = Multivector::scalar(Signature::new(1, 3).unwrap(), 1.0);
    assert!(matches!(bivector.geometric_product(&other), Err(Error::SignatureMismatch)));
}
