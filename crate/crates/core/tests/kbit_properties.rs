use dlog2k::oracle::{brute_force_order, extended_gcd_inverse, SplitMix64};
use dlog2k::{Residue, Width};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(x: &Residue) -> BigUint {
    let bytes: Vec<u8> = x.limbs().iter().flat_map(|l| l.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

fn modulus(k: u32) -> BigUint {
    BigUint::from(1u8) << k as usize
}

prop_compose! {
    fn residue_at(k: u32)(limbs in prop::collection::vec(any::<u64>(), k.div_ceil(64) as usize)) -> Residue {
        Residue::from_limbs(Width::new(k).unwrap(), &limbs)
    }
}

prop_compose! {
    fn pair_of_residues()(k in 3u32..=600)
        (a in residue_at(k), b in residue_at(k), j in 3u32..=k) -> (Residue, Residue, Width) {
        (a, b, Width::new(j).unwrap())
    }
}

proptest! {
    #[test]
    fn add_and_mul_match_big_integers((a, b, _) in pair_of_residues()) {
        let m = modulus(a.width().get());
        prop_assert_eq!(big(&a.add(&b).unwrap()), (big(&a) + big(&b)) % &m);
        prop_assert_eq!(big(&a.mul(&b).unwrap()), (big(&a) * big(&b)) % &m);
        prop_assert_eq!(big(&a.sub(&b).unwrap()), (big(&a) + &m - big(&b)) % &m);
    }

    #[test]
    fn pow_matches_big_integers(a in (3u32..=300).prop_flat_map(residue_at), e in any::<u64>()) {
        let m = modulus(a.width().get());
        prop_assert_eq!(big(&a.pow(e)), big(&a).modpow(&BigUint::from(e), &m));
    }

    #[test]
    fn digit_inheritance((a, b, j) in pair_of_residues(), e in 0u64..10_000) {
        let t = |x: &Residue| x.truncate(j).unwrap();
        prop_assert_eq!(t(&a.add(&b).unwrap()), t(&a).add(&t(&b)).unwrap());
        prop_assert_eq!(t(&a.mul(&b).unwrap()), t(&a).mul(&t(&b)).unwrap());
        prop_assert_eq!(t(&a.pow(e)), t(&a).pow(e));
    }

    #[test]
    fn negation_laws(a in (3u32..=600).prop_flat_map(residue_at)) {
        prop_assert_eq!(a.neg().neg(), a.clone());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn inverse_laws(a in (3u32..=2048).prop_flat_map(residue_at)) {
        let a = if a.is_odd() { a } else { a.add(&Residue::one(a.width())).unwrap() };
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).unwrap().is_one());
        prop_assert_eq!(inv.inverse().unwrap(), a.clone());
        prop_assert_eq!(inv, extended_gcd_inverse(&a).unwrap());
    }

    #[test]
    fn hex_text_round_trip(a in (3u32..=1024).prop_flat_map(residue_at)) {
        let back = Residue::from_hex(a.width(), &a.to_hex()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn inverse_matches_extended_gcd_exhaustively() {
    for k in 3..=12 {
        let w = Width::new(k).unwrap();
        for a in (1..1u64 << k).step_by(2) {
            let a = Residue::from_u64(w, a);
            assert_eq!(
                a.inverse().unwrap(),
                extended_gcd_inverse(&a).unwrap(),
                "k={k} a={a}"
            );
        }
    }
}

#[test]
fn inverse_matches_extended_gcd_at_large_widths() {
    let mut rng = SplitMix64::new(42);
    for k in [13, 64, 65, 127, 1000, 4096] {
        let w = Width::new(k).unwrap();
        for _ in 0..50 {
            let a = rng.odd_residue(w);
            assert_eq!(a.inverse().unwrap(), extended_gcd_inverse(&a).unwrap());
        }
    }
}

#[test]
fn odd_orders_divide_two_to_k_minus_two() {
    for k in 3..=10 {
        let w = Width::new(k).unwrap();
        let group_exponent = 1u64 << (k - 2);
        for a in (1..1u64 << k).step_by(2) {
            let a = Residue::from_u64(w, a);
            assert!(a.pow(group_exponent).is_one());
            let order = brute_force_order(&a).unwrap();
            assert_eq!(group_exponent % order, 0);
            assert_eq!(dlog2k::multiplicative_order(&a).unwrap(), order);
        }
    }
}

#[test]
fn pow_by_repeated_multiplication() {
    let w = Width::new(5).unwrap();
    let three = Residue::from_u64(w, 3);
    let mut acc = Residue::one(w);
    for e in 0..40 {
        assert_eq!(three.pow(e), acc);
        acc = acc.mul(&three).unwrap();
    }
    assert_eq!(three.pow(6).to_u64(), Some(729 % 32));
}
