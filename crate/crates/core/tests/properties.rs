use mixtwist::algebra::{mat_inverse, mat_mul, mixed_affine_plane, points_mixed};
use mixtwist::fields::{tits_endomorphism, visible_f2n, Field, FiniteField, FunctionField, MixedField};
use mixtwist::groups::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn inseparable() -> MixedField<FunctionField, FunctionField> {
    MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tits_squares_to_frobenius(p in prop::sample::select(vec![2u64, 3]), half in 0u32..3) {
        let f = FiniteField::new(p, 2 * half + 1).unwrap();
        let b = tits_endomorphism(&f).unwrap();
        for x in f.enumerate().unwrap() {
            prop_assert_eq!(b.theta(&b.theta(&x)), f.frobenius(&x));
        }
    }

    #[test]
    fn mixed_composites_are_frobenius(seed: u64) {
        let m = inseparable();
        let mut r = rng(seed);
        let (x, y) = (m.k.sample(&mut r), m.l.sample(&mut r));
        prop_assert_eq!(m.lambda(&m.kappa(&x)), m.k.frobenius(&x));
        prop_assert_eq!(m.kappa(&m.lambda(&y)), m.l.frobenius(&y));
    }

    #[test]
    fn function_field_results_are_normalized(seed: u64) {
        let l = FunctionField::new(3, &["s", "t"]).unwrap();
        let mut r = rng(seed);
        let (x, y) = (l.sample(&mut r), l.sample_nonzero(&mut r));
        for z in [l.add(&x, &y), l.mul(&x, &y), l.div(&x, &y).unwrap(), l.sub(&x, &x)] {
            prop_assert!(l.is_normalized(&z));
        }
    }

    #[test]
    fn squares_have_square_roots(seed: u64) {
        let l = FunctionField::new(2, &["s", "t"]).unwrap();
        let x = l.sample(&mut rng(seed));
        let x2 = l.square(&x);
        let w = l.sqrt(&x2).unwrap().expect("x^2 is a square");
        prop_assert_eq!(l.square(&w), x2);
    }

    #[test]
    fn bruhat_round_trip_and_form(seed: u64, len in 1usize..10, kind in prop::sample::select(vec![GroupType::B, GroupType::C, GroupType::G2])) {
        let f = FiniteField::new(kind.characteristic() as u64, 3).unwrap();
        let g = GroupSpec::new(kind, 2, f).unwrap();
        let x = g.random_element(&mut rng(seed), len);
        prop_assert!(g.preserves_form(&x));
        let form = bruhat_decompose(&x, &g).unwrap();
        prop_assert_eq!(g.assemble(&form).unwrap(), x);
    }

    #[test]
    fn b_to_c_isogeny_is_multiplicative(seed: u64) {
        let b = GroupSpec::new(GroupType::B, 2, FiniteField::new(2, 3).unwrap()).unwrap();
        let mut r = rng(seed);
        let (x, y) = (b.random_element(&mut r, 6), b.random_element(&mut r, 6));
        prop_assert!(is_multiplicative_b_to_c(&b, &x, &y).unwrap());
    }

    #[test]
    fn mixed_membership_is_a_subgroup_predicate(seed: u64, kind in prop::sample::select(vec![GroupType::B, GroupType::C])) {
        let ms = MixedGroupSpec::new(kind, 2, inseparable()).unwrap();
        let f = &ms.group.field;
        let mut r = rng(seed);
        let x = ms.random_word_with(&mut r, 4).unwrap();
        let y = ms.random_word_with(&mut r, 4).unwrap();
        prop_assert!(mixed_membership(&mat_mul(f, &x, &y), &ms).unwrap());
        prop_assert!(mixed_membership(&mat_inverse(f, &x).unwrap(), &ms).unwrap());
        let z = ms.perturb(&x, &mut r).unwrap();
        prop_assert!(!mixed_membership(&z, &ms).unwrap());
        if kind == GroupType::B {
            prop_assert!(mixed_membership_matrix(&x, &ms).unwrap());
            prop_assert!(!mixed_membership_matrix(&z, &ms).unwrap());
        }
    }

    #[test]
    fn torus_samples_close_up(seed: u64) {
        let m = inseparable();
        let t = mixed_torus(&m, &m.l.var(1)).unwrap();
        let mut r = rng(seed);
        let (x, y) = (t.sample_member(&mut r).unwrap(), t.sample_member(&mut r).unwrap());
        prop_assert!(t.contains(&t.multiply(&x, &y)).unwrap());
        prop_assert!(t.contains(&t.invert(&x).unwrap()).unwrap());
        prop_assert!(t.composite_is_square(&x));
    }

    #[test]
    fn exotic_agrees_with_mixed(seed: u64) {
        let ms = MixedGroupSpec::new(GroupType::C, 2, inseparable()).unwrap();
        prop_assert!(exotic_agreement(&ms, 2, 6, seed).unwrap().all_agree());
    }
}

#[test]
fn mixed_plane_characterizations_agree() {
    for n in 1..=3 {
        let r = mixed_affine_plane(&visible_f2n(n).unwrap()).unwrap();
        let pts = points_mixed(&r).unwrap();
        assert!(pts.agree());
        assert_eq!(pts.pairs.len(), 1 << (2 * n));
    }
}
