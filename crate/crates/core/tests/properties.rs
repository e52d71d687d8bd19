use proptest::prelude::*;

use morphic::tml::identity;
use morphic::{
    abelian_complexity, additive_complexity, automatic_letter, code, digit_sum, letter_shift,
    mirror, parikh, subword_complexity, tau, Alphabet, Coding, FixedPointStream, Morphism, Word,
};

fn ternary_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 0..max_len)
        .prop_map(|s| Word::new(Alphabet::ternary(), s).unwrap())
}

fn counts(u: &Word) -> [i64; 3] {
    let p = parikh(u);
    [p.get(0) as i64, p.get(1) as i64, p.get(2) as i64]
}

proptest! {
    #[test]
    fn mirror_and_tau_are_involutions(u in ternary_word(40), c in 0u8..3) {
        prop_assert_eq!(mirror(&mirror(&u)), u.clone());
        prop_assert_eq!(tau(c, &tau(c, &u).unwrap()).unwrap(), u.clone());
        prop_assert_eq!(parikh(&mirror(&u)), parikh(&u));
    }

    #[test]
    fn tau_fixes_its_letter(u in ternary_word(40), c in 0u8..3) {
        let v = tau(c, &u).unwrap();
        prop_assert_eq!(v.count(c), u.count(c));
        let (a, b) = ((c + 1) % 3, (c + 2) % 3);
        prop_assert_eq!(v.count(a), u.count(b));
    }

    #[test]
    fn letter_shift_round_trip(x in 0u8..3) {
        prop_assert_eq!(letter_shift(letter_shift(x, 1), -1), x);
        prop_assert_eq!(letter_shift(letter_shift(letter_shift(x, 1), 1), 1), x);
    }

    #[test]
    fn parikh_total_is_length(u in ternary_word(60)) {
        prop_assert_eq!(parikh(&u).total(), u.len() as u64);
    }

    #[test]
    fn digit_sum_from_counts(u in ternary_word(60)) {
        let [c0, _, c2] = counts(&u);
        prop_assert_eq!(digit_sum(&u, &identity()).unwrap(), u.len() as i64 + c2 - c0);
    }

    #[test]
    fn image_count_differences(u in ternary_word(60)) {
        let s = Morphism::tml().apply(&u).unwrap();
        let [u0, u1, u2] = counts(&u);
        let [s0, s1, s2] = counts(&s);
        prop_assert_eq!(s2 - s0, u1 - u0);
        prop_assert_eq!(s1 - s0, u1 - u2);
    }

    #[test]
    fn digit_sum_is_inner_product(u in ternary_word(60), vals in prop::collection::vec(-5i64..6, 3)) {
        let coding = Coding::new(Alphabet::ternary(), vals.clone()).unwrap();
        let [c0, c1, c2] = counts(&u);
        let expected = vals[0] * c0 + vals[1] * c1 + vals[2] * c2;
        prop_assert_eq!(digit_sum(&u, &coding).unwrap(), expected);
        prop_assert_eq!(coding.inner(&parikh(&u)), expected);
        let coded = code(&coding, &u).unwrap();
        prop_assert_eq!(coded.len(), u.len());
    }

    #[test]
    fn prefix_self_similarity(k in 1usize..2000) {
        let t = FixedPointStream::tml();
        let p = t.prefix(k).unwrap();
        let img = Morphism::tml().apply(&p).unwrap();
        prop_assert_eq!(img, t.prefix(2 * k).unwrap());
    }

    #[test]
    fn automatic_letter_is_popcount_mod_3(i in any::<u64>()) {
        let t = FixedPointStream::tml();
        prop_assert_eq!(automatic_letter(t.morphism(), 0, i).unwrap(), (i.count_ones() % 3) as u8);
    }

    #[test]
    fn complexity_chain(n in 1usize..48) {
        for seq in [FixedPointStream::tml(), FixedPointStream::sigma3()] {
            let id = Coding::identity(seq.alphabet().clone()).unwrap();
            let plus = additive_complexity(&seq, &id, n).unwrap();
            let ab = abelian_complexity(&seq, n).unwrap();
            let rho = subword_complexity(&seq, n).unwrap();
            prop_assert!(plus <= ab && ab <= rho, "n={}: {} {} {}", n, plus, ab, rho);
        }
    }
}

#[test]
fn sixth_power_images_are_balanced() {
    // The 64 letters of σ^6(x) split 21/21/22 in some order.
    let s = Morphism::tml();
    for x in 0..3u8 {
        let w = s
            .iterate(&Word::new(Alphabet::ternary(), vec![x]).unwrap(), 6)
            .unwrap();
        let [c0, c1, c2] = counts(&w);
        assert_eq!(c0 + c1 + c2, 64);
        assert!((c0 - c1).abs() <= 1 && (c1 - c2).abs() <= 1 && (c0 - c2).abs() <= 1);
    }
}
