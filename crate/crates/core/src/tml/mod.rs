//! Facts about `t = σ^∞(0)`, `σ: 0 → 01, 1 → 12, 2 → 20`, each with an
//! exhaustive or range-bounded verifier.

mod digit_sums;
mod symmetry;
mod witness;

pub use digit_sums::{
    left_shift_times, right_shift_times, shift_scan, verify_ds_bounds, verify_ivp_small,
    verify_shift_scan, verify_subword_recurrence, verify_tech_lemma, verify_theorem1, ShiftScan,
    ShiftStep,
};
pub use symmetry::{
    verify_dc_counts, verify_mirror_closure, verify_sandwich, verify_sigma_tau_commutation,
};
pub use witness::{
    locate_in_t, verify_prefix_suffix_lemma, verify_witness, witness, WitnessDecomposition,
};

use crate::coding::Coding;
use crate::error::{domain, Result};
use crate::morphism::Morphism;
use crate::stream::FixedPointStream;
use crate::word::{Alphabet, Letter};
use crate::{complexity, floor_log2};

/// `d_k` for `k ≥ -1`: period 6, `0` for `k ≡ 3,4`, `1` for `k ≡ 1,2`,
/// `2` for `k ≡ 0,5 (mod 6)`.
pub fn d_seq(k: i64) -> Letter {
    assert!(k >= -1, "d_k is defined from k = -1");
    match k.rem_euclid(6) {
        3 | 4 => 0,
        1 | 2 => 1,
        _ => 2,
    }
}

/// `c_ℓ = ℓ + 1 (mod 3)`.
pub fn c_seq(l: i64) -> Letter {
    (l + 1).rem_euclid(3) as Letter
}

/// Smallest digit sum of a length-`n` factor: `n − ⌊log₂ n⌋ − 1`.
pub fn ds_lower(n: usize) -> i64 {
    n as i64 - floor_log2(n) as i64 - 1
}

/// Largest digit sum of a length-`n` factor: `n + ⌊log₂ n⌋ + 1`.
pub fn ds_upper(n: usize) -> i64 {
    n as i64 + floor_log2(n) as i64 + 1
}

/// `2⌊log₂ n⌋ + 3`.
pub fn additive_formula(n: usize) -> usize {
    2 * floor_log2(n) + 3
}

/// `ρ_t(n)` from `ρ_t(1..=5)` through `ρ(2m) = ρ(m) + ρ(m+1)` and
/// `ρ(2m+1) = 2ρ(m+1)` for `m ≥ 3`.
pub fn subword_formula(n: usize, base: &[usize; 5]) -> usize {
    assert!(n >= 1);
    if n <= 5 {
        return base[n - 1];
    }
    let m = n / 2;
    if n.is_multiple_of(2) {
        subword_formula(m, base) + subword_formula(m + 1, base)
    } else {
        2 * subword_formula(m + 1, base)
    }
}

/// `ρ_t(n)`, enumerated with the recurrence value as an exact stopping
/// target (base values `ρ_t(1..=5)` are enumerated directly).
pub fn tml_subword_complexity(seq: &FixedPointStream, n: usize) -> Result<usize> {
    ensure_tml(seq)?;
    let mut base = [0usize; 5];
    for (i, slot) in base.iter_mut().enumerate() {
        *slot = complexity::subword_complexity(seq, i + 1)?;
    }
    complexity::subword_complexity_with_target(seq, n, subword_formula(n, &base))
}

/// Identity coding of `{0,1,2}`.
pub fn identity() -> Coding {
    Coding::identity(Alphabet::ternary()).expect("ternary")
}

pub(crate) fn ensure_tml(seq: &FixedPointStream) -> Result<()> {
    if seq.seed() == 0 && *seq.morphism() == Morphism::tml() {
        Ok(())
    } else {
        domain("this check is specific to the fixed point of 0 -> 01, 1 -> 12, 2 -> 20")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_sequence_values() {
        let got: Vec<Letter> = (-1..=11).map(d_seq).collect();
        assert_eq!(got, [2, 2, 1, 1, 0, 0, 2, 2, 1, 1, 0, 0, 2]);
    }

    #[test]
    fn c_sequence_values() {
        let got: Vec<Letter> = (1..=6).map(c_seq).collect();
        assert_eq!(got, [2, 0, 1, 2, 0, 1]);
    }

    #[test]
    fn bounds_at_1024() {
        assert_eq!(ds_lower(1024), 1013);
        assert_eq!(ds_upper(1024), 1035);
        assert_eq!(additive_formula(1), 3);
        assert_eq!(additive_formula(7), 7);
        assert_eq!(additive_formula(4096), 27);
    }

    #[test]
    fn subword_formula_matches_enumeration() {
        let t = FixedPointStream::tml();
        let base = [3, 9, 15, 24, 30];
        for n in [6, 7, 8, 13, 40] {
            assert_eq!(
                subword_formula(n, &base),
                complexity::subword_complexity(&t, n).unwrap(),
                "n={n}"
            );
        }
        assert_eq!(
            tml_subword_complexity(&t, 100).unwrap(),
            subword_formula(100, &base)
        );
    }

    #[test]
    fn tml_only_checks_reject_other_words() {
        assert!(ensure_tml(&FixedPointStream::sigma3()).is_err());
        assert!(ensure_tml(&FixedPointStream::new(Morphism::tml(), 1).unwrap()).is_err());
    }
}
