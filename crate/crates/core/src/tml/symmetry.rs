//! Symmetry and counting lemmas about factors of `t`.

use std::collections::BTreeSet;

use super::{c_seq, d_seq, ensure_tml};
use crate::complexity::{factor_set, FactorIndex};
use crate::error::{domain, Result};
use crate::morphism::Morphism;
use crate::report::{Report, ReportBuilder};
use crate::stream::FixedPointStream;
use crate::word::{letter_shift, mirror, tau, Letter, Word};

/// `σ(τ_c(u)^R) = τ_{c−1}(σ(u))^R` for all `u ∈ F_t(n)`, `n ≤ max_len`,
/// `c ∈ {0,1,2}`. The identity with `τ_{c+1}` on the right is evaluated
/// alongside and its tally reported as a note.
pub fn verify_sigma_tau_commutation(seq: &FixedPointStream, max_len: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if max_len == 0 {
        return domain("max_len must be at least 1");
    }
    let sigma = Morphism::tml();
    let mut report = ReportBuilder::new("sigma-tau", format!("n=1..={max_len}, c=0..=2"));
    let mut under_holds = 0u64;
    let mut over_holds = 0u64;
    let mut total = 0u64;
    for n in 1..=max_len {
        for u in factor_set(seq, n)?.words() {
            let su = sigma.apply(&u)?;
            for c in 0..3 {
                let lhs = sigma.apply(&mirror(&tau(c, &u)?))?;
                let under = mirror(&tau(letter_shift(c, -1), &su)?);
                let over = mirror(&tau(letter_shift(c, 1), &su)?);
                total += 1;
                over_holds += (lhs == over) as u64;
                if lhs == under {
                    under_holds += 1;
                } else {
                    report.fail(
                        format!("u={u}, c={c}"),
                        format!("sigma(tau_c(u)^R) = {lhs} but tau_(c-1)(sigma(u))^R = {under}"),
                    );
                }
            }
        }
    }
    report.checked(total);
    report.note(format!(
        "tau_(c-1) form holds on {under_holds}/{total} cases; tau_(c+1) form holds on {over_holds}/{total}"
    ));
    Ok(report.finish())
}

/// `τ_c(u)^R ∈ F_t` for all `u ∈ F_t(n)`, `n ≤ max_len`, `c ∈ {0,1,2}`.
pub fn verify_mirror_closure(seq: &FixedPointStream, max_len: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if max_len == 0 {
        return domain("max_len must be at least 1");
    }
    let mut report = ReportBuilder::new("mirror-closure", format!("n=1..={max_len}, c=0..=2"));
    for n in 1..=max_len {
        let factors = factor_set(seq, n)?;
        for u in factors.words() {
            for c in 0..3 {
                let image = mirror(&tau(c, &u)?);
                report.checked(1);
                if !factors.contains(image.symbols()) {
                    report.fail(
                        format!("u={u}, c={c}"),
                        format!("tau_c(u)^R = {image} is not a factor of t"),
                    );
                }
            }
        }
    }
    Ok(report.finish())
}

/// `|σ^ℓ(d_ℓ)|₂ − |σ^ℓ(d_ℓ)|₀ = 1` and `|σ^ℓ(c_ℓ)|₂ − |σ^ℓ(c_ℓ)|₀ = 0`
/// for `0 ≤ ℓ ≤ l_max`, counting letters of the materialized images.
pub fn verify_dc_counts(l_max: usize) -> Result<Report> {
    if l_max > 28 {
        return domain("l_max above 28 would materialize words longer than 2^28");
    }
    let sigma = Morphism::tml();
    let mut report = ReportBuilder::new("dc-counts", format!("l=0..={l_max}"));
    let diff = |w: &[Letter]| {
        w.iter()
            .fold(0i64, |acc, &x| acc + (x == 2) as i64 - (x == 0) as i64)
    };
    for l in 0..=l_max {
        let d = d_seq(l as i64);
        let c = c_seq(l as i64);
        let dd = diff(&sigma.power_of_letter(d, l));
        let cc = diff(&sigma.power_of_letter(c, l));
        report.checked(2);
        if dd != 1 {
            report.fail(
                format!("l={l}"),
                format!("|sigma^l(d_l)|_2 - |sigma^l(d_l)|_0 = {dd}"),
            );
        }
        if cc != 0 {
            report.fail(
                format!("l={l}"),
                format!("|sigma^l(c_l)|_2 - |sigma^l(c_l)|_0 = {cc}"),
            );
        }
    }
    Ok(report.finish())
}

fn diffs(words: &[Word], a: Letter, b: Letter) -> BTreeSet<i64> {
    words
        .iter()
        .map(|x| x.count(a) as i64 - x.count(b) as i64)
        .collect()
}

fn within_one(set: &BTreeSet<i64>, target: i64) -> bool {
    set.range(target - 1..=target + 1).next().is_some()
}

/// For each `u ∈ F_t(n)`, `n ≤ n_max`, the three sandwich bounds by factors
/// of length `⌊n/2⌋`: some `x` with `||u|₂−|u|₀ − (|x|₁−|x|₀)| ≤ 1`, some
/// `y` with `||u|₁−|u|₀ − (|y|₁−|y|₂)| ≤ 1`, some `z` with
/// `||u|₁−|u|₂ − (|z|₀−|z|₂)| ≤ 1`.
pub fn verify_sandwich(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    let mut report = ReportBuilder::new("sandwich", format!("n=1..={n_max}"));
    let half_words = |h: usize| -> Result<Vec<Word>> {
        if h == 0 {
            Ok(vec![Word::empty(seq.alphabet().clone())])
        } else {
            Ok(factor_set(seq, h)?.words())
        }
    };
    for n in 1..=n_max {
        let halves = half_words(n / 2)?;
        let xs = diffs(&halves, 1, 0);
        let ys = diffs(&halves, 1, 2);
        let zs = diffs(&halves, 0, 2);
        let factors: FactorIndex = factor_set(seq, n)?;
        for u in factors.words() {
            let c = |a| u.count(a) as i64;
            report.checked(3);
            if !within_one(&xs, c(2) - c(0)) {
                report.fail(format!("u={u}"), "no x for |u|_2-|u|_0");
            }
            if !within_one(&ys, c(1) - c(0)) {
                report.fail(format!("u={u}"), "no y for |u|_1-|u|_0");
            }
            if !within_one(&zs, c(1) - c(2)) {
                report.fail(format!("u={u}"), "no z for |u|_1-|u|_2");
            }
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_hand_cases() {
        let s = Morphism::tml();
        let u = Word::ternary("0");
        let lhs = s.apply(&mirror(&tau(0, &u).unwrap())).unwrap();
        let rhs = mirror(&tau(2, &s.apply(&u).unwrap()).unwrap());
        assert_eq!(
            (lhs.to_string(), rhs.to_string()),
            ("01".into(), "01".into())
        );

        let u = Word::ternary("1");
        let lhs = s.apply(&mirror(&tau(0, &u).unwrap())).unwrap();
        let rhs = mirror(&tau(2, &s.apply(&u).unwrap()).unwrap());
        assert_eq!(
            (lhs.to_string(), rhs.to_string()),
            ("20".into(), "20".into())
        );
    }

    #[test]
    fn commutation_prefers_lowered_index() {
        let t = FixedPointStream::tml();
        let r = verify_sigma_tau_commutation(&t, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let total = r.tuples_checked;
        assert!(r.notes[0].starts_with(&format!("tau_(c-1) form holds on {total}/{total}")));
    }

    #[test]
    fn mirror_closure_small() {
        let t = FixedPointStream::tml();
        let r = verify_mirror_closure(&t, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // u = "01", c = 2: tau_2 swaps 0 and 1 giving "10", mirrored "01".
        let img = mirror(&tau(2, &Word::ternary("01")).unwrap());
        assert_eq!(img.to_string(), "01");
    }

    #[test]
    fn dc_counts_first_values() {
        let s = Morphism::tml();
        assert_eq!(s.power_of_letter(d_seq(1), 1), vec![1, 2]);
        assert_eq!(s.power_of_letter(c_seq(1), 1), vec![2, 0]);
        let r = verify_dc_counts(12).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.tuples_checked, 26);
    }

    #[test]
    fn sandwich_small() {
        let t = FixedPointStream::tml();
        let r = verify_sandwich(&t, 24).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
