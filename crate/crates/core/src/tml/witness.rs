//! The words `W(n)` of maximal digit sum and their placement inside `t`.

use rayon::prelude::*;

use super::{d_seq, ds_lower, ds_upper, ensure_tml, identity};
use crate::complexity::initial_window;
use crate::error::{domain, Error, Result};
use crate::floor_log2;
use crate::morphism::Morphism;
use crate::report::{Failure, Report, ReportBuilder};
use crate::stream::FixedPointStream;
use crate::word::{digit_sum, mirror, tau, Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessDecomposition {
    pub n: usize,
    /// `⌊log₂ n⌋`.
    pub k: usize,
    /// Binary digits of `n − 2^k`, least significant first (`bits[i] = m_i`).
    pub bits: Vec<u8>,
    pub left: Word,
    pub right: Word,
    pub whole: Word,
}

/// Builds `W(n) = W_L(n) W_R(n)`.
///
/// `W_L(n) = δ 2 · σ^{2+m_2}(d_{2+m_2}) σ^{4+m_4}(d_{4+m_4}) ⋯` and
/// `W_R(n) = ⋯ σ^{3+m_3}(d_{3+m_3}) σ^{1+m_1}(d_{1+m_1}) · 2`, with
/// `δ = 1` when `m_0 = 1` and empty otherwise. `W(1) = 2`, split as an
/// empty left part and `2` on the right.
pub fn witness(n: usize) -> Result<WitnessDecomposition> {
    if n == 0 {
        return domain("W(n) is defined for n >= 1");
    }
    let sigma = Morphism::tml();
    let k = floor_log2(n);
    let rest = n - (1 << k);
    let bits: Vec<u8> = (0..k).map(|i| ((rest >> i) & 1) as u8).collect();

    let block = |j: usize| -> Vec<Letter> {
        let e = j + bits[j] as usize;
        sigma.power_of_letter(d_seq(e as i64), e)
    };

    let (left, right) = if n == 1 {
        (Vec::new(), vec![2])
    } else {
        let mut left = Vec::new();
        if bits[0] == 1 {
            left.push(1);
        }
        left.push(2);
        for i in 1..=(k - 1) / 2 {
            left.extend(block(2 * i));
        }
        let mut right = Vec::new();
        for i in (1..=k / 2).rev() {
            // ⌈(k−1)/2⌉ = ⌊k/2⌋
            right.extend(block(2 * i - 1));
        }
        right.push(2);
        (left, right)
    };

    let ternary = Alphabet::ternary();
    let mut whole = left.clone();
    whole.extend_from_slice(&right);
    if whole.len() != n {
        return Err(Error::Invariant(format!(
            "W({n}) came out with length {}",
            whole.len()
        )));
    }
    Ok(WitnessDecomposition {
        n,
        k,
        bits,
        left: Word::new(ternary.clone(), left)?,
        right: Word::new(ternary.clone(), right)?,
        whole: Word::new(ternary, whole)?,
    })
}

/// Finds an index of `needle` in `t`, confirmed against the materialized
/// prefix.
///
/// When `hint` names a two-letter factor `xy` of `t` and an exponent `e`
/// with `needle ≺ σ^e(xy)`, the search runs inside that block, which sits
/// at `2^e · I(xy)`. Otherwise, or if the hint misses, the prefix is scanned
/// directly with doubling windows.
pub fn locate_in_t(
    seq: &FixedPointStream,
    needle: &[Letter],
    hint: Option<([Letter; 2], usize)>,
) -> Result<usize> {
    ensure_tml(seq)?;
    if let Some((pair, e)) = hint {
        let head = seq.snapshot(64)?;
        if let Some(p) = memchr::memmem::find(&head[..64], &pair) {
            let sigma = Morphism::tml();
            let mut block = sigma.power_of_letter(pair[0], e);
            block.extend(sigma.power_of_letter(pair[1], e));
            if let Some(off) = memchr::memmem::find(&block, needle) {
                let at = (p << e) + off;
                let buf = seq.snapshot(at + needle.len())?;
                if &buf[at..at + needle.len()] == needle {
                    return Ok(at);
                }
            }
        }
    }
    let mut len = 2 * initial_window(needle.len().max(1));
    loop {
        let len_now = len.min(seq.cap());
        let buf = seq.snapshot(len_now)?;
        if let Some(at) = memchr::memmem::find(&buf[..len_now], needle) {
            return Ok(at);
        }
        if len_now == seq.cap() {
            return Err(Error::Resource(format!(
                "no occurrence of a length-{} word within the window cap",
                needle.len()
            )));
        }
        len *= 2;
    }
}

fn check_one(seq: &FixedPointStream, n: usize) -> (u64, Vec<Failure>, Option<String>) {
    let mut failures = Vec::new();
    let case = format!("n={n}");
    let mut fail = |detail: String| {
        failures.push(Failure {
            case: case.clone(),
            detail,
        })
    };
    let dec = match witness(n) {
        Ok(d) => d,
        Err(e) => {
            fail(e.to_string());
            return (1, failures, None);
        }
    };
    let id = identity();
    let w = &dec.whole;
    let k = dec.k;
    let ds = digit_sum(w, &id).expect("ternary");
    if ds != ds_upper(n) {
        fail(format!("DS(W(n)) = {ds}, expected {}", ds_upper(n)));
    }
    if w.count(2) as i64 - w.count(0) as i64 != k as i64 + 1 {
        fail(format!(
            "|W|_2 - |W|_0 = {}, expected {}",
            w.count(2) as i64 - w.count(0) as i64,
            k + 1
        ));
    }
    let m = mirror(&tau(1, w).expect("ternary"));
    let ds_m = digit_sum(&m, &id).expect("ternary");
    if ds_m != ds_lower(n) {
        fail(format!(
            "DS(tau_1(W(n))^R) = {ds_m}, expected {}",
            ds_lower(n)
        ));
    }
    if ds - ds_m != 2 * k as i64 + 2 {
        fail(format!("DS gap {} != 2k+2", ds - ds_m));
    }

    // W(n) ≺ σ^{k+1}(d_{k+2} d_{k-2}); its τ₁-mirror lies in σ^{k+1} of the
    // pair τ_{k+2}(d_{k+2} d_{k-2})^R. Short words are scanned for their
    // first occurrence instead.
    let (hint_w, hint_m) = if n <= 4 {
        (None, None)
    } else {
        let pair = [d_seq(k as i64 + 2), d_seq(k as i64 - 2)];
        let c = ((k + 2) % 3) as Letter;
        let pw = Word::new(Alphabet::ternary(), pair.to_vec()).expect("ternary");
        let pm = mirror(&tau(c, &pw).expect("ternary"));
        let pm = [pm.symbols()[0], pm.symbols()[1]];
        (Some((pair, k + 1)), Some((pm, k + 1)))
    };
    let mut note = None;
    match locate_in_t(seq, w.symbols(), hint_w) {
        Ok(at) => {
            if n <= 4 {
                note = Some(format!("W({n}) = {w} occurs in t at index {at}"));
            }
        }
        Err(e) => fail(format!("W(n) = {w} not located in t: {e}")),
    }
    if let Err(e) = locate_in_t(seq, m.symbols(), hint_m) {
        fail(format!("tau_1(W(n))^R not located in t: {e}"));
    }
    (6, failures, note)
}

/// Checks `|W(n)| = n`, `W(n) ≺ t`, `DS(W(n)) = n + ⌊log₂ n⌋ + 1`,
/// `τ₁(W(n))^R ≺ t` and `DS(τ₁(W(n))^R) = n − ⌊log₂ n⌋ − 1` for every
/// `n_from ≤ n ≤ n_to`.
pub fn verify_witness(seq: &FixedPointStream, n_from: usize, n_to: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if n_from == 0 || n_from > n_to {
        return domain(format!("invalid range {n_from}..={n_to}"));
    }
    let mut report = ReportBuilder::new("witness", format!("n={n_from}..={n_to}"));
    let results: Vec<_> = (n_from..=n_to)
        .into_par_iter()
        .map(|n| check_one(seq, n))
        .collect();
    for (checked, failures, note) in results {
        report.checked(checked);
        report.extend_failures(failures);
        if let Some(note) = note {
            report.note(note);
        }
    }
    Ok(report.finish())
}

/// For `2^k ≤ n < 2^{k+1}`, `k ≤ k_max`: even `k` gives
/// `W_L(n) ▷ σ^k(d_{k+1})`, `W_R(n) ◁ σ^{k+1}(d_k)`; odd `k` gives
/// `W_L(n) ▷ σ^{k+1}(d_{k+2})`, `W_R(n) ◁ σ^k(d_{k-1})`.
pub fn verify_prefix_suffix_lemma(k_max: usize) -> Result<Report> {
    if k_max > 24 {
        return domain("k_max above 24 would materialize words longer than 2^25");
    }
    let sigma = Morphism::tml();
    let mut report = ReportBuilder::new("prefix-suffix", format!("k=0..={k_max}"));
    let ternary = Alphabet::ternary();
    for k in 0..=k_max {
        let ki = k as i64;
        let (suffix_of, prefix_of) = if k % 2 == 0 {
            (
                sigma.power_of_letter(d_seq(ki + 1), k),
                sigma.power_of_letter(d_seq(ki), k + 1),
            )
        } else {
            (
                sigma.power_of_letter(d_seq(ki + 2), k + 1),
                sigma.power_of_letter(d_seq(ki - 1), k),
            )
        };
        let suffix_of = Word::new(ternary.clone(), suffix_of)?;
        let prefix_of = Word::new(ternary.clone(), prefix_of)?;
        let failures: Vec<Failure> = ((1usize << k)..(1usize << (k + 1)))
            .into_par_iter()
            .filter_map(|n| {
                let w = match witness(n) {
                    Ok(w) => w,
                    Err(e) => {
                        return Some(Failure {
                            case: format!("n={n}"),
                            detail: e.to_string(),
                        })
                    }
                };
                let left_ok = w.left.is_suffix_of(&suffix_of);
                let right_ok = w.right.is_prefix_of(&prefix_of);
                (!left_ok || !right_ok).then(|| Failure {
                    case: format!("n={n}"),
                    detail: format!(
                        "W_L={} suffix-of-ok={left_ok}, W_R={} prefix-of-ok={right_ok}",
                        w.left, w.right
                    ),
                })
            })
            .collect();
        report.checked(1 << k);
        report.extend_failures(failures);
    }
    Ok(report.finish())
}
