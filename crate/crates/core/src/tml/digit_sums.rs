//! Digit-sum bounds, the shift scan `g_n`, and the two exhaustive
//! verifiers built on them.

use std::collections::BTreeSet;
use std::ops::Range;

use rayon::prelude::*;

use super::{additive_formula, ds_lower, ds_upper, ensure_tml, identity, subword_formula};
use crate::complexity::{self, factor_set, initial_window};
use crate::error::{domain, Error, Result};
use crate::floor_log2;
use crate::morphism::Morphism;
use crate::report::{Failure, Report, ReportBuilder};
use crate::stream::FixedPointStream;
use crate::word::{Letter, Word};

/// Window sums `g_n(j) = DS(t_j … t_{j+n−1})` for `j` in `positions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftScan {
    pub n: usize,
    pub positions: Range<usize>,
    pub sums: Vec<i64>,
}

impl ShiftScan {
    pub fn g(&self, j: usize) -> Option<i64> {
        if self.positions.contains(&j) {
            Some(self.sums[j - self.positions.start])
        } else {
            None
        }
    }

    /// Largest `|g_n(j+1) − g_n(j)|` over the scan.
    pub fn max_step(&self) -> i64 {
        self.sums
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .max()
            .unwrap_or(0)
    }
}

/// `r_i(u)` together with the jump `g_n(r) − DS(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftStep {
    pub r: usize,
    pub jump: u8,
    pub scan: ShiftScan,
}

fn letter_sum(w: &[Letter]) -> i64 {
    w.iter().map(|&x| x as i64).sum()
}

/// First `j > i` with `g_n(j) > DS(u)`, where `u` occurs in `t` at `i`.
pub fn shift_scan(u: &Word, i: usize, seq: &FixedPointStream) -> Result<ShiftStep> {
    ensure_tml(seq)?;
    let n = u.len();
    if n == 0 {
        return domain("u must be non-empty");
    }
    let target = letter_sum(u.symbols());
    if target >= ds_upper(n) {
        return domain(format!("DS({u}) = {target} is already maximal"));
    }
    let head = seq.snapshot(i + n)?;
    if &head[i..i + n] != u.symbols() {
        return domain(format!("{u} does not occur at index {i}"));
    }
    let mut limit = initial_window(n).max(2 * (i + n));
    let mut sums = vec![target];
    let mut g = target;
    let mut j = i;
    loop {
        let end = limit.min(seq.cap());
        let buf = seq.snapshot(end)?;
        while j + n < end {
            j += 1;
            g += buf[j + n - 1] as i64 - buf[j - 1] as i64;
            sums.push(g);
            if g > target {
                let jump = g - target;
                let before = sums[sums.len() - 2];
                if !(1..=2).contains(&jump) {
                    return Err(Error::Invariant(format!(
                        "g_{n}({j}) - DS({u}) = {jump}, expected 1 or 2"
                    )));
                }
                if jump == 2 && before != target {
                    return Err(Error::Invariant(format!(
                        "jump 2 at r={j} but g_{n}({}) = {before} differs from DS({u}) = {target}",
                        j - 1
                    )));
                }
                return Ok(ShiftStep {
                    r: j,
                    jump: jump as u8,
                    scan: ShiftScan {
                        n,
                        positions: i..j + 1,
                        sums,
                    },
                });
            }
        }
        if end >= seq.cap() {
            return Err(Error::Resource(format!(
                "no window of length {n} after index {i} exceeds DS = {target} below the window cap"
            )));
        }
        limit *= 2;
    }
}

/// Runs [`shift_scan`] from the first occurrence of every non-maximal
/// factor of length `n ≤ n_max`.
pub fn verify_shift_scan(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    let mut report = ReportBuilder::new("shift-scan", format!("n=1..={n_max}"));
    let mut jumps = [0u64; 3];
    for n in 1..=n_max {
        let factors = factor_set(seq, n)?;
        for (sym, i) in factors.iter() {
            let u = Word::new(seq.alphabet().clone(), sym.to_vec())?;
            if letter_sum(sym) >= ds_upper(n) {
                continue;
            }
            report.checked(1);
            match shift_scan(&u, i, seq) {
                Ok(step) => {
                    jumps[step.jump as usize] += 1;
                    if step.scan.max_step() > 2 {
                        report.fail(
                            format!("u={u}, i={i}"),
                            "consecutive window sums differ by more than 2",
                        );
                    }
                }
                Err(Error::Invariant(msg)) => report.fail(format!("u={u}, i={i}"), msg),
                Err(e) => return Err(e),
            }
        }
    }
    report.note(format!(
        "jump 1: {} cases, jump 2: {} cases",
        jumps[1], jumps[2]
    ));
    Ok(report.finish())
}

/// Smallest `m` with `Σ_{ℓ=0}^{m} (v_{j+ℓ} − u_{i+ℓ}) = 1`, staying inside
/// both words.
pub fn right_shift_times(u: &[Letter], v: &[Letter], i: usize, j: usize) -> Option<usize> {
    let len = u.len().min(v.len());
    let mut s = 0i64;
    for m in 0..len.saturating_sub(i.max(j)) {
        s += v[j + m] as i64 - u[i + m] as i64;
        if s == 1 {
            return Some(m);
        }
    }
    None
}

/// Smallest `p ≥ 1` with `Σ_{ℓ=1}^{p} (u_{i−ℓ} − v_{j−ℓ}) = 1`.
pub fn left_shift_times(u: &[Letter], v: &[Letter], i: usize, j: usize) -> Option<usize> {
    let mut s = 0i64;
    for p in 1..=i.min(j) {
        s += u[i - p] as i64 - v[j - p] as i64;
        if s == 1 {
            return Some(p);
        }
    }
    None
}

/// All `(u, v, i, j)` with `u, v ∈ F_t(3)`, `64 ≤ i, j < 128`,
/// `σ⁶(u)_i = 0` and `σ⁶(v)_j = 2`: one of the two shift procedures succeeds.
pub fn verify_tech_lemma(seq: &FixedPointStream) -> Result<Report> {
    ensure_tml(seq)?;
    let sigma = Morphism::tml();
    let factors = factor_set(seq, 3)?;
    let images: Vec<(Word, Vec<Letter>)> = factors
        .words()
        .into_iter()
        .map(|w| {
            let img = sigma.iterate(&w, 6).map(Word::into_symbols);
            img.map(|img| (w, img))
        })
        .collect::<Result<_>>()?;
    let mut report = ReportBuilder::new("tech-lemma", "u,v in F_t(3), 64 <= i,j < 128");
    let pairs: Vec<(usize, usize)> = (0..images.len())
        .flat_map(|a| (0..images.len()).map(move |b| (a, b)))
        .collect();
    let (checked, failures) = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (uw, u) = &images[a];
            let (vw, v) = &images[b];
            let mut checked = 0u64;
            let mut failures = Vec::new();
            for i in (64..128).filter(|&i| u[i] == 0) {
                for j in (64..128).filter(|&j| v[j] == 2) {
                    checked += 1;
                    if right_shift_times(u, v, i, j).is_none()
                        && left_shift_times(u, v, i, j).is_none()
                    {
                        failures.push(Failure {
                            case: format!("u={uw}, v={vw}, i={i}, j={j}"),
                            detail: "neither shift procedure reaches sum 1".into(),
                        });
                    }
                }
            }
            (checked, failures)
        })
        .reduce(
            || (0, Vec::new()),
            |(c1, mut f1), (c2, f2)| {
                f1.extend(f2);
                (c1 + c2, f1)
            },
        );
    report.checked(checked);
    report.extend_failures(failures);
    report.note(format!("|F_t(3)| = {}", images.len()));
    report.note("right shifts run over 0 <= m < 192 - max(i, j), keeping j + m inside the image");
    Ok(report.finish())
}

fn ds_sets(seq: &FixedPointStream, n_max: usize) -> Result<Vec<(usize, BTreeSet<i64>)>> {
    let coding = identity();
    (1..=n_max)
        .into_par_iter()
        .map(|n| complexity::digit_sum_set(seq, &coding, n).map(|s| (n, s)))
        .collect()
}

fn describe(set: &BTreeSet<i64>) -> String {
    if set.len() <= 12 {
        format!("{set:?}")
    } else {
        format!(
            "{} values in [{}, {}]",
            set.len(),
            set.first().unwrap(),
            set.last().unwrap()
        )
    }
}

/// Digit sums of length-`n` factors lie in `[n−⌊log₂n⌋−1, n+⌊log₂n⌋+1]`
/// and both ends are attained.
pub fn verify_ds_bounds(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    let mut report = ReportBuilder::new("ds-bounds", format!("n=1..={n_max}"));
    for (n, set) in ds_sets(seq, n_max)? {
        let (lo, hi) = (ds_lower(n), ds_upper(n));
        let (min, max) = (*set.first().unwrap(), *set.last().unwrap());
        report.checked(1);
        if min < lo || max > hi {
            report.fail(
                format!("n={n}"),
                format!("DS range [{min}, {max}] leaves [{lo}, {hi}]"),
            );
        } else if min != lo || max != hi {
            report.fail(
                format!("n={n}"),
                format!("DS range [{min}, {max}] misses an endpoint of [{lo}, {hi}]"),
            );
        }
    }
    Ok(report.finish())
}

/// `ρ⁺_t(n) = 2⌊log₂n⌋+3` and the digit-sum set is the full interval.
pub fn verify_theorem1(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    let mut report = ReportBuilder::new("theorem1", format!("n=1..={n_max}"));
    for (n, set) in ds_sets(seq, n_max)? {
        report.checked(1);
        let interval: BTreeSet<i64> = (ds_lower(n)..=ds_upper(n)).collect();
        if set.len() != additive_formula(n) {
            report.fail(
                format!("n={n}"),
                format!(
                    "rho_plus = {}, expected {}; DS set {}",
                    set.len(),
                    additive_formula(n),
                    describe(&set)
                ),
            );
        } else if set != interval {
            report.fail(
                format!("n={n}"),
                format!("DS set {} is not the interval", describe(&set)),
            );
        }
    }
    Ok(report.finish())
}

/// Every digit sum strictly between the bounds is carried by some window
/// of `t_0 … t_{L−1}`, `L` the recurrence index of `n`.
pub fn verify_ivp_small(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    let mut report = ReportBuilder::new("ivp-small", format!("n=1..={n_max}"));
    let mut base = [0usize; 5];
    for (k, slot) in base.iter_mut().enumerate() {
        *slot = complexity::subword_complexity(seq, k + 1)?;
    }
    let mut longest = 0;
    for n in 1..=n_max {
        let rho = complexity::subword_complexity(seq, n)?;
        if n > 5 && rho != subword_formula(n, &base) {
            report.fail(
                format!("n={n}"),
                format!(
                    "rho = {rho}, recurrence gives {}",
                    subword_formula(n, &base)
                ),
            );
        }
        let l = complexity::recurrence_index_for(seq, n, rho)?;
        longest = longest.max(l);
        let buf = seq.snapshot(l)?;
        let sums: BTreeSet<i64> = buf[..l].windows(n).map(letter_sum).collect();
        for k in ds_lower(n) + 1..ds_upper(n) {
            report.checked(1);
            if !sums.contains(&k) {
                report.fail(
                    format!("n={n}, k={k}"),
                    format!("no window of t_0..t_{} has digit sum {k}", l - 1),
                );
            }
        }
    }
    report.note(format!("longest scanned prefix: {longest} letters"));
    Ok(report.finish())
}

/// `ρ_t(1) = 3`, `ρ_t(2) = 9`, and for `3 ≤ n ≤ n_max`
/// `ρ_t(2n) = ρ_t(n) + ρ_t(n+1)`, `ρ_t(2n+1) = 2ρ_t(n+1)`, all enumerated.
pub fn verify_subword_recurrence(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_tml(seq)?;
    if n_max < 3 {
        return domain("n_max must be at least 3");
    }
    let mut report = ReportBuilder::new("subword-recurrence", format!("n=3..={n_max}"));
    // Largest length first, so the shared suffix index is built once.
    let top = 2 * n_max + 1;
    let mut rho = vec![0usize; top + 1];
    for n in (1..=top).rev() {
        rho[n] = complexity::subword_complexity(seq, n)?;
    }
    report.checked(2);
    if rho[1] != 3 {
        report.fail("n=1", format!("rho(1) = {}", rho[1]));
    }
    if rho[2] != 9 {
        report.fail("n=2", format!("rho(2) = {}", rho[2]));
    }
    for n in 3..=n_max {
        report.checked(2);
        if rho[2 * n] != rho[n] + rho[n + 1] {
            report.fail(
                format!("n={n}"),
                format!(
                    "rho({}) = {}, rho({n}) + rho({}) = {}",
                    2 * n,
                    rho[2 * n],
                    n + 1,
                    rho[n] + rho[n + 1]
                ),
            );
        }
        if rho[2 * n + 1] != 2 * rho[n + 1] {
            report.fail(
                format!("n={n}"),
                format!(
                    "rho({}) = {}, 2 rho({}) = {}",
                    2 * n + 1,
                    rho[2 * n + 1],
                    n + 1,
                    2 * rho[n + 1]
                ),
            );
        }
    }
    report.note(format!(
        "rho(2^k) up to k={}: {:?}",
        floor_log2(top),
        (0..=floor_log2(top))
            .map(|k| rho[1 << k])
            .collect::<Vec<_>>()
    ));
    Ok(report.finish())
}
