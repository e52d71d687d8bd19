//! Factor enumeration and complexity functions of fixed-point sequences.
//!
//! Every function that speaks about the infinite word enumerates windows of
//! a finite prefix. The prefix starts at `max(4096, 64·n)` letters and is
//! doubled until the quantity is unchanged across one doubling; a single
//! scan over the doubled prefix yields both values, since the half-prefix
//! result is the restriction of the full one. Hitting the stream's window cap
//! first is a [`Error::Resource`].

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::coding::Coding;
use crate::error::{domain, Error, Result};
use crate::stream::FixedPointStream;
use crate::word::{check_alphabet, Alphabet, Letter, ParikhVector, Word, MAX_LETTERS};

pub const WINDOW_FLOOR: usize = 4096;
pub const WINDOW_PER_LETTER: usize = 64;

/// First enumeration window for factors of length `n`.
pub fn initial_window(n: usize) -> usize {
    WINDOW_FLOOR.max(WINDOW_PER_LETTER * n)
}

/// Distinct length-`n` factors of a prefix, in order of first occurrence.
#[derive(Debug, Clone)]
pub struct FactorIndex {
    alphabet: Arc<Alphabet>,
    n: usize,
    prefix_len: usize,
    entries: Vec<(Vec<Letter>, usize)>,
    lookup: FxHashMap<Vec<Letter>, usize>,
}

impl FactorIndex {
    fn build(alphabet: Arc<Alphabet>, prefix: &[Letter], n: usize) -> Self {
        let mut seen: FxHashSet<&[Letter]> = FxHashSet::default();
        let mut entries = Vec::new();
        for (i, w) in prefix.windows(n).enumerate() {
            if seen.insert(w) {
                entries.push((w.to_vec(), i));
            }
        }
        let lookup = entries
            .iter()
            .enumerate()
            .map(|(k, (w, _))| (w.clone(), k))
            .collect();
        Self {
            alphabet,
            n,
            prefix_len: prefix.len(),
            entries,
            lookup,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, symbols: &[Letter]) -> bool {
        self.lookup.contains_key(symbols)
    }

    /// Smallest `i` with `w_i … w_{i+n-1}` equal to `symbols`.
    pub fn first_occurrence(&self, symbols: &[Letter]) -> Option<usize> {
        self.lookup.get(symbols).map(|&k| self.entries[k].1)
    }

    /// `(factor, first occurrence)` pairs, earliest first.
    pub fn iter(&self) -> impl Iterator<Item = (&[Letter], usize)> {
        self.entries.iter().map(|(w, i)| (w.as_slice(), *i))
    }

    pub fn words(&self) -> Vec<Word> {
        self.entries
            .iter()
            .map(|(w, _)| Word::from_trusted(self.alphabet.clone(), w.clone()))
            .collect()
    }

    /// Largest first-occurrence index plus `n`: the shortest prefix of the
    /// scanned word containing every indexed factor.
    pub fn covering_prefix_len(&self) -> usize {
        self.entries
            .iter()
            .map(|(_, i)| i + self.n)
            .max()
            .unwrap_or(0)
    }
}

/// `F(n)` restricted to a finite prefix.
pub fn enumerate_factors(prefix: &Word, n: usize) -> Result<FactorIndex> {
    if n == 0 {
        return domain("factor length must be at least 1");
    }
    if n > prefix.len() {
        return domain(format!(
            "factor length {n} exceeds prefix length {}",
            prefix.len()
        ));
    }
    Ok(FactorIndex::build(
        prefix.alphabet().clone(),
        prefix.symbols(),
        n,
    ))
}

struct Scan<T> {
    half: usize,
    full: usize,
    value: T,
}

fn stabilize<T>(
    seq: &FixedPointStream,
    n: usize,
    what: &str,
    mut scan: impl FnMut(&[Letter], usize) -> Result<Scan<T>>,
) -> Result<T> {
    if n == 0 {
        return domain("factor length must be at least 1");
    }
    let mut w = initial_window(n);
    loop {
        if 2 * w > seq.cap() {
            return Err(Error::Resource(format!(
                "{what}(n={n}) did not stabilize below the window cap of {} symbols",
                seq.cap()
            )));
        }
        let buf = seq.snapshot(2 * w)?;
        let s = scan(&buf[..2 * w], w)?;
        if s.half == s.full {
            return Ok(s.value);
        }
        w *= 2;
    }
}

/// Stabilized `F(n)` of the infinite word.
pub fn factor_set(seq: &FixedPointStream, n: usize) -> Result<FactorIndex> {
    stabilize(seq, n, "factor_set", |buf, w| {
        let idx = FactorIndex::build(seq.alphabet().clone(), buf, n);
        let half = idx.iter().filter(|&(_, i)| i + n <= w).count();
        Ok(Scan {
            half,
            full: idx.len(),
            value: idx,
        })
    })
}

/// `ρ(n)`, the number of distinct length-`n` factors.
pub fn subword_complexity(seq: &FixedPointStream, n: usize) -> Result<usize> {
    stabilize(seq, n, "subword_complexity", |_, w| {
        let idx = seq.suffix_index(2 * w)?;
        let half = idx.distinct(n, w);
        let full = idx.distinct(n, 2 * w);
        Ok(Scan {
            half,
            full,
            value: full,
        })
    })
}

/// `ρ(n)` when an exact value is known in advance: keeps doubling past
/// stabilization until the count reaches `target`, and rejects overshoot.
pub fn subword_complexity_with_target(
    seq: &FixedPointStream,
    n: usize,
    target: usize,
) -> Result<usize> {
    let mut count = subword_complexity(seq, n)?;
    let mut w = 2 * initial_window(n);
    while count < target {
        w *= 2;
        if w > seq.cap() {
            return Err(Error::Resource(format!(
                "subword_complexity(n={n}) found {count} of {target} factors below the window cap"
            )));
        }
        count = seq.suffix_index(w)?.distinct(n, w);
    }
    if count > target {
        return Err(Error::Invariant(format!(
            "subword_complexity(n={n}) = {count} exceeds the expected {target}"
        )));
    }
    Ok(count)
}

/// `Ψ(n)`: Parikh vectors of the length-`n` factors.
pub fn parikh_set(seq: &FixedPointStream, n: usize) -> Result<BTreeSet<ParikhVector>> {
    let q = seq.alphabet().len();
    stabilize(seq, n, "parikh_set", |buf, w| {
        let mut cur = ParikhVector::of_symbols(q, &buf[..n]);
        let mut seen: FxHashSet<ParikhVector> = FxHashSet::default();
        seen.insert(cur);
        let mut half = 1;
        for j in 1..=buf.len() - n {
            cur.dec(buf[j - 1]);
            cur.inc(buf[j + n - 1]);
            seen.insert(cur);
            if j + n == w {
                half = seen.len();
            }
        }
        Ok(Scan {
            half,
            full: seen.len(),
            value: seen.into_iter().collect(),
        })
    })
}

/// `ρ^ab(n)`.
pub fn abelian_complexity(seq: &FixedPointStream, n: usize) -> Result<usize> {
    parikh_set(seq, n).map(|s| s.len())
}

/// Largest digit-sum span tracked with a dense bitmap; wider spans fall
/// back to hashing.
const DENSE_SPAN: i64 = 1 << 26;

/// Calls `mark` with the sum of every length-`n` window of `letters`.
fn sliding_sums(
    letters: &[Letter],
    table: &[i64; MAX_LETTERS],
    n: usize,
    mut mark: impl FnMut(i64),
) {
    let v = |x: Letter| table[x as usize % MAX_LETTERS];
    let mut s: i64 = letters[..n].iter().map(|&x| v(x)).sum();
    mark(s);
    for (&add, &sub) in letters[n..].iter().zip(letters) {
        s += v(add) - v(sub);
        mark(s);
    }
}

/// `{DS(u) : u ∈ F(n)}` under `coding`.
pub fn digit_sum_set(seq: &FixedPointStream, coding: &Coding, n: usize) -> Result<BTreeSet<i64>> {
    check_alphabet(seq.alphabet(), coding.alphabet())?;
    let lo = coding.min_value() * n as i64;
    let hi = coding.max_value() * n as i64;
    let mut table = [0i64; MAX_LETTERS];
    table[..coding.values().len()].copy_from_slice(coding.values());
    stabilize(seq, n, "digit_sum_set", |buf, w| {
        // Windows starting below w - n + 1 lie inside the first half.
        let (first, second) = (&buf[..w], &buf[w - n + 1..]);
        if hi - lo < DENSE_SPAN {
            let mut seen = vec![false; (hi - lo + 1) as usize];
            sliding_sums(first, &table, n, |s| seen[(s - lo) as usize] = true);
            let half = seen.iter().filter(|&&b| b).count();
            sliding_sums(second, &table, n, |s| seen[(s - lo) as usize] = true);
            let set: BTreeSet<i64> = seen
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b)
                .map(|(i, _)| i as i64 + lo)
                .collect();
            Ok(Scan {
                half,
                full: set.len(),
                value: set,
            })
        } else {
            let mut seen = FxHashSet::default();
            sliding_sums(first, &table, n, |s| {
                seen.insert(s);
            });
            let half = seen.len();
            sliding_sums(second, &table, n, |s| {
                seen.insert(s);
            });
            Ok(Scan {
                half,
                full: seen.len(),
                value: seen.into_iter().collect(),
            })
        }
    })
}

/// `ρ⁺(n)`.
pub fn additive_complexity(seq: &FixedPointStream, coding: &Coding, n: usize) -> Result<usize> {
    digit_sum_set(seq, coding, n).map(|s| s.len())
}

/// `E(n) = max_{a,b} max_{u ∈ F(n)} (|u|_a − |u|_b)`.
pub fn evenness(seq: &FixedPointStream, n: usize) -> Result<u32> {
    let q = seq.alphabet().len();
    stabilize(seq, n, "evenness", |buf, w| {
        let mut cur = ParikhVector::of_symbols(q, &buf[..n]);
        let mut best = cur.spread();
        let mut half = best;
        for j in 1..=buf.len() - n {
            cur.dec(buf[j - 1]);
            cur.inc(buf[j + n - 1]);
            best = best.max(cur.spread());
            if j + n == w {
                half = best;
            }
        }
        Ok(Scan {
            half: half as usize,
            full: best as usize,
            value: best,
        })
    })
}

/// Minimal `L` such that the first `L` letters contain every length-`n`
/// factor of the infinite word.
pub fn recurrence_index(seq: &FixedPointStream, n: usize) -> Result<usize> {
    let rho = subword_complexity(seq, n)?;
    recurrence_index_for(seq, n, rho)
}

/// [`recurrence_index`] against a known factor count.
pub fn recurrence_index_for(seq: &FixedPointStream, n: usize, rho: usize) -> Result<usize> {
    if n == 0 {
        return domain("factor length must be at least 1");
    }
    let mut len = 2 * initial_window(n);
    loop {
        let buf = seq.snapshot(len.min(seq.cap()))?;
        let buf = &buf[..len.min(seq.cap())];
        let mut seen: FxHashSet<&[Letter]> = FxHashSet::default();
        for (i, w) in buf.windows(n).enumerate() {
            if seen.insert(w) && seen.len() == rho {
                let l = i + n;
                if l <= n {
                    return Err(Error::Invariant(format!(
                        "recurrence index {l} is not larger than n={n}"
                    )));
                }
                return Ok(l);
            }
        }
        if len >= seq.cap() {
            return Err(Error::Resource(format!(
                "prefix of {} symbols holds only {} of {rho} factors of length {n}",
                buf.len(),
                seen.len()
            )));
        }
        len *= 2;
    }
}

/// One row of a complexity table. Fields are `None` when the row could not
/// be completed, with the reason in `error`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub rho: Option<usize>,
    pub rho_ab: Option<usize>,
    pub rho_plus: Option<usize>,
    pub ds_min: Option<i64>,
    pub ds_max: Option<i64>,
    #[serde(skip)]
    pub ds_set_size: Option<usize>,
    pub evenness: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ComplexityRow {
    pub fn compute(seq: &FixedPointStream, coding: &Coding, n: usize) -> Self {
        let mut row = ComplexityRow {
            n,
            rho: None,
            rho_ab: None,
            rho_plus: None,
            ds_min: None,
            ds_max: None,
            ds_set_size: None,
            evenness: None,
            error: None,
        };
        let mut fill = || -> Result<()> {
            row.rho = Some(subword_complexity(seq, n)?);
            row.rho_ab = Some(abelian_complexity(seq, n)?);
            let ds = digit_sum_set(seq, coding, n)?;
            row.rho_plus = Some(ds.len());
            row.ds_set_size = Some(ds.len());
            row.ds_min = ds.first().copied();
            row.ds_max = ds.last().copied();
            row.evenness = Some(evenness(seq, n)?);
            Ok(())
        };
        if let Err(e) = fill() {
            row.error = Some(e.to_string());
        }
        row
    }

    pub fn is_complete(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityTable {
    pub rows: Vec<ComplexityRow>,
}

pub const CSV_HEADER: &str = "n,rho,rho_ab,rho_plus,ds_min,ds_max,evenness";

impl ComplexityTable {
    /// Rows for `n_from..=n_to`, computed in parallel, returned in order.
    pub fn compute(
        seq: &FixedPointStream,
        coding: &Coding,
        n_from: usize,
        n_to: usize,
    ) -> Result<Self> {
        if n_from == 0 || n_from > n_to {
            return domain(format!("invalid range {n_from}..={n_to}"));
        }
        check_alphabet(seq.alphabet(), coding.alphabet())?;
        let rows = (n_from..=n_to)
            .into_par_iter()
            .map(|n| ComplexityRow::compute(seq, coding, n))
            .collect();
        Ok(Self { rows })
    }

    pub fn to_csv(&self) -> String {
        fn cell<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.n,
                cell(&r.rho),
                cell(&r.rho_ab),
                cell(&r.rho_plus),
                cell(&r.ds_min),
                cell(&r.ds_max),
                cell(&r.evenness)
            )
            .expect("write to string");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
