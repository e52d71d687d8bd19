//! The intermediate value property of digit sums, and the `σ₃` word
//! `σ₃^∞(a)`, `σ₃: a → abc, b → bca, c → cab`, on which it can fail.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::coding::Coding;
use crate::complexity::{digit_sum_set, parikh_set};
use crate::error::{domain, Error, Result};
use crate::morphism::Morphism;
use crate::report::{Report, ReportBuilder};
use crate::stream::FixedPointStream;

/// IVP outcome per length. `gaps[n]` lists the digit sums strictly between
/// the extremes that no factor of length `n` attains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IvpReport {
    pub n_from: usize,
    pub n_to: usize,
    pub holds: Vec<bool>,
    pub gaps: BTreeMap<usize, Vec<i64>>,
}

impl IvpReport {
    pub fn holds_at(&self, n: usize) -> bool {
        self.holds[n - self.n_from]
    }

    pub fn holds_everywhere(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Gaps of the digit-sum set for each `n_from ≤ n ≤ n_to`.
pub fn check_ivp(
    seq: &FixedPointStream,
    coding: &Coding,
    n_from: usize,
    n_to: usize,
) -> Result<IvpReport> {
    if n_from == 0 || n_from > n_to {
        return domain(format!("bad length range {n_from}..={n_to}"));
    }
    let gaps: Vec<Vec<i64>> = (n_from..=n_to)
        .into_par_iter()
        .map(|n| {
            let set = digit_sum_set(seq, coding, n)?;
            let (lo, hi) = (*set.first().unwrap(), *set.last().unwrap());
            Ok((lo..=hi).filter(|v| !set.contains(v)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(IvpReport {
        n_from,
        n_to,
        holds: gaps.iter().map(Vec::is_empty).collect(),
        gaps: gaps
            .into_iter()
            .enumerate()
            .filter(|(_, g)| !g.is_empty())
            .map(|(i, g)| (n_from + i, g))
            .collect(),
    })
}

/// Parikh vectors of length-`n` factors of the `σ₃` word as
/// `m·(1,1,1) + offset`, `n = 3m + r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParikhSetPrediction {
    pub m: i64,
    pub r: usize,
    pub offsets: Vec<[i64; 3]>,
}

impl ParikhSetPrediction {
    pub fn vectors(&self) -> BTreeSet<[i64; 3]> {
        self.offsets
            .iter()
            .map(|o| [o[0] + self.m, o[1] + self.m, o[2] + self.m])
            .collect()
    }
}

const OFFSETS_R0: [[i64; 3]; 7] = [
    [1, 0, -1],
    [0, 0, 0],
    [1, -1, 0],
    [0, 1, -1],
    [-1, 1, 0],
    [-1, 0, 1],
    [0, -1, 1],
];
const OFFSETS_R1: [[i64; 3]; 6] = [
    [1, 1, -1],
    [1, -1, 1],
    [0, 1, 0],
    [1, 0, 0],
    [0, 0, 1],
    [-1, 1, 1],
];
const OFFSETS_R2: [[i64; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [0, 1, 1],
    [1, 1, 0],
    [1, 0, 1],
];

pub fn predicted_parikh_set(n: usize) -> Result<ParikhSetPrediction> {
    if n < 3 {
        return domain("the prediction starts at n = 3");
    }
    let offsets = match n % 3 {
        0 => OFFSETS_R0.to_vec(),
        1 => OFFSETS_R1.to_vec(),
        _ => OFFSETS_R2.to_vec(),
    };
    Ok(ParikhSetPrediction {
        m: (n / 3) as i64,
        r: n % 3,
        offsets,
    })
}

fn ensure_sigma3(seq: &FixedPointStream) -> Result<()> {
    if seq.seed() == 0 && *seq.morphism() == Morphism::sigma3() {
        Ok(())
    } else {
        domain("this check is specific to the fixed point of a -> abc, b -> bca, c -> cab")
    }
}

fn enumerated_vectors(seq: &FixedPointStream, n: usize) -> Result<BTreeSet<[i64; 3]>> {
    Ok(parikh_set(seq, n)?
        .into_iter()
        .map(|p| [p.get(0) as i64, p.get(1) as i64, p.get(2) as i64])
        .collect())
}

/// Enumerated Parikh sets equal the predicted ones for `3 ≤ n ≤ n_max`.
pub fn verify_prop4(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    ensure_sigma3(seq)?;
    if n_max < 3 {
        return domain("n_max must be at least 3");
    }
    let mut report = ReportBuilder::new("prop4", format!("n=3..={n_max}"));
    type Row = (usize, BTreeSet<[i64; 3]>, BTreeSet<[i64; 3]>);
    let results: Vec<Row> = (3..=n_max)
        .into_par_iter()
        .map(|n| {
            Ok((
                n,
                predicted_parikh_set(n)?.vectors(),
                enumerated_vectors(seq, n)?,
            ))
        })
        .collect::<Result<_>>()?;
    for (n, predicted, enumerated) in results {
        report.checked(1);
        if predicted != enumerated {
            let missing: Vec<_> = predicted.difference(&enumerated).collect();
            let extra: Vec<_> = enumerated.difference(&predicted).collect();
            report.fail(
                format!("n={n}"),
                format!("predicted but absent: {missing:?}; present but not predicted: {extra:?}"),
            );
        }
    }
    Ok(report.finish())
}

/// Predicted and enumerated digit-sum sets of the `σ₃` word under
/// `a → x, b → y, c → z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodedDsSets {
    pub predicted: BTreeSet<i64>,
    pub enumerated: BTreeSet<i64>,
}

/// Pushes the predicted Parikh set through `⟨(x,y,z), ·⟩` and checks the
/// result against enumeration.
pub fn coded_ds_sets(
    seq: &FixedPointStream,
    x: i64,
    y: i64,
    z: i64,
    n: usize,
) -> Result<BTreeSet<i64>> {
    let sets = coded_ds_sets_both(seq, x, y, z, n)?;
    if sets.predicted != sets.enumerated {
        return Err(Error::Invariant(format!(
            "coding ({x},{y},{z}), n={n}: predicted {:?}, enumerated {:?}",
            sets.predicted, sets.enumerated
        )));
    }
    Ok(sets.predicted)
}

/// Both sides of [`coded_ds_sets`], without comparing them.
pub fn coded_ds_sets_both(
    seq: &FixedPointStream,
    x: i64,
    y: i64,
    z: i64,
    n: usize,
) -> Result<CodedDsSets> {
    ensure_sigma3(seq)?;
    if !(x < y && y < z) {
        return domain("coding values must satisfy x < y < z");
    }
    let predicted = predicted_parikh_set(n)?
        .vectors()
        .into_iter()
        .map(|v| x * v[0] + y * v[1] + z * v[2])
        .collect();
    let coding = Coding::new(seq.alphabet().clone(), vec![x, y, z])?;
    let enumerated = digit_sum_set(seq, &coding, n)?;
    Ok(CodedDsSets {
        predicted,
        enumerated,
    })
}

/// Offsets from `x+y+z` for `n = 3 + r`, written symbolically.
pub fn symbolic_offsets(r: usize) -> Vec<String> {
    let offsets: &[[i64; 3]] = match r {
        0 => &OFFSETS_R0,
        1 => &OFFSETS_R1,
        _ => &OFFSETS_R2,
    };
    offsets
        .iter()
        .map(|o| {
            let mut s = String::new();
            for (coef, name) in o.iter().zip(["x", "y", "z"]) {
                match coef {
                    0 => {}
                    1 if s.is_empty() => s.push_str(name),
                    1 => s.push_str(&format!("+{name}")),
                    -1 => s.push_str(&format!("-{name}")),
                    c if s.is_empty() => s.push_str(&format!("{c}{name}")),
                    c => s.push_str(&format!("{c:+}{name}")),
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        })
        .collect()
}

/// Over `0 ≤ x < y < z ≤ max_value`, IVP holds on every `n_from ≤ n ≤ n_to`
/// exactly when `z = y+1 = x+2`.
pub fn verify_coding_grid(
    seq: &FixedPointStream,
    max_value: i64,
    n_from: usize,
    n_to: usize,
) -> Result<Report> {
    ensure_sigma3(seq)?;
    let mut report = ReportBuilder::new(
        "coding-grid",
        format!("0 <= x < y < z <= {max_value}, n={n_from}..={n_to}"),
    );
    let mut holding = Vec::new();
    for x in 0..=max_value {
        for y in x + 1..=max_value {
            for z in y + 1..=max_value {
                let coding = Coding::new(seq.alphabet().clone(), vec![x, y, z])?;
                let ivp = check_ivp(seq, &coding, n_from, n_to)?;
                let expected = z == y + 1 && y == x + 1;
                report.checked(1);
                if ivp.holds_everywhere() {
                    holding.push(format!("({x},{y},{z})"));
                }
                if ivp.holds_everywhere() != expected {
                    report.fail(
                        format!("coding=({x},{y},{z})"),
                        format!(
                            "IVP holds everywhere: {}, failing lengths: {:?}",
                            ivp.holds_everywhere(),
                            ivp.gaps.keys().take(5).collect::<Vec<_>>()
                        ),
                    );
                }
            }
        }
    }
    report.note(format!("IVP holds for {}", holding.join(", ")));
    for r in 0..3 {
        report.note(format!(
            "r={r} offsets from x+y+z: {{{}}}",
            symbolic_offsets(r).join(", ")
        ));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::abelian_complexity;

    #[test]
    fn prediction_shapes() {
        let p = predicted_parikh_set(3).unwrap();
        assert_eq!((p.m, p.r, p.offsets.len()), (1, 0, 7));
        let p = predicted_parikh_set(4).unwrap();
        let expected: BTreeSet<[i64; 3]> = [
            [2, 2, 0],
            [2, 0, 2],
            [1, 2, 1],
            [2, 1, 1],
            [1, 1, 2],
            [0, 2, 2],
        ]
        .into();
        assert_eq!(p.vectors(), expected);
        for n in 3..9 {
            let p = predicted_parikh_set(n).unwrap();
            assert!(p
                .offsets
                .iter()
                .all(|o| o.iter().sum::<i64>() == p.r as i64));
        }
        assert!(predicted_parikh_set(2).is_err());
    }

    #[test]
    fn prop4_small() {
        let w = FixedPointStream::sigma3();
        assert!(verify_prop4(&w, 60).unwrap().passed());
        let got: Vec<usize> = (3..=8)
            .map(|n| abelian_complexity(&w, n).unwrap())
            .collect();
        assert_eq!(got, [7, 6, 6, 7, 6, 6]);
    }

    #[test]
    fn coded_sets() {
        let w = FixedPointStream::sigma3();
        let m = 4;
        let s = coded_ds_sets(&w, 0, 1, 2, 3 * m).unwrap();
        assert_eq!(s, (3 * m as i64 - 2..=3 * m as i64 + 2).collect());
        let s = coded_ds_sets(&w, 0, 1, 3, 3 * m + 1).unwrap();
        let m = m as i64;
        assert_eq!(
            s,
            [4 * m - 2, 4 * m, 4 * m + 1, 4 * m + 2, 4 * m + 3, 4 * m + 4].into()
        );
    }

    #[test]
    fn ivp_reports() {
        let w = FixedPointStream::sigma3();
        let c = Coding::new(w.alphabet().clone(), vec![0, 1, 3]).unwrap();
        let r = check_ivp(&w, &c, 3, 20).unwrap();
        assert!(!r.holds_at(4));
        assert_eq!(r.gaps[&7], vec![7]);
        let t = FixedPointStream::tml();
        let id = Coding::identity(t.alphabet().clone()).unwrap();
        assert!(check_ivp(&t, &id, 1, 40).unwrap().holds_everywhere());
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!(
            symbolic_offsets(1),
            ["x+y-z", "x-y+z", "y", "x", "z", "-x+y+z"]
        );
        assert_eq!(symbolic_offsets(2), ["2x", "2y", "2z", "y+z", "x+y", "x+z"]);
    }

    #[test]
    fn small_grid() {
        let w = FixedPointStream::sigma3();
        let r = verify_coding_grid(&w, 3, 3, 30).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
