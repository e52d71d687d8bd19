//! `k`-kernels of integer sequences and the 2-regularity of `ρ⁺_t`.

use rayon::prelude::*;
use serde::Serialize;

use crate::complexity::additive_complexity;
use crate::error::{domain, Result};
use crate::report::{Report, ReportBuilder};
use crate::stream::FixedPointStream;
use crate::tml::{additive_formula, ensure_tml, identity};

/// `(a(k^e·n + c))_{1 ≤ n ≤ T}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelElement {
    pub e: u32,
    pub c: usize,
    pub values: Vec<i64>,
}

/// Where the values of `ρ⁺_t` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// `2⌊log₂ n⌋ + 3`.
    Closed,
    /// Enumerated digit-sum sets.
    Enumerated,
}

impl std::str::FromStr for Source {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Source::Closed),
            "enumerated" => Ok(Source::Enumerated),
            other => domain(format!(
                "unknown source {other:?}; expected closed or enumerated"
            )),
        }
    }
}

/// `ρ⁺_t(n)` for `0 ≤ n ≤ n_max`; index 0 holds 0 and is never read.
pub fn additive_values(seq: &FixedPointStream, source: Source, n_max: usize) -> Result<Vec<i64>> {
    ensure_tml(seq)?;
    let mut values = vec![0i64];
    match source {
        Source::Closed => values.extend((1..=n_max).map(|n| additive_formula(n) as i64)),
        Source::Enumerated => {
            let id = identity();
            let rest: Vec<i64> = (1..=n_max)
                .into_par_iter()
                .map(|n| additive_complexity(seq, &id, n).map(|v| v as i64))
                .collect::<Result<_>>()?;
            values.extend(rest);
        }
    }
    Ok(values)
}

/// Largest index read by a kernel with these parameters.
pub fn kernel_extent(k: usize, e_max: u32, t: usize) -> usize {
    k.pow(e_max) * (t + 1) - 1
}

/// Every kernel element with `e ≤ e_max`, in order of `(e, c)`.
/// `a[n]` is the `n`-th term; `a[0]` is ignored.
pub fn kernel_elements(a: &[i64], k: usize, e_max: u32, t: usize) -> Result<Vec<KernelElement>> {
    if k < 2 {
        return domain("kernel base must be at least 2");
    }
    let need = kernel_extent(k, e_max, t);
    if a.len() <= need {
        return domain(format!(
            "sequence known up to n={}, kernel needs n={need}",
            a.len().saturating_sub(1)
        ));
    }
    Ok((0..=e_max)
        .flat_map(|e| (0..k.pow(e)).map(move |c| (e, c)))
        .map(|(e, c)| KernelElement {
            e,
            c,
            values: (1..=t).map(|n| a[k.pow(e) * n + c]).collect(),
        })
        .collect())
}

/// Kernel elements with repeated value sequences dropped, keeping the first.
pub fn kernel(a: &[i64], k: usize, e_max: u32, t: usize) -> Result<Vec<KernelElement>> {
    let mut seen = std::collections::HashSet::new();
    Ok(kernel_elements(a, k, e_max, t)?
        .into_iter()
        .filter(|el| seen.insert(el.values.clone()))
        .collect())
}

/// `ρ⁺_t(1) = 3` and `ρ⁺_t(2n) = ρ⁺_t(2n+1) = ρ⁺_t(n) + 2` for `n ≤ n_max`,
/// on enumerated values.
pub fn verify_additive_recurrence(seq: &FixedPointStream, n_max: usize) -> Result<Report> {
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    let mut report = ReportBuilder::new("additive-recurrence", format!("n=1..={n_max}"));
    let a = additive_values(seq, Source::Enumerated, 2 * n_max + 1)?;
    report.checked(1);
    if a[1] != 3 {
        report.fail("n=1", format!("rho_plus(1) = {}", a[1]));
    }
    for n in 1..=n_max {
        report.checked(2);
        for m in [2 * n, 2 * n + 1] {
            if a[m] != a[n] + 2 {
                report.fail(
                    format!("n={n}"),
                    format!("rho_plus({m}) = {}, rho_plus({n}) + 2 = {}", a[m], a[n] + 2),
                );
            }
        }
    }
    Ok(report.finish())
}

/// The affinity report together with the distinct kernel sequences.
#[derive(Debug, Clone)]
pub struct KernelAnalysis {
    pub report: Report,
    pub distinct: Vec<KernelElement>,
}

/// Every 2-kernel element with `e ≤ e_max` satisfies `a(2^e n + c) = a(n) + 2e`
/// for `1 ≤ n ≤ t`. Values come from `source`; the closed form is first
/// compared with enumeration on `1..=cross_check`.
pub fn verify_kernel_affine(
    seq: &FixedPointStream,
    source: Source,
    e_max: u32,
    t: usize,
    cross_check: usize,
) -> Result<Report> {
    analyze_kernel(seq, source, e_max, t, cross_check).map(|k| k.report)
}

/// [`verify_kernel_affine`], keeping the distinct kernel sequences.
pub fn analyze_kernel(
    seq: &FixedPointStream,
    source: Source,
    e_max: u32,
    t: usize,
    cross_check: usize,
) -> Result<KernelAnalysis> {
    if t == 0 {
        return domain("truncation length must be at least 1");
    }
    if e_max > 20 {
        return domain("e_max above 20 is out of range");
    }
    let mut report = ReportBuilder::new("kernel", format!("e=0..={e_max}, n=1..={t}"));
    let extent = kernel_extent(2, e_max, t);
    let a = additive_values(seq, source, extent)?;

    let closed = additive_values(seq, Source::Closed, extent)?;
    let check_to = match source {
        Source::Enumerated => extent,
        Source::Closed => cross_check.min(extent),
    };
    let enumerated = match source {
        Source::Enumerated => a.clone(),
        Source::Closed => additive_values(seq, Source::Enumerated, check_to)?,
    };
    for n in 1..=check_to {
        report.checked(1);
        if enumerated[n] != closed[n] {
            report.fail(
                format!("n={n}"),
                format!(
                    "enumerated rho_plus = {}, closed form = {}",
                    enumerated[n], closed[n]
                ),
            );
        }
    }
    report.note(format!(
        "closed form cross-checked against enumeration on n=1..={check_to}"
    ));

    let elements = kernel_elements(&a, 2, e_max, t)?;
    for el in &elements {
        for (idx, &v) in el.values.iter().enumerate() {
            let n = idx + 1;
            report.checked(1);
            let expected = a[n] + 2 * el.e as i64;
            if v != expected {
                report.fail(
                    format!("e={}, c={}, n={n}", el.e, el.c),
                    format!(
                        "a({}) = {v}, a({n}) + {} = {expected}",
                        (1usize << el.e) * n + el.c,
                        2 * el.e
                    ),
                );
            }
        }
    }
    let distinct = kernel(&a, 2, e_max, t)?;
    report.note(format!(
        "{} kernel elements, {} distinct truncated sequences",
        elements.len(),
        distinct.len()
    ));
    Ok(KernelAnalysis {
        report: report.finish(),
        distinct,
    })
}
