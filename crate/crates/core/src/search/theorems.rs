//! Exhaustive checks of the two length-gap theorems at `p = 1/2`.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{check_range, PairFilter, PairValue, SearchError, SearchReport, Verdict};
use crate::winprob::win_at_half;
use crate::words::Word;

/// At most this many favorable pairs are listed individually.
const MAX_LISTED: usize = 64;

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n1/d1` vs `n2/d2`; the products stay far below `u128::MAX` for words of
/// length at most 32.
fn cmp_ratio((n1, d1): (u128, u128), (n2, d2): (u128, u128)) -> Ordering {
    (n1 * d2).cmp(&(n2 * d1))
}

/// Keeps the first pair (in sweep order) with the largest value.
#[derive(Clone, Copy)]
struct Best {
    v: Word,
    w: Word,
    value: (u128, u128),
}

fn better(current: Option<Best>, candidate: Option<Best>) -> Option<Best> {
    match (current, candidate) {
        (Some(a), Some(b)) if cmp_ratio(b.value, a.value) == Ordering::Greater => Some(b),
        (None, b) => b,
        (a, _) => a,
    }
}

/// `(11(10)^m, (10)^m 1)`, whose value at `1/2` approaches `1/2` from below.
pub fn tightness_pair(m: usize) -> (Word, Word) {
    let body = "10".repeat(m);
    let v = format!("11{body}").parse().expect("binary text");
    let w = format!("{body}1").parse().expect("binary text");
    (v, w)
}

/// `1/2 - Win(11(10)^m, (10)^m 1; 1/2)`, exactly.
pub fn tightness_gap(m: usize) -> BigRational {
    let (v, w) = tightness_pair(m);
    let (num, den) = win_at_half(&v, &w);
    BigRational::new(1.into(), 2.into()) - ratio(num, den)
}

/// `(0^{k+1} 1^{n-1}, 1^n)`, which approaches the bound `2/(1+2^k)`.
pub fn extremal_pair(n: usize, k: usize) -> (Word, Word) {
    let v = format!("{}{}", "0".repeat(k + 1), "1".repeat(n - 1)).parse().expect("binary text");
    (v, Word::constant(1, n).expect("short word"))
}

#[derive(Default)]
struct LongerByOne {
    pairs: u64,
    favorable: Vec<(Word, Word, (u128, u128))>,
    counterexamples: Vec<(Word, Word, (u128, u128))>,
    best_nonconstant: Option<Best>,
}

/// Checks that a word one letter longer than `w` can be at least even
/// against `w` at `p = 1/2` only when `w` is constant.
pub fn verify_longer_by_one(n: usize) -> Result<SearchReport, SearchError> {
    check_range("n", n, 2, 12, "2..=12")?;
    let start = Instant::now();
    let filter = PairFilter::new(n + 1, n)?;
    let shards: Vec<LongerByOne> = Word::all_of_length(n + 1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| {
            let mut acc = LongerByOne::default();
            for w in filter.partners(v) {
                acc.pairs += 1;
                let value = win_at_half(&v, &w);
                let constant = w.ones() == 0 || w.zeros() == 0;
                if 2 * value.0 >= value.1 {
                    acc.favorable.push((v, w, value));
                    if !constant {
                        acc.counterexamples.push((v, w, value));
                    }
                } else if !constant {
                    acc.best_nonconstant = better(acc.best_nonconstant, Some(Best { v, w, value }));
                }
            }
            acc
        })
        .collect();
    let total = shards.into_iter().fold(LongerByOne::default(), |mut acc, s| {
        acc.pairs += s.pairs;
        acc.favorable.extend(s.favorable);
        acc.counterexamples.extend(s.counterexamples);
        acc.best_nonconstant = better(acc.best_nonconstant, s.best_nonconstant);
        acc
    });

    let mut report = SearchReport::new("verify_longer_by_one").param("n", n);
    report.set_count("pairs", total.pairs);
    report.set_count("favorable", total.favorable.len() as u64);
    report.set_count("counterexamples", total.counterexamples.len() as u64);
    for (v, w, (num, den)) in total.counterexamples.iter().take(MAX_LISTED) {
        report.witnesses.push(PairValue::new("counterexample", *v, *w, &ratio(*num, *den)));
    }
    for (v, w, (num, den)) in total.favorable.iter().take(MAX_LISTED) {
        report.witnesses.push(PairValue::new("favorable", *v, *w, &ratio(*num, *den)));
    }
    if total.favorable.len() > MAX_LISTED {
        report.notes.push(format!(
            "listing the first {MAX_LISTED} of {} favorable pairs",
            total.favorable.len()
        ));
    }
    let w_kinds: std::collections::BTreeSet<Word> = total.favorable.iter().map(|t| t.1).collect();
    report.set_value(
        "favorable_opponents",
        w_kinds.iter().map(Word::to_string).collect::<Vec<_>>().join(","),
    );
    if let Some(b) = total.best_nonconstant {
        report
            .witnesses
            .push(PairValue::new("best_nonconstant", b.v, b.w, &ratio(b.value.0, b.value.1)));
    }
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        let (v, w) = tightness_pair(m);
        let gap = tightness_gap(m);
        let half = BigRational::new(1.into(), 2.into());
        report.witnesses.push(PairValue::new("tightness", v, w, &(&half - &gap)));
        report.set_value("tightness_gap", crate::ratfunc::format_rational(&gap));
    }
    report.verdict = if total.counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report.finish(start))
}

/// Checks `Win(v, w; 1/2) < 2/(1+2^k)` for every `|v| = n + k`, `|w| = n`
/// with `w` not in `v`, and that the extremal pair comes within `2^{2-n}` of
/// the bound.
pub fn verify_length_gap_bound(n: usize, k: usize) -> Result<SearchReport, SearchError> {
    check_range("n", n, 2, 10, "2..=10")?;
    check_range("k", k, 0, 4, "0..=4")?;
    let start = Instant::now();
    let filter = PairFilter::new(n + k, n)?;
    let scale = 1u128 + (1u128 << k);
    let shards: Vec<(u64, u64, Option<Best>, Option<Best>)> = Word::all_of_length(n + k)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| {
            let (mut pairs, mut violations) = (0u64, 0u64);
            let (mut best, mut first_violation) = (None, None);
            for w in filter.partners(v) {
                pairs += 1;
                let value = win_at_half(&v, &w);
                let here = Some(Best { v, w, value });
                if value.0 * scale >= 2 * value.1 {
                    violations += 1;
                    first_violation = first_violation.or(here);
                }
                best = better(best, here);
            }
            (pairs, violations, best, first_violation)
        })
        .collect();
    let (pairs, violations, best, first_violation) =
        shards.into_iter().fold((0, 0, None, None), |acc, s| {
            (acc.0 + s.0, acc.1 + s.1, better(acc.2, s.2), acc.3.or(s.3))
        });

    let bound = BigRational::new(2.into(), BigInt::from(scale));
    let (ev, ew) = extremal_pair(n, k);
    let (en, ed) = win_at_half(&ev, &ew);
    let extremal_gap = &bound - ratio(en, ed);
    let tolerance = BigRational::new(4.into(), BigInt::from(1u64 << n));
    let extremal_ok = extremal_gap <= tolerance;

    let mut report = SearchReport::new("verify_length_gap_bound").param("n", n).param("k", k);
    report.set_count("pairs", pairs);
    report.set_count("violations", violations);
    report.set_value("bound", crate::ratfunc::format_rational(&bound));
    report.set_value("extremal_gap", crate::ratfunc::format_rational(&extremal_gap));
    report.set_value("extremal_within_tolerance", extremal_ok);
    if let Some(b) = best {
        let value = ratio(b.value.0, b.value.1);
        report.set_value("max_gap", crate::ratfunc::format_rational(&(&bound - &value)));
        report.witnesses.push(PairValue::new("maximizer", b.v, b.w, &value));
    }
    if let Some(b) = first_violation {
        report.witnesses.push(PairValue::new("violation", b.v, b.w, &ratio(b.value.0, b.value.1)));
    }
    report.witnesses.push(PairValue::new("extremal", ev, ew, &ratio(en, ed)));
    report.verdict = if violations == 0 && extremal_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report.finish(start))
}
