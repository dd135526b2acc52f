//! Census of symmetry classes among pairs of equal length.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::density::property_r_fast;
use super::{check_range, PairValue, SearchError, SearchReport, Verdict};
use crate::properties::property_e_witness;
use crate::winprob::{win_at_half, win_probability, SymmetryFlags};
use crate::words::Word;

const LABELS: [&str; 4] = ["constant", "even", "odd", "none"];
/// Pairs listed per symmetry class in a report.
const LISTED_PER_LABEL: usize = 4;

/// A pair with some symmetry, with its other structural properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub v: Word,
    pub w: Word,
    pub label: &'static str,
    pub property_r: bool,
    pub property_e: bool,
    /// `w` is the complement of `v`.
    pub bitflip: bool,
    pub equal_ones: bool,
}

/// Symmetry label of a valid equal-length pair.
///
/// Odd symmetry forces `Win(1/2) = 1/2`, and even or constant symmetry
/// forces equal numbers of ones, so a pair failing both is `none` without
/// building its rational function.
fn label(v: &Word, w: &Word) -> (&'static str, Option<crate::ratfunc::RatFunc>) {
    let (num, den) = win_at_half(v, w);
    if v.ones() != w.ones() && 2 * num != den {
        return ("none", None);
    }
    let f = win_probability(v, w).expect("valid pair");
    (SymmetryFlags::of(&f).label(), Some(f))
}

fn is_rotation(v: &Word, w: &Word) -> bool {
    v.concat(v).map(|vv| vv.contains(w)).unwrap_or(false)
}

#[derive(Default)]
struct Tally {
    counts: BTreeMap<String, u64>,
    rows: Vec<CensusRow>,
    violations: Vec<(Word, Word, String)>,
}

impl Tally {
    fn bump(&mut self, key: String) {
        *self.counts.entry(key).or_insert(0) += 1;
    }

    fn absorb(mut self, other: Tally) -> Tally {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        self.rows.extend(other.rows);
        self.violations.extend(other.violations);
        self
    }
}

fn run(n: usize) -> Result<Tally, SearchError> {
    check_range("n", n, 2, 10, "2..=10")?;
    let firsts: Vec<Word> = Word::all_of_length(n).collect();
    let shards: Vec<Tally> = firsts
        .par_iter()
        .map(|v| {
            let mut t = Tally::default();
            for w in Word::all_of_length(n).filter(|w| w != v) {
                let (label, f) = label(v, &w);
                let property_r = property_r_fast(v, &w);
                let property_e = is_rotation(v, &w)
                    && property_e_witness(v, &w).expect("valid pair").is_some();
                let bitflip = w == v.bitflip();
                let equal_ones = v.ones() == w.ones();
                t.bump("pairs".into());
                t.bump(label.into());
                for (flag, name) in [(property_r, "R"), (property_e, "E"), (bitflip, "bitflip")] {
                    if flag {
                        t.bump(name.into());
                        t.bump(format!("{label}&{name}"));
                    }
                }
                if matches!(label, "constant" | "even") && !equal_ones {
                    t.violations.push((*v, w, format!("{label} pair with unequal numbers of ones")));
                }
                if label == "constant" {
                    let limit = f.as_ref().and_then(|f| f.limit_at_zero().ok());
                    if limit != Some(BigRational::new(1.into(), 2.into())) {
                        t.violations.push((*v, w, "constant pair with limit other than 1/2".into()));
                    }
                }
                if label != "none" {
                    t.rows.push(CensusRow {
                        v: *v,
                        w,
                        label,
                        property_r,
                        property_e,
                        bitflip,
                        equal_ones,
                    });
                }
            }
            t
        })
        .collect();
    Ok(shards.into_iter().fold(Tally::default(), Tally::absorb))
}

/// Every ordered pair of distinct length-`n` words with some symmetry, in
/// lexicographic order.
pub fn census_rows(n: usize) -> Result<Vec<CensusRow>, SearchError> {
    Ok(run(n)?.rows)
}

/// Counts of ordered pairs of distinct length-`n` words by symmetry class,
/// crossed with property R, property E and complementary pairs.
///
/// Fails if a constant or even pair has unequal numbers of ones, or a
/// constant pair's limit at `p -> 0` is not `1/2`.
pub fn symmetry_census(n: usize) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let tally = run(n)?;
    let mut report = SearchReport::new("symmetry_census").param("n", n);
    for label in LABELS {
        report.set_count(label, 0);
    }
    for (k, c) in &tally.counts {
        report.set_count(k, *c);
    }
    let pairs = report.count("pairs");
    let symmetric = pairs - report.count("none");
    report.set_value(
        "symmetric_fraction",
        format!("{:.6}", symmetric as f64 / pairs as f64),
    );
    report.set_value("n_to_minus_half", format!("{:.6}", (n as f64).powf(-0.5)));
    let half = BigRational::new(1.into(), 2.into());
    for label in &LABELS[..3] {
        for row in tally.rows.iter().filter(|r| r.label == *label).take(LISTED_PER_LABEL) {
            let value = crate::winprob::WinEvaluator::new(&half)
                .expect("1/2 is inside (0, 1)")
                .eval_unchecked(&row.v, &row.w)
                .to_rational();
            report.witnesses.push(PairValue::new(label, row.v, row.w, &value));
        }
    }
    report.set_count("violations", tally.violations.len() as u64);
    for (v, w, why) in tally.violations.iter().take(LISTED_PER_LABEL) {
        report.notes.push(format!("({v}, {w}): {why}"));
    }
    report.verdict = if tally.violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winprob::classify_symmetry;
    use crate::words::make_word;

    fn find<'a>(rows: &'a [CensusRow], v: &str, w: &str) -> Option<&'a CensusRow> {
        let (v, w) = (make_word(v).unwrap(), make_word(w).unwrap());
        rows.iter().find(|r| r.v == v && r.w == w)
    }

    #[test]
    fn screen_agrees_with_full_classification() {
        for n in 2..=6 {
            for v in Word::all_of_length(n) {
                for w in Word::all_of_length(n).filter(|w| *w != v) {
                    assert_eq!(label(&v, &w).0, classify_symmetry(&v, &w).unwrap().label(), "{v} {w}");
                }
            }
        }
    }

    #[test]
    fn named_pairs_at_four() {
        let rows = census_rows(4).unwrap();
        assert_eq!(find(&rows, "1100", "1010").unwrap().label, "even");
        assert_eq!(find(&rows, "1000", "0110").unwrap().label, "odd");
        let r = symmetry_census(4).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("pairs"), 16 * 15);
        assert_eq!(
            r.count("pairs"),
            LABELS.iter().map(|l| r.count(l)).sum::<u64>()
        );
        // Complementary pairs are always odd.
        assert_eq!(r.count("bitflip"), 16);
        assert_eq!(r.count("odd&bitflip"), 16);
    }

    #[test]
    fn minimal_constant_pair_at_eight() {
        let rows = census_rows(8).unwrap();
        let row = find(&rows, "01100101", "01010110").unwrap();
        assert_eq!(row.label, "constant");
        assert!(!row.property_r);
        assert!(row.property_e);
        let r = symmetry_census(8).unwrap();
        assert!(r.passed());
        assert!(rows.iter().filter(|r| r.label == "constant" || r.label == "even").all(|r| r.equal_ones));
    }

    #[test]
    fn census_range_guard() {
        assert!(symmetry_census(1).is_err());
        assert!(symmetry_census(11).is_err());
    }
}
