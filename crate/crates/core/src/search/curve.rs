//! Proportion of pairs in which the longer word is favored, as a function of
//! the bias.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_range, SearchError, SearchReport, Verdict};
use crate::ratfunc::format_rational;
use crate::winprob::WinEvaluator;
use crate::words::Word;

/// Generator used by sampled sweeps. Changing it changes every sampled curve.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3), seeded with seed_from_u64";

pub const MIN_SAMPLES: u64 = 1000;
const MAX_EXHAUSTIVE_LEN: usize = 9;
const MAX_SAMPLED_LEN: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(with = "crate::ratfunc::rational_string")]
    pub p: BigRational,
    pub favorable: u64,
    pub n_pairs: u64,
    pub proportion: f64,
    /// Binomial 95% half-width; zero for exhaustive sweeps.
    pub ci_half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub mode: CurveMode,
    pub max_len: usize,
    pub sampling: Option<Sampling>,
    pub rng: Option<String>,
    pub rows: Vec<CurveRow>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl Curve {
    /// Header `p,proportion,ci_half_width,n_pairs`, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,proportion,ci_half_width,n_pairs\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.9},{:.9},{}",
                format_rational(&r.p),
                r.proportion,
                r.ci_half_width,
                r.n_pairs
            )
            .unwrap();
        }
        out
    }

    /// Whether the favorable counts never increase along the grid. Exact for
    /// exhaustive sweeps, since every row shares one denominator.
    pub fn non_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].favorable <= w[0].favorable)
    }

    pub fn report(&self) -> SearchReport {
        let mut report = SearchReport::new("longer_favorable_curve")
            .param("max_len", self.max_len)
            .param(
                "grid",
                self.rows.iter().map(|r| format_rational(&r.p)).collect::<Vec<_>>().join(","),
            )
            .param("mode", format!("{:?}", self.mode).to_lowercase());
        if let Some(s) = self.sampling {
            report = report.param("samples", s.samples);
            report.seed = Some(s.seed);
            report.rng = self.rng.clone();
        }
        for r in &self.rows {
            let key = format_rational(&r.p);
            report.set_count(&format!("favorable@{key}"), r.favorable);
            let exact = BigRational::new(BigInt::from(r.favorable), BigInt::from(r.n_pairs.max(1)));
            report.set_value(&format!("proportion@{key}"), format_rational(&exact));
        }
        if let Some(r) = self.rows.first() {
            report.set_count("pairs", r.n_pairs);
        }
        report.set_value("non_increasing", self.non_increasing());
        report.verdict = Verdict::Evidence;
        report.elapsed_ms = self.elapsed_ms;
        report
    }
}

/// `i/20` for `i = 1..=9`.
pub fn default_grid() -> Vec<BigRational> {
    (1..=9).map(|i| BigRational::new(i.into(), 20.into())).collect()
}

fn check_grid(grid: &[BigRational]) -> Result<Vec<WinEvaluator>, SearchError> {
    let half = BigRational::new(1.into(), 2.into());
    if grid.is_empty() {
        return Err(SearchError::OutOfRange {
            name: "grid",
            value: "[]".into(),
            range: "non-empty",
        });
    }
    grid.iter()
        .map(|p| {
            if p.is_positive() && *p < half {
                WinEvaluator::new(p).ok_or(())
            } else {
                Err(())
            }
            .map_err(|_| SearchError::OutOfRange {
                name: "grid point",
                value: format_rational(p),
                range: "0 < p < 1/2",
            })
        })
        .collect()
}

/// Per grid point, how many of the given pairs favor the longer word.
fn favorable_counts(evals: &[WinEvaluator], v: &Word, w: &Word) -> Vec<u64> {
    evals
        .iter()
        .map(|e| u64::from(e.eval_unchecked(v, w).cmp_half().is_gt()))
        .collect()
}

fn add(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Proportion of pairs `(v, w)` with `|w| < |v| <= max_len`, `w` not in `v`,
/// and `Win(v, w; p) > 1/2`, at each grid point.
///
/// Without `sample` every pair is scanned (`max_len <= 9`). With it, pairs
/// are drawn uniformly from the same space by a seeded generator
/// (`max_len <= 17`): a length pair with weight `2^(|v|+|w|)`, then both
/// words uniformly, redrawing pairs where `w` occurs in `v`.
pub fn longer_favorable_curve(
    max_len: usize,
    grid: &[BigRational],
    sample: Option<Sampling>,
) -> Result<Curve, SearchError> {
    let start = Instant::now();
    let evals = check_grid(grid)?;
    let zero = vec![0u64; grid.len()];
    let (counts, n_pairs, mode) = match sample {
        None => {
            check_range("max_len", max_len, 2, MAX_EXHAUSTIVE_LEN, "2..=9 when exhaustive")?;
            let longer: Vec<Word> = (2..=max_len).flat_map(Word::all_of_length).collect();
            let shards: Vec<(u64, Vec<u64>)> = longer
                .par_iter()
                .map(|v| {
                    let mut pairs = 0;
                    let mut acc = zero.clone();
                    for w in (1..v.len()).flat_map(Word::all_of_length).filter(|w| !v.contains(w)) {
                        pairs += 1;
                        acc = add(acc, favorable_counts(&evals, v, &w));
                    }
                    (pairs, acc)
                })
                .collect();
            let (pairs, counts) = shards
                .into_iter()
                .fold((0, zero.clone()), |(n, a), (m, b)| (n + m, add(a, b)));
            (counts, pairs, CurveMode::Exhaustive)
        }
        Some(s) => {
            check_range("max_len", max_len, 2, MAX_SAMPLED_LEN, "2..=17 when sampled")?;
            if s.samples < MIN_SAMPLES {
                return Err(SearchError::TooFewSamples {
                    min: MIN_SAMPLES,
                    got: s.samples,
                });
            }
            let pairs = draw_pairs(max_len, s);
            let counts = pairs
                .par_iter()
                .map(|(v, w)| favorable_counts(&evals, v, w))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(zero.clone(), add);
            (counts, s.samples, CurveMode::Sampled)
        }
    };
    let rows = grid
        .iter()
        .zip(counts)
        .map(|(p, favorable)| {
            let proportion = favorable as f64 / n_pairs as f64;
            let ci_half_width = match mode {
                CurveMode::Exhaustive => 0.0,
                CurveMode::Sampled => 1.96 * (proportion * (1.0 - proportion) / n_pairs as f64).sqrt(),
            };
            CurveRow {
                p: p.clone(),
                favorable,
                n_pairs,
                proportion,
                ci_half_width,
            }
        })
        .collect();
    Ok(Curve {
        mode,
        max_len,
        sampling: sample,
        rng: sample.map(|_| RNG_ALGORITHM.to_string()),
        rows,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// The sampled pairs, drawn sequentially so the sequence depends only on the
/// seed.
fn draw_pairs(max_len: usize, s: Sampling) -> Vec<(Word, Word)> {
    let lengths: Vec<(usize, usize)> = (2..=max_len)
        .flat_map(|l| (1..l).map(move |m| (l, m)))
        .collect();
    let weights: Vec<u64> = lengths.iter().map(|&(l, m)| 1u64 << (l + m)).collect();
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = Vec::with_capacity(s.samples as usize);
    while (out.len() as u64) < s.samples {
        let (l, m) = lengths[pick.sample(&mut rng)];
        let v = Word::from_bits(rng.gen_range(0..1u64 << l), l).expect("short word");
        let w = Word::from_bits(rng.gen_range(0..1u64 << m), m).expect("short word");
        if !v.contains(&w) {
            out.push((v, w));
        }
    }
    out
}
