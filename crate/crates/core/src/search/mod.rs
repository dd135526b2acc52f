//! Exhaustive and sampled sweeps over pair space.
//!
//! Every exhaustive operation shards its pair space over the first word,
//! evaluates shards on the rayon pool and folds the partial results in shard
//! order, so reports do not depend on the number of workers.

mod census;
mod curve;
mod density;
mod optimizer;
mod theorems;

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::ratfunc::format_rational;
use crate::words::Word;

pub use census::{census_rows, symmetry_census, CensusRow};
pub use curve::{default_grid, longer_favorable_curve, Curve, CurveMode, CurveRow, Sampling, RNG_ALGORITHM};
pub use density::{
    property_r_density, property_r_fast, trivial_overlaps_fast, DensityOptions, LONG_RUN_FROM,
};
pub use optimizer::{
    argmax_win, closed_form_bounds, conjectured_pair, crossover_scan, threshold_approximation,
    threshold_polynomial, threshold_root, Bounds, Side,
};
pub use theorems::{
    extremal_pair, tightness_gap, tightness_pair, verify_length_gap_bound, verify_longer_by_one,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("no pair satisfies the constraints")]
    EmptyPairSpace,
    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { min: u64, got: u64 },
    #[error("n = {0} is a long run and needs explicit confirmation")]
    LongRunNotConfirmed(usize),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: String, reason: String },
}

pub(crate) fn check_range(
    name: &'static str,
    value: usize,
    lo: usize,
    hi: usize,
    range: &'static str,
) -> Result<(), SearchError> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(SearchError::OutOfRange {
            name,
            value: value.to_string(),
            range,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Evidence,
}

/// A pair singled out by a search, with its exact value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairValue {
    pub role: String,
    pub v: Word,
    pub w: Word,
    pub value: String,
    pub approx: f64,
}

impl PairValue {
    pub fn new(role: &str, v: Word, w: Word, value: &BigRational) -> PairValue {
        PairValue {
            role: role.to_string(),
            v,
            w,
            value: format_rational(value),
            approx: value.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub operation: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub witnesses: Vec<PairValue>,
    pub counts: BTreeMap<String, u64>,
    /// Exact rationals as `a/b` text, plus flags and labels.
    pub values: BTreeMap<String, String>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub rng: Option<String>,
    pub notes: Vec<String>,
}

impl SearchReport {
    pub(crate) fn new(operation: &str) -> SearchReport {
        SearchReport {
            operation: operation.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Evidence,
            witnesses: Vec::new(),
            counts: BTreeMap::new(),
            values: BTreeMap::new(),
            elapsed_ms: 0,
            seed: None,
            rng: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> SearchReport {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn set_value(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub(crate) fn set_count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub(crate) fn finish(mut self, start: Instant) -> SearchReport {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn witness(&self, role: &str) -> Option<&PairValue> {
        self.witnesses.iter().find(|p| p.role == role)
    }

    /// The report without its timing, for comparing runs.
    pub fn canonical_json(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if let Some(map) = value.as_object_mut() {
            map.remove("elapsed_ms");
        }
        value
    }
}

/// The set of ordered pairs an exhaustive sweep ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairFilter {
    pub len_v: usize,
    pub len_w: usize,
    /// Same number of ones in both words, as in `W(n, k)`.
    pub require_equal_ones: bool,
    /// `w` is not a subword of `v` (and `v != w`).
    pub require_no_subword: bool,
    /// Keep only the lexicographically smaller of `(v, w)` and `(v̄, w̄)`.
    pub canonical_only: bool,
}

impl PairFilter {
    pub fn new(len_v: usize, len_w: usize) -> Result<PairFilter, SearchError> {
        if len_w < 1 || len_v < len_w || len_v > 32 {
            return Err(SearchError::OutOfRange {
                name: "lengths",
                value: format!("({len_v}, {len_w})"),
                range: "1 <= len_w <= len_v <= 32",
            });
        }
        Ok(PairFilter {
            len_v,
            len_w,
            require_equal_ones: false,
            require_no_subword: true,
            canonical_only: false,
        })
    }

    /// Pairs of `W(n, k)`.
    pub fn w_nk(n: usize, k: usize) -> Result<PairFilter, SearchError> {
        Ok(PairFilter {
            require_equal_ones: true,
            ..PairFilter::new(n + k, n)?
        })
    }

    pub fn accepts(&self, v: &Word, w: &Word) -> bool {
        if v.len() != self.len_v || w.len() != self.len_w {
            return false;
        }
        if self.require_equal_ones && v.ones() != w.ones() {
            return false;
        }
        if self.require_no_subword && v.contains(w) {
            return false;
        }
        !self.canonical_only || (*v, *w) <= (v.bitflip(), w.bitflip())
    }

    /// The accepted partners of `v`, in increasing order.
    pub fn partners(&self, v: Word) -> impl Iterator<Item = Word> + '_ {
        Word::all_of_length(self.len_w).filter(move |w| self.accepts(&v, w))
    }

    /// All accepted pairs, ordered by `v` then `w`.
    pub fn pairs(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        Word::all_of_length(self.len_v).flat_map(move |v| self.partners(v).map(move |w| (v, w)))
    }
}
