//! Density of property R among pairs of equal length.
//!
//! Pairs are enumerated up to swapping the two words and complementing both,
//! which preserve property R and trivial overlaps. Representatives have `v`
//! starting with 0 and `w > v`; when `w` starts with 1 the orbit also holds
//! `(w̄, v̄)`, so only the one with the smaller first word is kept.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{check_range, SearchError, SearchReport, Verdict};
use crate::ratfunc::format_rational;
use crate::words::Word;

/// Lengths from which a run must be confirmed explicitly.
pub const LONG_RUN_FROM: usize = 13;
const MAX_SHARDS: u64 = 1024;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DensityOptions {
    pub confirm_long_run: bool,
    /// Completed shards are appended here and skipped when the run resumes.
    pub checkpoint: Option<PathBuf>,
}

#[inline]
fn low(r: u32) -> u64 {
    (1u64 << r) - 1
}

/// Bit `r` set for every `1 <= r <= n` with `suffix_r(x) = prefix_r(y)`.
#[inline]
fn overlaps(x: u64, y: u64, n: u32) -> u64 {
    let mut m = 0;
    for r in 1..=n {
        if x & low(r) == y >> (n - r) {
            m |= 1 << r;
        }
    }
    m
}

/// Lengths `n - r` of the bad prefixes for proper overlaps `r < n`.
#[inline]
fn prefix_lengths(ov: u64, n: u32) -> u64 {
    let mut out = 0;
    let mut proper = ov & low(n);
    while proper != 0 {
        let r = proper.trailing_zeros();
        out |= 1 << (n - r);
        proper &= proper - 1;
    }
    out
}

/// Whether `text` (of length `len`, ending in `last`) fails to end a race:
/// `other` occurs somewhere or `last` occurs before the end.
#[inline]
fn spoiled(text: u64, len: u32, last: u64, other: u64, n: u32) -> bool {
    let m = low(n);
    (0..=len - n).any(|shift| {
        let window = (text >> shift) & m;
        window == other || (shift > 0 && window == last)
    })
}

/// Property R for equal-length words of at most 31 letters, with the bad
/// prefix sets held as bitmasks of prefix lengths.
///
/// A prefix set is a set of words, each a prefix of `v` or of `w`. Prefixes
/// no longer than the common prefix of `v` and `w` are the same word, so each
/// set is split into lengths taken from `v` and lengths only taken from `w`
/// beyond the common prefix.
pub fn property_r_fast(v: &Word, w: &Word) -> bool {
    debug_assert_eq!(v.len(), w.len());
    let n = v.len() as u32;
    let (vb, wb) = (v.bits(), w.bits());
    let common = if vb == wb {
        n
    } else {
        (vb ^ wb).leading_zeros() - (64 - n)
    };
    let shared = low(common + 1) & !1;
    let l_vv = prefix_lengths(overlaps(vb, vb, n), n);
    let l_ww = prefix_lengths(overlaps(wb, wb, n), n);
    let l_vw = prefix_lengths(overlaps(vb, wb, n), n);
    let l_wv = prefix_lengths(overlaps(wb, vb, n), n);
    // D(v,v) ∪ D(w,v) and D(w,w) ∪ D(v,w), as (from v, only from w).
    let block_v = (l_vv | (l_wv & shared), l_wv & !shared);
    let block_w = (l_vw | (l_ww & shared), l_ww & !shared);
    let check = |only_here: (u64, u64), last: u64, other: u64| {
        let (mut from_v, mut from_w) = only_here;
        while from_v != 0 {
            let l = from_v.trailing_zeros();
            from_v &= from_v - 1;
            let text = ((vb >> (n - l)) << n) | last;
            if !spoiled(text, l + n, last, other, n) {
                return false;
            }
        }
        while from_w != 0 {
            let l = from_w.trailing_zeros();
            from_w &= from_w - 1;
            let text = ((wb >> (n - l)) << n) | last;
            if !spoiled(text, l + n, last, other, n) {
                return false;
            }
        }
        true
    };
    check((block_v.0 & !block_w.0, block_v.1 & !block_w.1), wb, vb)
        && check((block_w.0 & !block_v.0, block_w.1 & !block_v.1), vb, wb)
}

/// No proper self-overlaps and no cross overlaps at all.
pub fn trivial_overlaps_fast(v: &Word, w: &Word) -> bool {
    let n = v.len() as u32;
    let full = 1u64 << n;
    let (vb, wb) = (v.bits(), w.bits());
    overlaps(vb, vb, n) == full
        && overlaps(wb, wb, n) == full
        && overlaps(vb, wb, n) == 0
        && overlaps(wb, vb, n) == 0
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct ShardCounts {
    r: u64,
    trivial: u64,
}

/// Ordered pairs `v != w` in the shard's orbits, weighted by orbit size.
fn count_shard(n: usize, lo: u64, hi: u64) -> ShardCounts {
    let half = 1u64 << (n - 1);
    let all = low(n as u32);
    let mut out = ShardCounts::default();
    for vb in lo..hi {
        let v = Word::from_bits(vb, n).expect("short word");
        for wb in vb + 1..=all {
            let flip = !wb & all;
            if wb >= half && flip < vb {
                continue;
            }
            let weight = if flip == vb { 2 } else { 4 };
            let w = Word::from_bits(wb, n).expect("short word");
            if property_r_fast(&v, &w) {
                out.r += weight;
            }
            if trivial_overlaps_fast(&v, &w) {
                out.trivial += weight;
            }
        }
    }
    out
}

fn header(n: usize, shards: u64) -> String {
    format!("penney-density n={n} shards={shards}")
}

fn checkpoint_error(path: &Path, reason: impl ToString) -> SearchError {
    SearchError::Checkpoint {
        path: path.display().to_string(),
        reason: reason.to_string(),
    }
}

/// Completed shards from an existing checkpoint; writes the header to a new
/// one.
fn load_checkpoint(path: &Path, n: usize, shards: u64) -> Result<BTreeMap<u64, ShardCounts>, SearchError> {
    let err = |e: std::io::Error| checkpoint_error(path, e);
    let mut done = BTreeMap::new();
    if !path.exists() || std::fs::metadata(path).map_err(err)?.len() == 0 {
        let mut f = File::create(path).map_err(err)?;
        writeln!(f, "{}", header(n, shards)).map_err(err)?;
        return Ok(done);
    }
    let text = std::fs::read_to_string(path).map_err(err)?;
    // Only newline-terminated lines are complete; a torn final line is redone.
    let mut lines = text.split_inclusive('\n').filter_map(|l| l.strip_suffix('\n'));
    let first = lines.next().unwrap_or_default();
    if first != header(n, shards) {
        return Err(checkpoint_error(path, format!("header {first:?} does not match this run")));
    }
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            ["shard", id, r, t] => id.parse().ok().zip(r.parse().ok()).zip(t.parse().ok()),
            _ => None,
        };
        if let Some(((id, r), trivial)) = parsed {
            done.insert(id, ShardCounts { r, trivial });
        }
    }
    if !text.ends_with('\n') {
        let mut f = OpenOptions::new().append(true).open(path).map_err(err)?;
        writeln!(f).map_err(err)?;
    }
    Ok(done)
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Exact proportion of ordered pairs of length-`n` words with property R,
/// and of pairs whose overlaps are all trivial.
///
/// The diagonal `v = w` is counted in the primary density, since property R
/// holds there trivially; the count over distinct pairs is reported too.
pub fn property_r_density(n: usize, opts: &DensityOptions) -> Result<SearchReport, SearchError> {
    check_range("n", n, 2, 15, "2..=15")?;
    if n >= LONG_RUN_FROM && !opts.confirm_long_run {
        return Err(SearchError::LongRunNotConfirmed(n));
    }
    let start = Instant::now();
    let firsts = 1u64 << (n - 1);
    let shards = firsts.min(MAX_SHARDS);
    let size = firsts / shards;
    let mut done = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, n, shards)?,
        None => BTreeMap::new(),
    };
    let resumed = done.len() as u64;
    let sink = match &opts.checkpoint {
        Some(path) => Some(Mutex::new(
            OpenOptions::new().append(true).open(path).map_err(|e| checkpoint_error(path, e))?,
        )),
        None => None,
    };
    let todo: Vec<u64> = (0..shards).filter(|id| !done.contains_key(id)).collect();
    let fresh: Vec<(u64, ShardCounts)> = todo
        .par_iter()
        .map(|&id| {
            let counts = count_shard(n, id * size, (id + 1) * size);
            if let Some(sink) = &sink {
                let mut f = sink.lock().expect("checkpoint lock");
                // Losing a line only means recomputing that shard.
                let _ = writeln!(f, "shard {id} {} {}", counts.r, counts.trivial);
                let _ = f.flush();
            }
            (id, counts)
        })
        .collect();
    done.extend(fresh);
    let total = done.values().fold(ShardCounts::default(), |a, s| ShardCounts {
        r: a.r + s.r,
        trivial: a.trivial + s.trivial,
    });

    let pairs = 1u64 << (2 * n);
    let diagonal = 1u64 << n;
    let density = ratio(total.r + diagonal, pairs);
    let trivial = ratio(total.trivial, pairs);
    let mut report = SearchReport::new("property_r_density").param("n", n);
    report.set_count("pairs", pairs);
    report.set_count("r_pairs", total.r + diagonal);
    report.set_count("r_pairs_distinct", total.r);
    report.set_count("trivial_pairs", total.trivial);
    report.set_count("shards", shards);
    report.set_count("shards_resumed", resumed);
    report.set_value("density", format_rational(&density));
    report.set_value("density_approx", format!("{:.6}", density.to_f64().unwrap_or(f64::NAN)));
    let distinct = ratio(total.r, pairs);
    report.set_value("density_distinct", format_rational(&distinct));
    report.set_value("density_distinct_approx", format!("{:.6}", distinct.to_f64().unwrap_or(f64::NAN)));
    report.set_value("trivial_density", format_rational(&trivial));
    report.set_value("trivial_density_approx", format!("{:.6}", trivial.to_f64().unwrap_or(f64::NAN)));
    report.verdict = Verdict::Evidence;
    Ok(report.finish(start))
}
