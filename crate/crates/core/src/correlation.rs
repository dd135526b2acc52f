//! Overlap sets, correlation polynomials and bad-prefix sets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrelationError {
    #[error("words have different lengths ({0} and {1})")]
    UnequalLengths(usize, usize),
}

/// Lengths `r` for which the last `r` digits of `source` equal the first `r`
/// digits of `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OverlapSet {
    pub source: Word,
    pub target: Word,
    pub lengths: Vec<usize>,
}

impl OverlapSet {
    pub fn contains(&self, r: usize) -> bool {
        self.lengths.binary_search(&r).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// The overlap words themselves, shortest first.
    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.lengths.iter().map(move |&r| self.target.prefix(r))
    }

    pub fn max(&self) -> Option<usize> {
        self.lengths.last().copied()
    }
}

pub fn overlap_set(v: &Word, w: &Word) -> OverlapSet {
    let max = v.len().min(w.len());
    OverlapSet {
        source: *v,
        target: *w,
        lengths: (1..=max).filter(|&r| v.suffix(r) == w.prefix(r)).collect(),
    }
}

/// `sum c_{ij} p^{-i} (1-p)^{-j}` keyed by `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CorrelationPoly {
    pub terms: BTreeMap<(u32, u32), u64>,
}

impl CorrelationPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_overlaps(set: &OverlapSet) -> CorrelationPoly {
        let mut terms = BTreeMap::new();
        for u in set.words() {
            *terms.entry((u.ones() as u32, u.zeros() as u32)).or_insert(0) += 1;
        }
        CorrelationPoly { terms }
    }

    /// Largest exponents of `p^{-1}` and `(1-p)^{-1}`.
    pub fn max_exponents(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }

    /// Value at `p = 1/2`, where every term is `2^{i+j}`.
    pub fn at_half(&self) -> u128 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| (c as u128) << (i + j))
            .sum()
    }
}

impl Serialize for CorrelationPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            ones: u32,
            zeros: u32,
            coeff: u64,
        }
        s.collect_seq(self.terms.iter().map(|(&(ones, zeros), &coeff)| Term {
            ones,
            zeros,
            coeff,
        }))
    }
}

pub fn correlation_poly(v: &Word, w: &Word) -> CorrelationPoly {
    CorrelationPoly::from_overlaps(&overlap_set(v, w))
}

/// `vw` at `p = 1/2`, straight from the packed bits: `sum 2^r` over overlap
/// lengths `r`.
#[inline]
pub fn correlation_at_half(v: &Word, w: &Word) -> u128 {
    let (n, m) = (v.len(), w.len());
    let mut total = 0u128;
    for r in 1..=n.min(m) {
        if v.bits() & ((1u64 << r) - 1) == w.bits() >> (m - r) {
            total += 1u128 << r;
        }
    }
    total
}

/// Non-empty prefixes `x_1 .. x_{|x|-k}` of `x` for every overlap length `k`
/// of `(x, y)`. Lengths may differ.
pub fn bad_prefixes(x: &Word, y: &Word) -> BTreeSet<Word> {
    overlap_set(x, y)
        .lengths
        .iter()
        .filter(|&&k| k < x.len())
        .map(|&k| x.prefix(x.len() - k))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPrefixSets {
    pub d_vv: BTreeSet<Word>,
    pub d_ww: BTreeSet<Word>,
    pub d_vw: BTreeSet<Word>,
    pub d_wv: BTreeSet<Word>,
    pub f: BTreeSet<Word>,
}

impl BadPrefixSets {
    /// The four `D` sets and their union `F`, for words of any lengths.
    pub fn compute(v: &Word, w: &Word) -> BadPrefixSets {
        let d_vv = bad_prefixes(v, v);
        let d_ww = bad_prefixes(w, w);
        let d_vw = bad_prefixes(v, w);
        let d_wv = bad_prefixes(w, v);
        let f = d_vv
            .iter()
            .chain(&d_ww)
            .chain(&d_vw)
            .chain(&d_wv)
            .copied()
            .collect();
        BadPrefixSets {
            d_vv,
            d_ww,
            d_vw,
            d_wv,
            f,
        }
    }

    /// Like [`BadPrefixSets::compute`] but only for equal lengths, which is
    /// what the property-R test requires.
    pub fn equal_length(v: &Word, w: &Word) -> Result<BadPrefixSets, CorrelationError> {
        if v.len() != w.len() {
            return Err(CorrelationError::UnequalLengths(v.len(), w.len()));
        }
        Ok(BadPrefixSets::compute(v, w))
    }

    /// `D(v,v) ∪ D(w,v)`: prefixes that cannot precede a final `v`.
    pub fn blocking_v(&self) -> BTreeSet<Word> {
        self.d_vv.union(&self.d_wv).copied().collect()
    }

    /// `D(w,w) ∪ D(v,w)`: prefixes that cannot precede a final `w`.
    pub fn blocking_w(&self) -> BTreeSet<Word> {
        self.d_ww.union(&self.d_vw).copied().collect()
    }
}

pub fn bad_prefix_sets(v: &Word, w: &Word) -> BadPrefixSets {
    BadPrefixSets::compute(v, w)
}

/// Checks that the periods `n - i` of the self-overlaps of `v` are closed under
/// addition, for sums below `n`.
pub fn forward_propagation_holds(v: &Word) -> bool {
    let n = v.len();
    let periods: BTreeSet<usize> = overlap_set(v, v).lengths.iter().map(|&i| n - i).collect();
    periods.iter().all(|&s| {
        periods
            .iter()
            .filter(|&&t| s + t < n)
            .all(|&t| periods.contains(&(s + t)))
    })
}
