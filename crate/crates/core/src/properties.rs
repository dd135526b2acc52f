//! Suffix-swap invariance (property R), the split-and-swap family (property
//! E) and the measure-preserving map between race outcomes that comes with E.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{enumerate_omega, AutomatonError};
use crate::correlation::{bad_prefixes, BadPrefixSets};
use crate::winprob::{check_pair, WinError};
use crate::words::{omega_class_digits, omega_class_unchecked, occurrences_in, OmegaClass, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error(transparent)]
    Pair(#[from] WinError),
    #[error("words have different lengths ({0} and {1})")]
    UnequalLengths(usize, usize),
    #[error("words must have length at least 2")]
    TooShort,
    #[error("{0} does not end a race won by the first word")]
    NotInOmegaV(Word),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

fn check_equal_lengths(v: &Word, w: &Word) -> Result<(), PropertyError> {
    if v.len() != w.len() {
        return Err(PropertyError::UnequalLengths(v.len(), w.len()));
    }
    check_pair(v, w)?;
    Ok(())
}

/// Decides property R from the bad-prefix set: every `f` in `F(v, w)` must
/// make both `fv` and `fw` fail to end a race.
pub fn has_property_r(v: &Word, w: &Word) -> Result<bool, PropertyError> {
    check_equal_lengths(v, w)?;
    Ok(property_r_unchecked(v, w))
}

/// [`has_property_r`] for a pair already known to be valid with equal
/// lengths at most 31.
///
/// A prefix in `D(v,v) ∪ D(w,v)` already spoils `fv`, and one in
/// `D(w,w) ∪ D(v,w)` already spoils `fw`, so only the other word is tested.
pub fn property_r_unchecked(v: &Word, w: &Word) -> bool {
    let d = BadPrefixSets::compute(v, w);
    let blocks_v = d.blocking_v();
    let blocks_w = d.blocking_w();
    let spoiled = |f: &Word, x: &Word| {
        let text = f.concat(x).expect("short enough to pack");
        omega_class_unchecked(&text, v, w) == OmegaClass::NotInOmega
    };
    blocks_v.difference(&blocks_w).all(|f| spoiled(f, w))
        && blocks_w.difference(&blocks_v).all(|f| spoiled(f, v))
}

/// Property R by direct comparison over every `x` of length `n - 1`: `xv`
/// ends a race exactly when `xw` does.
pub fn property_r_brute_force(v: &Word, w: &Word) -> Result<bool, PropertyError> {
    check_equal_lengths(v, w)?;
    let n = v.len();
    Ok(Word::all_of_length(n - 1).all(|x| {
        let xv = omega_class_unchecked(&x.concat(v).unwrap(), v, w) == OmegaClass::NotInOmega;
        let xw = omega_class_unchecked(&x.concat(w).unwrap(), v, w) == OmegaClass::NotInOmega;
        xv == xw
    }))
}

/// Whether all four overlap sets are trivial: no cross overlaps and each word
/// overlaps itself only in full.
pub fn trivial_overlaps(v: &Word, w: &Word) -> bool {
    let only_full = |x: &Word| (1..x.len()).all(|r| x.suffix(r) != x.prefix(r));
    let no_cross = |x: &Word, y: &Word| (1..=x.len().min(y.len())).all(|r| x.suffix(r) != y.prefix(r));
    only_full(v) && only_full(w) && no_cross(v, w) && no_cross(w, v)
}

/// A split `v = ab`, `w = ba` satisfying conditions I–VI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EWitness {
    pub a: Word,
    pub b: Word,
    /// The smallest admissible `S`.
    pub s_set: BTreeSet<Word>,
    /// Largest `m` checked for conditions IV–VI.
    pub bound_m: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EOptions {
    /// Also require `D(v, a^m) ∪ D(w, b^m) ⊆ S ∪ {a, b}` as literally printed.
    pub strict: bool,
    /// Check up to this multiple of the default bound.
    pub bound_factor: usize,
}

fn power_digits(x: &Word, m: usize) -> Vec<u8> {
    let d = x.to_digits();
    d.iter().copied().cycle().take(d.len() * m).collect()
}

/// `D(x, y)` where `y` may be longer than a packed word: only its first
/// `|x|` digits can overlap `x`.
fn bad_prefixes_against(x: &Word, y: &[u8]) -> BTreeSet<Word> {
    let head = Word::from_digits(&y[..y.len().min(x.len())]).expect("binary digits");
    bad_prefixes(x, &head)
}

fn contains_digits(text: &[u8], x: &Word) -> bool {
    occurrences_in(x, text) > 0
}

/// Default stabilization bound for a split with pieces of length `|a|, |b|`.
///
/// Once a power is longer than `|v|` plus one period, every condition is
/// decided by a window that no further power changes.
pub fn stabilization_bound(n: usize, a_len: usize, b_len: usize) -> usize {
    let short = a_len.min(b_len);
    (n + short).div_ceil(short) + 1
}

/// Checks conditions I–VI for one split; returns the witness if they hold.
pub fn check_split(v: &Word, w: &Word, split: usize, opts: EOptions) -> Option<EWitness> {
    let n = v.len();
    let (a, b) = (v.prefix(split), v.suffix(n - split));
    // II, and I read as P(a) = P(b): equal weight alone lets the map change
    // the profile when |a| != |b|
    if b.concat(&a).ok()? != *w || a.ones() != b.ones() || a.len() != b.len() {
        return None;
    }
    // III: D(v,v) ∪ D(w,v) = S ∪ {b} and D(w,w) ∪ D(v,w) = S ∪ {a}
    let d = BadPrefixSets::compute(v, w);
    let (dv, dw) = (d.blocking_v(), d.blocking_w());
    if !dv.contains(&b) || !dw.contains(&a) {
        return None;
    }
    let s: BTreeSet<Word> = dv
        .iter()
        .filter(|&&x| x != b)
        .chain(dw.iter().filter(|&&x| x != a))
        .copied()
        .collect();
    if !s.is_subset(&dv) || !s.is_subset(&dw) {
        return None;
    }
    let mut allowed = s.clone();
    allowed.insert(a);
    allowed.insert(b);
    let within = |sets: &[BTreeSet<Word>]| sets.iter().all(|x| x.is_subset(&allowed));

    let bound = stabilization_bound(n, a.len(), b.len()) * opts.bound_factor.max(1);
    for m in 1..=bound {
        let am = power_digits(&a, m);
        let bm = power_digits(&b, m);
        if m >= 2 {
            // IV
            let (va, wa) = (bad_prefixes_against(v, &am), bad_prefixes_against(w, &am));
            let (vb, wb) = (bad_prefixes_against(v, &bm), bad_prefixes_against(w, &bm));
            if !within(&[va.clone(), wa, vb, wb.clone()]) {
                return None;
            }
            if opts.strict && !within(&[va, wb]) {
                return None;
            }
            // V
            if [v, w].iter().any(|x| contains_digits(&am, x) || contains_digits(&bm, x)) {
                return None;
            }
        }
        // VI
        let mut amb = am;
        amb.extend(b.digits());
        let mut bma = bm;
        bma.extend(a.digits());
        if omega_class_digits(&amb, v, w) != OmegaClass::InOmegaV
            || omega_class_digits(&bma, v, w) != OmegaClass::InOmegaW
        {
            return None;
        }
    }
    Some(EWitness {
        a,
        b,
        s_set: s,
        bound_m: bound,
    })
}

/// The first split, by increasing `|a|`, witnessing property E.
pub fn property_e_witness(v: &Word, w: &Word) -> Result<Option<EWitness>, PropertyError> {
    property_e_witness_with(v, w, EOptions::default())
}

pub fn property_e_witness_with(
    v: &Word,
    w: &Word,
    opts: EOptions,
) -> Result<Option<EWitness>, PropertyError> {
    if v.len() < 2 || w.len() < 2 {
        return Err(PropertyError::TooShort);
    }
    check_equal_lengths(v, w)?;
    Ok((1..v.len()).find_map(|split| check_split(v, w, split, opts)))
}

/// Every split witnessing property E, for censuses.
pub fn all_e_witnesses(v: &Word, w: &Word) -> Result<Vec<EWitness>, PropertyError> {
    if v.len() < 2 || w.len() < 2 {
        return Err(PropertyError::TooShort);
    }
    check_equal_lengths(v, w)?;
    Ok((1..v.len())
        .filter_map(|split| check_split(v, w, split, EOptions::default()))
        .collect())
}

/// Rewrites `z = x a^j from` with `j` maximal as `x b^j to`, without checking
/// that `z` ends a race.
fn swap_tail(z: &Word, a: &Word, b: &Word, from: &Word, to: &Word) -> Option<Word> {
    if !z.ends_with(from) {
        return None;
    }
    let mut rest = z.prefix(z.len() - from.len());
    let mut j = 0;
    while !a.is_empty() && rest.ends_with(a) {
        rest = rest.prefix(rest.len() - a.len());
        j += 1;
    }
    rest.concat(&b.repeat(j).ok()?).ok()?.concat(to).ok()
}

/// `x a^j v -> x b^j w`.
pub fn phi_map(z: &Word, witness: &EWitness, v: &Word, w: &Word) -> Result<Word, PropertyError> {
    check_pair(v, w)?;
    if omega_class_unchecked(z, v, w) != OmegaClass::InOmegaV {
        return Err(PropertyError::NotInOmegaV(*z));
    }
    swap_tail(z, &witness.a, &witness.b, v, w).ok_or(PropertyError::NotInOmegaV(*z))
}

/// The reverse map `x b^j w -> x a^j v`.
pub fn phi_inverse(z: &Word, witness: &EWitness, v: &Word, w: &Word) -> Result<Word, PropertyError> {
    check_pair(v, w)?;
    if omega_class_unchecked(z, v, w) != OmegaClass::InOmegaW {
        return Err(PropertyError::NotInOmegaV(*z));
    }
    swap_tail(z, &witness.b, &witness.a, w, v).ok_or(PropertyError::NotInOmegaV(*z))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub max_len: usize,
    pub omega_v: usize,
    pub omega_w: usize,
    pub injective: bool,
    pub lands_in_omega_w: bool,
    pub preserves_profile: bool,
    pub round_trip: bool,
    pub counterexample: Option<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.lands_in_omega_w
            && self.preserves_profile
            && self.round_trip
            && self.omega_v == self.omega_w
    }
}

/// Checks the map on every race-ending word of length at most `max_len`.
pub fn verify_phi_bijection(
    v: &Word,
    w: &Word,
    witness: &EWitness,
    max_len: usize,
) -> Result<PhiReport, PropertyError> {
    let words = enumerate_omega(v, w, max_len)?;
    let mut report = PhiReport {
        max_len,
        omega_v: 0,
        omega_w: 0,
        injective: true,
        lands_in_omega_w: true,
        preserves_profile: true,
        round_trip: true,
        counterexample: None,
    };
    let note = |report: &mut PhiReport, text: String| {
        if report.counterexample.is_none() {
            report.counterexample = Some(text);
        }
    };
    let mut images: BTreeMap<Word, Word> = BTreeMap::new();
    for (z, class) in &words {
        match class {
            OmegaClass::InOmegaV => {
                report.omega_v += 1;
                let Some(image) = swap_tail(z, &witness.a, &witness.b, v, w) else {
                    report.lands_in_omega_w = false;
                    note(&mut report, format!("{z} has no image"));
                    continue;
                };
                if omega_class_unchecked(&image, v, w) != OmegaClass::InOmegaW {
                    report.lands_in_omega_w = false;
                    note(&mut report, format!("{z} -> {image} does not end a race won by {w}"));
                }
                if (image.zeros(), image.ones()) != (z.zeros(), z.ones()) {
                    report.preserves_profile = false;
                    note(&mut report, format!("{z} -> {image} changes the profile"));
                }
                if let Some(prev) = images.insert(image, *z) {
                    report.injective = false;
                    note(&mut report, format!("{prev} and {z} both map to {image}"));
                }
                if swap_tail(&image, &witness.b, &witness.a, w, v) != Some(*z) {
                    report.round_trip = false;
                    note(&mut report, format!("{z} -> {image} does not map back"));
                }
            }
            OmegaClass::InOmegaW => {
                report.omega_w += 1;
                let back = swap_tail(z, &witness.b, &witness.a, w, v);
                if back.and_then(|x| swap_tail(&x, &witness.a, &witness.b, v, w)) != Some(*z) {
                    report.round_trip = false;
                    note(&mut report, format!("{z} does not map back to itself"));
                }
            }
            OmegaClass::NotInOmega => unreachable!("enumeration yields race endings only"),
        }
    }
    if report.omega_v != report.omega_w {
        let text = format!("{} words won by {v} but {} won by {w}", report.omega_v, report.omega_w);
        note(&mut report, text);
    }
    Ok(report)
}

/// The pair `(ab, ba)` with `a = 0 1^k 0` and `b = 0 1^(k-1) 0 1`.
pub fn e_family_pair(k: usize) -> (Word, Word) {
    assert!(k >= 2);
    let a = Word::from_digits(&[[0].as_slice(), &vec![1; k], &[0]].concat()).unwrap();
    let b = Word::from_digits(&[[0].as_slice(), &vec![1; k - 1], &[0, 1]].concat()).unwrap();
    (a.concat(&b).unwrap(), b.concat(&a).unwrap())
}
