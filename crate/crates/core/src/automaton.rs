//! The prefix-pair graph of a two-word race, and the exact absorbing-chain
//! computations built on it.
//!
//! A vertex records, for each word, the longest suffix of the text read so
//! far that is a prefix of that word. Reading a letter moves to the vertex of
//! the extended text; a vertex whose component is a whole word absorbs.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::winprob::{check_pair, WinError};
use crate::words::{OmegaClass, Word};

/// Longest enumeration length accepted by [`enumerate_omega`].
pub const MAX_ENUMERATE_LEN: usize = 30;
/// Longest length accepted by [`profile_counts`].
pub const MAX_PROFILE_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Pair(#[from] WinError),
    #[error("length bound {bound} exceeds the maximum {max}")]
    BoundExceeded { bound: usize, max: usize },
    #[error("probability must lie strictly between 0 and 1")]
    ProbabilityOutOfRange,
    #[error("empty word")]
    EmptyWord,
}

/// A pair of prefixes; for the single-word graph `w` is always empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrefixPair {
    pub v: Word,
    pub w: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexKind {
    Transient,
    WinV,
    WinW,
}

#[derive(Debug, Clone)]
pub struct PrefixPairAutomaton {
    v: Word,
    rival: Option<Word>,
    vertices: Vec<PrefixPair>,
    kinds: Vec<VertexKind>,
    edges: Vec<[Option<usize>; 2]>,
    index: HashMap<PrefixPair, usize>,
}

/// Longest suffix of `text` that is a prefix of `pattern`.
fn longest_overlap(text: &Word, pattern: &Word) -> Word {
    let top = text.len().min(pattern.len());
    (0..=top)
        .rev()
        .map(|r| text.suffix(r))
        .find(|s| pattern.starts_with(s))
        .unwrap_or(Word::EMPTY)
}

fn step(prefix: &Word, letter: u8, pattern: &Word) -> Word {
    let extended = prefix.push(letter).expect("prefix is shorter than the word");
    longest_overlap(&extended, pattern)
}

impl PrefixPairAutomaton {
    /// Breadth-first construction from `(∅, ∅)`, label 0 before label 1.
    pub fn build(v: &Word, w: &Word) -> Result<PrefixPairAutomaton, AutomatonError> {
        check_pair(v, w)?;
        Ok(Self::construct(*v, Some(*w)))
    }

    /// The graph with rival tracking disabled; its absorption time is the
    /// waiting time for `v`.
    pub fn build_single(v: &Word) -> Result<PrefixPairAutomaton, AutomatonError> {
        if v.is_empty() {
            return Err(AutomatonError::EmptyWord);
        }
        Ok(Self::construct(*v, None))
    }

    fn construct(v: Word, rival: Option<Word>) -> PrefixPairAutomaton {
        let mut g = PrefixPairAutomaton {
            v,
            rival,
            vertices: Vec::new(),
            kinds: Vec::new(),
            edges: Vec::new(),
            index: HashMap::new(),
        };
        let start = PrefixPair {
            v: Word::EMPTY,
            w: Word::EMPTY,
        };
        g.insert(start);
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            if g.kinds[s] != VertexKind::Transient {
                continue;
            }
            let here = g.vertices[s];
            for letter in 0..2u8 {
                let next = PrefixPair {
                    v: step(&here.v, letter, &v),
                    w: match rival {
                        Some(w) => step(&here.w, letter, &w),
                        None => Word::EMPTY,
                    },
                };
                let t = match g.index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = g.insert(next);
                        queue.push_back(t);
                        t
                    }
                };
                g.edges[s][letter as usize] = Some(t);
            }
        }
        for (s, kind) in g.kinds.iter().enumerate() {
            let out = g.edges[s].iter().flatten().count();
            match kind {
                VertexKind::Transient => assert_eq!(out, 2, "transient vertex must be complete"),
                _ => assert_eq!(out, 0, "absorbing vertex must have no out-edges"),
            }
        }
        let bound = (v.len() + 1) * (rival.map_or(0, |w| w.len()) + 1);
        assert!(g.vertices.len() <= bound);
        g
    }

    fn insert(&mut self, pair: PrefixPair) -> usize {
        let id = self.vertices.len();
        let kind = if pair.v == self.v {
            VertexKind::WinV
        } else if self.rival == Some(pair.w) {
            VertexKind::WinW
        } else {
            VertexKind::Transient
        };
        self.vertices.push(pair);
        self.kinds.push(kind);
        self.edges.push([None, None]);
        self.index.insert(pair, id);
        id
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn rival(&self) -> Option<&Word> {
        self.rival.as_ref()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in breadth-first discovery order; index 0 is the start.
    pub fn vertices(&self) -> &[PrefixPair] {
        &self.vertices
    }

    pub fn kind(&self, s: usize) -> VertexKind {
        self.kinds[s]
    }

    pub fn successor(&self, s: usize, letter: u8) -> Option<usize> {
        self.edges[s][letter as usize]
    }

    pub fn vertex_id(&self, pair: &PrefixPair) -> Option<usize> {
        self.index.get(pair).copied()
    }

    pub fn absorbing(&self, kind: VertexKind) -> impl Iterator<Item = PrefixPair> + '_ {
        self.vertices
            .iter()
            .zip(&self.kinds)
            .filter(move |(_, &k)| k == kind)
            .map(|(p, _)| *p)
    }

    /// `(from, letter, to)` in vertex order, label 0 first.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u8, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(s, out)| {
            out.iter()
                .enumerate()
                .filter_map(move |(l, t)| t.map(|t| (s, l as u8, t)))
        })
    }

    /// Builds `b x_s - a x_{s·1} - (b-a) x_{s·0} = rhs_s` over the transient
    /// vertices for `q = a/b`. `absorbed` gives the boundary value contributed
    /// by an absorbing successor and `constant` the per-row constant.
    fn system(
        &self,
        q: &BigRational,
        absorbed: impl Fn(VertexKind) -> i64,
        constant: impl Fn(i64) -> i64,
    ) -> Result<(Vec<usize>, Vec<Vec<i64>>, Vec<i64>), AutomatonError> {
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        if *q <= zero || *q >= one {
            return Err(AutomatonError::ProbabilityOutOfRange);
        }
        let a = q.numer().to_i64().ok_or(AutomatonError::ProbabilityOutOfRange)?;
        let b = q.denom().to_i64().ok_or(AutomatonError::ProbabilityOutOfRange)?;
        let transient: Vec<usize> = (0..self.len())
            .filter(|&s| self.kinds[s] == VertexKind::Transient)
            .collect();
        let mut column = vec![usize::MAX; self.len()];
        for (i, &s) in transient.iter().enumerate() {
            column[s] = i;
        }
        let n = transient.len();
        let mut m = vec![vec![0i64; n]; n];
        let mut rhs = vec![0i64; n];
        for (i, &s) in transient.iter().enumerate() {
            m[i][i] += b;
            rhs[i] = constant(b);
            for (letter, weight) in [(0u8, b - a), (1u8, a)] {
                let t = self.edges[s][letter as usize].unwrap();
                match self.kinds[t] {
                    VertexKind::Transient => m[i][column[t]] -= weight,
                    kind => rhs[i] += weight * absorbed(kind),
                }
            }
        }
        Ok((transient, m, rhs))
    }

    /// Probability that the walk from the start with `P(1) = q` is absorbed at
    /// a vertex won by `v`.
    pub fn absorption_win(&self, q: &BigRational) -> Result<BigRational, AutomatonError> {
        let (transient, m, rhs) = self.system(
            q,
            |k| i64::from(k == VertexKind::WinV),
            |_| 0,
        )?;
        debug_assert_eq!(transient[0], 0);
        Ok(linalg::solve(&m, &rhs).swap_remove(0))
    }

    /// Expected number of letters read before absorption.
    pub fn expected_absorption_time(&self, q: &BigRational) -> Result<BigRational, AutomatonError> {
        let (_, m, rhs) = self.system(q, |_| 0, |b| b)?;
        Ok(linalg::solve(&m, &rhs).swap_remove(0))
    }

    /// Deterministic DOT rendering in discovery order. The empty prefix is
    /// drawn as `∅` and absorbing vertices as double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let title = match self.rival {
            Some(w) => format!("{},{}", self.v, w),
            None => self.v.to_string(),
        };
        writeln!(out, "digraph \"G_{title}\" {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for (s, pair) in self.vertices.iter().enumerate() {
            let shape = match self.kinds[s] {
                VertexKind::Transient => "circle",
                _ => "doublecircle",
            };
            writeln!(out, "  n{s} [label=\"{}\", shape={shape}];", self.label(pair)).unwrap();
        }
        for (s, letter, t) in self.edges() {
            writeln!(out, "  n{s} -> n{t} [label=\"{letter}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    fn label(&self, pair: &PrefixPair) -> String {
        let show = |w: &Word| {
            if w.is_empty() {
                "∅".to_string()
            } else {
                w.to_string()
            }
        };
        match self.rival {
            Some(_) => format!("({},{})", show(&pair.v), show(&pair.w)),
            None => format!("({})", show(&pair.v)),
        }
    }
}

/// A graph read back from DOT text produced by [`PrefixPairAutomaton::to_dot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    /// `(label, absorbing)` by node number.
    pub nodes: Vec<(String, bool)>,
    pub edges: Vec<(usize, u8, usize)>,
}

/// Parses the subset of DOT emitted by [`PrefixPairAutomaton::to_dot`].
pub fn parse_dot(text: &str) -> Option<DotGraph> {
    fn node_id(token: &str) -> Option<usize> {
        token.trim().strip_prefix('n')?.parse().ok()
    }
    fn quoted(attrs: &str) -> Option<&str> {
        let start = attrs.find("label=\"")? + 7;
        let end = start + attrs[start..].find('"')?;
        Some(&attrs[start..end])
    }
    let mut nodes = BTreeMap::new();
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        let Some((head, attrs)) = line.split_once('[') else {
            continue;
        };
        if let Some((from, to)) = head.split_once("->") {
            let letter = quoted(attrs)?.parse().ok()?;
            edges.push((node_id(from)?, letter, node_id(to)?));
        } else {
            let id = node_id(head)?;
            nodes.insert(id, (quoted(attrs)?.to_string(), attrs.contains("doublecircle")));
        }
    }
    let count = nodes.len();
    let nodes: Vec<(String, bool)> = nodes
        .into_iter()
        .enumerate()
        .map(|(i, (id, n))| (i == id).then_some(n))
        .collect::<Option<_>>()?;
    debug_assert_eq!(nodes.len(), count);
    Some(DotGraph { nodes, edges })
}

/// All words of length at most `bound` that end the race, with the winner,
/// ordered by length then lexicographically.
pub fn enumerate_omega(
    v: &Word,
    w: &Word,
    bound: usize,
) -> Result<Vec<(Word, OmegaClass)>, AutomatonError> {
    if bound > MAX_ENUMERATE_LEN {
        return Err(AutomatonError::BoundExceeded {
            bound,
            max: MAX_ENUMERATE_LEN,
        });
    }
    let g = PrefixPairAutomaton::build(v, w)?;
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Word::EMPTY)];
    while let Some((s, text)) = stack.pop() {
        match g.kinds[s] {
            VertexKind::WinV => out.push((text, OmegaClass::InOmegaV)),
            VertexKind::WinW => out.push((text, OmegaClass::InOmegaW)),
            VertexKind::Transient if text.len() < bound => {
                for letter in 0..2u8 {
                    let t = g.edges[s][letter as usize].unwrap();
                    stack.push((t, text.push(letter).unwrap()));
                }
            }
            VertexKind::Transient => {}
        }
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

/// Counts of race-ending words by `(zeros, ones)` for each winner.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProfileTables {
    pub v: BTreeMap<(usize, usize), u128>,
    pub w: BTreeMap<(usize, usize), u128>,
}

impl ProfileTables {
    /// Whether the `v` table is unchanged by swapping zeros and ones.
    pub fn v_symmetric(&self) -> bool {
        self.v
            .iter()
            .all(|(&(z, o), c)| self.v.get(&(o, z)) == Some(c))
    }

    /// Probability mass of all listed words at `P(1) = q`.
    pub fn mass(&self, q: f64) -> f64 {
        self.v
            .iter()
            .chain(&self.w)
            .map(|(&(z, o), &c)| c as f64 * q.powi(o as i32) * (1.0 - q).powi(z as i32))
            .sum()
    }
}

/// Profile tables for words of length at most `bound`, by dynamic programming
/// over the graph without listing the words.
pub fn profile_counts(v: &Word, w: &Word, bound: usize) -> Result<ProfileTables, AutomatonError> {
    if bound > MAX_PROFILE_LEN {
        return Err(AutomatonError::BoundExceeded {
            bound,
            max: MAX_PROFILE_LEN,
        });
    }
    let g = PrefixPairAutomaton::build(v, w)?;
    let mut tables = ProfileTables::default();
    // layer[s][ones] = number of texts of the current length ending at s
    let mut layer = vec![vec![0u128; bound + 1]; g.len()];
    layer[0][0] = 1;
    for len in 1..=bound {
        let mut next = vec![vec![0u128; bound + 1]; g.len()];
        for s in 0..g.len() {
            if g.kinds[s] != VertexKind::Transient {
                continue;
            }
            for ones in 0..len {
                let c = layer[s][ones];
                if c == 0 {
                    continue;
                }
                next[g.edges[s][0].unwrap()][ones] += c;
                next[g.edges[s][1].unwrap()][ones + 1] += c;
            }
        }
        for s in 0..g.len() {
            let table = match g.kinds[s] {
                VertexKind::Transient => continue,
                VertexKind::WinV => &mut tables.v,
                VertexKind::WinW => &mut tables.w,
            };
            for (ones, &c) in next[s].iter().enumerate() {
                if c > 0 {
                    *table.entry((len - ones, ones)).or_insert(0) += c;
                }
            }
        }
        layer = next;
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winprob::{expected_hitting_time, is_valid_pair, win_probability};
    use crate::words::{make_word, omega_class};
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        make_word(s).unwrap()
    }

    fn pp(a: &str, b: &str) -> PrefixPair {
        let word = |s: &str| if s.is_empty() { Word::EMPTY } else { w(s) };
        PrefixPair { v: word(a), w: word(b) }
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn race_1100_1010() {
        let g = PrefixPairAutomaton::build(&w("1100"), &w("1010")).unwrap();
        assert_eq!(g.successor(0, 0), Some(0));
        let wins_v: Vec<_> = g.absorbing(VertexKind::WinV).collect();
        let wins_w: Vec<_> = g.absorbing(VertexKind::WinW).collect();
        // reached from (110,10) by a 0; the unreduced rival text 100 is not a
        // prefix of 1010, so the rival component resets
        assert_eq!(wins_v, vec![pp("1100", "")]);
        let from = g.vertex_id(&pp("110", "10")).unwrap();
        assert_eq!(g.vertices()[g.successor(from, 0).unwrap()], pp("1100", ""));
        assert_eq!(wins_w, vec![pp("", "1010")]);
        let from = g.vertex_id(&pp("1", "101")).unwrap();
        assert_eq!(g.vertices()[g.successor(from, 0).unwrap()], pp("", "1010"));
        assert_eq!(g.absorption_win(&rat(1, 2)).unwrap(), rat(5, 9));
    }

    #[test]
    fn single_letters() {
        let g = PrefixPairAutomaton::build(&w("1"), &w("0")).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.kind(1), VertexKind::WinW);
        assert_eq!(g.kind(2), VertexKind::WinV);
        assert_eq!(g.absorption_win(&rat(1, 3)).unwrap(), rat(1, 3));
        assert_eq!(g.to_dot(), PrefixPairAutomaton::build(&w("1"), &w("0")).unwrap().to_dot());
        assert_eq!(
            g.to_dot(),
            "digraph \"G_1,0\" {\n  rankdir=LR;\n  n0 [label=\"(∅,∅)\", shape=circle];\n  \
             n1 [label=\"(∅,0)\", shape=doublecircle];\n  n2 [label=\"(1,∅)\", shape=doublecircle];\n  \
             n0 -> n1 [label=\"0\"];\n  n0 -> n2 [label=\"1\"];\n}\n"
        );
    }

    #[test]
    fn worked_pair_value() {
        let g = PrefixPairAutomaton::build(&w("1101110"), &w("0110")).unwrap();
        assert_eq!(g.absorption_win(&rat(1, 2)).unwrap(), rat(5, 72));
    }

    #[test]
    fn expected_times() {
        let t = |s: &str| {
            PrefixPairAutomaton::build_single(&w(s))
                .unwrap()
                .expected_absorption_time(&rat(1, 2))
                .unwrap()
        };
        assert_eq!(t("11"), rat(6, 1));
        assert_eq!(t("0"), rat(2, 1));
        assert_eq!(t("1101110"), rat(136, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PrefixPairAutomaton::build(&w("11"), &w("011")),
            Err(AutomatonError::Pair(WinError::Subword { .. }))
        ));
        let g = PrefixPairAutomaton::build(&w("1"), &w("0")).unwrap();
        assert_eq!(g.absorption_win(&rat(1, 1)), Err(AutomatonError::ProbabilityOutOfRange));
        assert!(matches!(
            enumerate_omega(&w("01"), &w("10"), 31),
            Err(AutomatonError::BoundExceeded { .. })
        ));
        assert!(matches!(
            profile_counts(&w("01"), &w("10"), 65),
            Err(AutomatonError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn oracle_matches_conway_small() {
        let qs = [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3)];
        for n in 1..=4 {
            for m in 1..=4 {
                for v in Word::all_of_length(n) {
                    for x in Word::all_of_length(m) {
                        if !is_valid_pair(&v, &x) {
                            continue;
                        }
                        let g = PrefixPairAutomaton::build(&v, &x).unwrap();
                        let f = win_probability(&v, &x).unwrap();
                        for q in &qs {
                            assert_eq!(g.absorption_win(q).unwrap(), f.evaluate(q).unwrap(), "{v} {x} {q}");
                        }
                    }
                }
            }
        }
        for n in 1..=6 {
            for v in Word::all_of_length(n) {
                let g = PrefixPairAutomaton::build_single(&v).unwrap();
                let e = expected_hitting_time(&v).unwrap();
                assert_eq!(g.expected_absorption_time(&rat(1, 3)).unwrap(), e.evaluate(&rat(1, 3)).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let got = enumerate_omega(&w("01"), &w("10"), 4).unwrap();
        let v: Vec<String> = got
            .iter()
            .filter(|(_, c)| *c == OmegaClass::InOmegaV)
            .map(|(x, _)| x.to_string())
            .collect();
        let x: Vec<String> = got
            .iter()
            .filter(|(_, c)| *c == OmegaClass::InOmegaW)
            .map(|(x, _)| x.to_string())
            .collect();
        assert_eq!(v, ["01", "001", "0001"]);
        assert_eq!(x, ["10", "110", "1110"]);
        let got = enumerate_omega(&w("1100"), &w("1010"), 4).unwrap();
        assert_eq!(got, vec![(w("1010"), OmegaClass::InOmegaW), (w("1100"), OmegaClass::InOmegaV)]);
    }

    fn brute_force(v: &Word, x: &Word, bound: usize) -> BTreeSet<(Word, OmegaClass)> {
        (1..=bound)
            .flat_map(Word::all_of_length)
            .filter_map(|u| match omega_class(&u, v, x).unwrap() {
                OmegaClass::NotInOmega => None,
                c => Some((u, c)),
            })
            .collect()
    }

    #[test]
    fn enumeration_is_exhaustive() {
        for n in 1..=4 {
            for m in 1..=4 {
                for v in Word::all_of_length(n) {
                    for x in Word::all_of_length(m) {
                        if !is_valid_pair(&v, &x) {
                            continue;
                        }
                        let got: BTreeSet<_> = enumerate_omega(&v, &x, 10).unwrap().into_iter().collect();
                        assert_eq!(got, brute_force(&v, &x, 10), "{v} {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn profiles() {
        let t = profile_counts(&w("1100"), &w("1010"), 4).unwrap();
        assert_eq!(t.v, BTreeMap::from([((2, 2), 1)]));
        let t = profile_counts(&w("1100"), &w("1010"), 20).unwrap();
        assert!(t.v_symmetric());
        let t = profile_counts(&w("01"), &w("10"), 10).unwrap();
        for len in 2..=10 {
            let total: u128 = t
                .v
                .iter()
                .chain(&t.w)
                .filter(|(&(z, o), _)| z + o == len)
                .map(|(_, c)| c)
                .sum();
            assert_eq!(total, 2, "{len}");
        }
    }

    #[test]
    fn profiles_agree_with_enumeration() {
        let (v, x) = (w("0110"), w("1011"));
        let t = profile_counts(&v, &x, 14).unwrap();
        let mut expected = ProfileTables::default();
        for (u, c) in enumerate_omega(&v, &x, 14).unwrap() {
            let table = if c == OmegaClass::InOmegaV { &mut expected.v } else { &mut expected.w };
            *table.entry((u.zeros(), u.ones())).or_insert(0) += 1;
        }
        assert_eq!(t, expected);
    }

    #[test]
    fn probability_mass_converges() {
        let deficit = |v: &Word, x: &Word, l: usize| 1.0 - profile_counts(v, x, l).unwrap().mass(0.5);
        for n in 1..=3 {
            for m in 1..=3 {
                for v in Word::all_of_length(n) {
                    for x in Word::all_of_length(m) {
                        if is_valid_pair(&v, &x) {
                            assert!(deficit(&v, &x, 40) < 1e-3, "{v} {x}");
                        }
                    }
                }
            }
        }
        assert!(deficit(&w("1100"), &w("1010"), 40) < 1e-3);
        let (v, x) = (w("1101110"), w("0110"));
        let seq: Vec<f64> = [10, 20, 40, 64].iter().map(|&l| deficit(&v, &x, l)).collect();
        assert!(seq.windows(2).all(|p| p[1] < p[0] && p[1] >= 0.0), "{seq:?}");
    }

    #[test]
    fn dot_round_trip() {
        let g = PrefixPairAutomaton::build(&w("1100"), &w("1010")).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("label=\"(1100,∅)\", shape=doublecircle"));
        assert!(dot.contains("label=\"(∅,1010)\", shape=doublecircle"));
        let parsed = parse_dot(&dot).unwrap();
        assert_eq!(parsed.nodes.len(), g.len());
        for (s, pair) in g.vertices().iter().enumerate() {
            assert_eq!(parsed.nodes[s].0, g.label(pair));
            assert_eq!(parsed.nodes[s].1, g.kind(s) != VertexKind::Transient);
        }
        assert_eq!(parsed.edges, g.edges().collect::<Vec<_>>());
    }
}
