//! Best longer word against a shorter one with the same number of ones, and
//! the bias at which the optimal shape switches.

use std::cmp::Ordering;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{check_range, PairFilter, PairValue, SearchError, SearchReport, Verdict};
use crate::ratfunc::{format_rational, sturm_sequence, IntPoly, RootInterval};
use crate::winprob::{WinEvaluator, WinValue};
use crate::words::Word;

/// Which side of the threshold a bias lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Below,
    AtThreshold,
    Above,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::AtThreshold => "at_threshold",
            Side::Above => "above",
        }
    }
}

/// `(1 - 2z)(1 - z)^k - z^2`. For `k = 1` this is `z^2 - 3z + 1`, whose root
/// in `(0, 1/2)` is `(3 - sqrt 5)/2`.
pub fn threshold_polynomial(k: usize) -> IntPoly {
    let mut power = IntPoly::one();
    for _ in 0..k {
        power = &power * &IntPoly::one_minus_p();
    }
    let z2 = IntPoly::from_i64s(&[0, 0, 1]);
    &(&IntPoly::from_i64s(&[1, -2]) * &power) - &z2
}

fn sign_variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots of `p` in `(lo, hi]`.
fn roots_between(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let seq = sturm_sequence(p);
    sign_variations(&seq, lo) - sign_variations(&seq, hi)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Isolating interval of width at most `tol` around the unique root of the
/// threshold polynomial in `(0, 1/2)`, by bisection with exact signs.
pub fn threshold_root(k: usize, tol: &BigRational) -> Result<RootInterval, SearchError> {
    if k == 0 {
        return Err(SearchError::OutOfRange {
            name: "k",
            value: "0".into(),
            range: "k >= 1",
        });
    }
    if !tol.is_positive() {
        return Err(SearchError::OutOfRange {
            name: "tol",
            value: format_rational(tol),
            range: "tol > 0",
        });
    }
    let p = threshold_polynomial(k);
    let (mut lo, mut hi) = (BigRational::zero(), half());
    debug_assert_eq!(roots_between(&p, &lo, &hi), 1);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        match p.sign_at(&mid) {
            0 => return Ok(RootInterval { lo: mid.clone(), hi: mid }),
            s if s > 0 => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootInterval { lo, hi })
}

/// `(k + 2 - sqrt(k^2 - 4k + 8)) / (4k - 2)`, the root of the threshold
/// polynomial with `(1 - z)^k` replaced by `1 - kz`. Close to the threshold
/// only while `kz` is small; at `k = 20` it is off by about `0.105`.
pub fn threshold_approximation(k: usize) -> f64 {
    let k = k as f64;
    (k + 2.0 - (k * k - 4.0 * k + 8.0).sqrt()) / (4.0 * k - 2.0)
}

/// Sign of the threshold polynomial decides the side: it is positive on
/// `[0, r)` and negative on `(r, 1/2]`.
fn side_of(k: usize, q: &BigRational) -> Side {
    match threshold_polynomial(k).sign_at(q) {
        0 => Side::AtThreshold,
        s if s > 0 => Side::Below,
        _ => Side::Above,
    }
}

/// Both branches of the asymptotic maximum win probability at `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub k: usize,
    #[serde(with = "crate::ratfunc::rational_string")]
    pub q: BigRational,
    #[serde(with = "crate::ratfunc::rational_string")]
    pub below: BigRational,
    #[serde(with = "crate::ratfunc::rational_string")]
    pub above: BigRational,
    pub side: Side,
}

impl Bounds {
    /// The branch that applies at `q`.
    pub fn applicable(&self) -> &BigRational {
        match self.side {
            Side::Above => &self.above,
            _ => &self.below,
        }
    }
}

/// Evaluates both branch formulas at `q` and flags the one that applies.
///
/// `k = 1`: `1 - q` below and `1/(2 - q)` above. `k >= 2`:
/// `(1-q)^k / (1 - q(1 - (1-q)^k) + q^2)` below and
/// `(1-q)^{k-1} / (1 + (1-q)^k)` above.
pub fn closed_form_bounds(k: usize, q: &BigRational) -> Result<Bounds, SearchError> {
    if k == 0 {
        return Err(SearchError::OutOfRange {
            name: "k",
            value: "0".into(),
            range: "k >= 1",
        });
    }
    if !q.is_positive() || *q >= half() {
        return Err(SearchError::OutOfRange {
            name: "q",
            value: format_rational(q),
            range: "0 < q < 1/2",
        });
    }
    let one = BigRational::one();
    let r = &one - q;
    let pow = |x: &BigRational, e: usize| num_traits::pow(x.clone(), e);
    let (below, above) = if k == 1 {
        (r.clone(), &one / (&one + &r))
    } else {
        let rk = pow(&r, k);
        let below = &rk / (&one - q * (&one - &rk) + q * q);
        let above = pow(&r, k - 1) / (&one + &rk);
        (below, above)
    };
    Ok(Bounds {
        k,
        q: q.clone(),
        below,
        above,
        side: side_of(k, q),
    })
}

fn word(text: String) -> Word {
    text.parse().expect("binary text")
}

/// The optimal pair of `W(n, k)` predicted for biases on `side` of the
/// threshold.
pub fn conjectured_pair(n: usize, k: usize, side: Side) -> Option<(Word, Word)> {
    if k == 0 || n == 0 {
        return None;
    }
    let ones = |r: usize| "1".repeat(r);
    let zeros = |r: usize| "0".repeat(r);
    let pair = match (side, k) {
        (Side::Above, _) => (word(format!("{}10{}", zeros(k - 1), ones(n - 1))), word(ones(n))),
        (_, 1) => (word(format!("00{}", ones(n - 1))), word(format!("{}0", ones(n - 1)))),
        _ if n % 2 == 0 => {
            let m = n / 2;
            (
                word(format!("{}{}1", zeros(k + 1), "10".repeat(m - 1))),
                word("10".repeat(m)),
            )
        }
        _ => {
            let m = n / 2;
            (word(format!("{}{}", zeros(k + 1), "01".repeat(m))), word(format!("{}0", "01".repeat(m))))
        }
    };
    Some(pair)
}

#[derive(Clone)]
struct Leader {
    v: Word,
    w: Word,
    value: WinValue,
    ties: u64,
}

fn merge(a: Option<Leader>, b: Option<Leader>) -> Option<Leader> {
    match (a, b) {
        (Some(mut a), Some(b)) => match b.value.cmp_exact(&a.value) {
            Ordering::Greater => Some(b),
            Ordering::Equal => {
                a.ties += b.ties;
                Some(a)
            }
            Ordering::Less => Some(a),
        },
        (a, None) => a,
        (None, b) => b,
    }
}

/// Exact maximizer of `Win(v, w; q)` over `W(n, k)`, ties broken by the
/// lexicographically smallest `(v, w)`.
///
/// For `k >= 1` and `q < 1/2` the verdict says whether the conjectured pair
/// for `q`'s side of the asymptotic threshold attains the maximum.
pub fn argmax_win(n: usize, k: usize, q: &BigRational) -> Result<SearchReport, SearchError> {
    check_range("n", n, 2, 11, "2..=11")?;
    check_range("k", k, 0, 4, "0..=4")?;
    let eval = WinEvaluator::new(q).ok_or_else(|| SearchError::OutOfRange {
        name: "q",
        value: format_rational(q),
        range: "0 < q < 1",
    })?;
    let start = Instant::now();
    let filter = PairFilter::w_nk(n, k)?;
    let mut by_ones: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    for w in Word::all_of_length(n) {
        by_ones[w.ones()].push(w);
    }
    let shards: Vec<(u64, Option<Leader>)> = Word::all_of_length(n + k)
        .filter(|v| v.ones() <= n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|v| {
            let mut pairs = 0u64;
            let mut best: Option<Leader> = None;
            for w in by_ones[v.ones()].iter().filter(|w| !v.contains(w)) {
                pairs += 1;
                let here = Leader {
                    v: *v,
                    w: *w,
                    value: eval.eval_unchecked(v, w),
                    ties: 1,
                };
                best = merge(best, Some(here));
            }
            (pairs, best)
        })
        .collect();
    let (pairs, best) = shards
        .into_iter()
        .fold((0u64, None), |(n, b), (m, c)| (n + m, merge(b, c)));
    let best = best.ok_or(SearchError::EmptyPairSpace)?;

    let mut report = SearchReport::new("argmax_win")
        .param("n", n)
        .param("k", k)
        .param("q", format_rational(q));
    report.set_count("pairs", pairs);
    report.set_count("ties", best.ties);
    report.set_value("tie_break", "lexicographic on (v, w), 0 < 1");
    let max = best.value.to_rational();
    report.witnesses.push(PairValue::new("argmax", best.v, best.w, &max));

    if k == 0 || *q >= half() {
        report.notes.push("no conjectured shape for these parameters".into());
        return Ok(report.finish(start));
    }
    let side = side_of(k, q);
    report.set_value("side", side.label());
    let (cv, cw) = conjectured_pair(n, k, side).expect("k >= 1");
    if !filter.accepts(&cv, &cw) {
        report.notes.push(format!("conjectured pair ({cv}, {cw}) is not in W(n, k)"));
        report.set_value("matches", false);
        report.verdict = Verdict::Fail;
        return Ok(report.finish(start));
    }
    let conj = eval.eval_unchecked(&cv, &cw);
    let matches = conj.cmp_exact(&best.value) == Ordering::Equal;
    report.witnesses.push(PairValue::new("conjectured", cv, cw, &conj.to_rational()));
    report.set_value("matches", matches);
    report.set_value("winner_is_conjectured", (best.v, best.w) == (cv, cw));
    let bounds = closed_form_bounds(k, q)?;
    report.set_value("asymptotic_bound", format_rational(bounds.applicable()));
    report.verdict = if matches { Verdict::Pass } else { Verdict::Fail };
    Ok(report.finish(start))
}

/// Runs [`argmax_win`] along a grid of biases and records which conjectured
/// shape attains the maximum at each point, locating the empirical switch.
pub fn crossover_scan(n: usize, k: usize, grid: &[BigRational]) -> Result<SearchReport, SearchError> {
    check_range("k", k, 1, 4, "1..=4")?;
    let start = Instant::now();
    let mut grid = grid.to_vec();
    grid.sort();
    let below = conjectured_pair(n, k, Side::Below).expect("k >= 1");
    let above = conjectured_pair(n, k, Side::Above).expect("k >= 1");
    let mut report = SearchReport::new("crossover_scan").param("n", n).param("k", k).param(
        "grid",
        grid.iter().map(format_rational).collect::<Vec<_>>().join(","),
    );
    let (mut last_below, mut first_above) = (None, None);
    for q in &grid {
        let eval = WinEvaluator::new(q).ok_or_else(|| SearchError::OutOfRange {
            name: "q",
            value: format_rational(q),
            range: "0 < q < 1",
        })?;
        let r = argmax_win(n, k, q)?;
        let max = r.witness("argmax").expect("argmax present");
        let max: BigRational = crate::ratfunc::parse_rational(&max.value).expect("exact text");
        let attains = |(v, w): (Word, Word)| eval.eval_unchecked(&v, &w).to_rational() == max;
        let shape = match (attains(below), attains(above)) {
            (true, true) => "both",
            (true, false) => "below",
            (false, true) => "above",
            (false, false) => "neither",
        };
        if shape == "below" || shape == "both" {
            last_below = Some(q.clone());
        }
        if (shape == "above" || shape == "both") && first_above.is_none() {
            first_above = Some(q.clone());
        }
        report.set_value(&format!("shape@{}", format_rational(q)), shape);
    }
    if let Some(q) = last_below {
        report.set_value("last_below", format_rational(&q));
    }
    if let Some(q) = first_above {
        report.set_value("first_above", format_rational(&q));
    }
    let root = threshold_root(k, &BigRational::new(1.into(), 1_000_000.into()))?;
    report.set_value("asymptotic_threshold", format!("{:.6}", root.lo.to_f64().unwrap_or(f64::NAN)));
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn f(x: &BigRational) -> f64 {
        x.to_f64().unwrap()
    }

    #[test]
    fn threshold_k1_is_kappa() {
        let tol = q(1, 1_000_000_000);
        let r = threshold_root(1, &tol).unwrap();
        assert!(r.width() <= tol);
        let kappa = (3.0 - 5f64.sqrt()) / 2.0;
        assert!(f(&r.lo) <= kappa && kappa <= f(&r.hi));
        // Exact: lo^2 - 3 lo + 1 > 0 > hi^2 - 3 hi + 1.
        let p = IntPoly::from_i64s(&[1, -3, 1]);
        assert_eq!(threshold_polynomial(1), p);
        assert_eq!(p.sign_at(&r.lo), 1);
        assert_eq!(p.sign_at(&r.hi), -1);
    }

    #[test]
    fn threshold_k2_unique_and_certified() {
        let tol = q(1, 1_000_000_000);
        let r = threshold_root(2, &tol).unwrap();
        let p = threshold_polynomial(2);
        assert!(r.width() <= tol);
        assert_eq!(p.sign_at(&r.lo), 1);
        assert_eq!(p.sign_at(&r.hi), -1);
        for k in 1..=8 {
            assert_eq!(roots_between(&threshold_polynomial(k), &BigRational::zero(), &half()), 1);
        }
    }

    #[test]
    fn large_k_formula_is_the_linearized_root() {
        // Replacing (1 - z)^k by 1 - kz leaves 1 - (k + 2)z + (2k - 1)z^2.
        for k in [2usize, 5, 20] {
            let z = threshold_approximation(k);
            let k = k as f64;
            assert!((1.0 - (k + 2.0) * z + (2.0 * k - 1.0) * z * z).abs() < 1e-12);
        }
        // k z is not small at the true root, so the two drift apart.
        let r = f(&threshold_root(20, &q(1, 1_000_000)).unwrap().lo);
        assert!((r - 0.154727).abs() < 1e-5);
        assert!(r - threshold_approximation(20) > 0.1);
        let r2 = f(&threshold_root(2, &q(1, 1_000_000)).unwrap().lo);
        assert!((r2 - threshold_approximation(2)).abs() < 2e-2);
    }

    #[test]
    fn threshold_rejects_bad_input() {
        assert!(threshold_root(0, &q(1, 10)).is_err());
        assert!(threshold_root(2, &q(0, 1)).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = closed_form_bounds(1, &q(1, 4)).unwrap();
        assert_eq!(b.side, Side::Below);
        assert_eq!(*b.applicable(), q(3, 4));
        let b = closed_form_bounds(1, &q(9, 20)).unwrap();
        assert_eq!(b.side, Side::Above);
        assert_eq!(*b.applicable(), q(20, 31));
        assert!(closed_form_bounds(1, &q(1, 2)).is_err());
        assert!(closed_form_bounds(0, &q(1, 4)).is_err());
    }

    #[test]
    fn bounds_continuous_at_threshold() {
        for k in 1..=3 {
            let r = threshold_root(k, &q(1, 1_000_000_000_000)).unwrap();
            let b = closed_form_bounds(k, &r.lo).unwrap();
            assert!((f(&b.below) - f(&b.above)).abs() < 1e-6, "k = {k}");
        }
    }

    #[test]
    fn conjectured_shapes() {
        let s = |n, k, side| {
            let (v, w) = conjectured_pair(n, k, side).unwrap();
            format!("{v},{w}")
        };
        assert_eq!(s(6, 1, Side::Below), "0011111,111110");
        assert_eq!(s(6, 1, Side::Above), "1011111,111111");
        assert_eq!(s(6, 2, Side::Below), "00010101,101010");
        assert_eq!(s(5, 2, Side::Below), "0000101,01010");
        assert_eq!(s(6, 2, Side::Above), "01011111,111111");
        assert!(conjectured_pair(6, 0, Side::Below).is_none());
    }

    #[test]
    fn argmax_examples() {
        let r = argmax_win(6, 1, &q(1, 10)).unwrap();
        assert_eq!(r.value("side"), Some("below"));
        assert!(r.passed(), "{r:?}");
        let r = argmax_win(6, 1, &q(45, 100)).unwrap();
        assert_eq!(r.value("side"), Some("above"));
        assert!(r.passed(), "{r:?}");
        let r = argmax_win(6, 2, &q(1, 10)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn argmax_matches_brute_force() {
        let at = q(1, 3);
        let eval = WinEvaluator::new(&at).unwrap();
        let filter = PairFilter::w_nk(4, 1).unwrap();
        let mut best: Option<(Word, Word, BigRational)> = None;
        for (v, w) in filter.pairs() {
            let x = eval.eval_unchecked(&v, &w).to_rational();
            if best.as_ref().is_none_or(|b| x > b.2) {
                best = Some((v, w, x));
            }
        }
        let (v, w, x) = best.unwrap();
        let r = argmax_win(4, 1, &at).unwrap();
        let top = r.witness("argmax").unwrap();
        assert_eq!((top.v, top.w), (v, w));
        assert_eq!(top.value, format_rational(&x));
    }

    #[test]
    fn argmax_equal_lengths_is_evidence_only() {
        let r = argmax_win(4, 0, &half()).unwrap();
        assert_eq!(r.verdict, Verdict::Evidence);
        assert!(r.witness("argmax").unwrap().approx > 0.5);
    }

    #[test]
    fn argmax_range_guards() {
        assert!(argmax_win(1, 1, &q(1, 4)).is_err());
        assert!(argmax_win(4, 5, &q(1, 4)).is_err());
        assert!(argmax_win(4, 1, &q(1, 1)).is_err());
    }

    #[test]
    fn crossover_scan_switches_once() {
        let grid: Vec<BigRational> = (1..10).map(|i| q(i, 20)).collect();
        let r = crossover_scan(6, 1, &grid).unwrap();
        assert_eq!(r.value("shape@1/20"), Some("below"));
        assert_eq!(r.value("shape@9/20"), Some("above"));
    }
}
