//! Win probabilities by Conway's formula, expected waiting times, symmetry
//! classes and the `p -> 0` limit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::correlation::{correlation_at_half, correlation_poly, overlap_set, CorrelationPoly};
use crate::ratfunc::{IntPoly, RatFunc};
use crate::words::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WinError {
    #[error("identical words")]
    IdenticalWords,
    #[error("empty word")]
    EmptyWord,
    #[error("{inner} is a subword of {outer} at position {position}")]
    Subword {
        inner: Word,
        outer: Word,
        position: usize,
    },
}

impl From<WordError> for WinError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::IdenticalWords => WinError::IdenticalWords,
            _ => WinError::EmptyWord,
        }
    }
}

/// Rejects pairs for which the race is degenerate: identical words, empty
/// words, or one word occurring inside the other. Positions are 0-based.
pub fn check_pair(v: &Word, w: &Word) -> Result<(), WinError> {
    if v.is_empty() || w.is_empty() {
        return Err(WinError::EmptyWord);
    }
    if v == w {
        return Err(WinError::IdenticalWords);
    }
    if let Some(position) = v.find(w) {
        return Err(WinError::Subword {
            inner: *w,
            outer: *v,
            position,
        });
    }
    if let Some(position) = w.find(v) {
        return Err(WinError::Subword {
            inner: *v,
            outer: *w,
            position,
        });
    }
    Ok(())
}

/// Whether the race between `v` and `w` is well posed, without building an
/// error value.
pub fn is_valid_pair(v: &Word, w: &Word) -> bool {
    !v.is_empty() && !w.is_empty() && v != w && !v.contains(w) && !w.contains(v)
}

/// `table * p^a (1-p)^b` as a polynomial, where `(a, b)` dominate every key.
fn clear(table: &CorrelationPoly, a: u32, b: u32) -> IntPoly {
    table
        .terms
        .iter()
        .fold(IntPoly::zero(), |acc, (&(i, j), &c)| {
            let term = IntPoly::p_pow_q_pow((a - i) as usize, (b - j) as usize)
                .scale(&BigInt::from(c));
            &acc + &term
        })
}

struct Tables {
    vv: CorrelationPoly,
    ww: CorrelationPoly,
    vw: CorrelationPoly,
    wv: CorrelationPoly,
    a: u32,
    b: u32,
}

impl Tables {
    fn new(v: &Word, w: &Word) -> Tables {
        let vv = correlation_poly(v, v);
        let ww = correlation_poly(w, w);
        let vw = correlation_poly(v, w);
        let wv = correlation_poly(w, v);
        let (a, b) = [&vv, &ww, &vw, &wv]
            .iter()
            .map(|t| t.max_exponents())
            .fold((0, 0), |(a, b), (i, j)| (a.max(i), b.max(j)));
        Tables {
            vv,
            ww,
            vw,
            wv,
            a,
            b,
        }
    }
}

/// `P(tau_v < tau_w)` as an exact rational function of `p`.
pub fn win_probability(v: &Word, w: &Word) -> Result<RatFunc, WinError> {
    check_pair(v, w)?;
    let t = Tables::new(v, w);
    let vv = clear(&t.vv, t.a, t.b);
    let ww = clear(&t.ww, t.a, t.b);
    let vw = clear(&t.vw, t.a, t.b);
    let wv = clear(&t.wv, t.a, t.b);
    let num = &ww - &wv;
    let den = &(&num + &vv) - &vw;
    Ok(RatFunc::normalize(num, den).expect("Conway denominator is non-zero"))
}

/// `E tau_v = vv_p` over the common denominator `p^a (1-p)^b`.
pub fn expected_hitting_time(v: &Word) -> Result<RatFunc, WinError> {
    if v.is_empty() {
        return Err(WinError::EmptyWord);
    }
    let vv = correlation_poly(v, v);
    let (a, b) = vv.max_exponents();
    Ok(RatFunc::normalize(clear(&vv, a, b), IntPoly::p_pow_q_pow(a as usize, b as usize)).unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymmetryFlags {
    pub odd: bool,
    pub even: bool,
    pub constant: bool,
}

impl SymmetryFlags {
    pub fn of(f: &RatFunc) -> SymmetryFlags {
        let constant = f.is_half();
        if constant {
            return SymmetryFlags {
                odd: true,
                even: true,
                constant,
            };
        }
        let r = f.reflect();
        SymmetryFlags {
            odd: &r + f == RatFunc::one(),
            even: r == *f,
            constant,
        }
    }

    /// `"constant"`, `"odd"`, `"even"` or `"none"`.
    pub fn label(&self) -> &'static str {
        match (self.constant, self.odd, self.even) {
            (true, _, _) => "constant",
            (false, true, _) => "odd",
            (false, false, true) => "even",
            _ => "none",
        }
    }
}

pub fn classify_symmetry(v: &Word, w: &Word) -> Result<SymmetryFlags, WinError> {
    Ok(SymmetryFlags::of(&win_probability(v, w)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroLimit {
    Zero,
    Half,
    One,
}

impl ZeroLimit {
    pub fn to_rational(self) -> BigRational {
        match self {
            ZeroLimit::Zero => BigRational::zero(),
            ZeroLimit::Half => BigRational::new(1.into(), 2.into()),
            ZeroLimit::One => BigRational::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Option<ZeroLimit> {
        [ZeroLimit::Zero, ZeroLimit::Half, ZeroLimit::One]
            .into_iter()
            .find(|z| z.to_rational() == *q)
    }
}

/// The `p -> 0+` limit of the win probability decided from weights and
/// overlaps: the lighter word wins; equal weights `r` give 1/2 unless some
/// cross overlap word carries all `r` ones, in which case the analytic limit
/// decides between 0 and 1.
pub fn zero_limit_combinatorial(v: &Word, w: &Word) -> Result<ZeroLimit, WinError> {
    check_pair(v, w)?;
    let (rv, rw) = (v.ones(), w.ones());
    match rv.cmp(&rw) {
        Ordering::Less => return Ok(ZeroLimit::One),
        Ordering::Greater => return Ok(ZeroLimit::Zero),
        Ordering::Equal => {}
    }
    let heavy_cross = overlap_set(v, w)
        .words()
        .chain(overlap_set(w, v).words())
        .any(|u| u.ones() == rv);
    if !heavy_cross {
        return Ok(ZeroLimit::Half);
    }
    let limit = win_probability(v, w)?
        .limit_at_zero()
        .expect("win probability is bounded");
    Ok(ZeroLimit::from_rational(&limit).expect("limit lies in {0, 1/2, 1}"))
}

/// Evaluates win probabilities at one fixed rational bias `q = a/b` straight
/// from correlation tables, with no polynomial arithmetic.
///
/// Every term `c q^{-i} (1-q)^{-j}` is scaled by `q^A (1-q)^B b^{A+B}` for
/// the pair's maximal exponents, giving the integer `c a^{A-i} (b-a)^{B-j}
/// b^{i+j}`.
#[derive(Debug, Clone)]
pub struct WinEvaluator {
    q: BigRational,
    a: i128,
    c: i128,
    b: i128,
}

/// Unnormalized `num / den` at the evaluator's bias; `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WinValue {
    Small(i128, i128),
    Big(BigInt, BigInt),
}

impl WinValue {
    pub fn to_rational(&self) -> BigRational {
        match self {
            WinValue::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            WinValue::Big(n, d) => BigRational::new(n.clone(), d.clone()),
        }
    }

    fn parts(&self) -> (BigInt, BigInt) {
        match self {
            WinValue::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            WinValue::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    /// Exact comparison of two values without normalizing either.
    pub fn cmp_exact(&self, other: &WinValue) -> Ordering {
        if let (WinValue::Small(n1, d1), WinValue::Small(n2, d2)) = (self, other) {
            if let (Some(l), Some(r)) = (n1.checked_mul(*d2), n2.checked_mul(*d1)) {
                return l.cmp(&r);
            }
        }
        let (n1, d1) = self.parts();
        let (n2, d2) = other.parts();
        (n1 * d2).cmp(&(n2 * d1))
    }

    /// Sign of `value - 1/2`.
    pub fn cmp_half(&self) -> Ordering {
        match self {
            WinValue::Small(n, d) => (2 * n).cmp(d),
            WinValue::Big(n, d) => (n * BigInt::from(2)).cmp(d),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

impl WinEvaluator {
    /// `q` must lie strictly inside `(0, 1)`.
    pub fn new(q: &BigRational) -> Option<WinEvaluator> {
        if !q.is_positive() || *q >= BigRational::one() {
            return None;
        }
        let a = q.numer().to_i128()?;
        let b = q.denom().to_i128()?;
        Some(WinEvaluator {
            q: q.clone(),
            a,
            c: b - a,
            b,
        })
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    fn sum_small(&self, table: &CorrelationPoly, ea: u32, eb: u32) -> Option<i128> {
        let mut total: i128 = 0;
        for (&(i, j), &c) in &table.terms {
            let t = (c as i128)
                .checked_mul(self.a.checked_pow(ea - i)?)?
                .checked_mul(self.c.checked_pow(eb - j)?)?
                .checked_mul(self.b.checked_pow(i + j)?)?;
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    fn sum_big(&self, table: &CorrelationPoly, ea: u32, eb: u32) -> BigInt {
        let (a, c, b) = (BigInt::from(self.a), BigInt::from(self.c), BigInt::from(self.b));
        table
            .terms
            .iter()
            .map(|(&(i, j), &k)| {
                BigInt::from(k)
                    * num_traits::pow(a.clone(), (ea - i) as usize)
                    * num_traits::pow(c.clone(), (eb - j) as usize)
                    * num_traits::pow(b.clone(), (i + j) as usize)
            })
            .sum()
    }

    /// `Win(v, w; q)` for a pair already known to be valid.
    pub fn eval_unchecked(&self, v: &Word, w: &Word) -> WinValue {
        let t = Tables::new(v, w);
        let small = (|| {
            let vv = self.sum_small(&t.vv, t.a, t.b)?;
            let ww = self.sum_small(&t.ww, t.a, t.b)?;
            let vw = self.sum_small(&t.vw, t.a, t.b)?;
            let wv = self.sum_small(&t.wv, t.a, t.b)?;
            let num = ww.checked_sub(wv)?;
            let den = num.checked_add(vv)?.checked_sub(vw)?;
            Some((num, den))
        })();
        if let Some((num, den)) = small {
            return WinValue::Small(num, den);
        }
        let vv = self.sum_big(&t.vv, t.a, t.b);
        let ww = self.sum_big(&t.ww, t.a, t.b);
        let vw = self.sum_big(&t.vw, t.a, t.b);
        let wv = self.sum_big(&t.wv, t.a, t.b);
        let num = &ww - &wv;
        let den = &num + &vv - &vw;
        WinValue::Big(num, den)
    }

    pub fn eval(&self, v: &Word, w: &Word) -> Result<WinValue, WinError> {
        check_pair(v, w)?;
        Ok(self.eval_unchecked(v, w))
    }
}

/// `Win(v, w; 1/2)` from overlap lengths alone: each overlap of length `r`
/// contributes `2^r`.
pub fn win_at_half(v: &Word, w: &Word) -> (u128, u128) {
    let s = correlation_at_half;
    let (vv, ww, vw, wv) = (s(v, v), s(w, w), s(v, w), s(w, v));
    let num = ww - wv;
    (num, num + vv - vw)
}
