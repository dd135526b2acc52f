//! Real root isolation on the open unit interval by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::IntPoly;

/// An open interval `(lo, hi)` holding exactly one distinct root, or the
/// degenerate interval `[x, x]` when the root is the rational `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(with = "super::rational_string")]
    pub lo: BigRational,
    #[serde(with = "super::rational_string")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        if self.lo == self.hi {
            return *x == self.lo;
        }
        self.lo < *x && *x < self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// `p / gcd(p, p')`, primitive.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.primitive_part();
    }
    let g = p.gcd(&p.derivative());
    p.primitive_part()
        .div_exact(&g)
        .expect("gcd divides its argument")
        .primitive_part()
}

fn positive_content_part(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    p.div_scalar(&p.content())
}

/// Sturm chain `p, p', -rem(p, p'), ...` with positive rescaling at each step.
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![positive_content_part(p)];
    let d = positive_content_part(&p.derivative());
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let mut r = a.pseudo_rem(b);
        if b.leading().unwrap().is_negative() && (delta + 1) % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        seq.push(positive_content_part(&-&r));
    }
    seq
}

fn sign_variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in seq {
        let sg = s.sign_at(x);
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            changes += 1;
        }
        last = sg;
    }
    changes
}

/// Distinct real roots of a squarefree polynomial in the open unit interval,
/// each with an isolating interval.
///
/// Roots at exactly 0 or 1 are divided out first so that both endpoints are
/// non-roots and the Sturm count is exact.
pub fn isolate_unit_roots(p: &IntPoly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut s = squarefree_part(p);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if s.sign_at(&zero) == 0 {
        s = s.div_exact(&IntPoly::p()).expect("root at zero");
    }
    if s.sign_at(&one) == 0 {
        s = s
            .div_exact(&IntPoly::one_minus_p())
            .expect("root at one");
    }
    if s.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&s);
    let mut out = Vec::new();
    let total = sign_variations(&seq, &zero) - sign_variations(&seq, &one);
    isolate(&s, &seq, zero, one, total, &mut out);
    out
}

fn isolate(
    s: &IntPoly,
    seq: &[IntPoly],
    lo: BigRational,
    hi: BigRational,
    count: usize,
    out: &mut Vec<RootInterval>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(RootInterval { lo, hi });
        return;
    }
    let mid = split_point(s, &lo, &hi);
    let left = sign_variations(seq, &lo) - sign_variations(seq, &mid);
    let right = count - left;
    isolate(s, seq, lo, mid.clone(), left, out);
    isolate(s, seq, mid, hi, right, out);
}

/// A point strictly inside `(lo, hi)` where `s` does not vanish.
fn split_point(s: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mut k = 2i64;
    loop {
        for j in 1..k {
            let x = lo + &width * BigRational::new(BigInt::from(j), BigInt::from(k));
            if s.sign_at(&x) != 0 {
                return x;
            }
        }
        k += 1;
    }
}

/// Narrows an isolating interval of a simple root until its width is at most
/// `tol`, using exact sign evaluation.
pub fn refine(s: &IntPoly, interval: &RootInterval, tol: &BigRational) -> RootInterval {
    let mut lo = interval.lo.clone();
    let mut hi = interval.hi.clone();
    if lo == hi {
        return interval.clone();
    }
    let two = BigRational::from_integer(2.into());
    let lo_sign = s.sign_at(&lo);
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        let sg = s.sign_at(&mid);
        if sg == 0 {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if sg == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts_simple_roots() {
        // (5p - 1)(3p - 2)(p - 2)
        let p = &(&poly(&[-1, 5]) * &poly(&[-2, 3])) * &poly(&[-2, 1]);
        let roots = isolate_unit_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(1, 5)));
        assert!(roots[1].contains(&rat(2, 3)));
    }

    #[test]
    fn endpoint_and_repeated_roots_ignored() {
        // p^2 (1-p)^3 (2p - 1)^2
        let p = &(&IntPoly::p_pow_q_pow(2, 3) * &poly(&[-1, 2])) * &poly(&[-1, 2]);
        let roots = isolate_unit_roots(&p);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&rat(1, 2)));
    }

    #[test]
    fn irrational_roots_refined() {
        // z^2 - 3z + 1 has (3 - sqrt 5)/2 in (0, 1)
        let p = poly(&[1, -3, 1]);
        let roots = isolate_unit_roots(&p);
        assert_eq!(roots.len(), 1);
        let tight = refine(&p, &roots[0], &rat(1, 1_000_000_000));
        assert!(tight.width() <= rat(1, 1_000_000_000));
        let kappa = (3.0 - 5f64.sqrt()) / 2.0;
        let lo = f64_of(&tight.lo);
        let hi = f64_of(&tight.hi);
        assert!(lo <= kappa && kappa <= hi, "{lo} {kappa} {hi}");
    }

    #[test]
    fn many_close_roots() {
        let mut p = IntPoly::one();
        for k in 1..=9 {
            p = &p * &poly(&[-k, 10]);
        }
        let roots = isolate_unit_roots(&p);
        assert_eq!(roots.len(), 9);
        for (k, r) in roots.iter().enumerate() {
            assert!(r.contains(&rat(k as i64 + 1, 10)), "{k}");
        }
    }

    fn f64_of(x: &BigRational) -> f64 {
        use num_traits::ToPrimitive;
        x.to_f64().unwrap()
    }
}
