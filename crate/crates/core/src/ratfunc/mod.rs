//! Exact rational functions of the bias `p`.
//!
//! A [`RatFunc`] is always kept in canonical form: numerator and denominator
//! share no non-constant factor, the integer content of the pair is 1 and the
//! denominator's leading coefficient is positive. Equality of canonical forms
//! is therefore equality of functions.

mod poly;
mod sturm;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub use poly::IntPoly;
pub use sturm::{isolate_unit_roots, refine, squarefree_part, sturm_sequence, RootInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at p = {0}")]
    Pole(BigRational),
    #[error("unbounded as p -> 0+")]
    BlowUp,
    #[error("pole inside (0, 1)")]
    PoleInUnitInterval,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form.
    pub fn normalize(num: IntPoly, den: IntPoly) -> Result<RatFunc, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: IntPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let content = num.content().gcd(&den.content());
        let content = if den.leading().unwrap().is_negative() {
            -content
        } else {
            content
        };
        if !content.is_one() {
            num = num.div_scalar(&content);
            den = den.div_scalar(&content);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: IntPoly) -> RatFunc {
        RatFunc::normalize(p, IntPoly::one()).unwrap()
    }

    pub fn constant(c: &BigRational) -> RatFunc {
        RatFunc::normalize(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
        .unwrap()
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(IntPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn p() -> RatFunc {
        RatFunc::from_poly(IntPoly::p())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The function `p -> f(1 - p)`.
    pub fn reflect(&self) -> RatFunc {
        RatFunc::normalize(self.num.reflect(), self.den.reflect()).unwrap()
    }

    pub fn evaluate(&self, q: &BigRational) -> Result<BigRational, RatFuncError> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(RatFuncError::Pole(q.clone()));
        }
        Ok(self.num.eval(q) / d)
    }

    /// `lim_{p -> 0+} f(p)` from the lowest-order coefficients.
    pub fn limit_at_zero(&self) -> Result<BigRational, RatFuncError> {
        let Some(on) = self.num.ord0() else {
            return Ok(BigRational::zero());
        };
        let od = self.den.ord0().expect("denominator is non-zero");
        match on.cmp(&od) {
            std::cmp::Ordering::Greater => Ok(BigRational::zero()),
            std::cmp::Ordering::Equal => Ok(BigRational::new(
                self.num.coeff(on),
                self.den.coeff(od),
            )),
            std::cmp::Ordering::Less => Err(RatFuncError::BlowUp),
        }
    }

    pub fn derivative(&self) -> RatFunc {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::normalize(top, &self.den * &self.den).unwrap()
    }

    /// Isolated roots of `f'` in `(0, 1)`, each flagged with whether the
    /// derivative changes sign there.
    pub fn critical_points(&self) -> Result<Vec<CriticalPoint>, RatFuncError> {
        if !isolate_unit_roots(&self.den).is_empty() {
            return Err(RatFuncError::PoleInUnitInterval);
        }
        // sign f' = sign (num' den - num den'), as den^2 > 0 on (0, 1).
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        if top.is_zero() {
            return Ok(Vec::new());
        }
        Ok(isolate_unit_roots(&top)
            .into_iter()
            .map(|interval| {
                // Endpoints are non-roots of the squarefree part, hence of top.
                let changes = top.sign_at(&interval.lo) != top.sign_at(&interval.hi);
                CriticalPoint {
                    interval,
                    sign_change: changes,
                }
            })
            .collect())
    }

    /// Number of sign changes of `f'` on `(0, 1)`: roots of odd multiplicity.
    pub fn derivative_sign_changes(&self) -> Result<usize, RatFuncError> {
        Ok(self
            .critical_points()?
            .iter()
            .filter(|c| c.sign_change)
            .count())
    }

    /// `2 num = den`, i.e. the function is identically 1/2.
    pub fn is_half(&self) -> bool {
        self.num.scale(&BigInt::from(2)) == self.den
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub interval: RootInterval,
    pub sign_change: bool,
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &RatFunc {
    type Output = Result<RatFunc, RatFuncError>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc, RatFuncError> {
        RatFunc::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

fn write_factored(f: &mut fmt::Formatter<'_>, p: &IntPoly) -> fmt::Result {
    let (rest, k) = p.strip_p_power();
    write!(f, "({rest})")?;
    if k > 0 {
        write!(f, "·p^{k}")?;
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    /// `(1 + 1p^1 - 1p^2)·p^4 / (1 + 1p^3)`: each side has its power of `p`
    /// factored out and the remaining polynomial in ascending powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factored(f, &self.num)?;
        f.write_str(" / ")?;
        write_factored(f, &self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs = |p: &IntPoly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("RatFunc", 3)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("num", &coeffs(&self.num))?;
        st.serialize_field("den", &coeffs(&self.den))?;
        st.end()
    }
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.45` into an exact
/// rational. Decimals use their literal denominator; no floating point.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return None;
        }
        let digits = format!("{int_digits}{frac}");
        let mut n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    text.parse::<BigInt>().ok().map(BigRational::from_integer)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter writing a `BigRational` as `"a/b"`.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&super::format_rational(q))
    }
}
