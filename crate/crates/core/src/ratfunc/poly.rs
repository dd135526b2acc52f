//! Dense univariate polynomials in `p` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient `i` multiplies `p^i`. No trailing zeros; zero is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `c * p^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    /// `p`.
    pub fn p() -> IntPoly {
        IntPoly::monomial(BigInt::one(), 1)
    }

    /// `1 - p`.
    pub fn one_minus_p() -> IntPoly {
        IntPoly::from_i64s(&[1, -1])
    }

    /// `p^a (1-p)^b`.
    pub fn p_pow_q_pow(a: usize, b: usize) -> IntPoly {
        // Binomial expansion of (1-p)^b, shifted by a.
        let mut coeffs = vec![BigInt::zero(); a];
        let mut binom = BigInt::one();
        for k in 0..=b {
            let c = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
            coeffs.push(c);
            binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
        }
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Order of vanishing at `p = 0`.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient. Panics if inexact.
    pub fn div_scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `p^k` where `k = ord0`. Returns the quotient and `k`.
    pub fn strip_p_power(&self) -> (IntPoly, usize) {
        match self.ord0() {
            None => (IntPoly::zero(), 0),
            Some(k) => (
                IntPoly {
                    coeffs: self.coeffs[k..].to_vec(),
                },
                k,
            ),
        }
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return r;
        };
        if dr < dd {
            return r;
        }
        let mut e = dr - dd + 1;
        while let Some(deg) = r.degree() {
            if deg < dd {
                break;
            }
            let t = IntPoly::monomial(r.leading().unwrap().clone(), deg - dd);
            r = &r.scale(&lc) - &(&t * d);
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in Z[p].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(IntPoly::zero());
        };
        if dr < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let t = IntPoly::monomial(c.clone(), deg - dd);
            q[deg - dd] = c;
            r = &r - &(&t * d);
        }
        Some(IntPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_part();
            }
            if r.degree() == Some(0) {
                return IntPoly::one();
            }
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = r.div_scalar(&divisor);
            g = a.leading().unwrap().clone();
            // h <- g^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta);
                let den = num_traits::pow(h, delta - 1);
                num / den
            };
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `self(1 - p)`.
    pub fn reflect(&self) -> IntPoly {
        let one_minus = IntPoly::one_minus_p();
        // Horner in (1 - p).
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &one_minus) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `self(q)` as -1, 0 or 1, computed without building the rational.
    pub fn sign_at(&self, q: &BigRational) -> i32 {
        // Homogenize: sum c_i n^i d^(deg - i), with d > 0.
        let (n, d) = (q.numer(), q.denom());
        let deg = match self.degree() {
            Some(deg) => deg,
            None => return 0,
        };
        let mut total = BigInt::zero();
        let mut dpow = BigInt::one();
        let mut npows = Vec::with_capacity(deg + 1);
        let mut np = BigInt::one();
        for _ in 0..=deg {
            npows.push(np.clone());
            np *= n;
        }
        for i in (0..=deg).rev() {
            total += &self.coeffs[i] * &npows[i] * &dpow;
            dpow *= d;
        }
        match total.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers: `1 + 1p^1 - 1p^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}p^{i}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
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
    fn canonical_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]), poly(&[1, 2]));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert_eq!(poly(&[0, 0, 3]).ord0(), Some(2));
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]);
        let b = poly(&[1, -1]);
        assert_eq!(&a * &b, poly(&[1, 0, -1]));
        assert_eq!(&a + &b, poly(&[2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(IntPoly::p_pow_q_pow(2, 3), poly(&[0, 0, 1, -3, 3, -1]));
    }

    #[test]
    fn gcd_cases() {
        // (p+1)(p-2) and (p+1)(p+3)
        let a = &poly(&[1, 1]) * &poly(&[-2, 1]);
        let b = &poly(&[1, 1]) * &poly(&[3, 1]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
        // content does not leak into the gcd
        assert_eq!(a.scale(&6.into()).gcd(&b.scale(&4.into())), poly(&[1, 1]));
        assert_eq!(poly(&[1, 1]).gcd(&poly(&[2, 1])), IntPoly::one());
        // Knuth's classic example, coprime
        let f = poly(&[-5, 2, 8, -3, -3, 0, 1, 0, 1]);
        let g = poly(&[21, -9, -4, 0, 5, 0, 3]);
        assert_eq!(f.gcd(&g), IntPoly::one());
        // repeated factor
        let sq = &poly(&[-1, 2]) * &poly(&[-1, 2]);
        let c = &sq * &poly(&[0, 1]);
        assert_eq!(c.gcd(&sq.derivative()), poly(&[-1, 2]));
    }

    #[test]
    fn exact_division() {
        let a = &poly(&[1, 1]) * &poly(&[-2, 1, 4]);
        assert_eq!(a.div_exact(&poly(&[1, 1])), Some(poly(&[-2, 1, 4])));
        assert_eq!(a.div_exact(&poly(&[1, 2])), None);
    }

    #[test]
    fn reflect_and_eval() {
        let f = poly(&[0, 0, 1, 1]);
        assert_eq!(f.reflect().reflect(), f);
        assert_eq!(f.reflect().eval(&rat(1, 3)), f.eval(&rat(2, 3)));
        assert_eq!(poly(&[0, 1]).reflect(), poly(&[1, -1]));
        for q in [rat(1, 3), rat(-5, 7), rat(0, 1), rat(3, 2)] {
            let s = f.eval(&q);
            let expected = if s.is_zero() {
                0
            } else if s.is_positive() {
                1
            } else {
                -1
            };
            assert_eq!(f.sign_at(&q), expected);
        }
    }

    #[test]
    fn display_ascending() {
        assert_eq!(poly(&[1, 1, -1]).to_string(), "1 + 1p^1 - 1p^2");
        assert_eq!(poly(&[0, -2]).to_string(), "-2p^1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
