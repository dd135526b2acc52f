//! Exact solution of small integer linear systems by fraction-free
//! Gauss–Jordan elimination (Bareiss).
//!
//! Every intermediate entry is a minor of the augmented matrix, so each
//! division is exact. Solving is attempted in checked `i128` first and redone
//! over `BigInt` on overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

trait Exact: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a*b - c*d) / e`, or `None` on overflow.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let x = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(x % e, 0);
        Some(x / e)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d) / e)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Returns `(diag, rhs)` with `x_i = rhs_i / diag_i`, or `None` on overflow.
/// Panics if the matrix is singular.
fn eliminate<T: Exact>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<(Vec<T>, Vec<T>)> {
    let n = m.len();
    let mut prev = T::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .expect("singular system");
        m.swap(k, pivot);
        rhs.swap(k, pivot);
        let p = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..n {
                if j == k {
                    continue;
                }
                m[i][j] = T::cross_div(&p, &m[i][j], &f, &m[k][j], &prev)?;
            }
            rhs[i] = T::cross_div(&p, &rhs[i], &f, &rhs[k], &prev)?;
            m[i][k] = T::zero();
        }
        prev = p;
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    Some((diag, rhs))
}

/// Solves `m x = rhs` exactly. `m` must be square and non-singular.
pub fn solve(m: &[Vec<i64>], rhs: &[i64]) -> Vec<BigRational> {
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let small_rhs: Vec<i128> = rhs.iter().map(|&x| x as i128).collect();
    let (diag, r): (Vec<BigInt>, Vec<BigInt>) = match eliminate(small, small_rhs) {
        Some((d, r)) => (
            d.into_iter().map(Exact::into_big).collect(),
            r.into_iter().map(Exact::into_big).collect(),
        ),
        None => {
            let big: Vec<Vec<BigInt>> =
                m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let big_rhs: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
            eliminate(big, big_rhs).expect("BigInt elimination cannot overflow")
        }
    };
    r.into_iter()
        .zip(diag)
        .map(|(x, d)| BigRational::new(x, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook elimination over the rationals.
    fn solve_rational(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
        let n = m.len();
        let q = |x: i64| BigRational::from_integer(x.into());
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .zip(rhs)
            .map(|(r, &b)| r.iter().map(|&x| q(x)).chain([q(b)]).collect())
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, p);
            for i in 0..n {
                if i != k {
                    let f = &a[i][k] / &a[k][k];
                    for j in k..=n {
                        let t = &f * &a[k][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        Some((0..n).map(|i| &a[i][n] / &a[i][i]).collect())
    }

    #[test]
    fn small_system() {
        let m = vec![vec![2, 1], vec![1, 3]];
        let x = solve(&m, &[3, 5]);
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
    }

    #[test]
    fn needs_pivoting() {
        let m = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 7]];
        let x = solve(&m, &[2, 3, 1]);
        assert_eq!(x, solve_rational(&m, &[2, 3, 1]).unwrap());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let n = 12;
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1_000_000_007 } else { 999_999_937 * ((i + j) % 3) as i64 }).collect())
            .collect();
        let rhs: Vec<i64> = (0..n as i64).collect();
        assert_eq!(solve(&m, &rhs), solve_rational(&m, &rhs).unwrap());
    }

    proptest! {
        #[test]
        fn agrees_with_rational_elimination(
            n in 1usize..7,
            entries in prop::collection::vec(-9i64..10, 49),
            rhs in prop::collection::vec(-9i64..10, 7),
        ) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| entries[i * 7..i * 7 + n].to_vec()).collect();
            let rhs = &rhs[..n];
            let expected = solve_rational(&m, rhs);
            prop_assume!(expected.is_some());
            prop_assert_eq!(solve(&m, rhs), expected.unwrap());
        }
    }
}
