//! Quantum integers, factorials and binomials.
//!
//! The [`LaurentScalar`] versions follow the defining quotients literally
//! (exact Laurent division); the `*_rf` versions build the same values in
//! ℚ(v^{1/d}) from the balanced sum `Σ_r v^{s(n-1-2r)}` and are the ones the
//! module code uses.

use super::laurent::LaurentScalar;
use super::ratfunc::RatFunc;
use crate::error::Result;

/// `[n]_{v^s} = (v^{sn} - v^{-sn}) / (v^s - v^{-s})` over ℤ[v, v^{-1}].
pub fn qint(n: i64, s: u32) -> LaurentScalar {
    assert!(s >= 1, "symmetrizer must be positive");
    let s = s as i64;
    let num = &LaurentScalar::v_int_pow(1, 1, s * n) - &LaurentScalar::v_int_pow(1, 1, -s * n);
    let den = &LaurentScalar::v_int_pow(1, 1, s) - &LaurentScalar::v_int_pow(1, 1, -s);
    num.div_exact(&den).expect("quantum integer division is exact")
}

/// `[n]^!_{v^s}`.
pub fn qfact(n: u32, s: u32) -> LaurentScalar {
    (1..=n as i64).fold(LaurentScalar::one(1, 1), |acc, k| &acc * &qint(k, s))
}

/// `[m][m-1]…[m-n+1] / [n]!`, exact for every integer `m`.
pub fn qbinom(m: i64, n: u32, s: u32) -> Result<LaurentScalar> {
    let top = (0..n as i64).fold(LaurentScalar::one(1, 1), |acc, k| &acc * &qint(m - k, s));
    top.div_exact(&qfact(n, s))
}

/// `[n]_{v^s}` in ℚ(v^{1/d}) via the balanced sum.
pub fn qint_rf(n: i64, s: u32, denom: u32) -> RatFunc {
    let sum = (0..n.abs()).fold(RatFunc::zero(), |acc, r| {
        acc + RatFunc::v_pow(denom, s as i64 * (n.abs() - 1 - 2 * r))
    });
    if n < 0 {
        -sum
    } else {
        sum
    }
}

pub fn qfact_rf(n: u32, s: u32, denom: u32) -> RatFunc {
    (1..=n as i64).fold(RatFunc::one(), |acc, k| acc * qint_rf(k, s, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycInt;

    fn laurent(terms: &[(i64, i64)]) -> LaurentScalar {
        LaurentScalar::from_terms(1, 1, terms.iter().map(|&(k, c)| (k, CycInt::integer(1, c))))
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(1, 3), LaurentScalar::one(1, 1));
        assert_eq!(qint(2, 1), laurent(&[(1, 1), (-1, 1)]));
        // long division of v^6 - v^-6 by v^2 - v^-2
        assert_eq!(qint(3, 2), laurent(&[(4, 1), (0, 1), (-4, 1)]));
        assert!(qint(0, 4).is_zero());
        assert_eq!(qint(-3, 2), -&qint(3, 2));
    }

    #[test]
    fn qfact_and_qbinom_examples() {
        assert_eq!(qfact(0, 1), LaurentScalar::one(1, 1));
        assert_eq!(qfact(2, 1), laurent(&[(1, 1), (-1, 1)]));
        assert_eq!(qbinom(2, 1, 1).unwrap(), laurent(&[(1, 1), (-1, 1)]));
        assert_eq!(qbinom(4, 2, 1).unwrap(), laurent(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
    }

    #[test]
    fn ratfunc_versions_agree() {
        for s in 1..=3 {
            for n in -6..=6 {
                assert_eq!(qint(n, s).to_ratfunc().unwrap(), qint_rf(n, s, 1));
            }
            for n in 0..=5 {
                assert_eq!(qfact(n, s).to_ratfunc().unwrap(), qfact_rf(n, s, 1));
            }
        }
    }
}
