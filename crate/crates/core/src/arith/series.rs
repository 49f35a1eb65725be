//! Truncated expansions in `v^{-1}` and the unit/small classification used
//! for almost-orthogonality.

use super::cyclo::CycInt;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesClass {
    /// `±1 + v^{-1}𝒪[[v^{-1}]]`
    Unit,
    /// `v^{-1}𝒪[[v^{-1}]]`
    Small,
    Other,
}

impl fmt::Display for SeriesClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Unit => "unit",
            Self::Small => "small",
            Self::Other => "other",
        })
    }
}

/// Expansion `Σ_k c_k t^{top-k}` (`t = v^{1/d}`) truncated below
/// `v^{-order}`: exponents `< -order` (in units of `v`) are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSeries {
    denom: u32,
    order: u32,
    top: i64,
    coeffs: Vec<CycInt>,
}

impl VSeries {
    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of `t^k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> CycInt {
        let idx = self.top - k;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return CycInt::zero(1);
        }
        self.coeffs[idx as usize].clone()
    }

    /// `(t-exponent, coefficient)` pairs with nonzero coefficient, highest first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.top - k as i64, c))
    }

    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms().next().map(|(k, _)| k)
    }

    pub fn classify(&self) -> SeriesClass {
        match self.terms().next() {
            None => SeriesClass::Small,
            Some((k, _)) if k < 0 => SeriesClass::Small,
            Some((0, c)) => match c.as_integer() {
                Some(n) if n.abs().is_one() => SeriesClass::Unit,
                _ => SeriesClass::Other,
            },
            Some(_) => SeriesClass::Other,
        }
    }
}

impl fmt::Display for VSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let d = self.denom as i64;
                let e = if k % d == 0 {
                    format!("{}", k / d)
                } else {
                    format!("({k}/{d})")
                };
                format!("{c}*v^{e}")
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 + O(v^-{})", self.order + 1)
        } else {
            write!(f, "{} + O(v^-{})", parts.join(" + "), self.order + 1)
        }
    }
}

/// Expands `x` in ℤ((v^{-1})) modulo `v^{-(order+1)}`.
pub fn expand_vinv(x: &RatFunc, order: u32) -> Result<VSeries> {
    let denom = x.denom();
    let floor = -(order as i64) * denom as i64;
    let Some(top) = x.top_exponent() else {
        return Ok(VSeries {
            denom,
            order,
            top: 0,
            coeffs: Vec::new(),
        });
    };
    // Reversed polynomials are power series in u = t^{-1}.
    let num: Vec<BigInt> = x.numerator().reversed().coeffs().to_vec();
    let den: Vec<BigInt> = x.denominator().reversed().coeffs().to_vec();
    let lead = den[0].clone();
    if !lead.abs().is_one() {
        return Err(Error::NotExpandable(lead.to_string()));
    }
    let len = if top < floor { 0 } else { (top - floor + 1) as usize };
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(den.len() - 1) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc * &lead);
    }
    Ok(VSeries {
        denom,
        order,
        top,
        coeffs: out.into_iter().map(|c| CycInt::integer(1, c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: i64) -> RatFunc {
        RatFunc::v_pow(1, n)
    }

    #[test]
    fn geometric_series() {
        let x = RatFunc::one() / (RatFunc::one() - v(-2));
        let s = expand_vinv(&x, 4).unwrap();
        let got: Vec<(i64, String)> = s.terms().map(|(k, c)| (k, c.to_string())).collect();
        assert_eq!(got, vec![(0, "1".into()), (-2, "1".into()), (-4, "1".into())]);
        assert_eq!(s.classify(), SeriesClass::Unit);
    }

    #[test]
    fn small_class() {
        let x = v(-1) / (RatFunc::one() - v(-2));
        let s = expand_vinv(&x, 3).unwrap();
        let got: Vec<i64> = s.terms().map(|(k, _)| k).collect();
        assert_eq!(got, vec![-1, -3]);
        assert_eq!(s.classify(), SeriesClass::Small);
    }

    #[test]
    fn constant_one() {
        for k in 0..5 {
            let s = expand_vinv(&RatFunc::one(), k).unwrap();
            assert_eq!(s.terms().count(), 1);
            assert_eq!(s.classify(), SeriesClass::Unit);
        }
    }

    #[test]
    fn rejects_non_unit_leading_coefficient() {
        let x = RatFunc::one() / (RatFunc::from_int(2) * v(1) + RatFunc::one());
        assert!(matches!(expand_vinv(&x, 3), Err(Error::NotExpandable(_))));
    }

    #[test]
    fn scaled_unit_is_other() {
        assert_eq!(expand_vinv(&v(2), 3).unwrap().classify(), SeriesClass::Other);
        assert_eq!(expand_vinv(&RatFunc::from_int(2), 3).unwrap().classify(), SeriesClass::Other);
        assert_eq!(expand_vinv(&RatFunc::from_int(-1), 3).unwrap().classify(), SeriesClass::Unit);
    }
}
