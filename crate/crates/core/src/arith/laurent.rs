//! Laurent polynomials in `v^{1/d}` with coefficients in ℤ[ζ].

use super::cyclo::CycInt;
use super::poly::IntPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `Σ c_k v^{k/d}` with `c_k ∈ ℤ[ζ_o]`. Exponents are stored as the
/// numerator `k` over the fixed denominator `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    denom: u32,
    order: u32,
    terms: BTreeMap<i64, CycInt>,
}

impl LaurentScalar {
    pub fn zero(denom: u32, order: u32) -> Self {
        assert!(denom >= 1 && order >= 1);
        Self {
            denom,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(denom: u32, order: u32) -> Self {
        Self::monomial(denom, CycInt::one(order), 0)
    }

    pub fn integer(denom: u32, order: u32, n: i64) -> Self {
        Self::monomial(denom, CycInt::integer(order, n), 0)
    }

    /// `c · v^{k/d}`.
    pub fn monomial(denom: u32, c: CycInt, k: i64) -> Self {
        let mut out = Self::zero(denom, c.order());
        if !c.is_zero() {
            out.terms.insert(k, c);
        }
        out
    }

    /// `v^{k/d}`.
    pub fn v_pow(denom: u32, order: u32, k: i64) -> Self {
        Self::monomial(denom, CycInt::one(order), k)
    }

    /// `v^n` as an element of the ring with denominator `d`.
    pub fn v_int_pow(denom: u32, order: u32, n: i64) -> Self {
        Self::v_pow(denom, order, n * denom as i64)
    }

    pub fn zeta(denom: u32, order: u32) -> Self {
        Self::monomial(denom, CycInt::zeta_pow(order, 1), 0)
    }

    pub fn from_terms(denom: u32, order: u32, terms: impl IntoIterator<Item = (i64, CycInt)>) -> Self {
        let mut out = Self::zero(denom, order);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(numerator of exponent, coefficient)` pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> CycInt {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| CycInt::zero(self.order))
    }

    fn add_term(&mut self, k: i64, c: &CycInt) {
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.denom != other.denom || self.order != other.order {
            return Err(Error::Internal(format!(
                "mixed scalar contexts (d={}, o={}) vs (d={}, o={})",
                self.denom, self.order, other.denom, other.order
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.denom, self.order);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        Ok(out)
    }

    /// Re-express over the denominator `m·d`. Explicit, never implicit.
    pub fn refine_denominator(&self, factor: u32) -> Self {
        Self {
            denom: self.denom * factor,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k * factor as i64, c.clone()))
                .collect(),
        }
    }

    /// The involution `v ↦ v^{-1}`, `ζ ↦ ζ^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            denom: self.denom,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (-k, c.conj())).collect(),
        }
    }

    /// Exact division; fails when the quotient is not a Laurent polynomial.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.compatible(divisor)?;
        let lead = divisor
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::Internal("division by zero".into()))?;
        let (lead_exp, lead_coeff) = (*lead.0, lead.1.clone());
        let unit = [CycInt::one(self.order), -&CycInt::one(self.order)]
            .into_iter()
            .find(|u| (&lead_coeff * u).is_one())
            .ok_or_else(|| {
                Error::Internal(format!("leading coefficient {lead_coeff} is not ±1"))
            })?;
        let low = divisor.terms.keys().next().copied().unwrap();
        let Some(&self_low) = self.terms.keys().next() else {
            return Ok(Self::zero(self.denom, self.order));
        };
        // quotient exponents lie in [self_low - low, top - lead_exp]
        let floor = self_low - low;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.denom, self.order);
        while let Some((&top, c)) = rem.terms.iter().next_back() {
            let shift = top - lead_exp;
            if shift < floor {
                return Err(Error::Internal(format!(
                    "inexact Laurent division of {self} by {divisor}"
                )));
            }
            let step = Self::monomial(self.denom, c * &unit, shift);
            rem = rem.try_add(&-&step.try_mul(divisor)?)?;
            quot = quot.try_add(&step)?;
        }
        Ok(quot)
    }

    /// The ζ-free part as a rational function in `t = v^{1/d}`.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        let Some(low) = self.terms.keys().next().copied() else {
            return Ok(RatFunc::zero());
        };
        let high = *self.terms.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::from(0); (high - low + 1) as usize];
        for (k, c) in &self.terms {
            coeffs[(k - low) as usize] = c
                .as_integer()
                .ok_or_else(|| Error::Internal(format!("coefficient {c} is not an integer")))?;
        }
        Ok(RatFunc::from_laurent(self.denom, low, IntPoly::from_coeffs(coeffs)))
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.try_add(rhs).expect("Laurent addition")
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.try_add(&-rhs).expect("Laurent subtraction")
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.try_mul(rhs).expect("Laurent multiplication")
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            denom: self.denom,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let e = if self.denom == 1 || k % self.denom as i64 == 0 {
                    format!("{}", k / self.denom as i64)
                } else {
                    format!("{}/{}", k, self.denom)
                };
                if *k == 0 {
                    format!("{c}")
                } else {
                    format!("{c}*v^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
