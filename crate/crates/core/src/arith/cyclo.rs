//! Cyclotomic integers ℤ[ζ], ζ a primitive `o`-th root of unity.

use super::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The `n`-th cyclotomic polynomial, by dividing `t^n - 1` by `Φ_d` for
/// every proper divisor `d`.
pub fn cyclotomic_poly(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut p = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p
                .div_exact(&cyclotomic_poly(d))
                .expect("cyclotomic division is exact");
        }
    }
    p
}

/// Remainder of `p` modulo a monic polynomial.
fn rem_monic(p: &IntPoly, m: &IntPoly) -> IntPoly {
    let dm = m.degree().unwrap();
    let mut r = p.clone();
    while let Some(dr) = r.degree() {
        if dr < dm {
            break;
        }
        let c = r.lead().unwrap().clone();
        r = r.sub(&m.scale(&c).shift_up(dr - dm));
    }
    r
}

/// Element of ℤ[ζ] in the canonical basis `1, ζ, …, ζ^{φ(o)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: u32,
    poly: IntPoly,
}

impl CycInt {
    pub fn from_poly(order: u32, poly: IntPoly) -> Self {
        let poly = rem_monic(&poly, &cyclotomic_poly(order));
        Self { order, poly }
    }

    pub fn integer(order: u32, n: impl Into<BigInt>) -> Self {
        Self::from_poly(order, IntPoly::constant(n.into()))
    }

    pub fn zero(order: u32) -> Self {
        Self {
            order,
            poly: IntPoly::zero(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::integer(order, 1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        Self::from_poly(order, IntPoly::monomial(BigInt::one(), e))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    /// Coefficients on `1, ζ, ζ², …` (canonical reduced form).
    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    /// The integer value when the element lies in ℤ.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.poly.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let o = self.order as usize;
        let mut coeffs = vec![BigInt::zero(); o];
        for (k, c) in self.poly.coeffs().iter().enumerate() {
            coeffs[(o - k % o) % o] += c;
        }
        Self::from_poly(self.order, IntPoly::from_coeffs(coeffs))
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic integers of different orders"
        );
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check(rhs);
        CycInt {
            order: self.order,
            poly: self.poly.add(&rhs.poly),
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.check(rhs);
        CycInt {
            order: self.order,
            poly: self.poly.sub(&rhs.poly),
        }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check(rhs);
        CycInt::from_poly(self.order, self.poly.mul(&rhs.poly))
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            poly: self.poly.neg(),
        }
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        write!(f, "({})", self.poly.to_string().replace('t', "z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn zeta_powers_reduce_canonically() {
        // 1 + ζ + ζ² = 0 for o = 3
        let s = &(&CycInt::one(3) + &CycInt::zeta_pow(3, 1)) + &CycInt::zeta_pow(3, 2);
        assert!(s.is_zero());
        assert_eq!(CycInt::zeta_pow(4, 2), CycInt::integer(4, -1));
        assert_eq!(CycInt::zeta_pow(1, 5), CycInt::one(1));
    }

    #[test]
    fn conjugation_inverts_zeta() {
        for o in 1..=8u32 {
            let z = CycInt::zeta_pow(o, 1);
            assert!((&z * &z.conj()).is_one(), "order {o}");
            assert_eq!(z.conj(), CycInt::zeta_pow(o, o as i64 - 1));
        }
    }
}
