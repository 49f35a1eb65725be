//! The field ℚ(t), `t = v^{1/d}`, with integer-coefficient canonical forms.
//!
//! A nonzero value is stored as `t^shift · num(t) / den(t)` where `num`,
//! `den ∈ ℤ[t]` have nonzero constant terms, are coprime in ℚ[t], have
//! coprime integer contents, and `den` has positive leading coefficient.
//! This makes structural equality decide field equality. Laurent
//! polynomials (`den = 1`) never touch the gcd routine.
//!
//! Every value carries the exponent denominator `d`. Constants are
//! `d`-agnostic and always stored with `d = 1`; combining two
//! non-constant values with different `d` panics.

use super::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    denom: u32,
    shift: i64,
    num: IntPoly,
    den: IntPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            denom: 1,
            shift: 0,
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::normalize(1, 0, IntPoly::constant(n), IntPoly::one(), false)
    }

    pub fn from_ratio(n: i64, m: i64) -> Self {
        assert!(m != 0, "zero denominator");
        Self::normalize(
            1,
            0,
            IntPoly::constant(n.into()),
            IntPoly::constant(m.into()),
            false,
        )
    }

    /// `t^k` with `t = v^{1/d}`.
    pub fn t_pow(denom: u32, k: i64) -> Self {
        Self::normalize(denom, k, IntPoly::one(), IntPoly::one(), false)
    }

    /// `v^n = t^{n d}`.
    pub fn v_pow(denom: u32, n: i64) -> Self {
        Self::t_pow(denom, n * denom as i64)
    }

    /// `t^low · p(t)`.
    pub fn from_laurent(denom: u32, low: i64, p: IntPoly) -> Self {
        Self::normalize(denom, low, p, IntPoly::one(), false)
    }

    /// `(t^a num) / (t^b den)` reduced to canonical form.
    pub fn from_parts(denom: u32, num_shift: i64, num: IntPoly, den_shift: i64, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize(denom, num_shift - den_shift, num, den, true)
    }

    fn normalize(denom: u32, shift: i64, num: IntPoly, den: IntPoly, need_gcd: bool) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let nv = num.valuation();
        let dv = den.valuation();
        let shift = shift + nv as i64 - dv as i64;
        let mut num = num.shift_down(nv);
        let mut den = den.shift_down(dv);
        if need_gcd && !den.is_constant() && !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        let constant = shift == 0 && num.is_constant() && den.is_constant();
        let denom = if constant { 1 } else { denom };
        Self {
            denom,
            shift,
            num,
            den,
        }
    }

    fn joint_denom(&self, other: &Self) -> u32 {
        match (self.is_constant(), other.is_constant()) {
            (true, _) => other.denom,
            (_, true) => self.denom,
            _ => {
                assert_eq!(
                    self.denom, other.denom,
                    "mixing exponent denominators {} and {}",
                    self.denom, other.denom
                );
                self.denom
            }
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// Independent of `v`.
    pub fn is_constant(&self) -> bool {
        self.shift == 0 && self.num.is_constant() && self.den.is_constant()
    }

    /// In ℤ[t, t^{-1}].
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `(shift, p)` with `self = t^shift p(t)` when the value is a Laurent
    /// polynomial with integer coefficients.
    pub fn as_laurent(&self) -> Option<(i64, &IntPoly)> {
        self.is_laurent().then_some((self.shift, &self.num))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        Self::normalize(
            self.denom,
            -self.shift - dn + dd,
            self.num.reversed(),
            self.den.reversed(),
            false,
        )
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in ℚ(v)");
        Self::normalize(
            self.denom,
            -self.shift,
            self.den.clone(),
            self.num.clone(),
            false,
        )
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let denom = self.joint_denom(other);
        let shift = self.shift + other.shift;
        if self.den.is_constant() && other.den.is_constant() {
            return Self::normalize(
                denom,
                shift,
                self.num.mul(&other.num),
                self.den.mul(&other.den),
                false,
            );
        }
        // cross-cancel so the product is already coprime
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::normalize(denom, shift, n1.mul(&n2), d1.mul(&d2), false)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let denom = self.joint_denom(other);
        let low = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - low) as usize);
        let b = other.num.shift_up((other.shift - low) as usize);
        if self.den == other.den {
            let need = !self.den.is_constant();
            return Self::normalize(denom, low, a.add(&b), self.den.clone(), need);
        }
        if self.den.is_constant() && other.den.is_constant() {
            let (x, y) = (self.den.coeff(0), other.den.coeff(0));
            let l = x.lcm(&y);
            let num = a.scale(&(&l / &x)).add(&b.scale(&(&l / &y)));
            return Self::normalize(denom, low, num, IntPoly::constant(l), false);
        }
        let g = self.den.gcd(&other.den);
        let x = self.den.div_exact(&g).unwrap();
        let y = other.den.div_exact(&g).unwrap();
        let num = a.mul(&y).add(&b.mul(&x));
        Self::normalize(denom, low, num, x.mul(&other.den), true)
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            denom: self.denom,
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    /// Largest exponent of `t` in a `t^{-1}`-adic expansion (numerator
    /// degree minus denominator degree, plus the shift).
    pub fn top_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.shift + self.num.degree().unwrap() as i64 - self.den.degree().unwrap() as i64)
    }

    /// Re-express with `t' = v^{1/(m d)}`; explicit change of the exponent
    /// lattice (`t = t'^m`).
    pub fn refine_denominator(&self, factor: u32) -> Self {
        if self.is_constant() || factor == 1 {
            return self.clone();
        }
        let spread = |p: &IntPoly| {
            let mut c = vec![BigInt::zero(); p.degree().unwrap() * factor as usize + 1];
            for (k, x) in p.coeffs().iter().enumerate() {
                c[k * factor as usize] = x.clone();
            }
            IntPoly::from_coeffs(c)
        };
        Self::normalize(
            self.denom * factor,
            self.shift * factor as i64,
            spread(&self.num),
            spread(&self.den),
            false,
        )
    }

    fn fmt_laurent(f: &mut fmt::Formatter<'_>, denom: u32, shift: i64, p: &IntPoly) -> fmt::Result {
        let mut first = true;
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = shift + k as i64;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            if e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let g = e.gcd(&(denom as i64));
            let (en, ed) = (e / g, denom as i64 / g);
            match (en, ed) {
                (1, 1) => write!(f, "v")?,
                (_, 1) => write!(f, "v^{en}")?,
                _ => write!(f, "v^({en}/{ed})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_one() {
            return Self::fmt_laurent(f, self.denom, self.shift, &self.num);
        }
        write!(f, "(")?;
        Self::fmt_laurent(f, self.denom, self.shift, &self.num)?;
        write!(f, ")/(")?;
        Self::fmt_laurent(f, self.denom, 0, &self.den)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                self.$imp(rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$imp(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$imp(&rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = self.mul_ref(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(d: u32, n: i64) -> RatFunc {
        RatFunc::v_pow(d, n)
    }

    #[test]
    fn canonical_form_cancels() {
        // (v^2 - 1)/(v - 1) = v + 1
        let a = &v(1, 2) - &RatFunc::one();
        let b = &v(1, 1) - &RatFunc::one();
        assert_eq!(&a / &b, &v(1, 1) + &RatFunc::one());
        assert!((&(&a / &b) - &(&v(1, 1) + &RatFunc::one())).is_zero());
    }

    #[test]
    fn constants_are_denominator_agnostic() {
        let half = RatFunc::from_ratio(1, 2);
        let x = &half * &v(2, 1);
        assert_eq!(x.denom(), 2);
        assert_eq!(&x * &RatFunc::from_int(2), v(2, 1));
        assert_eq!((&v(3, 1) * &v(3, -1)).denom(), 1);
    }

    #[test]
    #[should_panic(expected = "mixing exponent denominators")]
    fn mixing_denominators_panics() {
        let _ = &v(1, 1) + &v(2, 1);
    }

    #[test]
    fn bar_and_inverse() {
        let x = (&v(1, 3) + &RatFunc::from_int(2)) / (&v(1, 1) - &v(1, -2));
        assert_eq!(x.bar().bar(), x);
        assert!((&x * &x.inv()).is_one());
        assert_eq!(v(2, 1).bar(), v(2, -1));
    }

    #[test]
    fn fractional_exponents_display() {
        assert_eq!(RatFunc::t_pow(2, -1).to_string(), "v^(-1/2)");
        assert_eq!((&v(1, 1) + &v(1, -1)).to_string(), "v + v^-1");
    }
}
