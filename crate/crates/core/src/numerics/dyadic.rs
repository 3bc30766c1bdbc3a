//! Arbitrary-precision dyadic floats `mant * 2^exp` with directed rounding.
//!
//! These are the interval endpoints. Addition and multiplication are exact;
//! every inexact operation (division, square root, precision reduction)
//! takes an explicit rounding direction, which is what makes the outward
//! rounding contract of [`crate::numerics::Interval`] testable against a
//! rational oracle.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// `mant * 2^exp`, canonical form: `mant` odd or zero (zero has `exp == 0`).
/// `Default` is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Number of significant bits of the mantissa.
    pub fn precision_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit: the value magnitude lies in
    /// `[2^(mag_exp-1), 2^mag_exp)`. Zero input yields i64::MIN.
    fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact comparison.
    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare leading-bit exponents before shifting.
        let (ma, mb) = (self.mag_exp(), other.mag_exp());
        if ma != mb {
            let mag = ma.cmp(&mb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_value(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_value(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Exact sum. Cost grows with the exponent gap; use `add_round` in loops.
    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&other.neg())
    }

    /// Exact product.
    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// One unit in the last place at `prec` significant bits.
    fn ulp(&self, prec: u32) -> Dyadic {
        debug_assert!(!self.is_zero());
        Dyadic { mant: BigInt::one(), exp: self.mag_exp() - prec as i64 }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Rounding) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let q = floor_shift(&self.mant, drop as u64);
        let exact = (&q << drop as u64) == self.mant;
        let mut m = match (dir, exact) {
            (_, true) => q,
            (Rounding::Down, false) => q,
            (Rounding::Up, false) => q + 1,
        };
        let mut e = self.exp + drop;
        // carry out of the mantissa can add one bit back
        if m.bits() > prec as u64 {
            let extra = (m.bits() - prec as u64) as i64;
            m = floor_shift(&m, extra as u64); // exact: carry makes it a power of two
            e += extra;
        }
        Dyadic::new(m, e)
    }

    /// Rounded sum: short-circuits when the magnitudes are too far apart for
    /// the smaller operand to matter beyond one ulp.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = if self.mag_exp() >= other.mag_exp() {
            (self, other)
        } else {
            (other, self)
        };
        let gap = big.mag_exp() - small.mag_exp();
        if gap > prec as i64 + 4 {
            // |small| < ulp(big)/8: nudging one ulp in `dir` is sound.
            let r = big.round(prec, dir);
            return match (dir, small.sign()) {
                (Rounding::Down, s) if s < 0 => r.sub_exact(&r.ulp(prec)),
                (Rounding::Up, s) if s > 0 => r.add_exact(&r.ulp(prec)),
                _ => r,
            };
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub_round(&self, other: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
        self.add_round(&other.neg(), prec, dir)
    }

    pub fn mul_round(&self, other: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed quotient to `prec` significant bits. `other` must be nonzero.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Rounding) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let sign = self.sign() * other.sign();
        let na = self.mant.magnitude();
        let nb = other.mant.magnitude();
        let shift = prec as i64 + 2 + nb.bits() as i64 - na.bits() as i64;
        let shift = shift.max(0) as u64;
        let (q, r) = (na << shift).div_rem(nb);
        let exact = r.is_zero();
        let round_away = match (dir, sign > 0) {
            (Rounding::Down, true) | (Rounding::Up, false) => false,
            (Rounding::Down, false) | (Rounding::Up, true) => true,
        };
        let qm = if !exact && round_away { q + 1u32 } else { q };
        let m = BigInt::from_biguint(if sign > 0 { Sign::Plus } else { Sign::Minus }, qm);
        Dyadic::new(m, self.exp - other.exp - shift as i64).round(prec, dir)
    }

    /// Directed square root. `self` must be nonnegative.
    pub fn sqrt(&self, prec: u32, dir: Rounding) -> Dyadic {
        assert!(!self.is_negative(), "dyadic sqrt of a negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut k = (2 * (prec as i64 + 2) - self.mant.bits() as i64).max(0);
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let m = self.mant.magnitude() << k as u64;
        let e = (self.exp - k) / 2;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let sm = if !exact && dir == Rounding::Up { s + 1u32 } else { s };
        Dyadic::new(BigInt::from_biguint(Sign::Plus, sm), e).round(prec, dir)
    }

    /// Directed conversion from an exact rational.
    pub fn from_rational(r: &Rational, prec: u32, dir: Rounding) -> Dyadic {
        let num = Dyadic::from_bigint(r.numer().clone());
        let den = Dyadic::from_bigint(r.denom().clone());
        num.div(&den, prec, dir)
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact decimal text; every dyadic has a finite decimal expansion.
    pub fn to_decimal_string(&self) -> String {
        if self.exp >= 0 {
            return (&self.mant << self.exp as u64).to_string();
        }
        let k = (-self.exp) as u64;
        let scaled: BigInt = &self.mant * BigInt::from(5u32).pow(k as u32);
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_string();
        let digits = if (digits.len() as u64) <= k {
            format!("{}{}", "0".repeat((k + 1 - digits.len() as u64) as usize), digits)
        } else {
            digits
        };
        let point = digits.len() - k as usize;
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&digits[..point]);
        s.push('.');
        s.push_str(&digits[point..]);
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
        s
    }

    /// Nearest-ish f64, for logs and plot data only.
    pub fn to_f64(&self) -> f64 {
        let r = self.round(53, Rounding::Down);
        let m: f64 = match i64::try_from(&r.mant) {
            Ok(v) => v as f64,
            Err(_) => return if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY },
        };
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }
}

/// Floor division by `2^shift` (arithmetic shift toward negative infinity).
fn floor_shift(v: &BigInt, shift: u64) -> BigInt {
    // BigInt::shr rounds toward negative infinity already
    v >> shift
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn d(v: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), e)
    }

    #[test]
    fn canonical_form() {
        let x = d(12, 0);
        assert_eq!(x, d(3, 2));
        assert!(Dyadic::zero().is_zero());
    }

    #[test]
    fn exact_ops() {
        let a = d(3, -1); // 1.5
        let b = d(5, -2); // 1.25
        assert_eq!(a.add_exact(&b), d(11, -2));
        assert_eq!(a.mul_exact(&b), d(15, -3));
        assert_eq!(a.sub_exact(&b), d(1, -2));
    }

    #[test]
    fn rounding_directions() {
        // 0b1011 = 11; at 2 bits: down -> 0b10<<2 = 8, up -> 0b11<<2 = 12
        let x = d(11, 0);
        assert_eq!(x.round(2, Rounding::Down), d(8, 0));
        assert_eq!(x.round(2, Rounding::Up), d(12, 0));
        let y = d(-11, 0);
        assert_eq!(y.round(2, Rounding::Down), d(-12, 0));
        assert_eq!(y.round(2, Rounding::Up), d(-8, 0));
    }

    #[test]
    fn division_brackets_exact_value() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div(&b, 53, Rounding::Down);
        let hi = a.div(&b, 53, Rounding::Up);
        let third = Rational::new(BigInt::one(), BigInt::from(3));
        assert!(lo.to_rational() <= third && third <= hi.to_rational());
        assert!(lo.cmp_value(&hi) == Ordering::Less);
        // exact case stays exact
        let q = d(6, 0).div(&d(3, 0), 53, Rounding::Down);
        assert_eq!(q, d(2, 0));
    }

    #[test]
    fn sqrt_brackets() {
        let two = d(2, 0);
        let lo = two.sqrt(60, Rounding::Down);
        let hi = two.sqrt(60, Rounding::Up);
        assert!(lo.mul_exact(&lo).cmp_value(&two) == Ordering::Less);
        assert!(hi.mul_exact(&hi).cmp_value(&two) == Ordering::Greater);
        assert_eq!(d(9, 0).sqrt(53, Rounding::Up), d(3, 0));
    }

    #[test]
    fn decimal_text_round_trips_exactly() {
        let x = d(-453225, -20);
        let s = x.to_decimal_string();
        let r = crate::numerics::parse_decimal_or_rational(&s).unwrap();
        assert_eq!(r, x.to_rational());
    }

    #[test]
    fn guarded_add_is_outward() {
        // tiny operand far below one ulp of the big one
        let big = d(1, 0);
        let tiny = d(1, -200);
        let down = big.add_round(&tiny.neg(), 53, Rounding::Down);
        let up = big.add_round(&tiny, 53, Rounding::Up);
        let exact_lo = big.to_rational() - tiny.to_rational();
        let exact_hi = big.to_rational() + tiny.to_rational();
        assert!(down.to_rational() <= exact_lo);
        assert!(up.to_rational() >= exact_hi);
    }

    #[test]
    fn f64_conversion_sane() {
        assert_eq!(d(3, -1).to_f64(), 1.5);
        let x = Dyadic::from_rational(&Rational::from_f64(0.1).unwrap(), 53, Rounding::Down);
        assert!((x.to_f64() - 0.1).abs() < 1e-15);
    }
}
