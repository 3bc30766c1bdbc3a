//! Directed-outward-rounded interval arithmetic.
//!
//! The containment contract: for any operation and any points chosen inside
//! the operand intervals, the exact real result lies inside the result
//! interval. Rounding is done by post-adjusting endpoints (no hardware
//! rounding modes), which keeps the implementation portable and lets the
//! rational oracle in the test suite check it directly.

use std::cmp::Ordering;
use std::fmt;

use super::dyadic::{Dyadic, Rounding};
use super::{MagCmp, NumericsError, Rational};

/// Closed interval `[lo, hi]` with dyadic endpoints. `Default` is [0, 0].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

/// Evaluation context carrying the endpoint precision in bits.
#[derive(Debug, Clone, Copy)]
pub struct IvCtx {
    pub prec: u32,
}

impl Default for IvCtx {
    fn default() -> Self {
        IvCtx { prec: 53 }
    }
}

impl IvCtx {
    pub fn new(prec: u32) -> Self {
        assert!(prec >= 8, "interval precision below 8 bits is useless");
        IvCtx { prec }
    }

    pub fn add(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.add_round(&b.lo, self.prec, Rounding::Down),
            hi: a.hi.add_round(&b.hi, self.prec, Rounding::Up),
        }
    }

    pub fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        Interval {
            lo: a.lo.sub_round(&b.hi, self.prec, Rounding::Down),
            hi: a.hi.sub_round(&b.lo, self.prec, Rounding::Up),
        }
    }

    pub fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let candidates = [
            a.lo.mul_exact(&b.lo),
            a.lo.mul_exact(&b.hi),
            a.hi.mul_exact(&b.lo),
            a.hi.mul_exact(&b.hi),
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            lo = Dyadic::min(&lo, c);
            hi = Dyadic::max(&hi, c);
        }
        Interval { lo: lo.round(self.prec, Rounding::Down), hi: hi.round(self.prec, Rounding::Up) }
    }

    /// Errors when `b` contains zero: callers must branch or refuse, never
    /// propagate an unbounded interval.
    pub fn div(&self, a: &Interval, b: &Interval) -> Result<Interval, NumericsError> {
        if b.contains_zero() {
            return Err(NumericsError::DivisionByIntervalContainingZero);
        }
        let q = |n: &Dyadic, d: &Dyadic, dir: Rounding| n.div(d, self.prec, dir);
        let lo = [
            q(&a.lo, &b.lo, Rounding::Down),
            q(&a.lo, &b.hi, Rounding::Down),
            q(&a.hi, &b.lo, Rounding::Down),
            q(&a.hi, &b.hi, Rounding::Down),
        ];
        let hi = [
            q(&a.lo, &b.lo, Rounding::Up),
            q(&a.lo, &b.hi, Rounding::Up),
            q(&a.hi, &b.lo, Rounding::Up),
            q(&a.hi, &b.hi, Rounding::Up),
        ];
        let mut l = lo[0].clone();
        for c in &lo[1..] {
            l = Dyadic::min(&l, c);
        }
        let mut h = hi[0].clone();
        for c in &hi[1..] {
            h = Dyadic::max(&h, c);
        }
        Ok(Interval { lo: l, hi: h })
    }

    pub fn sqrt(&self, a: &Interval) -> Result<Interval, NumericsError> {
        if a.lo.is_negative() {
            return Err(NumericsError::NegativeSqrt);
        }
        Ok(Interval {
            lo: a.lo.sqrt(self.prec, Rounding::Down),
            hi: a.hi.sqrt(self.prec, Rounding::Up),
        })
    }

    /// Integer power by repeated squaring-free multiplication (degrees here
    /// are small enough that sharpness matters more than speed).
    pub fn pow(&self, a: &Interval, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Dyadic::one());
        }
        if e % 2 == 0 {
            // even powers: work on |a| so the result stays sharp around zero
            let m = a.abs();
            let mut acc = m.clone();
            for _ in 1..e {
                acc = self.mul(&acc, &m);
            }
            let lo = if acc.lo.is_negative() { Dyadic::zero() } else { acc.lo };
            Interval { lo, hi: acc.hi }
        } else {
            let mut acc = a.clone();
            for _ in 1..e {
                acc = self.mul(&acc, a);
            }
            acc
        }
    }

    pub fn from_rational(&self, r: &Rational) -> Interval {
        Interval {
            lo: Dyadic::from_rational(r, self.prec, Rounding::Down),
            hi: Dyadic::from_rational(r, self.prec, Rounding::Up),
        }
    }

    pub fn from_rational_bounds(&self, lo: &Rational, hi: &Rational) -> Interval {
        assert!(lo <= hi);
        Interval {
            lo: Dyadic::from_rational(lo, self.prec, Rounding::Down),
            hi: Dyadic::from_rational(hi, self.prec, Rounding::Up),
        }
    }
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        assert!(lo.cmp_value(&hi) != Ordering::Greater, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: Dyadic) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn from_i64(v: i64) -> Interval {
        Interval::point(Dyadic::from_i64(v))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: Dyadic::zero(), hi: Dyadic::max(&self.lo.neg(), &self.hi) }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        self.lo.cmp_value(v) != Ordering::Greater && self.hi.cmp_value(v) != Ordering::Less
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo.cmp_value(&other.lo) != Ordering::Greater && self.hi.cmp_value(&other.hi) != Ordering::Less
    }

    /// Smallest magnitude over the interval (zero if it straddles zero).
    pub fn mag_min(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            self.hi.neg()
        }
    }

    /// Largest magnitude over the interval.
    pub fn mag_max(&self) -> Dyadic {
        Dyadic::max(&self.lo.neg(), &self.hi)
    }

    /// Provable magnitude comparison: `CertainlyLe` iff max|a| <= min|b|,
    /// `CertainlyGt` iff min|a| > max|b|.
    pub fn compare_magnitude(&self, other: &Interval) -> MagCmp {
        if self.mag_max().cmp_value(&other.mag_min()) != Ordering::Greater {
            MagCmp::CertainlyLe
        } else if self.mag_min().cmp_value(&other.mag_max()) == Ordering::Greater {
            MagCmp::CertainlyGt
        } else {
            MagCmp::Unknown
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        if lo.cmp_value(&hi) == Ordering::Greater {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: Dyadic::min(&self.lo, &other.lo), hi: Dyadic::max(&self.hi, &other.hi) }
    }

    /// Exact width as a rational.
    pub fn width(&self) -> Rational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_exact(&Dyadic::new(1.into(), -1))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `[lo,hi]` with round-trip-exact decimal endpoints.
    pub fn to_text(&self) -> String {
        format!("[{},{}]", self.lo.to_decimal_string(), self.hi.to_decimal_string())
    }

    /// Parse `[lo,hi]` where endpoints are decimal or `p/q` literals; the
    /// parsed endpoints are rounded outward at the context precision.
    pub fn parse(s: &str, ctx: &IvCtx) -> Result<Interval, NumericsError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| NumericsError::Parse(s.to_string()))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| NumericsError::Parse(s.to_string()))?;
        let lo = super::parse_decimal_or_rational(a)?;
        let hi = super::parse_decimal_or_rational(b)?;
        if lo > hi {
            return Err(NumericsError::Parse(s.to_string()));
        }
        Ok(ctx.from_rational_bounds(&lo, &hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(Dyadic::from_i64(lo), Dyadic::from_i64(hi))
    }

    #[test]
    fn mul_exact_endpoints() {
        let ctx = IvCtx::default();
        // [1,2] x [-1,3] -> [-2,6]
        assert_eq!(ctx.mul(&iv(1, 2), &iv(-1, 3)), iv(-2, 6));
        // [0,0] x [-7,5] -> [0,0]
        assert_eq!(ctx.mul(&iv(0, 0), &iv(-7, 5)), iv(0, 0));
    }

    #[test]
    fn div_cases() {
        let ctx = IvCtx::default();
        // [1,1]/[2,2] -> [0.5,0.5]
        let half = Interval::point(Dyadic::new(1.into(), -1));
        assert_eq!(ctx.div(&iv(1, 1), &iv(2, 2)).unwrap(), half);
        // zero in denominator is an error
        assert_eq!(
            ctx.div(&iv(1, 2), &iv(-1, 1)).unwrap_err(),
            NumericsError::DivisionByIntervalContainingZero
        );
        // [-4,6]/[2,4] -> [-2,3]
        assert_eq!(ctx.div(&iv(-4, 6), &iv(2, 4)).unwrap(), iv(-2, 3));
    }

    #[test]
    fn magnitude_comparisons() {
        let ctx = IvCtx::default();
        let a = ctx.from_rational_bounds(
            &super::super::parse_decimal_or_rational("0.1").unwrap(),
            &super::super::parse_decimal_or_rational("0.2").unwrap(),
        );
        let b = ctx.from_rational_bounds(
            &super::super::parse_decimal_or_rational("0.5").unwrap(),
            &super::super::parse_decimal_or_rational("0.6").unwrap(),
        );
        assert_eq!(a.compare_magnitude(&b), MagCmp::CertainlyLe);
        let c = ctx.from_rational_bounds(
            &super::super::parse_decimal_or_rational("-2").unwrap(),
            &super::super::parse_decimal_or_rational("-1.5").unwrap(),
        );
        let d = ctx.from_rational_bounds(
            &super::super::parse_decimal_or_rational("0.5").unwrap(),
            &super::super::parse_decimal_or_rational("1").unwrap(),
        );
        assert_eq!(c.compare_magnitude(&d), MagCmp::CertainlyGt);
        let e = iv(0, 1);
        let f = ctx.from_rational_bounds(
            &super::super::parse_decimal_or_rational("0.5").unwrap(),
            &super::super::parse_decimal_or_rational("2").unwrap(),
        );
        assert_eq!(e.compare_magnitude(&f), MagCmp::Unknown);
    }

    #[test]
    fn abs_and_magnitudes() {
        let x = iv(-3, 2);
        assert_eq!(x.abs(), iv(0, 3));
        assert_eq!(x.mag_min(), Dyadic::zero());
        assert_eq!(x.mag_max(), Dyadic::from_i64(3));
        assert_eq!(iv(-5, -2).mag_min(), Dyadic::from_i64(2));
    }

    #[test]
    fn text_round_trip() {
        let ctx = IvCtx::default();
        let x = Interval::new(Dyadic::new(3.into(), -3), Dyadic::new(7.into(), -2));
        let t = x.to_text();
        assert_eq!(Interval::parse(&t, &ctx).unwrap(), x);
    }

    #[test]
    fn even_powers_stay_nonnegative() {
        let ctx = IvCtx::default();
        let x = iv(-2, 1);
        let sq = ctx.pow(&x, 2);
        assert!(!sq.lo().is_negative());
        assert_eq!(sq, iv(0, 4));
        assert_eq!(ctx.pow(&x, 3), iv(-8, 4));
    }
}
