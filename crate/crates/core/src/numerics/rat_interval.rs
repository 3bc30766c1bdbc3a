//! Exact rational intervals: the alternate endpoint mode for small
//! certificates and the oracle used to test the dyadic intervals.

use num_traits::Signed;

use super::{NumericsError, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumericsError> {
        if other.contains_zero() {
            return Err(NumericsError::DivisionByIntervalContainingZero);
        }
        let cands = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Ok(RatInterval { lo, hi })
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn exact_interval_ops() {
        let a = RatInterval::new(q("1"), q("2"));
        let b = RatInterval::new(q("-1"), q("3"));
        assert_eq!(a.mul(&b), RatInterval::new(q("-2"), q("6")));
        let c = RatInterval::new(q("-4"), q("6"));
        let d = RatInterval::new(q("2"), q("4"));
        assert_eq!(c.div(&d).unwrap(), RatInterval::new(q("-2"), q("3")));
        assert!(a.div(&b).is_err());
    }
}
