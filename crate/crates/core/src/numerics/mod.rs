//! Exact rational scalars and rigorous interval arithmetic.
//!
//! Everything rigorous in this crate runs on [`Interval`] values whose
//! endpoints are arbitrary-precision dyadic floats rounded outward, so every
//! operation encloses the exact real result. Exact rational intervals are
//! available as a cross-check mode.

mod dyadic;
mod interval;
mod rat_interval;
mod rational;

pub use dyadic::{Dyadic, Rounding};
pub use interval::{Interval, IvCtx};
pub use rat_interval::RatInterval;
pub use rational::{format_rational, parse_decimal_or_rational, parse_rational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    /// Division by an interval containing zero. In this domain that always
    /// means "split the box"; it is never propagated as an unbounded interval.
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("square root of an interval with a negative endpoint")]
    NegativeSqrt,
    #[error("invalid scalar literal: {0}")]
    Parse(String),
}

/// Three-valued outcome of a provable magnitude comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagCmp {
    /// max|a| <= min|b| holds for every point of both intervals.
    CertainlyLe,
    /// min|a| > max|b| holds for every point of both intervals.
    CertainlyGt,
    Unknown,
}

/// Three-valued verdict for checks that may be undecidable in interval mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertainlyYes,
    CertainlyNo,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::CertainlyYes => write!(f, "CertainlyYes"),
            Verdict::CertainlyNo => write!(f, "CertainlyNo"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}
