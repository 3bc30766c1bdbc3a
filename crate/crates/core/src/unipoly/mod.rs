//! Exact univariate polynomials over big integers: arithmetic, evaluation,
//! sign analysis, real root isolation and refinement, exact division, and
//! bivariate discriminants through fraction-free Sylvester determinants.

mod resultant;
mod roots;

pub use resultant::BiPoly;
pub use roots::{isolate_real_roots, refine_root, refine_to_digit_string};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numerics::{Interval, IvCtx, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniPolyError {
    #[error("Mobius substitution is degenerate (ad - bc = 0)")]
    DegenerateMobius,
    #[error("polynomial is not squarefree; gcd with derivative has degree {}", .gcd.degree().unwrap_or(0))]
    NotSquarefree { gcd: UniPoly },
    #[error("refinement interval lost its sign change")]
    LostRoot,
    #[error("exact division failed; remainder is nonzero")]
    NotDivisible { remainder: UniPoly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

/// Integer-coefficient polynomial, ascending degree, trailing coefficient
/// nonzero (empty vector is the zero polynomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x - r for integer r, handy for building linear factors.
    pub fn linear(constant: i64, leading: i64) -> Self {
        UniPoly::from_i64(&[constant, leading])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: out }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// gcd of all coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        UniPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from(c.clone());
        }
        acc
    }

    /// Sign of P at an exact rational point, via the homogenized integer
    /// value `sum c_i p^i q^(n-i)`.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let p = x.numer();
        let q = x.denom();
        // Horner on the homogenized form: acc_k = sum_{i>=k} c_i p^(i-k) q^(n-i)
        let n = self.coeffs.len() - 1;
        let mut acc = self.coeffs[n].clone();
        for k in (0..n).rev() {
            acc = acc * p + &self.coeffs[k] * q.pow((n - k) as u32);
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Interval enclosure of P over `x` by Horner with outward rounding.
    pub fn eval_interval(&self, x: &Interval, ctx: &IvCtx) -> Interval {
        let mut acc = Interval::from_i64(0);
        for c in self.coeffs.iter().rev() {
            let ci = ctx.from_rational(&Rational::from(c.clone()));
            acc = ctx.add(&ctx.mul(&acc, x), &ci);
        }
        acc
    }

    /// Number of sign changes in the coefficient sequence; by Descartes'
    /// rule this bounds the positive real root count and has its parity.
    pub fn descartes_sign_changes(&self) -> usize {
        let mut changes = 0;
        let mut prev = 0i32;
        for c in &self.coeffs {
            let s = match c.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            };
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
        changes
    }

    /// `(c t + d)^deg P * P((a t + b)/(c t + d))`, exact integer coefficients.
    pub fn mobius_substitute(
        &self,
        a: &BigInt,
        b: &BigInt,
        c: &BigInt,
        d: &BigInt,
    ) -> Result<UniPoly, UniPolyError> {
        if (a * d - b * c).is_zero() {
            return Err(UniPolyError::DegenerateMobius);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let n = self.coeffs.len() - 1;
        let num = UniPoly::new(vec![b.clone(), a.clone()]);
        let den = UniPoly::new(vec![d.clone(), c.clone()]);
        // power tables for (a t + b)^i and (c t + d)^(n-i)
        let mut num_pows = Vec::with_capacity(n + 1);
        let mut den_pows = Vec::with_capacity(n + 1);
        let mut acc = UniPoly::constant(BigInt::one());
        for _ in 0..=n {
            num_pows.push(acc.clone());
            acc = acc.mul(&num);
        }
        acc = UniPoly::constant(BigInt::one());
        for _ in 0..=n {
            den_pows.push(acc.clone());
            acc = acc.mul(&den);
        }
        let mut out = UniPoly::zero();
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out = out.add(&num_pows[i].mul(&den_pows[n - i]).scale(coeff));
        }
        Ok(out)
    }

    /// Exact quotient `self / q` over the integers.
    pub fn divide_exact(&self, q: &UniPoly) -> Result<UniPoly, UniPolyError> {
        if q.is_zero() {
            return Err(UniPolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let dq = q.degree().unwrap();
        let dp = match self.degree() {
            Some(d) if d >= dq => d,
            _ => return Err(UniPolyError::NotDivisible { remainder: self.clone() }),
        };
        let lq = q.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dp - dq + 1];
        for k in (0..=dp - dq).rev() {
            let lead = rem[k + dq].clone();
            if lead.is_zero() {
                continue;
            }
            let (c, r) = lead.div_rem(lq);
            if !r.is_zero() {
                return Err(UniPolyError::NotDivisible { remainder: UniPoly::new(rem) });
            }
            for i in 0..=dq {
                let delta = &c * &q.coeffs[i];
                rem[k + i] -= delta;
            }
            quot[k] = c;
        }
        let remainder = UniPoly::new(rem);
        if !remainder.is_zero() {
            return Err(UniPolyError::NotDivisible { remainder });
        }
        Ok(UniPoly::new(quot))
    }

    /// Pseudo-remainder: `lc(q)^(dp-dq+1) * self = ?*q + prem`.
    fn pseudo_rem(&self, q: &UniPoly) -> UniPoly {
        let dq = q.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let lq = q.leading().unwrap().clone();
        while let Some(dr) = r.degree() {
            if dr < dq {
                break;
            }
            let lr = r.leading().unwrap().clone();
            // r = lq*r - lr * x^(dr-dq) * q
            r = r.scale(&lq).sub(&q.shift(dr - dq).scale(&lr));
        }
        r
    }

    /// Primitive-PRS gcd, result primitive with positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Fast squarefreeness certificate: if gcd(P, P') is constant modulo
    /// some prime not dividing lc(P), it is constant over the rationals.
    /// Falls back to the exact gcd when no prime certifies.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => return false,
            Some(0) => return true,
            Some(_) => {}
        }
        const PRIMES: [u64; 5] = [1_000_000_007, 998_244_353, 754_974_721, 167_772_161, 469_762_049];
        let dp = self.derivative();
        for p in PRIMES {
            if let Some(deg) = gcd_degree_mod_p(self, &dp, p) {
                if deg == 0 {
                    return true;
                }
            }
        }
        self.gcd(&dp).degree() == Some(0)
    }

    /// P with repeated factors removed (P / gcd(P, P')).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        // gcd divides self over Q; clear the content mismatch afterwards
        divide_exact_rational(self, &g).expect("gcd must divide the polynomial")
    }
}

/// Exact division over the rationals, result scaled to primitive integer form.
fn divide_exact_rational(p: &UniPoly, q: &UniPoly) -> Result<UniPoly, UniPolyError> {
    // p and q integer; p = q * r with r rational. Multiply p by lc(q)^(dp-dq+1)
    // so synthetic division stays integral, then primitivize.
    let dq = q.degree().ok_or(UniPolyError::DivisionByZero)?;
    let dp = match p.degree() {
        Some(d) if d >= dq => d,
        _ => return Err(UniPolyError::NotDivisible { remainder: p.clone() }),
    };
    let scale = q.leading().unwrap().pow((dp - dq + 1) as u32);
    let r = p.scale(&scale).divide_exact(q)?;
    Ok(r.primitive())
}

/// Degree of gcd(a, b) mod p, or None if the reduction degenerates.
fn gcd_degree_mod_p(a: &UniPoly, b: &UniPoly, p: u64) -> Option<usize> {
    let reduce = |poly: &UniPoly| -> Option<Vec<u64>> {
        let mut v: Vec<u64> = poly
            .coeffs
            .iter()
            .map(|c| {
                let m = c.mod_floor(&BigInt::from(p));
                u64::try_from(m).unwrap()
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        // degree must not drop or the certificate is invalid
        if v.len() != poly.coeffs.len() {
            return None;
        }
        Some(v)
    };
    let mut a = reduce(a)?;
    let mut b = reduce(b)?;
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    while !b.is_empty() {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a mod b in F_p[x]
        let inv_lb = powmod(*b.last().unwrap(), p - 2);
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), inv_lb);
            for i in 0..b.len() {
                let sub = mulmod(f, b[i]);
                let idx = k + i;
                a[idx] = (a[idx] + p - sub) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

// ---------------------------------------------------------------- file io

/// Polynomial file format: header `unipoly <var> <degree>`, then one
/// arbitrary-precision decimal integer coefficient per line, ascending.
pub fn parse_unipoly(text: &str) -> Result<(String, UniPoly), UniPolyError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header = lines.next().ok_or_else(|| UniPolyError::Parse("empty polynomial file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "unipoly" {
        return Err(UniPolyError::Parse("header must be `unipoly <var> <degree>`".into()));
    }
    let var = parts[1].to_string();
    let degree: usize =
        parts[2].parse().map_err(|_| UniPolyError::Parse("bad degree in header".into()))?;
    let mut coeffs = Vec::with_capacity(degree + 1);
    for line in lines {
        let c: BigInt = line
            .trim()
            .parse()
            .map_err(|_| UniPolyError::Parse(format!("bad coefficient `{}`", line.trim())))?;
        coeffs.push(c);
    }
    if coeffs.len() != degree + 1 {
        return Err(UniPolyError::Parse(format!(
            "expected {} coefficients, found {}",
            degree + 1,
            coeffs.len()
        )));
    }
    let p = UniPoly::new(coeffs);
    if p.degree() != Some(degree) {
        return Err(UniPolyError::Parse("leading coefficient is zero".into()));
    }
    Ok((var, p))
}

pub fn format_unipoly(var: &str, p: &UniPoly) -> String {
    let deg = p.degree().unwrap_or(0);
    let mut s = format!("unipoly {var} {deg}\n");
    for i in 0..=deg {
        s.push_str(&p.coeff(i).to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = UniPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let q = UniPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(p.mul(&q), UniPoly::from_i64(&[-1, -1, 1, 1]));
        assert_eq!(p.derivative(), UniPoly::from_i64(&[0, 2]));
        assert_eq!(p.descartes_sign_changes(), 1);
        assert_eq!(UniPoly::from_i64(&[1, 0, 1]).descartes_sign_changes(), 0);
    }

    #[test]
    fn exact_division() {
        let p = UniPoly::from_i64(&[-4, 0, 1]); // g^2 - 4
        let q = UniPoly::from_i64(&[-2, 1]); // g - 2
        assert_eq!(p.divide_exact(&q).unwrap(), UniPoly::from_i64(&[2, 1]));
        let bad = UniPoly::from_i64(&[1, 0, 1]); // g^2 + 1
        let err = bad.divide_exact(&UniPoly::from_i64(&[-1, 1])).unwrap_err();
        match err {
            UniPolyError::NotDivisible { remainder } => assert!(!remainder.is_zero()),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mobius_identity_and_signs() {
        let p = UniPoly::from_i64(&[0, 1]); // g
        let id = p
            .mobius_substitute(&1.into(), &0.into(), &0.into(), &1.into())
            .unwrap();
        assert_eq!(id, p);
        assert!(p
            .mobius_substitute(&1.into(), &1.into(), &1.into(), &1.into())
            .is_err());
        // x^2 - 2 on (1,2) via x -> (1 + 2t)/(1 + t): one sign change
        let q = UniPoly::from_i64(&[-2, 0, 1]);
        let t = q
            .mobius_substitute(&2.into(), &1.into(), &1.into(), &1.into())
            .unwrap();
        assert_eq!(t.descartes_sign_changes(), 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = UniPoly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let q = UniPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(p.gcd(&q), q);
        let sq = p.mul(&p).mul(&q);
        assert!(!sq.is_squarefree());
        assert!(p.is_squarefree());
        assert_eq!(sq.squarefree_part(), p.primitive());
    }

    #[test]
    fn sign_at_matches_eval() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let x = Rational::new(3.into(), 2.into());
        assert_eq!(p.sign_at(&x), 1);
        let y = Rational::new(7.into(), 5.into());
        assert_eq!(p.sign_at(&y), -1);
        assert_eq!(p.eval_rational(&y) < Rational::zero(), true);
    }

    #[test]
    fn io_round_trip() {
        let p = UniPoly::from_i64(&[22528, 12032, -5888, -1136, 688, -86, 3]);
        let t = format_unipoly("g", &p);
        let (var, q) = parse_unipoly(&t).unwrap();
        assert_eq!(var, "g");
        assert_eq!(p, q);
        assert!(parse_unipoly("unipoly g 2\n1\n2\n").is_err());
    }

    #[test]
    fn interval_eval_contains_exact() {
        let p = UniPoly::from_i64(&[1, -3, 0, 2]);
        let ctx = IvCtx::default();
        let x = ctx.from_rational(&Rational::new(7.into(), 3.into()));
        let iv = p.eval_interval(&x, &ctx);
        let exact = p.eval_rational(&Rational::new(7.into(), 3.into()));
        assert!(iv.contains_rational(&exact));
    }
}
