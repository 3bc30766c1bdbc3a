//! Real root isolation and refinement.
//!
//! Isolation is bisection driven by Descartes counts after a Mobius map of
//! the candidate interval onto (0, oo): zero sign changes excludes roots,
//! one sign change proves exactly one. Refinement is plain exact bisection
//! with signs evaluated in integer arithmetic, so the returned enclosures
//! are rigorous.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{UniPoly, UniPolyError};
use crate::numerics::Rational;

/// Number of real roots of P strictly inside (lo, hi) bounded via Descartes
/// after mapping (lo, hi) onto (0, oo): returns the sign-change count.
fn descartes_count_on(p: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    // x = (lo + hi t) / (1 + t) maps t in (0, oo) onto x in (lo, hi).
    // Clear rational endpoints: with lo = a/c, hi = b/d (positive denoms),
    // x = (a d + b c t) / (c d (1 + t)); the homogenized substitution into P
    // scales by a positive constant, so sign changes are unaffected.
    let a = lo.numer();
    let c = lo.denom();
    let b = hi.numer();
    let d = hi.denom();
    let num_const = a * d; // t^0 coefficient of numerator
    let num_lin = b * c; // t^1 coefficient
    let den_const: BigInt = c * d;
    let den_lin: BigInt = c * d;
    let transformed = p
        .mobius_substitute(&num_lin, &num_const, &den_lin, &den_const)
        .expect("lo < hi makes the map nondegenerate");
    transformed.descartes_sign_changes()
}

/// Isolate all real roots of a squarefree P strictly inside (lo, hi).
///
/// Each returned interval `[a, b]` contains exactly one real root; point
/// roots come back as `[m, m]`. Intervals are disjoint and sorted.
pub fn isolate_real_roots(
    p: &UniPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<(Rational, Rational)>, UniPolyError> {
    assert!(lo < hi, "empty isolation range");
    if p.is_zero() {
        return Err(UniPolyError::Parse("cannot isolate roots of the zero polynomial".into()));
    }
    if !p.is_squarefree() {
        return Err(UniPolyError::NotSquarefree { gcd: p.gcd(&p.derivative()) });
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match descartes_count_on(p, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / Rational::from_integer(2.into());
                if p.sign_at(&mid) == 0 {
                    out.push((mid.clone(), mid.clone()));
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Shrink an isolating interval around a simple root until its width is at
/// most `10^-digits`. The output is nested inside the input.
pub fn refine_root(
    p: &UniPoly,
    iso: &(Rational, Rational),
    digits: u32,
) -> Result<(Rational, Rational), UniPolyError> {
    let (mut lo, mut hi) = iso.clone();
    if lo == hi {
        if p.sign_at(&lo) != 0 {
            return Err(UniPolyError::LostRoot);
        }
        return Ok((lo, hi));
    }
    let s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(UniPolyError::LostRoot);
    }
    let target = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let two = Rational::from_integer(2.into());
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let s_mid = p.sign_at(&mid);
        if s_mid == 0 {
            // exact hit: collapse to the point
            return Ok((mid.clone(), mid));
        }
        if s_mid == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Refine until the first `digits` decimal digits of the root are pinned,
/// and return them as text (e.g. `4.132517...` with `digits` fractional
/// digits, truncated toward zero). Roots landing exactly on a digit
/// boundary are detected by an exact sign test and rendered with trailing
/// zeros.
pub fn refine_to_digit_string(
    p: &UniPoly,
    iso: &(Rational, Rational),
    digits: u32,
) -> Result<String, UniPolyError> {
    let scale = Rational::from_integer(BigInt::from(10u32).pow(digits));
    let mut cur = refine_root(p, iso, digits + 2)?;
    let mut extra = digits + 8;
    loop {
        if cur.0 == cur.1 {
            return Ok(render_scaled(&scaled_trunc(&cur.0, digits), digits));
        }
        let (tlo, thi) = (scaled_trunc(&cur.0, digits), scaled_trunc(&cur.1, digits));
        if tlo == thi {
            return Ok(render_scaled(&tlo, digits));
        }
        // a multiple of 10^-digits lies inside the enclosure; if it is the
        // root itself, no amount of bisection will separate the truncations
        let boundary_int = (&cur.1 * &scale).floor().to_integer();
        let boundary = Rational::from_integer(boundary_int.clone()) / &scale;
        if p.sign_at(&boundary) == 0 {
            return Ok(render_scaled(&boundary_int, digits));
        }
        cur = refine_root(p, &cur, extra)?;
        extra += 16;
    }
}

/// trunc(x * 10^digits) as a big integer (toward zero, so the digits of the
/// magnitude come out right for both signs).
fn scaled_trunc(x: &Rational, digits: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(digits);
    let v = x * Rational::from_integer(scale);
    v.trunc().to_integer()
}

fn render_scaled(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let mag = scaled.magnitude().to_string();
    let mag = if mag.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let point = mag.len() - digits as usize;
    format!("{}{}.{}", if neg { "-" } else { "" }, &mag[..point], &mag[point..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_decimal_or_rational as q;

    fn qr(s: &str) -> Rational {
        q(s).unwrap()
    }

    #[test]
    fn isolate_simple_quadratic() {
        let p = UniPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let roots = isolate_real_roots(&p, &qr("-3"), &qr("3")).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].1 < Rational::zero() || roots[0].0 < Rational::zero());
        let refined = refine_root(&p, &roots[1], 20).unwrap();
        let s = refine_to_digit_string(&p, &roots[1], 20).unwrap();
        assert_eq!(s, "1.41421356237309504880");
        assert!(refined.0 >= roots[1].0 && refined.1 <= roots[1].1);
    }

    #[test]
    fn exact_root_becomes_point() {
        let p = UniPoly::from_i64(&[-4, 0, 1]); // (x-2)(x+2)
        let roots = isolate_real_roots(&p, &qr("0"), &qr("3")).unwrap();
        assert_eq!(roots.len(), 1);
        // the midpoint chain may or may not hit 2 exactly; refining must
        // still produce the right digits
        let s = refine_to_digit_string(&p, &roots[0], 5).unwrap();
        assert_eq!(s, "2.00000");
    }

    #[test]
    fn no_roots_means_empty() {
        let p = UniPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert!(isolate_real_roots(&p, &qr("-10"), &qr("10")).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_squarefree() {
        let p = UniPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        match isolate_real_roots(&p, &qr("-2"), &qr("0")) {
            Err(UniPolyError::NotSquarefree { gcd }) => {
                assert_eq!(gcd.degree(), Some(1));
            }
            other => panic!("expected NotSquarefree, got {other:?}"),
        }
    }

    #[test]
    fn refine_detects_lost_root() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let bad = (qr("2"), qr("3"));
        assert_eq!(refine_root(&p, &bad, 5), Err(UniPolyError::LostRoot));
    }

    #[test]
    fn negative_root_digits() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &qr("-2"), &qr("0")).unwrap();
        let s = refine_to_digit_string(&p, &roots[0], 10).unwrap();
        assert_eq!(s, "-1.4142135623");
    }

    #[test]
    fn isolation_matches_grid_scan_oracle() {
        // brute-force oracle: sign changes of P on a fine uniform grid
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(1..=7);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
            let p = UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
            if p.is_zero() || !p.is_squarefree() {
                continue;
            }
            let lo = qr("-8");
            let hi = qr("8");
            let isolated = isolate_real_roots(&p, &lo, &hi).unwrap();
            // oracle: scan 2^14 grid cells, counting sign changes and exact
            // zeros at grid points
            let cells = 1 << 14;
            let step = (&hi - &lo) / Rational::from_integer(BigInt::from(cells));
            let mut oracle = 0usize;
            let mut prev = p.sign_at(&lo);
            for k in 1..=cells {
                let x = &lo + &step * Rational::from_integer(BigInt::from(k));
                let s = p.sign_at(&x);
                if s == 0 {
                    oracle += 1;
                    prev = -prev; // treat exact grid zero as a crossing
                    continue;
                }
                if prev != 0 && s != prev {
                    oracle += 1;
                }
                prev = s;
            }
            // grid zeros at interior roots: with denominator-16384 grid and
            // small integer coefficients, grid points are rarely roots, and
            // roots closer than the grid step do not occur for these degrees
            assert_eq!(isolated.len(), oracle, "poly {coeffs:?}");
        }
    }
}
