//! Krawczyk existence test for square polynomial systems.
//!
//! For a system F of n polynomials in n variables and an interval box X,
//! the operator K(X) = m - Y F(m) + (I - Y J(X)) (X - m) maps into the
//! interior of X only if X contains exactly one zero of F. This is the
//! rigorous step that turns "the residuals look like zero" into "an exact
//! common zero lies in this box".

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::numerics::{Interval, IvCtx, Rational};

use super::{MultiPoly, MultiPolyError};

#[derive(Debug, Clone)]
pub struct KrawczykOutcome {
    /// Contracted enclosure (intersection of K(X) with X) when the test
    /// succeeds.
    pub enclosure: Option<BTreeMap<String, Interval>>,
    /// K(X) subset of the interior of X: existence and uniqueness proven.
    pub contracted: bool,
}

/// Run one Krawczyk step on `system` over `bounds`. The system must be
/// square: one polynomial per variable, all over the same variable list.
pub fn krawczyk_test(
    system: &[MultiPoly],
    bounds: &BTreeMap<String, Interval>,
    ctx: &IvCtx,
) -> Result<KrawczykOutcome, MultiPolyError> {
    let vars: Vec<String> = system[0].vars().to_vec();
    let n = vars.len();
    assert_eq!(system.len(), n, "Krawczyk needs a square system");
    for p in system {
        if p.vars() != vars {
            return Err(MultiPolyError::VarMismatch(vars.clone(), p.vars().to_vec()));
        }
    }

    // exact rational midpoint
    let mid: Vec<Rational> = vars
        .iter()
        .map(|v| bounds.get(v).expect("unbound variable").midpoint().to_rational())
        .collect();
    let mid_map: BTreeMap<String, Rational> =
        vars.iter().cloned().zip(mid.iter().cloned()).collect();

    // F(m) exactly
    let fm: Vec<Rational> = system.iter().map(|p| p.eval_rational(&mid_map)).collect();

    // J(m) exactly, then Y = J(m)^-1 exactly
    let mut jm = vec![vec![Rational::zero(); n]; n];
    let mut jpolys = Vec::with_capacity(n);
    for (i, p) in system.iter().enumerate() {
        let row: Vec<MultiPoly> = vars.iter().map(|v| p.derivative(v)).collect();
        for (j, d) in row.iter().enumerate() {
            jm[i][j] = d.eval_rational(&mid_map);
        }
        jpolys.push(row);
    }
    let y = match invert_rational(&jm) {
        Some(inv) => inv,
        None => return Ok(KrawczykOutcome { enclosure: None, contracted: false }),
    };

    // interval Jacobian over the box
    let mut jx = vec![vec![Interval::from_i64(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            jx[i][j] = jpolys[i][j].eval_interval(bounds, ctx);
        }
    }

    // K = m - Y F(m) + (I - Y J(X)) (X - m)
    let yiv: Vec<Vec<Interval>> =
        y.iter().map(|row| row.iter().map(|v| ctx.from_rational(v)).collect()).collect();
    let miv: Vec<Interval> = mid.iter().map(|v| ctx.from_rational(v)).collect();
    let xmm: Vec<Interval> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| ctx.sub(bounds.get(v).unwrap(), &miv[i]))
        .collect();
    let mut contracted = true;
    let mut enclosure = BTreeMap::new();
    for i in 0..n {
        // y_i . F(m) exactly in rationals, then outward
        let mut yf = Rational::zero();
        for j in 0..n {
            yf += &y[i][j] * &fm[j];
        }
        let mut k = ctx.sub(&miv[i], &ctx.from_rational(&yf));
        for j in 0..n {
            // (I - Y J(X))_{ij}
            let mut acc = Interval::from_i64(if i == j { 1 } else { 0 });
            for l in 0..n {
                acc = ctx.sub(&acc, &ctx.mul(&yiv[i][l], &jx[l][j]));
            }
            k = ctx.add(&k, &ctx.mul(&acc, &xmm[j]));
        }
        let xi = bounds.get(&vars[i]).unwrap();
        let interior = xi.lo().cmp_value(k.lo()) == std::cmp::Ordering::Less
            && k.hi().cmp_value(xi.hi()) == std::cmp::Ordering::Less;
        if !interior {
            contracted = false;
        }
        match k.intersect(xi) {
            Some(refined) => {
                enclosure.insert(vars[i].clone(), refined);
            }
            None => {
                // K(X) disjoint from X: no zero in the box
                return Ok(KrawczykOutcome { enclosure: None, contracted: false });
            }
        }
    }
    Ok(KrawczykOutcome { enclosure: Some(enclosure), contracted })
}

/// Exact inverse of a rational matrix, None if singular.
fn invert_rational(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut w: Vec<Vec<Rational>> = a.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !w[i][k].is_zero())?;
        w.swap(k, piv);
        inv.swap(k, piv);
        let d = w[k][k].clone();
        for j in 0..n {
            w[k][j] /= &d;
            inv[k][j] /= &d;
        }
        for i in 0..n {
            if i == k || w[i][k].is_zero() {
                continue;
            }
            let f = w[i][k].clone();
            for j in 0..n {
                let t = &w[k][j] * &f;
                w[i][j] -= t;
                let t = &inv[k][j] * &f;
                inv[i][j] -= t;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_decimal_or_rational as pq;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn poly(terms: &[(i64, [u32; 2])]) -> MultiPoly {
        MultiPoly::new(
            vars(),
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), Rational::from_integer((*c).into())))
                .collect(),
        )
    }

    #[test]
    fn certifies_circle_line_intersection() {
        // x^2 + y^2 - 2 = 0, x - y = 0 has the zero (1, 1)
        let f1 = poly(&[(1, [2, 0]), (1, [0, 2]), (-2, [0, 0])]);
        let f2 = poly(&[(1, [1, 0]), (-1, [0, 1])]);
        let ctx = IvCtx::new(80);
        let mut bounds = BTreeMap::new();
        bounds.insert(
            "x".to_string(),
            ctx.from_rational_bounds(&pq("0.9").unwrap(), &pq("1.1").unwrap()),
        );
        bounds.insert(
            "y".to_string(),
            ctx.from_rational_bounds(&pq("0.9").unwrap(), &pq("1.1").unwrap()),
        );
        let out = krawczyk_test(&[f1.clone(), f2.clone()], &bounds, &ctx).unwrap();
        assert!(out.contracted, "Krawczyk must certify the simple zero");
        let enc = out.enclosure.unwrap();
        assert!(enc["x"].contains_rational(&pq("1").unwrap()));

        // a box far from any zero must not certify
        let mut far = BTreeMap::new();
        far.insert("x".to_string(), ctx.from_rational_bounds(&pq("3").unwrap(), &pq("3.1").unwrap()));
        far.insert("y".to_string(), ctx.from_rational_bounds(&pq("3").unwrap(), &pq("3.1").unwrap()));
        let out2 = krawczyk_test(&[f1, f2], &far, &ctx).unwrap();
        assert!(!out2.contracted);
    }
}
