//! Multivariate polynomials over the rationals with lexicographic ordering,
//! Buchberger-based elimination under resource limits, and rigorous interval
//! point evaluation.

mod buchberger;
mod fraction;
mod krawczyk;

pub use buchberger::{buchberger, eliminate_variable, reduce_basis, BuchbergerLimits, BuchbergerStats};
pub use fraction::{
    certify_reconstruction, load_tower, reconstruct_matrix, verify_system_links,
    CertifiedReconstruction, PolyFraction, Tower,
};
pub use krawczyk::{krawczyk_test, KrawczykOutcome};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numerics::{format_rational, Interval, IvCtx, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiPolyError {
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(BuchbergerStats),
    #[error("a substitution denominator interval contains zero")]
    SubstitutionSingular,
    #[error("variable lists do not match: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("multivariate polynomial parse error: {0}")]
    Parse(String),
}

/// Sparse multivariate polynomial. The variable list doubles as the active
/// lexicographic order (earlier = higher priority); terms are kept sorted
/// descending with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, Rational)>,
}

/// Lexicographic monomial order given by a variable priority list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub vars: Vec<String>,
}

fn lex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.cmp(b)
}

impl MultiPoly {
    pub fn new(vars: Vec<String>, raw_terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let nv = vars.len();
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (mut e, c) in raw_terms {
            assert!(e.len() <= nv, "exponent vector longer than variable list");
            e.resize(nv, 0);
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        let mut terms: Vec<(Vec<u32>, Rational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|x, y| lex_cmp(&y.0, &x.0));
        MultiPoly { vars, terms }
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: vec![] }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let nv = vars.len();
        MultiPoly::new(vars, vec![(vec![0; nv], c)])
    }

    /// Monomial `var^1` as a polynomial.
    pub fn var(vars: Vec<String>, name: &str) -> Self {
        let idx = vars.iter().position(|v| v == name).expect("unknown variable");
        let nv = vars.len();
        let mut e = vec![0; nv];
        e[idx] = 1;
        MultiPoly::new(vars, vec![(e, Rational::one())])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&[u32], &Rational)> {
        self.terms.first().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_of(&self, var: &str) -> u32 {
        let idx = match self.vars.iter().position(|v| v == var) {
            Some(i) => i,
            None => return 0,
        };
        self.terms.iter().map(|(e, _)| e[idx]).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) -> Result<(), MultiPolyError> {
        if self.vars != other.vars {
            return Err(MultiPolyError::VarMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other).expect("variable lists must match");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MultiPoly::new(self.vars.clone(), terms)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other).expect("variable lists must match");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        MultiPoly::new(self.vars.clone(), terms)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the monomial `coeff * x^e`.
    pub fn mul_term(&self, e: &[u32], coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(ee, c)| (ee.iter().zip(e).map(|(a, b)| a + b).collect(), c * coeff))
            .collect();
        MultiPoly::new(self.vars.clone(), terms)
    }

    /// Integer-primitive normalization: scale so coefficients are coprime
    /// integers with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        let mut scale = Rational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Exact rational evaluation.
    pub fn eval_rational(&self, point: &BTreeMap<String, Rational>) -> Rational {
        let vals: Vec<&Rational> =
            self.vars.iter().map(|v| point.get(v).expect("unbound variable")).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Interval enclosure of the value over an interval box.
    pub fn eval_interval(&self, point: &BTreeMap<String, Interval>, ctx: &IvCtx) -> Interval {
        let vals: Vec<&Interval> =
            self.vars.iter().map(|v| point.get(v).expect("unbound variable")).collect();
        // cache powers per variable for sharpness and speed
        let mut pows: Vec<Vec<Interval>> = Vec::with_capacity(vals.len());
        for (i, v) in vals.iter().enumerate() {
            let maxe = self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0);
            let mut col = Vec::with_capacity(maxe as usize + 1);
            col.push(Interval::from_i64(1));
            for e in 1..=maxe {
                col.push(ctx.pow(v, e));
            }
            pows.push(col);
        }
        let mut acc = Interval::from_i64(0);
        for (e, c) in &self.terms {
            let mut t = ctx.from_rational(c);
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = ctx.mul(&t, &pows[i][exp as usize]);
                }
            }
            acc = ctx.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: &str) -> Self {
        let idx = self.vars.iter().position(|v| v == var).expect("unknown variable");
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] > 0)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[idx] -= 1;
                (ne, c * Rational::from_integer(BigInt::from(e[idx])))
            })
            .collect();
        MultiPoly::new(self.vars.clone(), terms)
    }

    /// Rebuild over a different variable priority list (a permutation or
    /// superset of the current variables).
    pub fn reorder_vars(&self, new_vars: &[String]) -> Self {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v).expect("missing variable in new order"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; new_vars.len()];
                for (i, &exp) in e.iter().enumerate() {
                    ne[idx[i]] = exp;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly::new(new_vars.to_vec(), terms)
    }

    /// Drop a variable that no term uses.
    pub fn project_out(&self, var: &str) -> Self {
        let idx = self.vars.iter().position(|v| v == var).expect("unknown variable");
        assert!(self.terms.iter().all(|(e, _)| e[idx] == 0), "variable still occurs");
        let vars: Vec<String> = self.vars.iter().filter(|v| v.as_str() != var).cloned().collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne: Vec<u32> =
                    e.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, &x)| x).collect();
                (ne, c.clone())
            })
            .collect();
        MultiPoly::new(vars, terms)
    }
}

/// Normal form of `f` modulo `G`: no term of the result is divisible by any
/// leading term of `G`, and `f - result` lies in the ideal generated by `G`.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut rem = f.clone();
    'outer: loop {
        for ti in 0..rem.terms.len() {
            let (e, c) = (&rem.terms[ti].0, &rem.terms[ti].1);
            for g in basis {
                if g.is_zero() {
                    continue;
                }
                let (lte, ltc) = g.leading_term().unwrap();
                if divides(lte, e) {
                    let qe: Vec<u32> = e.iter().zip(lte).map(|(a, b)| a - b).collect();
                    let qc = c / ltc;
                    rem = rem.sub(&g.mul_term(&qe, &qc));
                    continue 'outer;
                }
            }
        }
        return rem;
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn exp_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

// ---------------------------------------------------------------- file io

/// Text format: header `multipoly <var1> <var2> ...`, then one term per
/// line as `coeff: e1 e2 ... ek`.
pub fn parse_multipoly(text: &str) -> Result<MultiPoly, MultiPolyError> {
    let mut lines =
        text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header =
        lines.next().ok_or_else(|| MultiPolyError::Parse("empty polynomial file".into()))?;
    let mut it = header.split_whitespace();
    if it.next() != Some("multipoly") {
        return Err(MultiPolyError::Parse("header must be `multipoly <vars...>`".into()));
    }
    let vars: Vec<String> = it.map(String::from).collect();
    if vars.is_empty() {
        return Err(MultiPolyError::Parse("no variables in header".into()));
    }
    let mut terms = Vec::new();
    for line in lines {
        let (cs, es) = line
            .split_once(':')
            .ok_or_else(|| MultiPolyError::Parse(format!("bad term line `{line}`")))?;
        let coeff = crate::numerics::parse_rational(cs.trim())
            .map_err(|e| MultiPolyError::Parse(e.to_string()))?;
        let exps: Result<Vec<u32>, _> = es.split_whitespace().map(|t| t.parse::<u32>()).collect();
        let exps = exps.map_err(|_| MultiPolyError::Parse(format!("bad exponents `{es}`")))?;
        if exps.len() != vars.len() {
            return Err(MultiPolyError::Parse(format!(
                "term has {} exponents for {} variables",
                exps.len(),
                vars.len()
            )));
        }
        terms.push((exps, coeff));
    }
    Ok(MultiPoly::new(vars, terms))
}

pub fn format_multipoly(p: &MultiPoly) -> String {
    let mut s = format!("multipoly {}\n", p.vars.join(" "));
    for (e, c) in &p.terms {
        s.push_str(&format_rational(c));
        s.push_str(": ");
        s.push_str(&e.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    /// tiny builder: terms of (coeff, exps)
    fn poly(vs: &[&str], terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::new(
            vars(vs),
            terms.iter().map(|(c, e)| (e.to_vec(), q(*c))).collect(),
        )
    }

    #[test]
    fn lex_leading_term() {
        // x > y: x^2 y + y^3 has leading term x^2 y
        let p = poly(&["x", "y"], &[(1, &[2, 1]), (1, &[0, 3])]);
        assert_eq!(p.leading_term().unwrap().0, &[2, 1]);
    }

    #[test]
    fn reduce_examples() {
        // reduce(x^2 y, {x^2 - 1}) -> y
        let f = poly(&["x", "y"], &[(1, &[2, 1])]);
        let g = poly(&["x", "y"], &[(1, &[2, 0]), (-1, &[0, 0])]);
        let r = reduce(&f, &[g.clone()]);
        assert_eq!(r, poly(&["x", "y"], &[(1, &[0, 1])]));
        // self-reduction to zero
        assert!(reduce(&g, &[g.clone()]).is_zero());
    }

    #[test]
    fn construct_then_reduce_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let vs = ["x", "y", "z"];
        for _ in 0..50 {
            let rnd_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let nterms = rng.gen_range(1..4);
                let terms: Vec<(i64, Vec<u32>)> = (0..nterms)
                    .map(|_| {
                        (
                            rng.gen_range(-3..=3),
                            (0..3).map(|_| rng.gen_range(0..3u32)).collect(),
                        )
                    })
                    .collect();
                MultiPoly::new(
                    vars(&vs),
                    terms.into_iter().map(|(c, e)| (e, q(c))).collect(),
                )
            };
            let g1 = poly(&vs, &[(1, &[2, 0, 0]), (-1, &[0, 1, 0])]); // x^2 - y
            let g2 = poly(&vs, &[(1, &[0, 0, 2]), (-1, &[0, 0, 0])]); // z^2 - 1
            let basis = [g1.clone(), g2.clone()];
            // r already reduced: a polynomial in y and z with z-degree <= 1
            let r = poly(&vs, &[(2, &[0, 3, 1]), (-1, &[0, 1, 0]), (3, &[1, 0, 0])]);
            let f = rnd_poly(&mut rng);
            let h = rnd_poly(&mut rng);
            let built = f.mul(&g1).add(&h.mul(&g2)).add(&r);
            assert_eq!(reduce(&built, &basis), reduce(&r, &basis));
        }
    }

    #[test]
    fn eval_matches_between_modes() {
        let p = poly(&["x", "y"], &[(3, &[2, 1]), (-2, &[0, 2]), (7, &[0, 0])]);
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), Rational::new(1.into(), 3.into()));
        pt.insert("y".to_string(), Rational::new((-5).into(), 2.into()));
        let exact = p.eval_rational(&pt);
        let ctx = IvCtx::default();
        let mut ipt = BTreeMap::new();
        for (k, v) in &pt {
            ipt.insert(k.clone(), ctx.from_rational(v));
        }
        let iv = p.eval_interval(&ipt, &ctx);
        assert!(iv.contains_rational(&exact));
        // constant and cancellation cases
        let c7 = MultiPoly::constant(vars(&["x", "y"]), q(7));
        assert_eq!(c7.eval_rational(&pt), q(7));
        let xy = poly(&["x", "y"], &[(1, &[1, 1])]);
        let yx = poly(&["x", "y"], &[(1, &[1, 1])]);
        assert!(xy.sub(&yx).is_zero());
    }

    #[test]
    fn primitive_normalization() {
        let p = poly(&["x"], &[(-4, &[2]), (-6, &[0])]);
        let prim = p.primitive();
        assert_eq!(prim, poly(&["x"], &[(2, &[2]), (3, &[0])]));
        let r = MultiPoly::new(
            vars(&["x"]),
            vec![(vec![1], Rational::new(1.into(), 2.into())), (vec![0], Rational::new(1.into(), 3.into()))],
        );
        assert_eq!(r.primitive(), poly(&["x"], &[(3, &[1]), (2, &[0])]));
    }

    #[test]
    fn io_round_trip() {
        let p = poly(&["x", "y", "z"], &[(3, &[2, 1, 0]), (-1, &[0, 0, 4])]);
        let t = format_multipoly(&p);
        assert_eq!(parse_multipoly(&t).unwrap(), p);
        assert!(parse_multipoly("multipoly\n").is_err());
        assert!(parse_multipoly("multipoly x\n2: 1 2\n").is_err());
    }

    #[test]
    fn reorder_and_project() {
        let p = poly(&["x", "y"], &[(1, &[2, 0]), (5, &[0, 1])]);
        let r = p.reorder_vars(&vars(&["y", "x"]));
        assert_eq!(r.leading_term().unwrap().0, &[1, 0]); // y now leads
        let py = poly(&["x", "y"], &[(5, &[0, 1])]);
        let projected = py.project_out("x");
        assert_eq!(projected.vars(), &["y".to_string()]);
    }
}
