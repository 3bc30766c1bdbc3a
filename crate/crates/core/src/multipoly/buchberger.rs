//! Buchberger's algorithm with the normal pair-selection strategy, the
//! coprime-leading-term and chain criteria, and hard resource limits.
//!
//! The limits matter: the full elimination for the 5x5 system is beyond a
//! desk-scale Buchberger run, and callers are expected to receive
//! `ResourceExceeded` with progress statistics rather than hang.

use std::fmt;

use super::{divides, exp_lcm, reduce, MultiPoly, MultiPolyError};

#[derive(Debug, Clone, Copy)]
pub struct BuchbergerLimits {
    /// Maximum number of S-pairs processed.
    pub max_pairs: usize,
    /// Maximum total degree of any basis element.
    pub max_degree: u32,
    /// Maximum term count of any basis element.
    pub max_terms: usize,
}

impl Default for BuchbergerLimits {
    fn default() -> Self {
        BuchbergerLimits { max_pairs: 50_000, max_degree: 64, max_terms: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BuchbergerStats {
    pub pairs_processed: usize,
    pub pairs_skipped_coprime: usize,
    pub pairs_skipped_chain: usize,
    pub basis_size: usize,
    pub max_total_degree: u32,
    pub max_terms_seen: usize,
}

impl fmt::Display for BuchbergerStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs={} skipped(coprime)={} skipped(chain)={} basis={} maxdeg={} maxterms={}",
            self.pairs_processed,
            self.pairs_skipped_coprime,
            self.pairs_skipped_chain,
            self.basis_size,
            self.max_total_degree,
            self.max_terms_seen
        )
    }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (ef, cf) = f.leading_term().unwrap();
    let (eg, cg) = g.leading_term().unwrap();
    let l = exp_lcm(ef, eg);
    let qf: Vec<u32> = l.iter().zip(ef).map(|(a, b)| a - b).collect();
    let qg: Vec<u32> = l.iter().zip(eg).map(|(a, b)| a - b).collect();
    let one = crate::numerics::Rational::from_integer(1.into());
    f.mul_term(&qf, &(&one / cf)).sub(&g.mul_term(&qg, &(&one / cg)))
}

/// A Groebner basis of the ideal generated by `input` for the lex order
/// carried by the polynomials' variable lists.
pub fn buchberger(
    input: &[MultiPoly],
    limits: &BuchbergerLimits,
) -> Result<Vec<MultiPoly>, MultiPolyError> {
    let mut basis: Vec<MultiPoly> =
        input.iter().filter(|p| !p.is_zero()).map(|p| p.primitive()).collect();
    assert!(!basis.is_empty(), "empty or all-zero input");
    let mut stats = BuchbergerStats { basis_size: basis.len(), ..Default::default() };
    for p in &basis {
        stats.max_total_degree = stats.max_total_degree.max(p.total_degree());
        stats.max_terms_seen = stats.max_terms_seen.max(p.num_terms());
    }

    // pending pairs (i, j) with i < j
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    while !pairs.is_empty() {
        // normal strategy: minimal lcm total degree, ties by lcm then indices
        let (best_idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let l = exp_lcm(
                    basis[i].leading_term().unwrap().0,
                    basis[j].leading_term().unwrap().0,
                );
                let deg: u32 = l.iter().sum();
                (deg, l, i, j)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best_idx);
        done.insert((i, j));

        let (ei, _) = basis[i].leading_term().unwrap();
        let (ej, _) = basis[j].leading_term().unwrap();
        let l = exp_lcm(ei, ej);

        // first criterion: coprime leading terms
        if l.iter().zip(ei).map(|(a, b)| a - b).eq(ej.iter().cloned()) {
            stats.pairs_skipped_coprime += 1;
            continue;
        }
        // chain criterion: some k with LT(k) | lcm and both pairs handled
        let mut chained = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if divides(basis[k].leading_term().unwrap().0, &l) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if done.contains(&a) && done.contains(&b) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            stats.pairs_skipped_chain += 1;
            continue;
        }

        stats.pairs_processed += 1;
        if stats.pairs_processed > limits.max_pairs {
            return Err(MultiPolyError::ResourceExceeded(stats));
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis).primitive();
        if r.is_zero() {
            continue;
        }
        stats.max_total_degree = stats.max_total_degree.max(r.total_degree());
        stats.max_terms_seen = stats.max_terms_seen.max(r.num_terms());
        if r.total_degree() > limits.max_degree || r.num_terms() > limits.max_terms {
            return Err(MultiPolyError::ResourceExceeded(stats));
        }
        let new_idx = basis.len();
        basis.push(r);
        stats.basis_size = basis.len();
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
    }
    Ok(basis)
}

/// Minimal reduced form: leading terms pairwise indivisible, every element
/// fully reduced against the others, integer-primitive.
pub fn reduce_basis(basis: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut kept: Vec<MultiPoly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let lt = p.leading_term().unwrap().0.to_vec();
        let redundant = basis.iter().enumerate().any(|(k, q)| {
            if k == i || q.is_zero() {
                return false;
            }
            let qlt = q.leading_term().unwrap().0;
            divides(qlt, &lt) && (qlt != lt.as_slice() || k < i)
        });
        if !redundant {
            kept.push(p.clone());
        }
    }
    let snapshot = kept.clone();
    let mut out = Vec::with_capacity(kept.len());
    for (i, p) in snapshot.iter().enumerate() {
        let others: Vec<MultiPoly> =
            snapshot.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, q)| q.clone()).collect();
        let r = if others.is_empty() { p.clone() } else { reduce(p, &others) };
        if !r.is_zero() {
            out.push(r.primitive());
        }
    }
    out.sort_by(|a, b| b.leading_term().unwrap().0.cmp(a.leading_term().unwrap().0));
    out
}

/// Members of the elimination ideal: run a lex basis with `var` ordered
/// highest and keep the polynomials free of it.
pub fn eliminate_variable(
    input: &[MultiPoly],
    var: &str,
    limits: &BuchbergerLimits,
) -> Result<Vec<MultiPoly>, MultiPolyError> {
    let mut order: Vec<String> = vec![var.to_string()];
    for v in input[0].vars() {
        if v != var {
            order.push(v.clone());
        }
    }
    let reordered: Vec<MultiPoly> = input.iter().map(|p| p.reorder_vars(&order)).collect();
    let basis = buchberger(&reordered, limits)?;
    let reduced = reduce_basis(&basis);
    Ok(reduced
        .into_iter()
        .filter(|p| p.degree_of(var) == 0)
        .map(|p| p.project_out(var))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn vars(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn poly(vs: &[&str], terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::new(
            vars(vs),
            terms.iter().map(|(c, e)| (e.to_vec(), Rational::from_integer((*c).into()))).collect(),
        )
    }

    fn assert_all_spolys_reduce(basis: &[MultiPoly]) {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j]);
                assert!(reduce(&s, basis).is_zero(), "S-poly ({i},{j}) does not reduce to zero");
            }
        }
    }

    #[test]
    fn basis_for_simple_system() {
        // {x^2 - y, y - 1} with lex x > y reduces to {x^2 - 1, y - 1}
        let f1 = poly(&["x", "y"], &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = poly(&["x", "y"], &[(1, &[0, 1]), (-1, &[0, 0])]);
        let basis = buchberger(&[f1.clone(), f2.clone()], &BuchbergerLimits::default()).unwrap();
        assert_all_spolys_reduce(&basis);
        for f in [&f1, &f2] {
            assert!(reduce(f, &basis).is_zero());
        }
        let reduced = reduce_basis(&basis);
        let expect_a = poly(&["x", "y"], &[(1, &[2, 0]), (-1, &[0, 0])]);
        let expect_b = poly(&["x", "y"], &[(1, &[0, 1]), (-1, &[0, 0])]);
        assert_eq!(reduced, vec![expect_a, expect_b]);
    }

    #[test]
    fn already_a_basis() {
        let f1 = poly(&["x", "y"], &[(1, &[1, 0])]);
        let f2 = poly(&["x", "y"], &[(1, &[0, 1])]);
        let basis = buchberger(&[f1.clone(), f2.clone()], &BuchbergerLimits::default()).unwrap();
        assert_eq!(reduce_basis(&basis), vec![f1, f2]);
    }

    #[test]
    fn elimination_examples() {
        // {x - y^2, y - 1}: eliminating y leaves x - 1
        let f1 = poly(&["x", "y"], &[(1, &[1, 0]), (-1, &[0, 2])]);
        let f2 = poly(&["x", "y"], &[(1, &[0, 1]), (-1, &[0, 0])]);
        let elim = eliminate_variable(&[f1, f2], "y", &BuchbergerLimits::default()).unwrap();
        let expect = poly(&["x"], &[(1, &[1]), (-1, &[0])]);
        assert!(elim.contains(&expect), "got {elim:?}");

        // {x^2 + y^2, x^2 - y^2}: eliminating y leaves x^2
        let g1 = poly(&["x", "y"], &[(1, &[2, 0]), (1, &[0, 2])]);
        let g2 = poly(&["x", "y"], &[(1, &[2, 0]), (-1, &[0, 2])]);
        let elim2 = eliminate_variable(&[g1, g2], "y", &BuchbergerLimits::default()).unwrap();
        let expect2 = poly(&["x"], &[(1, &[2])]);
        assert!(elim2.contains(&expect2), "got {elim2:?}");
    }

    #[test]
    fn limits_trip() {
        // cyclic-4 style system blows past a pair budget of 1
        let f1 = poly(&["x", "y"], &[(1, &[3, 0]), (-1, &[0, 1])]);
        let f2 = poly(&["x", "y"], &[(1, &[2, 1]), (1, &[0, 0])]);
        let tiny = BuchbergerLimits { max_pairs: 1, max_degree: 64, max_terms: 1000 };
        match buchberger(&[f1, f2], &tiny) {
            Err(MultiPolyError::ResourceExceeded(stats)) => {
                assert!(stats.pairs_processed >= 1);
            }
            other => panic!("expected ResourceExceeded, got {other:?}"),
        }
    }

    #[test]
    fn random_small_systems_all_spolys_reduce() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut built = 0;
        while built < 20 {
            let npolys = rng.gen_range(2..=3);
            let system: Vec<MultiPoly> = (0..npolys)
                .map(|_| {
                    let nterms = rng.gen_range(1..=3);
                    MultiPoly::new(
                        vars(&["x", "y", "z"]),
                        (0..nterms)
                            .map(|_| {
                                (
                                    (0..3).map(|_| rng.gen_range(0..=2u32)).collect(),
                                    Rational::from_integer(rng.gen_range(-3i64..=3).into()),
                                )
                            })
                            .collect(),
                    )
                })
                .collect();
            if system.iter().any(|p| p.is_zero()) {
                continue;
            }
            let limits = BuchbergerLimits { max_pairs: 2000, max_degree: 24, max_terms: 2000 };
            match buchberger(&system, &limits) {
                Ok(basis) => {
                    assert_all_spolys_reduce(&basis);
                    for f in &system {
                        assert!(reduce(f, &basis).is_zero());
                    }
                    built += 1;
                }
                Err(MultiPolyError::ResourceExceeded(_)) => continue,
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
    }
}
