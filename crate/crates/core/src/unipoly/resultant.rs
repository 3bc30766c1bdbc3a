//! Bivariate polynomials and discriminants via the Sylvester matrix.
//!
//! The resultant is computed as a fraction-free Bareiss determinant over the
//! polynomial ring: every division along the way is exact, so no
//! rational-function entries are ever formed and intermediate growth stays
//! under control (the Sylvester matrix for the degree-10 eliminant is 19x19
//! with degree-7 entries).

use num_bigint::BigInt;
use num_traits::One;

use super::{UniPoly, UniPolyError};

/// Polynomial in a main variable whose coefficients are [`UniPoly`]s in a
/// second variable. Coefficients ascend in the main-variable degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    main_var: String,
    coef_var: String,
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(main_var: &str, coef_var: &str, mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { main_var: main_var.into(), coef_var: coef_var.into(), coeffs }
    }

    /// Build from sparse terms `(main_exp, coef_exp, coefficient)`.
    pub fn from_terms(main_var: &str, coef_var: &str, terms: &[(usize, usize, BigInt)]) -> Self {
        let main_deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![Vec::new(); main_deg + 1];
        for (me, ce, c) in terms {
            let v = &mut coeffs[*me];
            if v.len() <= *ce {
                v.resize(*ce + 1, BigInt::from(0));
            }
            v[*ce] += c;
        }
        BiPoly::new(main_var, coef_var, coeffs.into_iter().map(UniPoly::new).collect())
    }

    pub fn main_var(&self) -> &str {
        &self.main_var
    }

    pub fn coef_var(&self) -> &str {
        &self.coef_var
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn leading(&self) -> Option<&UniPoly> {
        self.coeffs.last()
    }

    /// Partial derivative in the main variable.
    pub fn derivative_main(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::new(&self.main_var, &self.coef_var, vec![]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigInt::from(i)))
            .collect();
        BiPoly::new(&self.main_var, &self.coef_var, coeffs)
    }

    /// Resultant with respect to the main variable: the Sylvester
    /// determinant, an element of the coefficient ring.
    pub fn resultant_main(&self, other: &BiPoly) -> Result<UniPoly, UniPolyError> {
        let m = self.degree().ok_or(UniPolyError::DivisionByZero)?;
        let n = other.degree().ok_or(UniPolyError::DivisionByZero)?;
        let size = m + n;
        if size == 0 {
            return Ok(UniPoly::constant(BigInt::one()));
        }
        // Sylvester matrix with descending coefficients: n rows of self
        // shifted, then m rows of other shifted.
        let mut rows: Vec<Vec<UniPoly>> = Vec::with_capacity(size);
        for shift in 0..n {
            let mut row = vec![UniPoly::zero(); size];
            for k in 0..=m {
                row[shift + k] = self.coeff(m - k);
            }
            rows.push(row);
        }
        for shift in 0..m {
            let mut row = vec![UniPoly::zero(); size];
            for k in 0..=n {
                row[shift + k] = other.coeff(n - k);
            }
            rows.push(row);
        }
        bareiss_determinant(rows)
    }

    /// Discriminant with respect to the main variable:
    /// `(-1)^(d(d-1)/2) * Res(P, dP/dz) / lc(P)`.
    pub fn discriminant_main(&self) -> Result<UniPoly, UniPolyError> {
        let d = self.degree().ok_or(UniPolyError::DivisionByZero)?;
        assert!(d >= 2, "discriminant needs main degree >= 2");
        let res = self.resultant_main(&self.derivative_main())?;
        let quot = res.divide_exact(self.leading().unwrap())?;
        if (d * (d - 1) / 2) % 2 == 1 {
            Ok(quot.neg())
        } else {
            Ok(quot)
        }
    }
}

/// Fraction-free determinant of a square matrix of integer polynomials.
/// Row pivoting only (tracking the sign); every division is exact by the
/// Bareiss minor identity.
fn bareiss_determinant(mut a: Vec<Vec<UniPoly>>) -> Result<UniPoly, UniPolyError> {
    let n = a.len();
    if n == 0 {
        return Ok(UniPoly::constant(BigInt::one()));
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(BigInt::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..n {
                let t = pivot.mul(&a[i][j]).sub(&aik.mul(&a[k][j]));
                a[i][j] = t.divide_exact(&prev)?;
            }
            a[i][k] = UniPoly::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn bi(main: &str, coef: &str, terms: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_terms(
            main,
            coef,
            &terms.iter().map(|&(a, b, c)| (a, b, BigInt::from(c))).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn quadratic_discriminant() {
        // z^2 + g z + 1 -> g^2 - 4
        let p = bi("z", "g", &[(2, 0, 1), (1, 1, 1), (0, 0, 1)]);
        assert_eq!(p.discriminant_main().unwrap(), UniPoly::from_i64(&[-4, 0, 1]));
        // z^2 - g -> 4g
        let q = bi("z", "g", &[(2, 0, 1), (0, 1, -1)]);
        assert_eq!(q.discriminant_main().unwrap(), UniPoly::from_i64(&[0, 4]));
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        // p = (z - g)(z - 1), q = (z - g)(z + 2) share the root z = g
        let p = bi("z", "g", &[(2, 0, 1), (1, 1, -1), (1, 0, -1), (0, 1, 1)]);
        let q = bi("z", "g", &[(2, 0, 1), (1, 1, -1), (1, 0, 2), (0, 1, -2)]);
        assert!(p.resultant_main(&q).unwrap().is_zero());
        // p = z - g, r = z - g - 1 never share a root
        let a = bi("z", "g", &[(1, 0, 1), (0, 1, -1)]);
        let b = bi("z", "g", &[(1, 0, 1), (0, 1, -1), (0, 0, -1)]);
        let res = a.resultant_main(&b).unwrap();
        assert_eq!(res.degree(), Some(0));
        assert!(!res.is_zero());
    }

    #[test]
    fn bareiss_matches_naive_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<UniPoly>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let d = rng.gen_range(0..=2);
                            UniPoly::new(
                                (0..=d).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect(),
                            )
                        })
                        .collect()
                })
                .collect();
            let det = bareiss_determinant(m.clone()).unwrap();
            let naive = naive_determinant(&m);
            assert_eq!(det, naive);
        }
    }

    fn naive_determinant(m: &[Vec<UniPoly>]) -> UniPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = UniPoly::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UniPoly>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                .collect();
            let term = m[0][j].mul(&naive_determinant(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn resultant_zero_iff_nonconstant_gcd_univariate() {
        // univariate special case through BiPoly with constant coefficients:
        // res(x^2-1, x-1) = 0, res(x^2-1, x-2) = 3
        let p = bi("x", "t", &[(2, 0, 1), (0, 0, -1)]);
        let q1 = bi("x", "t", &[(1, 0, 1), (0, 0, -1)]);
        let q2 = bi("x", "t", &[(1, 0, 1), (0, 0, -2)]);
        assert!(p.resultant_main(&q1).unwrap().is_zero());
        let r = p.resultant_main(&q2).unwrap();
        assert_eq!(r.eval_rational(&num_traits::Zero::zero()), Rational::from_integer(3.into()));
    }
}
