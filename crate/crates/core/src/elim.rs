//! Gaussian elimination with complete pivoting: traces, pivots, growth,
//! CP verification and normalization, in exact-rational and interval modes.
//!
//! `eliminate` never permutes; callers supply already-pivoted matrices. A
//! separate helper applies complete-pivoting permutations to arbitrary input
//! for the CLI.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numerics::{Interval, IvCtx, MagCmp, NumericsError, Rational, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error("zero pivot at elimination step {0}")]
    SingularPivot(usize),
    #[error("pivot interval at step {0} contains zero")]
    PossiblySingularPivot(usize),
    #[error("matrix is not completely pivoted")]
    NotCompletelyPivoted,
    #[error("zero matrix cannot be normalized")]
    ZeroMatrix,
    #[error("entry (1,1) is not of maximal magnitude")]
    FirstEntryNotMaximal,
    #[error("matrix parse error: {0}")]
    Parse(String),
}

impl From<NumericsError> for ElimError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::DivisionByIntervalContainingZero => ElimError::PossiblySingularPivot(0),
            other => ElimError::Parse(other.to_string()),
        }
    }
}

/// Dense square matrix, row major. One scalar mode per matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

pub type RatMatrix = SquareMatrix<Rational>;
pub type IvMatrix = SquareMatrix<Interval>;

impl<T: Clone> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(n >= 1, "matrices must have n >= 1");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SquareMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix { n: self.n, entries: self.entries.iter().map(|e| f(e)).collect() }
    }
}

/// Pivots and Schur complements of one run: `schur[k-1]` is A^(k), and
/// `pivots[k-1]` is |A^(k) top-left entry|.
#[derive(Debug, Clone)]
pub struct EliminationTrace<T> {
    pub pivots: Vec<T>,
    pub schur: Vec<SquareMatrix<T>>,
}

// ---------------------------------------------------------------- rational

/// One Schur complement step: `B - x y^T / alpha` on the trailing submatrix.
fn schur_step_rational(a: &RatMatrix) -> RatMatrix {
    let n = a.n();
    let piv = a.get(0, 0);
    SquareMatrix::from_fn(n - 1, |i, j| {
        a.get(i + 1, j + 1) - a.get(i + 1, 0) * a.get(0, j + 1) / piv
    })
}

pub fn eliminate_rational(a: &RatMatrix) -> Result<EliminationTrace<Rational>, ElimError> {
    let mut schur = vec![a.clone()];
    let mut pivots = Vec::with_capacity(a.n());
    for k in 0..a.n() {
        let cur = &schur[k];
        let piv = cur.get(0, 0).clone();
        if piv.is_zero() && k + 1 < a.n() {
            return Err(ElimError::SingularPivot(k + 1));
        }
        pivots.push(piv.abs());
        if k + 1 < a.n() {
            let next = schur_step_rational(cur);
            schur.push(next);
        }
    }
    Ok(EliminationTrace { pivots, schur })
}

/// Strict CP verdict in exact arithmetic: every trailing entry must have
/// magnitude at most the pivot's. `slack` loosens each comparison by an
/// additive margin, which is how decimal-rounded published matrices are
/// checked; pass zero for the exact test.
pub fn is_completely_pivoted_rational_slack(a: &RatMatrix, slack: &Rational) -> Verdict {
    let mut cur = a.clone();
    for step in 0..a.n() {
        let piv = cur.get(0, 0).abs();
        let bound = &piv + slack;
        let mut all_zero = true;
        for i in 0..cur.n() {
            for j in 0..cur.n() {
                if !cur.get(i, j).is_zero() {
                    all_zero = false;
                }
                if cur.get(i, j).abs() > bound {
                    return Verdict::CertainlyNo;
                }
            }
        }
        if step + 1 == a.n() {
            break;
        }
        if piv.is_zero() {
            // no violation possible further down only if everything is zero
            return if all_zero { Verdict::CertainlyYes } else { Verdict::CertainlyNo };
        }
        cur = schur_step_rational(&cur);
    }
    Verdict::CertainlyYes
}

pub fn is_completely_pivoted_rational(a: &RatMatrix) -> Verdict {
    is_completely_pivoted_rational_slack(a, &Rational::zero())
}

/// max_k p_k / p_1 of a CP matrix. Errors if the CP check fails.
pub fn growth_rational(a: &RatMatrix) -> Result<Rational, ElimError> {
    if is_completely_pivoted_rational(a) == Verdict::CertainlyNo {
        return Err(ElimError::NotCompletelyPivoted);
    }
    let tr = eliminate_rational(a)?;
    let p1 = tr.pivots[0].clone();
    if p1.is_zero() {
        return Err(ElimError::ZeroMatrix);
    }
    Ok(tr.pivots.iter().max().unwrap() / &p1)
}

/// p_n / p_1, the quantity the maximization pipelines drive.
pub fn last_pivot_growth_rational(a: &RatMatrix) -> Result<Rational, ElimError> {
    if is_completely_pivoted_rational(a) == Verdict::CertainlyNo {
        return Err(ElimError::NotCompletelyPivoted);
    }
    let tr = eliminate_rational(a)?;
    let p1 = tr.pivots[0].clone();
    if p1.is_zero() {
        return Err(ElimError::ZeroMatrix);
    }
    Ok(tr.pivots.last().unwrap() / &p1)
}

/// Scale to `||A||_max = 1`, `A_11 = 1`, then flip row/column signs to make
/// the first row and column nonnegative. Growth and pivot magnitudes (up to
/// the global scale) are unchanged.
pub fn normalize_rational(a: &RatMatrix) -> Result<RatMatrix, ElimError> {
    let a11 = a.get(0, 0).clone();
    if a.entries().iter().all(|e| e.is_zero()) {
        return Err(ElimError::ZeroMatrix);
    }
    if a11.is_zero() {
        return Err(ElimError::FirstEntryNotMaximal);
    }
    let maxmag = a.entries().iter().map(|e| e.abs()).max().unwrap();
    if a11.abs() != maxmag {
        return Err(ElimError::FirstEntryNotMaximal);
    }
    let mut m = a.map(|e| e / &a11);
    for i in 1..m.n() {
        if m.get(i, 0).is_negative() {
            for j in 0..m.n() {
                let v = -m.get(i, j).clone();
                m.set(i, j, v);
            }
        }
    }
    for j in 1..m.n() {
        if m.get(0, j).is_negative() {
            for i in 0..m.n() {
                let v = -m.get(i, j).clone();
                m.set(i, j, v);
            }
        }
    }
    Ok(m)
}

/// Apply complete-pivoting row/column permutations so the result can be fed
/// to the permutation-free core. Ties pick the smallest row, then column.
pub fn complete_pivot_permute(a: &RatMatrix) -> RatMatrix {
    let n = a.n();
    let mut work = a.clone();
    let mut rowperm: Vec<usize> = (0..n).collect();
    let mut colperm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut best = (k, k);
        let mut bestmag = work.get(k, k).abs();
        for i in k..n {
            for j in k..n {
                let mag = work.get(i, j).abs();
                if mag > bestmag {
                    bestmag = mag;
                    best = (i, j);
                }
            }
        }
        if bestmag.is_zero() {
            break;
        }
        work.swap_rows(k, best.0);
        work.swap_cols(k, best.1);
        rowperm.swap(k, best.0);
        colperm.swap(k, best.1);
        // eliminate below/right of the pivot, leaving rows 0..=k frozen
        let piv = work.get(k, k).clone();
        for i in k + 1..n {
            let factor = work.get(i, k) / &piv;
            for j in k..n {
                let v = work.get(i, j) - &factor * work.get(k, j);
                work.set(i, j, v);
            }
        }
    }
    SquareMatrix::from_fn(n, |i, j| a.get(rowperm[i], colperm[j]).clone())
}

/// Determinantal CP test from the Schur-complement identity: with positive
/// pivots, CP is equivalent to
/// `-det(A_[1:k,1:k]) <= det(A_[1:k-1+i,1:k-1+j]) <= det(A_[1:k,1:k])`.
/// Pivot signs must be positive; see [`sign_adjust_positive_pivots`].
pub fn cp_check_determinantal(a: &RatMatrix) -> bool {
    let n = a.n();
    for k in 1..=n.saturating_sub(1) {
        let dk = det_submatrix(a, &leading(k), &leading(k));
        if dk.is_negative() {
            return false;
        }
        for i in k..=n {
            for j in k..=n {
                let mut rows = leading(k - 1);
                rows.push(i - 1);
                let mut cols = leading(k - 1);
                cols.push(j - 1);
                let d = det_submatrix(a, &rows, &cols);
                if d.abs() > dk {
                    return false;
                }
            }
        }
    }
    true
}

fn leading(k: usize) -> Vec<usize> {
    (0..k).collect()
}

/// Exact determinant of the submatrix with the given row/column index lists.
fn det_submatrix(a: &RatMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    let m = rows.len();
    if m == 0 {
        return Rational::one();
    }
    let mut w: Vec<Vec<Rational>> =
        rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
    let mut det = Rational::one();
    for k in 0..m {
        let mut piv = k;
        while piv < m && w[piv][k].is_zero() {
            piv += 1;
        }
        if piv == m {
            return Rational::zero();
        }
        if piv != k {
            w.swap(piv, k);
            det = -det;
        }
        det *= &w[k][k];
        for i in k + 1..m {
            let f = &w[i][k] / &w[k][k];
            for j in k..m {
                let v = &w[i][j] - &f * &w[k][j];
                w[i][j] = v;
            }
        }
    }
    det
}

/// Flip rows so every pivot of the (assumed CP) matrix becomes positive.
/// Flipping row k flips pivot k and leaves earlier pivots alone; entry
/// magnitudes in every Schur complement are unchanged.
pub fn sign_adjust_positive_pivots(a: &RatMatrix) -> Result<RatMatrix, ElimError> {
    let mut m = a.clone();
    let n = m.n();
    let mut cur = m.clone();
    for k in 0..n {
        if cur.get(0, 0).is_negative() {
            for j in 0..n {
                let v = -m.get(k, j).clone();
                m.set(k, j, v);
            }
            for j in 0..cur.n() {
                let v = -cur.get(0, j).clone();
                cur.set(0, j, v);
            }
        }
        if k + 1 == n {
            break;
        }
        if cur.get(0, 0).is_zero() {
            break;
        }
        cur = schur_step_rational(&cur);
    }
    Ok(m)
}

// ---------------------------------------------------------------- interval

fn schur_step_interval(a: &IvMatrix, ctx: &IvCtx) -> Result<IvMatrix, NumericsError> {
    let n = a.n();
    let piv = a.get(0, 0);
    let mut rows = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut row = Vec::with_capacity(n - 1);
        for j in 1..n {
            let prod = ctx.mul(a.get(i, 0), a.get(0, j));
            let quot = ctx.div(&prod, piv)?;
            row.push(ctx.sub(a.get(i, j), &quot));
        }
        rows.push(row);
    }
    Ok(SquareMatrix::from_rows(rows))
}

pub fn eliminate_interval(
    a: &IvMatrix,
    ctx: &IvCtx,
) -> Result<EliminationTrace<Interval>, ElimError> {
    let mut schur = vec![a.clone()];
    let mut pivots = Vec::with_capacity(a.n());
    for k in 0..a.n() {
        let cur = &schur[k];
        let piv = cur.get(0, 0).clone();
        if piv.contains_zero() && k + 1 < a.n() {
            return Err(ElimError::PossiblySingularPivot(k + 1));
        }
        pivots.push(piv.abs());
        if k + 1 < a.n() {
            let next = schur_step_interval(cur, ctx)
                .map_err(|_| ElimError::PossiblySingularPivot(k + 1))?;
            schur.push(next);
        }
    }
    Ok(EliminationTrace { pivots, schur })
}

/// Interval-mode CP verdict. Unknown results are surfaced, never coerced:
/// a comparison that cannot be proven either way (in particular any exact
/// tie evaluated through intervals of nonzero width) yields `Unknown`.
pub fn is_completely_pivoted_interval(a: &IvMatrix, ctx: &IvCtx) -> Verdict {
    let mut cur = a.clone();
    let mut unknown = false;
    for step in 0..a.n() {
        let piv = cur.get(0, 0).clone();
        for i in 0..cur.n() {
            for j in 0..cur.n() {
                if i == 0 && j == 0 {
                    continue;
                }
                match cur.get(i, j).compare_magnitude(&piv) {
                    MagCmp::CertainlyLe => {}
                    MagCmp::CertainlyGt => return Verdict::CertainlyNo,
                    MagCmp::Unknown => unknown = true,
                }
            }
        }
        if step + 1 == a.n() {
            break;
        }
        if piv.contains_zero() {
            return Verdict::Unknown;
        }
        match schur_step_interval(&cur, ctx) {
            Ok(next) => cur = next,
            Err(_) => return Verdict::Unknown,
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::CertainlyYes
    }
}

/// Interval growth enclosure: max_k p_k / p_1.
pub fn growth_interval(a: &IvMatrix, ctx: &IvCtx) -> Result<Interval, ElimError> {
    if is_completely_pivoted_interval(a, ctx) == Verdict::CertainlyNo {
        return Err(ElimError::NotCompletelyPivoted);
    }
    let tr = eliminate_interval(a, ctx)?;
    let p1 = &tr.pivots[0];
    let mut best: Option<Interval> = None;
    for p in &tr.pivots {
        let g = ctx.div(p, p1)?;
        best = Some(match best {
            None => g,
            Some(b) => Interval::new(
                crate::numerics::Dyadic::max(b.lo(), g.lo()),
                crate::numerics::Dyadic::max(b.hi(), g.hi()),
            ),
        });
    }
    Ok(best.unwrap())
}

pub fn last_pivot_growth_interval(a: &IvMatrix, ctx: &IvCtx) -> Result<Interval, ElimError> {
    let tr = eliminate_interval(a, ctx)?;
    Ok(ctx.div(tr.pivots.last().unwrap(), &tr.pivots[0])?)
}

// ---------------------------------------------------------------- file io

/// Plain-text matrix format: first line `n`, then n rows of n entries, each
/// a decimal literal or `p/q`.
pub fn parse_matrix(text: &str) -> Result<RatMatrix, ElimError> {
    let mut lines =
        text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| ElimError::Parse("empty matrix file".into()))?
        .trim()
        .parse()
        .map_err(|_| ElimError::Parse("first line must be the dimension".into()))?;
    if n == 0 {
        return Err(ElimError::Parse("dimension must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.next().ok_or_else(|| ElimError::Parse("missing matrix row".into()))?;
        let row: Result<Vec<Rational>, _> = line
            .split_whitespace()
            .map(|t| {
                crate::numerics::parse_decimal_or_rational(t)
                    .map_err(|e| ElimError::Parse(e.to_string()))
            })
            .collect();
        let row = row?;
        if row.len() != n {
            return Err(ElimError::Parse(format!(
                "expected {n} entries per row, got {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(SquareMatrix::from_rows(rows))
}

pub fn format_matrix(a: &RatMatrix) -> String {
    let mut s = format!("{}\n", a.n());
    for i in 0..a.n() {
        let row: Vec<String> =
            (0..a.n()).map(|j| crate::numerics::format_rational(a.get(i, j))).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Point-interval image of a rational matrix, optionally widened by `eps`
/// on each entry (for decimal-rounded data).
pub fn to_interval_matrix(a: &RatMatrix, eps: &Rational, ctx: &IvCtx) -> IvMatrix {
    a.map(|e| ctx.from_rational_bounds(&(e - eps), &(e + eps)))
}

/// Sylvester's Hadamard matrix of size 2^k (entries are +-1).
pub fn sylvester_hadamard(k: u32) -> RatMatrix {
    let n = 1usize << k;
    SquareMatrix::from_fn(n, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_decimal_or_rational as q;

    fn m(rows: &[&[&str]]) -> RatMatrix {
        SquareMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| q(s).unwrap()).collect()).collect(),
        )
    }

    fn extremal() -> RatMatrix {
        m(&[&["1", "1", "1/2"], &["1", "-1/2", "-1"], &["1/2", "-1", "1"]])
    }

    #[test]
    fn identity_pivots_all_one() {
        let id = SquareMatrix::from_fn(
            5,
            |i, j| if i == j { Rational::one() } else { Rational::zero() },
        );
        let tr = eliminate_rational(&id).unwrap();
        assert!(tr.pivots.iter().all(|p| p.is_one()));
        assert_eq!(is_completely_pivoted_rational(&id), Verdict::CertainlyYes);
        assert_eq!(growth_rational(&id).unwrap(), Rational::one());
    }

    #[test]
    fn extremal_3x3_growth() {
        let a = extremal();
        let tr = eliminate_rational(&a).unwrap();
        assert_eq!(tr.pivots[2], q("2.25").unwrap());
        assert_eq!(growth_rational(&a).unwrap(), q("2.25").unwrap());
        assert_eq!(is_completely_pivoted_rational(&a), Verdict::CertainlyYes);
    }

    #[test]
    fn swapped_identity_is_not_cp() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(is_completely_pivoted_rational(&a), Verdict::CertainlyNo);
        assert!(growth_rational(&a).is_err());
    }

    #[test]
    fn hadamard8_growth_is_8() {
        let h = sylvester_hadamard(3);
        assert_eq!(is_completely_pivoted_rational(&h), Verdict::CertainlyYes);
        assert_eq!(growth_rational(&h).unwrap(), Rational::from_integer(8.into()));
        let tr = eliminate_rational(&h).unwrap();
        assert_eq!(tr.pivots[7], Rational::from_integer(8.into()));
    }

    #[test]
    fn one_by_one_growth() {
        let a = m(&[&["-3"]]);
        assert_eq!(growth_rational(&a).unwrap(), Rational::one());
    }

    #[test]
    fn schur_recurrence_identity() {
        let a = extremal();
        let tr = eliminate_rational(&a).unwrap();
        for k in 0..a.n() - 1 {
            let cur = &tr.schur[k];
            let next = &tr.schur[k + 1];
            for i in 1..cur.n() {
                for j in 1..cur.n() {
                    let expect = cur.get(i, j) - cur.get(i, 0) * cur.get(0, j) / cur.get(0, 0);
                    assert_eq!(next.get(i - 1, j - 1), &expect);
                }
            }
        }
        // det(A) = product of signed pivots
        let det = det_submatrix(&a, &[0, 1, 2], &[0, 1, 2]);
        let prod: Rational = tr.schur.iter().map(|s| s.get(0, 0).clone()).product();
        assert_eq!(det, prod);
    }

    #[test]
    fn normalize_examples() {
        let two_i3 = SquareMatrix::from_fn(3, |i, j| {
            if i == j {
                Rational::from_integer(2.into())
            } else {
                Rational::zero()
            }
        });
        let id = normalize_rational(&two_i3).unwrap();
        assert!(id.get(0, 0).is_one() && id.get(1, 1).is_one());

        // negate first column of the extremal matrix; normalization restores
        // nonnegativity and pivot magnitudes
        let a = extremal();
        let mut b = a.clone();
        for i in 0..3 {
            let v = -b.get(i, 0).clone();
            b.set(i, 0, v);
        }
        let nb = normalize_rational(&b).unwrap();
        let pa = eliminate_rational(&a).unwrap().pivots;
        let pb = eliminate_rational(&nb).unwrap().pivots;
        assert_eq!(pa, pb);
        assert!(!nb.get(1, 0).is_negative() && !nb.get(2, 0).is_negative());
    }

    #[test]
    fn determinantal_cp_agrees_on_extremal() {
        let a = sign_adjust_positive_pivots(&extremal()).unwrap();
        assert!(cp_check_determinantal(&a));
        let bad = m(&[&["0", "1"], &["1", "0"]]);
        assert!(!cp_check_determinantal(&bad));
    }

    #[test]
    fn complete_pivot_permutation() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        let p = complete_pivot_permute(&a);
        assert_eq!(is_completely_pivoted_rational(&p), Verdict::CertainlyYes);
        let b = m(&[&["1", "2", "0"], &["0", "1", "1"], &["3", "0", "1"]]);
        let pb = complete_pivot_permute(&b);
        assert_ne!(is_completely_pivoted_rational(&pb), Verdict::CertainlyNo);
        assert_eq!(pb.get(0, 0).abs(), Rational::from_integer(3.into()));
    }

    #[test]
    fn interval_elimination_encloses_rational() {
        let a = extremal();
        let ctx = IvCtx::default();
        let ia = to_interval_matrix(&a, &Rational::zero(), &ctx);
        let itr = eliminate_interval(&ia, &ctx).unwrap();
        let rtr = eliminate_rational(&a).unwrap();
        for k in 0..3 {
            assert!(itr.pivots[k].contains_rational(&rtr.pivots[k]));
        }
        let g = growth_interval(&ia, &ctx).unwrap();
        assert!(g.contains_rational(&q("2.25").unwrap()));
    }

    #[test]
    fn interval_cp_surfaces_unknown_on_widened_ties() {
        let a = extremal();
        let ctx = IvCtx::default();
        let ia = to_interval_matrix(&a, &q("0.000001").unwrap(), &ctx);
        // the extremal matrix has exact CP ties, so a widened check must not
        // claim certainty in either direction
        assert_eq!(is_completely_pivoted_interval(&ia, &ctx), Verdict::Unknown);
    }

    #[test]
    fn matrix_io_round_trip() {
        let a = extremal();
        let t = format_matrix(&a);
        assert_eq!(parse_matrix(&t).unwrap(), a);
        assert!(parse_matrix("garbage").is_err());
        assert!(parse_matrix("2\n1 2\n3").is_err());
    }

    #[test]
    fn slack_check_tolerates_rounding() {
        // entry exceeds the pivot by 1e-7; strict fails, slack 1e-6 passes
        let a = m(&[&["1", "1.0000001"], &["0", "1"]]);
        assert_eq!(is_completely_pivoted_rational(&a), Verdict::CertainlyNo);
        assert_eq!(
            is_completely_pivoted_rational_slack(&a, &q("0.000001").unwrap()),
            Verdict::CertainlyYes
        );
    }
}
