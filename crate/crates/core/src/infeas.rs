//! Rank-2 infeasibility certification over cover boxes and the case-split
//! upper-bound pipeline.
//!
//! `calc_range` lower-bounds `min ||p3 C - u v^T - p2 x y^T||_max` over a
//! cover box (C ranges over the box; u, v, x, y over the unit cube) by
//! branch-and-bound on the twelve (u, v, x, y) coordinates with interval
//! evaluation of the nine residual entries. A lower bound above 1 certifies
//! that no completely pivoted 5x5 matrix can reach that box with the stated
//! pivots. The subdivision tree is recorded so a verifier can replay every
//! leaf without re-running the search.

use num_traits::One;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cover::{build_cover, CoverError, CoverSet, DyadicBox, PruneHook, TestConfig};
use crate::numerics::{format_rational, parse_rational, Dyadic, Interval, IvCtx, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfeasError {
    #[error("subdivision budget exhausted after {leaves} leaves")]
    BudgetExceeded { leaves: u64 },
    #[error("certificate parse error: {0}")]
    Parse(String),
    #[error("certificate replay failed: {0}")]
    Replay(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// One rank-2 infeasibility query.
#[derive(Debug, Clone)]
pub struct RankTwoQuery {
    pub bx: DyadicBox,
    /// Third pivot of the outer elimination (exact, the case lower bound).
    pub p3: Rational,
    /// Enclosure of `3/2 + sqrt(9/4 - p3)`; the second pivot is carried as
    /// an interval since it is irrational.
    pub p2: Interval,
    /// Maximum number of leaves before giving up.
    pub budget: u64,
}

/// Enclosure of `3/2 + sqrt(9/4 - p3)` at the context precision.
pub fn p2_bracket_high(p3: &Rational, ctx: &IvCtx) -> Interval {
    let nine_fourth = Rational::new(9.into(), 4.into());
    let rad = ctx.from_rational(&(nine_fourth - p3));
    let sq = ctx.sqrt(&rad).expect("9/4 - p3 must be nonnegative");
    let three_half = ctx.from_rational(&Rational::new(3.into(), 2.into()));
    ctx.add(&three_half, &sq)
}

/// Preorder subdivision-tree bits: 1 = internal node, 0 = certified leaf.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeBits {
    bits: Vec<bool>,
}

impl TreeBits {
    fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    pub fn leaves(&self) -> u64 {
        self.bits.iter().filter(|b| !**b).count() as u64
    }

    pub fn to_hex(&self) -> String {
        let mut bytes = vec![0u8; (self.bits.len() + 7) / 8];
        for (i, b) in self.bits.iter().enumerate() {
            if *b {
                bytes[i / 8] |= 1 << (7 - i % 8);
            }
        }
        format!("{}:{}", self.bits.len(), bytes.iter().map(|x| format!("{x:02x}")).collect::<String>())
    }

    pub fn from_hex(s: &str) -> Result<TreeBits, InfeasError> {
        let (n, hexpart) =
            s.split_once(':').ok_or_else(|| InfeasError::Parse("bad tree encoding".into()))?;
        let n: usize = n.parse().map_err(|_| InfeasError::Parse("bad tree bit count".into()))?;
        if hexpart.len() % 2 != 0 || hexpart.len() * 4 < n {
            return Err(InfeasError::Parse("bad tree encoding length".into()));
        }
        let mut bytes = Vec::with_capacity(hexpart.len() / 2);
        for i in (0..hexpart.len()).step_by(2) {
            bytes.push(
                u8::from_str_radix(&hexpart[i..i + 2], 16)
                    .map_err(|_| InfeasError::Parse("bad tree hex".into()))?,
            );
        }
        let bits = (0..n).map(|i| bytes[i / 8] & (1 << (7 - i % 8)) != 0).collect();
        Ok(TreeBits { bits })
    }
}

#[derive(Debug, Clone)]
pub struct CalcRangeResult {
    /// min over leaves of the per-leaf lower bound; certification means
    /// this exceeds 1.
    pub lower_bound: Dyadic,
    pub leaves: u64,
    pub tree: TreeBits,
}

const DIM: usize = 12;

#[derive(Clone)]
struct SearchState {
    coords: [Interval; DIM],
    uv: [[Interval; 3]; 3],
    w: [[Interval; 3]; 3],
    p2x: [Interval; 3],
    lbs: [[Dyadic; 3]; 3],
}

struct QueryCtx {
    a: [[Interval; 3]; 3],
    p2: Interval,
    ctx: IvCtx,
    one: Dyadic,
}

impl SearchState {
    fn initial(q: &QueryCtx) -> SearchState {
        let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1));
        let nonneg = Interval::new(Dyadic::zero(), Dyadic::from_i64(1));
        // u and x have their first coordinate restricted to [0,1] by the
        // (u,v) -> (-u,-v) and (x,y) -> (-x,-y) symmetries
        let coords: [Interval; DIM] = [
            nonneg.clone(),
            unit.clone(),
            unit.clone(),
            unit.clone(),
            unit.clone(),
            unit.clone(),
            nonneg,
            unit.clone(),
            unit.clone(),
            unit.clone(),
            unit.clone(),
            unit,
        ];
        let mut st = SearchState {
            coords,
            uv: Default::default(),
            w: Default::default(),
            p2x: Default::default(),
            lbs: Default::default(),
        };
        for i in 0..3 {
            st.refresh_p2x(q, i);
        }
        for i in 0..3 {
            for j in 0..3 {
                st.refresh_uv(q, i, j);
                st.refresh_w(q, i, j);
                st.refresh_lb(q, i, j);
            }
        }
        st
    }

    fn u(&self, i: usize) -> &Interval {
        &self.coords[i]
    }
    fn v(&self, j: usize) -> &Interval {
        &self.coords[3 + j]
    }
    fn x(&self, i: usize) -> &Interval {
        &self.coords[6 + i]
    }
    fn y(&self, j: usize) -> &Interval {
        &self.coords[9 + j]
    }

    fn refresh_uv(&mut self, q: &QueryCtx, i: usize, j: usize) {
        self.uv[i][j] = q.ctx.mul(self.u(i), self.v(j));
    }

    fn refresh_p2x(&mut self, q: &QueryCtx, i: usize) {
        self.p2x[i] = q.ctx.mul(&q.p2, self.x(i));
    }

    fn refresh_w(&mut self, q: &QueryCtx, i: usize, j: usize) {
        self.w[i][j] = q.ctx.mul(&self.p2x[i], self.y(j));
    }

    fn refresh_lb(&mut self, q: &QueryCtx, i: usize, j: usize) {
        let r = q.ctx.sub(&q.ctx.sub(&q.a[i][j], &self.uv[i][j]), &self.w[i][j]);
        self.lbs[i][j] = r.mag_min();
    }

    /// Lower bound on max_ij |r_ij| over this subbox.
    fn node_lb(&self) -> &Dyadic {
        let mut best = &self.lbs[0][0];
        for i in 0..3 {
            for j in 0..3 {
                if self.lbs[i][j].cmp_value(best) == std::cmp::Ordering::Greater {
                    best = &self.lbs[i][j];
                }
            }
        }
        best
    }

    /// Re-derive the caches touched by a change of coordinate `c`.
    fn touch(&mut self, q: &QueryCtx, c: usize) {
        match c {
            0..=2 => {
                let i = c;
                for j in 0..3 {
                    self.refresh_uv(q, i, j);
                    self.refresh_lb(q, i, j);
                }
            }
            3..=5 => {
                let j = c - 3;
                for i in 0..3 {
                    self.refresh_uv(q, i, j);
                    self.refresh_lb(q, i, j);
                }
            }
            6..=8 => {
                let i = c - 6;
                self.refresh_p2x(q, i);
                for j in 0..3 {
                    self.refresh_w(q, i, j);
                    self.refresh_lb(q, i, j);
                }
            }
            _ => {
                let j = c - 9;
                for i in 0..3 {
                    self.refresh_w(q, i, j);
                    self.refresh_lb(q, i, j);
                }
            }
        }
    }

    /// Widest coordinate (exact dyadic widths, ties to the lowest index).
    fn widest(&self) -> usize {
        let mut best = 0;
        let mut best_w = self.coords[0].hi().sub_exact(self.coords[0].lo());
        for c in 1..DIM {
            let w = self.coords[c].hi().sub_exact(self.coords[c].lo());
            if w.cmp_value(&best_w) == std::cmp::Ordering::Greater {
                best = c;
                best_w = w;
            }
        }
        best
    }
}

fn split_children(q: &QueryCtx, st: &SearchState) -> (SearchState, SearchState) {
    let c = st.widest();
    let mid = st.coords[c].midpoint();
    let mut lo = st.clone();
    lo.coords[c] = Interval::new(st.coords[c].lo().clone(), mid.clone());
    lo.touch(q, c);
    let mut hi = st.clone();
    hi.coords[c] = Interval::new(mid, st.coords[c].hi().clone());
    hi.touch(q, c);
    (lo, hi)
}

/// Depth-first search with an explicit stack (the tree near a feasible
/// witness can get arbitrarily deep). `budget` caps the number of
/// subdivisions.
fn dfs(
    q: &QueryCtx,
    root: SearchState,
    budget: u64,
) -> Result<(Dyadic, u64, TreeBits), InfeasError> {
    let mut stack = vec![root];
    let mut splits = 0u64;
    let mut leaves = 0u64;
    let mut min_lb: Option<Dyadic> = None;
    let mut tree = TreeBits::default();
    while let Some(st) = stack.pop() {
        let lb = st.node_lb();
        if lb.cmp_value(&q.one) == std::cmp::Ordering::Greater {
            tree.push(false);
            leaves += 1;
            let better = match &min_lb {
                None => true,
                Some(cur) => lb.cmp_value(cur) == std::cmp::Ordering::Less,
            };
            if better {
                min_lb = Some(lb.clone());
            }
            continue;
        }
        if splits >= budget {
            return Err(InfeasError::BudgetExceeded { leaves });
        }
        splits += 1;
        tree.push(true);
        let (lo, hi) = split_children(q, &st);
        stack.push(hi);
        stack.push(lo);
    }
    Ok((min_lb.expect("at least one leaf"), leaves, tree))
}

fn query_ctx(query: &RankTwoQuery, prec: u32) -> QueryCtx {
    let ctx = IvCtx::new(prec);
    let p3iv = ctx.from_rational(&query.p3);
    let m = query.bx.matrix();
    let mut a: [[Interval; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = ctx.mul(&p3iv, m.get(i, j));
        }
    }
    QueryCtx { a, p2: query.p2.clone(), ctx, one: Dyadic::one() }
}

/// Rigorous lower bound for the rank-2 residual over the box. An `Ok`
/// result always has `lower_bound > 1` (the search only terminates by
/// certifying every leaf); exhausting the budget is an error and the
/// caller must treat the box as Unknown, never as certified.
pub fn calc_range(query: &RankTwoQuery) -> Result<CalcRangeResult, InfeasError> {
    let q = query_ctx(query, 64);
    let st = SearchState::initial(&q);
    let (lower_bound, leaves, tree) = dfs(&q, st, query.budget)?;
    Ok(CalcRangeResult { lower_bound, leaves, tree })
}

/// Replay a recorded subdivision tree: rebuild each node with the same
/// deterministic split rule, re-evaluate every leaf, and require the same
/// certification. Returns the recomputed minimum leaf bound.
pub fn replay_tree(query: &RankTwoQuery, tree: &TreeBits) -> Result<Dyadic, InfeasError> {
    let q = query_ctx(query, 64);
    let mut stack = vec![SearchState::initial(&q)];
    let mut min_lb: Option<Dyadic> = None;
    let mut pos = 0usize;
    while let Some(st) = stack.pop() {
        let bit = *tree
            .bits
            .get(pos)
            .ok_or_else(|| InfeasError::Replay("tree bits exhausted early".into()))?;
        pos += 1;
        if !bit {
            let lb = st.node_lb();
            if lb.cmp_value(&q.one) != std::cmp::Ordering::Greater {
                return Err(InfeasError::Replay(
                    "a recorded leaf does not certify on re-evaluation".into(),
                ));
            }
            let better = match &min_lb {
                None => true,
                Some(cur) => lb.cmp_value(cur) == std::cmp::Ordering::Less,
            };
            if better {
                min_lb = Some(lb.clone());
            }
            continue;
        }
        let (lo, hi) = split_children(&q, &st);
        stack.push(hi);
        stack.push(lo);
    }
    if pos != tree.bits.len() {
        return Err(InfeasError::Replay("trailing tree bits".into()));
    }
    min_lb.ok_or_else(|| InfeasError::Replay("tree has no leaves".into()))
}

/// Per-box verdict of a cover certification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxVerdict {
    Certified { leaves: u64, lower_bound: Dyadic, tree: TreeBits },
    Unknown { leaves: u64 },
}

impl BoxVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, BoxVerdict::Certified { .. })
    }
}

/// Run `calc_range` over every box of a cover (boxes in parallel, each box
/// deterministic and single-threaded).
pub fn certify_cover(
    cover: &CoverSet,
    p3: &Rational,
    p2: &Interval,
    budget_per_box: u64,
) -> Vec<(DyadicBox, BoxVerdict)> {
    cover
        .boxes
        .par_iter()
        .map(|b| {
            let q = RankTwoQuery {
                bx: b.clone(),
                p3: p3.clone(),
                p2: p2.clone(),
                budget: budget_per_box,
            };
            let verdict = match calc_range(&q) {
                Ok(res) => BoxVerdict::Certified {
                    leaves: res.leaves,
                    lower_bound: res.lower_bound,
                    tree: res.tree,
                },
                Err(InfeasError::BudgetExceeded { leaves }) => BoxVerdict::Unknown { leaves },
                Err(_) => BoxVerdict::Unknown { leaves: 0 },
            };
            (b.clone(), verdict)
        })
        .collect()
}

/// Upper-bound certificate for the two-case split.
#[derive(Debug, Clone)]
pub struct UpperBoundCertificate {
    pub g1: Rational,
    pub g2: Rational,
    pub level: u8,
    pub budget: u64,
    pub prec: u32,
    /// Case A: p3 in [g1, 9/4] forces p3' < g2; certified over the cover
    /// of threshold g2 at parameters (p3 = g1, p2 = bracket(g1)).
    pub p2_case_a: Interval,
    pub cover_a_hash: String,
    pub case_a: Vec<(DyadicBox, BoxVerdict)>,
    /// Case B: p3 in [g2, g1] forces p3' < g1; certified over the cover of
    /// threshold g1 at parameters (p3 = g2, p2 = bracket(g2)).
    pub p2_case_b: Interval,
    pub cover_b_hash: String,
    pub case_b: Vec<(DyadicBox, BoxVerdict)>,
    pub bound: Rational,
    pub complete: bool,
}

/// Exact case-split arithmetic. Both cases certified give
/// `max(9/4 g2, g1^2)`; only case A gives `9/4 g1`; anything else falls
/// back to the unconditional `(9/4)^2`.
pub fn bound_from_cases(g1: &Rational, g2: &Rational, a_ok: bool, b_ok: bool) -> Rational {
    let nine_fourth = Rational::new(9.into(), 4.into());
    if a_ok && b_ok {
        let ca = &nine_fourth * g2;
        let cb = g1 * g1;
        if ca > cb {
            ca
        } else {
            cb
        }
    } else if a_ok {
        &nine_fourth * g1
    } else {
        &nine_fourth * &nine_fourth
    }
}

/// Build the two covers and certify both cases of the split.
pub fn theorem_pipeline(
    g1: &Rational,
    g2: &Rational,
    level: u8,
    budget_per_box: u64,
    cfg: &TestConfig,
    hook: PruneHook,
) -> Result<(UpperBoundCertificate, CoverSet, CoverSet), InfeasError> {
    let nine_fourth = Rational::new(9.into(), 4.into());
    assert!(
        *g2 > Rational::from_integer(2.into()) && g2 < g1 && *g1 <= nine_fourth,
        "need 2 < g2 < g1 <= 9/4"
    );
    let prec = 64u32;
    let ctx = IvCtx::new(prec);
    let cover_g1 = build_cover(g1, level, cfg, hook, u64::MAX)?;
    let cover_g2 = build_cover(g2, level, cfg, hook, u64::MAX)?;
    let p2_case_a = p2_bracket_high(g1, &ctx);
    let p2_case_b = p2_bracket_high(g2, &ctx);
    let case_a = certify_cover(&cover_g2, g1, &p2_case_a, budget_per_box);
    let case_b = certify_cover(&cover_g1, g2, &p2_case_b, budget_per_box);
    let a_ok = case_a.iter().all(|(_, v)| v.is_certified());
    let b_ok = case_b.iter().all(|(_, v)| v.is_certified());
    let cert = UpperBoundCertificate {
        g1: g1.clone(),
        g2: g2.clone(),
        level,
        budget: budget_per_box,
        prec,
        p2_case_a,
        cover_a_hash: cover_g2.content_hash(),
        case_a,
        p2_case_b,
        cover_b_hash: cover_g1.content_hash(),
        case_b,
        bound: bound_from_cases(g1, g2, a_ok, b_ok),
        complete: a_ok && b_ok,
    };
    Ok((cert, cover_g1, cover_g2))
}

// ------------------------------------------------------------ certificate io

impl UpperBoundCertificate {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("rank2-upper-bound-certificate v1\n");
        s.push_str(&format!(
            "params g1 {} g2 {} level {} budget {} prec {}\n",
            format_rational(&self.g1),
            format_rational(&self.g2),
            self.level,
            self.budget,
            self.prec
        ));
        s.push_str(&format!(
            "bound {} complete {}\n",
            format_rational(&self.bound),
            self.complete
        ));
        for (name, p2, hash, list) in [
            ("a", &self.p2_case_a, &self.cover_a_hash, &self.case_a),
            ("b", &self.p2_case_b, &self.cover_b_hash, &self.case_b),
        ] {
            s.push_str(&format!(
                "case {name} p2 {} cover {} boxes {}\n",
                p2.to_text(),
                hash,
                list.len()
            ));
            for (bx, verdict) in list {
                let idx: Vec<String> = bx.idx.iter().map(i32::to_string).collect();
                match verdict {
                    BoxVerdict::Certified { leaves, lower_bound, tree } => {
                        s.push_str(&format!(
                            "box {} certified leaves {} lb {} tree {}\n",
                            idx.join(" "),
                            leaves,
                            lower_bound.to_decimal_string(),
                            tree.to_hex()
                        ));
                    }
                    BoxVerdict::Unknown { leaves } => {
                        s.push_str(&format!("box {} unknown leaves {}\n", idx.join(" "), leaves));
                    }
                }
            }
        }
        s
    }

    pub fn sha256(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_text().as_bytes());
        h.finalize().iter().map(|x| format!("{x:02x}")).collect()
    }

    pub fn from_text(text: &str) -> Result<UpperBoundCertificate, InfeasError> {
        let mut lines = text.lines();
        let magic = lines.next().unwrap_or_default();
        if magic != "rank2-upper-bound-certificate v1" {
            return Err(InfeasError::Parse("bad magic line".into()));
        }
        let params = lines.next().unwrap_or_default();
        let p: Vec<&str> = params.split_whitespace().collect();
        if p.len() != 11 || p[0] != "params" {
            return Err(InfeasError::Parse("bad params line".into()));
        }
        let g1 = parse_rational(p[2]).map_err(|e| InfeasError::Parse(e.to_string()))?;
        let g2 = parse_rational(p[4]).map_err(|e| InfeasError::Parse(e.to_string()))?;
        let level: u8 = p[6].parse().map_err(|_| InfeasError::Parse("bad level".into()))?;
        let budget: u64 = p[8].parse().map_err(|_| InfeasError::Parse("bad budget".into()))?;
        let prec: u32 = p[10].parse().map_err(|_| InfeasError::Parse("bad prec".into()))?;
        let bound_line = lines.next().unwrap_or_default();
        let b: Vec<&str> = bound_line.split_whitespace().collect();
        if b.len() != 4 || b[0] != "bound" {
            return Err(InfeasError::Parse("bad bound line".into()));
        }
        let bound = parse_rational(b[1]).map_err(|e| InfeasError::Parse(e.to_string()))?;
        let complete: bool =
            b[3].parse().map_err(|_| InfeasError::Parse("bad complete flag".into()))?;
        let ctx = IvCtx::new(prec);

        let mut cases: Vec<(Interval, String, Vec<(DyadicBox, BoxVerdict)>)> = Vec::new();
        let mut cur: Option<(Interval, String, Vec<(DyadicBox, BoxVerdict)>)> = None;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "case" => {
                    if let Some(c) = cur.take() {
                        cases.push(c);
                    }
                    if toks.len() != 8 || toks[2] != "p2" || toks[4] != "cover" {
                        return Err(InfeasError::Parse("bad case line".into()));
                    }
                    let p2 = Interval::parse(toks[3], &ctx)
                        .map_err(|e| InfeasError::Parse(e.to_string()))?;
                    cur = Some((p2, toks[5].to_string(), Vec::new()));
                }
                "box" => {
                    let c = cur
                        .as_mut()
                        .ok_or_else(|| InfeasError::Parse("box before any case".into()))?;
                    if toks.len() < 11 {
                        return Err(InfeasError::Parse(format!("short box line `{line}`")));
                    }
                    let idx: Result<Vec<i32>, _> =
                        toks[1..9].iter().map(|t| t.parse::<i32>()).collect();
                    let idx = idx.map_err(|_| InfeasError::Parse("bad box indices".into()))?;
                    let bx = DyadicBox { level, idx: idx.try_into().unwrap() };
                    match toks[9] {
                        "certified" => {
                            if toks.len() != 16
                                || toks[10] != "leaves"
                                || toks[12] != "lb"
                                || toks[14] != "tree"
                            {
                                return Err(InfeasError::Parse(format!(
                                    "bad certified box line `{line}`"
                                )));
                            }
                            let leaves: u64 = toks[11]
                                .parse()
                                .map_err(|_| InfeasError::Parse("bad leaf count".into()))?;
                            let lbq = crate::numerics::parse_decimal_or_rational(toks[13])
                                .map_err(|e| InfeasError::Parse(e.to_string()))?;
                            let lb = Dyadic::from_rational(&lbq, 256, crate::numerics::Rounding::Down);
                            if lb.to_rational() != lbq {
                                return Err(InfeasError::Parse("lb is not dyadic".into()));
                            }
                            let tree = TreeBits::from_hex(toks[15])?;
                            c.2.push((
                                bx,
                                BoxVerdict::Certified { leaves, lower_bound: lb, tree },
                            ));
                        }
                        "unknown" => {
                            let leaves: u64 = toks[11]
                                .parse()
                                .map_err(|_| InfeasError::Parse("bad leaf count".into()))?;
                            c.2.push((bx, BoxVerdict::Unknown { leaves }));
                        }
                        other => {
                            return Err(InfeasError::Parse(format!("bad verdict `{other}`")))
                        }
                    }
                }
                other => return Err(InfeasError::Parse(format!("unexpected line kind `{other}`"))),
            }
        }
        if let Some(c) = cur.take() {
            cases.push(c);
        }
        if cases.len() != 2 {
            return Err(InfeasError::Parse(format!("expected 2 cases, got {}", cases.len())));
        }
        let (p2_case_b, cover_b_hash, case_b) = cases.pop().unwrap();
        let (p2_case_a, cover_a_hash, case_a) = cases.pop().unwrap();
        Ok(UpperBoundCertificate {
            g1,
            g2,
            level,
            budget,
            prec,
            p2_case_a,
            cover_a_hash,
            case_a,
            p2_case_b,
            cover_b_hash,
            case_b,
            bound,
            complete,
        })
    }
}

/// Full certificate replay. Checks, for each case: the recorded p2
/// enclosure is the canonical bracket, every certified box's tree replays
/// with all leaves certifying and the recorded bound, and (when the cover
/// is supplied) that the certified boxes are exactly the cover's boxes.
/// Confirms the case-split arithmetic and the completeness flag.
pub fn verify_certificate(
    cert: &UpperBoundCertificate,
    cover_a: Option<&CoverSet>,
    cover_b: Option<&CoverSet>,
) -> Result<(), InfeasError> {
    let ctx = IvCtx::new(cert.prec);
    let nine_fourth = Rational::new(9.into(), 4.into());
    if !(cert.g2 > Rational::from_integer(2.into()) && cert.g2 < cert.g1 && cert.g1 <= nine_fourth)
    {
        return Err(InfeasError::Replay("parameters out of range".into()));
    }
    // canonical p2 enclosures
    let want_a = p2_bracket_high(&cert.g1, &ctx);
    if cert.p2_case_a != want_a {
        return Err(InfeasError::Replay("case a p2 enclosure is not canonical".into()));
    }
    let want_b = p2_bracket_high(&cert.g2, &ctx);
    if cert.p2_case_b != want_b {
        return Err(InfeasError::Replay("case b p2 enclosure is not canonical".into()));
    }
    for (name, p3, p2, list, cover, want_hash) in [
        ("a", &cert.g1, &cert.p2_case_a, &cert.case_a, cover_a, &cert.cover_a_hash),
        ("b", &cert.g2, &cert.p2_case_b, &cert.case_b, cover_b, &cert.cover_b_hash),
    ] {
        if let Some(cov) = cover {
            if cov.content_hash() != *want_hash {
                return Err(InfeasError::Replay(format!(
                    "case {name}: cover hash does not match the certificate"
                )));
            }
            let cert_boxes: std::collections::BTreeSet<_> =
                list.iter().map(|(b, _)| b.clone()).collect();
            let cover_boxes: std::collections::BTreeSet<_> = cov.boxes.iter().cloned().collect();
            if cert_boxes != cover_boxes {
                return Err(InfeasError::Replay(format!(
                    "case {name}: certificate boxes differ from the cover"
                )));
            }
        }
        for (bx, verdict) in list {
            if let BoxVerdict::Certified { leaves, lower_bound, tree } = verdict {
                if tree.leaves() != *leaves {
                    return Err(InfeasError::Replay("leaf count does not match tree".into()));
                }
                let q = RankTwoQuery {
                    bx: bx.clone(),
                    p3: p3.clone(),
                    p2: p2.clone(),
                    budget: u64::MAX,
                };
                let lb = replay_tree(&q, tree)?;
                if lb != *lower_bound {
                    return Err(InfeasError::Replay(format!(
                        "case {name}: replayed bound {} differs from recorded {}",
                        lb.to_decimal_string(),
                        lower_bound.to_decimal_string()
                    )));
                }
            }
        }
    }
    let a_ok = cert.case_a.iter().all(|(_, v)| v.is_certified());
    let b_ok = cert.case_b.iter().all(|(_, v)| v.is_certified());
    if cert.complete != (a_ok && b_ok) {
        return Err(InfeasError::Replay("completeness flag is wrong".into()));
    }
    let want_bound = bound_from_cases(&cert.g1, &cert.g2, a_ok, b_ok);
    if cert.bound != want_bound {
        return Err(InfeasError::Replay(format!(
            "bound {} does not match the case arithmetic {}",
            format_rational(&cert.bound),
            format_rational(&want_bound)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_decimal_or_rational as q;

    fn unit_box_query(p3: &str, p2: &str, budget: u64) -> RankTwoQuery {
        // a concrete level-4 box near the first extremal matrix
        let bx = extremal_box();
        let ctx = IvCtx::new(64);
        RankTwoQuery {
            bx,
            p3: q(p3).unwrap(),
            p2: ctx.from_rational(&q(p2).unwrap()),
            budget,
        }
    }

    fn extremal_box() -> DyadicBox {
        let m = crate::elim::parse_matrix(&crate::data::bundled_text("extremal_3x3_a.mat").unwrap())
            .unwrap();
        let level = 4u8;
        let scale = Rational::new(num_bigint::BigInt::from(16), 1.into());
        let mut idx = [0i32; 8];
        for (pos, &(i, j)) in crate::cover::FREE_ENTRIES.iter().enumerate() {
            let v = m.get(i, j) * &scale;
            let fl = v.floor().to_integer();
            let mut k = i32::try_from(&fl).unwrap();
            if k == 16 {
                k = 15;
            }
            idx[pos] = k;
        }
        DyadicBox { level, idx }
    }

    #[test]
    fn immediate_certification_when_entry_is_out_of_reach() {
        // p3 C11 ~ 2.15, rank-2 reach is 1 + p2: with p2 = 0.1 the first
        // entry alone exceeds 1 everywhere
        let query = unit_box_query("2.15", "0.1", 64);
        let res = calc_range(&query).unwrap();
        assert_eq!(res.leaves, 1);
        assert!(res.lower_bound.to_rational() > q("1").unwrap());
    }

    #[test]
    fn witness_blocks_certification() {
        // p3 = 1, p2 = 0: u = first column, v = e1 leaves residual max 1,
        // so certification must never happen; the budget trips instead
        let query = unit_box_query("1", "0", 3000);
        match calc_range(&query) {
            Err(InfeasError::BudgetExceeded { .. }) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn p2_bracket_contains_truth() {
        let ctx = IvCtx::new(64);
        let p2 = p2_bracket_high(&q("2.15").unwrap(), &ctx);
        // 3/2 + sqrt(1/10): square the offset and compare to 1/10 exactly
        let lo = p2.lo().to_rational() - q("1.5").unwrap();
        let hi = p2.hi().to_rational() - q("1.5").unwrap();
        assert!(&lo * &lo <= q("0.1").unwrap());
        assert!(&hi * &hi >= q("0.1").unwrap());
        assert!(p2.width() < q("0.000000001").unwrap());
    }

    #[test]
    fn tree_hex_round_trip() {
        let mut t = TreeBits::default();
        for b in [true, false, true, false, false, true, false, false, false] {
            t.push(b);
        }
        let s = t.to_hex();
        assert_eq!(TreeBits::from_hex(&s).unwrap(), t);
        assert_eq!(t.leaves(), 6);
    }

    #[test]
    fn bound_arithmetic() {
        let g1 = q("2.2").unwrap();
        let g2 = q("2.15").unwrap();
        assert_eq!(bound_from_cases(&g1, &g2, true, true), q("4.84").unwrap());
        assert_eq!(
            bound_from_cases(&g1, &g2, false, false),
            Rational::new(81.into(), 16.into())
        );
        let desk1 = q("2.24").unwrap();
        let desk2 = q("2.2").unwrap();
        // max(2.25 * 2.2, 2.24^2) = max(4.95, 5.0176) = 5.0176
        assert_eq!(bound_from_cases(&desk1, &desk2, true, true), q("5.0176").unwrap());
    }

    #[test]
    fn budget_monotonicity() {
        let query = unit_box_query("2.15", "1.8163", 100_000);
        if let Ok(res) = calc_range(&query) {
            // doubling the budget cannot flip a certified box
            let query2 = RankTwoQuery { budget: query.budget * 2, ..query.clone() };
            let res2 = calc_range(&query2).unwrap();
            assert_eq!(res.leaves, res2.leaves);
            assert_eq!(res.lower_bound, res2.lower_bound);
        }
    }

    #[test]
    fn replay_matches_search() {
        let query = unit_box_query("2.15", "0.5", 100_000);
        let res = calc_range(&query).expect("should certify at p2 = 0.5");
        let lb = replay_tree(&query, &res.tree).unwrap();
        assert_eq!(lb, res.lower_bound);
        // a corrupted tree must fail
        let mut bad = res.tree.clone();
        bad.push(false);
        assert!(replay_tree(&query, &bad).is_err());
    }
}
