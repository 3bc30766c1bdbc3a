//! Rigorous covers of high-growth normalized completely pivoted 3x3
//! matrices: branch-and-bound over dyadic boxes with sound pruning.
//!
//! A box is pruned only when it provably contains no normalized CP matrix
//! with growth at least the threshold; interval comparisons that cannot
//! decide always keep the box. The only hard guarantee of a cover is the
//! superset property, so every test here errs toward keeping.

use num_traits::{One, Signed};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::elim::{IvMatrix, RatMatrix, SquareMatrix};
use crate::numerics::{Dyadic, Interval, IvCtx, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("budget exceeded while building the cover: {0}")]
    BudgetExceeded(String),
    #[error("matrix is not normalized")]
    NotNormalized,
    #[error("cover file parse error: {0}")]
    Parse(String),
    #[error("cover file hash mismatch: expected {0}, got {1}")]
    HashMismatch(String, String),
}

/// Row-major positions of the eight free entries (entry (0,0) is pinned
/// to 1).
pub const FREE_ENTRIES: [(usize, usize); 8] =
    [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];

/// Indices into [`FREE_ENTRIES`] that live on the first row/column and are
/// therefore constrained to [0, 1].
const NONNEG: [bool; 8] = [true, true, true, false, false, true, false, false];

/// A dyadic box: coordinate i spans `[k 2^-level, (k+1) 2^-level]` with
/// `k = idx[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicBox {
    pub level: u8,
    pub idx: [i32; 8],
}

impl DyadicBox {
    pub fn side(&self) -> Rational {
        Rational::new(1.into(), num_bigint::BigInt::from(1) << self.level as u32)
    }

    /// Exact interval of coordinate `i` (no rounding: dyadic endpoints).
    pub fn coord(&self, i: usize) -> Interval {
        let l = -(self.level as i64);
        Interval::new(
            Dyadic::new(self.idx[i].into(), l),
            Dyadic::new((self.idx[i] + 1).into(), l),
        )
    }

    /// The 3x3 interval matrix of the box.
    pub fn matrix(&self) -> IvMatrix {
        let one = Interval::from_i64(1);
        SquareMatrix::from_fn(3, |i, j| {
            if (i, j) == (0, 0) {
                one.clone()
            } else {
                let pos = FREE_ENTRIES.iter().position(|&p| p == (i, j)).unwrap();
                self.coord(pos)
            }
        })
    }

    /// All 2^8 children one level down.
    pub fn children(&self) -> Vec<DyadicBox> {
        let mut out = Vec::with_capacity(256);
        for mask in 0..256u32 {
            let mut idx = [0i32; 8];
            for (i, v) in idx.iter_mut().enumerate() {
                *v = 2 * self.idx[i] + ((mask >> i) & 1) as i32;
            }
            out.push(DyadicBox { level: self.level + 1, idx });
        }
        out
    }

    /// Closed-box membership of an exact rational matrix.
    pub fn contains(&self, m: &RatMatrix) -> bool {
        let scale = Rational::new(num_bigint::BigInt::from(1) << self.level as u32, 1.into());
        FREE_ENTRIES.iter().enumerate().all(|(i, &(r, c))| {
            let v = m.get(r, c) * &scale;
            let k = Rational::from_integer(self.idx[i].into());
            v >= k && v <= &k + Rational::one()
        })
    }

    fn in_range(&self) -> bool {
        let max = 1i32 << self.level;
        self.idx.iter().enumerate().all(|(i, &k)| {
            if NONNEG[i] {
                (0..max).contains(&k)
            } else {
                (-max..max).contains(&k)
            }
        })
    }
}

/// All level-1 boxes of the normalized root region.
pub fn root_boxes() -> Vec<DyadicBox> {
    let mut out = Vec::new();
    let ranges: Vec<Vec<i32>> =
        NONNEG.iter().map(|&nn| if nn { (0..2).collect() } else { (-2..2).collect() }).collect();
    let mut idx = [0i32; 8];
    fn rec(ranges: &[Vec<i32>], i: usize, idx: &mut [i32; 8], out: &mut Vec<DyadicBox>) {
        if i == 8 {
            out.push(DyadicBox { level: 1, idx: *idx });
            return;
        }
        for &k in &ranges[i] {
            idx[i] = k;
            rec(ranges, i + 1, idx, out);
        }
    }
    rec(&ranges, 0, &mut idx, &mut out);
    out
}

/// Which pruning tests run. T5 is the pluggable external-bound slot; it
/// ships disabled and nothing in the certification chain depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestConfig {
    pub t1_interval_elimination: bool,
    pub t2_second_pivot: bool,
    pub t3_sign_patterns: bool,
    pub t4_pivot_link: bool,
    /// Name tag recorded when an external hook is supplied.
    pub t5_name: Option<String>,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            t1_interval_elimination: true,
            t2_second_pivot: true,
            t3_sign_patterns: true,
            t4_pivot_link: true,
            t5_name: None,
        }
    }
}

impl TestConfig {
    pub fn tag(&self) -> String {
        let mut s = String::new();
        if self.t1_interval_elimination {
            s.push_str("T1");
        }
        if self.t2_second_pivot {
            s.push_str("T2");
        }
        if self.t3_sign_patterns {
            s.push_str("T3");
        }
        if self.t4_pivot_link {
            s.push_str("T4");
        }
        if let Some(n) = &self.t5_name {
            s.push_str("T5(");
            s.push_str(n);
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("none");
        }
        s
    }

    pub fn from_tag(tag: &str) -> Result<Self, CoverError> {
        let mut cfg = TestConfig {
            t1_interval_elimination: false,
            t2_second_pivot: false,
            t3_sign_patterns: false,
            t4_pivot_link: false,
            t5_name: None,
        };
        let mut rest = tag;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("T1") {
                cfg.t1_interval_elimination = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("T2") {
                cfg.t2_second_pivot = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("T3") {
                cfg.t3_sign_patterns = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("T4") {
                cfg.t4_pivot_link = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("T5(") {
                let end = r.find(')').ok_or_else(|| CoverError::Parse("bad T5 tag".into()))?;
                cfg.t5_name = Some(r[..end].to_string());
                rest = &r[end + 1..];
            } else if rest == "none" {
                break;
            } else {
                return Err(CoverError::Parse(format!("bad test-config tag `{tag}`")));
            }
        }
        Ok(cfg)
    }
}

/// External sound pruning test: must return true only for boxes that
/// provably contain no normalized CP matrix with growth >= g.
pub type PruneHook<'a> = Option<&'a (dyn Fn(&DyadicBox, &Rational) -> bool + Sync)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PrunedBy {
    T1,
    T2,
    T3,
    T4,
    T5,
}

/// true only if the box provably contains no normalized CP matrix C with
/// third pivot >= g. Requires g > 2.
pub fn check_growth(b: &DyadicBox, g: &Rational, cfg: &TestConfig, hook: PruneHook) -> bool {
    check_growth_detail(b, g, cfg, hook).is_some()
}

fn check_growth_detail(
    b: &DyadicBox,
    g: &Rational,
    cfg: &TestConfig,
    hook: PruneHook,
) -> Option<PrunedBy> {
    debug_assert!(*g > Rational::from_integer(2.into()), "check_growth needs g > 2");
    let ctx = IvCtx::new(64);
    let m = b.matrix();
    // one elimination step (the pivot is exactly 1)
    let c22 = ctx.sub(m.get(1, 1), &ctx.mul(m.get(1, 0), m.get(0, 1)));
    let c23 = ctx.sub(m.get(1, 2), &ctx.mul(m.get(1, 0), m.get(0, 2)));
    let c32 = ctx.sub(m.get(2, 1), &ctx.mul(m.get(2, 0), m.get(0, 1)));
    let c33 = ctx.sub(m.get(2, 2), &ctx.mul(m.get(2, 0), m.get(0, 2)));

    let half_g = g / Rational::from_integer(2.into());

    // T2: a growth >= g > 2 matrix must have C22 - C21 C12 <= -g/2
    if cfg.t2_second_pivot && c22.lo().to_rational() > -&half_g {
        return Some(PrunedBy::T2);
    }

    // T3: admissible sign patterns of the bottom-right 2x2 after one step:
    // exactly one of (2,3),(3,2),(3,3) positive, the others negative, with
    // (2,2) negative. A pattern is refuted only by a provably wrong sign.
    if cfg.t3_sign_patterns {
        let refuted_neg = |iv: &Interval| iv.lo().is_positive(); // needs < 0
        let refuted_pos = |iv: &Interval| iv.hi().is_negative(); // needs > 0
        let entries = [&c23, &c32, &c33];
        let mut all_refuted = refuted_neg(&c22) && true;
        if !all_refuted {
            all_refuted = (0..3).all(|pos_at| {
                entries.iter().enumerate().any(|(i, e)| {
                    if i == pos_at {
                        refuted_pos(e)
                    } else {
                        refuted_neg(e)
                    }
                })
            });
        }
        if all_refuted {
            return Some(PrunedBy::T3);
        }
    }

    // admissible second-pivot magnitude range [max(g/2, ...), min(2, ...)]
    let p2_lo_mag = {
        let m = -c22.hi().to_rational();
        if m > half_g {
            m
        } else {
            half_g.clone()
        }
    };
    let p2_hi_mag = {
        let m = -c22.lo().to_rational();
        let two = Rational::from_integer(2.into());
        if m < two {
            m
        } else {
            two
        }
    };
    if p2_lo_mag > p2_hi_mag {
        // second pivot cannot reach -g/2 inside |.| <= 2
        return Some(PrunedBy::T2);
    }

    // T4: p3' <= 3 p2' - p2'^2; maximize the concave quadratic exactly
    if cfg.t4_pivot_link {
        let f = |p: &Rational| Rational::from_integer(3.into()) * p - p * p;
        let three_halves = Rational::new(3.into(), 2.into());
        let ub = if p2_lo_mag <= three_halves && three_halves <= p2_hi_mag {
            Rational::new(9.into(), 4.into())
        } else {
            let a = f(&p2_lo_mag);
            let b = f(&p2_hi_mag);
            if a > b {
                a
            } else {
                b
            }
        };
        if &ub < g {
            return Some(PrunedBy::T4);
        }
    }

    // T1: interval elimination bound on the third pivot, with the pivot
    // interval narrowed to the admissible range and CP propagation on the
    // remaining entries
    if cfg.t1_interval_elimination {
        let pivot2 = Interval::new(
            Dyadic::from_rational(&-&p2_hi_mag, 64, crate::numerics::Rounding::Down),
            Dyadic::from_rational(&-&p2_lo_mag, 64, crate::numerics::Rounding::Up),
        );
        let pivot2 = match c22.intersect(&pivot2) {
            Some(iv) => iv,
            None => return Some(PrunedBy::T1),
        };
        if pivot2.contains_zero() {
            // cannot happen for g > 2, but keep the box if it does
            return hook_check(b, g, cfg, hook);
        }
        let mag = pivot2.mag_max();
        let clamp = Interval::new(mag.neg(), mag);
        let c23c = match c23.intersect(&clamp) {
            Some(iv) => iv,
            None => return Some(PrunedBy::T1),
        };
        let c32c = match c32.intersect(&clamp) {
            Some(iv) => iv,
            None => return Some(PrunedBy::T1),
        };
        let c33c = match c33.intersect(&clamp) {
            Some(iv) => iv,
            None => return Some(PrunedBy::T1),
        };
        let quot = ctx.div(&ctx.mul(&c32c, &c23c), &pivot2).expect("pivot excludes zero");
        let third = ctx.sub(&c33c, &quot);
        if &third.mag_max().to_rational() < g {
            return Some(PrunedBy::T1);
        }
    }

    hook_check(b, g, cfg, hook)
}

fn hook_check(b: &DyadicBox, g: &Rational, cfg: &TestConfig, hook: PruneHook) -> Option<PrunedBy> {
    match hook {
        Some(h) if cfg.t5_name.is_some() && h(b, g) => Some(PrunedBy::T5),
        _ => None,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub tested: u64,
    pub kept: u64,
    pub pruned_t1: u64,
    pub pruned_t2: u64,
    pub pruned_t3: u64,
    pub pruned_t4: u64,
    pub pruned_t5: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub levels: Vec<LevelStats>,
}

/// A canonical cover: the sorted surviving boxes plus provenance.
#[derive(Debug, Clone)]
pub struct CoverSet {
    pub threshold: Rational,
    pub level: u8,
    pub cfg: TestConfig,
    pub boxes: Vec<DyadicBox>,
    pub stats: BuildStats,
}

/// Branch-and-bound cover construction down to side length `2^-level`.
/// Deterministic: the result is a pure function of (g, level, cfg).
pub fn build_cover(
    g: &Rational,
    level: u8,
    cfg: &TestConfig,
    hook: PruneHook,
    max_boxes: u64,
) -> Result<CoverSet, CoverError> {
    assert!(level >= 1);
    let mut stats = BuildStats::default();
    let mut frontier = root_boxes();
    let mut current_level = 1u8;
    loop {
        let results: Vec<(DyadicBox, Option<PrunedBy>)> = frontier
            .into_par_iter()
            .map(|b| {
                let v = check_growth_detail(&b, g, cfg, hook);
                (b, v)
            })
            .collect();
        let mut ls = LevelStats { tested: results.len() as u64, ..Default::default() };
        let mut kept = Vec::new();
        for (b, verdict) in results {
            match verdict {
                None => kept.push(b),
                Some(PrunedBy::T1) => ls.pruned_t1 += 1,
                Some(PrunedBy::T2) => ls.pruned_t2 += 1,
                Some(PrunedBy::T3) => ls.pruned_t3 += 1,
                Some(PrunedBy::T4) => ls.pruned_t4 += 1,
                Some(PrunedBy::T5) => ls.pruned_t5 += 1,
            }
        }
        ls.kept = kept.len() as u64;
        stats.levels.push(ls);
        if kept.len() as u64 > max_boxes {
            return Err(CoverError::BudgetExceeded(format!(
                "level {current_level}: {} boxes kept, budget {max_boxes}",
                kept.len()
            )));
        }
        if current_level == level {
            kept.sort();
            return Ok(CoverSet {
                threshold: g.clone(),
                level,
                cfg: cfg.clone(),
                boxes: kept,
                stats,
            });
        }
        current_level += 1;
        frontier = kept.into_par_iter().flat_map_iter(|b| b.children()).collect();
    }
}

impl CoverSet {
    /// Membership of a normalized exact matrix (closed boxes: boundary
    /// points count).
    pub fn contains(&self, m: &RatMatrix) -> Result<bool, CoverError> {
        if m.n() != 3 || !m.get(0, 0).is_one() {
            return Err(CoverError::NotNormalized);
        }
        let one = Rational::one();
        for i in 0..3 {
            for j in 0..3 {
                if m.get(i, j).abs() > one {
                    return Err(CoverError::NotNormalized);
                }
            }
        }
        for &(i, j) in &FREE_ENTRIES[..3] {
            let _ = (i, j);
        }
        if [(0usize, 1usize), (0, 2), (1, 0), (2, 0)]
            .iter()
            .any(|&(i, j)| m.get(i, j).is_negative())
        {
            return Err(CoverError::NotNormalized);
        }
        // candidate index per coordinate: floor(v * 2^l), minus one more
        // when v lands exactly on the grid
        let scale = Rational::new(num_bigint::BigInt::from(1) << self.level as u32, 1.into());
        let mut cands: Vec<Vec<i32>> = Vec::with_capacity(8);
        for (pos, &(i, j)) in FREE_ENTRIES.iter().enumerate() {
            let v = m.get(i, j) * &scale;
            let fl = v.floor().to_integer();
            let fl: i32 = i32::try_from(&fl).map_err(|_| CoverError::NotNormalized)?;
            let mut c = Vec::with_capacity(2);
            let max = 1i32 << self.level;
            let lo_bound = if NONNEG[pos] { 0 } else { -max };
            let push = |c: &mut Vec<i32>, k: i32| {
                if (lo_bound..max).contains(&k) {
                    c.push(k);
                }
            };
            if v == Rational::from_integer(fl.into()) {
                push(&mut c, fl - 1);
            }
            push(&mut c, fl);
            if c.is_empty() {
                return Ok(false);
            }
            cands.push(c);
        }
        // walk the (at most 2^8) candidate combinations
        let mut stack = vec![(0usize, [0i32; 8])];
        while let Some((depth, idx)) = stack.pop() {
            if depth == 8 {
                let probe = DyadicBox { level: self.level, idx };
                if self.boxes.binary_search(&probe).is_ok() {
                    return Ok(true);
                }
                continue;
            }
            for &k in &cands[depth] {
                let mut nidx = idx;
                nidx[depth] = k;
                stack.push((depth + 1, nidx));
            }
        }
        Ok(false)
    }

    /// Axis-aligned projection rectangles onto two entries, deduplicated.
    /// Entries are (row, col), zero-based, and must be free entries.
    pub fn project(&self, a: (usize, usize), b: (usize, usize)) -> Vec<ProjectedRect> {
        let pa = FREE_ENTRIES.iter().position(|&p| p == a).expect("not a free entry");
        let pb = FREE_ENTRIES.iter().position(|&p| p == b).expect("not a free entry");
        let mut seen: std::collections::BTreeSet<(i32, i32)> = std::collections::BTreeSet::new();
        for bx in &self.boxes {
            seen.insert((bx.idx[pa], bx.idx[pb]));
        }
        seen.into_iter()
            .map(|(ka, kb)| ProjectedRect { level: self.level, ka, kb })
            .collect()
    }

    /// Canonical body text: one line of eight indices per box.
    fn body(&self) -> String {
        let mut s = String::new();
        for b in &self.boxes {
            let line: Vec<String> = b.idx.iter().map(i32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.body().as_bytes());
        h.finalize().iter().map(|x| format!("{x:02x}")).collect()
    }

    /// Cover file: `level g test-config content-hash` then one box per line.
    pub fn to_text(&self) -> String {
        format!(
            "{} {} {} {}\n{}",
            self.level,
            crate::numerics::format_rational(&self.threshold),
            self.cfg.tag(),
            self.content_hash(),
            self.body()
        )
    }

    pub fn from_text(text: &str) -> Result<CoverSet, CoverError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| CoverError::Parse("empty cover file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(CoverError::Parse("header must be `level g test-config hash`".into()));
        }
        let level: u8 = parts[0].parse().map_err(|_| CoverError::Parse("bad level".into()))?;
        let g = crate::numerics::parse_rational(parts[1])
            .map_err(|e| CoverError::Parse(e.to_string()))?;
        let cfg = TestConfig::from_tag(parts[2])?;
        let want_hash = parts[3].to_string();
        let mut boxes = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let idx: Result<Vec<i32>, _> = line.split_whitespace().map(str::parse).collect();
            let idx = idx.map_err(|_| CoverError::Parse(format!("bad box line `{line}`")))?;
            if idx.len() != 8 {
                return Err(CoverError::Parse("each box line needs 8 indices".into()));
            }
            let b = DyadicBox { level, idx: idx.try_into().unwrap() };
            if !b.in_range() {
                return Err(CoverError::Parse("box indices out of range".into()));
            }
            boxes.push(b);
        }
        boxes.sort();
        boxes.dedup();
        let cover = CoverSet {
            threshold: g,
            level,
            cfg,
            boxes,
            stats: BuildStats::default(),
        };
        let got = cover.content_hash();
        if got != want_hash {
            return Err(CoverError::HashMismatch(want_hash, got));
        }
        Ok(cover)
    }
}

/// One projected rectangle: coordinates `[k 2^-level, (k+1) 2^-level]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectedRect {
    pub level: u8,
    pub ka: i32,
    pub kb: i32,
}

impl ProjectedRect {
    pub fn csv_line(&self) -> String {
        let l = -(self.level as i64);
        let d = |k: i32| Dyadic::new(k.into(), l).to_decimal_string();
        format!("{},{},{},{}", d(self.ka), d(self.kb), d(self.ka + 1), d(self.kb + 1))
    }
}

/// CSV of projection rectangles (corner-to-corner), one per line.
pub fn projection_csv(rects: &[ProjectedRect]) -> String {
    let mut s = String::from("lo_a,lo_b,hi_a,hi_b\n");
    for r in rects {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::parse_matrix;
    use crate::numerics::parse_decimal_or_rational as q;

    fn g22() -> Rational {
        q("2.2").unwrap()
    }

    fn extremal_a() -> RatMatrix {
        parse_matrix(&crate::data::bundled_text("extremal_3x3_a.mat").unwrap()).unwrap()
    }

    #[test]
    fn extremal_box_is_never_pruned() {
        let cfg = TestConfig::default();
        // boxes at levels 1..3 containing the first extremal matrix
        for level in 1..=3u8 {
            let m = extremal_a();
            // find one containing box by flooring each coordinate
            let scale = Rational::new(num_bigint::BigInt::from(1) << level as u32, 1.into());
            let mut idx = [0i32; 8];
            for (pos, &(i, j)) in FREE_ENTRIES.iter().enumerate() {
                let v = m.get(i, j) * &scale;
                let fl = v.floor().to_integer();
                let mut k = i32::try_from(&fl).unwrap();
                let max = 1i32 << level;
                if k == max {
                    k -= 1;
                }
                idx[pos] = k;
            }
            let b = DyadicBox { level, idx };
            assert!(b.contains(&m), "level {level} box must contain the extremal matrix");
            assert!(
                !check_growth(&b, &g22(), &cfg, None),
                "level {level} extremal box must be kept"
            );
        }
    }

    #[test]
    fn forced_small_second_pivot_prunes() {
        // C22 in [0.5, 0.75], C21, C12 in [0, 0.25]: C22 - C21 C12 >= 0.4375,
        // far above -g/2, so T2 fires
        let b = DyadicBox { level: 2, idx: [0, 0, 0, 2, 0, 0, 0, 0] };
        let cfg = TestConfig::default();
        assert!(check_growth(&b, &g22(), &cfg, None));
    }

    #[test]
    fn level1_cover_keeps_all_extremal_matrices() {
        let cfg = TestConfig::default();
        let cover = build_cover(&g22(), 2, &cfg, None, u64::MAX).unwrap();
        for m in crate::data::extremal_matrices().unwrap() {
            assert_eq!(cover.contains(&m), Ok(true));
        }
        // identity has growth 1: its box gets pruned
        let id = parse_matrix("3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
        assert_eq!(cover.contains(&id), Ok(false));
        // monotonicity: higher threshold keeps a subset at equal level
        let tighter = build_cover(&q("2.25").unwrap(), 2, &cfg, None, u64::MAX).unwrap();
        for b in &tighter.boxes {
            assert!(cover.boxes.binary_search(b).is_ok());
        }
    }

    #[test]
    fn cover_io_round_trip() {
        let cfg = TestConfig::default();
        let cover = build_cover(&g22(), 1, &cfg, None, u64::MAX).unwrap();
        let t = cover.to_text();
        let back = CoverSet::from_text(&t).unwrap();
        assert_eq!(back.boxes, cover.boxes);
        assert_eq!(back.level, cover.level);
        assert_eq!(back.threshold, cover.threshold);
        // tamper detection
        let bad = t.replacen(" 0 ", " 1 ", 1);
        if bad != t {
            assert!(CoverSet::from_text(&bad).is_err());
        }
    }

    #[test]
    fn boundary_points_count_as_inside() {
        let cfg = TestConfig::default();
        let cover = build_cover(&g22(), 2, &cfg, None, u64::MAX).unwrap();
        // the extremal matrix has entries on the dyadic grid; perturbing the
        // lookup must still find it via the neighbor-candidate walk
        let m = extremal_a();
        assert_eq!(cover.contains(&m), Ok(true));
        let not_norm = parse_matrix("3\n1 0 0\n0 2 0\n0 0 1\n").unwrap();
        assert!(cover.contains(&not_norm).is_err());
    }

    #[test]
    fn projection_dedups() {
        let cfg = TestConfig::default();
        let cover = build_cover(&g22(), 2, &cfg, None, u64::MAX).unwrap();
        let rects = cover.project((1, 0), (0, 1));
        assert!(!rects.is_empty());
        assert!(rects.len() <= cover.boxes.len());
        let csv = projection_csv(&rects);
        assert!(csv.starts_with("lo_a,lo_b,hi_a,hi_b"));
        // rectangles of a sub-cover are a subset
        let tighter = build_cover(&q("2.25").unwrap(), 2, &cfg, None, u64::MAX).unwrap();
        let sub = tighter.project((1, 0), (0, 1));
        for r in &sub {
            assert!(rects.contains(r));
        }
    }

    #[test]
    fn budget_trips() {
        let cfg = TestConfig::default();
        match build_cover(&g22(), 2, &cfg, None, 10) {
            Err(CoverError::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
