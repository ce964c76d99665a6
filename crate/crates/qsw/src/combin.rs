//! Multiindices, walks, multiplicities, link patterns and the walk bijection.
//!
//! Nodes are indexed from 0 internally; generator-style indices (`cutting_map`)
//! are 1-based, so index `j` touches nodes `j-1` and `j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `ς = (s_1, ..., s_d)`; empty encodes `(0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.iter().any(|&s| s == 0) {
            return Err(Error::Shape(format!("multiindex entries must be positive: {entries:?}")));
        }
        Ok(MultiIndex(entries))
    }

    /// `1^n`.
    pub fn flat(n: usize) -> Self {
        MultiIndex(vec![1; n])
    }

    pub fn single(s: u32) -> Self {
        if s == 0 {
            MultiIndex(Vec::new())
        } else {
            MultiIndex(vec![s])
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn n(&self) -> usize {
        self.0.iter().map(|&s| s as usize).sum()
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_flat(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }

    /// Node ranges of the bins.
    pub fn bins(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&s| {
                let r = start..start + s as usize;
                start += s as usize;
                r
            })
            .collect()
    }

    /// Bin index of each node.
    pub fn bin_of(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat(b).take(s as usize)).collect()
    }

    /// `(ς̂, s_d)`: everything but the last entry, and the last entry.
    pub fn split_last(&self) -> Option<(MultiIndex, u32)> {
        let (last, rest) = self.0.split_last()?;
        Some((MultiIndex(rest.to_vec()), *last))
    }

    pub fn concat(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().chain(&o.0).copied().collect())
    }

    /// Dimension `∏ (s_i + 1)` of the type-one module `V_ς`.
    pub fn module_dim(&self) -> usize {
        self.0.iter().map(|&s| s as usize + 1).product()
    }
}

/// All multiindices with `n_ς = n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<MultiIndex> {
    fn go(rest: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if rest == 0 {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for k in 1..=rest {
            cur.push(k as u32);
            go(rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

impl FromStr for MultiIndex {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() || t == "0" {
            return Ok(MultiIndex(Vec::new()));
        }
        let entries = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Shape(format!("bad multiindex {text:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(entries)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `E_{r,t} = {|r-t|, |r-t|+2, ..., r+t}`.
pub fn defect_interval(r: u32, t: u32) -> Vec<u32> {
    (r.abs_diff(t)..=r + t).step_by(2).collect()
}

/// Heights `(r_1, ..., r_d)` with the implicit `r_0 = 0` omitted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Walk(pub Vec<u32>);

impl Walk {
    pub fn heights(&self) -> &[u32] {
        &self.0
    }

    pub fn defect(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Checks the step rule against `ς`.
    pub fn is_over(&self, mi: &MultiIndex) -> bool {
        if self.0.len() != mi.d() {
            return false;
        }
        let mut prev = 0;
        for (&r, &s) in self.0.iter().zip(mi.entries()) {
            if !crate::scalar::admissible(prev, r, s) {
                return false;
            }
            prev = r;
        }
        true
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All walks over `ς`, lexicographic in the heights.
pub fn walks_over(mi: &MultiIndex) -> Vec<Walk> {
    fn go(entries: &[u32], prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Walk>) {
        let Some((&s, rest)) = entries.split_first() else {
            out.push(Walk(acc.clone()));
            return;
        };
        for r in defect_interval(prev, s) {
            acc.push(r);
            go(rest, r, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(mi.entries(), 0, &mut Vec::new(), &mut out);
    out
}

/// `s ↦ D_ς^(s)` by the multiplicity recursion, zero entries omitted.
pub fn dims_d(mi: &MultiIndex) -> BTreeMap<u32, u64> {
    let mut cur = BTreeMap::from([(0u32, 1u64)]);
    for &t in mi.entries() {
        let mut next = BTreeMap::new();
        for (&r, &c) in &cur {
            for s in defect_interval(r, t) {
                *next.entry(s).or_insert(0) += c;
            }
        }
        cur = next;
    }
    cur
}

/// `D_ς^(s)`.
pub fn dim_d(mi: &MultiIndex, s: u32) -> u64 {
    dims_d(mi).get(&s).copied().unwrap_or(0)
}

/// `E_ς`.
pub fn defect_set(mi: &MultiIndex) -> Vec<u32> {
    dims_d(mi).into_keys().collect()
}

/// `s ↦ B_ς^(s)`: the recursion summing over all `r` in `s-t..=s+t`.
pub fn dims_b(mi: &MultiIndex) -> BTreeMap<u32, u64> {
    let Some((hat, t)) = mi.split_last() else {
        return BTreeMap::from([(0, 1)]);
    };
    if hat.d() == 0 {
        return BTreeMap::from([(t, 1)]);
    }
    let prev = dims_b(&hat);
    let top = mi.n() as i64;
    let mut out = BTreeMap::new();
    for s in 0..=top {
        let mut acc = 0;
        let mut r = s - t as i64;
        while r <= s + t as i64 {
            if r >= 0 {
                acc += prev.get(&(r as u32)).copied().unwrap_or(0);
            }
            r += 2;
        }
        if acc > 0 {
            out.insert(s as u32, acc);
        }
    }
    out
}

/// Planar pattern on `n` nodes; `partner[j] = None` marks a defect.
/// Ordered by node count, then by walk.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinkPattern {
    partner: Vec<Option<usize>>,
}

impl Ord for LinkPattern {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let step = |j: usize, p: &Option<usize>| if p.is_some_and(|k| k < j) { -1i32 } else { 1 };
        self.n().cmp(&o.n()).then_with(|| {
            let (mut a, mut b) = (0i32, 0i32);
            for (j, (x, y)) in self.partner.iter().zip(&o.partner).enumerate() {
                a += step(j, x);
                b += step(j, y);
                if a != b {
                    return a.cmp(&b);
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for LinkPattern {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl LinkPattern {
    /// Validates involution, planarity and that no defect sits under a link.
    pub fn new(partner: Vec<Option<usize>>) -> Result<Self> {
        let n = partner.len();
        let mut depth = 0usize;
        for (j, p) in partner.iter().enumerate() {
            match *p {
                Some(k) if k >= n || k == j || partner[k] != Some(j) => {
                    return Err(Error::Pattern(format!("node {} has an inconsistent partner", j + 1)));
                }
                Some(k) if k > j => depth += 1,
                Some(_) => depth -= 1,
                None if depth > 0 => {
                    return Err(Error::Pattern(format!("defect at node {} is enclosed by a link", j + 1)));
                }
                None => {}
            }
        }
        // nesting: every closer matches the most recent opener
        let mut stack = Vec::new();
        for (j, p) in partner.iter().enumerate() {
            if let Some(k) = *p {
                if k > j {
                    stack.push(j);
                } else if stack.pop() != Some(k) {
                    return Err(Error::Pattern(format!("link ending at node {} crosses another", j + 1)));
                }
            }
        }
        Ok(LinkPattern { partner })
    }

    pub(crate) fn from_partners_unchecked(partner: Vec<Option<usize>>) -> Self {
        debug_assert!(LinkPattern::new(partner.clone()).is_ok());
        LinkPattern { partner }
    }

    pub fn all_defects(n: usize) -> Self {
        LinkPattern { partner: vec![None; n] }
    }

    pub fn n(&self) -> usize {
        self.partner.len()
    }

    pub fn s(&self) -> usize {
        self.partner.iter().filter(|p| p.is_none()).count()
    }

    pub fn partner(&self, j: usize) -> Option<usize> {
        self.partner[j]
    }

    pub fn partners(&self) -> &[Option<usize>] {
        &self.partner
    }

    /// Links `(a, b)` with `a < b`.
    pub fn links(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.filter(|&k| k > j).map(|k| (j, k)))
            .collect()
    }

    pub fn defects(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.partner[j].is_none()).collect()
    }

    /// Heights after each node: openers and defects step up, closers step down.
    pub fn walk(&self) -> Walk {
        let mut h = 0u32;
        Walk(
            self.partner
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    match p {
                        Some(k) if *k < j => h -= 1,
                        _ => h += 1,
                    }
                    h
                })
                .collect(),
        )
    }

    /// Whether some link joins two nodes of one bin of `ς`.
    pub fn has_intra_bin_link(&self, mi: &MultiIndex) -> bool {
        let bin = mi.bin_of();
        self.links().iter().any(|&(a, b)| bin[a] == bin[b])
    }

    /// The cutting map at 1-based index `j`.
    pub fn cutting_map(&self, j: usize) -> Result<LinkPattern> {
        let n = self.n();
        if j == 0 || j >= n {
            return Err(Error::Range(format!("cutting index {j} outside 1..{}", n.saturating_sub(1))));
        }
        let (a, b) = (j - 1, j);
        if self.partner[a] == Some(b) {
            return Ok(self.clone());
        }
        let (pa, pb) = (self.partner[a], self.partner[b]);
        if pa.is_none() && pb.is_none() {
            return Err(Error::Pattern(format!("cutting map undefined: defects at nodes {j} and {}", j + 1)));
        }
        let mut partner = self.partner.clone();
        partner[a] = Some(b);
        partner[b] = Some(a);
        match (pa, pb) {
            (Some(x), Some(y)) => {
                partner[x] = Some(y);
                partner[y] = Some(x);
            }
            (Some(x), None) | (None, Some(x)) => partner[x] = None,
            (None, None) => unreachable!(),
        }
        LinkPattern::new(partner)
    }
}

impl FromStr for LinkPattern {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let mut partner = Vec::new();
        let mut stack = Vec::new();
        for (pos, ch) in text.trim().chars().enumerate() {
            let j = partner.len();
            match ch {
                '(' => {
                    stack.push(j);
                    partner.push(None);
                }
                ')' => {
                    let k = stack.pop().ok_or(Error::Parse { pos, msg: "unmatched ')'".into() })?;
                    partner[k] = Some(j);
                    partner.push(Some(k));
                }
                '|' if stack.is_empty() => partner.push(None),
                '|' => return Err(Error::Parse { pos, msg: "defect at positive depth".into() }),
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse { pos, msg: format!("unexpected {c:?}") }),
            }
        }
        if !stack.is_empty() {
            return Err(Error::Parse { pos: text.len(), msg: "unclosed '('".into() });
        }
        LinkPattern::new(partner)
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, p) in self.partner.iter().enumerate() {
            let c = match p {
                None => '|',
                Some(k) if *k > j => '(',
                Some(_) => ')',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Flat pattern of a walk over `ς`: in each bin, `c` closers pop the stack, then the rest push;
/// whatever is left on the stack becomes the defects.
pub fn pattern_of(walk: &Walk, mi: &MultiIndex) -> Result<LinkPattern> {
    if !walk.is_over(mi) {
        return Err(Error::Pattern(format!("{walk} is not a walk over {mi}")));
    }
    let mut partner = vec![None; mi.n()];
    let mut stack: Vec<usize> = Vec::new();
    let mut prev = 0u32;
    for (bin, (&r, &s)) in mi.bins().into_iter().zip(walk.0.iter().zip(mi.entries())) {
        let c = ((prev + s - r) / 2) as usize;
        for (k, j) in bin.enumerate() {
            if k < c {
                let o = stack.pop().expect("walk step rule guarantees an opener");
                partner[o] = Some(j);
                partner[j] = Some(o);
            } else {
                stack.push(j);
            }
        }
        prev = r;
    }
    Ok(LinkPattern { partner })
}

/// Walk over `ς` of a special pattern: flat heights sampled at bin ends.
pub fn walk_of(alpha: &LinkPattern, mi: &MultiIndex) -> Result<Walk> {
    if alpha.n() != mi.n() {
        return Err(Error::Shape(format!("pattern on {} nodes vs multiindex {mi}", alpha.n())));
    }
    if alpha.has_intra_bin_link(mi) {
        return Err(Error::Pattern(format!("{alpha} links two nodes of one bin of {mi}")));
    }
    let flat = alpha.walk();
    Ok(Walk(mi.bins().iter().map(|b| if b.is_empty() { 0 } else { flat.0[b.end - 1] }).collect()))
}

/// `(n, s)`-link patterns ordered by walk.
pub fn link_patterns(n: usize, s: usize) -> Vec<LinkPattern> {
    if s > n || (n - s) % 2 != 0 {
        return Vec::new();
    }
    let mi = MultiIndex::flat(n);
    walks_over(&mi)
        .into_iter()
        .filter(|w| w.defect() as usize == s)
        .map(|w| pattern_of(&w, &mi).expect("enumerated walk"))
        .collect()
}

/// All `n`-node patterns, grouped by increasing defect count.
pub fn all_link_patterns(n: usize) -> Vec<LinkPattern> {
    (n % 2..=n).step_by(2).flat_map(|s| link_patterns(n, s)).collect()
}

/// Flat `(n_ς, s)`-patterns without an intra-bin link.
pub fn special_link_patterns(mi: &MultiIndex, s: usize) -> Vec<LinkPattern> {
    link_patterns(mi.n(), s).into_iter().filter(|a| !a.has_intra_bin_link(mi)).collect()
}

/// A `(ς, s)`-valenced link pattern, stored flat with its bins.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ValencedLinkPattern {
    pub multiindex: MultiIndex,
    pub base: LinkPattern,
}

impl ValencedLinkPattern {
    pub fn from_walk(walk: &Walk, mi: &MultiIndex) -> Result<Self> {
        Ok(ValencedLinkPattern { multiindex: mi.clone(), base: pattern_of(walk, mi)? })
    }

    pub fn from_flat(base: LinkPattern, mi: &MultiIndex) -> Result<Self> {
        walk_of(&base, mi)?;
        Ok(ValencedLinkPattern { multiindex: mi.clone(), base })
    }

    pub fn walk(&self) -> Walk {
        walk_of(&self.base, &self.multiindex).expect("validated on construction")
    }

    pub fn s(&self) -> usize {
        self.base.s()
    }
}

impl FromStr for ValencedLinkPattern {
    type Err = Error;
    /// `walk:r1,...,rd@s1,...,sd`.
    fn from_str(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("walk:")
            .ok_or(Error::Parse { pos: 0, msg: "expected 'walk:' prefix".into() })?;
        let (w, m) = body.split_once('@').ok_or(Error::Parse { pos: 5, msg: "expected '@'".into() })?;
        let heights = w
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse { pos: 5, msg: e.to_string() }))
            .collect::<Result<Vec<_>>>()?;
        let mi: MultiIndex = m.parse()?;
        ValencedLinkPattern::from_walk(&Walk(heights), &mi)
    }
}

impl fmt::Display for ValencedLinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.walk().0.iter().map(|x| x.to_string()).collect();
        let m: Vec<String> = self.multiindex.entries().iter().map(|x| x.to_string()).collect();
        write!(f, "walk:{}@{}", w.join(","), m.join(","))
    }
}

/// `(ς, s)`-valenced patterns in walk order.
pub fn valenced_link_patterns(mi: &MultiIndex, s: u32) -> Vec<ValencedLinkPattern> {
    walks_over(mi)
        .into_iter()
        .filter(|w| w.defect() == s)
        .map(|w| ValencedLinkPattern::from_walk(&w, mi).expect("enumerated walk"))
        .collect()
}

/// Pointwise partial order on walks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WalkOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

pub fn walk_compare(a: &Walk, b: &Walk) -> Result<WalkOrder> {
    if a.0.len() != b.0.len() {
        return Err(Error::Shape(format!("walks of lengths {} and {}", a.0.len(), b.0.len())));
    }
    let le = a.0.iter().zip(&b.0).all(|(x, y)| x <= y);
    let ge = a.0.iter().zip(&b.0).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, true) => WalkOrder::Equal,
        (true, false) => WalkOrder::Less,
        (false, true) => WalkOrder::Greater,
        (false, false) => WalkOrder::Incomparable,
    })
}

#[cfg(test)]
mod tests;
