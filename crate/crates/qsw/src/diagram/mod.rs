//! Temperley-Lieb diagrams and tangles, Jones-Wenzl projectors, valenced
//! composition, link states and their bilinear pairing.
//!
//! A diagram has `n` points on its left side and `m` on its right side, both
//! numbered top to bottom. `T.compose(U)` glues the right side of `T` to the
//! left side of `U`, so a tangle in `TL_ς^ϖ` maps `V_ϖ` to `V_ς` and a product
//! of generators reads like a product of matrices.

mod state;
mod tangle;
mod word;


use std::fmt;

use crate::combin::{LinkPattern, MultiIndex};
use crate::error::{Error, Result};

pub use state::{gram_matrix, ls_pairing, radical_dim, LinkState};
pub use tangle::{jones_wenzl, jw_tensor, Tangle};
pub use word::parse_tangle;

/// Planar `(n, m)`-link diagram, stored as its two halves: the left and right
/// link patterns. The `k`-th defect of each half is joined by a through line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Diagram {
    pub left: LinkPattern,
    pub right: LinkPattern,
}

impl Diagram {
    pub fn new(left: LinkPattern, right: LinkPattern) -> Result<Self> {
        if left.s() != right.s() {
            return Err(Error::Shape(format!(
                "halves carry {} and {} through lines",
                left.s(),
                right.s()
            )));
        }
        Ok(Diagram { left, right })
    }

    pub fn identity(n: usize) -> Self {
        Diagram { left: LinkPattern::all_defects(n), right: LinkPattern::all_defects(n) }
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn m(&self) -> usize {
        self.right.n()
    }

    pub fn through(&self) -> usize {
        self.left.s()
    }

    pub fn is_identity(&self) -> bool {
        self.n() == self.m() && self.through() == self.n()
    }

    /// `U_i` on `n` points, `1 <= i < n`.
    pub fn u(n: usize, i: usize) -> Result<Self> {
        let half = Diagram::cup(n, i)?;
        Ok(Diagram { left: half.clone(), right: half })
    }

    /// `L_i`: `n` points on the left joined at `i, i+1`, `n-2` on the right.
    pub fn l(n: usize, i: usize) -> Result<Self> {
        Ok(Diagram { left: Diagram::cup(n, i)?, right: LinkPattern::all_defects(n - 2) })
    }

    /// `R_i`: the reflection of `L_i`.
    pub fn r(n: usize, i: usize) -> Result<Self> {
        Ok(Diagram::l(n, i)?.reflect())
    }

    fn cup(n: usize, i: usize) -> Result<LinkPattern> {
        if i == 0 || i >= n {
            return Err(Error::Range(format!("generator index {i} outside 1..{}", n.saturating_sub(1))));
        }
        let mut p = vec![None; n];
        p[i - 1] = Some(i);
        p[i] = Some(i - 1);
        Ok(LinkPattern::from_partners_unchecked(p))
    }

    /// Partner of every boundary point; left points are `0..n`, right points `n..n+m`.
    pub fn partners(&self) -> Vec<usize> {
        let n = self.n();
        let mut out = vec![0; n + self.m()];
        for (j, p) in self.left.partners().iter().enumerate() {
            if let Some(k) = p {
                out[j] = *k;
            }
        }
        for (j, p) in self.right.partners().iter().enumerate() {
            if let Some(k) = p {
                out[n + j] = n + k;
            }
        }
        for (a, b) in self.left.defects().into_iter().zip(self.right.defects()) {
            out[a] = n + b;
            out[n + b] = a;
        }
        out
    }

    pub fn from_partners(n: usize, m: usize, p: &[usize]) -> Self {
        let left = (0..n).map(|j| (p[j] < n).then_some(p[j])).collect();
        let right = (0..m).map(|j| (p[n + j] >= n).then(|| p[n + j] - n)).collect();
        Diagram {
            left: LinkPattern::from_partners_unchecked(left),
            right: LinkPattern::from_partners_unchecked(right),
        }
    }

    /// Concatenation; returns the diagram and the number of closed loops.
    pub fn compose(&self, o: &Diagram) -> (Diagram, u32) {
        assert_eq!(self.m(), o.n(), "diagram shapes do not match");
        let (n1, mid, m2) = (self.n(), self.m(), o.m());
        if mid == 0 {
            return (self.tensor(o), 0);
        }
        let a = self.partners();
        let b = o.partners();
        let mut res = vec![usize::MAX; n1 + m2];
        let mut seen = vec![false; mid];
        // walk a strand starting at an outer point until it exits again
        let follow = |mut in_a: bool, mut p: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                if in_a {
                    let q = a[p];
                    if q < n1 {
                        return q;
                    }
                    seen[q - n1] = true;
                    in_a = false;
                    p = q - n1;
                } else {
                    let q = b[p];
                    if q >= mid {
                        return n1 + q - mid;
                    }
                    seen[q] = true;
                    in_a = true;
                    p = n1 + q;
                }
            }
        };
        for x in 0..n1 + m2 {
            if res[x] != usize::MAX {
                continue;
            }
            let y = if x < n1 { follow(true, x, &mut seen) } else { follow(false, mid + x - n1, &mut seen) };
            res[x] = y;
            res[y] = x;
        }
        let mut loops = 0;
        for j in 0..mid {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            let mut p = n1 + j;
            loop {
                let jj = a[p] - n1;
                seen[jj] = true;
                let q = b[jj];
                seen[q] = true;
                if q == j {
                    break;
                }
                p = n1 + q;
            }
            loops += 1;
        }
        (Diagram::from_partners(n1, m2, &res), loops)
    }

    /// Stacks `o` below `self`.
    pub fn tensor(&self, o: &Diagram) -> Diagram {
        let cat = |a: &LinkPattern, b: &LinkPattern| {
            let off = a.n();
            let p = a.partners().iter().cloned().chain(b.partners().iter().map(|x| x.map(|k| k + off))).collect();
            LinkPattern::from_partners_unchecked(p)
        };
        Diagram { left: cat(&self.left, &o.left), right: cat(&self.right, &o.right) }
    }

    /// Mirror image about a vertical axis.
    pub fn reflect(&self) -> Diagram {
        Diagram { left: self.right.clone(), right: self.left.clone() }
    }

    /// Whether a link joins two points of one bin on either side.
    pub fn has_intra_bin(&self, left: &MultiIndex, right: &MultiIndex) -> bool {
        (!left.is_flat() && self.left.has_intra_bin_link(left))
            || (!right.is_flat() && self.right.has_intra_bin_link(right))
    }

    /// Loops of the closure joining left point `j` to right point `j`.
    pub fn closure_loops(&self) -> u32 {
        let n = self.n();
        assert_eq!(n, self.m(), "closure needs a square diagram");
        let p = self.partners();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            let mut x = start;
            loop {
                seen[x] = true;
                let y = p[x];
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
                if x == start {
                    break;
                }
            }
            loops += 1;
        }
        loops
    }

    /// Standard form `L_{i_l} ... L_{i_1} 1_s R_{j_1} ... R_{j_k}`.
    pub fn standard_form(&self) -> StandardForm {
        fn peel(p: &LinkPattern) -> Vec<usize> {
            let mut partner: Vec<Option<usize>> = p.partners().to_vec();
            let mut out = Vec::new();
            // innermost-lowest link is adjacent; remove and record, repeat
            while let Some(a) = (0..partner.len()).rev().find(|&j| partner[j].is_some_and(|k| k > j)) {
                debug_assert_eq!(partner[a], Some(a + 1));
                out.push(a + 1);
                partner.drain(a..a + 2);
                for x in partner.iter_mut().flatten() {
                    if *x > a {
                        *x -= 2;
                    }
                }
            }
            out.reverse();
            out
        }
        StandardForm { left: peel(&self.left), s: self.through(), right: peel(&self.right) }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.left, self.right)
    }
}

/// `left = [i_1 < ... < i_l]`, `right = [j_1 < ... < j_k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardForm {
    pub left: Vec<usize>,
    pub s: usize,
    pub right: Vec<usize>,
}

impl StandardForm {
    pub fn recompose(&self) -> Diagram {
        let mut d = Diagram::identity(self.s);
        let mut n = self.s;
        for &i in &self.left {
            n += 2;
            d = Diagram::l(n, i).expect("valid index").compose(&d).0;
        }
        let mut m = self.s;
        for &j in &self.right {
            m += 2;
            d = d.compose(&Diagram::r(m, j).expect("valid index")).0;
        }
        d
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.left.iter().rev().map(|i| format!("L{i}")).collect();
        if parts.is_empty() && self.right.is_empty() {
            parts.push("1".into());
        }
        parts.extend(self.right.iter().map(|j| format!("R{j}")));
        write!(f, "{}", parts.join("*"))
    }
}

/// Valenced diagrams from `ς` to `ϖ`: pairs of special patterns with equal defect count.
pub fn diagram_basis(left: &MultiIndex, right: &MultiIndex) -> Vec<Diagram> {
    use crate::combin::valenced_link_patterns;
    let mut out = Vec::new();
    for s in crate::combin::defect_set(left) {
        let ls = valenced_link_patterns(left, s);
        let rs = valenced_link_patterns(right, s);
        for a in &ls {
            for b in &rs {
                out.push(Diagram { left: a.base.clone(), right: b.base.clone() });
            }
        }
    }
    out
}
