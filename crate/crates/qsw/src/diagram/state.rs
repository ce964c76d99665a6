use std::fmt;

use super::{Diagram, Tangle};
use crate::combin::{valenced_link_patterns, LinkPattern, MultiIndex, ValencedLinkPattern};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{QSpec, Scalar};

/// Linear combination of `(ς, s)`-valenced link patterns, kept as a tangle
/// from `ς` to `s` through lines.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkState(pub Tangle);

impl LinkState {
    pub fn pattern(alpha: &LinkPattern, mi: &MultiIndex, q: &QSpec) -> Result<Self> {
        let s = alpha.s();
        let d = Diagram { left: alpha.clone(), right: LinkPattern::all_defects(s) };
        Ok(LinkState(Tangle::from_diagram(d, mi.clone(), MultiIndex::flat(s), q)?))
    }

    pub fn valenced(alpha: &ValencedLinkPattern, q: &QSpec) -> Result<Self> {
        LinkState::pattern(&alpha.base, &alpha.multiindex, q)
    }

    pub fn multiindex(&self) -> &MultiIndex {
        &self.0.left
    }

    pub fn s(&self) -> usize {
        self.0.right.n()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LinkPattern, &Scalar)> {
        self.0.terms().map(|(d, c)| (&d.left, c))
    }

    pub fn coeff(&self, alpha: &LinkPattern) -> Scalar {
        self.0.coeff(&Diagram { left: alpha.clone(), right: LinkPattern::all_defects(self.s()) })
    }

    pub fn add(&self, o: &LinkState) -> Result<LinkState> {
        Ok(LinkState(self.0.add(&o.0)?))
    }

    pub fn scale(&self, c: &Scalar) -> LinkState {
        LinkState(self.0.scale(c))
    }

    /// `T α`; terms where a defect turns back are dropped.
    pub fn act(&self, t: &Tangle) -> Result<LinkState> {
        let full = t.compose(&self.0)?;
        let mut out = Tangle::zero(full.left.clone(), full.right.clone(), &full.q);
        for (d, c) in full.terms() {
            if d.right.s() == d.right.n() {
                out.insert_term(d.clone(), c.clone());
            }
        }
        Ok(LinkState(out))
    }

    /// Flat state `P_ς α` on `n_ς` nodes.
    pub fn embed(&self) -> Result<LinkState> {
        let p = super::jw_tensor(self.multiindex(), &self.0.q)?;
        let flat = Tangle::zero(MultiIndex::flat(self.multiindex().n()), self.0.right.clone(), &self.0.q);
        Ok(LinkState(p.compose(&relabel(&self.0, flat))?))
    }
}

fn relabel(t: &Tangle, mut shell: Tangle) -> Tangle {
    for (d, c) in t.terms() {
        shell.insert_term(d.clone(), c.clone());
    }
    shell
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(a, c)| format!("{c}*[{a}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `⟨ᾱ, β⟩`: the network of the reflected `α` glued to `β`, projectors inserted.
pub fn ls_pairing(alpha: &LinkState, beta: &LinkState) -> Result<Scalar> {
    if alpha.multiindex() != beta.multiindex() {
        return Err(Error::Shape(format!(
            "pairing states over {} and {}",
            alpha.multiindex(),
            beta.multiindex()
        )));
    }
    let net = alpha.0.reflect().compose(&beta.0)?;
    let mut acc = Scalar::zero();
    for (d, c) in net.terms() {
        if d.is_identity() {
            acc = &acc + c;
        }
    }
    Ok(acc)
}

/// Gram matrix of the pairing on the `(ς, s)` pattern basis in walk order.
pub fn gram_matrix(mi: &MultiIndex, s: u32, q: &QSpec) -> Result<Mat> {
    let states = valenced_link_patterns(mi, s)
        .iter()
        .map(|a| LinkState::valenced(a, q))
        .collect::<Result<Vec<_>>>()?;
    let n = states.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = ls_pairing(&states[i], &states[j])?;
            g.set(i, j, x.clone());
            g.set(j, i, x);
        }
    }
    Ok(g)
}

/// `dim rad L_ς^(s)`.
pub fn radical_dim(mi: &MultiIndex, s: u32, q: &QSpec) -> Result<usize> {
    let g = gram_matrix(mi, s, q)?;
    Ok(g.cols - g.rank())
}
