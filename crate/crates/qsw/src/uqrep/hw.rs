use std::fmt;

use super::{generator, grade_indices, pairing, Gen, ModuleVector, Side};
use crate::combin::{valenced_link_patterns, walks_over, LinkPattern, MultiIndex, ValencedLinkPattern, Walk};
use crate::diagram::LinkState;
use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseVec};
use crate::scalar::{q_factorial, theta, QSpec, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Nullspace,
    LinkPattern,
    ConformalBlock,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Nullspace => "nullspace",
            Provenance::LinkPattern => "link-pattern",
            Provenance::ConformalBlock => "conformal-block",
        })
    }
}

/// A family of highest-weight vectors of one grade.
#[derive(Clone, Debug)]
pub struct HwBasis {
    pub multiindex: MultiIndex,
    pub s: u32,
    pub provenance: Provenance,
    pub vectors: Vec<ModuleVector>,
}

impl HwBasis {
    pub fn rank(&self) -> usize {
        crate::linalg::rank(self.vectors.iter().map(|v| v.coords.clone()))
    }
}

fn inv(x: Scalar, what: impl FnOnce() -> String) -> Result<Scalar> {
    x.inv().ok_or_else(|| Error::Vanishing(what()))
}

/// `H_ς^(s)`: the kernel of `E` (left) or of `.F` (right) on grade `s`, as an echelon basis.
pub fn hw_space(mi: &MultiIndex, s: u32, side: Side, q: &QSpec) -> Result<HwBasis> {
    let g = if side == Side::Left { Gen::E } else { Gen::F };
    let m = generator(mi, side, false, g, q)?;
    let cols = grade_indices(mi, s as i64);
    let sub = Mat::from_columns(m.rows, cols.iter().map(|&c| m.col[c].clone()).collect());
    let vectors = sub
        .kernel()
        .into_iter()
        .map(|k| ModuleVector::new(mi, side, k.into_iter().map(|(j, x)| (cols[j], x)).collect()))
        .collect();
    Ok(HwBasis { multiindex: mi.clone(), s, provenance: Provenance::Nullspace, vectors })
}

fn power_of_q_diff(k: u32, q: &QSpec) -> Result<Scalar> {
    if q.is_classical() {
        return Ok(Scalar::one());
    }
    let d = q.q() - q.q_pow(-1);
    inv(d, || "q - q^-1".into())?.pow(k as i64).ok_or(Error::Vanishing("q - q^-1".into()))
}

/// The conformal-block vector `u^ρ` (left) or `ū^ρ` (right) for a walk over `ς`.
///
/// Built by the two-tensorand recursion from `e_0` of the first tensorand. At
/// `q = 1` the normalizing power of `q - q^-1` is omitted.
pub fn conformal_block(walk: &Walk, mi: &MultiIndex, side: Side, q: &QSpec) -> Result<ModuleVector> {
    if !walk.is_over(mi) {
        return Err(Error::Pattern(format!("{walk} is not a walk over {mi}")));
    }
    let h = walk.heights();
    let ents = mi.entries();
    let max_hat = h[..h.len() - 1].iter().copied().max().unwrap_or(0).max(mi.max());
    if !q.jw_ok(max_hat) {
        return Err(Error::JwUndefined { size: max_hat, order: q.order().to_string() });
    }
    let first = MultiIndex::single(ents[0]);
    let mut v = ModuleVector::top(&first, side);
    for j in 1..ents.len() {
        let (r, s, t) = (h[j - 1], h[j], ents[j]);
        let k = (r + t - s) / 2;
        let norm = power_of_q_diff(k, q)?;
        let den = inv(q_factorial(r, q) * q_factorial(t, q), || format!("[{r}]![{t}]!"))?;
        let tmi = MultiIndex::single(t);
        let mut acc = ModuleVector::zero(&v.multiindex.concat(&tmi), side);
        let mut cur = v.clone();
        for i in 0..=k.min(r) {
            let jj = k - i;
            // cur = F^i.v on the left, v.E^i on the right
            let sign = if (if side == Side::Left { jj } else { i }) % 2 == 0 { 1 } else { -1 };
            let qe = match side {
                Side::Left => (jj as i64) * (t as i64 + 1 - jj as i64),
                Side::Right => -(i as i64) * (r as i64 + 1 - i as i64),
            };
            let fi = inv(q_factorial(i, q) * q_factorial(jj, q), || format!("[{i}]![{jj}]!"))?;
            let c = Scalar::int(sign) * q.q_pow(qe) * q_factorial(r - i, q) * q_factorial(t - jj, q) * fi * &den * &norm;
            let ej = ModuleVector::basis(&tmi, side, &[jj])?;
            acc = acc.add(&cur.tensor(&ej)?.scale(&c))?;
            let g = if side == Side::Left { Gen::F } else { Gen::E };
            cur = cur.act_gen(g, false, q)?;
        }
        v = acc;
    }
    Ok(v)
}

/// Closed form of `⟨ū^ρ, u^ρ⟩`: a product of `Θ(r, s, t) / ((-1)^s [s+1])` over the
/// steps of the walk, each divided by `(q - q^-1)^(r+t-s) [(r+t-s)/2]!^2`.
pub fn cb_pairing_expected(walk: &Walk, mi: &MultiIndex, q: &QSpec) -> Result<Scalar> {
    let h = walk.heights();
    let ents = mi.entries();
    let mut acc = Scalar::one();
    for j in 0..h.len().saturating_sub(1) {
        let (r, s, t) = (h[j], h[j + 1], ents[j + 1]);
        let k = (r + t - s) / 2;
        let fk = q_factorial(k, q);
        let den = power_of_q_diff(2 * k, q)? * inv(&fk * &fk * crate::scalar::q_int(s as i64 + 1, q), || {
            format!("[{k}]!^2 [{}]", s + 1)
        })?;
        let sign = if s % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
        acc = acc * theta(r, s, t, q)? * den * sign;
    }
    Ok(acc)
}

pub fn conformal_block_basis(mi: &MultiIndex, s: u32, side: Side, q: &QSpec) -> Result<HwBasis> {
    let vectors = walks_over(mi)
        .iter()
        .filter(|w| w.defect() == s)
        .map(|w| conformal_block(w, mi, side, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(HwBasis { multiindex: mi.clone(), s, provenance: Provenance::ConformalBlock, vectors })
}

/// `i q^(1/2) ε_0 ⊗ ε_1 - i q^(-1/2) ε_1 ⊗ ε_0` (same coefficients for the right singlet).
pub fn singlet(side: Side, q: &QSpec) -> ModuleVector {
    let iv = q.i() * q.v();
    let ivinv = q.i() * q.v_pow(-1);
    ModuleVector::new(&MultiIndex::flat(2), side, SparseVec::from([(1, iv), (2, -ivinv)]))
}

/// Coordinates on `V_(1^n)` of the nested singlets of a flat pattern, `ε_0` on defects.
fn w_flat(alpha: &LinkPattern, q: &QSpec) -> SparseVec {
    let n = alpha.n();
    let iv = q.i() * q.v();
    let ivinv = -(q.i() * q.v_pow(-1));
    let mut out = SparseVec::from([(0usize, Scalar::one())]);
    for (a, b) in alpha.links() {
        let (ba, bb) = (1usize << (n - 1 - a), 1usize << (n - 1 - b));
        out = out.into_iter().flat_map(|(k, c)| [(k | bb, &c * &iv), (k | ba, &c * &ivinv)]).collect();
    }
    out
}

/// `w_α` (left) or `w̄_ᾱ` (right) of a linear combination of valenced patterns.
pub fn w_state(state: &LinkState, side: Side, q: &QSpec) -> Result<ModuleVector> {
    let mi = state.multiindex().clone();
    let flat = state.embed()?;
    let mut acc = SparseVec::new();
    for (alpha, c) in flat.terms() {
        crate::linalg::axpy(&mut acc, c, &w_flat(alpha, q));
    }
    let v = ModuleVector::new(&MultiIndex::flat(mi.n()), side, acc);
    if mi.is_flat() {
        return Ok(v);
    }
    Ok(ModuleVector::new(&mi, side, hat_projection(&mi, side, q)?.apply(&v.coords)))
}

pub fn w_vector(alpha: &ValencedLinkPattern, side: Side, q: &QSpec) -> Result<ModuleVector> {
    w_state(&LinkState::valenced(alpha, q)?, side, q)
}

pub fn link_pattern_basis(mi: &MultiIndex, s: u32, side: Side, q: &QSpec) -> Result<HwBasis> {
    let vectors = valenced_link_patterns(mi, s)
        .iter()
        .map(|a| w_vector(a, side, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(HwBasis { multiindex: mi.clone(), s, provenance: Provenance::LinkPattern, vectors })
}

/// `θ_l^(n) = F^l.ε_0^⊗n` (left) or `θ̄_l^(n) = θ̄_0.E^l` (right).
pub fn theta_basis(n: usize, l: u32, side: Side, q: &QSpec) -> Result<ModuleVector> {
    if l as usize > n {
        return Err(Error::Range(format!("theta index {l} exceeds {n}")));
    }
    let mi = MultiIndex::flat(n);
    descendant(&ModuleVector::top(&mi, side), l, q)
}

/// Closed-form sum for `θ_l^(n)` over the `l`-subsets of positions.
pub fn theta_explicit(n: usize, l: u32, side: Side, q: &QSpec) -> ModuleVector {
    let mut coords = SparseVec::new();
    let lq = l as i64;
    let pre = match side {
        Side::Left => q.q_pow(lq * (lq - 1) / 2),
        Side::Right => q.q_pow(-lq * (lq - 1) / 2),
    } * q_factorial(l, q);
    for k in 0..1usize << n {
        if k.count_ones() != l {
            continue;
        }
        // positions r_i are 1-based with the first tensorand most significant
        let e: i64 = (0..n)
            .filter(|p| k >> (n - 1 - p) & 1 == 1)
            .map(|p| match side {
                Side::Left => -(p as i64),
                Side::Right => n as i64 - 1 - p as i64,
            })
            .sum();
        coords.insert(k, &pre * &q.q_pow(e));
    }
    ModuleVector::new(&MultiIndex::flat(n), side, coords)
}

/// `F^l.v` on the left, `v̄.E^l` on the right.
pub fn descendant(v: &ModuleVector, l: u32, q: &QSpec) -> Result<ModuleVector> {
    let g = if v.side == Side::Left { Gen::F } else { Gen::E };
    let m = generator(&v.multiindex, v.side, false, g, q)?;
    let mut out = v.clone();
    for _ in 0..l {
        out = out.apply(&m);
    }
    Ok(out)
}

/// `P̂_ς : V_(1^n) -> V_ς` (or its bar version), extracting the top component of each bin.
pub fn hat_projection(mi: &MultiIndex, side: Side, q: &QSpec) -> Result<Mat> {
    let mut out = Mat::identity(1);
    for &s in mi.entries() {
        out = out.kron(&hat_single(s, side, q)?);
    }
    Ok(out)
}

fn hat_single(s: u32, side: Side, q: &QSpec) -> Result<Mat> {
    if !q.jw_ok(s) {
        return Err(Error::JwUndefined { size: s, order: q.order().to_string() });
    }
    let n = s as usize;
    let dim = 1usize << n;
    let mut rows = Mat::zeros(s as usize + 1, dim);
    for l in 0..=s {
        let th = theta_basis(n, l, Side::Left, q)?;
        let thb = theta_basis(n, l, Side::Right, q)?;
        let den = inv(pairing(&thb, &th, q)?, || format!("theta pairing at size {s}"))?;
        // row l is the functional ⟨θ̄_l, .⟩ (or ⟨., θ_l⟩) divided by ⟨θ̄_l, θ_l⟩
        let dual = if side == Side::Left { &thb } else { &th };
        for (k, x) in &dual.coords {
            let w = super::pairing_weight(&MultiIndex::flat(n), *k, q);
            rows.set(l as usize, *k, x * &w * &den);
        }
    }
    Ok(rows)
}

/// `𝔍_ς : V_ς -> V_(1^n)`, `e_l -> θ_l` in each bin.
pub fn embedding(mi: &MultiIndex, side: Side, q: &QSpec) -> Result<Mat> {
    let mut out = Mat::identity(1);
    for &s in mi.entries() {
        let cols = (0..=s)
            .map(|l| theta_basis(s as usize, l, side, q).map(|v| v.coords))
            .collect::<Result<Vec<_>>>()?;
        out = out.kron(&Mat::from_columns(1 << s, cols));
    }
    Ok(out)
}

/// `𝔓_ς = 𝔍_ς ∘ P̂_ς` on `V_(1^n)`.
pub fn projector(mi: &MultiIndex, side: Side, q: &QSpec) -> Result<Mat> {
    Ok(embedding(mi, side, q)?.mul(&hat_projection(mi, side, q)?))
}

/// `ι^s_(r,t)`, `π^((r,t);(s))` and `π̂^(r,t)_s` for one side.
#[derive(Clone, Debug)]
pub struct PairMaps {
    pub iota: Mat,
    pub pi: Mat,
    pub pi_hat: Mat,
}

pub fn pair_maps(r: u32, t: u32, s: u32, side: Side, q: &QSpec) -> Result<PairMaps> {
    let mi = MultiIndex::new(vec![r, t])?;
    let walk = Walk(vec![r, s]);
    let other = if side == Side::Left { Side::Right } else { Side::Left };
    let u = conformal_block(&walk, &mi, side, q)?;
    let ubar = conformal_block(&walk, &mi, other, q)?;
    let dim = mi.module_dim();
    let mut iota = Mat::zeros(dim, s as usize + 1);
    let mut pi_hat = Mat::zeros(s as usize + 1, dim);
    for l in 0..=s {
        let d = descendant(&u, l, q)?;
        let db = descendant(&ubar, l, q)?;
        let (left, right) = if side == Side::Left { (&db, &d) } else { (&d, &db) };
        let den = inv(pairing(left, right, q)?, || format!("pairing of u^({s})_({r},{t}) descendants"))?;
        for (k, x) in &d.coords {
            iota.set(*k, l as usize, x.clone());
        }
        for (k, x) in &db.coords {
            let w = super::pairing_weight(&mi, *k, q);
            pi_hat.set(l as usize, *k, x * &w * &den);
        }
    }
    let pi = iota.mul(&pi_hat);
    Ok(PairMaps { iota, pi, pi_hat })
}
