//! `U_q(sl2)` and its bar twin acting on type-one tensor modules
//! `V_ς = V_(s_1) ⊗ ... ⊗ V_(s_d)`, from the left and from the right.
//!
//! A basis vector `e_(l_1) ⊗ ... ⊗ e_(l_d)` is stored at the mixed-radix index
//! of `(l_1, ..., l_d)` with the first tensorand most significant, so the
//! coordinates of `v ⊗ w` are the Kronecker product of those of `v` and `w`.
//! Matrices act on coordinate columns for both sides: the matrix of `x` on the
//! right module sends the coordinates of `v̄` to those of `v̄.x`.

mod hw;


use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

pub use hw::{
    cb_pairing_expected, conformal_block, conformal_block_basis, descendant, embedding, hat_projection,
    hw_space, link_pattern_basis, pair_maps, projector, singlet, theta_basis, theta_explicit, w_state,
    w_vector, HwBasis, PairMaps, Provenance,
};

use crate::combin::MultiIndex;
use crate::error::{Error, Result};
use crate::linalg::{axpy, scale, vec_eq, Mat, SparseVec};
use crate::scalar::{q_binomial, q_factorial, q_int, QSpec, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Algebra generators. `H` only exists at `q = 1`, where it replaces `K`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    E,
    F,
    K,
    Kinv,
    H,
}

/// Mixed-radix index of `(l_1, ..., l_d)`.
pub fn encode(mi: &MultiIndex, idx: &[u32]) -> usize {
    mi.entries().iter().zip(idx).fold(0, |acc, (s, l)| acc * (*s as usize + 1) + *l as usize)
}

pub fn decode(mi: &MultiIndex, mut k: usize) -> Vec<u32> {
    let mut out = vec![0; mi.d()];
    for (j, s) in mi.entries().iter().enumerate().rev() {
        let b = *s as usize + 1;
        out[j] = (k % b) as u32;
        k /= b;
    }
    out
}

/// Grade `n_ς - 2(l_1 + ... + l_d)`: the `K`-eigenvalue is `q` to this power.
pub fn grade_of(mi: &MultiIndex, k: usize) -> i64 {
    mi.n() as i64 - 2 * decode(mi, k).iter().map(|&l| l as i64).sum::<i64>()
}

/// Indices of the grade-`s` basis vectors.
pub fn grade_indices(mi: &MultiIndex, s: i64) -> Vec<usize> {
    (0..mi.module_dim()).filter(|&k| grade_of(mi, k) == s).collect()
}

/// Action of one generator on `e_l` (or `ē_l`) in `V_(s)`.
fn single(side: Side, bar: bool, g: Gen, s: u32, l: u32, q: &QSpec) -> Option<(u32, Scalar)> {
    let w = s as i64 - 2 * l as i64;
    let up = |l: u32| (l < s).then_some(l + 1);
    let down = |l: u32| (l > 0).then(|| (l - 1, q_int(l as i64, q) * q_int((s - l + 1) as i64, q)));
    match g {
        Gen::K => Some((l, q.q_pow(w))),
        Gen::Kinv => Some((l, q.q_pow(-w))),
        Gen::H => Some((l, Scalar::int(w))),
        Gen::E | Gen::F => {
            let raise = (side == Side::Left) == (g == Gen::F);
            let (nl, c) = if raise { (up(l)?, Scalar::one()) } else { down(l)? };
            if !bar {
                return Some((nl, c));
            }
            let e = match (side, g) {
                (Side::Left, Gen::F) => w - 1,
                (Side::Left, _) => -1 - w,
                (Side::Right, Gen::E) => 1 - w,
                (Side::Right, _) => 1 + w,
            };
            Some((nl, c * q.q_pow(e)))
        }
    }
}

type GenKey = (String, Vec<u32>, Side, bool, u8);

static GEN_CACHE: Lazy<Mutex<HashMap<GenKey, Arc<Mat>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Matrix of a generator on `V_ς` (left) or `V̄_ς` (right).
///
/// `E` and `F̄` carry `K` on the later tensorands, `F` and `Ē` carry `K^-1`
/// on the earlier ones; `K` acts diagonally and `H` additively.
pub fn generator(mi: &MultiIndex, side: Side, bar: bool, g: Gen, q: &QSpec) -> Result<Arc<Mat>> {
    if g == Gen::H && !q.is_classical() {
        return Err(Error::Mode("H is only available at q = 1".into()));
    }
    let key = (q.key(), mi.entries().to_vec(), side, bar, g as u8);
    if let Some(m) = GEN_CACHE.lock().get(&key) {
        return Ok(m.clone());
    }
    let dim = mi.module_dim();
    let ents = mi.entries();
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        let idx = decode(mi, k);
        let mut col = SparseVec::new();
        match g {
            Gen::K | Gen::Kinv => {
                let mut c = Scalar::one();
                for (j, &l) in idx.iter().enumerate() {
                    c = c * single(side, bar, g, ents[j], l, q).unwrap().1;
                }
                col.insert(k, c);
            }
            Gen::H => {
                col.insert(k, Scalar::int(grade_of(mi, k)));
            }
            Gen::E | Gen::F => {
                // E and F̄ pick up K after position i; F and Ē pick up K^-1 before it
                let later = (g == Gen::E) != bar;
                for i in 0..idx.len() {
                    let Some((nl, mut c)) = single(side, bar, g, ents[i], idx[i], q) else { continue };
                    let range = if later { i + 1..idx.len() } else { 0..i };
                    let kg = if later { Gen::K } else { Gen::Kinv };
                    for j in range {
                        c = c * single(side, bar, kg, ents[j], idx[j], q).unwrap().1;
                    }
                    let mut out = idx.clone();
                    out[i] = nl;
                    let t = encode(mi, &out);
                    axpy(&mut col, &c, &SparseVec::from([(t, Scalar::one())]));
                }
            }
        }
        col.retain(|_, x| !x.is_zero());
        cols.push(col);
    }
    let m = Arc::new(Mat::from_columns(dim, cols));
    GEN_CACHE.lock().insert(key, m.clone());
    Ok(m)
}

/// Combination of PBW monomials `E^k K^m F^l` (or their bar versions).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub bar: bool,
    terms: BTreeMap<(u32, i64, u32), Scalar>,
}

impl AlgebraElement {
    pub fn zero(bar: bool) -> Self {
        AlgebraElement { bar, terms: BTreeMap::new() }
    }

    pub fn monomial(bar: bool, k: u32, m: i64, l: u32) -> Self {
        AlgebraElement { bar, terms: BTreeMap::from([((k, m, l), Scalar::one())]) }
    }

    pub fn one() -> Self {
        Self::monomial(false, 0, 0, 0)
    }

    pub fn e() -> Self {
        Self::monomial(false, 1, 0, 0)
    }

    pub fn f() -> Self {
        Self::monomial(false, 0, 0, 1)
    }

    pub fn k() -> Self {
        Self::monomial(false, 0, 1, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        if self.bar != o.bar {
            return Err(Error::Shape("adding elements of the plain and bar algebras".into()));
        }
        let mut out = self.clone();
        for (key, c) in &o.terms {
            let x = out.terms.remove(key).unwrap_or_else(Scalar::zero) + c.clone();
            if !x.is_zero() {
                out.terms.insert(*key, x);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let terms = self.terms.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect();
        AlgebraElement { bar: self.bar, terms }
    }

    /// `(E^k K^m F^l)* = Ē^l K̄^m F̄^k`, and back.
    pub fn star(&self) -> AlgebraElement {
        let terms = self.terms.iter().map(|(&(k, m, l), c)| ((l, m, k), c.clone())).collect();
        AlgebraElement { bar: !self.bar, terms }
    }

    /// Matrix on `V_ς` or `V̄_ς`.
    pub fn matrix(&self, mi: &MultiIndex, side: Side, q: &QSpec) -> Result<Mat> {
        let dim = mi.module_dim();
        let e = generator(mi, side, self.bar, Gen::E, q)?;
        let f = generator(mi, side, self.bar, Gen::F, q)?;
        let mut out = Mat::zeros(dim, dim);
        for (&(k, m, l), c) in &self.terms {
            let kk = generator(mi, side, self.bar, if m < 0 { Gen::Kinv } else { Gen::K }, q)?;
            let pw = |g: &Mat, e: u64| (0..e).fold(Mat::identity(dim), |acc, _| acc.mul(g));
            let (me, mk, mf) = (pw(&e, k as u64), pw(&kk, m.unsigned_abs()), pw(&f, l as u64));
            let mono = match side {
                Side::Left => me.mul(&mk).mul(&mf),
                Side::Right => mf.mul(&mk).mul(&me),
            };
            out = out.add(&mono.scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let b = if self.bar { "~" } else { "" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, m, l), c)| format!("{c}*E{b}^{k}K{b}^{m}F{b}^{l}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Vector of `V_ς` (left) or `V̄_ς` (right) in the standard basis.
#[derive(Clone, Debug)]
pub struct ModuleVector {
    pub multiindex: MultiIndex,
    pub side: Side,
    pub coords: SparseVec,
}

impl ModuleVector {
    pub fn zero(mi: &MultiIndex, side: Side) -> Self {
        ModuleVector { multiindex: mi.clone(), side, coords: SparseVec::new() }
    }

    pub fn new(mi: &MultiIndex, side: Side, mut coords: SparseVec) -> Self {
        coords.retain(|_, x| !x.is_zero());
        ModuleVector { multiindex: mi.clone(), side, coords }
    }

    pub fn basis(mi: &MultiIndex, side: Side, idx: &[u32]) -> Result<Self> {
        if idx.len() != mi.d() || idx.iter().zip(mi.entries()).any(|(l, s)| l > s) {
            return Err(Error::Range(format!("index {idx:?} outside {mi}")));
        }
        Ok(ModuleVector::new(mi, side, SparseVec::from([(encode(mi, idx), Scalar::one())])))
    }

    /// `e_0 ⊗ ... ⊗ e_0`.
    pub fn top(mi: &MultiIndex, side: Side) -> Self {
        ModuleVector::new(mi, side, SparseVec::from([(0, Scalar::one())]))
    }

    pub fn dim(&self) -> usize {
        self.multiindex.module_dim()
    }

    pub fn get(&self, idx: &[u32]) -> Scalar {
        self.coords.get(&encode(&self.multiindex, idx)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<u32>, &Scalar)> + '_ {
        self.coords.iter().map(|(k, c)| (decode(&self.multiindex, *k), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|x| x.is_zero())
    }

    fn check(&self, o: &ModuleVector) -> Result<()> {
        if self.multiindex != o.multiindex || self.side != o.side {
            return Err(Error::Shape(format!(
                "{} vector over {} against {} vector over {}",
                self.side, self.multiindex, o.side, o.multiindex
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &ModuleVector) -> Result<ModuleVector> {
        self.check(o)?;
        let mut c = self.coords.clone();
        axpy(&mut c, &Scalar::one(), &o.coords);
        Ok(ModuleVector::new(&self.multiindex, self.side, c))
    }

    pub fn sub(&self, o: &ModuleVector) -> Result<ModuleVector> {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        ModuleVector::new(&self.multiindex, self.side, scale(&self.coords, c))
    }

    pub fn approx_eq(&self, o: &ModuleVector) -> bool {
        self.multiindex == o.multiindex && self.side == o.side && vec_eq(&self.coords, &o.coords)
    }

    pub fn apply(&self, m: &Mat) -> ModuleVector {
        ModuleVector::new(&self.multiindex, self.side, m.apply(&self.coords))
    }

    /// `x.v` on the left, `v̄.x` on the right.
    pub fn act(&self, x: &AlgebraElement, q: &QSpec) -> Result<ModuleVector> {
        Ok(self.apply(&x.matrix(&self.multiindex, self.side, q)?))
    }

    pub fn act_gen(&self, g: Gen, bar: bool, q: &QSpec) -> Result<ModuleVector> {
        Ok(self.apply(&*generator(&self.multiindex, self.side, bar, g, q)?))
    }

    pub fn tensor(&self, o: &ModuleVector) -> Result<ModuleVector> {
        if self.side != o.side {
            return Err(Error::Shape("tensoring a left and a right vector".into()));
        }
        let b = o.dim();
        let mut c = SparseVec::new();
        for (i, x) in &self.coords {
            for (j, y) in &o.coords {
                c.insert(i * b + j, x * y);
            }
        }
        Ok(ModuleVector::new(&self.multiindex.concat(&o.multiindex), self.side, c))
    }

    pub fn grade_decompose(&self) -> BTreeMap<i64, ModuleVector> {
        let mut out: BTreeMap<i64, SparseVec> = BTreeMap::new();
        for (k, c) in &self.coords {
            out.entry(grade_of(&self.multiindex, *k)).or_default().insert(*k, c.clone());
        }
        out.into_iter().map(|(s, c)| (s, ModuleVector::new(&self.multiindex, self.side, c))).collect()
    }

    /// Grade of a nonzero homogeneous vector.
    pub fn grade(&self) -> Option<i64> {
        let g = self.grade_decompose();
        (g.len() == 1).then(|| *g.keys().next().unwrap())
    }

    /// `e_l* = q^(-l(s-l)) ē_l` and `ē_l* = q^(l(s-l)) e_l`, tensorand-wise.
    pub fn star(&self, q: &QSpec) -> ModuleVector {
        let sign = if self.side == Side::Left { -1 } else { 1 };
        let ents = self.multiindex.entries();
        let coords = self
            .coords
            .iter()
            .map(|(k, c)| {
                let e: i64 = decode(&self.multiindex, *k)
                    .iter()
                    .zip(ents)
                    .map(|(&l, &s)| l as i64 * (s as i64 - l as i64))
                    .sum();
                (*k, c * &q.q_pow(sign * e))
            })
            .collect();
        ModuleVector::new(&self.multiindex, flip(self.side), coords)
    }

    /// The `q -> q^-1` companion: `e_l -> [l]!/([s]![s-l]!) ē_(s-l)` and
    /// `ē_l -> [l]![s]!/[s-l]! e_(s-l)`, tensorand-wise.
    pub fn op(&self, q: &QSpec) -> Result<ModuleVector> {
        let ents = self.multiindex.entries();
        let mut coords = SparseVec::new();
        for (k, c) in &self.coords {
            let idx = decode(&self.multiindex, *k);
            let mut x = c.clone();
            let mut out = Vec::with_capacity(idx.len());
            for (&l, &s) in idx.iter().zip(ents) {
                let (a, b, d) = (q_factorial(l, q), q_factorial(s, q), q_factorial(s - l, q));
                x = match self.side {
                    Side::Left => {
                        let den = (b * d).inv().ok_or_else(|| Error::Vanishing(format!("[{s}]! in op")))?;
                        x * a * den
                    }
                    Side::Right => {
                        let den = d.inv().ok_or_else(|| Error::Vanishing(format!("[{}]! in op", s - l)))?;
                        x * a * b * den
                    }
                };
                out.push(s - l);
            }
            coords.insert(encode(&self.multiindex, &out), x);
        }
        Ok(ModuleVector::new(&self.multiindex, flip(self.side), coords))
    }
}

fn flip(s: Side) -> Side {
    match s {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

impl PartialEq for ModuleVector {
    fn eq(&self, o: &Self) -> bool {
        self.approx_eq(o)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let e = if self.side == Side::Left { "e" } else { "ē" };
        let parts: Vec<String> = self
            .entries()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(|l| l.to_string()).collect();
                format!("({c})*{e}[{}]", idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal of the invariant pairing: `∏ [l_k]!^2 binom(s_k, l_k)`.
pub fn pairing_weight(mi: &MultiIndex, k: usize, q: &QSpec) -> Scalar {
    let mut c = Scalar::one();
    for (&l, &s) in decode(mi, k).iter().zip(mi.entries()) {
        let f = q_factorial(l, q);
        c = c * &f * &f * q_binomial(s as i64, l as i64, q);
    }
    c
}

/// `⟨v̄, w⟩` for a right vector `v̄` and a left vector `w`.
pub fn pairing(vbar: &ModuleVector, w: &ModuleVector, q: &QSpec) -> Result<Scalar> {
    if vbar.side != Side::Right || w.side != Side::Left {
        return Err(Error::Shape("the pairing takes a right vector and a left vector".into()));
    }
    if vbar.multiindex != w.multiindex {
        return Err(Error::Shape(format!("pairing over {} and {}", vbar.multiindex, w.multiindex)));
    }
    let mut acc = Scalar::zero();
    for (k, x) in &vbar.coords {
        if let Some(y) = w.coords.get(k) {
            acc = acc + x * y * pairing_weight(&w.multiindex, *k, q);
        }
    }
    Ok(acc)
}

/// The companion form on left vectors: `∏ δ(l_k + m_k, s_k)` on basis vectors.
pub fn alt_pairing(v: &ModuleVector, w: &ModuleVector) -> Result<Scalar> {
    if v.side != w.side || v.multiindex != w.multiindex {
        return Err(Error::Shape("alternative pairing needs two vectors of one module".into()));
    }
    let mi = &v.multiindex;
    let mut acc = Scalar::zero();
    for (k, x) in &v.coords {
        let dual: Vec<u32> = decode(mi, *k).iter().zip(mi.entries()).map(|(l, s)| s - l).collect();
        if let Some(y) = w.coords.get(&encode(mi, &dual)) {
            acc = acc + x * y;
        }
    }
    Ok(acc)
}

/// Diagonal matrix of pairing weights.
pub fn pairing_matrix(mi: &MultiIndex, q: &QSpec) -> Mat {
    let dim = mi.module_dim();
    let mut g = Mat::zeros(dim, dim);
    for k in 0..dim {
        g.set(k, k, pairing_weight(mi, k, q));
    }
    g
}

/// Matrix of `E^k K^m F^l` on `V_a ⊗ V_b` computed from the closed form of its
/// coproduct, for comparison with the iterated generator action.
pub fn coproduct_power_matrix(a: &MultiIndex, b: &MultiIndex, k: u32, m: i64, l: u32, q: &QSpec) -> Result<Mat> {
    let dim = a.module_dim() * b.module_dim();
    let mut out = Mat::zeros(dim, dim);
    for i in 0..=k {
        for j in 0..=l {
            let (i6, j6, k6, l6) = (i as i64, j as i64, k as i64, l as i64);
            let c = q.q_pow(i6 * (k6 - i6) - j6 * (l6 - j6)) * q_binomial(k6, i6, q) * q_binomial(l6, j6, q);
            let x = AlgebraElement::monomial(false, k - i, m - l6 + j6, j).matrix(a, Side::Left, q)?;
            let y = AlgebraElement::monomial(false, i, m + k6 - i6, l - j).matrix(b, Side::Left, q)?;
            out = out.add(&x.kron(&y).scale(&c));
        }
    }
    Ok(out)
}
