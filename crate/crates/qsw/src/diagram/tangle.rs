use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use super::Diagram;
use crate::combin::{LinkPattern, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::{admissible, q_int, QSpec, Scalar};

/// Linear combination of `(ς, ϖ)`-valenced diagrams. Each term is a flat
/// diagram on `n_ς` and `n_ϖ` points without links inside a bin; a flat
/// tangle is the case where both multiindices are `1^n`.
#[derive(Clone, Debug)]
pub struct Tangle {
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub q: QSpec,
    terms: BTreeMap<Diagram, Scalar>,
}

impl Tangle {
    pub fn zero(left: MultiIndex, right: MultiIndex, q: &QSpec) -> Self {
        Tangle { left, right, q: q.clone(), terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: Diagram, left: MultiIndex, right: MultiIndex, q: &QSpec) -> Result<Self> {
        if d.n() != left.n() || d.m() != right.n() {
            return Err(Error::Shape(format!("diagram {d} does not fit {left} -> {right}")));
        }
        if d.has_intra_bin(&left, &right) {
            return Err(Error::Pattern(format!("diagram {d} links two points of one bin")));
        }
        let mut t = Tangle::zero(left, right, q);
        t.terms.insert(d, Scalar::one());
        Ok(t)
    }

    pub fn flat(d: Diagram, q: &QSpec) -> Self {
        let (l, r) = (MultiIndex::flat(d.n()), MultiIndex::flat(d.m()));
        Tangle::from_diagram(d, l, r, q).expect("flat diagrams always fit")
    }

    pub fn identity(mi: &MultiIndex, q: &QSpec) -> Self {
        Tangle::from_diagram(Diagram::identity(mi.n()), mi.clone(), mi.clone(), q).expect("identity fits")
    }

    pub fn u(n: usize, i: usize, q: &QSpec) -> Result<Self> {
        Ok(Tangle::flat(Diagram::u(n, i)?, q))
    }

    pub fn l(n: usize, i: usize, q: &QSpec) -> Result<Self> {
        Ok(Tangle::flat(Diagram::l(n, i)?, q))
    }

    pub fn r(n: usize, i: usize, q: &QSpec) -> Result<Self> {
        Ok(Tangle::flat(Diagram::r(n, i)?, q))
    }

    /// Valenced `U_i` on `ς`: joins bins `i` and `i+1` by a single link.
    pub fn u_valenced(mi: &MultiIndex, i: usize, q: &QSpec) -> Result<Self> {
        let bins = mi.bins();
        if i == 0 || i >= bins.len() {
            return Err(Error::Range(format!("generator index {i} outside 1..{}", bins.len().saturating_sub(1))));
        }
        let (a, b) = (bins[i - 1].end - 1, bins[i].start);
        let mut p = vec![None; mi.n()];
        p[a] = Some(b);
        p[b] = Some(a);
        let half = LinkPattern::from_partners_unchecked(p);
        Tangle::from_diagram(Diagram { left: half.clone(), right: half }, mi.clone(), mi.clone(), q)
    }

    /// The three-vertex `V(r,s,t)` in `TL_{(s)}^{(r,t)}`.
    pub fn three_vertex(r: u32, s: u32, t: u32, q: &QSpec) -> Result<Self> {
        if !admissible(r, s, t) {
            return Err(Error::Inadmissible(r, s, t));
        }
        for x in [r, s, t] {
            check_jw(x, q)?;
        }
        let k = ((r + t - s) / 2) as usize;
        let (r, t) = (r as usize, t as usize);
        let mut p = vec![None; r + t];
        for m in 0..k {
            p[r - 1 - m] = Some(r + m);
            p[r + m] = Some(r - 1 - m);
        }
        let d = Diagram {
            left: LinkPattern::all_defects(s as usize),
            right: LinkPattern::from_partners_unchecked(p),
        };
        let right = MultiIndex::new([r as u32, t as u32].into_iter().filter(|&x| x > 0).collect())?;
        Tangle::from_diagram(d, MultiIndex::single(s), right, q)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub(crate) fn insert_term(&mut self, d: Diagram, c: Scalar) {
        add_term(&mut self.terms, d, c);
    }

    fn same_shape(&self, o: &Tangle) -> Result<()> {
        if self.left != o.left || self.right != o.right {
            return Err(Error::Shape(format!(
                "{} -> {} vs {} -> {}",
                self.left, self.right, o.left, o.right
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Tangle) -> Result<Tangle> {
        self.same_shape(o)?;
        let mut t = self.clone();
        for (d, c) in &o.terms {
            add_term(&mut t.terms, d.clone(), c.clone());
        }
        t.prune();
        Ok(t)
    }

    pub fn sub(&self, o: &Tangle) -> Result<Tangle> {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tangle {
        let mut t = Tangle::zero(self.left.clone(), self.right.clone(), &self.q);
        for (d, x) in &self.terms {
            add_term(&mut t.terms, d.clone(), x * c);
        }
        t
    }

    /// Drops float terms that are negligible against the largest coefficient.
    fn prune(&mut self) {
        let max = self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max);
        if self.terms.values().any(|c| c.is_float()) {
            let cut = crate::scalar::FLOAT_ABS_TOL * max.max(1.0);
            self.terms.retain(|_, c| c.magnitude() >= cut);
        } else {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// `self · o`, gluing the right side of `self` to the left side of `o`; a
    /// non-flat middle multiindex inserts its Jones-Wenzl projectors.
    pub fn compose(&self, o: &Tangle) -> Result<Tangle> {
        if self.right != o.left {
            return Err(Error::Shape(format!(
                "cannot glue right side {} to left side {}",
                self.right, o.left
            )));
        }
        let nu = self.q.nu();
        let mid = if self.right.is_flat() {
            compose_terms(&self.terms, &o.terms, &nu)
        } else {
            let p = jw_tensor(&self.right, &self.q)?;
            let tp = compose_terms(&self.terms, &p.terms, &nu);
            compose_terms(&tp, &o.terms, &nu)
        };
        let mut t = Tangle::zero(self.left.clone(), o.right.clone(), &self.q);
        for (d, c) in mid {
            if !d.has_intra_bin(&t.left, &t.right) {
                add_term(&mut t.terms, d, c);
            }
        }
        t.prune();
        Ok(t)
    }

    /// Stacks `o` below `self`.
    pub fn tensor(&self, o: &Tangle) -> Tangle {
        let mut t = Tangle::zero(self.left.concat(&o.left), self.right.concat(&o.right), &self.q);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                add_term(&mut t.terms, d1.tensor(d2), c1 * c2);
            }
        }
        t
    }

    /// Mirror image; an anti-homomorphism for composition.
    pub fn reflect(&self) -> Tangle {
        let mut t = Tangle::zero(self.right.clone(), self.left.clone(), &self.q);
        for (d, c) in &self.terms {
            t.terms.insert(d.reflect(), c.clone());
        }
        t
    }

    /// Flat tangle `P_ς · T · P_ϖ`.
    pub fn embed(&self) -> Result<Tangle> {
        let l = jw_tensor(&self.left, &self.q)?;
        let r = jw_tensor(&self.right, &self.q)?;
        let nu = self.q.nu();
        let flat_self = compose_terms(&l.terms, &self.terms, &nu);
        let mut t = Tangle::zero(MultiIndex::flat(self.left.n()), MultiIndex::flat(self.right.n()), &self.q);
        t.terms = compose_terms(&flat_self, &r.terms, &nu);
        t.prune();
        Ok(t)
    }

    /// Reads a flat tangle as `(ς, ϖ)`-valenced by dropping intra-bin terms.
    pub fn project(&self, left: &MultiIndex, right: &MultiIndex) -> Result<Tangle> {
        if self.left.n() != left.n() || self.right.n() != right.n() {
            return Err(Error::Shape(format!("cannot read {}-{} points as {left} -> {right}", self.left.n(), self.right.n())));
        }
        let mut t = Tangle::zero(left.clone(), right.clone(), &self.q);
        for (d, c) in &self.terms {
            if !d.has_intra_bin(left, right) {
                add_term(&mut t.terms, d.clone(), c.clone());
            }
        }
        Ok(t)
    }

    /// Markov trace of a square tangle, with the projectors of `ς` inserted.
    pub fn trace(&self) -> Result<Scalar> {
        if self.left != self.right {
            return Err(Error::Shape(format!("trace of a non-square tangle {} -> {}", self.left, self.right)));
        }
        let nu = self.q.nu();
        let p = jw_tensor(&self.left, &self.q)?;
        let mut acc = Scalar::zero();
        for (d, c) in &self.terms {
            for (e, pc) in &p.terms {
                let (x, loops) = e.compose(d);
                let w = nu_pow(&nu, loops + x.closure_loops());
                acc = &acc + &(&(c * pc) * &w);
            }
        }
        Ok(acc)
    }

    pub fn approx_eq(&self, o: &Tangle) -> bool {
        if self.left != o.left || self.right != o.right {
            return false;
        }
        match self.sub(o) {
            Ok(d) => d.terms.values().all(|c| c.is_zero()),
            Err(_) => false,
        }
    }
}

impl PartialEq for Tangle {
    fn eq(&self, o: &Tangle) -> bool {
        self.approx_eq(o)
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{c}*[{d}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn add_term(terms: &mut BTreeMap<Diagram, Scalar>, d: Diagram, c: Scalar) {
    if c.is_zero() && !c.is_float() {
        return;
    }
    match terms.get_mut(&d) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() && !x.is_float() {
                terms.remove(&d);
            }
        }
        None => {
            terms.insert(d, c);
        }
    }
}

pub(crate) fn nu_pow(nu: &Scalar, k: u32) -> Scalar {
    nu.pow(k as i64).expect("nonnegative power")
}

fn compose_terms(
    a: &BTreeMap<Diagram, Scalar>,
    b: &BTreeMap<Diagram, Scalar>,
    nu: &Scalar,
) -> BTreeMap<Diagram, Scalar> {
    let mut out = BTreeMap::new();
    let mut powers: Vec<Scalar> = vec![Scalar::one()];
    for (d1, c1) in a {
        for (d2, c2) in b {
            let (d, loops) = d1.compose(d2);
            while powers.len() <= loops as usize {
                let next = powers.last().unwrap() * nu;
                powers.push(next);
            }
            add_term(&mut out, d, &(c1 * c2) * &powers[loops as usize]);
        }
    }
    out
}

fn check_jw(s: u32, q: &QSpec) -> Result<()> {
    if q.jw_ok(s) {
        Ok(())
    } else {
        Err(Error::JwUndefined { size: s, order: q.order().to_string() })
    }
}

static JW_CACHE: Lazy<Mutex<HashMap<(String, u32), Arc<Tangle>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Jones-Wenzl projector `P_s` as a flat tangle, memoized per `(q, s)`.
pub fn jones_wenzl(s: u32, q: &QSpec) -> Result<Arc<Tangle>> {
    check_jw(s, q)?;
    let key = (q.key(), s);
    if let Some(p) = JW_CACHE.lock().get(&key) {
        return Ok(p.clone());
    }
    let p = if s <= 1 {
        Tangle::identity(&MultiIndex::flat(s as usize), q)
    } else {
        let prev = jones_wenzl(s - 1, q)?;
        let ext = prev.tensor(&Tangle::identity(&MultiIndex::flat(1), q));
        let u = Tangle::u(s as usize, s as usize - 1, q)?;
        let k = &q_int(s as i64 - 1, q) / &q_int(s as i64, q);
        let sandwich = ext.compose(&u)?.compose(&ext)?;
        ext.add(&sandwich.scale(&k))?
    };
    let p = Arc::new(p);
    JW_CACHE.lock().insert(key, p.clone());
    Ok(p)
}

/// `P_ς = P_{s_1} ⊗ ... ⊗ P_{s_d}` as a flat tangle.
pub fn jw_tensor(mi: &MultiIndex, q: &QSpec) -> Result<Tangle> {
    let mut t = Tangle::identity(&MultiIndex::flat(0), q);
    for &s in mi.entries() {
        t = t.tensor(&*jones_wenzl(s, q)?);
    }
    Ok(t)
}
