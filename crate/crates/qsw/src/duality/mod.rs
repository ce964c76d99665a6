//! The Temperley-Lieb action on `V_ς`, commutants, and the checks of the
//! quantum Schur-Weyl duality between `TL_ς(ν)` and `U_q(sl2)`.

mod special;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

pub use special::{
    classical_mode, consecutive_projector_generators, exceptional_qi_checks, gen_proj_check, grade_element,
    open_up_check, radical_checks, recover_check, rho_image_kernel, vertex_checks, vertex_constants, Check,
    GeneratorReport, KernelImageReport, QiReport, RadicalReport, RadicalRow,
};

use crate::combin::{defect_set, valenced_link_patterns, MultiIndex};
use crate::diagram::{diagram_basis, Diagram, LinkState, Tangle};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Mat, SparseVec};
use crate::scalar::{QSpec, Scalar};
use crate::uqrep::{
    descendant, embedding, generator, grade_of, hat_projection, hw_space, w_state, Gen, ModuleVector, Side,
};

/// Matrix of a tangle acting `V_ϖ -> V_ς`.
#[derive(Clone, Debug)]
pub struct ActionMatrix {
    pub operator: Mat,
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub source: Option<Tangle>,
    pub q: QSpec,
}

/// Action of a flat diagram `V_(1^m) -> V_(1^n)`: links on the right contract
/// `(0,1) -> i q^(1/2)`, `(1,0) -> -i q^(-1/2)`; links on the left insert the singlet.
pub fn flat_action(d: &Diagram, q: &QSpec) -> Mat {
    let (n, m) = (d.n(), d.m());
    let iv = q.i() * q.v();
    let ivinv = -(q.i() * q.v_pow(-1));
    let bit = |len: usize, p: usize| 1usize << (len - 1 - p);
    let rl = d.right.links();
    let ll = d.left.links();
    let (rd, ld) = (d.right.defects(), d.left.defects());
    let mut cols = Vec::with_capacity(1 << m);
    for x in 0..1usize << m {
        let mut w = Scalar::one();
        for &(a, b) in &rl {
            let (xa, xb) = (x & bit(m, a) != 0, x & bit(m, b) != 0);
            match (xa, xb) {
                (false, true) => w = w * &iv,
                (true, false) => w = w * &ivinv,
                _ => {
                    w = Scalar::zero();
                    break;
                }
            }
        }
        let mut col = SparseVec::new();
        if !w.is_zero() {
            let mut y = 0usize;
            for (&a, &b) in rd.iter().zip(&ld) {
                if x & bit(m, a) != 0 {
                    y |= bit(n, b);
                }
            }
            col.insert(y, w);
            for &(a, b) in &ll {
                col = col
                    .into_iter()
                    .flat_map(|(k, c)| [(k | bit(n, b), &c * &iv), (k | bit(n, a), &c * &ivinv)])
                    .collect();
            }
        }
        cols.push(col);
    }
    Mat::from_columns(1 << n, cols)
}

/// `I(T) = P̂_ς ∘ I_flat(T) ∘ 𝔍_ϖ`. The Jones-Wenzl boxes of the embedding are
/// absorbed by `P̂_ς` and `𝔍_ϖ`, since `I_flat(P_s)` is the projector `𝔓_(s)`.
pub fn tl_action(t: &Tangle) -> Result<ActionMatrix> {
    let q = &t.q;
    let mut flat = Mat::zeros(1 << t.left.n(), 1 << t.right.n());
    for (d, c) in t.terms() {
        flat = flat.add(&flat_action(d, q).scale(c));
    }
    let mut op = flat;
    if !t.left.is_flat() {
        op = hat_projection(&t.left, Side::Left, q)?.mul(&op);
    }
    if !t.right.is_flat() {
        op = op.mul(&embedding(&t.right, Side::Left, q)?);
    }
    Ok(ActionMatrix { operator: op, left: t.left.clone(), right: t.right.clone(), source: Some(t.clone()), q: q.clone() })
}

/// Matrices `ρ_ς(E), ρ_ς(F)` and `ρ_ς(K)` (or `ρ_ς(H)` at `q = 1`).
pub fn uq_generators(mi: &MultiIndex, q: &QSpec) -> Result<Vec<Mat>> {
    let k = if q.is_classical() { Gen::H } else { Gen::K };
    [Gen::E, Gen::F, k].iter().map(|&g| generator(mi, Side::Left, false, g, q).map(|m| (*m).clone())).collect()
}

/// Basis of `{X : XA = AX for every A in gens}`. With a grading, `X` is
/// searched among grade-preserving maps only; this is exact when some
/// generator is diagonal with distinct eigenvalues on distinct grades.
pub fn commutant(gens: &[Mat], grading: Option<&[i64]>) -> Result<Vec<Mat>> {
    let Some(first) = gens.first() else {
        return Err(Error::Shape("commutant of an empty family".into()));
    };
    let dim = first.rows;
    if gens.iter().any(|a| a.col.iter().any(|c| c.values().any(|x| x.is_float()))) {
        return Err(Error::Mode("commutants need an exact q".into()));
    }
    // unknowns: entries (i, j) of X allowed by the grading
    let grade = |i: usize| grading.map_or(0, |g| g[i]);
    // unknowns: entries (i, j) of X allowed by the grading, grouped by grade
    let mut keys: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| grade(i) == grade(j))
        .collect();
    keys.sort_by_key(|&(i, j)| (std::cmp::Reverse(grade(i)), i, j));
    let var: BTreeMap<(usize, usize), usize> = keys.iter().enumerate().map(|(k, &ij)| (ij, k)).collect();
    // (XA - AX)_{ij} = sum_k X_ik A_kj - A_ik X_kj
    let mut eqs: BTreeMap<(std::cmp::Reverse<i64>, usize, usize, usize), SparseVec> = BTreeMap::new();
    for (g, a) in gens.iter().enumerate() {
        let rows = a.rows_sparse();
        for (&(i, k), &x) in &var {
            for (j, akj) in &rows[k] {
                let e = eqs.entry((std::cmp::Reverse(grade(i)), g, i, *j)).or_default();
                crate::linalg::axpy(e, akj, &SparseVec::from([(x, Scalar::one())]));
            }
        }
        for (&(k, j), &x) in &var {
            for (i, aik) in &a.col[k] {
                let e = eqs.entry((std::cmp::Reverse(grade(*i)), g, *i, j)).or_default();
                crate::linalg::axpy(e, &-aik, &SparseVec::from([(x, Scalar::one())]));
            }
        }
    }
    let rows: Vec<SparseVec> = eqs.into_values().filter(|e| !e.is_empty()).collect();
    log::debug!("commutant: {} unknowns, {} equations", var.len(), rows.len());
    Ok(crate::linalg::nullspace(rows, var.len())
        .into_iter()
        .map(|v| {
            let mut m = Mat::zeros(dim, dim);
            for (x, c) in v {
                let (i, j) = keys[x];
                m.set(i, j, c);
            }
            m
        })
        .collect())
}

/// Grades of the standard basis of `V_ς`.
pub fn grading(mi: &MultiIndex) -> Vec<i64> {
    (0..mi.module_dim()).map(|k| grade_of(mi, k)).collect()
}

/// Span of matrices, as an echelon form of their flattenings.
pub fn matrix_span<'a, I: IntoIterator<Item = &'a Mat>>(ms: I, dim: usize) -> Echelon {
    let mut e = Echelon::new(dim * dim);
    for m in ms {
        e.insert(m.flatten());
    }
    e
}

/// Unital algebra generated by `gens`, closed under right multiplication by
/// generators until the span stops growing.
pub fn generated_algebra(gens: &[Mat], dim: usize) -> Echelon {
    let mut span = Echelon::new(dim * dim);
    let mut basis = vec![Mat::identity(dim)];
    span.insert(basis[0].flatten());
    let mut k = 0;
    while k < basis.len() && basis.len() <= dim * dim {
        for g in gens {
            let x = basis[k].mul(g);
            if span.insert(x.flatten()) {
                basis.push(x);
            }
        }
        k += 1;
    }
    span
}

/// Images of the valenced diagram basis of `TL_ς`.
pub fn tl_image(mi: &MultiIndex, q: &QSpec) -> Result<Vec<Mat>> {
    diagram_basis(mi, mi)
        .into_iter()
        .map(|d| {
            let t = Tangle::from_diagram(d, mi.clone(), mi.clone(), q)?;
            Ok(tl_action(&t)?.operator)
        })
        .collect()
}

/// The `q` used for commutants: a generic request runs at `v = 2`.
pub fn commutant_point(q: &QSpec) -> (QSpec, Option<String>) {
    match q {
        QSpec::Generic => (
            QSpec::rational_int(2).expect("v = 2 is admissible"),
            Some("commutants computed at q-spec rational:2/1 as a generic point".to_string()),
        ),
        other => (other.clone(), None),
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub multiindex: MultiIndex,
    pub q: QSpec,
    pub commutant_q: QSpec,
    pub dim_tl: usize,
    pub dim_image: usize,
    pub dim_uq_commutant: usize,
    pub dim_tl_commutant: Option<usize>,
    /// `(s, dim H_ς^(s))` for every grade with a nonzero highest-weight space.
    pub decomposition: Vec<(u32, usize)>,
    pub commuting: bool,
    pub faithful: bool,
    /// Only asserted when `n_ς < p(q)`.
    pub duality_holds: Option<bool>,
    pub semisimple_regime: bool,
    pub isomorphism: Option<bool>,
    pub notes: Vec<String>,
}

impl DualityReport {
    /// Whether every asserted identity holds.
    pub fn ok(&self) -> bool {
        self.commuting && self.faithful && self.duality_holds.unwrap_or(true) && self.isomorphism.unwrap_or(true)
    }

    /// `(key, value)` pairs in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let opt = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
        let dec: Vec<String> = self.decomposition.iter().map(|(s, m)| format!("{s}:{m}")).collect();
        vec![
            ("multiindex", self.multiindex.to_string()),
            ("q", self.q.key()),
            ("commutant_q", self.commutant_q.key()),
            ("dim_tl", self.dim_tl.to_string()),
            ("dim_image", self.dim_image.to_string()),
            ("dim_uq_commutant", self.dim_uq_commutant.to_string()),
            ("dim_tl_commutant", self.dim_tl_commutant.map_or("n/a".into(), |d| d.to_string())),
            ("decomposition", dec.join(" ")),
            ("commuting", self.commuting.to_string()),
            ("faithful", self.faithful.to_string()),
            ("duality_holds", opt(self.duality_holds)),
            ("semisimple_regime", self.semisimple_regime.to_string()),
            ("isomorphism", opt(self.isomorphism)),
        ]
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k:<18} {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Largest module dimension for which the TL commutant is solved in full.
pub const TL_COMMUTANT_MAX_DIM: usize = 32;

/// Runs the duality pipeline for `ς` at `q`.
pub fn verify_duality(mi: &MultiIndex, q: &QSpec) -> Result<DualityReport> {
    let (cq, note) = commutant_point(q);
    let mut notes: Vec<String> = note.into_iter().collect();
    let semisimple = q.is_classical() || q.order().exceeds(mi.n() as u32);
    if !q.jw_ok(mi.max()) {
        return Err(Error::JwUndefined { size: mi.max(), order: q.order().to_string() });
    }
    let dim = mi.module_dim();
    let basis = diagram_basis(mi, mi);
    let dim_tl = basis.len();

    let image = tl_image(mi, &cq)?;
    let img_span = matrix_span(&image, dim);
    let dim_image = img_span.rank();

    let uq = uq_generators(mi, &cq)?;
    let commuting = image.iter().all(|t| uq.iter().all(|a| t.mul(a).approx_eq(&a.mul(t))));
    let comm = commutant(&uq, Some(&grading(mi)))?;
    let dim_uq_commutant = comm.len();

    let dim_tl_commutant = if dim <= TL_COMMUTANT_MAX_DIM {
        Some(commutant(&tl_generators(mi, &cq)?, None)?.len())
    } else {
        notes.push(format!("TL commutant skipped: dim V = {dim} exceeds {TL_COMMUTANT_MAX_DIM}"));
        None
    };

    let mut decomposition = Vec::new();
    for s in (0..=mi.n() as u32).rev().filter(|s| (mi.n() as u32 - s) % 2 == 0) {
        let h = hw_space(mi, s, Side::Left, &cq)?.vectors.len();
        if h > 0 {
            decomposition.push((s, h));
        }
    }
    decomposition.reverse();

    let faithful = dim_image == dim_tl;
    log::info!("{mi} at {}: dim TL {dim_tl}, image {dim_image}, commutant {dim_uq_commutant}", cq.key());
    let duality_holds = semisimple.then(|| dim_uq_commutant == dim_image && comm.iter().all(|x| img_span.contains(&x.flatten())));
    let isomorphism = if semisimple { Some(check_isomorphism(mi, &cq)?) } else { None };
    if !semisimple {
        notes.push(format!("n = {} is not below p(q) = {}; duality is not asserted", mi.n(), q.order()));
    }
    Ok(DualityReport {
        multiindex: mi.clone(),
        q: q.clone(),
        commutant_q: cq,
        dim_tl,
        dim_image,
        dim_uq_commutant,
        dim_tl_commutant,
        decomposition,
        commuting,
        faithful,
        duality_holds,
        semisimple_regime: semisimple,
        isomorphism,
        notes,
    })
}

/// Operators spanning or generating the TL image: the identity and the `U_j`
/// for flat multiindices, the whole diagram basis otherwise.
pub fn tl_generators(mi: &MultiIndex, q: &QSpec) -> Result<Vec<Mat>> {
    if mi.is_flat() {
        let mut gens = vec![Mat::identity(mi.module_dim())];
        for j in 1..mi.n() {
            gens.push(tl_action(&Tangle::u(mi.n(), j, q)?)?.operator);
        }
        return Ok(gens);
    }
    // without a presentation of TL_ς, use the whole diagram basis
    tl_image(mi, q)
}

/// The map `F^l.w_α -> e_l^(s) ⊗ α` intertwines both actions.
pub fn check_isomorphism(mi: &MultiIndex, q: &QSpec) -> Result<bool> {
    let dim = mi.module_dim();
    let mut all = Echelon::new(dim);
    let uq = uq_generators(mi, q)?;
    let tls: Vec<(Tangle, Mat)> = diagram_basis(mi, mi)
        .into_iter()
        .map(|d| {
            let t = Tangle::from_diagram(d, mi.clone(), mi.clone(), q)?;
            let m = tl_action(&t)?.operator;
            Ok((t, m))
        })
        .collect::<Result<_>>()?;
    for s in defect_set(mi) {
        for alpha in valenced_link_patterns(mi, s) {
            let state = LinkState::valenced(&alpha, q)?;
            let w = w_state(&state, Side::Left, q)?;
            for l in 0..=s {
                let v = descendant(&w, l, q)?;
                all.insert(v.coords.clone());
                // U_q side: E, F, K act on the e_l factor
                let e = v.apply(&uq[0]);
                let expect_e = if l == 0 {
                    ModuleVector::zero(mi, Side::Left)
                } else {
                    let c = crate::scalar::q_int(l as i64, q) * crate::scalar::q_int((s - l + 1) as i64, q);
                    descendant(&w, l - 1, q)?.scale(&c)
                };
                let f = v.apply(&uq[1]);
                let expect_f = descendant(&w, l + 1, q)?;
                let kv = v.apply(&uq[2]);
                let kc = if q.is_classical() {
                    Scalar::int(s as i64 - 2 * l as i64)
                } else {
                    q.q_pow(s as i64 - 2 * l as i64)
                };
                if e != expect_e || f != expect_f || kv != v.scale(&kc) {
                    return Ok(false);
                }
                // TL side: T acts on the α factor
                for (t, m) in &tls {
                    let moved = state.act(t)?;
                    let expect = descendant(&w_state(&moved, Side::Left, q)?, l, q)?;
                    if v.apply(m) != expect {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(all.rank() == dim)
}
