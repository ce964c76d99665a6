use std::fmt;

use super::{commutant, generated_algebra, grading, matrix_span, tl_action, tl_image, uq_generators, verify_duality, DualityReport};
use crate::combin::{valenced_link_patterns, MultiIndex, Walk};
use crate::diagram::{gram_matrix, jones_wenzl, Tangle};
use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseVec};
use crate::scalar::{q_binomial, q_factorial, q_int, theta, QSpec, Scalar};
use crate::uqrep::{
    conformal_block, generator, hat_projection, hw_space, pair_maps, pairing, projector, w_vector, Gen, ModuleVector,
    Side,
};

/// A named identity and whether it held.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), ok }
    }
}

fn write_checks(f: &mut fmt::Formatter<'_>, checks: &[Check]) -> fmt::Result {
    for c in checks {
        writeln!(f, "{:<48} {}", c.name, if c.ok { "pass" } else { "FAIL" })?;
    }
    Ok(())
}

fn id(n: usize) -> Mat {
    Mat::identity(n)
}

/// `id ⊗ m ⊗ id` with `before` and `after` the identity dimensions.
fn sandwich(before: usize, m: &Mat, after: usize) -> Mat {
    id(before).kron(m).kron(&id(after))
}

/// The `(r, s, t)` three-vertex constants `A` and `B`.
pub fn vertex_constants(r: u32, s: u32, t: u32, q: &QSpec) -> Result<(Scalar, Scalar)> {
    if q.is_classical() {
        return Err(Error::Mode("the three-vertex constants degenerate at q = 1".into()));
    }
    let k = ((r + t - s) / 2) as i64;
    let iv = q.i() * q.v();
    let d = q.q() - q.q_pow(-1);
    let sign = if s % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let pk = |x: &Scalar| x.pow(k).ok_or(Error::Vanishing("constant power".into()));
    let b = pk(&d)? * q_factorial(k as u32, q) / pk(&iv)?;
    let den = sign * q_int(s as i64 + 1, q) * &b;
    let a = theta(r, s, t, q)? / den;
    Ok((a, b))
}

/// `I(V) = A π̂`, `I(V reflected) = B ι` and the composite `BA π` for the
/// three-vertex `(r, s, t)`, plus the rescaled composite giving `π`.
pub fn vertex_checks(r: u32, s: u32, t: u32, q: &QSpec) -> Result<Vec<Check>> {
    let (a, b) = vertex_constants(r, s, t, q)?;
    let v = Tangle::three_vertex(r, s, t, q)?;
    let vr = v.reflect();
    let pm = pair_maps(r, t, s, Side::Left, q)?;
    let down = tl_action(&v)?.operator;
    let up = tl_action(&vr)?.operator;
    let comp = tl_action(&vr.compose(&v)?)?.operator;
    let ba = &b * &a;
    let sign = if s % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let norm = sign * q_int(s as i64 + 1, q) / theta(r, s, t, q)?;
    let tag = format!("({r},{s},{t})");
    Ok(vec![
        Check::new(format!("vertex {tag} = A pi_hat"), down.approx_eq(&pm.pi_hat.scale(&a))),
        Check::new(format!("reflected vertex {tag} = B iota"), up.approx_eq(&pm.iota.scale(&b))),
        Check::new(format!("vertex composite {tag} = BA pi"), comp.approx_eq(&pm.pi.scale(&ba))),
        Check::new(format!("normalized composite {tag} = pi"), comp.scale(&norm).approx_eq(&pm.pi)),
    ])
}

/// `I_n(U_j) = ν (id ⊗ π^((1,1);(0)) ⊗ id)`.
pub fn gen_proj_check(n: usize, j: usize, q: &QSpec) -> Result<bool> {
    let u = tl_action(&Tangle::u(n, j, q)?)?.operator;
    let pi = pair_maps(1, 1, 0, Side::Left, q)?.pi;
    let m = sandwich(1 << (j - 1), &pi, 1 << (n - j - 1)).scale(&q.nu());
    Ok(u.approx_eq(&m))
}

/// `I_n(P_n) = 𝔓_(n)`.
pub fn recover_check(n: u32, q: &QSpec) -> Result<bool> {
    let p = jones_wenzl(n, q)?;
    let lhs = tl_action(&p)?.operator;
    Ok(lhs.approx_eq(&projector(&MultiIndex::single(n), Side::Left, q)?))
}

/// The factorial identity relating `π̂^(r,t)_s` to the chain of `π̂^(1,1)_0`
/// on the joined strands.
pub fn open_up_check(r: u32, t: u32, s: u32, q: &QSpec) -> Result<bool> {
    let k = (r + t - s) / 2;
    let f = |m: u32| q_factorial(m, q);
    let num = f(r - k) * f(t - k) * f(r + t - k + 1);
    let den = q_int(2, q).pow(k as i64).unwrap() * f(r) * f(s + 1) * f(t);
    let c = num / den;
    let lhs = pair_maps(r, t, s, Side::Left, q)?.pi_hat.scale(&c);
    let cap = pair_maps(1, 1, 0, Side::Left, q)?.pi_hat;
    let mi = MultiIndex::new(vec![r, t])?;
    let mut m = crate::uqrep::embedding(&mi, Side::Left, q)?;
    let mut width = (r + t) as usize;
    for a in ((r - k + 1)..=r).rev() {
        let a = a as usize;
        m = sandwich(1 << (a - 1), &cap, 1 << (width - a - 1)).mul(&m);
        width -= 2;
    }
    let rhs = hat_projection(&MultiIndex::single(s), Side::Left, q)?.mul(&m);
    Ok(lhs.approx_eq(&rhs))
}

#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub multiindex: MultiIndex,
    pub q: QSpec,
    pub generators: usize,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    pub image_dim: usize,
    pub checks: Vec<Check>,
}

impl GeneratorReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Closes `{id ⊗ π^((ς_i,ς_(i+1));(s)) ⊗ id}` under products and compares the
/// algebra with the `U_q` commutant and the TL image.
pub fn consecutive_projector_generators(mi: &MultiIndex, q: &QSpec) -> Result<GeneratorReport> {
    if !q.is_classical() && !q.order().exceeds(mi.n() as u32) {
        return Err(Error::Mode(format!("n = {} is not below p(q) = {}", mi.n(), q.order())));
    }
    let e = mi.entries();
    let dims: Vec<usize> = e.iter().map(|&x| x as usize + 1).collect();
    let mut gens = Vec::new();
    for i in 0..e.len().saturating_sub(1) {
        let before: usize = dims[..i].iter().product();
        let after: usize = dims[i + 2..].iter().product();
        let (r, t) = (e[i], e[i + 1]);
        for s in crate::combin::defect_interval(r, t) {
            gens.push(sandwich(before, &pair_maps(r, t, s, Side::Left, q)?.pi, after));
        }
    }
    let dim = mi.module_dim();
    let span = generated_algebra(&gens, dim);
    let comm = commutant(&uq_generators(mi, q)?, Some(&grading(mi)))?;
    let image = tl_image(mi, q)?;
    let img_span = matrix_span(&image, dim);
    let same_as_comm = comm.len() == span.rank() && comm.iter().all(|c| span.contains(&c.flatten()));
    let same_as_image = img_span.rank() == span.rank() && image.iter().all(|c| span.contains(&c.flatten()));
    let mut checks = vec![
        Check::new("generated algebra = U_q commutant", same_as_comm),
        Check::new("generated algebra = TL image", same_as_image),
    ];
    if !q.is_classical() {
        for i in 0..e.len().saturating_sub(1) {
            let (r, t) = (e[i], e[i + 1]);
            for s in crate::combin::defect_interval(r, t) {
                checks.extend(vertex_checks(r, s, t, q)?);
            }
        }
    }
    Ok(GeneratorReport {
        multiindex: mi.clone(),
        q: q.clone(),
        generators: gens.len(),
        algebra_dim: span.rank(),
        commutant_dim: comm.len(),
        image_dim: img_span.rank(),
        checks,
    })
}

impl fmt::Display for GeneratorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "multiindex {}  q {}", self.multiindex, self.q.key())?;
        writeln!(
            f,
            "generators {}  algebra {}  commutant {}  image {}",
            self.generators, self.algebra_dim, self.commutant_dim, self.image_dim
        )?;
        write_checks(f, &self.checks)
    }
}

/// Radical data for one defect number.
#[derive(Clone, Debug, PartialEq)]
pub struct RadicalRow {
    pub s: u32,
    pub dim_d: usize,
    pub rad_l: usize,
    pub dim_h: usize,
    pub rad_h: usize,
    pub perp: usize,
    pub quotient: usize,
    pub inclusion: bool,
}

impl RadicalRow {
    /// `rad{w} ⊆ rad H` and `dim H - dim {w}^⊥ = D - dim rad L`.
    pub fn ok(&self) -> bool {
        self.inclusion && self.quotient == self.dim_d - self.rad_l
    }
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub multiindex: MultiIndex,
    pub q: QSpec,
    pub rows: Vec<RadicalRow>,
}

impl RadicalReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(RadicalRow::ok)
    }
}

impl fmt::Display for RadicalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "multiindex {}  q {}", self.multiindex, self.q.key())?;
        writeln!(f, "{:>3} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}", "s", "D", "radL", "dimH", "radH", "perp", "Q", "inclusion")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}",
                r.s, r.dim_d, r.rad_l, r.dim_h, r.rad_h, r.perp, r.quotient, r.inclusion
            )?;
        }
        Ok(())
    }
}

fn pairing_matrix_of(bars: &[ModuleVector], vs: &[ModuleVector], q: &QSpec) -> Result<Mat> {
    let mut m = Mat::zeros(bars.len(), vs.len());
    for (i, b) in bars.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            m.set(i, j, pairing(b, v, q)?);
        }
    }
    Ok(m)
}

pub fn radical_checks(mi: &MultiIndex, q: &QSpec) -> Result<RadicalReport> {
    if !q.jw_ok(mi.max()) {
        return Err(Error::JwUndefined { size: mi.max(), order: q.order().to_string() });
    }
    let mut rows = Vec::new();
    for s in crate::combin::defect_set(mi) {
        let pats = valenced_link_patterns(mi, s);
        let w: Vec<ModuleVector> = pats.iter().map(|a| w_vector(a, Side::Left, q)).collect::<Result<_>>()?;
        let wb: Vec<ModuleVector> = pats.iter().map(|a| w_vector(a, Side::Right, q)).collect::<Result<_>>()?;
        let h = hw_space(mi, s, Side::Left, q)?.vectors;
        let hb = hw_space(mi, s, Side::Right, q)?.vectors;
        let gram = gram_matrix(mi, s, q)?;
        let null = gram.kernel();
        let inclusion = null.iter().all(|c| {
            let mut acc = SparseVec::new();
            for (a, x) in c {
                crate::linalg::axpy(&mut acc, x, &w[*a].coords);
            }
            let v = ModuleVector::new(mi, Side::Left, acc);
            hb.iter().all(|b| pairing(b, &v, q).is_ok_and(|x| x.is_zero()))
        });
        let rank_h = pairing_matrix_of(&hb, &h, q)?.rank();
        let rank_w = pairing_matrix_of(&wb, &h, q)?.rank();
        rows.push(RadicalRow {
            s,
            dim_d: pats.len(),
            rad_l: null.len(),
            dim_h: h.len(),
            rad_h: h.len() - rank_h,
            perp: h.len() - rank_w,
            quotient: rank_w,
            inclusion,
        });
    }
    Ok(RadicalReport { multiindex: mi.clone(), q: q.clone(), rows })
}

#[derive(Clone, Debug)]
pub struct QiReport {
    pub q: QSpec,
    pub checks: Vec<Check>,
}

impl QiReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl fmt::Display for QiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q {}", self.q.key())?;
        write_checks(f, &self.checks)
    }
}

/// The degenerate point `q = ±i` on `V_(1,1)`; `sign` picks the root.
pub fn exceptional_qi_checks(q: &QSpec) -> Result<QiReport> {
    let sign = match q {
        QSpec::Root { pp, p: 2 } if pp.rem_euclid(4) == 1 => 1,
        QSpec::Root { pp, p: 2 } if pp.rem_euclid(4) == 3 => -1,
        _ => return Err(Error::Mode(format!("expected q = ±i (root:1:2 or root:-1:2), got {}", q.key()))),
    };
    let mi = MultiIndex::flat(2);
    let i = q.i();
    let pm = Scalar::int(sign);
    let half_i = &i * &Scalar::frac(1, 2);
    let gen = |g| generator(&mi, Side::Left, false, g, q).map(|m| (*m).clone());
    let (e, f) = (gen(Gen::E)?, gen(Gen::F)?);
    let u1 = tl_action(&Tangle::u(2, 1, q)?)?.operator;
    let vec = |c: &[(usize, Scalar)]| ModuleVector::new(&mi, Side::Left, c.iter().cloned().collect());
    let u = conformal_block(&Walk(vec![1, 0]), &mi, Side::Left, q)?;
    let theta_v = vec(&[(0, Scalar::one())]);
    let mu = vec(&[(3, Scalar::one())]);
    let zc = (Scalar::one() + &pm * &i) * Scalar::frac(-1, 4);
    let zeta = vec(&[(1, zc.clone()), (2, zc)]);
    let two_i = &pm * &i * Scalar::int(2);
    let mhalf = -(&pm * &half_i);

    let comm = commutant(&uq_generators(&mi, q)?, Some(&grading(&mi)))?;
    let cs = matrix_span(&comm, 4);
    let pair = matrix_span([&id(4), &u1], 4);
    let spanned = cs.rank() == 2 && pair.rank() == 2 && comm.iter().all(|c| pair.contains(&c.flatten()));
    let u1_tangle_sq = Tangle::u(2, 1, q)?.compose(&Tangle::u(2, 1, q)?)?;

    let checks = vec![
        Check::new("I(U1)^2 = 0", u1.mul(&u1).is_zero()),
        Check::new("U1*U1 = 0 in TL_2(0)", u1_tangle_sq.is_zero()),
        Check::new("dim End V_2 = 2", comm.len() == 2),
        Check::new("End V_2 = span{id, I(U1)}", spanned),
        Check::new("TL_2(0) acts faithfully", pair.rank() == 2),
        Check::new("F.theta = ±2i u", theta_v.apply(&f) == u.scale(&two_i)),
        Check::new("E.mu = ±2i u", mu.apply(&e) == u.scale(&two_i)),
        Check::new("E.zeta = ∓(i/2) theta", zeta.apply(&e) == theta_v.scale(&mhalf)),
        Check::new("F.zeta = ∓(i/2) mu", zeta.apply(&f) == mu.scale(&mhalf)),
        Check::new("FE.zeta = u", zeta.apply(&e).apply(&f) == u),
        Check::new("EF.zeta = u", zeta.apply(&f).apply(&e) == u),
        Check::new("F^2.u(2) = 0", theta_v.apply(&f).apply(&f).is_zero()),
        Check::new("u(0) = ∓(i/2) F.u(2)", theta_v.apply(&f).scale(&mhalf) == u),
    ];
    Ok(QiReport { q: q.clone(), checks })
}

/// Duality at `q = 1`, with `H` among the generators.
pub fn classical_mode(mi: &MultiIndex) -> Result<DualityReport> {
    verify_duality(mi, &QSpec::classical())
}

#[derive(Clone, Debug)]
pub struct KernelImageReport {
    pub s: u32,
    pub q: QSpec,
    pub image_rank: usize,
    pub kernel_checked: usize,
    pub checks: Vec<Check>,
}

impl KernelImageReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl fmt::Display for KernelImageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s {}  q {}  image rank {}  kernel elements {}", self.s, self.q.key(), self.image_rank, self.kernel_checked)?;
        write_checks(f, &self.checks)
    }
}

/// `ρ(G_l)` for `V_(s)`: the Lagrange polynomial in `K` picking out `e_l`.
pub fn grade_element(s: u32, l: u32, q: &QSpec) -> Result<Mat> {
    let mi = MultiIndex::single(s);
    let k = generator(&mi, Side::Left, false, Gen::K, q)?;
    let n = s as usize + 1;
    let w = |j: u32| q.q_pow(s as i64 - 2 * j as i64);
    let mut g = id(n);
    for j in (0..=s).filter(|&j| j != l) {
        let den = (w(l) - w(j)).inv().ok_or(Error::Vanishing(format!("K-eigenvalues {l} and {j} coincide")))?;
        g = g.mul(&k.sub(&id(n).scale(&w(j)))).scale(&den);
    }
    Ok(g)
}

fn mat_pow(m: &Mat, k: u32) -> Mat {
    (0..k).fold(id(m.rows), |acc, _| acc.mul(m))
}

/// Image basis and kernel spot checks for `ρ_(s)`.
pub fn rho_image_kernel(s: u32, q: &QSpec) -> Result<KernelImageReport> {
    if q.is_classical() || !q.order().exceeds(s) {
        return Err(Error::Mode(format!("need s = {s} < p(q) = {} away from q = 1", q.order())));
    }
    let mi = MultiIndex::single(s);
    let gen = |g| generator(&mi, Side::Left, false, g, q).map(|m| (*m).clone());
    let (e, f, k, kinv) = (gen(Gen::E)?, gen(Gen::F)?, gen(Gen::K)?, gen(Gen::Kinv)?);
    let n = s as usize + 1;
    let gs: Vec<Mat> = (0..=s).map(|l| grade_element(s, l, q)).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let resolves = gs.iter().fold(Mat::zeros(n, n), |a, g| a.add(g)).approx_eq(&id(n));
    checks.push(Check::new("sum of grade elements = 1", resolves));
    let picks = gs.iter().enumerate().all(|(l, g)| {
        let mut want = Mat::zeros(n, n);
        want.set(l, l, Scalar::one());
        g.approx_eq(&want)
    });
    checks.push(Check::new("G_l e_k = δ_kl e_l", picks));

    let mut img = Vec::new();
    for (l, g) in gs.iter().enumerate() {
        for j in 0..=(s as usize - l) {
            img.push(mat_pow(&f, j as u32).mul(g));
        }
        for j in 1..=l {
            img.push(mat_pow(&e, j as u32).mul(g));
        }
    }
    let image_rank = matrix_span(&img, n).rank();
    checks.push(Check::new("image basis has (s+1)^2 independent elements", img.len() == n * n && image_rank == n * n));

    let qb = |a: u32, b: u32| q_binomial(a as i64, b as i64, q);
    let mut checked = 0;
    let mut kernel_ok = true;
    for (l, g) in gs.iter().enumerate() {
        let l = l as u32;
        for m in 0..=s {
            for kk in m..=s {
                // only elements with k <= l + m <= s are killed
                if l + m > s || kk > l + m {
                    continue;
                }
                for np in -1i64..=2 {
                    let fac = q_factorial(kk - m, q) / q_factorial(kk, q);
                    let a = q.q_pow(-np * (s as i64 - 2 * l as i64 - 2 * m as i64))
                        * &fac
                        * &fac
                        * qb(l, l + m - kk)
                        * qb(s - l + kk - m, s - l)
                        / (qb(l + m, l + m - kk) * qb(s - l - m + kk, s - l - m));
                    let kn = if np >= 0 { mat_pow(&k, np as u32) } else { mat_pow(&kinv, (-np) as u32) };
                    let x = mat_pow(&e, kk - m)
                        .sub(&mat_pow(&e, kk).mul(&kn).mul(&mat_pow(&f, m)).scale(&a))
                        .mul(g);
                    kernel_ok &= x.is_zero();
                    checked += 1;
                }
            }
        }
    }
    checks.push(Check::new("sampled kernel elements annihilate V_(s)", kernel_ok));
    Ok(KernelImageReport { s, q: q.clone(), image_rank, kernel_checked: checked, checks })
}
