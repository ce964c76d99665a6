//! The twelve acceptance criteria, one pass/fail line each. Runs without the
//! libtest harness so the summary is always printed.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qsw::combin::{
    all_link_patterns, compositions, defect_interval, defect_set, dim_d, dims_d, valenced_link_patterns, walks_over,
    MultiIndex,
};
use qsw::diagram::{diagram_basis, jones_wenzl, ls_pairing, Diagram, LinkState, Tangle};
use qsw::duality::{
    classical_mode, commutant, exceptional_qi_checks, flat_action, gen_proj_check, grading, open_up_check,
    radical_checks, tl_action, uq_generators, verify_duality, vertex_checks,
};
use qsw::linalg::Mat;
use qsw::scalar::{admissible, q_factorial, q_int, theta};
use qsw::uqrep::{
    cb_pairing_expected, conformal_block, conformal_block_basis, coproduct_power_matrix, generator, grade_of,
    hw_space, link_pattern_basis, pairing, singlet, w_vector, AlgebraElement, Gen, ModuleVector, Side,
};
use qsw::{QSpec, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g() -> QSpec {
    QSpec::Generic
}

fn v2() -> QSpec {
    QSpec::rational_int(2).unwrap()
}

fn up_to(n: usize) -> Vec<MultiIndex> {
    (1..=n).flat_map(compositions).collect()
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Walk counts by direct enumeration of height sequences, independent of the
/// library's recursion.
fn count_walks(mi: &MultiIndex) -> BTreeMap<u32, u64> {
    let mut heights: BTreeMap<u32, u64> = BTreeMap::from([(0, 1)]);
    for &s in mi.entries() {
        let mut next = BTreeMap::new();
        for (&r, &c) in &heights {
            let lo = r.abs_diff(s);
            let mut t = lo;
            while t <= r + s {
                *next.entry(t).or_insert(0) += c;
                t += 2;
            }
        }
        heights = next;
    }
    heights
}

fn counting() -> Outcome {
    let all = up_to(8);
    for m in &all {
        let d = dims_d(m);
        ensure(d == count_walks(m), || format!("D from recursion differs from walk count on {m}"))?;
        let total: u64 = d.iter().map(|(s, c)| (*s as u64 + 1) * c).sum();
        let prod: u64 = m.entries().iter().map(|&s| s as u64 + 1).product();
        ensure(total == prod, || format!("dimension identity fails on {m}"))?;
        ensure(walks_over(m).len() as u64 == d.values().sum::<u64>(), || format!("walks_over count on {m}"))?;
        for (&s, &c) in &d {
            ensure(valenced_link_patterns(m, s).len() as u64 == c, || format!("pattern count on {m}, s={s}"))?;
        }
    }
    Ok(format!("{} multiindices, n <= 8", all.len()))
}

fn all_diagrams(n: usize, m: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for a in all_link_patterns(n) {
        for b in all_link_patterns(m) {
            if a.s() == b.s() {
                out.push(Diagram::new(a.clone(), b).unwrap());
            }
        }
    }
    out
}

fn diagram_algebra() -> Outcome {
    let q = g();
    let nu = q.nu();
    for n in 2..=8 {
        let u = |i| Tangle::u(n, i, &q).unwrap();
        for i in 1..n {
            ensure(u(i).compose(&u(i)).unwrap() == u(i).scale(&nu), || format!("U{i}^2 on {n}"))?;
            if i + 1 < n {
                ensure(u(i).compose(&u(i + 1)).unwrap().compose(&u(i)).unwrap() == u(i), || format!("U{i}U{}U{i}", i + 1))?;
                ensure(u(i + 1).compose(&u(i)).unwrap().compose(&u(i + 1)).unwrap() == u(i + 1), || format!("U{}U{i}U{}", i + 1, i + 1))?;
            }
            for j in i + 2..n {
                ensure(u(i).compose(&u(j)).unwrap() == u(j).compose(&u(i)).unwrap(), || format!("U{i}U{j} on {n}"))?;
            }
            let l = Diagram::l(n, i).unwrap();
            let r = Diagram::r(n, i).unwrap();
            ensure(l.compose(&r).0 == Diagram::u(n, i).unwrap(), || format!("L{i}R{i} on {n}"))?;
            ensure(r.compose(&l) == (Diagram::identity(n - 2), 1), || format!("R{i}L{i} on {n}"))?;
            for k in [i.wrapping_sub(1), i + 1] {
                if (1..n).contains(&k) {
                    ensure(Diagram::r(n, k).unwrap().compose(&l) == (Diagram::identity(n - 2), 0), || format!("R{k}L{i} on {n}"))?;
                }
            }
            for j in 1..=i {
                let lhs = Diagram::l(n + 2, j).unwrap().compose(&l).0;
                let rhs = Diagram::l(n + 2, i + 2).unwrap().compose(&Diagram::l(n, j).unwrap()).0;
                ensure(lhs == rhs, || format!("L{j}L{i} on {n}"))?;
            }
        }
    }
    let mut count = 0;
    for n in 0..=12 {
        for m in (n % 2..=12 - n).step_by(2) {
            for d in all_diagrams(n, m) {
                let sf = d.standard_form();
                ensure(sf.recompose() == d, || format!("standard form of {d}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("relations for n <= 8, {count} standard forms"))
}

fn jones_wenzl_criterion() -> Outcome {
    let cases = [(g(), 6), (QSpec::root(1, 3).unwrap(), 2), (QSpec::root(1, 5).unwrap(), 4)];
    for (q, top) in &cases {
        for s in 1..=*top {
            let p = jones_wenzl(s, q).map_err(|e| e.to_string())?;
            ensure(p.compose(&p).unwrap() == *p, || format!("P{s}^2 = P{s} at {}", q.key()))?;
            for i in 1..s as usize {
                let u = Tangle::u(s as usize, i, q).unwrap();
                ensure(u.compose(&p).unwrap().is_zero() && p.compose(&u).unwrap().is_zero(), || {
                    format!("U{i} P{s} at {}", q.key())
                })?;
            }
        }
        let p2 = jones_wenzl(2, q).unwrap();
        let expect = Tangle::identity(&MultiIndex::flat(2), q)
            .sub(&Tangle::u(2, 1, q).unwrap().scale(&q.nu().inv().unwrap()))
            .unwrap();
        ensure(*p2 == expect, || format!("P2 closed form at {}", q.key()))?;
    }
    Ok("generic s <= 6, e^(i pi/3) s <= 2, e^(i pi/5) s <= 4".into())
}

fn theta_oracle(r: u32, s: u32, t: u32, q: &QSpec) -> Scalar {
    let h = (r + s + t) / 2;
    let sign = if h % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let num = q_factorial(h + 1, q) * q_factorial(h - t, q) * q_factorial(h - r, q) * q_factorial(h - s, q);
    let den = q_factorial(r, q) * q_factorial(s, q) * q_factorial(t, q);
    sign * (&num / &den)
}

fn theta_criterion() -> Outcome {
    let q = g();
    let mut count = 0;
    for r in 0..=10u32 {
        for s in 0..=10 - r {
            for t in 0..=10 - r - s {
                if !admissible(r, s, t) {
                    continue;
                }
                let th = theta_oracle(r, s, t, &q);
                ensure(theta(r, s, t, &q).unwrap() == th, || format!("closed form Theta({r},{s},{t})"))?;
                let v = Tangle::three_vertex(r, s, t, &q).unwrap();
                let vv = v.compose(&v.reflect()).unwrap();
                ensure(vv.trace().unwrap() == th, || format!("network Theta({r},{s},{t})"))?;
                let sign = if s % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
                let bubble = &th / &(sign * q_int(s as i64 + 1, &q));
                ensure(vv == Tangle::identity(&MultiIndex::single(s), &q).scale(&bubble), || {
                    format!("loop erasure ({r},{s},{t})")
                })?;
                for s2 in defect_interval(r, t) {
                    if s2 != s && s2 + r + t <= 10 {
                        let w = Tangle::three_vertex(r, s2, t, &q).unwrap();
                        ensure(v.compose(&w.reflect()).unwrap().is_zero(), || format!("({r},{s},{t}) against s'={s2}"))?;
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} admissible triples with r+s+t <= 10"))
}

fn relations_on(m: &MultiIndex, side: Side, bar: bool, q: &QSpec) -> Result<(), String> {
    let gen = |x| (*generator(m, side, bar, x, q).unwrap()).clone();
    let (e, f, k, ki) = (gen(Gen::E), gen(Gen::F), gen(Gen::K), gen(Gen::Kinv));
    let prod = |a: &Mat, b: &Mat| if side == Side::Left { a.mul(b) } else { b.mul(a) };
    let at = || format!("{m} {side:?} bar={bar} at {}", q.key());
    ensure(prod(&k, &ki).approx_eq(&Mat::identity(m.module_dim())), || format!("K K^-1 on {}", at()))?;
    ensure(prod(&k, &e).approx_eq(&prod(&e, &k).scale(&q.q_pow(2))), || format!("KE on {}", at()))?;
    ensure(prod(&k, &f).approx_eq(&prod(&f, &k).scale(&q.q_pow(-2))), || format!("KF on {}", at()))?;
    let rhs = k.sub(&ki).scale(&(q.q() - q.q_pow(-1)).inv().unwrap());
    ensure(prod(&e, &f).sub(&prod(&f, &e)).approx_eq(&rhs), || format!("[E,F] on {}", at()))
}

fn quantum_group() -> Outcome {
    for m in up_to(6) {
        for side in [Side::Left, Side::Right] {
            for bar in [false, true] {
                relations_on(&m, side, bar, &v2())?;
                if m.n() <= 4 {
                    relations_on(&m, side, bar, &g())?;
                }
            }
        }
    }
    for q in [v2(), g()] {
        for m in up_to(4).into_iter().filter(|m| m.d() >= 2) {
            let a = MultiIndex::new(m.entries()[..1].to_vec()).unwrap();
            let b = MultiIndex::new(m.entries()[1..].to_vec()).unwrap();
            for k in 0..=3 {
                for l in 0..=3 {
                    for mm in [-1i64, 0, 1] {
                        let lhs = AlgebraElement::monomial(false, k, mm, l).matrix(&m, Side::Left, &q).unwrap();
                        let rhs = coproduct_power_matrix(&a, &b, k, mm, l, &q).unwrap();
                        ensure(lhs.approx_eq(&rhs), || format!("E^{k}K^{mm}F^{l} on {m} at {}", q.key()))?;
                    }
                }
            }
        }
    }
    Ok("relations n <= 6 (v = 2) and n <= 4 (generic); coproduct powers k, l <= 3, n <= 4".into())
}

fn highest_weight() -> Outcome {
    let q = v2();
    for m in up_to(6) {
        for (s, d) in dims_d(&m) {
            let h = hw_space(&m, s, Side::Left, &q).unwrap().vectors.len() as u64;
            ensure(h == d, || format!("dim H on {m}, s={s}: {h} vs {d}"))?;
            ensure(link_pattern_basis(&m, s, Side::Left, &q).unwrap().rank() as u64 == d, || format!("w-basis rank on {m}, s={s}"))?;
            ensure(conformal_block_basis(&m, s, Side::Left, &q).unwrap().rank() as u64 == d, || format!("u-basis rank on {m}, s={s}"))?;
        }
    }
    for m in up_to(5) {
        let ws = walks_over(&m);
        let us: Vec<_> = ws.iter().map(|w| conformal_block(w, &m, Side::Left, &q).unwrap()).collect();
        let ubs: Vec<_> = ws.iter().map(|w| conformal_block(w, &m, Side::Right, &q).unwrap()).collect();
        for (i, wi) in ws.iter().enumerate() {
            for (j, u) in us.iter().enumerate() {
                let p = pairing(&ubs[i], u, &q).unwrap();
                if i == j {
                    ensure(p == cb_pairing_expected(wi, &m, &q).unwrap(), || format!("Gram diagonal at {wi} over {m}"))?;
                } else {
                    ensure(p.is_zero(), || format!("Gram off-diagonal {wi}, {} over {m}", ws[j]))?;
                }
            }
        }
    }
    Ok("dim H = D and full-rank bases for n <= 6; diagonal Gram for n <= 5 (v = 2)".into())
}

fn pairing_correspondence() -> Outcome {
    let q = v2();
    let mut pairs = 0;
    for m in up_to(6) {
        for s in defect_set(&m) {
            let pats = valenced_link_patterns(&m, s);
            let states: Vec<_> = pats.iter().map(|a| LinkState::valenced(a, &q).unwrap()).collect();
            let ws: Vec<_> = pats.iter().map(|a| w_vector(a, Side::Left, &q).unwrap()).collect();
            let wbs: Vec<_> = pats.iter().map(|a| w_vector(a, Side::Right, &q).unwrap()).collect();
            for i in 0..pats.len() {
                for j in 0..pats.len() {
                    let lhs = pairing(&wbs[i], &ws[j], &q).unwrap();
                    let rhs = ls_pairing(&states[i], &states[j]).unwrap();
                    ensure(lhs == rhs, || format!("<w({}), w({})> over {m}", pats[i], pats[j]))?;
                    pairs += 1;
                }
            }
        }
    }
    for q in [g(), v2()] {
        let cw = q.i() * q.v();
        let ccw = -(q.i() * q.v_pow(-1));
        let cap = flat_action(&Diagram::r(2, 1).unwrap(), &q);
        ensure(cap.get(0, 1) == cw && cap.get(0, 2) == ccw, || format!("turn-back weights at {}", q.key()))?;
        ensure(&cw * &cw + &ccw * &ccw == q.nu(), || "oriented loop sum".into())?;
        let s = pairing(&singlet(Side::Right, &q), &singlet(Side::Left, &q), &q).unwrap();
        ensure(s == q.nu(), || format!("<singlet, singlet> = {s} at {}", q.key()))?;
    }
    Ok(format!("{pairs} pattern pairs for n <= 6 (v = 2); turn-back weights"))
}

fn schur_weyl() -> Outcome {
    let q = v2();
    let mut n_cases = 0;
    for m in up_to(6) {
        let r = verify_duality(&m, &q).map_err(|e| format!("{m}: {e}"))?;
        let sum_d2: usize = defect_set(&m).iter().map(|&s| (dim_d(&m, s) as usize).pow(2)).sum();
        ensure(r.commuting, || format!("actions do not commute on {m}"))?;
        ensure(r.dim_tl == sum_d2 && r.dim_image == sum_d2, || format!("faithfulness on {m}: {} vs {sum_d2}", r.dim_image))?;
        ensure(r.dim_uq_commutant == sum_d2, || format!("commutant on {m}: {} vs {sum_d2}", r.dim_uq_commutant))?;
        ensure(r.isomorphism == Some(true), || format!("isomorphism on {m}"))?;
        n_cases += 1;
    }
    let m = MultiIndex::flat(6);
    let t = Instant::now();
    let c = commutant(&uq_generators(&m, &q).unwrap(), Some(&grading(&m))).unwrap();
    let took = t.elapsed();
    ensure(c.len() == 132, || format!("commutant of 1^6 has dimension {}", c.len()))?;
    ensure(took < Duration::from_secs(60), || format!("1^6 commutant took {took:.1?}"))?;
    Ok(format!("{n_cases} multiindices, n <= 6; 1^6 commutant in {took:.1?}"))
}

fn generator_correspondence() -> Outcome {
    let q = g();
    ensure(gen_proj_check(2, 1, &q).unwrap(), || "nu pi = I(U1)".into())?;
    for (r, t) in [(1, 1), (2, 1), (2, 2)] {
        for s in defect_interval(r, t) {
            for c in vertex_checks(r, s, t, &q).unwrap() {
                ensure(c.ok, || format!("({r},{t}), s={s}: {}", c.name))?;
            }
        }
    }
    ensure(open_up_check(2, 1, 1, &q).unwrap(), || "factorial identity at (2,1,1)".into())?;
    Ok("projector generator, vertex constants, factorial identity".into())
}

fn root_of_unity() -> Outcome {
    let q3 = QSpec::root(1, 3).unwrap();
    let m = MultiIndex::flat(3);
    let r = radical_checks(&m, &q3).unwrap();
    ensure(r.ok(), || format!("radical inclusions at e^(i pi/3):\n{r}"))?;
    ensure(r.rows.iter().any(|x| x.rad_l > 0), || "no radical found at e^(i pi/3)".into())?;
    for q in [QSpec::root(1, 2).unwrap(), QSpec::root(-1, 2).unwrap()] {
        let rep = exceptional_qi_checks(&q).unwrap();
        ensure(rep.ok(), || format!("q = {}:\n{rep}", q.key()))?;
    }
    Ok("radicals at e^(i pi/3) on 1^3; relations at q = +-i".into())
}

fn classical() -> Outcome {
    let q = QSpec::classical();
    ensure(q.nu() == Scalar::int(-2), || "nu at q = 1".into())?;
    let mut dims = Vec::new();
    for n in 1..=6 {
        let m = MultiIndex::flat(n);
        let r = classical_mode(&m).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("report for 1^{n}:\n{r}"))?;
        ensure(r.dim_uq_commutant as u64 == catalan(n as u64), || format!("1^{n}: {} vs C_{n}", r.dim_uq_commutant))?;
        let want: Vec<(u32, usize)> = count_walks(&m).into_iter().map(|(s, c)| (s, c as usize)).collect();
        ensure(r.decomposition == want, || format!("1^{n}: multiplicities {:?}", r.decomposition))?;
        dims.push(r.dim_uq_commutant.to_string());
    }
    Ok(format!("commutant dims {} for n = 1..6", dims.join(",")))
}

fn runner(seed: u8) -> TestRunner {
    let config = Config { cases: 200, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn small_multiindex(max_n: usize) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(1u32..=3, 1..=max_n)
        .prop_filter("size", move |v| v.iter().sum::<u32>() as usize <= max_n)
        .prop_map(|v| MultiIndex::new(v).unwrap())
}

fn vector(m: &MultiIndex, side: Side, coords: &[i64]) -> ModuleVector {
    let c = (0..m.module_dim()).map(|k| (k, Scalar::int(coords[k % coords.len()]))).filter(|(_, c)| !c.is_zero()).collect();
    ModuleVector::new(m, side, c)
}

fn coords() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..=12)
}

fn word_tangle(m: &MultiIndex, words: &[(i64, Vec<usize>)], q: &QSpec) -> Tangle {
    let mut t = Tangle::zero(m.clone(), m.clone(), q);
    for (c, w) in words {
        let mut p = Tangle::identity(m, q);
        for &i in w {
            let u = Tangle::u_valenced(m, 1 + i % (m.d() - 1), q).unwrap();
            p = p.compose(&u).unwrap();
        }
        t = t.add(&p.scale(&Scalar::int(*c))).unwrap();
    }
    t
}

fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

fn properties() -> Outcome {
    let q = g();

    runner(1)
        .run(&(small_multiindex(4), coords(), coords(), 0usize..3, any::<bool>()), |(m, a, b, x, bar)| {
            let x = [Gen::E, Gen::F, Gen::K][x];
            let left = generator(&m, Side::Left, bar, x, &q).unwrap();
            let right = generator(&m, Side::Right, bar, x, &q).unwrap();
            let (vb, w) = (vector(&m, Side::Right, &a), vector(&m, Side::Left, &b));
            let lhs = pairing(&vb, &w.apply(&left), &q).unwrap();
            let rhs = pairing(&vb.apply(&right), &w, &q).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| fail("pairing invariance", e))?;

    runner(2)
        .run(&(small_multiindex(4), coords(), (0u32..=2, -1i64..=1, 0u32..=2), any::<bool>()), |(m, a, (k, mm, l), bar)| {
            let v = vector(&m, Side::Left, &a);
            let vr = vector(&m, Side::Right, &a);
            prop_assert_eq!(v.star(&q).star(&q), v.clone());
            prop_assert_eq!(v.op(&q).unwrap().op(&q).unwrap(), v.clone());
            prop_assert_eq!(vr.op(&q).unwrap().op(&q).unwrap(), vr);
            let x = AlgebraElement::monomial(bar, k, mm, l);
            prop_assert_eq!(v.act(&x, &q).unwrap().star(&q), v.star(&q).act(&x.star(), &q).unwrap());
            Ok(())
        })
        .map_err(|e| fail("star/op involutions", e))?;

    let word = prop::collection::vec((-2i64..=2, prop::collection::vec(0usize..8, 0..=3)), 1..=3);
    runner(3)
        .run(
            &(small_multiindex(5).prop_filter("two bins", |m| m.d() >= 2), word.clone(), word.clone(), word),
            |(m, a, b, c)| {
                let (a, b, c) = (word_tangle(&m, &a, &q), word_tangle(&m, &b, &q), word_tangle(&m, &c, &q));
                let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
                let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                Ok(())
            },
        )
        .map_err(|e| fail("tangle associativity", e))?;

    runner(4)
        .run(&(small_multiindex(5), any::<prop::sample::Index>(), any::<bool>()), |(m, pick, generic)| {
            let q = if generic { g() } else { v2() };
            let basis = diagram_basis(&m, &m);
            let d = basis[pick.index(basis.len())].clone();
            let t = Tangle::from_diagram(d, m.clone(), m.clone(), &q).unwrap();
            let op = tl_action(&t).unwrap().operator;
            for (j, col) in op.col.iter().enumerate() {
                for i in col.keys() {
                    prop_assert_eq!(grade_of(&m, *i), grade_of(&m, j));
                }
            }
            Ok(())
        })
        .map_err(|e| fail("grading preservation", e))?;

    Ok("4 properties x 200 cases, fixed seeds".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("counting identities", counting),
        ("diagram algebra", diagram_algebra),
        ("Jones-Wenzl projectors", jones_wenzl_criterion),
        ("Theta networks", theta_criterion),
        ("quantum group relations", quantum_group),
        ("highest-weight structure", highest_weight),
        ("pairing correspondence", pairing_correspondence),
        ("commuting actions and Schur-Weyl duality", schur_weyl),
        ("generator correspondence", generator_correspondence),
        ("root-of-unity degeneracies", root_of_unity),
        ("classical case", classical),
        ("property-based checks", properties),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|sc| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                sc.spawn(move || {
                    let t = Instant::now();
                    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default();
                        Err(format!("panicked: {msg}"))
                    });
                    (r, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), (r, took))) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
