use super::*;
use crate::combin::{compositions, dim_d};
use crate::diagram::jones_wenzl;
use crate::uqrep::{pair_maps, w_vector};

fn g() -> QSpec {
    QSpec::Generic
}

fn v2() -> QSpec {
    QSpec::rational_int(2).unwrap()
}

fn mi(s: &str) -> MultiIndex {
    s.parse().unwrap()
}

fn all_up_to(n: usize) -> Vec<MultiIndex> {
    (1..=n).flat_map(compositions).collect()
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn u1_on_two_points() {
    let q = g();
    let u = tl_action(&Tangle::u(2, 1, &q).unwrap()).unwrap().operator;
    let col = &u.col[1];
    assert_eq!(u.get(1, 1), -q.q());
    assert_eq!(u.get(2, 1), Scalar::one());
    assert_eq!(col.len(), 2);
    assert!(u.col[0].is_empty() && u.col[3].is_empty());
}

#[test]
fn generator_and_projector_correspondence() {
    for q in [g(), v2(), QSpec::root(1, 5).unwrap()] {
        for n in 2..=4 {
            for j in 1..n {
                assert!(gen_proj_check(n, j, &q).unwrap(), "n={n} j={j} q={}", q.key());
            }
        }
    }
    for n in 1..=4 {
        assert!(recover_check(n, &g()).unwrap(), "n={n}");
    }
}

#[test]
fn three_vertex_constants() {
    let q = g();
    for (r, t) in [(1, 1), (2, 1), (2, 2)] {
        for s in crate::combin::defect_interval(r, t) {
            for c in vertex_checks(r, s, t, &q).unwrap() {
                assert!(c.ok, "{}", c.name);
            }
        }
    }
    assert!(open_up_check(2, 1, 1, &q).unwrap());
    let (_, b) = vertex_constants(1, 0, 1, &q).unwrap();
    // B for k = 1 is (q - q^-1)/(i q^(1/2))
    assert_eq!(b, (q.q() - q.q_pow(-1)) / (q.i() * q.v()));
}

#[test]
fn homomorphism_and_grading() {
    let q = v2();
    for m in [mi("1,1,1"), mi("2,1"), mi("1,2,1"), mi("2,2")] {
        let basis: Vec<Tangle> = diagram_basis(&m, &m)
            .into_iter()
            .map(|d| Tangle::from_diagram(d, m.clone(), m.clone(), &q).unwrap())
            .collect();
        let gr = grading(&m);
        for a in &basis {
            let ia = tl_action(a).unwrap().operator;
            for (j, col) in ia.col.iter().enumerate() {
                assert!(col.keys().all(|&i| gr[i] == gr[j]));
            }
            for b in &basis {
                let ib = tl_action(b).unwrap().operator;
                let ab = tl_action(&a.compose(b).unwrap()).unwrap().operator;
                assert!(ab.approx_eq(&ia.mul(&ib)), "{m}: {a} * {b}");
            }
        }
    }
}

#[test]
fn shortcut_matches_embedded_tangle() {
    let q = g();
    for m in [mi("2,1"), mi("1,2,1")] {
        for d in diagram_basis(&m, &m) {
            let t = Tangle::from_diagram(d, m.clone(), m.clone(), &q).unwrap();
            let full = tl_action(&t.embed().unwrap()).unwrap().operator;
            let p = hat_projection(&m, Side::Left, &q).unwrap();
            let j = embedding(&m, Side::Left, &q).unwrap();
            assert!(tl_action(&t).unwrap().operator.approx_eq(&p.mul(&full).mul(&j)));
        }
    }
}

#[test]
fn commuting_actions_and_w_transport() {
    let q = v2();
    for m in all_up_to(6) {
        let uq = uq_generators(&m, &q).unwrap();
        for j in 1..m.d() {
            let t = Tangle::u_valenced(&m, j, &q).unwrap();
            let u = tl_action(&t).unwrap().operator;
            for a in &uq {
                assert!(u.mul(a).approx_eq(&a.mul(&u)), "{m} U{j}");
            }
            if m.n() > 5 {
                continue;
            }
            for s in defect_set(&m) {
                for alpha in valenced_link_patterns(&m, s) {
                    let moved = LinkState::valenced(&alpha, &q).unwrap().act(&t).unwrap();
                    let lhs = w_vector(&alpha, Side::Left, &q).unwrap().apply(&u);
                    assert_eq!(lhs, w_state(&moved, Side::Left, &q).unwrap(), "{m} U{j} {alpha}");
                }
            }
        }
    }
}

#[test]
fn commutant_examples() {
    let q = v2();
    let dims = |s: &str| commutant(&uq_generators(&mi(s), &q).unwrap(), Some(&grading(&mi(s)))).unwrap().len();
    assert_eq!(dims("1,1"), 2);
    assert_eq!(dims("1,1,1"), 5);
    assert_eq!(dims("2,1"), 2);
    // full matrix algebra on a 3-dimensional space
    let mut units = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut m = Mat::zeros(3, 3);
            m.set(i, j, Scalar::one());
            units.push(m);
        }
    }
    assert_eq!(commutant(&units, None).unwrap().len(), 1);
    let fl = Mat::identity(2).scale(&Scalar::F(num_complex::Complex64::new(1.0, 0.0)));
    assert!(matches!(commutant(&[fl], None), Err(Error::Mode(_))));
}

#[test]
fn duality_reports() {
    let r = verify_duality(&mi("1,1,1"), &v2()).unwrap();
    assert!(r.faithful && r.duality_holds == Some(true) && r.isomorphism == Some(true) && r.commuting);
    assert_eq!(r.decomposition, vec![(1, 2), (3, 1)]);
    assert_eq!((r.dim_tl, r.dim_image, r.dim_uq_commutant, r.dim_tl_commutant), (5, 5, 5, Some(20)));

    let r = verify_duality(&mi("2,1"), &g()).unwrap();
    assert_eq!(r.commutant_q, v2());
    assert!(!r.notes.is_empty());
    assert_eq!((r.dim_tl, r.dim_image, r.dim_uq_commutant), (2, 2, 2));
    assert!(r.ok());

    let qi = QSpec::root(1, 2).unwrap();
    let r = verify_duality(&mi("1,1,1"), &qi).unwrap();
    assert!(r.faithful && r.commuting);
    assert_eq!(r.duality_holds, None);
    assert!(!r.semisimple_regime);
}

#[test]
fn duality_in_the_semisimple_regime() {
    let q = v2();
    for m in all_up_to(4) {
        let r = verify_duality(&m, &q).unwrap();
        assert!(r.ok(), "{m}\n{r}");
        let expect: usize = defect_set(&m).iter().map(|&s| (dim_d(&m, s) as usize).pow(2)).sum();
        assert_eq!(r.dim_tl, expect);
        for &(s, h) in &r.decomposition {
            assert_eq!(h as u64, dim_d(&m, s));
        }
    }
    let r = verify_duality(&mi("1,1,1"), &QSpec::root(1, 5).unwrap()).unwrap();
    assert!(r.ok() && r.duality_holds == Some(true));
}

#[test]
fn double_commutant() {
    let q = v2();
    for m in all_up_to(4) {
        let dim = m.module_dim();
        let uq = uq_generators(&m, &q).unwrap();
        let first = commutant(&uq, Some(&grading(&m))).unwrap();
        let second = commutant(&first, None).unwrap();
        let algebra = generated_algebra(&uq, dim);
        assert_eq!(second.len(), algebra.rank(), "{m}");
        assert!(second.iter().all(|x| algebra.contains(&x.flatten())), "{m}");
    }
}

#[test]
fn classical_duality() {
    let r = classical_mode(&mi("1,1,1,1")).unwrap();
    assert_eq!(r.decomposition, vec![(0, 2), (2, 3), (4, 1)]);
    assert_eq!(r.dim_uq_commutant, 14);
    assert!(r.ok(), "{r}");
    for n in 1..=5 {
        let r = classical_mode(&MultiIndex::flat(n)).unwrap();
        assert_eq!(r.dim_uq_commutant as u64, catalan(n as u64));
        assert!(r.ok());
    }
    let m = mi("1,1,1");
    let c = QSpec::classical();
    let gen = |x| (*crate::uqrep::generator(&m, Side::Left, false, x, &c).unwrap()).clone();
    let (e, f, h) = (gen(Gen::E), gen(Gen::F), gen(Gen::H));
    assert!(e.mul(&f).sub(&f.mul(&e)).approx_eq(&h));
}

#[test]
fn radicals() {
    for m in [mi("1,1,1"), mi("2,1,1"), mi("1,1,1,1")] {
        let r = radical_checks(&m, &g()).unwrap();
        assert!(r.ok());
        assert!(r.rows.iter().all(|x| x.rad_l == 0 && x.rad_h == 0 && x.quotient == x.dim_d));
    }
    let q3 = QSpec::root(1, 3).unwrap();
    for m in [mi("1,1,1"), mi("1,1,1,1"), mi("2,1,1")] {
        let r = radical_checks(&m, &q3).unwrap();
        assert!(r.ok(), "{m}\n{r}");
    }
    let r = radical_checks(&mi("1,1,1"), &q3).unwrap();
    let s1 = r.rows.iter().find(|x| x.s == 1).unwrap();
    assert_eq!(s1.rad_l, crate::diagram::radical_dim(&mi("1,1,1"), 1, &q3).unwrap());
    assert_eq!(s1.rad_l, 1);
}

#[test]
fn exceptional_points() {
    for q in [QSpec::root(1, 2).unwrap(), QSpec::root(-1, 2).unwrap()] {
        let r = exceptional_qi_checks(&q).unwrap();
        assert!(r.ok(), "{r}");
    }
    assert!(exceptional_qi_checks(&v2()).is_err());
}

#[test]
fn consecutive_generators() {
    let q = v2();
    for m in [mi("1,1"), mi("1,1,1"), mi("2,1"), mi("1,2,1"), mi("2,2")] {
        let r = consecutive_projector_generators(&m, &q).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.algebra_dim, r.commutant_dim);
    }
    let r = consecutive_projector_generators(&mi("1,1"), &q).unwrap();
    assert_eq!((r.generators, r.algebra_dim), (2, 2));
}

#[test]
fn image_and_kernel_of_rho() {
    for q in [g(), v2()] {
        for s in 1..=3 {
            let r = rho_image_kernel(s, &q).unwrap();
            assert!(r.ok(), "{r}");
            assert_eq!(r.image_rank, ((s + 1) * (s + 1)) as usize);
            assert!(r.kernel_checked > 0);
        }
    }
    assert!(rho_image_kernel(2, &QSpec::root(1, 2).unwrap()).is_err());
}

#[test]
fn projector_sizes() {
    // P_3 image on V_(1^3) has rank 4
    let q = g();
    let p = tl_action(&jones_wenzl(3, &q).unwrap()).unwrap().operator;
    assert_eq!(p.rank(), 4);
    let pm = pair_maps(1, 1, 0, Side::Left, &q).unwrap();
    assert_eq!(pm.pi.rank(), 1);
}
