use super::*;

fn g() -> QSpec {
    QSpec::Generic
}

#[test]
fn q_int_closed_form() {
    assert!(q_int(0, &g()).is_zero());
    let two = q_int(2, &g());
    assert_eq!(two, g().q() + g().q_pow(-1));
    let q4 = QSpec::rational_int(2).unwrap();
    assert_eq!(q_int(2, &q4), Scalar::frac(17, 4));
    assert_eq!(q_int(-3, &g()), -q_int(3, &g()));
}

#[test]
fn factorial_and_binomial() {
    assert_eq!(q_factorial(3, &g()), q_int(2, &g()) * q_int(3, &g()));
    assert_eq!(q_binomial(2, 1, &g()), q_int(2, &g()));
    assert!(q_binomial(3, 4, &g()).is_zero());
    assert!(q_binomial(3, -1, &g()).is_zero());
    for m in 1..=8i64 {
        for l in 0..=m {
            let b = q_binomial(m, l, &g());
            let Scalar::R(r) = &b else { continue };
            assert!(r.is_laurent(), "binomial ({m},{l}) not a Laurent polynomial: {b}");
        }
    }
}

#[test]
fn pascal_identity() {
    // binom(m,l) = q^(l-m) binom(m-1,l-1) + q^l binom(m-1,l)
    let q = g();
    for m in 1..=8i64 {
        for l in 0..=m {
            let lhs = q_binomial(m, l, &q);
            let rhs = q.q_pow(l - m) * q_binomial(m - 1, l - 1, &q) + q.q_pow(l) * q_binomial(m - 1, l, &q);
            assert_eq!(lhs, rhs, "m={m} l={l}");
        }
    }
}

#[test]
fn orders() {
    assert_eq!(order_pq(&QSpec::root(1, 3).unwrap()), QOrder::Finite(3));
    assert_eq!(order_pq(&QSpec::rational_int(2).unwrap()), QOrder::Infinite);
    assert_eq!(order_pq(&QSpec::root(1, 2).unwrap()), QOrder::Finite(2));
    let z = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
    assert_eq!(order_pq(&QSpec::float(z).unwrap()), QOrder::Finite(5));
    assert!(QSpec::rational_int(1).is_err());
    assert!(QSpec::rational(Gq::i()).is_err());
    assert!(QSpec::root(2, 4).is_err());
}

#[test]
fn theta_values() {
    let q = g();
    assert_eq!(theta(1, 0, 1, &q).unwrap(), -q_int(2, &q));
    assert_eq!(theta(1, 2, 1, &q).unwrap(), q_int(3, &q));
    assert_eq!(theta(0, 0, 0, &q).unwrap(), Scalar::one());
    assert!(matches!(theta(1, 3, 1, &q), Err(Error::Inadmissible(..))));
    assert!(matches!(theta(1, 1, 1, &q), Err(Error::Inadmissible(..))));
}

#[test]
fn theta_symmetric() {
    let q = g();
    for r in 0..=6u32 {
        for s in 0..=6u32 {
            for t in 0..=6u32 {
                if r + s + t > 12 || !admissible(r, s, t) {
                    continue;
                }
                let base = theta(r, s, t, &q).unwrap();
                for (a, b, c) in [(r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)] {
                    assert_eq!(base, theta(a, b, c, &q).unwrap());
                }
            }
        }
    }
}

#[test]
fn nu_is_minus_two_bracket() {
    for q in [g(), QSpec::rational_int(3).unwrap(), QSpec::root(1, 3).unwrap(), QSpec::classical()] {
        assert_eq!(q.nu(), -q_int(2, &q));
        assert_eq!(q.nu(), -(q.q() + q.q_pow(-1)));
    }
    assert_eq!(QSpec::classical().nu(), Scalar::int(-2));
    assert_eq!(q_int(5, &QSpec::classical()), Scalar::int(5));
}

#[test]
fn roots_of_unity() {
    let q = QSpec::root(1, 3).unwrap();
    assert!(q_int(3, &q).is_zero());
    assert!(!q_int(2, &q).is_zero());
    assert_eq!(&q.v() * &q.v(), q.q());
    assert_eq!(&q.i() * &q.i(), Scalar::int(-1));
    let qi = QSpec::root(1, 2).unwrap();
    // i*v = zeta_8^2 * zeta_8 = zeta_8^3
    let iv = &qi.i() * &qi.v();
    assert_eq!(iv, Scalar::C(Cyc::zeta_pow(8, 1, 3)));
    assert!(qi.nu().is_zero());
    for p in 2..=7u32 {
        for pp in 1..(2 * p as i64) {
            let Ok(q) = QSpec::root(pp, p) else { continue };
            assert!(q_int(p as i64, &q).is_zero());
            for k in 1..p as i64 {
                assert!(!q_int(k, &q).is_zero(), "[{k}] at root:{pp}:{p}");
            }
            let x = &q.v() + &q.i();
            assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        }
    }
}

#[test]
fn specialization() {
    let s = parse_scalar("v + v^-1", &g()).unwrap();
    let at2 = specialize(&s, &QSpec::rational_int(2).unwrap()).unwrap();
    assert_eq!(at2, Scalar::frac(5, 2));
    let three = q_int(3, &g());
    assert!(specialize(&three, &QSpec::root(1, 3).unwrap()).unwrap().is_zero());
    let iv = parse_scalar("i*v", &g()).unwrap();
    assert_eq!(specialize(&iv, &QSpec::root(1, 2).unwrap()).unwrap(), Scalar::C(Cyc::zeta_pow(8, 1, 3)));
    let inv = parse_scalar("1/(q^2+1)", &g()).unwrap();
    assert!(specialize(&inv, &QSpec::root(1, 2).unwrap()).is_err());
}

#[test]
fn display_round_trips() {
    let q = g();
    let samples = ["(1/2)*v^-3 + i*v", "1/(v^2+1)", "3 - 2*i", "(2/3)*i*v^5 - v", "0"];
    for s in samples {
        let x = parse_scalar(s, &q).unwrap();
        let y = parse_scalar(&x.to_string(), &q).unwrap();
        assert_eq!(x, y, "{s} -> {x}");
    }
    for spec in ["root:1:3", "root:3:5", "root:1:2", "root:-1:4"] {
        let q = parse_qspec(spec).unwrap();
        let x = &(&q.v() + &q.i()) * &q.q_pow(3);
        let y = parse_scalar(&x.to_string(), &q).unwrap();
        assert_eq!(x, y, "{spec}: {x}");
    }
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_scalar("v +", &g()), Err(Error::Parse { .. })));
    assert!(matches!(parse_scalar("2 $ v", &g()), Err(Error::Parse { pos: 2, .. })));
    assert!(parse_qspec("rational:1/1").is_err());
    assert!(parse_qspec("float:0.5,0.8660254037844386").is_ok());
    assert!(parse_qspec("bogus").is_err());
}
