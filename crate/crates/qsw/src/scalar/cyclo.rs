use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use super::gauss::Gq;

static PHI: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = PHI.lock().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every proper-divisor cyclotomic factor
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let f = cyclotomic_poly(d);
            num = int_exact_div(&num, &f);
        }
    }
    let arc = Arc::new(num);
    PHI.lock().insert(n, arc.clone());
    arc
}

fn int_exact_div(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &r[k + dd] / &d[dd];
        for (i, b) in d.iter().enumerate() {
            r[k + i] -= &c * b;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// Element of the cyclotomic field `Q(zeta_n)` as a polynomial in `zeta_n`
/// reduced modulo the `n`-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc {
    pub n: u32,
    /// Exponent with `v = zeta_n^pp`; only used for printing.
    pub pp: i64,
    pub c: Vec<BigRational>,
}

impl Cyc {
    pub fn zero(n: u32, pp: i64) -> Self {
        Cyc { n, pp, c: Vec::new() }
    }

    pub fn rational(n: u32, pp: i64, r: BigRational) -> Self {
        let mut x = Cyc { n, pp, c: vec![r] };
        x.trim();
        x
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, pp: i64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Cyc::reduce(n, pp, c)
    }

    pub fn from_gq(n: u32, pp: i64, g: &Gq) -> Self {
        assert!(n % 4 == 0, "Gaussian lift needs 4 | n");
        let i = Cyc::zeta_pow(n, pp, (n / 4) as i64);
        let re = Cyc::rational(n, pp, g.re.clone());
        let im = Cyc::rational(n, pp, g.im.clone());
        re.add(&im.mul(&i))
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    fn reduce(n: u32, pp: i64, mut c: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = c.len() - d;
            // phi is monic; subtract top * x^k * phi
            for (i, b) in phi.iter().enumerate().take(d) {
                if !b.is_zero() {
                    c[k + i] -= &top * BigRational::from_integer(b.clone());
                }
            }
        }
        let mut x = Cyc { n, pp, c };
        x.trim();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.n, o.n, "mixed cyclotomic fields");
        let len = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        let c = (0..len)
            .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
            .collect();
        let mut x = Cyc { n: self.n, pp: self.pp, c };
        x.trim();
        x
    }

    pub fn neg(&self) -> Cyc {
        Cyc { n: self.n, pp: self.pp, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        assert_eq!(self.n, o.n, "mixed cyclotomic fields");
        if self.is_zero() || o.is_zero() {
            return Cyc::zero(self.n, self.pp);
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Cyc::reduce(self.n, self.pp, c)
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.n)
            .iter()
            .map(|b| BigRational::from_integer(b.clone()))
            .collect();
        // invariant: s_k * self = r_k (mod phi)
        let (mut r0, mut r1) = (phi, self.c.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while r1.len() != 1 {
            if r1.is_empty() {
                return None;
            }
            let (q, r) = rat_divrem(&r0, &r1);
            let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Some(Cyc::reduce(self.n, self.pp, s))
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.n as f64);
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.c.iter().rev() {
            acc = acc * z + super::gauss::rat_to_f64(c);
        }
        acc
    }
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    rat_trim(&mut c);
    c
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let z = BigRational::zero();
    let mut c: Vec<BigRational> =
        (0..len).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    rat_trim(&mut c);
    c
}

fn rat_divrem(a: &[BigRational], d: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rat_trim(&mut r);
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dd];
    let inv = d[dd].recip();
    while r.len() > dd {
        let k = r.len() - 1 - dd;
        let c = r.last().unwrap() * &inv;
        for (i, b) in d.iter().enumerate() {
            r[k + i] -= &c * b;
        }
        r.pop();
        rat_trim(&mut r);
        q[k] = c;
    }
    rat_trim(&mut q);
    (q, r)
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u32
}

/// Signed exponent pair `(a, b)` with `a*pp + b*p = 1`, so `zeta = v^a i^b`.
pub fn bezout(pp: i64, p: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (pp, p);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0.is_negative() {
        (-s0, -t0)
    } else {
        (s0, t0)
    }
}


impl std::fmt::Display for Cyc {
    /// Writes `sum c_k zeta^k` with `zeta = v^a * i^b` rewritten in the scalar grammar.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = (self.n / 4) as i64;
        let (a, b) = bezout(self.pp, p);
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as i64;
            let unit = match (b * k).rem_euclid(4) {
                0 => Gq::real(c.clone()),
                1 => Gq::new(BigRational::zero(), c.clone()),
                2 => Gq::real(-c.clone()),
                _ => Gq::new(BigRational::zero(), -c.clone()),
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = a * k;
            if e == 0 {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{unit}*v^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
