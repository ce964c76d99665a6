use std::fmt;

use super::gauss::Gq;

/// Dense polynomial in `v` with Gaussian-rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly(pub Vec<Gq>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Gq) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn monomial(c: Gq, k: usize) -> Self {
        let mut v = vec![Gq::zero(); k + 1];
        v[k] = c;
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Gq {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Gq::zero();
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).unwrap_or(&z);
            let b = o.0.get(i).unwrap_or(&z);
            v.push(a + b);
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gq::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &Gq) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg().expect("division by zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.clone();
        if r.0.len() <= dd {
            return (Poly::zero(), r);
        }
        let mut q = vec![Gq::zero(); r.0.len() - dd];
        while let Some(rd) = r.deg() {
            if rd < dd {
                break;
            }
            let c = r.lead() * &inv;
            let k = rd - dd;
            for (i, b) in d.0.iter().enumerate() {
                r.0[i + k] = &r.0[i + k] - &(&c * b);
            }
            r.0[rd] = Gq::zero();
            q[k] = c;
            r.trim();
        }
        let mut qp = Poly(q);
        qp.trim();
        (qp, r)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().inv().unwrap();
        self.scale(&inv)
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    pub fn eval<T, F>(&self, x: &T, lift: F, zero: T) -> T
    where
        T: Clone + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
        F: Fn(&Gq) -> T,
    {
        let mut acc = zero;
        for c in self.0.iter().rev() {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }
}

/// Rational function `v^shift * num / den` in lowest terms.
///
/// `num` and `den` have nonzero constant terms, `den` is monic and
/// `gcd(num, den) = 1`, so equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
    pub shift: i64,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::constant(Gq::one()), shift: 0 }
    }

    pub fn constant(c: Gq) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(Gq::one()), shift: 0 }
    }

    pub fn v_pow(k: i64) -> Self {
        RatFunc { num: Poly::constant(Gq::one()), den: Poly::constant(Gq::one()), shift: k }
    }

    pub fn from_parts(num: Poly, den: Poly, shift: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        let mut num = num.shift_down(vn);
        let mut den = den.shift_down(vd);
        let shift = shift + vn as i64 - vd as i64;
        if den.deg() != Some(0) {
            let g = Poly::gcd(&num, &den);
            if g.deg() != Some(0) {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
        }
        let l = den.lead().inv().unwrap();
        RatFunc { num: num.scale(&l), den: den.scale(&l), shift }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.shift == 0 && self.num.deg() == Some(0) && self.den.deg() == Some(0) {
            return Some(self.num.0[0].clone());
        }
        None
    }

    pub fn is_laurent(&self) -> bool {
        self.den.deg() == Some(0)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = lift(&self.num, (self.shift - m) as usize);
        let b = lift(&o.num, (o.shift - m) as usize);
        if self.den == o.den {
            return RatFunc::from_parts(a.add(&b), self.den.clone(), m);
        }
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        RatFunc::from_parts(num, self.den.mul(&o.den), m)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone(), shift: self.shift }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && o.is_laurent() {
            let num = self.num.mul(&o.num);
            return RatFunc { num, den: Poly::constant(Gq::one()), shift: self.shift + o.shift };
        }
        RatFunc::from_parts(self.num.mul(&o.num), self.den.mul(&o.den), self.shift + o.shift)
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::from_parts(self.den.clone(), self.num.clone(), -self.shift))
    }
}

fn lift(p: &Poly, k: usize) -> Poly {
    if k == 0 {
        return p.clone();
    }
    let mut v = vec![Gq::zero(); k];
    v.extend(p.0.iter().cloned());
    Poly(v)
}

pub(crate) fn fmt_laurent(p: &Poly, shift: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let e = k as i64 + shift;
        match e {
            0 => write!(f, "{c}")?,
            1 if c.is_one() => write!(f, "v")?,
            1 => write!(f, "{c}*v")?,
            _ if c.is_one() => write!(f, "v^{e}")?,
            _ => write!(f, "{c}*v^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            let c = &self.den.0[0];
            if c.is_one() {
                return fmt_laurent(&self.num, self.shift, f);
            }
        }
        write!(f, "(")?;
        fmt_laurent(&self.num, self.shift, f)?;
        write!(f, ")/(")?;
        fmt_laurent(&self.den, 0, f)?;
        write!(f, ")")
    }
}
