//! Coefficient arithmetic: Gaussian rationals, rational functions in `v = q^(1/2)`,
//! cyclotomic fields and complex floats behind one [`Scalar`] type.

mod cyclo;
mod gauss;
mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub use cyclo::{cyclotomic_poly, totient, Cyc};
pub use gauss::Gq;
pub use parse::{parse_qspec, parse_scalar};
pub use poly::{Poly, RatFunc};

use crate::error::{Error, Result};

/// Zero threshold for float scalars.
pub const FLOAT_ABS_TOL: f64 = 1e-12;
/// Relative equality threshold for float scalars.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// Ring element. Exact variants are kept in canonical form, so derived
/// structure is equality; `F` compares with tolerance.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Gaussian rational; lives in every mode.
    Q(Gq),
    /// Rational function of `v`, generic mode.
    R(RatFunc),
    /// Cyclotomic number, root-of-unity mode.
    C(Cyc),
    /// Complex double, float mode.
    F(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(Gq::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(Gq::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Q(Gq::int(n))
    }

    pub fn frac(a: i64, b: i64) -> Self {
        Scalar::Q(Gq::frac(a, b))
    }

    pub fn i() -> Self {
        Scalar::Q(Gq::i())
    }

    fn norm(self) -> Self {
        match self {
            Scalar::R(r) => match r.as_constant() {
                Some(c) => Scalar::Q(c),
                None => Scalar::R(r),
            },
            Scalar::C(c) => match c.as_rational() {
                Some(r) => Scalar::Q(Gq::real(r)),
                None => Scalar::C(c),
            },
            s => s,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(g) => g.is_zero(),
            Scalar::R(r) => r.is_zero(),
            Scalar::C(c) => c.is_zero(),
            Scalar::F(z) => z.norm() <= FLOAT_ABS_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(g) => g.is_one(),
            Scalar::F(z) => (z - Complex64::new(1.0, 0.0)).norm() <= FLOAT_ABS_TOL,
            _ => false,
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, Scalar::F(_))
    }

    pub fn as_gq(&self) -> Option<&Gq> {
        match self {
            Scalar::Q(g) => Some(g),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Option<Complex64> {
        match self {
            Scalar::Q(g) => Some(g.to_c64()),
            Scalar::C(c) => Some(c.to_c64()),
            Scalar::F(z) => Some(*z),
            Scalar::R(_) => None,
        }
    }

    /// Magnitude used for float pivoting; exact values report 1 when nonzero.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::F(z) => z.norm(),
            s if s.is_zero() => 0.0,
            _ => 1.0,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(g) => Scalar::Q(g.inv()?),
            Scalar::R(r) => Scalar::R(r.inv()?).norm(),
            Scalar::C(c) => Scalar::C(c.inv()?).norm(),
            Scalar::F(z) => Scalar::F(z.inv()),
        })
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Some(acc)
    }

    fn binop(&self, o: &Scalar, op: Op) -> Scalar {
        use Scalar::*;
        match (self, o) {
            (Q(a), Q(b)) => Q(op.gq(a, b)),
            (R(a), R(b)) => R(op.rf(a, b)).norm(),
            (R(a), Q(b)) => R(op.rf(a, &RatFunc::constant(b.clone()))).norm(),
            (Q(a), R(b)) => R(op.rf(&RatFunc::constant(a.clone()), b)).norm(),
            (C(a), C(b)) => C(op.cy(a, b)).norm(),
            (C(a), Q(b)) => C(op.cy(a, &Cyc::from_gq(a.n, a.pp, b))).norm(),
            (Q(a), C(b)) => C(op.cy(&Cyc::from_gq(b.n, b.pp, a), b)).norm(),
            (F(a), F(b)) => F(op.fl(*a, *b)),
            (F(a), Q(b)) => F(op.fl(*a, b.to_c64())),
            (Q(a), F(b)) => F(op.fl(a.to_c64(), *b)),
            (a, b) => panic!("mixed scalar modes: {a} and {b}"),
        }
    }

    /// Structural equality for exact values, tolerance for floats.
    pub fn approx_eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::F(_), _) | (_, Scalar::F(_)) => {
                let (Some(a), Some(b)) = (self.to_c64(), o.to_c64()) else {
                    return false;
                };
                let d = (a - b).norm();
                d <= FLOAT_ABS_TOL || d <= FLOAT_REL_TOL * a.norm().max(b.norm())
            }
            _ => (self - o).is_zero(),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Op {
    fn gq(self, a: &Gq, b: &Gq) -> Gq {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        }
    }
    fn rf(self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        match self {
            Op::Add => a.add(b),
            Op::Sub => a.add(&b.neg()),
            Op::Mul => a.mul(b),
        }
    }
    fn cy(self, a: &Cyc, b: &Cyc) -> Cyc {
        match self {
            Op::Add => a.add(b),
            Op::Sub => a.add(&b.neg()),
            Op::Mul => a.mul(b),
        }
    }
    fn fl(self, a: Complex64, b: Complex64) -> Complex64 {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        self.approx_eq(o)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() && !o.is_float() {
            return self.clone();
        }
        if self.is_zero() && !self.is_float() {
            return o.clone();
        }
        self.binop(o, Op::Add)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if o.is_zero() && !o.is_float() {
            return self.clone();
        }
        self.binop(o, Op::Sub)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if (self.is_zero() && !self.is_float()) || (o.is_zero() && !o.is_float()) {
            return Scalar::zero();
        }
        if self.is_one() && !self.is_float() {
            return o.clone();
        }
        if o.is_one() && !o.is_float() {
            return self.clone();
        }
        self.binop(o, Op::Mul)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(g) => Scalar::Q(-g),
            Scalar::R(r) => Scalar::R(r.neg()),
            Scalar::C(c) => Scalar::C(c.neg()),
            Scalar::F(z) => Scalar::F(-z),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar { (&self).$f(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(g) => write!(f, "{g}"),
            Scalar::R(r) => write!(f, "{r}"),
            Scalar::C(c) => write!(f, "{c}"),
            Scalar::F(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "({}+({})*i)", z.re, z.im)
                }
            }
        }
    }
}

/// Order `p(q)`: smallest `p` with `q^p = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QOrder {
    Finite(u32),
    Infinite,
}

impl QOrder {
    /// `true` when `k < p(q)`.
    pub fn exceeds(&self, k: u32) -> bool {
        match self {
            QOrder::Finite(p) => k < *p,
            QOrder::Infinite => true,
        }
    }
}

impl fmt::Display for QOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QOrder::Finite(p) => write!(f, "{p}"),
            QOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Choice of the deformation parameter.
#[derive(Clone, Debug)]
pub enum QSpec {
    Generic,
    /// Gaussian-rational value of `v`.
    Rational(Gq),
    /// `q = exp(i*pi*pp/p)`.
    Root { pp: i64, p: u32 },
    /// Value of `q`; `v` is its principal square root.
    Float(Complex64),
}

impl PartialEq for QSpec {
    fn eq(&self, o: &QSpec) -> bool {
        self.key() == o.key()
    }
}

impl QSpec {
    /// Rational point `v`; rejects `v` with `q = ±1`.
    pub fn rational(v: Gq) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::Spec("v must be nonzero".into()));
        }
        let q = &v * &v;
        if q.is_one() || (-&q).is_one() {
            return Err(Error::Spec(format!(
                "v = {v} gives q = ±1; use the classical mode for q = 1 or root:<p'>:<p> for q = ±i"
            )));
        }
        Ok(QSpec::Rational(v))
    }

    pub fn rational_int(v: i64) -> Result<Self> {
        QSpec::rational(Gq::int(v))
    }

    pub fn root(pp: i64, p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Spec("root of unity needs p >= 2".into()));
        }
        if num_integer::gcd(pp.unsigned_abs(), p as u64) != 1 {
            return Err(Error::Spec(format!("p' = {pp} and p = {p} are not coprime")));
        }
        Ok(QSpec::Root { pp, p })
    }

    pub fn float(q: Complex64) -> Result<Self> {
        if q.norm() <= FLOAT_ABS_TOL {
            return Err(Error::Spec("q must be nonzero".into()));
        }
        Ok(QSpec::Float(q))
    }

    /// `q = 1`: the classical point, where `[k] = k` and `nu = -2`.
    pub fn classical() -> Self {
        QSpec::Rational(Gq::one())
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, QSpec::Rational(v) if v.is_one())
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, QSpec::Float(_))
    }

    /// Stable textual key; also the CLI syntax.
    pub fn key(&self) -> String {
        match self {
            QSpec::Generic => "generic".into(),
            QSpec::Rational(v) if v.is_one() => "classical".into(),
            QSpec::Rational(v) => format!("rational:{v}"),
            QSpec::Root { pp, p } => format!("root:{pp}:{p}"),
            QSpec::Float(z) => format!("float:{},{}", z.re, z.im),
        }
    }

    pub fn v(&self) -> Scalar {
        match self {
            QSpec::Generic => Scalar::R(RatFunc::v_pow(1)),
            QSpec::Rational(v) => Scalar::Q(v.clone()),
            QSpec::Root { pp, p } => Scalar::C(Cyc::zeta_pow(4 * p, *pp, *pp)).norm(),
            QSpec::Float(q) => Scalar::F(q.sqrt()),
        }
    }

    pub fn i(&self) -> Scalar {
        match self {
            QSpec::Root { pp, p } => Scalar::C(Cyc::zeta_pow(4 * p, *pp, *p as i64)),
            QSpec::Float(_) => Scalar::F(Complex64::new(0.0, 1.0)),
            _ => Scalar::i(),
        }
    }

    /// `v^k`.
    pub fn v_pow(&self, k: i64) -> Scalar {
        match self {
            QSpec::Generic => Scalar::R(RatFunc::v_pow(k)).norm(),
            QSpec::Root { pp, p } => Scalar::C(Cyc::zeta_pow(4 * p, *pp, pp * k)).norm(),
            _ => self.v().pow(k).expect("v is invertible"),
        }
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.v_pow(2 * k)
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    /// Lifts a Gaussian rational into this mode.
    pub fn lift(&self, g: &Gq) -> Scalar {
        match self {
            QSpec::Float(_) => Scalar::F(g.to_c64()),
            _ => Scalar::Q(g.clone()),
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.lift(&Gq::int(n))
    }

    /// Loop fugacity `-q - q^-1`.
    pub fn nu(&self) -> Scalar {
        -q_int(2, self)
    }

    pub fn order(&self) -> QOrder {
        order_pq(self)
    }

    /// Largest admissible Jones-Wenzl size is `limit - 1`; the classical point has none.
    pub fn jw_ok(&self, s: u32) -> bool {
        if self.is_classical() {
            return true;
        }
        self.order().exceeds(s)
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// `[k] = q^(k-1) + q^(k-3) + ... + q^(1-k)`.
pub fn q_int(k: i64, q: &QSpec) -> Scalar {
    if k < 0 {
        return -q_int(-k, q);
    }
    match q {
        QSpec::Generic => {
            if k == 0 {
                return Scalar::zero();
            }
            // v-exponents 2(k-1), 2(k-3), ..., 2(1-k)
            let lo = 2 * (1 - k);
            let mut coeffs = vec![Gq::zero(); (4 * (k - 1) + 1) as usize];
            for j in 0..k {
                coeffs[(4 * j) as usize] = Gq::one();
            }
            Scalar::R(RatFunc { num: Poly(coeffs), den: Poly::constant(Gq::one()), shift: lo }).norm()
        }
        _ => {
            let mut acc = Scalar::zero();
            for j in 0..k {
                acc = &acc + &q.q_pow(k - 1 - 2 * j);
            }
            acc
        }
    }
}

/// `[m]!`.
pub fn q_factorial(m: u32, q: &QSpec) -> Scalar {
    let mut acc = Scalar::one();
    for k in 2..=m as i64 {
        acc = &acc * &q_int(k, q);
    }
    acc
}

/// Quantum binomial; zero outside `0 <= l <= m`.
pub fn q_binomial(m: i64, l: i64, q: &QSpec) -> Scalar {
    if l < 0 || l > m || m < 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::one();
    for i in 1..=l {
        acc = &acc * &q_int(m - l + i, q);
        acc = &acc / &q_int(i, q);
    }
    acc
}

pub fn order_pq(q: &QSpec) -> QOrder {
    match q {
        QSpec::Generic => QOrder::Infinite,
        QSpec::Rational(v) if v.is_one() => QOrder::Finite(1),
        QSpec::Rational(_) => QOrder::Infinite,
        QSpec::Root { p, .. } => QOrder::Finite(*p),
        QSpec::Float(z) => {
            if (z.norm() - 1.0).abs() > FLOAT_REL_TOL {
                return QOrder::Infinite;
            }
            let mut w = *z;
            for p in 1..=10_000u32 {
                if w.im.abs() <= FLOAT_REL_TOL * 10.0 {
                    return QOrder::Finite(p);
                }
                w *= z;
            }
            QOrder::Infinite
        }
    }
}

/// `E_{r,t}` admissibility: `|r-t| <= s <= r+t` with `r+s+t` even.
pub fn admissible(r: u32, s: u32, t: u32) -> bool {
    (r + s + t) % 2 == 0 && s <= r + t && r <= s + t && t <= r + s
}

/// Closed form of the Theta network.
pub fn theta(r: u32, s: u32, t: u32, q: &QSpec) -> Result<Scalar> {
    if !admissible(r, s, t) {
        return Err(Error::Inadmissible(r, s, t));
    }
    let a = (r + s + t) / 2;
    let sign = if a % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    let num = sign
        * q_factorial(a + 1, q)
        * q_factorial(a - r, q)
        * q_factorial(a - s, q)
        * q_factorial(a - t, q);
    let den = q_factorial(r, q) * q_factorial(s, q) * q_factorial(t, q);
    den.inv().map(|d| num * d).ok_or(Error::Vanishing("theta denominator".into()))
}

/// Ring homomorphism `v -> q.v()` applied to a generic scalar.
pub fn specialize(s: &Scalar, q: &QSpec) -> Result<Scalar> {
    match (s, q) {
        (_, QSpec::Generic) => Ok(s.clone()),
        (Scalar::Q(g), _) => Ok(q.lift(g)),
        (Scalar::R(r), _) => {
            let v = q.v();
            let lift = |g: &Gq| q.lift(g);
            let num = r.num.eval(&v, lift, Scalar::zero());
            let den = r.den.eval(&v, |g: &Gq| q.lift(g), Scalar::zero());
            let inv = den
                .inv()
                .ok_or_else(|| Error::Vanishing(format!("denominator of {s} at {q}")))?;
            Ok(num * inv * q.v_pow(r.shift))
        }
        (other, _) => Ok(other.clone()),
    }
}


#[cfg(test)]
mod tests;
