use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn int(n: i64) -> Self {
        Gq::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(a: i64, b: i64) -> Self {
        Gq::real(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn real(re: BigRational) -> Self {
        Gq { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Gq::int(0)
    }

    pub fn one() -> Self {
        Gq::int(1)
    }

    pub fn i() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Gq {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Gq> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Gq::real(self.re.recip()));
        }
        let n = self.norm2();
        Some(Gq { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, e: i64) -> Option<Gq> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Gq::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(acc)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() {
            if o.im.is_zero() {
                return Gq::real(&self.re * &o.re);
            }
            return Gq { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        if o.im.is_zero() {
            return Gq { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gq {
    /// Prints in the scalar grammar, e.g. `3/2`, `(1/2)*i`, `(2+(-1/3)*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => {
                let s = fmt_rat(&self.re);
                if self.re.is_integer() && !self.re.is_negative() {
                    write!(f, "{s}")
                } else {
                    write!(f, "({s})")
                }
            }
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else {
                    write!(f, "({})*i", fmt_rat(&self.im))
                }
            }
            (false, false) => write!(f, "({}+({})*i)", fmt_rat(&self.re), fmt_rat(&self.im)),
        }
    }
}
