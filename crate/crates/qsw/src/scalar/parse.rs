use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{specialize, Gq, QSpec, RatFunc, Scalar};
use crate::error::{Error, Result};

/// Parses the scalar grammar (`(1/2)*v^-3 + i*v`, also `q` for `v^2` and
/// decimal literals) and specializes the value to `q`.
pub fn parse_scalar(text: &str, q: &QSpec) -> Result<Scalar> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    specialize(&v, q)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d.inv().ok_or(Error::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = acc * inv;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e).ok_or_else(|| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.exponent()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(Scalar::R(RatFunc::v_pow(1)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::R(RatFunc::v_pow(2)))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let mut int = BigInt::zero();
        let mut den = BigInt::one();
        let mut seen_dot = false;
        let mut digits = 0;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_digit() {
                int = int * 10 + (c - b'0') as u32;
                if seen_dot {
                    den *= 10;
                }
                digits += 1;
            } else if c == b'.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if digits == 0 {
            return Err(Error::Parse { pos: start, msg: "malformed number".into() });
        }
        Ok(Scalar::Q(Gq::real(BigRational::new(int, den))))
    }
}

/// Parses `generic`, `classical`, `rational:<num>/<den>`, `root:<p'>:<p>`, `float:<re>,<im>`.
pub fn parse_qspec(text: &str) -> Result<QSpec> {
    let t = text.trim();
    let bad = |m: &str| Error::Spec(format!("{m} in q-spec '{t}'"));
    if t == "generic" {
        return Ok(QSpec::Generic);
    }
    if t == "classical" {
        return Ok(QSpec::classical());
    }
    if let Some(rest) = t.strip_prefix("rational:") {
        let v = parse_scalar(rest, &QSpec::Generic)?;
        let Scalar::Q(g) = v else {
            return Err(bad("rational point must be a Gaussian rational"));
        };
        return QSpec::rational(g);
    }
    if let Some(rest) = t.strip_prefix("root:") {
        let mut it = rest.split(':');
        let pp: i64 = it.next().and_then(|x| x.trim().parse().ok()).ok_or_else(|| bad("bad p'"))?;
        let p: u32 = it.next().and_then(|x| x.trim().parse().ok()).ok_or_else(|| bad("bad p"))?;
        if it.next().is_some() {
            return Err(bad("too many fields"));
        }
        return QSpec::root(pp, p);
    }
    if let Some(rest) = t.strip_prefix("float:") {
        let mut it = rest.split(',');
        let re: f64 = it.next().and_then(|x| x.trim().parse().ok()).ok_or_else(|| bad("bad real part"))?;
        let im: f64 = it.next().and_then(|x| x.trim().parse().ok()).unwrap_or(0.0);
        return QSpec::float(Complex64::new(re, im));
    }
    Err(bad("unknown mode"))
}
