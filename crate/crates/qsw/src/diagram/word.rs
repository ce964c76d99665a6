use super::{jones_wenzl, Tangle};
use crate::combin::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, QSpec, Scalar};

/// Parses a tangle word such as `U1*U2 - (1/q)*P3` acting on `n` points.
///
/// Generators are `U<i>`, `L<i>`, `R<i>`, `P<s>` (projector on the first `s`
/// points) and `V(r,s,t)` (embedded three-vertex on the first `s` points);
/// each is sized by the points left open by the factors before it.
pub fn parse_tangle(text: &str, n: usize, q: &QSpec) -> Result<Tangle> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, q };
    let v = p.expr(n)?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(match v {
        Val::S(c) => Tangle::identity(&MultiIndex::flat(n), q).scale(&c),
        Val::T(t) => t,
    })
}

enum Val {
    S(Scalar),
    T(Tangle),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    q: &'a QSpec,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() != Some(c) {
            return Err(self.err(&format!("expected '{}'", c as char)));
        }
        self.pos += 1;
        Ok(())
    }

    fn int(&mut self) -> Result<usize> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn expr(&mut self, n: usize) -> Result<Val> {
        let mut acc = self.term(n)?;
        loop {
            let neg = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let at = self.pos;
            let mut rhs = self.term(n)?;
            if neg {
                rhs = scale(rhs, &Scalar::int(-1));
            }
            acc = self.sum(acc, rhs).map_err(|e| match e {
                Error::Shape(m) => Error::Parse { pos: at, msg: m },
                e => e,
            })?;
        }
    }

    fn sum(&self, a: Val, b: Val) -> Result<Val> {
        Ok(match (a, b) {
            (Val::S(x), Val::S(y)) => Val::S(x + y),
            (Val::T(t), Val::S(c)) | (Val::S(c), Val::T(t)) => {
                if t.left != t.right {
                    return Err(Error::Shape("scalar added to a non-square tangle".into()));
                }
                Val::T(t.add(&Tangle::identity(&t.left, self.q).scale(&c))?)
            }
            (Val::T(a), Val::T(b)) => Val::T(a.add(&b)?),
        })
    }

    fn term(&mut self, n: usize) -> Result<Val> {
        let mut acc = self.unary(n)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let cur = width(&acc, n);
                    let at = self.pos;
                    let rhs = self.unary(cur)?;
                    acc = match (acc, rhs) {
                        (Val::S(x), Val::S(y)) => Val::S(x * y),
                        (Val::S(c), Val::T(t)) | (Val::T(t), Val::S(c)) => Val::T(t.scale(&c)),
                        (Val::T(a), Val::T(b)) => Val::T(a.compose(&b).map_err(|e| match e {
                            Error::Shape(m) => Error::Parse { pos: at, msg: m },
                            e => e,
                        })?),
                    };
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let Val::S(d) = self.unary(n)? else {
                        return Err(Error::Parse { pos: at, msg: "can only divide by a scalar".into() });
                    };
                    let inv = d.inv().ok_or(Error::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = scale(acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self, n: usize) -> Result<Val> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(scale(self.unary(n)?, &Scalar::int(-1)));
        }
        let base = self.atom(n)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let e = self.int()? as i64;
            let Val::S(x) = base else {
                return Err(self.err("only scalars can be raised to a power"));
            };
            let e = if neg { -e } else { e };
            return x.pow(e).map(Val::S).ok_or_else(|| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn atom(&mut self, n: usize) -> Result<Val> {
        let q = self.q;
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        match c {
            b'(' => {
                self.pos += 1;
                let v = self.expr(n)?;
                self.eat(b')')?;
                Ok(v)
            }
            b'q' => {
                self.pos += 1;
                Ok(Val::S(q.q()))
            }
            b'v' => {
                self.pos += 1;
                Ok(Val::S(q.v()))
            }
            b'i' => {
                self.pos += 1;
                Ok(Val::S(q.i()))
            }
            c if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                parse_scalar(lit, q)
                    .map(Val::S)
                    .map_err(|_| Error::Parse { pos: start, msg: "malformed number".into() })
            }
            b'U' | b'L' | b'R' | b'P' => {
                let at = self.pos;
                self.pos += 1;
                let i = self.int()?;
                let t = match c {
                    b'U' => Tangle::u(n, i, q),
                    b'L' => Tangle::l(n, i, q),
                    b'R' => Tangle::r(n + 2, i, q),
                    _ => {
                        if i > n {
                            return Err(Error::Parse { pos: at, msg: format!("P{i} on {n} points") });
                        }
                        Ok(jones_wenzl(i as u32, q)?.tensor(&Tangle::identity(&MultiIndex::flat(n - i), q)))
                    }
                };
                t.map(Val::T).map_err(|e| match e {
                    Error::Range(m) => Error::Parse { pos: at, msg: m },
                    e => e,
                })
            }
            b'V' => {
                let at = self.pos;
                self.pos += 1;
                self.eat(b'(')?;
                let r = self.int()?;
                self.eat(b',')?;
                let s = self.int()?;
                self.eat(b',')?;
                let t = self.int()?;
                self.eat(b')')?;
                if s > n {
                    return Err(Error::Parse { pos: at, msg: format!("V({r},{s},{t}) on {n} points") });
                }
                let v = Tangle::three_vertex(r as u32, s as u32, t as u32, q)?.embed()?;
                Ok(Val::T(v.tensor(&Tangle::identity(&MultiIndex::flat(n - s), q))))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

fn width(v: &Val, n: usize) -> usize {
    match v {
        Val::S(_) => n,
        Val::T(t) => t.right.n(),
    }
}

fn scale(v: Val, c: &Scalar) -> Val {
    match v {
        Val::S(x) => Val::S(x * c),
        Val::T(t) => Val::T(t.scale(c)),
    }
}
