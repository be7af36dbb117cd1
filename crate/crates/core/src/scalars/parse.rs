//! Text grammars for points and scalars.
//!
//! Point:  `RATIONAL ("*" GEN "^" INT)*`, e.g. `1 * a^1 * q^-2`.
//! Scalar: any rational expression in the generators, e.g. `(q^2 - 1) / (q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::point::Point;
use super::scalar::Scalar;
use super::ParseError;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str, offset: usize) -> Self {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos + self.offset,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse::<BigInt>().expect("digits parse"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let v = self.uint()?;
        let v: i64 = v.try_into().map_err(|_| ParseError {
            pos: start + self.offset,
            msg: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    /// Generator name: q, a, a1, a2, ...; returns its index.
    fn gen(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(b'q') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'a') => {
                self.pos += 1;
                let ds = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if ds == self.pos {
                    return Ok(1);
                }
                let k: usize = std::str::from_utf8(&self.s[ds..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| ParseError {
                        pos: ds + self.offset,
                        msg: "bad generator index".into(),
                    })?;
                if k == 0 {
                    return Err(ParseError {
                        pos: ds + self.offset,
                        msg: "generator index starts at 1".into(),
                    });
                }
                Ok(k)
            }
            _ => {
                self.pos = start;
                Err(self.err("expected generator q, a or a<k>"))
            }
        }
    }

    fn is_gen_start(&mut self) -> bool {
        matches!(self.peek(), Some(b'q') | Some(b'a'))
    }
}

/// Parse a point such as `1 * a^1 * q^-2` (a bare `a*q^2` is also accepted).
pub fn parse_point(s: &str) -> Result<Point, ParseError> {
    parse_point_at(s, 0)
}

/// As [`parse_point`], reporting error positions relative to `offset`.
pub fn parse_point_at(s: &str, offset: usize) -> Result<Point, ParseError> {
    let mut lx = Lexer::new(s, offset);
    let mut coeff = BigRational::one();
    let mut exps: Vec<i64> = Vec::new();
    if lx.at_end() {
        return Err(lx.err("empty point"));
    }
    let mut need_factor = true;
    if !lx.is_gen_start() {
        let neg = lx.eat(b'-');
        let n = lx.uint()?;
        let d = if lx.eat(b'/') {
            lx.uint()?
        } else {
            BigInt::one()
        };
        if d.is_zero() {
            return Err(lx.err("zero denominator"));
        }
        coeff = BigRational::new(if neg { -n } else { n }, d);
        if coeff.is_zero() {
            return Err(lx.err("point coefficient must be nonzero"));
        }
        need_factor = false;
    }
    loop {
        if !need_factor {
            if lx.at_end() {
                break;
            }
            lx.expect(b'*')?;
        }
        need_factor = false;
        let g = lx.gen()?;
        let e = if lx.eat(b'^') { lx.int()? } else { 1 };
        if exps.len() <= g {
            exps.resize(g + 1, 0);
        }
        exps[g] += e;
    }
    Ok(Point::new(coeff, exps))
}

/// Parse a comma-separated list of points.
pub fn parse_point_list(s: &str) -> Result<Vec<Point>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        if !part.trim().is_empty() {
            out.push(parse_point_at(part, offset)?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parse a rational expression in the generators into a canonical Scalar.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let mut lx = Lexer::new(s, 0);
    let v = expr(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(v)
}

fn expr(lx: &mut Lexer) -> Result<Scalar, ParseError> {
    let mut acc = if lx.eat(b'-') {
        term(lx)?.neg()
    } else {
        term(lx)?
    };
    loop {
        if lx.eat(b'+') {
            acc = acc.add(&term(lx)?);
        } else if lx.eat(b'-') {
            acc = acc.sub(&term(lx)?);
        } else {
            return Ok(acc);
        }
    }
}

fn term(lx: &mut Lexer) -> Result<Scalar, ParseError> {
    let mut acc = factor(lx)?;
    loop {
        if lx.eat(b'*') {
            acc = acc.mul(&factor(lx)?);
        } else if lx.peek() == Some(b'/') {
            lx.pos += 1;
            let at = lx.pos;
            let d = factor(lx)?;
            acc = acc.div(&d).map_err(|_| ParseError {
                pos: at + lx.offset,
                msg: "division by zero".into(),
            })?;
        } else {
            return Ok(acc);
        }
    }
}

fn factor(lx: &mut Lexer) -> Result<Scalar, ParseError> {
    let base = match lx.peek() {
        Some(b'(') => {
            lx.pos += 1;
            let v = expr(lx)?;
            lx.expect(b')')?;
            v
        }
        Some(c) if c.is_ascii_digit() => Scalar::from_rat(BigRational::from_integer(lx.uint()?)),
        Some(b'-') => {
            lx.pos += 1;
            factor(lx)?.neg()
        }
        Some(b'q') | Some(b'a') => {
            let g = lx.gen()?;
            Scalar::gen_pow(g, 1)
        }
        _ => return Err(lx.err("expected number, generator or '('")),
    };
    if lx.eat(b'^') {
        let at = lx.pos;
        let e = lx.int()?;
        return base.pow(e).map_err(|_| ParseError {
            pos: at + lx.offset,
            msg: "zero to a negative power".into(),
        });
    }
    Ok(base)
}
