//! Text formats: field specs (`Q`, `Q(sqrt 5)`), element expressions
//! (`1+w`, `1/sqrt(5)`, `3/2*w`), and ideals given by generators (`(2, 1+w)`).

use super::field::{rat, FieldElement, QuadField, Rational};
use crate::error::{Error, Result};

/// Parse `Q`, `Q(sqrt 5)`, `Q(sqrt(5))`, `Q(√5)`.
pub fn parse_field(spec: &str) -> Result<QuadField> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "Q" {
        return Ok(QuadField::rationals());
    }
    let inner = s
        .strip_prefix("Q(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::invalid(format!("unrecognized field spec `{spec}`")))?;
    let num = inner
        .strip_prefix("sqrt")
        .or_else(|| inner.strip_prefix('√'))
        .ok_or_else(|| Error::invalid(format!("unrecognized field spec `{spec}`")))?;
    let num = num.trim_start_matches('(').trim_end_matches(')');
    let m: i64 = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad radicand in field spec `{spec}`")))?;
    QuadField::new(m)
}

/// Parse a rational `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(rat(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    W,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let n: String = cs[st..i].iter().collect();
                out.push(Tok::Num(n.parse().map_err(|_| Error::invalid(format!("number too large in `{s}`")))?));
            }
            'w' | 'ω' => {
                out.push(Tok::W);
                i += 1;
            }
            '√' => {
                out.push(Tok::Sqrt);
                i += 1;
            }
            's' if cs[i..].iter().take(4).collect::<String>() == "sqrt" => {
                out.push(Tok::Sqrt);
                i += 4;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::invalid(format!("unexpected character `{c}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a QuadField,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::invalid(format!("cannot parse field element `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let r = self.unary()?;
                    acc = self.field.mul(&acc, &r);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let r = self.unary()?;
                    acc = self.field.div(&acc, &r)?;
                }
                // Implicit multiplication: `2w`, `3sqrt(5)`.
                Some(Tok::Num(_)) | Some(Tok::W) | Some(Tok::Sqrt) | Some(Tok::LParen) => {
                    let r = self.unary()?;
                    acc = self.field.mul(&acc, &r);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let t = self.peek().cloned().ok_or_else(|| self.err())?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(FieldElement::from_int(n)),
            Tok::W => Ok(self.field.omega()),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Sqrt => {
                let paren = self.peek() == Some(&Tok::LParen);
                if paren {
                    self.pos += 1;
                }
                let n = match self.peek() {
                    Some(Tok::Num(n)) => *n,
                    _ => return Err(self.err()),
                };
                self.pos += 1;
                if paren {
                    if self.peek() != Some(&Tok::RParen) {
                        return Err(self.err());
                    }
                    self.pos += 1;
                }
                self.sqrt(n)
            }
            _ => Err(self.err()),
        }
    }

    /// `√n` must lie in the field: `n = k²` or `n = k²·m`.
    fn sqrt(&self, n: i128) -> Result<FieldElement> {
        let m = self.field.m() as i128;
        let isqrt = |v: i128| -> Option<i128> {
            if v < 0 {
                return None;
            }
            let r = (v as f64).sqrt().round() as i128;
            (r - 1..=r + 1).find(|k| *k >= 0 && k * k == v)
        };
        if let Some(k) = isqrt(n) {
            return Ok(FieldElement::from_int(k));
        }
        if m > 1 && n % m == 0 {
            if let Some(k) = isqrt(n / m) {
                return Ok(self.field.sqrt_m().scale(&rat(k)));
            }
        }
        Err(Error::invalid(format!("sqrt({n}) is not an element of {}", self.field.spec())))
    }
}

/// Parse an element expression over `field`.
pub fn parse_element(field: &QuadField, s: &str) -> Result<FieldElement> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::invalid("empty field element"));
    }
    let mut p = Parser { field, toks, pos: 0, src: s };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err());
    }
    Ok(field.elem(e.x, e.y))
}

/// Parse an ideal given by generators: `(2)`, `(2, 1+w)`, or a bare element.
pub fn parse_ideal(field: &QuadField, s: &str) -> Result<Vec<FieldElement>> {
    let t = s.trim();
    let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if t.contains(',') || !inner.contains(['(', ')']) => inner,
        _ => t,
    };
    let gens = inner
        .split(',')
        .map(|g| parse_element(field, g))
        .collect::<Result<Vec<_>>>()?;
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::invalid("the zero ideal is not allowed"));
    }
    Ok(gens)
}
