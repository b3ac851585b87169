//! A small reader for ASCII formulas like `(x1+x2)(y1+y2)-2` or
//! `1+l1l2z1z2-(l1z1+l2z2)`, evaluated in any [`Ring`].
//!
//! Juxtaposition multiplies, left to right. An identifier is a run of
//! letters followed by a run of digits, so `l1l2` reads as `l1 l2`.

use crate::error::{Error, Result};
use crate::rational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            d if d.is_ascii_digit() => {
                let st = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[st..=i].iter().collect();
                out.push(Tok::Num(t.parse().map_err(|_| Error::Invalid(format!("number {t}")))?));
            }
            a if a.is_ascii_alphabetic() => {
                let st = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_alphabetic() {
                    i += 1;
                }
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..=i].iter().collect()));
            }
            _ => return Err(Error::Invalid(format!("unexpected character {c:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, R: Ring, F: Fn(&str) -> Option<R>> {
    toks: Vec<Tok>,
    pos: usize,
    one: &'a R,
    lookup: F,
}

impl<R: Ring, F: Fn(&str) -> Option<R>> Parser<'_, R, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<R> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<R> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open) => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<R> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(k)) if *k >= 0 => {
                    self.pos += 1;
                    let mut r = self.one.clone();
                    for _ in 0..*k {
                        r = r.mul(&base);
                    }
                    return Ok(r);
                }
                _ => return Err(Error::Invalid("exponent must be a non-negative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<R> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| Error::Invalid("unexpected end of formula".into()))?;
        self.pos += 1;
        match t {
            Tok::Num(k) => Ok(self.one.scale(&rational::q(k))),
            Tok::Ident(name) => (self.lookup)(&name).ok_or_else(|| Error::Invalid(format!("unknown symbol {name}"))),
            Tok::Open => {
                let r = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Invalid("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            t => Err(Error::Invalid(format!("unexpected token {t:?}"))),
        }
    }
}

/// Evaluates `s` in the ring of `one`, resolving identifiers through
/// `lookup`.
pub fn eval<R: Ring>(s: &str, one: &R, lookup: impl Fn(&str) -> Option<R>) -> Result<R> {
    let mut p = Parser { toks: lex(s)?, pos: 0, one, lookup };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Invalid(format!("trailing input in {s:?}")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarSet};
    use crate::rational::q;
    use crate::Q;

    #[test]
    fn arithmetic() {
        let v = |_: &str| None::<Q>;
        assert_eq!(eval("2-(3-4)*5^2", &q(1), v).unwrap(), q(27));
        assert_eq!(eval("-(-1)", &q(1), v).unwrap(), q(1));
        assert!(eval("(1+2", &q(1), v).is_err());
        assert!(eval("1+)", &q(1), v).is_err());
    }

    #[test]
    fn juxtaposition() {
        let vars = VarSet::new(["l1", "l2", "z1"]);
        let look = |s: &str| vars.index(s).map(|i| Poly::var(&vars, i));
        let a = eval("l1l2z1-2l1(l2+1)", &Poly::one(&vars), look).unwrap();
        let (l1, l2, z1) = (Poly::var(&vars, 0), Poly::var(&vars, 1), Poly::var(&vars, 2));
        let b = l1.mul(&l2).mul(&z1).sub(&l1.mul(&l2.add(&Poly::one(&vars))).scale(&q(2)));
        assert_eq!(a, b);
    }
}
