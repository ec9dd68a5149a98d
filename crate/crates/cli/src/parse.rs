//! Input grammar: exact expressions over one quadratic field, e.g.
//! `(3+sqrt5)/2`, `-1/2*sqrt3`, `2 sqrt7`, and point lists `0,0 1,0 0,sqrt3`.

use ratdist::arith::{QuadExt, Rational};
use ratdist::geometry::PlanePoint;
use ratdist::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Sqrt(u64),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let bad = |msg: String| Error::Parse(format!("{msg} in {s:?}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let d = digits(&mut i);
            out.push(Tok::Num(d.parse().map_err(|_| bad(format!("number {d} too large")))?));
        } else if chars[i..].starts_with(&['s', 'q', 'r', 't']) {
            i += 4;
            let paren = i < chars.len() && chars[i] == '(';
            if paren {
                i += 1;
            }
            let d = digits(&mut i);
            if d.is_empty() {
                return Err(bad("sqrt needs an integer radicand".into()));
            }
            if paren {
                if i >= chars.len() || chars[i] != ')' {
                    return Err(bad("unclosed sqrt(".into()));
                }
                i += 1;
            }
            out.push(Tok::Sqrt(d.parse().map_err(|_| bad(format!("radicand {d} too large")))?));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad(format!("unexpected {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QuadExt> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = v.try_add(&self.term()?)?;
            } else if self.eat('-') {
                v = v.try_sub(&self.term()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<QuadExt> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v = v.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                v = v.try_div(&self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::Sqrt(_)) | Some(Tok::Op('('))) {
                // juxtaposition: `2sqrt3`, `3(1+sqrt2)`
                v = v.try_mul(&self.unary()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadExt> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<QuadExt> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(QuadExt::rational(Rational::from_integer(n.into())))
            }
            Some(Tok::Sqrt(d)) => {
                self.pos += 1;
                QuadExt::sqrt_of(&Rational::from_integer(d.into()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<QuadExt> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    parse_expr(s)?
        .to_rational()
        .ok_or_else(|| Error::Parse(format!("{s:?} is not rational")))
}

pub fn parse_point(s: &str) -> Result<PlanePoint> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("point {s:?} needs the form x,y")))?;
    Ok(PlanePoint::new(parse_expr(x)?, parse_expr(y)?))
}

/// Points separated by whitespace or `;`.
pub fn parse_points(s: &str) -> Result<Vec<PlanePoint>> {
    s.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .map(parse_point)
        .collect()
}

/// Pairs `k,k'` separated by whitespace or `;`.
pub fn parse_pairs(s: &str) -> Result<Vec<(Rational, Rational)>> {
    s.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("pair {t:?} needs the form k,k'")))?;
            Ok((parse_rational(a)?, parse_rational(b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratdist::arith::{int, rat};

    #[test]
    fn expressions() {
        assert_eq!(parse_expr("(3+sqrt5)/2").unwrap(), QuadExt::new(rat(3, 2), rat(1, 2), 5).unwrap());
        assert_eq!(parse_expr("-1/2*sqrt3").unwrap(), QuadExt::new(int(0), rat(-1, 2), 3).unwrap());
        assert_eq!(parse_expr("2sqrt(7)").unwrap(), QuadExt::new(int(0), int(2), 7).unwrap());
        assert_eq!(parse_expr("sqrt12").unwrap(), QuadExt::new(int(0), int(2), 3).unwrap());
        assert_eq!(parse_expr("3 - 4/6").unwrap(), QuadExt::rational(rat(7, 3)));
        assert!(parse_expr("sqrt2+sqrt3").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("2x").is_err());
    }

    #[test]
    fn displayed_values_parse_back() {
        for v in ["1/2+3*sqrt5", "1/2-3/2*sqrt5", "-sqrt2", "sqrt3", "-7/9"] {
            assert_eq!(parse_expr(v).unwrap().to_string(), v);
        }
    }

    #[test]
    fn points_and_pairs() {
        let pts = parse_points("0,0 1,0;0,sqrt3").unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[2].y, QuadExt::sqrt_of(&int(3)).unwrap());
        assert_eq!(parse_pairs("3,1 1,-1/2").unwrap()[1], (int(1), rat(-1, 2)));
        assert!(parse_point("1").is_err());
    }
}
