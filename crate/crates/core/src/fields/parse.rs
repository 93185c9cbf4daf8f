//! Reading field elements such as `s^2*t + t^3` or `(u+1)/u`.

use super::{FResult, Field, FieldError};

pub fn parse_elem<F: Field>(f: &F, src: &str) -> FResult<F::Elem> {
    let toks = tokenize(src)?;
    let mut p = Parser { f, toks, pos: 0, names: f.gen_names(), gens: f.gens() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FieldError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// `s->t,t->s^2` style generator images.
pub fn parse_images<D: Field, C: Field>(dom: &D, cod: &C, src: &str) -> FResult<Vec<C::Elem>> {
    let names = dom.gen_names();
    let mut out: Vec<Option<C::Elem>> = vec![None; names.len()];
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (g, e) = part.split_once("->").ok_or_else(|| FieldError::Parse(format!("expected gen->expr in {part:?}")))?;
        let i = names
            .iter()
            .position(|n| n == g.trim())
            .ok_or_else(|| FieldError::Parse(format!("unknown generator {g:?}")))?;
        out[i] = Some(parse_elem(cod, e)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| FieldError::Parse(format!("no image for {}", names[i]))))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Op(char),
}

fn tokenize(s: &str) -> FResult<Vec<Tok>> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[start..i].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|_| FieldError::Parse(format!("bad number {n}")))?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    f: &'a F,
    toks: Vec<Tok>,
    pos: usize,
    names: Vec<String>,
    gens: Vec<F::Elem>,
}

impl<F: Field> Parser<'_, F> {
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

    fn expr(&mut self) -> FResult<F::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.f.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.f.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> FResult<F::Elem> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let t = self.power()?;
                acc = self.f.mul(&acc, &t);
            } else if self.eat('/') {
                let t = self.power()?;
                acc = self.f.div(&acc, &t).ok_or_else(|| FieldError::Parse("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> FResult<F::Elem> {
        let base = self.unary()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    return Ok(self.f.pow(&base, e as u64));
                }
                _ => return Err(FieldError::Parse("exponent must be a number".into())),
            }
        }
        Ok(base)
    }

    fn unary(&mut self) -> FResult<F::Elem> {
        if self.eat('-') {
            let x = self.unary()?;
            return Ok(self.f.neg(&x));
        }
        self.atom()
    }

    fn atom(&mut self) -> FResult<F::Elem> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.f.from_i64(n))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                let i = self
                    .names
                    .iter()
                    .position(|x| *x == n)
                    .ok_or_else(|| FieldError::Parse(format!("unknown generator {n:?}")))?;
                Ok(self.gens[i].clone())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(FieldError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(FieldError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};

    #[test]
    fn parses_function_field_elements() {
        let f = FunctionField::new(2, &["s", "t"]).unwrap();
        let x = parse_elem(&f, "s^2*t + t^3").unwrap();
        assert_eq!(f.render(&x), "s^2*t+t^3");
        let y = parse_elem(&f, "(s+t)/(s*t)").unwrap();
        assert_eq!(f.render(&y), "(s+t)/(s*t)");
        assert!(parse_elem(&f, "s+").is_err());
        assert!(parse_elem(&f, "x").is_err());
    }

    #[test]
    fn parses_images() {
        let f = FiniteField::new(2, 3).unwrap();
        let imgs = parse_images(&f, &f, "u->u^4").unwrap();
        assert_eq!(imgs, vec![f.pow(&f.u(), 4)]);
    }
}
