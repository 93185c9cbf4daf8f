//! Reading algebra presentations such as
//! `alg base=F4 gens=x,y rels=x^2+y,y^3-u*x`.

use super::mpoly::{MPoly, PolyRing, TermOrder};
use super::pres::PresAlgebra;
use super::{AResult, AlgError};
use crate::fields::parse::parse_elem;
use crate::fields::{Field, FiniteField, FunctionField};

/// A field named on the command line: `F<q>` or `F<p>(s,t)`.
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Finite(FiniteField),
    Function(FunctionField),
}

pub fn parse_field(src: &str) -> AResult<FieldSpec> {
    let bad = || AlgError::Parse(format!("unknown field {src:?}"));
    let s = src.trim();
    let rest = s.strip_prefix('F').ok_or_else(bad)?;
    if let Some((q, vars)) = rest.split_once('(') {
        let p: u64 = q.parse().map_err(|_| bad())?;
        let vars = vars.strip_suffix(')').ok_or_else(bad)?;
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        return Ok(FieldSpec::Function(FunctionField::new(p, &names)?));
    }
    let q: u64 = rest.parse().map_err(|_| bad())?;
    let (p, n) = prime_power(q).ok_or_else(bad)?;
    Ok(FieldSpec::Finite(FiniteField::new(p, n)?))
}

/// (p, n) with q = p^n.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// A polynomial in the ring's variables with coefficients in its field.
/// Field generators may appear wherever a coefficient may.
pub fn parse_poly<F: Field>(r: &PolyRing<F>, src: &str) -> AResult<MPoly<F::Elem>> {
    let mut p = Parser { r, s: src.as_bytes(), pos: 0 };
    let out = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(AlgError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    r: &'a PolyRing<F>,
    s: &'a [u8],
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> AlgError {
        AlgError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn sum(&mut self) -> AResult<MPoly<F::Elem>> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            let t = self.product()?;
            self.r.neg(&t)
        } else {
            self.product()?
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.product()?;
            acc = if c == b'+' { self.r.add(&acc, &t) } else { self.r.sub(&acc, &t) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> AResult<MPoly<F::Elem>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let t = self.power()?;
            acc = self.r.mul(&acc, &t);
        }
        Ok(acc)
    }

    fn power(&mut self) -> AResult<MPoly<F::Elem>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let e = self.number()?;
            return Ok(self.r.pow(&base, e));
        }
        Ok(base)
    }

    fn number(&mut self) -> AResult<u64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected a number"))
    }

    fn atom(&mut self) -> AResult<MPoly<F::Elem>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(self.r.constant(self.r.field.from_i64(n as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if let Some(i) = self.r.names.iter().position(|n| n == name) {
                    return Ok(self.r.var(i));
                }
                let c = parse_elem(&self.r.field, name)?;
                Ok(self.r.constant(c))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// `alg base=<field> gens=x,y rels=r1,r2`, over a field already chosen.
pub fn parse_algebra_over<F: Field>(field: F, src: &str) -> AResult<PresAlgebra<F>> {
    parse_algebra_with_cap(field, src, super::DEFAULT_DEGREE_CAP)
}

/// As `parse_algebra_over`, with an explicit Gröbner degree cap.
pub fn parse_algebra_with_cap<F: Field>(field: F, src: &str, cap: u32) -> AResult<PresAlgebra<F>> {
    let (gens, rels) = parse_words(src)?;
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let ring = PolyRing::new(field, &refs, TermOrder::default());
    let rels = rels.iter().map(|r| parse_poly(&ring, r)).collect::<AResult<Vec<_>>>()?;
    PresAlgebra::from_ring(ring, rels, cap)
}

/// The base field named in a presentation.
pub fn presentation_base(src: &str) -> AResult<FieldSpec> {
    let base = words(src)?.into_iter().find_map(|(k, v)| (k == "base").then_some(v)).ok_or_else(|| AlgError::Parse("missing base=".into()))?;
    parse_field(&base)
}

fn words(src: &str) -> AResult<Vec<(String, String)>> {
    let mut it = src.split_whitespace();
    if it.next() != Some("alg") {
        return Err(AlgError::Parse("presentation must start with `alg`".into()));
    }
    it.map(|w| w.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())).ok_or_else(|| AlgError::Parse(format!("expected key=value, got {w:?}"))))
        .collect()
}

fn parse_words(src: &str) -> AResult<(Vec<String>, Vec<String>)> {
    let mut gens = None;
    let mut rels = vec![];
    for (k, v) in words(src)? {
        match k.as_str() {
            "base" => {}
            "gens" => gens = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
            "rels" => rels = split_top(&v),
            _ => return Err(AlgError::Parse(format!("unknown key {k:?}"))),
        }
    }
    Ok((gens.ok_or_else(|| AlgError::Parse("missing gens=".into()))?, rels))
}

/// Splits on commas outside parentheses.
fn split_top(s: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_and_presentations() {
        assert!(matches!(parse_field("F8"), Ok(FieldSpec::Finite(f)) if f.order() == 8));
        assert!(matches!(parse_field("F2(s,t)"), Ok(FieldSpec::Function(f)) if f.nvars() == 2));
        assert!(parse_field("F6").is_err());
        let src = "alg base=F4 gens=x,y rels=x^2+y,y^2-u*x";
        let FieldSpec::Finite(f) = presentation_base(src).unwrap() else { panic!() };
        let a = parse_algebra_over(f, src).unwrap();
        assert_eq!(a.relations.len(), 2);
        assert!(a.is_zero(&a.relations[1]));
        assert_eq!(a.render(&a.normal_form(&parse_poly(&a.ring, "x^2").unwrap())), "y");
    }

    #[test]
    fn rejects_bad_input() {
        let f = FiniteField::new(2, 1).unwrap();
        assert!(parse_algebra_over(f.clone(), "alg gens=x rels=x^").is_err());
        assert!(parse_algebra_over(f, "ring gens=x").is_err());
    }
}
