use crate::fields::Field;
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Exps = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TermOrder {
    Lex,
    #[default]
    GrevLex,
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// A polynomial as exponent vector → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<E> {
    pub terms: BTreeMap<Exps, E>,
}

impl<E> MPoly<E> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// F[x_1..x_n] with a term order.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub names: Vec<String>,
    pub order: TermOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, names: &[&str], order: TermOrder) -> Self {
        PolyRing { field, names: names.iter().map(|s| s.to_string()).collect(), order }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn constant(&self, c: F::Elem) -> MPoly<F::Elem> {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn one(&self) -> MPoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> MPoly<F::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e, self.field.one())
    }

    pub fn monomial(&self, e: Exps, c: F::Elem) -> MPoly<F::Elem> {
        let mut p = MPoly::zero();
        if !self.field.is_zero(&c) {
            p.terms.insert(e, c);
        }
        p
    }

    fn add_term(&self, p: &mut MPoly<F::Elem>, e: Exps, c: F::Elem) {
        let f = &self.field;
        match p.terms.get_mut(&e) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    p.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !f.is_zero(&c) {
                    p.terms.insert(e, c);
                }
            }
        }
    }

    pub fn add(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        MPoly { terms: a.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &MPoly<F::Elem>, k: &F::Elem) -> MPoly<F::Elem> {
        if self.field.is_zero(k) {
            return MPoly::zero();
        }
        MPoly { terms: a.terms.iter().map(|(e, c)| (e.clone(), self.field.mul(c, k))).collect() }
    }

    /// k·x^m·a
    pub fn mul_term(&self, a: &MPoly<F::Elem>, m: &[u32], k: &F::Elem) -> MPoly<F::Elem> {
        if self.field.is_zero(k) {
            return MPoly::zero();
        }
        let terms = a.terms.iter().map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), self.field.mul(c, k))).collect();
        MPoly { terms }
    }

    pub fn mul(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        let mut out = MPoly::zero();
        for (e, c) in &b.terms {
            for (e2, c2) in &a.terms {
                let m = e.iter().zip(e2).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, m, self.field.mul(c, c2));
            }
        }
        out
    }

    pub fn pow(&self, a: &MPoly<F::Elem>, mut e: u64) -> MPoly<F::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Leading exponent and coefficient under the ring's order.
    pub fn leading<'a>(&self, a: &'a MPoly<F::Elem>) -> Option<(&'a Exps, &'a F::Elem)> {
        a.terms.iter().max_by(|x, y| self.order.cmp(x.0, y.0))
    }

    pub fn monic(&self, a: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        match self.leading(a) {
            None => MPoly::zero(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(a, &inv)
            }
        }
    }

    pub fn derivative(&self, a: &MPoly<F::Elem>, v: usize) -> MPoly<F::Elem> {
        let mut out = MPoly::zero();
        for (e, c) in &a.terms {
            if e[v] == 0 {
                continue;
            }
            let mut m = e.clone();
            m[v] -= 1;
            self.add_term(&mut out, m, self.field.mul(c, &self.field.from_i64(e[v] as i64)));
        }
        out
    }

    /// Applies `coeff` to every coefficient, landing in `target`.
    pub fn map_coeffs<G: Field>(&self, a: &MPoly<F::Elem>, target: &PolyRing<G>, coeff: &dyn Fn(&F::Elem) -> G::Elem) -> MPoly<G::Elem> {
        let mut out = MPoly::zero();
        for (e, c) in &a.terms {
            target.add_term(&mut out, e.clone(), coeff(c));
        }
        out
    }

    /// a(images) in `target`, with coefficients sent through `coeff`.
    pub fn substitute<G: Field>(
        &self,
        a: &MPoly<F::Elem>,
        target: &PolyRing<G>,
        coeff: &dyn Fn(&F::Elem) -> G::Elem,
        images: &[MPoly<G::Elem>],
    ) -> MPoly<G::Elem> {
        let mut cache: Vec<Vec<MPoly<G::Elem>>> = images.iter().map(|_| vec![target.one()]).collect();
        let mut out = MPoly::zero();
        for (e, c) in &a.terms {
            let mut t = target.constant(coeff(c));
            for (v, &k) in e.iter().enumerate() {
                while cache[v].len() <= k as usize {
                    let next = target.mul(cache[v].last().unwrap(), &images[v]);
                    cache[v].push(next);
                }
                t = target.mul(&t, &cache[v][k as usize]);
            }
            out = target.add(&out, &t);
        }
        out
    }

    /// a(point), with coefficients sent into `cod` by `coeff`.
    pub fn eval_in<C: Field>(&self, a: &MPoly<F::Elem>, cod: &C, coeff: &dyn Fn(&F::Elem) -> C::Elem, point: &[C::Elem]) -> C::Elem {
        let mut acc = cod.zero();
        for (e, c) in &a.terms {
            let mut t = coeff(c);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = cod.mul(&t, &cod.pow(&point[v], k as u64));
                }
            }
            acc = cod.add(&acc, &t);
        }
        acc
    }

    pub fn eval(&self, a: &MPoly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        self.eval_in(a, &self.field, &|c| c.clone(), point)
    }

    pub fn render(&self, a: &MPoly<F::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = a.terms.iter().collect();
        terms.sort_by(|x, y| self.order.cmp(y.0, x.0));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { self.names[v].clone() } else { format!("{}^{}", self.names[v], k) })
                    .collect();
                let cs = self.field.render(c);
                let cs = if cs.contains(['+', '-', '/']) { format!("({cs})") } else { cs };
                match (mono.is_empty(), self.field.is_one(c)) {
                    (true, _) => cs,
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{cs}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;

    #[test]
    fn grevlex_and_lex() {
        let o = TermOrder::GrevLex;
        assert_eq!(o.cmp(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn arithmetic_in_char_two() {
        let f = FiniteField::new(2, 1).unwrap();
        let r = PolyRing::new(f, &["x", "y"], TermOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        let s = r.add(&x, &y);
        assert_eq!(r.pow(&s, 2), r.add(&r.mul(&x, &x), &r.mul(&y, &y)));
        assert!(r.derivative(&r.mul(&x, &x), 0).is_zero());
        assert_eq!(r.render(&r.add(&r.mul(&x, &y), &r.one())), "x*y + 1");
        let sub = r.substitute(&r.mul(&x, &y), &r, &|c| *c, &[y.clone(), r.mul(&x, &x)]);
        assert_eq!(sub, r.mul(&y, &r.mul(&x, &x)));
        assert_eq!(r.eval(&s, &[1, 1]), 0);
    }
}
