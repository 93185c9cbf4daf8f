use super::poly::{self, Mono, Poly, MAX_VARS};
use super::{is_prime, FResult, Field, FieldError, Fp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// F_p(x_1, ..., x_m) for m ≤ 4.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionField {
    inner: Arc<Inner>,
}

#[derive(PartialEq, Eq)]
struct Inner {
    p: u32,
    vars: Vec<String>,
}

/// A reduced fraction: coprime parts, denominator with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat {
    pub num: Poly,
    pub den: Poly,
}

impl fmt::Debug for FunctionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Rat {
    pub fn from_poly(num: Poly) -> Rat {
        Rat { num, den: Poly::one() }
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
}

impl FunctionField {
    pub fn new(p: u64, vars: &[&str]) -> FResult<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        if vars.len() > MAX_VARS {
            return Err(FieldError::TooManyVariables(MAX_VARS));
        }
        Ok(FunctionField {
            inner: Arc::new(Inner { p: p as u32, vars: vars.iter().map(|s| s.to_string()).collect() }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }
    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var(&self, i: usize) -> Rat {
        Rat::from_poly(Poly::var(i))
    }

    pub fn poly(&self, a: Poly) -> Rat {
        Rat::from_poly(a)
    }

    /// Element from (exponents, coefficient) terms.
    pub fn from_terms(&self, terms: &[(&[u32], i64)]) -> Rat {
        let fp = Fp(self.inner.p);
        let t = terms.iter().map(|(e, c)| (poly::mono_from_exps(e), fp.from_i64(*c))).collect();
        Rat::from_poly(Poly::from_terms(self.inner.p, t))
    }

    /// Reduce num/den to the canonical representative.
    pub fn normalize(&self, num: Poly, den: Poly) -> Option<Rat> {
        let p = self.inner.p;
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Rat { num, den: Poly::one() });
        }
        let g = poly::gcd(p, &num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (poly::div_exact(p, &num, &g).unwrap(), poly::div_exact(p, &den, &g).unwrap())
        };
        let c = d.lc();
        if c != 1 {
            let inv = Fp(p).inv(c);
            n = poly::scale(p, &n, inv);
            d = poly::scale(p, &d, inv);
        }
        Some(Rat { num: n, den: d })
    }

    pub fn is_normalized(&self, a: &Rat) -> bool {
        self.normalize(a.num.clone(), a.den.clone()).as_ref() == Some(a)
    }

    pub fn render_poly(&self, a: &Poly) -> String {
        poly::render(a, &self.inner.vars)
    }

    fn sample_poly(&self, rng: &mut ChaCha8Rng, terms: usize, maxdeg: u32) -> Poly {
        let p = self.inner.p;
        let n = self.nvars();
        let t: Vec<(Mono, u32)> = (0..terms)
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=maxdeg)).collect();
                (poly::mono_from_exps(&e), rng.gen_range(1..p))
            })
            .collect();
        Poly::from_terms(p, t)
    }

    /// A random polynomial with up to `terms` terms and exponents ≤ `maxdeg`.
    pub fn sample_small_poly(&self, rng: &mut ChaCha8Rng, terms: usize, maxdeg: u32) -> Rat {
        Rat::from_poly(self.sample_poly(rng, terms, maxdeg))
    }

    pub fn sample_nonzero(&self, rng: &mut ChaCha8Rng) -> Rat {
        loop {
            let x = self.sample(rng);
            if !x.num.is_zero() {
                return x;
            }
        }
    }

    fn eval_poly<C: Field>(&self, a: &Poly, images: &[C::Elem], cod: &C) -> C::Elem {
        let n = self.nvars();
        let mut powers: Vec<Vec<C::Elem>> = vec![vec![cod.one()]; n];
        let mut acc = cod.zero();
        for &(m, c) in &a.terms {
            let mut t = cod.from_i64(c as i64);
            for v in 0..n {
                let e = poly::mono_exp(m, v) as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = cod.mul(powers[v].last().unwrap(), &images[v]);
                    powers[v].push(next);
                }
                t = cod.mul(&t, &powers[v][e]);
            }
            acc = cod.add(&acc, &t);
        }
        acc
    }
}

impl Field for FunctionField {
    type Elem = Rat;

    fn characteristic(&self) -> u32 {
        self.inner.p
    }
    fn zero(&self) -> Rat {
        Rat::from_poly(Poly::zero())
    }
    fn one(&self) -> Rat {
        Rat::from_poly(Poly::one())
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_poly(Poly::constant(Fp(self.inner.p).from_i64(n)))
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        let p = self.inner.p;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let n = poly::add(p, &a.num, &b.num);
            if a.den.is_one() {
                return Rat::from_poly(n);
            }
            return self.normalize(n, a.den.clone()).unwrap();
        }
        let g = poly::gcd(p, &a.den, &b.den);
        let bd = poly::div_exact(p, &b.den, &g).unwrap();
        let ad = poly::div_exact(p, &a.den, &g).unwrap();
        let n = poly::add(p, &poly::mul(p, &a.num, &bd), &poly::mul(p, &b.num, &ad));
        let d = poly::mul(p, &a.den, &bd);
        self.normalize(n, d).unwrap()
    }

    fn neg(&self, a: &Rat) -> Rat {
        Rat { num: poly::neg(self.inner.p, &a.num), den: a.den.clone() }
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        let p = self.inner.p;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if a.is_poly() && b.is_poly() {
            return Rat::from_poly(poly::mul(p, &a.num, &b.num));
        }
        let g1 = poly::gcd(p, &a.num, &b.den);
        let g2 = poly::gcd(p, &b.num, &a.den);
        let n1 = poly::div_exact(p, &a.num, &g1).unwrap();
        let d2 = poly::div_exact(p, &b.den, &g1).unwrap();
        let n2 = poly::div_exact(p, &b.num, &g2).unwrap();
        let d1 = poly::div_exact(p, &a.den, &g2).unwrap();
        let mut num = poly::mul(p, &n1, &n2);
        let mut den = poly::mul(p, &d1, &d2);
        let c = den.lc();
        if c != 1 {
            let inv = Fp(p).inv(c);
            num = poly::scale(p, &num, inv);
            den = poly::scale(p, &den, inv);
        }
        Rat { num, den }
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.num.is_zero() {
            return None;
        }
        let p = self.inner.p;
        let c = Fp(p).inv(a.num.lc());
        Some(Rat { num: poly::scale(p, &a.den, c), den: poly::scale(p, &a.num, c) })
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.num.is_zero()
    }

    fn frobenius(&self, a: &Rat) -> Rat {
        let p = self.inner.p;
        Rat { num: poly::frobenius(p, &a.num), den: poly::frobenius(p, &a.den) }
    }

    fn gens(&self) -> Vec<Rat> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }
    fn gen_names(&self) -> Vec<String> {
        self.inner.vars.clone()
    }

    fn eval_at<C: Field>(&self, a: &Rat, images: &[C::Elem], cod: &C) -> Option<C::Elem> {
        let n = self.eval_poly(&a.num, images, cod);
        if a.den.is_one() {
            return Some(n);
        }
        let d = self.eval_poly(&a.den, images, cod);
        cod.div(&n, &d)
    }

    fn images_valid<C: Field>(&self, images: &[C::Elem], cod: &C) -> bool {
        // algebraic independence is not decidable here; only the shape is checked
        cod.characteristic() == self.inner.p && images.len() == self.nvars()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Rat {
        let nt = rng.gen_range(1..=3);
        let num = self.sample_poly(rng, nt, 2);
        if rng.gen_bool(0.5) {
            return Rat::from_poly(num);
        }
        loop {
            let dt = rng.gen_range(1..=2);
            let den = self.sample_poly(rng, dt, 2);
            if let Some(r) = self.normalize(num.clone(), den) {
                return r;
            }
        }
    }

    fn render(&self, a: &Rat) -> String {
        let n = self.render_poly(&a.num);
        if a.den.is_one() {
            return n;
        }
        let d = self.render_poly(&a.den);
        let wrap_d = a.den.len() > 1 || d.contains('*');
        let n = if a.num.len() > 1 { format!("({n})") } else { n };
        if wrap_d {
            format!("{n}/({d})")
        } else {
            format!("{n}/{d}")
        }
    }

    fn describe(&self) -> String {
        format!("Fun p={} vars={}", self.inner.p, self.inner.vars.join(","))
    }

    fn partial(&self, a: &Rat, var: usize) -> Option<Rat> {
        let p = self.inner.p;
        let dn = poly::derivative(p, &a.num, var);
        let dd = poly::derivative(p, &a.den, var);
        let top = poly::sub(p, &poly::mul(p, &dn, &a.den), &poly::mul(p, &a.num, &dd));
        self.normalize(top, poly::mul(p, &a.den, &a.den))
    }

    /// n/d is a square iff n·d is (n, d coprime, d monic), with root √(nd)/d.
    fn sqrt(&self, a: &Rat) -> FResult<Option<Rat>> {
        let p = self.inner.p;
        if a.num.is_zero() {
            return Ok(Some(self.zero()));
        }
        let nd = poly::mul(p, &a.num, &a.den);
        Ok(poly::sqrt(p, &nd).map(|r| self.normalize(r, a.den.clone()).unwrap()))
    }

    /// Solves u² + u = d for polynomial d by descending on the leading
    /// term; rational d is left undecided.
    fn artin_schreier(&self, d: &Rat) -> FResult<Option<Rat>> {
        let p = self.inner.p;
        if p != 2 {
            return Err(FieldError::WrongCharacteristic { expected: 2, found: p });
        }
        if !d.is_poly() {
            return Err(FieldError::Undecidable("Artin-Schreier equation with a denominator".into()));
        }
        // A polynomial solution is forced: a pole of u would give a pole of u²+u.
        let mut rest = d.num.clone();
        let mut u = Poly::zero();
        while !rest.is_zero() {
            let (m, _) = rest.terms[0];
            if m == 0 {
                // constant 1 is not in the image of u ↦ u²+u over F_2
                return Ok(None);
            }
            if (0..MAX_VARS).any(|v| poly::mono_exp(m, v) % 2 == 1) {
                return Ok(None);
            }
            let root = (0..MAX_VARS).fold(0, |acc, v| acc | poly::mono_var(v, poly::mono_exp(m, v) / 2));
            let t = Poly::monomial(root, 1);
            u = poly::add(p, &u, &t);
            rest = poly::add(p, &rest, &poly::add(p, &poly::mul(p, &t, &t), &t));
        }
        Ok(Some(Rat::from_poly(u)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn st(p: u64) -> FunctionField {
        FunctionField::new(p, &["s", "t"]).unwrap()
    }

    #[test]
    fn fractions_reduce() {
        let f = st(2);
        let s = f.var(0);
        let t = f.var(1);
        let st_ = f.mul(&s, &t);
        let x = f.div(&st_, &s).unwrap();
        assert_eq!(x, t);
        let y = f.add(&f.inv(&s).unwrap(), &f.inv(&t).unwrap());
        assert_eq!(f.render(&y), "(s+t)/(s*t)");
    }

    #[test]
    fn field_laws_on_samples() {
        let f = st(3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = f.sample(&mut rng);
            let b = f.sample(&mut rng);
            let c = f.sample(&mut rng);
            assert!(f.is_normalized(&a));
            let l = f.mul(&a, &f.add(&b, &c));
            let r = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            assert_eq!(l, r);
            assert!(f.is_normalized(&l));
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            assert_eq!(f.frobenius(&a), f.pow(&a, 3));
        }
    }

    #[test]
    fn squares_in_f3_st() {
        let f = st(3);
        let s = f.var(0);
        assert_eq!(f.sqrt(&s).unwrap(), None);
        let x = f.from_terms(&[(&[2, 4], 1)]);
        let w = f.sqrt(&x).unwrap().unwrap();
        assert_eq!(f.square(&w), x);
        let w_expected = f.from_terms(&[(&[1, 2], 1)]);
        assert!(w == w_expected || w == f.neg(&w_expected));
    }

    #[test]
    fn partials_detect_subfield() {
        let f = st(2);
        let x = f.from_terms(&[(&[2, 1], 1), (&[0, 3], 1)]);
        assert!(f.is_zero(&f.partial(&x, 0).unwrap()));
        assert!(!f.is_zero(&f.partial(&f.var(0), 0).unwrap()));
    }

    #[test]
    fn artin_schreier_polynomials() {
        let f = st(2);
        let t = f.var(1);
        assert_eq!(f.artin_schreier(&t).unwrap(), None);
        let u = f.from_terms(&[(&[1, 1], 1), (&[0, 2], 1)]);
        let d = f.add(&f.square(&u), &u);
        let sol = f.artin_schreier(&d).unwrap().unwrap();
        assert_eq!(f.add(&f.square(&sol), &sol), d);
    }
}
