use super::{is_prime, FResult, Field, FieldError, Fp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// Largest field order the table-driven representation accepts.
pub const ENUMERATION_BOUND: u64 = 1 << 20;

/// F_{p^n} with elements encoded as base-p digit strings of their
/// coefficient vectors in the basis 1, u, ..., u^{n-1}.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus, coefficients from u^0 to u^n.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl FiniteField {
    pub fn new(p: u64, n: u32) -> FResult<Self> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n < 1 {
            return Err(FieldError::BadDegree);
        }
        let q = (p as u128).pow(n);
        if q > ENUMERATION_BOUND as u128 {
            return Err(FieldError::BoundExceeded(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = first_irreducible(p, n);
        let mut t = Tables { p, n, q, modulus, exp: vec![], log: vec![] };
        t.build();
        Ok(FiniteField { inner: Arc::new(t) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn degree(&self) -> u32 {
        self.inner.n
    }
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus as a coefficient string, highest degree first.
    pub fn modulus_string(&self) -> String {
        self.inner.modulus.iter().rev().map(|c| c.to_string()).collect()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn primitive(&self) -> u32 {
        self.inner.exp[1 % self.inner.exp.len()]
    }

    /// Discrete log with respect to `primitive()`.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.inner.exp[(e % (self.inner.q as u64 - 1)) as usize]
    }

    /// The element with the given coefficients (low degree first).
    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        let p = self.inner.p;
        c.iter().rev().fold(0u32, |acc, &d| acc * p + d % p)
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        self.inner.digits(a)
    }

    /// The generator u.
    pub fn u(&self) -> u32 {
        if self.inner.n == 1 {
            0
        } else {
            self.inner.p
        }
    }
}

impl Tables {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.n == 1 {
            return Fp(self.p).add(a, b);
        }
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let s = (a % self.p + b % self.p) % self.p;
            r += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        r
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let fp = Fp(self.p);
        let d: Vec<u32> = self.digits(a).into_iter().map(|x| fp.neg(x)).collect();
        self.undigits(&d)
    }

    /// Schoolbook product reduced by the modulus; only used to build tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let fp = Fp(self.p);
        let n = self.n as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = fp.add(prod[i + j], fp.mul(x[i], y[j]));
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..=n {
                prod[k - n + i] = fp.sub(prod[k - n + i], fp.mul(c, self.modulus[i]));
            }
        }
        self.undigits(&prod[..n])
    }

    fn build(&mut self) {
        let order = self.q - 1;
        let factors = prime_factors(order as u64);
        let pow_slow = |t: &Tables, g: u32, mut e: u64| {
            let (mut b, mut r) = (g, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    r = t.mul_slow(r, b);
                }
                b = t.mul_slow(b, b);
                e >>= 1;
            }
            r
        };
        let g = (1..self.q)
            .find(|&g| factors.iter().all(|&f| pow_slow(self, g, order as u64 / f) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense univariate polynomials over F_p, low degree first, used only to
// pick the modulus.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn upoly_rem(fp: Fp, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = fp.inv(m[dm]);
    while r.len() > dm {
        let c = fp.mul(*r.last().unwrap(), inv);
        let shift = r.len() - 1 - dm;
        for i in 0..=dm {
            r[shift + i] = fp.sub(r[shift + i], fp.mul(c, m[i]));
        }
        r = trim(r);
    }
    r
}

fn upoly_mulmod(fp: Fp, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
        }
    }
    upoly_rem(fp, &prod, m)
}

fn upoly_gcd(fp: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = upoly_rem(fp, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility via gcd(x^{p^i} - x, f) = 1 for i ≤ n/2.
pub(crate) fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let fp = Fp(p);
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    let mut xp = vec![0, 1];
    for _ in 1..=n / 2 {
        // xp <- xp^p
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = upoly_mulmod(fp, &acc, &xp, f);
        }
        xp = acc;
        let mut d = xp.clone();
        d.resize(d.len().max(2), 0);
        d[1] = fp.sub(d[1], 1);
        let g = upoly_gcd(fp, f, &d);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree n, ordering candidates by their
/// coefficient vector read from u^{n-1} down to u^0.
fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for code in 0..count {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field for FiniteField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.inner.p
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        Fp(self.inner.p).from_i64(n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.inner.add(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.inner.neg(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let t = &self.inner;
        let s = t.log[*a as usize] as u64 + t.log[*b as usize] as u64;
        t.exp[(s % (t.q as u64 - 1)) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let t = &self.inner;
        let l = t.log[*a as usize];
        Some(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize])
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        let t = &self.inner;
        let m = t.q as u64 - 1;
        t.exp[((t.log[*a as usize] as u64 % m) * (e % m) % m) as usize]
    }
    fn gens(&self) -> Vec<u32> {
        if self.inner.n == 1 {
            vec![]
        } else {
            vec![self.u()]
        }
    }
    fn gen_names(&self) -> Vec<String> {
        if self.inner.n == 1 {
            vec![]
        } else {
            vec!["u".into()]
        }
    }

    fn eval_at<C: Field>(&self, a: &u32, images: &[C::Elem], cod: &C) -> Option<C::Elem> {
        let d = self.inner.digits(*a);
        if self.inner.n == 1 {
            return Some(cod.from_i64(d[0] as i64));
        }
        let u = &images[0];
        let mut acc = cod.zero();
        for &c in d.iter().rev() {
            acc = cod.add(&cod.mul(&acc, u), &cod.from_i64(c as i64));
        }
        Some(acc)
    }

    fn images_valid<C: Field>(&self, images: &[C::Elem], cod: &C) -> bool {
        if cod.characteristic() != self.inner.p {
            return false;
        }
        if self.inner.n == 1 {
            return images.is_empty();
        }
        let u = &images[0];
        let mut acc = cod.zero();
        for &c in self.inner.modulus.iter().rev() {
            acc = cod.add(&cod.mul(&acc, u), &cod.from_i64(c as i64));
        }
        cod.is_zero(&acc)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.gen_range(0..self.inner.q)
    }

    fn render(&self, a: &u32) -> String {
        let d = self.inner.digits(*a);
        if self.inner.n == 1 {
            return d[0].to_string();
        }
        let mut parts = vec![];
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn describe(&self) -> String {
        format!("Fq p={} n={} mod={}", self.inner.p, self.inner.n, self.modulus_string())
    }

    fn frobenius(&self, a: &u32) -> u32 {
        self.pow(a, self.inner.p as u64)
    }

    fn enumerate(&self) -> Option<Vec<u32>> {
        Some((0..self.inner.q).collect())
    }

    fn sqrt(&self, a: &u32) -> FResult<Option<u32>> {
        if *a == 0 {
            return Ok(Some(0));
        }
        let t = &self.inner;
        let m = t.q as u64 - 1;
        let l = t.log[*a as usize] as u64;
        if t.p == 2 {
            // 2 is invertible mod the odd group order
            let half = (m + 1) / 2;
            return Ok(Some(t.exp[(l * half % m) as usize]));
        }
        Ok((l % 2 == 0).then(|| t.exp[(l / 2) as usize]))
    }

    fn artin_schreier(&self, d: &u32) -> FResult<Option<u32>> {
        if self.inner.p != 2 {
            return Err(FieldError::WrongCharacteristic { expected: 2, found: self.inner.p });
        }
        Ok((0..self.inner.q).find(|u| self.add(&self.mul(u, u), u) == *d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_modulus_and_generator() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.modulus_string(), "1011");
        let u = f.u();
        let u3 = f.pow(&u, 3);
        assert_eq!(u3, f.add(&u, &1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FiniteField::new(4, 2).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FiniteField::new(2, 0).unwrap_err(), FieldError::BadDegree);
        assert!(matches!(FiniteField::new(2, 21), Err(FieldError::BoundExceeded(_))));
    }

    #[test]
    fn moduli_are_irreducible_by_root_search() {
        for (p, n) in [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2), (2, 5), (3, 5)] {
            let f = FiniteField::new(p, n).unwrap();
            let m = f.modulus();
            assert!(is_irreducible(p as u32, m));
            if n <= 3 {
                // degree ≤ 3: irreducible iff no root in F_p
                let fp = Fp(p as u32);
                for x in 0..p as u32 {
                    let v = m.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, x), c));
                    assert_ne!(v, 0);
                }
            }
        }
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus_string(), "101");
    }

    #[test]
    fn axioms_exhaustive_small() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 6), (7, 1)] {
            let f = FiniteField::new(p, n).unwrap();
            let els = f.enumerate().unwrap();
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), 0);
                if *a != 0 {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), 1);
                }
                for b in &els {
                    assert_eq!(f.mul(a, b), f.inner.mul_slow(*a, *b));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            for a in els.iter().step_by(3) {
                for b in els.iter().step_by(5) {
                    for c in els.iter().step_by(7) {
                        let l = f.mul(a, &f.add(b, c));
                        let r = f.add(&f.mul(a, b), &f.mul(a, c));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn square_roots() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.primitive();
        let x = f.mul(&g, &g);
        let w = f.sqrt(&x).unwrap().unwrap();
        assert_eq!(f.mul(&w, &w), x);
        assert_eq!(f.sqrt(&g).unwrap(), None);
        let f2 = FiniteField::new(2, 5).unwrap();
        for a in 0..32 {
            let r = f2.sqrt(&a).unwrap().unwrap();
            assert_eq!(f2.mul(&r, &r), a);
        }
    }

    #[test]
    fn render_polynomials() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.render(&0b110), "u^2+u");
        assert_eq!(f.render(&0), "0");
        assert_eq!(f.describe(), "Fq p=2 n=3 mod=1011");
    }
}
