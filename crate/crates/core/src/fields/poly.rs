//! Sparse multivariate polynomials over F_p in at most four variables.
//!
//! A monomial packs four 16-bit exponents into a `u64`, variable 0 in the
//! top bits, so integer order on monomials is lexicographic order with
//! x0 > x1 > x2 > x3. Terms are kept sorted by decreasing monomial.

use super::Fp;

pub type Mono = u64;

pub const MAX_VARS: usize = 4;
const BITS: u32 = 16;
const FIELD: u64 = 0xffff;

#[inline]
fn shift(v: usize) -> u32 {
    48 - BITS * v as u32
}

pub fn mono_var(v: usize, e: u32) -> Mono {
    debug_assert!(v < MAX_VARS && (e as u64) <= FIELD);
    (e as u64) << shift(v)
}

#[inline]
pub fn mono_exp(m: Mono, v: usize) -> u32 {
    ((m >> shift(v)) & FIELD) as u32
}

pub fn mono_from_exps(e: &[u32]) -> Mono {
    e.iter().enumerate().fold(0, |m, (v, &x)| m | mono_var(v, x))
}

pub fn mono_exps(m: Mono, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|v| mono_exp(m, v)).collect()
}

#[inline]
pub fn mono_mul(a: Mono, b: Mono) -> Mono {
    debug_assert!((0..MAX_VARS).all(|v| mono_exp(a, v) + mono_exp(b, v) <= FIELD as u32));
    a + b
}

#[inline]
pub fn mono_divides(a: Mono, b: Mono) -> bool {
    (0..MAX_VARS).all(|v| mono_exp(a, v) <= mono_exp(b, v))
}

pub fn mono_gcd(a: Mono, b: Mono) -> Mono {
    (0..MAX_VARS).fold(0, |m, v| m | mono_var(v, mono_exp(a, v).min(mono_exp(b, v))))
}

pub fn mono_scale(a: Mono, k: u32) -> Mono {
    (0..MAX_VARS).fold(0, |m, v| m | mono_var(v, mono_exp(a, v) * k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    pub terms: Vec<(Mono, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: vec![] }
    }
    pub fn constant(c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(0, c)] }
        }
    }
    pub fn one() -> Self {
        Poly::constant(1)
    }
    pub fn monomial(m: Mono, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }
    pub fn var(v: usize) -> Self {
        Poly::monomial(mono_var(v, 1), 1)
    }

    /// Builds from unsorted terms, merging duplicates.
    pub fn from_terms(p: u32, mut t: Vec<(Mono, u32)>) -> Self {
        let fp = Fp(p);
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = fp.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|x| x.1 != 0);
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_const(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, 1)
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lc(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }
    pub fn lm(&self) -> Mono {
        self.terms.first().map_or(0, |t| t.0)
    }
    pub fn const_term(&self) -> u32 {
        match self.terms.last() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    /// Bitmask of variables that occur.
    pub fn var_mask(&self) -> u32 {
        let mut mask = 0;
        for &(m, _) in &self.terms {
            for v in 0..MAX_VARS {
                if mono_exp(m, v) > 0 {
                    mask |= 1 << v;
                }
            }
        }
        mask
    }

    pub fn deg_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|&(m, _)| mono_exp(m, v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|&(m, _)| (0..MAX_VARS).map(|v| mono_exp(m, v)).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of v^e, as a polynomial free of v.
    pub fn coeff_in(&self, v: usize, e: u32) -> Poly {
        let strip = mono_var(v, e);
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|&&(m, _)| mono_exp(m, v) == e)
                .map(|&(m, c)| (m - strip, c))
                .collect(),
        }
    }

    /// All nonzero coefficients with respect to v.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut es: Vec<u32> = self.terms.iter().map(|&(m, _)| mono_exp(m, v)).collect();
        es.sort_unstable();
        es.dedup();
        es.into_iter().map(|e| self.coeff_in(v, e)).collect()
    }
}

pub fn add(p: u32, a: &Poly, b: &Poly) -> Poly {
    merge(p, a, b, false)
}

pub fn sub(p: u32, a: &Poly, b: &Poly) -> Poly {
    merge(p, a, b, true)
}

fn merge(p: u32, a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let fp = Fp(p);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&a.terms, &b.terms);
    let nb = |c: u32| if negate_b { fp.neg(c) } else { c };
    while i < x.len() && j < y.len() {
        if x[i].0 > y[j].0 {
            out.push(x[i]);
            i += 1;
        } else if x[i].0 < y[j].0 {
            out.push((y[j].0, nb(y[j].1)));
            j += 1;
        } else {
            let c = if negate_b { fp.sub(x[i].1, y[j].1) } else { fp.add(x[i].1, y[j].1) };
            if c != 0 {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend(y[j..].iter().map(|&(m, c)| (m, nb(c))));
    Poly { terms: out }
}

pub fn neg(p: u32, a: &Poly) -> Poly {
    let fp = Fp(p);
    Poly { terms: a.terms.iter().map(|&(m, c)| (m, fp.neg(c))).collect() }
}

pub fn scale(p: u32, a: &Poly, k: u32) -> Poly {
    let fp = Fp(p);
    if k % p == 0 {
        return Poly::zero();
    }
    Poly { terms: a.terms.iter().map(|&(m, c)| (m, fp.mul(c, k))).collect() }
}

pub fn mul_term(p: u32, a: &Poly, m: Mono, k: u32) -> Poly {
    let fp = Fp(p);
    if k % p == 0 {
        return Poly::zero();
    }
    Poly { terms: a.terms.iter().map(|&(n, c)| (mono_mul(n, m), fp.mul(c, k))).collect() }
}

pub fn mul(p: u32, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    if a.len() == 1 {
        return mul_term(p, b, a.terms[0].0, a.terms[0].1);
    }
    if b.len() == 1 {
        return mul_term(p, a, b.terms[0].0, b.terms[0].1);
    }
    let fp = Fp(p);
    let mut t = Vec::with_capacity(a.len() * b.len());
    for &(m, c) in &a.terms {
        for &(n, d) in &b.terms {
            t.push((mono_mul(m, n), fp.mul(c, d)));
        }
    }
    Poly::from_terms(p, t)
}

pub fn pow(p: u32, a: &Poly, mut e: u32) -> Poly {
    let mut base = a.clone();
    let mut acc = Poly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(p, &base, &base);
        }
    }
    acc
}

/// a^p, which over F_p just multiplies exponents by p.
pub fn frobenius(p: u32, a: &Poly) -> Poly {
    Poly { terms: a.terms.iter().map(|&(m, c)| (mono_scale(m, p), c)).collect() }
}

pub fn monic(p: u32, a: &Poly) -> Poly {
    match a.lc() {
        0 | 1 => a.clone(),
        c => scale(p, a, Fp(p).inv(c)),
    }
}

/// Exact quotient a / b, or `None` if b does not divide a.
pub fn div_exact(p: u32, a: &Poly, b: &Poly) -> Option<Poly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let fp = Fp(p);
    if b.len() == 1 {
        let (bm, bc) = b.terms[0];
        let inv = fp.inv(bc);
        let mut out = Vec::with_capacity(a.len());
        for &(m, c) in &a.terms {
            if !mono_divides(bm, m) {
                return None;
            }
            out.push((m - bm, fp.mul(c, inv)));
        }
        return Some(Poly { terms: out });
    }
    let (bm, bc) = b.terms[0];
    let inv = fp.inv(bc);
    let mut r = a.clone();
    let mut q = Vec::new();
    while !r.is_zero() {
        let (rm, rc) = r.terms[0];
        if !mono_divides(bm, rm) {
            return None;
        }
        let m = rm - bm;
        let c = fp.mul(rc, inv);
        q.push((m, c));
        r = sub(p, &r, &mul_term(p, b, m, c));
    }
    Some(Poly { terms: q })
}

pub fn derivative(p: u32, a: &Poly, v: usize) -> Poly {
    let fp = Fp(p);
    let one = mono_var(v, 1);
    let t = a
        .terms
        .iter()
        .filter_map(|&(m, c)| {
            let e = mono_exp(m, v);
            let k = fp.mul(c, e % p);
            (k != 0).then(|| (m - one, k))
        })
        .collect();
    // removing v^1 keeps the order of the surviving terms
    Poly { terms: t }
}

fn content_in(p: u32, a: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for c in a.coeffs_in(v) {
        g = gcd(p, &g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: u32, a: &Poly, v: usize) -> Poly {
    let c = content_in(p, a, v);
    div_exact(p, a, &c).expect("content divides")
}

fn prem(p: u32, a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.deg_in(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    loop {
        let dr = r.deg_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coeff_in(v, dr);
        let t = mul(p, &mul_term(p, &lr, mono_var(v, dr - db), 1), b);
        r = sub(p, &mul(p, &lb, &r), &t);
    }
}

/// Monic greatest common divisor (gcd(0,0) = 0).
///
/// Recursive primitive remainder sequences in the smallest variable that
/// occurs, with contents handled over the remaining variables.
pub fn gcd(p: u32, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(p, b);
    }
    if b.is_zero() || a == b {
        return monic(p, a);
    }
    if a.is_const() || b.is_const() {
        return Poly::one();
    }
    if a.len() == 1 {
        return Poly::monomial(b.terms.iter().fold(a.terms[0].0, |g, &(m, _)| mono_gcd(g, m)), 1);
    }
    if b.len() == 1 {
        return Poly::monomial(a.terms.iter().fold(b.terms[0].0, |g, &(m, _)| mono_gcd(g, m)), 1);
    }
    let mask = a.var_mask() | b.var_mask();
    let v = mask.trailing_zeros() as usize;
    match mask.count_ones() {
        1 => return super::modgcd::gcd_univariate(p, a, b, v),
        2 => {
            let w = (mask & !(1 << v)).trailing_zeros() as usize;
            if let Some(g) = super::modgcd::gcd_bivariate(p, a, b, v, w) {
                return g;
            }
        }
        _ => {}
    }
    let (da, db) = (a.deg_in(v), b.deg_in(v));
    if da == 0 {
        return gcd(p, a, &content_in(p, b, v));
    }
    if db == 0 {
        return gcd(p, &content_in(p, a, v), b);
    }
    let (ca, cb) = (content_in(p, a, v), content_in(p, b, v));
    let g0 = gcd(p, &ca, &cb);
    let mut f = div_exact(p, a, &ca).expect("content divides");
    let mut g = div_exact(p, b, &cb).expect("content divides");
    if f.deg_in(v) < g.deg_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    let g1 = loop {
        let r = prem(p, &f, &g, v);
        if r.is_zero() {
            break g;
        }
        if r.deg_in(v) == 0 {
            break Poly::one();
        }
        f = g;
        g = primitive_part(p, &r, v);
    };
    monic(p, &mul(p, &g0, &primitive_part(p, &g1, v)))
}

/// Square root when `a` is a perfect square.
///
/// Peels terms off from the lexicographic leader; every term of a root
/// has each exponent at most half the corresponding maximum in `a`.
pub fn sqrt(p: u32, a: &Poly) -> Option<Poly> {
    if a.is_zero() {
        return Some(Poly::zero());
    }
    let fp = Fp(p);
    if p == 2 {
        let mut t = Vec::with_capacity(a.len());
        for &(m, c) in &a.terms {
            if (0..MAX_VARS).any(|v| mono_exp(m, v) % 2 == 1) {
                return None;
            }
            t.push((half(m), c));
        }
        return Some(Poly { terms: t });
    }
    let bounds: Vec<u32> = (0..MAX_VARS).map(|v| a.deg_in(v) / 2).collect();
    let (m0, c0) = a.terms[0];
    if (0..MAX_VARS).any(|v| mono_exp(m0, v) % 2 == 1) {
        return None;
    }
    let r0 = fp.sqrt(c0)?;
    let lead = half(m0);
    let two_r0_inv = fp.inv(fp.mul(2, r0));
    let mut root = Poly::monomial(lead, r0);
    let mut rem = sub(p, a, &mul(p, &root, &root));
    while !rem.is_zero() {
        let (rm, rc) = rem.terms[0];
        if !mono_divides(lead, rm) {
            return None;
        }
        let m = rm - lead;
        if m >= lead || (0..MAX_VARS).any(|v| mono_exp(m, v) > bounds[v]) {
            return None;
        }
        let t = Poly::monomial(m, fp.mul(rc, two_r0_inv));
        let twice = scale(p, &root, 2);
        let step = add(p, &mul(p, &twice, &t), &mul(p, &t, &t));
        rem = sub(p, &rem, &step);
        root = add(p, &root, &t);
    }
    Some(root)
}

fn half(m: Mono) -> Mono {
    (0..MAX_VARS).fold(0, |acc, v| acc | mono_var(v, mono_exp(m, v) / 2))
}

pub fn render(a: &Poly, names: &[String]) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for &(m, c) in &a.terms {
        let mut factors = Vec::new();
        for (v, name) in names.iter().enumerate() {
            match mono_exp(m, v) {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        let mono = factors.join("*");
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn lex_order_is_integer_order() {
        let a = mono_from_exps(&[1, 0]);
        let b = mono_from_exps(&[0, 5]);
        assert!(a > b);
        assert_eq!(mono_exps(mono_mul(a, b), 2), vec![1, 5]);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let p = 3;
        let g = add(p, &mul(p, &x(), &y()), &Poly::one());
        let a = mul(p, &g, &add(p, &x(), &y()));
        let b = mul(p, &g, &sub(p, &pow(p, &x(), 2), &y()));
        assert_eq!(gcd(p, &a, &b), g);
        let c = add(p, &x(), &Poly::constant(2));
        assert!(gcd(p, &a, &c).is_one());
    }

    #[test]
    fn gcd_with_monomials() {
        let p = 2;
        let a = mul(p, &pow(p, &x(), 3), &y());
        let b = add(p, &mul(p, &pow(p, &x(), 2), &y()), &mul(p, &x(), &pow(p, &y(), 2)));
        assert_eq!(gcd(p, &a, &b), mul(p, &x(), &y()));
    }

    #[test]
    fn exact_division() {
        let p = 5;
        let a = add(p, &x(), &y());
        let b = sub(p, &x(), &y());
        let ab = mul(p, &a, &b);
        assert_eq!(div_exact(p, &ab, &a), Some(b.clone()));
        assert_eq!(div_exact(p, &ab, &add(p, &x(), &Poly::one())), None);
    }

    #[test]
    fn square_roots_odd_characteristic() {
        let p = 3;
        let r = add(p, &mul(p, &x(), &pow(p, &y(), 2)), &Poly::constant(2));
        let sq = mul(p, &r, &r);
        let got = sqrt(p, &sq).unwrap();
        assert!(got == r || got == neg(p, &r));
        assert_eq!(sqrt(p, &x()), None);
        assert_eq!(sqrt(p, &add(p, &sq, &Poly::one())), None);
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let p = 2;
        let a = add(p, &pow(p, &x(), 2), &mul(p, &x(), &y()));
        assert_eq!(derivative(p, &a, 0), y());
        assert_eq!(derivative(p, &frobenius(p, &a), 0), Poly::zero());
    }
}
