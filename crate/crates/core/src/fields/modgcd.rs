//! Dense gcds for polynomials in one or two variables.
//!
//! The bivariate case evaluates the second variable at points of a large
//! extension of F_p, takes univariate gcds there and interpolates back.
//! A constant gcd image at a point where neither leading coefficient
//! vanishes proves the true gcd is free of the main variable, which
//! settles the coprime case after a single evaluation.

use super::poly::{self, mono_exp, mono_var, Poly};
use super::{FiniteField, Field, Fp};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Dense univariate arithmetic over any field with `u32` elements.
trait Coeffs {
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
}

impl Coeffs for Fp {
    fn add(&self, a: u32, b: u32) -> u32 {
        Fp::add(*self, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        Fp::sub(*self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Fp::mul(*self, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        Fp::inv(*self, a)
    }
}

impl Coeffs for FiniteField {
    fn add(&self, a: u32, b: u32) -> u32 {
        Field::add(self, &a, &b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        Field::sub(self, &a, &b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Field::mul(self, &a, &b)
    }
    fn inv(&self, a: u32) -> u32 {
        Field::inv(self, &a).expect("nonzero")
    }
}

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn make_monic<K: Coeffs>(k: &K, a: &mut [u32]) {
    if let Some(&l) = a.last() {
        let li = k.inv(l);
        for c in a.iter_mut() {
            *c = k.mul(*c, li);
        }
    }
}

/// Remainder of a by b, in place.
fn rem_in_place<K: Coeffs>(k: &K, a: &mut Vec<u32>, b: &[u32]) {
    let db = b.len() - 1;
    let li = k.inv(b[db]);
    while a.len() > db {
        let top = a.len() - 1;
        let q = k.mul(a[top], li);
        if q != 0 {
            for i in 0..db {
                a[top - db + i] = k.sub(a[top - db + i], k.mul(q, b[i]));
            }
        }
        a.pop();
        trim(a);
    }
}

fn dense_gcd<K: Coeffs>(k: &K, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        rem_in_place(k, &mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    make_monic(k, &mut x);
    x
}

fn dense_quo<K: Coeffs>(k: &K, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = b.len() - 1;
    if a.len() <= db {
        return vec![];
    }
    let li = k.inv(b[db]);
    let mut r = a.to_vec();
    let mut q = vec![0u32; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = k.mul(r[top], li);
        q[top - db] = c;
        if c != 0 {
            for i in 0..=db {
                r[top - db + i] = k.sub(r[top - db + i], k.mul(c, b[i]));
            }
        }
    }
    q
}

fn dense_eval<K: Coeffs>(k: &K, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

/// Newton interpolation through (xs[i], ys[i]).
fn interpolate<K: Coeffs>(k: &K, xs: &[u32], ys: &[u32]) -> Vec<u32> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = k.sub(dd[i], dd[i - 1]);
            let den = k.sub(xs[i], xs[i - j]);
            dd[i] = k.mul(num, k.inv(den));
        }
    }
    let mut out = vec![0u32; n];
    for i in (0..n).rev() {
        // out = out·(x − xs[i]) + dd[i]
        let mut next = vec![0u32; n];
        for d in 0..n - 1 {
            next[d + 1] = k.add(next[d + 1], out[d]);
            next[d] = k.sub(next[d], k.mul(out[d], xs[i]));
        }
        next[0] = k.add(next[0], dd[i]);
        out = next;
    }
    trim(&mut out);
    out
}

fn to_dense(a: &Poly, v: usize) -> Vec<u32> {
    let mut d = vec![0u32; a.deg_in(v) as usize + 1];
    for &(m, c) in &a.terms {
        d[mono_exp(m, v) as usize] = c;
    }
    trim(&mut d);
    d
}

fn from_dense(d: &[u32], v: usize) -> Poly {
    Poly {
        terms: d.iter().enumerate().rev().filter(|x| *x.1 != 0).map(|(e, &c)| (mono_var(v, e as u32), c)).collect(),
    }
}

pub(crate) fn gcd_univariate(p: u32, a: &Poly, b: &Poly, v: usize) -> Poly {
    from_dense(&dense_gcd(&Fp(p), &to_dense(a, v), &to_dense(b, v)), v)
}

/// Coefficients of `a` in the main variable `v`, each dense in `w`.
fn split(a: &Poly, v: usize, w: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]; a.deg_in(v) as usize + 1];
    for &(m, c) in &a.terms {
        let row = &mut out[mono_exp(m, v) as usize];
        let e = mono_exp(m, w) as usize;
        if row.len() <= e {
            row.resize(e + 1, 0);
        }
        row[e] = c;
    }
    out
}

fn join(rows: &[Vec<u32>], v: usize, w: usize) -> Poly {
    let mut terms = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                terms.push((mono_var(v, i as u32) | mono_var(w, j as u32), c));
            }
        }
    }
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    Poly { terms }
}

fn content(fp: Fp, rows: &[Vec<u32>]) -> Vec<u32> {
    let mut g: Vec<u32> = vec![];
    for r in rows {
        if r.iter().any(|&c| c != 0) {
            g = dense_gcd(&fp, &g, r);
            if g.len() == 1 {
                break;
            }
        }
    }
    g
}

fn divide_rows(fp: Fp, rows: &[Vec<u32>], d: &[u32]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| if r.iter().all(|&c| c == 0) { vec![] } else { dense_quo(&fp, r, d) }).collect()
}

/// Evaluation field for characteristic p, shared across calls.
fn eval_field(p: u32) -> Option<FiniteField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Option<FiniteField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(p)
        .or_insert_with(|| {
            let mut k = 1;
            while (p as u64).pow(k + 1) <= 1 << 16 {
                k += 1;
            }
            FiniteField::new(p as u64, k).ok().filter(|f| f.order() >= 1 << 10)
        })
        .clone()
}

/// Gcd of polynomials involving exactly the variables `v` and `w`.
/// `None` when the evaluation field runs out of good points.
pub(crate) fn gcd_bivariate(p: u32, a: &Poly, b: &Poly, v: usize, w: usize) -> Option<Poly> {
    let fp = Fp(p);
    let (ra, rb) = (split(a, v, w), split(b, v, w));
    let (ca, cb) = (content(fp, &ra), content(fp, &rb));
    let c = dense_gcd(&fp, &ca, &cb);
    let (ra, rb) = (divide_rows(fp, &ra, &ca), divide_rows(fp, &rb, &cb));
    let c_poly = from_dense(&c, w);
    if ra.len() == 1 || rb.len() == 1 {
        return Some(c_poly);
    }
    let (la, lb) = (ra.last().unwrap(), rb.last().unwrap());
    let gamma = dense_gcd(&fp, la, lb);
    let deg_w = |r: &[Vec<u32>]| r.iter().map(|x| x.len()).max().unwrap_or(1) - 1;
    let bound = gamma.len() - 1 + deg_w(&ra).min(deg_w(&rb));

    let k = eval_field(p)?;
    let mut best = usize::MAX;
    let mut xs: Vec<u32> = vec![];
    let mut images: Vec<Vec<u32>> = vec![];
    for i in 0..k.order() as u64 - 1 {
        let x = k.exp(i);
        let g0 = dense_eval(&k, &gamma, x);
        if g0 == 0 || dense_eval(&k, la, x) == 0 || dense_eval(&k, lb, x) == 0 {
            continue;
        }
        let ea: Vec<u32> = ra.iter().map(|r| dense_eval(&k, r, x)).collect();
        let eb: Vec<u32> = rb.iter().map(|r| dense_eval(&k, r, x)).collect();
        let g = dense_gcd(&k, &ea, &eb);
        let d = g.len() - 1;
        if d == 0 {
            return Some(c_poly);
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            xs.clear();
            images.clear();
        }
        xs.push(x);
        images.push(g.iter().map(|&c| Coeffs::mul(&k, c, g0)).collect());
        if xs.len() > bound {
            let mut rows = Vec::with_capacity(best + 1);
            for j in 0..=best {
                let ys: Vec<u32> = images.iter().map(|im| im[j]).collect();
                let row = interpolate(&k, &xs, &ys);
                // Coefficients outside the prime field mean some point was unlucky.
                if row.iter().any(|&c| c >= p) {
                    rows.clear();
                    break;
                }
                rows.push(row);
            }
            if rows.is_empty() {
                xs.remove(0);
                images.remove(0);
                continue;
            }
            let cont = content(fp, &rows);
            let g = join(&divide_rows(fp, &rows, &cont), v, w);
            if poly::div_exact(p, a, &g).is_some() && poly::div_exact(p, b, &g).is_some() {
                return Some(poly::monic(p, &poly::mul(p, &c_poly, &g)));
            }
            xs.remove(0);
            images.remove(0);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::poly::{mono_from_exps, mul};

    fn pp(p: u32, t: &[(&[u32], u32)]) -> Poly {
        Poly::from_terms(p, t.iter().map(|(e, c)| (mono_from_exps(e), *c)).collect())
    }

    #[test]
    fn bivariate_common_factor_recovered() {
        for p in [2u32, 3, 5] {
            let f = pp(p, &[(&[2, 1], 1), (&[0, 3], 1), (&[1, 0], 1), (&[0, 0], 1)]);
            let g = pp(p, &[(&[3, 0], 1), (&[1, 2], 1), (&[0, 1], 1)]);
            let h = pp(p, &[(&[1, 1], 1), (&[0, 2], 1), (&[0, 0], 1)]);
            let a = mul(p, &f, &h);
            let b = mul(p, &g, &h);
            let got = gcd_bivariate(p, &a, &b, 0, 1).unwrap();
            assert_eq!(got, poly::monic(p, &h));
        }
    }

    #[test]
    fn content_only_gcd() {
        let p = 2;
        let t1 = pp(p, &[(&[0, 1], 1), (&[0, 0], 1)]);
        let a = mul(p, &t1, &pp(p, &[(&[1, 0], 1), (&[0, 2], 1)]));
        let b = mul(p, &t1, &pp(p, &[(&[2, 0], 1), (&[0, 1], 1)]));
        assert_eq!(gcd_bivariate(p, &a, &b, 0, 1).unwrap(), t1);
    }

    #[test]
    fn interpolation_roundtrip() {
        let k = FiniteField::new(3, 4).unwrap();
        let f = vec![1u32, 0, 2, 5, 7];
        let xs: Vec<u32> = (1..6).map(|i| k.exp(i)).collect();
        let ys: Vec<u32> = xs.iter().map(|&x| dense_eval(&k, &f, x)).collect();
        assert_eq!(interpolate(&k, &xs, &ys), f);
    }
}
