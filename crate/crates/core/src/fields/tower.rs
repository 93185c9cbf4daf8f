use super::{FResult, Field, FieldError};
use rand_chacha::ChaCha8Rng;

/// F[w]/(w² - c1·w - c0).
#[derive(Clone, Debug)]
pub struct QuadExt<F: Field> {
    pub base: F,
    pub c0: F::Elem,
    pub c1: F::Elem,
    pub name: String,
}

/// a + b·w
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem<E> {
    pub a: E,
    pub b: E,
}

/// Two quadratic steps over a base field.
pub type Tower2<F> = QuadExt<QuadExt<F>>;

impl<F: Field> QuadExt<F> {
    /// Checks that w² = c1·w + c0 has no root in the base.
    pub fn new(base: F, c0: F::Elem, c1: F::Elem, name: &str) -> FResult<Self> {
        if has_root(&base, &c0, &c1)? {
            return Err(FieldError::ReducibleExtension);
        }
        Ok(Self::new_unchecked(base, c0, c1, name))
    }

    pub fn new_unchecked(base: F, c0: F::Elem, c1: F::Elem, name: &str) -> Self {
        QuadExt { base, c0, c1, name: name.to_string() }
    }

    pub fn embed(&self, x: &F::Elem) -> QElem<F::Elem> {
        QElem { a: x.clone(), b: self.base.zero() }
    }

    pub fn w(&self) -> QElem<F::Elem> {
        QElem { a: self.base.zero(), b: self.base.one() }
    }

    pub fn elem(&self, a: F::Elem, b: F::Elem) -> QElem<F::Elem> {
        QElem { a, b }
    }

    /// Conjugate under w ↦ c1 - w.
    pub fn conj(&self, x: &QElem<F::Elem>) -> QElem<F::Elem> {
        let f = &self.base;
        QElem { a: f.add(&x.a, &f.mul(&x.b, &self.c1)), b: f.neg(&x.b) }
    }

    /// x·conj(x) = a² + ab·c1 − b²·c0.
    pub fn norm(&self, x: &QElem<F::Elem>) -> F::Elem {
        let f = &self.base;
        let t = f.add(&f.mul(&x.a, &x.a), &f.mul(&f.mul(&x.a, &x.b), &self.c1));
        f.sub(&t, &f.mul(&f.mul(&x.b, &x.b), &self.c0))
    }

    pub fn in_base(&self, x: &QElem<F::Elem>) -> Option<F::Elem> {
        self.base.is_zero(&x.b).then(|| x.a.clone())
    }
}

fn has_root<F: Field>(f: &F, c0: &F::Elem, c1: &F::Elem) -> FResult<bool> {
    // w² − c1 w − c0
    if let Some(all) = f.enumerate() {
        return Ok(all.iter().any(|w| {
            let v = f.sub(&f.sub(&f.mul(w, w), &f.mul(c1, w)), c0);
            f.is_zero(&v)
        }));
    }
    if f.is_zero(c1) {
        return Ok(f.sqrt(c0)?.is_some());
    }
    if f.characteristic() == 2 {
        // w = c1·z turns the equation into z² + z = c0/c1²
        let d = f.div(c0, &f.mul(c1, c1)).unwrap();
        return Ok(f.artin_schreier(&d)?.is_some());
    }
    let disc = f.add(&f.mul(c1, c1), &f.mul(&f.from_i64(4), c0));
    Ok(f.sqrt(&disc)?.is_some())
}

impl<F: Field> Field for QuadExt<F> {
    type Elem = QElem<F::Elem>;

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }
    fn zero(&self) -> Self::Elem {
        self.embed(&self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        QElem { a: self.base.add(&x.a, &y.a), b: self.base.add(&x.b, &y.b) }
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        QElem { a: self.base.neg(&x.a), b: self.base.neg(&x.b) }
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let ac = f.mul(&x.a, &y.a);
        let bd = f.mul(&x.b, &y.b);
        let cross = f.add(&f.mul(&x.a, &y.b), &f.mul(&x.b, &y.a));
        QElem { a: f.add(&ac, &f.mul(&bd, &self.c0)), b: f.add(&cross, &f.mul(&bd, &self.c1)) }
    }
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let n = self.norm(x);
        let ni = self.base.inv(&n)?;
        let c = self.conj(x);
        Some(QElem { a: self.base.mul(&c.a, &ni), b: self.base.mul(&c.b, &ni) })
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.base.is_zero(&x.a) && self.base.is_zero(&x.b)
    }
    fn gens(&self) -> Vec<Self::Elem> {
        let mut g: Vec<_> = self.base.gens().iter().map(|x| self.embed(x)).collect();
        g.push(self.w());
        g
    }
    fn gen_names(&self) -> Vec<String> {
        let mut g = self.base.gen_names();
        g.push(self.name.clone());
        g
    }

    fn eval_at<C: Field>(&self, x: &Self::Elem, images: &[C::Elem], cod: &C) -> Option<C::Elem> {
        let (base_imgs, w) = images.split_at(images.len() - 1);
        let a = self.base.eval_at(&x.a, base_imgs, cod)?;
        let b = self.base.eval_at(&x.b, base_imgs, cod)?;
        Some(cod.add(&a, &cod.mul(&b, &w[0])))
    }

    fn images_valid<C: Field>(&self, images: &[C::Elem], cod: &C) -> bool {
        if images.is_empty() {
            return false;
        }
        let (base_imgs, w) = images.split_at(images.len() - 1);
        if !self.base.images_valid(base_imgs, cod) {
            return false;
        }
        let (Some(c0), Some(c1)) =
            (self.base.eval_at(&self.c0, base_imgs, cod), self.base.eval_at(&self.c1, base_imgs, cod))
        else {
            return false;
        };
        let w = &w[0];
        let lhs = cod.mul(w, w);
        let rhs = cod.add(&cod.mul(&c1, w), &c0);
        lhs == rhs
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        QElem { a: self.base.sample(rng), b: self.base.sample(rng) }
    }

    fn render(&self, x: &Self::Elem) -> String {
        format!("({})+({})*{}", self.base.render(&x.a), self.base.render(&x.b), self.name)
    }

    fn describe(&self) -> String {
        format!(
            "{}[{}]/({}^2-({})*{}-({}))",
            self.base.describe(),
            self.name,
            self.name,
            self.base.render(&self.c1),
            self.name,
            self.base.render(&self.c0)
        )
    }

    /// Odd characteristic with w² = c0 only: (c + dw)² = a + bw forces
    /// c² = (a ± n)/2 where n² = a² − b²c0 is the norm.
    fn sqrt(&self, x: &Self::Elem) -> FResult<Option<Self::Elem>> {
        let f = &self.base;
        if f.characteristic() == 2 || !f.is_zero(&self.c1) {
            return Err(FieldError::Unsupported("square roots in this extension"));
        }
        if self.is_zero(x) {
            return Ok(Some(self.zero()));
        }
        let half = f.inv(&f.from_i64(2)).unwrap();
        if f.is_zero(&x.b) {
            if let Some(c) = f.sqrt(&x.a)? {
                return Ok(Some(self.embed(&c)));
            }
            let r = f.sqrt(&f.div(&x.a, &self.c0).unwrap())?;
            return Ok(r.map(|d| QElem { a: f.zero(), b: d }));
        }
        let Some(n) = f.sqrt(&self.norm(x))? else {
            return Ok(None);
        };
        for n in [n.clone(), f.neg(&n)] {
            let c2 = f.mul(&f.add(&x.a, &n), &half);
            if f.is_zero(&c2) {
                continue;
            }
            if let Some(c) = f.sqrt(&c2)? {
                let d = f.div(&f.mul(&x.b, &half), &c).unwrap();
                let r = QElem { a: c, b: d };
                debug_assert_eq!(self.mul(&r, &r), *x);
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        let all = self.base.enumerate()?;
        let mut out = Vec::with_capacity(all.len() * all.len());
        for a in &all {
            for b in &all {
                out.push(QElem { a: a.clone(), b: b.clone() });
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};
    use rand::SeedableRng;

    #[test]
    fn f4_as_extension_of_f2() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let k = QuadExt::new(f2, 1, 1, "w").unwrap();
        let all = k.enumerate().unwrap();
        assert_eq!(all.len(), 4);
        for x in &all {
            if !k.is_zero(x) {
                assert_eq!(k.mul(x, &k.inv(x).unwrap()), k.one());
                assert_eq!(k.pow(x, 3), k.one());
            }
        }
    }

    #[test]
    fn reducible_relation_rejected() {
        let f = FunctionField::new(3, &["s", "t"]).unwrap();
        let sq = f.square(&f.var(0));
        assert_eq!(QuadExt::new(f.clone(), sq, f.zero(), "a").unwrap_err(), FieldError::ReducibleExtension);
        assert!(QuadExt::new(f.clone(), f.var(0), f.zero(), "a").is_ok());
    }

    #[test]
    fn tower_inverse_and_norm() {
        let f = FunctionField::new(3, &["s", "t"]).unwrap();
        let k1 = QuadExt::new(f.clone(), f.var(0), f.zero(), "a").unwrap();
        let k2 = QuadExt::new(k1.clone(), k1.embed(&f.var(1)), k1.zero(), "b").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = k2.sample(&mut rng);
            if k2.is_zero(&x) {
                continue;
            }
            assert_eq!(k2.mul(&x, &k2.inv(&x).unwrap()), k2.one());
        }
    }
}
