use super::poly::{self, Poly};
use super::{FResult, Field, FieldError, FiniteField, FunctionField, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// A homomorphism fixed by the images of the domain generators.
#[derive(Clone, Debug)]
pub struct FieldHom<D: Field, C: Field> {
    pub dom: D,
    pub cod: C,
    pub images: Vec<C::Elem>,
}

impl<D: Field, C: Field> FieldHom<D, C> {
    pub fn new(dom: D, cod: C, images: Vec<C::Elem>) -> FResult<Self> {
        let expected = dom.gens().len();
        if images.len() != expected {
            return Err(FieldError::WrongImageCount { expected, got: images.len() });
        }
        if !dom.images_valid(&images, &cod) {
            return Err(FieldError::InvalidImages);
        }
        Ok(FieldHom { dom, cod, images })
    }

    pub fn apply(&self, x: &D::Elem) -> C::Elem {
        self.dom
            .eval_at(x, &self.images, &self.cod)
            .expect("a field homomorphism cannot send a nonzero denominator to zero")
    }

    /// self ∘ f
    pub fn after<B: Field>(&self, f: &FieldHom<B, D>) -> FieldHom<B, C> {
        FieldHom { dom: f.dom.clone(), cod: self.cod.clone(), images: f.images.iter().map(|y| self.apply(y)).collect() }
    }
}

impl<F: Field> FieldHom<F, F> {
    pub fn identity(f: &F) -> Self {
        FieldHom { dom: f.clone(), cod: f.clone(), images: f.gens() }
    }

    pub fn frobenius(f: &F) -> Self {
        let images = f.gens().iter().map(|g| f.frobenius(g)).collect();
        FieldHom { dom: f.clone(), cod: f.clone(), images }
    }

    pub fn agrees_on_gens(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

/// A field with θ satisfying θ∘θ = Frobenius.
#[derive(Clone, Debug)]
pub struct BlendedField<F: Field> {
    pub field: F,
    pub theta: FieldHom<F, F>,
}

impl<F: Field> BlendedField<F> {
    pub fn new(field: F, theta_images: Vec<F::Elem>) -> FResult<Self> {
        let theta = FieldHom::new(field.clone(), field.clone(), theta_images)?;
        let names = field.gen_names();
        for (i, g) in field.gens().iter().enumerate() {
            if theta.apply(&theta.apply(g)) != field.frobenius(g) {
                return Err(FieldError::CompositionMismatch { side: "theta∘theta", generator: names[i].clone() });
            }
        }
        Ok(BlendedField { field, theta })
    }

    pub fn theta(&self, x: &F::Elem) -> F::Elem {
        self.theta.apply(x)
    }

    /// θ(θ(x)) = x^p on every element of a finite field (q ≤ 2^12) or on
    /// `samples` random elements otherwise. Returns the number checked.
    pub fn verify_square(&self, samples: usize, seed: u64) -> Result<usize, F::Elem> {
        let f = &self.field;
        let els = match f.enumerate() {
            Some(all) if all.len() <= 1 << 12 => all,
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples).map(|_| f.sample(&mut rng)).collect()
            }
        };
        for x in &els {
            if self.theta(&self.theta(x)) != f.frobenius(x) {
                return Err(x.clone());
            }
        }
        Ok(els.len())
    }
}

impl BlendedField<FiniteField> {
    /// θ^{-1}, which is a power of θ on a finite field.
    pub fn theta_inverse(&self) -> FieldHom<FiniteField, FiniteField> {
        let f = &self.field;
        let id = FieldHom::identity(f);
        let mut cur = self.theta.clone();
        let mut prev = id.clone();
        for _ in 0..2 * f.degree() + 2 {
            if cur.agrees_on_gens(&id) {
                return prev;
            }
            prev = cur.clone();
            cur = self.theta.after(&cur);
        }
        unreachable!("θ is an automorphism of a finite field")
    }
}

/// How the subfield κ(K) ⊂ L is recognized.
#[derive(Clone, Debug)]
pub enum Subfield {
    /// Common kernel of ∂/∂v for the listed generators of L.
    Derivations(Vec<usize>),
    /// Search the (finite) image of κ.
    Exhaustive,
    Undeclared,
}

/// Fields K, L with κ: K → L and λ: L → K composing to Frobenius both ways.
#[derive(Clone, Debug)]
pub struct MixedField<K: Field, L: Field> {
    pub k: K,
    pub l: L,
    pub kappa: FieldHom<K, L>,
    pub lambda: FieldHom<L, K>,
    pub subfield: Subfield,
}

impl<K: Field, L: Field> MixedField<K, L> {
    pub fn new(kappa: FieldHom<K, L>, lambda: FieldHom<L, K>) -> FResult<Self> {
        let (k, l) = (kappa.dom.clone(), kappa.cod.clone());
        let kn = k.gen_names();
        for (i, g) in k.gens().iter().enumerate() {
            if lambda.apply(&kappa.apply(g)) != k.frobenius(g) {
                return Err(FieldError::CompositionMismatch { side: "lambda∘kappa", generator: kn[i].clone() });
            }
        }
        let ln = l.gen_names();
        for (i, g) in l.gens().iter().enumerate() {
            if kappa.apply(&lambda.apply(g)) != l.frobenius(g) {
                return Err(FieldError::CompositionMismatch { side: "kappa∘lambda", generator: ln[i].clone() });
            }
        }
        let subfield = if l.enumerate().is_some() { Subfield::Exhaustive } else { Subfield::Undeclared };
        Ok(MixedField { k, l, kappa, lambda, subfield })
    }

    pub fn with_derivations(mut self, vars: Vec<usize>) -> Self {
        self.subfield = Subfield::Derivations(vars);
        self
    }

    pub fn kappa(&self, x: &K::Elem) -> L::Elem {
        self.kappa.apply(x)
    }
    pub fn lambda(&self, y: &L::Elem) -> K::Elem {
        self.lambda.apply(y)
    }

    /// Whether y lies in κ(K).
    pub fn in_subimage(&self, y: &L::Elem) -> FResult<bool> {
        match &self.subfield {
            Subfield::Derivations(vars) => Ok(vars.iter().all(|&v| {
                let d = self.l.partial(y, v).expect("declared derivation exists");
                self.l.is_zero(&d)
            })),
            Subfield::Exhaustive => {
                let all = self.k.enumerate().ok_or(FieldError::UnsupportedSubfield)?;
                Ok(all.iter().any(|x| self.kappa(x) == *y))
            }
            Subfield::Undeclared => Err(FieldError::UnsupportedSubfield),
        }
    }

    /// Visible iff λ is bijective; decided for finite fields by counting.
    pub fn is_visible(&self) -> FResult<bool> {
        bijective(&self.lambda)
    }

    pub fn is_antivisible(&self) -> FResult<bool> {
        bijective(&self.kappa)
    }
}

fn bijective<D: Field, C: Field>(h: &FieldHom<D, C>) -> FResult<bool> {
    match (h.dom.enumerate(), h.cod.enumerate()) {
        (Some(a), Some(b)) => Ok(a.len() == b.len()),
        _ => Err(FieldError::Undecidable("surjectivity of a map of infinite fields".into())),
    }
}

impl<F: Field> MixedField<F, F> {
    /// m(F) = (F, F, fr, id).
    pub fn visible(f: &F) -> Self {
        let kappa = FieldHom::frobenius(f);
        let lambda = FieldHom::identity(f);
        let subfield = if f.enumerate().is_some() { Subfield::Exhaustive } else { Subfield::Undeclared };
        MixedField { k: f.clone(), l: f.clone(), kappa, lambda, subfield }
    }
}

impl MixedField<FiniteField, FiniteField> {
    /// κ^{-1} on κ(K), tabulated.
    pub fn preimage_table(&self) -> HashMap<u32, u32> {
        (0..self.k.order()).map(|x| (self.kappa(&x), x)).collect()
    }
}

impl MixedField<FunctionField, FunctionField> {
    /// The mixed field k = F_p(a, t_1..) → ℓ = F_p(s, t_1..) with κ: a ↦ s^p,
    /// t_i ↦ t_i, and λ the Frobenius of ℓ. This is the orientation k ⊂ ℓ.
    pub fn inseparable(p: u64, small: &[&str], big: &[&str]) -> FResult<Self> {
        let k = FunctionField::new(p, small)?;
        let l = FunctionField::new(p, big)?;
        let pp = p as u32;
        let mut kimg = vec![Rat::from_poly(Poly::monomial(poly::mono_var(0, pp), 1))];
        kimg.extend((1..l.nvars()).map(|i| l.var(i)));
        let mut limg = vec![k.var(0)];
        limg.extend((1..k.nvars()).map(|i| Rat::from_poly(Poly::monomial(poly::mono_var(i, pp), 1))));
        let kappa = FieldHom::new(k, l.clone(), kimg)?;
        let lambda = FieldHom::new(l, kappa.dom.clone(), limg)?;
        Ok(MixedField::new(kappa, lambda)?.with_derivations(vec![0]))
    }

    /// κ^{-1}(y) for y in the subfield.
    pub fn preimage(&self, y: &Rat) -> Option<Rat> {
        monomial_preimage(&self.kappa, y)
    }
}

/// h^{-1}(y) when h sends each generator to a power of its own generator of
/// the codomain. Clears the denominator by a p-th power and substitutes back.
pub fn monomial_preimage(h: &FieldHom<FunctionField, FunctionField>, y: &Rat) -> Option<Rat> {
    let (dom, cod) = (&h.dom, &h.cod);
    let p = cod.p();
    let gens: Vec<(usize, u32)> = h
        .images
        .iter()
        .map(|img| {
            assert!(img.is_poly() && img.num.len() == 1 && img.num.lc() == 1, "monomial images required");
            let m = img.num.terms[0].0;
            let vars: Vec<usize> = (0..cod.nvars()).filter(|&v| poly::mono_exp(m, v) > 0).collect();
            assert_eq!(vars.len(), 1, "monomial images required");
            (vars[0], poly::mono_exp(m, vars[0]))
        })
        .collect();
    // y = n d^{p-1} / d^p
    let dp1 = poly::pow(p, &y.den, p - 1);
    let top = poly::mul(p, &y.num, &dp1);
    let bottom = poly::frobenius(p, &y.den);
    let pull = |a: &Poly| -> Option<Poly> {
        let mut t = Vec::with_capacity(a.len());
        for &(m, c) in &a.terms {
            let mut exps = vec![0u32; dom.nvars()];
            let mut used = 0;
            for (i, &(v, e)) in gens.iter().enumerate() {
                let x = poly::mono_exp(m, v);
                if x % e != 0 {
                    return None;
                }
                exps[i] = x / e;
                used += x;
            }
            let total: u32 = (0..cod.nvars()).map(|v| poly::mono_exp(m, v)).sum();
            if used != total {
                return None;
            }
            t.push((poly::mono_from_exps(&exps), c));
        }
        Some(Poly::from_terms(p, t))
    };
    let n = pull(&top)?;
    let d = pull(&bottom)?;
    let x = dom.normalize(n, d)?;
    (h.apply(&x) == *y).then_some(x)
}

/// Inverting κ and λ on their images.
pub trait Preimages<K: Field, L: Field> {
    fn kappa_preimage(&self, y: &L::Elem) -> Option<K::Elem>;
    fn lambda_preimage(&self, x: &K::Elem) -> Option<L::Elem>;
}

impl Preimages<FiniteField, FiniteField> for MixedField<FiniteField, FiniteField> {
    fn kappa_preimage(&self, y: &u32) -> Option<u32> {
        (0..self.k.order()).find(|x| self.kappa(x) == *y)
    }
    fn lambda_preimage(&self, x: &u32) -> Option<u32> {
        (0..self.l.order()).find(|y| self.lambda(y) == *x)
    }
}

impl Preimages<FunctionField, FunctionField> for MixedField<FunctionField, FunctionField> {
    fn kappa_preimage(&self, y: &Rat) -> Option<Rat> {
        monomial_preimage(&self.kappa, y)
    }
    fn lambda_preimage(&self, x: &Rat) -> Option<Rat> {
        monomial_preimage(&self.lambda, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_field_examples() {
        let k = FunctionField::new(2, &["s", "t"]).unwrap();
        let l = FunctionField::new(2, &["a", "b"]).unwrap();
        let sq = |f: &FunctionField, i: usize| f.square(&f.var(i));
        let kappa = FieldHom::new(k.clone(), l.clone(), vec![l.var(0), sq(&l, 1)]).unwrap();
        let lambda = FieldHom::new(l.clone(), k.clone(), vec![sq(&k, 0), k.var(1)]).unwrap();
        assert!(MixedField::new(kappa, lambda).is_ok());

        let kappa = FieldHom::new(k.clone(), l.clone(), vec![l.var(0), l.var(1)]).unwrap();
        let lambda = FieldHom::new(l.clone(), k.clone(), vec![k.var(0), k.var(1)]).unwrap();
        match MixedField::new(kappa, lambda) {
            Err(FieldError::CompositionMismatch { generator, .. }) => assert_eq!(generator, "s"),
            other => panic!("expected mismatch, got {other:?}"),
        }

        let f8 = FiniteField::new(2, 3).unwrap();
        let m = MixedField::visible(&f8);
        assert!(MixedField::new(m.kappa.clone(), m.lambda.clone()).is_ok());
        assert!(m.is_visible().unwrap());
        assert!(m.in_subimage(&5).unwrap());
    }

    #[test]
    fn subfield_membership_and_preimage() {
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let l = &m.l;
        let x = l.from_terms(&[(&[2, 1], 1), (&[0, 3], 1)]);
        assert!(m.in_subimage(&x).unwrap());
        assert!(!m.in_subimage(&l.var(0)).unwrap());
        let y = l.div(&x, &l.add(&l.var(1), &l.square(&l.var(0)))).unwrap();
        let pre = m.preimage(&y).unwrap();
        assert_eq!(m.kappa(&pre), y);
        assert_eq!(m.preimage(&l.var(0)), None);
    }

    #[test]
    fn tits_theta_inverse() {
        let f = FiniteField::new(2, 3).unwrap();
        let u = f.u();
        let b = BlendedField::new(f.clone(), vec![f.pow(&u, 4)]).unwrap();
        let ti = b.theta_inverse();
        for x in 0..8 {
            assert_eq!(ti.apply(&b.theta(&x)), x);
        }
    }
}
