use super::{GResult, GroupError};
use crate::fields::{Field, FieldError, MixedField, QElem, QuadExt};
use rand_chacha::ChaCha8Rng;

/// {x ∈ L^× : x·x^σ ∈ k} for L = ℓ(u), u² = u + δ, σ: u ↦ u + 1.
#[derive(Clone, Debug)]
pub struct MixedTorus<K: Field, L: Field> {
    pub mixed: MixedField<K, L>,
    pub ext: QuadExt<L>,
    pub delta: L::Elem,
}

pub fn mixed_torus<K: Field, L: Field>(m: &MixedField<K, L>, delta: &L::Elem) -> GResult<MixedTorus<K, L>> {
    let p = m.l.characteristic();
    if p != 2 {
        return Err(GroupError::Field(FieldError::WrongCharacteristic { expected: 2, found: p }));
    }
    let ext = QuadExt::new(m.l.clone(), delta.clone(), m.l.one(), "u").map_err(|e| match e {
        FieldError::ReducibleExtension => GroupError::ReducibleExtension,
        e => GroupError::Field(e),
    })?;
    Ok(MixedTorus { mixed: m.clone(), ext, delta: delta.clone() })
}

impl<K: Field, L: Field> MixedTorus<K, L> {
    pub fn u(&self) -> QElem<L::Elem> {
        self.ext.w()
    }

    pub fn norm(&self, x: &QElem<L::Elem>) -> L::Elem {
        self.ext.norm(x)
    }

    pub fn contains(&self, x: &QElem<L::Elem>) -> GResult<bool> {
        if self.ext.is_zero(x) {
            return Ok(false);
        }
        self.mixed.in_subimage(&self.norm(x)).map_err(|e| match e {
            FieldError::UnsupportedSubfield => GroupError::UnsupportedSubfield,
            e => GroupError::Field(e),
        })
    }

    pub fn multiply(&self, x: &QElem<L::Elem>, y: &QElem<L::Elem>) -> QElem<L::Elem> {
        self.ext.mul(x, y)
    }

    pub fn invert(&self, x: &QElem<L::Elem>) -> Option<QElem<L::Elem>> {
        self.ext.inv(x)
    }

    /// x ↦ (N(x), x/x^σ)
    pub fn isogeny1(&self, x: &QElem<L::Elem>) -> Option<(L::Elem, QElem<L::Elem>)> {
        Some((self.norm(x), self.ext.div(x, &self.ext.conj(x))?))
    }

    /// (s, v) ↦ s·v
    pub fn isogeny2(&self, s: &L::Elem, v: &QElem<L::Elem>) -> QElem<L::Elem> {
        self.ext.mul(&self.ext.embed(s), v)
    }

    /// Whether isogeny₂ ∘ isogeny₁ is x ↦ x² at x.
    pub fn composite_is_square(&self, x: &QElem<L::Elem>) -> bool {
        match self.isogeny1(x) {
            Some((s, v)) => self.isogeny2(&s, &v) == self.ext.mul(x, x),
            None => false,
        }
    }

    /// All members, when L is finite.
    pub fn members(&self) -> GResult<Option<Vec<QElem<L::Elem>>>> {
        let Some(all) = self.ext.enumerate() else {
            return Ok(None);
        };
        let mut out = vec![];
        for x in all {
            if self.contains(&x)? {
                out.push(x);
            }
        }
        Ok(Some(out))
    }

    /// c·z/z^σ with c ∈ ℓ^× (N(c) = c² ∈ k) and a norm-one factor, times u
    /// when N(u) = δ lies in k.
    pub fn sample_member(&self, rng: &mut ChaCha8Rng) -> GResult<QElem<L::Elem>> {
        let l = &self.mixed.l;
        let c = loop {
            let c = l.sample(rng);
            if !l.is_zero(&c) {
                break c;
            }
        };
        let z = loop {
            let z = self.ext.sample(rng);
            if !self.ext.is_zero(&z) {
                break z;
            }
        };
        let mut x = self.ext.mul(&self.ext.embed(&c), &self.ext.div(&z, &self.ext.conj(&z)).unwrap());
        if self.contains(&self.u())? && rand::Rng::gen_bool(rng, 0.5) {
            x = self.ext.mul(&x, &self.u());
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};
    use rand::SeedableRng;

    #[test]
    fn visible_f4_torus() {
        let f = FiniteField::new(2, 2).unwrap();
        let m = MixedField::visible(&f);
        let t = mixed_torus(&m, &f.u()).unwrap();
        let members = t.members().unwrap().unwrap();
        assert_eq!(members.len(), 15);
        for x in &members {
            assert!(t.composite_is_square(x));
            assert!(t.contains(&t.invert(x).unwrap()).unwrap());
            for y in &members {
                assert!(t.contains(&t.multiply(x, y)).unwrap());
            }
        }
        assert!(matches!(mixed_torus(&m, &f.zero()), Err(GroupError::ReducibleExtension)));
    }

    #[test]
    fn inseparable_torus() {
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let l: &FunctionField = &m.l;
        let (s, tt) = (l.var(0), l.var(1));
        let t = mixed_torus(&m, &tt).unwrap();
        assert_eq!(t.norm(&t.u()), tt);
        assert!(t.contains(&t.u()).unwrap());
        let x = t.ext.add(&t.u(), &t.ext.embed(&s));
        assert!(!t.contains(&x).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = t.sample_member(&mut rng).unwrap();
            assert!(t.contains(&x).unwrap());
            assert!(t.composite_is_square(&x));
        }
    }
}
