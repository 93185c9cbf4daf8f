use super::groebner::{groebner, normal_form};
use super::mpoly::{MPoly, PolyRing, TermOrder};
use super::{AResult, AlgError, DEFAULT_DEGREE_CAP};
use crate::fields::{Field, FieldHom};

/// F[gens]/(relations), with the reduced Gröbner basis computed once.
#[derive(Clone, Debug)]
pub struct PresAlgebra<F: Field> {
    pub ring: PolyRing<F>,
    pub relations: Vec<MPoly<F::Elem>>,
    pub basis: Vec<MPoly<F::Elem>>,
}

impl<F: Field> PresAlgebra<F> {
    pub fn new(field: F, gens: &[&str], relations: Vec<MPoly<F::Elem>>) -> AResult<Self> {
        Self::with_order(field, gens, relations, TermOrder::default(), DEFAULT_DEGREE_CAP)
    }

    pub fn with_order(field: F, gens: &[&str], relations: Vec<MPoly<F::Elem>>, order: TermOrder, cap: u32) -> AResult<Self> {
        Self::from_ring(PolyRing::new(field, gens, order), relations, cap)
    }

    pub fn from_ring(ring: PolyRing<F>, relations: Vec<MPoly<F::Elem>>, cap: u32) -> AResult<Self> {
        let basis = groebner(&ring, &relations, cap)?;
        Ok(PresAlgebra { ring, relations, basis })
    }

    /// The polynomial ring itself.
    pub fn free(field: F, gens: &[&str]) -> Self {
        PresAlgebra { ring: PolyRing::new(field, gens, TermOrder::default()), relations: vec![], basis: vec![] }
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn ngens(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gen(&self, i: usize) -> MPoly<F::Elem> {
        self.ring.var(i)
    }

    pub fn normal_form(&self, f: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        normal_form(&self.ring, f, &self.basis)
    }

    pub fn is_zero(&self, f: &MPoly<F::Elem>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn equal(&self, f: &MPoly<F::Elem>, g: &MPoly<F::Elem>) -> bool {
        self.is_zero(&self.ring.sub(f, g))
    }

    /// Whether the F-point `pt` lies on the variety of the relations.
    pub fn point_satisfies(&self, pt: &[F::Elem]) -> bool {
        let f = self.field();
        self.relations.iter().all(|r| f.is_zero(&self.ring.eval(r, pt)))
    }

    pub fn render(&self, f: &MPoly<F::Elem>) -> String {
        self.ring.render(f)
    }

    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| self.render(r)).collect();
        format!("{}[{}]/({})", self.field().describe(), self.ring.names.join(","), rels.join(", "))
    }
}

/// A ring map D-algebra → C-algebra, semi-linear along `coeff`.
#[derive(Clone, Debug)]
pub struct AlgHom<D: Field, C: Field> {
    pub dom: PresAlgebra<D>,
    pub cod: PresAlgebra<C>,
    pub images: Vec<MPoly<C::Elem>>,
    pub coeff: FieldHom<D, C>,
}

impl<D: Field, C: Field> AlgHom<D, C> {
    /// Validates that every relation of the domain maps to zero.
    pub fn new(dom: PresAlgebra<D>, cod: PresAlgebra<C>, images: Vec<MPoly<C::Elem>>, coeff: FieldHom<D, C>) -> AResult<Self> {
        if images.len() != dom.ngens() {
            return Err(AlgError::WrongImageCount { expected: dom.ngens(), got: images.len() });
        }
        let h = AlgHom { dom, cod, images, coeff };
        h.hom_check()?;
        Ok(h)
    }

    pub fn hom_check(&self) -> AResult<()> {
        for r in &self.dom.relations {
            if !self.cod.is_zero(&self.apply_raw(r)) {
                return Err(AlgError::RelationNotPreserved { relation: self.dom.render(r) });
            }
        }
        Ok(())
    }

    fn apply_raw(&self, f: &MPoly<D::Elem>) -> MPoly<C::Elem> {
        self.dom.ring.substitute(f, &self.cod.ring, &|c| self.coeff.apply(c), &self.images)
    }

    /// Image of f, in normal form.
    pub fn apply(&self, f: &MPoly<D::Elem>) -> MPoly<C::Elem> {
        self.cod.normal_form(&self.apply_raw(f))
    }

    /// self ∘ g
    pub fn after<B: Field>(&self, g: &AlgHom<B, D>) -> AlgHom<B, C> {
        AlgHom {
            dom: g.dom.clone(),
            cod: self.cod.clone(),
            images: g.images.iter().map(|y| self.apply(y)).collect(),
            coeff: self.coeff.after(&g.coeff),
        }
    }

    /// Generators whose image under `self` differs from `other` modulo the
    /// codomain ideal.
    pub fn differs_on(&self, other: &AlgHom<D, C>) -> Option<usize> {
        (0..self.dom.ngens()).find(|&i| !self.cod.equal(&self.images[i], &other.images[i]))
    }
}

impl<F: Field> AlgHom<F, F> {
    pub fn identity(a: &PresAlgebra<F>) -> Self {
        let images = (0..a.ngens()).map(|i| a.gen(i)).collect();
        AlgHom { dom: a.clone(), cod: a.clone(), images, coeff: FieldHom::identity(a.field()) }
    }

    /// The absolute Frobenius f ↦ f^p.
    pub fn frobenius(a: &PresAlgebra<F>) -> Self {
        let p = a.field().characteristic() as u64;
        let images = (0..a.ngens()).map(|i| a.ring.pow(&a.gen(i), p)).collect();
        AlgHom { dom: a.clone(), cod: a.clone(), images, coeff: FieldHom::frobenius(a.field()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;
    use proptest::prelude::*;

    fn parabola() -> PresAlgebra<FiniteField> {
        let f = FiniteField::new(2, 1).unwrap();
        let r = PolyRing::new(f.clone(), &["x", "y"], TermOrder::GrevLex);
        let rel = r.sub(&r.var(1), &r.pow(&r.var(0), 2));
        PresAlgebra::new(f, &["x", "y"], vec![rel]).unwrap()
    }

    #[test]
    fn relation_check() {
        let a = parabola();
        let f = a.field().clone();
        let line = PresAlgebra::free(f.clone(), &["t"]);
        let t = line.gen(0);
        let ok = AlgHom::new(a.clone(), line.clone(), vec![t.clone(), line.ring.pow(&t, 2)], FieldHom::identity(&f));
        assert!(ok.is_ok());
        let bad = AlgHom::new(a, line.clone(), vec![t.clone(), t], FieldHom::identity(&f));
        assert!(matches!(bad, Err(AlgError::RelationNotPreserved { .. })));
    }

    #[test]
    fn frobenius_respects_relations() {
        let a = parabola();
        let fr = AlgHom::frobenius(&a);
        assert!(fr.hom_check().is_ok());
        let id = AlgHom::identity(&a);
        assert!(fr.after(&id).differs_on(&fr).is_none());
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent(cs in proptest::collection::vec((0u32..5, 0u32..5, 0u32..2), 0..8)) {
            let a = parabola();
            let mut f = MPoly::zero();
            for (i, j, c) in cs {
                f = a.ring.add(&f, &a.ring.monomial(vec![i, j], c));
            }
            let nf = a.normal_form(&f);
            prop_assert_eq!(a.normal_form(&nf), nf.clone());
            prop_assert!(a.equal(&f, &nf));
            for r in &a.relations {
                prop_assert!(a.is_zero(r));
            }
        }

        #[test]
        fn composites_of_valid_homs_are_valid(e in 1u32..4) {
            let a = parabola();
            let f = a.field().clone();
            let line = PresAlgebra::free(f.clone(), &["t"]);
            let t = line.ring.pow(&line.gen(0), e as u64);
            let h = AlgHom::new(a.clone(), line.clone(), vec![t.clone(), line.ring.pow(&t, 2)], FieldHom::identity(&f)).unwrap();
            let g = AlgHom::frobenius(&a);
            prop_assert!(h.after(&g).hom_check().is_ok());
        }
    }
}
