use super::{CResult, CatError, Category, Extensive};

/// (X, Φ) with Φ∘Φ = F_X.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TObj<O, A> {
    pub x: O,
    pub phi: A,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TArr<O, A> {
    pub dom: TObj<O, A>,
    pub cod: TObj<O, A>,
    pub f: A,
}

/// (X₁, X₂, Φ₁: X₁→X₂, Φ₂: X₂→X₁) with Φ₂∘Φ₁ = F_{X₁} and Φ₁∘Φ₂ = F_{X₂}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MObj<O, A> {
    pub x1: O,
    pub x2: O,
    pub phi1: A,
    pub phi2: A,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MArr<O, A> {
    pub dom: MObj<O, A>,
    pub cod: MObj<O, A>,
    pub f1: A,
    pub f2: A,
}

pub type TObjOf<C> = TObj<<C as Category>::Obj, <C as Category>::Arr>;
pub type TArrOf<C> = TArr<<C as Category>::Obj, <C as Category>::Arr>;
pub type MObjOf<C> = MObj<<C as Category>::Obj, <C as Category>::Arr>;
pub type MArrOf<C> = MArr<<C as Category>::Obj, <C as Category>::Arr>;

/// The twisted category tC; its own F is the twister.
#[derive(Clone, Debug)]
pub struct Twisted<C> {
    pub base: C,
}

pub fn twisted_category<C: Category + Clone>(c: &C) -> Twisted<C> {
    Twisted { base: c.clone() }
}

impl<C: Category> Twisted<C> {
    pub fn twisters(&self, x: &C::Obj) -> Vec<C::Arr> {
        let fx = self.base.endo(x);
        self.base.hom(x, x).into_iter().filter(|p| self.base.compose(p, p) == fx).collect()
    }

    pub fn object(&self, x: C::Obj, phi: C::Arr) -> CResult<TObjOf<C>> {
        let ok = self.base.dom(&phi) == x && self.base.cod(&phi) == x && self.base.compose(&phi, &phi) == self.base.endo(&x);
        if !ok {
            return Err(CatError::Invalid("twisted object"));
        }
        Ok(TObj { x, phi })
    }

    /// The arrow of tC carried by f, if f commutes with the twisters.
    pub fn arrow(&self, dom: &TObjOf<C>, cod: &TObjOf<C>, f: C::Arr) -> Option<TArrOf<C>> {
        let b = &self.base;
        (b.compose(&cod.phi, &f) == b.compose(&f, &dom.phi)).then(|| TArr { dom: dom.clone(), cod: cod.clone(), f })
    }
}

impl<C: Category> Category for Twisted<C> {
    type Obj = TObjOf<C>;
    type Arr = TArrOf<C>;

    fn objects(&self) -> Vec<Self::Obj> {
        let mut out = Vec::new();
        for x in self.base.objects() {
            for phi in self.twisters(&x) {
                out.push(TObj { x: x.clone(), phi });
            }
        }
        out
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr> {
        self.base.hom(&x.x, &y.x).into_iter().filter_map(|f| self.arrow(x, y, f)).collect()
    }
    fn dom(&self, f: &Self::Arr) -> Self::Obj {
        f.dom.clone()
    }
    fn cod(&self, f: &Self::Arr) -> Self::Obj {
        f.cod.clone()
    }
    fn id(&self, x: &Self::Obj) -> Self::Arr {
        TArr { dom: x.clone(), cod: x.clone(), f: self.base.id(&x.x) }
    }
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr {
        TArr { dom: f.dom.clone(), cod: g.cod.clone(), f: self.base.compose(&g.f, &f.f) }
    }
    fn endo(&self, x: &Self::Obj) -> Self::Arr {
        TArr { dom: x.clone(), cod: x.clone(), f: x.phi.clone() }
    }
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let g = self.base.inverse(&f.f)?;
        Some(TArr { dom: f.cod.clone(), cod: f.dom.clone(), f: g })
    }
}

/// The mixed category mC; its F is (F_{X₁}, F_{X₂}).
#[derive(Clone, Debug)]
pub struct Mixed<C> {
    pub base: C,
}

pub fn mixed_category<C: Category + Clone>(c: &C) -> Mixed<C> {
    Mixed { base: c.clone() }
}

impl<C: Category> Mixed<C> {
    pub fn object(&self, x1: C::Obj, x2: C::Obj, phi1: C::Arr, phi2: C::Arr) -> CResult<MObjOf<C>> {
        let b = &self.base;
        let typed = b.dom(&phi1) == x1 && b.cod(&phi1) == x2 && b.dom(&phi2) == x2 && b.cod(&phi2) == x1;
        if !typed || b.compose(&phi2, &phi1) != b.endo(&x1) || b.compose(&phi1, &phi2) != b.endo(&x2) {
            return Err(CatError::Invalid("mixed object"));
        }
        Ok(MObj { x1, x2, phi1, phi2 })
    }

    pub fn is_arrow(&self, dom: &MObjOf<C>, cod: &MObjOf<C>, f1: &C::Arr, f2: &C::Arr) -> bool {
        let b = &self.base;
        b.compose(&cod.phi1, f1) == b.compose(f2, &dom.phi1) && b.compose(&cod.phi2, f2) == b.compose(f1, &dom.phi2)
    }

    /// All mixed objects whose components come from `objs`.
    pub fn objects_over(&self, objs: &[C::Obj]) -> Vec<MObjOf<C>> {
        let b = &self.base;
        let mut out = Vec::new();
        for x1 in objs {
            let f1 = b.endo(x1);
            for x2 in objs {
                let f2 = b.endo(x2);
                let back = b.hom(x2, x1);
                for p1 in b.hom(x1, x2) {
                    for p2 in &back {
                        if b.compose(p2, &p1) == f1 && b.compose(&p1, p2) == f2 {
                            out.push(MObj { x1: x1.clone(), x2: x2.clone(), phi1: p1.clone(), phi2: p2.clone() });
                        }
                    }
                }
            }
        }
        out
    }

    /// Φ₂ invertible.
    pub fn is_visible(&self, x: &MObjOf<C>) -> bool {
        self.base.is_iso(&x.phi2)
    }

    /// Φ₁ invertible.
    pub fn is_antivisible(&self, x: &MObjOf<C>) -> bool {
        self.base.is_iso(&x.phi1)
    }
}

impl<C: Category> Category for Mixed<C> {
    type Obj = MObjOf<C>;
    type Arr = MArrOf<C>;

    fn objects(&self) -> Vec<Self::Obj> {
        self.objects_over(&self.base.objects())
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr> {
        let h2 = self.base.hom(&x.x2, &y.x2);
        if h2.is_empty() {
            return vec![];
        }
        let mut out = Vec::new();
        for f1 in self.base.hom(&x.x1, &y.x1) {
            // f₂∘Φ_{X₁} is pinned by f₁, which prunes most candidates
            let target = self.base.compose(&y.phi1, &f1);
            let back = self.base.compose(&f1, &x.phi2);
            for f2 in &h2 {
                if self.base.compose(f2, &x.phi1) == target && self.base.compose(&y.phi2, f2) == back {
                    out.push(MArr { dom: x.clone(), cod: y.clone(), f1: f1.clone(), f2: f2.clone() });
                }
            }
        }
        out
    }
    fn dom(&self, f: &Self::Arr) -> Self::Obj {
        f.dom.clone()
    }
    fn cod(&self, f: &Self::Arr) -> Self::Obj {
        f.cod.clone()
    }
    fn id(&self, x: &Self::Obj) -> Self::Arr {
        MArr { dom: x.clone(), cod: x.clone(), f1: self.base.id(&x.x1), f2: self.base.id(&x.x2) }
    }
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr {
        MArr {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            f1: self.base.compose(&g.f1, &f.f1),
            f2: self.base.compose(&g.f2, &f.f2),
        }
    }
    fn endo(&self, x: &Self::Obj) -> Self::Arr {
        MArr { dom: x.clone(), cod: x.clone(), f1: self.base.endo(&x.x1), f2: self.base.endo(&x.x2) }
    }
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let g1 = self.base.inverse(&f.f1)?;
        let g2 = self.base.inverse(&f.f2)?;
        Some(MArr { dom: f.cod.clone(), cod: f.dom.clone(), f1: g1, f2: g2 })
    }
    fn find_iso(&self, x: &Self::Obj, y: &Self::Obj) -> Option<Self::Arr> {
        let b = &self.base;
        b.find_iso(&x.x1, &y.x1)?;
        b.find_iso(&x.x2, &y.x2)?;
        let h2: Vec<C::Arr> = b.hom(&x.x2, &y.x2).into_iter().filter(|f| b.is_iso(f)).collect();
        for f1 in b.hom(&x.x1, &y.x1).into_iter().filter(|f| b.is_iso(f)) {
            for f2 in &h2 {
                if self.is_arrow(x, y, &f1, f2) {
                    return Some(MArr { dom: x.clone(), cod: y.clone(), f1, f2: f2.clone() });
                }
            }
        }
        None
    }
}

/// The slice category K/S.
#[derive(Clone, Debug)]
pub struct Slice<K: Category> {
    pub base: K,
    pub over: K::Obj,
    /// Objects quantified over in `objects`.
    pub fragment: Vec<(K::Obj, K::Arr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SArr<O, A> {
    pub dom: (O, A),
    pub cod: (O, A),
    pub f: A,
}

impl<K: Category> Slice<K> {
    /// All structure maps x → S for x in `objs`.
    pub fn over_objects(base: K, over: K::Obj, objs: &[K::Obj]) -> Self {
        let mut fragment = Vec::new();
        for x in objs {
            for q in base.hom(x, &over) {
                fragment.push((x.clone(), q));
            }
        }
        Slice { base, over, fragment }
    }
}

impl<K: Category> Category for Slice<K> {
    type Obj = (K::Obj, K::Arr);
    type Arr = SArr<K::Obj, K::Arr>;

    fn objects(&self) -> Vec<Self::Obj> {
        self.fragment.clone()
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr> {
        self.base
            .hom(&x.0, &y.0)
            .into_iter()
            .filter(|f| self.base.compose(&y.1, f) == x.1)
            .map(|f| SArr { dom: x.clone(), cod: y.clone(), f })
            .collect()
    }
    fn dom(&self, f: &Self::Arr) -> Self::Obj {
        f.dom.clone()
    }
    fn cod(&self, f: &Self::Arr) -> Self::Obj {
        f.cod.clone()
    }
    fn id(&self, x: &Self::Obj) -> Self::Arr {
        SArr { dom: x.clone(), cod: x.clone(), f: self.base.id(&x.0) }
    }
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr {
        SArr { dom: f.dom.clone(), cod: g.cod.clone(), f: self.base.compose(&g.f, &f.f) }
    }
    fn endo(&self, x: &Self::Obj) -> Self::Arr {
        SArr { dom: x.clone(), cod: x.clone(), f: self.base.endo(&x.0) }
    }
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let g = self.base.inverse(&f.f)?;
        Some(SArr { dom: f.cod.clone(), cod: f.dom.clone(), f: g })
    }
}

/// The twisted object E = (1 ⊔ 1, swap).
pub fn object_e<C: Extensive>(c: &C) -> CResult<TObjOf<C>> {
    let one = c.terminal();
    let (two, i1, i2) = c.coproduct(&one, &one).ok_or_else(|| CatError::MissingLimit("1 ⊔ 1".into()))?;
    let swap = c.copair(&i2, &i1);
    debug_assert_eq!(c.cod(&swap), two);
    Ok(TObj { x: two, phi: swap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{dynsys_category, DArr, Dyn};

    #[test]
    fn swap_has_no_twister_and_identity_has_two() {
        let c = dynsys_category(2).unwrap();
        let t = twisted_category(&c);
        let swap = Dyn::new(vec![1, 0]).unwrap();
        assert!(t.twisters(&swap).is_empty());
        let id2 = Dyn::identity(2);
        let maps: Vec<Vec<u8>> = t.twisters(&id2).into_iter().map(|a| a.map).collect();
        assert_eq!(maps, vec![vec![0, 1], vec![1, 0]]);
        let one = Dyn::identity(1);
        assert_eq!(t.twisters(&one).len(), 1);
    }

    #[test]
    fn mixed_objects_on_dynsys2() {
        let c = dynsys_category(2).unwrap();
        let m = mixed_category(&c);
        let id2 = Dyn::identity(2);
        let swap = DArr::new(&id2, &id2, vec![1, 0]).unwrap();
        assert!(m.object(id2.clone(), id2.clone(), swap.clone(), swap.clone()).is_ok());
        let bad = m.object(id2.clone(), id2.clone(), swap.clone(), c.id(&id2));
        assert_eq!(bad.unwrap_err(), CatError::Invalid("mixed object"));
        for x in c.objects() {
            assert!(m.object(x.clone(), x.clone(), c.endo(&x), c.id(&x)).is_ok());
        }
    }

    #[test]
    fn e_is_the_swap() {
        let c = dynsys_category(2).unwrap();
        let e = object_e(&c).unwrap();
        assert_eq!(e.x, Dyn::identity(2));
        assert_eq!(e.phi.map, vec![1, 0]);
    }
}
