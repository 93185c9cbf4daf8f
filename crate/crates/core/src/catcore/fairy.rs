use super::{CResult, CatError, Category, Extensive, Functor};

/// An object of the slice C/S: X with its structure map q_X.
pub type Over<O, A> = (O, A);

/// (f, n): X → Y with F_S^n ∘ q_X = q_Y ∘ f.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded<O, A> {
    pub dom: Over<O, A>,
    pub cod: Over<O, A>,
    pub f: A,
    pub grade: u32,
}

/// The fairy of S with hom-sets cut off at grade `bound`. Composition is
/// grade-additive and may exceed the bound; enumeration never does.
#[derive(Clone, Debug)]
pub struct Fairy<C: Category> {
    pub base: C,
    pub s: C::Obj,
    pub bound: u32,
    pub fragment: Vec<Over<C::Obj, C::Arr>>,
}

pub const DEFAULT_GRADE_BOUND: u32 = 3;

pub fn fairy<C: Extensive + Clone>(c: &C, s: &C::Obj, bound: u32, objs: &[C::Obj]) -> Fairy<C> {
    let mut fragment = Vec::new();
    for x in objs {
        for q in c.hom(x, s) {
            fragment.push((x.clone(), q));
        }
    }
    Fairy { base: c.clone(), s: s.clone(), bound, fragment }
}

impl<C: Category> Fairy<C> {
    /// F_S^n.
    pub fn frob_s(&self, n: u32) -> C::Arr {
        power(&self.base, &self.s, n)
    }

    pub fn arrow(&self, dom: &Over<C::Obj, C::Arr>, cod: &Over<C::Obj, C::Arr>, f: C::Arr, grade: u32) -> CResult<Graded<C::Obj, C::Arr>> {
        let b = &self.base;
        if grade > self.bound {
            return Err(CatError::GradeOverflow { got: grade, bound: self.bound });
        }
        if b.compose(&self.frob_s(grade), &dom.1) != b.compose(&cod.1, &f) {
            return Err(CatError::Invalid("semi-linear arrow"));
        }
        Ok(Graded { dom: dom.clone(), cod: cod.clone(), f, grade })
    }

    /// Composition that refuses to leave the grade bound.
    pub fn compose_bounded(&self, g: &Graded<C::Obj, C::Arr>, f: &Graded<C::Obj, C::Arr>) -> CResult<Graded<C::Obj, C::Arr>> {
        let got = f.grade + g.grade;
        if got > self.bound {
            return Err(CatError::GradeOverflow { got, bound: self.bound });
        }
        Ok(self.compose(g, f))
    }
}

fn power<C: Category>(c: &C, x: &C::Obj, n: u32) -> C::Arr {
    let fx = c.endo(x);
    (0..n).fold(c.id(x), |acc, _| c.compose(&fx, &acc))
}

impl<C: Category> Category for Fairy<C> {
    type Obj = Over<C::Obj, C::Arr>;
    type Arr = Graded<C::Obj, C::Arr>;

    fn objects(&self) -> Vec<Self::Obj> {
        self.fragment.clone()
    }
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr> {
        let b = &self.base;
        let maps = b.hom(&x.0, &y.0);
        let mut out = Vec::new();
        for n in 0..=self.bound {
            let lhs = b.compose(&self.frob_s(n), &x.1);
            for f in &maps {
                if b.compose(&y.1, f) == lhs {
                    out.push(Graded { dom: x.clone(), cod: y.clone(), f: f.clone(), grade: n });
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
        Graded { dom: x.clone(), cod: x.clone(), f: self.base.id(&x.0), grade: 0 }
    }
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr {
        Graded { dom: f.dom.clone(), cod: g.cod.clone(), f: self.base.compose(&g.f, &f.f), grade: f.grade + g.grade }
    }
    /// F_{X̄} = (F_X, 1).
    fn endo(&self, x: &Self::Obj) -> Self::Arr {
        Graded { dom: x.clone(), cod: x.clone(), f: self.base.endo(&x.0), grade: 1 }
    }
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        if f.grade != 0 {
            return None;
        }
        let g = self.base.inverse(&f.f)?;
        Some(Graded { dom: f.cod.clone(), cod: f.dom.clone(), f: g, grade: 0 })
    }
}

/// The factorization of (f, n+m) as ⟨f|m⟩ followed by the projection
/// (p₁, n) out of Y ×_{q_Y, F_S^n} S.
#[derive(Clone, Debug)]
pub struct Decomposition<O, A> {
    pub head: Graded<O, A>,
    pub projection: Graded<O, A>,
}

impl<C: Extensive> Fairy<C> {
    pub fn decompose(&self, a: &Graded<C::Obj, C::Arr>, m: u32) -> CResult<Decomposition<C::Obj, C::Arr>> {
        if m > a.grade {
            return Err(CatError::Invalid("split grade"));
        }
        let b = &self.base;
        let n = a.grade - m;
        if n == 0 {
            // pulling back along F_S^0 = id is identified with Y itself
            let y = a.cod.clone();
            return Ok(Decomposition { head: a.clone(), projection: self.id(&y) });
        }
        let fsn = self.frob_s(n);
        let (p, p1, p2) = b.pullback(&a.cod.1, &fsn).ok_or_else(|| CatError::MissingPullback("along F_S^n".into()))?;
        let pobj = (p, p2);
        let second = b.compose(&self.frob_s(m), &a.dom.1);
        let head_map = b.pullback_pair(&a.cod.1, &fsn, &a.f, &second);
        let head = Graded { dom: a.dom.clone(), cod: pobj.clone(), f: head_map, grade: m };
        let projection = Graded { dom: pobj, cod: a.cod.clone(), f: p1, grade: n };
        Ok(Decomposition { head, projection })
    }

    /// F_{X̄} = P_{X/S} ∘ F_{X/S}, with F_{X/S}: X → △X linear.
    pub fn relative_frobenius(&self, x: &Over<C::Obj, C::Arr>) -> CResult<Decomposition<C::Obj, C::Arr>> {
        self.decompose(&self.endo(x), 0)
    }
}

/// 𝖿_! for f: T → S, from the fairy over T to the fairy over S.
pub struct FairyPush<'a, C: Category> {
    pub f: C::Arr,
    pub over_t: &'a Fairy<C>,
    pub over_s: &'a Fairy<C>,
}

impl<'a, C: Extensive> Functor for FairyPush<'a, C> {
    type S = Fairy<C>;
    type T = Fairy<C>;
    fn name(&self) -> String {
        "f_!".into()
    }
    fn source(&self) -> &Fairy<C> {
        self.over_t
    }
    fn target(&self) -> &Fairy<C> {
        self.over_s
    }
    fn obj(&self, x: &Over<C::Obj, C::Arr>) -> CResult<Over<C::Obj, C::Arr>> {
        Ok((x.0.clone(), self.over_s.base.compose(&self.f, &x.1)))
    }
    fn arr(&self, g: &Graded<C::Obj, C::Arr>) -> CResult<Graded<C::Obj, C::Arr>> {
        Ok(Graded { dom: self.obj(&g.dom)?, cod: self.obj(&g.cod)?, f: g.f.clone(), grade: g.grade })
    }
}

/// 𝖿^* for f: T → S: U ↦ U ×_S T, and (g, n) ↦ the map induced by
/// g∘p₁ and F_T^n∘p₂, which keeps the grade.
pub struct FairyPull<'a, C: Category> {
    pub f: C::Arr,
    pub over_s: &'a Fairy<C>,
    pub over_t: &'a Fairy<C>,
}

impl<'a, C: Extensive> Functor for FairyPull<'a, C> {
    type S = Fairy<C>;
    type T = Fairy<C>;
    fn name(&self) -> String {
        "f^*".into()
    }
    fn source(&self) -> &Fairy<C> {
        self.over_s
    }
    fn target(&self) -> &Fairy<C> {
        self.over_t
    }
    fn obj(&self, u: &Over<C::Obj, C::Arr>) -> CResult<Over<C::Obj, C::Arr>> {
        let (p, _, p2) = self.over_s.base.pullback(&u.1, &self.f).ok_or_else(|| CatError::MissingPullback("U ×_S T".into()))?;
        Ok((p, p2))
    }
    fn arr(&self, g: &Graded<C::Obj, C::Arr>) -> CResult<Graded<C::Obj, C::Arr>> {
        let b = &self.over_s.base;
        let (_, p1, p2) = b.pullback(&g.dom.1, &self.f).ok_or_else(|| CatError::MissingPullback("U ×_S T".into()))?;
        let a = b.compose(&g.f, &p1);
        let t = b.compose(&self.over_t.frob_s(g.grade), &p2);
        let h = b.pullback_pair(&g.cod.1, &self.f, &a, &t);
        Ok(Graded { dom: self.obj(&g.dom)?, cod: self.obj(&g.cod)?, f: h, grade: g.grade })
    }
}

impl<'a, C: Extensive> FairyPull<'a, C> {
    /// Unit X → 𝖿^*𝖿_!X = X ×_S T, induced by (id, q_X).
    pub fn unit(&self, x: &Over<C::Obj, C::Arr>) -> CResult<Graded<C::Obj, C::Arr>> {
        let b = &self.over_s.base;
        let fq = b.compose(&self.f, &x.1);
        let h = b.pullback_pair(&fq, &self.f, &b.id(&x.0), &x.1);
        let cod = self.obj(&(x.0.clone(), fq))?;
        Ok(Graded { dom: x.clone(), cod, f: h, grade: 0 })
    }

    /// Counit 𝖿_!𝖿^*Y → Y, the first projection.
    pub fn counit(&self, y: &Over<C::Obj, C::Arr>) -> CResult<Graded<C::Obj, C::Arr>> {
        let b = &self.over_s.base;
        let (p, p1, p2) = b.pullback(&y.1, &self.f).ok_or_else(|| CatError::MissingPullback("Y ×_S T".into()))?;
        Ok(Graded { dom: (p, b.compose(&self.f, &p2)), cod: y.clone(), f: p1, grade: 0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{check_adjunction, check_functor_laws, dynsys_category, DArr, Dyn, Units};

    fn setup() -> (crate::catcore::DynSys, Dyn, Dyn, DArr) {
        let c = dynsys_category(2).unwrap();
        let s = Dyn::new(vec![0, 0]).unwrap();
        let t = Dyn::new(vec![0, 0, 2]).unwrap();
        let f = DArr::new(&t, &s, vec![0, 1, 0]).unwrap();
        (c, s, t, f)
    }

    #[test]
    fn grades_add_and_overflow_is_reported() {
        let (c, s, _, _) = setup();
        let fa = fairy(&c, &s, 3, &c.objects());
        let x = fa.fragment[0].clone();
        let one = fa.endo(&x);
        let two = fa.compose(&one, &one);
        assert_eq!(fa.compose(&two, &one).grade, 3);
        assert!(fa.compose_bounded(&two, &two).is_err());
    }

    #[test]
    fn decomposition_recovers_the_arrow() {
        let (c, s, _, _) = setup();
        let fa = fairy(&c, &s, 3, &c.objects());
        for x in fa.objects() {
            for y in fa.objects() {
                for a in fa.hom(&x, &y) {
                    let d0 = fa.decompose(&a, a.grade).unwrap();
                    assert_eq!(d0.head, a);
                    for m in 0..=a.grade {
                        let d = fa.decompose(&a, m).unwrap();
                        assert_eq!(d.head.grade, m);
                        assert_eq!(fa.compose(&d.projection, &d.head), a);
                        let p = d.head.cod.clone();
                        let lifts = fa
                            .hom(&x, &p)
                            .into_iter()
                            .filter(|h| h.grade == m && fa.compose(&d.projection, h) == a)
                            .count();
                        assert_eq!(lifts, 1);
                    }
                }
            }
            let rf = fa.relative_frobenius(&x).unwrap();
            assert_eq!(rf.head.grade, 0);
            assert_eq!(rf.projection.grade, 1);
            assert_eq!(fa.compose(&rf.projection, &rf.head), fa.endo(&x));
        }
    }

    #[test]
    fn extension_functors_and_adjunction() {
        let (c, s, t, f) = setup();
        let objs = c.objects();
        let over_s = fairy(&c, &s, 2, &objs);
        let over_t = fairy(&c, &t, 2, &objs);
        let push = FairyPush { f: f.clone(), over_t: &over_t, over_s: &over_s };
        let pull = FairyPull { f: f.clone(), over_s: &over_s, over_t: &over_t };
        assert!(check_functor_laws(&push, &over_t.objects()).passed());
        let v = check_functor_laws(&pull, &over_s.objects());
        assert!(v.passed(), "{}", v.line());
        for u in over_s.objects() {
            for v in over_s.objects() {
                for g in over_s.hom(&u, &v) {
                    assert_eq!(pull.arr(&g).unwrap().grade, g.grade);
                }
            }
        }
        let unit = |x: &Over<Dyn, DArr>| pull.unit(x);
        let counit = |y: &Over<Dyn, DArr>| pull.counit(y);
        let v = check_adjunction(
            &push,
            &pull,
            &over_t.objects(),
            &over_s.objects(),
            Some(Units { unit: &unit, counit: &counit }),
        );
        assert!(v.passed(), "{}", v.line());
        assert!(v.checked > 0);
    }
}
