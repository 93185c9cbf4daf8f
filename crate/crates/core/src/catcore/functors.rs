use super::{CResult, CatError, Category, Extensive, MArr, MObj, Mixed, SArr, Slice, TArr, TObj, TObjOf, Twisted};

/// A functor given by its action on objects and arrows.
pub trait Functor {
    type S: Category;
    type T: Category;
    fn name(&self) -> String;
    fn source(&self) -> &Self::S;
    fn target(&self) -> &Self::T;
    fn obj(&self, x: &<Self::S as Category>::Obj) -> CResult<<Self::T as Category>::Obj>;
    fn arr(&self, f: &<Self::S as Category>::Arr) -> CResult<<Self::T as Category>::Arr>;
}

/// The categories C, tC, mC over one base, with the nine standard functors.
#[derive(Clone, Debug)]
pub struct Standard<C: Category> {
    pub c: C,
    pub t: Twisted<C>,
    pub m: Mixed<C>,
}

pub fn standard_functors<C: Category + Clone>(c: &C) -> Standard<C> {
    Standard { c: c.clone(), t: Twisted { base: c.clone() }, m: Mixed { base: c.clone() } }
}

pub const FUNCTOR_NAMES: [&str; 9] = ["f", "delta_!", "delta_*", "delta^*", "tau^*", "comp_1", "comp_2", "m", "mbar"];

macro_rules! functor {
    ($ty:ident, $s:ident, $t:ident, $name:expr, |$me:ident, $x:ident| $obj:expr, |$me2:ident, $f:ident| $arr:expr) => {
        pub struct $ty<'a, C: Category>(pub &'a Standard<C>);
        impl<'a, C: Extensive> Functor for $ty<'a, C> {
            type S = functor!(@cat C, $s);
            type T = functor!(@cat C, $t);
            fn name(&self) -> String {
                $name.to_string()
            }
            fn source(&self) -> &Self::S {
                &self.0.$s
            }
            fn target(&self) -> &Self::T {
                &self.0.$t
            }
            #[allow(unused_variables)]
            fn obj(&self, $x: &<Self::S as Category>::Obj) -> CResult<<Self::T as Category>::Obj> {
                let $me = self.0;
                $obj
            }
            #[allow(unused_variables)]
            fn arr(&self, $f: &<Self::S as Category>::Arr) -> CResult<<Self::T as Category>::Arr> {
                let $me2 = self.0;
                $arr
            }
        }
    };
    (@cat $C:ident, c) => { $C };
    (@cat $C:ident, t) => { Twisted<$C> };
    (@cat $C:ident, m) => { Mixed<$C> };
}

fn coproduct<C: Extensive>(c: &C, x: &C::Obj, y: &C::Obj) -> CResult<(C::Obj, C::Arr, C::Arr)> {
    c.coproduct(x, y).ok_or_else(|| CatError::MissingLimit("binary coproduct".into()))
}

fn product<C: Extensive>(c: &C, x: &C::Obj, y: &C::Obj) -> CResult<(C::Obj, C::Arr, C::Arr)> {
    c.product(x, y).ok_or_else(|| CatError::MissingLimit("binary product".into()))
}

/// δ_! on objects: (X₁ ⊔ X₂, Φ₁ ⊔ Φ₂) with the summands swapped.
pub fn mist_left_obj<C: Extensive>(c: &C, x: &MObj<C::Obj, C::Arr>) -> CResult<TObjOf<C>> {
    let (s, i1, i2) = coproduct(c, &x.x1, &x.x2)?;
    let phi = c.copair(&c.compose(&i2, &x.phi1), &c.compose(&i1, &x.phi2));
    Ok(TObj { x: s, phi })
}

pub fn mist_right_obj<C: Extensive>(c: &C, x: &MObj<C::Obj, C::Arr>) -> CResult<TObjOf<C>> {
    let (p, p1, p2) = product(c, &x.x1, &x.x2)?;
    let phi = c.pair(&c.compose(&x.phi2, &p2), &c.compose(&x.phi1, &p1));
    Ok(TObj { x: p, phi })
}

functor!(Untwist, t, c, "f", |s, x| Ok(x.x.clone()), |s2, f| Ok(f.f.clone()));

functor!(MistLeft, m, t, "delta_!", |s, x| mist_left_obj(&s.c, x), |s2, f| {
    let c = &s2.c;
    let (dom, cod) = (mist_left_obj(c, &f.dom)?, mist_left_obj(c, &f.cod)?);
    let (_, j1, j2) = coproduct(c, &f.cod.x1, &f.cod.x2)?;
    Ok(TArr { dom, cod, f: c.copair(&c.compose(&j1, &f.f1), &c.compose(&j2, &f.f2)) })
});

functor!(MistRight, m, t, "delta_*", |s, x| mist_right_obj(&s.c, x), |s2, f| {
    let c = &s2.c;
    let (dom, cod) = (mist_right_obj(c, &f.dom)?, mist_right_obj(c, &f.cod)?);
    let (_, p1, p2) = product(c, &f.dom.x1, &f.dom.x2)?;
    Ok(TArr { dom, cod, f: c.pair(&c.compose(&f.f1, &p1), &c.compose(&f.f2, &p2)) })
});

functor!(
    Twix,
    t,
    m,
    "delta^*",
    |s, x| Ok(MObj { x1: x.x.clone(), x2: x.x.clone(), phi1: x.phi.clone(), phi2: x.phi.clone() }),
    |s2, f| {
        let tw = |y: &TObj<C::Obj, C::Arr>| MObj { x1: y.x.clone(), x2: y.x.clone(), phi1: y.phi.clone(), phi2: y.phi.clone() };
        Ok(MArr { dom: tw(&f.dom), cod: tw(&f.cod), f1: f.f.clone(), f2: f.f.clone() })
    }
);

/// τ* on objects: swap the two components.
pub fn tau_obj<O: Clone, A: Clone>(x: &MObj<O, A>) -> MObj<O, A> {
    MObj { x1: x.x2.clone(), x2: x.x1.clone(), phi1: x.phi2.clone(), phi2: x.phi1.clone() }
}

pub fn tau_arr<O: Clone, A: Clone>(f: &MArr<O, A>) -> MArr<O, A> {
    MArr { dom: tau_obj(&f.dom), cod: tau_obj(&f.cod), f1: f.f2.clone(), f2: f.f1.clone() }
}

functor!(TwistStar, m, m, "tau^*", |s, x| Ok(tau_obj(x)), |s2, f| Ok(tau_arr(f)));

functor!(Comp1, m, c, "comp_1", |s, x| Ok(x.x1.clone()), |s2, f| Ok(f.f1.clone()));

functor!(Comp2, m, c, "comp_2", |s, x| Ok(x.x2.clone()), |s2, f| Ok(f.f2.clone()));

pub fn mix_obj<C: Category>(c: &C, x: &C::Obj) -> MObj<C::Obj, C::Arr> {
    MObj { x1: x.clone(), x2: x.clone(), phi1: c.endo(x), phi2: c.id(x) }
}

pub fn antimix_obj<C: Category>(c: &C, x: &C::Obj) -> MObj<C::Obj, C::Arr> {
    MObj { x1: x.clone(), x2: x.clone(), phi1: c.id(x), phi2: c.endo(x) }
}

functor!(Mix, c, m, "m", |s, x| Ok(mix_obj(&s.c, x)), |s2, f| {
    let c = &s2.c;
    Ok(MArr { dom: mix_obj(c, &c.dom(f)), cod: mix_obj(c, &c.cod(f)), f1: f.clone(), f2: f.clone() })
});

functor!(AntiMix, c, m, "mbar", |s, x| Ok(antimix_obj(&s.c, x)), |s2, f| {
    let c = &s2.c;
    Ok(MArr { dom: antimix_obj(c, &c.dom(f)), cod: antimix_obj(c, &c.cod(f)), f1: f.clone(), f2: f.clone() })
});

/// Q: mC → (tC)/E, which is δ_! together with the evident map to E.
pub struct QFunctor<'a, C: Category> {
    pub suite: &'a Standard<C>,
    pub slice: Slice<Twisted<C>>,
}

impl<'a, C: Extensive + Clone> QFunctor<'a, C> {
    pub fn new(suite: &'a Standard<C>, fragment: Vec<(TObjOf<C>, TArr<C::Obj, C::Arr>)>) -> CResult<Self> {
        let e = super::object_e(&suite.c)?;
        Ok(QFunctor { suite, slice: Slice { base: suite.t.clone(), over: e, fragment } })
    }

    fn structure(&self, x: &MObj<C::Obj, C::Arr>) -> CResult<TArr<C::Obj, C::Arr>> {
        let c = &self.suite.c;
        let e = &self.slice.over;
        let one = c.terminal();
        let (_, e1, e2) = coproduct(c, &one, &one)?;
        let bang = |y: &C::Obj| c.hom(y, &one).into_iter().next().ok_or(CatError::MissingLimit("terminal".into()));
        let q = c.copair(&c.compose(&e1, &bang(&x.x1)?), &c.compose(&e2, &bang(&x.x2)?));
        Ok(TArr { dom: mist_left_obj(c, x)?, cod: e.clone(), f: q })
    }
}

impl<'a, C: Extensive + Clone> Functor for QFunctor<'a, C> {
    type S = Mixed<C>;
    type T = Slice<Twisted<C>>;
    fn name(&self) -> String {
        "Q".into()
    }
    fn source(&self) -> &Mixed<C> {
        &self.suite.m
    }
    fn target(&self) -> &Slice<Twisted<C>> {
        &self.slice
    }
    fn obj(&self, x: &MObj<C::Obj, C::Arr>) -> CResult<(TObjOf<C>, TArr<C::Obj, C::Arr>)> {
        Ok((mist_left_obj(&self.suite.c, x)?, self.structure(x)?))
    }
    fn arr(&self, f: &MArr<C::Obj, C::Arr>) -> CResult<SArr<TObjOf<C>, TArr<C::Obj, C::Arr>>> {
        let g = MistLeft(self.suite).arr(f)?;
        Ok(SArr { dom: self.obj(&f.dom)?, cod: self.obj(&f.cod)?, f: g })
    }
}
