use super::{CResult, Category, Functor, Verdict};
use std::collections::HashSet;

/// Unit and identity laws, associativity on composable triples, and
/// naturality of F, over every arrow between objects of `objs`.
pub fn check_category_axioms<C: Category>(c: &C, objs: &[C::Obj]) -> Verdict {
    let name = "category axioms and naturality of F";
    let mut n = 0;
    let homs: Vec<Vec<Vec<C::Arr>>> = objs.iter().map(|x| objs.iter().map(|y| c.hom(x, y)).collect()).collect();
    let sets: Vec<Vec<HashSet<&C::Arr>>> = homs.iter().map(|row| row.iter().map(|h| h.iter().collect()).collect()).collect();
    for (i, x) in objs.iter().enumerate() {
        let fx = c.endo(x);
        for (j, y) in objs.iter().enumerate() {
            let fy = c.endo(y);
            for f in &homs[i][j] {
                n += 1;
                if c.compose(f, &c.id(x)) != *f || c.compose(&c.id(y), f) != *f {
                    return Verdict::fail(name, n, format!("unit law fails for {f:?}"));
                }
                if c.compose(&fy, f) != c.compose(f, &fx) {
                    return Verdict::fail(name, n, format!("F not natural along {f:?}"));
                }
                for k in 0..objs.len() {
                    for g in &homs[j][k] {
                        let gf = c.compose(g, f);
                        if c.dom(&gf) != *x || c.cod(&gf) != objs[k] || !sets[i][k].contains(&gf) {
                            return Verdict::fail(name, n, format!("composite {g:?}∘{f:?} is not an arrow"));
                        }
                        for l in 0..objs.len() {
                            for h in &homs[k][l] {
                                n += 1;
                                if c.compose(h, &gf) != c.compose(&c.compose(h, g), f) {
                                    return Verdict::fail(name, n, format!("associativity fails at {h:?},{g:?},{f:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::pass(name, n)
}

/// F(id) = id, F(g∘f) = F(g)∘F(f), and F respects domains and codomains,
/// over all composable pairs between objects of `objs`.
pub fn check_functor_laws<F: Functor>(f: &F, objs: &[<F::S as Category>::Obj]) -> Verdict {
    let name = format!("functor laws for {}", f.name());
    match functor_laws(f, objs) {
        Ok(Ok(n)) => Verdict::pass(name, n),
        Ok(Err((n, why))) => Verdict::fail(name, n, why),
        Err(e) => Verdict::fail(name, 0, e.to_string()),
    }
}

fn functor_laws<F: Functor>(f: &F, objs: &[<F::S as Category>::Obj]) -> CResult<Result<usize, (usize, String)>> {
    let (s, t) = (f.source(), f.target());
    let mut n = 0;
    let homs: Vec<Vec<Vec<_>>> = objs.iter().map(|x| objs.iter().map(|y| s.hom(x, y)).collect()).collect();
    let imgs: Vec<Vec<Vec<_>>> =
        homs.iter().map(|row| row.iter().map(|h| h.iter().map(|a| f.arr(a)).collect::<CResult<Vec<_>>>()).collect()).collect::<CResult<_>>()?;
    let fobjs: Vec<_> = objs.iter().map(|x| f.obj(x)).collect::<CResult<_>>()?;
    for (i, x) in objs.iter().enumerate() {
        n += 1;
        let fx = &fobjs[i];
        if f.arr(&s.id(x))? != t.id(fx) {
            return Ok(Err((n, format!("identity of {x:?} not preserved"))));
        }
        for j in 0..objs.len() {
            let fy = &fobjs[j];
            for (a, fa) in homs[i][j].iter().zip(&imgs[i][j]) {
                if t.dom(fa) != *fx || t.cod(fa) != *fy {
                    return Ok(Err((n, format!("image of {a:?} has the wrong ends"))));
                }
                for k in 0..objs.len() {
                    for (b, fb) in homs[j][k].iter().zip(&imgs[j][k]) {
                        n += 1;
                        if f.arr(&s.compose(b, a))? != t.compose(fb, fa) {
                            return Ok(Err((n, format!("composite {b:?}∘{a:?} not preserved"))));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(n))
}

/// hom(x, y) → hom(Fx, Fy) is a bijection for all x, y in `objs`.
pub fn check_fully_faithful<F: Functor>(f: &F, objs: &[<F::S as Category>::Obj]) -> Verdict {
    let name = format!("{} full and faithful", f.name());
    let (s, t) = (f.source(), f.target());
    let mut n = 0;
    for x in objs {
        for y in objs {
            n += 1;
            let res: CResult<Option<String>> = (|| {
                let src = s.hom(x, y);
                let img: HashSet<_> = src.iter().map(|a| f.arr(a)).collect::<CResult<_>>()?;
                let tgt = t.hom(&f.obj(x)?, &f.obj(y)?);
                if img.len() != src.len() {
                    return Ok(Some(format!("not faithful on hom({x:?}, {y:?})")));
                }
                if tgt.len() != src.len() || !tgt.iter().all(|b| img.contains(b)) {
                    return Ok(Some(format!("not full on hom({x:?}, {y:?})")));
                }
                Ok(None)
            })();
            match res {
                Ok(None) => {}
                Ok(Some(why)) => return Verdict::fail(name, n, why),
                Err(e) => return Verdict::fail(name, n, e.to_string()),
            }
        }
    }
    Verdict::pass(name, n)
}

/// Unit x → RLx and counit LRy → y of a proposed adjunction L ⊣ R.
pub struct Units<'a, A: Category, B: Category> {
    pub unit: &'a dyn Fn(&A::Obj) -> CResult<A::Arr>,
    pub counit: &'a dyn Fn(&B::Obj) -> CResult<B::Arr>,
}

/// Checks L ⊣ R. Hom-set cardinalities are compared first, so a wrong pair
/// fails with a concrete instance even without units. With units, the maps
/// h ↦ R(h)∘η and k ↦ ε∘L(k) must be mutually inverse on every hom-set and
/// η, ε natural along every arrow between the listed objects.
pub fn check_adjunction<A, B, L, R>(
    l: &L,
    r: &R,
    xs: &[A::Obj],
    ys: &[B::Obj],
    units: Option<Units<'_, A, B>>,
) -> Verdict
where
    A: Category,
    B: Category,
    L: Functor<S = A, T = B>,
    R: Functor<S = B, T = A>,
{
    let name = format!("{} -| {}", l.name(), r.name());
    match adjunction(l, r, xs, ys, units) {
        Ok(Ok(n)) => Verdict::pass(name, n),
        Ok(Err((n, why))) => Verdict::fail(name, n, why),
        Err(e) => Verdict::fail(name, 0, e.to_string()),
    }
}

type Outcome = CResult<Result<usize, (usize, String)>>;

fn adjunction<A, B, L, R>(l: &L, r: &R, xs: &[A::Obj], ys: &[B::Obj], units: Option<Units<'_, A, B>>) -> Outcome
where
    A: Category,
    B: Category,
    L: Functor<S = A, T = B>,
    R: Functor<S = B, T = A>,
{
    let (a, b) = (l.source(), l.target());
    let lx: Vec<B::Obj> = xs.iter().map(|x| l.obj(x)).collect::<CResult<_>>()?;
    let ry: Vec<A::Obj> = ys.iter().map(|y| r.obj(y)).collect::<CResult<_>>()?;
    let mut n = 0;
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            n += 1;
            let left = b.hom(&lx[i], y);
            let right = a.hom(x, &ry[j]);
            if left.len() != right.len() {
                return Ok(Err((
                    n,
                    format!("|hom(L {x:?}, {y:?})| = {} but |hom({x:?}, R {y:?})| = {}", left.len(), right.len()),
                )));
            }
            let Some(u) = &units else { continue };
            let (eta, eps) = ((u.unit)(x)?, (u.counit)(y)?);
            for h in &left {
                let k = a.compose(&r.arr(h)?, &eta);
                if !right.contains(&k) {
                    return Ok(Err((n, format!("transpose of {h:?} is not an arrow {x:?} -> R {y:?}"))));
                }
                if b.compose(&eps, &l.arr(&k)?) != *h {
                    return Ok(Err((n, format!("transposing {h:?} twice does not return it"))));
                }
            }
            for k in &right {
                let h = b.compose(&eps, &l.arr(k)?);
                if a.compose(&r.arr(&h)?, &eta) != *k {
                    return Ok(Err((n, format!("transposing {k:?} twice does not return it"))));
                }
            }
        }
    }
    if let Some(u) = &units {
        for x in xs {
            let ex = (u.unit)(x)?;
            for x2 in xs {
                let ex2 = (u.unit)(x2)?;
                for f in a.hom(x, x2) {
                    n += 1;
                    if a.compose(&r.arr(&l.arr(&f)?)?, &ex) != a.compose(&ex2, &f) {
                        return Ok(Err((n, format!("unit not natural along {f:?}"))));
                    }
                }
            }
        }
        for y in ys {
            let ey = (u.counit)(y)?;
            for y2 in ys {
                let ey2 = (u.counit)(y2)?;
                for g in b.hom(y, y2) {
                    n += 1;
                    if b.compose(&g, &ey) != b.compose(&ey2, &l.arr(&r.arr(&g)?)?) {
                        return Ok(Err((n, format!("counit not natural along {g:?}"))));
                    }
                }
            }
        }
    }
    Ok(Ok(n))
}

/// Every listed isomorphism is sent to an isomorphism; together with checks
/// on class representatives this transports each property to all objects.
pub fn check_preserves_isos<F: Functor>(f: &F, isos: &[<F::S as Category>::Arr]) -> Verdict {
    let name = format!("{} preserves isomorphisms", f.name());
    for (n, a) in isos.iter().enumerate() {
        match f.arr(a) {
            Ok(b) if f.target().is_iso(&b) => {}
            Ok(_) => return Verdict::fail(name, n + 1, format!("image of {a:?} is not invertible")),
            Err(e) => return Verdict::fail(name, n + 1, e.to_string()),
        }
    }
    Verdict::pass(name, isos.len())
}
