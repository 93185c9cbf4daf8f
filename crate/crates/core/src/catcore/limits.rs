use super::{CResult, CatError, Category, Extensive, MArr, MObj, Mixed, TArr, TObj, Twisted, Verdict};
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub enum Diagram<O, A> {
    Terminal,
    Product(O, O),
    Coproduct(O, O),
    /// Two parallel arrows.
    Equalizer(A, A),
}

/// A (co)limit object with its legs: projections, injections, or the
/// equalizing arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit<O, A> {
    pub obj: O,
    pub legs: Vec<A>,
}

/// Whether (obj, legs) is universal for the diagram against every object
/// of `fragment`: the induced map on hom-sets must be a bijection.
pub fn is_universal<C: Category>(c: &C, d: &Diagram<C::Obj, C::Arr>, lim: &Limit<C::Obj, C::Arr>, fragment: &[C::Obj]) -> bool {
    fragment.iter().all(|v| match d {
        Diagram::Terminal => c.hom(v, &lim.obj).len() == 1,
        Diagram::Product(x, y) => {
            let cones = c.hom(v, x).len() * c.hom(v, y).len();
            let med = c.hom(v, &lim.obj);
            let img: HashSet<_> = med.iter().map(|m| (c.compose(&lim.legs[0], m), c.compose(&lim.legs[1], m))).collect();
            med.len() == cones && img.len() == cones
        }
        Diagram::Coproduct(x, y) => {
            let cocones = c.hom(x, v).len() * c.hom(y, v).len();
            let med = c.hom(&lim.obj, v);
            let img: HashSet<_> = med.iter().map(|m| (c.compose(m, &lim.legs[0]), c.compose(m, &lim.legs[1]))).collect();
            med.len() == cocones && img.len() == cocones
        }
        Diagram::Equalizer(f, g) => {
            let cones = c.hom(v, &c.dom(f)).into_iter().filter(|a| c.compose(f, a) == c.compose(g, a)).count();
            let med = c.hom(v, &lim.obj);
            let img: HashSet<_> = med.iter().map(|m| c.compose(&lim.legs[0], m)).collect();
            med.len() == cones && img.len() == cones
        }
    })
}

fn candidate_cones<C: Category>(c: &C, d: &Diagram<C::Obj, C::Arr>, l: &C::Obj) -> Vec<Vec<C::Arr>> {
    match d {
        Diagram::Terminal => vec![vec![]],
        Diagram::Product(x, y) => {
            let hy = c.hom(l, y);
            c.hom(l, x).into_iter().flat_map(|p| hy.iter().map(move |q| vec![p.clone(), q.clone()])).collect()
        }
        Diagram::Coproduct(x, y) => {
            let hy = c.hom(y, l);
            c.hom(x, l).into_iter().flat_map(|p| hy.iter().map(move |q| vec![p.clone(), q.clone()])).collect()
        }
        Diagram::Equalizer(f, g) => c
            .hom(l, &c.dom(f))
            .into_iter()
            .filter(|e| c.compose(f, e) == c.compose(g, e))
            .map(|e| vec![e])
            .collect(),
    }
}

/// A (co)limit found by exhaustive search over candidate cones with apex
/// in `fragment`.
pub fn compute_limit<C: Category>(c: &C, d: &Diagram<C::Obj, C::Arr>, fragment: &[C::Obj]) -> CResult<Limit<C::Obj, C::Arr>> {
    for l in fragment {
        for legs in candidate_cones(c, d, l) {
            let lim = Limit { obj: l.clone(), legs };
            if is_universal(c, d, &lim, fragment) {
                return Ok(lim);
            }
        }
    }
    Err(CatError::NoLimit)
}

/// The construction from the proof: limit in C with the induced twister.
pub fn twisted_construction<C: Extensive>(
    t: &Twisted<C>,
    d: &Diagram<TObj<C::Obj, C::Arr>, TArr<C::Obj, C::Arr>>,
) -> CResult<Limit<TObj<C::Obj, C::Arr>, TArr<C::Obj, C::Arr>>> {
    let c = &t.base;
    let missing = |s: &str| CatError::MissingLimit(s.into());
    match d {
        Diagram::Terminal => {
            let one = c.terminal();
            Ok(Limit { obj: TObj { x: one.clone(), phi: c.id(&one) }, legs: vec![] })
        }
        Diagram::Product(x, y) => {
            let (p, p1, p2) = c.product(&x.x, &y.x).ok_or_else(|| missing("product"))?;
            let phi = c.pair(&c.compose(&x.phi, &p1), &c.compose(&y.phi, &p2));
            let obj = TObj { x: p, phi };
            let legs = vec![TArr { dom: obj.clone(), cod: x.clone(), f: p1 }, TArr { dom: obj.clone(), cod: y.clone(), f: p2 }];
            Ok(Limit { obj, legs })
        }
        Diagram::Coproduct(x, y) => {
            let (s, i1, i2) = c.coproduct(&x.x, &y.x).ok_or_else(|| missing("coproduct"))?;
            let phi = c.copair(&c.compose(&i1, &x.phi), &c.compose(&i2, &y.phi));
            let obj = TObj { x: s, phi };
            let legs = vec![TArr { dom: x.clone(), cod: obj.clone(), f: i1 }, TArr { dom: y.clone(), cod: obj.clone(), f: i2 }];
            Ok(Limit { obj, legs })
        }
        Diagram::Equalizer(..) => Err(missing("equalizer construction")),
    }
}

/// Componentwise construction in mC.
pub fn mixed_construction<C: Extensive>(
    m: &Mixed<C>,
    d: &Diagram<MObj<C::Obj, C::Arr>, MArr<C::Obj, C::Arr>>,
) -> CResult<Limit<MObj<C::Obj, C::Arr>, MArr<C::Obj, C::Arr>>> {
    let c = &m.base;
    let missing = |s: &str| CatError::MissingLimit(s.into());
    match d {
        Diagram::Terminal => {
            let one = c.terminal();
            let id = c.id(&one);
            Ok(Limit { obj: MObj { x1: one.clone(), x2: one, phi1: id.clone(), phi2: id }, legs: vec![] })
        }
        Diagram::Product(x, y) => {
            let (p, a1, a2) = c.product(&x.x1, &y.x1).ok_or_else(|| missing("product"))?;
            let (q, b1, b2) = c.product(&x.x2, &y.x2).ok_or_else(|| missing("product"))?;
            let phi1 = c.pair(&c.compose(&x.phi1, &a1), &c.compose(&y.phi1, &a2));
            let phi2 = c.pair(&c.compose(&x.phi2, &b1), &c.compose(&y.phi2, &b2));
            let obj = MObj { x1: p, x2: q, phi1, phi2 };
            let legs = vec![
                MArr { dom: obj.clone(), cod: x.clone(), f1: a1, f2: b1 },
                MArr { dom: obj.clone(), cod: y.clone(), f1: a2, f2: b2 },
            ];
            Ok(Limit { obj, legs })
        }
        Diagram::Coproduct(x, y) => {
            let (s, a1, a2) = c.coproduct(&x.x1, &y.x1).ok_or_else(|| missing("coproduct"))?;
            let (t, b1, b2) = c.coproduct(&x.x2, &y.x2).ok_or_else(|| missing("coproduct"))?;
            let phi1 = c.copair(&c.compose(&b1, &x.phi1), &c.compose(&b2, &y.phi1));
            let phi2 = c.copair(&c.compose(&a1, &x.phi2), &c.compose(&a2, &y.phi2));
            let obj = MObj { x1: s, x2: t, phi1, phi2 };
            let legs = vec![
                MArr { dom: x.clone(), cod: obj.clone(), f1: a1, f2: b1 },
                MArr { dom: y.clone(), cod: obj.clone(), f1: a2, f2: b2 },
            ];
            Ok(Limit { obj, legs })
        }
        Diagram::Equalizer(..) => Err(missing("equalizer construction")),
    }
}

/// For every diagram whose constructed (co)limit is isomorphic to an object
/// of `fragment`: the search must find a (co)limit, it must be isomorphic
/// to the construction, and the constructed cone must itself be universal.
/// Diagrams whose answer falls outside the fragment are skipped.
pub fn check_limits<C, K>(
    name: &str,
    c: &C,
    diagrams: &[Diagram<C::Obj, C::Arr>],
    fragment: &[C::Obj],
    construct: K,
) -> Verdict
where
    C: Category,
    K: Fn(&Diagram<C::Obj, C::Arr>) -> CResult<Limit<C::Obj, C::Arr>>,
{
    let mut n = 0;
    for d in diagrams {
        let built = match construct(d) {
            Ok(b) => b,
            Err(e) => return Verdict::fail(name, n, e.to_string()),
        };
        if !fragment.iter().any(|v| c.find_iso(&built.obj, v).is_some()) {
            continue;
        }
        n += 1;
        if !is_universal(c, d, &built, fragment) {
            return Verdict::fail(name, n, format!("constructed cone for {d:?} is not universal"));
        }
        match compute_limit(c, d, fragment) {
            Ok(found) if c.find_iso(&found.obj, &built.obj).is_some() => {}
            Ok(found) => return Verdict::fail(name, n, format!("search found {:?}, not the construction", found.obj)),
            Err(e) => return Verdict::fail(name, n, format!("{d:?}: {e}")),
        }
    }
    Verdict::pass(name, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{dynsys_category, iso_classes, mixed_category, twisted_category, DArr, Dyn};

    #[test]
    fn terminal_objects() {
        let c = dynsys_category(2).unwrap();
        let t = twisted_category(&c);
        let objs = t.objects();
        let lim = compute_limit(&t, &Diagram::Terminal, &objs).unwrap();
        assert_eq!(lim.obj.x, Dyn::identity(1));
        let m = mixed_category(&c);
        let mo = m.objects();
        let lim = compute_limit(&m, &Diagram::Terminal, &mo).unwrap();
        assert_eq!((lim.obj.x1.size(), lim.obj.x2.size()), (1, 1));
    }

    #[test]
    fn product_search_agrees_with_construction() {
        let c = dynsys_category(4).unwrap();
        let t = twisted_category(&c);
        let reps: Vec<_> = iso_classes(&t, &t.objects()).into_iter().map(|r| r.0).collect();
        let small: Vec<_> = reps.iter().filter(|x| x.x.size() == 2).cloned().collect();
        let mut ds = vec![Diagram::Terminal];
        for a in &small {
            for b in &small {
                ds.push(Diagram::Product(a.clone(), b.clone()));
                ds.push(Diagram::Coproduct(a.clone(), b.clone()));
            }
        }
        let v = check_limits("tC", &t, &ds, &reps, |d| twisted_construction(&t, d));
        assert!(v.passed(), "{}", v.line());
        assert_eq!(v.checked, ds.len());
    }

    #[test]
    fn equalizer_is_the_agreement_set() {
        let c = dynsys_category(3).unwrap();
        let x = Dyn::identity(3);
        let y = Dyn::identity(2);
        let f = DArr::new(&x, &y, vec![0, 1, 1]).unwrap();
        let g = DArr::new(&x, &y, vec![0, 1, 0]).unwrap();
        let objs = c.objects();
        let lim = compute_limit(&c, &Diagram::Equalizer(f, g), &objs).unwrap();
        assert_eq!(lim.obj.size(), 2);
        let mut img = lim.legs[0].map.clone();
        img.sort();
        assert_eq!(img, vec![0, 1]);
    }
}
