//! The full law battery over dynamical systems of bounded size.
//!
//! Properties invariant under isomorphism are checked on one representative
//! per class; every functor is separately checked to send the chosen
//! isomorphisms to isomorphisms, which transports the result to the whole
//! class. C itself is always checked on every labelled object.

use super::*;
use std::collections::HashSet;

type MO = MObj<Dyn, DArr>;

/// Everything quantified over, computed once.
pub struct Fragments {
    pub c: DynSys,
    pub std: Standard<DynSys>,
    pub c_objs: Vec<Dyn>,
    pub t_reps: Vec<TObj<Dyn, DArr>>,
    pub t_isos: Vec<TArr<Dyn, DArr>>,
    pub m_reps: Vec<MO>,
    pub m_isos: Vec<MArr<Dyn, DArr>>,
    pub m_all: Vec<MO>,
    /// tC representatives one size larger, for limits and slices over E.
    pub t_wide: Vec<TObj<Dyn, DArr>>,
}

impl Fragments {
    pub fn new(max_size: usize) -> CResult<Self> {
        let c = dynsys_category(max_size)?;
        let std = standard_functors(&c);
        let c_objs = c.objects();
        let t_classes = iso_classes(&std.t, &std.t.objects());
        let m_all = std.m.objects_over(&c_objs);
        let m_classes = iso_classes(&std.m, &m_all);
        let (t_reps, t_isos) = split(t_classes);
        let (m_reps, m_isos) = split(m_classes);
        let t = twisted_category(&dynsys_category(max_size + 1)?);
        let t_wide = iso_classes(&t, &t.objects()).into_iter().map(|r| r.0).collect();
        Ok(Fragments { c, std, c_objs, t_reps, t_isos, m_reps, m_isos, m_all, t_wide })
    }
}

fn split<O, A>(classes: Vec<(O, Vec<(O, A)>)>) -> (Vec<O>, Vec<A>) {
    let mut reps = Vec::new();
    let mut isos = Vec::new();
    for (r, members) in classes {
        reps.push(r);
        isos.extend(members.into_iter().map(|(_, f)| f));
    }
    (reps, isos)
}

/// Runs every check and returns one verdict each. Limits in tC use the
/// fragment one size larger, so products of size-two objects are present.
pub fn run(max_size: usize) -> CResult<Vec<Verdict>> {
    let fr = Fragments::new(max_size)?;
    let s = &fr.std;
    let mut out = Vec::new();

    out.push(check_category_axioms(&fr.c, &fr.c_objs));
    let mut v = check_category_axioms(&s.t, &fr.t_reps);
    v.name = format!("tC: {}", v.name);
    out.push(v);
    // associativity in mC is componentwise, so the quartic loop is kept to
    // components of size at most two
    let m_small: Vec<_> = fr.m_reps.iter().filter(|x| x.x1.size().max(x.x2.size()) <= 2).cloned().collect();
    let mut v = check_category_axioms(&s.m, &m_small);
    v.name = format!("mC: {}", v.name);
    out.push(v);

    out.push(check_functor_laws(&Untwist(s), &fr.t_reps));
    out.push(check_functor_laws(&MistLeft(s), &fr.m_reps));
    out.push(check_functor_laws(&MistRight(s), &fr.m_reps));
    out.push(check_functor_laws(&Twix(s), &fr.t_reps));
    out.push(check_functor_laws(&TwistStar(s), &fr.m_reps));
    out.push(check_functor_laws(&Comp1(s), &fr.m_reps));
    out.push(check_functor_laws(&Comp2(s), &fr.m_reps));
    out.push(check_functor_laws(&Mix(s), &fr.c_objs));
    out.push(check_functor_laws(&AntiMix(s), &fr.c_objs));

    out.push(check_preserves_isos(&Untwist(s), &fr.t_isos));
    out.push(check_preserves_isos(&Twix(s), &fr.t_isos));
    out.push(check_preserves_isos(&MistLeft(s), &fr.m_isos));
    out.push(check_preserves_isos(&MistRight(s), &fr.m_isos));
    out.push(check_preserves_isos(&TwistStar(s), &fr.m_isos));
    out.push(check_preserves_isos(&Comp1(s), &fr.m_isos));
    out.push(check_preserves_isos(&Comp2(s), &fr.m_isos));

    out.extend(adjunctions(&fr));
    out.push(check_fully_faithful(&Mix(s), &fr.c_objs));
    out.push(check_fully_faithful(&AntiMix(s), &fr.c_objs));
    out.push(tau_involution(&fr));
    out.push(fibered_product(&fr));
    out.push(visibility(&fr));
    out.push(mixtor(&fr));
    out.extend(limits(&fr, max_size)?);
    out.extend(q_equivalence(&fr)?);
    out.push(check_descent(&fr.c_objs, &fr.c));
    out.extend(fairy_checks()?);
    Ok(out)
}

fn adjunctions(fr: &Fragments) -> Vec<Verdict> {
    let s = &fr.std;
    let c = &fr.c;
    let (cs, ts, ms) = (&fr.c_objs, &fr.t_reps, &fr.m_reps);
    let mut out = Vec::new();

    let unit = |x: &MO| Ok(MArr { dom: x.clone(), cod: mix_obj(c, &x.x1), f1: c.id(&x.x1), f2: x.phi2.clone() });
    let counit = |y: &Dyn| Ok(c.id(y));
    out.push(check_adjunction(&Comp1(s), &Mix(s), ms, cs, Some(Units { unit: &unit, counit: &counit })));

    let unit = |x: &Dyn| Ok(c.id(x));
    let counit = |y: &MO| Ok(MArr { dom: mix_obj(c, &y.x2), cod: y.clone(), f1: y.phi2.clone(), f2: c.id(&y.x2) });
    out.push(check_adjunction(&Mix(s), &Comp2(s), cs, ms, Some(Units { unit: &unit, counit: &counit })));

    let unit = |x: &MO| Ok(MArr { dom: x.clone(), cod: antimix_obj(c, &x.x2), f1: x.phi1.clone(), f2: c.id(&x.x2) });
    let counit = |y: &Dyn| Ok(c.id(y));
    out.push(check_adjunction(&Comp2(s), &AntiMix(s), ms, cs, Some(Units { unit: &unit, counit: &counit })));

    let unit = |x: &Dyn| Ok(c.id(x));
    let counit = |y: &MO| Ok(MArr { dom: antimix_obj(c, &y.x1), cod: y.clone(), f1: c.id(&y.x1), f2: y.phi1.clone() });
    out.push(check_adjunction(&AntiMix(s), &Comp1(s), cs, ms, Some(Units { unit: &unit, counit: &counit })));

    let unit = |x: &MO| -> CResult<MArr<Dyn, DArr>> {
        let (_, i1, i2) = c.coproduct(&x.x1, &x.x2).ok_or(CatError::NoLimit)?;
        let cod = Twix(s).obj(&MistLeft(s).obj(x)?)?;
        Ok(MArr { dom: x.clone(), cod, f1: i1, f2: i2 })
    };
    let counit = |y: &TObj<Dyn, DArr>| -> CResult<TArr<Dyn, DArr>> {
        let id = c.id(&y.x);
        Ok(TArr { dom: MistLeft(s).obj(&Twix(s).obj(y)?)?, cod: y.clone(), f: c.copair(&id, &id) })
    };
    out.push(check_adjunction(&MistLeft(s), &Twix(s), ms, ts, Some(Units { unit: &unit, counit: &counit })));

    let unit = |y: &TObj<Dyn, DArr>| -> CResult<TArr<Dyn, DArr>> {
        let id = c.id(&y.x);
        Ok(TArr { dom: y.clone(), cod: MistRight(s).obj(&Twix(s).obj(y)?)?, f: c.pair(&id, &id) })
    };
    let counit = |x: &MO| -> CResult<MArr<Dyn, DArr>> {
        let (_, p1, p2) = c.product(&x.x1, &x.x2).ok_or(CatError::NoLimit)?;
        let dom = Twix(s).obj(&MistRight(s).obj(x)?)?;
        Ok(MArr { dom, cod: x.clone(), f1: p1, f2: p2 })
    };
    out.push(check_adjunction(&Twix(s), &MistRight(s), ts, ms, Some(Units { unit: &unit, counit: &counit })));

    // the adjunction only goes one way round
    let swapped = check_adjunction::<DynSys, Mixed<DynSys>, _, _>(&Mix(s), &Comp1(s), cs, ms, None);
    out.push(match swapped.failure {
        Some(_) => Verdict::pass("m -| comp_1 rejected", swapped.checked),
        None => Verdict::fail("m -| comp_1 rejected", swapped.checked, "hom-set counts agreed everywhere"),
    });
    out
}

fn tau_involution(fr: &Fragments) -> Verdict {
    let name = "tau^* tau^* = id";
    let m = &fr.std.m;
    let mut n = 0;
    for x in &fr.m_all {
        n += 1;
        if tau_obj(&tau_obj(x)) != *x {
            return Verdict::fail(name, n, format!("on {x:?}"));
        }
    }
    for x in &fr.m_reps {
        for y in &fr.m_reps {
            for f in m.hom(x, y) {
                n += 1;
                if tau_arr(&tau_arr(&f)) != f {
                    return Verdict::fail(name, n, format!("on {f:?}"));
                }
            }
        }
    }
    Verdict::pass(name, n)
}

fn all_set_maps(n: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..m as u8).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

/// hom in mC is the fibered product of hom(X₁,Y₁) and hom(X₂,Y₂) over
/// the compatibility with Φ₁ and Φ₂; compared with brute force over all
/// pairs of set maps.
fn fibered_product(fr: &Fragments) -> Verdict {
    let name = "mC hom-sets as fibered products";
    let (c, m) = (&fr.c, &fr.std.m);
    let mut n = 0;
    for x in &fr.m_reps {
        for y in &fr.m_reps {
            n += 1;
            let listed: HashSet<_> = m.hom(x, y).into_iter().map(|f| (f.f1.map, f.f2.map)).collect();
            let s2 = all_set_maps(x.x2.size(), y.x2.size());
            let mut brute = HashSet::new();
            for a in all_set_maps(x.x1.size(), y.x1.size()) {
                let Ok(f1) = DArr::new(&x.x1, &y.x1, a) else { continue };
                for b in &s2 {
                    let Ok(f2) = DArr::new(&x.x2, &y.x2, b.clone()) else { continue };
                    let ok1 = c.compose(&y.phi1, &f1) == c.compose(&f2, &x.phi1);
                    let ok2 = c.compose(&y.phi2, &f2) == c.compose(&f1, &x.phi2);
                    if ok1 && ok2 {
                        brute.insert((f1.map.clone(), f2.map));
                    }
                }
            }
            if brute != listed {
                return Verdict::fail(name, n, format!("hom({x:?}, {y:?}): {} listed, {} by brute force", listed.len(), brute.len()));
            }
        }
    }
    Verdict::pass(name, n)
}

/// Visible means Φ₂ invertible, which must coincide with lying in the
/// essential image of m; dually for antivisible and m̄.
fn visibility(fr: &Fragments) -> Verdict {
    let name = "visible iff in the image of m";
    let (c, m) = (&fr.c, &fr.std.m);
    let mut n = 0;
    for x in &fr.m_reps {
        n += 1;
        let in_m = fr.c_objs.iter().any(|z| m.find_iso(x, &mix_obj(c, z)).is_some());
        if in_m != m.is_visible(x) {
            return Verdict::fail(name, n, format!("{x:?}"));
        }
        let in_mbar = fr.c_objs.iter().any(|z| m.find_iso(x, &antimix_obj(c, z)).is_some());
        if in_mbar != m.is_antivisible(x) {
            return Verdict::fail(name, n, format!("antivisible: {x:?}"));
        }
    }
    Verdict::pass(name, n)
}

/// hom(m(X), Ỹ) → hom(X, comp₂ Ỹ), (f₁, f₂) ↦ f₂, is a bijection.
fn mixtor(fr: &Fragments) -> Verdict {
    let name = "mixtor hom bijection";
    let (c, m) = (&fr.c, &fr.std.m);
    let mut n = 0;
    for x in &fr.c_objs {
        let mx = mix_obj(c, x);
        for y in &fr.m_reps {
            n += 1;
            let img: HashSet<_> = m.hom(&mx, y).into_iter().map(|f| f.f2).collect();
            let target: HashSet<_> = c.hom(x, &y.x2).into_iter().collect();
            let count = m.hom(&mx, y).len();
            if img != target || count != target.len() {
                return Verdict::fail(name, n, format!("hom(m {x:?}, {y:?})"));
            }
        }
    }
    Verdict::pass(name, n)
}

fn limits(fr: &Fragments, max_size: usize) -> CResult<Vec<Verdict>> {
    let t = twisted_category(&dynsys_category(max_size + 1)?);
    let t_reps = &fr.t_wide;
    let half = (max_size + 1) / 2;
    let small: Vec<_> = t_reps.iter().filter(|x| x.x.size() <= half).cloned().collect();
    let mut ds = vec![Diagram::Terminal];
    for a in &small {
        for b in &small {
            ds.push(Diagram::Product(a.clone(), b.clone()));
            ds.push(Diagram::Coproduct(a.clone(), b.clone()));
        }
    }
    let tv = check_limits("tC terminal and binary (co)products", &t, &ds, t_reps, |d| twisted_construction(&t, d));

    let m = &fr.std.m;
    let small: Vec<_> = fr.m_reps.iter().filter(|x| x.x1.size() + x.x2.size() <= max_size.max(2)).cloned().collect();
    let mut ds = vec![Diagram::Terminal];
    for a in &small {
        for b in &small {
            ds.push(Diagram::Product(a.clone(), b.clone()));
            ds.push(Diagram::Coproduct(a.clone(), b.clone()));
        }
    }
    let mv = check_limits("mC terminal and binary (co)products", m, &ds, &fr.m_reps, |d| mixed_construction(m, d));
    Ok(vec![tv, mv])
}

/// Q: mC → (tC)/E is full and faithful on representatives, and every slice
/// object over E whose total space is in the tC fragment is hit.
fn q_equivalence(fr: &Fragments) -> CResult<Vec<Verdict>> {
    let s = &fr.std;
    let e = object_e(&fr.c)?;
    let slice = Slice::over_objects(s.t.clone(), e, &fr.t_wide);
    let q = QFunctor::new(s, slice.fragment.clone())?;
    let mut out = vec![check_fully_faithful(&q, &fr.m_reps), check_preserves_isos(&q, &fr.m_isos)];
    let name = "Q essentially surjective";
    let mut n = 0;
    let images: Vec<_> = fr.m_reps.iter().map(|x| q.obj(x)).collect::<CResult<_>>()?;
    let mut fail = None;
    for y in &slice.fragment {
        n += 1;
        let hit = images.iter().any(|qx| qx.0.x.size() == y.0.x.size() && slice.find_iso(qx, y).is_some());
        if !hit {
            fail = Some(format!("{y:?} not in the image"));
            break;
        }
    }
    out.push(match fail {
        None => Verdict::pass(name, n),
        Some(w) => Verdict::fail(name, n, w),
    });
    Ok(out)
}

/// Fairy over S = ([0,0]) with grades ≤ 3: unique factorization through
/// ⟨f|m⟩, and the pair 𝖿_! ⊣ 𝖿^* along T = ([0,0,2]) → S at grade ≤ 2.
fn fairy_checks() -> CResult<Vec<Verdict>> {
    let c = dynsys_category(2)?;
    let objs = c.objects();
    let s = Dyn::new(vec![0, 0])?;
    let t = Dyn::new(vec![0, 0, 2])?;
    let f = DArr::new(&t, &s, vec![0, 1, 0])?;

    let fa = fairy(&c, &s, DEFAULT_GRADE_BOUND, &objs);
    let name = "fairy factorization through <f|m>";
    let mut n = 0;
    let mut fail = None;
    'outer: for x in fa.objects() {
        for y in fa.objects() {
            for a in fa.hom(&x, &y) {
                for m in 0..=a.grade {
                    n += 1;
                    let d = fa.decompose(&a, m)?;
                    let lifts = fa.hom(&x, &d.head.cod).into_iter().filter(|h| h.grade == m && fa.compose(&d.projection, h) == a).count();
                    if d.head.grade != m || fa.compose(&d.projection, &d.head) != a || lifts != 1 {
                        fail = Some(format!("{a:?} at m = {m}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut out = vec![match fail {
        None => Verdict::pass(name, n),
        Some(w) => Verdict::fail(name, n, w),
    }];

    let over_s = fairy(&c, &s, 2, &objs);
    let over_t = fairy(&c, &t, 2, &objs);
    let push = FairyPush { f: f.clone(), over_t: &over_t, over_s: &over_s };
    let pull = FairyPull { f, over_s: &over_s, over_t: &over_t };
    out.push(check_functor_laws(&push, &over_t.objects()));
    out.push(check_functor_laws(&pull, &over_s.objects()));
    let unit = |x: &Over<Dyn, DArr>| pull.unit(x);
    let counit = |y: &Over<Dyn, DArr>| pull.counit(y);
    out.push(check_adjunction(&push, &pull, &over_t.objects(), &over_s.objects(), Some(Units { unit: &unit, counit: &counit })));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fragment_sizes() {
        let fr = Fragments::new(3).unwrap();
        assert_eq!(fr.c_objs.len(), 1 + 4 + 27);
        assert_eq!(fr.t_reps.len(), 11);
        assert_eq!(fr.m_reps.len(), 49);
    }

    #[test]
    fn battery_passes_up_to_size_two() {
        for v in run(2).unwrap() {
            assert!(v.passed(), "{}", v.line());
        }
    }
}
