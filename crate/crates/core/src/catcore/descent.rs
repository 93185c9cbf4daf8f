use super::{iso_classes, tau_arr, tau_obj, CResult, CatError, Category, MArr, MObj, Mixed, TObj, Twisted, Verdict};

/// All f: X̃ → τ*X̃ with τ*f ∘ f = id.
pub fn descent_data<C: Category>(m: &Mixed<C>, x: &MObj<C::Obj, C::Arr>) -> Vec<MArr<C::Obj, C::Arr>> {
    let id = m.id(x);
    m.hom(x, &tau_obj(x)).into_iter().filter(|f| m.compose(&tau_arr(f), f) == id).collect()
}

/// A descended object with the isomorphism X̃ → δ*(X₂, Φ₁∘f₂).
#[derive(Clone, Debug)]
pub struct Descended<O, A> {
    pub twisted: TObj<O, A>,
    pub iso: MArr<O, A>,
}

/// (X₂, Φ₁∘f₂), checked: it is a twisted object, (f₁, id) is an
/// isomorphism onto its twix, and that isomorphism carries f to the
/// identity datum.
pub fn descend<C: Category + Clone>(m: &Mixed<C>, x: &MObj<C::Obj, C::Arr>, f: &MArr<C::Obj, C::Arr>) -> CResult<Descended<C::Obj, C::Arr>> {
    let c = &m.base;
    if f.dom != *x || f.cod != tau_obj(x) || m.compose(&tau_arr(f), f) != m.id(x) {
        return Err(CatError::Invalid("descent datum"));
    }
    let phi = c.compose(&x.phi1, &f.f2);
    let t = Twisted { base: c.clone() };
    let twisted = t.object(x.x2.clone(), phi)?;
    let target = MObj { x1: twisted.x.clone(), x2: twisted.x.clone(), phi1: twisted.phi.clone(), phi2: twisted.phi.clone() };
    let u1 = f.f1.clone();
    let u2 = c.id(&x.x2);
    if !m.is_arrow(x, &target, &u1, &u2) {
        return Err(CatError::Invalid("descent isomorphism"));
    }
    let iso = MArr { dom: x.clone(), cod: target, f1: u1, f2: u2 };
    if !m.is_iso(&iso) || iso != m.compose(&tau_arr(&iso), f) {
        return Err(CatError::Invalid("descent isomorphism"));
    }
    Ok(Descended { twisted, iso })
}

/// Descends along the first datum found.
pub fn descend_any<C: Category + Clone>(m: &Mixed<C>, x: &MObj<C::Obj, C::Arr>) -> CResult<Descended<C::Obj, C::Arr>> {
    let f = descent_data(m, x).into_iter().next().ok_or(CatError::NoDescent)?;
    descend(m, x, &f)
}

/// Isomorphism in mC[tdd]: an mC-isomorphism u with g∘u = τ*u∘f.
pub fn datum_iso<C: Category>(
    m: &Mixed<C>,
    (x, f): (&MObj<C::Obj, C::Arr>, &MArr<C::Obj, C::Arr>),
    (y, g): (&MObj<C::Obj, C::Arr>, &MArr<C::Obj, C::Arr>),
) -> Option<MArr<C::Obj, C::Arr>> {
    m.hom(x, y).into_iter().find(|u| m.is_iso(u) && m.compose(g, u) == m.compose(&tau_arr(u), f))
}

/// Classes of (mixed object, descent datum) up to isomorphism, counted by
/// direct search in mC[tdd], against classes of twisted objects. Also
/// checks the round trip of `descend` on every datum and that the
/// identity is a datum on every twix.
pub fn check_descent<C: Category + Clone>(objs: &[C::Obj], c: &C) -> Verdict {
    let name = "descent equivalence";
    let t = Twisted { base: c.clone() };
    let m = Mixed { base: c.clone() };
    let tw: Vec<_> = objs.iter().flat_map(|x| t.twisters(x).into_iter().map(move |p| TObj { x: x.clone(), phi: p })).collect();
    let t_classes = iso_classes(&t, &tw).len();

    let mut n = 0;
    for y in &tw {
        n += 1;
        let dy = MObj { x1: y.x.clone(), x2: y.x.clone(), phi1: y.phi.clone(), phi2: y.phi.clone() };
        if !descent_data(&m, &dy).contains(&m.id(&dy)) {
            return Verdict::fail(name, n, format!("identity is not a datum on the twix of {y:?}"));
        }
    }

    let mut reps: Vec<(MObj<C::Obj, C::Arr>, MArr<C::Obj, C::Arr>)> = Vec::new();
    for x in m.objects_over(objs) {
        let data = descent_data(&m, &x);
        if !data.is_empty() && c.find_iso(&x.x1, &x.x2).is_none() {
            return Verdict::fail(name, n, format!("{x:?} has a datum but non-isomorphic components"));
        }
        for f in data {
            n += 1;
            if let Err(e) = descend(&m, &x, &f) {
                return Verdict::fail(name, n, format!("descending {f:?}: {e}"));
            }
            if !reps.iter().any(|(y, g)| datum_iso(&m, (&x, &f), (y, g)).is_some()) {
                reps.push((x.clone(), f));
            }
        }
    }
    if reps.len() != t_classes {
        return Verdict::fail(name, n, format!("{} classes with descent data, {} twisted classes", reps.len(), t_classes));
    }
    Verdict::pass(name, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{dynsys_category, mixed_category, DArr, Dyn};

    #[test]
    fn twix_carries_identity_datum_and_round_trips() {
        let c = dynsys_category(2).unwrap();
        let m = mixed_category(&c);
        let x = Dyn::identity(2);
        let swap = DArr::new(&x, &x, vec![1, 0]).unwrap();
        let tx = MObj { x1: x.clone(), x2: x.clone(), phi1: swap.clone(), phi2: swap.clone() };
        let data = descent_data(&m, &tx);
        assert!(data.contains(&m.id(&tx)));
        let d = descend(&m, &tx, &m.id(&tx)).unwrap();
        assert_eq!(d.twisted.phi, swap);
        for f in data {
            let d = descend(&m, &tx, &f).unwrap();
            assert!(m.find_iso(&tx, &d.iso.cod).is_some());
        }
    }

    #[test]
    fn different_components_admit_no_descent() {
        let c = dynsys_category(2).unwrap();
        let m = mixed_category(&c);
        let one = Dyn::identity(1);
        let two = Dyn::new(vec![0, 0]).unwrap();
        let p1 = DArr::new(&one, &two, vec![0]).unwrap();
        let p2 = DArr::new(&two, &one, vec![0, 0]).unwrap();
        let x = m.object(one, two, p1, p2).unwrap();
        assert!(descent_data(&m, &x).is_empty());
        assert_eq!(descend_any(&m, &x).unwrap_err(), CatError::NoDescent);
    }

    #[test]
    fn class_counts_agree_up_to_size_two() {
        let c = dynsys_category(2).unwrap();
        let v = check_descent(&c.objects(), &c);
        assert!(v.passed(), "{}", v.line());
    }
}
