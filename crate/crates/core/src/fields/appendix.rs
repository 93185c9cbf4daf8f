use super::{BlendedField, FResult, Field, FieldError, FieldHom, FiniteField, FunctionField, MixedField};
use super::{QElem, QuadExt, Tower2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

pub fn make_finite_field(p: u64, n: u32) -> FResult<FiniteField> {
    FiniteField::new(p, n)
}

/// θ(x) = x^{p^{(n+1)/2}}, which squares to Frobenius exactly when n is odd.
pub fn tits_endomorphism(f: &FiniteField) -> FResult<BlendedField<FiniteField>> {
    let n = f.degree();
    if n % 2 == 0 {
        return Err(FieldError::NoTitsEndomorphism);
    }
    let e = (f.p() as u64).pow((n + 1) / 2);
    let images = f.gens().iter().map(|g| f.pow(g, e)).collect();
    BlendedField::new(f.clone(), images)
}

/// Searches the Galois group of F_{p^n} for σ with σ² = Frobenius.
pub fn galois_square_roots_of_frobenius(f: &FiniteField) -> Vec<u32> {
    let n = f.degree();
    let p = f.p() as u64;
    let q = f.order() as u64;
    (0..n)
        .filter(|&j| {
            // x ↦ x^{p^j} twice is x^{p^{2j}}; compare with x^p on a primitive element
            let g = f.primitive();
            let e = p.pow(2 * j) % (q - 1).max(1);
            f.pow(&g, e) == f.pow(&g, p)
        })
        .collect()
}

/// F_p(x_1..x_m, y_1..y_m) with θ: x_i ↦ y_i, y_i ↦ x_i^p.
pub fn blended_function_field(p: u64, m: usize) -> FResult<BlendedField<FunctionField>> {
    let names: Vec<String> = if m == 1 {
        vec!["s".into(), "t".into()]
    } else {
        (1..=m).map(|i| format!("x{i}")).chain((1..=m).map(|i| format!("y{i}"))).collect()
    };
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let f = FunctionField::new(p, &refs)?;
    let mut images = Vec::with_capacity(2 * m);
    for i in 0..m {
        images.push(f.var(m + i));
    }
    for i in 0..m {
        images.push(f.frobenius(&f.var(i)));
    }
    BlendedField::new(f, images)
}

/// Square test with a root when there is one.
pub fn is_square<F: Field>(f: &F, x: &F::Elem) -> FResult<Option<F::Elem>> {
    f.sqrt(x)
}

#[derive(Debug, Clone)]
pub enum TitsStep<F: Field> {
    AlreadySquare(F::Elem),
    Extended(Box<BlendedField<Tower2<F>>>),
    NoExtension(F::Elem),
}

/// One extension step for a blended field of characteristic 3.
///
/// `search` bounds the candidates tried for δ = −θ(x)/x when the field
/// is infinite.
pub fn extend_tits_p3<F: Field>(b: &BlendedField<F>, delta: &F::Elem, search: &[F::Elem]) -> FResult<TitsStep<F>> {
    let f = &b.field;
    if f.characteristic() != 3 {
        return Err(FieldError::WrongCharacteristic { expected: 3, found: f.characteristic() });
    }
    if f.is_zero(delta) {
        return Err(FieldError::Undecidable("δ = 0".into()));
    }
    if let Some(w) = f.sqrt(delta)? {
        return Ok(TitsStep::AlreadySquare(w));
    }
    let td = b.theta(delta);
    if f.sqrt(&f.mul(delta, &td))?.is_none() {
        let k1 = QuadExt::new(f.clone(), delta.clone(), f.zero(), "a")?;
        let k2 = QuadExt::new(k1.clone(), k1.embed(&td), k1.zero(), "b")?;
        let lift = |x: &F::Elem| k2.embed(&k1.embed(x));
        let mut images: Vec<_> = b.theta.images.iter().map(lift).collect();
        // √δ ↦ √δ^θ,  √δ^θ ↦ δ√δ
        images.push(k2.w());
        images.push(k2.embed(&QElem { a: f.zero(), b: delta.clone() }));
        let ext = BlendedField::new(k2, images)?;
        return Ok(TitsStep::Extended(Box::new(ext)));
    }
    let candidates: Vec<F::Elem> = f.enumerate().unwrap_or_else(|| search.to_vec());
    let target = f.neg(delta);
    for x in candidates.iter().filter(|x| !f.is_zero(x)) {
        if f.div(&b.theta(x), x).unwrap() == target {
            return Ok(TitsStep::NoExtension(x.clone()));
        }
    }
    Err(FieldError::Undecidable("no x with δ = −x^(θ−1) among the search candidates".into()))
}

/// Ring-endomorphism and θ² = Frobenius checks on an extended tower:
/// all products of the basis 1, a, b, ab and `samples` random elements.
pub fn verify_tower_theta<F: Field>(ext: &BlendedField<Tower2<F>>, samples: usize, seed: u64) -> Result<(), String> {
    let k2 = &ext.field;
    let k1 = &k2.base;
    let basis = vec![
        k2.one(),
        k2.embed(&k1.w()),
        k2.w(),
        k2.mul(&k2.embed(&k1.w()), &k2.w()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = &k1.base;
    let scalars: Vec<F::Elem> = (0..4).map(|_| base.sample(&mut rng)).collect();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let x = k2.mul(x, &k2.embed(&k1.embed(&scalars[i])));
            let y = k2.mul(y, &k2.embed(&k1.embed(&scalars[j])));
            if ext.theta(&k2.mul(&x, &y)) != k2.mul(&ext.theta(&x), &ext.theta(&y)) {
                return Err(format!("θ not multiplicative on basis pair ({i},{j})"));
            }
            if ext.theta(&k2.add(&x, &y)) != k2.add(&ext.theta(&x), &ext.theta(&y)) {
                return Err(format!("θ not additive on basis pair ({i},{j})"));
            }
        }
    }
    ext.verify_square(samples, seed).map(|_| ()).map_err(|x| format!("θ² ≠ fr at {}", k2.render(&x)))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NoSolutionReport {
    pub order: u64,
    pub units_tested: usize,
    /// x with θ(x)/x = −1
    pub theta_solutions: usize,
    /// x with x^{p−1} = −1
    pub power_solutions: usize,
    /// x with x² = 1, a control that must be positive
    pub control_solutions: usize,
}

pub fn no_solution_checks_p3(b: &BlendedField<FiniteField>, bound: u64) -> FResult<NoSolutionReport> {
    let f = &b.field;
    if f.p() != 3 {
        return Err(FieldError::WrongCharacteristic { expected: 3, found: f.p() });
    }
    if f.order() as u64 > bound {
        return Err(FieldError::BoundExceeded(f.order() as u64));
    }
    let minus_one = f.from_i64(-1);
    let mut rep = NoSolutionReport {
        order: f.order() as u64,
        units_tested: 0,
        theta_solutions: 0,
        power_solutions: 0,
        control_solutions: 0,
    };
    for x in 1..f.order() {
        rep.units_tested += 1;
        if f.div(&b.theta(&x), &x).unwrap() == minus_one {
            rep.theta_solutions += 1;
        }
        if f.pow(&x, 2) == minus_one {
            rep.power_solutions += 1;
        }
        if f.mul(&x, &x) == 1 {
            rep.control_solutions += 1;
        }
    }
    Ok(rep)
}

/// u ↦ u² + u
pub fn wp<F: Field>(f: &F, u: &F::Elem) -> FResult<F::Elem> {
    if f.characteristic() != 2 {
        return Err(FieldError::WrongCharacteristic { expected: 2, found: f.characteristic() });
    }
    Ok(f.add(&f.mul(u, u), u))
}

/// (x, y) ↦ (x + λ(y), κ(x) + y)
pub fn wp_tilde<K: Field, L: Field>(m: &MixedField<K, L>, x: &K::Elem, y: &L::Elem) -> FResult<(K::Elem, L::Elem)> {
    if m.k.characteristic() != 2 {
        return Err(FieldError::WrongCharacteristic { expected: 2, found: m.k.characteristic() });
    }
    Ok((m.k.add(x, &m.lambda(y)), m.l.add(&m.kappa(x), y)))
}

#[derive(Debug, Clone)]
pub struct Etale2Classes<K: Field, L: Field> {
    /// Canonical representative of each class of (K × L) / im ℘̃.
    pub classes: Vec<(K::Elem, L::Elem)>,
    /// Canonical representatives of K / ℘(K).
    pub k_classes: Vec<K::Elem>,
    pub image_size: usize,
    /// Both correspondence maps are well defined and mutually inverse.
    pub maps_inverse: bool,
}

/// Classes of coker ℘̃ for a finite mixed field of characteristic 2,
/// matched with K/℘(K) via u ↦ (u, 0) and (u, v) ↦ u + λ(v).
pub fn etale2_classify<K: Field, L: Field>(m: &MixedField<K, L>) -> FResult<Etale2Classes<K, L>>
where
    K::Elem: Ord,
    L::Elem: Ord,
{
    let ks = m.k.enumerate().ok_or_else(|| FieldError::Undecidable("class equality over infinite fields".into()))?;
    let ls = m.l.enumerate().ok_or_else(|| FieldError::Undecidable("class equality over infinite fields".into()))?;
    let mut image = HashSet::new();
    for x in &ks {
        for y in &ls {
            image.insert(wp_tilde(m, x, y)?);
        }
    }
    let mut wp_k = HashSet::new();
    for u in &ks {
        wp_k.insert(wp(&m.k, u)?);
    }
    let canon = |x: &K::Elem, y: &L::Elem| -> (K::Elem, L::Elem) {
        image
            .iter()
            .map(|(a, b)| (m.k.add(x, a), m.l.add(y, b)))
            .min_by(|p, q| (!m.l.is_zero(&p.1), &p.0, &p.1).cmp(&(!m.l.is_zero(&q.1), &q.0, &q.1)))
            .expect("image contains zero")
    };
    let canon_k = |u: &K::Elem| -> K::Elem { wp_k.iter().map(|a| m.k.add(u, a)).min().unwrap() };
    let mut classes: Vec<(K::Elem, L::Elem)> = Vec::new();
    let mut seen = HashSet::new();
    for x in &ks {
        for y in &ls {
            let c = canon(x, y);
            if seen.insert(c.clone()) {
                classes.push(c);
            }
        }
    }
    classes.sort();
    let mut k_classes: Vec<K::Elem> = ks.iter().map(&canon_k).collect::<HashSet<_>>().into_iter().collect();
    k_classes.sort();
    let to_k = |(u, v): &(K::Elem, L::Elem)| canon_k(&m.k.add(u, &m.lambda(v)));
    let to_pair = |u: &K::Elem| canon(u, &m.l.zero());
    let mut ok = classes.iter().all(|c| to_pair(&to_k(c)) == *c) && k_classes.iter().all(|u| to_k(&to_pair(u)) == *u);
    // well defined: the image of ℘̃ lands in ℘(K)
    ok &= image.iter().all(|(a, b)| wp_k.contains(&m.k.add(a, &m.lambda(b))));
    Ok(Etale2Classes { classes, k_classes, image_size: image.len(), maps_inverse: ok })
}

/// The identities ℘̃(a, κ(a)) = (a² + a, 0) and ℘̃(0, b) = (λ(b), b).
pub fn etale2_witness_check<K: Field, L: Field>(m: &MixedField<K, L>, a: &K::Elem, b: &L::Elem) -> FResult<bool> {
    let first = wp_tilde(m, a, &m.kappa(a))? == (wp(&m.k, a)?, m.l.zero());
    let second = wp_tilde(m, &m.k.zero(), b)? == (m.lambda(b), b.clone());
    Ok(first && second)
}

/// The visible mixed field over F_{2^n} with its Frobenius maps.
pub fn visible_f2n(n: u32) -> FResult<MixedField<FiniteField, FiniteField>> {
    Ok(MixedField::visible(&FiniteField::new(2, n)?))
}

pub fn identity_hom<F: Field>(f: &F) -> FieldHom<F, F> {
    FieldHom::identity(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tits_on_small_fields() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let b = tits_endomorphism(&f2).unwrap();
        assert!(b.theta.images.is_empty());
        let f8 = FiniteField::new(2, 3).unwrap();
        let b = tits_endomorphism(&f8).unwrap();
        let u = f8.u();
        let tu = b.theta(&u);
        assert_eq!(f8.render(&tu), "u^2+u");
        assert_eq!(b.theta(&tu), f8.mul(&u, &u));
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(tits_endomorphism(&f4).unwrap_err(), FieldError::NoTitsEndomorphism);
        assert!(galois_square_roots_of_frobenius(&f4).is_empty());
        assert_eq!(galois_square_roots_of_frobenius(&f8), vec![2]);
    }

    #[test]
    fn blended_function_fields() {
        let b = blended_function_field(2, 1).unwrap();
        let f = &b.field;
        let x = f.add(&f.var(0), &f.var(1));
        assert_eq!(f.render(&b.theta(&x)), "s^2+t");
        assert_eq!(b.verify_square(200, 1).unwrap(), 200);
        let b3 = blended_function_field(3, 1).unwrap();
        assert_eq!(b3.theta(&b3.field.var(1)), b3.field.pow(&b3.field.var(0), 3));
    }

    #[test]
    fn tits_extension_over_f3_st() {
        let b = blended_function_field(3, 1).unwrap();
        let f = &b.field;
        let s = f.var(0);
        match extend_tits_p3(&b, &s, &[]).unwrap() {
            TitsStep::Extended(ext) => {
                let k2 = &ext.field;
                let a = k2.embed(&k2.base.w());
                assert_eq!(ext.theta(&ext.theta(&a)), k2.pow(&a, 3));
                verify_tower_theta(&ext, 100, 5).unwrap();
            }
            other => panic!("expected a tower, got {other:?}"),
        }
        let d = f.from_terms(&[(&[2, 4], 1)]);
        assert!(matches!(extend_tits_p3(&b, &d, &[]).unwrap(), TitsStep::AlreadySquare(_)));
    }

    #[test]
    fn no_extension_over_prime_field() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let b = BlendedField::new(f3.clone(), vec![]).unwrap();
        match extend_tits_p3(&b, &2, &[]).unwrap() {
            TitsStep::NoExtension(x) => assert_eq!(x, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn no_solutions_report() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let r = no_solution_checks_p3(&tits_endomorphism(&f3).unwrap(), 1 << 20).unwrap();
        assert_eq!((r.units_tested, r.theta_solutions, r.power_solutions), (2, 0, 0));
        assert_eq!(r.control_solutions, 2);
        let f27 = FiniteField::new(3, 3).unwrap();
        let b = tits_endomorphism(&f27).unwrap();
        assert_eq!(b.theta(&f27.u()), f27.pow(&f27.u(), 9));
        let r = no_solution_checks_p3(&b, 1 << 20).unwrap();
        assert_eq!((r.units_tested, r.theta_solutions, r.power_solutions), (26, 0, 0));
    }

    #[test]
    fn artin_schreier_on_f4() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let vals: Vec<u32> = (0..4).map(|u| wp(&f4, &u).unwrap()).collect();
        let img: HashSet<u32> = vals.iter().copied().collect();
        assert_eq!(img, HashSet::from([0, 1]));
        let m = visible_f2n(1).unwrap();
        assert_eq!(wp_tilde(&m, &1, &0).unwrap(), (1, 1));
        let c = etale2_classify(&m).unwrap();
        assert_eq!(c.classes, vec![(0, 0), (1, 0)]);
        assert!(c.maps_inverse);
        assert_eq!(etale2_classify(&visible_f2n(2).unwrap()).unwrap().classes.len(), 2);
    }
}
