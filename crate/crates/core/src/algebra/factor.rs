use super::groebner::groebner;
use super::matrix::{mat_det, mat_identity, Mat};
use super::mpoly::{MPoly, PolyRing, TermOrder};
use super::pres::{AlgHom, PresAlgebra};
use super::structures::{make_mixed_ring, MixedRing};
use super::{AResult, AlgError};
use crate::fields::{Field, FieldError, FieldHom, FiniteField, MixedField};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// π: X → X̄ and π′: X̄ → X given on rings: π^#: A_X̄ → A_X linear and
/// π′^#: A_X → A_X̄ semi-linear along the Frobenius of the base.
#[derive(Clone, Debug)]
pub struct Factorization<F: Field> {
    pub x: PresAlgebra<F>,
    pub xbar: PresAlgebra<F>,
    pub pi: AlgHom<F, F>,
    pub pi_prime: AlgHom<F, F>,
}

pub fn make_factorization<F: Field>(
    x: PresAlgebra<F>,
    xbar: PresAlgebra<F>,
    pi_images: Vec<MPoly<F::Elem>>,
    pi_prime_images: Vec<MPoly<F::Elem>>,
) -> AResult<Factorization<F>> {
    let f = x.field().clone();
    let pi = AlgHom::new(xbar.clone(), x.clone(), pi_images, FieldHom::identity(&f))?;
    let pi_prime = AlgHom::new(x.clone(), xbar.clone(), pi_prime_images, FieldHom::frobenius(&f))?;
    Ok(Factorization { x, xbar, pi, pi_prime })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationVerdict {
    /// π′∘π = F_X, i.e. π^#∘π′^# is the Frobenius of A_X.
    pub composite_x: bool,
    /// π∘π′ = F_X̄, checked directly.
    pub composite_xbar: bool,
    /// π is epic: π^# is injective.
    pub epic: bool,
}

impl FactorizationVerdict {
    /// π′∘π = F together with epicness makes the factorization relative;
    /// the direct check of the other composite must then agree.
    pub fn relative(&self) -> bool {
        self.composite_x && self.epic && self.composite_xbar
    }
}

pub fn relative_factorization_check<F: Field>(fact: &Factorization<F>, cap: u32) -> AResult<FactorizationVerdict> {
    let fx = AlgHom::frobenius(&fact.x);
    let fxb = AlgHom::frobenius(&fact.xbar);
    let composite_x = fact.pi.after(&fact.pi_prime).differs_on(&fx).is_none();
    let composite_xbar = fact.pi_prime.after(&fact.pi).differs_on(&fxb).is_none();
    let epic = is_injective(&fact.pi, cap)?;
    Ok(FactorizationVerdict { composite_x, composite_xbar, epic })
}

fn shift<E: Clone>(p: &MPoly<E>, offset: usize, total: usize) -> MPoly<E> {
    let terms = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mut x = vec![0; total];
            x[offset..offset + e.len()].copy_from_slice(e);
            (x, c.clone())
        })
        .collect();
    MPoly { terms }
}

/// Generators of ker h for a linear h, by lex elimination of the codomain
/// variables from I_cod + (x_i − h(x_i)).
pub fn ring_kernel<F: Field>(h: &AlgHom<F, F>, cap: u32) -> AResult<Vec<MPoly<F::Elem>>> {
    let f = h.dom.field();
    if !h.coeff.agrees_on_gens(&FieldHom::identity(f)) {
        return Err(FieldError::Unsupported("kernels of semi-linear maps").into());
    }
    let (nc, nd) = (h.cod.ngens(), h.dom.ngens());
    let names: Vec<String> = h.cod.ring.names.iter().map(|s| format!("c_{s}")).chain(h.dom.ring.names.iter().cloned()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let big = PolyRing::new(f.clone(), &refs, TermOrder::Lex);
    let mut gens: Vec<MPoly<F::Elem>> = h.cod.relations.iter().map(|r| shift(r, 0, nc + nd)).collect();
    for i in 0..nd {
        gens.push(big.sub(&big.var(nc + i), &shift(&h.images[i], 0, nc + nd)));
    }
    let gb = groebner(&big, &gens, cap).map_err(|e| match e {
        AlgError::DegreeCapExceeded { cap } => AlgError::KernelComputationCapExceeded { cap },
        e => e,
    })?;
    Ok(gb
        .into_iter()
        .filter(|g| g.terms.keys().all(|e| e[..nc].iter().all(|&x| x == 0)))
        .map(|g| MPoly { terms: g.terms.into_iter().map(|(e, c)| (e[nc..].to_vec(), c)).collect() })
        .collect())
}

/// Whether h is injective modulo the domain ideal.
pub fn is_injective<F: Field>(h: &AlgHom<F, F>, cap: u32) -> AResult<bool> {
    Ok(ring_kernel(h, cap)?.iter().all(|g| h.dom.is_zero(g)))
}

fn prime_image<F: Field>(f: &F, c: &u32) -> F::Elem {
    f.from_i64(*c as i64)
}

/// The mixed ring (A_X̄ ⊗ K, A_X ⊗ L) with κ̂ = π^# along κ and λ̂ = π′^#
/// along λ, for a factorization defined over the prime field.
pub fn base_change_mixed<K: Field, L: Field>(fact: &Factorization<FiniteField>, m: &MixedField<K, L>) -> AResult<MixedRing<K, L>> {
    if fact.x.field().degree() != 1 {
        return Err(FieldError::Unsupported("base change of factorizations over non-prime fields").into());
    }
    let names = |a: &PresAlgebra<FiniteField>| a.ring.names.clone();
    let (nb, nx) = (names(&fact.xbar), names(&fact.x));
    let rb: Vec<&str> = nb.iter().map(String::as_str).collect();
    let rx: Vec<&str> = nx.iter().map(String::as_str).collect();
    let ka = PolyRing::new(m.k.clone(), &rb, fact.xbar.ring.order);
    let lb = PolyRing::new(m.l.clone(), &rx, fact.x.ring.order);
    let into_k = |p: &MPoly<u32>| fact.xbar.ring.map_coeffs(p, &ka, &|c| prime_image(&m.k, c));
    let into_l = |p: &MPoly<u32>| fact.x.ring.map_coeffs(p, &lb, &|c| prime_image(&m.l, c));
    let a = PresAlgebra::from_ring(ka.clone(), fact.xbar.relations.iter().map(into_k).collect(), super::DEFAULT_DEGREE_CAP)?;
    let b = PresAlgebra::from_ring(lb.clone(), fact.x.relations.iter().map(into_l).collect(), super::DEFAULT_DEGREE_CAP)?;
    let ki = fact.pi.images.iter().map(|p| fact.x.ring.map_coeffs(p, &lb, &|c| prime_image(&m.l, c))).collect();
    let li = fact.pi_prime.images.iter().map(|p| fact.xbar.ring.map_coeffs(p, &ka, &|c| prime_image(&m.k, c))).collect();
    make_mixed_ring(m, a, b, ki, li)
}

/// The mixed object (X̄, X, π′, π) over m(F_p).
pub fn mix_from_factorization(fact: &Factorization<FiniteField>) -> AResult<MixedRing<FiniteField, FiniteField>> {
    base_change_mixed(fact, &MixedField::visible(fact.x.field()))
}

/// A¹ → A¹, x̄ ↦ x^p, with π′^#: x ↦ x̄.
pub fn frobenius_line(p: u64) -> AResult<Factorization<FiniteField>> {
    let f = FiniteField::new(p, 1)?;
    let x = PresAlgebra::free(f.clone(), &["x"]);
    let xbar = PresAlgebra::free(f, &["xb"]);
    let pi = vec![x.ring.pow(&x.gen(0), p)];
    let pi_prime = vec![xbar.gen(0)];
    make_factorization(x, xbar, pi, pi_prime)
}

/// A² with one coordinate of each kind: π^#: u ↦ x^p, v ↦ y and
/// π′^#: x ↦ u, y ↦ v^p, the shape of a very special isogeny on a pair of
/// root groups.
pub fn isogeny_plane(p: u64) -> AResult<Factorization<FiniteField>> {
    let f = FiniteField::new(p, 1)?;
    let x = PresAlgebra::free(f.clone(), &["x", "y"]);
    let xbar = PresAlgebra::free(f, &["u", "v"]);
    let pi = vec![x.ring.pow(&x.gen(0), p), x.gen(1)];
    let pi_prime = vec![xbar.gen(0), xbar.ring.pow(&xbar.gen(1), p)];
    make_factorization(x, xbar, pi, pi_prime)
}

/// X → X → Fr*X with π the identity and π′ the Frobenius.
pub fn identity_factorization(a: &PresAlgebra<FiniteField>) -> AResult<Factorization<FiniteField>> {
    let p = a.field().characteristic() as u64;
    let pi = (0..a.ngens()).map(|i| a.gen(i)).collect();
    let pi_prime = (0..a.ngens()).map(|i| a.ring.pow(&a.gen(i), p)).collect();
    make_factorization(a.clone(), a.clone(), pi, pi_prime)
}

/// A uniformly random matrix of determinant 1.
pub fn random_sl<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Mat<F::Elem> {
    loop {
        let mut m = mat_identity(f, n);
        for v in m.data.iter_mut() {
            *v = f.sample(rng);
        }
        let d = mat_det(f, &m);
        if let Some(di) = f.inv(&d) {
            for j in 0..n {
                let v = f.mul(m.get(0, j), &di);
                m.set(0, j, v);
            }
            return m;
        }
    }
}

/// The representative of [m] whose first nonzero entry is 1.
pub fn projective_class<F: Field>(f: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    match m.data.iter().find(|x| !f.is_zero(x)) {
        Some(c) => {
            let ci = f.inv(c).unwrap();
            m.map(|x| f.mul(x, &ci))
        }
        None => m.clone(),
    }
}

/// [h] ↦ (h_ij^e)/det h, which is well defined on classes when e equals
/// the size of h.
pub fn pgl_to_sl<F: Field>(f: &F, h: &Mat<F::Elem>, e: u64) -> Mat<F::Elem> {
    let d = f.inv(&mat_det(f, h)).expect("invertible class");
    h.map(|x| f.mul(&f.pow(x, e), &d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointsFactorization {
    pub checked: usize,
    /// Samples where π′∘π differs from the entrywise Frobenius.
    pub failures_x: usize,
    /// Samples where π∘π′ differs from the Frobenius of PGL.
    pub failures_xbar: usize,
}

impl PointsFactorization {
    pub fn passed(&self) -> bool {
        self.failures_x == 0 && self.failures_xbar == 0
    }
}

/// SL_n → PGL_n → Fr*SL_n at points, with π′ raising entries to `e`.
/// For n = p and e = p both composites are Frobenius.
pub fn sl_pgl_factorization_check<F: Field>(f: &F, n: usize, e: u64, samples: usize, rng: &mut ChaCha8Rng) -> PointsFactorization {
    let p = f.characteristic() as u64;
    let mut out = PointsFactorization { checked: 0, failures_x: 0, failures_xbar: 0 };
    for _ in 0..samples {
        let x = random_sl(f, n, rng);
        let cls = projective_class(f, &x);
        let back = pgl_to_sl(f, &cls, e);
        if back != x.map(|v| f.pow(v, p)) {
            out.failures_x += 1;
        }
        let again = projective_class(f, &back);
        if again != projective_class(f, &cls.map(|v| f.pow(v, p))) {
            out.failures_xbar += 1;
        }
        out.checked += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{visibility_test, Visibility};
    use rand::SeedableRng;

    #[test]
    fn line_and_plane_are_relative() {
        for p in [2, 3] {
            for fact in [frobenius_line(p).unwrap(), isogeny_plane(p).unwrap()] {
                let v = relative_factorization_check(&fact, 12).unwrap();
                assert!(v.relative(), "{v:?}");
                let r = mix_from_factorization(&fact).unwrap();
                assert!(r.check_composites().is_ok());
            }
        }
    }

    #[test]
    fn identity_factorization_holds_and_wrong_exponent_fails() {
        let f = FiniteField::new(2, 1).unwrap();
        let a = PresAlgebra::free(f, &["x", "y"]);
        let fact = identity_factorization(&a).unwrap();
        assert!(relative_factorization_check(&fact, 12).unwrap().relative());
        let r = mix_from_factorization(&fact).unwrap();
        // κ̂ = π^# is the identity; on schemes this is the visible object
        // since Spec exchanges the two mixers.
        assert_eq!(visibility_test(&r, 2), Visibility::AntiVisible);
        let bad = make_factorization(a.clone(), a.clone(), vec![a.gen(0), a.gen(1)], vec![a.ring.pow(&a.gen(0), 3), a.ring.pow(&a.gen(1), 2)]).unwrap();
        assert!(!relative_factorization_check(&bad, 12).unwrap().composite_x);
    }

    #[test]
    fn kernel_of_non_injective_map() {
        let f = FiniteField::new(2, 1).unwrap();
        let dom = PresAlgebra::free(f.clone(), &["u", "v"]);
        let cod = PresAlgebra::free(f.clone(), &["t"]);
        let t = cod.gen(0);
        let h = AlgHom::new(dom.clone(), cod.clone(), vec![t.clone(), cod.ring.pow(&t, 2)], FieldHom::identity(&f)).unwrap();
        let ker = ring_kernel(&h, 12).unwrap();
        assert!(!ker.is_empty());
        assert!(!is_injective(&h, 12).unwrap());
    }

    #[test]
    fn base_change_over_inseparable_field() {
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let r = base_change_mixed(&isogeny_plane(2).unwrap(), &m).unwrap();
        assert!(r.check_composites().is_ok());
    }

    #[test]
    fn sl_pgl_composites() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert!(sl_pgl_factorization_check(&f4, 2, 2, 50, &mut rng).passed());
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(sl_pgl_factorization_check(&f9, 3, 3, 50, &mut rng).passed());
        assert!(!sl_pgl_factorization_check(&f9, 3, 4, 50, &mut rng).passed());
    }
}
