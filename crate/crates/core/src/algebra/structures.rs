use super::matrix::{mat_rank, mat_solve, Mat};
use super::mpoly::{MPoly, PolyRing};
use super::pres::{AlgHom, PresAlgebra};
use super::{AResult, AlgError, POINT_BOUND};
use crate::fields::{BlendedField, Field, FieldError, FieldHom, FiniteField, MixedField, Preimages};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

/// A k-algebra with a θ-semi-linear φ such that φ∘φ is the Frobenius.
#[derive(Clone, Debug)]
pub struct TwistedRing<F: Field> {
    pub blended: BlendedField<F>,
    pub a: PresAlgebra<F>,
    pub phi: AlgHom<F, F>,
}

pub fn make_twisted_ring<F: Field>(b: &BlendedField<F>, a: PresAlgebra<F>, images: Vec<MPoly<F::Elem>>) -> AResult<TwistedRing<F>> {
    let phi = AlgHom::new(a.clone(), a.clone(), images, b.theta.clone())?;
    let p = a.field().characteristic() as u64;
    for i in 0..a.ngens() {
        if !a.equal(&phi.apply(&phi.images[i]), &a.ring.pow(&a.gen(i), p)) {
            return Err(AlgError::CompositionMismatch { side: "phi∘phi", generator: a.ring.names[i].clone() });
        }
    }
    Ok(TwistedRing { blended: b.clone(), a, phi })
}

/// k[x,y] with φ: f(x,y) ↦ f^θ(y, x^p).
pub fn affine_plane_twisted<F: Field>(b: &BlendedField<F>) -> AResult<TwistedRing<F>> {
    let a = PresAlgebra::free(b.field.clone(), &["x", "y"]);
    let p = b.field.characteristic() as u64;
    let images = vec![a.gen(1), a.ring.pow(&a.gen(0), p)];
    make_twisted_ring(b, a, images)
}

/// α with α(φ(x_i)) = θ(α(x_i)), as a predicate on generator values.
pub fn is_twisted_point<F: Field>(r: &TwistedRing<F>, pt: &[F::Elem]) -> bool {
    r.a.point_satisfies(pt) && (0..r.a.ngens()).all(|i| r.a.ring.eval(&r.phi.images[i], pt) == r.blended.theta(&pt[i]))
}

/// Every tuple in F_q^n, in lexicographic order.
pub fn tuples(q: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut i| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = (i % q as u64) as u32;
            i /= q as u64;
        }
        t
    })
}

fn check_bound(q: u32, n: usize) -> AResult<()> {
    if (q as f64).powi(n as i32) > POINT_BOUND as f64 {
        return Err(AlgError::EnumerationBound);
    }
    Ok(())
}

/// All F_q-points of a presented algebra.
pub fn variety_points(a: &PresAlgebra<FiniteField>) -> AResult<Vec<Vec<u32>>> {
    let q = a.field().order();
    check_bound(q, a.ngens())?;
    Ok(tuples(q, a.ngens()).filter(|pt| a.point_satisfies(pt)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedPoints {
    pub points: Vec<Vec<u32>>,
    /// Fixed points of α ↦ θ⁻¹∘α∘φ on all points of A.
    pub fixed: Vec<Vec<u32>>,
    pub involution: bool,
}

impl TwistedPoints {
    pub fn agree(&self) -> bool {
        self.involution && self.points == self.fixed
    }
}

/// Points by direct solution and, independently, as fixed points of the
/// involution on Hom(A, k).
pub fn points_twisted(r: &TwistedRing<FiniteField>) -> AResult<TwistedPoints> {
    let a = &r.a;
    let theta_inv = r.blended.theta_inverse();
    let all = variety_points(a)?;
    let points: Vec<_> = all.iter().filter(|pt| is_twisted_point(r, pt)).cloned().collect();
    let iota = |pt: &[u32]| -> Vec<u32> { (0..a.ngens()).map(|i| theta_inv.apply(&a.ring.eval(&r.phi.images[i], pt))).collect() };
    let members: HashSet<&Vec<u32>> = all.iter().collect();
    let mut involution = true;
    let mut fixed = vec![];
    for pt in &all {
        let im = iota(pt);
        if !members.contains(&im) || iota(&im) != *pt {
            involution = false;
        }
        if im == *pt {
            fixed.push(pt.clone());
        }
    }
    Ok(TwistedPoints { points, fixed, involution })
}

/// Algebras A over K and B over L with κ̂: A → B semi-linear along κ and
/// λ̂: B → A along λ, both composites the Frobenius.
#[derive(Clone, Debug)]
pub struct MixedRing<K: Field, L: Field> {
    pub base: MixedField<K, L>,
    pub a: PresAlgebra<K>,
    pub b: PresAlgebra<L>,
    pub kappa: AlgHom<K, L>,
    pub lambda: AlgHom<L, K>,
}

pub fn make_mixed_ring<K: Field, L: Field>(
    base: &MixedField<K, L>,
    a: PresAlgebra<K>,
    b: PresAlgebra<L>,
    kappa_images: Vec<MPoly<L::Elem>>,
    lambda_images: Vec<MPoly<K::Elem>>,
) -> AResult<MixedRing<K, L>> {
    let kappa = AlgHom::new(a.clone(), b.clone(), kappa_images, base.kappa.clone())?;
    let lambda = AlgHom::new(b.clone(), a.clone(), lambda_images, base.lambda.clone())?;
    let r = MixedRing { base: base.clone(), a, b, kappa, lambda };
    r.check_composites()?;
    Ok(r)
}

impl<K: Field, L: Field> MixedRing<K, L> {
    /// λ̂∘κ̂ = fr_A and κ̂∘λ̂ = fr_B on generators, modulo the ideals.
    pub fn check_composites(&self) -> AResult<()> {
        let p = self.a.field().characteristic() as u64;
        for i in 0..self.a.ngens() {
            if !self.a.equal(&self.lambda.apply(&self.kappa.images[i]), &self.a.ring.pow(&self.a.gen(i), p)) {
                return Err(AlgError::CompositionMismatch { side: "lambda∘kappa", generator: self.a.ring.names[i].clone() });
            }
        }
        for j in 0..self.b.ngens() {
            if !self.b.equal(&self.kappa.apply(&self.lambda.images[j]), &self.b.ring.pow(&self.b.gen(j), p)) {
                return Err(AlgError::CompositionMismatch { side: "kappa∘lambda", generator: self.b.ring.names[j].clone() });
            }
        }
        Ok(())
    }

    /// The pair condition: v∘κ̂ = κ∘u and u∘λ̂ = λ∘v.
    pub fn is_point_pair(&self, u: &[K::Elem], v: &[L::Elem]) -> bool {
        self.a.point_satisfies(u)
            && self.b.point_satisfies(v)
            && (0..self.a.ngens()).all(|i| self.b.ring.eval(&self.kappa.images[i], v) == self.base.kappa(&u[i]))
            && (0..self.b.ngens()).all(|j| self.a.ring.eval(&self.lambda.images[j], u) == self.base.lambda(&v[j]))
    }

    /// v∘κ̂ on the generators of A.
    pub fn pullback_values(&self, v: &[L::Elem]) -> Vec<L::Elem> {
        (0..self.a.ngens()).map(|i| self.b.ring.eval(&self.kappa.images[i], v)).collect()
    }

    /// The fibre form: v is a B-point whose composite with κ̂ lands in κ(K).
    pub fn is_point_fiber(&self, v: &[L::Elem]) -> AResult<bool> {
        if !self.b.point_satisfies(v) {
            return Ok(false);
        }
        for y in self.pullback_values(v) {
            if !self.base.in_subimage(&y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<K: Field, L: Field> MixedRing<K, L>
where
    MixedField<K, L>: Preimages<K, L>,
{
    /// u = κ⁻¹∘v∘κ̂, when it exists.
    pub fn lift(&self, v: &[L::Elem]) -> Option<Vec<K::Elem>> {
        self.pullback_values(v).iter().map(|y| self.base.kappa_preimage(y)).collect()
    }
}

/// k[x,y] and ℓ[x,y] with κ̂, λ̂ both f ↦ f^{κ or λ}(y, x^p).
pub fn mixed_affine_plane<K: Field, L: Field>(m: &MixedField<K, L>) -> AResult<MixedRing<K, L>> {
    let a = PresAlgebra::free(m.k.clone(), &["x", "y"]);
    let b = PresAlgebra::free(m.l.clone(), &["x", "y"]);
    let p = m.k.characteristic() as u64;
    let ki = vec![b.gen(1), b.ring.pow(&b.gen(0), p)];
    let li = vec![a.gen(1), a.ring.pow(&a.gen(0), p)];
    make_mixed_ring(m, a, b, ki, li)
}

/// m(A) = (A, A, fr, id) over m(F).
pub fn visible_ring<F: Field>(a: &PresAlgebra<F>) -> AResult<MixedRing<F, F>> {
    let base = MixedField::visible(a.field());
    let fr = AlgHom::frobenius(a);
    let id = AlgHom::identity(a);
    make_mixed_ring(&base, a.clone(), a.clone(), fr.images, id.images)
}

/// m̄(A) = (A, A, id, fr) over m̄(F).
pub fn antivisible_ring<F: Field>(a: &PresAlgebra<F>) -> AResult<MixedRing<F, F>> {
    let f = a.field();
    let base = MixedField::new(FieldHom::identity(f), FieldHom::frobenius(f))?;
    let fr = AlgHom::frobenius(a);
    let id = AlgHom::identity(a);
    make_mixed_ring(&base, a.clone(), a.clone(), id.images, fr.images)
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedPoints {
    /// (u, v) from the pair condition.
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
    /// (u, v) from the fibre form, u recovered through κ⁻¹.
    pub fiber: Vec<(Vec<u32>, Vec<u32>)>,
    pub comp1_injective: bool,
    pub comp2_injective: bool,
}

impl MixedPoints {
    pub fn agree(&self) -> bool {
        self.pairs == self.fiber
    }
}

/// Points of a mixed ring over a finite mixed field, both ways.
pub fn points_mixed(r: &MixedRing<FiniteField, FiniteField>) -> AResult<MixedPoints> {
    let (q1, q2) = (r.base.k.order(), r.base.l.order());
    check_bound(q1.max(q2), r.a.ngens() + r.b.ngens())?;
    let us = variety_points(&r.a)?;
    let vs = variety_points(&r.b)?;
    let mut pairs = vec![];
    for u in &us {
        for v in &vs {
            if r.is_point_pair(u, v) {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    let mut fiber = vec![];
    for v in &vs {
        if r.is_point_fiber(v)? {
            let u = r.lift(v).ok_or(AlgError::Field(FieldError::Undecidable("lift of a fibre point".into())))?;
            fiber.push((u, v.clone()));
        }
    }
    fiber.sort();
    let c1: HashSet<&Vec<u32>> = pairs.iter().map(|(u, _)| u).collect();
    let c2: HashSet<&Vec<u32>> = pairs.iter().map(|(_, v)| v).collect();
    Ok(MixedPoints { comp1_injective: c1.len() == pairs.len(), comp2_injective: c2.len() == pairs.len(), pairs, fiber })
}

/// ∂h(x_j)/∂y_i: one row per domain generator, one column per codomain
/// variable.
pub fn jacobian<D: Field, C: Field>(h: &AlgHom<D, C>) -> Vec<Vec<MPoly<C::Elem>>> {
    let r = &h.cod.ring;
    h.images.iter().map(|img| (0..r.nvars()).map(|i| h.cod.normal_form(&r.derivative(img, i))).collect()).collect()
}

pub fn jacobian_is_zero<D: Field, C: Field>(h: &AlgHom<D, C>) -> bool {
    jacobian(h).iter().flatten().all(|e| e.is_zero())
}

/// Rank of the Jacobian at a codomain point.
pub fn jacobian_rank_at<D: Field, C: Field>(h: &AlgHom<D, C>, pt: &[C::Elem]) -> usize {
    let j = jacobian(h);
    let rows: Vec<Vec<C::Elem>> = j.iter().map(|row| row.iter().map(|e| h.cod.ring.eval(e, pt)).collect()).collect();
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    mat_rank(h.cod.field(), &Mat::from_rows(rows))
}

/// Partial dimensions from the Jacobians of κ̂ and λ̂: the largest rank over
/// the given codomain points. A lower bound for the generic rank; exact
/// when the Jacobian vanishes or is constant.
pub fn partial_dims_at<K: Field, L: Field>(r: &MixedRing<K, L>, b_points: &[Vec<L::Elem>], a_points: &[Vec<K::Elem>]) -> (usize, usize) {
    let dk = b_points.iter().map(|pt| jacobian_rank_at(&r.kappa, pt)).max().unwrap_or(0);
    let dl = a_points.iter().map(|pt| jacobian_rank_at(&r.lambda, pt)).max().unwrap_or(0);
    (dk, dl)
}

/// x1x2 + x3x4 + … on variables 1..=n, with x_n² added when n is odd.
pub fn hyperbolic_form<F: Field>(ring: &PolyRing<F>, n: usize) -> MPoly<F::Elem> {
    let mut q = MPoly::zero();
    let mut i = 1;
    while i + 1 <= n {
        q = ring.add(&q, &ring.mul(&ring.var(i), &ring.var(i + 1)));
        i += 2;
    }
    if n % 2 == 1 {
        q = ring.add(&q, &ring.pow(&ring.var(n), 2));
    }
    q
}

/// Q = K[x0..xn]/(x0² − q), W = L[y1..yn], κ̂: x_i ↦ y_i², x0 ↦ q^κ(y),
/// λ̂: y_i ↦ x_i. `q` is a form in x1..xn; defaults to the hyperbolic one.
pub fn mixed_quadric<K: Field, L: Field>(m: &MixedField<K, L>, n: usize, q: Option<MPoly<K::Elem>>) -> AResult<MixedRing<K, L>> {
    let p = m.k.characteristic();
    if p != 2 {
        return Err(FieldError::WrongCharacteristic { expected: 2, found: p }.into());
    }
    let xs: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
    let yr: Vec<&str> = ys.iter().map(String::as_str).collect();
    let free = PolyRing::new(m.k.clone(), &xr, Default::default());
    let q = q.unwrap_or_else(|| hyperbolic_form(&free, n));
    let rel = free.sub(&free.pow(&free.var(0), 2), &q);
    let a = PresAlgebra::from_ring(free.clone(), vec![rel], super::DEFAULT_DEGREE_CAP)?;
    let b = PresAlgebra::free(m.l.clone(), &yr);
    let mut yimg = vec![MPoly::zero()];
    yimg.extend((0..n).map(|i| b.gen(i)));
    let qk = free.substitute(&q, &b.ring, &|c| m.kappa(c), &yimg);
    let mut ki = vec![qk];
    ki.extend((0..n).map(|i| b.ring.pow(&b.gen(i), 2)));
    let li = (1..=n).map(|i| a.gen(i)).collect();
    make_mixed_ring(m, a, b, ki, li)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Visibility {
    Visible,
    AntiVisible,
    Invisible,
    Inconclusive,
}

/// What could be proved about a ring map.
#[derive(Clone, Debug)]
pub enum IsoEvidence<D: Field, C: Field> {
    /// An inverse, checked both ways on generators.
    Inverse(AlgHom<C, D>),
    /// A nonzero derivation of the codomain killing the image.
    NotSurjective(String),
    Unknown,
}

fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Looks for an inverse of h with coefficient map `coeff_inv`, solving for
/// generator preimages among domain polynomials of degree ≤ `bound`.
pub fn inverse_certificate<D: Field, C: Field>(h: &AlgHom<D, C>, coeff_inv: &FieldHom<C, D>, bound: u32) -> Option<AlgHom<C, D>> {
    let (dom, cod) = (&h.dom, &h.cod);
    let cf = cod.field();
    let monos = monomials(dom.ngens(), bound);
    let cols: Vec<MPoly<C::Elem>> = monos.iter().map(|m| h.apply(&dom.ring.monomial(m.clone(), dom.field().one()))).collect();
    let mut support: Vec<Vec<u32>> = cols.iter().flat_map(|c| c.terms.keys().cloned()).collect();
    let mut images = vec![];
    for i in 0..cod.ngens() {
        let target = cod.normal_form(&cod.gen(i));
        support.extend(target.terms.keys().cloned());
        support.sort();
        support.dedup();
        let mat = Mat::from_rows(support.iter().map(|e| cols.iter().map(|c| c.terms.get(e).cloned().unwrap_or_else(|| cf.zero())).collect()).collect());
        let rhs: Vec<C::Elem> = support.iter().map(|e| target.terms.get(e).cloned().unwrap_or_else(|| cf.zero())).collect();
        let sol = mat_solve(cf, &mat, &rhs)?;
        let mut g = MPoly::zero();
        for (m, d) in monos.iter().zip(sol) {
            let c = coeff_inv.apply(&d);
            if h.coeff.apply(&c) != d {
                return None;
            }
            g = dom.ring.add(&g, &dom.ring.monomial(m.clone(), c));
        }
        images.push(g);
    }
    let inv = AlgHom::new(cod.clone(), dom.clone(), images, coeff_inv.clone()).ok()?;
    let back = inv.after(h);
    let forth = h.after(&inv);
    let ok_back = (0..dom.ngens()).all(|i| dom.equal(&back.images[i], &dom.gen(i))) && back.coeff.agrees_on_gens(&FieldHom::identity(dom.field()));
    let ok_forth = (0..cod.ngens()).all(|i| cod.equal(&forth.images[i], &cod.gen(i))) && forth.coeff.agrees_on_gens(&FieldHom::identity(cod.field()));
    (ok_back && ok_forth).then_some(inv)
}

#[derive(Clone, Copy, Debug)]
enum Derivation {
    Var(usize),
    Coeff(usize),
}

fn apply_derivation<C: Field>(a: &PresAlgebra<C>, d: Derivation, f: &MPoly<C::Elem>) -> Option<MPoly<C::Elem>> {
    match d {
        Derivation::Var(i) => Some(a.ring.derivative(f, i)),
        Derivation::Coeff(v) => {
            let fl = a.field();
            let mut out = MPoly::zero();
            for (e, c) in &f.terms {
                out = a.ring.add(&out, &a.ring.monomial(e.clone(), fl.partial(c, v)?));
            }
            Some(out)
        }
    }
}

/// A derivation of the codomain that is well defined modulo its ideal,
/// kills the images of all generators and of the coefficient field, and is
/// nonzero. Its kernel then contains the image, so h is not surjective.
pub fn derivation_certificate<D: Field, C: Field>(h: &AlgHom<D, C>) -> Option<String> {
    let cod = &h.cod;
    let cf = cod.field();
    let mut cands: Vec<Derivation> = (0..cod.ngens()).map(Derivation::Var).collect();
    let fgens = cf.gens();
    if let Some(g) = fgens.first() {
        cands.extend((0..fgens.len()).filter(|&v| cf.partial(g, v).is_some()).map(Derivation::Coeff));
    }
    let dgens = h.dom.field().gens();
    'next: for d in cands {
        for r in &cod.relations {
            if !cod.is_zero(&apply_derivation(cod, d, r)?) {
                continue 'next;
            }
        }
        for img in &h.images {
            if !cod.is_zero(&apply_derivation(cod, d, img)?) {
                continue 'next;
            }
        }
        if let Derivation::Coeff(v) = d {
            if dgens.iter().any(|g| !cf.is_zero(&cf.partial(&h.coeff.apply(g), v).unwrap())) {
                continue;
            }
        }
        let nonzero = match d {
            Derivation::Var(i) => !cod.is_zero(&apply_derivation(cod, d, &cod.gen(i))?),
            Derivation::Coeff(v) => !cf.is_zero(&cf.partial(&fgens[v], v).unwrap()),
        };
        if nonzero {
            return Some(match d {
                Derivation::Var(i) => format!("d/d{} kills the image", cod.ring.names[i]),
                Derivation::Coeff(v) => format!("d/d{} on coefficients kills the image", cf.gen_names()[v]),
            });
        }
    }
    None
}

pub fn iso_evidence<D: Field, C: Field>(h: &AlgHom<D, C>, coeff_inv: Option<FieldHom<C, D>>, bound: u32) -> IsoEvidence<D, C> {
    if let Some(ci) = coeff_inv {
        if let Some(inv) = inverse_certificate(h, &ci, bound) {
            return IsoEvidence::Inverse(inv);
        }
    }
    match derivation_certificate(h) {
        Some(why) => IsoEvidence::NotSurjective(why),
        None => IsoEvidence::Unknown,
    }
}

/// Visible iff λ̂ is an isomorphism, anti-visible iff κ̂ is; invisible when
/// neither is surjective.
pub fn visibility_test<K: Field, L: Field>(r: &MixedRing<K, L>, bound: u32) -> Visibility
where
    MixedField<K, L>: Preimages<K, L>,
{
    let lambda_inv: Option<FieldHom<K, L>> = r
        .base
        .k
        .gens()
        .iter()
        .map(|g| r.base.lambda_preimage(g))
        .collect::<Option<Vec<_>>>()
        .and_then(|imgs| FieldHom::new(r.base.k.clone(), r.base.l.clone(), imgs).ok());
    let kappa_inv: Option<FieldHom<L, K>> = r
        .base
        .l
        .gens()
        .iter()
        .map(|g| r.base.kappa_preimage(g))
        .collect::<Option<Vec<_>>>()
        .and_then(|imgs| FieldHom::new(r.base.l.clone(), r.base.k.clone(), imgs).ok());
    let el = iso_evidence(&r.lambda, lambda_inv, bound);
    if matches!(el, IsoEvidence::Inverse(_)) {
        return Visibility::Visible;
    }
    let ek = iso_evidence(&r.kappa, kappa_inv, bound);
    match (el, ek) {
        (_, IsoEvidence::Inverse(_)) => Visibility::AntiVisible,
        (IsoEvidence::NotSurjective(_), IsoEvidence::NotSurjective(_)) => Visibility::Invisible,
        _ => Visibility::Inconclusive,
    }
}

/// A random point of a free algebra over any field.
pub fn sample_point<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    (0..n).map(|_| if rng.gen_bool(0.1) { f.zero() } else { f.sample(rng) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::tits_endomorphism;
    use rand::SeedableRng;

    fn blended(p: u64, n: u32) -> BlendedField<FiniteField> {
        if n == 1 {
            let f = FiniteField::new(p, 1).unwrap();
            BlendedField::new(f, vec![]).unwrap()
        } else {
            tits_endomorphism(&FiniteField::new(p, n).unwrap()).unwrap()
        }
    }

    #[test]
    fn twisted_plane_points() {
        let r = affine_plane_twisted(&blended(2, 1)).unwrap();
        let pts = points_twisted(&r).unwrap();
        assert_eq!(pts.points, vec![vec![0, 0], vec![1, 1]]);
        assert!(pts.agree());
        for n in [3, 5] {
            let r = affine_plane_twisted(&blended(2, n)).unwrap();
            let pts = points_twisted(&r).unwrap();
            assert_eq!(pts.points.len(), 1 << n);
            assert!(pts.agree());
        }
    }

    #[test]
    fn wrong_twister_is_rejected() {
        let b = blended(2, 1);
        let a = PresAlgebra::free(b.field.clone(), &["x", "y"]);
        let bad = make_twisted_ring(&b, a.clone(), vec![a.gen(1), a.gen(0)]);
        assert!(matches!(bad, Err(AlgError::CompositionMismatch { .. })));
    }

    #[test]
    fn mixed_plane_over_visible_fields() {
        for n in 1..=3 {
            let f = FiniteField::new(2, n).unwrap();
            let r = mixed_affine_plane(&MixedField::visible(&f)).unwrap();
            let pts = points_mixed(&r).unwrap();
            assert_eq!(pts.pairs.len(), 1 << (2 * n));
            assert!(pts.agree() && pts.comp1_injective && pts.comp2_injective);
        }
    }

    #[test]
    fn bad_mixer_is_rejected() {
        let f = FiniteField::new(2, 1).unwrap();
        let m = MixedField::visible(&f);
        let a = PresAlgebra::free(f.clone(), &["x"]);
        let r = make_mixed_ring(&m, a.clone(), a.clone(), vec![a.gen(0)], vec![a.gen(0)]);
        assert!(matches!(r, Err(AlgError::CompositionMismatch { side: "lambda∘kappa", .. })));
    }

    #[test]
    fn inseparable_plane_points() {
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let r = mixed_affine_plane(&m).unwrap();
        let l = &m.l;
        let inside = l.from_terms(&[(&[2, 1], 1), (&[0, 0], 1)]);
        let outside = l.from_terms(&[(&[1, 1], 1)]);
        let b = l.var(1);
        assert!(r.is_point_fiber(&[b.clone(), inside.clone()]).unwrap());
        assert!(!r.is_point_fiber(&[b.clone(), outside.clone()]).unwrap());
        let u = r.lift(&[b.clone(), inside.clone()]).unwrap();
        assert!(r.is_point_pair(&u, &[b.clone(), inside]));
        assert!(r.lift(&[b, outside]).is_none());
    }

    #[test]
    fn quadric_is_mixed_ring_with_nonvanishing_x0_row() {
        let f = FiniteField::new(2, 1).unwrap();
        let m = MixedField::visible(&f);
        for n in 1..=4 {
            let r = mixed_quadric(&m, n, None).unwrap();
            let x0 = r.kappa.images[0].clone();
            assert!(r.a.equal(&r.lambda.apply(&x0), &r.a.ring.pow(&r.a.gen(0), 2)));
            let jac = jacobian(&r.kappa);
            assert!(jac[1..].iter().flatten().all(|e| e.is_zero()));
            assert_eq!(jac[0].iter().all(|e| e.is_zero()), n == 1);
        }
        let r = mixed_quadric(&m, 2, None).unwrap();
        let bp: Vec<Vec<u32>> = tuples(2, 2).collect();
        let ap = variety_points(&r.a).unwrap();
        assert_eq!(partial_dims_at(&r, &bp, &ap), (1, 2));
    }

    #[test]
    fn visibility_examples() {
        let f = FiniteField::new(2, 2).unwrap();
        let a = PresAlgebra::free(f.clone(), &["x", "y"]);
        assert_eq!(visibility_test(&visible_ring(&a).unwrap(), 3), Visibility::Visible);
        assert_eq!(visibility_test(&antivisible_ring(&a).unwrap(), 3), Visibility::AntiVisible);
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        assert_eq!(visibility_test(&mixed_affine_plane(&m).unwrap(), 4), Visibility::Invisible);
    }

    #[test]
    fn sampled_points_are_deterministic() {
        let f = FiniteField::new(2, 3).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(sample_point(&f, 3, &mut r1), sample_point(&f, 3, &mut r2));
    }
}
