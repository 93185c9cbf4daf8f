use super::{bruhat_decompose, vsi_matrix_b_to_c, GResult, GroupError, GroupSpec, GroupType};
use crate::algebra::{mat_det, mat_mul, Mat};
use crate::fields::{Field, FieldError, MixedField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subfield_err(e: FieldError) -> GroupError {
    match e {
        FieldError::UnsupportedSubfield => GroupError::UnsupportedSubfield,
        e => GroupError::Field(e),
    }
}

/// A Chevalley group over ℓ together with the subfield k = κ(K) ⊂ ℓ.
#[derive(Clone, Debug)]
pub struct MixedGroupSpec<K: Field, L: Field> {
    pub group: GroupSpec<L>,
    pub field: MixedField<K, L>,
    pub long: Vec<usize>,
    pub short: Vec<usize>,
    /// Indices i with simple[i] long.
    pub long_simple: Vec<usize>,
}

impl<K: Field, L: Field> MixedGroupSpec<K, L> {
    pub fn new(kind: GroupType, rank: usize, field: MixedField<K, L>) -> GResult<Self> {
        let group = GroupSpec::new(kind, rank, field.l.clone())?;
        let l = &field.l;
        for g in l.gens() {
            if !field.in_subimage(&l.frobenius(&g)).map_err(subfield_err)? {
                return Err(GroupError::InvariantFailure("ℓ^p is not contained in k".into()));
            }
        }
        let long = (0..group.nroots()).filter(|&r| group.roots[r].long).collect();
        let short = (0..group.nroots()).filter(|&r| !group.roots[r].long).collect();
        let long_simple = (0..rank).filter(|&i| group.roots[group.simple[i]].long).collect();
        Ok(MixedGroupSpec { group, field, long, short, long_simple })
    }

    pub fn in_k(&self, y: &L::Elem) -> GResult<bool> {
        self.field.in_subimage(y).map_err(subfield_err)
    }

    pub fn sample_k(&self, rng: &mut ChaCha8Rng) -> L::Elem {
        self.field.kappa(&self.field.k.sample(rng))
    }

    fn sample_k_unit(&self, rng: &mut ChaCha8Rng) -> L::Elem {
        loop {
            let y = self.sample_k(rng);
            if !self.field.l.is_zero(&y) {
                return y;
            }
        }
    }

    /// An element of ℓ outside k.
    pub fn sample_outside_k(&self, rng: &mut ChaCha8Rng) -> GResult<L::Elem> {
        for _ in 0..200 {
            let y = self.group.sample_unit(rng);
            if !self.in_k(&y)? {
                return Ok(y);
            }
        }
        Err(GroupError::InvariantFailure("k = ℓ: no element outside the subfield".into()))
    }

    /// h with the given simple-root values; a long fundamental value
    /// outside k is refused.
    pub fn tits_torus(&self, values: &[L::Elem]) -> GResult<Mat<L::Elem>> {
        for &i in &self.long_simple {
            if !self.in_k(&values[i])? {
                return Err(GroupError::NotInGroup("long fundamental torus value outside k".into()));
            }
        }
        let coords = self.group.torus_from_values(values)?;
        self.group.torus(&coords)
    }

    /// x_r(c) with c ∈ k for long r and c ∈ ℓ for short r, or a torus
    /// element of T(k, ℓ).
    pub fn sample_generator(&self, rng: &mut ChaCha8Rng) -> GResult<Mat<L::Elem>> {
        let g = &self.group;
        let pick = rng.gen_range(0..=g.nroots());
        if pick < g.nroots() {
            let c = if g.roots[pick].long { self.sample_k(rng) } else { g.sample_param(rng) };
            return Ok(g.root_element(pick, &c));
        }
        let values: Vec<L::Elem> = (0..g.rank)
            .map(|i| {
                if !self.long_simple.contains(&i) {
                    g.sample_unit(rng)
                } else if g.kind == GroupType::C {
                    // 2ε_n: a square keeps the torus coordinates in ℓ
                    g.field.square(&g.sample_unit(rng))
                } else {
                    self.sample_k_unit(rng)
                }
            })
            .collect();
        self.tits_torus(&values)
    }

    pub fn random_word_with(&self, rng: &mut ChaCha8Rng, length: usize) -> GResult<Mat<L::Elem>> {
        let mut m = self.group.identity();
        for _ in 0..length {
            m = mat_mul(&self.group.field, &m, &self.sample_generator(rng)?);
        }
        Ok(m)
    }

    pub fn random_word(&self, length: usize, seed: u64) -> GResult<Mat<L::Elem>> {
        self.random_word_with(&mut ChaCha8Rng::seed_from_u64(seed), length)
    }

    /// g·x_r(c) for a long root r and c ∉ k; a non-member whenever g is a member.
    pub fn perturb(&self, g: &Mat<L::Elem>, rng: &mut ChaCha8Rng) -> GResult<Mat<L::Elem>> {
        let r = self.long[rng.gen_range(0..self.long.len())];
        let c = self.sample_outside_k(rng)?;
        Ok(self.group.root_mul_right(g, r, &c))
    }
}

/// Bruhat route: long-root coordinates and long fundamental torus values in k.
pub fn mixed_membership<K: Field, L: Field>(g: &Mat<L::Elem>, ms: &MixedGroupSpec<K, L>) -> GResult<bool> {
    let form = bruhat_decompose(g, &ms.group)?;
    for (r, c) in form.lead.iter().chain(&form.trail) {
        if ms.group.roots[*r].long && !ms.in_k(c)? {
            return Ok(false);
        }
    }
    let vals = ms.group.simple_values(&form.torus);
    for &i in &ms.long_simple {
        if !ms.in_k(&vals[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some λ ∈ ℓ^× puts λ·m over k, i.e. every ratio of nonzero
/// entries lies in k.
pub fn projectively_rational<K: Field, L: Field>(m: &Mat<L::Elem>, mf: &MixedField<K, L>) -> GResult<bool> {
    let l = &mf.l;
    let Some(pivot) = m.data.iter().find(|x| !l.is_zero(x)) else {
        return Ok(false);
    };
    let inv = l.inv(pivot).unwrap();
    for x in &m.data {
        if !l.is_zero(x) && !mf.in_subimage(&l.mul(x, &inv)).map_err(subfield_err)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix route for type B: π(g) ∈ Sp_{2n}(ℓ) must be k-rational in the
/// adjoint quotient.
pub fn mixed_membership_matrix<K: Field, L: Field>(g: &Mat<L::Elem>, ms: &MixedGroupSpec<K, L>) -> GResult<bool> {
    if ms.group.kind != GroupType::B {
        return Err(GroupError::UnsupportedType("the matrix route needs type B".into()));
    }
    projectively_rational(&vsi_matrix_b_to_c(g, &ms.group)?, &ms.field)
}

/// g ∈ SL_p(ℓ) with a scalar multiple over k.
pub fn mixed_slp_membership<K: Field, L: Field>(g: &Mat<L::Elem>, mf: &MixedField<K, L>) -> GResult<bool> {
    let l = &mf.l;
    if g.rows != g.cols || !l.is_one(&mat_det(l, g)) {
        return Ok(false);
    }
    projectively_rational(g, mf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FunctionField, Rat};

    fn mixed(kind: GroupType) -> MixedGroupSpec<FunctionField, FunctionField> {
        MixedGroupSpec::new(kind, 2, MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap()).unwrap()
    }

    #[test]
    fn root_elements() {
        let ms = mixed(GroupType::B);
        let g = &ms.group;
        let s = g.field.var(0);
        assert!(mixed_membership(&g.identity(), &ms).unwrap());
        for r in 0..g.nroots() {
            let x = g.root_element(r, &s);
            let expect = !g.roots[r].long;
            assert_eq!(mixed_membership(&x, &ms).unwrap(), expect);
            assert_eq!(mixed_membership_matrix(&x, &ms).unwrap(), expect);
        }
    }

    #[test]
    fn torus_sampler_refuses_long_values_outside_k() {
        let ms = mixed(GroupType::B);
        let s = ms.group.field.var(0);
        let one = ms.group.field.one();
        let mut v = vec![one.clone(), one];
        v[ms.long_simple[0]] = s;
        assert!(matches!(ms.tits_torus(&v), Err(GroupError::NotInGroup(_))));
    }

    #[test]
    fn words_and_perturbations() {
        for kind in [GroupType::B, GroupType::C] {
            let ms = mixed(kind);
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            for _ in 0..15 {
                let len = rng.gen_range(1..=8);
                let x = ms.random_word_with(&mut rng, len).unwrap();
                assert!(mixed_membership(&x, &ms).unwrap());
                let y = ms.perturb(&x, &mut rng).unwrap();
                assert!(!mixed_membership(&y, &ms).unwrap());
                if kind == GroupType::B {
                    assert!(mixed_membership_matrix(&x, &ms).unwrap());
                    assert!(!mixed_membership_matrix(&y, &ms).unwrap());
                }
            }
        }
    }

    #[test]
    fn slp_examples() {
        let mf = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let l = mf.l.clone();
        let s = l.var(0);
        let one = l.one();
        let zero = l.zero();
        let id = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]);
        assert!(mixed_slp_membership(&id, &mf).unwrap());
        let d = Mat::from_rows(vec![vec![s.clone(), zero.clone()], vec![zero.clone(), l.inv(&s).unwrap()]]);
        assert!(mixed_slp_membership(&d, &mf).unwrap());
        let u: Mat<Rat> = Mat::from_rows(vec![vec![one.clone(), s], vec![zero, one]]);
        assert!(!mixed_slp_membership(&u, &mf).unwrap());
    }
}
