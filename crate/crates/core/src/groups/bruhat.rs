use super::{GResult, GroupError, GroupSpec};
use crate::algebra::{mat_mul, Mat};
use crate::fields::Field;

/// x = ∏ x_r(c_r) · n(σ) · h(t) · ∏_{r ∈ Φ_σ} x_r(d_r), with σ given by its
/// reduced word in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatForm<E> {
    pub lead: Vec<(usize, E)>,
    pub word: Vec<usize>,
    pub torus: Vec<E>,
    pub trail: Vec<(usize, E)>,
}

impl<E: Clone> BruhatForm<E> {
    pub fn map_params(&self, f: impl Fn(&E) -> E) -> Self {
        BruhatForm {
            lead: self.lead.iter().map(|(r, c)| (*r, f(c))).collect(),
            word: self.word.clone(),
            torus: self.torus.iter().map(&f).collect(),
            trail: self.trail.iter().map(|(r, c)| (*r, f(c))).collect(),
        }
    }

    /// Every parameter and torus coordinate, in order.
    pub fn params(&self) -> Vec<E> {
        let mut out: Vec<E> = self.lead.iter().map(|x| x.1.clone()).collect();
        out.extend(self.torus.iter().cloned());
        out.extend(self.trail.iter().map(|x| x.1.clone()));
        out
    }
}

impl<F: Field> GroupSpec<F> {
    /// Multiplies the factors of a form back together.
    pub fn assemble(&self, form: &BruhatForm<F::Elem>) -> GResult<Mat<F::Elem>> {
        let f = &self.field;
        let mut m = self.identity();
        for (r, c) in &form.lead {
            m = self.root_mul_right(&m, *r, c);
        }
        m = mat_mul(f, &m, &self.word_matrix(&form.word));
        m = mat_mul(f, &m, &self.torus(&form.torus)?);
        for (r, c) in &form.trail {
            m = self.root_mul_right(&m, *r, c);
        }
        Ok(m)
    }
}

fn not_in_group(why: &str) -> GroupError {
    GroupError::NotInGroup(why.into())
}

/// Unique normal form of a group element for the fixed root order and
/// Weyl representatives.
///
/// Bottom-up row reduction by upper unitriangular operations writes
/// g = u₁·m·u₂ with m monomial and m·u₂·m⁻¹ lower triangular; uniqueness of
/// that decomposition in GL_n makes it the group's own Bruhat form.
pub fn bruhat_decompose<F: Field>(g: &Mat<F::Elem>, spec: &GroupSpec<F>) -> GResult<BruhatForm<F::Elem>> {
    let f = &spec.field;
    if !spec.preserves_form(g) {
        return Err(not_in_group("the defining form is not preserved"));
    }
    let n = spec.dim;
    let mut y = g.clone();
    let mut u1 = spec.identity();
    let mut sigma = vec![0; n];
    for i in (0..n).rev() {
        let piv = (0..n).find(|&c| !f.is_zero(y.get(i, c))).ok_or_else(|| not_in_group("singular"))?;
        sigma[i] = piv;
        let pinv = f.inv(y.get(i, piv)).unwrap();
        for j in 0..i {
            if f.is_zero(y.get(j, piv)) {
                continue;
            }
            let c = f.mul(y.get(j, piv), &pinv);
            for col in piv..n {
                let v = f.sub(y.get(j, col), &f.mul(&c, y.get(i, col)));
                y.set(j, col, v);
            }
            for row in 0..n {
                let x = u1.get(row, j);
                if !f.is_zero(x) {
                    let v = f.add(u1.get(row, i), &f.mul(&c, x));
                    u1.set(row, i, v);
                }
            }
        }
    }
    let mut perm = vec![usize::MAX; n];
    for i in 0..n {
        if perm[sigma[i]] != usize::MAX {
            return Err(not_in_group("singular"));
        }
        perm[sigma[i]] = i;
    }
    let w = spec.weyl_index(&perm).ok_or_else(|| not_in_group("monomial part is not a Weyl representative"))?;
    let rep = &spec.weyl[w].rep;
    // t = n_w⁻¹·m, diagonal
    let mut coords_mat = spec.identity();
    for j in 0..n {
        let i = perm[j];
        let v = f.div(y.get(i, j), rep.get(i, j)).unwrap();
        coords_mat.set(j, j, v);
    }
    let coords = spec.torus_coords(&coords_mat);
    if spec.torus(&coords)? != coords_mat {
        return Err(not_in_group("torus part is off the maximal torus"));
    }
    let mut u2 = spec.identity();
    for i in 0..n {
        let pinv = f.inv(y.get(i, sigma[i])).unwrap();
        for col in 0..n {
            u2.set(sigma[i], col, f.mul(y.get(i, col), &pinv));
        }
    }
    let lead_params = spec.peel(&u1, &spec.positive).ok_or_else(|| not_in_group("leading unipotent part"))?;
    let trail_params = spec.peel(&u2, &spec.positive).ok_or_else(|| not_in_group("trailing unipotent part"))?;
    let inv = spec.inversion_set(w);
    let mut trail = vec![];
    for (k, &r) in spec.positive.iter().enumerate() {
        if inv.contains(&r) {
            trail.push((r, trail_params[k].clone()));
        } else if !f.is_zero(&trail_params[k]) {
            return Err(not_in_group("trailing part leaves the inversion set"));
        }
    }
    Ok(BruhatForm {
        lead: spec.positive.iter().copied().zip(lead_params).collect(),
        word: spec.weyl[w].word.clone(),
        torus: coords,
        trail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};
    use crate::groups::GroupType;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn specs() -> Vec<GroupSpec<FiniteField>> {
        vec![
            GroupSpec::new(GroupType::B, 2, FiniteField::new(2, 3).unwrap()).unwrap(),
            GroupSpec::new(GroupType::C, 2, FiniteField::new(2, 4).unwrap()).unwrap(),
            GroupSpec::new(GroupType::B, 3, FiniteField::new(2, 2).unwrap()).unwrap(),
            GroupSpec::new(GroupType::G2, 2, FiniteField::new(3, 2).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn identity_and_longest_element() {
        for g in specs() {
            let f = &g.field;
            let id = bruhat_decompose(&g.identity(), &g).unwrap();
            assert!(id.word.is_empty() && id.trail.is_empty());
            assert!(id.lead.iter().all(|(_, c)| f.is_zero(c)));
            assert!(id.torus.iter().all(|c| f.is_one(c)));
            let w0 = g.longest_element();
            let form = bruhat_decompose(&g.weyl[w0].rep, &g).unwrap();
            assert_eq!(form.word, g.weyl[w0].word);
            assert!(form.lead.iter().chain(&form.trail).all(|(_, c)| f.is_zero(c)));
            assert!(form.torus.iter().all(|c| f.is_one(c)));
            assert_eq!(form.trail.len(), g.positive.len());
        }
    }

    #[test]
    fn round_trip_and_uniqueness() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in specs() {
            for _ in 0..40 {
                let x = g.random_element(&mut rng, 8);
                let form = bruhat_decompose(&x, &g).unwrap();
                assert_eq!(g.assemble(&form).unwrap(), x);
                // a form built from the decomposition re-decomposes to itself
                assert_eq!(bruhat_decompose(&g.assemble(&form).unwrap(), &g).unwrap(), form);
            }
        }
    }

    #[test]
    fn function_field_round_trip() {
        let f = FunctionField::new(2, &["s", "t"]).unwrap();
        let g = GroupSpec::new(GroupType::B, 2, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = g.random_element(&mut rng, 6);
            let form = bruhat_decompose(&x, &g).unwrap();
            assert_eq!(g.assemble(&form).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_members() {
        let g = &specs()[0];
        let mut x = g.identity();
        x.set(0, 1, 1);
        assert!(matches!(bruhat_decompose(&x, g), Err(GroupError::NotInGroup(_))));
    }
}
