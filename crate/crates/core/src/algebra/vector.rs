use super::matrix::{mat_mul, mat_rank, Mat};
use super::{AResult, AlgError};
use crate::fields::{Field, MixedField};

/// V_k = K^{n1}, V_ℓ = L^{n2}, with κ̂(v) = A·κ(v) and λ̂(w) = B·λ(w).
/// A is n2×n1 over L and B is n1×n2 over K.
#[derive(Clone, Debug)]
pub struct MixedVectorSpace<K: Field, L: Field> {
    pub base: MixedField<K, L>,
    pub n1: usize,
    pub n2: usize,
    pub kappa_mat: Mat<L::Elem>,
    pub lambda_mat: Mat<K::Elem>,
}

impl<K: Field, L: Field> MixedVectorSpace<K, L> {
    pub fn new(base: MixedField<K, L>, kappa_mat: Mat<L::Elem>, lambda_mat: Mat<K::Elem>) -> AResult<Self> {
        let (n1, n2) = (kappa_mat.cols, kappa_mat.rows);
        if lambda_mat.rows != n1 || lambda_mat.cols != n2 {
            return Err(AlgError::WrongImageCount { expected: n1 * n2, got: lambda_mat.rows * lambda_mat.cols });
        }
        Ok(MixedVectorSpace { base, n1, n2, kappa_mat, lambda_mat })
    }

    pub fn kappa_hat(&self, v: &[K::Elem]) -> Vec<L::Elem> {
        let l = &self.base.l;
        (0..self.n2)
            .map(|i| (0..self.n1).fold(l.zero(), |acc, j| l.add(&acc, &l.mul(self.kappa_mat.get(i, j), &self.base.kappa(&v[j])))))
            .collect()
    }

    pub fn lambda_hat(&self, w: &[L::Elem]) -> Vec<K::Elem> {
        let k = &self.base.k;
        (0..self.n1)
            .map(|i| (0..self.n2).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(self.lambda_mat.get(i, j), &self.base.lambda(&w[j])))))
            .collect()
    }

    /// (rank of κ̂ over ℓ, rank of λ̂ over k).
    pub fn partial_dims(&self) -> (usize, usize) {
        (mat_rank(&self.base.l, &self.kappa_mat), mat_rank(&self.base.k, &self.lambda_mat))
    }

    /// Matrices of λ̂∘κ̂ and κ̂∘λ̂ as Frobenius-semi-linear maps.
    pub fn composites(&self) -> (Mat<K::Elem>, Mat<L::Elem>) {
        let ka = self.kappa_mat.map(|x| self.base.lambda(x));
        let lb = self.lambda_mat.map(|x| self.base.kappa(x));
        (mat_mul(&self.base.k, &self.lambda_mat, &ka), mat_mul(&self.base.l, &self.kappa_mat, &lb))
    }
}

/// A mixed vector space whose composites equal a declared p-structure:
/// λ̂∘κ̂ = P₁∘Frob and κ̂∘λ̂ = P₂∘Frob.
#[derive(Clone, Debug)]
pub struct StrictMixedVectorSpace<K: Field, L: Field> {
    pub space: MixedVectorSpace<K, L>,
    pub p1: Mat<K::Elem>,
    pub p2: Mat<L::Elem>,
}

impl<K: Field, L: Field> StrictMixedVectorSpace<K, L> {
    pub fn new(space: MixedVectorSpace<K, L>, p1: Mat<K::Elem>, p2: Mat<L::Elem>) -> AResult<Self> {
        let (c1, c2) = space.composites();
        if c1 != p1 {
            return Err(AlgError::CompositionMismatch { side: "lambda∘kappa", generator: "basis".into() });
        }
        if c2 != p2 {
            return Err(AlgError::CompositionMismatch { side: "kappa∘lambda", generator: "basis".into() });
        }
        Ok(StrictMixedVectorSpace { space, p1, p2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat_identity, mat_zero};
    use crate::fields::FiniteField;

    #[test]
    fn partial_dims_examples() {
        let f = FiniteField::new(2, 2).unwrap();
        let m = MixedField::visible(&f);
        let zero = MixedVectorSpace::new(m.clone(), mat_zero(&f, 2, 2), mat_zero(&f, 2, 2)).unwrap();
        assert_eq!(zero.partial_dims(), (0, 0));
        let id = MixedVectorSpace::new(m.clone(), mat_identity(&f, 3), mat_identity(&f, 3)).unwrap();
        assert_eq!(id.partial_dims(), (3, 3));
        let diag = Mat::from_rows(vec![vec![1, 0], vec![0, 0]]);
        let v = MixedVectorSpace::new(m, diag, mat_identity(&f, 2)).unwrap();
        assert_eq!(v.partial_dims(), (1, 2));
    }

    #[test]
    fn identity_space_has_frobenius_p_structure() {
        let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap();
        let (k, l) = (m.k.clone(), m.l.clone());
        let v = MixedVectorSpace::new(m, mat_identity(&l, 2), mat_identity(&k, 2)).unwrap();
        let strict = StrictMixedVectorSpace::new(v.clone(), mat_identity(&k, 2), mat_identity(&l, 2));
        assert!(strict.is_ok());
        let x = vec![k.var(0), k.var(1)];
        let back = v.lambda_hat(&v.kappa_hat(&x));
        assert_eq!(back, x.iter().map(|a| k.frobenius(a)).collect::<Vec<_>>());
        let wrong = StrictMixedVectorSpace::new(v, mat_zero(&k, 2, 2), mat_identity(&l, 2));
        assert!(wrong.is_err());
    }
}
