use super::{mixed_membership, GResult, GroupError, GroupType, MixedGroupSpec};
use crate::algebra::Mat;
use crate::fields::{Field, FunctionField, MixedField, Preimages, Rat, Subfield};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

type FF = FunctionField;

/// ℓ = ⊕_{i<p} k·s^i as a k-vector space, for k = κ(K) cut out by ∂/∂s.
/// Coordinates live in K.
#[derive(Clone, Debug)]
pub struct WeilRestriction {
    pub mixed: MixedField<FF, FF>,
    pub var: usize,
    pub p: u32,
    /// κ⁻¹(s^p)
    sigma: Rat,
}

impl WeilRestriction {
    pub fn new(mixed: &MixedField<FF, FF>) -> GResult<Self> {
        let var = match &mixed.subfield {
            Subfield::Derivations(v) if v.len() == 1 => v[0],
            _ => return Err(GroupError::InfiniteDegree),
        };
        let l = &mixed.l;
        let p = l.characteristic();
        let sp = l.pow(&l.var(var), p as u64);
        let sigma = mixed.kappa_preimage(&sp).ok_or(GroupError::InfiniteDegree)?;
        Ok(WeilRestriction { mixed: mixed.clone(), var, p, sigma })
    }

    pub fn degree(&self) -> usize {
        self.p as usize
    }

    /// (c_0, …, c_{p-1}) with y = Σ κ(c_i)·s^i, read off top-down from
    /// ∂^i y = i!·κ(c_i) on the residual.
    pub fn k_coords(&self, y: &Rat) -> GResult<Vec<Rat>> {
        let l = &self.mixed.l;
        let s = l.var(self.var);
        let mut rest = y.clone();
        let mut out = vec![self.mixed.k.zero(); self.degree()];
        for i in (0..self.degree()).rev() {
            let mut d = rest.clone();
            let mut fact = 1i64;
            for j in 1..=i {
                d = l.partial(&d, self.var).unwrap();
                fact *= j as i64;
            }
            let c = l.div(&d, &l.from_i64(fact)).unwrap();
            out[i] = self.mixed.kappa_preimage(&c).ok_or_else(|| GroupError::InvariantFailure("k-coordinate outside κ(K)".into()))?;
            rest = l.sub(&rest, &l.mul(&c, &l.pow(&s, i as u64)));
        }
        if !l.is_zero(&rest) {
            return Err(GroupError::InvariantFailure("residual after k-coordinate extraction".into()));
        }
        Ok(out)
    }

    pub fn from_k_coords(&self, c: &[Rat]) -> Rat {
        let l = &self.mixed.l;
        let s = l.var(self.var);
        c.iter().enumerate().fold(l.zero(), |acc, (i, x)| l.add(&acc, &l.mul(&self.mixed.kappa(x), &l.pow(&s, i as u64))))
    }

    pub fn add(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let k = &self.mixed.k;
        a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
    }

    /// Product in K[S]/(S^p − σ).
    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let k = &self.mixed.k;
        let d = self.degree();
        let mut out = vec![k.zero(); d];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let mut t = k.mul(x, y);
                if i + j >= d {
                    t = k.mul(&t, &self.sigma);
                }
                out[(i + j) % d] = k.add(&out[(i + j) % d], &t);
            }
        }
        out
    }

    fn constant(&self, c: i64) -> Vec<Rat> {
        let k = &self.mixed.k;
        let mut v = vec![k.zero(); self.degree()];
        v[0] = k.from_i64(c);
        v
    }

    pub fn point(&self, h: &Mat<Rat>) -> GResult<Mat<Vec<Rat>>> {
        let data = h.data.iter().map(|y| self.k_coords(y)).collect::<GResult<Vec<_>>>()?;
        Ok(Mat { rows: h.rows, cols: h.cols, data })
    }
}

/// A point of R_{ℓ/k}(Sp_{2n}) in k-coordinates lies in 𝒢 = f⁻¹(SO_{2n+1}(k))
/// iff it is symplectic and every entry of its image under the dual
/// isogeny has vanishing s-parts.
pub fn exotic_membership(coords: &Mat<Vec<Rat>>, w: &WeilRestriction) -> GResult<bool> {
    if w.p != 2 || coords.rows != coords.cols || coords.rows % 2 != 0 {
        return Err(GroupError::UnsupportedType("exotic points need Sp_2n in characteristic 2".into()));
    }
    let k = &w.mixed.k;
    let dim = coords.rows;
    let n = dim / 2;
    let zero = w.constant(0);
    let gram = |i: usize, j: usize| -> Vec<Rat> {
        if i < n && j == dim - 1 - i {
            w.constant(1)
        } else if i >= n && j == dim - 1 - i {
            w.constant(-1)
        } else {
            zero.clone()
        }
    };
    // hᵀ J h = J
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = zero.clone();
            for i in 0..dim {
                let j = dim - 1 - i;
                let t = w.mul(&w.mul(coords.get(i, a), &gram(i, j)), coords.get(j, b));
                acc = w.add(&acc, &t);
            }
            if acc != gram(a, b) {
                return Err(GroupError::FormNotPreserved);
            }
        }
    }
    let rational = |v: &[Rat]| v[1..].iter().all(|x| k.is_zero(x));
    for j in 0..dim {
        let mut q = zero.clone();
        for i in 0..n {
            q = w.add(&q, &w.mul(coords.get(i, j), coords.get(dim - 1 - i, j)));
        }
        if !rational(&q) {
            return Ok(false);
        }
        for i in 0..dim {
            if !rational(&w.mul(coords.get(i, j), coords.get(i, j))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExoticReport {
    pub members: usize,
    pub nonmembers: usize,
    pub member_agree: usize,
    pub nonmember_agree: usize,
}

impl ExoticReport {
    pub fn all_agree(&self) -> bool {
        self.member_agree == self.members && self.nonmember_agree == self.nonmembers
    }
}

/// Both predicates on labeled samples: Tits-generator words (members) and
/// their long-root perturbations by c ∉ k (non-members).
pub fn exotic_agreement(ms: &MixedGroupSpec<FF, FF>, samples: usize, max_len: usize, seed: u64) -> GResult<ExoticReport> {
    if ms.group.kind != GroupType::C {
        return Err(GroupError::UnsupportedType("exotic points are realized on Sp_2n".into()));
    }
    let w = WeilRestriction::new(&ms.field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ExoticReport::default();
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let x = ms.random_word_with(&mut rng, len)?;
        let y = ms.perturb(&x, &mut rng)?;
        for (g, label) in [(x, true), (y, false)] {
            let a = mixed_membership(&g, ms)?;
            let b = exotic_membership(&w.point(&g)?, &w)?;
            let ok = a == label && b == label;
            if label {
                rep.members += 1;
                rep.member_agree += ok as usize;
            } else {
                rep.nonmembers += 1;
                rep.nonmember_agree += ok as usize;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf() -> MixedField<FF, FF> {
        MixedField::inseparable(2, &["a", "t"], &["s", "t"]).unwrap()
    }

    #[test]
    fn k_coordinates_round_trip() {
        let w = WeilRestriction::new(&mf()).unwrap();
        let l = w.mixed.l.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let x = l.sample(&mut rng);
            let y = l.sample(&mut rng);
            let (cx, cy) = (w.k_coords(&x).unwrap(), w.k_coords(&y).unwrap());
            assert_eq!(w.from_k_coords(&cx), x);
            assert_eq!(w.from_k_coords(&w.mul(&cx, &cy)), l.mul(&x, &y));
        }
    }

    #[test]
    fn identity_and_samples() {
        let ms = MixedGroupSpec::new(GroupType::C, 2, mf()).unwrap();
        let w = WeilRestriction::new(&ms.field).unwrap();
        assert!(exotic_membership(&w.point(&ms.group.identity()).unwrap(), &w).unwrap());
        let rep = exotic_agreement(&ms, 15, 8, 3).unwrap();
        assert!(rep.all_agree(), "{rep:?}");
    }

    #[test]
    fn undeclared_degree() {
        let mut m = mf();
        m.subfield = Subfield::Undeclared;
        assert!(matches!(WeilRestriction::new(&m), Err(GroupError::InfiniteDegree)));
    }
}
