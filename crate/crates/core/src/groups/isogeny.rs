use super::{bruhat_decompose, BruhatForm, GResult, GroupError, GroupSpec, GroupType};
use crate::algebra::{mat_mul, Mat};
use crate::fields::{Field, FiniteField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn require_kind<F: Field>(spec: &GroupSpec<F>, kind: GroupType) -> GResult<()> {
    if spec.kind != kind {
        return Err(GroupError::UnsupportedType(format!("expected type {:?}, got {}", kind, spec.label())));
    }
    Ok(())
}

/// SO_{2n+1} → Sp_{2n} in characteristic 2: the action on V/V⊥ in the basis
/// of non-radical standard vectors, i.e. g with the e₀ row and column removed.
pub fn vsi_matrix_b_to_c<F: Field>(g: &Mat<F::Elem>, b: &GroupSpec<F>) -> GResult<Mat<F::Elem>> {
    require_kind(b, GroupType::B)?;
    if !b.preserves_form(g) {
        return Err(GroupError::FormNotPreserved);
    }
    let z = b.rank;
    let keep: Vec<usize> = (0..b.dim).filter(|&i| i != z).collect();
    Ok(Mat::from_rows(keep.iter().map(|&i| keep.iter().map(|&j| g.get(i, j).clone()).collect()).collect()))
}

/// Sp_{2n} → SO_{2n+1}: entrywise squares on V/V⊥ and the e₀ row forced by
/// q(g e_j) = 0, which in characteristic 2 is Σ_i h_{i,j}·h_{i',j}.
pub fn vsi_matrix_c_to_b<F: Field>(h: &Mat<F::Elem>, c: &GroupSpec<F>) -> GResult<Mat<F::Elem>> {
    require_kind(c, GroupType::C)?;
    if !c.preserves_form(h) {
        return Err(GroupError::FormNotPreserved);
    }
    let f = &c.field;
    let n = c.rank;
    let dim = 2 * n + 1;
    let z = n;
    let lift = |i: usize| if i < n { i } else { i + 1 };
    let mut g = Mat { rows: dim, cols: dim, data: vec![f.zero(); dim * dim] };
    g.set(z, z, f.one());
    for j in 0..2 * n {
        for i in 0..2 * n {
            g.set(lift(i), lift(j), f.square(h.get(i, j)));
        }
        let q = (0..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(h.get(i, j), h.get(2 * n - 1 - i, j))));
        g.set(z, lift(j), q);
    }
    Ok(g)
}

/// Root r ↦ roots[r] with parameter c ↦ signs[r]·c^{exps[r]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTable {
    pub roots: Vec<usize>,
    pub exps: Vec<u64>,
    pub signs: Vec<i64>,
}

/// A map of Chevalley groups given on Bruhat coordinates.
#[derive(Clone, Debug)]
pub struct Isogeny<F: Field> {
    pub src: GroupSpec<F>,
    pub dst: GroupSpec<F>,
    pub table: RootTable,
    /// Image of each simple root, as an index into `dst.simple`.
    pub simple: Vec<usize>,
}

impl<F: Field> Isogeny<F> {
    pub fn new(src: GroupSpec<F>, dst: GroupSpec<F>, table: RootTable) -> GResult<Self> {
        let simple = src
            .simple
            .iter()
            .map(|&s| dst.simple.iter().position(|&d| d == table.roots[s]))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GroupError::InvariantFailure("root pairing does not preserve simple roots".into()))?;
        Ok(Isogeny { src, dst, table, simple })
    }

    fn map_param(&self, r: usize, c: &F::Elem) -> F::Elem {
        let f = &self.dst.field;
        let v = f.pow(c, self.table.exps[r]);
        if self.table.signs[r] < 0 {
            f.neg(&v)
        } else {
            v
        }
    }

    /// Coordinates mapped factor by factor; the root order is that of the
    /// source, so the result is a product expression, not a normal form.
    pub fn apply(&self, form: &BruhatForm<F::Elem>) -> GResult<BruhatForm<F::Elem>> {
        let f = &self.dst.field;
        let vals = self.src.simple_values(&form.torus);
        let mut target = vec![f.one(); self.dst.rank];
        for (i, v) in vals.iter().enumerate() {
            target[self.simple[i]] = f.pow(v, self.table.exps[self.src.simple[i]]);
        }
        let map_list = |l: &[(usize, F::Elem)]| l.iter().map(|(r, c)| (self.table.roots[*r], self.map_param(*r, c))).collect();
        Ok(BruhatForm {
            lead: map_list(&form.lead),
            word: form.word.iter().map(|&i| self.simple[i]).collect(),
            torus: self.dst.torus_from_values(&target)?,
            trail: map_list(&form.trail),
        })
    }

    pub fn apply_matrix(&self, g: &Mat<F::Elem>) -> GResult<Mat<F::Elem>> {
        let form = bruhat_decompose(g, &self.src)?;
        self.dst.assemble(&self.apply(&form)?)
    }
}

fn euclidean<F: Field>(spec: &GroupSpec<F>, r: usize) -> Vec<f64> {
    let v = &spec.roots[r].vec;
    match spec.kind {
        GroupType::B | GroupType::C => v.iter().map(|&x| x as f64).collect(),
        GroupType::G2 => {
            // x·ε₁ + y·ε₂ projected to the trace-zero plane
            let (x, y) = (v[0] as f64, v[1] as f64);
            vec![(2.0 * x - y) / 3.0, (2.0 * y - x) / 3.0, -(x + y) / 3.0]
        }
    }
}

fn unit_vec(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn nearest<F: Field>(spec: &GroupSpec<F>, dir: &[f64]) -> GResult<usize> {
    let d = unit_vec(dir);
    (0..spec.nroots())
        .find(|&r| dot(&unit_vec(&euclidean(spec, r)), &d) > 0.999)
        .ok_or_else(|| GroupError::InvariantFailure("no root in the image direction".into()))
}

/// The pairing r ↦ r̄: same direction between B_n and C_n; for a type paired
/// with itself, the reflection exchanging the two simple-root directions.
pub fn root_pairing<F: Field>(src: &GroupSpec<F>, dst: &GroupSpec<F>) -> GResult<Vec<usize>> {
    if src.rank != dst.rank {
        return Err(GroupError::UnsupportedType("ranks differ".into()));
    }
    match (src.kind, dst.kind) {
        (GroupType::B, GroupType::C) | (GroupType::C, GroupType::B) => (0..src.nroots()).map(|r| nearest(dst, &euclidean(src, r))).collect(),
        (a, b) if a == b && src.rank == 2 => {
            let u1 = unit_vec(&euclidean(src, src.simple[0]));
            let u2 = unit_vec(&euclidean(src, src.simple[1]));
            let axis = unit_vec(&u1.iter().zip(&u2).map(|(x, y)| x + y).collect::<Vec<_>>());
            (0..src.nroots())
                .map(|r| {
                    let v = euclidean(src, r);
                    let k = 2.0 * dot(&v, &axis);
                    let img: Vec<f64> = v.iter().zip(&axis).map(|(x, a)| k * a - x).collect();
                    nearest(dst, &img)
                })
                .collect()
        }
        _ => Err(GroupError::UnsupportedType(format!("no very special isogeny {} → {}", src.label(), dst.label()))),
    }
}

/// s_r = p on short roots and 1 on long roots.
pub fn length_exponents<F: Field>(spec: &GroupSpec<F>) -> Vec<u64> {
    let p = spec.field.characteristic() as u64;
    spec.roots.iter().map(|r| if r.long { 1 } else { p }).collect()
}

/// Signs ε_r with ε on simple roots normalized to 1 and ε_{-r} = ε_r, indexed
/// by the non-simple positive roots.
fn sign_candidates<F: Field>(spec: &GroupSpec<F>) -> Vec<Vec<i64>> {
    if spec.field.characteristic() == 2 {
        return vec![vec![1; spec.nroots()]];
    }
    let free: Vec<usize> = spec.positive.iter().copied().filter(|r| !spec.simple.contains(r)).collect();
    (0..1u32 << free.len())
        .map(|mask| {
            let mut s = vec![1; spec.nroots()];
            for (k, &r) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s[r] = -1;
                    s[spec.roots[r].neg] = -1;
                }
            }
            s
        })
        .collect()
}

/// Whether g(g(x)) equals the entrywise Frobenius of x on `samples` random
/// elements, with g = `map` from a group to itself.
pub fn square_is_frobenius<F: Field>(map: &Isogeny<F>, samples: usize, seed: u64) -> GResult<bool> {
    let f = &map.src.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = map.src.random_element(&mut rng, 8);
        let gg = map.apply_matrix(&map.apply_matrix(&x)?)?;
        if gg != x.map(|c| f.frobenius(c)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tables r ↦ r̄ with exponent c^p on one root length and c on the other
/// and every sign pattern, kept when g∘g = Frobenius on random elements.
pub fn derive_tables<F: Field>(spec: &GroupSpec<F>, samples: usize, seed: u64) -> GResult<Vec<RootTable>> {
    let roots = root_pairing(spec, spec)?;
    let p = spec.field.characteristic() as u64;
    let mut out = vec![];
    for (short_e, long_e) in [(p, 1), (1, p)] {
        let exps: Vec<u64> = spec.roots.iter().map(|r| if r.long { long_e } else { short_e }).collect();
        for signs in sign_candidates(spec) {
            let table = RootTable { roots: roots.clone(), exps: exps.clone(), signs };
            let map = Isogeny::new(spec.clone(), spec.clone(), table.clone())?;
            match square_is_frobenius(&map, samples, seed) {
                Ok(true) => out.push(table),
                Ok(false) | Err(GroupError::NotInGroup(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// The unique table found by `derive_tables` over F_{p^5}, where c^p and c
/// are distinguishable.
pub fn derived_table(kind: GroupType) -> GResult<RootTable> {
    let f = FiniteField::new(kind.characteristic() as u64, 5)?;
    let spec = GroupSpec::new(kind, 2, f)?;
    let tables = derive_tables(&spec, 12, 11)?;
    match tables.len() {
        1 => Ok(tables.into_iter().next().unwrap()),
        n => Err(GroupError::InvariantFailure(format!("{n} exponent tables satisfy g∘g = Fr for {}", spec.label()))),
    }
}

/// π: src → dst with r ↦ r̄ and c ↦ c^{s_r}; the G₂ signs come from the
/// derived table.
pub fn very_special_isogeny<F: Field>(src: &GroupSpec<F>, dst: &GroupSpec<F>) -> GResult<Isogeny<F>> {
    let roots = root_pairing(src, dst)?;
    let exps = length_exponents(src);
    let signs = if src.kind == GroupType::G2 {
        let t = derived_table(GroupType::G2)?;
        if t.exps != exps {
            return Err(GroupError::InvariantFailure("derived G2 exponents disagree with s_r".into()));
        }
        t.signs
    } else {
        vec![1; src.nroots()]
    };
    Isogeny::new(src.clone(), dst.clone(), RootTable { roots, exps, signs })
}

pub fn vsi_on_bruhat<F: Field>(form: &BruhatForm<F::Elem>, src: &GroupSpec<F>, dst: &GroupSpec<F>) -> GResult<BruhatForm<F::Elem>> {
    very_special_isogeny(src, dst)?.apply(form)
}

/// π̄∘π on the normal form of x compared with the Frobenius of every
/// coordinate; `None` on agreement, else the offending form.
pub fn double_application_check<F: Field>(there: &Isogeny<F>, back: &Isogeny<F>, x: &Mat<F::Elem>) -> GResult<bool> {
    let f = &there.src.field;
    let form = bruhat_decompose(x, &there.src)?;
    let twice = back.apply(&there.apply(&form)?)?;
    Ok(twice == form.map_params(|c| f.frobenius(c)))
}

/// Matrix-level and Bruhat-level B → C agree after re-decomposition.
pub fn b_to_c_routes_agree<F: Field>(iso: &Isogeny<F>, x: &Mat<F::Elem>) -> GResult<bool> {
    let by_matrix = vsi_matrix_b_to_c(x, &iso.src)?;
    let by_form = iso.dst.assemble(&iso.apply(&bruhat_decompose(x, &iso.src)?)?)?;
    Ok(bruhat_decompose(&by_matrix, &iso.dst)? == bruhat_decompose(&by_form, &iso.dst)?)
}

pub fn is_multiplicative_b_to_c<F: Field>(b: &GroupSpec<F>, x: &Mat<F::Elem>, y: &Mat<F::Elem>) -> GResult<bool> {
    let f = &b.field;
    let lhs = vsi_matrix_b_to_c(&mat_mul(f, x, y), b)?;
    let rhs = mat_mul(f, &vsi_matrix_b_to_c(x, b)?, &vsi_matrix_b_to_c(y, b)?);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;

    fn pair(n: u32) -> (GroupSpec<FiniteField>, GroupSpec<FiniteField>) {
        let f = FiniteField::new(2, n).unwrap();
        (GroupSpec::new(GroupType::B, 2, f.clone()).unwrap(), GroupSpec::new(GroupType::C, 2, f).unwrap())
    }

    #[test]
    fn matrix_isogenies() {
        let (b, c) = pair(3);
        let f = b.field.clone();
        assert_eq!(vsi_matrix_b_to_c(&b.identity(), &b).unwrap(), c.identity());
        // torus diag(λ, μ, 1, μ⁻¹, λ⁻¹) ↦ diag(λ, μ, μ⁻¹, λ⁻¹)
        let t = b.torus(&[3, 5]).unwrap();
        assert_eq!(vsi_matrix_b_to_c(&t, &b).unwrap(), c.torus(&[3, 5]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let x = b.random_element(&mut rng, 6);
            let y = b.random_element(&mut rng, 6);
            assert!(is_multiplicative_b_to_c(&b, &x, &y).unwrap());
            let h = vsi_matrix_b_to_c(&x, &b).unwrap();
            assert!(c.preserves_form(&h));
            let back = vsi_matrix_c_to_b(&h, &c).unwrap();
            assert_eq!(back, x.map(|v| f.square(v)));
            let z = c.random_element(&mut rng, 6);
            let zz = vsi_matrix_b_to_c(&vsi_matrix_c_to_b(&z, &c).unwrap(), &b).unwrap();
            assert_eq!(zz, z.map(|v| f.square(v)));
        }
        let mut bad = b.identity();
        bad.set(0, 1, 1);
        bad.set(1, 0, 1);
        assert!(matches!(vsi_matrix_b_to_c(&bad, &b), Err(GroupError::FormNotPreserved)));
    }

    #[test]
    fn root_level_exponents() {
        let (b, c) = pair(4);
        let iso = very_special_isogeny(&b, &c).unwrap();
        let long = b.root_index("e1-e2").unwrap();
        let short = b.root_index("e2").unwrap();
        let form = bruhat_decompose(&b.root_element(long, &7), &b).unwrap();
        let img = iso.apply(&form).unwrap();
        assert!(img.lead.contains(&(c.root_index("e1-e2").unwrap(), 7)));
        let form = bruhat_decompose(&b.root_element(short, &7), &b).unwrap();
        let img = iso.apply(&form).unwrap();
        assert!(img.lead.contains(&(c.root_index("2e2").unwrap(), b.field.square(&7))));
        assert!(!c.roots[c.root_index("e1-e2").unwrap()].long);
    }

    #[test]
    fn bruhat_and_matrix_routes_agree() {
        let (b, c) = pair(5);
        let there = very_special_isogeny(&b, &c).unwrap();
        let back = very_special_isogeny(&c, &b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x = b.random_element(&mut rng, 8);
            assert!(b_to_c_routes_agree(&there, &x).unwrap());
            assert!(double_application_check(&there, &back, &x).unwrap());
            let y = c.random_element(&mut rng, 8);
            assert!(double_application_check(&back, &there, &y).unwrap());
        }
    }

    #[test]
    fn derived_tables_are_unique() {
        let t = derived_table(GroupType::C).unwrap();
        let c = GroupSpec::new(GroupType::C, 2, FiniteField::new(2, 1).unwrap()).unwrap();
        assert_eq!(t.exps, length_exponents(&c));
        let g = derived_table(GroupType::G2).unwrap();
        let s = GroupSpec::new(GroupType::G2, 2, FiniteField::new(3, 1).unwrap()).unwrap();
        assert_eq!(g.exps, length_exponents(&s));
        let a = s.root_index("a").unwrap();
        let b = s.root_index("b").unwrap();
        assert_eq!(g.roots[a], b);
        assert_eq!(g.roots[b], a);
    }

    #[test]
    fn g2_double_application() {
        let f = FiniteField::new(3, 3).unwrap();
        let g = GroupSpec::new(GroupType::G2, 2, f).unwrap();
        let iso = very_special_isogeny(&g, &g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let x = g.random_element(&mut rng, 8);
            assert!(double_application_check(&iso, &iso, &x).unwrap());
        }
    }
}
