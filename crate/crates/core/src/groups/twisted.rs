use super::{derived_table, square_is_frobenius, GResult, GroupError, GroupSpec, GroupType, Isogeny, RootTable, ENUMERATION_CAP};
use crate::algebra::{mat_inverse, mat_mul, Mat};
use crate::fields::{BlendedField, FieldHom, FiniteField};
use std::collections::{HashSet, VecDeque};

/// Samples used for the g∘g = Fr invariant.
pub const TWISTER_SAMPLES: usize = 50;

/// The graph endomorphism g of a rank-2 group with a Tits endomorphism θ of
/// the field; α(x) = g(θ⁻¹(x)) is the involution whose fixed points form the
/// twisted group.
#[derive(Clone, Debug)]
pub struct TwisterSpec {
    pub spec: GroupSpec<FiniteField>,
    pub blended: BlendedField<FiniteField>,
    pub g: Isogeny<FiniteField>,
    theta_inv: FieldHom<FiniteField, FiniteField>,
}

impl TwisterSpec {
    pub fn table(&self) -> &RootTable {
        &self.g.table
    }

    pub fn apply_g(&self, x: &Mat<u32>) -> GResult<Mat<u32>> {
        self.g.apply_matrix(x)
    }

    pub fn alpha(&self, x: &Mat<u32>) -> GResult<Mat<u32>> {
        self.g.apply_matrix(&x.map(|c| self.theta_inv.apply(c)))
    }

    pub fn is_fixed(&self, x: &Mat<u32>) -> GResult<bool> {
        Ok(&self.alpha(x)? == x)
    }
}

fn check_twistable(spec: &GroupSpec<FiniteField>, b: &BlendedField<FiniteField>) -> GResult<()> {
    if spec.rank != 2 {
        return Err(GroupError::UnsupportedType(format!("no graph endomorphism for {}", spec.label())));
    }
    if b.field != spec.field {
        return Err(GroupError::InvariantFailure("blended field differs from the group's field".into()));
    }
    Ok(())
}

/// g with the exponent table derived by search (see `derived_table`).
pub fn graph_twister(spec: &GroupSpec<FiniteField>, b: &BlendedField<FiniteField>) -> GResult<TwisterSpec> {
    check_twistable(spec, b)?;
    let table = derived_table(spec.kind)?;
    graph_twister_with_table(spec, b, table)
}

/// g with a caller-supplied table; the invariant g∘g = Fr is checked over
/// the group's field and over F_{p^5}, where it is never vacuous.
pub fn graph_twister_with_table(spec: &GroupSpec<FiniteField>, b: &BlendedField<FiniteField>, table: RootTable) -> GResult<TwisterSpec> {
    check_twistable(spec, b)?;
    let g = Isogeny::new(spec.clone(), spec.clone(), table.clone())?;
    let aux = GroupSpec::new(spec.kind, 2, FiniteField::new(spec.field.p() as u64, 5)?)?;
    let g_aux = Isogeny::new(aux.clone(), aux, table)?;
    if !square_is_frobenius(&g_aux, TWISTER_SAMPLES, 17).unwrap_or(false) || !square_is_frobenius(&g, TWISTER_SAMPLES, 19).unwrap_or(false) {
        return Err(GroupError::InvariantFailure("g∘g is not the Frobenius".into()));
    }
    Ok(TwisterSpec { spec: spec.clone(), blended: b.clone(), g, theta_inv: b.theta_inverse() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate the whole ambient group, keep the α-fixed elements.
    FullFilter,
    /// Close the α-fixed root-group elements under multiplication.
    GeneratorBfs,
}

#[derive(Clone, Debug)]
pub struct TwistedGroup {
    pub elements: Vec<Mat<u32>>,
    pub ambient: Option<usize>,
    pub generators: usize,
    pub closed: bool,
    pub fixed: bool,
}

impl TwistedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Everything reachable from the identity by right multiplication with `gens`.
pub fn bfs_closure(f: &FiniteField, identity: &Mat<u32>, gens: &[Mat<u32>], cap: usize) -> GResult<HashSet<Mat<u32>>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity.clone());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mat_mul(f, &x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::EnumerationBound { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// |G(F_q)| for the adjoint/simply connected rank-2 groups used here, as a
/// size guard before enumerating.
pub fn chevalley_order(kind: GroupType, q: u64) -> u128 {
    let q = q as u128;
    match kind {
        GroupType::B | GroupType::C => q.pow(4) * (q.pow(2) - 1) * (q.pow(4) - 1),
        GroupType::G2 => q.pow(6) * (q.pow(2) - 1) * (q.pow(6) - 1),
    }
}

pub fn ambient_group(spec: &GroupSpec<FiniteField>, cap: usize) -> GResult<HashSet<Mat<u32>>> {
    let f = &spec.field;
    if spec.rank == 2 && chevalley_order(spec.kind, f.order() as u64) > cap as u128 {
        return Err(GroupError::EnumerationBound { cap });
    }
    let params: Vec<u32> = if f.degree() == 1 { vec![1] } else { vec![1, f.primitive()] };
    let gens: Vec<Mat<u32>> = (0..spec.nroots()).flat_map(|r| params.iter().map(move |c| spec.root_element(r, c))).collect();
    bfs_closure(f, &spec.identity(), &gens, cap)
}

/// α-fixed elements of U(F_q) (or U⁻ when `negative`), by exhaustion over
/// the root parameters.
pub fn fixed_unipotents(tw: &TwisterSpec, negative: bool) -> GResult<Vec<Mat<u32>>> {
    let spec = &tw.spec;
    let q = spec.field.order();
    let roots: Vec<usize> = spec.positive.iter().map(|&r| if negative { spec.roots[r].neg } else { r }).collect();
    let total = (q as u64).checked_pow(roots.len() as u32).filter(|&t| t <= ENUMERATION_CAP as u64).ok_or(GroupError::EnumerationBound { cap: ENUMERATION_CAP })?;
    let mut out = vec![];
    for idx in 0..total {
        let mut rest = idx;
        let mut u = spec.identity();
        for &r in &roots {
            let c = (rest % q as u64) as u32;
            rest /= q as u64;
            if c != 0 {
                u = spec.root_mul_right(&u, r, &c);
            }
        }
        if tw.is_fixed(&u)? {
            out.push(u);
        }
    }
    Ok(out)
}

/// Membership of x·g for every generator and of x⁻¹, for every x.
fn closed_under(f: &FiniteField, set: &HashSet<Mat<u32>>, gens: &[Mat<u32>]) -> bool {
    set.iter().all(|x| gens.iter().all(|g| set.contains(&mat_mul(f, x, g))) && mat_inverse(f, x).is_some_and(|y| set.contains(&y)))
}

fn all_fixed(tw: &TwisterSpec, set: &HashSet<Mat<u32>>) -> GResult<bool> {
    for x in set {
        if !tw.is_fixed(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// {x : α(x) = x}, verified to be a subgroup of α-fixed elements.
pub fn twisted_points(tw: &TwisterSpec, strategy: Strategy, cap: usize) -> GResult<TwistedGroup> {
    let f = &tw.spec.field;
    match strategy {
        Strategy::FullFilter => {
            let ambient = ambient_group(&tw.spec, cap)?;
            let mut set = HashSet::new();
            for x in &ambient {
                if tw.is_fixed(x)? {
                    set.insert(x.clone());
                }
            }
            // every product, exhaustively
            let closed = set.iter().all(|x| set.iter().all(|y| set.contains(&mat_mul(f, x, y))))
                && set.iter().all(|x| mat_inverse(f, x).is_some_and(|y| set.contains(&y)));
            let elements: Vec<_> = set.into_iter().collect();
            Ok(TwistedGroup { generators: 0, ambient: Some(ambient.len()), closed, fixed: true, elements })
        }
        Strategy::GeneratorBfs => {
            let mut candidates: Vec<Mat<u32>> = fixed_unipotents(tw, false)?;
            candidates.extend(fixed_unipotents(tw, true)?);
            let id = tw.spec.identity();
            candidates.retain(|u| *u != id);
            // start small and add any fixed root-group element not yet reached
            let mut gens: Vec<Mat<u32>> = vec![];
            let mut set = HashSet::from([id.clone()]);
            while let Some(missing) = candidates.iter().find(|u| !set.contains(*u)) {
                gens.push(missing.clone());
                set = bfs_closure(f, &id, &gens, cap)?;
            }
            let closed = closed_under(f, &set, &gens);
            let fixed = all_fixed(tw, &set)?;
            let elements: Vec<_> = set.into_iter().collect();
            Ok(TwistedGroup { generators: gens.len(), ambient: None, closed, fixed, elements })
        }
    }
}

pub fn suzuki_ree(kind: GroupType, q: u32) -> GResult<TwisterSpec> {
    suzuki_ree_with(kind, q, None)
}

/// Exponents c ↦ c^p on every root: a table that cannot square to Frobenius.
pub fn corrupted_table(kind: GroupType) -> GResult<RootTable> {
    let mut t = derived_table(kind)?;
    t.exps = vec![kind.characteristic() as u64; t.exps.len()];
    Ok(t)
}

/// The twister over F_q, with an optional replacement exponent table.
pub fn suzuki_ree_with(kind: GroupType, q: u32, table: Option<RootTable>) -> GResult<TwisterSpec> {
    let p = kind.characteristic() as u64;
    let mut n = 0;
    let mut m = 1u32;
    while m < q {
        m *= p as u32;
        n += 1;
    }
    if m != q || n == 0 {
        return Err(GroupError::UnsupportedType(format!("q = {q} is not a power of {p}")));
    }
    let f = FiniteField::new(p, n)?;
    let b = crate::fields::tits_endomorphism(&f)?;
    let spec = GroupSpec::new(kind, 2, f)?;
    match table {
        Some(t) => graph_twister_with_table(&spec, &b, t),
        None => graph_twister(&spec, &b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    #[test]
    fn twister_invariants() {
        let tw = suzuki_ree(GroupType::C, 8).unwrap();
        let spec = &tw.spec;
        for r in 0..spec.nroots() {
            assert_eq!(tw.apply_g(&spec.root_element(r, &0)).unwrap(), spec.identity());
            for c in 1..8u32 {
                let u = spec.root_element(r, &c);
                let gg = tw.apply_g(&tw.apply_g(&u).unwrap()).unwrap();
                assert_eq!(gg, spec.root_element(r, &spec.field.frobenius(&c)));
            }
        }
        // positive unipotents stay unipotent upper triangular
        for &r in &spec.positive {
            let img = tw.apply_g(&spec.root_element(r, &3)).unwrap();
            assert!((0..spec.dim).all(|i| img.get(i, i) == &1 && (0..i).all(|j| img.get(i, j) == &0)));
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let tw = suzuki_ree(GroupType::C, 8).unwrap();
        let mut bad = tw.table().clone();
        bad.exps = vec![2; bad.exps.len()];
        assert!(matches!(graph_twister_with_table(&tw.spec, &tw.blended, bad), Err(GroupError::InvariantFailure(_))));
    }

    #[test]
    fn suzuki_2_by_full_filter() {
        let tw = suzuki_ree(GroupType::C, 2).unwrap();
        let g = twisted_points(&tw, Strategy::FullFilter, ENUMERATION_CAP).unwrap();
        assert_eq!(g.ambient, Some(720));
        assert_eq!(g.order(), 20);
        assert!(g.closed && g.fixed);
        let h = twisted_points(&tw, Strategy::GeneratorBfs, ENUMERATION_CAP).unwrap();
        assert_eq!(h.order(), 20);
    }

    #[test]
    fn enumeration_bound() {
        let tw = suzuki_ree(GroupType::C, 8).unwrap();
        assert!(matches!(twisted_points(&tw, Strategy::FullFilter, ENUMERATION_CAP), Err(GroupError::EnumerationBound { .. })));
        assert!(matches!(twisted_points(&tw, Strategy::GeneratorBfs, 1000), Err(GroupError::EnumerationBound { .. })));
    }

    #[test]
    fn even_degree_has_no_tits_endomorphism() {
        assert!(suzuki_ree(GroupType::C, 4).is_err());
    }
}
