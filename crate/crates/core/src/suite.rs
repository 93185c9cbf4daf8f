//! The thirteen acceptance criteria, each with its time bound.

use crate::algebra::{
    affine_plane_twisted, jacobian, jacobian_is_zero, mixed_affine_plane, mixed_quadric, partial_dims_at, points_mixed, points_twisted,
    sl_pgl_factorization_check, tuples, variety_points,
};
use crate::catcore::battery;
use crate::fields::{
    blended_function_field, etale2_classify, etale2_witness_check, extend_tits_p3, no_solution_checks_p3, tits_endomorphism,
    verify_tower_theta, visible_f2n, BlendedField, Field, FiniteField, FunctionField, MixedField, TitsStep,
};
use crate::groups::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub bound_secs: u64,
    pub elapsed_secs: f64,
    pub detail: String,
    pub failure: Option<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.elapsed_secs <= self.bound_secs as f64
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let why = match (&self.failure, self.elapsed_secs > self.bound_secs as f64) {
            (Some(w), _) => w.clone(),
            (None, true) => format!("over the {} s bound", self.bound_secs),
            (None, false) => self.detail.clone(),
        };
        format!("criterion {:>2} {status} [{:.2}s/{}s] {}: {why}", self.id, self.elapsed_secs, self.bound_secs, self.title)
    }
}

pub const CRITERIA: [(u32, &str, u64); 13] = [
    (1, "categorical law suite on dynsys(<=3)", 60),
    (2, "twisted plane points over F_q, q in {2,8,32}", 5),
    (3, "mixed affine plane points", 10),
    (4, "Suzuki groups 2B2(2) and 2B2(8)", 60),
    (5, "Ree group 2G2(3)", 60),
    (6, "mixed group B2 over (F2(s^2,t), F2(s,t))", 120),
    (7, "very special isogeny composition", 30),
    (8, "SL_p/PGL_p factorization", 10),
    (9, "mixed torus", 10),
    (10, "etale double covers", 10),
    (11, "p = 3 Tits endomorphisms", 10),
    (12, "exotic points identity", 60),
    (13, "mixed quadric partial dimensions", 10),
];

/// Seed offset for every randomized criterion, and the fault-injection switch
/// that replaces the twister's exponent table by a corrupted one.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub corrupt_twister: bool,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(id: u32) -> CriterionResult {
    run_with(id, &SuiteOptions::default())
}

pub fn run_with(id: u32, o: &SuiteOptions) -> CriterionResult {
    let (_, title, bound) = CRITERIA.iter().copied().find(|c| c.0 == id).expect("criteria are numbered 1..=13");
    let start = Instant::now();
    let out = match id {
        1 => c1(o),
        2 => c2(o),
        3 => c3(o),
        4 => c4(o),
        5 => c5(o),
        6 => c6(o),
        7 => c7(o),
        8 => c8(o),
        9 => c9(o),
        10 => c10(o),
        11 => c11(o),
        12 => c12(o),
        _ => c13(o),
    };
    let elapsed = start.elapsed();
    let (detail, failure) = match out {
        Ok(d) => (d, None),
        Err(e) => (String::new(), Some(e)),
    };
    CriterionResult { id, title, bound_secs: bound, elapsed_secs: elapsed.as_secs_f64(), detail, failure }
}

pub fn run_all(o: &SuiteOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_with(c.0, o)).collect()
}

pub fn bound(id: u32) -> Duration {
    Duration::from_secs(CRITERIA[(id - 1) as usize].2)
}

fn c1(_: &SuiteOptions) -> Outcome {
    let verdicts = battery::run(3).map_err(err)?;
    let failed: Vec<String> = verdicts.iter().filter(|v| !v.passed()).map(|v| v.line()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    let cases: usize = verdicts.iter().map(|v| v.checked).sum();
    Ok(format!("{} checks, {cases} cases, zero failures", verdicts.len()))
}

fn blended_f2(n: u32) -> Result<BlendedField<FiniteField>, String> {
    tits_endomorphism(&FiniteField::new(2, n).map_err(err)?).map_err(err)
}

fn c2(_: &SuiteOptions) -> Outcome {
    let mut counts = vec![];
    for n in [1, 3, 5] {
        let r = affine_plane_twisted(&blended_f2(n)?).map_err(err)?;
        let pts = points_twisted(&r).map_err(err)?;
        let q = 1usize << n;
        ensure(pts.points.len() == q, || format!("q = {q}: {} points", pts.points.len()))?;
        ensure(pts.agree(), || format!("q = {q}: fixed points of the involution differ"))?;
        counts.push(format!("q={q}:{}", pts.points.len()));
    }
    Ok(counts.join(" "))
}

fn c3(o: &SuiteOptions) -> Outcome {
    let mut counts = vec![];
    for n in 1..=3 {
        let m = visible_f2n(n).map_err(err)?;
        let r = mixed_affine_plane(&m).map_err(err)?;
        let pts = points_mixed(&r).map_err(err)?;
        let q = 1usize << n;
        ensure(pts.pairs.len() == q * q, || format!("q = {q}: {} points", pts.pairs.len()))?;
        ensure(pts.agree(), || format!("q = {q}: pair and fibre characterizations differ"))?;
        // (u, v) ↦ (u(x), v(x)) ∈ k × ℓ
        let image: HashSet<(u32, u32)> = pts.pairs.iter().map(|(u, v)| (u[0], v[0])).collect();
        ensure(image.len() == q * q, || format!("q = {q}: not a bijection onto k × ℓ"))?;
        counts.push(format!("q={q}:{}", pts.pairs.len()));
    }
    let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)?;
    let r = mixed_affine_plane(&m).map_err(err)?;
    let l = &m.l;
    let s = l.var(0);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(3));
    let mut errors = 0;
    for i in 0..400 {
        let member = i % 2 == 0;
        let b = l.sample(&mut rng);
        let mut a = m.kappa(&m.k.sample(&mut rng));
        if !member {
            let z = loop {
                let z = m.kappa(&m.k.sample(&mut rng));
                if !l.is_zero(&z) {
                    break z;
                }
            };
            a = l.add(&a, &l.mul(&s, &z));
        }
        let ds_zero = l.is_zero(&l.partial(&a, 0).unwrap());
        let v = [b, a];
        let fibre = r.is_point_fiber(&v).map_err(err)?;
        let pair = r.lift(&v).is_some_and(|u| r.is_point_pair(&u, &v));
        if fibre != member || pair != member || ds_zero != member {
            errors += 1;
        }
    }
    ensure(errors == 0, || format!("{errors} misclassified samples over (F2(s^2,t), F2(s,t))"))?;
    Ok(format!("{}; 200 members and 200 non-members over (F2(s^2,t), F2(s,t)) classified", counts.join(" ")))
}

fn twisted_count(kind: GroupType, q: u32, strategy: Strategy, o: &SuiteOptions) -> Result<TwistedGroup, String> {
    let table = if o.corrupt_twister { Some(corrupted_table(kind).map_err(err)?) } else { None };
    let tw = suzuki_ree_with(kind, q, table).map_err(err)?;
    let g = twisted_points(&tw, strategy, ENUMERATION_CAP).map_err(err)?;
    ensure(g.closed && g.fixed, || format!("q = {q}: closed={} fixed={}", g.closed, g.fixed))?;
    Ok(g)
}

fn c4(o: &SuiteOptions) -> Outcome {
    let small = twisted_count(GroupType::C, 2, Strategy::FullFilter, o)?;
    ensure(small.ambient == Some(720), || format!("ambient Sp4(F2) has {:?} elements", small.ambient))?;
    ensure(small.order() == 20, || format!("|2B2(2)| = {}", small.order()))?;
    let big = twisted_count(GroupType::C, 8, Strategy::GeneratorBfs, o)?;
    ensure(big.order() == 29120, || format!("|2B2(8)| = {}", big.order()))?;
    Ok(format!("|2B2(2)| = 20 of 720, |2B2(8)| = {} from {} generators", big.order(), big.generators))
}

fn c5(o: &SuiteOptions) -> Outcome {
    let g = twisted_count(GroupType::G2, 3, Strategy::GeneratorBfs, o)?;
    ensure(g.order() == 1512, || format!("|2G2(3)| = {}", g.order()))?;
    Ok(format!("|2G2(3)| = 1512 from {} generators", g.generators))
}

fn mixed_b2() -> Result<MixedGroupSpec<FunctionField, FunctionField>, String> {
    let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)?;
    MixedGroupSpec::new(GroupType::B, 2, m).map_err(err)
}

fn c6(o: &SuiteOptions) -> Outcome {
    let ms = mixed_b2()?;
    let f = &ms.group.field;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(6));
    let mut members = vec![];
    let (mut bad_members, mut bad_perturbed, mut route_disagree) = (0, 0, 0);
    for _ in 0..200 {
        let len = rng.gen_range(1..=12);
        let x = ms.random_word_with(&mut rng, len).map_err(err)?;
        let y = ms.perturb(&x, &mut rng).map_err(err)?;
        let (bx, by) = (mixed_membership(&x, &ms).map_err(err)?, mixed_membership(&y, &ms).map_err(err)?);
        let (mx, my) = (mixed_membership_matrix(&x, &ms).map_err(err)?, mixed_membership_matrix(&y, &ms).map_err(err)?);
        bad_members += !bx as usize;
        bad_perturbed += by as usize;
        route_disagree += (bx != mx) as usize + (by != my) as usize;
        members.push(x);
    }
    ensure(bad_members == 0, || format!("{bad_members} generator words rejected"))?;
    ensure(bad_perturbed == 0, || format!("{bad_perturbed} perturbed words accepted"))?;
    ensure(route_disagree == 0, || format!("Bruhat and matrix routes disagree on {route_disagree} of 400"))?;
    let mut closure_fail = 0;
    for _ in 0..500 {
        let a = &members[rng.gen_range(0..members.len())];
        let b = &members[rng.gen_range(0..members.len())];
        let prod = crate::algebra::mat_mul(f, a, b);
        let inv = crate::algebra::mat_inverse(f, a).ok_or("singular member")?;
        closure_fail += !mixed_membership(&prod, &ms).map_err(err)? as usize + !mixed_membership(&inv, &ms).map_err(err)? as usize;
    }
    ensure(closure_fail == 0, || format!("{closure_fail} products or inverses left the group"))?;
    Ok("200 members, 200 non-members, routes agree on 400, 500 product/inverse trials".into())
}

fn c7(o: &SuiteOptions) -> Outcome {
    let f = FiniteField::new(2, 5).map_err(err)?;
    let b = GroupSpec::new(GroupType::B, 2, f.clone()).map_err(err)?;
    let c = GroupSpec::new(GroupType::C, 2, f).map_err(err)?;
    let bc = very_special_isogeny(&b, &c).map_err(err)?;
    let cb = very_special_isogeny(&c, &b).map_err(err)?;
    let g = GroupSpec::new(GroupType::G2, 2, FiniteField::new(3, 3).map_err(err)?).map_err(err)?;
    let gg = very_special_isogeny(&g, &g).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(7));
    for i in 0..100 {
        let x = b.random_element(&mut rng, 10);
        ensure(double_application_check(&bc, &cb, &x).map_err(err)?, || format!("B2 word {i}: π̄∘π ≠ Fr"))?;
        let y = c.random_element(&mut rng, 10);
        ensure(double_application_check(&cb, &bc, &y).map_err(err)?, || format!("C2 word {i}: π∘π̄ ≠ Fr"))?;
        let z = g.random_element(&mut rng, 10);
        ensure(double_application_check(&gg, &gg, &z).map_err(err)?, || format!("G2 word {i}: π∘π ≠ Fr"))?;
        let w = b.random_element(&mut rng, 10);
        ensure(b_to_c_routes_agree(&bc, &w).map_err(err)?, || format!("B2 element {i}: matrix and Bruhat routes differ"))?;
    }
    Ok("100 words each for B2→C2→B2, C2→B2→C2, G2→G2→G2; 100 route agreements".into())
}

fn c8(o: &SuiteOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(8));
    for (p, n) in [(2u64, 2u32), (3, 2)] {
        let f = FiniteField::new(p, n).map_err(err)?;
        let r = sl_pgl_factorization_check(&f, p as usize, p, 100, &mut rng);
        ensure(r.checked == 100 && r.passed(), || format!("SL{p}(F{}): {r:?}", f.order()))?;
    }
    Ok("100 SL2(F4) and 100 SL3(F9) samples".into())
}

fn c9(o: &SuiteOptions) -> Outcome {
    let f4 = FiniteField::new(2, 2).map_err(err)?;
    let vis = MixedField::visible(&f4);
    let t = mixed_torus(&vis, &f4.u()).map_err(err)?;
    let members = t.members().map_err(err)?.ok_or("finite torus not enumerable")?;
    ensure(members.len() == 15, || format!("{} members over (F4,F4)", members.len()))?;
    for x in &members {
        ensure(t.composite_is_square(x), || "isogeny composite differs from squaring".into())?;
        ensure(t.contains(&t.invert(x).ok_or("zero member")?).map_err(err)?, || "inverse left the torus".into())?;
        for y in &members {
            ensure(t.contains(&t.multiply(x, y)).map_err(err)?, || "product left the torus".into())?;
        }
    }
    let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)?;
    let tt = m.l.var(1);
    let t = mixed_torus(&m, &tt).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(9));
    let sample: Vec<_> = (0..100).map(|_| t.sample_member(&mut rng)).collect::<Result<_, _>>().map_err(err)?;
    for (i, x) in sample.iter().enumerate() {
        ensure(t.contains(x).map_err(err)?, || format!("sample {i} is not a member"))?;
        ensure(t.composite_is_square(x), || format!("sample {i}: composite differs from squaring"))?;
        let y = &sample[(i + 1) % sample.len()];
        ensure(t.contains(&t.multiply(x, y)).map_err(err)?, || format!("sample {i}: product left the torus"))?;
        ensure(t.contains(&t.invert(x).unwrap()).map_err(err)?, || format!("sample {i}: inverse left the torus"))?;
    }
    Ok("15 members over (F4,F4) exhaustively, 100 sampled members over (F2(s^2,t), F2(s,t))".into())
}

fn c10(o: &SuiteOptions) -> Outcome {
    for n in 1..=6 {
        let c = etale2_classify(&visible_f2n(n).map_err(err)?).map_err(err)?;
        ensure(c.classes.len() == 2, || format!("F_2^{n}: {} classes", c.classes.len()))?;
        ensure(c.maps_inverse, || format!("F_2^{n}: correspondence maps are not inverse"))?;
    }
    let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(10));
    for i in 0..100 {
        let a = m.k.sample(&mut rng);
        let b = m.l.sample(&mut rng);
        ensure(etale2_witness_check(&m, &a, &b).map_err(err)?, || format!("witness identity fails on sample {i}"))?;
    }
    Ok("2 classes for n = 1..6, 100 witness identities".into())
}

fn c11(o: &SuiteOptions) -> Outcome {
    for n in [1, 3, 5] {
        let f = FiniteField::new(3, n).map_err(err)?;
        let r = no_solution_checks_p3(&tits_endomorphism(&f).map_err(err)?, 1 << 20).map_err(err)?;
        ensure(r.theta_solutions == 0 && r.power_solutions == 0 && r.units_tested + 1 == r.order as usize, || format!("q = {}: {r:?}", r.order))?;
    }
    let b = blended_function_field(3, 1).map_err(err)?;
    let s = b.field.var(0);
    match extend_tits_p3(&b, &s, &[]).map_err(err)? {
        TitsStep::Extended(ext) => verify_tower_theta(&ext, 100, o.seed.wrapping_add(11))?,
        other => return Err(format!("expected a degree-4 tower, got {other:?}")),
    }
    Ok("no solutions for q = 3, 27, 243; degree-4 tower over F3(s,t) verified".into())
}

fn c12(o: &SuiteOptions) -> Outcome {
    let m = MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)?;
    let ms = MixedGroupSpec::new(GroupType::C, 2, m).map_err(err)?;
    let rep = exotic_agreement(&ms, 300, 12, o.seed.wrapping_add(12)).map_err(err)?;
    ensure(rep.all_agree(), || format!("{rep:?}"))?;
    Ok(format!("{} members and {} non-members agree", rep.members, rep.nonmembers))
}

fn c13(_: &SuiteOptions) -> Outcome {
    let f = FiniteField::new(2, 1).map_err(err)?;
    let m = MixedField::visible(&f);
    let mut dims = vec![];
    for n in 1..=4 {
        let r = mixed_quadric(&m, n, None).map_err(err)?;
        r.check_composites().map_err(err)?;
        let bp: Vec<Vec<u32>> = tuples(2, n).collect();
        let ap = variety_points(&r.a).map_err(err)?;
        let d = partial_dims_at(&r, &bp, &ap);
        if !jacobian_is_zero(&r.kappa) || d != (0, n) {
            let row: Vec<String> = jacobian(&r.kappa)[0].iter().map(|e| r.b.render(e)).collect();
            return Err(format!(
                "n = {n}: κ̂(x0) = q(y) has Jacobian row ({}), partial dimensions {d:?} instead of (0, {n})",
                row.join(", ")
            ));
        }
        dims.push(format!("n={n}:{d:?}"));
    }
    Ok(dims.join(" "))
}
