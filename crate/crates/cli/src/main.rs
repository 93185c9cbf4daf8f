use clap::{Args, Parser, Subcommand, ValueEnum};
use mixtwist::algebra::parse::{parse_algebra_with_cap, parse_poly, prime_power, presentation_base, FieldSpec};
use mixtwist::algebra::{
    affine_plane_twisted, jacobian, jacobian_is_zero, make_twisted_ring, mixed_affine_plane, mixed_quadric, partial_dims_at, points_mixed,
    points_twisted, tuples, variety_points, DEFAULT_DEGREE_CAP,
};
use mixtwist::catcore::{battery, Verdict};
use mixtwist::fields::{etale2_classify, etale2_witness_check, tits_endomorphism, visible_f2n, Field, FiniteField, MixedField};
use mixtwist::groups::{
    corrupted_table, exotic_agreement, mixed_membership, mixed_membership_matrix, mixed_torus, suzuki_ree_with, twisted_points, GroupType,
    MixedGroupSpec, Strategy, ENUMERATION_CAP,
};
use mixtwist::suite::{self, SuiteOptions, CRITERIA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "mixtwist", version, about = "Twisted and mixed objects in characteristic p")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// F_q, optionally with its Tits endomorphism.
    Field {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        tits: bool,
    },
    /// Exhaustive categorical checks on dynamical systems of bounded size.
    Catcheck {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=3))]
        maxsize: u64,
        #[arg(long, value_enum, default_value_t = CatSuite::All)]
        suite: CatSuite,
    },
    /// Points of a twisted or mixed affine scheme over a finite field.
    Points(PointsArgs),
    /// Suzuki and Ree groups as fixed points of a twister.
    TwistedGroup {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Replace the twister's exponent table by a corrupted one.
        #[arg(long)]
        corrupt_table: bool,
    },
    /// Membership in the mixed group over (F2(s^2,t), F2(s,t)).
    MixedGroup {
        #[arg(long = "type", value_enum)]
        kind: MixedKind,
        #[arg(long, default_value_t = 50)]
        words: usize,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
    },
    /// The mixed torus over a visible F_q or over (F2(s^2,t), F2(s,t)).
    Torus {
        #[arg(long, value_parser = parse_q, conflicts_with = "inseparable", required_unless_present = "inseparable")]
        q: Option<u64>,
        #[arg(long)]
        inseparable: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Classes of degree-2 étale extensions of visible (F_{2^n}, F_{2^n}).
    Etale2 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
        /// Witness identities on this many samples over F2(s^2,t) ⊂ F2(s,t).
        #[arg(long, default_value_t = 0)]
        witness: usize,
    },
    /// The mixed quadric over visible (F2, F2).
    Quadric {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        n: u64,
    },
    /// Exotic points against mixed membership on Sp4 over (F2(s^2,t), F2(s,t)).
    Exotic {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..=13))]
        only: Vec<u32>,
        #[arg(long)]
        corrupt_twister: bool,
    },
}

#[derive(Args, Debug)]
struct PointsArgs {
    #[arg(long, value_parser = parse_q, required_unless_present = "algebra", conflicts_with = "algebra")]
    q: Option<u64>,
    /// Mixed affine plane over visible (F_q, F_q) instead of the twisted plane.
    #[arg(long, conflicts_with = "algebra")]
    mixed: bool,
    /// Presentation such as `alg base=F8 gens=x,y rels=`.
    #[arg(long, requires = "twister")]
    algebra: Option<String>,
    /// Comma-separated images of the generators under the twister.
    #[arg(long, requires = "algebra")]
    twister: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CatSuite {
    All,
    Axioms,
    Functors,
    Isos,
    Adjunctions,
    Other,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    #[value(name = "B2")]
    B2,
    #[value(name = "C2")]
    C2,
    #[value(name = "G2")]
    G2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MixedKind {
    #[value(name = "B2")]
    B2,
    #[value(name = "C2")]
    C2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Full,
    Bfs,
}

fn parse_q(s: &str) -> Result<u64, String> {
    let q: u64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    prime_power(q).map(|_| q).ok_or_else(|| format!("{q} is not a prime power"))
}

/// What a command prints: detail lines, then a key=value summary.
struct Report {
    command: &'static str,
    ok: bool,
    lines: Vec<String>,
    summary: Vec<(&'static str, Value)>,
    records: Vec<Value>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, ok: true, lines: vec![], summary: vec![], records: vec![] }
    }

    fn kv(&mut self, k: &'static str, v: impl Into<Value>) {
        self.summary.push((k, v.into()));
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let summary: serde_json::Map<String, Value> = self.summary.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            let doc = json!({"schema": 1, "command": self.command, "ok": self.ok, "summary": summary, "records": self.records});
            return format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
        }
        let mut out = String::from("schema=1\n");
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let kv: Vec<String> = self.summary.iter().map(|(k, v)| format!("{k}={}", text(v))).collect();
        out.push_str(&kv.join(" "));
        out.push('\n');
        out
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

type Run = Result<Report, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn finite(q: u64) -> Result<FiniteField, String> {
    let (p, n) = prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
    FiniteField::new(p, n).map_err(err)
}

fn inseparable() -> Result<MixedField<mixtwist::fields::FunctionField, mixtwist::fields::FunctionField>, String> {
    MixedField::inseparable(2, &["a", "t"], &["s", "t"]).map_err(err)
}

fn field(q: u64, tits: bool, seed: u64) -> Run {
    let f = finite(q)?;
    let mut r = Report::new("field");
    r.kv("q", q);
    r.kv("p", f.p() as u64);
    r.kv("degree", f.degree());
    r.kv("modulus", f.modulus_string());
    if tits {
        let b = tits_endomorphism(&f).map_err(err)?;
        let e = (f.p() as u64).pow(f.degree().div_ceil(2));
        let checked = b.verify_square(100, seed).map_err(|x| format!("θ∘θ differs from Frobenius at {}", f.render(&x)))?;
        r.kv("theta", format!("x^{e}"));
        r.kv("theta_squared_is_frobenius", true);
        r.kv("checked", checked);
    }
    Ok(r)
}

fn suite_of(v: &Verdict) -> CatSuite {
    let n = &v.name;
    if n.starts_with("tC:") || n.starts_with("mC:") {
        CatSuite::Axioms
    } else if n.contains("-|") {
        CatSuite::Adjunctions
    } else if n.starts_with("functor laws") || n.contains("full and faithful") || n.contains("naturality") {
        CatSuite::Functors
    } else if n.contains("isomorphism") || n.contains("equivalence") {
        CatSuite::Isos
    } else {
        CatSuite::Other
    }
}

fn catcheck(maxsize: u64, which: CatSuite) -> Run {
    let verdicts = battery::run(maxsize as usize).map_err(err)?;
    let mut r = Report::new("catcheck");
    let (mut checks, mut cases, mut failures) = (0, 0, 0);
    for v in verdicts.iter().filter(|v| which == CatSuite::All || suite_of(v) == which) {
        checks += 1;
        cases += v.checked;
        failures += !v.passed() as usize;
        r.lines.push(v.line());
        r.records.push(json!({"name": v.name, "cases": v.checked, "passed": v.passed(), "failure": v.failure}));
    }
    r.ok = failures == 0;
    r.kv("suite", format!("{which:?}").to_lowercase());
    r.kv("maxsize", maxsize);
    r.kv("checks", checks);
    r.kv("cases", cases);
    r.kv("failures", failures);
    Ok(r)
}

fn point_text<F: Field>(f: &F, pt: &[F::Elem]) -> String {
    let parts: Vec<String> = pt.iter().map(|x| f.render(x)).collect();
    format!("({})", parts.join(", "))
}

fn points(a: &PointsArgs, cap: u32) -> Run {
    let mut r = Report::new("points");
    if let (Some(src), Some(images)) = (&a.algebra, &a.twister) {
        let f = match presentation_base(src).map_err(err)? {
            FieldSpec::Finite(f) => f,
            FieldSpec::Function(_) => return Err("points need a finite base field".into()),
        };
        let b = tits_endomorphism(&f).map_err(err)?;
        let alg = parse_algebra_with_cap(f.clone(), src, cap).map_err(err)?;
        let imgs = images.split(',').map(|s| parse_poly(&alg.ring, s.trim())).collect::<Result<Vec<_>, _>>().map_err(err)?;
        if imgs.len() != alg.ngens() {
            return Err(format!("{} twister images for {} generators", imgs.len(), alg.ngens()));
        }
        let ring = make_twisted_ring(&b, alg, imgs).map_err(err)?;
        let pts = points_twisted(&ring).map_err(err)?;
        return Ok(twisted_report(r, &f, &pts));
    }
    let q = a.q.expect("clap requires --q without --algebra");
    let f = finite(q)?;
    if a.mixed {
        let m = MixedField::visible(&f);
        let ring = mixed_affine_plane(&m).map_err(err)?;
        let pts = points_mixed(&ring).map_err(err)?;
        for (u, v) in &pts.pairs {
            r.lines.push(format!("point k={} l={}", point_text(&f, u), point_text(&f, v)));
            r.records.push(json!({"k": u, "l": v}));
        }
        r.ok = pts.agree();
        r.kv("plane", "mixed");
        r.kv("q", q);
        r.kv("points", pts.pairs.len());
        r.kv("characterizations_agree", pts.agree());
        return Ok(r);
    }
    let b = tits_endomorphism(&f).map_err(err)?;
    let ring = affine_plane_twisted(&b).map_err(err)?;
    let pts = points_twisted(&ring).map_err(err)?;
    r.kv("plane", "twisted");
    r.kv("q", q);
    Ok(twisted_report(r, &f, &pts))
}

fn twisted_report(mut r: Report, f: &FiniteField, pts: &mixtwist::algebra::TwistedPoints) -> Report {
    for pt in &pts.points {
        r.lines.push(format!("point {}", point_text(f, pt)));
        r.records.push(json!({"point": pt}));
    }
    r.ok = pts.agree();
    r.kv("points", pts.points.len());
    r.kv("involution_fixed_points", pts.fixed.len());
    r.kv("agree", pts.agree());
    r
}

fn twisted_group(kind: Kind, q: u64, strategy: Option<StrategyArg>, corrupt: bool) -> Run {
    let (gt, name) = match kind {
        Kind::B2 | Kind::C2 => (GroupType::C, "2B2"),
        Kind::G2 => (GroupType::G2, "2G2"),
    };
    let q32 = u32::try_from(q).map_err(err)?;
    let strategy = match strategy {
        Some(StrategyArg::Full) => Strategy::FullFilter,
        Some(StrategyArg::Bfs) => Strategy::GeneratorBfs,
        None if q == 2 && gt == GroupType::C => Strategy::FullFilter,
        None => Strategy::GeneratorBfs,
    };
    let table = if corrupt { Some(corrupted_table(gt).map_err(err)?) } else { None };
    let tw = suzuki_ree_with(gt, q32, table).map_err(err)?;
    let g = twisted_points(&tw, strategy, ENUMERATION_CAP).map_err(err)?;
    let mut r = Report::new("twisted-group");
    let ambient = g.ambient.map_or("-".to_string(), |a| a.to_string());
    let strat = if strategy == Strategy::FullFilter { "full" } else { "bfs" };
    r.lines.push(format!("group={name}({q}) strategy={strat} ambient={ambient} generators={}", g.generators));
    r.ok = g.closed && g.fixed;
    r.kv("order", g.order());
    r.kv("closed", g.closed);
    r.kv("fixed", g.fixed);
    r.records.push(json!({"group": format!("{name}({q})"), "strategy": strat, "ambient": g.ambient, "generators": g.generators}));
    Ok(r)
}

fn mixed_group(kind: MixedKind, words: usize, max_len: u64, seed: u64) -> Run {
    let gt = match kind {
        MixedKind::B2 => GroupType::B,
        MixedKind::C2 => GroupType::C,
    };
    let ms = MixedGroupSpec::new(gt, 2, inseparable()?).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("mixed-group");
    let (mut accepted, mut rejected, mut agree, mut compared) = (0, 0, 0, 0);
    for i in 0..words {
        let len = rng.gen_range(1..=max_len as usize);
        let x = ms.random_word_with(&mut rng, len).map_err(err)?;
        let y = ms.perturb(&x, &mut rng).map_err(err)?;
        let (bx, by) = (mixed_membership(&x, &ms).map_err(err)?, mixed_membership(&y, &ms).map_err(err)?);
        accepted += bx as usize;
        rejected += !by as usize;
        let mut routes = Value::Null;
        if gt == GroupType::B {
            let (mx, my) = (mixed_membership_matrix(&x, &ms).map_err(err)?, mixed_membership_matrix(&y, &ms).map_err(err)?);
            compared += 2;
            agree += (mx == bx) as usize + (my == by) as usize;
            routes = json!(mx == bx && my == by);
        }
        if !bx || by {
            r.lines.push(format!("counterexample word={i} length={len} member_accepted={} perturbed_accepted={}", yes(bx), yes(by)));
        }
        r.records.push(json!({"word": i, "length": len, "member": bx, "perturbed": by, "routes_agree": routes}));
    }
    r.ok = accepted == words && rejected == words && agree == compared;
    r.kv("type", format!("{kind:?}"));
    r.kv("words", words);
    r.kv("members_accepted", accepted);
    r.kv("nonmembers_rejected", rejected);
    if gt == GroupType::B {
        r.kv("routes_agree", agree);
    }
    Ok(r)
}

fn torus(q: Option<u64>, samples: usize, seed: u64) -> Run {
    let mut r = Report::new("torus");
    let Some(q) = q else {
        let m = inseparable()?;
        let t = mixed_torus(&m, &m.l.var(1)).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = (0..samples).map(|_| t.sample_member(&mut rng)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let mut bad = 0;
        for (i, x) in xs.iter().enumerate() {
            let y = &xs[(i + 1) % xs.len()];
            let inv = t.invert(x).ok_or("zero member")?;
            let ok = t.contains(x).map_err(err)?
                && t.composite_is_square(x)
                && t.contains(&t.multiply(x, y)).map_err(err)?
                && t.contains(&inv).map_err(err)?;
            if !ok {
                bad += 1;
                r.lines.push(format!("counterexample sample={i}"));
            }
        }
        r.ok = bad == 0;
        r.kv("field", "F2(s^2,t)<F2(s,t)");
        r.kv("delta", "t");
        r.kv("samples", samples);
        r.kv("failures", bad);
        return Ok(r);
    };
    let f = finite(q)?;
    let m = MixedField::visible(&f);
    let all = f.enumerate().ok_or("finite field not enumerable")?;
    let (delta, t) = all
        .iter()
        .find_map(|d| mixed_torus(&m, d).ok().map(|t| (*d, t)))
        .ok_or_else(|| format!("no δ with u^2 + u + δ irreducible over F{q}"))?;
    let members = t.members().map_err(err)?.ok_or("torus not enumerable")?;
    let (mut squares, mut closed) = (true, true);
    for x in &members {
        squares &= t.composite_is_square(x);
        closed &= t.contains(&t.invert(x).ok_or("zero member")?).map_err(err)?;
        for y in &members {
            closed &= t.contains(&t.multiply(x, y)).map_err(err)?;
        }
    }
    r.ok = squares && closed;
    r.kv("q", q);
    r.kv("delta", f.render(&delta));
    r.kv("members", members.len());
    r.kv("closed", closed);
    r.kv("composite_is_square", squares);
    Ok(r)
}

fn etale2(n: u32, witness: usize, seed: u64) -> Run {
    let m = visible_f2n(n).map_err(err)?;
    let c = etale2_classify(&m).map_err(err)?;
    let mut r = Report::new("etale2");
    for (a, b) in &c.classes {
        r.lines.push(format!("class ({}, {})", m.k.render(a), m.l.render(b)));
        r.records.push(json!({"k": a, "l": b}));
    }
    r.ok = c.maps_inverse;
    r.kv("n", n);
    r.kv("classes", c.classes.len());
    r.kv("image", c.image_size);
    r.kv("maps_inverse", c.maps_inverse);
    if witness > 0 {
        let m = inseparable()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut held = 0;
        for _ in 0..witness {
            let a = m.k.sample(&mut rng);
            let b = m.l.sample(&mut rng);
            held += etale2_witness_check(&m, &a, &b).map_err(err)? as usize;
        }
        r.ok &= held == witness;
        r.kv("witnesses", witness);
        r.kv("witnesses_hold", held);
    }
    Ok(r)
}

fn quadric(n: u64) -> Run {
    let n = n as usize;
    let f = FiniteField::new(2, 1).map_err(err)?;
    let m = MixedField::visible(&f);
    let ring = mixed_quadric(&m, n, None).map_err(err)?;
    let composites = ring.check_composites().is_ok();
    let bp: Vec<Vec<u32>> = tuples(2, n).collect();
    let ap = variety_points(&ring.a).map_err(err)?;
    let d = partial_dims_at(&ring, &bp, &ap);
    let zero = jacobian_is_zero(&ring.kappa);
    let mut r = Report::new("quadric");
    for (i, row) in jacobian(&ring.kappa).iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|e| ring.b.render(e)).collect();
        r.lines.push(format!("jacobian row {i}: ({})", cells.join(", ")));
        r.records.push(json!({"row": i, "entries": cells}));
    }
    r.ok = composites && zero && d == (0, n);
    r.kv("n", n);
    r.kv("composites", composites);
    r.kv("jacobian_zero", zero);
    r.kv("partial_dims", format!("({},{})", d.0, d.1));
    Ok(r)
}

fn exotic(samples: usize, max_len: u64, seed: u64) -> Run {
    let ms = MixedGroupSpec::new(GroupType::C, 2, inseparable()?).map_err(err)?;
    let rep = exotic_agreement(&ms, samples, max_len as usize, seed).map_err(err)?;
    let mut r = Report::new("exotic");
    r.ok = rep.all_agree();
    r.kv("members", rep.members);
    r.kv("member_agree", rep.member_agree);
    r.kv("nonmembers", rep.nonmembers);
    r.kv("nonmember_agree", rep.nonmember_agree);
    r.records.push(serde_json::to_value(&rep).map_err(err)?);
    Ok(r)
}

fn selftest(only: &[u32], corrupt: bool, seed: u64) -> Run {
    let o = SuiteOptions { seed, corrupt_twister: corrupt };
    let ids: Vec<u32> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut r = Report::new("selftest");
    let (mut passed, mut total) = (0, 0.0);
    for &id in &ids {
        let c = suite::run_with(id, &o);
        passed += c.passed() as usize;
        total += c.elapsed_secs;
        r.lines.push(c.line());
        let mut v = serde_json::to_value(&c).map_err(err)?;
        v["passed"] = json!(c.passed());
        r.records.push(v);
    }
    r.ok = passed == ids.len();
    r.kv("criteria", ids.len());
    r.kv("passed", passed);
    r.kv("failed", ids.len() - passed);
    r.kv("seconds", format!("{total:.2}"));
    Ok(r)
}

fn degree_cap() -> Result<u32, String> {
    match std::env::var("MIXTWIST_DEGREE_CAP") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DEGREE_CAP),
        Err(e) => Err(format!("MIXTWIST_DEGREE_CAP: {e}")),
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(c) if c > 0 => Ok(c),
            _ => Err(format!("MIXTWIST_DEGREE_CAP must be a positive integer, got {s:?}")),
        },
    }
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Field { .. } => "field",
        Verb::Catcheck { .. } => "catcheck",
        Verb::Points(_) => "points",
        Verb::TwistedGroup { .. } => "twisted-group",
        Verb::MixedGroup { .. } => "mixed-group",
        Verb::Torus { .. } => "torus",
        Verb::Etale2 { .. } => "etale2",
        Verb::Quadric { .. } => "quadric",
        Verb::Exotic { .. } => "exotic",
        Verb::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cap = match degree_cap() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let seed = cli.seed;
    let out = match &cli.verb {
        Verb::Field { q, tits } => field(*q, *tits, seed),
        Verb::Catcheck { maxsize, suite } => catcheck(*maxsize, *suite),
        Verb::Points(a) => points(a, cap),
        Verb::TwistedGroup { kind, q, strategy, corrupt_table } => twisted_group(*kind, *q, *strategy, *corrupt_table),
        Verb::MixedGroup { kind, words, max_len } => mixed_group(*kind, *words, *max_len, seed),
        Verb::Torus { q, samples, .. } => torus(*q, *samples, seed),
        Verb::Etale2 { n, witness } => etale2(*n, *witness, seed),
        Verb::Quadric { n } => quadric(*n),
        Verb::Exotic { samples, max_len } => exotic(*samples, *max_len, seed),
        Verb::Selftest { only, corrupt_twister } => selftest(only, *corrupt_twister, seed),
    };
    match out {
        Ok(r) => {
            print!("{}", r.render(cli.json));
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"schema": 1, "command": verb_name(&cli.verb), "ok": false, "error": e}));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
