//! Command line driver: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 success, 2 unparsable input, 3 property false (witness
//! printed), 4 hypothesis not met / cap exceeded / other error,
//! 5 verification failed.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use starlab_core::algebra::build_scalar_algebra;
use starlab_core::classify::{self, Classifier, Property};
use starlab_core::corpus::{generate_corpus, Profile};
use starlab_core::dsl::{parse_literal, parse_ring_expr};
use starlab_core::golden::GoldenStore;
use starlab_core::projection::{render_error, Analysis};
use starlab_core::ring::{build_ring, characteristic};
use starlab_core::unitify::{build_quotient, check_r1_lemmas, verify_unitification, VerifyMode};
use starlab_core::{ActionSpec, Elem, Error, Limits, PropertyReport, RingDescriptor, ScalarAlgebra, StarRing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FALSE: i32 = 3;
pub const EXIT_ERROR: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "starlab", version, about = "Finite rings with involution")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Refuse rings with more elements than this.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    pub max_order: usize,
    /// Report zero elapsed time so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub stable: bool,
    /// JSON file caching `check` reports by descriptor hash.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    Rickart,
    Pqbaer,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Action {
    Natural,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, unity, characteristic and projection counts.
    Describe { ring: String },
    /// Decide class membership; exit 3 when any property is false.
    Check {
        ring: String,
        #[arg(required = true)]
        properties: Vec<String>,
    },
    /// Right projection of an element.
    Rp { ring: String, element: String },
    /// Left projection of an element.
    Lp { ring: String, element: String },
    /// Central cover of an element.
    Cover { ring: String, element: String },
    /// All projections, marking central ones.
    Projections { ring: String },
    /// Build (R + K) / N and optionally verify an embedding theorem.
    Unitify {
        ring: String,
        #[arg(long = "K", alias = "k")]
        scalars: String,
        #[arg(long, value_enum, default_value_t = Action::Natural)]
        action: Action,
        #[arg(long, value_enum, default_value_t = Verify::None)]
        verify: Verify,
    },
    /// Cross-check internal invariants on a ring (and its unitification over K).
    Verify {
        ring: String,
        #[arg(long = "K", alias = "k")]
        scalars: Option<String>,
    },
    /// Compare the arithmetic Baer* criterion for M(n, Z(m)) with brute force.
    ScanCor {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        m_min: u64,
        #[arg(long, default_value_t = 7)]
        m_max: u64,
    },
    /// List a corpus profile; optionally run the implication suite over it.
    Corpus {
        #[arg(value_parser = parse_profile)]
        profile: Profile,
        #[arg(long)]
        implications: bool,
    },
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Maps a library error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidDescriptor(_) | Error::InvalidElement(_) => EXIT_PARSE,
        Error::NoRightProjection(_)
        | Error::NoLeftProjection(_)
        | Error::AmbiguousRightProjection { .. }
        | Error::AmbiguousLeftProjection { .. }
        | Error::NoCentralCover(_) => EXIT_FALSE,
        Error::VerificationFailed { .. } | Error::FormulaMismatch { .. } => EXIT_VERIFICATION,
        _ => EXIT_ERROR,
    }
}

struct Ctx {
    format: Format,
    limits: Limits,
    stable: bool,
    cache: Option<PathBuf>,
    out: String,
}

impl Ctx {
    fn emit(&mut self, text: impl std::fmt::Display) {
        self.out.push_str(&text.to_string());
        self.out.push('\n');
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }

    fn report(&mut self, rep: PropertyReport) {
        let rep = if self.stable { rep.stable() } else { rep };
        if self.json() {
            self.emit(rep.to_json());
        } else {
            self.emit(rep);
        }
    }

    fn ring(&self, text: &str) -> Result<(RingDescriptor, StarRing), Error> {
        let d = parse_ring_expr(text)?;
        let r = build_ring(&d, &self.limits)?;
        Ok((d, r))
    }

    fn algebra(&self, r: StarRing, k: &str) -> Result<Arc<ScalarAlgebra>, Error> {
        let (_, k) = self.ring(k)?;
        build_scalar_algebra(Arc::new(r), Arc::new(k), ActionSpec::Natural)
    }
}

/// Parses arguments, runs the command and prints its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let (code, out, err) = execute(cli);
    print!("{out}");
    if let Some(err) = err {
        eprintln!("error: {err}");
    }
    code
}

/// Runs a parsed command, returning exit code, standard output and the
/// error (if any) that produced a nonzero code.
pub fn execute(cli: Cli) -> (i32, String, Option<Error>) {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let mut ctx = Ctx {
        format: cli.format,
        limits: Limits::default().with_max_order(cli.max_order),
        stable: cli.stable,
        cache: cli.cache,
        out: String::new(),
    };
    let result = dispatch(&mut ctx, cli.command);
    match result {
        Ok(code) => (code, ctx.out, None),
        Err(e) => {
            if ctx.json() {
                ctx.emit(json!({"error": e.to_string(), "exit": exit_code(&e)}));
            }
            (exit_code(&e), ctx.out, Some(e))
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32, Error> {
    match command {
        Command::Describe { ring } => describe(ctx, &ring),
        Command::Check { ring, properties } => check(ctx, &ring, &properties),
        Command::Rp { ring, element } => projection_of(ctx, "rp", &ring, &element),
        Command::Lp { ring, element } => projection_of(ctx, "lp", &ring, &element),
        Command::Cover { ring, element } => projection_of(ctx, "cover", &ring, &element),
        Command::Projections { ring } => list_projections(ctx, &ring),
        Command::Unitify {
            ring,
            scalars,
            action: Action::Natural,
            verify,
        } => unitify(ctx, &ring, &scalars, verify),
        Command::Verify { ring, scalars } => verify(ctx, &ring, scalars.as_deref()),
        Command::ScanCor {
            n_min,
            n_max,
            m_min,
            m_max,
        } => scan_cor(ctx, n_min..=n_max, m_min..=m_max),
        Command::Corpus { profile, implications } => corpus(ctx, profile, implications),
    }
}

fn describe(ctx: &mut Ctx, text: &str) -> Result<i32, Error> {
    let (d, r) = ctx.ring(text)?;
    let an = Analysis::new(&r);
    let poset = an.poset();
    let star = starlab_core::ring::validate_star_ring(&r);
    let info = json!({
        "ring": r.name(),
        "hash": d.hash_hex(),
        "order": r.order(),
        "unity": r.unity().map(|u| r.render(u)),
        "characteristic": characteristic(&r),
        "commutative": r.is_commutative(),
        "projections": poset.len(),
        "central_projections": poset.central_elems().len(),
        "star_ring": star.verdict,
        "descriptor": serde_json::to_value(&d)?,
    });
    if ctx.json() {
        ctx.emit(info);
    } else {
        ctx.emit(format!("ring: {}", r.name()));
        ctx.emit(format!("order: {}", r.order()));
        ctx.emit(format!("unity: {}", r.unity().map_or("none".into(), |u| r.render(u))));
        ctx.emit(format!("characteristic: {}", characteristic(&r)));
        ctx.emit(format!("commutative: {}", r.is_commutative()));
        ctx.emit(format!(
            "projections: {} ({} central)",
            poset.len(),
            poset.central_elems().len()
        ));
        ctx.emit(format!("star ring axioms: {}", if star.verdict { "ok" } else { "violated" }));
    }
    Ok(if star.verdict { EXIT_OK } else { EXIT_VERIFICATION })
}

fn check(ctx: &mut Ctx, text: &str, names: &[String]) -> Result<i32, Error> {
    let properties: Vec<Property> = names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?;
    let (d, r) = ctx.ring(text)?;
    let mut store = match &ctx.cache {
        Some(path) => Some(GoldenStore::load(path)?),
        None => None,
    };
    let classifier = Classifier::new(&r, ctx.limits);
    let mut code = EXIT_OK;
    for p in properties {
        let cached = store
            .as_ref()
            .and_then(|s| s.get(&d.hash_hex(), p.name()))
            .and_then(|e| serde_json::from_value::<PropertyReport>(e.value.clone()).ok());
        let rep = match cached {
            Some(rep) => rep,
            None => {
                let rep = classifier.report(p)?;
                if let Some(s) = store.as_mut() {
                    s.record(&d, p.name(), serde_json::to_value(&rep)?, "cache");
                }
                rep
            }
        };
        if !rep.verdict {
            code = EXIT_FALSE;
        }
        ctx.report(rep);
    }
    if let (Some(s), Some(path)) = (store, &ctx.cache) {
        s.save(path)?;
    }
    Ok(code)
}

fn projection_of(ctx: &mut Ctx, op: &str, text: &str, element: &str) -> Result<i32, Error> {
    let (_, r) = ctx.ring(text)?;
    let x = r.element(&parse_literal(element)?)?;
    let an = Analysis::new(&r);
    let p = match op {
        "rp" => an.rp(x),
        "lp" => an.lp(x),
        _ => an.central_cover(x),
    };
    let p = match p {
        Ok(p) => p,
        Err(e) => {
            let code = exit_code(&e);
            let text = render_error(&r, &e);
            if ctx.json() {
                ctx.emit(json!({"ring": r.name(), "op": op, "element": r.render(x), "error": text, "exit": code}));
            } else {
                ctx.emit(format!("error: {text}"));
            }
            return Ok(code);
        }
    };
    if ctx.json() {
        ctx.emit(json!({
            "ring": r.name(),
            "op": op,
            "element": r.render(x),
            "projection": r.render(p.elem),
            "central": p.central,
        }));
    } else {
        let label = match op {
            "rp" => "RP",
            "lp" => "LP",
            _ => "C",
        };
        ctx.emit(format!("{label}({}) = {}", r.render(x), r.render(p.elem)));
    }
    Ok(EXIT_OK)
}

fn list_projections(ctx: &mut Ctx, text: &str) -> Result<i32, Error> {
    let (_, r) = ctx.ring(text)?;
    let an = Analysis::new(&r);
    let list = an.poset().projections();
    if ctx.json() {
        let rows: Vec<Value> = list
            .iter()
            .map(|p| json!({"element": r.render(p.elem), "central": p.central}))
            .collect();
        ctx.emit(Value::Array(rows));
    } else {
        for p in list {
            let mark = if p.central { "  central" } else { "" };
            ctx.emit(format!("{}{mark}", r.render(p.elem)));
        }
    }
    Ok(EXIT_OK)
}

fn unitify(ctx: &mut Ctx, text: &str, scalars: &str, verify: Verify) -> Result<i32, Error> {
    let (_, r) = ctx.ring(text)?;
    let alg = ctx.algebra(r, scalars)?;
    let mode = match verify {
        Verify::Rickart => Some(VerifyMode::Rickart),
        Verify::Pqbaer => Some(VerifyMode::Pqbaer),
        Verify::None => None,
    };
    let rep = verify_unitification(&alg, mode, &ctx.limits)?;
    let rep = if ctx.stable { rep.stable() } else { rep };
    if ctx.json() {
        ctx.emit(rep.to_json());
    } else {
        ctx.emit(&rep);
    }
    Ok(if rep.verdict { EXIT_OK } else { EXIT_VERIFICATION })
}

fn cross_check(r: &StarRing, name: &str, bad: Option<(Vec<Elem>, String)>) -> PropertyReport {
    let outcome = match bad {
        None => starlab_core::report::Outcome::pass(),
        Some((w, detail)) => starlab_core::report::Outcome::fail(w).with_detail(detail),
    };
    PropertyReport::from_outcome(r, name, outcome, 0)
}

fn verify(ctx: &mut Ctx, text: &str, scalars: Option<&str>) -> Result<i32, Error> {
    let (_, r) = ctx.ring(text)?;
    let mut reports = vec![starlab_core::ring::validate_star_ring(&r)];
    let classifier = Classifier::new(&r, ctx.limits);
    let an = classifier.analysis();

    let duality = r.elements().find(|&x| {
        let via_star = an.rp(r.star(x)).map(|e| r.star(e.elem));
        match (an.lp(x), via_star) {
            (Ok(e), Ok(f)) => e.elem != f,
            (Err(_), Err(_)) => false,
            _ => true,
        }
    });
    reports.push(cross_check(&r, "lp-rp-duality", duality.map(|x| (vec![x], "LP(x) differs from RP(x*)*".into()))));

    if classifier.holds(Property::Proper)? {
        let bad = r.elements().find(|&x| an.rp(x) != an.rp_via_star(x));
        reports.push(cross_check(&r, "rp-via-star", bad.map(|x| (vec![x], "RP(x) differs from RP(x*x)".into()))));
    }

    let verdicts = classifier.verdicts()?;
    let violated: Vec<&str> = verdicts
        .implications()
        .into_iter()
        .filter_map(|(label, ok)| (!ok).then_some(label))
        .collect();
    reports.push(cross_check(
        &r,
        "implications",
        (!violated.is_empty()).then(|| (Vec::new(), violated.join("; "))),
    ));

    if let Some(k) = scalars {
        let (_, fresh) = ctx.ring(text)?;
        let alg = ctx.algebra(fresh, k)?;
        match check_r1_lemmas(&alg, &ctx.limits) {
            Ok(rep) => reports.push(rep),
            Err(Error::HypothesisNotMet(why)) => log::info!("skipping R1 lemmas: {why}"),
            Err(e) => return Err(e),
        }
        let u = build_quotient(&alg, &ctx.limits)?;
        u.check_homomorphism()?;
        let qa = u.analyses();
        let c3 = an.condition3_witnesses(&alg);
        if verdicts.weakly_rickart && matches!(c3, Ok(ref c) if c.holds()) {
            let checks = qa.check_rp_formula()?;
            let mut rep = cross_check(u.quotient(), "rp-formula", None);
            rep.detail = Some(format!("{checks} comparisons"));
            reports.push(rep);
        }
        let cb = an.condition_beta_witnesses(&alg);
        if verdicts.weakly_pq_baer && matches!(cb, Ok(ref c) if c.holds()) {
            let checks = qa.check_cover_formula()?;
            let mut rep = cross_check(u.quotient(), "cover-formula", None);
            rep.detail = Some(format!("{checks} comparisons"));
            reports.push(rep);
        }
    }

    let failed = reports.iter().any(|rep| !rep.verdict);
    for rep in reports {
        ctx.report(rep);
    }
    Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
}

fn scan_cor(
    ctx: &mut Ctx,
    ns: std::ops::RangeInclusive<usize>,
    ms: std::ops::RangeInclusive<u64>,
) -> Result<i32, Error> {
    let mut disagreements = 0;
    let mut rows = Vec::new();
    for n in ns {
        for m in ms.clone() {
            let d = RingDescriptor::matrix(n as u64, m);
            let arithmetic = classify::classify_matrix_ring(n, m);
            let row = match build_ring(&d, &ctx.limits) {
                Ok(r) => {
                    let brute = Classifier::new(&r, ctx.limits).holds(Property::BaerStar)?;
                    if brute != arithmetic {
                        disagreements += 1;
                    }
                    json!({"n": n, "m": m, "order": r.order(), "arithmetic": arithmetic, "brute": brute, "agree": brute == arithmetic})
                }
                Err(Error::OrderCapExceeded { order, .. }) => {
                    json!({"n": n, "m": m, "order": order as u64, "arithmetic": arithmetic, "brute": null, "agree": null})
                }
                Err(e) => return Err(e),
            };
            rows.push(row);
        }
    }
    if ctx.json() {
        ctx.emit(json!({"rows": rows, "disagreements": disagreements}));
    } else {
        ctx.emit(format!("{:>3} {:>4} {:>8} {:>10} {:>7}  agree", "n", "m", "order", "arithmetic", "brute"));
        for row in &rows {
            let brute = match row["brute"].as_bool() {
                Some(b) => b.to_string(),
                None => "skipped".into(),
            };
            let agree = match row["agree"].as_bool() {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            };
            ctx.emit(format!(
                "{:>3} {:>4} {:>8} {:>10} {:>7}  {agree}",
                row["n"], row["m"], row["order"], row["arithmetic"], brute
            ));
        }
        ctx.emit(format!("disagreements: {disagreements}"));
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_VERIFICATION })
}

fn corpus(ctx: &mut Ctx, profile: Profile, implications: bool) -> Result<i32, Error> {
    let list = generate_corpus(profile);
    if !implications {
        if ctx.json() {
            ctx.emit(serde_json::to_string(&list)?);
        } else {
            for d in &list {
                ctx.emit(d);
            }
        }
        return Ok(EXIT_OK);
    }
    let reports = classify::implication_suite(&list, &ctx.limits)?;
    let failed = reports.iter().any(|r| !r.verdict);
    for rep in reports {
        ctx.report(rep);
    }
    Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
}
