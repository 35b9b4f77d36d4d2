//! `compseq` verbs. Exit codes: 0 success, 1 verification failed, 2 usage,
//! parse, domain or IO error, 3 capability limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use compseq_core::analysis::{bound_report, case1_decomposition_check, case2_decomposition_check, case_bounds, column_report, lambda_b, Rational};
use compseq_core::complementary::{are_mates, complementary_residual, is_companion_pair, is_golay_pair, is_mo_collection};
use compseq_core::construct::{build, golay_seed, infer_mo_layout, verify_column_membership, BuildRecipe, ExtendMode};
use compseq_core::search::{case1_lift, case2_lift, AnnealConfig, Objective, SearchConfig, DEFAULT_CAP};
use compseq_core::{merits, Alphabet, Error, MeritKind, Seq, SeqMatrix};
use serde_json::{json, Value};

use crate::format::{parse_matrices, parse_sequences, read_text, write_matrices};
use crate::parallel::{anneal_chains, default_jobs, parallel_search};
use crate::{report, selftest, CliError};

#[derive(Parser, Debug)]
#[command(name = "compseq", version, about = "Build and search companion pairs for MO complementary sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an MO collection from a companion pair.
    Build(BuildArgs),
    /// Column merits of a matrix.
    Analyze(AnalyzeArgs),
    /// Closed-form merit bounds.
    Bounds(BoundsArgs),
    /// Exhaustive or annealing companion-pair search.
    Search(SearchArgs),
    /// Lift a half-length pair to a companion pair.
    Lift(LiftArgs),
    /// Check a predicate on sequences or matrices.
    Verify(VerifyArgs),
    /// Run the bundled reproduction suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// File holding c0 (and optionally c1, else c1 = conj(f_i(c0))), or `golay:q`.
    #[arg(long)]
    seed: String,
    #[arg(long, default_value_t = 0)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    /// One mode for every step, or a comma list with one per step.
    #[arg(long, default_value = "concat")]
    length_mode: String,
    #[arg(long, default_value = "concat")]
    size_mode: String,
    /// Print the construction layout instead of one matrix per set.
    #[arg(long)]
    wide: bool,
    /// Write the JSON sidecar here.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Matrix file; several blocks are joined side by side.
    file: PathBuf,
    #[arg(long)]
    periodic: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 0)]
    t: u32,
    /// Seed energy, integer or `p/q`; defaults to m.
    #[arg(long = "E")]
    e: Option<String>,
    #[arg(long)]
    lambda0: Option<String>,
    #[arg(long = "S0")]
    s0: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value = "binary")]
    alphabet: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    t: usize,
    /// `merit:bound`, e.g. `lambdaA:2`.
    #[arg(long, conflicts_with = "minimize")]
    constraint: Option<String>,
    #[arg(long)]
    minimize: Option<String>,
    #[arg(long)]
    anneal: bool,
    #[arg(long)]
    half_len: Option<usize>,
    /// Evaluations per annealing chain; accepts `5e6`.
    #[arg(long, default_value = "5e6")]
    budget: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "COMPSEQ_JOBS")]
    jobs: Option<usize>,
    /// Independent annealing chains; the best is reported.
    #[arg(long, default_value_t = 1)]
    chains: usize,
    /// Wall-clock cap in seconds for annealing (makes output timing dependent).
    #[arg(long)]
    time_limit: Option<f64>,
    /// Largest candidate count for exhaustive search.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 100)]
    max_pairs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LiftArgs {
    #[arg(long = "case", value_parser = clap::value_parser!(u8).range(1..=2))]
    case: u8,
    #[arg(long)]
    s0: PathBuf,
    #[arg(long)]
    s1: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("predicate").required(true).multiple(false)))]
struct VerifyArgs {
    /// File with two sequences.
    #[arg(long, group = "predicate")]
    companion: Option<PathBuf>,
    /// File with two sequences, or one to search for a mate.
    #[arg(long, group = "predicate")]
    golay: Option<PathBuf>,
    /// File with one or more matrices, each checked.
    #[arg(long, group = "predicate")]
    complementary: Option<PathBuf>,
    /// File with two matrices.
    #[arg(long, group = "predicate")]
    mates: Option<PathBuf>,
    /// Files holding the sets, or one wide matrix.
    #[arg(long, num_args = 1.., group = "predicate")]
    mo: Option<Vec<PathBuf>>,
    /// Set width for a single wide matrix; tried over all divisors otherwise.
    #[arg(long, requires = "mo")]
    set_width: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long)]
    json: bool,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.cmd {
        Command::Build(a) => cmd_build(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Search(a) => cmd_search(a, out, err),
        Command::Lift(a) => cmd_lift(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(CliError::Verify) => 1,
        Err(e) => {
            let _ = writeln!(err, "compseq: {}", e);
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn emit_json(out: &mut dyn Write, verb: &str, body: Value) -> Result<(), CliError> {
    let doc = report::envelope(verb, body);
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")))
}

fn verdict(ok: bool) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Verify)
    }
}

fn parse_modes(text: &str, steps: usize, flag: &str) -> Result<Vec<ExtendMode>, CliError> {
    let modes = text.split(',').map(|s| s.trim().parse::<ExtendMode>()).collect::<Result<Vec<_>, _>>()?;
    match modes.len() {
        1 => Ok(vec![modes[0]; steps]),
        n if n == steps => Ok(modes),
        n => Err(CliError::Usage(format!("--{} lists {} modes for {} steps", flag, n, steps))),
    }
}

fn load_seed(spec: &str) -> Result<(Seq, Seq), CliError> {
    if let Some(q) = spec.strip_prefix("golay:") {
        let q: usize = q.parse().map_err(|_| CliError::Usage(format!("bad golay order `{}`", q)))?;
        let (h00, _, h10, _) = golay_seed(q);
        return Ok((h00, h10));
    }
    let seqs = parse_sequences(&read_text(spec.as_ref())?)?;
    match seqs.as_slice() {
        [c0] => Ok((c0.clone(), c0.f_i_conj()?)),
        [c0, c1] => Ok((c0.clone(), c1.clone())),
        s => Err(Error::Parse(format!("seed file must hold one or two sequences, found {}", s.len())).into()),
    }
}

fn cmd_build(a: BuildArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (c0, c1) = load_seed(&a.seed)?;
    let recipe = BuildRecipe::new(parse_modes(&a.length_mode, a.p, "length-mode")?, parse_modes(&a.size_mode, a.t, "size-mode")?);
    let mo = build(&c0, &c1, &recipe)?;
    let sets = mo.sets();
    let complementary = sets.iter().all(compseq_core::complementary::is_complementary_set);
    let is_mo = mo.is_mo();
    let membership = verify_column_membership(&mo, &c0, &c1, a.t)?;
    let names = |v: &[ExtendMode]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>();
    let sidecar = json!({
        "dims": { "sets": mo.k(), "rows": mo.rows(), "set_width": mo.set_width(), "wide_cols": mo.matrix().cols() },
        "recipe": {
            "c0": report::seq(&c0),
            "c1": report::seq(&c1),
            "p": a.p,
            "t": a.t,
            "length_modes": names(&recipe.length_modes),
            "size_modes": names(&recipe.size_modes),
        },
        "verified": { "complementary": complementary, "mo": is_mo, "column_membership": membership },
    });
    let header = format!(
        "# {} sets of {}x{}, p={} t={}, length modes [{}], size modes [{}]\n",
        mo.k(),
        mo.rows(),
        mo.set_width(),
        a.p,
        a.t,
        names(&recipe.length_modes).join(","),
        names(&recipe.size_modes).join(","),
    );
    let body = if a.wide { write_matrices(std::slice::from_ref(mo.matrix())) } else { write_matrices(&sets) };
    if let Some(path) = &a.sidecar {
        let doc = serde_json::to_string_pretty(&report::envelope("build", sidecar.clone())).expect("serializes");
        std::fs::write(path, doc + "\n").map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    }
    if a.json {
        let mut v = sidecar;
        v["matrix"] = body.into();
        emit_json(out, "build", v)?;
    } else {
        emit(out, &header)?;
        emit(out, &body)?;
    }
    verdict(complementary && is_mo && membership)
}

fn load_matrix(path: &PathBuf) -> Result<SeqMatrix, CliError> {
    let ms = parse_matrices(&read_text(path)?)?;
    Ok(SeqMatrix::hconcat_all(&ms)?)
}

fn cmd_analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let m = load_matrix(&a.file)?;
    let r = column_report(&m);
    if a.json {
        return emit_json(out, "analyze", report::column_report(&r, a.periodic));
    }
    let mut s = format!("{} columns of length {}\n", m.cols(), m.rows());
    s += if a.periodic { "col  lambdaA  SA  lambdaP  SP  zeros\n" } else { "col  lambdaA  SA  zeros\n" };
    for (j, (c, z)) in r.per_column.iter().zip(&r.zero_counts).enumerate() {
        if a.periodic {
            s += &format!("{:<4} {} {} {} {} {}\n", j, c.lambda_a(), c.s_a, c.lambda_p(), c.s_p, z);
        } else {
            s += &format!("{:<4} {} {} {}\n", j, c.lambda_a(), c.s_a, z);
        }
    }
    s += &format!("lambdaA_u = {}\nSA_u = {}\n", r.lambda_a(), r.s_a);
    if a.periodic {
        s += &format!("lambdaP_u = {}\nSP_u = {}\n", r.lambda_p(), r.s_p);
    }
    emit(out, &s)
}

fn parse_rational(text: &str, flag: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("--{} expects an integer or p/q, got `{}`", flag, text));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i128>().map_err(|_| bad())?, d.trim().parse::<i128>().map_err(|_| bad())?),
        None => (text.trim().parse::<i128>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opt = |v: &Option<String>, f: &str| v.as_deref().map(|s| parse_rational(s, f)).transpose();
    let r = bound_report(a.m, a.t, opt(&a.e, "E")?, opt(&a.lambda0, "lambda0")?, opt(&a.s0, "S0")?);
    if a.json {
        return emit_json(out, "bounds", report::bound_report(&r));
    }
    let mut s = format!("m = {}, t = {}, E = {}\n", r.m, r.t, r.e);
    if let Some(e) = &r.existence {
        s += &format!("lambda_W^A = {}  (m/sqrt(2m-3) = {:.6})\n", e.lambda_w_a, e.lambda_a_lb);
        s += &format!("lambda_W^P = {}  (m/sqrt(m-1) = {:.6})\n", e.lambda_w_p, e.lambda_p_lb);
    }
    s += &format!("necessary lambdaA_u >= {}\n", r.necessary_lambda_a);
    s += &format!("threshold lambda0 <= {}\n", r.threshold_lambda0);
    if let Some(v) = r.sufficient_lambda_a {
        s += &format!("sufficient lambdaA_u <= {}\n", v);
    }
    if let Some(v) = r.sufficient_s_a {
        s += &format!("sufficient SA_u <= {}\n", v);
    }
    if let (Some(wa), Some(wp)) = (r.welch_a, r.welch_p) {
        s += &format!("Welch (N = m/2, K = 2): aperiodic {:.6}, periodic {:.6}\n", wa, wp);
    }
    emit(out, &s)
}

fn parse_budget(text: &str) -> Result<u64, CliError> {
    let v: f64 = text.parse().map_err(|_| CliError::Usage(format!("--budget expects a number, got `{}`", text)))?;
    if !(v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64) {
        return Err(CliError::Usage(format!("--budget must be a positive integer, got `{}`", text)));
    }
    Ok(v as u64)
}

fn parse_constraint(text: &str) -> Result<Objective, CliError> {
    let (kind, bound) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--constraint expects merit:bound, got `{}`", text)))?;
    let bound = bound.parse().map_err(|_| CliError::Usage(format!("bad bound `{}`", bound)))?;
    Ok(Objective::Constraint { kind: kind.parse()?, bound })
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let jobs = a.jobs.unwrap_or_else(default_jobs).max(1);
    let alphabet: Alphabet = a.alphabet.parse()?;
    let started = Instant::now();
    if a.anneal {
        let half_len = a
            .half_len
            .or(a.m.map(|m| m / 2))
            .ok_or_else(|| CliError::Usage("--anneal needs --half-len or --m".into()))?;
        if alphabet != Alphabet::Binary {
            return Err(Error::Capability("annealing is implemented for binary sequences only".into()).into());
        }
        let cfg = AnnealConfig::new(half_len, parse_budget(&a.budget)?, a.seed);
        let deadline = a.time_limit.map(|s| started + Duration::from_secs_f64(s));
        let res = anneal_chains(&cfg, a.chains, jobs, deadline)?;
        let _ = writeln!(err, "elapsed {:.3}s", started.elapsed().as_secs_f64());
        if a.json {
            return emit_json(out, "search", report::anneal_result(&res.best, &res.seeds, res.best_chain));
        }
        let r = &res.best;
        let mut s = format!("lambda_B = {} after {} evaluations (chain {} of {})\n", r.cost, r.evaluations, res.best_chain, res.seeds.len());
        s += &format!("s0 = {}\ns1 = {}\n", r.s0, r.s1);
        if res.costs.len() > 1 {
            s += &format!("chain costs: {:?}\n", res.costs);
        }
        return emit(out, &s);
    }
    let m = a.m.ok_or_else(|| CliError::Usage("exhaustive search needs --m".into()))?;
    let objective = match (&a.constraint, &a.minimize) {
        (Some(c), None) => parse_constraint(c)?,
        (None, Some(k)) => Objective::Minimize(k.parse::<MeritKind>()?),
        _ => return Err(CliError::Usage("give exactly one of --constraint or --minimize".into())),
    };
    let cfg = SearchConfig { alphabet, m, t: a.t, objective, cap: a.cap, max_pairs: Some(a.max_pairs) };
    let res = parallel_search(&cfg, jobs)?;
    let _ = writeln!(err, "elapsed {:.3}s", started.elapsed().as_secs_f64());
    if a.json {
        let mut v = report::search_result(&res);
        v["config"] = json!({ "alphabet": alphabet.name(), "m": m, "t": a.t, "objective": objective_text(&objective) });
        return emit_json(out, "search", v);
    }
    let mut s = format!("candidates {}  retained {}  pairs {}\n", res.candidates, res.retained, res.total_pairs);
    if let Some(min) = res.minimum {
        s += &format!("minimum {} = {}\n", objective.kind(), min);
    }
    for p in &res.pairs {
        s += &format!("{}  |  {}  |  {}\n", p.c0, p.c1, p.merit);
    }
    if (res.pairs.len() as u64) < res.total_pairs {
        s += &format!("({} more not listed)\n", res.total_pairs - res.pairs.len() as u64);
    }
    emit(out, &s)
}

fn objective_text(o: &Objective) -> String {
    match o {
        Objective::Constraint { kind, bound } => format!("{}:{}", kind, bound),
        Objective::Minimize(kind) => format!("minimize:{}", kind),
    }
}

fn load_one_seq(path: &PathBuf) -> Result<Seq, CliError> {
    let mut seqs = parse_sequences(&read_text(path)?)?;
    if seqs.len() != 1 {
        return Err(Error::Parse(format!("{}: expected one sequence, found {}", path.display(), seqs.len())).into());
    }
    Ok(seqs.remove(0))
}

fn cmd_lift(a: LiftArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s0 = load_one_seq(&a.s0)?;
    let s1 = load_one_seq(&a.s1)?;
    let (pair, identities) = if a.case == 1 {
        (case1_lift(&s0, &s1)?, case1_decomposition_check(&s0, &s1)?)
    } else {
        (case2_lift(&s0, &s1)?, case2_decomposition_check(&s0, &s1)?)
    };
    let (r0, r1) = (merits(&pair.c0), merits(&pair.c1));
    let lambda_u = r0.lambda_a().max(r1.lambda_a());
    let bounds = case_bounds(&s0, &s1)?;
    let bound = if a.case == 1 { bounds.case1_lambda_a } else { bounds.case2_lambda_a };
    let lb = lambda_b(&s0, &s1)?;
    if a.json {
        return emit_json(
            out,
            "lift",
            json!({
                "case": a.case,
                "c0": report::seq(&pair.c0),
                "c1": report::seq(&pair.c1),
                "merits_c0": report::merit_report(&r0),
                "merits_c1": report::merit_report(&r1),
                "lambda_b": report::magnitude(lb),
                "lambda_u": report::magnitude(lambda_u),
                "lambda_u_bound": report::magnitude(bound),
                "identities_hold": identities.is_none(),
            }),
        );
    }
    let mut s = format!("c0 = {}\nc1 = {}\n", pair.c0, pair.c1);
    s += &format!("lambda_B(s0, s1) = {}\nlambdaA_u = {} (bound {})\n", lb, lambda_u, bound);
    if let Some(mm) = identities {
        s += &format!("identity {} fails at lag {}: {} vs {}\n", mm.identity, mm.lag, mm.expected, mm.actual);
    }
    emit(out, &s)
}

fn two<T: Clone>(v: &[T], what: &str) -> Result<(T, T), CliError> {
    match v {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Error::Parse(format!("expected two {}, found {}", what, v.len())).into()),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, ok, witness) = if let Some(p) = &a.companion {
        let (c0, c1) = two(&parse_sequences(&read_text(p)?)?, "sequences")?;
        let found = is_companion_pair(&c0, &c1)?;
        let w = found.as_ref().map(|cp| json!({ "pairing": cp.pairing().pairs(), "conjugate_form": cp.is_conjugate_form() }));
        ("companion", found.is_some(), w)
    } else if let Some(p) = &a.golay {
        let seqs = parse_sequences(&read_text(p)?)?;
        if seqs.len() == 1 {
            let mate = compseq_core::complementary::find_golay_mate(&seqs[0])?;
            ("golay", mate.is_some(), mate.map(|m| json!({ "mate": report::seq(&m) })))
        } else {
            let (x, y) = two(&seqs, "sequences")?;
            ("golay", is_golay_pair(&x, &y)?, None)
        }
    } else if let Some(p) = &a.complementary {
        let ms = parse_matrices(&read_text(p)?)?;
        let bad = ms.iter().enumerate().find_map(|(i, m)| complementary_residual(m).map(|(lag, v)| (i, lag, v)));
        let w = bad.map(|(i, lag, v)| json!({ "matrix": i, "lag": lag, "residual": v.to_string() }));
        ("complementary", bad.is_none(), w)
    } else if let Some(p) = &a.mates {
        let (x, y) = two(&parse_matrices(&read_text(p)?)?, "matrices")?;
        ("mates", are_mates(&x, &y)?, None)
    } else if let Some(paths) = &a.mo {
        let mut ms = Vec::new();
        for p in paths {
            ms.extend(parse_matrices(&read_text(p)?)?);
        }
        verify_mo(ms, a.set_width)?
    } else {
        unreachable!("clap requires one predicate")
    };
    if a.json {
        emit_json(out, "verify", report::predicate(name, ok, witness))?;
    } else {
        let mut s = format!("{}={}\n", name, ok);
        if let Some(w) = witness {
            s += &format!("witness {}\n", w);
        }
        emit(out, &s)?;
    }
    verdict(ok)
}

fn verify_mo(ms: Vec<SeqMatrix>, set_width: Option<usize>) -> Result<(&'static str, bool, Option<Value>), CliError> {
    if ms.len() > 1 {
        if set_width.is_some() {
            return Err(CliError::Usage("--set-width applies to a single wide matrix".into()));
        }
        return Ok(("mo", is_mo_collection(&ms)?, None));
    }
    let m = ms.into_iter().next().ok_or_else(|| Error::Parse("no matrix given".into()))?;
    let widths: Vec<usize> = match set_width {
        Some(w) => vec![w],
        None => (1..m.cols()).filter(|w| m.cols() % w == 0).collect(),
    };
    for w in widths {
        if let Some((mo, modes)) = infer_mo_layout(&m, w)? {
            let w = json!({
                "set_width": w,
                "size_extensions": modes.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "sets": mo.set_columns(),
            });
            return Ok(("mo", true, Some(w)));
        }
    }
    Ok(("mo", false, None))
}

fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let items = selftest::run();
    let ok = items.iter().all(|i| i.outcome.is_ok());
    if a.json {
        let v: Vec<Value> = items
            .iter()
            .map(|i| json!({ "item": i.name, "pass": i.outcome.is_ok(), "detail": i.outcome.as_ref().err() }))
            .collect();
        emit_json(out, "selftest", json!({ "items": v, "pass": ok }))?;
    } else {
        let mut s = String::new();
        for i in &items {
            match &i.outcome {
                Ok(()) => s += &format!("PASS  {}\n", i.name),
                Err(e) => s += &format!("FAIL  {}: {}\n", i.name, e),
            }
        }
        emit(out, &s)?;
    }
    verdict(ok)
}
