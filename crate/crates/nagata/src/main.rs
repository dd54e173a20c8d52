use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nagata::acceptance;
use nagata::datasets::{read_input, DataSource};
use nagata::wire::{self, AnyConfig, ConfigFile, FieldSpec, SystemFile};
use nagata::with_config;
use nagata_core::config::PointConfig;
use nagata_core::cremona::{
    analyze_cubic_config, analyze_quadric_config, cremona_walk, standard_cremona, Status, WalkCheck, WalkReport,
    WalkStrategy,
};
use nagata_core::field::{Field, GaloisField};
use nagata_core::forms::{
    base_locus, eighth_base_point, h0, is_smooth_zero_dim, ninth_base_point, pencil_net_irreducible,
};
use nagata_core::picard::{mw_rank_cubic, mw_rank_quadric, CremonaLattice, GeneratorSet, PicClass, DEFAULT_MAX_CLASSES};
use nagata_core::rep::{
    build_representation, mukai_cross_check, render_generator, twist_representation, variable_names,
    GaRepresentation, MukaiBox,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "nagata", version, about = "Exact checks of infinitely generated invariant rings from point configurations")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random Cremona walks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Abort orbit searches beyond this many classes.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CLASSES)]
    max_classes: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mordell-Weil verdict for 9 points in P^2 or 8 points in P^3.
    Analyze { config: String },
    /// The rank from a configuration, or from the counts a and b.
    Rho {
        config: Option<String>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, default_value_t = 0)]
        b: u64,
        /// Use the quadric net formula 7 - a/2.
        #[arg(long)]
        quadric: bool,
    },
    /// Weyl group orbit of exceptional classes.
    Orbit {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Breadth-first depth; runs until closed when omitted.
        #[arg(long)]
        depth: Option<usize>,
        /// Seeds: comma separated indices i of E_i, or "all".
        #[arg(long, default_value = "all")]
        seeds: String,
        #[arg(long)]
        degree_cap: Option<i64>,
        #[arg(long, value_enum, default_value_t = Generators::AllCremona)]
        generators: Generators,
        /// Print every class.
        #[arg(long)]
        list: bool,
    },
    /// Dimension of forms of degree a with multiplicities b at the points.
    H0 {
        config: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Comma separated multiplicities.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Absolute irreducibility of every member of a pencil or net.
    Irreducible {
        system: String,
        #[arg(long)]
        p: Option<u64>,
        /// Cross-check against the incidences of these base points.
        #[arg(long)]
        config: Option<String>,
    },
    /// Base points of a pencil or net, over extensions up to degree max-ext.
    BaseLocus {
        system: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 6)]
        max_ext: u32,
    },
    /// The ninth base point of the cubics through the first eight points.
    NinthPoint { config: String },
    /// The eighth base point of the quadrics through the first seven points.
    EighthPoint { config: String },
    /// The associated configuration.
    Dualize { config: String },
    #[command(subcommand)]
    Cremona(CremonaCmd),
    #[command(subcommand)]
    Rep(RepCmd),
    /// Run the verification suite.
    VerifyPaper {
        /// Criterion number, name fragment or tag (e.g. "rho").
        #[arg(long)]
        filter: Option<String>,
        /// Read datasets from this directory when present.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CremonaCmd {
    /// Apply the standard Cremona transformation at the given points (1-based).
    Apply {
        config: String,
        #[arg(long)]
        subset: String,
    },
    /// Walk through repeated transformations.
    Walk {
        config: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Check::Pencil)]
        check: Check,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// The representation of (G_a)^(n-r) on A^2n.
    Build {
        #[arg(long, default_value = "grid_f5")]
        config: String,
        /// Use normalized points instead of the given representatives.
        #[arg(long)]
        normalized: bool,
    },
    /// Its form over F_base.
    Twist {
        #[arg(long, default_value = "grid_f5")]
        config: String,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        normalized: bool,
    },
    /// Is a polynomial in x1..xn, y1..yn invariant?
    Check {
        #[arg(long, default_value = "grid_f5")]
        config: String,
        #[arg(long)]
        poly: String,
    },
    /// Invariants of pair-degree c and y-degree a, against h0.
    Dims {
        #[arg(long, default_value = "grid_f5")]
        config: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        a: u32,
    },
    /// Compare invariant dimensions with h0 on a box of degrees.
    Crosscheck {
        #[arg(long, default_value = "grid_f5")]
        config: String,
        #[arg(long, default_value_t = 3)]
        amax: u32,
        #[arg(long, default_value_t = 3)]
        cmax: u32,
        #[arg(long, default_value_t = 10_000)]
        basis_limit: usize,
        /// Print every cell.
        #[arg(long)]
        rows: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generators {
    Simple,
    AllCremona,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Lgp,
    Pencil,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Input = 1,
    Undetermined = 2,
    Inconsistent = 3,
}

struct Outcome {
    results: Value,
    text: String,
    citations: Vec<String>,
    exit: Exit,
}

impl Outcome {
    fn new(results: Value, text: String) -> Self {
        Outcome { results, text, citations: Vec::new(), exit: Exit::Ok }
    }

    fn cite(mut self, c: Option<String>) -> Self {
        self.citations.extend(c);
        self
    }

    fn exit(mut self, e: Exit) -> Self {
        self.exit = e;
        self
    }
}

struct Inputs {
    texts: Vec<String>,
}

impl Inputs {
    fn config(&mut self, arg: &str) -> Result<ConfigFile> {
        let text = read_input(arg)?;
        let cfg = ConfigFile::from_json(&text)?;
        self.texts.push(text);
        Ok(cfg)
    }

    fn system(&mut self, arg: &str) -> Result<SystemFile> {
        let text = read_input(arg)?;
        let sys = SystemFile::from_json(&text)?;
        self.texts.push(text);
        Ok(sys)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs { texts: Vec::new() };
    let (name, outcome) = match run(&cli, &mut inputs) {
        Ok(x) => x,
        Err(e) => {
            let code = match e.downcast_ref::<nagata_core::Error>() {
                Some(nagata_core::Error::Inconsistent(_)) => Exit::Inconsistent,
                _ => Exit::Input,
            };
            eprintln!("error: {e:#}");
            return ExitCode::from(code as u8);
        }
    };
    if cli.json {
        let mut h = Sha256::new();
        for a in std::env::args().skip(1) {
            h.update(a.as_bytes());
            h.update([0]);
        }
        for t in &inputs.texts {
            h.update(t.as_bytes());
            h.update([0]);
        }
        let report = json!({
            "command": name,
            "inputs_digest": format!("{:x}", h.finalize()),
            "results": outcome.results,
            "citations": outcome.citations,
            "exit_status": outcome.exit as u8,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("JSON values serialize"));
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit as u8)
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<(&'static str, Outcome)> {
    Ok(match &cli.cmd {
        Cmd::Analyze { config } => {
            let file = inputs.config(config)?;
            ("analyze", with_config!(file.build()?, c => analyze(&c, file.citation())?))
        }
        Cmd::Rho { config, a, b, quadric } => ("rho", rho(inputs, config.as_deref(), *a, *b, *quadric)?),
        Cmd::Orbit { r, n, depth, seeds, degree_cap, generators, list } => {
            ("orbit", orbit(*r, *n, *depth, seeds, *degree_cap, *generators, *list, cli.max_classes)?)
        }
        Cmd::H0 { config, a, b } => {
            let file = inputs.config(config)?;
            let b: Vec<i64> = wire::parse_list(b)?;
            let v = with_config!(file.build()?, c => h0(&c, *a, &b)?);
            ("h0", Outcome::new(json!({ "a": a, "b": b, "h0": v }), format!("h0 = {v}\n")).cite(file.citation()))
        }
        Cmd::Irreducible { system, p, config } => {
            let sys_file = inputs.system(system)?;
            let cfg = config.as_deref().map(|c| inputs.config(c)).transpose()?;
            ("irreducible", irreducible(&sys_file, *p, cfg.as_ref())?)
        }
        Cmd::BaseLocus { system, p, max_ext } => {
            let sys_file = inputs.system(system)?;
            ("base-locus", base_locus_cmd(&sys_file, *p, *max_ext)?)
        }
        Cmd::NinthPoint { config } => ("ninth-point", complete(inputs, config, 3)?),
        Cmd::EighthPoint { config } => ("eighth-point", complete(inputs, config, 4)?),
        Cmd::Dualize { config } => {
            let file = inputs.config(config)?;
            let out = with_config!(file.build()?, c => config_out(&file.field, &c.dualize()?));
            let text = format!("{}\n", serde_json::to_string(&out)?);
            ("dualize", Outcome::new(out, text).cite(file.citation()))
        }
        Cmd::Cremona(CremonaCmd::Apply { config, subset }) => {
            let file = inputs.config(config)?;
            let subset: Vec<usize> = wire::parse_list(subset)?;
            if subset.iter().any(|&i| i == 0) {
                bail!("points are numbered from 1");
            }
            let idx: Vec<usize> = subset.iter().map(|i| i - 1).collect();
            let out = with_config!(file.build()?, c => {
                let (next, step) = standard_cremona(&c, &idx)?;
                json!({
                    "subset": subset,
                    "transform": wire::matrix(&step.transform),
                    "config": config_out(&file.field, &next),
                    "linear_general_position": next.in_linear_general_position(),
                })
            });
            let text = format!("{}\n", serde_json::to_string_pretty(&out)?);
            ("cremona apply", Outcome::new(out, text).cite(file.citation()))
        }
        Cmd::Cremona(CremonaCmd::Walk { config, depth, mode, check }) => {
            let file = inputs.config(config)?;
            let strategy = match mode {
                Mode::Exhaustive => WalkStrategy::Exhaustive,
                Mode::Random => WalkStrategy::Random { seed: cli.seed },
            };
            let check = match check {
                Check::Lgp => WalkCheck::LinearGeneralPosition,
                Check::Pencil => WalkCheck::PencilInvariant,
            };
            let report = with_config!(file.build()?, c => cremona_walk(&c, *depth, strategy, check)?);
            ("cremona walk", walk_out(&report, strategy).cite(file.citation()))
        }
        Cmd::Rep(cmd) => rep(inputs, cmd)?,
        Cmd::VerifyPaper { filter, data_dir } => {
            let data = data_dir.as_ref().map_or_else(DataSource::bundled, DataSource::with_dir);
            let results = acceptance::run(filter.as_deref(), &data);
            let mut text = String::new();
            for r in &results {
                writeln!(text, "{}", r.line())?;
            }
            let all = results.iter().all(|r| r.passed);
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail }))
                .collect();
            let out = Outcome::new(json!({ "criteria": rows, "all_passed": all }), text);
            ("verify-paper", out.exit(if all { Exit::Ok } else { Exit::Inconsistent }))
        }
    })
}

fn config_out<F: Field>(spec: &FieldSpec, c: &PointConfig<F>) -> Value {
    json!({
        "field": spec,
        "r": c.r(),
        "points": c.points().iter().map(|p| wire::vector(c.field(), p)).collect::<Vec<_>>(),
    })
}

fn analyze<F: Field>(cfg: &PointConfig<F>, citation: Option<String>) -> Result<Outcome> {
    let v = match (cfg.r(), cfg.n()) {
        (3, 9) => analyze_cubic_config(cfg)?,
        (4, 8) => analyze_quadric_config(cfg)?,
        (r, n) => bail!("need 9 points in P^2 or 8 points in P^3, got {n} points in P^{}", r - 1),
    };
    let cites: Vec<String> = citation.into_iter().collect();
    let json = wire::verdict_json(&v, &cites);
    let mut text = format!("status: {}\n", v.status.as_str());
    if let Some(rho) = v.rho {
        writeln!(text, "a = {}, b = {}, rho = {rho}", v.a.unwrap_or(0), v.b.unwrap_or(0))?;
    }
    writeln!(text, "route: {}", v.certificate.route.as_str())?;
    writeln!(text, "{}", v.certificate.reason)?;
    for m in &v.certificate.reducible_members {
        writeln!(text, "  reducible: {}", wire::poly_text(m.poly()))?;
    }
    let exit = if v.status == Status::Undetermined { Exit::Undetermined } else { Exit::Ok };
    Ok(Outcome { results: json, text, citations: cites, exit })
}

fn rho(inputs: &mut Inputs, config: Option<&str>, a: Option<u64>, b: u64, quadric: bool) -> Result<Outcome> {
    if let Some(path) = config {
        let file = inputs.config(path)?;
        let out = with_config!(file.build()?, c => analyze(&c, file.citation())?);
        let r = &out.results;
        let text = format!("a = {}, b = {}, rho = {}\n", r["a"], r["b"], r["rho"]);
        let results = json!({ "a": r["a"], "b": r["b"], "rho": r["rho"], "status": r["status"] });
        return Ok(Outcome { results, text, ..out });
    }
    let Some(a) = a else { bail!("give a configuration or --a") };
    let rho = if quadric { mw_rank_quadric(a) } else { mw_rank_cubic(a, b) };
    let rho = rho.map_err(|e| anyhow::anyhow!("invalid counts: {e}"))?;
    let b = if quadric { None } else { Some(b) };
    Ok(Outcome::new(json!({ "a": a, "b": b, "rho": rho }), format!("rho = {rho}\n")))
}

fn parse_seeds(s: &str, n: usize) -> Result<Vec<PicClass>> {
    if s == "all" {
        return Ok((1..=n).map(|i| PicClass::e(n, i)).collect());
    }
    let idx: Vec<usize> = wire::parse_list(s)?;
    if idx.iter().any(|&i| i == 0 || i > n) {
        bail!("seed indices must lie in 1..={n}");
    }
    Ok(idx.into_iter().map(|i| PicClass::e(n, i)).collect())
}

#[allow(clippy::too_many_arguments)]
fn orbit(
    r: usize,
    n: usize,
    depth: Option<usize>,
    seeds: &str,
    cap: Option<i64>,
    generators: Generators,
    list: bool,
    max_classes: usize,
) -> Result<Outcome> {
    let lattice = CremonaLattice::new(r, n)?;
    let set = match generators {
        Generators::Simple => GeneratorSet::Simple,
        Generators::AllCremona => GeneratorSet::AllCremona,
    };
    let rep = lattice.orbit_bfs(&parse_seeds(seeds, n)?, depth, cap, set, max_classes)?;
    let mut text = format!("{} classes, closed: {}\ndepth  max degree\n", rep.classes.len(), rep.closed);
    for (d, m) in rep.per_depth_max_degree.iter().enumerate() {
        writeln!(text, "{d:>5}  {m}")?;
    }
    if list {
        for c in &rep.classes {
            writeln!(text, "{} {:?}", c.d, c.m)?;
        }
    }
    let mut results = json!({
        "r": r,
        "n": n,
        "count": rep.classes.len(),
        "closed": rep.closed,
        "per_depth_max_degree": rep.per_depth_max_degree,
    });
    if list {
        results["classes"] = rep.classes.iter().map(wire::class_json).collect();
    }
    Ok(Outcome::new(results, text))
}

fn irreducible(sys_file: &SystemFile, p: Option<u64>, cfg: Option<&ConfigFile>) -> Result<Outcome> {
    let f = sys_file.field(p)?;
    let sys = sys_file.build(&f)?;
    let cfg = match cfg {
        Some(c) => Some(c.config_over(&f)?),
        None => None,
    };
    let scheme = is_smooth_zero_dim(&sys)?;
    let report = pencil_net_irreducible(&sys, cfg.as_ref())?;
    let reducible: Vec<Value> = report
        .reducible_members
        .iter()
        .map(|(c, m)| json!({ "coefficients": wire::vector(&f, c), "form": wire::form_json(m) }))
        .collect();
    let results = json!({
        "field": FieldSpec::of(&f),
        "members": sys.members().len(),
        "smooth_base_locus": scheme.is_smooth(),
        "base_scheme": scheme.reason(),
        "all_irreducible": report.all_irreducible,
        "reducible_members": reducible,
        "incidence_verdict": report.incidence_verdict,
    });
    let mut text = format!(
        "{} members over {}: all irreducible: {}\nbase scheme: {}\n",
        sys.members().len(),
        field_name(&f),
        report.all_irreducible,
        scheme.reason()
    );
    for (_, m) in &report.reducible_members {
        writeln!(text, "  reducible: {}", wire::poly_text(m.poly()))?;
    }
    Ok(Outcome::new(results, text).cite(citation(&sys_file.name, &sys_file.source)))
}

fn citation(name: &Option<String>, source: &Option<String>) -> Option<String> {
    match (name, source) {
        (Some(n), Some(s)) => Some(format!("{n}: {s}")),
        (n, s) => n.clone().or(s.clone()),
    }
}

fn field_name(f: &GaloisField) -> String {
    format!("F_{}", f.size())
}

fn base_locus_cmd(sys_file: &SystemFile, p: Option<u64>, max_ext: u32) -> Result<Outcome> {
    let f = sys_file.field(p)?;
    let sys = sys_file.build(&f)?;
    let groups = base_locus(&sys, max_ext)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for g in &groups {
        writeln!(text, "{} points of degree {} over {}", g.points.len(), g.degree, field_name(&g.field))?;
        for pt in &g.points {
            writeln!(text, "  [{}]", wire::vector(&g.field, pt).join(", "))?;
        }
        out.push(json!({
            "degree": g.degree,
            "field": FieldSpec::of(&g.field),
            "points": g.points.iter().map(|pt| wire::vector(&g.field, pt)).collect::<Vec<_>>(),
        }));
    }
    let total: usize = groups.iter().map(|g| g.points.len()).sum();
    Ok(Outcome::new(json!({ "groups": out, "total": total }), text).cite(citation(&sys_file.name, &sys_file.source)))
}

fn complete(inputs: &mut Inputs, config: &str, r: usize) -> Result<Outcome> {
    let file = inputs.config(config)?;
    if file.r != r {
        bail!("need points in P^{}", r - 1);
    }
    let k = 11 - r;
    let file = file.truncated(k.min(file.points.len()))?;
    if file.points.len() != k {
        bail!("need {k} points");
    }
    let point = match file.field.build()? {
        wire::AnyField::Finite(f) => {
            let pts = file.raw_points(&f)?;
            let p = if r == 3 { ninth_base_point(&f, &pts)? } else { eighth_base_point(&f, &pts)? };
            wire::vector(&f, &p)
        }
        wire::AnyField::Rational(q) => {
            let pts = file.raw_points(&q)?;
            let p = if r == 3 { ninth_base_point(&q, &pts)? } else { eighth_base_point(&q, &pts)? };
            wire::vector(&q, &p)
        }
    };
    let text = format!("[{}]\n", point.join(", "));
    Ok(Outcome::new(json!({ "point": point }), text).cite(file.citation()))
}

fn walk_out(w: &WalkReport, strategy: WalkStrategy) -> Outcome {
    let one = |s: &Vec<usize>| s.iter().map(|i| i + 1).collect::<Vec<_>>();
    let seed = match strategy {
        WalkStrategy::Random { seed } => Some(seed),
        WalkStrategy::Exhaustive => None,
    };
    let failure = w.failure.as_ref().map(|f| {
        json!({
            "path": f.path.iter().map(one).collect::<Vec<_>>(),
            "reason": f.reason,
            "witness": f.witness.as_ref().map(one),
        })
    });
    let results = json!({
        "survived": w.survived,
        "seed": seed,
        "log": w.log.iter().map(one).collect::<Vec<_>>(),
        "explored_per_depth": w.explored_per_depth,
        "skipped_illegal": w.skipped_illegal,
        "rho": w.rho,
        "failure": failure,
    });
    let mut text = format!("survived: {}\n", w.survived);
    if let Some(s) = seed {
        text += &format!("seed: {s}\n");
    }
    if let Some(rho) = w.rho {
        text += &format!("rho: {rho}\n");
    }
    if !w.log.is_empty() {
        let steps: Vec<String> = w.log.iter().map(|s| format!("{:?}", one(s))).collect();
        text += &format!("steps: {}\n", steps.join(" "));
    }
    text += &format!("explored per depth: {:?}\nskipped illegal: {}\n", w.explored_per_depth, w.skipped_illegal);
    if let Some(f) = &w.failure {
        text += &format!("failure after {:?}: {}\n", f.path.iter().map(one).collect::<Vec<_>>(), f.reason);
    }
    let exit = if w.survived { Exit::Ok } else { Exit::Undetermined };
    Outcome::new(results, text).exit(exit)
}

fn representation<F: Field>(file: &ConfigFile, f: &F, normalized: bool) -> Result<GaRepresentation<F>> {
    if normalized {
        Ok(build_representation(&file.config_over(f)?)?)
    } else {
        file.config_over(f)?;
        Ok(GaRepresentation::from_point_matrix(file.raw_matrix(f)?)?)
    }
}

fn rep_json<F: Field>(rep: &GaRepresentation<F>) -> Value {
    json!({
        "n": rep.n(),
        "r": rep.r(),
        "point_matrix": wire::matrix(rep.point_matrix()),
        "subgroup_basis": wire::matrix(rep.subgroup_basis()),
        "generators": (0..rep.group_dim()).map(|k| render_generator(rep, k)).collect::<Vec<_>>(),
    })
}

fn rep_text<F: Field>(rep: &GaRepresentation<F>) -> String {
    let mut t = format!("(G_a)^{} acting on A^{}\n", rep.group_dim(), 2 * rep.n());
    for k in 0..rep.group_dim() {
        t += &format!("A_{} = {}\n", k + 1, render_generator(rep, k));
    }
    t
}

fn rep(inputs: &mut Inputs, cmd: &RepCmd) -> Result<(&'static str, Outcome)> {
    Ok(match cmd {
        RepCmd::Build { config, normalized } => {
            let file = inputs.config(config)?;
            let out = with_config!(file.build()?, c => {
                let rep = representation(&file, c.field(), *normalized)?;
                Outcome::new(rep_json(&rep), rep_text(&rep))
            });
            ("rep build", out.cite(file.citation()))
        }
        RepCmd::Twist { config, base, normalized } => {
            let file = inputs.config(config)?;
            let AnyConfig::Finite(c) = file.build()? else { bail!("twisting needs a finite field") };
            let base_field = GaloisField::prime(*base)?;
            let diag = representation(&file, c.field(), *normalized)?;
            let tw = twist_representation(&diag, &base_field)?;
            let conj = tw.conjugates_to(&diag)?;
            let mut results = rep_json(&tw.rep);
            results["base"] = json!(FieldSpec::of(&base_field));
            results["orbits"] = json!(tw.orbits.iter().map(|o| o.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>());
            results["blocks"] = json!(tw.rep.blocks());
            results["conjugating_basis"] = json!(wire::matrix(&tw.basis));
            results["conjugate_to_diagonal"] = json!(conj);
            let mut text = format!("form over {} of the representation over {}\n", field_name(&base_field), field_name(c.field()));
            text += &rep_text(&tw.rep);
            text += &format!("conjugate to the diagonal form: {conj}\n");
            let exit = if conj { Exit::Ok } else { Exit::Inconsistent };
            ("rep twist", Outcome::new(results, text).cite(file.citation()).exit(exit))
        }
        RepCmd::Check { config, poly } => {
            let file = inputs.config(config)?;
            let inv = with_config!(file.build()?, c => {
                let rep = build_representation(&c)?;
                let names = variable_names(rep.n());
                rep.is_invariant(&wire::parse_poly(c.field(), &names, poly)?)?
            });
            let text = format!("{}\n", if inv { "invariant" } else { "not invariant" });
            ("rep check", Outcome::new(json!({ "poly": poly, "invariant": inv }), text).cite(file.citation()))
        }
        RepCmd::Dims { config, c: cs, a } => {
            let file = inputs.config(config)?;
            let c: Vec<u32> = wire::parse_list(cs)?;
            let (inv, h) = with_config!(file.build()?, cfg => {
                let rep = build_representation(&cfg)?;
                let b: Vec<i64> = c.iter().map(|&ci| *a as i64 - ci as i64).collect();
                (rep.invariant_dimension(&c, *a)?, h0(&cfg, *a as i64, &b)?)
            });
            let text = format!("invariants: {inv}\nh0: {h}\n");
            let out = Outcome::new(json!({ "c": c, "a": a, "invariant_dim": inv, "h0": h }), text);
            let exit = if inv == h { Exit::Ok } else { Exit::Inconsistent };
            ("rep dims", out.cite(file.citation()).exit(exit))
        }
        RepCmd::Crosscheck { config, amax, cmax, basis_limit, rows } => {
            let file = inputs.config(config)?;
            let bx = MukaiBox { a_max: *amax, c_max: *cmax, basis_limit: *basis_limit };
            let t = with_config!(file.build()?, cfg => {
                let rep = build_representation(&cfg)?;
                mukai_cross_check(&rep, &cfg, bx, *rows)?
            });
            let mut text = format!(
                "{} cells ({} distinct), {} skipped, {} mismatches\n",
                t.cells, t.distinct, t.skipped, t.mismatches
            );
            for row in &t.rows {
                writeln!(
                    text,
                    "a = {} c = {:?}: invariants {} h0 {} {}",
                    row.a,
                    row.c,
                    row.invariant_dim,
                    row.h0,
                    if row.invariant_dim == row.h0 { "equal" } else { "DIFFER" }
                )?;
            }
            let results = json!({
                "cells": t.cells,
                "distinct": t.distinct,
                "skipped": t.skipped,
                "mismatches": t.mismatches,
                "all_equal": t.all_equal(),
                "rows": t.rows.iter().map(|r| json!({
                    "c": r.c, "a": r.a, "invariant_dim": r.invariant_dim, "h0": r.h0,
                    "equal": r.invariant_dim == r.h0,
                })).collect::<Vec<_>>(),
            });
            let exit = if t.all_equal() { Exit::Ok } else { Exit::Inconsistent };
            ("rep crosscheck", Outcome::new(results, text).cite(file.citation()).exit(exit))
        }
    })
}
