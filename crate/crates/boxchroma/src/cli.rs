//! Command-line driver.
//!
//! Exit codes: 0 when every check and assertion passed, 1 when a check
//! failed, 2 on usage or input errors, 3 when a solver ran out of time.

use crate::export::{export, mtl, Explode, ExportFormat};
use crate::fixtures::fixture;
use crate::format::{parse_appendix, ConfigDocument};
use crate::timer::{TimeBudget, TIME_LIMIT_ENV};
use anyhow::{anyhow, bail, Context};
use boxchroma_core::bounds::{n_bound, n_bound_all};
use boxchroma_core::chroma::verify_coloring;
use boxchroma_core::graph::common_point;
use boxchroma_core::periodic::{
    fixture_coloring, formula_coloring, perco, verify_periodic, Fixture as PeriodicFixture, Formula, PercoResult,
    PeriodicColoring,
};
use boxchroma_core::search::{criticality_reduce, run_search, Algorithm, ReduceError, SearchError, SearchParams};
use boxchroma_core::{chromatic_number, Configuration, ContactGraph, DimTriple, Engine, Freedom, SolveOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "boxchroma", version, about = "Contact graphs of congruent integer cuboids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check orientations, collisions and the stored coloring.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Treat stored colors above the declared chromatic number as a failure.
        #[arg(long)]
        strict: bool,
    },
    /// Exact chromatic number.
    Chroma {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        /// Exit 1 unless the chromatic number equals K.
        #[arg(long, value_name = "K")]
        assert_chi: Option<u32>,
        /// Write the configuration with an optimal coloring as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce to a critical subconfiguration with chromatic number K.
    Critical {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        solver: Solver,
        #[arg(long, value_name = "K")]
        chi: u32,
        /// Exit 1 unless the input is already critical.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded configuration search.
    Search(SearchArgs),
    /// Neighbor bound per orientation, as TSV.
    Nbound {
        #[arg(long, value_parser = parse_dims)]
        dims: DimTriple,
        #[arg(long, value_parser = parse_freedom)]
        freedom: Freedom,
        /// Compute mirror-image orientations too.
        #[arg(long)]
        all: bool,
    },
    /// Periodic colorings.
    Periodic {
        #[command(subcommand)]
        command: PeriodicCommand,
    },
    /// Convert to JSON, the appendix list syntax or OBJ.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = |s: &str| s.parse::<ExportFormat>())]
        format: ExportFormat,
        /// Separate layers along an axis, e.g. z:4.
        #[arg(long, value_parser = |s: &str| s.parse::<Explode>())]
        explode: Option<Explode>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the OBJ material library.
        #[arg(long)]
        mtl: Option<PathBuf>,
    },
    /// Maximum clique of the contact graph.
    Clique {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
pub enum PeriodicCommand {
    /// Check a named coloring.
    Verify {
        #[arg(long)]
        name: String,
        /// Dims, for the closed-form colorings.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<DimTriple>,
        /// Long side, for the stripe-shift colorings.
        #[arg(long)]
        a: Option<u32>,
    },
    /// Least palette of a periodic coloring with the given period.
    Perco {
        #[arg(long, value_parser = parse_dims)]
        dims: DimTriple,
        #[arg(long, value_parser = parse_freedom, default_value = "1")]
        freedom: Freedom,
        #[arg(long, value_parser = parse_triple)]
        period: [u32; 3],
        #[arg(long, default_value_t = 8)]
        max_colors: u32,
        #[command(flatten)]
        solver: Solver,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// A JSON document, an appendix listing, or `fixture:NAME`.
    pub file: String,
    /// Dims; required for appendix listings, overrides JSON metadata.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<DimTriple>,
    #[arg(long, value_parser = parse_freedom)]
    pub freedom: Option<Freedom>,
}

#[derive(Args, Debug)]
pub struct Solver {
    /// Seconds per decision; 0 means no limit.
    #[arg(long, env = TIME_LIMIT_ENV, default_value_t = 60.0)]
    pub time_limit: f64,
    #[arg(long, value_enum, default_value_t = EngineArg::Sat)]
    pub engine: EngineArg,
    /// Do not pin a maximum clique to the first colors.
    #[arg(long)]
    pub no_symmetry_breaking: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Sat,
    Dsatur,
}

impl Solver {
    fn options(&self) -> SolveOptions {
        let engine = match self.engine {
            EngineArg::Sat => Engine::Sat,
            EngineArg::Dsatur => Engine::Dsatur,
        };
        SolveOptions { engine, symmetry_breaking: !self.no_symmetry_breaking }
    }

    fn budget(&self) -> TimeBudget {
        TimeBudget::seconds(self.time_limit)
    }
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_dims)]
    pub dims: DimTriple,
    #[arg(long, value_parser = parse_freedom)]
    pub freedom: Freedom,
    /// Box side; defaults to four times the longest side.
    #[arg(long = "box")]
    pub box_size: Option<u32>,
    /// Target chromatic number.
    #[arg(long)]
    pub target: u32,
    #[arg(long)]
    pub n0: usize,
    #[arg(long, default_value_t = 3)]
    pub n00: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub algorithm: u8,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    /// Directory for trace.txt and, when found, critical.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: Solver,
}

fn parse_triple(s: &str) -> Result<[u32; 3], String> {
    let v: Vec<u32> =
        s.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected three comma-separated integers".to_string())
}

fn parse_dims(s: &str) -> Result<DimTriple, String> {
    let [a, b, c] = parse_triple(s)?;
    DimTriple::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_freedom(s: &str) -> Result<Freedom, String> {
    s.parse::<u8>().ok().and_then(Freedom::from_level).ok_or_else(|| "freedom must be 1, 2 or 3".to_string())
}

/// Why a command did not succeed.
enum Failure {
    /// A check or assertion failed.
    Check(String),
    /// Bad input or usage.
    Input(anyhow::Error),
    Timeout(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
        Err(Failure::Timeout(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            3
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Verify { input, strict } => verify(&input, strict, out, err),
        Command::Chroma { input, solver, assert_chi, out: path } => {
            chroma(&input, &solver, assert_chi, path.as_deref(), out)
        }
        Command::Critical { input, solver, chi, check, out: path } => {
            critical(&input, &solver, chi, check, path.as_deref(), out)
        }
        Command::Search(args) => search(&args, out),
        Command::Nbound { dims, freedom, all } => nbound(dims, freedom, all, out),
        Command::Periodic { command } => periodic(command, out),
        Command::Export { input, format, explode, out: path, mtl: mtl_path } => {
            let doc = load(&input)?;
            let text = export(&doc, format, explode);
            match path {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
            if let Some(p) = mtl_path {
                std::fs::write(&p, mtl(&doc)).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(())
        }
        Command::Clique { input } => clique(&input, out),
    }
}

/// Reads a document: `fixture:NAME`, JSON (first non-blank byte `{`), or an
/// appendix listing with `--dims` and `--freedom`.
pub fn load_document(file: &str, dims: Option<DimTriple>, freedom: Option<Freedom>) -> anyhow::Result<ConfigDocument> {
    if let Some(name) = file.strip_prefix("fixture:") {
        let f = fixture(name).ok_or_else(|| anyhow!("no fixture named {name:?}"))?;
        return Ok(f.document().with_metadata(dims, freedom));
    }
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    if text.trim_start().starts_with('{') {
        let doc = ConfigDocument::from_json(&text).with_context(|| format!("parsing {file}"))?;
        return Ok(doc.with_metadata(dims, freedom));
    }
    let (Some(d), Some(f)) = (dims, freedom) else {
        bail!("{file} is an appendix listing; --dims and --freedom are required");
    };
    let (doc, _) = parse_appendix(&text, d, f).with_context(|| format!("parsing {file}"))?;
    Ok(doc)
}

fn load(input: &Input) -> Result<ConfigDocument, Failure> {
    Ok(load_document(&input.file, input.dims, input.freedom)?)
}

fn load_valid(input: &Input) -> Result<(ConfigDocument, Configuration), Failure> {
    let doc = load(input)?;
    let cfg = doc.validate().map_err(|v| Failure::Check(format!("invalid configuration: {v}")))?;
    Ok((doc, cfg))
}

fn verify(input: &Input, strict: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (doc, cfg) = load_valid(input)?;
    let g = ContactGraph::from_cuboids(&cfg.cuboids);
    write!(out, "ok: {} cuboids, {} contacts", cfg.len(), g.edge_count())?;
    match doc.coloring() {
        Some(colors) => {
            if let Err(e) = verify_coloring(&g, &colors) {
                writeln!(out)?;
                return Err(Failure::Check(format!("stored coloring is not proper: {e}")));
            }
            writeln!(out, ", stored coloring proper with {} colors", colors.distinct())?;
            if let Some(chi) = doc.declared_chi {
                if colors.max_color() > chi {
                    let msg = format!(
                        "stored colors go up to {} but the declared chromatic number is {chi}",
                        colors.max_color()
                    );
                    if strict {
                        return Err(Failure::Check(msg));
                    }
                    writeln!(err, "warning: {msg}")?;
                }
            }
        }
        None => writeln!(out, ", no stored coloring")?,
    }
    Ok(())
}

fn chroma(
    input: &Input,
    solver: &Solver,
    assert_chi: Option<u32>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let (doc, cfg) = load_valid(input)?;
    let g = ContactGraph::from_cuboids(&cfg.cuboids);
    let start = std::time::Instant::now();
    let r =
        chromatic_number(&g, solver.options(), &mut solver.budget()).map_err(|t| Failure::Timeout(t.to_string()))?;
    writeln!(out, "chi\t{}", r.chi)?;
    writeln!(out, "clique\t{}", r.clique.len())?;
    writeln!(out, "cuboids\t{}", cfg.len())?;
    writeln!(out, "contacts\t{}", g.edge_count())?;
    log::info!("solved in {:.3}s", start.elapsed().as_secs_f64());
    if let Some(p) = path {
        let doc = ConfigDocument::from_configuration(&cfg, Some(&r.witness), Some(r.chi));
        std::fs::write(p, doc.to_json() + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(declared) = doc.declared_chi {
        if declared != r.chi {
            log::warn!("declared chromatic number {declared}, computed {}", r.chi);
        }
    }
    match assert_chi {
        Some(k) if k != r.chi => Err(Failure::Check(format!("chromatic number is {}, asserted {k}", r.chi))),
        _ => Ok(()),
    }
}

fn critical(
    input: &Input,
    solver: &Solver,
    chi: u32,
    check: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let (_, cfg) = load_valid(input)?;
    let opts = solver.options();
    let reduced = criticality_reduce(&cfg, chi, opts, &mut solver.budget()).map_err(|e| match e {
        ReduceError::WrongChi { .. } => Failure::Check(e.to_string()),
        ReduceError::Timeout(t) => Failure::Timeout(t.to_string()),
    })?;
    let already = reduced.len() == cfg.len();
    writeln!(out, "input\t{} cuboids\t{}", cfg.len(), if already { "critical" } else { "not critical" })?;
    writeln!(out, "critical\t{} cuboids", reduced.len())?;
    if let Some(p) = path {
        let g = ContactGraph::from_cuboids(&reduced.cuboids);
        let r = chromatic_number(&g, opts, &mut solver.budget()).map_err(|t| Failure::Timeout(t.to_string()))?;
        let doc = ConfigDocument::from_configuration(&reduced, Some(&r.witness), Some(r.chi));
        std::fs::write(p, doc.to_json() + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    if check && !already {
        return Err(Failure::Check(format!("{} of {} cuboids can be removed", cfg.len() - reduced.len(), cfg.len())));
    }
    Ok(())
}

fn search(args: &SearchArgs, out: &mut dyn Write) -> Outcome {
    let mut p = SearchParams::new(args.dims, args.freedom, args.target, args.n0);
    if let Some(m) = args.box_size {
        p.box_size = m;
    }
    p.n00 = args.n00;
    p.seed = args.seed;
    p.trials = args.trials;
    p.algorithm = if args.algorithm == 2 { Algorithm::A2 } else { Algorithm::A1 };
    let r = run_search(&p, args.solver.options(), &mut args.solver.budget()).map_err(|e| match e {
        SearchError::Timeout(t) => Failure::Timeout(t.to_string()),
        other => Failure::Input(anyhow!(other.to_string())),
    })?;
    let trace: String = r.trace.iter().map(|s| format!("{s}\n")).collect();
    writeln!(out, "found\t{}", r.found)?;
    writeln!(out, "trial\t{}", r.trial)?;
    writeln!(out, "cuboids\t{}", r.configuration.len())?;
    writeln!(out, "chi\t{}", r.chi)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("trace.txt"), &trace)?;
        if r.found {
            let doc = ConfigDocument::from_configuration(&r.configuration, Some(&r.witness), Some(r.chi));
            std::fs::write(dir.join("critical.json"), doc.to_json() + "\n")?;
        }
    }
    Ok(())
}

fn nbound(dims: DimTriple, freedom: Freedom, all: bool, out: &mut dyn Write) -> Outcome {
    let r = if all { n_bound_all(dims, freedom) } else { n_bound(dims, freedom) };
    writeln!(out, "orientation\tn")?;
    for (o, n) in &r.per_orientation {
        writeln!(out, "{}x{}x{}\t{n}", o[0], o[1], o[2])?;
    }
    writeln!(out, "max\t{}", r.n_value)?;
    writeln!(out, "chi_upper\t{}", r.chi_upper())?;
    Ok(())
}

fn named_coloring(name: &str, dims: Option<DimTriple>, a: Option<u32>) -> anyhow::Result<PeriodicColoring> {
    if let Ok(f) = Formula::from_id(name) {
        let dims = dims.ok_or_else(|| anyhow!("{name} needs --dims"))?;
        return Ok(formula_coloring(f, dims)?);
    }
    let f = PeriodicFixture::from_id(name, a)?;
    Ok(fixture_coloring(f)?)
}

fn periodic(command: PeriodicCommand, out: &mut dyn Write) -> Outcome {
    match command {
        PeriodicCommand::Verify { name, dims, a } => {
            let pc = named_coloring(&name, dims, a).map_err(|e| Failure::Input(anyhow!("{e}")))?;
            let [x, y, z] = pc.period;
            match verify_periodic(&pc) {
                Ok(()) => {
                    writeln!(out, "ok: {name} dims={} {} k={} period={x}x{y}x{z}", pc.dims, pc.freedom, pc.k)?;
                    Ok(())
                }
                Err(c) => Err(Failure::Check(format!("{name}: {c}"))),
            }
        }
        PeriodicCommand::Perco { dims, freedom, period, max_colors, solver } => {
            if period.contains(&0) {
                return Err(Failure::Input(anyhow!("period components must be positive")));
            }
            let r = perco(dims, freedom, period, max_colors, solver.options(), &mut solver.budget())
                .map_err(|t| Failure::Timeout(t.to_string()))?;
            match r {
                PercoResult::Finite(k, _) => writeln!(out, "perco\t{k}")?,
                PercoResult::Infinite => writeln!(out, "perco\tinf")?,
                PercoResult::ExceedsMaxK { at_least } => writeln!(out, "perco\t>{max_colors} (at least {at_least})")?,
            }
            Ok(())
        }
    }
}

fn clique(input: &Input, out: &mut dyn Write) -> Outcome {
    let doc = load(input)?;
    let cfg = doc.configuration();
    let g = ContactGraph::from_cuboids(&cfg.cuboids);
    let members = g.max_clique();
    writeln!(out, "clique\t{}", members.len())?;
    let ids: Vec<String> = members.iter().map(|i| i.to_string()).collect();
    writeln!(out, "members\t{}", ids.join(" "))?;
    let boxes: Vec<_> = members.iter().map(|&i| cfg.cuboids[i]).collect();
    if let Some([x, y, z]) = common_point(&boxes) {
        writeln!(out, "common_point\t{x},{y},{z}")?;
    }
    Ok(())
}
