//! `mfx`: verify, transform and inspect matrix factorizations and the
//! built-in catalog.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage, I/O or parse errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mfx_core::catalog::{
    gaussian_substitution, get_classes, get_extension, get_mf, get_model, get_resolution_pattern, get_sequence,
    rao_module, takes_level, verify_data_dir, write_data_dir, EXTENSION_NAMES, MF_NAMES, MODEL_NAMES, PATTERN_NAMES,
    SEQUENCE_NAMES,
};
use mfx_core::field::Gaussian;
use mfx_core::kgroup::{build_gprime, check_condition_c, veronese_m_invariant, SheafClassVector};
use mfx_core::matfac::{
    change_of_variables, double_branched_cover, dual_mf, knoerrer_periodicity, periodic_resolution_check, try_split,
    twist_mf, verify_mf, MatrixFactorization, SplitOutcome,
};
use mfx_core::modres::{check_extension, is_sequence_exact, GradedModule};
use mfx_core::ring::GradedRing;
use mfx_core::selftest::{fresh_name, run_criterion, selftest, SelftestOptions};

use report::RunReport;

type K = Gaussian;

#[derive(Parser)]
#[command(name = "mfx", version, about = "Exact checks for matrix factorizations and graded MCM modules")]
struct Cli {
    /// Highest degree checked by degreewise certificates.
    #[arg(long, global = true, default_value_t = 12)]
    cutoff: i64,
    /// Positions of the periodic resolution to check.
    #[arg(long, global = true, default_value_t = 6)]
    steps: usize,
    /// Seed for randomized searches and property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print only `CHECK <name> PASS|FAIL <detail>` lines.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check φψ = ψφ = f·I, entry degrees and the periodic resolution.
    Verify { file: PathBuf },
    /// Apply a construction to a factorization and print the result.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Shift for `twist`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// New variable names, comma separated (`u,v` or `y`).
        #[arg(long)]
        vars: Option<String>,
        /// Write the result here instead of the report.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hilbert function of a module, a ring, or the cokernel of a factorization.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        /// Defaults to the cutoff.
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
    /// Certify a catalog short exact sequence degreewise.
    Exact { sequence: String },
    /// Certify an extension `0 -> A -> E -> B -> 0`, from the catalog or from module files.
    Extension {
        /// Catalog extension name; omit when passing files.
        name: Option<String>,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, requires_all = ["sub", "quot"])]
        e: Option<PathBuf>,
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long)]
        quot: Option<PathBuf>,
    },
    /// Build G′ for a model from certified sequences; optionally test condition (C).
    Gprime {
        model: String,
        /// Class vector such as `2*I_C + O(-1)`; repeatable.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// The Veronese invariant m(Z) of a resolution `0 -> E -> N -> I_Z(a) -> 0`.
    Minv {
        /// Catalog pattern, e.g. `point` or `determinantal(4)`.
        #[arg(long, conflicts_with_all = ["kernel", "middle"])]
        pattern: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        /// `E` as a class vector.
        #[arg(long, requires = "middle")]
        kernel: Option<String>,
        /// `N` as a class vector.
        #[arg(long)]
        middle: Option<String>,
    },
    /// Inspect or export the built-in catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Run every acceptance criterion and catalog self-check.
    Selftest {
        /// Also verify this data directory against the catalog.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Run a single criterion (1 to 10).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Dump {
        name: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Write every catalog file and a MANIFEST into a directory.
    Export {
        dir: PathBuf,
    },
    /// Check a data directory against its MANIFEST and the catalog.
    Verify {
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Dual,
    Twist,
    Knoerrer,
    DoubleCover,
    /// `x = (a+b)/2, y = -i(a-b)/2`.
    Gaussian,
    Split,
}

fn read(report: &mut RunReport, path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    report.input(&path.display().to_string(), text.as_bytes());
    Ok(text)
}

fn read_mf(report: &mut RunReport, path: &Path) -> Result<MatrixFactorization<K>> {
    let text = read(report, path)?;
    MatrixFactorization::from_text(&text).with_context(|| format!("{}", path.display()))
}

fn read_module(report: &mut RunReport, path: &Path) -> Result<Arc<GradedModule<K>>> {
    let text = read(report, path)?;
    Ok(Arc::new(GradedModule::from_text(&text).with_context(|| format!("{}", path.display()))?))
}

fn verify(cli: &Cli, r: &mut RunReport, file: &Path) -> Result<()> {
    let m = read_mf(r, file)?;
    r.line(format!("size {}, potential degree {}", m.size(), m.potential_degree()));
    let v = verify_mf(&m);
    r.check("verify", v.pass(), v.failure.map(|f| f.to_string()).unwrap_or_else(|| "phi*psi = psi*phi = f*I".into()));
    let p = periodic_resolution_check(&m, cli.steps, cli.cutoff);
    let detail = match p.first_failure() {
        Some(c) => c.to_string(),
        None => format!("{} steps through degree {}", cli.steps, cli.cutoff),
    };
    r.check("periodic", p.pass(), detail);
    Ok(())
}

fn names(vars: &Option<String>, n: usize) -> Option<Vec<String>> {
    let v: Vec<String> = vars.as_ref()?.split(',').map(|s| s.trim().to_string()).collect();
    (v.len() == n).then_some(v)
}

fn emit_mf(r: &mut RunReport, m: &MatrixFactorization<K>, label: &str) {
    let v = verify_mf(m);
    r.check(format!("verify.{label}"), v.pass(), v.failure.map(|f| f.to_string()).unwrap_or_default());
    r.body.extend(m.to_text().lines().map(String::from));
}

fn transform(
    r: &mut RunReport,
    file: &Path,
    op: Op,
    shift: i64,
    vars: &Option<String>,
    output: &Option<PathBuf>,
    seed: u64,
) -> Result<()> {
    let m = read_mf(r, file)?;
    if !verify_mf(&m).pass() {
        bail!("{} does not verify; refusing to transform it", file.display());
    }
    let out = match op {
        Op::Dual => dual_mf(&m),
        Op::Twist => twist_mf(&m, shift),
        Op::Knoerrer => {
            let v = names(vars, 2).unwrap_or_else(|| vec![fresh_name(m.ring(), "u"), fresh_name(m.ring(), "v")]);
            knoerrer_periodicity(&m, &v[0], &v[1])?
        }
        Op::DoubleCover => {
            let v = names(vars, 1).unwrap_or_else(|| vec![fresh_name(m.ring(), "y")]);
            double_branched_cover(&m, &v[0])?
        }
        Op::Gaussian => {
            let s = gaussian_substitution(m.ring())?;
            change_of_variables(&m, s.target, &s.images)?
        }
        Op::Split => {
            let s = gaussian_substitution(m.ring()).ok();
            match try_split(&m, s.as_ref(), seed)? {
                SplitOutcome::Blocks(blocks) => {
                    r.line(format!("split into {} blocks", blocks.len()));
                    for (k, b) in blocks.iter().enumerate() {
                        r.line(format!("-- block {}", k + 1));
                        emit_mf(r, b, &format!("block{}", k + 1));
                    }
                }
                SplitOutcome::NoSplit => r.line("no split found"),
            }
            return Ok(());
        }
    };
    match output {
        Some(path) => {
            fs::write(path, out.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
            let v = verify_mf(&out);
            r.line(format!("wrote {}", path.display()));
            r.check("verify.result", v.pass(), v.failure.map(|f| f.to_string()).unwrap_or_default());
        }
        None => emit_mf(r, &out, "result"),
    }
    Ok(())
}

fn hilbert(r: &mut RunReport, file: &Path, from: i64, to: i64) -> Result<()> {
    let text = read(r, file)?;
    let name = file.display().to_string();
    let hf: Box<dyn Fn(i64) -> usize> = if name.ends_with(".mfx") {
        let m = MatrixFactorization::<K>::from_text(&text).with_context(|| name.clone())?;
        let c = GradedModule::new(m.quotient_ring(), m.rows().to_vec(), m.phi().clone())
            .with_context(|| format!("{name}: entries are not homogeneous for the given twists"))?;
        Box::new(move |d| c.hilbert(d))
    } else if name.ends_with(".ring") {
        let ring = GradedRing::<K>::from_block(&text).with_context(|| name.clone())?;
        Box::new(move |d| ring.hilbert(d))
    } else {
        let m = GradedModule::<K>::from_text(&text).with_context(|| name.clone())?;
        Box::new(move |d| m.hilbert(d))
    };
    for d in from..=to {
        r.line(format!("HF({d}) = {}", hf(d)));
    }
    Ok(())
}

fn exact(r: &mut RunReport, name: &str, cutoff: i64) -> Result<()> {
    let s = get_sequence::<K>(name, 1)?;
    r.line(format!("0 -> {} -> {} -> {} -> 0 on {}", s.classes[0], s.classes[1], s.classes[2], s.model));
    let e = is_sequence_exact(&s.first, &s.second, cutoff);
    r.body.extend(e.lines());
    let detail = match e.first_failure() {
        Some(c) => format!("{} fails in degree {}", c.condition, c.degree),
        None => format!("bounded certificate through degree {cutoff}"),
    };
    r.check(format!("exact.{name}"), e.pass(), detail);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extension(
    r: &mut RunReport,
    name: &Option<String>,
    level: u32,
    files: (&Option<PathBuf>, &Option<PathBuf>, &Option<PathBuf>),
    cutoff: i64,
    seed: u64,
) -> Result<()> {
    let (label, e, a, b) = match (name, files) {
        (Some(n), (None, None, None)) => {
            let t = get_extension::<K>(n, level)?;
            (format!("{n}.l{level}"), t.e, t.sub, t.quot)
        }
        (None, (Some(e), Some(a), Some(b))) => {
            let (e, a, b) = (read_module(r, e)?, read_module(r, a)?, read_module(r, b)?);
            ("files".to_string(), e, a, b)
        }
        _ => bail!("give either a catalog extension name or all of --e, --sub, --quot"),
    };
    let rep = check_extension(&e, &a, &b, None, cutoff, seed)?;
    r.body.extend(rep.checks.iter().map(|c| {
        format!(
            "degree {:>3} {:<11} {} {}",
            c.degree,
            c.condition.to_string(),
            if c.pass { "ok" } else { "FAIL" },
            c.detail
        )
    }));
    let detail = if rep.quotient_map.is_none() {
        "no degree zero surjection from the quotient found".to_string()
    } else {
        match rep.checks.iter().find(|c| !c.pass) {
            Some(c) => format!("{} fails in degree {}", c.condition, c.degree),
            None => format!("bounded certificate through degree {cutoff}"),
        }
    };
    r.check(format!("extension.{label}"), rep.pass(), detail);
    Ok(())
}

fn gprime(r: &mut RunReport, model: &str, vectors: &[String], cutoff: i64) -> Result<()> {
    let m = get_model::<K>(model)?;
    let g = build_gprime(&m, cutoff);
    r.body.extend(g.group.lines());
    for w in &g.warnings {
        r.line(format!("warning: {w}"));
    }
    for (name, ok) in &g.sequences {
        r.check(format!("sequence.{name}"), *ok, if *ok { "certified" } else { "not certified" });
    }
    for (k, text) in vectors.iter().enumerate() {
        let v = SheafClassVector::parse(text)?;
        let c = check_condition_c(&m.classes, &g.group, &v)?;
        let detail = match &c.witness {
            Some(w) if w.is_empty() => format!("{v} = {}*O trivially", v.rank(&m.classes)),
            Some(w) => format!(
                "{v} = {}*O via {}",
                v.rank(&m.classes),
                w.iter().map(|(n, c)| format!("{c}*{n}")).collect::<Vec<_>>().join(" + ")
            ),
            None => format!("{v} is not a multiple of O in G'"),
        };
        r.check(format!("condition-c.{}", k + 1), c.holds, detail);
    }
    Ok(())
}

/// `determinantal(4)` or `determinantal` with `--n 4`.
fn parse_pattern(p: &str, n: Option<i64>) -> Result<(String, Option<i64>)> {
    match p.split_once('(') {
        Some((name, rest)) => {
            let v = rest.strip_suffix(')').ok_or_else(|| anyhow!("malformed pattern `{p}`"))?;
            Ok((name.to_string(), Some(v.trim().parse().with_context(|| format!("bad parameter in `{p}`"))?)))
        }
        None => Ok((p.to_string(), n)),
    }
}

fn minv(
    r: &mut RunReport,
    pattern: &Option<String>,
    n: Option<i64>,
    kernel: &Option<String>,
    middle: &Option<String>,
) -> Result<()> {
    let (e, nn) = match (pattern, kernel, middle) {
        (Some(p), _, _) => {
            let (name, n) = parse_pattern(p, n)?;
            get_resolution_pattern(&name, n)?
        }
        (None, Some(k), Some(m)) => (SheafClassVector::parse(k)?, SheafClassVector::parse(m)?),
        _ => bail!("give --pattern or both --kernel and --middle"),
    };
    let classes = get_classes("veronese")?;
    let m = veronese_m_invariant(&classes, &e, &nn)?;
    r.line(format!("0 -> {e} -> {nn} -> I_Z(a) -> 0"));
    r.line(format!("m = {m}"));
    r.check("minv.even", m % 2 == 0, format!("m = {m}"));
    Ok(())
}

fn catalog(r: &mut RunReport, cmd: &CatalogCmd) -> Result<()> {
    match cmd {
        CatalogCmd::List => {
            r.line(format!("models: {}", MODEL_NAMES.join(", ")));
            let mfs: Vec<String> =
                MF_NAMES.iter().map(|n| if takes_level(n) { format!("{n}(l)") } else { n.to_string() }).collect();
            r.line(format!("factorizations: {}", mfs.join(", ")));
            r.line(format!("sequences: {}", SEQUENCE_NAMES.join(", ")));
            r.line(format!("extensions: {}", EXTENSION_NAMES.join(", ")));
            r.line(format!("patterns: {}", PATTERN_NAMES.join(", ")));
            r.line("rao modules: rao-d<d>, d >= 1");
        }
        CatalogCmd::Dump { name, level } => dump(r, name, *level)?,
        CatalogCmd::Export { dir } => {
            let n = write_data_dir(dir).with_context(|| format!("cannot write {}", dir.display()))?;
            r.line(format!("wrote {n} files and MANIFEST to {}", dir.display()));
        }
        CatalogCmd::Verify { dir } => match verify_data_dir(dir) {
            Ok(files) => r.check("data-dir", true, format!("{} files", files.len())),
            Err(e) => r.check("data-dir", false, e.to_string()),
        },
    }
    Ok(())
}

fn dump(r: &mut RunReport, name: &str, level: u32) -> Result<()> {
    let lines = |r: &mut RunReport, s: String| r.body.extend(s.lines().map(String::from));
    if MF_NAMES.contains(&name) {
        let m = get_mf::<K>(name, level)?;
        lines(r, m.to_text());
    } else if MODEL_NAMES.contains(&name) {
        let m = get_model::<K>(name)?;
        lines(r, m.ring.to_block());
        for (label, module) in &m.modules {
            r.line(format!("-- {label}"));
            lines(r, module.to_text());
        }
    } else if SEQUENCE_NAMES.contains(&name) {
        let s = get_sequence::<K>(name, level)?;
        let vars = s.first.source().ring().names().to_vec();
        r.line(format!("0 -> {} -> {} -> {} -> 0", s.classes[0], s.classes[1], s.classes[2]));
        r.line("first:");
        lines(r, s.first.matrix().format(&vars));
        r.line("second:");
        lines(r, s.second.matrix().format(&vars));
    } else if EXTENSION_NAMES.contains(&name) {
        let t = get_extension::<K>(name, level)?;
        for (label, m) in [("E", &t.e), ("sub", &t.sub), ("quot", &t.quot)] {
            r.line(format!("-- {label}"));
            lines(r, m.to_text());
        }
    } else if let Some(d) = name.strip_prefix("rao-d") {
        let d: u32 = d.parse().with_context(|| format!("bad degree in `{name}`"))?;
        lines(r, rao_module::<K>(d)?.to_text());
    } else {
        let (p, n) = parse_pattern(name, None)?;
        let (e, nn) = get_resolution_pattern(&p, n)?;
        r.line(format!("E = {e}"));
        r.line(format!("N = {nn}"));
    }
    Ok(())
}

fn run(cli: &Cli, r: &mut RunReport) -> Result<()> {
    match &cli.cmd {
        Cmd::Verify { file } => verify(cli, r, file),
        Cmd::Transform { file, op, shift, vars, output } => transform(r, file, *op, *shift, vars, output, cli.seed),
        Cmd::Hilbert { file, from, to } => hilbert(r, file, *from, to.unwrap_or(cli.cutoff)),
        Cmd::Exact { sequence } => exact(r, sequence, cli.cutoff),
        Cmd::Extension { name, level, e, sub, quot } => {
            extension(r, name, *level, (e, sub, quot), cli.cutoff, cli.seed)
        }
        Cmd::Gprime { model, checks } => gprime(r, model, checks, cli.cutoff),
        Cmd::Minv { pattern, n, kernel, middle } => minv(r, pattern, *n, kernel, middle),
        Cmd::Catalog { cmd } => catalog(r, cmd),
        Cmd::Selftest { data, criterion } => {
            let opts = SelftestOptions { seed: cli.seed, data_dir: data.clone(), ..Default::default() };
            let checks = match criterion {
                Some(k) => run_criterion(*k, &opts),
                None => selftest(&opts),
            };
            r.checks.extend(checks);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = RunReport::new(format!("mfx {command}"));
    let outcome = run(&cli, &mut report);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    if let Err(e) = outcome {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if cli.machine {
        print!("{}", report.render_machine());
    } else {
        print!("{}", report.render());
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
