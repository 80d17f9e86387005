mod cache;
mod input;
mod render;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sqfib::fiber::{run_fiber_with, Family, FiberReport};
use sqfib::les::{dual_path, LesResolutions};
use sqfib::resolution::{Chart, Resolution};
use sqfib::SteenrodAlgebra;

#[derive(Parser)]
#[command(name = "sqfib", version, about = "Ext charts and E3 charts of fibers of Steenrod square maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load) a minimal resolution and list generator counts.
    Resolve(ModuleArgs),
    /// Print the Ext chart of a module, checked for minimality.
    Ext(ModuleArgs),
    /// Compute the composite boundary D of a map both ways and diff them.
    Dmap(DmapArgs),
    /// Run a fiber family end to end against its closed-form chart.
    Fiber(FiberArgs),
    /// Write verified E3 charts of all three families to a directory.
    Charts(ChartsArgs),
}

#[derive(Args)]
struct Window {
    #[arg(long, default_value_t = 8)]
    max_s: usize,
    #[arg(long, default_value_t = 20)]
    max_t: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Re-verify minimality and exactness of every resolution used.
    #[arg(long)]
    paranoid: bool,
}

#[derive(Args)]
struct ModuleArgs {
    /// `builtin:A`, `builtin:A/ASq1`, `builtin:F`, or a module spec file.
    #[arg(long)]
    module: String,
    /// Module to use from a spec file (default: the last one).
    #[arg(long)]
    name: Option<String>,
    #[command(flatten)]
    window: Window,
    /// Cache directory (overrides SQFIB_CACHE_DIR).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct DmapArgs {
    /// `sq:n`, `sqz:n`, `bruner-u:i_max[,conj]`, or a spec file with a map.
    #[arg(long)]
    map: String,
    /// Map to use from a spec file (default: the last one).
    #[arg(long)]
    name: Option<String>,
    #[command(flatten)]
    window: Window,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "Fn")]
    Fn,
    #[value(name = "FnZ")]
    FnZ,
    #[value(name = "F")]
    F,
}

#[derive(Args)]
struct FiberArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: Option<usize>,
    /// Number of even squares for F (default: max-t / 2, rounded up).
    #[arg(long)]
    imax: Option<usize>,
    /// Use the conjugate squares for F.
    #[arg(long)]
    conjugate: bool,
    #[command(flatten)]
    window: Window,
    /// Also write the E3 chart as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Include phase timings (JSON only; breaks byte-determinism).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ChartsArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 8)]
    max_s: usize,
    #[arg(long, default_value_t = 20)]
    max_t: usize,
    /// Largest n for Fn and FnZ.
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Table,
    Svg,
    Json,
}

/// A mathematical check that ran and failed (exit code 1).
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<CheckFailed>() {
            return 1;
        }
        if let Some(err) = cause.downcast_ref::<sqfib::Error>() {
            return match err {
                sqfib::Error::NotExact(_) | sqfib::Error::NotMinimal { .. } => 1,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Resolve(a) => cmd_module(a, false),
        Command::Ext(a) => cmd_module(a, true),
        Command::Dmap(a) => cmd_dmap(a),
        Command::Fiber(a) => cmd_fiber(a),
        Command::Charts(a) => cmd_charts(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

fn check_window(w: &Window) -> Result<()> {
    if w.max_s == 0 || w.max_t == 0 {
        bail!("bounds must be positive, got --max-s {} --max-t {}", w.max_s, w.max_t);
    }
    Ok(())
}

fn reject_json(w: &Window, command: &str) -> Result<()> {
    if w.format == Format::Json {
        bail!("--format json is only available for fiber, not {command}");
    }
    Ok(())
}

fn paranoid_check(label: &str, r: &Resolution) -> Result<()> {
    if let Some((s, t)) = r.verify_minimal().first_failure {
        return Err(CheckFailed(format!("{label} resolution is not minimal at ({s},{t})")).into());
    }
    if let Some((s, t)) = r.verify_exact().first_failure {
        return Err(CheckFailed(format!("{label} resolution is not exact at ({s},{t})")).into());
    }
    Ok(())
}

fn print_chart(chart: &Chart, format: Format, title: &str) {
    match format {
        Format::Table => emit(&render::table(chart)),
        Format::Svg => emit(&render::svg(chart, title)),
        _ => emit(&render::text(chart)),
    }
}

fn cmd_module(a: ModuleArgs, ext: bool) -> Result<()> {
    let w = &a.window;
    check_window(w)?;
    reject_json(w, if ext { "ext" } else { "resolve" })?;
    let algebra = Arc::new(SteenrodAlgebra::new(w.max_t));
    let loaded = input::load_module(&a.module, a.name.as_deref(), &algebra, w.max_t)?;
    let dir = if a.no_cache { None } else { cache::default_dir(a.cache_dir.as_deref()) };
    let req = cache::Request {
        spec: &loaded.key_text,
        module: loaded.module.clone(),
        s_max: w.max_s,
        t_max: w.max_t,
        algebra_bound: algebra.max_degree(),
    };
    let (res, outcome) = cache::resolve(dir.as_deref(), &req)?;
    if outcome == cache::Outcome::Stale && w.paranoid {
        eprintln!("warning: stale cache entry for {} rebuilt", a.module);
    }
    if w.paranoid {
        paranoid_check(&a.module, &res)?;
    }
    let chart = if ext { res.ext_chart()? } else { res.generator_chart() };
    if w.format == Format::Text {
        let what = if ext { "Ext chart" } else { "generators" };
        emit(&format!("{what} of {} for s <= {}, t <= {}\ntotal {}\n", a.module, w.max_s, w.max_t, chart.total()));
    }
    print_chart(&chart, w.format, &a.module);
    Ok(())
}

fn cmd_dmap(a: DmapArgs) -> Result<()> {
    let w = &a.window;
    check_window(w)?;
    reject_json(w, "dmap")?;
    let inner = w.max_t + 1;
    let algebra = Arc::new(SteenrodAlgebra::new(inner));
    let map = input::load_map(&a.map, a.name.as_deref(), &algebra, inner)?;
    let fac = map.factor_les().context("factoring the map")?;
    let dp = dual_path(&fac, w.max_s, w.max_t)?;
    if w.paranoid {
        let LesResolutions { k, i, c, .. } = &dp.resolutions;
        for (label, r) in [("kernel", k), ("image", i), ("cokernel", c)] {
            paranoid_check(label, r)?;
        }
    }
    let diff = dp.composite.diff(&dp.yoneda);
    let (kernel, cokernel) = dp.composite.kernel_cokernel();
    let e3 = dp.composite.e3_chart();
    match w.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "map {} for s <= {}, t <= {}", a.map, w.max_s, w.max_t);
            out.push_str(&dp.composite.dump("composite"));
            out.push_str(&dp.yoneda.dump("yoneda"));
            if diff.is_empty() {
                out.push_str("diff none\n");
            } else {
                let cells: Vec<String> = diff.iter().map(|(s, t)| format!("({s},{t})")).collect();
                let _ = writeln!(out, "diff {}", cells.join(" "));
            }
            let _ = write!(out, "kernel, in desuspended kernel coordinates\n{}", table_or_none(&kernel));
            let _ = write!(out, "cokernel\n{}", table_or_none(&cokernel));
            let _ = write!(out, "E3\n{}", render::text(&e3));
            emit(&out);
        }
        f => print_chart(&e3, f, &a.map),
    }
    if let Some(&(s, t)) = diff.first() {
        return Err(CheckFailed(format!("composite and Yoneda computations differ first at ({s},{t})")).into());
    }
    Ok(())
}

fn table_or_none(chart: &Chart) -> String {
    if chart.is_empty() {
        "none\n".into()
    } else {
        render::table(chart)
    }
}

fn family_of(a: &FiberArgs) -> Result<Family> {
    let need_n = || a.n.context("--n is required for this family");
    Ok(match a.family {
        FamilyArg::Fn => Family::Fn { n: need_n()? },
        FamilyArg::FnZ => Family::FnZ { n: need_n()? },
        FamilyArg::F => Family::F {
            i_max: a.imax.unwrap_or(a.window.max_t.div_ceil(2)),
            conjugate: a.conjugate,
        },
    })
}

fn report_text(r: &FiberReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fiber {} for s <= {}, t <= {}", r.family, r.s_max, r.t_max);
    for c in &r.checkpoints {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let at = c.first_failure.map(|(s, t)| format!(" at ({s},{t})")).unwrap_or_default();
        let _ = writeln!(out, "{status} {}{at}: {}", c.name, c.claim);
    }
    if let Ok(closed) = sqfib::fiber::expected_chart(r.family) {
        let _ = writeln!(out, "expected {closed}");
    }
    let _ = writeln!(out, "computed {}", r.computed);
    if r.diff.is_empty() {
        out.push_str("diff none\n");
    } else {
        for (s, t, got, want) in &r.diff {
            let _ = writeln!(out, "diff ({s},{t}) computed {got} expected {want}");
        }
    }
    if r.residual_pairs.is_empty() {
        out.push_str("higher differentials: none possible, E3 = E_infinity by sparsity\n");
    } else {
        let _ = writeln!(
            out,
            "higher differentials: {} pairs not excluded by sparsity (not checked here)",
            r.residual_pairs.len()
        );
        for (r_, (s, t), (s2, t2)) in &r.residual_pairs {
            let _ = writeln!(out, "  d{r_}: ({s},{t}) -> ({s2},{t2})");
        }
    }
    let _ = write!(out, "E3\n{}", render::text(&r.computed));
    match r.first_failure() {
        None => out.push_str("result PASS\n"),
        Some((name, at)) => {
            let at = at.map(|(s, t)| format!(" at ({s},{t})")).unwrap_or_default();
            let _ = writeln!(out, "result FAIL first failure {name}{at}");
        }
    }
    out
}

fn cmd_fiber(a: FiberArgs) -> Result<()> {
    let w = &a.window;
    check_window(w)?;
    let family = family_of(&a)?;
    family.validate()?;
    let algebra = Arc::new(SteenrodAlgebra::new(w.max_t + 1));
    let mut report = run_fiber_with(&algebra, family, w.max_s, w.max_t)?;
    if w.paranoid {
        let fac = family.map(&algebra, w.max_t + 1)?.factor_les()?;
        let res = LesResolutions::new(&fac, w.max_s, w.max_t)?;
        for (label, r) in [("kernel", &res.k), ("image", &res.i), ("cokernel", &res.c)] {
            paranoid_check(label, r)?;
        }
    }
    if !a.timings {
        report.timings.clear();
    }
    let title = family.to_string();
    match w.format {
        Format::Text => emit(&report_text(&report)),
        Format::Json => emit(&(serde_json::to_string_pretty(&report)? + "\n")),
        f => print_chart(&report.computed, f, &title),
    }
    if let Some(path) = &a.svg {
        write_file(path, &render::svg(&report.computed, &title))?;
    }
    if let Some((name, at)) = report.first_failure() {
        let at = at.map(|(s, t)| format!(" at ({s},{t})")).unwrap_or_default();
        return Err(CheckFailed(format!("{family}: checkpoint {name} failed{at}")).into());
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_charts(a: ChartsArgs) -> Result<()> {
    if a.max_s == 0 || a.max_t == 0 {
        bail!("bounds must be positive");
    }
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let algebra = Arc::new(SteenrodAlgebra::new(a.max_t + 1));
    let mut families: Vec<(String, Family)> = Vec::new();
    for n in 1..=a.n_max {
        families.push((format!("fn-{n}"), Family::Fn { n }));
    }
    for n in 2..=a.n_max {
        families.push((format!("fnz-{n}"), Family::FnZ { n }));
    }
    let i_max = a.max_t.div_ceil(2);
    families.push((format!("f-{i_max}"), Family::F { i_max, conjugate: false }));
    let mut index = String::new();
    let mut failed = Vec::new();
    for (slug, family) in families {
        let report = run_fiber_with(&algebra, family, a.max_s, a.max_t)?;
        let title = family.to_string();
        write_file(&a.out.join(format!("{slug}.tsv")), &render::table(&report.computed))?;
        write_file(&a.out.join(format!("{slug}.txt")), &render::text(&report.computed))?;
        write_file(&a.out.join(format!("{slug}.svg")), &render::svg(&report.computed, &title))?;
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(index, "{slug}\t{title}\t{status}\t{}", report.computed);
        if !report.passed() {
            failed.push(slug);
        }
    }
    write_file(&a.out.join("index.tsv"), &index)?;
    emit(&index);
    if !failed.is_empty() {
        return Err(CheckFailed(format!("charts failed their checks: {}", failed.join(", "))).into());
    }
    Ok(())
}
