//! `aztec`: counting, enumeration, sampling, verification, histograms, and
//! SVG rendering for domino tilings of Aztec diamonds.
//!
//! Exit codes: 0 on success (and when every verification check passes),
//! 1 when a verification check fails (the table names it), 2 for usage and
//! input errors. Stdout stays line-oriented; JSON and SVG go to files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use aztec_core::{
    aztec_closed_form, binomial, count_tilings, enumerate_tilings,
    horizontal_histogram, kasteleyn_square, render_field, render_tiling, sample_statistics,
    sample_uniform, verify_recursion, ArrowField, BigCount, FieldOrientation, HistogramSource,
    Region, RenderOptions, SampleSpec, Tiling, DEFAULT_SEED, RECURSION_GUARD,
};

/// Hard cap for `enumerate --out`: order 5 already writes 32,768 tilings.
const ENUMERATE_OUT_GUARD: u32 = 5;
/// Default cap for the counting DP; `--force` lifts it.
const DP_GUARD: u32 = 16;

#[derive(Parser)]
#[command(name = "aztec", version, about = "Exact combinatorics of Aztec diamond tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact number of domino tilings of a region.
    #[command(group(ArgGroup::new("region").required(true).args(["aztec", "rect"])))]
    Count {
        /// Aztec diamond order.
        #[arg(long, value_name = "N")]
        aztec: Option<u32>,
        /// Rectangle, e.g. 4x4.
        #[arg(long, value_name = "WxH", value_parser = parse_rect)]
        rect: Option<(u32, u32)>,
        /// dp | formula | enumerate (diamonds), dp | enumerate | kasteleyn (rectangles).
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        /// Lift the order-16 guard on the counting DP.
        #[arg(long)]
        force: bool,
    },
    /// Write every tiling of a small diamond to a JSON array.
    Enumerate {
        #[arg(long, value_name = "N")]
        aztec: u32,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Draw tilings uniformly at random.
    Sample {
        #[arg(long, value_name = "N")]
        aztec: u32,
        #[arg(long, value_name = "S", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Destination; .json for the tiling, .svg for a picture
        /// (.json only under --stats).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Number of samples for --stats.
        #[arg(long, value_name = "C", requires = "stats")]
        count: Option<u64>,
        /// Aggregate statistics over --count samples instead of one tiling.
        #[arg(long, requires = "count")]
        stats: bool,
    },
    /// Run the invariant battery and print a pass/fail table.
    Verify {
        /// Largest diamond order the order-dependent checks cover
        /// (each check also clamps to its own guard).
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_order: u32,
    },
    /// Print the horizontal-domino histogram and its binomial reference.
    #[command(group(ArgGroup::new("source").required(true).args(["exact", "samples"])))]
    Hist {
        #[arg(long, value_name = "N")]
        aztec: u32,
        /// Exhaustive histogram over all tilings.
        #[arg(long)]
        exact: bool,
        /// Estimate from this many uniform samples.
        #[arg(long, value_name = "C")]
        samples: Option<u64>,
        #[arg(long, value_name = "S", default_value_t = DEFAULT_SEED, conflicts_with = "exact")]
        seed: u64,
    },
    /// Render a tiling (or an arrow field) as SVG.
    #[command(group(ArgGroup::new("subject").required(true).args(["in", "field"])))]
    Render {
        /// Tiling JSON file.
        #[arg(long = "in", value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Overlay the tiling's arrows.
        #[arg(long, conflicts_with = "field")]
        arrows: bool,
        /// Arrow-field JSON file to draw instead of a tiling.
        #[arg(long, value_name = "FILE")]
        field: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dp,
    Formula,
    Enumerate,
    Kasteleyn,
}

fn parse_rect(raw: &str) -> Result<(u32, u32), String> {
    let (w, h) = raw
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {raw:?}"))?;
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|e| format!("bad dimension {s:?}: {e}"));
    Ok((parse(w)?, parse(h)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { aztec, rect, method, force } => cmd_count(aztec, rect, method, force),
        Command::Enumerate { aztec, out } => cmd_enumerate(aztec, &out),
        Command::Sample { aztec, seed, out, count, stats } => {
            cmd_sample(aztec, seed, out.as_deref(), count, stats)
        }
        Command::Verify { max_order } => cmd_verify(max_order),
        Command::Hist { aztec, exact, samples, seed } => cmd_hist(aztec, exact, samples, seed),
        Command::Render { r#in, out, arrows, field } => {
            cmd_render(r#in.as_deref(), &out, arrows, field.as_deref())
        }
    }
}

fn cmd_count(
    aztec: Option<u32>,
    rect: Option<(u32, u32)>,
    method: Method,
    force: bool,
) -> Result<ExitCode> {
    if let Some(n) = aztec {
        let count = match method {
            Method::Dp => {
                if n > DP_GUARD && !force {
                    bail!("order {n} exceeds the DP guard {DP_GUARD}; pass --force to proceed");
                }
                count_tilings(&Region::aztec(n))
            }
            Method::Formula => aztec_closed_form(n),
            Method::Enumerate => BigCount::from(enumerate_tilings(&Region::aztec(n)).count()),
            Method::Kasteleyn => bail!("--method kasteleyn applies to square rectangles only"),
        };
        println!("{count}");
        return Ok(ExitCode::SUCCESS);
    }
    let (w, h) = rect.expect("clap guarantees a region");
    match method {
        Method::Dp => {
            if w.min(h) > DP_GUARD && !force {
                bail!(
                    "minimum side {} exceeds the DP guard {DP_GUARD}; pass --force to proceed",
                    w.min(h)
                );
            }
            println!("{}", count_tilings(&Region::rectangle(w, h)));
        }
        Method::Enumerate => {
            println!("{}", enumerate_tilings(&Region::rectangle(w, h)).count());
        }
        Method::Kasteleyn => {
            if w != h {
                bail!("--method kasteleyn needs a square rectangle, got {w}x{h}");
            }
            let approx = kasteleyn_square(w)?;
            let exact = count_tilings(&Region::rectangle(w, h));
            let exact_f = exact.to_string().parse::<f64>().expect("decimal count");
            let rel = ((approx - exact_f) / exact_f).abs();
            println!("kasteleyn: {approx}");
            println!("dp: {exact}");
            println!("relative-error: {rel:.2e}");
        }
        Method::Formula => bail!("--method formula applies to diamonds only"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(order: u32, out: &Path) -> Result<ExitCode> {
    if order > ENUMERATE_OUT_GUARD {
        bail!("order {order} exceeds the enumeration guard {ENUMERATE_OUT_GUARD}");
    }
    let bodies: Vec<String> = enumerate_tilings(&Region::aztec(order))
        .map(|t| t.to_json())
        .collect();
    let mut doc = String::from("[\n");
    doc.push_str(&bodies.join(",\n"));
    doc.push_str("\n]\n");
    fs::write(out, doc).with_context(|| format!("writing {}", out.display()))?;
    println!("wrote {} tilings to {}", bodies.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

fn extension_of(path: &Path) -> Result<&str> {
    path.extension()
        .and_then(|e| e.to_str())
        .ok_or_else(|| anyhow!("{} has no file extension", path.display()))
}

fn cmd_sample(
    order: u32,
    seed: u64,
    out: Option<&Path>,
    count: Option<u64>,
    stats: bool,
) -> Result<ExitCode> {
    if stats {
        let count = count.expect("clap ties --stats to --count");
        if count == 0 {
            bail!("--count must be positive");
        }
        let statistics = sample_statistics(order, count, seed);
        match out {
            Some(path) => {
                if extension_of(path)? != "json" {
                    bail!("--stats output must be a .json file");
                }
                fs::write(path, statistics.to_json() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote statistics for {count} samples to {}", path.display());
            }
            None => {
                println!("order {order} count {count} seed {seed}");
                for (k, c) in &statistics.hist {
                    println!("hist {k} {c}");
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let tiling = sample_uniform(&SampleSpec { order, seed });
    match out {
        Some(path) => {
            match extension_of(path)? {
                "json" => fs::write(path, tiling.to_json() + "\n"),
                "svg" => fs::write(path, render_tiling(&tiling, &RenderOptions::default())?),
                other => bail!("unsupported output extension .{other}; use .json or .svg"),
            }
            .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!(
            "order {order} seed {seed}: {} dominoes, {} horizontal",
            tiling.dominoes().len(),
            tiling.horizontal_domino_count(),
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hist(order: u32, exact: bool, samples: Option<u64>, seed: u64) -> Result<ExitCode> {
    let source = if exact {
        HistogramSource::Enumerate
    } else {
        let count = samples.expect("clap requires a source");
        if count == 0 {
            bail!("--samples must be positive");
        }
        HistogramSource::Sample { count, seed }
    };
    let hist = horizontal_histogram(order, source)?;
    let max_k = u64::from(order) * u64::from(order + 1) / 2;
    let row = |value: &dyn Fn(u64) -> String| {
        (0..=max_k).map(value).collect::<Vec<_>>().join(" ")
    };
    println!("hist: {}", row(&|k| hist.get(&k).cloned().unwrap_or_default().to_string()));
    println!("binomial: {}", row(&|k| binomial(max_k, k).to_string()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(
    tiling_path: Option<&Path>,
    out: &Path,
    arrows: bool,
    field_path: Option<&Path>,
) -> Result<ExitCode> {
    if extension_of(out)? != "svg" {
        bail!("--out must be an .svg file");
    }
    let svg = if let Some(path) = tiling_path {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let tiling = Tiling::from_json(&text)?;
        let options = RenderOptions { show_arrows: arrows, ..RenderOptions::default() };
        render_tiling(&tiling, &options)?
    } else {
        let path = field_path.expect("clap guarantees a subject");
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let field = ArrowField::from_json(&text)?;
        // a field picture is about the decomposition, so bold edges are on
        let options = RenderOptions { show_bold_edges: true, ..RenderOptions::default() };
        render_field(&field, &options)?
    };
    fs::write(out, svg).with_context(|| format!("writing {}", out.display()))?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

// ---- verify battery ----------------------------------------------------

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check { name, pass: true, detail },
        Err(detail) => Check { name, pass: false, detail },
    }
}

fn counts_check(max_order: u32) -> Check {
    let cap = max_order.min(10);
    let enum_cap = max_order.min(4);
    let result = (|| {
        for n in 0..=cap {
            let dp = count_tilings(&Region::aztec(n));
            let formula = aztec_closed_form(n);
            if dp != formula {
                return Err(format!("dp disagrees with the closed form at order {n}"));
            }
            if n <= enum_cap && enumerate_tilings(&Region::aztec(n)).count() != to_usize(&formula)
            {
                return Err(format!("enumeration disagrees at order {n}"));
            }
        }
        Ok(format!("dp = closed form for n <= {cap}; enumeration agrees for n <= {enum_cap}"))
    })();
    check("counts", result)
}

fn to_usize(count: &BigCount) -> usize {
    count.to_string().parse().expect("count fits usize in guarded ranges")
}

fn recursion_check(max_order: u32) -> Check {
    let cap = max_order.min(RECURSION_GUARD);
    let result = (|| {
        if cap == 0 {
            return Ok("skipped (max order 0)".to_string());
        }
        for n in 1..=cap {
            let report = verify_recursion(n).map_err(|e| e.to_string())?;
            if let Some(failed) = report.checks.iter().find(|c| !c.pass) {
                return Err(format!("order {n}: {} — {}", failed.name, failed.detail));
            }
        }
        Ok(format!("group sizes, shifts, and totals confirmed for n = 1..={cap}"))
    })();
    check("recursion", result)
}

/// Deduplicated outward fields of every tiling of the order `n + 1` diamond.
fn outward_fields(n: u32) -> Vec<ArrowField> {
    let mut seen = std::collections::HashSet::new();
    enumerate_tilings(&Region::aztec(n + 1))
        .map(|t| ArrowField::from_outer_tiling(&t).expect("enumerated tilings are valid"))
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

fn line_balance_check(max_order: u32) -> Check {
    let cap = max_order.saturating_sub(1).min(3);
    let result = (|| {
        let mut fields = 0u32;
        for n in 0..=cap {
            for field in outward_fields(n) {
                fields += 1;
                let census = field.census().map_err(|e| e.to_string())?;
                if census.repelling != census.attracting + n + 1 {
                    return Err(format!("field at order {n} has r - a != {}", n + 1));
                }
                let lines = field.line_balance().map_err(|e| e.to_string())?;
                if lines.len() as u32 != n + 1 || lines.iter().any(|l| l.bf != l.fb + 1) {
                    return Err(format!("a line at order {n} is not tilted by one"));
                }
            }
        }
        Ok(format!("r - a = n + 1 and every line tilts by one ({fields} fields, n <= {cap})"))
    })();
    check("line-balance", result)
}

fn flip_check(max_order: u32) -> Check {
    let cap = max_order.saturating_sub(1).min(3);
    let result = (|| {
        let mut fields = 0u32;
        for n in 0..=cap {
            for field in outward_fields(n) {
                fields += 1;
                let flipped = field.flip();
                if flipped.orientation() != FieldOrientation::Inward {
                    return Err(format!("a flip at order {n} is not inward"));
                }
                if flipped.flip() != field {
                    return Err(format!("flip is not an involution at order {n}"));
                }
            }
        }
        Ok(format!("flip(flip(F)) = F and flips are inward ({fields} fields, n <= {cap})"))
    })();
    check("flip-involution", result)
}

fn histogram_check(max_order: u32) -> Check {
    let cap = max_order.min(4);
    let result = (|| {
        for n in 0..=cap {
            let hist =
                horizontal_histogram(n, HistogramSource::Enumerate).map_err(|e| e.to_string())?;
            let max_k = u64::from(n) * u64::from(n + 1) / 2;
            for k in 0..=max_k {
                let expected = binomial(max_k, k);
                if hist.get(&k).cloned().unwrap_or_default() != expected {
                    return Err(format!("histogram bin {k} at order {n} is off"));
                }
            }
        }
        Ok(format!("half-horizontal counts are binomial for n <= {cap}"))
    })();
    check("histogram", result)
}

fn fibonacci_check() -> Check {
    let result = (|| {
        let mut prev = BigCount::from(1u32);
        let mut current = BigCount::from(1u32);
        for h in 1..=20u32 {
            let next = &prev + &current;
            if count_tilings(&Region::rectangle(2, h)) != current {
                return Err(format!("2x{h} strip disagrees with the recurrence"));
            }
            prev = current;
            current = next;
        }
        Ok("2xh strips follow f(h) = f(h-1) + f(h-2) for h <= 20".to_string())
    })();
    check("fibonacci", result)
}

fn kasteleyn_check() -> Check {
    let result = (|| {
        for n in [2u32, 4, 6, 8] {
            let approx = kasteleyn_square(n).map_err(|e| e.to_string())?;
            let exact = to_usize(&count_tilings(&Region::rectangle(n, n))) as f64;
            if ((approx - exact) / exact).abs() > 1e-6 {
                return Err(format!("{n}x{n} product drifts beyond 1e-6"));
            }
        }
        Ok("cosine products match DP counts within 1e-6 for n in {2,4,6,8}".to_string())
    })();
    check("kasteleyn", result)
}

fn cmd_verify(max_order: u32) -> Result<ExitCode> {
    let checks = [
        counts_check(max_order),
        recursion_check(max_order),
        line_balance_check(max_order),
        flip_check(max_order),
        histogram_check(max_order),
        fibonacci_check(),
        kasteleyn_check(),
    ];
    let mut table = String::new();
    for c in &checks {
        let _ = writeln!(
            table,
            "[{}] {}: {}",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    print!("{table}");
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    if failed.is_empty() {
        println!("all {} checks passed (max order {max_order})", checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(ExitCode::FAILURE)
    }
}
