//! Command-line front end: generate interval systems, color them, verify the
//! results, query the exact oracles, and render chord diagrams.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
//! I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use circlecolor::{
    chromatic_number_exact, clique_number_exact, color_system, formats, gen_uniform_matching,
    generate, p_degree, p_degree_oracle, verify_permutation_certificate, verify_proper,
    AugmentConfig, CheckResult, GenModel, GenSpec, IntervalSystem, Pos, SplitMix64,
    VerificationReport,
};

#[derive(Parser)]
#[command(name = "circlecolor", version, about = "Color circle graphs given as interval systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an interval system and write it as interval-system/v1 JSON
    Gen(GenArgs),
    /// Build a pillar assignment and coloring for a system
    Color(ColorArgs),
    /// Check a coloring file against its interval system
    Verify(VerifyArgs),
    /// Exact reference computations (small inputs only)
    Oracle(OracleArgs),
    /// Print basic facts about a system
    Stats(StatsArgs),
    /// Render a colored chord diagram
    Export(ExportArgs),
    /// Generate, color, and verify a batch of random systems in parallel
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Model {
    UniformMatching,
    CrossingClique,
    NestedChain,
    Blocks,
}

impl From<Model> for GenModel {
    fn from(m: Model) -> GenModel {
        match m {
            Model::UniformMatching => GenModel::UniformMatching,
            Model::CrossingClique => GenModel::CrossingClique,
            Model::NestedChain => GenModel::NestedChain,
            Model::Blocks => GenModel::Blocks,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Default,
    Omega2,
    Custom,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Coloring output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,
    /// Quota constant (custom profile only)
    #[arg(long)]
    quota: Option<usize>,
    /// Degree budget (custom profile only)
    #[arg(long)]
    budget: Option<usize>,
    /// Pillar palette size (custom profile only)
    #[arg(long)]
    palette: Option<usize>,
    /// Print per-step traces to stderr as JSON
    #[arg(long)]
    trace: bool,
    /// Also write the bare pillar assignment to this file
    #[arg(long)]
    assignment: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    coloring: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    which: OracleCmd,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact clique number
    Clique {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Exact chromatic number
    Chromatic {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// P-degree of a pillar pair, by both the fast count and the naive scan
    Pdegree {
        #[arg(short, long)]
        input: PathBuf,
        /// Comma-separated pillar positions, e.g. "3/14,9/14"
        #[arg(long)]
        pillars: String,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
}

#[derive(Args)]
struct StatsArgs {
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    /// Output format selector (SVG is the only format)
    #[arg(long, required = true)]
    svg: bool,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    coloring: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    count: usize,
    /// Instances cycle through n = 1..=nmax chords
    #[arg(long)]
    nmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Color(a) => cmd_color(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Stats(a) => cmd_stats(a),
        Cmd::Export(a) => cmd_export(a),
        Cmd::Corpus(a) => cmd_corpus(a),
    }
}

fn read_system(path: &Path) -> anyhow::Result<IntervalSystem> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    formats::load_system(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<ExitCode> {
    let spec = GenSpec { model: a.model.into(), n: a.n, seed: a.seed };
    let system = generate(&spec);
    emit(a.output.as_deref(), &formats::save_system(&system))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_color(a: ColorArgs) -> anyhow::Result<ExitCode> {
    let system = read_system(&a.input)?;
    let config = match a.profile {
        None | Some(ProfileArg::Default) => None,
        Some(ProfileArg::Omega2) => {
            let omega = clique_number_exact(&system)?;
            if omega != 2 {
                bail!("profile omega2 requires clique number 2, found {omega}");
            }
            Some(AugmentConfig::for_omega(2)?)
        }
        Some(ProfileArg::Custom) => {
            let (Some(q), Some(b), Some(p)) = (a.quota, a.budget, a.palette) else {
                bail!("profile custom requires --quota, --budget, and --palette");
            };
            let omega = clique_number_exact(&system)?;
            Some(AugmentConfig::custom(omega, q, b, p)?)
        }
    };

    let run = color_system(system, config)?;
    if a.trace {
        eprintln!("{}", serde_json::to_string_pretty(&run.traces)?);
    }

    // Never write a coloring this process cannot itself verify.
    let proper = verify_proper(run.state.system(), &run.coloring);
    let cert = verify_permutation_certificate(run.state.system(), &run.state, &run.coloring);
    if !(proper.passed && cert.passed) {
        let merged = merge_reports(vec![proper, cert]);
        println!("{}", serde_json::to_string_pretty(&merged)?);
        return Ok(ExitCode::from(1));
    }

    if let Some(path) = &a.assignment {
        fs::write(path, formats::save_assignment(&run.state))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let text = formats::save_coloring(&run.state, &run.coloring);
    match a.output.as_deref() {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            let summary = json!({
                "n": run.state.system().n(),
                "omega": run.omega,
                "pillars": run.state.pillars().len(),
                "num_classes": run.coloring.num_classes,
                "num_final_colors": run.coloring.num_final_colors,
                "steps": run.traces.len(),
            });
            println!("{summary}");
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn merge_reports(reports: Vec<VerificationReport>) -> VerificationReport {
    let checks: Vec<CheckResult> = reports.into_iter().flat_map(|r| r.checks).collect();
    VerificationReport { passed: checks.iter().all(|c| c.passed), checks }
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let system = read_system(&a.input)?;
    let text = fs::read_to_string(&a.coloring)
        .with_context(|| format!("reading {}", a.coloring.display()))?;

    // A coloring file that fails its own consistency checks is a verification
    // failure, not a usage error.
    let (state, coloring) = match formats::load_coloring(&text, system.clone()) {
        Ok(pair) => pair,
        Err(e) => {
            let report = VerificationReport {
                passed: false,
                checks: vec![CheckResult {
                    name: "load_coloring".into(),
                    passed: false,
                    witness: Some(e.to_string()),
                }],
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            return Ok(ExitCode::from(1));
        }
    };

    let mut reports = vec![
        verify_proper(&system, &coloring),
        verify_permutation_certificate(&system, &state, &coloring),
    ];

    let omega = clique_number_exact(&system)?;
    let mut bounds = Vec::new();
    if omega >= 2 {
        let class_cap = 7 * omega as usize;
        let final_cap = 7 * (omega as usize) * (omega as usize);
        bounds.push(check(
            "class_bound",
            coloring.num_classes <= class_cap,
            format!("{} classes exceed 7*omega = {class_cap}", coloring.num_classes),
        ));
        bounds.push(check(
            "final_color_bound",
            coloring.num_final_colors <= final_cap,
            format!("{} colors exceed 7*omega^2 = {final_cap}", coloring.num_final_colors),
        ));
    } else {
        bounds.push(check(
            "final_color_bound",
            coloring.num_final_colors <= 1,
            format!("{} colors on an overlap-free system", coloring.num_final_colors),
        ));
    }
    reports.push(VerificationReport { passed: bounds.iter().all(|c| c.passed), checks: bounds });

    let merged = merge_reports(reports);
    println!("{}", serde_json::to_string_pretty(&merged)?);
    Ok(if merged.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn check(name: &str, passed: bool, witness: String) -> CheckResult {
    CheckResult { name: name.into(), passed, witness: if passed { None } else { Some(witness) } }
}

fn parse_pos(s: &str) -> anyhow::Result<Pos> {
    let (num, den) = s.split_once('/').context("positions are written num/den")?;
    Ok(Pos::new(num.trim().parse()?, den.trim().parse()?)?)
}

fn cmd_oracle(a: OracleArgs) -> anyhow::Result<ExitCode> {
    match a.which {
        OracleCmd::Clique { input } => {
            let system = read_system(&input)?;
            println!("{}", json!({ "clique_number": clique_number_exact(&system)? }));
        }
        OracleCmd::Chromatic { input } => {
            let system = read_system(&input)?;
            println!("{}", json!({ "chromatic_number": chromatic_number_exact(&system)? }));
        }
        OracleCmd::Pdegree { input, pillars, p1, p2 } => {
            let system = read_system(&input)?;
            let ps: Vec<Pos> =
                pillars.split(',').map(parse_pos).collect::<anyhow::Result<_>>()?;
            let p1 = parse_pos(&p1)?;
            let p2 = parse_pos(&p2)?;
            let fast = p_degree(&system, &ps, p1, p2)?;
            let naive = p_degree_oracle(&system, &ps, p1, p2)?;
            println!("{}", json!({ "p_degree": fast, "oracle": naive }));
            if fast != naive {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(a: StatsArgs) -> anyhow::Result<ExitCode> {
    let system = read_system(&a.input)?;
    let g = system.overlap_graph();
    let n = system.n();
    let edges: usize = (0..n).map(|i| g.degree(i)).sum::<usize>() / 2;
    let stats = json!({
        "n": n,
        "omega": clique_number_exact(&system)?,
        "edges": edges,
        "components": g.num_components(),
    });
    println!("{stats}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(a: ExportArgs) -> anyhow::Result<ExitCode> {
    let system = read_system(&a.input)?;
    let text = fs::read_to_string(&a.coloring)
        .with_context(|| format!("reading {}", a.coloring.display()))?;
    let (state, coloring) = formats::load_coloring(&text, system)?;
    let svg = render_svg(&state, &coloring);
    fs::write(&a.output, svg).with_context(|| format!("writing {}", a.output.display()))?;
    Ok(ExitCode::SUCCESS)
}

/// Chord diagram on the unit circle: position `p` in `(0,1)` maps to angle
/// `2*pi*p`, intervals become straight chords colored by final color, and
/// pillars become radial ticks crossing the circle.
fn render_svg(
    state: &circlecolor::PillarAssignmentState,
    coloring: &circlecolor::ClassColoring,
) -> String {
    const R: f64 = 100.0;
    let at = |p: Pos, r: f64| {
        let theta = std::f64::consts::TAU * (p.numer() as f64 / p.denom() as f64);
        (r * theta.cos(), -r * theta.sin())
    };
    // Golden-angle hue spacing keeps nearby color indices visually distinct.
    let stroke = |color: u32| format!("hsl({:.1}, 70%, 45%)", (color as f64 * 137.508) % 360.0);

    let mut out = String::new();
    out.push_str(concat!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-115 -115 230 230\">\n",
        "  <circle cx=\"0\" cy=\"0\" r=\"100\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n",
    ));
    for pillar in state.pillars() {
        let (x1, y1) = at(pillar.pos, 0.92 * R);
        let (x2, y2) = at(pillar.pos, 1.08 * R);
        out.push_str(&format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"#555\" stroke-width=\"1\"/>\n"
        ));
    }
    for (i, record) in coloring.records.iter().enumerate() {
        let iv = state.system().interval(i);
        let (x1, y1) = at(iv.left, R);
        let (x2, y2) = at(iv.right, R);
        out.push_str(&format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"{}\" stroke-width=\"2\"/>\n",
            stroke(record.final_color)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn cmd_corpus(a: CorpusArgs) -> anyhow::Result<ExitCode> {
    if a.nmax == 0 {
        bail!("--nmax must be at least 1");
    }
    let mut rng = SplitMix64::new(a.seed);
    let jobs: Vec<(usize, u64)> =
        (0..a.count).map(|i| (1 + i % a.nmax, rng.next_u64())).collect();

    let start = Instant::now();
    let outcomes: Vec<Result<(u32, usize, usize), String>> = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let system = gen_uniform_matching(n, seed);
            let run = color_system(system, None)
                .map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let proper = verify_proper(run.state.system(), &run.coloring);
            let cert =
                verify_permutation_certificate(run.state.system(), &run.state, &run.coloring);
            if !(proper.passed && cert.passed) {
                return Err(format!("n={n} seed={seed}: verification failed"));
            }
            let omega = run.omega as usize;
            let in_bounds = if omega >= 2 {
                run.coloring.num_classes <= 7 * omega
                    && run.coloring.num_final_colors <= 7 * omega * omega
            } else {
                run.coloring.num_final_colors <= 1
            };
            if !in_bounds {
                return Err(format!(
                    "n={n} seed={seed}: bounds exceeded (omega={omega}, classes={}, colors={})",
                    run.coloring.num_classes, run.coloring.num_final_colors
                ));
            }
            Ok((run.omega, run.coloring.num_classes, run.coloring.num_final_colors))
        })
        .collect();

    let mut failures = 0usize;
    let mut max_omega = 0u32;
    let mut max_classes = 0usize;
    let mut max_colors = 0usize;
    for outcome in &outcomes {
        match outcome {
            Ok((omega, classes, colors)) => {
                max_omega = max_omega.max(*omega);
                max_classes = max_classes.max(*classes);
                max_colors = max_colors.max(*colors);
            }
            Err(msg) => {
                failures += 1;
                eprintln!("corpus failure: {msg}");
            }
        }
    }
    let summary = json!({
        "count": a.count,
        "nmax": a.nmax,
        "seed": a.seed,
        "verified": a.count - failures,
        "failures": failures,
        "max_omega": max_omega,
        "max_num_classes": max_classes,
        "max_final_colors": max_colors,
        "elapsed_secs": start.elapsed().as_secs_f64(),
    });
    println!("{summary}");
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
