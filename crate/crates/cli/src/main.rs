//! `altroute`: solve single-alternative-path instances from the command line.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when no alternative to the
//! original route exists (the report is still printed).

mod geojson;
mod report;

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use altroute_core::network::{write_network, write_route};
use altroute_core::oracle::build_gadget;
use altroute_core::psych::PsychModel;
use altroute_core::solvers::{solve_with_threads, Algorithm, Instance, Variant};
use altroute_core::synth::{grid, GridSpec};
use altroute_core::{parse_network, parse_route, Network, Path};

use report::{BenchReport, RunReport};

#[derive(Parser)]
#[command(name = "altroute", version, about = "Alternative routes for congested demand")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON report.
    Solve(SolveArgs),
    /// Sweep demands, variants and models over one instance.
    Bench(BenchArgs),
    /// Write the subset-sum gadget as network and route files.
    Gadget(GadgetArgs),
    /// Write a synthetic BPR grid with a corridor route.
    Grid(GridArgs),
    /// Convert a solve report to GeoJSON.
    ExportGeojson(ExportArgs),
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    route: PathBuf,
    /// Worker threads; defaults to all available cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// sap, 1d-sap or d-sap
    #[arg(long, default_value = "sap")]
    variant: String,
    /// direct or fc
    #[arg(long, default_value = "direct")]
    algo: String,
    /// so, ue, linear:<c>, quotient:tanh:<a>, quotient:const:<k> or indicator:<w>
    #[arg(long, default_value = "ue")]
    model: String,
    /// Overrides the demand in the route file.
    #[arg(long)]
    demand: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InstanceArgs,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    demands: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "sap")]
    variants: Vec<String>,
    #[arg(long, default_value = "direct")]
    algo: String,
    #[arg(long, value_delimiter = ',', default_value = "ue")]
    models: Vec<String>,
    /// Print a tab-separated table instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct GadgetArgs {
    /// Comma-separated positive integers.
    #[arg(long)]
    set: String,
    #[arg(long)]
    target: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// Rows and columns.
    #[arg(long, default_value_t = 10)]
    size: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// First and last column of the route along the corridor row.
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, default_value_t = 1000.0)]
    demand: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    report: PathBuf,
    #[arg(long)]
    network: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

type CliResult<T> = Result<T, String>;

fn read(path: &FsPath) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &FsPath, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(args: &InstanceArgs) -> CliResult<(Network, Path, f64)> {
    let net = parse_network(&read(&args.network)?).map_err(|e| format!("{}: {e}", args.network.display()))?;
    let (route, demand) = parse_route(&read(&args.route)?, &net).map_err(|e| format!("{}: {e}", args.route.display()))?;
    Ok((net, route, demand))
}

fn threads(args: &InstanceArgs) -> CliResult<usize> {
    match args.threads {
        Some(0) => Err("--threads must be at least 1".into()),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn run(
    args: &InstanceArgs,
    net: &Network,
    route: &Path,
    demand: f64,
    variant: Variant,
    algo: Algorithm,
    model: &PsychModel,
) -> CliResult<RunReport> {
    let inst =
        Instance::new(net, route.clone(), demand, model.clone()).map_err(|e| e.to_string())?.with_variant(variant).with_algorithm(algo);
    let sol = solve_with_threads(&inst, threads(args)?).map_err(|e| e.to_string())?;
    Ok(RunReport::new(&args.network.display().to_string(), &args.route.display().to_string(), &inst, &sol))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn cmd_solve(a: SolveArgs) -> CliResult<ExitCode> {
    let variant: Variant = a.variant.parse().map_err(|e: altroute_core::Error| e.to_string())?;
    let algo: Algorithm = a.algo.parse().map_err(|e: altroute_core::Error| e.to_string())?;
    let model = PsychModel::parse(&a.model).map_err(|e| e.to_string())?;
    let (net, route, file_demand) = load(&a.input)?;
    let report = run(&a.input, &net, &route, a.demand.unwrap_or(file_demand), variant, algo, &model)?;
    print!("{}", to_json(&report));
    Ok(if report.no_alternative { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_bench(a: BenchArgs) -> CliResult<ExitCode> {
    if a.demands.is_empty() {
        return Err("--demands needs at least one value".into());
    }
    let variants = a.variants.iter().map(|v| v.parse::<Variant>().map_err(|e| e.to_string())).collect::<CliResult<Vec<_>>>()?;
    let algo: Algorithm = a.algo.parse().map_err(|e: altroute_core::Error| e.to_string())?;
    let models = a.models.iter().map(|m| PsychModel::parse(m).map_err(|e| e.to_string())).collect::<CliResult<Vec<_>>>()?;
    let (net, route, _) = load(&a.input)?;
    let mut runs = Vec::new();
    for &d in &a.demands {
        for &v in &variants {
            for m in &models {
                runs.push(run(&a.input, &net, &route, d, v, algo, m)?);
            }
        }
    }
    let bench = BenchReport::new(runs);
    if a.table {
        print!("{}", bench.table());
    } else {
        print!("{}", to_json(&bench));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gadget(a: GadgetArgs) -> CliResult<ExitCode> {
    let set = a
        .set
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| format!("--set: `{s}` is not a non-negative integer")))
        .collect::<CliResult<Vec<_>>>()?;
    let g = build_gadget(&set, a.target).map_err(|e| e.to_string())?;
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    let (net_file, route_file) = (a.out.join("network.txt"), a.out.join("route.txt"));
    write(&net_file, &g.network_text())?;
    write(&route_file, &g.route_text())?;
    let info = serde_json::json!({
        "network": net_file.display().to_string(),
        "route": route_file.display().to_string(),
        "model": g.model.to_string(),
        "threshold": g.threshold(),
    });
    print!("{}", to_json(&info));
    Ok(ExitCode::SUCCESS)
}

fn cmd_grid(a: GridArgs) -> CliResult<ExitCode> {
    if a.size < 2 {
        return Err("--size must be at least 2".into());
    }
    let spec = GridSpec::with_corridor(a.size, a.seed);
    let row = spec.corridor.map_or(a.size / 2, |c| c.row);
    let g = grid(spec).map_err(|e| e.to_string())?;
    let (from, to) = (a.from.unwrap_or(0), a.to.unwrap_or(a.size - 1));
    let route = g.row_path(row, from, to).map_err(|e| e.to_string())?;
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    write(&a.out.join("network.txt"), &write_network(&g.net))?;
    write(&a.out.join("route.txt"), &write_route(&g.net, &route, a.demand))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(a: ExportArgs) -> CliResult<ExitCode> {
    let report: RunReport = serde_json::from_str(&read(&a.report)?).map_err(|e| format!("{}: {e}", a.report.display()))?;
    let net = parse_network(&read(&a.network)?).map_err(|e| format!("{}: {e}", a.network.display()))?;
    let doc = to_json(&geojson::export(&report, &net)?);
    match a.out {
        Some(p) => write(&p, &doc)?,
        None => print!("{doc}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; 2 is reserved for "no alternative"
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gadget(a) => cmd_gadget(a),
        Command::Grid(a) => cmd_grid(a),
        Command::ExportGeojson(a) => cmd_export(a),
    };
    result.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        ExitCode::FAILURE
    })
}
