use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use tiltlab::cluster::ClusterCat;
use tiltlab::derived::DerivedCat;
use tiltlab::exchange::{build_interval_graph, key_string};
use tiltlab::ginzburg::Ginzburg;
use tiltlab::suite::{self, SuiteConfig};
use tiltlab::{farey, Quiver};

#[derive(Parser)]
#[command(name = "tiltlab", version, about = "Exchange graphs of hearts for Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hearts between H and H[N-2] and their simple tilts.
    IntervalGraph(Common),
    /// Mutation graph of (N-1)-cluster tilting objects.
    ClusterGraph(Common),
    /// Coloured quivers of every heart in the interval.
    ColouredQuiver(Common),
    /// Ball of hearts around the standard heart of the CY-N category.
    GinzburgGraph(Common),
    /// The graph G_N over the Farey triangulation.
    Farey(FareyArgs),
    /// Run the full invariant suite and print a pass/fail table.
    Verify(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args)]
struct Common {
    /// Quiver JSON: {"vertices": n, "arrows": [[s, t], ...]}
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long = "N", default_value_t = 3, value_parser = clap::value_parser!(i64).range(2..))]
    n: i64,
    /// Cluster parameter; defaults to N-1.
    #[arg(long)]
    m: Option<i64>,
    /// Radius of the ball of Calabi-Yau hearts.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

#[derive(Args)]
struct FareyArgs {
    #[arg(long = "N", default_value_t = 3, value_parser = clap::value_parser!(i64).range(2..))]
    n: i64,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<tiltlab::Error> for Failure {
    fn from(e: tiltlab::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn load(c: &Common) -> Result<(String, DerivedCat), Failure> {
    let text = std::fs::read_to_string(&c.quiver).map_err(|e| Failure::Usage(format!("{}: {e}", c.quiver.display())))?;
    let q = Quiver::parse(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let name = c.quiver.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((name, DerivedCat::new(&q)?))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coloured_quivers(c: &Common, name: &str, d: &DerivedCat) -> Result<String, Failure> {
    let m = c.m.unwrap_or(c.n - 1);
    let cc = ClusterCat::new(d, m)?;
    let g = build_interval_graph(d, c.n)?;
    let mut entries = Vec::new();
    for (k, h) in &g.vertices {
        let cq = cc.coloured_quiver_of_heart(h)?;
        let summands: Vec<String> = cc.j_map(h)?.objects.iter().map(|&o| d.name(o)).collect();
        entries.push((key_string(d, k), summands, cq));
    }
    Ok(match c.format {
        Format::Json => {
            let v: Vec<_> = entries
                .iter()
                .map(|(k, s, cq)| serde_json::json!({ "heart": k, "summands": s, "m": cq.m, "arrows": cq.arrows }))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "quiver": name, "m": m, "quivers": v })).unwrap() + "\n"
        }
        Format::Dot => {
            let mut s = String::from("digraph G {\n");
            for (i, (_, summands, cq)) in entries.iter().enumerate() {
                s += &format!("  subgraph cluster_{i} {{\n    label=\"{{{}}}\";\n", summands.join(","));
                for v in 0..cq.vertices {
                    s += &format!("    q{i}_{v} [label=\"{}\"];\n", summands[v]);
                }
                for &(a, b, col, k) in &cq.arrows {
                    s += &format!("    q{i}_{a} -> q{i}_{b} [label=\"({col})x{k}\"];\n");
                }
                s += "  }\n";
            }
            s + "}\n"
        }
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::IntervalGraph(c) => {
            let (name, d) = load(&c)?;
            let g = build_interval_graph(&d, c.n)?;
            let text = match c.format {
                Format::Dot => g.to_dot(&d, &name),
                Format::Json => g.to_json(&d, &name) + "\n",
            };
            emit(&c.out, &text)?;
        }
        Cmd::ClusterGraph(c) => {
            let (name, d) = load(&c)?;
            let cc = ClusterCat::new(&d, c.m.unwrap_or(c.n - 1))?;
            let export = cc.to_export(&cc.build_graph()?, &name);
            let text = match c.format {
                Format::Dot => export.to_dot(),
                Format::Json => export.to_json() + "\n",
            };
            emit(&c.out, &text)?;
        }
        Cmd::ColouredQuiver(c) => {
            let (name, d) = load(&c)?;
            let text = coloured_quivers(&c, &name, &d)?;
            emit(&c.out, &text)?;
        }
        Cmd::GinzburgGraph(c) => {
            let (name, d) = load(&c)?;
            let g = Ginzburg::new(&d, c.n)?;
            let export = g.to_export(&g.explore(&g.standard(), c.depth)?, &name);
            let text = match c.format {
                Format::Dot => export.to_dot(),
                Format::Json => export.to_json() + "\n",
            };
            emit(&c.out, &text)?;
        }
        Cmd::Farey(f) => {
            let g = farey::build_gn(f.n, f.depth)?;
            let report = g.check();
            if !report.all_pass() {
                let fail = report.failures()[0];
                return Err(Failure::Compute(format!("{} ({})", fail.name, fail.witness)));
            }
            let text = match f.format {
                Format::Dot => g.to_dot(),
                Format::Json => g.to_json() + "\n",
            };
            emit(&f.out, &text)?;
        }
        Cmd::Verify(c) => {
            let (_, d) = load(&c)?;
            let report = suite::verify(&d, &SuiteConfig { n: c.n, depth: c.depth, seed: c.seed })?;
            let text = format!("{report}");
            emit(&c.out, &text)?;
            if !report.all_pass() {
                for f in report.failures() {
                    eprintln!("failed invariant: {} ({})", f.name, f.witness);
                }
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("computation failed: {msg}");
            ExitCode::from(1)
        }
    }
}
