mod run;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fvs_core::girth::bound_ratios;
use fvs_core::graph::{
    connectivity_le3, girth, is_two_connected, validate_fvs, weighted_girth, Girth,
};
use fvs_core::instances::{self, Instance};
use fvs_core::{embed, Bound, Error, VertexId};

use run::{solve, Alg, Fail, RunReport};

#[derive(Parser)]
#[command(name = "fvs", version, about = "Certified small feedback vertex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named or generated instance.
    Gen(GenArgs),
    /// Print size, girth, connectivity, planarity and girth bounds.
    Stats {
        /// Graph file, or an instance name such as `cube`.
        graph: String,
    },
    /// Compute a feedback vertex set with a certified bound.
    Solve(SolveArgs),
    /// Check a vertex set against a graph and, optionally, a bound.
    Verify {
        graph: String,
        /// Whitespace-separated vertex ids; `#` starts a comment.
        fvs: PathBuf,
        #[arg(long, value_enum, default_value_t = BoundArg::None)]
        bound: BoundArg,
        /// Cycle weight threshold for the planar bound (default: weighted girth).
        #[arg(long)]
        g: Option<u64>,
    },
    /// Solve every file in a directory and write one CSV row per file.
    Batch(BatchArgs),
}

#[derive(clap::Args)]
struct GenArgs {
    /// Instance name (`k4`, `cube`, `dodecahedron`, `petersen`, `prism`, `k33`,
    /// `c<k>`, `chain<k>`) or generator (`random-cubic`, `random-planar`,
    /// `random-weighted`, `triangle-replace`, `cycles`).
    kind: String,
    /// Output file; standard output when omitted.
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Source graph for `triangle-replace`: a name or a file.
    #[arg(long)]
    of: Option<String>,
    #[arg(long, default_value_t = 10)]
    max_weight: u64,
    /// Percentage of triangulation edges dropped by `random-weighted`.
    #[arg(long, default_value_t = 30)]
    drop: u32,
    /// Write the JSON mirror instead of the text format.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct SolveArgs {
    graph: String,
    #[arg(long, value_enum, default_value_t = Alg::Auto)]
    alg: Alg,
    /// Cycle weight threshold; must not exceed the (weighted) girth.
    #[arg(long)]
    g: Option<u64>,
    /// Let `auto` pick the `(n+2)/3` solver for 2-connected subcubic graphs.
    #[arg(long)]
    n_bound: bool,
    /// Also run the exact oracle and report the decycling number.
    #[arg(long)]
    exact: bool,
    /// Write the reduction trace as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Append the wall time.
    #[arg(long)]
    timing: bool,
}

#[derive(clap::Args)]
struct BatchArgs {
    dir: PathBuf,
    /// CSV output file; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Alg::Auto)]
    alg: Alg,
    #[arg(long)]
    n_bound: bool,
    /// Run the exact oracle on instances up to this many vertices.
    #[arg(long, default_value_t = 30)]
    exact_max_n: usize,
    /// Fill the `ms` column.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Cubic,
    Planar,
    None,
}

/// Reads a graph file (`.json` uses the JSON mirror) or builds a named
/// instance when no such file exists.
fn load(arg: &str) -> Result<Instance, Fail> {
    let path = Path::new(arg);
    let mut inst = if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Fail::input(format!("{arg}: {e}")))?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            instances::from_json(&text)
        } else {
            instances::parse_graph(&text)
        };
        parsed.map_err(|e| Fail::input(format!("{arg}: {e}")))?
    } else {
        instances::make_named(arg).map_err(|e| Fail::input(format!("{arg}: {e}")))?
    };
    if inst.name.is_none() {
        inst.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(inst)
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::input(format!("`{kind}` needs --{flag}")))
}

fn cmd_gen(a: GenArgs) -> Result<(), Fail> {
    let core = |e: Error| Fail::input(e.to_string());
    let inst = match a.kind.as_str() {
        "random-cubic" => {
            let n = need(a.n, "n", &a.kind)?;
            let g = instances::random_cubic_2connected(n, a.seed).map_err(core)?;
            let mut inst = Instance::new(g);
            inst.name = Some(format!("random-cubic-n{n}-s{}", a.seed));
            inst
        }
        "random-planar" => {
            let n = need(a.n, "n", &a.kind)?;
            let g = a.g.unwrap_or(3);
            let (graph, rot) = instances::random_planar_girth(n, g, a.seed).map_err(core)?;
            let mut inst = Instance::new(graph);
            inst.rotation = Some(rot);
            inst.name = Some(format!("random-planar-n{n}-g{g}-s{}", a.seed));
            inst
        }
        "random-weighted" => {
            let n = need(a.n, "n", &a.kind)?;
            let g = a.g.unwrap_or(3);
            let pg = instances::random_plane_weighted(n, g as u64, a.max_weight, a.drop, a.seed)
                .map_err(core)?;
            let (graph, rot) = pg.into_parts();
            let mut inst = Instance::new(graph);
            inst.rotation = Some(rot);
            inst.name = Some(format!("random-weighted-n{n}-g{g}-s{}", a.seed));
            inst
        }
        "triangle-replace" => {
            let src = load(&need(a.of.clone(), "of", &a.kind)?)?;
            let graph = instances::triangle_replace(&src.graph).map_err(core)?;
            let rotation = embed(&graph).ok();
            let mut inst = Instance::new(graph);
            inst.rotation = rotation;
            inst.name = src.name.map(|s| format!("triangle-replace-{s}"));
            inst
        }
        "cycles" => {
            let k = need(a.k, "k", &a.kind)?;
            let g = need(a.g, "g", &a.kind)?;
            let mut inst = Instance::new(instances::disjoint_cycles(k, g).map_err(core)?);
            inst.name = Some(format!("cycles-k{k}-g{g}"));
            inst.girth = Some(Girth::Finite(g as u64));
            inst.phi = Some(k as usize);
            inst
        }
        name => instances::make_named(name).map_err(core)?,
    };
    let json = a.json
        || a.out
            .as_ref()
            .is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
    let text = if json {
        instances::to_json(&inst).map_err(|e| Fail::internal(e.to_string()))? + "\n"
    } else {
        instances::format_graph(&inst)
    };
    match a.out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_stats(arg: &str) -> Result<(), Fail> {
    let inst = load(arg)?;
    let g = &inst.graph;
    let conn = connectivity_le3(g);
    println!("instance: {}", inst.name.as_deref().unwrap_or(arg));
    println!("n: {}", g.n());
    println!("m: {}", g.m());
    println!("max_degree: {}", g.max_degree());
    println!("girth: {}", girth(g));
    if !g.is_unit_weighted() {
        println!("total_weight: {}", g.total_weight());
        println!("weighted_girth: {}", weighted_girth(g));
    }
    println!("vertex_connectivity: {}", conn.vertex);
    println!("edge_connectivity: {}", conn.edge);
    println!("two_connected: {}", is_two_connected(g));
    let plane = inst.plane();
    match &plane {
        Ok(pg) => {
            println!("planar: true");
            println!("faces: {}", pg.global_face_count());
        }
        Err(Error::NonPlanar) => println!("planar: false"),
        Err(e) => return Err(Fail::input(e.to_string())),
    }
    if plane.is_ok() {
        let (a, b, c) = bound_ratios(g);
        println!("m/g: {a}");
        println!("4m/3g: {b}");
        println!("2m/g: {c}");
    } else {
        println!("bounds: suppressed (non-planar)");
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> Result<(), Fail> {
    let inst = load(&a.graph)?;
    let start = Instant::now();
    let (report, cert) = solve(&inst, a.alg, a.g, a.n_bound, a.exact.then_some(usize::MAX))?;
    let elapsed = start.elapsed();
    if let Some(path) = &a.trace {
        let lines = cert
            .trace_json_lines()
            .map_err(|e| Fail::internal(e.to_string()))?;
        fs::write(path, lines).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    }
    if a.json {
        let mut report = report.clone();
        if a.timing {
            report.ms = Some(elapsed.as_secs_f64() * 1e3);
        }
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print!("{}", report.text());
        if a.timing {
            println!("time_ms: {:.3}", elapsed.as_secs_f64() * 1e3);
        }
    }
    if report.valid {
        Ok(())
    } else {
        Err(Fail::internal("certificate failed validation"))
    }
}

fn read_set(path: &Path) -> Result<Vec<VertexId>, Fail> {
    let text =
        fs::read_to_string(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    let mut set = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| {
                Fail::input(format!(
                    "{}:{}: expected a vertex id, found `{tok}`",
                    path.display(),
                    i + 1
                ))
            })?;
            set.push(VertexId(v));
        }
    }
    Ok(set)
}

fn cmd_verify(
    graph: &str,
    fvs: &Path,
    bound: BoundArg,
    g_override: Option<u64>,
) -> Result<(), Fail> {
    let inst = load(graph)?;
    let g = &inst.graph;
    let list = read_set(fvs)?;
    let set: std::collections::BTreeSet<VertexId> = list.iter().copied().collect();
    if set.len() != list.len() {
        return Err(Fail::invalid_set("the set lists a vertex twice"));
    }
    let valid = match validate_fvs(g, &set) {
        Ok(v) => v,
        Err(e) => return Err(Fail::invalid_set(e.to_string())),
    };
    println!("size: {}", set.len());
    println!("valid: {valid}");
    if !valid {
        return Err(Fail::invalid_set("removing the set leaves a cycle"));
    }
    let bound = match bound {
        BoundArg::None => return Ok(()),
        BoundArg::Cubic => Bound::cubic(g.n()),
        BoundArg::Planar => match g_override
            .map(Girth::Finite)
            .unwrap_or_else(|| weighted_girth(g))
        {
            Girth::Finite(0) => return Err(Fail::input("g must be positive")),
            Girth::Finite(gv) => Bound::planar_weighted(g.total_weight(), gv),
            Girth::Infinite => Bound::exact(0),
        },
    };
    let ok = bound.admits(set.len());
    println!("bound: {} = {bound}", bound.kind);
    println!("bound_satisfied: {ok}");
    if ok {
        Ok(())
    } else {
        Err(Fail::bound_violated(format!(
            "{} exceeds {bound}",
            set.len()
        )))
    }
}

fn cmd_batch(a: BatchArgs) -> Result<(), Fail> {
    let mut files: Vec<PathBuf> = fs::read_dir(&a.dir)
        .map_err(|e| Fail::input(format!("{}: {e}", a.dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| {
            !p.file_name()
                .is_some_and(|f| f.to_string_lossy().starts_with('.'))
        })
        .collect();
    files.sort_by(|x, y| x.file_name().cmp(&y.file_name()));

    let sink: Box<dyn std::io::Write> = match &a.csv {
        Some(p) => {
            Box::new(fs::File::create(p).map_err(|e| Fail::input(format!("{}: {e}", p.display())))?)
        }
        None => Box::new(std::io::stdout()),
    };
    let mut out = csv::Writer::from_writer(sink);
    out.write_record(RunReport::CSV_HEADER)
        .map_err(|e| Fail::input(e.to_string()))?;
    let mut failed = 0;
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let start = Instant::now();
        let row = load(&path.to_string_lossy()).and_then(|inst| {
            solve(&inst, a.alg, None, a.n_bound, Some(a.exact_max_n)).map(|r| r.0)
        });
        let ms = a.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let record = match row {
            Ok(mut report) => {
                report.instance = name;
                report.ms = ms;
                if !report.valid {
                    failed += 1;
                }
                report.csv_record()
            }
            Err(f) => {
                eprintln!("{name}: {}", f.message);
                failed += 1;
                RunReport::failed_record(&name, ms)
            }
        };
        out.write_record(&record)
            .map_err(|e| Fail::input(e.to_string()))?;
    }
    out.flush().map_err(|e| Fail::input(e.to_string()))?;
    if failed > 0 {
        Err(Fail::batch(format!(
            "{failed} of {} instances failed",
            files.len()
        )))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Stats { graph } => cmd_stats(&graph),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify {
            graph,
            fvs,
            bound,
            g,
        } => cmd_verify(&graph, &fvs, bound, g),
        Command::Batch(a) => cmd_batch(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
