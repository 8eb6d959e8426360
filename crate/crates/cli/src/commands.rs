//! Argument parsing and the non-server subcommands.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use wayfinder::analysis::{path_stats, ring_lattice_with_shortcuts};
use wayfinder::dijkstra::{RouteError, DEFAULT_PATH_CAP};
use wayfinder::mapkit::grid_to_graph;
use wayfinder::planner::{metric_closure, solve_tsp_exact, solve_tsp_greedy, PlanError, Tour};
use wayfinder::render::{format_table, to_dot};
use wayfinder::{
    all_shortest_paths, extract_path, run_dijkstra, write_edge_list, Graph, GraphError, NodeId,
    Path,
};

use crate::api::{self, Solution, Store};
use crate::load::{load_graph, load_grid};

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Parser)]
#[command(
    name = "wayfinder",
    version,
    about = "Shortest paths, worksheets and tours on small networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest-path worksheet and spanning tree from one origin.
    Spt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        origin: String,
        #[arg(long, value_enum, default_value_t = SptFormat::Table)]
        format: SptFormat,
    },
    /// Cheapest route between two nodes.
    Route {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// List every cheapest route instead of one.
        #[arg(long)]
        all: bool,
        /// Stop listing after this many routes.
        #[arg(long, default_value_t = DEFAULT_PATH_CAP, requires = "all")]
        cap: usize,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Closed tour from home through every listed stop.
    Tour {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        home: String,
        /// Comma-separated stops to visit.
        #[arg(long, value_delimiter = ',', required = true)]
        visit: Vec<String>,
        /// Try every visiting order (default).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        /// Always go to the nearest unvisited stop.
        #[arg(long)]
        greedy: bool,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Routing on ASCII floor plans.
    Grid {
        #[command(subcommand)]
        command: GridCommand,
    },
    /// Mean and longest shortest-path length over all node pairs.
    Stats {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = StatsFormat::Kv)]
        format: StatsFormat,
    },
    /// Generate networks.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
    /// Run the HTTP session API.
    Serve(ServeArgs),
}

#[derive(Debug, Subcommand)]
pub enum GridCommand {
    /// Cheapest walk between two markers.
    Route {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        from: char,
        #[arg(long)]
        to: char,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Ring lattice with seeded random shortcuts, as an edge list.
    Lattice {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        shortcuts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "WAYFINDER_PORT", default_value_t = DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Load sessions from this file at start (if present) and write them back on shutdown.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
    /// Directory of static files to serve next to the API.
    #[arg(long)]
    pub ui: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SptFormat {
    Table,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Kv,
    Json,
}

/// `--all` output in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteSet {
    pub paths: Vec<Path>,
    /// False when the listing stopped at the cap.
    pub complete: bool,
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Why a command failed; decides the exit status.
#[derive(Debug)]
enum Failure {
    /// Bad input: unreadable file, unknown node, bad parameters. Exit 2.
    Usage(String),
    /// Well-formed question with no answer, such as an unreachable node. Exit 1.
    Domain(String),
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (code, msg) = match self {
            Failure::Usage(m) => (2, m),
            Failure::Domain(m) => (1, m),
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<RouteError> for Failure {
    fn from(e: RouteError) -> Failure {
        match e {
            RouteError::Unreachable { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Failure {
        match e {
            PlanError::DisconnectedTerminals { .. } | PlanError::TooManyTerminals { .. } => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn graph(path: &std::path::Path) -> Result<Graph, Failure> {
    load_graph(path).map_err(Failure::Usage)
}

fn describe_path(path: &Path) -> String {
    let nodes: Vec<&str> = path.nodes().into_iter().map(NodeId::as_str).collect();
    let mut out = format!("path: {}\n", nodes.join(" "));
    let streets: Vec<&str> = path
        .edges
        .iter()
        .filter_map(|e| e.name.as_deref())
        .collect();
    if !streets.is_empty() && streets.len() == path.edges.len() {
        out.push_str(&format!("streets: {}\n", streets.join(", ")));
    }
    out.push_str(&format!("cost: {}\n", path.total_cost));
    out
}

fn describe_tour(tour: &Tour) -> String {
    let stops: Vec<&str> = tour.stops.iter().map(NodeId::as_str).collect();
    let walk: Vec<&str> = tour.walk().into_iter().map(NodeId::as_str).collect();
    format!(
        "stops: {}\nwalk: {}\ncost: {}\n",
        stops.join(" "),
        walk.join(" "),
        tour.total_cost
    )
}

fn spt(path: &std::path::Path, origin: &str, format: SptFormat) -> Result<String, Failure> {
    let g = graph(path)?;
    let run = run_dijkstra(&g, origin)?;
    Ok(match format {
        SptFormat::Table => format_table(&run.table),
        SptFormat::Dot => to_dot(&g, &run.table, &run.tree),
        SptFormat::Json => {
            let (table, tree) = run.into_parts();
            json(&Solution { table, tree })
        }
    })
}

fn route(
    path: &std::path::Path,
    from: &str,
    to: &str,
    all: Option<usize>,
    format: TextFormat,
) -> Result<String, Failure> {
    let g = graph(path)?;
    match all {
        None => {
            let run = run_dijkstra(&g, from)?;
            g.node(to)?;
            let p = extract_path(&run.tree, to)?;
            Ok(match format {
                TextFormat::Text => describe_path(&p),
                TextFormat::Json => json(&p),
            })
        }
        Some(cap) => {
            let paths = all_shortest_paths(&g, from, to, cap)?;
            let set = RouteSet {
                complete: paths.len() < cap,
                paths,
            };
            Ok(match format {
                TextFormat::Json => json(&set),
                TextFormat::Text => {
                    let mut out = String::new();
                    for p in &set.paths {
                        out.push_str(&format!("{p}\n"));
                    }
                    out.push_str(&format!("routes: {}", set.paths.len()));
                    if !set.complete {
                        out.push_str(" (stopped at cap)");
                    }
                    out.push('\n');
                    out
                }
            })
        }
    }
}

fn tour(
    path: &std::path::Path,
    home: &str,
    visit: &[String],
    greedy: bool,
    format: TextFormat,
) -> Result<String, Failure> {
    let g = graph(path)?;
    let mut terminals = vec![NodeId::new(home)?];
    for v in visit {
        terminals.push(NodeId::new(v.trim())?);
    }
    let mc = metric_closure(&g, &terminals)?;
    let t = if greedy {
        solve_tsp_greedy(&mc, home)?
    } else {
        solve_tsp_exact(&mc, home)?
    };
    Ok(match format {
        TextFormat::Text => describe_tour(&t),
        TextFormat::Json => json(&t),
    })
}

fn grid_route(
    map: &std::path::Path,
    from: char,
    to: char,
    format: TextFormat,
) -> Result<String, Failure> {
    let grid = load_grid(map).map_err(Failure::Usage)?;
    for m in [from, to] {
        if grid.marker(m).is_none() {
            return Err(Failure::Usage(format!("no marker {m} on the map")));
        }
    }
    let g = grid_to_graph(&grid);
    let run = run_dijkstra(&g, &from.to_string())?;
    let p = extract_path(&run.tree, &to.to_string())?;
    Ok(match format {
        TextFormat::Text => format!("cost: {}\n{}", p.total_cost, grid.render_path(&p)),
        TextFormat::Json => json(&p),
    })
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Spt {
            graph,
            origin,
            format,
        } => spt(&graph, &origin, format),
        Command::Route {
            graph,
            from,
            to,
            all,
            cap,
            format,
        } => route(&graph, &from, &to, all.then_some(cap), format),
        Command::Tour {
            graph,
            home,
            visit,
            greedy,
            format,
            ..
        } => tour(&graph, &home, &visit, greedy, format),
        Command::Grid {
            command:
                GridCommand::Route {
                    map,
                    from,
                    to,
                    format,
                },
        } => grid_route(&map, from, to, format),
        Command::Stats {
            graph: path,
            format,
        } => {
            let stats = path_stats(&graph(&path)?);
            Ok(match format {
                StatsFormat::Kv => stats.to_key_value(),
                StatsFormat::Json => json(&stats),
            })
        }
        Command::Gen {
            command:
                GenCommand::Lattice {
                    n,
                    k,
                    shortcuts,
                    seed,
                },
        } => ring_lattice_with_shortcuts(n, k, shortcuts, seed)
            .map(|g| write_edge_list(&g))
            .map_err(|e| Failure::Usage(e.to_string())),
        Command::Serve(args) => serve(args),
    }
}

fn serve(args: ServeArgs) -> Result<String, Failure> {
    let store = match &args.snapshot {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Store::from_snapshot(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        _ => Store::new(),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Domain(e.to_string()))?;
    runtime
        .block_on(async move {
            let listener = tokio::net::TcpListener::bind((args.host.as_str(), args.port)).await?;
            eprintln!("listening on http://{}", listener.local_addr()?);
            let shutdown = async {
                let _ = tokio::signal::ctrl_c().await;
            };
            api::serve(listener, Arc::new(store), args.ui, args.snapshot, shutdown).await
        })
        .map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(String::new())
}

/// Runs one invocation. `args` starts with the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(f) => f.into_outcome(),
    }
}
