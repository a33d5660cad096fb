//! `wildenum`: enumerate vertex-set families, packings and Horn models of a
//! graph or CNF file as disjoint wildcard rows.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wildcard_enum::families::{self, FamilyKind};
use wildcard_enum::graph::{all_chordless_cycles, all_chordless_paths, all_geodesics, all_triangles};
use wildcard_enum::horn::{enumerate_horn_models, enumerate_min_ones, restrict_min_ones};
use wildcard_enum::oracle::{self, OracleError, PackingKind};
use wildcard_enum::packings::{self, PackingError};
use wildcard_enum::{Bitstring, Graph, HornCnf, Partition, RowError, RowFamily};

use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "wildenum", version, about = "Compressed enumeration of graph subset families")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print only the number of members.
    #[arg(long, global = true)]
    count_only: bool,
    /// Keep only members with at least K elements.
    #[arg(long, global = true, value_name = "K")]
    min_size: Option<usize>,
    /// Look-ahead depth for `horn --min-size`.
    #[arg(long, global = true, value_name = "T", default_value_t = 1)]
    lookahead: usize,
    /// Largest number of bitstrings `oracle-check` may expand.
    #[arg(long, global = true, value_name = "N", default_value_t = 1 << 22)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All chordless paths with at least one edge.
    Paths { graph: PathBuf },
    /// All shortest paths with at least one edge.
    Geodesics { graph: PathBuf },
    /// Chordless cycles, optionally restricted to one class.
    Cycles {
        graph: PathBuf,
        #[arg(long, group = "class")]
        long: bool,
        #[arg(long, group = "class")]
        odd: bool,
        #[arg(long, group = "class")]
        triangles: bool,
    },
    /// Vertex sets inducing a subgraph of the given family.
    Enumerate {
        #[arg(value_name = "FAMILY")]
        family: FamilyKind,
        graph: PathBuf,
    },
    /// Clique packings or connected packings, as edge sets.
    Pack {
        #[arg(value_enum)]
        kind: PackKind,
        graph: PathBuf,
    },
    /// Flats of the cycle matroid (connected packings).
    Flats {
        graph: PathBuf,
        /// List the hyperplanes instead.
        #[arg(long)]
        hyperplanes: bool,
        /// Finest connected packing coarser than this partition (`a,b|c`).
        #[arg(long, value_name = "PARTITION", conflicts_with = "hyperplanes")]
        nearest: Option<String>,
    },
    /// Models of a Horn CNF.
    Horn { cnf: PathBuf },
    /// Compare an enumerator with the brute-force filter.
    OracleCheck {
        /// A family token, or `clipac` / `connpac`.
        target: String,
        graph: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PackKind {
    Clique,
    Connected,
}

/// A failed run: message for stderr and the process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn cap(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::cap(e.to_string())
    }
}

impl From<RowError> for Failure {
    fn from(e: RowError) -> Self {
        match e {
            RowError::CapExceeded { .. } => Failure::cap(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<PackingError> for Failure {
    fn from(e: PackingError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: if e.kind() == io::ErrorKind::BrokenPipe {
                String::new()
            } else {
                e.to_string()
            },
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    read(path)?
        .parse()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path) -> Result<HornCnf, Failure> {
    read(path)?
        .parse()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn vertex_legend(g: &Graph) -> Vec<String> {
    g.labels().to_vec()
}

fn edge_legend(g: &Graph) -> Vec<String> {
    (0..g.edge_count()).map(|e| g.edge_label(e)).collect()
}

fn sized(fam: RowFamily, min_size: Option<usize>) -> RowFamily {
    match min_size {
        Some(k) => restrict_min_ones(&fam, k),
        None => fam,
    }
}

fn labels_of(legend: &[String], x: &Bitstring) -> Vec<String> {
    x.ones().into_iter().map(|p| legend[p].clone()).collect()
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    match &cli.command {
        Command::Paths { graph } | Command::Geodesics { graph } => {
            let g = load_graph(graph)?;
            let paths = if matches!(cli.command, Command::Paths { .. }) {
                all_chordless_paths(&g)
            } else {
                all_geodesics(&g)
            };
            let items: Vec<String> = paths
                .iter()
                .filter(|p| cli.min_size.is_none_or(|k| p.vertices.len() >= k))
                .map(|p| {
                    p.vertices
                        .iter()
                        .map(|&v| g.label(v))
                        .collect::<Vec<_>>()
                        .join("-")
                })
                .collect();
            output::list(out, cli, &items)?;
        }
        Command::Cycles {
            graph,
            long,
            odd,
            triangles,
        } => {
            let g = load_graph(graph)?;
            let cycles = if *triangles {
                all_triangles(&g)
            } else {
                all_chordless_cycles(&g)
                    .into_iter()
                    .filter(|c| (!*long || c.len() >= 4) && (!*odd || c.len() % 2 == 1))
                    .collect()
            };
            let items: Vec<String> = cycles
                .iter()
                .filter(|c| cli.min_size.is_none_or(|k| c.len() >= k))
                .map(|c| {
                    c.vertices
                        .iter()
                        .map(|&v| g.label(v))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            output::list(out, cli, &items)?;
        }
        Command::Enumerate { family, graph } => {
            let g = load_graph(graph)?;
            let fam = sized(families::enumerate(&g, *family), cli.min_size);
            output::family(out, cli, &Report::new(&fam, vertex_legend(&g)))?;
        }
        Command::Pack { kind, graph } => {
            let g = load_graph(graph)?;
            let fam = match kind {
                PackKind::Clique => packings::enumerate_clipacs(&g),
                PackKind::Connected => packings::enumerate_connpacs(&g),
            };
            let fam = sized(fam, cli.min_size);
            output::family(out, cli, &Report::new(&fam, edge_legend(&g)))?;
        }
        Command::Flats {
            graph,
            hyperplanes,
            nearest,
        } => {
            let g = load_graph(graph)?;
            if *hyperplanes {
                let items: Vec<String> = packings::vertex_hyperplanes(&g)?
                    .iter()
                    .map(|p| p.display(&g).to_string())
                    .collect();
                output::list(out, cli, &items)?;
            } else if let Some(text) = nearest {
                let pi0 = Partition::parse(&g, text)?;
                let found = packings::nearest_coarser_connpac(&g, &pi0)?;
                output::list(out, cli, &[found.display(&g).to_string()])?;
            } else {
                let fam = sized(packings::enumerate_connpacs(&g), cli.min_size);
                output::family(out, cli, &Report::new(&fam, edge_legend(&g)))?;
            }
        }
        Command::Horn { cnf } => {
            let cnf = load_cnf(cnf)?;
            let models = match cli.min_size {
                Some(k) => enumerate_min_ones(&cnf, k, cli.lookahead)
                    .map_err(|e| Failure::input(e.to_string()))?,
                None => enumerate_horn_models(&cnf),
            };
            let legend = (1..=cnf.width()).map(|i| format!("x{i}")).collect();
            let mut report = Report::new(&models.family, legend);
            report.satisfiable = Some(models.satisfiable);
            output::family(out, cli, &report)?;
        }
        Command::OracleCheck { target, graph } => {
            let g = load_graph(graph)?;
            return oracle_check(cli, out, target, &g);
        }
    }
    Ok(0)
}

fn oracle_check(cli: &Cli, out: &mut dyn Write, target: &str, g: &Graph) -> Result<u8, Failure> {
    let (fam, reference, legend) = match target {
        "clipac" | "connpac" => {
            let (kind, fam) = if target == "clipac" {
                (PackingKind::CliPac, packings::enumerate_clipacs(g))
            } else {
                (PackingKind::ConnPac, packings::enumerate_connpacs(g))
            };
            let mut reference = Vec::new();
            for p in oracle::oracle_partitions(g, kind)? {
                let edges = packings::edge_set_of_partition(g, &p)?;
                reference.push(Bitstring::from_positions(g.edge_count(), edges));
            }
            (fam, reference, edge_legend(g))
        }
        token => {
            let kind: FamilyKind = token.parse().map_err(Failure::input)?;
            let reference = oracle::oracle_subsets(g, kind)?;
            (families::enumerate(g, kind), reference, vertex_legend(g))
        }
    };
    let k = cli.min_size.unwrap_or(0);
    let fam = sized(fam, cli.min_size);
    let reference: Vec<Bitstring> = reference.into_iter().filter(|x| x.count_ones() >= k).collect();
    let cmp = oracle::compare_family(&fam, &reference, cli.cap)?;
    let witness = cmp.witness().map(|x| labels_of(&legend, x));
    output::comparison(out, cli, &cmp, witness.as_deref())?;
    Ok(if cmp.equal && !cmp.overlapping { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            if !f.message.is_empty() {
                eprintln!("wildenum: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
