use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multiutil::io::{
    hasse_to_json, multi_utility_to_json, Preference, ProbeDoc, ProbeOutcome, RealizerDoc,
    RelationDoc, TopologyDoc,
};
use multiutil::pareto::decomposition_check;
use multiutil::semiorder::grid_report;
use multiutil::{
    build_multi_embedding, build_pareto_representation, build_realizer, continuous_pareto_probe,
    hasse_projection, open_order_dimension, order_dimension, verify_existential_embedding,
    verify_pareto_embedding, verify_realizer, Error, FiniteTopology, Grid, Relation, SearchBudget,
    SemiorderFamily,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "multiutil",
    version,
    about = "Multi-utility representations of preferences on finite spaces"
)]
struct Cli {
    /// JSON layout on standard output.
    #[arg(long, value_enum, default_value_t = Output::Pretty, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Pretty,
    Compact,
}

#[derive(Subcommand)]
enum Command {
    /// Order properties and topological status of a relation.
    Check(RelationArgs),
    /// Realizer of a partial order by linear extensions.
    Realize(RelationArgs),
    /// Order dimension, and its open variant for the given topology.
    Dimension {
        #[command(flatten)]
        input: RelationArgs,
        #[arg(long, default_value_t = SearchBudget::default().max_k)]
        max_k: usize,
        #[arg(long, default_value_t = SearchBudget::default().max_n)]
        max_n: usize,
    },
    /// Continuous existential multi-utility of a complete, negatively transitive relation.
    Embed(RelationArgs),
    /// Pareto representation of a strict partial order.
    Pareto(RelationArgs),
    /// Grid verification of the threshold semiorder and its bump family.
    Semiorder {
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        pair_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        pair_max: f64,
        #[arg(long, default_value_t = 0.05)]
        pair_step: f64,
        /// Family members spread evenly over the pair range; defaults to one per grid point.
        #[arg(long)]
        alpha_count: Option<usize>,
        /// Also write per-pair rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Plane projection of an embedding with covering edges.
    Hasse(RelationArgs),
    /// Search a sampled family for a continuous Pareto violation.
    Probe {
        /// Probe document: epsilon, grid and family.
        input: PathBuf,
    },
}

#[derive(clap::Args)]
struct RelationArgs {
    /// Relation document.
    input: PathBuf,
    /// Topology document; discrete when omitted.
    #[arg(long)]
    topology: Option<PathBuf>,
}

enum Failure {
    Library(Error),
    Read(PathBuf, std::io::Error),
    Parse {
        path: PathBuf,
        field: String,
        message: String,
    },
    Write(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Library(Error::SearchBudgetExceeded(_)) => 3,
            Failure::Library(
                Error::ToleranceViolation { .. } | Error::InternalContractViolation(_),
            ) => 4,
            Failure::Write(..) => 1,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Library(e) => e.to_string(),
            Failure::Read(path, e) => format!("{}: {e}", path.display()),
            Failure::Parse {
                path,
                field,
                message,
            } => {
                format!("{}: `{field}`: {message}", path.display())
            }
            Failure::Write(path, e) => format!("{}: {e}", path.display()),
        }
    }
}

/// A JSON result and whether every verification it reports passed.
struct Report {
    value: Value,
    verified: bool,
}

fn verified(value: Value) -> Result<Report, Failure> {
    Ok(Report {
        value,
        verified: true,
    })
}

fn read_doc<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Read(path.to_owned(), e))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        Failure::Parse {
            path: path.to_owned(),
            field,
            message: e.into_inner().to_string(),
        }
    })
}

fn load(args: &RelationArgs) -> Result<(Preference, RelationDoc, FiniteTopology), Failure> {
    let doc: RelationDoc = read_doc(&args.input)?;
    let pref = doc.load()?;
    let topology = match &args.topology {
        Some(path) => read_doc::<TopologyDoc>(path)?,
        None => TopologyDoc::default(),
    }
    .build(pref.ground())?;
    Ok((pref, doc, topology))
}

/// Partial order and its strict part, read from either document kind.
fn as_order(pref: &Preference, doc: &RelationDoc) -> (Relation, Relation) {
    match doc.kind {
        multiutil::io::RelationKind::Weak => (pref.weak.clone(), pref.weak.strict_part()),
        multiutil::io::RelationKind::Strict => {
            (pref.strict.reflexive_closure(), pref.strict.clone())
        }
    }
}

fn pairs(r: &Relation) -> Value {
    json!(r.labelled_pairs())
}

fn run(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Check(args) => {
            let (pref, _, topology) = load(args)?;
            let report = topology.relation_report(&pref.weak)?;
            verified(json!({
                "weak": pref.weak.properties(),
                "strict": pref.strict.properties(),
                "topology": {
                    "is_closed": report.is_closed,
                    "is_open": report.is_open,
                    "closure": pairs(&report.closure),
                    "interior": pairs(&report.interior),
                },
            }))
        }
        Command::Realize(args) => {
            let (pref, doc, _) = load(args)?;
            let (p, _) = as_order(&pref, &doc);
            let realizer = build_realizer(&p)?;
            let ok = verify_realizer(&p, &realizer);
            Ok(Report {
                value: json!({
                    "orders": RealizerDoc::from_realizer(&realizer).orders,
                    "verified": ok,
                }),
                verified: ok,
            })
        }
        Command::Dimension {
            input,
            max_k,
            max_n,
        } => {
            let (pref, doc, topology) = load(input)?;
            let (p, _) = as_order(&pref, &doc);
            let budget = SearchBudget {
                max_k: *max_k,
                max_n: *max_n,
            };
            let d = order_dimension(&p, budget)?;
            let d_tau = open_order_dimension(&p, &topology, budget)?;
            verified(json!({
                "dimension": d,
                "open_dimension": d_tau,
                "budget": { "max_k": max_k, "max_n": max_n },
            }))
        }
        Command::Embed(args) => {
            let (pref, _, topology) = load(args)?;
            let v = build_multi_embedding(&pref.weak, &topology)?;
            let ok = verify_existential_embedding(&pref.weak, &v);
            Ok(Report {
                value: json!({
                    "embedding": multi_utility_to_json(&v),
                    "k": v.k(),
                    "verified": ok,
                }),
                verified: ok,
            })
        }
        Command::Pareto(args) => {
            let (pref, doc, _) = load(args)?;
            let (p, q) = as_order(&pref, &doc);
            let v = build_pareto_representation(&q)?;
            let ok = verify_pareto_embedding(&q, &v);
            let decomposition = decomposition_check(&q, &build_realizer(&p)?);
            Ok(Report {
                value: json!({
                    "representation": multi_utility_to_json(&v),
                    "verified": ok,
                    "decomposition": decomposition,
                }),
                verified: ok && decomposition,
            })
        }
        Command::Semiorder {
            epsilon,
            pair_min,
            pair_max,
            pair_step,
            alpha_count,
            csv,
        } => {
            let grid = Grid::new(*pair_min, *pair_max, *pair_step)?;
            let count = alpha_count.unwrap_or_else(|| grid.len());
            let family = SemiorderFamily::evenly_spaced(*epsilon, *pair_min, *pair_max, count)?;
            let report = grid_report(&family, &grid)?;
            if let Some(path) = csv {
                write_csv(path, &report.rows)?;
            }
            let ok = report.failed == 0 && report.boundary_failures == 0;
            Ok(Report {
                value: json!({ "alpha_count": count, "report": report }),
                verified: ok,
            })
        }
        Command::Hasse(args) => {
            let (pref, _, topology) = load(args)?;
            let v = build_multi_embedding(&pref.weak, &topology)?;
            verified(hasse_to_json(&hasse_projection(&v, &pref.strict)?))
        }
        Command::Probe { input } => {
            let doc: ProbeDoc = read_doc(input)?;
            let violation = continuous_pareto_probe(&doc.family, doc.epsilon, &doc.grid)?;
            verified(serde_json::to_value(ProbeOutcome { violation }).expect("serializable"))
        }
    }
}

fn write_csv(path: &Path, rows: &[multiutil::semiorder::PairRow]) -> Result<(), Failure> {
    let mut out = String::from("x,y,in_p,witness_alpha,margin\n");
    for r in rows {
        let alpha = r.witness_alpha.map(|a| a.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.x, r.y, r.in_p, alpha, r.margin
        ));
    }
    fs::write(path, out).map_err(|e| Failure::Write(path.to_owned(), e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let text = match cli.output {
                Output::Pretty => serde_json::to_string_pretty(&report.value),
                Output::Compact => serde_json::to_string(&report.value),
            }
            .expect("serializable");
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
            if report.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(4)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
