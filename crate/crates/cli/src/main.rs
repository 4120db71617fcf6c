use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use tonalg::algebra::enumerate_basis;
use tonalg::branching::bratteli;
use tonalg::gamma::{chain, eta_levels, gamma_set, h_subset, hasse_dot, PosetTable};
use tonalg::gram::{generic_rank, gram_det, gram_matrix, rank_at};
use tonalg::standard::StandardModule;
use tonalg::structure::{a_chain, p_chain, quasi_hereditary_at, section_checks};
use tonalg::symmetric::MultiPartition;
use tonalg::verify::run_suite;
use tonalg::{Diagram, PolyMatrix};

#[derive(Parser, Debug)]
#[command(name = "tonalg", version, about = "Exact computations in l-tone partition algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose two diagrams, the first on top.
    Compose {
        top: String,
        bottom: String,
        /// Also report tone and propagating vector for this l.
        #[arg(long)]
        l: Option<usize>,
    },
    /// List the diagram basis of P^l_n.
    Basis {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Label set, poset covers, total order, η levels and h-subset.
    Gamma {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Standard module dimension, basis profiles and generator matrices.
    Module {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        matrices: bool,
    },
    /// Gram matrix of a standard module, with rank and determinant.
    Gram {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: String,
        /// Evaluate at this rational δ, written p/q.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        det: bool,
    },
    /// Restriction graph of standard modules up to n_max strands.
    Bratteli {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Heredity chains and per-label section checks.
    Structure {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1000003")]
        at: String,
    },
    /// Run the named checks for every n up to n_max.
    Verify {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] tonalg::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0} checks failed")]
    Failed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use tonalg::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(E::Parse { .. } | E::ArityMismatch { .. } | E::NotTone(_) | E::ZeroTone)
            | CliError::Library(E::InvalidArgument(_) | E::InvalidLabel { .. }) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_rational(s: &str) -> CliResult<BigRational> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("expected a rational p/q, got {s:?}")))
}

fn parse_label(s: &str) -> CliResult<MultiPartition> {
    Ok(s.parse()?)
}

fn check_tone(l: usize) -> CliResult<()> {
    if l == 0 {
        return Err(CliError::Usage("l must be at least 1".into()));
    }
    Ok(())
}

fn poly_rows(m: &PolyMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i))).collect())
}

fn compose(top: &str, bottom: &str, l: Option<usize>) -> CliResult<Value> {
    let p: Diagram = top.parse()?;
    let q: Diagram = bottom.parse()?;
    let (k, d) = p.compose(&q)?;
    let mut out = json!({ "delta_power": k, "diagram": d.to_string() });
    if let Some(l) = l {
        check_tone(l)?;
        out["tone"] = json!(d.is_tone(l));
        if d.is_tone(l) {
            out["prop_vector"] = json!(d.prop_vector(l)?.to_string());
        }
    }
    Ok(out)
}

fn gamma_json(l: usize, n: usize) -> CliResult<Value> {
    let table = PosetTable::new(l, n)?;
    let labels = table.labels();
    let covers: Vec<Value> =
        table.covers().into_iter().map(|(lo, hi)| json!([labels[hi].to_string(), labels[lo].to_string()])).collect();
    let eta: Vec<Value> = eta_levels(l, n)?
        .into_iter()
        .map(|(t, level)| json!({ "t": t, "vectors": level.iter().map(|m| m.to_string()).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({
        "l": l,
        "n": n,
        "vectors": gamma_set(l, n)?.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "covers": covers,
        "chain": chain(l, n)?.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "eta": eta,
        "h_subset": h_subset(l, n)?.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
    }))
}

fn module_json(l: usize, n: usize, mu: &str, matrices: bool) -> CliResult<Value> {
    let module = StandardModule::new(&parse_label(mu)?, l, n)?;
    let mut out = json!({
        "l": l,
        "n": n,
        "mu": module.label().to_string(),
        "vector": module.vector().to_string(),
        "dim": module.dim(),
        "specht_dim": module.specht().dim(),
        "profiles": module.profiles().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    if matrices {
        let mats: serde_json::Map<String, Value> =
            module.generator_matrices()?.into_iter().map(|(name, m)| (name, poly_rows(&m))).collect();
        out["matrices"] = Value::Object(mats);
    }
    Ok(out)
}

fn gram_json(l: usize, n: usize, mu: &str, at: Option<&str>, det: bool) -> CliResult<Value> {
    let at = at.map(parse_rational).transpose()?;
    let module = StandardModule::new(&parse_label(mu)?, l, n)?;
    let g = gram_matrix(&module)?;
    let mut out = json!({
        "l": l,
        "n": n,
        "mu": module.label().to_string(),
        "dim": module.dim(),
        "entries": poly_rows(&g),
        "generic_rank": generic_rank(&g),
    });
    if det {
        let d = gram_det(&g);
        out["det"] = json!(d.to_string());
        out["det_terms"] = json!(d);
    }
    if let Some(at) = at {
        out["at"] = json!(at.to_string());
        out["rank_at"] = json!(rank_at(&g, &at));
    }
    Ok(out)
}

fn structure_json(l: usize, n: usize, at: &str) -> CliResult<Value> {
    let delta = parse_rational(at)?;
    let chain_json = |c: tonalg::structure::HeredityChain| -> Value {
        Value::Array(
            c.steps
                .iter()
                .map(|s| {
                    json!({
                        "label": s.label.to_string(),
                        "dim": s.dim,
                        "section": s.section.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    };
    let sections = section_checks(l, n, &delta)?;
    Ok(json!({
        "l": l,
        "n": n,
        "at": delta.to_string(),
        "p_chain": chain_json(p_chain(l, n)?),
        "a_chain": chain_json(a_chain(l, n)?),
        "sections": serde_json::to_value(&sections)?,
        "quasi_hereditary": quasi_hereditary_at(l, n, &delta)?,
    }))
}

fn emit(text: &str) -> CliResult<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        stdout.write_all(b"\n")?;
    }
    Ok(())
}

fn emit_json(v: &Value) -> CliResult<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Compose { top, bottom, l } => emit_json(&compose(&top, &bottom, l)?),
        Command::Basis { l, n, count_only } => {
            check_tone(l)?;
            let basis = enumerate_basis(l, n, n)?;
            let mut out = json!({ "l": l, "n": n, "dim": basis.len() });
            if !count_only {
                out["diagrams"] = json!(basis.iter().map(|d| d.to_string()).collect::<Vec<_>>());
            }
            emit_json(&out)
        }
        Command::Gamma { l, n, format } => {
            check_tone(l)?;
            match format {
                Format::Json => emit_json(&gamma_json(l, n)?),
                Format::Dot => emit(&hasse_dot(l, n)?),
                Format::Csv => Err(CliError::Usage("gamma supports json and dot".into())),
            }
        }
        Command::Module { l, n, mu, matrices } => {
            check_tone(l)?;
            emit_json(&module_json(l, n, &mu, matrices)?)
        }
        Command::Gram { l, n, mu, at, det } => {
            check_tone(l)?;
            emit_json(&gram_json(l, n, &mu, at.as_deref(), det)?)
        }
        Command::Bratteli { l, n_max, dot, csv, format } => {
            check_tone(l)?;
            let graph = bratteli(l, n_max)?;
            if let Some(path) = dot {
                fs::write(path, graph.to_dot())?;
            }
            if let Some(path) = csv {
                fs::write(path, graph.to_csv())?;
            }
            match format {
                Format::Dot => emit(&graph.to_dot()),
                Format::Csv => emit(&graph.to_csv()),
                Format::Json => {
                    let levels: Vec<Value> = graph
                        .levels
                        .iter()
                        .map(|lv| {
                            json!(lv
                                .iter()
                                .map(|(mu, d)| json!({"label": mu.to_string(), "dim": d.to_string()}))
                                .collect::<Vec<_>>())
                        })
                        .collect();
                    let edges: Vec<Value> = graph
                        .edges
                        .iter()
                        .map(|&(n, i, j, k)| {
                            json!({
                                "n": n,
                                "from": graph.levels[n][i].0.to_string(),
                                "to": graph.levels[n - 1][j].0.to_string(),
                                "multiplicity": k,
                            })
                        })
                        .collect();
                    emit_json(
                        &json!({ "l": l, "levels": levels, "edges": edges, "consistent": graph.dims_consistent() }),
                    )
                }
            }
        }
        Command::Structure { l, n, at } => {
            check_tone(l)?;
            emit_json(&structure_json(l, n, &at)?)
        }
        Command::Verify { l, n_max, n_min } => {
            check_tone(l)?;
            if n_min > n_max {
                return Err(CliError::Usage("n-min exceeds n-max".into()));
            }
            let results = run_suite(l, n_min, n_max)?;
            let mut failed = 0;
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                failed += usize::from(!r.passed);
                emit(&format!("{tag} {} l={} n={} {}", r.name, r.l, r.n, r.detail))?;
            }
            if failed > 0 {
                return Err(CliError::Failed(failed));
            }
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(raw) = std::env::var("TONALG_THREADS") {
        let threads: usize =
            raw.parse().map_err(|_| CliError::Usage(format!("TONALG_THREADS must be a number, got {raw:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
