use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use coxinv::analysis::Analyzer;
use coxinv::enumeration::{genus_search, EnumerationConfig, GenusVerdict};
use coxinv::gram::{classify_via_gram, DEFAULT_TOLERANCE};
use coxinv::invariants::{
    compare, decompose, invariant_vector, FIELD_STATUSES,
};
use coxinv::rigidity::{default_label_cutoff, family_membership, genus_bounds};
use coxinv::tables::{simplex_rank4, simplex_rank5, verify_simplex_entry, SimplexEntry};
use coxinv::{CoxeterGraph, FiniteType, InvariantCache};

#[derive(Parser)]
#[command(
    name = "coxinv",
    version,
    about = "Invariants, classification and genus search for Coxeter groups given as labeled graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full invariant vector of one graph.
    Invariants { path: PathBuf },
    /// Compare the invariant vectors of two graphs.
    ///
    /// Exit code 0: not distinguished; 1: distinguished; 2: error.
    Compare { path1: PathBuf, path2: PathBuf },
    /// Classify the graph: direct factor decomposition, Gram signature and
    /// rigidity family membership.
    Classify {
        path: PathBuf,
        /// Eigenvalue tolerance for the Gram signature.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        gram_tolerance: f64,
    },
    /// Search all graphs within bounds for candidates presenting a group
    /// indistinguishable from the target's by the implemented invariants.
    ///
    /// Exit code 0: one class; 1: several classes; 2: error.
    Genus {
        path: PathBuf,
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Label cutoff; default: a heuristic (order of the largest finite
        /// standard subgroup), not the group-theoretic quantity the
        /// published bounds use.
        #[arg(long)]
        max_label: Option<u32>,
        /// Cache directory (default: $COXINV_CACHE_DIR if set).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Print a stored catalogue, recomputing the checkable columns.
    ///
    /// Exit code 1 if a recomputed value disagrees with the stored table.
    Tables { name: TableName },
    /// List one representative per isomorphism class of graphs in range.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_label: u32,
        #[arg(long)]
        connected_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    /// Rank-4 cocompact hyperbolic simplex diagrams.
    #[value(alias = "lanner4")]
    Simplex4,
    /// Rank-5 cocompact hyperbolic simplex diagrams.
    #[value(alias = "lanner5")]
    Simplex5,
    /// Irreducible finite diagrams with group orders.
    Finite,
}

fn load(path: &PathBuf) -> Result<CoxeterGraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let g = if path.extension().is_some_and(|e| e == "json") {
        CoxeterGraph::from_json(&text)
    } else {
        CoxeterGraph::parse(&text)
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    if g.n() == 0 {
        bail!("{}: graph has no vertices", path.display());
    }
    Ok(g)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cmd_invariants(path: &PathBuf, format: Format) -> Result<ExitCode> {
    let g = load(path)?;
    if format == Format::Dot {
        print!("{}", g.to_dot());
        return Ok(ExitCode::SUCCESS);
    }
    let v = invariant_vector(&Analyzer::new(&g));
    match format {
        Format::Json => {
            let statuses: serde_json::Map<String, serde_json::Value> = FIELD_STATUSES
                .iter()
                .map(|(name, status)| {
                    (name.to_string(), serde_json::to_value(status).unwrap())
                })
                .collect();
            print_json(&serde_json::json!({
                "graph": g.to_json(),
                "invariants": v,
                "profinite_status": statuses,
            }))?;
        }
        Format::Text => {
            let flat = serde_json::to_value(&v)?;
            for (name, status) in FIELD_STATUSES {
                let mut cursor = &flat;
                for part in name.split('.') {
                    cursor = &cursor[part];
                }
                println!("{name}: {cursor}  [{}]", status_text(status));
            }
        }
        Format::Dot => unreachable!(),
    }
    Ok(ExitCode::SUCCESS)
}

fn status_text(status: &coxinv::invariants::ProfiniteStatus) -> String {
    use coxinv::invariants::ProfiniteStatus::*;
    match status {
        General => "profinite invariant".into(),
        Conditional(cond) => format!("profinite invariant when {cond}"),
        IsoInvariantOnly => "graph-isomorphism invariant only".into(),
    }
}

fn cmd_compare(path1: &PathBuf, path2: &PathBuf, format: Format) -> Result<ExitCode> {
    let g1 = load(path1)?;
    let g2 = load(path2)?;
    let v1 = invariant_vector(&Analyzer::new(&g1));
    let v2 = invariant_vector(&Analyzer::new(&g2));
    let report = compare(&v1, &v2);
    let same_class = coxinv::are_isomorphic(
        &coxinv::known_iso_normalize(&g1),
        &coxinv::known_iso_normalize(&g2),
    )
    .is_some();
    match format {
        Format::Json => print_json(&serde_json::json!({
            "report": report,
            "same_known_isomorphism_class": same_class,
        }))?,
        _ => {
            for f in &report.fields {
                if !f.equal {
                    let role = if f.decisive { "decisive" } else { "informative" };
                    println!("differs ({role}): {}", f.field);
                }
            }
            if report.distinguished {
                println!("distinguished by: {}", report.witnesses.join(", "));
            } else if same_class {
                println!("not distinguished; same known-isomorphism class");
            } else {
                println!("not distinguished by the implemented invariants");
            }
        }
    }
    Ok(if report.distinguished {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_classify(path: &PathBuf, gram_tolerance: f64, format: Format) -> Result<ExitCode> {
    let g = load(path)?;
    if format == Format::Dot {
        print!("{}", g.to_dot());
        return Ok(ExitCode::SUCCESS);
    }
    let a = Analyzer::new(&g);
    let decomposition = decompose(&a);
    let gram = classify_via_gram(&g, gram_tolerance);
    let families = family_membership(&g);
    let bounds = genus_bounds(&g, default_label_cutoff(&g)).ok();
    match format {
        Format::Json => print_json(&serde_json::json!({
            "decomposition": decomposition,
            "gram": format!("{gram:?}"),
            "families": families,
            "genus_bounds": bounds,
        }))?,
        _ => {
            for (i, c) in decomposition.components.iter().enumerate() {
                let mut parts: Vec<String> = c
                    .spherical
                    .iter()
                    .map(|t| t.to_string())
                    .chain(c.affine.iter().map(|t| t.to_string()))
                    .collect();
                if !c.generic_vertices.is_empty() {
                    parts.push(format!(
                        "indefinite on {{{}}}",
                        c.generic_vertices.join(", ")
                    ));
                }
                println!("component {}: {}", i + 1, parts.join(" x "));
            }
            if decomposition.free_product {
                println!("the group is the free product of the components");
            }
            println!("gram signature: {gram:?}");
            for m in &families.matched {
                println!("family: {} ({})", m.key, m.description);
            }
            println!("verdict: {:?}", families.verdict);
            if let Some(b) = bounds {
                for vb in &b.vertex_bounds {
                    println!(
                        "vertex bound {} for label cutoff {} ({})",
                        vb.bound, b.label_bound, vb.source
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_genus(
    path: &PathBuf,
    max_vertices: Option<usize>,
    max_label: Option<u32>,
    cache_dir: Option<PathBuf>,
    no_cache: bool,
    format: Format,
) -> Result<ExitCode> {
    let g = load(path)?;
    let max_label = max_label.unwrap_or_else(|| default_label_cutoff(&g));
    let max_vertices = max_vertices.unwrap_or_else(|| {
        genus_bounds(&g, max_label)
            .ok()
            .and_then(|b| b.effective_bound)
            .unwrap_or(g.n())
    });
    let cfg = EnumerationConfig {
        max_vertices,
        max_label,
        connected_only: false,
    };
    let cache = if no_cache {
        None
    } else {
        cache_dir.map(InvariantCache::new).or_else(InvariantCache::from_env)
    };
    let report = genus_search(&g, &cfg, cache.as_ref())?;
    match format {
        Format::Json => print_json(&report)?,
        _ => {
            println!(
                "searched graphs with at most {} vertices, labels 2..={}",
                report.max_vertices, report.max_label
            );
            println!("{} candidate graph(s) not distinguished from the target:", report.candidates);
            for (i, class) in report.classes.iter().enumerate() {
                let marker = if class.contains_target { " (target's class)" } else { "" };
                println!("class {}{}:", i + 1, marker);
                for m in &class.members {
                    println!("  {}", m.replace('\n', "; "));
                }
            }
            println!("verdict: {:?}", report.verdict);
            println!("note: {}", report.note);
        }
    }
    Ok(match report.verdict {
        GenusVerdict::SingletonClass => ExitCode::SUCCESS,
        _ => ExitCode::from(1),
    })
}

fn simplex_table(entries: &[SimplexEntry], format: Format) -> Result<ExitCode> {
    let mut ok = true;
    let mut rows = Vec::new();
    for e in entries {
        let verified = verify_simplex_entry(e);
        ok &= verified;
        let a = Analyzer::new(&e.graph);
        let recomputed: Vec<String> = a
            .cf_max()
            .classes
            .iter()
            .map(|c| {
                c.types
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" x ")
            })
            .collect();
        let stored: Vec<String> = e
            .expected_cf_max
            .iter()
            .map(|fs| fs.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" x "))
            .collect();
        rows.push(serde_json::json!({
            "name": e.name,
            "edges": e.graph.edges().iter().map(|&(i, j, m)| {
                format!("{}-{}:{}", e.graph.name(i), e.graph.name(j), m)
            }).collect::<Vec<_>>(),
            "maximal_finite_subgroups": stored,
            "recomputed": recomputed,
            "verified": verified,
        }));
    }
    match format {
        Format::Json => print_json(&rows)?,
        _ => {
            for row in &rows {
                println!(
                    "{}  [{}]  CF_max: {}  ({})",
                    row["name"].as_str().unwrap(),
                    row["edges"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect::<Vec<_>>()
                        .join(" "),
                    row["maximal_finite_subgroups"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect::<Vec<_>>()
                        .join(", "),
                    if row["verified"].as_bool().unwrap() {
                        "verified"
                    } else {
                        "MISMATCH"
                    }
                );
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn finite_table(format: Format) -> Result<ExitCode> {
    let mut rows = Vec::new();
    for n in 1..=8u32 {
        rows.push(FiniteType::A(n));
    }
    for n in 2..=8u32 {
        rows.push(FiniteType::B(n));
    }
    for n in 4..=8u32 {
        rows.push(FiniteType::D(n));
    }
    rows.extend([
        FiniteType::E6,
        FiniteType::E7,
        FiniteType::E8,
        FiniteType::F4,
        FiniteType::G2,
        FiniteType::H3,
        FiniteType::H4,
    ]);
    for m in [5, 7, 8, 9] {
        rows.push(FiniteType::I2(m));
    }
    let table: Vec<serde_json::Value> = rows
        .iter()
        .map(|t| {
            serde_json::json!({
                "type": t.to_string(),
                "rank": t.rank(),
                "order": t.order().to_string(),
            })
        })
        .collect();
    match format {
        Format::Json => print_json(&serde_json::json!({
            "note": "families A_n, B_n, D_n, I2(m) continue beyond the rows shown",
            "rows": table,
        }))?,
        _ => {
            for row in &table {
                println!(
                    "{:8} rank {:2}  order {}",
                    row["type"].as_str().unwrap(),
                    row["rank"],
                    row["order"].as_str().unwrap()
                );
            }
            println!("(families A_n, B_n, D_n, I2(m) continue beyond the rows shown)");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(cfg: EnumerationConfig, format: Format) -> Result<ExitCode> {
    let graphs = coxinv::enumerate_graphs(&cfg)?;
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> =
                graphs.iter().map(|g| g.to_json()).collect();
            print_json(&rows)?;
        }
        Format::Dot => {
            for g in &graphs {
                print!("{}", g.to_dot());
            }
        }
        Format::Text => {
            for g in &graphs {
                let edges: Vec<String> = g
                    .edges()
                    .iter()
                    .map(|&(i, j, m)| format!("{}-{}:{}", g.name(i), g.name(j), m))
                    .collect();
                if edges.is_empty() {
                    println!("{} vertices, no edges", g.n());
                } else {
                    println!("{} vertices: {}", g.n(), edges.join(" "));
                }
            }
            println!("{} classes", graphs.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    match &cli.cmd {
        Cmd::Invariants { path } => cmd_invariants(path, cli.format),
        Cmd::Compare { path1, path2 } => cmd_compare(path1, path2, cli.format),
        Cmd::Classify {
            path,
            gram_tolerance,
        } => cmd_classify(path, *gram_tolerance, cli.format),
        Cmd::Genus {
            path,
            max_vertices,
            max_label,
            cache_dir,
            no_cache,
        } => cmd_genus(
            path,
            *max_vertices,
            *max_label,
            cache_dir.clone(),
            *no_cache,
            cli.format,
        ),
        Cmd::Tables { name } => match name {
            TableName::Simplex4 => simplex_table(&simplex_rank4(), cli.format),
            TableName::Simplex5 => simplex_table(&simplex_rank5(), cli.format),
            TableName::Finite => finite_table(cli.format),
        },
        Cmd::Enumerate {
            max_vertices,
            max_label,
            connected_only,
        } => cmd_enumerate(
            EnumerationConfig {
                max_vertices: *max_vertices,
                max_label: *max_label,
                connected_only: *connected_only,
            },
            cli.format,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
