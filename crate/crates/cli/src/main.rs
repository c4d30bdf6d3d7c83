//! `reeb`: compute, realize and verify Reeb graphs of PL fields.
//!
//! Exit codes: 0 on success, 1 when a mesh, decoration or realization fails
//! validation or verification, 2 when input cannot be read or parsed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use reeb_core::mesh::io::{parse_field, parse_off, write_field, write_off};
use reeb_core::mesh::{connected_components, signature, split_components, validate_surface};
use reeb_core::realize::{
    check_realization, realize, realize_on_surface, validate_decoration, Correspondence, DecoratedGraph,
    RealizationOutput, RealizeOptions,
};
use reeb_core::reeb::{graph_isomorphic, IsoMode};
use reeb_core::{compute_reeb_graph, sampled_reeb_oracle, MeshError, ParseError, RealizeError, SimplicialSurface};
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "reeb", version, about = "Reeb graphs of piecewise-linear fields on triangulated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a mesh and print its surface type.
    Info {
        #[arg(long)]
        mesh: PathBuf,
    },
    /// Compute the Reeb graph of a field.
    Compute {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Cross-check against the sampling oracle with K samples per gap.
        #[arg(long, value_name = "K")]
        oracle: Option<usize>,
    },
    /// Build a mesh and field realizing a decorated graph.
    Realize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out_mesh: PathBuf,
        #[arg(long)]
        out_field: PathBuf,
        /// Where to write the correspondence JSON (stdout if omitted).
        #[arg(long)]
        out_correspondence: Option<PathBuf>,
        #[command(flatten)]
        build: BuildArgs,
        /// Realize the bare graph on the closed orientable surface of this genus.
        #[arg(long)]
        genus: Option<i64>,
        /// Accepted for symmetry with --genus; targets are always orientable.
        #[arg(long, requires = "genus")]
        orientable: bool,
    },
    /// Realize a decorated graph (or load a realization) and verify it.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
        /// Verify this mesh instead of building one.
        #[arg(long, requires_all = ["field", "correspondence"])]
        mesh: Option<PathBuf>,
        #[arg(long, requires = "mesh")]
        field: Option<PathBuf>,
        #[arg(long, requires = "mesh")]
        correspondence: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Rings per tube.
    #[arg(long, default_value_t = 2)]
    rings: usize,
    /// Vertices per boundary polygon.
    #[arg(long, default_value_t = 6)]
    p: usize,
}

impl BuildArgs {
    fn options(&self) -> RealizeOptions {
        RealizeOptions { p: self.p, rings: self.rings }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Read { .. } | Self::Write { .. } | Self::Parse { .. } => 2,
            Self::Mesh(e) | Self::Realize(RealizeError::Mesh(e)) => mesh_exit_code(e),
            Self::Realize(RealizeError::InvalidParameter(_) | RealizeError::InvalidInterval { .. }) => 2,
            _ => 1,
        }
    }
}

fn mesh_exit_code(e: &MeshError) -> u8 {
    match e {
        MeshError::FieldLength { .. } | MeshError::InvalidSampleCount => 2,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn parsed<T>(path: &Path, result: Result<T, ParseError>) -> Result<T, CliError> {
    result.map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_mesh(path: &Path) -> Result<SimplicialSurface, CliError> {
    let soup = parsed(path, parse_off(&read(path)?))?;
    Ok(SimplicialSurface::new(soup)?)
}

fn load_graph(path: &Path) -> Result<DecoratedGraph, CliError> {
    parsed(path, DecoratedGraph::from_json(&read(path)?))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

fn info(mesh: &Path) -> Result<(), CliError> {
    let soup = parsed(mesh, parse_off(&read(mesh)?))?;
    let report = validate_surface(&soup);
    if !report.is_ok() {
        print!("{}", pretty(&json!({ "valid": false, "violations": report.violations })));
        return Err(CliError::Failed(format!("{}: not a valid surface", mesh.display())));
    }
    let surface = SimplicialSurface::new(soup)?;
    if connected_components(&surface).len() == 1 {
        print!("{}", pretty(&serde_json::to_value(signature(&surface)?).unwrap()));
    } else {
        let parts = split_components(&surface)
            .iter()
            .map(|(part, _)| signature(part))
            .collect::<Result<Vec<_>, _>>()?;
        print!("{}", pretty(&json!({ "components": parts })));
    }
    Ok(())
}

fn compute(mesh: &Path, field: &Path, out: &Path, dot: Option<&Path>, oracle: Option<usize>) -> Result<(), CliError> {
    let surface = load_mesh(mesh)?;
    let values = parsed(field, parse_field(&read(field)?, Some(surface.vertex_count())))?;
    let graph = compute_reeb_graph(&surface, &values)?;
    write(out, &graph.to_json())?;
    if let Some(dot) = dot {
        write(dot, &graph.to_dot())?;
    }
    let mut summary = json!({ "nodes": graph.node_count(), "edges": graph.edge_count(), "betti1": graph.betti1() });
    if let Some(k) = oracle {
        let check = sampled_reeb_oracle(&surface, &values, k)?;
        let agrees = graph_isomorphic(&graph.skeleton(), &check.skeleton(), IsoMode::LevelPreserving).is_some();
        summary["oracle"] = json!({ "samples": k, "agrees": agrees });
        print!("{}", pretty(&summary));
        if !agrees {
            return Err(CliError::Failed(format!("oracle with {k} samples disagrees with the sweep")));
        }
        return Ok(());
    }
    print!("{}", pretty(&summary));
    Ok(())
}

fn validated(path: &Path) -> Result<DecoratedGraph, CliError> {
    let dg = load_graph(path)?;
    if let Err(violations) = validate_decoration(&dg) {
        print!("{}", pretty(&json!({ "valid": false, "violations": violations })));
        return Err(RealizeError::InvalidDecoration(violations).into());
    }
    Ok(dg)
}

fn realize_cmd(
    graph: &Path,
    out_mesh: &Path,
    out_field: &Path,
    out_correspondence: Option<&Path>,
    options: RealizeOptions,
    genus: Option<i64>,
) -> Result<(), CliError> {
    let out = match genus {
        Some(g) => realize_on_surface(&load_graph(graph)?.graph(), g, &options)?,
        None => realize(&validated(graph)?, &options)?,
    };
    write(out_mesh, &write_off(&out.mesh.to_soup()))?;
    write(out_field, &write_field(&out.field))?;
    let correspondence = out.correspondence.to_json();
    match out_correspondence {
        Some(path) => write(path, &correspondence)?,
        None => print!("{correspondence}"),
    }
    Ok(())
}

fn verify(
    graph: &Path,
    options: RealizeOptions,
    existing: Option<(&Path, &Path, &Path)>,
) -> Result<(), CliError> {
    let dg = validated(graph)?;
    let out = match existing {
        None => realize(&dg, &options)?,
        Some((mesh, field, correspondence)) => {
            let surface = load_mesh(mesh)?;
            let values = parsed(field, parse_field(&read(field)?, Some(surface.vertex_count())))?;
            let correspondence = parsed(correspondence, Correspondence::from_json(&read(correspondence)?))?;
            RealizationOutput { mesh: surface, field: values, correspondence }
        }
    };
    let report = check_realization(&dg, &out)?;
    print!("{}", report.to_json());
    match report.first_failure() {
        None => Ok(()),
        Some(clause) => Err(CliError::Failed(format!("verification failed at check {clause}"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info { mesh } => info(&mesh),
        Command::Compute { mesh, field, out, dot, oracle } => compute(&mesh, &field, &out, dot.as_deref(), oracle),
        Command::Realize { graph, out_mesh, out_field, out_correspondence, build, genus, orientable: _ } => {
            realize_cmd(&graph, &out_mesh, &out_field, out_correspondence.as_deref(), build.options(), genus)
        }
        Command::Verify { graph, build, mesh, field, correspondence } => {
            let existing = match (&mesh, &field, &correspondence) {
                (Some(m), Some(f), Some(c)) => Some((m.as_path(), f.as_path(), c.as_path())),
                _ => None,
            };
            verify(&graph, build.options(), existing)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("reeb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
