//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 on success, 2 for anything wrong with the input (files,
//! flags, geometry the engine refuses), 3 when the mathematics itself fails
//! an internal check (cone violation, monodromy re-verification, solver
//! disagreement).

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use tropex_core::io::{parse_diagram, serialize_diagram, IoError};
use tropex_core::mc::{mc_residual, obstruction, solve_fixed_point, solve_tree_sum, PolyFormDgLa};
use tropex_core::scattering::{Loop, ScatterError};
use tropex_core::series::{LatticeVector, Series};
use tropex_core::trees::{enumerate_trees, label_edges};
use tropex_core::QDiagram;

use crate::{mcfile, svg};

#[derive(Parser)]
#[command(
    name = "tropex",
    version,
    about = "Wall-crossing diagrams, path-ordered products, and Maurer-Cartan solving over exact rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a two-wall seed diagram to a consistent one, order by order.
    Complete {
        /// Input diagram file (JSON).
        input: PathBuf,
        /// Truncation order; defaults to the order stored in the file.
        #[arg(long)]
        order: Option<u32>,
        /// Write the completed diagram here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the log of the path-ordered product around a full loop.
    Product {
        /// Input diagram file (JSON).
        input: PathBuf,
        /// Primitive ray "a,b" the loop starts and ends at.
        #[arg(long = "start-ray")]
        start_ray: String,
        /// Traverse the loop clockwise instead of anticlockwise.
        #[arg(long)]
        clockwise: bool,
        /// Truncation order; defaults to the order stored in the file.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Apply the loop automorphism to a lattice monomial and print the image.
    Act {
        /// Input diagram file (JSON).
        input: PathBuf,
        /// Primitive ray "a,b" the loop starts and ends at.
        #[arg(long = "start-ray")]
        start_ray: String,
        /// Exponent "a,b" of the lattice monomial to act on.
        #[arg(long)]
        monomial: String,
        /// Traverse the loop clockwise instead of anticlockwise.
        #[arg(long)]
        clockwise: bool,
        /// Truncation order; defaults to the order stored in the file.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Enumerate planar binary trees with a given number of leaves.
    Trees {
        /// Number of leaves (at least 1).
        #[arg(long)]
        leaves: usize,
        /// Also print the forced edge labeling of each tree.
        #[arg(long)]
        labels: bool,
    },
    /// Solve the Maurer-Cartan equation for a problem file; prints the
    /// solution, its residual, and the obstruction.
    McSolve {
        /// Problem file (JSON) specifying the degree-1 input.
        input: PathBuf,
        /// Truncation order; defaults to the order stored in the file.
        #[arg(long)]
        order: Option<u32>,
        /// Write the solution file here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render a diagram as a deterministic SVG figure.
    Render {
        /// Input diagram file (JSON).
        input: PathBuf,
        /// SVG output path.
        #[arg(long)]
        svg: PathBuf,
        /// Truncation order; defaults to the order stored in the file.
        #[arg(long)]
        order: Option<u32>,
    },
}

pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn math_error(message: impl Display) -> Failure {
    Failure { code: 3, message: message.to_string() }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        input_error(e)
    }
}

/// Completion failures that mean "the mathematics refused" get exit 3; the
/// rest mean the input was never acceptable.
fn scatter_failure(e: ScatterError) -> Failure {
    match e {
        ScatterError::ConeViolation(..) | ScatterError::MonodromyFailure { .. } => math_error(e),
        other => input_error(other),
    }
}

pub fn run() -> i32 {
    match dispatch(Cli::parse()) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Complete { input, order, output } => {
            let diagram = load_diagram(&input, order)?;
            let completed = diagram.complete().map_err(scatter_failure)?;
            emit(&serialize_diagram(&completed), output.as_deref())
        }
        Command::Product { input, start_ray, clockwise, order } => {
            let diagram = load_diagram(&input, order)?;
            let lp = parse_loop(&start_ray, clockwise)?;
            let log = diagram.path_ordered_product(&lp).map_err(scatter_failure)?;
            println!("{log}");
            Ok(())
        }
        Command::Act { input, start_ray, monomial, clockwise, order } => {
            let diagram = load_diagram(&input, order)?;
            let lp = parse_loop(&start_ray, clockwise)?;
            let m = lattice_pair(&monomial, "--monomial")?;
            let log = diagram.path_ordered_product(&lp).map_err(scatter_failure)?;
            let image = log.exp_apply(&Series::monomial(diagram.params, diagram.max_order, m));
            println!("{image}");
            Ok(())
        }
        Command::Trees { leaves, labels } => {
            if leaves == 0 {
                return Err(input_error("--leaves must be at least 1"));
            }
            let all = enumerate_trees(leaves);
            println!("{} trees with {} leaves", all.len(), leaves);
            for (i, tree) in all.iter().enumerate() {
                if labels {
                    println!("{}: {}  |  {}", i + 1, tree, label_edges(tree));
                } else {
                    println!("{}: {}", i + 1, tree);
                }
            }
            Ok(())
        }
        Command::McSolve { input, order, output } => {
            let text = read_file(&input)?;
            let problem = mcfile::parse_problem(&text).map_err(input_error)?;
            let order = effective_order(order, problem.max_order, "problem file")?;
            let alg = PolyFormDgLa::new();
            let pi = problem.pi;
            let fixed = solve_fixed_point(&alg, &pi, order).map_err(input_error)?;
            let tree = solve_tree_sum(&alg, &pi, order).map_err(input_error)?;
            if fixed != tree {
                return Err(math_error("fixed-point and tree-sum solvers disagree"));
            }
            let residual = mc_residual(&alg, &fixed);
            let obstr = obstruction(&alg, &fixed);
            emit(&mcfile::serialize_solution(order, &fixed, &residual, &obstr), output.as_deref())
        }
        Command::Render { input, svg: svg_path, order } => {
            let diagram = load_diagram(&input, order)?;
            let document = svg::render(&diagram);
            fs::write(&svg_path, document)
                .map_err(|e| input_error(format!("cannot write {}: {e}", svg_path.display())))
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load_diagram(path: &Path, order: Option<u32>) -> Result<QDiagram, Failure> {
    let diagram = parse_diagram(&read_file(path)?)?;
    let order = effective_order(order, diagram.max_order, "diagram file")?;
    Ok(diagram.truncated(order))
}

/// Outputs are exact mod m^(order+1); an order above the file's stored
/// truncation would claim coefficients the file never pinned.
fn effective_order(flag: Option<u32>, stored: u32, what: &str) -> Result<u32, Failure> {
    let order = flag.unwrap_or(stored);
    if order < 1 {
        return Err(input_error("--order must be at least 1"));
    }
    if order > stored {
        return Err(input_error(format!(
            "--order {order} exceeds the {what}'s truncation order {stored}"
        )));
    }
    Ok(order)
}

fn lattice_pair(text: &str, what: &str) -> Result<LatticeVector, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(input_error(format!("{what} expects \"a,b\", got \"{text}\"")));
    }
    let mut coords = Vec::with_capacity(2);
    for part in parts {
        coords.push(
            part.trim()
                .parse::<i64>()
                .map_err(|_| input_error(format!("{what}: bad integer \"{part}\"")))?,
        );
    }
    Ok(LatticeVector(coords))
}

fn parse_loop(start_ray: &str, clockwise: bool) -> Result<Loop, Failure> {
    let ray = lattice_pair(start_ray, "--start-ray")?;
    if ray.is_zero() {
        return Err(input_error("--start-ray must be nonzero"));
    }
    Ok(if clockwise { Loop::clockwise(ray) } else { Loop::anticlockwise(ray) })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
