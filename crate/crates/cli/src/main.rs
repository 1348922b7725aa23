//! `latpoly` — lattice polynomial interpolation from problem files.
//!
//! Subcommands wrap the library one-to-one: `solve` decides a cuboid problem
//! and describes its solution set, `enumerate` lists every interpolant,
//! `oracle` recomputes them by brute force, `goodstein` handles the unit
//! cuboid, `rg` checks the chain separation criterion, `eval` applies a
//! coefficient table to the domain points, and `from-utility` converts a
//! utility boundary file into a problem file.
//!
//! Exit codes: 0 success / positive verdict, 1 negative verdict (infeasible,
//! no interpolants, criterion violated), 2 input error, 3 search cap
//! exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use latpoly::render::{dnf_inline, dnf_lines, subset_label};
use latpoly::textio::{
    parse_coeffs, parse_lattice_file, parse_problem, parse_utility, render_problem,
    utility_to_problem, ProblemFile, ValueTable,
};
use latpoly::{
    brute_interpolate, check_rg, goodstein, Carrier, CuboidProblem, DistributiveLattice,
    Infeasibility, LatticeElement, OracleConfig, PolynomialDnf, SolutionSet, StarSide,
};

#[derive(Parser)]
#[command(
    name = "latpoly",
    about = "Interpolate partial functions on cuboid vertices by lattice polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem file (utility boundary file for from-utility)
    #[arg(long, global = true, value_name = "FILE")]
    problem: Option<PathBuf>,

    /// Lattice file supplying the LATTICE section externally
    #[arg(long, global = true, value_name = "FILE")]
    lattice: Option<PathBuf>,

    /// Search budget: interval combinations (enumerate/solve) or candidate
    /// tables (oracle)
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: u64,

    /// Seed for sampled suites (reserved: the shipped commands are
    /// exhaustive and deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// One JSON record per line
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility and describe the whole solution set
    Solve,
    /// List every interpolating polynomial within the cap
    Enumerate,
    /// Recompute the interpolants by exhaustive search
    Oracle,
    /// Interpolate a full unit-cuboid table (bounds 0 and 1 everywhere)
    Goodstein,
    /// Check the chain separation criterion on the domain points
    Rg,
    /// Evaluate a coefficient table at the domain points
    Eval {
        /// Coefficient table file ("subset -> label" lines)
        #[arg(long, value_name = "FILE")]
        coeffs: PathBuf,
    },
    /// Convert a utility boundary file into a problem file
    FromUtility,
}

enum CliError {
    /// Unreadable or invalid input: exit 2.
    Input(String),
    /// A search refused to start or finish under the cap: exit 3.
    Cap(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) => m,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (`enumerate | head`),
    // as line-oriented tools conventionally do, instead of panicking on the
    // first write after the pipe closes.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Solve => cmd_solve(cli),
        Command::Enumerate => cmd_enumerate(cli),
        Command::Oracle => cmd_oracle(cli),
        Command::Goodstein => cmd_goodstein(cli),
        Command::Rg => cmd_rg(cli),
        Command::Eval { coeffs } => cmd_eval(cli, coeffs),
        Command::FromUtility => cmd_from_utility(cli),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn external_lattice(cli: &Cli) -> Result<Option<DistributiveLattice>, CliError> {
    match &cli.lattice {
        Some(path) => {
            let lat = parse_lattice_file(&read(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(Some(lat))
        }
        None => Ok(None),
    }
}

fn load_problem(cli: &Cli) -> Result<ProblemFile, CliError> {
    let external = external_lattice(cli)?;
    let path = cli
        .problem
        .as_ref()
        .ok_or_else(|| CliError::Input("--problem FILE is required for this command".to_string()))?;
    parse_problem(&read(path)?, external)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// BOUNDS + VALUES, assembled into a solver problem.
fn cuboid<'a>(file: &'a ProblemFile) -> Result<CuboidProblem<'a>, CliError> {
    let (bounds, values) = match (&file.bounds, &file.values) {
        (Some(b), Some(v)) => (b.clone(), v.table.clone()),
        _ => {
            return Err(CliError::Input(
                "this command needs BOUNDS and VALUES sections in the problem file".to_string(),
            ))
        }
    };
    CuboidProblem::new(&file.lattice, bounds, values).map_err(|e| CliError::Input(e.to_string()))
}

/// The domain the point commands operate on: POINTS when present, else the
/// cuboid vertices.
fn domain(file: &ProblemFile) -> Result<(usize, Vec<Vec<LatticeElement>>, Vec<LatticeElement>), CliError> {
    if let Some(p) = &file.points {
        return Ok((p.points[0].len(), p.points.clone(), p.values.clone()));
    }
    let prob = cuboid(file)?;
    let n = prob.arity();
    let points = (0..1u32 << n).map(|mask| prob.vertex(mask)).collect();
    Ok((n, points, prob.values().to_vec()))
}

fn point_label(lat: &DistributiveLattice, pt: &[LatticeElement]) -> String {
    let labels: Vec<String> = pt.iter().map(|&x| lat.label(x)).collect();
    format!("({})", labels.join(","))
}

fn coeff_label(lat: &DistributiveLattice, p: &PolynomialDnf, mask: u32) -> String {
    match p.carrier() {
        Carrier::Lattice => lat.label(p.lattice_coeff(mask)),
        Carrier::Boolean => latpoly::render::bool_label(lat, p.coeff(mask)),
    }
}

fn coeff_json(lat: &DistributiveLattice, p: &PolynomialDnf) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for mask in 0..1u32 << p.arity() {
        map.insert(subset_label(mask), json!(coeff_label(lat, p, mask)));
    }
    serde_json::Value::Object(map)
}

fn infeasibility_text(
    lat: &DistributiveLattice,
    values: &[LatticeElement],
    inf: &Infeasibility,
) -> String {
    match inf {
        Infeasibility::NotMonotone(w) => format!(
            "not monotone: f({}) = {} !<= f({}) = {}",
            subset_label(w.lo),
            lat.label(values[w.lo as usize]),
            subset_label(w.hi),
            lat.label(values[w.hi as usize]),
        ),
        Infeasibility::StarViolated(w) => format!(
            "condition (*) fails at I = {}, k = {} ({}): {} !<= {}",
            subset_label(w.subset),
            w.coord + 1,
            match w.side {
                StarSide::Lower => "lower",
                StarSide::Upper => "upper",
            },
            lat.label(w.lhs),
            lat.label(w.rhs),
        ),
    }
}

fn infeasibility_json(
    lat: &DistributiveLattice,
    values: &[LatticeElement],
    inf: &Infeasibility,
) -> serde_json::Value {
    match inf {
        Infeasibility::NotMonotone(w) => json!({
            "kind": "not-monotone",
            "lo": subset_label(w.lo),
            "hi": subset_label(w.hi),
            "f_lo": lat.label(values[w.lo as usize]),
            "f_hi": lat.label(values[w.hi as usize]),
        }),
        Infeasibility::StarViolated(w) => json!({
            "kind": "star",
            "subset": subset_label(w.subset),
            "coord": w.coord + 1,
            "side": match w.side { StarSide::Lower => "lower", StarSide::Upper => "upper" },
            "lhs": lat.label(w.lhs),
            "rhs": lat.label(w.rhs),
        }),
    }
}

fn cmd_solve(cli: &Cli) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    let prob = cuboid(&file)?;
    let sol: SolutionSet = prob.solve();

    if !sol.feasible {
        let reason = sol.reason.as_ref().expect("infeasible implies a reason");
        match cli.format {
            Format::Text => println!("infeasible: {}", infeasibility_text(lat, prob.values(), reason)),
            Format::Machine => println!(
                "{}",
                json!({
                    "command": "solve",
                    "feasible": false,
                    "reason": infeasibility_json(lat, prob.values(), reason),
                })
            ),
        }
        return Ok(1);
    }

    let canonical = sol.canonical.as_ref().expect("feasible implies a canonical solution");
    let count = prob.enumerate_solutions(cli.cap);
    match cli.format {
        Format::Text => {
            println!("feasible");
            println!("intervals:");
            for (mask, &(lo, hi)) in sol.lattice_bounds.iter().enumerate() {
                println!(
                    "  {} in [{}, {}]",
                    subset_label(mask as u32),
                    lat.label(lo),
                    lat.label(hi)
                );
            }
            println!("p0:");
            for line in dnf_lines(lat, canonical) {
                println!("  {line}");
            }
            match &count {
                Ok(sols) => println!("solutions: {}", sols.len()),
                Err(e) => println!(
                    "solutions: not counted ({} interval combinations exceed the cap {})",
                    e.combinations, e.cap
                ),
            }
        }
        Format::Machine => {
            let intervals: Vec<serde_json::Value> = sol
                .lattice_bounds
                .iter()
                .enumerate()
                .map(|(mask, &(lo, hi))| {
                    json!({
                        "subset": subset_label(mask as u32),
                        "lo": lat.label(lo),
                        "hi": lat.label(hi),
                    })
                })
                .collect();
            let (solutions, refused) = match &count {
                Ok(sols) => (json!(sols.len()), json!(null)),
                Err(e) => (
                    json!(null),
                    json!({"combinations": e.combinations.to_string(), "cap": e.cap}),
                ),
            };
            println!(
                "{}",
                json!({
                    "command": "solve",
                    "feasible": true,
                    "intervals": intervals,
                    "canonical": coeff_json(lat, canonical),
                    "solutions": solutions,
                    "refused": refused,
                })
            );
        }
    }
    Ok(0)
}

fn cmd_enumerate(cli: &Cli) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    let prob = cuboid(&file)?;
    let sols = prob.enumerate_solutions(cli.cap).map_err(|e| {
        CliError::Cap(format!("{} interval combinations exceed the cap {}", e.combinations, e.cap))
    })?;
    match cli.format {
        Format::Text => {
            println!("{} solutions", sols.len());
            for s in &sols {
                println!("{}", dnf_inline(lat, s));
            }
        }
        Format::Machine => {
            println!("{}", json!({"command": "enumerate", "count": sols.len()}));
            for s in &sols {
                println!("{}", json!({"coeffs": coeff_json(lat, s)}));
            }
        }
    }
    Ok(u8::from(sols.is_empty()))
}

fn cmd_oracle(cli: &Cli) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    let (arity, points, values) = domain(&file)?;
    let cfg = OracleConfig { max_function_count: cli.cap, seed: cli.seed };
    let sols = brute_interpolate(lat, arity, &points, &values, &cfg)
        .map_err(|e| CliError::Cap(format!("candidate tables exceed the cap {}", e.cap)))?;
    match cli.format {
        Format::Text => {
            println!("{} interpolants", sols.len());
            for s in &sols {
                println!("{}", dnf_inline(lat, s));
            }
        }
        Format::Machine => {
            println!("{}", json!({"command": "oracle", "count": sols.len()}));
            for s in &sols {
                println!("{}", json!({"coeffs": coeff_json(lat, s)}));
            }
        }
    }
    Ok(u8::from(sols.is_empty()))
}

fn cmd_goodstein(cli: &Cli) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    if file.bounds.is_some() || file.points.is_some() {
        return Err(CliError::Input(
            "goodstein works on the unit cuboid: the file may only have LATTICE and VALUES".to_string(),
        ));
    }
    let ValueTable { arity, table } = file
        .values
        .as_ref()
        .ok_or_else(|| CliError::Input("the problem file needs a VALUES section".to_string()))?
        .clone();
    if lat.element_count() < 2 {
        return Err(CliError::Input("the lattice must have at least two elements".to_string()));
    }
    match goodstein(lat, arity, table.clone()) {
        Ok(p) => {
            match cli.format {
                Format::Text => {
                    println!("unique interpolant:");
                    for line in dnf_lines(lat, &p) {
                        println!("{line}");
                    }
                }
                Format::Machine => println!(
                    "{}",
                    json!({"command": "goodstein", "unique": true, "coeffs": coeff_json(lat, &p)})
                ),
            }
            Ok(0)
        }
        Err(w) => {
            let text = format!(
                "not monotone: f({}) = {} !<= f({}) = {}",
                subset_label(w.lo),
                lat.label(table[w.lo as usize]),
                subset_label(w.hi),
                lat.label(table[w.hi as usize]),
            );
            match cli.format {
                Format::Text => println!("{text}"),
                Format::Machine => println!(
                    "{}",
                    json!({
                        "command": "goodstein",
                        "unique": false,
                        "reason": {
                            "kind": "not-monotone",
                            "lo": subset_label(w.lo),
                            "hi": subset_label(w.hi),
                            "f_lo": lat.label(table[w.lo as usize]),
                            "f_hi": lat.label(table[w.hi as usize]),
                        },
                    })
                ),
            }
            Ok(1)
        }
    }
}

fn cmd_rg(cli: &Cli) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    let (_, points, values) = domain(&file)?;
    match check_rg(lat, &points, &values) {
        None => {
            match cli.format {
                Format::Text => println!("RG condition: holds"),
                Format::Machine => println!("{}", json!({"command": "rg", "holds": true})),
            }
            Ok(0)
        }
        Some(w) => {
            match cli.format {
                Format::Text => println!(
                    "RG condition: violated at x = {}, y = {}: f(x) = {} < f(y) = {} but no coordinate i has x_i <= f(x) and f(y) <= y_i",
                    point_label(lat, &points[w.x]),
                    point_label(lat, &points[w.y]),
                    lat.label(values[w.x]),
                    lat.label(values[w.y]),
                ),
                Format::Machine => {
                    let xs: Vec<String> = points[w.x].iter().map(|&e| lat.label(e)).collect();
                    let ys: Vec<String> = points[w.y].iter().map(|&e| lat.label(e)).collect();
                    println!(
                        "{}",
                        json!({
                            "command": "rg",
                            "holds": false,
                            "x": xs,
                            "y": ys,
                            "fx": lat.label(values[w.x]),
                            "fy": lat.label(values[w.y]),
                        })
                    );
                }
            }
            Ok(1)
        }
    }
}

fn cmd_eval(cli: &Cli, coeffs: &PathBuf) -> Result<u8, CliError> {
    let file = load_problem(cli)?;
    let lat = &file.lattice;
    let p = parse_coeffs(lat, &read(coeffs)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", coeffs.display())))?;
    let (arity, points, _) = domain(&file)?;
    if p.arity() != arity {
        return Err(CliError::Input(format!(
            "the coefficient table has arity {} but the domain points have arity {arity}",
            p.arity()
        )));
    }
    if cli.format == Format::Machine {
        println!("{}", json!({"command": "eval", "points": points.len()}));
    }
    for pt in &points {
        let v = p.evaluate_lattice(lat, pt);
        match cli.format {
            Format::Text => println!("{} -> {}", point_label(lat, pt), lat.label(v)),
            Format::Machine => {
                let labels: Vec<String> = pt.iter().map(|&e| lat.label(e)).collect();
                println!("{}", json!({"point": labels, "value": lat.label(v)}));
            }
        }
    }
    Ok(0)
}

fn cmd_from_utility(cli: &Cli) -> Result<u8, CliError> {
    let external = external_lattice(cli)?;
    let path = cli
        .problem
        .as_ref()
        .ok_or_else(|| CliError::Input("--problem FILE is required for this command".to_string()))?;
    let utility = parse_utility(&read(path)?, external)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let problem = utility_to_problem(utility).map_err(CliError::Input)?;
    let text = render_problem(&problem);
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Machine => println!("{}", json!({"command": "from-utility", "problem": text})),
    }
    Ok(0)
}
