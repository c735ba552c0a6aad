mod format;

use std::fmt::Write as _;
use std::io::{self, Read, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphlaw::hyperfinite::{max_component, path_cut, verify_cut};
use graphlaw::law::{ball_pushforward, integrate, law, oracle_pushforward, tv_distance};
use graphlaw::metric::{oracle_bi_infinite_path, oracle_finite, rho, rho_value, Oracle, RhoValue};
use graphlaw::pathspace::{oracle_to_point, rho_tilde, strip_mass, to_point, PathPoint};
use graphlaw::scalar::{decimal_string, fraction_string, parse_fraction};
use graphlaw::trees::{s_limit_mass, s_limit_pushforward, spine_vertex, tree_ball};
use graphlaw::unimodular::{is_unimodular, UnimodularityVerdict};
use graphlaw::{Canonical, ExtNat, Graph, Rational, RootedGraph, Scalar};
use num_traits::Zero;

const DECIMALS: usize = 12;

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "graphlaw", version, about = "Laws of finite graphs and distances between rooted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the law of a graph file.
    Law {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Distance between two rooted graphs, given as files and/or oracle names.
    Rho {
        files: Vec<String>,
        #[arg(long = "oracle")]
        oracles: Vec<String>,
        #[arg(long, default_value_t = 10)]
        max_radius: usize,
    },
    /// Check the mass transport principle for a measure file.
    Unimodular { file: String },
    /// Convergence diagnostics for a graph family, as CSV.
    Converge {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        stat: Stat,
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long)]
        upto: usize,
    },
    /// Cut a path into short pieces.
    Hyperfinite {
        #[arg(long = "path-n")]
        path_n: usize,
        #[arg(long)]
        epsilon: String,
    },
    /// Coordinates of a rooted path.
    Point {
        file: Option<String>,
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Distance between two path points `X1 Y1 X2 Y2` (`inf` allowed).
    RhoTilde { x1: ExtNat, y1: ExtNat, x2: ExtNat, y2: ExtNat },
    /// Strip masses of path laws, as CSV.
    Strip {
        #[arg(long)]
        upto: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Paths,
    Trees,
    Cycles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stat {
    Deg,
    BallTv,
    Masses,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_graph(path: &str) -> Result<format::GraphFile, String> {
    format::parse_graph(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn read_rooted(path: &str) -> Result<RootedGraph, String> {
    read_graph(path)?.rooted().map_err(|e| format!("{path}: {e}"))
}

fn parse_oracle(name: &str) -> Result<Oracle, String> {
    name.parse().map_err(|e: graphlaw::Error| e.to_string())
}

fn show_rho(q: &Rational) -> String {
    if q.is_zero() {
        "0".to_string()
    } else {
        fraction_string(q)
    }
}

fn deg(g: &RootedGraph) -> Rational {
    Rational::from_usize_lossless(g.degree_at_root())
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode, String> {
    let err = |e: graphlaw::Error| e.to_string();
    match cli.command {
        Command::Law { file, format } => {
            let g = read_graph(&file)?.graph;
            let mu = law::<Rational>(&g).map_err(err)?;
            match format {
                Format::Text => out.push_str(&format::write_measure(&mu)),
                Format::Json => emit!(out, "{}", format::measure_json(&mu)),
            }
        }
        Command::Rho { files, oracles, max_radius } => {
            let mut operands: Vec<Oracle> = Vec::new();
            for f in &files {
                operands.push(oracle_finite(read_rooted(f)?));
            }
            for name in &oracles {
                operands.push(parse_oracle(name)?);
            }
            let [a, b] = <[Oracle; 2]>::try_from(operands)
                .map_err(|v| format!("rho needs exactly two operands, got {}", v.len()))?;
            match rho_value::<Rational>(rho(&a, &b, max_radius)) {
                RhoValue::Exact(q) => emit!(out, "{}", show_rho(&q)),
                RhoValue::AtMost(q) => emit!(out, "<={}", fraction_string(&q)),
            }
        }
        Command::Unimodular { file } => {
            let parsed = format::parse_measure(&read_input(&file)?).map_err(|e| format!("{file}: {e}"))?;
            for key in &parsed.merged {
                eprintln!("warning: merged repeated atoms of class {key}");
            }
            match is_unimodular(&parsed.measure) {
                UnimodularityVerdict::Unimodular => emit!(out, "unimodular"),
                UnimodularityVerdict::Violation { class, lhs, rhs } => {
                    emit!(out, "violation");
                    emit!(out, "class {class}");
                    emit!(out, "lhs {}", fraction_string(&lhs));
                    emit!(out, "rhs {}", fraction_string(&rhs));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Converge { family, stat, radius, upto } => converge(family, stat, radius, upto, out)?,
        Command::Hyperfinite { path_n, epsilon } => {
            let eps = parse_fraction(&epsilon).ok_or_else(|| format!("bad epsilon `{epsilon}`"))?;
            let w = path_cut(path_n, &eps).map_err(err)?;
            let g = Graph::path(path_n + 1);
            emit!(out, "k {}", w.k);
            emit!(out, "removed {}", w.removed_edges.len());
            emit!(out, "max_component {}", max_component(&g, &w));
            emit!(out, "valid {}", verify_cut(&g, &w).map_err(err)?);
        }
        Command::Point { file, oracle } => {
            let p = match (file, oracle) {
                (Some(f), None) => to_point(&read_rooted(&f)?).map_err(err)?,
                (None, Some(name)) => oracle_to_point(&parse_oracle(&name)?).map_err(err)?,
                _ => return Err("give either a graph file or --oracle".into()),
            };
            emit!(out, "{p}");
        }
        Command::RhoTilde { x1, y1, x2, y2 } => {
            let p = PathPoint::new(x1, y1).map_err(err)?;
            let q = PathPoint::new(x2, y2).map_err(err)?;
            emit!(out, "{}", show_rho(&rho_tilde::<Rational>(p, q)));
        }
        Command::Strip { upto } => {
            emit!(out, "n,m,mass,decimal");
            for n in 1..=upto {
                for m in 1..=(n / 2).max(1) {
                    let q = strip_mass::<Rational>(n, m).map_err(err)?;
                    emit!(out, "{n},{m},{},{}", fraction_string(&q), decimal_string(&q, DECIMALS));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn member(family: FamilyArg, index: usize) -> Graph {
    match family {
        FamilyArg::Paths => Graph::path(2 * index),
        FamilyArg::Trees => tree_ball(index as u32).into_graph(),
        FamilyArg::Cycles => Graph::cycle(index).expect("index ≥ 3"),
    }
}

/// Paths are `P_{2k}` for `k ≥ 1`, trees `T_k` for `k ≥ 1`, cycles `C_n` for `n ≥ 3`.
fn converge(family: FamilyArg, stat: Stat, radius: usize, upto: usize, out: &mut String) -> Result<(), String> {
    let err = |e: graphlaw::Error| e.to_string();
    if family == FamilyArg::Trees && upto > 20 {
        return Err("trees are limited to --upto 20".into());
    }
    if stat == Stat::Masses && family != FamilyArg::Trees {
        return Err("the masses statistic is only defined for trees".into());
    }
    let first = if family == FamilyArg::Cycles { 3 } else { 1 };
    let limit = match (stat, family) {
        (Stat::BallTv, FamilyArg::Trees) => Some(s_limit_pushforward::<Rational>(radius).map_err(err)?),
        (Stat::BallTv, _) => Some(oracle_pushforward::<Rational, _>(&oracle_bi_infinite_path(), radius)),
        _ => None,
    };
    if stat == Stat::Masses {
        emit!(out, "index,vertices,class,mass,limit,gap,decimal_gap");
    } else {
        emit!(out, "index,vertices,value,decimal");
    }
    for index in first..=upto {
        let g = member(family, index);
        let mu = law::<Rational>(&g).map_err(err)?;
        match stat {
            Stat::Deg | Stat::BallTv => {
                let value = match &limit {
                    None => integrate(&mu, deg),
                    Some(lim) => tv_distance(&ball_pushforward(&mu, radius), lim).map_err(err)?,
                };
                emit!(out, 
                    "{index},{},{},{}",
                    g.vertex_count(),
                    fraction_string(&value),
                    decimal_string(&value, DECIMALS)
                );
            }
            Stat::Masses => {
                let k = index as u32;
                for i in 1..=k {
                    let u = spine_vertex(k, i).map_err(err)?;
                    let class = RootedGraph::new(g.clone(), u).map_err(err)?;
                    let mass = mu.mass_of(&class.canonical_key()).cloned().unwrap_or_default();
                    let lim = s_limit_mass::<Rational>(i).map_err(err)?;
                    let gap = lim.clone() - mass.clone();
                    emit!(out, 
                        "{index},{},{i},{},{},{},{}",
                        g.vertex_count(),
                        fraction_string(&mass),
                        fraction_string(&lim),
                        fraction_string(&gap),
                        decimal_string(&gap, DECIMALS)
                    );
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // a closed pipe downstream is not an error
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
