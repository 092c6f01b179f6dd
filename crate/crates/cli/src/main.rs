//! Command-line front end: embed guests into hypercubes, verify claimed
//! models, decompose grid permutations, and run the expander/bound toolkit.
//!
//! Exit codes: 0 success, 1 negative verification, 2 parse or validation
//! errors (one-line diagnostic on stderr).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubeminor::io;
use cubeminor::{
    bound_report, check_expansion, compose_equals, default_beta, embed, feasible_params, gen_cubic,
    subcubic_nonminor_certificate, theorem_inequality, verify, weight_tail, Error, Placement,
};

/// Default seed for every randomized subcommand, so repeated runs produce
/// identical bytes.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "cubeminor",
    version,
    about = "Minor embeddings of sparse graphs into hypercubes, with certificates and counting bounds"
)]
struct Cli {
    /// Emit machine-readable JSON instead of plain lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Embed a guest graph as a minor of Q_d and write the model as JSON.
    Embed(EmbedArgs),
    /// Check a claimed minor model against a guest graph.
    Verify(VerifyArgs),
    /// Factor a grid permutation into 2d-1 one-dimensional passes.
    Decompose(DecomposeArgs),
    /// Random cubic graphs and exact vertex-expansion checks.
    #[command(subcommand)]
    Expander(ExpanderCmd),
    /// Coordinate-cut counting bounds and the closing inequality.
    #[command(subcommand)]
    Bound(BoundCmd),
}

#[derive(Args)]
struct EmbedArgs {
    /// Guest graph edge list ('#' comments, one "u v" per line).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Host dimension; defaults to the minimal feasible one.
    #[arg(short = 'd', long = "d")]
    dim: Option<usize>,
    /// Output path for the model JSON.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Guest graph edge list.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Minor model JSON to check.
    #[arg(short = 'm', long = "model")]
    model: PathBuf,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Grid extents, e.g. 2,2,3.
    #[arg(long = "shape")]
    shape: String,
    /// Permutation file: line k holds the image rank of rank k.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Output path for the factor dump.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    /// Re-compose the factors and compare against the input permutation.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand)]
enum ExpanderCmd {
    /// Sample a simple 3-regular graph (configuration model).
    Gen {
        /// Number of vertices (even, at least 4).
        #[arg(long = "n2")]
        n2: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Exact brute-force vertex-expansion check.
    Check {
        /// Cubic graph edge list.
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Expansion ratio as p/q (default 9/50).
        #[arg(long)]
        beta: Option<String>,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Cut statistics and the vertex-count lower bound of a placement.
    Place {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Placement file: one "vertex-id vertex-string" per line.
        #[arg(short = 'p', long = "placement")]
        placement: PathBuf,
        #[arg(short = 'd', long = "d")]
        d: usize,
    },
    /// Brute-force non-minor certificate for tiny subcubic guests.
    Certify {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'd', long = "d")]
        d: usize,
    },
    /// Evaluate the closing inequality at dimension d, exactly.
    Theorem {
        #[arg(short = 'd', long = "d")]
        d: usize,
    },
    /// Count binary strings of length d with at most d/4 ones.
    Tail {
        #[arg(short = 'd', long = "d")]
        d: usize,
    },
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(Error::Io)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Embed(args) => {
            let g = io::parse_guest_graph(&read_file(&args.input)?)?;
            let params = feasible_params(g.num_edges(), args.dim)?;
            let model = embed(&g, args.dim)?;
            fs::write(&args.output, io::model_to_text(&model))?;
            if cli.json {
                println!("{}", io::params_json(&params));
            } else {
                println!(
                    "a={} L={} k_t={} d={}",
                    params.grid_dim(),
                    params.cycle_len(),
                    params.temporal_dim(),
                    params.host_dim()
                );
                println!("model written to {}", args.output.display());
            }
            Ok(0)
        }
        Cmd::Verify(args) => {
            let g = io::parse_guest_graph(&read_file(&args.input)?)?;
            let model = io::parse_model(&read_file(&args.model)?)?;
            let report = verify(&g, &model);
            if cli.json {
                println!("{}", io::verify_report_json(&report));
            } else if report.valid() {
                println!("valid");
            }
            if report.valid() {
                Ok(0)
            } else {
                for v in report.violations() {
                    eprintln!("{}: {}", v.code, v.detail);
                }
                Ok(1)
            }
        }
        Cmd::Decompose(args) => {
            let shape = io::parse_shape(&args.shape)?;
            let sigma = io::parse_grid_perm(&read_file(&args.input)?, &shape)?;
            let factors = sigma.decompose();
            fs::write(&args.output, io::factors_to_text(&factors))?;
            let checked = if args.check {
                Some(compose_equals(&factors, &sigma)?)
            } else {
                None
            };
            let directions: Vec<usize> = factors.iter().map(|f| f.direction()).collect();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "factors": factors.len(),
                        "directions": directions,
                        "check": checked,
                    })
                );
            } else {
                let dirs: Vec<String> = directions.iter().map(|d| d.to_string()).collect();
                println!("factors={} directions={}", factors.len(), dirs.join(","));
                if let Some(ok) = checked {
                    println!("check={}", if ok { "ok" } else { "FAILED" });
                }
            }
            if checked == Some(false) {
                Ok(1)
            } else {
                Ok(0)
            }
        }
        Cmd::Expander(ExpanderCmd::Gen { n2, seed, output }) => {
            let g = gen_cubic(n2, seed)?;
            let header = format!("3-regular graph on {n2} vertices, seed {seed}");
            fs::write(&output, io::cubic_graph_to_text(&g, &header))?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "two_n": n2, "seed": seed, "edges": g.edges().len() })
                );
            } else {
                println!(
                    "two_n={} seed={} edges={} written to {}",
                    n2,
                    seed,
                    g.edges().len(),
                    output.display()
                );
            }
            Ok(0)
        }
        Cmd::Expander(ExpanderCmd::Check { input, beta }) => {
            let guest = io::parse_guest_graph(&read_file(&input)?)?;
            let g = cubeminor::CubicGraph::from_guest(&guest)?;
            let beta = match beta {
                Some(text) => io::parse_ratio(&text)?,
                None => default_beta(),
            };
            let report = check_expansion(&g, beta)?;
            if cli.json {
                println!("{}", io::expansion_report_json(&report));
            } else {
                println!("passes={}", report.passes);
                println!("beta={}", io::ratio_string(&report.beta));
                println!("worst_ratio={}", io::ratio_string(&report.worst_ratio));
                let set: Vec<String> = report.worst_set.iter().map(|v| v.to_string()).collect();
                println!("worst_set={}", set.join(" "));
            }
            Ok(0)
        }
        Cmd::Bound(BoundCmd::Place {
            input,
            placement,
            d,
        }) => {
            let g = io::parse_guest_graph(&read_file(&input)?)?;
            let placed = io::parse_placement(&read_file(&placement)?, &g, d)?;
            let p = Placement::new(placed)?;
            let report = bound_report(&g, &p, d)?;
            if cli.json {
                println!("{}", io::bound_report_json(&report));
            } else {
                println!("hamming_sum={}", report.hamming_sum);
                println!("lower_bound={}", report.lower_bound);
                let cuts: Vec<String> = report.cut_sizes.iter().map(|c| c.to_string()).collect();
                println!("cut_sizes={}", cuts.join(","));
                let sides: Vec<String> = report.side_sizes.iter().map(|s| s.to_string()).collect();
                println!("side_sizes={}", sides.join(","));
                println!("host_capacity={}", report.host_capacity);
            }
            Ok(0)
        }
        Cmd::Bound(BoundCmd::Certify { input, d }) => {
            let g = io::parse_guest_graph(&read_file(&input)?)?;
            let report = subcubic_nonminor_certificate(&g, d)?;
            if cli.json {
                println!("{}", io::certificate_json(&report));
            } else {
                println!("certified={}", report.certified);
                match report.min_lower_bound {
                    Some(b) => println!("min_lower_bound={b}"),
                    None => println!("min_lower_bound=none (guest larger than host)"),
                }
                println!("host_capacity={}", report.host_capacity);
                println!("placements={}", report.placements);
            }
            Ok(0)
        }
        Cmd::Bound(BoundCmd::Theorem { d }) => {
            if d == 0 {
                return Err(Error::InvalidParameter("d must be at least 1".into()));
            }
            let report = theorem_inequality(d);
            if cli.json {
                println!("{}", io::theorem_json(&report));
            } else {
                println!("d={d}");
                println!("holds={}", report.holds);
                println!("tail_ok={}", report.tail_ok);
                println!("lhs={}", io::big_ratio_string(&report.lhs));
                println!("rhs={}", report.rhs);
            }
            Ok(0)
        }
        Cmd::Bound(BoundCmd::Tail { d }) => {
            if d == 0 {
                return Err(Error::InvalidParameter("d must be at least 1".into()));
            }
            let tail = weight_tail(d);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "d": d, "tail": tail.to_string() })
                );
            } else {
                println!("d={d}");
                println!("tail={tail}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
