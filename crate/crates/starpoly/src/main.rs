//! Thin command-line front end over the starpoly library.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use starpoly::error::{Error, Result};
use starpoly::graph::MarkedGraph;
use starpoly::harness::{verify_invariants, verify_stanley, RunReport};
use starpoly::invariants::{
    d_poly, m_poly, uniform_gamma, v_poly_states, vpoly_to_string, w_poly, MarkDotSum, SGraph,
};
use starpoly::io::{graph_from_graph6, graph_from_json, graph_to_json};
use starpoly::mprime::{m_prime, MarkOrder};
use starpoly::reconstruct::{
    star_from_d, star_from_m, stats_from_d, stats_from_m, tree_from_csf_star, twostar_from_d,
    twostar_from_m, TreeShape,
};
use starpoly::star_expansion::{dnc_expand, dnc_expand_with_tree};
use starpoly::symfunc::{st_to_p, SymFn};
use starpoly::zpoly::ZPoly;

#[derive(Parser)]
#[command(name = "starpoly", version, about = "Exact marked-graph polynomial invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    St,
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum FromArg {
    D,
    M,
    Csf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
}

#[derive(Args)]
struct InputArgs {
    /// Input path, or "-" for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Input graph format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic symmetric function of a simple unweighted graph.
    Csf {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = BasisArg::St)]
        basis: BasisArg,
        /// Also print the deletion-near-contraction tree.
        #[arg(long)]
        emit_tree: bool,
    },
    /// M-polynomial of a marked multigraph.
    Mpoly {
        #[command(flatten)]
        input: InputArgs,
    },
    /// W-polynomial of a weighted multigraph.
    Wpoly {
        #[command(flatten)]
        input: InputArgs,
    },
    /// D-polynomial of a marked multigraph.
    Dpoly {
        #[command(flatten)]
        input: InputArgs,
    },
    /// V-polynomial over marks with dot-sum, with a uniform rational gamma.
    Vpoly {
        #[command(flatten)]
        input: InputArgs,
        /// Edge weight applied to every edge, e.g. "3" or "-2/5".
        #[arg(long, default_value = "1")]
        gamma: String,
    },
    /// M'-polynomial of a marked forest.
    Mprime {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
    },
    /// Core of a marked graph (absorb all absorbable leaves).
    Core {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Rebuild a tree from a polynomial or chromatic symmetric function.
    Reconstruct {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        from: FromArg,
    },
    /// Verification campaigns.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Time the golden computations.
    Bench,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Distinctness of star-basis CSFs over all free trees up to max-n.
    Stanley {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
    },
    /// The seeded randomized property battery.
    Invariants {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: u64,
    },
}

fn read_input(args: &InputArgs) -> Result<String> {
    if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(&args.input)?)
    }
}

fn read_graph(args: &InputArgs) -> Result<MarkedGraph> {
    let text = read_input(args)?;
    match args.format {
        Format::Json => graph_from_json(&text),
        Format::Graph6 => graph_from_graph6(&text),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if d == BigInt::from(0) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Csf { input, basis, emit_tree } => {
            let g = read_graph(&input)?;
            let st = if emit_tree {
                let (tree, st) = dnc_expand_with_tree(&g)?;
                print!("{}", tree.render());
                st
            } else {
                dnc_expand(&g)?
            };
            match basis {
                BasisArg::St => println!("{st}"),
                BasisArg::P => println!("{}", st_to_p(&st)),
            }
        }
        Command::Mpoly { input } => {
            println!("{}", m_poly(&read_graph(&input)?));
        }
        Command::Wpoly { input } => {
            println!("{}", w_poly(&read_graph(&input)?)?);
        }
        Command::Dpoly { input } => {
            println!("{}", d_poly(&read_graph(&input)?));
        }
        Command::Vpoly { input, gamma } => {
            let g = read_graph(&input)?;
            let gamma = parse_rational(&gamma)?;
            let sg = SGraph::from_marked(&g, |m| m);
            let v = v_poly_states(&sg, &MarkDotSum, &uniform_gamma(&g, gamma))?;
            println!("{}", vpoly_to_string(&v, &MarkDotSum));
        }
        Command::Mprime { input, order } => {
            let OrderArg::Lex = order;
            println!("{}", m_prime(&read_graph(&input)?, MarkOrder::Lex)?);
        }
        Command::Core { input } => {
            println!("{}", graph_to_json(&read_graph(&input)?.core()));
        }
        Command::Reconstruct { input, from } => {
            let text = read_input(&input)?;
            let tree = match from {
                FromArg::M => {
                    let m = ZPoly::parse(&text)?;
                    match stats_from_m(&m)?.shape {
                        TreeShape::Star => star_from_m(&m)?,
                        TreeShape::TwoStar => twostar_from_m(&m)?,
                        TreeShape::Other => {
                            return Err(Error::InvalidInput(
                                "M-polynomial is not that of a star or 2-star".into(),
                            ))
                        }
                    }
                }
                FromArg::D => {
                    let d = ZPoly::parse(&text)?;
                    match stats_from_d(&d)?.shape {
                        TreeShape::Star => star_from_d(&d)?,
                        TreeShape::TwoStar => twostar_from_d(&d)?,
                        TreeShape::Other => {
                            return Err(Error::InvalidInput(
                                "D-polynomial is not that of a star or 2-star".into(),
                            ))
                        }
                    }
                }
                FromArg::Csf => tree_from_csf_star(&SymFn::parse(&text)?)?,
            };
            println!("{}", graph_to_json(&tree));
        }
        Command::Verify { what } => {
            let report = match what {
                VerifyCommand::Stanley { max_n } => verify_stanley(max_n)?,
                VerifyCommand::Invariants { seed, trials } => verify_invariants(seed, trials),
            };
            println!("{}", report.to_json());
            if !report.all_passed() {
                return Ok(match report.command.as_str() {
                    "verify stanley" => 2,
                    _ => 3,
                });
            }
        }
        Command::Bench => {
            println!("{}", bench_report().to_json());
        }
    }
    Ok(0)
}

fn bench_report() -> RunReport {
    use starpoly::mark::mk;
    let mut report = RunReport::new("bench");
    let time = |f: &mut dyn FnMut()| {
        // Min over repetitions, after a warmup run.
        f();
        let mut best = u64::MAX;
        for _ in 0..5 {
            let start = Instant::now();
            f();
            best = best.min(start.elapsed().as_nanos() as u64);
        }
        best
    };
    let triangle = MarkedGraph::from_parts(
        vec![(0, mk(4, 1)), (1, mk(1, 0)), (2, mk(2, 0))],
        vec![(0, 1), (1, 2), (2, 0)],
    )
    .unwrap();
    let path = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
    let spider = MarkedGraph::weighted_path(&[4, 3, 2]).unwrap().uncore().unwrap();
    let pendant = MarkedGraph::unweighted(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
    let mut cases: Vec<(&str, Box<dyn FnMut()>)> = vec![
        (
            "m-poly-marked-triangle",
            Box::new({
                let g = triangle.clone();
                move || {
                    let _ = m_poly(&g);
                }
            }),
        ),
        (
            "w-poly-path-412",
            Box::new({
                let g = path.clone();
                move || {
                    let _ = w_poly(&g).unwrap();
                }
            }),
        ),
        (
            "d-poly-marked-triangle",
            Box::new({
                let g = triangle.clone();
                move || {
                    let _ = d_poly(&g);
                }
            }),
        ),
        (
            "d-poly-spider",
            Box::new({
                let g = spider.clone();
                move || {
                    let _ = d_poly(&g);
                }
            }),
        ),
        (
            "star-expansion-triangle-pendant",
            Box::new({
                let g = pendant.clone();
                move || {
                    let _ = dnc_expand(&g).unwrap();
                }
            }),
        ),
    ];
    for (name, f) in &mut cases {
        let ns = time(f.as_mut());
        report.timing_ns.insert(name.to_string(), ns);
    }
    report
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
