use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pbt_schur::correspondence::{check_bijection, check_path_counts};
use pbt_schur::graph::{check_export_limit, edges_unbounded, render_dot};
use pbt_schur::labelling::enumerate_labellings;
use pbt_schur::operators::{
    check_commutation, check_dual_graph, check_total_down, check_total_up_adjoint, check_transposed_commutation,
};
use pbt_schur::qsym::{cauchy_check, check_labelling_sums, schur_poly, Symbol};
use pbt_schur::rsk::{check_rsk, rsk_forward, rsk_inverse};
use pbt_schur::tree::enumerate_trees;
use pbt_schur::{Error, Family, LabellingKind, LinComb, Matrix, Operator, Path, Report, Tree, UpFamily};

const MAX_NODES: usize = 8;
const MAX_DEGREE: usize = 5;
const MAX_TREES_N: usize = 12;

#[derive(Parser)]
#[command(name = "pbt-schur", version, about = "Schur operators on planar binary trees")]
struct Cli {
    /// Emit one JSON document per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Lift the size limits on nodes and degrees.
    #[arg(long, global = true)]
    unsafe_no_guard: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the trees with exactly n nodes.
    Trees {
        #[arg(short)]
        n: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
    /// Apply U_i, U'_i, D_i or an adjoint to a tree.
    Apply {
        /// One of U, U', D, U*, U'*, D*.
        #[arg(short, long)]
        op: String,
        #[arg(short, long)]
        i: usize,
        #[arg(short, long)]
        tree: String,
    },
    /// Check an identity exhaustively and print a JSON report.
    Verify(VerifyArgs),
    /// Generating polynomial <D(t_1)...D(t_n) T, T'> or <U(t_n)...U(t_1) T', T>.
    Poly {
        /// D, U or U'.
        #[arg(short, long)]
        symbol: String,
        #[arg(short, long)]
        tree: String,
        #[arg(long, default_value = "{}")]
        to: String,
        #[arg(long)]
        vars: usize,
    },
    /// Growth-diagram RSK between a CSV matrix and a pair of paths.
    Rsk {
        /// CSV matrix (forward) or JSON {"P": [...], "Q": [...]} (inverse); `-` reads stdin.
        file: String,
        #[arg(short, long, default_value = "U")]
        family: String,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        /// Include the full growth diagram in the forward output.
        #[arg(long)]
        diagram: bool,
    },
    /// Export G_U, G_U' or G_D restricted to small trees.
    Graph {
        #[arg(short, long)]
        family: String,
        #[arg(short, long)]
        i: usize,
        #[arg(short = 'n', long)]
        max_nodes: usize,
    },
    /// List the labellings of a tree with labels in 1..=m.
    Labellings {
        #[arg(short, long)]
        tree: String,
        /// right-strict, left-strict or binary-search.
        #[arg(short, long)]
        kind: String,
        #[arg(short)]
        m: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Commutation,
    DualCommutation,
    DualGraph,
    Bijection,
    LabellingSum,
    Cauchy,
    Rsk,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    /// U or U'; both families when omitted.
    #[arg(short, long)]
    family: Option<String>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_deg: Option<usize>,
    /// Variable counts: `n` for labelling-sum, `p q` for cauchy and rsk.
    #[arg(long, num_args = 1..=2)]
    vars: Vec<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    max_total: Option<usize>,
}

enum Failure {
    Usage(anyhow::Error),
    Verification(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<Vec<String>, Failure>;

struct Guard {
    enabled: bool,
}

impl Guard {
    fn check(&self, what: &str, value: usize, limit: usize) -> Result<(), Failure> {
        if self.enabled && value > limit {
            return Err(Failure::Usage(anyhow!("{what} = {value} exceeds the limit {limit} (use --unsafe-no-guard)")));
        }
        Ok(())
    }
}

fn parse_tree(text: &str) -> Result<Tree, Failure> {
    text.parse().with_context(|| format!("invalid tree {text:?}")).map_err(Failure::Usage)
}

fn parse_family(text: &str) -> Result<UpFamily, Failure> {
    Ok(text.parse::<UpFamily>()?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn read_input(file: &str) -> anyhow::Result<String> {
    if file == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(file).with_context(|| format!("cannot read {file}"))
    }
}

fn cmd_trees(cli: &Cli, guard: &Guard, n: usize, count: bool) -> Outcome {
    guard.check("n", n, MAX_TREES_N)?;
    let trees = enumerate_trees(n);
    Ok(match (count, cli.json) {
        (true, false) => vec![trees.len().to_string()],
        (true, true) => vec![json_line(&serde_json::json!({ "n": n, "count": trees.len() }))],
        (false, false) => trees.iter().map(Tree::to_string).collect(),
        (false, true) => trees.iter().map(|t| json_line(&serde_json::json!({ "tree": t, "nodes": t.len() }))).collect(),
    })
}

#[derive(Serialize)]
struct TermOut<'a> {
    tree: &'a Tree,
    coeff: i64,
}

fn cmd_apply(cli: &Cli, guard: &Guard, op: &str, i: usize, tree: &str) -> Outcome {
    let op: Operator = op.parse()?;
    guard.check("degree", i, MAX_DEGREE)?;
    let tree = parse_tree(tree)?;
    let result = op.apply(i, &LinComb::basis(tree.clone()));
    if cli.json {
        let terms: Vec<TermOut> = result.terms().map(|(tree, coeff)| TermOut { tree, coeff }).collect();
        let out = serde_json::json!({ "op": op.to_string(), "degree": i, "input": tree, "terms": terms });
        Ok(vec![json_line(&out)])
    } else {
        Ok(vec![result.to_string()])
    }
}

fn families(name: &Option<String>) -> Result<Vec<UpFamily>, Failure> {
    match name {
        Some(f) => Ok(vec![parse_family(f)?]),
        None => Ok(UpFamily::ALL.to_vec()),
    }
}

fn var_pair(vars: &[usize], default: usize) -> (usize, usize) {
    match vars {
        [] => (default, default),
        [p] => (*p, *p),
        [p, q, ..] => (*p, *q),
    }
}

fn cmd_verify(cli: &Cli, guard: &Guard, args: &VerifyArgs) -> Outcome {
    let fams = families(&args.family)?;
    let nodes = |default: usize| -> Result<usize, Failure> {
        let n = args.max_nodes.unwrap_or(default);
        guard.check("max-nodes", n, MAX_NODES)?;
        Ok(n)
    };
    let deg = |name: &str, value: Option<usize>, default: usize| -> Result<usize, Failure> {
        let d = value.unwrap_or(default);
        guard.check(name, d, MAX_DEGREE)?;
        Ok(d)
    };
    let parts: Vec<Report> = match args.target {
        Target::Commutation | Target::DualCommutation => {
            let n = nodes(5)?;
            let d = deg("max-deg", args.max_deg, 3)?;
            let run = if args.target == Target::Commutation { check_commutation } else { check_transposed_commutation };
            fams.iter().map(|&f| run(f, n, d, d)).collect()
        }
        Target::DualGraph => {
            let n = nodes(6)?;
            vec![check_dual_graph(n), check_total_down(n), check_total_up_adjoint(n)]
        }
        Target::Bijection => {
            let n = nodes(4)?;
            let d = deg("max-deg", args.max_deg, 2)?;
            fams.iter().flat_map(|&f| [check_bijection(f, n, d), check_path_counts(f, n, d)]).collect()
        }
        Target::LabellingSum => {
            let n = nodes(5)?;
            let v = deg("vars", args.vars.first().copied(), 4)?;
            vec![check_labelling_sums(n, v)]
        }
        Target::Cauchy => {
            let (p, q) = var_pair(&args.vars, 2);
            guard.check("vars", p.max(q), MAX_DEGREE)?;
            let d = deg("max-degree", args.max_degree, 4)?;
            fams.iter().map(|&f| cauchy_check(f, p, q, d)).collect()
        }
        Target::Rsk => {
            let (p, q) = var_pair(&args.vars, 2);
            guard.check("vars", p.max(q), MAX_DEGREE)?;
            let total = args.max_total.unwrap_or(4);
            guard.check("max-total", total, MAX_NODES)?;
            fams.iter().map(|&f| check_rsk(f, p, q, total as u32)).collect()
        }
    };
    let report = if parts.len() == 1 {
        parts.into_iter().next().expect("one part")
    } else {
        let name = parts.iter().map(|r| r.identity.as_str()).collect::<Vec<_>>().join("; ");
        Report::merge(name, parts)
    };
    let text = if cli.json {
        json_line(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("serializable")
    };
    if report.passed() {
        Ok(vec![text])
    } else {
        println!("{text}");
        Err(Failure::Verification(anyhow!("{} failed ({} counterexamples)", report.identity, report.failures)))
    }
}

fn cmd_poly(cli: &Cli, guard: &Guard, symbol: &str, tree: &str, to: &str, vars: usize) -> Outcome {
    let symbol: Symbol = symbol.parse()?;
    let (tree, to) = (parse_tree(tree)?, parse_tree(to)?);
    guard.check("tree size", tree.len(), MAX_NODES)?;
    guard.check("vars", vars, MAX_DEGREE)?;
    let p = schur_poly(symbol, &tree, &to, vars);
    if cli.json {
        let out = serde_json::json!({ "symbol": symbol.to_string(), "tree": tree, "to": to, "vars": vars, "terms": p });
        Ok(vec![json_line(&out)])
    } else {
        Ok(vec![p.to_string()])
    }
}

#[derive(Serialize)]
struct RskOut<'a> {
    #[serde(rename = "P")]
    p: &'a [Tree],
    #[serde(rename = "Q")]
    q: &'a [Tree],
    shape: &'a Tree,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<&'a [Vec<Tree>]>,
}

#[derive(Deserialize)]
struct RskIn {
    #[serde(rename = "P")]
    p: Vec<Tree>,
    #[serde(rename = "Q")]
    q: Vec<Tree>,
}

fn cmd_rsk(cli: &Cli, guard: &Guard, file: &str, family: &str, direction: Direction, diagram: bool) -> Outcome {
    let family = parse_family(family)?;
    let input = read_input(file)?;
    match direction {
        Direction::Forward => {
            let m: Matrix = input.parse()?;
            guard.check("matrix total", m.total() as usize, MAX_NODES)?;
            guard.check("matrix dimension", m.cols().max(m.rows()), MAX_DEGREE)?;
            let pair = rsk_forward(&m, family)?;
            let out = RskOut {
                p: pair.p.trees(),
                q: pair.q.trees(),
                shape: pair.shape(),
                diagram: diagram.then_some(pair.diagram.trees.as_slice()),
            };
            let text = if cli.json { json_line(&out) } else { serde_json::to_string_pretty(&out).expect("serializable") };
            Ok(vec![text])
        }
        Direction::Inverse => {
            let paths: RskIn = serde_json::from_str(&input).context("expected JSON {\"P\": [...], \"Q\": [...]}")?;
            let p = Path::new(Family::Up(family), paths.p)?;
            let q = Path::new(Family::Down, paths.q)?;
            match rsk_inverse(&p, &q, family) {
                Ok(m) if cli.json => Ok(vec![json_line(&serde_json::json!({ "matrix": m.to_rows() }))]),
                Ok(m) => Ok(m.to_string().lines().map(str::to_string).collect()),
                Err(e @ (Error::ShapeMismatch(..) | Error::CellFailure { .. })) => Err(Failure::Verification(e.into())),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn cmd_graph(cli: &Cli, guard: &Guard, family: &str, i: usize, max_nodes: usize) -> Outcome {
    let family: Family = family.parse()?;
    if guard.enabled {
        check_export_limit(max_nodes)?;
    }
    guard.check("degree", i, MAX_DEGREE)?;
    let edge_list = edges_unbounded(family, i, max_nodes);
    if cli.json {
        Ok(edge_list.iter().map(json_line).collect())
    } else {
        Ok(render_dot(family, i, max_nodes, &edge_list).lines().map(str::to_string).collect())
    }
}

fn cmd_labellings(cli: &Cli, guard: &Guard, tree: &str, kind: &str, m: u32) -> Outcome {
    let tree = parse_tree(tree)?;
    let kind: LabellingKind = kind.parse()?;
    guard.check("tree size", tree.len(), MAX_NODES)?;
    guard.check("m", m as usize, MAX_DEGREE)?;
    let all = enumerate_labellings(&tree, kind, m);
    Ok(if cli.json {
        all.iter()
            .map(|l| json_line(&serde_json::json!({ "labelling": l.to_string(), "weight": l.weight(m as usize) })))
            .collect()
    } else {
        all.iter().map(|l| l.to_string()).collect()
    })
}

fn run(cli: &Cli) -> Outcome {
    let guard = Guard { enabled: !cli.unsafe_no_guard };
    match &cli.command {
        Command::Trees { n, count } => cmd_trees(cli, &guard, *n, *count),
        Command::Apply { op, i, tree } => cmd_apply(cli, &guard, op, *i, tree),
        Command::Verify(args) => cmd_verify(cli, &guard, args),
        Command::Poly { symbol, tree, to, vars } => cmd_poly(cli, &guard, symbol, tree, to, *vars),
        Command::Rsk { file, family, direction, diagram } => cmd_rsk(cli, &guard, file, family, *direction, *diagram),
        Command::Graph { family, i, max_nodes } => cmd_graph(cli, &guard, family, *i, *max_nodes),
        Command::Labellings { tree, kind, m } => cmd_labellings(cli, &guard, tree, kind, *m),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(lines) => {
            let mut out = io::stdout().lock();
            for line in lines {
                if writeln!(out, "{line}").is_err() {
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(1)
        }
    }
}
