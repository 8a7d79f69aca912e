use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deuring_core::algebra::{FiniteField, PrimeModulus, Ring};
use deuring_core::drinfeld::{deuring, DeuringResult, Method};
use deuring_core::isogeny_graph::{build_supersingular_graph, verify_component};
use deuring_core::tower::verify_all;
use deuring_core::Error;

mod checks;

#[derive(Parser)]
#[command(name = "deuring", version, about = "Deuring polynomials for Drinfeld modules in Legendre form")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute h (in Δ) or H (in λ) for a prime p(T).
    Compute {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, value_enum, default_value_t = Var::Delta)]
        var: Var,
        #[arg(long, value_enum, default_value_t = MethodArg::Universal)]
        method: MethodArg,
    },
    /// Run the full property suite for every prime up to a degree bound.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// Build the supersingular graph and check its component structure.
    Graph {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        prime: PrimeArg,
    },
    /// Check the identities behind the equations for X_0(T^n).
    Tower {
        #[command(flatten)]
        common: Common,
    },
    /// Check the identities of the universal sequence u_i up to an index bound.
    Identities {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
}

#[derive(Args)]
struct Common {
    /// Size of the constant field F_q (a prime power).
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PrimeArg {
    /// Monic irreducible p(T) ≠ T, e.g. "T^2+T+1".
    #[arg(long)]
    prime: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Var {
    Delta,
    Lambda,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Grec,
    Universal,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Invalid(String),
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn emit(common: &Common, text: &str) -> std::result::Result<(), Failure> {
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

fn reject_dot(common: &Common) -> std::result::Result<(), Failure> {
    if common.format == Format::Dot {
        return Err(Failure::Invalid("--format dot is only available for graph".into()));
    }
    Ok(())
}

fn compute(common: &Common, prime: &str, var: Var, method: MethodArg) -> Outcome {
    reject_dot(common)?;
    let p = PrimeModulus::parse(common.q, prime)?;
    let methods: Vec<Method> = match method {
        MethodArg::Direct => vec![Method::Direct],
        MethodArg::Grec => vec![Method::GRecurrence],
        MethodArg::Universal => vec![Method::Universal],
        MethodArg::All => Method::ALL.to_vec(),
    };
    let results = methods.iter().map(|&m| deuring(&p, m)).collect::<deuring_core::Result<Vec<_>>>()?;
    let pick = |r: &DeuringResult| match var {
        Var::Delta => r.h.clone(),
        Var::Lambda => r.big_h.clone(),
    };
    let agree = results.windows(2).all(|w| w[0].h == w[1].h && w[0].big_h == w[1].big_h);
    let ring = p.kappa_ring("s");
    let text = match (common.format, results.len()) {
        (Format::Json, 1) => json(&results[0].to_json()),
        (Format::Json, _) => json(&serde_json::json!({
            "results": results.iter().map(DeuringResult::to_json).collect::<Vec<_>>(),
            "verdict": if agree { "MATCH" } else { "MISMATCH" },
        })),
        (_, 1) => format!("{}\n", ring.render(&pick(&results[0]))),
        _ => {
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(out, "{:<14}{}", format!("{}:", r.method.name()), ring.render(&pick(r)));
            }
            let _ = writeln!(out, "{}", if agree { "MATCH" } else { "MISMATCH" });
            out
        }
    };
    Ok((text, agree))
}

fn graph(common: &Common, prime: &str) -> Outcome {
    let p = PrimeModulus::parse(common.q, prime)?;
    let g = build_supersingular_graph(&p)?;
    let r = verify_component(&g)?;
    let text = match common.format {
        Format::Json => json(&serde_json::json!({"report": r, "graph": g.to_json()})),
        Format::Dot => g.to_dot(),
        Format::Text => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let hist = |h: &std::collections::BTreeMap<u32, usize>| {
                h.iter().map(|(d, n)| format!("{d} (x{n})")).collect::<Vec<_>>().join(", ")
            };
            let mut out = String::new();
            let _ = writeln!(out, "prime: {p} (q = {}, d = {})", p.q(), p.degree());
            let _ = writeln!(out, "ambient field: degree {} over F_{}", r.ambient_degree, p.q());
            let _ = writeln!(out, "size: {} (expected {})", r.size, r.expected_size);
            let _ = writeln!(out, "out-degree: {}", hist(&r.out_degrees));
            let _ = writeln!(out, "in-degree: {}", hist(&r.in_degrees));
            let _ = writeln!(out, "closed: {}", yes(r.closed));
            let _ = writeln!(out, "connected: {}", yes(r.connected));
            let _ = writeln!(out, "modular relation on edges: {}", yes(r.relation_holds));
            let _ = writeln!(out, "multiple edges: {}", r.collisions);
            let _ = writeln!(out, "vertices in F_(q^2d): {}", yes(r.vertices_in_q_2d));
            let _ = writeln!(out, "edges:");
            for ((a, b), m) in &g.edges {
                let _ = writeln!(out, "  {} -> {} (x{m})", g.ambient.render(a), g.ambient.render(b));
            }
            out
        }
    };
    Ok((text, r.passed()))
}

fn tower(common: &Common) -> Outcome {
    reject_dot(common)?;
    FiniteField::gf(common.q)?;
    let reports = verify_all(common.q)?;
    let ok = reports.iter().all(|r| r.verified);
    let text = match common.format {
        Format::Json => json(&serde_json::to_value(&reports).expect("serializable")),
        _ => {
            let mut out = String::new();
            for r in &reports {
                let extra = r.j_map_degree.map(|d| format!(", j-map degree {d}")).unwrap_or_default();
                let status = if r.verified { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status}  {} (q = {}{extra})", r.name, r.q);
            }
            out
        }
    };
    Ok((text, ok))
}

fn table(common: &Common, results: &[checks::Check]) -> (String, bool) {
    let ok = results.iter().all(|c| c.passed);
    let text = match common.format {
        Format::Json => json(&serde_json::to_value(results).expect("serializable")),
        _ => {
            let mut out = String::new();
            for c in results {
                let _ = writeln!(out, "{}  {:<28} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let passed = results.iter().filter(|c| c.passed).count();
            let _ = writeln!(out, "{passed}/{} checks passed", results.len());
            out
        }
    };
    (text, ok)
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let (common, outcome) = match &cli.command {
        Command::Compute { common, prime, var, method } => (common, compute(common, &prime.prime, *var, *method)),
        Command::Graph { common, prime } => (common, graph(common, &prime.prime)),
        Command::Tower { common } => (common, tower(common)),
        Command::Verify { common, max_degree } => (common, {
            reject_dot(common)?;
            checks::verify(common.q, *max_degree).map(|r| table(common, &r)).map_err(Failure::from)
        }),
        Command::Identities { common, max_degree } => (common, {
            reject_dot(common)?;
            checks::identities(common.q, *max_degree).map(|r| table(common, &r)).map_err(Failure::from)
        }),
    };
    let (text, ok) = outcome?;
    emit(common, &text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unverified) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
