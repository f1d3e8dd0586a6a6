//! `wpn`: command-line front end for the equivariant cohomology library.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a verdict came out false,
//! 4 internal invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wpn_core::canonical::{
    kawasaki_constants, rational_weighted_class, schubert_class, weighted_canonical_class,
};
use wpn_core::export::{
    rows_to_csv, rows_to_json, rows_to_latex, table_rows, weighted_rows_to_csv, WeightedRow,
};
use wpn_core::gkm::{is_gkm_member, LocalizedClassJson, Membership};
use wpn_core::structconst::{
    struct_const_row_closed, struct_consts_oracle, weighted_struct_row, StructureTable,
};
use wpn_core::verify::{run_all, VerifyConfig};
use wpn_core::{ActionVector, Error, GkmGraph, LocalizedClass, RingMode, WeightVector};

#[derive(Parser)]
#[command(
    name = "wpn",
    version,
    about = "Equivariant cohomology of weighted projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The canonical class p_i of P^n at every fixed point.
    Schubert {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Kawasaki constants of a weight vector.
    Kappa {
        #[command(flatten)]
        space: Space,
        /// Only this degree; all degrees when omitted.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The weighted canonical class p_i^λ.
    WeightedClass {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
        /// Emit the class even when it has non-integral coefficients.
        #[arg(long)]
        allow_rational: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Edge weights of the GKM graph.
    EdgeWeights {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// GKM membership of a localized class read from a JSON file.
    CheckGkm {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        class: PathBuf,
        #[arg(long, value_enum, default_value_t = Ring::Integers)]
        ring: Ring,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Structure constants of P^n: one row with --i and --j, else the full table.
    Structconst {
        #[command(flatten)]
        space: Space,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
        #[arg(long, requires = "i")]
        k: Option<usize>,
        /// Compute by triangular localization instead of divided differences.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Structure constants of the weighted projective space.
    WeightedStructconst {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the self-check suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Space {
    /// Dimension; inferred from --lambda or --mu when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated positive weights, n+1 of them.
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated positive action exponents, n+1 of them.
    #[arg(long)]
    mu: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    Integers,
    Rationals,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(flag: &str, message: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("{flag}: {message}"),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvariantViolation(_)) {
            4
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command prints, and whether its verdict was true.
struct Output {
    text: String,
    verdict: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            verdict: true,
        }
    }
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| usage(flag, format!("{part:?} is not an integer")))
        })
        .collect()
}

struct Resolved {
    n: usize,
    lambda: WeightVector,
    mu: ActionVector,
}

impl Space {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let lambda = self
            .lambda
            .as_deref()
            .map(|s| parse_list("--lambda", s))
            .transpose()?;
        let mu = self
            .mu
            .as_deref()
            .map(|s| parse_list("--mu", s))
            .transpose()?;
        let n = match (self.n, &lambda, &mu) {
            (Some(n), _, _) => n,
            (None, Some(l), _) => l.len() - 1,
            (None, None, Some(m)) => m.len() - 1,
            (None, None, None) => {
                return Err(usage("--n", "required unless --lambda or --mu is given"))
            }
        };
        let check_len = |flag: &str, v: &Option<Vec<i64>>| match v {
            Some(v) if v.len() != n + 1 => Err(usage(
                flag,
                format!("expected {} entries for n = {n}, found {}", n + 1, v.len()),
            )),
            _ => Ok(()),
        };
        check_len("--lambda", &lambda)?;
        check_len("--mu", &mu)?;
        let lambda = match lambda {
            Some(v) => WeightVector::new(v).map_err(|e| usage("--lambda", e))?,
            None => WeightVector::unit(n),
        };
        let mu = match mu {
            Some(v) => ActionVector::new(v).map_err(|e| usage("--mu", e))?,
            None => ActionVector::unit(n),
        };
        Ok(Resolved { n, lambda, mu })
    }
}

fn check_degree(flag: &str, value: usize, n: usize) -> Result<(), Failure> {
    if value > n {
        return Err(usage(flag, format!("{value} is out of range 0..={n}")));
    }
    Ok(())
}

fn unsupported(format: Format) -> Failure {
    let name = format
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    usage(
        "--format",
        format!("{name} is not supported by this command"),
    )
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn class_latex(class: &LocalizedClass) -> String {
    let parts: Vec<String> = class.parts().iter().map(|p| p.to_latex("t")).collect();
    format!("\\left({}\\right)\n", parts.join(",\\ "))
}

fn class_json(class: &LocalizedClass) -> Value {
    serde_json::to_value(class.to_json()).expect("class serializes")
}

fn schubert(space: &Space, i: usize, format: Format) -> Result<Output, Failure> {
    let r = space.resolve()?;
    check_degree("--i", i, r.n)?;
    let class = schubert_class(i, r.n)?;
    let text = match format {
        Format::Text => format!("{class}\n"),
        Format::Json => json_text(&class_json(&class)),
        Format::Latex => class_latex(&class),
        Format::Csv => return Err(unsupported(format)),
    };
    Ok(Output::ok(text))
}

fn kappa(space: &Space, i: Option<usize>, format: Format) -> Result<Output, Failure> {
    let r = space.resolve()?;
    if let Some(i) = i {
        check_degree("--i", i, r.n)?;
    }
    let all = kawasaki_constants(&r.lambda);
    let chosen: Vec<_> = all
        .iter()
        .filter(|c| i.is_none_or(|i| c.degree == i))
        .collect();
    let text = match format {
        Format::Text if i.is_some() => format!("{}\n", chosen[0].value),
        Format::Text => chosen
            .iter()
            .map(|c| format!("{} {}\n", c.degree, c.value))
            .collect(),
        Format::Csv => std::iter::once("i,kappa\n".to_string())
            .chain(chosen.iter().map(|c| format!("{},{}\n", c.degree, c.value)))
            .collect(),
        Format::Json => json_text(&json!({
            "lambda": r.lambda.entries(),
            "kappa": chosen.iter().map(|c| json!({"i": c.degree, "kappa": c.value.to_string()})).collect::<Vec<_>>(),
        })),
        Format::Latex => return Err(unsupported(format)),
    };
    Ok(Output::ok(text))
}

fn weighted_class(
    space: &Space,
    i: usize,
    allow_rational: bool,
    format: Format,
) -> Result<Output, Failure> {
    let r = space.resolve()?;
    check_degree("--i", i, r.n)?;
    let w = if allow_rational {
        rational_weighted_class(i, &r.lambda)?
    } else {
        weighted_canonical_class(i, &r.lambda)?
    };
    let text = match format {
        Format::Text => format!("kappa = {}\n{}\n", w.kappa, w.class),
        Format::Json => json_text(&serde_json::to_value(w.to_json()).expect("class serializes")),
        Format::Latex => class_latex(&w.class),
        Format::Csv => return Err(unsupported(format)),
    };
    Ok(Output::ok(text))
}

fn edge_weights(space: &Space, format: Format) -> Result<Output, Failure> {
    let r = space.resolve()?;
    let graph = GkmGraph::new(r.lambda, r.mu)?;
    let edges: Vec<(usize, usize, String)> = graph
        .edges()
        .map(|(i, j, w)| (i, j, w.to_string()))
        .collect();
    let text = match format {
        Format::Text => edges
            .iter()
            .map(|(i, j, w)| format!("{i} {j} {w}\n"))
            .collect(),
        Format::Csv => std::iter::once("i,j,weight\n".to_string())
            .chain(edges.iter().map(|(i, j, w)| format!("{i},{j},{w}\n")))
            .collect(),
        Format::Json => json_text(&json!({
            "lambda": graph.lambda().entries(),
            "mu": graph.mu().entries(),
            "n": graph.n(),
            "edges": edges.iter().map(|(i, j, w)| json!({"i": i, "j": j, "weight": w})).collect::<Vec<_>>(),
        })),
        Format::Latex => return Err(unsupported(format)),
    };
    Ok(Output::ok(text))
}

/// Reads a localized class, either bare or wrapped as a weighted class.
fn read_class(path: &PathBuf) -> Result<LocalizedClass, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| usage("--class", format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| usage("--class", format!("invalid JSON: {e}")))?;
    let inner = value.get("class").cloned().unwrap_or(value);
    let json: LocalizedClassJson = serde_json::from_value(inner)
        .map_err(|e| usage("--class", format!("not a localized class: {e}")))?;
    LocalizedClass::from_json(&json).map_err(|e| usage("--class", e))
}

fn check_gkm(space: &Space, path: &PathBuf, ring: Ring, format: Format) -> Result<Output, Failure> {
    let class = read_class(path)?;
    let r = if space.n.is_none() && space.lambda.is_none() && space.mu.is_none() {
        Space {
            n: Some(class.n()),
            lambda: None,
            mu: None,
        }
        .resolve()?
    } else {
        space.resolve()?
    };
    if class.n() != r.n {
        return Err(usage(
            "--class",
            format!(
                "class has {} parts, the space has {}",
                class.n() + 1,
                r.n + 1
            ),
        ));
    }
    let graph = GkmGraph::new(r.lambda, r.mu)?;
    let mode = match ring {
        Ring::Integers => RingMode::Integers,
        Ring::Rationals => RingMode::Rationals,
    };
    let verdict = is_gkm_member(&class, &graph, mode)?;
    let note = if mode == RingMode::Integers && !graph.models_integral_cohomology() {
        Some("formal divisibility check, not a cohomology computation")
    } else {
        None
    };
    let reason = match &verdict {
        Membership::Member { .. } => None,
        Membership::NonIntegralPart { index } => {
            Some(format!("non-integral localization at x{index}"))
        }
        Membership::Violation { i, j } => Some(format!(
            "edge ({i}, {j}) difference not divisible by its weight"
        )),
    };
    let ring_name = match ring {
        Ring::Integers => "integers",
        Ring::Rationals => "rationals",
    };
    let text = match format {
        Format::Text => {
            let mut s = format!("member: {}\nring: {ring_name}\n", verdict.is_member());
            if let Some(reason) = &reason {
                s.push_str(&format!("reason: {reason}\n"));
            }
            if let Some(note) = note {
                s.push_str(&format!("note: {note}\n"));
            }
            s
        }
        Format::Json => json_text(&json!({
            "member": verdict.is_member(),
            "ring": ring_name,
            "lambda": graph.lambda().entries(),
            "mu": graph.mu().entries(),
            "reason": reason,
            "note": note,
        })),
        Format::Csv | Format::Latex => return Err(unsupported(format)),
    };
    Ok(Output {
        text,
        verdict: verdict.is_member(),
    })
}

fn structconst(
    space: &Space,
    ij: Option<(usize, usize)>,
    k: Option<usize>,
    oracle: bool,
    format: Format,
) -> Result<Output, Failure> {
    let r = space.resolve()?;
    let table = match ij {
        Some((i, j)) => {
            check_degree("--i", i, r.n)?;
            check_degree("--j", j, r.n)?;
            if let Some(k) = k {
                check_degree("--k", k, r.n)?;
            }
            let (i, j) = (i.min(j), i.max(j));
            let row = if oracle {
                struct_consts_oracle(i, j, r.n)?
            } else {
                struct_const_row_closed(i, j, r.n)?
            };
            let mut table = StructureTable::empty(r.n);
            match k {
                Some(k) => table.insert(i, j, k, row[k].clone()),
                None => table.insert_row(i, j, row),
            }
            table
        }
        None if oracle => StructureTable::oracle(r.n)?,
        None => StructureTable::closed(r.n)?,
    };
    let rows = table_rows(&table)?;
    let text = match format {
        Format::Text => rows
            .iter()
            .map(|row| {
                format!(
                    "c[{},{}]^{} = {}  (alpha: {})\n",
                    row.i, row.j, row.k, row.polynomial, row.alpha
                )
            })
            .collect(),
        Format::Csv => rows_to_csv(&rows)?,
        Format::Json => json_text(&rows_to_json(r.n, &rows)),
        Format::Latex => rows_to_latex(&rows),
    };
    Ok(Output::ok(text))
}

fn weighted_structconst(
    space: &Space,
    i: usize,
    j: usize,
    k: Option<usize>,
    format: Format,
) -> Result<Output, Failure> {
    let r = space.resolve()?;
    check_degree("--i", i, r.n)?;
    check_degree("--j", j, r.n)?;
    if let Some(k) = k {
        check_degree("--k", k, r.n)?;
    }
    let (i, j) = (i.min(j), i.max(j));
    let rows: Vec<WeightedRow> = weighted_struct_row(i, j, &r.lambda)?
        .iter()
        .filter(|c| k.map_or(!(c.image.is_zero() && c.native.is_zero()), |k| c.k == k))
        .map(|c| WeightedRow::new(i, j, c))
        .collect();
    let text = match format {
        Format::Text => rows
            .iter()
            .map(|row| {
                format!(
                    "c[{},{}]^{}: image = {}, native = {}\n",
                    row.i, row.j, row.k, row.image, row.native
                )
            })
            .collect(),
        Format::Csv => weighted_rows_to_csv(&rows)?,
        Format::Json => json_text(&json!({
            "lambda": r.lambda.entries(),
            "entries": serde_json::to_value(&rows).expect("rows serialize"),
        })),
        Format::Latex => return Err(unsupported(format)),
    };
    Ok(Output::ok(text))
}

fn verify(max_n: usize, trials: usize, seed: u64, format: Format) -> Result<Output, Failure> {
    let outcomes = run_all(&VerifyConfig {
        max_n,
        trials,
        seed,
    })?;
    let verdict = outcomes.iter().all(|c| c.passed);
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for c in &outcomes {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{:>2}  {mark}  {:<30} {}\n",
                    c.id, c.name, c.detail
                ));
            }
            let passed = outcomes.iter().filter(|c| c.passed).count();
            s.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
            s
        }
        Format::Json => json_text(&json!({
            "max_n": max_n,
            "seed": seed,
            "trials": trials,
            "checks": outcomes
                .iter()
                .map(|c| json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Latex => return Err(unsupported(format)),
    };
    Ok(Output { text, verdict })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Schubert { space, i, format } => schubert(&space, i, format),
        Command::Kappa { space, i, format } => kappa(&space, i, format),
        Command::WeightedClass {
            space,
            i,
            allow_rational,
            format,
        } => weighted_class(&space, i, allow_rational, format),
        Command::EdgeWeights { space, format } => edge_weights(&space, format),
        Command::CheckGkm {
            space,
            class,
            ring,
            format,
        } => check_gkm(&space, &class, ring, format),
        Command::Structconst {
            space,
            i,
            j,
            k,
            oracle,
            format,
        } => structconst(&space, i.zip(j), k, oracle, format),
        Command::WeightedStructconst {
            space,
            i,
            j,
            k,
            format,
        } => weighted_structconst(&space, i, j, k, format),
        Command::Verify {
            max_n,
            trials,
            seed,
            format,
        } => verify(max_n, trials, seed, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.verdict { 0 } else { 3 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
