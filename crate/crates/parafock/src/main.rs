//! Command-line front end: enumeration, vector printing, action tables,
//! matrix dumps, and the verification suites, with JSON output for
//! downstream tooling.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (for example an
//! invalid tableau), 3 verification failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use parafock::action::{ContextCache, GeneratorKind};
use parafock::basis::build_omega_sequential;
use parafock::error::Error;
use parafock::jsonio::{
    to_json_string, ActionDoc, ExtractionDoc, MatrixDoc, TableauListDoc, VectorDoc, VerifyDoc,
};
use parafock::partition::WeightVector;
use parafock::tableau::{enumerate_ssyt, Ssyt};
use parafock::verify::{run_all, run_suite, SuiteReport, VerifyOptions, SUITE_NAMES};
use parafock::{Int, IntBasisContext};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "parafock",
    version,
    about = "Exact tableau bases and generator tables for paraboson Fock spaces"
)]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Largest permutation count the orbit-sum coefficient route may visit
    /// before falling back to expansion extraction.
    #[arg(long, global = true, value_name = "N", default_value_t = 1 << 20)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the ordered tableau basis of one weight space.
    Enumerate(EnumerateArgs),
    /// Print one basis vector as an explicit polynomial.
    Vector(VectorArgs),
    /// Apply a generator to a basis vector and print the expansion.
    Act(ActArgs),
    /// Print the unitriangular extraction matrix of one weight space.
    Matrix(MatrixArgs),
    /// Run the self-checking property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Weight as a comma list, e.g. 1,1,1,1; its length is the color count.
    #[arg(long, value_name = "W")]
    weight: String,
    /// Clifford order (row bound of the tableaux).
    #[arg(long, value_name = "P")]
    p: usize,
    /// Optional color count; must equal the weight length when given.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
}

#[derive(Args)]
struct VectorArgs {
    /// Tableau in row syntax, e.g. "1,1,2;2"; "[]" is the vacuum.
    tableau: String,
    /// Clifford order.
    #[arg(long, value_name = "P")]
    p: usize,
    /// Number of colors; defaults to the largest tableau entry.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Scale back by the column factorial of the shape.
    #[arg(long)]
    unnormalized: bool,
}

#[derive(Args)]
struct ActArgs {
    /// Generator family: X, D, B+ or B-.
    generator: String,
    /// Generator index (1-based color).
    index: usize,
    /// Source tableau in row syntax.
    tableau: String,
    /// Clifford order of the module.
    #[arg(long, value_name = "P")]
    p: usize,
    /// Color count of the induced module; required for B+ and B-.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Also dump the extraction matrix and vectors behind the expansion.
    #[arg(long)]
    show_matrix: bool,
}

#[derive(Args)]
struct MatrixArgs {
    /// Weight as a comma list; its length is the color count.
    #[arg(long, value_name = "W")]
    weight: String,
    /// Clifford order.
    #[arg(long, value_name = "P")]
    p: usize,
    /// Optional color count; must equal the weight length when given.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run, or "all".
    #[arg(long, default_value = "all", value_name = "NAME")]
    suite: String,
    /// Largest number of colors in the sweeps.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Orders to exercise, as a comma list, e.g. 1,2,3.
    #[arg(long, value_name = "LIST")]
    p: Option<String>,
    /// Largest weight total in the sweeps.
    #[arg(long, value_name = "W")]
    max_weight: Option<u32>,
    /// Number of randomized cases.
    #[arg(long, value_name = "C")]
    cases: Option<usize>,
    /// Coordinate bound of the two-color oracle grid.
    #[arg(long, value_name = "K")]
    max_klm: Option<u32>,
    /// Seed for the randomized draws.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

/// What a successfully dispatched command produced.
enum Outcome {
    Ok(String),
    VerifyFailed(String),
}

/// Why a command could not run.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses a comma list of nonnegative integers from a flag value.
fn parse_u32_list(flag: &str, s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<u32>().map_err(|_| {
                usage(format!(
                    "--{flag} expects a comma list of integers, got {x:?}"
                ))
            })
        })
        .collect()
}

/// Parses a weight flag and checks an optional explicit color count.
fn parse_weight(weight: &str, n: Option<usize>) -> Result<WeightVector, Failure> {
    let entries = parse_u32_list("weight", weight)?;
    if let Some(n) = n {
        if n != entries.len() {
            return Err(usage(format!(
                "--n {} disagrees with a weight of length {}",
                n,
                entries.len()
            )));
        }
    }
    Ok(WeightVector::new(entries))
}

fn parse_tableau(s: &str) -> Result<Ssyt, Failure> {
    // Tableau problems are domain errors: the diagnostic names the violated
    // row or column.
    s.parse::<Ssyt>().map_err(Failure::Domain)
}

fn cmd_enumerate(args: &EnumerateArgs, json: bool) -> CmdResult {
    let mu = parse_weight(&args.weight, args.n)?;
    let tableaux = enumerate_ssyt(&mu, args.p);
    if json {
        let doc = TableauListDoc::new(&mu, args.p, tableaux);
        return Ok(Outcome::Ok(to_json_string(&doc)?));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} tableaux of weight {} at p = {}",
        tableaux.len(),
        mu,
        args.p
    );
    for a in &tableaux {
        let _ = writeln!(out, "{a}");
    }
    Ok(Outcome::Ok(out))
}

fn cmd_vector(args: &VectorArgs, json: bool) -> CmdResult {
    let a = parse_tableau(&args.tableau)?;
    let n = match args.n {
        Some(n) => {
            if (a.max_entry() as usize) > n {
                return Err(usage(format!(
                    "--n {} is below the largest tableau entry {}",
                    n,
                    a.max_entry()
                )));
            }
            n
        }
        None => a.max_entry() as usize,
    };
    let v = build_omega_sequential::<Int>(&a, n, args.p)?;
    let doc = if args.unnormalized {
        VectorDoc::unnormalized(&v)
    } else {
        VectorDoc::normalized(&v)
    };
    if json {
        return Ok(Outcome::Ok(to_json_string(&doc)?));
    }
    let mut out = String::new();
    let name = if args.unnormalized { "ω" } else { "ω~" };
    let _ = writeln!(out, "{name}[{a}] at n = {n}, p = {}", args.p);
    if doc.zero {
        let _ = writeln!(out, "0");
    } else {
        for term in doc.terms.term_strings() {
            let _ = writeln!(out, "{term}");
        }
    }
    Ok(Outcome::Ok(out))
}

fn cmd_act(args: &ActArgs, json: bool) -> CmdResult {
    let gen: GeneratorKind = args
        .generator
        .parse()
        .map_err(|e: Error| usage(e.to_string()))?;
    if args.index == 0 {
        return Err(usage("the generator index is 1-based"));
    }
    let a = parse_tableau(&args.tableau)?;
    let mut cache = ContextCache::<Int>::new();

    if !gen.on_polynomial_module() {
        let Some(n) = args.n else {
            return Err(usage("B+ and B- act on the induced module; pass --n"));
        };
        if args.show_matrix {
            return Err(usage(
                "--show-matrix applies to X and D, whose tables come from one extraction",
            ));
        }
        let table = cache.act_verma(gen, args.index, &a, n, args.p)?;
        if json {
            let doc = ActionDoc::induced(table, n);
            return Ok(Outcome::Ok(to_json_string(&doc)?));
        }
        return Ok(Outcome::Ok(format!("{table}\n")));
    }

    if args.n.is_some() {
        return Err(usage("--n applies to B+ and B-; X and D infer the colors"));
    }
    let table = cache.act(gen, args.index, &a, args.p)?;
    let extraction = if args.show_matrix {
        extraction_behind(&mut cache, gen, args.index, &a, args.p)?
    } else {
        None
    };
    if json {
        let doc = ActionDoc::polynomial(table, extraction);
        return Ok(Outcome::Ok(to_json_string(&doc)?));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{table}");
    if args.show_matrix {
        match extraction {
            Some(doc) => {
                let _ = writeln!(
                    out,
                    "target weight {}",
                    WeightVector::new(doc.weight.clone())
                );
                for (k, b) in doc.tableaux.iter().enumerate() {
                    let _ = writeln!(out, "  A_{} = {b}", k + 1);
                }
                let _ = writeln!(out, "U =");
                let _ = writeln!(out, "{}", doc.matrix);
                let _ = writeln!(out, "f = ({})", doc.extraction.join(", "));
                let _ = writeln!(out, "g = ({})", doc.solution.join(", "));
            }
            None => {
                let _ = writeln!(out, "image is zero; no extraction to show");
            }
        }
    }
    Ok(Outcome::Ok(out))
}

/// Recomputes the extraction data behind a polynomial-module table: the
/// image polynomial, its pairing vector and the back-substituted
/// coordinates at the target weight. `None` when the image is zero because
/// the target weight does not exist.
fn extraction_behind(
    cache: &mut ContextCache<Int>,
    gen: GeneratorKind,
    i: usize,
    a: &Ssyt,
    p: usize,
) -> Result<Option<ExtractionDoc<Int>>, Failure> {
    let n = (a.max_entry() as usize).max(i);
    let mu = a.weight(n)?;
    let target = match gen {
        GeneratorKind::X => Some(mu.raised(i)?),
        GeneratorKind::D => mu.lowered(i)?,
        _ => unreachable!("polynomial-module callers only"),
    };
    let Some(target) = target else {
        return Ok(None);
    };
    let source = build_omega_sequential::<Int>(a, n, p)?;
    let image = match gen {
        GeneratorKind::X => source.value().apply_x(i)?,
        _ => source.value().apply_d(i)?,
    };
    let ctx = cache.get(p, &target)?;
    let f = ctx.f_vector(&image)?;
    let g = ctx.expand_in_basis(&image)?;
    Ok(Some(ExtractionDoc::new(&ctx, &f, &g)))
}

fn cmd_matrix(args: &MatrixArgs, json: bool) -> CmdResult {
    let mu = parse_weight(&args.weight, args.n)?;
    let ctx = IntBasisContext::new(args.p, &mu)?;
    if json {
        let doc = MatrixDoc::new(&ctx);
        return Ok(Outcome::Ok(to_json_string(&doc)?));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "U at weight {} (p = {}): {} tableaux",
        mu,
        args.p,
        ctx.dim()
    );
    for (k, a) in ctx.tableaux().iter().enumerate() {
        let _ = writeln!(out, "  A_{} = {a}", k + 1);
    }
    let _ = writeln!(out, "{}", ctx.matrix());
    Ok(Outcome::Ok(out))
}

fn cmd_verify(args: &VerifyArgs, budget: u64, json: bool) -> CmdResult {
    let mut opts = VerifyOptions {
        budget,
        ..VerifyOptions::default()
    };
    if let Some(n) = args.n {
        opts.n_max = n;
    }
    if let Some(p) = &args.p {
        opts.p_list = parse_u32_list("p", p)?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        if opts.p_list.is_empty() {
            return Err(usage("--p expects at least one order"));
        }
    }
    if let Some(w) = args.max_weight {
        opts.max_weight = w;
    }
    if let Some(c) = args.cases {
        opts.cases = c;
    }
    if let Some(k) = args.max_klm {
        opts.max_klm = k;
    }
    if let Some(s) = args.seed {
        opts.seed = s;
    }
    let reports = if args.suite == "all" {
        run_all(&opts)?
    } else if SUITE_NAMES.contains(&args.suite.as_str()) {
        vec![run_suite(&args.suite, &opts)?]
    } else {
        return Err(usage(format!(
            "unknown suite {:?} (expected all or one of {})",
            args.suite,
            SUITE_NAMES.join(", ")
        )));
    };
    let passed = reports.iter().all(SuiteReport::passed);
    let text = if json {
        to_json_string(&VerifyDoc::new(opts, reports))?
    } else {
        let mut out = String::new();
        for r in &reports {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{}: {} checks, {verdict}", r.suite, r.checks);
            for f in r.failures.iter().take(10) {
                let _ = writeln!(out, "  counterexample: {f}");
            }
            if r.failures.len() > 10 {
                let _ = writeln!(out, "  … and {} more", r.failures.len() - 10);
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if passed {
                "all checks passed"
            } else {
                "VERIFICATION FAILED"
            }
        );
        out
    };
    if passed {
        Ok(Outcome::Ok(text))
    } else {
        Ok(Outcome::VerifyFailed(text))
    }
}

fn execute(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args, cli.json),
        Command::Vector(args) => cmd_vector(args, cli.json),
        Command::Act(args) => cmd_act(args, cli.json),
        Command::Matrix(args) => cmd_matrix(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.budget, cli.json),
    }
}

fn deliver(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Domain(Error::Parse(format!("cannot write {path:?}: {e}")))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(Outcome::Ok(text)) => match deliver(&text, cli.output.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(Failure::Domain(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            Err(Failure::Usage(m)) => {
                eprintln!("usage error: {m}");
                ExitCode::from(1)
            }
        },
        Ok(Outcome::VerifyFailed(text)) => {
            let _ = deliver(&text, cli.output.as_ref());
            ExitCode::from(3)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
