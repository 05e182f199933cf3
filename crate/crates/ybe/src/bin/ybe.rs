//! Thin command-line front end: generate family instances, verify
//! them, inspect permutation groups and braces, and keep a catalog of
//! results.
//!
//! Exit codes: 0 all requested checks passed, 1 a check failed,
//! 2 usage or parse error, 3 io error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ybe::catalog::{Catalog, CatalogEntry, CatalogFilter, CATALOG_ENV_VAR};
use ybe::certificate::{run_checks, Certificate, Check};
use ybe::families;
use ybe::group::PermGroup;
use ybe::solution::Solution;
use ybe::structure;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ybe",
    version,
    about = "construct and verify involutive set-theoretic solutions of the Yang-Baxter equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family instance as solution JSON
    Gen(GenArgs),
    /// Run verification checks on a solution file and print a certificate
    Verify(VerifyArgs),
    /// Print permutation-group facts for a solution file
    Group { input: PathBuf },
    /// Compute the left brace on the permutation group of a solution
    Brace(BraceArgs),
    /// Maintain the append-only result catalog
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
}

#[derive(Args)]
struct GenArgs {
    /// cyclic | remark22 | theorem23 | remark31 | theorem_main | theorem42
    family: String,
    #[arg(short = 'm', long)]
    m: Option<u64>,
    #[arg(long)]
    m1: Option<u64>,
    #[arg(long)]
    m2: Option<u64>,
    #[arg(short = 'n', long)]
    n: Option<u64>,
    #[arg(short = 'p', long)]
    p: Option<u64>,
    #[arg(short = 'q', long)]
    q: Option<u64>,
    /// Output path (stdout when omitted)
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Comma-separated checks: ybe,involutive,nondegenerate,
    /// indecomposable,irretractable,simple,mpl,group,singular
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Worker threads for the principal-congruence sweep
    #[arg(long, default_value_t = 1)]
    par: usize,
    /// Also write the certificate to this path
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BraceArgs {
    input: PathBuf,
    /// Output path for the brace JSON (stdout when omitted)
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
    /// Output path for the coset-to-permutation sidecar map
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogOp {
    /// Append a (solution, certificate) pair as one catalog line
    Append {
        solution: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Print every catalog entry
    List {
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Print entries matching the given filters
    Query {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        cardinality: Option<usize>,
        #[arg(long)]
        simple: Option<bool>,
        #[arg(long)]
        indecomposable: Option<bool>,
        #[arg(long)]
        irretractable: Option<bool>,
        /// Keep only entries with a nonempty singular-prime list
        #[arg(long)]
        singular: bool,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Group { input } => cmd_group(&input),
        Command::Brace(args) => cmd_brace(args),
        Command::Catalog { op } => cmd_catalog(op),
    };
    ExitCode::from(code)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_solution(path: &Path) -> Result<Solution, u8> {
    let text = std::fs::read_to_string(path).map_err(|err| {
        eprintln!("error: cannot read {}: {err}", path.display());
        EXIT_IO
    })?;
    Solution::from_json_str(&text).map_err(|err| {
        eprintln!("error: {}: {err}", path.display());
        EXIT_USAGE
    })
}

fn cmd_gen(args: GenArgs) -> u8 {
    let need = |value: Option<u64>, name: &str| {
        value.ok_or_else(|| format!("family {:?} requires --{name}", args.family))
    };
    let built = (|| -> Result<Solution, String> {
        let solution = match args.family.as_str() {
            "cyclic" => families::cyclic_solution(need(args.n, "n")?),
            "remark22" => families::remark22(
                need(args.m, "m")?,
                need(args.m1, "m1")?,
                need(args.m2, "m2")?,
            ),
            "remark31" => families::remark31(need(args.m, "m")?),
            "theorem23" => families::theorem23(need(args.m, "m")?, need(args.n, "n")?),
            "theorem_main" => {
                let n =
                    u32::try_from(need(args.n, "n")?).map_err(|_| "n out of range".to_string())?;
                families::theorem_main(need(args.p, "p")?, n)
            }
            "theorem42" => {
                let n =
                    u32::try_from(need(args.n, "n")?).map_err(|_| "n out of range".to_string())?;
                families::theorem42(need(args.p, "p")?, need(args.q, "q")?, n)
            }
            other => return Err(format!("unknown family {other:?}")),
        };
        solution.map_err(|err| err.to_string())
    })();
    match built {
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
        Ok(solution) => match emit(&args.out, &solution.to_json_string()) {
            Ok(()) => EXIT_OK,
            Err(err) => {
                eprintln!("error: cannot write output: {err}");
                EXIT_IO
            }
        },
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let solution = match load_solution(&args.input) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let checks: Vec<Check> = match &args.checks {
        None => Check::DEFAULT.to_vec(),
        Some(names) => {
            let mut out = Vec::new();
            for name in names {
                match Check::parse(name) {
                    Some(check) => out.push(check),
                    None => {
                        eprintln!("error: unknown check {name:?}");
                        return EXIT_USAGE;
                    }
                }
            }
            out
        }
    };
    let outcome = run_checks(&solution, &checks, args.par);
    let text = outcome.certificate.to_json_string();
    if let Err(err) = emit(&args.out, &text) {
        eprintln!("error: cannot write certificate: {err}");
        return EXIT_IO;
    }
    if args.out.is_some() {
        // certificate went to the file; still show it on stdout
        println!("{text}");
    }
    if outcome.all_passed() {
        EXIT_OK
    } else {
        for failure in &outcome.failures {
            eprintln!("check failed: {failure}");
        }
        EXIT_CHECK_FAILED
    }
}

fn cmd_group(input: &Path) -> u8 {
    let solution = match load_solution(input) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let group = PermGroup::from_generators(solution.n(), solution.sigma().to_vec())
        .expect("solution rows share the degree");
    let transitive = group.is_transitive().expect("generators are well-formed");
    let order = group.order();
    let p_for = ybe::arith::distinct_prime_factors_big(order)
        .filter(|primes| primes.len() == 1)
        .map(|primes| primes[0]);
    let body = serde_json::json!({
        "schema": "group/1",
        "n": solution.n(),
        "order": order.to_string(),
        "p_group_for": p_for,
        "transitive": transitive,
        "base": group.base(),
    });
    println!("{body}");
    EXIT_OK
}

fn cmd_brace(args: BraceArgs) -> u8 {
    let solution = match load_solution(&args.input) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let pb = match structure::build_permutation_brace(&solution) {
        Ok(pb) => pb,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_CHECK_FAILED;
        }
    };
    if !pb.brace.verify_brace()
        || !structure::check_lambda_on_generators(&solution, &pb)
        || !structure::socle_index_check(&solution, &pb)
    {
        eprintln!("error: computed brace failed its consistency checks");
        return EXIT_CHECK_FAILED;
    }
    if let Err(err) = emit(&args.out, &pb.brace.to_json_string()) {
        eprintln!("error: cannot write brace: {err}");
        return EXIT_IO;
    }
    if let Some(map_path) = &args.map {
        if let Err(err) = std::fs::write(map_path, format!("{}\n", pb.sidecar_json())) {
            eprintln!("error: cannot write sidecar map: {err}");
            return EXIT_IO;
        }
    }
    EXIT_OK
}

fn catalog_at(flag: Option<PathBuf>) -> Result<Catalog, u8> {
    let path = flag.or_else(|| std::env::var_os(CATALOG_ENV_VAR).map(PathBuf::from));
    match path {
        Some(path) => Ok(Catalog::open(path)),
        None => {
            eprintln!("error: no catalog path; pass --catalog or set {CATALOG_ENV_VAR}");
            Err(EXIT_USAGE)
        }
    }
}

fn cmd_catalog(op: CatalogOp) -> u8 {
    match op {
        CatalogOp::Append {
            solution,
            certificate,
            catalog,
        } => {
            let catalog = match catalog_at(catalog) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let solution = match load_solution(&solution) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let cert_text = match std::fs::read_to_string(&certificate) {
                Ok(text) => text,
                Err(err) => {
                    eprintln!("error: cannot read {}: {err}", certificate.display());
                    return EXIT_IO;
                }
            };
            let cert = match Certificate::from_json_str(&cert_text) {
                Ok(cert) => cert,
                Err(err) => {
                    eprintln!("error: {}: {err}", certificate.display());
                    return EXIT_USAGE;
                }
            };
            match catalog.append(&CatalogEntry::new(&solution, cert)) {
                Ok(()) => EXIT_OK,
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_IO
                }
            }
        }
        CatalogOp::List { catalog } => {
            let catalog = match catalog_at(catalog) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match catalog.entries() {
                Ok(entries) => {
                    for entry in entries {
                        println!("{}", entry.to_json_line());
                    }
                    EXIT_OK
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_IO
                }
            }
        }
        CatalogOp::Query {
            family,
            cardinality,
            simple,
            indecomposable,
            irretractable,
            singular,
            catalog,
        } => {
            let catalog = match catalog_at(catalog) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let filter = CatalogFilter {
                family,
                cardinality,
                simple,
                indecomposable,
                irretractable,
                singular,
            };
            match catalog.query(&filter) {
                Ok(entries) => {
                    for entry in entries {
                        println!("{}", entry.to_json_line());
                    }
                    EXIT_OK
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    EXIT_IO
                }
            }
        }
    }
}
