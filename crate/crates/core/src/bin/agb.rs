use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use agbound::bounds::{bound_table, improved_profile, LambdaProfile, DEFAULT_GHW_CAP};
use agbound::evalcode::{code, empirical_hstar, hermitian_table, measured_dimensions};
use agbound::oracle::{verify_table, SearchBudget, VerifyOptions};
use agbound::{Error, HStar, Mode, NumericalSemigroup, Result};

#[derive(Parser)]
#[command(name = "agb", version, about = "Distance bounds for one-point AG codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, gaps and elements of a numerical semigroup.
    Semigroup {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<i64>,
        /// List elements up to this bound (default: the conductor).
        #[arg(long)]
        up_to: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Build and validate a set of pole orders H*.
    Hstar(HStarArgs),
    /// Per-index bound table.
    Bounds(HStarArgs),
    /// Generalized Hamming weight bound d*_r(i).
    Ghw {
        #[command(flatten)]
        hs: HStarArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = DEFAULT_GHW_CAP)]
        cap: u64,
    },
    /// Improved code of designed distance delta.
    Improved {
        #[command(flatten)]
        hs: HStarArgs,
        #[arg(long)]
        delta: usize,
    },
    /// Built-in curves.
    Curve {
        #[command(subcommand)]
        curve: CurveCommand,
    },
    /// Check the bounds against brute force on a built-in curve.
    Verify {
        #[command(subcommand)]
        curve: VerifyCommand,
    },
}

#[derive(Args)]
struct HStarArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::EquivDivisor)]
    mode: ModeArg,
    /// JSON input for explicit ({"n", "members"}) or abundance ({"n", "ell"}) modes.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    EquivDivisor,
    IsometryDual,
    Explicit,
    Abundance,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// y^q0 + y = x^(q0+1) over GF(q0^2).
    Hermitian {
        #[arg(long)]
        q0: u32,
        #[arg(long)]
        emit_table: Option<PathBuf>,
        #[arg(long, requires = "emit_matrix")]
        m: Option<i64>,
        #[arg(long, requires = "m")]
        emit_matrix: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    Hermitian {
        #[arg(long)]
        q0: u32,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = 1)]
        ghw: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitFile {
    n: usize,
    members: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbundanceFile {
    n: usize,
    ell: Vec<i64>,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::SchemaError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::SchemaError(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::SchemaError(format!("{}: {e}", path.display())))
}

fn build_hstar(args: &HStarArgs) -> CliResult<HStar> {
    let s = NumericalSemigroup::from_generators(&args.gens)?;
    let need_n = || args.n.ok_or_else(|| Failure::Usage("--n is required for this mode".into()));
    let need_file = || {
        args.file
            .as_deref()
            .ok_or_else(|| Failure::Usage("--file is required for this mode".into()))
    };
    let check_n = |file_n: usize| match args.n {
        Some(n) if n != file_n => Err(Failure::Usage(format!("--n {n} disagrees with n = {file_n} in the file"))),
        _ => Ok(file_n),
    };
    Ok(match args.mode {
        ModeArg::EquivDivisor => HStar::from_equiv_divisor(&s, need_n()?)?,
        ModeArg::IsometryDual => HStar::from_isometry_dual(&s, need_n()?)?,
        ModeArg::Explicit => {
            let f: ExplicitFile = read_json(need_file()?)?;
            HStar::from_explicit(&s, check_n(f.n)?, &f.members)?
        }
        ModeArg::Abundance => {
            let f: AbundanceFile = read_json(need_file()?)?;
            HStar::from_abundance(&s, check_n(f.n)?, &f.ell)?
        }
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

#[derive(Serialize)]
struct HStarOut<'a> {
    n: usize,
    mode: Mode,
    members: &'a [i64],
    isometry_dual: bool,
    pi: i64,
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Semigroup { gens, up_to, json } => {
            let s = NumericalSemigroup::from_generators(&gens)?;
            let bound = up_to.unwrap_or(s.conductor());
            let elements = s.elements_up_to(bound);
            if json {
                print_json(&json!({
                    "generators": s.generators(),
                    "genus": s.genus(),
                    "gaps": s.gaps(),
                    "frobenius": s.frobenius(),
                    "symmetric": s.is_symmetric(),
                    "elements": elements,
                }));
            } else {
                println!("generators: {}", join(s.generators()));
                println!("genus: {}", s.genus());
                println!("gaps: {}", join(s.gaps()));
                println!("frobenius: {}", s.frobenius());
                println!("symmetric: {}", s.is_symmetric());
                println!("elements up to {bound}: {}", join(&elements));
            }
        }
        Command::Hstar(args) => {
            let hs = build_hstar(&args)?;
            let out = HStarOut {
                n: hs.n(),
                mode: hs.mode(),
                members: hs.members(),
                isometry_dual: hs.is_isometry_dual(),
                pi: hs.pi(),
            };
            if args.json {
                print_json(&out);
            } else {
                println!("n: {}", out.n);
                println!("mode: {}", out.mode);
                println!("members: {}", join(out.members));
                println!("isometry_dual: {}", out.isometry_dual);
                println!("pi: {}", out.pi);
            }
        }
        Command::Bounds(args) => {
            let hs = build_hstar(&args)?;
            let table = bound_table(&hs);
            if args.json {
                print_json(&table);
            } else {
                let ord = hs.is_isometry_dual();
                print!("{:>5} {:>6} {:>7} {:>6} {:>6}", "i", "m_i", "#L*_i", "d*", "goppa");
                println!("{}", if ord { format!(" {:>6}", "d_ord") } else { String::new() });
                for row in &table.rows {
                    print!(
                        "{:>5} {:>6} {:>7} {:>6} {:>6}",
                        row.i, row.m_i, row.lambda_count, row.d_star, row.goppa
                    );
                    println!("{}", row.d_ord.map_or(String::new(), |d| format!(" {d:>6}")));
                }
            }
        }
        Command::Ghw { hs, r, i, cap } => {
            let h = build_hstar(&hs)?;
            let n = h.n();
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, max: n }.into());
            }
            let bound = LambdaProfile::new(&h).ghw_bound(i, r, cap)?;
            if hs.json {
                print_json(&json!({ "r": r, "i": i, "bound": bound }));
            } else {
                println!("d*_{r}({i}) = {bound}");
            }
        }
        Command::Improved { hs, delta } => {
            let h = build_hstar(&hs)?;
            let p = improved_profile(&h, delta)?;
            if hs.json {
                print_json(&p);
            } else {
                println!("delta: {}", p.delta);
                println!("dimension: {}", p.dimension);
                println!("monotone: {}", p.monotone);
                println!("indices: {}", join(&p.indices));
            }
        }
        Command::Curve {
            curve:
                CurveCommand::Hermitian {
                    q0,
                    emit_table,
                    m,
                    emit_matrix,
                    json,
                },
        } => {
            let t = hermitian_table(q0)?;
            if let Some(path) = &emit_table {
                t.save(path)?;
            }
            if let (Some(m), Some(path)) = (m, &emit_matrix) {
                let c = code(&t, m)?;
                let text = serde_json::to_string_pretty(&c.generator.to_file()).expect("serializable");
                write_file(path, &text)?;
            }
            let hs = empirical_hstar(&t)?;
            let dims = measured_dimensions(&t);
            let f = t.field();
            if json {
                print_json(&json!({
                    "field": { "p": f.p(), "k": f.k() },
                    "n": t.n(),
                    "genus": t.genus(),
                    "semigroup_generators": t.semigroup().generators(),
                    "dimensions": dims,
                    "hstar": hs.members(),
                    "isometry_dual": hs.is_isometry_dual(),
                }));
            } else {
                println!("field: GF({}^{})", f.p(), f.k());
                println!("n: {}", t.n());
                println!("genus: {}", t.genus());
                println!("semigroup: <{}>", join(t.semigroup().generators()));
                println!("dimensions: {}", join(&dims));
                println!("hstar: {}", join(hs.members()));
                println!("isometry_dual: {}", hs.is_isometry_dual());
            }
        }
        Command::Verify {
            curve: VerifyCommand::Hermitian { q0, max_dim, ghw, json },
        } => {
            let t = hermitian_table(q0)?;
            let opts = VerifyOptions { max_dim, ghw };
            let report = verify_table(&t, &opts, &SearchBudget::from_env())?;
            if json {
                print_json(&report);
            } else {
                println!("n: {}  genus: {}  hstar: {}", report.n, report.genus, join(&report.hstar));
                for c in &report.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    println!("{tag} {}  [{}]", c.label, c.detail);
                }
                for s in &report.skipped {
                    println!("SKIP {s}");
                }
                let failed = report.checks.iter().filter(|c| !c.passed).count();
                println!("{} checks, {failed} failed, {} skipped", report.checks.len(), report.skipped.len());
            }
            if !report.all_passed() {
                return Err(Error::InvariantViolation("a bound exceeded the true value".into()).into());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
