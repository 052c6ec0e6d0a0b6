use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hsclass::job::{hilbert_rows, render_text, render_verification, run_job, JobFile};
use hsclass::wpoly::{count_factors_one_plus_tc, FieldSpec};
use hsclass::Error;

#[derive(Parser)]
#[command(name = "hsclass", version, about = "Divisor class groups of graded hypersurfaces z^n - g")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the class group and write the full report.
    Classgroup {
        job: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the pipeline and print a pass/fail table of every check.
    Verify { job: PathBuf },
    /// Hilbert function of R from the closed-form series and from the monomial basis.
    Hilbert {
        job: PathBuf,
        #[arg(long)]
        depth: u64,
    },
    /// Number of irreducible factors of 1 + t^c over a field.
    FactorsCount {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        field: String,
    },
}

fn load(path: &PathBuf) -> Result<JobFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidJob(format!("cannot read {}: {e}", path.display())))?;
    JobFile::from_json(&text)
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e} ({})", e.code());
    ExitCode::from(if e.is_hypothesis_rejection() { 2 } else { 1 })
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Classgroup { job, format } => {
            let job = match load(&job) {
                Ok(j) => j,
                Err(e) => return fail(&e),
            };
            let report = run_job(&job);
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", render_text(&report)),
            }
            exit(report.exit_code)
        }
        Command::Verify { job } => {
            let job = match load(&job) {
                Ok(j) => j,
                Err(e) => return fail(&e),
            };
            let report = run_job(&job);
            if let Some(v) = &report.verification {
                print!("{}", render_verification(v));
            }
            if let Some(e) = &report.error {
                println!("error: {} ({})", e.message, e.code);
            }
            exit(report.exit_code)
        }
        Command::Hilbert { job, depth } => {
            let job = match load(&job) {
                Ok(j) => j,
                Err(e) => return fail(&e),
            };
            let hs = match job.hypersurface().1 {
                Ok(hs) => hs,
                Err(e) => return fail(&e),
            };
            let mut out = format!("{:>6}  {:>12}  {:>12}\n", "degree", "series", "basis");
            let mut agree = true;
            for row in hilbert_rows(&hs, depth) {
                let ok = row.series.0 == row.basis.into();
                agree &= ok;
                let _ = writeln!(
                    out,
                    "{:>6}  {:>12}  {:>12}{}",
                    row.degree,
                    row.series.0,
                    row.basis,
                    if ok { "" } else { "  MISMATCH" }
                );
            }
            print!("{out}");
            if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::FactorsCount { c, field } => {
            let field: FieldSpec = match field.parse() {
                Ok(f) => f,
                Err(e) => return fail(&e),
            };
            match count_factors_one_plus_tc(c, &field) {
                Ok(fc) => {
                    if fc.repeated {
                        println!("{} (with repeated factors)", fc.count);
                    } else {
                        println!("{}", fc.count);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            // Exit code 2 is reserved for hypothesis rejections.
            if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
