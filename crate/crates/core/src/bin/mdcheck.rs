use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use manin_denef::campaign::{self, CampaignConfig, Status, Suite};
use manin_denef::curve::EndoTable;
use manin_denef::encoder::{self, Dialect, Format};
use manin_denef::Result;

#[derive(Parser)]
#[command(name = "mdcheck", version, about = "Exact checks of the curve identities and the Diophantine encoder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write certificates.
    Verify {
        /// Comma-separated suites (curve, orders, series, uniformization, encoder) or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 12)]
        max_n: i64,
        #[arg(long, default_value_t = 32)]
        trunc: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificate file (JSON array).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Flip one sign in the addition law (mutation test).
        #[arg(long)]
        tamper: bool,
    },
    /// Print computed objects.
    Compute {
        #[command(subcommand)]
        what: ComputeWhat,
    },
    /// Encode a Diophantine system as a positive-existential formula.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        dialect: DialectArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Summarize a certificate file.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ComputeWhat {
    /// The pair n·(z, 1) = (x_n, y_n).
    Xn {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Specialize to δ = −2.
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DialectArg {
    Meromorphic,
    Analytic,
    EntireCm,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Dialect {
        match d {
            DialectArg::Meromorphic => Dialect::Meromorphic,
            DialectArg::Analytic => Dialect::Analytic,
            DialectArg::EntireCm => Dialect::EntireCm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

fn emit(out: Option<&PathBuf>, s: &str) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, s)?),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, max_n, trunc, seed, out, tamper } => {
            let cfg = CampaignConfig { suites: Suite::parse_list(&suite)?, max_n, trunc, seed, tamper };
            cfg.validate()?;
            for w in cfg.warnings() {
                eprintln!("warning: {w}");
            }
            let certs = campaign::run_campaign(&cfg)?;
            if let Some(p) = &out {
                campaign::write_certificates(p, &certs)?;
            }
            print!("{}", campaign::report(&certs));
            let failed = certs.iter().any(|c| c.status == Status::Fail);
            Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::Compute { what: ComputeWhat::Xn { n, tilde, format } } => {
            let table = EndoTable::generic();
            let (x, y) = if tilde {
                table.specialize_tilde(n)?
            } else {
                let p = table.get(n)?;
                (p.x.clone(), p.y.clone())
            };
            let name = if tilde { "~" } else { "" };
            let s = match Format::from(format) {
                Format::Text => format!("x{name}_{n} = {x}\ny{name}_{n} = {y}\n"),
                Format::Json => {
                    let v = json!({ "n": n, "tilde": tilde, "x": x.to_string(), "y": y.to_string() });
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            print!("{s}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode { input, dialect, out, format } => {
            let sys = encoder::parse_diophantine(&std::fs::read_to_string(&input)?)?;
            let f = encoder::encode_system(&sys, dialect.into());
            emit(out.as_ref(), &encoder::render_formula(&f, format.into()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { input } => {
            print!("{}", campaign::report(&campaign::read_certificates(&input)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
