//! `equivk`: compute equivariant K-theory of a diagram file, or run the lemma checks.
//!
//! Exit status is 0 on success, 1 when a certificate or lemma check fails, and 2 when the
//! input cannot be read or is invalid.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equivk::format::{compute_report, example, ComputeOptions, DiagramFile, EXAMPLES};
use equivk::verify::{self, LemmaReport, LEMMA_GROUPS, LEMMA_IDS};
use equivk::Error;

/// Directory that receives a copy of every report, when set.
const REPORT_DIR_VAR: &str = "EQUIVK_REPORT_DIR";

#[derive(Parser)]
#[command(name = "equivk", version, about = "Equivariant K-theory of cohomogeneity-one spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute K⁰ and K¹ of a diagram or mapping-torus file.
    Compute {
        /// A TOML file, or `example:NAME` for a bundled example.
        input: String,
        /// Override the window radius.
        #[arg(long, value_name = "N")]
        window_radius: Option<i64>,
        /// Coefficients: `Z`, `Z[1/L]` or just `L`.
        #[arg(long, value_name = "L", value_parser = parse_coeff)]
        coeff: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Skip the K⁰-action table.
        #[arg(long)]
        no_action: bool,
    },
    /// Run a lemma check by id, or a group (`all`, `cosets`, `lattice`, `branching`, `dihedral`).
    Verify {
        /// A lemma id such as `branching-g2`, or a group id; unknown ids list the valid ones.
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include wall-clock runtimes, which makes the output nondeterministic.
        #[arg(long)]
        timings: bool,
    },
    /// List the bundled examples, or print one.
    Examples { name: Option<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_coeff(s: &str) -> Result<i64, String> {
    let t = s.trim();
    let n = if t == "Z" {
        "1"
    } else if let Some(inner) = t.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
        inner
    } else {
        t
    };
    match n.parse::<i64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected Z, Z[1/L] or a positive integer L, got {s:?}")),
    }
}

enum Failure {
    Check(String),
    Input(String),
}

fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Semantic(_)
            | Error::InvalidLocalization(_)
            | Error::InvalidRootData(_)
            | Error::LatticeNotStable(_)
            | Error::LatticeMismatch(_)
            | Error::NotSubsystem(_)
            | Error::DimensionMismatch(_)
            | Error::Unsupported(_)
            | Error::NotDominant(_)
    )
}

fn classify(e: Error) -> Failure {
    if input_error(&e) {
        Failure::Input(e.to_string())
    } else {
        Failure::Check(e.to_string())
    }
}

fn read_input(input: &str) -> Result<(String, String), Failure> {
    if let Some(name) = input.strip_prefix("example:") {
        let src = example(name).ok_or_else(|| Failure::Input(format!("unknown example {name:?}")))?;
        return Ok((name.to_string(), src.to_string()));
    }
    let src = std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
    Ok((input.to_string(), src))
}

fn save(file_name: &str, contents: &str) -> Result<(), Failure> {
    let Some(dir) = std::env::var_os(REPORT_DIR_VAR) else { return Ok(()) };
    let dir = PathBuf::from(dir);
    std::fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(file_name);
    std::fs::write(&path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn compute(
    input: &str,
    radius: Option<i64>,
    localize: Option<i64>,
    format: Format,
    no_action: bool,
) -> Result<(), Failure> {
    let (origin, src) = read_input(input)?;
    let file = DiagramFile::parse(&src).map_err(|e| Failure::Input(format!("{origin}:{e}")))?;
    let loaded = file.load().map_err(|e| Failure::Input(format!("{origin}: {e}")))?;
    if radius.is_some_and(|r| r < 0) {
        return Err(Failure::Input("window radius must be nonnegative".into()));
    }
    let opts = ComputeOptions { radius, localize, skip_action: no_action };
    let report = compute_report(&loaded, &opts).map_err(classify)?;
    let json = report.to_json();
    let stem = Path::new(&loaded.file.name).file_name().map_or("report".into(), |s| s.to_string_lossy().into_owned());
    save(&format!("{stem}.json"), &json)?;
    match format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.certified {
        Ok(())
    } else {
        Err(Failure::Check(format!("{}: not certified in this window", loaded.file.name)))
    }
}

fn run_verify(id: &str, format: Format, timings: bool) -> Result<(), Failure> {
    let mut reports: Vec<LemmaReport> = verify::run(id).map_err(|_| {
        Failure::Input(format!(
            "unknown lemma id {id:?}; known ids: {}; groups: {}",
            LEMMA_IDS.join(", "),
            LEMMA_GROUPS.join(", ")
        ))
    })?;
    if !timings {
        for r in &mut reports {
            r.runtime_ms = None;
        }
    }
    let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    save(&format!("verify-{id}.json"), &json)?;
    match format {
        Format::Json => println!("{json}"),
        Format::Text => {
            for r in &reports {
                match r.runtime_ms {
                    Some(ms) => println!("{:<26} {} ({ms} ms)", r.lemma_id, r.status),
                    None => println!("{:<26} {}", r.lemma_id, r.status),
                }
            }
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.status.is_success()).map(|r| r.lemma_id.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn examples(name: Option<&str>) -> Result<(), Failure> {
    match name {
        None => {
            for (n, src) in EXAMPLES {
                let desc = DiagramFile::parse(src).map(|f| f.description).unwrap_or_default();
                println!("{n:<16} {desc}");
            }
            Ok(())
        }
        Some(n) => {
            let src = example(n).ok_or_else(|| Failure::Input(format!("unknown example {n:?}")))?;
            print!("{src}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { input, window_radius, coeff, format, no_action } => {
            compute(input, *window_radius, *coeff, *format, *no_action)
        }
        Command::Verify { id, format, timings } => run_verify(id, *format, *timings),
        Command::Examples { name } => examples(name.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("equivk: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("equivk: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_syntax() {
        assert_eq!(parse_coeff("Z"), Ok(1));
        assert_eq!(parse_coeff("Z[1/2]"), Ok(2));
        assert_eq!(parse_coeff("6"), Ok(6));
        assert!(parse_coeff("0").is_err());
        assert!(parse_coeff("Q").is_err());
    }
}
