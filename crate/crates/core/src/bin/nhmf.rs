//! Command line front end. JSON lines on stdout, JSON error objects on stderr.
//!
//! Exit codes: 0 ok, 1 structural failure, 2 truncation too small, 3 parse
//! error, 4 not in space, 5 domain error.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nhmf::json::{decomposition_from_json, decomposition_to_json, form_from_json, form_to_json};
use nhmf::qseries::format_rational;
use nhmf::structure::{cuspidal_spanning_set, Decomposer};
use nhmf::{
    dim_n, e2_module_structure, eisenstein_split, named_form, petersson_constant, spanning_set,
    verma_report, Complex64, Error, NearlyForm, Result,
};

#[derive(Parser)]
#[command(
    name = "nhmf",
    version,
    about = "Nearly holomorphic modular forms of level one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Raise,
    Lower,
    Casimir,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generators of N_k^p (or of its cusp forms) as form documents.
    Basis {
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        prec: usize,
        #[arg(long)]
        cuspidal: bool,
    },
    /// Apply raise, lower or casimir to each form read from stdin.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
    },
    /// Decompose each form read from stdin.
    Decompose {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        cuspidal: bool,
    },
    /// Split each decomposition read from stdin into cuspidal and Eisenstein parts.
    Split,
    /// dim N_k^p.
    Dim {
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long)]
        degree: usize,
    },
    /// Petersson ladder constant c_{k,v}.
    Pconst {
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long)]
        v: usize,
    },
    /// Report on the truncated Verma module N(lambda).
    Verma {
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long)]
        depth: usize,
    },
    /// Report on the module generated by E2*.
    E2module {
        #[arg(long, default_value_t = 30)]
        depth: usize,
    },
    /// Evaluate each form read from stdin at tau ("x+yi").
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Emit a named form: one, e2, e2star, delta, or e<k> for k >= 4 even.
    Form {
        #[arg(long)]
        name: String,
        #[arg(long)]
        prec: usize,
    },
    /// Multiply the forms read from stdin.
    Mul,
}

fn read_documents() -> Result<Vec<String>> {
    let stdin = io::stdin();
    let mut out = Vec::new();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        if !line.trim().is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn read_forms() -> Result<Vec<NearlyForm>> {
    read_documents()?
        .iter()
        .map(|l| form_from_json(l))
        .collect()
}

/// `"x+yi"` with decimal `x`, `y` (either sign).
fn parse_tau(text: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("malformed tau {text:?}, expected \"x+yi\""));
    let body = text.trim().strip_suffix('i').ok_or_else(bad)?;
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(bad)?;
    let decimal = |s: &str| -> Result<f64> {
        let valid = !s.is_empty()
            && s.trim_start_matches(['+', '-'])
                .chars()
                .all(|c| c.is_ascii_digit() || c == '.')
            && s.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    Ok(Complex64::new(
        decimal(&body[..split])?,
        decimal(&body[split..])?,
    ))
}

/// Decimal string with 15 significant digits.
fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp).max(0) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<()> {
    let mut emit = |line: String| {
        writeln!(out, "{line}").map_err(|e| Error::Parse(format!("writing stdout: {e}")))
    };
    match command {
        Command::Basis {
            weight,
            degree,
            prec,
            cuspidal,
        } => {
            let set = if cuspidal {
                cuspidal_spanning_set(weight, degree, prec)?
            } else {
                spanning_set(weight, degree, prec)?
            };
            for g in &set.generators {
                emit(form_to_json(&g.form))?;
            }
        }
        Command::Apply { op } => {
            for f in read_forms()? {
                let g = match op {
                    Op::Raise => f.raise(),
                    Op::Lower => f.lower(),
                    Op::Casimir => f.casimir(),
                };
                emit(form_to_json(&g))?;
            }
        }
        Command::Decompose { degree, cuspidal } => {
            for f in read_forms()? {
                if cuspidal && !f.is_cuspidal() {
                    return Err(Error::Domain("--cuspidal needs cuspidal input".into()));
                }
                let set = if cuspidal {
                    cuspidal_spanning_set(f.weight(), degree, f.truncation())?
                } else {
                    spanning_set(f.weight(), degree, f.truncation())?
                };
                emit(decomposition_to_json(&Decomposer::new(set)?.decompose(&f)?))?;
            }
        }
        Command::Split => {
            for line in read_documents()? {
                let (cusp, eis) = eisenstein_split(&decomposition_from_json(&line)?);
                let value = json!({
                    "cuspidal": serde_json::from_str::<serde_json::Value>(&decomposition_to_json(&cusp)).unwrap(),
                    "eisenstein": serde_json::from_str::<serde_json::Value>(&decomposition_to_json(&eis)).unwrap(),
                });
                emit(value.to_string())?;
            }
        }
        Command::Dim { weight, degree } => emit(dim_n(weight, degree).to_string())?,
        Command::Pconst { weight, v } => {
            emit(json!(format_rational(&petersson_constant(weight, v)?)).to_string())?
        }
        Command::Verma { lambda, depth } => {
            emit(serde_json::to_string(&verma_report(lambda, depth)).expect("serializable"))?
        }
        Command::E2module { depth } => {
            let report = e2_module_structure(depth)?;
            let mut value = serde_json::to_value(&report).expect("serializable");
            value["match"] = json!(report.is_match());
            emit(value.to_string())?;
            if !report.is_match() {
                return Err(Error::Structural(
                    "E2* module does not match N(0)^dual".into(),
                ));
            }
        }
        Command::Eval { tau } => {
            let tau = parse_tau(&tau)?;
            for f in read_forms()? {
                let v = f.evaluate(tau)?;
                emit(json!([sig15(v.re), sig15(v.im)]).to_string())?;
            }
        }
        Command::Form { name, prec } => emit(form_to_json(&named_form(&name, prec)?))?,
        Command::Mul => {
            let forms = read_forms()?;
            let Some((first, rest)) = forms.split_first() else {
                return Err(Error::Parse("mul needs at least one form on stdin".into()));
            };
            let product = rest.iter().fold(first.clone(), |acc, f| acc.mul(f));
            emit(form_to_json(&product))?;
        }
    }
    Ok(())
}

fn fail(err: &Error) -> ExitCode {
    let value = json!({ "error": err.kind(), "message": err.to_string() });
    eprintln!("{value}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&Error::Parse(e.to_string().trim().to_owned())),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0.3+1.2i").unwrap(), Complex64::new(0.3, 1.2));
        assert_eq!(parse_tau("-0.4+0.9i").unwrap(), Complex64::new(-0.4, 0.9));
        assert_eq!(parse_tau("0-1i").unwrap(), Complex64::new(0.0, -1.0));
        for bad in ["", "1.2", "i", "+i", "a+bi", "1+2j", "1e3+1i"] {
            assert!(parse_tau(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig15(1.0), "1.00000000000000");
        assert_eq!(sig15(-0.001234567890123456), "-0.00123456789012346");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(1.5e20), "1.50000000000000e20");
    }

    #[test]
    fn form_names() {
        assert_eq!(named_form("E4", 3).unwrap().weight(), 4);
        assert_eq!(named_form("delta", 3).unwrap().weight(), 12);
        assert!(named_form("e3", 3).is_err());
        assert!(named_form("x", 3).is_err());
    }
}
