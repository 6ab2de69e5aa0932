//! Command-line front end. Commands render into an [`Outcome`] so that the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::corridor::{build_corridor, render_ascii};
use crate::counting::{count_minimal_sequences, verbose_report, CountResult};
use crate::document::{to_json, FareyDocument, OutputDocument, StatsDocument};
use crate::farey::{farey_geodesics, FareyError, Fraction};
use crate::invariants::{
    binary_to_steps, binary_to_turns, parse_binary, parse_steps, steps_to_binary, ParseError,
    StepSequence,
};
use crate::oracle::{verify_up_to_with, VerificationSummary};
use crate::stats::{enumerate_counts_capped, genericity_report_capped, DEFAULT_LENGTH_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the enumeration cap of `stats` and `verify`.
pub const LENGTH_CAP_ENV: &str = "GIANT_STEPS_MAX_LENGTH";

#[derive(Debug, Parser)]
#[command(
    name = "giant-steps",
    version,
    about = "Count minimal giant-step constructions of knot tunnels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Steps,
    Binary,
    Turns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Ascii,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the minimal giant-step constructions of a tunnel.
    Gst {
        /// Binary invariants (over 0/1) or a step sequence (over D/L/R).
        input: String,
        /// Parse the input as a step sequence.
        #[arg(long)]
        steps: bool,
        #[arg(long, conflicts_with = "json")]
        verbose: bool,
        #[arg(long)]
        json: bool,
    },
    /// Translate between binary invariants, step sequences and turns.
    Convert {
        input: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Build and print the corridor of a tunnel.
    Corridor {
        input: String,
        #[arg(long, value_enum, default_value = "ascii")]
        render: Render,
    },
    /// Check the matrix count against breadth-first search on every input.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        /// Perturb the matrix count, to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Count distributions over all inputs of some lengths.
    #[command(group(ArgGroup::new("lengths").required(true).args(["length", "range"])))]
    Stats {
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
        range: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Distance and number of geodesics between two Farey vertices.
    Farey {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses binary invariants when the input is over `{0, 1}` (including the
/// empty string), a step sequence otherwise or when `force_steps` is set.
pub fn parse_tunnel(input: &str, force_steps: bool) -> Result<StepSequence, ParseError> {
    if force_steps {
        return parse_steps(input);
    }
    match input.chars().next() {
        None | Some('0' | '1') => parse_binary(input).map(|b| binary_to_steps(&b)),
        _ => parse_steps(input),
    }
}

fn describe_parse_error(input: &str, e: &ParseError) -> String {
    format!("cannot parse {input:?}: {e}")
}

fn length_cap() -> usize {
    std::env::var(LENGTH_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_LENGTH_CAP)
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Gst {
            input,
            steps,
            verbose,
            json,
        } => cmd_gst(input, *steps, *verbose, *json),
        Command::Convert { input, to } => cmd_convert(input, *to),
        Command::Corridor { input, render } => cmd_corridor(input, *render),
        Command::Verify {
            max_length,
            inject_fault,
        } => cmd_verify(*max_length, *inject_fault),
        Command::Stats {
            length,
            range,
            json,
        } => {
            let (lo, hi) = match (length, range.as_deref()) {
                (Some(n), _) => (*n, *n),
                (None, Some([a, b])) => (*a, *b),
                _ => return Outcome::usage("one of --length or --range is required"),
            };
            cmd_stats(lo, hi, *json)
        }
        Command::Farey { u, v, json } => cmd_farey(u, v, *json),
    }
}

pub fn cmd_gst(input: &str, force_steps: bool, verbose: bool, json: bool) -> Outcome {
    let steps = match parse_tunnel(input, force_steps) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(describe_parse_error(input, &e)),
    };
    let r = count_minimal_sequences(&steps);
    if json {
        Outcome::ok(to_json(&OutputDocument::new("gst", input, &r, None)))
    } else if verbose {
        Outcome::ok(verbose_report(&r))
    } else {
        Outcome::ok(format!("depth: {}\ncount: {}\n", r.depth, r.count))
    }
}

pub fn cmd_convert(input: &str, to: Target) -> Outcome {
    let steps = match parse_tunnel(input, false) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(describe_parse_error(input, &e)),
    };
    let text = match to {
        Target::Steps => steps.to_string(),
        Target::Binary | Target::Turns => match steps_to_binary(&steps) {
            Ok(b) if to == Target::Binary => b.to_string(),
            Ok(b) => binary_to_turns(&b).to_string(),
            Err(e) => return Outcome::usage(e),
        },
    };
    Outcome::ok(format!("{text}\n"))
}

pub fn cmd_corridor(input: &str, render: Render) -> Outcome {
    let steps = match parse_tunnel(input, false) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(describe_parse_error(input, &e)),
    };
    let Ok(corridor) = build_corridor(&steps) else {
        return Outcome::usage(
            "a simple tunnel has no corridor beyond the primitive triangle <pi0, mu0, tau0>",
        );
    };
    match render {
        Render::Ascii => Outcome::ok(render_ascii(&corridor)),
        Render::Json => {
            let r = count_minimal_sequences(&steps);
            Outcome::ok(to_json(&OutputDocument::new(
                "corridor",
                input,
                &r,
                Some(&corridor),
            )))
        }
    }
}

fn faulty_count(s: &StepSequence) -> CountResult {
    let mut r = count_minimal_sequences(s);
    if r.depth > 1 {
        r.count += 1u32;
    }
    r
}

pub fn verification_outcome(summary: &VerificationSummary) -> Outcome {
    let mut stdout = String::new();
    for l in &summary.lengths {
        stdout.push_str(&format!(
            "length {:>2}: {:>8} inputs, {} disagreements\n",
            l.length, l.inputs, l.failures
        ));
    }
    match summary.first_failure() {
        None => {
            let total: u64 = summary.lengths.iter().map(|l| l.inputs).sum();
            stdout.push_str(&format!("all {total} inputs agree\n"));
            Outcome::ok(stdout)
        }
        Some(b) => Outcome {
            stdout,
            stderr: format!("error: first disagreement at binary invariants '{b}'\n"),
            code: EXIT_VERIFY_FAILED,
        },
    }
}

pub fn cmd_verify(max_length: usize, inject_fault: bool) -> Outcome {
    let cap = length_cap();
    if max_length > cap {
        return Outcome::usage(format!(
            "--max-length {max_length} exceeds the cap of {cap} (set {LENGTH_CAP_ENV} to raise it)"
        ));
    }
    let summary = if inject_fault {
        verify_up_to_with(max_length, &faulty_count)
    } else {
        verify_up_to_with(max_length, &count_minimal_sequences)
    };
    verification_outcome(&summary)
}

pub fn cmd_stats(min_length: usize, max_length: usize, json: bool) -> Outcome {
    if min_length > max_length {
        return Outcome::usage(format!("empty range {min_length}..{max_length}"));
    }
    let cap = length_cap();
    let report = match genericity_report_capped(min_length, max_length, cap) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("{e} (set {LENGTH_CAP_ENV} to raise it)")),
    };
    if json {
        return Outcome::ok(to_json(&StatsDocument::new(&report.rows)));
    }
    if min_length == max_length {
        let summary = enumerate_counts_capped(min_length, cap).expect("checked above");
        Outcome::ok(summary.to_table())
    } else {
        Outcome::ok(report.to_table())
    }
}

pub fn cmd_farey(u: &str, v: &str, json: bool) -> Outcome {
    let parse = |s: &str| {
        s.parse::<Fraction>()
            .map_err(|e| format!("cannot parse {s:?}: {e}"))
    };
    let (fu, fv) = match (parse(u), parse(v)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
    };
    match farey_geodesics(&fu, &fv) {
        Ok((distance, count)) if json => {
            Outcome::ok(to_json(&FareyDocument::new(u, v, distance, &count)))
        }
        Ok((distance, count)) => Outcome::ok(format!("distance: {distance}\ncount: {count}\n")),
        Err(e @ FareyError::EqualVertices) => Outcome::usage(e),
        Err(e) => Outcome::usage(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_detection() {
        assert_eq!(
            parse_tunnel("0011100011100", false).unwrap().to_string(),
            "DRRRDRDLLLDLDRR"
        );
        assert_eq!(parse_tunnel("", false).unwrap().to_string(), "DR");
        assert_eq!(parse_tunnel("D", false).unwrap().to_string(), "D");
        assert_eq!(parse_tunnel("DRLD", false).unwrap_err().position(), Some(3));
        assert!(parse_tunnel("01", true).is_err());
    }

    #[test]
    fn gst_plain_and_errors() {
        let out = cmd_gst("D", false, false, false);
        assert_eq!(out.stdout, "depth: 1\ncount: 1\n");
        let out = cmd_gst("DRLD", false, false, false);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("position 3"));
        assert_eq!(out.stderr.lines().count(), 1);
    }

    #[test]
    fn convert_simple_tunnel() {
        assert_eq!(cmd_convert("D", Target::Steps).stdout, "D\n");
        assert_eq!(cmd_convert("D", Target::Binary).code, EXIT_USAGE);
        assert_eq!(cmd_convert("111", Target::Turns).stdout, "LRLR\n");
    }

    #[test]
    fn stats_rejects_bad_ranges() {
        assert_eq!(cmd_stats(5, 3, false).code, EXIT_USAGE);
        assert_eq!(cmd_stats(0, 99, false).code, EXIT_USAGE);
    }
}
