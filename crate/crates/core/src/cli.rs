//! Command-line surface. [`run`] takes the argument list and returns the exit
//! code with whatever would go to stdout and stderr, so commands can be
//! exercised without spawning a process.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a checked property fails,
//! 3 search budget exhausted.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::gauss::{gauss_word, realizable, rotational_symmetry, DoubleOccurrenceWord, GaussWord};
use crate::geometry::{
    conway_double, intersection_table_of_drawing, parse_drawing, serialize_drawing,
    star_polygon_drawing, thrackle_report, CornerTemplate, DoublingParams, Drawing,
};
use crate::render::{render_chords, render_drawing, render_word_chords, ChordStyle, DrawingStyle};
use crate::search::{
    enumerate_bimusquash, enumerate_musquash, verdict_from_report, Expectation, Pruning,
    SearchConfig, SearchError, SearchLimits,
};
use crate::tables::{
    expand_bimusquash, parse_table, serialize_json, serialize_tsv, set_generators, GeneratorPair,
    GeneratorSet, IntersectionTable, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 1;
pub const EXIT_PROPERTY_FAILS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "musquash", version, about = "Thrackle intersection tables, Gauss words and bi-musquash search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Musquash,
    Bimusquash,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the table generated by SET1 or SET2 for odd p (n = 2p).
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        set: u8,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Expand generator rows (comma-separated) into a full table.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        row1: String,
        /// Second generator; omit for a musquash.
        #[arg(long)]
        row2: Option<String>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a table file and report its properties.
    Check { table: PathBuf },
    /// Print the Gauss word of a table.
    Gauss {
        table: PathBuf,
        /// Print symbols renamed to first-occurrence order.
        #[arg(long)]
        normalized: bool,
    },
    /// Decide realizability of a table's Gauss word or of a given word.
    Realize {
        table: Option<PathBuf>,
        /// Word text instead of a table: "1-3 1-4 | ..." or bare symbols.
        #[arg(long, conflicts_with = "table")]
        word: Option<String>,
    },
    /// Exhaustive generator search.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bimusquash")]
        kind: KindArg,
        /// Disable all optional pruning.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        /// Write the JSON report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the bi-musquash search and compare with the conjecture.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Conway-double the star polygon on m vertices or a drawing file.
    Double {
        #[arg(long, conflicts_with = "drawing")]
        m: Option<usize>,
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long, default_value = "weave")]
        template: String,
        /// Starting offset as "num/den"; derived from the drawing if absent.
        #[arg(long)]
        epsilon: Option<String>,
        /// Also print the resulting table to stderr.
        #[arg(long)]
        table: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG chord diagram of a table's Gauss word or of a word.
    RenderChords {
        table: Option<PathBuf>,
        #[arg(long, conflicts_with = "table")]
        word: Option<String>,
        #[arg(long)]
        point_labels: bool,
        #[arg(long, default_value_t = 640)]
        size: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// SVG of a drawing file or of the star polygon on m vertices.
    RenderDrawing {
        drawing: Option<PathBuf>,
        #[arg(long, conflicts_with = "drawing")]
        star: Option<usize>,
        /// Render the Conway double of the star polygon instead.
        #[arg(long, requires = "star")]
        doubled: bool,
        #[arg(long, default_value_t = 640)]
        size: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    detail: Option<serde_json::Value>,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INVALID_INPUT,
        kind: "invalid_input",
        message: message.to_string(),
        detail: None,
    }
}

fn property(message: impl ToString, detail: Option<serde_json::Value>) -> Failure {
    Failure {
        code: EXIT_PROPERTY_FAILS,
        kind: "property_fails",
        message: message.to_string(),
        detail,
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match &e {
            SearchError::BudgetExhausted(partial) => Failure {
                code: EXIT_BUDGET,
                kind: "budget_exhausted",
                message: e.to_string(),
                detail: serde_json::to_value(partial).ok(),
            },
            SearchError::BadLength(_) => invalid(e),
            SearchError::VerificationFailed(_) => property(e, None),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

#[derive(Default)]
struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_table(path: &PathBuf) -> Result<IntersectionTable, Failure> {
    parse_table(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_drawing(path: &PathBuf) -> Result<Drawing, Failure> {
    parse_drawing(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Writes to `output` when given (returning an empty stdout), else returns
/// the text for stdout.
fn emit(text: String, output: &Option<PathBuf>) -> Result<String, Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn format_table(table: &IntersectionTable, format: TableFormat) -> String {
    match format {
        TableFormat::Tsv => serialize_tsv(table),
        TableFormat::Json => serialize_json(table),
    }
}

fn parse_row(text: &str) -> Result<Vec<usize>, Failure> {
    text.split([',', ' ', '\t'])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| invalid(format!("not an edge label: {t:?}"))))
        .collect()
}

fn parse_word(text: &str) -> Result<DoubleOccurrenceWord, Failure> {
    if text.contains('-') {
        GaussWord::parse(text)
            .map(|w| w.to_double_occurrence())
            .map_err(invalid)
    } else {
        text.parse().map_err(invalid)
    }
}

fn search_config(
    n: usize,
    workers: Option<usize>,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> Result<SearchConfig, Failure> {
    let mut cfg = SearchConfig::from_env(n);
    if let Some(w) = workers {
        cfg = cfg.with_workers(w);
    }
    let max_time = match max_seconds {
        Some(s) if !(s.is_finite() && s > 0.0) => return Err(invalid("--max-seconds must be positive")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(cfg.with_limits(SearchLimits { max_nodes, max_time }))
}

#[derive(Serialize)]
struct CheckReport {
    schema_version: u32,
    n: usize,
    valid: bool,
    musquash: bool,
    bimusquash: bool,
    rotational_symmetry: usize,
    parity_ok: bool,
    realizable: bool,
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Gen {
            set,
            p,
            format,
            output,
        } => {
            let which = if set == 1 { GeneratorSet::Set1 } else { GeneratorSet::Set2 };
            let gen = set_generators(which, p).map_err(invalid)?;
            let table = expand_bimusquash(&gen).map_err(invalid)?;
            Ok(Outcome::ok(emit(format_table(&table, format), &output)?))
        }
        Command::Expand {
            n,
            row1,
            row2,
            format,
            output,
        } => {
            let row1 = parse_row(&row1)?;
            let row2 = row2.as_deref().map(parse_row).transpose()?;
            let table = match row2 {
                Some(_) => {
                    let gen = GeneratorPair::new(n, row1, row2).map_err(invalid)?;
                    expand_bimusquash(&gen)
                }
                None => crate::tables::expand_musquash(&row1, n),
            }
            .map_err(invalid)?;
            Ok(Outcome::ok(emit(format_table(&table, format), &output)?))
        }
        Command::Check { table } => {
            let table = load_table(&table)?;
            let class = table.classify();
            let word = gauss_word(&table);
            let r = realizable(&word.to_double_occurrence());
            let report = CheckReport {
                schema_version: SCHEMA_VERSION,
                n: table.n(),
                valid: class.valid_rows,
                musquash: class.is_musquash,
                bimusquash: class.is_bimusquash,
                rotational_symmetry: rotational_symmetry(&table),
                parity_ok: r.parity_ok,
                realizable: r.realizable,
            };
            let text = serde_json::to_string_pretty(&report).expect("serializes") + "\n";
            Ok(Outcome {
                code: if report.realizable { EXIT_OK } else { EXIT_PROPERTY_FAILS },
                stdout: text,
                stderr: String::new(),
            })
        }
        Command::Gauss { table, normalized } => {
            let word = gauss_word(&load_table(&table)?);
            let text = if normalized {
                word.to_double_occurrence().to_string()
            } else {
                word.to_text()
            };
            Ok(Outcome::ok(text + "\n"))
        }
        Command::Realize { table, word } => {
            let word = match (table, word) {
                (Some(path), None) => gauss_word(&load_table(&path)?).to_double_occurrence(),
                (None, Some(text)) => parse_word(&text)?,
                _ => return Err(invalid("give a table file or --word")),
            };
            let report = realizable(&word);
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "symbols": word.symbol_count(),
                "parity_ok": report.parity_ok,
                "realizable": report.realizable,
                "witness": report.witness,
            });
            Ok(Outcome {
                code: if report.realizable { EXIT_OK } else { EXIT_PROPERTY_FAILS },
                stdout: serde_json::to_string_pretty(&value).expect("serializes") + "\n",
                stderr: String::new(),
            })
        }
        Command::Search {
            n,
            kind,
            no_prune,
            workers,
            max_nodes,
            max_seconds,
            output,
        } => {
            let mut cfg = search_config(n, workers, max_nodes, max_seconds)?;
            if no_prune {
                cfg = cfg.with_pruning(Pruning::none());
            }
            let report = match kind {
                KindArg::Bimusquash => enumerate_bimusquash(&cfg)?,
                KindArg::Musquash => enumerate_musquash(n, &cfg)?,
            };
            let stdout = emit(report.to_json(), &output)?;
            Ok(Outcome {
                code: EXIT_OK,
                stdout,
                stderr: report.summary(),
            })
        }
        Command::Verify {
            n,
            workers,
            max_nodes,
            max_seconds,
            json,
        } => {
            let cfg = search_config(n, workers, max_nodes, max_seconds)?;
            let report = enumerate_bimusquash(&cfg)?;
            let verdict = verdict_from_report(&report);
            let stdout = if json {
                serde_json::to_string_pretty(&verdict).expect("serializes") + "\n"
            } else {
                verdict.summary() + "\n"
            };
            // The n = 6 verdict only reports.
            let code = if verdict.matches_conjecture || verdict.expected == Expectation::SpecialCaseN6 {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILS
            };
            Ok(Outcome {
                code,
                stdout,
                stderr: report.summary(),
            })
        }
        Command::Double {
            m,
            drawing,
            template,
            epsilon,
            table,
            output,
        } => {
            let source = match (m, drawing) {
                (Some(m), None) => star_polygon_drawing(m).map_err(invalid)?,
                (None, Some(path)) => load_drawing(&path)?,
                _ => return Err(invalid("give --m or --drawing")),
            };
            let template: CornerTemplate = template.parse().map_err(invalid)?;
            let mut params = DoublingParams::automatic(&source, template).map_err(invalid)?;
            if let Some(e) = epsilon {
                params.epsilon = parse_positive_rational(&e)?;
            }
            let doubled = conway_double(&source, &params).map_err(|e| property(e, None))?;
            let mut stderr = String::new();
            if table {
                let t = intersection_table_of_drawing(&doubled).map_err(|e| property(e, None))?;
                stderr = serialize_tsv(&t);
            }
            Ok(Outcome {
                code: EXIT_OK,
                stdout: emit(serialize_drawing(&doubled), &output)?,
                stderr,
            })
        }
        Command::RenderChords {
            table,
            word,
            point_labels,
            size,
            output,
        } => {
            let style = ChordStyle {
                size,
                point_labels,
                ..ChordStyle::default()
            };
            let svg = match (table, word) {
                (Some(path), None) => render_chords(&gauss_word(&load_table(&path)?), &style),
                (None, Some(text)) => match GaussWord::parse(&text) {
                    Ok(w) => render_chords(&w, &style),
                    Err(_) => render_word_chords(&parse_word(&text)?, &style),
                },
                _ => return Err(invalid("give a table file or --word")),
            };
            Ok(Outcome::ok(emit(svg, &output)?))
        }
        Command::RenderDrawing {
            drawing,
            star,
            doubled,
            size,
            output,
        } => {
            let d = match (drawing, star) {
                (Some(path), None) => load_drawing(&path)?,
                (None, Some(m)) => {
                    let s = star_polygon_drawing(m).map_err(invalid)?;
                    if doubled {
                        let params =
                            DoublingParams::automatic(&s, CornerTemplate::Weave).map_err(invalid)?;
                        conway_double(&s, &params).map_err(|e| property(e, None))?
                    } else {
                        s
                    }
                }
                _ => return Err(invalid("give a drawing file or --star")),
            };
            let report = thrackle_report(&d).map_err(invalid)?;
            let style = DrawingStyle {
                size,
                ..DrawingStyle::default()
            };
            let svg = render_drawing(&d, &style);
            Ok(Outcome {
                code: EXIT_OK,
                stdout: emit(svg, &output)?,
                stderr: if report.is_thrackle {
                    String::new()
                } else {
                    format!("note: drawing is not a thrackle: {report}\n")
                },
            })
        }
    }
}

fn parse_positive_rational(text: &str) -> Result<BigRational, Failure> {
    let bad = || invalid(format!("expected a positive rational num/den, found {text:?}"));
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    let r = BigRational::new(n, d);
    if r <= BigRational::from_integer(BigInt::from(0)) {
        return Err(bad());
    }
    Ok(r)
}

fn error_record(f: &Failure) -> String {
    let mut record = json!({
        "schema_version": SCHEMA_VERSION,
        "error": {
            "kind": f.kind,
            "exit_code": f.code,
            "message": f.message,
        }
    });
    if let Some(detail) = &f.detail {
        record["error"]["detail"] = detail.clone();
    }
    format!("error: {}\n{}\n", f.message, record)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CliOutput {
                    code: EXIT_INVALID_INPUT,
                    stdout: String::new(),
                    stderr: error_record(&invalid(text.trim_end())),
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => CliOutput {
            code: o.code,
            stdout: o.stdout,
            stderr: o.stderr,
        },
        Err(f) => CliOutput {
            code: f.code,
            stdout: String::new(),
            stderr: error_record(&f),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_flags_are_invalid_input() {
        let out = run(["musquash", "gen", "--set", "3", "--p", "7"]);
        assert_eq!(out.code, EXIT_INVALID_INPUT);
        assert!(out.stderr.contains("\"invalid_input\""));
        assert_eq!(run(["musquash", "gen", "--set", "1", "--p", "4"]).code, EXIT_INVALID_INPUT);
        assert_eq!(run(["musquash", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn rationals() {
        assert!(parse_positive_rational("1/64").is_ok());
        assert!(parse_positive_rational("3").is_ok());
        assert!(parse_positive_rational("0/1").is_err());
        assert!(parse_positive_rational("1/0").is_err());
        assert!(parse_positive_rational("-1/2").is_err());
    }
}
