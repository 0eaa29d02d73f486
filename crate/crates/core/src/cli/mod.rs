//! Command-line front end.
//!
//! Exit codes: 0 = success / certificate found; 2 = honest failure (caps
//! exhausted, answer unknown); 1 = input or usage error.  JSON output embeds
//! the effective run configuration and is byte-for-byte reproducible: no
//! timestamps or wall-clock fields, and `--threads` never changes results.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::filling::{self, LoopState};
use crate::pachner::{
    self, BistellarMove, Triangulation, TriangulationRecord, ValidationLevel,
};
use crate::presentations::{self, Presentation};
use crate::tower::{self, TowerValue};
use crate::triviality::{self, EnumOutcome};
use crate::words::{build_vn, commutator, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CAPPED: i32 = 2;

#[derive(Parser)]
#[command(name = "tritower", version, about = "Balanced presentations of the trivial group, \
bistellar moves, and combinatorial filling length")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format; `csv` only where a tabular shape exists.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Balanced presentations P_n and Andrews-Curtis search.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Relator-application probes in the Baumslag-Gersten group.
    #[command(subcommand)]
    Dehn(DehnCmd),
    /// Filling length on presentation 2-complexes.
    #[command(subcommand)]
    Fill(FillCmd),
    /// Triangulations and bistellar moves.
    #[command(subcommand)]
    Tri(TriCmd),
    /// Tower-of-exponentials arithmetic.
    #[command(subcommand)]
    Tower(TowerCmd),
}

#[derive(Args)]
struct PresentationInput {
    /// Presentation file (`gens:` line then `rel:` lines).
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    /// Build P_n instead of reading a file.
    #[arg(long)]
    n: Option<u64>,
}

impl PresentationInput {
    fn load(&self) -> Result<(Presentation, Value), CliError> {
        match (&self.input, self.n) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
                let p = Presentation::parse_file_string(&text)?;
                Ok((p, json!({ "input": path.display().to_string() })))
            }
            (None, Some(n)) => Ok((presentations::build_pn(n)?, json!({ "n": n }))),
            _ => Err(CliError("exactly one of --input and --n is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Emit the presentation file for P_n.
    Gen {
        #[arg(long)]
        n: u64,
    },
    /// Certify triviality (or report the group order) by coset enumeration.
    VerifyTrivial {
        #[command(flatten)]
        pres: PresentationInput,
        #[arg(long, env = "TRITOWER_MAX_COSETS", default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// Search for an Andrews-Curtis trivialization.
    AcSearch {
        #[command(flatten)]
        pres: PresentationInput,
        /// Target presentation file; defaults to ⟨gens | gens⟩.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, env = "TRITOWER_MAX_DEPTH", default_value_t = 12)]
        max_depth: usize,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 16)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 1_000_000)]
        max_states: usize,
    },
    /// Certify V_m = x^E(m) in the Baumslag-Gersten group.
    PowerCheck {
        #[arg(long)]
        m: u32,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 64)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 1_000_000)]
        max_states: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum DehnCmd {
    /// Minimal relator-application count contracting a trivial word.
    Probe {
        /// Presentation file; defaults to the Baumslag-Gersten group.
        #[arg(long)]
        input: Option<PathBuf>,
        /// The word to contract (alphabet of the presentation).
        #[arg(long, conflicts_with = "wn")]
        word: Option<String>,
        /// Probe w_n = [v_n, x] instead of an explicit word.
        #[arg(long)]
        wn: Option<u64>,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 64)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 1_000_000)]
        max_states: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum FillCmd {
    /// Filling length of one loop in the presentation complex.
    Length {
        #[command(flatten)]
        pres: PresentationInput,
        /// Loop as an edge word (uppercase = reversed edge); backtracks kept.
        #[arg(long = "loop")]
        loop_word: String,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 20)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 1_000_000)]
        max_states: usize,
    },
    /// Max of fl(γ)/length(γ) over short loops.
    Ratio {
        #[command(flatten)]
        pres: PresentationInput,
        #[arg(long, default_value_t = 4)]
        max_loop_len: usize,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 16)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 200_000)]
        max_states: usize,
    },
    /// Filling lengths of the generator loops of P_n across n.
    Growth {
        /// Comma-separated list of n values.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<u64>,
        #[arg(long, env = "TRITOWER_MAX_LEN", default_value_t = 20)]
        max_len: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 200_000)]
        max_states: usize,
    },
}

#[derive(Subcommand)]
enum TriCmd {
    /// Generate a triangulation (kind: `boundary` = ∂Δ^(dim+1)).
    Gen {
        kind: String,
        /// Manifold dimension d; generates the boundary of the (d+1)-simplex.
        #[arg(long)]
        dim: usize,
    },
    /// Check pseudomanifold and (optionally) link conditions.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::Links)]
        level: LevelArg,
    },
    /// List every legal bistellar move.
    Moves {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply one bistellar move (faces as comma-separated vertex lists).
    Apply {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<u32>,
    },
    /// Bistellar distance between two triangulations.
    Bfs {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, env = "TRITOWER_MAX_VERTICES", default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, env = "TRITOWER_MAX_STATES", default_value_t = 100_000)]
        max_states: usize,
    },
    /// Seeded random walk in the move graph.
    Walk {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "TRITOWER_MAX_VERTICES", default_value_t = 10)]
        max_vertices: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Pseudomanifold,
    Links,
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Evaluate E(m), exactly or symbolically.
    Eval {
        #[arg(long)]
        m: u64,
    },
    /// Compare two tower expressions: an integer, `E(m)`, or `2^...` thereof.
    Cmp {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// A finished report: exit code plus the three renderings it can take.
struct Report {
    exit: i32,
    text: String,
    json: Value,
    csv: Option<String>,
}

impl Report {
    fn new(exit: i32, text: String, config: Value, result: Value) -> Self {
        Report { exit, text, json: json!({ "config": config, "result": result }), csv: None }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with a zero exit.
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    let out_path = cli.out.clone();
    match dispatch(cli) {
        Ok(report) => {
            let body = match format {
                Format::Text => report.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).unwrap();
                    s.push('\n');
                    s
                }
                Format::Csv => match report.csv {
                    Some(csv) => csv,
                    None => {
                        eprintln!("error: csv output is not available for this command");
                        return EXIT_INPUT;
                    }
                },
            };
            match out_path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{body}"),
            }
            report.exit
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report, CliError> {
    match cli.cmd {
        Cmd::Present(c) => present(c),
        Cmd::Dehn(c) => dehn(c),
        Cmd::Fill(c) => fill(c),
        Cmd::Tri(c) => tri(c),
        Cmd::Tower(c) => tower_cmd(c),
    }
}

fn present(cmd: PresentCmd) -> Result<Report, CliError> {
    match cmd {
        PresentCmd::Gen { n } => {
            let p = presentations::build_pn(n)?;
            let text = p.to_file_string();
            let config = json!({ "command": "present gen", "n": n });
            let result = json!({
                "file": text,
                "balanced": p.is_balanced(),
                "relator_lengths": p.relators.iter().map(Word::len).collect::<Vec<_>>(),
            });
            Ok(Report::new(EXIT_OK, text, config, result))
        }
        PresentCmd::VerifyTrivial { pres, max_cosets } => {
            let (p, src) = pres.load()?;
            let outcome = triviality::coset_enumerate(&p, max_cosets)?;
            let config = json!({
                "command": "present verify-trivial", "source": src, "max_cosets": max_cosets,
            });
            let (exit, text, result) = match outcome {
                EnumOutcome::Order(k) => (
                    EXIT_OK,
                    format!("group order: {k}{}\n", if k == 1 { " (trivial)" } else { "" }),
                    json!({ "order": k, "capped": false }),
                ),
                EnumOutcome::Overflow { live, defined } => (
                    EXIT_CAPPED,
                    format!(
                        "unknown: coset cap {max_cosets} exhausted ({live} live, {defined} defined)\n"
                    ),
                    json!({ "order": null, "capped": true, "live": live, "defined": defined }),
                ),
            };
            Ok(Report::new(exit, text, config, result))
        }
        PresentCmd::AcSearch { pres, target, max_depth, max_len, max_states } => {
            let (p, src) = pres.load()?;
            let target_p = match &target {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
                    Presentation::parse_file_string(&text)?
                }
                None => Presentation::new(
                    p.alphabet.clone(),
                    (0..p.alphabet.size())
                        .map(|g| Word::generator(crate::words::Gen(g as u8)))
                        .collect(),
                ),
            };
            let outcome = presentations::ac_search(&p, &target_p, max_depth, max_len, max_states);
            let config = json!({
                "command": "present ac-search", "source": src,
                "target": target.map(|t| t.display().to_string()),
                "max_depth": max_depth, "max_len": max_len, "max_states": max_states,
            });
            let result = json!({
                "moves": outcome.moves,
                "depth_reached": outcome.depth_reached,
                "states_explored": outcome.states_explored,
                "capped": outcome.capped,
            });
            let (exit, text) = match &outcome.moves {
                Some(moves) => (
                    EXIT_OK,
                    format!(
                        "trivialization found: {} moves ({} states explored)\n",
                        moves.len(),
                        outcome.states_explored
                    ),
                ),
                None => (
                    EXIT_CAPPED,
                    format!(
                        "not found within caps (depth {}, {} states)\n",
                        outcome.depth_reached, outcome.states_explored
                    ),
                ),
            };
            Ok(Report::new(exit, text, config, result))
        }
        PresentCmd::PowerCheck { m, max_len, max_states, threads } => {
            let report = triviality::power_check(m, max_len, max_states, threads);
            let config = json!({
                "command": "present power-check", "m": m,
                "max_len": max_len, "max_states": max_states, "threads": threads,
            });
            let result = json!({
                "word_len": report.word_len,
                "applications": report.probe.applications,
                "explored": report.probe.explored,
                "capped": report.probe.capped,
            });
            let (exit, text) = match report.probe.applications {
                Some(k) => (
                    EXIT_OK,
                    format!("V_{m} = x^E({m}) certified with {k} relator applications\n"),
                ),
                None => (
                    EXIT_CAPPED,
                    format!("unknown within caps ({} states explored)\n", report.probe.explored),
                ),
            };
            Ok(Report::new(exit, text, config, result))
        }
    }
}

fn dehn(cmd: DehnCmd) -> Result<Report, CliError> {
    let DehnCmd::Probe { input, word, wn, max_len, max_states, threads } = cmd;
    let (p, src) = match &input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
            (
                Presentation::parse_file_string(&text)?,
                json!({ "input": path.display().to_string() }),
            )
        }
        None => (presentations::baumslag_gersten(), json!({ "input": "baumslag-gersten" })),
    };
    let (w, word_desc) = match (&word, wn) {
        (Some(text), None) => (Word::parse(&p.alphabet, text)?, json!({ "word": text })),
        (None, Some(n)) => {
            let vn = build_vn(n)?;
            let x = Word::generator(crate::words::Gen(0));
            (commutator(&vn, &x), json!({ "wn": n }))
        }
        _ => return Err(CliError("exactly one of --word and --wn is required".into())),
    };
    let probe = triviality::dehn_probe(&p, &w, max_len, max_states, threads);
    let config = json!({
        "command": "dehn probe", "source": src, "word": word_desc,
        "max_len": max_len, "max_states": max_states, "threads": threads,
    });
    let result = json!({
        "word_len": w.len(),
        "applications": probe.applications,
        "steps": probe.steps,
        "explored": probe.explored,
        "capped": probe.capped,
    });
    let (exit, text) = match probe.applications {
        Some(k) => (EXIT_OK, format!("trivial: {k} relator applications suffice\n")),
        None => (
            EXIT_CAPPED,
            format!(
                "unknown within caps (word length {}, {} states explored)\n",
                w.len(),
                probe.explored
            ),
        ),
    };
    Ok(Report::new(exit, text, config, result))
}

fn fill(cmd: FillCmd) -> Result<Report, CliError> {
    match cmd {
        FillCmd::Length { pres, loop_word, max_len, max_states } => {
            let (p, src) = pres.load()?;
            let x = filling::presentation_complex(&p)?;
            let gamma = LoopState::parse(x.alphabet(), &loop_word)?;
            let out = filling::filling_length(&gamma, &x, max_len, max_states);
            let config = json!({
                "command": "fill length", "source": src, "loop": loop_word,
                "max_len": max_len, "max_states": max_states,
            });
            let result = json!({
                "length": gamma.len(),
                "fl": out.fl,
                "lower_bound": out.lower_bound,
                "explored": out.explored,
                "capped": out.capped,
            });
            let (exit, text) = match out.fl {
                Some(fl) => (EXIT_OK, format!("fl = {fl} (loop length {})\n", gamma.len())),
                None => (
                    EXIT_CAPPED,
                    format!("unknown: fl >= {} ({} states explored)\n", out.lower_bound, out.explored),
                ),
            };
            Ok(Report::new(exit, text, config, result))
        }
        FillCmd::Ratio { pres, max_loop_len, max_len, max_states } => {
            let (p, src) = pres.load()?;
            let x = filling::presentation_complex(&p)?;
            let out = filling::fl_ratio(&x, max_loop_len, max_len, max_states);
            let config = json!({
                "command": "fill ratio", "source": src, "max_loop_len": max_loop_len,
                "max_len": max_len, "max_states": max_states,
            });
            let result = serde_json::to_value(&out).unwrap();
            let exit = if out.capped { EXIT_CAPPED } else { EXIT_OK };
            let text = format!(
                "Fl >= {}/{} (witness {:?}, {} loops checked{})\n",
                out.numerator,
                out.denominator,
                out.witness.word,
                out.loops_checked,
                if out.capped { "; some searches capped" } else { "" }
            );
            Ok(Report::new(exit, text, config, result))
        }
        FillCmd::Growth { n_list, max_len, max_states } => {
            let rows = filling::growth_probe(&n_list, max_len, max_states)?;
            let config = json!({
                "command": "fill growth", "n_list": n_list,
                "max_len": max_len, "max_states": max_states,
            });
            let mut csv = String::from(filling::GrowthRow::csv_header());
            csv.push('\n');
            let mut text = String::new();
            for row in &rows {
                writeln!(csv, "{}", row.to_csv_line()).unwrap();
                let fl = match row.fl {
                    Some(v) => v.to_string(),
                    None => format!(">={}", row.lower_bound),
                };
                writeln!(text, "n={} generator {}: fl {}", row.n, row.generator, fl).unwrap();
            }
            let mut report =
                Report::new(EXIT_OK, text, config, serde_json::to_value(&rows).unwrap());
            report.csv = Some(csv);
            Ok(report)
        }
    }
}

fn read_triangulation(path: &PathBuf) -> Result<Triangulation, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    Ok(Triangulation::parse_file_string(&text)?)
}

fn tri(cmd: TriCmd) -> Result<Report, CliError> {
    match cmd {
        TriCmd::Gen { kind, dim } => {
            if kind != "boundary" {
                return Err(CliError(format!("unknown kind {kind:?}; expected `boundary`")));
            }
            if dim < 1 {
                return Err(CliError("--dim must be at least 1".into()));
            }
            let t = pachner::boundary_of_simplex(dim + 1);
            let config = json!({ "command": "tri gen", "kind": kind, "dim": dim });
            let result = serde_json::to_value(TriangulationRecord::from(&t)).unwrap();
            Ok(Report::new(EXIT_OK, t.to_file_string(), config, result))
        }
        TriCmd::Validate { input, level } => {
            let t = read_triangulation(&input)?;
            let lv = match level {
                LevelArg::Pseudomanifold => ValidationLevel::Pseudomanifold,
                LevelArg::Links => ValidationLevel::Links,
            };
            let report = pachner::validate(&t, lv);
            let config = json!({
                "command": "tri validate", "input": input.display().to_string(),
                "level": match level { LevelArg::Pseudomanifold => "pseudomanifold", LevelArg::Links => "links" },
            });
            let result = serde_json::to_value(&report).unwrap();
            let mut text = if report.is_valid() {
                "valid\n".to_string()
            } else {
                let mut s = String::from("invalid:\n");
                for issue in &report.issues {
                    writeln!(s, "  {issue}").unwrap();
                }
                s
            };
            for note in &report.notes {
                writeln!(text, "note: {note}").unwrap();
            }
            let exit = if report.is_valid() { EXIT_OK } else { EXIT_INPUT };
            Ok(Report::new(exit, text, config, result))
        }
        TriCmd::Moves { input } => {
            let t = read_triangulation(&input)?;
            let moves = pachner::enumerate_moves(&t);
            let config = json!({ "command": "tri moves", "input": input.display().to_string() });
            let mut text = String::new();
            for m in &moves {
                writeln!(text, "a={:?} b={:?} ({}->{})", m.a, m.b, m.b.len(), m.a.len()).unwrap();
            }
            let result = serde_json::to_value(&moves).unwrap();
            Ok(Report::new(EXIT_OK, text, config, result))
        }
        TriCmd::Apply { input, a, b } => {
            let t = read_triangulation(&input)?;
            let m = BistellarMove::new(a.clone(), b.clone());
            let t2 = pachner::apply_move(&t, &m)?;
            let config = json!({
                "command": "tri apply", "input": input.display().to_string(), "a": a, "b": b,
            });
            let result = serde_json::to_value(TriangulationRecord::from(&t2)).unwrap();
            Ok(Report::new(EXIT_OK, t2.to_file_string(), config, result))
        }
        TriCmd::Bfs { a, b, max_vertices, max_states } => {
            let ta = read_triangulation(&a)?;
            let tb = read_triangulation(&b)?;
            let out = pachner::bfs_distance(&ta, &tb, max_vertices, max_states)?;
            let config = json!({
                "command": "tri bfs",
                "a": a.display().to_string(), "b": b.display().to_string(),
                "max_vertices": max_vertices, "max_states": max_states,
            });
            let result = serde_json::to_value(&out).unwrap();
            let (exit, text) = match out.distance {
                Some(d) => (EXIT_OK, format!("distance: {d}\n")),
                None => (
                    EXIT_CAPPED,
                    format!("unknown: > {} within caps ({} states)\n", out.radius_searched, out.explored),
                ),
            };
            Ok(Report::new(exit, text, config, result))
        }
        TriCmd::Walk { input, steps, seed, max_vertices } => {
            let t = read_triangulation(&input)?;
            let (end, stats) = pachner::random_walk(&t, steps, seed, max_vertices);
            let config = json!({
                "command": "tri walk", "input": input.display().to_string(),
                "steps": steps, "seed": seed, "max_vertices": max_vertices,
            });
            let result = json!({
                "triangulation": TriangulationRecord::from(&end),
                "stats": serde_json::to_value(&stats).unwrap(),
            });
            let mut csv = String::from("step,f_vector\n");
            for (i, f) in stats.f_trace.iter().enumerate() {
                let fv: Vec<String> = f.iter().map(|c| c.to_string()).collect();
                writeln!(csv, "{i},{}", fv.join(" ")).unwrap();
            }
            let text = format!(
                "{}applied {} moves; final f-vector {:?}\n",
                end.to_file_string(),
                stats.moves_applied,
                end.f_vector()
            );
            let mut report = Report::new(EXIT_OK, text, config, result);
            report.csv = Some(csv);
            Ok(report)
        }
    }
}

/// `(2^)* E(m)` or a plain non-negative integer.
fn parse_tower_expr(text: &str) -> Result<TowerValue, CliError> {
    let mut rest = text.trim();
    let mut pows = 0u64;
    while let Some(r) = rest.strip_prefix("2^") {
        pows += 1;
        rest = r.trim();
    }
    let base = if let Some(inner) = rest.strip_prefix("E(").and_then(|r| r.strip_suffix(')')) {
        let m: u64 = inner
            .trim()
            .parse()
            .map_err(|e| CliError(format!("bad tower height in {text:?}: {e}")))?;
        tower::tower_e(m)
    } else {
        let n: u64 =
            rest.parse().map_err(|e| CliError(format!("bad tower expression {text:?}: {e}")))?;
        TowerValue::exact(n)
    };
    let mut v = base;
    for _ in 0..pows {
        v = v.pow2();
    }
    Ok(v)
}

fn tower_cmd(cmd: TowerCmd) -> Result<Report, CliError> {
    match cmd {
        TowerCmd::Eval { m } => {
            let v = tower::tower_e(m);
            let config = json!({ "command": "tower eval", "m": m });
            let result = json!({
                "value": v.to_string(),
                "exact": v.as_exact().map(|e| e.to_string()),
            });
            Ok(Report::new(EXIT_OK, format!("{v}\n"), config, result))
        }
        TowerCmd::Cmp { a, b } => {
            let va = parse_tower_expr(&a)?;
            let vb = parse_tower_expr(&b)?;
            let ord = match va.cmp(&vb) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            let config = json!({ "command": "tower cmp", "a": a, "b": b });
            let result = json!({ "ordering": ord });
            Ok(Report::new(EXIT_OK, format!("{a} {ord} {b}\n"), config, result))
        }
    }
}
