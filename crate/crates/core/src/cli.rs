//! Command-line front end. [`run`] does all the work and returns what would
//! be printed, so the binary is a thin wrapper and tests need no process.
//!
//! Exit codes: 0 success, 1 the input is well formed but mathematically
//! invalid (a diagram with violations), 2 malformed input or usage.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::diagram::{Condition, DiagramError, HyperbolicDiagram, ValidationReport, Violation};
use crate::flober;
use crate::json::{self, JsonError};
use crate::linalg::Rational;
use crate::roots::{sl3, Permutation, RootDatum};

#[derive(Debug, Parser)]
#[command(name = "schober", version, about = "Arrangements, perverse sheaf diagrams and flobers over Q")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Input file, or `-` for standard input
    #[arg(short = 'i', long = "input", global = true, value_name = "FILE")]
    input: Option<String>,
    /// Write the produced object to this file
    #[arg(long, global = true, value_name = "FILE")]
    emit: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hyperplane arrangements
    #[command(subcommand)]
    Arr(ArrCommand),
    /// Diagrams over face posets
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// The Atiyah flober and K-theory reductions
    #[command(subcommand)]
    Flober(FloberCommand),
    /// Root systems and coroot arrangements
    #[command(subcommand)]
    Root(RootCommand),
}

#[derive(Debug, Subcommand)]
enum ArrCommand {
    /// List all faces with their dimensions
    Faces,
    /// Decide whether three faces are collinear
    Collinear {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        middle: String,
        #[arg(allow_hyphen_values = true)]
        last: String,
    },
}

#[derive(Debug, Subcommand)]
enum DiagramCommand {
    /// Check every condition and list violations
    Validate,
    /// Cohomology dimensions of a diagram on the line
    Cohomology,
    /// (Phi, Psi) datum and indecomposable multiplicities of a diagram on the line
    Decompose,
}

#[derive(Debug, Subcommand)]
enum FloberCommand {
    /// The Atiyah flober as a diagram
    Atiyah,
    /// Coordinates of [L(i)] over [L(0)], [L(1)]
    #[command(name = "reduce-p1")]
    ReduceP1 {
        #[arg(allow_negative_numbers = true)]
        i: i64,
    },
    /// Coordinates of [L0(i,j)] over L0(0,0), L0(1,0), L0(0,1), L0(1,1)
    #[command(name = "reduce-p1xp1")]
    ReduceP1xP1 {
        #[arg(allow_negative_numbers = true)]
        i: i64,
        #[arg(allow_negative_numbers = true)]
        j: i64,
    },
}

#[derive(Debug, Subcommand)]
enum RootCommand {
    /// Coroot arrangement of a root system
    Build { kind: String, rank: usize },
    /// Faces with parabolic and Levi root sets
    Cells { kind: String, rank: usize },
    /// Fixed reports
    Report { name: String },
    /// Desingularization sign of w at a positive root (1-based index)
    Desing {
        kind: String,
        rank: usize,
        permutation: String,
        root_index: usize,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Exit 1, with the output that explains why.
    Invalid(String),
    /// Exit 2.
    Input(String),
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

/// Runs the CLI on `argv` (including the program name), reading `-i -`
/// from the process's standard input.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(argv, std::io::stdin())
}

pub fn run_with_stdin<I, S, R>(argv: I, stdin: R) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    R: Read,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut ctx = Context {
        global: cli.global,
        stdin: Some(Box::new(stdin)),
    };
    let result = match cli.command {
        Command::Arr(c) => ctx.arr(c),
        Command::Diagram(c) => ctx.diagram(c),
        Command::Flober(c) => ctx.flober(c),
        Command::Root(c) => ctx.root(c),
    };
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Invalid(stdout)) => Outcome { code: 1, stdout, stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

struct Context<'a> {
    global: Global,
    stdin: Option<Box<dyn Read + 'a>>,
}

impl Context<'_> {
    fn read_input(&mut self) -> Result<String, Failure> {
        let path = self
            .global
            .input
            .clone()
            .ok_or_else(|| Failure::Input("this command needs -i <file>".into()))?;
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .take()
                .ok_or_else(|| Failure::Input("standard input already consumed".into()))?
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{path}: {e}")))
        }
    }

    fn render(&self, value: Value, text: String) -> String {
        if self.global.json {
            json::to_pretty(&value)
        } else {
            text
        }
    }

    /// Writes `value` to `--emit` if given; otherwise prints it.
    fn emit(&self, value: &Value, what: &str) -> CmdResult {
        let body = json::to_pretty(value);
        match &self.global.emit {
            Some(path) => {
                fs::write(path, &body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                Ok(format!("wrote {what} to {}\n", path.display()))
            }
            None => Ok(body),
        }
    }

    fn arr(&mut self, cmd: ArrCommand) -> CmdResult {
        let arrangement = json::parse_arrangement(&self.read_input()?)?;
        let poset = arrangement.enumerate_faces();
        match cmd {
            ArrCommand::Faces => {
                let mut text = format!(
                    "{} faces, {} chambers, euler characteristic {}\n",
                    poset.len(),
                    poset.chambers().len(),
                    poset.euler_characteristic()
                );
                for f in poset.faces() {
                    text.push_str(&format!("{} {}\n", display_key(&f.key()), f.dim));
                }
                let faces: Vec<Value> = poset
                    .faces()
                    .iter()
                    .map(|f| json!({"face": f.key(), "dim": f.dim}))
                    .collect();
                let value = json!({
                    "dim": arrangement.dim(),
                    "hyperplanes": arrangement.len(),
                    "chambers": poset.chambers().len(),
                    "euler_characteristic": poset.euler_characteristic(),
                    "faces": faces,
                });
                Ok(self.render(value, text))
            }
            ArrCommand::Collinear { first, middle, last } => {
                let idx = |k: &str| {
                    poset
                        .index_of_key(k)
                        .map_err(|e| Failure::Input(format!("face {k:?}: {e}")))
                };
                let (a, b, c) = (idx(&first)?, idx(&middle)?, idx(&last)?);
                let answer = poset.collinear(a, b, c);
                let value = json!({"faces": [first, middle, last], "collinear": answer});
                Ok(self.render(value, format!("{answer}\n")))
            }
        }
    }

    fn diagram(&mut self, cmd: DiagramCommand) -> CmdResult {
        let text = self.read_input()?;
        let d = match json::parse_diagram(&text) {
            Ok(d) => d,
            // Composition along chains already fails while building.
            Err(JsonError::Diagram(DiagramError::ChainInconsistency { map, from, to })) => {
                let report = ValidationReport {
                    violations: vec![Violation {
                        condition: Condition::Transitivity,
                        faces: vec![from, to],
                        detail: format!("{map} maps disagree along two chains"),
                    }],
                };
                return Err(Failure::Invalid(self.render(report_json(&report), report_text(&report))));
            }
            Err(e) => return Err(e.into()),
        };
        match cmd {
            DiagramCommand::Validate => {
                let report = d.validate();
                let out = self.render(report_json(&report), report_text(&report));
                if report.passed() {
                    Ok(out)
                } else {
                    Err(Failure::Invalid(out))
                }
            }
            DiagramCommand::Cohomology => {
                let h = d.cohomology_1d().map_err(diagram_failure)?;
                let value = json!({"h0": h.h0, "h1": h.h1, "h1c": h.h1c, "h2c": h.h2c});
                let text = format!("h0={} h1={} h1c={} h2c={}\n", h.h0, h.h1, h.h1c, h.h2c);
                Ok(self.render(value, text))
            }
            DiagramCommand::Decompose => {
                let p = d.to_phi_psi().map_err(|e| self.explain(&d, e))?;
                let m = p.decompose().map_err(|e| self.explain(&d, e))?;
                let value = json!({
                    "dim_phi": p.dim_phi(),
                    "dim_psi": p.dim_psi(),
                    "u": json::matrix_to_json(&p.u, None, None),
                    "v": json::matrix_to_json(&p.v, None, None),
                    "phi_embedding": json::matrix_to_json(&p.phi_embedding, d.basis(1), None),
                    "multiplicities": {
                        "skyscraper": m.skyscraper,
                        "constant": m.constant,
                        "direct_image": m.direct_image,
                        "extension_by_zero": m.extension_by_zero,
                    },
                });
                let text = format!(
                    "dim Phi = {}, dim Psi = {}, rank u = {}, rank v = {}\n\
                     u = {}\nv = {}\n\
                     skyscraper {}\nconstant {}\ndirect_image {}\nextension_by_zero {}\n",
                    p.dim_phi(),
                    p.dim_psi(),
                    p.u.rank(),
                    p.v.rank(),
                    p.u,
                    p.v,
                    m.skyscraper,
                    m.constant,
                    m.direct_image,
                    m.extension_by_zero
                );
                Ok(self.render(value, text))
            }
        }
    }

    /// Maps errors of a well-formed diagram to exit codes, listing the
    /// violations when the diagram is not perverse.
    fn explain(&self, d: &HyperbolicDiagram, e: DiagramError) -> Failure {
        match e {
            DiagramError::NotPerverse(_) => {
                let report = d.validate();
                Failure::Invalid(self.render(report_json(&report), report_text(&report)))
            }
            DiagramError::NontrivialMonodromy => Failure::Invalid(self.render(
                json!({"error": e.to_string()}),
                format!("{e}\n"),
            )),
            other => diagram_failure(other),
        }
    }

    fn flober(&mut self, cmd: FloberCommand) -> CmdResult {
        match cmd {
            FloberCommand::Atiyah => self.emit(&json::diagram_to_json(&flober::atiyah_flober()), "diagram"),
            FloberCommand::ReduceP1 { i } => {
                let v = flober::reduce_p1(i);
                let value = json!({"class": format!("L({i})"), "basis": ["L(0)", "L(1)"], "coefficients": rationals(&v)});
                Ok(self.render(value, format!("{}\n", join(&v))))
            }
            FloberCommand::ReduceP1xP1 { i, j } => {
                let v = flober::reduce_p1xp1(i, j);
                let value = json!({
                    "class": format!("L0({i},{j})"),
                    "basis": ["L0(0,0)", "L0(1,0)", "L0(0,1)", "L0(1,1)"],
                    "coefficients": rationals(&v),
                });
                Ok(self.render(value, format!("{}\n", join(&v))))
            }
        }
    }

    fn root(&mut self, cmd: RootCommand) -> CmdResult {
        let datum = |kind: &str, rank: usize| RootDatum::build(kind, rank).map_err(|e| Failure::Input(e.to_string()));
        match cmd {
            RootCommand::Build { kind, rank } => {
                let d = datum(&kind, rank)?;
                self.emit(&json::arrangement_to_json(&d.coroot_arrangement()), "arrangement")
            }
            RootCommand::Cells { kind, rank } => {
                let dict = datum(&kind, rank)?.cell_dictionary();
                let mut text = String::new();
                for c in &dict.cells {
                    let names = |rs: &[crate::roots::Root]| {
                        rs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
                    };
                    text.push_str(&format!(
                        "{} dim={} w={} parabolic=[{}] levi=[{}]\n",
                        display_key(&c.face),
                        c.dim,
                        c.weyl.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "-".into()),
                        names(&c.parabolic),
                        names(&c.levi)
                    ));
                }
                let value = serde_json::to_value(&dict).expect("serializable");
                Ok(self.render(value, text))
            }
            RootCommand::Report { name } => {
                if name != "sl3" {
                    return Err(Failure::Input(format!("unknown report {name:?}; available: sl3")));
                }
                let r = sl3::sl3_report();
                let value = serde_json::to_value(&r).expect("serializable");
                Ok(self.render(value, r.to_text()))
            }
            RootCommand::Desing { kind, rank, permutation, root_index } => {
                let d = datum(&kind, rank)?;
                let w = Permutation::parse(&permutation, rank + 1).map_err(|e| Failure::Input(e.to_string()))?;
                if root_index == 0 {
                    return Err(Failure::Input("root index is 1-based".into()));
                }
                let sign = d
                    .desingularization_sign(&w, root_index - 1)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                let root = d.positive_roots()[root_index - 1];
                let value = json!({"w": w.to_string(), "root": root.to_string(), "sign": sign.to_string()});
                Ok(self.render(value, format!("{sign}\n")))
            }
        }
    }
}

fn diagram_failure(e: DiagramError) -> Failure {
    Failure::Input(e.to_string())
}

fn display_key(k: &str) -> &str {
    if k.is_empty() {
        "()"
    } else {
        k
    }
}

fn rationals(v: &[Rational]) -> Vec<Value> {
    v.iter().map(json::rational_to_json).collect()
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn report_text(r: &ValidationReport) -> String {
    if r.passed() {
        return "passed\n".into();
    }
    let mut out: String = r.violations.iter().map(|v| format!("{v}\n")).collect();
    out.push_str(&format!("failed: {} violation(s)\n", r.violations.len()));
    out
}

fn report_json(r: &ValidationReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"condition": v.condition.tag(), "faces": v.faces, "detail": v.detail}))
        .collect();
    json!({"passed": r.passed(), "violations": violations})
}
