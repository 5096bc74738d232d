//! Command-line surface and the fixture verifier.
//!
//! `run` parses an argument vector and returns the exit code together with
//! what should be printed; the binary only forwards it to the terminal.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bbw::{cohomology, direct_images};
use crate::charlib::tensor;
use crate::error::{Error, Result};
use crate::flagspace::{Bundle, BundleSum, FlagSpace};
use crate::penrose::{e1_page, transform, transform_uncancelled, GradedInput};
use crate::relforms::{pullback, relative_forms, tangent_series};
use crate::render::{self, Format};
use crate::rootsys::{weyl_dim, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "penrose",
    version,
    about = "Penrose transform along F(n) <- G(n) -> CP_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sheaf cohomology of an irreducible bundle.
    Bbw {
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Direct image of a bundle along G(n) -> M(n).
    Pushforward {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Pullback of a bundle along G(n) -> F(n).
    Pullback {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Relative holomorphic forms of G(n) -> F(n).
    Relforms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Tensor product of two sums; terms are separated by `;`.
    Tensor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Composition series of the holomorphic tangent bundle.
    Tangent {
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Penrose transform of a bundle on F(n).
    #[command(group(ArgGroup::new("input").required(true).args(["weight", "theta", "trivial", "conjecture", "grades"])))]
    Transform {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long)]
        theta: bool,
        #[arg(long)]
        trivial: bool,
        #[arg(long)]
        conjecture: bool,
        #[arg(long)]
        grades: Option<PathBuf>,
        /// Keep summands repeated in adjacent columns.
        #[arg(long)]
        raw: bool,
        /// Print the E1 page instead of the complex.
        #[arg(long)]
        page: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Dimension of an irreducible SL(n+1) module.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Check every fixture of the corpus.
    Verify {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

/// What a command wants printed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    if let Command::Verify { filter, corpus } = &cli.command {
        return match load_corpus(corpus.as_deref()) {
            Ok(fixtures) => {
                let report = verify(&fixtures, filter.as_deref());
                Outcome {
                    code: if report.all_passed() { 0 } else { 1 },
                    stdout: report.render(),
                    stderr: String::new(),
                }
            }
            Err(e) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        };
    }
    match execute(cli.command) {
        Ok(text) => Outcome::ok(text),
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn parse_weight(text: &str, n: usize) -> Result<Weight> {
    let w: Weight = text.trim().parse()?;
    if w.n() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: w.n(),
        });
    }
    Ok(w)
}

fn parse_sum(space: &FlagSpace, text: &str) -> Result<BundleSum> {
    let mut out = BundleSum::zero(space.clone());
    for part in text.split(';').filter(|s| !s.trim().is_empty()) {
        out.add(parse_weight(part, space.n())?, 1)?;
    }
    Ok(out)
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize") + "\n"
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Document(e.to_string()))
}

fn latex_math(body: &str) -> String {
    format!("\\documentclass{{article}}\n\\usepackage{{amsmath,amssymb}}\n\\begin{{document}}\n\\[ {body} \\]\n\\end{{document}}\n")
}

fn emit_sum(x: &BundleSum, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => format!("{x}\n"),
        Format::Json => json_text(&render::sum_to_json(x)?),
        Format::Latex => latex_math(&render::latex_sum_labels(x)),
    })
}

fn execute(command: Command) -> Result<String> {
    match command {
        Command::Bbw {
            space,
            n,
            weight,
            format,
        } => {
            let space = FlagSpace::from_token(&space, n)?;
            let b = Bundle::new(space, parse_weight(&weight, n)?)?;
            let h = cohomology(&b)?;
            Ok(match Format::from(format) {
                Format::Text => format!("{h}\n"),
                Format::Json => {
                    json_text(&json!({ "bundle": to_value(&b)?, "cohomology": to_value(&h)? }))
                }
                Format::Latex => latex_math(&render::latex_cohomology(&h)),
            })
        }
        Command::Pushforward { n, weight, format } => {
            let g = FlagSpace::g(n)?;
            let m = FlagSpace::m(n)?;
            let b = Bundle::new(g.clone(), parse_weight(&weight, n)?)?;
            let image = direct_images(&g, &m, &b)?;
            Ok(match (Format::from(format), &image) {
                (Format::Text, Some((q, img))) => format!("degree {q}: ({})\n", img.label()),
                (Format::Text, None) => "all direct images vanish\n".into(),
                (Format::Json, Some((q, img))) => {
                    json_text(&json!({ "degree": q, "bundle": to_value(img)? }))
                }
                (Format::Json, None) => json_text(&json!({ "degree": null, "bundle": null })),
                (Format::Latex, Some((q, img))) => latex_math(&format!(
                    "\\nu_*^{{{q}}} = {}",
                    render::latex_label(img.label())
                )),
                (Format::Latex, None) => latex_math("\\nu_*^{\\bullet} = 0"),
            })
        }
        Command::Pullback { n, weight, format } => {
            let b = Bundle::new(FlagSpace::f(n)?, parse_weight(&weight, n)?)?;
            let up = pullback(&b)?;
            Ok(match Format::from(format) {
                Format::Text => format!("({})\n", up.label()),
                Format::Json => json_text(&to_value(&up)?),
                Format::Latex => latex_math(&render::latex_label(up.label())),
            })
        }
        Command::Relforms { n, p, format } => {
            let format = Format::from(format);
            match p {
                Some(p) => emit_sum(&relative_forms(n, p)?, format),
                None => {
                    let all = (0..=n)
                        .map(|p| relative_forms(n, p))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(match format {
                        Format::Text => all
                            .iter()
                            .enumerate()
                            .map(|(p, x)| format!("p={p}: {x}\n"))
                            .collect(),
                        Format::Json => json_text(&json!({
                            "n": n,
                            "forms": all.iter().map(render::sum_to_json).collect::<Result<Vec<_>>>()?,
                        })),
                        Format::Latex => latex_math(
                            &all.iter()
                                .enumerate()
                                .map(|(p, x)| {
                                    format!(
                                        "\\Lambda_\\mu^{{{p},0}} = {}",
                                        render::latex_sum_labels(x)
                                    )
                                })
                                .collect::<Vec<_>>()
                                .join(",\\quad "),
                        ),
                    })
                }
            }
        }
        Command::Tensor {
            n,
            space,
            left,
            right,
            format,
        } => {
            let space = FlagSpace::from_token(&space, n)?;
            let x = parse_sum(&space, &left)?;
            let y = parse_sum(&space, &right)?;
            emit_sum(&tensor(&space, &x, &y)?, format.into())
        }
        Command::Tangent { space, n, format } => {
            let space = FlagSpace::from_token(&space, n)?;
            let grades = tangent_series(&space)?;
            Ok(match Format::from(format) {
                Format::Text => grades
                    .iter()
                    .enumerate()
                    .map(|(i, g)| format!("grade {i}: {g}\n"))
                    .collect(),
                Format::Json => json_text(&json!({
                    "space": space.token(),
                    "n": n,
                    "grades": grades.iter().map(render::sum_to_json).collect::<Result<Vec<_>>>()?,
                })),
                Format::Latex => latex_math(
                    &grades
                        .iter()
                        .map(render::latex_sum_labels)
                        .collect::<Vec<_>>()
                        .join(",\\quad "),
                ),
            })
        }
        Command::Transform {
            n,
            weight,
            theta,
            trivial,
            conjecture,
            grades,
            raw,
            page,
            format,
        } => {
            let input = if let Some(text) = weight {
                GradedInput::single(&Bundle::new(FlagSpace::f(n)?, parse_weight(&text, n)?)?)?
            } else if theta {
                GradedInput::tangent(n)?
            } else if trivial {
                GradedInput::trivial(n)?
            } else if conjecture {
                if n != 3 {
                    return Err(Error::Document(
                        "the extension bundle is only defined for n = 3".into(),
                    ));
                }
                GradedInput::extension_v()?
            } else if let Some(path) = grades {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
                let v: Value =
                    serde_json::from_str(&text).map_err(|e| Error::Document(e.to_string()))?;
                let input = render::graded_input_from_json(&v)?;
                if input.n() != n {
                    return Err(Error::RankMismatch {
                        expected: n,
                        got: input.n(),
                    });
                }
                input
            } else {
                unreachable!("clap requires one input")
            };
            if page {
                return render::emit_page(&e1_page(&input)?, format.into());
            }
            let t = if raw {
                transform_uncancelled(&input)?
            } else {
                transform(&input)?
            };
            render::emit_transform(&t, format.into())
        }
        Command::Dim { n, weight, format } => {
            let w = parse_weight(&weight, n)?;
            let d = weyl_dim(&w)?;
            Ok(match Format::from(format) {
                Format::Text => format!("{d}\n"),
                Format::Json => json_text(&json!({ "label": w.coeffs(), "dim": d })),
                Format::Latex => latex_math(&format!("\\dim [{w}] = {d}")),
            })
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}

/// One entry of the fixture corpus: a command line and the subset of its
/// JSON output that must match.
#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Fixture {
    pub id: String,
    pub args: Vec<String>,
    pub provenance: String,
    pub expected: Value,
}

const CORPUS: &[(&str, &str)] = &[
    (
        "relative_forms.json",
        include_str!("../fixtures/relative_forms.json"),
    ),
    (
        "cohomology.json",
        include_str!("../fixtures/cohomology.json"),
    ),
    (
        "trivial_bundle.json",
        include_str!("../fixtures/trivial_bundle.json"),
    ),
    (
        "tangent_pieces.json",
        include_str!("../fixtures/tangent_pieces.json"),
    ),
    (
        "tangent_bundle.json",
        include_str!("../fixtures/tangent_bundle.json"),
    ),
    ("extension.json", include_str!("../fixtures/extension.json")),
];

fn parse_fixtures(name: &str, text: &str) -> Result<Vec<Fixture>> {
    serde_json::from_str(text).map_err(|e| Error::Document(format!("{name}: {e}")))
}

/// The corpus compiled into the binary.
pub fn embedded_corpus() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (name, text) in CORPUS {
        out.extend(parse_fixtures(name, text)?);
    }
    Ok(out)
}

/// Reads a fixture file, or every `*.json` file of a directory in name order.
pub fn load_corpus(path: Option<&Path>) -> Result<Vec<Fixture>> {
    let Some(path) = path else {
        return embedded_corpus();
    };
    let read = |p: &Path| -> Result<Vec<Fixture>> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Document(format!("{}: {e}", p.display())))?;
        parse_fixtures(&p.display().to_string(), &text)
    };
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(read(&f)?);
        }
        Ok(out)
    } else {
        read(path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub id: String,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<FixtureResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.failure.is_none())
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.results
            .iter()
            .filter(|r| r.failure.is_some())
            .map(|r| r.id.as_str())
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            match &r.failure {
                None => out.push_str(&format!("PASS {}\n", r.id)),
                Some(diff) => {
                    out.push_str(&format!("FAIL {}\n", r.id));
                    for line in diff.lines() {
                        out.push_str(&format!("    {line}\n"));
                    }
                }
            }
        }
        let failed = self.failed_ids().len();
        out.push_str(&format!(
            "{} fixtures, {} passed, {} failed\n",
            self.results.len(),
            self.results.len() - failed,
            failed
        ));
        out
    }
}

pub fn run_fixture(f: &Fixture) -> FixtureResult {
    let argv = std::iter::once("penrose".to_string()).chain(f.args.iter().cloned());
    let out = run(argv);
    let failure = if out.code != 0 {
        Some(format!("exit code {}: {}", out.code, out.stderr.trim()))
    } else {
        match serde_json::from_str::<Value>(&out.stdout) {
            Err(e) => Some(format!("output is not JSON: {e}")),
            Ok(actual) => subset_mismatch(&f.expected, &actual, "$"),
        }
    };
    FixtureResult {
        id: f.id.clone(),
        failure,
    }
}

/// Runs every fixture whose id contains `filter`, in corpus order.
pub fn verify(fixtures: &[Fixture], filter: Option<&str>) -> Report {
    let results = fixtures
        .iter()
        .filter(|f| filter.is_none_or(|s| f.id.contains(s)))
        .map(run_fixture)
        .collect();
    Report { results }
}

/// First place where `expected` is not contained in `actual`. Objects match
/// when every expected key matches; arrays of objects match as multisets of
/// the same size; every other array matches element by element.
pub fn subset_mismatch(expected: &Value, actual: &Value, path: &str) -> Option<String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                match a.get(k) {
                    None => return Some(format!("{path}.{k}: missing")),
                    Some(av) => {
                        if let Some(m) = subset_mismatch(ev, av, &format!("{path}.{k}")) {
                            return Some(m);
                        }
                    }
                }
            }
            None
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return Some(format!(
                    "{path}: expected {} elements, got {}\n  expected: {}\n  actual:   {}",
                    e.len(),
                    a.len(),
                    compact(expected),
                    compact(actual)
                ));
            }
            if e.iter().any(Value::is_object) {
                multiset_mismatch(e, a, path)
            } else {
                e.iter()
                    .zip(a)
                    .enumerate()
                    .find_map(|(i, (ev, av))| subset_mismatch(ev, av, &format!("{path}[{i}]")))
            }
        }
        (e, a) if e == a => None,
        (e, a) => Some(format!(
            "{path}: expected {}, got {}",
            compact(e),
            compact(a)
        )),
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

fn multiset_mismatch(expected: &[Value], actual: &[Value], path: &str) -> Option<String> {
    let fits: Vec<Vec<usize>> = expected
        .iter()
        .map(|e| {
            (0..actual.len())
                .filter(|&j| subset_mismatch(e, &actual[j], path).is_none())
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; actual.len()];
    fn augment(
        i: usize,
        fits: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &j in &fits[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, fits, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for (i, item) in expected.iter().enumerate() {
        let mut seen = vec![false; actual.len()];
        if !augment(i, &fits, &mut owner, &mut seen) {
            return Some(format!(
                "{path}: no match for {}\n  actual: {}",
                compact(item),
                compact(&Value::Array(actual.to_vec()))
            ));
        }
    }
    None
}
