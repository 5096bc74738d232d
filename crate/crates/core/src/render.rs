//! Hermitian names for bundles on `CP_n` and the text, JSON and LaTeX
//! emitters for pages and complexes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bbw::CohomologyResult;
use crate::error::{Error, Result};
use crate::flagspace::{Bundle, BundleSum, FlagSpace, SpaceKind};
use crate::penrose::{Arrow, Cancellation, Complex, E1Page, GradedInput, OperatorType, Transform};
use crate::rootsys::{from_epsilon, to_epsilon, EpsilonSeq, Weight};

/// Shape of a Hermitian bundle name. Partitions are weakly decreasing with
/// no zero parts; `lambda` decorates `Λ^{0,1}` and `mu` decorates `Λ^{1,0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NameShape {
    Forms { p: usize, q: usize },
    Schur { lambda: Vec<u32>, mu: Vec<u32> },
    Raw(Weight),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NameSource {
    Table,
    Rule,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianName {
    pub shape: NameShape,
    pub source: NameSource,
}

fn is_column(p: &[u32]) -> bool {
    p.iter().all(|&x| x == 1)
}

/// Names `S^λΛ^{0,1} ⊗_⊥ S^μΛ^{1,0}` by forms when both diagrams are
/// single columns.
fn shape_from_pair(lambda: Vec<u32>, mu: Vec<u32>) -> NameShape {
    if is_column(&lambda) && is_column(&mu) {
        NameShape::Forms {
            p: mu.len(),
            q: lambda.len(),
        }
    } else {
        NameShape::Schur { lambda, mu }
    }
}

impl NameShape {
    /// Complex conjugate: swaps the roles of `Λ^{0,1}` and `Λ^{1,0}`.
    pub fn conjugate(&self) -> NameShape {
        match self {
            NameShape::Forms { p, q } => NameShape::Forms { p: *q, q: *p },
            NameShape::Schur { lambda, mu } => NameShape::Schur {
                lambda: mu.clone(),
                mu: lambda.clone(),
            },
            NameShape::Raw(w) => NameShape::Raw(w.clone()),
        }
    }

    pub fn unicode(&self) -> String {
        match self {
            NameShape::Forms { p, q } => {
                let perp = if *p > 0 && *q > 0 { "_⊥" } else { "" };
                format!("Λ^{{{p},{q}}}{perp}")
            }
            NameShape::Schur { lambda, mu } => {
                let parts: Vec<String> = [(lambda, "Λ^{0,1}"), (mu, "Λ^{1,0}")]
                    .into_iter()
                    .filter(|(d, _)| !d.is_empty())
                    .map(|(d, base)| format!("{}{base}", schur_prefix_unicode(d)))
                    .collect();
                parts.join("⊗_⊥")
            }
            NameShape::Raw(w) => format!("({w})"),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            NameShape::Forms { p, q } => {
                let perp = if *p > 0 && *q > 0 { "_\\perp" } else { "" };
                format!("\\Lambda^{{{p},{q}}}{perp}")
            }
            NameShape::Schur { lambda, mu } => {
                let parts: Vec<String> = [(lambda, "\\Lambda^{0,1}"), (mu, "\\Lambda^{1,0}")]
                    .into_iter()
                    .filter(|(d, _)| !d.is_empty())
                    .map(|(d, base)| format!("{}{base}", schur_prefix_latex(d)))
                    .collect();
                parts.join("\\otimes_\\perp ")
            }
            NameShape::Raw(w) => format!("({w})"),
        }
    }
}

fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

fn join_parts(d: &[u32]) -> String {
    d.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn schur_prefix_unicode(d: &[u32]) -> String {
    if d == [1] {
        String::new()
    } else if d.len() == 1 {
        format!("S{}", superscript(d[0]))
    } else if is_column(d) {
        format!("Λ{}", superscript(d.len() as u32))
    } else {
        format!("S^{{{}}}", join_parts(d))
    }
}

fn schur_prefix_latex(d: &[u32]) -> String {
    if d == [1] {
        String::new()
    } else if d.len() == 1 {
        format!("S^{{{}}}", d[0])
    } else if is_column(d) {
        format!("\\Lambda^{{{}}}", d.len())
    } else {
        format!("S^{{{}}}", join_parts(d))
    }
}

/// Names pinned for the standard complexes on `CP_2` and `CP_3`. They are
/// never replaced by the rule.
#[derive(Clone, Debug)]
pub struct NameTable {
    entries: BTreeMap<(usize, Weight), NameShape>,
}

impl NameTable {
    pub fn standard() -> Self {
        let forms = |p, q| NameShape::Forms { p, q };
        let schur = |l: &[u32], m: &[u32]| NameShape::Schur {
            lambda: l.to_vec(),
            mu: m.to_vec(),
        };
        let rows: Vec<(&[i64], NameShape)> = vec![
            (&[0, 0, 0], forms(0, 0)),
            (&[1, 0, 1], forms(0, 1)),
            (&[-2, 1, 0], forms(1, 0)),
            (&[2, 1, 0], forms(0, 2)),
            (&[-1, 1, 1], forms(1, 1)),
            (&[0, 2, 0], forms(1, 2)),
            (&[2, 0, 2], schur(&[2], &[])),
            (&[-4, 2, 0], schur(&[], &[2])),
            (&[3, 1, 1], schur(&[2, 1], &[])),
            (&[-2, 2, 2], schur(&[2], &[2])),
            (&[-1, 3, 1], schur(&[2, 1], &[2])),
            (&[0, 0], forms(0, 0)),
            (&[1, 1], forms(0, 1)),
            (&[-2, 1], forms(1, 0)),
            (&[-1, 2], forms(1, 1)),
            (&[2, 2], schur(&[2], &[])),
            (&[-4, 2], schur(&[], &[2])),
            (&[-2, 4], schur(&[2], &[2])),
        ];
        let entries = rows
            .into_iter()
            .map(|(c, shape)| {
                let w = Weight::new(c.to_vec()).expect("table weights are valid");
                ((w.n(), w), shape)
            })
            .collect();
        Self { entries }
    }

    pub fn lookup(&self, label: &Weight) -> Option<&NameShape> {
        self.entries.get(&(label.n(), label.clone()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &NameShape)> {
        self.entries.iter().map(|((_, w), s)| (w, s))
    }
}

/// Reads off the pair of Young diagrams from the trace-free epsilon
/// sequence. Returns `None` when the label carries a fractional power of
/// the canonical bundle.
pub fn schur_pair(label: &Weight) -> Option<(Vec<u32>, Vec<u32>)> {
    let e = to_epsilon(label);
    let e = e.entries();
    let len = e.len() as i64;
    let total: i64 = e.iter().sum();
    if total % len != 0 {
        return None;
    }
    let mean = total / len;
    let tail: Vec<i64> = e[1..].iter().map(|x| x - mean).collect();
    let mu: Vec<u32> = tail.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
    let lambda: Vec<u32> = tail
        .iter()
        .rev()
        .filter(|&&x| x < 0)
        .map(|&x| (-x) as u32)
        .collect();
    Some((lambda, mu))
}

/// Display name for an irreducible bundle on `M(n)`: the pinned table
/// first, then the Schur pair, then the bare label.
pub fn hermitian_name(b: &Bundle) -> HermitianName {
    name_for_label(&NameTable::standard(), b.label())
}

pub fn name_for_label(table: &NameTable, label: &Weight) -> HermitianName {
    if let Some(shape) = table.lookup(label) {
        return HermitianName {
            shape: shape.clone(),
            source: NameSource::Table,
        };
    }
    match schur_pair(label) {
        Some((lambda, mu)) => HermitianName {
            shape: shape_from_pair(lambda, mu),
            source: NameSource::Rule,
        },
        None => HermitianName {
            shape: NameShape::Raw(label.clone()),
            source: NameSource::Fallback,
        },
    }
}

/// Label of the complex conjugate bundle on `M(n)`.
pub fn conjugate_label(label: &Weight) -> Result<Weight> {
    let e = to_epsilon(label);
    let e = e.entries();
    let mut out = Vec::with_capacity(e.len());
    out.push(-e[0]);
    out.extend(e[1..].iter().rev().map(|x| -x));
    from_epsilon(&EpsilonSeq::normalized(out)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Document(format!("unknown format `{other}`"))),
        }
    }
}

pub fn operator_symbol(order: u32, kind: OperatorType) -> String {
    match (order, kind) {
        (1, OperatorType::D) => "∂".into(),
        (1, OperatorType::Dbar) => "∂̄".into(),
        (2, OperatorType::Mixed) => "∂∂̄".into(),
        (k, OperatorType::D) => format!("∂^({k})"),
        (k, OperatorType::Dbar) => format!("∂̄^({k})"),
        (k, OperatorType::Mixed) => format!("(∂,∂̄)^({k})"),
    }
}

pub fn operator_latex(order: u32, kind: OperatorType) -> String {
    match (order, kind) {
        (1, OperatorType::D) => "\\partial".into(),
        (1, OperatorType::Dbar) => "\\overline\\partial".into(),
        (2, OperatorType::Mixed) => "\\partial\\overline\\partial".into(),
        (k, OperatorType::D) => format!("\\partial^{{({k})}}"),
        (k, OperatorType::Dbar) => format!("\\overline\\partial^{{({k})}}"),
        (k, OperatorType::Mixed) => format!("(\\partial,\\overline\\partial)^{{({k})}}"),
    }
}

fn term_name(label: &Weight, mult: u64) -> String {
    let name = name_for_label(&NameTable::standard(), label)
        .shape
        .unicode();
    if mult > 1 {
        format!("{mult}·{name}")
    } else {
        name
    }
}

fn term_latex(label: &Weight, mult: u64) -> String {
    let name = name_for_label(&NameTable::standard(), label).shape.latex();
    if mult > 1 {
        format!("{mult}\\,{name}")
    } else {
        name
    }
}

/// Hermitian names of a sum on `M(n)`, joined by `⊕`.
pub fn sum_names(x: &BundleSum) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.terms()
        .map(|(w, m)| term_name(w, m))
        .collect::<Vec<_>>()
        .join("⊕")
}

/// One line per column: names, labels and ranks, separated by ` | `.
pub fn column_line(columns: &[BundleSum]) -> String {
    columns
        .iter()
        .map(sum_names)
        .collect::<Vec<_>>()
        .join(" | ")
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct TermEntry {
    label: Vec<i64>,
    rank: u64,
    name: String,
    mult: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct ArrowEntry {
    col: usize,
    from: usize,
    to: usize,
    order: u32,
    #[serde(rename = "type")]
    kind: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct CancelEntry {
    col: usize,
    label: Vec<i64>,
}

#[derive(Serialize, Deserialize, Debug)]
struct ComplexDoc {
    space: String,
    n: usize,
    columns: Vec<Vec<TermEntry>>,
    arrows: Vec<ArrowEntry>,
    cohomology: CohomologyResult,
    conjectural: bool,
    #[serde(default)]
    cohomology_ambiguous: bool,
    #[serde(default)]
    cancelled: Vec<CancelEntry>,
}

#[derive(Serialize, Deserialize, Debug)]
struct CellEntry {
    p: usize,
    q: usize,
    terms: Vec<TermEntry>,
}

#[derive(Serialize, Deserialize, Debug)]
struct PageDoc {
    space: String,
    n: usize,
    cells: Vec<CellEntry>,
}

fn term_entries(x: &BundleSum) -> Result<Vec<TermEntry>> {
    x.terms()
        .map(|(w, m)| {
            Ok(TermEntry {
                label: w.coeffs().to_vec(),
                rank: Bundle::new(x.space().clone(), w.clone())?.rank()?,
                name: term_name(w, 1),
                mult: m,
            })
        })
        .collect()
}

fn sum_from_entries(space: &FlagSpace, entries: Vec<TermEntry>) -> Result<BundleSum> {
    let mut out = BundleSum::zero(space.clone());
    for t in entries {
        let w = Weight::new(t.label)?;
        let rank = Bundle::new(space.clone(), w.clone())?.rank()?;
        if rank != t.rank {
            return Err(Error::Document(format!(
                "rank {} does not match ({w}) of rank {rank}",
                t.rank
            )));
        }
        if t.mult == 0 {
            return Err(Error::Document(format!("zero multiplicity for ({w})")));
        }
        out.add(w, t.mult)?;
    }
    Ok(out)
}

fn index_of(x: &BundleSum, w: &Weight) -> usize {
    x.terms().position(|(v, _)| v == w).unwrap_or(usize::MAX)
}

/// Arrows ordered by column, then by the positions of their ends.
fn arrows_in_display_order(c: &Complex) -> Vec<(usize, usize, &Arrow)> {
    let mut out: Vec<(usize, usize, &Arrow)> = c
        .arrows()
        .iter()
        .map(|a| {
            (
                index_of(&c.columns()[a.col], &a.from),
                index_of(&c.columns()[a.col + 1], &a.to),
                a,
            )
        })
        .collect();
    out.sort_by_key(|(i, j, a)| (a.col, *i, *j));
    out
}

fn arrow_entries(c: &Complex) -> Vec<ArrowEntry> {
    arrows_in_display_order(c)
        .into_iter()
        .map(|(from, to, a)| ArrowEntry {
            col: a.col,
            from,
            to,
            order: a.order,
            kind: a.kind.as_str().into(),
        })
        .collect()
}

fn check_space(token: &str, n: usize) -> Result<FlagSpace> {
    let space = FlagSpace::from_token(token, n)?;
    if space.kind() != SpaceKind::M {
        return Err(Error::SpaceMismatch(
            FlagSpace::m(n)?.to_string(),
            space.to_string(),
        ));
    }
    Ok(space)
}

pub fn complex_to_json(c: &Complex) -> Result<Value> {
    let m = FlagSpace::m(c.n())?;
    let doc = ComplexDoc {
        space: m.token(),
        n: c.n(),
        columns: c
            .columns()
            .iter()
            .map(term_entries)
            .collect::<Result<_>>()?,
        arrows: arrow_entries(c),
        cohomology: c.cohomology().clone(),
        conjectural: c.is_conjectural(),
        cohomology_ambiguous: c.cohomology_ambiguous(),
        cancelled: c
            .cancelled()
            .iter()
            .map(|x| CancelEntry {
                col: x.col,
                label: x.label.coeffs().to_vec(),
            })
            .collect(),
    };
    serde_json::to_value(doc).map_err(|e| Error::Document(e.to_string()))
}

pub fn complex_from_json(v: &Value) -> Result<Complex> {
    let doc: ComplexDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::Document(e.to_string()))?;
    let space = check_space(&doc.space, doc.n)?;
    let columns = doc
        .columns
        .into_iter()
        .map(|col| sum_from_entries(&space, col))
        .collect::<Result<Vec<_>>>()?;
    let mut arrows = Vec::with_capacity(doc.arrows.len());
    for a in doc.arrows {
        let pick = |col: usize, i: usize| -> Result<Weight> {
            columns
                .get(col)
                .and_then(|c| c.terms().nth(i))
                .map(|(w, _)| w.clone())
                .ok_or_else(|| {
                    Error::Document(format!("arrow index {i} out of range in column {col}"))
                })
        };
        arrows.push(Arrow {
            col: a.col,
            from: pick(a.col, a.from)?,
            to: pick(a.col + 1, a.to)?,
            order: a.order,
            kind: OperatorType::parse(&a.kind)?,
        });
    }
    arrows.sort();
    let cancelled = doc
        .cancelled
        .into_iter()
        .map(|x| {
            Ok(Cancellation {
                col: x.col,
                label: Weight::new(x.label)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Complex::from_parts(doc.n, columns, arrows, doc.cohomology)?
        .with_flags(doc.conjectural, doc.cohomology_ambiguous)
        .with_cancelled(cancelled))
}

pub fn page_to_json(page: &E1Page) -> Result<Value> {
    let m = FlagSpace::m(page.n())?;
    let doc = PageDoc {
        space: m.token(),
        n: page.n(),
        cells: page
            .cells()
            .map(|((p, q), x)| {
                Ok(CellEntry {
                    p,
                    q,
                    terms: term_entries(x)?,
                })
            })
            .collect::<Result<_>>()?,
    };
    serde_json::to_value(doc).map_err(|e| Error::Document(e.to_string()))
}

pub fn page_from_json(v: &Value) -> Result<E1Page> {
    let doc: PageDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::Document(e.to_string()))?;
    let space = check_space(&doc.space, doc.n)?;
    let mut page = E1Page::new(doc.n);
    for cell in doc.cells {
        if cell.p > doc.n {
            return Err(Error::DegreeOutOfRange {
                p: cell.p,
                max: doc.n,
            });
        }
        for (w, m) in sum_from_entries(&space, cell.terms)?.terms() {
            page.insert(cell.p, cell.q, w.clone(), m)?;
        }
    }
    Ok(page)
}

pub fn sum_to_json(x: &BundleSum) -> Result<Value> {
    let terms = term_entries(x)?;
    let mut v = serde_json::to_value(x).map_err(|e| Error::Document(e.to_string()))?;
    if x.space().kind() == SpaceKind::M {
        if let Some(list) = v.get_mut("terms").and_then(Value::as_array_mut) {
            for (slot, t) in list.iter_mut().zip(terms) {
                slot["name"] = Value::String(t.name);
            }
        }
    }
    Ok(v)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

fn text_complex(c: &Complex) -> String {
    let mut out = String::new();
    let tag = if c.is_conjectural() {
        "  [conjectural]"
    } else {
        ""
    };
    let _ = writeln!(out, "complex on CP_{}{tag}", c.n());
    let _ = writeln!(out, "{}", column_line(c.columns()));
    let labels: Vec<String> = c.columns().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "labels: {}", labels.join(" | "));
    let ranks: Vec<String> = c
        .columns()
        .iter()
        .map(|x| {
            x.rank()
                .map(|r| r.to_string())
                .unwrap_or_else(|_| "?".into())
        })
        .collect();
    let _ = writeln!(out, "ranks: {}", ranks.join(" | "));
    if !c.arrows().is_empty() {
        let _ = writeln!(out, "operators:");
        for (_, _, a) in arrows_in_display_order(c) {
            let _ = writeln!(
                out,
                "  {}: {} --{}--> {}",
                a.col,
                term_name(&a.from, 1),
                operator_symbol(a.order, a.kind),
                term_name(&a.to, 1)
            );
        }
    }
    if !c.cancelled().is_empty() {
        let removed: Vec<String> = c
            .cancelled()
            .iter()
            .map(|x| format!("({}) in {},{}", x.label, x.col, x.col + 1))
            .collect();
        let _ = writeln!(out, "cancelled: {}", removed.join("; "));
    }
    if c.cohomology_ambiguous() {
        let _ = writeln!(
            out,
            "cohomology (upper bound, connecting maps undetermined):"
        );
    } else {
        let _ = writeln!(out, "cohomology:");
    }
    let _ = writeln!(out, "{}", c.cohomology());
    out
}

fn text_page(page: &E1Page) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "E1 page on CP_{}", page.n());
    for ((p, q), x) in page.cells() {
        let _ = writeln!(out, "E1[{p},{q}] = {}  {x}", sum_names(x));
    }
    out
}

const LATEX_HEAD: &str =
    "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n";
const LATEX_TAIL: &str = "\\end{document}\n";

fn latex_sum(x: &BundleSum) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.terms()
        .map(|(w, m)| term_latex(w, m))
        .collect::<Vec<_>>()
        .join("\\oplus ")
}

pub fn latex_cohomology(h: &CohomologyResult) -> String {
    if h.vanishes() {
        return "H^* = 0".into();
    }
    h.entries()
        .iter()
        .map(|e| format!("H^{{{}}} = [{}]\\ (\\dim {})", e.degree, e.weight, e.dim))
        .collect::<Vec<_>>()
        .join(",\\quad ")
}

pub fn latex_label(w: &Weight) -> String {
    format!("({w})")
}

/// A sum written by its labels, for spaces other than `CP_n`.
pub fn latex_sum_labels(x: &BundleSum) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.terms()
        .map(|(w, m)| {
            if m > 1 {
                format!("{m}\\,({w})")
            } else {
                format!("({w})")
            }
        })
        .collect::<Vec<_>>()
        .join("\\oplus ")
}

#[derive(Deserialize)]
struct GradesDoc {
    n: usize,
    grades: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    conjectural: bool,
}

/// Reads `{"n":3,"grades":[[[2,-1,0],[-1,1,1]],[[1,0,1]]],"conjectural":false}`,
/// subbundle first; a label listed twice counts twice.
pub fn graded_input_from_json(v: &Value) -> Result<GradedInput> {
    let doc: GradesDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::Document(e.to_string()))?;
    let f = FlagSpace::f(doc.n)?;
    let mut grades = Vec::with_capacity(doc.grades.len());
    for g in doc.grades {
        let labels = g.into_iter().map(Weight::new).collect::<Result<Vec<_>>>()?;
        for w in &labels {
            if w.n() != doc.n {
                return Err(Error::RankMismatch {
                    expected: doc.n,
                    got: w.n(),
                });
            }
        }
        grades.push(BundleSum::from_labels(&f, &labels)?);
    }
    Ok(GradedInput::new(grades)?.with_conjectural(doc.conjectural))
}

fn latex_complex(c: &Complex) -> String {
    let mut out = String::from(LATEX_HEAD);
    if c.is_conjectural() {
        out.push_str("Conjectural input.\n");
    }
    let rows = c
        .columns()
        .iter()
        .map(|x| x.distinct_len())
        .max()
        .unwrap_or(0)
        .max(1);
    let spec = vec!["c"; 2 * c.columns().len() + 1].join("");
    let _ = writeln!(out, "\\[\n\\begin{{array}}{{{spec}}}");
    for r in 0..rows {
        let mut cells = vec![if r == 0 {
            "0\\rightarrow".to_string()
        } else {
            String::new()
        }];
        for (i, col) in c.columns().iter().enumerate() {
            cells.push(
                col.terms()
                    .nth(r)
                    .map(|(w, m)| term_latex(w, m))
                    .unwrap_or_default(),
            );
            let last = i + 1 == c.columns().len();
            cells.push(match (r, last) {
                (0, true) => "\\rightarrow 0".to_string(),
                (0, false) => "\\rightarrow".to_string(),
                _ => String::new(),
            });
        }
        let _ = writeln!(out, "{} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{array}\n\\]\n");
    if !c.arrows().is_empty() {
        out.push_str("\\begin{align*}\n");
        let lines: Vec<String> = arrows_in_display_order(c)
            .into_iter()
            .map(|(_, _, a)| {
                format!(
                    "{} &\\xrightarrow{{{}}} {}",
                    term_latex(&a.from, 1),
                    operator_latex(a.order, a.kind),
                    term_latex(&a.to, 1)
                )
            })
            .collect();
        out.push_str(&lines.join(" \\\\\n"));
        out.push_str("\n\\end{align*}\n");
    }
    let _ = writeln!(out, "\\[ {} \\]", latex_cohomology(c.cohomology()));
    out.push_str(LATEX_TAIL);
    out
}

fn latex_page(page: &E1Page) -> String {
    let mut out = String::from(LATEX_HEAD);
    out.push_str("\\[\n\\begin{array}{ccl}\n");
    for ((p, q), x) in page.cells() {
        let _ = writeln!(out, "E_1^{{{p},{q}}} & = & {} \\\\", latex_sum(x));
    }
    out.push_str("\\end{array}\n\\]\n");
    out.push_str(LATEX_TAIL);
    out
}

pub fn emit_complex(c: &Complex, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => text_complex(c),
        Format::Json => pretty(&complex_to_json(c)?) + "\n",
        Format::Latex => latex_complex(c),
    })
}

pub fn emit_page(page: &E1Page, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => text_page(page),
        Format::Json => pretty(&page_to_json(page)?) + "\n",
        Format::Latex => latex_page(page),
    })
}

pub fn transform_to_json(t: &Transform) -> Result<Value> {
    match t {
        Transform::Collapsed(c) => complex_to_json(c),
        Transform::Page {
            page,
            cohomology,
            cohomology_ambiguous,
        } => {
            let mut v = page_to_json(page)?;
            v["collapsed"] = Value::Bool(false);
            v["cohomology"] =
                serde_json::to_value(cohomology).map_err(|e| Error::Document(e.to_string()))?;
            v["cohomology_ambiguous"] = Value::Bool(*cohomology_ambiguous);
            Ok(v)
        }
    }
}

pub fn emit_transform(t: &Transform, format: Format) -> Result<String> {
    match (t, format) {
        (Transform::Collapsed(c), f) => emit_complex(c, f),
        (Transform::Page { .. }, Format::Json) => Ok(pretty(&transform_to_json(t)?) + "\n"),
        (
            Transform::Page {
                page, cohomology, ..
            },
            Format::Text,
        ) => Ok(format!(
            "{}page does not collapse to a single row\ncohomology:\n{cohomology}\n",
            text_page(page)
        )),
        (Transform::Page { page, .. }, Format::Latex) => emit_page(page, Format::Latex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::penrose::{transform, GradedInput};

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec()).unwrap()
    }

    fn name(c: &[i64]) -> String {
        name_for_label(&NameTable::standard(), &w(c))
            .shape
            .unicode()
    }

    #[test]
    fn table_names() {
        assert_eq!(name(&[-1, 1, 1]), "Λ^{1,1}_⊥");
        assert_eq!(name(&[-4, 2, 0]), "S²Λ^{1,0}");
        assert_eq!(name(&[0, 2, 0]), "Λ^{1,2}_⊥");
        assert_eq!(name(&[-1, 3, 1]), "S^{2,1}Λ^{0,1}⊗_⊥S²Λ^{1,0}");
        assert_eq!(name(&[7, 3, 2]), "(7,3,2)");
        assert_eq!(
            name_for_label(&NameTable::standard(), &w(&[7, 3, 2])).source,
            NameSource::Fallback
        );
    }

    #[test]
    fn rule_agrees_with_table() {
        for (label, shape) in NameTable::standard().entries() {
            let (lambda, mu) = schur_pair(label).unwrap();
            assert_eq!(&shape_from_pair(lambda, mu), shape, "({label})");
        }
    }

    #[test]
    fn table_is_injective_per_rank() {
        let t = NameTable::standard();
        for n in [2, 3] {
            let names: Vec<String> = t
                .entries()
                .filter(|(w, _)| w.n() == n)
                .map(|(_, s)| s.unicode())
                .collect();
            let mut dedup = names.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), names.len());
        }
        assert_eq!(t.len(), 18);
    }

    #[test]
    fn conjugate_pairs() {
        for (a, b) in [
            (&[1i64, 0, 1][..], &[-2i64, 1, 0][..]),
            (&[2, 0, 2], &[-4, 2, 0]),
        ] {
            assert_eq!(conjugate_label(&w(a)).unwrap(), w(b));
            assert_eq!(conjugate_label(&w(b)).unwrap(), w(a));
            let t = NameTable::standard();
            assert_eq!(
                t.lookup(&w(a)).unwrap().conjugate(),
                *t.lookup(&w(b)).unwrap()
            );
        }
        assert_eq!(conjugate_label(&w(&[-1, 1, 1])).unwrap(), w(&[-1, 1, 1]));
    }

    #[test]
    fn canonical_bundle_names() {
        assert_eq!(name(&[4, 0, 0]), "Λ^{0,3}");
        assert_eq!(name(&[-4, 0, 0]), "Λ^{3,0}");
        assert_eq!(name(&[1, 0, 0]), "(1,0,0)");
        assert_eq!(name(&[-2, 3, 0]), "Λ²Λ^{0,1}⊗_⊥S²Λ^{1,0}");
    }

    #[test]
    fn lopsided_text() {
        let t = transform(&GradedInput::trivial(3).unwrap()).unwrap();
        let c = t.complex().unwrap();
        assert_eq!(
            column_line(c.columns()),
            "Λ^{0,0} | Λ^{0,1}⊕Λ^{1,0} | Λ^{0,2}⊕Λ^{1,1}_⊥ | Λ^{1,2}_⊥"
        );
        let text = emit_complex(c, Format::Text).unwrap();
        assert!(text.contains("0: Λ^{0,0} --∂̄--> Λ^{0,1}"));
    }

    #[test]
    fn json_round_trips() {
        for input in [
            GradedInput::trivial(2).unwrap(),
            GradedInput::trivial(3).unwrap(),
            GradedInput::tangent(3).unwrap(),
            GradedInput::extension_v().unwrap(),
        ] {
            let c = transform(&input).unwrap().complex().unwrap().clone();
            let v = complex_to_json(&c).unwrap();
            assert_eq!(complex_from_json(&v).unwrap(), c);
            let text = emit_complex(&c, Format::Json).unwrap();
            let parsed: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(complex_from_json(&parsed).unwrap(), c);
            let page = crate::penrose::e1_page(&input).unwrap();
            assert_eq!(page_from_json(&page_to_json(&page).unwrap()).unwrap(), page);
        }
    }

    #[test]
    fn json_rejects_bad_documents() {
        let c = transform(&GradedInput::trivial(3).unwrap())
            .unwrap()
            .complex()
            .unwrap()
            .clone();
        let mut v = complex_to_json(&c).unwrap();
        v["columns"][0][0]["rank"] = Value::from(2);
        assert!(complex_from_json(&v).is_err());
        let mut v = complex_to_json(&c).unwrap();
        v["arrows"][0]["to"] = Value::from(9);
        assert!(complex_from_json(&v).is_err());
        let mut v = complex_to_json(&c).unwrap();
        v["space"] = Value::from("F");
        assert!(complex_from_json(&v).is_err());
    }

    #[test]
    fn latex_has_second_order_labels() {
        let t = transform(&GradedInput::tangent(3).unwrap()).unwrap();
        let tex = emit_complex(t.complex().unwrap(), Format::Latex).unwrap();
        assert!(tex.starts_with("\\documentclass"));
        assert!(tex.contains("\\overline\\partial^{(2)}"));
        assert!(tex.contains("\\partial\\overline\\partial"));
        assert!(tex.contains("\\partial^{(2)}"));
        assert!(tex.trim_end().ends_with("\\end{document}"));
    }
}
