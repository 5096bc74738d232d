//! The Penrose transform along `F(n) <- G(n) -> M(n)`.
//!
//! An input bundle on the twistor space is pulled back to the correspondence
//! space, twisted by the relative forms, and pushed down to `M(n)`. The
//! resulting E1 page usually sits in a single row and then reads directly as
//! a complex of invariant differential operators; summands repeated in
//! adjacent columns are eliminated in pairs, composing the operators around
//! them into higher-order ones.

use std::collections::BTreeMap;
use std::fmt;

use crate::bbw::{cohomology, direct_images, CohomologyResult};
use crate::charlib::tensor;
use crate::error::{Error, Result};
use crate::flagspace::{Bundle, BundleSum, FlagSpace, SpaceKind};
use crate::relforms::{pullback, relative_forms, root, tangent_series};
use crate::rootsys::Weight;

/// A bundle on `F(n)` given by its composition series, subbundle first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedInput {
    n: usize,
    grades: Vec<BundleSum>,
    conjectural: bool,
}

impl GradedInput {
    pub fn new(grades: Vec<BundleSum>) -> Result<Self> {
        let first = grades
            .first()
            .ok_or_else(|| Error::Document("graded input needs at least one grade".into()))?;
        let n = first.space().n();
        let f = FlagSpace::f(n)?;
        for g in &grades {
            if g.space() != &f {
                return Err(Error::SpaceMismatch(f.to_string(), g.space().to_string()));
            }
        }
        Ok(Self {
            n,
            grades,
            conjectural: false,
        })
    }

    pub fn single(b: &Bundle) -> Result<Self> {
        Self::new(vec![BundleSum::single(b)])
    }

    /// The structure sheaf of `F(n)`.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::single(&Bundle::new(FlagSpace::f(n)?, Weight::zero(n)?)?)
    }

    /// The holomorphic tangent bundle of `F(n)`.
    pub fn tangent(n: usize) -> Result<Self> {
        Self::new(tangent_series(&FlagSpace::f(n)?)?)
    }

    /// The extension of `(-2,3,0) ⊕ (1,0,1)` by `(2,-1,0) ⊕ (-1,1,1)` on
    /// `F(3)`, whose existence is conjectural.
    pub fn extension_v() -> Result<Self> {
        let f = FlagSpace::f(3)?;
        let sub = BundleSum::from_labels(
            &f,
            &[Weight::new(vec![2, -1, 0])?, Weight::new(vec![-1, 1, 1])?],
        )?;
        let quot = BundleSum::from_labels(
            &f,
            &[Weight::new(vec![-2, 3, 0])?, Weight::new(vec![1, 0, 1])?],
        )?;
        Ok(Self::new(vec![sub, quot])?.with_conjectural(true))
    }

    pub fn with_conjectural(mut self, conjectural: bool) -> Self {
        self.conjectural = conjectural;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grades(&self) -> &[BundleSum] {
        &self.grades
    }

    pub fn is_conjectural(&self) -> bool {
        self.conjectural
    }
}

/// Cells `(p, q)` of the first page, each a bundle sum on `M(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Page {
    n: usize,
    cells: BTreeMap<(usize, usize), BundleSum>,
}

impl E1Page {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            cells: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest form degree, the relative dimension of `G(n) -> F(n)`.
    pub fn max_p(&self) -> usize {
        self.n
    }

    pub fn cell(&self, p: usize, q: usize) -> Option<&BundleSum> {
        self.cells.get(&(p, q))
    }

    /// Nonempty cells in `(p, q)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &BundleSum)> {
        self.cells
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(k, s)| (*k, s))
    }

    pub fn max_q(&self) -> usize {
        self.cells().map(|((_, q), _)| q).max().unwrap_or(0)
    }

    pub fn insert(&mut self, p: usize, q: usize, label: Weight, mult: u64) -> Result<()> {
        let m = FlagSpace::m(self.n)?;
        self.cells
            .entry((p, q))
            .or_insert_with(|| BundleSum::zero(m))
            .add(label, mult)
    }

    /// The `q = 0` row, one sum per form degree.
    pub fn bottom_row(&self) -> Result<Vec<BundleSum>> {
        let m = FlagSpace::m(self.n)?;
        Ok((0..=self.n)
            .map(|p| {
                self.cell(p, 0)
                    .cloned()
                    .unwrap_or_else(|| BundleSum::zero(m.clone()))
            })
            .collect())
    }
}

pub fn e1_page(input: &GradedInput) -> Result<E1Page> {
    let n = input.n();
    let g = FlagSpace::g(n)?;
    let m = FlagSpace::m(n)?;
    let forms = (0..=n)
        .map(|p| relative_forms(n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut page = E1Page::new(n);
    for grade in input.grades() {
        for (label, mult) in grade.terms() {
            let pulled = pullback(&Bundle::new(grade.space().clone(), label.clone())?)?;
            let twist = BundleSum::single(&pulled);
            for (p, form) in forms.iter().enumerate() {
                for (u, k) in tensor(&g, form, &twist)?.terms() {
                    let on_g = Bundle::new(g.clone(), u.clone())?;
                    if let Some((q, image)) = direct_images(&g, &m, &on_g)? {
                        page.insert(p, q, image.label().clone(), k * mult)?;
                    }
                }
            }
        }
    }
    Ok(page)
}

/// Whether an operator is holomorphic (`∂`), antiholomorphic (`∂̄`), or a
/// composite of both kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorType {
    D,
    Dbar,
    Mixed,
}

impl OperatorType {
    pub fn compose(self, other: OperatorType) -> OperatorType {
        if self == other {
            self
        } else {
            OperatorType::Mixed
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorType::D => "d",
            OperatorType::Dbar => "dbar",
            OperatorType::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(OperatorType::D),
            "dbar" => Ok(OperatorType::Dbar),
            "mixed" => Ok(OperatorType::Mixed),
            other => Err(Error::Document(format!("unknown operator type `{other}`"))),
        }
    }
}

/// An invariant operator from a summand of column `col` to a summand of
/// column `col + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub col: usize,
    pub from: Weight,
    pub to: Weight,
    pub order: u32,
    pub kind: OperatorType,
}

/// One eliminated pair: `label` removed from columns `col` and `col + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cancellation {
    pub col: usize,
    pub label: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    n: usize,
    columns: Vec<BundleSum>,
    arrows: Vec<Arrow>,
    cohomology: CohomologyResult,
    cohomology_ambiguous: bool,
    conjectural: bool,
    cancelled: Vec<Cancellation>,
}

impl Complex {
    /// Assembles a complex from parts, checking that every column lives on
    /// `M(n)` and every arrow joins existing summands of adjacent columns.
    pub fn from_parts(
        n: usize,
        columns: Vec<BundleSum>,
        arrows: Vec<Arrow>,
        cohomology: CohomologyResult,
    ) -> Result<Self> {
        let m = FlagSpace::m(n)?;
        for c in &columns {
            if c.space() != &m {
                return Err(Error::SpaceMismatch(m.to_string(), c.space().to_string()));
            }
        }
        let c = Self {
            n,
            columns,
            arrows,
            cohomology,
            cohomology_ambiguous: false,
            conjectural: false,
            cancelled: Vec::new(),
        };
        for a in &c.arrows {
            if a.col + 1 >= c.columns.len()
                || c.columns[a.col].multiplicity(&a.from) == 0
                || c.columns[a.col + 1].multiplicity(&a.to) == 0
            {
                return Err(Error::Document(format!(
                    "arrow ({}) -> ({}) at column {} does not join adjacent summands",
                    a.from, a.to, a.col
                )));
            }
        }
        Ok(c)
    }

    pub fn with_flags(mut self, conjectural: bool, cohomology_ambiguous: bool) -> Self {
        self.conjectural = conjectural;
        self.cohomology_ambiguous = cohomology_ambiguous;
        self
    }

    pub fn with_cancelled(mut self, cancelled: Vec<Cancellation>) -> Self {
        self.cancelled = cancelled;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[BundleSum] {
        &self.columns
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrows_from(&self, col: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.col == col)
    }

    pub fn cohomology(&self) -> &CohomologyResult {
        &self.cohomology
    }

    /// Set when the grade-wise cohomology could be cut down by connecting
    /// maps, so the attached result is an upper bound rather than exact.
    pub fn cohomology_ambiguous(&self) -> bool {
        self.cohomology_ambiguous
    }

    pub fn is_conjectural(&self) -> bool {
        self.conjectural
    }

    pub fn cancelled(&self) -> &[Cancellation] {
        &self.cancelled
    }

    pub fn column_ranks(&self) -> Result<Vec<u64>> {
        self.columns.iter().map(|c| c.rank()).collect()
    }

    /// Alternating sum of column ranks.
    pub fn euler_characteristic(&self) -> Result<i128> {
        Ok(self
            .column_ranks()?
            .iter()
            .enumerate()
            .map(|(p, &r)| if p % 2 == 0 { r as i128 } else { -(r as i128) })
            .sum())
    }

    /// Pairs `(col, label)` that occur in both `col` and `col + 1`, in the
    /// order `cancel` processes them.
    pub fn cancellable_pairs(&self) -> Vec<Cancellation> {
        let mut out = Vec::new();
        for p in 0..self.columns.len().saturating_sub(1) {
            for (w, _) in self.columns[p].terms() {
                if self.columns[p + 1].multiplicity(w) > 0 {
                    out.push(Cancellation {
                        col: p,
                        label: w.clone(),
                    });
                }
            }
        }
        out
    }

    /// Eliminates one copy of `label` from columns `col` and `col + 1`,
    /// composing every operator into the lower copy with every operator out
    /// of the upper copy.
    pub fn cancel_pair(&mut self, col: usize, label: &Weight) -> Result<()> {
        if col + 1 >= self.columns.len()
            || self.columns[col].multiplicity(label) == 0
            || self.columns[col + 1].multiplicity(label) == 0
        {
            return Err(Error::Document(format!(
                "({label}) is not repeated in columns {col} and {}",
                col + 1
            )));
        }
        let into: Vec<Arrow> = self
            .arrows
            .iter()
            .filter(|a| a.col == col && &a.to == label && &a.from != label)
            .cloned()
            .collect();
        let out_of: Vec<Arrow> = self
            .arrows
            .iter()
            .filter(|a| a.col == col && &a.from == label && &a.to != label)
            .cloned()
            .collect();
        for a in &into {
            for b in &out_of {
                let exists = self
                    .arrows
                    .iter()
                    .any(|x| x.col == col && x.from == a.from && x.to == b.to);
                if !exists {
                    self.arrows.push(Arrow {
                        col,
                        from: a.from.clone(),
                        to: b.to.clone(),
                        order: a.order + b.order,
                        kind: a.kind.compose(b.kind),
                    });
                }
            }
        }
        self.columns[col].remove_one(label);
        self.columns[col + 1].remove_one(label);
        let gone_low = self.columns[col].multiplicity(label) == 0;
        let gone_high = self.columns[col + 1].multiplicity(label) == 0;
        self.arrows.retain(|a| {
            let touches_low =
                (a.col + 1 == col && &a.to == label) || (a.col == col && &a.from == label);
            let touches_high =
                (a.col == col && &a.to == label) || (a.col == col + 1 && &a.from == label);
            !(gone_low && touches_low) && !(gone_high && touches_high)
        });
        self.arrows.sort();
        self.cancelled.push(Cancellation {
            col,
            label: label.clone(),
        });
        Ok(())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", cols.join(" → "))
    }
}

/// First-order invariant operators between adjacent columns: `B` is reached
/// from `A` by `∂̄` when it occurs in `A ⊗ Λ^{0,1}` and by `∂` when it occurs
/// in `A ⊗ Λ^{1,0}`.
pub fn first_order_arrows(n: usize, columns: &[BundleSum]) -> Result<Vec<Arrow>> {
    let m = FlagSpace::m(n)?;
    // Λ^{0,1} has label e_1 - e_{n+1}, Λ^{1,0} has e_2 - e_1
    let antiholo = BundleSum::from_labels(&m, &[root(n, 1, n + 1)?])?;
    let holo = BundleSum::from_labels(&m, &[root(n, 2, 1)?])?;
    let mut arrows = Vec::new();
    for p in 0..columns.len().saturating_sub(1) {
        for (a, _) in columns[p].terms() {
            let single = BundleSum::from_labels(&m, [a])?;
            let via_dbar = tensor(&m, &single, &antiholo)?;
            let via_d = tensor(&m, &single, &holo)?;
            for (b, _) in columns[p + 1].terms() {
                let kind = match (via_d.multiplicity(b) > 0, via_dbar.multiplicity(b) > 0) {
                    (false, false) => continue,
                    (true, false) => OperatorType::D,
                    (false, true) => OperatorType::Dbar,
                    (true, true) => OperatorType::Mixed,
                };
                arrows.push(Arrow {
                    col: p,
                    from: a.clone(),
                    to: b.clone(),
                    order: 1,
                    kind,
                });
            }
        }
    }
    arrows.sort();
    Ok(arrows)
}

/// Reads a page concentrated in `q = 0` as a complex.
pub fn to_complex(page: &E1Page, cohomology: CohomologyResult) -> Result<Complex> {
    if let Some(((p, q), _)) = page.cells().find(|((_, q), _)| *q > 0) {
        return Err(Error::NotCollapsed { p, q });
    }
    let columns = page.bottom_row()?;
    let arrows = first_order_arrows(page.n(), &columns)?;
    Complex::from_parts(page.n(), columns, arrows, cohomology)
}

/// Eliminates repeated summands in adjacent columns until none remain,
/// lowest column first and within a column in canonical term order.
pub fn cancel(c: &Complex) -> Result<Complex> {
    let mut out = c.clone();
    while let Some(next) = out.cancellable_pairs().into_iter().next() {
        out.cancel_pair(next.col, &next.label)?;
    }
    Ok(out)
}

/// Sum of the cohomology of every graded piece. The flag is raised when an
/// isomorphic module appears in a later grade one degree below an earlier
/// grade, where a connecting map could cancel the pair.
pub fn graded_cohomology(input: &GradedInput) -> Result<(CohomologyResult, bool)> {
    let mut per_grade = Vec::with_capacity(input.grades().len());
    for grade in input.grades() {
        let mut h = CohomologyResult::vanishing();
        for b in grade.expanded() {
            h.extend(&cohomology(&Bundle::new(grade.space().clone(), b)?)?);
        }
        per_grade.push(h);
    }
    let mut ambiguous = false;
    for (i, early) in per_grade.iter().enumerate() {
        for late in &per_grade[i + 1..] {
            for a in early.entries() {
                for b in late.entries() {
                    if a.weight == b.weight && a.degree == b.degree + 1 {
                        ambiguous = true;
                    }
                }
            }
        }
    }
    let mut total = CohomologyResult::vanishing();
    for h in &per_grade {
        total.extend(h);
    }
    Ok((total, ambiguous))
}

/// Result of a transform: a complex when the page collapses, otherwise the
/// page itself together with the cohomology it converges to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Collapsed(Complex),
    Page {
        page: E1Page,
        cohomology: CohomologyResult,
        cohomology_ambiguous: bool,
    },
}

impl Transform {
    pub fn complex(&self) -> Option<&Complex> {
        match self {
            Transform::Collapsed(c) => Some(c),
            Transform::Page { .. } => None,
        }
    }
}

fn transform_inner(input: &GradedInput, cancel_repeats: bool) -> Result<Transform> {
    let page = e1_page(input)?;
    let (h, ambiguous) = graded_cohomology(input)?;
    match to_complex(&page, h.clone()) {
        Ok(c) => {
            let c = c.with_flags(input.is_conjectural(), ambiguous);
            let c = if cancel_repeats { cancel(&c)? } else { c };
            Ok(Transform::Collapsed(c))
        }
        Err(Error::NotCollapsed { .. }) => Ok(Transform::Page {
            page,
            cohomology: h,
            cohomology_ambiguous: ambiguous,
        }),
        Err(e) => Err(e),
    }
}

/// E1 page, collapse, cancellation, attached cohomology.
pub fn transform(input: &GradedInput) -> Result<Transform> {
    transform_inner(input, true)
}

/// Same as [`transform`] but stops before eliminating repeated summands.
pub fn transform_uncancelled(input: &GradedInput) -> Result<Transform> {
    transform_inner(input, false)
}

/// Convenience for inputs given directly on `F(n)`.
pub fn transform_bundle(b: &Bundle) -> Result<Transform> {
    if b.space().kind() != SpaceKind::F {
        return Err(Error::SpaceMismatch(
            FlagSpace::f(b.space().n())?.to_string(),
            b.space().to_string(),
        ));
    }
    transform(&GradedInput::single(b)?)
}
