//! Generalized flag manifolds of `SL(n+1, C)` and their irreducible
//! homogeneous bundles.
//!
//! A space is a rank plus a set of crossed Dynkin nodes. Bundles are labeled
//! by minus the lowest weight of the inducing parabolic representation, so a
//! label must be dominant on every uncrossed node.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{self, parse_weight_at, to_epsilon, EpsilonSeq, Segmentation, Weight};

/// Which realization a space stands for. `F` and `G` share a crossed set but
/// use different parabolic conventions, so they are never interchangeable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// The twistor space `F_{1,2}(C^{n+1})`.
    F,
    /// The correspondence space.
    G,
    /// The complexification of `CP_n`.
    M,
    /// Any other crossed-node set.
    Custom,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagSpace {
    kind: SpaceKind,
    n: usize,
    crossed: BTreeSet<usize>,
}

impl FlagSpace {
    pub fn f(n: usize) -> Result<Self> {
        Self::tagged(SpaceKind::F, n, [1, 2])
    }

    pub fn g(n: usize) -> Result<Self> {
        Self::tagged(SpaceKind::G, n, [1, 2])
    }

    pub fn m(n: usize) -> Result<Self> {
        Self::tagged(SpaceKind::M, n, [1])
    }

    pub fn custom(n: usize, crossed: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::tagged(SpaceKind::Custom, n, crossed)
    }

    fn tagged(kind: SpaceKind, n: usize, crossed: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 || n > rootsys::MAX_RANK {
            return Err(Error::InvalidRank(n));
        }
        let crossed: BTreeSet<usize> = crossed.into_iter().collect();
        if crossed.is_empty() {
            return Err(Error::InvalidRank(n));
        }
        if let Some(&bad) = crossed.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::NodeOutOfRange { node: bad, n });
        }
        Ok(Self { kind, n, crossed })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossed(&self) -> &BTreeSet<usize> {
        &self.crossed
    }

    pub fn is_crossed(&self, node: usize) -> bool {
        self.crossed.contains(&node)
    }

    /// Epsilon blocks of the Levi factor: cuts after each crossed node.
    pub fn levi_segments(&self) -> Segmentation {
        Segmentation::from_cuts(self.n + 1, self.crossed.iter().copied())
            .expect("crossed nodes are validated at construction")
    }

    /// Complex dimension: positive roots outside the Levi factor.
    pub fn dimension(&self) -> usize {
        let total = self.n * (self.n + 1) / 2;
        total - self.levi_segments().positive_roots()
    }

    /// Short token used in text and JSON forms: `F`, `G`, `M` or `X{1,3}`.
    pub fn token(&self) -> String {
        match self.kind {
            SpaceKind::F => "F".into(),
            SpaceKind::G => "G".into(),
            SpaceKind::M => "M".into(),
            SpaceKind::Custom => {
                let nodes: Vec<String> = self.crossed.iter().map(|j| j.to_string()).collect();
                format!("X{{{}}}", nodes.join(","))
            }
        }
    }

    pub fn from_token(token: &str, n: usize) -> Result<Self> {
        match token {
            "F" => Self::f(n),
            "G" => Self::g(n),
            "M" => Self::m(n),
            t if t.starts_with("X{") && t.ends_with('}') => {
                let inner = &t[2..t.len() - 1];
                let nodes = inner
                    .split(',')
                    .map(|s| {
                        s.trim().parse::<usize>().map_err(|_| Error::Syntax {
                            pos: 0,
                            msg: format!("bad crossed node `{s}`"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::custom(n, nodes)
            }
            other => Err(Error::Syntax {
                pos: 0,
                msg: format!("unknown space `{other}` (expected F, G, M or X{{..}})"),
            }),
        }
    }
}

impl fmt::Debug for FlagSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.token(), self.n)
    }
}

impl fmt::Display for FlagSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.token(), self.n)
    }
}

/// An irreducible homogeneous vector bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bundle {
    space: FlagSpace,
    label: Weight,
}

impl Bundle {
    pub fn new(space: FlagSpace, label: Weight) -> Result<Self> {
        validate_label(&space, &label)?;
        Ok(Self { space, label })
    }

    pub fn space(&self) -> &FlagSpace {
        &self.space
    }

    pub fn label(&self) -> &Weight {
        &self.label
    }

    /// Dimension of the inducing Levi representation.
    pub fn rank(&self) -> Result<u64> {
        levi_dim(&self.space, &self.label)
    }

    /// The dual bundle: negate and reverse the epsilon entries inside each
    /// Levi block.
    pub fn dual(&self) -> Result<Bundle> {
        let e = to_epsilon(&self.label);
        let mut out = e.entries().to_vec();
        for block in self.space.levi_segments().blocks() {
            let rev: Vec<i64> = e.entries()[block.clone()]
                .iter()
                .rev()
                .map(|x| -x)
                .collect();
            out[block.clone()].copy_from_slice(&rev);
        }
        let label = rootsys::from_epsilon(&EpsilonSeq::normalized(out)?)?;
        Bundle::new(self.space.clone(), label)
    }
}

/// Checks Levi-dominance of `label` on `space`.
pub fn validate_label(space: &FlagSpace, label: &Weight) -> Result<()> {
    if label.n() != space.n() {
        return Err(Error::RankMismatch {
            expected: space.n(),
            got: label.n(),
        });
    }
    for node in 1..=space.n() {
        if !space.is_crossed(node) && label.at(node) < 0 {
            return Err(Error::NotLeviDominant(node));
        }
    }
    Ok(())
}

pub fn validate_bundle(space: &FlagSpace, label: &Weight) -> Result<Bundle> {
    Bundle::new(space.clone(), label.clone())
}

/// Product of the Weyl dimensions of the label restricted to each maximal
/// run of uncrossed nodes.
pub(crate) fn levi_dim(space: &FlagSpace, label: &Weight) -> Result<u64> {
    let mut dim: u64 = 1;
    for block in space.levi_segments().blocks() {
        if block.len() < 2 {
            continue;
        }
        // epsilon positions s..e carry the nodes s+1..e-1 (1-based)
        let sub: Vec<i64> = (block.start + 1..block.end).map(|j| label.at(j)).collect();
        let d = rootsys::weyl_dim(&Weight::new(sub)?)?;
        dim = dim.checked_mul(d).ok_or(Error::Overflow)?;
    }
    Ok(dim)
}

impl fmt::Display for Bundle {
    /// Canonical text form `<space>:<n>:<labels>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.space.token(),
            self.space.n(),
            self.label
        )
    }
}

impl FromStr for Bundle {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_bundle(text)
    }
}

pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let first = text.find(':').ok_or(Error::Syntax {
        pos: text.len(),
        msg: "expected `:` after the space".into(),
    })?;
    let rest = &text[first + 1..];
    let second = rest.find(':').ok_or(Error::Syntax {
        pos: text.len(),
        msg: "expected `:` after the rank".into(),
    })? + first
        + 1;
    let n_text = &text[first + 1..second];
    let n: usize = n_text.trim().parse().map_err(|_| Error::Syntax {
        pos: first + 1,
        msg: format!("`{n_text}` is not a rank"),
    })?;
    let space = FlagSpace::from_token(text[..first].trim(), n)?;
    let label = parse_weight_at(&text[second + 1..], second + 1)?;
    Bundle::new(space, label)
}

pub fn format_bundle(b: &Bundle) -> String {
    b.to_string()
}

#[derive(Serialize, Deserialize)]
struct BundleDoc {
    space: String,
    n: usize,
    label: Vec<i64>,
}

impl Serialize for Bundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BundleDoc {
            space: self.space.token(),
            n: self.space.n(),
            label: self.label.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bundle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = BundleDoc::deserialize(d)?;
        let space = FlagSpace::from_token(&doc.space, doc.n).map_err(serde::de::Error::custom)?;
        let label = Weight::new(doc.label).map_err(serde::de::Error::custom)?;
        Bundle::new(space, label).map_err(serde::de::Error::custom)
    }
}

/// A formal direct sum of irreducible bundles on one space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BundleSum {
    space: FlagSpace,
    terms: BTreeMap<Weight, u64>,
}

impl BundleSum {
    pub fn zero(space: FlagSpace) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_labels<'a>(
        space: &FlagSpace,
        labels: impl IntoIterator<Item = &'a Weight>,
    ) -> Result<Self> {
        let mut sum = Self::zero(space.clone());
        for l in labels {
            sum.add(l.clone(), 1)?;
        }
        Ok(sum)
    }

    pub fn single(b: &Bundle) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b.label.clone(), 1);
        Self {
            space: b.space.clone(),
            terms,
        }
    }

    pub fn space(&self) -> &FlagSpace {
        &self.space
    }

    pub fn add(&mut self, label: Weight, mult: u64) -> Result<()> {
        validate_label(&self.space, &label)?;
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &BundleSum) -> Result<()> {
        self.same_space(other)?;
        for (w, m) in &other.terms {
            *self.terms.entry(w.clone()).or_insert(0) += m;
        }
        Ok(())
    }

    /// Removes one copy of `label`; returns whether one was present.
    pub fn remove_one(&mut self, label: &Weight) -> bool {
        match self.terms.get_mut(label) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.terms.remove(label);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, label: &Weight) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    /// Terms in canonical order: descending epsilon-lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.terms.iter().rev().map(|(w, m)| (w, *m))
    }

    /// Each irreducible summand repeated by its multiplicity, canonical order.
    pub fn expanded(&self) -> Vec<Weight> {
        self.terms()
            .flat_map(|(w, m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }

    pub fn distinct_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> Result<u64> {
        self.terms.iter().try_fold(0u64, |acc, (w, m)| {
            let r = levi_dim(&self.space, w)?
                .checked_mul(*m)
                .ok_or(Error::Overflow)?;
            acc.checked_add(r).ok_or(Error::Overflow)
        })
    }

    pub fn bundles(&self) -> impl Iterator<Item = Bundle> + '_ {
        self.terms().map(|(w, _)| Bundle {
            space: self.space.clone(),
            label: w.clone(),
        })
    }

    pub(crate) fn same_space(&self, other: &BundleSum) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.to_string(),
                other.space.to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.space, self)
    }
}

impl fmt::Display for BundleSum {
    /// `(1,0,1) ⊕ (-2,1,0)`; repeated summands as `2·(0,2,0)`; empty sum `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            if m > 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "({w})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermDoc {
    pub label: Vec<i64>,
    pub mult: u64,
    pub rank: u64,
}

#[derive(Serialize, Deserialize)]
struct BundleSumDoc {
    space: String,
    n: usize,
    terms: Vec<TermDoc>,
}

impl Serialize for BundleSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(w, m)| {
                Ok(TermDoc {
                    label: w.coeffs().to_vec(),
                    mult: m,
                    rank: levi_dim(&self.space, w)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::ser::Error::custom)?;
        BundleSumDoc {
            space: self.space.token(),
            n: self.space.n(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BundleSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = BundleSumDoc::deserialize(d)?;
        let space = FlagSpace::from_token(&doc.space, doc.n).map_err(D::Error::custom)?;
        let mut sum = BundleSum::zero(space);
        for t in doc.terms {
            let w = Weight::new(t.label).map_err(D::Error::custom)?;
            sum.add(w, t.mult).map_err(D::Error::custom)?;
        }
        Ok(sum)
    }
}
