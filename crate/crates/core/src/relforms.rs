//! Relative cotangent bundle of the correspondence `G(n) -> F(n)`, its
//! exterior powers, the pullback of labels from `F(n)` to `G(n)`, and the
//! composition series of tangent bundles.

use std::collections::BTreeSet;
use std::fmt;

use crate::charlib::{decompose, exterior_power, LeviCharacter};
use crate::error::{Error, Result};
use crate::flagspace::{Bundle, BundleSum, FlagSpace, SpaceKind};
use crate::rootsys::{from_epsilon, simple_reflect, EpsilonSeq, Weight};

/// Nonzero-entry pattern of a subgroup of `SL(n+1)`, 1-based `(row, col)`.
/// Entry `(i, j)` spans the root space of `e_i - e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParabolicPattern {
    n: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl ParabolicPattern {
    pub fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let entries: BTreeSet<_> = entries.into_iter().collect();
        if let Some(&(i, j)) = entries
            .iter()
            .find(|(i, j)| *i == 0 || *j == 0 || *i > n + 1 || *j > n + 1)
        {
            return Err(Error::NodeOutOfRange {
                node: i.max(j),
                n: n + 1,
            });
        }
        let p = Self { n, entries };
        if (1..=n + 1).any(|i| !p.contains(i, i)) {
            return Err(Error::Document("pattern must contain the diagonal".into()));
        }
        Ok(p)
    }

    /// Reads rows written with `*` for free entries and `0` otherwise.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != size {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("row {} has {} cells, expected {size}", i + 1, cells.len()),
                });
            }
            for (j, c) in cells.iter().enumerate() {
                match c {
                    '*' => entries.push((i + 1, j + 1)),
                    '0' => {}
                    other => {
                        return Err(Error::Syntax {
                            pos: j,
                            msg: format!("unexpected `{other}` in pattern"),
                        })
                    }
                }
            }
        }
        Self::from_entries(size.saturating_sub(1), entries)
    }

    /// Block upper triangular pattern of the standard parabolic of a space.
    pub fn standard(space: &FlagSpace) -> Self {
        let seg = space.levi_segments();
        let block_of = |i: usize| {
            seg.blocks()
                .iter()
                .position(|b| b.contains(&(i - 1)))
                .unwrap()
        };
        let size = space.n() + 1;
        let entries = (1..=size)
            .flat_map(|i| (1..=size).map(move |j| (i, j)))
            .filter(|&(i, j)| block_of(i) <= block_of(j));
        Self {
            n: space.n(),
            entries: entries.collect(),
        }
    }

    /// Stabilizer used for the correspondence space: the first basis line
    /// splits off, then a line inside the complementary hyperplane.
    pub fn correspondence(n: usize) -> Self {
        let size = n + 1;
        let entries = (1..=size)
            .flat_map(|i| (1..=size).map(move |j| (i, j)))
            .filter(|&(i, j)| match i {
                1 => j == 1,
                2 => j >= 2,
                _ => j >= 3,
            });
        Self {
            n,
            entries: entries.collect(),
        }
    }

    /// The twistor-space stabilizer written with the basepoint for which both
    /// projections out of the correspondence space are natural.
    pub fn twistor_natural(n: usize) -> Self {
        let size = n + 1;
        let entries = (1..=size)
            .flat_map(|i| (1..=size).map(move |j| (i, j)))
            .filter(|&(i, j)| match i {
                1 => j == 1 || j >= 3,
                2 => true,
                _ => j >= 3,
            });
        Self {
            n,
            entries: entries.collect(),
        }
    }

    /// Stabilizer of a point `(line, hyperplane)` of the complexified `CP_n`.
    pub fn projective_pair(n: usize) -> Self {
        let size = n + 1;
        let entries = (1..=size)
            .flat_map(|i| (1..=size).map(move |j| (i, j)))
            .filter(|&(i, j)| (i == 1) == (j == 1));
        Self {
            n,
            entries: entries.collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.entries.contains(&(row, col))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    /// Entries of `self` missing from `other`.
    pub fn minus(&self, other: &ParabolicPattern) -> Vec<(usize, usize)> {
        self.entries.difference(&other.entries).copied().collect()
    }
}

impl fmt::Debug for ParabolicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = self.n + 1;
        for i in 1..=size {
            let row: String = (1..=size)
                .map(|j| if self.contains(i, j) { '*' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// The weight `e_i - e_j` in Dynkin coordinates of `A_n`.
pub fn root(n: usize, i: usize, j: usize) -> Result<Weight> {
    let mut e = vec![0i64; n + 1];
    e[i - 1] += 1;
    e[j - 1] -= 1;
    from_epsilon(&EpsilonSeq::normalized(e)?)
}

#[cfg(test)]
thread_local! {
    pub(crate) static CORRUPT_COTANGENT: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Relative holomorphic cotangent bundle of `G(n) -> F(n)`, a rank-`n` sum.
pub fn relative_cotangent(n: usize) -> Result<BundleSum> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let g = FlagSpace::g(n)?;
    let extra = ParabolicPattern::twistor_natural(n).minus(&ParabolicPattern::correspondence(n));
    let mut weights = Vec::with_capacity(extra.len());
    for (i, j) in extra {
        #[cfg(test)]
        let (i, j) = if CORRUPT_COTANGENT.with(|c| c.get()) && (i, j) == (2, 1) {
            (1, 2)
        } else {
            (i, j)
        };
        weights.push(root(n, i, j)?);
    }
    decompose(&g, &LeviCharacter::from_weights(g.clone(), weights)?)
}

/// `p`-th exterior power of the relative cotangent bundle, on `G(n)`.
pub fn relative_forms(n: usize, p: usize) -> Result<BundleSum> {
    if p > n {
        return Err(Error::DegreeOutOfRange { p, max: n });
    }
    let cot = relative_cotangent(n)?;
    exterior_power(cot.space(), &cot, p)
}

/// Pullback from `F(n)` to `G(n)`: the unshifted reflection in node 1.
pub fn pullback(b: &Bundle) -> Result<Bundle> {
    let src = b.space();
    if src.kind() != SpaceKind::F {
        return Err(Error::SpaceMismatch(
            FlagSpace::f(src.n())?.to_string(),
            src.to_string(),
        ));
    }
    Bundle::new(FlagSpace::g(src.n())?, simple_reflect(b.label(), 1)?)
}

/// Pulls back every term of a sum on `F(n)`.
pub fn pullback_sum(x: &BundleSum) -> Result<BundleSum> {
    let g = FlagSpace::g(x.space().n())?;
    let mut out = BundleSum::zero(g);
    for (w, m) in x.terms() {
        let b = pullback(&Bundle::new(x.space().clone(), w.clone())?)?;
        out.add(b.label().clone(), m)?;
    }
    Ok(out)
}

/// Levi-irreducible constituents of the tangent bundle, graded by how many
/// crossed nodes their roots span; the subbundle (lowest grade) comes first.
pub fn tangent_series(space: &FlagSpace) -> Result<Vec<BundleSum>> {
    let n = space.n();
    let seg = space.levi_segments();
    let block_of = |i: usize| {
        seg.blocks()
            .iter()
            .position(|b| b.contains(&(i - 1)))
            .unwrap()
    };
    let mut grades: Vec<Vec<Weight>> = Vec::new();
    for a in 1..=n + 1 {
        for b in a + 1..=n + 1 {
            let height = block_of(b) - block_of(a);
            if height == 0 {
                continue;
            }
            if grades.len() < height {
                grades.resize(height, Vec::new());
            }
            // labels are highest weights of the dual, i.e. of the nilradical
            grades[height - 1].push(root(n, a, b)?);
        }
    }
    grades
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| decompose(space, &LeviCharacter::from_weights(space.clone(), g)?))
        .collect()
}
