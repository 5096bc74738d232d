//! Bott–Borel–Weil cohomology and higher direct images between flag spaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flagspace::{Bundle, FlagSpace};
use crate::rootsys::{
    from_epsilon, rho, sort_and_count, to_epsilon, weyl_dim, Segmentation, SortOutcome, Weight,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyEntry {
    pub degree: usize,
    /// Highest weight of the `SL(n+1)` module.
    pub weight: Weight,
    pub dim: u64,
}

/// Cohomology as a list of irreducible `SL(n+1)` modules by degree. An empty
/// list means everything vanishes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohomologyResult {
    entries: Vec<CohomologyEntry>,
}

impl CohomologyResult {
    pub fn vanishing() -> Self {
        Self::default()
    }

    pub fn from_entries(mut entries: Vec<CohomologyEntry>) -> Self {
        entries.sort();
        Self { entries }
    }

    pub fn entries(&self) -> &[CohomologyEntry] {
        &self.entries
    }

    pub fn vanishes(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn in_degree(&self, q: usize) -> impl Iterator<Item = &CohomologyEntry> {
        self.entries.iter().filter(move |e| e.degree == q)
    }

    pub fn extend(&mut self, other: &CohomologyResult) {
        self.entries.extend(other.entries.iter().cloned());
        self.entries.sort();
    }
}

impl fmt::Display for CohomologyResult {
    /// `H^1 = [0,2,0] (dim 20)`, one line per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("H^* = 0");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "H^{} = [{}] (dim {})", e.degree, e.weight, e.dim)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct EntryDoc {
    pub degree: usize,
    pub label: Vec<i64>,
    pub dim: u64,
}

impl Serialize for CohomologyResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let docs: Vec<EntryDoc> = self
            .entries
            .iter()
            .map(|e| EntryDoc {
                degree: e.degree,
                label: e.weight.coeffs().to_vec(),
                dim: e.dim,
            })
            .collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CohomologyResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let docs = Vec::<EntryDoc>::deserialize(d)?;
        let mut entries = Vec::with_capacity(docs.len());
        for doc in docs {
            let weight = Weight::new(doc.label).map_err(D::Error::custom)?;
            let dim = weyl_dim(&weight).map_err(D::Error::custom)?;
            if dim != doc.dim {
                return Err(D::Error::custom(format!(
                    "dimension {} does not match weight [{weight}] (dim {dim})",
                    doc.dim
                )));
            }
            entries.push(CohomologyEntry {
                degree: doc.degree,
                weight,
                dim,
            });
        }
        Ok(CohomologyResult::from_entries(entries))
    }
}

/// Relative Bott algorithm: rho-shift, sort within the blocks cut after each
/// node in `cuts`, shift back. `None` for singular weights.
fn relative_bott(
    label: &Weight,
    cuts: impl IntoIterator<Item = usize>,
) -> Result<Option<(usize, Weight)>> {
    let n = label.n();
    let r = rho(n)?;
    let shifted = label.checked_add(&r)?;
    let segments = Segmentation::from_cuts(n + 1, cuts)?;
    match sort_and_count(&to_epsilon(&shifted), &segments)? {
        SortOutcome::Singular => Ok(None),
        SortOutcome::Regular { length, sorted } => {
            let w = from_epsilon(&sorted)?.checked_sub(&r)?;
            Ok(Some((length, w)))
        }
    }
}

/// Sheaf cohomology of an irreducible homogeneous bundle.
pub fn cohomology(b: &Bundle) -> Result<CohomologyResult> {
    match relative_bott(b.label(), [])? {
        None => Ok(CohomologyResult::vanishing()),
        Some((degree, weight)) => {
            let dim = weyl_dim(&weight)?;
            Ok(CohomologyResult {
                entries: vec![CohomologyEntry {
                    degree,
                    weight,
                    dim,
                }],
            })
        }
    }
}

/// The only nonvanishing direct image of `b` along `src -> dst`, if any.
pub fn direct_images(
    src: &FlagSpace,
    dst: &FlagSpace,
    b: &Bundle,
) -> Result<Option<(usize, Bundle)>> {
    if src.n() != dst.n() {
        return Err(Error::RankMismatch {
            expected: src.n(),
            got: dst.n(),
        });
    }
    if b.space() != src {
        return Err(Error::SpaceMismatch(src.to_string(), b.space().to_string()));
    }
    if !dst.crossed().is_subset(src.crossed()) {
        return Err(Error::NotNested);
    }
    match relative_bott(b.label(), dst.crossed().iter().copied())? {
        None => Ok(None),
        Some((q, label)) => Ok(Some((q, Bundle::new(dst.clone(), label)?))),
    }
}
