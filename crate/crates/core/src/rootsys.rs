//! Integer combinatorics of the A_n root system.
//!
//! Weights are stored in Dynkin coordinates (coefficients against the
//! fundamental weights). Most algorithms work on the epsilon sequence
//! `e_i = a_i + a_{i+1} + ... + a_n`, where the Weyl group is the symmetric
//! group permuting entries.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest admissible diagram rank.
pub const MAX_RANK: usize = 64;
/// Largest admissible absolute value of a Dynkin coefficient. Every weight
/// constructor enforces it, which keeps epsilon sums far away from `i64`
/// limits.
pub const MAX_COEFF: i64 = 1 << 24;

/// An integral weight of `A_n` in Dynkin coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_RANK {
            return Err(Error::InvalidRank(coeffs.len()));
        }
        if coeffs.iter().any(|c| c.abs() > MAX_COEFF) {
            return Err(Error::Overflow);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// Rank of the diagram this weight lives on.
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient at the 1-based node `i`.
    pub fn at(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        self.same_rank(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Weight::new(coeffs)
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        self.same_rank(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Weight::new(coeffs)
    }

    pub fn reversed(&self) -> Weight {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Weight { coeffs }
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    fn same_rank(&self, other: &Weight) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }
}

impl Ord for Weight {
    /// Rank first, then lexicographic on epsilon sequences. This refines the
    /// dominance order of every Levi subalgebra.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| to_epsilon(self).entries.cmp(&to_epsilon(other).entries))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, e.g. `-2,3,0`.
    fn from_str(s: &str) -> Result<Self> {
        parse_weight_at(s, 0)
    }
}

/// Parses a comma-separated weight; `offset` shifts reported error positions
/// when the weight is embedded in a larger string.
pub(crate) fn parse_weight_at(s: &str, offset: usize) -> Result<Weight> {
    let mut coeffs = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        let trimmed = part.trim();
        let lead = part.len() - part.trim_start().len();
        if trimmed.is_empty() {
            return Err(Error::Syntax {
                pos: offset + pos + lead,
                msg: "expected an integer".into(),
            });
        }
        let value: i64 = trimmed.parse().map_err(|_| Error::Syntax {
            pos: offset + pos + lead,
            msg: format!("`{trimmed}` is not an integer"),
        })?;
        coeffs.push(value);
        pos += part.len() + 1;
    }
    Weight::new(coeffs)
}

/// Epsilon coordinates of a weight, normalized so that the last entry is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonSeq {
    entries: Vec<i64>,
}

impl EpsilonSeq {
    /// Normalizes an arbitrary integer vector of length `n + 1` by the global
    /// shift that zeroes its last entry.
    pub fn normalized(mut entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidRank(entries.len().saturating_sub(1)));
        }
        let last = *entries.last().unwrap();
        for e in &mut entries {
            *e = e.checked_sub(last).ok_or(Error::Overflow)?;
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn to_epsilon(w: &Weight) -> EpsilonSeq {
    let mut entries = vec![0i64; w.n() + 1];
    // bounded by MAX_RANK * MAX_COEFF, cannot overflow
    for i in (0..w.n()).rev() {
        entries[i] = entries[i + 1] + w.coeffs[i];
    }
    EpsilonSeq { entries }
}

pub fn from_epsilon(e: &EpsilonSeq) -> Result<Weight> {
    let coeffs = e
        .entries
        .windows(2)
        .map(|p| p[0].checked_sub(p[1]).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    Weight::new(coeffs)
}

/// The half-sum of positive roots, `(1, ..., 1)`.
pub fn rho(n: usize) -> Result<Weight> {
    Weight::new(vec![1; n])
}

/// Linear action of the simple reflection `s_i` (1-based).
pub fn simple_reflect(w: &Weight, i: usize) -> Result<Weight> {
    let n = w.n();
    if i == 0 || i > n {
        return Err(Error::NodeOutOfRange { node: i, n });
    }
    let a = w.coeffs[i - 1];
    let mut coeffs = w.coeffs.clone();
    // subtract a * alpha_i, alpha_i = (.., -1, 2, -1, ..)
    coeffs[i - 1] = a.checked_neg().ok_or(Error::Overflow)?;
    if i >= 2 {
        coeffs[i - 2] = coeffs[i - 2].checked_add(a).ok_or(Error::Overflow)?;
    }
    if i < n {
        coeffs[i] = coeffs[i].checked_add(a).ok_or(Error::Overflow)?;
    }
    Weight::new(coeffs)
}

/// A partition of the epsilon positions `0..len` into consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segmentation {
    len: usize,
    blocks: Vec<std::ops::Range<usize>>,
}

impl Segmentation {
    /// Builds a segmentation from 1-based inclusive ranges, e.g. `[(1,1), (2,4)]`.
    pub fn from_ranges(len: usize, ranges: &[(usize, usize)]) -> Result<Self> {
        let mut next = 1;
        let mut blocks = Vec::with_capacity(ranges.len());
        for &(lo, hi) in ranges {
            if lo != next || hi < lo {
                return Err(Error::MalformedSegmentation(format!(
                    "range {lo}..={hi} does not continue at {next}"
                )));
            }
            blocks.push(lo - 1..hi);
            next = hi + 1;
        }
        if next != len + 1 {
            return Err(Error::MalformedSegmentation(format!(
                "ranges cover 1..{} but sequence has length {len}",
                next - 1
            )));
        }
        Ok(Self { len, blocks })
    }

    /// Cuts the positions `0..len` after each 1-based position in `cuts`.
    pub fn from_cuts(len: usize, cuts: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut cuts: Vec<usize> = cuts.into_iter().collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut blocks = Vec::new();
        let mut start = 0;
        for c in cuts {
            if c == 0 || c >= len {
                return Err(Error::MalformedSegmentation(format!(
                    "cut position {c} outside 1..{len}"
                )));
            }
            blocks.push(start..c);
            start = c;
        }
        if len == 0 {
            return Err(Error::MalformedSegmentation("empty sequence".into()));
        }
        blocks.push(start..len);
        Ok(Self { len, blocks })
    }

    pub fn full(len: usize) -> Result<Self> {
        Self::from_cuts(len, [])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[std::ops::Range<usize>] {
        &self.blocks
    }

    /// Number of positive roots of the Levi factor these blocks describe.
    pub fn positive_roots(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.len() * (b.len() - 1) / 2)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SortOutcome {
    /// Two entries coincide inside one block.
    Singular,
    /// `length` out-of-order pairs were fixed to produce `sorted`.
    Regular { length: usize, sorted: EpsilonSeq },
}

/// Sorts every block into strictly decreasing order, counting inversions.
pub fn sort_and_count(e: &EpsilonSeq, segments: &Segmentation) -> Result<SortOutcome> {
    if segments.len() != e.len() {
        return Err(Error::MalformedSegmentation(format!(
            "segmentation of length {} applied to sequence of length {}",
            segments.len(),
            e.len()
        )));
    }
    let mut sorted = e.entries.clone();
    let mut length = 0;
    for block in segments.blocks() {
        let part = &e.entries[block.clone()];
        for i in 0..part.len() {
            for j in i + 1..part.len() {
                match part[i].cmp(&part[j]) {
                    Ordering::Equal => return Ok(SortOutcome::Singular),
                    Ordering::Less => length += 1,
                    Ordering::Greater => {}
                }
            }
        }
        sorted[block.clone()].sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(SortOutcome::Regular {
        length,
        sorted: EpsilonSeq::normalized(sorted)?,
    })
}

/// Dimension of the irreducible `sl(n+1)` module with highest weight `w`.
pub fn weyl_dim(w: &Weight) -> Result<u64> {
    if let Some(i) = w.coeffs.iter().position(|&c| c < 0) {
        return Err(Error::NotDominant(i + 1));
    }
    let e = to_epsilon(w);
    let len = e.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..len {
        for j in i + 1..len {
            let gap = (j - i) as u128;
            let shifted = (e.entries[i] - e.entries[j]) as u128 + gap;
            num = num.checked_mul(shifted).ok_or(Error::Overflow)?;
            den = den.checked_mul(gap).ok_or(Error::Overflow)?;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    u64::try_from(num / den).map_err(|_| Error::Overflow)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
