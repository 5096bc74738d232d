//! Characters of Levi-irreducible representations, and the tensor/exterior
//! algebra of bundle sums computed on weight multisets.
//!
//! A Levi factor of a parabolic in `SL(n+1)` is `S(GL_{k1} x ... x GL_{km})`,
//! one block per run of uncrossed nodes. Characters are computed per block
//! with Freudenthal's multiplicity formula on dominant weights and then
//! spread over the block's permutation orbits.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::flagspace::{validate_label, Bundle, BundleSum, FlagSpace};
use crate::rootsys::{from_epsilon, to_epsilon, EpsilonSeq, Weight};

/// A multiset of weights on the torus of a flag space's Levi factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCharacter {
    space: FlagSpace,
    weights: BTreeMap<Weight, u64>,
}

impl LeviCharacter {
    pub fn empty(space: FlagSpace) -> Self {
        Self {
            space,
            weights: BTreeMap::new(),
        }
    }

    /// The character of the trivial one-dimensional representation.
    pub fn unit(space: FlagSpace) -> Result<Self> {
        let mut c = Self::empty(space);
        let zero = Weight::zero(c.space.n())?;
        c.weights.insert(zero, 1);
        Ok(c)
    }

    pub fn from_weights(
        space: FlagSpace,
        weights: impl IntoIterator<Item = Weight>,
    ) -> Result<Self> {
        let mut c = Self::empty(space);
        for w in weights {
            c.insert(w, 1)?;
        }
        Ok(c)
    }

    pub fn space(&self) -> &FlagSpace {
        &self.space
    }

    pub fn insert(&mut self, w: Weight, mult: u64) -> Result<()> {
        if w.n() != self.space.n() {
            return Err(Error::RankMismatch {
                expected: self.space.n(),
                got: w.n(),
            });
        }
        if mult > 0 {
            *self.weights.entry(w).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.weights.iter().map(|(w, m)| (w, *m))
    }

    /// Total number of weights counted with multiplicity.
    pub fn cardinality(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn add_scaled(&mut self, other: &LeviCharacter, factor: u64) -> Result<()> {
        self.same_space(other)?;
        for (w, m) in &other.weights {
            let add = m.checked_mul(factor).ok_or(Error::Overflow)?;
            let slot = self.weights.entry(w.clone()).or_insert(0);
            *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    /// Product of characters (weights add pairwise).
    pub fn mul(&self, other: &LeviCharacter) -> Result<LeviCharacter> {
        self.same_space(other)?;
        let mut out = Self::empty(self.space.clone());
        for (a, ma) in &self.weights {
            for (b, mb) in &other.weights {
                let w = a.checked_add(b)?;
                let m = ma.checked_mul(*mb).ok_or(Error::Overflow)?;
                out.insert(w, m)?;
            }
        }
        Ok(out)
    }

    fn same_space(&self, other: &LeviCharacter) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.to_string(),
                other.space.to_string(),
            ));
        }
        Ok(())
    }
}

/// Weight multiset of the Levi-irreducible with highest weight `b.label()`.
pub fn character_of(b: &Bundle) -> Result<LeviCharacter> {
    let space = b.space();
    let e = to_epsilon(b.label());
    let mut partial: Vec<(Vec<i64>, u64)> = vec![(Vec::with_capacity(e.len()), 1)];
    for block in space.levi_segments().blocks() {
        let top = &e.entries()[block.clone()];
        let block_weights = gl_character(top)?;
        let mut next = Vec::with_capacity(partial.len() * block_weights.len());
        for (prefix, m) in &partial {
            for (bw, bm) in &block_weights {
                let mut v = prefix.clone();
                v.extend_from_slice(bw);
                next.push((v, m * bm));
            }
        }
        partial = next;
    }
    let mut c = LeviCharacter::empty(space.clone());
    for (v, m) in partial {
        let w = from_epsilon(&EpsilonSeq::normalized(v)?)?;
        c.insert(w, m)?;
    }
    Ok(c)
}

/// Character of a sum: each term's character scaled by its multiplicity.
pub fn character_of_sum(x: &BundleSum) -> Result<LeviCharacter> {
    let mut c = LeviCharacter::empty(x.space().clone());
    for (w, m) in x.terms() {
        let b = Bundle::new(x.space().clone(), w.clone())?;
        c.add_scaled(&character_of(&b)?, m)?;
    }
    Ok(c)
}

/// Weights (with multiplicities) of the `GL_k` irreducible with the
/// non-increasing highest weight `top`.
fn gl_character(top: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
    if top.len() == 1 {
        return Ok(vec![(top.to_vec(), 1)]);
    }
    let dominant = freudenthal(top)?;
    let mut out = Vec::new();
    for (mu, m) in dominant {
        for perm in distinct_permutations(&mu) {
            out.push((perm, m));
        }
    }
    Ok(out)
}

/// Dominant weight multiplicities of the `GL_k` irreducible with highest
/// weight `top`, by Freudenthal's recursion in the standard inner product.
pub(crate) fn freudenthal(top: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
    let k = top.len();
    if top.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::NotDominant(0));
    }
    // shift to a partition; multiplicities are shift invariant
    let base = top[k - 1];
    let lambda: Vec<i64> = top.iter().map(|x| x - base).collect();
    let size: i64 = lambda.iter().sum();

    let mut dominant = Vec::new();
    partitions_dominated(&lambda, size, k, lambda[0], &mut Vec::new(), &mut dominant);
    // descending lex refines dominance, so every weight above mu is done first
    dominant.sort_by(|a, b| b.cmp(a));

    let rho: Vec<i64> = (0..k as i64).rev().collect();
    let norm = |v: &[i64]| -> i64 { v.iter().zip(&rho).map(|(x, r)| (x + r) * (x + r)).sum() };
    let top_norm = norm(&lambda);

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut out = Vec::with_capacity(dominant.len());
    for mu in dominant {
        let m = if mu == lambda {
            1
        } else {
            let mut acc: i64 = 0;
            for a in 0..k {
                for b in a + 1..k {
                    let mut j = 1;
                    loop {
                        let hi = mu[a] + j;
                        let lo = mu[b] - j;
                        if hi > lambda[0] || lo < 0 {
                            break;
                        }
                        let mut shifted = mu.clone();
                        shifted[a] = hi;
                        shifted[b] = lo;
                        shifted.sort_unstable_by(|x, y| y.cmp(x));
                        if let Some(&sm) = mult.get(&shifted) {
                            acc += sm as i64 * (hi - lo);
                        }
                        j += 1;
                    }
                }
            }
            let den = top_norm - norm(&mu);
            let num = 2 * acc;
            if den <= 0 || num % den != 0 {
                return Err(Error::PeelingFailure(format!("{mu:?}")));
            }
            (num / den) as u64
        };
        if m > 0 {
            mult.insert(mu.clone(), m);
            out.push((mu.iter().map(|x| x + base).collect(), m));
        }
    }
    Ok(out)
}

/// Partitions of `remaining` into at most `slots` more parts (each at most
/// `cap`) whose partial sums stay below those of `lambda`.
fn partitions_dominated(
    lambda: &[i64],
    remaining: i64,
    slots: usize,
    cap: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let k = lambda.len();
    if slots == 0 {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let pos = prefix.len();
    let done: i64 = prefix.iter().sum();
    let bound: i64 = lambda[..=pos].iter().sum::<i64>() - done;
    let hi = cap.min(remaining).min(bound);
    for part in (0..=hi).rev() {
        if part * (slots as i64) < remaining {
            break;
        }
        prefix.push(part);
        partitions_dominated(lambda, remaining - part, slots - 1, part, prefix, out);
        prefix.pop();
    }
    debug_assert!(prefix.len() <= k);
}

fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // lexicographic next-permutation walk visits each arrangement once
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Splits a Levi character into irreducible labels by repeatedly peeling off
/// the character of its largest weight.
pub fn decompose(space: &FlagSpace, c: &LeviCharacter) -> Result<BundleSum> {
    if c.space() != space {
        return Err(Error::SpaceMismatch(
            space.to_string(),
            c.space().to_string(),
        ));
    }
    let mut rest = c.weights.clone();
    let mut out = BundleSum::zero(space.clone());
    while let Some((top, &m)) = rest.iter().next_back() {
        let top = top.clone();
        if validate_label(space, &top).is_err() {
            return Err(Error::PeelingFailure(top.to_string()));
        }
        let irreducible = character_of(&Bundle::new(space.clone(), top.clone())?)?;
        for (w, wm) in irreducible.weights() {
            let need = wm * m;
            match rest.get_mut(w) {
                Some(have) if *have >= need => {
                    *have -= need;
                    if *have == 0 {
                        rest.remove(w);
                    }
                }
                _ => return Err(Error::PeelingFailure(w.to_string())),
            }
        }
        out.add(top, m)?;
    }
    Ok(out)
}

pub fn tensor(space: &FlagSpace, x: &BundleSum, y: &BundleSum) -> Result<BundleSum> {
    for s in [x.space(), y.space()] {
        if s != space {
            return Err(Error::SpaceMismatch(space.to_string(), s.to_string()));
        }
    }
    let product = character_of_sum(x)?.mul(&character_of_sum(y)?)?;
    decompose(space, &product)
}

/// `p`-th exterior power of a bundle sum, via the elementary symmetric layer
/// of its full weight multiset.
pub fn exterior_power(space: &FlagSpace, x: &BundleSum, p: usize) -> Result<BundleSum> {
    if x.space() != space {
        return Err(Error::SpaceMismatch(
            space.to_string(),
            x.space().to_string(),
        ));
    }
    let c = character_of_sum(x)?;
    let rank = c.cardinality() as usize;
    if p > rank {
        return Err(Error::DegreeOutOfRange { p, max: rank });
    }
    let basis: Vec<&Weight> = c
        .weights()
        .flat_map(|(w, m)| std::iter::repeat_n(w, m as usize))
        .collect();
    let mut layers: Vec<BTreeMap<Weight, u64>> = vec![BTreeMap::new(); p + 1];
    layers[0].insert(Weight::zero(space.n())?, 1);
    for (i, v) in basis.iter().enumerate() {
        for d in (1..=p.min(i + 1)).rev() {
            let below: Vec<(Weight, u64)> =
                layers[d - 1].iter().map(|(w, m)| (w.clone(), *m)).collect();
            for (w, m) in below {
                let shifted = w.checked_add(v)?;
                let slot = layers[d].entry(shifted).or_insert(0);
                *slot = slot.checked_add(m).ok_or(Error::Overflow)?;
            }
        }
    }
    let top = LeviCharacter {
        space: space.clone(),
        weights: std::mem::take(&mut layers[p]),
    };
    decompose(space, &top)
}
