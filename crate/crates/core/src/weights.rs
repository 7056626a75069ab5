//! Dominant weights of `GL_n`, index sets, and the partition `λ^I` attached
//! to an index set.
//!
//! Index sets are 1-based and stored sorted, matching the `[1;n]` convention
//! used throughout the crate.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing integer vector `λ_1 ≥ … ≥ λ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GlWeight {
    parts: Vec<i64>,
}

impl GlWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts));
        }
        Ok(GlWeight { parts })
    }

    pub fn zero(n: usize) -> Self {
        GlWeight { parts: vec![0; n] }
    }

    /// `k·1^n`.
    pub fn constant(n: usize, k: i64) -> Self {
        GlWeight { parts: vec![k; n] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ| = λ_1 + … + λ_n`.
    pub fn total(&self) -> i128 {
        self.parts.iter().map(|&x| x as i128).sum()
    }

    /// `λ^∨ = (−λ_n ≥ … ≥ −λ_1)`, the highest weight of the dual representation.
    pub fn dual(&self) -> Self {
        GlWeight {
            parts: self.parts.iter().rev().map(|&x| -x).collect(),
        }
    }

    /// Adds `k` to every part (tensoring with a power of the determinant).
    pub fn shift(&self, k: i64) -> Result<Self> {
        let parts = self
            .parts
            .iter()
            .map(|&x| x.checked_add(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(GlWeight { parts })
    }

    pub fn scale(&self, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::Range(format!("negative scale factor {m}")));
        }
        let parts = self
            .parts
            .iter()
            .map(|&x| x.checked_mul(m).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(GlWeight { parts })
    }

    /// `λ_I = (λ_{i_1} ≥ … ≥ λ_{i_r})`.
    pub fn restrict(&self, set: &IndexSet) -> Result<Self> {
        let parts = set
            .iter()
            .map(|i| {
                if i == 0 || i > self.parts.len() {
                    Err(Error::IndexOutOfRange {
                        index: i,
                        ambient: self.parts.len(),
                    })
                } else {
                    Ok(self.parts[i - 1])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GlWeight { parts })
    }

    /// `{ j ∈ [1;n−1] : λ_j ≠ λ_{j+1} }`.
    pub fn type_of(&self) -> IndexSet {
        IndexSet(
            self.parts
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] != w[1])
                .map(|(j, _)| j + 1)
                .collect(),
        )
    }

    pub fn last(&self) -> i64 {
        self.parts.last().copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<i64>> for GlWeight {
    type Error = Error;
    fn try_from(parts: Vec<i64>) -> Result<Self> {
        GlWeight::new(parts)
    }
}

impl From<GlWeight> for Vec<i64> {
    fn from(w: GlWeight) -> Self {
        w.parts
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(","))
    }
}

impl FromStr for GlWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GlWeight::new(parse_int_list(s)?)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{p:?}: {e}")))
        })
        .collect()
}

/// The argument `(λ, μ, ν)` of the triple coefficient `c^n_{λμν}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightTriple {
    pub lam: GlWeight,
    pub mu: GlWeight,
    pub nu: GlWeight,
}

impl WeightTriple {
    pub fn new(lam: GlWeight, mu: GlWeight, nu: GlWeight) -> Result<Self> {
        let n = lam.len();
        for w in [&mu, &nu] {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: w.len(),
                });
            }
        }
        Ok(WeightTriple { lam, mu, nu })
    }

    pub fn from_parts(lam: &[i64], mu: &[i64], nu: &[i64]) -> Result<Self> {
        WeightTriple::new(
            GlWeight::new(lam.to_vec())?,
            GlWeight::new(mu.to_vec())?,
            GlWeight::new(nu.to_vec())?,
        )
    }

    pub fn n(&self) -> usize {
        self.lam.len()
    }

    pub fn total(&self) -> i128 {
        self.lam.total() + self.mu.total() + self.nu.total()
    }

    pub fn as_array(&self) -> [&GlWeight; 3] {
        [&self.lam, &self.mu, &self.nu]
    }

    pub fn scale(&self, m: i64) -> Result<Self> {
        Ok(WeightTriple {
            lam: self.lam.scale(m)?,
            mu: self.mu.scale(m)?,
            nu: self.nu.scale(m)?,
        })
    }

    /// `(λ+a·1ⁿ, μ+b·1ⁿ, ν+c·1ⁿ)`.
    pub fn shift(&self, a: i64, b: i64, c: i64) -> Result<Self> {
        Ok(WeightTriple {
            lam: self.lam.shift(a)?,
            mu: self.mu.shift(b)?,
            nu: self.nu.shift(c)?,
        })
    }

    /// `(λ_I, μ_J, ν_K)`.
    pub fn restrict(&self, i: &IndexSet, j: &IndexSet, k: &IndexSet) -> Result<Self> {
        Ok(WeightTriple {
            lam: self.lam.restrict(i)?,
            mu: self.mu.restrict(j)?,
            nu: self.nu.restrict(k)?,
        })
    }

    /// All six reorderings of the three weights.
    pub fn permutations(&self) -> Vec<Self> {
        let w = self.as_array();
        [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|p| WeightTriple {
            lam: w[p[0]].clone(),
            mu: w[p[1]].clone(),
            nu: w[p[2]].clone(),
        })
        .collect()
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.lam, self.mu, self.nu)
    }
}

/// A subset of `[1;n]`, kept sorted. The ambient `n` travels separately.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts the input and rejects zero or repeated entries.
    pub fn new(mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.first() == Some(&0) || elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadIndexSet {
                size: elems.len(),
                ambient: elems.last().copied().unwrap_or(0),
                set: elems,
            });
        }
        Ok(IndexSet(elems))
    }

    /// Like [`IndexSet::new`], additionally requiring `|I| = r` and `I ⊆ [1;n]`.
    pub fn checked(elems: Vec<usize>, r: usize, n: usize) -> Result<Self> {
        let set = IndexSet::new(elems)?;
        set.check(r, n)?;
        Ok(set)
    }

    pub fn check(&self, r: usize, n: usize) -> Result<()> {
        if self.0.len() != r || self.0.last().is_some_and(|&m| m > n) {
            return Err(Error::BadIndexSet {
                set: self.0.clone(),
                size: r,
                ambient: n,
            });
        }
        Ok(())
    }

    /// `[a;b]`, empty when `a > b`.
    pub fn interval(a: usize, b: usize) -> Self {
        IndexSet((a..=b).collect())
    }

    pub(crate) fn from_sorted_unchecked(elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        IndexSet(elems)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// `[1;n] − I`.
    pub fn complement(&self, n: usize) -> Self {
        IndexSet((1..=n).filter(|&i| !self.contains(i)).collect())
    }

    /// `I^∨ = { n+1−i : i ∈ I }`, the index of the Poincaré dual class.
    pub fn dual(&self, n: usize) -> Self {
        IndexSet(self.0.iter().rev().map(|&i| n + 1 - i).collect())
    }

    /// Every `r`-subset of `[1;n]` in lexicographic order.
    pub fn all(r: usize, n: usize) -> impl Iterator<Item = IndexSet> {
        (1..=n).combinations(r).map(IndexSet)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let elems = parse_int_list(s)?
            .into_iter()
            .map(|x| usize::try_from(x).map_err(|_| Error::Parse(format!("negative index {x}"))))
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(elems)
    }
}

/// `λ^I = (i_r − r, i_{r−1} − (r−1), …, i_1 − 1)`.
pub fn lambda_of_indexset(set: &IndexSet, r: usize, n: usize) -> Result<GlWeight> {
    set.check(r, n)?;
    let parts = set
        .as_slice()
        .iter()
        .enumerate()
        .rev()
        .map(|(k, &i)| (i - (k + 1)) as i64)
        .collect();
    Ok(GlWeight { parts })
}
