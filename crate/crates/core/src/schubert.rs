//! Inversion sets of Schubert varieties in Grassmannians, two-step flag
//! varieties and isotropic Grassmannians of types B and C.
//!
//! A box `(i, j)` stands for the root `ε_i − ε_j` with `j` a column position
//! and `i` a row position. Columns are positions `1..=r₁` (and
//! `r₁+1..=r₂` for the second block of a two-step flag), rows are the
//! positions after them. If `w` lists the index set first and its complement
//! after, the box is present iff `w(j) < w(i)`.
//!
//! In the isotropic case the ambient is `[1;N]` with `N = 2n` (type C) or
//! `N = 2n+1` (type B) and the bar involution `ī = N+1−i`. The triangular
//! part of the tangent space sits in rows `N−r+1..=N`; its diagonal is the set
//! of boxes with `i = j̄`, i.e. `i + j = N + 1` (equivalently `i' + j = r + 1`
//! with triangle-local row `i' = i − (N − r)`).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{lambda_of_indexset, IndexSet};

/// The three families of compact groups handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    A,
    B,
    C,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::A => "A",
            GroupType::B => "B",
            GroupType::C => "C",
        })
    }
}

impl std::str::FromStr for GroupType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(GroupType::A),
            "B" | "b" => Ok(GroupType::B),
            "C" | "c" => Ok(GroupType::C),
            other => Err(Error::Parse(format!("unknown group type {other:?}"))),
        }
    }
}

/// A set of boxes `(row, column)`, each standing for `ε_row − ε_column`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InversionSet {
    pub boxes: BTreeSet<(usize, usize)>,
    /// Ambient size of the permutation (`n`, `2n` or `2n+1`).
    pub ambient: usize,
    /// Number of column positions drawn.
    pub columns: usize,
    /// The permutation `w` used to label rows and columns.
    pub labels: Vec<usize>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: (usize, usize)) -> bool {
        self.boxes.contains(&b)
    }

    /// Boxes lying in rows `rows` and columns `cols` (inclusive position ranges).
    pub fn count_in(&self, rows: (usize, usize), cols: (usize, usize)) -> usize {
        self.boxes
            .iter()
            .filter(|&&(i, j)| rows.0 <= i && i <= rows.1 && cols.0 <= j && j <= cols.1)
            .count()
    }

    pub fn intersect(&self, other: &BTreeSet<(usize, usize)>) -> InversionSet {
        InversionSet {
            boxes: self.boxes.intersection(other).copied().collect(),
            ambient: self.ambient,
            columns: self.columns,
            labels: self.labels.clone(),
        }
    }

    /// ASCII drawing: `#` for boxes of the set, `.` for the other roots of
    /// `ambient_roots`, blank elsewhere. Columns are labelled by `w(j)` along
    /// the top, rows by `w(i)` on the right.
    pub fn render(&self, ambient_roots: &BTreeSet<(usize, usize)>) -> String {
        let width = self
            .labels
            .iter()
            .map(|l| l.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        out.push(' ');
        for j in 1..=self.columns {
            out.push_str(&format!("{:>w$} ", self.labels[j - 1], w = width));
        }
        out.push('\n');
        let first_row = self.boxes.iter().chain(ambient_roots).map(|b| b.0).min();
        let Some(first_row) = first_row else {
            return out;
        };
        for i in first_row..=self.ambient {
            out.push(' ');
            for j in 1..=self.columns {
                let c = if self.boxes.contains(&(i, j)) {
                    '#'
                } else if ambient_roots.contains(&(i, j)) {
                    '.'
                } else {
                    ' '
                };
                out.push_str(&format!("{:>w$} ", c, w = width));
            }
            out.push_str(&format!("{}\n", self.labels[i - 1]));
        }
        out
    }
}

fn boxes_from_word(labels: &[usize], blocks: &[usize]) -> BTreeSet<(usize, usize)> {
    // `blocks` are the cumulative block ends r₁ < r₂ < … ; a root ε_i − ε_j
    // belongs to the tangent space iff j and i lie in different blocks, j first.
    let block_of = |p: usize| blocks.iter().position(|&end| p <= end).unwrap_or(blocks.len());
    let n = labels.len();
    let mut out = BTreeSet::new();
    for j in 1..=n {
        for i in j + 1..=n {
            if block_of(j) != block_of(i) && labels[j - 1] < labels[i - 1] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// All roots `ε_i − ε_j`, `j ≤ r < i ≤ n`: the full `r × (n−r)` rectangle.
pub fn grassmann_roots(r: usize, n: usize) -> BTreeSet<(usize, usize)> {
    (1..=r)
        .flat_map(|j| (r + 1..=n).map(move |i| (i, j)))
        .collect()
}

/// `Λ_I` for `I ∈ P(r,n)`: columns labelled by `I`, rows by `I^c`, a box is
/// present iff its column label is below its row label.
pub fn inversion_set_grassmann(set: &IndexSet, r: usize, n: usize) -> Result<InversionSet> {
    set.check(r, n)?;
    let labels: Vec<usize> = set.iter().chain(set.complement(n).iter()).collect();
    Ok(InversionSet {
        boxes: boxes_from_word(&labels, &[r]),
        ambient: n,
        columns: r,
        labels,
    })
}

/// Codimension `r(n−r) − |λ^I|` of the Schubert variety `Ω(I)`.
pub fn grassmann_codim(set: &IndexSet, r: usize, n: usize) -> Result<usize> {
    Ok(r * (n - r) - lambda_of_indexset(set, r, n)?.total() as usize)
}

/// A pair `I¹ ⊂ I²` indexing a Schubert variety of `Fl_n(r₁, r₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoStepIndex {
    pub i1: IndexSet,
    pub i2: IndexSet,
    pub n: usize,
}

impl TwoStepIndex {
    pub fn new(i1: IndexSet, i2: IndexSet, n: usize) -> Result<Self> {
        let nested = i1.iter().all(|i| i2.contains(i));
        if !nested || i1.len() >= i2.len() || i2.as_slice().last().is_some_and(|&m| m > n) {
            return Err(Error::BadTwoStep((i1.as_slice().to_vec(), i2.as_slice().to_vec())));
        }
        Ok(TwoStepIndex { i1, i2, n })
    }

    pub fn r1(&self) -> usize {
        self.i1.len()
    }

    pub fn r2(&self) -> usize {
        self.i2.len()
    }

    /// `w = (I¹, I²−I¹, [1;n]−I²)`, each block increasing.
    pub fn permutation(&self) -> Vec<usize> {
        let middle = self.i2.iter().filter(|&i| !self.i1.contains(i));
        let rest = self.i2.complement(self.n);
        self.i1.iter().chain(middle).chain(rest.iter()).collect()
    }
}

/// The image `(I₀, I₁, I₂)` of a two-step index under the three cancellations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoStepReduction {
    /// `⊆ [1; r₂]`, `|I₀| = r₁`.
    pub i0: IndexSet,
    /// `⊆ [1; n−r₁]`, `|I₁| = r₂−r₁`.
    pub i1: IndexSet,
    /// `⊆ [1; n−(r₂−r₁)]`, `|I₂| = r₁`.
    pub i2: IndexSet,
}

/// Letter `1` on `I¹`, `2` on `I²−I¹`, `0` elsewhere.
pub fn word_of_twostep(p: &TwoStepIndex) -> Vec<u8> {
    (1..=p.n)
        .map(|i| {
            if p.i1.contains(i) {
                1
            } else if p.i2.contains(i) {
                2
            } else {
                0
            }
        })
        .collect()
}

/// Positions (1-based) of `mark` in `word` once the letter `drop` is deleted.
fn positions_after_cancel(word: &[u8], drop: u8, mark: u8) -> IndexSet {
    IndexSet::from_sorted_unchecked(
        word.iter()
            .filter(|&&c| c != drop)
            .enumerate()
            .filter(|(_, &c)| c == mark)
            .map(|(k, _)| k + 1)
            .collect(),
    )
}

pub fn reduce_twostep(p: &TwoStepIndex) -> TwoStepReduction {
    let word = word_of_twostep(p);
    TwoStepReduction {
        i2: positions_after_cancel(&word, 2, 1),
        i1: positions_after_cancel(&word, 1, 2),
        i0: positions_after_cancel(&word, 0, 1),
    }
}

/// Recovers `(I¹, I²)` from its three cancellations. A word in three letters
/// is fixed by its three two-letter sub-words: `I₀` orders the 1s against the
/// 2s, and `I₂` (resp. `I₁`) says whether a 0 precedes the next 1 (resp. 2).
pub fn unreduce_twostep(red: &TwoStepReduction, r1: usize, r2: usize, n: usize) -> Result<TwoStepIndex> {
    let mut word = vec![0u8; n];
    // cursors into the 0/1 sub-word, the 0/2 sub-word and the 1/2 sub-word
    let (mut a, mut b, mut k) = (0usize, 0usize, 0usize);
    let (mut ones, mut twos) = (0usize, 0usize);
    for slot in word.iter_mut() {
        let candidate = (k < r2).then(|| if red.i0.contains(k + 1) { 1u8 } else { 2u8 });
        let zero_next = match candidate {
            None => true,
            Some(1) => !red.i2.contains(a + 1),
            Some(_) => !red.i1.contains(b + 1),
        };
        match (zero_next, candidate) {
            (false, Some(1)) => {
                *slot = 1;
                a += 1;
                k += 1;
                ones += 1;
            }
            (false, Some(_)) => {
                *slot = 2;
                b += 1;
                k += 1;
                twos += 1;
            }
            _ => {
                a += 1;
                b += 1;
            }
        }
    }
    if ones != r1 || twos != r2 - r1 {
        return Err(Error::Internal("inconsistent two-step reduction".into()));
    }
    let i1 = (1..=n).filter(|&i| word[i - 1] == 1).collect();
    let i2 = (1..=n).filter(|&i| word[i - 1] != 0).collect();
    TwoStepIndex::new(IndexSet::new(i1)?, IndexSet::new(i2)?, n)
}

/// `Λ_{(I¹,I²)}` inside the three rectangles of `Fl_n(r₁,r₂)`.
pub fn inversion_set_twostep(p: &TwoStepIndex) -> InversionSet {
    let labels = p.permutation();
    InversionSet {
        boxes: boxes_from_word(&labels, &[p.r1(), p.r2()]),
        ambient: p.n,
        columns: p.r2(),
        labels,
    }
}

/// The anti-diagonal reflection `ε_i − ε_j ↦ ε_{j̄} − ε_{ī}` with `ī = n+1−i`.
pub fn tau(b: (usize, usize), n: usize) -> (usize, usize) {
    (n + 1 - b.1, n + 1 - b.0)
}

/// The partner index of the reflection symmetry of `Fl_n(r, n−r)`:
/// `(J̄³, J̄² ∪ J̄³)` with `J² = I²−I¹` and `J³ = [1;n]−I²`.
pub fn tau_partner(p: &TwoStepIndex) -> Result<TwoStepIndex> {
    let n = p.n;
    let bar = |s: &IndexSet| IndexSet::new(s.iter().map(|i| n + 1 - i).collect());
    let j2 = IndexSet::new(p.i2.iter().filter(|&i| !p.i1.contains(i)).collect())?;
    let j3 = p.i2.complement(n);
    let new1 = bar(&j3)?;
    let new2 = IndexSet::new(bar(&j2)?.iter().chain(new1.iter()).collect())?;
    TwoStepIndex::new(new1, new2, n)
}

/// Type C (`Sp_{2n}`) or type B (`SO_{2n+1}`) isotropic Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropicKind {
    Symplectic,
    Orthogonal,
}

impl IsotropicKind {
    pub fn ambient(self, n: usize) -> usize {
        match self {
            IsotropicKind::Symplectic => 2 * n,
            IsotropicKind::Orthogonal => 2 * n + 1,
        }
    }

    pub fn group(self) -> GroupType {
        match self {
            IsotropicKind::Symplectic => GroupType::C,
            IsotropicKind::Orthogonal => GroupType::B,
        }
    }

    pub fn of_group(g: GroupType) -> Option<Self> {
        match g {
            GroupType::A => None,
            GroupType::B => Some(IsotropicKind::Orthogonal),
            GroupType::C => Some(IsotropicKind::Symplectic),
        }
    }
}

/// An `r`-subset `I` of `[1;N]` with `I ∩ Ī = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsotropicIndex {
    pub set: IndexSet,
    pub n: usize,
    pub kind: IsotropicKind,
}

impl IsotropicIndex {
    pub fn new(set: IndexSet, n: usize, kind: IsotropicKind) -> Result<Self> {
        let big = kind.ambient(n);
        set.check(set.len(), big)?;
        if set.iter().any(|i| set.contains(big + 1 - i)) {
            return Err(Error::NotIsotropic(set.as_slice().to_vec()));
        }
        Ok(IsotropicIndex { set, n, kind })
    }

    pub fn r(&self) -> usize {
        self.set.len()
    }

    pub fn ambient(&self) -> usize {
        self.kind.ambient(self.n)
    }

    pub fn bar(&self, i: usize) -> usize {
        self.ambient() + 1 - i
    }

    /// `(I, Ī^c)` in `Fl_N(r, N−r)`.
    pub fn twostep(&self) -> TwoStepIndex {
        let big = self.ambient();
        let barred: Vec<usize> = self.set.iter().map(|i| self.bar(i)).collect();
        let outer = (1..=big).filter(|i| !barred.contains(i)).collect();
        TwoStepIndex {
            i1: self.set.clone(),
            i2: IndexSet::from_sorted_unchecked(outer),
            n: big,
        }
    }

    /// `w_I = (i_1, …, i_N)` with `i_{k̄} = ī_k` and the middle block increasing.
    pub fn weyl_word(&self) -> Vec<usize> {
        self.twostep().permutation()
    }

    /// Every isotropic `r`-subset in lexicographic order.
    pub fn all(r: usize, n: usize, kind: IsotropicKind) -> impl Iterator<Item = IsotropicIndex> {
        IndexSet::all(r, kind.ambient(n)).filter_map(move |s| IsotropicIndex::new(s, n, kind).ok())
    }
}

impl fmt::Display for IsotropicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.set.fmt(f)
    }
}

/// `(I₀, I₂)` with `I₀ ⊆ [1; N−r]` and `I₂ ⊆ [1; 2r]`.
fn isotropic_reduce(idx: &IsotropicIndex) -> (IndexSet, IndexSet) {
    let red = reduce_twostep(&idx.twostep());
    (red.i0, red.i2)
}

pub fn symplectic_reduce(idx: &IsotropicIndex) -> Result<(IndexSet, IndexSet)> {
    if idx.kind != IsotropicKind::Symplectic {
        return Err(Error::GroupMismatch("expected a type C index".into()));
    }
    Ok(isotropic_reduce(idx))
}

pub fn orthogonal_reduce(idx: &IsotropicIndex) -> Result<(IndexSet, IndexSet)> {
    if idx.kind != IsotropicKind::Orthogonal {
        return Err(Error::GroupMismatch("expected a type B index".into()));
    }
    Ok(isotropic_reduce(idx))
}

/// Roots of the tangent space of `G_ω(r,2n)` (`i ≤ j̄`) or `G_Q(r,2n+1)`
/// (`i < j̄`), for `j ≤ r < i`.
pub fn isotropic_roots(kind: IsotropicKind, r: usize, n: usize) -> BTreeSet<(usize, usize)> {
    let big = kind.ambient(n);
    (1..=r)
        .flat_map(|j| {
            let top = match kind {
                IsotropicKind::Symplectic => big + 1 - j,
                IsotropicKind::Orthogonal => big - j,
            };
            (r + 1..=top).map(move |i| (i, j))
        })
        .collect()
}

/// `Λ_I = Λ(G) ∩ Λ_{(I, Ī^c)}`.
pub fn inversion_set_isotropic(idx: &IsotropicIndex) -> InversionSet {
    let full = inversion_set_twostep(&idx.twostep());
    let mut out = full.intersect(&isotropic_roots(idx.kind, idx.r(), idx.n));
    out.columns = idx.r();
    out
}

/// Number of boxes of `Λ_{(I,Ī^c)}` on the diagonal `i = j̄` of the triangle.
/// In type C these all belong to `Λ_I` (long roots `−2ε_j`); in type B the
/// diagonal lies outside the tangent space and the count describes the
/// two-step set only.
pub fn diagonal_count(idx: &IsotropicIndex) -> usize {
    let full = inversion_set_twostep(&idx.twostep());
    (1..=idx.r())
        .filter(|&j| full.contains((idx.bar(j), j)))
        .count()
}

/// Dimension of `G(r,n)`, `G_Q(r,2n+1)` or `G_ω(r,2n)`.
pub fn dim_space(kind: GroupType, r: usize, n: usize) -> Result<usize> {
    match kind {
        GroupType::A if r >= 1 && r < n => Ok(r * (n - r)),
        GroupType::C if r >= 1 && r <= n => Ok(2 * r * (n - r) + r * (r + 1) / 2),
        GroupType::B if r >= 1 && r <= n => Ok(r * (2 * n + 1 - 2 * r) + r * (r - 1) / 2),
        _ => Err(Error::Range(format!("r = {r}, n = {n} for type {kind}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &[usize]) -> IndexSet {
        IndexSet::new(p.to_vec()).unwrap()
    }

    fn iso_c(p: &[usize], n: usize) -> IsotropicIndex {
        IsotropicIndex::new(s(p), n, IsotropicKind::Symplectic).unwrap()
    }

    fn iso_b(p: &[usize], n: usize) -> IsotropicIndex {
        IsotropicIndex::new(s(p), n, IsotropicKind::Orthogonal).unwrap()
    }

    #[test]
    fn grassmann_extremes() {
        for n in 1..7 {
            for r in 1..n {
                let point = inversion_set_grassmann(&IndexSet::interval(1, r), r, n).unwrap();
                assert_eq!(point.boxes, grassmann_roots(r, n));
                let fund = inversion_set_grassmann(&IndexSet::interval(n - r + 1, n), r, n).unwrap();
                assert!(fund.is_empty());
            }
        }
    }

    #[test]
    fn staircase_example() {
        let l = inversion_set_grassmann(&s(&[1, 4, 5, 7, 8, 10]), 6, 10).unwrap();
        assert_eq!(l.len(), 10);
        // rows labelled 2, 3, 6, 9 carry 1, 1, 3, 5 boxes
        let per_row: Vec<usize> = (7..=10).map(|i| l.count_in((i, i), (1, 6))).collect();
        assert_eq!(per_row, vec![1, 1, 3, 5]);
        let drawing = l.render(&grassmann_roots(6, 10));
        assert_eq!(drawing.lines().last().unwrap().trim(), "#  #  #  #  #  . 9", "{drawing}");
        assert_eq!(drawing.matches('#').count(), 10);
    }

    #[test]
    fn codimension_identity() {
        for n in 1..=8 {
            for r in 0..=n {
                for set in IndexSet::all(r, n) {
                    let l = inversion_set_grassmann(&set, r, n).unwrap();
                    let lam = lambda_of_indexset(&set, r, n).unwrap();
                    assert_eq!(l.len() as i128 + lam.total(), (r * (n - r)) as i128);
                    assert_eq!(l.len(), grassmann_codim(&set, r, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn inversion_sets_are_injective() {
        for n in 1..=7 {
            for r in 0..=n {
                let images: std::collections::HashSet<_> = IndexSet::all(r, n)
                    .map(|set| inversion_set_grassmann(&set, r, n).unwrap().boxes)
                    .collect();
                assert_eq!(images.len(), IndexSet::all(r, n).count());
            }
        }
    }

    #[test]
    fn twostep_words() {
        let p = TwoStepIndex::new(s(&[1]), s(&[1, 2]), 2).unwrap();
        assert_eq!(word_of_twostep(&p), vec![1, 2]);
        let p = TwoStepIndex::new(s(&[3, 7]), s(&[1, 3, 5, 6, 7, 8]), 9).unwrap();
        assert_eq!(word_of_twostep(&p), vec![2, 0, 1, 0, 2, 2, 1, 2, 0]);
        assert!(TwoStepIndex::new(s(&[1]), s(&[1]), 2).is_err());
        assert!(TwoStepIndex::new(s(&[3]), s(&[1, 2]), 4).is_err());
    }

    #[test]
    fn twostep_reductions() {
        let p = TwoStepIndex::new(s(&[3, 7]), s(&[1, 3, 5, 6, 7, 8]), 9).unwrap();
        let red = reduce_twostep(&p);
        assert_eq!(red.i2, s(&[2, 4]));
        assert_eq!(red.i1, s(&[1, 4, 5, 6]));
        assert_eq!(red.i0, s(&[2, 5]));

        let p = TwoStepIndex::new(s(&[1]), s(&[1, 2]), 2).unwrap();
        let red = reduce_twostep(&p);
        assert_eq!((red.i0, red.i1, red.i2), (s(&[1]), s(&[1]), s(&[1])));

        for (r1, r2, n) in [(1, 3, 5), (2, 3, 4), (2, 5, 7)] {
            let p = TwoStepIndex::new(IndexSet::interval(1, r1), IndexSet::interval(1, r2), n).unwrap();
            let red = reduce_twostep(&p);
            assert_eq!(red.i2, IndexSet::interval(1, r1));
            assert_eq!(red.i1, IndexSet::interval(1, r2 - r1));
            assert_eq!(red.i0, IndexSet::interval(1, r1));
        }
    }

    fn all_twostep(n: usize) -> Vec<TwoStepIndex> {
        let mut out = Vec::new();
        for r2 in 1..=n {
            for r1 in 0..r2 {
                for i2 in IndexSet::all(r2, n) {
                    for pick in IndexSet::all(r1, r2) {
                        let i1 = IndexSet::new(pick.iter().map(|k| i2.as_slice()[k - 1]).collect()).unwrap();
                        out.push(TwoStepIndex::new(i1, i2.clone(), n).unwrap());
                    }
                }
            }
        }
        out
    }

    #[test]
    fn reduction_is_injective_and_invertible() {
        for n in 1..=7 {
            let all = all_twostep(n);
            for p in &all {
                let red = reduce_twostep(p);
                assert_eq!(red.i2.len(), p.r1());
                red.i2.check(p.r1(), n - (p.r2() - p.r1())).unwrap();
                red.i1.check(p.r2() - p.r1(), n - p.r1()).unwrap();
                red.i0.check(p.r1(), p.r2()).unwrap();
                let back = unreduce_twostep(&red, p.r1(), p.r2(), n).unwrap();
                assert_eq!(&back, p);
            }
        }
    }

    #[test]
    fn twostep_blocks_are_grassmannian_sets() {
        for n in 2..=7 {
            for p in all_twostep(n) {
                let (r1, r2) = (p.r1(), p.r2());
                let red = reduce_twostep(&p);
                let l = inversion_set_twostep(&p);
                let r0 = l.count_in((r1 + 1, r2), (1, r1));
                let rr1 = l.count_in((r2 + 1, n), (r1 + 1, r2));
                let rr2 = l.count_in((r2 + 1, n), (1, r1));
                assert_eq!(r0 + rr1 + rr2, l.len());
                assert_eq!(r0, grassmann_codim(&red.i0, r1, r2).unwrap());
                assert_eq!(rr1, grassmann_codim(&red.i1, r2 - r1, n - r1).unwrap());
                assert_eq!(rr2, grassmann_codim(&red.i2, r1, n - (r2 - r1)).unwrap());
            }
        }
    }

    #[test]
    fn reflection_symmetry_of_middle_flags() {
        for n in 2..=8 {
            for p in all_twostep(n) {
                if p.r1() + p.r2() != n {
                    continue;
                }
                let l = inversion_set_twostep(&p);
                let reflected: BTreeSet<_> = l.boxes.iter().map(|&b| tau(b, n)).collect();
                let partner = tau_partner(&p).unwrap();
                assert_eq!(reflected, inversion_set_twostep(&partner).boxes, "{p:?}");
            }
        }
    }

    #[test]
    fn isotropic_sets_are_symmetric_and_have_right_size() {
        for kind in [IsotropicKind::Symplectic, IsotropicKind::Orthogonal] {
            for n in 1..=5 {
                let big = kind.ambient(n);
                if big > 10 {
                    continue;
                }
                for r in 1..=n {
                    let roots = isotropic_roots(kind, r, n);
                    assert_eq!(roots.len(), dim_space(kind.group(), r, n).unwrap());
                    let mut sizes = Vec::new();
                    let mut seen = std::collections::HashSet::new();
                    for idx in IsotropicIndex::all(r, n, kind) {
                        let two = inversion_set_twostep(&idx.twostep());
                        for &b in &two.boxes {
                            assert!(two.contains(tau(b, big)), "{idx:?}");
                        }
                        let l = inversion_set_isotropic(&idx);
                        assert!(l.boxes.is_subset(&roots));
                        assert!(seen.insert(l.boxes.clone()));
                        sizes.push(l.len());
                        // rectangle + triangle decomposition
                        let (i0, i2) = isotropic_reduce(&idx);
                        let rect = l.count_in((r + 1, big - r), (1, r));
                        assert_eq!(rect, grassmann_codim(&i0, r, big - r).unwrap());
                        let square = grassmann_codim(&i2, r, 2 * r).unwrap();
                        let delta = diagonal_count(&idx);
                        let tri = l.count_in((big - r + 1, big), (1, r));
                        match kind {
                            IsotropicKind::Symplectic => assert_eq!(2 * tri, square + delta),
                            IsotropicKind::Orthogonal => assert_eq!(2 * tri, square - delta),
                        }
                    }
                    let dim = dim_space(kind.group(), r, n).unwrap();
                    assert_eq!(sizes.iter().filter(|&&x| x == 0).count(), 1);
                    assert_eq!(sizes.iter().filter(|&&x| x == dim).count(), 1);
                    assert!(sizes.iter().all(|&x| x <= dim));
                    assert_eq!(sizes.len(), binom(n, r) << r);
                }
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn symplectic_examples() {
        let (i0, i2) = symplectic_reduce(&iso_c(&[3, 7, 10], 5)).unwrap();
        assert_eq!(i0, s(&[2, 5, 7]));
        assert_eq!(i2, s(&[2, 4, 6]));
        for n in 1..=5 {
            let evens = iso_c(&(1..=n).map(|k| 2 * k).collect::<Vec<_>>(), n);
            let (i0, i2) = symplectic_reduce(&evens).unwrap();
            assert_eq!(i2, evens.set);
            assert_eq!(i0, IndexSet::interval(1, n));
        }
        assert!(matches!(
            IsotropicIndex::new(s(&[1, 4]), 2, IsotropicKind::Symplectic),
            Err(Error::NotIsotropic(_))
        ));
        assert!(symplectic_reduce(&iso_b(&[1], 1)).is_err());
    }

    #[test]
    fn orthogonal_examples() {
        assert_eq!(orthogonal_reduce(&iso_b(&[1], 1)).unwrap(), (s(&[1]), s(&[1])));
        assert_eq!(orthogonal_reduce(&iso_b(&[3], 1)).unwrap(), (s(&[2]), s(&[2])));
        assert_eq!(iso_b(&[1], 1).twostep().i2, s(&[1, 2]));
        assert!(matches!(
            IsotropicIndex::new(s(&[2]), 1, IsotropicKind::Orthogonal),
            Err(Error::NotIsotropic(_))
        ));
    }

    #[test]
    fn diagonal_counts() {
        assert_eq!(diagonal_count(&iso_c(&[1, 2, 4, 6], 4)), 3);
        assert_eq!(diagonal_count(&iso_c(&[4, 6, 7, 8], 4)), 1);
        for n in 1..=5 {
            for r in 1..=n {
                for idx in IsotropicIndex::all(r, n, IsotropicKind::Symplectic) {
                    // a diagonal box −2ε_j is present iff the j-th element is ≤ n
                    let expected = idx.set.iter().filter(|&i| i <= n).count();
                    assert_eq!(diagonal_count(&idx), expected);
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_space(GroupType::A, 3, 6).unwrap(), 9);
        for n in 1..6 {
            assert_eq!(dim_space(GroupType::C, n, n).unwrap(), n * (n + 1) / 2);
        }
        assert_eq!(dim_space(GroupType::B, 1, 1).unwrap(), 1);
        assert!(dim_space(GroupType::A, 3, 3).is_err());
        assert!(dim_space(GroupType::C, 0, 3).is_err());
    }

    #[test]
    fn weyl_word_matches_definition() {
        let idx = iso_c(&[3, 7, 10], 5);
        let w = idx.weyl_word();
        assert_eq!(w.len(), 10);
        for k in 1..=3 {
            assert_eq!(w[10 - k], 11 - w[k - 1]);
        }
        assert_eq!(&w[3..7], &[2, 5, 6, 9]);
    }
}
