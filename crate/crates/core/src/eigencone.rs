//! Minimal inequality lists for the eigencones of `SU(n)` (type A),
//! `Sp(n)` (type C) and `SO(2n+1)` (type B), membership tests, and an exact
//! LP check that every listed inequality cuts out a facet.

use std::fmt;

use num::{BigRational, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::islr01::Classifier;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::lr_oracle::LrClass;
use crate::schubert::{dim_space, grassmann_codim, inversion_set_isotropic, GroupType, IsotropicIndex, IsotropicKind};
use crate::weights::IndexSet;

/// `⟨coeffs, (ξ,ζ,η)⟩ ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenconeInequality {
    pub group: GroupType,
    pub rank: usize,
    pub r: usize,
    #[serde(rename = "I")]
    pub i: IndexSet,
    #[serde(rename = "J")]
    pub j: IndexSet,
    #[serde(rename = "K")]
    pub k: IndexSet,
    pub coeffs: [Vec<i64>; 3],
}

impl EigenconeInequality {
    pub fn evaluate(&self, x: [&[BigRational]; 3]) -> BigRational {
        let mut total = BigRational::zero();
        for (c, w) in self.coeffs.iter().zip(x) {
            for (&a, v) in c.iter().zip(w) {
                if a != 0 {
                    total += v * BigRational::from_integer(a.into());
                }
            }
        }
        total
    }
}

impl fmt::Display for EigenconeInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (symbol, c) in ["ξ", "ζ", "η"].iter().zip(&self.coeffs) {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let sign = match (first, a < 0) {
                    (true, true) => "−",
                    (true, false) => "",
                    (false, true) => " − ",
                    (false, false) => " + ",
                };
                let mag = if a.abs() == 1 { String::new() } else { a.abs().to_string() };
                write!(f, "{sign}{mag}{symbol}{}", k + 1)?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" ≤ 0")
    }
}

/// A point `ξ` of the closed dominant chamber: weakly decreasing, and in
/// types B and C also `ξ_n ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantSpectrum {
    pub group: GroupType,
    pub xi: Vec<BigRational>,
}

impl DominantSpectrum {
    pub fn new(group: GroupType, xi: Vec<BigRational>) -> Result<Self> {
        let show = || xi.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        if xi.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("spectrum ({}) is not weakly decreasing", show())));
        }
        if group != GroupType::A && xi.last().is_some_and(|x| x.is_negative()) {
            return Err(Error::Parse(format!("spectrum ({}) has a negative last entry", show())));
        }
        Ok(DominantSpectrum { group, xi })
    }

    pub fn from_integers(group: GroupType, xi: &[i64]) -> Result<Self> {
        Self::new(group, xi.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }
}

fn coeffs_type_a(set: &IndexSet, n: usize) -> Vec<i64> {
    (1..=n).map(|i| i64::from(set.contains(i))).collect()
}

/// `+1` at `i` for `i ∈ I ∩ [1;n]`, `−1` at `ī` for `ī ≤ n`; the middle index
/// of type B has weight zero.
fn coeffs_isotropic(idx: &IsotropicIndex) -> Vec<i64> {
    let n = idx.n;
    let mut c = vec![0i64; n];
    for i in idx.set.iter() {
        if i <= n {
            c[i - 1] += 1;
        } else if idx.bar(i) <= n {
            c[idx.bar(i) - 1] -= 1;
        }
    }
    c
}

/// Horn inequalities for `SU(n)`. The trace equality `Σξ + Σζ + Ση = 0` is
/// implied and checked by [`member`].
pub fn facets_a(n: usize, classifier: &Classifier) -> Result<Vec<EigenconeInequality>> {
    if n < 2 {
        return Err(Error::Range(format!("type A needs n ≥ 2, got {n}")));
    }
    let mut out = Vec::new();
    for r in 1..n {
        for h in classifier.horn_triples(r, n)?.iter() {
            out.push(EigenconeInequality {
                group: GroupType::A,
                rank: n,
                r,
                coeffs: [coeffs_type_a(&h.i, n), coeffs_type_a(&h.j, n), coeffs_type_a(&h.k, n)],
                i: h.i.clone(),
                j: h.j.clone(),
                k: h.k.clone(),
            });
        }
    }
    Ok(out)
}

pub fn facets_c(n: usize, classifier: &Classifier) -> Result<Vec<EigenconeInequality>> {
    facets_isotropic(IsotropicKind::Symplectic, n, classifier)
}

pub fn facets_b(n: usize, classifier: &Classifier) -> Result<Vec<EigenconeInequality>> {
    facets_isotropic(IsotropicKind::Orthogonal, n, classifier)
}

pub fn facets(group: GroupType, n: usize, classifier: &Classifier) -> Result<Vec<EigenconeInequality>> {
    match group {
        GroupType::A => facets_a(n, classifier),
        GroupType::B => facets_b(n, classifier),
        GroupType::C => facets_c(n, classifier),
    }
}

struct Candidate {
    idx: IsotropicIndex,
    codim: usize,
    i0: IndexSet,
    codim0: usize,
    i2: IndexSet,
}

fn facets_isotropic(kind: IsotropicKind, n: usize, classifier: &Classifier) -> Result<Vec<EigenconeInequality>> {
    if n < 1 {
        return Err(Error::Range("rank must be at least 1".into()));
    }
    let big = kind.ambient(n);
    let mut out = Vec::new();
    for r in 1..=n {
        let dim = dim_space(kind.group(), r, n)?;
        let rect = r * (big - 2 * r);
        let cands: Vec<Candidate> = IsotropicIndex::all(r, n, kind)
            .map(|idx| {
                let red = crate::schubert::reduce_twostep(&idx.twostep());
                Ok(Candidate {
                    codim: inversion_set_isotropic(&idx).len(),
                    codim0: grassmann_codim(&red.i0, r, big - r)?,
                    i0: red.i0,
                    i2: red.i2,
                    idx,
                })
            })
            .collect::<Result<_>>()?;
        let found: Vec<Result<Vec<EigenconeInequality>>> = cands
            .par_iter()
            .map(|a| {
                let mut local = Vec::new();
                for b in &cands {
                    for c in &cands {
                        if a.codim + b.codim + c.codim != dim || a.codim0 + b.codim0 + c.codim0 != rect {
                            continue;
                        }
                        if classifier.classify_ijk(r, 2 * r, &a.i2, &b.i2, &c.i2)? != LrClass::One {
                            continue;
                        }
                        if classifier.classify_ijk(r, big - r, &a.i0, &b.i0, &c.i0)? != LrClass::One {
                            continue;
                        }
                        local.push(EigenconeInequality {
                            group: kind.group(),
                            rank: n,
                            r,
                            i: a.idx.set.clone(),
                            j: b.idx.set.clone(),
                            k: c.idx.set.clone(),
                            coeffs: [coeffs_isotropic(&a.idx), coeffs_isotropic(&b.idx), coeffs_isotropic(&c.idx)],
                        });
                    }
                }
                Ok(local)
            })
            .collect();
        for f in found {
            out.extend(f?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Trace(BigRational),
    Facet(usize, BigRational),
}

fn check_shape(x: [&DominantSpectrum; 3], group: GroupType, rank: usize, facets: &[EigenconeInequality]) -> Result<()> {
    for s in x {
        if s.group != group {
            return Err(Error::GroupMismatch(format!("spectrum of type {} against type {group}", s.group)));
        }
        if s.xi.len() != rank {
            return Err(Error::LengthMismatch { expected: rank, got: s.xi.len() });
        }
    }
    if let Some(f) = facets.iter().find(|f| f.group != group || f.rank != rank) {
        return Err(Error::GroupMismatch(format!(
            "inequality of type {} rank {} against type {group} rank {rank}",
            f.group, f.rank
        )));
    }
    Ok(())
}

/// The first failed condition, or `None` if `(ξ,ζ,η)` is in the eigencone.
pub fn first_violation(
    x: [&DominantSpectrum; 3],
    group: GroupType,
    rank: usize,
    facets: &[EigenconeInequality],
) -> Result<Option<Violation>> {
    check_shape(x, group, rank, facets)?;
    let parts = [x[0].xi.as_slice(), x[1].xi.as_slice(), x[2].xi.as_slice()];
    if group == GroupType::A {
        let trace: BigRational = parts.iter().flat_map(|w| w.iter()).sum();
        if !trace.is_zero() {
            return Ok(Some(Violation::Trace(trace)));
        }
    }
    for (k, f) in facets.iter().enumerate() {
        let v = f.evaluate(parts);
        if v.is_positive() {
            return Ok(Some(Violation::Facet(k, v)));
        }
    }
    Ok(None)
}

pub fn member(x: [&DominantSpectrum; 3], group: GroupType, rank: usize, facets: &[EigenconeInequality]) -> Result<bool> {
    Ok(first_violation(x, group, rank, facets)?.is_none())
}

/// LP results for one inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetCheck {
    /// Largest `s ≤ 1` such that some point makes this inequality tight,
    /// every other one at most `−s`, and every chamber gap at least `s`.
    /// Positive iff the inequality defines a facet meeting the open chamber.
    pub margin: BigRational,
    /// Maximum of this inequality's left side (capped at 1) over the cone
    /// cut out by the others. Positive iff it cannot be omitted.
    pub excess: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrredundancyReport {
    pub checks: Vec<FacetCheck>,
    /// Indices with `margin ≤ 0`.
    pub non_facets: Vec<usize>,
    /// Indices with `excess ≤ 0`.
    pub redundant: Vec<usize>,
}

impl IrredundancyReport {
    pub fn all_facets(&self) -> bool {
        self.non_facets.is_empty() && self.redundant.is_empty()
    }
}

/// Coordinates in which the chamber is an orthant. Each spectrum is written
/// through its gaps `d_m = ξ_m − ξ_{m+1}` (and `d_n = ξ_n` in types B, C).
/// In type A the cone is invariant under shifts `(a,b,c)` with `a+b+c = 0`,
/// so `ξ_n = ζ_n = 0` and `η_n = t⁺ − t⁻`.
struct GapCoordinates {
    group: GroupType,
    n: usize,
}

impl GapCoordinates {
    fn gaps_per_block(&self) -> usize {
        match self.group {
            GroupType::A => self.n - 1,
            _ => self.n,
        }
    }

    fn gap_count(&self) -> usize {
        3 * self.gaps_per_block()
    }

    fn num_vars(&self) -> usize {
        self.gap_count() + if self.group == GroupType::A { 2 } else { 0 }
    }

    /// Pull back a linear form on `(ξ,ζ,η)`.
    fn pull_back(&self, c: [&[i64]; 3]) -> Vec<BigRational> {
        let g = self.gaps_per_block();
        let mut out = vec![BigRational::zero(); self.num_vars()];
        for (b, block) in c.iter().enumerate() {
            let mut prefix = 0i64;
            for m in 0..g {
                prefix += block[m];
                out[b * g + m] = BigRational::from_integer(prefix.into());
            }
        }
        if self.group == GroupType::A {
            let total: i64 = c[2].iter().sum();
            out[3 * g] = BigRational::from_integer(total.into());
            out[3 * g + 1] = -BigRational::from_integer(total.into());
        }
        out
    }

    fn trace(&self) -> Vec<BigRational> {
        let ones = vec![1i64; self.n];
        self.pull_back([&ones, &ones, &ones])
    }

    fn add_trace(&self, lp: &mut LinearProgram, width: usize) {
        if self.group == GroupType::A {
            let mut row = self.trace();
            row.resize(width, BigRational::zero());
            lp.add(row, Relation::Eq, BigRational::zero());
        }
    }
}

fn coeff_slices(f: &EigenconeInequality) -> [&[i64]; 3] {
    [&f.coeffs[0], &f.coeffs[1], &f.coeffs[2]]
}

fn optimum(lp: &LinearProgram, what: &str) -> Result<BigRational> {
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::LpInfeasible(what.to_string())),
        LpOutcome::Unbounded => Err(Error::Internal(format!("{what}: unbounded despite the cap"))),
    }
}

fn check_one(coords: &GapCoordinates, rows: &[Vec<BigRational>], k: usize) -> Result<FacetCheck> {
    let nv = coords.num_vars();
    let zero = BigRational::zero;
    let one = BigRational::one;

    // margin: variables (x, s)
    let mut lp = LinearProgram::new(nv + 1);
    lp.objective[nv] = one();
    for (i, row) in rows.iter().enumerate() {
        let mut a = row.clone();
        if i == k {
            a.push(zero());
            lp.add(a, Relation::Eq, zero());
        } else {
            a.push(one());
            lp.add(a, Relation::Le, zero());
        }
    }
    for m in 0..coords.gap_count() {
        let mut a = vec![zero(); nv + 1];
        a[m] = one();
        a[nv] = -one();
        lp.add(a, Relation::Ge, zero());
    }
    let mut cap = vec![zero(); nv + 1];
    cap[nv] = one();
    lp.add(cap, Relation::Le, one());
    coords.add_trace(&mut lp, nv + 1);
    let margin = optimum(&lp, "facet margin")?;

    // excess: variables x
    let mut lp = LinearProgram::new(nv);
    lp.objective = rows[k].clone();
    for (i, row) in rows.iter().enumerate() {
        if i != k {
            lp.add(row.clone(), Relation::Le, zero());
        }
    }
    lp.add(rows[k].clone(), Relation::Le, one());
    coords.add_trace(&mut lp, nv);
    let excess = optimum(&lp, "irredundancy")?;

    Ok(FacetCheck { margin, excess })
}

/// Certifies with exact LPs that each inequality is a facet of the cone cut
/// out by the whole list inside the dominant chamber.
pub fn verify_irredundant(facets: &[EigenconeInequality], group: GroupType, rank: usize) -> Result<IrredundancyReport> {
    if let Some(f) = facets.iter().find(|f| f.group != group || f.rank != rank) {
        return Err(Error::GroupMismatch(format!("inequality of type {} rank {}", f.group, f.rank)));
    }
    let min_rank = if group == GroupType::A { 2 } else { 1 };
    if rank < min_rank {
        return Err(Error::Range(format!("rank {rank} too small for type {group}")));
    }
    let coords = GapCoordinates { group, n: rank };
    let rows: Vec<Vec<BigRational>> = facets.iter().map(|f| coords.pull_back(coeff_slices(f))).collect();
    let checks: Vec<FacetCheck> = (0..rows.len())
        .into_par_iter()
        .map(|k| check_one(&coords, &rows, k))
        .collect::<Result<_>>()?;
    let non_facets = (0..checks.len()).filter(|&k| !checks[k].margin.is_positive()).collect();
    let redundant = (0..checks.len()).filter(|&k| !checks[k].excess.is_positive()).collect();
    Ok(IrredundancyReport {
        checks,
        non_facets,
        redundant,
    })
}
