//! Brute-force Littlewood-Richardson coefficients by counting LR tableaux.
//!
//! This is the ground truth the inductive classifier is checked against, so
//! it deliberately shares nothing with [`crate::islr01`] beyond the weight
//! types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{lambda_of_indexset, GlWeight, IndexSet, WeightTriple};

/// Three-valued classification of a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LrClass {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = ">=2")]
    AtLeastTwo,
}

impl LrClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LrClass::Zero => "0",
            LrClass::One => "1",
            LrClass::AtLeastTwo => ">=2",
        }
    }

    /// The class of a product `c₁·c₂` given the classes of its factors.
    pub fn product(self, other: LrClass) -> LrClass {
        match (self, other) {
            (LrClass::Zero, _) | (_, LrClass::Zero) => LrClass::Zero,
            (LrClass::One, LrClass::One) => LrClass::One,
            _ => LrClass::AtLeastTwo,
        }
    }
}

impl fmt::Display for LrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(c: u64) -> LrClass {
    match c {
        0 => LrClass::Zero,
        1 => LrClass::One,
        _ => LrClass::AtLeastTwo,
    }
}

/// `c_{λμ}^ν`, the multiplicity of `V_ν` in `V_λ ⊗ V_μ`.
pub fn lr_coefficient(lam: &GlWeight, mu: &GlWeight, nu: &GlWeight) -> Result<u64> {
    lr_coefficient_capped(lam, mu, nu, None)
}

/// As [`lr_coefficient`], but stops counting once `cap` tableaux are found.
pub fn lr_coefficient_capped(
    lam: &GlWeight,
    mu: &GlWeight,
    nu: &GlWeight,
    cap: Option<u64>,
) -> Result<u64> {
    let n = lam.len();
    for w in [mu, nu] {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: w.len(),
            });
        }
    }
    let Some((inner, content, outer)) = normalize(lam, mu, nu) else {
        return Ok(0);
    };
    Ok(count_lr_tableaux(&outer, &inner, &content, cap.unwrap_or(u64::MAX)))
}

/// `c^n_{λμν} = c_{λμ}^{ν^∨}`, the dimension of invariants in `V_λ⊗V_μ⊗V_ν`.
pub fn triple_coefficient(t: &WeightTriple) -> Result<u64> {
    lr_coefficient(&t.lam, &t.mu, &t.nu.dual())
}

pub fn triple_coefficient_capped(t: &WeightTriple, cap: u64) -> Result<u64> {
    lr_coefficient_capped(&t.lam, &t.mu, &t.nu.dual(), Some(cap))
}

/// Grassmannian structure constant `c_{IJK}` of `G(r,n)`, via
/// `c_{IJK} = c^r_{λ^I, λ^J, λ^K − 2(n−r)1^r}`.
pub fn c_ijk(r: usize, n: usize, i: &IndexSet, j: &IndexSet, k: &IndexSet) -> Result<u64> {
    triple_coefficient(&grassmann_triple(r, n, i, j, k)?)
}

/// The weight triple whose invariant count is `c_{IJK}` on `G(r,n)`.
pub fn grassmann_triple(
    r: usize,
    n: usize,
    i: &IndexSet,
    j: &IndexSet,
    k: &IndexSet,
) -> Result<WeightTriple> {
    if r > n {
        return Err(Error::Range(format!("r = {r} > n = {n}")));
    }
    let shift = -2 * (n - r) as i64;
    WeightTriple::new(
        lambda_of_indexset(i, r, n)?,
        lambda_of_indexset(j, r, n)?,
        lambda_of_indexset(k, r, n)?.shift(shift)?,
    )
}

/// Shift `λ` and `μ` to partitions, compensating on `ν`. Returns `None` when
/// the coefficient is forced to vanish (wrong size or `λ ⊄ ν`).
fn normalize(
    lam: &GlWeight,
    mu: &GlWeight,
    nu: &GlWeight,
) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    if lam.total() + mu.total() != nu.total() {
        return None;
    }
    let (a, b) = (lam.last() as i128, mu.last() as i128);
    let to_parts = |w: &GlWeight, s: i128| -> Option<Vec<usize>> {
        w.parts()
            .iter()
            .map(|&x| usize::try_from(x as i128 - s).ok())
            .collect()
    };
    let inner = to_parts(lam, a)?;
    let content = to_parts(mu, b)?;
    let outer = to_parts(nu, a + b)?;
    if inner.iter().zip(&outer).any(|(l, o)| l > o) {
        return None;
    }
    Some((inner, content, outer))
}

/// Counts semistandard fillings of `outer/inner` with content `content` whose
/// reverse reading word is a lattice word.
fn count_lr_tableaux(outer: &[usize], inner: &[usize], content: &[usize], cap: u64) -> u64 {
    let content: Vec<usize> = content.iter().copied().take_while(|&c| c > 0).collect();
    // Reading order: rows top to bottom, each row right to left.
    let cells: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|row| (inner[row]..outer[row]).rev().map(move |col| (row, col)))
        .collect();
    if cells.is_empty() {
        return 1;
    }
    let width = outer.first().copied().unwrap_or(0);
    let mut search = Search {
        outer,
        inner,
        content: &content,
        cells: &cells,
        grid: vec![vec![u8::MAX; width]; outer.len()],
        counts: vec![0; content.len()],
        found: 0,
        cap,
    };
    search.dfs(0);
    search.found
}

struct Search<'a> {
    outer: &'a [usize],
    inner: &'a [usize],
    content: &'a [usize],
    cells: &'a [(usize, usize)],
    grid: Vec<Vec<u8>>,
    counts: Vec<usize>,
    found: u64,
    cap: u64,
}

impl Search<'_> {
    fn dfs(&mut self, idx: usize) {
        if self.found >= self.cap {
            return;
        }
        if idx == self.cells.len() {
            self.found += 1;
            return;
        }
        let (row, col) = self.cells[idx];
        // Row weakly increases to the right; LR entries in row i are at most i.
        let mut hi = row.min(self.content.len().saturating_sub(1));
        if col + 1 < self.outer[row] {
            hi = hi.min(self.grid[row][col + 1] as usize);
        }
        // Columns strictly increase downwards.
        let lo = if row > 0 && col >= self.inner[row - 1] {
            self.grid[row - 1][col] as usize + 1
        } else {
            0
        };
        if self.content.is_empty() {
            return;
        }
        for v in lo..=hi {
            if self.counts[v] >= self.content[v] {
                continue;
            }
            if v > 0 && self.counts[v] + 1 > self.counts[v - 1] {
                continue;
            }
            self.counts[v] += 1;
            self.grid[row][col] = v as u8;
            self.dfs(idx + 1);
            self.counts[v] -= 1;
            if self.found >= self.cap {
                break;
            }
        }
        self.grid[row][col] = u8::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64]) -> GlWeight {
        GlWeight::new(p.to_vec()).unwrap()
    }

    fn s(p: &[usize]) -> IndexSet {
        IndexSet::new(p.to_vec()).unwrap()
    }

    fn t(a: &[i64], b: &[i64], c: &[i64]) -> WeightTriple {
        WeightTriple::from_parts(a, b, c).unwrap()
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&w(&[1, 0]), &w(&[1, 0]), &w(&[1, 1])).unwrap(), 1);
        assert_eq!(lr_coefficient(&w(&[0; 3]), &w(&[0; 3]), &w(&[0; 3])).unwrap(), 1);
        assert_eq!(
            lr_coefficient(&w(&[2, 1, 0]), &w(&[2, 1, 0]), &w(&[3, 2, 1])).unwrap(),
            2
        );
        assert_eq!(
            lr_coefficient_capped(&w(&[2, 1, 0]), &w(&[2, 1, 0]), &w(&[3, 2, 1]), Some(1))
                .unwrap(),
            1
        );
        // wrong size
        assert_eq!(lr_coefficient(&w(&[1, 0]), &w(&[1, 0]), &w(&[1, 0])).unwrap(), 0);
        // the column (1,1,1) cannot occur in GL_2
        assert_eq!(lr_coefficient(&w(&[1, 0]), &w(&[1, 0]), &w(&[2, 0])).unwrap(), 1);
        assert!(lr_coefficient(&w(&[1, 0]), &w(&[1]), &w(&[1, 1])).is_err());
    }

    #[test]
    fn pieri_rule() {
        // h_1 · s_(2,1) = s_(3,1) + s_(2,2) + s_(2,1,1)
        let l = w(&[2, 1, 0]);
        let m = w(&[1, 0, 0]);
        for (nu, c) in [
            (&[3, 1, 0][..], 1),
            (&[2, 2, 0], 1),
            (&[2, 1, 1], 1),
            (&[3, 0, 1], 0),
        ] {
            if let Ok(nu) = GlWeight::new(nu.to_vec()) {
                assert_eq!(lr_coefficient(&l, &m, &nu).unwrap(), c);
            }
        }
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple_coefficient(&t(&[1, 0], &[1, 0], &[-1, -1])).unwrap(), 1);
        assert_eq!(triple_coefficient(&t(&[1, -1], &[1, -1], &[1, -1])).unwrap(), 1);
        assert_eq!(
            triple_coefficient(&t(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap(),
            2
        );
        assert_eq!(triple_coefficient(&t(&[1, 0], &[1, 0], &[0, 0])).unwrap(), 0);
    }

    #[test]
    fn sl2_invariants_match_clebsch_gordan() {
        // Sym^a ⊗ Sym^b ⊗ Sym^c has a one-dimensional invariant space iff
        // a+b+c is even and the triangle inequalities hold.
        for a in 0..6i64 {
            for b in 0..6i64 {
                for c in 0..6i64 {
                    let sum = a + b + c;
                    if sum % 2 != 0 {
                        continue;
                    }
                    let h = sum / 2;
                    let tr = t(&[a, 0], &[b, 0], &[c - h, -h]);
                    let expect = u64::from(a <= b + c && b <= a + c && c <= a + b);
                    assert_eq!(triple_coefficient(&tr).unwrap(), expect, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(
            c_ijk(4, 8, &s(&[1, 2, 4, 6]), &s(&[4, 6, 7, 8]), &s(&[4, 6, 7, 8])).unwrap(),
            0
        );
        assert_eq!(
            c_ijk(4, 8, &s(&[2, 4, 6, 8]), &s(&[2, 4, 6, 8]), &s(&[3, 4, 7, 8])).unwrap(),
            2
        );
        assert_eq!(
            c_ijk(
                5,
                10,
                &s(&[2, 4, 6, 8, 10]),
                &s(&[2, 4, 6, 8, 10]),
                &s(&[3, 6, 7, 9, 10])
            )
            .unwrap(),
            6
        );
        // projective line: point · fundamental · fundamental
        assert_eq!(c_ijk(1, 2, &s(&[1]), &s(&[2]), &s(&[2])).unwrap(), 1);
        assert_eq!(c_ijk(1, 2, &s(&[1]), &s(&[1]), &s(&[1])).unwrap(), 0);
        assert!(c_ijk(2, 4, &s(&[1]), &s(&[1, 2]), &s(&[1, 2])).is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(classify(0), LrClass::Zero);
        assert_eq!(classify(1), LrClass::One);
        assert_eq!(classify(7), LrClass::AtLeastTwo);
        assert_eq!(LrClass::One.product(LrClass::AtLeastTwo), LrClass::AtLeastTwo);
        assert_eq!(LrClass::Zero.product(LrClass::AtLeastTwo), LrClass::Zero);
    }

    #[test]
    fn lesieur_duality() {
        // c_{IJK} = c_{λ^{I^∨} λ^{J^∨}}^{λ^K} whenever the codimensions add up.
        for n in 2..=6 {
            for r in 1..n {
                let sets: Vec<_> = IndexSet::all(r, n).collect();
                let lam: Vec<_> = sets
                    .iter()
                    .map(|s| lambda_of_indexset(s, r, n).unwrap())
                    .collect();
                for (a, i) in sets.iter().enumerate() {
                    for (b, j) in sets.iter().enumerate() {
                        for (c, k) in sets.iter().enumerate() {
                            let size = lam[a].total() + lam[b].total() + lam[c].total();
                            if size != 2 * (r * (n - r)) as i128 {
                                continue;
                            }
                            let lhs = c_ijk(r, n, i, j, k).unwrap();
                            let id = lambda_of_indexset(&i.dual(n), r, n).unwrap();
                            let jd = lambda_of_indexset(&j.dual(n), r, n).unwrap();
                            assert_eq!(lhs, lr_coefficient(&id, &jd, &lam[c]).unwrap());
                        }
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn weight(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = GlWeight> {
            proptest::collection::vec(lo..=hi, n).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                GlWeight::new(v).unwrap()
            })
        }

        /// Trace-zero triples: `ν` is adjusted by a constant when possible.
        fn triple() -> impl Strategy<Value = WeightTriple> {
            (1usize..=4)
                .prop_flat_map(|n| (weight(n, 0, 4), weight(n, 0, 4), weight(n, -4, 0)))
                .prop_filter_map("trace", |(l, m, v)| {
                    let n = l.len() as i128;
                    let tr = l.total() + m.total() + v.total();
                    (tr % n == 0).then(|| {
                        WeightTriple::new(l, m, v.shift((-tr / n) as i64).unwrap()).unwrap()
                    })
                })
        }

        proptest! {
            #[test]
            fn symmetric_in_the_three_weights(t in triple()) {
                let c = triple_coefficient(&t).unwrap();
                for p in t.permutations() {
                    prop_assert_eq!(triple_coefficient(&p).unwrap(), c);
                }
            }

            #[test]
            fn shift_invariant(t in triple(), a in -3i64..3, b in -3i64..3) {
                let c = triple_coefficient(&t).unwrap();
                prop_assert_eq!(triple_coefficient(&t.shift(a, b, -a - b).unwrap()).unwrap(), c);
            }

            #[test]
            fn nonzero_needs_trace_zero(l in weight(3, -3, 3), m in weight(3, -3, 3), v in weight(3, -3, 3)) {
                let t = WeightTriple::new(l, m, v).unwrap();
                if triple_coefficient(&t).unwrap() != 0 {
                    prop_assert_eq!(t.total(), 0);
                }
            }
        }
    }
}
