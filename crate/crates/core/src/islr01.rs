//! Inductive decision of `c ∈ {0, 1, ≥2}` for triple coefficients, without
//! computing the coefficient.
//!
//! The recursion runs over the Horn inequalities of smaller rank, whose
//! index triples are themselves selected by the same procedure. Results are
//! memoized on triples normalized by the shift and permutation symmetries.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigRational, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr_oracle::LrClass;
use crate::quiver::{build_flag_quiver, dense_orbit, OrbitDecision, DEFAULT_TRIALS};
use crate::weights::{lambda_of_indexset, GlWeight, IndexSet, WeightTriple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step")]
pub enum TraceStep {
    BaseCase {
        reason: String,
    },
    ViolatedInequality {
        r: usize,
        #[serde(rename = "I")]
        i: IndexSet,
        #[serde(rename = "J")]
        j: IndexSet,
        #[serde(rename = "K")]
        k: IndexSet,
        phi: i128,
    },
    Factorized {
        r: usize,
        #[serde(rename = "I")]
        i: IndexSet,
        #[serde(rename = "J")]
        j: IndexSet,
        #[serde(rename = "K")]
        k: IndexSet,
        c1: LrClass,
        c2: LrClass,
    },
    DenseOrbit {
        decision: OrbitDecision,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HornWitness {
    pub verdict: LrClass,
    pub trace: Vec<TraceStep>,
}

/// `φ_{IJK}(λ,μ,ν) = |λ_I| + |μ_J| + |ν_K|`.
pub fn phi(i: &IndexSet, j: &IndexSet, k: &IndexSet, t: &WeightTriple) -> Result<i128> {
    check_sizes(i, j, k, t.n())?;
    let sum = |w: &GlWeight, s: &IndexSet| s.iter().map(|x| i128::from(w.parts()[x - 1])).sum::<i128>();
    Ok(sum(&t.lam, i) + sum(&t.mu, j) + sum(&t.nu, k))
}

/// `φ_{IJK}` on rational spectra.
pub fn phi_rational(i: &IndexSet, j: &IndexSet, k: &IndexSet, x: [&[BigRational]; 3]) -> Result<BigRational> {
    check_sizes(i, j, k, x[0].len())?;
    let mut total = BigRational::zero();
    for (w, s) in x.iter().zip([i, j, k]) {
        for e in s.iter() {
            total += &w[e - 1];
        }
    }
    Ok(total)
}

fn check_sizes(i: &IndexSet, j: &IndexSet, k: &IndexSet, n: usize) -> Result<()> {
    if j.len() != i.len() || k.len() != i.len() {
        return Err(Error::LengthMismatch { expected: i.len(), got: j.len().max(k.len()) });
    }
    for s in [i, j, k] {
        s.check(i.len(), n)?;
    }
    Ok(())
}

/// A Horn inequality `φ_{IJK} ≤ 0` of rank `n`, with `c_{IJK} = 1` on `G(r,n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornTriple {
    pub r: usize,
    pub i: IndexSet,
    pub j: IndexSet,
    pub k: IndexSet,
}

type MemoKey = [Vec<i64>; 3];

/// Memoized `IsLR01` with a fixed seed and trial count for the dense-orbit step.
pub struct Classifier {
    seed: u64,
    trials: u32,
    memo: RwLock<HashMap<MemoKey, LrClass>>,
    /// Keyed by `(r, n)`.
    tables: RwLock<HashMap<(usize, usize), HornTable>>,
}

type HornTable = Arc<Vec<HornTriple>>;

/// One memo entry in serialized form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoEntry {
    pub lam: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub verdict: LrClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoDump {
    pub seed: u64,
    pub trials: u32,
    pub entries: Vec<MemoEntry>,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::new(0, DEFAULT_TRIALS)
    }
}

/// Shifts each weight to end in 0 and sorts the three. Only meaningful for
/// trace-zero triples, where the total shift is then determined.
fn memo_key(t: &WeightTriple) -> MemoKey {
    let norm = |w: &GlWeight| {
        let last = w.last();
        w.parts().iter().map(|&x| x - last).collect::<Vec<_>>()
    };
    let mut key = [norm(&t.lam), norm(&t.mu), norm(&t.nu)];
    key.sort();
    key
}

/// Rebuilds a trace-zero representative from a memo key.
fn triple_of_key(key: &MemoKey) -> Result<WeightTriple> {
    let n = key[0].len();
    let total: i64 = key.iter().flatten().sum();
    if n == 0 || total % n as i64 != 0 {
        return Err(Error::Internal(format!("memo key {key:?} has no trace-zero shift")));
    }
    let nu: Vec<i64> = key[2].iter().map(|x| x - total / n as i64).collect();
    WeightTriple::from_parts(&key[0], &key[1], &nu)
}

impl Classifier {
    pub fn new(seed: u64, trials: u32) -> Self {
        Classifier {
            seed,
            trials,
            memo: RwLock::new(HashMap::new()),
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> u32 {
        self.trials
    }

    /// Verdict with the full decision trace of the top-level call.
    pub fn is_lr_01(&self, t: &WeightTriple) -> Result<HornWitness> {
        let (verdict, trace) = self.run(t)?;
        // keys forget the total shift, so only trace-zero triples may be stored
        if t.total() == 0 && t.n() > 0 {
            self.memo.write().expect("memo lock").insert(memo_key(t), verdict);
        }
        Ok(HornWitness { verdict, trace })
    }

    /// Verdict only, served from the memo when possible.
    pub fn verdict(&self, t: &WeightTriple) -> Result<LrClass> {
        if t.total() != 0 {
            return Ok(LrClass::Zero);
        }
        let key = memo_key(t);
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let (v, _) = self.run(t)?;
        if t.n() > 0 {
            self.memo.write().expect("memo lock").insert(key, v);
        }
        Ok(v)
    }

    fn run(&self, t: &WeightTriple) -> Result<(LrClass, Vec<TraceStep>)> {
        let n = t.n();
        if t.total() != 0 {
            let reason = format!("|λ|+|μ|+|ν| = {} ≠ 0", t.total());
            return Ok((LrClass::Zero, vec![TraceStep::BaseCase { reason }]));
        }
        if n <= 1 {
            let reason = format!("n = {n} and the trace vanishes");
            return Ok((LrClass::One, vec![TraceStep::BaseCase { reason }]));
        }
        for r in 1..n {
            for h in self.horn_triples(r, n)?.iter() {
                let value = phi(&h.i, &h.j, &h.k, t)?;
                if value > 0 {
                    let step = TraceStep::ViolatedInequality {
                        r,
                        i: h.i.clone(),
                        j: h.j.clone(),
                        k: h.k.clone(),
                        phi: value,
                    };
                    return Ok((LrClass::Zero, vec![step]));
                }
                if value == 0 {
                    let sub = t.restrict(&h.i, &h.j, &h.k)?;
                    let rest = t.restrict(&h.i.complement(n), &h.j.complement(n), &h.k.complement(n))?;
                    let c1 = self.verdict(&sub)?;
                    let c2 = self.verdict(&rest)?;
                    let step = TraceStep::Factorized {
                        r,
                        i: h.i.clone(),
                        j: h.j.clone(),
                        k: h.k.clone(),
                        c1,
                        c2,
                    };
                    return Ok((c1.product(c2), vec![step]));
                }
            }
        }
        // Every Horn inequality holds strictly here: the loop above returns on
        // the first φ ≥ 0.
        let q = build_flag_quiver(&t.lam.type_of(), &t.mu.type_of(), &t.nu.type_of(), n)?;
        let decision = dense_orbit(&q, self.seed, self.trials);
        let verdict = if decision.dense { LrClass::One } else { LrClass::AtLeastTwo };
        Ok((verdict, vec![TraceStep::DenseOrbit { decision }]))
    }

    /// All `(I,J,K) ∈ P(r,n)³` with `c_{IJK} = 1`, sorted lexicographically.
    pub fn horn_triples(&self, r: usize, n: usize) -> Result<Arc<Vec<HornTriple>>> {
        if r == 0 || r >= n {
            return Err(Error::Range(format!("r = {r} outside [1;{}]", n.saturating_sub(1))));
        }
        if let Some(t) = self.tables.read().expect("table lock").get(&(r, n)) {
            return Ok(Arc::clone(t));
        }
        let sets: Vec<(IndexSet, GlWeight)> = IndexSet::all(r, n)
            .map(|s| {
                let lam = lambda_of_indexset(&s, r, n)?;
                Ok((s, lam))
            })
            .collect::<Result<_>>()?;
        let target = 2 * (r * (n - r)) as i128;
        let shift = -2 * (n - r) as i64;
        let mut candidates = Vec::new();
        for (a, la) in &sets {
            for (b, lb) in &sets {
                for (c, lc) in &sets {
                    if la.total() + lb.total() + lc.total() == target {
                        candidates.push((a, la, b, lb, c, lc));
                    }
                }
            }
        }
        let verdicts: Vec<Result<Option<HornTriple>>> = candidates
            .par_iter()
            .map(|&(a, la, b, lb, c, lc)| {
                let t = WeightTriple::new(la.clone(), lb.clone(), lc.shift(shift)?)?;
                Ok((self.verdict(&t)? == LrClass::One).then(|| HornTriple {
                    r,
                    i: a.clone(),
                    j: b.clone(),
                    k: c.clone(),
                }))
            })
            .collect();
        let mut table = Vec::new();
        for v in verdicts {
            table.extend(v?);
        }
        let table = Arc::new(table);
        self.tables.write().expect("table lock").insert((r, n), Arc::clone(&table));
        Ok(table)
    }

    /// `c_{IJK} ∈ {0, 1, ≥2}` on `G(r,n)`.
    pub fn classify_ijk(&self, r: usize, n: usize, i: &IndexSet, j: &IndexSet, k: &IndexSet) -> Result<LrClass> {
        let mut parts = Vec::with_capacity(3);
        for s in [i, j, k] {
            parts.push(lambda_of_indexset(s, r, n)?);
        }
        let nu = parts.pop().expect("three parts").shift(-2 * (n - r) as i64)?;
        let mu = parts.pop().expect("three parts");
        let lam = parts.pop().expect("three parts");
        self.verdict(&WeightTriple::new(lam, mu, nu)?)
    }

    /// First violated Horn condition for rational spectra, or `None` if
    /// `(λ,μ,ν)` lies in the Horn cone.
    pub fn horn_violation(&self, x: [&[BigRational]; 3]) -> Result<Option<HornViolation>> {
        let n = x[0].len();
        for w in x {
            if w.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: w.len() });
            }
            if w.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::Parse(format!(
                    "spectrum ({}) is not weakly decreasing",
                    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                )));
            }
        }
        let trace: BigRational = x.iter().flat_map(|w| w.iter()).sum();
        if !trace.is_zero() {
            return Ok(Some(HornViolation::Trace(trace)));
        }
        for r in 1..n {
            for h in self.horn_triples(r, n)?.iter() {
                let value = phi_rational(&h.i, &h.j, &h.k, x)?;
                if value.is_positive() {
                    return Ok(Some(HornViolation::Inequality(h.clone(), value)));
                }
            }
        }
        Ok(None)
    }

    pub fn horn_member(&self, x: [&[BigRational]; 3]) -> Result<bool> {
        Ok(self.horn_violation(x)?.is_none())
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn dump_memo(&self) -> MemoDump {
        let memo = self.memo.read().expect("memo lock");
        let mut entries: Vec<MemoEntry> = memo
            .iter()
            .filter_map(|(key, &verdict)| {
                let t = triple_of_key(key).ok()?;
                Some(MemoEntry {
                    lam: t.lam.parts().to_vec(),
                    mu: t.mu.parts().to_vec(),
                    nu: t.nu.parts().to_vec(),
                    verdict,
                })
            })
            .collect();
        entries.sort_by(|a, b| (&a.lam, &a.mu, &a.nu).cmp(&(&b.lam, &b.mu, &b.nu)));
        MemoDump {
            seed: self.seed,
            trials: self.trials,
            entries,
        }
    }

    pub fn load_memo(&self, dump: &MemoDump) -> Result<()> {
        let mut memo = self.memo.write().expect("memo lock");
        for e in &dump.entries {
            let t = WeightTriple::from_parts(&e.lam, &e.mu, &e.nu)?;
            if t.total() != 0 {
                return Err(Error::Parse(format!("memo entry {t} does not have trace zero")));
            }
            memo.insert(memo_key(&t), e.verdict);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HornViolation {
    Trace(BigRational),
    Inequality(HornTriple, BigRational),
}

fn shared() -> &'static Classifier {
    static SHARED: OnceLock<Classifier> = OnceLock::new();
    SHARED.get_or_init(Classifier::default)
}

/// `IsLR01` with the process-wide classifier (seed 0, default trials).
pub fn is_lr_01(t: &WeightTriple) -> Result<HornWitness> {
    shared().is_lr_01(t)
}

/// Horn cone membership of rational spectra with the process-wide classifier.
pub fn horn_member(x: [&[BigRational]; 3]) -> Result<bool> {
    shared().horn_member(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr_oracle::{classify, triple_coefficient};
    use proptest::prelude::*;

    fn t(a: &[i64], b: &[i64], c: &[i64]) -> WeightTriple {
        WeightTriple::from_parts(a, b, c).unwrap()
    }

    fn s(p: &[usize]) -> IndexSet {
        IndexSet::new(p.to_vec()).unwrap()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn phi_values() {
        let z = t(&[0, 0], &[0, 0], &[0, 0]);
        assert_eq!(phi(&s(&[1]), &s(&[1]), &s(&[1]), &z).unwrap(), 0);
        let x = t(&[1, 0], &[0, -1], &[0, 0]);
        assert_eq!(phi(&s(&[1]), &s(&[2]), &s(&[2]), &x).unwrap(), 0);
        let y = t(&[3, 2, 1], &[5, 0, 0], &[1, 1, -4]);
        assert_eq!(phi(&s(&[1, 2]), &s(&[1, 2]), &s(&[1, 2]), &y).unwrap(), 5 + 5 + 2);
        assert!(phi(&s(&[1]), &s(&[1, 2]), &s(&[1]), &y).is_err());
    }

    #[test]
    fn examples() {
        let c = Classifier::default();
        assert_eq!(c.is_lr_01(&t(&[5], &[-2], &[-3])).unwrap().verdict, LrClass::One);
        assert_eq!(c.is_lr_01(&t(&[5], &[-2], &[-2])).unwrap().verdict, LrClass::Zero);
        assert_eq!(c.is_lr_01(&t(&[1, 0], &[1, 0], &[-1, -1])).unwrap().verdict, LrClass::One);
        let w = c.is_lr_01(&t(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap();
        assert_eq!(w.verdict, LrClass::AtLeastTwo);
        assert!(matches!(w.trace.last(), Some(TraceStep::DenseOrbit { decision }) if !decision.dense));
    }

    #[test]
    fn nonzero_trace_is_caught() {
        let w = is_lr_01(&t(&[1, 0], &[1, 0], &[0, 0])).unwrap();
        assert_eq!(w.verdict, LrClass::Zero);
        assert!(matches!(w.trace[0], TraceStep::BaseCase { .. }));
    }

    #[test]
    fn empty_triple() {
        let c = Classifier::default();
        let e = t(&[], &[], &[]);
        assert_eq!(c.is_lr_01(&e).unwrap().verdict, LrClass::One);
        assert_eq!(crate::lr_oracle::triple_coefficient(&e).unwrap(), 1);
        assert_eq!(c.memo_len(), 0);
    }

    #[test]
    fn agrees_with_oracle_up_to_rank_three() {
        let c = Classifier::default();
        let weights = |n: usize| -> Vec<GlWeight> {
            let mut out = Vec::new();
            let mut parts = vec![0i64; n];
            fn rec(k: usize, hi: i64, parts: &mut Vec<i64>, out: &mut Vec<GlWeight>) {
                if k == parts.len() {
                    out.push(GlWeight::new(parts.clone()).unwrap());
                    return;
                }
                for v in -3..=hi {
                    parts[k] = v;
                    rec(k + 1, v, parts, out);
                }
            }
            rec(0, 3, &mut parts, &mut out);
            out
        };
        for n in 1..=3 {
            let ws = weights(n);
            for a in &ws {
                for b in &ws {
                    for d in &ws {
                        let x = WeightTriple::new(a.clone(), b.clone(), d.clone()).unwrap();
                        let expected = classify(triple_coefficient(&x).unwrap());
                        assert_eq!(c.verdict(&x).unwrap(), expected, "{x}");
                    }
                }
            }
        }
    }

    #[test]
    fn grassmann_tables() {
        let c = Classifier::default();
        let t12 = c.horn_triples(1, 2).unwrap();
        assert_eq!(t12.len(), 3);
        assert!(t12.contains(&HornTriple { r: 1, i: s(&[1]), j: s(&[2]), k: s(&[2]) }));
        for n in 2..=5 {
            for r in 1..n {
                for h in c.horn_triples(r, n).unwrap().iter() {
                    let v = crate::lr_oracle::c_ijk(r, n, &h.i, &h.j, &h.k).unwrap();
                    assert_eq!(v, 1);
                }
                assert_eq!(
                    c.classify_ijk(r, n, &IndexSet::interval(1, r), &IndexSet::interval(n - r + 1, n), &IndexSet::interval(n - r + 1, n)).unwrap(),
                    LrClass::One
                );
            }
        }
    }

    #[test]
    fn horn_membership() {
        let c = Classifier::default();
        assert!(!c.horn_member([&q(&[1, 0]), &q(&[1, 0]), &q(&[0, 0])]).unwrap());
        assert!(c.horn_member([&q(&[1, 0]), &q(&[1, 0]), &q(&[-1, -1])]).unwrap());
        let xi = q(&[7, 2, -1]);
        let dual: Vec<BigRational> = xi.iter().rev().map(|x| -x).collect();
        assert!(c.horn_member([&xi, &dual, &q(&[0, 0, 0])]).unwrap());
        assert!(c.horn_member([&q(&[1, 0]), &q(&[1]), &q(&[0, 0])]).is_err());
        let v = c.horn_violation([&q(&[2, 0]), &q(&[0, 0]), &q(&[0, -2])]).unwrap();
        assert!(v.is_none());
        let v = c.horn_violation([&q(&[3, 0]), &q(&[0, 0]), &q(&[-1, -2])]).unwrap();
        assert!(matches!(v, Some(HornViolation::Inequality(_, _))));
    }

    #[test]
    fn memo_round_trip() {
        let c = Classifier::default();
        c.verdict(&t(&[2, 1, 0], &[2, 1, 0], &[-1, -2, -3])).unwrap();
        let dump = c.dump_memo();
        assert!(!dump.entries.is_empty());
        let fresh = Classifier::default();
        fresh.load_memo(&dump).unwrap();
        assert_eq!(fresh.memo_len(), c.memo_len());
        assert_eq!(fresh.dump_memo(), dump);
    }

    fn weight(n: usize) -> impl Strategy<Value = GlWeight> {
        proptest::collection::vec(-3i64..=3, n).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            GlWeight::new(v).unwrap()
        })
    }

    fn trace_zero(n: usize) -> impl Strategy<Value = WeightTriple> {
        (weight(n), weight(n), weight(n)).prop_filter_map("trace", |(a, b, c)| {
            let tot = a.total() + b.total() + c.total();
            let c = c.shift(-(tot / c.len() as i128) as i64).ok()?;
            let x = WeightTriple::new(a, b, c).ok()?;
            (x.total() == 0).then_some(x)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn permutation_invariant(x in trace_zero(4)) {
            let v = is_lr_01(&x).unwrap().verdict;
            for p in x.permutations() {
                prop_assert_eq!(Classifier::default().verdict(&p).unwrap(), v);
            }
        }

        #[test]
        fn shift_invariant(x in trace_zero(4), a in -3i64..3, b in -3i64..3) {
            let v = is_lr_01(&x).unwrap().verdict;
            let y = x.shift(a, b, -a - b).unwrap();
            prop_assert_eq!(Classifier::default().verdict(&y).unwrap(), v);
        }

        #[test]
        fn witness_ends_in_justification(x in trace_zero(4)) {
            let w = is_lr_01(&x).unwrap();
            prop_assert_eq!(w.trace.len(), 1);
            match &w.trace[0] {
                TraceStep::ViolatedInequality { phi, .. } => {
                    prop_assert!(*phi > 0);
                    prop_assert_eq!(w.verdict, LrClass::Zero);
                }
                TraceStep::Factorized { c1, c2, .. } => prop_assert_eq!(w.verdict, c1.product(*c2)),
                TraceStep::DenseOrbit { decision } => prop_assert_eq!(decision.dense, w.verdict == LrClass::One),
                TraceStep::BaseCase { .. } => prop_assert!(x.n() == 1),
            }
        }
    }
}
