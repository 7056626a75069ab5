//! The star-shaped quiver `T_pqr` attached to three flag types, and a
//! dense-orbit test for its representation space.
//!
//! Density is decided by the rank of the orbit-map differential
//! `X ↦ (X_{ta} u_a − u_a X_{ia})_a` at random points over a prime field.
//! Full rank at one sample certifies density. If every sample is rank
//! deficient the answer `dense = false` can be wrong only when all samples
//! fell on the degeneracy locus, a hypersurface of degree at most `dim Rep`,
//! so the error probability is at most `(dim Rep / P)^trials`.

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::IndexSet;

/// `2^31 − 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub const DEFAULT_TRIALS: u32 = 8;

/// Three arms of strictly increasing dimensions, all below the sink dimension.
/// Vertices are numbered arm by arm, source end first, with the sink last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverInstance {
    pub arms: [Vec<usize>; 3],
    pub sink: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

impl QuiverInstance {
    pub fn new(arms: [Vec<usize>; 3], sink: usize) -> Result<Self> {
        for arm in &arms {
            let increasing = arm.windows(2).all(|w| w[0] < w[1]);
            if !increasing || arm.first().is_some_and(|&a| a == 0) || arm.last().is_some_and(|&a| a >= sink) {
                return Err(Error::Range(format!("arm {arm:?} is not increasing inside [1;{}]", sink.saturating_sub(1))));
            }
        }
        Ok(QuiverInstance { arms, sink })
    }

    /// Dimension vector `α`.
    pub fn alpha(&self) -> Vec<usize> {
        self.arms.iter().flatten().copied().chain([self.sink]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.arms.iter().map(Vec::len).sum::<usize>() + 1
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let sink = self.vertex_count() - 1;
        let mut out = Vec::new();
        let mut start = 0;
        for arm in &self.arms {
            for k in 0..arm.len() {
                let tail = start + k;
                let head = if k + 1 == arm.len() { sink } else { tail + 1 };
                out.push(Arrow { tail, head });
            }
            start += arm.len();
        }
        out
    }

    /// `dim Rep(Q, α) = Σ_a α(ia) α(ta)`.
    pub fn dim_rep(&self) -> usize {
        let alpha = self.alpha();
        self.arrows().iter().map(|a| alpha[a.tail] * alpha[a.head]).sum()
    }

    /// `dim GL(α) = Σ_s α(s)²`.
    pub fn dim_group(&self) -> usize {
        self.alpha().iter().map(|a| a * a).sum()
    }
}

/// Quiver of the three flag varieties of types `a`, `b`, `c` in `C^n`.
pub fn build_flag_quiver(a: &IndexSet, b: &IndexSet, c: &IndexSet, n: usize) -> Result<QuiverInstance> {
    let arm = |s: &IndexSet| s.as_slice().to_vec();
    QuiverInstance::new([arm(a), arm(b), arm(c)], n)
}

/// `⟨α,β⟩ = Σ_s α(s)β(s) − Σ_a α(ia)β(ta)`.
pub fn ringel_form(q: &QuiverInstance, alpha: &[i64], beta: &[i64]) -> Result<i64> {
    let v = q.vertex_count();
    for x in [alpha, beta] {
        if x.len() != v {
            return Err(Error::LengthMismatch { expected: v, got: x.len() });
        }
    }
    let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
    let off: i64 = q.arrows().iter().map(|a| alpha[a.tail] * beta[a.head]).sum();
    Ok(diag - off)
}

/// Kac's criterion applied to a supplied canonical decomposition: the
/// summands must add up to `α` and each must satisfy `⟨α_i,α_i⟩ = 1`.
pub fn kac_criterion(q: &QuiverInstance, summands: &[Vec<i64>]) -> Result<bool> {
    let alpha: Vec<i64> = q.alpha().iter().map(|&a| a as i64).collect();
    let mut total = vec![0i64; alpha.len()];
    for s in summands {
        if s.len() != alpha.len() {
            return Err(Error::LengthMismatch { expected: alpha.len(), got: s.len() });
        }
        for (t, x) in total.iter_mut().zip(s) {
            *t += x;
        }
    }
    if total != alpha {
        return Err(Error::Internal(format!("summands add up to {total:?}, not {alpha:?}")));
    }
    for s in summands {
        if ringel_form(q, s, s)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitDecision {
    pub dense: bool,
    /// One `α(ta) × α(ia)` matrix per arrow, entries in `[0, P)`.
    pub certificate: Option<Vec<Vec<Vec<u64>>>>,
    pub trials: u32,
    pub trials_used: u32,
    pub field_size: u64,
    pub dim_rep: usize,
    pub dim_group: usize,
    /// Largest rank seen over all samples.
    pub rank: usize,
    /// Upper bound on the probability that `dense = false` is wrong.
    pub error_bound: f64,
}

/// The differential of the orbit map at `reps`, as a `dim Rep × dim GL(α)`
/// integer matrix. Columns run over `(vertex, row, col)` of `X_s`, rows over
/// `(arrow, row, col)` of the target homomorphism.
pub fn orbit_differential(q: &QuiverInstance, reps: &[Vec<Vec<u64>>], modulus: u64) -> Vec<Vec<u64>> {
    let alpha = q.alpha();
    let mut col_offset = Vec::with_capacity(alpha.len());
    let mut acc = 0;
    for &a in &alpha {
        col_offset.push(acc);
        acc += a * a;
    }
    let cols = acc;
    let xcol = |s: usize, p: usize, m: usize| col_offset[s] + p * alpha[s] + m;
    let mut rows = Vec::new();
    for (arrow, u) in q.arrows().iter().zip(reps) {
        let (dt, dh) = (alpha[arrow.tail], alpha[arrow.head]);
        for p in 0..dh {
            for c in 0..dt {
                let mut row = vec![0u64; cols];
                // (X_head u)[p][c] = Σ_m X_head[p][m] u[m][c]
                for m in 0..dh {
                    let e = &mut row[xcol(arrow.head, p, m)];
                    *e = (*e + u[m][c]) % modulus;
                }
                // −(u X_tail)[p][c] = −Σ_m u[p][m] X_tail[m][c]
                for m in 0..dt {
                    let e = &mut row[xcol(arrow.tail, m, c)];
                    *e = (*e + modulus - u[p][m] % modulus) % modulus;
                }
                rows.push(row);
            }
        }
    }
    rows
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Rank over `F_p`, `p` prime below `2^32`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    m.iter_mut().flatten().for_each(|x| *x %= p);
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the rationals of an integer matrix.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

fn sample(q: &QuiverInstance, rng: &mut ChaCha8Rng, p: u64) -> Vec<Vec<Vec<u64>>> {
    let alpha = q.alpha();
    q.arrows()
        .iter()
        .map(|a| {
            (0..alpha[a.head])
                .map(|_| (0..alpha[a.tail]).map(|_| rng.gen_range(0..p)).collect())
                .collect()
        })
        .collect()
}

pub fn dense_orbit(q: &QuiverInstance, seed: u64, trials: u32) -> OrbitDecision {
    dense_orbit_with_prime(q, seed, trials, DEFAULT_PRIME)
}

pub fn dense_orbit_with_prime(q: &QuiverInstance, seed: u64, trials: u32, prime: u64) -> OrbitDecision {
    let dim_rep = q.dim_rep();
    let dim_group = q.dim_group();
    let mut decision = OrbitDecision {
        dense: false,
        certificate: None,
        trials,
        trials_used: 0,
        field_size: prime,
        dim_rep,
        dim_group,
        rank: 0,
        error_bound: 0.0,
    };
    if dim_rep == 0 {
        decision.dense = true;
        decision.certificate = Some(vec![]);
        return decision;
    }
    // The scalars act trivially, so the orbit dimension is at most dim GL(α) − 1.
    if dim_rep + 1 > dim_group {
        return decision;
    }
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(t));
        let reps = sample(q, &mut rng, prime);
        let rank = rank_mod_p(orbit_differential(q, &reps, prime), prime);
        decision.trials_used = t + 1;
        decision.rank = decision.rank.max(rank);
        if rank == dim_rep {
            decision.dense = true;
            decision.certificate = Some(reps);
            return decision;
        }
    }
    decision.error_bound = (dim_rep as f64 / prime as f64).powi(trials as i32);
    decision
}
