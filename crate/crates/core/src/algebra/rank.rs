//! Rank of Laurent matrices over the field of fractions, and at points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::matrix::LaurentMatrix;
use super::modular::{is_prime, rank_mod};
use super::rational::Rational;
use super::AlgebraError;

/// The Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_TRIALS: u32 = 3;
pub const MIN_PRIME: u64 = 1 << 30;
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankStrategy {
    /// Evaluate at `trials` uniformly random points of `(F_p^*)^l` and keep
    /// the largest rank seen.
    Randomized { trials: u32, prime: u64, seed: u64 },
    /// Fraction-free (Bareiss) elimination over `Q[x_1..x_l]`.
    Exact,
}

impl Default for RankStrategy {
    fn default() -> Self {
        RankStrategy::Randomized {
            trials: DEFAULT_TRIALS,
            prime: DEFAULT_PRIME,
            seed: 0,
        }
    }
}

impl RankStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            RankStrategy::Randomized { .. } => "randomized",
            RankStrategy::Exact => "exact",
        }
    }

    /// The same strategy with its seed replaced; used to give independent
    /// matrices independent random streams.
    pub fn reseeded(&self, seed: u64) -> Self {
        match *self {
            RankStrategy::Randomized { trials, prime, .. } => {
                RankStrategy::Randomized { trials, prime, seed }
            }
            RankStrategy::Exact => RankStrategy::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RankOutcome {
    pub rank: usize,
    /// Upper bound on the probability that `rank` is too small; `None` for
    /// exact computations.
    pub failure_bound: Option<f64>,
}

pub fn validate_prime(prime: u64) -> Result<(), AlgebraError> {
    if prime <= MIN_PRIME || prime >= MAX_PRIME || !is_prime(prime) {
        return Err(AlgebraError::InvalidPrime { prime });
    }
    Ok(())
}

/// Multiplies every row by the monomial that makes its smallest exponents
/// zero, so all entries become ordinary polynomials. Rank over the fraction
/// field is unchanged since monomials are units.
pub(crate) fn clear_row_denominators(m: &LaurentMatrix) -> Result<Vec<Vec<LaurentPoly>>, AlgebraError> {
    let mut rows = m.to_dense_rows();
    for row in &mut rows {
        let mins = row.iter().filter_map(LaurentPoly::min_exponents).reduce(|a, b| {
            a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect()
        });
        if let Some(mins) = mins {
            let shift: Vec<i64> = mins
                .iter()
                .map(|&k| k.checked_neg().ok_or(AlgebraError::ExponentOverflow))
                .collect::<Result<_, _>>()?;
            for p in row.iter_mut() {
                *p = p.shift(&shift)?;
            }
        }
    }
    Ok(rows)
}

/// Bound `D` on the total degree of any minor after clearing row
/// denominators: `min(rows, cols)` times the largest entry degree.
pub fn minor_degree_bound(m: &LaurentMatrix) -> Result<u64, AlgebraError> {
    let rows = clear_row_denominators(m)?;
    let max_deg = rows
        .iter()
        .flatten()
        .filter_map(LaurentPoly::total_degree)
        .max()
        .unwrap_or(0)
        .max(0) as u64;
    Ok(max_deg.saturating_mul(m.rows().min(m.cols()) as u64))
}

/// Rank of `m` over the field of fractions of the Laurent ring.
pub fn rank_generic(m: &LaurentMatrix, strategy: &RankStrategy) -> Result<RankOutcome, AlgebraError> {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return Ok(RankOutcome {
            rank: 0,
            failure_bound: match strategy {
                RankStrategy::Exact => None,
                RankStrategy::Randomized { .. } => Some(0.0),
            },
        });
    }
    match *strategy {
        RankStrategy::Exact => Ok(RankOutcome {
            rank: bareiss_rank(clear_row_denominators(m)?)?,
            failure_bound: None,
        }),
        RankStrategy::Randomized {
            trials,
            prime,
            seed,
        } => randomized_rank(m, trials, prime, seed),
    }
}

fn randomized_rank(m: &LaurentMatrix, trials: u32, prime: u64, seed: u64) -> Result<RankOutcome, AlgebraError> {
    validate_prime(prime)?;
    if trials == 0 {
        return Err(AlgebraError::Malformed("randomized rank needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = m.rows().min(m.cols());
    let mut best = 0;
    for _ in 0..trials {
        let point: Vec<u64> = (0..m.num_vars()).map(|_| rng.random_range(1..prime)).collect();
        let mut dense = vec![vec![0u64; m.cols()]; m.rows()];
        for (i, j, p) in m.nonzero_entries() {
            dense[i][j] = p.eval_mod(&point, prime)?;
        }
        best = best.max(rank_mod(dense, prime));
        if best == full {
            break;
        }
    }
    let degree = minor_degree_bound(m)?;
    let bound = (trials as f64 * degree as f64 / (prime - 1) as f64).min(1.0);
    Ok(RankOutcome {
        rank: best,
        failure_bound: Some(bound),
    })
}

/// Fraction-free Gaussian elimination. Every division below is exact in
/// `Q[x]` (Sylvester's identity), so no rational functions appear.
fn bareiss_rank(mut a: Vec<Vec<LaurentPoly>>) -> Result<usize, AlgebraError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let Some(nv) = a.first().and_then(|r| r.first()).map(LaurentPoly::num_vars) else {
        return Ok(0);
    };
    let mut prev = LaurentPoly::one(nv);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // first nonzero entry of the trailing block, scanning columns then rows
        let pivot = (k..cols).find_map(|j| (k..rows).find(|&i| !a[i][j].is_zero()).map(|i| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &a[k][k].try_mul(&a[i][j])? - &a[i][k].try_mul(&a[k][j])?;
                a[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    AlgebraError::Internal("fraction-free elimination hit an inexact division".into())
                })?;
            }
            a[i][k] = LaurentPoly::zero(nv);
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Exact rank of the rational matrix obtained by substituting `point`.
pub fn rank_at_point(m: &LaurentMatrix, point: &[Rational]) -> Result<usize, AlgebraError> {
    Ok(m.eval_rational(point)?.rank())
}
