//! Prime-field arithmetic used by the randomized rank engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::AlgebraError;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime (Fermat).
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational number in `F_p`; fails when `p` divides the denominator.
pub(crate) fn rational_mod(c: &BigRational, p: u64) -> Result<u64, AlgebraError> {
    let den = bigint_mod(c.denom(), p);
    if den == 0 {
        return Err(AlgebraError::DenominatorDivisible { prime: p });
    }
    Ok(mul_mod(bigint_mod(c.numer(), p), inv_mod(den, p), p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Rank of a dense `rows x cols` matrix over `F_p` by Gaussian elimination.
pub(crate) fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        for c in col..cols {
            m[rank][c] = mul_mod(m[rank][c], inv, p);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in col..cols {
                    let sub = mul_mod(f, m[rank][c], p);
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
