//! Morse-Bott counting polynomials and the Novikov-type inequalities.
//!
//! For a closed 1-form whose zero set is a disjoint union of critical
//! submanifolds `Z`, the counting polynomial is
//! `M(λ) = Σ_Z λ^{ind Z} P_Z(λ)` where `P_Z` is the twisted Poincaré
//! polynomial of `Z`. The inequalities say that `M(λ) - N(λ)` is
//! `(1 + λ)Q(λ)` with `Q` having nonnegative integer coefficients, where
//! `N(λ) = Σ λ^i β_i` is the Novikov polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{IntPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("fiber dimension must be at least 1")]
    ZeroFiber,
    #[error("component {name:?}: P_Z(-1) = {value} is not divisible by the fiber dimension {fiber_dim}")]
    EulerNotDivisible { name: String, value: BigInt, fiber_dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalComponent {
    pub name: String,
    pub index: usize,
    /// `poincare_coeffs[i] = dim H^i(Z, F|_Z ⊗ o(Z))`.
    pub poincare_coeffs: Vec<u64>,
}

impl CriticalComponent {
    pub fn new(name: impl Into<String>, index: usize, poincare_coeffs: Vec<u64>) -> Self {
        CriticalComponent {
            name: name.into(),
            index,
            poincare_coeffs,
        }
    }

    /// A nondegenerate critical point of the given index with fiber `d`.
    pub fn point(name: impl Into<String>, index: usize, fiber_dim: usize) -> Self {
        Self::new(name, index, vec![fiber_dim as u64])
    }

    pub fn poincare_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_counts(&self.poincare_coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseData {
    components: Vec<CriticalComponent>,
    fiber_dim: usize,
}

impl MorseData {
    pub fn new(components: Vec<CriticalComponent>, fiber_dim: usize) -> Result<Self, MorseError> {
        if fiber_dim == 0 {
            return Err(MorseError::ZeroFiber);
        }
        Ok(MorseData { components, fiber_dim })
    }

    pub fn components(&self) -> &[CriticalComponent] {
        &self.components
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    /// Euler characteristic `χ(Z) = P_Z(-1) / d` of each component.
    pub fn component_euler_characteristics(&self) -> Result<Vec<BigInt>, MorseError> {
        let d = BigInt::from(self.fiber_dim);
        self.components
            .iter()
            .map(|z| {
                let value = z.poincare_polynomial().eval(&BigInt::from(-1));
                let (q, r) = value.div_rem(&d);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(MorseError::EulerNotDivisible {
                        name: z.name.clone(),
                        value,
                        fiber_dim: self.fiber_dim,
                    })
                }
            })
            .collect()
    }
}

/// `Σ_Z λ^{ind Z} P_Z(λ)`.
pub fn morse_polynomial(md: &MorseData) -> IntPolynomial {
    md.components
        .iter()
        .fold(IntPolynomial::zero(), |acc, z| {
            &acc + &z.poincare_polynomial().shift_degree(z.index)
        })
}

/// Counting polynomial for isolated critical points: `d · Σ m_p λ^p`.
pub fn isolated_morse_polynomial(m_counts: &[usize], fiber_dim: usize) -> IntPolynomial {
    IntPolynomial::new(
        m_counts
            .iter()
            .map(|&m| BigInt::from(m) * BigInt::from(fiber_dim))
            .collect(),
    )
}

/// `Σ λ^i β_i`.
pub fn novikov_polynomial(betti: &[usize]) -> IntPolynomial {
    IntPolynomial::new(betti.iter().map(|&b| BigInt::from(b)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCertificate {
    pub difference: IntPolynomial,
    pub quotient: IntPolynomial,
    #[serde(serialize_with = "serialize_bigint")]
    pub remainder: BigInt,
    pub holds: bool,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Divides `M - N` by `1 + λ`. The certificate holds when the division is
/// exact and every quotient coefficient is nonnegative.
pub fn check_main_theorem(morse: &IntPolynomial, novikov: &IntPolynomial) -> FactorizationCertificate {
    let difference = morse - novikov;
    let (quotient, remainder) = difference.divide_by_one_plus_lambda();
    let holds = remainder.is_zero() && quotient.all_nonnegative();
    FactorizationCertificate {
        difference,
        quotient,
        remainder,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongInequalityRow {
    pub degree: usize,
    /// `Σ_{i≤p} (-1)^i m_{p-i}`
    pub lhs: Rational,
    /// `d^{-1} Σ_{i≤p} (-1)^i β_{p-i}`
    pub rhs: Rational,
    pub holds: bool,
}

fn alternating_partial(seq: &[Rational], p: usize) -> Rational {
    (0..=p).fold(Rational::zero(), |acc, i| {
        let v = seq.get(p - i).cloned().unwrap_or_else(Rational::zero);
        if i % 2 == 0 {
            acc + v
        } else {
            acc - v
        }
    })
}

/// Exact comparison of the alternating partial sums in every degree up to
/// the longer of the two sequences. `m` may be rational so that Morse-Bott
/// data (`M_p / d`) fits the same table.
pub fn strong_inequality_table(m: &[Rational], betti: &[usize], fiber_dim: usize) -> Vec<StrongInequalityRow> {
    let d = Rational::from_integer(BigInt::from(fiber_dim));
    let beta: Vec<Rational> = betti.iter().map(|&b| Rational::from_integer(b.into())).collect();
    let len = m.len().max(beta.len());
    (0..len)
        .map(|p| {
            let lhs = alternating_partial(m, p);
            let rhs = alternating_partial(&beta, p) / &d;
            let holds = lhs >= rhs;
            StrongInequalityRow { degree: p, lhs, rhs, holds }
        })
        .collect()
}

/// `Σ_{i≤p} (-1)^i m_{p-i} ≥ d^{-1} Σ_{i≤p} (-1)^i β_{p-i}` for each `p`.
pub fn check_strong_inequalities(m_counts: &[usize], betti: &[usize], fiber_dim: usize) -> Vec<bool> {
    let m: Vec<Rational> = m_counts.iter().map(|&v| Rational::from_integer(v.into())).collect();
    strong_inequality_table(&m, betti, fiber_dim)
        .into_iter()
        .map(|row| row.holds)
        .collect()
}

/// `M(-1) == d·χ(M)`.
pub fn euler_poincare_check(md: &MorseData, chi_times_d: i64) -> bool {
    morse_polynomial(md).eval(&BigInt::from(-1)) == BigInt::from(chi_times_d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerPoincareReport {
    /// `M(-1)`
    #[serde(serialize_with = "serialize_bigint")]
    pub morse_at_minus_one: BigInt,
    /// `d · Σ_Z (-1)^{ind Z} χ(Z)`
    #[serde(serialize_with = "serialize_bigint")]
    pub component_sum_times_d: BigInt,
    /// `d · χ(M)` as supplied
    pub chi_times_d: i64,
    pub holds: bool,
}

/// Evaluates both sides of the Euler-Poincaré relation, recovering `χ(Z)`
/// from the twisted Poincaré polynomials.
pub fn euler_poincare_report(md: &MorseData, chi_times_d: i64) -> Result<EulerPoincareReport, MorseError> {
    let chis = md.component_euler_characteristics()?;
    let sum: BigInt = md
        .components
        .iter()
        .zip(&chis)
        .map(|(z, chi)| if z.index % 2 == 0 { chi.clone() } else { -chi })
        .sum();
    let at_minus_one = morse_polynomial(md).eval(&BigInt::from(-1));
    let component_sum_times_d = sum * BigInt::from(md.fiber_dim);
    let holds = at_minus_one == BigInt::from(chi_times_d) && component_sum_times_d == at_minus_one;
    Ok(EulerPoincareReport {
        morse_at_minus_one: at_minus_one,
        component_sum_times_d,
        chi_times_d,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> MorseData {
        MorseData::new(
            vec![CriticalComponent::point("min", 0, 1), CriticalComponent::point("max", 2, 1)],
            1,
        )
        .unwrap()
    }

    fn torus_bott() -> MorseData {
        MorseData::new(
            vec![
                CriticalComponent::new("bottom", 0, vec![1, 1]),
                CriticalComponent::new("top", 1, vec![1, 1]),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn morse_polynomials() {
        assert_eq!(morse_polynomial(&sphere()), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(morse_polynomial(&torus_bott()), IntPolynomial::from_i64(&[1, 2, 1]));
        // isolated points with d = 2
        let md = MorseData::new(
            vec![
                CriticalComponent::point("a", 0, 2),
                CriticalComponent::point("b", 1, 2),
                CriticalComponent::point("c", 1, 2),
            ],
            2,
        )
        .unwrap();
        assert_eq!(morse_polynomial(&md), isolated_morse_polynomial(&[1, 2], 2));
    }

    #[test]
    fn novikov_polynomials() {
        assert_eq!(novikov_polynomial(&[1, 2, 1]), IntPolynomial::from_i64(&[1, 2, 1]));
        assert!(novikov_polynomial(&[0, 0, 0]).is_zero());
    }

    #[test]
    fn main_theorem_examples() {
        let s = IntPolynomial::from_i64(&[1, 0, 1]);
        let c = check_main_theorem(&s, &s);
        assert!(c.holds && c.quotient.is_zero());

        let t = IntPolynomial::from_i64(&[1, 2, 1]);
        let c = check_main_theorem(&t, &t);
        assert!(c.holds && c.quotient.is_zero());

        let c = check_main_theorem(&t, &IntPolynomial::zero());
        assert!(c.holds);
        assert_eq!(c.quotient, IntPolynomial::from_i64(&[1, 1]));

        let c = check_main_theorem(&IntPolynomial::from_i64(&[1]), &IntPolynomial::from_i64(&[0, 1]));
        assert!(!c.holds);
        assert_eq!(c.remainder, BigInt::from(2));
    }

    #[test]
    fn strong_inequality_examples() {
        assert_eq!(check_strong_inequalities(&[1, 0, 1], &[1, 0, 1], 1), vec![true; 3]);
        assert_eq!(check_strong_inequalities(&[0, 1, 1], &[0, 0, 0], 1), vec![true; 3]);
        assert_eq!(
            check_strong_inequalities(&[0, 0, 1], &[0, 1, 0], 1),
            vec![true, false, true]
        );
        // d^{-1} is applied exactly: 1 ≥ 3/2 fails, 2 ≥ 3/2 holds
        assert_eq!(check_strong_inequalities(&[1], &[3], 2), vec![false]);
        assert_eq!(check_strong_inequalities(&[2], &[3], 2), vec![true]);
    }

    #[test]
    fn euler_poincare_examples() {
        assert!(euler_poincare_check(&sphere(), 2));
        assert!(euler_poincare_check(&torus_bott(), 0));
        assert!(!euler_poincare_check(&sphere(), 0));
        let r = euler_poincare_report(&torus_bott(), 0).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn nondivisible_component_euler_is_an_error() {
        let md = MorseData::new(vec![CriticalComponent::new("odd", 0, vec![1])], 2).unwrap();
        assert!(matches!(
            euler_poincare_report(&md, 1),
            Err(MorseError::EulerNotDivisible { .. })
        ));
        assert_eq!(MorseData::new(vec![], 0), Err(MorseError::ZeroFiber));
    }
}
