//! Multivariate Laurent polynomials over the rationals.
//!
//! A term is a rational coefficient times a monomial `x_1^{k_1} ... x_l^{k_l}`
//! whose exponents may be negative. Terms are kept in a `BTreeMap` keyed by the
//! exponent vector, so the representation is canonical (lexicographic order,
//! no stored zeros) and structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::{inv_mod, pow_mod, rational_mod};
use super::AlgebraError;

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

fn checked_add_exponents(a: &[i64], b: &[i64]) -> Result<Exponents, AlgebraError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(AlgebraError::ExponentOverflow))
        .collect()
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigRational::one())
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The variable `x_{index+1}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index {index} out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn monomial(coeff: BigRational, exponents: Exponents) -> Self {
        let num_vars = exponents.len();
        let mut p = Self::zero(num_vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(AlgebraError::VarCountMismatch {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&k| k == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial with the given exponents (zero if absent).
    pub fn coeff(&self, exponents: &[i64]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self, AlgebraError> {
        self.check_len(shift.len())?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((checked_add_exponents(e, shift)?, c.clone())))
            .collect::<Result<_, AlgebraError>>()?;
        Ok(LaurentPoly {
            num_vars: self.num_vars,
            terms,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_len(other.num_vars)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(checked_add_exponents(ea, eb)?, ca * cb);
            }
        }
        Ok(out)
    }

    fn check_len(&self, found: usize) -> Result<(), AlgebraError> {
        if found == self.num_vars {
            Ok(())
        } else {
            Err(AlgebraError::VarCountMismatch {
                expected: self.num_vars,
                found,
            })
        }
    }

    /// Componentwise minimum exponent over all terms; `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    /// Componentwise maximum exponent over all terms; `None` for zero.
    pub fn max_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()
        }))
    }

    /// Largest exponent sum over the terms (may be negative for Laurent
    /// polynomials); `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).max()
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    /// Exact division in `Q[x_1..x_l]` for polynomials with nonnegative
    /// exponents. Returns `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.num_vars, divisor.num_vars, "num_vars mismatch");
        let (lead_e, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        while let Some((e, c)) = rem.leading_term() {
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&k| k < 0) {
                return None;
            }
            let qc = c / lead_c;
            let step = Self::monomial(qc.clone(), qe.clone());
            rem = &rem - &step.try_mul(divisor).ok()?;
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Substitutes a rational point. Every coordinate must be nonzero since
    /// negative powers are allowed.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational, AlgebraError> {
        check_point(self.num_vars, point)?;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                let k = i32::try_from(k).map_err(|_| AlgebraError::ExponentOverflow)?;
                v *= num_traits::Pow::pow(x, k);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Evaluates modulo the prime `p` at a point of nonzero residues.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64, AlgebraError> {
        debug_assert_eq!(point.len(), self.num_vars);
        let inverses: Vec<u64> = point.iter().map(|&x| inv_mod(x, p)).collect();
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut v = rational_mod(c, p)?;
            for ((&x, &xi), &k) in point.iter().zip(&inverses).zip(e) {
                let f = if k >= 0 {
                    pow_mod(x, k as u64, p)
                } else {
                    pow_mod(xi, k.unsigned_abs(), p)
                };
                v = ((v as u128 * f as u128) % p as u128) as u64;
            }
            acc = (acc + v) % p;
        }
        Ok(acc)
    }

    /// Evaluates along the twisting curve `x_j = exp(-t a_j)`: the monomial
    /// `x^k` becomes `exp(-t <a, k>)`.
    pub fn eval_curve(&self, t: f64, periods: &[f64]) -> Result<f64, AlgebraError> {
        if periods.len() != self.num_vars {
            return Err(AlgebraError::VarCountMismatch {
                expected: self.num_vars,
                found: periods.len(),
            });
        }
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let pairing: f64 = periods.iter().zip(e).map(|(a, &k)| a * k as f64).sum();
            let m = (-t * pairing).exp();
            let c = c.to_f64().unwrap_or(f64::NAN);
            let v = c * m;
            if !m.is_finite() || !v.is_finite() {
                return Err(AlgebraError::Range { t });
            }
            acc += v;
        }
        if !acc.is_finite() {
            return Err(AlgebraError::Range { t });
        }
        Ok(acc)
    }
}

pub(crate) fn check_point(num_vars: usize, point: &[BigRational]) -> Result<(), AlgebraError> {
    if point.len() != num_vars {
        return Err(AlgebraError::PointLength {
            expected: num_vars,
            found: point.len(),
        });
    }
    if let Some(index) = point.iter().position(|x| x.is_zero()) {
        return Err(AlgebraError::ZeroCoordinate { index });
    }
    Ok(())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "num_vars mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "num_vars mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Panics on exponent overflow; use [`LaurentPoly::try_mul`] to recover.
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("exponent overflow in Laurent product")
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest term first, e.g. `x1^2 - x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, k)
                    }
                })
                .collect();
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
