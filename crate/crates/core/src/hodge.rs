//! Numeric deformed Laplacians along the exponential curve.
//!
//! A [`TwistedComplex`] with a period basis `a` is evaluated at
//! `x_j = exp(-s a_j)`, `s = t·α`, giving a real cochain complex. Its
//! Laplacian `Δ^p = D^{p*}D^p + D^{p-1}D^{p-1*}` is symmetric with respect
//! to diagonal weight inner products, and by finite-dimensional Hodge theory
//! `dim ker Δ^p` is the cohomology dimension at that parameter. The module
//! also carries matrix-level checks of the IMS localization identity and of
//! the rank-perturbation bound `N(μ - ε, A) ≤ rank B`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, RankStrategy, Rational};
use crate::twisted::{dimensions_at, novikov_numbers, TwistedComplex, TwistedError};

pub const DEFAULT_EPSILON: f64 = 1e-8;
/// The next eigenvalue above the kernel must be at least this multiple of `ε`.
pub const SEPARATION_FACTOR: f64 = 10.0;
const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HodgeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error("the complex has no period basis; cannot evaluate along the curve")]
    MissingPeriods,
    #[error("degree {degree} is out of range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("malformed numeric complex: {0}")]
    Malformed(String),
    #[error("weights in degree {degree} must be finite and strictly positive")]
    InvalidWeights { degree: usize },
    #[error("Laplacian in degree {degree} is not symmetric: residual {residual:e}")]
    Asymmetric { degree: usize, residual: f64 },
    #[error("cutoff entry {index} is {value}, outside [0, 1]")]
    InvalidCutoff { index: usize, value: f64 },
}

/// A real cochain complex with optional diagonal inner products.
#[derive(Clone, Debug)]
pub struct NumericComplex {
    coboundaries: Vec<DMatrix<f64>>,
    cochain_ranks: Vec<usize>,
    weights: Vec<DVector<f64>>,
}

impl NumericComplex {
    /// Unit weights in every degree.
    pub fn new(cochain_ranks: Vec<usize>, coboundaries: Vec<DMatrix<f64>>) -> Result<Self, HodgeError> {
        let weights = cochain_ranks.iter().map(|&c| DVector::from_element(c, 1.0)).collect();
        Self::with_weights(cochain_ranks, coboundaries, weights)
    }

    pub fn with_weights(
        cochain_ranks: Vec<usize>,
        coboundaries: Vec<DMatrix<f64>>,
        weights: Vec<DVector<f64>>,
    ) -> Result<Self, HodgeError> {
        if cochain_ranks.is_empty() || coboundaries.len() + 1 != cochain_ranks.len() {
            return Err(HodgeError::Malformed(format!(
                "{} cochain groups with {} coboundaries",
                cochain_ranks.len(),
                coboundaries.len()
            )));
        }
        for (p, d) in coboundaries.iter().enumerate() {
            if d.nrows() != cochain_ranks[p + 1] || d.ncols() != cochain_ranks[p] {
                return Err(HodgeError::Malformed(format!(
                    "D^{p} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    cochain_ranks[p + 1],
                    cochain_ranks[p]
                )));
            }
        }
        if weights.len() != cochain_ranks.len() {
            return Err(HodgeError::Malformed("one weight vector per degree is required".into()));
        }
        for (p, w) in weights.iter().enumerate() {
            if w.len() != cochain_ranks[p] || w.iter().any(|&v| !v.is_finite() || v <= 0.0) {
                return Err(HodgeError::InvalidWeights { degree: p });
            }
        }
        Ok(NumericComplex {
            coboundaries,
            cochain_ranks,
            weights,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.cochain_ranks.len() - 1
    }

    pub fn cochain_ranks(&self) -> &[usize] {
        &self.cochain_ranks
    }

    pub fn coboundary(&self, p: usize) -> &DMatrix<f64> {
        &self.coboundaries[p]
    }

    pub fn weights(&self, p: usize) -> &DVector<f64> {
        &self.weights[p]
    }

    /// Largest `‖D^{p+1} D^p‖` (operator norm) over all degrees.
    pub fn flatness_defect(&self) -> f64 {
        self.coboundaries
            .windows(2)
            .map(|w| operator_norm(&(&w[1] * &w[0])))
            .fold(0.0, f64::max)
    }

    /// `W_{p+1}^{1/2} D^p W_p^{-1/2}`: the coboundary in orthonormal
    /// coordinates, so that its transpose is the weighted adjoint.
    pub fn normalized_coboundary(&self, p: usize) -> DMatrix<f64> {
        let mut d = self.coboundaries[p].clone();
        let (src, dst) = (&self.weights[p], &self.weights[p + 1]);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                d[(i, j)] *= dst[i].sqrt() / src[j].sqrt();
            }
        }
        d
    }

    /// Symmetric form of `Δ^p`.
    pub fn laplacian(&self, p: usize) -> Result<DMatrix<f64>, HodgeError> {
        if p > self.top_degree() {
            return Err(HodgeError::DegreeOutOfRange {
                degree: p,
                top: self.top_degree(),
            });
        }
        let n = self.cochain_ranks[p];
        let mut lap = DMatrix::zeros(n, n);
        if p < self.top_degree() {
            let d = self.normalized_coboundary(p);
            lap += d.transpose() * &d;
        }
        if p > 0 {
            let d = self.normalized_coboundary(p - 1);
            lap += &d * d.transpose();
        }
        Ok(lap)
    }
}

/// Spectral norm via singular values; 0 for empty matrices.
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Evaluates `c` at `x_j = exp(-s a_j)` with `s = t·α`.
pub fn evaluate_complex(c: &TwistedComplex, t: f64, alpha: f64) -> Result<NumericComplex, HodgeError> {
    evaluate_at(c, t * alpha)
}

pub fn evaluate_at(c: &TwistedComplex, s: f64) -> Result<NumericComplex, HodgeError> {
    if c.period_basis().is_empty() && c.num_vars() > 0 {
        return Err(HodgeError::MissingPeriods);
    }
    let coboundaries = c
        .coboundaries()
        .iter()
        .map(|d| d.eval_curve(s, c.period_basis()))
        .collect::<Result<Vec<_>, _>>()?;
    NumericComplex::new(c.cochain_ranks().to_vec(), coboundaries)
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Ascending eigenvalues of `Δ^p`.
pub fn laplacian_spectrum(nc: &NumericComplex, p: usize) -> Result<Vec<f64>, HodgeError> {
    let lap = nc.laplacian(p)?;
    let residual = operator_norm(&(&lap - lap.transpose()));
    if residual > SYMMETRY_TOLERANCE * (1.0 + operator_norm(&lap)) {
        return Err(HodgeError::Asymmetric { degree: p, residual });
    }
    Ok(sorted_eigenvalues(lap))
}

/// `N(λ, A)`: eigenvalues not exceeding `λ`, with multiplicity.
pub fn counting_function(eigenvalues: &[f64], lambda: f64) -> usize {
    eigenvalues.iter().filter(|&&v| v <= lambda).count()
}

/// Kernel dimension under `ε`, or `None` when some eigenvalue falls in the
/// ambiguous window `(ε, 10ε)`.
pub fn separated_kernel_dim(eigenvalues: &[f64], epsilon: f64) -> Option<usize> {
    let k = counting_function(eigenvalues, epsilon);
    match eigenvalues.iter().copied().filter(|&v| v > epsilon).reduce(f64::min) {
        Some(next) if next < SEPARATION_FACTOR * epsilon => None,
        _ => Some(k),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSpectrum {
    pub degree: usize,
    pub eigenvalues: Vec<f64>,
    /// `None` when the spectrum is not separated at `ε`.
    pub kernel_dim: Option<usize>,
}

impl DegreeSpectrum {
    pub fn count_up_to(&self, lambda: f64) -> usize {
        counting_function(&self.eigenvalues, lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub t: f64,
    pub alpha: f64,
    pub s: f64,
    pub periods: Vec<f64>,
    pub epsilon: f64,
    pub flatness_defect: f64,
    pub degrees: Vec<DegreeSpectrum>,
}

impl SpectrumReport {
    pub fn kernel_dims(&self) -> Vec<Option<usize>> {
        self.degrees.iter().map(|d| d.kernel_dim).collect()
    }
}

pub fn spectrum_report(c: &TwistedComplex, t: f64, alpha: f64, epsilon: f64) -> Result<SpectrumReport, HodgeError> {
    let nc = evaluate_complex(c, t, alpha)?;
    let degrees = (0..=nc.top_degree())
        .map(|p| {
            let eigenvalues = laplacian_spectrum(&nc, p)?;
            let kernel_dim = separated_kernel_dim(&eigenvalues, epsilon);
            Ok(DegreeSpectrum {
                degree: p,
                eigenvalues,
                kernel_dim,
            })
        })
        .collect::<Result<Vec<_>, HodgeError>>()?;
    Ok(SpectrumReport {
        t,
        alpha,
        s: t * alpha,
        periods: c.period_basis().to_vec(),
        epsilon,
        flatness_defect: nc.flatness_defect(),
        degrees,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelStatus {
    /// Numeric kernel equals the generic Betti number.
    Match,
    /// At the untwisted point the kernel exceeds the background and equals
    /// the exact dimension there.
    Jump,
    Mismatch,
    /// The spectrum is not separated at `ε`.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelComparison {
    pub s: f64,
    pub degree: usize,
    pub numeric: Option<usize>,
    pub generic: usize,
    /// Exact dimension at the evaluation point when it is rational (`s·a = 0`).
    pub exact_at_point: Option<usize>,
    pub status: KernelStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelTable {
    pub betti: Vec<usize>,
    pub failure_bound: Option<f64>,
    pub epsilon: f64,
    pub rows: Vec<KernelComparison>,
}

impl KernelTable {
    pub fn inconclusive(&self) -> usize {
        self.rows.iter().filter(|r| r.status == KernelStatus::Inconclusive).count()
    }

    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.status == KernelStatus::Mismatch).count()
    }
}

/// Compares `dim ker Δ^p` at each `s` with the Novikov numbers of `c`.
pub fn kernel_vs_exact(
    c: &TwistedComplex,
    s_values: &[f64],
    epsilon: f64,
    strategy: &RankStrategy,
) -> Result<KernelTable, HodgeError> {
    let novikov = novikov_numbers(c, strategy)?;
    let mut rows = Vec::new();
    for &s in s_values {
        let report = spectrum_report(c, s, 1.0, epsilon)?;
        let untwisted = c.period_basis().iter().all(|&a| s * a == 0.0);
        let at_point = if untwisted {
            Some(dimensions_at(c, &vec![Rational::one(); c.num_vars()])?)
        } else {
            None
        };
        for spec in &report.degrees {
            let p = spec.degree;
            let generic = novikov.betti[p];
            let exact_at_point = at_point.as_ref().map(|d| d[p]);
            let status = match (spec.kernel_dim, exact_at_point) {
                (None, _) => KernelStatus::Inconclusive,
                (Some(k), _) if k == generic => KernelStatus::Match,
                (Some(k), Some(e)) if k == e && e > generic => KernelStatus::Jump,
                _ => KernelStatus::Mismatch,
            };
            rows.push(KernelComparison {
                s,
                degree: p,
                numeric: spec.kernel_dim,
                generic,
                exact_at_point,
                status,
            });
        }
    }
    Ok(KernelTable {
        betti: novikov.betti,
        failure_bound: novikov.failure_bound,
        epsilon,
        rows,
    })
}

/// Number of singular values of `D` with `σ² > ε`, the threshold matching
/// the Laplacian kernel count.
pub fn numeric_rank(m: &DMatrix<f64>, epsilon: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    m.singular_values().iter().filter(|&&v| v * v > epsilon).count()
}

fn check_cutoff(j: &[f64]) -> Result<(), HodgeError> {
    match j.iter().position(|v| !(0.0..=1.0).contains(v)) {
        Some(index) => Err(HodgeError::InvalidCutoff { index, value: j[index] }),
        None => Ok(()),
    }
}

/// `‖H - (J̄HJ̄ + JHJ + ½[J̄,[J̄,H]] + ½[J,[J,H]])‖` with `J = diag(j)` and
/// `J̄ = diag(√(1 - j²))`.
pub fn ims_identity_residual(h: &DMatrix<f64>, j: &[f64]) -> Result<f64, HodgeError> {
    if !h.is_square() || h.nrows() != j.len() {
        return Err(HodgeError::Malformed(format!(
            "H is {}x{} but the cutoff has {} entries",
            h.nrows(),
            h.ncols(),
            j.len()
        )));
    }
    check_cutoff(j)?;
    let jm = DMatrix::from_diagonal(&DVector::from_column_slice(j));
    let jbar = DMatrix::from_diagonal(&DVector::from_iterator(j.len(), j.iter().map(|v| (1.0 - v * v).sqrt())));
    let comm = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
    let rhs = &jbar * h * &jbar + &jm * h * &jm + comm(&jbar, &comm(&jbar, h)) * 0.5 + comm(&jm, &comm(&jm, h)) * 0.5;
    Ok(operator_norm(&(h - rhs)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankPerturbationReport {
    /// `λ_min(A + B)`
    pub min_sum_eigenvalue: f64,
    pub hypothesis_met: bool,
    /// `N(μ - ε, A)`
    pub count: usize,
    pub rank_b: usize,
    pub bound_holds: bool,
}

/// Checks `N(μ - ε, A) ≤ rank B` under the hypothesis `A + B ≥ μ`. When the
/// hypothesis fails the report says so and `bound_holds` is not asserted.
pub fn rank_perturbation_check(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    mu: f64,
    epsilon: f64,
) -> Result<RankPerturbationReport, HodgeError> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(HodgeError::Malformed("A and B must be square of the same size".into()));
    }
    let min_sum_eigenvalue = sorted_eigenvalues(a + b).first().copied().unwrap_or(f64::INFINITY);
    let b_values = sorted_eigenvalues(b.clone());
    let scale = b_values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let rank_b = b_values.iter().filter(|v| v.abs() > 1e-9 * scale).count();
    let count = counting_function(&sorted_eigenvalues(a.clone()), mu - epsilon);
    let hypothesis_met = min_sum_eigenvalue >= mu - 1e-9 * (1.0 + mu.abs());
    Ok(RankPerturbationReport {
        min_sum_eigenvalue,
        hypothesis_met,
        count,
        rank_b,
        bound_holds: hypothesis_met && count <= rank_b,
    })
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    m.qr().q()
}

/// A seeded instance `(A, B, μ)` with `A = Q diag(a) Qᵀ` having `rank`
/// eigenvalues below `μ`, and `B` of that rank lifting them to at least
/// `μ + margin`. A negative `margin` breaks the hypothesis on purpose.
pub fn planted_instance(seed: u64, n: usize, rank: usize, mu: f64, margin: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_orthogonal(&mut rng, n);
    let mut a = DVector::zeros(n);
    let mut b = DVector::zeros(n);
    for i in 0..n {
        if i < rank {
            a[i] = rng.random_range(0.0..mu);
            b[i] = mu - a[i] + margin;
        } else {
            a[i] = mu + rng.random_range(0.0..2.0);
        }
    }
    let conj = |d: &DVector<f64>| &q * DMatrix::from_diagonal(d) * q.transpose();
    let sym = |m: DMatrix<f64>| (&m + m.transpose()) * 0.5;
    (sym(conj(&a)), sym(conj(&b)))
}

/// A seeded symmetric matrix with entries in `[-1, 1]` and a cutoff vector
/// with entries in `[0, 1]`.
pub fn random_ims_instance(seed: u64, n: usize) -> (DMatrix<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let h = (&m + m.transpose()) * 0.5;
    let j = (0..n).map(|_| rng.random_range(0.0..=1.0)).collect();
    (h, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational, LaurentMatrix, LaurentPoly};

    fn twisted_circle() -> TwistedComplex {
        let d = &LaurentPoly::var(1, 0) - &LaurentPoly::one(1);
        let d0 = LaurentMatrix::from_rows(1, vec![vec![d]]).unwrap();
        TwistedComplex::new(1, 1, vec![1, 1], vec![d0], vec![1.0]).unwrap()
    }

    fn three_cycle() -> NumericComplex {
        let d = DMatrix::from_row_slice(3, 3, &[-1.0, 1.0, 0.0, 0.0, -1.0, 1.0, 1.0, 0.0, -1.0]);
        NumericComplex::new(vec![3, 3], vec![d]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let c = twisted_circle();
        assert_eq!(evaluate_at(&c, 0.0).unwrap().coboundary(0)[(0, 0)], 0.0);
        let v = evaluate_complex(&c, 2f64.ln(), 1.0).unwrap().coboundary(0)[(0, 0)];
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn missing_periods() {
        let d = &LaurentPoly::var(1, 0) - &LaurentPoly::one(1);
        let d0 = LaurentMatrix::from_rows(1, vec![vec![d]]).unwrap();
        let c = TwistedComplex::new(1, 1, vec![1, 1], vec![d0], vec![]).unwrap();
        assert_eq!(evaluate_at(&c, 1.0).unwrap_err(), HodgeError::MissingPeriods);
    }

    #[test]
    fn three_cycle_spectrum() {
        let values = laplacian_spectrum(&three_cycle(), 0).unwrap();
        for (v, e) in values.iter().zip([0.0, 3.0, 3.0]) {
            assert!((v - e).abs() < 1e-8);
        }
        assert_eq!(counting_function(&values, 1.0), 1);
        assert_eq!(counting_function(&values, 3.0 + 1e-12), 3);
        assert_eq!(separated_kernel_dim(&values, DEFAULT_EPSILON), Some(1));
    }

    #[test]
    fn twisted_circle_gap() {
        let nc = evaluate_at(&twisted_circle(), 2f64.ln()).unwrap();
        let values = laplacian_spectrum(&nc, 0).unwrap();
        assert_eq!(counting_function(&values, 0.2), 0);
        assert!((values[0] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn weights_preserve_kernel() {
        let d = three_cycle().coboundary(0).clone();
        let w0 = DVector::from_vec(vec![1.0, 2.0, 0.5]);
        let w1 = DVector::from_vec(vec![3.0, 1.0, 0.25]);
        let nc = NumericComplex::with_weights(vec![3, 3], vec![d], vec![w0, w1]).unwrap();
        for p in 0..2 {
            let values = laplacian_spectrum(&nc, p).unwrap();
            assert_eq!(separated_kernel_dim(&values, DEFAULT_EPSILON), Some(1));
        }
        let bad = NumericComplex::with_weights(
            vec![1],
            vec![],
            vec![DVector::from_vec(vec![0.0])],
        );
        assert_eq!(bad.unwrap_err(), HodgeError::InvalidWeights { degree: 0 });
    }

    #[test]
    fn kernel_table_circle() {
        let c = twisted_circle();
        let table = kernel_vs_exact(&c, &[0.5, 1.0, 2.0], DEFAULT_EPSILON, &RankStrategy::Exact).unwrap();
        assert!(table.rows.iter().all(|r| r.status == KernelStatus::Match && r.numeric == Some(0)));
        let table = kernel_vs_exact(&c, &[0.0], DEFAULT_EPSILON, &RankStrategy::Exact).unwrap();
        assert!(table.rows.iter().all(|r| r.status == KernelStatus::Jump && r.numeric == Some(1)));
    }

    #[test]
    fn unseparated_is_inconclusive() {
        assert_eq!(separated_kernel_dim(&[0.0, 5e-8], 1e-8), None);
        assert_eq!(separated_kernel_dim(&[0.0, 1e-7], 1e-8), Some(1));
        // s small enough that (e^{-s} - 1)^2 sits in the window
        let c = twisted_circle();
        let table = kernel_vs_exact(&c, &[2e-4], DEFAULT_EPSILON, &RankStrategy::Exact).unwrap();
        assert!(table.rows.iter().all(|r| r.status == KernelStatus::Inconclusive));
        assert_eq!(table.inconclusive(), 2);
    }

    #[test]
    fn ims_examples() {
        let (h, j) = random_ims_instance(7, 8);
        assert!(ims_identity_residual(&h, &j).unwrap() < 1e-10);
        assert!(ims_identity_residual(&h, &[1.0; 8]).unwrap() < 1e-14);
        let half = vec![0.5f64.sqrt(); 8];
        assert!(ims_identity_residual(&h, &half).unwrap() < 1e-14);
        let mut bad = j.clone();
        bad[3] = 1.5;
        assert_eq!(
            ims_identity_residual(&h, &bad).unwrap_err(),
            HodgeError::InvalidCutoff { index: 3, value: 1.5 }
        );
    }

    #[test]
    fn rank_perturbation_examples() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 5.0]));
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 0.0]));
        let r = rank_perturbation_check(&a, &b, 3.0, 1e-9).unwrap();
        assert!(r.hypothesis_met && r.bound_holds);
        assert_eq!((r.count, r.rank_b), (1, 1));

        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 5.0]));
        let r = rank_perturbation_check(&a, &DMatrix::zeros(2, 2), 3.0, 1e-9).unwrap();
        assert_eq!((r.count, r.rank_b), (0, 0));
        assert!(r.bound_holds);

        let (a, b) = planted_instance(3, 6, 2, 1.0, -0.5);
        let r = rank_perturbation_check(&a, &b, 1.0, 1e-9).unwrap();
        assert!(!r.hypothesis_met && !r.bound_holds);
    }

    #[test]
    fn exact_point_uses_ones() {
        let c = twisted_circle();
        assert_eq!(dimensions_at(&c, &[rational(1)]).unwrap(), vec![1, 1]);
    }
}
