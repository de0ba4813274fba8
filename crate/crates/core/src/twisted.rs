//! Twisted cochain complexes and their Novikov numbers.
//!
//! A [`TwistedComplex`] is a finite cochain complex whose coboundaries are
//! matrices over `Q[x_1^{±1}, .., x_l^{±1}]`. Each generator `g` of the
//! fundamental group acts on a cochain block through `x^{ξ(g)} φ(g)`, where
//! `φ(g)` is a rational `d x d` monodromy matrix and `ξ(g) ∈ Z^l` its period
//! vector. Substituting `x_j = exp(-t a_j)` gives the one-parameter family of
//! local systems; the Novikov numbers are the cohomology dimensions over the
//! fraction field, i.e. the values away from the finite jump set.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    format_rational, rank_at_point, rank_generic, AlgebraError, LaurentMatrix, LaurentPoly,
    RankStrategy, Rational, RationalMatrix,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwistedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("cochain rank {rank} in degree {degree} is not a multiple of the fiber dimension {fiber_dim}")]
    FiberDivisibility { degree: usize, rank: usize, fiber_dim: usize },
    #[error("D^{next}·D^{degree} != 0: entry ({row}, {col}) is {entry}", next = .degree + 1)]
    FlatnessViolation { degree: usize, row: usize, col: usize, entry: String },
    #[error("representation matrix of generator {generator:?} is not an invertible {fiber_dim}x{fiber_dim} matrix")]
    InvalidRepresentation { generator: String, fiber_dim: usize },
    #[error("dimension {dim} at probe {probe} in degree {degree} is below the background value {background}")]
    BelowBackground { probe: usize, degree: usize, dim: usize, background: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedComplex {
    fiber_dim: usize,
    num_vars: usize,
    cochain_ranks: Vec<usize>,
    coboundaries: Vec<LaurentMatrix>,
    period_basis: Vec<f64>,
}

impl TwistedComplex {
    /// Validates shapes, fiber divisibility and `D^{p+1} D^p = 0`.
    pub fn new(
        fiber_dim: usize,
        num_vars: usize,
        cochain_ranks: Vec<usize>,
        coboundaries: Vec<LaurentMatrix>,
        period_basis: Vec<f64>,
    ) -> Result<Self, TwistedError> {
        if fiber_dim == 0 {
            return Err(TwistedError::Malformed("fiber dimension must be at least 1".into()));
        }
        if cochain_ranks.is_empty() {
            return Err(TwistedError::Malformed("a complex needs at least degree 0".into()));
        }
        if coboundaries.len() + 1 != cochain_ranks.len() {
            return Err(TwistedError::Malformed(format!(
                "{} cochain groups need {} coboundaries, got {}",
                cochain_ranks.len(),
                cochain_ranks.len() - 1,
                coboundaries.len()
            )));
        }
        if !period_basis.is_empty() && period_basis.len() != num_vars {
            return Err(AlgebraError::VarCountMismatch {
                expected: num_vars,
                found: period_basis.len(),
            }
            .into());
        }
        for (degree, &rank) in cochain_ranks.iter().enumerate() {
            if rank % fiber_dim != 0 {
                return Err(TwistedError::FiberDivisibility { degree, rank, fiber_dim });
            }
        }
        for (p, d) in coboundaries.iter().enumerate() {
            if d.rows() != cochain_ranks[p + 1] || d.cols() != cochain_ranks[p] {
                return Err(TwistedError::Malformed(format!(
                    "D^{p} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    cochain_ranks[p + 1],
                    cochain_ranks[p]
                )));
            }
            if d.num_vars() != num_vars {
                return Err(AlgebraError::VarCountMismatch {
                    expected: num_vars,
                    found: d.num_vars(),
                }
                .into());
            }
        }
        for (p, pair) in coboundaries.windows(2).enumerate() {
            let comp = pair[1].try_mul(&pair[0])?;
            let first = comp
                .nonzero_entries()
                .next()
                .map(|(row, col, entry)| (row, col, entry.to_string()));
            if let Some((row, col, entry)) = first {
                return Err(TwistedError::FlatnessViolation { degree: p, row, col, entry });
            }
        }
        Ok(TwistedComplex {
            fiber_dim,
            num_vars,
            cochain_ranks,
            coboundaries,
            period_basis,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.cochain_ranks.len() - 1
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn cochain_ranks(&self) -> &[usize] {
        &self.cochain_ranks
    }

    pub fn coboundaries(&self) -> &[LaurentMatrix] {
        &self.coboundaries
    }

    pub fn coboundary(&self, p: usize) -> &LaurentMatrix {
        &self.coboundaries[p]
    }

    pub fn period_basis(&self) -> &[f64] {
        &self.period_basis
    }

    /// Number of cells in each degree (`c_p / d`).
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cochain_ranks.iter().map(|c| c / self.fiber_dim).collect()
    }

    /// True when some coboundary entry involves a nonconstant monomial.
    pub fn is_twisted(&self) -> bool {
        self.coboundaries.iter().any(|d| {
            d.nonzero_entries()
                .any(|(_, _, p)| p.terms().any(|(e, _)| e.iter().any(|&k| k != 0)))
        })
    }
}

/// A generator of the fundamental group with its monodromy data.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// `φ(g)`, an invertible `d x d` rational matrix.
    pub matrix: RationalMatrix,
    /// `ξ(g)` expressed in the lattice `Z^l`.
    pub exponents: Vec<i64>,
}

/// `(generator index, power)` letters, read left to right.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct IncidenceTerm {
    pub coeff: Rational,
    pub word: Word,
}

/// Block `(cell, face)` of the coboundary `D^degree`: `cell` is a
/// `(degree+1)`-cell, `face` a `degree`-cell. The block is
/// `Σ coeff · φ(word) · x^{ξ(word)}`.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub degree: usize,
    pub cell: usize,
    pub face: usize,
    pub terms: Vec<IncidenceTerm>,
}

#[derive(Clone, Debug)]
pub struct CellularData {
    pub fiber_dim: usize,
    pub num_vars: usize,
    pub cell_counts: Vec<usize>,
    pub generators: Vec<Generator>,
    pub incidences: Vec<Incidence>,
    pub period_basis: Vec<f64>,
}

struct EvaluatedGenerator {
    matrix: RationalMatrix,
    inverse: RationalMatrix,
    exponents: Vec<i64>,
}

fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let columns: Option<Vec<Vec<Rational>>> = (0..n)
        .map(|j| {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            m.solve(&e)
        })
        .collect();
    let inv = RationalMatrix::from_columns(n, &columns?);
    (m.rank() == n).then_some(inv)
}

/// Assembles a twisted complex from group-ring incidence data and checks
/// that it squares to zero.
pub fn build_complex(data: &CellularData) -> Result<TwistedComplex, TwistedError> {
    let d = data.fiber_dim;
    let nv = data.num_vars;
    if d == 0 {
        return Err(TwistedError::Malformed("fiber dimension must be at least 1".into()));
    }
    let gens = data
        .generators
        .iter()
        .map(|g| {
            if g.exponents.len() != nv {
                return Err(TwistedError::Algebra(AlgebraError::VarCountMismatch {
                    expected: nv,
                    found: g.exponents.len(),
                }));
            }
            let bad = || TwistedError::InvalidRepresentation {
                generator: g.name.clone(),
                fiber_dim: d,
            };
            if g.matrix.rows() != d || g.matrix.cols() != d {
                return Err(bad());
            }
            let inverse = invert(&g.matrix).ok_or_else(bad)?;
            Ok(EvaluatedGenerator {
                matrix: g.matrix.clone(),
                inverse,
                exponents: g.exponents.clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let n = data.cell_counts.len();
    if n == 0 {
        return Err(TwistedError::Malformed("no cells".into()));
    }
    let ranks: Vec<usize> = data.cell_counts.iter().map(|c| c * d).collect();
    let mut blocks: Vec<Vec<(usize, usize, LaurentPoly)>> = vec![Vec::new(); n - 1];
    for inc in &data.incidences {
        if inc.degree + 1 >= n {
            return Err(TwistedError::Malformed(format!(
                "incidence in degree {} but the top degree is {}",
                inc.degree,
                n - 1
            )));
        }
        if inc.cell >= data.cell_counts[inc.degree + 1] || inc.face >= data.cell_counts[inc.degree] {
            return Err(TwistedError::Malformed(format!(
                "incidence (cell {}, face {}) in degree {} refers to a missing cell",
                inc.cell, inc.face, inc.degree
            )));
        }
        for term in &inc.terms {
            let mut mat = RationalMatrix::identity(d);
            let mut exps = vec![0i64; nv];
            for &(g, power) in &term.word {
                let gen = gens.get(g).ok_or_else(|| {
                    TwistedError::Malformed(format!("word refers to unknown generator #{g}"))
                })?;
                let factor = if power >= 0 { &gen.matrix } else { &gen.inverse };
                for _ in 0..power.unsigned_abs() {
                    mat = mat.mul(factor)?;
                }
                for (e, &k) in exps.iter_mut().zip(&gen.exponents) {
                    *e = k
                        .checked_mul(power)
                        .and_then(|v| e.checked_add(v))
                        .ok_or(AlgebraError::ExponentOverflow)?;
                }
            }
            for i in 0..d {
                for j in 0..d {
                    let c = &term.coeff * &mat[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    blocks[inc.degree].push((
                        inc.cell * d + i,
                        inc.face * d + j,
                        LaurentPoly::monomial(c, exps.clone()),
                    ));
                }
            }
        }
    }
    let coboundaries = blocks
        .into_iter()
        .enumerate()
        .map(|(p, entries)| LaurentMatrix::from_entries(ranks[p + 1], ranks[p], nv, entries))
        .collect::<Result<Vec<_>, _>>()?;
    TwistedComplex::new(d, nv, ranks, coboundaries, data.period_basis.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NovikovNumbers {
    pub betti: Vec<usize>,
    /// Generic rank of each coboundary `D^p`.
    pub ranks: Vec<usize>,
    /// Union bound over all randomized rank computations; `None` if exact.
    pub failure_bound: Option<f64>,
}

/// Seed used for the rank of `D^p`, so each degree draws from its own
/// stream regardless of evaluation order.
pub fn degree_seed(base: u64, p: usize) -> u64 {
    base ^ (p as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn betti_from_ranks(cochain_ranks: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..cochain_ranks.len())
        .map(|p| {
            let out = ranks.get(p).copied().unwrap_or(0);
            let inc = if p == 0 { 0 } else { ranks[p - 1] };
            cochain_ranks[p] - out - inc
        })
        .collect()
}

/// `β_p = c_p - rank D^p - rank D^{p-1}` with generic ranks.
pub fn novikov_numbers(c: &TwistedComplex, strategy: &RankStrategy) -> Result<NovikovNumbers, TwistedError> {
    let mut ranks = Vec::with_capacity(c.coboundaries.len());
    let mut bound: Option<f64> = None;
    for (p, d) in c.coboundaries.iter().enumerate() {
        let seed = match strategy {
            RankStrategy::Randomized { seed, .. } => degree_seed(*seed, p),
            RankStrategy::Exact => 0,
        };
        let out = rank_generic(d, &strategy.reseeded(seed))?;
        ranks.push(out.rank);
        if let Some(b) = out.failure_bound {
            bound = Some((bound.unwrap_or(0.0) + b).min(1.0));
        }
    }
    if matches!(strategy, RankStrategy::Randomized { .. }) && bound.is_none() {
        bound = Some(0.0);
    }
    Ok(NovikovNumbers {
        betti: betti_from_ranks(&c.cochain_ranks, &ranks),
        ranks,
        failure_bound: bound,
    })
}

/// Cohomology dimensions of the complex specialised at a point of `(Q^*)^l`.
pub fn dimensions_at(c: &TwistedComplex, point: &[Rational]) -> Result<Vec<usize>, TwistedError> {
    crate::algebra::check_point(c.num_vars, point)?;
    let ranks = c
        .coboundaries
        .iter()
        .map(|d| rank_at_point(d, point))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(betti_from_ranks(&c.cochain_ranks, &ranks))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<Rational>,
    pub dims: Vec<usize>,
    pub is_jump: Vec<bool>,
}

impl Probe {
    pub fn any_jump(&self) -> bool {
        self.is_jump.iter().any(|&j| j)
    }
}

pub(crate) fn serialize_point<S: serde::Serializer>(p: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(format_rational))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JumpScanReport {
    pub background: Vec<usize>,
    pub failure_bound: Option<f64>,
    pub probes: Vec<Probe>,
}

/// Compares the cohomology at each probe against the background values.
pub fn jump_scan(
    c: &TwistedComplex,
    probes: &[Vec<Rational>],
    strategy: &RankStrategy,
) -> Result<JumpScanReport, TwistedError> {
    let nov = novikov_numbers(c, strategy)?;
    let mut out = Vec::with_capacity(probes.len());
    for (k, point) in probes.iter().enumerate() {
        let dims = dimensions_at(c, point)?;
        for (degree, (&dim, &background)) in dims.iter().zip(&nov.betti).enumerate() {
            if dim < background {
                return Err(TwistedError::BelowBackground { probe: k, degree, dim, background });
            }
        }
        let is_jump = dims.iter().zip(&nov.betti).map(|(a, b)| a > b).collect();
        out.push(Probe {
            point: point.clone(),
            dims,
            is_jump,
        });
    }
    Ok(JumpScanReport {
        background: nov.betti,
        failure_bound: nov.failure_bound,
        probes: out,
    })
}

/// `Σ (-1)^p c_p`, which equals `d·χ(M)` for any twisting.
pub fn euler_characteristic(c: &TwistedComplex) -> i64 {
    c.cochain_ranks
        .iter()
        .enumerate()
        .map(|(p, &r)| if p % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum()
}

/// Alternating sum `Σ (-1)^p β_p`.
pub fn alternating_sum(betti: &[usize]) -> i64 {
    betti
        .iter()
        .enumerate()
        .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}
