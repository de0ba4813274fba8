//! Spectral sequence of a one-parameter deformation of differentials.
//!
//! A [`DeformationFamily`] is a truncated power series
//! `D(t) = Σ_{k ≤ K} (t - t0)^k D_k` of coboundaries. Writing `s = t - t0`,
//!
//! * `Z^p_r` is the space of polynomial cochains `f_0 + s f_1 + .. + s^{r-1} f_{r-1}`
//!   with `D(s) f(s) ≡ 0 (mod s^r)`;
//! * `E^p_r = Z^p_r / (s Z^p_{r-1} + s^{1-r} D(s) Z^{p-1}_{r-1})`;
//! * `d_r` is induced by `s^{-r} D(s)`.
//!
//! Since `s Z_{r-1}` is exactly the kernel of `f ↦ f_0` on `Z_r`, the page is
//! computed on leading coefficients: `E_r ≅ Z_r^{(0)} / B_r^{(0)}` where
//! `Z_r^{(0)}` are the `f_0` admitting a lift and `B_r^{(0)}` are the
//! `s^{r-1}`-coefficients of `D(s) h` over all `h` with
//! `D(s) h ≡ 0 (mod s^{r-1})`. Complements are chosen by Gauss-Jordan
//! elimination with first-nonzero pivoting, so the `d_r` matrices are
//! reproducible.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{format_rational, AlgebraError, Rational, RationalMatrix};
use crate::twisted::TwistedComplex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed family: {0}")]
    Malformed(String),
    #[error("D(t)·D(t) is not zero modulo (t-t0)^{}: order {order}, degree {degree}, entry ({row}, {col}) = {entry}", .order + 1)]
    FlatnessViolation { degree: usize, order: usize, row: usize, col: usize, entry: String },
    #[error("truncation order {order} is insufficient for {what} (page {page})")]
    TruncationInsufficient { order: usize, page: usize, what: &'static str },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    base_point: Rational,
    order: usize,
    cochain_ranks: Vec<usize>,
    /// `terms[p][k] = D^p_k`
    terms: Vec<Vec<RationalMatrix>>,
}

impl DeformationFamily {
    /// `terms[p]` lists `D^p_0, .., D^p_K`; shorter lists are padded with
    /// zero matrices.
    pub fn new(
        base_point: Rational,
        order: usize,
        cochain_ranks: Vec<usize>,
        terms: Vec<Vec<RationalMatrix>>,
    ) -> Result<Self, SpectralError> {
        if cochain_ranks.is_empty() {
            return Err(SpectralError::Malformed("no cochain groups".into()));
        }
        if terms.len() + 1 != cochain_ranks.len() {
            return Err(SpectralError::Malformed(format!(
                "{} cochain groups need {} coboundary series, got {}",
                cochain_ranks.len(),
                cochain_ranks.len() - 1,
                terms.len()
            )));
        }
        let mut padded = Vec::with_capacity(terms.len());
        for (p, mut series) in terms.into_iter().enumerate() {
            let (rows, cols) = (cochain_ranks[p + 1], cochain_ranks[p]);
            if series.len() > order + 1 {
                return Err(SpectralError::Malformed(format!(
                    "degree {p} has {} terms but the truncation order is {order}",
                    series.len()
                )));
            }
            for (k, m) in series.iter().enumerate() {
                if m.rows() != rows || m.cols() != cols {
                    return Err(SpectralError::Malformed(format!(
                        "D^{p}_{k} is {}x{}, expected {rows}x{cols}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            series.resize(order + 1, RationalMatrix::zeros(rows, cols));
            padded.push(series);
        }
        let family = DeformationFamily {
            base_point,
            order,
            cochain_ranks,
            terms: padded,
        };
        family.check_flatness(order)?;
        Ok(family)
    }

    pub fn zero(base_point: Rational, order: usize, cochain_ranks: Vec<usize>) -> Self {
        let terms = cochain_ranks
            .windows(2)
            .map(|w| vec![RationalMatrix::zeros(w[1], w[0]); order + 1])
            .collect();
        DeformationFamily {
            base_point,
            order,
            cochain_ranks,
            terms,
        }
    }

    /// Taylor expansion of a twisted complex along
    /// `x_j(t) = point_j · exp(-(t - t0) a_j)`, truncated at `order`.
    /// The monomial `x^k` contributes
    /// `point^k (-<a,k>)^m / m!` to the coefficient of `(t - t0)^m`.
    pub fn linearize(
        c: &TwistedComplex,
        point: &[Rational],
        periods: &[Rational],
        base_point: Rational,
        order: usize,
    ) -> Result<Self, SpectralError> {
        crate::algebra::check_point(c.num_vars(), point)?;
        if periods.len() != c.num_vars() {
            return Err(AlgebraError::VarCountMismatch {
                expected: c.num_vars(),
                found: periods.len(),
            }
            .into());
        }
        let mut factorials = vec![Rational::one()];
        for m in 1..=order {
            let prev = factorials[m - 1].clone();
            factorials.push(prev * Rational::from_integer(m.into()));
        }
        let mut terms = Vec::new();
        for d in c.coboundaries() {
            let mut series = vec![RationalMatrix::zeros(d.rows(), d.cols()); order + 1];
            for (i, j, poly) in d.nonzero_entries() {
                for (e, coeff) in poly.terms() {
                    let mut value = coeff.clone();
                    let mut pairing = Rational::zero();
                    for ((x, a), &k) in point.iter().zip(periods).zip(e) {
                        let k32 = i32::try_from(k).map_err(|_| AlgebraError::ExponentOverflow)?;
                        value *= num_traits::Pow::pow(x, k32);
                        pairing += a * Rational::from_integer(k.into());
                    }
                    let rate = -pairing;
                    let mut power = Rational::one();
                    for (m, slot) in series.iter_mut().enumerate() {
                        let add = &value * &power / &factorials[m];
                        slot[(i, j)] += add;
                        power *= &rate;
                    }
                }
            }
            terms.push(series);
        }
        Self::new(base_point, order, c.cochain_ranks().to_vec(), terms)
    }

    pub fn base_point(&self) -> &Rational {
        &self.base_point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cochain_ranks(&self) -> &[usize] {
        &self.cochain_ranks
    }

    pub fn top_degree(&self) -> usize {
        self.cochain_ranks.len() - 1
    }

    /// `D^p_k`, zero for `k > K`.
    pub fn term(&self, p: usize, k: usize) -> RationalMatrix {
        self.terms[p]
            .get(k)
            .cloned()
            .unwrap_or_else(|| RationalMatrix::zeros(self.cochain_ranks[p + 1], self.cochain_ranks[p]))
    }

    /// `Σ_{i+j=k} D^{p+1}_i D^p_j = 0` for every `k ≤ up_to`.
    fn check_flatness(&self, up_to: usize) -> Result<(), SpectralError> {
        for p in 0..self.terms.len().saturating_sub(1) {
            for k in 0..=up_to {
                let mut acc = RationalMatrix::zeros(self.cochain_ranks[p + 2], self.cochain_ranks[p]);
                for i in 0..=k {
                    acc = acc.add(&self.term(p + 1, i).mul(&self.term(p, k - i))?)?;
                }
                if !acc.is_zero() {
                    let (row, col) = (0..acc.rows())
                        .flat_map(|r| (0..acc.cols()).map(move |c| (r, c)))
                        .find(|&(r, c)| !acc[(r, c)].is_zero())
                        .expect("nonzero matrix has a nonzero entry");
                    return Err(SpectralError::FlatnessViolation {
                        degree: p,
                        order: k,
                        row,
                        col,
                        entry: format_rational(&acc[(row, col)]),
                    });
                }
            }
        }
        Ok(())
    }

    /// True when the series, read as a polynomial with `D_k = 0` beyond
    /// `K`, squares to zero exactly.
    pub fn is_exactly_flat(&self) -> bool {
        self.check_flatness(2 * self.order).is_ok()
    }

    /// `D^p` at `t = t0`, the first term of the series.
    pub fn base_coboundary(&self, p: usize) -> RationalMatrix {
        self.term(p, 0)
    }

    /// Block lower-triangular Toeplitz matrix of the conditions
    /// `Σ_{i+j=k} D^p_i f_j = 0`, `k < r`, on `(f_0, .., f_{r-1})`.
    fn toeplitz(&self, p: usize, r: usize) -> RationalMatrix {
        let cp = self.cochain_ranks[p];
        let cq = self.cochain_ranks.get(p + 1).copied().unwrap_or(0);
        let mut t = RationalMatrix::zeros(r * cq, r * cp);
        if cq == 0 {
            return t;
        }
        for k in 0..r {
            for j in 0..=k {
                let block = self.term(p, k - j);
                for a in 0..cq {
                    for b in 0..cp {
                        if !block[(a, b)].is_zero() {
                            t[(k * cq + a, j * cp + b)] = block[(a, b)].clone();
                        }
                    }
                }
            }
        }
        t
    }

    /// Coefficient of `s^k` in `D^p(s) f(s)` for `f` given as stacked
    /// coefficients.
    fn product_coefficient(&self, p: usize, f: &[Vec<Rational>], k: usize) -> Vec<Rational> {
        let cq = self.cochain_ranks.get(p + 1).copied().unwrap_or(0);
        let mut acc = vec![Rational::zero(); cq];
        if cq == 0 {
            return acc;
        }
        for (j, fj) in f.iter().enumerate() {
            if j > k {
                break;
            }
            let v = self.term(p, k - j).mul_vec(fj);
            for (a, b) in acc.iter_mut().zip(v) {
                *a += b;
            }
        }
        acc
    }
}

/// Splits a stacked vector of length `r·c` into `r` coefficient vectors.
fn unstack(v: &[Rational], c: usize) -> Vec<Vec<Rational>> {
    if c == 0 {
        return vec![Vec::new(); v.len().max(1)];
    }
    v.chunks(c).map(<[Rational]>::to_vec).collect()
}

/// Basis of `Z^p_r` in the stacked coefficient space `(f_0, .., f_{r-1})`.
pub fn cycle_space(f: &DeformationFamily, p: usize, r: usize) -> Result<Vec<Vec<Rational>>, SpectralError> {
    check_degree(f, p)?;
    if r == 0 {
        return Err(SpectralError::Malformed("pages start at r = 1".into()));
    }
    if r > f.order + 1 {
        return Err(SpectralError::TruncationInsufficient {
            order: f.order,
            page: r,
            what: "the cycle space",
        });
    }
    Ok(f.toeplitz(p, r).nullspace())
}

fn check_degree(f: &DeformationFamily, p: usize) -> Result<(), SpectralError> {
    if p > f.top_degree() {
        return Err(SpectralError::Malformed(format!(
            "degree {p} exceeds the top degree {}",
            f.top_degree()
        )));
    }
    Ok(())
}

/// Row-reduced basis of the span of `vectors` in `Q^dim`.
fn span_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec()).expect("equal lengths");
    let e = m.echelon();
    (0..e.pivots.len()).map(|i| e.reduced.row(i).to_vec()).collect()
}

/// `Z^{(0),p}_r`: leading coefficients of elements of `Z^p_r`.
fn leading_cycles(f: &DeformationFamily, p: usize, r: usize) -> Result<Vec<Vec<Rational>>, SpectralError> {
    let cp = f.cochain_ranks[p];
    let leads: Vec<Vec<Rational>> = cycle_space(f, p, r)?
        .into_iter()
        .map(|v| v[..cp].to_vec())
        .collect();
    Ok(span_basis(&leads, cp))
}

/// `B^{(0),p}_r`: `s^{r-1}`-coefficients of `D^{p-1}(s) h` over all `h` with
/// `D(s) h ≡ 0 (mod s^{r-1})`. The top coefficient `h_{r-1}` is free and
/// contributes `im D_0`; the lower ones range over `Z^{p-1}_{r-1}`.
fn leading_boundaries(f: &DeformationFamily, p: usize, r: usize) -> Result<Vec<Vec<Rational>>, SpectralError> {
    let cp = f.cochain_ranks[p];
    if p == 0 {
        return Ok(Vec::new());
    }
    let q = p - 1;
    let cq = f.cochain_ranks[q];
    let d0 = f.base_coboundary(q);
    let mut images: Vec<Vec<Rational>> = (0..cq).map(|j| d0.column(j)).collect();
    if r > 1 {
        for v in cycle_space(f, q, r - 1)? {
            images.push(f.product_coefficient(q, &unstack(&v, cq), r - 1));
        }
    }
    Ok(span_basis(&images, cp))
}

/// Extends `base` by vectors of `candidates` that are independent of
/// everything chosen so far; returns only the added vectors.
fn complement(base: &[Vec<Rational>], candidates: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut chosen: Vec<Vec<Rational>> = base.to_vec();
    let mut rank = span_basis(&chosen, dim).len();
    let mut added = Vec::new();
    for c in candidates {
        chosen.push(c.clone());
        let new_rank = span_basis(&chosen, dim).len();
        if new_rank > rank {
            rank = new_rank;
            added.push(c.clone());
        } else {
            chosen.pop();
        }
    }
    added
}

#[derive(Clone, Debug, PartialEq)]
struct DegreePage {
    boundaries: Vec<Vec<Rational>>,
    representatives: Vec<Vec<Rational>>,
}

fn degree_page(f: &DeformationFamily, p: usize, r: usize) -> Result<DegreePage, SpectralError> {
    let cp = f.cochain_ranks[p];
    let cycles = leading_cycles(f, p, r)?;
    let boundaries = leading_boundaries(f, p, r)?;
    let representatives = complement(&boundaries, &cycles, cp);
    debug_assert_eq!(
        span_basis(&[boundaries.clone(), cycles.clone()].concat(), cp).len(),
        cycles.len(),
        "boundaries must lie in the cycles"
    );
    Ok(DegreePage {
        boundaries,
        representatives,
    })
}

/// Dimensions of `E_r` in every degree; needs `r ≤ K + 1`.
pub fn page_dimensions(f: &DeformationFamily, r: usize) -> Result<Vec<usize>, SpectralError> {
    (0..=f.top_degree())
        .map(|p| {
            let cycles = leading_cycles(f, p, r)?.len();
            let boundaries = leading_boundaries(f, p, r)?.len();
            Ok(cycles - boundaries)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPage {
    pub r: usize,
    pub dims: Vec<usize>,
    /// Leading-coefficient representatives of a basis of `E^p_r`.
    pub representatives: Vec<Vec<Vec<Rational>>>,
    /// `differentials[p]` is `d_r: E^p_r → E^{p+1}_r`, a
    /// `dims[p+1] x dims[p]` matrix in the representative bases.
    pub differentials: Vec<RationalMatrix>,
}

impl SpectralPage {
    pub fn is_degenerate(&self) -> bool {
        self.differentials.iter().all(RationalMatrix::is_zero)
    }

    /// `dim ker d^p - rank d^{p-1}` in each degree.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(RationalMatrix::rank).collect();
        (0..self.dims.len())
            .map(|p| {
                let out = ranks.get(p).copied().unwrap_or(0);
                let inc = if p == 0 { 0 } else { ranks[p - 1] };
                self.dims[p] - out - inc
            })
            .collect()
    }
}

#[derive(Serialize)]
struct PageView {
    r: usize,
    dims: Vec<usize>,
    differentials: Vec<Vec<Vec<String>>>,
}

impl Serialize for SpectralPage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PageView {
            r: self.r,
            dims: self.dims.clone(),
            differentials: self.differentials.iter().map(RationalMatrix::to_strings).collect(),
        }
        .serialize(s)
    }
}

/// Page `E_r` with its differential `d_r`; needs `1 ≤ r ≤ K`.
pub fn page(f: &DeformationFamily, r: usize) -> Result<SpectralPage, SpectralError> {
    if r == 0 {
        return Err(SpectralError::Malformed("pages start at r = 1".into()));
    }
    if r > f.order {
        return Err(SpectralError::TruncationInsufficient {
            order: f.order,
            page: r,
            what: "the differential d_r",
        });
    }
    let n = f.top_degree();
    let pages = (0..=n)
        .map(|p| degree_page(f, p, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut differentials = Vec::with_capacity(n);
    for p in 0..n {
        let (src, dst) = (&pages[p], &pages[p + 1]);
        let cp = f.cochain_ranks[p];
        let cq = f.cochain_ranks[p + 1];
        let mut d = RationalMatrix::zeros(dst.representatives.len(), src.representatives.len());
        // target coordinates: boundaries first, then representatives
        let target_basis: Vec<Vec<Rational>> =
            [dst.boundaries.clone(), dst.representatives.clone()].concat();
        let target = RationalMatrix::from_columns(cq, &target_basis);
        let nb = dst.boundaries.len();
        let toeplitz = f.toeplitz(p, r);
        for (col, e) in src.representatives.iter().enumerate() {
            let lift = lift_leading(&toeplitz, e, cp, r).ok_or_else(|| {
                SpectralError::Algebra(AlgebraError::Internal("representative without a lift".into()))
            })?;
            let image = f.product_coefficient(p, &unstack(&lift, cp), r);
            let coords = target.solve(&image).ok_or(SpectralError::TruncationInsufficient {
                order: f.order,
                page: r,
                what: "a well-defined d_r (image leaves the cycle space)",
            })?;
            for (row, v) in coords[nb..].iter().enumerate() {
                d[(row, col)] = v.clone();
            }
        }
        differentials.push(d);
    }
    Ok(SpectralPage {
        r,
        dims: pages.iter().map(|pg| pg.representatives.len()).collect(),
        representatives: pages.into_iter().map(|pg| pg.representatives).collect(),
        differentials,
    })
}

/// Some `(f_0 = e, f_1, .., f_{r-1})` in the kernel of the Toeplitz system.
fn lift_leading(toeplitz: &RationalMatrix, e: &[Rational], cp: usize, r: usize) -> Option<Vec<Rational>> {
    let rows = toeplitz.rows();
    // fix f_0 = e: move its columns to the right-hand side
    let mut rhs = vec![Rational::zero(); rows];
    for (i, slot) in rhs.iter_mut().enumerate() {
        for (j, ej) in e.iter().enumerate() {
            if !ej.is_zero() {
                *slot -= &toeplitz[(i, j)] * ej;
            }
        }
    }
    let free_cols = (r - 1) * cp;
    let mut rest = RationalMatrix::zeros(rows, free_cols);
    for i in 0..rows {
        for j in 0..free_cols {
            rest[(i, j)] = toeplitz[(i, cp + j)].clone();
        }
    }
    let tail = if free_cols == 0 {
        rhs.iter().all(Zero::is_zero).then(Vec::new)?
    } else {
        rest.solve(&rhs)?
    };
    Some([e.to_vec(), tail].concat())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitPage {
    /// Dimensions at the first page from which every computed differential
    /// vanishes, or at the last computed page when that never happens.
    pub dims: Vec<usize>,
    /// First page `r*` with `d_r = 0` for all `r* ≤ r ≤ K`.
    pub stable_from: Option<usize>,
    pub pages: Vec<SpectralPage>,
}

impl LimitPage {
    pub fn stabilized(&self) -> bool {
        self.stable_from.is_some()
    }
}

/// Computes pages `1..=min(K, r_max)` and locates stabilization.
pub fn limit_page(f: &DeformationFamily) -> Result<LimitPage, SpectralError> {
    limit_page_up_to(f, f.order)
}

pub fn limit_page_up_to(f: &DeformationFamily, r_max: usize) -> Result<LimitPage, SpectralError> {
    let last = r_max.min(f.order);
    if last == 0 {
        return Ok(LimitPage {
            dims: page_dimensions(f, 1)?,
            stable_from: None,
            pages: Vec::new(),
        });
    }
    let pages = (1..=last).map(|r| page(f, r)).collect::<Result<Vec<_>, _>>()?;
    let mut stable_from = None;
    for pg in pages.iter().rev() {
        if pg.is_degenerate() {
            stable_from = Some(pg.r);
        } else {
            break;
        }
    }
    let dims = match stable_from {
        Some(r) => pages[r - 1].dims.clone(),
        None => page_dimensions(f, last + 1)?,
    };
    Ok(LimitPage {
        dims,
        stable_from,
        pages,
    })
}
