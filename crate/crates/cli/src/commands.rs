//! Command implementations. Each command returns its rendered output and an
//! exit status so the binary and the tests share one code path.

use std::fmt::Write as _;

use novikov_core::algebra::{
    format_rational, parse_rational, validate_prime, RankStrategy, Rational, DEFAULT_PRIME, DEFAULT_TRIALS,
};
use novikov_core::hodge::{kernel_vs_exact, spectrum_report, KernelStatus, KernelTable, SpectrumReport};
use novikov_core::morse_bott::{
    check_main_theorem, euler_poincare_report, morse_polynomial, novikov_polynomial, strong_inequality_table,
    EulerPoincareReport, FactorizationCertificate,
};
use novikov_core::spectral::{limit_page_up_to, DeformationFamily, LimitPage, SpectralError};
use novikov_core::twisted::{euler_characteristic, jump_scan, novikov_numbers, TwistedComplex};
use serde::Serialize;
use thiserror::Error;

use crate::corpus;
use crate::document::{ComplexDocument, Document, DocumentError, MorseDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    NegativeCertificate = 1,
    Malformed = 2,
    Inconclusive = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Inconclusive(String),
}

impl CommandError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CommandError::Inconclusive(_) => ExitStatus::Inconclusive,
            _ => ExitStatus::Malformed,
        }
    }
}

fn input(e: impl ToString) -> CommandError {
    CommandError::Input(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyKind {
    Randomized,
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub strategy: StrategyKind,
    pub prime: u64,
    pub trials: u32,
    pub epsilon: f64,
    pub order: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            strategy: StrategyKind::Randomized,
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            epsilon: novikov_core::hodge::DEFAULT_EPSILON,
            order: 4,
            format: Format::Table,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CommandError> {
        validate_prime(self.prime).map_err(input)?;
        if self.trials == 0 {
            return Err(input("--trials must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(input("--epsilon must be positive"));
        }
        Ok(())
    }

    pub fn rank_strategy(&self) -> RankStrategy {
        match self.strategy {
            StrategyKind::Exact => RankStrategy::Exact,
            StrategyKind::Randomized => RankStrategy::Randomized {
                trials: self.trials,
                prime: self.prime,
                seed: self.seed,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: ExitStatus,
}

/// Resolves a file path, or a bundled example name when no such file exists.
pub fn load_document(arg: &str) -> Result<Document, CommandError> {
    match std::fs::read_to_string(arg) {
        Ok(text) => Ok(Document::parse(&text)?),
        Err(err) => match corpus::get(arg) {
            Some(doc) => Ok(doc),
            None => Err(input(format!("cannot read {arg:?}: {err}"))),
        },
    }
}

/// `"2;3;-1"` or `"1,2;3,1/2"`: points separated by `;`, coordinates by `,`.
pub fn parse_points(spec: &str) -> Result<Vec<Vec<Rational>>, CommandError> {
    spec.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.split(',').map(|c| parse_rational(c.trim()).map_err(input)).collect())
        .collect()
}

pub fn parse_reals(spec: &str) -> Result<Vec<f64>, CommandError> {
    spec.split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.trim().parse::<f64>().map_err(|_| input(format!("not a number: {v:?}"))))
        .collect()
}

pub fn parse_counts(spec: &str) -> Result<Vec<usize>, CommandError> {
    spec.split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.trim().parse::<usize>().map_err(|_| input(format!("not a count: {v:?}"))))
        .collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn strategy_line(strategy: &RankStrategy) -> String {
    match strategy {
        RankStrategy::Exact => "exact".into(),
        RankStrategy::Randomized { trials, prime, seed } => {
            format!("randomized (prime {prime}, trials {trials}, seed {seed})")
        }
    }
}

fn failure_line(bound: Option<f64>) -> String {
    match bound {
        Some(b) => format!("<= {b:e}"),
        None => "0 (exact)".into(),
    }
}

fn divided(values: &[usize], by: usize) -> Vec<String> {
    values
        .iter()
        .map(|&v| format_rational(&Rational::new((v as i64).into(), (by as i64).into())))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeView {
    pub point: Vec<String>,
    pub dims: Vec<usize>,
    /// `dims / field_degree`
    pub reduced_dims: Vec<String>,
    pub is_jump: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NovikovReport {
    pub name: String,
    pub strategy: RankStrategy,
    pub betti: Vec<usize>,
    pub ranks: Vec<usize>,
    pub euler_characteristic: i64,
    pub failure_bound: Option<f64>,
    pub field_degree: usize,
    pub reduced_betti: Vec<String>,
    pub probes: Vec<ProbeView>,
}

pub fn novikov_report(
    doc: &ComplexDocument,
    probes: &[Vec<Rational>],
    cfg: &RunConfig,
) -> Result<NovikovReport, CommandError> {
    let c = doc.to_complex()?;
    let strategy = cfg.rank_strategy();
    let nov = novikov_numbers(&c, &strategy).map_err(input)?;
    let scan = jump_scan(&c, probes, &strategy).map_err(input)?;
    let probes = scan
        .probes
        .iter()
        .map(|p| ProbeView {
            point: p.point.iter().map(format_rational).collect(),
            dims: p.dims.clone(),
            reduced_dims: divided(&p.dims, doc.field_degree),
            is_jump: p.is_jump.clone(),
        })
        .collect();
    Ok(NovikovReport {
        name: doc.name.clone(),
        strategy,
        reduced_betti: divided(&nov.betti, doc.field_degree),
        betti: nov.betti,
        ranks: nov.ranks,
        euler_characteristic: euler_characteristic(&c),
        failure_bound: nov.failure_bound,
        field_degree: doc.field_degree,
        probes,
    })
}

fn render_novikov(r: &NovikovReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from("degree,betti\n");
            for (p, b) in r.betti.iter().enumerate() {
                let _ = writeln!(s, "{p},{b}");
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "complex    {}", r.name);
            let _ = writeln!(s, "strategy   {}", strategy_line(&r.strategy));
            let _ = writeln!(s, "betti      {}", join(&r.betti));
            if r.field_degree != 1 {
                let _ = writeln!(s, "betti/{}    {}", r.field_degree, join(&r.reduced_betti));
            }
            let _ = writeln!(s, "ranks      {}", join(&r.ranks));
            let _ = writeln!(s, "euler      {}", r.euler_characteristic);
            let _ = writeln!(s, "failure    {}", failure_line(r.failure_bound));
            for p in &r.probes {
                let jump = if p.is_jump.iter().any(|&j| j) { "jump" } else { "-" };
                let _ = write!(s, "probe ({})  dims {}", p.point.join(", "), join(&p.dims));
                if r.field_degree != 1 {
                    let _ = write!(s, "  /{} {}", r.field_degree, join(&p.reduced_dims));
                }
                let _ = writeln!(s, "  {jump}");
            }
            s
        }
    }
}

pub fn cmd_novikov(doc: &Document, probes: &[Vec<Rational>], cfg: &RunConfig) -> Result<Output, CommandError> {
    cfg.validate()?;
    let doc = doc.clone().into_complex()?;
    let report = novikov_report(&doc, probes, cfg)?;
    Ok(Output {
        text: render_novikov(&report, cfg.format),
        status: ExitStatus::Success,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityView {
    pub degree: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub morse: String,
    pub complex: Option<String>,
    pub fiber_dim: usize,
    pub betti: Vec<usize>,
    pub failure_bound: Option<f64>,
    pub morse_polynomial: String,
    pub novikov_polynomial: String,
    pub quotient: String,
    pub certificate: FactorizationCertificate,
    pub strong_inequalities: Vec<InequalityView>,
    /// `N(-1)`
    pub novikov_at_minus_one: i64,
    pub euler_poincare: EulerPoincareReport,
    pub holds: bool,
}

/// Where the Novikov numbers for `check` come from.
pub enum BettiSource<'a> {
    Complex(&'a ComplexDocument),
    Explicit(Vec<usize>),
}

pub fn check_report(morse: &MorseDocument, source: BettiSource<'_>, cfg: &RunConfig) -> Result<CheckReport, CommandError> {
    let md = morse.to_morse()?;
    let (betti, failure_bound, complex) = match source {
        BettiSource::Complex(doc) => {
            if doc.fiber_dim != morse.fiber_dim {
                return Err(input(format!(
                    "fiber_dim mismatch: {} has {}, {} has {}",
                    morse.name, morse.fiber_dim, doc.name, doc.fiber_dim
                )));
            }
            let c = doc.to_complex()?;
            let nov = novikov_numbers(&c, &cfg.rank_strategy()).map_err(input)?;
            (nov.betti, nov.failure_bound, Some(doc.name.clone()))
        }
        BettiSource::Explicit(b) => (b, None, None),
    };
    let m = morse_polynomial(&md);
    let n = novikov_polynomial(&betti);
    let certificate = check_main_theorem(&m, &n);
    let d = morse.fiber_dim;
    let m_over_d: Vec<Rational> = m
        .coeffs()
        .iter()
        .map(|c| Rational::new(c.clone(), (d as i64).into()))
        .collect();
    let strong: Vec<InequalityView> = strong_inequality_table(&m_over_d, &betti, d)
        .into_iter()
        .map(|row| InequalityView {
            degree: row.degree,
            lhs: format_rational(&row.lhs),
            rhs: format_rational(&row.rhs),
            holds: row.holds,
        })
        .collect();
    let chi_times_d = morse.euler_characteristic * d as i64;
    let ep = euler_poincare_report(&md, chi_times_d).map_err(input)?;
    let novikov_at_minus_one = novikov_core::twisted::alternating_sum(&betti);
    let holds = certificate.holds && strong.iter().all(|r| r.holds) && ep.holds && novikov_at_minus_one == chi_times_d;
    Ok(CheckReport {
        morse: morse.name.clone(),
        complex,
        fiber_dim: d,
        failure_bound,
        morse_polynomial: m.to_string(),
        novikov_polynomial: n.to_string(),
        quotient: certificate.quotient.to_string(),
        betti,
        certificate,
        strong_inequalities: strong,
        novikov_at_minus_one,
        euler_poincare: ep,
        holds,
    })
}

fn render_check(r: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from("degree,lhs,rhs,holds\n");
            for row in &r.strong_inequalities {
                let _ = writeln!(s, "{},{},{},{}", row.degree, row.lhs, row.rhs, row.holds);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "morse      {}", r.morse);
            if let Some(c) = &r.complex {
                let _ = writeln!(s, "complex    {c}");
            }
            let _ = writeln!(s, "betti      {}", join(&r.betti));
            let _ = writeln!(s, "failure    {}", failure_line(r.failure_bound));
            let _ = writeln!(s, "M(λ)       {}", r.morse_polynomial);
            let _ = writeln!(s, "N(λ)       {}", r.novikov_polynomial);
            let _ = writeln!(s, "Q(λ)       {}", r.quotient);
            let _ = writeln!(s, "remainder  {}", r.certificate.remainder);
            let _ = writeln!(s, "(1+λ)Q     {}", if r.certificate.holds { "holds" } else { "fails" });
            let _ = writeln!(s, "strong inequalities (degree: lhs >= rhs)");
            for row in &r.strong_inequalities {
                let mark = if row.holds { "ok" } else { "FAILS" };
                let _ = writeln!(s, "  {}: {} >= {}  {mark}", row.degree, row.lhs, row.rhs);
            }
            let ep = &r.euler_poincare;
            let _ = writeln!(
                s,
                "euler      M(-1) = {}, N(-1) = {}, d·χ = {}  {}",
                ep.morse_at_minus_one,
                r.novikov_at_minus_one,
                ep.chi_times_d,
                if ep.holds && r.novikov_at_minus_one == ep.chi_times_d { "holds" } else { "fails" }
            );
            let _ = writeln!(s, "result     {}", if r.holds { "holds" } else { "fails" });
            s
        }
    }
}

pub fn cmd_check(morse: &Document, source: &CheckSource, cfg: &RunConfig) -> Result<Output, CommandError> {
    cfg.validate()?;
    let morse = morse.clone().into_morse()?;
    let complex;
    let src = match source {
        CheckSource::Complex(doc) => {
            complex = doc.clone().into_complex()?;
            BettiSource::Complex(&complex)
        }
        CheckSource::Betti(b) => BettiSource::Explicit(b.clone()),
    };
    let report = check_report(&morse, src, cfg)?;
    Ok(Output {
        text: render_check(&report, cfg.format),
        status: if report.holds { ExitStatus::Success } else { ExitStatus::NegativeCertificate },
    })
}

pub enum CheckSource {
    Complex(Document),
    Betti(Vec<usize>),
}

#[derive(Clone, Debug, Serialize)]
pub struct SsReport {
    pub name: String,
    pub base_point: String,
    pub order: usize,
    pub pages: Vec<novikov_core::spectral::SpectralPage>,
    pub limit_dims: Vec<usize>,
    pub stable_from: Option<usize>,
    pub stabilized: bool,
}

fn ss_from_family(name: &str, f: &DeformationFamily, r_max: Option<usize>) -> Result<SsReport, CommandError> {
    let r_max = r_max.unwrap_or(f.order());
    let limit: LimitPage = limit_page_up_to(f, r_max).map_err(|e| match e {
        SpectralError::TruncationInsufficient { .. } => CommandError::Inconclusive(e.to_string()),
        other => input(other),
    })?;
    Ok(SsReport {
        name: name.to_string(),
        base_point: format_rational(f.base_point()),
        order: f.order(),
        stabilized: limit.stabilized(),
        stable_from: limit.stable_from,
        limit_dims: limit.dims,
        pages: limit.pages,
    })
}

/// Spectral sequence of a family document, or of a complex linearized at
/// `point` along its period basis.
pub fn ss_report(
    doc: &Document,
    point: Option<&[Rational]>,
    r_max: Option<usize>,
    cfg: &RunConfig,
) -> Result<SsReport, CommandError> {
    match doc {
        Document::Family(fd) => {
            let f = fd.to_family()?;
            ss_from_family(&fd.name, &f, r_max)
        }
        Document::Complex(cd) => {
            let c: TwistedComplex = cd.to_complex()?;
            let ones = vec![Rational::from_integer(1.into()); c.num_vars()];
            let point = point.unwrap_or(&ones);
            let periods = c
                .period_basis()
                .iter()
                .map(|&a| Rational::from_float(a).ok_or_else(|| input("period basis must be finite")))
                .collect::<Result<Vec<_>, _>>()?;
            if periods.len() != c.num_vars() {
                return Err(input("linearizing needs a period basis"));
            }
            let f = DeformationFamily::linearize(&c, point, &periods, Rational::from_integer(0.into()), cfg.order)
                .map_err(input)?;
            ss_from_family(&cd.name, &f, r_max)
        }
        Document::Morse(_) => Err(DocumentError::WrongKind {
            expected: "family or complex",
            found: "morse",
        }
        .into()),
    }
}

fn render_ss(r: &SsReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from("r,degree,dim\n");
            for pg in &r.pages {
                for (p, d) in pg.dims.iter().enumerate() {
                    let _ = writeln!(s, "{},{p},{d}", pg.r);
                }
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "family     {} (t0 = {}, K = {})", r.name, r.base_point, r.order);
            for pg in &r.pages {
                let _ = writeln!(s, "E_{}        {}", pg.r, join(&pg.dims));
                if pg.r == 1 {
                    for (p, d) in pg.differentials.iter().enumerate() {
                        let rows: Vec<String> = d.to_strings().iter().map(|row| format!("[{}]", row.join(" "))).collect();
                        let _ = writeln!(s, "  d_1^{p}    {}", if rows.is_empty() { "[]".into() } else { rows.join(" ") });
                    }
                }
            }
            let _ = writeln!(s, "limit      {}", join(&r.limit_dims));
            match r.stable_from {
                Some(k) => {
                    let _ = writeln!(s, "stable     from page {k}");
                }
                None => {
                    let _ = writeln!(s, "stable     no (within K = {})", r.order);
                }
            }
            s
        }
    }
}

pub fn cmd_ss(
    doc: &Document,
    point: Option<&[Rational]>,
    r_max: Option<usize>,
    cfg: &RunConfig,
) -> Result<Output, CommandError> {
    cfg.validate()?;
    let report = ss_report(doc, point, r_max, cfg)?;
    Ok(Output {
        text: render_ss(&report, cfg.format),
        status: if report.stabilized { ExitStatus::Success } else { ExitStatus::Inconclusive },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRun {
    pub name: String,
    pub spectra: Vec<SpectrumReport>,
    pub kernel: KernelTable,
}

pub fn spectrum_run(doc: &ComplexDocument, s_values: &[f64], cfg: &RunConfig) -> Result<SpectrumRun, CommandError> {
    let c = doc.to_complex()?;
    let spectra = s_values
        .iter()
        .map(|&s| spectrum_report(&c, s, 1.0, cfg.epsilon).map_err(|e| input(format!("at s = {s}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let kernel = kernel_vs_exact(&c, s_values, cfg.epsilon, &cfg.rank_strategy()).map_err(input)?;
    Ok(SpectrumRun {
        name: doc.name.clone(),
        spectra,
        kernel,
    })
}

pub const CSV_HEADER: &str = "s,degree,index,eigenvalue";

/// `s,degree,index,eigenvalue` with 17 significant digits.
pub fn spectrum_csv(spectra: &[SpectrumReport]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    for rep in spectra {
        for deg in &rep.degrees {
            for (i, v) in deg.eigenvalues.iter().enumerate() {
                let _ = writeln!(s, "{:.16e},{},{},{:.16e}", rep.s, deg.degree, i, v);
            }
        }
    }
    s
}

fn status_name(s: KernelStatus) -> &'static str {
    match s {
        KernelStatus::Match => "match",
        KernelStatus::Jump => "jump",
        KernelStatus::Mismatch => "MISMATCH",
        KernelStatus::Inconclusive => "inconclusive",
    }
}

fn render_spectrum(r: &SpectrumRun, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => spectrum_csv(&r.spectra),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "complex    {}", r.name);
            let _ = writeln!(s, "betti      {}", join(&r.kernel.betti));
            let _ = writeln!(s, "failure    {}", failure_line(r.kernel.failure_bound));
            let _ = writeln!(s, "epsilon    {:e}", r.kernel.epsilon);
            let _ = writeln!(s, "s          degree  kernel  generic  at-point  status");
            for row in &r.kernel.rows {
                let numeric = row.numeric.map_or("?".to_string(), |k| k.to_string());
                let at = row.exact_at_point.map_or("-".to_string(), |k| k.to_string());
                let _ = writeln!(
                    s,
                    "{:<10} {:<7} {:<7} {:<8} {:<9} {}",
                    row.s,
                    row.degree,
                    numeric,
                    row.generic,
                    at,
                    status_name(row.status)
                );
            }
            s.push('\n');
            s.push_str(&spectrum_csv(&r.spectra));
            s
        }
    }
}

pub fn cmd_spectrum(doc: &Document, s_values: &[f64], cfg: &RunConfig) -> Result<Output, CommandError> {
    cfg.validate()?;
    let doc = doc.clone().into_complex()?;
    let run = spectrum_run(&doc, s_values, cfg)?;
    let status = if run.kernel.mismatches() > 0 {
        ExitStatus::NegativeCertificate
    } else if run.kernel.inconclusive() > 0 {
        ExitStatus::Inconclusive
    } else {
        ExitStatus::Success
    };
    Ok(Output {
        text: render_spectrum(&run, cfg.format),
        status,
    })
}

pub fn cmd_examples(name: Option<&str>) -> Result<Output, CommandError> {
    match name {
        None | Some("list") => {
            let mut s = String::new();
            for n in corpus::NAMES {
                let _ = writeln!(s, "{n:<30} {}", corpus::describe(n).unwrap_or(""));
            }
            Ok(Output {
                text: s,
                status: ExitStatus::Success,
            })
        }
        Some(n) => match corpus::get(n) {
            Some(doc) => Ok(Output {
                text: doc.to_json() + "\n",
                status: ExitStatus::Success,
            }),
            None => Err(input(format!(
                "unknown example {n:?}; available: {}",
                corpus::NAMES.join(", ")
            ))),
        },
    }
}
