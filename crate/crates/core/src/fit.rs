//! Finite-scale verification of ceiling and floor (Puiseux) polynomials
//! against integer sequences on prime-power domains, plus the linear-family
//! rejection sweep and a small integer-coefficient search.
//!
//! "Infinitely many witnesses" becomes "at least `witness_threshold`
//! witnesses up to the scanned limit"; every verdict records both numbers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, DomainKind, DomainPoint, PrimePowerDomain};
use crate::elliptic::{EllipticCurve, EllipticError};
use crate::monoid::MonoidScheme;
use crate::puiseux::{int, PuiseuxPoly};
use crate::schemes::{Family, SchemeError};

/// Default number of witnesses standing in for "infinitely many".
pub const DEFAULT_WITNESS_THRESHOLD: usize = 3;
/// Default scan limit.
pub const DEFAULT_LIMIT: u64 = 10_000;
/// Largest coefficient box `search_polynomial` accepts.
pub const MAX_SEARCH_COMBINATIONS: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("bad source spec '{0}'")]
    BadSource(String),
    #[error("search degree {0} exceeds 3")]
    DegreeTooLarge(u32),
    #[error("coefficient box has {0} combinations, more than 10^6")]
    BoxTooLarge(u128),
    #[error("empty coefficient range {lo}..={hi}")]
    EmptyRange { lo: i128, hi: i128 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

pub type Generator = Arc<dyn Fn(&DomainPoint) -> i128 + Send + Sync>;

/// A deterministic integer sequence `n -> A_n` on a bounded domain.
#[derive(Clone)]
pub struct SequenceSource {
    label: String,
    domain: PrimePowerDomain,
    generator: Generator,
}

impl fmt::Debug for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSource")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl SequenceSource {
    pub fn new(
        label: impl Into<String>,
        domain: PrimePowerDomain,
        generator: impl Fn(&DomainPoint) -> i128 + Send + Sync + 'static,
    ) -> Self {
        SequenceSource {
            label: label.into(),
            domain,
            generator: Arc::new(generator),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &PrimePowerDomain {
        &self.domain
    }

    pub fn value(&self, n: &DomainPoint) -> i128 {
        (self.generator)(n)
    }

    /// Evaluates the whole domain, in increasing order of `n`.
    pub fn sample(&self) -> Sequence {
        let values = self
            .domain
            .enumerate()
            .into_par_iter()
            .map(|n| (n, self.value(&n)))
            .collect();
        Sequence {
            label: self.label.clone(),
            domain: self.domain.clone(),
            values,
        }
    }
}

/// A sampled source: every `(n, A_n)` of the domain in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    pub label: String,
    pub domain: PrimePowerDomain,
    pub values: Vec<(DomainPoint, i128)>,
}

impl Sequence {
    /// Restriction to a smaller limit.
    pub fn truncate(&self, limit: u64) -> Result<Sequence, FitError> {
        Ok(Sequence {
            label: self.label.clone(),
            domain: self.domain.with_limit(limit.min(self.domain.limit()))?,
            values: self.values.iter().filter(|(n, _)| n.q <= limit).copied().collect(),
        })
    }
}

/// Sequences the command line and the demo can name.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Family(Family),
    Curve(EllipticCurve),
    /// `#X_Z(F_q)` for a monoid scheme.
    Monoid(MonoidScheme),
}

impl SourceSpec {
    /// Builds the source on prime powers (or primes) up to `limit`, avoiding `excluded`.
    /// Curves always avoid their bad primes as well.
    pub fn build(&self, kind: DomainKind, excluded: &BTreeSet<u64>, limit: u64) -> Result<SequenceSource, FitError> {
        if kind == DomainKind::NaturalsFrom2 {
            return Err(FitError::BadSource(format!("{self} needs a prime-power domain")));
        }
        let label = self.to_string();
        Ok(match self {
            SourceSpec::Family(family) => {
                let family = *family;
                let domain = PrimePowerDomain::new(kind, excluded.iter().copied(), limit)?;
                // validate parameters once; the formulas are total afterwards
                family.count(2, 1)?;
                SequenceSource::new(label, domain, move |n| {
                    let base = n.base.expect("prime-power domain");
                    family.count(base.p, base.m).expect("validated family")
                })
            }
            SourceSpec::Curve(curve) => {
                let mut all = excluded.clone();
                all.extend(curve.bad_primes());
                let domain = PrimePowerDomain::new(kind, all, limit)?;
                let curve = curve.clone();
                SequenceSource::new(label, domain, move |n| {
                    let base = n.base.expect("prime-power domain");
                    curve.count_extension(base.p, base.m).expect("good prime")
                })
            }
            SourceSpec::Monoid(scheme) => {
                let domain = PrimePowerDomain::new(kind, excluded.iter().copied(), limit)?;
                let scheme = scheme.clone();
                SequenceSource::new(label, domain, move |n| scheme.count_f1n(n.q - 1))
            }
        })
    }
}

impl fmt::Display for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSpec::Family(family) => write!(f, "{family}"),
            SourceSpec::Curve(c) => write!(f, "curve:a={},b={}", c.a(), c.b()),
            SourceSpec::Monoid(x) => write!(f, "monoid:{}", x.label),
        }
    }
}

impl FromStr for SourceSpec {
    type Err = FitError;

    /// `An:n=3`, `Gn:n=5`, `pell:delta=5`, `curve:a=-1,b=0`, and the monoid models
    /// `projective:n=1`, `affine:n=2`, `torus:n=1`, `f1n:n=3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FitError::BadSource(s.to_string());
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let mut params = std::collections::BTreeMap::new();
        for kv in args.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            params.insert(k.trim(), v);
        }
        let get = |k: &str| params.get(k).copied().ok_or_else(bad);
        let unsigned = |k: &str| get(k).and_then(|v| u32::try_from(v).map_err(|_| bad()));
        let expect_keys = |keys: &[&str]| {
            if params.len() == keys.len() && keys.iter().all(|k| params.contains_key(k)) {
                Ok(())
            } else {
                Err(bad())
            }
        };
        Ok(match kind.trim() {
            "An" | "Gn" | "pell" => SourceSpec::Family(s.parse()?),
            "curve" => {
                expect_keys(&["a", "b"])?;
                SourceSpec::Curve(EllipticCurve::from_coefficients(get("a")?, get("b")?)?)
            }
            "projective" => {
                expect_keys(&["n"])?;
                SourceSpec::Monoid(MonoidScheme::projective_space(unsigned("n")?))
            }
            "affine" => {
                expect_keys(&["n"])?;
                SourceSpec::Monoid(MonoidScheme::affine_space(unsigned("n")?))
            }
            "torus" => {
                expect_keys(&["n"])?;
                SourceSpec::Monoid(MonoidScheme::torus(unsigned("n")?))
            }
            "f1n" => {
                expect_keys(&["n"])?;
                let n = unsigned("n")?;
                SourceSpec::Monoid(MonoidScheme::spec_f1n(n as u64).map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ceiling,
    Floor,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ceiling => "ceiling",
            Mode::Floor => "floor",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ceiling" => Ok(Mode::Ceiling),
            "floor" => Ok(Mode::Floor),
            _ => Err(format!("mode must be ceiling or floor, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    BoundViolated,
    InsufficientWitnesses,
    NonIntegralAtOne,
}

impl Status {
    /// Process exit code used by the command line.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::BoundViolated | Status::NonIntegralAtOne => 2,
            Status::InsufficientWitnesses => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::BoundViolated => "bound_violated",
            Status::InsufficientWitnesses => "insufficient_witnesses",
            Status::NonIntegralAtOne => "non_integral_at_one",
        })
    }
}

/// First index where the bound fails. `f_floor`/`f_ceil` bracket `f(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: u64,
    pub value: i128,
    pub f_floor: String,
    pub f_ceil: String,
    pub f_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub mode: Mode,
    pub puiseux_mode: bool,
    pub status: Status,
    pub candidate: String,
    pub source: String,
    pub domain: DomainKind,
    pub excluded: Vec<u64>,
    pub witnesses: Vec<u64>,
    pub violation: Option<Violation>,
    pub scanned_limit: u64,
    pub witness_threshold: usize,
    pub value_at_one: String,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }
}

/// `f` evaluated for comparison against integers: floor, ceiling, integrality.
enum Evaluator<'a> {
    /// Ordinary polynomial with integer coefficients, lowest degree first.
    Integer(Vec<i128>),
    General(&'a PuiseuxPoly),
}

impl<'a> Evaluator<'a> {
    fn new(f: &'a PuiseuxPoly) -> Self {
        let integral = f.is_ordinary() && f.terms().iter().all(|(c, _)| c.is_integer());
        if !integral {
            return Evaluator::General(f);
        }
        let degree = f.degree().map_or(0, |d| d.to_integer() as usize);
        let coeffs = (0..=degree).map(|k| f.coefficient(int(k as i128)).to_integer()).collect();
        Evaluator::Integer(coeffs)
    }

    fn floor_ceil(&self, q: u64) -> (BigInt, BigInt, bool) {
        match self {
            Evaluator::Integer(coeffs) => {
                let x = q as i128;
                let value = coeffs
                    .iter()
                    .rev()
                    .try_fold(0i128, |acc, &c| acc.checked_mul(x).and_then(|v| v.checked_add(c)));
                match value {
                    Some(v) => (BigInt::from(v), BigInt::from(v), true),
                    None => PuiseuxPoly::from_int_coeffs(coeffs).floor_ceil(q).expect("q >= 2"),
                }
            }
            Evaluator::General(f) => f.floor_ceil(q).expect("q >= 2"),
        }
    }
}

/// Per-index outcome of one bound check.
enum PointCheck {
    Ok { witness: bool },
    Violated(Violation),
}

fn check_point(eval: &Evaluator, mode: Mode, puiseux_mode: bool, q: u64, value: i128) -> PointCheck {
    let (fl, ce, exact) = eval.floor_ceil(q);
    let a = BigInt::from(value);
    // A <= f(q) iff A <= floor f(q); A >= f(q) iff A >= ceil f(q)
    let holds = match mode {
        Mode::Ceiling => a <= fl,
        Mode::Floor => a >= ce,
    };
    if !holds {
        return PointCheck::Violated(Violation {
            n: q,
            value,
            f_floor: fl.to_string(),
            f_ceil: ce.to_string(),
            f_exact: exact,
        });
    }
    let witness = if puiseux_mode {
        match mode {
            Mode::Ceiling => a == fl,
            Mode::Floor => a == ce,
        }
    } else {
        exact && a == fl
    };
    PointCheck::Ok { witness }
}

fn verify(f: &PuiseuxPoly, seq: &Sequence, threshold: usize, puiseux_mode: bool, mode: Mode) -> Verdict {
    let eval = Evaluator::new(f);
    let checks: Vec<PointCheck> = seq
        .values
        .par_iter()
        .map(|&(n, value)| check_point(&eval, mode, puiseux_mode, n.q, value))
        .collect();
    let mut witnesses = Vec::new();
    let mut violation = None;
    for (check, (n, _)) in checks.into_iter().zip(&seq.values) {
        match check {
            PointCheck::Ok { witness: true } => witnesses.push(n.q),
            PointCheck::Ok { witness: false } => {}
            PointCheck::Violated(v) => {
                violation = Some(v);
                break;
            }
        }
    }
    let (at_one, integral_at_one) = f.value_at_one();
    let status = if puiseux_mode && !integral_at_one {
        Status::NonIntegralAtOne
    } else if violation.is_some() {
        Status::BoundViolated
    } else if witnesses.len() < threshold {
        Status::InsufficientWitnesses
    } else {
        Status::Verified
    };
    Verdict {
        mode,
        puiseux_mode,
        status,
        candidate: f.to_string(),
        source: seq.label.clone(),
        domain: seq.domain.kind(),
        excluded: seq.domain.excluded().iter().copied().collect(),
        witnesses,
        violation,
        scanned_limit: seq.domain.limit(),
        witness_threshold: threshold,
        value_at_one: at_one.to_string(),
    }
}

/// Checks `f(n) >= A_n` everywhere and collects witnesses of equality
/// (`floor f(n) = A_n` in Puiseux mode, which also demands `f(1)` integral).
pub fn verify_ceiling(f: &PuiseuxPoly, seq: &Sequence, witness_threshold: usize, puiseux_mode: bool) -> Verdict {
    verify(f, seq, witness_threshold, puiseux_mode, Mode::Ceiling)
}

/// Dual of [`verify_ceiling`]: `f(n) <= A_n`, witnesses `ceil f(n) = A_n` in Puiseux mode.
pub fn verify_floor(f: &PuiseuxPoly, seq: &Sequence, witness_threshold: usize, puiseux_mode: bool) -> Verdict {
    verify(f, seq, witness_threshold, puiseux_mode, Mode::Floor)
}

pub fn verify_mode(
    mode: Mode,
    f: &PuiseuxPoly,
    seq: &Sequence,
    witness_threshold: usize,
    puiseux_mode: bool,
) -> Verdict {
    verify(f, seq, witness_threshold, puiseux_mode, mode)
}

/// Outcome for one `t + c` in the linear-family sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearRejection {
    pub c: i128,
    pub ceiling: Verdict,
    pub floor: Verdict,
}

impl LinearRejection {
    pub fn ceiling_violated(&self) -> bool {
        self.ceiling.status == Status::BoundViolated
    }

    pub fn floor_rejected(&self) -> bool {
        matches!(self.floor.status, Status::BoundViolated | Status::InsufficientWitnesses)
    }
}

/// Runs both verifications of `t + c` for each `c` in `c_lo..=c_hi`, reporting the concrete failures.
pub fn reject_linear_family(seq: &Sequence, c_lo: i128, c_hi: i128, witness_threshold: usize) -> Vec<LinearRejection> {
    (c_lo..=c_hi)
        .map(|c| {
            let f = PuiseuxPoly::from_int_coeffs(&[c, 1]);
            LinearRejection {
                c,
                ceiling: verify_ceiling(&f, seq, witness_threshold, false),
                floor: verify_floor(&f, seq, witness_threshold, false),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub degree: u32,
    pub coeff_range: (i128, i128),
    pub candidates_tested: u128,
    pub ceilings: Vec<String>,
    pub floors: Vec<String>,
    /// More than one candidate passed in some mode: the limit is too small to separate them.
    pub ambiguous: bool,
    pub scanned_limit: u64,
    pub witness_threshold: usize,
}

/// Cheap sequential rejection before the full verification.
fn passes(eval: &Evaluator, seq: &Sequence, threshold: usize, mode: Mode) -> bool {
    let mut witnesses = 0;
    for &(n, value) in &seq.values {
        match check_point(eval, mode, false, n.q, value) {
            PointCheck::Violated(_) => return false,
            PointCheck::Ok { witness } => witnesses += witness as usize,
        }
    }
    witnesses >= threshold
}

/// Exhaustively tests integer polynomials of degree `<= degree` with every
/// coefficient in `lo..=hi`.
pub fn search_polynomial(
    seq: &Sequence,
    degree: u32,
    lo: i128,
    hi: i128,
    witness_threshold: usize,
) -> Result<SearchReport, FitError> {
    if degree > 3 {
        return Err(FitError::DegreeTooLarge(degree));
    }
    if lo > hi {
        return Err(FitError::EmptyRange { lo, hi });
    }
    let width = (hi - lo + 1) as u128;
    let total = width.checked_pow(degree + 1).unwrap_or(u128::MAX);
    if total > MAX_SEARCH_COMBINATIONS {
        return Err(FitError::BoxTooLarge(total));
    }
    let candidates: Vec<Vec<i128>> = (0..total)
        .map(|mut idx| {
            (0..=degree)
                .map(|_| {
                    let c = lo + (idx % width) as i128;
                    idx /= width;
                    c
                })
                .collect()
        })
        .collect();
    let run = |mode: Mode| -> Vec<String> {
        candidates
            .par_iter()
            .filter_map(|coeffs| {
                let eval = Evaluator::Integer(coeffs.clone());
                passes(&eval, seq, witness_threshold, mode)
                    .then(|| PuiseuxPoly::from_int_coeffs(coeffs).to_string())
            })
            .collect()
    };
    let ceilings = run(Mode::Ceiling);
    let floors = run(Mode::Floor);
    Ok(SearchReport {
        degree,
        coeff_range: (lo, hi),
        candidates_tested: total,
        ambiguous: ceilings.len() > 1 || floors.len() > 1,
        ceilings,
        floors,
        scanned_limit: seq.domain.limit(),
        witness_threshold,
    })
}

/// Integer `f(q)` when it is one.
pub fn integer_value(f: &PuiseuxPoly, q: u64) -> Option<i128> {
    f.eval_rational(q)
        .filter(|v| v.is_integer())
        .and_then(|v| v.to_integer().to_i128())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidScheme;

    fn poly(s: &str) -> PuiseuxPoly {
        s.parse().unwrap()
    }

    fn seq(spec: &str, kind: DomainKind, excluded: &[u64], limit: u64) -> Sequence {
        let spec: SourceSpec = spec.parse().unwrap();
        spec.build(kind, &excluded.iter().copied().collect(), limit).unwrap().sample()
    }

    #[test]
    fn projective_line_ceiling() {
        let s = seq("projective:n=1", DomainKind::PrimePowers, &[], 500);
        let v = verify_ceiling(&poly("t + 1"), &s, 3, false);
        assert_eq!(v.status, Status::Verified);
        assert_eq!(&v.witnesses[..3], &[2, 3, 4]);
        assert_eq!(v.witnesses.len(), s.values.len());
    }

    #[test]
    fn elliptic_envelopes() {
        let s = seq("curve:a=-1,b=0", DomainKind::PrimePowers, &[], 10_000);
        let v = verify_ceiling(&poly("t + 2t^{1/2} + 1"), &s, 2, true);
        assert_eq!(v.status, Status::Verified, "{v:?}");
        assert!(v.witnesses.contains(&49));
        assert_eq!(v.excluded, vec![2, 3]);
        let v = verify_ceiling(&poly("t"), &s, 2, true);
        assert_eq!(v.status, Status::BoundViolated);
        let viol = v.violation.unwrap();
        assert!(viol.value > viol.n as i128);
        let s = seq("curve:a=-1,b=0", DomainKind::PrimePowers, &[], 30_000);
        let v = verify_floor(&poly("t - 2t^{1/2} + 1"), &s, 1, true);
        assert_eq!(v.status, Status::Verified);
        assert!(v.witnesses.contains(&2401));
    }

    #[test]
    fn floor_examples() {
        let s = seq("Gn:n=5", DomainKind::PrimePowers, &[], 10_000);
        let v = verify_floor(&poly("t - 5"), &s, 3, false);
        assert_eq!(v.status, Status::Verified);
        assert!(v.witnesses.iter().all(|q| (q - 1) % 4 == 0));
        let s = seq("pell:delta=5", DomainKind::PrimePowers, &[], 10_000);
        assert_eq!(verify_floor(&poly("t - 1"), &s, 3, false).status, Status::Verified);
    }

    #[test]
    fn non_integral_at_one() {
        let s = seq("projective:n=1", DomainKind::PrimePowers, &[], 200);
        let v = verify_ceiling(&poly("t + (1/2)t^{1/2} + 1"), &s, 1, true);
        assert_eq!(v.status, Status::NonIntegralAtOne);
        assert_eq!(v.value_at_one, "5/2");
    }

    #[test]
    fn linear_family_rejection() {
        let s = seq("curve:a=-1,b=0", DomainKind::PrimesOnly, &[], 20_000);
        for r in reject_linear_family(&s, 0, 20, 3) {
            assert!(r.ceiling_violated(), "c = {}", r.c);
            let v = r.ceiling.violation.as_ref().unwrap();
            let a_p = v.n as i128 + 1 - v.value;
            assert!(a_p < 1 - r.c);
        }
        for r in reject_linear_family(&s, -20, 2, 3) {
            assert!(r.floor_rejected(), "c = {}", r.c);
        }
        let gm = seq("torus:n=1", DomainKind::PrimePowers, &[], 5000);
        let control = reject_linear_family(&gm, -1, -1, 3);
        assert_eq!(control[0].ceiling.status, Status::Verified);
    }

    #[test]
    fn search_examples() {
        let s = seq("An:n=3", DomainKind::PrimePowers, &[], 5000);
        let r = search_polynomial(&s, 1, -5, 5, 3).unwrap();
        assert_eq!(r.ceilings, vec!["t - 2"]);
        assert!(!r.ambiguous);
        let s = seq("f1n:n=3", DomainKind::PrimePowers, &[], 5000);
        let r = search_polynomial(&s, 0, -5, 5, 3).unwrap();
        assert_eq!((r.ceilings.clone(), r.floors.clone()), (vec!["3".to_string()], vec!["1".to_string()]));
        let s = seq("curve:a=-1,b=0", DomainKind::PrimesOnly, &[], 5000);
        let r = search_polynomial(&s, 1, -5, 5, 3).unwrap();
        assert!(r.ceilings.is_empty());
        assert!(search_polynomial(&s, 4, 0, 1, 3).is_err());
        assert!(matches!(search_polynomial(&s, 3, -20, 20, 3), Err(FitError::BoxTooLarge(_))));
    }

    #[test]
    fn search_flags_small_limits() {
        // t + 1 and 2t - 1 agree at q = 2 and both bound P^1 from above there
        let s = seq("projective:n=1", DomainKind::PrimePowers, &[], 2);
        let r = search_polynomial(&s, 1, -2, 2, 1).unwrap();
        assert!(r.ambiguous);
    }

    #[test]
    fn verified_verdicts_are_sound() {
        let x = MonoidScheme::projective_space(2).product(&MonoidScheme::spec_f1n(4).unwrap());
        let spec = SourceSpec::Monoid(x.clone());
        let s = spec.build(DomainKind::PrimePowers, &BTreeSet::new(), 3000).unwrap().sample();
        let f = x.ceiling_poly();
        let v = verify_ceiling(&f, &s, 3, false);
        assert_eq!(v.status, Status::Verified);
        for &(n, a) in &s.values {
            let fv = integer_value(&f, n.q).unwrap();
            assert!(a <= fv);
            assert_eq!(v.witnesses.contains(&n.q), a == fv);
        }
    }

    #[test]
    fn enlarging_s_keeps_ceilings() {
        for delta in [5i64, -3, 12, 4] {
            let spec = format!("pell:delta={delta}");
            let ceil = |excluded: &[u64]| {
                let fam: Family = spec.parse().unwrap();
                let (c, _) = fam.envelopes(&excluded.iter().copied().collect()).unwrap();
                c
            };
            let small = seq(&spec, DomainKind::PrimePowers, &[], 3000);
            let big = seq(&spec, DomainKind::PrimePowers, &[2, 3, 5], 3000);
            let f = ceil(&[]);
            assert_ne!(verify_ceiling(&f, &small, 1, false).status, Status::BoundViolated);
            assert_ne!(verify_ceiling(&f, &big, 1, false).status, Status::BoundViolated);
        }
    }

    #[test]
    fn source_specs_parse() {
        for s in ["An:n=3", "Gn:n=5", "pell:delta=-3", "curve:a=-1,b=0", "projective:n=2", "affine:n=1", "torus:n=2", "f1n:n=3"] {
            assert!(s.parse::<SourceSpec>().is_ok(), "{s}");
        }
        for s in ["", "curve:a=1", "curve:a=0,b=0", "pell:delta=2", "projective:m=1", "zz:n=1", "An:n=x"] {
            assert!(s.parse::<SourceSpec>().is_err(), "{s}");
        }
        let spec: SourceSpec = "curve:a=-1,b=0".parse().unwrap();
        assert_eq!(spec.to_string(), "curve:a=-1,b=0");
    }
}
