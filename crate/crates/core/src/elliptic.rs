//! Elliptic curves `y^2 = x^3 + ax + b` over the rationals: point counts over
//! `F_p` by character sums, extension counts by the trace recursion, local
//! zeta factors, and the champion/trailing prime census.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{build_field, is_prime, isqrt, prime_divisors, prime_power, ArithError};
use crate::puiseux::{int, PuiseuxPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("curve y^2 = x^3 + ({a})x + ({b}) is singular")]
    Singular { a: i64, b: i64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("p = {0} is a bad prime for this curve")]
    BadPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("p = {0} is not supersingular")]
    NotSupersingular(u64),
    #[error("count over F_{p}^{m} overflows")]
    Overflow { p: u64, m: u32 },
    #[error("curve csv line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticCurve {
    label: String,
    a: i64,
    b: i64,
}

impl EllipticCurve {
    pub fn new(label: impl Into<String>, a: i64, b: i64) -> Result<Self, EllipticError> {
        let curve = EllipticCurve {
            label: label.into(),
            a,
            b,
        };
        if curve.discriminant() == 0 {
            return Err(EllipticError::Singular { a, b });
        }
        Ok(curve)
    }

    /// Curve with the conventional label `y2=x3+ax+b`.
    pub fn from_coefficients(a: i64, b: i64) -> Result<Self, EllipticError> {
        Self::new(default_label(a, b), a, b)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        -16 * (4 * a * a * a + 27 * b * b)
    }

    /// `{2, 3}` together with the primes dividing the discriminant.
    pub fn bad_primes(&self) -> BTreeSet<u64> {
        let mut s = prime_divisors(self.discriminant());
        s.extend([2, 3]);
        s
    }

    fn check_good(&self, p: u64) -> Result<(), EllipticError> {
        if !is_prime(p) {
            return Err(EllipticError::NotPrime(p));
        }
        if p <= 3 || self.discriminant() % p as i128 == 0 {
            return Err(EllipticError::BadPrime(p));
        }
        Ok(())
    }

    /// `#E(F_p) = p + 1 + sum_x (x^3 + ax + b | p)`.
    pub fn count_fp(&self, p: u64) -> Result<i128, EllipticError> {
        self.check_good(p)?;
        Ok(count_by_character_sum(self.a, self.b, p))
    }

    pub fn trace(&self, p: u64) -> Result<i128, EllipticError> {
        Ok(p as i128 + 1 - self.count_fp(p)?)
    }

    pub fn trace_data(&self, p: u64) -> Result<TraceData, EllipticError> {
        Ok(TraceData {
            p,
            a_p: self.trace(p)?,
        })
    }

    /// `#E(F_{p^m})` through the Frobenius trace recursion.
    pub fn count_extension(&self, p: u64, m: u32) -> Result<i128, EllipticError> {
        if m == 0 {
            return Err(EllipticError::InvalidDegree);
        }
        self.trace_data(p)?.count(m)
    }

    pub fn is_supersingular(&self, p: u64) -> Result<bool, EllipticError> {
        Ok(self.trace(p)? == 0)
    }

    pub fn local_zeta(&self, p: u64) -> Result<LocalZeta, EllipticError> {
        Ok(LocalZeta {
            p,
            a_p: self.trace(p)?,
        })
    }

    pub fn classify_prime(&self, p: u64) -> Result<PrimeClass, EllipticError> {
        Ok(PrimeClass::of_trace(self.trace(p)?, p))
    }

    /// Checks `F_{p^{4k-2}}`-maximality and `F_{p^{4k}}`-minimality for `k = 1..=k_max`.
    pub fn maximal_minimal_check(&self, p: u64, k_max: u32) -> Result<MaximalMinimalReport, EllipticError> {
        let data = self.trace_data(p)?;
        if data.a_p != 0 {
            return Err(EllipticError::NotSupersingular(p));
        }
        let mut checked = Vec::new();
        let pp = p as i128;
        let pow = |e: u32| pp.checked_pow(e).ok_or(EllipticError::Overflow { p, m: e });
        for k in 1..=k_max {
            let m = 4 * k - 2;
            let expected = pow(m)? + 2 * pow(2 * k - 1)? + 1;
            let got = data.count(m)?;
            checked.push(ExtremalCheck { m, maximal: true, expected, got });
            let m = 4 * k;
            let expected = pow(m)? - 2 * pow(2 * k)? + 1;
            let got = data.count(m)?;
            checked.push(ExtremalCheck { m, maximal: false, expected, got });
        }
        let first_failure = checked.iter().find(|c| c.expected != c.got).cloned();
        Ok(MaximalMinimalReport {
            p,
            checked,
            first_failure,
        })
    }

    /// Census of champion, trailing and supersingular primes `p <= x_max`, `p` outside `excluded`.
    /// Bad primes of the curve are always skipped.
    pub fn census(&self, x_max: u64, excluded: &BTreeSet<u64>) -> CensusReport {
        let bad = self.bad_primes();
        let primes: Vec<u64> = crate::arith::primes_up_to(x_max)
            .into_iter()
            .filter(|p| !excluded.contains(p) && !bad.contains(p))
            .collect();
        let rows: Vec<CensusRow> = primes
            .par_iter()
            .map(|&p| {
                let a_p = p as i128 + 1 - count_by_character_sum(self.a, self.b, p);
                CensusRow {
                    p,
                    a_p,
                    class: PrimeClass::of_trace(a_p, p),
                }
            })
            .collect();
        let mut all_excluded = excluded.clone();
        all_excluded.extend(bad);
        CensusReport::new(self.label.clone(), x_max, all_excluded, rows)
    }

    /// Exhaustive projective count over `F_{p^m}`; `p` may be any prime and the field any size
    /// `build_field` accepts.
    pub fn count_oracle(&self, p: u64, m: u32) -> Result<i128, EllipticError> {
        let field = build_field(p, m)?;
        let roots = field.square_counts();
        let (fa, fb) = (field.from_int(self.a as i128), field.from_int(self.b as i128));
        let affine: u64 = field
            .elements()
            .map(|x| {
                let x3 = field.mul(field.mul(x, x), x);
                let rhs = field.add(field.add(x3, field.mul(fa, x)), fb);
                roots[rhs.0 as usize] as u64
            })
            .sum();
        Ok(affine as i128 + 1)
    }

    /// Count over a prime power `q`, for use as a sequence generator.
    pub fn count_prime_power(&self, q: u64) -> Result<i128, EllipticError> {
        let (p, m) = prime_power(q).ok_or(ArithError::NotPrimePower(q))?;
        self.count_extension(p, m)
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, default_label(self.a, self.b))
    }
}

fn default_label(a: i64, b: i64) -> String {
    let mut s = String::from("y2=x3");
    match a {
        0 => {}
        1 => s.push_str("+x"),
        -1 => s.push_str("-x"),
        a => s.push_str(&format!("{a:+}x")),
    }
    if b != 0 {
        s.push_str(&format!("{b:+}"));
    }
    s
}

fn count_by_character_sum(a: i64, b: i64, p: u64) -> i128 {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=p / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    let a = a.rem_euclid(p as i64) as u64;
    let b = b.rem_euclid(p as i64) as u64;
    let mut sum: i64 = 0;
    for x in 0..p {
        let x2 = x * x % p;
        let v = ((x2 + a) % p * x + b) % p;
        sum += chi[v as usize] as i64;
    }
    p as i128 + 1 + sum as i128
}

/// The Frobenius trace at a good prime; determines every extension count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceData {
    pub p: u64,
    pub a_p: i128,
}

impl TraceData {
    /// `a_{p^m}` with `a_{p^0} = 2`, `a_{p^m} = a_p a_{p^{m-1}} - p a_{p^{m-2}}`.
    pub fn trace_power(&self, m: u32) -> Result<i128, EllipticError> {
        let overflow = EllipticError::Overflow { p: self.p, m };
        let p = self.p as i128;
        let (mut prev, mut cur) = (2i128, self.a_p);
        if m == 0 {
            return Ok(2);
        }
        for _ in 1..m {
            let next = self
                .a_p
                .checked_mul(cur)
                .and_then(|x| p.checked_mul(prev).and_then(|y| x.checked_sub(y)))
                .ok_or_else(|| overflow.clone())?;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    pub fn count(&self, m: u32) -> Result<i128, EllipticError> {
        let q = (self.p as i128)
            .checked_pow(m)
            .ok_or(EllipticError::Overflow { p: self.p, m })?;
        Ok(q + 1 - self.trace_power(m)?)
    }

    pub fn satisfies_hasse(&self) -> bool {
        self.a_p * self.a_p <= 4 * self.p as i128
    }
}

/// `Z(E/F_p, T) = (1 - a_p T + p T^2) / ((1 - T)(1 - pT))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalZeta {
    pub p: u64,
    pub a_p: i128,
}

impl LocalZeta {
    /// Numerator coefficients, lowest degree first.
    pub fn numerator(&self) -> [i128; 3] {
        [1, -self.a_p, self.p as i128]
    }

    /// Roots of the denominator factors `(1 - T)` and `(1 - pT)`, as the reciprocal roots `1` and `p`.
    pub fn denominator(&self) -> [i128; 2] {
        [1, self.p as i128]
    }

    pub fn is_supersingular_form(&self) -> bool {
        self.a_p == 0
    }

    /// First `terms + 1` coefficients of the rational function as a power series in `T`.
    pub fn power_series(&self, terms: usize) -> Vec<i128> {
        let p = self.p as i128;
        // 1 / ((1 - T)(1 - pT)) = sum_n (1 + p + ... + p^n) T^n
        let geo: Vec<i128> = (0..=terms).map(|n| (0..=n as u32).map(|k| p.pow(k)).sum()).collect();
        let num = self.numerator();
        (0..=terms)
            .map(|n| (0..3).filter(|&k| k <= n).map(|k| num[k] * geo[n - k]).sum())
            .collect()
    }
}

/// Coefficients of `exp(sum_m N_m T^m / m)` up to `T^{counts.len()}`, with `counts[m-1] = N_m`.
pub fn zeta_series_from_counts(counts: &[i128]) -> Vec<Ratio<i128>> {
    // Z = exp(L), L' = sum N_m T^{m-1}: n z_n = sum_{k=1}^{n} N_k z_{n-k}
    let mut z = vec![Ratio::from_integer(1)];
    for n in 1..=counts.len() {
        let acc: Ratio<i128> = (1..=n).map(|k| z[n - k] * counts[k - 1]).sum();
        z.push(acc / n as i128);
    }
    z
}

impl fmt::Display for LocalZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match self.a_p {
            0 => write!(f, "(1 + {p}T^2)")?,
            a if a > 0 => write!(f, "(1 - {a}T + {p}T^2)")?,
            a => write!(f, "(1 + {}T + {p}T^2)", -a)?,
        }
        write!(f, "/((1-T)(1-{p}T))")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeClass {
    Champion,
    Trailing,
    Supersingular,
    Other,
}

impl PrimeClass {
    /// Champion iff `a_p = -floor(2 sqrt p)`, trailing iff `a_p = floor(2 sqrt p)`.
    pub fn of_trace(a_p: i128, p: u64) -> Self {
        let bound = isqrt(4 * p as u128) as i128;
        if a_p == 0 {
            PrimeClass::Supersingular
        } else if a_p == -bound {
            PrimeClass::Champion
        } else if a_p == bound {
            PrimeClass::Trailing
        } else {
            PrimeClass::Other
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeClass::Champion => "champion",
            PrimeClass::Trailing => "trailing",
            PrimeClass::Supersingular => "supersingular",
            PrimeClass::Other => "other",
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCheck {
    pub m: u32,
    pub maximal: bool,
    pub expected: i128,
    pub got: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalMinimalReport {
    pub p: u64,
    pub checked: Vec<ExtremalCheck>,
    pub first_failure: Option<ExtremalCheck>,
}

impl MaximalMinimalReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub p: u64,
    pub a_p: i128,
    pub class: PrimeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusCounts {
    pub champion: usize,
    pub trailing: usize,
    pub supersingular: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub label: String,
    pub x_max: u64,
    pub excluded: BTreeSet<u64>,
    pub rows: Vec<CensusRow>,
    pub champions: Vec<u64>,
    pub trailing: Vec<u64>,
    pub supersingular: Vec<u64>,
    /// `pi^+(x) / main term`, for reporting only.
    pub ratio_plus: f64,
    /// `pi^-(x) / main term`, for reporting only.
    pub ratio_minus: f64,
}

#[derive(Serialize)]
struct CensusSummary<'a> {
    x_max: u64,
    counts: CensusCounts,
    ratio_plus: f64,
    ratio_minus: f64,
    #[serde(skip_serializing_if = "str::is_empty")]
    label: &'a str,
}

/// `(2 / 3pi) x^{3/4} / ln x`.
pub fn cm_main_term(x: f64) -> f64 {
    2.0 / (3.0 * std::f64::consts::PI) * x.powf(0.75) / x.ln()
}

impl CensusReport {
    fn new(label: String, x_max: u64, excluded: BTreeSet<u64>, rows: Vec<CensusRow>) -> Self {
        let pick = |c: PrimeClass| rows.iter().filter(|r| r.class == c).map(|r| r.p).collect::<Vec<_>>();
        let champions = pick(PrimeClass::Champion);
        let trailing = pick(PrimeClass::Trailing);
        let supersingular = pick(PrimeClass::Supersingular);
        let main = cm_main_term(x_max as f64);
        CensusReport {
            label,
            x_max,
            excluded,
            ratio_plus: champions.len() as f64 / main,
            ratio_minus: trailing.len() as f64 / main,
            rows,
            champions,
            trailing,
            supersingular,
        }
    }

    pub fn counts(&self) -> CensusCounts {
        CensusCounts {
            champion: self.champions.len(),
            trailing: self.trailing.len(),
            supersingular: self.supersingular.len(),
        }
    }

    /// `p,a_p,class` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,a_p,class\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.p, r.a_p, r.class));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let summary = CensusSummary {
            x_max: self.x_max,
            counts: self.counts(),
            ratio_plus: self.ratio_plus,
            ratio_minus: self.ratio_minus,
            label: &self.label,
        };
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    }
}

/// Integer Hasse-Weil envelope for a genus `g` curve over `F_q`, with the matching
/// Puiseux candidates `t -+ 2g t^{1/2} + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HasseWeilBounds {
    pub q: u64,
    pub g: u64,
    pub lower: i128,
    pub upper: i128,
    pub lower_poly: PuiseuxPoly,
    pub upper_poly: PuiseuxPoly,
}

pub fn hasse_weil_bounds(q: u64, g: u64) -> Result<HasseWeilBounds, EllipticError> {
    prime_power(q).ok_or(ArithError::NotPrimePower(q))?;
    let radicand = 4 * (g as u128) * (g as u128) * q as u128;
    let upper = q as i128 + isqrt(radicand) as i128 + 1;
    // smallest integer >= q + 1 - 2g sqrt(q)
    let lower = q as i128 - isqrt(radicand) as i128 + 1;
    let half = crate::puiseux::rat(1, 2);
    let two_g = int(2 * g as i128);
    let make = |sign: i128| {
        PuiseuxPoly::from_terms([(int(1), int(1)), (two_g * int(sign), half), (int(1), int(0))])
            .expect("exponents are non-negative")
    };
    Ok(HasseWeilBounds {
        q,
        g,
        lower,
        upper,
        lower_poly: make(-1),
        upper_poly: make(1),
    })
}

/// Parses `label,a,b` lines; blank lines, `#` comments and a `label,a,b` header are skipped.
pub fn parse_curves_csv(text: &str) -> Result<Vec<EllipticCurve>, EllipticError> {
    let mut curves = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields == ["label", "a", "b"] {
            continue;
        }
        let err = |msg: String| EllipticError::Csv { line: i + 1, msg };
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        }
        let a = fields[1].parse().map_err(|e| err(format!("a: {e}")))?;
        let b = fields[2].parse().map_err(|e| err(format!("b: {e}")))?;
        curves.push(EllipticCurve::new(fields[0], a, b)?);
    }
    Ok(curves)
}

/// `y^2 = x^3 - x`, `x^3 + x`, `x^3 + 1` (CM), `x^3 - 2` and `x^3 - x + 1`.
pub fn fixture_curves() -> Vec<EllipticCurve> {
    [(-1, 0), (1, 0), (0, 1), (0, -2), (-1, 1)]
        .into_iter()
        .map(|(a, b)| EllipticCurve::from_coefficients(a, b).expect("fixtures are nonsingular"))
        .collect()
}

/// The curves among the fixtures with complex multiplication (`j = 1728` or `j = 0`).
pub fn cm_fixture_curves() -> Vec<EllipticCurve> {
    fixture_curves()
        .into_iter()
        .filter(|e| e.a() == 0 || e.b() == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use proptest::prelude::*;

    fn curve(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::from_coefficients(a, b).unwrap()
    }

    #[test]
    fn labels_and_bad_primes() {
        let e = curve(1, 0);
        assert_eq!(e.label(), "y2=x3+x");
        assert_eq!(e.discriminant(), -64);
        assert_eq!(e.bad_primes(), BTreeSet::from([2, 3]));
        assert_eq!(curve(-1, 1).label(), "y2=x3-x+1");
        assert_eq!(curve(0, -2).label(), "y2=x3-2");
        assert_eq!(curve(0, -2).bad_primes(), BTreeSet::from([2, 3]));
        assert!(EllipticCurve::new("sing", 0, 0).is_err());
        assert!(EllipticCurve::new("sing", -3, 2).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(curve(1, 0).count_fp(5).unwrap(), 4);
        assert_eq!(curve(1, 0).count_fp(7).unwrap(), 8);
        assert_eq!(curve(0, 1).count_fp(5).unwrap(), 6);
        assert_eq!(curve(1, 0).count_fp(3), Err(EllipticError::BadPrime(3)));
        assert_eq!(curve(1, 0).count_fp(9), Err(EllipticError::NotPrime(9)));
        assert_eq!(curve(-1, 0).trace(5).unwrap(), -2);
    }

    #[test]
    fn extension_counts() {
        let e = curve(1, 0);
        assert_eq!(e.count_extension(5, 2).unwrap(), 32);
        assert_eq!(e.count_oracle(5, 2).unwrap(), 32);
        for p in [7u64, 11, 19] {
            let pp = p as i128;
            assert_eq!(e.count_extension(p, 2).unwrap(), pp * pp + 2 * pp + 1);
            assert_eq!(e.count_extension(p, 4).unwrap(), pp.pow(4) - 2 * pp * pp + 1);
        }
        assert_eq!(e.count_extension(5, 0), Err(EllipticError::InvalidDegree));
    }

    #[test]
    fn supersingular_examples() {
        assert!(curve(1, 0).is_supersingular(7).unwrap());
        assert!(!curve(1, 0).is_supersingular(5).unwrap());
        assert!(curve(0, 1).is_supersingular(5).unwrap());
    }

    #[test]
    fn local_zeta_display() {
        assert_eq!(curve(1, 0).local_zeta(7).unwrap().to_string(), "(1 + 7T^2)/((1-T)(1-7T))");
        let z = curve(1, 0).local_zeta(5).unwrap();
        assert_eq!(z.numerator(), [1, -2, 5]);
        assert_eq!(z.to_string(), "(1 - 2T + 5T^2)/((1-T)(1-5T))");
    }

    /// `log Z(T) = sum_m N_m T^m / m`; expands the rational function as a power
    /// series and takes its logarithm term by term.
    fn log_expansion_counts(z: &LocalZeta, terms: usize) -> Vec<Ratio<i128>> {
        let p = z.p as i128;
        // 1 / ((1 - T)(1 - pT)) = sum_n (1 + p + ... + p^n) T^n
        let geo: Vec<i128> = (0..=terms).map(|n| (0..=n as u32).map(|k| p.pow(k)).sum()).collect();
        let num = z.numerator();
        let series: Vec<Ratio<i128>> = (0..=terms)
            .map(|n| {
                let s: i128 = (0..3).filter(|&k| k <= n).map(|k| num[k] * geo[n - k]).sum();
                Ratio::from_integer(s)
            })
            .collect();
        // Z = exp(L): n z_n = sum_{k=1}^{n} k l_k z_{n-k}
        let mut l = vec![Ratio::from_integer(0); terms + 1];
        for n in 1..=terms {
            let mut acc = series[n] * Ratio::from_integer(n as i128);
            for k in 1..n {
                acc -= l[k] * Ratio::from_integer(k as i128) * series[n - k];
            }
            l[n] = acc / Ratio::from_integer(n as i128);
        }
        (1..=terms).map(|m| l[m] * Ratio::from_integer(m as i128)).collect()
    }

    #[test]
    fn local_zeta_log_expansion_matches_counts() {
        for e in fixture_curves() {
            for p in [5u64, 7, 11, 13, 17] {
                if e.bad_primes().contains(&p) {
                    continue;
                }
                let counts = log_expansion_counts(&e.local_zeta(p).unwrap(), 4);
                for (i, n) in counts.iter().enumerate() {
                    let m = i as u32 + 1;
                    assert_eq!(*n, Ratio::from_integer(e.count_extension(p, m).unwrap()), "{e} p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn zeta_series_from_counts_matches_rational_function() {
        for e in fixture_curves() {
            for p in [5u64, 7, 13, 101] {
                if e.bad_primes().contains(&p) {
                    continue;
                }
                let z = e.local_zeta(p).unwrap();
                let counts: Vec<i128> = (1..=5).map(|m| e.count_extension(p, m).unwrap()).collect();
                let series: Vec<Ratio<i128>> = z.power_series(5).into_iter().map(Ratio::from_integer).collect();
                assert_eq!(zeta_series_from_counts(&counts), series);
            }
        }
    }

    #[test]
    fn classification_examples() {
        let e = curve(-1, 0);
        assert_eq!(e.classify_prime(5).unwrap(), PrimeClass::Other);
        assert_eq!(e.classify_prime(7).unwrap(), PrimeClass::Supersingular);
        let report = e.census(2000, &BTreeSet::new());
        let champion = report.champions[0];
        let brute = e.count_oracle(champion, 1).unwrap();
        assert_eq!(brute, champion as i128 + 1 + isqrt(4 * champion as u128) as i128);
    }

    #[test]
    fn hasse_bound_over_primes() {
        let primes = primes_up_to(10_000);
        for e in fixture_curves() {
            for &p in &primes {
                if !e.bad_primes().contains(&p) {
                    assert!(e.trace_data(p).unwrap().satisfies_hasse(), "{e} p={p}");
                }
            }
        }
    }

    #[test]
    fn recursion_matches_oracle() {
        for e in fixture_curves() {
            for p in primes_up_to(31) {
                if e.bad_primes().contains(&p) {
                    continue;
                }
                for m in 1..=3 {
                    assert_eq!(e.count_extension(p, m).unwrap(), e.count_oracle(p, m).unwrap(), "{e} p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn maximal_minimal() {
        assert!(curve(1, 0).maximal_minimal_check(7, 2).unwrap().holds());
        assert_eq!(curve(1, 0).maximal_minimal_check(7, 2).unwrap().checked.len(), 4);
        assert!(curve(0, 1).maximal_minimal_check(5, 1).unwrap().holds());
        assert_eq!(
            curve(1, 0).maximal_minimal_check(5, 1),
            Err(EllipticError::NotSupersingular(5))
        );
    }

    #[test]
    fn hasse_weil_examples() {
        let hw = hasse_weil_bounds(25, 1).unwrap();
        assert_eq!((hw.lower, hw.upper), (16, 36));
        let hw = hasse_weil_bounds(7, 1).unwrap();
        assert_eq!((hw.lower, hw.upper), (3, 13));
        assert_eq!(hw.upper_poly.to_string(), "t + 2t^{1/2} + 1");
        let hw = hasse_weil_bounds(11, 0).unwrap();
        assert_eq!((hw.lower, hw.upper), (12, 12));
        assert!(hasse_weil_bounds(12, 1).is_err());
    }

    #[test]
    fn census_small() {
        let e = curve(-1, 0);
        let excl: BTreeSet<u64> = [2, 3, 5, 7].into();
        let report = e.census(10, &excl);
        assert_eq!(report.counts(), CensusCounts { champion: 0, trailing: 0, supersingular: 0 });
        let report = e.census(1000, &BTreeSet::new());
        assert!(report.counts().supersingular > 0);
        assert!(report.supersingular.iter().all(|p| p % 4 == 3));
        assert!(report.to_csv().starts_with("p,a_p,class\n5,-2,other\n7,0,supersingular\n"));
        let json: serde_json::Value = serde_json::from_str(&report.summary_json()).unwrap();
        assert_eq!(json["x_max"], 1000);
        assert!(json["counts"]["champion"].is_u64());
    }

    #[test]
    fn census_is_deterministic_across_pools() {
        let e = curve(0, -2);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| e.census(5000, &BTreeSet::new()))
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn csv_ingestion() {
        let text = "label,a,b\n# comment\nE1,-1,0\n\nE2, 0, 1\n";
        let curves = parse_curves_csv(text).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[1].b(), 1);
        assert!(matches!(parse_curves_csv("E,1"), Err(EllipticError::Csv { line: 1, .. })));
        assert!(matches!(parse_curves_csv("E,0,0"), Err(EllipticError::Singular { .. })));
        assert!(matches!(parse_curves_csv("E,x,0"), Err(EllipticError::Csv { .. })));
    }

    proptest! {
        #[test]
        fn classes_are_exclusive(a in -20i64..20, b in -20i64..20, idx in 0usize..200) {
            prop_assume!(4 * a.pow(3) + 27 * b * b != 0);
            let e = curve(a, b);
            let p = primes_up_to(1300)[idx + 2];
            prop_assume!(!e.bad_primes().contains(&p));
            let a_p = e.trace(p).unwrap();
            let class = e.classify_prime(p).unwrap();
            let bound = isqrt(4 * p as u128) as i128;
            prop_assert_eq!(class == PrimeClass::Champion, a_p == -bound);
            prop_assert_eq!(class == PrimeClass::Trailing, a_p == bound);
            prop_assert!(bound >= 4);
        }
    }
}
