//! Puiseux polynomials: finite sums `sum a_i t^{e_i}` with rational
//! coefficients and non-negative rational exponents.
//!
//! Values at positive integers are handled exactly. The integer `q` is
//! factored and every `q^{e}` is split into an integer part times a reduced
//! radical `prod p^{v/b}`. Distinct reduced radicals are linearly independent
//! over the rationals, so `f(q)` is rational exactly when every non-trivial
//! radical class has a vanishing coefficient. Irrational values are then
//! bracketed with scaled-integer intervals until the floor is determined.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::factorize;

pub type Rational = Ratio<i128>;

/// Starting precision (fractional bits) of the interval refinement.
const START_BITS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuiseuxError {
    #[error("negative exponent {0}")]
    NegativeExponent(Rational),
    #[error("{q} is not a perfect {d}-th power")]
    NotPerfectPower { q: u64, d: u64 },
    #[error("evaluation point must be a positive integer")]
    ZeroArgument,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxPoly {
    /// `(coefficient, exponent)`, strictly decreasing exponents, no zero coefficients.
    terms: Vec<(Rational, Rational)>,
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(Rational::one(), Rational::one())
    }

    pub fn monomial(coeff: Rational, exponent: Rational) -> Self {
        Self::from_terms([(coeff, exponent)]).expect("monomial exponent must be non-negative")
    }

    /// Canonicalises an arbitrary list of terms: merges equal exponents and
    /// drops zero coefficients.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self, PuiseuxError> {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, e) in terms {
            if e.is_negative() {
                return Err(PuiseuxError::NegativeExponent(e));
            }
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Ok(PuiseuxPoly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (c, e))
                .collect(),
        })
    }

    /// Ordinary polynomial from integer coefficients, lowest degree first.
    pub fn from_int_coeffs(coeffs: &[i128]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (int(c), int(k as i128))),
        )
        .unwrap()
    }

    /// `T (t - 1)^r` expanded.
    pub fn expand_binomial(t_coeff: i128, r: u32) -> Self {
        let mut binom: i128 = 1;
        let mut terms = Vec::with_capacity(r as usize + 1);
        for k in 0..=r {
            if k > 0 {
                binom = binom * (r - k + 1) as i128 / k as i128;
            }
            let sign = if (r - k) % 2 == 0 { 1 } else { -1 };
            terms.push((int(t_coeff * sign * binom), int(k as i128)));
        }
        Self::from_terms(terms).unwrap()
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<Rational> {
        self.terms.first().map(|(_, e)| *e)
    }

    pub fn leading_coefficient(&self) -> Option<Rational> {
        self.terms.first().map(|(c, _)| *c)
    }

    /// Least common denominator of the exponents (1 for ordinary polynomials).
    pub fn exponent_denominator(&self) -> u64 {
        self.terms
            .iter()
            .fold(1i128, |acc, (_, e)| acc.lcm(e.denom())) as u64
    }

    pub fn is_ordinary(&self) -> bool {
        self.exponent_denominator() == 1
    }

    pub fn coefficient(&self, exponent: Rational) -> Rational {
        self.terms
            .iter()
            .find(|(_, e)| *e == exponent)
            .map(|(c, _)| *c)
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).copied()).unwrap()
    }

    pub fn neg(&self) -> Self {
        self.scale(int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, e)| (a * c, *e))).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|(a, e)| other.terms.iter().map(move |(b, g)| (a * b, e + g))),
        )
        .unwrap()
    }

    /// Sum of the coefficients and whether it is an integer.
    pub fn value_at_one(&self) -> (Rational, bool) {
        let v = self.terms.iter().fold(Rational::zero(), |acc, (c, _)| acc + c);
        (v, v.is_integer())
    }

    /// Exact value at `q`, which must be a perfect `d`-th power for the
    /// exponent denominator `d`; the positive real root is used.
    pub fn eval_exact(&self, q: u64) -> Result<Rational, PuiseuxError> {
        if q == 0 {
            return Err(PuiseuxError::ZeroArgument);
        }
        let d = self.exponent_denominator();
        let root = BigUint::from(q).nth_root(d as u32);
        if root.pow(d as u32) != BigUint::from(q) {
            return Err(PuiseuxError::NotPerfectPower { q, d });
        }
        let root = BigInt::from(root);
        let mut acc = BigRational::zero();
        for (c, e) in &self.terms {
            let k = (e * int(d as i128)).to_integer() as u32;
            acc += big(c) * BigRational::from_integer(root.pow(k));
        }
        to_small(&acc).ok_or(PuiseuxError::NotPerfectPower { q, d })
    }

    /// Exact value at `q` when it is rational, `None` when it is irrational.
    pub fn eval_rational(&self, q: u64) -> Option<BigRational> {
        let split = RadicalSplit::new(self, q).ok()?;
        split.is_rational().then_some(split.rational)
    }

    /// `floor(f(q))`.
    pub fn floor_eval(&self, q: u64) -> Result<BigInt, PuiseuxError> {
        let split = RadicalSplit::new(self, q)?;
        Ok(split.floor())
    }

    /// `ceil(f(q))`.
    pub fn ceil_eval(&self, q: u64) -> Result<BigInt, PuiseuxError> {
        let split = RadicalSplit::new(&self.neg(), q)?;
        Ok(-split.floor())
    }

    /// `floor(f(q))` and `ceil(f(q))` together, plus whether `f(q)` is an integer.
    pub fn floor_ceil(&self, q: u64) -> Result<(BigInt, BigInt, bool), PuiseuxError> {
        let split = RadicalSplit::new(self, q)?;
        if split.is_rational() {
            let v = &split.rational;
            return Ok((v.floor().to_integer(), v.ceil().to_integer(), v.is_integer()));
        }
        let fl = split.floor();
        let ce = &fl + 1;
        Ok((fl, ce, false))
    }

    /// Floating-point value at a real `x > 0`, for display only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                let c = *c.numer() as f64 / *c.denom() as f64;
                let e = *e.numer() as f64 / *e.denom() as f64;
                c * x.powf(e)
            })
            .sum()
    }
}

fn to_small(v: &BigRational) -> Option<Rational> {
    Some(Rational::new(v.numer().to_i128()?, v.denom().to_i128()?))
}

/// `f(q) = rational + sum_k coeff_k * radical_k`, where every radical is
/// `root_k^(1/index_k)` with `root_k` not a perfect `index_k`-th power.
struct RadicalSplit {
    rational: BigRational,
    irrational: Vec<(BigRational, BigUint, u32)>,
}

impl RadicalSplit {
    fn new(f: &PuiseuxPoly, q: u64) -> Result<Self, PuiseuxError> {
        if q == 0 {
            return Err(PuiseuxError::ZeroArgument);
        }
        let factors = factorize(q);
        // key: list of (prime, reduced fractional exponent)
        let mut classes: BTreeMap<Vec<(u64, Rational)>, BigRational> = BTreeMap::new();
        for (c, e) in &f.terms {
            let (a, b) = (*e.numer(), *e.denom());
            let mut int_part = BigInt::one();
            let mut key = Vec::new();
            for &(p, k) in &factors {
                let num = k as i128 * a;
                let (whole, frac) = num.div_mod_floor(&b);
                int_part *= BigInt::from(p).pow(whole as u32);
                if frac != 0 {
                    key.push((p, rat(frac, b)));
                }
            }
            *classes.entry(key).or_insert_with(BigRational::zero) +=
                big(c) * BigRational::from_integer(int_part);
        }
        let rational = classes.remove(&Vec::new()).unwrap_or_else(BigRational::zero);
        let irrational = classes
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(key, c)| {
                let index = key.iter().fold(1i128, |acc, (_, r)| acc.lcm(r.denom()));
                let mut root = BigUint::one();
                for (p, r) in &key {
                    let e = (r * int(index)).to_integer() as u32;
                    root *= BigUint::from(*p).pow(e);
                }
                (c, root, index as u32)
            })
            .collect();
        Ok(RadicalSplit {
            rational,
            irrational,
        })
    }

    fn is_rational(&self) -> bool {
        self.irrational.is_empty()
    }

    fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rational.floor().to_integer();
        }
        // Common denominator of all rational coefficients.
        let den = self
            .irrational
            .iter()
            .fold(self.rational.denom().clone(), |acc, (c, _, _)| acc.lcm(c.denom()));
        let mut bits = START_BITS;
        loop {
            let scale = BigInt::one() << bits;
            let modulus = &den * &scale;
            let base = (&self.rational * BigRational::from_integer(modulus.clone())).to_integer();
            let (mut lo, mut hi) = (base.clone(), base);
            for (c, root, index) in &self.irrational {
                // floor(root^(1/index) * 2^bits), strict bracket since irrational
                let shifted = root << (bits as usize * *index as usize);
                let approx = BigInt::from(shifted.nth_root(*index));
                let weight = (c * BigRational::from_integer(den.clone())).to_integer();
                let a = &weight * &approx;
                let b = &weight * (&approx + 1);
                if weight.is_positive() {
                    lo += a;
                    hi += b;
                } else {
                    lo += b;
                    hi += a;
                }
            }
            let (fl_lo, fl_hi) = (lo.div_floor(&modulus), hi.div_floor(&modulus));
            if fl_lo == fl_hi {
                return fl_lo;
            }
            bits *= 2;
        }
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            write!(f, "t")?;
            if e.is_one() {
                continue;
            }
            if e.is_integer() {
                write!(f, "^{e}")?;
            } else {
                write!(f, "^{{{e}}}")?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), PuiseuxError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn error(&self, msg: impl Into<String>) -> PuiseuxError {
        PuiseuxError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<i128, PuiseuxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    /// `n` or `n/d`
    fn rational(&mut self) -> Result<Rational, PuiseuxError> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let d = if self.eat(b'/') { self.integer()? } else { 1 };
        if d == 0 {
            return Err(self.error("zero denominator"));
        }
        Ok(rat(if neg { -n } else { n }, d))
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }
}

impl FromStr for PuiseuxPoly {
    type Err = PuiseuxError;

    /// Accepts e.g. `t + 2t^{1/2} + 1`, `3t^2 - 6t + 3`, `(1/2)t^(3/2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let mut terms = Vec::new();
        if cur.done() {
            return Err(cur.error("empty expression"));
        }
        let mut first = true;
        while !cur.done() {
            let sign = if cur.eat(b'-') {
                -1
            } else if cur.eat(b'+') || first {
                1
            } else {
                return Err(cur.error("expected '+' or '-'"));
            };
            first = false;
            let mut coeff: Option<Rational> = None;
            match cur.peek() {
                Some(b'(') => {
                    cur.pos += 1;
                    coeff = Some(cur.rational()?);
                    cur.expect(b')')?;
                }
                Some(c) if c.is_ascii_digit() => coeff = Some(cur.rational()?),
                _ => {}
            }
            cur.eat(b'*');
            let exponent = if cur.eat(b't') {
                if cur.eat(b'^') {
                    if cur.eat(b'{') {
                        let e = cur.rational()?;
                        cur.expect(b'}')?;
                        e
                    } else if cur.eat(b'(') {
                        let e = cur.rational()?;
                        cur.expect(b')')?;
                        e
                    } else {
                        int(cur.integer()?)
                    }
                } else {
                    Rational::one()
                }
            } else if coeff.is_none() {
                return Err(cur.error("expected a coefficient or 't'"));
            } else {
                Rational::zero()
            };
            let c = coeff.unwrap_or_else(Rational::one) * int(sign);
            terms.push((c, exponent));
        }
        PuiseuxPoly::from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::isqrt;
    use proptest::prelude::*;

    fn p(s: &str) -> PuiseuxPoly {
        s.parse().unwrap()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_expansion() {
        assert_eq!(PuiseuxPoly::expand_binomial(1, 0), PuiseuxPoly::constant(int(1)));
        assert_eq!(PuiseuxPoly::expand_binomial(3, 2), p("3t^2 - 6t + 3"));
        assert_eq!(PuiseuxPoly::expand_binomial(2, 3), p("2t^3 - 6t^2 + 6t - 2"));
    }

    #[test]
    fn cancellation() {
        let f = p("t + 2t^{1/2} + 1");
        let g = p("t - 2t^{1/2} + 1");
        assert_eq!(f.sub(&g), p("4t^{1/2}"));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn exact_evaluation() {
        let c = p("t + 2t^{1/2} + 1");
        let fl = p("t - 2t^{1/2} + 1");
        assert_eq!(c.eval_exact(4), Ok(int(9)));
        assert_eq!(fl.eval_exact(1), Ok(int(0)));
        assert_eq!(c.eval_exact(1), Ok(int(4)));
        assert_eq!(
            c.eval_exact(2),
            Err(PuiseuxError::NotPerfectPower { q: 2, d: 2 })
        );
        assert_eq!(p("(1/2)t^{2/3}").eval_exact(8), Ok(int(2)));
    }

    #[test]
    fn floor_and_ceil() {
        let c = p("t + 2t^{1/2} + 1");
        let fl = p("t - 2t^{1/2} + 1");
        assert_eq!(c.floor_eval(2).unwrap(), bi(5));
        assert_eq!(c.floor_eval(9).unwrap(), bi(16));
        assert_eq!(c.ceil_eval(9).unwrap(), bi(16));
        assert_eq!(fl.ceil_eval(2).unwrap(), bi(1));
        assert_eq!(fl.floor_eval(2).unwrap(), bi(0));
        assert_eq!(p("-t^{1/2}").floor_eval(2).unwrap(), bi(-2));
        assert_eq!(p("-t^{1/2}").ceil_eval(2).unwrap(), bi(-1));
    }

    #[test]
    fn cancelling_radicals_are_detected_exactly() {
        // 4^{3/4} = 2 * 4^{1/4}, so the two irrational terms cancel at q = 4.
        let f = p("t^{3/4} - 2t^{1/4} + 7");
        assert_eq!(f.eval_rational(4), Some(BigRational::from_integer(bi(7))));
        assert_eq!(f.floor_eval(4).unwrap(), bi(7));
        assert_eq!(f.ceil_eval(4).unwrap(), bi(7));
        assert!(f.eval_rational(2).is_none());
    }

    #[test]
    fn value_at_one_flags() {
        assert_eq!(p("t + 2t^{1/2} + 1").value_at_one(), (int(4), true));
        assert_eq!(p("t - 2t^{1/2} + 1").value_at_one(), (int(0), true));
        assert_eq!(p("(1/2)t").value_at_one(), (rat(1, 2), false));
    }

    #[test]
    fn printing_and_parsing() {
        assert_eq!(p("1 + t + 2t^(1/2)").to_string(), "t + 2t^{1/2} + 1");
        assert_eq!(p("-t^2 + 3").to_string(), "-t^2 + 3");
        assert_eq!(p("(1/2)t - 1/3").to_string(), "(1/2)t - 1/3");
        assert_eq!(p("2*t^{3/2}").to_string(), "2t^{3/2}");
        assert_eq!(PuiseuxPoly::zero().to_string(), "0");
        assert!("t +".parse::<PuiseuxPoly>().is_err());
        assert!("".parse::<PuiseuxPoly>().is_err());
        assert!("t^{1/0}".parse::<PuiseuxPoly>().is_err());
        assert!("t^{-1}".parse::<PuiseuxPoly>().is_err());
        assert!("2 3".parse::<PuiseuxPoly>().is_err());
    }

    #[test]
    fn half_power_branch_consistency() {
        let f = p("t^{1/2}");
        for r in 1..300u64 {
            let q = r * r;
            assert_eq!(f.floor_eval(q).unwrap(), BigInt::from(r));
            assert_eq!(f.ceil_eval(q).unwrap(), BigInt::from(r));
        }
    }

    #[test]
    fn genus_envelope_floor_matches_isqrt() {
        for g in [1i128, 2, 3] {
            let f = PuiseuxPoly::from_terms([
                (int(1), int(1)),
                (int(2 * g), rat(1, 2)),
                (int(1), int(0)),
            ])
            .unwrap();
            for q in 1..=100_000u64 {
                let expect = q as u128 + isqrt(4 * (g * g) as u128 * q as u128) + 1;
                assert_eq!(f.floor_eval(q).unwrap(), BigInt::from(expect), "g={g} q={q}");
            }
        }
    }

    #[test]
    fn ordinary_floor_is_exact_value() {
        let f = p("2t^3 - 5t^2 + (1/3)t + 4");
        for q in 1..=10_000u64 {
            let exact = f.eval_exact(q).unwrap();
            assert_eq!(f.floor_eval(q).unwrap(), BigInt::from(exact.floor().to_integer()));
            if exact.is_integer() {
                assert_eq!(f.floor_eval(q).unwrap(), BigInt::from(exact.to_integer()));
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = PuiseuxPoly> {
        prop::collection::vec((-20i128..20, 1i128..4, 0i128..9, 1i128..4), 0..5).prop_map(|ts| {
            PuiseuxPoly::from_terms(ts.into_iter().map(|(n, d, en, ed)| (rat(n, d), rat(en, ed))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly(), c in -5i128..5) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.add(&g).scale(int(c)), f.scale(int(c)).add(&g.scale(int(c))));
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly()) {
            prop_assert_eq!(f.to_string().parse::<PuiseuxPoly>().unwrap(), f);
        }

        #[test]
        fn floor_brackets_float_value(f in arb_poly(), q in 1u64..5000) {
            let (fl, ce, exact) = f.floor_ceil(q).unwrap();
            let approx = f.eval_f64(q as f64);
            prop_assert_eq!(exact, fl == ce);
            prop_assert!(&ce - &fl <= BigInt::one());
            let fl = fl.to_f64().unwrap();
            let ce = ce.to_f64().unwrap();
            let tol = 1e-6 * approx.abs().max(1.0);
            prop_assert!(fl <= approx + tol && approx <= ce + tol);
        }
    }
}
