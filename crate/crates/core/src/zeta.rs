//! Absolute zeta functions as formal products `prod (s - rho)^{m(rho)}`
//! over rational roots.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::puiseux::{int, rat, PuiseuxPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `prod_rho (s - rho)^{m(rho)}`; zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FormalProduct {
    factors: BTreeMap<Rational, Rational>,
}

/// Outcome of a functional-equation check `Z(d - s) = sign * Z(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub symmetric: bool,
    /// Present when symmetric and the total multiplicity is an integer.
    pub sign: Option<i8>,
}

impl FormalProduct {
    /// The empty product, i.e. the constant 1.
    pub fn one() -> Self {
        FormalProduct::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut out = FormalProduct::one();
        for (root, m) in factors {
            out.add_multiplicity(root, m);
        }
        out
    }

    fn add_multiplicity(&mut self, root: Rational, m: Rational) {
        let entry = self.factors.entry(root).or_insert_with(Rational::zero);
        *entry += m;
        if entry.is_zero() {
            self.factors.remove(&root);
        }
    }

    pub fn factors(&self) -> &BTreeMap<Rational, Rational> {
        &self.factors
    }

    pub fn multiplicity(&self, root: Rational) -> Rational {
        self.factors.get(&root).copied().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `sum_rho m(rho)`.
    pub fn total_multiplicity(&self) -> Rational {
        self.factors.values().fold(Rational::zero(), |acc, m| acc + m)
    }

    /// Pointwise sum of multiplicities.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (root, m) in &other.factors {
            out.add_multiplicity(*root, *m);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self::from_factors(self.factors.iter().map(|(r, m)| (*r, -m)))
    }

    /// Modified Kurokawa tensor product for real roots:
    /// `m(rho) = - sum_{rho1 + rho2 = rho} m1(rho1) m2(rho2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = FormalProduct::one();
        for (r1, m1) in &self.factors {
            for (r2, m2) in &other.factors {
                out.add_multiplicity(r1 + r2, -(m1 * m2));
            }
        }
        out
    }

    /// `k`-fold tensor power (`k >= 1`).
    pub fn tensor_power(&self, k: u32) -> Self {
        assert!(k >= 1, "tensor power needs k >= 1");
        (1..k).fold(self.clone(), |acc, _| acc.tensor(self))
    }

    /// Rewrites `Z(d - s)` as `sign * prod (s - (d - rho))^{m(rho)}`.
    /// The sign is `(-1)^{sum m}`, absent when that sum is not an integer.
    pub fn reflect(&self, d: Rational) -> (Option<i8>, FormalProduct) {
        let total = self.total_multiplicity();
        let sign = total.is_integer().then(|| {
            if total.to_integer().rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        });
        let reflected = Self::from_factors(self.factors.iter().map(|(r, m)| (d - r, *m)));
        (sign, reflected)
    }

    pub fn check_functional_equation(&self, d: Rational) -> FunctionalEquation {
        let (sign, reflected) = self.reflect(d);
        let symmetric = reflected == *self;
        FunctionalEquation {
            symmetric,
            sign: if symmetric { sign } else { None },
        }
    }
}

/// `prod_{(a, e) in f} (s - e)^{-a}`.
pub fn soule_zeta(f: &PuiseuxPoly) -> FormalProduct {
    FormalProduct::from_factors(f.terms().iter().map(|(a, e)| (*e, -a)))
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, root: &Rational, m: &Rational) -> fmt::Result {
    if root.is_zero() {
        write!(f, "s")?;
    } else if root.is_positive() {
        write!(f, "(s-{root})")?;
    } else {
        write!(f, "(s+{})", root.abs())?;
    }
    if m.is_one() {
        Ok(())
    } else if m.is_integer() {
        write!(f, "^{m}")
    } else {
        write!(f, "^{{{m}}}")
    }
}

fn fmt_group(f: &mut fmt::Formatter<'_>, group: &[(Rational, Rational)]) -> fmt::Result {
    for (i, (r, m)) in group.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        fmt_factor(f, r, m)?;
    }
    Ok(())
}

impl fmt::Display for FormalProduct {
    /// Fraction of monic factors, e.g. `(s-1/2)^2 / (s (s-1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<_> = self
            .factors
            .iter()
            .filter(|(_, m)| m.is_positive())
            .map(|(r, m)| (*r, *m))
            .collect();
        let den: Vec<_> = self
            .factors
            .iter()
            .filter(|(_, m)| m.is_negative())
            .map(|(r, m)| (*r, -m))
            .collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            fmt_group(f, &num)?;
        }
        if den.is_empty() {
            return Ok(());
        }
        write!(f, " / ")?;
        if den.len() == 1 {
            fmt_group(f, &den)
        } else {
            write!(f, "(")?;
            fmt_group(f, &den)?;
            write!(f, ")")
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
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

    fn error(&self, msg: &str) -> ZetaError {
        ZetaError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ZetaError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn integer(&mut self) -> Result<i128, ZetaError> {
        self.peek();
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

    fn rational(&mut self) -> Result<Rational, ZetaError> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let d = if self.eat(b'/') { self.integer()? } else { 1 };
        if d == 0 {
            return Err(self.error("zero denominator"));
        }
        Ok(rat(if neg { -n } else { n }, d))
    }

    fn exponent(&mut self) -> Result<Rational, ZetaError> {
        if !self.eat(b'^') {
            return Ok(Rational::one());
        }
        if self.eat(b'{') {
            let e = self.rational()?;
            self.expect(b'}')?;
            Ok(e)
        } else if self.eat(b'(') {
            let e = self.rational()?;
            self.expect(b')')?;
            Ok(e)
        } else {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            Ok(int(if neg { -n } else { n }))
        }
    }

    /// Factors up to (not including) `/`, `)` or the end.
    fn group(&mut self, out: &mut Vec<(Rational, Rational)>) -> Result<(), ZetaError> {
        if self.eat(b'1') {
            return Ok(());
        }
        if self.factors(out)? == 0 {
            return Err(self.error("expected a factor"));
        }
        Ok(())
    }

    fn factors(&mut self, out: &mut Vec<(Rational, Rational)>) -> Result<usize, ZetaError> {
        let mut count = 0;
        loop {
            match self.peek() {
                Some(b's') => {
                    self.pos += 1;
                    let e = self.exponent()?;
                    out.push((Rational::zero(), e));
                }
                Some(b'(') => {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        count += self.factors(out)?;
                        self.expect(b')')?;
                        continue;
                    }
                    self.expect(b's')?;
                    match self.peek() {
                        Some(sign @ (b'-' | b'+')) => {
                            self.pos += 1;
                            let r = self.rational()?;
                            self.expect(b')')?;
                            let root = if sign == b'-' { r } else { -r };
                            let e = self.exponent()?;
                            out.push((root, e));
                        }
                        _ => {
                            // parenthesised group starting with `s`
                            let e = self.exponent()?;
                            out.push((Rational::zero(), e));
                            count += self.factors(out)?;
                            self.expect(b')')?;
                        }
                    }
                }
                _ => break,
            }
            count += 1;
        }
        Ok(count)
    }
}

impl FromStr for FormalProduct {
    type Err = ZetaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut num = Vec::new();
        let mut den = Vec::new();
        p.group(&mut num)?;
        if p.eat(b'/') {
            p.group(&mut den)?;
        }
        if p.peek().is_some() {
            return Err(p.error("trailing input"));
        }
        Ok(FormalProduct::from_factors(
            num.into_iter()
                .chain(den.into_iter().map(|(r, m)| (r, -m))),
        ))
    }
}

/// `prod_{k=0}^{n} (s - k)^{-1}`, the zeta function of projective `n`-space.
pub fn projective_space_zeta(n: u32) -> FormalProduct {
    FormalProduct::from_factors((0..=n).map(|k| (int(k as i128), int(-1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(s: &str) -> FormalProduct {
        s.parse().unwrap()
    }

    fn pz(s: &str) -> FormalProduct {
        soule_zeta(&s.parse::<PuiseuxPoly>().unwrap())
    }

    #[test]
    fn soule_examples() {
        let c = pz("t + 2t^{1/2} + 1");
        assert_eq!(
            c,
            FormalProduct::from_factors([(int(0), int(-1)), (rat(1, 2), int(-2)), (int(1), int(-1))])
        );
        assert_eq!(c.to_string(), "1 / (s (s-1/2)^2 (s-1))");
        let f = pz("t - 2t^{1/2} + 1");
        assert_eq!(f.to_string(), "(s-1/2)^2 / (s (s-1))");
        assert!(soule_zeta(&PuiseuxPoly::zero()).is_one());
        assert_eq!(FormalProduct::one().to_string(), "1");
    }

    #[test]
    fn tensor_examples() {
        let a = fp("1 / (s (s-1/2))");
        assert_eq!(a.tensor(&a), fp("1 / (s (s-1/2)^2 (s-1))"));
        let b = fp("s / (s-1/2)");
        assert_eq!(b.tensor(&b), fp("(s-1/2)^2 / (s (s-1))"));
        assert!(a.tensor(&FormalProduct::one()).is_one());
        assert_eq!(a.tensor_power(2), a.tensor(&a));
    }

    #[test]
    fn reflect_examples() {
        let p1 = fp("1 / (s (s-1))");
        assert_eq!(p1.reflect(int(1)), (Some(1), p1.clone()));
        let p2 = projective_space_zeta(2);
        assert_eq!(p2.reflect(int(2)), (Some(-1), p2.clone()));
        let fz = fp("(s-1/2)^2 / (s (s-1))");
        assert_eq!(fz.reflect(int(1)), (Some(1), fz.clone()));
    }

    #[test]
    fn functional_equation_examples() {
        let fz = pz("t - 2t^{1/2} + 1");
        assert_eq!(
            fz.check_functional_equation(int(1)),
            FunctionalEquation { symmetric: true, sign: Some(1) }
        );
        let cz = pz("t + 2t^{1/2} + 1");
        assert_eq!(
            cz.check_functional_equation(int(1)),
            FunctionalEquation { symmetric: true, sign: Some(1) }
        );
        assert_eq!(
            fp("1 / (s (s-2))").check_functional_equation(int(1)),
            FunctionalEquation { symmetric: false, sign: None }
        );
        // non-integral total multiplicity: symmetry decided, sign withheld
        let half = FormalProduct::from_factors([
            (int(0), rat(1, 2)),
            (rat(1, 2), rat(1, 2)),
            (int(1), rat(1, 2)),
        ]);
        assert_eq!(
            half.check_functional_equation(int(1)),
            FunctionalEquation { symmetric: true, sign: None }
        );
    }

    #[test]
    fn parse_variants() {
        assert_eq!(fp("s^3"), FormalProduct::from_factors([(int(0), int(3))]));
        assert_eq!(fp("1 / s^3"), FormalProduct::from_factors([(int(0), int(-3))]));
        assert_eq!(fp("(s+2)"), FormalProduct::from_factors([(int(-2), int(1))]));
        assert_eq!(fp("(s-1)^{1/2}"), FormalProduct::from_factors([(int(1), rat(1, 2))]));
        assert!("s /".parse::<FormalProduct>().is_err());
        assert!("(s-1".parse::<FormalProduct>().is_err());
        assert!("x".parse::<FormalProduct>().is_err());
    }

    fn arb_product() -> impl Strategy<Value = FormalProduct> {
        prop::collection::vec((-6i128..12, 1i128..3, -4i128..5), 0..6).prop_map(|fs| {
            FormalProduct::from_factors(fs.into_iter().map(|(n, d, m)| (rat(n, d), int(m))))
        })
    }

    fn arb_poly() -> impl Strategy<Value = PuiseuxPoly> {
        prop::collection::vec((-9i128..9, 0i128..8, 1i128..3), 0..5).prop_map(|ts| {
            PuiseuxPoly::from_terms(ts.into_iter().map(|(c, n, d)| (int(c), rat(n, d)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn soule_is_additive_to_multiplicative(f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!(soule_zeta(&f.add(&g)), soule_zeta(&f).mul(&soule_zeta(&g)));
        }

        #[test]
        fn tensor_commutes_and_sums(a in arb_product(), b in arb_product()) {
            let t = a.tensor(&b);
            prop_assert_eq!(&t, &b.tensor(&a));
            prop_assert_eq!(
                t.total_multiplicity(),
                -(a.total_multiplicity() * b.total_multiplicity())
            );
        }

        #[test]
        fn reflect_is_an_involution(z in arb_product(), dn in -4i128..8, dd in 1i128..3) {
            let d = rat(dn, dd);
            let (s1, once) = z.reflect(d);
            let (s2, twice) = once.reflect(d);
            prop_assert_eq!(&twice, &z);
            prop_assert_eq!(s1.unwrap() * s2.unwrap(), 1);
            if z.total_multiplicity().to_integer() % 2 == 0 {
                prop_assert_eq!(s1, Some(1));
            }
        }

        #[test]
        fn print_parse_round_trip(z in arb_product()) {
            prop_assert_eq!(z.to_string().parse::<FormalProduct>().unwrap(), z);
        }
    }
}
