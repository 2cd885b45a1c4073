//! Point counts and ceiling/floor polynomials for punctured affine lines,
//! punctured tori and Pell conics, each paired with an exhaustive oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{build_field, is_prime, is_square, legendre, prime_divisors, ArithError, FieldElement, FiniteField};
use crate::puiseux::PuiseuxPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("discriminant must be nonzero")]
    ZeroDiscriminant,
    #[error("discriminant {0} is not 0 or 1 mod 4")]
    BadCongruence(i64),
    #[error("parameter n = {0} out of range")]
    BadParameter(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("bad family spec '{0}' (expected An:n=3, Gn:n=5 or pell:delta=5)")]
    BadSpec(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `t - c` for an integer `c`.
fn shifted_t(c: i128) -> PuiseuxPoly {
    PuiseuxPoly::from_int_coeffs(&[-c, 1])
}

fn check_prime(p: u64) -> Result<(), SchemeError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(SchemeError::NotPrime(p))
    }
}

/// `#A_n(F_q) = q - min{p, n}` for `A_n = A^1 \ {0, 1, ..., n-1}`.
pub fn count_an(n: u64, p: u64, m: u32) -> i128 {
    p.pow(m) as i128 - p.min(n) as i128
}

/// `#G_n(F_q) = (q - 1) - gcd(q - 1, n - 1)` for `G_n = G_m \ mu_{n-1}`.
pub fn count_gn(n: u64, p: u64, m: u32) -> Result<i128, SchemeError> {
    if n < 2 {
        return Err(SchemeError::BadParameter(n));
    }
    let units = p.pow(m) - 1;
    Ok(units as i128 - units.gcd(&(n - 1)) as i128)
}

/// Removes the images of `0, 1, ..., n-1` from `F_q` and counts the rest.
pub fn count_an_oracle(n: u64, p: u64, m: u32) -> Result<i128, SchemeError> {
    let field = build_field(p, m)?;
    let removed: BTreeSet<FieldElement> = (0..n).map(|k| field.from_int(k as i128)).collect();
    Ok(field.elements().filter(|x| !removed.contains(x)).count() as i128)
}

/// Counts `x != 0` with `x^{n-1} != 1` by enumeration.
pub fn count_gn_oracle(n: u64, p: u64, m: u32) -> Result<i128, SchemeError> {
    if n < 2 {
        return Err(SchemeError::BadParameter(n));
    }
    let field = build_field(p, m)?;
    Ok(field
        .elements()
        .filter(|&x| x != field.zero() && field.pow(x, n - 1) != field.one())
        .count() as i128)
}

/// `n_1 = min_{p not in S} min{p, n}`.
fn smallest_prime_outside(excluded: &BTreeSet<u64>) -> u64 {
    (2..).find(|&p| is_prime(p) && !excluded.contains(&p)).unwrap()
}

/// Ceiling and floor polynomials of `A_n` over `Z[S^{-1}]`: `(t - n_1, t - n)`.
pub fn envelopes_an(n: u64, excluded: &BTreeSet<u64>) -> (PuiseuxPoly, PuiseuxPoly) {
    let n1 = smallest_prime_outside(excluded).min(n);
    (shifted_t(n1 as i128), shifted_t(n as i128))
}

/// Ceiling and floor polynomials of `G_n` over `Z[S^{-1}]`: `(t - n_2, t - n)`
/// with `n_2 = 3` if `n` is odd and `2 in S`, else 2.
pub fn envelopes_gn(n: u64, excluded: &BTreeSet<u64>) -> Result<(PuiseuxPoly, PuiseuxPoly), SchemeError> {
    if n < 2 {
        return Err(SchemeError::BadParameter(n));
    }
    let n2 = if n % 2 == 1 && excluded.contains(&2) { 3 } else { 2 };
    Ok((shifted_t(n2), shifted_t(n as i128)))
}

/// The Pell conic of discriminant `delta`:
/// `x^2 - (delta/4) y^2 = 1` when `delta = 0 mod 4`,
/// `x^2 + xy + ((1 - delta)/4) y^2 = 1` when `delta = 1 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PellConic {
    delta: i64,
}

impl PellConic {
    pub fn new(delta: i64) -> Result<Self, SchemeError> {
        if delta == 0 {
            return Err(SchemeError::ZeroDiscriminant);
        }
        if !matches!(delta.rem_euclid(4), 0 | 1) {
            return Err(SchemeError::BadCongruence(delta));
        }
        Ok(PellConic { delta })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// `S_Delta`, the primes dividing the discriminant.
    pub fn bad_primes(&self) -> BTreeSet<u64> {
        prime_divisors(self.delta as i128)
    }

    pub fn is_square(&self) -> bool {
        is_square(self.delta as i128)
    }

    /// `#C(F_{p^m})` by the four-case formula.
    pub fn count(&self, p: u64, m: u32) -> Result<i128, SchemeError> {
        check_prime(p)?;
        let q = p.pow(m) as i128;
        let d = self.delta as i128;
        Ok(if p != 2 {
            if d % p as i128 != 0 {
                let chi = legendre(d, p)? as i128;
                q - chi.pow(m)
            } else {
                2 * q
            }
        } else if d % 2 != 0 {
            let e = ((d * d - 1) / 8) * m as i128;
            q - if e % 2 == 0 { 1 } else { -1 }
        } else {
            q
        })
    }

    /// Counts solutions over `F_{p^m}` by enumeration (oracle bound applies).
    pub fn count_oracle(&self, p: u64, m: u32) -> Result<i128, SchemeError> {
        let field = build_field(p, m)?;
        Ok(self.count_in(&field))
    }

    fn count_in(&self, field: &FiniteField) -> i128 {
        let d = self.delta as i128;
        if field.characteristic() == 2 || field.size() <= 400 {
            return self.count_pairs(field);
        }
        // Odd characteristic: x -> x + y/2 turns the 1 mod 4 form into
        // x^2 - (delta/4) y^2 = 1, so count y and look up square roots.
        let k = field.mul(field.from_int(d), field.inv(field.from_int(4)).unwrap());
        let squares = field.square_counts();
        field
            .elements()
            .map(|y| {
                let v = field.add(field.one(), field.mul(k, field.mul(y, y)));
                squares[v.0 as usize] as i128
            })
            .sum()
    }

    /// Direct double loop over `F_q^2`.
    fn count_pairs(&self, field: &FiniteField) -> i128 {
        let d = self.delta as i128;
        let one = field.one();
        let mut count = 0;
        for x in field.elements() {
            let xx = field.mul(x, x);
            for y in field.elements() {
                let yy = field.mul(y, y);
                let lhs = if d.rem_euclid(4) == 0 {
                    field.sub(xx, field.mul(field.from_int(d / 4), yy))
                } else {
                    let c = field.from_int((1 - d) / 4);
                    field.add(field.add(xx, field.mul(x, y)), field.mul(c, yy))
                };
                if lhs == one {
                    count += 1;
                }
            }
        }
        count
    }

    /// Ceiling and floor polynomials over `Z[S^{-1}]`.
    pub fn envelopes(&self, excluded: &BTreeSet<u64>) -> (PuiseuxPoly, PuiseuxPoly) {
        let bad = self.bad_primes();
        let odd_bad_inverted = bad.iter().filter(|&&p| p != 2).all(|p| excluded.contains(p));
        let ceiling = if !odd_bad_inverted {
            PuiseuxPoly::from_int_coeffs(&[0, 2])
        } else if !self.is_square() {
            shifted_t(-1)
        } else if bad.iter().all(|p| excluded.contains(p)) {
            shifted_t(1)
        } else {
            // even square, 2 not inverted
            PuiseuxPoly::t()
        };
        (ceiling, shifted_t(1))
    }

    /// Ceiling and floor Puiseux polynomials of the generic fibre.
    pub fn qfiber_envelopes(&self) -> (PuiseuxPoly, PuiseuxPoly) {
        let ceiling = if self.is_square() { shifted_t(1) } else { shifted_t(-1) };
        (ceiling, shifted_t(1))
    }
}

/// A family selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PuncturedLine(u64),
    PuncturedTorus(u64),
    Pell(PellConic),
}

impl Family {
    pub fn count(&self, p: u64, m: u32) -> Result<i128, SchemeError> {
        match self {
            Family::PuncturedLine(n) => Ok(count_an(*n, p, m)),
            Family::PuncturedTorus(n) => count_gn(*n, p, m),
            Family::Pell(c) => c.count(p, m),
        }
    }

    pub fn count_oracle(&self, p: u64, m: u32) -> Result<i128, SchemeError> {
        match self {
            Family::PuncturedLine(n) => count_an_oracle(*n, p, m),
            Family::PuncturedTorus(n) => count_gn_oracle(*n, p, m),
            Family::Pell(c) => c.count_oracle(p, m),
        }
    }

    pub fn envelopes(&self, excluded: &BTreeSet<u64>) -> Result<(PuiseuxPoly, PuiseuxPoly), SchemeError> {
        match self {
            Family::PuncturedLine(n) => Ok(envelopes_an(*n, excluded)),
            Family::PuncturedTorus(n) => envelopes_gn(*n, excluded),
            Family::Pell(c) => Ok(c.envelopes(excluded)),
        }
    }
}

impl FromStr for Family {
    type Err = SchemeError;

    /// `An:n=3`, `Gn:n=5`, `pell:delta=5`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SchemeError::BadSpec(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let (key, value) = arg.split_once('=').ok_or_else(bad)?;
        match (kind.trim(), key.trim()) {
            ("An", "n") => {
                let n: u64 = value.trim().parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(SchemeError::BadParameter(0));
                }
                Ok(Family::PuncturedLine(n))
            }
            ("Gn", "n") => {
                let n: u64 = value.trim().parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(SchemeError::BadParameter(n));
                }
                Ok(Family::PuncturedTorus(n))
            }
            ("pell", "delta") => Ok(Family::Pell(PellConic::new(
                value.trim().parse().map_err(|_| bad())?,
            )?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::PuncturedLine(n) => write!(f, "An:n={n}"),
            Family::PuncturedTorus(n) => write!(f, "Gn:n={n}"),
            Family::Pell(c) => write!(f, "pell:delta={}", c.delta),
        }
    }
}

/// All `delta` with `|delta| <= bound` and `delta = 0, 1 mod 4`, `delta != 0`.
pub fn valid_discriminants(bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&d| d != 0 && matches!(d.rem_euclid(4), 0 | 1))
        .collect()
}
