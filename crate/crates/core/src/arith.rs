//! Exact integer utilities: primes, prime powers, integer square roots,
//! Legendre symbols and small finite fields used by the brute-force oracles.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field size `build_field` accepts unless a bound is passed explicitly.
pub const DEFAULT_ORACLE_BOUND: u64 = 30_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the Legendre symbol needs an odd prime, got {0}")]
    EvenModulus(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("field of size {q} exceeds the oracle bound {bound}")]
    OracleBound { q: u128, bound: u64 },
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("no irreducible polynomial of degree {m} found over F_{p}")]
    NoIrreducible { p: u64, m: u32 },
}

/// Largest `s` with `s*s <= n`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton from an upper bound; decreasing until it stabilises.
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// Smallest `s` with `s*s >= n`.
pub fn isqrt_ceil(n: u128) -> u128 {
    let s = isqrt(n);
    if s * s == n {
        s
    } else {
        s + 1
    }
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let s = isqrt(n as u128);
        s * s == n as u128
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Sieve of Eratosthenes; `sieve[n]` is true iff `n` is prime.
pub fn prime_sieve(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    prime_sieve(limit)
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Set of primes dividing `n` (`n != 0`).
pub fn prime_divisors(n: i128) -> BTreeSet<u64> {
    factorize(n.unsigned_abs() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// Returns `(p, m)` with `q = p^m` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a/p)` via Euler's criterion.
pub fn legendre(a: i128, p: u64) -> Result<i8, ArithError> {
    if p % 2 == 0 {
        return Err(ArithError::EvenModulus(p));
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    PrimePowers,
    PrimesOnly,
    NaturalsFrom2,
}

/// `q = p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub m: u32,
}

/// One index of a sequence domain. `base` is absent for the naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainPoint {
    pub q: u64,
    pub base: Option<PrimePower>,
}

impl DomainPoint {
    pub fn prime_power(p: u64, m: u32) -> Self {
        DomainPoint {
            q: p.pow(m),
            base: Some(PrimePower { p, m }),
        }
    }

    pub fn natural(n: u64) -> Self {
        DomainPoint { q: n, base: None }
    }
}

impl fmt::Display for DomainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Some(PrimePower { p, m: 1 }) => write!(f, "{p}"),
            Some(PrimePower { p, m }) => write!(f, "{}={p}^{m}", self.q),
            None => write!(f, "{}", self.q),
        }
    }
}

/// The index sets the sequences live on: prime powers or primes avoiding a
/// finite excluded set, or the integers from 2, all bounded by `limit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerDomain {
    excluded: BTreeSet<u64>,
    kind: DomainKind,
    limit: u64,
}

impl PrimePowerDomain {
    pub fn new(
        kind: DomainKind,
        excluded: impl IntoIterator<Item = u64>,
        limit: u64,
    ) -> Result<Self, ArithError> {
        if limit < 2 {
            return Err(ArithError::InvalidDomain(format!("limit {limit} < 2")));
        }
        let excluded: BTreeSet<u64> = excluded.into_iter().collect();
        if let Some(&bad) = excluded.iter().find(|&&p| !is_prime(p)) {
            return Err(ArithError::NotPrime(bad));
        }
        Ok(PrimePowerDomain {
            excluded,
            kind,
            limit,
        })
    }

    pub fn prime_powers(excluded: impl IntoIterator<Item = u64>, limit: u64) -> Result<Self, ArithError> {
        Self::new(DomainKind::PrimePowers, excluded, limit)
    }

    pub fn primes_only(excluded: impl IntoIterator<Item = u64>, limit: u64) -> Result<Self, ArithError> {
        Self::new(DomainKind::PrimesOnly, excluded, limit)
    }

    pub fn naturals_from_2(limit: u64) -> Result<Self, ArithError> {
        Self::new(DomainKind::NaturalsFrom2, [], limit)
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn with_limit(&self, limit: u64) -> Result<Self, ArithError> {
        Self::new(self.kind, self.excluded.iter().copied(), limit)
    }

    pub fn contains(&self, q: u64) -> bool {
        if q < 2 || q > self.limit {
            return false;
        }
        match self.kind {
            DomainKind::NaturalsFrom2 => true,
            DomainKind::PrimesOnly => is_prime(q) && !self.excluded.contains(&q),
            DomainKind::PrimePowers => {
                prime_power(q).is_some_and(|(p, _)| !self.excluded.contains(&p))
            }
        }
    }

    /// All indices in strictly increasing order.
    pub fn enumerate(&self) -> Vec<DomainPoint> {
        match self.kind {
            DomainKind::NaturalsFrom2 => (2..=self.limit).map(DomainPoint::natural).collect(),
            DomainKind::PrimesOnly => primes_up_to(self.limit)
                .into_iter()
                .filter(|p| !self.excluded.contains(p))
                .map(|p| DomainPoint::prime_power(p, 1))
                .collect(),
            DomainKind::PrimePowers => {
                let mut out = Vec::new();
                for p in primes_up_to(self.limit) {
                    if self.excluded.contains(&p) {
                        continue;
                    }
                    let mut q = p;
                    let mut m = 1;
                    loop {
                        out.push(DomainPoint {
                            q,
                            base: Some(PrimePower { p, m }),
                        });
                        match q.checked_mul(p) {
                            Some(next) if next <= self.limit => {
                                q = next;
                                m += 1;
                            }
                            _ => break,
                        }
                    }
                }
                out.sort_unstable_by_key(|d| d.q);
                out
            }
        }
    }
}

/// Element of a small finite field, encoded as `sum c_i p^i` over its
/// coordinates in the polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

/// `F_{p^m}` as `F_p[x]/(f)` with `f` monic irreducible of degree `m`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    m: u32,
    size: u32,
    /// Monic modulus, lowest coefficient first, length `m + 1`.
    modulus: Vec<u64>,
    /// `exp[k] = g^k` and `log[g^k] = k` for a fixed generator `g`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds `F_{p^m}` with the default oracle bound.
pub fn build_field(p: u64, m: u32) -> Result<FiniteField, ArithError> {
    build_field_bounded(p, m, DEFAULT_ORACLE_BOUND)
}

pub fn build_field_bounded(p: u64, m: u32, bound: u64) -> Result<FiniteField, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if m == 0 {
        return Err(ArithError::InvalidDegree);
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > bound as u128 {
        return Err(ArithError::OracleBound { q, bound });
    }
    let modulus = first_irreducible(p, m).ok_or(ArithError::NoIrreducible { p, m })?;
    let mut field = FiniteField {
        p,
        m,
        size: q as u32,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
    };
    field.build_tables();
    Ok(field)
}

fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = index % p;
        index /= p;
    }
    out
}

fn trim(poly: &mut Vec<u64>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - lead * bc % p) % p;
            }
        }
        r.pop();
    }
    trim(&mut r);
    r
}

/// Exhaustive search in increasing coefficient order for a monic irreducible
/// polynomial of degree `m`; irreducibility by trial division with every
/// monic polynomial of degree at most `m/2`.
fn first_irreducible(p: u64, m: u32) -> Option<Vec<u64>> {
    let m = m as usize;
    if m == 1 {
        return Some(vec![0, 1]);
    }
    let count = p.pow(m as u32);
    (0..count).find_map(|idx| {
        let mut f = digits(idx, p, m);
        f.push(1);
        let reducible = (1..=m / 2).any(|d| {
            (0..p.pow(d as u32)).any(|j| {
                let mut g = digits(j, p, d);
                g.push(1);
                poly_rem_monic(&f, &g, p).iter().all(|&c| c == 0)
            })
        });
        (!reducible).then_some(f)
    })
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i128) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i128) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u64> {
        digits(x.0 as u64, self.p, self.m as usize)
    }

    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        let v = coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c % self.p);
        FieldElement(v as u32)
    }

    fn build_tables(&mut self) {
        let n = self.size - 1;
        let g = (1..self.size)
            .map(FieldElement)
            .find(|&a| self.order_with(a, |x, y| self.mul_poly(x, y)) == Some(n as u64))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.size as usize];
        let mut x = FieldElement(1);
        for k in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = k;
            x = self.mul_poly(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u32;
        if self.m == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..self.m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p as u32;
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        for _ in 0..self.m {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.size - 1;
        let k = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[k as usize])
    }

    /// Schoolbook product in `F_p[x]/(f)`.
    pub fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut prod = vec![0u64; ca.len() + cb.len() - 1];
        for (i, x) in ca.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.from_coords(&poly_rem_monic(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != self.zero()).then(|| self.pow(a, self.size() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Option<u64> {
        self.order_with(a, |x, y| self.mul(x, y))
    }

    fn order_with(
        &self,
        a: FieldElement,
        mul: impl Fn(FieldElement, FieldElement) -> FieldElement,
    ) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let pow = |mut base: FieldElement, mut e: u64| {
            let mut acc = FieldElement(1);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let n = self.size() - 1;
        let mut order = n;
        for (r, _) in factorize(n) {
            while order % r == 0 && pow(a, order / r) == FieldElement(1) {
                order /= r;
            }
        }
        Some(order)
    }

    /// The generator behind the log tables: smallest encoding of order `q - 1`.
    pub fn generator(&self) -> FieldElement {
        if self.size == 2 {
            return FieldElement(1);
        }
        FieldElement(self.exp[1])
    }

    /// `counts[v]` = number of `y` with `y^2 = v`, indexed by encoding.
    pub fn square_counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.size as usize];
        for y in self.elements() {
            counts[self.mul(y, y).0 as usize] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(92), 9);
        assert_eq!(isqrt_ceil(92), 10);
        assert_eq!(isqrt(u128::MAX), u64::MAX as u128);
    }

    #[test]
    fn isqrt_bracket_up_to_a_million() {
        for n in 0..=1_000_000u128 {
            let s = isqrt(n);
            assert!(s * s <= n && n < (s + 1) * (s + 1), "n = {n}");
        }
    }

    #[test]
    fn legendre_examples_and_errors() {
        assert_eq!(legendre(5, 5), Ok(0));
        assert_eq!(legendre(2, 3), Ok(-1));
        assert_eq!(legendre(4, 5), Ok(1));
        assert_eq!(legendre(-1, 7), Ok(-1));
        assert_eq!(legendre(3, 2), Err(ArithError::EvenModulus(2)));
        assert_eq!(legendre(3, 9), Err(ArithError::NotPrime(9)));
    }

    #[test]
    fn legendre_sums_vanish() {
        for p in primes_up_to(1000).into_iter().skip(1) {
            let s: i64 = (0..p as i128).map(|a| legendre(a, p).unwrap() as i64).sum();
            assert_eq!(s, 0, "p = {p}");
        }
    }

    proptest! {
        #[test]
        fn legendre_is_multiplicative(a in -100_000i128..100_000, b in -100_000i128..100_000, idx in 1usize..1229) {
            let p = primes_up_to(10_000)[idx];
            prop_assert_eq!(
                legendre(a * b, p).unwrap(),
                legendre(a, p).unwrap() * legendre(b, p).unwrap()
            );
        }
    }

    #[test]
    fn enumerate_examples() {
        let qs = |d: &PrimePowerDomain| {
            d.enumerate()
                .iter()
                .map(|pt| {
                    let b = pt.base.unwrap();
                    (b.p, b.m, pt.q)
                })
                .collect::<Vec<_>>()
        };
        let all = PrimePowerDomain::prime_powers([], 10).unwrap();
        assert_eq!(
            qs(&all),
            vec![(2, 1, 2), (3, 1, 3), (2, 2, 4), (5, 1, 5), (7, 1, 7), (2, 3, 8), (3, 2, 9)]
        );
        let odd = PrimePowerDomain::prime_powers([2], 10).unwrap();
        assert_eq!(qs(&odd), vec![(3, 1, 3), (5, 1, 5), (7, 1, 7), (3, 2, 9)]);
        let primes = PrimePowerDomain::primes_only([], 10).unwrap();
        assert_eq!(
            primes.enumerate().iter().map(|d| d.q).collect::<Vec<_>>(),
            vec![2, 3, 5, 7]
        );
        let nat = PrimePowerDomain::naturals_from_2(5).unwrap();
        assert!(nat.enumerate().iter().all(|d| d.base.is_none()));
        assert_eq!(nat.enumerate().len(), 4);
    }

    #[test]
    fn domain_validation() {
        assert!(PrimePowerDomain::prime_powers([], 1).is_err());
        assert_eq!(
            PrimePowerDomain::prime_powers([4], 10),
            Err(ArithError::NotPrime(4))
        );
    }

    #[test]
    fn enumerate_matches_sieve_oracle() {
        let limit = 100_000u64;
        let sieve = prime_sieve(limit);
        for excluded in [vec![], vec![2], vec![3, 5, 7]] {
            let dom = PrimePowerDomain::prime_powers(excluded.clone(), limit).unwrap();
            let got: Vec<u64> = dom.enumerate().iter().map(|d| d.q).collect();
            assert!(got.windows(2).all(|w| w[0] < w[1]));
            // Oracle: a number is a prime power iff its smallest prime factor
            // divides it down to 1.
            let mut spf = vec![0u64; limit as usize + 1];
            for p in (2..=limit).filter(|&p| sieve[p as usize]) {
                for k in (p..=limit).step_by(p as usize) {
                    if spf[k as usize] == 0 {
                        spf[k as usize] = p;
                    }
                }
            }
            let expected: Vec<u64> = (2..=limit)
                .filter(|&n| {
                    let sp = spf[n as usize];
                    let mut r = n;
                    while r % sp == 0 {
                        r /= sp;
                    }
                    r == 1 && !excluded.contains(&sp)
                })
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn build_field_examples() {
        let f5 = build_field(5, 1).unwrap();
        assert_eq!(f5.size(), 5);
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(f9.order(f9.generator()), Some(8));
        assert!(matches!(build_field(4, 1), Err(ArithError::NotPrime(4))));
        assert!(matches!(
            build_field(97, 3),
            Err(ArithError::OracleBound { .. })
        ));
    }

    #[test]
    fn fields_satisfy_axioms() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 2), (7, 3), (2, 6), (13, 2)] {
            let f = build_field(p, m).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u64, p.pow(m));
            let n = f.size() - 1;
            let step = (elems.len() / 17).max(1);
            for &a in elems.iter().step_by(step) {
                if a != f.zero() {
                    assert_eq!(f.pow(a, n), f.one());
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in elems.iter().step_by(step + 3) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b));
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    for &c in elems.iter().step_by(step + 5) {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }
}
