//! Finite monoid schemes described by the unit groups of their stalks.
//!
//! A point `x` carries `O_{X,x}^* = Z^{r_x} x prod_j Z/t_{x,j}` with the
//! torsion given as a divisibility chain. Point counts of the Z-lift and the
//! ceiling/floor polynomials only depend on these invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, prime_power};
use crate::puiseux::{int, PuiseuxPoly};
use crate::zeta::FormalProduct;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("torsion entry 0 is not allowed")]
    ZeroTorsion,
    #[error("torsion {0:?} is not a divisibility chain of entries >= 2")]
    NotAChain(Vec<u64>),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid monoid scheme JSON: {0}")]
    Json(String),
}

/// Stalk invariants `(r_x, [t_{x,1} | ... | t_{x,l}])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonoidSchemePoint {
    #[serde(rename = "r")]
    rank: u32,
    torsion: Vec<u64>,
}

/// Invariant factors (a divisibility chain, entries >= 2) of
/// `prod Z/n_i` for arbitrary orders `n_i >= 1`.
pub fn invariant_factors(orders: &[u64]) -> Result<Vec<u64>, MonoidError> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &n in orders {
        if n == 0 {
            return Err(MonoidError::ZeroTorsion);
        }
        for (p, e) in factorize(n) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut chain = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go to the end of the chain
        for (slot, pw) in chain.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= pw;
        }
    }
    Ok(chain)
}

impl MonoidSchemePoint {
    /// Validated constructor: `torsion` must already be a chain.
    pub fn new(rank: u32, torsion: Vec<u64>) -> Result<Self, MonoidError> {
        let chain_ok = torsion.iter().all(|&t| t >= 2)
            && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(MonoidError::NotAChain(torsion));
        }
        Ok(MonoidSchemePoint { rank, torsion })
    }

    /// Accepts any list of cyclic orders (prime powers, 1s, unordered) and
    /// re-chains it.
    pub fn from_orders(rank: u32, orders: &[u64]) -> Result<Self, MonoidError> {
        Ok(MonoidSchemePoint {
            rank,
            torsion: invariant_factors(orders)?,
        })
    }

    /// Strict prime-power decomposition input, as used by some references.
    pub fn from_prime_powers(rank: u32, powers: &[u64]) -> Result<Self, MonoidError> {
        if let Some(&bad) = powers.iter().find(|&&n| n != 1 && prime_power(n).is_none()) {
            return Err(MonoidError::NotPrimePower(bad));
        }
        Self::from_orders(rank, powers)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// `T_x = prod_j t_{x,j}`.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// `T_{x,S} = prod_j 2^{e_j}` with `e_j = 1` iff `2 | t_j` and `2 in S`.
    pub fn torsion_order_away_from(&self, excluded: &BTreeSet<u64>) -> u64 {
        if !excluded.contains(&2) {
            return 1;
        }
        1 << self.torsion.iter().filter(|&&t| t % 2 == 0).count()
    }

    /// `n^{r_x} prod_j gcd(n, t_{x,j})`.
    pub fn count_f1n(&self, n: u64) -> i128 {
        let n128 = n as i128;
        self.torsion
            .iter()
            .fold(n128.pow(self.rank), |acc, &t| acc * n.gcd(&t) as i128)
    }
}

#[derive(Deserialize)]
struct RawPoint {
    r: u32,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl<'de> Deserialize<'de> for MonoidSchemePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPoint::deserialize(d)?;
        MonoidSchemePoint::from_orders(raw.r, &raw.torsion).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidScheme {
    pub label: String,
    pub points: Vec<MonoidSchemePoint>,
}

impl MonoidScheme {
    pub fn new(label: impl Into<String>, points: Vec<MonoidSchemePoint>) -> Self {
        MonoidScheme {
            label: label.into(),
            points,
        }
    }

    pub fn from_json(s: &str) -> Result<Self, MonoidError> {
        serde_json::from_str(s).map_err(|e| MonoidError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("monoid schemes always serialise")
    }

    /// `R_X = max r_x` (0 when empty).
    pub fn max_rank(&self) -> u32 {
        self.points.iter().map(|x| x.rank).max().unwrap_or(0)
    }

    /// `T_X = prod_x T_x`.
    pub fn torsion_order(&self) -> u64 {
        self.points.iter().map(|x| x.torsion_order()).product()
    }

    /// `#X(F_{1^n}) = sum_x n^{r_x} prod_j gcd(n, t_{x,j})`.
    pub fn count_f1n(&self, n: u64) -> i128 {
        self.points.iter().map(|x| x.count_f1n(n)).sum()
    }

    /// `#X_Z(F_q) = #X(F_{1^{q-1}})`.
    pub fn count_zlift(&self, q: u64) -> Result<i128, MonoidError> {
        if prime_power(q).is_none() {
            return Err(MonoidError::NotPrimePower(q));
        }
        Ok(self.count_f1n(q - 1))
    }

    /// `sum_x T_x (t - 1)^{r_x}`.
    pub fn ceiling_poly(&self) -> PuiseuxPoly {
        self.weighted_poly(|x| x.torsion_order())
    }

    /// `sum_x T_{x,S} (t - 1)^{r_x}`.
    pub fn floor_poly(&self, excluded: &BTreeSet<u64>) -> PuiseuxPoly {
        self.weighted_poly(|x| x.torsion_order_away_from(excluded))
    }

    fn weighted_poly(&self, weight: impl Fn(&MonoidSchemePoint) -> u64) -> PuiseuxPoly {
        self.points.iter().fold(PuiseuxPoly::zero(), |acc, x| {
            acc.add(&PuiseuxPoly::expand_binomial(weight(x) as i128, x.rank))
        })
    }

    /// `prod_{k=0}^{R_X} (s - k)^{sum_x T_x (-1)^{r_x - k + 1} C(r_x, k)}`.
    pub fn zeta_product(&self) -> FormalProduct {
        self.weighted_zeta(|x| x.torsion_order())
    }

    pub fn zeta_floor_product(&self, excluded: &BTreeSet<u64>) -> FormalProduct {
        self.weighted_zeta(|x| x.torsion_order_away_from(excluded))
    }

    fn weighted_zeta(&self, weight: impl Fn(&MonoidSchemePoint) -> u64) -> FormalProduct {
        let r_max = self.max_rank();
        FormalProduct::from_factors((0..=r_max).map(|k| {
            let exponent: i128 = self
                .points
                .iter()
                .filter(|x| x.rank >= k)
                .map(|x| {
                    let sign = if (x.rank - k + 1) % 2 == 0 { 1 } else { -1 };
                    weight(x) as i128 * sign * binomial(x.rank, k)
                })
                .sum();
            (int(k as i128), int(exponent))
        }))
    }

    /// Ceiling and floor polynomials of `(#X(F_{1^{n-1}}))_{n >= 2}`.
    pub fn f1_ceiling_floor(&self) -> (PuiseuxPoly, PuiseuxPoly) {
        (self.ceiling_poly(), self.weighted_poly(|_| 1))
    }

    /// Ceiling and floor Puiseux polynomials of the generic fibre.
    pub fn qfiber_ceiling_floor(&self) -> (PuiseuxPoly, PuiseuxPoly) {
        (self.ceiling_poly(), self.floor_poly(&BTreeSet::from([2])))
    }

    /// Disjoint union: concatenation of the point lists.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        MonoidScheme {
            label: format!("{} + {}", self.label, other.label),
            points: self.points.iter().chain(&other.points).cloned().collect(),
        }
    }

    /// Fibre product over `F_1`: pairs of points, ranks added, torsion groups
    /// summed and re-chained.
    pub fn product(&self, other: &Self) -> Self {
        let points = self
            .points
            .iter()
            .flat_map(|x| {
                other.points.iter().map(move |y| {
                    let orders: Vec<u64> = x.torsion.iter().chain(&y.torsion).copied().collect();
                    MonoidSchemePoint::from_orders(x.rank + y.rank, &orders)
                        .expect("chains have no zero entries")
                })
            })
            .collect();
        MonoidScheme {
            label: format!("{} x {}", self.label, other.label),
            points,
        }
    }

    /// `spec F_1[A]` for `A = Z^r x prod Z/t_j`: a single point.
    pub fn affine_group_scheme(rank: u32, orders: &[u64]) -> Result<Self, MonoidError> {
        let pt = MonoidSchemePoint::from_orders(rank, orders)?;
        Ok(MonoidScheme::new(format!("spec F1[{pt}]"), vec![pt]))
    }

    /// Affine `n`-space: one point of rank `k` for each `k`-subset.
    pub fn affine_space(n: u32) -> Self {
        let points = (0..=n)
            .flat_map(|k| (0..binomial(n, k)).map(move |_| MonoidSchemePoint { rank: k, torsion: vec![] }))
            .collect();
        MonoidScheme::new(format!("A^{n}"), points)
    }

    /// Projective `n`-space: `C(n+1, k+1)` points of rank `k`.
    pub fn projective_space(n: u32) -> Self {
        let points = (0..=n)
            .flat_map(|k| {
                (0..binomial(n + 1, k + 1)).map(move |_| MonoidSchemePoint { rank: k, torsion: vec![] })
            })
            .collect();
        MonoidScheme::new(format!("P^{n}"), points)
    }

    /// Split torus of rank `n`.
    pub fn torus(n: u32) -> Self {
        MonoidScheme::new(
            if n == 1 { "Gm".to_string() } else { format!("Gm^{n}") },
            vec![MonoidSchemePoint { rank: n, torsion: vec![] }],
        )
    }

    /// `spec F_{1^n}`, whose Z-lift is `mu_n`.
    pub fn spec_f1n(n: u64) -> Result<Self, MonoidError> {
        let pt = MonoidSchemePoint::from_orders(0, &[n])?;
        Ok(MonoidScheme::new(format!("spec F1^{n}"), vec![pt]))
    }

    pub fn empty() -> Self {
        MonoidScheme::new("empty", vec![])
    }
}

impl fmt::Display for MonoidSchemePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.rank)?;
        for t in &self.torsion {
            write!(f, " x Z/{t}")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}
