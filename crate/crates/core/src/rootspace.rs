//! Classical root systems over exact rationals.
//!
//! Weights are linear forms on the Cartan subalgebra written in the
//! ε-basis: `n` coordinates for `A_{n-1}` and `ℓ` coordinates for
//! `B_ℓ`, `C_ℓ`, `D_ℓ`. The scalar product is the one induced by the
//! Killing form,
//!
//! ```text
//! ⟨x, y⟩ = (x̂ · ŷ) / (2c)
//! ```
//!
//! where `c` is the Killing constant of the family (`B(X, Y) = c·tr(XY)` in
//! the defining representation for `sp`/`so`, `2n·tr(XY)` for `su_n`) and
//! `x̂` is the trace-free projection for family A (identity otherwise).
//!
//! Family-A weights keep whatever representative they were built from,
//! e.g. `π_k = ε_1 + ⋯ + ε_k`; equality and every scalar product see only
//! the projection, so adding a multiple of `ε_1 + ⋯ + ε_n` is invisible.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }

    /// Smallest rank accepted for the family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::D => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A classical simple Lie algebra: `A_ℓ = su_{ℓ+1}`, `B_ℓ = so_{2ℓ+1}`,
/// `C_ℓ = sp_ℓ`, `D_ℓ = so_{2ℓ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraType {
    family: Family,
    rank: usize,
}

impl AlgebraType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::config(format!(
                "{family}{rank}: rank must be at least {}",
                family.min_rank()
            )));
        }
        Ok(AlgebraType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ε-coordinates of a weight.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Killing constant `c`: A_{n−1}: n, B_n: 2n−1, C_n: 2(n+1), D_n: 2(n−1).
    pub fn killing_constant(&self) -> Q {
        let n = self.rank as i64;
        int(match self.family {
            Family::A => n + 1,
            Family::B => 2 * n - 1,
            Family::C => 2 * (n + 1),
            Family::D => 2 * (n - 1),
        })
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Exact linear form in ε-coordinates.
#[derive(Debug, Clone)]
pub struct Weight {
    algebra: AlgebraType,
    coeffs: Vec<Q>,
}

impl Weight {
    pub fn zero(algebra: AlgebraType) -> Self {
        Weight {
            algebra,
            coeffs: vec![Q::zero(); algebra.ambient_dim()],
        }
    }

    pub fn from_coeffs(algebra: AlgebraType, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != algebra.ambient_dim() {
            return Err(Error::usage(format!(
                "{algebra} weights have {} coordinates, got {}",
                algebra.ambient_dim(),
                coeffs.len()
            )));
        }
        Ok(Weight { algebra, coeffs })
    }

    pub fn from_ints(algebra: AlgebraType, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(algebra, coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `ε_i`, 1-based.
    pub fn epsilon(algebra: AlgebraType, i: usize) -> Self {
        let mut w = Weight::zero(algebra);
        w.coeffs[i - 1] = Q::one();
        w
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    /// Stored ε-coordinates (the representative, not the projection).
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Canonical representative: trace-free for family A, unchanged otherwise.
    pub fn projected(&self) -> Weight {
        match self.algebra.family {
            Family::A => {
                let n = int(self.coeffs.len() as i64);
                let mean = self.coeffs.iter().fold(Q::zero(), |acc, c| acc + c) / n;
                Weight {
                    algebra: self.algebra,
                    coeffs: self.coeffs.iter().map(|c| c - &mean).collect(),
                }
            }
            _ => self.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Weight::zero(self.algebra)
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(&Q, &Q) -> Q) -> Weight {
        assert_eq!(
            self.algebra, other.algebra,
            "weight arithmetic across different algebras"
        );
        Weight {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Killing scalar product; panics on mismatched algebras.
    pub(crate) fn dot(&self, other: &Weight) -> Q {
        debug_assert_eq!(self.algebra, other.algebra);
        let raw = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b);
        let euclid = match self.algebra.family {
            Family::A => {
                let sx = self.coeffs.iter().fold(Q::zero(), |acc, c| acc + c);
                let sy = other.coeffs.iter().fold(Q::zero(), |acc, c| acc + c);
                if sx.is_zero() || sy.is_zero() {
                    raw
                } else {
                    raw - sx * sy / int(self.coeffs.len() as i64)
                }
            }
            _ => raw,
        };
        euclid / (int(2) * self.algebra.killing_constant())
    }

    /// `2⟨self, root⟩ / ⟨root, root⟩`.
    pub(crate) fn coroot_pairing(&self, root: &Weight) -> Q {
        int(2) * self.dot(root) / root.dot(root)
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        if self.algebra != other.algebra {
            return false;
        }
        match self.algebra.family {
            Family::A => {
                // Equal iff the difference is a multiple of ε_1 + ⋯ + ε_n.
                let d0 = &self.coeffs[0] - &other.coeffs[0];
                self.coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .all(|(a, b)| a - b == d0)
            }
            _ => self.coeffs == other.coeffs,
        }
    }
}

impl Eq for Weight {}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "{}*e{}", rational::format(&mag), i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Q> for &Weight {
    type Output = Weight;
    fn mul(self, rhs: &Q) -> Weight {
        self.scale(rhs)
    }
}

impl Mul<&Q> for Weight {
    type Output = Weight;
    fn mul(self, rhs: &Q) -> Weight {
        self.scale(rhs)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(mut iter: I) -> Weight {
        let first = iter
            .next()
            .expect("summing an empty weight iterator needs an explicit zero");
        iter.fold(first, |acc, w| &acc + &w)
    }
}

/// `⟨x, y⟩` induced by the Killing form.
pub fn inner(x: &Weight, y: &Weight) -> Result<Q> {
    if x.algebra != y.algebra {
        return Err(Error::usage(format!(
            "inner product of weights of {} and {}",
            x.algebra, y.algebra
        )));
    }
    Ok(x.dot(y))
}

fn signed_pair(algebra: AlgebraType, i: usize, j: usize, sign: i64) -> Weight {
    let mut w = Weight::epsilon(algebra, i);
    w.coeffs[j - 1] = int(sign);
    w
}

/// Simple roots in the standard order; for D the fork tips are `ℓ−1`, `ℓ`.
pub fn simple_roots(algebra: AlgebraType) -> Vec<Weight> {
    let l = algebra.rank;
    let mut roots: Vec<Weight> = (1..l).map(|i| signed_pair(algebra, i, i + 1, -1)).collect();
    roots.push(match algebra.family {
        Family::A => signed_pair(algebra, l, l + 1, -1),
        Family::B => Weight::epsilon(algebra, l),
        Family::C => Weight::epsilon(algebra, l).scale(&int(2)),
        Family::D => signed_pair(algebra, l - 1, l, 1),
    });
    roots
}

/// Positive roots: `ε_i − ε_j`, then `ε_i + ε_j` (B, C, D), then `ε_i` (B) or `2ε_i` (C).
pub fn positive_roots(algebra: AlgebraType) -> Vec<Weight> {
    let n = algebra.ambient_dim();
    let mut roots = Vec::with_capacity(algebra.positive_root_count());
    for i in 1..=n {
        for j in i + 1..=n {
            roots.push(signed_pair(algebra, i, j, -1));
        }
    }
    if algebra.family != Family::A {
        for i in 1..=n {
            for j in i + 1..=n {
                roots.push(signed_pair(algebra, i, j, 1));
            }
        }
    }
    match algebra.family {
        Family::B => roots.extend((1..=n).map(|i| Weight::epsilon(algebra, i))),
        Family::C => roots.extend((1..=n).map(|i| Weight::epsilon(algebra, i).scale(&int(2)))),
        _ => {}
    }
    roots
}

/// Fundamental weight `π_k` (1-based node index) as a closed-form representative.
pub fn fundamental_weight(algebra: AlgebraType, node: usize) -> Result<Weight> {
    let l = algebra.rank;
    if node == 0 || node > l {
        return Err(Error::usage(format!(
            "node index {node} out of range 1..={l} for {algebra}"
        )));
    }
    let half = rational::frac(1, 2);
    let prefix = |k: usize, value: &Q| {
        let mut w = Weight::zero(algebra);
        for c in w.coeffs.iter_mut().take(k) {
            *c = value.clone();
        }
        w
    };
    let w = match (algebra.family, node) {
        (Family::B, k) if k == l => prefix(l, &half),
        (Family::D, k) if k == l => prefix(l, &half),
        (Family::D, k) if k == l - 1 => {
            let mut w = prefix(l, &half);
            w.coeffs[l - 1] = -half;
            w
        }
        (_, k) => prefix(k, &Q::one()),
    };
    Ok(w)
}

/// Precomputed root data for one algebra.
#[derive(Debug)]
pub struct RootSystem {
    pub algebra: AlgebraType,
    pub simple: Vec<Weight>,
    pub positive: Vec<Weight>,
    /// Expansion of each positive root in simple roots (non-negative integers).
    pub positive_coeffs: Vec<Vec<i64>>,
    pub fundamental: Vec<Weight>,
    /// `adjacent[i][j]` iff nodes `i+1` and `j+1` are joined in the Dynkin diagram.
    pub adjacent: Vec<Vec<bool>>,
}

impl RootSystem {
    fn build(algebra: AlgebraType) -> Self {
        let simple = simple_roots(algebra);
        let positive = positive_roots(algebra);
        let fundamental: Vec<Weight> = (1..=algebra.rank)
            .map(|k| fundamental_weight(algebra, k).expect("index in range"))
            .collect();
        let positive_coeffs = positive
            .iter()
            .map(|root| {
                fundamental
                    .iter()
                    .zip(&simple)
                    .map(|(pi, alpha)| {
                        let c = int(2) * pi.dot(root) / alpha.dot(alpha);
                        debug_assert!(c.is_integer());
                        c.to_integer().try_into().expect("small root coefficient")
                    })
                    .collect()
            })
            .collect();
        let adjacent = simple
            .iter()
            .map(|a| simple.iter().map(|b| !a.dot(b).is_zero() && a != b).collect())
            .collect();
        RootSystem {
            algebra,
            simple,
            positive,
            positive_coeffs,
            fundamental,
            adjacent,
        }
    }

    pub fn simple_root(&self, node: usize) -> &Weight {
        &self.simple[node - 1]
    }

    pub fn fundamental_weight(&self, node: usize) -> &Weight {
        &self.fundamental[node - 1]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent[a - 1][b - 1]
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.algebra.rank).filter(move |&b| self.is_adjacent(node, b))
    }
}

/// Shared, lazily built root system for `algebra`.
pub fn root_system(algebra: AlgebraType) -> Arc<RootSystem> {
    static CACHE: OnceLock<Mutex<HashMap<AlgebraType, Arc<RootSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rs) = cache.lock().expect("root cache poisoned").get(&algebra) {
        return Arc::clone(rs);
    }
    let built = Arc::new(RootSystem::build(algebra));
    cache
        .lock()
        .expect("root cache poisoned")
        .entry(algebra)
        .or_insert(built)
        .clone()
}
