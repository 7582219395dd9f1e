//! Reflexive binary relations on a finite carrier.
//!
//! An [`Entourage`] stores one [`PointSet`] row per point: `rows[x]` is the
//! ball `B(x; U) = {y : (x, y) ∈ U}`. Composition follows the convention
//! `(x, z) ∈ UV` iff some `y` has `(x, y) ∈ U` and `(y, z) ∈ V`, so that
//! `B(A; UV) = B(B(A; U); V)`.

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::pointset::{PointSet, MAX_POINTS};
use crate::word::{BinaryWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntourageError {
    #[error("carrier size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("relation is not reflexive at point {0}")]
    NotReflexive(usize),
    #[error("pair ({0}, {1}) lies outside the carrier of {2} points")]
    OutOfRange(usize, usize, usize),
    #[error("carrier of {0} points exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Entourage {
    n: usize,
    rows: Vec<PointSet>,
}

impl Entourage {
    /// The diagonal `Δ`.
    pub fn diagonal(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        Entourage {
            n,
            rows: (0..n).map(PointSet::singleton).collect(),
        }
    }

    /// The all-pairs relation `X × X`.
    pub fn full(n: usize) -> Self {
        Entourage {
            n,
            rows: vec![PointSet::full(n); n],
        }
    }

    /// `Δ` together with the given pairs.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, EntourageError> {
        if n > MAX_POINTS {
            return Err(EntourageError::TooLarge(n));
        }
        let mut u = Entourage::diagonal(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(EntourageError::OutOfRange(x, y, n));
            }
            u.rows[x].insert(y);
        }
        Ok(u)
    }

    /// Build from explicit balls; each row must contain its own point.
    pub fn from_rows(rows: Vec<PointSet>) -> Result<Self, EntourageError> {
        let n = rows.len();
        if n > MAX_POINTS {
            return Err(EntourageError::TooLarge(n));
        }
        let full = PointSet::full(n);
        for (x, row) in rows.iter().enumerate() {
            if !row.contains(x) {
                return Err(EntourageError::NotReflexive(x));
            }
            if !row.is_subset(full) {
                let y = (*row - full).first().unwrap_or(0);
                return Err(EntourageError::OutOfRange(x, y, n));
            }
        }
        Ok(Entourage { n, rows })
    }

    /// Each off-diagonal pair is included independently with probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut u = Entourage::diagonal(n);
        for x in 0..n {
            for y in 0..n {
                if x != y && rng.gen_bool(p) {
                    u.rows[x].insert(y);
                }
            }
        }
        u
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> PointSet {
        self.rows[x]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && self.rows[x].contains(y)
    }

    pub fn inverse(&self) -> Entourage {
        let mut rows = vec![PointSet::EMPTY; self.n];
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                rows[y].insert(x);
            }
        }
        Entourage { n: self.n, rows }
    }

    pub fn compose(&self, other: &Entourage) -> Result<Entourage, EntourageError> {
        self.check_size(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Entourage) -> Entourage {
        debug_assert_eq!(self.n, other.n);
        Entourage {
            n: self.n,
            rows: self.rows.iter().map(|&r| other.ball(r)).collect(),
        }
    }

    /// `U^v`: `Δ` for the empty word, then one factor per letter, left first.
    pub fn verbal_power(&self, word: &BinaryWord) -> Entourage {
        StandardAlgebra.verbal_power(self, word)
    }

    /// `B(A; U)`, the union of the rows indexed by `A`.
    pub fn ball(&self, a: PointSet) -> PointSet {
        a.iter()
            .filter(|&x| x < self.n)
            .fold(PointSet::EMPTY, |acc, x| acc | self.rows[x])
    }

    pub fn union(&self, other: &Entourage) -> Result<Entourage, EntourageError> {
        self.zip_rows(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Entourage) -> Result<Entourage, EntourageError> {
        self.zip_rows(other, |a, b| a & b)
    }

    pub fn is_subset(&self, other: &Entourage) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.inverse()
    }

    pub fn is_transitive(&self) -> bool {
        self.compose_unchecked(self).is_subset(self)
    }

    /// `UU = U`. For reflexive relations this is the same as transitivity.
    pub fn is_idempotent(&self) -> bool {
        self.compose_unchecked(self) == *self
    }

    /// The limit `E` of the powers `(U⁻¹U)^k` together with the least `k ≥ 1`
    /// where the sequence becomes constant. `E` is the least equivalence
    /// relation containing `U`.
    pub fn stabilized_equivalence(&self) -> (Entourage, usize) {
        let p = self.inverse().compose_unchecked(self);
        let mut power = p.clone();
        let mut k = 1;
        loop {
            let next = power.compose_unchecked(&p);
            if next == power {
                return (power, k);
            }
            power = next;
            k += 1;
        }
    }

    /// Every pair of the relation, diagonal included, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    fn off_diagonal_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|(x, y)| x != y).collect()
    }

    fn check_size(&self, other: &Entourage) -> Result<(), EntourageError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(EntourageError::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    fn zip_rows(
        &self,
        other: &Entourage,
        f: impl Fn(PointSet, PointSet) -> PointSet,
    ) -> Result<Entourage, EntourageError> {
        self.check_size(other)?;
        Ok(Entourage {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl std::fmt::Debug for Entourage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Entourage(n={}, {:?})",
            self.n,
            self.off_diagonal_pairs()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct EntourageJson {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Serialize for Entourage {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EntourageJson {
            n: self.n,
            pairs: self.off_diagonal_pairs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Entourage {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = EntourageJson::deserialize(deserializer)?;
        Entourage::from_pairs(raw.n, raw.pairs).map_err(serde::de::Error::custom)
    }
}

/// The relation-algebra primitives that verbal powers are built from.
///
/// Analyses and the verification harness take the algebra as a parameter so
/// that a deliberately broken implementation can be swapped in to check that
/// the harness notices.
pub trait RelationAlgebra: Send + Sync {
    fn compose(&self, u: &Entourage, v: &Entourage) -> Entourage;

    fn inverse(&self, u: &Entourage) -> Entourage {
        u.inverse()
    }

    fn verbal_power(&self, u: &Entourage, word: &BinaryWord) -> Entourage {
        let inv = self.inverse(u);
        word.letters()
            .iter()
            .fold(Entourage::diagonal(u.n()), |acc, l| match l {
                Letter::Plus => self.compose(&acc, u),
                Letter::Minus => self.compose(&acc, &inv),
            })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardAlgebra;

impl RelationAlgebra for StandardAlgebra {
    fn compose(&self, u: &Entourage, v: &Entourage) -> Entourage {
        u.compose_unchecked(v)
    }
}
