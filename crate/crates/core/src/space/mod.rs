//! Finite topological spaces in minimal-open-set form.
//!
//! A finite topology is determined by the smallest open set `U_x` around each
//! point `x`. The table `x ↦ U_x` is a preorder (reflexive and transitive),
//! and the open sets are exactly the unions of minimal opens.

mod generate;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::entourage::Entourage;
use crate::pointset::{PointSet, MAX_POINTS};

pub use generate::{enumerate_all_spaces, named, random_space, MAX_ENUMERATION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyViolation {
    MissingEmptySet,
    MissingCarrier,
    UnionMissing(PointSet, PointSet),
    IntersectionMissing(PointSet, PointSet),
    NotUnionOfMinimalOpens(PointSet),
    PointOutOfRange(usize),
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyViolation::MissingEmptySet => write!(f, "the empty set is missing"),
            TopologyViolation::MissingCarrier => write!(f, "the full carrier is missing"),
            TopologyViolation::UnionMissing(a, b) => {
                write!(f, "the union of {a} and {b} is missing")
            }
            TopologyViolation::IntersectionMissing(a, b) => {
                write!(f, "the intersection of {a} and {b} is missing")
            }
            TopologyViolation::NotUnionOfMinimalOpens(o) => {
                write!(f, "{o} is not a union of minimal open sets")
            }
            TopologyViolation::PointOutOfRange(x) => write!(f, "point {x} is outside the carrier"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("not a topology: {0}")]
    NotATopology(TopologyViolation),
    #[error("minimal open set of point {point} is invalid: {reason}")]
    InvalidMinimalOpen { point: usize, reason: String },
    #[error("{0} is not open")]
    NotOpen(PointSet),
    #[error("carrier of {0} points exceeds the limit of {MAX_POINTS}")]
    TooLarge(usize),
    #[error("{what} exceeds the budget of {budget}")]
    BudgetExceeded { what: &'static str, budget: usize },
    #[error("unknown space generator {0:?}")]
    UnknownName(String),
    #[error("bad generator parameters in {0:?}")]
    BadParameters(String),
    #[error("labels: expected {expected}, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("space JSON needs one of \"min_open\", \"preorder_edges\" or \"open_sets\"")]
    MissingTable,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    min_open: Vec<PointSet>,
    labels: Option<Vec<String>>,
}

impl FiniteSpace {
    /// Validate the table `x ↦ U_x`: `x ∈ U_x`, `U_x` inside the carrier, and
    /// `y ∈ U_x ⟹ U_y ⊆ U_x`.
    pub fn from_min_open(min_open: Vec<PointSet>) -> Result<Self, SpaceError> {
        let n = min_open.len();
        if n > MAX_POINTS {
            return Err(SpaceError::TooLarge(n));
        }
        let full = PointSet::full(n);
        for (x, &ux) in min_open.iter().enumerate() {
            let bad = |reason: String| SpaceError::InvalidMinimalOpen { point: x, reason };
            if !ux.contains(x) {
                return Err(bad(format!("{ux} does not contain {x}")));
            }
            if !ux.is_subset(full) {
                return Err(bad(format!("{ux} leaves the carrier")));
            }
            if let Some(y) = ux.iter().find(|&y| !min_open[y].is_subset(ux)) {
                return Err(bad(format!("contains {y} but not U_{y} = {}", min_open[y])));
            }
        }
        Ok(FiniteSpace {
            min_open,
            labels: None,
        })
    }

    /// `U_x = {y : (x, y)}` in the reflexive-transitive closure of `edges`.
    pub fn from_preorder(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SpaceError> {
        if n > MAX_POINTS {
            return Err(SpaceError::TooLarge(n));
        }
        let mut rows: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (x, y) in edges {
            let bad = x.max(y);
            if bad >= n {
                return Err(SpaceError::NotATopology(
                    TopologyViolation::PointOutOfRange(bad),
                ));
            }
            rows[x].insert(y);
        }
        // Warshall on bit rows
        for k in 0..n {
            let rk = rows[k];
            for row in rows.iter_mut() {
                if row.contains(k) {
                    *row |= rk;
                }
            }
        }
        Ok(FiniteSpace {
            min_open: rows,
            labels: None,
        })
    }

    /// Strictly validate a family of open sets. Nothing is completed: the
    /// family must already contain `∅`, the carrier, and be closed under
    /// binary unions and intersections.
    pub fn from_open_sets(n: usize, opens: &[PointSet]) -> Result<Self, SpaceError> {
        if n > MAX_POINTS {
            return Err(SpaceError::TooLarge(n));
        }
        let full = PointSet::full(n);
        let violation = |v| Err(SpaceError::NotATopology(v));
        if let Some(o) = opens.iter().find(|o| !o.is_subset(full)) {
            return violation(TopologyViolation::PointOutOfRange(
                (*o - full).first().unwrap(),
            ));
        }
        let family: std::collections::BTreeSet<PointSet> = opens.iter().copied().collect();
        if !family.contains(&PointSet::EMPTY) {
            return violation(TopologyViolation::MissingEmptySet);
        }
        if !family.contains(&full) {
            return violation(TopologyViolation::MissingCarrier);
        }
        for &a in &family {
            for &b in &family {
                if !family.contains(&(a | b)) {
                    return violation(TopologyViolation::UnionMissing(a, b));
                }
                if !family.contains(&(a & b)) {
                    return violation(TopologyViolation::IntersectionMissing(a, b));
                }
            }
        }
        let min_open: Vec<PointSet> = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, &o| acc & o)
            })
            .collect();
        for &o in &family {
            let union = o.iter().fold(PointSet::EMPTY, |acc, x| acc | min_open[x]);
            if union != o {
                return violation(TopologyViolation::NotUnionOfMinimalOpens(o));
            }
        }
        FiniteSpace::from_min_open(min_open)
    }

    /// The topology generated by a subbasis: `U_x` is the intersection of the
    /// subbasis members containing `x`.
    pub fn generate_topology(n: usize, subbasis: &[PointSet]) -> Result<Self, SpaceError> {
        if n > MAX_POINTS {
            return Err(SpaceError::TooLarge(n));
        }
        let full = PointSet::full(n);
        let min_open = (0..n)
            .map(|x| {
                subbasis
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        FiniteSpace::from_min_open(min_open)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SpaceError> {
        if labels.len() != self.n() {
            return Err(SpaceError::LabelCount {
                expected: self.n(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.min_open.len()
    }

    pub fn carrier(&self) -> PointSet {
        PointSet::full(self.n())
    }

    pub fn min_open(&self, x: usize) -> PointSet {
        self.min_open[x]
    }

    pub fn min_opens(&self) -> &[PointSet] {
        &self.min_open
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// The least neighbourhood assignment: `B(x; V) = U_x`.
    pub fn minimal_entourage(&self) -> Entourage {
        Entourage::from_rows(self.min_open.clone()).expect("minimal opens are reflexive")
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: PointSet) -> PointSet {
        s.iter()
            .fold(PointSet::EMPTY, |acc, x| acc | self.min_open[x])
    }

    /// `{y : U_y ∩ s ≠ ∅}`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        self.min_open
            .iter()
            .enumerate()
            .filter(|(_, u)| u.intersects(s))
            .map(|(y, _)| y)
            .collect()
    }

    /// `{x : U_x ⊆ s}`.
    pub fn interior(&self, s: PointSet) -> PointSet {
        self.min_open
            .iter()
            .enumerate()
            .filter(|(_, u)| u.is_subset(s))
            .map(|(x, _)| x)
            .collect()
    }

    pub fn is_dense(&self, s: PointSet) -> bool {
        self.closure(s) == self.carrier()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        s.is_subset(self.carrier()) && self.open_hull(s) == s
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        s.is_subset(self.carrier()) && self.closure(s) == s
    }

    /// All open sets, in increasing bit order. Fails once more than `budget`
    /// sets would be produced.
    pub fn open_sets(&self, budget: usize) -> Result<Vec<PointSet>, SpaceError> {
        let mut out = Vec::new();
        self.open_sets_rec(0, PointSet::EMPTY, PointSet::EMPTY, budget, &mut out)?;
        out.sort();
        Ok(out)
    }

    // Decide membership of each point in turn: `inside` is forced in by
    // earlier choices, `outside` records points excluded so far.
    fn open_sets_rec(
        &self,
        x: usize,
        inside: PointSet,
        outside: PointSet,
        budget: usize,
        out: &mut Vec<PointSet>,
    ) -> Result<(), SpaceError> {
        if x == self.n() {
            if out.len() >= budget {
                return Err(SpaceError::BudgetExceeded {
                    what: "open-set enumeration",
                    budget,
                });
            }
            out.push(inside);
            return Ok(());
        }
        if inside.contains(x) {
            return self.open_sets_rec(x + 1, inside, outside, budget, out);
        }
        let with = inside | self.min_open[x];
        if !with.intersects(outside) {
            self.open_sets_rec(x + 1, with, outside, budget, out)?;
        }
        self.open_sets_rec(x + 1, inside, outside.with(x), budget, out)
    }

    /// All closed sets: complements of the open sets.
    pub fn closed_sets(&self, budget: usize) -> Result<Vec<PointSet>, SpaceError> {
        let n = self.n();
        let mut closed: Vec<_> = self
            .open_sets(budget)?
            .into_iter()
            .map(|o| o.complement(n))
            .collect();
        closed.sort();
        Ok(closed)
    }

    pub fn is_discrete(&self) -> bool {
        self.min_open
            .iter()
            .enumerate()
            .all(|(x, u)| *u == PointSet::singleton(x))
    }

    /// Closed points everywhere. A finite T1 space is discrete.
    pub fn is_t1(&self) -> bool {
        (0..self.n()).all(|x| self.closure(PointSet::singleton(x)) == PointSet::singleton(x))
    }

    /// The minimal entourage is symmetric, so the minimal opens partition
    /// the carrier.
    pub fn is_partition_topology(&self) -> bool {
        self.minimal_entourage().is_symmetric()
    }

    /// Every non-empty open set contains the closure of a non-empty open set.
    /// Testing minimal opens `U_x` against minimal opens `U_y`, `y ∈ U_x`,
    /// suffices because every open set contains some `U_x` and every
    /// non-empty open set contains some `U_y`.
    pub fn is_quasi_regular(&self) -> bool {
        self.min_open.iter().all(|&ux| {
            ux.iter()
                .any(|y| self.closure(self.min_open[y]).is_subset(ux))
        })
    }

    /// Points are separated from closed sets not containing them. The smallest
    /// open sets around `x` and `F` are `U_x` and the open hull of `F`.
    pub fn is_regular(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            let ux = self.min_open[x];
            // `F` ranges over closed sets missing `x`; the largest one is the
            // complement of `U_x`, and hulls are monotone
            let f = ux.complement(n);
            debug_assert!(self.is_closed(f));
            !self.open_hull(f).intersects(ux)
        })
    }

    /// Disjoint closed sets have disjoint open hulls.
    pub fn is_normal(&self) -> bool {
        let closed = match self.closed_sets(usize::MAX) {
            Ok(c) => c,
            Err(_) => unreachable!("unbounded budget"),
        };
        let hulls: Vec<_> = closed.iter().map(|&f| (f, self.open_hull(f))).collect();
        hulls.iter().all(|&(f1, h1)| {
            hulls
                .iter()
                .all(|&(f2, h2)| f1.intersects(f2) || !h1.intersects(h2))
        })
    }

    /// Normal, and every closed set is a G-delta. In a finite space a G-delta
    /// set is open, so closed sets must be open.
    pub fn is_perfectly_normal(&self) -> bool {
        self.is_normal() && self.is_closed_sets_open()
    }

    fn is_closed_sets_open(&self) -> bool {
        // closed sets are open iff every closure of a point is open
        (0..self.n()).all(|x| self.is_open(self.closure(PointSet::singleton(x))))
    }

    /// Finite spaces are completely regular exactly when they are regular:
    /// both hold precisely for partition topologies.
    pub fn is_completely_regular(&self) -> bool {
        self.is_regular()
    }

    /// Every discrete family of sets expands to a discrete family of open
    /// sets. It suffices to check two-point families `{{a}, {b}}`: a failing
    /// family yields a failing pair and discreteness passes to subfamilies.
    pub fn is_collectively_hausdorff(&self) -> bool {
        let n = self.n();
        let u = &self.min_open;
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let pair = PointSet::singleton(a).with(b);
                let discrete_pair = u.iter().all(|uz| (*uz & pair).len() <= 1);
                !discrete_pair
                    || u.iter()
                        .all(|uz| !(uz.intersects(u[a]) && uz.intersects(u[b])))
            })
        })
    }

    /// The subspace on `points`, re-indexed in ascending order. The minimal
    /// open set of `y` in the subspace is `U_y ∩ Y`.
    pub fn subspace(&self, points: PointSet) -> FiniteSpace {
        let index: Vec<usize> = points.iter().filter(|&x| x < self.n()).collect();
        let reindex = |s: PointSet| -> PointSet {
            index
                .iter()
                .enumerate()
                .filter(|(_, &x)| s.contains(x))
                .map(|(i, _)| i)
                .collect()
        };
        let min_open = index
            .iter()
            .map(|&y| reindex(self.min_open[y] & points))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| index.iter().map(|&x| l[x].clone()).collect());
        FiniteSpace { min_open, labels }
    }

    /// `(O × O) ∪ ((X ∖ O) × X)`.
    pub fn pervin_entourage(&self, o: PointSet) -> Result<Entourage, SpaceError> {
        if !self.is_open(o) {
            return Err(SpaceError::NotOpen(o));
        }
        let full = self.carrier();
        let rows = (0..self.n())
            .map(|x| if o.contains(x) { o } else { full })
            .collect();
        Ok(Entourage::from_rows(rows).expect("Pervin entourages are reflexive"))
    }

    /// Intersection of the Pervin entourages of all open sets.
    pub fn pervin_minimum(&self) -> Result<Entourage, SpaceError> {
        let mut acc = Entourage::full(self.n());
        for o in self.open_sets(1 << 20)? {
            acc = acc
                .intersect(&self.pervin_entourage(o)?)
                .expect("same carrier");
        }
        Ok(acc)
    }

    /// Off-diagonal pairs `(x, y)` with `y ∈ U_x`.
    pub fn preorder_edges(&self) -> Vec<(usize, usize)> {
        self.min_open
            .iter()
            .enumerate()
            .flat_map(|(x, u)| u.iter().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSpace[")?;
        for (x, u) in self.min_open.iter().enumerate() {
            if x > 0 {
                write!(f, " ")?;
            }
            write!(f, "U{}={}", self.label(x), u)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_open: Option<Vec<PointSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preorder_edges: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    open_sets: Option<Vec<PointSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FiniteSpace {
    fn from_json(raw: SpaceJson) -> Result<Self, SpaceError> {
        let space = match (raw.min_open, raw.preorder_edges, raw.open_sets) {
            (Some(rows), _, _) => {
                if rows.len() != raw.n {
                    return Err(SpaceError::BadParameters(format!(
                        "n = {} but {} minimal open sets",
                        raw.n,
                        rows.len()
                    )));
                }
                FiniteSpace::from_min_open(rows)?
            }
            (None, Some(edges), _) => FiniteSpace::from_preorder(raw.n, edges)?,
            (None, None, Some(opens)) => FiniteSpace::from_open_sets(raw.n, &opens)?,
            (None, None, None) => return Err(SpaceError::MissingTable),
        };
        match raw.labels {
            Some(l) => space.with_labels(l),
            None => Ok(space),
        }
    }
}

impl Serialize for FiniteSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpaceJson {
            n: self.n(),
            min_open: Some(self.min_open.clone()),
            preorder_edges: None,
            open_sets: None,
            labels: self.labels.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SpaceJson::deserialize(deserializer)?;
        FiniteSpace::from_json(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    fn sierpinski() -> FiniteSpace {
        named("sierpinski").unwrap()
    }

    fn zigzag3() -> FiniteSpace {
        named("zigzag:3").unwrap()
    }

    // Quasi-regularity straight from the definition, over all open sets.
    fn quasi_regular_oracle(x: &FiniteSpace) -> bool {
        let opens = x.open_sets(usize::MAX).unwrap();
        opens.iter().filter(|o| !o.is_empty()).all(|&u| {
            opens
                .iter()
                .any(|&v| !v.is_empty() && v.is_subset(u) && x.closure(v).is_subset(u))
        })
    }

    // Regularity over every closed set and every point outside it.
    fn regular_oracle(x: &FiniteSpace) -> bool {
        let opens = x.open_sets(usize::MAX).unwrap();
        let closed = x.closed_sets(usize::MAX).unwrap();
        closed.iter().all(|&f| {
            (0..x.n()).filter(|&p| !f.contains(p)).all(|p| {
                opens.iter().any(|&a| {
                    a.contains(p) && opens.iter().any(|&b| f.is_subset(b) && !a.intersects(b))
                })
            })
        })
    }

    // Collective Hausdorffness over all families of pairwise disjoint sets.
    fn collectively_hausdorff_oracle(x: &FiniteSpace) -> bool {
        let n = x.n();
        let u = x.min_opens();
        let discrete = |family: &[PointSet]| {
            u.iter()
                .all(|uz| family.iter().filter(|f| f.intersects(*uz)).count() <= 1)
        };
        // labelled partitions of subsets: assign each point a block or none
        let mut assignment = vec![0usize; n];
        loop {
            let blocks = n;
            let mut family = vec![PointSet::EMPTY; blocks];
            for (p, &b) in assignment.iter().enumerate() {
                if b > 0 {
                    family[b - 1].insert(p);
                }
            }
            let family: Vec<_> = family.into_iter().filter(|f| !f.is_empty()).collect();
            if discrete(&family) {
                let hulls: Vec<_> = family.iter().map(|&f| x.open_hull(f)).collect();
                if !discrete(&hulls) {
                    return false;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return true;
                }
                assignment[i] += 1;
                if assignment[i] <= blocks {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn from_open_sets_examples() {
        let s = FiniteSpace::from_open_sets(2, &[set(&[]), set(&[1]), set(&[0, 1])]).unwrap();
        assert_eq!(s.min_opens(), &[set(&[0, 1]), set(&[1])]);
        assert_eq!(s, sierpinski());
        assert_eq!(
            FiniteSpace::from_open_sets(2, &[set(&[]), set(&[0]), set(&[1])]),
            Err(SpaceError::NotATopology(TopologyViolation::MissingCarrier))
        );
        let all: Vec<_> = PointSet::full(3).subsets().collect();
        assert!(FiniteSpace::from_open_sets(3, &all).unwrap().is_discrete());
        let err =
            FiniteSpace::from_open_sets(3, &[set(&[]), set(&[0]), set(&[1]), set(&[0, 1, 2])])
                .unwrap_err();
        assert_eq!(
            err,
            SpaceError::NotATopology(TopologyViolation::UnionMissing(set(&[0]), set(&[1])))
        );
    }

    #[test]
    fn from_preorder_examples() {
        assert!(FiniteSpace::from_preorder(3, []).unwrap().is_discrete());
        assert_eq!(
            FiniteSpace::from_preorder(2, [(0, 1)]).unwrap(),
            sierpinski()
        );
        let z = FiniteSpace::from_preorder(3, [(0, 1), (2, 1)]).unwrap();
        assert_eq!(z.min_opens(), &[set(&[0, 1]), set(&[1]), set(&[1, 2])]);
        assert_eq!(z, zigzag3());
        let chain = FiniteSpace::from_preorder(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.min_open(0), set(&[0, 1, 2]));
    }

    #[test]
    fn from_min_open_rejects_incoherent_tables() {
        assert!(FiniteSpace::from_min_open(vec![set(&[1]), set(&[1])]).is_err());
        assert!(FiniteSpace::from_min_open(vec![set(&[0, 1]), set(&[1, 2]), set(&[2])]).is_err());
    }

    #[test]
    fn minimal_entourage_examples() {
        assert_eq!(
            named("discrete:3").unwrap().minimal_entourage(),
            Entourage::diagonal(3)
        );
        assert_eq!(
            named("antidiscrete:3").unwrap().minimal_entourage(),
            Entourage::full(3)
        );
        let one = named("one_nonisolated:5").unwrap();
        let expected = Entourage::from_pairs(5, (0..4).map(|y| (4, y))).unwrap();
        assert_eq!(one.minimal_entourage(), expected);
    }

    #[test]
    fn closure_examples() {
        let s = sierpinski();
        assert_eq!(s.closure(set(&[1])), set(&[0, 1]));
        assert!(s.is_dense(set(&[1])));
        assert_eq!(s.closure(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(s.interior(s.carrier()), s.carrier());
        assert_eq!(zigzag3().closure(set(&[1])), set(&[0, 1, 2]));
        let v = zigzag3().minimal_entourage();
        assert_eq!(zigzag3().closure(set(&[1])), v.inverse().ball(set(&[1])));
    }

    #[test]
    fn predicate_examples() {
        let d = named("discrete:3").unwrap();
        assert!(d.is_discrete() && d.is_t1() && d.is_partition_topology() && d.is_quasi_regular());
        assert!(!sierpinski().is_quasi_regular());
        let p = named("partition:2,1").unwrap();
        assert!(p.is_partition_topology());
        assert!(!p.is_t1());
        assert!(p.is_quasi_regular());
    }

    #[test]
    fn predicates_agree_with_definitions() {
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                let partition = x.is_partition_topology();
                assert_eq!(x.is_quasi_regular(), quasi_regular_oracle(&x), "{x:?}");
                assert_eq!(x.is_quasi_regular(), partition, "{x:?}");
                assert_eq!(x.is_regular(), regular_oracle(&x), "{x:?}");
                assert_eq!(x.is_regular(), partition, "{x:?}");
                assert_eq!(x.is_t1(), x.is_discrete(), "{x:?}");
                if n <= 3 {
                    assert_eq!(
                        x.is_collectively_hausdorff(),
                        collectively_hausdorff_oracle(&x),
                        "{x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn open_sets_match_brute_force() {
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                let expected: Vec<_> = x.carrier().subsets().filter(|&s| x.is_open(s)).collect();
                let mut expected = expected;
                expected.sort();
                assert_eq!(x.open_sets(usize::MAX).unwrap(), expected);
                let again = FiniteSpace::from_open_sets(n, &expected).unwrap();
                assert_eq!(again, x);
            }
        }
        assert!(named("discrete:5").unwrap().open_sets(10).is_err());
    }

    #[test]
    fn closure_is_kuratowski() {
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                assert_eq!(x.closure(PointSet::EMPTY), PointSet::EMPTY);
                for a in x.carrier().subsets() {
                    let ca = x.closure(a);
                    assert!(a.is_subset(ca));
                    assert_eq!(x.closure(ca), ca);
                    for b in x.carrier().subsets() {
                        assert_eq!(x.closure(a | b), ca | x.closure(b));
                    }
                }
            }
        }
    }

    #[test]
    fn preorder_round_trip() {
        for x in enumerate_all_spaces(4).unwrap() {
            assert_eq!(
                FiniteSpace::from_preorder(4, x.preorder_edges()).unwrap(),
                x
            );
        }
    }

    #[test]
    fn pervin_examples() {
        let x = zigzag3();
        assert_eq!(x.pervin_entourage(x.carrier()).unwrap(), Entourage::full(3));
        assert_eq!(
            x.pervin_entourage(PointSet::EMPTY).unwrap(),
            Entourage::full(3)
        );
        assert_eq!(
            x.pervin_entourage(set(&[0])),
            Err(SpaceError::NotOpen(set(&[0])))
        );
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                assert_eq!(x.pervin_minimum().unwrap(), x.minimal_entourage());
            }
        }
    }

    #[test]
    fn minimal_entourage_is_idempotent() {
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                assert!(x.minimal_entourage().is_idempotent());
            }
        }
    }

    #[test]
    fn subspace_examples() {
        let one = named("one_nonisolated:4").unwrap();
        let y = one.subspace(set(&[1, 3]));
        assert_eq!(y.min_opens(), &[set(&[0]), set(&[0, 1])]);
        assert_eq!(y.labels().unwrap(), &["1".to_string(), "inf".to_string()]);
        let z = zigzag3().subspace(set(&[0, 2]));
        assert!(z.is_discrete());
    }

    #[test]
    fn json_round_trip_and_alternative_form() {
        let one = named("one_nonisolated:3").unwrap();
        let json = serde_json::to_string(&one).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"min_open":[[0],[1],[0,1,2]],"labels":["0","1","inf"]}"#
        );
        assert_eq!(serde_json::from_str::<FiniteSpace>(&json).unwrap(), one);
        let z: FiniteSpace =
            serde_json::from_str(r#"{"n":3,"preorder_edges":[[0,1],[2,1]]}"#).unwrap();
        assert_eq!(z, zigzag3());
        assert!(serde_json::from_str::<FiniteSpace>(r#"{"n":2}"#).is_err());
        let from_opens: FiniteSpace =
            serde_json::from_str(r#"{"n":2,"open_sets":[[],[1],[0,1]]}"#).unwrap();
        assert_eq!(from_opens, sierpinski());
        let repeated = r#"{"n":2,"open_sets":[[],[0],[1],[0,1],[0,1]]}"#;
        assert!(serde_json::from_str::<FiniteSpace>(repeated)
            .unwrap()
            .is_discrete());
        let err =
            serde_json::from_str::<FiniteSpace>(r#"{"n":3,"open_sets":[[],[0],[1],[0,1,2]]}"#)
                .unwrap_err()
                .to_string();
        assert!(err.contains("union of {0} and {1}"), "{err}");
        assert!(serde_json::from_str::<FiniteSpace>(r#"{"n":2,"min_open":[[1],[1]]}"#).is_err());
    }

    #[test]
    fn generate_topology_closes_subbasis() {
        let x = FiniteSpace::generate_topology(3, &[set(&[0, 1]), set(&[1, 2])]).unwrap();
        assert_eq!(x, zigzag3());
        let opens = x.open_sets(usize::MAX).unwrap();
        assert!(opens.contains(&set(&[1])));
        assert!(opens.contains(&set(&[0, 1, 2])));
    }
}
