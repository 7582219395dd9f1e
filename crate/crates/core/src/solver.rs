//! Exact minimum set cover, minimum hitting set and maximum hereditary
//! subsets on bit-packed instances.
//!
//! All searches are exact and single-threaded. Among optimal answers the
//! lexicographically least one (compared as ascending index lists) is
//! returned.

use thiserror::Error;

use crate::pointset::{PointSet, MAX_POINTS};
use crate::space::FiniteSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("instance is infeasible")]
    Infeasible,
    #[error("universe of {0} elements exceeds the limit of {MAX_POINTS}")]
    UniverseTooLarge(usize),
    #[error("candidate {index} mentions element {element} outside the universe of {universe}")]
    OutOfUniverse {
        index: usize,
        element: usize,
        universe: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Fewest candidate sets whose union is the universe.
    MinCover,
    /// Fewest universe elements meeting every candidate set.
    MinHitting,
}

#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub universe: usize,
    pub sets: Vec<PointSet>,
    pub objective: Objective,
}

/// An optimal answer. For [`Objective::MinCover`] the witness lists indices
/// into the candidate sets, for [`Objective::MinHitting`] it lists elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub size: usize,
    pub witness: Vec<usize>,
}

impl CoverInstance {
    pub fn cover(universe: usize, sets: Vec<PointSet>) -> Self {
        CoverInstance {
            universe,
            sets,
            objective: Objective::MinCover,
        }
    }

    pub fn hitting(universe: usize, sets: Vec<PointSet>) -> Self {
        CoverInstance {
            universe,
            sets,
            objective: Objective::MinHitting,
        }
    }

    /// Independent check of a witness against the objective.
    pub fn is_feasible_witness(&self, witness: &[usize]) -> bool {
        let full = PointSet::full(self.universe.min(MAX_POINTS));
        match self.objective {
            Objective::MinCover => {
                witness.iter().all(|&i| i < self.sets.len())
                    && witness
                        .iter()
                        .fold(PointSet::EMPTY, |acc, &i| acc | self.sets[i])
                        == full
            }
            Objective::MinHitting => {
                let chosen: PointSet = witness.iter().copied().collect();
                witness.iter().all(|&x| x < self.universe)
                    && self.sets.iter().all(|s| s.intersects(chosen))
            }
        }
    }

    fn validate(&self) -> Result<(), SolverError> {
        if self.universe > MAX_POINTS {
            return Err(SolverError::UniverseTooLarge(self.universe));
        }
        let full = PointSet::full(self.universe);
        for (index, s) in self.sets.iter().enumerate() {
            if let Some(element) = (*s - full).first() {
                return Err(SolverError::OutOfUniverse {
                    index,
                    element,
                    universe: self.universe,
                });
            }
        }
        Ok(())
    }
}

pub fn min_cover(instance: &CoverInstance) -> Result<Solution, SolverError> {
    instance.validate()?;
    match instance.objective {
        Objective::MinCover => solve_cover(PointSet::full(instance.universe), &instance.sets),
        Objective::MinHitting => {
            // element x covers the indices of the sets it meets
            if instance.sets.len() > MAX_POINTS {
                return Err(SolverError::UniverseTooLarge(instance.sets.len()));
            }
            let transposed: Vec<PointSet> = (0..instance.universe)
                .map(|x| {
                    instance
                        .sets
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| s.contains(x))
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect();
            solve_cover(PointSet::full(instance.sets.len()), &transposed)
        }
    }
}

fn solve_cover(target: PointSet, sets: &[PointSet]) -> Result<Solution, SolverError> {
    let reachable = sets.iter().fold(PointSet::EMPTY, |acc, &s| acc | s);
    if !target.is_subset(reachable) {
        return Err(SolverError::Infeasible);
    }
    let all: Vec<usize> = (0..sets.len()).collect();
    let greedy = greedy_cover(target, sets);
    let mut size = lower_bound(target, sets, &all);
    while size < greedy && !feasible(target, size, sets, &prune_dominated(sets, &all, target)) {
        size += 1;
    }
    // fix the smallest admissible index at each position
    let mut witness = Vec::with_capacity(size);
    let mut uncovered = target;
    let mut next = 0;
    while !uncovered.is_empty() {
        let slots = size - witness.len();
        let i = (next..sets.len())
            .find(|&i| {
                let rest = uncovered - sets[i];
                let later: Vec<usize> = (i + 1..sets.len()).collect();
                feasible(rest, slots - 1, sets, &prune_dominated(sets, &later, rest))
            })
            .expect("an optimal cover exists");
        witness.push(i);
        uncovered = uncovered - sets[i];
        next = i + 1;
    }
    debug_assert_eq!(witness.len(), size);
    Ok(Solution { size, witness })
}

fn greedy_cover(target: PointSet, sets: &[PointSet]) -> usize {
    let mut uncovered = target;
    let mut count = 0;
    while !uncovered.is_empty() {
        let best = sets
            .iter()
            .max_by_key(|s| (**s & uncovered).len())
            .expect("feasible instance");
        uncovered = uncovered - *best;
        count += 1;
    }
    count
}

fn lower_bound(target: PointSet, sets: &[PointSet], allowed: &[usize]) -> usize {
    let best = allowed
        .iter()
        .map(|&i| (sets[i] & target).len())
        .max()
        .unwrap_or(0);
    if target.is_empty() {
        0
    } else if best == 0 {
        usize::MAX
    } else {
        target.len().div_ceil(best)
    }
}

// Drop candidates whose useful part is contained in another candidate's,
// keeping the lower index among equals.
fn prune_dominated(sets: &[PointSet], allowed: &[usize], target: PointSet) -> Vec<usize> {
    let useful: Vec<(usize, PointSet)> = allowed
        .iter()
        .map(|&i| (i, sets[i] & target))
        .filter(|(_, s)| !s.is_empty())
        .collect();
    useful
        .iter()
        .filter(|&&(i, s)| {
            !useful
                .iter()
                .any(|&(j, t)| j != i && s.is_subset(t) && (s != t || j < i))
        })
        .map(|&(i, _)| i)
        .collect()
}

fn feasible(uncovered: PointSet, budget: usize, sets: &[PointSet], allowed: &[usize]) -> bool {
    if uncovered.is_empty() {
        return true;
    }
    if budget == 0 || lower_bound(uncovered, sets, allowed) > budget {
        return false;
    }
    // branch on the element with the fewest covering candidates
    let mut pivot = None;
    let mut fewest = usize::MAX;
    for e in uncovered.iter() {
        let count = allowed.iter().filter(|&&i| sets[i].contains(e)).count();
        if count < fewest {
            fewest = count;
            pivot = Some(e);
            if count <= 1 {
                break;
            }
        }
    }
    let pivot = match pivot {
        Some(p) if fewest > 0 => p,
        _ => return false,
    };
    allowed
        .iter()
        .filter(|&&i| sets[i].contains(pivot))
        .any(|&i| feasible(uncovered - sets[i], budget - 1, sets, allowed))
}

/// Hereditary predicates on point sets of a space, one per sup-type
/// invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsetPredicate {
    /// `U_d ∩ D = {d}` for every `d ∈ D`. Subsets of a discrete subspace are
    /// discrete, since the condition only shrinks.
    DiscreteSubspace,
    /// A closed discrete subspace. Its points are exactly closed points, so
    /// any subset is again a set of closed points.
    ClosedDiscrete,
    /// `{{a} : a ∈ A}` is a discrete family: `|U_z ∩ A| ≤ 1` for every `z`,
    /// which survives removing points.
    DiscreteSingletonFamily,
    /// The minimal opens `U_a`, `a ∈ A`, are pairwise disjoint. Pairwise
    /// conditions pass to subsets.
    DisjointMinOpens,
    /// The minimal opens `U_a`, `a ∈ A`, form a discrete family: each `U_z`
    /// meets at most one of them. Again a pairwise condition.
    DiscreteMinOpens,
}

#[derive(Clone, Debug)]
pub struct SubsetInstance<'s> {
    pub space: &'s FiniteSpace,
    pub predicate: SubsetPredicate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSolution {
    pub size: usize,
    pub witness: PointSet,
}

impl<'s> SubsetInstance<'s> {
    pub fn new(space: &'s FiniteSpace, predicate: SubsetPredicate) -> Self {
        SubsetInstance { space, predicate }
    }

    /// Direct evaluation of the predicate on `a`.
    pub fn is_feasible(&self, a: PointSet) -> bool {
        let x = self.space;
        let u = x.min_opens();
        match self.predicate {
            SubsetPredicate::DiscreteSubspace => {
                a.iter().all(|d| u[d] & a == PointSet::singleton(d))
            }
            SubsetPredicate::ClosedDiscrete => {
                x.closure(a) == a && a.iter().all(|d| u[d] & a == PointSet::singleton(d))
            }
            SubsetPredicate::DiscreteSingletonFamily => u.iter().all(|uz| (*uz & a).len() <= 1),
            SubsetPredicate::DisjointMinOpens => {
                let members: Vec<_> = a.iter().map(|p| u[p]).collect();
                members
                    .iter()
                    .enumerate()
                    .all(|(i, m)| members[i + 1..].iter().all(|m2| !m.intersects(*m2)))
            }
            SubsetPredicate::DiscreteMinOpens => u
                .iter()
                .all(|uz| a.iter().filter(|&p| u[p].intersects(*uz)).count() <= 1),
        }
    }

    // Points allowed on their own, and pairwise conflicts.
    fn conflict_graph(&self) -> (PointSet, Vec<PointSet>) {
        let n = self.space.n();
        let single = (0..n)
            .filter(|&p| self.is_feasible(PointSet::singleton(p)))
            .collect();
        let conflicts = (0..n)
            .map(|p| {
                (0..n)
                    .filter(|&q| q != p && !self.is_feasible(PointSet::singleton(p).with(q)))
                    .collect()
            })
            .collect();
        (single, conflicts)
    }
}

pub fn max_subset(instance: &SubsetInstance<'_>) -> SubsetSolution {
    // every predicate is a conjunction of unary and pairwise conditions, so
    // feasible sets are the independent sets of the conflict graph
    let (allowed, conflicts) = instance.conflict_graph();
    let mut best = PointSet::EMPTY;
    independent_search(PointSet::EMPTY, allowed, &conflicts, &mut best);
    debug_assert!(instance.is_feasible(best));
    SubsetSolution {
        size: best.len(),
        witness: best,
    }
}

fn independent_search(
    current: PointSet,
    candidates: PointSet,
    conflicts: &[PointSet],
    best: &mut PointSet,
) {
    if current.len() + candidates.len() <= best.len() {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    }
    let Some(p) = candidates.first() else {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    };
    let rest = candidates.without(p);
    independent_search(current.with(p), rest - conflicts[p], conflicts, best);
    independent_search(current, rest, conflicts, best);
}
