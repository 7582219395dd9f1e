//! Open covers and their star operators.
//!
//! `St⁰(A; 𝒰) = A` and `Stⁿ⁺¹(A; 𝒰)` is the union of the members meeting
//! `Stⁿ(A; 𝒰)`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::pointset::PointSet;
use crate::space::FiniteSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("member {0} is not open")]
    NotOpen(PointSet),
    #[error("members miss the points {0}")]
    NotCovering(PointSet),
    #[error("more than {0} covers")]
    BudgetExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenCover<'s> {
    space: &'s FiniteSpace,
    members: Vec<PointSet>,
}

impl<'s> OpenCover<'s> {
    pub fn new(space: &'s FiniteSpace, members: Vec<PointSet>) -> Result<Self, CoverError> {
        if let Some(&m) = members.iter().find(|&&m| !space.is_open(m)) {
            return Err(CoverError::NotOpen(m));
        }
        let union = members.iter().fold(PointSet::EMPTY, |acc, &m| acc | m);
        let missing = space.carrier() - union;
        if !missing.is_empty() {
            return Err(CoverError::NotCovering(missing));
        }
        Ok(OpenCover { space, members })
    }

    /// The distinct minimal open sets, in order of first appearance. This
    /// cover refines every open cover.
    pub fn minimal_cover(space: &'s FiniteSpace) -> Self {
        let mut members: Vec<PointSet> = Vec::new();
        for &u in space.min_opens() {
            if !members.contains(&u) {
                members.push(u);
            }
        }
        OpenCover { space, members }
    }

    pub fn space(&self) -> &'s FiniteSpace {
        self.space
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn star(&self, a: PointSet, k: usize) -> PointSet {
        star_of_family(&self.members, a, k)
    }

    /// Every member of `self` lies inside some member of `coarse`.
    pub fn refines(&self, coarse: &OpenCover<'_>) -> bool {
        self.members
            .iter()
            .all(|m| coarse.members.iter().any(|c| m.is_subset(*c)))
    }
}

impl Serialize for OpenCover<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

pub fn star_of_family(members: &[PointSet], a: PointSet, k: usize) -> PointSet {
    let mut s = a;
    for _ in 0..k {
        s = members
            .iter()
            .filter(|m| m.intersects(s))
            .fold(PointSet::EMPTY, |acc, &m| acc | m);
    }
    s
}

/// Covers by distinct non-empty open sets, none contained in another.
pub fn enumerate_irredundant_covers(
    space: &FiniteSpace,
    budget: usize,
) -> Result<Vec<OpenCover<'_>>, CoverError> {
    enumerate(space, budget, true)
}

/// Covers by distinct non-empty open sets.
pub fn enumerate_all_covers(
    space: &FiniteSpace,
    budget: usize,
) -> Result<Vec<OpenCover<'_>>, CoverError> {
    enumerate(space, budget, false)
}

fn enumerate(
    space: &FiniteSpace,
    budget: usize,
    antichain: bool,
) -> Result<Vec<OpenCover<'_>>, CoverError> {
    let opens: Vec<PointSet> = space
        .open_sets(budget.saturating_mul(4).max(1 << 12))
        .map_err(|_| CoverError::BudgetExceeded(budget))?
        .into_iter()
        .filter(|o| !o.is_empty())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(space, &opens, 0, &mut chosen, antichain, budget, &mut out)?;
    Ok(out)
}

fn search<'s>(
    space: &'s FiniteSpace,
    opens: &[PointSet],
    i: usize,
    chosen: &mut Vec<PointSet>,
    antichain: bool,
    budget: usize,
    out: &mut Vec<OpenCover<'s>>,
) -> Result<(), CoverError> {
    if i == opens.len() {
        let union = chosen.iter().fold(PointSet::EMPTY, |acc, &m| acc | m);
        if union == space.carrier() {
            if out.len() >= budget {
                return Err(CoverError::BudgetExceeded(budget));
            }
            out.push(OpenCover {
                space,
                members: chosen.clone(),
            });
        }
        return Ok(());
    }
    let o = opens[i];
    let comparable = chosen.iter().any(|&c| c.is_subset(o) || o.is_subset(c));
    if !antichain || !comparable {
        chosen.push(o);
        search(space, opens, i + 1, chosen, antichain, budget, out)?;
        chosen.pop();
    }
    search(space, opens, i + 1, chosen, antichain, budget, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{enumerate_all_spaces, named, random_space};
    use crate::word::{BinaryWord, Lead};

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn star_examples() {
        let s = named("sierpinski").unwrap();
        let c = OpenCover::minimal_cover(&s);
        assert_eq!(c.members(), &[set(&[0, 1]), set(&[1])]);
        assert_eq!(c.star(set(&[1]), 1), set(&[0, 1]));
        assert_eq!(c.star(set(&[1]), 0), set(&[1]));
    }

    #[test]
    fn minimal_cover_examples() {
        let d = named("discrete:3").unwrap();
        assert_eq!(
            OpenCover::minimal_cover(&d).members(),
            &[set(&[0]), set(&[1]), set(&[2])]
        );
        let one = named("one_nonisolated:3").unwrap();
        assert_eq!(
            OpenCover::minimal_cover(&one).members(),
            &[set(&[0]), set(&[1]), set(&[0, 1, 2])]
        );
        let a = named("antidiscrete:4").unwrap();
        assert_eq!(OpenCover::minimal_cover(&a).members(), &[PointSet::full(4)]);
    }

    #[test]
    fn constructor_validates() {
        let s = named("sierpinski").unwrap();
        assert_eq!(
            OpenCover::new(&s, vec![set(&[0])]),
            Err(CoverError::NotOpen(set(&[0])))
        );
        assert_eq!(
            OpenCover::new(&s, vec![set(&[1])]),
            Err(CoverError::NotCovering(set(&[0])))
        );
        let whole = OpenCover::new(&s, vec![set(&[0, 1])]).unwrap();
        assert!(whole.refines(&whole));
        assert!(whole.refines(&OpenCover::minimal_cover(&s)));
    }

    #[test]
    fn enumeration_examples() {
        let d2 = named("discrete:2").unwrap();
        assert_eq!(enumerate_irredundant_covers(&d2, 100).unwrap().len(), 2);
        let a3 = named("antidiscrete:3").unwrap();
        assert_eq!(enumerate_irredundant_covers(&a3, 100).unwrap().len(), 1);
        let s = named("sierpinski").unwrap();
        assert_eq!(enumerate_irredundant_covers(&s, 100).unwrap().len(), 1);
        assert_eq!(enumerate_all_covers(&s, 100).unwrap().len(), 2);
        let d4 = named("discrete:4").unwrap();
        assert_eq!(
            enumerate_all_covers(&d4, 10),
            Err(CoverError::BudgetExceeded(10))
        );
    }

    #[test]
    fn minimal_cover_refines_everything() {
        for n in 0..=4 {
            for x in enumerate_all_spaces(n).unwrap() {
                let fine = OpenCover::minimal_cover(&x);
                for c in enumerate_irredundant_covers(&x, 1 << 16).unwrap() {
                    assert!(fine.refines(&c));
                }
            }
        }
    }

    #[test]
    fn star_monotonicity_exhaustive() {
        for n in 0..=3 {
            for x in enumerate_all_spaces(n).unwrap() {
                let covers = enumerate_all_covers(&x, 1 << 16).unwrap();
                for f in &covers {
                    for c in covers.iter().filter(|c| f.refines(c)) {
                        for a in x.carrier().subsets() {
                            for k in 0..=3 {
                                assert!(f.star(a, k).is_subset(c.star(a, k)));
                            }
                        }
                    }
                    for a in x.carrier().subsets() {
                        for b in x.carrier().subsets().filter(|b| a.is_subset(*b)) {
                            assert!(f.star(a, 2).is_subset(f.star(b, 2)));
                        }
                        for j in 0..=2 {
                            for k in 0..=2 {
                                assert_eq!(f.star(a, j + k), f.star(f.star(a, j), k));
                            }
                            assert!(f.star(a, j).is_subset(f.star(a, j + 1)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn star_is_a_ball_of_the_alternating_power() {
        for seed in 0..200u64 {
            let n = (seed % 8 + 1) as usize;
            let x = random_space(n, 0.25, seed).unwrap();
            let c = OpenCover::minimal_cover(&x);
            let v = x.minimal_entourage();
            for k in 0..=3 {
                let w = v.verbal_power(&BinaryWord::alternation(Lead::MinusFirst, 2 * k));
                for p in 0..n {
                    assert_eq!(
                        c.star(PointSet::singleton(p), k),
                        w.ball(PointSet::singleton(p))
                    );
                }
            }
        }
    }

    #[test]
    fn serializes_as_nested_arrays() {
        let s = named("sierpinski").unwrap();
        let json = serde_json::to_string(&OpenCover::minimal_cover(&s)).unwrap();
        assert_eq!(json, "[[0,1],[1]]");
    }
}
