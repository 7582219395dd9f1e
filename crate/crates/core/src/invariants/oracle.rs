//! Brute-force evaluation of invariants straight from their definitions.
//!
//! Nothing here uses the minimal entourage, the minimal cover or the exact
//! solvers: relations are plain boolean matrices, neighbourhood assignments
//! and covers are enumerated in full, and optima are found by trying every
//! subset.

use super::{AnalysisError, Classical, LatticeKind, StarIndex, VerbalKind};
use crate::cover::{enumerate_all_covers, enumerate_irredundant_covers};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::word::{BinaryWord, Lead, Letter};

/// Largest carrier the oracles accept.
pub const ORACLE_LIMIT: usize = 4;
/// Largest carrier for oracles that enumerate every family of sets.
pub const FAMILY_ORACLE_LIMIT: usize = 3;

type Matrix = Vec<Vec<bool>>;

fn check(x: &FiniteSpace, limit: usize, what: &str) -> Result<(), AnalysisError> {
    if x.n() > limit {
        Err(AnalysisError::OracleBudget(format!(
            "{what} enumerates exhaustively and accepts at most {limit} points, got {}",
            x.n()
        )))
    } else {
        Ok(())
    }
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

fn product(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).any(|j| a[i][j] && b[j][k])).collect())
        .collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn power(u: &Matrix, word: &BinaryWord) -> Matrix {
    let inv = transpose(u);
    word.letters()
        .iter()
        .fold(identity(u.len()), |acc, l| match l {
            Letter::Plus => product(&acc, u),
            Letter::Minus => product(&acc, &inv),
        })
}

fn ball(u: &Matrix, a: PointSet) -> PointSet {
    (0..u.len())
        .filter(|&y| a.iter().any(|x| u[x][y]))
        .collect()
}

fn opens(x: &FiniteSpace) -> Vec<PointSet> {
    x.carrier().subsets().filter(|&s| x.is_open(s)).collect()
}

/// `y` is in the closure of `s` when every open set around `y` meets `s`.
fn closure(opens: &[PointSet], n: usize, s: PointSet) -> PointSet {
    (0..n)
        .filter(|&y| {
            opens
                .iter()
                .filter(|o| o.contains(y))
                .all(|o| o.intersects(s))
        })
        .collect()
}

/// Every neighbourhood assignment: each ball is any set containing an open
/// set around its centre.
fn assignments(x: &FiniteSpace) -> Vec<Matrix> {
    let n = x.n();
    let opens = opens(x);
    let neighbourhoods: Vec<Vec<PointSet>> = (0..n)
        .map(|p| {
            x.carrier()
                .subsets()
                .filter(|&b| opens.iter().any(|o| o.contains(p) && o.is_subset(b)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        out.push(
            (0..n)
                .map(|p| {
                    let b = neighbourhoods[p][choice[p]];
                    (0..n).map(|q| b.contains(q)).collect()
                })
                .collect(),
        );
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            choice[i] += 1;
            if choice[i] < neighbourhoods[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Smallest `|A|` satisfying `ok`, trying every subset.
fn min_subset(n: usize, ok: impl Fn(PointSet) -> bool) -> Option<usize> {
    PointSet::full(n)
        .subsets()
        .filter(|&a| ok(a))
        .map(|a| a.len())
        .min()
}

fn max_subset(n: usize, ok: impl Fn(PointSet) -> bool) -> usize {
    PointSet::full(n)
        .subsets()
        .filter(|&a| ok(a))
        .map(|a| a.len())
        .max()
        .unwrap_or(0)
}

fn worst_case(x: &FiniteSpace, dense: bool, relation: impl Fn(&Matrix) -> Matrix) -> usize {
    let n = x.n();
    let opens = opens(x);
    assignments(x)
        .iter()
        .map(|u| {
            let w = relation(u);
            min_subset(n, |a| {
                let b = ball(&w, a);
                let b = if dense { closure(&opens, n, b) } else { b };
                b == x.carrier()
            })
            .expect("the whole carrier works")
        })
        .max()
        .unwrap_or(0)
}

/// Supremum over all neighbourhood assignments `U` of the boundedness
/// number of `U^v`.
pub fn oracle_verbal(
    x: &FiniteSpace,
    kind: VerbalKind,
    word: &BinaryWord,
) -> Result<usize, AnalysisError> {
    check(x, ORACLE_LIMIT, "verbal oracle")?;
    let v = worst_case(x, kind.is_dense(), |u| power(u, word));
    Ok(if kind.is_sharp() { v + 1 } else { v })
}

pub fn oracle_lattice(
    x: &FiniteSpace,
    kind: LatticeKind,
    n: usize,
) -> Result<usize, AnalysisError> {
    check(x, ORACLE_LIMIT, "lattice oracle")?;
    if n == 0 {
        return Err(AnalysisError::ZeroIndex("lattice oracle"));
    }
    Ok(worst_case(x, false, |u| {
        let a = power(u, &BinaryWord::alternation(Lead::PlusFirst, n));
        let b = power(u, &BinaryWord::alternation(Lead::MinusFirst, n));
        a.iter()
            .zip(&b)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(&p, &q)| match kind {
                        LatticeKind::Wedge => p || q,
                        LatticeKind::Vee => p && q,
                    })
                    .collect()
            })
            .collect()
    }))
}

fn star(members: &[PointSet], a: PointSet, depth: usize) -> PointSet {
    let mut s = a;
    for _ in 0..depth {
        let mut next = PointSet::EMPTY;
        for m in members {
            if m.intersects(s) {
                next |= *m;
            }
        }
        s = next;
    }
    s
}

/// Supremum over open covers of the star invariant's demand. With
/// `all_covers` every cover by non-empty open sets is tried, otherwise only
/// covers whose members form an antichain.
pub fn oracle_star(
    x: &FiniteSpace,
    bar: bool,
    sharp: bool,
    index: StarIndex,
    all_covers: bool,
) -> Result<usize, AnalysisError> {
    let limit = if all_covers {
        FAMILY_ORACLE_LIMIT
    } else {
        ORACLE_LIMIT
    };
    check(x, limit, "star oracle")?;
    let n = x.n();
    let opens = opens(x);
    let covers = if all_covers {
        enumerate_all_covers(x, usize::MAX)
    } else {
        enumerate_irredundant_covers(x, usize::MAX)
    }
    .map_err(|e| AnalysisError::OracleBudget(e.to_string()))?;
    let depth = index.depth();
    let good = |s: PointSet| {
        let s = if bar { closure(&opens, n, s) } else { s };
        s == x.carrier()
    };
    let mut worst = 0;
    for c in &covers {
        let m = c.members();
        let need = if index.is_half() {
            (0u64..1 << m.len())
                .filter(|mask| {
                    let union = (0..m.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(PointSet::EMPTY, |acc, i| acc | m[i]);
                    good(star(m, union, depth))
                })
                .map(|mask| mask.count_ones() as usize)
                .min()
        } else {
            min_subset(n, |a| good(star(m, a, depth)))
        };
        worst = worst.max(need.expect("the whole cover works"));
    }
    Ok(if sharp { worst + 1 } else { worst })
}

/// Classical invariants from their definitions. `w`, `nw` and `chi`
/// enumerate families of sets and accept at most
/// [`FAMILY_ORACLE_LIMIT`] points.
pub fn oracle_classical(x: &FiniteSpace, c: Classical) -> Result<usize, AnalysisError> {
    let family_sized = matches!(c, Classical::W | Classical::Nw | Classical::Chi);
    check(
        x,
        if family_sized {
            FAMILY_ORACLE_LIMIT
        } else {
            ORACLE_LIMIT
        },
        c.name(),
    )?;
    let n = x.n();
    let opens = opens(x);
    let nonempty: Vec<PointSet> = opens.iter().copied().filter(|o| !o.is_empty()).collect();
    let families = |sets: &[PointSet]| -> Vec<Vec<PointSet>> {
        (0u64..1 << sets.len())
            .map(|mask| {
                (0..sets.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sets[i])
                    .collect()
            })
            .collect()
    };
    // an open set around z meeting at most one member
    let discrete = |family: &[PointSet]| {
        (0..n).all(|z| {
            opens
                .iter()
                .filter(|o| o.contains(z))
                .any(|o| family.iter().filter(|f| f.intersects(*o)).count() <= 1)
        })
    };
    let isolated_in = |a: PointSet| {
        a.iter().all(|p| {
            opens
                .iter()
                .any(|o| o.contains(p) && *o & a == PointSet::singleton(p))
        })
    };
    Ok(match c {
        Classical::D => min_subset(n, |a| closure(&opens, n, a) == x.carrier()).unwrap_or(0),
        Classical::C => families(&nonempty)
            .iter()
            .filter(|f| {
                f.iter()
                    .enumerate()
                    .all(|(i, a)| f[i + 1..].iter().all(|b| !a.intersects(*b)))
            })
            .map(|f| f.len())
            .max()
            .unwrap_or(0),
        Classical::Dc => families(&nonempty)
            .iter()
            .filter(|f| discrete(f))
            .map(|f| f.len())
            .max()
            .unwrap_or(0),
        Classical::E => max_subset(n, |a| closure(&opens, n, a) == a && isolated_in(a)),
        Classical::De => max_subset(n, |a| {
            let singletons: Vec<PointSet> = a.iter().map(PointSet::singleton).collect();
            discrete(&singletons)
        }),
        Classical::S => max_subset(n, isolated_in),
        Classical::L => {
            let covers = if n <= FAMILY_ORACLE_LIMIT {
                enumerate_all_covers(x, usize::MAX)
            } else {
                enumerate_irredundant_covers(x, usize::MAX)
            }
            .map_err(|e| AnalysisError::OracleBudget(e.to_string()))?;
            covers
                .iter()
                .map(|c| {
                    families(c.members())
                        .iter()
                        .filter(|f| {
                            f.iter().fold(PointSet::EMPTY, |acc, &m| acc | m) == x.carrier()
                        })
                        .map(|f| f.len())
                        .min()
                        .expect("the cover itself")
                })
                .max()
                .unwrap_or(0)
        }
        Classical::W => families(&nonempty)
            .iter()
            .filter(|b| {
                opens.iter().all(|&o| {
                    b.iter()
                        .filter(|m| m.is_subset(o))
                        .fold(PointSet::EMPTY, |acc, &m| acc | m)
                        == o
                })
            })
            .map(|b| b.len())
            .min()
            .unwrap_or(0),
        Classical::Nw => {
            let subsets: Vec<PointSet> = x.carrier().subsets().filter(|s| !s.is_empty()).collect();
            families(&subsets)
                .iter()
                .filter(|net| {
                    (0..n).all(|p| {
                        opens
                            .iter()
                            .filter(|o| o.contains(p))
                            .all(|&o| net.iter().any(|m| m.contains(p) && m.is_subset(o)))
                    })
                })
                .map(|net| net.len())
                .min()
                .unwrap_or(0)
        }
        Classical::Chi => (0..n)
            .map(|p| {
                let around: Vec<PointSet> =
                    opens.iter().copied().filter(|o| o.contains(p)).collect();
                families(&around)
                    .iter()
                    .filter(|b| around.iter().all(|&o| b.iter().any(|m| m.is_subset(o))))
                    .map(|b| b.len())
                    .min()
                    .expect("all neighbourhoods form a base")
            })
            .max()
            .unwrap_or(0),
        Classical::Ld => {
            let mut worst = 0;
            for p in 0..n {
                let mut best = usize::MAX;
                for &o in opens.iter().filter(|o| o.contains(p)) {
                    best = best.min(oracle_classical(&x.subspace(o), Classical::D)?);
                }
                worst = worst.max(best);
            }
            worst
        }
        Classical::Hl | Classical::Hd | Classical::Hs => {
            let base = match c {
                Classical::Hl => Classical::L,
                Classical::Hd => Classical::D,
                _ => Classical::S,
            };
            let mut worst = 0;
            for y in x.carrier().subsets() {
                worst = worst.max(oracle_classical(&x.subspace(y), base)?);
            }
            worst
        }
    })
}

/// The bare-injection reading of the word order: some injection `i` of the
/// positions of `v` into those of `w` has `v = w ∘ i`, with no monotonicity.
/// This only compares letter counts, so `"+-"` and `"-+"` are equivalent.
pub fn injection_order(v: &BinaryWord, w: &BinaryWord) -> bool {
    let count = |u: &BinaryWord, l: Letter| u.letters().iter().filter(|&&m| m == l).count();
    [Letter::Plus, Letter::Minus]
        .into_iter()
        .all(|l| count(v, l) <= count(w, l))
}
