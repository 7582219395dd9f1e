//! Cardinal invariants of finite spaces.
//!
//! Every neighbourhood assignment of a finite space contains the minimal
//! entourage `V` with `B(x; V) = U_x`, so the universal pre-uniformity is the
//! principal filter over `V` and each of its verbal powers is principal over
//! the corresponding power of `V`. Boundedness numbers are therefore exact
//! minimum covers by the rows of a single relation. Star invariants quantify
//! over open covers, and the cover by minimal open sets is the worst one.
//!
//! The brute-force counterparts in [`oracle`] evaluate the definitions
//! directly, without these reductions.

mod names;
pub mod oracle;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cover::{star_of_family, OpenCover};
use crate::entourage::{Entourage, RelationAlgebra, StandardAlgebra};
use crate::pointset::PointSet;
use crate::solver::{
    max_subset, min_cover, CoverInstance, SolverError, SubsetInstance, SubsetPredicate,
};
use crate::space::FiniteSpace;
use crate::word::{BinaryWord, Lead};

pub use names::{Classical, Invariant, LatticeKind, StarIndex, UnknownInvariant, VerbalKind};

/// Largest carrier on which hereditary invariants visit every subspace.
pub const HEREDITARY_EXACT_LIMIT: usize = 15;
/// Subspaces drawn for hereditary invariants on larger carriers.
pub const HEREDITARY_SAMPLES: usize = 10_000;
const HEREDITARY_SEED: u64 = 0x5eed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Unknown(#[from] UnknownInvariant),
    #[error(
        "{name} on {n} points needs all 2^{n} subspaces; exact evaluation stops at {limit} points"
    )]
    HereditaryBudget {
        name: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("{0} needs a positive index")]
    ZeroIndex(&'static str),
    #[error("the minimal entourage is not idempotent, so the quasi-uniform variants differ")]
    QuasiDiffers,
    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Points(PointSet),
    Family(Vec<PointSet>),
    Word(BinaryWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: usize,
    pub witness: Option<Witness>,
}

impl Evaluation {
    fn bare(value: usize) -> Self {
        Evaluation {
            value,
            witness: None,
        }
    }

    fn points(value: usize, points: PointSet) -> Self {
        Evaluation {
            value,
            witness: Some(Witness::Points(points)),
        }
    }

    fn family(value: usize, family: Vec<PointSet>) -> Self {
        Evaluation {
            value,
            witness: Some(Witness::Family(family)),
        }
    }

    fn plus_one(mut self) -> Self {
        self.value += 1;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalUniformity {
    pub u_ell: usize,
    pub u_sharp: usize,
    /// The equivalence closure of the minimal entourage.
    pub equivalence: Entourage,
    /// Least `k` with `(V⁻¹V)^k = E`.
    pub index: usize,
    pub centres: PointSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub space: FiniteSpace,
    pub values: BTreeMap<String, usize>,
    pub witnesses: BTreeMap<String, Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lower_bounds: Vec<String>,
    /// Names in presentation order.
    #[serde(skip)]
    pub order: Vec<String>,
}

static STANDARD: StandardAlgebra = StandardAlgebra;

pub struct Analyzer<'a> {
    space: &'a FiniteSpace,
    algebra: &'a dyn RelationAlgebra,
    vmin: Entourage,
    vmin_inv: Entourage,
}

impl<'a> Analyzer<'a> {
    pub fn new(space: &'a FiniteSpace) -> Self {
        Analyzer::with_algebra(space, &STANDARD)
    }

    pub fn with_algebra(space: &'a FiniteSpace, algebra: &'a dyn RelationAlgebra) -> Self {
        let vmin = space.minimal_entourage();
        let vmin_inv = algebra.inverse(&vmin);
        Analyzer {
            space,
            algebra,
            vmin,
            vmin_inv,
        }
    }

    pub fn space(&self) -> &'a FiniteSpace {
        self.space
    }

    pub fn minimal_entourage(&self) -> &Entourage {
        &self.vmin
    }

    /// `ℓ` of the principal filter over `w`, or `ℓ̄` when `dense`: density
    /// of `B(A; W)` means `B(A; W V⁻¹) = X`, because the closure of `S` is
    /// `B(S; V⁻¹)`.
    pub fn boundedness(&self, w: &Entourage, dense: bool) -> Result<Evaluation, AnalysisError> {
        let rows = if dense {
            self.algebra.compose(w, &self.vmin_inv).rows().to_vec()
        } else {
            w.rows().to_vec()
        };
        let sol = min_cover(&CoverInstance::cover(self.space.n(), rows))?;
        Ok(Evaluation::points(
            sol.size,
            sol.witness.into_iter().collect(),
        ))
    }

    pub fn verbal_entourage(&self, word: &BinaryWord) -> Entourage {
        self.algebra.verbal_power(&self.vmin, word)
    }

    pub fn verbal(&self, kind: VerbalKind, word: &BinaryWord) -> Result<Evaluation, AnalysisError> {
        let w = self.verbal_entourage(word);
        let e = self.boundedness(&w, kind.is_dense())?;
        Ok(if kind.is_sharp() { e.plus_one() } else { e })
    }

    /// Minimal entourage of `𝒰^{∧n}` (union) or `𝒰^{∨n}` (intersection).
    pub fn lattice_entourage(
        &self,
        kind: LatticeKind,
        n: usize,
    ) -> Result<Entourage, AnalysisError> {
        if n == 0 {
            return Err(AnalysisError::ZeroIndex(match kind {
                LatticeKind::Wedge => "wedge",
                LatticeKind::Vee => "vee",
            }));
        }
        let pm = self.verbal_entourage(&BinaryWord::alternation(Lead::PlusFirst, n));
        let mp = self.verbal_entourage(&BinaryWord::alternation(Lead::MinusFirst, n));
        let joined = match kind {
            LatticeKind::Wedge => pm.union(&mp),
            LatticeKind::Vee => pm.intersect(&mp),
        };
        Ok(joined.expect("same carrier"))
    }

    pub fn verbal_lattice(&self, kind: LatticeKind, n: usize) -> Result<Evaluation, AnalysisError> {
        self.boundedness(&self.lattice_entourage(kind, n)?, false)
    }

    pub fn universal_uniformity(&self) -> Result<UniversalUniformity, AnalysisError> {
        let (equivalence, index) = self.vmin.stabilized_equivalence();
        let e = self.boundedness(&equivalence, false)?;
        let centres = match e.witness {
            Some(Witness::Points(p)) => p,
            _ => PointSet::EMPTY,
        };
        Ok(UniversalUniformity {
            u_ell: e.value,
            u_sharp: e.value + 1,
            equivalence,
            index,
            centres,
        })
    }

    /// Minimum of `ℓ^v` over run-collapsed words up to twice the
    /// stabilization index, with the stabilizing word `∓2k` as witness.
    pub fn ell_omega(&self) -> Result<(Evaluation, BinaryWord), AnalysisError> {
        let (_, k) = self.vmin.stabilized_equivalence();
        let stable = BinaryWord::alternation(Lead::MinusFirst, 2 * k);
        let mut best: Option<(Evaluation, BinaryWord)> = None;
        for len in 0..=2 * k {
            for lead in [Lead::PlusFirst, Lead::MinusFirst] {
                let word = BinaryWord::alternation(lead, len);
                let e = self.verbal(VerbalKind::Ell, &word)?;
                let better = match &best {
                    None => true,
                    Some((b, bw)) => {
                        e.value < b.value || (e.value == b.value && word == stable && *bw != stable)
                    }
                };
                if better {
                    best = Some((e, word));
                }
            }
        }
        Ok(best.expect("at least the empty word"))
    }

    /// Star invariant by the cover path. Stars of unions are unions of
    /// stars, so a whole index asks for fewest points whose `n`-stars cover
    /// (or are dense), and a half index for fewest members of the minimal
    /// cover whose `n`-stars do.
    pub fn star(
        &self,
        bar: bool,
        sharp: bool,
        index: StarIndex,
    ) -> Result<Evaluation, AnalysisError> {
        let cover = OpenCover::minimal_cover(self.space);
        let members = cover.members();
        let depth = index.depth();
        let seeds: Vec<PointSet> = if index.is_half() {
            members.to_vec()
        } else {
            (0..self.space.n()).map(PointSet::singleton).collect()
        };
        let sets: Vec<PointSet> = seeds
            .iter()
            .map(|&a| {
                let s = star_of_family(members, a, depth);
                if bar {
                    self.space.closure(s)
                } else {
                    s
                }
            })
            .collect();
        let sol = min_cover(&CoverInstance::cover(self.space.n(), sets))?;
        let e = if index.is_half() {
            Evaluation::family(sol.size, sol.witness.iter().map(|&i| seeds[i]).collect())
        } else {
            Evaluation::points(sol.size, sol.witness.into_iter().collect())
        };
        Ok(if sharp { e.plus_one() } else { e })
    }

    /// `l^{*ω}`: the minimum over whole indices. Stars stop growing after
    /// `n` steps, so depths up to `n` suffice.
    pub fn star_omega(&self, bar: bool) -> Result<Evaluation, AnalysisError> {
        let mut best = self.star(bar, false, StarIndex::whole(0))?;
        for depth in 1..=self.space.n() {
            let e = self.star(bar, false, StarIndex::whole(depth))?;
            if e.value < best.value {
                best = e;
            }
        }
        Ok(best)
    }

    /// The finite identity `q𝒰 = p𝒰` holds when the minimal entourage is
    /// idempotent. Checked two ways: `VV = V` under the algebra, and a
    /// transitive closure that adds nothing.
    pub fn quasi_matches_pre(&self) -> bool {
        let squared = self.algebra.compose(&self.vmin, &self.vmin);
        let n = self.vmin.n();
        let mut closure: Vec<Vec<bool>> = (0..n)
            .map(|x| (0..n).map(|y| self.vmin.contains(x, y)).collect())
            .collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if closure[i][k] && closure[k][j] {
                        closure[i][j] = true;
                    }
                }
            }
        }
        let closed = (0..n).all(|i| (0..n).all(|j| closure[i][j] == self.vmin.contains(i, j)));
        squared == self.vmin && closed
    }

    fn require_quasi(&self) -> Result<(), AnalysisError> {
        if self.quasi_matches_pre() {
            Ok(())
        } else {
            Err(AnalysisError::QuasiDiffers)
        }
    }

    pub fn q_verbal(
        &self,
        kind: VerbalKind,
        word: &BinaryWord,
    ) -> Result<Evaluation, AnalysisError> {
        self.require_quasi()?;
        self.verbal(kind, word)
    }

    pub fn q_lattice(&self, kind: LatticeKind, n: usize) -> Result<Evaluation, AnalysisError> {
        self.require_quasi()?;
        self.verbal_lattice(kind, n)
    }

    pub fn classical(&self, c: Classical) -> Result<Evaluation, AnalysisError> {
        let x = self.space;
        let n = x.n();
        let subset = |p| {
            let s = max_subset(&SubsetInstance::new(x, p));
            Evaluation::points(s.size, s.witness)
        };
        Ok(match c {
            Classical::D => density(x)?,
            Classical::C => subset(SubsetPredicate::DisjointMinOpens),
            Classical::Dc => subset(SubsetPredicate::DiscreteMinOpens),
            Classical::E => subset(SubsetPredicate::ClosedDiscrete),
            Classical::De => subset(SubsetPredicate::DiscreteSingletonFamily),
            Classical::S => subset(SubsetPredicate::DiscreteSubspace),
            Classical::L => lindelof(x)?,
            Classical::W | Classical::Nw => {
                let members = OpenCover::minimal_cover(x).members().to_vec();
                Evaluation::family(members.len(), members)
            }
            Classical::Chi => Evaluation::bare(usize::from(n > 0)),
            Classical::Ld => {
                // neighbourhoods of x contain U_x, and a dense subset of an
                // open set meets U_x densely, so U_x is the best choice
                let mut best = Evaluation::bare(0);
                for p in 0..n {
                    let d = density(&x.subspace(x.min_open(p)))?;
                    if d.value > best.value {
                        best = Evaluation::points(d.value, x.min_open(p));
                    }
                }
                best
            }
            Classical::Hl | Classical::Hd | Classical::Hs => {
                if n > HEREDITARY_EXACT_LIMIT {
                    return Err(AnalysisError::HereditaryBudget {
                        name: c.name(),
                        n,
                        limit: HEREDITARY_EXACT_LIMIT,
                    });
                }
                let masks: Vec<u64> = (0..1u64 << n).collect();
                self.hereditary(c, &masks)?
            }
        })
    }

    /// Hereditary invariant over seeded random subspaces plus the whole
    /// space. The result is a lower bound.
    pub fn classical_sampled(
        &self,
        c: Classical,
        samples: usize,
        seed: u64,
    ) -> Result<Evaluation, AnalysisError> {
        let n = self.space.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = PointSet::full(n).bits();
        let mut masks = vec![full];
        masks.extend((0..samples).map(|_| rng.gen::<u64>() & full));
        self.hereditary(c, &masks)
    }

    fn hereditary(&self, c: Classical, masks: &[u64]) -> Result<Evaluation, AnalysisError> {
        let x = self.space;
        let inner = match c {
            Classical::Hl => lindelof,
            Classical::Hd => density,
            _ => spread,
        };
        let values: Result<Vec<(usize, u64)>, AnalysisError> = masks
            .par_iter()
            .map(|&m| Ok((inner(&x.subspace(PointSet::from_bits(m)))?.value, m)))
            .collect();
        // largest value, then the smallest subspace bit pattern
        let (value, mask) = values?
            .into_iter()
            .min_by_key(|&(v, m)| (std::cmp::Reverse(v), m))
            .unwrap_or((0, 0));
        Ok(Evaluation::points(value, PointSet::from_bits(mask)))
    }

    pub fn evaluate(&self, inv: &Invariant) -> Result<Evaluation, AnalysisError> {
        match inv {
            Invariant::Classical(c) => self.classical(*c),
            Invariant::Verbal { kind, word, quasi } => {
                if *quasi {
                    self.q_verbal(*kind, word)
                } else {
                    self.verbal(*kind, word)
                }
            }
            Invariant::Lattice { kind, n, quasi } => {
                if *quasi {
                    self.q_lattice(*kind, *n)
                } else {
                    self.verbal_lattice(*kind, *n)
                }
            }
            Invariant::UEll | Invariant::USharp => {
                let u = self.universal_uniformity()?;
                let value = if *inv == Invariant::UEll {
                    u.u_ell
                } else {
                    u.u_sharp
                };
                Ok(Evaluation::points(value, u.centres))
            }
            Invariant::EllOmega => {
                let (e, word) = self.ell_omega()?;
                Ok(Evaluation {
                    value: e.value,
                    witness: Some(Witness::Word(word)),
                })
            }
            Invariant::Star { bar, sharp, index } => self.star(*bar, *sharp, *index),
            Invariant::StarOmega { bar } => self.star_omega(*bar),
        }
    }

    /// Every invariant of [`standard_invariants`]. Hereditary invariants of
    /// carriers above [`HEREDITARY_EXACT_LIMIT`] are sampled and listed in
    /// `lower_bounds`.
    pub fn report(&self) -> Result<InvariantReport, AnalysisError> {
        let n = self.space.n();
        let mut report = InvariantReport {
            space: self.space.clone(),
            values: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            lower_bounds: Vec::new(),
            order: Vec::new(),
        };
        for inv in standard_invariants() {
            let name = inv.to_string();
            let e = match inv {
                Invariant::Classical(c) if c.is_hereditary() && n > HEREDITARY_EXACT_LIMIT => {
                    report.lower_bounds.push(name.clone());
                    self.classical_sampled(c, HEREDITARY_SAMPLES, HEREDITARY_SEED)?
                }
                _ => self.evaluate(&inv)?,
            };
            report.values.insert(name.clone(), e.value);
            if let Some(w) = e.witness {
                report.witnesses.insert(name.clone(), w);
            }
            report.order.push(name);
        }
        Ok(report)
    }
}

/// The invariants listed in a report, in presentation order.
pub fn standard_invariants() -> Vec<Invariant> {
    let mut out: Vec<Invariant> = Classical::ALL
        .iter()
        .map(|&c| Invariant::Classical(c))
        .collect();
    let mut words = vec![BinaryWord::empty()];
    for len in 1..=4 {
        words.push(BinaryWord::alternation(Lead::PlusFirst, len));
        words.push(BinaryWord::alternation(Lead::MinusFirst, len));
    }
    for kind in [
        VerbalKind::Ell,
        VerbalKind::EllBar,
        VerbalKind::Sharp,
        VerbalKind::SharpBar,
    ] {
        for word in &words {
            out.push(Invariant::Verbal {
                kind,
                word: word.clone(),
                quasi: false,
            });
        }
    }
    for kind in [LatticeKind::Wedge, LatticeKind::Vee] {
        for n in 1..=2 {
            out.push(Invariant::Lattice {
                kind,
                n,
                quasi: false,
            });
        }
    }
    out.extend([Invariant::UEll, Invariant::USharp, Invariant::EllOmega]);
    for bar in [false, true] {
        for sharp in [false, true] {
            for i in 0..=4 {
                out.push(Invariant::Star {
                    bar,
                    sharp,
                    index: StarIndex(i),
                });
            }
        }
        out.push(Invariant::StarOmega { bar });
    }
    out
}

fn density(x: &FiniteSpace) -> Result<Evaluation, AnalysisError> {
    let sets = OpenCover::minimal_cover(x).members().to_vec();
    let sol = min_cover(&CoverInstance::hitting(x.n(), sets))?;
    Ok(Evaluation::points(
        sol.size,
        sol.witness.into_iter().collect(),
    ))
}

fn lindelof(x: &FiniteSpace) -> Result<Evaluation, AnalysisError> {
    let members = OpenCover::minimal_cover(x).members().to_vec();
    let sol = min_cover(&CoverInstance::cover(x.n(), members.clone()))?;
    Ok(Evaluation::family(
        sol.size,
        sol.witness.iter().map(|&i| members[i]).collect(),
    ))
}

fn spread(x: &FiniteSpace) -> Result<Evaluation, AnalysisError> {
    let s = max_subset(&SubsetInstance::new(x, SubsetPredicate::DiscreteSubspace));
    Ok(Evaluation::points(s.size, s.witness))
}
