//! End-to-end acceptance checks. Each criterion prints one line with its
//! verdict and elapsed time; the process fails if any criterion fails or
//! overruns its time limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use verbal_topology::solver::{
    max_subset, min_cover, CoverInstance, Objective, Solution, SubsetInstance, SubsetPredicate,
};
use verbal_topology::space::{enumerate_all_spaces, named, random_space};
use verbal_topology::verify::{
    random_subjects, sweep_subjects, AggregateReport, Claim, Harness, Subject,
};
use verbal_topology::{Analyzer, BinaryWord, Entourage, FiniteSpace, PointSet};

const SEED: u64 = 20_240_601;

struct Verdict {
    ok: bool,
    summary: String,
}

fn verdict(ok: bool, summary: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        summary: summary.into(),
    }
}

fn enumerated() -> Vec<Subject> {
    sweep_subjects(&[1, 2, 3, 4], 0, 0)
}

/// The enumerated spaces plus 500 seeded random spaces on 5 to 8 points.
fn full_sweep() -> Vec<Subject> {
    let mut s = enumerated();
    s.extend(random_subjects(&[5, 6, 7, 8], 125, SEED));
    s
}

fn run_claims(h: &Harness, ids: &[&str], subjects: &[Subject]) -> (AggregateReport, Vec<String>) {
    let wanted: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let claims: Vec<&Claim> = h.select(&wanted).expect("registered claims");
    let report = h.sweep_subjects(&claims, subjects);
    let problems = report
        .claims
        .iter()
        .filter(|t| t.fail > 0)
        .map(|t| {
            format!(
                "{} failed {} times, first on {}",
                t.id, t.fail, t.counterexamples[0].space_id
            )
        })
        .collect();
    (report, problems)
}

/// Reflexive transitive relations on `n` points, by a plain triple loop.
fn count_preorders(n: usize) -> usize {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut count = 0;
    for mask in 0u64..1 << slots.len() {
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(x, y)) in slots.iter().enumerate() {
            r[x][y] = mask >> k & 1 == 1;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r[a][b] && r[b][c]) || r[a][c])));
        if transitive {
            count += 1;
        }
    }
    count
}

/// Families of subsets of `{0..n}` containing `∅` and the carrier and
/// closed under binary unions and intersections.
fn count_topologies(n: usize) -> usize {
    let full: u32 = (1 << n) - 1;
    let inner: Vec<u32> = (1..full).collect();
    let mut count = 0;
    for mask in 0u64..1 << inner.len() {
        let mut fam = vec![0u32, full];
        fam.extend(
            inner
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        let members: BTreeSet<u32> = fam.iter().copied().collect();
        let closed = fam.iter().all(|&a| {
            fam.iter()
                .all(|&b| members.contains(&(a | b)) && members.contains(&(a & b)))
        });
        if closed {
            count += 1;
        }
    }
    count
}

fn criterion_enumeration(_: &Harness) -> Verdict {
    let ours: Vec<usize> = (1..=4)
        .map(|n| enumerate_all_spaces(n).unwrap().len())
        .collect();
    let preorders: Vec<usize> = (1..=4).map(count_preorders).collect();
    let topologies: Vec<usize> = (1..=4).map(count_topologies).collect();
    let expected = vec![1, 4, 29, 355];
    let distinct = (1..=4).all(|n| {
        let all = enumerate_all_spaces(n).unwrap();
        let set: BTreeSet<Vec<u64>> = all
            .iter()
            .map(|x| x.min_opens().iter().map(|s| s.bits()).collect())
            .collect();
        set.len() == all.len()
    });
    verdict(
        ours == expected && preorders == expected && topologies == expected && distinct,
        format!("enumerated {ours:?}, preorders {preorders:?}, open-set families {topologies:?}"),
    )
}

fn issues(problems: &[String]) -> String {
    if problems.is_empty() {
        String::new()
    } else {
        format!("; {}", problems.join("; "))
    }
}

type Matrix = Vec<Vec<bool>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).any(|j| a[i][j] && b[j][k])).collect())
        .collect()
}

fn criterion_bridge(h: &Harness) -> Verdict {
    let subjects = full_sweep();
    let mut mismatches = 0;
    for s in &subjects {
        let x = &s.space;
        let n = x.n();
        // St^k by the definition, with the cover of minimal open sets
        let members: Vec<PointSet> = (0..n).map(|p| x.min_open(p)).collect();
        let v: Matrix = (0..n)
            .map(|p| (0..n).map(|q| x.min_open(p).contains(q)).collect())
            .collect();
        let v_inv: Matrix = (0..n).map(|p| (0..n).map(|q| v[q][p]).collect()).collect();
        let step = mat_mul(&v_inv, &v);
        let mut power: Matrix = (0..n).map(|p| (0..n).map(|q| p == q).collect()).collect();
        for k in 0..=3 {
            for (p, reach) in power.iter().enumerate() {
                let mut star = PointSet::singleton(p);
                for _ in 0..k {
                    star = members
                        .iter()
                        .filter(|m| m.intersects(star))
                        .fold(PointSet::EMPTY, |acc, &m| acc | m);
                }
                let ball: PointSet = (0..n).filter(|&q| reach[q]).collect();
                if star != ball {
                    mismatches += 1;
                }
            }
            power = mat_mul(&power, &step);
        }
    }
    let (_, problems) = run_claims(h, &["star-ball-bridge"], &subjects);
    verdict(
        mismatches == 0 && problems.is_empty(),
        format!(
            "{} spaces, k <= 3: {mismatches} independent mismatches; harness {}",
            subjects.len(),
            if problems.is_empty() {
                "clean".into()
            } else {
                problems.join("; ")
            }
        ),
    )
}

fn criterion_duality(h: &Harness) -> Verdict {
    let subjects = enumerated();
    let (report, problems) = run_claims(
        h,
        &["star-verbal-duality", "star-l0.5-eq-l", "star-bl0-eq-d"],
        &subjects,
    );
    let checked = report.claims[0].pass;
    verdict(
        problems.is_empty() && checked == 389,
        format!(
            "{checked} spaces, star depth <= 3, plain and barred{}",
            issues(&problems)
        ),
    )
}

fn criterion_oracle(h: &Harness) -> Verdict {
    let subjects = sweep_subjects(&[1, 2, 3], 0, 0);
    let (report, problems) = run_claims(
        h,
        &["oracle-parity-verbal", "oracle-parity-star"],
        &subjects,
    );
    let ran: Vec<usize> = report.claims.iter().map(|t| t.pass).collect();
    verdict(
        problems.is_empty() && ran == vec![34, 34],
        format!(
            "{} spaces on <= 3 points, words of length <= 3, all covers{}",
            ran[0],
            issues(&problems)
        ),
    )
}

fn density_by_search(x: &FiniteSpace) -> usize {
    let n = x.n();
    (0u64..1 << n)
        .map(PointSet::from_bits)
        .filter(|a| (0..n).all(|p| x.min_open(p).intersects(*a)))
        .map(|a| a.len())
        .min()
        .unwrap_or(0)
}

fn criterion_foredensity(h: &Harness) -> Verdict {
    let mut subjects = enumerated();
    subjects.extend(random_subjects(&(1..=10).collect::<Vec<_>>(), 100, SEED));
    let (report, problems) = run_claims(h, &["ell-minus-eq-d"], &subjects);
    let brute_mismatch = subjects
        .iter()
        .filter(|s| {
            let a = Analyzer::new(&s.space);
            let d = a
                .classical(verbal_topology::invariants::Classical::D)
                .unwrap()
                .value;
            d != density_by_search(&s.space)
        })
        .count();
    verdict(
        problems.is_empty() && brute_mismatch == 0 && report.claims[0].pass == subjects.len(),
        format!(
            "{} spaces (389 enumerated, 1000 random on <= 10 points); density search mismatches {brute_mismatch}",
            subjects.len()
        ),
    )
}

fn criterion_diagrams(h: &Harness) -> Verdict {
    let subjects = full_sweep();
    let ids = [
        "classical-*",
        "star-*",
        "lattice-*",
        "chain-*",
        "word-monotone",
        "closed-subspace-*",
        "open-subspace-*",
        "qr-*",
        "cr-*",
    ];
    let (report, problems) = run_claims(h, &ids, &subjects);
    let mut vacuous: Vec<String> = report
        .claims
        .iter()
        .filter(|t| t.vacuous > 0)
        .map(|t| format!("{} {:.1}%", t.id, 100.0 * t.vacuity_rate))
        .collect();
    vacuous.dedup();
    let never_checked: Vec<&str> = report
        .claims
        .iter()
        .filter(|t| t.pass == 0)
        .map(|t| t.id.as_str())
        .collect();
    verdict(
        problems.is_empty() && never_checked.is_empty(),
        format!(
            "{} claims on {} spaces, 0 FAIL expected, {} FAIL; vacuity: {}{}",
            report.claims.len(),
            subjects.len(),
            report.total_failures(),
            vacuous.join(", "),
            if never_checked.is_empty() {
                String::new()
            } else {
                format!("; never checked: {never_checked:?}")
            }
        ),
    )
}

fn criterion_example(h: &Harness) -> Verdict {
    let subjects: Vec<Subject> = [3, 4, 5]
        .iter()
        .map(|n| {
            Subject::new(
                format!("one_nonisolated:{n}"),
                named(&format!("one_nonisolated:{n}")).unwrap(),
            )
        })
        .collect();
    let (report, problems) = run_claims(h, &["nonisolated-*"], &subjects);
    let all_pass = report.claims.iter().all(|t| t.pass == 3);
    verdict(
        problems.is_empty() && all_pass && report.claims.len() == 4,
        "vee[1] = diagonal, wedge[1] = cross at the special point, word -+ gives X x X, u_ell = 1 for n = 3, 4, 5",
    )
}

#[derive(Deserialize)]
struct ZigzagFixture {
    space: FiniteSpace,
    minimal_entourage: Entourage,
    v_inv_v: Entourage,
    equivalence: Entourage,
    stabilization_index: usize,
    u_ell: usize,
    ell_omega_word: BinaryWord,
}

fn criterion_structure(h: &Harness) -> Verdict {
    let subjects = full_sweep();
    let (report, mut problems) = run_claims(
        h,
        &[
            "pervin-minimum-eq-minimal-entourage",
            "quasi-eq-pre",
            "universal-eq-equivalence-closure",
            "ell-omega-eq-u-ell",
            "uniform-eq-quasi-iff-symmetric",
        ],
        &subjects,
    );
    let text = include_str!("fixtures/zigzag3.json");
    let fixture: ZigzagFixture = serde_json::from_str(text).expect("fixture parses");
    let x = named("zigzag:3").unwrap();
    let a = Analyzer::new(&x);
    let v = x.minimal_entourage();
    let vv = v.inverse().compose(&v).unwrap();
    let u = a.universal_uniformity().unwrap();
    let (omega, word) = a.ell_omega().unwrap();
    let golden = fixture.space == x
        && fixture.minimal_entourage == v
        && fixture.v_inv_v == vv
        && fixture.equivalence == u.equivalence
        && fixture.stabilization_index == u.index
        && fixture.u_ell == u.u_ell
        && fixture.ell_omega_word == word
        && omega.value == u.u_ell;
    let strict = vv.is_subset(&u.equivalence) && vv != u.equivalence;
    if !golden {
        problems.push("zigzag:3 differs from the golden fixture".into());
    }
    if !strict {
        problems.push("zigzag:3 does not separate V^-1 V from E".into());
    }
    verdict(
        problems.is_empty() && report.claims.iter().all(|t| t.pass == subjects.len()),
        format!(
            "{} spaces; zigzag:3 fixture matches, V^-1 V strictly inside E, stabilizing word {word}{}",
            subjects.len(),
            issues(&problems)
        ),
    )
}

fn brute_cover(instance: &CoverInstance) -> Option<usize> {
    let m = match instance.objective {
        Objective::MinCover => instance.sets.len(),
        Objective::MinHitting => instance.universe,
    };
    (0u32..1 << m)
        .filter(|mask| {
            let w: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            instance.is_feasible_witness(&w)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

fn random_instances(count: usize) -> Vec<CoverInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|i| {
            let universe = rng.gen_range(1..=14);
            let m = rng.gen_range(1..=12);
            let full = PointSet::full(universe);
            let sets: Vec<PointSet> = (0..m)
                .map(|_| PointSet::from_bits(rng.gen::<u64>()) & full)
                .collect();
            if i % 2 == 0 {
                CoverInstance::cover(universe, sets)
            } else {
                CoverInstance::hitting(universe, sets)
            }
        })
        .collect()
}

/// Subset predicates checked with open sets rather than minimal ones.
fn subset_by_definition(x: &FiniteSpace, p: SubsetPredicate, a: PointSet) -> bool {
    let opens = x.open_sets(usize::MAX).unwrap();
    let nbhds = |z: usize| opens.iter().filter(move |o| o.contains(z));
    let discrete_subspace = a
        .iter()
        .all(|d| opens.iter().any(|o| *o & a == PointSet::singleton(d)));
    match p {
        SubsetPredicate::DiscreteSubspace => discrete_subspace,
        SubsetPredicate::ClosedDiscrete => discrete_subspace && x.closure(a) == a,
        SubsetPredicate::DiscreteSingletonFamily => {
            (0..x.n()).all(|z| nbhds(z).any(|o| (*o & a).len() <= 1))
        }
        SubsetPredicate::DisjointMinOpens => {
            let us: Vec<PointSet> = a.iter().map(|p| x.min_open(p)).collect();
            us.iter()
                .enumerate()
                .all(|(i, u)| us[i + 1..].iter().all(|v| !u.intersects(*v)))
        }
        SubsetPredicate::DiscreteMinOpens => {
            let us: Vec<PointSet> = a.iter().map(|p| x.min_open(p)).collect();
            (0..x.n())
                .all(|z| nbhds(z).any(|o| us.iter().filter(|u| u.intersects(*o)).count() <= 1))
        }
    }
}

fn criterion_solver(_: &Harness) -> Verdict {
    let instances = random_instances(400);
    let solve_all = || -> Vec<Result<Solution, String>> {
        instances
            .iter()
            .map(|i| min_cover(i).map_err(|e| e.to_string()))
            .collect()
    };
    let first = solve_all();
    let again = solve_all();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(solve_all);
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(solve_all);
    let same = |a: &[Result<Solution, String>], b: &[Result<Solution, String>]| {
        a.iter().zip(b).all(|(x, y)| match (x, y) {
            (Ok(x), Ok(y)) => x.size == y.size && x.witness == y.witness,
            (Err(x), Err(y)) => x == y,
            _ => false,
        })
    };
    let deterministic = same(&first, &again) && same(&first, &one) && same(&first, &four);
    let mut wrong = 0;
    for (inst, sol) in instances.iter().zip(&first) {
        match (brute_cover(inst), sol) {
            (Some(best), Ok(s))
                if s.size == best
                    && s.witness.len() == best
                    && inst.is_feasible_witness(&s.witness) => {}
            (None, Err(_)) => {}
            _ => wrong += 1,
        }
    }
    let predicates = [
        SubsetPredicate::DiscreteSubspace,
        SubsetPredicate::ClosedDiscrete,
        SubsetPredicate::DiscreteSingletonFamily,
        SubsetPredicate::DisjointMinOpens,
        SubsetPredicate::DiscreteMinOpens,
    ];
    let mut subset_wrong = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for _ in 0..60 {
        let x = random_space(rng.gen_range(1..=8), 0.15, rng.gen()).unwrap();
        for p in predicates {
            let sol = max_subset(&SubsetInstance::new(&x, p));
            let best = (0u64..1 << x.n())
                .map(PointSet::from_bits)
                .filter(|&a| subset_by_definition(&x, p, a))
                .map(|a| a.len())
                .max()
                .unwrap_or(0);
            let witness_ok =
                sol.witness.len() == sol.size && subset_by_definition(&x, p, sol.witness);
            if sol.size != best || !witness_ok {
                subset_wrong += 1;
            }
        }
    }
    verdict(
        deterministic && wrong == 0 && subset_wrong == 0,
        format!(
            "{} cover/hitting instances with <= 12 sets, {wrong} disagree with enumeration; 300 subset instances, \
             {subset_wrong} disagree; identical across runs and 1/4 threads: {deterministic}",
            instances.len()
        ),
    )
}

type Criterion = (usize, &'static str, u64, fn(&Harness) -> Verdict);

fn main() -> ExitCode {
    let harness = Harness::standard();
    let criteria: [Criterion; 9] = [
        (1, "enumeration ground truth", 10, criterion_enumeration),
        (2, "star and ball bridge", 30, criterion_bridge),
        (3, "star and verbal dual path", 60, criterion_duality),
        (4, "oracle parity", 300, criterion_oracle),
        (5, "foredensity equals density", 60, criterion_foredensity),
        (6, "diagram suites", 300, criterion_diagrams),
        (
            7,
            "one non-isolated point identities",
            60,
            criterion_example,
        ),
        (8, "finite structure identities", 300, criterion_structure),
        (
            9,
            "solver determinism and optimality",
            120,
            criterion_solver,
        ),
    ];
    let mut failed = 0;
    for (number, title, limit, run) in criteria {
        let start = Instant::now();
        let v = run(&harness);
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let ok = v.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {number}: {title} ({:.2}s, limit {limit}s{}) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", overran" },
            v.summary
        );
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
