use crate::cover::{star_of_family, OpenCover};
use crate::entourage::Entourage;
use crate::invariants::oracle::{
    oracle_classical, oracle_lattice, oracle_star, oracle_verbal, FAMILY_ORACLE_LIMIT,
};
use crate::invariants::{AnalysisError, Classical, LatticeKind, StarIndex, VerbalKind};
use crate::pointset::PointSet;
use crate::word::{BinaryWord, Lead};

use super::{infinity_point, Claim, Context, Outcome, Predicate, Relation, Term};

const WORD_LIMIT: usize = 3;
const STAR_DEPTH: usize = 3;
const LATTICE_LIMIT: usize = 3;
const SUBSPACE_BUDGET: usize = 1 << 16;

fn le(id: &str, a: &str, b: &str) -> Claim {
    Claim::compare(id, Term::inv(a), Relation::Le, Term::inv(b))
}

fn eq(id: &str, a: &str, b: &str) -> Claim {
    Claim::compare(id, Term::inv(a), Relation::Eq, Term::inv(b))
}

fn alt(lead: Lead, n: usize) -> BinaryWord {
    BinaryWord::alternation(lead, n)
}

fn star_name(bar: bool, index: StarIndex) -> String {
    format!("{}lstar[{index}]", if bar { "b" } else { "" })
}

/// The registered claims, in listing order.
pub fn standard_claims() -> Vec<Claim> {
    let mut out = Vec::new();
    structure(&mut out);
    classical_diagram(&mut out);
    star_diagram(&mut out);
    quasi_regular(&mut out);
    subspaces(&mut out);
    chains(&mut out);
    lattice(&mut out);
    universal(&mut out);
    nonisolated(&mut out);
    oracles(&mut out);
    out_of_scope(&mut out);
    out
}

fn structure(out: &mut Vec<Claim>) {
    out.push(Claim::custom(
        "compose-powers",
        "V^(vw) = V^v V^w for words of length <= 3",
        compose_powers,
    ));
    out.push(Claim::custom(
        "subword-powers",
        "v <= w as subwords implies V^v is contained in V^w",
        subword_powers,
    ));
    out.push(Claim::custom(
        "star-ball-bridge",
        "St^k(x) over the minimal cover = B(x; (V^-1 V)^k) for k <= 3",
        star_ball_bridge,
    ));
    out.push(Claim::custom(
        "star-verbal-duality",
        "l*n = ell[-+..] (2n letters) and l*(n+1/2) = ell[+-..] (2n+1 letters), also barred",
        star_verbal_duality,
    ));
    out.push(eq("ell-minus-eq-d", "ell[-]", "d"));
    out.push(Claim::compare(
        "d-le-ell-minus-chi",
        Term::inv("d"),
        Relation::Le,
        Term::Product("ell[-]".into(), "chi".into()),
    ));
    out.push(Claim::custom(
        "word-monotone",
        "v <= w as subwords implies ell[w] <= ell[v] and ellbar[w] <= ellbar[v]",
        word_monotone,
    ));
}

fn classical_diagram(out: &mut Vec<Claim>) {
    for (a, b) in [
        ("nw", "w"),
        ("hd", "nw"),
        ("hl", "nw"),
        ("d", "hd"),
        ("s", "hd"),
        ("s", "hl"),
        ("l", "hl"),
        ("c", "d"),
        ("c", "s"),
        ("e", "s"),
        ("e", "l"),
        ("dc", "de"),
        ("dc", "c"),
        ("de", "l"),
        ("de", "s"),
        ("e", "de"),
        ("s", "nw"),
    ] {
        out.push(le(&format!("classical-{a}-le-{b}"), a, b));
    }
    out.push(le("classical-de-le-e", "de", "e").given(&[Predicate::T1]));
}

fn star_diagram(out: &mut Vec<Claim>) {
    for bar in [false, true] {
        let b = if bar { "b" } else { "" };
        for j in 0..STAR_DEPTH {
            let whole = star_name(bar, StarIndex::whole(j));
            let half = star_name(bar, StarIndex::half(j));
            let next = star_name(bar, StarIndex::whole(j + 1));
            out.push(le(&format!("star-{b}l{j}.5-le-{b}l{j}"), &half, &whole));
            out.push(le(
                &format!("star-{b}l{}-le-{b}l{j}.5", j + 1),
                &next,
                &half,
            ));
        }
    }
    for i in 0..=2 * STAR_DEPTH {
        let idx = StarIndex(i);
        out.push(le(
            &format!("star-bl{idx}-le-l{idx}"),
            &star_name(true, idx),
            &star_name(false, idx),
        ));
    }
    for i in 0..2 * STAR_DEPTH - 1 {
        let t = StarIndex(i);
        let up = StarIndex(i + 2);
        out.push(le(
            &format!("star-l{up}-le-bl{t}"),
            &star_name(false, up),
            &star_name(true, t),
        ));
    }
    out.push(le("star-l1-le-de", "lstar[1]", "de"));
    out.push(le("star-l1-le-d", "lstar[1]", "d"));
    out.push(eq("star-l0.5-eq-l", "lstar[0.5]", "l"));
    out.push(Claim::compare(
        "star-l0-eq-points",
        Term::inv("lstar[0]"),
        Relation::Eq,
        Term::Points,
    ));
    out.push(eq("star-bl0-eq-d", "blstar[0]", "d"));
    out.push(le("star-bl0.5-le-c", "blstar[0.5]", "c"));
    out.push(le("star-bl0.5-le-l", "blstar[0.5]", "l"));
    out.push(le("star-bl1.5-le-dc", "blstar[1.5]", "dc"));
    out.push(Claim::compare(
        "star-bl1-le-dc-ld",
        Term::inv("blstar[1]"),
        Relation::Le,
        Term::Product("dc".into(), "ld".into()),
    ));
    out.push(eq(
        "star-omega-eq-bar-omega",
        "lstar[omega]",
        "blstar[omega]",
    ));
}

fn quasi_regular(out: &mut Vec<Claim>) {
    use Predicate::*;
    let qr = [QuasiRegular];
    out.push(eq("qr-dc-eq-bl1.5", "dc", "blstar[1.5]").given(&qr));
    out.push(eq("qr-dc-eq-l-omega", "dc", "lstar[omega]").given(&qr));
    out.push(
        eq("qr-dc-eq-bl1", "dc", "blstar[1]")
            .given(&qr)
            .noted("every finite space is locally separable"),
    );
    out.push(eq("qr-pn-dc-eq-c", "dc", "c").given(&[QuasiRegular, PerfectlyNormal]));
    out.push(eq("qr-pn-dc-eq-bl0.5", "dc", "blstar[0.5]").given(&[QuasiRegular, PerfectlyNormal]));
    out.push(eq("qr-ch-dc-eq-de", "dc", "de").given(&[QuasiRegular, CollectivelyHausdorff]));
    out.push(
        eq("qr-ch-dc-eq-bl1", "dc", "blstar[1]").given(&[QuasiRegular, CollectivelyHausdorff]),
    );
    let para = "paracompact read with Hausdorff; finite instances are discrete";
    out.push(
        eq("qr-para-dc-eq-l", "dc", "l")
            .given(&[QuasiRegular, ParacompactHausdorff])
            .noted(para),
    );
    out.push(
        eq("qr-para-dc-eq-hl", "dc", "hl")
            .given(&[QuasiRegular, ParacompactHausdorff])
            .noted(para),
    );
    let moore = "a finite Moore space is regular T1, hence discrete";
    out.push(
        eq("qr-moore-l1-eq-d", "lstar[1]", "d")
            .given(&[QuasiRegular, Moore])
            .noted(moore),
    );
    out.push(
        eq("qr-moore-e-eq-de", "e", "de")
            .given(&[QuasiRegular, Moore])
            .noted(moore),
    );
    out.push(
        eq("qr-moore-de-eq-hd", "de", "hd")
            .given(&[QuasiRegular, Moore])
            .noted(moore),
    );
}

fn subspaces(out: &mut Vec<Claim>) {
    out.push(Claim::custom(
        "closed-subspace-ell-plus",
        "ell[+](F) <= ell[+](X) for every closed F",
        |ctx| subspace_bound(ctx, true, "ell[+]"),
    ));
    out.push(Claim::custom(
        "closed-subspace-vee1",
        "vee[1](F) <= vee[1](X) for every closed F",
        |ctx| subspace_bound(ctx, true, "vee[1]"),
    ));
    out.push(Claim::custom(
        "open-subspace-ell-minus",
        "ell[-](U) <= ell[-](X) for every open U",
        |ctx| subspace_bound(ctx, false, "ell[-]"),
    ));
    out.push(Claim::custom(
        "open-subspace-vee1",
        "vee[1](U) <= vee[1](X) for every open U",
        |ctx| subspace_bound(ctx, false, "vee[1]"),
    ));
}

fn chains(out: &mut Vec<Claim>) {
    for (id, a, b) in [
        ("chain-wedge1-le-s", "wedge[1]", "s"),
        ("chain-s-le-qvee1", "s", "qvee[1]"),
        ("chain-qvee1-le-vee1", "qvee[1]", "vee[1]"),
        ("chain-vee1-le-nw", "vee[1]", "nw"),
        ("chain-de-le-qell-plus", "de", "qell[+]"),
        ("chain-qell-plus-le-ell-plus", "qell[+]", "ell[+]"),
        ("chain-c-le-qell-minus", "c", "qell[-]"),
        ("chain-qell-minus-le-ell-minus", "qell[-]", "ell[-]"),
        ("chain-ell-minus-le-d", "ell[-]", "d"),
    ] {
        out.push(le(id, a, b));
    }
    out.push(eq("chain-ell-plus-eq-l", "ell[+]", "l"));
    let qr = [Predicate::QuasiRegular];
    out.push(eq("qr-ellbar-pmp-eq-bl1.5", "ellbar[+-+]", "blstar[1.5]").given(&qr));
    out.push(eq("qr-ell-omega-eq-dc", "ell_omega", "dc").given(&qr));
    out.push(eq("qr-ellbar-pmp-eq-dc", "ellbar[+-+]", "dc").given(&qr));
    let cr = [Predicate::CompletelyRegular];
    out.push(eq("cr-qellbar-pmp-eq-dc", "qellbar[+-+]", "dc").given(&cr));
    out.push(eq("cr-ell-omega-eq-u-ell", "ell_omega", "u_ell").given(&cr));
    out.push(eq("cr-u-ell-eq-dc", "u_ell", "dc").given(&cr));
}

fn lattice(out: &mut Vec<Claim>) {
    for n in 1..=LATTICE_LIMIT {
        let pm = format!("ell[{}]", alt(Lead::PlusFirst, n));
        let mp = format!("ell[{}]", alt(Lead::MinusFirst, n));
        out.push(le(
            &format!("lattice-vee{}-le-wedge{n}", n + 1),
            &format!("vee[{}]", n + 1),
            &format!("wedge[{n}]"),
        ));
        out.push(Claim::compare(
            format!("lattice-wedge{n}-le-min{n}"),
            Term::inv(format!("wedge[{n}]")),
            Relation::Le,
            Term::Min(pm.clone(), mp.clone()),
        ));
        out.push(Claim::compare(
            format!("lattice-max{n}-le-vee{n}"),
            Term::Max(pm, mp),
            Relation::Le,
            Term::inv(format!("vee[{n}]")),
        ));
        out.push(le(
            &format!("lattice-u-ell-le-wedge{n}"),
            "u_ell",
            &format!("wedge[{n}]"),
        ));
    }
    out.push(Claim::custom(
        "lattice-u-ell-le-words",
        "u_ell <= ell[w] for every word of length <= 4",
        u_ell_below_words,
    ));
}

fn universal(out: &mut Vec<Claim>) {
    out.push(Claim::custom(
        "quasi-eq-pre",
        "VV = V, so qell[w] = ell[w] for words of length <= 3",
        quasi_eq_pre,
    ));
    out.push(Claim::custom(
        "universal-eq-equivalence-closure",
        "the universal uniformity is principal over the equivalence closure E of V",
        universal_eq_closure,
    ));
    out.push(Claim::custom(
        "ell-omega-eq-u-ell",
        "ell_omega = u_ell, attained at the stabilizing word",
        ell_omega_eq_u_ell,
    ));
    out.push(Claim::custom(
        "pervin-minimum-eq-minimal-entourage",
        "the intersection of the Pervin subbase is V",
        pervin_minimum,
    ));
    out.push(
        Claim::custom(
            "uniform-eq-quasi-iff-discrete",
            "the universal uniformity equals the universal quasi-uniformity iff X is discrete",
            |ctx| {
                let (same, _) = uniform_matches_quasi(ctx);
                let discrete = ctx.space().is_discrete();
                Ok(Outcome::check(same == discrete, || {
                    format!("uniform equals quasi: {same}, discrete: {discrete}")
                }))
            },
        )
        .divergent(
            "the argument needs B(x;U) = X minus a point to be a neighbourhood, which fails \
             without T1; partition topologies are non-discrete with E = V",
        ),
    );
    out.push(Claim::custom(
        "uniform-eq-quasi-iff-symmetric",
        "the universal uniformity equals the universal quasi-uniformity iff V is symmetric",
        |ctx| {
            let (same, v) = uniform_matches_quasi(ctx);
            let symmetric = v.inverse() == v;
            Ok(Outcome::check(same == symmetric, || {
                format!("uniform equals quasi: {same}, symmetric: {symmetric}")
            }))
        },
    ));
}

fn nonisolated(out: &mut Vec<Claim>) {
    let hyp = [Predicate::OneNonisolated];
    out.push(
        Claim::custom(
            "nonisolated-vee1-diagonal",
            "the vee[1] entourage is the diagonal",
            |ctx| {
                let w = ctx.analyzer().lattice_entourage(LatticeKind::Vee, 1)?;
                Ok(Outcome::check(
                    w == Entourage::diagonal(ctx.space().n()),
                    || format!("{w:?}"),
                ))
            },
        )
        .given(&hyp),
    );
    out.push(
        Claim::custom(
            "nonisolated-wedge1-cross",
            "the wedge[1] entourage is the diagonal with the row and column of the special point",
            |ctx| {
                let x = ctx.space();
                let inf = infinity_point(x).expect("hypothesis");
                let rows = (0..x.n())
                    .map(|p| {
                        if p == inf {
                            x.carrier()
                        } else {
                            PointSet::singleton(p).with(inf)
                        }
                    })
                    .collect();
                let cross = Entourage::from_rows(rows).expect("reflexive rows");
                let w = ctx.analyzer().lattice_entourage(LatticeKind::Wedge, 1)?;
                Ok(Outcome::check(w == cross, || format!("{w:?}")))
            },
        )
        .given(&hyp),
    );
    out.push(
        Claim::custom(
            "nonisolated-minus-plus-full",
            "the entourage of the word -+ is X x X",
            |ctx| {
                let w = ctx.analyzer().verbal_entourage(&alt(Lead::MinusFirst, 2));
                Ok(Outcome::check(
                    w == Entourage::full(ctx.space().n()),
                    || format!("{w:?}"),
                ))
            },
        )
        .given(&hyp),
    );
    out.push(
        Claim::compare(
            "nonisolated-u-ell-one",
            Term::inv("u_ell"),
            Relation::Eq,
            Term::Const(1),
        )
        .given(&hyp),
    );
}

fn oracles(out: &mut Vec<Claim>) {
    out.push(
        Claim::custom(
            "oracle-parity-verbal",
            "reduced boundedness numbers equal the supremum over all neighbourhood assignments",
            oracle_parity_verbal,
        )
        .given(&[Predicate::AtMostPoints(3)]),
    );
    out.push(
        Claim::custom(
            "oracle-parity-star",
            "star invariants on the minimal cover equal the supremum over all open covers",
            oracle_parity_star,
        )
        .given(&[Predicate::AtMostPoints(3)]),
    );
    out.push(
        Claim::custom(
            "oracle-parity-classical",
            "classical invariants equal their definitions by exhaustive search",
            oracle_parity_classical,
        )
        .given(&[Predicate::AtMostPoints(4)]),
    );
}

fn out_of_scope(out: &mut Vec<Claim>) {
    out.push(Claim::stub(
        "paracompact-uniform-inclusion",
        "for paracompact X the universal uniformity contains the powers -+-+... of the pre-uniformity",
        "depends on whether paracompact includes Hausdorff; zigzag:3 is non-Hausdorff, \
         finite and so paracompact in the weak sense, and its E strictly contains V^-1 V",
    ));
    out.push(Claim::stub(
        "q-set-ell",
        "verbal invariants of Q-sets",
        "Q-sets are uncountable subsets of the reals",
    ));
    out.push(Claim::stub(
        "q-omega-set-ell",
        "verbal invariants of Q_omega-sets and perfectly meager spaces",
        "the hypotheses concern uncountable separable metrizable spaces",
    ));
    out.push(Claim::stub(
        "metrizable-ell",
        "verbal invariants of metrizable spaces",
        "a finite metrizable space is discrete, where every claimed bound is trivial",
    ));
    out.push(Claim::stub(
        "semitopological-group",
        "a semitopological group separating verbal invariants",
        "the construction is infinite",
    ));
    out.push(Claim::stub(
        "semitopological-group-corollary",
        "consequence of the semitopological group construction",
        "the construction is infinite",
    ));
}

fn compose_powers(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let alg = ctx.algebra();
    let v = ctx.analyzer().minimal_entourage();
    let words: Vec<BinaryWord> = BinaryWord::all_up_to(WORD_LIMIT).collect();
    let powers: Vec<Entourage> = words.iter().map(|w| alg.verbal_power(v, w)).collect();
    for (a, pa) in words.iter().zip(&powers) {
        for (b, pb) in words.iter().zip(&powers) {
            if alg.verbal_power(v, &a.concat(b)) != alg.compose(pa, pb) {
                return Ok(Outcome::check(false, || {
                    format!("fails for v = {a}, w = {b}")
                }));
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn subword_powers(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let alg = ctx.algebra();
    let v = ctx.analyzer().minimal_entourage();
    let words: Vec<BinaryWord> = BinaryWord::all_up_to(WORD_LIMIT).collect();
    let powers: Vec<Entourage> = words.iter().map(|w| alg.verbal_power(v, w)).collect();
    for (a, pa) in words.iter().zip(&powers) {
        for (b, pb) in words.iter().zip(&powers) {
            if a.is_subword_of(b) && !pa.is_subset(pb) {
                return Ok(Outcome::check(false, || format!("V^{a} not inside V^{b}")));
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn star_ball_bridge(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let x = ctx.space();
    let cover = OpenCover::minimal_cover(x);
    for k in 0..=STAR_DEPTH {
        let w = ctx
            .analyzer()
            .verbal_entourage(&alt(Lead::MinusFirst, 2 * k));
        for p in 0..x.n() {
            let a = PointSet::singleton(p);
            let star = star_of_family(cover.members(), a, k);
            let ball = w.ball(a);
            if star != ball {
                return Ok(Outcome::check(false, || {
                    format!("k = {k}, x = {p}: star {star}, ball {ball}")
                }));
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn star_verbal_duality(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let a = ctx.analyzer();
    for depth in 0..=STAR_DEPTH {
        for (bar, kind) in [(false, VerbalKind::Ell), (true, VerbalKind::EllBar)] {
            for (index, word) in [
                (StarIndex::whole(depth), alt(Lead::MinusFirst, 2 * depth)),
                (StarIndex::half(depth), alt(Lead::PlusFirst, 2 * depth + 1)),
            ] {
                let star = a.star(bar, false, index)?.value;
                let verbal = a.verbal(kind, &word)?.value;
                if star != verbal {
                    let mut o = Outcome::compare(star, Relation::Eq, verbal);
                    o.detail = Some(format!("{} vs {:?}[{word}]", star_name(bar, index), kind));
                    return Ok(o);
                }
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn word_monotone(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let a = ctx.analyzer();
    let words: Vec<BinaryWord> = BinaryWord::all_up_to(WORD_LIMIT).collect();
    for kind in [VerbalKind::Ell, VerbalKind::EllBar] {
        let values = words
            .iter()
            .map(|w| a.verbal(kind, w).map(|e| e.value))
            .collect::<Result<Vec<_>, _>>()?;
        for (v, &lv) in words.iter().zip(&values) {
            for (w, &lw) in words.iter().zip(&values) {
                if v.is_subword_of(w) && lw > lv {
                    let mut o = Outcome::compare(lw, Relation::Le, lv);
                    o.detail = Some(format!("{kind:?}: v = {v}, w = {w}"));
                    return Ok(o);
                }
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn subspace_bound(ctx: &Context<'_>, closed: bool, name: &str) -> Result<Outcome, AnalysisError> {
    let x = ctx.space();
    let family = if closed {
        x.closed_sets(SUBSPACE_BUDGET)
    } else {
        x.open_sets(SUBSPACE_BUDGET)
    }
    .map_err(|e| AnalysisError::OracleBudget(e.to_string()))?;
    let whole = ctx.value(name)?;
    let mut worst = 0;
    for s in family.into_iter().filter(|s| !s.is_empty()) {
        let sub = x.subspace(s);
        let v = Context::new(&sub, ctx.algebra()).value(name)?;
        if v > whole {
            let mut o = Outcome::compare(v, Relation::Le, whole);
            o.detail = Some(format!("subspace {s}"));
            return Ok(o);
        }
        worst = worst.max(v);
    }
    Ok(Outcome::compare(worst, Relation::Le, whole))
}

fn u_ell_below_words(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let u = ctx.value("u_ell")?;
    let mut least = usize::MAX;
    for w in BinaryWord::all_up_to(4) {
        least = least.min(ctx.analyzer().verbal(VerbalKind::Ell, &w)?.value);
    }
    Ok(Outcome::compare(u, Relation::Le, least))
}

fn quasi_eq_pre(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let a = ctx.analyzer();
    if !a.quasi_matches_pre() {
        return Ok(Outcome::check(false, || "V is not idempotent".into()));
    }
    for w in BinaryWord::all_up_to(WORD_LIMIT) {
        for kind in [VerbalKind::Ell, VerbalKind::EllBar] {
            if a.q_verbal(kind, &w)? != a.verbal(kind, &w)? {
                return Ok(Outcome::check(false, || format!("{kind:?}[{w}]")));
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

/// Equivalence classes of the symmetric transitive closure, by union-find.
fn closure_classes(v: &Entourage) -> Vec<usize> {
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let n = v.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for (x, y) in v.pairs() {
        let (a, b) = (find(&mut parent, x), find(&mut parent, y));
        parent[a.max(b)] = a.min(b);
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

fn universal_eq_closure(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let a = ctx.analyzer();
    let v = a.minimal_entourage();
    let u = a.universal_uniformity()?;
    let classes = closure_classes(v);
    let n = v.n();
    let by_classes =
        (0..n).all(|x| (0..n).all(|y| u.equivalence.contains(x, y) == (classes[x] == classes[y])));
    if !by_classes {
        return Ok(Outcome::check(false, || {
            "E differs from the union-find closure".into()
        }));
    }
    let stable = a.verbal_entourage(&alt(Lead::MinusFirst, 2 * u.index));
    Ok(Outcome::check(
        stable == u.equivalence && v.is_subset(&u.equivalence),
        || format!("V^(-+)^{} = {stable:?}, E = {:?}", u.index, u.equivalence),
    ))
}

fn ell_omega_eq_u_ell(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let a = ctx.analyzer();
    let (e, word) = a.ell_omega()?;
    let u = a.universal_uniformity()?;
    let mut o = Outcome::compare(e.value, Relation::Eq, u.u_ell);
    o.detail = Some(format!("stabilizing word {word}"));
    Ok(o)
}

fn pervin_minimum(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let p = ctx
        .space()
        .pervin_minimum()
        .map_err(|e| AnalysisError::OracleBudget(e.to_string()))?;
    let v = ctx.analyzer().minimal_entourage();
    Ok(Outcome::check(&p == v, || {
        format!("Pervin minimum {p:?}, V {v:?}")
    }))
}

/// Whether the principal filters over `E` and `V` coincide, with `V`.
fn uniform_matches_quasi(ctx: &Context<'_>) -> (bool, Entourage) {
    let v = ctx.analyzer().minimal_entourage().clone();
    let (e, _) = v.stabilized_equivalence();
    (e == v, v)
}

fn oracle_parity_verbal(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let x = ctx.space();
    let a = ctx.analyzer();
    for w in BinaryWord::all_up_to(WORD_LIMIT) {
        for kind in [
            VerbalKind::Ell,
            VerbalKind::EllBar,
            VerbalKind::Sharp,
            VerbalKind::SharpBar,
        ] {
            let fast = a.verbal(kind, &w)?.value;
            let slow = oracle_verbal(x, kind, &w)?;
            if fast != slow {
                let mut o = Outcome::compare(fast, Relation::Eq, slow);
                o.detail = Some(format!("{kind:?}[{w}]"));
                return Ok(o);
            }
        }
    }
    for n in 1..=2 {
        for kind in [LatticeKind::Wedge, LatticeKind::Vee] {
            let fast = a.verbal_lattice(kind, n)?.value;
            let slow = oracle_lattice(x, kind, n)?;
            if fast != slow {
                let mut o = Outcome::compare(fast, Relation::Eq, slow);
                o.detail = Some(format!("{kind:?}[{n}]"));
                return Ok(o);
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn oracle_parity_star(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let x = ctx.space();
    for i in 0..=2 * STAR_DEPTH {
        for bar in [false, true] {
            let idx = StarIndex(i);
            let fast = ctx.analyzer().star(bar, false, idx)?.value;
            let slow = oracle_star(x, bar, false, idx, true)?;
            if fast != slow {
                let mut o = Outcome::compare(fast, Relation::Eq, slow);
                o.detail = Some(star_name(bar, idx));
                return Ok(o);
            }
        }
    }
    Ok(Outcome::check(true, String::new))
}

fn oracle_parity_classical(ctx: &Context<'_>) -> Result<Outcome, AnalysisError> {
    let x = ctx.space();
    for c in Classical::ALL {
        let family_sized = matches!(c, Classical::W | Classical::Nw | Classical::Chi);
        if family_sized && x.n() > FAMILY_ORACLE_LIMIT {
            continue;
        }
        let fast = ctx.value(c.name())?;
        let slow = oracle_classical(x, c)?;
        if fast != slow {
            let mut o = Outcome::compare(fast, Relation::Eq, slow);
            o.detail = Some(c.name().to_string());
            return Ok(o);
        }
    }
    Ok(Outcome::check(true, String::new))
}
