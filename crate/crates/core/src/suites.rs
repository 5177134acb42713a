//! Verification suites shared by the command line and the acceptance tests.
//! Each suite returns a [`SuiteReport`] made of named parts; output is
//! deterministic for a fixed seed.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braids::{BraidWord, LabelledBraid};
use crate::composites::{CompositeMorphism, DJGMorphism};
use crate::crossed::{check_crossed_identities, Element, Family};
use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::ncsets::{pullback_span_compose, GFMap, NCSetMap, NcSpan, Variant};
use crate::ordmaps::OrderedMap;
use crate::semantics::{
    check_functoriality, check_involution, check_rewrite_soundness, conjugation_action, corrupt_comult,
    exterior_model, group_algebra_model, trivial_action, BimonoidModel, Braiding, Category, EvalReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct Part {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl Part {
    pub fn new(name: impl Into<String>) -> Self {
        Part {
            name: name.into(),
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn from_eval(name: impl Into<String>, report: &EvalReport) -> Self {
        Part {
            name: name.into(),
            checks: report.checked as u64,
            failures: report.failures.len() as u64,
            first_failure: report
                .failures
                .first()
                .map(|f| format!("{} (distance {})", f.what, f.distance)),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    pub parts: Vec<Part>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, parts: Vec<Part>) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: parts.iter().all(Part::passed),
            checks: parts.iter().map(|p| p.checks).sum(),
            failures: parts.iter().map(|p| p.failures).sum(),
            parts,
        }
    }
}

/// The operations the category-axiom checks need.
pub trait Morphism: Clone + Eq + Hash + fmt::Display {
    fn source(&self) -> usize;
    fn target(&self) -> usize;
    /// `self ∘ first`.
    fn after(&self, first: &Self) -> Result<Self>;
    fn beside(&self, other: &Self) -> Result<Self>;
}

impl Morphism for OrderedMap {
    fn source(&self) -> usize {
        self.domain()
    }
    fn target(&self) -> usize {
        self.codomain()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        Ok(self.tensor(other))
    }
}

impl Morphism for Element {
    fn source(&self) -> usize {
        self.arity()
    }
    fn target(&self) -> usize {
        self.arity()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl Morphism for DJGMorphism {
    fn source(&self) -> usize {
        self.domain()
    }
    fn target(&self) -> usize {
        self.codomain()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl Morphism for NCSetMap {
    fn source(&self) -> usize {
        self.domain()
    }
    fn target(&self) -> usize {
        self.codomain()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        Ok(self.tensor(other))
    }
}

impl Morphism for GFMap {
    fn source(&self) -> usize {
        self.domain()
    }
    fn target(&self) -> usize {
        self.codomain()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        Ok(self.tensor(other))
    }
}

impl Morphism for CompositeMorphism {
    fn source(&self) -> usize {
        self.domain()
    }
    fn target(&self) -> usize {
        self.codomain()
    }
    fn after(&self, first: &Self) -> Result<Self> {
        self.compose(first)
    }
    fn beside(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

type HomFn<'a, M> = Box<dyn Fn(usize, usize) -> Option<Vec<M>> + 'a>;
type RandomFn<'a, M> = Box<dyn Fn(usize, usize, &mut ChaCha8Rng) -> Option<M> + 'a>;

/// A category presented by identities, finite hom-sets (when available) and a sampler.
pub struct CategorySpec<'a, M> {
    pub name: String,
    pub identity: Box<dyn Fn(usize) -> M + 'a>,
    pub hom: HomFn<'a, M>,
    pub random: RandomFn<'a, M>,
}

fn id_eq<M: Morphism>(lhs: Result<M>, rhs: &M) -> bool {
    lhs.map_or(false, |l| &l == rhs)
}

fn same<M: Morphism>(lhs: Result<M>, rhs: Result<M>) -> bool {
    matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
}

/// Associativity, identity and interchange laws plus associativity of the
/// tensor, exhaustively over all objects up to `exhaustive_max` (when the
/// hom-sets are finite) and on `samples` random instances up to `sample_max`.
pub fn check_category<M: Morphism>(
    spec: &CategorySpec<'_, M>,
    exhaustive_max: usize,
    sample_max: usize,
    samples: usize,
    seed: u64,
) -> Part {
    let mut part = Part::new(&spec.name);
    let objects = exhaustive_max + 1;
    let homs: Option<Vec<Vec<Vec<M>>>> = (0..objects)
        .map(|a| (0..objects).map(|b| (spec.hom)(a, b)).collect::<Option<Vec<_>>>())
        .collect();
    if let Some(homs) = homs {
        exhaustive_laws(spec, &homs, &mut part);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < samples && attempts < samples * 50 {
        attempts += 1;
        let mut objs = vec![rng.gen_range(0..=sample_max)];
        for i in 1..4 {
            let next = if rng.gen_bool(0.5) { objs[i - 1] } else { rng.gen_range(0..=sample_max) };
            objs.push(next);
        }
        let (Some(f), Some(g), Some(h)) = (
            (spec.random)(objs[0], objs[1], &mut rng),
            (spec.random)(objs[1], objs[2], &mut rng),
            (spec.random)(objs[2], objs[3], &mut rng),
        ) else {
            continue;
        };
        done += 1;
        let lhs = h.after(&g).and_then(|hg| hg.after(&f));
        let rhs = g.after(&f).and_then(|gf| h.after(&gf));
        part.record(same(lhs, rhs), || format!("associativity: {h} | {g} | {f}"));
        part.record(
            id_eq((spec.identity)(f.target()).after(&f), &f) && id_eq(f.after(&(spec.identity)(f.source())), &f),
            || format!("identity: {f}"),
        );
        let lhs = g.after(&f).and_then(|gf| h.after(&g).and_then(|hg| gf.beside(&hg)));
        let rhs = g.beside(&h).and_then(|gh| f.beside(&g).and_then(|fg| gh.after(&fg)));
        part.record(same(lhs, rhs), || format!("interchange: ({g} | {f}) + ({h} | {g})"));
        let lhs = f.beside(&g).and_then(|fg| fg.beside(&h));
        let rhs = g.beside(&h).and_then(|gh| f.beside(&gh));
        part.record(same(lhs, rhs), || format!("tensor associativity: {f} + {g} + {h}"));
    }
    if done < samples {
        part.record(false, || format!("sampler produced only {done} of {samples} triples"));
    }
    part
}

fn exhaustive_laws<M: Morphism>(spec: &CategorySpec<'_, M>, homs: &[Vec<Vec<M>>], part: &mut Part) {
    let objects = homs.len();
    let index: Vec<Vec<HashMap<&M, usize>>> = homs
        .iter()
        .map(|row| row.iter().map(|h| h.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect())
        .collect();
    // table[a][b][c][g * |H(a,b)| + f] = index of g∘f in H(a,c)
    let mut table: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![vec![Vec::new(); objects]; objects]; objects];
    for a in 0..objects {
        for b in 0..objects {
            for c in 0..objects {
                let (fs, gs) = (&homs[a][b], &homs[b][c]);
                let mut entries = Vec::with_capacity(fs.len() * gs.len());
                for g in gs {
                    for f in fs {
                        let idx = g.after(f).ok().and_then(|gf| index[a][c].get(&gf).copied());
                        part.record(idx.is_some(), || format!("closure: {g} after {f}"));
                        entries.push(idx.unwrap_or(usize::MAX));
                    }
                }
                table[a][b][c] = entries;
            }
        }
    }
    for a in 0..objects {
        let id_a = index[a][a].get(&(spec.identity)(a)).copied();
        part.record(id_a.is_some(), || format!("identity on {a} is missing"));
        for b in 0..objects {
            let id_b = index[b][b].get(&(spec.identity)(b)).copied();
            let nf = homs[a][b].len();
            if let (Some(ia), Some(ib)) = (id_a, id_b) {
                for (fi, f) in homs[a][b].iter().enumerate() {
                    let left = table[a][b][b][ib * nf + fi];
                    let right = table[a][a][b][fi * homs[a][a].len() + ia];
                    part.record(left == fi && right == fi, || format!("identity: {f}"));
                }
            }
            for c in 0..objects {
                let ng = homs[b][c].len();
                for d in 0..objects {
                    let nh = homs[c][d].len();
                    let n_ac = homs[a][c].len();
                    for h in 0..nh {
                        for g in 0..ng {
                            let hg = table[b][c][d][h * ng + g];
                            for f in 0..nf {
                                let gf = table[a][b][c][g * nf + f];
                                let ok = gf != usize::MAX
                                    && hg != usize::MAX
                                    && table[a][c][d][h * n_ac + gf] == table[a][b][d][hg * nf + f];
                                part.record(ok, || {
                                    format!(
                                        "associativity: {} | {} | {}",
                                        homs[c][d][h], homs[b][c][g], homs[a][b][f]
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let max = objects - 1;
    for (a1, b1, c1) in triples(max) {
        for (a2, b2, c2) in triples(max) {
            if a1 + a2 > max || b1 + b2 > max || c1 + c2 > max {
                continue;
            }
            for f1 in &homs[a1][b1] {
                for g1 in &homs[b1][c1] {
                    let left1 = g1.after(f1);
                    for f2 in &homs[a2][b2] {
                        let f12 = f1.beside(f2);
                        for g2 in &homs[b2][c2] {
                            let lhs = left1.clone().and_then(|l| g2.after(f2).and_then(|r| l.beside(&r)));
                            let rhs = g1
                                .beside(g2)
                                .and_then(|g12| f12.clone().and_then(|f12| g12.after(&f12)));
                            part.record(same(lhs, rhs), || format!("interchange: ({g1} | {f1}) + ({g2} | {f2})"));
                        }
                    }
                }
            }
        }
    }
    for (a1, b1) in pairs(max) {
        for (a2, b2) in pairs(max) {
            for (a3, b3) in pairs(max) {
                if a1 + a2 + a3 > max || b1 + b2 + b3 > max {
                    continue;
                }
                for f in &homs[a1][b1] {
                    for g in &homs[a2][b2] {
                        for h in &homs[a3][b3] {
                            let lhs = f.beside(g).and_then(|fg| fg.beside(h));
                            let rhs = g.beside(h).and_then(|gh| f.beside(&gh));
                            part.record(same(lhs, rhs), || format!("tensor associativity: {f} + {g} + {h}"));
                        }
                    }
                }
            }
        }
    }
}

fn pairs(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(move |a| (0..=max).map(move |b| (a, b)))
}

fn triples(max: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(max).flat_map(move |(a, b)| (0..=max).map(move |c| (a, b, c)))
}

fn choose<T: Clone>(items: Vec<T>, rng: &mut ChaCha8Rng) -> Option<T> {
    items.choose(rng).cloned()
}

pub fn delta_spec<'a>() -> CategorySpec<'a, OrderedMap> {
    CategorySpec {
        name: "delta".into(),
        identity: Box::new(OrderedMap::identity),
        hom: Box::new(|n, m| Some(OrderedMap::enumerate(n, m))),
        random: Box::new(|n, m, rng| choose(OrderedMap::enumerate(n, m), rng)),
    }
}

pub fn elements_spec(family: Family, group: &Arc<FiniteGroup>) -> CategorySpec<'_, Element> {
    CategorySpec {
        name: format!("elements/{family}"),
        identity: Box::new(move |n| Element::identity(family, group, n)),
        hom: Box::new(move |n, m| if n == m { Element::enumerate(family, group, n) } else { Some(Vec::new()) }),
        random: Box::new(move |n, m, rng| (n == m).then(|| Element::random(family, group, n, 6, rng))),
    }
}

pub fn djg_spec(family: Family, group: &Arc<FiniteGroup>) -> CategorySpec<'_, DJGMorphism> {
    CategorySpec {
        name: format!("djg/{family}"),
        identity: Box::new(move |n| DJGMorphism::identity(family, group, n)),
        hom: Box::new(move |n, m| DJGMorphism::enumerate(family, group, n, m)),
        random: Box::new(move |n, m, rng| DJGMorphism::random(family, group, n, m, rng)),
    }
}

pub fn ncsets_spec(group: &Arc<FiniteGroup>) -> CategorySpec<'_, NCSetMap> {
    CategorySpec {
        name: "gfas".into(),
        identity: Box::new(move |n| NCSetMap::identity(group, n)),
        hom: Box::new(move |n, m| Some(NCSetMap::enumerate(group, n, m))),
        random: Box::new(move |n, m, rng| NCSetMap::random(group, n, m, rng)),
    }
}

pub fn gf_spec(group: &Arc<FiniteGroup>) -> CategorySpec<'_, GFMap> {
    CategorySpec {
        name: "gf".into(),
        identity: Box::new(move |n| GFMap::identity(group, n)),
        hom: Box::new(move |n, m| Some(GFMap::enumerate(group, n, m))),
        random: Box::new(move |n, m, rng| NCSetMap::random(group, n, m, rng).map(|f| f.forget())),
    }
}

/// Canonical triples with middles of at most two; sampled only.
pub fn spans_spec(family: Family, group: &Arc<FiniteGroup>) -> CategorySpec<'_, CompositeMorphism> {
    CategorySpec {
        name: format!("spans/{family}"),
        identity: Box::new(move |n| CompositeMorphism::identity(family, group, n)),
        hom: Box::new(|_, _| None),
        random: Box::new(move |n, m, rng| Some(CompositeMorphism::random(family, group, n, m, 2, rng))),
    }
}

/// Category axioms for `𝔻`, `J⊗𝔾`, `𝔻⊗J⊗𝔾`, `GF(as)`, `GF` and the span category.
pub fn category_suite(
    family: Family,
    group: &Arc<FiniteGroup>,
    exhaustive_max: usize,
    sample_max: usize,
    samples: usize,
    seed: u64,
) -> SuiteReport {
    let parts = vec![
        check_category(&delta_spec(), exhaustive_max, sample_max, samples, seed),
        check_category(&elements_spec(family, group), exhaustive_max, sample_max, samples, seed),
        check_category(&djg_spec(family, group), exhaustive_max, sample_max, samples, seed),
        check_category(&ncsets_spec(group), exhaustive_max, sample_max, samples, seed),
        check_category(&gf_spec(group), exhaustive_max, sample_max, samples, seed),
        check_category(&spans_spec(family, group), exhaustive_max, sample_max.min(2), samples / 4, seed),
    ];
    SuiteReport::new(format!("category/{family}/{}", group_label(group)), parts)
}

fn group_label(group: &FiniteGroup) -> String {
    format!("order{}", group.order())
}

pub fn crossed_suite(family: Family, group: &Arc<FiniteGroup>, max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let r = check_crossed_identities(family, group, max_n, samples, seed);
    let part = Part {
        name: format!("crossed/{family}"),
        checks: r.checks as u64,
        failures: r.failures as u64,
        first_failure: r.first_failure.clone(),
    };
    SuiteReport::new(format!("crossed/{family}"), vec![part])
}

/// `C(n+m−1, n)`, with `C(−1, 0) = 1`.
pub fn monotone_count(n: usize, m: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let (top, k) = ((n + m - 1) as u128, n as u128);
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

/// `|Hom(n, m)|` in `𝔻⊗ℙ⊗𝔾` by the closed form.
pub fn djg_count_formula(n: usize, m: usize, group_order: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    monotone_count(n, m) * fact * (group_order as u128).pow(n as u32)
}

/// `Σ_f Π_i |f⁻¹(i)|! · |G|ⁿ` over all set maps `f: n → m`.
pub fn ncset_count_by_fibres(n: usize, m: usize, group_order: usize) -> u128 {
    if m == 0 {
        return u128::from(n == 0);
    }
    let factorial = |k: usize| (1..=k as u128).product::<u128>();
    let mut total = 0u128;
    let mut f = vec![0usize; n];
    loop {
        let mut sizes = vec![0usize; m];
        for &t in &f {
            sizes[t] += 1;
        }
        total += sizes.iter().map(|&k| factorial(k)).product::<u128>();
        // next map in lexicographic order
        let Some(pos) = f.iter().rposition(|&t| t + 1 < m) else {
            break;
        };
        f[pos] += 1;
        f[pos + 1..].fill(0);
    }
    total * (group_order as u128).pow(n as u32)
}

/// Hom-set sizes by formula, by enumerating pairs and by enumerating
/// labelled non-commutative set maps.
pub fn counting_part(group: &Arc<FiniteGroup>, max_n: usize, max_m: usize) -> Part {
    let mut part = Part::new("counting");
    for n in 0..=max_n {
        for m in 1..=max_m {
            let formula = djg_count_formula(n, m, group.order());
            let by_fibres = ncset_count_by_fibres(n, m, group.order());
            let pairs = DJGMorphism::enumerate(Family::Symmetric, group, n, m).map_or(0, |v| v.len()) as u128;
            let maps = NCSetMap::enumerate(group, n, m);
            let distinct = maps.iter().collect::<std::collections::HashSet<_>>().len() as u128;
            part.record(
                formula == by_fibres && formula == pairs && formula == distinct && distinct == maps.len() as u128,
                || format!("Hom({n},{m}): formula {formula}, fibres {by_fibres}, pairs {pairs}, set maps {distinct}"),
            );
        }
    }
    part
}

/// The isomorphism between labelled non-commutative set maps and pairs:
/// round trips for arities up to `round_trip_max` and functoriality on all
/// composable pairs up to `functor_max`.
pub fn iso_suite(group: &Arc<FiniteGroup>, round_trip_max: usize, functor_max: usize) -> SuiteReport {
    let mut round = Part::new("round-trip");
    for n in 0..=round_trip_max {
        for m in 0..=round_trip_max {
            for f in NCSetMap::enumerate(group, n, m) {
                let back = NCSetMap::from_pair(&f.to_pair());
                round.record(back.as_ref() == Ok(&f), || format!("from_pair(to_pair({f}))"));
            }
            for p in DJGMorphism::enumerate(Family::Symmetric, group, n, m).unwrap_or_default() {
                let back = NCSetMap::from_pair(&p).map(|f| f.to_pair());
                round.record(back.as_ref() == Ok(&p), || format!("to_pair(from_pair({p}))"));
            }
        }
    }
    let mut functor = Part::new("functoriality");
    let homs: Vec<Vec<Vec<NCSetMap>>> = (0..=functor_max)
        .map(|a| (0..=functor_max).map(|b| NCSetMap::enumerate(group, a, b)).collect())
        .collect();
    for (a, b, c) in triples(functor_max) {
        for f in &homs[a][b] {
            let pf = f.to_pair();
            for g in &homs[b][c] {
                let lhs = g.compose(f).map(|gf| gf.to_pair());
                let rhs = g.to_pair().compose(&pf);
                functor.record(same(lhs, rhs), || format!("to_pair({g} after {f})"));
            }
        }
    }
    for (a1, b1) in pairs(functor_max) {
        for (a2, b2) in pairs(functor_max) {
            if a1 + a2 > functor_max || b1 + b2 > functor_max {
                continue;
            }
            for f in &homs[a1][b1] {
                for g in &homs[a2][b2] {
                    let lhs = f.tensor(g).to_pair();
                    functor.record(f.to_pair().tensor(&g.to_pair()).as_ref() == Ok(&lhs), || {
                        format!("to_pair({f} + {g})")
                    });
                }
            }
        }
    }
    SuiteReport::new(
        format!("iso/{}", group_label(group)),
        vec![round, functor, counting_part(group, 4, 4)],
    )
}

fn dual_oracle_check(part: &mut Part, c2: &CompositeMorphism, c1: &CompositeMorphism) {
    let rewriting = c2
        .compose(c1)
        .and_then(|c| NcSpan::from_composite(&c))
        .map(|s| s.class(Variant::AA));
    let pullback = NcSpan::from_composite(c1)
        .and_then(|s1| NcSpan::from_composite(c2).and_then(|s2| pullback_span_compose(&s2, &s1)))
        .map(|s| s.class(Variant::AA));
    part.record(matches!((&rewriting, &pullback), (Ok(a), Ok(b)) if a == b), || {
        format!("({c2}) after ({c1})")
    });
}

/// Span composition by generator rewriting against composition by labelled
/// pullback, in the symmetric family. Exhaustive over every composable pair of
/// canonical triples with boundaries at most `max_n` and middles at most
/// `exhaustive_middle`; then `samples` random pairs with middles up to `max_n`.
pub fn rewrite_suite(
    group: &Arc<FiniteGroup>,
    max_n: usize,
    exhaustive_middle: usize,
    samples: usize,
    seed: u64,
) -> SuiteReport {
    let fam = Family::Symmetric;
    let mut exhaustive = Part::new(format!("exhaustive/boundary<={max_n}/middle<={exhaustive_middle}"));
    let homs: Vec<Vec<Vec<CompositeMorphism>>> = (0..=max_n)
        .map(|a| {
            (0..=max_n)
                .map(|b| CompositeMorphism::enumerate(fam, group, a, b, exhaustive_middle).unwrap_or_default())
                .collect()
        })
        .collect();
    for (a, b, c) in triples(max_n) {
        for c1 in &homs[a][b] {
            for c2 in &homs[b][c] {
                dual_oracle_check(&mut exhaustive, c2, c1);
            }
        }
    }
    let mut sampled = Part::new(format!("sampled/boundary<={max_n}/middle<={max_n}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let objs: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=max_n)).collect();
        let c1 = CompositeMorphism::random(fam, group, objs[0], objs[1], max_n, &mut rng);
        let c2 = CompositeMorphism::random(fam, group, objs[1], objs[2], max_n, &mut rng);
        dual_oracle_check(&mut sampled, &c2, &c1);
    }
    SuiteReport::new(format!("rewrite/{}", group_label(group)), vec![exhaustive, sampled])
}

/// Braid word problem: free cancellation, braid-relation insertions and a
/// separation check on random words with up to `max_strands` strands.
pub fn braid_word_suite(words: usize, max_strands: usize, max_len: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cancel = Part::new("free cancellation");
    let mut relations = Part::new("relation insertion");
    let mut separation = Part::new("separation");
    for _ in 0..words {
        let n = rng.gen_range(2..=max_strands.max(2));
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let w = BraidWord::new(n, letters.clone()).expect("valid letters");
        let nf = w.normal_form();
        let both = w.compose(&w.inverse()).expect("same strands");
        cancel.record(both.normal_form().is_identity(), || format!("{w} · inverse"));
        let both = w.inverse().compose(&w).expect("same strands");
        cancel.record(both.normal_form().is_identity(), || format!("inverse · {w}"));

        let at = rng.gen_range(0..=letters.len());
        let i = rng.gen_range(1..n as i32);
        let mut inserts: Vec<Vec<i32>> = vec![vec![i, -i], vec![-i, i]];
        if i + 1 < n as i32 {
            inserts.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
        }
        if i + 2 < n as i32 {
            let j = rng.gen_range(i + 2..n as i32);
            inserts.push(vec![i, j, -i, -j]);
        }
        for ins in inserts {
            let mut l = letters.clone();
            l.splice(at..at, ins.iter().copied());
            let v = BraidWord::new(n, l).expect("valid letters");
            relations.record(v.normal_form() == nf, || format!("{w} with {ins:?} at {at}"));
        }
        let mut l = letters.clone();
        l.insert(at, i);
        let v = BraidWord::new(n, l).expect("valid letters");
        separation.record(v.normal_form() != nf, || format!("{w} with s{i} at {at}"));
    }
    SuiteReport::new("braid word problem", vec![cancel, relations, separation])
}

/// `k[C₂]`, `k[S₃]` with `C₂` acting by conjugation, and the exterior model.
pub fn default_models(p: u32) -> Result<Vec<(String, BimonoidModel)>> {
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let h2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric3();
    Ok(vec![
        ("k[C2]".into(), group_algebra_model(p, &h2, Arc::clone(&c2), &trivial_action(&h2, &c2))?),
        ("k[S3]".into(), group_algebra_model(p, &s3, c2, &conjugation_action(&s3, 1))?),
        ("exterior".into(), exterior_model(p)?),
    ])
}

/// Families a model can interpret: flags need an involution.
pub fn model_families(model: &BimonoidModel) -> Vec<Family> {
    Family::ALL
        .into_iter()
        .filter(|f| *f != Family::Hyperoctahedral || model.involution().is_some())
        .collect()
}

fn is_commutative(model: &BimonoidModel) -> bool {
    let c = model.symmetry();
    model.mult().mul(&c).map_or(false, |mc| &mc == model.mult())
}

/// Axioms, functoriality, rewrite soundness and involution identities for
/// one model; `max_arity` bounds boundaries and span middles.
pub fn model_parts(
    name: &str,
    model: &BimonoidModel,
    samples: usize,
    max_arity: usize,
    seed: u64,
) -> Vec<Part> {
    let mut parts = Vec::new();
    let mut axioms = Part::new(format!("{name}: axioms"));
    let failures = model.verify();
    axioms.record(failures.is_empty(), || failures.join(", "));
    parts.push(axioms);
    for fam in model_families(model) {
        for cat in [Category::Djg(fam), Category::Spans(fam)] {
            let r = check_functoriality(model, cat, samples, max_arity, seed);
            parts.push(Part::from_eval(format!("{name}: {cat}"), &r));
        }
        let r = check_rewrite_soundness(model, fam, samples / 4, seed);
        parts.push(Part::from_eval(format!("{name}: rewrite/{fam}"), &r));
    }
    for cat in [Category::NcSets, Category::NcSpans] {
        let r = check_functoriality(model, cat, samples, max_arity, seed);
        parts.push(Part::from_eval(format!("{name}: {cat}"), &r));
    }
    if is_commutative(model) {
        let r = check_functoriality(model, Category::Gf, samples, max_arity, seed);
        parts.push(Part::from_eval(format!("{name}: gf"), &r));
    }
    if model.involution().is_some() {
        parts.push(Part::from_eval(format!("{name}: involution"), &check_involution(model)));
    }
    parts
}

/// The mutated model must fail functoriality somewhere.
pub fn mutation_part(name: &str, model: &BimonoidModel, samples: usize, seed: u64) -> Result<Part> {
    let broken = model.with_comult(corrupt_comult(model))?;
    let mut part = Part::new(format!("{name}: mutation detected"));
    let r = check_functoriality(&broken, Category::Spans(Family::Symmetric), samples, 2, seed);
    part.record(!r.passed(), || "corrupted coproduct passed every functoriality check".into());
    Ok(part)
}

/// Ribbon elements with zero twists against their underlying braids.
pub fn zero_twist_part(name: &str, model: &BimonoidModel, samples: usize, seed: u64) -> Part {
    let mut part = Part::new(format!("{name}: zero twists"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = Arc::clone(model.group());
    for _ in 0..samples {
        let n = rng.gen_range(0..=3);
        let Element::Braid(b) = Element::random(Family::Braid, &group, n, 8, &mut rng) else {
            unreachable!("braid family")
        };
        let ribbon = LabelledBraid::new(b.labels().clone(), b.braid().clone(), Some(vec![0; n]))
            .map(Element::Braid);
        let lhs = ribbon.and_then(|r| model.eval_element(&r));
        let rhs = model.eval_element(&Element::Braid(b.clone()));
        part.record(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || format!("{b}"));
    }
    part
}

/// Every default model, or just `model` when one is supplied.
pub fn semantics_suite(model: Option<&BimonoidModel>, samples: usize, max_arity: usize, seed: u64) -> Result<SuiteReport> {
    let models = match model {
        Some(m) => vec![("model".to_string(), m.clone())],
        None => default_models(5)?,
    };
    let mut parts = Vec::new();
    for (name, m) in &models {
        parts.extend(model_parts(name, m, samples, max_arity, seed));
        parts.push(mutation_part(name, m, samples, seed)?);
        if matches!(m.braiding(), Braiding::Sign(_)) {
            parts.push(zero_twist_part(name, m, samples, seed));
        }
    }
    Ok(SuiteReport::new("semantics", parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_closed_form() {
        assert_eq!(djg_count_formula(2, 1, 2), 8);
        assert_eq!(monotone_count(0, 3), 1);
        assert_eq!(monotone_count(2, 0), 0);
        for n in 0..4 {
            for m in 1..4 {
                assert_eq!(djg_count_formula(n, m, 3), ncset_count_by_fibres(n, m, 3));
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let r = category_suite(Family::Symmetric, &g, 1, 2, 20, 1);
        assert!(r.passed, "{:?}", r.parts);
        let r = iso_suite(&g, 2, 1);
        assert!(r.passed, "{:?}", r.parts);
        let r = rewrite_suite(&g, 2, 1, 50, 1);
        assert!(r.passed, "{:?}", r.parts);
        let r = braid_word_suite(50, 4, 8, 1);
        assert!(r.passed, "{:?}", r.parts);
    }

    #[test]
    fn wrong_identity_is_caught() {
        let spec = CategorySpec {
            name: "wrong identity".into(),
            identity: Box::new(|n| {
                if n == 2 {
                    OrderedMap::new(vec![0, 0], 2).unwrap()
                } else {
                    OrderedMap::identity(n)
                }
            }),
            hom: Box::new(|n, m| Some(OrderedMap::enumerate(n, m))),
            random: Box::new(|n, m, rng| choose(OrderedMap::enumerate(n, m), rng)),
        };
        assert!(!check_category(&spec, 2, 2, 10, 0).passed());
        assert!(check_category(&delta_spec(), 2, 3, 10, 0).passed());
        let braids = Arc::new(FiniteGroup::trivial());
        assert!(check_category(&elements_spec(Family::Braid, &braids), 2, 3, 10, 0).passed());
    }

    #[test]
    fn semantics_suite_runs_on_one_model() {
        let model = exterior_model(5).unwrap();
        let r = semantics_suite(Some(&model), 10, 2, 3).unwrap();
        assert!(r.passed, "{:?}", r.parts.iter().filter(|p| !p.passed()).collect::<Vec<_>>());
    }
}
