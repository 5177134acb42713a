//! The distributive law moving a labelled group element past an ordered map,
//! for the symmetric, hyperoctahedral, braid and ribbon families.
//!
//! Given `j` on `m` and `φ: n → m`, the rewrite produces `ψ: n → m` and `j'` on
//! `n` with `j ∘ φ = ψ ∘ j'`. Fibres of `φ` travel with their strand: `ψ` has
//! the fibre sizes of `φ` permuted by `j`, `j'` moves each fibre as a block
//! (reversed under a `−` flag, cabled for braids), and labels and flags are
//! pulled back along `ψ`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braids::{BraidWord, LabelledBraid};
use crate::error::{check_arity, Error, Result};
use crate::groups::{
    offsets, pull_back, skeletal_relabel, FiniteGroup, Flag, GroupTuple, LabelledPermutation, Perm,
};
use crate::ordmaps::OrderedMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Symmetric,
    Hyperoctahedral,
    Braid,
    Ribbon,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Symmetric, Family::Hyperoctahedral, Family::Braid, Family::Ribbon];

    pub fn name(self) -> &'static str {
        match self {
            Family::Symmetric => "symmetric",
            Family::Hyperoctahedral => "hyperoctahedral",
            Family::Braid => "braid",
            Family::Ribbon => "ribbon",
        }
    }

    /// Whether each `J_n` is finite, so that suites can enumerate it.
    pub fn is_finite(self) -> bool {
        matches!(self, Family::Symmetric | Family::Hyperoctahedral)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(Family::Symmetric),
            "hyperoctahedral" => Ok(Family::Hyperoctahedral),
            "braid" => Ok(Family::Braid),
            "ribbon" => Ok(Family::Ribbon),
            _ => Err(Error::InvalidMap(format!("unknown family {s:?}"))),
        }
    }
}

/// A labelled element of `G^n ⋊ J_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Perm(LabelledPermutation),
    Braid(LabelledBraid),
}

impl Element {
    pub fn identity(family: Family, group: &Arc<FiniteGroup>, n: usize) -> Self {
        match family {
            Family::Symmetric => Element::Perm(LabelledPermutation::identity(group, n, false)),
            Family::Hyperoctahedral => Element::Perm(LabelledPermutation::identity(group, n, true)),
            Family::Braid => Element::Braid(LabelledBraid::identity(group, n, false)),
            Family::Ribbon => Element::Braid(LabelledBraid::identity(group, n, true)),
        }
    }

    /// Pure labels with trivial core.
    pub fn from_labels(family: Family, labels: GroupTuple) -> Self {
        let n = labels.len();
        match family {
            Family::Symmetric | Family::Hyperoctahedral => Element::Perm(
                LabelledPermutation::new(
                    labels,
                    Perm::identity(n),
                    (family == Family::Hyperoctahedral).then(|| vec![Flag::Plus; n]),
                )
                .expect("matching arity"),
            ),
            Family::Braid | Family::Ribbon => Element::Braid(
                LabelledBraid::new(
                    labels,
                    BraidWord::identity(n),
                    (family == Family::Ribbon).then(|| vec![0; n]),
                )
                .expect("matching arity"),
            ),
        }
    }

    /// The positive crossing of positions `i, i+1` (0-based) on `n` strands.
    pub fn crossing(family: Family, group: &Arc<FiniteGroup>, n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(Error::OutOfRange {
                context: "crossing",
                value: i + 1,
                bound: n.saturating_sub(1),
            });
        }
        let labels = GroupTuple::identity(group, n);
        Ok(match family {
            Family::Symmetric | Family::Hyperoctahedral => Element::Perm(LabelledPermutation::new(
                labels,
                Perm::adjacent(n, i),
                (family == Family::Hyperoctahedral).then(|| vec![Flag::Plus; n]),
            )?),
            Family::Braid | Family::Ribbon => Element::Braid(LabelledBraid::new(
                labels,
                BraidWord::generator(n, i + 1)?,
                (family == Family::Ribbon).then(|| vec![0; n]),
            )?),
        })
    }

    /// The `−` flag on strand `i` (0-based); hyperoctahedral only.
    pub fn flag(group: &Arc<FiniteGroup>, n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange {
                context: "flag",
                value: i + 1,
                bound: n,
            });
        }
        let mut flags = vec![Flag::Plus; n];
        flags[i] = Flag::Minus;
        Ok(Element::Perm(LabelledPermutation::new(
            GroupTuple::identity(group, n),
            Perm::identity(n),
            Some(flags),
        )?))
    }

    /// One full twist on ribbon `i` (0-based); ribbon only.
    pub fn twist(group: &Arc<FiniteGroup>, n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::OutOfRange {
                context: "twist",
                value: i + 1,
                bound: n,
            });
        }
        let mut twists = vec![0; n];
        twists[i] = 1;
        Ok(Element::Braid(LabelledBraid::new(
            GroupTuple::identity(group, n),
            BraidWord::identity(n),
            Some(twists),
        )?))
    }

    pub fn family(&self) -> Family {
        match self {
            Element::Perm(p) if p.is_hyperoctahedral() => Family::Hyperoctahedral,
            Element::Perm(_) => Family::Symmetric,
            Element::Braid(b) if b.is_ribbon() => Family::Ribbon,
            Element::Braid(_) => Family::Braid,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Element::Perm(p) => p.arity(),
            Element::Braid(b) => b.arity(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.labels().group()
    }

    pub fn labels(&self) -> &GroupTuple {
        match self {
            Element::Perm(p) => p.labels(),
            Element::Braid(b) => b.labels(),
        }
    }

    pub fn underlying_permutation(&self) -> Perm {
        match self {
            Element::Perm(p) => p.perm().clone(),
            Element::Braid(b) => b.underlying_permutation(),
        }
    }

    pub fn flags(&self) -> Option<&[Flag]> {
        match self {
            Element::Perm(p) => p.flags(),
            Element::Braid(_) => None,
        }
    }

    pub fn twists(&self) -> Option<&[i64]> {
        match self {
            Element::Perm(_) => None,
            Element::Braid(b) => b.twists(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Braid(b) => b.is_identity(),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::FamilyMismatch {
            expected: self.family().name(),
            found: other.family().name(),
        }
    }

    /// Group product, `other` applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Ok(Element::Perm(a.compose(b)?)),
            (Element::Braid(a), Element::Braid(b)) => Ok(Element::Braid(a.compose(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Braid(b) => Element::Braid(b.inverse()),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Ok(Element::Perm(a.tensor(b)?)),
            (Element::Braid(a), Element::Braid(b)) => Ok(Element::Braid(a.tensor(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    /// The image in `G^n ⋊ Σ_n`: braids go to their permutation, twists and
    /// flags are dropped.
    pub fn to_symmetric(&self) -> LabelledPermutation {
        LabelledPermutation::new(self.labels().clone(), self.underlying_permutation(), None)
            .expect("matching arity")
    }

    /// Every element on `n` strands, for the finite families.
    pub fn enumerate(family: Family, group: &Arc<FiniteGroup>, n: usize) -> Option<Vec<Self>> {
        match family {
            Family::Symmetric | Family::Hyperoctahedral => Some(
                LabelledPermutation::enumerate(group, n, family == Family::Hyperoctahedral)
                    .into_iter()
                    .map(Element::Perm)
                    .collect(),
            ),
            _ => None,
        }
    }

    /// A random element; braid words have length at most `max_len` and twists
    /// lie in `-2..=2`.
    pub fn random<R: Rng>(family: Family, group: &Arc<FiniteGroup>, n: usize, max_len: usize, rng: &mut R) -> Self {
        let labels = GroupTuple::new(group, (0..n).map(|_| rng.gen_range(0..group.order())).collect())
            .expect("labels in range");
        match family {
            Family::Symmetric | Family::Hyperoctahedral => {
                let mut images: Vec<usize> = (0..n).collect();
                images.shuffle(rng);
                let flags = (family == Family::Hyperoctahedral).then(|| {
                    (0..n)
                        .map(|_| if rng.gen_bool(0.5) { Flag::Minus } else { Flag::Plus })
                        .collect()
                });
                Element::Perm(
                    LabelledPermutation::new(labels, Perm::from_images(images).expect("shuffle"), flags)
                        .expect("matching arity"),
                )
            }
            Family::Braid | Family::Ribbon => {
                let len = if n < 2 { 0 } else { rng.gen_range(0..=max_len) };
                let letters = (0..len)
                    .map(|_| {
                        let i = rng.gen_range(1..n as i32);
                        if rng.gen_bool(0.5) {
                            i
                        } else {
                            -i
                        }
                    })
                    .collect();
                let twists = (family == Family::Ribbon).then(|| (0..n).map(|_| rng.gen_range(-2..=2)).collect());
                Element::Braid(
                    LabelledBraid::new(labels, BraidWord::new(n, letters).expect("valid letters"), twists)
                        .expect("matching arity"),
                )
            }
        }
    }

    /// Parses the text produced by `Display`. The `g(...)*` prefix may be
    /// omitted for trivial labels.
    pub fn parse(family: Family, group: &Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |why: &str| Error::InvalidMap(format!("{why} in element {text:?}"));
        let (labels, core) = match text.strip_prefix("g(") {
            Some(rest) => {
                let close = rest.find(')').ok_or_else(|| bad("unclosed labels"))?;
                let names = &rest[..close];
                let entries = if names.trim().is_empty() {
                    Vec::new()
                } else {
                    names
                        .split(',')
                        .map(|s| group.element(s.trim()).ok_or_else(|| bad("unknown group element")))
                        .collect::<Result<Vec<_>>>()?
                };
                let after = rest[close + 1..].trim_start();
                let core = match after.strip_prefix('*') {
                    Some(c) => Some(c.trim()),
                    None if after.is_empty() => None,
                    None => return Err(bad("expected '*'")),
                };
                (Some(GroupTuple::new(group, entries)?), core)
            }
            None => (None, Some(text)),
        };
        let Some(core) = core else {
            let labels = labels.expect("labels present");
            return Ok(Element::from_labels(family, labels));
        };
        let label_or_identity = |n: usize| -> Result<GroupTuple> {
            match &labels {
                Some(l) => {
                    check_arity("element labels", n, l.len())?;
                    Ok(l.clone())
                }
                None => Ok(GroupTuple::identity(group, n)),
            }
        };
        match family {
            Family::Symmetric | Family::Hyperoctahedral => {
                let body = core.strip_prefix("perm[").ok_or_else(|| bad("expected perm[...]"))?;
                let close = body.find(']').ok_or_else(|| bad("unclosed perm"))?;
                let images = parse_list(&body[..close], |s| {
                    s.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1)
                })
                .ok_or_else(|| bad("bad permutation"))?;
                let perm = Perm::from_images(images)?;
                let n = perm.len();
                let tail = body[close + 1..].trim();
                let flags = if family == Family::Hyperoctahedral {
                    if tail.is_empty() {
                        Some(vec![Flag::Plus; n])
                    } else {
                        let inner = tail
                            .strip_prefix('{')
                            .and_then(|t| t.strip_suffix('}'))
                            .ok_or_else(|| bad("bad flags"))?;
                        let flags = parse_list(inner, |s| match s {
                            "+" => Some(Flag::Plus),
                            "-" => Some(Flag::Minus),
                            _ => None,
                        })
                        .ok_or_else(|| bad("bad flags"))?;
                        check_arity("element flags", n, flags.len())?;
                        Some(flags)
                    }
                } else if tail.is_empty() {
                    None
                } else {
                    return Err(bad("unexpected trailing text"));
                };
                Ok(Element::Perm(LabelledPermutation::new(label_or_identity(n)?, perm, flags)?))
            }
            Family::Braid | Family::Ribbon => {
                let body = core.strip_prefix("braid<").ok_or_else(|| bad("expected braid<n>(...)"))?;
                let close = body.find('>').ok_or_else(|| bad("unclosed strand count"))?;
                let n: usize = body[..close].trim().parse().map_err(|_| bad("bad strand count"))?;
                let inner = body[close + 1..]
                    .trim()
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| bad("expected (...)"))?
                    .trim();
                let (twists, word) = match inner.strip_prefix("tw(") {
                    Some(rest) => {
                        let close = rest.find(')').ok_or_else(|| bad("unclosed twists"))?;
                        let t = parse_list(&rest[..close], |s| s.parse::<i64>().ok())
                            .ok_or_else(|| bad("bad twists"))?;
                        check_arity("element twists", n, t.len())?;
                        (Some(t), &rest[close + 1..])
                    }
                    None => (None, inner),
                };
                let twists = match (family, twists) {
                    (Family::Ribbon, t) => Some(t.unwrap_or_else(|| vec![0; n])),
                    (_, None) => None,
                    (_, Some(_)) => return Err(bad("twists outside the ribbon family")),
                };
                let braid = BraidWord::parse(n, word)?;
                Ok(Element::Braid(LabelledBraid::new(label_or_identity(n)?, braid, twists)?))
            }
        }
    }
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    if text.trim().is_empty() {
        return Some(Vec::new());
    }
    text.split(',').map(|s| item(s.trim())).collect()
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Braid(b) => write!(f, "{b}"),
        }
    }
}

/// The pair `(j⋆(φ), φ⋆(j))` with `j ∘ φ = new_mono ∘ new_elt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedRewrite {
    pub new_mono: OrderedMap,
    pub new_elt: Element,
}

pub fn rewrite_past_mono(j: &Element, phi: &OrderedMap) -> Result<CrossedRewrite> {
    check_arity("rewrite_past_mono", j.arity(), phi.codomain())?;
    let sizes = phi.fiber_sizes();
    let sigma = j.underlying_permutation();
    let out_sizes = sigma.act(&sizes);
    let psi = OrderedMap::from_fiber_sizes(&out_sizes);
    let labels = skeletal_relabel(psi.values(), j.labels())?;

    let new_elt = match j {
        Element::Perm(p) => {
            let start = offsets(&sizes);
            let out_start = offsets(&out_sizes);
            let mut images = vec![0; phi.domain()];
            for (i, &k) in sizes.iter().enumerate() {
                let target = sigma.apply(i);
                let reversed = p.flags().is_some_and(|f| f[target].is_minus());
                for r in 0..k {
                    let rank = if reversed { k - 1 - r } else { r };
                    images[start[i] + r] = out_start[target] + rank;
                }
            }
            let flags = p.flags().map(|f| pull_back(psi.values(), f));
            Element::Perm(LabelledPermutation::new(labels, Perm::from_images(images)?, flags)?)
        }
        Element::Braid(b) => {
            let (braid, twists) = b.cable_core(&sizes)?;
            Element::Braid(LabelledBraid::new(labels, braid, twists)?)
        }
    };

    let tau = new_elt.underlying_permutation();
    debug_assert!(
        (0..phi.domain()).all(|a| sigma.apply(phi.apply(a)) == psi.apply(tau.apply(a))),
        "rewrite does not commute on underlying sets"
    );
    Ok(CrossedRewrite { new_mono: psi, new_elt })
}

/// Outcome of [`check_crossed_identities`].
#[derive(Debug, Clone, Serialize)]
pub struct CrossedReport {
    pub family: Family,
    pub max_n: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CrossedReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

fn commutes(j: &Element, phi: &OrderedMap, rw: &CrossedRewrite) -> bool {
    let sigma = j.underlying_permutation();
    let tau = rw.new_elt.underlying_permutation();
    (0..phi.domain()).all(|a| sigma.apply(phi.apply(a)) == rw.new_mono.apply(tau.apply(a)))
}

struct Checker<'a> {
    family: Family,
    group: &'a Arc<FiniteGroup>,
    report: CrossedReport,
}

impl Checker<'_> {
    fn unit_laws(&mut self, j: &Element, phi: &OrderedMap) {
        let n = phi.domain();
        let m = phi.codomain();
        let id = Element::identity(self.family, self.group, m);
        let ok = rewrite_past_mono(&id, phi)
            .is_ok_and(|rw| rw.new_mono == *phi && rw.new_elt == Element::identity(self.family, self.group, n));
        self.report.record(ok, || format!("identity past {phi}"));
        let ok = rewrite_past_mono(j, &OrderedMap::identity(m))
            .is_ok_and(|rw| rw.new_mono.is_identity() && rw.new_elt == *j);
        self.report.record(ok, || format!("{j} past identity"));
        let ok = rewrite_past_mono(j, phi).is_ok_and(|rw| commutes(j, phi, &rw));
        self.report.record(ok, || format!("{j} past {phi} does not commute"));
    }

    fn multiplicative(&mut self, j: &Element, k: &Element, phi: &OrderedMap) {
        let ok = (|| -> Result<bool> {
            let whole = rewrite_past_mono(&j.compose(k)?, phi)?;
            let inner = rewrite_past_mono(k, phi)?;
            let outer = rewrite_past_mono(j, &inner.new_mono)?;
            Ok(whole.new_mono == outer.new_mono && whole.new_elt == outer.new_elt.compose(&inner.new_elt)?)
        })()
        .unwrap_or(false);
        self.report.record(ok, || format!("({j})({k}) past {phi}"));
    }

    fn composition(&mut self, j: &Element, phi: &OrderedMap, chi: &OrderedMap) {
        let ok = (|| -> Result<bool> {
            let whole = rewrite_past_mono(j, &phi.compose(chi)?)?;
            let first = rewrite_past_mono(j, phi)?;
            let second = rewrite_past_mono(&first.new_elt, chi)?;
            Ok(whole.new_mono == first.new_mono.compose(&second.new_mono)? && whole.new_elt == second.new_elt)
        })()
        .unwrap_or(false);
        self.report.record(ok, || format!("{j} past {phi} after {chi}"));
    }

    fn tensor(&mut self, j: &Element, k: &Element, phi: &OrderedMap, chi: &OrderedMap) {
        let ok = (|| -> Result<bool> {
            let whole = rewrite_past_mono(&j.tensor(k)?, &phi.tensor(chi))?;
            let a = rewrite_past_mono(j, phi)?;
            let b = rewrite_past_mono(k, chi)?;
            Ok(whole.new_mono == a.new_mono.tensor(&b.new_mono) && whole.new_elt == a.new_elt.tensor(&b.new_elt)?)
        })()
        .unwrap_or(false);
        self.report.record(ok, || format!("({j})+({k}) past {phi}+{chi}"));
    }
}

fn monos_into(m: usize, max_n: usize) -> Vec<OrderedMap> {
    (0..=max_n).flat_map(|n| OrderedMap::enumerate(n, m)).collect()
}

/// Checks the unit, multiplicativity, composition and tensor laws of the
/// distributive law. Finite families are checked exhaustively up to `max_n`;
/// braid families on `samples` random instances per law (words of length ≤ 6).
pub fn check_crossed_identities(
    family: Family,
    group: &Arc<FiniteGroup>,
    max_n: usize,
    samples: usize,
    seed: u64,
) -> CrossedReport {
    let mut c = Checker {
        family,
        group,
        report: CrossedReport {
            family,
            max_n,
            checks: 0,
            failures: 0,
            first_failure: None,
        },
    };
    let monos: Vec<Vec<OrderedMap>> = (0..=max_n).map(|m| monos_into(m, max_n)).collect();

    if family.is_finite() {
        let elements: Vec<Vec<Element>> = (0..=max_n)
            .map(|m| Element::enumerate(family, group, m).expect("finite family"))
            .collect();
        for m in 0..=max_n {
            for j in &elements[m] {
                for phi in &monos[m] {
                    c.unit_laws(j, phi);
                    for chi in &monos[phi.domain()] {
                        c.composition(j, phi, chi);
                    }
                }
                for k in &elements[m] {
                    for phi in &monos[m] {
                        c.multiplicative(j, k, phi);
                    }
                }
            }
            for m2 in 0..=max_n - m {
                for j in &elements[m] {
                    for k in &elements[m2] {
                        for phi in &monos[m] {
                            for chi in monos[m2].iter().filter(|chi| phi.domain() + chi.domain() <= max_n) {
                                c.tensor(j, k, phi, chi);
                            }
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let m = rng.gen_range(1..=max_n);
            let j = Element::random(family, group, m, 6, &mut rng);
            let k = Element::random(family, group, m, 6, &mut rng);
            let phi = monos[m].choose(&mut rng).expect("nonempty").clone();
            let chi = monos[phi.domain()].choose(&mut rng).expect("nonempty").clone();
            c.unit_laws(&j, &phi);
            c.multiplicative(&j, &k, &phi);
            c.composition(&j, &phi, &chi);

            let m1 = rng.gen_range(0..=max_n);
            let m2 = rng.gen_range(0..=max_n - m1);
            let j = Element::random(family, group, m1, 6, &mut rng);
            let k = Element::random(family, group, m2, 6, &mut rng);
            let phi = monos[m1].choose(&mut rng).expect("nonempty").clone();
            let fitting: Vec<&OrderedMap> =
                monos[m2].iter().filter(|chi| phi.domain() + chi.domain() <= max_n).collect();
            let chi = (*fitting.choose(&mut rng).expect("empty map fits")).clone();
            c.tensor(&j, &k, &phi, &chi);
        }
    }
    c.report
}
