//! G-labelled non-commutative sets: set maps whose fibres carry a total order
//! and a group label on each element, their unordered variant, the pair
//! description through `𝔻⊗ℙ⊗𝔾`, and span composition by labelled pullback.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::composites::{CompositeMorphism, DJGMorphism};
use crate::crossed::{Element, Family};
use crate::error::{check_arity, Error, Result};
use crate::groups::{offsets, FiniteGroup, GroupTuple, LabelledPermutation, Perm};
use crate::ordmaps::OrderedMap;

/// An ordered fibre: `(element, label)` pairs.
pub type LabelledSet = Vec<(usize, usize)>;

/// `g ∗ S`: every label left-multiplied by `g`, order kept.
pub fn label_act(group: &FiniteGroup, g: usize, set: &[(usize, usize)]) -> LabelledSet {
    set.iter().map(|&(x, a)| (x, group.mul(g, a))).collect()
}

fn validate_fibers(domain: usize, fibers: &[LabelledSet], group: &FiniteGroup) -> Result<()> {
    let mut seen = vec![false; domain];
    for &(x, label) in fibers.iter().flatten() {
        if x >= domain {
            return Err(Error::OutOfRange {
                context: "fibre element",
                value: x,
                bound: domain,
            });
        }
        if label >= group.order() {
            return Err(Error::OutOfRange {
                context: "fibre label",
                value: label,
                bound: group.order(),
            });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidMap(format!("element {} lies in two fibres", x + 1)));
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidMap(format!("element {} lies in no fibre", x + 1)));
    }
    Ok(())
}

/// A morphism of `GF(as)`.
#[derive(Debug, Clone)]
pub struct NCSetMap {
    group: Arc<FiniteGroup>,
    domain: usize,
    fibers: Vec<LabelledSet>,
}

impl PartialEq for NCSetMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.fibers == other.fibers
    }
}

impl Eq for NCSetMap {}

impl Hash for NCSetMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.domain.hash(state);
        self.fibers.hash(state);
    }
}

#[derive(Serialize, Deserialize)]
struct FiberJson {
    cod: usize,
    fibers: Vec<Vec<(usize, String)>>,
}

impl NCSetMap {
    pub fn new(group: &Arc<FiniteGroup>, domain: usize, fibers: Vec<LabelledSet>) -> Result<Self> {
        validate_fibers(domain, &fibers, group)?;
        Ok(NCSetMap {
            group: Arc::clone(group),
            domain,
            fibers,
        })
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        NCSetMap {
            group: Arc::clone(group),
            domain: n,
            fibers: (0..n).map(|x| vec![(x, group.identity())]).collect(),
        }
    }

    /// The block permutation exchanging `a` and `b`, with trivial labels.
    pub fn symmetry(group: &Arc<FiniteGroup>, a: usize, b: usize) -> Self {
        let e = group.identity();
        NCSetMap {
            group: Arc::clone(group),
            domain: a + b,
            fibers: (a..a + b).chain(0..a).map(|x| vec![(x, e)]).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[LabelledSet] {
        &self.fibers
    }

    /// The underlying set map.
    pub fn underlying(&self) -> Vec<usize> {
        let mut values = vec![0; self.domain];
        for (i, fiber) in self.fibers.iter().enumerate() {
            for &(x, _) in fiber {
                values[x] = i;
            }
        }
        values
    }

    /// `(target fibre, rank in fibre, label)` for each element.
    fn placement(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(0, 0, 0); self.domain];
        for (i, fiber) in self.fibers.iter().enumerate() {
            for (r, &(x, a)) in fiber.iter().enumerate() {
                out[x] = (i, r, a);
            }
        }
        out
    }

    /// `self ∘ first`: the fibre over `i` concatenates `α_j ∗ first⁻¹(j)` over
    /// the fibre `j^{α_j}` of `self`, in that order.
    pub fn compose(&self, first: &NCSetMap) -> Result<NCSetMap> {
        check_arity("ncset_compose", self.domain, first.codomain())?;
        let fibers = self
            .fibers
            .iter()
            .map(|fiber| {
                fiber
                    .iter()
                    .flat_map(|&(j, alpha)| label_act(&self.group, alpha, &first.fibers[j]))
                    .collect()
            })
            .collect();
        Ok(NCSetMap {
            group: Arc::clone(&self.group),
            domain: first.domain,
            fibers,
        })
    }

    pub fn tensor(&self, other: &NCSetMap) -> NCSetMap {
        let shift = self.domain;
        let mut fibers = self.fibers.clone();
        fibers.extend(
            other
                .fibers
                .iter()
                .map(|f| f.iter().map(|&(x, a)| (x + shift, a)).collect()),
        );
        NCSetMap {
            group: Arc::clone(&self.group),
            domain: self.domain + other.domain,
            fibers,
        }
    }

    pub fn forget(&self) -> GFMap {
        GFMap::from_fibers(&self.group, self.domain, self.fibers.clone())
    }

    /// All morphisms `n → m`, built by inserting elements one at a time into
    /// every fibre position.
    pub fn enumerate(group: &Arc<FiniteGroup>, n: usize, m: usize) -> Vec<NCSetMap> {
        fn shapes(x: usize, n: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if x == n {
                out.push(acc.clone());
                return;
            }
            for i in 0..acc.len() {
                for pos in 0..=acc[i].len() {
                    acc[i].insert(pos, x);
                    shapes(x + 1, n, acc, out);
                    acc[i].remove(pos);
                }
            }
        }
        let mut all_shapes = Vec::new();
        shapes(0, n, &mut vec![Vec::new(); m], &mut all_shapes);
        let labelings = GroupTuple::enumerate(group, n);
        let mut out = Vec::with_capacity(all_shapes.len() * labelings.len());
        for shape in &all_shapes {
            for labels in &labelings {
                let fibers = shape
                    .iter()
                    .map(|f| f.iter().map(|&x| (x, labels.entries()[x])).collect())
                    .collect();
                out.push(NCSetMap {
                    group: Arc::clone(group),
                    domain: n,
                    fibers,
                });
            }
        }
        out
    }

    /// A uniformly random morphism `n → m`; `None` when `m = 0 < n`.
    pub fn random<R: Rng>(group: &Arc<FiniteGroup>, n: usize, m: usize, rng: &mut R) -> Option<NCSetMap> {
        if m == 0 && n > 0 {
            return None;
        }
        let mut fibers: Vec<LabelledSet> = vec![Vec::new(); m];
        // element x has x + m equally likely slots, which makes the result uniform
        for x in 0..n {
            let slots = x + m;
            let mut k = rng.gen_range(0..slots);
            let label = rng.gen_range(0..group.order());
            for fiber in fibers.iter_mut() {
                if k <= fiber.len() {
                    fiber.insert(k, (x, label));
                    break;
                }
                k -= fiber.len() + 1;
            }
        }
        Some(NCSetMap {
            group: Arc::clone(group),
            domain: n,
            fibers,
        })
    }

    /// The pair `(ψ, j)` with `self = ψ ∘ j`: `j` sends the `r`-th element of
    /// fibre `i` to position `offset_i + r` and labels it there.
    pub fn to_pair(&self) -> DJGMorphism {
        let sizes: Vec<usize> = self.fibers.iter().map(Vec::len).collect();
        let start = offsets(&sizes);
        let mut images = vec![0; self.domain];
        let mut labels = vec![self.group.identity(); self.domain];
        for (i, fiber) in self.fibers.iter().enumerate() {
            for (r, &(x, a)) in fiber.iter().enumerate() {
                images[x] = start[i] + r;
                labels[start[i] + r] = a;
            }
        }
        let elt = LabelledPermutation::new(
            GroupTuple::new(&self.group, labels).expect("labels in range"),
            Perm::from_images(images).expect("fibres partition the domain"),
            None,
        )
        .expect("matching arity");
        DJGMorphism::new(Element::Perm(elt), OrderedMap::from_fiber_sizes(&sizes)).expect("matching arity")
    }

    pub fn from_pair(pair: &DJGMorphism) -> Result<NCSetMap> {
        if pair.family() != Family::Symmetric {
            return Err(Error::FamilyMismatch {
                expected: "symmetric",
                found: pair.family().name(),
            });
        }
        let tau = pair.elt.underlying_permutation();
        let inv = tau.inverse();
        let labels = pair.elt.labels();
        let mut fibers = vec![Vec::new(); pair.codomain()];
        for pos in 0..pair.domain() {
            fibers[pair.mono.apply(pos)].push((inv.apply(pos), labels.entries()[pos]));
        }
        Ok(NCSetMap {
            group: Arc::clone(pair.group()),
            domain: pair.domain(),
            fibers,
        })
    }

    /// `{"cod": m, "fibers": [[[elt, "label"], ...], ...]}` with 1-based elements.
    pub fn to_json(&self) -> String {
        let doc = FiberJson {
            cod: self.codomain(),
            fibers: self
                .fibers
                .iter()
                .map(|f| f.iter().map(|&(x, a)| (x + 1, self.group.name(a).to_string())).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain data")
    }

    pub fn from_json(group: &Arc<FiniteGroup>, text: &str) -> Result<NCSetMap> {
        let doc: FiberJson = serde_json::from_str(text).map_err(|e| Error::InvalidMap(e.to_string()))?;
        check_arity("fibre json", doc.cod, doc.fibers.len())?;
        let fibers = doc
            .fibers
            .iter()
            .map(|f| {
                f.iter()
                    .map(|(x, name)| {
                        let label = group
                            .element(name)
                            .ok_or_else(|| Error::InvalidMap(format!("unknown label {name:?}")))?;
                        let x = x.checked_sub(1).ok_or_else(|| Error::InvalidMap("elements are 1-based".into()))?;
                        Ok((x, label))
                    })
                    .collect::<Result<LabelledSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let domain = fibers.iter().map(Vec::len).sum();
        NCSetMap::new(group, domain, fibers)
    }
}

fn write_fibers(f: &mut fmt::Formatter<'_>, group: &FiniteGroup, fibers: &[LabelledSet], sep: &str) -> fmt::Result {
    write!(f, "{{")?;
    for (i, fiber) in fibers.iter().enumerate() {
        if i > 0 {
            write!(f, " | ")?;
        }
        for (k, &(x, a)) in fiber.iter().enumerate() {
            if k > 0 {
                write!(f, "{sep}")?;
            }
            write!(f, "{}^{}", x + 1, group.name(a))?;
        }
    }
    write!(f, "}}")
}

impl fmt::Display for NCSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fibers(f, &self.group, &self.fibers, "<")
    }
}

/// A morphism of `GF`: fibres are unordered and stored sorted by element.
#[derive(Debug, Clone)]
pub struct GFMap {
    group: Arc<FiniteGroup>,
    domain: usize,
    fibers: Vec<LabelledSet>,
}

impl PartialEq for GFMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.fibers == other.fibers
    }
}

impl Eq for GFMap {}

impl Hash for GFMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.domain.hash(state);
        self.fibers.hash(state);
    }
}

impl GFMap {
    fn from_fibers(group: &Arc<FiniteGroup>, domain: usize, mut fibers: Vec<LabelledSet>) -> Self {
        for f in fibers.iter_mut() {
            f.sort_unstable();
        }
        GFMap {
            group: Arc::clone(group),
            domain,
            fibers,
        }
    }

    pub fn new(group: &Arc<FiniteGroup>, domain: usize, fibers: Vec<LabelledSet>) -> Result<Self> {
        validate_fibers(domain, &fibers, group)?;
        Ok(Self::from_fibers(group, domain, fibers))
    }

    /// A set map `values` with labels `labels[x]` on each element.
    pub fn from_map(group: &Arc<FiniteGroup>, values: &[usize], labels: &[usize], codomain: usize) -> Result<Self> {
        check_arity("GF map labels", values.len(), labels.len())?;
        let mut fibers = vec![Vec::new(); codomain];
        for (x, (&v, &a)) in values.iter().zip(labels).enumerate() {
            if v >= codomain {
                return Err(Error::OutOfRange {
                    context: "GF map",
                    value: v,
                    bound: codomain,
                });
            }
            fibers[v].push((x, a));
        }
        GFMap::new(group, values.len(), fibers)
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        NCSetMap::identity(group, n).forget()
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[LabelledSet] {
        &self.fibers
    }

    /// `self ∘ first`: set maps compose and labels multiply.
    pub fn compose(&self, first: &GFMap) -> Result<GFMap> {
        check_arity("gf_compose", self.domain, first.codomain())?;
        let fibers = self
            .fibers
            .iter()
            .map(|fiber| {
                fiber
                    .iter()
                    .flat_map(|&(j, alpha)| label_act(&self.group, alpha, &first.fibers[j]))
                    .collect()
            })
            .collect();
        Ok(GFMap::from_fibers(&self.group, first.domain, fibers))
    }

    pub fn tensor(&self, other: &GFMap) -> GFMap {
        let shift = self.domain;
        let mut fibers = self.fibers.clone();
        fibers.extend(
            other
                .fibers
                .iter()
                .map(|f| f.iter().map(|&(x, a)| (x + shift, a)).collect()),
        );
        GFMap::from_fibers(&self.group, self.domain + other.domain, fibers)
    }

    /// The fibres in sorted order, as a morphism of `GF(as)`.
    pub fn to_ordered(&self) -> NCSetMap {
        NCSetMap {
            group: Arc::clone(&self.group),
            domain: self.domain,
            fibers: self.fibers.clone(),
        }
    }

    pub fn enumerate(group: &Arc<FiniteGroup>, n: usize, m: usize) -> Vec<GFMap> {
        let labelings = GroupTuple::enumerate(group, n);
        let mut out = Vec::new();
        let total = m.checked_pow(n as u32).unwrap_or(0);
        for code in 0..total {
            let values: Vec<usize> = (0..n).map(|x| code / m.pow(x as u32) % m).collect();
            for labels in &labelings {
                out.push(GFMap::from_map(group, &values, labels.entries(), m).expect("valid map"));
            }
        }
        out
    }
}

impl fmt::Display for GFMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fibers(f, &self.group, &self.fibers, ",")
    }
}

/// The completed square
///
/// ```text
///   X --top--> p
///   |          |
///  left       right
///   v          v
///   m --bot--> q
/// ```
///
/// with `X` the pullback, whose elements are the pairs in `pairs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimorphism {
    pub top: NCSetMap,
    pub left: NCSetMap,
    pub bottom: NCSetMap,
    pub right: NCSetMap,
    pub pairs: Vec<(usize, usize)>,
}

/// The unique completion of `bottom: m → q` and `right: p → q`.
///
/// The fibre of `top` over `y` is ordered like `bottom⁻¹(right(y))`, the fibre
/// of `left` over `x` like `right⁻¹(bottom(x))`. The element `(x, y)` gets
/// label `β(y)` on `left` and `β(y)⁻¹ α(x) β(y)` on `top`, where `α`, `β` are
/// the labels of `bottom` and `right`.
pub fn star_complete(bottom: &NCSetMap, right: &NCSetMap) -> Result<Bimorphism> {
    check_arity("star_complete", bottom.codomain(), right.codomain())?;
    let g = &bottom.group;
    let f = bottom.underlying();
    let phi = right.underlying();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for (x, &fx) in f.iter().enumerate() {
        for (y, &py) in phi.iter().enumerate() {
            if fx == py {
                index.insert((x, y), pairs.len());
                pairs.push((x, y));
            }
        }
    }
    let phi_place = right.placement();
    let top_fibers = (0..right.domain)
        .map(|y| {
            let beta = phi_place[y].2;
            bottom.fibers[phi[y]]
                .iter()
                .map(|&(x, alpha)| (index[&(x, y)], g.mul(g.inv(beta), g.mul(alpha, beta))))
                .collect()
        })
        .collect();
    let left_fibers = (0..bottom.domain)
        .map(|x| {
            right.fibers[f[x]]
                .iter()
                .map(|&(y, beta)| (index[&(x, y)], beta))
                .collect()
        })
        .collect();
    Ok(Bimorphism {
        top: NCSetMap {
            group: Arc::clone(g),
            domain: pairs.len(),
            fibers: top_fibers,
        },
        left: NCSetMap {
            group: Arc::clone(g),
            domain: pairs.len(),
            fibers: left_fibers,
        },
        bottom: bottom.clone(),
        right: right.clone(),
        pairs,
    })
}

impl Bimorphism {
    /// The pullback condition and the two fibre-isomorphism conditions.
    pub fn is_valid(&self) -> bool {
        let g = &self.bottom.group;
        let f = self.bottom.underlying();
        let phi = self.right.underlying();
        let mut expected = Vec::new();
        for (x, &fx) in f.iter().enumerate() {
            for (y, &py) in phi.iter().enumerate() {
                if fx == py {
                    expected.push((x, y));
                }
            }
        }
        let mut sorted = self.pairs.clone();
        sorted.sort_unstable();
        if sorted != expected || self.top.domain != self.pairs.len() || self.left.domain != self.pairs.len() {
            return false;
        }
        if self.top.codomain() != self.right.domain || self.left.codomain() != self.bottom.domain {
            return false;
        }
        let top = self.top.underlying();
        let left = self.left.underlying();
        if self.pairs.iter().enumerate().any(|(e, &(x, y))| top[e] != y || left[e] != x) {
            return false;
        }
        let beta = self.right.placement();
        let fibre_iso_top = self.top.fibers.iter().enumerate().all(|(y, fiber)| {
            let target = &self.bottom.fibers[phi[y]];
            fiber.len() == target.len()
                && fiber.iter().zip(target).all(|(&(e, label), &(x, alpha))| {
                    let b = beta[y].2;
                    self.pairs[e].0 == x && label == g.mul(g.inv(b), g.mul(alpha, b))
                })
        });
        let fibre_iso_left = self.left.fibers.iter().enumerate().all(|(x, fiber)| {
            let target = &self.right.fibers[f[x]];
            fiber.len() == target.len()
                && fiber
                    .iter()
                    .zip(target)
                    .all(|(&(e, label), &(y, b))| self.pairs[e].1 == y && label == b)
        });
        fibre_iso_top && fibre_iso_left
    }
}

/// `out_leg ∘ in_legᵒᵖ` in `GF(as) ⊗ GF(as)ᵒᵖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcSpan {
    pub in_leg: NCSetMap,
    pub out_leg: NCSetMap,
}

impl NcSpan {
    pub fn new(in_leg: NCSetMap, out_leg: NCSetMap) -> Result<Self> {
        check_arity("span middle", in_leg.domain, out_leg.domain)?;
        Ok(NcSpan { in_leg, out_leg })
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        NcSpan {
            in_leg: NCSetMap::identity(group, n),
            out_leg: NCSetMap::identity(group, n),
        }
    }

    pub fn domain(&self) -> usize {
        self.in_leg.codomain()
    }

    pub fn codomain(&self) -> usize {
        self.out_leg.codomain()
    }

    pub fn middle(&self) -> usize {
        self.in_leg.domain
    }

    /// The span of a symmetric-family triple, legs transported by [`NCSetMap::from_pair`].
    pub fn from_composite(c: &CompositeMorphism) -> Result<Self> {
        let in_leg = NCSetMap::from_pair(&DJGMorphism::from_mono(Family::Symmetric, c.group(), c.in_mono.clone()))?;
        let out_leg = NCSetMap::from_pair(&DJGMorphism::new(c.elt.clone(), c.out_mono.clone())?)?;
        NcSpan::new(in_leg, out_leg)
    }

    pub fn class(&self, variant: Variant) -> SpanClass {
        span_class(variant, self)
    }
}

/// Which legs keep their fibre order: the first letter is the out-leg, the
/// second the in-leg; `A` ordered (`GF(as)`), `V` unordered (`GF`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    AA,
    VA,
    AV,
    VV,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::AA, Variant::VA, Variant::AV, Variant::VV];

    pub fn out_ordered(self) -> bool {
        matches!(self, Variant::AA | Variant::AV)
    }

    pub fn in_ordered(self) -> bool {
        matches!(self, Variant::AA | Variant::VA)
    }
}

/// A span up to labelled bijections of its middle. Each middle element is
/// recorded in its out-fibre as `(in fibre, in rank, out-label · in-label⁻¹)`;
/// ranks and out-fibre order are dropped on unordered legs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanClass {
    pub variant: Variant,
    pub domain: usize,
    pub fibers: Vec<Vec<(usize, Option<usize>, usize)>>,
}

pub fn span_class(variant: Variant, s: &NcSpan) -> SpanClass {
    let g = &s.in_leg.group;
    let in_place = s.in_leg.placement();
    let fibers = s
        .out_leg
        .fibers
        .iter()
        .map(|fiber| {
            let mut entries: Vec<(usize, Option<usize>, usize)> = fiber
                .iter()
                .map(|&(z, out_label)| {
                    let (target, rank, in_label) = in_place[z];
                    (target, variant.in_ordered().then_some(rank), g.mul(out_label, g.inv(in_label)))
                })
                .collect();
            if !variant.out_ordered() {
                entries.sort_unstable();
            }
            entries
        })
        .collect();
    SpanClass {
        variant,
        domain: s.domain(),
        fibers,
    }
}

/// `s2 ∘ s1` through the star completion of the inner cospan.
pub fn pullback_span_compose(s2: &NcSpan, s1: &NcSpan) -> Result<NcSpan> {
    check_arity("pullback_span_compose", s2.domain(), s1.codomain())?;
    let square = star_complete(&s1.out_leg, &s2.in_leg)?;
    NcSpan::new(s1.in_leg.compose(&square.left)?, s2.out_leg.compose(&square.top)?)
}

pub fn pullback_span_compose_class(variant: Variant, s2: &NcSpan, s1: &NcSpan) -> Result<SpanClass> {
    Ok(span_class(variant, &pullback_span_compose(s2, s1)?))
}

/// Every span `n → m` with middle at most `max_middle`.
pub fn enumerate_spans(group: &Arc<FiniteGroup>, n: usize, m: usize, max_middle: usize) -> Vec<NcSpan> {
    let mut out = Vec::new();
    for p in 0..=max_middle {
        let ins = NCSetMap::enumerate(group, p, n);
        let outs = NCSetMap::enumerate(group, p, m);
        for a in &ins {
            for b in &outs {
                out.push(NcSpan {
                    in_leg: a.clone(),
                    out_leg: b.clone(),
                });
            }
        }
    }
    out
}

/// A random span `n → m` with middle at most `max_middle`.
pub fn random_span<R: Rng>(group: &Arc<FiniteGroup>, n: usize, m: usize, max_middle: usize, rng: &mut R) -> NcSpan {
    let choices: Vec<usize> = (0..=max_middle).filter(|&p| p == 0 || (n > 0 && m > 0)).collect();
    let p = *choices.choose(rng).expect("middle 0 always fits");
    NcSpan {
        in_leg: NCSetMap::random(group, p, n, rng).expect("nonempty"),
        out_leg: NCSetMap::random(group, p, m, rng).expect("nonempty"),
    }
}
