//! Morphisms of `𝔻⊗J⊗𝔾` (an element followed by an ordered map), spans of
//! them, and the canonical triples of `𝔻⊗(J⊗𝔾)⊗𝔻ᵒᵖ`.
//!
//! The opposite of a group element is its inverse, so a span with legs
//! `a: r → n` and `b: r → m` denotes `b ∘ aᵒᵖ: n → m`. Composition turns the
//! inner cospan into a span by the bimonoid rewrite rules.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::crossed::{rewrite_past_mono, Element, Family};
use crate::error::{check_arity, Error, Result};
use crate::groups::FiniteGroup;
use crate::ordmaps::OrderedMap;

/// `mono ∘ elt: n → m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DJGMorphism {
    pub elt: Element,
    pub mono: OrderedMap,
}

impl DJGMorphism {
    pub fn new(elt: Element, mono: OrderedMap) -> Result<Self> {
        check_arity("DJG morphism", elt.arity(), mono.domain())?;
        Ok(DJGMorphism { elt, mono })
    }

    pub fn identity(family: Family, group: &Arc<FiniteGroup>, n: usize) -> Self {
        DJGMorphism {
            elt: Element::identity(family, group, n),
            mono: OrderedMap::identity(n),
        }
    }

    pub fn from_mono(family: Family, group: &Arc<FiniteGroup>, mono: OrderedMap) -> Self {
        DJGMorphism {
            elt: Element::identity(family, group, mono.domain()),
            mono,
        }
    }

    pub fn from_elt(elt: Element) -> Self {
        let n = elt.arity();
        DJGMorphism {
            elt,
            mono: OrderedMap::identity(n),
        }
    }

    pub fn domain(&self) -> usize {
        self.mono.domain()
    }

    pub fn codomain(&self) -> usize {
        self.mono.codomain()
    }

    pub fn family(&self) -> Family {
        self.elt.family()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.elt.group()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &DJGMorphism) -> Result<DJGMorphism> {
        compose_djg(self, first)
    }

    pub fn tensor(&self, other: &DJGMorphism) -> Result<DJGMorphism> {
        Ok(DJGMorphism {
            elt: self.elt.tensor(&other.elt)?,
            mono: self.mono.tensor(&other.mono),
        })
    }

    /// Every morphism `n → m` of a finite family.
    pub fn enumerate(family: Family, group: &Arc<FiniteGroup>, n: usize, m: usize) -> Option<Vec<Self>> {
        let elements = Element::enumerate(family, group, n)?;
        let monos = OrderedMap::enumerate(n, m);
        Some(
            monos
                .iter()
                .flat_map(|mono| {
                    elements.iter().map(move |elt| DJGMorphism {
                        elt: elt.clone(),
                        mono: mono.clone(),
                    })
                })
                .collect(),
        )
    }

    /// A uniformly chosen map with a random element (braid words of length ≤ 6).
    /// `None` when `Hom(n, m)` is empty.
    pub fn random<R: Rng>(family: Family, group: &Arc<FiniteGroup>, n: usize, m: usize, rng: &mut R) -> Option<Self> {
        let mono = OrderedMap::enumerate(n, m).choose(rng)?.clone();
        Some(DJGMorphism {
            elt: Element::random(family, group, n, 6, rng),
            mono,
        })
    }
}

impl fmt::Display for DJGMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} . {}", self.mono, self.elt)
    }
}

/// `g ∘ f`: the element of `g` is moved past the map of `f`.
pub fn compose_djg(g: &DJGMorphism, f: &DJGMorphism) -> Result<DJGMorphism> {
    check_arity("compose_DJG", g.domain(), f.codomain())?;
    let rw = rewrite_past_mono(&g.elt, &f.mono)?;
    Ok(DJGMorphism {
        elt: rw.new_elt.compose(&f.elt)?,
        mono: g.mono.compose(&rw.new_mono)?,
    })
}

/// How fibres are split when the bimonoid rule is applied recursively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// `k = (k-1) + 1`.
    LeftNested,
    /// `k = 1 + (k-1)`.
    RightNested,
    /// Uniform split points drawn from a seeded generator.
    Seeded(u64),
}

struct Rewriter<'a> {
    family: Family,
    group: &'a Arc<FiniteGroup>,
    rng: Option<ChaCha8Rng>,
    strategy: SplitStrategy,
    fuel: usize,
    bound: usize,
}

impl Rewriter<'_> {
    fn split(&mut self, k: usize) -> (usize, usize) {
        let a = match self.strategy {
            SplitStrategy::LeftNested => k - 1,
            SplitStrategy::RightNested => 1,
            SplitStrategy::Seeded(_) => self.rng.as_mut().expect("seeded").gen_range(1..k),
        };
        (a, k - a)
    }

    fn mono(&self, mono: OrderedMap) -> DJGMorphism {
        DJGMorphism::from_mono(self.family, self.group, mono)
    }

    /// `(c, d)` with `ψ₂ᵒᵖ ∘ ψ₁ = d ∘ cᵒᵖ`.
    fn mono_cospan(&mut self, psi1: &OrderedMap, psi2: &OrderedMap) -> Result<(DJGMorphism, DJGMorphism)> {
        check_arity("cospan codomain", psi1.codomain(), psi2.codomain())?;
        let mut c = DJGMorphism::identity(self.family, self.group, 0);
        let mut d = c.clone();
        for (k, l) in psi1.fiber_sizes().into_iter().zip(psi2.fiber_sizes()) {
            let (ci, di) = self.fiber(k, l)?;
            c = c.tensor(&ci)?;
            d = d.tensor(&di)?;
        }
        Ok((c, d))
    }

    /// The span for `δ_l ∘ μ_k`.
    fn fiber(&mut self, k: usize, l: usize) -> Result<(DJGMorphism, DJGMorphism)> {
        self.fuel += 1;
        if self.fuel > self.bound {
            return Err(Error::NonTermination(self.bound));
        }
        let empty = |n| OrderedMap::new(Vec::new(), n).expect("empty map");
        Ok(match (k, l) {
            (k, 0) => (self.mono(empty(k)), self.mono(empty(0))),
            (0, l) => (self.mono(empty(0)), self.mono(empty(l))),
            (k, 1) => (self.mono(OrderedMap::identity(k)), self.mono(OrderedMap::collapse(k))),
            (1, l) => (self.mono(OrderedMap::collapse(l)), self.mono(OrderedMap::identity(l))),
            (k, l) => {
                let (a, b) = self.split(k);
                let (c, d) = self.split(l);
                let (ca, da) = self.fiber(a, 2)?;
                let (cb, db) = self.fiber(b, 2)?;
                let crossing = DJGMorphism::from_elt(Element::crossing(self.family, self.group, 4, 1)?);
                let mult = OrderedMap::mult();
                let e = self
                    .mono(mult.tensor(&mult))
                    .compose(&crossing.compose(&da.tensor(&db)?)?)?;
                let (c2, d2) = self.mono_cospan(&e.mono, &OrderedMap::collapse(c).tensor(&OrderedMap::collapse(d)))?;
                let in_leg = ca
                    .tensor(&cb)?
                    .compose(&DJGMorphism::from_elt(e.elt.inverse()).compose(&c2)?)?;
                (in_leg, d2)
            }
        })
    }
}

fn same_context(a: &DJGMorphism, b: &DJGMorphism) -> Result<()> {
    if a.family() != b.family() {
        return Err(Error::FamilyMismatch {
            expected: a.family().name(),
            found: b.family().name(),
        });
    }
    a.elt.labels().same_group(b.elt.labels())
}

/// Turns the cospan `p → m ← q` into a span `p ← r → q` denoting the same
/// morphism `left_outᵒᵖ ∘ right_out`.
pub fn cospan_to_span(right_out: &DJGMorphism, left_out: &DJGMorphism) -> Result<SpanMorphism> {
    cospan_to_span_with(right_out, left_out, SplitStrategy::LeftNested)
}

pub fn cospan_to_span_with(
    right_out: &DJGMorphism,
    left_out: &DJGMorphism,
    strategy: SplitStrategy,
) -> Result<SpanMorphism> {
    same_context(right_out, left_out)?;
    check_arity("cospan_to_span", right_out.codomain(), left_out.codomain())?;
    let size = right_out.domain() + left_out.domain() + 2;
    let mut rw = Rewriter {
        family: right_out.family(),
        group: right_out.group(),
        rng: match strategy {
            SplitStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        },
        strategy,
        fuel: 0,
        bound: 64 * size * size * size,
    };
    let (c, d) = rw.mono_cospan(&right_out.mono, &left_out.mono)?;
    let in_leg = DJGMorphism::from_elt(right_out.elt.inverse()).compose(&c)?;
    let out_leg = DJGMorphism::from_elt(left_out.elt.inverse()).compose(&d)?;
    SpanMorphism::new(in_leg, out_leg)
}

/// `out_leg ∘ in_legᵒᵖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanMorphism {
    pub in_leg: DJGMorphism,
    pub out_leg: DJGMorphism,
}

impl SpanMorphism {
    pub fn new(in_leg: DJGMorphism, out_leg: DJGMorphism) -> Result<Self> {
        same_context(&in_leg, &out_leg)?;
        check_arity("span middle", in_leg.domain(), out_leg.domain())?;
        Ok(SpanMorphism { in_leg, out_leg })
    }

    pub fn middle(&self) -> usize {
        self.in_leg.domain()
    }

    pub fn domain(&self) -> usize {
        self.in_leg.codomain()
    }

    pub fn codomain(&self) -> usize {
        self.out_leg.codomain()
    }

    pub fn canonicalize(&self) -> CompositeMorphism {
        canonicalize(self)
    }
}

/// Absorbs the in-leg element into the middle.
pub fn canonicalize(s: &SpanMorphism) -> CompositeMorphism {
    CompositeMorphism {
        in_mono: s.in_leg.mono.clone(),
        elt: s
            .out_leg
            .elt
            .compose(&s.in_leg.elt.inverse())
            .expect("legs share middle and family"),
        out_mono: s.out_leg.mono.clone(),
    }
}

pub fn span_equiv(s1: &SpanMorphism, s2: &SpanMorphism) -> Result<bool> {
    check_arity("span_equiv domain", s1.domain(), s2.domain())?;
    check_arity("span_equiv codomain", s1.codomain(), s2.codomain())?;
    Ok(canonicalize(s1) == canonicalize(s2))
}

/// `s2 ∘ s1`.
pub fn span_compose(s2: &SpanMorphism, s1: &SpanMorphism) -> Result<CompositeMorphism> {
    span_compose_with(s2, s1, SplitStrategy::LeftNested)
}

pub fn span_compose_with(s2: &SpanMorphism, s1: &SpanMorphism, strategy: SplitStrategy) -> Result<CompositeMorphism> {
    check_arity("span_compose", s2.domain(), s1.codomain())?;
    let inner = cospan_to_span_with(&s1.out_leg, &s2.in_leg, strategy)?;
    let span = SpanMorphism::new(
        s1.in_leg.compose(&inner.in_leg)?,
        s2.out_leg.compose(&inner.out_leg)?,
    )?;
    Ok(canonicalize(&span))
}

/// `out_mono ∘ elt ∘ in_monoᵒᵖ: n → m` through a middle of size `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeMorphism {
    pub in_mono: OrderedMap,
    pub elt: Element,
    pub out_mono: OrderedMap,
}

impl CompositeMorphism {
    pub fn new(in_mono: OrderedMap, elt: Element, out_mono: OrderedMap) -> Result<Self> {
        check_arity("composite in-leg", elt.arity(), in_mono.domain())?;
        check_arity("composite out-leg", elt.arity(), out_mono.domain())?;
        Ok(CompositeMorphism { in_mono, elt, out_mono })
    }

    pub fn identity(family: Family, group: &Arc<FiniteGroup>, n: usize) -> Self {
        CompositeMorphism {
            in_mono: OrderedMap::identity(n),
            elt: Element::identity(family, group, n),
            out_mono: OrderedMap::identity(n),
        }
    }

    pub fn from_mono(family: Family, group: &Arc<FiniteGroup>, mono: OrderedMap) -> Self {
        let n = mono.domain();
        CompositeMorphism {
            in_mono: OrderedMap::identity(n),
            elt: Element::identity(family, group, n),
            out_mono: mono,
        }
    }

    pub fn from_elt(elt: Element) -> Self {
        let n = elt.arity();
        CompositeMorphism {
            in_mono: OrderedMap::identity(n),
            elt,
            out_mono: OrderedMap::identity(n),
        }
    }

    pub fn from_djg(f: &DJGMorphism) -> Self {
        CompositeMorphism {
            in_mono: OrderedMap::identity(f.domain()),
            elt: f.elt.clone(),
            out_mono: f.mono.clone(),
        }
    }

    pub fn domain(&self) -> usize {
        self.in_mono.codomain()
    }

    pub fn codomain(&self) -> usize {
        self.out_mono.codomain()
    }

    pub fn middle(&self) -> usize {
        self.elt.arity()
    }

    pub fn family(&self) -> Family {
        self.elt.family()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.elt.group()
    }

    pub fn to_span(&self) -> SpanMorphism {
        SpanMorphism {
            in_leg: DJGMorphism::from_mono(self.family(), self.group(), self.in_mono.clone()),
            out_leg: DJGMorphism {
                elt: self.elt.clone(),
                mono: self.out_mono.clone(),
            },
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CompositeMorphism) -> Result<CompositeMorphism> {
        span_compose(&self.to_span(), &first.to_span())
    }

    pub fn compose_with(&self, first: &CompositeMorphism, strategy: SplitStrategy) -> Result<CompositeMorphism> {
        span_compose_with(&self.to_span(), &first.to_span(), strategy)
    }

    pub fn tensor(&self, other: &CompositeMorphism) -> Result<CompositeMorphism> {
        Ok(CompositeMorphism {
            in_mono: self.in_mono.tensor(&other.in_mono),
            elt: self.elt.tensor(&other.elt)?,
            out_mono: self.out_mono.tensor(&other.out_mono),
        })
    }

    /// The mirror image `in_mono ∘ elt⁻¹ ∘ out_monoᵒᵖ`.
    pub fn op(&self) -> CompositeMorphism {
        CompositeMorphism {
            in_mono: self.out_mono.clone(),
            elt: self.elt.inverse(),
            out_mono: self.in_mono.clone(),
        }
    }

    /// Every triple `n → m` with middle at most `max_middle`, for finite families.
    pub fn enumerate(
        family: Family,
        group: &Arc<FiniteGroup>,
        n: usize,
        m: usize,
        max_middle: usize,
    ) -> Option<Vec<Self>> {
        let mut out = Vec::new();
        for p in 0..=max_middle {
            let elements = Element::enumerate(family, group, p)?;
            for in_mono in OrderedMap::enumerate(p, n) {
                for out_mono in OrderedMap::enumerate(p, m) {
                    for elt in &elements {
                        out.push(CompositeMorphism {
                            in_mono: in_mono.clone(),
                            elt: elt.clone(),
                            out_mono: out_mono.clone(),
                        });
                    }
                }
            }
        }
        Some(out)
    }

    /// A random triple `n → m` with middle at most `max_middle`.
    pub fn random<R: Rng>(
        family: Family,
        group: &Arc<FiniteGroup>,
        n: usize,
        m: usize,
        max_middle: usize,
        rng: &mut R,
    ) -> Self {
        let choices: Vec<usize> = (0..=max_middle)
            .filter(|&p| (p == 0 || n > 0) && (p == 0 || m > 0))
            .collect();
        let p = *choices.choose(rng).expect("middle 0 always fits");
        CompositeMorphism {
            in_mono: OrderedMap::enumerate(p, n).choose(rng).expect("nonempty").clone(),
            elt: Element::random(family, group, p, 6, rng),
            out_mono: OrderedMap::enumerate(p, m).choose(rng).expect("nonempty").clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family().name(),
            "domain": self.domain(),
            "codomain": self.codomain(),
            "middle": self.middle(),
            "in_mono": self.in_mono.to_string(),
            "elt": self.elt.to_string(),
            "out_mono": self.out_mono.to_string(),
        })
    }

    /// Parses `span(in_mono; elt; out_mono)`.
    pub fn parse(family: Family, group: &Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let bad = || Error::InvalidMap(format!("expected span(in; elt; out), found {text:?}"));
        let inner = text
            .trim()
            .strip_prefix("span(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(';').collect();
        let [a, e, b] = parts[..] else {
            return Err(bad());
        };
        CompositeMorphism::new(a.trim().parse()?, Element::parse(family, group, e)?, b.trim().parse()?)
    }
}

impl fmt::Display for CompositeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span({}; {}; {})", self.in_mono, self.elt, self.out_mono)
    }
}
