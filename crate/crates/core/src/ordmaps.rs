//! The PRO 𝔻 of finite ordinals and order-preserving maps.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_arity, Error, Result};

/// A weakly increasing map `{0..domain} → {0..codomain}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedMap {
    codomain: usize,
    values: Vec<usize>,
}

impl OrderedMap {
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= codomain) {
            return Err(Error::OutOfRange {
                context: "ordered map",
                value: bad,
                bound: codomain,
            });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap("values are not weakly increasing".into()));
        }
        Ok(OrderedMap { codomain, values })
    }

    pub fn identity(n: usize) -> Self {
        OrderedMap {
            codomain: n,
            values: (0..n).collect(),
        }
    }

    /// The multiplication `m: 2 → 1`.
    pub fn mult() -> Self {
        OrderedMap {
            codomain: 1,
            values: vec![0, 0],
        }
    }

    /// The unit `u: 0 → 1`.
    pub fn unit() -> Self {
        OrderedMap {
            codomain: 1,
            values: vec![],
        }
    }

    /// The unique map `k → 1` (iterated multiplication, `u` when `k = 0`).
    pub fn collapse(k: usize) -> Self {
        OrderedMap {
            codomain: 1,
            values: vec![0; k],
        }
    }

    /// The monotone map whose fibers have the given sizes.
    pub fn from_fiber_sizes(sizes: &[usize]) -> Self {
        let values = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i).take(k))
            .collect();
        OrderedMap {
            codomain: sizes.len(),
            values,
        }
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.codomain == self.values.len() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.codomain];
        for &v in &self.values {
            sizes[v] += 1;
        }
        sizes
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_sizes().iter().all(|&k| k > 0)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &OrderedMap) -> Result<OrderedMap> {
        check_arity("compose_mono", self.domain(), first.codomain)?;
        Ok(OrderedMap {
            codomain: self.codomain,
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn tensor(&self, other: &OrderedMap) -> OrderedMap {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + self.codomain));
        OrderedMap {
            codomain: self.codomain + other.codomain,
            values,
        }
    }

    /// Epi-mono factorization `self = mono ∘ epi`.
    pub fn factor(&self) -> (OrderedMap, OrderedMap) {
        let sizes = self.fiber_sizes();
        let image: Vec<usize> = (0..self.codomain).filter(|&i| sizes[i] > 0).collect();
        let epi = OrderedMap::from_fiber_sizes(&sizes.iter().copied().filter(|&k| k > 0).collect::<Vec<_>>());
        let mono = OrderedMap {
            codomain: self.codomain,
            values: image,
        };
        (mono, epi)
    }

    /// All weakly increasing maps `n → m`, in lexicographic order.
    pub fn enumerate(n: usize, m: usize) -> Vec<OrderedMap> {
        fn go(n: usize, m: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<OrderedMap>) {
            if acc.len() == n {
                out.push(OrderedMap {
                    codomain: m,
                    values: acc.clone(),
                });
                return;
            }
            for v in start..m {
                acc.push(v);
                go(n, m, v, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(n, m, 0, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Canonical generator word; see [`GeneratorWord`].
    pub fn decompose(&self) -> GeneratorWord {
        let (mono, epi) = self.factor();
        let mut layers = Vec::new();
        // surjective part: each layer merges the first two wires of every block still wider than one
        let mut widths = epi.fiber_sizes();
        while widths.iter().any(|&k| k > 1) {
            let mut layer = Vec::new();
            for k in widths.iter_mut() {
                if *k > 1 {
                    layer.push(Generator::Mult);
                    layer.extend(std::iter::repeat(Generator::Id).take(*k - 2));
                    *k -= 1;
                } else {
                    layer.push(Generator::Id);
                }
            }
            layers.push(layer);
        }
        // injective part: a single layer of identities and units
        if !mono.is_identity() {
            let mut layer = Vec::with_capacity(mono.codomain);
            let mut hit = mono.values.iter().peekable();
            for j in 0..mono.codomain {
                if hit.peek() == Some(&&j) {
                    hit.next();
                    layer.push(Generator::Id);
                } else {
                    layer.push(Generator::Unit);
                }
            }
            layers.push(layer);
        }
        GeneratorWord {
            domain: self.domain(),
            layers,
        }
    }
}

impl fmt::Display for OrderedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]:{}->{}", self.domain(), self.codomain)
    }
}

impl FromStr for OrderedMap {
    type Err = Error;

    /// Parses `"[v1,v2,...]:n->m"` with 1-based values.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMap(format!("cannot parse ordered map {s:?}"));
        let s = s.trim();
        let (vals, arities) = s.split_once(':').ok_or_else(bad)?;
        let vals = vals.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(bad)?;
        let (n, m) = arities.split_once("->").ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let values = if vals.trim().is_empty() {
            Vec::new()
        } else {
            vals.split(',')
                .map(|v| match v.trim().parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?
        };
        check_arity("ordered map domain", n, values.len())?;
        OrderedMap::new(values, m)
    }
}

/// A generator of 𝔻 as a PRO.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Id,
    Mult,
    Unit,
}

impl Generator {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Id => (1, 1),
            Generator::Mult => (2, 1),
            Generator::Unit => (0, 1),
        }
    }

    pub fn as_map(self) -> OrderedMap {
        match self {
            Generator::Id => OrderedMap::identity(1),
            Generator::Mult => OrderedMap::mult(),
            Generator::Unit => OrderedMap::unit(),
        }
    }
}

/// A composite of layers, each a tensor product of generators; the first layer
/// is applied first.
///
/// The canonical word of a map lists the merging layers of its surjective part
/// (each layer multiplies the first two wires of every block still wider than
/// one) followed by at most one layer of units for its injective part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub domain: usize,
    pub layers: Vec<Vec<Generator>>,
}

impl GeneratorWord {
    /// Rebuilds the map by composing and tensoring generators.
    pub fn recompose(&self) -> Result<OrderedMap> {
        let mut acc = OrderedMap::identity(self.domain);
        for layer in &self.layers {
            let map = layer
                .iter()
                .fold(OrderedMap::identity(0), |m, g| m.tensor(&g.as_map()));
            acc = map.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn generator_count(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .filter(|g| **g != Generator::Id)
            .count()
    }
}
