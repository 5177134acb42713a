//! Finite label groups, permutations and the semidirect products `G^n ⋊ Σ_n`
//! and `G^n ⋊ H_n`.
//!
//! Positions are 0-based throughout the library; textual forms are 1-based.
//!
//! A permutation `σ` is stored by its images, `σ[j]` being the position that
//! the entry at position `j` is moved to. It acts on tuples on the left by
//! `(σ·x)_i = x_{σ⁻¹(i)}`, and composition `σ∘τ` applies `τ` first. With this
//! convention a labelled permutation `(x, σ)` is read as "move the strands by
//! `σ`, then apply the label `x_i` at output position `i`", and the product
//! is `(x, σ)(y, τ) = (x · σ·y, στ)`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_arity, Error, Result};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TableJson {
    Flat(Vec<usize>),
    Rows(Vec<Vec<usize>>),
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: TableJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, validating the
    /// group axioms.
    pub fn from_table(order: usize, table: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        for r in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for c in 0..order {
                row_seen[table[r * order + c]] = true;
                col_seen[table[c * order + r]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(Error::InvalidGroup("table is not a Latin square".into()));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab = table[a * order + b];
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("Latin square has an inverse in every row")
            })
            .collect();
        let names = match names {
            Some(n) if n.len() == order => {
                let mut sorted = n.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != order {
                    return Err(Error::InvalidGroup("element names must be distinct".into()));
                }
                n
            }
            Some(_) => return Err(Error::InvalidGroup("names length differs from order".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order,
            table,
            inverse,
            identity,
            names,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The cyclic group of order `n`, elements named `e, r, r2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r{i}"),
            })
            .collect();
        Self::from_table(n, table, Some(names)).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters, elements ordered
    /// `e, (12), (23), (13), (123), (132)`.
    pub fn symmetric3() -> Self {
        let perms = all_permutations(3);
        // reorder to the documented naming
        let wanted: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        debug_assert_eq!(perms.len(), 6);
        let elems: Vec<Perm> = wanted.iter().map(|w| Perm(w.to_vec())).collect();
        let index = |p: &Perm| elems.iter().position(|q| q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for a in &elems {
            for b in &elems {
                table.push(index(&a.compose(b)));
            }
        }
        let names = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_table(6, table, Some(names)).expect("S3 table is a group")
    }

    /// Looks up one of the built-in groups by name (`trivial`, `c2`, `c3`, `s3`, `cN`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "trivial" | "c1" => Some(Self::trivial()),
            "s3" => Some(Self::symmetric3()),
            _ => {
                let n: usize = name.strip_prefix('c')?.parse().ok()?;
                (n > 0).then(|| Self::cyclic(n))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: GroupJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidGroup(e.to_string()))?;
        let table = match parsed.table {
            TableJson::Flat(t) => t,
            TableJson::Rows(rows) => rows.into_iter().flatten().collect(),
        };
        Self::from_table(parsed.order, table, parsed.names)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson {
            order: self.order,
            table: TableJson::Flat(self.table.clone()),
            names: Some(self.names.clone()),
        })
        .expect("group serializes")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element by name, or by decimal index.
    pub fn element(&self, name: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .or_else(|| name.parse().ok().filter(|&i: &usize| i < self.order))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A tuple in `G^n`.
#[derive(Debug, Clone)]
pub struct GroupTuple {
    group: Arc<FiniteGroup>,
    entries: Vec<usize>,
}

impl PartialEq for GroupTuple {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for GroupTuple {}

impl Hash for GroupTuple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl GroupTuple {
    pub fn new(group: &Arc<FiniteGroup>, entries: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e >= group.order()) {
            return Err(Error::OutOfRange {
                context: "group tuple",
                value: bad,
                bound: group.order(),
            });
        }
        Ok(GroupTuple {
            group: Arc::clone(group),
            entries,
        })
    }

    pub(crate) fn from_raw(group: &Arc<FiniteGroup>, entries: Vec<usize>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < group.order()));
        GroupTuple {
            group: Arc::clone(group),
            entries,
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize) -> Self {
        Self::from_raw(group, vec![group.identity(); n])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn same_group(&self, other: &GroupTuple) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Componentwise product.
    pub fn mul(&self, other: &GroupTuple) -> Result<GroupTuple> {
        self.same_group(other)?;
        check_arity("tuple product", self.len(), other.len())?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.group.mul(a, b))
            .collect();
        Ok(Self::from_raw(&self.group, entries))
    }

    pub fn inverse(&self) -> GroupTuple {
        let entries = self.entries.iter().map(|&a| self.group.inv(a)).collect();
        Self::from_raw(&self.group, entries)
    }

    pub fn concat(&self, other: &GroupTuple) -> Result<GroupTuple> {
        self.same_group(other)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self::from_raw(&self.group, entries))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&e| e == self.group.identity())
    }

    /// All tuples of length `n`.
    pub fn enumerate(group: &Arc<FiniteGroup>, n: usize) -> Vec<GroupTuple> {
        let k = group.order();
        let total = k.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut entries = vec![0; n];
                for slot in entries.iter_mut().rev() {
                    *slot = code % k;
                    code /= k;
                }
                Self::from_raw(group, entries)
            })
            .collect()
    }
}

impl fmt::Display for GroupTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.group.name(e))?;
        }
        write!(f, ")")
    }
}

/// A bijection of `{0..n}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::OutOfRange {
                    context: "permutation",
                    value: v,
                    bound: n,
                });
            }
            if seen[v] {
                return Err(Error::InvalidMap("permutation is not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    /// Adjacent transposition of positions `i` and `i+1` in `Σ_n`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "adjacent transposition out of range");
        let mut p = Self::identity(n);
        p.0.swap(i, i + 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Block sum `self ⊔ other`, `other` acting on the trailing positions.
    pub fn tensor(&self, other: &Perm) -> Perm {
        let n = self.len();
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&v| v + n));
        Perm(images)
    }

    /// Left action on tuples: the entry at position `j` moves to `σ(j)`.
    pub fn act<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(xs.len(), self.len(), "tuple length differs from permutation size");
        let mut out = xs.to_vec();
        for (j, x) in xs.iter().enumerate() {
            out[self.0[j]] = x.clone();
        }
        out
    }

    /// Number of inversions, i.e. the length of a reduced word.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Permutes contiguous blocks: block `i` (of size `sizes[i]`) moves to block
    /// position `self(i)`, keeping its internal order.
    pub fn block(&self, sizes: &[usize]) -> Perm {
        assert_eq!(sizes.len(), self.len());
        let out_sizes = self.act(sizes);
        let out_offsets = offsets(&out_sizes);
        let mut images = Vec::with_capacity(sizes.iter().sum());
        for (i, &k) in sizes.iter().enumerate() {
            let base = out_offsets[self.0[i]];
            images.extend(base..base + k);
        }
        Perm(images)
    }

    pub fn all(n: usize) -> Vec<Perm> {
        all_permutations(n)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&k| {
            let start = acc;
            acc += k;
            start
        })
        .collect()
}

/// All permutations of `{0..n}` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Perm> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm(current.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Perm(current.clone()));
    }
}

/// `(σ·x)_i = x_{σ⁻¹(i)}`.
pub fn tuple_act(sigma: &Perm, x: &GroupTuple) -> Result<GroupTuple> {
    check_arity("tuple_act", sigma.len(), x.len())?;
    Ok(GroupTuple::from_raw(x.group(), sigma.act(x.entries())))
}

/// Pulls a tuple back along a set map `f: n → m`: `result_i = x_{f(i)}`.
pub fn skeletal_relabel(f: &[usize], x: &GroupTuple) -> Result<GroupTuple> {
    let entries = f
        .iter()
        .map(|&v| {
            x.entries().get(v).copied().ok_or(Error::OutOfRange {
                context: "skeletal_relabel",
                value: v,
                bound: x.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupTuple::from_raw(x.group(), entries))
}

/// Generic form of [`skeletal_relabel`] for arbitrary per-position data.
pub(crate) fn pull_back<T: Clone>(f: &[usize], x: &[T]) -> Vec<T> {
    f.iter().map(|&v| x[v].clone()).collect()
}

/// An element of `C_2`, recording whether a strand is reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flag {
    Plus,
    Minus,
}

impl Flag {
    #[inline]
    pub fn mul(self, other: Flag) -> Flag {
        if self == other {
            Flag::Plus
        } else {
            Flag::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Flag::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Flag::Plus => '+',
            Flag::Minus => '-',
        }
    }
}

/// An element of `G^n ⋊ Σ_n`, or of `G^n ⋊ H_n` when `flags` is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledPermutation {
    labels: GroupTuple,
    perm: Perm,
    flags: Option<Vec<Flag>>,
}

impl LabelledPermutation {
    pub fn new(labels: GroupTuple, perm: Perm, flags: Option<Vec<Flag>>) -> Result<Self> {
        check_arity("labelled permutation", perm.len(), labels.len())?;
        if let Some(f) = &flags {
            check_arity("labelled permutation flags", perm.len(), f.len())?;
        }
        Ok(LabelledPermutation {
            labels,
            perm,
            flags,
        })
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize, hyperoctahedral: bool) -> Self {
        LabelledPermutation {
            labels: GroupTuple::identity(group, n),
            perm: Perm::identity(n),
            flags: hyperoctahedral.then(|| vec![Flag::Plus; n]),
        }
    }

    pub fn labels(&self) -> &GroupTuple {
        &self.labels
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn flags(&self) -> Option<&[Flag]> {
        self.flags.as_deref()
    }

    pub fn is_hyperoctahedral(&self) -> bool {
        self.flags.is_some()
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.labels.group()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
            && self.labels.is_identity()
            && self.flags.iter().flatten().all(|f| *f == Flag::Plus)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_arity("labelled permutation product", self.arity(), other.arity())?;
        self.labels.same_group(&other.labels)?;
        if self.is_hyperoctahedral() != other.is_hyperoctahedral() {
            return Err(Error::FamilyMismatch {
                expected: if self.is_hyperoctahedral() { "hyperoctahedral" } else { "symmetric" },
                found: if other.is_hyperoctahedral() { "hyperoctahedral" } else { "symmetric" },
            });
        }
        Ok(())
    }

    /// Semidirect product `(x, σ)(y, τ) = (x · σ·y, στ)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let moved = tuple_act(&self.perm, &other.labels)?;
        let labels = self.labels.mul(&moved)?;
        let flags = match (&self.flags, &other.flags) {
            (Some(a), Some(b)) => {
                let moved = self.perm.act(b);
                Some(a.iter().zip(&moved).map(|(x, y)| x.mul(*y)).collect())
            }
            _ => None,
        };
        Ok(LabelledPermutation {
            labels,
            perm: self.perm.compose(&other.perm),
            flags,
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        LabelledPermutation {
            labels: GroupTuple::from_raw(self.group(), inv.act(self.labels.inverse().entries())),
            flags: self.flags.as_ref().map(|f| inv.act(f)),
            perm: inv,
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.labels.same_group(&other.labels)?;
        let flags = match (&self.flags, &other.flags) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            (None, None) => None,
            _ => {
                return Err(Error::FamilyMismatch {
                    expected: "matching flag modes",
                    found: "mixed flag modes",
                })
            }
        };
        Ok(LabelledPermutation {
            labels: self.labels.concat(&other.labels)?,
            perm: self.perm.tensor(&other.perm),
            flags,
        })
    }

    /// Every element of `G^n ⋊ Σ_n` (or `G^n ⋊ H_n`).
    pub fn enumerate(group: &Arc<FiniteGroup>, n: usize, hyperoctahedral: bool) -> Vec<Self> {
        let tuples = GroupTuple::enumerate(group, n);
        let flag_sets: Vec<Option<Vec<Flag>>> = if hyperoctahedral {
            (0..1usize << n)
                .map(|bits| {
                    Some(
                        (0..n)
                            .map(|i| if bits >> i & 1 == 1 { Flag::Minus } else { Flag::Plus })
                            .collect(),
                    )
                })
                .collect()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for perm in Perm::all(n) {
            for labels in &tuples {
                for flags in &flag_sets {
                    out.push(LabelledPermutation {
                        labels: labels.clone(),
                        perm: perm.clone(),
                        flags: flags.clone(),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for LabelledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}*perm{}", self.labels, self.perm)?;
        if let Some(flags) = &self.flags {
            write!(f, "{{")?;
            for (i, fl) in flags.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", fl.symbol())?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn tuple(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupTuple {
        GroupTuple::new(g, xs.to_vec()).unwrap()
    }

    #[test]
    fn builtin_groups_are_valid() {
        for name in ["trivial", "c2", "c3", "s3", "c5"] {
            let g = FiniteGroup::builtin(name).unwrap();
            for a in 0..g.order() {
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
            }
        }
        assert!(!FiniteGroup::symmetric3().is_abelian());
        assert!(FiniteGroup::cyclic(3).is_abelian());
    }

    #[test]
    fn rejects_non_latin_table() {
        let err = FiniteGroup::from_table(2, vec![0, 1, 1, 1], None).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table(5, t, None).is_err());
    }

    #[test]
    fn group_json_round_trip() {
        let g = FiniteGroup::symmetric3();
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        let nested = FiniteGroup::from_json(r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(nested.mul(1, 1), 0);
    }

    #[test]
    fn tuple_act_examples() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let x = tuple(&g, &[0, 1, 2]);
        assert_eq!(tuple_act(&Perm::identity(3), &x).unwrap(), x);
        let ab = tuple(&g, &[1, 2]);
        assert_eq!(tuple_act(&Perm::adjacent(2, 0), &ab).unwrap(), tuple(&g, &[2, 1]));
        // 1→2→3→1
        let cycle = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(tuple_act(&cycle, &x).unwrap(), tuple(&g, &[2, 0, 1]));
        assert!(tuple_act(&cycle, &ab).is_err());
    }

    #[test]
    fn tuple_act_is_left_action_exhaustive() {
        let g = Arc::new(FiniteGroup::symmetric3());
        for n in 0..=4 {
            let perms = Perm::all(n);
            let tuples = if n <= 3 { GroupTuple::enumerate(&g, n) } else { GroupTuple::enumerate(&g, n).into_iter().step_by(7).collect() };
            for s in &perms {
                for t in &perms {
                    let st = s.compose(t);
                    for x in &tuples {
                        let lhs = tuple_act(&st, x).unwrap();
                        let rhs = tuple_act(s, &tuple_act(t, x).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn semidirect_example_c2() {
        // ((a,b),(12)) ∘ ((c,d),(12)) = ((a·d, b·c), id), checked on all of C2^2
        let g = c2();
        let swap = Perm::adjacent(2, 0);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let p = LabelledPermutation::new(tuple(&g, &[a, b]), swap.clone(), None).unwrap();
                        let q = LabelledPermutation::new(tuple(&g, &[c, d]), swap.clone(), None).unwrap();
                        let r = p.compose(&q).unwrap();
                        assert_eq!(r.labels().entries(), &[g.mul(a, d), g.mul(b, c)]);
                        assert!(r.perm().is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn semidirect_nonabelian_positions() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let swap = Perm::adjacent(2, 0);
        let p = LabelledPermutation::new(tuple(&g, &[1, 2]), swap.clone(), None).unwrap();
        let q = LabelledPermutation::new(tuple(&g, &[3, 4]), swap, None).unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.labels().entries(), &[g.mul(1, 4), g.mul(2, 3)]);
    }

    #[test]
    fn hyperoctahedral_h2_cayley_table() {
        let g = Arc::new(FiniteGroup::trivial());
        let elems = LabelledPermutation::enumerate(&g, 2, true);
        assert_eq!(elems.len(), 8);
        let swap = Perm::adjacent(2, 0);
        let x = LabelledPermutation::new(
            GroupTuple::identity(&g, 2),
            swap,
            Some(vec![Flag::Minus, Flag::Plus]),
        )
        .unwrap();
        let sq = x.compose(&x).unwrap();
        assert!(sq.perm().is_identity());
        assert_eq!(sq.flags().unwrap(), &[Flag::Minus, Flag::Minus]);
        // closure, associativity, identity and inverses by Cayley table
        let id = LabelledPermutation::identity(&g, 2, true);
        for a in &elems {
            assert_eq!(&a.compose(&id).unwrap(), a);
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
            for b in &elems {
                let ab = a.compose(b).unwrap();
                assert!(elems.contains(&ab));
                for c in &elems {
                    assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn labelled_permutation_group_axioms_exhaustive() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let g = Arc::new(g);
            for n in 0..=3 {
                let elems = LabelledPermutation::enumerate(&g, n, false);
                let fact: usize = (1..=n).product();
                assert_eq!(elems.len(), g.order().pow(n as u32) * fact);
                let id = LabelledPermutation::identity(&g, n, false);
                // full triples only where cheap; otherwise a deterministic stride
                let stride = if elems.len() > 60 { 13 } else { 1 };
                for a in elems.iter().step_by(stride) {
                    assert_eq!(&id.compose(a).unwrap(), a);
                    assert_eq!(&a.compose(&id).unwrap(), a);
                    assert!(a.inverse().compose(a).unwrap().is_identity());
                    for b in elems.iter().step_by(stride) {
                        let ab = a.compose(b).unwrap();
                        for c in elems.iter().step_by(stride) {
                            assert_eq!(
                                ab.compose(c).unwrap(),
                                a.compose(&b.compose(c).unwrap()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn skeletal_relabel_examples() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let x = tuple(&g, &[1, 2]);
        assert_eq!(skeletal_relabel(&[0, 1], &x).unwrap(), x);
        let single = tuple(&g, &[2]);
        assert_eq!(skeletal_relabel(&[0, 0], &single).unwrap(), tuple(&g, &[2, 2]));
        assert!(skeletal_relabel(&[], &x).unwrap().is_empty());
        assert!(skeletal_relabel(&[3], &x).is_err());
    }

    #[test]
    fn skeletal_relabel_contravariant() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let x = tuple(&g, &[0, 1, 2]);
        // f: 2 → 3, h: 4 → 2, f∘h: 4 → 3
        let f = [2, 0];
        let h = [1, 1, 0, 1];
        let fh: Vec<usize> = h.iter().map(|&i| f[i]).collect();
        let lhs = skeletal_relabel(&fh, &x).unwrap();
        let rhs = skeletal_relabel(&h, &skeletal_relabel(&f, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_permutation_moves_blocks() {
        let swap = Perm::adjacent(2, 0);
        assert_eq!(swap.block(&[2, 1]).images(), &[1, 2, 0]);
        assert_eq!(swap.block(&[1, 0]).images(), &[0]);
    }
}
