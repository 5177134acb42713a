//! Braid and ribbon braid words, the Garside left normal form, cabling, and
//! the labelled groups `G^n ⋊ B_n`, `G^n ⋊ RB_n`.
//!
//! A word `l₁ l₂ … l_k` denotes the group product, so its underlying
//! permutation is `π(l₁) ∘ π(l₂) ∘ … ∘ π(l_k)`: the rightmost letter acts
//! first on strand positions. Composition of braids is concatenation and `π`
//! is a homomorphism.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_arity, Error, Result};
use crate::groups::{offsets, FiniteGroup, GroupTuple, Perm};

/// A word in the Artin generators `σ_i^{±1}`, stored 1-based and signed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i + 1 > strands {
                return Err(Error::OutOfRange {
                    context: "braid generator",
                    value: i,
                    bound: strands.saturating_sub(1),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i` (1-based) on `strands` strands.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, vec![i as i32])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        check_arity("braid_compose", self.strands, other.strands)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Juxtaposition, `other` placed on the trailing strands.
    pub fn tensor(&self, other: &BraidWord) -> BraidWord {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&l| if l > 0 { l + shift } else { l - shift }));
        BraidWord {
            strands: self.strands + other.strands,
            letters,
        }
    }

    fn shifted(&self, offset: usize, strands: usize) -> BraidWord {
        let shift = offset as i32;
        BraidWord {
            strands,
            letters: self
                .letters
                .iter()
                .map(|&l| if l > 0 { l + shift } else { l - shift })
                .collect(),
        }
    }

    pub fn underlying_permutation(&self) -> Perm {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            images.swap(i, i + 1);
        }
        Perm::from_images(images).expect("swaps of a bijection")
    }

    pub fn normal_form(&self) -> BraidNormalForm {
        BraidNormalForm::of(self)
    }

    /// The word of the left normal form; equal braids give identical words.
    pub fn normalized(&self) -> BraidWord {
        self.normal_form().to_word()
    }

    pub fn equivalent(&self, other: &BraidWord) -> bool {
        self.strands == other.strands && self.normal_form() == other.normal_form()
    }

    /// The permutation braid of `perm`: the positive braid in which every pair of
    /// strands crosses at most once.
    pub fn permutation_braid(perm: &Perm) -> BraidWord {
        BraidWord {
            strands: perm.len(),
            letters: simple_word(perm).into_iter().map(|i| i as i32 + 1).collect(),
        }
    }

    /// The Garside element `Δ_n`.
    pub fn delta(n: usize) -> BraidWord {
        Self::permutation_braid(&delta_perm(n))
    }

    /// The full twist `Δ_n^{2t}`.
    pub fn full_twist(n: usize, t: i64) -> BraidWord {
        let d2 = Self::delta(n).compose(&Self::delta(n)).expect("same strands");
        let base = if t < 0 { d2.inverse() } else { d2 };
        let mut out = Self::identity(n);
        for _ in 0..t.unsigned_abs() {
            out.letters.extend_from_slice(&base.letters);
        }
        out
    }

    /// The positive crossing of an `a`-strand block over a `b`-strand block.
    pub fn block_crossing(a: usize, b: usize) -> BraidWord {
        let images = (0..a + b).map(|j| if j < a { j + b } else { j - a }).collect();
        Self::permutation_braid(&Perm::from_images(images).expect("block crossing"))
    }

    /// Replaces strand `i` (at the input) by `mult[i]` parallel strands.
    pub fn cable(&self, mult: &[usize]) -> Result<BraidWord> {
        check_arity("cable", self.strands, mult.len())?;
        let total: usize = mult.iter().sum();
        let mut sizes = mult.to_vec();
        let mut pieces = Vec::with_capacity(self.letters.len());
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            let offset: usize = sizes[..i].iter().sum();
            let (a, b) = (sizes[i], sizes[i + 1]);
            let piece = if l > 0 {
                Self::block_crossing(a, b)
            } else {
                Self::block_crossing(b, a).inverse()
            };
            pieces.push(piece.shifted(offset, total));
            sizes.swap(i, i + 1);
        }
        let mut letters = Vec::new();
        for piece in pieces.iter().rev() {
            letters.extend_from_slice(&piece.letters);
        }
        Ok(BraidWord {
            strands: total,
            letters,
        })
    }

    /// Parses `"s1 s2' s1"` (prime = inverse); `"id"` or the empty string is the identity.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "id" {
                continue;
            }
            let bad = || Error::InvalidMap(format!("bad braid letter {tok:?}"));
            let body = tok.strip_prefix('s').ok_or_else(bad)?;
            let (digits, inv) = match body.strip_suffix('\'') {
                Some(d) => (d, true),
                None => (body, false),
            };
            let i: i32 = digits.parse().map_err(|_| bad())?;
            letters.push(if inv { -i } else { i });
        }
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", l.unsigned_abs())?;
            if l < 0 {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

fn delta_perm(n: usize) -> Perm {
    Perm::from_images((0..n).rev().collect()).expect("reversal")
}

/// Reduced word (0-based generator indices) of a permutation.
fn simple_word(perm: &Perm) -> Vec<usize> {
    let mut p = perm.images().to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        rev.push(i);
    }
    rev.reverse();
    rev
}

/// `Δ^k A₁ ⋯ A_r` with the `A_j` simple, left-weighted, none equal to `Δ` or `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidNormalForm {
    pub strands: usize,
    pub delta_power: i64,
    pub factors: Vec<Perm>,
}

impl BraidNormalForm {
    fn of(word: &BraidWord) -> Self {
        let n = word.strands;
        let delta = delta_perm(n);
        // factors with the count of inverse letters seen when they were pushed;
        // each later inverse letter conjugates them by Δ
        let mut raw: Vec<(Perm, usize)> = Vec::with_capacity(word.letters.len());
        let mut negatives = 0usize;
        for &l in &word.letters {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                raw.push((Perm::adjacent(n, i), negatives));
            } else {
                negatives += 1;
                raw.push((delta.compose(&Perm::adjacent(n, i)), negatives));
            }
        }
        let mut factors: Vec<Vec<usize>> = raw
            .into_iter()
            .map(|(p, seen)| {
                if (negatives - seen) % 2 == 1 {
                    delta.compose(&p).compose(&delta).images().to_vec()
                } else {
                    p.images().to_vec()
                }
            })
            .collect();
        let mut delta_power = -(negatives as i64);

        loop {
            let mut changed = false;
            for j in 0..factors.len().saturating_sub(1) {
                let (left, right) = factors.split_at_mut(j + 1);
                if slide(&mut left[j], &mut right[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let is_delta = |p: &Vec<usize>| p.iter().enumerate().all(|(i, &v)| v + i + 1 == n);
        let leading = factors.iter().take_while(|p| n > 1 && is_delta(p)).count();
        delta_power += leading as i64;
        factors.drain(..leading);
        while factors.last().is_some_and(|p| p.iter().enumerate().all(|(i, &v)| i == v)) {
            factors.pop();
        }
        BraidNormalForm {
            strands: n,
            delta_power,
            factors: factors
                .into_iter()
                .map(|p| Perm::from_images(p).expect("simple factor"))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = BraidWord::delta(n);
        let unit = if self.delta_power < 0 { delta.inverse() } else { delta };
        let mut letters = Vec::new();
        for _ in 0..self.delta_power.unsigned_abs() {
            letters.extend_from_slice(&unit.letters);
        }
        for p in &self.factors {
            letters.extend(simple_word(p).into_iter().map(|i| i as i32 + 1));
        }
        BraidWord { strands: n, letters }
    }
}

/// Moves crossings from the start of `b` onto the end of `a` until the pair is
/// left-weighted. Returns whether anything moved.
fn slide(a: &mut [usize], b: &mut [usize]) -> bool {
    let n = a.len();
    let mut moved = false;
    loop {
        let mut b_inv = vec![0; n];
        for (i, &v) in b.iter().enumerate() {
            b_inv[v] = i;
        }
        // i in the starting set of b but not in the finishing set of a
        let Some(i) = (0..n.saturating_sub(1)).find(|&i| b_inv[i] > b_inv[i + 1] && a[i] < a[i + 1])
        else {
            return moved;
        };
        a.swap(i, i + 1);
        for v in b.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        moved = true;
    }
}

/// An element of `RB_n = ℤ^n ⋊ B_n`: the braid followed by `twists[i]` full
/// twists on the ribbon ending at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonBraid {
    braid: BraidWord,
    twists: Vec<i64>,
}

impl RibbonBraid {
    pub fn new(braid: BraidWord, twists: Vec<i64>) -> Result<Self> {
        check_arity("ribbon twists", braid.strands(), twists.len())?;
        Ok(RibbonBraid { braid, twists })
    }

    pub fn identity(n: usize) -> Self {
        RibbonBraid {
            braid: BraidWord::identity(n),
            twists: vec![0; n],
        }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn strands(&self) -> usize {
        self.braid.strands()
    }

    /// `(t, β)(s, γ) = (t + β·s, βγ)`.
    pub fn compose(&self, other: &RibbonBraid) -> Result<RibbonBraid> {
        let braid = self.braid.compose(&other.braid)?;
        let moved = self.braid.underlying_permutation().act(&other.twists);
        Ok(RibbonBraid {
            braid,
            twists: self.twists.iter().zip(&moved).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn inverse(&self) -> RibbonBraid {
        let inv = self.braid.inverse();
        let moved = inv.underlying_permutation().act(&self.twists);
        RibbonBraid {
            braid: inv,
            twists: moved.into_iter().map(|t| -t).collect(),
        }
    }

    pub fn tensor(&self, other: &RibbonBraid) -> RibbonBraid {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        RibbonBraid {
            braid: self.braid.tensor(&other.braid),
            twists,
        }
    }

    pub fn normalized(&self) -> RibbonBraid {
        RibbonBraid {
            braid: self.braid.normalized(),
            twists: self.twists.clone(),
        }
    }

    pub fn equivalent(&self, other: &RibbonBraid) -> bool {
        self.twists == other.twists && self.braid.equivalent(&other.braid)
    }

    /// Cables each ribbon into `mult[i]` parallel ribbons; a block of `k` ribbons
    /// carrying `t` twists receives twist `t` on every ribbon plus `Δ_k^{2t}`.
    pub fn cable(&self, mult: &[usize]) -> Result<RibbonBraid> {
        let cabled = self.braid.cable(mult)?;
        let out_sizes = self.braid.underlying_permutation().act(mult);
        let total: usize = mult.iter().sum();
        let mut twist_braid = BraidWord::identity(total);
        let mut twists = Vec::with_capacity(total);
        for ((&k, &t), &offset) in out_sizes.iter().zip(&self.twists).zip(&offsets(&out_sizes)) {
            twists.extend(std::iter::repeat(t).take(k));
            if t != 0 && k > 1 {
                let block = BraidWord::full_twist(k, t).shifted(offset, total);
                twist_braid.letters.extend_from_slice(&block.letters);
            }
        }
        Ok(RibbonBraid {
            braid: twist_braid.compose(&cabled)?,
            twists,
        })
    }
}

impl fmt::Display for RibbonBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tw(")?;
        for (i, t) in self.twists.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ") {}", self.braid)
    }
}

/// An element of `G^n ⋊ B_n`, or of `G^n ⋊ RB_n` when `twists` is present.
/// The braid is always kept as its normal-form word, so equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledBraid {
    labels: GroupTuple,
    braid: BraidWord,
    twists: Option<Vec<i64>>,
}

impl LabelledBraid {
    pub fn new(labels: GroupTuple, braid: BraidWord, twists: Option<Vec<i64>>) -> Result<Self> {
        check_arity("labelled braid", braid.strands(), labels.len())?;
        if let Some(t) = &twists {
            check_arity("labelled braid twists", braid.strands(), t.len())?;
        }
        Ok(LabelledBraid {
            labels,
            braid: braid.normalized(),
            twists,
        })
    }

    pub fn identity(group: &Arc<FiniteGroup>, n: usize, ribbon: bool) -> Self {
        LabelledBraid {
            labels: GroupTuple::identity(group, n),
            braid: BraidWord::identity(n),
            twists: ribbon.then(|| vec![0; n]),
        }
    }

    pub fn labels(&self) -> &GroupTuple {
        &self.labels
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn twists(&self) -> Option<&[i64]> {
        self.twists.as_deref()
    }

    pub fn is_ribbon(&self) -> bool {
        self.twists.is_some()
    }

    pub fn arity(&self) -> usize {
        self.braid.strands()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.labels.group()
    }

    pub fn is_identity(&self) -> bool {
        self.braid.is_empty()
            && self.labels.is_identity()
            && self.twists.iter().flatten().all(|&t| t == 0)
    }

    pub fn underlying_permutation(&self) -> Perm {
        self.braid.underlying_permutation()
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.is_ribbon() != other.is_ribbon() {
            return Err(Error::FamilyMismatch {
                expected: if self.is_ribbon() { "ribbon" } else { "braid" },
                found: if other.is_ribbon() { "ribbon" } else { "braid" },
            });
        }
        self.labels.same_group(&other.labels)
    }

    /// `(x, t, β)(y, s, γ) = (x · β·y, t + β·s, βγ)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        check_arity("labelled braid product", self.arity(), other.arity())?;
        let perm = self.underlying_permutation();
        let labels = self
            .labels
            .mul(&GroupTuple::from_raw(other.group(), perm.act(other.labels.entries())))?;
        let twists = match (&self.twists, &other.twists) {
            (Some(t), Some(s)) => Some(t.iter().zip(perm.act(s)).map(|(a, b)| a + b).collect()),
            _ => None,
        };
        Ok(LabelledBraid {
            labels,
            braid: self.braid.compose(&other.braid)?.normalized(),
            twists,
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.braid.inverse();
        let p = inv.underlying_permutation();
        LabelledBraid {
            labels: GroupTuple::from_raw(self.group(), p.act(self.labels.inverse().entries())),
            twists: self.twists.as_ref().map(|t| p.act(t).into_iter().map(|x| -x).collect()),
            braid: inv.normalized(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let twists = match (&self.twists, &other.twists) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(LabelledBraid {
            labels: self.labels.concat(&other.labels)?,
            braid: self.braid.tensor(&other.braid).normalized(),
            twists,
        })
    }

    /// The braid (or ribbon) part cabled by `mult`, labels untouched.
    pub(crate) fn cable_core(&self, mult: &[usize]) -> Result<(BraidWord, Option<Vec<i64>>)> {
        match &self.twists {
            None => Ok((self.braid.cable(mult)?, None)),
            Some(t) => {
                let r = RibbonBraid::new(self.braid.clone(), t.clone())?.cable(mult)?;
                Ok((r.braid, Some(r.twists)))
            }
        }
    }
}

impl fmt::Display for LabelledBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}*braid<{}>(", self.labels, self.arity())?;
        if let Some(t) = &self.twists {
            write!(f, "tw(")?;
            for (i, x) in t.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ") ")?;
        }
        write!(f, "{})", self.braid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) { i } else { -i }
            })
            .collect();
        w(n, &letters)
    }

    /// Signed crossing count between the strands that start at input positions
    /// `a` and `b`. The word is read right to left.
    fn linking(word: &BraidWord, a: usize, b: usize) -> i32 {
        let mut at: Vec<usize> = (0..word.strands()).collect(); // position -> strand
        let mut total = 0;
        for &l in word.letters().iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            let pair = (at[i], at[i + 1]);
            if (pair == (a, b)) || (pair == (b, a)) {
                total += l.signum();
            }
            at.swap(i, i + 1);
        }
        total
    }

    #[test]
    fn compose_examples() {
        let s1 = w(3, &[1]);
        assert_eq!(s1.compose(&BraidWord::identity(3)).unwrap(), s1);
        let pair = s1.compose(&s1.inverse()).unwrap();
        assert_eq!(pair.letters(), &[1, -1]);
        assert!(pair.normal_form().is_identity());
        assert!(s1.compose(&w(2, &[])).is_err());
    }

    #[test]
    fn normal_form_braid_relation() {
        let a = w(3, &[1, 2, 1]);
        let b = w(3, &[2, 1, 2]);
        assert_eq!(a.normal_form(), b.normal_form());
        assert_ne!(w(3, &[1, 2]).normal_form(), w(3, &[2, 1]).normal_form());
        assert_ne!(w(3, &[1, 1]).normal_form(), BraidWord::identity(3).normal_form());
        // far commutation
        assert_eq!(w(4, &[1, 3]).normal_form(), w(4, &[3, 1]).normal_form());
        // Δ² is central
        let d2 = BraidWord::full_twist(4, 1);
        let x = w(4, &[1, -2, 3]);
        assert!(d2.compose(&x).unwrap().equivalent(&x.compose(&d2).unwrap()));
    }

    #[test]
    fn normal_form_word_is_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=5);
            let len = rng.gen_range(0..=12);
            let word = random_word(&mut rng, n, len);
            let nf = word.normal_form();
            let again = nf.to_word().normal_form();
            assert_eq!(nf, again);
            assert_eq!(nf.to_word().underlying_permutation(), word.underlying_permutation());
        }
    }

    #[test]
    fn free_cancellation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=5);
            let len = rng.gen_range(0..=12);
            let word = random_word(&mut rng, n, len);
            assert!(word.compose(&word.inverse()).unwrap().normal_form().is_identity());
        }
    }

    #[test]
    fn underlying_permutation_convention() {
        assert!(BraidWord::identity(3).underlying_permutation().is_identity());
        assert_eq!(w(3, &[1]).underlying_permutation(), Perm::adjacent(3, 0));
        // σ1σ2 ↦ (12)∘(23): 1→2→3→1
        assert_eq!(w(3, &[1, 2]).underlying_permutation().images(), &[1, 2, 0]);
    }

    #[test]
    fn underlying_permutation_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let a = random_word(&mut rng, n, 6);
            let b = random_word(&mut rng, n, 6);
            assert_eq!(
                a.compose(&b).unwrap().underlying_permutation(),
                a.underlying_permutation().compose(&b.underlying_permutation())
            );
        }
    }

    #[test]
    fn cable_examples() {
        let s1 = w(2, &[1]);
        assert_eq!(s1.cable(&[1, 1]).unwrap(), s1);
        let c = s1.cable(&[2, 1]).unwrap();
        assert_eq!(c.strands(), 3);
        assert_eq!(c.underlying_permutation(), Perm::adjacent(2, 0).block(&[2, 1]));
        // each strand of the 2-block crosses the single strand exactly once positively
        assert_eq!(linking(&c, 0, 2), 1);
        assert_eq!(linking(&c, 1, 2), 1);
        assert_eq!(linking(&c, 0, 1), 0);
        let deleted = s1.cable(&[1, 0]).unwrap();
        assert_eq!(deleted.strands(), 1);
        assert!(deleted.normal_form().is_identity());
        let neg = w(2, &[-1]).cable(&[1, 2]).unwrap();
        assert_eq!(linking(&neg, 0, 1), -1);
        assert_eq!(linking(&neg, 0, 2), -1);
        assert!(s1.cable(&[1]).is_err());
    }

    #[test]
    fn cable_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(2..=4);
            let a = random_word(&mut rng, n, 4);
            let b = random_word(&mut rng, n, 4);
            let mult: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            let moved = b.underlying_permutation().act(&mult);
            let lhs = a.compose(&b).unwrap().cable(&mult).unwrap();
            let rhs = a.cable(&moved).unwrap().compose(&b.cable(&mult).unwrap()).unwrap();
            assert!(lhs.equivalent(&rhs));
            assert_eq!(
                lhs.underlying_permutation(),
                a.compose(&b).unwrap().underlying_permutation().block(&mult)
            );
        }
    }

    #[test]
    fn ribbon_compose_examples() {
        let s1 = w(2, &[1]);
        let r1 = RibbonBraid::new(s1.clone(), vec![1, 0]).unwrap();
        let r2 = RibbonBraid::new(s1.clone(), vec![0, 2]).unwrap();
        let id = RibbonBraid::identity(2);
        assert_eq!(id.compose(&r1).unwrap(), r1);
        let prod = r1.compose(&r2).unwrap();
        assert_eq!(prod.twists(), &[3, 0]);
        assert_eq!(prod.braid().letters(), &[1, 1]);
        let back = r1.compose(&r1.inverse()).unwrap();
        assert!(back.equivalent(&id));
    }

    #[test]
    fn ribbon_group_axioms_small() {
        let mut elems = Vec::new();
        for word in [vec![], vec![1], vec![-1], vec![1, 1], vec![1, -1]] {
            for a in -1..=1 {
                for b in -1..=1 {
                    elems.push(RibbonBraid::new(w(2, &word), vec![a, b]).unwrap());
                }
            }
        }
        let id = RibbonBraid::identity(2);
        for x in &elems {
            assert!(x.compose(&x.inverse()).unwrap().equivalent(&id));
            assert!(x.inverse().compose(x).unwrap().equivalent(&id));
            for y in &elems {
                for z in elems.iter().step_by(3) {
                    let lhs = x.compose(y).unwrap().compose(z).unwrap();
                    let rhs = x.compose(&y.compose(z).unwrap()).unwrap();
                    assert!(lhs.equivalent(&rhs));
                }
            }
        }
    }

    #[test]
    fn ribbon_zero_twists_embed_braids() {
        let a = w(3, &[1, -2]);
        let b = w(3, &[2, 2, 1]);
        let ra = RibbonBraid::new(a.clone(), vec![0; 3]).unwrap();
        let rb = RibbonBraid::new(b.clone(), vec![0; 3]).unwrap();
        let prod = ra.compose(&rb).unwrap();
        assert_eq!(prod.twists(), &[0, 0, 0]);
        assert_eq!(prod.braid(), &a.compose(&b).unwrap());
    }

    #[test]
    fn ribbon_cable_examples() {
        let single = RibbonBraid::new(BraidWord::identity(1), vec![1]).unwrap();
        let c = single.cable(&[2]).unwrap();
        assert_eq!(c.twists(), &[1, 1]);
        assert!(c.braid().equivalent(&w(2, &[1, 1])));
        let r = RibbonBraid::new(w(3, &[1, -2]), vec![0, 0, 0]).unwrap();
        let mult = [2, 0, 1];
        assert_eq!(r.cable(&mult).unwrap().braid(), &r.braid().cable(&mult).unwrap());
        let r = RibbonBraid::new(w(3, &[1, -2]), vec![1, -1, 2]).unwrap();
        assert_eq!(r.cable(&[1, 1, 1]).unwrap(), r);
    }

    #[test]
    fn labelled_braid_semidirect() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let s1 = w(2, &[1]);
        let p = LabelledBraid::new(GroupTuple::new(&g, vec![1, 2]).unwrap(), s1.clone(), None).unwrap();
        let q = LabelledBraid::new(GroupTuple::new(&g, vec![3, 4]).unwrap(), s1.clone(), None).unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.labels().entries(), &[g.mul(1, 4), g.mul(2, 3)]);
        assert!(r.braid().equivalent(&w(2, &[1, 1])));
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn text_round_trip() {
        let word = w(3, &[1, -2, 1]);
        assert_eq!(word.to_string(), "s1 s2' s1");
        assert_eq!(BraidWord::parse(3, "s1 s2' s1").unwrap(), word);
        assert!(BraidWord::parse(2, "s2").is_err());
        assert_eq!(BraidWord::parse(2, "id").unwrap(), BraidWord::identity(2));
    }
}
