//! Matrix semantics over `ℤ/p`: a finite G-bimonoid model evaluates every kind
//! of morphism as a `d^m × d^n` matrix, and the checkers compare evaluations of
//! composites and tensors against products and Kronecker products.
//!
//! Tensor products use Kronecker ordering, so the basis vector
//! `e_{a₀} ⊗ … ⊗ e_{a_{n-1}}` has index `a₀·d^{n-1} + … + a_{n-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::composites::{cospan_to_span, CompositeMorphism, DJGMorphism};
use crate::crossed::{Element, Family};
use crate::error::{check_arity, Error, Result};
use crate::groups::{FiniteGroup, Flag, Perm};
use crate::ncsets::{random_span, GFMap, NCSetMap, NcSpan};
use crate::ordmaps::OrderedMap;

/// A matrix over `ℤ/p`, stored as sorted sparse rows without zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, u32)>>,
}

impl ModMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        ModMatrix {
            p,
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows of integers, reduced modulo `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidModel("ragged matrix rows".into()));
        }
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(i64::from(p)) as u32);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let row = &self.entries[i];
        row.binary_search_by_key(&j, |e| e.0).map_or(0, |k| row[k].1)
    }

    fn set(&mut self, i: usize, j: usize, v: u32) {
        let v = v % self.p;
        let row = &mut self.entries[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v == 0 => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v == 0 => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .iter()
            .map(|row| {
                let mut dense = vec![0; self.cols];
                for &(j, v) in row {
                    dense[j] = v;
                }
                dense
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row[0] == (i, 1))
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        check_arity("matrix product", self.cols, other.rows)?;
        let p = u64::from(self.p);
        let mut acc = vec![0u64; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut entries = Vec::with_capacity(self.rows);
        for row in &self.entries {
            for &(k, a) in row {
                for &(j, b) in &other.entries[k] {
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                    // keep the accumulator nonzero while touched
                    acc[j] = (acc[j] + u64::from(a) * u64::from(b)) % p + p;
                }
            }
            touched.sort_unstable();
            let out: Vec<(usize, u32)> = touched
                .drain(..)
                .filter_map(|j| {
                    let v = (std::mem::take(&mut acc[j]) % p) as u32;
                    (v != 0).then_some((j, v))
                })
                .collect();
            entries.push(out);
        }
        Ok(ModMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn kron(&self, other: &ModMatrix) -> ModMatrix {
        let p = u64::from(self.p);
        let mut entries = Vec::with_capacity(self.rows * other.rows);
        for a_row in &self.entries {
            for b_row in &other.entries {
                let mut out = Vec::with_capacity(a_row.len() * b_row.len());
                for &(j, a) in a_row {
                    for &(l, b) in b_row {
                        let v = (u64::from(a) * u64::from(b) % p) as u32;
                        if v != 0 {
                            out.push((j * other.cols + l, v));
                        }
                    }
                }
                entries.push(out);
            }
        }
        ModMatrix {
            p: self.p,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        }
    }

    pub fn kron_all<'a>(p: u32, factors: impl IntoIterator<Item = &'a ModMatrix>) -> ModMatrix {
        factors
            .into_iter()
            .fold(Self::identity(p, 1), |acc, f| acc.kron(f))
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<ModMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = u64::from(self.p);
        let mut a: Vec<Vec<u64>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(u64::from).collect())
            .collect();
        let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = mod_pow(a[col][col], p - 2, p);
            for j in 0..n {
                a[col][j] = a[col][j] * scale % p;
                inv[col][j] = inv[col][j] * scale % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in 0..n {
                        a[r][j] = (a[r][j] + p * p - f * a[col][j]) % p;
                        inv[r][j] = (inv[r][j] + p * p - f * inv[col][j]) % p;
                    }
                }
            }
        }
        let rows: Vec<Vec<i64>> = inv
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i64).collect())
            .collect();
        Self::from_rows(self.p, &rows).ok()
    }

    /// Number of entries where the two matrices differ.
    pub fn distance(&self, other: &ModMatrix) -> usize {
        if self.rows != other.rows || self.cols != other.cols {
            return usize::MAX;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                let mut diff = 0;
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    match (a.get(i), b.get(j)) {
                        (Some(x), Some(y)) if x.0 == y.0 => {
                            diff += usize::from(x.1 != y.1);
                            i += 1;
                            j += 1;
                        }
                        (Some(x), Some(y)) if x.0 < y.0 => {
                            diff += 1;
                            i += 1;
                        }
                        (Some(_), None) => {
                            diff += 1;
                            i += 1;
                        }
                        _ => {
                            diff += 1;
                            j += 1;
                        }
                    }
                }
                diff
            })
            .sum()
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// How the symmetry acts on `M ⊗ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Braiding {
    Flip,
    /// The Koszul-signed flip for the given basis parities.
    Sign(Vec<u8>),
}

/// A finite free `ℤ/p`-module with G-bimonoid structure, a symmetry, a twist
/// and an optional involution.
#[derive(Debug, Clone)]
pub struct BimonoidModel {
    p: u32,
    dim: usize,
    group: Arc<FiniteGroup>,
    mult: ModMatrix,
    unit: ModMatrix,
    comult: ModMatrix,
    counit: ModMatrix,
    action: Vec<ModMatrix>,
    braiding: Braiding,
    twist: ModMatrix,
    twist_inverse: ModMatrix,
    involution: Option<ModMatrix>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    p: u32,
    dim: usize,
    #[serde(default)]
    group: Option<Value>,
    mult: Vec<Vec<i64>>,
    unit: Vec<Vec<i64>>,
    comult: Vec<Vec<i64>>,
    counit: Vec<Vec<i64>>,
    #[serde(default)]
    action: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default = "default_braiding")]
    braiding: String,
    #[serde(default)]
    parity: Option<Vec<u8>>,
    #[serde(default)]
    twist: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    involution: Option<Vec<Vec<i64>>>,
}

fn default_braiding() -> String {
    "flip".into()
}

impl BimonoidModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: u32,
        dim: usize,
        group: Arc<FiniteGroup>,
        mult: ModMatrix,
        unit: ModMatrix,
        comult: ModMatrix,
        counit: ModMatrix,
        action: Vec<ModMatrix>,
        braiding: Braiding,
        twist: Option<ModMatrix>,
        involution: Option<ModMatrix>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModel(format!("{p} is not prime")));
        }
        let shape = |m: &ModMatrix, r: usize, c: usize, what: &str| {
            if m.rows != r || m.cols != c || m.p != p {
                Err(Error::InvalidModel(format!(
                    "{what} is {}x{} mod {}, expected {r}x{c} mod {p}",
                    m.rows, m.cols, m.p
                )))
            } else {
                Ok(())
            }
        };
        shape(&mult, dim, dim * dim, "mult")?;
        shape(&unit, dim, 1, "unit")?;
        shape(&comult, dim * dim, dim, "comult")?;
        shape(&counit, 1, dim, "counit")?;
        if action.len() != group.order() {
            return Err(Error::InvalidModel(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for a in &action {
            shape(a, dim, dim, "action")?;
        }
        if let Braiding::Sign(parity) = &braiding {
            if parity.len() != dim || parity.iter().any(|&x| x > 1) {
                return Err(Error::InvalidModel("parity must be a 0/1 vector of length dim".into()));
            }
        }
        let twist = twist.unwrap_or_else(|| ModMatrix::identity(p, dim));
        shape(&twist, dim, dim, "twist")?;
        let twist_inverse = twist
            .inverse()
            .ok_or_else(|| Error::InvalidModel("twist is not invertible".into()))?;
        if let Some(i) = &involution {
            shape(i, dim, dim, "involution")?;
        }
        Ok(BimonoidModel {
            p,
            dim,
            group,
            mult,
            unit,
            comult,
            counit,
            action,
            braiding,
            twist,
            twist_inverse,
            involution,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn involution(&self) -> Option<&ModMatrix> {
        self.involution.as_ref()
    }

    pub fn mult(&self) -> &ModMatrix {
        &self.mult
    }

    pub fn comult(&self) -> &ModMatrix {
        &self.comult
    }

    pub fn twist(&self) -> &ModMatrix {
        &self.twist
    }

    /// The matrix by which group element `g` acts.
    pub fn action(&self, g: usize) -> &ModMatrix {
        &self.action[g]
    }

    /// The same model with `δ` replaced, for mutation tests.
    pub fn with_comult(&self, comult: ModMatrix) -> Result<Self> {
        check_arity("comult rows", self.dim * self.dim, comult.rows)?;
        check_arity("comult cols", self.dim, comult.cols)?;
        Ok(BimonoidModel { comult, ..self.clone() })
    }

    fn id(&self, n: usize) -> ModMatrix {
        ModMatrix::identity(self.p, self.dim.pow(n as u32))
    }

    fn parity(&self, basis: usize) -> u8 {
        match &self.braiding {
            Braiding::Flip => 0,
            Braiding::Sign(par) => par[basis],
        }
    }

    /// The symmetry `M ⊗ M → M ⊗ M`.
    pub fn symmetry(&self) -> ModMatrix {
        self.permutation(&Perm::adjacent(2, 0))
    }

    /// Moves tensor factor `j` to position `σ(j)`, with the Koszul sign.
    pub fn permutation(&self, sigma: &Perm) -> ModMatrix {
        let n = sigma.len();
        let d = self.dim;
        let size = d.pow(n as u32);
        let mut m = ModMatrix::zeros(self.p, size, size);
        let mut digits = vec![0usize; n];
        for col in 0..size {
            let mut c = col;
            for slot in digits.iter_mut().rev() {
                *slot = c % d;
                c /= d;
            }
            let mut out = vec![0usize; n];
            for (j, &a) in digits.iter().enumerate() {
                out[sigma.apply(j)] = a;
            }
            let mut odd_swaps = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if sigma.apply(i) > sigma.apply(j) && self.parity(digits[i]) == 1 && self.parity(digits[j]) == 1 {
                        odd_swaps += 1;
                    }
                }
            }
            let row = out.iter().fold(0, |acc, &a| acc * d + a);
            m.set(row, col, if odd_swaps % 2 == 1 { self.p - 1 } else { 1 });
        }
        m
    }

    /// Left-nested `k`-fold product `M^{⊗k} → M`; `η` for `k = 0`.
    pub fn mult_k(&self, k: usize) -> ModMatrix {
        match k {
            0 => self.unit.clone(),
            1 => self.id(1),
            _ => self
                .mult
                .mul(&self.mult_k(k - 1).kron(&self.id(1)))
                .expect("dimensions agree"),
        }
    }

    /// Left-nested `k`-fold coproduct `M → M^{⊗k}`; `ε` for `k = 0`.
    pub fn comult_k(&self, k: usize) -> ModMatrix {
        match k {
            0 => self.counit.clone(),
            1 => self.id(1),
            _ => self
                .comult_k(k - 1)
                .kron(&self.id(1))
                .mul(&self.comult)
                .expect("dimensions agree"),
        }
    }

    pub fn eval_mono(&self, psi: &OrderedMap) -> ModMatrix {
        let parts: Vec<ModMatrix> = psi.fiber_sizes().into_iter().map(|k| self.mult_k(k)).collect();
        ModMatrix::kron_all(self.p, &parts)
    }

    /// The opposite of `ψ`, built from coproducts.
    pub fn eval_mono_op(&self, psi: &OrderedMap) -> ModMatrix {
        let parts: Vec<ModMatrix> = psi.fiber_sizes().into_iter().map(|k| self.comult_k(k)).collect();
        ModMatrix::kron_all(self.p, &parts)
    }

    fn strand_matrix(&self, label: usize, flag: Flag, twist: i64) -> Result<ModMatrix> {
        let mut m = self.action[label].clone();
        if flag.is_minus() {
            let iota = self
                .involution
                .as_ref()
                .ok_or_else(|| Error::InvalidModel("flagged element needs an involution".into()))?;
            m = m.mul(iota)?;
        }
        let t = if twist < 0 { &self.twist_inverse } else { &self.twist };
        for _ in 0..twist.unsigned_abs() {
            m = m.mul(t)?;
        }
        Ok(m)
    }

    pub fn eval_element(&self, e: &Element) -> Result<ModMatrix> {
        if e.group().order() != self.group.order() {
            return Err(Error::GroupMismatch);
        }
        let n = e.arity();
        let core = match e {
            Element::Perm(p) => self.permutation(p.perm()),
            Element::Braid(b) => {
                let mut m = self.id(n);
                for &l in b.braid().letters() {
                    let i = l.unsigned_abs() as usize - 1;
                    let c = self.symmetry();
                    let c = if l < 0 {
                        c.inverse().ok_or_else(|| Error::InvalidModel("symmetry is singular".into()))?
                    } else {
                        c
                    };
                    let letter = self.id(i).kron(&c).kron(&self.id(n - i - 2));
                    m = m.mul(&letter)?;
                }
                m
            }
        };
        let strands = (0..n)
            .map(|i| {
                self.strand_matrix(
                    e.labels().entries()[i],
                    e.flags().map_or(Flag::Plus, |f| f[i]),
                    e.twists().map_or(0, |t| t[i]),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        ModMatrix::kron_all(self.p, &strands).mul(&core)
    }

    pub fn eval_djg(&self, f: &DJGMorphism) -> Result<ModMatrix> {
        self.eval_mono(&f.mono).mul(&self.eval_element(&f.elt)?)
    }

    /// `fᵒᵖ = j⁻¹ ∘ ψᵒᵖ` for `f = ψ ∘ j`.
    pub fn eval_djg_op(&self, f: &DJGMorphism) -> Result<ModMatrix> {
        self.eval_element(&f.elt.inverse())?.mul(&self.eval_mono_op(&f.mono))
    }

    pub fn eval_composite(&self, c: &CompositeMorphism) -> Result<ModMatrix> {
        self.eval_mono(&c.out_mono)
            .mul(&self.eval_element(&c.elt)?)?
            .mul(&self.eval_mono_op(&c.in_mono))
    }

    pub fn eval_ncset(&self, f: &NCSetMap) -> Result<ModMatrix> {
        self.eval_djg(&f.to_pair())
    }

    /// Fibres are multiplied in sorted order; functorial only for
    /// commutative models.
    pub fn eval_gf(&self, f: &GFMap) -> Result<ModMatrix> {
        self.eval_ncset(&f.to_ordered())
    }

    pub fn eval_ncspan(&self, s: &NcSpan) -> Result<ModMatrix> {
        let out = self.eval_ncset(&s.out_leg)?;
        let pair = s.in_leg.to_pair();
        out.mul(&self.eval_djg_op(&pair)?)
    }

    /// Every axiom that fails, by name.
    pub fn verify(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let mut check = |ok: bool, name: &str| {
            if !ok {
                failures.push(name.to_string());
            }
        };
        let i1 = self.id(1);
        let mu = &self.mult;
        let delta = &self.comult;
        let eta = &self.unit;
        let eps = &self.counit;
        let m = |a: &ModMatrix, b: &ModMatrix| a.mul(b).expect("model dimensions");
        let c = self.symmetry();

        check(m(mu, &mu.kron(&i1)) == m(mu, &i1.kron(mu)), "associativity");
        check(m(mu, &eta.kron(&i1)) == i1 && m(mu, &i1.kron(eta)) == i1, "unit");
        check(m(&delta.kron(&i1), delta) == m(&i1.kron(delta), delta), "coassociativity");
        check(m(&eps.kron(&i1), delta) == i1 && m(&i1.kron(eps), delta) == i1, "counit");
        let middle = i1.kron(&c).kron(&i1);
        check(
            m(delta, mu) == m(&m(&mu.kron(mu), &middle), &delta.kron(delta)),
            "bimonoid compatibility",
        );
        check(m(eps, mu) == eps.kron(eps), "counit multiplicative");
        check(m(delta, eta) == eta.kron(eta), "unit comultiplicative");
        check(m(eps, eta).is_identity(), "counit of unit");
        check(m(&c, &c).is_identity(), "symmetry squares to identity");

        let g = &self.group;
        check(self.action[g.identity()].is_identity(), "action of identity");
        for a in 0..g.order() {
            for b in 0..g.order() {
                check(
                    m(&self.action[a], &self.action[b]) == self.action[g.mul(a, b)],
                    "action is a homomorphism",
                );
            }
            let act = &self.action[a];
            check(m(act, mu) == m(mu, &act.kron(act)), "action preserves product");
            check(m(act, eta) == *eta, "action preserves unit");
            check(m(delta, act) == m(&act.kron(act), delta), "action preserves coproduct");
            check(m(eps, act) == *eps, "action preserves counit");
        }

        let t = &self.twist;
        check(m(t, mu) == m(mu, &t.kron(t)), "twist preserves product");
        check(m(t, eta) == *eta, "twist preserves unit");
        check(m(delta, t) == m(&t.kron(t), delta), "twist preserves coproduct");
        check(m(eps, t) == *eps, "twist preserves counit");
        for act in &self.action {
            check(m(t, act) == m(act, t), "twist commutes with action");
        }

        if let Some(iota) = &self.involution {
            check(m(iota, iota) == i1, "involution squares to identity");
            check(m(iota, mu) == m(&m(mu, &iota.kron(iota)), &c), "involution reverses product");
            check(m(delta, iota) == m(&m(&c, &iota.kron(iota)), delta), "involution reverses coproduct");
            check(m(iota, eta) == *eta, "involution preserves unit");
            check(m(eps, iota) == *eps, "involution preserves counit");
            for act in &self.action {
                check(m(iota, act) == m(act, iota), "involution commutes with action");
            }
        }

        if let Braiding::Sign(par) = &self.braiding {
            let even = |mat: &ModMatrix, in_par: &dyn Fn(usize) -> u8, out_par: &dyn Fn(usize) -> u8| {
                (0..mat.rows).all(|r| (0..mat.cols).all(|col| mat.get(r, col) == 0 || in_par(col) == out_par(r)))
            };
            let d = self.dim;
            let p1 = |i: usize| par[i];
            let p2 = |i: usize| (par[i / d] + par[i % d]) % 2;
            let p0 = |_: usize| 0u8;
            check(even(mu, &p2, &p1), "product is even");
            check(even(delta, &p1, &p2), "coproduct is even");
            check(even(eta, &p0, &p1), "unit is even");
            check(even(eps, &p1, &p0), "counit is even");
            check(even(t, &p1, &p1), "twist is even");
            for act in &self.action {
                check(even(act, &p1, &p1), "action is even");
            }
            if let Some(iota) = &self.involution {
                check(even(iota, &p1, &p1), "involution is even");
            }
        }
        failures.dedup();
        failures
    }

    pub fn to_json(&self) -> Value {
        let rows = |m: &ModMatrix| -> Vec<Vec<i64>> {
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect()
        };
        let doc = ModelJson {
            p: self.p,
            dim: self.dim,
            group: Some(serde_json::from_str(&self.group.to_json()).expect("group json")),
            mult: rows(&self.mult),
            unit: rows(&self.unit),
            comult: rows(&self.comult),
            counit: rows(&self.counit),
            action: (0..self.group.order())
                .map(|g| (self.group.name(g).to_string(), rows(&self.action[g])))
                .collect(),
            braiding: match self.braiding {
                Braiding::Flip => "flip".into(),
                Braiding::Sign(_) => "sign".into(),
            },
            parity: match &self.braiding {
                Braiding::Flip => None,
                Braiding::Sign(par) => Some(par.clone()),
            },
            twist: Some(rows(&self.twist)),
            involution: self.involution.as_ref().map(rows),
        };
        serde_json::to_value(doc).expect("plain data")
    }

    /// Reads the model format; `group` may be a builtin name or a group object
    /// and defaults to the trivial group.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelJson = serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        let group = Arc::new(match &doc.group {
            None => FiniteGroup::trivial(),
            Some(Value::String(name)) => {
                FiniteGroup::builtin(name).ok_or_else(|| Error::InvalidModel(format!("unknown group {name:?}")))?
            }
            Some(v) => FiniteGroup::from_json(&v.to_string())?,
        });
        let p = doc.p;
        let mat = |rows: &Vec<Vec<i64>>| ModMatrix::from_rows(p, rows);
        let mut action = vec![None; group.order()];
        for (name, rows) in &doc.action {
            let g = group
                .element(name)
                .ok_or_else(|| Error::InvalidModel(format!("unknown group element {name:?}")))?;
            action[g] = Some(mat(rows)?);
        }
        let action = action
            .into_iter()
            .map(|a| a.unwrap_or_else(|| ModMatrix::identity(p, doc.dim)))
            .collect();
        let braiding = match doc.braiding.as_str() {
            "flip" => Braiding::Flip,
            "sign" => Braiding::Sign(
                doc.parity
                    .clone()
                    .ok_or_else(|| Error::InvalidModel("sign braiding needs a parity vector".into()))?,
            ),
            other => return Err(Error::InvalidModel(format!("unknown braiding {other:?}"))),
        };
        BimonoidModel::new(
            p,
            doc.dim,
            group,
            mat(&doc.mult)?,
            mat(&doc.unit)?,
            mat(&doc.comult)?,
            mat(&doc.counit)?,
            action,
            braiding,
            doc.twist.as_ref().map(mat).transpose()?,
            doc.involution.as_ref().map(mat).transpose()?,
        )
    }
}

/// `k[H]` with `G` acting through `action[g][h]`, group-like coproduct and
/// involution `h ↦ h⁻¹`.
pub fn group_algebra_model(
    p: u32,
    h: &FiniteGroup,
    g: Arc<FiniteGroup>,
    action: &[Vec<usize>],
) -> Result<BimonoidModel> {
    let d = h.order();
    if action.len() != g.order() {
        return Err(Error::InvalidModel("one automorphism per element of G".into()));
    }
    for (gi, auto) in action.iter().enumerate() {
        let bijective = auto.len() == d && {
            let mut seen = vec![false; d];
            auto.iter().all(|&x| x < d && !std::mem::replace(&mut seen[x], true))
        };
        if !bijective || (0..d).any(|a| (0..d).any(|b| auto[h.mul(a, b)] != h.mul(auto[a], auto[b]))) {
            return Err(Error::InvalidModel(format!("action of {} is not an automorphism", g.name(gi))));
        }
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            let ab = g.mul(a, b);
            if (0..d).any(|x| action[ab][x] != action[a][action[b][x]]) {
                return Err(Error::InvalidModel("action is not a homomorphism".into()));
            }
        }
    }
    let mut mult = ModMatrix::zeros(p, d, d * d);
    let mut comult = ModMatrix::zeros(p, d * d, d);
    let mut unit = ModMatrix::zeros(p, d, 1);
    let mut counit = ModMatrix::zeros(p, 1, d);
    let mut involution = ModMatrix::zeros(p, d, d);
    unit.set(h.identity(), 0, 1);
    for a in 0..d {
        counit.set(0, a, 1);
        comult.set(a * d + a, a, 1);
        involution.set(h.inv(a), a, 1);
        for b in 0..d {
            mult.set(h.mul(a, b), a * d + b, 1);
        }
    }
    let action = action
        .iter()
        .map(|auto| {
            let mut m = ModMatrix::zeros(p, d, d);
            for (x, &y) in auto.iter().enumerate() {
                m.set(y, x, 1);
            }
            m
        })
        .collect();
    BimonoidModel::new(
        p,
        d,
        g,
        mult,
        unit,
        comult,
        counit,
        action,
        Braiding::Flip,
        None,
        Some(involution),
    )
}

/// The trivial action of `g` on `H`.
pub fn trivial_action(h: &FiniteGroup, g: &FiniteGroup) -> Vec<Vec<usize>> {
    vec![(0..h.order()).collect(); g.order()]
}

/// `C₂ = {e, r}` acting on `H` by conjugation with `t` (which must square to the identity).
pub fn conjugation_action(h: &FiniteGroup, t: usize) -> Vec<Vec<usize>> {
    let conj = (0..h.order()).map(|x| h.mul(h.mul(t, x), h.inv(t))).collect();
    vec![(0..h.order()).collect(), conj]
}

/// The exterior algebra `Λ[x, y]` as a bimonoid in `ℤ/2`-graded modules:
/// basis `1, x, y, xy`, `x` and `y` odd and primitive, `C₂` swapping `x` and
/// `y`, twist the parity operator.
pub fn exterior_model(p: u32) -> Result<BimonoidModel> {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let d = 4;
    let neg = i64::from(p) - 1;
    let mut mult = vec![vec![0i64; 16]; 4];
    let products: [(usize, usize, usize, i64); 9] = [
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 0, 1, 1),
        (2, 0, 2, 1),
        (3, 0, 3, 1),
        (1, 2, 3, 1),
        (2, 1, 3, neg),
    ];
    for (a, b, c, v) in products {
        mult[c][a * d + b] = v;
    }
    let mut comult = vec![vec![0i64; 4]; 16];
    let coproducts: [(usize, usize, usize, i64); 9] = [
        (0, 0, 0, 1),
        (1, 1, 0, 1),
        (1, 0, 1, 1),
        (2, 2, 0, 1),
        (2, 0, 2, 1),
        (3, 3, 0, 1),
        (3, 1, 2, 1),
        (3, 2, 1, neg),
        (3, 0, 3, 1),
    ];
    for (src, a, b, v) in coproducts {
        comult[a * d + b][src] = v;
    }
    let unit = vec![vec![1], vec![0], vec![0], vec![0]];
    let counit = vec![vec![1, 0, 0, 0]];
    let swap = vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, neg]];
    let parity_op = vec![vec![1, 0, 0, 0], vec![0, neg, 0, 0], vec![0, 0, neg, 0], vec![0, 0, 0, 1]];
    BimonoidModel::new(
        p,
        d,
        g,
        ModMatrix::from_rows(p, &mult)?,
        ModMatrix::from_rows(p, &unit)?,
        ModMatrix::from_rows(p, &comult)?,
        ModMatrix::from_rows(p, &counit)?,
        vec![ModMatrix::identity(p, d), ModMatrix::from_rows(p, &swap)?],
        Braiding::Sign(vec![0, 1, 1, 0]),
        Some(ModMatrix::from_rows(p, &parity_op)?),
        None,
    )
}

/// Which morphisms a functoriality check samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    /// `𝔻⊗J⊗𝔾`.
    Djg(Family),
    /// Canonical triples of `𝔻⊗(J⊗𝔾)⊗𝔻ᵒᵖ`.
    Spans(Family),
    /// `GF(as)`.
    NcSets,
    /// Spans in `GF(as)`, composed by pullback.
    NcSpans,
    /// `GF`; meaningful for commutative models.
    Gf,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Djg(fam) => write!(f, "djg/{fam}"),
            Category::Spans(fam) => write!(f, "spans/{fam}"),
            Category::NcSets => write!(f, "gfas"),
            Category::NcSpans => write!(f, "gfas-spans"),
            Category::Gf => write!(f, "gf"),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EvalReport {
    pub checked: usize,
    pub failures: Vec<EvalFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalFailure {
    pub what: String,
    /// Number of differing matrix entries.
    pub distance: usize,
}

impl EvalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn compare(&mut self, lhs: Result<ModMatrix>, rhs: Result<ModMatrix>, what: impl FnOnce() -> String) {
        self.checked += 1;
        let distance = match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.distance(&b),
            _ => usize::MAX,
        };
        if distance != 0 {
            self.failures.push(EvalFailure { what: what(), distance });
        }
    }

    pub fn merge(&mut self, other: EvalReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

enum Sample {
    Djg(DJGMorphism),
    Composite(CompositeMorphism),
    NcSet(NCSetMap),
    NcSpan(NcSpan),
    Gf(GFMap),
}

impl Sample {
    fn compose(&self, first: &Sample) -> Result<Sample> {
        Ok(match (self, first) {
            (Sample::Djg(g), Sample::Djg(f)) => Sample::Djg(g.compose(f)?),
            (Sample::Composite(g), Sample::Composite(f)) => Sample::Composite(g.compose(f)?),
            (Sample::NcSet(g), Sample::NcSet(f)) => Sample::NcSet(g.compose(f)?),
            (Sample::NcSpan(g), Sample::NcSpan(f)) => Sample::NcSpan(crate::ncsets::pullback_span_compose(g, f)?),
            (Sample::Gf(g), Sample::Gf(f)) => Sample::Gf(g.compose(f)?),
            _ => unreachable!("samples share a category"),
        })
    }

    fn tensor(&self, other: &Sample) -> Result<Sample> {
        Ok(match (self, other) {
            (Sample::Djg(a), Sample::Djg(b)) => Sample::Djg(a.tensor(b)?),
            (Sample::Composite(a), Sample::Composite(b)) => Sample::Composite(a.tensor(b)?),
            (Sample::NcSet(a), Sample::NcSet(b)) => Sample::NcSet(a.tensor(b)),
            (Sample::NcSpan(a), Sample::NcSpan(b)) => {
                Sample::NcSpan(NcSpan::new(a.in_leg.tensor(&b.in_leg), a.out_leg.tensor(&b.out_leg))?)
            }
            (Sample::Gf(a), Sample::Gf(b)) => Sample::Gf(a.tensor(b)),
            _ => unreachable!("samples share a category"),
        })
    }

    fn eval(&self, model: &BimonoidModel) -> Result<ModMatrix> {
        match self {
            Sample::Djg(f) => model.eval_djg(f),
            Sample::Composite(c) => model.eval_composite(c),
            Sample::NcSet(f) => model.eval_ncset(f),
            Sample::NcSpan(s) => model.eval_ncspan(s),
            Sample::Gf(f) => model.eval_gf(f),
        }
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sample::Djg(x) => write!(f, "{x}"),
            Sample::Composite(x) => write!(f, "{x}"),
            Sample::NcSet(x) => write!(f, "{x}"),
            Sample::NcSpan(x) => write!(f, "span({} ; {})", x.in_leg, x.out_leg),
            Sample::Gf(x) => write!(f, "{x}"),
        }
    }
}

fn random_sample<R: Rng>(
    category: Category,
    group: &Arc<FiniteGroup>,
    n: usize,
    m: usize,
    max_middle: usize,
    rng: &mut R,
) -> Option<Sample> {
    match category {
        Category::Djg(fam) => DJGMorphism::random(fam, group, n, m, rng).map(Sample::Djg),
        Category::Spans(fam) => Some(Sample::Composite(CompositeMorphism::random(fam, group, n, m, max_middle, rng))),
        Category::NcSets => NCSetMap::random(group, n, m, rng).map(Sample::NcSet),
        Category::NcSpans => Some(Sample::NcSpan(random_span(group, n, m, max_middle, rng))),
        Category::Gf => NCSetMap::random(group, n, m, rng).map(|f| Sample::Gf(f.forget())),
    }
}

/// Fixed pairs that exercise associativity and coassociativity directly.
fn structural_pairs(category: Category, group: &Arc<FiniteGroup>) -> Vec<(Sample, Sample)> {
    let Category::Spans(fam) = category else {
        return Vec::new();
    };
    let mono = |m: OrderedMap| CompositeMorphism::from_mono(fam, group, m);
    let mu = mono(OrderedMap::mult());
    let id1 = CompositeMorphism::identity(fam, group, 1);
    let delta = mu.op();
    let pairs = [
        (delta.clone(), id1.tensor(&delta).expect("same family")),
        (delta.clone(), delta.tensor(&id1).expect("same family")),
        (mu.tensor(&id1).expect("same family"), mu.clone()),
        (id1.tensor(&mu).expect("same family"), mu.clone()),
        (mu.clone(), delta.clone()),
        (delta, mu),
    ];
    pairs
        .into_iter()
        .map(|(f, g)| (Sample::Composite(f), Sample::Composite(g)))
        .collect()
}

/// Largest span middle `p ≤ max_arity` whose composites and tensors stay
/// within `d^p ≤ 4096` dimensions; pullback middles grow to `p²`.
pub fn middle_bound(dim: usize, max_arity: usize) -> usize {
    let fits = |k: usize| (dim as f64).powi(k as i32) <= 4096.0;
    (0..=max_arity).rev().find(|&p| fits(p * p) && fits(2 * p)).unwrap_or(0)
}

/// Checks `eval(g∘f) = eval(g)·eval(f)` and `eval(f⊗g) = eval(f)⊗eval(g)` on
/// `samples` random pairs with boundaries at most `max_arity` and span middles
/// at most [`middle_bound`]. Tensor checks are skipped when the product would
/// exceed 4096 dimensions.
pub fn check_functoriality(
    model: &BimonoidModel,
    category: Category,
    samples: usize,
    max_arity: usize,
    seed: u64,
) -> EvalReport {
    let group = Arc::clone(model.group());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EvalReport::default();
    for (f, g) in structural_pairs(category, &group) {
        let lhs = g.compose(&f).and_then(|gf| gf.eval(model));
        let rhs = g.eval(model).and_then(|gm| gm.mul(&f.eval(model)?));
        report.compare(lhs, rhs, || format!("{category}: ({g}) after ({f})"));
    }
    let middle = middle_bound(model.dim(), max_arity);
    let mut done = 0;
    while done < samples {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=max_arity)).collect();
        let (Some(f), Some(g)) = (
            random_sample(category, &group, dims[0], dims[1], middle, &mut rng),
            random_sample(category, &group, dims[1], dims[2], middle, &mut rng),
        ) else {
            continue;
        };
        done += 1;
        let lhs = g.compose(&f).and_then(|gf| gf.eval(model));
        let rhs = g.eval(model).and_then(|gm| gm.mul(&f.eval(model)?));
        report.compare(lhs, rhs, || format!("{category}: ({g}) after ({f})"));

        if let (Ok(a), Ok(b)) = (f.eval(model), g.eval(model)) {
            if a.rows() * b.rows() <= 4096 && a.cols() * b.cols() <= 4096 {
                let lhs = f.tensor(&g).and_then(|t| t.eval(model));
                report.compare(lhs, Ok(a.kron(&b)), || format!("{category}: ({f}) + ({g})"));
            }
        }
    }
    report
}

/// Evaluates both sides of the cospan-to-span rules: the fixed instances
/// `(m,m)`, `(u,u)`, `(m,u)`, `(u,m)`, inverse elements, and `samples` random
/// cospans of `family` with arities at most 2.
pub fn check_rewrite_soundness(model: &BimonoidModel, family: Family, samples: usize, seed: u64) -> EvalReport {
    let group = Arc::clone(model.group());
    let mut report = EvalReport::default();
    let mono = |m: OrderedMap| DJGMorphism::from_mono(family, &group, m);
    let mut cospans = vec![
        ("(m,m)", mono(OrderedMap::mult()), mono(OrderedMap::mult())),
        ("(u,u)", mono(OrderedMap::unit()), mono(OrderedMap::unit())),
        ("(m,u)", mono(OrderedMap::mult()), mono(OrderedMap::unit())),
        ("(u,m)", mono(OrderedMap::unit()), mono(OrderedMap::mult())),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let m = rng.gen_range(0..=2);
        let p = rng.gen_range(0..=2);
        let q = rng.gen_range(0..=2);
        let (Some(x), Some(y)) = (
            DJGMorphism::random(family, &group, p, m, &mut rng),
            DJGMorphism::random(family, &group, q, m, &mut rng),
        ) else {
            continue;
        };
        done += 1;
        cospans.push(("sampled", x, y));
    }
    for (name, x, y) in &cospans {
        let lhs = model.eval_djg_op(y).and_then(|yo| yo.mul(&model.eval_djg(x)?));
        let rhs = cospan_to_span(x, y).and_then(|s| model.eval_djg(&s.out_leg)?.mul(&model.eval_djg_op(&s.in_leg)?));
        report.compare(lhs, rhs, || format!("rule {name}: cospan ({x}, {y})"));
    }
    for _ in 0..samples.min(50) {
        let n = rng.gen_range(0..=3);
        let e = Element::random(family, &group, n, 6, &mut rng);
        let lhs = model
            .eval_element(&e.inverse())
            .and_then(|a| a.mul(&model.eval_element(&e)?));
        report.compare(lhs, Ok(model.id(n)), || format!("inverse of {e}"));
    }
    report
}

/// The identities relating the involution to the product and to itself.
pub fn check_involution(model: &BimonoidModel) -> EvalReport {
    let mut report = EvalReport::default();
    let Some(iota) = model.involution() else {
        report.failures.push(EvalFailure {
            what: "model has no involution".into(),
            distance: usize::MAX,
        });
        return report;
    };
    let i1 = model.id(1);
    report.compare(iota.mul(iota), Ok(i1), || "involution squares to identity".into());
    let lhs = iota.mul(model.mult());
    let rhs = model
        .mult()
        .mul(&iota.kron(iota))
        .and_then(|m| m.mul(&model.symmetry()));
    report.compare(lhs, rhs, || "involution reverses the product".into());
    report
}

/// A deliberately non-coassociative coproduct for mutation tests: the first
/// basis vector keeps its coproduct and every other basis vector `b` gets an
/// extra term `e₀ ⊗ b`.
pub fn corrupt_comult(model: &BimonoidModel) -> ModMatrix {
    let d = model.dim();
    let mut delta = model.comult().clone();
    for b in 1..d {
        let v = delta.get(b, b);
        delta.set(b, b, v + 1);
    }
    delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braids::{BraidWord, LabelledBraid};
    use crate::groups::GroupTuple;

    fn kc2() -> BimonoidModel {
        let h = FiniteGroup::cyclic(2);
        let g = Arc::new(FiniteGroup::cyclic(2));
        group_algebra_model(5, &h, Arc::clone(&g), &trivial_action(&h, &g)).unwrap()
    }

    fn ks3() -> BimonoidModel {
        let h = FiniteGroup::symmetric3();
        group_algebra_model(5, &h, Arc::new(FiniteGroup::cyclic(2)), &conjugation_action(&h, 1)).unwrap()
    }

    #[test]
    fn matrix_basics() {
        let a = ModMatrix::from_rows(5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let k = a.kron(&ModMatrix::identity(5, 2));
        assert_eq!(k.get(2, 0), 3);
        assert_eq!(k.get(3, 1), 3);
        assert!(ModMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap().inverse().is_none());
        assert_eq!(ModMatrix::from_rows(5, &[vec![-1]]).unwrap().get(0, 0), 4);
    }

    #[test]
    fn models_verify() {
        assert!(kc2().verify().is_empty(), "{:?}", kc2().verify());
        assert!(ks3().verify().is_empty(), "{:?}", ks3().verify());
        let ext = exterior_model(5).unwrap();
        assert!(ext.verify().is_empty(), "{:?}", ext.verify());
        let h = FiniteGroup::trivial();
        let g = Arc::new(FiniteGroup::trivial());
        let one = group_algebra_model(5, &h, Arc::clone(&g), &trivial_action(&h, &g)).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(one.verify().is_empty());
    }

    #[test]
    fn rejects_bad_action() {
        let h = FiniteGroup::symmetric3();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let bad = vec![(0..6).collect(), vec![0, 2, 1, 3, 4, 5]];
        assert!(group_algebra_model(5, &h, g, &bad).is_err());
    }

    #[test]
    fn mutated_comult_breaks_coassociativity() {
        let model = kc2();
        let broken = model.with_comult(corrupt_comult(&model)).unwrap();
        assert!(broken.verify().iter().any(|f| f == "coassociativity"));
    }

    #[test]
    fn identity_and_flip() {
        let model = kc2();
        let g = Arc::clone(model.group());
        assert!(model
            .eval_composite(&CompositeMorphism::identity(Family::Symmetric, &g, 2))
            .unwrap()
            .is_identity());
        let flip = model.eval_element(&Element::crossing(Family::Symmetric, &g, 2, 0).unwrap()).unwrap();
        assert_eq!(flip, model.symmetry());
        assert_eq!(flip.get(1, 2), 1);
        let ext = exterior_model(5).unwrap();
        let c = ext.symmetry();
        // x ⊗ y ↦ -(y ⊗ x)
        assert_eq!(c.get(2 * 4 + 1, 4 + 2), 4);
    }

    #[test]
    fn bubble_is_product_of_parts() {
        let model = kc2();
        let g = Arc::clone(model.group());
        let mu = CompositeMorphism::from_mono(Family::Symmetric, &g, OrderedMap::mult());
        let bubble = mu.compose(&mu.op()).unwrap();
        let expected = model.mult().mul(model.comult()).unwrap();
        assert_eq!(model.eval_composite(&bubble).unwrap(), expected);
    }

    #[test]
    fn functorial_on_all_categories() {
        let model = ks3();
        for cat in [
            Category::Djg(Family::Symmetric),
            Category::Djg(Family::Hyperoctahedral),
            Category::Spans(Family::Symmetric),
            Category::Spans(Family::Hyperoctahedral),
            Category::NcSets,
            Category::NcSpans,
        ] {
            let r = check_functoriality(&model, cat, 30, 2, 1);
            assert!(r.passed(), "{cat}: {:?}", r.failures.first());
        }
        let r = check_functoriality(&kc2(), Category::Gf, 30, 2, 1);
        assert!(r.passed());
    }

    #[test]
    fn super_model_handles_braids_and_ribbons() {
        let model = exterior_model(5).unwrap();
        for fam in Family::ALL {
            if fam == Family::Hyperoctahedral {
                continue;
            }
            for cat in [Category::Djg(fam), Category::Spans(fam)] {
                let r = check_functoriality(&model, cat, 30, 2, 2);
                assert!(r.passed(), "{cat}: {:?}", r.failures.first());
            }
        }
    }

    #[test]
    fn twists_are_observable() {
        let model = exterior_model(5).unwrap();
        let g = Arc::clone(model.group());
        let tw = Element::twist(&g, 1, 0).unwrap();
        assert!(!model.eval_element(&tw).unwrap().is_identity());
        let b = LabelledBraid::new(GroupTuple::identity(&g, 2), BraidWord::new(2, vec![1, 1]).unwrap(), Some(vec![0, 0])).unwrap();
        let plain = LabelledBraid::new(GroupTuple::identity(&g, 2), BraidWord::new(2, vec![1, 1]).unwrap(), None).unwrap();
        assert_eq!(
            model.eval_element(&Element::Braid(b)).unwrap(),
            model.eval_element(&Element::Braid(plain)).unwrap()
        );
    }

    #[test]
    fn rewrite_rules_are_sound() {
        for fam in [Family::Symmetric, Family::Hyperoctahedral] {
            let r = check_rewrite_soundness(&ks3(), fam, 30, 3);
            assert!(r.passed(), "{fam}: {:?}", r.failures.first());
        }
        for fam in [Family::Braid, Family::Ribbon] {
            let r = check_rewrite_soundness(&exterior_model(5).unwrap(), fam, 30, 3);
            assert!(r.passed(), "{fam}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn involution_identities() {
        assert!(check_involution(&ks3()).passed());
        assert!(!check_involution(&exterior_model(5).unwrap()).passed());
    }

    #[test]
    fn json_round_trip() {
        for model in [ks3(), exterior_model(7).unwrap()] {
            let text = model.to_json().to_string();
            let back = BimonoidModel::from_json(&text).unwrap();
            assert_eq!(back.to_json(), model.to_json());
        }
    }
}
