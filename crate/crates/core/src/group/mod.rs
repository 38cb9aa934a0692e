//! Finite groups stored as explicit multiplication tables.
//!
//! Element `0` is always the identity. Every constructor materializes the full
//! table, so all later machinery (subgroups, quotients, products) works on
//! plain index arithmetic.

mod catalog;
mod goursat;
mod subgroup;

pub use catalog::{build_group, build_group_with_cap, direct_product, parse_cycles, DEFAULT_BUILD_CAP};
pub use goursat::{goursat_compose, goursat_decompose, GoursatDatum};
pub use subgroup::{all_subgroups, subgroup_classes, Subgroup};

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default cap on group orders for exponential-cost enumerations.
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

/// Cap used by subgroup enumeration, character tables and cohomology.
/// `DOUBLET_SIZE_CAP` overrides the default.
pub fn enumeration_cap() -> usize {
    std::env::var("DOUBLET_SIZE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

pub fn check_cap(what: &str, size: usize) -> Result<()> {
    let cap = enumeration_cap();
    if size > cap {
        return Err(Error::CapExceeded { what: what.to_string(), size, cap });
    }
    Ok(())
}

/// A conjugacy class: its representative (minimal element index) and members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All commuting pairs `(f, g)` together with a dense index lookup.
#[derive(Debug, Clone)]
pub struct CommutingPairs {
    order: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
}

impl CommutingPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn get(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    /// Position of `(f, g)` in [`Self::pairs`], `None` when `f` and `g` do not commute.
    pub fn index_of(&self, f: usize, g: usize) -> Option<usize> {
        match self.index[f * self.order + g] {
            u32::MAX => None,
            k => Some(k as usize),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ProductInfo {
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
}

/// A finite group given by its multiplication table.
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
    product: Option<ProductInfo>,
    classes: OnceLock<(Vec<ConjugacyClass>, Vec<usize>)>,
    pairs: OnceLock<CommutingPairs>,
    exponent: OnceLock<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a multiplication table, validating the group axioms.
    ///
    /// The identity is moved to index 0; the relative order of the other
    /// elements is kept.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let bad = |msg: &str| Error::InvalidTable(msg.to_string());
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(bad("table is not square or has out-of-range entries"));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity element"))?;
        // Move the identity to the front.
        let mut order_map: Vec<usize> = Vec::with_capacity(n);
        order_map.push(id);
        order_map.extend((0..n).filter(|&x| x != id));
        let mut pos = vec![0usize; n];
        for (new, &old) in order_map.iter().enumerate() {
            pos[old] = new;
        }
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = pos[table[order_map[a]][order_map[b]]] as u32;
            }
        }
        let labels = labels.map(|l| order_map.iter().map(|&o| l[o].clone()).collect::<Vec<_>>());
        if let Some(l) = &labels {
            let mut seen = std::collections::HashSet::new();
            if l.len() != n || !l.iter().all(|s| seen.insert(s.clone())) {
                return Err(bad("labels must be distinct, one per element"));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mult[a * n + b] == 0 {
                    if inv[a] != u32::MAX {
                        return Err(bad("element with two inverses"));
                    }
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX || mult[inv[a] as usize * n + a] != 0 {
                return Err(bad("element without a two-sided inverse"));
            }
        }
        let g = Self::from_parts(name.into(), n, mult, inv, labels, None);
        if n <= 256 && !g.is_associative() {
            return Err(bad("multiplication is not associative"));
        }
        Ok(g)
    }

    pub(crate) fn from_parts(
        name: String,
        order: usize,
        mult: Vec<u32>,
        inv: Vec<u32>,
        labels: Option<Vec<String>>,
        product: Option<ProductInfo>,
    ) -> Self {
        FiniteGroup {
            name,
            order,
            mult,
            inv,
            labels,
            product,
            classes: OnceLock::new(),
            pairs: OnceLock::new(),
            exponent: OnceLock::new(),
        }
    }

    /// Closure of `gens` under `mul`, in breadth-first generation order with
    /// the identity first.
    pub(crate) fn from_generators<T, M, L>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: M,
        label: L,
        cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let name = name.into();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for s in gens {
                let x = mul(&elems[i], s);
                if !index.contains_key(&x) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded { what: format!("closure of `{name}`"), size: cap + 1, cap });
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&mul(&elems[a], &elems[b])] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mult[a * n + b] == 0).expect("finite closure has inverses") as u32;
        }
        let labels = elems.iter().map(label).collect();
        Ok(Self::from_parts(name, n, mult, inv, Some(labels), None))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x g x⁻¹`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        *self.exponent.get_or_init(|| {
            (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
        })
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| {
            let ab = self.mul(a, b);
            (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
        }))
    }

    /// Conjugacy classes ordered by their minimal element; the identity class comes first.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().0
    }

    /// Index into [`Self::conjugacy_classes`] of the class containing `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_data().1[g]
    }

    fn class_data(&self) -> &(Vec<ConjugacyClass>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for g in 0..n {
                if class_of[g] != usize::MAX {
                    continue;
                }
                let mut members: Vec<usize> = (0..n).map(|x| self.conj(x, g)).collect();
                members.sort_unstable();
                members.dedup();
                for &m in &members {
                    class_of[m] = classes.len();
                }
                classes.push(ConjugacyClass { rep: g, members });
            }
            (classes, class_of)
        })
    }

    /// `C_G(g) = { x : xg = gx }`.
    pub fn centralizer(self: &Arc<Self>, g: usize) -> Subgroup {
        let members = (0..self.order).filter(|&x| self.commute(x, g)).collect();
        Subgroup::from_sorted_members(self.clone(), members)
    }

    /// All commuting pairs, ordered lexicographically by `(f, g)`.
    pub fn commuting_pairs(&self) -> &CommutingPairs {
        self.pairs.get_or_init(|| {
            let n = self.order;
            let mut pairs = Vec::new();
            let mut index = vec![u32::MAX; n * n];
            for f in 0..n {
                for g in 0..n {
                    if self.commute(f, g) {
                        index[f * n + g] = pairs.len() as u32;
                        pairs.push((f, g));
                    }
                }
            }
            CommutingPairs { order: n, pairs, index }
        })
    }

    /// Whether this group was built as a direct product.
    pub fn is_product(&self) -> bool {
        self.product.is_some()
    }

    /// The two factors of a direct product.
    pub fn factors(&self) -> Option<(&Arc<FiniteGroup>, &Arc<FiniteGroup>)> {
        self.product.as_ref().map(|p| (&p.left, &p.right))
    }

    /// Element `(g, q)` of a direct product.
    pub fn pair(&self, g: usize, q: usize) -> usize {
        let (_, right) = self.factors().expect("not a direct product");
        g * right.order() + q
    }

    /// Splits a product element into its two coordinates.
    pub fn split(&self, u: usize) -> (usize, usize) {
        let (_, right) = self.factors().expect("not a direct product");
        (u / right.order(), u % right.order())
    }

    /// Transports `self` onto a new name, keeping the table.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self::from_parts(
            name.into(),
            self.order,
            self.mult.clone(),
            self.inv.clone(),
            self.labels.clone(),
            self.product.clone(),
        )
    }
}
