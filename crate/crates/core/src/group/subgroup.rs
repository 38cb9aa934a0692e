//! Subgroups, normalizers and enumeration of subgroups up to conjugacy.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{check_cap, FiniteGroup};
use crate::error::Result;
use crate::exec;

/// A subgroup of a parent group, stored as its sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<u64>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {}: {:?})", self.order(), self.parent.name(), self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && Arc::ptr_eq(&self.parent, &other.parent)
            || (self.members == other.members && *self.parent == *other.parent)
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Order first, then lexicographic on member lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members.cmp(&other.members))
    }
}

fn mask_of(n: usize, members: &[usize]) -> Vec<u64> {
    let mut mask = vec![0u64; n.div_ceil(64)];
    for &m in members {
        mask[m / 64] |= 1 << (m % 64);
    }
    mask
}

impl Subgroup {
    /// Trusted constructor: `members` must be sorted and closed.
    pub(crate) fn from_sorted_members(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Self {
        let mask = mask_of(parent.order(), &members);
        Subgroup { parent, members, mask }
    }

    /// Checked constructor from an arbitrary element list.
    pub fn from_members(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Option<Self> {
        members.sort_unstable();
        members.dedup();
        let s = Self::from_sorted_members(parent, members);
        s.is_closed().then_some(s)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted_members(parent.clone(), vec![0])
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted_members(parent.clone(), (0..parent.order()).collect())
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let n = parent.order();
        let mut seen = vec![false; n];
        let mut elems = vec![0usize];
        seen[0] = true;
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = parent.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Self::from_sorted_members(parent.clone(), elems)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask[g / 64] >> (g % 64) & 1 == 1
    }

    /// Position of `g` among the sorted members.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    fn is_closed(&self) -> bool {
        !self.members.is_empty()
            && self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(self.parent.inv(a)) && self.members.iter().all(|&b| self.contains(self.parent.mul(a, b)))
            })
    }

    /// `x H x⁻¹`.
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(x, h)).collect();
        members.sort_unstable();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.members.iter().all(|&x| self.members.iter().all(|&h| self.contains(self.parent.conj(x, h))))
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_in(&Subgroup::whole(&self.parent))
    }

    /// `N_G(H)`.
    pub fn normalizer(&self) -> Subgroup {
        let members = (0..self.parent.order())
            .filter(|&x| self.members.iter().all(|&h| self.contains(self.parent.conj(x, h))))
            .collect();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    pub fn is_abelian(&self) -> bool {
        self.members.iter().all(|&a| self.members.iter().all(|&b| self.parent.commute(a, b)))
    }

    /// Centralizer of `g` inside this subgroup.
    pub fn centralizer_of(&self, g: usize) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| self.parent.commute(x, g)).collect();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    /// The subgroup as a standalone group (elements in the order of
    /// [`Self::members`], so the identity stays first) with its embedding.
    pub fn as_group(&self) -> FiniteGroup {
        let k = self.order();
        let mut mult = vec![0u32; k * k];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                mult[i * k + j] = self.position(self.parent.mul(a, b)).expect("closed") as u32;
            }
        }
        let inv = self.members.iter().map(|&a| self.position(self.parent.inv(a)).expect("closed") as u32).collect();
        let labels = self.members.iter().map(|&a| self.parent.label(a)).collect();
        let name = format!("{}<{}>", self.parent.name(), self.order());
        FiniteGroup::from_parts(name, k, mult, inv, Some(labels), None)
    }

    /// Image under the first projection of a direct product.
    pub fn project_left(&self) -> Subgroup {
        let (left, _) = self.parent.factors().expect("not a product");
        let mut m: Vec<usize> = self.members.iter().map(|&u| self.parent.split(u).0).collect();
        m.sort_unstable();
        m.dedup();
        Self::from_sorted_members(left.clone(), m)
    }

    pub fn project_right(&self) -> Subgroup {
        let (_, right) = self.parent.factors().expect("not a product");
        let mut m: Vec<usize> = self.members.iter().map(|&u| self.parent.split(u).1).collect();
        m.sort_unstable();
        m.dedup();
        Self::from_sorted_members(right.clone(), m)
    }

    /// `U ∩ (G × e)` viewed as a subgroup of `G`.
    pub fn left_kernel(&self) -> Subgroup {
        let (left, _) = self.parent.factors().expect("not a product");
        let m = self.members.iter().map(|&u| self.parent.split(u)).filter(|p| p.1 == 0).map(|p| p.0).collect();
        Self::from_sorted_members(left.clone(), m)
    }

    /// `U ∩ (e × Q)` viewed as a subgroup of `Q`.
    pub fn right_kernel(&self) -> Subgroup {
        let (_, right) = self.parent.factors().expect("not a product");
        let mut m: Vec<usize> =
            self.members.iter().map(|&u| self.parent.split(u)).filter(|p| p.0 == 0).map(|p| p.1).collect();
        m.sort_unstable();
        Self::from_sorted_members(right.clone(), m)
    }

    /// `A × B` inside the product group `parent`.
    pub fn product_of(parent: &Arc<FiniteGroup>, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut m: Vec<usize> = a.members.iter().flat_map(|&g| b.members.iter().map(move |&q| (g, q)))
            .map(|(g, q)| parent.pair(g, q))
            .collect();
        m.sort_unstable();
        Self::from_sorted_members(parent.clone(), m)
    }

    /// The lexicographically least subgroup conjugate to this one, and an
    /// element `x` with `x H x⁻¹` equal to it.
    pub fn canonical_conjugate(&self) -> (Subgroup, usize) {
        let mut best: Option<(Vec<usize>, usize)> = None;
        for x in 0..self.parent.order() {
            let mut m: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(x, h)).collect();
            m.sort_unstable();
            if best.as_ref().is_none_or(|(b, _)| m < *b) {
                best = Some((m, x));
            }
        }
        let (m, x) = best.expect("nonempty group");
        (Self::from_sorted_members(self.parent.clone(), m), x)
    }

    /// Elements `x` of `ambient` with `x self x⁻¹ = target`.
    pub fn conjugators_to(&self, target: &Subgroup) -> Vec<usize> {
        if self.order() != target.order() {
            return Vec::new();
        }
        (0..self.parent.order())
            .filter(|&x| self.members.iter().all(|&h| target.contains(self.parent.conj(x, h))))
            .collect()
    }
}

/// Every subgroup of `g`, sorted by order then lexicographically.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    check_cap("subgroup enumeration", g.order())?;
    let n = g.order();
    // Cyclic subgroups with a generator each.
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in 0..n {
        let c = Subgroup::generated_by(g, &[x]);
        if seen_cyclic.insert(c.members.clone()) {
            cyclic.push((x, c));
        }
    }
    let trivial = Subgroup::trivial(g);
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    found.insert(trivial.members.clone());
    let mut all: Vec<(Vec<usize>, Subgroup)> = vec![(Vec::new(), trivial)];
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let layer: Vec<(Vec<usize>, Subgroup)> = frontier.iter().map(|&i| all[i].clone()).collect();
        let joins: Vec<Vec<(Vec<usize>, Subgroup)>> = exec::map(&layer, |(gens, k)| {
            cyclic
                .iter()
                .filter(|(_, c)| !c.is_subgroup_of(k))
                .map(|&(x, _)| {
                    let mut gs = gens.clone();
                    gs.push(x);
                    let j = Subgroup::generated_by(g, &gs);
                    (gs, j)
                })
                .collect()
        });
        frontier.clear();
        for (gs, j) in joins.into_iter().flatten() {
            if found.insert(j.members.clone()) {
                frontier.push(all.len());
                all.push((gs, j));
            }
        }
    }
    let mut subs: Vec<Subgroup> = all.into_iter().map(|(_, s)| s).collect();
    subs.sort();
    Ok(subs)
}

/// One representative per conjugacy class of subgroups: the lexicographically
/// least member of each class, ordered by order then lexicographically.
pub fn subgroup_classes(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let subs = all_subgroups(g)?;
    let canon = exec::map(&subs, |s| s.canonical_conjugate().0);
    let mut reps: BTreeMap<Subgroup, ()> = BTreeMap::new();
    for c in canon {
        reps.insert(c, ());
    }
    Ok(reps.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(name).unwrap())
    }

    #[test]
    fn s3_subgroup_classes() {
        let g = grp("S3");
        let classes = subgroup_classes(&g).unwrap();
        let orders: Vec<usize> = classes.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(all_subgroups(&g).unwrap().len(), 6);
    }

    #[test]
    fn small_counts() {
        assert_eq!(subgroup_classes(&grp("C2")).unwrap().len(), 2);
        assert_eq!(subgroup_classes(&grp("S3xS3")).unwrap().len(), 22);
        // D4 has 10 subgroups in 8 classes, Q8 has 6 subgroups, S4 has 11 classes.
        assert_eq!(all_subgroups(&grp("D4")).unwrap().len(), 10);
        assert_eq!(subgroup_classes(&grp("D4")).unwrap().len(), 8);
        assert_eq!(all_subgroups(&grp("Q8")).unwrap().len(), 6);
        assert_eq!(subgroup_classes(&grp("S4")).unwrap().len(), 11);
    }

    #[test]
    fn representatives_are_lex_least() {
        let g = grp("S4");
        for rep in subgroup_classes(&g).unwrap() {
            for x in 0..g.order() {
                assert!(rep.conjugate(x).members() >= rep.members());
            }
            assert_eq!(g.order() % rep.order(), 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = grp("S4xC3");
        assert!(all_subgroups(&g).is_err());
    }

    #[test]
    fn normalizers_and_normality() {
        let g = grp("S3");
        let a3 = Subgroup::generated_by(&g, &[1]);
        assert!(a3.is_normal());
        assert_eq!(a3.normalizer().order(), 6);
        let c2 = Subgroup::generated_by(&g, &[2]);
        assert!(!c2.is_normal());
        assert_eq!(c2.normalizer().order(), 2);
    }

    #[test]
    fn projections_and_kernels() {
        let g = grp("S3xS3");
        let diag: Vec<usize> = (0..6).map(|x| g.pair(x, x)).collect();
        let d = Subgroup::from_members(g.clone(), diag).unwrap();
        assert_eq!(d.project_left().order(), 6);
        assert_eq!(d.left_kernel().order(), 1);
        assert_eq!(d.right_kernel().order(), 1);
    }
}
