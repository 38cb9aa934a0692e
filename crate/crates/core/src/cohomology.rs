//! Normalized 2-cocycles with values in roots of unity and the Schur
//! multiplier `H²(H, k*)`.
//!
//! A cocycle is stored additively: the entry `t` at `(f, g)` stands for
//! `ζ_N^t`. Cohomology classes are taken with respect to `k*`-valued cochains,
//! so two `μ_N`-valued cocycles are identified when they differ by the
//! coboundary of any function `H → k*`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{check_cap, Subgroup};
use crate::zmod::{smith, ModMatrix, Track};

/// A normalized 2-cocycle on a subgroup, valued in `μ_N` (stored as exponents).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    domain: Subgroup,
    modulus: u64,
    /// Indexed by member positions: `table[pos(f) * |H| + pos(g)]`.
    table: Vec<i64>,
}

impl Cocycle2 {
    /// Validating constructor from a function on pairs of members.
    pub fn from_fn(domain: &Subgroup, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Result<Self> {
        let c = Self::from_fn_unchecked(domain, modulus, f);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_fn_unchecked(domain: &Subgroup, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Self {
        let m = domain.members();
        let mut table = Vec::with_capacity(m.len() * m.len());
        for &a in m {
            for &b in m {
                table.push(f(a, b).rem_euclid(modulus as i64));
            }
        }
        Cocycle2 { domain: domain.clone(), modulus, table }
    }

    pub fn trivial(domain: &Subgroup, modulus: u64) -> Self {
        let k = domain.order();
        Cocycle2 { domain: domain.clone(), modulus, table: vec![0; k * k] }
    }

    /// The coboundary `dc(f, g) = c(f) + c(g) − c(fg)` of a `μ_N`-valued cochain
    /// given per member position.
    pub fn coboundary(domain: &Subgroup, modulus: u64, c: &[i64]) -> Self {
        let g = domain.parent().clone();
        Self::from_fn_unchecked(domain, modulus, |a, b| {
            let pos = |x| domain.position(x).expect("closed");
            c[pos(a)] + c[pos(b)] - c[pos(g.mul(a, b))]
        })
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `γ(f, g)` as an exponent of `ζ_N`; `f`, `g` are parent-group elements.
    #[inline]
    pub fn value(&self, f: usize, g: usize) -> i64 {
        let k = self.domain.order();
        let pf = self.domain.position(f).expect("argument outside the cocycle's domain");
        let pg = self.domain.position(g).expect("argument outside the cocycle's domain");
        self.table[pf * k + pg]
    }

    #[inline]
    pub(crate) fn value_at(&self, pf: usize, pg: usize) -> i64 {
        self.table[pf * self.domain.order() + pg]
    }

    /// `γ(f|g) = γ(f,g) − γ(g,f)` for commuting `f, g`.
    pub fn pairing(&self, f: usize, g: usize) -> i64 {
        (self.value(f, g) - self.value(g, f)).rem_euclid(self.modulus as i64)
    }

    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().all(|&x| x == 0)
    }

    pub fn is_normalized(&self) -> bool {
        let k = self.domain.order();
        (0..k).all(|i| self.table[i] == 0 && self.table[i * k] == 0)
    }

    pub fn is_cocycle(&self) -> bool {
        let g = self.domain.parent();
        let m = self.domain.members();
        let n = self.modulus as i64;
        let pos = |x| self.domain.position(x).expect("closed");
        m.iter().enumerate().all(|(pf, &f)| {
            m.iter().enumerate().all(|(pg, &gg)| {
                let fg = pos(g.mul(f, gg));
                m.iter().enumerate().all(|(ph, &h)| {
                    let gh = pos(g.mul(gg, h));
                    (self.value_at(pf, pg) + self.value_at(fg, ph) - self.value_at(pg, ph) - self.value_at(pf, gh))
                        .rem_euclid(n)
                        == 0
                })
            })
        })
    }

    fn validate(&self) -> Result<()> {
        if !self.is_normalized() {
            return Err(Error::InvalidCocycle("not normalized".into()));
        }
        if !self.is_cocycle() {
            return Err(Error::InvalidCocycle("cocycle identity fails".into()));
        }
        Ok(())
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, s: &Subgroup) -> Self {
        assert!(s.is_subgroup_of(&self.domain), "restriction target must lie in the domain");
        Self::from_fn_unchecked(s, self.modulus, |a, b| self.value(a, b))
    }

    /// The same cocycle with exponents in `Z/m`, `N | m`.
    pub fn rescaled(&self, m: u64) -> Self {
        assert_eq!(m % self.modulus, 0, "target modulus must be a multiple");
        let f = (m / self.modulus) as i64;
        Cocycle2 { domain: self.domain.clone(), modulus: m, table: self.table.iter().map(|x| x * f).collect() }
    }

    /// `γ^x(a, b) = γ(x⁻¹ a x, x⁻¹ b x)` on `x H x⁻¹`.
    pub fn conjugate(&self, x: usize) -> Self {
        let g = self.domain.parent();
        let target = self.domain.conjugate(x);
        let xi = g.inv(x);
        Self::from_fn_unchecked(&target, self.modulus, |a, b| self.value(g.conj(xi, a), g.conj(xi, b)))
    }

    pub fn add(&self, other: &Cocycle2) -> Self {
        assert_eq!(self.domain, other.domain, "domain mismatch");
        let m = num_integer::lcm(self.modulus, other.modulus);
        let (a, b) = (self.rescaled(m), other.rescaled(m));
        let table = a.table.iter().zip(&b.table).map(|(x, y)| (x + y).rem_euclid(m as i64)).collect();
        Cocycle2 { domain: self.domain.clone(), modulus: m, table }
    }

    pub fn neg(&self) -> Self {
        let n = self.modulus as i64;
        Cocycle2 { domain: self.domain.clone(), modulus: self.modulus, table: self.table.iter().map(|x| (-x).rem_euclid(n)).collect() }
    }

    /// The character `γ_f : C_H(f) → μ_N`, `g ↦ γ(f,g) − γ(g,f)`, checked to be
    /// multiplicative. Returns `(g, exponent)` pairs.
    pub fn commutator_character(&self, f: usize) -> Vec<(usize, i64)> {
        let c = self.domain.centralizer_of(f);
        let vals: Vec<(usize, i64)> = c.members().iter().map(|&g| (g, self.pairing(f, g))).collect();
        let g = self.domain.parent();
        let n = self.modulus as i64;
        for &(a, va) in &vals {
            for &(b, vb) in &vals {
                let ab = g.mul(a, b);
                assert_eq!((va + vb).rem_euclid(n), self.pairing(f, ab), "γ_f is not multiplicative");
            }
        }
        vals
    }
}

/// A cochain with values in `Z/modulus`, given per member position of its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub modulus: u64,
    pub values: Vec<i64>,
}

/// `H²(H, k*)` with representatives valued in `μ_N`.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    domain: Subgroup,
    modulus: u64,
    invariants: Vec<u64>,
    representatives: Vec<Cocycle2>,
    coords: Arc<Coordinates>,
}

/// Linear data to express cocycles in class coordinates.
#[derive(Debug)]
struct Coordinates {
    gens: Vec<usize>,
    /// Expression of `γ(f, h)` (positions) as a vector over the unknowns `x(g, s)`.
    expr: Vec<Vec<i64>>,
    /// `V⁻¹` of the cocycle system and its kernel summands `(index, order)`.
    v_inv: ModMatrix,
    summands: Vec<(usize, u64)>,
    /// `U` of the quotient system and the class orders per row.
    quotient_u: ModMatrix,
    quotient_orders: Vec<u64>,
    /// Kernel generators (as x-vectors).
    z_gens: Vec<Vec<i64>>,
    quotient_u_inv: ModMatrix,
}

impl CohomologyGroup {
    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Elementary divisors (`H² ≅ ⊕ Z/d_i`), empty when trivial.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// One representative per class, the trivial class first.
    pub fn representatives(&self) -> &[Cocycle2] {
        &self.representatives
    }

    /// Class coordinates of a cocycle on the same domain (any modulus
    /// dividing or equal to `N`, rescaled as needed).
    pub fn class_of(&self, gamma: &Cocycle2) -> Vec<u64> {
        assert_eq!(gamma.domain.members(), self.domain.members(), "domain mismatch");
        assert_eq!(self.modulus % gamma.modulus, 0, "cocycle modulus must divide the cohomology modulus");
        let gamma = gamma.rescaled(self.modulus);
        let c = &self.coords;
        let m = self.modulus as i64;
        let x: Vec<i64> = (0..self.domain.order())
            .flat_map(|pg| c.gens.iter().map(move |&s| (pg, s)))
            .map(|(pg, s)| gamma.value_at(pg, self.domain.position(s).expect("generator")))
            .collect();
        let y = c.v_inv.mul_vec(&x);
        let zc: Vec<i64> = c.summands.iter().map(|&(i, ord)| y[i] / (m / ord as i64)).collect();
        let t = c.quotient_u.mul_vec(&zc);
        c.quotient_orders
            .iter()
            .zip(&t)
            .filter(|(o, _)| **o > 1)
            .map(|(o, v)| (*v as u64) % o)
            .collect()
    }

    /// Index of the class of `gamma` among [`Self::representatives`].
    pub fn class_index(&self, gamma: &Cocycle2) -> usize {
        let coords = self.class_of(gamma);
        let mut idx = 0;
        for (c, o) in coords.iter().zip(&self.invariants) {
            idx = idx * *o as usize + *c as usize;
        }
        idx
    }

    fn representative_for(&self, coords: &[u64]) -> Cocycle2 {
        let c = &self.coords;
        let m = self.modulus as i64;
        let mut t = vec![0i64; c.quotient_orders.len()];
        let mut k = 0;
        for (j, &o) in c.quotient_orders.iter().enumerate() {
            if o > 1 {
                t[j] = coords[k] as i64;
                k += 1;
            }
        }
        let zc = c.quotient_u_inv.mul_vec(&t);
        let mut x = vec![0i64; c.expr[0].len()];
        for (coef, gen) in zc.iter().zip(&c.z_gens) {
            for (xi, gi) in x.iter_mut().zip(gen) {
                *xi = (*xi + coef * gi).rem_euclid(m);
            }
        }
        let k = self.domain.order();
        let table = (0..k * k).map(|i| dot(&c.expr[i], &x, m)).collect();
        Cocycle2 { domain: self.domain.clone(), modulus: self.modulus, table }
    }
}

fn dot(a: &[i64], b: &[i64], m: i64) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y % m).sum::<i64>().rem_euclid(m)
}

/// A small generating set, greedily chosen in element order.
pub fn generating_set(h: &Subgroup) -> Vec<usize> {
    let parent = h.parent();
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(parent);
    for &x in h.members() {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated_by(parent, &gens);
        }
    }
    gens
}

/// BFS spanning tree of the right Cayley graph: `(order, tree_parent)` where
/// `tree_parent[pos(ps)] = (pos(p), s_index)` and non-tree edges are listed.
pub(crate) struct CayleyTree {
    pub order: Vec<usize>,
    pub parent: Vec<Option<(usize, usize)>>,
    pub non_tree: Vec<(usize, usize)>,
}

pub(crate) fn cayley_tree(h: &Subgroup, gens: &[usize]) -> CayleyTree {
    let g = h.parent();
    let k = h.order();
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    let mut order = vec![0usize];
    seen[0] = true;
    let mut non_tree = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for (si, &s) in gens.iter().enumerate() {
            let q = h.position(g.mul(h.members()[p], s)).expect("closed");
            if seen[q] {
                non_tree.push((p, si));
            } else {
                seen[q] = true;
                parent[q] = Some((p, si));
                order.push(q);
            }
        }
        i += 1;
    }
    CayleyTree { order, parent, non_tree }
}

/// `H²(H, k*)` with representatives in `μ_N`, `N = |H|`.
pub fn second_cohomology(h: &Subgroup) -> Result<CohomologyGroup> {
    second_cohomology_mod(h, h.order() as u64)
}

/// As [`second_cohomology`] with a chosen modulus `N`, a multiple of `|H|`.
pub fn second_cohomology_mod(h: &Subgroup, modulus: u64) -> Result<CohomologyGroup> {
    check_cap("cohomology", h.order())?;
    if !modulus.is_multiple_of(h.order() as u64) {
        return Err(Error::InvalidCocycle(format!("modulus {modulus} is not a multiple of |H| = {}", h.order())));
    }
    let g = h.parent().clone();
    let k = h.order();
    let m = modulus as i64;
    let mem = h.members();
    let pos = |x: usize| h.position(x).expect("closed");
    let gens = generating_set(h);
    let ns = gens.len();
    let unknowns = k * ns;
    let var = |pg: usize, si: usize| pg * ns + si;
    let tree = cayley_tree(h, &gens);

    // γ(f, h) as linear forms in the unknowns x(g, s) = γ(g, s).
    let mut expr: Vec<Vec<i64>> = vec![Vec::new(); k * k];
    for pf in 0..k {
        expr[pf * k] = vec![0; unknowns];
    }
    for &q in &tree.order[1..] {
        let (pp, si) = tree.parent[q].expect("tree");
        for pf in 0..k {
            let fp = pos(g.mul(mem[pf], mem[pp]));
            // γ(f, ps) = γ(f, p) + γ(fp, s) − γ(p, s)
            let mut v = expr[pf * k + pp].clone();
            v[var(fp, si)] += 1;
            v[var(pp, si)] -= 1;
            for x in v.iter_mut() {
                *x = x.rem_euclid(m);
            }
            expr[pf * k + q] = v;
        }
    }

    let mut rows: Vec<Vec<i64>> = Vec::new();
    for si in 0..ns {
        let mut r = vec![0; unknowns];
        r[var(0, si)] = 1;
        rows.push(r);
    }
    for &(pp, si) in &tree.non_tree {
        let q = pos(g.mul(mem[pp], gens[si]));
        for pf in 0..k {
            let fp = pos(g.mul(mem[pf], mem[pp]));
            let mut r: Vec<i64> = expr[pf * k + pp].iter().zip(&expr[pf * k + q]).map(|(a, b)| a - b).collect();
            r[var(fp, si)] += 1;
            r[var(pp, si)] -= 1;
            rows.push(r);
        }
    }
    let mut system = crate::zmod::reduce_rows(&ModMatrix::from_rows(modulus, &rows));
    if unknowns == 0 {
        system = ModMatrix::zeros(modulus, 0, 0);
    }
    let s1 = smith(&system, Track::COLUMNS, None);
    let v = s1.v.as_ref().expect("V");
    let v_inv = s1.v_inv.clone().expect("V⁻¹");
    let summands: Vec<(usize, u64)> =
        (0..unknowns).map(|i| (i, s1.kernel_order(i))).filter(|&(_, o)| o > 1).collect();
    let z_gens: Vec<Vec<i64>> = summands
        .iter()
        .map(|&(i, o)| {
            let step = m / o as i64;
            v.column(i).iter().map(|x| x * step % m).collect()
        })
        .collect();

    let to_coords = |x: &[i64]| -> Vec<i64> {
        let y = v_inv.mul_vec(x);
        summands.iter().map(|&(i, o)| y[i] / (m / o as i64)).collect()
    };
    let x_of = |f: &dyn Fn(usize, usize) -> i64| -> Vec<i64> {
        (0..k).flat_map(|pg| (0..ns).map(move |si| (pg, si))).map(|(pg, si)| f(pg, si).rem_euclid(m)).collect()
    };

    // Relations: coboundaries of point masses and the carry cocycles of Hom(H, Z/N).
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for ph in 1..k {
        let c = |pa: usize| i64::from(pa == ph);
        let x = x_of(&|pg, si| c(pg) + c(pos(gens[si])) - c(pos(g.mul(mem[pg], gens[si]))));
        relations.push(to_coords(&x));
    }
    for phi in homomorphisms_to_cyclic(h, &gens, modulus) {
        let x = x_of(&|pg, si| (phi[pg] + phi[pos(gens[si])] - phi[pos(g.mul(mem[pg], gens[si]))]) / m);
        relations.push(to_coords(&x));
    }
    let nz = summands.len();
    for (j, &(_, o)) in summands.iter().enumerate() {
        let mut col = vec![0i64; nz];
        col[j] = o as i64;
        relations.push(col);
    }
    let rel_rows: Vec<Vec<i64>> = (0..nz).map(|i| relations.iter().map(|c| c[i]).collect()).collect();
    let quotient =
        if nz == 0 { ModMatrix::zeros(modulus, 0, 0) } else { ModMatrix::from_rows(modulus, &rel_rows) };
    let s2 = smith(&quotient, Track { u: true, u_inv: true, v: false, v_inv: false }, None);
    let quotient_orders: Vec<u64> = (0..nz).map(|j| s2.kernel_order(j)).collect();
    let invariants: Vec<u64> = quotient_orders.iter().copied().filter(|&o| o > 1).collect();

    let coords = Arc::new(Coordinates {
        gens,
        expr,
        v_inv,
        summands,
        quotient_u: s2.u.unwrap_or_else(|| ModMatrix::zeros(modulus, 0, 0)),
        quotient_orders,
        z_gens,
        quotient_u_inv: s2.u_inv.unwrap_or_else(|| ModMatrix::zeros(modulus, 0, 0)),
    });
    let mut group = CohomologyGroup { domain: h.clone(), modulus, invariants, representatives: Vec::new(), coords };
    let total: u64 = group.order();
    let mut reps = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let mut c = vec![0u64; group.invariants.len()];
        for (slot, o) in c.iter_mut().zip(&group.invariants).rev() {
            *slot = rem % o;
            rem /= o;
        }
        let rep = if idx == 0 { Cocycle2::trivial(h, modulus) } else { group.representative_for(&c) };
        debug_assert!(rep.is_cocycle());
        reps.push(rep);
    }
    group.representatives = reps;
    Ok(group)
}

/// Generators of `Hom(H, Z/N)` as lifted tables (values in `0..N`, per position).
pub fn homomorphisms_to_cyclic(h: &Subgroup, gens: &[usize], modulus: u64) -> Vec<Vec<i64>> {
    let g = h.parent();
    let k = h.order();
    let pos = |x: usize| h.position(x).expect("closed");
    let mut rows = Vec::new();
    for pa in 0..k {
        for &s in gens {
            let mut r = vec![0i64; k];
            r[pa] += 1;
            r[pos(s)] += 1;
            r[pos(g.mul(h.members()[pa], s))] -= 1;
            rows.push(r);
        }
    }
    let mut r0 = vec![0i64; k];
    r0[0] = 1;
    rows.push(r0);
    crate::zmod::kernel(&ModMatrix::from_rows(modulus, &rows)).into_iter().map(|(v, _)| v).collect()
}

/// A `k*`-valued witness `c` (exponents of `ζ_{N²}`) with `dc = γ`, if `γ` is a
/// coboundary: solves `c(f) + c(g) − c(fg) ≡ N·γ(f,g) (mod N²)`.
pub fn is_coboundary(gamma: &Cocycle2) -> Option<Cochain> {
    let h = gamma.domain();
    let g = h.parent();
    let k = h.order();
    let n = gamma.modulus() as i64;
    let big = (n * n) as u64;
    let mut rows = Vec::with_capacity(k * k);
    let mut rhs = Vec::with_capacity(k * k);
    for (pa, &a) in h.members().iter().enumerate() {
        for (pb, &b) in h.members().iter().enumerate() {
            let mut r = vec![0i64; k];
            r[pa] += 1;
            r[pb] += 1;
            r[h.position(g.mul(a, b)).expect("closed")] -= 1;
            rows.push(r);
            rhs.push(n * gamma.value_at(pa, pb));
        }
    }
    let values = crate::zmod::solve(&ModMatrix::from_rows(big, &rows), &rhs)?;
    Some(Cochain { modulus: big, values })
}

/// Orbit representatives of `N_G(H)` acting on `H²(H, k*)` by conjugation.
pub fn classes_up_to_symmetry(coh: &CohomologyGroup) -> Vec<usize> {
    classes_under(coh, &outer_generators(&coh.domain().normalizer(), coh.domain()))
}

/// Generators of `ambient` outside `inner`; inner elements act trivially on cohomology.
pub fn outer_generators(ambient: &Subgroup, inner: &Subgroup) -> Vec<usize> {
    generating_set(ambient).into_iter().filter(|&x| !inner.contains(x)).collect()
}

/// Orbit representatives of the classes under the group generated by `acting`,
/// a set of elements normalizing the domain.
pub fn classes_under(coh: &CohomologyGroup, acting: &[usize]) -> Vec<usize> {
    let count = coh.representatives().len();
    let mut seen = vec![false; count];
    let mut reps = Vec::new();
    for i in 0..count {
        if seen[i] {
            continue;
        }
        reps.push(i);
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for &x in acting {
                let k = coh.class_index(&conjugate_within(&coh.representatives()[j], x));
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    reps
}

/// `γ^x` for `x` normalizing the domain, reindexed on the same member list.
pub(crate) fn conjugate_within(gamma: &Cocycle2, x: usize) -> Cocycle2 {
    let c = gamma.conjugate(x);
    debug_assert_eq!(c.domain().members(), gamma.domain().members());
    Cocycle2 { domain: gamma.domain.clone(), ..c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, subgroup_classes, FiniteGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn whole(name: &str) -> Subgroup {
        Subgroup::whole(&Arc::new(build_group(name).unwrap()))
    }

    #[test]
    fn schur_multipliers_of_small_groups() {
        for (name, order) in [("1", 1), ("C2", 1), ("S3", 1), ("A3", 1), ("C2xC2", 2), ("A3xA3", 3), ("S3xS3", 2),
            ("C2xS3", 2), ("S3xC2", 2), ("Q8", 1), ("D4", 2), ("C4xC2", 2), ("A4", 2), ("S4", 2), ("C2xC2xC2", 8)]
        {
            let coh = second_cohomology(&whole(name)).unwrap();
            assert_eq!(coh.order(), order, "{name}");
            assert_eq!(coh.representatives().len() as u64, order);
            assert!(coh.representatives()[0].is_trivial_table());
            for (i, r) in coh.representatives().iter().enumerate() {
                assert!(r.is_cocycle() && r.is_normalized(), "{name}");
                assert_eq!(coh.class_index(r), i, "{name}");
            }
        }
    }

    #[test]
    fn s3_subgroups_have_trivial_multiplier() {
        let g = Arc::new(build_group("S3").unwrap());
        for s in subgroup_classes(&g).unwrap() {
            assert_eq!(second_cohomology(&s).unwrap().order(), 1);
        }
    }

    #[test]
    fn s3xs3_has_six_nontrivial_classes() {
        let g = Arc::new(build_group("S3xS3").unwrap());
        let mut orders: Vec<u64> = subgroup_classes(&g)
            .unwrap()
            .iter()
            .map(|s| second_cohomology(s).unwrap().order())
            .filter(|&o| o > 1)
            .collect();
        orders.sort();
        assert_eq!(orders, vec![2, 2, 2, 2, 3, 3]);
    }

    fn klein_rep(h: &Subgroup, n: u64) -> Cocycle2 {
        // C2xC2 elements are pair(i, j) = 2i + j; table(a^i b^j, a^k b^l) = jk·N/2.
        Cocycle2::from_fn(h, n, |x, y| ((x % 2) * (y / 2)) as i64 * (n as i64 / 2)).unwrap()
    }

    #[test]
    fn klein_nondegenerate_class() {
        let h = whole("C2xC2");
        let coh = second_cohomology(&h).unwrap();
        let gamma = klein_rep(&h, 4);
        assert!(is_coboundary(&gamma).is_none());
        assert_eq!(coh.class_index(&gamma), 1);
        let (a, b) = (2, 1);
        let chi = gamma.commutator_character(a);
        assert_eq!(chi.iter().find(|(g, _)| *g == b).unwrap().1, 2); // −1 = ζ4²
        // Every representative of the class has the same pairing.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let c: Vec<i64> = (0..4).map(|i| if i == 0 { 0 } else { rng.gen_range(0..4) }).collect();
            let other = gamma.add(&Cocycle2::coboundary(&h, 4, &c));
            assert_eq!(other.pairing(a, b), 2);
            assert_eq!(coh.class_index(&other), 1);
        }
        // Restriction to the diagonal {e, ab} is a coboundary.
        let diag = Subgroup::from_members(h.parent().clone(), vec![0, 3]).unwrap();
        assert!(is_coboundary(&gamma.restrict(&diag)).is_some());
    }

    #[test]
    fn coboundary_witnesses() {
        let h = whole("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c: Vec<i64> = (0..6).map(|i| if i == 0 { 0 } else { rng.gen_range(0..6) }).collect();
        let gamma = Cocycle2::coboundary(&h, 6, &c);
        let w = is_coboundary(&gamma).expect("constructed coboundary");
        let big = w.modulus as i64;
        let g = h.parent();
        for a in 0..6 {
            for b in 0..6 {
                let lhs = (w.values[a] + w.values[b] - w.values[g.mul(a, b)]).rem_euclid(big);
                assert_eq!(lhs, 6 * gamma.value(a, b) % big);
            }
        }
        let zero = is_coboundary(&Cocycle2::trivial(&h, 6)).unwrap();
        assert!(zero.values.iter().all(|&x| x == 0));
    }

    #[test]
    fn d2_after_d1_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["S3", "D4", "Q8", "C2xC2xC2", "A4"] {
            let h = whole(name);
            let n = h.order() as u64;
            for _ in 0..5 {
                let c: Vec<i64> =
                    (0..h.order()).map(|i| if i == 0 { 0 } else { rng.gen_range(0..n as i64) }).collect();
                assert!(Cocycle2::coboundary(&h, n, &c).is_cocycle());
            }
        }
    }

    #[test]
    fn pairing_is_antisymmetric() {
        for name in ["C2xC2", "A3xA3", "S3xS3", "D4", "C4xC2"] {
            let coh = second_cohomology(&whole(name)).unwrap();
            let g: &Arc<FiniteGroup> = coh.domain().parent();
            for r in coh.representatives() {
                for &(f, h) in g.commuting_pairs().pairs() {
                    assert_eq!((r.pairing(f, h) + r.pairing(h, f)) % r.modulus() as i64, 0);
                }
            }
        }
    }

    #[test]
    fn restriction_composes() {
        let h = whole("S3xS3");
        let coh = second_cohomology(&h).unwrap();
        let gamma = &coh.representatives()[1];
        let g = h.parent().clone();
        let a3a3 = Subgroup::generated_by(&g, &[g.pair(1, 0), g.pair(0, 1)]);
        let diag = Subgroup::generated_by(&g, &[g.pair(1, 1)]);
        assert_eq!(gamma.restrict(&a3a3).restrict(&diag), gamma.restrict(&diag));
        assert!(Cocycle2::trivial(&h, 36).restrict(&diag).is_trivial_table());
        assert!(gamma.restrict(&Subgroup::trivial(&g)).is_trivial_table());
    }

    #[test]
    fn normalizer_orbits() {
        let g = Arc::new(build_group("S3xS3").unwrap());
        let a3a3 = Subgroup::generated_by(&g, &[g.pair(1, 0), g.pair(0, 1)]);
        let coh = second_cohomology(&a3a3).unwrap();
        assert_eq!(coh.order(), 3);
        assert_eq!(classes_up_to_symmetry(&coh).len(), 2);
        // C2×C2 generated by the two transposition factors.
        let (s3, _) = g.factors().unwrap();
        let t = s3.element_by_label("(12)").unwrap();
        let klein = Subgroup::generated_by(&g, &[g.pair(t, 0), g.pair(0, t)]);
        let coh = second_cohomology(&klein).unwrap();
        assert_eq!(classes_up_to_symmetry(&coh).len(), 2);
        let s3sub = Subgroup::whole(s3);
        assert_eq!(classes_up_to_symmetry(&second_cohomology(&s3sub).unwrap()).len(), 1);
    }

    #[test]
    fn larger_modulus_gives_same_group() {
        let h = whole("C2xC2");
        let coh = second_cohomology_mod(&h, 12).unwrap();
        assert_eq!(coh.order(), 2);
        let gamma = klein_rep(&h, 4);
        assert_eq!(coh.class_index(&gamma), 1);
    }
}
