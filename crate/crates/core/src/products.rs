//! Maximal algebras in `Z(G) ⊠ Z(Q) ≅ Z(G×Q)`, their parents in `Z(G)` and
//! `Z(Q)`, ribbon equivalences `Z(G) ≅ Z(Q)` and the parent graph.

use std::sync::Arc;

use crate::algebras::{classify_algebras, subgroup_label, AlgebraDatum};
use crate::cohomology::{classes_up_to_symmetry, second_cohomology, Cocycle2};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{check_cap, direct_product, goursat_decompose, subgroup_classes, FiniteGroup, GoursatDatum, Subgroup};

/// The trivialising algebra `A(U, γ)` of `Z(G×Q)` with its two parents.
#[derive(Debug, Clone)]
pub struct MaximalAlgebra {
    pub gamma: Cocycle2,
    /// `Hom_{Z(Q)}(1, A)`, an algebra in `Z(G)`.
    pub left_parent: AlgebraDatum,
    /// `Hom_{Z(G)}(1, A)`, an algebra in `Z(Q)`.
    pub right_parent: AlgebraDatum,
    /// Whether `γ` is cohomologically nontrivial.
    pub twisted: bool,
}

impl MaximalAlgebra {
    pub fn u(&self) -> &Subgroup {
        self.gamma.domain()
    }

    pub fn label(&self) -> String {
        let base = product_label(self.u());
        if self.twisted {
            format!("({base},γ)")
        } else {
            base
        }
    }
}

/// `A×B` when `U` splits, otherwise the generators of `U`.
pub fn product_label(u: &Subgroup) -> String {
    let (a, b) = (u.project_left(), u.project_right());
    if a.order() * b.order() == u.order() {
        format!("{}×{}", subgroup_label(&a), subgroup_label(&b))
    } else {
        subgroup_label(u)
    }
}

/// The ambient product `G×Q` with both factors recorded.
pub fn product_group(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>) -> Arc<FiniteGroup> {
    Arc::new(direct_product(g, q))
}

/// One maximal algebra per `G×Q`-conjugacy class of `U` and normalizer orbit
/// of `H²(U, k*)`, in subgroup-class order with the trivial class first.
pub fn maximal_algebras(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>) -> Result<Vec<MaximalAlgebra>> {
    check_cap("G×Q", g.order() * q.order())?;
    maximal_algebras_in(&product_group(g, q))
}

/// As [`maximal_algebras`] for an already built product group.
pub fn maximal_algebras_in(p: &Arc<FiniteGroup>) -> Result<Vec<MaximalAlgebra>> {
    if !p.is_product() {
        return Err(Error::NotAProduct);
    }
    let classes = subgroup_classes(p)?;
    let per_class = exec::map(&classes, |u| -> Result<Vec<MaximalAlgebra>> {
        let coh = second_cohomology(u)?;
        classes_up_to_symmetry(&coh)
            .into_iter()
            .map(|idx| {
                let gamma = coh.representatives()[idx].clone();
                Ok(MaximalAlgebra {
                    left_parent: parent_left(&gamma)?,
                    right_parent: parent_right(&gamma)?,
                    twisted: idx != 0,
                    gamma,
                })
            })
            .collect()
    });
    let mut out = Vec::new();
    for r in per_class {
        out.extend(r?);
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// The parent in `Z(Q)`: `A(pr₂(U), K, γ|_K, ε)`.
pub fn parent_right(gamma: &Cocycle2) -> Result<AlgebraDatum> {
    parent(gamma, Side::Right)
}

/// The parent in `Z(G)`: `A(pr₁(U), K, γ|_K, ε)`.
pub fn parent_left(gamma: &Cocycle2) -> Result<AlgebraDatum> {
    parent(gamma, Side::Left)
}

fn parent(gamma: &Cocycle2, side: Side) -> Result<AlgebraDatum> {
    let u = gamma.domain();
    let p = u.parent().clone();
    let (g, q) = p.factors().ok_or(Error::NotAProduct)?;
    // `embed` puts an element of the target factor into `G×Q`; `other` is the
    // intersection with the opposite factor, whose pairing cuts out `K`.
    let (target, h, own, other): (&Arc<FiniteGroup>, Subgroup, Subgroup, Vec<usize>) = match side {
        Side::Right => {
            let other = u.left_kernel().members().iter().map(|&x| p.pair(x, 0)).collect();
            (q, u.project_right(), u.right_kernel(), other)
        }
        Side::Left => {
            let other = u.right_kernel().members().iter().map(|&y| p.pair(0, y)).collect();
            (g, u.project_left(), u.left_kernel(), other)
        }
    };
    let embed = |x: usize| match side {
        Side::Right => p.pair(0, x),
        Side::Left => p.pair(x, 0),
    };
    let kernel: Vec<usize> =
        own.members().iter().copied().filter(|&v| other.iter().all(|&w| gamma.pairing(w, embed(v)) == 0)).collect();
    let k = Subgroup::from_members(target.clone(), kernel).expect("kernel of a pairing is a subgroup");
    let restricted = Cocycle2::from_fn(&k, gamma.modulus(), |a, b| gamma.value(embed(a), embed(b)))?;

    // ε_x(v) = γ(w, v) − γ(w v w⁻¹, w) for any lift w ∈ U of x; all lifts must agree.
    let n = gamma.modulus() as i64;
    let mut eps = vec![None::<i64>; h.order() * k.order()];
    for &w in u.members() {
        let (a, b) = p.split(w);
        let x = if side == Side::Right { b } else { a };
        let ph = h.position(x).expect("projection");
        for (pv, &v) in k.members().iter().enumerate() {
            let ve = embed(v);
            let val = (gamma.value(w, ve) - gamma.value(p.conj(w, ve), w)).rem_euclid(n);
            let slot = &mut eps[ph * k.order() + pv];
            match *slot {
                None => *slot = Some(val),
                Some(prev) if prev != val => {
                    return Err(Error::InconsistentAlgebra(format!(
                        "parent ε depends on the lift of {}",
                        target.label(x)
                    )))
                }
                Some(_) => {}
            }
        }
    }
    AlgebraDatum::new(&h, &k, &restricted, |x, v| {
        eps[h.position(x).expect("in H") * k.order() + k.position(v).expect("in K")].expect("every element has a lift")
    })
}

/// A ribbon equivalence `Z(G) ≅ Z(Q)`: `U` with full projections and `γ`
/// pairing the two intersections non-degenerately.
#[derive(Debug, Clone)]
pub struct EquivalenceDatum {
    pub gamma: Cocycle2,
    pub goursat: GoursatDatum,
}

impl EquivalenceDatum {
    pub fn u(&self) -> &Subgroup {
        self.gamma.domain()
    }
}

/// Whether `γ(·|·)` restricted to `(U∩(G×e)) × (U∩(e×Q))` is non-degenerate.
pub fn pairing_is_nondegenerate(gamma: &Cocycle2) -> bool {
    let u = gamma.domain();
    let p = u.parent();
    let left: Vec<usize> = u.left_kernel().members().iter().map(|&x| p.pair(x, 0)).collect();
    let right: Vec<usize> = u.right_kernel().members().iter().map(|&y| p.pair(0, y)).collect();
    if left.len() != right.len() {
        return false;
    }
    // Injectivity of U∩(G×e) → dual of U∩(e×Q); bijective by counting.
    let row = |x: usize| right.iter().map(|&y| gamma.pairing(x, y)).collect::<Vec<_>>();
    let trivial = row(left[0]);
    left[1..].iter().all(|&x| row(x) != trivial)
}

/// All ribbon equivalences between `Z(G)` and `Z(Q)` up to the symmetries
/// used by [`maximal_algebras`].
pub fn ribbon_equivalences(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>) -> Result<Vec<EquivalenceDatum>> {
    if g.order() != q.order() {
        return Ok(Vec::new());
    }
    check_cap("G×Q", g.order() * q.order())?;
    let p = product_group(g, q);
    let classes = subgroup_classes(&p)?;
    let candidates: Vec<&Subgroup> =
        classes.iter().filter(|u| u.project_left().order() == g.order() && u.project_right().order() == q.order()).collect();
    let mut out = Vec::new();
    for u in candidates {
        let coh = second_cohomology(u)?;
        for idx in classes_up_to_symmetry(&coh) {
            let gamma = &coh.representatives()[idx];
            if pairing_is_nondegenerate(gamma) {
                out.push(EquivalenceDatum { gamma: gamma.clone(), goursat: goursat_decompose(u)? });
            }
        }
    }
    Ok(out)
}

/// Vertices are algebra classes of `Z(G)` and `Z(Q)` (one shared list when
/// `G = Q`); each maximal algebra is an edge from its left to its right parent.
#[derive(Debug, Clone)]
pub struct ParentGraph {
    pub left_vertices: Vec<AlgebraDatum>,
    pub right_vertices: Vec<AlgebraDatum>,
    pub shared: bool,
    pub algebras: Vec<MaximalAlgebra>,
    /// `(left vertex, right vertex)` per algebra.
    pub edges: Vec<(usize, usize)>,
}

impl ParentGraph {
    pub fn vertex_count(&self) -> usize {
        if self.shared {
            self.left_vertices.len()
        } else {
            self.left_vertices.len() + self.right_vertices.len()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Global vertex id of a right endpoint.
    pub fn right_id(&self, v: usize) -> usize {
        if self.shared {
            v
        } else {
            self.left_vertices.len() + v
        }
    }

    /// Connected components that carry at least one edge, as sorted global vertex ids.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, self.right_id(b)));
            parent[ra] = rb;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &(a, b) in &self.edges {
            for v in [a, self.right_id(b)] {
                let r = find(&mut parent, v);
                let e = groups.entry(r).or_default();
                if !e.contains(&v) {
                    e.push(v);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = groups
            .into_values()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }
}

fn locate(vertices: &[AlgebraDatum], datum: &AlgebraDatum) -> Result<usize> {
    vertices
        .iter()
        .position(|v| v.is_isomorphic(datum))
        .ok_or_else(|| Error::InconsistentAlgebra(format!("parent {} matches no classified algebra", datum.label())))
}

pub fn build_parent_graph(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>) -> Result<ParentGraph> {
    let algebras = maximal_algebras(g, q)?;
    let shared = **g == **q;
    let left_vertices = classify_algebras(g)?;
    let right_vertices = if shared { left_vertices.clone() } else { classify_algebras(q)? };
    let edges = exec::map(&algebras, |a| -> Result<(usize, usize)> {
        Ok((locate(&left_vertices, &a.left_parent)?, locate(&right_vertices, &a.right_parent)?))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ParentGraph { left_vertices, right_vertices, shared, algebras, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(name).unwrap())
    }

    fn shape(a: &AlgebraDatum) -> (usize, usize) {
        (a.h().order(), a.f().order())
    }

    #[test]
    fn counts() {
        assert_eq!(maximal_algebras(&grp("1"), &grp("1")).unwrap().len(), 1);
        assert_eq!(maximal_algebras(&grp("C2"), &grp("C2")).unwrap().len(), 6);
        assert_eq!(maximal_algebras(&grp("S3"), &grp("S3")).unwrap().len(), 28);
    }

    #[test]
    fn s3_parents() {
        let g = grp("S3");
        let algs = maximal_algebras(&g, &g).unwrap();
        let p = algs[0].u().parent().clone();
        let find = |members: Vec<usize>, twisted: bool| {
            let mut m = members;
            m.sort_unstable();
            algs.iter().find(|a| a.twisted == twisted && a.u().members() == m.as_slice()).unwrap()
        };
        let diag = find((0..6).map(|x| p.pair(x, x)).collect(), false);
        assert_eq!(shape(&diag.left_parent), (6, 1));
        assert_eq!(shape(&diag.right_parent), (6, 1));
        let full = find((0..36).collect(), false);
        assert_eq!(shape(&full.left_parent), (6, 6));
        let t = g.element_by_label("(12)").unwrap();
        let c2 = Subgroup::generated_by(&g, &[t]);
        let c2s3 = Subgroup::product_of(&p, &c2, &Subgroup::whole(&g));
        let a = find(c2s3.members().to_vec(), false);
        assert_eq!(shape(&a.left_parent), (2, 2));
        assert_eq!(shape(&a.right_parent), (6, 6));
        let tw = find(c2s3.members().to_vec(), true);
        assert_eq!(shape(&tw.left_parent), (2, 1));
        assert_eq!(shape(&tw.right_parent), (6, 3));
    }

    #[test]
    fn s3_graph() {
        let g = grp("S3");
        let graph = build_parent_graph(&g, &g).unwrap();
        assert_eq!(graph.vertex_count(), 8);
        assert_eq!(graph.edge_count(), 28);
        let comps = graph.components();
        let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        assert_eq!(comps.len(), 4);
        // Loops at (A3, {e}): δ(A3) and (A3×A3, γ).
        let a3e = graph.left_vertices.iter().position(|v| shape(v) == (3, 1)).unwrap();
        assert_eq!(graph.edges.iter().filter(|&&e| e == (a3e, a3e)).count(), 2);
    }

    #[test]
    fn equivalences() {
        let c2 = grp("C2");
        let eq = ribbon_equivalences(&c2, &c2).unwrap();
        assert_eq!(eq.len(), 2);
        assert!(ribbon_equivalences(&grp("S3"), &c2).unwrap().is_empty());
        let s3 = grp("S3");
        let eq = ribbon_equivalences(&s3, &s3).unwrap();
        assert!(eq.iter().any(|e| e.u().order() == 6 && e.gamma.is_trivial_table()));
    }
}
