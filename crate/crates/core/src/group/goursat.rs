//! Subgroups of a direct product as fibred products `M ×_P N`.

use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// `U = {(g, q) ∈ M × N : i(g) = j(q)}`.
///
/// `i[k]` is the image of `m.members()[k]`, likewise for `j`.
#[derive(Debug, Clone)]
pub struct GoursatDatum {
    pub m: Subgroup,
    pub n: Subgroup,
    pub p: Arc<FiniteGroup>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl GoursatDatum {
    pub fn i_of(&self, g: usize) -> Option<usize> {
        self.m.position(g).map(|k| self.i[k])
    }

    pub fn j_of(&self, q: usize) -> Option<usize> {
        self.n.position(q).map(|k| self.j[k])
    }
}

/// Quotient `sub / kernel` realised on cosets ordered by their least element,
/// together with the projection (indexed like `sub.members()`).
fn quotient(sub: &Subgroup, kernel: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let g = sub.parent();
    let mut coset_of = vec![usize::MAX; sub.order()];
    let mut reps = Vec::new();
    for (k, &x) in sub.members().iter().enumerate() {
        if coset_of[k] != usize::MAX {
            continue;
        }
        for &h in kernel.members() {
            let y = sub.position(g.mul(x, h)).expect("kernel inside subgroup");
            coset_of[y] = reps.len();
        }
        reps.push(x);
    }
    let r = reps.len();
    let proj = |x: usize| coset_of[sub.position(x).expect("in subgroup")];
    let mut mult = vec![0u32; r * r];
    for a in 0..r {
        for b in 0..r {
            mult[a * r + b] = proj(g.mul(reps[a], reps[b])) as u32;
        }
    }
    let inv = reps.iter().map(|&x| proj(g.inv(x)) as u32).collect();
    let labels = reps.iter().map(|&x| format!("[{}]", g.label(x))).collect();
    (FiniteGroup::from_parts(format!("P{r}"), r, mult, inv, Some(labels), None), coset_of)
}

/// Goursat decomposition of a subgroup of a direct product.
pub fn goursat_decompose(u: &Subgroup) -> Result<GoursatDatum> {
    let parent = u.parent();
    if !parent.is_product() {
        return Err(Error::NotAProduct);
    }
    let m = u.project_left();
    let n = u.project_right();
    let m0 = u.left_kernel();
    let (p, i) = quotient(&m, &m0);
    let mut j = vec![usize::MAX; n.order()];
    for &x in u.members() {
        let (g, q) = parent.split(x);
        let k = n.position(q).expect("projection");
        if j[k] == usize::MAX {
            j[k] = i[m.position(g).expect("projection")];
        }
    }
    Ok(GoursatDatum { m, n, p: Arc::new(p), i, j })
}

fn check_surjective_hom(sub: &Subgroup, p: &FiniteGroup, map: &[usize], which: &str) -> Result<()> {
    let bad = |msg: &str| Error::InvalidGoursat(format!("{which}: {msg}"));
    if map.len() != sub.order() || map.iter().any(|&x| x >= p.order()) {
        return Err(bad("map has the wrong length or leaves the quotient"));
    }
    let g = sub.parent();
    for (a, &x) in sub.members().iter().enumerate() {
        for (b, &y) in sub.members().iter().enumerate() {
            let c = sub.position(g.mul(x, y)).expect("closed");
            if map[c] != p.mul(map[a], map[b]) {
                return Err(bad("not a homomorphism"));
            }
        }
    }
    let mut hit = vec![false; p.order()];
    map.iter().for_each(|&x| hit[x] = true);
    if !hit.iter().all(|&h| h) {
        return Err(bad("not surjective"));
    }
    Ok(())
}

/// The fibred product `M ×_P N` inside `ambient = G × Q`.
pub fn goursat_compose(ambient: &Arc<FiniteGroup>, d: &GoursatDatum) -> Result<Subgroup> {
    let (left, right) = ambient.factors().ok_or(Error::NotAProduct)?;
    if **d.m.parent() != **left || **d.n.parent() != **right {
        return Err(Error::GroupMismatch);
    }
    check_surjective_hom(&d.m, &d.p, &d.i, "i")?;
    check_surjective_hom(&d.n, &d.p, &d.j, "j")?;
    let mut members = Vec::with_capacity(d.m.order() * d.n.order() / d.p.order());
    for (a, &g) in d.m.members().iter().enumerate() {
        for (b, &q) in d.n.members().iter().enumerate() {
            if d.i[a] == d.j[b] {
                members.push(ambient.pair(g, q));
            }
        }
    }
    members.sort_unstable();
    Ok(Subgroup::from_sorted_members(ambient.clone(), members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, build_group};

    #[test]
    fn round_trip_exhaustive() {
        for name in ["S3xS3", "C2xC2", "C2xS3"] {
            let g = Arc::new(build_group(name).unwrap());
            for u in all_subgroups(&g).unwrap() {
                let d = goursat_decompose(&u).unwrap();
                assert_eq!(d.m.order() * d.n.order(), d.p.order() * u.order());
                assert_eq!(goursat_compose(&g, &d).unwrap(), u);
            }
        }
    }

    #[test]
    fn diagonal_and_products() {
        let g = Arc::new(build_group("S3xS3").unwrap());
        let diag = Subgroup::from_members(g.clone(), (0..6).map(|x| g.pair(x, x)).collect()).unwrap();
        let d = goursat_decompose(&diag).unwrap();
        assert_eq!((d.m.order(), d.n.order(), d.p.order()), (6, 6, 6));
        assert_eq!(d.i, d.j);
        let (s3, _) = g.factors().unwrap();
        let a3 = Subgroup::generated_by(s3, &[1]);
        let prod = Subgroup::product_of(&g, &a3, &Subgroup::whole(s3));
        assert_eq!(goursat_decompose(&prod).unwrap().p.order(), 1);
    }

    #[test]
    fn twisted_diagonal_has_c2_quotient() {
        let g = Arc::new(build_group("S3xS3").unwrap());
        // δ(C2)(A3×A3) = {(x, y) : sign x = sign y}.
        let s3 = g.factors().unwrap().0.clone();
        let sign = |x: usize| s3.element_order(x) == 2;
        let members = (0..36).filter(|&u| {
            let (a, b) = g.split(u);
            sign(a) == sign(b)
        });
        let u = Subgroup::from_members(g.clone(), members.collect()).unwrap();
        let d = goursat_decompose(&u).unwrap();
        assert_eq!((d.m.order(), d.n.order(), d.p.order()), (6, 6, 2));
    }

    #[test]
    fn rejects_bad_maps() {
        let g = Arc::new(build_group("C2xC2").unwrap());
        let (c2, _) = g.factors().unwrap();
        let whole = Subgroup::whole(c2);
        let p = Arc::new(build_group("C2").unwrap());
        let d = GoursatDatum { m: whole.clone(), n: whole.clone(), p, i: vec![0, 0], j: vec![0, 1] };
        assert!(goursat_compose(&g, &d).is_err());
        let plain = Arc::new(build_group("C4").unwrap());
        let u = Subgroup::whole(&plain);
        assert_eq!(goursat_decompose(&u).unwrap_err(), Error::NotAProduct);
    }
}
