//! Simple objects of `Z(G)`, the S and T matrices, characters on commuting
//! pairs and the modular group action on them.

use std::sync::{Arc, OnceLock};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{character_table, CharacterTable};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{check_cap, FiniteGroup, Subgroup};
use crate::matrix::CycMatrix;

/// A simple object `(g, ψ)`: a class representative and an irreducible
/// character of its centralizer.
#[derive(Debug, Clone)]
pub struct SimpleObject {
    pub class_index: usize,
    pub rep: usize,
    pub centralizer: Subgroup,
    /// Row of the centralizer's character table.
    pub irrep: usize,
    pub label: String,
}

/// A function on the commuting pairs of a group.
#[derive(Debug, Clone)]
pub struct PairFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for PairFunction {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.values == other.values
    }
}

impl PairFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), group.commuting_pairs().len(), "one value per commuting pair");
        PairFunction { group: group.clone(), values }
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::new(group, vec![Cyclotomic::zero(); group.commuting_pairs().len()])
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(usize, usize) -> Cyclotomic + Sync + Send) -> Self {
        let values = exec::map(group.commuting_pairs().pairs(), |&(a, b)| f(a, b));
        Self::new(group, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at a commuting pair; zero elsewhere.
    pub fn get(&self, f: usize, g: usize) -> Cyclotomic {
        match self.group.commuting_pairs().index_of(f, g) {
            Some(k) => self.values[k].clone(),
            None => Cyclotomic::zero(),
        }
    }

    fn at(&self, f: usize, g: usize) -> &Cyclotomic {
        &self.values[self.group.commuting_pairs().index_of(f, g).expect("commuting pair")]
    }

    fn reindex(&self, map: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let values = self.group.commuting_pairs().pairs().iter().map(|&(f, g)| {
            let (a, b) = map(f, g);
            self.at(a, b).clone()
        });
        PairFunction { group: self.group.clone(), values: values.collect() }
    }

    /// `χ∨(f, g) = χ(f⁻¹, g⁻¹)`.
    pub fn dual(&self) -> Self {
        let g = self.group.clone();
        self.reindex(|a, b| (g.inv(a), g.inv(b)))
    }

    /// `S(χ)(f, g) = χ(g, f⁻¹)`.
    pub fn act_s(&self) -> Self {
        let g = self.group.clone();
        self.reindex(|a, b| (b, g.inv(a)))
    }

    /// `T(χ)(f, g) = χ(f, fg)`.
    pub fn act_t(&self) -> Self {
        let g = self.group.clone();
        self.reindex(|a, b| (a, g.mul(a, b)))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        PairFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn add(&self, other: &PairFunction) -> Self {
        assert!(*self.group == *other.group, "group mismatch");
        PairFunction { group: self.group.clone(), values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        PairFunction { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `(χ, ψ) = (1/|G|) Σ_{fg=gf} χ(f,g) conj(ψ(f,g))`.
    pub fn inner_product(&self, other: &PairFunction) -> Result<Cyclotomic> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        let total: Cyclotomic = self.values.iter().zip(&other.values).map(|(a, b)| a * &b.conj()).sum();
        Ok(total.scale(Rational::new(1, self.group.order() as i128)))
    }

    /// Constant on simultaneous conjugation orbits of commuting pairs.
    pub fn is_conjugation_invariant(&self) -> bool {
        let g = &self.group;
        g.commuting_pairs().pairs().iter().zip(&self.values).all(|(&(a, b), v)| {
            (0..g.order()).all(|x| self.at(g.conj(x, a), g.conj(x, b)) == v)
        })
    }

    /// `Σ_f χ(f, e)`, the total dimension of the graded object.
    pub fn dimension(&self) -> Cyclotomic {
        (0..self.group.order()).map(|f| self.at(f, 0).clone()).sum()
    }
}

/// The modular data of `Z(G)`.
#[derive(Debug)]
pub struct Double {
    group: Arc<FiniteGroup>,
    centralizers: Vec<Subgroup>,
    tables: Vec<CharacterTable>,
    simples: Vec<SimpleObject>,
    characters: OnceLock<Vec<PairFunction>>,
}

/// How [`Double::s_matrix_with`] chooses the conjugating witnesses.
#[derive(Debug, Clone, Copy)]
pub enum Witnesses {
    /// The least element conjugating the representative to each class member.
    Canonical,
    /// A random valid witness per class member, from a seeded generator.
    Seeded(u64),
}

impl Double {
    pub fn new(group: &Arc<FiniteGroup>) -> Result<Self> {
        check_cap("Drinfeld double", group.order())?;
        let classes = group.conjugacy_classes();
        let centralizers: Vec<Subgroup> = classes.iter().map(|c| group.centralizer(c.rep)).collect();
        let tables = centralizers
            .iter()
            .map(|c| character_table(&Arc::new(c.as_group())))
            .collect::<Result<Vec<_>>>()?;
        let mut simples = Vec::new();
        for (ci, (cl, (cent, table))) in classes.iter().zip(centralizers.iter().zip(&tables)).enumerate() {
            for irrep in 0..table.len() {
                simples.push(SimpleObject {
                    class_index: ci,
                    rep: cl.rep,
                    centralizer: cent.clone(),
                    irrep,
                    label: format!("({},{})", group.label(cl.rep), irrep),
                });
            }
        }
        Ok(Double { group: group.clone(), centralizers, tables, simples, characters: OnceLock::new() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn simples(&self) -> &[SimpleObject] {
        &self.simples
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn centralizer_table(&self, class_index: usize) -> &CharacterTable {
        &self.tables[class_index]
    }

    /// `ψ(c)` for `c` in the centralizer of the simple's representative.
    pub fn irrep_value(&self, simple: usize, c: usize) -> &Cyclotomic {
        let x = &self.simples[simple];
        let pos = self.centralizers[x.class_index].position(c).expect("element of the centralizer");
        self.tables[x.class_index].value(x.irrep, pos)
    }

    /// `dim(g, ψ) = [G : C_G(g)]·ψ(e)`.
    pub fn dimension(&self, simple: usize) -> usize {
        let x = &self.simples[simple];
        self.group.order() / x.centralizer.order() * self.tables[x.class_index].degrees()[x.irrep]
    }

    /// `Σ dim(X)²`.
    pub fn global_dimension(&self) -> usize {
        (0..self.rank()).map(|i| self.dimension(i).pow(2)).sum()
    }

    pub fn s_matrix(&self) -> CycMatrix {
        self.s_matrix_with(Witnesses::Canonical)
    }

    /// `S_{(f,ψ),(g,ξ)} = (1/|G|) Σ_{u ∈ f^G, v ∈ g^G, uv=vu} ψ(x v⁻¹ x⁻¹) ξ(y u⁻¹ y⁻¹)`
    /// with `u = x⁻¹ f x`, `v = y⁻¹ g y`.
    pub fn s_matrix_with(&self, witnesses: Witnesses) -> CycMatrix {
        let g = &self.group;
        let n = g.order();
        // witness[u] = some x with x⁻¹ rep(u) x = u.
        let mut rng = match witnesses {
            Witnesses::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(s)),
            Witnesses::Canonical => None,
        };
        let witness: Vec<usize> = (0..n)
            .map(|u| {
                let rep = g.conjugacy_classes()[g.class_of(u)].rep;
                let all: Vec<usize> = (0..n).filter(|&x| g.conj(g.inv(x), rep) == u).collect();
                match &mut rng {
                    Some(r) => all[r.gen_range(0..all.len())],
                    None => all[0],
                }
            })
            .collect();
        let rank = self.rank();
        let classes = g.conjugacy_classes();
        let scale = Rational::new(1, n as i128);
        let rows = exec::map_range(rank, |i| {
            let a = &self.simples[i];
            (0..rank)
                .map(|j| {
                    let b = &self.simples[j];
                    let mut acc = Cyclotomic::zero();
                    for &u in &classes[a.class_index].members {
                        for &v in &classes[b.class_index].members {
                            if !g.commute(u, v) {
                                continue;
                            }
                            let (x, y) = (witness[u], witness[v]);
                            let p = g.conj(x, g.inv(v));
                            let q = g.conj(y, g.inv(u));
                            acc += &(self.irrep_value(i, p) * self.irrep_value(j, q));
                        }
                    }
                    acc.scale(scale)
                })
                .collect::<Vec<_>>()
        });
        CycMatrix::from_rows(rows)
    }

    /// Diagonal entries `ψ(g)/ψ(e)`.
    pub fn t_diagonal(&self) -> Vec<Cyclotomic> {
        (0..self.rank())
            .map(|i| {
                let x = &self.simples[i];
                let deg = self.tables[x.class_index].degrees()[x.irrep];
                self.irrep_value(i, x.rep).scale(Rational::new(1, deg as i128))
            })
            .collect()
    }

    pub fn t_matrix(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.t_diagonal())
    }

    /// `χ_X(f, h) = (1/|C_G(g)|) Σ_{x : xfx⁻¹ = g} ψ(x h x⁻¹)`.
    pub fn simple_character(&self, simple: usize) -> PairFunction {
        let g = &self.group;
        let x = &self.simples[simple];
        let cent = x.centralizer.order() as i128;
        let cls = g.class_of(x.rep);
        PairFunction::from_fn(g, |f, h| {
            if g.class_of(f) != cls {
                return Cyclotomic::zero();
            }
            let total: Cyclotomic = (0..g.order())
                .filter(|&y| g.conj(y, f) == x.rep)
                .map(|y| self.irrep_value(simple, g.conj(y, h)).clone())
                .sum();
            total.scale(Rational::new(1, cent))
        })
    }

    /// All simple characters in basis order (cached).
    pub fn simple_characters(&self) -> &[PairFunction] {
        self.characters.get_or_init(|| (0..self.rank()).map(|i| self.simple_character(i)).collect())
    }

    /// Index of the simple whose character is `χ`, if any.
    pub fn simple_index_of(&self, chi: &PairFunction) -> Option<usize> {
        self.simple_characters().iter().position(|c| c == chi)
    }

    /// The permutation `i ↦ i∨` of simples induced by the dual character.
    pub fn dual_permutation(&self) -> Vec<usize> {
        self.simple_characters().iter().map(|c| self.simple_index_of(&c.dual()).expect("dual of a simple is simple")).collect()
    }

    /// The permutation `i ↦ ī` induced by complex conjugation of characters.
    pub fn conjugate_permutation(&self) -> Vec<usize> {
        self.simple_characters()
            .iter()
            .map(|c| self.simple_index_of(&c.conj()).expect("conjugate of a simple is simple"))
            .collect()
    }

    /// Multiplicities `m_i = (χ, χ_i)`; fails unless all are nonnegative
    /// integers and `Σ m_i χ_i = χ` exactly.
    pub fn decompose(&self, chi: &PairFunction) -> Result<Vec<u64>> {
        let basis = self.simple_characters();
        let mut mult = Vec::with_capacity(basis.len());
        for b in basis {
            let m = chi.inner_product(b)?;
            match m.to_integer() {
                Some(k) if k >= 0 => mult.push(k as u64),
                _ => return Err(Error::NotACharacter(format!("multiplicity {} is not a nonnegative integer", m))),
            }
        }
        let mut rebuilt = PairFunction::zero(&self.group);
        for (b, &m) in basis.iter().zip(&mult) {
            if m > 0 {
                rebuilt = rebuilt.add(&b.scale(&Cyclotomic::from_int(m as i64)));
            }
        }
        if rebuilt != *chi {
            return Err(Error::NotACharacter("decomposition does not reconstruct the input".into()));
        }
        Ok(mult)
    }
}

/// Basis, S and T of `Z(G)` together.
#[derive(Debug, Clone)]
pub struct ModularMatrices {
    pub basis: Vec<SimpleObject>,
    pub s: CycMatrix,
    pub t: CycMatrix,
}

impl ModularMatrices {
    pub fn of(double: &Double) -> Self {
        ModularMatrices { basis: double.simples().to_vec(), s: double.s_matrix(), t: double.t_matrix() }
    }

    pub fn verify(&self, group_order: usize) -> ModularityReport {
        verify_modularity(&self.s, &self.t, group_order)
    }
}

pub fn simple_objects(g: &Arc<FiniteGroup>) -> Result<Vec<SimpleObject>> {
    Ok(Double::new(g)?.simples().to_vec())
}

pub fn s_matrix(g: &Arc<FiniteGroup>) -> Result<CycMatrix> {
    Ok(Double::new(g)?.s_matrix())
}

pub fn t_matrix(g: &Arc<FiniteGroup>) -> Result<CycMatrix> {
    Ok(Double::new(g)?.t_matrix())
}

pub fn global_dimension(g: &Arc<FiniteGroup>) -> Result<usize> {
    Ok(Double::new(g)?.global_dimension())
}

pub fn dual_character(chi: &PairFunction) -> PairFunction {
    chi.dual()
}

pub fn pair_inner_product(chi: &PairFunction, psi: &PairFunction) -> Result<Cyclotomic> {
    chi.inner_product(psi)
}

/// Generators of the modular group acting on pair functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Generator {
    S,
    T,
}

pub fn sl2_act(gen: Sl2Generator, chi: &PairFunction) -> PairFunction {
    match gen {
        Sl2Generator::S => chi.act_s(),
        Sl2Generator::T => chi.act_t(),
    }
}

/// Outcome of [`verify_modularity`]; failures are reported, not raised.
#[derive(Debug, Clone)]
pub struct ModularityReport {
    pub symmetric: bool,
    pub invertible: bool,
    pub s4_identity: bool,
    /// `λ` with `(TS)³ = λ·S²`, when it exists.
    pub lambda: Option<Cyclotomic>,
    pub unit_row_positive: bool,
}

impl ModularityReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.invertible && self.s4_identity && self.lambda.is_some() && self.unit_row_positive
    }
}

pub fn verify_modularity(s: &CycMatrix, t: &CycMatrix, group_order: usize) -> ModularityReport {
    let n = s.size();
    let s2 = s.mul(s);
    let s4 = s2.mul(&s2);
    let s4_identity = s4 == CycMatrix::identity(n);
    // S⁴ = 1 exhibits an inverse; otherwise fall back to S² being a permutation matrix.
    let invertible = s4_identity || is_monomial(&s2);
    let ts = t.mul(s);
    let ts3 = ts.mul(&ts).mul(&ts);
    let lambda = ts3.scalar_multiple_of(&s2);
    let unit_row_positive = (0..n).all(|j| {
        s.get(0, j).scale(Rational::from_integer(group_order as i128)).to_rational().is_some_and(|q| q.is_positive())
    });
    ModularityReport { symmetric: s.is_symmetric(), invertible, s4_identity, lambda, unit_row_positive }
}

fn is_monomial(m: &CycMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..n).filter(|&j| !m.get(i, j).is_zero()).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| !m.get(i, j).is_zero()).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn double(name: &str) -> Double {
        Double::new(&Arc::new(build_group(name).unwrap())).unwrap()
    }

    fn golden_s3_s() -> CycMatrix {
        let raw = [
            [1, 1, 2, 2, 2, 2, 3, 3],
            [1, 1, 2, 2, 2, 2, -3, -3],
            [2, 2, 4, -2, -2, -2, 0, 0],
            [2, 2, -2, 4, -2, -2, 0, 0],
            [2, 2, -2, -2, -2, 4, 0, 0],
            [2, 2, -2, -2, 4, -2, 0, 0],
            [3, -3, 0, 0, 0, 0, 3, -3],
            [3, -3, 0, 0, 0, 0, -3, 3],
        ];
        CycMatrix::from_rows(raw.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_ratio(x, 6)).collect()).collect())
    }

    #[test]
    fn s3_modular_data() {
        let d = double("S3");
        assert_eq!(d.rank(), 8);
        assert_eq!(d.s_matrix(), golden_s3_s());
        let w = Cyclotomic::zeta(3, 1);
        let one = Cyclotomic::one();
        let t = vec![one.clone(), one.clone(), one.clone(), one.clone(), w.clone(), w.conj(), one, Cyclotomic::from_int(-1)];
        assert_eq!(d.t_diagonal(), t);
        let labels: Vec<&str> = d.simples().iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, ["(e,0)", "(e,1)", "(e,2)", "((123),0)", "((123),1)", "((123),2)", "((12),0)", "((12),1)"]);
    }

    #[test]
    fn small_cases() {
        let d = double("1");
        assert_eq!(d.rank(), 1);
        assert_eq!(*d.s_matrix().get(0, 0), Cyclotomic::one());
        let c2 = double("C2");
        assert_eq!(c2.rank(), 4);
        assert_eq!(*c2.s_matrix().get(0, 0), Cyclotomic::from_ratio(1, 2));
        let t: Vec<i128> = c2.t_diagonal().iter().map(|x| x.to_integer().unwrap()).collect();
        assert_eq!(t, vec![1, 1, 1, -1]);
        let report = verify_modularity(&d.s_matrix(), &d.t_matrix(), 1);
        assert!(report.passed());
        assert_eq!(report.lambda, Some(Cyclotomic::one()));
    }

    #[test]
    fn s_independent_of_witnesses() {
        for name in ["S3", "D4", "C3:2xC2"] {
            let d = double(name);
            let s = d.s_matrix();
            for seed in 0..3 {
                assert_eq!(d.s_matrix_with(Witnesses::Seeded(seed)), s, "{name}");
            }
        }
    }

    #[test]
    fn s3_characters() {
        let d = double("S3");
        let g = d.group().clone();
        let t = g.element_by_label("(12)").unwrap();
        let chars = d.simple_characters();
        // Unit object.
        for &(f, h) in g.commuting_pairs().pairs() {
            assert_eq!(chars[0].get(f, h), Cyclotomic::from_int(i64::from(f == 0)));
        }
        assert_eq!(chars[7].get(t, t), Cyclotomic::from_int(-1));
        assert!(chars[6].get(0, 0).is_zero());
        assert_eq!(chars[6].dimension(), Cyclotomic::from_int(3));
        for (i, c) in chars.iter().enumerate() {
            assert!(c.is_conjugation_invariant());
            assert_eq!(c.dual().dual(), *c);
            assert_eq!(c.act_s().act_s(), c.dual());
            assert_eq!(c.dimension(), Cyclotomic::from_int(d.dimension(i) as i64));
            for (j, e) in chars.iter().enumerate() {
                assert_eq!(c.inner_product(e).unwrap(), Cyclotomic::from_int(i64::from(i == j)));
            }
        }
        assert_eq!(d.dual_permutation(), (0..8).collect::<Vec<_>>());
        assert_eq!(d.conjugate_permutation(), vec![0, 1, 2, 3, 5, 4, 6, 7]);
        assert_eq!(chars[0].act_t(), chars[0]);
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(double("S3").global_dimension(), 36);
        assert_eq!(double("1").global_dimension(), 1);
        assert_eq!(double("S3xS3").global_dimension(), 1296);
    }

    #[test]
    fn sl2_preserves_inner_product() {
        let d = double("D4");
        let chars = d.simple_characters();
        for i in [0, 3, 7, 12] {
            for j in [1, 3, 9] {
                let (a, b) = (&chars[i], &chars[j]);
                let ip = a.inner_product(b).unwrap();
                assert_eq!(a.act_s().inner_product(&b.act_s()).unwrap(), ip);
                assert_eq!(a.act_t().inner_product(&b.act_t()).unwrap(), ip);
            }
        }
    }
}
