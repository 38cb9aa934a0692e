//! Indecomposable commutative separable algebras in `Z(G)`: the data
//! `(H, F, γ, ε)`, their classification up to isomorphism, their characters
//! and the modular invariants of trivialising algebras over products.

use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;

use crate::cohomology::{cayley_tree, classes_under, generating_set, outer_generators, second_cohomology_mod, Cocycle2};
use crate::cyclotomic::{Cyclotomic, Rational, RootSum};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{all_subgroups, check_cap, subgroup_classes, FiniteGroup, Subgroup};
use crate::modular::{Double, PairFunction};
use crate::zmod::{kernel, solve, ModMatrix};

/// Upper bound on the number of `ε` solutions enumerated for one `(H, F, γ)`.
pub const EPSILON_SOLUTION_CAP: u64 = 1 << 16;

/// The datum `(H, F, γ, ε)` of an indecomposable commutative separable algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDatum {
    h: Subgroup,
    f: Subgroup,
    gamma: Cocycle2,
    /// `ε_h(f)` at `pos_H(h)·|F| + pos_F(f)`, exponents modulo `γ.modulus()`.
    epsilon: Vec<i64>,
}

impl AlgebraDatum {
    /// Validating constructor; `epsilon(h, f)` is an exponent of `ζ_N`, `N = γ.modulus()`.
    pub fn new(h: &Subgroup, f: &Subgroup, gamma: &Cocycle2, epsilon: impl Fn(usize, usize) -> i64) -> Result<Self> {
        let n = gamma.modulus() as i64;
        let table = h.members().iter().flat_map(|&a| f.members().iter().map(move |&b| (a, b)));
        let epsilon = table.map(|(a, b)| epsilon(a, b).rem_euclid(n)).collect();
        let datum = AlgebraDatum { h: h.clone(), f: f.clone(), gamma: gamma.clone(), epsilon };
        datum.check_equations()?;
        Ok(datum)
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn f(&self) -> &Subgroup {
        &self.f
    }

    pub fn gamma(&self) -> &Cocycle2 {
        &self.gamma
    }

    pub fn modulus(&self) -> u64 {
        self.gamma.modulus()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.h.parent()
    }

    /// `ε_h(f)` as an exponent of `ζ_N`.
    pub fn epsilon(&self, h: usize, f: usize) -> i64 {
        let ph = self.h.position(h).expect("h in H");
        let pf = self.f.position(f).expect("f in F");
        self.epsilon[ph * self.f.order() + pf]
    }

    pub fn is_trivialising(&self) -> bool {
        self.f.order() == self.h.order()
    }

    /// `ε_f(f) = 1` for all `f ∈ F`.
    pub fn twist_check(&self) -> bool {
        self.f.members().iter().all(|&f| self.epsilon(f, f) == 0)
    }

    /// Checks normality, the domain of `γ` and the three `ε` identities.
    pub fn check_equations(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentAlgebra(msg));
        if !self.f.is_normal_in(&self.h) {
            return bad("F is not normal in H".into());
        }
        if self.gamma.domain() != &self.f {
            return bad("γ is not defined on F".into());
        }
        let g = self.group();
        let n = self.modulus() as i64;
        let eps = |a, b| self.epsilon(a, b);
        let gam = |a, b| self.gamma.value(a, b);
        for &x in self.h.members() {
            for &y in self.h.members() {
                for &f in self.f.members() {
                    if (eps(g.mul(x, y), f) - eps(x, g.conj(y, f)) - eps(y, f)).rem_euclid(n) != 0 {
                        return bad(format!("ε fails the composition rule at ({x}, {y}, {f})"));
                    }
                }
            }
        }
        for &x in self.h.members() {
            for &a in self.f.members() {
                for &b in self.f.members() {
                    let lhs = gam(a, b) + eps(x, g.mul(a, b));
                    let rhs = eps(x, a) + eps(x, b) + gam(g.conj(x, a), g.conj(x, b));
                    if (lhs - rhs).rem_euclid(n) != 0 {
                        return bad(format!("ε is not multiplicative at ({x}, {a}, {b})"));
                    }
                }
            }
        }
        for &a in self.f.members() {
            for &b in self.f.members() {
                if (eps(a, b) - gam(a, b) + gam(g.conj(a, b), a)).rem_euclid(n) != 0 {
                    return bad(format!("ε violates commutativity at ({a}, {b})"));
                }
            }
        }
        Ok(())
    }

    /// The same datum with exponents in `Z/m`, `N | m`.
    pub fn rescaled(&self, m: u64) -> Self {
        let factor = (m / self.modulus()) as i64;
        AlgebraDatum {
            h: self.h.clone(),
            f: self.f.clone(),
            gamma: self.gamma.rescaled(m),
            epsilon: self.epsilon.iter().map(|e| e * factor).collect(),
        }
    }

    /// The datum transported along conjugation by `x`, supported on `xHx⁻¹ ⊳ xFx⁻¹`.
    pub fn conjugate(&self, x: usize) -> Self {
        let g = self.group().clone();
        let xi = g.inv(x);
        let (h, f) = (self.h.conjugate(x), self.f.conjugate(x));
        let epsilon = h
            .members()
            .iter()
            .flat_map(|&a| f.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.epsilon(g.conj(xi, a), g.conj(xi, b)))
            .collect();
        AlgebraDatum { h, f, gamma: self.gamma.conjugate(x), epsilon }
    }

    /// Isomorphism of the algebras in `Z(G)`: a conjugation followed by a
    /// rescaling `e_f ↦ c(f) e_f`.
    pub fn is_isomorphic(&self, other: &AlgebraDatum) -> bool {
        if **self.group() != **other.group() || self.h.order() != other.h.order() || self.f.order() != other.f.order() {
            return false;
        }
        let l = self.modulus().lcm(&other.modulus());
        let (a, b) = (self.rescaled(l), other.rescaled(l));
        a.h.conjugators_to(&b.h).into_iter().any(|x| a.f.conjugate(x) == b.f && related_by_cochain(&a.conjugate(x), &b))
    }

    /// The character of `k[F, γ, ε]` in `Z(H)`: `(f, h) ↦ ε_h(f)` on `F`, zero off `F`.
    fn local_exponent(&self, f: usize, h: usize) -> Option<i64> {
        self.f.contains(f).then(|| self.epsilon(h, f))
    }

    /// The character of `A(H, F, γ, ε)` on commuting pairs of `G`.
    pub fn character(&self) -> PairFunction {
        transfer_roots(&self.h, self.modulus(), |f, h| self.local_exponent(f, h))
    }

    /// `H⊳F` written with generator labels.
    pub fn label(&self) -> String {
        format!("{}⊳{}", subgroup_label(&self.h), subgroup_label(&self.f))
    }
}

/// Same `H`, `F` and modulus `L`: solves `c(fg) − c(f) − c(g) = γ' − γ` and
/// `c(hfh⁻¹) − c(f) = ε' − ε` for `c : F → μ_{L²}`.
fn related_by_cochain(a: &AlgebraDatum, b: &AlgebraDatum) -> bool {
    let g = a.group();
    let f = &a.f;
    let l = a.modulus() as i64;
    let k = f.order();
    let pos = |x| f.position(x).expect("element of F");
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &x in f.members() {
        for &y in f.members() {
            let mut r = vec![0i64; k];
            r[pos(g.mul(x, y))] += 1;
            r[pos(x)] -= 1;
            r[pos(y)] -= 1;
            rows.push(r);
            rhs.push(l * (b.gamma.value(x, y) - a.gamma.value(x, y)));
        }
    }
    for &h in a.h.members() {
        for &x in f.members() {
            let mut r = vec![0i64; k];
            r[pos(g.conj(h, x))] += 1;
            r[pos(x)] -= 1;
            rows.push(r);
            rhs.push(l * (b.epsilon(h, x) - a.epsilon(h, x)));
        }
    }
    solve(&ModMatrix::from_rows((l * l) as u64, &rows), &rhs).is_some()
}

/// A trivialising algebra `A(H, γ)`, i.e. `F = H` with `ε` forced by `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialisingAlgebra {
    pub h: Subgroup,
    pub gamma: Cocycle2,
}

impl TrivialisingAlgebra {
    pub fn new(gamma: &Cocycle2) -> Self {
        TrivialisingAlgebra { h: gamma.domain().clone(), gamma: gamma.clone() }
    }

    /// The datum with `ε_h(f) = γ(h, f) − γ(hfh⁻¹, h)`.
    pub fn datum(&self) -> AlgebraDatum {
        let g = self.h.parent().clone();
        AlgebraDatum::new(&self.h, &self.h, &self.gamma, |h, f| self.gamma.value(h, f) - self.gamma.value(g.conj(h, f), h))
            .expect("a cocycle always defines a trivialising algebra")
    }
}

/// `χ(f, g) = (1/|H|) Σ_{x : xfx⁻¹, xgx⁻¹ ∈ H} γ(xgx⁻¹ | xfx⁻¹)`: the trace of `g`
/// on the degree-`f` part of the induced algebra.
pub fn algebra_character(t: &TrivialisingAlgebra) -> PairFunction {
    transfer_roots(&t.h, t.gamma.modulus(), |f, g| Some(t.gamma.pairing(g, f)))
}

/// Transfer of a function on commuting pairs of `H`, given with `H`'s elements
/// identified with the member positions of `h` (as in [`Subgroup::as_group`]).
pub fn transfer_character(h: &Subgroup, chi: &PairFunction) -> Result<PairFunction> {
    if chi.group().order() != h.order() {
        return Err(Error::GroupMismatch);
    }
    let pos = |x| h.position(x).expect("element of H");
    Ok(transfer_with(h, |a, b| chi.get(pos(a), pos(b))))
}

/// `χ̄(f, g) = (1/|H|) Σ_{x : xfx⁻¹, xgx⁻¹ ∈ H} χ(xfx⁻¹, xgx⁻¹)` for `χ` given on
/// elements of the ambient group.
pub fn transfer_with(h: &Subgroup, chi: impl Fn(usize, usize) -> Cyclotomic + Sync + Send) -> PairFunction {
    let g = h.parent();
    let scale = Rational::new(1, h.order() as i128);
    PairFunction::from_fn(g, |a, b| {
        let total: Cyclotomic = (0..g.order())
            .filter_map(|x| {
                let (ca, cb) = (g.conj(x, a), g.conj(x, b));
                (h.contains(ca) && h.contains(cb)).then(|| chi(ca, cb))
            })
            .sum();
        total.scale(scale)
    })
}

/// Transfer of a `μ_N`-valued local character given by exponents (`None` = 0).
fn transfer_roots(h: &Subgroup, n: u64, chi: impl Fn(usize, usize) -> Option<i64> + Sync + Send) -> PairFunction {
    let g = h.parent();
    let weight = Rational::new(1, h.order() as i128);
    PairFunction::from_fn(g, |a, b| {
        let mut sum = RootSum::new(n as usize);
        for x in 0..g.order() {
            let (ca, cb) = (g.conj(x, a), g.conj(x, b));
            if h.contains(ca) && h.contains(cb) {
                if let Some(k) = chi(ca, cb) {
                    sum.add_power(k, weight);
                }
            }
        }
        sum.finish()
    })
}

/// All `ε` solving the three identities for `γ`, each returned as a full datum.
///
/// Solutions are first sought in `μ_N`, `N = γ.modulus()`. Any two solutions
/// differ by a `μ_N`-valued term, but a representative of the class of `γ`
/// may need `ε` in `μ_{N²}` (a `k*`-coboundary shifts `ε` by `δc` with `c` in
/// `μ_{N²}`), so an empty result is retried there. Empty when none exist.
pub fn solve_epsilon(h: &Subgroup, f: &Subgroup, gamma: &Cocycle2) -> Result<Vec<AlgebraDatum>> {
    let found = solve_epsilon_in(h, f, gamma)?;
    if !found.is_empty() {
        return Ok(found);
    }
    let n = gamma.modulus();
    solve_epsilon_in(h, f, &gamma.rescaled(n * n))
}

/// All `ε : H × F → μ_N` (`N = γ.modulus()`, a multiple of `|H|`) solving the
/// three identities, each returned as a full datum. Empty when none exist.
fn solve_epsilon_in(h: &Subgroup, f: &Subgroup, gamma: &Cocycle2) -> Result<Vec<AlgebraDatum>> {
    if !f.is_subgroup_of(h) || !f.is_normal_in(h) {
        return Err(Error::InconsistentAlgebra("F must be a normal subgroup of H".into()));
    }
    if gamma.domain() != f {
        return Err(Error::InconsistentAlgebra("γ must be defined on F".into()));
    }
    let n = gamma.modulus();
    if !n.is_multiple_of(h.order() as u64) {
        return Err(Error::InconsistentAlgebra(format!("modulus {n} is not a multiple of |H| = {}", h.order())));
    }
    let g = h.parent();
    let (kh, kf) = (h.order(), f.order());
    let gens = generating_set(h);
    let tree = cayley_tree(h, &gens);
    let unknowns = gens.len() * kf;
    let pos_f = |x| f.position(x).expect("element of F");
    let pos_h = |x| h.position(x).expect("element of H");

    // ε_{ps}(f) = ε_p(s f s⁻¹) + ε_s(f) along the spanning tree; the unknowns are ε_s.
    let mut expr = vec![Vec::<Vec<i64>>::new(); kh];
    expr[0] = vec![vec![0; unknowns]; kf];
    for &q in &tree.order[1..] {
        let (p, si) = tree.parent[q].expect("tree edge");
        let s = gens[si];
        let rows = f
            .members()
            .iter()
            .enumerate()
            .map(|(pf, &x)| {
                let mut r = expr[p][pos_f(g.conj(s, x))].clone();
                r[si * kf + pf] += 1;
                r
            })
            .collect();
        expr[q] = rows;
    }

    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs = Vec::new();
    for &(p, si) in &tree.non_tree {
        let s = gens[si];
        let q = pos_h(g.mul(h.members()[p], s));
        for (pf, &x) in f.members().iter().enumerate() {
            let mut r = expr[q][pf].clone();
            for (ri, v) in r.iter_mut().zip(&expr[p][pos_f(g.conj(s, x))]) {
                *ri -= v;
            }
            r[si * kf + pf] -= 1;
            rows.push(r);
            rhs.push(0);
        }
    }
    for &s in &gens {
        let e = &expr[pos_h(s)];
        for &a in f.members() {
            for &b in f.members() {
                let mut r = e[pos_f(g.mul(a, b))].clone();
                for (ri, (x, y)) in r.iter_mut().zip(e[pos_f(a)].iter().zip(&e[pos_f(b)])) {
                    *ri -= x + y;
                }
                rows.push(r);
                rhs.push(gamma.value(g.conj(s, a), g.conj(s, b)) - gamma.value(a, b));
            }
        }
    }
    for &a in f.members() {
        for (pb, &b) in f.members().iter().enumerate() {
            rows.push(expr[pos_h(a)][pb].clone());
            rhs.push(gamma.value(a, b) - gamma.value(g.conj(a, b), a));
        }
    }

    let system = ModMatrix::from_rows(n, &rows);
    let Some(particular) = solve(&system, &rhs) else {
        return Ok(Vec::new());
    };
    let basis: Vec<(Vec<i64>, u64)> = kernel(&system).into_iter().filter(|(_, o)| *o > 1).collect();
    let count: u64 = basis.iter().map(|(_, o)| *o).product();
    if count > EPSILON_SOLUTION_CAP {
        return Err(Error::CapExceeded { what: "ε solutions".into(), size: count as usize, cap: EPSILON_SOLUTION_CAP as usize });
    }
    let m = n as i64;
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut x = particular.clone();
        for ((v, _), &d) in basis.iter().zip(&digits) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi = (*xi + d as i64 * vi).rem_euclid(m);
            }
        }
        let table: Vec<i64> = (0..kh)
            .flat_map(|ph| (0..kf).map(move |pf| (ph, pf)))
            .map(|(ph, pf)| expr[ph][pf].iter().zip(&x).map(|(a, b)| a * b % m).sum::<i64>().rem_euclid(m))
            .collect();
        let datum = AlgebraDatum { h: h.clone(), f: f.clone(), gamma: gamma.clone(), epsilon: table };
        datum.check_equations()?;
        out.push(datum);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < basis[i].1 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// One datum per isomorphism class of indecomposable commutative separable
/// algebras in `Z(G)`. Trivialising algebras come first, each part ordered by
/// index `[H:F]` and then by decreasing `|H|`.
pub fn classify_algebras(g: &Arc<FiniteGroup>) -> Result<Vec<AlgebraDatum>> {
    check_cap("algebra classification", g.order())?;
    let modulus = g.order() as u64;
    let subgroups = all_subgroups(g)?;
    let mut pairs = Vec::new();
    for h in subgroup_classes(g)? {
        let normalizer = h.normalizer();
        let mut seen: Vec<Subgroup> = Vec::new();
        for f in subgroups.iter().filter(|f| f.is_subgroup_of(&h) && f.is_normal_in(&h)) {
            if seen.contains(f) {
                continue;
            }
            for &x in normalizer.members() {
                let c = f.conjugate(x);
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            pairs.push((h.clone(), f.clone()));
        }
    }
    let found = exec::map(&pairs, |(h, f)| -> Result<Vec<AlgebraDatum>> {
        let stabilizer = h.normalizer().intersection(&f.normalizer());
        let coh = second_cohomology_mod(f, modulus)?;
        let mut classes: Vec<AlgebraDatum> = Vec::new();
        for idx in classes_under(&coh, &outer_generators(&stabilizer, f)) {
            for datum in solve_epsilon(h, f, &coh.representatives()[idx])? {
                if !classes.iter().any(|c| c.is_isomorphic(&datum)) {
                    classes.push(datum);
                }
            }
        }
        Ok(classes)
    });
    let mut out = Vec::new();
    for r in found {
        out.extend(r?);
    }
    out.sort_by_key(|a| (!a.is_trivialising(), a.h.order() / a.f.order(), std::cmp::Reverse(a.h.order())));
    Ok(out)
}

/// Coefficients of a partition function `Σ m_ij χ_i χ_j*` over `Z(G) ⊠ Z(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMatrix {
    /// Coefficient of `χ_i ⊗ χ_j` in the product basis.
    raw: Vec<Vec<u64>>,
    /// Coefficient of `χ_i · conj(χ_j)`.
    m: Vec<Vec<u64>>,
}

impl InvariantMatrix {
    pub fn from_entries(m: Vec<Vec<u64>>) -> Self {
        InvariantMatrix { raw: m.clone(), m }
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.m
    }

    pub fn raw(&self) -> &[Vec<u64>] {
        &self.raw
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.m[i][j]
    }

    pub fn rows(&self) -> usize {
        self.m.len()
    }

    pub fn cols(&self) -> usize {
        self.m.first().map_or(0, Vec::len)
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> =
            self.m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x as i128)).collect()).collect();
        let mut rank = 0;
        for col in 0..self.cols() {
            let Some(p) = (rank..a.len()).find(|&r| a[r][col] != Rational::from_integer(0)) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && a[r][col] != Rational::from_integer(0) {
                    let t = a[r][col] / a[rank][col];
                    for c in 0..a[r].len() {
                        let v = a[rank][c];
                        a[r][c] -= t * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rendering in terms of `χ_i`: connected blocks that are a multiple of
    /// an outer product `u v^T` are written `k(u)(v)^*`, or `k|u|^2` when
    /// `u = v`; other blocks term by term.
    pub fn partition_function(&self) -> String {
        let blocks = self.blocks();
        let mut terms = Vec::new();
        for (rows, cols) in blocks {
            if let Some((k, u, v)) = self.rank_one(&rows, &cols) {
                let (su, sv) = (linear_form(&rows, &u), linear_form(&cols, &v));
                let wrap = |s: &str, many: bool| if many { format!("({s})") } else { s.to_string() };
                let coef = if k == 1 { String::new() } else { k.to_string() };
                if rows == cols && u == v {
                    terms.push(format!("{coef}|{su}|^2"));
                } else {
                    terms.push(format!("{coef}{}{}^*", wrap(&su, rows.len() > 1 || coef_needed(&u)), wrap(&sv, cols.len() > 1 || coef_needed(&v))));
                }
            } else {
                for &i in &rows {
                    for &j in &cols {
                        let x = self.m[i][j];
                        if x == 0 {
                            continue;
                        }
                        let coef = if x == 1 { String::new() } else { x.to_string() };
                        if i == j {
                            terms.push(format!("{coef}|χ{i}|^2"));
                        } else {
                            terms.push(format!("{coef}χ{i}χ{j}^*"));
                        }
                    }
                }
            }
        }
        terms.join("+")
    }

    /// Connected components of the bipartite support graph, in row order.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (nr, nc) = (self.rows(), self.cols());
        let mut row_seen = vec![false; nr];
        let mut col_seen = vec![false; nc];
        let mut out = Vec::new();
        for start in 0..nr {
            if row_seen[start] || self.m[start].iter().all(|&x| x == 0) {
                continue;
            }
            let (mut rows, mut cols) = (vec![start], Vec::new());
            row_seen[start] = true;
            let mut stack = vec![(true, start)];
            while let Some((is_row, k)) = stack.pop() {
                if is_row {
                    for j in 0..nc {
                        if self.m[k][j] == 0 || col_seen[j] {
                            continue;
                        }
                        col_seen[j] = true;
                        cols.push(j);
                        stack.push((false, j));
                    }
                } else {
                    for i in 0..nr {
                        if self.m[i][k] == 0 || row_seen[i] {
                            continue;
                        }
                        row_seen[i] = true;
                        rows.push(i);
                        stack.push((true, i));
                    }
                }
            }
            rows.sort_unstable();
            cols.sort_unstable();
            out.push((rows, cols));
        }
        out
    }

    /// `block = k·u v^T` with `u`, `v` primitive, if possible.
    fn rank_one(&self, rows: &[usize], cols: &[usize]) -> Option<(u64, Vec<u64>, Vec<u64>)> {
        let first = &self.m[rows[0]];
        let v0: Vec<u64> = cols.iter().map(|&j| first[j]).collect();
        let gv = v0.iter().fold(0u64, |a, &b| a.gcd(&b));
        let v: Vec<u64> = v0.iter().map(|x| x / gv).collect();
        let j0 = cols.iter().position(|&j| first[j] != 0)?;
        let col0: Vec<u64> = rows.iter().map(|&i| self.m[i][cols[j0]]).collect();
        let scaled: Vec<u64> = col0.iter().map(|x| x / v[j0]).collect();
        if col0.iter().any(|x| x % v[j0] != 0) {
            return None;
        }
        let gu = scaled.iter().fold(0u64, |a, &b| a.gcd(&b));
        let u: Vec<u64> = scaled.iter().map(|x| x / gu).collect();
        let ok = rows.iter().enumerate().all(|(a, &i)| cols.iter().enumerate().all(|(b, &j)| self.m[i][j] == gu * u[a] * v[b]));
        ok.then_some((gu, u, v))
    }
}

fn coef_needed(u: &[u64]) -> bool {
    u.iter().any(|&x| x > 1)
}

fn linear_form(idx: &[usize], coeffs: &[u64]) -> String {
    let mut s = String::new();
    for (k, (&i, &c)) in idx.iter().zip(coeffs).enumerate() {
        if k > 0 {
            s.push('+');
        }
        if c != 1 {
            let _ = write!(s, "{c}");
        }
        let _ = write!(s, "χ{i}");
    }
    s
}

/// The modular invariant of the trivialising algebra `A(U, γ)` in
/// `Z(G×Q) ≅ Z(G) ⊠ Z(Q)`, `U = γ.domain()`.
pub fn modular_invariant(dg: &Double, dq: &Double, gamma: &Cocycle2) -> Result<InvariantMatrix> {
    let p = gamma.domain().parent().clone();
    let (g, q) = p.factors().ok_or(Error::NotAProduct)?;
    if **g != **dg.group() || **q != **dq.group() {
        return Err(Error::GroupMismatch);
    }
    let chi = algebra_character(&TrivialisingAlgebra::new(gamma));
    let raw = decompose_product(dg, dq, &chi)?;
    let conj = dq.conjugate_permutation();
    let m = raw.iter().map(|row| (0..row.len()).map(|j| row[conj[j]]).collect()).collect();
    Ok(InvariantMatrix { raw, m })
}

/// Multiplicities of `χ_i ⊗ χ_j` in a character of `Z(G×Q)`, with exact
/// reconstruction enforced.
pub fn decompose_product(dg: &Double, dq: &Double, chi: &PairFunction) -> Result<Vec<Vec<u64>>> {
    let p = chi.group();
    let (pg, pq) = (dg.group().commuting_pairs(), dq.group().commuting_pairs());
    let (bg, bq) = (dg.simple_characters(), dq.simple_characters());
    let pair_index = |a: usize, b: usize| {
        let ((g1, g2), (q1, q2)) = (pg.get(a), pq.get(b));
        p.commuting_pairs().index_of(p.pair(g1, q1), p.pair(g2, q2)).expect("product of commuting pairs commutes")
    };
    // t[a][j] = Σ_b X(a, b)·conj(χ_j(b)), over commuting pairs a of G and b of Q.
    let t: Vec<Vec<Cyclotomic>> = exec::map_range(pg.len(), |a| {
        (0..bq.len())
            .map(|j| (0..pq.len()).map(|b| &chi.values()[pair_index(a, b)] * &bq[j].values()[b].conj()).sum())
            .collect()
    });
    let scale = Rational::new(1, p.order() as i128);
    let rows = exec::map_range(bg.len(), |i| -> Result<Vec<u64>> {
        (0..bq.len())
            .map(|j| {
                let v: Cyclotomic = (0..pg.len()).map(|a| &t[a][j] * &bg[i].values()[a].conj()).sum();
                let v = v.scale(scale);
                match v.to_integer() {
                    Some(k) if k >= 0 => Ok(k as u64),
                    _ => Err(Error::NotACharacter(format!("product multiplicity ({i},{j}) is {v}"))),
                }
            })
            .collect()
    });
    let raw = rows.into_iter().collect::<Result<Vec<_>>>()?;
    for a in 0..pg.len() {
        for b in 0..pq.len() {
            let mut sum = Cyclotomic::zero();
            for (i, row) in raw.iter().enumerate() {
                for (j, &m) in row.iter().enumerate() {
                    if m > 0 {
                        let term = &bg[i].values()[a] * &bq[j].values()[b];
                        sum += &term.scale(Rational::from_integer(m as i128));
                    }
                }
            }
            if sum != chi.values()[pair_index(a, b)] {
                return Err(Error::NotACharacter("product decomposition does not reconstruct the input".into()));
            }
        }
    }
    Ok(raw)
}

/// Outcome of [`verify_invariance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceReport {
    pub s_fixed: bool,
    pub t_fixed: bool,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.s_fixed && self.t_fixed
    }
}

/// Whether `χ` is fixed pointwise by the S and T reindexings.
pub fn verify_invariance(chi: &PairFunction) -> InvarianceReport {
    InvarianceReport { s_fixed: chi.act_s() == *chi, t_fixed: chi.act_t() == *chi }
}

/// Generators of a subgroup in angle brackets, `{e}` for the trivial one.
pub fn subgroup_label(h: &Subgroup) -> String {
    let g = h.parent();
    let gens = generating_set(h);
    if gens.is_empty() {
        return "{e}".into();
    }
    let parts: Vec<String> = gens.iter().map(|&x| g.label(x)).collect();
    format!("⟨{}⟩", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(name).unwrap())
    }

    fn sub(g: &Arc<FiniteGroup>, labels: &[&str]) -> Subgroup {
        let gens: Vec<usize> = labels.iter().map(|l| g.element_by_label(l).unwrap()).collect();
        Subgroup::generated_by(g, &gens)
    }

    #[test]
    fn s3_classification() {
        let g = grp("S3");
        let algs = classify_algebras(&g).unwrap();
        let shape: Vec<(usize, usize)> = algs.iter().map(|a| (a.h().order(), a.f().order())).collect();
        assert_eq!(shape, vec![(6, 6), (3, 3), (2, 2), (1, 1), (6, 3), (2, 1), (3, 1), (6, 1)]);
        let d = Double::new(&g).unwrap();
        let decomp: Vec<Vec<u64>> = algs[..4].iter().map(|a| d.decompose(&a.character()).unwrap()).collect();
        assert_eq!(decomp[0], vec![1, 0, 0, 1, 0, 0, 1, 0]);
        assert_eq!(decomp[1], vec![1, 1, 0, 2, 0, 0, 0, 0]);
        assert_eq!(decomp[2], vec![1, 0, 1, 0, 0, 0, 1, 0]);
        assert_eq!(decomp[3], vec![1, 1, 2, 0, 0, 0, 0, 0]);
        assert!(algs.iter().all(AlgebraDatum::twist_check));
    }

    #[test]
    fn small_classifications() {
        assert_eq!(classify_algebras(&grp("1")).unwrap().len(), 1);
        assert_eq!(classify_algebras(&grp("C2")).unwrap().len(), 3);
    }

    #[test]
    fn epsilon_counts() {
        let g = grp("S3");
        let s3 = Subgroup::whole(&g);
        let a3 = sub(&g, &["(123)"]);
        let sols = solve_epsilon(&s3, &a3, &Cocycle2::trivial(&a3, 6)).unwrap();
        // ε_t ∈ Hom(A3, μ3) for a transposition t determines everything.
        assert_eq!(sols.len(), 3);
        assert!(sols.windows(2).all(|w| w[0].is_isomorphic(&w[1])));
        let e = Subgroup::trivial(&g);
        assert_eq!(solve_epsilon(&s3, &e, &Cocycle2::trivial(&e, 6)).unwrap().len(), 1);
        let forced = solve_epsilon(&s3, &s3, &Cocycle2::trivial(&s3, 6)).unwrap();
        assert_eq!(forced.len(), 1);
        assert_eq!(forced[0], TrivialisingAlgebra::new(&Cocycle2::trivial(&s3, 6)).datum());
    }

    #[test]
    fn every_class_of_a4_extends_over_s4() {
        // The nontrivial class of A4 is only reachable with ε in μ_{N²} for
        // some representatives.
        let g = grp("S4");
        let s4 = Subgroup::whole(&g);
        let a4 = sub(&g, &["(123)", "(12)(34)"]);
        let coh = crate::cohomology::second_cohomology_mod(&a4, 24).unwrap();
        assert_eq!(coh.order(), 2);
        for gamma in coh.representatives() {
            let sols = solve_epsilon(&s4, &a4, gamma).unwrap();
            assert!(!sols.is_empty());
            assert!(sols.iter().all(|s| s.check_equations().is_ok() && s.twist_check()));
        }
    }

    #[test]
    fn epsilon_brute_force_s3_over_a3() {
        let g = grp("S3");
        let s3 = Subgroup::whole(&g);
        let a3 = sub(&g, &["(123)"]);
        let gamma = Cocycle2::trivial(&a3, 6);
        // ε is determined by its values on the generators (123), (12).
        let (r, t) = (g.element_by_label("(123)").unwrap(), g.element_by_label("(12)").unwrap());
        let mut count = 0;
        for code in 0..6usize.pow(6) {
            let mut digits = code;
            let mut vals = [[0i64; 3]; 2];
            for row in vals.iter_mut() {
                for v in row.iter_mut() {
                    *v = (digits % 6) as i64;
                    digits /= 6;
                }
            }
            let mut table = std::collections::HashMap::new();
            for (k, &s) in [r, t].iter().enumerate() {
                for (pf, &f) in a3.members().iter().enumerate() {
                    table.insert((s, f), vals[k][pf]);
                }
            }
            // Extend along words, checking consistency.
            let mut ok = true;
            let mut known: std::collections::HashMap<usize, Vec<i64>> = std::collections::HashMap::new();
            known.insert(0, vec![0; 3]);
            let mut frontier = vec![0usize];
            while let Some(p) = frontier.pop() {
                for &s in &[r, t] {
                    let q = g.mul(p, s);
                    let row: Vec<i64> = a3
                        .members()
                        .iter()
                        .map(|&f| (known[&p][a3.position(g.conj(s, f)).unwrap()] + table[&(s, f)]).rem_euclid(6))
                        .collect();
                    match known.get(&q) {
                        Some(prev) => ok &= *prev == row,
                        None => {
                            known.insert(q, row);
                            frontier.push(q);
                        }
                    }
                }
            }
            if ok && AlgebraDatum::new(&s3, &a3, &gamma, |h, f| known[&h][a3.position(f).unwrap()]).is_ok() {
                count += 1;
            }
        }
        assert_eq!(count, solve_epsilon(&s3, &a3, &gamma).unwrap().len());
    }

    #[test]
    fn characters_of_trivialising_algebras() {
        let g = grp("S3");
        let pairs = g.commuting_pairs().pairs().to_vec();
        let s3 = Subgroup::whole(&g);
        let full = algebra_character(&TrivialisingAlgebra::new(&Cocycle2::trivial(&s3, 6)));
        assert!(full.values().iter().all(|v| *v == Cyclotomic::one()));
        let e = Subgroup::trivial(&g);
        let point = algebra_character(&TrivialisingAlgebra::new(&Cocycle2::trivial(&e, 6)));
        for (&(a, b), v) in pairs.iter().zip(point.values()) {
            assert_eq!(*v, Cyclotomic::from_int(if a == 0 && b == 0 { 6 } else { 0 }));
        }
        let c2 = sub(&g, &["(12)"]);
        let t = g.element_by_label("(12)").unwrap();
        let chi = algebra_character(&TrivialisingAlgebra::new(&Cocycle2::trivial(&c2, 6)));
        assert_eq!(chi.get(0, 0), Cyclotomic::from_int(3));
        assert_eq!(chi.get(t, t), Cyclotomic::one());
        assert_eq!(chi.get(t, 0), Cyclotomic::one());
        assert_eq!(chi.get(0, t), Cyclotomic::one());
        let r = g.element_by_label("(123)").unwrap();
        assert!(chi.get(r, r).is_zero());
        let a3 = sub(&g, &["(123)"]);
        let chi = algebra_character(&TrivialisingAlgebra::new(&Cocycle2::trivial(&a3, 6)));
        assert_eq!(chi.get(0, 0), Cyclotomic::from_int(2));
        assert_eq!(chi.get(r, g.inv(r)), Cyclotomic::from_int(2));
        for c in [&full, &point, &chi] {
            assert_eq!(c.dimension(), Cyclotomic::from_int(6));
            assert!(verify_invariance(c).passed());
        }
    }

    #[test]
    fn transfer_is_transitive() {
        let g = grp("S3");
        let e = Subgroup::trivial(&g);
        let c2 = sub(&g, &["(12)"]);
        let base = |a: usize, b: usize| Cyclotomic::from_int(i64::from(a == 0 && b == 0));
        let direct = transfer_with(&e, base);
        let c2_group = Arc::new(c2.as_group());
        let e_in_c2 = Subgroup::trivial(&c2_group);
        let step = transfer_with(&e_in_c2, base);
        let lifted = transfer_character(&c2, &step).unwrap();
        assert_eq!(lifted, direct);
        let whole = Subgroup::whole(&g);
        assert_eq!(transfer_character(&whole, &direct).unwrap(), direct);
    }

    #[test]
    fn klein_pairing_character_is_conjugation_aware() {
        let g = grp("C2xC2");
        let h = Subgroup::whole(&g);
        let coh = second_cohomology_mod(&h, 4).unwrap();
        let gamma = &coh.representatives()[1];
        let d = Double::new(&g).unwrap();
        let chi = algebra_character(&TrivialisingAlgebra::new(gamma));
        let m = d.decompose(&chi).unwrap();
        assert_eq!(m.iter().sum::<u64>(), 4);
        assert_eq!(m[0], 1);
    }

    #[test]
    fn s3_invariants() {
        let g = grp("S3");
        let d = Double::new(&g).unwrap();
        let p = grp("S3xS3");
        let diag: Vec<usize> = (0..6).map(|x| p.pair(x, x)).collect();
        let delta = Subgroup::from_members(p.clone(), diag).unwrap();
        let m = modular_invariant(&d, &d, &Cocycle2::trivial(&delta, 36)).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(m.get(i, j), u64::from(i == j));
            }
        }
        assert_eq!(m.rank(), 8);
        let full = Subgroup::whole(&p);
        let m = modular_invariant(&d, &d, &Cocycle2::trivial(&full, 36)).unwrap();
        assert_eq!(m.partition_function(), "|χ0+χ3+χ6|^2");
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rendering() {
        let m = InvariantMatrix::from_entries(vec![vec![1, 0, 2], vec![0, 1, 0], vec![0, 0, 0]]);
        assert_eq!(m.partition_function(), "χ0(χ0+2χ2)^*+|χ1|^2");
        let m = InvariantMatrix::from_entries(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(m.partition_function(), "|χ0|^2+χ0χ1^*+χ1χ0^*");
    }
}
