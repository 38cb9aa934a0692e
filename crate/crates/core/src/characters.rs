//! Ordinary character tables by the Dixon–Schneider method.
//!
//! Central characters are common eigenvectors of the class multiplication
//! matrices. They are found modulo a prime `p ≡ 1 (mod exp G)` and lifted to
//! exact cyclotomic values through eigenvalue multiplicities.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{check_cap, FiniteGroup};

/// Irreducible characters of a group, as values on its conjugacy classes.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Rows ordered by degree, then by the values' arguments and moduli
    /// class by class; the trivial character is first.
    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `χ_row(g)` for an element `g`.
    pub fn value(&self, row: usize, g: usize) -> &Cyclotomic {
        &self.rows[row][self.group.class_of(g)]
    }

    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))` for class functions given per class.
    pub fn inner_product(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Result<Cyclotomic> {
        let classes = self.group.conjugacy_classes();
        if chi.len() != classes.len() || psi.len() != classes.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(class_inner_product(&self.group, chi, psi))
    }
}

/// `(1/|G|) Σ_g χ(g) conj(ψ(g))` with both functions given per class.
pub fn class_inner_product(g: &FiniteGroup, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
    let classes = g.conjugacy_classes();
    let total: Cyclotomic = classes
        .iter()
        .zip(chi.iter().zip(psi))
        .map(|(c, (a, b))| (a * &b.conj()).scale(Rational::from_integer(c.size() as i128)))
        .sum();
    total.scale(Rational::new(1, g.order() as i128))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > max(|G|, 2·√|G|·e)`.
fn choose_prime(order: usize, e: usize) -> u64 {
    let bound = (order as f64).max(2.0 * (order as f64).sqrt() * e as f64) as u64;
    let e = e as u64;
    let mut p = (bound / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("prime has a primitive root")
}

/// Dense matrix over F_p.
type Mat = Vec<Vec<u64>>;

/// Basis of the null space of `a` (row-major, `n × n`) over F_p.
fn null_space(a: &Mat, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (low degree first, monic) by Faddeev–LeVerrier.
fn char_poly(a: &Mat, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = (next[i][j] + a[i][l] * m[l][j]) % p;
                }
            }
            next[i][i] = (next[i][i] + coeffs[n - k + 1]) % p;
        }
        m = next;
        let mut tr = 0;
        for i in 0..n {
            for l in 0..n {
                tr = (tr + a[i][l] * m[l][i]) % p;
            }
        }
        coeffs[n - k] = (p - tr * inv_mod(k as u64, p) % p) % p;
    }
    coeffs
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}

/// Splits the invariant subspace spanned by `basis` into eigenspaces of `m`.
fn split(basis: &[Vec<u64>], m: &Mat, p: u64) -> Vec<Vec<Vec<u64>>> {
    let d = basis.len();
    if d == 1 {
        return vec![basis.to_vec()];
    }
    let n = m.len();
    // Restriction B with M·b_i = Σ_k B[k][i] b_k, solved through pivot coordinates.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..n).map(|r| (0..n).fold(0, |acc, c| (acc + m[r][c] * b[c]) % p)).collect())
        .collect();
    let coords = express(basis, &images, p);
    let b: Mat = (0..d).map(|k| (0..d).map(|i| coords[i][k]).collect()).collect();
    let poly = char_poly(&b, p);
    let mut parts = Vec::new();
    for lambda in roots(&poly, p) {
        let shifted: Mat =
            (0..d).map(|i| (0..d).map(|j| if i == j { (b[i][j] + p - lambda) % p } else { b[i][j] }).collect()).collect();
        let ns = null_space(&shifted, p);
        let vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|y| (0..n).map(|r| (0..d).fold(0, |acc, k| (acc + y[k] * basis[k][r]) % p)).collect())
            .collect();
        parts.push(vecs);
    }
    parts
}

/// Coordinates of each target vector in terms of `basis` (assumed to lie in its span).
fn express(basis: &[Vec<u64>], targets: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let n = basis[0].len();
    // Solve basisᵀ·x = t by elimination on the augmented n × (d + |targets|) system.
    let t = targets.len();
    let mut m: Mat = (0..n)
        .map(|r| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[r]).collect();
            row.extend(targets.iter().map(|v| v[r]));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let pr = (r..n).find(|&i| m[i][c] != 0).expect("basis is independent");
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..d + t {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..t).map(|k| (0..d).map(|i| m[i][d + k]).collect()).collect()
}

/// Character table of `g` (cap-checked).
pub fn character_table(g: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    check_cap("character table", g.order())?;
    let n = g.order();
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let e = g.exponent();
    let p = choose_prime(n, e);
    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64).collect();

    // a[j][k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}; M_j[k][l] = a[j][k][l].
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (l, cl) in classes.iter().enumerate() {
        let z = cl.rep;
        for x in 0..n {
            let j = g.class_of(x);
            let k = g.class_of(g.mul(g.inv(x), z));
            a[j][k][l] += 1;
        }
    }
    let class_matrix = |coeffs: &[u64]| -> Mat {
        (0..r).map(|k| (0..r).map(|l| (0..r).fold(0, |acc, j| (acc + coeffs[j] * a[j][k][l]) % p)).collect()).collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d1c5_0000 ^ n as u64);
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    // A generic combination usually separates everything at once; single
    // class matrices finish any leftover degeneracy.
    let random: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
    let mut splitters = vec![class_matrix(&random)];
    splitters.extend((0..r).map(|j| {
        let mut c = vec![0u64; r];
        c[j] = 1;
        class_matrix(&c)
    }));
    for m in &splitters {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        spaces = spaces.iter().flat_map(|s| split(s, m, p)).collect();
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::CharacterTable(format!("eigenspace splitting failed for {} (p = {p})", g.name())));
    }

    let inverse_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c.rep))).collect();
    let z_root = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let inv_order = |o: u64| inv_mod(o % p, p);
    let mut rows = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        let scale = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        // 1/χ(1)² · |G| = Σ_j w_j w_{j*} / h_j
        let s = (0..r).fold(0u64, |acc, j| (acc + w[j] * w[inverse_class[j]] % p * inv_mod(sizes[j], p)) % p);
        let d2 = n as u64 % p * inv_mod(s, p) % p;
        let d = (1..=n as u64)
            .find(|d| d * d <= n as u64 && d * d % p == d2)
            .ok_or_else(|| Error::CharacterTable(format!("degree recovery failed for {}", g.name())))?;
        let values_mod: Vec<u64> = (0..r).map(|j| d % p * w[j] % p * inv_mod(sizes[j], p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for cl in classes {
            let x = cl.rep;
            let o = g.element_order(x);
            let z = pow_mod(z_root, (e / o) as u64, p);
            let mut by_exp = vec![Rational::from_integer(0); e];
            let mut power = 0usize;
            let powers: Vec<u64> = (0..o)
                .map(|_| {
                    let val = values_mod[g.class_of(power)];
                    power = g.mul(power, x);
                    val
                })
                .collect();
            for (k, slot) in (0..o).map(|k| (k, k * (e / o))) {
                let mut m = 0u64;
                for (l, &chi) in powers.iter().enumerate() {
                    let exp = (o - (k * l) % o) % o;
                    m = (m + chi * pow_mod(z, exp as u64, p)) % p;
                }
                m = m * inv_order(o as u64) % p;
                if m > d {
                    return Err(Error::CharacterTable(format!("eigenvalue multiplicity out of range for {}", g.name())));
                }
                by_exp[slot] = Rational::from_integer(m as i128);
            }
            row.push(Cyclotomic::from_exponents(e, &by_exp));
        }
        rows.push(row);
        degrees.push(d as usize);
    }

    let key = |row: &Vec<Cyclotomic>, d: usize| {
        let vals: Vec<(i64, i64)> = row
            .iter()
            .map(|v| {
                let (re, im) = v.to_complex();
                let modulus = (re * re + im * im).sqrt();
                let mut arg = im.atan2(re);
                if arg < -1e-9 {
                    arg += std::f64::consts::TAU;
                }
                if modulus < 1e-9 {
                    arg = 0.0;
                }
                ((arg * 1e6).round() as i64, (modulus * 1e6).round() as i64)
            })
            .collect();
        (d, vals)
    };
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| key(&rows[i], degrees[i]));
    let rows: Vec<Vec<Cyclotomic>> = order.iter().map(|&i| rows[i].clone()).collect();
    let degrees: Vec<usize> = order.iter().map(|&i| degrees[i]).collect();

    let table = CharacterTable { group: g.clone(), rows, degrees };
    verify_table(&table)?;
    Ok(table)
}

/// Row orthonormality and `Σ d² = |G|`; any failure is a hard error.
fn verify_table(t: &CharacterTable) -> Result<()> {
    let g = &t.group;
    let sum_sq: usize = t.degrees.iter().map(|d| d * d).sum();
    if sum_sq != g.order() {
        return Err(Error::CharacterTable(format!("Σ d² = {sum_sq} ≠ {}", g.order())));
    }
    if t.rows[0].iter().any(|v| *v != Cyclotomic::one()) {
        return Err(Error::CharacterTable("first row is not trivial".into()));
    }
    for i in 0..t.len() {
        for j in 0..=i {
            let ip = class_inner_product(g, &t.rows[i], &t.rows[j]);
            let want = Cyclotomic::from_int(i64::from(i == j));
            if ip != want {
                return Err(Error::CharacterTable(format!("rows {i}, {j} not orthonormal")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn table(name: &str) -> CharacterTable {
        character_table(&Arc::new(build_group(name).unwrap())).unwrap()
    }

    #[test]
    fn s3_degrees_and_sign() {
        let t = table("S3");
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let sign: Vec<i128> = t.rows()[1].iter().map(|v| v.to_integer().unwrap()).collect();
        assert_eq!(sign, vec![1, 1, -1]);
        let std: Vec<i128> = t.rows()[2].iter().map(|v| v.to_integer().unwrap()).collect();
        assert_eq!(std, vec![2, -1, 0]);
    }

    #[test]
    fn c3_rows_in_canonical_order() {
        let t = table("C3");
        let w = Cyclotomic::zeta(3, 1);
        let w2 = Cyclotomic::zeta(3, 2);
        let one = Cyclotomic::one();
        assert_eq!(t.rows()[0], vec![one.clone(), one.clone(), one.clone()]);
        assert_eq!(t.rows()[1], vec![one.clone(), w.clone(), w2.clone()]);
        assert_eq!(t.rows()[2], vec![one, w2, w]);
    }

    #[test]
    fn trivial_group() {
        let t = table("1");
        assert_eq!(t.len(), 1);
        assert_eq!(t.rows()[0], vec![Cyclotomic::one()]);
    }

    #[test]
    fn column_orthogonality_on_catalog() {
        for name in ["S3", "C4", "C2xC2", "D4", "Q8", "A4", "S4", "C5:2", "C5:4", "C7:2", "C3xS3", "C8", "C3:2xC2"] {
            let t = table(name);
            let g = t.group().clone();
            let classes = g.conjugacy_classes();
            for (a, ca) in classes.iter().enumerate() {
                for (b, cb) in classes.iter().enumerate() {
                    let s: Cyclotomic = t.rows().iter().map(|row| &row[a] * &row[b].conj()).sum();
                    let want = if a == b { g.centralizer(ca.rep).order() as i64 } else { 0 };
                    assert_eq!(s, Cyclotomic::from_int(want), "{name} classes {a},{b} ({})", cb.rep);
                }
            }
        }
    }

    #[test]
    fn regular_character_and_sign_products() {
        let t = table("S3");
        let g = t.group().clone();
        let classes = g.conjugacy_classes();
        let regular: Vec<Cyclotomic> =
            classes.iter().map(|c| Cyclotomic::from_int(if c.rep == 0 { 6 } else { 0 })).collect();
        for (i, row) in t.rows().iter().enumerate() {
            // Brute-force sum over elements, independent of the class-based helper.
            let brute: Cyclotomic = (0..6)
                .map(|x| &regular[g.class_of(x)] * &row[g.class_of(x)].conj())
                .sum::<Cyclotomic>()
                .scale(Rational::new(1, 6));
            assert_eq!(brute, Cyclotomic::from_int(t.degrees()[i] as i64));
            assert_eq!(t.inner_product(&regular, row).unwrap(), brute);
        }
        assert!(t.inner_product(&t.rows()[0], &t.rows()[1]).unwrap().is_zero());
    }

    #[test]
    fn degrees_divide_order_for_larger_groups() {
        for name in ["S3xS3", "C2xS4", "C5:4xC3"] {
            let t = table(name);
            for d in t.degrees() {
                assert_eq!(t.group().order() % d, 0);
            }
        }
    }
}
