//! Linear algebra over `Z/M` for composite `M`: Smith normal form with
//! optional transform tracking, kernels and inhomogeneous solves.

use num_integer::Integer;

/// Dense matrix over `Z/M`, entries kept in `0..M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: i64,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ModMatrix { modulus: modulus as i64, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus as u64
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x.rem_euclid(self.modulus);
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        let k = i * self.cols + j;
        self.data[k] = (self.data[k] + x).rem_euclid(self.modulus);
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Appends a row (reduced mod M).
    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row.iter().map(|x| x.rem_euclid(self.modulus)));
        self.rows += 1;
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut out = ModMatrix::zeros(self.modulus(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
            for j in 0..other.cols {
                out.data[i * other.cols + j] %= self.modulus;
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(x).map(|(a, b)| a * b.rem_euclid(self.modulus) % self.modulus).sum::<i64>()
                    % self.modulus
            })
            .collect()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = ModMatrix::zeros(self.modulus(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `(p q; r s)` applied to the row pair `(i, j)`.
    fn rows2(&mut self, i: usize, j: usize, p: [[i64; 2]; 2]) {
        let m = self.modulus;
        for c in 0..self.cols {
            let (a, b) = (self.get(i, c), self.get(j, c));
            self.data[i * self.cols + c] = (p[0][0] * a + p[0][1] * b).rem_euclid(m);
            self.data[j * self.cols + c] = (p[1][0] * a + p[1][1] * b).rem_euclid(m);
        }
    }

    /// `(p q; r s)` applied to the column pair `(i, j)`.
    fn cols2(&mut self, i: usize, j: usize, p: [[i64; 2]; 2]) {
        let m = self.modulus;
        for r in 0..self.rows {
            let (a, b) = (self.get(r, i), self.get(r, j));
            self.data[r * self.cols + i] = (p[0][0] * a + p[0][1] * b).rem_euclid(m);
            self.data[r * self.cols + j] = (p[1][0] * a + p[1][1] * b).rem_euclid(m);
        }
    }

    fn scale_row(&mut self, i: usize, u: i64) {
        for c in 0..self.cols {
            let k = i * self.cols + c;
            self.data[k] = self.data[k] * u % self.modulus;
        }
    }

    fn scale_col(&mut self, j: usize, u: i64) {
        for r in 0..self.rows {
            let k = r * self.cols + j;
            self.data[k] = self.data[k] * u % self.modulus;
        }
    }
}

/// A matrix with at most `cols` rows spanning the same row module as `a`,
/// built by inserting rows into an echelon basis with 2×2 unimodular steps.
/// Kernels and Smith invariants are unchanged.
pub fn reduce_rows(a: &ModMatrix) -> ModMatrix {
    let m = a.modulus;
    let cols = a.cols;
    let mut pivots: Vec<Option<Vec<i64>>> = vec![None; cols];
    for i in 0..a.rows {
        let mut r = a.row(i).to_vec();
        let mut c = 0;
        while c < cols {
            if r[c] == 0 {
                c += 1;
                continue;
            }
            let Some(p) = pivots[c].as_mut() else {
                pivots[c] = Some(r);
                break;
            };
            let (x, y) = (p[c], r[c]);
            let e = x.extended_gcd(&y);
            let (xg, yg) = (x / e.gcd, y / e.gcd);
            for k in c..cols {
                let (pk, rk) = (p[k], r[k]);
                p[k] = (e.x * pk + e.y * rk).rem_euclid(m);
                r[k] = (yg * pk - xg * rk).rem_euclid(m);
            }
            c += 1;
        }
    }
    let rows: Vec<Vec<i64>> = pivots.into_iter().flatten().collect();
    if rows.is_empty() {
        return ModMatrix::zeros(m as u64, 0, cols);
    }
    ModMatrix::from_rows(m as u64, &rows)
}

/// Inverse of a unit mod `m`.
pub fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let g = a.rem_euclid(m).extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// A unit `u` with `a·u ≡ gcd(a, m) (mod m)`.
fn normalizing_unit(a: i64, m: i64) -> i64 {
    let g = a.gcd(&m);
    let mp = m / g;
    let base = if mp == 1 { 1 } else { inverse_mod(a / g, mp).expect("coprime after division") };
    (0..)
        .map(|k| base + k * mp)
        .find(|&u| u.gcd(&m) == 1)
        .expect("a lift to a unit exists")
        % m.max(1)
}

fn inverse_transpose(p: [[i64; 2]; 2], m: i64) -> [[i64; 2]; 2] {
    // Every 2x2 block used has determinant 1.
    [[p[1][1], (-p[1][0]).rem_euclid(m)], [(-p[0][1]).rem_euclid(m), p[0][0]]]
}

/// Which transforms [`smith`] should record.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
    pub const COLUMNS: Track = Track { u: false, u_inv: false, v: true, v_inv: true };
}

/// `U·A·V = D` over `Z/M`, with `D` diagonal, every diagonal entry a divisor
/// of `M` (or `0`), and `d_0 | d_1 | …` among the nonzero entries.
#[derive(Debug, Clone)]
pub struct Smith {
    pub modulus: u64,
    pub diagonal: Vec<u64>,
    pub u: Option<ModMatrix>,
    pub u_inv: Option<ModMatrix>,
    pub v: Option<ModMatrix>,
    pub v_inv: Option<ModMatrix>,
    /// Extra columns carried along by the row operations (`U·B`).
    pub companion: Option<ModMatrix>,
    rows: usize,
    cols: usize,
}

struct Reducer {
    a: ModMatrix,
    u: Option<ModMatrix>,
    u_inv: Option<ModMatrix>,
    v: Option<ModMatrix>,
    v_inv: Option<ModMatrix>,
    companion: Option<ModMatrix>,
}

impl Reducer {
    fn row_op(&mut self, i: usize, j: usize, p: [[i64; 2]; 2]) {
        let m = self.a.modulus;
        self.a.rows2(i, j, p);
        if let Some(u) = &mut self.u {
            u.rows2(i, j, p);
        }
        if let Some(c) = &mut self.companion {
            c.rows2(i, j, p);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.cols2(i, j, inverse_transpose(p, m));
        }
    }

    fn col_op(&mut self, i: usize, j: usize, p: [[i64; 2]; 2]) {
        let m = self.a.modulus;
        self.a.cols2(i, j, p);
        if let Some(v) = &mut self.v {
            v.cols2(i, j, p);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.rows2(i, j, inverse_transpose(p, m));
        }
    }

    fn scale_row(&mut self, i: usize, unit: i64) {
        let m = self.a.modulus;
        let inv = inverse_mod(unit, m).expect("unit");
        self.a.scale_row(i, unit);
        if let Some(u) = &mut self.u {
            u.scale_row(i, unit);
        }
        if let Some(c) = &mut self.companion {
            c.scale_row(i, unit);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.scale_col(i, inv);
        }
    }

    /// Exchanges rows up to sign, keeping every block unimodular.
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.row_op(i, j, [[0, 1], [self.a.modulus - 1, 0]]);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.col_op(i, j, [[0, 1], [self.a.modulus - 1, 0]]);
        }
    }

    /// Eliminates `a[i][k]` against the pivot `a[k][k]` by a Bezout step.
    fn clear_row_entry(&mut self, k: usize, i: usize) {
        let m = self.a.modulus;
        let (a, b) = (self.a.get(k, k), self.a.get(i, k));
        if b == 0 {
            return;
        }
        let e = a.extended_gcd(&b);
        let (ap, bp) = (a / e.gcd, b / e.gcd);
        self.row_op(k, i, [[e.x.rem_euclid(m), e.y.rem_euclid(m)], [(-bp).rem_euclid(m), ap]]);
    }

    fn clear_col_entry(&mut self, k: usize, j: usize) {
        let m = self.a.modulus;
        let (a, b) = (self.a.get(k, k), self.a.get(k, j));
        if b == 0 {
            return;
        }
        let e = a.extended_gcd(&b);
        let (ap, bp) = (a / e.gcd, b / e.gcd);
        self.col_op(k, j, [[e.x.rem_euclid(m), e.y.rem_euclid(m)], [(-bp).rem_euclid(m), ap]]);
    }
}

/// Smith normal form of `a`, recording the transforms requested by `track`
/// and applying the row operations to `companion` when given.
pub fn smith(a: &ModMatrix, track: Track, companion: Option<&ModMatrix>) -> Smith {
    let (rows, cols) = (a.rows, a.cols);
    let m = a.modulus;
    if let Some(c) = companion {
        assert_eq!(c.rows, rows, "companion row count");
        assert_eq!(c.modulus, m, "companion modulus");
    }
    let mut r = Reducer {
        a: a.clone(),
        u: track.u.then(|| ModMatrix::identity(m as u64, rows)),
        u_inv: track.u_inv.then(|| ModMatrix::identity(m as u64, rows)),
        v: track.v.then(|| ModMatrix::identity(m as u64, cols)),
        v_inv: track.v_inv.then(|| ModMatrix::identity(m as u64, cols)),
        companion: companion.cloned(),
    };
    let n = rows.min(cols);
    let mut diagonal = vec![0u64; n];
    let mut k = 0;
    while k < n {
        // Pivot with the smallest ideal gcd(x, M) in the remaining block.
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = r.a.get(i, j);
                if x != 0 {
                    let g = x.gcd(&m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        r.swap_rows(k, pi);
        r.swap_cols(k, pj);
        let unit = normalizing_unit(r.a.get(k, k), m);
        r.scale_row(k, unit);
        let d = r.a.get(k, k);
        let mut restart = false;
        for i in k + 1..rows {
            let x = r.a.get(i, k);
            if x % d != 0 {
                r.clear_row_entry(k, i);
                restart = true;
                break;
            }
            if x != 0 {
                r.row_op(i, k, [[1, (-(x / d)).rem_euclid(m)], [0, 1]]);
            }
        }
        if restart {
            continue;
        }
        for j in k + 1..cols {
            let x = r.a.get(k, j);
            if x % d != 0 {
                r.clear_col_entry(k, j);
                restart = true;
                break;
            }
            if x != 0 {
                r.col_op(j, k, [[1, (-(x / d)).rem_euclid(m)], [0, 1]]);
            }
        }
        if restart {
            continue;
        }
        // Divisibility: fold an offending row into the pivot row and redo.
        let offending = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| r.a.get(i, j) % d != 0));
        if let Some(i) = offending {
            r.row_op(k, i, [[1, 1], [0, 1]]);
            continue;
        }
        diagonal[k] = d as u64;
        k += 1;
    }
    Smith {
        modulus: m as u64,
        diagonal,
        u: r.u,
        u_inv: r.u_inv,
        v: r.v,
        v_inv: r.v_inv,
        companion: r.companion,
        rows,
        cols,
    }
}

impl Smith {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of the solution set of `d_i·y ≡ 0` for coordinate `i` of `y = V⁻¹x`.
    pub fn kernel_order(&self, i: usize) -> u64 {
        match self.diagonal.get(i) {
            Some(&0) | None => self.modulus,
            Some(&d) => d,
        }
    }
}

/// Generators of `ker A` with their additive orders: `ker A ≅ ⊕ Z/order_i`.
/// Trivial summands are omitted.
pub fn kernel(a: &ModMatrix) -> Vec<(Vec<i64>, u64)> {
    let s = smith(a, Track { v: true, ..Track::NONE }, None);
    kernel_from(&s)
}

pub(crate) fn kernel_from(s: &Smith) -> Vec<(Vec<i64>, u64)> {
    let v = s.v.as_ref().expect("V tracked");
    let m = s.modulus as i64;
    (0..s.cols)
        .filter_map(|i| {
            let order = s.kernel_order(i);
            if order == 1 {
                return None;
            }
            let step = m / order as i64;
            Some((v.column(i).iter().map(|x| x * step % m).collect(), order))
        })
        .collect()
}

/// A solution of `A·x ≡ b`, if one exists.
pub fn solve(a: &ModMatrix, b: &[i64]) -> Option<Vec<i64>> {
    let mut rhs = ModMatrix::zeros(a.modulus(), a.rows, 1);
    for (i, &x) in b.iter().enumerate() {
        rhs.set(i, 0, x);
    }
    let s = smith(a, Track { v: true, ..Track::NONE }, Some(&rhs));
    solve_from(&s, 0)
}

/// Particular solution using the companion column `col` of a reduced system.
pub(crate) fn solve_from(s: &Smith, col: usize) -> Option<Vec<i64>> {
    let c = s.companion.as_ref().expect("companion present");
    let v = s.v.as_ref().expect("V tracked");
    let mut y = vec![0i64; s.cols];
    for i in 0..s.rows {
        let bi = c.get(i, col);
        match s.diagonal.get(i) {
            Some(&d) if d != 0 => {
                let d = d as i64;
                if bi % d != 0 {
                    return None;
                }
                y[i] = bi / d;
            }
            _ if bi != 0 => return None,
            _ => {}
        }
    }
    Some(v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(a: &ModMatrix) {
        let s = smith(a, Track::ALL, None);
        let (u, ui, v, vi) = (s.u.as_ref().unwrap(), s.u_inv.as_ref().unwrap(), s.v.as_ref().unwrap(), s.v_inv.as_ref().unwrap());
        let d = u.mul(a).mul(v);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let want = if i == j { s.diagonal[i] as i64 % a.modulus } else { 0 };
                assert_eq!(d.get(i, j), want, "D[{i}][{j}]");
            }
        }
        assert_eq!(u.mul(ui), ModMatrix::identity(a.modulus(), a.rows()));
        assert_eq!(v.mul(vi), ModMatrix::identity(a.modulus(), a.cols()));
        let nz: Vec<u64> = s.diagonal.iter().copied().filter(|&x| x != 0).collect();
        for w in nz.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", s.diagonal);
        }
        for &x in &nz {
            assert_eq!(a.modulus() % x, 0);
        }
    }

    #[test]
    fn small_composite_example() {
        let a = ModMatrix::from_rows(6, &[vec![2, 3], vec![0, 0]]);
        check_smith(&a);
        let s = smith(&a, Track::NONE, None);
        assert_eq!(s.diagonal, vec![1, 0]);
        let k = kernel(&a);
        // 2x + 3y = 0 mod 6 has 6 solutions.
        assert_eq!(k.iter().map(|(_, o)| o).product::<u64>(), 6);
        for (x, _) in &k {
            assert_eq!(a.mul_vec(x), vec![0, 0]);
        }
    }

    #[test]
    fn diagonal_needs_gcd_lcm_fix() {
        let a = ModMatrix::from_rows(36, &[vec![4, 0], vec![0, 9]]);
        check_smith(&a);
        assert_eq!(smith(&a, Track::NONE, None).diagonal, vec![1, 0]);
        let a = ModMatrix::from_rows(36, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith(&a, Track::NONE, None).diagonal, vec![1, 6]);
    }

    #[test]
    fn solve_inhomogeneous() {
        let a = ModMatrix::from_rows(6, &[vec![2, 4], vec![3, 3]]);
        let x = solve(&a, &[2, 3]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![2, 3]);
        assert!(solve(&ModMatrix::from_rows(6, &[vec![2]]), &[1]).is_none());
    }

    fn brute_kernel_size(a: &ModMatrix) -> u64 {
        let m = a.modulus() as i64;
        let n = a.cols();
        let mut count = 0;
        let mut x = vec![0i64; n];
        loop {
            if a.mul_vec(&x).iter().all(|&v| v == 0) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                x[i] += 1;
                if x[i] < m {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn smith_invariants(m in 2u64..40, rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as i64 };
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let a = ModMatrix::from_rows(m, &data);
            check_smith(&a);
        }

        #[test]
        fn kernel_matches_brute_force(m in 2u64..8, rows in 1usize..4, cols in 1usize..4, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as i64 };
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let a = ModMatrix::from_rows(m, &data);
            let k = kernel(&a);
            for (x, _) in &k {
                prop_assert!(a.mul_vec(x).iter().all(|&v| v == 0));
            }
            prop_assert_eq!(k.iter().map(|(_, o)| o).product::<u64>(), brute_kernel_size(&a));
        }

        #[test]
        fn reduced_rows_keep_the_kernel(m in 2u64..8, rows in 1usize..9, cols in 1usize..4, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as i64 };
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let a = ModMatrix::from_rows(m, &data);
            let r = reduce_rows(&a);
            prop_assert!(r.rows() <= cols);
            prop_assert_eq!(brute_kernel_size(&r), brute_kernel_size(&a));
            let ka: Vec<u64> = kernel(&a).into_iter().map(|(_, o)| o).collect();
            let kr: Vec<u64> = kernel(&r).into_iter().map(|(_, o)| o).collect();
            prop_assert_eq!(ka, kr);
        }

        #[test]
        fn solve_finds_constructed_solutions(m in 2u64..30, rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as i64 };
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let a = ModMatrix::from_rows(m, &data);
            let x0: Vec<i64> = (0..cols).map(|_| next()).collect();
            let b = a.mul_vec(&x0);
            let x = solve(&a, &b).expect("solvable by construction");
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }
}
