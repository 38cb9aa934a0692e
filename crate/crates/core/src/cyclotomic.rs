//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are rational coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` reduced modulo the `N`-th cyclotomic polynomial.
//! Mixed conductors meet in `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i128>;

/// Reduction data for one conductor.
#[derive(Debug)]
struct Field {
    phi: usize,
    /// `reduce[k]` = coefficients of `x^k mod Φ_n`, for `k` in `0..n`.
    reduce: Vec<Vec<i64>>,
}

fn cyclotomic_polynomial(n: usize, cache: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1, low degree first.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let den = cyclotomic_polynomial(d, cache);
        num = divide_monic(&num, &den);
    }
    cache.insert(n, num.clone());
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

fn field(n: usize) -> Arc<Field> {
    static FIELDS: OnceLock<Mutex<HashMap<usize, Arc<Field>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(Default::default);
    if let Some(f) = fields.lock().expect("field cache").get(&n) {
        return f.clone();
    }
    let mut cache = HashMap::new();
    let poly = cyclotomic_polynomial(n, &mut cache);
    let phi = poly.len() - 1;
    let mut reduce = Vec::with_capacity(n);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        reduce.push(cur.clone());
        // Multiply by x, then eliminate x^phi.
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..phi {
            cur[i] -= top * poly[i];
        }
    }
    let f = Arc::new(Field { phi, reduce });
    fields.lock().expect("field cache").insert(n, f.clone());
    f
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self)
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k as i128))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p as i128, q as i128))
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: usize, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Cyclotomic { conductor: n, coeffs: f.reduce[e].iter().map(|&c| Rational::from_integer(c as i128)).collect() }
    }

    /// Builds `Σ_k c_k ζ_n^k` from exponent-indexed coefficients (length `n`).
    pub fn from_exponents(n: usize, by_exponent: &[Rational]) -> Self {
        let f = field(n);
        let mut coeffs = vec![Rational::zero(); f.phi];
        for (e, c) in by_exponent.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in f.reduce[e % n].iter().enumerate() {
                if r != 0 {
                    coeffs[i] += *c * Rational::from_integer(r as i128);
                }
            }
        }
        Cyclotomic { conductor: n, coeffs }
    }

    /// From power-basis coefficients (length `φ(n)`).
    pub fn from_coeffs(n: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), field(n).phi, "coefficient count must be φ(n)");
        Cyclotomic { conductor: n, coeffs }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        let c = self.canonical();
        (c.conductor == 1).then(|| c.coeffs[0])
    }

    /// The integer value, when the element lies in `Z`.
    pub fn to_integer(&self) -> Option<i128> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Embedding into `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: usize) -> Self {
        assert_eq!(m % self.conductor, 0, "lift target must be a multiple of the conductor");
        if m == self.conductor {
            return self.clone();
        }
        let step = m / self.conductor;
        let mut by_exp = vec![Rational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            by_exp[i * step] = *c;
        }
        Self::from_exponents(m, &by_exp)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.lift(m), b.lift(m))
    }

    /// Galois automorphism `ζ ↦ ζ^k`, `k` a unit mod the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        assert!(n == 1 || (k.rem_euclid(n as i64) as usize).gcd(&n) == 1, "not a unit");
        let mut by_exp = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(n as i64) as usize;
            by_exp[e] += *c;
        }
        Self::from_exponents(n, &by_exp)
    }

    /// Complex conjugation, `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: Rational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // Columns: self · ζ^j.
        let cols: Vec<Cyclotomic> = (0..phi).map(|j| self * &Cyclotomic::zeta(n, j as i64)).collect();
        let mut m: Vec<Vec<Rational>> = (0..phi).map(|i| cols.iter().map(|c| c.lift(n).coeffs[i]).collect()).collect();
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::one();
        let x = solve_rational(&mut m, &mut rhs)?;
        Some(Cyclotomic { conductor: n, coeffs: x })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Cyclotomic::one(), |acc, _| &acc * self)
    }

    /// The same element expressed over the smallest possible conductor.
    pub fn canonical(&self) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return Cyclotomic::from_rational(self.coeffs[0]);
        }
        for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
            // Invariant under ζ ↦ ζ^k for all k ≡ 1 (mod d) iff it lies in Q(ζ_d).
            let fixed = (0..n / d)
                .map(|t| 1 + t * d)
                .filter(|k| k.gcd(&n) == 1)
                .all(|k| self.galois(k as i64) == *self);
            if fixed {
                if let Some(c) = self.express_in(d) {
                    return c;
                }
            }
        }
        self.clone()
    }

    /// Coordinates in `Q(ζ_d)`, `d | N`, if the element lies there.
    fn express_in(&self, d: usize) -> Option<Self> {
        let fd = field(d);
        let basis: Vec<Cyclotomic> = (0..fd.phi).map(|i| Cyclotomic::zeta(d, i as i64).lift(self.conductor)).collect();
        let phi_n = self.coeffs.len();
        let mut m: Vec<Vec<Rational>> = (0..phi_n).map(|i| basis.iter().map(|b| b.coeffs[i]).collect()).collect();
        let mut rhs = self.coeffs.clone();
        let x = solve_rational(&mut m, &mut rhs)?;
        Some(Cyclotomic { conductor: d, coeffs: x })
    }

    /// Floating-point value, for ordering and display heuristics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let v = *c.numer() as f64 / *c.denom() as f64;
            let t = std::f64::consts::TAU * i as f64 / n;
            (re + v * t.cos(), im + v * t.sin())
        })
    }

    /// `Some(k)` with `self = ζ_n^k` when the element is an `n`-th root of unity.
    pub fn root_of_unity_exponent(&self, n: usize) -> Option<usize> {
        (0..n).find(|&k| *self == Cyclotomic::zeta(n, k as i64))
    }

    /// Compact human-readable form, e.g. `1/6`, `ω`, `-1-ω`, `2ζ12^5`.
    pub fn display(&self) -> String {
        let c = self.canonical();
        if c.conductor == 1 {
            return c.coeffs[0].to_string();
        }
        let n = c.conductor;
        if let Some(k) = c.root_of_unity_exponent(n) {
            return power_name(n, k);
        }
        if let Some(k) = (-&c).root_of_unity_exponent(n) {
            return format!("-{}", power_name(n, k));
        }
        let mut out = String::new();
        for (i, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let term = if i == 0 { String::new() } else { power_name(n, i) };
            let sign = if q.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = q.abs();
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                term
            } else {
                format!("{mag}{term}")
            };
            out.push_str(sign);
            out.push_str(&body);
        }
        out
    }
}

fn power_name(n: usize, k: usize) -> String {
    if k == 0 {
        return "1".into();
    }
    let base = match n {
        3 => "ω".to_string(),
        4 => "i".to_string(),
        _ => format!("ζ{n}"),
    };
    match (n, k) {
        (3, 2) => "ω²".into(),
        (_, 1) => base,
        _ => format!("{base}^{k}"),
    }
}

/// Gaussian elimination over `Q` for a consistent system; `None` if inconsistent.
fn solve_rational(m: &mut [Vec<Rational>], rhs: &mut [Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        rhs[r] *= inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
                let v = rhs[r];
                rhs[i] -= f * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i];
    }
    Some(x)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 {
            return rhs.scale(self.coeffs[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(rhs.coeffs[0]);
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.conductor;
        let mut by_exp = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    by_exp[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic::from_exponents(n, &by_exp)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Accumulates sums of roots of unity `ζ_n^k` by exponent, then converts once.
#[derive(Debug, Clone)]
pub struct RootSum {
    n: usize,
    counts: Vec<Rational>,
}

impl RootSum {
    pub fn new(n: usize) -> Self {
        RootSum { n, counts: vec![Rational::zero(); n] }
    }

    pub fn add_power(&mut self, k: i64, weight: Rational) {
        let e = k.rem_euclid(self.n as i64) as usize;
        self.counts[e] += weight;
    }

    pub fn finish(&self) -> Cyclotomic {
        Cyclotomic::from_exponents(self.n, &self.counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cube_roots() {
        let w = Cyclotomic::zeta(3, 1);
        let one = Cyclotomic::one();
        assert!((&(&one + &w) + &w.pow(2)).is_zero());
        assert_eq!(w.pow(3), one);
        assert_eq!(w.conj(), w.pow(2));
        assert_eq!(w.display(), "ω");
        assert_eq!(w.conj().display(), "ω²");
        assert_eq!(Cyclotomic::from_ratio(-1, 6).display(), "-1/6");
    }

    #[test]
    fn conductor_mixing_and_reduction() {
        // ζ6 = -ω² lies in Q(ζ3); ζ4^2 = -1.
        let z6 = Cyclotomic::zeta(6, 1);
        assert_eq!(z6, -Cyclotomic::zeta(3, 2));
        assert_eq!(z6.canonical().conductor(), 3);
        assert_eq!(Cyclotomic::zeta(4, 2).to_rational(), Some(Rational::from_integer(-1)));
        let s = &Cyclotomic::zeta(12, 1) + &Cyclotomic::zeta(12, 11);
        // 2cos(π/6) = √3 lies in Q(ζ12) but not in Q(ζ3) or Q(ζ4).
        assert_eq!(s.canonical().conductor(), 12);
        assert_eq!((&s * &s).to_integer(), Some(3));
    }

    #[test]
    fn inverse_round_trips() {
        let a = &Cyclotomic::from_int(2) + &Cyclotomic::zeta(5, 1);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn totients() {
        assert_eq!(totient(12), 4);
        for n in 1..40 {
            assert_eq!(Cyclotomic::zeta(n, 0).coeffs().len(), totient(n));
        }
    }

    fn arb_element() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1usize, 2, 3, 4, 5, 6, 8, 12]), prop::collection::vec(-5i64..5, 12)).prop_map(|(n, c)| {
            let by_exp: Vec<Rational> = (0..n).map(|i| Rational::from_integer(c[i] as i128)).collect();
            Cyclotomic::from_exponents(n, &by_exp)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn lift_round_trips(a in arb_element(), k in 1usize..4) {
            let up = a.lift(a.conductor() * k);
            prop_assert_eq!(&up, &a);
            prop_assert_eq!(up.canonical(), a.canonical());
        }

        #[test]
        fn norm_of_scaled_root_is_nonnegative_rational(n in 1usize..13, k in 0i64..13, p in -9i64..9, q in 1i64..9) {
            let a = Cyclotomic::zeta(n, k).scale(Rational::new(p as i128, q as i128));
            let norm = (&a * &a.conj()).to_rational().expect("rational");
            prop_assert!(norm >= Rational::zero());
        }
    }
}
