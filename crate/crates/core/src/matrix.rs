//! Dense square matrices over a cyclotomic field.

use num_integer::Integer;
use num_traits::Zero;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::exec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        CycMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n).map(|k| if k / n == k % n { Cyclotomic::one() } else { Cyclotomic::zero() }).collect();
        CycMatrix { n, entries }
    }

    pub fn diagonal(d: &[Cyclotomic]) -> Self {
        let n = d.len();
        let mut m = CycMatrix { n, entries: vec![Cyclotomic::zero(); n * n] };
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        CycMatrix { n, entries: (0..n * n).map(|k| self.entries[(k % n) * n + k / n].clone()).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        CycMatrix { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Product computed in a common conductor, reducing each entry once.
    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let conductor = self.entries.iter().chain(&other.entries).fold(1usize, |acc, x| acc.lcm(&x.conductor()));
        let lift = |m: &CycMatrix| -> Vec<Vec<(usize, Rational)>> {
            m.entries
                .iter()
                .map(|x| {
                    x.lift(conductor).coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, *c)).collect()
                })
                .collect()
        };
        let (a, b) = (lift(self), lift(other));
        let rows = exec::map_range(n, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = vec![Rational::zero(); conductor];
                    for k in 0..n {
                        for (ea, ca) in &a[i * n + k] {
                            for (eb, cb) in &b[k * n + j] {
                                acc[(ea + eb) % conductor] += ca * cb;
                            }
                        }
                    }
                    Cyclotomic::from_exponents(conductor, &acc)
                })
                .collect::<Vec<_>>()
        });
        CycMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn pow(&self, k: u32) -> CycMatrix {
        (0..k).fold(CycMatrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `Some(λ)` when `self = λ·other`.
    pub fn scalar_multiple_of(&self, other: &CycMatrix) -> Option<Cyclotomic> {
        let k = (0..self.n * self.n).find(|&k| !other.entries[k].is_zero())?;
        let lambda = &self.entries[k] * &other.entries[k].inverse()?;
        (*self == other.scale(&lambda)).then_some(lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_match_entrywise_formula() {
        let w = Cyclotomic::zeta(3, 1);
        let a = CycMatrix::from_rows(vec![vec![Cyclotomic::one(), w.clone()], vec![Cyclotomic::from_ratio(1, 2), Cyclotomic::zeta(4, 1)]]);
        let p = a.mul(&a);
        for i in 0..2 {
            for j in 0..2 {
                let want = &(a.get(i, 0) * a.get(0, j)) + &(a.get(i, 1) * a.get(1, j));
                assert_eq!(*p.get(i, j), want);
            }
        }
        assert_eq!(a.mul(&CycMatrix::identity(2)), a);
        assert_eq!(p.scale(&Cyclotomic::from_int(3)).scalar_multiple_of(&p), Some(Cyclotomic::from_int(3)));
    }
}
