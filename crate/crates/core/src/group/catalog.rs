//! Group descriptors: catalog names, permutation generators and direct products.
//!
//! Grammar:
//!
//! ```text
//! descriptor := factor ("x" factor)*
//! factor     := "S3" | "A3" | "S4" | "D4" | "Q8" | "C<n>" | "C<n>:<k>" | "1"
//!             | "perm:" cycles ("," cycles)*
//! ```
//!
//! `C<n>:<k>` is the semidirect product `C_n ⋊ C_m` where the generator of
//! `C_m` acts by `x ↦ x^k` and `m` is the multiplicative order of `k` mod `n`
//! (so `C3:2` is `S3`, `C4:3` is `D4`).

use std::sync::Arc;

use super::{FiniteGroup, ProductInfo};
use crate::error::{Error, Result};

/// Default cap on the size of a group produced by [`build_group`].
pub const DEFAULT_BUILD_CAP: usize = 4096;

pub fn build_group(desc: &str) -> Result<FiniteGroup> {
    build_group_with_cap(desc, DEFAULT_BUILD_CAP)
}

pub fn build_group_with_cap(desc: &str, cap: usize) -> Result<FiniteGroup> {
    let desc = desc.trim();
    if let Some(rest) = desc.strip_prefix("perm:") {
        let gens = parse_generators(rest)?;
        let degree = gens.iter().map(|g| g.len()).max().unwrap_or(1);
        let gens: Vec<Vec<usize>> = gens.into_iter().map(|g| extend(g, degree)).collect();
        return permutation_group(desc, &gens, degree, cap);
    }
    let parts: Vec<&str> = desc.split('x').map(str::trim).collect();
    if parts.len() > 1 {
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::UnknownGroup(desc.to_string()));
        }
        let mut acc = Arc::new(build_factor(parts[0], cap)?);
        for p in &parts[1..] {
            let rhs = Arc::new(build_factor(p, cap)?);
            if acc.order() * rhs.order() > cap {
                return Err(Error::CapExceeded { what: desc.to_string(), size: acc.order() * rhs.order(), cap });
            }
            acc = Arc::new(direct_product(&acc, &rhs));
        }
        return Ok(Arc::try_unwrap(acc).unwrap_or_else(|a| a.renamed(a.name())));
    }
    build_factor(desc, cap)
}

fn build_factor(name: &str, cap: usize) -> Result<FiniteGroup> {
    let perm = |gens: &[&str], degree: usize| -> Result<FiniteGroup> {
        let gens = gens
            .iter()
            .map(|c| parse_cycles(c).map(|p| extend(p, degree)))
            .collect::<Result<Vec<_>>>()?;
        permutation_group(name, &gens, degree, cap)
    };
    match name {
        "1" | "C1" | "e" | "trivial" => cyclic(name, 1, cap),
        "S3" => perm(&["(1 2 3)", "(1 2)"], 3),
        "A3" => perm(&["(1 2 3)"], 3),
        "D4" => perm(&["(1 2 3 4)", "(1 3)"], 4),
        "S4" => perm(&["(1 2 3 4)", "(1 2)"], 4),
        "A4" => perm(&["(1 2 3)", "(1 2)(3 4)"], 4),
        "Q8" => quaternion(cap),
        _ => {
            let body = name.strip_prefix('C').ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
            let (n, k) = match body.split_once(':') {
                Some((n, k)) => (n, Some(k)),
                None => (body, None),
            };
            let n: usize = n.parse().map_err(|_| Error::UnknownGroup(name.to_string()))?;
            if n == 0 {
                return Err(Error::UnknownGroup(name.to_string()));
            }
            match k {
                None => cyclic(name, n, cap),
                Some(k) => {
                    let k: usize = k.parse().map_err(|_| Error::UnknownGroup(name.to_string()))?;
                    metacyclic(name, n, k, cap)
                }
            }
        }
    }
}

fn cyclic(name: &str, n: usize, cap: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_generators(
        name,
        0usize,
        &[1 % n],
        |a, b| (a + b) % n,
        |&a| match a {
            0 => "e".to_string(),
            1 => "a".to_string(),
            k => format!("a^{k}"),
        },
        cap,
    )
}

fn metacyclic(name: &str, n: usize, k: usize, cap: usize) -> Result<FiniteGroup> {
    if num_integer::gcd(n, k % n.max(1)) != 1 && n > 1 {
        return Err(Error::UnknownGroup(format!("{name}: {k} is not a unit mod {n}")));
    }
    let k = k % n;
    let mut m = 1;
    let mut p = k % n;
    while p != 1 % n {
        p = p * k % n;
        m += 1;
    }
    // (a, b) stands for x^a y^b with y x y⁻¹ = x^k.
    let kpow = |b: usize| (0..b).fold(1 % n, |acc, _| acc * k % n);
    FiniteGroup::from_generators(
        name,
        (0usize, 0usize),
        &[(1 % n, 0), (0, 1 % m)],
        |&(a1, b1), &(a2, b2)| ((a1 + kpow(b1) * a2) % n, (b1 + b2) % m),
        |&(a, b)| {
            let x = match a {
                0 => String::new(),
                1 => "x".into(),
                a => format!("x^{a}"),
            };
            let y = match b {
                0 => String::new(),
                1 => "y".into(),
                b => format!("y^{b}"),
            };
            if x.is_empty() && y.is_empty() {
                "e".into()
            } else {
                format!("{x}{y}")
            }
        },
        cap,
    )
}

fn quaternion(cap: usize) -> Result<FiniteGroup> {
    // (negative, unit) with unit 0..4 = 1, i, j, k.
    fn mul(&(sa, a): &(bool, u8), &(sb, b): &(bool, u8)) -> (bool, u8) {
        let (s, u) = match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        (s ^ sa ^ sb, u)
    }
    FiniteGroup::from_generators(
        "Q8",
        (false, 0u8),
        &[(false, 1), (false, 2)],
        mul,
        |&(s, u)| {
            let base = ["1", "i", "j", "k"][u as usize];
            if s {
                format!("-{base}")
            } else {
                base.to_string()
            }
        },
        cap,
    )
}

fn extend(mut p: Vec<usize>, degree: usize) -> Vec<usize> {
    while p.len() < degree {
        p.push(p.len());
    }
    p
}

/// Parses one permutation in 1-based cycle notation, e.g. `(1 2 3)(4 5)`.
/// Whitespace is insignificant inside cycles when every point is a single
/// digit (`(123)` reads as `(1 2 3)`); commas may separate points.
pub fn parse_cycles(text: &str) -> Result<Vec<usize>> {
    let err = |m: &str| Error::MalformedCycles(format!("{m}: `{text}`"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = body_start.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let body = &body_start[..close];
        let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
            body.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err("non-numeric point")))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| err("non-numeric point")))
                .collect::<Result<_>>()?
        };
        if points.contains(&0) {
            return Err(err("points are 1-based"));
        }
        cycles.push(points.iter().map(|p| p - 1).collect());
        rest = body_start[close + 1..].trim_start();
    }
    let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(1);
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    for c in &cycles {
        for &p in c {
            if seen[p] {
                return Err(err("point repeated across cycles"));
            }
            seen[p] = true;
        }
        for (i, &p) in c.iter().enumerate() {
            perm[p] = c[(i + 1) % c.len()];
        }
    }
    Ok(perm)
}

fn parse_generators(text: &str) -> Result<Vec<Vec<usize>>> {
    // Generators are separated by commas outside parentheses.
    let mut gens = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            gens.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    gens.push(cur);
    let gens: Vec<&String> = gens.iter().filter(|g| !g.trim().is_empty()).collect();
    if gens.is_empty() {
        return Err(Error::MalformedCycles("no generators".into()));
    }
    gens.into_iter().map(|g| parse_cycles(g)).collect()
}

fn cycle_label(p: &[usize]) -> String {
    let n = p.len();
    let wide = n > 9;
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        let sep = if wide { "," } else { "" };
        out.push('(');
        out.push_str(&cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

fn permutation_group(name: &str, gens: &[Vec<usize>], degree: usize, cap: usize) -> Result<FiniteGroup> {
    let id: Vec<usize> = (0..degree).collect();
    // Left-to-right composition: apply `a`, then `b`.
    FiniteGroup::from_generators(name, id, gens, |a, b| a.iter().map(|&i| b[i]).collect(), |p| cycle_label(p), cap)
}

/// Direct product `G × Q` with element `(g, q)` at index `g·|Q| + q`.
pub fn direct_product(left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> FiniteGroup {
    let (n, m) = (left.order(), right.order());
    let total = n * m;
    let mut mult = vec![0u32; total * total];
    for a in 0..total {
        let (g1, q1) = (a / m, a % m);
        for b in 0..total {
            let (g2, q2) = (b / m, b % m);
            mult[a * total + b] = (left.mul(g1, g2) * m + right.mul(q1, q2)) as u32;
        }
    }
    let inv = (0..total).map(|a| (left.inv(a / m) * m + right.inv(a % m)) as u32).collect();
    let labels = (0..total).map(|a| format!("({},{})", left.label(a / m), right.label(a % m))).collect();
    FiniteGroup::from_parts(
        format!("{}x{}", left.name(), right.name()),
        total,
        mult,
        inv,
        Some(labels),
        Some(ProductInfo { left: left.clone(), right: right.clone() }),
    )
}
