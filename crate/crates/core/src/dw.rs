//! Invariants `Z_G(M) = |Hom(π₁(M), G)| / |G|` from finite presentations of
//! fundamental groups.

use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::FiniteGroup;
use crate::products::ribbon_equivalences;

pub const MAX_GENERATORS: usize = 4;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    name: String,
    generators: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(name: impl Into<String>, generators: usize, relators: Vec<Word>) -> Result<Self> {
        if generators > MAX_GENERATORS {
            return Err(Error::MalformedPresentation(format!("{generators} generators, at most {MAX_GENERATORS} allowed")));
        }
        if let Some(l) = relators.iter().flatten().find(|l| l.generator >= generators) {
            return Err(Error::MalformedPresentation(format!("generator x{} out of range", l.generator + 1)));
        }
        Ok(GroupPresentation { name: name.into(), generators, relators })
    }

    /// Parses `<n; w1, w2, ...>` with words such as `x1 x2^-1 x1^3`; `1` or an
    /// empty word is the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::MalformedPresentation(format!("{m} in `{text}`"));
        let inner = text.trim().strip_prefix('<').and_then(|s| s.strip_suffix('>')).ok_or_else(|| bad("missing angle brackets"))?;
        let (count, rest) = match inner.split_once(';') {
            Some((c, r)) => (c, r),
            None => (inner, ""),
        };
        let n: usize = count.trim().parse().map_err(|_| bad("bad generator count"))?;
        let mut relators = Vec::new();
        for w in rest.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            relators.push(parse_word(w).map_err(|m| bad(&m))?);
        }
        Self::new(text.trim(), n, relators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Free product: generators of `other` are shifted after ours.
    pub fn free_product(&self, other: &GroupPresentation) -> Result<Self> {
        let shift = self.generators;
        let moved = other.relators.iter().map(|w| w.iter().map(|l| Letter { generator: l.generator + shift, ..*l }).collect());
        let relators = self.relators.iter().cloned().chain(moved).collect();
        Self::new(format!("{} * {}", self.name, other.name), self.generators + other.generators, relators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "1".to_string();
                }
                let parts: Vec<String> =
                    w.iter().map(|l| format!("x{}{}", l.generator + 1, if l.inverse { "^-1" } else { "" })).collect();
                parts.join(" ")
            })
            .collect();
        if words.is_empty() {
            write!(f, "<{}>", self.generators)
        } else {
            write!(f, "<{}; {}>", self.generators, words.join(", "))
        }
    }
}

fn parse_word(w: &str) -> std::result::Result<Word, String> {
    let mut out = Vec::new();
    for tok in w.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| format!("bad exponent `{e}`"))?),
            None => (tok, 1),
        };
        let idx: usize = base
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| format!("bad generator `{base}`"))?;
        for _ in 0..exp.unsigned_abs() {
            out.push(Letter { generator: idx - 1, inverse: exp < 0 });
        }
    }
    Ok(out)
}

fn word(spec: &[(usize, i64)]) -> Word {
    spec.iter()
        .flat_map(|&(g, e)| std::iter::repeat_n(Letter { generator: g, inverse: e < 0 }, e.unsigned_abs() as usize))
        .collect()
}

fn commutator(a: usize, b: usize) -> Word {
    word(&[(a, 1), (b, 1), (a, -1), (b, -1)])
}

/// Fundamental groups of a few closed 3-manifolds (and `Z²`).
pub fn manifold_catalog() -> Vec<GroupPresentation> {
    let mut out = vec![
        GroupPresentation::new("S^3", 1, vec![word(&[(0, 1)])]),
        GroupPresentation::new("S^1xS^2", 1, vec![]),
        GroupPresentation::new("T^3", 3, vec![commutator(0, 1), commutator(0, 2), commutator(1, 2)]),
    ];
    for p in 2..=6 {
        out.push(GroupPresentation::new(format!("L({p},1)"), 1, vec![word(&[(0, p)])]));
    }
    out.push(GroupPresentation::new("Poincare", 2, vec![word(&[(0, 1), (1, 1), (0, 1), (1, 1), (0, -3)]), word(&[(0, 3), (1, -5)])]));
    out.push(GroupPresentation::new("Z^2", 2, vec![commutator(0, 1)]));
    out.into_iter().map(|p| p.expect("catalog presentations are well formed")).collect()
}

/// A catalog entry by name (case-insensitive), or a `<n; ...>` literal.
pub fn presentation(name: &str) -> Result<GroupPresentation> {
    if name.trim_start().starts_with('<') {
        return GroupPresentation::parse(name);
    }
    let norm = |s: &str| s.to_ascii_lowercase().replace(['^', ' '], "");
    let key = norm(name);
    // `L3` and `L(3)` are accepted for `L(3,1)`.
    let bare = key.strip_prefix('l').map(|d| d.trim_start_matches('(').trim_end_matches(')'));
    let key = match bare.and_then(|d| d.parse::<usize>().ok()) {
        Some(p) => format!("l({p},1)"),
        None => key,
    };
    manifold_catalog()
        .into_iter()
        .find(|p| norm(&p.name) == key)
        .ok_or_else(|| Error::MalformedPresentation(format!("unknown manifold `{name}`")))
}

fn evaluate(g: &FiniteGroup, w: &Word, images: &[usize]) -> usize {
    w.iter().fold(0, |acc, l| {
        let x = images[l.generator];
        g.mul(acc, if l.inverse { g.inv(x) } else { x })
    })
}

/// Number of assignments of generators to elements of `G` killing every relator.
pub fn count_homomorphisms(p: &GroupPresentation, g: &FiniteGroup) -> Result<u64> {
    count_homomorphisms_with_budget(p, g, DEFAULT_BUDGET)
}

pub fn count_homomorphisms_with_budget(p: &GroupPresentation, g: &FiniteGroup, budget: u64) -> Result<u64> {
    let n = p.generators;
    let size = (g.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > budget {
        return Err(Error::CapExceeded { what: "homomorphism search".into(), size: size as usize, cap: budget as usize });
    }
    if n == 0 {
        return Ok(1);
    }
    // Relators are checked as soon as their highest generator is assigned.
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for w in &p.relators {
        if let Some(k) = w.iter().map(|l| l.generator).max() {
            due[k].push(w);
        }
    }
    fn extend(g: &FiniteGroup, due: &[Vec<&Word>], images: &mut Vec<usize>) -> u64 {
        let k = images.len();
        if k == due.len() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.order() {
            images.push(x);
            if due[k].iter().all(|w| evaluate(g, w, images) == 0) {
                total += extend(g, due, images);
            }
            images.pop();
        }
        total
    }
    Ok(exec::sum_range(g.order(), |x| {
        let mut images = vec![x];
        if due[0].iter().all(|w| evaluate(g, w, &images) == 0) {
            extend(g, &due, &mut images)
        } else {
            0
        }
    }))
}

/// `|Hom(π, G)| / |G|`.
pub fn dw_invariant(p: &GroupPresentation, g: &FiniteGroup) -> Result<Rational> {
    Ok(Rational::new(count_homomorphisms(p, g)? as i128, g.order() as i128))
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub equivalences: usize,
    /// `(presentation, Z_G, Z_Q)`.
    pub rows: Vec<(String, Rational, Rational)>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|(_, a, b)| a == b)
    }

    pub fn discrepancies(&self) -> Vec<&str> {
        self.rows.iter().filter(|(_, a, b)| a != b).map(|(n, _, _)| n.as_str()).collect()
    }
}

/// Compares `Z_G` and `Z_Q` over a catalog; meaningful when `Z(G) ≅ Z(Q)`.
pub fn cross_validate(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>, catalog: &[GroupPresentation]) -> Result<CrossValidation> {
    let equivalences = ribbon_equivalences(g, q)?.len();
    let rows = catalog
        .iter()
        .map(|p| Ok((p.name().to_string(), dw_invariant(p, g)?, dw_invariant(p, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossValidation { equivalences, rows })
}
