//! One function per subcommand: build the payload, the tables and, on request,
//! the list of violated properties.

use std::sync::Arc;

use doublet_core::algebras::{classify_algebras, modular_invariant, verify_invariance, AlgebraDatum};
use doublet_core::cyclotomic::Cyclotomic;
use doublet_core::dw::{count_homomorphisms, presentation};
use doublet_core::group::{build_group_with_cap, enumeration_cap};
use doublet_core::modular::{pair_inner_product, verify_modularity, Double, ModularityReport, Witnesses};
use doublet_core::products::{build_parent_graph, maximal_algebras, product_label, ribbon_equivalences};
use doublet_core::{FiniteGroup, Result};
use serde_json::{json, Value};

use crate::render::{cyclotomic, cyclotomic_matrix, display_rows, rational, Rendered, Table};

/// Result of a command: output plus any property violations found by `--verify`.
pub struct Outcome {
    pub rendered: Rendered,
    pub violations: Vec<String>,
}

impl Outcome {
    fn new(payload: Value, tables: Vec<Table>) -> Self {
        Outcome { rendered: Rendered { payload, tables }, violations: Vec::new() }
    }

    fn with_violations(mut self, v: Vec<String>) -> Self {
        self.violations = v;
        self
    }
}

pub fn group(desc: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group_with_cap(desc, enumeration_cap())?))
}

fn labels(d: &Double) -> Vec<String> {
    d.simples().iter().map(|s| s.label.clone()).collect()
}

fn modularity_violations(report: &ModularityReport) -> Vec<String> {
    let mut v = Vec::new();
    let checks = [
        ("S is not symmetric", report.symmetric),
        ("S is not invertible", report.invertible),
        ("S^4 is not the identity", report.s4_identity),
        ("(TS)^3 is not a multiple of S^2", report.lambda.is_some()),
        ("first row of S is not positive", report.unit_row_positive),
    ];
    for (msg, ok) in checks {
        if !ok {
            v.push(msg.to_string());
        }
    }
    v
}

fn check_modularity(d: &Double) -> Vec<String> {
    modularity_violations(&verify_modularity(&d.s_matrix(), &d.t_matrix(), d.group().order()))
}

fn sum_label(mult: &[u64]) -> String {
    let terms: Vec<String> = mult
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| if m == 1 { format!("χ{i}") } else { format!("{m}χ{i}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn simples(g: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let d = Double::new(g)?;
    let twists = d.t_diagonal();
    let mut table = Table::new(format!("simples of Z({})", g.name()), &["index", "label", "class size", "centralizer", "dim", "twist"]);
    let mut items = Vec::new();
    for (i, s) in d.simples().iter().enumerate() {
        let class_size = g.conjugacy_classes()[s.class_index].size();
        table.push(vec![
            i.to_string(),
            s.label.clone(),
            class_size.to_string(),
            s.centralizer.order().to_string(),
            d.dimension(i).to_string(),
            twists[i].display(),
        ]);
        items.push(json!({
            "index": i,
            "label": s.label,
            "classRep": g.label(s.rep),
            "classSize": class_size,
            "centralizerOrder": s.centralizer.order(),
            "irrep": s.irrep,
            "dimension": d.dimension(i),
            "twist": cyclotomic(&twists[i]),
        }));
    }
    let payload = json!({ "group": g.name(), "order": g.order(), "rank": d.rank(), "globalDimension": d.global_dimension(), "simples": items });
    let v = if verify { check_modularity(&d) } else { Vec::new() };
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn smatrix(g: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let d = Double::new(g)?;
    let s = d.s_matrix().rows();
    let basis = labels(&d);
    let table = Table::labeled_matrix(format!("S-matrix of Z({})", g.name()), &basis, display_rows(&s));
    let payload = json!({ "group": g.name(), "basis": basis, "rows": basis, "cols": basis, "matrix": cyclotomic_matrix(&s) });
    let v = if verify { check_modularity(&d) } else { Vec::new() };
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn tmatrix(g: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let d = Double::new(g)?;
    let t = d.t_matrix().rows();
    let diag = d.t_diagonal();
    let basis = labels(&d);
    let table = Table::labeled_matrix(format!("T-matrix of Z({})", g.name()), &basis, display_rows(&t));
    let payload = json!({
        "group": g.name(),
        "basis": basis,
        "rows": basis,
        "cols": basis,
        "diagonal": diag.iter().map(cyclotomic).collect::<Vec<_>>(),
        "matrix": cyclotomic_matrix(&t),
    });
    let v = if verify { check_modularity(&d) } else { Vec::new() };
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

fn orthonormality_violations(d: &Double) -> Result<Vec<String>> {
    let chars = d.simple_characters();
    let mut v = Vec::new();
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let want = Cyclotomic::from_int(i64::from(i == j));
            if pair_inner_product(a, b)? != want {
                v.push(format!("<χ{i},χ{j}> is not {}", want.display()));
            }
        }
    }
    Ok(v)
}

pub fn characters(g: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let d = Double::new(g)?;
    let pairs = g.commuting_pairs();
    let pair_labels: Vec<String> = pairs.pairs().iter().map(|&(f, h)| format!("({},{})", g.label(f), g.label(h))).collect();
    let mut header = vec!["pair".to_string()];
    header.extend((0..d.rank()).map(|i| format!("χ{i}")));
    let mut table = Table { title: format!("simple characters of Z({})", g.name()), header, rows: Vec::new() };
    let chars = d.simple_characters();
    for (k, l) in pair_labels.iter().enumerate() {
        let mut row = vec![l.clone()];
        row.extend(chars.iter().map(|c| c.values()[k].display()));
        table.push(row);
    }
    let items: Vec<Value> = chars
        .iter()
        .zip(d.simples())
        .map(|(c, s)| json!({ "label": s.label, "values": c.values().iter().map(cyclotomic).collect::<Vec<_>>() }))
        .collect();
    let payload = json!({
        "group": g.name(),
        "pairs": pair_labels,
        "characters": items,
        "dualPermutation": d.dual_permutation(),
        "conjugatePermutation": d.conjugate_permutation(),
    });
    let v = if verify { orthonormality_violations(&d)? } else { Vec::new() };
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

fn algebra_violations(d: &Double, algebras: &[AlgebraDatum]) -> Vec<String> {
    let mut v = Vec::new();
    for a in algebras {
        if !a.twist_check() {
            v.push(format!("{}: twist check failed", a.label()));
        }
        if let Err(e) = a.check_equations() {
            v.push(format!("{}: {e}", a.label()));
        }
        let chi = a.character();
        if a.is_trivialising() && !verify_invariance(&chi).passed() {
            v.push(format!("{}: character is not modular invariant", a.label()));
        }
        if let Err(e) = d.decompose(&chi) {
            v.push(format!("{}: {e}", a.label()));
        }
    }
    v
}

pub fn algebras(g: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let d = Double::new(g)?;
    let list = classify_algebras(g)?;
    let mut table = Table::new(format!("algebras in Z({})", g.name()), &["index", "H⊳F", "|H|", "|F|", "trivialising", "decomposition"]);
    let mut items = Vec::new();
    for (k, a) in list.iter().enumerate() {
        let mult = d.decompose(&a.character())?;
        table.push(vec![
            k.to_string(),
            a.label(),
            a.h().order().to_string(),
            a.f().order().to_string(),
            a.is_trivialising().to_string(),
            sum_label(&mult),
        ]);
        items.push(json!({
            "index": k,
            "label": a.label(),
            "hOrder": a.h().order(),
            "fOrder": a.f().order(),
            "trivialising": a.is_trivialising(),
            "modulus": a.modulus(),
            "dimension": mult.iter().enumerate().map(|(i, &m)| m as usize * d.dimension(i)).sum::<usize>(),
            "decomposition": mult,
            "character": sum_label(&mult),
        }));
    }
    let payload = json!({ "group": g.name(), "count": list.len(), "algebras": items });
    let v = if verify { algebra_violations(&d, &list) } else { Vec::new() };
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn invariants(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let (dg, dq) = (Double::new(g)?, Double::new(q)?);
    let list = maximal_algebras(g, q)?;
    let mut table = Table::new(format!("modular invariants of Z({})⊠Z({})", g.name(), q.name()), &["index", "algebra", "partition function"]);
    let mut items = Vec::new();
    let mut v = Vec::new();
    for (k, a) in list.iter().enumerate() {
        let m = modular_invariant(&dg, &dq, &a.gamma)?;
        let z = m.partition_function();
        table.push(vec![k.to_string(), a.label(), z.clone()]);
        items.push(json!({
            "index": k,
            "label": a.label(),
            "subgroupOrder": a.u().order(),
            "twisted": a.twisted,
            "rows": labels(&dg),
            "cols": labels(&dq),
            "matrix": m.entries(),
            "partitionFunction": z,
        }));
        if verify {
            if m.get(0, 0) != 1 {
                v.push(format!("{}: vacuum coefficient is {}", a.label(), m.get(0, 0)));
            }
            let chi = doublet_core::algebras::algebra_character(&doublet_core::algebras::TrivialisingAlgebra::new(&a.gamma));
            if !verify_invariance(&chi).passed() {
                v.push(format!("{}: character is not modular invariant", a.label()));
            }
        }
    }
    let payload = json!({ "left": g.name(), "right": q.name(), "count": list.len(), "invariants": items });
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn parents(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let (dg, dq) = (Double::new(g)?, Double::new(q)?);
    let list = maximal_algebras(g, q)?;
    let mut table = Table::new(format!("parents in Z({})⊠Z({})", g.name(), q.name()), &["index", "algebra", "left parent", "left", "right parent", "right"]);
    let mut items = Vec::new();
    let mut v = Vec::new();
    for (k, a) in list.iter().enumerate() {
        let lm = dg.decompose(&a.left_parent.character())?;
        let rm = dq.decompose(&a.right_parent.character())?;
        table.push(vec![k.to_string(), a.label(), a.left_parent.label(), sum_label(&lm), a.right_parent.label(), sum_label(&rm)]);
        items.push(json!({
            "index": k,
            "label": a.label(),
            "left": { "label": a.left_parent.label(), "decomposition": lm },
            "right": { "label": a.right_parent.label(), "decomposition": rm },
        }));
        if verify {
            v.extend(algebra_violations(&dg, std::slice::from_ref(&a.left_parent)));
            v.extend(algebra_violations(&dq, std::slice::from_ref(&a.right_parent)));
        }
    }
    let payload = json!({ "left": g.name(), "right": q.name(), "count": list.len(), "parents": items });
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn equivalences(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let list = ribbon_equivalences(g, q)?;
    let mut table = Table::new(format!("equivalences Z({}) ≃ Z({})", g.name(), q.name()), &["index", "subgroup", "order", "twisted", "|P|"]);
    let mut items = Vec::new();
    let mut v = Vec::new();
    for (k, e) in list.iter().enumerate() {
        let twisted = doublet_core::cohomology::is_coboundary(&e.gamma).is_none();
        table.push(vec![k.to_string(), product_label(e.u()), e.u().order().to_string(), twisted.to_string(), e.goursat.p.order().to_string()]);
        items.push(json!({
            "index": k,
            "subgroup": product_label(e.u()),
            "order": e.u().order(),
            "twisted": twisted,
            "goursat": {
                "m": doublet_core::algebras::subgroup_label(&e.goursat.m),
                "n": doublet_core::algebras::subgroup_label(&e.goursat.n),
                "quotientOrder": e.goursat.p.order(),
            },
        }));
        if verify && !doublet_core::products::pairing_is_nondegenerate(&e.gamma) {
            v.push(format!("equivalence {k}: pairing is degenerate"));
        }
    }
    let payload = json!({ "left": g.name(), "right": q.name(), "count": list.len(), "equivalences": items });
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

pub fn graph(g: &Arc<FiniteGroup>, q: &Arc<FiniteGroup>, verify: bool) -> Result<Outcome> {
    let (dg, dq) = (Double::new(g)?, Double::new(q)?);
    let pg = build_parent_graph(g, q)?;
    let mut vertices = Vec::new();
    let mut vtable = Table::new("vertices", &["id", "side", "algebra", "decomposition"]);
    let sides: Vec<(&str, &Double, &[AlgebraDatum])> = if pg.shared {
        vec![("both", &dg, &pg.left_vertices)]
    } else {
        vec![("left", &dg, &pg.left_vertices), ("right", &dq, &pg.right_vertices)]
    };
    for (side, d, list) in sides {
        for a in list {
            let id = vertices.len();
            let mult = d.decompose(&a.character())?;
            vtable.push(vec![id.to_string(), side.into(), a.label(), sum_label(&mult)]);
            vertices.push(json!({ "id": id, "side": side, "label": a.label(), "decomposition": mult }));
        }
    }
    let mut etable = Table::new("edges", &["algebra", "left", "right"]);
    let mut edges = Vec::new();
    for (a, &(l, r)) in pg.algebras.iter().zip(&pg.edges) {
        let r = pg.right_id(r);
        etable.push(vec![a.label(), l.to_string(), r.to_string()]);
        edges.push(json!({ "algebra": a.label(), "left": l, "right": r }));
    }
    let components = pg.components();
    let payload = json!({
        "left": g.name(),
        "right": q.name(),
        "vertexCount": pg.vertex_count(),
        "edgeCount": pg.edge_count(),
        "vertices": vertices,
        "edges": edges,
        "components": components,
    });
    let mut v = Vec::new();
    if verify && pg.edges.len() != pg.algebras.len() {
        v.push("edge count differs from the number of maximal algebras".into());
    }
    Ok(Outcome::new(payload, vec![vtable, etable]).with_violations(v))
}

pub fn dw(g: &Arc<FiniteGroup>, manifold: &str, verify: bool) -> Result<Outcome> {
    let p = presentation(manifold)?;
    let homs = count_homomorphisms(&p, g)?;
    let z = doublet_core::dw::dw_invariant(&p, g)?;
    let mut table = Table::new(format!("Dijkgraaf-Witten invariant of {} for {}", p.name(), g.name()), &["manifold", "presentation", "homomorphisms", "invariant"]);
    table.push(vec![p.name().into(), p.to_string(), homs.to_string(), z.to_string()]);
    let payload = json!({
        "group": g.name(),
        "manifold": p.name(),
        "presentation": p.to_string(),
        "homomorphisms": homs,
        "invariant": rational(&z),
        "display": z.to_string(),
    });
    let mut v = Vec::new();
    if verify && homs == 0 {
        v.push("the trivial homomorphism was not counted".into());
    }
    Ok(Outcome::new(payload, vec![table]).with_violations(v))
}

/// The full property suite on one group; violations are the output.
pub fn verify_group(g: &Arc<FiniteGroup>) -> Result<Outcome> {
    let d = Double::new(g)?;
    let s = d.s_matrix();
    let mut checks: Vec<(String, Vec<String>)> = Vec::new();
    checks.push(("modularity".into(), modularity_violations(&verify_modularity(&s, &d.t_matrix(), g.order()))));
    checks.push(("orthonormality".into(), orthonormality_violations(&d)?));
    let dim = d.global_dimension();
    let want = g.order() * g.order();
    checks.push(("global dimension".into(), if dim == want { vec![] } else { vec![format!("global dimension {dim}, expected {want}")] }));
    let witness = (1..=3u64)
        .filter(|&seed| d.s_matrix_with(Witnesses::Seeded(seed)) != s)
        .map(|seed| format!("S differs under witness seed {seed}"))
        .collect();
    checks.push(("witness independence".into(), witness));
    let list = classify_algebras(g)?;
    checks.push(("algebras".into(), algebra_violations(&d, &list)));

    let mut table = Table::new(format!("property suite for {}", g.name()), &["check", "result"]);
    let mut items = Vec::new();
    let mut all = Vec::new();
    for (name, v) in checks {
        table.push(vec![name.clone(), if v.is_empty() { "PASS".into() } else { format!("FAIL: {}", v.join("; ")) }]);
        items.push(json!({ "check": name, "passed": v.is_empty(), "violations": v }));
        all.extend(v);
    }
    let payload = json!({ "group": g.name(), "passed": all.is_empty(), "algebraCount": list.len(), "checks": items });
    Ok(Outcome::new(payload, vec![table]).with_violations(all))
}
