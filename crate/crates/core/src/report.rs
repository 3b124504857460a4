//! Report documents for the command-line tool: JSON built in a fixed key
//! order, a plain-text rendering, and re-verification of the certificates a
//! report carries.

use serde_json::{json, Map, Value};

use crate::bimodule::{Bimodule, Side};
use crate::canonical::{build_canonical, verify_ring_axioms, CanonicalRings};
use crate::certify::{
    classify, find_conditional_expectation, find_d2_quasibases, find_hsep_system, find_separability_element,
    ClassificationReport, ConditionalExpectation, D2Quasibase, HSepSystem, PivotOrder, SeparabilityElement,
};
use crate::equivalences::{self as eq, IsoReport, ModuleInstance};
use crate::error::{Error, Result};
use crate::io::{self, matrix_from_json, matrix_json, vector_from_json, vector_json, Input, ModuleSide};
use crate::linalg::Vector;
use crate::normality::{self as nm, ideal_closure, Ideal};
use crate::scalar::Scalar;

pub const TOOL: &str = "ringext";

/// The certificate kinds accepted by `certify`.
pub const KINDS: [&str; 5] = ["separable", "split", "hsep", "d2-left", "d2-right"];

fn header(input: &Input, seed: u64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!({ "name": TOOL, "version": env!("CARGO_PKG_VERSION") }));
    m.insert("input".into(), input.document.clone());
    m.insert("seed".into(), json!(seed));
    m.insert("field".into(), io::field_json(input.field));
    m
}

fn rings(input: &Input) -> Result<CanonicalRings> {
    let c = build_canonical(&input.ext)?;
    let axioms = verify_ring_axioms(&c)?;
    if !axioms.all_passed() {
        return Err(Error::Inconsistency(format!("ring axioms fail: {:?}", axioms.failures())));
    }
    Ok(c)
}

fn dims_json(c: &CanonicalRings) -> Value {
    json!({
        "A": c.a().dim(),
        "B": c.ext.b().dim(),
        "square": c.square.dim(),
        "R": c.r.dim(),
        "T": c.t.dim(),
        "S": c.s.dim(),
        "casimir": c.casimir.dim(),
    })
}

/// Tensor-square elements are written over the simple tensors `e_i (x) e_j`
/// (index `i n + j`), using the canonical lift of the quotient class.
fn tensor_json(c: &CanonicalRings, t: &[Scalar]) -> Value {
    vector_json(&c.square.presentation().lift(t))
}

fn tensor_from_json(c: &CanonicalRings, v: &Value, what: &str) -> Result<Vector> {
    let n = c.a().dim();
    let ambient = vector_from_json(c.field(), v, n * n, what)?;
    Ok(c.square.presentation().project(&ambient))
}

fn separable_json(c: &CanonicalRings, e: &SeparabilityElement) -> Value {
    json!({ "e": tensor_json(c, &e.e) })
}

fn split_json(e: &ConditionalExpectation) -> Value {
    json!({ "map": matrix_json(&e.map) })
}

fn hsep_json(c: &CanonicalRings, h: &HSepSystem) -> Value {
    Value::Array(
        h.pairs
            .iter()
            .map(|(e, r)| json!({ "e": tensor_json(c, e), "r": vector_json(r) }))
            .collect(),
    )
}

fn d2_json(c: &CanonicalRings, q: &D2Quasibase) -> Value {
    let (tk, mk) = match q.side {
        Side::Left => ("t", "beta"),
        Side::Right => ("u", "gamma"),
    };
    Value::Array(
        q.pairs
            .iter()
            .map(|(t, m)| {
                let mut o = Map::new();
                o.insert(tk.into(), tensor_json(c, t));
                o.insert(mk.into(), matrix_json(m));
                Value::Object(o)
            })
            .collect(),
    )
}

fn opt<T>(x: &Option<T>, f: impl FnOnce(&T) -> Value) -> Value {
    x.as_ref().map(f).unwrap_or(Value::Null)
}

fn classification_json(r: &ClassificationReport) -> Value {
    json!({
        "separable": r.is_separable(),
        "split": r.is_split(),
        "h_separable": r.is_h_separable(),
        "left_d2": r.is_left_d2(),
        "right_d2": r.is_right_d2(),
        "left_d2_summand": r.left_d2_summand,
        "right_d2_summand": r.right_d2_summand,
        "hsep_summand": r.hsep_summand,
        "endo_d2": {
            "applicable": r.endo_d2.applicable,
            "holds": r.endo_d2.holds,
            "identification_verified": r.endo_d2.identification_verified,
        },
        "R_T": {
            "projective": r.r_t.projective,
            "generator": r.r_t.generator,
            "generated_by_one": r.r_t_cyclic_on_one,
        },
        "S_R": { "projective": r.s_r.projective, "generator": r.s_r.generator },
        "T_R_projective": r.t_r_projective,
        "R_S_projective": r.r_s_projective,
        "consistency_notes": r.consistency_notes,
    })
}

fn certificates_json(c: &CanonicalRings, r: &ClassificationReport) -> Value {
    json!({
        "separability_element": opt(&r.separable, |e| separable_json(c, e)),
        "conditional_expectation": opt(&r.split, split_json),
        "hsep_system": opt(&r.h_separable, |h| hsep_json(c, h)),
        "left_d2_quasibase": opt(&r.left_d2, |q| d2_json(c, q)),
        "right_d2_quasibase": opt(&r.right_d2, |q| d2_json(c, q)),
    })
}

pub fn iso_json(module: &str, r: &IsoReport) -> Value {
    json!({
        "iso": r.label,
        "module": module,
        "domain": r.domain,
        "codomain": r.codomain,
        "domain_dim": r.domain_dim,
        "codomain_dim": r.codomain_dim,
        "well_defined": r.well_defined,
        "bijective": r.bijective,
        "explicit_inverse": r.backward.is_some(),
        "inverse_verified": r.inverse_verified,
        "linear": r.linear,
        "naturality_samples": r.naturality_samples,
        "natural": r.natural,
        "verified": r.is_verified(),
    })
}

/// The modules an equivalence run uses: regular and seeded random ones on
/// both sides, then those declared in the input.
pub fn modules(input: &Input, seed: u64) -> Result<Vec<(ModuleSide, ModuleInstance)>> {
    let a = input.ext.a();
    let mut out = vec![
        (ModuleSide::Left, ModuleInstance::new("A", Bimodule::left_regular(a))),
        (ModuleSide::Right, ModuleInstance::new("A", Bimodule::right_regular(a))),
    ];
    let has = |name: &str| input.spec.modules.iter().any(|m| m.name == name);
    if !has("random-left") {
        out.push((ModuleSide::Left, ModuleInstance::new("random-left", eq::random_left_module(a, seed)?)));
    }
    if !has("random-right") {
        out.push((ModuleSide::Right, ModuleInstance::new("random-right", eq::random_right_module(a, seed)?)));
    }
    for spec in &input.spec.modules {
        out.push((spec.side, ModuleInstance::new(spec.name.clone(), io::build_module(input, spec, seed)?)));
    }
    Ok(out)
}

fn module_isos(
    c: &CanonicalRings,
    r: &ClassificationReport,
    side: ModuleSide,
    m: &ModuleInstance,
    seed: u64,
) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    match side {
        ModuleSide::Left => {
            let g = if let Some(e) = &r.separable {
                eq::gamma_separable(c, m, e, seed)?
            } else if let Some(q) = &r.left_d2 {
                eq::gamma_d2(c, m, q, seed)?
            } else {
                eq::gamma_plain(c, m, seed)?
            };
            out.push(iso_json(&m.label, &g));
            out.push(json!({ "iso": "triangle", "module": m.label, "verified": eq::triangle_check(c, &m.module)? }));
            if let Some(q) = &r.left_d2 {
                let f = eq::functor_iso_checks(c, m, Some(q), seed)?;
                out.push(iso_json(&m.label, &f.induction));
                out.push(iso_json(&m.label, &f.coinduction));
            }
        }
        ModuleSide::Right => {
            if let Some(q) = &r.left_d2 {
                out.push(iso_json(&m.label, &eq::chi_m(c, m, Some(q), seed)?));
                out.push(iso_json(&m.label, &eq::rho_m(c, m, true, seed)?));
            }
        }
    }
    Ok(out)
}

fn global_isos(c: &CanonicalRings, r: &ClassificationReport, seed: u64) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    out.push(iso_json("A", &eq::pi_a_iso(c, r.left_d2.as_ref(), seed)?));
    let b = ModuleInstance::new("B", Bimodule::regular(c.ext.b()));
    out.push(iso_json("B", &eq::split_counit(c, &b, r.split.as_ref(), seed)?));
    if let Some(e) = &r.separable {
        out.push(iso_json("A (bimodule)", &eq::gamma_separable(c, &ModuleInstance::new("A", c.a_a.clone()), e, seed)?));
    }
    Ok(out)
}

fn equivalences_json(input: &Input, c: &CanonicalRings, r: &ClassificationReport, seed: u64, only: Option<&str>) -> Result<Value> {
    let mut out = Vec::new();
    if only.is_none() {
        out.extend(global_isos(c, r, seed)?);
    }
    let mut found = false;
    for (side, m) in modules(input, seed)? {
        let key = format!("{}-{}", m.label, side_name(side));
        if let Some(name) = only {
            if name != m.label && name != key {
                continue;
            }
        }
        found = true;
        out.extend(module_isos(c, r, side, &m, seed)?);
    }
    if let (Some(name), false) = (only, found) {
        return Err(Error::Input(format!("no module named {name:?}")));
    }
    Ok(Value::Array(out))
}

fn side_name(s: ModuleSide) -> &'static str {
    match s {
        ModuleSide::Left => "left",
        ModuleSide::Right => "right",
    }
}

fn invariance_json(i: &nm::InvarianceCheck) -> Value {
    json!({ "name": i.label, "left_in_right": i.left_in_right, "right_in_left": i.right_in_left, "equal": i.equal() })
}

fn ideal_sample(input: &Input, c: &CanonicalRings) -> Result<Vec<Ideal>> {
    let mut ideals = nm::default_ideal_sample(c, input.group.as_ref())?;
    for spec in &input.spec.ideals {
        let mut j = ideal_closure(input.ext.a(), &io::ideal_generators(input, spec)?);
        j.label = spec.name.clone();
        ideals.push(j);
    }
    Ok(ideals)
}

fn normality_json(input: &Input, c: &CanonicalRings, r: &ClassificationReport) -> Result<Value> {
    let ideals = ideal_sample(input, c)?;
    let ms = [ModuleInstance::new("A", c.a_a.clone()), nm::square_instance(c)];
    let rep = nm::centralizer_normality_suite(c, &ideals, &ms, r.is_left_d2(), r.is_right_d2())?;
    let dc = nm::double_centralizer(&c.ext);
    let hopf = match (&input.group, &input.spec.subalgebra) {
        (Some(g), io::SubalgebraSpec::Subgroup { subgroup }) => {
            let h = nm::hopf_normality(g, subgroup, input.field)?;
            json!({
                "subgroup_normal": h.subgroup_normal,
                "conjugation_hopf_normal": h.conjugation_hopf_normal,
                "augmentation_test": h.augmentation_test,
                "agree": h.agree(),
            })
        }
        _ => Value::Null,
    };
    Ok(json!({
        "verdict": rep.verdict(),
        "ideal_sample": ideals.iter().map(|j| j.label.clone()).collect::<Vec<_>>(),
        "A_R": invariance_json(&rep.a_r),
        "ideals": rep.ideals.iter().map(invariance_json).collect::<Vec<_>>(),
        "bimodules": rep.bimodules.iter().map(invariance_json).collect::<Vec<_>>(),
        "bimodules_as_predicted": rep.bimodules_as_predicted(),
        "double_centralizer": { "C": dc.c.dim(), "CC": dc.cc.dim(), "strict": dc.strict },
        "hopf": hopf,
    }))
}

fn prebraided_json(c: &CanonicalRings, r: &ClassificationReport) -> Result<Value> {
    let naive = nm::naive_commutes(c);
    match &r.right_d2 {
        None => Ok(json!({ "applicable": false, "holds": Value::Null, "holds_reversed_pivots": Value::Null, "naive_commutative": naive })),
        Some(q) => {
            let rev = find_d2_quasibases(c, Side::Right, PivotOrder::Reversed)?
                .ok_or_else(|| Error::Inconsistency("right D2 quasibase depends on pivot order".into()))?;
            Ok(json!({
                "applicable": true,
                "holds": nm::prebraided_check(c, q)?,
                "holds_reversed_pivots": nm::prebraided_check(c, &rev)?,
                "naive_commutative": naive,
            }))
        }
    }
}

/// Everything: dimensions, verdicts, certificates, equivalences, normality
/// and pre-braided commutativity.
pub fn analyze(input: &Input, seed: u64) -> Result<Value> {
    let c = rings(input)?;
    let r = classify(&c)?;
    let mut m = header(input, seed);
    m.insert("dims".into(), dims_json(&c));
    m.insert("classification".into(), classification_json(&r));
    m.insert("certificates".into(), certificates_json(&c, &r));
    m.insert("equivalences".into(), equivalences_json(input, &c, &r, seed, None)?);
    m.insert("normality".into(), normality_json(input, &c, &r)?);
    m.insert("prebraided".into(), prebraided_json(&c, &r)?);
    Ok(Value::Object(m))
}

pub fn certify(input: &Input, kind: &str, seed: u64) -> Result<Value> {
    let c = rings(input)?;
    let (key, cert) = match kind {
        "separable" => ("separability_element", opt(&find_separability_element(&c)?, |e| separable_json(&c, e))),
        "split" => ("conditional_expectation", opt(&find_conditional_expectation(&c)?, split_json)),
        "hsep" => ("hsep_system", opt(&find_hsep_system(&c)?, |h| hsep_json(&c, h))),
        "d2-left" => (
            "left_d2_quasibase",
            opt(&find_d2_quasibases(&c, Side::Left, PivotOrder::Natural)?, |q| d2_json(&c, q)),
        ),
        "d2-right" => (
            "right_d2_quasibase",
            opt(&find_d2_quasibases(&c, Side::Right, PivotOrder::Natural)?, |q| d2_json(&c, q)),
        ),
        other => return Err(Error::Input(format!("unknown certificate kind {other:?}, expected one of {KINDS:?}"))),
    };
    let mut m = header(input, seed);
    m.insert("kind".into(), json!(kind));
    m.insert("verdict".into(), json!(!cert.is_null()));
    let mut certs = Map::new();
    certs.insert(key.into(), cert);
    m.insert("certificates".into(), Value::Object(certs));
    Ok(Value::Object(m))
}

pub fn equivalence(input: &Input, module: &str, seed: u64) -> Result<Value> {
    let c = rings(input)?;
    let r = classify(&c)?;
    let mut m = header(input, seed);
    m.insert("module".into(), json!(module));
    m.insert("equivalences".into(), equivalences_json(input, &c, &r, seed, Some(module))?);
    Ok(Value::Object(m))
}

pub fn normality(input: &Input, seed: u64) -> Result<Value> {
    let c = rings(input)?;
    let r = classify(&c)?;
    let mut m = header(input, seed);
    m.insert("normality".into(), normality_json(input, &c, &r)?);
    m.insert("prebraided".into(), prebraided_json(&c, &r)?);
    Ok(Value::Object(m))
}

/// The three Hopf normality tests on every subgroup (or the listed ones) of
/// a group file `{"field", "group": {"order", "cayley"}, "subgroups"?}`.
pub fn hopf(document: &Value) -> Result<Value> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct GroupFile {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        field: Option<io::FieldSpec>,
        group: io::GroupSpec,
        #[serde(default)]
        subgroups: Option<Vec<Vec<usize>>>,
    }
    let spec: GroupFile =
        serde_json::from_value(document.clone()).map_err(|e| Error::Input(format!("group file schema: {e}")))?;
    let field = match &spec.field {
        Some(f) => io::parse_field(f)?,
        None => crate::scalar::Field::Rational,
    };
    let g = io::parse_group(&spec.group)?;
    let subgroups = spec.subgroups.clone().unwrap_or_else(|| g.all_subgroups());
    let mut rows = Vec::with_capacity(subgroups.len());
    let mut all_agree = true;
    for h in &subgroups {
        let r = nm::hopf_normality(&g, h, field)?;
        all_agree &= r.agree();
        rows.push(json!({
            "subgroup": h,
            "subgroup_normal": r.subgroup_normal,
            "conjugation_hopf_normal": r.conjugation_hopf_normal,
            "augmentation_test": r.augmentation_test,
            "agree": r.agree(),
        }));
    }
    if !all_agree {
        return Err(Error::Inconsistency("Hopf normality tests disagree".into()));
    }
    Ok(json!({
        "tool": { "name": TOOL, "version": env!("CARGO_PKG_VERSION") },
        "name": spec.name,
        "field": io::field_json(field),
        "order": g.order(),
        "subgroups": rows,
        "all_agree": all_agree,
    }))
}

/// Re-validates every certificate in a report (from `analyze` or `certify`)
/// against the extension rebuilt from its input echo.
pub fn verify(report: &Value) -> Result<Value> {
    let doc = report
        .get("input")
        .ok_or_else(|| Error::Input("report has no input echo".into()))?;
    let input = io::input_from_value(doc.clone())?;
    let c = rings(&input)?;
    let certs = report
        .get("certificates")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Input("report has no certificates".into()))?;
    let n = c.a().dim();
    let field = c.field();
    let mut results = Map::new();
    let mut all = true;
    for (key, v) in certs {
        if v.is_null() {
            results.insert(key.clone(), Value::Null);
            continue;
        }
        let ok = match key.as_str() {
            "separability_element" => {
                let e = tensor_from_json(&c, &v["e"], key)?;
                SeparabilityElement { e }.verify(&c)
            }
            "conditional_expectation" => {
                let map = matrix_from_json(field, &v["map"], (c.ext.b().dim(), n), key)?;
                ConditionalExpectation { map }.verify(&c)
            }
            "hsep_system" => {
                let pairs = array(v, key)?
                    .iter()
                    .map(|p| Ok((tensor_from_json(&c, &p["e"], key)?, vector_from_json(field, &p["r"], n, key)?)))
                    .collect::<Result<Vec<_>>>()?;
                HSepSystem { pairs }.verify(&c)
            }
            "left_d2_quasibase" | "right_d2_quasibase" => {
                let (side, tk, mk) = if key.starts_with("left") {
                    (Side::Left, "t", "beta")
                } else {
                    (Side::Right, "u", "gamma")
                };
                let pairs = array(v, key)?
                    .iter()
                    .map(|p| Ok((tensor_from_json(&c, &p[tk], key)?, matrix_from_json(field, &p[mk], (n, n), key)?)))
                    .collect::<Result<Vec<_>>>()?;
                D2Quasibase { side, pairs }.verify(&c)
            }
            other => return Err(Error::Input(format!("unknown certificate {other:?}"))),
        };
        all &= ok;
        results.insert(key.clone(), json!(ok));
    }
    Ok(json!({ "certificates": results, "all_verified": all }))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Input(format!("{what}: expected a list")))
}

/// Plain-text rendering: scalars and flags as `key: value` lines, nested
/// objects indented, certificate payloads summarized.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match (k.as_str(), x) {
                    ("input", _) => continue,
                    ("certificates", Value::Object(cs)) => {
                        out.push_str(&format!("{pad}certificates:\n"));
                        for (ck, cv) in cs {
                            let state = if cv.is_null() { "absent" } else { "present" };
                            out.push_str(&format!("{pad}  {ck}: {state}\n"));
                        }
                    }
                    (_, Value::Object(_)) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                    (_, Value::Array(items)) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render(item, depth + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn input(name: &str) -> Input {
        let ext = corpus::extension(name).unwrap().unwrap();
        let doc = io::extension_document(name, &ext, None, 0);
        io::input_from_value(doc).unwrap()
    }

    #[test]
    fn certify_round_trips_through_verify() {
        let inp = input("q-c2-over-q");
        for kind in KINDS {
            let rep = certify(&inp, kind, 0).unwrap();
            let v = verify(&rep).unwrap();
            assert_eq!(v["all_verified"], json!(true), "{kind}");
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let inp = input("q-c2-over-q");
        let mut rep = certify(&inp, "separable", 0).unwrap();
        rep["certificates"]["separability_element"]["e"][0] = json!("7");
        assert_eq!(verify(&rep).unwrap()["all_verified"], json!(false));
    }

    #[test]
    fn no_certificate_for_f2() {
        let inp = input("f2-c2-over-f2");
        let rep = certify(&inp, "separable", 0).unwrap();
        assert_eq!(rep["verdict"], json!(false));
        assert!(rep["certificates"]["separability_element"].is_null());
    }
}
