//! JSON encodings. Rationals travel as strings (`"-3/4"`); integers are
//! accepted either as JSON numbers or strings. Object keys come out sorted
//! and polynomial terms in descending monomial order, so equal inputs give
//! byte-identical text.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use fmcalc_core::gamma::{DivisionCase, GammaTable};
use fmcalc_core::graded::{GradedPoly, Monomial, PolyRing, ResidueGradedPoly};
use fmcalc_core::number_ring::{make_tower, FieldElement, TowerDescriptor};
use fmcalc_core::torsion::{
    CyclicModulePresentation, LocalCohomologyReport, ModuleContext, ModuleDivisionWitness, ObstructionCertificate,
    TorsionStatus,
};
use fmcalc_core::{BigInt, BigRational};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{config_err, CliResult};

pub fn rational(v: &Value) -> CliResult<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| config_err(format!("not an integer: {n}"))),
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| config_err(format!("not a rational: {s:?}"))),
        other => Err(config_err(format!("expected a number, got {other}"))),
    }
}

pub fn integer(v: &Value) -> CliResult<BigInt> {
    let r = rational(v)?;
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(config_err(format!("not an integer: {r}")))
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Option<&'a Value> {
    obj.get(key).filter(|v| !v.is_null())
}

fn usize_field(obj: &Value, key: &str) -> CliResult<Option<usize>> {
    field(obj, key)
        .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(|| config_err(format!("{key} must be a nonnegative integer"))))
        .transpose()
}

pub fn p_field(obj: &Value) -> CliResult<u64> {
    field(obj, "p")
        .and_then(Value::as_u64)
        .ok_or_else(|| config_err("missing integer field \"p\""))
}

/// Integer coefficient list, constant first, from `"1,0,1"`.
pub fn parse_coeff_list(s: &str) -> CliResult<Vec<Value>> {
    s.split(',')
        .map(|c| {
            let c = c.trim();
            BigRational::from_str(c)
                .map(|_| Value::String(c.to_string()))
                .map_err(|_| config_err(format!("bad coefficient {c:?}")))
        })
        .collect()
}

/// `{"p", "unram"?, "eis"?, "f"?, "e"?, "label"?}`. Without `unram` the
/// first irreducible polynomial of degree `f` is used; without `eis`,
/// `x^e − p`.
pub fn tower_from_json(v: &Value) -> CliResult<Arc<TowerDescriptor>> {
    let p = p_field(v)?;
    let label = field(v, "label").and_then(Value::as_str).unwrap_or("");
    let f = usize_field(v, "f")?.unwrap_or(1);
    let e = usize_field(v, "e")?.unwrap_or(1);
    if f == 0 || e == 0 {
        return Err(config_err("f and e must be positive"));
    }
    let base_unram = match field(v, "unram") {
        Some(list) => Some(
            list.as_array()
                .ok_or_else(|| config_err("unram must be a list"))?
                .iter()
                .map(integer)
                .collect::<CliResult<Vec<_>>>()?,
        ),
        None => None,
    };
    let unram = match base_unram {
        Some(u) => u,
        None => TowerDescriptor::unramified(p, f)?.unram_poly().to_vec(),
    };
    let deg_f = unram.len().saturating_sub(1).max(1);
    let eis = match field(v, "eis") {
        Some(list) => list
            .as_array()
            .ok_or_else(|| config_err("eis must be a list"))?
            .iter()
            .map(|c| match c {
                Value::Array(coords) => coords.iter().map(rational).collect::<CliResult<Vec<_>>>(),
                scalar => {
                    let mut row = vec![BigRational::zero(); deg_f];
                    row[0] = rational(scalar)?;
                    Ok(row)
                }
            })
            .collect::<CliResult<Vec<_>>>()?,
        None => {
            let mut h = vec![vec![BigRational::zero()]; e + 1];
            h[0][0] = -BigRational::from_integer(p.into());
            h[e][0] = BigRational::one();
            h
        }
    };
    Ok(make_tower(p, &unram, &eis, label)?)
}

pub fn tower_to_json(t: &TowerDescriptor) -> Value {
    json!({
        "p": t.p(),
        "f": t.f(),
        "e": t.e(),
        "q": t.q(),
        "degree": t.degree(),
        "label": t.label(),
        "uniformizer": t.uniformizer_name(),
        "unram": t.unram_poly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "eis": t.eis_poly().iter().map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn element_to_json(x: &FieldElement) -> Value {
    Value::Array(
        x.to_coords()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

/// A scalar (rational in `Q_p`) or an `f × e` coordinate array.
pub fn element_from_json(tower: &Arc<TowerDescriptor>, v: &Value) -> CliResult<FieldElement> {
    match v {
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| config_err("coordinate rows must be lists"))?
                        .iter()
                        .map(rational)
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(FieldElement::from_coords(tower, &rows)?)
        }
        scalar => Ok(FieldElement::from_rational(tower, rational(scalar)?)),
    }
}

fn exps_to_json(m: &Monomial) -> Value {
    let map: Map<String, Value> = m.pairs().map(|(n, a)| (n.to_string(), json!(a))).collect();
    Value::Object(map)
}

fn exps_from_json(v: &Value) -> CliResult<Monomial> {
    let obj = v.as_object().ok_or_else(|| config_err("exps must be an object"))?;
    let pairs = obj
        .iter()
        .map(|(k, a)| {
            let n: usize = k.parse().map_err(|_| config_err(format!("bad generator index {k:?}")))?;
            let a = a.as_u64().ok_or_else(|| config_err("exponents must be nonnegative integers"))?;
            if n == 0 {
                return Err(config_err("generators are indexed from 1"));
            }
            Ok((n, a))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Monomial::from_pairs(&pairs))
}

pub fn poly_to_json(f: &GradedPoly) -> Value {
    json!({
        "q": f.ring().q(),
        "N": f.ring().n(),
        "text": f.to_string(),
        "terms": f.terms().map(|(m, c)| json!({"exps": exps_to_json(m), "coeff": element_to_json(c)})).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(ring: &Arc<PolyRing>, v: &Value) -> CliResult<GradedPoly> {
    let terms = field(v, "terms")
        .and_then(Value::as_array)
        .ok_or_else(|| config_err("polynomial needs a \"terms\" list"))?
        .iter()
        .map(|t| {
            let m = exps_from_json(field(t, "exps").unwrap_or(&json!({})))?;
            let c = element_from_json(ring.tower(), field(t, "coeff").ok_or_else(|| config_err("term without coeff"))?)?;
            Ok((m, c))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(GradedPoly::from_terms(ring, terms)?)
}

pub fn residue_poly_to_json(f: &ResidueGradedPoly) -> Value {
    json!({
        "q": f.ring().q(),
        "N": f.ring().n(),
        "text": f.to_string(),
        "terms": f.terms().map(|(m, c)| json!({"exps": exps_to_json(m), "coeff": c.coeffs()})).collect::<Vec<_>>(),
    })
}

pub fn gamma_to_json(table: &GammaTable) -> Value {
    json!({
        "source": tower_to_json(table.source()),
        "target": tower_to_json(table.target()),
        "f_rel": table.f_rel(),
        "e_rel": table.e_rel(),
        "integrality_verified": table.integrality_verified(),
        "images": table.images().iter().enumerate()
            .map(|(k, img)| json!({"n": k + 1, "image": poly_to_json(img)}))
            .collect::<Vec<_>>(),
    })
}

/// `{"p", "N", "ideal": [...], "finitely_presented", "context": "bp" | {"tower": ...}, "weight_bound"?}`
pub fn module_from_json(v: &Value) -> CliResult<CyclicModulePresentation> {
    let p = p_field(v)?;
    let n = usize_field(v, "N")?.ok_or_else(|| config_err("missing field \"N\""))?;
    let context = match field(v, "context") {
        None => ModuleContext::Bp,
        Some(Value::String(s)) if s == "bp" => ModuleContext::Bp,
        Some(c) => match field(c, "tower") {
            Some(t) => ModuleContext::Tower(tower_from_json(t)?),
            None => return Err(config_err("context must be \"bp\" or {\"tower\": ...}")),
        },
    };
    let tower = match &context {
        ModuleContext::Bp => TowerDescriptor::base(p)?,
        ModuleContext::Tower(t) => t.clone(),
    };
    let ring = PolyRing::new(&tower, n);
    let ideal = match field(v, "ideal") {
        Some(list) => list
            .as_array()
            .ok_or_else(|| config_err("ideal must be a list"))?
            .iter()
            .map(|g| poly_from_json(&ring, g))
            .collect::<CliResult<Vec<_>>>()?,
        None => Vec::new(),
    };
    let fp = field(v, "finitely_presented").and_then(Value::as_bool).unwrap_or(true);
    let mut module = CyclicModulePresentation::new(context, p, n, ideal, fp)?;
    if let Some(b) = field(v, "weight_bound").and_then(Value::as_u64) {
        module = module.with_weight_bound(b);
    }
    Ok(module)
}

pub fn case_name(c: DivisionCase) -> &'static str {
    match c {
        DivisionCase::Zero => "zero",
        DivisionCase::Division => "division",
    }
}

fn module_witness_to_json(w: &ModuleDivisionWitness) -> Value {
    json!({"n": w.s, "r": w.r, "m": w.m, "case": case_name(w.case), "y": residue_poly_to_json(&w.y)})
}

pub fn certificate_to_json(c: &ObstructionCertificate) -> Value {
    let torsion: BTreeMap<String, Value> = c
        .torsion_exponents
        .iter()
        .map(|(n, s)| {
            let v = match s {
                TorsionStatus::Torsion(k) => json!({"torsion": k}),
                TorsionStatus::Unresolved { k_max, proven } => json!({"unresolved": k_max, "proven": proven}),
            };
            (n.to_string(), v)
        })
        .collect();
    json!({
        "verdict": c.verdict.name(),
        "rules_fired": c.rules_fired.iter().map(|r| json!({"rule": r.code(), "lemma": r.lemma()})).collect::<Vec<_>>(),
        "bounds": {"k_max": c.bounds.k_max, "m_max": c.bounds.m_max},
        "membership_proven": c.membership_proven,
        "witnesses": {
            "torsion_exponents": torsion,
            "division_witnesses": c.division_witnesses.iter().map(module_witness_to_json).collect::<Vec<_>>(),
            "nonzero_normal_forms": c.nonzero_normal_forms.iter()
                .map(|w| json!({"element": format!("v{}^{}", w.n, w.k), "n": w.n, "k": w.k, "normal_form": residue_poly_to_json(&w.normal_form)}))
                .collect::<Vec<_>>(),
            "non_torsion": c.non_torsion.iter()
                .map(|w| json!({"n": w.n, "element": residue_poly_to_json(&w.element)}))
                .collect::<Vec<_>>(),
        },
        "log": c.log,
    })
}

/// `{"p", "degrees": [{"degree", "matrix"}]}`; rows are generators.
pub fn localcoh_input(v: &Value) -> CliResult<(u64, Vec<(i64, Vec<Vec<BigRational>>)>)> {
    let p = p_field(v)?;
    let degrees = field(v, "degrees")
        .and_then(Value::as_array)
        .ok_or_else(|| config_err("missing \"degrees\" list"))?
        .iter()
        .map(|d| {
            let degree = field(d, "degree").and_then(Value::as_i64).unwrap_or(0);
            let rows = field(d, "matrix")
                .and_then(Value::as_array)
                .ok_or_else(|| config_err("missing \"matrix\""))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| config_err("matrix rows must be lists"))?
                        .iter()
                        .map(rational)
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok((degree, rows))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((p, degrees))
}

pub fn localcoh_to_json(r: &LocalCohomologyReport) -> Value {
    json!({
        "p": r.p,
        "degrees": r.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "h0_invariants": d.h0_invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "h1_corank": d.h1_corank,
            "higher_vanish": true,
        })).collect::<Vec<_>>(),
    })
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
