//! JSON and CSV formats for fields, modules, maps and reports.
//!
//! Rationals travel as strings `"p/q"` (or `"n"`); plain JSON integers are
//! accepted on input. Field elements are coefficient vectors in the power
//! basis of the field generator.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::catalog::{cyclotomic_module, eta_module, standard_lattice, xi8_index4_submodule, CatalogEntry};
use crate::engine::{DivisibilityReport, Submodule};
use crate::error::{Error, Result};
use crate::exact::{FieldElem, FieldMatrix, Int, IntMatrix, Matrix, NumberField, Poly, Rat, RatMatrix};
use crate::gram::{module_from_generators, Ambient, GeneratorPresentation, GramModule};
use crate::maps::{make_coincidence, make_similarity, CoincidenceMap, SimilarityMap};
use crate::rings::{DegreeReport, MultiplierRing};
use crate::scale::ScaleValue;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(i.into()))
            .ok_or_else(|| parse_err(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse::<Rat>().map_err(|_| parse_err(format!("bad rational {s:?}"))),
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn parse_rat_matrix(v: &Value) -> Result<RatMatrix> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(parse_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(parse_err("empty matrix"));
    }
    Matrix::from_rows(rows).map_err(|_| parse_err("ragged matrix"))
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect())
}

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect(),
    )
}

pub fn parse_field(v: &Value) -> Result<Arc<NumberField>> {
    let coeffs = array(v.get("min_poly").ok_or_else(|| parse_err("field needs min_poly"))?, "min_poly")?
        .iter()
        .map(|c| {
            let r = parse_rat(c)?;
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(parse_err("min_poly coefficients must be integers"))
            }
        })
        .collect::<Result<Vec<Int>>>()?;
    let iv = array(v.get("root_interval").ok_or_else(|| parse_err("field needs root_interval"))?, "root_interval")?;
    if iv.len() != 2 {
        return Err(parse_err("root_interval needs two endpoints"));
    }
    NumberField::new(&coeffs, parse_rat(&iv[0])?, parse_rat(&iv[1])?)
}

pub fn field_json(k: &NumberField) -> Value {
    let (lo, hi) = k.interval();
    json!({
        "min_poly": k.defining_poly().coeffs().iter().map(rat_json).collect::<Vec<_>>(),
        "root_interval": [rat_json(lo), rat_json(hi)],
    })
}

/// A field element: a coefficient vector, or a bare rational.
pub fn parse_elem(k: &Arc<NumberField>, v: &Value) -> Result<FieldElem> {
    match v {
        Value::Array(cs) => {
            let mut coords = cs.iter().map(parse_rat).collect::<Result<Vec<_>>>()?;
            if coords.len() > k.degree() {
                return Err(parse_err("coefficient vector longer than the field degree"));
            }
            coords.resize(k.degree(), Rat::from_integer(0.into()));
            FieldElem::new(k, coords)
        }
        other => Ok(FieldElem::from_rat(k, parse_rat(other)?)),
    }
}

pub fn elem_json(x: &FieldElem) -> Value {
    Value::Array(x.coords().iter().map(rat_json).collect())
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn scale_json(x: &ScaleValue) -> Value {
    json!({
        "value": x.to_string(),
        "coefficient": elem_json(x.coefficient()),
        "radicand": elem_json(x.radicand()),
        "min_poly": poly_json(&x.minimal_polynomial()),
    })
}

fn builtin_module(name: &str) -> Result<GramModule> {
    match name {
        "cyclotomic5" => cyclotomic_module(5),
        "cyclotomic8" => cyclotomic_module(8),
        "cyclotomic12" => cyclotomic_module(12),
        "xi8-index4" => xi8_index4_submodule(),
        "eta" => eta_module(),
        other => standard_lattice(other),
    }
}

/// `{"field"?, "gram"}`, `{"field"?, "generators": {...}}` or `{"catalog": name}`.
pub fn parse_module(v: &Value) -> Result<GramModule> {
    if let Some(name) = v.get("catalog") {
        let name = name.as_str().ok_or_else(|| parse_err("catalog must be a string"))?;
        return builtin_module(name);
    }
    let field = match v.get("field") {
        Some(f) => parse_field(f)?,
        None => NumberField::rationals(),
    };
    if let Some(g) = v.get("gram") {
        let rows = array(g, "gram")?
            .iter()
            .map(|r| array(r, "gram row")?.iter().map(|e| parse_elem(&field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(parse_err("empty gram matrix"));
        }
        let gram: FieldMatrix = Matrix::from_rows(rows).map_err(|_| parse_err("ragged gram matrix"))?;
        return GramModule::from_gram(&field, gram);
    }
    if let Some(g) = v.get("generators") {
        let ambient = match g.get("ambient").and_then(Value::as_str).unwrap_or("real") {
            "real" => Ambient::Real,
            "complex" => Ambient::Complex,
            other => return Err(parse_err(format!("unknown ambient {other:?}"))),
        };
        let dim = g
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("generators need dim"))? as usize;
        let vecs = array(g.get("vectors").ok_or_else(|| parse_err("generators need vectors"))?, "vectors")?;
        let p = match ambient {
            Ambient::Real => {
                let vs = vecs
                    .iter()
                    .map(|v| array(v, "vector")?.iter().map(|e| parse_elem(&field, e)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                GeneratorPresentation::real(&field, dim, vs)
            }
            Ambient::Complex => {
                let vs = vecs
                    .iter()
                    .map(|v| {
                        array(v, "vector")?
                            .iter()
                            .map(|z| {
                                let pair = array(z, "complex coordinate")?;
                                if pair.len() != 2 {
                                    return Err(parse_err("complex coordinates are [re, im]"));
                                }
                                Ok((parse_elem(&field, &pair[0])?, parse_elem(&field, &pair[1])?))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                GeneratorPresentation::complex(&field, dim, vs)
            }
        };
        if p.vectors.iter().any(|v| v.len() != p.real_dim()) {
            return Err(Error::Dimension("generator length does not match dim".into()));
        }
        return module_from_generators(&p);
    }
    Err(parse_err("module needs gram, generators or catalog"))
}

pub fn module_json(m: &GramModule) -> Value {
    let mut out = Map::new();
    if !m.field().is_rationals() {
        out.insert("field".into(), field_json(m.field()));
    }
    let gram = m.gram().to_rows().iter().map(|r| Value::Array(r.iter().map(elem_json).collect())).collect();
    out.insert("gram".into(), Value::Array(gram));
    Value::Object(out)
}

#[derive(Clone, Debug)]
pub enum ParsedMap {
    Coincidence(CoincidenceMap),
    Similarity(SimilarityMap),
}

impl ParsedMap {
    pub fn as_similarity(&self) -> SimilarityMap {
        match self {
            ParsedMap::Coincidence(t) => t.as_similarity(),
            ParsedMap::Similarity(f) => f.clone(),
        }
    }
}

/// `{"matrix": [["p/q", ...], ...], "kind": "coincidence" | "similarity"}`.
pub fn parse_map(v: &Value, m: &Arc<GramModule>) -> Result<ParsedMap> {
    let a = parse_rat_matrix(v.get("matrix").ok_or_else(|| parse_err("map needs matrix"))?)?;
    match v.get("kind").and_then(Value::as_str).unwrap_or("similarity") {
        "coincidence" => Ok(ParsedMap::Coincidence(make_coincidence(m, &a)?)),
        "similarity" => Ok(ParsedMap::Similarity(make_similarity(m, &a)?)),
        other => Err(parse_err(format!("unknown map kind {other:?}"))),
    }
}

pub fn coincidence_json(t: &CoincidenceMap) -> Value {
    json!({"matrix": rat_matrix_json(t.matrix()), "kind": "coincidence"})
}

pub fn similarity_json(f: &SimilarityMap) -> Value {
    json!({"matrix": rat_matrix_json(&f.matrix().to_rat()), "kind": "similarity"})
}

pub fn submodule_json(s: &Submodule) -> Value {
    json!({"hnf": int_matrix_json(&s.h), "index": s.index.to_string()})
}

pub fn divisibility_json(r: &DivisibilityReport) -> Value {
    let checks: Map<String, Value> = r.checks.iter().map(|(n, ok)| (n.to_string(), Value::Bool(*ok))).collect();
    json!({
        "dim": r.dim,
        "den": r.den.to_string(),
        "den_inv": r.den_inv.to_string(),
        "sigma": r.sigma.to_string(),
        "den_square": r.den_square.to_string(),
        "checks": checks,
        "all_passed": r.all_passed(),
    })
}

/// Parses a report written by [`divisibility_json`]; the stored check values are kept.
pub fn parse_divisibility(v: &Value) -> Result<DivisibilityReport> {
    let int = |key: &str| -> Result<Int> {
        let r = parse_rat(v.get(key).ok_or_else(|| parse_err(format!("report needs {key}")))?)?;
        r.is_integer().then(|| r.to_integer()).ok_or_else(|| parse_err(format!("{key} must be an integer")))
    };
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| parse_err("report needs dim"))? as usize;
    if dim == 0 {
        return Err(parse_err("dim must be positive"));
    }
    let mut r = DivisibilityReport::from_numbers(dim, int("den")?, int("den_inv")?, int("sigma")?, int("den_square")?);
    if let Some(Value::Object(cs)) = v.get("checks") {
        for (name, ok) in r.checks.iter_mut() {
            if let Some(b) = cs.get(*name).and_then(Value::as_bool) {
                *ok = b;
            }
        }
    }
    Ok(r)
}

pub fn degree_json(d: &DegreeReport) -> Value {
    json!({
        "min_poly": poly_json(&d.min_poly),
        "degree": d.degree,
        "monic_integral": d.monic_integral,
        "within_bound": d.within_bound,
    })
}

pub fn ring_json(r: &MultiplierRing) -> Value {
    let c = r.checks();
    let basis: Vec<Value> = r
        .basis()
        .iter()
        .map(|(a, x)| {
            json!({
                "matrix": int_matrix_json(a),
                "scalar": elem_json(x),
                "scalar_text": x.to_string(),
                "min_poly": poly_json(&x.minimal_polynomial()),
            })
        })
        .collect();
    json!({
        "rank": r.rank(),
        "k": r.module().rank(),
        "d": r.module().ambient_dimension(),
        "basis": basis,
        "checks": {
            "contains_identity": c.contains_identity,
            "closed": c.closed,
            "algebraic_integers": c.algebraic_integers,
            "rank_divides_k": c.rank_divides_k,
            "rank_within_bound": c.rank_within_bound,
        },
    })
}

fn entry_checks(e: &CatalogEntry) -> Result<DivisibilityReport> {
    crate::engine::divisibility_report(&e.map.as_similarity())
}

pub fn catalog_csv(entries: &[CatalogEntry]) -> Result<String> {
    let mut out = String::from("label,params,sigma,den,den_inv,checks_passed\n");
    for e in entries {
        let ok = entry_checks(e)?.all_passed();
        out.push_str(&format!("{},{},{},{},{},{}\n", e.label.replace(',', ";"), e.params_string(), e.sigma, e.den, e.den_inv, ok));
    }
    Ok(out)
}

pub fn catalog_json(entries: &[CatalogEntry]) -> Result<Value> {
    let rows = entries
        .iter()
        .map(|e| {
            let rep = entry_checks(e)?;
            Ok(json!({
                "label": e.label,
                "params": e.params,
                "sigma": e.sigma.to_string(),
                "den": e.den.to_string(),
                "den_inv": e.den_inv.to_string(),
                "map": coincidence_json(&e.map),
                "csl": submodule_json(&e.csm),
                "checks_passed": rep.all_passed(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}
