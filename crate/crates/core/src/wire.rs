//! JSON wire forms. Scalars travel as `"(p)/(r)"` strings; polynomials as
//! lists of `{var: exponent, ..., "c": scalar}` records read against a known ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gwa::{GwaElem, GwaInstance};
use crate::polyring::{CoefPoly, RingSpec, MAX_VARS};
use crate::qfield::{QMatrix, QRat};
use crate::repr::WeightModule;
use crate::spectrum::{Algebra, HomIdealFamily, StratumDescriptor};

fn bad(msg: impl Into<String>) -> Error {
    Error::Wire(msg.into())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("{what}: expected an integer")))
}

fn degree_key(k: &str) -> Result<i64> {
    k.parse().map_err(|_| bad(format!("degree key {k:?} is not an integer")))
}

pub fn encode_qrat(c: &QRat) -> Value {
    Value::String(c.to_wire())
}

pub fn decode_qrat(v: &Value) -> Result<QRat> {
    let s = v.as_str().ok_or_else(|| bad("scalar: expected a string"))?;
    QRat::parse(s)
}

pub fn encode_ring(r: &RingSpec) -> Value {
    json!({ "vars": r.vars(), "inv": r.invertible_vars() })
}

pub fn decode_ring(v: &Value) -> Result<Arc<RingSpec>> {
    let o = object(v, "ring")?;
    let names = |key: &str| -> Result<Vec<String>> {
        array(field(o, key)?, key)?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(format!("{key}: expected strings"))))
            .collect()
    };
    let vars = names("vars")?;
    let inv = names("inv")?;
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let inv: Vec<&str> = inv.iter().map(String::as_str).collect();
    RingSpec::new(&vars, &inv)
}

pub fn encode_poly(f: &CoefPoly) -> Value {
    let vars = f.ring().vars();
    let terms = f
        .terms()
        .map(|(e, c)| {
            let mut rec = Map::new();
            for (i, v) in vars.iter().enumerate() {
                rec.insert(v.clone(), json!(e[i]));
            }
            rec.insert("c".into(), encode_qrat(c));
            Value::Object(rec)
        })
        .collect();
    Value::Array(terms)
}

/// Variables missing from a record have exponent 0.
pub fn decode_poly(v: &Value, ring: &Arc<RingSpec>) -> Result<CoefPoly> {
    let mut terms = Vec::new();
    for rec in array(v, "polynomial")? {
        let rec = object(rec, "term")?;
        let mut e = [0i32; MAX_VARS];
        let mut c = None;
        for (k, val) in rec {
            if k == "c" {
                c = Some(decode_qrat(val)?);
                continue;
            }
            let i = ring.index_of(k).ok_or_else(|| bad(format!("no variable {k:?} in {ring}")))?;
            e[i] = i32::try_from(int(val, k)?).map_err(|_| bad(format!("exponent of {k} out of range")))?;
        }
        let c = c.ok_or_else(|| bad("term without coefficient \"c\""))?;
        if !ring.admits(&e) {
            return Err(bad(format!("negative exponent of a non-invertible variable in {ring}")));
        }
        terms.push((e, c));
    }
    CoefPoly::from_terms(ring, terms)
}

pub fn encode_elem(a: &GwaElem) -> Value {
    let comps: Map<String, Value> = a.components().iter().map(|(m, c)| (m.to_string(), encode_poly(c))).collect();
    json!({ "components": comps })
}

pub fn decode_elem(v: &Value, inst: &Arc<GwaInstance>) -> Result<GwaElem> {
    let o = object(field(object(v, "element")?, "components")?, "components")?;
    let comps =
        o.iter().map(|(k, c)| Ok((degree_key(k)?, decode_poly(c, inst.ring())?))).collect::<Result<Vec<_>>>()?;
    GwaElem::from_components(inst, comps)
}

pub fn encode_matrix(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(encode_qrat).collect())).collect())
}

pub fn decode_matrix(v: &Value, dim: usize) -> Result<QMatrix> {
    let rows = array(v, "matrix")?;
    if rows.len() != dim {
        return Err(bad(format!("matrix has {} rows, expected {dim}", rows.len())));
    }
    let rows = rows
        .iter()
        .map(|r| {
            let r = array(r, "matrix row")?;
            if r.len() != dim {
                return Err(bad(format!("matrix row has {} entries, expected {dim}", r.len())));
            }
            r.iter().map(decode_qrat).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    if dim == 0 {
        return Ok(QMatrix::zeros(0, 0));
    }
    QMatrix::from_rows(rows)
}

pub fn encode_module(x: &WeightModule) -> Value {
    let mut o = Map::new();
    o.insert("dim".into(), json!(x.dim()));
    for (name, m) in x.instance().ring().vars().iter().zip(x.ring_actions()) {
        o.insert(name.clone(), encode_matrix(m));
    }
    o.insert("x".into(), encode_matrix(x.x()));
    o.insert("y".into(), encode_matrix(x.y()));
    Value::Object(o)
}

/// The defining relations are rechecked on decode.
pub fn decode_module(v: &Value, inst: &Arc<GwaInstance>) -> Result<WeightModule> {
    let o = object(v, "module")?;
    let dim = usize::try_from(int(field(o, "dim")?, "dim")?).map_err(|_| bad("negative dim"))?;
    let ring = inst.ring().vars().iter().map(|name| decode_matrix(field(o, name)?, dim)).collect::<Result<Vec<_>>>()?;
    let x = decode_matrix(field(o, "x")?, dim)?;
    let y = decode_matrix(field(o, "y")?, dim)?;
    WeightModule::new(inst, ring, x, y)
}

pub fn encode_family(f: &HomIdealFamily) -> Value {
    let (lo, hi) = f.window();
    let gens: Map<String, Value> = f
        .generators()
        .iter()
        .map(|(m, g)| (m.to_string(), Value::Array(g.iter().map(encode_poly).collect())))
        .collect();
    json!({ "algebra": f.algebra(), "window": [lo, hi], "gens": gens })
}

pub fn decode_family(v: &Value) -> Result<HomIdealFamily> {
    let o = object(v, "family")?;
    let algebra: Algebra =
        serde_json::from_value(field(o, "algebra")?.clone()).map_err(|e| bad(format!("algebra: {e}")))?;
    let ring = algebra.ring()?;
    let window = array(field(o, "window")?, "window")?;
    let [lo, hi] = window.as_slice() else {
        return Err(bad("window: expected [lo, hi]"));
    };
    let (lo, hi) = (int(lo, "window")?, int(hi, "window")?);
    let mut gens = BTreeMap::new();
    for (k, list) in object(field(o, "gens")?, "gens")? {
        let list = array(list, "generators")?.iter().map(|g| decode_poly(g, &ring)).collect::<Result<Vec<_>>>()?;
        gens.insert(degree_key(k)?, list);
    }
    HomIdealFamily::new(algebra, lo, hi, gens)
}

pub fn encode_stratum(s: &StratumDescriptor) -> Value {
    let polys = |p: &[CoefPoly]| Value::Array(p.iter().map(encode_poly).collect());
    match s {
        StratumDescriptor::T1 { p } => json!({ "kind": "T1", "p": polys(p) }),
        StratumDescriptor::T2 { p } => json!({ "kind": "T2", "p": polys(p) }),
        StratumDescriptor::T3 { n, c } => json!({ "kind": "T3", "n": n, "c": c.as_ref().map(encode_qrat) }),
    }
}

pub fn decode_stratum(v: &Value) -> Result<StratumDescriptor> {
    let o = object(v, "stratum")?;
    let kind = field(o, "kind")?.as_str().ok_or_else(|| bad("kind: expected a string"))?;
    let polys = |ring: &Arc<RingSpec>| -> Result<Vec<CoefPoly>> {
        array(field(o, "p")?, "p")?.iter().map(|g| decode_poly(g, ring)).collect()
    };
    let s = match kind {
        "T1" => StratumDescriptor::T1 { p: polys(&crate::spectrum::t1_ring())? },
        "T2" => StratumDescriptor::T2 { p: polys(&crate::spectrum::t2_ring())? },
        "T3" => {
            let n = u32::try_from(int(field(o, "n")?, "n")?).map_err(|_| bad("n out of range"))?;
            let c = match o.get("c") {
                None | Some(Value::Null) => None,
                Some(c) => Some(decode_qrat(c)?),
            };
            StratumDescriptor::T3 { n, c }
        }
        other => return Err(bad(format!("unknown stratum kind {other:?}"))),
    };
    s.validate()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rea::{rea_instance, reduce};
    use crate::repr::vn_module;
    use crate::spectrum::{stratum_ideal, xn_ideal};

    #[test]
    fn scalar_form() {
        let c = QRat::parse("(q^2 - 1)/q").unwrap();
        assert_eq!(encode_qrat(&c), json!("(q^2-1)/(q)"));
        assert_eq!(decode_qrat(&json!("(q^2-1)/(q)")).unwrap(), c);
        assert!(decode_qrat(&json!(3)).is_err());
    }

    #[test]
    fn poly_records() {
        let r = RingSpec::utd();
        let f = CoefPoly::parse(&r, "q*u^2*d - 3").unwrap();
        let v = encode_poly(&f);
        assert_eq!(decode_poly(&v, &r).unwrap(), f);
        let short = json!([{ "t": 1, "c": "(1)/(1)" }]);
        assert_eq!(decode_poly(&short, &r).unwrap(), CoefPoly::var(&r, "t"));
        assert!(decode_poly(&json!([{ "u": -1, "c": "(1)/(1)" }]), &r).is_err());
        assert!(decode_poly(&json!([{ "w": 1, "c": "(1)/(1)" }]), &r).is_err());
        assert!(decode_poly(&json!([{ "u": 1 }]), &r).is_err());
    }

    #[test]
    fn ring_round_trip() {
        let r = RingSpec::new(&["u", "t"], &["u"]).unwrap();
        assert_eq!(decode_ring(&encode_ring(&r)).unwrap(), r);
    }

    #[test]
    fn elem_module_family_stratum_round_trip() {
        let inst = rea_instance();
        let a = reduce("u21*u12 - u12*u21 + x^2").unwrap();
        assert_eq!(decode_elem(&encode_elem(&a), &inst).unwrap(), a);
        let m = vn_module(3, QRat::q()).unwrap();
        assert_eq!(decode_module(&encode_module(&m), &inst).unwrap(), m);
        let f = xn_ideal(1, 1).unwrap();
        assert_eq!(decode_family(&encode_family(&f)).unwrap(), f);
        let s = StratumDescriptor::T3 { n: 2, c: Some(QRat::q()) };
        assert_eq!(decode_stratum(&encode_stratum(&s)).unwrap(), s);
        let f = stratum_ideal(&s).unwrap();
        assert_eq!(decode_family(&encode_family(&f)).unwrap(), f);
    }

    #[test]
    fn module_relations_rechecked() {
        let inst = rea_instance();
        let mut v = encode_module(&vn_module(2, QRat::one()).unwrap());
        v["x"] = json!([["(1)/(1)", "(0)/(1)"], ["(0)/(1)", "(1)/(1)"]]);
        assert!(decode_module(&v, &inst).is_err());
    }
}
