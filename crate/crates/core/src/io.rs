//! File formats: JSON inputs for schemes, Cayley tables, hypergroups and
//! generalized schemes; JSON and CSV emitters for reports.
//!
//! Labels may be given as strings or numbers. Emitted JSON objects have
//! sorted keys, and floats in CSV use 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generalized::GeneralizedScheme;
use crate::harmonic::{CharacterTable, DualMeasure};
use crate::hypergroup::{FiniteHypergroup, Origin};
use crate::scalar::{fmt17, parse_ratio, Weight};
use crate::scheme::{FiniteGroup, Scheme};
use crate::tensor::Tensor3;

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("`{what}` must be an array")))
}

fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("expected a label, found {other}"))),
    }
}

fn labels(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(label).collect()
}

fn number(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => parse_ratio(s)
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .ok_or_else(|| Error::Parse(format!("bad number `{s}`"))),
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

fn ratio(v: &Value) -> Result<Rational64> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational64::from_integer(i))
            } else {
                n.as_f64()
                    .and_then(Rational64::approximate_float)
                    .ok_or_else(|| Error::Parse(format!("bad number {n}")))
            }
        }
        Value::String(s) => parse_ratio(s).ok_or_else(|| Error::Parse(format!("bad fraction `{s}`"))),
        other => Err(Error::Parse(format!("expected a fraction, found {other}"))),
    }
}

/// `{"points": [...], "classes": [...], "relations": [[x, y, class], ...]}`.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    scheme_from_value(&parse_value(text)?)
}

pub fn read_scheme(path: impl AsRef<Path>) -> Result<Scheme> {
    parse_scheme(&read_text(path)?)
}

fn scheme_from_value(v: &Value) -> Result<Scheme> {
    let points = labels(field(v, "points")?, "points")?;
    let classes = labels(field(v, "classes")?, "classes")?;
    let triples = array(field(v, "relations")?, "relations")?
        .iter()
        .map(|t| match t.as_array().map(Vec::as_slice) {
            Some([x, y, c]) => Ok((label(x)?, label(y)?, label(c)?)),
            _ => Err(Error::Parse(format!("relation entry {t} is not [x, y, class]"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Scheme::from_triples(points, classes, &triples)
}

pub fn scheme_to_json(s: &Scheme) -> Value {
    let n = s.num_points();
    let relations: Vec<Value> = (0..n * n)
        .map(|p| {
            let (x, y) = (p / n, p % n);
            json!([s.points()[x], s.points()[y], s.classes()[s.relation_of(x, y)]])
        })
        .collect();
    json!({"points": s.points(), "classes": s.classes(), "relations": relations})
}

/// `{"elements": [...], "table": [[...]], "subgroup": [...]}`, entries by label.
pub fn parse_cayley(text: &str) -> Result<(FiniteGroup, Vec<usize>)> {
    let v = parse_value(text)?;
    let elements = labels(field(&v, "elements")?, "elements")?;
    let table = array(field(&v, "table")?, "table")?
        .iter()
        .map(|row| labels(row, "table row"))
        .collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::from_labeled_table(elements, &table)?;
    let subgroup = labels(field(&v, "subgroup")?, "subgroup")?
        .iter()
        .map(|l| group.index_of(l))
        .collect::<Result<Vec<_>>>()?;
    Ok((group, subgroup))
}

pub fn cayley_to_json(g: &FiniteGroup, subgroup: &[usize]) -> Value {
    let n = g.order();
    let label = |i: usize| g.elements()[i].clone();
    let table: Vec<Vec<String>> = (0..n).map(|a| (0..n).map(|b| label(g.mul(a, b))).collect()).collect();
    let sub: Vec<String> = subgroup.iter().map(|&h| label(h)).collect();
    json!({"elements": g.elements(), "table": table, "subgroup": sub})
}

/// Sparse hypergroup description; `identity` and `involution` may be
/// omitted and are then inferred.
struct HypergroupParts<T> {
    classes: Vec<String>,
    conv: Tensor3<T>,
    identity: Option<usize>,
    involution: Option<Vec<usize>>,
}

fn hypergroup_parts<T: Weight>(text: &str, value: impl Fn(&Value) -> Result<T>) -> Result<HypergroupParts<T>> {
    let v = parse_value(text)?;
    let classes = labels(field(&v, "classes")?, "classes")?;
    let d = classes.len();
    let find = |l: &Value| -> Result<usize> {
        let l = label(l)?;
        classes
            .iter()
            .position(|c| *c == l)
            .ok_or_else(|| Error::Parse(format!("unknown class `{l}`")))
    };
    let mut conv = Tensor3::filled(d, T::zero());
    for entry in array(field(&v, "conv")?, "conv")? {
        match entry.as_array().map(Vec::as_slice) {
            Some([i, j, k, c]) => conv.set(find(i)?, find(j)?, find(k)?, value(c)?),
            _ => return Err(Error::Parse(format!("conv entry {entry} is not [i, j, k, value]"))),
        }
    }
    let identity = v.get("identity").map(&find).transpose()?;
    let involution = v
        .get("involution")
        .map(|inv| array(inv, "involution")?.iter().map(&find).collect::<Result<Vec<_>>>())
        .transpose()?;
    Ok(HypergroupParts {
        classes,
        conv,
        identity,
        involution,
    })
}

fn assemble<T: Weight>(parts: HypergroupParts<T>, tol: f64) -> Result<FiniteHypergroup<T>> {
    match (parts.identity, parts.involution) {
        (Some(e), Some(inv)) => FiniteHypergroup::from_parts(parts.classes, parts.conv, e, inv, Origin::Manual),
        _ => FiniteHypergroup::infer(parts.classes, parts.conv, Origin::Manual, tol),
    }
}

/// Hypergroup JSON with exact values: integers or `"p/q"` strings.
pub fn parse_hypergroup_exact(text: &str) -> Result<FiniteHypergroup<Rational64>> {
    assemble(hypergroup_parts(text, ratio)?, 0.0)
}

/// Hypergroup JSON with values as floats or `"p/q"` strings.
pub fn parse_hypergroup(text: &str, tol: f64) -> Result<FiniteHypergroup<f64>> {
    assemble(hypergroup_parts(text, number)?, tol)
}

pub fn hypergroup_to_json<T: Weight>(h: &FiniteHypergroup<T>) -> Value {
    let d = h.num_classes();
    let cls = h.classes();
    let mut conv = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let c = h.c(i, j, k);
                if !c.is_negligible(0.0) {
                    conv.push(json!([cls[i], cls[j], cls[k], c.to_json()]));
                }
            }
        }
    }
    let involution: Vec<&String> = h.involution().iter().map(|&t| &cls[t]).collect();
    let haar: Vec<Value> = h.haar().iter().map(Weight::to_json).collect();
    json!({
        "classes": cls,
        "identity": cls[h.identity()],
        "involution": involution,
        "conv": conv,
        "haar": haar,
        "origin": h.origin(),
    })
}

/// Scheme fields plus `{"stoch": {class: [[...]]}, "vertex_weight": [...],
/// "base_point": label}`. Matrix rows and columns follow `points`.
pub fn parse_generalized(text: &str) -> Result<GeneralizedScheme> {
    let v = parse_value(text)?;
    let base = scheme_from_value(&v)?;
    let n = base.num_points();
    let stoch_v = field(&v, "stoch")?
        .as_object()
        .ok_or_else(|| Error::Parse("`stoch` must map classes to matrices".into()))?;
    let mut stoch = Vec::with_capacity(base.num_classes());
    for class in base.classes() {
        let rows = array(
            stoch_v
                .get(class)
                .ok_or_else(|| Error::Parse(format!("no matrix for class `{class}`")))?,
            "stoch matrix",
        )?;
        let rows = rows
            .iter()
            .map(|r| array(r, "stoch row")?.iter().map(number).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("matrix for class `{class}` must be {n}x{n}")));
        }
        stoch.push(DMatrix::from_fn(n, n, |x, y| rows[x][y]));
    }
    let vertex_weight = match v.get("vertex_weight") {
        Some(w) => array(w, "vertex_weight")?
            .iter()
            .map(number)
            .collect::<Result<Vec<_>>>()?,
        None => vec![1.0; n],
    };
    let base_point = match v.get("base_point") {
        Some(p) => {
            let l = label(p)?;
            base.point_index(&l)
                .ok_or_else(|| Error::Parse(format!("unknown base point `{l}`")))?
        }
        None => 0,
    };
    GeneralizedScheme::build(&base, stoch, vertex_weight, base_point)
}

pub fn read_generalized(path: impl AsRef<Path>) -> Result<GeneralizedScheme> {
    parse_generalized(&read_text(path)?)
}

/// `a+bi` with 17 significant digits in each part.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{sign}{}i", fmt17(z.re), fmt17(z.im.abs()))
}

/// Rows are characters, columns are classes, with the Plancherel weight.
pub fn character_table_csv(tbl: &CharacterTable) -> String {
    let mut out = String::from("character,plancherel");
    for c in tbl.hypergroup().classes() {
        let _ = write!(out, ",{c}");
    }
    out.push('\n');
    for (a, chi) in tbl.chars().iter().enumerate() {
        let _ = write!(out, "chi{a},{}", fmt17(tbl.plancherel()[a]));
        for z in chi {
            let _ = write!(out, ",{}", fmt_complex(*z));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct DualEntry {
    alpha: String,
    beta: String,
    raw: Vec<String>,
    weights: Vec<String>,
    raw_sum: String,
    min_raw: String,
    nonnegative: bool,
}

/// Dual convolution table with raw and clamped coefficients.
pub fn dual_table_json(tbl: &CharacterTable, products: &[DualMeasure]) -> Value {
    let fmt_all = |v: &[f64]| v.iter().map(|&x| fmt17(x)).collect::<Vec<_>>();
    let entries: Vec<DualEntry> = products
        .iter()
        .map(|m| DualEntry {
            alpha: format!("chi{}", m.alpha),
            beta: format!("chi{}", m.beta),
            raw: fmt_all(&m.raw),
            weights: fmt_all(&m.weights),
            raw_sum: fmt17(m.raw_sum),
            min_raw: fmt17(m.min_raw),
            nonnegative: m.nonnegative,
        })
        .collect();
    let min_raw = products.iter().map(|m| m.min_raw).fold(f64::INFINITY, f64::min);
    json!({
        "characters": (0..tbl.num_chars()).map(|a| format!("chi{a}")).collect::<Vec<_>>(),
        "products": entries,
        "min_coefficient": fmt17(min_raw),
        "all_nonnegative": products.iter().all(|m| m.nonnegative),
    })
}

/// `m,n,k,g` rows for `m, n ≤ max`, nonzero coefficients only.
pub fn linearization_csv(max: usize, g: impl Fn(usize, usize) -> Vec<f64>) -> String {
    let mut out = String::from("m,n,k,g\n");
    for m in 0..=max {
        for n in 0..=max {
            for (k, v) in g(m, n).iter().enumerate() {
                if *v != 0.0 {
                    let _ = writeln!(out, "{m},{n},{k},{}", fmt17(*v));
                }
            }
        }
    }
    out
}

/// Pretty JSON followed by a newline.
pub fn to_pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::harmonic::{character_table, dual_products};
    use crate::hypergroup::hypergroup_from_scheme;

    #[test]
    fn scheme_round_trip() {
        let s = fixtures::pentagon();
        let text = scheme_to_json(&s).to_string();
        let back = parse_scheme(&text).unwrap();
        assert_eq!(back.numbers(), s.numbers());
    }

    #[test]
    fn numeric_labels() {
        let text = r#"{"points":[0,1],"classes":[0,1],"relations":[[0,0,0],[1,1,0],[0,1,1],[1,0,1]]}"#;
        let s = parse_scheme(text).unwrap();
        assert_eq!(s.valencies(), &[1, 1]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_scheme("{").unwrap_err().kind(), "ParseError");
        assert_eq!(parse_scheme(r#"{"points":[]}"#).unwrap_err().kind(), "ParseError");
        assert_eq!(read_scheme("/nonexistent/file.json").unwrap_err().kind(), "ParseError");
    }

    #[test]
    fn cayley_round_trip() {
        let (g, h) = fixtures::s3_pair();
        let (g2, h2) = parse_cayley(&cayley_to_json(&g, &h).to_string()).unwrap();
        assert_eq!(g2.order(), 6);
        assert_eq!(h2.len(), h.len());
    }

    #[test]
    fn hypergroup_round_trip() {
        let h = hypergroup_from_scheme(&fixtures::petersen());
        let text = hypergroup_to_json(&h).to_string();
        let exact = parse_hypergroup_exact(&text).unwrap();
        assert_eq!(exact.conv(), h.conv());
        assert_eq!(exact.haar(), h.haar());
        let float = parse_hypergroup(&text, 1e-12).unwrap();
        assert_eq!(float.identity(), h.identity());
    }

    #[test]
    fn generalized_round_trip() {
        let s = fixtures::complete_graph_scheme(3);
        let mut v = scheme_to_json(&s);
        let stoch = json!({
            "0": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            "1": [[0, 0.5, 0.5], [0.5, 0, 0.5], [0.5, 0.5, 0]],
        });
        v["stoch"] = stoch;
        v["base_point"] = json!(s.points()[0]);
        let classes = s.classes().to_vec();
        assert_eq!(classes, vec!["0".to_string(), "1".to_string()]);
        let g = parse_generalized(&v.to_string()).unwrap();
        assert!(g.deformed().is_complete());
    }

    #[test]
    fn csv_and_dual_emitters() {
        let h = hypergroup_from_scheme(&fixtures::cyclic_scheme(4));
        let tbl = character_table(&h).unwrap();
        let csv = character_table_csv(&tbl);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("chi0,"));
        let products = dual_products(&tbl).unwrap();
        let v = dual_table_json(&tbl, &products);
        assert_eq!(v["all_nonnegative"], json!(true));
        assert_eq!(
            fmt_complex(Complex64::new(1.0, -0.5)),
            "1.0000000000000000e0-5.0000000000000000e-1i"
        );
        let lin = linearization_csv(1, |m, n| if m + n == 0 { vec![1.0] } else { vec![0.0; m + n + 1] });
        assert_eq!(lin, "m,n,k,g\n0,0,0,1.0000000000000000e0\n");
    }
}
