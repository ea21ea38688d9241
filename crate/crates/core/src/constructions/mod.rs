//! Catalog of lower-bound drawings: loading, approximate checks, exact
//! realization and per-n summaries.

mod realize;

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exact::{parse_decimal, parse_in, FieldTower, Rational};
use crate::udg::{default_band, ApproxPoint, ExactPoint};

pub use realize::{realize_exact, RealizationResult, RealizationStatus};

const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.json");
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {record}: field {field}: {msg}")]
    Schema { record: String, field: String, msg: String },
}

fn schema_err(record: &str, field: &str, msg: impl Into<String>) -> CatalogError {
    CatalogError::Schema {
        record: record.to_string(),
        field: field.to_string(),
        msg: msg.into(),
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionRecord {
    pub id: String,
    pub n: usize,
    /// Decimal coordinates as printed, kept as exact rationals.
    pub coords: Vec<ApproxPoint>,
    /// 0-based, as listed.
    pub claimed_edges: Vec<(usize, usize)>,
    pub claimed_count: usize,
    pub provenance: String,
    /// Exact coordinates in expression syntax, when cached.
    pub exact: Option<Vec<(String, String)>>,
}

impl ConstructionRecord {
    /// Parse the cached exact coordinates into one shared tower.
    pub fn cached_exact_points(&self) -> Option<Result<Vec<ExactPoint>, crate::exact::ExactError>> {
        let cached = self.exact.as_ref()?;
        let mut tower = FieldTower::rationals();
        let mut out = Vec::with_capacity(cached.len());
        let parse = |s: &str, tower: &mut FieldTower| {
            let (t, v) = parse_in(s, tower)?;
            *tower = t;
            Ok(v)
        };
        for (x, y) in cached {
            let px = match parse(x, &mut tower) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            let py = match parse(y, &mut tower) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            out.push(ExactPoint::new(px, py));
        }
        Some(Ok(out.into_iter().map(|p| p.lift_to(&tower)).collect()))
    }

    /// JSON form used by the catalog file.
    pub fn to_json(&self) -> Value {
        let coords: Vec<Value> = self
            .coords
            .iter()
            .map(|p| Value::from(vec![decimal_string(&p.x), decimal_string(&p.y)]))
            .collect();
        let edges: Vec<Value> = self.claimed_edges.iter().map(|&(a, b)| Value::from(vec![a, b])).collect();
        let mut obj = serde_json::json!({
            "id": self.id,
            "n": self.n,
            "claimed_count": self.claimed_count,
            "provenance": self.provenance,
            "coords": coords,
            "edges": edges,
        });
        if let Some(ex) = &self.exact {
            obj["exact"] = Value::from(ex.iter().map(|(x, y)| Value::from(vec![x.clone(), y.clone()])).collect::<Vec<_>>());
        }
        obj
    }
}

/// Shortest decimal string for a rational with a power-of-ten denominator,
/// `p/q` otherwise.
pub fn decimal_string(r: &Rational) -> String {
    let mut digits = 0usize;
    let mut scaled = r.clone();
    let ten = Rational::from_integer(BigInt::from(10));
    while !scaled.is_integer() && digits < 30 {
        scaled *= &ten;
        digits += 1;
    }
    if !scaled.is_integer() {
        return crate::exact::rational_to_string(r);
    }
    let int = scaled.to_integer();
    let neg = int.is_negative();
    let mut s = int.abs().to_string();
    if digits > 0 {
        while s.len() <= digits {
            s.insert(0, '0');
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub schema_version: u64,
    pub records: Vec<ConstructionRecord>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Option<&ConstructionRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "schema_version": self.schema_version,
            "records": self.records.iter().map(ConstructionRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The catalog shipped with the crate.
pub fn default_catalog() -> Catalog {
    parse_catalog(DEFAULT_CATALOG).expect("bundled catalog is valid")
}

pub fn load_catalog(path: &Path) -> Result<Catalog, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let doc: Value = serde_json::from_str(text)?;
    let schema_version = doc
        .get("schema_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema_err("<catalog>", "schema_version", "missing or not an integer"))?;
    if schema_version != SCHEMA_VERSION {
        return Err(schema_err(
            "<catalog>",
            "schema_version",
            format!("unsupported version {schema_version}"),
        ));
    }
    let records = doc
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("<catalog>", "records", "missing or not an array"))?;
    let mut out = Vec::with_capacity(records.len());
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in records.iter().enumerate() {
        let rec = parse_record(raw, i)?;
        if !seen.insert(rec.id.clone()) {
            return Err(schema_err(&rec.id, "id", "duplicate id"));
        }
        out.push(rec);
    }
    Ok(Catalog {
        schema_version,
        records: out,
    })
}

fn parse_record(raw: &Value, index: usize) -> Result<ConstructionRecord, CatalogError> {
    let id = raw
        .get("id")
        .and_then(Value::as_str)
        .ok_or_else(|| schema_err(&format!("#{index}"), "id", "missing or not a string"))?
        .to_string();
    let field = |name: &str| raw.get(name).ok_or_else(|| schema_err(&id, name, "missing"));
    let as_count = |name: &str| -> Result<usize, CatalogError> {
        field(name)?
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| schema_err(&id, name, "not a nonnegative integer"))
    };
    let n = as_count("n")?;
    let claimed_count = as_count("claimed_count")?;
    let provenance = field("provenance")?
        .as_str()
        .ok_or_else(|| schema_err(&id, "provenance", "not a string"))?
        .to_string();

    let coords_raw = field("coords")?
        .as_array()
        .ok_or_else(|| schema_err(&id, "coords", "not an array"))?;
    if coords_raw.len() != n {
        return Err(schema_err(&id, "coords", format!("has {} points, n = {n}", coords_raw.len())));
    }
    let mut coords = Vec::with_capacity(n);
    for (i, c) in coords_raw.iter().enumerate() {
        let fname = format!("coords[{i}]");
        let pair = string_pair(c).ok_or_else(|| schema_err(&id, &fname, "expected [\"x\", \"y\"]"))?;
        let x = parse_decimal(&pair.0).map_err(|e| schema_err(&id, &fname, e.to_string()))?;
        let y = parse_decimal(&pair.1).map_err(|e| schema_err(&id, &fname, e.to_string()))?;
        coords.push(ApproxPoint::new(x, y));
    }

    let edges_raw = field("edges")?
        .as_array()
        .ok_or_else(|| schema_err(&id, "edges", "not an array"))?;
    let mut claimed_edges = Vec::with_capacity(edges_raw.len());
    let mut seen = std::collections::HashSet::new();
    for (i, e) in edges_raw.iter().enumerate() {
        let fname = format!("edges[{i}]");
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
            .ok_or_else(|| schema_err(&id, &fname, "expected [i, j]"))?;
        if pair.0 >= n || pair.1 >= n || pair.0 == pair.1 {
            return Err(schema_err(&id, &fname, format!("invalid pair {pair:?} for n = {n}")));
        }
        if !seen.insert((pair.0.min(pair.1), pair.0.max(pair.1))) {
            return Err(schema_err(&id, &fname, "repeated edge"));
        }
        claimed_edges.push(pair);
    }
    if claimed_edges.len() != claimed_count {
        return Err(schema_err(
            &id,
            "claimed_count",
            format!("{claimed_count} but {} edges listed", claimed_edges.len()),
        ));
    }

    let exact = match raw.get("exact") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let arr = v.as_array().ok_or_else(|| schema_err(&id, "exact", "not an array"))?;
            if arr.len() != n {
                return Err(schema_err(&id, "exact", format!("has {} points, n = {n}", arr.len())));
            }
            let pairs = arr
                .iter()
                .enumerate()
                .map(|(i, c)| string_pair(c).ok_or_else(|| schema_err(&id, &format!("exact[{i}]"), "expected two expressions")))
                .collect::<Result<Vec<_>, _>>()?;
            Some(pairs)
        }
    };
    let rec = ConstructionRecord {
        id: id.clone(),
        n,
        coords,
        claimed_edges,
        claimed_count,
        provenance,
        exact,
    };
    if let Some(Err(e)) = rec.cached_exact_points() {
        return Err(schema_err(&id, "exact", e.to_string()));
    }
    Ok(rec)
}

fn string_pair(v: &Value) -> Option<(String, String)> {
    let a = v.as_array().filter(|a| a.len() == 2)?;
    let s = |x: &Value| match x {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    };
    Some((s(&a[0])?, s(&a[1])?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeDeviation {
    pub edge: (usize, usize),
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxReport {
    pub id: String,
    pub tol: f64,
    pub checked_edges: usize,
    /// Largest `|d - 1|` over claimed edges.
    pub max_deviation: f64,
    /// Claimed edges with `|d - 1| > tol`.
    pub failures: Vec<EdgeDeviation>,
    /// Unclaimed pairs with `|d - 1|` inside the ambiguity band.
    pub ambiguous_non_edges: Vec<EdgeDeviation>,
    pub passed: bool,
    /// Approximate checks never certify anything.
    pub certificate: &'static str,
}

fn within(d2: &Rational, slack: &Rational) -> bool {
    let one = Rational::one();
    let lo = &one - slack;
    let hi = &one + slack;
    let lo2 = if lo.is_negative() { Rational::from_integer(0.into()) } else { &lo * &lo };
    &lo2 <= d2 && d2 <= &(&hi * &hi)
}

fn approx_dist(d2: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    d2.to_f64().unwrap_or(f64::NAN).sqrt()
}

/// Check every claimed edge has `|d - 1| <= tol` on the printed coordinates.
pub fn verify_approx(rec: &ConstructionRecord, tol: &Rational) -> ApproxReport {
    use num_traits::ToPrimitive;
    let band = default_band();
    let claimed: std::collections::HashSet<(usize, usize)> =
        rec.claimed_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut failures = Vec::new();
    let mut max_deviation = 0f64;
    for &(a, b) in &rec.claimed_edges {
        let d2 = rec.coords[a].dist2(&rec.coords[b]);
        let d = approx_dist(&d2);
        max_deviation = max_deviation.max((d - 1.0).abs());
        if !within(&d2, tol) {
            failures.push(EdgeDeviation { edge: (a, b), distance: d });
        }
    }
    let mut ambiguous_non_edges = Vec::new();
    for a in 0..rec.n {
        for b in a + 1..rec.n {
            if claimed.contains(&(a, b)) {
                continue;
            }
            let d2 = rec.coords[a].dist2(&rec.coords[b]);
            if within(&d2, &band) {
                ambiguous_non_edges.push(EdgeDeviation {
                    edge: (a, b),
                    distance: approx_dist(&d2),
                });
            }
        }
    }
    ApproxReport {
        id: rec.id.clone(),
        tol: tol.to_f64().unwrap_or(f64::NAN),
        checked_edges: rec.claimed_edges.len(),
        max_deviation,
        passed: failures.is_empty(),
        failures,
        ambiguous_non_edges,
        certificate: "none (approximate check)",
    }
}

pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(50))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub best_claimed: usize,
    /// Records attaining `best_claimed`.
    pub records: Vec<String>,
    pub status: RealizationStatus,
    /// Exact edge count of the best certified record, if any.
    pub certified_edges: Option<usize>,
    /// Matching upper bound: known values through 21, then the pipeline.
    pub upper: Option<u128>,
}

/// Per-n maxima over the given records and their realizations (same order).
pub fn catalog_summary(records: &[ConstructionRecord], results: &[RealizationResult]) -> Vec<SummaryRow> {
    assert_eq!(records.len(), results.len());
    let top_n = records.iter().map(|r| r.n as u64).max().unwrap_or(0);
    let chain = crate::bounds::upper_chain(&crate::bounds::SeedTable::table1_known(), top_n.max(1)).unwrap_or_default();
    let mut by_n: BTreeMap<usize, Vec<(&ConstructionRecord, &RealizationResult)>> = BTreeMap::new();
    for (r, res) in records.iter().zip(results) {
        by_n.entry(r.n).or_default().push((r, res));
    }
    by_n.into_iter()
        .map(|(n, group)| {
            let best = group.iter().map(|(r, _)| r.claimed_count).max().unwrap_or(0);
            let top: Vec<_> = group.iter().filter(|(r, _)| r.claimed_count == best).collect();
            let certified = top
                .iter()
                .filter(|(_, res)| res.status == RealizationStatus::ExactCertified)
                .map(|(_, res)| res.derived_edge_count.unwrap_or(0))
                .max();
            let status = if certified.is_some() {
                RealizationStatus::ExactCertified
            } else if top.iter().any(|(_, res)| res.status == RealizationStatus::ApproximateOnly) {
                RealizationStatus::ApproximateOnly
            } else {
                RealizationStatus::Failed
            };
            SummaryRow {
                n,
                best_claimed: best,
                records: top.iter().map(|(r, _)| r.id.clone()).collect(),
                status,
                certified_edges: certified,
                upper: chain.get(n).copied(),
            }
        })
        .collect()
}

/// Realize every record, spreading the work over the available cores.
/// Output order follows the input.
pub fn realize_all(records: &[ConstructionRecord]) -> Vec<RealizationResult> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(records.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<RealizationResult>>> =
        records.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= records.len() {
                    break;
                }
                let res = realize_exact(&records[i]);
                *slots[i].lock().unwrap() = Some(res);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_strings() {
        let r = |s: &str| parse_decimal(s).unwrap();
        assert_eq!(decimal_string(&r("-0.87")), "-0.87");
        assert_eq!(decimal_string(&r("0.05")), "0.05");
        assert_eq!(decimal_string(&r("2")), "2");
        assert_eq!(decimal_string(&Rational::new(1.into(), 3.into())), "1/3");
    }

    #[test]
    fn schema_errors_name_record_and_field() {
        let bad = r#"{"schema_version":1,"records":[{"id":"x","n":2,"claimed_count":1,"provenance":"",
            "coords":[["0","0"],["1","zz"]],"edges":[[0,1]]}]}"#;
        match parse_catalog(bad) {
            Err(CatalogError::Schema { record, field, .. }) => {
                assert_eq!(record, "x");
                assert_eq!(field, "coords[1]");
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"schema_version":1,"records":[{"id":"y","n":2,"claimed_count":2,"provenance":"",
            "coords":[["0","0"],["1","0"]],"edges":[[0,1]]}]}"#;
        assert!(matches!(parse_catalog(bad), Err(CatalogError::Schema { field, .. }) if field == "claimed_count"));
    }
}
