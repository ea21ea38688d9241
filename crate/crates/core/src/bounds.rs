//! Crossing-number lower bounds, upper bounds on `u(n)`, the small-n table
//! pipeline and the threshold solvers.
//!
//! Every value is an exact rational or integer. Decimal gates are kept as
//! fractions: `6.95 = 139/20`, `13.9 = 139/10`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rational_to_string, Rational};
use crate::udg::jensen_degree_floor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("unknown formula id {0:?}")]
    UnknownFormula(String),
    #[error("formula {formula} needs input {input}")]
    MissingInput { formula: &'static str, input: &'static str },
    #[error("no seed value for n = {0}")]
    MissingSeed(u64),
    #[error("malformed seed table: {0}")]
    BadSeed(String),
    #[error("empty range {from}..={to}")]
    EmptyRange { from: u64, to: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    PlanarExcess,
    Ackerman,
    MultiConvex,
    Multi2Even,
    MultiGeneral,
    Multi2Large,
    NonhomotopicPtt,
    NonhomotopicImproved,
    HarmonicSimple,
    Theorem1,
    Jensen,
    Proposition,
    Schade,
    Degree2,
}

impl FormulaId {
    pub const ALL: [FormulaId; 14] = [
        FormulaId::PlanarExcess,
        FormulaId::Ackerman,
        FormulaId::MultiConvex,
        FormulaId::Multi2Even,
        FormulaId::MultiGeneral,
        FormulaId::Multi2Large,
        FormulaId::NonhomotopicPtt,
        FormulaId::NonhomotopicImproved,
        FormulaId::HarmonicSimple,
        FormulaId::Theorem1,
        FormulaId::Jensen,
        FormulaId::Proposition,
        FormulaId::Schade,
        FormulaId::Degree2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::PlanarExcess => "planar_excess",
            FormulaId::Ackerman => "ackerman",
            FormulaId::MultiConvex => "multi_convex",
            FormulaId::Multi2Even => "multi2_even",
            FormulaId::MultiGeneral => "multi_general",
            FormulaId::Multi2Large => "multi2_large",
            FormulaId::NonhomotopicPtt => "nonhomotopic_ptt",
            FormulaId::NonhomotopicImproved => "nonhomotopic_improved",
            FormulaId::HarmonicSimple => "harmonic_simple",
            FormulaId::Theorem1 => "theorem1",
            FormulaId::Jensen => "jensen",
            FormulaId::Proposition => "proposition",
            FormulaId::Schade => "schade",
            FormulaId::Degree2 => "degree2",
        }
    }

    /// Lower bounds on crossing numbers, as opposed to upper bounds on `u(n)`.
    pub fn is_crossing_bound(self) -> bool {
        !matches!(
            self,
            FormulaId::Theorem1 | FormulaId::Jensen | FormulaId::Proposition | FormulaId::Schade | FormulaId::Degree2
        )
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| BoundsError::UnknownFormula(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEvaluation {
    pub formula: FormulaId,
    pub n: u64,
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Present exactly when `applicable`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub value: Option<Rational>,
    /// Secondary forms (for instance the simple and the precise variant).
    #[serde(serialize_with = "ser_named_rationals")]
    pub extras: Vec<(String, Rational)>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&rational_to_string(r)),
        None => s.serialize_none(),
    }
}

fn ser_named_rationals<S: serde::Serializer>(v: &[(String, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, r) in v {
        map.serialize_entry(k, &rational_to_string(r))?;
    }
    map.end()
}

impl BoundEvaluation {
    fn ok(formula: FormulaId, n: u64, m: Option<u64>, k: Option<u64>, value: Rational) -> Self {
        BoundEvaluation {
            formula,
            n,
            m,
            k,
            applicable: true,
            reason: None,
            value: Some(value),
            extras: Vec::new(),
        }
    }

    fn not_applicable(formula: FormulaId, n: u64, m: Option<u64>, k: Option<u64>, reason: impl Into<String>) -> Self {
        BoundEvaluation {
            formula,
            n,
            m,
            k,
            applicable: false,
            reason: Some(reason.into()),
            value: None,
            extras: Vec::new(),
        }
    }

    fn with_extra(mut self, name: &str, v: Rational) -> Self {
        self.extras.push((name.to_string(), v));
        self
    }

    pub fn extra(&self, name: &str) -> Option<&Rational> {
        self.extras.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

fn q(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(a: i128, b: i128) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn clamp0(r: Rational) -> Rational {
    if r.is_negative() {
        Rational::zero()
    } else {
        r
    }
}

fn cube(m: u64) -> Rational {
    q(m as i128).pow(3)
}

/// `max(0, m - (3n - 6))`.
pub fn cr_planar_excess(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::PlanarExcess;
    if n < 3 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 3");
    }
    BoundEvaluation::ok(id, n, Some(m), None, clamp0(q(m as i128) - q(3 * n as i128 - 6)))
}

/// `max(0, m^3/(29 n^2) - 35n/29)`, or `m^3/(29 n^2)` once `m >= 6.95 n`.
pub fn cr_ackerman(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::Ackerman;
    if n < 1 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 1");
    }
    let strong = cube(m) / q(29 * (n as i128) * (n as i128));
    let weak = clamp0(&strong - frac(35 * n as i128, 29));
    let dense = 20 * m as u128 >= 139 * n as u128;
    let value = if dense { strong.clone() } else { weak.clone() };
    let eval = BoundEvaluation::ok(id, n, Some(m), None, value).with_extra("weak", weak);
    if dense {
        eval.with_extra("strong", strong)
    } else {
        eval
    }
}

/// Simple-graph formulas that may serve as the base of [`cr_multi_convex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFormula {
    PlanarExcess,
    Ackerman,
    HarmonicSimple,
}

impl BaseFormula {
    pub fn evaluate(self, n: u64, m: u64) -> BoundEvaluation {
        match self {
            BaseFormula::PlanarExcess => cr_planar_excess(n, m),
            BaseFormula::Ackerman => cr_ackerman(n, m),
            BaseFormula::HarmonicSimple => cr_harmonic_simple(n, m),
        }
    }
}

/// `k^2 ((1 - {m/k}) base(n, floor(m/k)) + {m/k} base(n, ceil(m/k)))`.
pub fn cr_multi_convex(n: u64, m: u64, k: u64, base: BaseFormula) -> BoundEvaluation {
    let id = FormulaId::MultiConvex;
    if k == 0 {
        return BoundEvaluation::not_applicable(id, n, Some(m), Some(k), "needs k >= 1");
    }
    let lo = base.evaluate(n, m / k);
    let hi = base.evaluate(n, m.div_ceil(k));
    let (Some(vlo), Some(vhi)) = (lo.value, hi.value) else {
        return BoundEvaluation::not_applicable(id, n, Some(m), Some(k), "base formula not applicable");
    };
    let f = frac((m % k) as i128, k as i128);
    let kk = q((k * k) as i128);
    let value = kk * ((Rational::one() - &f) * vlo + f * vhi);
    BoundEvaluation::ok(id, n, Some(m), Some(k), value)
}

/// `max(0, 2m - 12n + 24)` for even `m`, multiplicity at most 2.
pub fn cr_multi2_even(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::Multi2Even;
    if n < 3 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 3");
    }
    if m % 2 == 1 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "m is odd");
    }
    let v = 2 * m as i128 - 12 * n as i128 + 24;
    BoundEvaluation::ok(id, n, Some(m), None, clamp0(q(v)))
}

/// Multiplicity at most `k` with `floor(m/k) >= 6.95 n`. The value is the
/// precise convex form; `simple` carries `m^3 / (29 k n^2)`.
pub fn cr_multi_general(n: u64, m: u64, k: u64) -> BoundEvaluation {
    let id = FormulaId::MultiGeneral;
    if k == 0 || n == 0 {
        return BoundEvaluation::not_applicable(id, n, Some(m), Some(k), "needs n, k >= 1");
    }
    let fl = m / k;
    if (20 * fl as u128) < (139 * n as u128) {
        return BoundEvaluation::not_applicable(id, n, Some(m), Some(k), "floor(m/k) < 6.95n");
    }
    let n2 = q(29 * (n as i128) * (n as i128));
    let f = frac((m % k) as i128, k as i128);
    let precise = q((k * k) as i128) * ((Rational::one() - &f) * cube(fl) + f * cube(m.div_ceil(k))) / &n2;
    let simple = cube(m) / (n2 * q(k as i128));
    BoundEvaluation::ok(id, n, Some(m), Some(k), precise.clone())
        .with_extra("simple", simple)
        .with_extra("precise", precise)
}

/// `m^3 / (58 n^2)` for even `m >= 13.9 n`, multiplicity at most 2.
pub fn cr_multi2_large(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::Multi2Large;
    if n == 0 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 1");
    }
    if m % 2 == 1 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "m is odd");
    }
    if (10 * m as u128) < (139 * n as u128) {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "m < 13.9n");
    }
    BoundEvaluation::ok(id, n, Some(m), None, cube(m) / q(58 * (n as i128) * (n as i128)))
}

/// `m^2 / (24 n)` when `m > 4n`.
pub fn cr_nonhomotopic_ptt(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::NonhomotopicPtt;
    if n == 0 || m <= 4 * n {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs m > 4n");
    }
    BoundEvaluation::ok(id, n, Some(m), None, frac((m as i128).pow(2), 24 * n as i128))
}

/// `max(0, m^2/(6n - 6) - m/2)`.
pub fn cr_nonhomotopic_improved(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::NonhomotopicImproved;
    if n < 2 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 2");
    }
    let v = frac((m as i128).pow(2), 6 * n as i128 - 6) - frac(m as i128, 2);
    BoundEvaluation::ok(id, n, Some(m), None, clamp0(v))
}

/// `max(0, m^2/(6n - 12) - m/2)`.
pub fn cr_harmonic_simple(n: u64, m: u64) -> BoundEvaluation {
    let id = FormulaId::HarmonicSimple;
    if n < 3 {
        return BoundEvaluation::not_applicable(id, n, Some(m), None, "needs n >= 3");
    }
    let v = frac((m as i128).pow(2), 6 * n as i128 - 12) - frac(m as i128, 2);
    BoundEvaluation::ok(id, n, Some(m), None, clamp0(v))
}

pub fn choose2(n: u64) -> u128 {
    (n as u128) * (n as u128).saturating_sub(1) / 2
}

/// Largest `x` in `[0, hi]` with `pred(x)`; `pred` must be monotone decreasing
/// and true at 0.
fn last_true(hi: u128, pred: impl Fn(u128) -> bool) -> u128 {
    let (mut lo, mut hi) = (0u128, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Largest `u` with `4u^3 <= 29 n^4`, clamped to `C(n, 2)`.
pub fn u_upper_theorem(n: u64) -> u128 {
    assert!(n >= 1 && n <= 100_000_000, "u_upper_theorem: n out of range");
    let rhs = 29 * (n as u128).pow(4);
    let fits = |u: u128| {
        u.checked_pow(3)
            .and_then(|c| c.checked_mul(4))
            .is_some_and(|v| v <= rhs)
    };
    // 4u^3 <= 29n^4 forces u < 2 n^{4/3} <= 2 n^2
    last_true(2 * (n as u128).pow(2), fits)
}

/// Largest `m` with `2m^2 - mn <= n^3 - n^2`, clamped to `C(n, 2)`.
pub fn u_upper_jensen(n: u64) -> u128 {
    assert!(n >= 1 && n <= 1_000_000_000, "u_upper_jensen: n out of range");
    let n = n as u128;
    let rhs = n * n * n - n * n;
    let fits = |m: u128| 2 * m * m <= rhs + m * n;
    // positive root of 2m^2 - mn - rhs is below (n + sqrt(n^2 + 8 rhs)) / 4 + 1
    let hi = (n + (n * n + 8 * rhs).sqrt()) / 4 + 1;
    last_true(hi, fits).min(choose2(n as u64))
}

/// Left side `4m - 12n + 24 + J(n, m)` of the degree-refined inequality.
pub fn proposition_lhs(n: u64, m: u64) -> i128 {
    4 * m as i128 - 12 * n as i128 + 24 + jensen_degree_floor(n, m) as i128
}

/// Largest `m <= C(n, 2)` with `proposition_lhs(n, m) <= n^2 - n`.
///
/// The search is a bisection; at every probe the left side is checked to be
/// nondecreasing between `m` and `m + 1`.
pub fn u_upper_proposition(n: u64) -> u128 {
    assert!(n >= 3, "u_upper_proposition needs n >= 3");
    let rhs = (n as i128) * (n as i128) - n as i128;
    let cap = choose2(n);
    let fits = |m: u128| {
        let m = m as u64;
        let here = proposition_lhs(n, m);
        assert!(
            proposition_lhs(n, m + 1) >= here,
            "proposition left side decreases at n={n}, m={m}"
        );
        here <= rhs
    };
    if !fits(0) {
        return 0;
    }
    last_true(cap, fits)
}

/// `floor(n * u_prev / (n - 2))`, clamped to `C(n, 2)`.
pub fn u_upper_schade(n: u64, u_prev: u128) -> u128 {
    assert!(n >= 3, "u_upper_schade needs n >= 3");
    (n as u128 * u_prev / (n as u128 - 2)).min(choose2(n))
}

pub fn u_upper_degree2(u_prev: u128) -> u128 {
    u_prev + 2
}

/// Evaluate any registered formula. Upper-bound formulas read `m` as
/// `u(n-1)` where they need it (schade, degree2).
pub fn evaluate(formula: FormulaId, n: u64, m: Option<u64>, k: Option<u64>) -> Result<BoundEvaluation, BoundsError> {
    let name = formula.as_str();
    let need_m = || m.ok_or(BoundsError::MissingInput { formula: name, input: "m" });
    let need_k = || k.ok_or(BoundsError::MissingInput { formula: name, input: "k" });
    let upper = |v: u128| BoundEvaluation::ok(formula, n, m, k, q(v as i128));
    Ok(match formula {
        FormulaId::PlanarExcess => cr_planar_excess(n, need_m()?),
        FormulaId::Ackerman => cr_ackerman(n, need_m()?),
        FormulaId::MultiConvex => cr_multi_convex(n, need_m()?, need_k()?, BaseFormula::Ackerman),
        FormulaId::Multi2Even => cr_multi2_even(n, need_m()?),
        FormulaId::MultiGeneral => cr_multi_general(n, need_m()?, need_k()?),
        FormulaId::Multi2Large => cr_multi2_large(n, need_m()?),
        FormulaId::NonhomotopicPtt => cr_nonhomotopic_ptt(n, need_m()?),
        FormulaId::NonhomotopicImproved => cr_nonhomotopic_improved(n, need_m()?),
        FormulaId::HarmonicSimple => cr_harmonic_simple(n, need_m()?),
        FormulaId::Theorem1 if n >= 1 => upper(u_upper_theorem(n)),
        FormulaId::Jensen if n >= 1 => upper(u_upper_jensen(n)),
        FormulaId::Proposition if n >= 3 => upper(u_upper_proposition(n)),
        FormulaId::Schade if n >= 3 => upper(u_upper_schade(n, need_m()? as u128)),
        FormulaId::Degree2 => upper(u_upper_degree2(need_m()? as u128)),
        _ => BoundEvaluation::not_applicable(formula, n, m, k, "n too small"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedProvenance {
    /// Exact value of `u(n)`.
    Known,
    /// Published upper bound, not known to be tight.
    PublishedUpper,
    /// Supplied by the caller.
    User,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedEntry {
    pub value: u128,
    pub provenance: SeedProvenance,
}

/// Known values or upper bounds for `u(n)`, keyed by `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SeedTable(pub BTreeMap<u64, SeedEntry>);

const KNOWN_U: [u128; 15] = [0, 1, 3, 5, 7, 9, 12, 14, 18, 20, 23, 27, 30, 33, 37];
const PUBLISHED_UPPER_16_21: [u128; 6] = [42, 47, 52, 57, 63, 68];

impl SeedTable {
    /// Exact `u(n)` for `n <= 15` and the published upper values for `16..=21`.
    pub fn table1_known() -> SeedTable {
        let mut t = BTreeMap::new();
        for (i, &v) in KNOWN_U.iter().enumerate() {
            t.insert(i as u64 + 1, SeedEntry { value: v, provenance: SeedProvenance::Known });
        }
        for (i, &v) in PUBLISHED_UPPER_16_21.iter().enumerate() {
            t.insert(
                i as u64 + 16,
                SeedEntry {
                    value: v,
                    provenance: SeedProvenance::PublishedUpper,
                },
            );
        }
        SeedTable(t)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u128)>) -> SeedTable {
        SeedTable(
            pairs
                .into_iter()
                .map(|(n, v)| (n, SeedEntry { value: v, provenance: SeedProvenance::User }))
                .collect(),
        )
    }

    /// Accepts `table1_known`, an inline map `{21:68, 14:33}` or a JSON
    /// object `{"21": 68}`.
    pub fn parse(src: &str) -> Result<SeedTable, BoundsError> {
        let s = src.trim();
        if s == "table1_known" {
            return Ok(SeedTable::table1_known());
        }
        let body = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| BoundsError::BadSeed(format!("expected {{n: value, ...}}, got {s:?}")))?;
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once(':')
                .ok_or_else(|| BoundsError::BadSeed(format!("entry {item:?} lacks ':'")))?;
            let k: u64 = k
                .trim()
                .trim_matches('"')
                .parse()
                .map_err(|_| BoundsError::BadSeed(format!("bad n in {item:?}")))?;
            let v: u128 = v
                .trim()
                .parse()
                .map_err(|_| BoundsError::BadSeed(format!("bad value in {item:?}")))?;
            pairs.push((k, v));
        }
        if pairs.is_empty() {
            return Err(BoundsError::BadSeed("seed table is empty".into()));
        }
        Ok(SeedTable::from_pairs(pairs))
    }

    pub fn get(&self, n: u64) -> Option<u128> {
        self.0.get(&n).map(|e| e.value)
    }

    pub fn max_n(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSource {
    Schade,
    Degree2,
    Proposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBoundTableRow {
    pub n: u64,
    /// The `u(n-1)` value the row was built from.
    pub u_prev: u128,
    pub prev_from_seed: bool,
    pub schade_value: u128,
    pub degree2_value: u128,
    pub proposition_value: u128,
    /// `min(schade, max(degree2, proposition))`.
    pub combined: u128,
    pub source: RowSource,
}

pub fn pipeline_row(n: u64, u_prev: u128, prev_from_seed: bool) -> UpperBoundTableRow {
    let schade_value = u_upper_schade(n, u_prev);
    let degree2_value = u_upper_degree2(u_prev);
    let proposition_value = u_upper_proposition(n);
    let alt = degree2_value.max(proposition_value);
    let combined = schade_value.min(alt).min(choose2(n));
    let source = if schade_value <= alt {
        RowSource::Schade
    } else if degree2_value >= proposition_value {
        RowSource::Degree2
    } else {
        RowSource::Proposition
    };
    UpperBoundTableRow {
        n,
        u_prev,
        prev_from_seed,
        schade_value,
        degree2_value,
        proposition_value,
        combined,
        source,
    }
}

/// Rows for `from..=to`. Row `n` is built from the seed value at `n - 1` when
/// there is one, otherwise from the previous computed row.
pub fn build_upper_table(seed: &SeedTable, from: u64, to: u64) -> Result<Vec<UpperBoundTableRow>, BoundsError> {
    if from > to || from < 3 {
        return Err(BoundsError::EmptyRange { from, to });
    }
    let mut rows: Vec<UpperBoundTableRow> = Vec::new();
    for n in from..=to {
        let (u_prev, from_seed) = match (seed.get(n - 1), rows.last()) {
            (Some(v), _) => (v, true),
            (None, Some(r)) => (r.combined, false),
            (None, None) => return Err(BoundsError::MissingSeed(n - 1)),
        };
        rows.push(pipeline_row(n, u_prev, from_seed));
    }
    Ok(rows)
}

/// Chain values for `1..=horizon`: seed values where present (the seed must
/// cover `1..=max_n` without gaps), pipeline values beyond.
pub fn upper_chain(seed: &SeedTable, horizon: u64) -> Result<Vec<u128>, BoundsError> {
    let top = seed.max_n().ok_or(BoundsError::MissingSeed(1))?;
    let mut chain = vec![0u128; horizon as usize + 1];
    for n in 1..=horizon {
        chain[n as usize] = if n <= top {
            seed.get(n).ok_or(BoundsError::MissingSeed(n))?
        } else {
            pipeline_row(n, chain[n as usize - 1], false).combined
        };
    }
    Ok(chain)
}

/// Smallest `n` with `4 (139n/20)^3 < 29 n^4`, i.e. `6.95n` below the theorem bound.
pub fn crossover_case2() -> u64 {
    (1u64..)
        .find(|&n| case2_holds(n))
        .expect("the inequality holds for large n")
}

pub fn case2_holds(n: u64) -> bool {
    let lhs = q(4) * (frac(139, 20) * q(n as i128)).pow(3);
    let rhs = q(29) * q(n as i128).pow(4);
    lhs < rhs
}

pub const CASE3_HORIZON: u64 = 100_000;

/// Largest `n <= CASE3_HORIZON` with `u_upper_jensen(n) < u_upper_theorem(n)`.
pub fn crossover_case3() -> u64 {
    (1..=CASE3_HORIZON)
        .rev()
        .find(|&n| u_upper_jensen(n) < u_upper_theorem(n))
        .expect("holds for small n")
}

pub const CHAIN_HORIZON: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPoint {
    pub n: u64,
    pub theorem: u128,
    pub chain: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossoverReport {
    /// Smallest `n` past the seed with `u_upper_theorem(n) <= chain(n)`.
    pub value: Option<u64>,
    /// Smallest `n` past the seed from which that holds through `horizon`.
    pub stable_from: Option<u64>,
    pub horizon: u64,
    /// Chain and theorem values at `value - 1` and `value`.
    pub audit: Vec<ChainPoint>,
}

pub fn crossover_theorem_vs_table(seed: &SeedTable) -> Result<CrossoverReport, BoundsError> {
    crossover_theorem_vs_table_upto(seed, CHAIN_HORIZON)
}

pub fn crossover_theorem_vs_table_upto(seed: &SeedTable, horizon: u64) -> Result<CrossoverReport, BoundsError> {
    let chain = upper_chain(seed, horizon)?;
    let start = seed.max_n().unwrap_or(1) + 1;
    let ok = |n: u64| u_upper_theorem(n) <= chain[n as usize];
    let value = (start..=horizon).find(|&n| ok(n));
    let mut stable_from = None;
    for n in (start..=horizon).rev() {
        if !ok(n) {
            break;
        }
        stable_from = Some(n);
    }
    let audit = match value {
        Some(v) => (v.saturating_sub(1).max(1)..=v)
            .map(|n| ChainPoint {
                n,
                theorem: u_upper_theorem(n),
                chain: chain[n as usize],
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(CrossoverReport {
        value,
        stable_from,
        horizon,
        audit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapBound {
    pub n: u64,
    /// Certified enclosure of `cbrt(29/4) (n^{4/3} - (n-1)^{4/3})`.
    #[serde(serialize_with = "crate::exact::serde_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::exact::serde_rational")]
    pub hi: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCasesReport {
    pub case2_from: u64,
    pub case3_upto: u64,
    pub cases_cover_all_n: bool,
    pub overlap: (u64, u64),
    pub gap_checked_upto: u64,
    pub gap_holds_in_checked_range: bool,
    pub gap_samples: Vec<GapBound>,
    /// `(n-1)` bound beyond which the derivative argument alone gives gap > 2.
    pub derivative_tail_from: u64,
    pub ok: bool,
}

const GAP_SCALE_BITS: u32 = 40;

fn cbrt_bounds(num: &BigInt, den: &BigInt) -> (Rational, Rational) {
    // floor(cbrt(num/den * 2^{3b})) / 2^b and that plus one ulp
    let scale = BigInt::one() << (3 * GAP_SCALE_BITS);
    let x = (num * scale) / den;
    let r = x.cbrt();
    let d = BigInt::one() << GAP_SCALE_BITS;
    (Rational::new(r.clone(), d.clone()), Rational::new(r + 1, d))
}

/// Certified enclosure of `cbrt(29/4) (n^{4/3} - (n-1)^{4/3})`.
pub fn theorem_gap(n: u64) -> GapBound {
    assert!(n >= 2);
    let n4 = BigInt::from(n).pow(4);
    let p4 = BigInt::from(n - 1).pow(4);
    let (a_lo, a_hi) = cbrt_bounds(&n4, &BigInt::one());
    let (b_lo, b_hi) = cbrt_bounds(&p4, &BigInt::one());
    let (c_lo, c_hi) = cbrt_bounds(&BigInt::from(29), &BigInt::from(4));
    GapBound {
        n,
        lo: &c_lo * (a_lo - b_hi),
        hi: &c_hi * (a_hi - b_lo),
    }
}

pub fn validate_theorem1_cases(gap_upto: u64) -> TheoremCasesReport {
    let case2_from = crossover_case2();
    let case3_upto = crossover_case3();
    let cases_cover_all_n = case2_from <= case3_upto + 1;
    let two = q(2);
    let gap_holds_in_checked_range = (3..=gap_upto).all(|n| theorem_gap(n).lo > two);
    // f(x) = x^{4/3} is convex, so f(n) - f(n-1) >= f'(n-1) = (4/3)(n-1)^{1/3};
    // c (4/3) t^{1/3} > 2 iff 64 * 29/4 * t > 216 iff 464 t > 216, true for t >= 1.
    let derivative_tail_from = (1u64..).find(|&t| 464 * t > 216).unwrap() + 1;
    let gap_samples = [3, 4, 10, 47, 380, 1000]
        .into_iter()
        .map(theorem_gap)
        .collect();
    TheoremCasesReport {
        case2_from,
        case3_upto,
        cases_cover_all_n,
        overlap: (case2_from, case3_upto),
        gap_checked_upto: gap_upto,
        gap_holds_in_checked_range,
        gap_samples,
        derivative_tail_from,
        ok: cases_cover_all_n && gap_holds_in_checked_range && derivative_tail_from <= 3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallNComparisonRow {
    pub n: u64,
    pub proposition: u128,
    pub jensen: u128,
    /// Pure recursion `floor(n u(n-1) / (n-2))` from `u(14) = 33`.
    pub schade_chain: u128,
    /// Published upper values through n = 21, recursion beyond.
    pub published_chain: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallNComparison {
    pub rows: Vec<SmallNComparisonRow>,
    pub first_below_schade_chain: Option<u64>,
    pub first_below_published_chain: Option<u64>,
}

/// Where the degree-refined bound first drops below two candidate
/// "previous best" baselines. Informational only.
pub fn small_n_comparison(to: u64) -> SmallNComparison {
    let known = SeedTable::table1_known();
    let mut rows = Vec::new();
    let mut schade = known.get(14).unwrap();
    let mut published = known.get(14).unwrap();
    for n in 15..=to {
        schade = u_upper_schade(n, schade);
        published = match known.get(n) {
            Some(v) if n >= 16 => v,
            _ => u_upper_schade(n, published),
        };
        rows.push(SmallNComparisonRow {
            n,
            proposition: u_upper_proposition(n),
            jensen: u_upper_jensen(n),
            schade_chain: schade,
            published_chain: published,
        });
    }
    let first = |f: &dyn Fn(&SmallNComparisonRow) -> bool| rows.iter().find(|r| f(r)).map(|r| r.n);
    SmallNComparison {
        first_below_schade_chain: first(&|r| r.proposition < r.schade_chain),
        first_below_published_chain: first(&|r| r.proposition < r.published_chain),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_ids_round_trip() {
        for f in FormulaId::ALL {
            assert_eq!(f.as_str().parse::<FormulaId>().unwrap(), f);
        }
        assert!("nope".parse::<FormulaId>().is_err());
    }

    #[test]
    fn seed_parsing() {
        let s = SeedTable::parse("{21:68, 14: 33}").unwrap();
        assert_eq!(s.get(21), Some(68));
        assert_eq!(s.get(14), Some(33));
        let s = SeedTable::parse(r#"{"2": 1}"#).unwrap();
        assert_eq!(s.get(2), Some(1));
        assert!(SeedTable::parse("21:68").is_err());
        assert_eq!(SeedTable::table1_known().get(15), Some(37));
    }

    #[test]
    fn gap_at_three() {
        let g = theorem_gap(3);
        assert!(g.lo > frac(349, 100) && g.hi < frac(351, 100));
    }
}
