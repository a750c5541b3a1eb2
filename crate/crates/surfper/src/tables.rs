//! Embedded reference tables, their recomputation, and rendering.

use num::BigInt;
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::genus2_gamma34;
use crate::bounds::{construction_lower, default_horizon, gamma_upper, LowerBoundSearch};
use crate::minperiod::{admissible_l2_classes, genus2_pipeline, m_low_genus};
use crate::types::{catalog, CatalogEntry, Family, FiniteOrderType};
use crate::{Orientation, Period};

const GENUS2: &str = include_str!("../fixtures/genus2_min_periods.csv");
const GAMMA_PRESERVING: &str = include_str!("../fixtures/gamma_preserving.csv");
const GAMMA_REVERSING: &str = include_str!("../fixtures/gamma_reversing.csv");
const GAMMA34: &str = include_str!("../fixtures/gamma34.csv");
const LOWER_PRESERVING: &str = include_str!("../fixtures/lower_preserving.csv");
const LOWER_REVERSING: &str = include_str!("../fixtures/lower_reversing.csv");

/// Largest `b` listed in the genus-2 table; its row holds for all larger `b`.
pub const GENUS2_LAST_ROW: u64 = 22;

fn records(text: &str) -> impl Iterator<Item = Vec<String>> + '_ {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
        .into_records()
        .map(|r| r.expect("embedded fixture is valid CSV").iter().map(str::to_string).collect())
}

fn num<T: FromStr>(s: &str) -> T
where
    T::Err: std::fmt::Debug,
{
    s.parse().unwrap_or_else(|e| panic!("bad fixture number `{s}`: {e:?}"))
}

/// `c_b·b + c_g·g + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub b: i64,
    pub g: i64,
    pub c: i64,
}

impl LinearForm {
    pub fn eval(&self, g: u64, b: u64) -> i64 {
        self.b * b as i64 + self.g * g as i64 + self.c
    }
}

impl FromStr for LinearForm {
    type Err = String;

    /// Parses sums like `b-2g-3`, `4g+2`, `7`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut form = LinearForm { b: 0, g: 0, c: 0 };
        let s = s.replace(' ', "");
        if s.is_empty() {
            return Err("empty expression".into());
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits = term.trim_end_matches(['b', 'g']);
            let coef: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| format!("bad term `{term}` in `{s}`"))?
            };
            match &term[digits.len()..] {
                "" => form.c += sign * coef,
                "g" => form.g += sign * coef,
                "b" => form.b += sign * coef,
                _ => return Err(format!("bad term `{term}` in `{s}`")),
            }
        }
        Ok(form)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Genus2Row {
    pub b: u64,
    pub preserving: u64,
    pub reversing: u64,
}

pub fn genus2_rows() -> &'static [Genus2Row] {
    static ROWS: OnceLock<Vec<Genus2Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        records(GENUS2)
            .map(|r| Genus2Row { b: num(&r[0]), preserving: num(&r[1]), reversing: num(&r[2]) })
            .collect()
    })
}

/// Tabulated `m(H^±_{2,b})`, `b ≥ 1`.
pub fn genus2_value(b: u64, orientation: Orientation) -> u64 {
    let row = genus2_rows()[(b.clamp(1, GENUS2_LAST_ROW) - 1) as usize];
    match orientation {
        Orientation::Preserving => row.preserving,
        Orientation::Reversing => row.reversing,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaRow {
    pub l1: i64,
    pub l2: i64,
    pub b: u64,
    pub gamma: u64,
}

pub fn gamma_rows(orientation: Orientation) -> &'static [GammaRow] {
    static PRES: OnceLock<Vec<GammaRow>> = OnceLock::new();
    static REV: OnceLock<Vec<GammaRow>> = OnceLock::new();
    let (cell, text) = match orientation {
        Orientation::Preserving => (&PRES, GAMMA_PRESERVING),
        Orientation::Reversing => (&REV, GAMMA_REVERSING),
    };
    cell.get_or_init(|| {
        records(text)
            .map(|r| GammaRow { l1: num(&r[0]), l2: num(&r[1]), b: num(&r[2]), gamma: num(&r[3]) })
            .collect()
    })
}

/// `γ3 = (c0 + c1 γ2)/d3`, `γ4 = (e0 + e1 γ2 + e2 γ2²)/d4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma34Row {
    pub gamma1: i64,
    pub gamma3: [i64; 3],
    pub gamma4: [i64; 4],
    pub admissible: Vec<i64>,
}

impl Gamma34Row {
    /// Exact values, or `None` when a quotient is fractional.
    pub fn eval(&self, g2: i64) -> Option<(i64, i64)> {
        let [c0, c1, d3] = self.gamma3;
        let [e0, e1, e2, d4] = self.gamma4;
        let n3 = c0 + c1 * g2;
        let n4 = e0 + e1 * g2 + e2 * g2 * g2;
        (n3 % d3 == 0 && n4 % d4 == 0).then(|| (n3 / d3, n4 / d4))
    }
}

pub fn gamma34_rows() -> &'static [Gamma34Row] {
    static ROWS: OnceLock<Vec<Gamma34Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        records(GAMMA34)
            .map(|r| Gamma34Row {
                gamma1: num(&r[0]),
                gamma3: [num(&r[1]), num(&r[2]), num(&r[3])],
                gamma4: [num(&r[4]), num(&r[5]), num(&r[6]), num(&r[7])],
                admissible: r[8].split_whitespace().map(num).collect(),
            })
            .collect()
    })
}

/// One row of a constructive lower-bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerRow {
    pub b_from: LinearForm,
    pub b_to: Option<LinearForm>,
    pub bound: LinearForm,
    pub order: LinearForm,
    pub curve_families: Option<LinearForm>,
    pub periods: Vec<LinearForm>,
    pub profile: Vec<(LinearForm, LinearForm)>,
}

impl LowerRow {
    pub fn applies(&self, g: u64, b: u64) -> bool {
        let b = b as i64;
        self.b_from.eval(g, 0) <= b && self.b_to.is_none_or(|t| b <= t.eval(g, 0))
    }

    pub fn finite_order_type(&self, g: u64) -> FiniteOrderType {
        let n = self.order.eval(g, 0) as u64;
        let ps: Vec<u64> = self.periods.iter().map(|p| p.eval(g, 0) as u64).collect();
        match self.curve_families {
            None => FiniteOrderType::preserving(n, &ps),
            Some(c) => FiniteOrderType::reversing(n, c.eval(g, 0) as u64, &ps),
        }
    }

    /// Profile `x` on `Σ_{g,b}`, indices up to the largest listed one.
    pub fn profile_at(&self, g: u64, b: u64) -> Vec<u64> {
        let len = self.profile.iter().map(|(i, _)| i.eval(g, b)).max().unwrap_or(1) as usize;
        let mut x = vec![0u64; len];
        for (i, v) in &self.profile {
            x[i.eval(g, b) as usize - 1] += v.eval(g, b).max(0) as u64;
        }
        x
    }
}

pub fn lower_rows(orientation: Orientation) -> &'static [LowerRow] {
    static PRES: OnceLock<Vec<LowerRow>> = OnceLock::new();
    static REV: OnceLock<Vec<LowerRow>> = OnceLock::new();
    let (cell, text) = match orientation {
        Orientation::Preserving => (&PRES, LOWER_PRESERVING),
        Orientation::Reversing => (&REV, LOWER_REVERSING),
    };
    cell.get_or_init(|| {
        records(text)
            .map(|r| {
                let form = |s: &str| s.parse::<LinearForm>().unwrap_or_else(|e| panic!("{e}"));
                let ty: Vec<LinearForm> = r[3].split(';').map(form).collect();
                let (curve_families, periods) = match orientation {
                    Orientation::Preserving => (None, ty[1..].to_vec()),
                    Orientation::Reversing => (Some(ty[1]), ty[2..].to_vec()),
                };
                let profile = r[4]
                    .split_whitespace()
                    .map(|kv| {
                        let (k, v) = kv.split_once('=').expect("index=value");
                        (form(k), form(v))
                    })
                    .collect();
                LowerRow {
                    b_from: form(&r[0]),
                    b_to: (!r[1].is_empty()).then(|| form(&r[1])),
                    bound: form(&r[2]),
                    order: ty[0],
                    curve_families,
                    periods,
                    profile,
                }
            })
            .collect()
    })
}

/// Tabulated lower bound: the maximum over applicable rows. Reversing rows
/// are stated for even genus only.
pub fn table_lower_bound(g: u64, b: u64, orientation: Orientation) -> Option<i64> {
    if orientation == Orientation::Reversing && g % 2 == 1 {
        return None;
    }
    lower_rows(orientation).iter().filter(|r| r.applies(g, b)).map(|r| r.bound.eval(g, b)).max()
}

/// A disagreement between an embedded table and its recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub table: String,
    pub key: String,
    pub expected: String,
    pub got: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}]: expected {}, got {}", self.table, self.key, self.expected, self.got)
    }
}

fn mismatch(table: &str, key: String, expected: impl ToString, got: impl ToString) -> Mismatch {
    Mismatch { table: table.into(), key, expected: expected.to_string(), got: got.to_string() }
}

/// `b` values at which the constructions are claimed to reach the genus-2
/// table value.
pub fn genus2_construction_tight(b: u64, orientation: Orientation) -> bool {
    match orientation {
        Orientation::Preserving => b >= 5 && b != 6 && b != 8,
        Orientation::Reversing => (7..=GENUS2_LAST_ROW).contains(&b) && b != 10,
    }
}

/// Genus-2 table against constructions and upper bounds: `lower ≤ table ≤
/// upper` for every listed `b`, with `lower = table` where claimed.
pub fn check_genus2() -> Vec<Mismatch> {
    let mut out = Vec::new();
    for o in Orientation::BOTH {
        for row in genus2_rows() {
            let table = genus2_value(row.b, o);
            let served = m_low_genus(2, row.b, o).value();
            if served != Some(Period::Finite(table)) {
                out.push(mismatch("genus2", format!("{o} b={}", row.b), table, format!("{served:?}")));
            }
            let (lower, upper) = genus2_pipeline(row.b, o);
            let key = format!("{o} b={}", row.b);
            if lower.value > Period::Finite(table) {
                out.push(mismatch("genus2/lower", key.clone(), format!("<= {table}"), lower.value));
            }
            if upper.value < Period::Finite(table) {
                out.push(mismatch("genus2/upper", key.clone(), format!(">= {table}"), upper.value));
            }
            if genus2_construction_tight(row.b, o) && lower.value != Period::Finite(table) {
                out.push(mismatch("genus2/construction", key, table, lower.value));
            }
        }
    }
    out
}

/// Recomputes every `γ` entry from the class sequences.
pub fn check_gamma(orientation: Orientation) -> Vec<Mismatch> {
    let classes = admissible_l2_classes(orientation);
    let name = format!("gamma-{orientation}");
    let mut out = Vec::new();
    for row in gamma_rows(orientation) {
        let key = format!("({},{}) b={}", row.l1, row.l2, row.b);
        let Some(class) = classes.iter().find(|c| (c.l1, c.l2) == (row.l1, row.l2)) else {
            out.push(mismatch(&name, key, "admissible class", "missing"));
            continue;
        };
        let h = default_horizon(2, row.b);
        let got = gamma_upper(&class.l_values(h), row.b, h);
        if got != Period::Finite(row.gamma) {
            out.push(mismatch(&name, key, row.gamma, got));
        }
    }
    out
}

/// Closed forms against the Newton-identity solver on `γ2 ∈ [-10, 10]`, and
/// the admissible sets against the non-negativity filter.
pub fn check_gamma34() -> Vec<Mismatch> {
    let mut out = Vec::new();
    for row in gamma34_rows() {
        let g1 = BigInt::from(row.gamma1);
        let mut admissible = Vec::new();
        for g2 in -10..=10i64 {
            let key = format!("gamma1={} gamma2={g2}", row.gamma1);
            let solved = genus2_gamma34(&g1, &BigInt::from(g2)).ok();
            let formula = row.eval(g2).map(|(a, b)| (BigInt::from(a), BigInt::from(b)));
            if solved != formula {
                out.push(mismatch("gamma34", key, format!("{formula:?}"), format!("{solved:?}")));
            }
            if let Some((g3, g4)) = solved {
                if g2 >= 0 && g3 >= BigInt::from(0) && g4 >= BigInt::from(0) {
                    admissible.push(g2);
                }
            }
        }
        if admissible != row.admissible {
            let key = format!("gamma1={} admissible", row.gamma1);
            out.push(mismatch("gamma34", key, format!("{:?}", row.admissible), format!("{admissible:?}")));
        }
    }
    out
}

fn row_entry(row: &LowerRow, g: u64, orientation: Orientation) -> CatalogEntry {
    let ty = row.finite_order_type(g);
    catalog(g, orientation)
        .into_iter()
        .find(|e| e.ty == ty)
        .unwrap_or_else(|| CatalogEntry::new(ty, g, false, Family::Enumerated))
}

/// For genus `2..=g_max`: each row's construction attains the row's bound on
/// its whole range (where the bound is at least 1), and the search never
/// falls below the tabulated maximum.
pub fn check_lower(orientation: Orientation, g_max: u64) -> Vec<Mismatch> {
    let name = format!("lower-{orientation}");
    let mut out = Vec::new();
    for g in 2..=g_max {
        if orientation == Orientation::Reversing && g % 2 == 1 {
            continue;
        }
        let b_max = 6 * g + 14;
        for (i, row) in lower_rows(orientation).iter().enumerate() {
            let entry = row_entry(row, g, orientation);
            for b in 1..=b_max {
                if !row.applies(g, b) {
                    continue;
                }
                let bound = row.bound.eval(g, b);
                if bound < 1 {
                    continue;
                }
                let key = format!("g={g} b={b} row={}", i + 1);
                match construction_lower(&entry, b, &row.profile_at(g, b)) {
                    Ok(r) if r.value == Period::Finite(bound as u64) => {}
                    Ok(r) => out.push(mismatch(&name, key, bound, r.value)),
                    Err(e) => out.push(mismatch(&name, key, bound, e)),
                }
            }
        }
        let search = LowerBoundSearch::new(g, orientation);
        for b in 1..=b_max {
            if let Some(t) = table_lower_bound(g, b, orientation) {
                let got = search.best(b).value;
                if got < Period::Finite(t.max(1) as u64) {
                    out.push(mismatch(&name, format!("g={g} b={b} search"), format!(">= {t}"), got));
                }
            }
        }
    }
    out
}

/// Every embedded table against its recomputation.
pub fn verify_tables() -> Vec<Mismatch> {
    let mut out = check_gamma34();
    for o in Orientation::BOTH {
        out.extend(check_gamma(o));
        out.extend(check_lower(o, 10));
    }
    out.extend(check_genus2());
    out
}

/// A table cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Value(Period),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<Period> for Cell {
    fn from(v: Period) -> Self {
        Cell::Value(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn render(&self, format: Format) -> String {
        let text = |c: &Cell, inf: &str| match c {
            Cell::Int(v) => v.to_string(),
            Cell::Value(Period::Infinite) => inf.to_string(),
            Cell::Value(p) => p.to_string(),
            Cell::Text(s) => s.clone(),
        };
        let mut s = String::new();
        match format {
            Format::Csv => {
                writeln!(s, "{}", self.columns.join(",")).unwrap();
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| csv_field(&text(c, "inf"))).collect();
                    writeln!(s, "{}", cells.join(",")).unwrap();
                }
            }
            Format::Markdown => {
                writeln!(s, "| {} |", self.columns.join(" | ")).unwrap();
                writeln!(s, "|{}", "---|".repeat(self.columns.len())).unwrap();
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| text(c, "∞")).collect();
                    writeln!(s, "| {} |", cells.join(" | ")).unwrap();
                }
            }
            Format::Json => {
                s = serde_json::to_string_pretty(self).expect("tables serialize");
                s.push('\n');
            }
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `m(H^±_{2,b})` for `b = 1..=b_max`, with the independent bounds.
pub fn genus2_table(b_max: u64) -> Table {
    let mut t = Table::new(
        "genus2",
        &["b", "preserving", "preserving_lower", "preserving_upper", "reversing", "reversing_lower", "reversing_upper"],
    );
    for b in 1..=b_max {
        let mut row: Vec<Cell> = vec![b.into()];
        for o in Orientation::BOTH {
            let (lower, upper) = genus2_pipeline(b, o);
            row.push(m_low_genus(2, b, o).value().expect("genus 2 is exact").into());
            row.push(lower.value.into());
            row.push(upper.value.into());
        }
        t.rows.push(row);
    }
    t
}

/// `γ(l, b)` for each admissible genus-2 class and `b = 5..=b_max`.
pub fn gamma_table(orientation: Orientation, b_max: u64) -> Table {
    let mut t = Table::new(&format!("gamma-{orientation}"), &["l1", "l2", "representative", "b", "gamma"]);
    for class in admissible_l2_classes(orientation) {
        let rep = class.representative.as_ref().map_or("-".to_string(), |r| r.to_string());
        for b in 5..=b_max {
            let h = default_horizon(2, b);
            let v = gamma_upper(&class.l_values(h), b, h);
            t.rows.push(vec![class.l1.into(), class.l2.into(), rep.clone().into(), b.into(), v.into()]);
        }
    }
    t
}

fn poly(coefs: &[i64], den: i64) -> String {
    let mut s = String::new();
    for (k, &c) in coefs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "γ2".into(),
            _ => format!("γ2^{k}"),
        };
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let body = if mag == 1 && !var.is_empty() { var } else { format!("{mag}{var}") };
        s.push_str(sign);
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    if den == 1 {
        s
    } else {
        format!("({s})/{den}")
    }
}

/// `l(f^3)`, `l(f^4)` in terms of `l(f^2)` for genus-2 preserving maps.
pub fn gamma34_table() -> Table {
    let mut t = Table::new("gamma34", &["gamma1", "gamma3", "gamma4", "admissible_gamma2"]);
    for row in gamma34_rows() {
        let [c0, c1, d3] = row.gamma3;
        let [e0, e1, e2, d4] = row.gamma4;
        let adm: Vec<String> = row.admissible.iter().map(|v| v.to_string()).collect();
        t.rows.push(vec![
            row.gamma1.into(),
            poly(&[c0, c1], d3).into(),
            poly(&[e0, e1, e2], d4).into(),
            adm.join(" ").into(),
        ]);
    }
    t
}

/// Tabulated lower bounds next to the best construction found by search.
pub fn lower_table(genus: u64, orientation: Orientation, b_max: u64) -> Table {
    let mut t = Table::new(
        &format!("lower-{orientation}"),
        &["g", "b", "table_bound", "search_bound", "witness_type", "witness_profile"],
    );
    let search = LowerBoundSearch::new(genus, orientation);
    for b in 1..=b_max {
        let tb: Cell = table_lower_bound(genus, b, orientation).map_or(Cell::Text("-".into()), Cell::Int);
        let best = search.best(b);
        let w = best.provenance.iter().find_map(|c| c.witness.clone());
        let (ty, prof) = w.map_or(("-".into(), "-".into()), |w| {
            let p: Vec<String> = w.profile.iter().map(|v| v.to_string()).collect();
            (w.ty, p.join(" "))
        });
        t.rows.push(vec![genus.into(), b.into(), tb, best.value.into(), ty.into(), prof.into()]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        let f: LinearForm = "b-2g-3".parse().unwrap();
        assert_eq!(f.eval(2, 17), 10);
        assert_eq!("4g+2".parse::<LinearForm>().unwrap().eval(3, 0), 14);
        assert_eq!("7".parse::<LinearForm>().unwrap().eval(0, 0), 7);
        assert_eq!("g".parse::<LinearForm>().unwrap().eval(5, 0), 5);
        assert!("2h".parse::<LinearForm>().is_err());
    }

    #[test]
    fn fixtures_parse() {
        assert_eq!(genus2_rows().len(), 22);
        assert_eq!(genus2_value(40, Orientation::Reversing), 12);
        assert_eq!(gamma34_rows().len(), 4);
        assert_eq!(lower_rows(Orientation::Preserving).len(), 9);
        assert_eq!(lower_rows(Orientation::Reversing).len(), 8);
        let row = &lower_rows(Orientation::Preserving)[7];
        assert_eq!(row.profile_at(2, 17), vec![10, 2, 0, 0, 5]);
    }

    #[test]
    fn table_maximum_over_rows() {
        assert_eq!(table_lower_bound(2, 13, Orientation::Preserving), Some(7));
        assert_eq!(table_lower_bound(2, 18, Orientation::Preserving), Some(10));
        assert_eq!(table_lower_bound(2, 5, Orientation::Reversing), Some(3));
        assert_eq!(table_lower_bound(3, 20, Orientation::Reversing), None);
    }

    #[test]
    fn gamma34_matches() {
        assert_eq!(check_gamma34(), vec![]);
    }

    #[test]
    fn rendering() {
        let mut t = Table::new("x", &["a", "b"]);
        t.rows.push(vec![Cell::Int(1), Cell::Value(Period::Infinite)]);
        assert_eq!(t.render(Format::Csv), "a,b\n1,inf\n");
        assert!(t.render(Format::Markdown).contains("∞"));
        assert!(t.render(Format::Json).contains("\"kind\": \"infinite\""));
    }
}
