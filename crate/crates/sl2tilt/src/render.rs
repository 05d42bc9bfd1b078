//! Table rendering and golden-fixture comparison: tilt runs as text, CSV or
//! JSON tables in the shorthand cell grammar, and cell-by-cell comparison
//! against transcribed reference tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basep::GroupParams;
use crate::error::{Error, Result};
use crate::symbols::{self, StableSymbol};
use crate::tilt::{BlockFilter, Event, TiltRun};

/// One table cell. Step rows use all four kinds; state rows only `Symbol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// Nothing happened in this column ("-").
    Blank,
    /// Omega^-1 mark ("shift").
    Shift,
    /// Extension candidate skipped because its completion is Steinberg ("0").
    Zero,
    /// A symbol: the state entry, or the module merged in by an extension.
    Symbol(StableSymbol),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    State,
    Step,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub kind: RowKind,
    pub m: i64,
    pub cells: Vec<Cell>,
}

/// A rendered tilt table: params, column indices and alternating
/// state/step rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub p: u32,
    pub n: u32,
    pub block: BlockFilter,
    pub cols: Vec<i64>,
    pub rows: Vec<TableRow>,
}

/// JSON document form of a `Table`; cells are strings in the cell grammar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableDoc {
    pub p: u32,
    pub n: u32,
    pub block: String,
    pub cols: Vec<i64>,
    pub rows: Vec<RowDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowDoc {
    pub kind: RowKind,
    pub m: i64,
    pub cells: Vec<String>,
}

/// Parse a shorthand cell: "-", "shift", "0", "M_a", "_u M_a", "^e_u M_a".
pub fn parse_cell(text: &str, params: &GroupParams) -> Result<Cell> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "-" | "" => return Ok(Cell::Blank),
        "shift" => return Ok(Cell::Shift),
        "0" => return Ok(Cell::Zero),
        _ => {}
    }
    Ok(Cell::Symbol(parse_symbol(&t, params)?))
}

fn parse_symbol(t: &str, params: &GroupParams) -> Result<StableSymbol> {
    let bad = || Error::Fixture(format!("unparseable cell {t:?}"));
    let mut rest = t;
    let mut omega = 0i64;
    if let Some(r) = rest.strip_prefix('^') {
        let cut = r.find('_').ok_or_else(bad)?;
        omega = r[..cut].parse().map_err(|_| bad())?;
        rest = &r[cut..];
    }
    let mut u = 0i64;
    if let Some(r) = rest.strip_prefix('_') {
        let cut = r.find('M').ok_or_else(bad)?;
        u = r[..cut].parse().map_err(|_| bad())?;
        rest = &r[cut..];
    }
    let idx = rest
        .strip_prefix("M_")
        .and_then(|r| r.parse().ok())
        .ok_or_else(bad)?;
    StableSymbol::new(u, omega, idx, params)
}

fn cell_text(cell: &Cell, params: &GroupParams) -> String {
    match cell {
        Cell::Blank => "-".into(),
        Cell::Shift => "shift".into(),
        Cell::Zero => "0".into(),
        Cell::Symbol(s) => symbols::shorthand(s, params),
    }
}

fn block_name(block: BlockFilter) -> &'static str {
    match block {
        BlockFilter::All => "all",
        BlockFilter::Even => "even",
        BlockFilter::Odd => "odd",
    }
}

fn block_from_name(name: &str) -> Result<BlockFilter> {
    match name {
        "all" => Ok(BlockFilter::All),
        "even" => Ok(BlockFilter::Even),
        "odd" => Ok(BlockFilter::Odd),
        other => Err(Error::Fixture(format!("unknown block {other:?}"))),
    }
}

impl FromStr for BlockFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        block_from_name(s)
    }
}

impl Table {
    /// Build the table of a finished run: one state row per algebra and one
    /// step row per tilt, with extension cells showing the merged symbol.
    pub fn from_run(run: &TiltRun, params: &GroupParams, block: BlockFilter) -> Result<Self> {
        let first = run
            .states
            .first()
            .ok_or_else(|| Error::InvalidParams("empty run".into()))?;
        let cols: Vec<i64> = first.assignment.keys().copied().collect();
        let mut rows = Vec::new();
        let state_row = |m: i64| -> Result<TableRow> {
            let state = &run.states[m as usize];
            let cells = cols
                .iter()
                .map(|a| Cell::Symbol(state.assignment[a]))
                .collect();
            Ok(TableRow {
                kind: RowKind::State,
                m,
                cells,
            })
        };
        rows.push(state_row(0)?);
        for m in 1..run.states.len() as i64 {
            let mut cells = vec![Cell::Blank; cols.len()];
            for &(em, a, e) in &run.log.0 {
                if em != m {
                    continue;
                }
                let slot = cols
                    .iter()
                    .position(|&c| c == a)
                    .ok_or_else(|| Error::InvalidParams(format!("index {a} not a column")))?;
                cells[slot] = match e {
                    Event::Shifted => Cell::Shift,
                    Event::SkippedZero => Cell::Zero,
                    Event::Unchanged => Cell::Blank,
                    Event::ExtendedBy { partner, .. } => {
                        Cell::Symbol(run.states[m as usize - 1].assignment[&partner])
                    }
                };
            }
            rows.push(TableRow {
                kind: RowKind::Step,
                m,
                cells,
            });
            rows.push(state_row(m)?);
        }
        Ok(Table {
            p: params.p,
            n: params.n,
            block,
            cols,
            rows,
        })
    }

    /// Parse the text form (which is also the fixture format).
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = None;
        let mut n = None;
        let mut block = None;
        let mut cols: Vec<i64> = Vec::new();
        let mut raw_rows: Vec<(RowKind, i64, Vec<String>)> = Vec::new();
        for line in src.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| Error::Fixture(format!("missing ':' in line {line:?}")))?;
            let head = head.trim();
            let body = body.trim();
            match head {
                "params" => {
                    for kv in body.split_whitespace() {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| Error::Fixture(format!("bad param {kv:?}")))?;
                        match k {
                            "p" => p = Some(v.parse().map_err(|_| Error::Fixture(kv.into()))?),
                            "n" => n = Some(v.parse().map_err(|_| Error::Fixture(kv.into()))?),
                            "block" => block = Some(block_from_name(v)?),
                            _ => return Err(Error::Fixture(format!("unknown param {k:?}"))),
                        }
                    }
                }
                "cols" => {
                    cols = body
                        .split_whitespace()
                        .map(|t| t.parse().map_err(|_| Error::Fixture(t.into())))
                        .collect::<Result<_>>()?;
                }
                _ => {
                    let (kind, m) = match head.split_once(' ') {
                        Some(("state", m)) => (RowKind::State, m),
                        Some(("step", m)) => (RowKind::Step, m),
                        _ => return Err(Error::Fixture(format!("unknown row {head:?}"))),
                    };
                    let m = m.trim().parse().map_err(|_| Error::Fixture(head.into()))?;
                    let cells = body.split('|').map(|c| c.trim().to_string()).collect();
                    raw_rows.push((kind, m, cells));
                }
            }
        }
        let p = p.ok_or_else(|| Error::Fixture("missing p".into()))?;
        let n = n.ok_or_else(|| Error::Fixture("missing n".into()))?;
        let block = block.ok_or_else(|| Error::Fixture("missing block".into()))?;
        let params = GroupParams::new(p, n)?;
        let mut rows = Vec::new();
        for (kind, m, raw) in raw_rows {
            if raw.len() != cols.len() {
                return Err(Error::Fixture(format!(
                    "row m = {m} has {} cells, expected {}",
                    raw.len(),
                    cols.len()
                )));
            }
            let cells = raw
                .iter()
                .map(|c| parse_cell(c, &params))
                .collect::<Result<_>>()?;
            rows.push(TableRow { kind, m, cells });
        }
        Ok(Table {
            p,
            n,
            block,
            cols,
            rows,
        })
    }

    pub fn params(&self) -> Result<GroupParams> {
        GroupParams::new(self.p, self.n)
    }

    /// Text form in the fixture grammar; parses back to an equal table.
    pub fn to_text(&self) -> String {
        let params = self.params().expect("valid table params");
        let mut out = String::new();
        let _ = writeln!(
            out,
            "params: p={} n={} block={}",
            self.p,
            self.n,
            block_name(self.block)
        );
        let _ = writeln!(
            out,
            "cols: {}",
            self.cols
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        for row in &self.rows {
            let label = match row.kind {
                RowKind::State => "state",
                RowKind::Step => "step",
            };
            let cells: Vec<String> = row.cells.iter().map(|c| cell_text(c, &params)).collect();
            let _ = writeln!(out, "{label} {}: {}", row.m, cells.join(" | "));
        }
        out
    }

    /// RFC 4180 CSV: header row, then one record per table row.
    pub fn to_csv(&self) -> String {
        let params = self.params().expect("valid table params");
        let mut out = String::new();
        let mut header = vec!["row".to_string(), "m".to_string()];
        header.extend(self.cols.iter().map(|c| format!("S_{c}")));
        let _ = writeln!(out, "{}", csv_record(&header));
        for row in &self.rows {
            let mut rec = vec![
                match row.kind {
                    RowKind::State => "state".to_string(),
                    RowKind::Step => "step".to_string(),
                },
                row.m.to_string(),
            ];
            rec.extend(row.cells.iter().map(|c| cell_text(c, &params)));
            let _ = writeln!(out, "{}", csv_record(&rec));
        }
        out
    }

    pub fn to_doc(&self) -> TableDoc {
        let params = self.params().expect("valid table params");
        TableDoc {
            p: self.p,
            n: self.n,
            block: block_name(self.block).to_string(),
            cols: self.cols.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| RowDoc {
                    kind: r.kind,
                    m: r.m,
                    cells: r.cells.iter().map(|c| cell_text(c, &params)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &TableDoc) -> Result<Self> {
        let params = GroupParams::new(doc.p, doc.n)?;
        let mut rows = Vec::new();
        for r in &doc.rows {
            let cells = r
                .cells
                .iter()
                .map(|c| parse_cell(c, &params))
                .collect::<Result<_>>()?;
            rows.push(TableRow {
                kind: r.kind,
                m: r.m,
                cells,
            });
        }
        Ok(Table {
            p: doc.p,
            n: doc.n,
            block: block_from_name(&doc.block)?,
            cols: doc.cols.clone(),
            rows,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("table serializes")
    }
}

fn csv_field(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

fn csv_record(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// Cell-by-cell comparison after canonicalization. Symbol cells compare by
/// `symbols_equal`; marker cells must match exactly.
pub fn compare_tables(expected: &Table, actual: &Table) -> Result<()> {
    if (expected.p, expected.n, expected.block) != (actual.p, actual.n, actual.block) {
        return Err(Error::Fixture(format!(
            "parameter mismatch: expected p={} n={} block={}, got p={} n={} block={}",
            expected.p,
            expected.n,
            block_name(expected.block),
            actual.p,
            actual.n,
            block_name(actual.block)
        )));
    }
    if expected.cols != actual.cols {
        return Err(Error::Fixture(format!(
            "column mismatch: expected {:?}, got {:?}",
            expected.cols, actual.cols
        )));
    }
    if expected.rows.len() != actual.rows.len() {
        return Err(Error::Fixture(format!(
            "row count mismatch: expected {}, got {}",
            expected.rows.len(),
            actual.rows.len()
        )));
    }
    let params = expected.params()?;
    for (er, ar) in expected.rows.iter().zip(&actual.rows) {
        if (er.kind, er.m) != (ar.kind, ar.m) {
            return Err(Error::Fixture(format!(
                "row mismatch: expected {:?} {}, got {:?} {}",
                er.kind, er.m, ar.kind, ar.m
            )));
        }
        for ((ec, ac), col) in er.cells.iter().zip(&ar.cells).zip(&expected.cols) {
            let same = match (ec, ac) {
                (Cell::Symbol(a), Cell::Symbol(b)) => symbols::symbols_equal(*a, *b, &params),
                _ => ec == ac,
            };
            if !same {
                return Err(Error::Fixture(format!(
                    "cell mismatch at {:?} row m = {}, column S_{col}: expected {}, got {}",
                    er.kind,
                    er.m,
                    cell_text(ec, &params),
                    cell_text(ac, &params)
                )));
            }
        }
    }
    Ok(())
}

/// The transcribed reference tables, keyed by name.
pub const FIXTURE_NAMES: [&str; 5] = [
    "table_1a",
    "table_2_even",
    "table_2_odd",
    "table_3",
    "sl2_4",
];

/// Fixture source: the embedded copy, or `$SL2TILT_FIXTURES/<name>.txt` when
/// the environment variable points at a directory.
pub fn fixture_source(name: &str) -> Result<String> {
    if let Ok(dir) = std::env::var("SL2TILT_FIXTURES") {
        let path = std::path::Path::new(&dir).join(format!("{name}.txt"));
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Fixture(format!("cannot read {}: {e}", path.display())));
    }
    match name {
        "table_1a" => Ok(include_str!("../fixtures/table_1a.txt").to_string()),
        "table_2_even" => Ok(include_str!("../fixtures/table_2_even.txt").to_string()),
        "table_2_odd" => Ok(include_str!("../fixtures/table_2_odd.txt").to_string()),
        "table_3" => Ok(include_str!("../fixtures/table_3.txt").to_string()),
        "sl2_4" => Ok(include_str!("../fixtures/sl2_4.txt").to_string()),
        other => Err(Error::Fixture(format!("unknown fixture {other:?}"))),
    }
}

/// Run the engine at a fixture's parameters and compare against it.
pub fn check_fixture(name: &str) -> Result<Table> {
    let expected = Table::parse(&fixture_source(name)?)?;
    let params = expected.params()?;
    let run = crate::tilt::run(&params, expected.block, false)?;
    let actual = Table::from_run(&run, &params, expected.block)?;
    compare_tables(&expected, &actual)?;
    Ok(actual)
}
