//! Reference tables shipped with the crate and cell-by-cell comparison of
//! freshly computed values against them.
//!
//! Golden files live in `golden/` and are embedded at compile time. Lines
//! are `|`-separated; `#` starts a comment line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::census::{candidate_sizes, delta_census};
use crate::completion::completability_census;
use crate::error::{Error, Result};
use crate::isotopism::Isotopism;
use crate::search::SearchOptions;
use crate::structure::{count_autotopism_structures, cs_nm_table, IsotopismStructure};

pub const TABLE1: &str = include_str!("../golden/table1.txt");
pub const TABLE2: &str = include_str!("../golden/table2.txt");
pub const TABLE3: &str = include_str!("../golden/table3.txt");
pub const TABLE5: &str = include_str!("../golden/table5.txt");
pub const ERRATA: &str = include_str!("../golden/errata.txt");

/// A reference cell known to be misprinted, with the corrected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub table: u32,
    pub row: String,
    pub column: String,
    pub printed: String,
    pub corrected: String,
    pub reason: String,
}

pub fn parse_errata(text: &str) -> Result<Vec<Erratum>> {
    data_lines(text)
        .map(|(line, f)| {
            if f.len() != 6 {
                return Err(Error::Parse(format!("errata line {line}: expected 6 fields")));
            }
            let structure: IsotopismStructure = f[1].parse()?;
            Ok(Erratum {
                table: f[0].parse().map_err(|_| Error::Parse(format!("errata line {line}: bad table")))?,
                row: format!("({structure})"),
                column: f[2].to_string(),
                printed: f[3].to_string(),
                corrected: f[4].to_string(),
                reason: f[5].to_string(),
            })
        })
        .collect()
}

/// The shipped errata list.
pub fn errata() -> Vec<Erratum> {
    parse_errata(ERRATA).expect("shipped errata parse")
}

/// One row of the structure-count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureRow {
    pub order: usize,
    /// Latin square autotopism structures; quoted for comparison only.
    pub latin_structures: BigUint,
    /// `|CS_{n,m}|` for `m = 1..=n/2`.
    pub cs_nm: Vec<BigUint>,
    pub structures: BigUint,
    pub classes: BigUint,
}

/// One row of a per-size table: non-blank cells only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRow {
    pub order: usize,
    pub structure: IsotopismStructure,
    pub per_size: BTreeMap<usize, BigUint>,
    pub total: BigUint,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('|').map(str::trim).collect()))
}

fn big(field: &str, line: usize) -> Result<BigUint> {
    field.parse().map_err(|_| Error::Parse(format!("golden line {line}: bad number {field:?}")))
}

pub fn parse_structure_table(text: &str) -> Result<Vec<StructureRow>> {
    data_lines(text)
        .map(|(line, f)| {
            if f.len() != 5 {
                return Err(Error::Parse(format!("golden line {line}: expected 5 fields")));
            }
            let cs_nm =
                f[2].split(',').filter(|x| !x.is_empty()).map(|x| big(x.trim(), line)).collect::<Result<_>>()?;
            Ok(StructureRow {
                order: f[0].parse().map_err(|_| Error::Parse(format!("golden line {line}: bad order")))?,
                latin_structures: big(f[1], line)?,
                cs_nm,
                structures: big(f[3], line)?,
                classes: big(f[4], line)?,
            })
        })
        .collect()
}

pub fn parse_size_table(text: &str) -> Result<Vec<SizeRow>> {
    data_lines(text)
        .map(|(line, f)| {
            if f.len() != 4 {
                return Err(Error::Parse(format!("golden line {line}: expected 4 fields")));
            }
            let structure: IsotopismStructure = f[1].parse()?;
            let mut per_size = BTreeMap::new();
            for cell in f[2].split_whitespace() {
                let (s, v) = cell
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("golden line {line}: bad cell {cell:?}")))?;
                let s: usize = s.parse().map_err(|_| Error::Parse(format!("golden line {line}: bad size {s:?}")))?;
                per_size.insert(s, big(v, line)?);
            }
            Ok(SizeRow {
                order: f[0].parse().map_err(|_| Error::Parse(format!("golden line {line}: bad order")))?,
                structure,
                per_size,
                total: big(f[3], line)?,
            })
        })
        .collect()
}

/// Which reference table to reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    /// Structure counts for `n ≤ 17`.
    Structures,
    /// `Δ_s(z)` for `n ≤ 3`.
    SmallCensus,
    /// `Δ_s(z)` for `n = 4`.
    Order4Census,
    /// `c_{z,s}` for the listed rows.
    Completability,
}

impl Table {
    pub fn from_number(k: u32) -> Result<Self> {
        match k {
            1 => Ok(Table::Structures),
            2 => Ok(Table::SmallCensus),
            3 => Ok(Table::Order4Census),
            5 => Ok(Table::Completability),
            _ => Err(Error::InvalidArgument(format!("no reference table {k}; choose 1, 2, 3 or 5"))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            Table::Structures => 1,
            Table::SmallCensus => 2,
            Table::Order4Census => 3,
            Table::Completability => 5,
        }
    }

    pub fn size_rows(self) -> Result<Vec<SizeRow>> {
        match self {
            Table::Structures => Err(Error::InvalidArgument("table 1 has no per-size rows".into())),
            Table::SmallCensus => parse_size_table(TABLE2),
            Table::Order4Census => parse_size_table(TABLE3),
            Table::Completability => parse_size_table(TABLE5),
        }
    }
}

/// One disagreeing cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDiff {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub found: String,
    /// Set when the reference cell is a listed misprint and the computed
    /// value equals its correction.
    pub erratum: Option<String>,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: expected {}, found {}", self.row, self.column, self.expected, self.found)?;
        if let Some(reason) = &self.erratum {
            write!(f, " (listed erratum: {reason})")?;
        }
        Ok(())
    }
}

/// Outcome of comparing a computed table with its reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub table: u32,
    pub rows: usize,
    pub cells: usize,
    pub mismatches: Vec<CellDiff>,
}

impl TableCheck {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// True when every differing cell is a listed erratum.
    pub fn is_match_except_errata(&self) -> bool {
        self.mismatches.iter().all(|d| d.erratum.is_some())
    }

    pub fn errata_count(&self) -> usize {
        self.mismatches.iter().filter(|d| d.erratum.is_some()).count()
    }

    fn absorb(&mut self, other: TableCheck) {
        self.rows += other.rows;
        self.cells += other.cells;
        self.mismatches.extend(other.mismatches);
    }
}

impl fmt::Display for TableCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_match() {
            write!(f, "table {}: all {} cells in {} rows match", self.table, self.cells, self.rows)
        } else {
            writeln!(
                f,
                "table {}: {} of {} cells differ in {} rows ({} of them listed errata)",
                self.table,
                self.mismatches.len(),
                self.cells,
                self.rows,
                self.errata_count()
            )?;
            for d in &self.mismatches {
                writeln!(f, "  {d}")?;
            }
            Ok(())
        }
    }
}

struct Checker {
    check: TableCheck,
    row: String,
    errata: Vec<Erratum>,
}

impl Checker {
    fn new(table: u32) -> Self {
        Checker {
            check: TableCheck { table, rows: 0, cells: 0, mismatches: Vec::new() },
            row: String::new(),
            errata: errata().into_iter().filter(|e| e.table == table).collect(),
        }
    }

    fn row(&mut self, name: String) {
        self.row = name;
        self.check.rows += 1;
    }

    fn cell<T: PartialEq + fmt::Display>(&mut self, column: impl Into<String>, expected: &T, found: &T) {
        self.check.cells += 1;
        if expected != found {
            let column = column.into();
            let (expected, found) = (expected.to_string(), found.to_string());
            let erratum = self
                .errata
                .iter()
                .find(|e| e.row == self.row && e.column == column && e.printed == expected && e.corrected == found)
                .map(|e| e.reason.clone());
            self.check.mismatches.push(CellDiff { row: self.row.clone(), column, expected, found, erratum });
        }
    }
}

/// Recomputes the structure counts; the external Latin-structure column is
/// skipped.
pub fn check_structure_table(max_order: usize) -> Result<TableCheck> {
    let mut ck = Checker::new(1);
    for row in parse_structure_table(TABLE1)?.into_iter().filter(|r| r.order <= max_order) {
        let n = row.order;
        ck.row(format!("n={n}"));
        let table = cs_nm_table(n);
        for (m, expected) in row.cs_nm.iter().enumerate() {
            ck.cell(format!("CS_{{{n},{}}}", m + 1), expected, &table[n][m + 1]);
        }
        let count = count_autotopism_structures(n)?;
        ck.cell("structures", &row.structures, &count.structures);
        ck.cell("classes", &row.classes, &count.classes);
    }
    Ok(ck.check)
}

/// Compares per-size counts and blank cells of one row. A blank reference
/// cell must be a size outside the candidate set with a computed count of
/// zero; a filled one must be a candidate size.
fn compare_sizes(ck: &mut Checker, row: &SizeRow, per_size: &BTreeMap<usize, BigUint>, total: &BigUint) -> Result<()> {
    ck.row(format!("({})", row.structure));
    let sizes: BTreeSet<usize> = candidate_sizes(&row.structure)?;
    let n = row.order;
    for s in 1..=n * n {
        let found = per_size.get(&s).cloned().unwrap_or_default();
        match row.per_size.get(&s) {
            Some(expected) => {
                ck.cell(format!("s={s}"), expected, &found);
                ck.cell(format!("s={s} candidate"), &true, &sizes.contains(&s));
            }
            None => {
                ck.cell(format!("s={s} blank"), &BigUint::default(), &found);
                ck.cell(format!("s={s} candidate"), &false, &sizes.contains(&s));
            }
        }
    }
    ck.cell("total", &row.total, total);
    Ok(())
}

/// Recomputes one per-size row of `table`.
pub fn check_size_row(table: Table, row: &SizeRow, opts: &SearchOptions) -> Result<TableCheck> {
    let t = Isotopism::canonical(&row.structure);
    let mut ck = Checker::new(table.number());
    match table {
        Table::Structures => return Err(Error::InvalidArgument("table 1 has no per-size rows".into())),
        Table::SmallCensus | Table::Order4Census => {
            let r = delta_census(&t, opts)?;
            compare_sizes(&mut ck, row, &r.per_size, &r.total)?;
        }
        Table::Completability => {
            let r = completability_census(&t, opts)?;
            compare_sizes(&mut ck, row, &r.per_size, &r.total)?;
        }
    }
    Ok(ck.check)
}

/// Recomputes every row of `table` and diffs it against the reference.
pub fn reproduce(table: Table, opts: &SearchOptions) -> Result<TableCheck> {
    if table == Table::Structures {
        return check_structure_table(17);
    }
    let mut all = Checker::new(table.number()).check;
    for row in table.size_rows()? {
        all.absorb(check_size_row(table, &row, opts)?);
    }
    Ok(all)
}
