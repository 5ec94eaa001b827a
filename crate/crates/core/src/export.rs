//! Text exports of the symmetry-constrained assignment model: an LP file for
//! integer programming solvers and a polynomial system for Gröbner basis
//! tools, plus decoding of solver assignments back into squares.
//!
//! Variables are 1-based: `x_r_c_s` in LP files and `x[r][c][s]` in the
//! polynomial system.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::isotopism::{Isotopism, Triple};
use crate::orbits::triple_orbits;
use crate::pls::PartialLatinSquare;

/// The assignment model of one isotopism with optional size and weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedModel {
    pub isotopism: Isotopism,
    pub target_size: Option<usize>,
    /// Objective weights; absent triples weigh zero.
    pub weights: BTreeMap<Triple, f64>,
}

impl WeightedModel {
    pub fn new(isotopism: Isotopism) -> Self {
        WeightedModel { isotopism, target_size: None, weights: BTreeMap::new() }
    }

    pub fn with_size(mut self, m: usize) -> Result<Self> {
        let n = self.order();
        if m == 0 || m > n * n {
            return Err(Error::InvalidArgument(format!("size {m} outside 1..={}", n * n)));
        }
        self.target_size = Some(m);
        Ok(self)
    }

    pub fn with_weight(mut self, t: Triple, w: f64) -> Result<Self> {
        let n = self.order();
        if t.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument(format!("weight index outside order {n}")));
        }
        self.weights.insert(t, w);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.isotopism.degree()
    }

    fn weight(&self, t: Triple) -> f64 {
        self.weights.get(&t).copied().unwrap_or(0.0)
    }
}

/// Formatting switches shared by both exports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExportOptions {
    /// Emit `x_rcs = x_Θ(rcs)` for every triple instead of one chain per orbit.
    pub raw_symmetry: bool,
    /// Leave out symmetry generators that are identically zero.
    pub skip_trivial: bool,
}

/// Exported text with its row counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelText {
    pub text: String,
    /// Constraint rows (LP) or generators (ideal).
    pub rows: usize,
    pub variables: usize,
}

fn triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |r| (0..n).flat_map(move |c| (0..n).map(move |s| [r, c, s])))
}

fn lp_var([r, c, s]: Triple) -> String {
    format!("x_{}_{}_{}", r + 1, c + 1, s + 1)
}

fn ideal_var([r, c, s]: Triple) -> String {
    format!("x[{}][{}][{}]", r + 1, c + 1, s + 1)
}

/// The three `≤ 1` families: fixed (c, s) summing over r, fixed (r, s)
/// summing over c, fixed (r, c) summing over s.
fn line_families(n: usize) -> Vec<(String, Vec<Triple>)> {
    let mut out = Vec::with_capacity(3 * n * n);
    for a in 0..n {
        for b in 0..n {
            out.push((format!("cs_{}_{}", a + 1, b + 1), (0..n).map(|r| [r, a, b]).collect()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push((format!("rs_{}_{}", a + 1, b + 1), (0..n).map(|c| [a, c, b]).collect()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push((format!("rc_{}_{}", a + 1, b + 1), (0..n).map(|s| [a, b, s]).collect()));
        }
    }
    out
}

/// Pairs `(x, y)` with `x = y` imposed.
fn symmetry_pairs(t: &Isotopism, raw: bool) -> Vec<(Triple, Triple)> {
    if raw {
        return triples(t.degree()).map(|x| (x, t.apply(x))).collect();
    }
    triple_orbits(t).iter().flat_map(|o| o.triples.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()).collect()
}

fn format_coef(w: f64) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w.abs() as i64)
    } else {
        format!("{}", w.abs())
    }
}

/// LP-format integer program: the three line families, the symmetry
/// equalities and, when set, the size equation.
pub fn export_ip(model: &WeightedModel, opts: ExportOptions) -> ModelText {
    let n = model.order();
    let mut text = String::new();
    let mut rows = 0;
    let _ = writeln!(text, "\\ n = {n}, isotopism {}", model.isotopism);
    text.push_str("Minimize\n obj:");
    for (k, x) in triples(n).enumerate() {
        let w = model.weight(x);
        let sign = if w < 0.0 {
            "-"
        } else if k == 0 {
            ""
        } else {
            "+"
        };
        let sep = if sign.is_empty() { "" } else { " " };
        let _ = write!(text, " {sign}{sep}{} {}", format_coef(w), lp_var(x));
    }
    text.push_str("\nSubject To\n");
    for (name, vars) in line_families(n) {
        let lhs: Vec<String> = vars.iter().map(|&x| lp_var(x)).collect();
        let _ = writeln!(text, " {name}: {} <= 1", lhs.join(" + "));
        rows += 1;
    }
    for (k, (x, y)) in symmetry_pairs(&model.isotopism, opts.raw_symmetry).into_iter().enumerate() {
        let _ = writeln!(text, " sym_{}: {} - {} = 0", k + 1, lp_var(x), lp_var(y));
        rows += 1;
    }
    if let Some(m) = model.target_size {
        let lhs: Vec<String> = triples(n).map(lp_var).collect();
        let _ = writeln!(text, " size: {} = {m}", lhs.join(" + "));
        rows += 1;
    }
    text.push_str("Binaries\n");
    for x in triples(n) {
        let _ = writeln!(text, " {}", lp_var(x));
    }
    text.push_str("End\n");
    ModelText { text, rows, variables: n * n * n }
}

/// Polynomial generators, one per line, of the ideal whose zeros are the
/// invariant squares of the target size.
///
/// Families in order: the three line quadratics, the idempotents, the
/// symmetry differences (all `n³`, trivial ones as `0`), and the size
/// equation; `2n³ + 3n² + 1` lines unless trivial ones are skipped.
pub fn export_ideal(model: &WeightedModel, opts: ExportOptions) -> Result<ModelText> {
    let m = model.target_size.ok_or_else(|| Error::InvalidArgument("the ideal export needs a target size".into()))?;
    let n = model.order();
    let mut lines = Vec::new();
    for (_, vars) in line_families(n) {
        let sum: Vec<String> = vars.iter().map(|&x| ideal_var(x)).collect();
        lines.push(format!("({})*(1 - {})", sum.join(" + "), sum.join(" - ")));
    }
    for x in triples(n) {
        let v = ideal_var(x);
        lines.push(format!("{v}*(1 - {v})"));
    }
    for x in triples(n) {
        let y = model.isotopism.apply(x);
        if x == y {
            if !opts.skip_trivial {
                lines.push("0".to_string());
            }
        } else {
            lines.push(format!("{} - {}", ideal_var(x), ideal_var(y)));
        }
    }
    let all: Vec<String> = triples(n).map(ideal_var).collect();
    lines.push(format!("{m} - {}", all.join(" - ")));
    let rows = lines.len();
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(ModelText { text, rows, variables: n * n * n })
}

/// `φ_n(P)`: the 0/1 vector over triples in lexicographic order.
pub fn encode(p: &PartialLatinSquare) -> Vec<u8> {
    triples(p.order()).map(|x| p.contains(x) as u8).collect()
}

/// `φ_n(P)` keyed by LP variable name.
pub fn encode_assignment(p: &PartialLatinSquare) -> BTreeMap<String, u8> {
    triples(p.order()).map(|x| (lp_var(x), p.contains(x) as u8)).collect()
}

/// Reads `name value` lines. Blank lines and lines starting with `#` or `\`
/// are skipped; `name = value` is accepted, as are near-integral reals.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, u8>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('\\') {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == '=').filter(|f| !f.is_empty()).collect();
        let [name, value] = fields[..] else {
            return Err(Error::Parse(format!("line {}: expected `name value`", lineno + 1)));
        };
        let v: f64 = value.parse().map_err(|_| Error::Parse(format!("line {}: bad value {value:?}", lineno + 1)))?;
        let bit = if (v - 1.0).abs() < 1e-6 {
            1
        } else if v.abs() < 1e-6 {
            0
        } else {
            return Err(Error::Parse(format!("line {}: {name} = {value} is not 0 or 1", lineno + 1)));
        };
        out.insert(normalize_name(name), bit);
    }
    Ok(out)
}

/// Maps `x[r][c][s]` to `x_r_c_s`; other names pass through.
fn normalize_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix("x[") {
        if let Some(inner) = rest.strip_suffix(']') {
            return format!("x_{}", inner.replace("][", "_"));
        }
    }
    name.to_string()
}

/// Inverse of `φ_n`: the square whose triples are the variables set to 1.
///
/// Every one of the `n³` variables must be present. An all-zero assignment
/// is an error unless `allow_empty` is set.
pub fn decode_solution(n: usize, assignment: &BTreeMap<String, u8>, allow_empty: bool) -> Result<PartialLatinSquare> {
    let mut p = PartialLatinSquare::empty(n);
    for x in triples(n) {
        let name = lp_var(x);
        match assignment.get(&name) {
            None => return Err(Error::InvalidArgument(format!("assignment lacks {name}"))),
            Some(0) => {}
            Some(1) => p.insert(x)?,
            Some(v) => return Err(Error::InvalidArgument(format!("{name} = {v} is not 0 or 1"))),
        }
    }
    let expected = n * n * n;
    if assignment.len() != expected {
        let extra = assignment.keys().find(|k| !k.starts_with("x_") || k.split('_').count() != 4);
        return Err(Error::InvalidArgument(format!(
            "assignment has {} variables, expected {expected}{}",
            assignment.len(),
            extra.map(|e| format!(" (unknown {e})")).unwrap_or_default()
        )));
    }
    if p.is_empty() && !allow_empty {
        return Err(Error::EmptySquare);
    }
    Ok(p)
}
