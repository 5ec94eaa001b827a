//! Partial Latin squares, the isotopism action on them, parastrophy,
//! Θ-decompositions and brute-force isotopism searches.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isotopism::{Isotopism, Parastrophy, Triple};
use crate::perm::Permutation;

/// Default cap on the order accepted by the `(n!)^2`-sized isotopism searches.
pub const DEFAULT_SEARCH_ORDER_LIMIT: usize = 5;

/// An `n × n` array over symbols `0..n` with blanks; each symbol occurs at
/// most once per row and per column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PlsJson", into = "PlsJson")]
pub struct PartialLatinSquare {
    n: usize,
    cells: Vec<Option<usize>>,
}

impl PartialLatinSquare {
    pub fn empty(n: usize) -> Self {
        PartialLatinSquare { n, cells: vec![None; n * n] }
    }

    /// Builds a square from 0-based triples, rejecting out-of-range entries
    /// and violations of the Latin condition.
    pub fn from_triples<I: IntoIterator<Item = Triple>>(n: usize, triples: I) -> Result<Self> {
        let mut p = PartialLatinSquare::empty(n);
        for t in triples {
            p.insert(t)?;
        }
        Ok(p)
    }

    /// Fills cell `(t[0], t[1])` with `t[2]`.
    pub fn insert(&mut self, t: Triple) -> Result<()> {
        let [r, c, s] = t;
        let n = self.n;
        if r >= n || c >= n || s >= n {
            return Err(Error::InvalidArgument(format!("triple ({}, {}, {}) outside order {n}", r + 1, c + 1, s + 1)));
        }
        if let Some(old) = self.cells[r * n + c] {
            return Err(Error::LatinViolation(format!(
                "cell ({}, {}) holds both {} and {}",
                r + 1,
                c + 1,
                old + 1,
                s + 1
            )));
        }
        if (0..n).any(|k| self.cells[r * n + k] == Some(s)) {
            return Err(Error::LatinViolation(format!("symbol {} twice in row {}", s + 1, r + 1)));
        }
        if (0..n).any(|k| self.cells[k * n + c] == Some(s)) {
            return Err(Error::LatinViolation(format!("symbol {} twice in column {}", s + 1, c + 1)));
        }
        self.cells[r * n + c] = Some(s);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.cells[row * self.n + col]
    }

    /// Number of filled cells.
    pub fn size(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Option::is_none)
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// The orthogonal representation, sorted lexicographically.
    pub fn triples(&self) -> Vec<Triple> {
        let n = self.n;
        self.cells.iter().enumerate().filter_map(|(i, c)| c.map(|s| [i / n, i % n, s])).collect()
    }

    pub fn contains(&self, t: Triple) -> bool {
        t[0] < self.n && t[1] < self.n && self.get(t[0], t[1]) == Some(t[2])
    }

    /// `O(self) ⊆ O(other)`.
    pub fn is_subsquare_of(&self, other: &PartialLatinSquare) -> bool {
        self.n == other.n && self.triples().into_iter().all(|t| other.contains(t))
    }

    fn check_degree(&self, t: &Isotopism) -> Result<()> {
        if t.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: t.degree() });
        }
        Ok(())
    }

    /// `P^Θ`, with `O(P^Θ) = {(α(r), β(c), γ(s))}`.
    pub fn apply_isotopism(&self, t: &Isotopism) -> Result<PartialLatinSquare> {
        self.check_degree(t)?;
        let n = self.n;
        let mut cells = vec![None; n * n];
        for [r, c, s] in self.triples() {
            let [r2, c2, s2] = t.apply([r, c, s]);
            cells[r2 * n + c2] = Some(s2);
        }
        Ok(PartialLatinSquare { n, cells })
    }

    /// `P^π`: each triple has its coordinates permuted by `π`.
    pub fn parastrophe(&self, pi: Parastrophy) -> PartialLatinSquare {
        let n = self.n;
        let mut cells = vec![None; n * n];
        for t in self.triples() {
            let [r, c, s] = pi.apply(t);
            cells[r * n + c] = Some(s);
        }
        PartialLatinSquare { n, cells }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses either the text grid or the JSON form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            text.parse()
        }
    }
}

/// Wire form: order plus 1-based `[row, col, symbol]` triples.
#[derive(Serialize, Deserialize)]
struct PlsJson {
    n: usize,
    cells: Vec<[usize; 3]>,
}

impl From<PartialLatinSquare> for PlsJson {
    fn from(p: PartialLatinSquare) -> Self {
        PlsJson { n: p.n, cells: p.triples().iter().map(|t| t.map(|x| x + 1)).collect() }
    }
}

impl TryFrom<PlsJson> for PartialLatinSquare {
    type Error = Error;

    fn try_from(doc: PlsJson) -> Result<Self> {
        if doc.cells.iter().any(|t| t.contains(&0)) {
            return Err(Error::Parse("JSON cells are 1-based".into()));
        }
        PartialLatinSquare::from_triples(doc.n, doc.cells.iter().map(|t| t.map(|x| x - 1)))
    }
}

impl fmt::Display for PartialLatinSquare {
    /// `n` lines of `n` space-separated tokens, `.` for blanks, 1-based symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let line = (0..self.n)
                .map(|c| match self.get(r, c) {
                    Some(s) => (s + 1).to_string(),
                    None => ".".to_string(),
                })
                .join(" ");
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLS[{}]{{", self.n)?;
        for (k, [r, c, s]) in self.triples().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{},{})", r + 1, c + 1, s + 1)?;
        }
        f.write_str("}")
    }
}

impl FromStr for PartialLatinSquare {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> =
            text.lines().map(|l| l.split_whitespace().collect::<Vec<_>>()).filter(|l| !l.is_empty()).collect();
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty square text".into()));
        }
        let mut p = PartialLatinSquare::empty(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("row {} has {} tokens, expected {n}", r + 1, row.len())));
            }
            for (c, tok) in row.iter().enumerate() {
                if *tok == "." {
                    continue;
                }
                let s: usize = tok.parse().map_err(|_| Error::Parse(format!("bad token `{tok}`")))?;
                if s == 0 || s > n {
                    return Err(Error::Parse(format!("symbol {s} outside 1..={n}")));
                }
                p.insert([r, c, s - 1])?;
            }
        }
        Ok(p)
    }
}

/// True iff `P^Θ = P`.
pub fn is_autotopism(t: &Isotopism, p: &PartialLatinSquare) -> Result<bool> {
    p.check_degree(t)?;
    Ok(p.triples().into_iter().all(|x| p.contains(t.apply(x))))
}

/// The sub-array of cells whose row lies in one cycle of `α` and whose column
/// lies in one cycle of `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub row_cycle: usize,
    pub col_cycle: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub triples: Vec<Triple>,
}

impl Block {
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn size(&self) -> usize {
        self.triples.len()
    }
}

/// Blocks keyed by `(row cycle index, column cycle index)`, cycles in
/// normalized order; every block is present, including empty ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: BTreeMap<(usize, usize), Block>,
}

impl BlockDecomposition {
    pub fn block(&self, row_cycle: usize, col_cycle: usize) -> Option<&Block> {
        self.blocks.get(&(row_cycle, col_cycle))
    }

    pub fn total_size(&self) -> usize {
        self.blocks.values().map(Block::size).sum()
    }
}

pub fn theta_decomposition(p: &PartialLatinSquare, t: &Isotopism) -> Result<BlockDecomposition> {
    p.check_degree(t)?;
    let row_cycles = t.alpha().cycles();
    let col_cycles = t.beta().cycles();
    let row_idx = t.alpha().cycle_index();
    let col_idx = t.beta().cycle_index();
    let mut blocks = BTreeMap::new();
    for (i, rows) in row_cycles.iter().enumerate() {
        for (j, cols) in col_cycles.iter().enumerate() {
            blocks.insert(
                (i, j),
                Block { row_cycle: i, col_cycle: j, rows: rows.clone(), cols: cols.clone(), triples: Vec::new() },
            );
        }
    }
    for x in p.triples() {
        blocks.get_mut(&(row_idx[x[0]], col_idx[x[1]])).expect("all blocks present").triples.push(x);
    }
    Ok(BlockDecomposition { blocks })
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::OrderLimit { order: n, limit });
    }
    Ok(())
}

/// All `Θ` with `P^Θ = Q`, in lexicographic order of `(α, β, γ)`.
///
/// Row and column permutations are enumerated exhaustively; the symbol
/// permutation is forced on the symbols of `P` and free on the rest.
pub fn isotopisms_between(
    p: &PartialLatinSquare,
    q: &PartialLatinSquare,
    order_limit: usize,
) -> Result<Vec<Isotopism>> {
    let n = p.order();
    if q.order() != n {
        return Err(Error::DegreeMismatch { expected: n, found: q.order() });
    }
    check_limit(n, order_limit)?;
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptySquare);
    }
    if p.size() != q.size() {
        return Ok(Vec::new());
    }
    let triples = p.triples();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut out = Vec::new();
    for alpha in &perms {
        for beta in &perms {
            let mut forced: Vec<Option<usize>> = vec![None; n];
            let mut used = vec![false; n];
            let ok = triples.iter().all(|&[r, c, s]| {
                let Some(target) = q.get(alpha.apply(r), beta.apply(c)) else {
                    return false;
                };
                match forced[s] {
                    Some(prev) => prev == target,
                    None if used[target] => false,
                    None => {
                        forced[s] = Some(target);
                        used[target] = true;
                        true
                    }
                }
            });
            if !ok {
                continue;
            }
            let free_from: Vec<usize> = (0..n).filter(|&s| forced[s].is_none()).collect();
            let free_to: Vec<usize> = (0..n).filter(|&s| !used[s]).collect();
            for arrangement in free_to.iter().copied().permutations(free_to.len()) {
                let mut images: Vec<usize> = forced.iter().map(|f| f.unwrap_or(0)).collect();
                for (&from, to) in free_from.iter().zip(arrangement) {
                    images[from] = to;
                }
                let gamma = Permutation::from_images(images).expect("forced map is injective");
                out.push(Isotopism::new(alpha.clone(), beta.clone(), gamma)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The autotopism group `{Θ : P^Θ = P}` of a non-empty square.
pub fn autotopism_group(p: &PartialLatinSquare, order_limit: usize) -> Result<Vec<Isotopism>> {
    isotopisms_between(p, p, order_limit)
}

/// A complete invariant of the isotopism class: the lexicographically least
/// sorted triple list over all isotopic copies.
pub fn isotopism_canonical_form(p: &PartialLatinSquare, order_limit: usize) -> Result<Vec<Triple>> {
    let n = p.order();
    check_limit(n, order_limit)?;
    let triples = p.triples();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut best: Option<Vec<Triple>> = None;
    let mut image: Vec<Triple> = Vec::with_capacity(triples.len());
    for alpha in &perms {
        for beta in &perms {
            image.clear();
            image.extend(triples.iter().map(|&[r, c, s]| [alpha.apply(r), beta.apply(c), s]));
            image.sort_unstable();
            // With cells fixed, relabelling symbols by first appearance gives
            // the least symbol sequence.
            let mut relabel = vec![usize::MAX; n];
            let mut next = 0;
            for t in image.iter_mut() {
                if relabel[t[2]] == usize::MAX {
                    relabel[t[2]] = next;
                    next += 1;
                }
                t[2] = relabel[t[2]];
            }
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image.clone());
            }
        }
    }
    Ok(best.unwrap_or_default())
}
