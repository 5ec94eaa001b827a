//! Θ-completability: completion counts, completability censuses and bases
//! of the set of invariant Latin squares.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::census::secs;
use crate::error::{Error, Result};
use crate::isotopism::{Isotopism, Triple};
use crate::orbits::{build_valid_orbits, ValidOrbitSet};
use crate::pls::{isotopism_canonical_form, PartialLatinSquare};
use crate::search::{with_engine, AnyEngine, Budget, Meter, SearchOptions};
use crate::structure::IsotopismStructure;

/// Per-size counts of Θ-completable invariant squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletabilityReport {
    pub structure: IsotopismStructure,
    pub isotopism: String,
    #[serde(with = "crate::serde_big::map")]
    pub per_size: BTreeMap<usize, BigUint>,
    #[serde(with = "crate::serde_big")]
    pub total: BigUint,
    #[serde(with = "secs")]
    pub elapsed: Duration,
}

impl CompletabilityReport {
    fn from_counts(t: &Isotopism, counts: &[u64], elapsed: Duration) -> Self {
        let per_size: BTreeMap<usize, BigUint> =
            counts.iter().enumerate().filter(|&(s, &c)| s > 0 && c > 0).map(|(s, &c)| (s, BigUint::from(c))).collect();
        let total = per_size.values().sum();
        CompletabilityReport { structure: t.structure(), isotopism: t.to_string(), per_size, total, elapsed }
    }

    pub fn count(&self, s: usize) -> BigUint {
        self.per_size.get(&s).cloned().unwrap_or_default()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,count\n");
        for (s, c) in &self.per_size {
            out.push_str(&format!("{s},{c}\n"));
        }
        out.push_str(&format!("total,{}\n", self.total));
        out
    }
}

fn orbits_of(t: &Isotopism, p: &PartialLatinSquare) -> Result<(ValidOrbitSet, Vec<usize>)> {
    if p.order() != t.degree() {
        return Err(Error::DegreeMismatch { expected: t.degree(), found: p.order() });
    }
    let set = build_valid_orbits(t);
    let ids = set.decompose(p)?;
    Ok((set, ids))
}

fn completions_from(set: &ValidOrbitSet, ids: &[usize], limit: u64, opts: &SearchOptions) -> Result<u64> {
    let engine = AnyEngine::new(set)?;
    let budget = Budget::new(opts);
    let count = with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let (_, free, _) = e.state_of(ids);
        let mut cover = e.cover_of(ids);
        e.completions(free, &mut cover, limit, &mut meter)
    });
    budget.finish()?;
    Ok(count)
}

/// `|LS_{Θ,P}|`: the Θ-invariant Latin squares containing `P`.
///
/// The empty square is accepted and yields the number of invariant Latin
/// squares.
pub fn count_completions(t: &Isotopism, p: &PartialLatinSquare, opts: &SearchOptions) -> Result<BigUint> {
    let (set, ids) = orbits_of(t, p)?;
    completions_from(&set, &ids, u64::MAX, opts).map(BigUint::from)
}

/// True iff some Θ-invariant Latin square contains `P`.
pub fn is_theta_completable(t: &Isotopism, p: &PartialLatinSquare, opts: &SearchOptions) -> Result<bool> {
    let (set, ids) = orbits_of(t, p)?;
    Ok(completions_from(&set, &ids, 1, opts)? > 0)
}

/// Every Θ-invariant Latin square containing `P`, in search order.
pub fn completion_set(t: &Isotopism, p: &PartialLatinSquare, opts: &SearchOptions) -> Result<Vec<PartialLatinSquare>> {
    let (set, ids) = orbits_of(t, p)?;
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let mut out = Vec::new();
    with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let (_, free, _) = e.state_of(&ids);
        let mut cover = e.cover_of(&ids);
        let mut visit = |added: &[usize]| {
            let all: Vec<usize> = ids.iter().chain(added).copied().collect();
            out.push(set.square(&all));
        };
        e.for_each_completion(free, &mut cover, &mut Vec::new(), &mut visit, &mut meter);
    });
    budget.finish()?;
    Ok(out)
}

/// `c_{z,s}` for every size, checking each invariant square and pruning
/// every superset of an uncompletable one.
pub fn completability_census(t: &Isotopism, opts: &SearchOptions) -> Result<CompletabilityReport> {
    let start = Instant::now();
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let counts = with_engine!(&engine, e => e.parallel_completable_census(opts, &budget));
    budget.finish()?;
    Ok(CompletabilityReport::from_counts(t, &counts, start.elapsed()))
}

/// Largest order for which [`completability_census_by_class`] runs.
pub const CLASS_CENSUS_MAX_ORDER: usize = 3;

/// `c_{z,s}` checking one square per isotopism class and reusing its
/// answer for every other invariant square of that class.
pub fn completability_census_by_class(t: &Isotopism, opts: &SearchOptions) -> Result<CompletabilityReport> {
    let n = t.degree();
    if n > CLASS_CENSUS_MAX_ORDER {
        return Err(Error::OrderLimit { order: n, limit: CLASS_CENSUS_MAX_ORDER });
    }
    let start = Instant::now();
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let mut counts = vec![0u64; n * n + 1];
    let mut known: HashMap<Vec<Triple>, bool> = HashMap::new();
    let mut failure = None;
    with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let mut check = Meter::new(&budget);
        let mut visit = |ids: &[usize], s: usize| {
            if failure.is_some() {
                return;
            }
            let key = match isotopism_canonical_form(&set.square(ids), CLASS_CENSUS_MAX_ORDER) {
                Ok(k) => k,
                Err(err) => {
                    failure = Some(err);
                    return;
                }
            };
            let ok = *known.entry(key).or_insert_with(|| {
                let (_, free, _) = e.state_of(ids);
                let mut cover = e.cover_of(ids);
                e.completions(free, &mut cover, 1, &mut check) > 0
            });
            if ok {
                counts[s] += 1;
            }
        };
        e.for_each_member(e.all(), 0, n * n, &mut Vec::new(), &mut visit, &mut meter);
    });
    budget.finish()?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(CompletabilityReport::from_counts(t, &counts, start.elapsed()))
}

/// Which two coordinates a shape constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeMode {
    /// (row, column) pairs.
    RC,
    /// (row, symbol) pairs.
    RS,
    /// (column, symbol) pairs.
    CS,
}

impl ShapeMode {
    fn coords(self) -> [usize; 2] {
        match self {
            ShapeMode::RC => [0, 1],
            ShapeMode::RS => [0, 2],
            ShapeMode::CS => [1, 2],
        }
    }

    fn project(self, t: Triple) -> (usize, usize) {
        let [a, b] = self.coords();
        (t[a], t[b])
    }
}

impl fmt::Display for ShapeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeMode::RC => "rc",
            ShapeMode::RS => "rs",
            ShapeMode::CS => "cs",
        })
    }
}

impl FromStr for ShapeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rc" => Ok(ShapeMode::RC),
            "rs" => Ok(ShapeMode::RS),
            "cs" => Ok(ShapeMode::CS),
            _ => Err(Error::Parse(format!("unknown shape mode {s:?}"))),
        }
    }
}

/// A set of coordinate pairs (0-based) that the squares of a basis fill
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSet {
    pub order: usize,
    pub pairs: BTreeSet<(usize, usize)>,
    pub mode: ShapeMode,
}

impl ShapeSet {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(order: usize, pairs: I, mode: ShapeMode) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= order || b >= order) {
            return Err(Error::InvalidArgument(format!("pair ({}, {}) outside order {order}", a + 1, b + 1)));
        }
        Ok(ShapeSet { order, pairs, mode })
    }

    /// Every pair of `[n]^2`.
    pub fn full(order: usize, mode: ShapeMode) -> Self {
        let pairs = (0..order).flat_map(|a| (0..order).map(move |b| (a, b))).collect();
        ShapeSet { order, pairs, mode }
    }

    fn is_invariant(&self, t: &Isotopism) -> bool {
        let comps = t.components();
        let [a, b] = self.mode.coords();
        self.pairs.iter().all(|&(x, y)| self.pairs.contains(&(comps[a].apply(x), comps[b].apply(y))))
    }
}

/// Θ-completable squares whose completion sets partition `LS_Θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaBasis {
    pub elements: Vec<PartialLatinSquare>,
    #[serde(with = "crate::serde_big::vec")]
    pub counts: Vec<BigUint>,
    pub homogeneous: bool,
}

impl ThetaBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σ |LS_{Θ,P_i}|`, which equals `Δ(z)`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Elements as text blocks, each headed by its completion count.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (p, c)) in self.elements.iter().zip(&self.counts).enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# element {} completions {c}\n{p}", i + 1));
        }
        out
    }
}

/// Exact covers of the shape by valid orbits whose projections lie in it.
fn shape_members(set: &ValidOrbitSet, shape: &ShapeSet, budget: &Budget) -> Vec<Vec<usize>> {
    let index: HashMap<(usize, usize), usize> = shape.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let fitting: Vec<(usize, Vec<usize>)> = set
        .orbits()
        .iter()
        .enumerate()
        .filter_map(|(o, orbit)| {
            let idx: Option<Vec<usize>> =
                orbit.triples.iter().map(|&x| index.get(&shape.mode.project(x)).copied()).collect();
            idx.map(|v| (o, v))
        })
        .collect();
    let mut by_pair: Vec<Vec<usize>> = vec![Vec::new(); shape.pairs.len()];
    for (f, (_, idx)) in fitting.iter().enumerate() {
        for &i in idx {
            by_pair[i].push(f);
        }
    }

    struct Walk<'a> {
        set: &'a ValidOrbitSet,
        fitting: &'a [(usize, Vec<usize>)],
        by_pair: &'a [Vec<usize>],
        covered: Vec<bool>,
        chosen: Vec<usize>,
        out: Vec<Vec<usize>>,
    }

    fn go(w: &mut Walk<'_>, meter: &mut Meter<'_>) {
        if !meter.tick() {
            return;
        }
        let Some(pair) = w.covered.iter().position(|&c| !c) else {
            let mut ids = w.chosen.clone();
            ids.sort_unstable();
            w.out.push(ids);
            return;
        };
        for k in 0..w.by_pair[pair].len() {
            let f = w.by_pair[pair][k];
            let (o, ref idx) = w.fitting[f];
            if idx.iter().any(|&i| w.covered[i]) || w.chosen.iter().any(|&c| w.set.conflict(c, o)) {
                continue;
            }
            let idx = idx.clone();
            idx.iter().for_each(|&i| w.covered[i] = true);
            w.chosen.push(o);
            go(w, meter);
            w.chosen.pop();
            idx.iter().for_each(|&i| w.covered[i] = false);
        }
    }

    let mut walk = Walk {
        set,
        fitting: &fitting,
        by_pair: &by_pair,
        covered: vec![false; shape.pairs.len()],
        chosen: Vec::new(),
        out: Vec::new(),
    };
    if shape.pairs.is_empty() {
        return vec![Vec::new()];
    }
    let mut meter = Meter::new(budget);
    go(&mut walk, &mut meter);
    walk.out
}

/// The Θ-completable invariant squares filling exactly `shape`, with their
/// completion counts.
///
/// Fails when `t` has no invariant Latin square, when the shape is not
/// invariant under the two relevant components of `t`, or when no member
/// exists.
pub fn basis_from_shape(t: &Isotopism, shape: &ShapeSet, opts: &SearchOptions) -> Result<ThetaBasis> {
    if shape.order != t.degree() {
        return Err(Error::DegreeMismatch { expected: t.degree(), found: shape.order });
    }
    if !shape.is_invariant(t) {
        return Err(Error::ShapeNotInvariant);
    }
    let set = build_valid_orbits(t);
    let delta = completions_from(&set, &[], u64::MAX, opts)?;
    if delta == 0 {
        return Err(Error::NotLatinAutotopism);
    }
    let budget = Budget::new(opts);
    let members = shape_members(&set, shape, &budget);
    budget.finish()?;

    let mut elements = Vec::new();
    let mut counts = Vec::new();
    let mut total = 0u64;
    for ids in members {
        let c = completions_from(&set, &ids, u64::MAX, opts)?;
        if c > 0 {
            elements.push(set.square(&ids));
            counts.push(BigUint::from(c));
            total += c;
        }
    }
    if elements.is_empty() {
        return Err(Error::EmptyBasis);
    }
    if total != delta {
        return Err(Error::InvalidArgument(format!(
            "completion counts sum to {total}, expected {delta}; the shape does not induce a partition"
        )));
    }
    let homogeneous = counts.windows(2).all(|w| w[0] == w[1]);
    Ok(ThetaBasis { elements, counts, homogeneous })
}

/// The basis filling fixed rows × fixed columns, which is homogeneous with
/// `|LS_{z11}|` elements.
pub fn homogeneous_basis(t: &Isotopism, opts: &SearchOptions) -> Result<ThetaBasis> {
    let z = t.structure();
    if z.fixed_point_product() == 0 {
        return Err(Error::InvalidArgument(format!("{z} has a component without fixed points")));
    }
    let rows = t.alpha().fixed_points();
    let cols = t.beta().fixed_points();
    let pairs = rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c)));
    let shape = ShapeSet::new(t.degree(), pairs, ShapeMode::RC)?;
    let basis = basis_from_shape(t, &shape, opts)?;
    if !basis.homogeneous {
        return Err(Error::NotHomogeneous);
    }
    Ok(basis)
}

/// `Δ(z)` as basis size times the common completion count.
pub fn delta_via_symmetry(t: &Isotopism, opts: &SearchOptions) -> Result<BigUint> {
    let basis = homogeneous_basis(t, opts)?;
    Ok(BigUint::from(basis.len()) * &basis.counts[0])
}
