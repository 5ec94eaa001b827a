//! Exact counts of Θ-invariant partial Latin squares by size, the size
//! bounds and candidate size sets a cycle structure allows, and the closed
//! forms available for special structures.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isotopism::Isotopism;
use crate::orbits::build_valid_orbits;
use crate::pls::{isotopism_canonical_form, PartialLatinSquare};
use crate::search::{with_engine, AnyEngine, Budget, Meter, SearchOptions};
use crate::structure::{is_autotopism_structure, IsotopismStructure, LcmTable};

/// Per-size counts of the invariant squares of one isotopism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub structure: IsotopismStructure,
    pub isotopism: String,
    /// Attained sizes only; unattained sizes are absent rather than zero.
    #[serde(with = "crate::serde_big::map")]
    pub per_size: BTreeMap<usize, BigUint>,
    #[serde(with = "crate::serde_big")]
    pub total: BigUint,
    #[serde(with = "secs")]
    pub elapsed: Duration,
    pub node_count: u64,
}

impl CensusReport {
    pub(crate) fn from_counts(t: &Isotopism, counts: &[u64], elapsed: Duration, node_count: u64) -> Self {
        let per_size: BTreeMap<usize, BigUint> =
            counts.iter().enumerate().filter(|&(s, &c)| s > 0 && c > 0).map(|(s, &c)| (s, BigUint::from(c))).collect();
        let total = per_size.values().sum();
        CensusReport { structure: t.structure(), isotopism: t.to_string(), per_size, total, elapsed, node_count }
    }

    /// Count for size `s`, zero when absent.
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

pub(crate) mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

/// `Δ_s(z)` for every size `s`, by exhaustive search over conflict-free
/// sets of valid orbits.
pub fn delta_census(t: &Isotopism, opts: &SearchOptions) -> Result<CensusReport> {
    census_up_to(t, t.degree() * t.degree(), opts)
}

/// Like [`delta_census`] but only sizes up to `max_size` are explored.
pub fn census_up_to(t: &Isotopism, max_size: usize, opts: &SearchOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let counts = with_engine!(&engine, e => e.parallel_census(max_size, opts, &budget));
    budget.finish()?;
    let nodes = counts.iter().sum::<u64>();
    Ok(CensusReport::from_counts(t, &counts, start.elapsed(), nodes))
}

/// `Δ(z)`: the number of Latin squares admitting `t` as an autotopism.
pub fn delta_full(t: &Isotopism, opts: &SearchOptions) -> Result<BigUint> {
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let count = with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let mut cover = e.cover_of(&[]);
        e.completions(e.all(), &mut cover, u64::MAX, &mut meter)
    });
    budget.finish()?;
    Ok(BigUint::from(count))
}

/// Lower and upper bounds on the size of an invariant square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Pairs `(i, j)` of lengths in components `a` and `b` completed to an LCM
/// triple by some length present in `c`.
fn lcm_pairs(z: &IsotopismStructure, a: usize, b: usize, c: usize) -> Vec<(usize, usize)> {
    let table = LcmTable::get(z.degree());
    let (za, zb, zc) = (z.component(a), z.component(b), z.component(c));
    let mut out = Vec::new();
    for i in za.lengths().into_iter().rev() {
        for j in zb.lengths().into_iter().rev() {
            if table.thirds(i, j).iter().any(|&k| zc.count(k) > 0) {
                out.push((i, j));
            }
        }
    }
    out
}

fn require_admissible(z: &IsotopismStructure) -> Result<()> {
    if !is_autotopism_structure(z) {
        return Err(Error::NotAutotopismStructure(z.to_string()));
    }
    Ok(())
}

/// Bounds from the block structure: the least block lcm below, and the
/// smallest of the three coordinate-pair capacities above.
pub fn size_bounds(z: &IsotopismStructure) -> Result<SizeBounds> {
    require_admissible(z)?;
    let pairs = lcm_pairs(z, 0, 1, 2);
    let lower = pairs.iter().map(|&(i, j)| i.lcm(&j)).min().expect("admissible structure has a pair");
    let capacity = |a: usize, b: usize, c: usize| -> usize {
        let (za, zb) = (z.component(a), z.component(b));
        lcm_pairs(z, a, b, c).iter().map(|&(i, j)| za.count(i) * zb.count(j) * i * j).sum()
    };
    let upper = capacity(0, 1, 2).min(capacity(0, 2, 1)).min(capacity(2, 1, 0));
    Ok(SizeBounds { lower, upper })
}

/// Sums `Σ ω_ij·lcm(i, j)` over row/column pairs with `0 ≤ ω_ij ≤
/// z1i·z2j·gcd(i, j)`, not all zero, up to the upper bound.
pub fn candidate_sizes(z: &IsotopismStructure) -> Result<BTreeSet<usize>> {
    let bounds = size_bounds(z)?;
    let cap = bounds.upper;
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for (i, j) in lcm_pairs(z, 0, 1, 2) {
        let step = i.lcm(&j);
        let copies = z.rows.count(i) * z.cols.count(j) * i.gcd(&j);
        for _ in 0..copies {
            for s in (step..=cap).rev() {
                if reach[s - step] {
                    reach[s] = true;
                }
            }
        }
    }
    Ok((1..=cap).filter(|&s| reach[s]).collect())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `Δ_s((n, n, 1^n))`: `n!² / (k!·(n−k)!²)` when `s = k·n`, else zero.
pub fn delta_closed_row_col_ncycle(n: usize, s: usize) -> BigUint {
    if n == 0 || s == 0 || !s.is_multiple_of(n) || s / n > n {
        return BigUint::zero();
    }
    let k = s / n;
    let nf = factorial(n);
    let rest = factorial(n - k);
    &nf * &nf / (factorial(k) * &rest * &rest)
}

/// `Δ_n((n,n,n)) = n²` and, for `n > 2`, `Δ_2n((n,n,n)) = n²(n−1)(n−2)/2`.
pub fn delta_closed_nnn(n: usize, s: usize) -> Result<BigUint> {
    if n >= 1 && s == n {
        return Ok(BigUint::from(n * n));
    }
    if n > 2 && s == 2 * n {
        return Ok(BigUint::from(n * n * (n - 1) * (n - 2) / 2));
    }
    Err(Error::InvalidArgument(format!("no closed form for size {s} of ({n},{n},{n})")))
}

/// `Δ` at the lower size bound: only single orbits reach it, so it is
/// `Σ z1i·z2j·gcd(i,j)·Σ_k k·z3k` over pairs whose lcm attains the bound.
pub fn delta_min_size(z: &IsotopismStructure) -> Result<BigUint> {
    let bounds = size_bounds(z)?;
    let table = LcmTable::get(z.degree());
    let mut total = BigUint::zero();
    for (i, j) in lcm_pairs(z, 0, 1, 2) {
        if i.lcm(&j) != bounds.lower {
            continue;
        }
        let syms: usize = table.thirds(i, j).iter().map(|&k| k * z.syms.count(k)).sum();
        total += BigUint::from(z.rows.count(i) * z.cols.count(j) * i.gcd(&j) * syms);
    }
    Ok(total)
}

/// `Δ_1(z) = z11·z21·z31`.
pub fn delta_size_one(z: &IsotopismStructure) -> BigUint {
    BigUint::from(z.fixed_point_product())
}

/// `Δ_[P](z)`: invariant squares of size `|P|` that are isotopic to `P`.
pub fn delta_isotopism_class(
    t: &Isotopism,
    p: &PartialLatinSquare,
    order_limit: usize,
    opts: &SearchOptions,
) -> Result<BigUint> {
    if p.order() != t.degree() {
        return Err(Error::DegreeMismatch { expected: t.degree(), found: p.order() });
    }
    if p.is_empty() {
        return Err(Error::EmptySquare);
    }
    let target = isotopism_canonical_form(p, order_limit)?;
    let size = p.size();
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let mut count = 0u64;
    let mut failure = None;
    with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let mut visit = |ids: &[usize], s: usize| {
            if s != size || failure.is_some() {
                return;
            }
            match isotopism_canonical_form(&set.square(ids), order_limit) {
                Ok(form) if form == target => count += 1,
                Ok(_) => {}
                Err(err) => failure = Some(err),
            }
        };
        e.for_each_member(e.all(), 0, size, &mut Vec::new(), &mut visit, &mut meter);
    });
    budget.finish()?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(BigUint::from(count))
}

/// Every invariant square of size at most `max_size`, in search order.
pub fn invariant_squares(t: &Isotopism, max_size: usize, opts: &SearchOptions) -> Result<Vec<PartialLatinSquare>> {
    let set = build_valid_orbits(t);
    let engine = AnyEngine::new(&set)?;
    let budget = Budget::new(opts);
    let mut out = Vec::new();
    with_engine!(&engine, e => {
        let mut meter = Meter::new(&budget);
        let mut visit = |ids: &[usize], _s: usize| out.push(set.square(ids));
        e.for_each_member(e.all(), 0, max_size, &mut Vec::new(), &mut visit, &mut meter);
    });
    budget.finish()?;
    Ok(out)
}

/// `BigUint` one, for callers assembling counts.
pub fn one() -> BigUint {
    BigUint::one()
}
