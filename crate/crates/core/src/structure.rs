//! Cycle structures, integer partitions and the classification of the cycle
//! structures that admit an invariant partial Latin square.
//!
//! A triple of cycle structures `z = (z1, z2, z3)` is admissible when some
//! row cycle length `i`, column cycle length `j` and symbol cycle length `k`
//! all occur in it and satisfy `lcm(i,j) = lcm(i,k) = lcm(j,k) = lcm(i,j,k)`.
//! Such a triple of cycles carries one orbit of cells that is already a
//! partial Latin square, and conversely every invariant square contains one.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isotopism::Parastrophy;

/// Multiset of cycle lengths of a permutation of degree `n`.
///
/// `counts[j - 1]` is the number of `j`-cycles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CycleStructure {
    counts: Vec<usize>,
}

impl CycleStructure {
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        let total: usize = counts.iter().enumerate().map(|(j, &c)| (j + 1) * c).sum();
        if total != n || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "cycle counts {counts:?} do not describe a permutation of degree {n}"
            )));
        }
        Ok(CycleStructure { counts })
    }

    /// From the parts of a partition, in any order.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        let n: usize = parts.iter().sum();
        if n == 0 || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("bad partition {parts:?}")));
        }
        let mut counts = vec![0; n];
        for &p in parts {
            counts[p - 1] += 1;
        }
        Ok(CycleStructure { counts })
    }

    /// `1^n`.
    pub fn identity(n: usize) -> Self {
        let mut counts = vec![0; n];
        counts[0] = n;
        CycleStructure { counts }
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    /// Number of cycles of length `len` (zero for out-of-range lengths).
    pub fn count(&self, len: usize) -> usize {
        if len == 0 {
            return 0;
        }
        self.counts.get(len - 1).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn num_cycles(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Cycle lengths with multiplicity, longest first.
    pub fn parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.num_cycles());
        for len in (1..=self.degree()).rev() {
            parts.extend(std::iter::repeat_n(len, self.count(len)));
        }
        parts
    }

    /// Distinct cycle lengths, longest first.
    pub fn lengths(&self) -> Vec<usize> {
        (1..=self.degree()).rev().filter(|&l| self.count(l) > 0).collect()
    }
}

impl fmt::Display for CycleStructure {
    /// Dot-joined `L^M` tokens, longest cycles first; `^1` is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for len in self.lengths() {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            match self.count(len) {
                1 => write!(f, "{len}")?,
                m => write!(f, "{len}^{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<CycleStructure> for String {
    fn from(c: CycleStructure) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for CycleStructure {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        text.parse()
    }
}

impl FromStr for CycleStructure {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for token in text.trim().split('.') {
            let token = token.trim();
            let (len, mult) = match token.split_once('^') {
                Some((l, m)) => (l, m),
                None => (token, "1"),
            };
            let len: usize = len.trim().parse().map_err(|_| Error::Parse(format!("bad cycle length in `{token}`")))?;
            let mult: usize =
                mult.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in `{token}`")))?;
            if len == 0 || mult == 0 {
                return Err(Error::Parse(format!("zero in token `{token}`")));
            }
            parts.extend(std::iter::repeat_n(len, mult));
        }
        CycleStructure::from_parts(&parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Cycle structure of an isotopism: rows, columns, symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IsotopismStructure {
    pub rows: CycleStructure,
    pub cols: CycleStructure,
    pub syms: CycleStructure,
}

impl IsotopismStructure {
    pub fn new(rows: CycleStructure, cols: CycleStructure, syms: CycleStructure) -> Result<Self> {
        let n = rows.degree();
        for other in [&cols, &syms] {
            if other.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: other.degree() });
            }
        }
        Ok(IsotopismStructure { rows, cols, syms })
    }

    pub fn identity(n: usize) -> Self {
        let id = CycleStructure::identity(n);
        IsotopismStructure { rows: id.clone(), cols: id.clone(), syms: id }
    }

    pub fn degree(&self) -> usize {
        self.rows.degree()
    }

    pub fn component(&self, k: usize) -> &CycleStructure {
        match k {
            0 => &self.rows,
            1 => &self.cols,
            2 => &self.syms,
            _ => panic!("component index {k} out of range"),
        }
    }

    /// `z^π`: component `k` of the result is component `π(k)` of `self`.
    pub fn permuted(&self, pi: Parastrophy) -> IsotopismStructure {
        let m = pi.map();
        IsotopismStructure {
            rows: self.component(m[0]).clone(),
            cols: self.component(m[1]).clone(),
            syms: self.component(m[2]).clone(),
        }
    }

    /// The lexicographically least member of the parastrophic class.
    pub fn class_representative(&self) -> IsotopismStructure {
        Parastrophy::all().map(|pi| self.permuted(pi)).min().expect("S3 is non-empty")
    }

    /// Product of the fixed-point counts `z11·z21·z31`.
    pub fn fixed_point_product(&self) -> usize {
        self.rows.count(1) * self.cols.count(1) * self.syms.count(1)
    }
}

impl fmt::Display for IsotopismStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.rows, self.cols, self.syms)
    }
}

impl fmt::Debug for IsotopismStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl From<IsotopismStructure> for String {
    fn from(z: IsotopismStructure) -> String {
        z.to_string()
    }
}

impl TryFrom<String> for IsotopismStructure {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        text.parse()
    }
}

impl FromStr for IsotopismStructure {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let comps: Vec<&str> = text.split(',').collect();
        if comps.len() != 3 {
            return Err(Error::Parse(format!("expected three comma-separated components in `{text}`")));
        }
        let rows: CycleStructure = comps[0].parse()?;
        let cols: CycleStructure = comps[1].parse()?;
        let syms: CycleStructure = comps[2].parse()?;
        IsotopismStructure::new(rows, cols, syms).map_err(|e| Error::Parse(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// Exact number of partitions of `n` (Euler's pentagonal recurrence).
pub fn partitions_count(n: usize) -> BigUint {
    partition_numbers(n).pop().expect("table holds p(0..=n)")
}

/// `p(0), ..., p(n)`.
pub fn partition_numbers(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = k % 2 == 1;
            let mut add = |g: usize| {
                if g <= m {
                    if positive {
                        plus += &p[m - g];
                    } else {
                        minus += &p[m - g];
                    }
                }
            };
            add(g1);
            add(k * (3 * k + 1) / 2);
        }
        p.push(plus - minus);
    }
    p
}

/// All partitions of `n` as non-increasing part lists, in descending
/// lexicographic order: `[n]`, `[n-1, 1]`, ..., `[1, ..., 1]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle structures of degree `n` in descending lexicographic order of parts.
pub fn cycle_structures(n: usize) -> Vec<CycleStructure> {
    partitions(n).iter().map(|p| CycleStructure::from_parts(p).expect("partition of n ≥ 1")).collect()
}

/// Table `t[k][m] = |CS_{k,m}|` for `0 ≤ k ≤ n`, `1 ≤ m ≤ k`: the number of
/// cycle structures of degree `k` whose shortest cycle has length `m`.
pub fn cs_nm_table(n: usize) -> Vec<Vec<BigUint>> {
    let p = partition_numbers(n);
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![BigUint::zero(); k + 1];
        for (m, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = if m == k {
                BigUint::one()
            } else if 2 * m > k {
                BigUint::zero()
            } else {
                let rest = k - m;
                let mut v = p[rest].clone();
                for x in &t[rest][1..m] {
                    v -= x;
                }
                v
            };
        }
        t.push(row);
    }
    t
}

/// `|CS_{n,m}|`, the number of cycle structures of degree `n` whose shortest
/// cycle has length `m`.
pub fn cs_nm_count(n: usize, m: usize) -> Result<BigUint> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ m ≤ n, got n={n}, m={m}")));
    }
    Ok(cs_nm_table(n)[n][m].clone())
}

// ---------------------------------------------------------------------------
// LCM triples
// ---------------------------------------------------------------------------

/// Cycle lengths `(i, j, k)` whose pairwise lcms coincide with their joint lcm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LcmTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl LcmTriple {
    pub fn new(i: usize, j: usize, k: usize) -> Option<Self> {
        is_lcm_triple(i, j, k).then_some(LcmTriple { i, j, k })
    }
}

pub fn is_lcm_triple(i: usize, j: usize, k: usize) -> bool {
    if i == 0 || j == 0 || k == 0 {
        return false;
    }
    let all = i.lcm(&j).lcm(&k);
    i.lcm(&j) == all && i.lcm(&k) == all && j.lcm(&k) == all
}

/// Every triple of `[n]^3` in lexicographic order.
pub fn lcm_triple_set(n: usize) -> Vec<LcmTriple> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if let Some(t) = LcmTriple::new(i, j, k) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// LCM triples of one order, indexed for membership queries.
#[derive(Debug)]
pub struct LcmTable {
    n: usize,
    /// `third[i][j]`: the lengths `k` with `(i, j, k)` an LCM triple.
    third: Vec<Vec<Vec<usize>>>,
}

impl LcmTable {
    fn build(n: usize) -> Self {
        let mut third = vec![vec![Vec::new(); n + 1]; n + 1];
        for t in lcm_triple_set(n) {
            third[t.i][t.j].push(t.k);
        }
        LcmTable { n, third }
    }

    /// Shared, lazily built table for order `n`.
    pub fn get(n: usize) -> Arc<LcmTable> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LcmTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("LCM cache poisoned");
        guard.entry(n).or_insert_with(|| Arc::new(LcmTable::build(n))).clone()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Third lengths completing `(i, j)` to an LCM triple.
    pub fn thirds(&self, i: usize, j: usize) -> &[usize] {
        &self.third[i][j]
    }
}

/// True iff some LCM triple has all three lengths present in `z`.
pub fn is_autotopism_structure(z: &IsotopismStructure) -> bool {
    let table = LcmTable::get(z.degree());
    z.rows
        .lengths()
        .into_iter()
        .any(|i| z.cols.lengths().into_iter().any(|j| table.thirds(i, j).iter().any(|&k| z.syms.count(k) > 0)))
}

/// All admissible structures of order `n`, ordered lexicographically by
/// component with components in descending partition order.
///
/// Materializes `O(p(n)^3)` values; use [`count_autotopism_structures`] for
/// large `n`.
pub fn enumerate_autotopism_structures(n: usize) -> Vec<IsotopismStructure> {
    let all = cycle_structures(n);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            for c in &all {
                let z = IsotopismStructure { rows: a.clone(), cols: b.clone(), syms: c.clone() };
                if is_autotopism_structure(&z) {
                    out.push(z);
                }
            }
        }
    }
    out
}

/// Number of admissible structures and of their parastrophic classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCount {
    pub order: usize,
    #[serde(with = "crate::serde_big")]
    pub structures: BigUint,
    #[serde(with = "crate::serde_big")]
    pub classes: BigUint,
}

/// Counts admissible structures of order `n` without materializing them.
///
/// Admissibility only depends on the set of distinct lengths in each
/// component, so partitions are grouped by that set (a bitmask, `n ≤ 63`).
/// Classes are counted with Burnside's lemma over the `S3` action.
pub fn count_autotopism_structures(n: usize) -> Result<StructureCount> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidArgument(format!("order {n} outside 1..=63")));
    }
    let table = LcmTable::get(n);
    let mut mult: HashMap<u64, u64> = HashMap::new();
    for p in partitions(n) {
        let mask = p.iter().fold(0u64, |m, &l| m | (1 << l));
        *mult.entry(mask).or_default() += 1;
    }
    let masks: Vec<(u64, u64)> = {
        let mut v: Vec<_> = mult.into_iter().collect();
        v.sort_unstable();
        v
    };
    // third_mask[i][j]: bitmask of k completing (i, j).
    let mut third_mask = vec![vec![0u64; n + 1]; n + 1];
    for (i, row) in third_mask.iter_mut().enumerate().skip(1) {
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = table.thirds(i, j).iter().fold(0, |m, &k| m | (1 << k));
        }
    }
    let bits = |m: u64| (1..=n).filter(move |&l| m & (1 << l) != 0);
    let pair_mask = |a: u64, b: u64| {
        let mut out = 0u64;
        for i in bits(a) {
            for j in bits(b) {
                out |= third_mask[i][j];
            }
        }
        out
    };

    let mut total: u128 = 0;
    let mut two_equal: u128 = 0;
    let mut all_equal: u128 = 0;
    for &(a, ma) in &masks {
        let aa = pair_mask(a, a);
        for &(c, mc) in &masks {
            if aa & c != 0 {
                // z1 = z2 = a-partition, z3 any c-partition: ma choices for the
                // shared partition, mc for the third.
                two_equal += (ma * mc) as u128;
            }
        }
        if aa & a != 0 {
            all_equal += ma as u128;
        }
        for &(b, mb) in &masks {
            let ab = pair_mask(a, b);
            for &(c, mc) in &masks {
                if ab & c != 0 {
                    total += (ma as u128) * (mb as u128) * (mc as u128);
                }
            }
        }
    }
    let burnside = total + 3 * two_equal + 2 * all_equal;
    debug_assert_eq!(burnside % 6, 0);
    Ok(StructureCount { order: n, structures: BigUint::from(total), classes: BigUint::from(burnside / 6) })
}

/// Number of orbits of the coordinate-permuting action on `structures`.
///
/// Fails unless the input is closed under that action.
pub fn parastrophic_class_count(structures: &[IsotopismStructure]) -> Result<BigUint> {
    let set: HashSet<&IsotopismStructure> = structures.iter().collect();
    let mut reps = HashSet::new();
    for z in &set {
        for pi in Parastrophy::all() {
            if !set.contains(&z.permuted(pi)) {
                return Err(Error::NotParastrophicallyClosed);
            }
        }
        reps.insert(z.class_representative());
    }
    Ok(BigUint::from(reps.len()))
}

/// One representative per parastrophic class of admissible structures of
/// order `n`, in the enumeration order of their least members.
pub fn parastrophic_class_representatives(n: usize) -> Vec<IsotopismStructure> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for z in enumerate_autotopism_structures(n) {
        let rep = z.class_representative();
        if seen.insert(rep.clone()) {
            out.push(rep);
        }
    }
    out
}

/// Σ over LCM triples `(i, j, k)` of `|CS_{n,i}|·|CS_{n,j}|·|CS_{n,k}|`,
/// a lower bound on the number of admissible structures.
pub fn lower_bound_structures(n: usize) -> BigUint {
    let t = cs_nm_table(n);
    lcm_triple_set(n).into_iter().map(|l| &t[n][l.i] * &t[n][l.j] * &t[n][l.k]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_partitions(n: usize) -> usize {
        // Counts non-increasing sequences by exhaustive recursion.
        fn go(rest: usize, max: usize) -> usize {
            if rest == 0 {
                return 1;
            }
            (1..=rest.min(max)).map(|p| go(rest - p, p)).sum()
        }
        go(n, n)
    }

    #[test]
    fn partition_numbers_match_brute_force() {
        for n in 0..=20 {
            assert_eq!(partitions_count(n), BigUint::from(brute_partitions(n)), "n={n}");
        }
        assert_eq!(partitions_count(0), BigUint::from(1u32));
        assert_eq!(partitions_count(4), BigUint::from(5u32));
        assert_eq!(partitions_count(16), BigUint::from(231u32));
    }

    #[test]
    fn partitions_descend_lexicographically() {
        let p = partitions(4);
        assert_eq!(p, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn cs_nm_examples() {
        assert_eq!(cs_nm_count(4, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(cs_nm_count(5, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(cs_nm_count(6, 5).unwrap(), BigUint::from(0u32));
        assert_eq!(cs_nm_count(10, 5).unwrap(), BigUint::from(1u32));
        assert!(cs_nm_count(3, 4).is_err());
        assert!(cs_nm_count(3, 0).is_err());
    }

    #[test]
    fn cs_nm_matches_direct_count() {
        for n in 1..=17 {
            let t = cs_nm_table(n);
            let mut direct = vec![0usize; n + 1];
            for p in partitions(n) {
                direct[*p.last().unwrap()] += 1;
            }
            for m in 1..=n {
                assert_eq!(t[n][m], BigUint::from(direct[m]), "n={n} m={m}");
            }
            let sum: BigUint = t[n].iter().sum();
            assert_eq!(sum, partitions_count(n));
        }
    }

    #[test]
    fn lcm_triples() {
        assert_eq!(lcm_triple_set(1), vec![LcmTriple { i: 1, j: 1, k: 1 }]);
        for n in 1..=8 {
            assert!(lcm_triple_set(n).contains(&LcmTriple { i: 1, j: 1, k: 1 }));
        }
        assert!(lcm_triple_set(6).contains(&LcmTriple { i: 6, j: 3, k: 2 }));
        assert!(!is_lcm_triple(1, 1, 2));
        assert!(is_lcm_triple(2, 2, 1));
    }

    #[test]
    fn structure_text_round_trip() {
        let z: IsotopismStructure = "3.2.1,3.2.1,1^6".parse().unwrap();
        assert_eq!(z.to_string(), "3.2.1,3.2.1,1^6");
        let z: IsotopismStructure = "2^2,2.1^2,1^4".parse().unwrap();
        assert_eq!(z.syms, CycleStructure::identity(4));
        assert!("3.2,1^4,1^4".parse::<IsotopismStructure>().is_err());
        assert!("2,2".parse::<IsotopismStructure>().is_err());
        assert!("0^2,1,1".parse::<IsotopismStructure>().is_err());
    }

    #[test]
    fn membership_examples() {
        let z: IsotopismStructure = "2,2,2".parse().unwrap();
        assert!(is_autotopism_structure(&z));
        let z: IsotopismStructure = "1^2,1^2,2".parse().unwrap();
        assert!(!is_autotopism_structure(&z));
        for n in 1..=6 {
            assert!(is_autotopism_structure(&IsotopismStructure::identity(n)));
        }
        let z: IsotopismStructure = "6,3.2.1,4.2".parse().unwrap();
        assert!(is_autotopism_structure(&z));
    }

    #[test]
    fn small_orders_enumerate() {
        assert_eq!(enumerate_autotopism_structures(1).len(), 1);
        assert_eq!(enumerate_autotopism_structures(2).len(), 5);
        assert_eq!(enumerate_autotopism_structures(4).len(), 65);
        let two = enumerate_autotopism_structures(2);
        assert_eq!(parastrophic_class_count(&two).unwrap(), BigUint::from(3u32));
        let four = enumerate_autotopism_structures(4);
        assert_eq!(parastrophic_class_count(&four).unwrap(), BigUint::from(22u32));
        assert_eq!(parastrophic_class_representatives(4).len(), 22);
        let single = vec![IsotopismStructure::identity(1)];
        assert_eq!(parastrophic_class_count(&single).unwrap(), BigUint::from(1u32));
        assert_eq!(
            parastrophic_class_count(&two[..1]).map(|_| ()),
            Ok(()),
            "first n=2 structure is (2,2,2), symmetric"
        );
        let lopsided = vec!["2,2,1^2".parse().unwrap()];
        assert_eq!(parastrophic_class_count(&lopsided), Err(Error::NotParastrophicallyClosed));
    }

    #[test]
    fn enumeration_order_is_descending() {
        let all = enumerate_autotopism_structures(2);
        let text: Vec<String> = all.iter().map(|z| z.to_string()).collect();
        assert_eq!(text, ["2,2,2", "2,2,1^2", "2,1^2,2", "1^2,2,2", "1^2,1^2,1^2"]);
    }

    #[test]
    fn fast_count_agrees_with_enumeration() {
        for n in 1..=7 {
            let all = enumerate_autotopism_structures(n);
            let c = count_autotopism_structures(n).unwrap();
            assert_eq!(c.structures, BigUint::from(all.len()), "n={n}");
            assert_eq!(c.classes, parastrophic_class_count(&all).unwrap(), "n={n}");
        }
    }

    #[test]
    fn lower_bound_brackets_count() {
        assert_eq!(lower_bound_structures(1), BigUint::from(1u32));
        for n in 1..=10 {
            let lb = lower_bound_structures(n);
            let c = count_autotopism_structures(n).unwrap().structures;
            let p = partitions_count(n);
            assert!(lb <= c, "n={n}");
            assert!(c <= &p * &p * &p);
            let q = partitions_count(n - 1);
            assert!(lb >= &q * &q * &q);
        }
    }

    #[test]
    fn membership_is_parastrophy_invariant() {
        for z in enumerate_autotopism_structures(4) {
            for pi in Parastrophy::all() {
                assert!(is_autotopism_structure(&z.permuted(pi)));
            }
        }
    }
}
