//! Brute-force oracles shared by the integration tests. Nothing here uses
//! the orbit machinery of the library: squares are enumerated cell by cell
//! and invariance, isotopy and completability are checked directly.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeMap, BTreeSet};

use autotopism::{Isotopism, IsotopismStructure, PartialLatinSquare, Permutation, Triple};
use rand::seq::SliceRandom;
use rand::Rng;

pub type TripleSet = BTreeSet<Triple>;

/// All permutations of `0..n` as image vectors, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every partial Latin square of order `n` as a triple set, the empty one
/// included.
pub fn all_partial_latin_squares(n: usize) -> Vec<TripleSet> {
    fn go(n: usize, cell: usize, grid: &mut Vec<Option<usize>>, out: &mut Vec<TripleSet>) {
        if cell == n * n {
            out.push(grid.iter().enumerate().filter_map(|(i, s)| s.map(|s| [i / n, i % n, s])).collect());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        grid.push(None);
        go(n, cell + 1, grid, out);
        grid.pop();
        for s in 0..n {
            let row_ok = (0..c).all(|k| grid[r * n + k] != Some(s));
            let col_ok = (0..r).all(|k| grid[k * n + c] != Some(s));
            if row_ok && col_ok {
                grid.push(Some(s));
                go(n, cell + 1, grid, out);
                grid.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// The full ones among [`all_partial_latin_squares`].
pub fn all_latin_squares(n: usize) -> Vec<TripleSet> {
    fn go(n: usize, cell: usize, grid: &mut Vec<usize>, out: &mut Vec<TripleSet>) {
        if cell == n * n {
            out.push(grid.iter().enumerate().map(|(i, &s)| [i / n, i % n, s]).collect());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        for s in 0..n {
            if (0..c).all(|k| grid[r * n + k] != s) && (0..r).all(|k| grid[k * n + c] != s) {
                grid.push(s);
                go(n, cell + 1, grid, out);
                grid.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Image arrays of the three components.
pub fn maps(t: &Isotopism) -> [Vec<usize>; 3] {
    [t.alpha().images().to_vec(), t.beta().images().to_vec(), t.gamma().images().to_vec()]
}

pub fn image(m: &[Vec<usize>; 3], [r, c, s]: Triple) -> Triple {
    [m[0][r], m[1][c], m[2][s]]
}

pub fn is_invariant(m: &[Vec<usize>; 3], p: &TripleSet) -> bool {
    p.iter().all(|&x| p.contains(&image(m, x)))
}

/// Per-size counts of the non-empty invariant squares among `all`.
pub fn brute_census(t: &Isotopism, all: &[TripleSet]) -> BTreeMap<usize, u64> {
    let m = maps(t);
    let mut out = BTreeMap::new();
    for p in all.iter().filter(|p| !p.is_empty() && is_invariant(&m, p)) {
        *out.entry(p.len()).or_insert(0) += 1;
    }
    out
}

pub fn invariant_latin_squares(t: &Isotopism, latin: &[TripleSet]) -> Vec<TripleSet> {
    let m = maps(t);
    latin.iter().filter(|l| is_invariant(&m, l)).cloned().collect()
}

/// Per-size counts of invariant squares contained in some invariant Latin
/// square.
pub fn brute_completable_census(t: &Isotopism, all: &[TripleSet], latin: &[TripleSet]) -> BTreeMap<usize, u64> {
    let m = maps(t);
    let inv = invariant_latin_squares(t, latin);
    let mut out = BTreeMap::new();
    for p in all.iter().filter(|p| !p.is_empty() && is_invariant(&m, p)) {
        if inv.iter().any(|l| p.is_subset(l)) {
            *out.entry(p.len()).or_insert(0) += 1;
        }
    }
    out
}

/// Invariant squares built from unions of `Θ`-orbits of triples, computed
/// naively; usable at order 4 where listing every square is too slow.
pub fn invariant_squares_by_orbits(t: &Isotopism) -> Vec<TripleSet> {
    let n = t.degree();
    let m = maps(t);
    let mut seen = BTreeSet::new();
    let mut orbits: Vec<TripleSet> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for s in 0..n {
                let x = [r, c, s];
                if seen.contains(&x) {
                    continue;
                }
                let mut orbit = TripleSet::new();
                let mut y = x;
                while orbit.insert(y) {
                    seen.insert(y);
                    y = image(&m, y);
                }
                if is_latin(&orbit) {
                    orbits.push(orbit);
                }
            }
        }
    }
    fn go(orbits: &[TripleSet], start: usize, cur: &TripleSet, out: &mut Vec<TripleSet>) {
        for i in start..orbits.len() {
            let mut next = cur.clone();
            next.extend(orbits[i].iter().copied());
            if next.len() == cur.len() + orbits[i].len() && is_latin(&next) {
                out.push(next.clone());
                go(orbits, i + 1, &next, out);
            }
        }
    }
    let mut out = Vec::new();
    go(&orbits, 0, &TripleSet::new(), &mut out);
    out
}

pub fn is_latin(p: &TripleSet) -> bool {
    let mut rc = BTreeSet::new();
    let mut rs = BTreeSet::new();
    let mut cs = BTreeSet::new();
    p.iter().all(|&[r, c, s]| rc.insert((r, c)) && rs.insert((r, s)) && cs.insert((c, s)))
}

/// True iff some isotopism maps `p` onto `q`.
pub fn brute_isotopic(n: usize, p: &TripleSet, q: &TripleSet) -> bool {
    isotopisms_between(n, p, q, true) > 0
}

/// Number of isotopisms mapping `p` onto `q`; stops at the first when
/// `first_only`.
pub fn isotopisms_between(n: usize, p: &TripleSet, q: &TripleSet, first_only: bool) -> usize {
    if p.len() != q.len() {
        return 0;
    }
    let perms = permutations(n);
    let mut count = 0;
    for a in &perms {
        for b in &perms {
            for g in &perms {
                let m = [a.clone(), b.clone(), g.clone()];
                if p.iter().all(|&x| q.contains(&image(&m, x))) {
                    count += 1;
                    if first_only {
                        return count;
                    }
                }
            }
        }
    }
    count
}

pub fn to_pls(n: usize, p: &TripleSet) -> PartialLatinSquare {
    PartialLatinSquare::from_triples(n, p.iter().copied()).expect("Latin triple set")
}

pub fn to_set(p: &PartialLatinSquare) -> TripleSet {
    p.triples().into_iter().collect()
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).expect("shuffled identity")
}

pub fn random_isotopism<R: Rng>(n: usize, rng: &mut R) -> Isotopism {
    Isotopism::new(random_permutation(n, rng), random_permutation(n, rng), random_permutation(n, rng))
        .expect("equal degrees")
}

/// Every triple of cycle structures of degree `n`, admissible or not.
pub fn all_structure_triples(n: usize) -> Vec<IsotopismStructure> {
    let parts = autotopism::structure::cycle_structures(n);
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            for c in &parts {
                out.push(IsotopismStructure::new(a.clone(), b.clone(), c.clone()).expect("same degree"));
            }
        }
    }
    out
}

pub fn to_big(m: &BTreeMap<usize, u64>) -> BTreeMap<usize, num_bigint::BigUint> {
    m.iter().map(|(&s, &c)| (s, c.into())).collect()
}
