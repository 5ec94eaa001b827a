//! Orbits of cell-triples under the cyclic group generated by an isotopism.
//!
//! A Θ-invariant partial Latin square is exactly a union of orbits in which
//! every orbit is itself Latin and no two orbits share a (row, column),
//! (row, symbol) or (column, symbol) pair. The orbits are the atoms every
//! counting routine in this crate works with.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::isotopism::{Isotopism, Triple};
use crate::pls::PartialLatinSquare;
use crate::structure::is_lcm_triple;

/// One orbit, listed from its lexicographically least triple `t0` as
/// `t0, Θ(t0), Θ²(t0), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOrbit {
    pub triples: Vec<Triple>,
}

impl TripleOrbit {
    pub fn representative(&self) -> Triple {
        self.triples[0]
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// True iff no two triples of the orbit agree in two coordinates.
    pub fn is_latin(&self) -> bool {
        let mut rc = std::collections::HashSet::new();
        let mut rs = std::collections::HashSet::new();
        let mut cs = std::collections::HashSet::new();
        self.triples.iter().all(|&[r, c, s]| rc.insert((r, c)) && rs.insert((r, s)) && cs.insert((c, s)))
    }
}

/// All `n^3` triples split into orbits, ordered by representative.
pub fn triple_orbits(t: &Isotopism) -> Vec<TripleOrbit> {
    let n = t.degree();
    let mut seen = vec![false; n * n * n];
    let idx = |[r, c, s]: Triple| (r * n + c) * n + s;
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for s in 0..n {
                let start = [r, c, s];
                if seen[idx(start)] {
                    continue;
                }
                let mut triples = vec![start];
                seen[idx(start)] = true;
                let mut cur = t.apply(start);
                while cur != start {
                    seen[idx(cur)] = true;
                    triples.push(cur);
                    cur = t.apply(cur);
                }
                out.push(TripleOrbit { triples });
            }
        }
    }
    out
}

/// Length of the orbit through `x`: the lcm of the lengths of the three
/// cycles containing its coordinates.
pub fn predicted_orbit_length(t: &Isotopism, x: Triple) -> usize {
    let lens = cycle_lengths(t, x);
    lens[0].lcm(&lens[1]).lcm(&lens[2])
}

fn cycle_lengths(t: &Isotopism, x: Triple) -> [usize; 3] {
    let comps = t.components();
    let mut out = [0; 3];
    for k in 0..3 {
        let mut p = comps[k].apply(x[k]);
        let mut len = 1;
        while p != x[k] {
            p = comps[k].apply(p);
            len += 1;
        }
        out[k] = len;
    }
    out
}

/// The Latin orbits of an isotopism together with their pairwise conflicts.
#[derive(Clone, Debug)]
pub struct ValidOrbitSet {
    order: usize,
    orbits: Vec<TripleOrbit>,
    /// Sorted neighbour lists, self excluded.
    conflicts: Vec<Vec<usize>>,
    triple_to_orbit: HashMap<Triple, usize>,
}

impl ValidOrbitSet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orbits(&self) -> &[TripleOrbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn neighbours(&self, o: usize) -> &[usize] {
        &self.conflicts[o]
    }

    pub fn conflict(&self, a: usize, b: usize) -> bool {
        self.conflicts[a].binary_search(&b).is_ok()
    }

    pub fn orbit_of(&self, t: Triple) -> Option<usize> {
        self.triple_to_orbit.get(&t).copied()
    }

    /// The orbit indices making up `p`, in increasing order.
    ///
    /// Fails with [`Error::NotInvariant`] unless `p` is a union of whole
    /// valid orbits.
    pub fn decompose(&self, p: &PartialLatinSquare) -> Result<Vec<usize>> {
        if p.order() != self.order {
            return Err(Error::DegreeMismatch { expected: self.order, found: p.order() });
        }
        let mut ids = Vec::new();
        for t in p.triples() {
            let o = self.orbit_of(t).ok_or(Error::NotInvariant)?;
            if !self.orbits[o].triples.iter().all(|&x| p.contains(x)) {
                return Err(Error::NotInvariant);
            }
            ids.push(o);
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    /// The square formed by a set of orbits (assumed pairwise compatible).
    pub fn square(&self, ids: &[usize]) -> PartialLatinSquare {
        PartialLatinSquare::from_triples(self.order, ids.iter().flat_map(|&o| self.orbits[o].triples.iter().copied()))
            .expect("compatible orbits form a partial Latin square")
    }
}

/// Keeps the orbits whose triples are mutually Latin and records which pairs
/// of them share a (row, col), (row, sym) or (col, sym) pair.
pub fn build_valid_orbits(t: &Isotopism) -> ValidOrbitSet {
    let n = t.degree();
    let orbits: Vec<TripleOrbit> = triple_orbits(t)
        .into_iter()
        .filter(|o| {
            let [i, j, k] = cycle_lengths(t, o.representative());
            let latin = is_lcm_triple(i, j, k);
            debug_assert_eq!(latin, o.is_latin());
            latin
        })
        .collect();

    // Three families of n^2 pair keys; orbits sharing any key conflict.
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); 3 * n * n];
    for (o, orbit) in orbits.iter().enumerate() {
        for &[r, c, s] in &orbit.triples {
            holders[r * n + c].push(o);
            holders[n * n + r * n + s].push(o);
            holders[2 * n * n + c * n + s].push(o);
        }
    }
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); orbits.len()];
    for list in &holders {
        for &a in list {
            for &b in list {
                if a != b {
                    conflicts[a].push(b);
                }
            }
        }
    }
    for list in conflicts.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let triple_to_orbit =
        orbits.iter().enumerate().flat_map(|(o, orb)| orb.triples.iter().map(move |&x| (x, o))).collect();
    ValidOrbitSet { order: n, orbits, conflicts, triple_to_orbit }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_orbits_are_singletons() {
        let orbits = triple_orbits(&Isotopism::identity(2));
        assert_eq!(orbits.len(), 8);
        assert!(orbits.iter().all(|o| o.len() == 1));
        let valid = build_valid_orbits(&Isotopism::identity(2));
        assert_eq!(valid.len(), 8);
        // (1,1,1) conflicts with (1,1,2), (1,2,1), (2,1,1).
        assert_eq!(valid.neighbours(0), &[1, 2, 4]);
    }

    #[test]
    fn swap_all_orbits() {
        let t = Isotopism::parse("(12)", Some(2)).unwrap();
        let orbits = triple_orbits(&t);
        assert_eq!(orbits.len(), 4);
        assert_eq!(orbits[0].triples, vec![[0, 0, 0], [1, 1, 1]]);
        assert!(orbits.iter().all(|o| o.len() == 2));
    }

    #[test]
    fn rows_and_cols_swapped_orbit_is_valid() {
        let t = Isotopism::parse("(12);(12);()", Some(2)).unwrap();
        let valid = build_valid_orbits(&t);
        let o = valid.orbit_of([0, 0, 0]).unwrap();
        assert_eq!(valid.orbits()[o].triples, vec![[0, 0, 0], [1, 1, 0]]);
        assert!(valid.orbits()[o].is_latin());
    }

    #[test]
    fn section3_orbits_live_in_one_block() {
        let t = Isotopism::parse("(123456);(123)(45)(6);(1234)(56)", None).unwrap();
        let valid = build_valid_orbits(&t);
        assert!(!valid.is_empty());
        for o in valid.orbits() {
            assert!(o.triples.iter().all(|&[_, c, s]| c < 3 && s >= 4));
            assert_eq!(o.len(), 6);
        }
        // Every orbit through a column of the 3-cycle has length lcm(6, 3, ·).
        for o in triple_orbits(&t) {
            let x = o.representative();
            if x[1] < 3 {
                assert_eq!(o.len() % 6, 0);
            }
        }
    }

    #[test]
    fn orbit_lengths_are_lcms() {
        let t = Isotopism::parse("(1 2 3)(4 5);(1 2)(3 4 5);(1 2 3 4)", Some(5)).unwrap();
        let orbits = triple_orbits(&t);
        assert_eq!(orbits.iter().map(TripleOrbit::len).sum::<usize>(), 125);
        for o in &orbits {
            assert_eq!(o.len(), predicted_orbit_length(&t, o.representative()));
        }
    }
}
