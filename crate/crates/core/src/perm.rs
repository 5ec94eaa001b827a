//! Permutations of `{0, ..., n-1}`.
//!
//! Points are stored 0-based. Everything that reads or writes text uses the
//! 1-based convention of the usual cycle notation, so `(1 2 3)` is the
//! 3-cycle sending point 0 to 1, 1 to 2 and 2 to 0.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::CycleStructure;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from 0-based images; `images[i]` is the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || seen[p] {
                return Err(Error::Parse(format!("{:?} is not a bijection", images)));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!("point {p} outside 1..={degree}")));
                }
                if seen[p - 1] {
                    return Err(Error::Parse(format!("point {p} appears twice")));
                }
                seen[p - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Lays out consecutive cycles of the given lengths: lengths `[3, 2, 1]`
    /// give `(1 2 3)(4 5)(6)`.
    pub fn from_cycle_lengths(lengths: &[usize]) -> Self {
        let degree = lengths.iter().sum();
        let mut images: Vec<usize> = (0..degree).collect();
        let mut start = 0;
        for &len in lengths {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(Permutation { images: other.images.iter().map(|&p| self.images[p]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Permutation { images }
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Disjoint cycles, fixed points included, in normalized order: decreasing
    /// length, equal lengths by smallest point, each cycle starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            cycles.push(cycle);
        }
        // Starts are already minimal and increasing; a stable sort by length keeps that.
        cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
        cycles
    }

    /// For each point, the index of its cycle in [`Permutation::cycles`].
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.degree()];
        for (k, cycle) in self.cycles().iter().enumerate() {
            for &p in cycle {
                idx[p] = k;
            }
        }
        idx
    }

    /// Fixed points in natural order.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).collect()
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut counts = vec![0usize; self.degree()];
        for cycle in self.cycles() {
            counts[cycle.len() - 1] += 1;
        }
        CycleStructure::from_counts(counts).expect("cycle lengths sum to the degree")
    }

    /// Returns `c` with `target = c ∘ self ∘ c⁻¹`, when the cycle structures agree.
    ///
    /// Cycles of equal length are matched in normalized order and aligned
    /// point by point.
    pub fn conjugator_to(&self, target: &Permutation) -> Option<Permutation> {
        if self.degree() != target.degree() {
            return None;
        }
        let from = self.cycles();
        let to = target.cycles();
        if from.iter().map(Vec::len).ne(to.iter().map(Vec::len)) {
            return None;
        }
        let mut images = vec![0; self.degree()];
        for (a, b) in from.iter().zip(&to) {
            for (&x, &y) in a.iter().zip(b) {
                images[x] = y;
            }
        }
        Some(Permutation { images })
    }

    /// Every permutation of the given degree, in lexicographic order of images.
    pub fn all(degree: usize) -> impl Iterator<Item = Permutation> {
        (0..degree).permutations(degree).map(|images| Permutation { images })
    }

    /// Parses `(1 2 3)(4 5)`, `(123)(45)`, `[2,3,1,5,4]`, `()` or `id`.
    ///
    /// Image lists fix their own degree. For cycle notation the degree is
    /// `degree` when given, else the largest point mentioned.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[') {
            let inner =
                inner.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unterminated image list `{text}`")))?;
            let images = split_points(inner)?;
            if let Some(d) = degree {
                if d != images.len() {
                    return Err(Error::DegreeMismatch { expected: d, found: images.len() });
                }
            }
            if images.contains(&0) {
                return Err(Error::Parse("image lists are 1-based".into()));
            }
            return Permutation::from_images(images.into_iter().map(|p| p - 1).collect());
        }
        if text.is_empty() || text == "id" || text == "()" {
            return Ok(Permutation::identity(degree.unwrap_or(0)));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unterminated cycle in `{text}`")))?;
            let body = open[..close].trim();
            let points = if body.contains(|c: char| c == ',' || c.is_whitespace()) {
                split_points(body)?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad point `{c}` in `{text}`")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = match degree {
            Some(d) if d < max => {
                return Err(Error::Parse(format!("point {max} exceeds degree {d}")));
            }
            Some(d) => d,
            None => max,
        };
        Permutation::from_cycles(n, &cycles)
    }
}

fn split_points(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
        .collect()
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "({})", cycle.iter().map(|p| p + 1).join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
