//! Isotopisms `Θ = (α, β, γ)` and the coordinate permutations (parastrophies)
//! of `S3`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::structure::IsotopismStructure;

/// A cell-triple `[row, col, sym]`, 0-based.
pub type Triple = [usize; 3];

/// Element of `S3` acting on the three coordinates.
///
/// Applying `π` to a triple `t` gives `t'` with `t'[k] = t[π(k)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parastrophy([usize; 3]);

impl Parastrophy {
    pub const IDENTITY: Parastrophy = Parastrophy([0, 1, 2]);
    /// Swap rows and columns.
    pub const TRANSPOSE: Parastrophy = Parastrophy([1, 0, 2]);

    pub fn new(map: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &k in &map {
            if k > 2 || seen[k] {
                return Err(Error::InvalidArgument(format!("{map:?} is not a permutation of 3 points")));
            }
            seen[k] = true;
        }
        Ok(Parastrophy(map))
    }

    pub fn map(self) -> [usize; 3] {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Parastrophy> {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].into_iter().map(Parastrophy)
    }

    pub fn inverse(self) -> Parastrophy {
        let mut inv = [0; 3];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Parastrophy(inv)
    }

    #[inline]
    pub fn apply(self, t: Triple) -> Triple {
        [t[self.0[0]], t[self.0[1]], t[self.0[2]]]
    }
}

/// `Θ = (α, β, γ)` permuting rows, columns and symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isotopism {
    alpha: Permutation,
    beta: Permutation,
    gamma: Permutation,
}

impl Isotopism {
    pub fn new(alpha: Permutation, beta: Permutation, gamma: Permutation) -> Result<Self> {
        let n = alpha.degree();
        for p in [&beta, &gamma] {
            if p.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: p.degree() });
            }
        }
        Ok(Isotopism { alpha, beta, gamma })
    }

    pub fn identity(n: usize) -> Self {
        let id = Permutation::identity(n);
        Isotopism { alpha: id.clone(), beta: id.clone(), gamma: id }
    }

    /// `(π, π, π)`.
    pub fn automorphism(p: Permutation) -> Self {
        Isotopism { alpha: p.clone(), beta: p.clone(), gamma: p }
    }

    /// The isotopism whose components lay out their cycles in decreasing
    /// length over consecutive points, e.g. `3.2.1` becomes `(1 2 3)(4 5)(6)`.
    pub fn canonical(z: &IsotopismStructure) -> Self {
        Isotopism {
            alpha: Permutation::from_cycle_lengths(&z.rows.parts()),
            beta: Permutation::from_cycle_lengths(&z.cols.parts()),
            gamma: Permutation::from_cycle_lengths(&z.syms.parts()),
        }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    pub fn components(&self) -> [&Permutation; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    pub fn is_identity(&self) -> bool {
        self.components().iter().all(|p| p.is_identity())
    }

    pub fn structure(&self) -> IsotopismStructure {
        IsotopismStructure {
            rows: self.alpha.cycle_structure(),
            cols: self.beta.cycle_structure(),
            syms: self.gamma.cycle_structure(),
        }
    }

    #[inline]
    pub fn apply(&self, t: Triple) -> Triple {
        [self.alpha.apply(t[0]), self.beta.apply(t[1]), self.gamma.apply(t[2])]
    }

    /// Componentwise `self ∘ other` (`other` acts first).
    pub fn compose(&self, other: &Isotopism) -> Result<Isotopism> {
        Ok(Isotopism {
            alpha: self.alpha.compose(&other.alpha)?,
            beta: self.beta.compose(&other.beta)?,
            gamma: self.gamma.compose(&other.gamma)?,
        })
    }

    pub fn inverse(&self) -> Isotopism {
        Isotopism { alpha: self.alpha.inverse(), beta: self.beta.inverse(), gamma: self.gamma.inverse() }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Isotopism) -> Result<Isotopism> {
        by.compose(self)?.compose(&by.inverse())
    }

    /// `Θ^π`: component `k` is component `π(k)` of `self`.
    pub fn parastrophe(&self, pi: Parastrophy) -> Isotopism {
        let c = self.components();
        let m = pi.map();
        Isotopism { alpha: c[m[0]].clone(), beta: c[m[1]].clone(), gamma: c[m[2]].clone() }
    }

    /// Every isotopism of degree `n` (`(n!)^3` of them).
    pub fn all(n: usize) -> impl Iterator<Item = Isotopism> {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let perms2 = perms.clone();
        let perms3 = perms.clone();
        perms.into_iter().flat_map(move |a| {
            let perms3 = perms3.clone();
            perms2.clone().into_iter().flat_map(move |b| {
                let a = a.clone();
                perms3.clone().into_iter().map(move |c| Isotopism { alpha: a.clone(), beta: b.clone(), gamma: c })
            })
        })
    }

    /// Parses `α;β;γ` where each component uses [`Permutation::parse`]
    /// notation. A single component denotes the automorphism `(π, π, π)`.
    ///
    /// Without an explicit degree, an image list fixes it; otherwise the
    /// largest point mentioned anywhere is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Isotopism> {
        let parts: Vec<&str> = text.split(';').map(str::trim).collect();
        let parts = match parts.len() {
            1 => vec![parts[0]; 3],
            3 => parts,
            k => return Err(Error::Parse(format!("expected 1 or 3 `;`-separated components, got {k}"))),
        };
        let degree = match degree {
            Some(d) => d,
            None => {
                let parsed: Vec<Permutation> =
                    parts.iter().map(|p| Permutation::parse(p, None)).collect::<Result<_>>()?;
                let listed = parts.iter().zip(&parsed).find(|(t, _)| t.starts_with('['));
                match listed {
                    Some((_, p)) => p.degree(),
                    None => parsed.iter().map(Permutation::degree).max().unwrap_or(0),
                }
            }
        };
        if degree == 0 {
            return Err(Error::Parse(format!("cannot infer the degree of `{text}`")));
        }
        let comps: Vec<Permutation> =
            parts.iter().map(|p| Permutation::parse(p, Some(degree))).collect::<Result<_>>()?;
        let mut it = comps.into_iter();
        let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        Isotopism::new(a, b, c)
    }
}

/// `Θ'` with `b = Θ'·a·Θ'⁻¹`, present iff `a` and `b` have the same cycle
/// structure.
pub fn conjugating_isotopism(a: &Isotopism, b: &Isotopism) -> Option<Isotopism> {
    if a.degree() != b.degree() {
        return None;
    }
    Some(Isotopism {
        alpha: a.alpha.conjugator_to(&b.alpha)?,
        beta: a.beta.conjugator_to(&b.beta)?,
        gamma: a.gamma.conjugator_to(&b.gamma)?,
    })
}

impl fmt::Display for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.alpha, self.beta, self.gamma)
    }
}

impl fmt::Debug for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isotopism[{}]({self})", self.degree())
    }
}
