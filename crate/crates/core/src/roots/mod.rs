//! Type A root data in fundamental-weight coordinates, the coroot
//! arrangement, and the chamber/Weyl and cell/parabolic dictionaries.
//!
//! A weight `sum c_k w_k` of `sl_{r+1}` is stored as `(c_1, .., c_r)`. Its
//! epsilon coordinates are `x_k = c_k + .. + c_r` with `x_{r+1} = 0`, and the
//! Weyl group `S_{r+1}` permutes them: `w . e_i = e_{w(i)}`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, FacePoset, Sign, SignVector};
use crate::linalg::Rational;

pub mod sl3;

pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("rank {0} is outside 1..={MAX_RANK}")]
    RankOutOfRange(usize),
    #[error("unsupported root system type {0:?}; only type A is available")]
    UnsupportedType(String),
    #[error("{0} is not a chamber")]
    NotAChamber(String),
    #[error("{0} is not a positive root index")]
    NotAPositiveRoot(usize),
    #[error("{0:?} is not a permutation of 1..={1}")]
    NotAPermutation(String, usize),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// The root `e_i - e_j` (0-based, `i != j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    pub fn negate(self) -> Root {
        Root { i: self.j, j: self.i }
    }

    pub fn height(self) -> i64 {
        self.j as i64 - self.i as i64
    }

    /// Pairing with the coroot as a covector in fundamental-weight
    /// coordinates of a rank-`r` datum.
    pub fn coroot_covector(self, r: usize) -> Vec<i64> {
        let (lo, hi, s) = if self.is_positive() {
            (self.i, self.j, 1)
        } else {
            (self.j, self.i, -1)
        };
        (0..r).map(|k| if lo <= k && k < hi { s } else { 0 }).collect()
    }

    /// The root itself in fundamental-weight coordinates: the sum of the
    /// Cartan matrix rows of its simple summands.
    pub fn weight(self, r: usize) -> Vec<i64> {
        let (lo, hi, s) = if self.is_positive() {
            (self.i, self.j, 1)
        } else {
            (self.j, self.i, -1)
        };
        let mut out = vec![0; r];
        for a in lo..hi {
            out[a] += 2 * s;
            if a > 0 {
                out[a - 1] -= s;
            }
            if a + 1 < r {
                out[a + 1] -= s;
            }
        }
        out
    }

    fn evaluate(self, x: &[Rational]) -> Rational {
        let (lo, hi) = (self.i.min(self.j), self.i.max(self.j));
        let s: Rational = x[lo..hi].iter().sum();
        if self.is_positive() {
            s
        } else {
            -s
        }
    }
}

impl fmt::Display for Root {
    /// `a1`, `a1+a2`, `-a2`, `-(a1+a2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = (self.i.min(self.j), self.i.max(self.j));
        let sum: Vec<String> = (lo..hi).map(|k| format!("a{}", k + 1)).collect();
        match (self.is_positive(), sum.len()) {
            (true, _) => write!(f, "{}", sum.join("+")),
            (false, 1) => write!(f, "-{}", sum[0]),
            (false, _) => write!(f, "-({})", sum.join("+")),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A permutation of `{0, .., n-1}` in one-line notation, `w[i] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &wi) in self.0.iter().enumerate() {
            out[wi] = i;
        }
        Permutation(out)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// The simple transposition `s_k` swapping `k` and `k+1` (0-based).
    pub fn simple(n: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(k, k + 1);
        p
    }

    /// Parses 1-based one-line notation, `"213"` or `"2,1,3"`.
    pub fn parse(s: &str, n: usize) -> Result<Self, RootError> {
        let bad = || RootError::NotAPermutation(s.to_string(), n);
        let parts: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else {
            s.trim().split("").filter(|t| !t.is_empty()).collect()
        };
        let values = parts
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != n {
            return Err(bad());
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(bad());
            }
            seen[v - 1] = true;
            out.push(v - 1);
        }
        Ok(Permutation(out))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        let sep = if self.0.len() > 9 { "," } else { "" };
        f.write_str(&parts.join(sep))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Desingularization {
    #[serde(rename = "positive")]
    Positive,
    #[serde(rename = "negative")]
    Negative,
}

impl fmt::Display for Desingularization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Desingularization::Positive => "positive",
            Desingularization::Negative => "negative",
        })
    }
}

/// Root datum of `sl_{r+1}`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    rank: usize,
    positive: Vec<Root>,
    weyl: Vec<Permutation>,
}

impl RootDatum {
    pub fn type_a(rank: usize) -> Result<Self, RootError> {
        if !(1..=MAX_RANK).contains(&rank) {
            return Err(RootError::RankOutOfRange(rank));
        }
        let n = rank + 1;
        let mut positive: Vec<Root> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Root { i, j }))
            .collect();
        positive.sort_by_key(|a| (a.height(), a.i));
        Ok(RootDatum {
            rank,
            positive,
            weyl: permutations(n),
        })
    }

    /// Accepts a type letter as in the CLI; only `A` is implemented.
    pub fn build(kind: &str, rank: usize) -> Result<Self, RootError> {
        match kind {
            "A" | "a" => Self::type_a(rank),
            other => Err(RootError::UnsupportedType(other.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("A{}", self.rank)
    }

    /// `dim sl_{r+1} = r + 2 |positive roots|`.
    pub fn algebra_dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| Root { i, j: i + 1 }).collect()
    }

    /// Positive roots by height, then by starting index.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .copied()
            .chain(self.positive.iter().map(|a| a.negate()))
            .collect()
    }

    /// `S_{r+1}` in lexicographic order.
    pub fn weyl_group(&self) -> &[Permutation] {
        &self.weyl
    }

    pub fn longest_element(&self) -> Permutation {
        Permutation((0..=self.rank).rev().collect())
    }

    /// Sum of the fundamental weights.
    pub fn rho(&self) -> Vec<Rational> {
        vec![Rational::from_integer(1.into()); self.rank]
    }

    /// One hyperplane per positive root, in the order of
    /// [`positive_roots`](Self::positive_roots).
    pub fn coroot_arrangement(&self) -> Arrangement {
        let covectors: Vec<Vec<i64>> = self
            .positive
            .iter()
            .map(|a| a.coroot_covector(self.rank))
            .collect();
        let refs: Vec<&[i64]> = covectors.iter().map(Vec::as_slice).collect();
        Arrangement::from_i64(self.rank, &refs).expect("coroots are distinct and nonzero")
    }

    fn check_perm(&self, w: &Permutation) -> Result<(), RootError> {
        let n = self.rank + 1;
        let mut seen = vec![false; n];
        if w.len() != n || !w.0.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true)) {
            return Err(RootError::NotAPermutation(w.to_string(), n));
        }
        Ok(())
    }

    /// `w . x` for a weight in fundamental coordinates.
    pub fn act(&self, w: &Permutation, x: &[Rational]) -> Vec<Rational> {
        let eps = to_epsilon(x);
        let mut moved = vec![Rational::zero(); eps.len()];
        for (i, e) in eps.into_iter().enumerate() {
            moved[w.apply(i)] = e;
        }
        from_epsilon(&moved)
    }

    /// `w(a)`.
    pub fn act_on_root(&self, w: &Permutation, a: Root) -> Root {
        Root {
            i: w.apply(a.i),
            j: w.apply(a.j),
        }
    }

    /// Sign vector of `C_w = w^{-1}(C_+)`, the face of `w^{-1} . rho`.
    pub fn chamber_of(&self, w: &Permutation) -> Result<SignVector, RootError> {
        self.check_perm(w)?;
        let x = self.act(&w.inverse(), &self.rho());
        Ok(self.coroot_arrangement().sign_vector(&x)?)
    }

    /// The `w` with `C_w` equal to the given chamber.
    pub fn weyl_of(&self, chamber: &SignVector) -> Result<Permutation, RootError> {
        let arr = self.coroot_arrangement();
        let face = arr.face(chamber)?;
        if face.dim != self.rank {
            return Err(RootError::NotAChamber(chamber.to_string()));
        }
        // Inside C_w the epsilon coordinates are ordered like w^{-1}(rho),
        // whose k-th entry is r - w(k).
        let eps = to_epsilon(&face.witness);
        Ok(Permutation(
            eps.iter()
                .map(|y| eps.iter().filter(|z| *z > y).count())
                .collect(),
        ))
    }

    /// Roots nonnegative on the face, and those vanishing on it.
    pub fn parabolic_and_levi(&self, face: &SignVector) -> Result<(Vec<Root>, Vec<Root>), RootError> {
        let witness = self.coroot_arrangement().face(face)?.witness;
        let mut parabolic = Vec::new();
        let mut levi = Vec::new();
        for a in self.all_roots() {
            match Sign::of(&a.evaluate(&witness)) {
                Sign::Pos => parabolic.push(a),
                Sign::Zero => {
                    parabolic.push(a);
                    levi.push(a);
                }
                Sign::Neg => {}
            }
        }
        Ok((parabolic, levi))
    }

    /// Hyperplanes containing the face, and the arrangement they induce on
    /// the quotient by its span.
    pub fn restriction_arrangements(&self, face: &SignVector) -> Result<(Arrangement, Arrangement), RootError> {
        Ok(self.coroot_arrangement().localize(face)?)
    }

    /// Positive iff `w(a)` is a positive root; `index` is 0-based into
    /// [`positive_roots`](Self::positive_roots).
    pub fn desingularization_sign(&self, w: &Permutation, index: usize) -> Result<Desingularization, RootError> {
        self.check_perm(w)?;
        let a = *self.positive.get(index).ok_or(RootError::NotAPositiveRoot(index))?;
        Ok(if self.act_on_root(w, a).is_positive() {
            Desingularization::Positive
        } else {
            Desingularization::Negative
        })
    }

    /// Every face with its root sets, and the Weyl label of each chamber.
    pub fn cell_dictionary(&self) -> CellDictionary {
        let poset = self.coroot_arrangement().enumerate_faces();
        self.cell_dictionary_of(&poset)
    }

    pub fn cell_dictionary_of(&self, poset: &FacePoset) -> CellDictionary {
        let cells = poset
            .faces()
            .iter()
            .map(|f| {
                let (parabolic, levi) = self.parabolic_and_levi(&f.signs).expect("face of this arrangement");
                let weyl = (f.dim == self.rank).then(|| self.weyl_of(&f.signs).expect("chamber"));
                Cell {
                    face: f.key(),
                    dim: f.dim,
                    parabolic,
                    levi,
                    weyl,
                }
            })
            .collect();
        CellDictionary {
            root_system: self.name(),
            cells,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub face: String,
    pub dim: usize,
    pub parabolic: Vec<Root>,
    pub levi: Vec<Root>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl: Option<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDictionary {
    pub root_system: String,
    pub cells: Vec<Cell>,
}

fn to_epsilon(c: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); c.len() + 1];
    for k in (0..c.len()).rev() {
        out[k] = &out[k + 1] + &c[k];
    }
    out
}

fn from_epsilon(x: &[Rational]) -> Vec<Rational> {
    x.windows(2).map(|w| &w[0] - &w[1]).collect()
}

fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if current.len() == n {
            out.push(Permutation(current.clone()));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                go(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn sizes() {
        for (r, pos, w) in [(1, 1, 2), (2, 3, 6), (3, 6, 24)] {
            let d = RootDatum::type_a(r).unwrap();
            assert_eq!(d.positive_roots().len(), pos);
            assert_eq!(d.weyl_group().len(), w);
        }
        assert_eq!(RootDatum::type_a(0).unwrap_err(), RootError::RankOutOfRange(0));
        assert_eq!(RootDatum::type_a(7).unwrap_err(), RootError::RankOutOfRange(7));
        assert!(matches!(RootDatum::build("B", 2), Err(RootError::UnsupportedType(_))));
    }

    #[test]
    fn a2_roots_and_covectors() {
        let d = RootDatum::type_a(2).unwrap();
        let names: Vec<String> = d.positive_roots().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["a1", "a2", "a1+a2"]);
        let covs: Vec<Vec<i64>> = d.positive_roots().iter().map(|a| a.coroot_covector(2)).collect();
        assert_eq!(covs, [vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(d.simple_roots()[0].weight(2), [2, -1]);
        assert_eq!(d.positive_roots()[2].weight(2), [1, 1]);
        assert_eq!(d.positive_roots()[2].negate().to_string(), "-(a1+a2)");
    }

    #[test]
    fn simple_coroot_pairing_is_kronecker() {
        let d = RootDatum::type_a(4).unwrap();
        for (i, a) in d.simple_roots().into_iter().enumerate() {
            let cov = a.coroot_covector(4);
            for (j, c) in cov.iter().enumerate() {
                assert_eq!(*c, i64::from(i == j));
            }
        }
    }

    #[test]
    fn a1_is_the_line() {
        let d = RootDatum::type_a(1).unwrap();
        assert_eq!(d.coroot_arrangement(), Arrangement::line());
    }

    #[test]
    fn chambers_of_a2() {
        let d = RootDatum::type_a(2).unwrap();
        assert_eq!(d.chamber_of(&Permutation::identity(3)).unwrap(), sv("+++"));
        assert_eq!(d.chamber_of(&Permutation::simple(3, 0)).unwrap(), sv("-++"));
        assert_eq!(d.chamber_of(&d.longest_element()).unwrap(), sv("---"));
        for w in d.weyl_group() {
            assert_eq!(&d.weyl_of(&d.chamber_of(w).unwrap()).unwrap(), w);
        }
        assert!(matches!(d.weyl_of(&sv("0++")), Err(RootError::NotAChamber(_))));
    }

    #[test]
    fn weyl_action_moves_rho() {
        let d = RootDatum::type_a(2).unwrap();
        let x = d.act(&Permutation::simple(3, 0), &d.rho());
        assert_eq!(x, vec![rat(-1), rat(2)]);
    }

    #[test]
    fn parabolics_of_a2() {
        let d = RootDatum::type_a(2).unwrap();
        let (p, l) = d.parabolic_and_levi(&sv("000")).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(l.len(), 6);
        let (p, l) = d.parabolic_and_levi(&sv("+++")).unwrap();
        assert_eq!(p, d.positive_roots());
        assert!(l.is_empty());
        let (p, l) = d.parabolic_and_levi(&sv("0++")).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(l, vec![d.positive_roots()[0], d.positive_roots()[0].negate()]);
    }

    #[test]
    fn desingularization_of_s1() {
        let d = RootDatum::type_a(2).unwrap();
        let s1 = Permutation::simple(3, 0);
        let signs: Vec<_> = (0..3).map(|k| d.desingularization_sign(&s1, k).unwrap()).collect();
        assert_eq!(
            signs,
            [Desingularization::Negative, Desingularization::Positive, Desingularization::Positive]
        );
        assert_eq!(d.desingularization_sign(&s1, 3).unwrap_err(), RootError::NotAPositiveRoot(3));
    }

    #[test]
    fn permutation_parsing() {
        assert_eq!(Permutation::parse("213", 3).unwrap(), Permutation::simple(3, 0));
        assert_eq!(Permutation::parse("2, 1, 3", 3).unwrap(), Permutation::simple(3, 0));
        assert!(Permutation::parse("113", 3).is_err());
        assert!(Permutation::parse("12", 3).is_err());
        assert!(Permutation::parse("1204", 4).is_err());
        assert_eq!(Permutation::simple(3, 0).to_string(), "213");
    }

    #[test]
    fn wall_restriction_is_the_line() {
        let d = RootDatum::type_a(2).unwrap();
        let (sub, quot) = d.restriction_arrangements(&sv("0++")).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(quot, Arrangement::line());
    }
}
