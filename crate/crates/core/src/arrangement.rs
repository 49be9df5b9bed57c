//! Central hyperplane arrangements over Q and their faces.
//!
//! A face is encoded by its sign vector: the sign of every covector on the
//! (relatively open) face. Faces are enumerated by extending sign prefixes one
//! hyperplane at a time and keeping only those that an exact feasibility
//! check can realize. Strict inequalities `f > 0` are imposed as `f >= 1`,
//! which loses nothing because every face of a central arrangement is a cone.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::feasibility::{find_feasible_point, Constraint, Relation};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("covector {0} is zero")]
    ZeroCovector(usize),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sign vector {0} is not a face of the arrangement")]
    FaceNotInArrangement(String),
    #[error("invalid sign key {0:?}: use the characters '-', '0', '+'")]
    InvalidSignKey(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_negative() {
            Sign::Neg
        } else if x.is_zero() {
            Sign::Zero
        } else {
            Sign::Pos
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    fn constraint(self, coeffs: Vec<Rational>) -> Constraint {
        match self {
            Sign::Neg => Constraint::new(coeffs, Relation::Le, -Rational::one()),
            Sign::Zero => Constraint::new(coeffs, Relation::Eq, Rational::zero()),
            Sign::Pos => Constraint::new(coeffs, Relation::Ge, Rational::one()),
        }
    }
}

/// Sign vector in `{-,0,+}^m`, written as a string such as `"+0-"`.
/// Ordered lexicographically with `- < 0 < +`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn zero(m: usize) -> Self {
        SignVector(vec![Sign::Zero; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negate(&self) -> Self {
        SignVector(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn zero_set(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Zero)
            .map(|(i, _)| i)
            .collect()
    }

    /// `self <= other` in the face order: every nonzero sign of `self`
    /// agrees with `other`.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a == Sign::Zero || a == b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Pos),
                _ => Err(ArrangementError::InvalidSignKey(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

/// A central arrangement: hyperplanes `{f_i = 0}` through the origin of Q^n.
///
/// Covectors are stored in primitive integer form with a positive leading
/// entry; proportional covectors are merged, keeping the first occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    covectors: Vec<Vec<Rational>>,
}

impl Arrangement {
    pub fn new(dim: usize, covectors: Vec<Vec<Rational>>) -> Result<Self, ArrangementError> {
        let mut canonical: Vec<Vec<Rational>> = Vec::with_capacity(covectors.len());
        for (i, f) in covectors.into_iter().enumerate() {
            if f.len() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    expected: dim,
                    found: f.len(),
                });
            }
            let f = primitive(&f).ok_or(ArrangementError::ZeroCovector(i))?;
            if !canonical.contains(&f) {
                canonical.push(f);
            }
        }
        Ok(Arrangement {
            dim,
            covectors: canonical,
        })
    }

    pub fn from_i64(dim: usize, covectors: &[&[i64]]) -> Result<Self, ArrangementError> {
        Self::new(
            dim,
            covectors
                .iter()
                .map(|f| f.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// The single point `{0}` of the real line.
    pub fn line() -> Self {
        Self::from_i64(1, &[&[1]]).expect("nonzero covector")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn covectors(&self) -> &[Vec<Rational>] {
        &self.covectors
    }

    pub fn evaluate(&self, i: usize, x: &[Rational]) -> Rational {
        dot(&self.covectors[i], x)
    }

    fn check_point(&self, x: &[Rational]) -> Result<(), ArrangementError> {
        if x.len() != self.dim {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn check_signs(&self, s: &SignVector) -> Result<(), ArrangementError> {
        if s.len() != self.len() {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.len(),
                found: s.len(),
            });
        }
        Ok(())
    }

    pub fn sign_vector(&self, x: &[Rational]) -> Result<SignVector, ArrangementError> {
        self.check_point(x)?;
        Ok(SignVector(
            (0..self.len()).map(|i| Sign::of(&self.evaluate(i, x))).collect(),
        ))
    }

    /// Dimension of the face with the given zero set: `n - rank` of the
    /// covectors vanishing on it.
    pub fn face_dim(&self, signs: &SignVector) -> usize {
        self.dim - self.rank_of(&signs.zero_set())
    }

    fn rank_of(&self, indices: &[usize]) -> usize {
        if indices.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Rational>> = indices.iter().map(|&i| self.covectors[i].clone()).collect();
        RationalMatrix::from_rows(&rows, self.dim)
            .expect("covectors have length dim")
            .rank()
    }

    /// The face containing `x`.
    pub fn face_of_point(&self, x: &[Rational]) -> Result<Face, ArrangementError> {
        let signs = self.sign_vector(x)?;
        let dim = self.face_dim(&signs);
        Ok(Face {
            signs,
            dim,
            witness: x.to_vec(),
        })
    }

    /// A point of the face with sign vector `signs`, if that face exists.
    pub fn realize(&self, signs: &SignVector) -> Result<Option<Vec<Rational>>, ArrangementError> {
        self.check_signs(signs)?;
        let constraints: Vec<Constraint> = signs
            .0
            .iter()
            .zip(&self.covectors)
            .map(|(s, f)| s.constraint(f.clone()))
            .collect();
        Ok(find_feasible_point(self.dim, &constraints))
    }

    pub fn face(&self, signs: &SignVector) -> Result<Face, ArrangementError> {
        let witness = self
            .realize(signs)?
            .ok_or_else(|| ArrangementError::FaceNotInArrangement(signs.to_string()))?;
        Ok(Face {
            signs: signs.clone(),
            dim: self.face_dim(signs),
            witness,
        })
    }

    /// All faces, in lexicographic sign order, with the face order given by
    /// conformality of sign vectors.
    pub fn enumerate_faces(&self) -> FacePoset {
        let mut faces = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.extend_prefix(&mut prefix, vec![Rational::zero(); self.dim], &mut faces);
        FacePoset::from_faces(self.clone(), faces)
    }

    fn extend_prefix(&self, prefix: &mut Vec<Sign>, witness: Vec<Rational>, out: &mut Vec<Face>) {
        let k = prefix.len();
        if k == self.len() {
            let signs = SignVector(prefix.clone());
            let dim = self.face_dim(&signs);
            out.push(Face { signs, dim, witness });
            return;
        }
        let value = self.evaluate(k, &witness);
        let free_sign = Sign::of(&value);
        for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
            let next = if s == free_sign {
                // The parent witness already lies on this side; rescale so
                // that the strict bound |f_k| >= 1 holds as well.
                let a = value.abs();
                if s != Sign::Zero && a < Rational::one() {
                    let scale = a.recip();
                    Some(witness.iter().map(|x| x * &scale).collect())
                } else {
                    Some(witness.clone())
                }
            } else {
                let constraints: Vec<Constraint> = prefix
                    .iter()
                    .chain(std::iter::once(&s))
                    .zip(&self.covectors)
                    .map(|(s, f)| s.constraint(f.clone()))
                    .collect();
                find_feasible_point(self.dim, &constraints)
            };
            if let Some(w) = next {
                prefix.push(s);
                self.extend_prefix(prefix, w, out);
                prefix.pop();
            }
        }
    }

    /// Whether some `c1` in `C1`, `c3` in `C3` and `t` in `[0,1]` put
    /// `(1-t) c1 + t c3` in `C2`.
    ///
    /// Triples with `C2` equal to an endpoint are collinear. Otherwise
    /// `t` is interior and, the faces being cones, the condition becomes: there
    /// are `q1` in `C1` and `q3` in `C3` with `q1 + q3` in `C2`, an exact
    /// feasibility problem in `2n` variables.
    pub fn collinear(
        &self,
        c1: &SignVector,
        c2: &SignVector,
        c3: &SignVector,
    ) -> Result<bool, ArrangementError> {
        for c in [c1, c2, c3] {
            self.check_signs(c)?;
            if self.realize(c)?.is_none() {
                return Err(ArrangementError::FaceNotInArrangement(c.to_string()));
            }
        }
        Ok(self.collinear_unchecked(c1, c2, c3))
    }

    pub(crate) fn collinear_unchecked(&self, c1: &SignVector, c2: &SignVector, c3: &SignVector) -> bool {
        if c2 == c1 || c2 == c3 {
            return true;
        }
        if !sum_signs_compatible(c1, c2, c3) {
            return false;
        }
        let n = self.dim;
        let mut constraints = Vec::with_capacity(3 * self.len());
        for (i, f) in self.covectors.iter().enumerate() {
            let zeros = vec![Rational::zero(); n];
            let first: Vec<Rational> = f.iter().cloned().chain(zeros.iter().cloned()).collect();
            let third: Vec<Rational> = zeros.iter().cloned().chain(f.iter().cloned()).collect();
            let both: Vec<Rational> = f.iter().cloned().chain(f.iter().cloned()).collect();
            constraints.push(c1.0[i].constraint(first));
            constraints.push(c3.0[i].constraint(third));
            constraints.push(c2.0[i].constraint(both));
        }
        find_feasible_point(2 * n, &constraints).is_some()
    }

    /// Splits off the hyperplanes containing the face `signs`.
    ///
    /// Returns the sub-arrangement of those hyperplanes (in the ambient
    /// space) and the quotient arrangement they induce on `Q^n / span(C)`.
    /// Quotient coordinates are taken with respect to the reduced row-echelon
    /// basis of the annihilator of `span(C)`.
    pub fn localize(&self, signs: &SignVector) -> Result<(Arrangement, Arrangement), ArrangementError> {
        self.check_signs(signs)?;
        if self.realize(signs)?.is_none() {
            return Err(ArrangementError::FaceNotInArrangement(signs.to_string()));
        }
        let through: Vec<Vec<Rational>> = signs
            .zero_set()
            .into_iter()
            .map(|i| self.covectors[i].clone())
            .collect();
        let sub = Arrangement::new(self.dim, through.clone())?;
        if through.is_empty() {
            return Ok((sub, Arrangement::new(0, vec![])?));
        }
        let stacked = RationalMatrix::from_rows(&through, self.dim).expect("length dim");
        let ech = stacked.echelon();
        let k = ech.pivots.len();
        // Basis rows b_1..b_k of the annihilator; coordinates of f in it are
        // read off at the pivot columns because the basis is reduced.
        let quotient: Vec<Vec<Rational>> = through
            .iter()
            .map(|f| ech.pivots.iter().map(|&p| f[p].clone()).collect())
            .collect();
        debug_assert!(through.iter().zip(&quotient).all(|(f, q)| {
            (0..self.dim).all(|j| {
                let recon = (0..k).fold(Rational::zero(), |acc, r| acc + &q[r] * &ech.reduced[(r, j)]);
                recon == f[j]
            })
        }));
        Ok((sub, Arrangement::new(k, quotient)?))
    }

    /// Disjoint union of two arrangements on `Q^{n1} x Q^{n2}`.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let n = self.dim + other.dim;
        let mut covectors = Vec::with_capacity(self.len() + other.len());
        for f in &self.covectors {
            let mut g = f.clone();
            g.resize(n, Rational::zero());
            covectors.push(g);
        }
        for f in &other.covectors {
            let mut g = vec![Rational::zero(); self.dim];
            g.extend(f.iter().cloned());
            covectors.push(g);
        }
        Arrangement::new(n, covectors).expect("product of valid arrangements")
    }
}

/// Necessary sign condition for `q1 + q3` to have signs `c2`.
fn sum_signs_compatible(c1: &SignVector, c2: &SignVector, c3: &SignVector) -> bool {
    c1.0.iter().zip(&c2.0).zip(&c3.0).all(|((a, b), c)| match (a, c) {
        (Sign::Zero, Sign::Zero) => *b == Sign::Zero,
        (Sign::Zero, s) | (s, Sign::Zero) => b == s,
        (x, y) if x == y => b == x,
        _ => true,
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn primitive(f: &[Rational]) -> Option<Vec<Rational>> {
    let lead = f.iter().find(|x| !x.is_zero())?;
    let lcm = f
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = f.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if lead.is_negative() {
        gcd = -gcd;
    }
    Some(ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect())
}

/// A relatively open cell of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub signs: SignVector,
    pub dim: usize,
    /// A rational point inside the face.
    pub witness: Vec<Rational>,
}

impl Face {
    pub fn key(&self) -> String {
        self.signs.to_string()
    }
}

/// Faces of an arrangement ordered by inclusion of closures.
#[derive(Debug, Clone)]
pub struct FacePoset {
    arrangement: Arrangement,
    faces: Vec<Face>,
    index: HashMap<SignVector, usize>,
    leq: Vec<Vec<bool>>,
}

impl FacePoset {
    fn from_faces(arrangement: Arrangement, mut faces: Vec<Face>) -> Self {
        faces.sort_by(|a, b| a.signs.cmp(&b.signs));
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.signs.clone(), i))
            .collect();
        let leq = faces
            .iter()
            .map(|a| faces.iter().map(|b| a.signs.conforms_to(&b.signs)).collect())
            .collect();
        FacePoset {
            arrangement,
            faces,
            index,
            leq,
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn index_of(&self, signs: &SignVector) -> Option<usize> {
        self.index.get(signs).copied()
    }

    pub fn index_of_key(&self, key: &str) -> Result<usize, ArrangementError> {
        let signs: SignVector = key.parse()?;
        if signs.len() != self.arrangement.len() {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.arrangement.len(),
                found: signs.len(),
            });
        }
        self.index_of(&signs)
            .ok_or_else(|| ArrangementError::FaceNotInArrangement(key.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Index of the all-zero face.
    pub fn minimum(&self) -> usize {
        self.index_of(&SignVector::zero(self.arrangement.len()))
            .expect("the origin is always a face")
    }

    pub fn chambers(&self) -> Vec<usize> {
        let n = self.arrangement.dim();
        (0..self.len()).filter(|&i| self.faces[i].dim == n).collect()
    }

    pub fn faces_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.faces[i].dim == d).collect()
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between; the poset is
    /// graded by dimension so these are the pairs with `dim b = dim a + 1`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq[a][b] && self.faces[b].dim == self.faces[a].dim + 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn common_lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&d| self.leq[d][a] && self.leq[d][b])
            .collect()
    }

    pub fn face_of_point(&self, x: &[Rational]) -> Result<usize, ArrangementError> {
        let signs = self.arrangement.sign_vector(x)?;
        Ok(self.index_of(&signs).expect("every point lies in a face"))
    }

    /// The separating wall of two faces spanning the same flat, if they are
    /// adjacent across a face of one dimension less.
    pub fn wall_pair(&self, a: usize, b: usize) -> Option<usize> {
        let (fa, fb) = (&self.faces[a], &self.faces[b]);
        if a == b || fa.dim != fb.dim || fa.dim == 0 || fa.signs.zero_set() != fb.signs.zero_set() {
            return None;
        }
        self.common_lower_bounds(a, b)
            .into_iter()
            .find(|&d| self.faces[d].dim + 1 == fa.dim)
    }

    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        self.arrangement
            .collinear_unchecked(&self.faces[a].signs, &self.faces[b].signs, &self.faces[c].signs)
    }

    /// `sum over faces of (-1)^dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}
