//! Grothendieck-group bookkeeping for the Atiyah flop and the resulting
//! diagram on the real line.
//!
//! `K(X_-)` and `K(X_+)` have bases `[L(0)], [L(1)]`; `K(X_0)` has basis
//! `[L0(0,0)], [L0(1,0)], [L0(0,1)], [L0(1,1)]`, in that order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{HyperbolicDiagram, LineMaps};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineBundleClass {
    /// `L_-(i)` on `X_-`
    Minus(i64),
    /// `L_+(i)` on `X_+`
    Plus(i64),
    /// `L_0(i, j)` on `X_0`
    Zero(i64, i64),
}

impl LineBundleClass {
    /// Coordinates over the standard basis of the ambient Grothendieck group.
    pub fn coordinates(self) -> Vec<Rational> {
        match self {
            LineBundleClass::Minus(i) | LineBundleClass::Plus(i) => reduce_p1(i).to_vec(),
            LineBundleClass::Zero(i, j) => reduce_p1xp1(i, j).to_vec(),
        }
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineBundleClass::Minus(i) => write!(f, "L-({i})"),
            LineBundleClass::Plus(i) => write!(f, "L+({i})"),
            LineBundleClass::Zero(i, j) => write!(f, "L0({i},{j})"),
        }
    }
}

/// `[L(i)] = a [L(0)] + b [L(1)]`, by running
/// `[L(i)] - 2[L(i+1)] + [L(i+2)] = 0` away from `{0, 1}`.
pub fn reduce_p1(i: i64) -> [Rational; 2] {
    let basis = |k: usize| {
        let mut v = [Rational::zero(), Rational::zero()];
        v[k] = Rational::one();
        v
    };
    let two = Rational::from_integer(2.into());
    // Sliding window of two consecutive classes.
    let (mut lo, mut hi) = (basis(0), basis(1));
    let mut at = 0i64;
    while at + 1 < i {
        let next = [&two * &hi[0] - &lo[0], &two * &hi[1] - &lo[1]];
        lo = std::mem::replace(&mut hi, next);
        at += 1;
    }
    while at > i {
        let prev = [&two * &lo[0] - &hi[0], &two * &lo[1] - &hi[1]];
        hi = std::mem::replace(&mut lo, prev);
        at -= 1;
    }
    if at == i {
        lo
    } else {
        hi
    }
}

/// Coordinates of `[L0(i, j)]` in the order `(0,0), (1,0), (0,1), (1,1)`.
pub fn reduce_p1xp1(i: i64, j: i64) -> [Rational; 4] {
    let [ai, bi] = reduce_p1(i);
    let [aj, bj] = reduce_p1(j);
    [&ai * &aj, &bi * &aj, &ai * &bj, &bi * &bj]
}

fn sub2(x: &[Rational; 2], y: &[Rational; 2]) -> [Rational; 2] {
    [&x[0] - &y[0], &x[1] - &y[1]]
}

/// `[O_C(j)] = [L(j)] - 2[L(j+1)] + [L(j+2)]` from the Koszul complex of
/// the zero section.
pub fn curve_class(j: i64) -> [Rational; 2] {
    let two = Rational::from_integer(2.into());
    let mid = reduce_p1(j + 1).map(|x| &two * x);
    let out = sub2(&reduce_p1(j), &mid);
    let last = reduce_p1(j + 2);
    [&out[0] + &last[0], &out[1] + &last[1]]
}

/// `[I_C (x) L(j)] = [L(j)] - [O_C(j)]`.
pub fn ideal_class(j: i64) -> [Rational; 2] {
    sub2(&reduce_p1(j), &curve_class(j))
}

/// `Rp_{-*}` on the basis of `K(X_0)`: `L0(i,0) -> L_-(i)`, `L0(i,1) -> L_-(i-1)`.
fn push_minus(i: i64, j: i64) -> LineBundleClass {
    debug_assert!(j == 0 || j == 1);
    LineBundleClass::Minus(i - j)
}

/// `Rp_{+*}` on the basis of `K(X_0)`: `L0(0,i) -> L_+(i)`, `L0(1,i) -> L_+(i-1)`.
fn push_plus(i: i64, j: i64) -> LineBundleClass {
    debug_assert!(i == 0 || i == 1);
    LineBundleClass::Plus(j - i)
}

const ZERO_BASIS: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// Matrix of `gamma_-` in the standard bases.
pub fn gamma_minus() -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = ZERO_BASIS
        .iter()
        .map(|&(i, j)| push_minus(i, j).coordinates())
        .collect();
    RationalMatrix::from_columns(&cols, 2).expect("2-vectors")
}

/// Matrix of `gamma_+` in the standard bases.
pub fn gamma_plus() -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = ZERO_BASIS
        .iter()
        .map(|&(i, j)| push_plus(i, j).coordinates())
        .collect();
    RationalMatrix::from_columns(&cols, 2).expect("2-vectors")
}

/// `delta_- : [L_-(i)] -> [L0(i,0)]`.
pub fn delta_minus() -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = (0..2)
        .map(|i| LineBundleClass::Zero(i, 0).coordinates())
        .collect();
    RationalMatrix::from_columns(&cols, 4).expect("4-vectors")
}

/// `delta_+ : [L_+(i)] -> [L0(0,i)]`.
pub fn delta_plus() -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = (0..2)
        .map(|i| LineBundleClass::Zero(0, i).coordinates())
        .collect();
    RationalMatrix::from_columns(&cols, 4).expect("4-vectors")
}

fn names(classes: impl IntoIterator<Item = LineBundleClass>) -> Vec<String> {
    classes.into_iter().map(|c| c.to_string()).collect()
}

/// The Atiyah flober on the real line, with dims `(2, 4, 2)` on `-, 0, +`
/// and basis labels attached.
pub fn atiyah_flober() -> HyperbolicDiagram {
    let d = HyperbolicDiagram::on_line(LineMaps {
        gamma_minus: gamma_minus(),
        delta_minus: delta_minus(),
        gamma_plus: gamma_plus(),
        delta_plus: delta_plus(),
    })
    .expect("shapes are consistent");
    let mut bases = BTreeMap::new();
    bases.insert(0, names((0..2).map(LineBundleClass::Minus)));
    bases.insert(1, names(ZERO_BASIS.iter().map(|&(i, j)| LineBundleClass::Zero(i, j))));
    bases.insert(2, names((0..2).map(LineBundleClass::Plus)));
    d.with_bases(bases).expect("label counts match dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn ints(v: &[Rational]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn reduce_p1_examples() {
        assert_eq!(ints(&reduce_p1(0)), [1, 0]);
        assert_eq!(ints(&reduce_p1(1)), [0, 1]);
        assert_eq!(ints(&reduce_p1(2)), [-1, 2]);
        assert_eq!(ints(&reduce_p1(-1)), [2, -1]);
    }

    #[test]
    fn reduce_p1xp1_examples() {
        assert_eq!(ints(&reduce_p1xp1(0, 0)), [1, 0, 0, 0]);
        assert_eq!(ints(&reduce_p1xp1(1, 1)), [0, 0, 0, 1]);
        assert_eq!(ints(&reduce_p1xp1(2, 0)), [-1, 2, 0, 0]);
    }

    #[test]
    fn curve_classes_vanish() {
        for j in [-3, 0, 5] {
            assert!(curve_class(j).iter().all(|x| x.is_zero()));
            assert_eq!(ideal_class(j), reduce_p1(j));
        }
    }

    #[test]
    fn tables_match_literal_matrices() {
        assert_eq!(
            gamma_minus(),
            RationalMatrix::from_i64_rows(&[[1, 0, 2, 1], [0, 1, -1, 0]])
        );
        assert_eq!(
            gamma_plus(),
            RationalMatrix::from_i64_rows(&[[1, 2, 0, 1], [0, -1, 1, 0]])
        );
        assert_eq!(
            delta_minus(),
            RationalMatrix::from_i64_rows(&[[1, 0], [0, 1], [0, 0], [0, 0]])
        );
        assert_eq!(
            delta_plus(),
            RationalMatrix::from_i64_rows(&[[1, 0], [0, 0], [0, 1], [0, 0]])
        );
    }

    #[test]
    fn labels() {
        let d = atiyah_flober();
        assert_eq!(d.basis(1).unwrap()[2], "L0(0,1)");
        assert_eq!(d.basis(0).unwrap(), ["L-(0)", "L-(1)"]);
        assert_eq!(LineBundleClass::Plus(-2).coordinates(), vec![rat(3), rat(-2)]);
    }
}
