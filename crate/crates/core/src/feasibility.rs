//! Exact feasibility of systems of linear (in)equalities over Q.
//!
//! Phase one of the simplex method on a dense rational tableau, with Bland's
//! rule so it always terminates. Variables are free; they are split as
//! `x = y - z` with `y, z >= 0` internally.

use num_traits::{Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `a . x <= b`
    Le,
    /// `a . x >= b`
    Ge,
    /// `a . x = b`
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Returns a point satisfying every constraint, or `None` if the system is
/// infeasible. Constraint vectors shorter than `nvars` are zero-padded.
pub fn find_feasible_point(nvars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rational::zero(); nvars]);
    }

    // Column layout: y (nvars) | z (nvars) | slacks | artificials.
    let nslack = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let slack_base = 2 * nvars;
    let art_base = slack_base + nslack;

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut needs_artificial = Vec::with_capacity(m);
    let mut slack_idx = 0;

    for c in constraints {
        let mut row = vec![Rational::zero(); art_base];
        for (j, a) in c.coeffs.iter().enumerate().take(nvars) {
            row[j] = a.clone();
            row[nvars + j] = -a.clone();
        }
        let slack_col = match c.relation {
            Relation::Le => {
                row[slack_base + slack_idx] = Rational::from_integer(1.into());
                slack_idx += 1;
                Some(slack_base + slack_idx - 1)
            }
            Relation::Ge => {
                row[slack_base + slack_idx] = Rational::from_integer((-1).into());
                slack_idx += 1;
                Some(slack_base + slack_idx - 1)
            }
            Relation::Eq => None,
        };
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        // A slack with coefficient +1 after normalization can start basic.
        match slack_col {
            Some(s) if row[s].is_positive() => {
                basis.push(s);
                needs_artificial.push(false);
            }
            _ => {
                basis.push(usize::MAX);
                needs_artificial.push(true);
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let nart = needs_artificial.iter().filter(|&&a| a).count();
    let ncols = art_base + nart;
    let mut art = art_base;
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(ncols, Rational::zero());
        if needs_artificial[i] {
            row[art] = Rational::from_integer(1.into());
            basis[i] = art;
            art += 1;
        }
    }

    // Phase-one objective: minimize the sum of artificials. Reduced costs are
    // d_j = -sum over artificial rows of a_ij for non-artificial j.
    let mut cost = vec![Rational::zero(); ncols];
    let mut value = Rational::zero();
    for (i, row) in rows.iter().enumerate() {
        if basis[i] >= art_base {
            for j in 0..art_base {
                cost[j] -= &row[j];
            }
            value -= &rhs[i];
        }
    }

    loop {
        let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !rows[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &rows[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always limits.
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut rows, &mut rhs, &mut cost, &mut value, pr, enter);
        basis[pr] = enter;
    }

    if !value.is_zero() {
        return None;
    }

    let mut point = vec![Rational::zero(); nvars];
    for (i, &b) in basis.iter().enumerate() {
        if b < nvars {
            point[b] += &rhs[i];
        } else if b < 2 * nvars {
            point[b - nvars] -= &rhs[i];
        }
    }
    debug_assert!(constraints.iter().all(|c| c.is_satisfied_by(&point)));
    Some(point)
}

fn pivot(
    rows: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    cost: &mut [Rational],
    value: &mut Rational,
    pr: usize,
    pc: usize,
) {
    let inv = rows[pr][pc].recip();
    for x in rows[pr].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    rhs[pr] *= &inv;
    let prow = rows[pr].clone();
    let prhs = rhs[pr].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        rhs[i] -= &f * &prhs;
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        *value -= &f * &prhs;
    }
}
