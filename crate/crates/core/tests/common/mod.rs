//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use schober::arrangement::{Arrangement, FacePoset};
use schober::diagram::{HyperbolicDiagram, LineMaps, MapKind};
use schober::flober::atiyah_flober;
use schober::linalg::{rat, Rational, RationalMatrix};
use schober::roots::RootDatum;

// Line poset indices, in sign order.
pub const MINUS: usize = 0;
pub const ZERO: usize = 1;
pub const PLUS: usize = 2;

pub fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64_rows(rows)
}

/// The gamma tables as printed, rows `L(0), L(1)`, columns
/// `L0(0,0), L0(1,0), L0(0,1), L0(1,1)`.
pub fn literal_gamma_minus() -> RationalMatrix {
    m(&[&[1, 0, 2, 1], &[0, 1, -1, 0]])
}

pub fn literal_gamma_plus() -> RationalMatrix {
    m(&[&[1, 2, 0, 1], &[0, -1, 1, 0]])
}

pub fn coroot(rank: usize) -> FacePoset {
    RootDatum::type_a(rank).unwrap().coroot_arrangement().enumerate_faces()
}

pub fn line() -> FacePoset {
    Arrangement::line().enumerate_faces()
}

/// Line diagram with half-monodromy `lambda` on each side, so `T = lambda^2`.
pub fn lambda_line(lambda: i64) -> HyperbolicDiagram {
    HyperbolicDiagram::on_line(LineMaps {
        gamma_minus: m(&[&[1, lambda]]),
        delta_minus: m(&[&[1], &[0]]),
        gamma_plus: m(&[&[lambda, 1]]),
        delta_plus: m(&[&[0], &[1]]),
    })
    .unwrap()
}

/// The four indecomposables with trivial monodromy, as line diagrams.
pub fn skyscraper_line() -> HyperbolicDiagram {
    HyperbolicDiagram::skyscraper(line(), 1)
}

pub fn constant_line() -> HyperbolicDiagram {
    HyperbolicDiagram::constant(line(), 1)
}

pub fn direct_image_line() -> HyperbolicDiagram {
    HyperbolicDiagram::on_line(LineMaps {
        gamma_minus: m(&[&[1, 0]]),
        delta_minus: m(&[&[1], &[0]]),
        gamma_plus: m(&[&[1, 1]]),
        delta_plus: m(&[&[1], &[0]]),
    })
    .unwrap()
}

pub fn extension_by_zero_line() -> HyperbolicDiagram {
    HyperbolicDiagram::on_line(LineMaps {
        gamma_minus: m(&[&[1, 0]]),
        delta_minus: m(&[&[1], &[0]]),
        gamma_plus: m(&[&[1, 0]]),
        delta_plus: m(&[&[1], &[1]]),
    })
    .unwrap()
}

pub struct Fixture {
    pub name: &'static str,
    pub diagram: HyperbolicDiagram,
    pub valid: bool,
}

fn perturbed(map: MapKind, lower: usize, upper: usize, entry: (usize, usize), value: Rational) -> HyperbolicDiagram {
    atiyah_flober().with_entry(map, lower, upper, entry, value).unwrap()
}

fn bumped(map: MapKind, lower: usize, upper: usize, entry: (usize, usize)) -> HyperbolicDiagram {
    let base = atiyah_flober();
    let current = match map {
        MapKind::Gamma => base.gamma(lower, upper),
        MapKind::Delta => base.delta(lower, upper),
    }
    .unwrap()[entry]
        .clone();
    perturbed(map, lower, upper, entry, current + rat(1))
}

/// Perturbed Atiyah diagrams that must fail validation.
pub fn broken_atiyah() -> Vec<Fixture> {
    let f = |name, diagram| Fixture { name, diagram, valid: false };
    vec![
        f("gamma- (0,0) + 1", bumped(MapKind::Gamma, ZERO, MINUS, (0, 0))),
        f("gamma- (1,2) + 1", bumped(MapKind::Gamma, ZERO, MINUS, (1, 2))),
        f("gamma+ (0,2) + 1", bumped(MapKind::Gamma, ZERO, PLUS, (0, 2))),
        f("gamma+ (1,1) -> 0", perturbed(MapKind::Gamma, ZERO, PLUS, (1, 1), rat(0))),
        f("gamma+ (1,1) + 1", bumped(MapKind::Gamma, ZERO, PLUS, (1, 1))),
        f("delta- (3,0) + 1", bumped(MapKind::Delta, ZERO, MINUS, (3, 0))),
        f("delta+ (1,1) + 1", bumped(MapKind::Delta, ZERO, PLUS, (1, 1))),
    ]
}

/// Diagrams known to satisfy every condition.
pub fn valid_fixtures() -> Vec<Fixture> {
    let f = |name, diagram| Fixture { name, diagram, valid: true };
    let a2 = coroot(2);
    let atiyah = atiyah_flober();
    vec![
        f("atiyah", atiyah.clone()),
        // Only the image of L0(1,1) changes; no condition involves it.
        f("atiyah, gamma- (1,3) + 1", bumped(MapKind::Gamma, ZERO, MINUS, (1, 3))),
        f("zero on the line", HyperbolicDiagram::constant(line(), 0)),
        f("constant on the line", constant_line()),
        f("skyscraper on the line", skyscraper_line()),
        f("Rj_* on the line", direct_image_line()),
        f("j_! on the line", extension_by_zero_line()),
        f("half-monodromy 3", lambda_line(3)),
        f("half-monodromy -1/2", {
            HyperbolicDiagram::on_line(LineMaps {
                gamma_minus: RationalMatrix::from_rows(&[vec![rat(1), Rational::new((-1).into(), 2.into())]], 2).unwrap(),
                delta_minus: m(&[&[1], &[0]]),
                gamma_plus: RationalMatrix::from_rows(&[vec![Rational::new((-1).into(), 2.into()), rat(1)]], 2).unwrap(),
                delta_plus: m(&[&[0], &[1]]),
            })
            .unwrap()
        }),
        f("atiyah + constant", atiyah.direct_sum(&constant_line()).unwrap()),
        f("constant on A2", HyperbolicDiagram::constant(a2.clone(), 1)),
        f("skyscraper on A2", HyperbolicDiagram::skyscraper(a2.clone(), 2)),
        f("atiyah pulled back along a1", HyperbolicDiagram::pull_back_from_line(&atiyah, a2.clone(), 0).unwrap()),
        f("atiyah pulled back along a1+a2", HyperbolicDiagram::pull_back_from_line(&atiyah, a2.clone(), 2).unwrap()),
        f("half-monodromy pulled back along a2", HyperbolicDiagram::pull_back_from_line(&lambda_line(2), a2, 1).unwrap()),
    ]
}

pub fn all_fixtures() -> Vec<Fixture> {
    let mut v = valid_fixtures();
    v.extend(broken_atiyah());
    v
}

/// Ordered set partitions of an `n`-set, by brute force over maps
/// `[n] -> [n]` whose image is an initial segment.
pub fn fubini_brute_force(n: usize) -> usize {
    let total = n.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut used = vec![false; n];
            let mut c = code;
            for _ in 0..n {
                used[c % n] = true;
                c /= n;
            }
            let k = used.iter().filter(|&&u| u).count();
            used[..k].iter().all(|&u| u)
        })
        .count()
        .max(1)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
