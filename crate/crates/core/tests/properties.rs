mod common;

use std::collections::BTreeMap;

use num_traits::Signed;
use proptest::prelude::*;

use schober::arrangement::Arrangement;
use schober::diagram::{Decomposition, HyperbolicDiagram, LineMaps, PhiPsiDatum};
use schober::flober::{reduce_p1, reduce_p1xp1};
use schober::linalg::{rat, Rational, RationalMatrix};
use schober::roots::{Desingularization, Permutation, Root, RootDatum};

use common::*;

fn small_int() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(small_int(), rows * cols).prop_map(move |v| {
        RationalMatrix::from_entries(rows, cols, v.into_iter().map(rat).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = RationalMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

/// `L U` with unit diagonals, so always invertible.
fn invertible(n: usize) -> impl Strategy<Value = RationalMatrix> {
    (matrix(n, n), matrix(n, n)).prop_map(move |(a, b)| {
        let mut l = RationalMatrix::identity(n);
        let mut u = RationalMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = a[(i, j)].clone();
                u[(j, i)] = b[(j, i)].clone();
            }
        }
        l.compose(&u).unwrap()
    })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-4i64..=4, dim).prop_map(|v| v.into_iter().map(rat).collect())
}

fn arrangement() -> impl Strategy<Value = Arrangement> {
    (2usize..=3)
        .prop_flat_map(|dim| {
            let covector = prop::collection::vec(-2i64..=2, dim).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0));
            (Just(dim), prop::collection::vec(covector, 1..=4))
        })
        .prop_map(|(dim, cs)| {
            let rows: Vec<&[i64]> = cs.iter().map(|c| c.as_slice()).collect();
            Arrangement::from_i64(dim, &rows).unwrap()
        })
}

fn sum_all(parts: &[HyperbolicDiagram]) -> HyperbolicDiagram {
    let mut it = parts.iter();
    let first = it.next().unwrap().clone();
    it.fold(first, |acc, d| acc.direct_sum(d).unwrap())
}

/// `(a, b, c, d)` copies of skyscraper, constant, `Rj_*`, `j_!`.
fn indecomposable_sum(mult: (usize, usize, usize, usize)) -> HyperbolicDiagram {
    let mut parts = vec![];
    parts.extend((0..mult.0).map(|_| skyscraper_line()));
    parts.extend((0..mult.1).map(|_| constant_line()));
    parts.extend((0..mult.2).map(|_| direct_image_line()));
    parts.extend((0..mult.3).map(|_| extension_by_zero_line()));
    sum_all(&parts)
}

/// Changes basis in every stalk.
fn conjugate(d: &HyperbolicDiagram, p: [&RationalMatrix; 3]) -> HyperbolicDiagram {
    let m = LineMaps::of(d).unwrap();
    let inv: Vec<RationalMatrix> = p.iter().map(|x| x.inverse().unwrap()).collect();
    let conj = |target: usize, map: &RationalMatrix, source: usize| {
        p[target].compose(map).unwrap().compose(&inv[source]).unwrap()
    };
    HyperbolicDiagram::on_line(LineMaps {
        gamma_minus: conj(MINUS, &m.gamma_minus, ZERO),
        delta_minus: conj(ZERO, &m.delta_minus, MINUS),
        gamma_plus: conj(PLUS, &m.gamma_plus, ZERO),
        delta_plus: conj(ZERO, &m.delta_plus, PLUS),
    })
    .unwrap()
}

fn multiplicities() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0usize..3, 0usize..3, 0usize..3, 0usize..3).prop_filter("nonempty", |m| m.0 + m.1 + m.2 + m.3 > 0)
}

fn conjugated_sum() -> impl Strategy<Value = ((usize, usize, usize, usize), HyperbolicDiagram)> {
    multiplicities().prop_flat_map(|mult| {
        let d = indecomposable_sum(mult);
        let (m, z, p) = (d.dim(MINUS), d.dim(ZERO), d.dim(PLUS));
        (Just(mult), Just(d), invertible(m), invertible(z), invertible(p))
            .prop_map(|(mult, d, a, b, c)| (mult, conjugate(&d, [&a, &b, &c])))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(Permutation)
}

fn inversions(w: &Permutation) -> usize {
    let n = w.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| w.apply(i) > w.apply(j))
        .count()
}

fn pairing(a: Root, rank: usize, x: &[Rational]) -> Rational {
    a.coroot_covector(rank)
        .iter()
        .zip(x)
        .map(|(c, xi)| rat(*c) * xi)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in any_matrix()) {
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert!(a.compose(&k).unwrap().is_zero());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn inverse_when_full_rank(a in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(a.compose(&inv).unwrap().is_identity());
                prop_assert!(inv.compose(&a).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.rank() < a.rows()),
        }
    }

    #[test]
    fn composition_is_associative(
        (a, b, c) in (1usize..4, 1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(p, q, r, s)| (matrix(p, q), matrix(q, r), matrix(r, s)))
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduce_p1_closed_form(i in -50i64..=50) {
        prop_assert_eq!(reduce_p1(i), [rat(1 - i), rat(i)]);
    }

    #[test]
    fn reduce_p1xp1_is_a_product(i in -20i64..=20, j in -20i64..=20) {
        let expected = [
            rat((1 - i) * (1 - j)),
            rat(i * (1 - j)),
            rat((1 - i) * j),
            rat(i * j),
        ];
        prop_assert_eq!(reduce_p1xp1(i, j), expected);
    }

    #[test]
    fn euler_characteristic_of_a_fan(a in arrangement()) {
        let poset = a.enumerate_faces();
        let expected = if a.dim() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(poset.euler_characteristic(), expected);
        prop_assert_eq!(poset.minimum(), poset.index_of_key(&"0".repeat(a.len())).unwrap());
    }

    #[test]
    fn collinearity_is_symmetric(a in arrangement(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let poset = a.enumerate_faces();
        let [x, y, z] = [0, 1, 2].map(|k| picks[k].index(poset.len()));
        prop_assert_eq!(poset.collinear(x, y, z), poset.collinear(z, y, x));
        prop_assert!(poset.collinear(x, x, z));
        let chambers = poset.chambers();
        let c = chambers[picks[0].index(chambers.len())];
        prop_assert!(poset.collinear(c, c, z));
    }

    #[test]
    fn segment_midpoints_are_collinear(a in arrangement(), x in point(3), z in point(3)) {
        let n = a.dim();
        let (x, z) = (&x[..n], &z[..n]);
        let mid: Vec<Rational> = x.iter().zip(z).map(|(p, q)| (p + q) / rat(2)).collect();
        let poset = a.enumerate_faces();
        let fx = poset.face_of_point(x).unwrap();
        let fm = poset.face_of_point(&mid).unwrap();
        let fz = poset.face_of_point(z).unwrap();
        prop_assert!(poset.collinear(fx, fm, fz));
    }

    #[test]
    fn decompose_recovers_multiplicities((mult, d) in conjugated_sum()) {
        prop_assert!(d.validate().passed());
        let datum = d.to_phi_psi().unwrap();
        prop_assert_eq!(datum.decompose().unwrap().as_tuple(), mult);
        prop_assert!(datum.t_psi().is_identity());
        prop_assert!(datum.t_phi().is_identity());
        prop_assert!(d.monodromy_1d().unwrap().is_identity());
    }

    #[test]
    fn cohomology_is_additive_and_invariant((mult, d) in conjugated_sum()) {
        let h = d.cohomology_1d().unwrap();
        let parts = [
            skyscraper_line().cohomology_1d().unwrap().as_tuple(),
            constant_line().cohomology_1d().unwrap().as_tuple(),
            direct_image_line().cohomology_1d().unwrap().as_tuple(),
            extension_by_zero_line().cohomology_1d().unwrap().as_tuple(),
        ];
        let counts = [mult.0, mult.1, mult.2, mult.3];
        let mut expected = (0, 0, 0, 0);
        for (p, k) in parts.iter().zip(counts) {
            expected.0 += k * p.0;
            expected.1 += k * p.1;
            expected.2 += k * p.2;
            expected.3 += k * p.3;
        }
        prop_assert_eq!(h.as_tuple(), expected);
        let ends = (d.dim(MINUS) + d.dim(PLUS)) as i64;
        let mid = d.dim(ZERO) as i64;
        prop_assert_eq!(h.h0 as i64 - h.h1 as i64, ends - mid);
        prop_assert_eq!(h.h2c as i64 - h.h1c as i64, ends - mid);
    }

    #[test]
    fn canonical_datum_round_trips(mult in multiplicities()) {
        let dec = Decomposition {
            skyscraper: mult.0,
            constant: mult.1,
            direct_image: mult.2,
            extension_by_zero: mult.3,
        };
        let datum: PhiPsiDatum = dec.datum();
        prop_assert_eq!(datum.decompose().unwrap(), dec);
    }

    #[test]
    fn validation_is_stable((_, d) in conjugated_sum()) {
        prop_assert_eq!(d.validate(), d.validate());
        let covers = d.cover_maps();
        let gamma: BTreeMap<_, _> = covers.iter().map(|(k, (g, _))| (*k, g.clone())).collect();
        let delta: BTreeMap<_, _> = covers.iter().map(|(k, (_, dl))| (*k, dl.clone())).collect();
        let rebuilt = HyperbolicDiagram::from_covers(d.poset().clone(), d.dims().to_vec(), gamma, delta).unwrap();
        prop_assert_eq!(&rebuilt, &d);
        prop_assert_eq!(rebuilt.validate(), d.validate());
    }

    #[test]
    fn roots_have_constant_sign_on_cells(rank in 1usize..=3, x in point(3), w in permutation(4)) {
        let datum = RootDatum::type_a(rank).unwrap();
        let x = &x[..rank];
        let w = Permutation(w.0.iter().copied().filter(|&i| i <= rank).collect());
        let arr = datum.coroot_arrangement();
        let face = arr.face_of_point(x).unwrap();
        for (k, a) in datum.positive_roots().iter().enumerate() {
            let s = pairing(*a, rank, x);
            let w_s = pairing(*a, rank, &face.witness);
            prop_assert_eq!(s.signum(), w_s.signum());
            prop_assert_eq!(face.signs.0[k].as_char(), schober::arrangement::Sign::of(&s).as_char());
            // <w x, a> = <x, w^{-1} a>
            let moved = datum.act(&w, x);
            let pulled = datum.act_on_root(&w.inverse(), *a);
            prop_assert_eq!(pairing(*a, rank, &moved), pairing(pulled, rank, x));
        }
    }
}

#[test]
fn desingularization_flips_under_simple_reflections() {
    for rank in [2, 3] {
        let datum = RootDatum::type_a(rank).unwrap();
        let n = rank + 1;
        let positive = datum.positive_roots().to_vec();
        for w in datum.weyl_group() {
            let negatives = (0..positive.len())
                .filter(|&k| datum.desingularization_sign(w, k).unwrap() == Desingularization::Negative)
                .count();
            assert_eq!(negatives, inversions(w), "{w}");
            for k in 0..rank {
                let idx = positive.iter().position(|r| *r == Root { i: k, j: k + 1 }).unwrap();
                let ws = w.compose(&Permutation::simple(n, k));
                assert_ne!(
                    datum.desingularization_sign(w, idx).unwrap(),
                    datum.desingularization_sign(&ws, idx).unwrap(),
                    "{w} s{}",
                    k + 1
                );
            }
            assert_eq!(&datum.weyl_of(&datum.chamber_of(w).unwrap()).unwrap(), w);
        }
    }
}
