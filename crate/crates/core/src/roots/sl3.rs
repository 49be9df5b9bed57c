//! Cell-by-cell report for `sl_3`: partial-triangle codes, central fibers,
//! bundle ranks and Grothendieck-group ranks.
//!
//! Every number carries a provenance tag: `computed` when it is derived
//! here from the root datum, `paper` when it is a cited constant.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Permutation, RootDatum};
use crate::arrangement::FacePoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tagged {
    pub value: usize,
    pub provenance: Provenance,
}

fn computed(value: usize) -> Tagged {
    Tagged {
        value,
        provenance: Provenance::Computed,
    }
}

fn cited(value: usize) -> Tagged {
    Tagged {
        value,
        provenance: Provenance::Paper,
    }
}

/// Symbols of the triangle picture, in display order.
pub const SYMBOLS: [&str; 6] = ["p1", "p2", "p3", "l12", "l13", "l23"];

fn symbol_rank(s: &str) -> usize {
    SYMBOLS.iter().position(|t| *t == s).expect("known symbol")
}

fn sorted(code: BTreeSet<String>) -> Vec<String> {
    let mut v: Vec<String> = code.into_iter().collect();
    v.sort_by_key(|s| symbol_rank(s));
    v
}

/// Code of the chamber `C_w`: with `u = w^{-1}`, the flag `{p_u(1), l_u(1)u(2)}`.
pub fn chamber_code(w: &Permutation) -> BTreeSet<String> {
    let u = w.inverse();
    let (a, b) = (u.apply(0) + 1, u.apply(1) + 1);
    let (lo, hi) = (a.min(b), a.max(b));
    [format!("p{a}"), format!("l{lo}{hi}")].into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRow {
    pub face: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl: Option<String>,
    pub code: Vec<String>,
    pub central_fiber_dim: Tagged,
    pub bundle_rank: Tagged,
    pub k_rank: Tagged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiRayRow {
    pub name: String,
    pub rays: Vec<String>,
    pub code: Vec<String>,
    pub quantities: Vec<(String, Tagged)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl3Report {
    pub algebra_dim: usize,
    pub cells: Vec<CellRow>,
    pub multi_ray: Vec<MultiRayRow>,
    pub checks: Vec<Check>,
}

/// Rays in the order `A01, A12, A23`: the ray of `C_+` on the `l12, l13`
/// side, then counter-clockwise.
const RAY_CHAIN: [&str; 3] = ["+0+", "0++", "-+0"];

pub fn sl3_report() -> Sl3Report {
    let datum = RootDatum::type_a(2).expect("rank 2");
    let poset = datum.coroot_arrangement().enumerate_faces();
    let dict = datum.cell_dictionary_of(&poset);
    let n_pos = datum.positive_roots().len();
    let n_weyl = datum.weyl_group().len();
    let g = datum.algebra_dim();

    let codes = cell_codes(&datum, &poset);
    let cells: Vec<CellRow> = dict
        .cells
        .iter()
        .zip(&codes)
        .map(|(cell, code)| {
            let (fiber, rank, k) = match cell.dim {
                // Flag variety, Borel subalgebras, one class per Weyl element.
                2 => (computed(n_pos), computed(datum.rank() + n_pos), computed(n_weyl)),
                1 => (cited(4), cited(4), cited(12)),
                // Cartan subalgebras.
                _ => (cited(6), computed(datum.rank()), cited(72)),
            };
            CellRow {
                face: cell.face.clone(),
                dim: cell.dim,
                weyl: cell.weyl.as_ref().map(|w| w.to_string()),
                code: sorted(code.clone()),
                central_fiber_dim: fiber,
                bundle_rank: rank,
                k_rank: k,
            }
        })
        .collect();

    let ray_code = |key: &str| codes[poset.index_of_key(key).expect("ray of A2")].clone();
    let union = |keys: &[&str]| {
        sorted(keys.iter().fold(BTreeSet::new(), |mut acc, k| {
            acc.extend(ray_code(k));
            acc
        }))
    };
    let multi_ray = vec![
        MultiRayRow {
            name: "(2)".into(),
            rays: RAY_CHAIN[1..].iter().map(|s| s.to_string()).collect(),
            code: union(&RAY_CHAIN[1..]),
            quantities: vec![
                ("central_fiber_dim".into(), cited(5)),
                ("bundle_rank".into(), cited(3)),
            ],
        },
        MultiRayRow {
            name: "(3)".into(),
            rays: RAY_CHAIN.iter().map(|s| s.to_string()).collect(),
            code: union(&RAY_CHAIN),
            quantities: vec![
                ("central_fiber_dim".into(), cited(6)),
                ("rho_fiber_dim_generic".into(), cited(2)),
                ("rho_fiber_dim_degenerate".into(), cited(3)),
            ],
        },
    ];

    let chamber_codes: BTreeSet<Vec<String>> = cells
        .iter()
        .filter(|c| c.dim == 2)
        .map(|c| c.code.clone())
        .collect();
    let flags: BTreeSet<Vec<String>> = (1..=3)
        .flat_map(|p| {
            (1..=3).filter(move |&q| q != p).map(move |q| {
                let (lo, hi) = (p.min(q), p.max(q));
                vec![format!("p{p}"), format!("l{lo}{hi}")]
            })
        })
        .collect();
    let checks = vec![
        Check {
            name: "chambers carry the six flags".into(),
            passed: chamber_codes == flags,
        },
        Check {
            name: "chamber count equals |W|".into(),
            passed: poset.chambers().len() == n_weyl,
        },
        Check {
            name: "each wall has a two-root Levi".into(),
            passed: dict.cells.iter().filter(|c| c.dim == 1).all(|c| c.levi.len() == 2),
        },
        Check {
            name: "fiber dim + bundle rank = dim g in every cell".into(),
            passed: cells
                .iter()
                .all(|c| c.central_fiber_dim.value + c.bundle_rank.value == g),
        },
        Check {
            name: "2-ray fiber dim + bundle rank = dim g".into(),
            passed: multi_ray[0].quantities[0].1.value + multi_ray[0].quantities[1].1.value == g,
        },
        Check {
            name: "ray codes have three symbols, the zero cell six".into(),
            passed: cells.iter().all(|c| match c.dim {
                2 => c.code.len() == 2,
                1 => c.code.len() == 3,
                _ => c.code.len() == 6,
            }),
        },
    ];

    Sl3Report {
        algebra_dim: g,
        cells,
        multi_ray,
        checks,
    }
}

/// Chambers get their flag, a ray the union of the codes of the two
/// chambers it bounds, the origin everything.
fn cell_codes(datum: &RootDatum, poset: &FacePoset) -> Vec<BTreeSet<String>> {
    let chambers = poset.chambers();
    (0..poset.len())
        .map(|i| {
            let face = poset.face(i);
            match face.dim {
                2 => chamber_code(&datum.weyl_of(&face.signs).expect("chamber")),
                1 => chambers
                    .iter()
                    .filter(|&&c| poset.leq(i, c))
                    .flat_map(|&c| chamber_code(&datum.weyl_of(&poset.face(c).signs).expect("chamber")))
                    .collect(),
                _ => SYMBOLS.iter().map(|s| s.to_string()).collect(),
            }
        })
        .collect()
}

fn tag(t: Tagged) -> String {
    match t.provenance {
        Provenance::Computed => format!("{}", t.value),
        Provenance::Paper => format!("{}*", t.value),
    }
}

impl Sl3Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sl3 coroot arrangement: {} cells, dim g = {}", self.cells.len(), self.algebra_dim);
        let _ = writeln!(
            out,
            "{:<5} {:>3} {:<5} {:<26} {:>9} {:>5} {:>6}",
            "face", "dim", "w", "code", "fiber dim", "rank", "K-rank"
        );
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{:<5} {:>3} {:<5} {:<26} {:>9} {:>5} {:>6}",
                c.face,
                c.dim,
                c.weyl.as_deref().unwrap_or("-"),
                c.code.join(","),
                tag(c.central_fiber_dim),
                tag(c.bundle_rank),
                tag(c.k_rank)
            );
        }
        let _ = writeln!(out);
        for m in &self.multi_ray {
            let qs: Vec<String> = m.quantities.iter().map(|(k, v)| format!("{k}={}", tag(*v))).collect();
            let _ = writeln!(out, "F{} rays {} code {} {}", m.name, m.rays.join(","), m.code.join(","), qs.join(" "));
        }
        let _ = writeln!(out);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
        let _ = writeln!(out, "* cited constant; other values computed from the root datum");
        out
    }
}
