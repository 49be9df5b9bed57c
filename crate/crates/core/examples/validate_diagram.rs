//! Validation of a correct diagram and of a perturbed copy.

use schober::diagram::{HyperbolicDiagram, MapKind};
use schober::flober::atiyah_flober;
use schober::linalg::rat;
use schober::roots::RootDatum;

fn main() {
    let good = atiyah_flober();
    println!("atiyah: {} violation(s)", good.validate().violations.len());

    let bad = good.with_entry(MapKind::Gamma, 1, 2, (0, 0), rat(3)).unwrap();
    for v in &bad.validate().violations {
        println!("  {v}");
    }

    // The same line diagram pulled back along the first hyperplane of A2.
    let poset = RootDatum::type_a(2).unwrap().coroot_arrangement().enumerate_faces();
    let pulled = HyperbolicDiagram::pull_back_from_line(&good, poset, 0).unwrap();
    println!("pulled back to A2: {} violation(s)", pulled.validate().violations.len());
}
