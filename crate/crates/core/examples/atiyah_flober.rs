//! Builds the Atiyah flober, checks it, and splits it into indecomposables.

use schober::flober::atiyah_flober;
use schober::json::{diagram_to_json, to_pretty};

fn main() {
    let d = atiyah_flober();
    let report = d.validate();
    println!("valid: {}", report.passed());
    println!("monodromy on E_+:\n{}", d.monodromy_1d().unwrap());

    let h = d.cohomology_1d().unwrap();
    println!("h0={} h1={} h1c={} h2c={}", h.h0, h.h1, h.h1c, h.h2c);

    let datum = d.to_phi_psi().unwrap();
    println!("dim Phi = {}, dim Psi = {}", datum.dim_phi(), datum.dim_psi());
    println!("u =\n{}\nv =\n{}", datum.u, datum.v);
    match datum.decompose() {
        Ok(m) => println!("multiplicities {:?}", m.as_tuple()),
        Err(e) => println!("no trivial-monodromy splitting: {e}"),
    }

    println!("{}", to_pretty(&diagram_to_json(&d)));
}
