//! Chambers of the A3 coroot arrangement labelled by Weyl group elements.

use schober::roots::RootDatum;

fn main() {
    let datum = RootDatum::type_a(3).unwrap();
    let arr = datum.coroot_arrangement();
    let poset = arr.enumerate_faces();
    println!("{}: {} roots, |W| = {}", datum.name(), datum.positive_roots().len(), datum.weyl_group().len());
    for w in datum.weyl_group() {
        let chamber = datum.chamber_of(w).unwrap();
        assert_eq!(&datum.weyl_of(&chamber).unwrap(), w);
        println!("{w}  {chamber}");
    }
    println!("{} chambers enumerated", poset.chambers().len());
}
