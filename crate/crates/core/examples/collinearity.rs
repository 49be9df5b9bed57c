//! Collinear triples of faces in the A2 coroot arrangement.

use schober::roots::RootDatum;

fn main() {
    let poset = RootDatum::type_a(2).unwrap().coroot_arrangement().enumerate_faces();
    let n = poset.len();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != b && b != c && a < c && poset.collinear(a, b, c) {
                    count += 1;
                    println!("{} {} {}", poset.face(a).key(), poset.face(b).key(), poset.face(c).key());
                }
            }
        }
    }
    println!("{count} unordered triples with a distinct middle face");
}
