//! Faces of a small arrangement in the plane, grouped by dimension.

use schober::arrangement::Arrangement;

fn main() {
    // Three lines through the origin: x = 0, y = 0, x = y.
    let arr = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
    let poset = arr.enumerate_faces();
    println!("{} faces, euler characteristic {}", poset.len(), poset.euler_characteristic());
    for d in 0..=arr.dim() {
        let keys: Vec<String> = poset.faces_of_dim(d).into_iter().map(|i| poset.face(i).key()).collect();
        println!("dim {d}: {}", keys.join(" "));
    }
    println!("covering pairs:");
    for (a, b) in poset.covers() {
        println!("  {} < {}", poset.face(a).key(), poset.face(b).key());
    }
}
